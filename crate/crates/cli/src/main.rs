use std::process::ExitCode;

use clap::Parser;
use dirac_coulomb_cli::{main_with, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the config-error status
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    ExitCode::from(main_with(&cli, &mut stdout.lock(), &mut stderr.lock()))
}
