use std::path::Path;
use std::process::{Command, Output};

use dirac_coulomb::model::{Branch, CoulombCouplings};
use dirac_coulomb::spectrum::spectrum_table;
use dirac_coulomb_cli::report::{
    read_document, ProbeDocument, SpectrumDocument, SweepDocument, WavefunctionDocument, PROBE_SCHEMA,
    SPECTRUM_SCHEMA, SWEEP_SCHEMA, WAVEFUNCTION_SCHEMA,
};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac-coulomb"))
        .args(args)
        .env_remove("DIRAC_COULOMB_OUT_DIR")
        .output()
        .unwrap()
}

fn run_in(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac-coulomb"))
        .args(args)
        .env("DIRAC_COULOMB_OUT_DIR", dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_json_rereads_to_the_same_table() {
    let o = run(&["spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--n-max", "4", "--format", "json"]);
    let doc: SpectrumDocument = read_document(&stdout(&o), SPECTRUM_SCHEMA).unwrap();
    let table = spectrum_table(CoulombCouplings::new(-0.8, 0.5), 4, Branch::Plus).unwrap();
    assert_eq!(doc.table, table);
    assert_eq!(doc.rows.len(), table.levels.len());
}

#[test]
fn vector_scalar_flags_give_identical_output() {
    let a = run(&["spectrum", "--alpha-v", "-0.5", "--alpha-s", "0", "--n-max", "3"]);
    let b = run(&["spectrum", "--alpha-sigma", "-0.5", "--alpha-delta", "-0.5", "--n-max", "3"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn spectrum_csv_has_unit_header_and_mev_column() {
    let o = run(&[
        "spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--n-max", "2", "--mass-energy", "938.272",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "label,n_r,kappa,n,branch,E [mc^2],E [MeV],group");
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let e: f64 = cells[5].parse().unwrap();
        let mev: f64 = cells[6].parse().unwrap();
        assert!((mev - 938.272 * e).abs() < 1e-9);
    }
}

#[test]
fn wavefunction_writes_one_plot_file_per_state() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(
        &[
            "wavefunction", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--state", "2s1/2", "--state", "1,1",
            "--format", "plotdata",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    for name in ["wavefunction_2s1_2_plus.dat", "wavefunction_2p1_2_plus.dat"] {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        assert!(text.contains("# nodes (origin counted) g 2 f 2"), "{name}");
        let rows: Vec<Vec<f64>> = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(|c| c.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 2048);
        assert!(rows.iter().all(|r| r.len() == 3));
    }
}

#[test]
fn wavefunction_json_carries_node_report() {
    let o = run(&[
        "wavefunction", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--branch", "minus", "--state", "4p3/2",
        "--state", "4d3/2", "--format", "json", "--points", "512",
    ]);
    let doc: WavefunctionDocument = read_document(&stdout(&o), WAVEFUNCTION_SCHEMA).unwrap();
    assert_eq!(doc.states.len(), 2);
    for s in &doc.states {
        assert_eq!((s.node_count_g, s.node_count_f), (3, 3));
        assert_eq!(s.r.len(), 512);
    }
}

#[test]
fn output_file_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("table.csv");
    let o = run(&[
        "spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("label,"));
}

#[test]
fn pseudospin_splitting_vanishes_at_symmetry() {
    let o = run(&[
        "symmetry", "--kind", "pseudospin", "--alpha-delta", "0.5", "--branch", "minus", "--sweep-from", "-0.5",
        "--sweep-to", "0", "--sweep-points", "6", "--format", "json",
    ]);
    let doc: SweepDocument = read_document(&stdout(&o), SWEEP_SCHEMA).unwrap();
    let split: Vec<f64> = doc.points.iter().map(|p| p.splittings[0].unwrap()).collect();
    assert!(split.last().unwrap().abs() < 1e-15);
    assert!(split.windows(2).all(|w| w[1].abs() < w[0].abs()));
}

#[test]
fn probe_rows() {
    let o = run(&["symmetry", "--kind", "spin", "--alpha-sigma", "-0.8", "--probe", "--format", "json"]);
    let doc: ProbeDocument = read_document(&stdout(&o), PROBE_SCHEMA).unwrap();
    assert!(doc.probes.iter().all(|p| p.realizable && p.mismatch.unwrap() < 1e-6));
    let o = run(&["symmetry", "--kind", "spin", "--alpha-sigma", "-0.8", "--branch", "minus", "--probe"]);
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.contains(",false,")));
}

#[test]
fn exit_codes() {
    let o = run(&["spectrum", "--alpha-sigma", "0.3", "--alpha-delta", "-0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-bound-state"));
    let o = run(&["spectrum", "--alpha-sigma", "-0.8"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--format", "xml"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "wavefunction", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--state", "4d3/2", "--branch", "minus",
        "--r-max", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid-too-coarse"));
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}
