//! State labels: spectroscopic `2p3/2` or raw `n_r,kappa`.

use dirac_coulomb::model::{orbital_from_letter, QuantumNumbers};

/// Parses `2p3/2` (upper-component convention, `n = n_r + |κ|`) or a raw
/// pair such as `1,-1` or `(1,-1)`.
pub fn parse_state(text: &str) -> Result<QuantumNumbers, String> {
    let t = text.trim();
    if t.contains(',') {
        return parse_raw(t);
    }
    parse_label(t)
}

fn parse_raw(t: &str) -> Result<QuantumNumbers, String> {
    let inner = t.trim_start_matches('(').trim_end_matches(')');
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("bad state '{t}'"))?;
    let n_r: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad n_r in state '{t}'"))?;
    let kappa: i32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad kappa in state '{t}'"))?;
    QuantumNumbers::new(n_r, kappa).map_err(|e| format!("state '{t}': {e}"))
}

fn parse_label(t: &str) -> Result<QuantumNumbers, String> {
    let bad = || format!("bad state label '{t}' (expected e.g. 2p3/2 or n_r,kappa)");
    let letter_at = t.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
    let n: u32 = t[..letter_at].parse().map_err(|_| bad())?;
    let mut rest = t[letter_at..].chars();
    let letter = rest.next().ok_or_else(bad)?;
    let l = orbital_from_letter(letter).ok_or_else(bad)?;
    let tail: String = rest.collect();
    let two_j: u32 = tail
        .strip_suffix("/2")
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    QuantumNumbers::from_spectroscopic(n, l, two_j)
        .ok_or_else(|| format!("state label '{t}' has no (n_r, kappa): need j = l ± 1/2 and n >= j + 1/2"))
}

/// File-name friendly label: `2p3/2` becomes `2p3_2`.
pub fn file_stem(qn: &QuantumNumbers) -> String {
    qn.label().replace('/', "_")
}
