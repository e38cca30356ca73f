use proptest::prelude::*;

use dirac_coulomb::model::{
    validate_bound_state, Branch, CoulombCouplings, QuantumNumbers, Rejection, Verdict,
};
use dirac_coulomb::polynomials::{
    combo_zero_count, kummer_poly_eval, laguerre_at_origin, laguerre_zeros,
};
use dirac_coulomb::radial::{count_nodes, ode_residual, wavefunctions_default};
use dirac_coulomb::spectrum::{charge_conjugate, closed_form_energy, energy, spectrum_table};
use dirac_coulomb::symmetry::{perturbativity_probe, SymmetryKind};

fn kappa() -> impl Strategy<Value = i32> {
    prop_oneof![-3..=-1i32, 1..=3i32]
}

fn branch() -> impl Strategy<Value = Branch> {
    prop_oneof![Just(Branch::Plus), Just(Branch::Minus)]
}

fn binomial_product(n: u32, a: f64) -> f64 {
    (1..=n).map(|k| (a + k as f64) / k as f64).product()
}

/// `L_n^a(x)` through `binomial(n+a, n)·₁F₁(−n; a+1; x)`.
fn laguerre_via_kummer(n: i64, a: f64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    binomial_product(n as u32, a) * kummer_poly_eval(n, a + 1.0, x).unwrap()
}

/// Sign changes of `A L_n + B L_{n−1}` on a dense uniform grid over `(0, rho_max]`.
fn dense_scan(a: f64, b: f64, n: u32, order: f64, rho_max: f64) -> usize {
    let steps = 100_000;
    let f = |x: f64| a * laguerre_via_kummer(n as i64, order, x) + b * laguerre_via_kummer(n as i64 - 1, order, x);
    let mut prev = f(rho_max / steps as f64 * 1e-3);
    let mut count = 0;
    for i in 1..=steps {
        let v = f(rho_max * i as f64 / steps as f64);
        if v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn combo_count_matches_dense_scan(
        n in 1u32..=6,
        order in 0.1f64..6.0,
        a in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0],
        ratio in -12.0f64..12.0,
    ) {
        let threshold = -(n as f64 + order) / n as f64;
        prop_assume!((ratio - threshold).abs() > 1e-2 && ratio.abs() > 1e-3);
        let b = ratio * a;
        // zeros lie below the Laguerre range plus the reach of a large B/A
        let rho_max = 2.0 * (2.0 * n as f64 + order + 2.0) + 4.0 * n as f64 * ratio.abs() + 10.0;
        let count = combo_zero_count(a, b, n, order).unwrap();
        prop_assert_eq!(count, dense_scan(a, b, n, order, rho_max));
    }

    #[test]
    fn laguerre_origin_is_binomial(n in 0u32..=8, order in 0.01f64..10.0) {
        let v = laguerre_at_origin(n, order);
        let expected = binomial_product(n, order);
        prop_assert!(((v - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn zeros_interlace(n in 2u32..=8, order in 0.05f64..=6.0) {
        let outer = laguerre_zeros(n, order);
        let inner = laguerre_zeros(n - 1, order);
        prop_assert_eq!(outer.len(), n as usize);
        prop_assert_eq!(inner.len(), n as usize - 1);
        for (i, z) in inner.iter().enumerate() {
            prop_assert!(outer[i] < *z && *z < outer[i + 1]);
        }
    }

    #[test]
    fn coupling_round_trip(s in -2.0f64..2.0, d in -2.0f64..2.0) {
        let c = CoulombCouplings::new(s, d);
        let back = CoulombCouplings::from_vector_scalar(c.alpha_v(), c.alpha_s());
        prop_assert!((back.alpha_sigma - s).abs() <= 4.0 * f64::EPSILON * s.abs().max(d.abs()));
        prop_assert!((back.alpha_delta - d).abs() <= 4.0 * f64::EPSILON * s.abs().max(d.abs()));
    }

    #[test]
    fn accepted_levels_satisfy_invariants(
        s in -1.5f64..1.5,
        d in -1.5f64..1.5,
        n_r in 0u32..=4,
        k in kappa(),
        b in branch(),
    ) {
        let q = QuantumNumbers::new(n_r, k).unwrap();
        if let Verdict::Accepted { .. } = validate_bound_state(CoulombCouplings::new(s, d), q, b) {
            let level = energy(CoulombCouplings::new(s, d), q, b).unwrap();
            prop_assert!(level.check_invariants().is_ok());
            prop_assert!(level.energy.abs() < 1.0);
        }
    }

    #[test]
    fn opposite_signs_pass_hard_constraints(
        s in -3.0f64..-0.01,
        d in 0.01f64..3.0,
        n_r in 0u32..=4,
        k in kappa(),
        b in branch(),
    ) {
        let verdict = validate_bound_state(CoulombCouplings::new(s, d), QuantumNumbers::new(n_r, k).unwrap(), b);
        prop_assert!(matches!(
            verdict,
            Verdict::Accepted { .. } | Verdict::Rejected(Rejection::NrZeroSignRule)
        ), "{:?}", verdict);
    }

    #[test]
    fn charge_conjugation_mirrors_energy(
        s in -1.5f64..1.5,
        d in -1.5f64..1.5,
        n_r in 0u32..=4,
        k in kappa(),
        b in branch(),
    ) {
        let c = CoulombCouplings::new(s, d);
        let q = QuantumNumbers::new(n_r, k).unwrap();
        let (cc, bc) = charge_conjugate(c, b);
        prop_assert_eq!(charge_conjugate(cc, bc), (c, b));
        // the closed form depends on kappa^2 only
        let e = closed_form_energy(s, d, n_r, k, b);
        let ec = closed_form_energy(cc.alpha_sigma, cc.alpha_delta, n_r, k, bc);
        prop_assert!(e.is_nan() && ec.is_nan() || (e + ec).abs() <= 1e-12 * e.abs().max(1e-300));
        // the conjugate of an n_r = 0 state has the opposite kappa
        let qc = if n_r == 0 { QuantumNumbers::new(0, -k).unwrap() } else { q };
        match (energy(c, q, b), energy(cc, qc, bc)) {
            (Ok(e), Ok(ec)) => prop_assert!((e.energy + ec.energy).abs() <= 1e-12 * e.energy.abs()),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "validity differs: {:?}", other),
        }
    }

    #[test]
    fn kappa_degeneracy(s in -1.5f64..1.5, d in -1.5f64..1.5, n_r in 1u32..=4, k in 1i32..=3, b in branch()) {
        let c = CoulombCouplings::new(s, d);
        let plus = energy(c, QuantumNumbers::new(n_r, k).unwrap(), b);
        let minus = energy(c, QuantumNumbers::new(n_r, -k).unwrap(), b);
        if let (Ok(p), Ok(m)) = (plus, minus) {
            prop_assert!((p.energy - m.energy).abs() < 1e-12);
        }
    }

    #[test]
    fn n_r_zero_exclusivity(s in -1.5f64..-0.01, d in 0.01f64..1.5, k in 1i32..=3, b in branch()) {
        let c = CoulombCouplings::new(s, d);
        let pos = energy(c, QuantumNumbers::new(0, k).unwrap(), b).is_ok();
        let neg = energy(c, QuantumNumbers::new(0, -k).unwrap(), b).is_ok();
        prop_assert!(pos != neg);
    }

    #[test]
    fn plus_energies_rise_with_n(s in -1.5f64..-0.01, d in 0.01f64..1.5) {
        let c = CoulombCouplings::new(s, d);
        let table = spectrum_table(c, 5, Branch::Plus).unwrap();
        for k in [-3, -2, -1, 1, 2, 3] {
            let energies: Vec<f64> = table
                .levels
                .iter()
                .filter(|l| l.quantum_numbers.kappa.get() == k)
                .map(|l| l.energy)
                .collect::<Vec<_>>();
            let mut by_nr: Vec<(u32, f64)> = table
                .levels
                .iter()
                .filter(|l| l.quantum_numbers.kappa.get() == k)
                .map(|l| (l.quantum_numbers.n_r, l.energy))
                .collect();
            by_nr.sort_by_key(|p| p.0);
            prop_assert!(by_nr.windows(2).all(|w| w[0].1 < w[1].1));
            prop_assert!(energies.iter().all(|&e| e < 1.0));
        }
    }

    #[test]
    fn probe_non_realizable_cases(s in -1.5f64..-0.01, d in 0.01f64..1.5, n_r in 1u32..=3, k in kappa()) {
        let q = QuantumNumbers::new(n_r, k).unwrap();
        let p = perturbativity_probe(CoulombCouplings::new(0.0, d), q, Branch::Plus, SymmetryKind::Pseudospin, 1e-4).unwrap();
        prop_assert!(!p.realizable);
        prop_assert_eq!(p.zeroth_order, 1.0);
        let p = perturbativity_probe(CoulombCouplings::new(s, 0.0), q, Branch::Minus, SymmetryKind::Spin, 1e-4).unwrap();
        prop_assert!(!p.realizable);
        prop_assert_eq!(p.zeroth_order, -1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radial_solutions(
        s in -1.5f64..-0.1,
        d in 0.05f64..1.0,
        n_r in 0u32..=3,
        k in kappa(),
        b in branch(),
    ) {
        let c = CoulombCouplings::new(s, d);
        let q = QuantumNumbers::new(n_r, k).unwrap();
        prop_assume!(energy(c, q, b).is_ok());
        let sol = wavefunctions_default(c, q, b).unwrap();
        prop_assert!((sol.norm().unwrap() - 1.0).abs() < 1e-8);
        prop_assert_eq!(count_nodes(&sol).unwrap(), (n_r as usize + 1, n_r as usize + 1));
        let (rg, rf) = ode_residual(&sol, c).unwrap();
        prop_assert!(rg < 1e-8 && rf < 1e-8, "{} {}", rg, rf);
        // g/r and f/r shrink toward the origin
        let form = sol.form();
        let g: Vec<f64> = [1e-3, 1e-4, 1e-5].iter().map(|&r| (form.g_at(r) / r).abs()).collect();
        prop_assert!(g[0] > g[1] && g[1] > g[2]);
        if n_r >= 1 {
            let a = sol.level.kappa_plus_eta2();
            let bb = 2.0 * sol.level.gamma + n_r as f64;
            prop_assert_eq!(sol.zeros_g.len(), combo_zero_count(a, bb, n_r, 2.0 * sol.level.gamma).unwrap());
            prop_assert_eq!(sol.zeros_f.len(), combo_zero_count(a, -bb, n_r, 2.0 * sol.level.gamma).unwrap());
        }
    }

    #[test]
    fn same_sign_solutions_normalize(
        s in -1.2f64..-0.05,
        d in -1.2f64..-0.05,
        n_r in 0u32..=3,
        k in kappa(),
    ) {
        let c = CoulombCouplings::new(s, d);
        let q = QuantumNumbers::new(n_r, k).unwrap();
        prop_assume!(energy(c, q, Branch::Plus).is_ok());
        let sol = wavefunctions_default(c, q, Branch::Plus).unwrap();
        prop_assert!((sol.norm().unwrap() - 1.0).abs() < 1e-8);
        let (rg, rf) = ode_residual(&sol, c).unwrap();
        prop_assert!(rg < 1e-8 && rf < 1e-8, "{} {}", rg, rf);
    }
}
