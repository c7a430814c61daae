mod common;

use ionic_neuron::quantum::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

fn free_cavity(n: usize, kappa: f64) -> QmeSpec {
    QmeSpec {
        g: 0.0,
        a_drive: 0.0,
        n_levels: n,
        decay_rates: vec![Decay {
            operator: DecayChannel::CavityA,
            rate: kappa,
        }],
        ..QmeSpec::default()
    }
}

#[test]
fn hamiltonian_matches_elementwise_construction() {
    let spec = QmeSpec {
        a_drive: 7.0,
        n_levels: 5,
        ..QmeSpec::default()
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let t = rng.gen_range(0.0..20.0);
        let h = hamiltonian(t, &spec);
        assert!(common::max_abs_diff(&h, &common::hamiltonian_at(&spec, t)) < 1e-14);
        assert_eq!(common::max_abs_diff(&h, &h.adjoint()), 0.0);
    }
}

#[test]
fn rhs_matches_vectorised_superoperator() {
    let spec = QmeSpec::default();
    let n = spec.n_levels;
    let rho = with_ground_qubit(&thermal_dm(n, 0.7));
    for t in [0.0, 1.3, 3.9] {
        let direct = lindblad_rhs(&rho, t, &spec);
        let v = common::liouvillian_matrix(&spec, t) * nalgebra::DVector::from_column_slice(rho.as_slice());
        let oracle = CMatrix::from_column_slice(2 * n, 2 * n, v.as_slice());
        assert!(common::max_abs_diff(&direct, &oracle) < 1e-12);
    }
}

#[test]
fn evolution_matches_matrix_exponential_with_decay_and_excitation() {
    let spec = QmeSpec {
        a_drive: 5.0,
        n_levels: 3,
        t_end: 2.0,
        ..QmeSpec::default()
    };
    let rho0 = with_ground_qubit(&coherent_dm(3, Complex64::new(0.4, -0.2)));
    let evo = evolve(&rho0, &spec).unwrap();
    let reference = common::expm_propagate(&spec, &rho0, 1000);
    assert!(common::max_abs_diff(evo.states.last().unwrap(), &reference) < 1e-5);
}

#[test]
fn scenario_one_exchanges_bounded_populations() {
    let spec = QmeSpec::default();
    let evo = evolve(&ground_state(spec.n_levels), &spec).unwrap();
    let n = spec.n_levels as f64;
    assert!(evo.n_cavity.iter().all(|&p| (-1e-9..n).contains(&p)));
    assert!(evo.n_qubit.iter().all(|&p| (-1e-9..=1.0 + 1e-9).contains(&p)));
    let turning = |xs: &[f64]| xs.windows(3).filter(|w| w[1] > w[0] && w[1] > w[2]).count();
    assert!(turning(&evo.n_qubit) >= 1 && evo.max_cavity_population() > 0.1);
}

#[test]
fn thermal_bunching_matches_truncated_moments() {
    for (n, nbar) in [(30, 0.5), (12, 1.0)] {
        let rho = with_ground_qubit(&thermal_dm(n, nbar));
        let g2 = correlation_g2(&free_cavity(n, 0.0), &rho, 0.0, &[0.0]).unwrap();
        let q = nbar / (1.0 + nbar);
        let p: Vec<f64> = (0..n).map(|k| q.powi(k as i32)).collect();
        let z: f64 = p.iter().sum();
        let m1: f64 = p.iter().enumerate().map(|(k, w)| k as f64 * w / z).sum();
        let m2: f64 = p.iter().enumerate().map(|(k, w)| (k * k.saturating_sub(1)) as f64 * w / z).sum();
        let direct = m2 / (m1 * m1);
        assert!((g2.values[0].re - direct).abs() < 1e-3, "N={n}: {} vs {direct}", g2.values[0].re);
        if n == 30 {
            assert!((g2.values[0].re - 2.0).abs() < 1e-3);
        }
    }
}

#[test]
fn damped_cavity_first_order_correlation() {
    let kappa = 0.4;
    let alpha = Complex64::new(0.9, 0.4);
    let rho = with_ground_qubit(&coherent_dm(16, alpha));
    let taus: Vec<f64> = (0..30).map(|k| 0.1 * k as f64).collect();
    let g1 = correlation_g1(&free_cavity(16, kappa), &rho, 0.0, &taus).unwrap();
    for (tau, (raw, val)) in taus.iter().zip(g1.raw.iter().zip(&g1.values)) {
        let expect = alpha.norm_sqr() * (-kappa * tau / 2.0).exp();
        assert!((raw - Complex64::from(expect)).norm() < 1e-4, "τ = {tau}");
        assert!((val.norm() - 1.0).abs() < 1e-4);
    }
}

#[test]
fn lossless_evolution_is_unitary() {
    let spec = QmeSpec {
        a_drive: 3.0,
        n_levels: 6,
        ..QmeSpec::default()
    }
    .with_decay(0.0);
    let psi: Vec<Complex64> = (0..12).map(|k| Complex64::new((k as f64 * 0.7).cos(), (k as f64 * 0.3).sin())).collect();
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
    let evo = evolve(&projector(&psi), &spec).unwrap();
    for r in &evo.states {
        assert!((trace_product(r, r).re - 1.0).abs() < 1e-7);
    }
}

#[test]
fn invariant_violation_in_initial_state_is_rejected() {
    let mut rho = ground_state(4);
    rho[(0, 0)] = Complex64::from(1.5);
    assert!(matches!(evolve(&rho, &QmeSpec::default()), Err(ionic_neuron::Error::Invalid { .. })));
}
