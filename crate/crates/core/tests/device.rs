mod common;

use ionic_neuron::device::*;

fn adaptive_params() -> MemristorParams {
    MemristorParams {
        f_mode: RetentionMode::ArrheniusSinh,
        ..MemristorParams::default()
    }
}

#[test]
fn chang_sinh_branch_value() {
    let p = MemristorParams {
        gamma: 1e-4,
        delta: 5.0,
        ..MemristorParams::default()
    };
    let i = chang_current(0.1, 1.0, &p);
    assert!((i - 5.2110e-5).abs() < 5e-9, "{i}");
}

#[test]
fn memristance_is_independent_ratio() {
    let p = MemristorParams::default();
    let (v, x) = (0.2, 0.5);
    let i = (1.0 - x) * p.alpha * (1.0 - (p.beta * v).exp()) + x * p.gamma * (p.delta * v).sinh();
    let r = memristance(v, x, &p).unwrap();
    assert!((r - v / i).abs() <= 1e-12 * r);
}

#[test]
fn retention_factor_falls_at_high_temperature() {
    let p = adaptive_params();
    let temps: Vec<f64> = (0..400).map(|k| 50.0 * 1.02f64.powi(k)).collect();
    let f: Vec<f64> = temps.iter().map(|&t| ion_velocity_factor(0.5, t, &p)).collect();
    let peak = f.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!(peak < temps.len() - 10, "no crossover inside the scan");
    assert!(f[peak..].windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn held_bias_relaxes_to_algebraic_fixed_point() {
    // dx/dt = λ(η₁ sinh(η₂V) − f·x/τ) at V = 0.5 V, integrated with RK4.
    let p = MemristorParams {
        eta1: 0.002,
        tau: 50.0,
        lambda: 0.05,
        ..adaptive_params()
    };
    let v = 0.5;
    let f = ion_velocity_factor(v, p.temperature, &p);
    let x_star = p.tau * p.eta1 * (p.eta2 * v).sinh() / f;
    assert!(x_star > 0.05 && x_star < 0.95, "{x_star}");
    let rate = |x: f64| state_derivative(v, x, p.temperature, &p);
    let (mut x, h) = (0.0, 1.0);
    for _ in 0..40_000 {
        let k1 = rate(x);
        let k2 = rate(x + 0.5 * h * k1);
        let k3 = rate(x + 0.5 * h * k2);
        let k4 = rate(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    assert!((x - x_star).abs() < 1e-9, "{x} vs {x_star}");
}

#[test]
fn planted_fowler_nordheim_slope_is_recovered() {
    for b in [6.0, 12.0, 25.0] {
        let pts = (1..=120).map(|k| 0.1 * k as f64).map(|v| (v, 3e-2 * v * v * (-b / v).exp())).collect();
        let report = fn_analysis(&IvCurve::new(pts).unwrap()).unwrap();
        assert!((report.fe_slope / -b - 1.0).abs() < 0.02, "b = {b}: {}", report.fe_slope);
    }
}

#[test]
fn tunnel_curve_shows_both_regimes() {
    let b = BarrierSpec::default();
    let vs: Vec<f64> = (1..=160).map(|k| 0.05 * k as f64).collect();
    let curve = IvCurve::sample(&vs, |v| nin_tunnel_current(v, &b, 300.0)).unwrap();
    let report = fn_analysis(&curve).unwrap();
    assert!(report.fe_slope < 0.0);
    assert!(report.r_squared >= FN_R2_THRESHOLD);
    let (lo, hi) = report.dt_region.expect("direct-tunnelling region");
    assert!(lo < hi && hi <= report.fe_region.0);
}

#[test]
fn tunnel_current_is_odd() {
    let b = BarrierSpec::default();
    for v in [0.3, 1.1, 2.7] {
        let plus = nin_tunnel_current(v, &b, 300.0).unwrap();
        let minus = nin_tunnel_current(-v, &b, 300.0).unwrap();
        assert!((plus + minus).abs() <= 1e-9 * plus.abs().max(1e-30), "{plus} {minus}");
    }
}

#[test]
fn coherence_length_in_si_units() {
    // ξ = sqrt(ħD / 2πk_BT) with D = v_f·l/3, all in SI.
    let hbar = 1.054_571_817e-34;
    let kb = 1.380_649e-23;
    let d = 1.0e6 * 5.0e-9 / 3.0;
    let xi_m = (hbar * d / (2.0 * std::f64::consts::PI * kb * 8.1)).sqrt();
    let xi = coherence_length(1000.0, 5.0, 8.1).unwrap();
    assert!((xi / (xi_m * 1e9) - 1.0).abs() < 1e-8, "{xi} nm vs {} nm", xi_m * 1e9);
}

#[test]
fn superconducting_branch_is_odd_and_passes_through_origin() {
    let p = SuperconductingParams::default();
    for x in [0.0, 0.4, 1.0] {
        assert_eq!(sc_current(0.0, x, &p), 0.0);
        for v in [1e-5, 2e-4, 3e-3] {
            assert!((sc_current(v, x, &p) + sc_current(-v, x, &p)).abs() < 1e-15);
        }
    }
}
