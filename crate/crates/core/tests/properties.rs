use accel_cs::numerics::{Grid1D, WaveField};
use accel_cs::observables::{
    analytic_moments, arrival_analysis, density, dimensionalize, extract_peak_and_fwhm, heisenberg_product,
    label_convert, label_invert, UnitsMap,
};
use accel_cs::propagator::{propagate, PropagatorConfig};
use accel_cs::states::{cs_wavefunction, CsParams, GcsLabel, IomParams, ModelConfig};
use num_complex::Complex64;
use proptest::prelude::*;

fn iom() -> impl Strategy<Value = IomParams> {
    (0.3..3.0f64, -3.1..3.1f64, -1.3..1.3f64).prop_map(|(a, m, d)| IomParams::from_polar(a, m, d).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #[test]
    fn robertson_schrodinger_is_saturated(
        p in iom(), zr in -3.0..3.0f64, zi in -3.0..3.0f64, tau in -3.0..3.0f64, f in -5.0..5.0f64,
    ) {
        let label = GcsLabel::from_z(Complex64::new(zr, zi), &p).unwrap();
        let m = analytic_moments(tau, &p, &label, &ModelConfig::new(f).unwrap());
        prop_assert!((m.robertson_schrodinger() - 0.25).abs() <= 1e-10);
    }

    #[test]
    fn heisenberg_floor(p in iom(), tau in -5.0..5.0f64) {
        prop_assert!(heisenberg_product(tau, &p) >= 0.5);
    }

    #[test]
    fn coherent_states_minimize_heisenberg_at_start(a in 0.3..3.0f64, mu in -3.1..3.1f64) {
        prop_assert_eq!(heisenberg_product(0.0, &IomParams::from_polar(a, mu, 0.0).unwrap()), 0.5);
    }

    #[test]
    fn force_narrows_arrival_spread(
        q0 in -2.0..2.0f64, d in 0.01..5.0f64, p0 in 0.05..5.0f64, sigma in 0.1..3.0f64, f in 1e-3..50.0f64,
    ) {
        let a = arrival_analysis(q0 + d, q0, p0, sigma, &ModelConfig::new(f).unwrap()).unwrap();
        prop_assert!(a.omega_q < a.omega_free);
        let free = arrival_analysis(q0 + d, q0, p0, sigma, &ModelConfig::new(0.0).unwrap()).unwrap();
        prop_assert!((free.omega_q - free.omega_free).abs() <= 1e-12 * free.omega_free);
    }

    #[test]
    fn width_height_law(sigma in 0.05..5.0f64) {
        let cs = CsParams::from_initial(sigma, 0.0, 0.0).unwrap();
        let model = ModelConfig::new(0.0).unwrap();
        let grid = Grid1D::centered(0.0, 4.0 * sigma, 2001).unwrap();
        let q: Vec<f64> = grid.nodes().collect();
        let rho: Vec<f64> = q.iter().map(|&x| density(x, 0.0, &cs, &model)).collect();
        let (_, peak, fwhm) = extract_peak_and_fwhm(&q, &rho).unwrap();
        prop_assert!(rel(peak * fwhm, 0.939_437_278_699_651_3) < 1e-3);
    }

    #[test]
    fn dimensional_form_is_scaled_dimensionless_form(
        m in 0.1..10.0f64, hbar in 0.1..10.0f64, l in 0.1..10.0f64, fx in -2.0..2.0f64,
        sigma in 0.2..2.0f64, q0 in -1.0..1.0f64, p0 in -2.0..2.0f64, q in -3.0..3.0f64, tau in 0.0..2.0f64,
    ) {
        let u = UnitsMap::new(m, hbar, l, fx).unwrap();
        let cs = CsParams::from_initial(sigma, q0, p0).unwrap();
        let chi = cs_wavefunction(q, tau, &cs, &u.model());
        let (psi, rho) = dimensionalize(&cs, &u, u.x_of_q(q), u.t_of_tau(tau));
        prop_assert!((rho * l - chi.norm_sqr()).abs() <= 1e-10 * (1.0 + chi.norm_sqr()));
        prop_assert!((psi * l.sqrt() - chi).norm() <= 1e-9 * (1.0 + chi.norm()));
    }

    #[test]
    fn unit_conversions_round_trip(
        m in 1e-3..1e3f64, hbar in 1e-3..1e3f64, l in 1e-3..1e3f64, v in -1e3..1e3f64,
    ) {
        let u = UnitsMap::new(m, hbar, l, 0.0).unwrap();
        let tol = 4.0 * f64::EPSILON * v.abs();
        prop_assert!((u.x_of_q(u.q_of_x(v)) - v).abs() <= tol);
        prop_assert!((u.t_of_tau(u.tau_of_t(v)) - v).abs() <= tol);
        prop_assert!((u.p_x_of_p_q(u.p_q_of_p_x(v)) - v).abs() <= tol);
        prop_assert!((u.f_x_of_f_q(u.f_q_of_f_x(v)) - v).abs() <= tol);
    }

    #[test]
    fn label_round_trip(q0 in -10.0..10.0f64, p0 in -10.0..10.0f64, sigma in 0.01..10.0f64) {
        let (q, p) = label_invert(label_convert(q0, p0, sigma).unwrap(), sigma).unwrap();
        prop_assert!((q - q0).abs() <= 1e-14 * (1.0 + q0.abs()));
        prop_assert!((p - p0).abs() <= 1e-14 * (1.0 + p0.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn crank_nicolson_conserves_norm(
        sigma in 0.3..0.8f64, q0 in -1.0..1.0f64, p0 in -2.0..2.0f64, f in -4.0..4.0f64, steps in 1usize..400,
    ) {
        let model = ModelConfig::new(f).unwrap();
        let cs = CsParams::from_initial(sigma, q0, p0).unwrap();
        let grid = Grid1D::new(-12.0, 12.0, 1024).unwrap();
        let start = WaveField::from_fn(grid, 0.0, |q| cs_wavefunction(q, 0.0, &cs, &model)).unwrap().normalized();
        let run = propagate(&start, &PropagatorConfig::new(grid, 1e-3, steps).unwrap(), &model).unwrap();
        prop_assert!(run.norm_drift < 1e-10, "{}", run.norm_drift);
    }
}
