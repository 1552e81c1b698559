//! Method-of-moments solver against independent oracles: induced-EMF dipole
//! values, the folded-dipole step-up, small-loop radiation resistance and
//! structural properties of the moment matrix.

use std::f64::consts::PI;

use qubit_antenna::constants::C0;
use qubit_antenna::geometry::{dipole, folded_dipole, polygon_loop};
use qubit_antenna::mom::{assemble, impedance_sweep, input_impedance_at, solve_currents};
use qubit_antenna::radiative::small_loop_radiation_resistance;
use qubit_antenna::{Complex64, FrequencyGrid, Medium, SolverConfig, SpaceTag, WireModel};

const L: f64 = 1.0;
const A: f64 = L / 1000.0;

fn half_wave_f() -> f64 {
    C0 / (2.0 * L)
}

fn first_resonance(model: &WireModel, lo: f64, hi: f64) -> f64 {
    let grid = FrequencyGrid::linear(lo, hi, 121).unwrap();
    let sweep = impedance_sweep(model, &grid, &SolverConfig::default()).unwrap();
    sweep.series_resonances()[0]
}

#[test]
fn half_wave_dipole_resonance() {
    let f0 = half_wave_f();
    let m = dipole(L, A, Medium::VACUUM).unwrap();
    let fr = first_resonance(&m, 0.8 * f0, 1.1 * f0);
    let len_over_lambda = L * fr / C0;
    assert!((len_over_lambda / 0.48 - 1.0).abs() < 0.02, "L/λ = {len_over_lambda}");
    let z = input_impedance_at(&m, fr, &SolverConfig::default()).unwrap();
    assert!((z.re / 73.0 - 1.0).abs() < 0.10, "R = {}", z.re);
    assert!(z.im.abs() < 5.0, "X = {}", z.im);
}

#[test]
fn short_dipole_matches_induced_emf() {
    // R = 20 π² (l/λ)² for l ≪ λ (triangular current). The default mesh puts
    // only three segments on a 0.05λ wire; resolve it explicitly.
    let f = 0.05 * C0 / L;
    let m = dipole(L, A, Medium::VACUUM).unwrap();
    let oracle = 20.0 * PI * PI * (L * f / C0).powi(2);
    let errors: Vec<f64> = [100, 200, 1000]
        .iter()
        .map(|&spw| {
            let z = input_impedance_at(&m, f, &SolverConfig::default().with_segments_per_wavelength(spw)).unwrap();
            assert!(z.im < -500.0, "short dipole must be strongly capacitive: {z}");
            (z.re / oracle - 1.0).abs()
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "no convergence: {errors:?}");
    assert!(errors[2] < 0.05, "R error {:?}", errors);
}

#[test]
fn folded_dipole_steps_up_four_times() {
    let f0 = half_wave_f();
    let m = folded_dipole(L, L / 50.0, A, Medium::VACUUM).unwrap();
    let fr = first_resonance(&m, 0.8 * f0, 1.1 * f0);
    let z = input_impedance_at(&m, fr, &SolverConfig::default()).unwrap();
    assert!((z.re / 290.0 - 1.0).abs() < 0.15, "R = {}", z.re);
}

#[test]
fn small_loop_radiation_resistance_at_kr_0_05() {
    let f = 0.05 * C0 / (2.0 * PI * L);
    let m = polygon_loop(L, A, 32, Medium::VACUUM).unwrap();
    let z = input_impedance_at(&m, f, &SolverConfig::default()).unwrap();
    let oracle = small_loop_radiation_resistance(L, f, 1.0).unwrap();
    assert!((z.re / oracle - 1.0).abs() < 0.05, "R = {} vs {oracle}", z.re);
    assert!(z.im > 0.0, "small loop must be inductive: {z}");
}

#[test]
fn moment_matrix_is_symmetric() {
    for m in [
        dipole(L, A, Medium::VACUUM).unwrap(),
        folded_dipole(L, L / 50.0, A, Medium::VACUUM).unwrap(),
        polygon_loop(0.3, A, 16, Medium::VACUUM).unwrap(),
    ] {
        let f = half_wave_f();
        let refined = m.discretize(20, f).unwrap();
        let mat = assemble(&refined, f, &SolverConfig::default()).unwrap();
        assert!(mat.asymmetry() < 1e-9, "asymmetry {}", mat.asymmetry());
        assert!(mat.self_term_dominance());
    }
}

#[test]
fn impedance_is_scale_invariant() {
    let cfg = SolverConfig::default();
    let m = dipole(L, A, Medium::VACUUM).unwrap();
    let f = 0.9 * half_wave_f();
    let z1 = input_impedance_at(&m, f, &cfg).unwrap();
    for s in [1e-4, 1e-2, 10.0] {
        let z2 = input_impedance_at(&m.scaled(s), f / s, &cfg).unwrap();
        assert!((z1 - z2).norm() / z1.norm() < 1e-9, "scale {s}: {z1} vs {z2}");
    }
}

#[test]
fn mesh_doubling_converges() {
    let m = dipole(L, A, Medium::VACUUM).unwrap();
    let f = 0.96 * half_wave_f();
    let z20 = input_impedance_at(&m, f, &SolverConfig::default()).unwrap();
    let z40 = input_impedance_at(&m, f, &SolverConfig::default().with_segments_per_wavelength(40)).unwrap();
    assert!((z20 - z40).norm() / z40.norm() < 0.05, "{z20} vs {z40}");
}

#[test]
fn magnetic_medium_lowers_resonance_by_sqrt_mu() {
    let f0 = half_wave_f();
    let vac = first_resonance(&dipole(L, A, Medium::VACUUM).unwrap(), 0.8 * f0, 1.1 * f0);
    let mu6 = dipole(L, A, Medium::magnetic(6.0).unwrap()).unwrap();
    let fr = first_resonance(&mu6, 0.8 * f0 / 6f64.sqrt(), 1.1 * f0 / 6f64.sqrt());
    assert!((vac / fr / 6f64.sqrt() - 1.0).abs() < 0.02, "ratio {}", vac / fr);
    // Wave impedance scales as sqrt(μ): resistance at resonance follows.
    let cfg = SolverConfig::default();
    let r_vac = input_impedance_at(&dipole(L, A, Medium::VACUUM).unwrap(), vac, &cfg).unwrap().re;
    let r_mu = input_impedance_at(&mu6, fr, &cfg).unwrap().re;
    assert!((r_mu / r_vac / 6f64.sqrt() - 1.0).abs() < 0.02);
}

#[test]
fn dielectric_medium_scales_like_magnetic_in_frequency() {
    let f = 0.9 * half_wave_f();
    let cfg = SolverConfig::default();
    let m = dipole(L, A, Medium::VACUUM).unwrap();
    let z_vac = input_impedance_at(&m, f, &cfg).unwrap();
    let z_eps = input_impedance_at(&m.clone().with_medium(Medium::dielectric(4.0).unwrap()), f / 2.0, &cfg).unwrap();
    // Same electrical size, wave impedance halved.
    assert!((z_vac * 0.5 - z_eps).norm() / z_eps.norm() < 1e-9);
}

#[test]
fn radiated_resistance_is_non_negative() {
    let grid = FrequencyGrid::linear(0.1 * half_wave_f(), 3.0 * half_wave_f(), 60).unwrap();
    for m in [dipole(L, A, Medium::VACUUM).unwrap(), folded_dipole(L, L / 50.0, A, Medium::VACUUM).unwrap()] {
        let sweep = impedance_sweep(&m, &grid, &SolverConfig::default()).unwrap();
        assert_eq!(sweep.space(), SpaceTag::Wire);
        assert!(sweep.impedances().iter().all(|z| z.re >= -0.01), "negative resistance");
    }
}

#[test]
fn single_point_sweep() {
    let m = dipole(L, A, Medium::VACUUM).unwrap();
    let f = half_wave_f();
    let grid = FrequencyGrid::single(f).unwrap();
    let sweep = impedance_sweep(&m, &grid, &SolverConfig::default()).unwrap();
    assert_eq!(sweep.len(), 1);
    let direct = input_impedance_at(&m, f, &SolverConfig::default()).unwrap();
    assert!((sweep.impedances()[0] - direct).norm() < 1e-9 * direct.norm());
}

#[test]
fn sweep_is_deterministic() {
    let m = dipole(L, A, Medium::VACUUM).unwrap();
    let grid = FrequencyGrid::linear(0.5 * half_wave_f(), 1.5 * half_wave_f(), 9).unwrap();
    let a = impedance_sweep(&m, &grid, &SolverConfig::default()).unwrap();
    let b = impedance_sweep(&m, &grid, &SolverConfig::default()).unwrap();
    assert_eq!(a.impedances(), b.impedances());
}

#[test]
fn feed_power_balances_radiated_resistance() {
    // P_in = ½ Re(V I*) with V = 1 must equal ½ |I|² Re Z.
    let m = dipole(L, A, Medium::VACUUM).unwrap().discretize(20, half_wave_f()).unwrap();
    let sol = solve_currents(&m, half_wave_f(), &SolverConfig::default()).unwrap();
    let i = Complex64::new(1.0, 0.0) / sol.input_impedance;
    let p_in = 0.5 * (Complex64::new(1.0, 0.0) * i.conj()).re;
    let p_r = 0.5 * i.norm_sqr() * sol.input_impedance.re;
    assert!((p_in - p_r).abs() < 1e-12 * p_in.abs());
    // Currents vanish at the free ends and peak at the feed.
    let mags: Vec<f64> = sol.segment_currents.iter().map(|(_, c)| c.norm()).collect();
    let peak = mags.iter().cloned().fold(0.0, f64::max);
    assert!(mags[0] < 0.2 * peak && mags[mags.len() - 1] < 0.2 * peak);
}
