use super::*;
use crate::assembly::assemble_generator;
use crate::domain::Coupling;
use crate::fracdiff::XiQuadrature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn setup(n: usize, k: usize) -> (MaterialParams<f64>, FractionalParams<f64>, Grid<f64>) {
    let mp = MaterialParams::unit();
    let fp = FractionalParams::new(0.5, 1.0).unwrap();
    let grid = Grid::new(&mp, n, n, XiQuadrature::geometric(k, 1e-2, 1e2).unwrap()).unwrap();
    (mp, fp, grid)
}

fn cfg(dt: f64, t_end: f64, scheme: Scheme) -> SimConfig<f64> {
    SimConfig {
        dt,
        t_end,
        scheme,
        trace_stride: 1,
        initial_condition: InitialCondition::Preset(Preset::StandardA05),
    }
}

#[test]
fn zero_state_stays_zero() {
    let (mp, fp, grid) = setup(6, 4);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let u = StateVector::zeros(grid.layout());
    assert_eq!(step(&u, &a, Scheme::CrankNicolson, 0.1).unwrap(), u);
    let tr = simulate(&cfg(0.1, 1.0, Scheme::BackwardEuler), &mp, &fp, &grid, &a, &u).unwrap();
    assert_eq!(tr.len(), 11);
    assert!(tr.totals().iter().all(|&e| e == 0.0));
}

#[test]
fn backward_euler_never_gains_energy() {
    let (mp, fp, grid) = setup(10, 6);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for &dt in &[1e-1, 1e-2, 1e-3] {
        let stepper = Stepper::new(&a, Scheme::BackwardEuler, dt).unwrap();
        for _ in 0..10 {
            let u = StateVector::random(grid.layout(), &mut rng);
            let mut x = u.to_flat();
            let mut e = energy(&u, &mp, &grid, &fp).unwrap().total;
            for _ in 0..5 {
                x = stepper.advance(&x).unwrap();
                let s = StateVector::from_flat(grid.layout(), &x).unwrap();
                let e_new = energy(&s, &mp, &grid, &fp).unwrap().total;
                assert!(e_new <= e * (1.0 + 1e-12), "{dt}: {e_new} > {e}");
                e = e_new;
            }
        }
    }
}

#[test]
fn crank_nicolson_midpoint_identity() {
    let (mp, fp, grid) = setup(9, 5);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let dt = 0.05;
    for _ in 0..5 {
        let u = StateVector::random(grid.layout(), &mut rng);
        let next = step(&u, &a, Scheme::CrankNicolson, dt).unwrap();
        let mid_flat: Vec<f64> = u.to_flat().iter().zip(next.to_flat()).map(|(a, b)| 0.5 * (a + b)).collect();
        let mid = StateVector::from_flat(grid.layout(), &mid_flat).unwrap();
        let de = energy(&next, &mp, &grid, &fp).unwrap().total - energy(&u, &mp, &grid, &fp).unwrap().total;
        let d = dissipation_rate(&mid, &mp, &fp, &grid).unwrap();
        let scale = energy(&u, &mp, &grid, &fp).unwrap().total;
        assert!((de - dt * d).abs() < 1e-12 * scale, "{de} vs {}", dt * d);
    }
}

#[test]
fn detached_heat_mode_decays_analytically() {
    let mp = MaterialParams::unit();
    let fp = FractionalParams::new(0.5, 1.0).unwrap();
    let mut errs = Vec::new();
    for &(n, dt) in &[(20usize, 2e-3), (40, 1e-3)] {
        let grid = Grid::new(&mp, n, 8, XiQuadrature::empty()).unwrap().with_coupling(Coupling::Detached);
        let a = assemble_generator(&mp, &fp, &grid).unwrap();
        let u0 = Preset::HeatOnly.initial_state(&grid, &mp);
        let c = SimConfig {
            trace_stride: 10_000,
            ..cfg(dt, 0.1, Scheme::CrankNicolson)
        };
        let tr = simulate(&c, &mp, &fp, &grid, &a, &u0).unwrap();
        let e = tr.totals();
        let expect = e[0] * (-2.0 * PI * PI * 0.1).exp();
        errs.push(((e[e.len() - 1] - expect) / expect).abs());
    }
    // The sampled sine is a discrete eigenvector, so the error is the O(h²)
    // eigenvalue shift plus the O(dt²) scheme error.
    assert!(errs[1] < 1.5e-2, "{errs:?}");
    assert!(errs[0] / errs[1] > 3.0, "{errs:?}");
}

#[test]
fn undamped_beam_conserves_energy() {
    let mp = MaterialParams::unit();
    let fp = FractionalParams::new(0.5, 1.0).unwrap();
    let grid = Grid::new(&mp, 6, 20, XiQuadrature::empty()).unwrap().with_coupling(Coupling::Detached);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let u0 = Preset::BeamOnly.initial_state(&grid, &mp);
    let tr = simulate(&cfg(0.01, 2.0, Scheme::CrankNicolson), &mp, &fp, &grid, &a, &u0).unwrap();
    let e = tr.totals();
    for &x in &e {
        assert!((x - e[0]).abs() < 1e-12 * e[0]);
    }
}

#[test]
fn crank_nicolson_residual_is_second_order() {
    let (mp, fp, grid) = setup(12, 6);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let u0 = Preset::StandardA05.initial_state(&grid, &mp);
    let r: Vec<f64> = [0.02, 0.01]
        .iter()
        .map(|&dt| {
            simulate(&cfg(dt, 1.0, Scheme::CrankNicolson), &mp, &fp, &grid, &a, &u0)
                .unwrap()
                .max_residual()
        })
        .collect();
    let ratio = r[0] / r[1];
    assert!((3.0..5.0).contains(&ratio), "{ratio}");
}

#[test]
fn rejects_nonzero_memory_and_bad_config() {
    let (mp, fp, grid) = setup(6, 3);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let mut u = StateVector::zeros(grid.layout());
    u.phi[0] = 1.0;
    let err = simulate(&cfg(0.1, 1.0, Scheme::BackwardEuler), &mp, &fp, &grid, &a, &u).unwrap_err();
    assert!(err.trace.is_empty());
    assert!(err.error.to_string().contains("memory"));
    assert!(cfg(0.0, 1.0, Scheme::BackwardEuler).validate().is_err());
    assert!(cfg(0.5, 0.1, Scheme::BackwardEuler).validate().is_err());
}

#[test]
fn stride_keeps_last_sample() {
    let (mp, fp, grid) = setup(6, 3);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let u0 = Preset::StandardA05.initial_state(&grid, &mp);
    let c = SimConfig {
        trace_stride: 3,
        ..cfg(0.1, 1.0, Scheme::BackwardEuler)
    };
    let tr = simulate(&c, &mp, &fp, &grid, &a, &u0).unwrap();
    let t: Vec<f64> = tr.times.clone();
    assert_eq!(t.len(), 5);
    assert!((t[4] - 1.0).abs() < 1e-12);
    assert!(t.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn csv_layout() {
    let (mp, fp, grid) = setup(6, 3);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let u0 = Preset::StandardA05.initial_state(&grid, &mp);
    let tr = simulate(&cfg(0.5, 1.0, Scheme::BackwardEuler), &mp, &fp, &grid, &a, &u0).unwrap();
    let mut buf = Vec::new();
    tr.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], EnergyTrace::<f64>::CSV_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0.00000000000e0,"));
    assert_eq!(lines[1].split(',').count(), 9);
}
