use super::*;
use crate::domain::{energy, energy_gram};
use crate::fracdiff::XiQuadrature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn setup(nh: usize, nb: usize, k: usize) -> (MaterialParams<f64>, FractionalParams<f64>, Grid<f64>) {
    let mp = MaterialParams::unit();
    let fp = FractionalParams::new(0.5, 1.0).unwrap();
    let rule = XiQuadrature::geometric(k, 0.05, 20.0).unwrap();
    let grid = Grid::new(&mp, nh, nb, rule).unwrap();
    (mp, fp, grid)
}

#[test]
fn zero_maps_to_zero() {
    let (mp, fp, grid) = setup(6, 7, 4);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    assert_eq!(a.dimension(), grid.layout().dimension());
    let u = StateVector::zeros(grid.layout());
    assert_eq!(apply_generator(&a, &u).unwrap(), u);
}

#[test]
fn velocity_feeds_displacement() {
    let (mp, fp, grid) = setup(6, 7, 4);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let mut u = StateVector::zeros(grid.layout());
    u.v_dot = (0..grid.beam_nodes()).map(|j| 1.0 + j as f64).collect();
    u.p_dot = (0..grid.beam_nodes()).map(|j| -(j as f64)).collect();
    let y = apply_generator(&a, &u).unwrap();
    assert_eq!(y.v, u.v_dot);
    assert_eq!(y.p, u.p_dot);
}

#[test]
fn single_memory_node() {
    let (mp, fp, grid) = setup(6, 7, 5);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let layout = grid.layout();
    let k = 2;
    let xi = grid.xi_rule.nodes()[k];
    let w = grid.xi_rule.weights()[k];
    let mu = fp.mu(xi).unwrap();
    let mut u = StateVector::zeros(layout);
    for j in 0..layout.n_nodes {
        u.phi[j * layout.n_xi + k] = 1.0 + 0.1 * j as f64;
    }
    let y = apply_generator(&a, &u).unwrap();
    for j in 0..layout.n_nodes {
        let phi = u.phi[j * layout.n_xi + k];
        let got = y.phi[j * layout.n_xi + k];
        assert!((got + (xi * xi + fp.eta()) * phi).abs() < 1e-13);
        let expect = -fp.coeff_c() / mp.rho * w * mu * phi;
        if j > 0 {
            assert!((y.v_dot[j] - expect).abs() < 1e-13);
        } else {
            // The interface node also carries the rod's half cell.
            let m0 = mp.rho * grid.h_beam / 2.0 + grid.h_heat / 2.0;
            let scaled = expect * mp.rho * grid.h_beam / 2.0 / m0;
            assert!((y.v_dot[0] - scaled).abs() < 1e-13);
        }
    }
    assert!(y.z.iter().chain(&y.p_dot).all(|&x| x == 0.0));
}

#[test]
fn memory_block_is_diagonal() {
    let (mp, fp, grid) = setup(5, 6, 7);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let phi = grid.layout().phi();
    for r in phi.clone() {
        let (cols, _) = a.matrix().row(r);
        for &c in cols {
            assert!(!phi.contains(&c) || c == r);
        }
    }
}

fn check_identity(mp: &MaterialParams<f64>, fp: &FractionalParams<f64>, grid: &Grid<f64>, seed: u64) {
    let a = assemble_generator(mp, fp, grid).unwrap();
    let g = energy_gram(mp, fp, grid);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let u = StateVector::random(grid.layout(), &mut rng);
        let x = u.to_flat();
        let ax = a.matrix().matvec(&x).unwrap();
        let re = h_inner(&g, &ax, &x).unwrap();
        let d = dissipation_rate(&u, mp, fp, grid).unwrap();
        let n2 = 2.0 * energy(&u, mp, grid, fp).unwrap().total;
        assert!(d <= 0.0);
        // Roundoff scales with the stiffest memory rate, i.e. with |d|.
        assert!((re - d).abs() <= 1e-10 * n2 + 1e-13 * d.abs(), "{re} vs {d}");
    }
}

#[test]
fn energy_identity_holds_exactly() {
    let (mp, fp, grid) = setup(8, 9, 6);
    check_identity(&mp, &fp, &grid, 1);
    let mut mp2 = mp;
    mp2.gamma = -0.6;
    mp2.rho = 2.5;
    mp2.kappa = 0.3;
    mp2.ell1 = 2.0;
    let fp2 = FractionalParams::new(0.3, 0.0).unwrap();
    let grid2 = Grid::new(&mp2, 11, 5, XiQuadrature::geometric(9, 1e-3, 1e3).unwrap()).unwrap();
    check_identity(&mp2, &fp2, &grid2, 2);
    check_identity(&mp2, &fp2, &grid2.clone().with_coupling(Coupling::Detached), 3);
}

#[test]
fn decoupled_zero_patterns() {
    let (mut mp, fp, grid) = setup(5, 6, 0);
    mp.gamma = 0.0;
    mp.chi = 2.0;
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let l = grid.layout();
    for r in l.v_dot() {
        let (cols, _) = a.matrix().row(r);
        assert!(cols.iter().all(|c| !l.p().contains(c) && !l.p_dot().contains(c)));
    }
    for r in l.p_dot() {
        let (cols, _) = a.matrix().row(r);
        assert!(cols.iter().all(|c| l.p().contains(c)));
    }
}

#[test]
fn heat_sine_dissipation() {
    let mut errs = Vec::new();
    for &n in &[20, 40] {
        let (mp, fp, grid) = setup(n, 6, 3);
        let u = StateVector::from_profiles(&grid, |x| (PI * (x + 1.0)).sin(), |_| 0.0, |_| 0.0, |_| 0.0, |_| 0.0);
        let d = dissipation_rate(&u, &mp, &fp, &grid).unwrap();
        errs.push((d + PI * PI / 2.0).abs());
    }
    assert!(errs[1] < 1e-2);
    let ratio = errs[0] / errs[1];
    assert!((3.5..4.5).contains(&ratio), "{ratio}");
}

#[test]
fn interior_stencil_is_second_order() {
    // v = sin(πx), p = sin(2πx) vanish at x = 1; compare V̇, Ṗ away from x = 0.
    let mut errs = Vec::new();
    for &n in &[15usize, 31] {
        let (mp, fp, grid) = setup(6, n, 0);
        let u = StateVector::from_profiles(
            &grid,
            |_| 0.0,
            |x| (PI * x).sin(),
            |_| 0.0,
            |x| (2.0 * PI * x).sin(),
            |_| 0.0,
        );
        let a = assemble_generator(&mp, &fp, &grid).unwrap();
        let y = apply_generator(&a, &u).unwrap();
        let gb = mp.gamma * mp.beta;
        let mut e: f64 = 0.0;
        for j in 1..grid.beam_nodes() {
            let x = grid.beam_x(j);
            if x < 0.25 {
                continue;
            }
            let vxx = -PI * PI * (PI * x).sin();
            let pxx = -4.0 * PI * PI * (2.0 * PI * x).sin();
            e = e.max((y.v_dot[j] - (mp.chi * vxx - gb * pxx) / mp.rho).abs());
            e = e.max((y.p_dot[j] - (mp.beta * pxx - gb * vxx) / mp.mu_mag).abs());
        }
        errs.push(e);
    }
    let ratio = errs[0] / errs[1];
    assert!((3.5..4.5).contains(&ratio), "{ratio}");
}

#[test]
fn triplet_export_header() {
    let (mp, fp, grid) = setup(4, 4, 2);
    let a = assemble_generator(&mp, &fp, &grid).unwrap();
    let mut buf = Vec::new();
    a.write_triplets(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], format!("dimension {}", a.dimension()));
    assert!(lines[2].starts_with("block z 0 4"));
    assert_eq!(lines.len(), 1 + 1 + 6 + 1 + a.matrix().nnz());
}

#[test]
fn rejects_degenerate_material() {
    let (mut mp, fp, grid) = setup(4, 4, 2);
    mp.chi = 0.5;
    assert!(assemble_generator(&mp, &fp, &grid).is_err());
}
