use pendant_core::lattice2d::brillouin_grid;
use pendant_core::linalg::{hermitian_eigenvalues, CMatrix};
use pendant_core::{build_bloch_2d, char_poly_residual_2d, eigenvalues, scan_spectrum_2d, PendantSpec2D};
use proptest::prelude::*;
use std::f64::consts::PI;

fn g1() -> PendantSpec2D {
    PendantSpec2D::new([[2, 0], [0, 1]], vec![[0, 0]]).unwrap()
}

fn g2() -> PendantSpec2D {
    PendantSpec2D::new([[2, 0], [1, 1]], vec![[0, 0]]).unwrap()
}

/// Published dispersion relation of G1 with `u = cos k1`, `v = cos k2`.
fn g1_relation(l: f64, u: f64, v: f64) -> f64 {
    20.0 * l.powi(3) - 18.0 * v * l * l - 2.0 * (3.0 - 2.0 * v * v) * l + 2.0 * v - 2.0 * u * l
}

/// Closed form of our G2 determinant: `|h|^2` is the squared modulus of
/// the backbone hopping sum between the two sublattices.
fn g2_h2(k1: f64, k2: f64) -> f64 {
    4.0 + 2.0 * (k1.cos() + 2.0 * k2.cos() + 2.0 * (k1 - k2).cos() + (k1 - 2.0 * k2).cos())
}

fn g2_published_bracket(k1: f64, k2: f64) -> f64 {
    6.0 + 4.0 * k2.cos() + 4.0 * k2.cos().powi(2) + 2.0 * (1.0 + 2.0 * k2.cos()) * k1.cos()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn g1_determinant_matches_published_relation(k1 in -PI..PI, k2 in -PI..PI, l in -1.2f64..1.2) {
        let det = char_poly_residual_2d(&g1(), k1, k2, l);
        let published = g1_relation(l, k1.cos(), k2.cos());
        prop_assert!((det + published).abs() < 1e-12, "det {} published {}", det, published);
    }

    #[test]
    fn g2_determinant_factors(k1 in -PI..PI, k2 in -PI..PI, l in -1.2f64..1.2) {
        let det = char_poly_residual_2d(&g2(), k1, k2, l);
        let closed = -l * (20.0 * l * l - 4.0 - g2_h2(k1, k2));
        prop_assert!((det - closed).abs() < 1e-12, "det {} closed {}", det, closed);
        prop_assert!(char_poly_residual_2d(&g2(), k1, k2, 0.0).abs() < 1e-14);
    }

    #[test]
    fn shifted_representatives_give_the_same_fiber(k1 in -PI..PI, k2 in -PI..PI, a in -3i64..3, b in -3i64..3) {
        let spec = PendantSpec2D::new([[3, 0], [1, 2]], vec![[0, 0], [2, 1]]).unwrap();
        let lat = spec.lattice();
        let reps: Vec<[i64; 2]> = spec
            .representatives()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let (m, n) = (a * i as i64 % 3, b - i as i64);
                [x[0] + m * lat[0][0] + n * lat[1][0], x[1] + m * lat[0][1] + n * lat[1][1]]
            })
            .collect();
        let cell = spec.cell_with_representatives(&reps).unwrap();
        let t = cell.transition([k1, k2]);
        let d = cell.degrees();
        let h = CMatrix::from_fn(t.dim(), |i, j| t[(i, j)] * (d[i] as f64 / d[j] as f64).sqrt());
        let shifted = hermitian_eigenvalues(&h).unwrap();
        let canonical = eigenvalues(&build_bloch_2d(&spec, k1, k2).unwrap()).unwrap();
        for (x, y) in shifted.iter().zip(&canonical) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn g2_bracket_range_matches_published_form() {
    let grid = brillouin_grid(401);
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    let (mut plo, mut phi) = (f64::MAX, f64::MIN);
    for &k1 in &grid {
        for &k2 in &grid {
            let ours = 4.0 + g2_h2(k1, k2);
            let theirs = g2_published_bracket(k1, k2);
            lo = lo.min(ours);
            hi = hi.max(ours);
            plo = plo.min(theirs);
            phi = phi.max(theirs);
        }
    }
    assert!((lo - 4.0).abs() < 1e-3 && (plo - 4.0).abs() < 1e-3, "{lo} {plo}");
    assert!((hi - 20.0).abs() < 1e-12 && (phi - 20.0).abs() < 1e-12, "{hi} {phi}");
}

/// On the periodic grid `2 pi j / m` with even `m`, the momentum shift by
/// `pi` that maps a bipartite fiber onto its negative stays on the grid.
#[test]
fn torus_grid_pool_is_symmetric_multiset() {
    let m = 8;
    let ks: Vec<f64> = (0..m).map(|j| -PI + 2.0 * PI * j as f64 / m as f64).collect();
    let specs = [
        g1(),
        g2(),
        PendantSpec2D::new([[3, 0], [1, 2]], vec![[0, 0], [2, 1]]).unwrap(),
        PendantSpec2D::new([[2, 0], [0, 2]], vec![[0, 0], [1, 1]]).unwrap(),
    ];
    for spec in specs {
        let mut pool: Vec<f64> = Vec::new();
        for &k1 in &ks {
            for &k2 in &ks {
                pool.extend(eigenvalues(&build_bloch_2d(&spec, k1, k2).unwrap()).unwrap());
            }
        }
        pool.sort_by(f64::total_cmp);
        for (x, y) in pool.iter().zip(pool.iter().rev()) {
            assert!((x + y).abs() < 1e-10, "{spec:?}");
        }
    }
}

#[test]
fn flat_band_counts() {
    for m in [3, 9, 17] {
        assert_eq!(scan_spectrum_2d(&g2(), m).unwrap().zero_count, m * m);
    }
    // cos k2 = 0 is the only source of a zero root for G1; this grid avoids it.
    assert_eq!(scan_spectrum_2d(&g1(), 8).unwrap().zero_count, 0);
}

#[test]
fn checkerboard_grid_scan_is_set_symmetric() {
    let scan = scan_spectrum_2d(&g1(), 33).unwrap();
    assert!(scan.symmetry_defect() < 1e-10);
    assert!(scan.eigenvalues.iter().all(|x| x.abs() <= 1.0 + 1e-12));
}
