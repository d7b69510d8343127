//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p pendant --test acceptance`.

use std::f64::consts::PI;
use std::time::Instant;

use pendant_core::charpoly::{fiber_determinant, RealFiber};
use pendant_core::graph_model::normalized_patterns;
use pendant_core::poly::IntPoly;
use pendant_core::verify::{
    band_theorems, charpoly_structure, kernel_dimension, permutation_oracle, spectral_symmetry, truncation_tiling,
};
use pendant_core::{
    band_structure, char_poly_residual_2d, decompose, extract, normalize, scan_spectrum_2d, BandStructure,
    PendantSpec1D, PendantSpec2D,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn spec(r: usize, p: &[usize]) -> PendantSpec1D {
    PendantSpec1D::new(r, p.iter().copied()).unwrap()
}

/// Every pattern of period `r` with at least one pendant.
fn all_patterns(r: usize) -> impl Iterator<Item = PendantSpec1D> {
    (1u32..1 << r).map(move |mask| PendantSpec1D::new(r, (0..r).filter(|i| mask >> i & 1 == 1).map(|i| i + 1)).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bands_close(bs: &BandStructure, expected: &[(f64, f64)], tol: f64) -> Result<(), String> {
    let mut got = bs.all_bands();
    got.sort_by(|a, b| a.lower.total_cmp(&b.lower));
    ensure(got.len() == expected.len(), || format!("{} bands, expected {}", got.len(), expected.len()))?;
    for (b, &(lo, hi)) in got.iter().zip(expected) {
        let err = (b.lower - lo).abs().max((b.upper - hi).abs());
        ensure(err < tol, || format!("band [{}, {}] vs [{lo}, {hi}] (error {err:.1e})", b.lower, b.upper))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let bs = band_structure(&spec(1, &[1])).map_err(|e| e.to_string())?;
    let third = 1.0 / 3.0;
    bands_close(&bs, &[(-1.0, -third), (third, 1.0)], 1e-10)?;
    ensure(!bs.has_flat_band, || "unexpected flat band".into())?;
    ensure(bs.gaps.len() == 1, || format!("{} gaps", bs.gaps.len()))?;
    Ok(format!("bands [-1, -1/3] and [1/3, 1], gap {:?}", (bs.gaps[0].lower, bs.gaps[0].upper)))
}

fn criterion_2() -> Outcome {
    let bs = band_structure(&spec(2, &[1])).map_err(|e| e.to_string())?;
    let a = 1.0 / 3f64.sqrt();
    bands_close(&bs, &[(-1.0, -a), (a, 1.0)], 1e-10)?;
    ensure(bs.has_flat_band, || "flat band missing".into())?;
    ensure((bs.central_gap_radius - a).abs() < 1e-10, || format!("gap radius {}", bs.central_gap_radius))?;
    Ok(format!("bands +-[1/sqrt 3, 1], flat band at 0, gap radius {:.10}", bs.central_gap_radius))
}

fn criterion_3() -> Outcome {
    let base = band_structure(&spec(2, &[1])).map_err(|e| e.to_string())?;
    let copy = band_structure(&spec(4, &[1, 3])).map_err(|e| e.to_string())?;
    let d = base.spectrum_distance(&copy);
    ensure(d < 1e-10, || format!("(4,{{1,3}}) spectrum differs by {d:.1e}"))?;
    ensure(copy.has_flat_band && (copy.central_gap_radius - base.central_gap_radius).abs() < 1e-10, || {
        "flat band or gap radius differ".into()
    })?;
    ensure(copy.gaps.len() == base.gaps.len(), || "gap count differs".into())?;
    let even = band_structure(&spec(4, &[1, 2])).map_err(|e| e.to_string())?;
    ensure(!even.has_flat_band, || "(4,{1,2}) reports a flat band".into())?;
    Ok(format!("(4,{{1,3}}) matches (2,{{1}}) to {d:.1e}; (4,{{1,2}}) has no flat band"))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for r in 1..=10 {
        for raw in all_patterns(r) {
            let s = normalize(&raw);
            let dec = decompose(&s).map_err(|e| e.to_string())?;
            let p = extract(&s).map_err(|e| format!("{raw:?}: {e}"))?;
            let eps = i64::from(p.sign);
            // P_0 - P_pi = 2T = -4 eps lambda^s, straight from the two determinants.
            let p0 = fiber_determinant(&s, RealFiber::Zero).map_err(|e| e.to_string())?;
            let ppi = fiber_determinant(&s, RealFiber::Pi).map_err(|e| e.to_string())?;
            ensure(&p0 - &ppi == IntPoly::monomial(-4 * eps, dec.s), || format!("{raw:?}: T is not -2 eps x^s"))?;
            ensure(p.lowest_exponent() == Some(dec.q), || format!("{raw:?}: lowest degree != q"))?;
            charpoly_structure(&s, 50, 0xacce97 + count as u64).map_err(|e| format!("{raw:?}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} patterns (r <= 10): T exact, lowest degree q, |A_m0| rule, 50 det samples each"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut seen = Vec::new();
    while seen.len() < 20 {
        let r = rng.gen_range(1..=8);
        let s: Vec<usize> = (1..=r).filter(|_| rng.gen_bool(0.5)).collect();
        if s.is_empty() {
            continue;
        }
        let p = spec(r, &s);
        kernel_dimension(&p, 33).map_err(|e| format!("{p:?}: {e}"))?;
        seen.push(p);
    }
    Ok("20 random patterns: zero count equals q at all 33 momenta".into())
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for r in 1..=8 {
        for s in normalized_patterns(r) {
            spectral_symmetry(&s, 33).map_err(|e| format!("{s:?}: {e}"))?;
            let bs = band_structure(&s).map_err(|e| e.to_string())?;
            let t = decompose(&s).map_err(|e| e.to_string())?.t;
            ensure(bs.central_gap_radius > 0.0, || format!("{s:?}: no central gap"))?;
            ensure((1..=2 * t - 1).contains(&bs.gaps.len()), || format!("{s:?}: {} gaps, t = {t}", bs.gaps.len()))?;
            count += 1;
        }
    }
    Ok(format!("{count} classes (r <= 8): symmetric fibers, positive gap radius, 1 <= gaps <= 2t-1"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for r in 1..=8 {
        for s in normalized_patterns(r) {
            band_theorems(&s, 33, 1e-8).map_err(|e| format!("{s:?}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} classes (r <= 8): strictly monotone bands, |D(lambda) - cos k| < 1e-8"))
}

fn criterion_8() -> Outcome {
    let cells: Vec<usize> = (1..=8).collect();
    let mut tiled = 0;
    for r in 1..=6 {
        for s in all_patterns(r) {
            truncation_tiling(&s, &cells, 1e-8).map_err(|e| format!("{s:?}: {e}"))?;
            tiled += 1;
        }
    }
    let mut exact = 0;
    for r in 1..=8 {
        for s in all_patterns(r).filter(|s| s.cell_size() <= 9) {
            let n = normalize(&s);
            permutation_oracle(&n).map_err(|e| format!("{s:?}: {e}"))?;
            exact += 1;
        }
    }
    Ok(format!("{tiled} patterns tile for N = 1..8; {exact} patterns with r+s <= 9 match exactly"))
}

fn g1() -> PendantSpec2D {
    PendantSpec2D::new([[2, 0], [0, 1]], vec![[0, 0]]).unwrap()
}

fn criterion_9() -> Outcome {
    let mut spacings = Vec::new();
    for m in [65, 129, 257] {
        spacings.push(scan_spectrum_2d(&g1(), m).map_err(|e| e.to_string())?.max_spacing);
    }
    ensure(spacings[2] < 0.02, || format!("max spacing {} at M = 257", spacings[2]))?;
    ensure(spacings.windows(2).all(|w| w[1] < w[0]), || format!("spacings not decreasing: {spacings:?}"))?;

    let g = g1();
    let mut worst = 0.0f64;
    let n = 201;
    let unit = |j: usize| -1.0 + 2.0 * j as f64 / (n - 1) as f64;
    for j in 0..n {
        let t = unit(j);
        // u = -1, lambda = v / 2
        let (k1, k2) = (PI, t.acos());
        worst = worst.max(char_poly_residual_2d(&g, k1, k2, t / 2.0).abs());
        // lambda = v with v^2 = (u + 2) / 3
        let v = ((t + 2.0) / 3.0).sqrt();
        for v in [v, -v] {
            worst = worst.max(char_poly_residual_2d(&g, t.acos(), v.acos(), v).abs());
        }
        // lambda = 2v: substituting gives v (48 v^2 - 5 - 2u) = 0, so
        // v^2 = (2u + 5) / 48, which sweeps lambda over [1/2, sqrt(7/12)].
        let v = ((2.0 * t + 5.0) / 48.0).sqrt();
        for v in [v, -v] {
            worst = worst.max(char_poly_residual_2d(&g, t.acos(), v.acos(), 2.0 * v).abs());
        }
    }
    ensure(worst < 1e-9, || format!("algebraic family residual {worst:.1e}"))?;
    Ok(format!("max spacing {:.4} / {:.4} / {:.4} at M = 65/129/257; family residual {worst:.1e}", spacings[0], spacings[1], spacings[2]))
}

fn criterion_10() -> Outcome {
    let g2 = PendantSpec2D::new([[2, 0], [1, 1]], vec![[0, 0]]).unwrap();
    let m = 257;
    let scan = scan_spectrum_2d(&g2, m).map_err(|e| e.to_string())?;
    let bound = 1.0 / 5f64.sqrt();
    let min = scan.min_positive.ok_or("no positive eigenvalue")?;
    ensure((min - bound).abs() < 0.01, || format!("min positive {min}"))?;
    let inside = scan.eigenvalues.iter().filter(|&&x| x > 1e-9 && x < bound - 0.01).count();
    ensure(inside == 0, || format!("{inside} eigenvalues inside the gap"))?;
    ensure(scan.zero_count == m * m, || format!("zero count {} != M^2 = {}", scan.zero_count, m * m))?;
    Ok(format!("min positive {min:.6} (1/sqrt 5 = {bound:.6}), flat band multiplicity {}", scan.zero_count))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("G(1,1) bands", criterion_1),
        ("G(2,1) bands and flat band", criterion_2),
        ("isomorphism and odd-run criterion", criterion_3),
        ("characteristic polynomial structure", criterion_4),
        ("kernel dimension", criterion_5),
        ("symmetry and gap count", criterion_6),
        ("monotone bands and D-consistency", criterion_7),
        ("truncation and permutation oracles", criterion_8),
        ("2D lattice without gap", criterion_9),
        ("2D lattice with gap", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
