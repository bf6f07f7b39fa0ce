//! Random rational quadratic fields shared by the property tests.
#![allow(dead_code)]

use fracinv::field::PolyField2D;
use fracinv::poly::BivariatePoly;
use fracinv::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MONOS: [(u32, u32); 5] = [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng, r: i64) -> Scalar {
    Scalar::from(rng.random_range(-r..=r))
}

pub fn grid_slope(rng: &mut ChaCha8Rng) -> Scalar {
    let p = rng.random_range(-6i64..=6);
    let q = rng.random_range(1i64..=4);
    Scalar::frac(p, q)
}

fn poly(terms: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> BivariatePoly {
    BivariatePoly::from_terms(terms)
}

pub fn random_quadratic(rng: &mut ChaCha8Rng, r: i64) -> BivariatePoly {
    poly(MONOS.iter().map(|&e| (e, small(rng, r))))
}

/// A random quadratic field through the origin. A third of the draws are
/// unstructured, a third carry one planted line `y = m·x`, and a third are
/// built so the slope cubic has planted rational roots.
pub fn random_field(rng: &mut ChaCha8Rng) -> PolyField2D {
    match rng.random_range(0..3) {
        0 => {
            let p = random_quadratic(rng, 3);
            let q = random_quadratic(rng, 3);
            PolyField2D::new(2, p, q).unwrap()
        }
        1 => {
            let m = grid_slope(rng);
            let p = random_quadratic(rng, 3);
            let l = poly([((1, 0), small(rng, 2)), ((0, 1), small(rng, 2))]);
            let line = poly([((0, 1), Scalar::from(1)), ((1, 0), -&m)]);
            let q = &p.scale(&m) + &(&line * &l);
            PolyField2D::new(2, p, q).unwrap()
        }
        _ => {
            let (r1, r2) = (grid_slope(rng), grid_slope(rng));
            let r3 = Scalar::from(rng.random_range(-3i64..=3));
            let c = Scalar::from(rng.random_range(1i64..=2));
            let s1 = &(&r1 + &r2) + &r3;
            let s2 = &(&(&r1 * &r2) + &(&r1 * &r3)) + &(&r2 * &r3);
            let s3 = &(&r1 * &r2) * &r3;
            let (a1, b4, b5) = (small(rng, 3), small(rng, 3), small(rng, 3));
            let a = [a1.clone(), Scalar::from(0), &b5 + &(&c * &s2), c.clone(), &b4 - &(&c * &s1)];
            let b = [Scalar::from(0), a1, &c * &s3, b4, b5];
            let p = poly(MONOS.iter().zip(a).map(|(e, v)| (*e, v)));
            let q = poly(MONOS.iter().zip(b).map(|(e, v)| (*e, v)));
            PolyField2D::new(2, p, q).unwrap()
        }
    }
}

/// Independent tangency oracle: `Q(x, m·x) − m·P(x, m·x) ≡ 0` by collecting
/// powers of `x` term by term.
pub fn line_is_invariant(f: &PolyField2D, m: &Scalar) -> bool {
    let mut acc: std::collections::BTreeMap<u32, Scalar> = Default::default();
    for (&(i, j), c) in f.q().terms() {
        let e = acc.entry(i + j).or_insert_with(|| Scalar::from(0));
        *e = &*e + &(c * &m.pow(j));
    }
    for (&(i, j), c) in f.p().terms() {
        let e = acc.entry(i + j).or_insert_with(|| Scalar::from(0));
        *e = &*e - &(c * &m.pow(j + 1));
    }
    acc.values().all(|v| v == &Scalar::from(0))
}

/// All slopes `p/q` with `|p|, |q| ≤ 12`.
pub fn slope_grid() -> Vec<Scalar> {
    let mut v: Vec<Scalar> = Vec::new();
    for p in -12i64..=12 {
        for q in 1i64..=12 {
            let s = Scalar::frac(p, q);
            if !v.contains(&s) {
                v.push(s);
            }
        }
    }
    v
}

/// Least-squares slope of `ys` against `0, 1, 2, ...`.
#[allow(dead_code)]
pub fn lsq_slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let xm = (n - 1.0) / 2.0;
    let ym = ys.iter().sum::<f64>() / n;
    let num: f64 = ys.iter().enumerate().map(|(i, y)| (i as f64 - xm) * (y - ym)).sum();
    let den: f64 = (0..ys.len()).map(|i| (i as f64 - xm).powi(2)).sum();
    -num / den
}
