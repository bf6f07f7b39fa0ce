//! Real roots of univariate polynomials with exact recognition.
//!
//! Rational roots are found exactly first. The remaining real roots come
//! from companion-matrix eigenvalues, are polished by Newton's method, and
//! are then recognized as elements of a quadratic extension when possible.
//! Every exact value returned has been verified by exact evaluation.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::poly::UniPoly;
use crate::scalar::{rational_approx, Scalar};

/// Imaginary parts below this are treated as zero.
pub const IMAG_CUTOFF: f64 = 1e-10;
/// Numeric roots closer than this are merged.
pub const ROOT_DEDUP: f64 = 1e-10;

/// A real number known numerically and, when available, exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealValue {
    pub approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Scalar>,
    /// Monic square-free polynomial the value is a root of (algebraic certificate).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<UniPoly>,
}

impl RealValue {
    pub fn exact(s: Scalar) -> Self {
        RealValue {
            approx: s.to_f64(),
            exact: Some(s),
            minpoly: None,
        }
    }

    pub fn approx(x: f64) -> Self {
        RealValue {
            approx: x,
            exact: None,
            minpoly: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

impl std::fmt::Display for RealValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.exact {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "{:.12}", self.approx),
        }
    }
}

/// All distinct real roots, sorted ascending.
pub fn real_roots(p: &UniPoly) -> Vec<RealValue> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.square_free();
    let mut out = Vec::new();
    let mut rest = sf.clone();

    if rest.is_rational() {
        for r in rational_roots(&rest) {
            let lin = UniPoly::new(vec![-Scalar::rational(r.clone()), Scalar::one()]);
            rest = rest.exact_div(&lin).expect("verified root");
            out.push(RealValue::exact(Scalar::rational(r)));
        }
    }

    let numeric = numeric_real_roots(&rest);
    let mut used = vec![false; numeric.len()];
    let d = rest.radicand();

    // roots in the coefficients' own extension, via the conjugate polynomial
    if d > 1 {
        let conj_roots = numeric_real_roots(&rest.conj());
        for (k, &r) in numeric.iter().enumerate() {
            for &s in &conj_roots {
                if let Some(v) = recognize_surd(&rest, r, s, d) {
                    out.push(RealValue::exact(v));
                    used[k] = true;
                    break;
                }
            }
        }
    }

    // conjugate pairs from a rational quadratic factor
    if rest.is_rational() {
        for a in 0..numeric.len() {
            if used[a] {
                continue;
            }
            for b in a + 1..numeric.len() {
                if used[b] {
                    continue;
                }
                if let Some(f) = rational_quadratic_factor(&rest, numeric[a], numeric[b]) {
                    for (k, r) in [(a, numeric[a]), (b, numeric[b])] {
                        out.push(quadratic_root_value(&f, r));
                        used[k] = true;
                    }
                    break;
                }
            }
        }
    }

    for (k, &r) in numeric.iter().enumerate() {
        if !used[k] {
            out.push(RealValue {
                approx: r,
                exact: None,
                minpoly: Some(rest.monic()),
            });
        }
    }
    out.sort_by(|a, b| a.approx.total_cmp(&b.approx));
    out
}

/// Exact rational roots via the rational-root theorem, falling back to
/// continued-fraction recognition of numeric roots when the integer
/// coefficients are too large to enumerate divisors.
pub fn rational_roots(p: &UniPoly) -> Vec<BigRational> {
    if !p.is_rational() || p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let ints = integer_coeffs(p);
    let mut found: Vec<BigRational> = Vec::new();
    let check = |r: BigRational, found: &mut Vec<BigRational>| {
        if !found.contains(&r) && p.eval(&Scalar::rational(r.clone())).is_zero() {
            found.push(r);
        }
    };
    // zero root
    if ints[0].is_zero() {
        check(BigRational::zero(), &mut found);
    }
    let low = ints.iter().find(|c| !c.is_zero()).cloned().unwrap_or_default();
    let lead = ints.last().cloned().unwrap_or_default();
    let small = |v: &BigInt| v.abs().to_u64().is_some_and(|x| x <= 1_000_000_000_000);
    if small(&low) && small(&lead) {
        let ps = divisors(low.abs().to_u64().unwrap());
        let qs = divisors(lead.abs().to_u64().unwrap());
        for &pn in &ps {
            for &qd in &qs {
                if pn.gcd(&qd) != 1 {
                    continue;
                }
                for sgn in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(pn) * sgn, BigInt::from(qd));
                    check(r, &mut found);
                }
            }
        }
    } else {
        for x in numeric_real_roots(p) {
            if let Some(r) = rational_approx(x, 1 << 40) {
                check(r, &mut found);
            }
        }
    }
    found.sort();
    found
}

fn integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p.coeffs().iter().map(|c| c.rat().clone()).collect();
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rats.iter().map(|r| (r * BigRational::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Real roots in floating point: companion eigenvalues then Newton polish.
pub fn numeric_real_roots(p: &UniPoly) -> Vec<f64> {
    let c = p.to_f64();
    numeric_real_roots_f64(&c)
}

/// Same as [`numeric_real_roots`] on plain coefficients (low degree first).
pub fn numeric_real_roots_f64(c: &[f64]) -> Vec<f64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|v| *v == 0.0) {
        c.pop();
    }
    let mut roots = Vec::new();
    // peel exact zero roots so the companion matrix stays well scaled
    let mut zeros = 0;
    while c.len() > 1 && c[0] == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    if zeros > 0 {
        roots.push(0.0);
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return roots;
    }
    let lead = c[n];
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i] / lead;
    }
    for z in comp.complex_eigenvalues().iter() {
        if z.im.abs() <= IMAG_CUTOFF * z.re.abs().max(1.0) {
            roots.push(newton_polish(&c, z.re));
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= ROOT_DEDUP * a.abs().max(1.0));
    roots
}

fn newton_polish(c: &[f64], mut x: f64) -> f64 {
    for _ in 0..50 {
        let (mut p, mut dp) = (0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        let nx = x - step;
        if !nx.is_finite() {
            break;
        }
        if (nx - x).abs() <= 4.0 * f64::EPSILON * nx.abs() {
            x = nx;
            break;
        }
        x = nx;
    }
    x
}

/// Tries `r = a + b√d` where `s = a − b√d` is a root of the conjugate polynomial.
fn recognize_surd(p: &UniPoly, r: f64, s: f64, d: u64) -> Option<Scalar> {
    let sd = (d as f64).sqrt();
    let a = rational_approx((r + s) / 2.0, 1 << 24)?;
    let b = rational_approx((r - s) / (2.0 * sd), 1 << 24)?;
    let v = Scalar::new(a, b, d);
    p.eval(&v).is_zero().then_some(v)
}

/// `t² − σt + π` dividing `p`, from numeric roots `r1, r2`.
fn rational_quadratic_factor(p: &UniPoly, r1: f64, r2: f64) -> Option<UniPoly> {
    let s = rational_approx(r1 + r2, 1 << 24)?;
    let pr = rational_approx(r1 * r2, 1 << 24)?;
    let f = UniPoly::new(vec![Scalar::rational(pr), -Scalar::rational(s), Scalar::one()]);
    p.exact_div(&f).map(|_| f)
}

/// Root of a monic rational quadratic nearest `r`, exact when the
/// discriminant's square root is representable.
fn quadratic_root_value(f: &UniPoly, r: f64) -> RealValue {
    let half = Scalar::frac(1, 2);
    let b = f.coeff(1);
    let c = f.coeff(0);
    let mid = -(&b * &half);
    let disc = &(&mid * &mid) - &c;
    if let Some(sq) = disc.sqrt_exact() {
        for cand in [&mid + &sq, &mid - &sq] {
            if (cand.to_f64() - r).abs() <= 1e-6 * r.abs().max(1.0) && f.eval(&cand).is_zero() {
                return RealValue {
                    approx: cand.to_f64(),
                    exact: Some(cand),
                    minpoly: Some(f.clone()),
                };
            }
        }
    }
    RealValue {
        approx: r,
        exact: None,
        minpoly: Some(f.clone()),
    }
}
