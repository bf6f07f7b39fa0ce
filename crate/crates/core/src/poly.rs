//! Exact univariate and bivariate polynomials over [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Dense univariate polynomial, coefficients stored low degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl From<Vec<Scalar>> for UniPoly {
    fn from(v: Vec<Scalar>) -> Self {
        UniPoly::new(v)
    }
}

impl From<UniPoly> for Vec<Scalar> {
    fn from(p: UniPoly) -> Self {
        p.coeffs
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Scalar::int(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·tᵉ`.
    pub fn monomial(c: Scalar, e: usize) -> Self {
        let mut v = vec![Scalar::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn t() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Common radicand of all coefficients (1 if rational).
    pub fn radicand(&self) -> u64 {
        self.coeffs.iter().map(Scalar::radicand).max().unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_rational)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Scalar::to_f64).collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::constant(Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(q(t))`.
    pub fn compose(&self, q: &UniPoly) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * dc);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Quotient when `d` divides exactly.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            push_term(&mut out, c, &mono_str(&[(var, i as u32)]));
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

fn mono_str(vars: &[(&str, u32)]) -> String {
    vars.iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn push_term(out: &mut String, c: &Scalar, mono: &str) {
    let neg = c.signum() < 0;
    let mag = if neg { -c } else { c.clone() };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let cs = if mag.is_rational() {
        mag.to_string()
    } else {
        format!("({mag})")
    };
    if mono.is_empty() {
        out.push_str(&cs);
    } else if mag.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&cs);
        out.push('*');
        out.push_str(mono);
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &'a UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Exponent pair `(i, j)` of `xⁱyʲ`.
pub type Exps = (u32, u32);

/// Sparse bivariate polynomial in canonical form (no stored zeros).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<Exps, Scalar>,
}

/// Graded-lex key: larger means earlier in printing and division.
fn grlex(e: &Exps) -> (u32, u32) {
    (e.0 + e.1, e.0)
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Scalar, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Scalar::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Scalar)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience for tests and fixtures: `(i, j, num, den)`.
    pub fn from_int_terms(t: &[(u32, u32, i64, i64)]) -> Self {
        Self::from_terms(t.iter().map(|&(i, j, n, d)| ((i, j), Scalar::frac(n, d))))
    }

    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn radicand(&self) -> u64 {
        self.terms.values().map(Scalar::radicand).max().unwrap_or(1)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(Exps, Scalar)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| grlex(e))
            .map(|(e, c)| (*e, c.clone()))
    }

    /// Homogeneous component of degree `k`.
    pub fn homogeneous(&self, k: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 + e.1 == k)
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.conj())))
    }

    pub fn deriv_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * &Scalar::int(i as i64))),
        )
    }

    pub fn deriv_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * &Scalar::int(j as i64))),
        )
    }

    /// Antiderivative in `x` with zero constant of integration.
    pub fn integrate_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((i + 1, j), c / &Scalar::int(i as i64 + 1))),
        )
    }

    pub fn integrate_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((i, j + 1), c / &Scalar::int(j as i64 + 1))),
        )
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + c * &x.pow(i) * y.pow(j);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64() * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    /// Substitutes `x ← sx`, `y ← sy`.
    pub fn compose(&self, sx: &BivariatePoly, sy: &BivariatePoly) -> Self {
        let mut out = Self::zero();
        let dx = self.degree_x().unwrap_or(0);
        let dy = self.degree_y().unwrap_or(0);
        let xp: Vec<_> = (0..=dx).scan(Self::constant(Scalar::one()), |acc, k| {
            let cur = acc.clone();
            if k < dx {
                *acc = &*acc * sx;
            }
            Some(cur)
        }).collect();
        let yp: Vec<_> = (0..=dy).scan(Self::constant(Scalar::one()), |acc, k| {
            let cur = acc.clone();
            if k < dy {
                *acc = &*acc * sy;
            }
            Some(cur)
        }).collect();
        for (&(i, j), c) in &self.terms {
            let t = (&xp[i as usize] * &yp[j as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// Shift `x ← x + x0`, `y ← y + y0`.
    pub fn translate(&self, x0: &Scalar, y0: &Scalar) -> Self {
        let sx = &Self::x() + &Self::constant(x0.clone());
        let sy = &Self::y() + &Self::constant(y0.clone());
        self.compose(&sx, &sy)
    }

    /// `p(x, y(x))` for a polynomial graph `y = h(x)`.
    pub fn restrict_graph(&self, h: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            out = &out + &(&UniPoly::monomial(c.clone(), i as usize) * &h.pow(j));
        }
        out
    }

    /// `p(x0, t)` as a polynomial in `t`.
    pub fn restrict_x(&self, x0: &Scalar) -> UniPoly {
        let mut v = vec![Scalar::zero(); self.degree_y().map_or(0, |d| d as usize + 1)];
        for (&(i, j), c) in &self.terms {
            v[j as usize] = &v[j as usize] + &(c * &x0.pow(i));
        }
        UniPoly::new(v)
    }

    /// `p(t, y0)` as a polynomial in `t`.
    pub fn restrict_y(&self, y0: &Scalar) -> UniPoly {
        self.swap_xy().restrict_x(y0)
    }

    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    /// Coefficients of `yʲ` as polynomials in `x`, index `j`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let dy = match self.degree_y() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Vec::<Scalar>::new(); dy + 1];
        for (&(i, j), c) in &self.terms {
            let v = &mut out[j as usize];
            if v.len() <= i as usize {
                v.resize(i as usize + 1, Scalar::zero());
            }
            v[i as usize] = c.clone();
        }
        out.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coeffs(cs: &[UniPoly]) -> Self {
        let mut p = Self::zero();
        for (j, cx) in cs.iter().enumerate() {
            for (i, c) in cx.coeffs().iter().enumerate() {
                p.add_term((i as u32, j as u32), c.clone());
            }
        }
        p
    }

    /// Multivariate division by a single divisor in graded-lex order.
    /// With one divisor a zero remainder is equivalent to exact divisibility.
    pub fn divrem(&self, d: &BivariatePoly) -> (BivariatePoly, BivariatePoly) {
        let (le, lc) = d.leading().expect("division by zero polynomial");
        let inv = lc.inv();
        let mut p = self.clone();
        let mut q = Self::zero();
        let mut r = Self::zero();
        while let Some((e, c)) = p.leading() {
            if e.0 >= le.0 && e.1 >= le.1 {
                let t = Self::monomial(&c * &inv, e.0 - le.0, e.1 - le.1);
                p = &p - &(&t * d);
                q = &q + &t;
            } else {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
        (q, r)
    }

    /// True when `self = c·other` for a nonzero constant `c`.
    pub fn is_proportional(&self, other: &BivariatePoly) -> bool {
        if self.is_zero() || other.is_zero() || self.num_terms() != other.num_terms() {
            return false;
        }
        let (e, a) = self.leading().expect("nonzero");
        let b = other.coeff(e.0, e.1);
        if b.is_zero() {
            return false;
        }
        let r = &a / &b;
        &other.scale(&r) == self
    }

    pub fn exact_div(&self, d: &BivariatePoly) -> Option<BivariatePoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monomials in graded-lex order (highest first).
    pub fn sorted_terms(&self) -> Vec<(Exps, Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|a, b| grlex(&b.0).cmp(&grlex(&a.0)));
        v
    }

    pub fn fmt_vars(&self, xv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for ((i, j), c) in self.sorted_terms() {
            push_term(&mut out, &c, &mono_str(&[(xv, i), (yv, j)]));
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "y"))
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly({self})")
    }
}

impl Serialize for BivariatePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, o: &'a BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, o: &'a BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, o: &'a BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&Scalar::int(-1))
    }
}

/// Polynomials in `y` whose coefficients are polynomials in `x`
/// (index `j` holds the coefficient of `yʲ`). Used for elimination.
pub mod ypoly {
    use super::*;

    pub fn trim(mut p: Vec<UniPoly>) -> Vec<UniPoly> {
        while p.last().is_some_and(UniPoly::is_zero) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[UniPoly]) -> Option<usize> {
        p.len().checked_sub(1)
    }

    /// gcd over `K[x]` of all coefficients.
    pub fn content(p: &[UniPoly]) -> UniPoly {
        p.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive(p: &[UniPoly]) -> Vec<UniPoly> {
        let c = content(p);
        if c.is_zero() {
            return Vec::new();
        }
        p.iter().map(|a| a.exact_div(&c).expect("content divides")).collect()
    }

    /// Pseudo-remainder of `a` by `b` in `K[x][y]`.
    pub fn prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
        let db = degree(b).expect("nonzero divisor");
        let lb = b[db].clone();
        let mut r = trim(a.to_vec());
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let lr = r[dr].clone();
            let shift = dr - db;
            let mut next: Vec<UniPoly> = r.iter().map(|c| c * &lb).collect();
            for (k, bc) in b.iter().enumerate() {
                next[k + shift] = &next[k + shift] - &(bc * &lr);
            }
            r = trim(next);
        }
        r
    }

    /// Greatest common divisor in `K[x][y]` via primitive remainder sequences.
    pub fn gcd(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
        let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
        if a.is_empty() {
            return normalize(b);
        }
        if b.is_empty() {
            return normalize(a);
        }
        let cont = content(&a).gcd(&content(&b));
        let (mut p, mut q) = (primitive(&a), primitive(&b));
        if degree(&p) < degree(&q) {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_empty() {
            if degree(&q) == Some(0) {
                p = vec![UniPoly::constant(Scalar::one())];
                break;
            }
            let r = prem(&p, &q);
            p = q;
            q = if r.is_empty() { r } else { primitive(&r) };
        }
        let g: Vec<UniPoly> = p.iter().map(|c| c * &cont).collect();
        normalize(g)
    }

    /// Makes the leading coefficient (in y, then in x) monic.
    fn normalize(p: Vec<UniPoly>) -> Vec<UniPoly> {
        let p = trim(p);
        match p.last() {
            None => p,
            Some(l) => {
                let s = l.lead().inv();
                p.iter().map(|c| c.scale(&s)).collect()
            }
        }
    }

    /// Sylvester resultant in `y`, as a polynomial in `x`.
    pub fn resultant(a: &[UniPoly], b: &[UniPoly]) -> UniPoly {
        let (m, n) = match (degree(a), degree(b)) {
            (Some(m), Some(n)) => (m, n),
            _ => return UniPoly::zero(),
        };
        if m == 0 {
            return a[0].pow(n as u32);
        }
        if n == 0 {
            return b[0].pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![UniPoly::zero(); size]; size];
        for r in 0..n {
            for (k, c) in a.iter().enumerate() {
                mat[r][r + m - k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in b.iter().enumerate() {
                mat[n + r][r + n - k] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// Fraction-free determinant over `K[x]`.
    pub fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
        let n = m.len();
        if n == 0 {
            return UniPoly::constant(Scalar::one());
        }
        let mut sign = Scalar::one();
        let mut prev = UniPoly::constant(Scalar::one());
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return UniPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev).expect("Bareiss step divides");
                }
            }
            prev = m[k][k].clone();
        }
        m[n - 1][n - 1].scale(&sign)
    }
}

/// Bivariate gcd (normalized so the graded-lex leading coefficient is 1).
pub fn bivariate_gcd(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    let g = BivariatePoly::from_y_coeffs(&ypoly::gcd(&a.y_coeffs(), &b.y_coeffs()));
    match g.leading() {
        Some((_, c)) => g.scale(&c.inv()),
        None => g,
    }
}

/// `n!/(k!(n-k)!)` as a scalar.
pub fn binomial(n: u32, k: u32) -> Scalar {
    let mut r = BigRational::one();
    for i in 0..k {
        r = r * BigRational::from_integer(BigInt::from(n - i)) / BigRational::from_integer(BigInt::from(i + 1));
    }
    Scalar::rational(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bp(t: &[(u32, u32, i64, i64)]) -> BivariatePoly {
        BivariatePoly::from_int_terms(t)
    }

    #[test]
    fn prints_in_graded_lex_order() {
        let p = bp(&[(0, 0, -1, 1), (1, 0, 1, 1), (0, 2, 3, 4), (1, 1, -2, 1), (2, 0, 1, 1)]);
        assert_eq!(p.to_string(), "x^2 - 2*x*y + 3/4*y^2 + x - 1");
        assert_eq!(BivariatePoly::zero().to_string(), "0");
    }

    #[test]
    fn univariate_gcd_and_square_free() {
        // (t-1)^2 (t+2)
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.square_free(), UniPoly::from_ints(&[-2, 1, 1]));
        let q = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(p.gcd(&q), q);
    }

    #[test]
    fn bivariate_gcd_finds_common_factor() {
        // x(3-6x+2y) and y(3+2y-6x)
        let f = bp(&[(0, 0, 3, 1), (1, 0, -6, 1), (0, 1, 2, 1)]);
        let p = &BivariatePoly::x() * &f;
        let q = &BivariatePoly::y() * &f;
        let g = bivariate_gcd(&p, &q);
        assert!(f.exact_div(&g).is_some() && g.exact_div(&f).is_some());
        let g1 = bivariate_gcd(&BivariatePoly::x(), &BivariatePoly::y());
        assert!(g1.is_constant());
    }

    #[test]
    fn resultant_eliminates_y() {
        // y - x and y + x - 2 meet at x = 1
        let a = bp(&[(0, 1, 1, 1), (1, 0, -1, 1)]);
        let b = bp(&[(0, 1, 1, 1), (1, 0, 1, 1), (0, 0, -2, 1)]);
        let r = ypoly::resultant(&a.y_coeffs(), &b.y_coeffs());
        assert_eq!(r.monic(), UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn translate_and_compose() {
        let p = bp(&[(2, 0, 2, 1), (1, 0, -4, 1), (0, 0, 2, 1)]);
        let shifted = p.translate(&Scalar::one(), &Scalar::zero());
        assert_eq!(shifted, bp(&[(2, 0, 2, 1)]));
    }

    fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
        prop::collection::vec((0u32..3, 0u32..3, -9i64..=9, 1i64..=5), 1..6)
            .prop_map(|t| BivariatePoly::from_int_terms(&t))
    }

    proptest! {
        #[test]
        fn product_divides_back(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            let (quot, rem) = prod.divrem(&q);
            prop_assert!(rem.is_zero());
            prop_assert_eq!(quot, p);
        }

        #[test]
        fn division_identity(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let (quot, rem) = p.divrem(&q);
            prop_assert_eq!(&(&quot * &q) + &rem, p);
        }
    }
}
