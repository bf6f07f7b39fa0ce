//! Gamma function in double precision.
//!
//! Non-integer arguments go through the Lanczos approximation from `statrs`;
//! positive integers up to 21 come from an exact factorial table.

const FACTORIALS: [f64; 21] = {
    let mut t = [1.0f64; 21];
    let mut i = 1;
    while i < 21 {
        t[i] = t[i - 1] * i as f64;
        i += 1;
    }
    t
};

/// Γ(x). Returns `inf`/NaN at the poles like the underlying approximation.
pub fn gamma(x: f64) -> f64 {
    if x.fract() == 0.0 && x >= 1.0 && x <= 21.0 {
        return FACTORIALS[x as usize - 1];
    }
    statrs::function::gamma::gamma(x)
}

/// 1/Γ(x), zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        return 0.0;
    }
    1.0 / gamma(x)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x.fract() == 0.0 && x >= 1.0 && x <= 21.0 {
        return FACTORIALS[x as usize - 1].ln();
    }
    statrs::function::gamma::ln_gamma(x)
}

/// Generalized binomial coefficient `binom(a, k)`.
pub fn binom(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a - i as f64) / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_are_exact() {
        assert_eq!(gamma(1.0), 1.0);
        assert_eq!(gamma(6.0), 120.0);
        assert_eq!(gamma(21.0), 2_432_902_008_176_640_000.0);
    }

    #[test]
    fn half_integers() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5) - sqrt_pi).abs() < 1e-14);
        assert!((gamma(1.5) - sqrt_pi / 2.0).abs() < 1e-14);
        assert!((gamma(-0.5) + 2.0 * sqrt_pi).abs() < 1e-13);
    }

    #[test]
    fn reciprocal_at_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(2.0) - 1.0).abs() < 1e-16);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(1.0, 2), 0.0);
        assert_eq!(binom(0.5, 1), 0.5);
        assert!((binom(0.5, 2) + 0.125).abs() < 1e-16);
        assert_eq!(binom(4.0, 2), 6.0);
    }
}
