//! Exact scalars and the base parameter `q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always held in lowest terms with a positive denominator.
pub type ExactScalar = BigRational;

/// Powers `s^k` with `|k|` up to this bound are tabulated when a context is built.
pub const DEFAULT_POWER_BOUND: i64 = 160;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/r"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let bad = || Error::ParseRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Renders an exact value as `"numerator/denominator"` (integers print without a denominator).
pub fn format_exact(value: &ExactScalar) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// The base `q = s^2`, carried through its exact square root `s` with `0 < s < 1`.
///
/// Powers of `s` in `[-bound, bound]` are computed once at construction, so a context
/// can be shared read-only; powers outside the table are computed on demand.
#[derive(Clone)]
pub struct QContext {
    s: ExactScalar,
    q: ExactScalar,
    bound: i64,
    powers: Vec<ExactScalar>,
}

impl QContext {
    pub fn new(s: ExactScalar) -> Result<Self> {
        Self::with_power_bound(s, DEFAULT_POWER_BOUND)
    }

    pub fn with_power_bound(s: ExactScalar, bound: i64) -> Result<Self> {
        if !s.is_positive() || s >= ExactScalar::one() {
            return Err(Error::InvalidBase(format_exact(&s)));
        }
        let bound = bound.max(0);
        let inv = s.recip();
        let mut neg = Vec::with_capacity(bound as usize);
        let mut pos = Vec::with_capacity(bound as usize + 1);
        let mut acc = ExactScalar::one();
        pos.push(acc.clone());
        for _ in 0..bound {
            acc *= &s;
            pos.push(acc.clone());
        }
        acc = ExactScalar::one();
        for _ in 0..bound {
            acc *= &inv;
            neg.push(acc.clone());
        }
        neg.reverse();
        neg.extend(pos);
        let q = &s * &s;
        Ok(Self {
            s,
            q,
            bound,
            powers: neg,
        })
    }

    pub fn from_sqrt_q_str(text: &str) -> Result<Self> {
        Self::new(parse_rational(text)?)
    }

    /// `s = sqrt(q)`.
    pub fn sqrt_q(&self) -> &ExactScalar {
        &self.s
    }

    pub fn q(&self) -> &ExactScalar {
        &self.q
    }

    /// `s^k = q^{k/2}` for any integer `k`.
    pub fn power(&self, k: i64) -> ExactScalar {
        if k.abs() <= self.bound {
            return self.powers[(k + self.bound) as usize].clone();
        }
        let base = if k < 0 { self.s.recip() } else { self.s.clone() };
        Pow::pow(base, k.unsigned_abs())
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> ExactScalar {
        self.power(2 * k)
    }

    /// `1 - q`.
    pub fn one_minus_q(&self) -> ExactScalar {
        ExactScalar::one() - &self.q
    }

    /// The q-integer `[n]_q = (1 - q^n) / (1 - q)`.
    pub fn q_integer(&self, n: i64) -> ExactScalar {
        (ExactScalar::one() - self.q_pow(n)) / self.one_minus_q()
    }

    /// Finite q-Pochhammer symbol `(z; q)_n = prod_{k<n} (1 - z q^k)`.
    pub fn q_pochhammer(&self, z: &ExactScalar, n: usize) -> ExactScalar {
        let mut acc = ExactScalar::one();
        let mut zq = z.clone();
        for _ in 0..n {
            acc *= ExactScalar::one() - &zq;
            zq *= &self.q;
        }
        acc
    }
}

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QContext")
            .field("sqrt_q", &format_exact(&self.s))
            .field("q", &format_exact(&self.q))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter() -> QContext {
        QContext::new(ratio(1, 2)).unwrap()
    }

    #[test]
    fn q_integer_values() {
        let ctx = quarter();
        assert_eq!(ctx.q_integer(0), int(0));
        assert_eq!(ctx.q_integer(1), int(1));
        assert_eq!(ctx.q_integer(3), ratio(21, 16));
    }

    #[test]
    fn powers_inside_and_outside_table() {
        let ctx = QContext::with_power_bound(ratio(2, 3), 4).unwrap();
        assert_eq!(ctx.power(3), ratio(8, 27));
        assert_eq!(ctx.power(-2), ratio(9, 4));
        assert_eq!(ctx.power(7), ratio(128, 2187));
        assert_eq!(ctx.power(-5), ratio(243, 32));
        assert_eq!(ctx.q_pow(-1), ratio(9, 4));
    }

    #[test]
    fn rejects_base_outside_unit_interval() {
        assert!(QContext::new(ratio(3, 2)).is_err());
        assert!(QContext::new(int(1)).is_err());
        assert!(QContext::new(int(0)).is_err());
        assert!(QContext::new(ratio(-1, 2)).is_err());
    }

    #[test]
    fn pochhammer_finite() {
        let ctx = quarter();
        assert_eq!(ctx.q_pochhammer(&ratio(7, 3), 0), int(1));
        assert_eq!(ctx.q_pochhammer(ctx.q(), 2), ratio(45, 64));
        for n in 0..8 {
            let z = ratio(3, 5);
            let next = ctx.q_pochhammer(&z, n) * (int(1) - &z * ctx.q_pow(n as i64));
            assert_eq!(ctx.q_pochhammer(&z, n + 1), next);
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_exact(&ratio(-13, 192)), "-13/192");
        assert_eq!(format_exact(&int(720)), "720");
    }
}
