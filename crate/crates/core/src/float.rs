//! Arbitrary-precision floating point for the numeric layer.
//!
//! A thin newtype over `astro_float::BigFloat` so integrands read as ordinary arithmetic.
//! Binary operations round to the larger of the operands' precisions; transcendental
//! functions go through a [`FloatCtx`], which owns the constant cache and the working
//! precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra bits below the working precision at which infinite products are cut off.
pub const PRODUCT_GUARD_BITS: usize = 8;

pub const MIN_PRECISION: usize = 64;

#[derive(Clone)]
pub struct HighPrecFloat(BigFloat);

impl HighPrecFloat {
    pub fn precision(&self) -> usize {
        self.0.precision().unwrap_or(MIN_PRECISION)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Nearest `f64` (saturating to zero or infinity outside its range).
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Scientific notation with `digits` significant digits, usable far outside the `f64` range.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let text = self.to_string();
        let (mantissa, exponent) = match text.split_once('e') {
            Some((m, e)) => (m, e),
            None => (text.as_str(), "+0"),
        };
        let (sign, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("", mantissa),
        };
        let (lead, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let keep = digits.saturating_sub(1).min(frac.len());
        let exponent: i64 = exponent.parse().unwrap_or(0);
        if keep == 0 {
            format!("{sign}{lead}e{exponent}")
        } else {
            format!("{sign}{lead}.{}e{exponent}", &frac[..keep])
        }
    }

    fn prec2(&self, other: &Self) -> usize {
        self.precision().max(other.precision())
    }
}

impl PartialEq for HighPrecFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for HighPrecFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for &HighPrecFloat {
    type Output = HighPrecFloat;
    fn add(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        HighPrecFloat(self.0.add(&rhs.0, self.prec2(rhs), RM))
    }
}

impl Sub for &HighPrecFloat {
    type Output = HighPrecFloat;
    fn sub(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        HighPrecFloat(self.0.sub(&rhs.0, self.prec2(rhs), RM))
    }
}

impl Mul for &HighPrecFloat {
    type Output = HighPrecFloat;
    fn mul(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        HighPrecFloat(self.0.mul(&rhs.0, self.prec2(rhs), RM))
    }
}

impl Div for &HighPrecFloat {
    type Output = HighPrecFloat;
    fn div(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        HighPrecFloat(self.0.div(&rhs.0, self.prec2(rhs), RM))
    }
}

impl Neg for &HighPrecFloat {
    type Output = HighPrecFloat;
    fn neg(self) -> HighPrecFloat {
        HighPrecFloat(BigFloat::neg(&self.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HighPrecFloat {
            type Output = HighPrecFloat;
            fn $m(self, rhs: HighPrecFloat) -> HighPrecFloat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&HighPrecFloat> for HighPrecFloat {
            type Output = HighPrecFloat;
            fn $m(self, rhs: &HighPrecFloat) -> HighPrecFloat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for HighPrecFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for HighPrecFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(24))
    }
}

/// Working precision plus the transcendental-constant cache.
///
/// Not `Sync`: each thread or run owns its own context.
pub struct FloatCtx {
    precision: usize,
    consts: RefCell<Consts>,
}

impl FloatCtx {
    pub fn new(precision: usize) -> Result<Self> {
        if precision < MIN_PRECISION {
            return Err(Error::PrecisionTooLow {
                bits: precision,
                floor: MIN_PRECISION,
            });
        }
        let consts = Consts::new().expect("constant cache allocation");
        Ok(Self {
            precision,
            consts: RefCell::new(consts),
        })
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn from_i64(&self, v: i64) -> HighPrecFloat {
        HighPrecFloat(BigFloat::from_i64(v, self.precision))
    }

    pub fn from_f64(&self, v: f64) -> HighPrecFloat {
        HighPrecFloat(BigFloat::from_f64(v, self.precision))
    }

    pub fn zero(&self) -> HighPrecFloat {
        self.from_i64(0)
    }

    pub fn one(&self) -> HighPrecFloat {
        self.from_i64(1)
    }

    /// Correctly rounded up to the division of the two rounded integer parts.
    pub fn from_exact(&self, v: &ExactScalar) -> HighPrecFloat {
        let parse = |n: &num_bigint::BigInt| {
            let mut text = n.abs().to_str_radix(16);
            if n.is_negative() {
                text.insert(0, '-');
            }
            let mut cc = self.consts.borrow_mut();
            BigFloat::parse(&text, Radix::Hex, self.precision + 64, RM, &mut cc)
        };
        let num = parse(v.numer());
        let den = parse(v.denom());
        HighPrecFloat(num.div(&den, self.precision, RM))
    }

    /// `2^{-bits}`.
    pub fn pow2_neg(&self, bits: usize) -> HighPrecFloat {
        let two = BigFloat::from_u64(2, self.precision);
        HighPrecFloat(two.powi(bits, self.precision, RM).reciprocal(self.precision, RM))
    }

    /// Machine epsilon of the working precision, `2^{1-p}`.
    pub fn epsilon(&self) -> HighPrecFloat {
        self.pow2_neg(self.precision - 1)
    }

    pub fn exp(&self, x: &HighPrecFloat) -> HighPrecFloat {
        let mut cc = self.consts.borrow_mut();
        HighPrecFloat(x.0.exp(self.precision, RM, &mut cc))
    }

    pub fn ln(&self, x: &HighPrecFloat) -> HighPrecFloat {
        let mut cc = self.consts.borrow_mut();
        HighPrecFloat(x.0.ln(self.precision, RM, &mut cc))
    }

    pub fn sqrt(&self, x: &HighPrecFloat) -> HighPrecFloat {
        HighPrecFloat(x.0.sqrt(self.precision, RM))
    }

    pub fn pi(&self) -> HighPrecFloat {
        let mut cc = self.consts.borrow_mut();
        HighPrecFloat(cc.pi(self.precision, RM))
    }

    pub fn powi(&self, x: &HighPrecFloat, n: i64) -> HighPrecFloat {
        let p = x.0.powi(n.unsigned_abs() as usize, self.precision, RM);
        if n < 0 {
            HighPrecFloat(p.reciprocal(self.precision, RM))
        } else {
            HighPrecFloat(p)
        }
    }

    /// `x^y` for `x > 0`.
    pub fn powf(&self, x: &HighPrecFloat, y: &HighPrecFloat) -> HighPrecFloat {
        self.exp(&(y * &self.ln(x)))
    }

    /// `x^e` for an exact exponent; integer exponents avoid the logarithm.
    pub fn pow_exact(&self, x: &HighPrecFloat, e: &ExactScalar) -> HighPrecFloat {
        if e.is_integer() {
            if let Ok(n) = i64::try_from(e.to_integer()) {
                return self.powi(x, n);
            }
        }
        self.powf(x, &self.from_exact(e))
    }

    /// Infinite q-Pochhammer `(z; q)_inf`, truncated at the first `K` with
    /// `|z| q^K < 2^{-(p + guard)}`. Returns the product and `K`.
    pub fn q_pochhammer_inf(&self, z: &HighPrecFloat, q: &HighPrecFloat) -> (HighPrecFloat, usize) {
        let cutoff = self.pow2_neg(self.precision + PRODUCT_GUARD_BITS);
        let one = self.one();
        let mut acc = one.clone();
        let mut term = z.clone();
        let mut k = 0;
        while term.abs() >= cutoff {
            acc = &acc * &(&one - &term);
            term = &term * q;
            k += 1;
        }
        (acc, k)
    }
}
