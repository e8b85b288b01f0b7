//! Univariate rational functions over exact rationals, held in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::ExactScalar;

/// `numerator / denominator` with a monic denominator coprime to the numerator.
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_scalar(ExactScalar::one())
    }

    pub fn from_scalar(c: ExactScalar) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// `c / (x - a)^order`.
    pub fn pole(c: ExactScalar, a: &ExactScalar, order: usize) -> Self {
        Self::canonical(Polynomial::constant(c), Polynomial::linear_root(a).pow(order))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplicity of `a` as a root of the canonical denominator.
    pub fn pole_order_at(&self, a: &ExactScalar) -> usize {
        let root = Polynomial::linear_root(a);
        let mut d = self.den.clone();
        let mut order = 0;
        loop {
            let (quot, rem) = d.div_rem(&root);
            if !rem.is_zero() || d.degree() == Some(0) {
                return order;
            }
            order += 1;
            d = quot;
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::canonical(&self.num * p, self.den.clone())
    }

    /// `f(c x)`, re-canonicalized.
    pub fn dilate(&self, c: &ExactScalar) -> Self {
        Self::canonical(self.num.dilate(c), self.den.dilate(c))
    }

    /// Exact value at `x`; `None` at a pole.
    pub fn eval(&self, x: &ExactScalar) -> Option<ExactScalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Returns the constant value if this function is a constant.
    pub fn as_constant(&self) -> Option<ExactScalar> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(ExactScalar::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

/// Decides `lhs == rhs` as rational functions by cross-multiplying the canonical forms
/// and comparing coefficients exactly.
pub fn identity_equal(lhs: &RationalFunction, rhs: &RationalFunction) -> bool {
    &lhs.num * &rhs.den == &rhs.num * &lhs.den
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn over_x(c: ExactScalar, a: i64) -> RationalFunction {
        RationalFunction::pole(c, &int(a), 1)
    }

    #[test]
    fn partial_fractions() {
        let lhs = &over_x(int(1), 0) - &over_x(int(1), -1);
        let rhs =
            RationalFunction::new(Polynomial::one(), &Polynomial::x() * &Polynomial::linear_root(&int(-1))).unwrap();
        assert!(identity_equal(&lhs, &rhs));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancels_common_factor() {
        let x_over_x = RationalFunction::new(Polynomial::x(), Polynomial::x()).unwrap();
        assert!(identity_equal(&x_over_x, &RationalFunction::one()));
        assert_eq!(x_over_x, RationalFunction::one());
    }

    #[test]
    fn distinguishes_dilation() {
        let q = ratio(1, 4);
        let a = over_x(int(1), 0);
        let b = a.dilate(&q);
        assert!(!identity_equal(&a, &b));
        assert_eq!(b, over_x(int(4), 0));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RationalFunction::new(Polynomial::constant(int(3)), Polynomial::new(vec![int(2), int(4)])).unwrap();
        assert!(f.denominator().is_monic());
        assert_eq!(f.eval(&int(0)), Some(ratio(3, 2)));
        assert_eq!(f.eval(&ratio(-1, 2)), None);
    }

    #[test]
    fn pole_orders() {
        let f = &RationalFunction::pole(int(1), &int(0), 2) + &over_x(int(5), -1);
        assert_eq!(f.pole_order_at(&int(0)), 2);
        assert_eq!(f.pole_order_at(&int(-1)), 1);
        assert_eq!(f.pole_order_at(&int(3)), 0);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(Polynomial::one(), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }
}
