//! Dense univariate polynomials over exact rationals, with the q-difference operators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{format_exact, ExactScalar, QContext};

/// Coefficients in ascending degree; the zero polynomial has no coefficients and
/// no trailing zero is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<ExactScalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(ExactScalar::one(), 1)
    }

    pub fn monomial(c: ExactScalar, degree: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x - a`.
    pub fn linear_root(a: &ExactScalar) -> Self {
        Self::new(vec![-a.clone(), ExactScalar::one()])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> ExactScalar {
        self.coeffs.last().cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Multiplicity of the root at zero (the zero polynomial reports 0).
    pub fn order_at_zero(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs.iter().rev().fold(ExactScalar::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// `f(c x)`.
    pub fn dilate(&self, c: &ExactScalar) -> Self {
        let mut pow = ExactScalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// `(D_q f)(x) = (f(x) - f(qx)) / ((1 - q) x)`: `x^k` maps to `[k]_q x^{k-1}`.
    pub fn dq(&self, ctx: &QContext) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ctx.q_integer(k as i64))
                .collect(),
        )
    }

    /// `D_{1/q} f`: `x^k` maps to `q^{1-k} [k]_q x^{k-1}`.
    pub fn dq_inverse(&self, ctx: &QContext) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ctx.q_pow(1 - k as i64) * ctx.q_integer(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n < d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![ExactScalar::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = !(mag.is_one() && k > 0);
            if show_coeff {
                write!(f, "{}", format_exact(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| int(c)).collect())
    }

    fn quarter() -> QContext {
        QContext::new(ratio(1, 2)).unwrap()
    }

    #[test]
    fn canonical_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn dq_examples() {
        let ctx = quarter();
        assert!(p(&[5]).dq(&ctx).is_zero());
        assert_eq!(p(&[0, 0, 1]).dq(&ctx), Polynomial::monomial(ratio(5, 4), 1));
        let f = p(&[0, -2, 0, 1]);
        assert_eq!(f.dq(&ctx), Polynomial::new(vec![int(-2), int(0), ratio(21, 16)]));
    }

    #[test]
    fn dq_inverse_examples() {
        let ctx = quarter();
        assert_eq!(p(&[0, 1]).dq_inverse(&ctx), p(&[1]));
        assert_eq!(p(&[0, 0, 1]).dq_inverse(&ctx), p(&[0, 5]));
        assert!(p(&[7]).dq_inverse(&ctx).is_zero());
    }

    #[test]
    fn dq_matches_difference_quotient() {
        let ctx = quarter();
        let f = p(&[3, -1, 4, 1, -5]);
        let x = ratio(7, 3);
        let q = ctx.q();
        let direct = (f.eval(&x) - f.eval(&(&x * q))) / (&x - &x * q);
        assert_eq!(f.dq(&ctx).eval(&x), direct);
        let qinv = q.recip();
        let direct_inv = (f.eval(&x) - f.eval(&(&x * &qinv))) / (&x - &x * &qinv);
        assert_eq!(f.dq_inverse(&ctx).eval(&x), direct_inv);
    }

    #[test]
    fn dilate_examples() {
        let ctx = quarter();
        let f = p(&[1, 0, 1]);
        assert_eq!(f.dilate(ctx.q()), Polynomial::new(vec![int(1), int(0), ratio(1, 16)]));
        assert_eq!(f.dilate(&int(1)), f);
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (quot, rem) = b.div_rem(&a);
        assert_eq!(&(&quot * &a) + &rem, b);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1024, -160, 1]).to_string(), "x^2 - 160x + 1024");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..=max_deg + 1)
            .prop_map(|cs| Polynomial::new(cs.into_iter().map(|(a, b)| ratio(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn dq_is_linear(f in arb_poly(8), g in arb_poly(8), a in -9i64..9, b in 1i64..9) {
            let ctx = QContext::new(ratio(2, 3)).unwrap();
            let (ca, cb) = (ratio(a, b), ratio(b, 7));
            let lhs = (&f.scale(&ca) + &g.scale(&cb)).dq(&ctx);
            let rhs = &f.dq(&ctx).scale(&ca) + &g.dq(&ctx).scale(&cb);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dq_product_rule(f in arb_poly(6), g in arb_poly(6)) {
            let ctx = QContext::new(ratio(1, 2)).unwrap();
            let lhs = (&f * &g).dq(&ctx);
            let rhs = &(&f.dq(&ctx) * &g) + &(&f.dilate(ctx.q()) * &g.dq(&ctx));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dq_inverse_coefficientwise(f in arb_poly(8)) {
            let ctx = QContext::new(ratio(3, 5)).unwrap();
            let g = f.dq_inverse(&ctx);
            for k in 1..f.coeffs().len() {
                let expected = f.coeff(k) * ctx.q_pow(1 - k as i64) * ctx.q_integer(k as i64);
                prop_assert_eq!(g.coeff(k - 1), expected);
            }
        }

        #[test]
        fn dq_lowers_degree_of_monic(tail in arb_poly(6), extra in 1usize..4) {
            let ctx = QContext::new(ratio(1, 3)).unwrap();
            let n = tail.degree().map_or(0, |d| d + 1) + extra;
            let monic = &Polynomial::monomial(int(1), n) + &tail;
            let d = monic.dq(&ctx);
            prop_assert_eq!(d.degree(), Some(n - 1));
            prop_assert_eq!(d.leading(), ctx.q_integer(n as i64));
        }
    }
}
