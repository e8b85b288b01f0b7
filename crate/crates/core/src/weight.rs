//! The two weight families, their potentials `u = -D_{1/q} w / w`, exact moment ratios
//! and numeric evaluation.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::float::{FloatCtx, HighPrecFloat};
use crate::poly::Polynomial;
use crate::ratfun::RationalFunction;
use crate::scalar::{format_exact, int, ExactScalar, QContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightFamily {
    /// `w(x) = exp((ln x)^2 / (2 ln q))` on `(0, inf)`, normalizing constant fixed to 1.
    StieltjesWigert,
    /// `w(x) = x^alpha / (-x; q)_inf` on `(0, inf)`.
    QLaguerre { alpha: ExactScalar },
}

impl WeightFamily {
    /// q-Laguerre on the exact path: integer `alpha >= 1`.
    pub fn q_laguerre(alpha: i64) -> Result<Self> {
        let family = Self::QLaguerre { alpha: int(alpha) };
        family.exact_alpha()?;
        Ok(family)
    }

    /// q-Laguerre for numeric work only: any rational `alpha > -1`.
    pub fn q_laguerre_numeric(alpha: ExactScalar) -> Result<Self> {
        if alpha <= int(-1) {
            return Err(Error::AlphaRange(format_exact(&alpha)));
        }
        Ok(Self::QLaguerre { alpha })
    }

    /// Checks the family is usable for the exact ladder machinery and returns the
    /// integer `alpha` (0 for Stieltjes-Wigert, which has none).
    pub fn exact_alpha(&self) -> Result<i64> {
        match self {
            Self::StieltjesWigert => Ok(0),
            Self::QLaguerre { alpha } => {
                let n = integer_alpha(alpha)?;
                if n < 1 {
                    return Err(Error::ExactAlpha(format_exact(alpha)));
                }
                Ok(n)
            }
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            Self::StieltjesWigert => "sw",
            Self::QLaguerre { .. } => "qlaguerre",
        }
    }

    pub fn alpha(&self) -> Option<&ExactScalar> {
        match self {
            Self::StieltjesWigert => None,
            Self::QLaguerre { alpha } => Some(alpha),
        }
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StieltjesWigert => write!(f, "Stieltjes-Wigert"),
            Self::QLaguerre { alpha } => write!(f, "q-Laguerre(alpha={})", format_exact(alpha)),
        }
    }
}

fn integer_alpha(alpha: &ExactScalar) -> Result<i64> {
    if !alpha.is_integer() {
        return Err(Error::ExactAlpha(format_exact(alpha)));
    }
    i64::try_from(alpha.to_integer()).map_err(|_| Error::ExactAlpha(format_exact(alpha)))
}

/// The potential `u(x)` as a canonical rational function.
///
/// q-Laguerre needs an integer `alpha >= 0` here so that `q^{-alpha}` stays rational.
pub fn potential(family: &WeightFamily, ctx: &QContext) -> Result<RationalFunction> {
    let q = ctx.q();
    let prefactor = q / ctx.one_minus_q();
    let zero = ExactScalar::zero();
    match family {
        WeightFamily::StieltjesWigert => {
            // (q/(1-q)) (1/x - sqrt(q)/x^2)
            let a = RationalFunction::pole(prefactor.clone(), &zero, 1);
            let b = RationalFunction::pole(-(&prefactor * ctx.sqrt_q()), &zero, 2);
            Ok(&a + &b)
        }
        WeightFamily::QLaguerre { alpha } => {
            let a = integer_alpha(alpha)?;
            if a < 0 {
                return Err(Error::ExactAlpha(format_exact(alpha)));
            }
            let q_neg_alpha = ctx.q_pow(-a);
            let at_zero = &prefactor * (ExactScalar::one() - &q_neg_alpha);
            let at_minus_q = &prefactor * &q_neg_alpha;
            Ok(&RationalFunction::pole(at_zero, &zero, 1) + &RationalFunction::pole(at_minus_q, &-q.clone(), 1))
        }
    }
}

/// `m_k / m_0` for `k >= -1`.
pub fn moment_ratio(family: &WeightFamily, ctx: &QContext, k: i64) -> Result<ExactScalar> {
    assert!(k >= -1, "moment index must be >= -1");
    match family {
        // Gaussian integral after x = e^t: m_k/m_0 = q^{-k(k+2)/2} = s^{-k(k+2)}
        WeightFamily::StieltjesWigert => Ok(ctx.power(-k * (k + 2))),
        WeightFamily::QLaguerre { alpha } => {
            let a = integer_alpha(alpha)?;
            if a < 0 {
                return Err(Error::ExactAlpha(format_exact(alpha)));
            }
            if k == -1 {
                if a <= 0 {
                    return Err(Error::DivergentMoment {
                        k,
                        alpha: format_exact(alpha),
                    });
                }
                return Ok((ctx.q_pow(-a) - ExactScalar::one()).recip());
            }
            // I(b + 1) / I(b) = q^{-b} - 1 with m_k = I(alpha + k + 1)
            Ok((1..=k)
                .map(|j| ctx.q_pow(-(a + j)) - ExactScalar::one())
                .fold(ExactScalar::one(), |acc, f| acc * f))
        }
    }
}

/// Moment ratios `m_k / m_0`, tabulated once for `0 <= k <= kmax` (plus `k = -1` when
/// it converges) and read-only afterwards.
#[derive(Clone, Debug)]
pub struct MomentLadder {
    family: WeightFamily,
    ratios: Vec<ExactScalar>,
    inverse_first: Option<ExactScalar>,
}

impl MomentLadder {
    pub fn new(family: &WeightFamily, ctx: &QContext, kmax: usize) -> Result<Self> {
        let mut ratios = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax as i64 {
            ratios.push(moment_ratio(family, ctx, k)?);
        }
        let inverse_first = moment_ratio(family, ctx, -1).ok();
        Ok(Self {
            family: family.clone(),
            ratios,
            inverse_first,
        })
    }

    /// A ladder over caller-supplied ratios `m_0/m_0 ..= m_kmax/m_0` (no `k = -1` entry).
    pub fn from_ratios(family: WeightFamily, ratios: Vec<ExactScalar>) -> Self {
        assert!(!ratios.is_empty());
        Self {
            family,
            ratios,
            inverse_first: None,
        }
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    pub fn kmax(&self) -> usize {
        self.ratios.len() - 1
    }

    pub fn ratio(&self, k: i64) -> Result<&ExactScalar> {
        if k == -1 {
            return self.inverse_first.as_ref().ok_or_else(|| Error::DivergentMoment {
                k,
                alpha: self.family.alpha().map(format_exact).unwrap_or_default(),
            });
        }
        self.ratios.get(k as usize).ok_or(Error::OutOfRange {
            n: k as usize,
            max: self.kmax(),
        })
    }

    /// The normalized moment functional `L[p] = sum_k c_k m_k / m_0`.
    pub fn pairing(&self, p: &Polynomial) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * self.ratio(k as i64)?;
            }
        }
        Ok(acc)
    }
}

/// Pointwise weight evaluation at working precision, with the family constants
/// (`q`, `ln q`, `alpha`) converted once.
pub struct NumericWeight<'a> {
    family: WeightFamily,
    fctx: &'a FloatCtx,
    q: HighPrecFloat,
    ln_q: HighPrecFloat,
    two_ln_q: HighPrecFloat,
    alpha: Option<HighPrecFloat>,
}

impl<'a> NumericWeight<'a> {
    pub fn new(family: &WeightFamily, ctx: &QContext, fctx: &'a FloatCtx) -> Self {
        let q = fctx.from_exact(ctx.q());
        let ln_q = fctx.ln(&q);
        let two_ln_q = &ln_q + &ln_q;
        let alpha = family.alpha().map(|a| fctx.from_exact(a));
        Self {
            family: family.clone(),
            fctx,
            q,
            ln_q,
            two_ln_q,
            alpha,
        }
    }

    pub fn q(&self) -> &HighPrecFloat {
        &self.q
    }

    pub fn ln_q(&self) -> &HighPrecFloat {
        &self.ln_q
    }

    /// `w(x)` for `x > 0`.
    pub fn eval(&self, x: &HighPrecFloat) -> HighPrecFloat {
        let t = self.fctx.ln(x);
        self.eval_log(&t, x)
    }

    /// `w(x)` given both `t = ln x` and `x = e^t`, so the quadrature can avoid
    /// recomputing either.
    pub fn eval_log(&self, t: &HighPrecFloat, x: &HighPrecFloat) -> HighPrecFloat {
        match &self.family {
            WeightFamily::StieltjesWigert => self.fctx.exp(&(&(t * t) / &self.two_ln_q)),
            WeightFamily::QLaguerre { alpha } => {
                let power = if alpha.is_zero() {
                    self.fctx.one()
                } else if alpha.is_integer() {
                    self.fctx
                        .powi(x, i64::try_from(alpha.to_integer()).expect("moderate alpha"))
                } else {
                    let a = self.alpha.as_ref().expect("q-Laguerre carries alpha");
                    self.fctx.exp(&(a * t))
                };
                let (product, _) = self.fctx.q_pochhammer_inf(&-x, &self.q);
                &power / &product
            }
        }
    }
}

/// One-shot numeric weight evaluation; prefer [`NumericWeight`] in loops.
pub fn weight_eval_numeric(
    family: &WeightFamily,
    ctx: &QContext,
    x: &HighPrecFloat,
    fctx: &FloatCtx,
) -> Result<HighPrecFloat> {
    if !x.is_finite() || x.is_zero() || x.is_negative() {
        return Err(Error::OutsideDomain(x.to_sci(12)));
    }
    Ok(NumericWeight::new(family, ctx, fctx).eval(x))
}

/// Rejects `alpha` values that are not strictly positive exact rationals where a
/// `w(y)/y` moment is needed.
pub fn require_positive_alpha(family: &WeightFamily) -> Result<()> {
    match family.alpha() {
        Some(a) if !a.is_positive() => Err(Error::DivergentMoment {
            k: -1,
            alpha: format_exact(a),
        }),
        _ => Ok(()),
    }
}
