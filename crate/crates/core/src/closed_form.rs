//! Explicit recurrence coefficients, residue data `R_n`, `r_n`, and the ladder
//! functions `A_n`, `B_n` for both families.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oracle::RecurrenceTable;
use crate::ratfun::RationalFunction;
use crate::scalar::{int, ExactScalar, QContext};
use crate::weight::WeightFamily;

/// `(alpha_n, beta_n)` from the closed forms; `beta_0 = 0`.
pub fn recurrence_closed(family: &WeightFamily, ctx: &QContext, n: usize) -> Result<(ExactScalar, ExactScalar)> {
    let a = family.exact_alpha()?;
    let n = n as i64;
    let one = ExactScalar::one();
    let (alpha_n, beta_n) = match family {
        WeightFamily::StieltjesWigert => {
            // q^{-n-1/2} (q^{-n-1} + q^{-n} - 1)
            let alpha_n = ctx.power(-2 * n - 1) * (ctx.q_pow(-n - 1) + ctx.q_pow(-n) - &one);
            let beta_n = ctx.q_pow(-4 * n) - ctx.q_pow(-3 * n);
            (alpha_n, beta_n)
        }
        WeightFamily::QLaguerre { .. } => {
            let alpha_n = ctx.q_pow(-2 * n - 1 - a) * (&one + ctx.q() - ctx.q_pow(n + 1) - ctx.q_pow(n + a + 1));
            let beta_n = ctx.q_pow(-4 * n - 2 * a + 1) * (&one - ctx.q_pow(n)) * (&one - ctx.q_pow(n + a));
            (alpha_n, beta_n)
        }
    };
    Ok((alpha_n, beta_n))
}

/// q-Laguerre `p_1(n)` from `(1-q) p_1(n) = -q + (1 + q^{-alpha}) q^{1-n} - q^{1-2n-alpha}`.
pub fn p1_closed(family: &WeightFamily, ctx: &QContext, n: usize) -> Result<ExactScalar> {
    let WeightFamily::QLaguerre { .. } = family else {
        return Err(Error::ExactAlpha("p1 closed form is q-Laguerre only".into()));
    };
    let a = family.exact_alpha()?;
    let n = n as i64;
    let q = ctx.q();
    let value = -q.clone() + (ExactScalar::one() + ctx.q_pow(-a)) * ctx.q_pow(1 - n) - ctx.q_pow(1 - 2 * n - a);
    Ok(value / ctx.one_minus_q())
}

/// Recurrence table assembled from the closed forms for `0 <= n <= N`; `p_1(n)` is
/// read off the monic polynomials those coefficients generate.
pub fn closed_table(family: &WeightFamily, ctx: &QContext, n_max: usize) -> Result<RecurrenceTable> {
    let mut alpha = Vec::with_capacity(n_max + 1);
    let mut beta = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let (a, b) = recurrence_closed(family, ctx, n)?;
        alpha.push(a);
        beta.push(b);
    }
    Ok(RecurrenceTable::from_coefficients(alpha, beta))
}

/// Residue data `R_0..=R_N`, `r_0..=r_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueData {
    pub family: WeightFamily,
    pub big_r: Vec<ExactScalar>,
    pub small_r: Vec<ExactScalar>,
}

impl ResidueData {
    pub fn len_n(&self) -> usize {
        self.big_r.len() - 1
    }

    /// `S_n = R_0 + ... + R_n`.
    pub fn partial_sum(&self, n: usize) -> ExactScalar {
        self.big_r[..=n].iter().cloned().sum()
    }
}

/// Stieltjes-Wigert: `R_n = q^n/(1-q)`, `r_n = (1 - q^{-n}) / ((1-q) sqrt(q))`.
///
/// q-Laguerre: `r` from `r_{n+1} = q r_n - q^n alpha_n - 1`, `r_0 = 0`; then
/// `R_n = -(r_{n+1} + r_n + (1 - q^{-alpha})/(1-q)) / alpha_n` from the residue at `x = 0`.
pub fn residues_closed(family: &WeightFamily, ctx: &QContext, n_max: usize) -> Result<ResidueData> {
    let a = family.exact_alpha()?;
    let one_minus_q = ctx.one_minus_q();
    let (big_r, small_r) = match family {
        WeightFamily::StieltjesWigert => {
            let big_r = (0..=n_max as i64).map(|n| ctx.q_pow(n) / &one_minus_q).collect();
            let denom = &one_minus_q * ctx.sqrt_q();
            let small_r = (0..=n_max as i64)
                .map(|n| (ExactScalar::one() - ctx.q_pow(-n)) / &denom)
                .collect();
            (big_r, small_r)
        }
        WeightFamily::QLaguerre { .. } => {
            let alphas: Vec<ExactScalar> = (0..=n_max)
                .map(|n| recurrence_closed(family, ctx, n).map(|(al, _)| al))
                .collect::<Result<_>>()?;
            let mut small_r = vec![ExactScalar::zero()];
            for n in 0..=n_max {
                let next = ctx.q() * &small_r[n] - ctx.q_pow(n as i64) * &alphas[n] - int(1);
                small_r.push(next);
            }
            let shift = (ExactScalar::one() - ctx.q_pow(-a)) / &one_minus_q;
            let big_r = (0..=n_max)
                .map(|n| {
                    assert!(!alphas[n].is_zero(), "alpha_n vanishes");
                    -(&small_r[n + 1] + &small_r[n] + &shift) / &alphas[n]
                })
                .collect();
            small_r.truncate(n_max + 1);
            (big_r, small_r)
        }
    };
    Ok(ResidueData {
        family: family.clone(),
        big_r,
        small_r,
    })
}

/// `A_n`, `B_n` for one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderPair {
    pub n: usize,
    pub a: RationalFunction,
    pub b: RationalFunction,
}

/// Assembles
/// - SW: `A_n = R_n/x^2`, `B_n = r_n/x^2 - [n]_q/x`;
/// - qLag: `A_n = R_n/x - q^n/((1-q)(x+1))`, `B_n = r_n/x - q^{n-1} p_1(n)/(x+1)`.
pub fn ladder_pair(
    family: &WeightFamily,
    ctx: &QContext,
    n: usize,
    residues: &ResidueData,
    p1: &ExactScalar,
) -> LadderPair {
    let zero = ExactScalar::zero();
    let minus_one = int(-1);
    let big = &residues.big_r[n];
    let small = &residues.small_r[n];
    let ni = n as i64;
    let (a, b) = match family {
        WeightFamily::StieltjesWigert => {
            let a = RationalFunction::pole(big.clone(), &zero, 2);
            let b = &RationalFunction::pole(small.clone(), &zero, 2)
                + &RationalFunction::pole(-ctx.q_integer(ni), &zero, 1);
            (a, b)
        }
        WeightFamily::QLaguerre { .. } => {
            let a = &RationalFunction::pole(big.clone(), &zero, 1)
                + &RationalFunction::pole(-(ctx.q_pow(ni) / ctx.one_minus_q()), &minus_one, 1);
            let b = &RationalFunction::pole(small.clone(), &zero, 1)
                + &RationalFunction::pole(-(ctx.q_pow(ni - 1) * p1), &minus_one, 1);
            (a, b)
        }
    };
    LadderPair { n, a, b }
}
