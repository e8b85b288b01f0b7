//! First-order linear difference equations `x_{n+1} = a_n x_n + b_n`.
//!
//! Each integrating-factor equation from the derivations is normalized to this forward
//! form when it is built; the label records the equation and the variable it solves for.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{ExactScalar, QContext};

type Step = Box<dyn Fn(usize) -> (ExactScalar, ExactScalar) + Send + Sync>;

pub struct FirstOrderRecurrence {
    pub label: String,
    pub initial: ExactScalar,
    step: Step,
}

impl fmt::Debug for FirstOrderRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FirstOrderRecurrence")
            .field("label", &self.label)
            .field("initial", &self.initial)
            .finish_non_exhaustive()
    }
}

impl FirstOrderRecurrence {
    pub fn new(
        label: impl Into<String>,
        initial: ExactScalar,
        step: impl Fn(usize) -> (ExactScalar, ExactScalar) + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            initial,
            step: Box::new(step),
        }
    }

    /// `(a_n, b_n)`.
    pub fn coefficients(&self, n: usize) -> (ExactScalar, ExactScalar) {
        let (a, b) = (self.step)(n);
        assert!(!a.is_zero(), "{}: a_{n} = 0", self.label);
        (a, b)
    }

    /// `R_n` from `q R_n - R_{n-1} = -(1+q) q^{n-1}`, `R_0 = 1/(1-q)` (Stieltjes-Wigert).
    pub fn sw_big_r(ctx: &QContext) -> Self {
        let c = ctx.clone();
        Self::new(
            "(3.6) q R_n - R_{n-1} = -(1+q) q^{n-1}, solved for R_{n+1}",
            ctx.one_minus_q().recip(),
            move |n| {
                let q_inv = c.q().recip();
                let b = -(ExactScalar::one() + c.q()) * c.q_pow(n as i64 - 1);
                (q_inv, b)
            },
        )
    }

    /// `r_n` from `r_n - q r_{n+1} = q^{-1/2}`, `r_0 = 0` (Stieltjes-Wigert).
    pub fn sw_small_r(ctx: &QContext) -> Self {
        let c = ctx.clone();
        Self::new(
            "(3.9) r_n - q r_{n+1} = q^{-1/2}, solved for r_{n+1}",
            ExactScalar::zero(),
            move |_| {
                let q_inv = c.q().recip();
                let b = -(c.power(-1) * &q_inv);
                (q_inv, b)
            },
        )
    }

    /// `y_n = p_1(n) q^{2n-2}` from
    /// `p_1(n+1) q^{2n} - p_1(n) q^{2n-2} = (1+q) q^{2n-1} - (1 + q^{-alpha}) q^{n-1}`, `y_0 = 0`.
    pub fn ql_scaled_p1(ctx: &QContext, alpha: i64) -> Self {
        let c = ctx.clone();
        Self::new("(4.10) in y_n = p_1(n) q^{2n-2}", ExactScalar::zero(), move |n| {
            let n = n as i64;
            let b = (ExactScalar::one() + c.q()) * c.q_pow(2 * n - 1)
                - (ExactScalar::one() + c.q_pow(-alpha)) * c.q_pow(n - 1);
            (ExactScalar::one(), b)
        })
    }

    /// `beta_n` from `beta_{n+1} q^{2n+1} - beta_n q^{2n-1} = (1-q) q^{-1-alpha} alpha_n`,
    /// `beta_0 = 0`, with the supplied `alpha_n` sequence.
    pub fn ql_beta(ctx: &QContext, alpha: i64, alphas: Vec<ExactScalar>) -> Self {
        let c = ctx.clone();
        Self::new(
            "(4.15) beta_{n+1} q^{2n+1} - beta_n q^{2n-1} = (1-q) q^{-1-alpha} alpha_n, solved for beta_{n+1}",
            ExactScalar::zero(),
            move |n| {
                let ni = n as i64;
                let a = c.q_pow(-2);
                let b = c.one_minus_q() * c.q_pow(-1 - alpha) * &alphas[n] * c.q_pow(-2 * ni - 1);
                (a, b)
            },
        )
    }

    /// `r_n` from `r_{n+1} - q r_n = -q^n alpha_n - 1`, `r_0 = 0` (q-Laguerre).
    pub fn ql_small_r(ctx: &QContext, alphas: Vec<ExactScalar>) -> Self {
        let c = ctx.clone();
        Self::new(
            "(4.9) r_{n+1} - q r_n = -q^n alpha_n - 1",
            ExactScalar::zero(),
            move |n| {
                let b = -(c.q_pow(n as i64) * &alphas[n]) - ExactScalar::one();
                (c.q().clone(), b)
            },
        )
    }

    /// `R_n` from the printed `q R_{n+1} - R_n = q^{n+1} - q^n`, `R_0 = 1/(1-q)`.
    /// Its solution disagrees with the ladder identities; kept to exhibit that.
    pub fn ql_big_r_printed(ctx: &QContext) -> Self {
        let c = ctx.clone();
        Self::new(
            "(4.13) q R_{n+1} - R_n = q^{n+1} - q^n, solved for R_{n+1}",
            ctx.one_minus_q().recip(),
            move |n| {
                let n = n as i64;
                let q_inv = c.q().recip();
                let b = (c.q_pow(n + 1) - c.q_pow(n)) * &q_inv;
                (q_inv, b)
            },
        )
    }
}

/// `x_0 ..= x_N`.
pub fn solve_forward(rec: &FirstOrderRecurrence, n_max: usize) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(rec.initial.clone());
    for n in 0..n_max {
        let (a, b) = rec.coefficients(n);
        let next = a * &out[n] + b;
        out.push(next);
    }
    out
}

/// `sum_{j<n} seq[j]`.
pub fn telescope_sum(seq: &[ExactScalar], n: usize) -> ExactScalar {
    assert!(n <= seq.len(), "telescope_sum past the end of the sequence");
    seq[..n].iter().cloned().sum()
}

/// Entry 0 checks the initial value; entry `n >= 1` checks the step `n-1 -> n`.
pub fn verify_solution(rec: &FirstOrderRecurrence, candidate: &[ExactScalar], n_max: usize) -> Vec<bool> {
    assert!(candidate.len() > n_max, "candidate must cover 0..=N");
    let mut report = Vec::with_capacity(n_max + 1);
    report.push(candidate[0] == rec.initial);
    for n in 0..n_max {
        let (a, b) = rec.coefficients(n);
        report.push(candidate[n + 1] == a * &candidate[n] + b);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn quarter() -> QContext {
        QContext::new(ratio(1, 2)).unwrap()
    }

    #[test]
    fn sw_examples() {
        let ctx = quarter();
        let big = solve_forward(&FirstOrderRecurrence::sw_big_r(&ctx), 2);
        assert_eq!(big, vec![ratio(4, 3), ratio(1, 3), ratio(1, 12)]);
        let small = solve_forward(&FirstOrderRecurrence::sw_small_r(&ctx), 2);
        assert_eq!(small, vec![int(0), int(-8), int(-40)]);
    }

    #[test]
    fn ql_beta_example() {
        let ctx = quarter();
        let rec = FirstOrderRecurrence::ql_beta(&ctx, 1, vec![int(15), int(300)]);
        assert_eq!(solve_forward(&rec, 1), vec![int(0), int(720)]);
    }

    #[test]
    fn printed_big_r_recursion() {
        let ctx = quarter();
        let rec = FirstOrderRecurrence::ql_big_r_printed(&ctx);
        assert_eq!(solve_forward(&rec, 1)[1], ratio(7, 3));
        let report = verify_solution(&rec, &[ratio(4, 3), ratio(1, 3)], 1);
        assert_eq!(report, vec![true, false]);
    }

    #[test]
    fn telescoping() {
        assert_eq!(telescope_sum(&[], 0), int(0));
        assert_eq!(telescope_sum(&[int(8), int(152), int(7)], 2), int(160));
        assert_eq!(telescope_sum(&[int(15), int(300)], 2), int(315));
    }

    #[test]
    fn solutions_verify_against_their_own_recurrence() {
        let ctx = QContext::new(ratio(2, 3)).unwrap();
        let rec = FirstOrderRecurrence::ql_scaled_p1(&ctx, 2);
        let sol = solve_forward(&rec, 10);
        assert!(verify_solution(&rec, &sol, 10).into_iter().all(|ok| ok));
        let mut bad = sol.clone();
        bad[4] += int(1);
        let report = verify_solution(&rec, &bad, 10);
        assert_eq!(report.iter().filter(|ok| !**ok).count(), 2);
        assert!(!report[4] && !report[5]);
    }
}
