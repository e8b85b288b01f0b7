//! Exact verification of the ladder identities and residue systems.
//!
//! Every check reduces to an equality of canonical rational functions (or scalars) and is
//! recorded as a [`ReportEntry`]. Entries tagged [`Expectation::DocumentedDiscrepancy`]
//! are printed equations known to be inconsistent with the rest; they are expected to fail,
//! and the suite fails if one of them holds.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::closed_form::{ladder_pair, p1_closed, recurrence_closed, residues_closed, LadderPair, ResidueData};
use crate::error::Result;
use crate::oracle::{cd_identity_checks, chebyshev_recurrence, generate_monic, OrthoBasis, RecurrenceTable};
use crate::poly::Polynomial;
use crate::ratfun::{identity_equal, RationalFunction};
use crate::recurrence::{solve_forward, telescope_sum, verify_solution, FirstOrderRecurrence};
use crate::scalar::{format_exact, int, ExactScalar, QContext};
use crate::weight::{potential, require_positive_alpha, MomentLadder, WeightFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    MustHold,
    DocumentedDiscrepancy,
}

/// One identity with both sides assembled.
#[derive(Clone, Debug)]
pub struct IdentityInstance {
    pub label: String,
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub expectation: Expectation,
}

impl IdentityInstance {
    pub fn must_hold(label: impl Into<String>, lhs: RationalFunction, rhs: RationalFunction) -> Self {
        Self {
            label: label.into(),
            lhs,
            rhs,
            expectation: Expectation::MustHold,
        }
    }

    pub fn scalar(label: impl Into<String>, lhs: ExactScalar, rhs: ExactScalar) -> Self {
        Self::must_hold(
            label,
            RationalFunction::from_scalar(lhs),
            RationalFunction::from_scalar(rhs),
        )
    }

    pub fn discrepancy(mut self) -> Self {
        self.expectation = Expectation::DocumentedDiscrepancy;
        self
    }

    pub fn holds(&self) -> bool {
        identity_equal(&self.lhs, &self.rhs)
    }

    /// `lhs - rhs` in canonical form.
    pub fn difference(&self) -> RationalFunction {
        &self.lhs - &self.rhs
    }

    pub fn evaluate(&self) -> ReportEntry {
        let passed = self.holds();
        let detail = if passed {
            String::new()
        } else {
            format!("lhs - rhs = {}", self.difference())
        };
        ReportEntry {
            label: self.label.clone(),
            passed,
            expectation: self.expectation,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    pub passed: bool,
    pub expectation: Expectation,
    pub detail: String,
}

impl ReportEntry {
    pub fn check(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            passed,
            expectation: Expectation::MustHold,
            detail: detail.into(),
        }
    }

    pub fn as_expected(&self) -> bool {
        match self.expectation {
            Expectation::MustHold => self.passed,
            Expectation::DocumentedDiscrepancy => !self.passed,
        }
    }

    pub fn outcome(&self) -> &'static str {
        match (self.expectation, self.passed) {
            (Expectation::MustHold, true) => "PASS",
            (Expectation::MustHold, false) => "FAIL",
            (Expectation::DocumentedDiscrepancy, false) => "failed as expected",
            (Expectation::DocumentedDiscrepancy, true) => "UNEXPECTED PASS",
        }
    }
}

impl fmt::Display for ReportEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.outcome())?;
        if !self.detail.is_empty() {
            write!(f, " [{}]", self.detail)?;
        }
        Ok(())
    }
}

/// `passed` counts MustHold entries that held, `expected_failures` DocumentedDiscrepancy
/// entries that failed, `failed` everything else.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub expected_failures: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: ReportEntry) {
        match (entry.expectation, entry.passed) {
            (Expectation::MustHold, true) => self.summary.passed += 1,
            (Expectation::DocumentedDiscrepancy, false) => self.summary.expected_failures += 1,
            _ => self.summary.failed += 1,
        }
        self.entries.push(entry);
    }

    pub fn push_instance(&mut self, instance: &IdentityInstance) {
        self.push(instance.evaluate());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for e in other.entries {
            self.push(e);
        }
    }

    /// Every MustHold held and every DocumentedDiscrepancy failed.
    pub fn success(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.as_expected())
    }

    pub fn find(&self, label: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// Everything the identities need, built once for `0 <= n <= N + 1` so that checks
/// reaching one index ahead still cover `n <= N`.
#[derive(Clone, Debug)]
pub struct LadderData {
    pub family: WeightFamily,
    pub ctx: QContext,
    pub n_max: usize,
    /// Oracle coefficients from the moments.
    pub table: RecurrenceTable,
    pub basis: OrthoBasis,
    pub residues: ResidueData,
    pub pairs: Vec<LadderPair>,
    pub u: RationalFunction,
    pub u_qx: RationalFunction,
    /// `a_prefix[n] = A_0 + ... + A_n`.
    pub a_prefix: Vec<RationalFunction>,
}

impl LadderData {
    pub fn build(family: &WeightFamily, ctx: &QContext, n_max: usize) -> Result<Self> {
        require_positive_alpha(family)?;
        let top = n_max + 1;
        let moments = MomentLadder::new(family, ctx, 2 * top + 1)?;
        let table = chebyshev_recurrence(&moments, top)?;
        let basis = generate_monic(&table, top);
        let residues = residues_closed(family, ctx, top)?;
        let pairs: Vec<LadderPair> = (0..=top)
            .map(|n| ladder_pair(family, ctx, n, &residues, &table.p1[n]))
            .collect();
        let u = potential(family, ctx)?;
        let u_qx = u.dilate(ctx.q());
        let mut a_prefix = Vec::with_capacity(top + 1);
        let mut acc = RationalFunction::zero();
        for p in &pairs {
            acc = &acc + &p.a;
            a_prefix.push(acc.clone());
        }
        Ok(Self {
            family: family.clone(),
            ctx: ctx.clone(),
            n_max,
            table,
            basis,
            residues,
            pairs,
            u,
            u_qx,
            a_prefix,
        })
    }

    fn is_sw(&self) -> bool {
        matches!(self.family, WeightFamily::StieltjesWigert)
    }

    fn a(&self, n: i64) -> RationalFunction {
        if n < 0 {
            RationalFunction::zero()
        } else {
            self.pairs[n as usize].a.clone()
        }
    }

    fn poly(&self, n: i64) -> RationalFunction {
        RationalFunction::from_poly(self.basis.get_signed(n))
    }

    /// `x (q - 1)` times the given function.
    fn x_q_minus_one(&self, f: &RationalFunction) -> RationalFunction {
        f.mul_poly(&Polynomial::monomial(self.ctx.q() - int(1), 1))
    }

    /// `c x - a`.
    fn linear(c: &ExactScalar, a: &ExactScalar) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::new(vec![-a.clone(), c.clone()]))
    }

    /// `A_n` with `R_n` replaced by `r`.
    fn a_with_residue(&self, n: usize, r: &ExactScalar) -> RationalFunction {
        let order = if self.is_sw() { 2 } else { 1 };
        let shift = r - &self.residues.big_r[n];
        &self.pairs[n].a + &RationalFunction::pole(shift, &ExactScalar::zero(), order)
    }
}

/// `D_q P_n = beta_n A_n P_{n-1} - B_n P_n`.
pub fn verify_lowering(data: &LadderData, n: usize) -> IdentityInstance {
    let ni = n as i64;
    let lhs = RationalFunction::from_poly(data.basis.get(n).dq(&data.ctx));
    let rhs =
        &(&data.pairs[n].a * &data.poly(ni - 1)).scale(&data.table.beta[n]) - &(&data.pairs[n].b * &data.poly(ni));
    IdentityInstance::must_hold(format!("(1.8) lowering n={n}"), lhs, rhs)
}

/// `D_q P_{n-1} + (x(q-1) sum_{j<n} A_j - u(qx) - B_n) P_{n-1} = -A_{n-1} P_n`, `n >= 1`.
pub fn verify_raising(data: &LadderData, n: usize) -> IdentityInstance {
    assert!(n >= 1, "the raising operator starts at n = 1");
    let prev = data.poly(n as i64 - 1);
    let dq = RationalFunction::from_poly(data.basis.get(n - 1).dq(&data.ctx));
    let coefficient = &(&data.x_q_minus_one(&data.a_prefix[n - 1]) - &data.u_qx) - &data.pairs[n].b;
    let lhs = &dq + &(&coefficient * &prev);
    let rhs = -&(&data.pairs[n - 1].a * &data.poly(n as i64));
    IdentityInstance::must_hold(format!("raising n={n}"), lhs, rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Supplementary {
    S1,
    S2,
}

/// S1: `B_{n+1} + B_n = (x - alpha_n) A_n + x(q-1) sum_{j<=n} A_j - u(qx)`;
/// S2: `1 + (x - alpha_n) B_{n+1} - (qx - alpha_n) B_n = beta_{n+1} A_{n+1} - beta_n A_{n-1}`.
pub fn verify_supplementary(data: &LadderData, n: usize, which: Supplementary) -> IdentityInstance {
    let alpha_n = &data.table.alpha[n];
    let one = ExactScalar::one();
    match which {
        Supplementary::S1 => {
            let lhs = &data.pairs[n + 1].b + &data.pairs[n].b;
            let rhs = &(&(&LadderData::linear(&one, alpha_n) * &data.pairs[n].a)
                + &data.x_q_minus_one(&data.a_prefix[n]))
                - &data.u_qx;
            IdentityInstance::must_hold(format!("(1.9) S1 n={n}"), lhs, rhs)
        }
        Supplementary::S2 => {
            let lhs = &(&RationalFunction::one() + &(&LadderData::linear(&one, alpha_n) * &data.pairs[n + 1].b))
                - &(&LadderData::linear(data.ctx.q(), alpha_n) * &data.pairs[n].b);
            let rhs =
                &data.pairs[n + 1].a.scale(&data.table.beta[n + 1]) - &data.a(n as i64 - 1).scale(&data.table.beta[n]);
            IdentityInstance::must_hold(format!("(1.10) S2 n={n}"), lhs, rhs)
        }
    }
}

/// Scalar residue equations for `n <= N`. The printed q-Laguerre relation between `R_n`
/// and `S_n` does not hold and is tagged as a documented discrepancy.
pub fn verify_residue_system(data: &LadderData) -> VerificationReport {
    let mut report = VerificationReport::new();
    let ctx = &data.ctx;
    let q = ctx.q();
    let one = ExactScalar::one();
    let omq = ctx.one_minus_q();
    let big = &data.residues.big_r;
    let small = &data.residues.small_r;
    let alpha = &data.table.alpha;
    let beta = &data.table.beta;
    let p1 = &data.table.p1;
    let big_r_prev = |n: usize| {
        if n == 0 {
            ExactScalar::zero()
        } else {
            big[n - 1].clone()
        }
    };
    let n_max = data.n_max;
    let add = |report: &mut VerificationReport, label: String, lhs: ExactScalar, rhs: ExactScalar| {
        report.push_instance(&IdentityInstance::scalar(label, lhs, rhs));
    };

    if data.is_sw() {
        let inv_sq = (ctx.sqrt_q() * &omq).recip();
        add(
            &mut report,
            "(3.5) R_0".into(),
            big[0].clone(),
            &inv_sq * ratio_m_minus_one(data),
        );
        for n in 0..=n_max {
            let ni = n as i64;
            let s_n = data.residues.partial_sum(n);
            add(
                &mut report,
                format!("(3.1) n={n}"),
                (ctx.q_pow(ni + 1) + ctx.q_pow(ni) - int(2)) / &omq,
                &big[n] + (q - &one) * &s_n - omq.recip(),
            );
            add(
                &mut report,
                format!("(3.2) n={n}"),
                &small[n + 1] + &small[n],
                -(&alpha[n] * &big[n]) + &inv_sq,
            );
            add(
                &mut report,
                format!("(3.3) n={n}"),
                ExactScalar::zero(),
                &alpha[n] * ctx.q_integer(ni + 1) - &alpha[n] * ctx.q_integer(ni) + &small[n + 1] - q * &small[n],
            );
            add(
                &mut report,
                format!("(3.4) n={n}"),
                &alpha[n] * (&small[n] - &small[n + 1]),
                &beta[n + 1] * &big[n + 1] - &beta[n] * big_r_prev(n),
            );
            add(
                &mut report,
                format!("(3.8) n={n}"),
                -(&alpha[n] * ctx.q_pow(ni)),
                &small[n + 1] - q * &small[n],
            );
            add(
                &mut report,
                format!("(3.9) n={n}"),
                &small[n] - q * &small[n + 1],
                ctx.sqrt_q().recip(),
            );
            if n >= 1 {
                add(
                    &mut report,
                    format!("(3.12) n={n}"),
                    &small[n] * &small[n] - &small[n] * &inv_sq,
                    &beta[n] * &big[n] * &big[n - 1],
                );
            }
        }
        return report;
    }

    let a = data.family.exact_alpha().expect("exact alpha checked at build");
    let q_na = ctx.q_pow(-a);
    add(
        &mut report,
        "R_0 moment ratio".into(),
        big[0].clone(),
        (&q_na - &one) / &omq * ratio_m_minus_one(data),
    );
    for n in 0..=n_max {
        let ni = n as i64;
        let s_n = data.residues.partial_sum(n);
        add(
            &mut report,
            format!("(4.4) n={n}"),
            &small[n + 1] + &small[n],
            -(&alpha[n] * &big[n]) - (&one - &q_na) / &omq,
        );
        add(
            &mut report,
            format!("(4.5) n={n}"),
            &p1[n + 1] * ctx.q_pow(ni) + &p1[n] * ctx.q_pow(ni - 1),
            -((&one + &alpha[n]) * ctx.q_pow(ni) / &omq) + ctx.q_integer(ni + 1) + &q_na / &omq,
        );
        let printed = IdentityInstance::scalar(
            "(4.6) documented discrepancy",
            &big[n] - ctx.q_pow(ni) / &omq + (q - &one) * &s_n - ctx.q_integer(ni + 1),
            ExactScalar::zero(),
        )
        .discrepancy();
        let mut entry = printed.evaluate();
        entry.detail = format!(
            "n={n}: lhs = {}, expected 0",
            format_exact(&printed.difference().as_constant().unwrap_or_default())
        );
        report.push(entry);
        add(
            &mut report,
            format!("(4.7) n={n}"),
            &alpha[n] * (&small[n] - &small[n + 1]),
            &beta[n + 1] * &big[n + 1] - &beta[n] * big_r_prev(n),
        );
        add(
            &mut report,
            format!("(4.8) n={n}"),
            -((&one + &alpha[n]) * ctx.q_pow(ni) * &p1[n + 1]) + (q + &alpha[n]) * ctx.q_pow(ni - 1) * &p1[n],
            (&beta[n + 1] * ctx.q_pow(ni + 1) - &beta[n] * ctx.q_pow(ni - 1)) / &omq,
        );
        add(
            &mut report,
            format!("(4.9) n={n}"),
            &small[n + 1] - q * &small[n],
            -(ctx.q_pow(ni) * &alpha[n]) - &one,
        );
        add(
            &mut report,
            format!("(4.10) n={n}"),
            &p1[n + 1] * ctx.q_pow(2 * ni) - &p1[n] * ctx.q_pow(2 * ni - 2),
            (&one + q) * ctx.q_pow(2 * ni - 1) - (&one + &q_na) * ctx.q_pow(ni - 1),
        );
        add(
            &mut report,
            format!("(4.14) n={n}"),
            -((&one + &alpha[n]) * ctx.q_pow(2 * ni) * &omq * &p1[n + 1])
                + (q + &alpha[n]) * ctx.q_pow(2 * ni - 1) * &omq * &p1[n],
            &beta[n + 1] * ctx.q_pow(2 * ni + 1) - &beta[n] * ctx.q_pow(2 * ni - 1),
        );
        add(
            &mut report,
            format!("(4.15) n={n}"),
            &beta[n + 1] * ctx.q_pow(2 * ni + 1) - &beta[n] * ctx.q_pow(2 * ni - 1),
            &omq * ctx.q_pow(-1 - a) * &alpha[n],
        );
        add(
            &mut report,
            format!("(4.16) n={n}"),
            &beta[n] * ctx.q_pow(2 * ni - 1),
            -(&omq * ctx.q_pow(-1 - a) * &p1[n]),
        );
    }
    report
}

fn ratio_m_minus_one(data: &LadderData) -> ExactScalar {
    crate::weight::moment_ratio(&data.family, &data.ctx, -1).expect("m_{-1} exists for alpha >= 1")
}

/// `R_1` as implied by the lowering identity at `n = 1`, by S2 at `n = 0`, and by the
/// residue equation at `x = 0` of S1 at `n = 1`.
pub fn implied_r1(data: &LadderData) -> [Option<ExactScalar>; 3] {
    let solve = |build: &dyn Fn(&ExactScalar) -> RationalFunction| {
        let g = build(&ExactScalar::zero());
        let f = &build(&ExactScalar::one()) - &g;
        if f.is_zero() {
            return None;
        }
        g.checked_div(&f).ok()?.as_constant().map(|c| -c)
    };
    let lowering = solve(&|r| {
        let rhs = &(&data.a_with_residue(1, r) * &data.poly(0)).scale(&data.table.beta[1])
            - &(&data.pairs[1].b * &data.poly(1));
        &RationalFunction::from_poly(data.basis.get(1).dq(&data.ctx)) - &rhs
    });
    let s2 = solve(&|r| {
        let one = ExactScalar::one();
        let alpha0 = &data.table.alpha[0];
        let lhs = &(&RationalFunction::one() + &(&LadderData::linear(&one, alpha0) * &data.pairs[1].b))
            - &(&LadderData::linear(data.ctx.q(), alpha0) * &data.pairs[0].b);
        &lhs - &data.a_with_residue(1, r).scale(&data.table.beta[1])
    });
    let small = &data.residues.small_r;
    let omq = data.ctx.one_minus_q();
    let alpha1 = &data.table.alpha[1];
    let residue = if data.is_sw() {
        let inv_sq = (data.ctx.sqrt_q() * &omq).recip();
        (inv_sq - &small[2] - &small[1]) / alpha1
    } else {
        let a = data.family.exact_alpha().expect("exact alpha");
        let shift = (ExactScalar::one() - data.ctx.q_pow(-a)) / &omq;
        -(&small[2] + &small[1] + shift) / alpha1
    };
    [lowering, s2, Some(residue)]
}

pub fn consistency_triangle(data: &LadderData) -> ReportEntry {
    let residue_eq = if data.is_sw() { "(3.2)" } else { "(4.4)" };
    let label = format!("R_1 consistency: (1.8) n=1, (1.10) n=0, {residue_eq} n=1");
    let values = implied_r1(data);
    let show = |v: &Option<ExactScalar>| v.as_ref().map(format_exact).unwrap_or_else(|| "none".into());
    let detail = format!(
        "implied {}, {}, {}; system {}",
        show(&values[0]),
        show(&values[1]),
        show(&values[2]),
        format_exact(&data.residues.big_r[1])
    );
    let target = Some(data.residues.big_r[1].clone());
    let passed = values.iter().all(|v| *v == target);
    ReportEntry::check(label, passed, if passed { String::new() } else { detail })
}

/// Closed forms against the oracle and the forward difference-equation solutions.
fn verify_closed_forms(data: &LadderData) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let (fam, ctx, n_max) = (&data.family, &data.ctx, data.n_max);
    let (alpha_eq, beta_eq) = if data.is_sw() {
        ("(3.11)", "(3.13)")
    } else {
        ("(4.12)", "(4.17)")
    };
    let mut closed_alpha = Vec::with_capacity(n_max + 2);
    let mut closed_beta = Vec::with_capacity(n_max + 2);
    for n in 0..=n_max + 1 {
        let (a, b) = recurrence_closed(fam, ctx, n)?;
        closed_alpha.push(a);
        closed_beta.push(b);
    }
    for n in 0..=n_max {
        report.push_instance(&IdentityInstance::scalar(
            format!("{alpha_eq} alpha n={n}"),
            closed_alpha[n].clone(),
            data.table.alpha[n].clone(),
        ));
        report.push_instance(&IdentityInstance::scalar(
            format!("{beta_eq} beta n={n}"),
            closed_beta[n].clone(),
            data.table.beta[n].clone(),
        ));
        report.push_instance(&IdentityInstance::scalar(
            format!("(1.5) alpha = p1(n) - p1(n+1) n={n}"),
            data.table.alpha[n].clone(),
            &data.table.p1[n] - &data.table.p1[n + 1],
        ));
        report.push_instance(&IdentityInstance::scalar(
            format!("sum alpha_j = -p1(n) n={n}"),
            telescope_sum(&data.table.alpha, n),
            -data.table.p1[n].clone(),
        ));
    }

    if data.is_sw() {
        let big = solve_forward(&FirstOrderRecurrence::sw_big_r(ctx), n_max);
        let small = solve_forward(&FirstOrderRecurrence::sw_small_r(ctx), n_max);
        let mut solver = |label: &str, ok: bool| report.push(ReportEntry::check(label, ok, ""));
        solver(
            "(3.6) forward solution matches (3.7)",
            big[..] == data.residues.big_r[..=n_max],
        );
        solver(
            "(3.9) forward solution matches (3.10)",
            small[..] == data.residues.small_r[..=n_max],
        );
    } else {
        let a = fam.exact_alpha()?;
        for n in 0..=n_max {
            report.push_instance(&IdentityInstance::scalar(
                format!("(4.11) p1 n={n}"),
                p1_closed(fam, ctx, n)?,
                data.table.p1[n].clone(),
            ));
        }
        let scaled = solve_forward(&FirstOrderRecurrence::ql_scaled_p1(ctx, a), n_max);
        let p1_ok = (0..=n_max)
            .all(|n| &scaled[n] * ctx.q_pow(2 - 2 * n as i64) == p1_closed(fam, ctx, n).expect("q-Laguerre"));
        let beta = solve_forward(&FirstOrderRecurrence::ql_beta(ctx, a, closed_alpha.clone()), n_max);
        let small = solve_forward(&FirstOrderRecurrence::ql_small_r(ctx, closed_alpha.clone()), n_max);
        let mut solver = |label: &str, ok: bool| report.push(ReportEntry::check(label, ok, ""));
        solver("(4.10) forward solution matches (4.11)", p1_ok);
        solver(
            "(4.15) forward solution matches (4.17)",
            beta[..] == closed_beta[..=n_max],
        );
        solver(
            "(4.9) forward solution matches r_n",
            small[..] == data.residues.small_r[..=n_max],
        );

        let printed = FirstOrderRecurrence::ql_big_r_printed(ctx);
        let solved = solve_forward(&printed, n_max);
        let steps = verify_solution(&printed, &data.residues.big_r, n_max);
        for n in 1..=n_max {
            report.push(ReportEntry {
                label: "(4.13) documented discrepancy".into(),
                passed: steps[n],
                expectation: Expectation::DocumentedDiscrepancy,
                detail: format!(
                    "n={n}: forward solution R_{n} = {}, system R_{n} = {}",
                    format_exact(&solved[n]),
                    format_exact(&data.residues.big_r[n])
                ),
            });
        }
    }
    Ok(report)
}

/// Basis-level facts: Christoffel-Darboux, the leading coefficient of `P_j(y/q)`, and for
/// q-Laguerre the expansion of `P_n(qy)`.
fn verify_basis(data: &LadderData) -> VerificationReport {
    let mut report = VerificationReport::new();
    let ctx = &data.ctx;
    for (n, ok) in cd_identity_checks(&data.basis, &data.table, data.n_max)
        .into_iter()
        .enumerate()
        .skip(1)
    {
        report.push(ReportEntry::check(format!("(2.2) Christoffel-Darboux n={n}"), ok, ""));
    }
    let q_inv = ctx.q().recip();
    for j in 0..=data.n_max {
        let dilated = data.basis.get(j).dilate(&q_inv);
        report.push_instance(&IdentityInstance::scalar(
            format!("(2.3) P_j(y/q) leading coefficient j={j}"),
            dilated.leading(),
            ctx.q_pow(-(j as i64)),
        ));
    }
    if !data.is_sw() {
        for n in 1..=data.n_max {
            let ni = n as i64;
            let p = data.basis.get(n);
            let rest = &(&p.dilate(ctx.q()) - &p.scale(&ctx.q_pow(ni)))
                - &data
                    .basis
                    .get(n - 1)
                    .scale(&(&data.table.p1[n] * (ctx.q_pow(ni - 1) - ctx.q_pow(ni))));
            let ok = rest.degree().is_none_or(|d| d + 2 <= n);
            report.push(ReportEntry::check(format!("P_n(qy) expansion n={n}"), ok, ""));
        }
    }
    report
}

/// The full exact suite for `n <= N`, in a fixed order.
pub fn run_suite(family: &WeightFamily, ctx: &QContext, n_max: usize) -> Result<VerificationReport> {
    let data = LadderData::build(family, ctx, n_max)?;
    run_suite_on(&data)
}

pub fn run_suite_on(data: &LadderData) -> Result<VerificationReport> {
    let mut report = verify_closed_forms(data)?;
    for n in 0..=data.n_max {
        report.push_instance(&verify_lowering(data, n));
    }
    for n in 1..=data.n_max {
        report.push_instance(&verify_raising(data, n));
    }
    for n in 0..=data.n_max {
        report.push_instance(&verify_supplementary(data, n, Supplementary::S1));
        report.push_instance(&verify_supplementary(data, n, Supplementary::S2));
    }
    report.extend(verify_residue_system(data));
    if data.n_max >= 1 {
        report.push(consistency_triangle(data));
    }
    report.extend(verify_basis(data));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn quarter() -> QContext {
        QContext::new(ratio(1, 2)).unwrap()
    }

    fn ql1() -> WeightFamily {
        WeightFamily::q_laguerre(1).unwrap()
    }

    #[test]
    fn lowering_examples() {
        let data = LadderData::build(&WeightFamily::StieltjesWigert, &quarter(), 2).unwrap();
        let inst = verify_lowering(&data, 1);
        assert_eq!(inst.lhs, RationalFunction::one());
        assert!(inst.holds());
        assert!(verify_lowering(&data, 0).lhs.is_zero());
        assert!(verify_lowering(&data, 0).holds());
        let data = LadderData::build(&ql1(), &quarter(), 2).unwrap();
        assert!(verify_lowering(&data, 1).holds());
        assert!(verify_lowering(&data, 2).holds());
    }

    #[test]
    fn raising_examples() {
        let data = LadderData::build(&WeightFamily::StieltjesWigert, &quarter(), 2).unwrap();
        assert!(verify_raising(&data, 1).holds());
        let data = LadderData::build(&ql1(), &quarter(), 2).unwrap();
        assert!(verify_raising(&data, 1).holds());
        assert!(verify_raising(&data, 2).holds());
    }

    #[test]
    fn supplementary_examples() {
        let zero = int(0);
        let data = LadderData::build(&ql1(), &quarter(), 1).unwrap();
        let s1 = verify_supplementary(&data, 0, Supplementary::S1);
        let b1 = &RationalFunction::pole(int(-16), &zero, 1) + &RationalFunction::pole(int(15), &int(-1), 1);
        assert_eq!(s1.lhs, b1);
        assert!(s1.holds());
        let s2 = verify_supplementary(&data, 0, Supplementary::S2);
        let both = &RationalFunction::pole(int(240), &zero, 1) + &RationalFunction::pole(int(-240), &int(-1), 1);
        assert_eq!(s2.lhs, both);
        assert_eq!(s2.rhs, both);
        let data = LadderData::build(&WeightFamily::StieltjesWigert, &quarter(), 2).unwrap();
        for n in 0..=2 {
            assert!(verify_supplementary(&data, n, Supplementary::S1).holds());
            assert!(verify_supplementary(&data, n, Supplementary::S2).holds());
        }
    }

    #[test]
    fn tampered_pair_fails() {
        let mut data = LadderData::build(&WeightFamily::StieltjesWigert, &quarter(), 2).unwrap();
        data.pairs[1].a = data.pairs[1].a.scale(&int(2));
        assert!(!verify_lowering(&data, 1).holds());
        assert!(!verify_supplementary(&data, 0, Supplementary::S2).holds());
    }

    #[test]
    fn residue_examples() {
        let data = LadderData::build(&WeightFamily::StieltjesWigert, &quarter(), 2).unwrap();
        let report = verify_residue_system(&data);
        assert!(report.success(), "{:?}", report.unexpected().collect::<Vec<_>>());
        assert!(report.find("(3.2) n=1").unwrap().passed);

        let data = LadderData::build(&ql1(), &quarter(), 2).unwrap();
        let report = verify_residue_system(&data);
        assert!(report.success(), "{:?}", report.unexpected().collect::<Vec<_>>());
        assert!(report.find("(4.7) n=0").unwrap().passed);
        let printed: Vec<_> = report
            .entries
            .iter()
            .filter(|e| e.label == "(4.6) documented discrepancy")
            .collect();
        assert_eq!(printed.len(), 3);
        assert_eq!(printed[0].detail, "n=0: lhs = -2, expected 0");
        assert_eq!(printed[1].detail, "n=1: lhs = -5/2, expected 0");
        assert_eq!(
            printed[1].to_string(),
            "(4.6) documented discrepancy: failed as expected [n=1: lhs = -5/2, expected 0]"
        );
    }

    #[test]
    fn triangle_agrees() {
        for fam in [WeightFamily::StieltjesWigert, ql1()] {
            let data = LadderData::build(&fam, &quarter(), 2).unwrap();
            let values = implied_r1(&data);
            assert!(values.iter().all(|v| *v == Some(ratio(1, 3))), "{values:?}");
            assert!(consistency_triangle(&data).passed);
        }
    }

    #[test]
    fn suites_pass() {
        let sw = run_suite(&WeightFamily::StieltjesWigert, &quarter(), 8).unwrap();
        assert!(sw.success(), "{:?}", sw.unexpected().collect::<Vec<_>>());
        assert_eq!(sw.summary.expected_failures, 0);
        let ql = run_suite(&ql1(), &quarter(), 8).unwrap();
        assert!(ql.success(), "{:?}", ql.unexpected().collect::<Vec<_>>());
        // the R_n/S_n relation at n = 0..=8, the printed R recurrence at n = 1..=8
        assert_eq!(ql.summary.expected_failures, 17);
        let entry = ql.find("(4.13) documented discrepancy").unwrap();
        assert_eq!(entry.detail, "n=1: forward solution R_1 = 7/3, system R_1 = 1/3");
        let ql2 = run_suite(
            &WeightFamily::q_laguerre(2).unwrap(),
            &QContext::new(ratio(2, 3)).unwrap(),
            6,
        )
        .unwrap();
        assert!(ql2.success());
    }

    #[test]
    fn summary_counts() {
        let mut report = VerificationReport::new();
        report.push(ReportEntry::check("a", true, ""));
        report.push(ReportEntry::check("b", false, "x"));
        report.push(IdentityInstance::scalar("c", int(1), int(2)).discrepancy().evaluate());
        report.push(IdentityInstance::scalar("d", int(1), int(1)).discrepancy().evaluate());
        assert_eq!(
            report.summary,
            Summary {
                passed: 1,
                failed: 2,
                expected_failures: 1
            }
        );
        assert!(!report.success());
        assert_eq!(report.find("d").unwrap().outcome(), "UNEXPECTED PASS");
    }

    #[test]
    fn alpha_zero_rejected() {
        let fam = WeightFamily::QLaguerre { alpha: int(0) };
        assert!(LadderData::build(&fam, &quarter(), 2).is_err());
    }
}
