//! Numeric checks of the integral statements: orthogonality, the `u`-moment identities,
//! the defining integrals of `A_n` and `B_n`, q-integration by parts, the q-shifted norm,
//! and the `I(a)` ratio behind `R_0`.
//!
//! Every quantity is normalized by the numerically integrated `int w`, so neither the
//! Stieltjes-Wigert constant nor `zeta_0` needs fixing.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{DeRule, NodeKey, NodePoint};
use crate::error::{Error, Result};
use crate::float::{FloatCtx, HighPrecFloat};
use crate::poly::Polynomial;
use crate::ratfun::RationalFunction;
use crate::scalar::{format_exact, int, ratio, ExactScalar, QContext};
use crate::verify::{LadderData, Summary};
use crate::weight::{moment_ratio, NumericWeight, WeightFamily};

pub const DEFAULT_PRECISION: usize = 256;
/// Floor for the numeric suite; below it the target tolerances are out of reach.
pub const MIN_SUITE_PRECISION: usize = 128;
pub const RELATIVE_TOLERANCE: f64 = 1e-20;
pub const ABSOLUTE_TOLERANCE: f64 = 1e-25;
/// Indices above this are not checked numerically.
pub const MAX_NUMERIC_N: usize = 4;
pub const LADDER_POINTS: [(i64, i64); 3] = [(1, 2), (1, 1), (3, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToleranceKind {
    Relative,
    Absolute,
}

/// One numeric comparison. `residual` is `None` when the integral itself failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCheck {
    pub label: String,
    pub target: String,
    pub computed: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub kind: ToleranceKind,
    pub passed: bool,
}

impl NumericCheck {
    fn from_values(
        label: String,
        target_text: String,
        target: &HighPrecFloat,
        computed: &HighPrecFloat,
        kind: ToleranceKind,
    ) -> Self {
        let (residual, tolerance) = match kind {
            ToleranceKind::Relative => ((&(computed - target) / target).abs(), RELATIVE_TOLERANCE),
            ToleranceKind::Absolute => ((computed - target).abs(), ABSOLUTE_TOLERANCE),
        };
        let residual = residual.to_f64();
        Self {
            label,
            target: target_text,
            computed: computed.to_sci(30),
            residual: Some(residual),
            tolerance,
            kind,
            passed: residual.is_finite() && residual <= tolerance,
        }
    }

    fn failed(label: String, target_text: String, kind: ToleranceKind, err: &Error) -> Self {
        let tolerance = match kind {
            ToleranceKind::Relative => RELATIVE_TOLERANCE,
            ToleranceKind::Absolute => ABSOLUTE_TOLERANCE,
        };
        Self {
            label,
            target: target_text,
            computed: err.to_string(),
            residual: None,
            tolerance,
            kind,
            passed: false,
        }
    }
}

impl std::fmt::Display for NumericCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let residual = self
            .residual
            .map(|r| format!("{r:.3e}"))
            .unwrap_or_else(|| "n/a".into());
        write!(
            f,
            "{}: target {}, computed {}, residual {}, tolerance {:e}: {}",
            self.label,
            self.target,
            self.computed,
            residual,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub checks: Vec<NumericCheck>,
    pub summary: Summary,
}

impl NumericReport {
    pub fn push(&mut self, check: NumericCheck) {
        if check.passed {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(check);
    }

    pub fn success(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn find(&self, label: &str) -> Option<&NumericCheck> {
        self.checks.iter().find(|c| c.label == label)
    }

    /// Grades every check again against other tolerances; residuals are kept.
    pub fn regrade(self, relative: f64, absolute: f64) -> Self {
        let mut out = Self::default();
        for mut c in self.checks {
            c.tolerance = match c.kind {
                ToleranceKind::Relative => relative,
                ToleranceKind::Absolute => absolute,
            };
            c.passed = c.residual.is_some_and(|r| r.is_finite() && r <= c.tolerance);
            out.push(c);
        }
        out
    }
}

/// Polynomial with coefficients rounded to the working precision.
struct FloatPoly(Vec<HighPrecFloat>);

impl FloatPoly {
    fn new(p: &Polynomial, fctx: &FloatCtx) -> Self {
        Self(p.coeffs().iter().map(|c| fctx.from_exact(c)).collect())
    }

    fn eval(&self, x: &HighPrecFloat, fctx: &FloatCtx) -> HighPrecFloat {
        let mut acc = fctx.zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

struct FloatRational {
    num: FloatPoly,
    den: FloatPoly,
}

impl FloatRational {
    fn new(r: &RationalFunction, fctx: &FloatCtx) -> Self {
        Self {
            num: FloatPoly::new(r.numerator(), fctx),
            den: FloatPoly::new(r.denominator(), fctx),
        }
    }

    fn eval(&self, x: &HighPrecFloat, fctx: &FloatCtx) -> HighPrecFloat {
        &self.num.eval(x, fctx) / &self.den.eval(x, fctx)
    }
}

/// Numeric checks for one family and base, sharing nodes, exact data and `int w`.
pub struct NumericChecker<'a> {
    family: WeightFamily,
    ctx: QContext,
    fctx: &'a FloatCtx,
    rule: DeRule<'a>,
    weight: NumericWeight<'a>,
    data: LadderData,
    mass: HighPrecFloat,
    /// `w(x)` and `w(x/q)` per node.
    cache: RefCell<HashMap<(NodeKey, bool), HighPrecFloat>>,
}

impl<'a> NumericChecker<'a> {
    /// Exact data is built for `n <= n_max` (with `P_{n_max + 1}` available).
    pub fn new(family: &WeightFamily, ctx: &QContext, fctx: &'a FloatCtx, n_max: usize) -> Result<Self> {
        let data = LadderData::build(family, ctx, n_max)?;
        let rule = DeRule::new(fctx);
        let weight = NumericWeight::new(family, ctx, fctx);
        let mut checker = Self {
            family: family.clone(),
            ctx: ctx.clone(),
            fctx,
            rule,
            weight,
            data,
            mass: fctx.one(),
            cache: RefCell::new(HashMap::new()),
        };
        checker.mass = checker.rule.integrate_points(&|p: &NodePoint<'_>| checker.w(p))?.value;
        Ok(checker)
    }

    fn w(&self, p: &NodePoint<'_>) -> HighPrecFloat {
        self.cached(p, false, || self.weight.eval_log(p.t, p.x))
    }

    /// `w(x/q)`.
    fn w_over_q(&self, p: &NodePoint<'_>, x_over_q: &HighPrecFloat) -> HighPrecFloat {
        self.cached(p, true, || self.weight.eval_log(&(p.t - self.weight.ln_q()), x_over_q))
    }

    fn cached(&self, p: &NodePoint<'_>, shifted: bool, eval: impl FnOnce() -> HighPrecFloat) -> HighPrecFloat {
        if let Some(v) = self.cache.borrow().get(&(p.key, shifted)) {
            return v.clone();
        }
        let v = eval();
        self.cache.borrow_mut().insert((p.key, shifted), v.clone());
        v
    }

    pub fn mass(&self) -> &HighPrecFloat {
        &self.mass
    }

    pub fn data(&self) -> &LadderData {
        &self.data
    }

    pub fn rule(&self) -> &DeRule<'a> {
        &self.rule
    }

    /// `int g(x) w(x) dx / int w`.
    fn weighted<G>(&self, g: G) -> Result<HighPrecFloat>
    where
        G: Fn(&HighPrecFloat, &HighPrecFloat) -> HighPrecFloat,
    {
        let r = self
            .rule
            .integrate_points(&|p: &NodePoint<'_>| &g(p.t, p.x) * &self.w(p))?;
        Ok(&r.value / &self.mass)
    }

    fn check_exact(
        &self,
        label: String,
        target: &ExactScalar,
        kind: ToleranceKind,
        computed: Result<HighPrecFloat>,
    ) -> NumericCheck {
        let text = format_exact(target);
        match computed {
            Ok(v) => NumericCheck::from_values(label, text, &self.fctx.from_exact(target), &v, kind),
            Err(e) => NumericCheck::failed(label, text, kind, &e),
        }
    }

    fn poly(&self, n: usize) -> FloatPoly {
        FloatPoly::new(self.data.basis.get(n), self.fctx)
    }

    /// `P_n(y/q)`.
    fn poly_over_q(&self, n: usize) -> FloatPoly {
        FloatPoly::new(&self.data.basis.get(n).dilate(&self.ctx.q().recip()), self.fctx)
    }

    fn zeta(&self, n: usize) -> &ExactScalar {
        &self.data.table.zeta_ratio[n]
    }

    /// Stieltjes-Wigert only: `int w` against `sqrt(2 pi (-ln q)) / sqrt(q)` (with `c = 1`).
    pub fn check_total_mass(&self) -> Option<NumericCheck> {
        if !matches!(self.family, WeightFamily::StieltjesWigert) {
            return None;
        }
        let f = self.fctx;
        let minus_ln_q = -self.weight.ln_q();
        let two_pi = &f.pi() * &f.from_i64(2);
        let target = &f.sqrt(&(&two_pi * &minus_ln_q)) / &f.from_exact(self.ctx.sqrt_q());
        Some(NumericCheck::from_values(
            "int w closed form".into(),
            target.to_sci(20),
            &target,
            &self.mass,
            ToleranceKind::Relative,
        ))
    }

    /// `int x^k w / int w` against the exact moment ratio.
    pub fn check_moment(&self, k: u32) -> NumericCheck {
        let target = moment_ratio(&self.family, &self.ctx, k as i64).expect("k >= 0");
        let computed = self.weighted(|_, x| self.fctx.powi(x, k as i64));
        self.check_exact(format!("moment k={k}"), &target, ToleranceKind::Relative, computed)
    }

    /// `int w P_m P_n / int w`: equal to `zeta_n / zeta_0` on the diagonal, otherwise 0
    /// measured against `sqrt(zeta_m zeta_n) / zeta_0`.
    pub fn check_orthogonality(&self, m: usize, n: usize) -> NumericCheck {
        let (pm, pn) = (self.poly(m), self.poly(n));
        let computed = self.weighted(|_, x| &pm.eval(x, self.fctx) * &pn.eval(x, self.fctx));
        let label = format!("(1.1) orthogonality m={m} n={n}");
        if m == n {
            return self.check_exact(label, self.zeta(n), ToleranceKind::Relative, computed);
        }
        let scale = self.fctx.sqrt(&self.fctx.from_exact(&(self.zeta(m) * self.zeta(n))));
        self.check_exact(
            label,
            &ExactScalar::zero(),
            ToleranceKind::Absolute,
            computed.map(|v| &v / &scale),
        )
    }

    /// `int u(y) P_n(y) P_n(y/q) w = 0` and
    /// `int u(y) P_{n+1}(y) P_n(y/q) w = q [n+1]_q zeta_n`, both divided by `zeta_n`.
    pub fn check_u_moment_identities(&self, n: usize) -> (NumericCheck, NumericCheck) {
        let f = self.fctx;
        let u = FloatRational::new(&self.data.u, f);
        let (pn, pn1, pnq) = (self.poly(n), self.poly(n + 1), self.poly_over_q(n));
        let zeta = f.from_exact(self.zeta(n));
        let first = self
            .weighted(|_, y| &(&u.eval(y, f) * &pn.eval(y, f)) * &pnq.eval(y, f))
            .map(|v| &v / &zeta);
        let second = self
            .weighted(|_, y| &(&u.eval(y, f) * &pn1.eval(y, f)) * &pnq.eval(y, f))
            .map(|v| &v / &zeta);
        let target = self.ctx.q() * self.ctx.q_integer(n as i64 + 1);
        (
            self.check_exact(
                format!("(1.15) n={n}"),
                &ExactScalar::zero(),
                ToleranceKind::Absolute,
                first,
            ),
            self.check_exact(format!("(1.16) n={n}"), &target, ToleranceKind::Relative, second),
        )
    }

    /// The divided-difference kernel `(u(q x0) - u(y)) / (q x0 - y)` as an exact rational
    /// function of `y`; the removable singularity at `y = q x0` cancels in canonical form.
    pub fn kernel(&self, x0: &ExactScalar) -> Result<RationalFunction> {
        if !x0.is_positive() {
            return Err(Error::OutsideDomain(format_exact(x0)));
        }
        let qx0 = self.ctx.q() * x0;
        let c = self
            .data
            .u
            .eval(&qx0)
            .ok_or_else(|| Error::OutsideDomain(format_exact(x0)))?;
        let top = &RationalFunction::from_scalar(c) - &self.data.u;
        let inv = RationalFunction::new(Polynomial::one(), Polynomial::new(vec![qx0, int(-1)]))?;
        Ok(&top * &inv)
    }

    /// Numeric `A_n(x0)` and, for `n >= 1`, `B_n(x0)` from their defining integrals, against
    /// the closed-form ladder functions.
    pub fn check_ladder_integral_defs(&self, n: usize, x0: &ExactScalar) -> Result<Vec<NumericCheck>> {
        let f = self.fctx;
        let kernel = FloatRational::new(&self.kernel(x0)?, f);
        let pn = self.poly(n);
        let x0_text = format_exact(x0);
        let mut out = Vec::with_capacity(2);
        let pnq = self.poly_over_q(n);
        let a = self
            .weighted(|_, y| &(&kernel.eval(y, f) * &pn.eval(y, f)) * &pnq.eval(y, f))
            .map(|v| &v / &f.from_exact(self.zeta(n)));
        let target_a = self.data.pairs[n].a.eval(x0).expect("x0 > 0 is not a pole");
        out.push(self.check_exact(
            format!("(1.6) A_n n={n} x0={x0_text}"),
            &target_a,
            ToleranceKind::Relative,
            a,
        ));
        if n >= 1 {
            let pmq = self.poly_over_q(n - 1);
            let b = self
                .weighted(|_, y| &(&kernel.eval(y, f) * &pn.eval(y, f)) * &pmq.eval(y, f))
                .map(|v| &v / &f.from_exact(self.zeta(n - 1)));
            let target_b = self.data.pairs[n].b.eval(x0).expect("x0 > 0 is not a pole");
            out.push(self.check_exact(
                format!("(1.7) B_n n={n} x0={x0_text}"),
                &target_b,
                ToleranceKind::Relative,
                b,
            ));
        }
        Ok(out)
    }

    /// `int f D_q g dx + (1/q) int g D_{1/q} f dx` with `f = fpoly w`, `g = gpoly`, divided
    /// by `int w`. Rejected when `int f g dx/x` diverges at the origin.
    pub fn check_integration_by_parts(&self, fpoly: &Polynomial, gpoly: &Polynomial) -> Result<NumericCheck> {
        parts_hypothesis(&self.family, fpoly, gpoly)?;
        let fx = self.fctx;
        let fp = FloatPoly::new(fpoly, fx);
        let gp = FloatPoly::new(gpoly, fx);
        let dg = FloatPoly::new(&gpoly.dq(&self.ctx), fx);
        let q_inv = fx.from_exact(&self.ctx.q().recip());
        let one_minus_q_inv = &fx.one() - &q_inv;
        let first = self
            .rule
            .integrate_points(&|p: &NodePoint<'_>| &(&fp.eval(p.x, fx) * &self.w(p)) * &dg.eval(p.x, fx))
            .map(|r| r.value);
        let second = self
            .rule
            .integrate_points(&|p: &NodePoint<'_>| {
                let x = p.x;
                let xq = x * &q_inv;
                let here = &fp.eval(x, fx) * &self.w(p);
                let there = &fp.eval(&xq, fx) * &self.w_over_q(p, &xq);
                let d = &(&here - &there) / &(x * &one_minus_q_inv);
                &(&gp.eval(x, fx) * &d) * &q_inv
            })
            .map(|r| r.value);
        let label = format!("(1.14) integration by parts f={fpoly} g={gpoly}");
        let computed = first.and_then(|a| second.map(|b| &(&a + &b) / &self.mass));
        Ok(self.check_exact(label, &ExactScalar::zero(), ToleranceKind::Absolute, computed))
    }

    /// `int P_j(y) P_j(y/q) w / (zeta_j / zeta_0 int w) = q^{-j}`.
    pub fn check_qshift_norm(&self, j: usize) -> NumericCheck {
        let f = self.fctx;
        let (pj, pjq) = (self.poly(j), self.poly_over_q(j));
        let computed = self
            .weighted(|_, y| &pj.eval(y, f) * &pjq.eval(y, f))
            .map(|v| &v / &f.from_exact(self.zeta(j)));
        self.check_exact(
            format!("(2.4) j={j}"),
            &self.ctx.q_pow(-(j as i64)),
            ToleranceKind::Relative,
            computed,
        )
    }

    /// Integration-by-parts pairs used by the suite.
    pub fn default_parts_pairs(&self) -> Vec<(Polynomial, Polynomial)> {
        let x = Polynomial::x();
        let one = Polynomial::one();
        let (p1, p2) = (self.data.basis.get(1).clone(), self.data.basis.get(2).clone());
        match self.family {
            WeightFamily::StieltjesWigert => vec![(one, x.clone()), (p1, p2), (x.pow(2), &x + &Polynomial::one())],
            WeightFamily::QLaguerre { .. } => vec![(one.clone(), x.pow(2)), (p1, p2), (x, one)],
        }
    }
}

/// `int f g dx/x` and `int f(x) g(qx) dx/x` must converge at the origin: for q-Laguerre
/// that is `alpha + ord_0 fpoly + ord_0 gpoly > 0`. This is what excludes `alpha = 0`
/// with `f(0) g(0) != 0`.
pub fn parts_hypothesis(family: &WeightFamily, fpoly: &Polynomial, gpoly: &Polynomial) -> Result<()> {
    if fpoly.is_zero() || gpoly.is_zero() {
        return Err(Error::IntegrabilityHypothesis("f and g must be nonzero".into()));
    }
    if let Some(alpha) = family.alpha() {
        let order = ExactScalar::from_integer((fpoly.order_at_zero() + gpoly.order_at_zero()).into());
        let exponent = alpha + order;
        if !exponent.is_positive() {
            return Err(Error::IntegrabilityHypothesis(format!(
                "alpha + ord f + ord g = {} <= 0, so int f g dx/x diverges at 0",
                format_exact(&exponent)
            )));
        }
    }
    Ok(())
}

/// `int y^a w~ / int y^{a-1} w~ = q^{-a} - 1` with `w~ = 1/(-y; q)_inf`, for non-integer
/// `a > 0`. When `2a` is an integer the target is exact, `(sqrt q)^{-2a} - 1`.
pub fn check_i_ratio(ctx: &QContext, a: &ExactScalar, rule: &DeRule<'_>) -> Result<NumericCheck> {
    if a.is_integer() {
        return Err(Error::IntegerExponent(format_exact(a)));
    }
    if !a.is_positive() {
        return Err(Error::IntegrabilityHypothesis(format!(
            "I(a - 1) diverges for a = {} <= 0",
            format_exact(a)
        )));
    }
    let fctx = rule.float_ctx();
    let tilde = WeightFamily::QLaguerre {
        alpha: ExactScalar::zero(),
    };
    let weight = NumericWeight::new(&tilde, ctx, fctx);
    let af = fctx.from_exact(a);
    let am1 = &af - &fctx.one();
    let top = rule.integrate(&|t: &HighPrecFloat, x: &HighPrecFloat| &fctx.exp(&(&af * t)) * &weight.eval_log(t, x));
    let bottom =
        rule.integrate(&|t: &HighPrecFloat, x: &HighPrecFloat| &fctx.exp(&(&am1 * t)) * &weight.eval_log(t, x));
    let two_a = a * int(2);
    let (target_text, target) = if two_a.is_integer() {
        let e = i64::try_from(two_a.to_integer()).expect("small exponent");
        let exact = ctx.power(-e) - ExactScalar::one();
        (format_exact(&exact), fctx.from_exact(&exact))
    } else {
        let v = &fctx.exp(&(&-&af * weight.ln_q())) - &fctx.one();
        (v.to_sci(20), v)
    };
    let label = format!("I-ratio a={} q={}", format_exact(a), format_exact(ctx.q()));
    Ok(match top.and_then(|t| bottom.map(|b| &t.value / &b.value)) {
        Ok(v) => NumericCheck::from_values(label, target_text, &target, &v, ToleranceKind::Relative),
        Err(e) => NumericCheck::failed(label, target_text, ToleranceKind::Relative, &e),
    })
}

/// `int_0^inf e^{-x} dx = 1`.
pub fn check_sanity(rule: &DeRule<'_>) -> NumericCheck {
    let fctx = rule.float_ctx();
    let label = "int e^-x dx".to_string();
    match rule.integrate(&|_t: &HighPrecFloat, x: &HighPrecFloat| fctx.exp(&-x)) {
        Ok(r) => NumericCheck::from_values(label, "1".into(), &fctx.one(), &r.value, ToleranceKind::Relative),
        Err(e) => NumericCheck::failed(label, "1".into(), ToleranceKind::Relative, &e),
    }
}

/// All numeric checks for `n <= min(n_max, 4)`, in a fixed order.
pub fn run_numeric_suite(
    family: &WeightFamily,
    ctx: &QContext,
    precision: usize,
    n_max: usize,
) -> Result<NumericReport> {
    if precision < MIN_SUITE_PRECISION {
        return Err(Error::PrecisionTooLow {
            bits: precision,
            floor: MIN_SUITE_PRECISION,
        });
    }
    let fctx = FloatCtx::new(precision)?;
    let n_top = n_max.min(MAX_NUMERIC_N);
    let checker = NumericChecker::new(family, ctx, &fctx, n_top)?;
    let mut report = NumericReport::default();
    report.push(check_sanity(checker.rule()));
    if let Some(c) = checker.check_total_mass() {
        report.push(c);
    }
    for k in 1..=4 {
        report.push(checker.check_moment(k));
    }
    for n in 0..=n_top {
        for m in 0..=n {
            report.push(checker.check_orthogonality(m, n));
        }
    }
    for n in 0..=n_top {
        let (a, b) = checker.check_u_moment_identities(n);
        report.push(a);
        report.push(b);
    }
    for n in 0..=n_top {
        for (p, r) in LADDER_POINTS {
            for c in checker.check_ladder_integral_defs(n, &ratio(p, r))? {
                report.push(c);
            }
        }
    }
    for (f, g) in checker.default_parts_pairs() {
        report.push(checker.check_integration_by_parts(&f, &g)?);
    }
    for j in 0..=n_top {
        report.push(checker.check_qshift_norm(j));
    }
    for a in [ratio(1, 2), ratio(3, 2)] {
        report.push(check_i_ratio(ctx, &a, checker.rule())?);
    }
    Ok(report)
}
