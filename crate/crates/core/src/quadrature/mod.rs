//! Double-exponential quadrature on `(0, inf)` and the numeric checks of the integral
//! definitions.
//!
//! With `x = e^t` the family weights decay at least exponentially in `t` in both
//! directions, so `t = (pi/2) sinh(tau)` turns the integrand into a double-exponentially
//! decaying function of `tau` and the trapezoid rule converges geometrically in the
//! number of halvings. Node abscissae and Jacobians depend only on the precision and
//! are cached across integrals.

pub mod checks;

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::float::{FloatCtx, HighPrecFloat};

/// Coarsest step in `tau`.
const H0_LOG2: i32 = 0;
/// Refinement cap (the coarsest level counts as level 0).
pub const MAX_LEVELS: usize = 12;
const MIN_LEVELS: usize = 3;
/// Walking outward stops after this many consecutive negligible terms...
const NEGLIGIBLE_RUN: usize = 4;
/// ...but never before this `|tau|`.
const TAU_MIN_REACH: f64 = 3.5;
/// Hard truncation; the integrand must already be negligible there.
const TAU_MAX: f64 = 8.0;

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: HighPrecFloat,
    /// `|I_L - I_{L-1}|` at the accepted level.
    pub error_estimate: HighPrecFloat,
    pub evaluations: usize,
    pub levels: usize,
}

/// Identifies a node across integrals, so per-node values (the weight) can be cached.
#[derive(Clone, Copy, Debug, Hash, PartialEq, Eq)]
pub struct NodeKey {
    level: u16,
    idx: u32,
    positive: bool,
}

impl NodeKey {
    const CENTER: NodeKey = NodeKey {
        level: u16::MAX,
        idx: 0,
        positive: true,
    };
}

/// A quadrature abscissa as seen by an integrand.
pub struct NodePoint<'n> {
    pub key: NodeKey,
    /// `ln x`.
    pub t: &'n HighPrecFloat,
    pub x: &'n HighPrecFloat,
}

#[derive(Clone)]
struct Node {
    t: HighPrecFloat,
    x: HighPrecFloat,
    /// `(pi/2) cosh(tau) e^t`, i.e. `dx/dtau`.
    jac: HighPrecFloat,
}

#[derive(Default)]
struct Level {
    pos: Vec<Node>,
    neg: Vec<Node>,
}

/// Exp-sinh trapezoid rule with cached nodes.
pub struct DeRule<'a> {
    fctx: &'a FloatCtx,
    half_pi: HighPrecFloat,
    center: Node,
    levels: RefCell<Vec<Level>>,
    tolerance: HighPrecFloat,
}

impl<'a> DeRule<'a> {
    /// Convergence is declared when successive levels differ by at most
    /// `2^{-3p/4}` times the L1 sum of the integrand.
    pub fn new(fctx: &'a FloatCtx) -> Self {
        let half_pi = &fctx.pi() / &fctx.from_i64(2);
        let center = Node {
            t: fctx.zero(),
            x: fctx.one(),
            jac: half_pi.clone(),
        };
        let tolerance = fctx.pow2_neg(3 * fctx.precision() / 4);
        Self {
            fctx,
            half_pi,
            center,
            levels: RefCell::new(Vec::new()),
            tolerance,
        }
    }

    pub fn float_ctx(&self) -> &'a FloatCtx {
        self.fctx
    }

    fn step(&self, level: usize) -> HighPrecFloat {
        let shift = level as i32 - H0_LOG2;
        if shift >= 0 {
            self.fctx.pow2_neg(shift as usize)
        } else {
            self.fctx.powi(&self.fctx.from_i64(2), -shift as i64)
        }
    }

    fn tau_f64(level: usize, idx: usize) -> f64 {
        let h = 2f64.powi(H0_LOG2 - level as i32);
        if level == 0 {
            (idx + 1) as f64 * h
        } else {
            (2 * idx + 1) as f64 * h
        }
    }

    fn make_nodes(&self, level: usize, idx: usize) -> (Node, Node) {
        let f = self.fctx;
        let h = self.step(level);
        let multiple = if level == 0 { idx + 1 } else { 2 * idx + 1 };
        let tau = &h * &f.from_i64(multiple as i64);
        let e = f.exp(&tau);
        let e_inv = &f.one() / &e;
        let two = f.from_i64(2);
        let sinh = &(&e - &e_inv) / &two;
        let cosh = &(&e + &e_inv) / &two;
        let t = &self.half_pi * &sinh;
        let x = f.exp(&t);
        let x_inv = &f.one() / &x;
        let scale = &self.half_pi * &cosh;
        let pos = Node {
            t: t.clone(),
            jac: &scale * &x,
            x,
        };
        let neg = Node {
            t: -&t,
            jac: &scale * &x_inv,
            x: x_inv,
        };
        (pos, neg)
    }

    fn node(&self, level: usize, idx: usize, positive: bool) -> Node {
        let mut levels = self.levels.borrow_mut();
        while levels.len() <= level {
            levels.push(Level::default());
        }
        let lv = &mut levels[level];
        while lv.pos.len() <= idx {
            let (p, n) = self.make_nodes(level, lv.pos.len());
            lv.pos.push(p);
            lv.neg.push(n);
        }
        if positive {
            lv.pos[idx].clone()
        } else {
            lv.neg[idx].clone()
        }
    }

    /// Sums the level's new nodes on one side, walking outward. Returns `(sum, l1)`.
    fn walk<F>(
        &self,
        f: &F,
        level: usize,
        positive: bool,
        max_term: &mut HighPrecFloat,
        evaluations: &mut usize,
    ) -> Result<(HighPrecFloat, HighPrecFloat)>
    where
        F: Fn(&NodePoint<'_>) -> HighPrecFloat,
    {
        let eps = self.fctx.epsilon();
        let mut sum = self.fctx.zero();
        let mut l1 = self.fctx.zero();
        let mut run = 0;
        let mut idx = 0;
        loop {
            let tau = Self::tau_f64(level, idx);
            if tau > TAU_MAX {
                // coarse levels may not fit a full run before the cap
                if run > 0 {
                    return Ok((sum, l1));
                }
                return Err(Error::TailNotNegligible(format!("{TAU_MAX}")));
            }
            let node = self.node(level, idx, positive);
            let point = NodePoint {
                key: NodeKey {
                    level: level as u16,
                    idx: idx as u32,
                    positive,
                },
                t: &node.t,
                x: &node.x,
            };
            let term = &f(&point) * &node.jac;
            *evaluations += 1;
            let mag = term.abs();
            if mag > *max_term {
                *max_term = mag.clone();
            }
            if mag <= &eps * &*max_term {
                run += 1;
            } else {
                run = 0;
            }
            sum = &sum + &term;
            l1 = &l1 + &mag;
            if run >= NEGLIGIBLE_RUN && tau >= TAU_MIN_REACH {
                return Ok((sum, l1));
            }
            idx += 1;
        }
    }

    /// `int_0^inf g(x) dx`, with the integrand given as `g(t, x)` where `x = e^t`.
    pub fn integrate<F>(&self, f: &F) -> Result<QuadResult>
    where
        F: Fn(&HighPrecFloat, &HighPrecFloat) -> HighPrecFloat,
    {
        self.integrate_points(&|p: &NodePoint<'_>| f(p.t, p.x))
    }

    /// As [`DeRule::integrate`], with the node key available to the integrand.
    pub fn integrate_points<F>(&self, f: &F) -> Result<QuadResult>
    where
        F: Fn(&NodePoint<'_>) -> HighPrecFloat,
    {
        let mut evaluations = 1;
        let point = NodePoint {
            key: NodeKey::CENTER,
            t: &self.center.t,
            x: &self.center.x,
        };
        let center = &f(&point) * &self.center.jac;
        let mut max_term = center.abs();
        let mut sum = center.clone();
        let mut l1 = center.abs();
        let mut previous: Option<HighPrecFloat> = None;
        let mut last_diff = self.fctx.zero();
        for level in 0..MAX_LEVELS {
            for positive in [true, false] {
                let (s, a) = self.walk(f, level, positive, &mut max_term, &mut evaluations)?;
                sum = &sum + &s;
                l1 = &l1 + &a;
            }
            let h = self.step(level);
            let value = &sum * &h;
            let scale = &l1 * &h;
            if let Some(prev) = previous {
                last_diff = (&value - &prev).abs();
                if level + 1 >= MIN_LEVELS && last_diff <= &self.tolerance * &scale {
                    return Ok(QuadResult {
                        value,
                        error_estimate: last_diff,
                        evaluations,
                        levels: level + 1,
                    });
                }
            }
            previous = Some(value);
        }
        Err(Error::NoConvergence {
            levels: MAX_LEVELS,
            difference: last_diff.to_sci(6),
        })
    }
}

/// One-off integration over `(0, inf)`; reuse a [`DeRule`] for repeated integrals.
pub fn integrate_halfline<F>(f: &F, fctx: &FloatCtx) -> Result<QuadResult>
where
    F: Fn(&HighPrecFloat, &HighPrecFloat) -> HighPrecFloat,
{
    DeRule::new(fctx).integrate(f)
}
