//! Browser bindings: a recurrence table, the exact identity suite, and weight curves.
//!
//! The `*_json` and `curve_samples` functions are plain Rust so they can be tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use qladder::closed_form::{closed_table, residues_closed};
use qladder::oracle::generate_monic;
use qladder::scalar::format_exact;
use qladder::verify::run_suite;
use qladder::weight::{NumericWeight, WeightFamily};
use qladder::{FloatCtx, QContext};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; the exact rationals grow quickly with `n`.
pub const MAX_WEB_NMAX: usize = 16;
const CURVE_BITS: usize = 64;

fn setup(family: &str, sqrt_q: &str, alpha: i32, nmax: usize) -> Result<(WeightFamily, QContext), String> {
    if nmax > MAX_WEB_NMAX {
        return Err(format!("nmax must be at most {MAX_WEB_NMAX}"));
    }
    let ctx = QContext::from_sqrt_q_str(sqrt_q).map_err(|e| e.to_string())?;
    let family = match family {
        "sw" => WeightFamily::StieltjesWigert,
        "qlaguerre" => WeightFamily::q_laguerre(alpha.into()).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown family {other:?}")),
    };
    Ok((family, ctx))
}

/// Rows `{n, alpha, beta, big_r, small_r, p1, zeta_ratio}` as exact strings.
pub fn table_json(family: &str, sqrt_q: &str, alpha: i32, nmax: usize) -> Result<String, String> {
    let (family, ctx) = setup(family, sqrt_q, alpha, nmax)?;
    let table = closed_table(&family, &ctx, nmax).map_err(|e| e.to_string())?;
    let res = residues_closed(&family, &ctx, nmax).map_err(|e| e.to_string())?;
    let rows: Vec<_> = (0..=nmax)
        .map(|n| {
            json!({
                "n": n,
                "alpha": format_exact(&table.alpha[n]),
                "beta": format_exact(&table.beta[n]),
                "big_r": format_exact(&res.big_r[n]),
                "small_r": format_exact(&res.small_r[n]),
                "p1": format_exact(&table.p1[n]),
                "zeta_ratio": format_exact(&table.zeta_ratio[n]),
            })
        })
        .collect();
    Ok(json!({ "family": family.to_string(), "rows": rows }).to_string())
}

/// `{entries: [{label, outcome, detail}], summary}` for the exact suite.
pub fn verify_json(family: &str, sqrt_q: &str, alpha: i32, nmax: usize) -> Result<String, String> {
    let (family, ctx) = setup(family, sqrt_q, alpha, nmax)?;
    let report = run_suite(&family, &ctx, nmax).map_err(|e| e.to_string())?;
    let entries: Vec<_> = report
        .entries
        .iter()
        .map(|e| json!({ "label": e.label, "outcome": e.outcome(), "detail": e.detail }))
        .collect();
    let s = report.summary;
    Ok(json!({
        "entries": entries,
        "summary": { "passed": s.passed, "failed": s.failed, "expected_failures": s.expected_failures },
        "success": report.success(),
    })
    .to_string())
}

/// `points` samples of `t = ln x` on `[t_min, t_max]`, followed by `x w(x)` and
/// `x w(x) P_n(x)^2` at those points (three blocks of `points`). Both curves are
/// densities in `t`; they are unnormalized.
pub fn curve_samples(
    family: &str,
    sqrt_q: &str,
    alpha: i32,
    n: usize,
    t_min: f64,
    t_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    if points < 2 || !t_min.is_finite() || !t_max.is_finite() || t_min >= t_max {
        return Err("need at least two points on a nonempty interval".into());
    }
    let (family, ctx) = setup(family, sqrt_q, alpha, n)?;
    let fctx = FloatCtx::new(CURVE_BITS).map_err(|e| e.to_string())?;
    let weight = NumericWeight::new(&family, &ctx, &fctx);
    let table = closed_table(&family, &ctx, n).map_err(|e| e.to_string())?;
    let poly = generate_monic(&table, n).polys[n].clone();
    let coeffs: Vec<f64> = poly.coeffs().iter().map(|c| fctx.from_exact(c).to_f64()).collect();
    let mut out = vec![0.0; 3 * points];
    for i in 0..points {
        let t = t_min + (t_max - t_min) * i as f64 / (points - 1) as f64;
        let x = t.exp();
        let xw = x * weight.eval(&fctx.from_f64(x)).to_f64();
        let p = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        out[i] = t;
        out[points + i] = xw;
        out[2 * points + i] = xw * p * p;
    }
    Ok(out)
}

#[wasm_bindgen(js_name = recurrenceTable)]
pub fn recurrence_table(family: &str, sqrt_q: &str, alpha: i32, nmax: usize) -> Result<String, JsError> {
    table_json(family, sqrt_q, alpha, nmax).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = verifySuite)]
pub fn verify_suite(family: &str, sqrt_q: &str, alpha: i32, nmax: usize) -> Result<String, JsError> {
    verify_json(family, sqrt_q, alpha, nmax).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = weightCurve)]
pub fn weight_curve(
    family: &str,
    sqrt_q: &str,
    alpha: i32,
    n: usize,
    t_min: f64,
    t_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    curve_samples(family, sqrt_q, alpha, n, t_min, t_max, points).map_err(|e| JsError::new(&e))
}
