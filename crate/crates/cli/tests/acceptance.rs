//! Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
//!
//! Runs without the libtest harness so the criterion lines always reach the output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use qladder::closed_form::{closed_table, ladder_pair, p1_closed, recurrence_closed, residues_closed};
use qladder::oracle::{cd_identity_checks, chebyshev_recurrence, generate_monic};
use qladder::quadrature::checks::{
    check_i_ratio, run_numeric_suite, ToleranceKind, ABSOLUTE_TOLERANCE, MAX_NUMERIC_N, RELATIVE_TOLERANCE,
};
use qladder::quadrature::DeRule;
use qladder::recurrence::{solve_forward, FirstOrderRecurrence};
use qladder::scalar::{int, ratio};
use qladder::verify::{
    run_suite, verify_lowering, verify_raising, verify_residue_system, verify_supplementary, Expectation, LadderData,
    ReportEntry, Supplementary, VerificationReport,
};
use qladder::weight::{MomentLadder, WeightFamily};
use qladder::{ExactScalar, FloatCtx, QContext};
use qladder_cli::report::{to_json, OracleOutput, QuadcheckOutput, TableOutput, VerifyOutput};
use serde::de::DeserializeOwned;
use serde::Serialize;

struct Point {
    name: &'static str,
    family: WeightFamily,
    ctx: QContext,
}

fn points() -> Vec<Point> {
    let half = QContext::new(ratio(1, 2)).unwrap();
    let two_thirds = QContext::new(ratio(2, 3)).unwrap();
    vec![
        Point {
            name: "sw q=1/4",
            family: WeightFamily::StieltjesWigert,
            ctx: half.clone(),
        },
        Point {
            name: "sw q=4/9",
            family: WeightFamily::StieltjesWigert,
            ctx: two_thirds.clone(),
        },
        Point {
            name: "qlag alpha=1 q=1/4",
            family: WeightFamily::q_laguerre(1).unwrap(),
            ctx: half,
        },
        Point {
            name: "qlag alpha=2 q=4/9",
            family: WeightFamily::q_laguerre(2).unwrap(),
            ctx: two_thirds,
        },
    ]
}

fn secs(start: Instant) -> String {
    format!("{:.2} s", start.elapsed().as_secs_f64())
}

/// Closed-form alpha_n, beta_n equal the moment oracle for n <= 12.
fn criterion_1() -> String {
    let start = Instant::now();
    for p in points() {
        let moments = MomentLadder::new(&p.family, &p.ctx, 25).unwrap();
        let oracle = chebyshev_recurrence(&moments, 12).unwrap();
        let closed = closed_table(&p.family, &p.ctx, 12).unwrap();
        for n in 0..=12 {
            assert_eq!(closed.alpha[n], oracle.alpha[n], "{} alpha_{n}", p.name);
            assert_eq!(closed.beta[n], oracle.beta[n], "{} beta_{n}", p.name);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "took {elapsed:.2} s");
    format!("closed forms equal the oracle at 4 points, n <= 12, {}", secs(start))
}

/// Exact spot values at q = 1/4. R_2 for q-Laguerre alpha = 1 is 1/12; the listed 13/192
/// is checked against the lowering identity and rejected.
fn criterion_2() -> String {
    let ctx = QContext::new(ratio(1, 2)).unwrap();
    let sw = WeightFamily::StieltjesWigert;
    let coeff = |f: &WeightFamily, n| recurrence_closed(f, &ctx, n).unwrap();
    assert_eq!(coeff(&sw, 0).0, int(8));
    assert_eq!(coeff(&sw, 1).0, int(152));
    assert_eq!(coeff(&sw, 1).1, int(192));
    assert_eq!(coeff(&sw, 2).1, int(61440));
    let res = residues_closed(&sw, &ctx, 2).unwrap();
    assert_eq!(res.big_r[1], ratio(1, 3));
    assert_eq!(res.small_r[1], int(-8));

    let ql = WeightFamily::q_laguerre(1).unwrap();
    assert_eq!(coeff(&ql, 0).0, int(15));
    assert_eq!(coeff(&ql, 1).0, int(300));
    assert_eq!(coeff(&ql, 1).1, int(720));
    assert_eq!(p1_closed(&ql, &ctx, 2).unwrap(), int(-315));
    let res = residues_closed(&ql, &ctx, 2).unwrap();
    assert_eq!(res.small_r[1], int(-16));
    assert_eq!(res.big_r[1], ratio(1, 3));
    assert_eq!(res.big_r[2], ratio(1, 12));

    let data = LadderData::build(&ql, &ctx, 2).unwrap();
    assert!(verify_lowering(&data, 2).holds());
    let mut listed = data.clone();
    listed.residues.big_r[2] = ratio(13, 192);
    listed.pairs[2] = ladder_pair(&ql, &ctx, 2, &listed.residues, &listed.table.p1[2]);
    assert!(
        !verify_lowering(&listed, 2).holds(),
        "13/192 satisfies the lowering identity"
    );
    "13 values exact; qlag R_2 = 1/12 (listed 13/192 fails (1.8) n=2)".into()
}

/// Lowering, raising, S1 and S2 as rational-function identities for n <= 10.
fn criterion_3() -> String {
    let start = Instant::now();
    let mut count = 0;
    for p in points() {
        let data = LadderData::build(&p.family, &p.ctx, 10).unwrap();
        for n in 0..=10 {
            let mut instances = vec![
                verify_lowering(&data, n),
                verify_supplementary(&data, n, Supplementary::S1),
                verify_supplementary(&data, n, Supplementary::S2),
            ];
            if n >= 1 {
                instances.push(verify_raising(&data, n));
            }
            for inst in instances {
                assert!(inst.holds(), "{}: {}", p.name, inst.evaluate());
                count += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "took {elapsed:.2} s");
    format!("{count} identities hold exactly at 4 points, n <= 10, {}", secs(start))
}

/// Residue systems for n <= 10; the two documented discrepancies belong to criterion 5.
fn criterion_4() -> String {
    let mut count = 0;
    for p in points() {
        let data = LadderData::build(&p.family, &p.ctx, 10).unwrap();
        let report = verify_residue_system(&data);
        let required: &[&str] = match p.family {
            WeightFamily::StieltjesWigert => &["(3.1)", "(3.2)", "(3.3)", "(3.4)", "(3.8)", "(3.9)", "(3.12)"],
            WeightFamily::QLaguerre { .. } => &["(4.4)", "(4.5)", "(4.7)", "(4.8)", "(4.9)", "(4.10)", "(4.16)"],
        };
        for label in required {
            let n_from = if *label == "(3.12)" { 1 } else { 0 };
            for n in n_from..=10 {
                let entry = report
                    .find(&format!("{label} n={n}"))
                    .unwrap_or_else(|| panic!("{}: {label} n={n} missing", p.name));
                assert!(entry.passed, "{}: {entry}", p.name);
                count += 1;
            }
        }
        for e in &report.entries {
            if e.expectation == Expectation::MustHold {
                assert!(e.passed, "{}: {e}", p.name);
            }
        }
    }
    format!("{count} residue equations hold exactly at 4 points, n <= 10")
}

/// Both documented discrepancies fail as recorded, and an unexpected pass fails the suite.
fn criterion_5() -> String {
    let ctx = QContext::new(ratio(1, 2)).unwrap();
    let ql = WeightFamily::q_laguerre(1).unwrap();
    let report = run_suite(&ql, &ctx, 8).unwrap();
    let at_one = |label: &str, needle: &str| -> ReportEntry {
        report
            .entries
            .iter()
            .find(|e| e.label == label && e.detail.starts_with(needle))
            .cloned()
            .unwrap_or_else(|| panic!("{label} {needle} missing"))
    };
    let eq46 = at_one("(4.6) documented discrepancy", "n=1:");
    assert_eq!(eq46.detail, "n=1: lhs = -5/2, expected 0");
    assert!(!eq46.passed);
    assert_eq!(eq46.outcome(), "failed as expected");
    let eq413 = at_one("(4.13) documented discrepancy", "n=1:");
    assert_eq!(eq413.detail, "n=1: forward solution R_1 = 7/3, system R_1 = 1/3");
    assert!(!eq413.passed);

    let forward = solve_forward(&FirstOrderRecurrence::ql_big_r_printed(&ctx), 1);
    assert_eq!(forward[1], ratio(7, 3));
    assert_eq!(residues_closed(&ql, &ctx, 1).unwrap().big_r[1], ratio(1, 3));

    assert!(report.success());
    assert!(report.summary.expected_failures >= 2);

    let mut flipped = VerificationReport::new();
    for mut e in report.entries.clone() {
        if e.expectation == Expectation::DocumentedDiscrepancy {
            e.passed = true;
        }
        flipped.push(e);
    }
    assert!(!flipped.success());
    assert_eq!(flipped.summary.failed, report.summary.expected_failures);
    format!(
        "(4.6) n=1 = -5/2, (4.13) R_1 = 7/3 vs 1/3; {} documented failures, flipped outcomes fail the suite",
        report.summary.expected_failures
    )
}

/// Forward solutions of the first-order equations reproduce the closed forms for n <= 12.
fn criterion_6() -> String {
    let mut solved = 0;
    for p in points() {
        let ctx = &p.ctx;
        match &p.family {
            WeightFamily::StieltjesWigert => {
                let big = solve_forward(&FirstOrderRecurrence::sw_big_r(ctx), 12);
                let small = solve_forward(&FirstOrderRecurrence::sw_small_r(ctx), 12);
                for n in 0..=12i64 {
                    assert_eq!(big[n as usize], ctx.q_pow(n) / ctx.one_minus_q(), "{} R_{n}", p.name);
                    let r = (int(1) - ctx.q_pow(-n)) / (ctx.one_minus_q() * ctx.sqrt_q());
                    assert_eq!(small[n as usize], r, "{} r_{n}", p.name);
                }
            }
            WeightFamily::QLaguerre { .. } => {
                let a = p.family.exact_alpha().unwrap();
                let y = solve_forward(&FirstOrderRecurrence::ql_scaled_p1(ctx, a), 12);
                let alphas: Vec<ExactScalar> = (0..=12)
                    .map(|n| recurrence_closed(&p.family, ctx, n).unwrap().0)
                    .collect();
                let beta = solve_forward(&FirstOrderRecurrence::ql_beta(ctx, a, alphas), 12);
                for n in 0..=12usize {
                    let p1 = p1_closed(&p.family, ctx, n).unwrap();
                    assert_eq!(&y[n] * ctx.q_pow(2 - 2 * n as i64), p1, "{} p1({n})", p.name);
                    assert_eq!(
                        beta[n],
                        recurrence_closed(&p.family, ctx, n).unwrap().1,
                        "{} beta_{n}",
                        p.name
                    );
                }
            }
        }
        solved += 2;
    }
    format!("{solved} forward solutions match their closed forms, n <= 12")
}

/// The numeric layer at 256 bits, q = 1/4, plus the I-ratio at q = 4/9.
fn criterion_7() -> String {
    let start = Instant::now();
    let ctx = QContext::new(ratio(1, 2)).unwrap();
    let mut total = 0;
    let mut worst: f64 = 0.0;
    for family in [WeightFamily::StieltjesWigert, WeightFamily::q_laguerre(1).unwrap()] {
        let report = run_numeric_suite(&family, &ctx, 256, MAX_NUMERIC_N).unwrap();
        for c in &report.checks {
            let pinned = match c.kind {
                ToleranceKind::Relative => 1e-20,
                ToleranceKind::Absolute => 1e-25,
            };
            assert_eq!(c.tolerance, pinned, "{c}");
            assert!(c.passed, "{family}: {c}");
            worst = worst.max(c.residual.unwrap() / c.tolerance);
        }
        let mut required: Vec<String> = Vec::new();
        if family == WeightFamily::StieltjesWigert {
            required.push("int w closed form".into());
            let mass = report.find("int w closed form").unwrap();
            assert!(mass.target.starts_with("5.90265850654"), "{}", mass.target);
        }
        for n in 0..=3 {
            required.push(format!("(1.15) n={n}"));
            required.push(format!("(1.16) n={n}"));
        }
        for j in 0..=4 {
            required.push(format!("(2.4) j={j}"));
        }
        for n in 0..=4 {
            for x0 in ["1/2", "1", "3"] {
                required.push(format!("(1.6) A_n n={n} x0={x0}"));
                if n >= 1 {
                    required.push(format!("(1.7) B_n n={n} x0={x0}"));
                }
            }
        }
        required.push("I-ratio a=1/2 q=1/4".into());
        required.push("I-ratio a=3/2 q=1/4".into());
        for label in &required {
            assert!(report.find(label).is_some(), "{family}: {label} missing");
        }
        let parts = report.checks.iter().filter(|c| c.label.starts_with("(1.14)")).count();
        assert_eq!(parts, 3);
        total += report.checks.len();
    }
    let fctx = FloatCtx::new(256).unwrap();
    let rule = DeRule::new(&fctx);
    let four_ninths = QContext::new(ratio(2, 3)).unwrap();
    for a in [ratio(1, 2), ratio(3, 2)] {
        let c = check_i_ratio(&four_ninths, &a, &rule).unwrap();
        assert_eq!(c.tolerance, RELATIVE_TOLERANCE);
        assert!(c.passed, "{c}");
        total += 1;
    }
    assert_eq!(ABSOLUTE_TOLERANCE, 1e-25);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "took {elapsed:.2} s");
    format!(
        "{total} numeric checks within tolerance, worst residual/tolerance {worst:.1e}, {}",
        secs(start)
    )
}

/// Christoffel-Darboux as an exact bivariate identity for n <= 10.
fn criterion_8() -> String {
    let mut count = 0;
    for p in points() {
        let moments = MomentLadder::new(&p.family, &p.ctx, 21).unwrap();
        let table = chebyshev_recurrence(&moments, 10).unwrap();
        let basis = generate_monic(&table, 10);
        let checks = cd_identity_checks(&basis, &table, 10);
        assert_eq!(checks.len(), 11);
        assert!(checks.iter().all(|ok| *ok), "{}: {checks:?}", p.name);
        count += checks.len();
    }
    format!("{count} kernel identities hold at 4 points, n <= 10")
}

fn qladder(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qladder"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn round_trips<T: Serialize + DeserializeOwned>(text: &str) -> bool {
    serde_json::from_str::<T>(text).is_ok_and(|doc| to_json(&doc) == text)
}

/// The example invocations give their exit codes, and json output round-trips.
fn criterion_9() -> String {
    let cases: [(&[&str], i32); 12] = [
        (&["table", "--family", "sw", "--sqrt-q", "1/2", "--nmax", "2"], 0),
        (
            &[
                "table",
                "--family",
                "qlaguerre",
                "--alpha",
                "1",
                "--sqrt-q",
                "1/2",
                "--nmax",
                "1",
            ],
            0,
        ),
        (&["table", "--family", "sw", "--sqrt-q", "3/2", "--nmax", "2"], 2),
        (&["verify", "--family", "sw", "--sqrt-q", "1/2", "--nmax", "8"], 0),
        (
            &[
                "verify",
                "--family",
                "qlaguerre",
                "--alpha",
                "1",
                "--sqrt-q",
                "1/2",
                "--nmax",
                "8",
            ],
            0,
        ),
        (
            &[
                "verify",
                "--family",
                "qlaguerre",
                "--alpha",
                "0",
                "--sqrt-q",
                "1/2",
                "--nmax",
                "8",
            ],
            2,
        ),
        (
            &["quadcheck", "--family", "sw", "--sqrt-q", "1/2", "--precision", "256"],
            0,
        ),
        (
            &["quadcheck", "--family", "qlaguerre", "--alpha", "1", "--sqrt-q", "1/2"],
            0,
        ),
        (
            &["quadcheck", "--family", "sw", "--sqrt-q", "1/2", "--precision", "32"],
            2,
        ),
        (&["oracle", "--family", "sw", "--sqrt-q", "1/2", "--nmax", "12"], 0),
        (
            &[
                "oracle",
                "--family",
                "qlaguerre",
                "--alpha",
                "2",
                "--sqrt-q",
                "2/3",
                "--nmax",
                "6",
            ],
            0,
        ),
        (&["oracle", "--family", "sw", "--sqrt-q", "1/1", "--nmax", "12"], 2),
    ];
    for (args, expected) in cases {
        let (code, stdout, stderr) = qladder(args);
        assert_eq!(code, expected, "{args:?}\n{stdout}{stderr}");
    }
    let (_, text, _) = qladder(cases[0].0);
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "152", "192", "1/3", "-8", "-8", "192"]));
    let (_, text, stderr) = qladder(cases[2].0);
    assert!(text.is_empty() && stderr.contains("sqrt-q must lie in (0,1)"));
    let (_, text, _) = qladder(cases[4].0);
    assert!(text.contains("(4.6) documented discrepancy: failed as expected"));
    let (_, _, stderr) = qladder(cases[5].0);
    assert!(stderr.contains("integrability restriction"));
    let (_, text, _) = qladder(cases[6].0);
    assert!(text.lines().any(|l| l.starts_with("(1.16) n=0: target 1/4")));
    let (_, text, _) = qladder(cases[3].0);
    assert!(text.lines().any(|l| l == "(1.9) S1 n=3: PASS"));

    let json = |args: &[&str]| {
        let mut v = args.to_vec();
        v.extend(["--format", "json"]);
        qladder(&v).1
    };
    assert!(round_trips::<TableOutput>(&json(cases[0].0)));
    assert!(round_trips::<VerifyOutput>(&json(cases[4].0)));
    assert!(round_trips::<QuadcheckOutput>(&json(cases[7].0)));
    assert!(round_trips::<OracleOutput>(&json(cases[10].0)));
    format!(
        "{} invocations give their exit codes; json round-trips byte-identically for all 4 commands",
        cases.len()
    )
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("closed forms vs oracle", criterion_1),
        ("spot values", criterion_2),
        ("ladder identities", criterion_3),
        ("residue systems", criterion_4),
        ("documented discrepancies", criterion_5),
        ("difference-equation solver", criterion_6),
        ("numeric integral layer", criterion_7),
        ("Christoffel-Darboux", criterion_8),
        ("CLI contract", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let tag = format!("criterion {}", i + 1);
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| tag.contains(f.as_str()) || name.contains(f.as_str()))
        {
            continue;
        }
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("{tag}: PASS ({name}: {detail})"),
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("{tag}: FAIL ({name}: {msg})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
