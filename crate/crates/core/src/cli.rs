//! Command dispatch shared by the binary and the tests. Every command
//! renders into a byte buffer first; nothing is written until it finishes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::{catalog_keys, lookup, CoxeterSystem};
use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, ArrFrac, Poly, PolyMatrix, Rational};
use crate::multider::{
    run_checks, verify_bl_formula, BRoute, CheckKind, CheckRecord, Fault, Pipeline, Status, VerificationReport,
};
use crate::serial::{poly_matrix_record, poly_record, system_record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Basis,
    Bmatrix,
    Verify,
    Selftest,
    Catalog,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Basis => "basis",
            Command::Bmatrix => "bmatrix",
            Command::Verify => "verify",
            Command::Selftest => "selftest",
            Command::Catalog => "catalog",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_m: usize,
    pub max_rank: usize,
    pub allow_override: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_m: 8,
            max_rank: 5,
            allow_override: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub system: Option<String>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub format: Format,
    pub checks: Vec<CheckKind>,
    pub limits: Limits,
    pub out: Option<PathBuf>,
    pub timings: bool,
    pub fault: Option<Fault>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            system: None,
            m: None,
            k: None,
            format: Format::Text,
            checks: CheckKind::ALL.to_vec(),
            limits: Limits::default(),
            out: None,
            timings: false,
            fault: None,
        }
    }
}

/// Parses `all` or a comma-separated list of check names.
pub fn parse_checks(s: &str) -> Result<Vec<CheckKind>> {
    if s.trim() == "all" {
        return Ok(CheckKind::ALL.to_vec());
    }
    s.split(',').map(|c| c.trim().parse()).collect()
}

#[derive(Debug)]
pub struct Outcome {
    pub exit: i32,
    pub output: Vec<u8>,
    /// Diagnostics for standard error.
    pub message: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownSystem(_) | Error::UnsupportedSystem(_) | Error::Parse(_) => EXIT_USAGE,
        Error::LimitExceeded(_) => EXIT_LIMIT,
        _ => EXIT_FAIL,
    }
}

/// Runs one command. Errors become an exit code and a message.
pub fn run(config: &RunConfig) -> Outcome {
    let result = match config.command {
        Command::Basis => cmd_basis(config),
        Command::Bmatrix => cmd_bmatrix(config),
        Command::Verify => cmd_verify(config),
        Command::Selftest => cmd_selftest(config),
        Command::Catalog => cmd_catalog(config),
    };
    match result {
        Ok((exit, output)) => Outcome {
            exit,
            output,
            message: None,
        },
        Err(e) => Outcome {
            exit: exit_code(&e),
            output: Vec::new(),
            message: Some(format!("error: {e}")),
        },
    }
}

fn system_for(config: &RunConfig) -> Result<CoxeterSystem> {
    let key = config
        .system
        .as_deref()
        .ok_or_else(|| Error::Parse(format!("{:?} needs a system key", config.command)))?;
    let s = lookup(key)?;
    let lim = &config.limits;
    if !lim.allow_override && s.rank() > lim.max_rank {
        return Err(Error::LimitExceeded(format!(
            "rank {} exceeds {} (use --override-limits)",
            s.rank(),
            lim.max_rank
        )));
    }
    Ok(s)
}

fn pipeline_for(config: &RunConfig) -> Result<Pipeline> {
    Ok(Pipeline::with_fault(Arc::new(system_for(config)?), config.fault))
}

fn need_m(config: &RunConfig) -> Result<usize> {
    let m = config
        .m
        .ok_or_else(|| Error::Parse(format!("{} needs --m", config.command.name())))?;
    if !config.limits.allow_override && m > config.limits.max_m {
        return Err(Error::LimitExceeded(format!(
            "m = {m} exceeds {} (use --override-limits)",
            config.limits.max_m
        )));
    }
    Ok(m)
}

fn need_k(config: &RunConfig) -> Result<usize> {
    let k = config.k.ok_or_else(|| Error::Parse("bmatrix needs --k".into()))?;
    if k == 0 {
        return Err(Error::Parse("--k must be at least 1".into()));
    }
    if !config.limits.allow_override && 2 * k > config.limits.max_m {
        return Err(Error::LimitExceeded(format!(
            "k = {k} needs m = {} beyond {} (use --override-limits)",
            2 * k,
            config.limits.max_m
        )));
    }
    Ok(k)
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s.into_bytes()
}

fn envelope(system: Option<&str>, command: Command, params: Value, result: Value, report: Option<Value>) -> Value {
    let mut v = json!({
        "system": system,
        "command": command,
        "params": params,
        "result": result,
    });
    if let Some(r) = report {
        v["report"] = r;
    }
    v
}

fn check_json(c: &CheckRecord, timings: bool) -> Value {
    let mut v = serde_json::to_value(c).expect("check records serialize");
    if timings {
        v["elapsed_ms"] = json!(c.elapsed.as_secs_f64() * 1e3);
    }
    v
}

fn report_json(r: &VerificationReport, timings: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    v["checks"] = Value::Array(r.checks.iter().map(|c| check_json(c, timings)).collect());
    v
}

fn format_derivations(p: &PolyMatrix, m: usize) -> String {
    let mut s = String::new();
    for j in 0..p.cols() {
        let terms: Vec<String> = (0..p.rows())
            .filter(|&i| !p.get(i, j).is_zero())
            .map(|i| format!("({}) ∂{}", p.get(i, j), i + 1))
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let _ = writeln!(s, "xi_{}^({m}) = {body}", j + 1);
    }
    s
}

fn format_matrix(p: &PolyMatrix) -> String {
    let mut s = String::new();
    for i in 0..p.rows() {
        let row: Vec<String> = (0..p.cols()).map(|j| p.get(i, j).to_string()).collect();
        let _ = writeln!(s, "  [{}]", row.join(", "));
    }
    s
}

fn join_u32(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// `c` with `det P_m = c Q^m`, if any.
fn det_constant(s: &CoxeterSystem, p: &PolyMatrix, m: usize) -> Result<Option<Rational>> {
    let det = p.det()?;
    Ok(det
        .is_constant_multiple(&s.defining_poly().poly.pow(m as u32))
        .filter(|c| !c.is_zero()))
}

pub fn cmd_basis(config: &RunConfig) -> Result<(i32, Vec<u8>)> {
    let pipe = pipeline_for(config)?;
    let m = need_m(config)?;
    let s = pipe.system();
    let basis = pipe.p_matrix(m)?;
    let c = det_constant(s, &basis.p, m)?;
    let exit = if c.is_some() { EXIT_OK } else { EXIT_FAIL };
    let out = match config.format {
        Format::Json => {
            let result = json!({
                "m": m,
                "k": basis.k,
                "h": s.coxeter_number(),
                "exponents": s.exponents(),
                "degrees": basis.degrees,
                "det_constant": c.as_ref().map(format_rational),
                "invariants": s.invariants().iter().map(poly_record).collect::<Vec<_>>(),
                "defining_poly": poly_record(&s.defining_poly().poly),
                "matrix": poly_matrix_record(&basis.p),
            });
            json_bytes(&envelope(Some(s.key()), Command::Basis, json!({"m": m}), result, None))
        }
        Format::Text => {
            let mut t = String::new();
            let _ = writeln!(t, "system {} (h={}, exponents {})", s.key(), s.coxeter_number(), join_u32(s.exponents()));
            for (i, f) in s.invariants().iter().enumerate() {
                let _ = writeln!(t, "f{} = {f}", i + 1);
            }
            let _ = writeln!(t, "Q = {}", s.defining_poly().poly);
            let _ = writeln!(t, "m = {m}, k = {}, column degrees {}", basis.k, join_u32(&basis.degrees));
            match &c {
                Some(c) => {
                    let _ = writeln!(t, "det P_{m} = {} * Q^{m}", format_rational(c));
                }
                None => {
                    let _ = writeln!(t, "det P_{m} is not a constant multiple of Q^{m}");
                }
            }
            t.push_str(&format_derivations(&basis.p, m));
            t.into_bytes()
        }
    };
    Ok((exit, out))
}

pub fn cmd_bmatrix(config: &RunConfig) -> Result<(i32, Vec<u8>)> {
    let pipe = pipeline_for(config)?;
    let k = need_k(config)?;
    let s = pipe.system();
    let def = pipe.b_matrix(k, BRoute::Definition)?;
    let closed = pipe.b_matrix(k, BRoute::ClosedForm)?;
    let agree = def == closed;
    let det = def.b.det()?;
    let det_c = det.constant_value().filter(|c| !c.is_zero());
    let exit = if agree && det_c.is_some() { EXIT_OK } else { EXIT_FAIL };
    let out = match config.format {
        Format::Json => {
            let result = json!({
                "k": k,
                "h": s.coxeter_number(),
                "exponents": s.exponents(),
                "routes_agree": agree,
                "det": det_c.as_ref().map(format_rational),
                "matrix": poly_matrix_record(&def.b),
            });
            json_bytes(&envelope(Some(s.key()), Command::Bmatrix, json!({"k": k}), result, None))
        }
        Format::Text => {
            let mut t = String::new();
            let _ = writeln!(t, "system {} (h={}, exponents {})", s.key(), s.coxeter_number(), join_u32(s.exponents()));
            let _ = writeln!(t, "B^({k}) =");
            t.push_str(&format_matrix(&def.b));
            let _ = writeln!(t, "closed form {}", if agree { "agrees" } else { "DIFFERS" });
            match &det_c {
                Some(c) => {
                    let _ = writeln!(t, "det = {}", format_rational(c));
                }
                None => {
                    let _ = writeln!(t, "det = {det} (not a nonzero constant)");
                }
            }
            t.into_bytes()
        }
    };
    Ok((exit, out))
}

fn format_check(c: &CheckRecord, timings: bool) -> String {
    let status = match c.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    };
    let mut line = format!("{status} {}", c.name);
    if let Some(p) = &c.param {
        let _ = write!(line, " [{p}]");
    }
    if let Some(v) = &c.value {
        let _ = write!(line, " {v}");
    }
    if !c.flags.is_empty() {
        let _ = write!(line, " ({})", c.flags.join("; "));
    }
    if timings {
        let _ = write!(line, " {:.3} ms", c.elapsed.as_secs_f64() * 1e3);
    }
    if let Some(w) = &c.witness {
        let _ = write!(line, "\n    witness: {w}");
    }
    line
}

pub fn cmd_verify(config: &RunConfig) -> Result<(i32, Vec<u8>)> {
    let pipe = pipeline_for(config)?;
    let m = need_m(config)?;
    let report = run_checks(&pipe, m, &config.checks);
    let exit = if report.all_pass() { EXIT_OK } else { EXIT_FAIL };
    let out = match config.format {
        Format::Json => {
            let names: Vec<&str> = config.checks.iter().map(|c| c.name()).collect();
            let result = json!({"all_pass": report.all_pass(), "flags": report.flags()});
            json_bytes(&envelope(
                Some(&report.system),
                Command::Verify,
                json!({"m": m, "checks": names}),
                result,
                Some(report_json(&report, config.timings)),
            ))
        }
        Format::Text => {
            let mut t = String::new();
            let _ = writeln!(t, "verify {} m={m}", report.system);
            for c in &report.checks {
                let _ = writeln!(t, "{}", format_check(c, config.timings));
            }
            for f in report.flags() {
                let _ = writeln!(t, "flag: {f}");
            }
            let _ = writeln!(t, "{}", if report.all_pass() { "all checks passed" } else { "some checks FAILED" });
            t.into_bytes()
        }
    };
    Ok((exit, out))
}

fn p2(s: &str) -> Poly {
    Poly::parse(s, 2).expect("fixture polynomials parse")
}

/// `P_3` for `B_2` with `f = (p_2/2, p_4/4)`, as tabulated. The matching
/// `D x` is `(-x2/Q, x1/Q)` with `Q = x1 x2^3 - x1^3 x2`.
fn fixture_b2_p3() -> PolyMatrix {
    PolyMatrix::from_rows(
        2,
        vec![
            vec![
                p2("-1/3*x1^5 + 5/3*x1^3*x2^2"),
                p2("-1/3*x1^7 + x1^5*x2^2 + 2/3*x1^3*x2^4"),
            ],
            vec![
                p2("5/3*x1^2*x2^3 - 1/3*x2^5"),
                p2("2/3*x1^4*x2^3 + x1^2*x2^5 - 1/3*x2^7"),
            ],
        ],
    )
    .expect("fixture is square")
}

fn matrix_diff(want: &PolyMatrix, got: &PolyMatrix) -> String {
    let mut s = String::new();
    for i in 0..want.rows() {
        for j in 0..want.cols() {
            if want.get(i, j) != got.get(i, j) {
                let _ = writeln!(s, "    ({}, {}): expected {}, got {}", i + 1, j + 1, want.get(i, j), got.get(i, j));
            }
        }
    }
    s
}

struct SelfItem {
    name: String,
    ok: bool,
    detail: String,
}

/// `c` with `got = c * want` entrywise for one common nonzero `c`.
fn global_constant(want: &PolyMatrix, got: &PolyMatrix) -> Option<Rational> {
    let mut c: Option<Rational> = None;
    for (w, g) in want.entries().iter().zip(got.entries()) {
        let r = g.is_constant_multiple(w)?;
        if w.is_zero() {
            continue;
        }
        match &c {
            None => c = Some(r),
            Some(c0) if *c0 == r => {}
            _ => return None,
        }
    }
    c.filter(|c| !c.is_zero())
}

fn selftest_items(fault: Option<Fault>) -> Result<Vec<SelfItem>> {
    let mut items = Vec::new();
    let b2 = Arc::new(lookup("B2")?);
    let pipe = Pipeline::with_fault(b2.clone(), fault);

    let p1 = pipe.p_matrix(1)?.p;
    let want_p1 = PolyMatrix::from_rows(2, vec![vec![p2("x1"), p2("x1^3")], vec![p2("x2"), p2("x2^3")]])?;
    items.push(SelfItem {
        name: "b2-p1".into(),
        ok: p1 == want_p1,
        detail: matrix_diff(&want_p1, &p1),
    });

    let q_ref = p2("x1*x2^3 - x1^3*x2");
    let q = &b2.defining_poly().poly;
    let sign = q.is_constant_multiple(&q_ref);
    let sign_ok = matches!(&sign, Some(c) if c.numer().magnitude() == c.denom().magnitude());
    items.push(SelfItem {
        name: "b2-q".into(),
        ok: sign_ok,
        detail: match &sign {
            Some(c) => format!("Q = {} * (x1*x2^3 - x1^3*x2)", format_rational(c)),
            None => format!("Q = {q}"),
        },
    });

    let want_p3 = fixture_b2_p3();
    match pipe.p_matrix(3) {
        Ok(b) => {
            let c = global_constant(&want_p3, &b.p);
            let detc = det_constant(&b2, &b.p, 3)?;
            items.push(SelfItem {
                name: "b2-p3".into(),
                ok: c.is_some(),
                detail: match &c {
                    Some(c) => format!("P_3 = {} * fixture", format_rational(c)),
                    None => matrix_diff(&want_p3, &b.p),
                },
            });
            items.push(SelfItem {
                name: "b2-det-p3".into(),
                ok: detc.is_some(),
                detail: match &detc {
                    Some(c) => format!("det P_3 = {} * Q^3", format_rational(c)),
                    None => "det P_3 is not a constant multiple of Q^3".into(),
                },
            });
        }
        Err(e) => items.push(SelfItem {
            name: "b2-p3".into(),
            ok: false,
            detail: e.to_string(),
        }),
    }

    let lv = pipe.level(1)?;
    let q2 = ArrFrac::from_poly(q.pow(2));
    let c = lv.det.mul(&q2).constant_value().filter(|c| !c.is_zero());
    items.push(SelfItem {
        name: "b2-det-jdx".into(),
        ok: c.is_some(),
        detail: match &c {
            Some(c) => format!("det J(Dx) * Q^2 = {}", format_rational(c)),
            None => format!("det J(Dx) = {}", lv.det),
        },
    });

    for l in 2..=4 {
        let key = format!("B{l}");
        let p = Pipeline::with_fault(Arc::new(lookup(&key)?), fault);
        let r = verify_bl_formula(&p, 1);
        items.push(SelfItem {
            name: format!("bl-formula-{key}"),
            ok: r.status == Status::Pass,
            detail: r.witness.unwrap_or_default(),
        });
    }
    Ok(items)
}

pub fn cmd_selftest(config: &RunConfig) -> Result<(i32, Vec<u8>)> {
    let items = selftest_items(config.fault)?;
    let ok = items.iter().all(|i| i.ok);
    let exit = if ok { EXIT_OK } else { EXIT_FAIL };
    let out = match config.format {
        Format::Json => {
            let list: Vec<Value> = items
                .iter()
                .map(|i| json!({"name": i.name, "status": if i.ok { "pass" } else { "fail" }, "detail": i.detail.trim_end()}))
                .collect();
            json_bytes(&envelope(None, Command::Selftest, json!({}), json!({"all_pass": ok, "items": list}), None))
        }
        Format::Text => {
            let mut t = String::new();
            for i in &items {
                let status = if i.ok { "PASS" } else { "FAIL" };
                let detail = i.detail.trim_end();
                if detail.contains('\n') || !i.ok && !detail.is_empty() {
                    let _ = writeln!(t, "{status} {}", i.name);
                    for line in detail.lines() {
                        let _ = writeln!(t, "    {}", line.trim_start());
                    }
                } else if detail.is_empty() {
                    let _ = writeln!(t, "{status} {}", i.name);
                } else {
                    let _ = writeln!(t, "{status} {}: {detail}", i.name);
                }
            }
            let _ = writeln!(t, "{}", if ok { "selftest passed" } else { "selftest FAILED" });
            t.into_bytes()
        }
    };
    Ok((exit, out))
}

pub fn cmd_catalog(config: &RunConfig) -> Result<(i32, Vec<u8>)> {
    let systems: Vec<CoxeterSystem> = catalog_keys().iter().map(|k| lookup(k)).collect::<Result<_>>()?;
    let out = match config.format {
        Format::Json => {
            let list: Vec<Value> = systems
                .iter()
                .map(|s| serde_json::to_value(system_record(s)).expect("records serialize"))
                .collect();
            json_bytes(&envelope(None, Command::Catalog, json!({}), Value::Array(list), None))
        }
        Format::Text => {
            let mut t = String::new();
            for s in &systems {
                let _ = writeln!(
                    t,
                    "{}: h={}, exponents {}, |A|={}",
                    s.key(),
                    s.coxeter_number(),
                    join_u32(s.exponents()),
                    s.hyperplane_count()
                );
            }
            t.into_bytes()
        }
    };
    Ok((EXIT_OK, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(o: &Outcome) -> String {
        String::from_utf8(o.output.clone()).unwrap()
    }

    #[test]
    fn catalog_lines() {
        let o = run(&RunConfig::new(Command::Catalog));
        let t = text(&o);
        assert!(t.contains("B2: h=4, exponents 1,3, |A|=4"));
        assert!(t.contains("A1: h=2, exponents 1, |A|=1"));
        assert!(t.contains("D4: h=6, exponents 1,3,3,5, |A|=12"));
    }

    #[test]
    fn limits_and_unknown() {
        let mut c = RunConfig::new(Command::Basis);
        c.system = Some("B2".into());
        c.m = Some(9);
        assert_eq!(run(&c).exit, EXIT_LIMIT);
        c.limits.allow_override = true;
        assert_eq!(run(&c).exit, EXIT_OK);
        c.system = Some("E8".into());
        assert_eq!(run(&c).exit, EXIT_USAGE);
        let mut c = RunConfig::new(Command::Basis);
        c.system = Some("B2".into());
        assert_eq!(run(&c).exit, EXIT_USAGE);
    }

    #[test]
    fn selftest_and_fault() {
        let c = RunConfig::new(Command::Selftest);
        let o = run(&c);
        assert_eq!(o.exit, EXIT_OK, "{}", text(&o));
        assert!(text(&o).contains("det P_3 = "));
        let mut c = RunConfig::new(Command::Selftest);
        c.fault = Some(Fault::NegateFirstPartial);
        let o = run(&c);
        assert_eq!(o.exit, EXIT_FAIL);
        assert!(text(&o).contains("FAIL b2-p1"));
    }

    #[test]
    fn check_list() {
        assert_eq!(parse_checks("all").unwrap().len(), 9);
        assert_eq!(
            parse_checks("ziegler,degrees").unwrap(),
            vec![CheckKind::Ziegler, CheckKind::Degrees]
        );
        assert!(parse_checks("ziegler,nope").is_err());
    }
}
