//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde::Deserialize;

use multider::coxeter::lookup;
use multider::exactpoly::{parse_rational, ArrFrac, Poly, PolyMatrix, Rational};
use multider::multider::{
    verify_b_properties, verify_bl_formula, verify_degrees, verify_det_jdkx, verify_equivariance, verify_jdg,
    verify_membership, verify_nesting, verify_recursion, verify_ziegler, CheckRecord, Pipeline, Status,
};

const SYSTEMS: [&str; 7] = ["A2", "A3", "B2", "B3", "D4", "I2(5)", "I2(6)"];

/// `det J(D^k x) * Q^(2k)` for k = 1, 2, frozen from a verified run.
const DET_CONSTANTS: [(&str, &str, &str); 7] = [
    ("A2", "-1/6", "5/18"),
    ("A3", "3/32", "315/1024"),
    ("B2", "-3/1", "105/1"),
    ("B3", "15/1", "10395/1"),
    ("D4", "-15/1", "31185/1"),
    ("I2(5)", "-4/625", "216/390625"),
    ("I2(6)", "-5/1296", "385/1679616"),
];

#[derive(Deserialize)]
struct Fixture {
    p1: Vec<Vec<String>>,
    q_reference: String,
    q_sign: String,
    dx: DxFixture,
    j_dx_times_q2: Vec<Vec<String>>,
    det_j_dx_times_q2: String,
    p3_reference: Vec<Vec<String>>,
    p3_constant: String,
    det_p3_over_q3: String,
}

#[derive(Deserialize)]
struct DxFixture {
    num: Vec<String>,
    den: String,
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p2(s: &str) -> Result<Poly, String> {
    Poly::parse(s, 2).map_err(|e| e.to_string())
}

fn rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn matrix2(rows: &[Vec<String>]) -> Result<PolyMatrix, String> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| p2(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    PolyMatrix::from_rows(2, rows).map_err(|e| e.to_string())
}

fn pipe(key: &str) -> Result<Pipeline, String> {
    lookup(key).map(Pipeline::new).map_err(|e| e.to_string())
}

/// Strict: skipped counts as failure here.
fn require(c: &CheckRecord, ctx: &str) -> Result<(), String> {
    match c.status {
        Status::Pass => Ok(()),
        Status::Skipped => Err(format!("{ctx}: {} skipped: {}", c.name, c.witness.as_deref().unwrap_or(""))),
        Status::Fail => Err(format!("{ctx}: {} failed: {}", c.name, c.witness.as_deref().unwrap_or(""))),
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    if e > limit {
        Err(format!("{what} took {e:.1?}, limit {limit:?}"))
    } else {
        Ok(e)
    }
}

fn golden_b2() -> Outcome {
    let t = Instant::now();
    let fx: Fixture =
        serde_json::from_str(include_str!("fixtures/b2.json")).map_err(|e| format!("fixture: {e}"))?;
    let pl = pipe("B2")?;
    let s = pl.system();

    let p1 = pl.p_matrix(1).map_err(|e| e.to_string())?.p;
    if p1 != matrix2(&fx.p1)? {
        return Err(format!("P_1 = {p1}"));
    }

    let q = &s.defining_poly().poly;
    let q_ref = p2(&fx.q_reference)?;
    let sign = q.is_constant_multiple(&q_ref).ok_or_else(|| format!("Q = {q} is not a multiple of {q_ref}"))?;
    if sign != rat(&fx.q_sign)? || (sign.clone() * sign.clone()) != Rational::from_integer(1.into()) {
        return Err(format!("Q = {sign} * reference"));
    }

    let dx = pl.primitive_dx().map_err(|e| e.to_string())?;
    let den = p2(&fx.dx.den)?;
    for (got, num) in dx.iter().zip(&fx.dx.num) {
        let want = ArrFrac::from_quotient(p2(num)?, &den, s.denominator_factors()).map_err(|e| e.to_string())?;
        if *got != want {
            return Err(format!("D x entry {got}, expected {want}"));
        }
    }

    let lv = pl.level(1).map_err(|e| e.to_string())?;
    let q2 = q.pow(2);
    let scaled = lv.jac.map(|e| e.mul_poly(&q2));
    let want = matrix2(&fx.j_dx_times_q2)?.to_frac();
    if scaled != want {
        return Err(format!("J(D x) Q^2 = {scaled}"));
    }
    let det = verify_det_jdkx(&pl, 1);
    require(&det, "det J(D x)")?;
    if det.value.as_deref() != Some(fx.det_j_dx_times_q2.as_str()) {
        return Err(format!("det J(D x) Q^2 = {:?}", det.value));
    }

    let p3 = pl.p_matrix(3).map_err(|e| e.to_string())?.p;
    let reference = matrix2(&fx.p3_reference)?;
    let c = rat(&fx.p3_constant)?;
    if p3 != reference.map(|e| e.scale(&c)) {
        return Err(format!("P_3 differs from {} * reference: {p3}", fx.p3_constant));
    }
    let d = p3.det().map_err(|e| e.to_string())?;
    let dc = d.is_constant_multiple(&q.pow(3)).ok_or("det P_3 is not a multiple of Q^3")?;
    if dc != rat(&fx.det_p3_over_q3)? {
        return Err(format!("det P_3 = {dc} Q^3"));
    }
    let e = within(t, Duration::from_secs(1), "golden")?;
    Ok(format!("P_1, Q (sign {}), D x, J(D x), P_3 = {} * reference [{e:.0?}]", fx.q_sign, fx.p3_constant))
}

fn det_jdkx() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for (key, k1, k2) in DET_CONSTANTS {
        let pl = pipe(key)?;
        for (k, want) in [(1, k1), (2, k2)] {
            let c = verify_det_jdkx(&pl, k);
            require(&c, &format!("{key} k={k}"))?;
            if c.value.as_deref() != Some(want) {
                return Err(format!("{key} k={k}: constant {:?}, frozen {want}", c.value));
            }
            n += 1;
        }
    }
    let e = within(t, Duration::from_secs(120), "det J(D^k x)")?;
    Ok(format!("{n} constants match [{e:.1?}]"))
}

fn basis_suite() -> Outcome {
    let t = Instant::now();
    let mut flagged = Vec::new();
    for key in SYSTEMS {
        let pl = pipe(key)?;
        for m in 0..=5 {
            let b = pl.p_matrix(m).map_err(|e| format!("{key} m={m}: {e}"))?;
            let ctx = format!("{key} m={m}");
            require(&verify_ziegler(&pl, &b), &ctx)?;
            let mem = verify_membership(&pl, &b);
            require(&mem, &ctx)?;
            if !mem.flags.is_empty() && !flagged.contains(&key) {
                flagged.push(key);
            }
            require(&verify_degrees(&pl, &b), &ctx)?;
        }
    }
    let e = within(t, Duration::from_secs(300), "basis suite")?;
    Ok(format!(
        "{} systems, m = 0..5; orbit-level membership on {} [{e:.1?}]",
        SYSTEMS.len(),
        flagged.join(", ")
    ))
}

fn b_properties() -> Outcome {
    let t = Instant::now();
    for key in ["B2", "B3", "D4", "A3"] {
        let pl = pipe(key)?;
        for k in 1..=3 {
            require(&verify_b_properties(&pl, k), &format!("{key} k={k}"))?;
        }
    }
    Ok(format!("B2, B3, D4, A3 at k = 1..3 [{:.1?}]", t.elapsed()))
}

fn bl_formula() -> Outcome {
    for key in ["B2", "B3", "B4"] {
        require(&verify_bl_formula(&pipe(key)?, 1), key)?;
    }
    Ok("B2, B3, B4".into())
}

fn recursion() -> Outcome {
    let t = Instant::now();
    for key in SYSTEMS {
        let pl = pipe(key)?;
        for m in 0..=5 {
            require(&verify_recursion(&pl, m), &format!("{key} m={m}"))?;
        }
    }
    Ok(format!("{} systems, m = 0..5 [{:.1?}]", SYSTEMS.len(), t.elapsed()))
}

fn jdg() -> Outcome {
    for key in ["B2", "B3"] {
        let pl = pipe(key)?;
        let recs = verify_jdg(&pl, 1).map_err(|e| e.to_string())?;
        if recs.len() != 3 {
            return Err(format!("{key}: {} records", recs.len()));
        }
        for r in &recs {
            require(r, &format!("{key} {}", r.param.as_deref().unwrap_or("")))?;
        }
    }
    Ok("g = x, f, D x on B2, B3".into())
}

fn equivariance() -> Outcome {
    for key in ["B2", "B3", "A2"] {
        let pl = pipe(key)?;
        let c = verify_equivariance(&pl, 2, None);
        require(&c, key)?;
        if !c.flags.is_empty() {
            return Err(format!("{key}: {:?}", c.flags));
        }
    }
    Ok("all generators, k <= 2, on B2, B3, A2".into())
}

fn property_suite() -> Outcome {
    let t = Instant::now();
    for (name, run) in common::SUITE {
        run(1000).map_err(|e| format!("{name}: {e}"))?;
    }
    let e = within(t, Duration::from_secs(60), "property suite")?;
    Ok(format!("{} properties x 1000 cases [{e:.1?}]", common::SUITE.len()))
}

fn nesting() -> Outcome {
    for key in ["B2", "B3"] {
        let pl = pipe(key)?;
        for m in 0..=3 {
            require(&verify_nesting(&pl, m), &format!("{key} m={m}"))?;
        }
    }
    Ok("P_(m+1) in P_m for m = 0..3 on B2, B3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("B2 golden example", golden_b2),
        ("det J(D^k x) Q^2k constant", det_jdkx),
        ("P_m bases for m = 0..5", basis_suite),
        ("B^(k) properties", b_properties),
        ("B_l closed formula", bl_formula),
        ("recursive P_m", recursion),
        ("J(D g) identities", jdg),
        ("equivariance", equivariance),
        ("property suite", property_suite),
        ("nesting", nesting),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
