//! Randomized algebraic properties shared by the property and acceptance
//! targets. Each runner returns the first counterexample as a string.

#![allow(dead_code)]

use multider::coxeter::lookup;
use multider::exactpoly::{
    frac_arith, mat_det_adj, ratio, ArrFrac, Denominator, Factor, FracMatrix, FracOp, Poly, PolyMatrix, Rational,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

const MAX_VARS: usize = 5;
const MAX_DEG: u32 = 6;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

/// Exponent vectors of total degree at most `max`.
fn exps(nvars: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, nvars).prop_map(move |mut e| {
        while e.iter().sum::<u32>() > max {
            let i = e.iter().position(|&x| x > 0).unwrap();
            e[i] -= 1;
        }
        e
    })
}

fn poly_in(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((exps(nvars, max_deg), coeff()), 0..=max_terms).prop_map(move |ts| {
        let ts: Vec<_> = ts.into_iter().collect();
        Poly::from_exponent_terms(nvars, &ts).unwrap()
    })
}

fn homogeneous(nvars: usize, d: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((exps(nvars, d), coeff()), 1..=6).prop_map(move |ts| {
        let ts: Vec<_> = ts
            .into_iter()
            .map(|(mut e, c)| {
                let s: u32 = e.iter().sum();
                e[nvars - 1] += d - s;
                (e, c)
            })
            .collect();
        Poly::from_exponent_terms(nvars, &ts).unwrap()
    })
}

fn polys(k: usize) -> impl Strategy<Value = (usize, Vec<Poly>)> {
    (1..=MAX_VARS).prop_flat_map(move |n| (Just(n), prop::collection::vec(poly_in(n, MAX_DEG, 5), k)))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&polys(3), |(_, v)| {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        check(&(a + b) + c == a + &(b + c), || "additive associativity".into())?;
        check(&(a * b) * c == a * &(b * c), || "multiplicative associativity".into())?;
        check(a * &(b + c) == &(a * b) + &(a * c), || "distributivity".into())?;
        check(a + b == b + a, || "additive commutativity".into())?;
        check(a * b == b * a, || "multiplicative commutativity".into())?;
        check((a + &a.neg()).is_zero(), || "a + (-a)".into())
    }))
}

pub fn partials_commute(cases: u32) -> Result<(), String> {
    let s = polys(1).prop_flat_map(|(n, v)| (Just(v), 0..n, 0..n));
    finish(runner(cases).run(&s, |(v, i, j)| {
        let p = &v[0];
        check(p.partial(i).partial(j) == p.partial(j).partial(i), || format!("d{i} d{j}"))
    }))
}

pub fn leibniz(cases: u32) -> Result<(), String> {
    let s = polys(2).prop_flat_map(|(n, v)| (Just(v), 0..n));
    finish(runner(cases).run(&s, |(v, i)| {
        let (a, b) = (&v[0], &v[1]);
        let lhs = (a * b).partial(i);
        let rhs = &(a * &b.partial(i)) + &(b * &a.partial(i));
        check(lhs == rhs, || format!("d{i}(ab)"))
    }))
}

pub fn euler(cases: u32) -> Result<(), String> {
    let s = (1..=MAX_VARS, 0..=MAX_DEG).prop_flat_map(|(n, d)| (Just(n), Just(d), homogeneous(n, d)));
    finish(runner(cases).run(&s, |(n, d, p)| {
        let sum = (0..n).fold(Poly::zero(n), |acc, i| &acc + &(&Poly::var(n, i) * &p.partial(i)));
        check(sum == p.scale(&ratio(d as i64, 1)), || format!("degree {d}: {p}"))
    }))
}

pub fn adjugate_round_trip(cases: u32) -> Result<(), String> {
    let s = (1..=3usize, 2..=3usize)
        .prop_flat_map(|(nv, n)| (Just(nv), Just(n), prop::collection::vec(poly_in(nv, 3, 3), n * n)));
    finish(runner(cases).run(&s, |(nv, n, entries)| {
        let rows: Vec<Vec<ArrFrac>> = entries.chunks(n).map(|r| r.iter().cloned().map(ArrFrac::from).collect()).collect();
        let m = FracMatrix::from_rows(nv, rows).unwrap();
        let (det, adj) = mat_det_adj(&m).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let id = PolyMatrix::identity(nv, n).to_frac().scale(&det);
        check(m.mul(&adj) == id, || "M adj != det I".into())?;
        check(adj.mul(&m) == id, || "adj M != det I".into())?;
        check(m.det().ok() == Some(det.clone()), || "det disagrees".into())
    }))
}

pub fn divide_round_trip(cases: u32) -> Result<(), String> {
    let s = polys(2);
    finish(runner(cases).run(&s, |(_, v)| {
        let (a, b) = (&v[0], &v[1]);
        if b.is_zero() {
            return Ok(());
        }
        let prod = a * b;
        let q = prod.divide_exact(b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(q.as_ref() == Some(a), || "product not divisible".into())?;
        if let Ok(Some(q)) = a.divide_exact(b) {
            check(&q * b == *a, || "quotient does not round-trip".into())?;
        }
        Ok(())
    }))
}

/// Random fractions over the B3 arrangement, combined by every field
/// operation; every result must be fully reduced and agree with the
/// cross-multiplied polynomial identity.
pub fn denominator_reduction(cases: u32) -> Result<(), String> {
    let sys = lookup("B3").unwrap();
    let forms: Vec<Factor> = sys.hyperplanes().iter().map(Factor::from).collect();
    let nf = forms.len();
    let frac = move || {
        (
            poly_in(3, 4, 4),
            prop::collection::vec(0..nf, 0..=3),
            prop::collection::vec((0..nf, 1u32..=3), 0..=3),
        )
    };
    let forms2 = forms.clone();
    let build = move |(p, mult, den): (Poly, Vec<usize>, Vec<(usize, u32)>)| {
        let num = mult.iter().fold(p, |acc, &i| &acc * forms2[i].poly());
        let mut d = Denominator::new();
        for (i, e) in den {
            *d.entry(forms2[i].clone()).or_insert(0) += e;
        }
        (num.clone(), d.clone(), ArrFrac::new(num, d))
    };
    let b2 = build.clone();
    let s = (frac().prop_map(build), frac().prop_map(b2), 0..4u8);
    finish(runner(cases).run(&s, |((an, ad, a), (bn, bd, b), op)| {
        check(a.is_reduced() && b.is_reduced(), || "constructor left a common factor".into())?;
        let ap = multider::exactpoly::den_poly(3, &ad);
        let bp = multider::exactpoly::den_poly(3, &bd);
        check(a.num() * &ap == &an * &a.den_poly(), || "constructor changed the value".into())?;
        let op = [FracOp::Add, FracOp::Sub, FracOp::Mul, FracOp::Div][op as usize].clone();
        let r = match frac_arith(&a, &b, op.clone()) {
            Ok(r) => r,
            Err(_) if matches!(op, FracOp::Div) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        check(r.is_reduced(), || format!("{op:?} result not reduced: {r}"))?;
        // r = x / y as polynomials: r.num * y == x * r.den
        let (x, y) = match op {
            FracOp::Add => (&(&an * &bp) + &(&bn * &ap), &ap * &bp),
            FracOp::Sub => (&(&an * &bp) - &(&bn * &ap), &ap * &bp),
            FracOp::Mul => (&an * &bn, &ap * &bp),
            FracOp::Div => (&an * &bp, &ap * &bn),
        };
        check(r.num() * &y == &x * &r.den_poly(), || format!("{op:?} value mismatch"))
    }))
}

pub type Property = fn(u32) -> Result<(), String>;

pub const SUITE: &[(&str, Property)] = &[
    ("ring-axioms", ring_axioms),
    ("partials-commute", partials_commute),
    ("leibniz", leibniz),
    ("euler", euler),
    ("adjugate-round-trip", adjugate_round_trip),
    ("divide-round-trip", divide_round_trip),
    ("denominator-reduction", denominator_reduction),
];
