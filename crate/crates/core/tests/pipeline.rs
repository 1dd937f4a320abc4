use multider::coxeter::{catalog_keys, jacobian_of, lookup, CoxeterSystem};
use multider::exactpoly::{ratio, ArrFrac, Poly};
use multider::multider::{
    run_checks, verify_det_jdkx, BRoute, CheckKind, Pipeline, Status,
};
use multider::serial::frac_record;
use proptest::prelude::*;

fn systems(max_rank: usize) -> Vec<CoxeterSystem> {
    catalog_keys()
        .iter()
        .map(|k| lookup(k).unwrap())
        .filter(|s| s.rank() <= max_rank)
        .collect()
}

#[test]
fn catalog_invariants() {
    for s in systems(usize::MAX) {
        let key = s.key();
        let ex = s.exponents();
        let l = s.rank();
        assert_eq!(ex.iter().sum::<u32>() as usize, s.hyperplane_count(), "{key}");
        assert_eq!(s.coxeter_number(), ex[l - 1] + 1, "{key}");
        for i in 0..l {
            assert_eq!(ex[i] + ex[l - 1 - i], s.coxeter_number(), "{key} duality");
            assert_eq!(s.invariants()[i].homogeneous_degree(), Some(ex[i] + 1), "{key} deg f{}", i + 1);
        }
        let gram = s.gram();
        assert_eq!(gram, &gram.transpose(), "{key} gram symmetric");
        for (g, rows) in s.generators().iter().zip(s.generator_rows()) {
            for f in s.invariants() {
                assert_eq!(&f.substitute_linear(&rows).unwrap(), f, "{key} invariant moved");
            }
            assert_eq!(&g.transpose().mul(gram).mul(g), gram, "{key} gram not preserved");
        }
        let det = jacobian_of(s.invariants()).det().unwrap();
        assert!(det.is_constant_multiple(&s.defining_poly().poly).is_some(), "{key} det J(f)");
    }
}

/// Ziegler, membership and degrees for every system of rank at most 4 and
/// m up to 5; one test per family so they run in parallel.
fn sweep(prefix: &str) {
    let kinds = [CheckKind::Ziegler, CheckKind::Membership, CheckKind::Degrees];
    for s in systems(4).into_iter().filter(|s| s.key().starts_with(prefix)) {
        let key = s.key().to_string();
        let pl = Pipeline::new(s);
        for m in 0..=5 {
            let r = run_checks(&pl, m, &kinds);
            for c in &r.checks {
                assert_eq!(c.status, Status::Pass, "{key} m={m}: {c:?}");
            }
        }
    }
}

#[test]
fn sweep_type_a() {
    sweep("A");
}

#[test]
fn sweep_type_b() {
    sweep("B");
}

#[test]
fn sweep_type_d() {
    sweep("D");
}

#[test]
fn sweep_dihedral() {
    sweep("I2");
}

#[test]
fn det_constants_are_stable() {
    for s in systems(3) {
        let key = s.key().to_string();
        let a = Pipeline::new(s.clone());
        let b = Pipeline::new(s);
        for k in 0..=2 {
            let (x, y) = (verify_det_jdkx(&a, k), verify_det_jdkx(&b, k));
            assert_eq!(x.status, Status::Pass, "{key} k={k}: {x:?}");
            assert_eq!(x.value, y.value, "{key} k={k}");
        }
    }
}

#[test]
fn recursion_matches_direct() {
    for s in systems(3) {
        let key = s.key().to_string();
        let pl = Pipeline::new(s);
        for m in 0..=5 {
            assert_eq!(pl.p_matrix_recursive(m).unwrap(), pl.p_matrix(m).unwrap(), "{key} m={m}");
        }
    }
}

#[test]
fn b_routes_agree() {
    for s in systems(3) {
        let key = s.key().to_string();
        let pl = Pipeline::new(s);
        for k in 1..=3 {
            let a = pl.b_matrix(k, BRoute::Definition).unwrap();
            let b = pl.b_matrix(k, BRoute::ClosedForm).unwrap();
            assert_eq!(a, b, "{key} k={k}");
        }
    }
}

#[test]
fn jacobian_entry_degrees() {
    for s in systems(3) {
        let key = s.key().to_string();
        let h = s.coxeter_number() as i64;
        let pl = Pipeline::new(s);
        for k in 0..=2 {
            let lv = pl.level(k).unwrap();
            for e in lv.jac.entries().iter().filter(|e| !e.is_zero()) {
                assert_eq!(e.degree(), Some(-(k as i64) * h), "{key} k={k}: {e}");
            }
        }
    }
}

#[test]
fn memo_matches_uncached() {
    for key in ["A3", "B3", "I2(5)"] {
        let pl = Pipeline::new(lookup(key).unwrap());
        for k in 0..=2 {
            let a: Vec<_> = pl.iterate_dkx(k).unwrap().iter().map(frac_record).collect();
            let b: Vec<_> = pl.iterate_dkx_uncached(k).unwrap().iter().map(frac_record).collect();
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{key} k={k}");
        }
    }
}

#[test]
fn full_report_b3() {
    let pl = Pipeline::new(lookup("B3").unwrap());
    for m in 1..=4 {
        let r = run_checks(&pl, m, &CheckKind::ALL);
        assert!(r.all_pass(), "{r:?}");
        assert!(r.flags().is_empty());
    }
}

#[test]
fn dihedral_flags_orbit_membership() {
    let pl = Pipeline::new(lookup("I2(5)").unwrap());
    let r = run_checks(&pl, 2, &[CheckKind::Membership]);
    assert!(r.all_pass());
    assert!(r.flags().iter().any(|f| f == "orbit-level membership"));
    let pl = Pipeline::new(lookup("I2(4)").unwrap());
    let r = run_checks(&pl, 2, &[CheckKind::Membership]);
    assert!(r.flags().is_empty());
}

const SMALL: [&str; 4] = ["A2", "B2", "B3", "I2(5)"];

fn homogeneous_frac() -> impl Strategy<Value = (usize, ArrFrac)> {
    (0..SMALL.len(), 0..=6u32, 0..=1u32).prop_flat_map(|(si, d, j)| {
        let l = lookup(SMALL[si]).unwrap().rank();
        let terms = prop::collection::vec((prop::collection::vec(0..=d, l - 1), -5i64..=5), 1..=4);
        (Just(si), Just(d), Just(j), terms)
    })
    .prop_map(|(si, d, j, terms)| {
        let s = lookup(SMALL[si]).unwrap();
        let l = s.rank();
        let ts: Vec<(Vec<u32>, _)> = terms
            .into_iter()
            .map(|(mut e, c)| {
                while e.iter().sum::<u32>() > d {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                let rest = d - e.iter().sum::<u32>();
                e.push(rest);
                (e, ratio(c, 1))
            })
            .collect();
        let num = Poly::from_exponent_terms(l, &ts).unwrap();
        let q = s.defining_poly().poly.pow(j);
        (si, ArrFrac::from_quotient(num, &q, s.denominator_factors()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn d_lowers_degree_by_h((si, p) in homogeneous_frac()) {
        let pl = Pipeline::new(lookup(SMALL[si]).unwrap());
        let h = pl.system().coxeter_number() as i64;
        let dp = pl.apply_d(&p).unwrap();
        if !dp.is_zero() {
            prop_assert_eq!(dp.degree(), Some(p.degree().unwrap() - h));
        }
    }
}
