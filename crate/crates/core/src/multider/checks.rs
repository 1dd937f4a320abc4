//! Certification checks. Each returns a record; a failed identity is a
//! result, never an error.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::Serialize;

use super::numfield::Field;
use super::pipeline::{rat_to_frac, Pipeline};
use super::{BRoute, DerivationBasis};
use crate::coxeter::{symmetric_polys, Family, SymKind};
use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, mat_det_adj, ArrFrac, FracMatrix, Poly, PolyMatrix, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    /// Distinct flags raised by any check, in first-seen order.
    pub fn flags(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for f in self.checks.iter().flat_map(|c| &c.flags) {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Ziegler,
    Membership,
    Degrees,
    DetJdkx,
    Jdg,
    BProperties,
    Equivariance,
    Recursion,
    Nesting,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::Ziegler,
        CheckKind::Membership,
        CheckKind::Degrees,
        CheckKind::DetJdkx,
        CheckKind::Jdg,
        CheckKind::BProperties,
        CheckKind::Equivariance,
        CheckKind::Recursion,
        CheckKind::Nesting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Ziegler => "ziegler",
            CheckKind::Membership => "membership",
            CheckKind::Degrees => "degrees",
            CheckKind::DetJdkx => "det-jdkx",
            CheckKind::Jdg => "jdg",
            CheckKind::BProperties => "b-properties",
            CheckKind::Equivariance => "equivariance",
            CheckKind::Recursion => "recursion",
            CheckKind::Nesting => "nesting",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

#[derive(Default)]
struct Outcome {
    failure: Option<String>,
    skipped: Option<String>,
    value: Option<String>,
    flags: Vec<String>,
}

impl Outcome {
    fn fail(&mut self, w: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(w.into());
        }
    }
}

fn timed(name: &str, param: Option<String>, f: impl FnOnce(&mut Outcome) -> Result<()>) -> CheckRecord {
    let start = Instant::now();
    let mut out = Outcome::default();
    if let Err(e) = f(&mut out) {
        out.fail(e.to_string());
    }
    let status = if out.failure.is_some() {
        Status::Fail
    } else if out.skipped.is_some() {
        Status::Skipped
    } else {
        Status::Pass
    };
    CheckRecord {
        name: name.to_string(),
        param,
        status,
        witness: out.failure.or(out.skipped),
        value: out.value,
        flags: out.flags,
        elapsed: start.elapsed(),
    }
}

fn first_mismatch(a: &FracMatrix, b: &FracMatrix) -> Option<String> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != b.get(i, j) {
                return Some(format!("entry ({}, {}): {} vs {}", i + 1, j + 1, a.get(i, j), b.get(i, j)));
            }
        }
    }
    None
}

fn first_poly_mismatch(a: &PolyMatrix, b: &PolyMatrix) -> Option<String> {
    first_mismatch(&a.to_frac(), &b.to_frac())
}

/// `det P_m = c Q^m` with `c` a nonzero rational.
pub fn verify_ziegler(pipe: &Pipeline, basis: &DerivationBasis) -> CheckRecord {
    timed("ziegler", Some(format!("m={}", basis.m)), |out| {
        let det = basis.p.det()?;
        let q = pipe.system().defining_poly().poly.pow(basis.m as u32);
        match det.is_constant_multiple(&q) {
            Some(c) if !c.is_zero() => out.value = Some(format!("c = {}", format_rational(&c))),
            _ => out.fail(format!("det P_{} = {det}", basis.m)),
        }
        Ok(())
    })
}

/// `theta_j(alpha_H)` divisible by `alpha_H^m` for every hyperplane and column.
pub fn verify_membership(pipe: &Pipeline, basis: &DerivationBasis) -> CheckRecord {
    timed("membership", Some(format!("m={}", basis.m)), |out| {
        let s = pipe.system();
        let l = s.rank();
        let m = basis.m;
        for alpha in s.hyperplanes() {
            let ap = alpha.to_poly();
            for j in 0..l {
                let mut theta = Poly::zero(l);
                for i in 0..l {
                    theta = &theta + &basis.p.get(i, j).scale(alpha.partial(i));
                }
                for _ in 0..m {
                    match theta.divide_exact(&ap)? {
                        Some(q) => theta = q,
                        None => {
                            out.fail(format!("H: {ap} = 0, column {}, residual {theta}", j + 1));
                            return Ok(());
                        }
                    }
                }
            }
        }
        if !s.orbit_factors().is_empty() {
            out.flags.push("orbit-level membership".into());
        }
        for orbit in s.orbit_factors() {
            let k = Field::from_factor(&orbit.factor);
            for j in 0..l {
                let e = basis.degrees[j];
                let mut c = k.theta(basis.p.get(0, j), basis.p.get(1, j), e);
                for _ in 0..m {
                    match k.divide_line(&c) {
                        Ok(q) => c = q,
                        Err(r) => {
                            out.fail(format!(
                                "orbit {} = 0, column {}, remainder {r} mod t-polynomial",
                                orbit.factor.poly(),
                                j + 1
                            ));
                            return Ok(());
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Column `j` homogeneous of degree `kh` (even `m`) or `kh + m_j` (odd `m`).
pub fn verify_degrees(pipe: &Pipeline, basis: &DerivationBasis) -> CheckRecord {
    timed("degrees", Some(format!("m={}", basis.m)), |out| {
        let want = pipe.expected_degrees(basis.m);
        let l = pipe.system().rank();
        for j in 0..l {
            for i in 0..l {
                let e = basis.p.get(i, j);
                if !e.is_zero() && e.homogeneous_degree() != Some(want[j]) {
                    out.fail(format!("entry ({}, {}) = {e}, expected degree {}", i + 1, j + 1, want[j]));
                    return Ok(());
                }
            }
        }
        out.value = Some(format!("{want:?}"));
        Ok(())
    })
}

/// `det J(D^k x) * Q^{2k}` is a nonzero constant. Also checks that every
/// nonzero entry of `J(D^k x)` has degree `-kh` and that the cached inverse
/// really is one.
pub fn verify_det_jdkx(pipe: &Pipeline, k: usize) -> CheckRecord {
    timed("det-jdkx", Some(format!("k={k}")), |out| {
        let lv = pipe.level(k)?;
        let s = pipe.system();
        let h = s.coxeter_number() as i64;
        let q = ArrFrac::from_poly(s.defining_poly().poly.pow(2 * k as u32));
        let prod = lv.det.mul(&q);
        match prod.constant_value() {
            Some(c) if !c.is_zero() => out.value = Some(format_rational(&c)),
            _ => out.fail(format!("det * Q^{} = {prod}", 2 * k)),
        }
        for (idx, e) in lv.jac.entries().iter().enumerate() {
            if !e.is_zero() && e.degree() != Some(-(k as i64) * h) {
                let l = s.rank();
                out.fail(format!("J entry ({}, {}) = {e} has degree {:?}", idx / l + 1, idx % l + 1, e.degree()));
            }
        }
        let id = lv.jac.mul(&lv.jac_inv);
        if let Some(w) = first_mismatch(&id, &FracMatrix::identity(s.rank(), s.rank())) {
            out.fail(format!("J * J^-1 != I at {w}"));
        }
        Ok(())
    })
}

/// The four identities for `D` acting on Jacobians, for one vector `g`.
pub fn verify_jdg_identities(pipe: &Pipeline, g: &[ArrFrac], label: &str) -> CheckRecord {
    jdg_with(pipe, g, label, None)
}

/// As above; `known_inv`, if given, is a certified `J(g)^{-1}`.
fn jdg_with(pipe: &Pipeline, g: &[ArrFrac], label: &str, known_inv: Option<FracMatrix>) -> CheckRecord {
    timed("jdg", Some(format!("g={label}")), |out| {
        let jg = pipe.jacobian(g);
        let dg: Vec<ArrFrac> = g.iter().map(|p| pipe.apply_d(p)).collect::<Result<_>>()?;
        let jdg = pipe.jacobian(&dg);
        let jdx = pipe.level(1)?.jac.clone();
        let djg = pipe.apply_d_matrix(&jg)?;
        let jf = pipe.jf().to_frac();

        if let Some(w) = first_mismatch(&jdg, &jdx.mul(&jg).add(&djg)) {
            out.fail(format!("(i) {w}"));
        }
        let djf = pipe.apply_d_matrix(&jf)?;
        if let Some(w) = first_mismatch(&djf, &jdx.mul(&jf).neg()) {
            out.fail(format!("(iii) {w}"));
        }
        let inv = match known_inv {
            Some(inv) => inv,
            None => {
                let (det, adj) = mat_det_adj(&jg)?;
                if det.is_zero() {
                    out.skipped = Some("J(g) singular; (ii) and (iv) skipped".into());
                    return Ok(());
                }
                let factors = pipe.system().denominator_factors();
                adj.try_map(|x| x.div_in(&det, factors))?
            }
        };
        let lhs = pipe.apply_d_matrix(&inv)?;
        if let Some(w) = first_mismatch(&lhs, &inv.mul(&djg).mul(&inv).neg()) {
            out.fail(format!("(ii) {w}"));
        }
        let inv_jf = inv.mul(&jf);
        let lhs = pipe.apply_d_matrix(&inv_jf)?;
        if let Some(w) = first_mismatch(&lhs, &inv.mul(&jdg).mul(&inv_jf).neg()) {
            out.fail(format!("(iv) {w}"));
        }
        Ok(())
    })
}

/// The identities for `g = x`, `g = f` and `g = D^k x`.
pub fn verify_jdg(pipe: &Pipeline, k: usize) -> Result<Vec<CheckRecord>> {
    let s = pipe.system();
    let x = pipe.iterate_dkx(0)?;
    let f: Vec<ArrFrac> = s.invariants().iter().cloned().map(ArrFrac::from_poly).collect();
    let lv = pipe.level(k)?;
    let label = match k {
        0 => "x".to_string(),
        1 => "Dx".to_string(),
        _ => format!("D^{k}x"),
    };
    Ok(vec![
        jdg_with(pipe, &x, "x", Some(pipe.level(0)?.jac_inv.clone())),
        jdg_with(pipe, &f, "f", Some(pipe.jf_inverse()?)),
        jdg_with(pipe, &lv.dkx, &label, Some(lv.jac_inv.clone())),
    ])
}

fn is_d_even(pipe: &Pipeline) -> bool {
    let s = pipe.system();
    s.family() == Family::D && s.rank() % 2 == 0
}

/// Zero pattern, anti-diagonal constants and, for the `D_{2p}` block, the
/// central 2x2 block. `rel` additionally demands `m_i B_ij = m_j B_ji` on the
/// anti-diagonal.
fn check_shape(pipe: &Pipeline, b: &PolyMatrix, tag: &str, rel: bool, out: &mut Outcome) {
    let s = pipe.system();
    let l = s.rank();
    let ex = s.exponents();
    let block = if is_d_even(pipe) { Some((l / 2 - 1, l / 2)) } else { None };
    let in_block = |i: usize, j: usize| block.is_some_and(|(a, c)| (i == a || i == c) && (j == a || j == c));
    for i in 0..l {
        for j in 0..l {
            if in_block(i, j) {
                continue;
            }
            let e = b.get(i, j);
            if i + j + 2 < l + 1 && !e.is_zero() {
                out.fail(format!("{tag} ({}, {}) = {e}, expected 0", i + 1, j + 1));
            }
            if i + j + 2 == l + 1 {
                match e.constant_value() {
                    Some(c) if !c.is_zero() => {
                        if rel {
                            let other = b.get(j, i).constant_value().unwrap_or_default();
                            let lhs = Rational::from_integer(ex[i].into()) * &c;
                            let rhs = Rational::from_integer(ex[j].into()) * &other;
                            if lhs != rhs {
                                out.fail(format!("{tag}: m_{0} B_{0}{1} = {lhs} but m_{1} B_{1}{0} = {rhs}", i + 1, j + 1));
                            }
                        }
                    }
                    _ => out.fail(format!("{tag} anti-diagonal ({}, {}) = {e}", i + 1, j + 1)),
                }
            }
        }
    }
}

fn block_of(b: &PolyMatrix, a: usize) -> Option<RatMatrix> {
    let rows: Option<Vec<Vec<Rational>>> = [a, a + 1]
        .iter()
        .map(|&i| [a, a + 1].iter().map(|&j| b.get(i, j).constant_value()).collect())
        .collect();
    RatMatrix::from_rows(0, rows?).ok()
}

/// Properties of `B^(1)`, `B^(k)` and `B^(k+1)` for `k >= 1`.
pub fn verify_b_properties(pipe: &Pipeline, k: usize) -> CheckRecord {
    timed("b-properties", Some(format!("k={k}")), |out| {
        if k == 0 {
            return Err(Error::Dimension("b-properties needs k >= 1".into()));
        }
        let s = pipe.system();
        let l = s.rank();
        let h = s.coxeter_number() as i64;
        let ex = s.exponents();
        let b1 = pipe.b_matrix(1, BRoute::Definition)?.b;
        let bk = pipe.b_matrix(k, BRoute::Definition)?.b;
        let bk1 = pipe.b_matrix(k + 1, BRoute::Definition)?.b;
        let mats = [(1, &b1), (k, &bk), (k + 1, &bk1)];

        for (kk, b) in mats {
            for i in 0..l {
                for j in 0..l {
                    let e = b.get(i, j);
                    let want = ex[i] as i64 + ex[j] as i64 - h;
                    if !e.is_zero() && e.homogeneous_degree().map(i64::from) != Some(want) {
                        out.fail(format!("B^({kk}) ({}, {}) = {e}, expected degree {want}", i + 1, j + 1));
                    }
                }
            }
        }
        for (gi, g) in s.generator_rows().iter().enumerate() {
            for (kk, b) in mats {
                let gb = b.substitute_linear(g)?;
                if let Some(w) = first_poly_mismatch(&gb, b) {
                    out.fail(format!("B^({kk}) not fixed by generator {}: {w}", gi + 1));
                }
            }
        }
        if !s.generators_complete() {
            out.flags.push("partial generator set".into());
        }
        if let Some(w) = first_poly_mismatch(&bk1.sub(&bk), &b1.add(&b1.transpose())) {
            out.fail(format!("B^({}) - B^({k}) != B^(1) + B^(1)^T: {w}", k + 1));
        }
        let closed = pipe.b_matrix(k + 1, BRoute::ClosedForm)?.b;
        if let Some(w) = first_poly_mismatch(&bk1, &closed) {
            out.fail(format!("B^({}) differs from its closed form: {w}", k + 1));
        }
        check_shape(pipe, &b1, "B^(1)", true, out);
        check_shape(pipe, &bk, &format!("B^({k})"), false, out);
        check_shape(pipe, &bk1, &format!("B^({})", k + 1), false, out);
        if is_d_even(pipe) {
            let a = l / 2 - 1;
            match (block_of(&b1, a), block_of(&bk1, a)) {
                (Some(b0), Some(bb)) => {
                    if b0.get(0, 1) != b0.get(1, 0) {
                        out.fail(format!("central block of B^(1) not symmetric: {b0:?}"));
                    }
                    if b0.det()?.is_zero() {
                        out.fail("central block of B^(1) is singular");
                    }
                    let c = Rational::from_integer((2 * k as i64 + 1).into());
                    if bb != b0.scale(&c) {
                        out.fail(format!("central block of B^({}) is not {c} B_0", k + 1));
                    }
                }
                _ => out.fail("central block is not constant"),
            }
        }
        let mut dets = Vec::new();
        for (kk, b) in mats {
            let d = b.det()?;
            match d.constant_value() {
                Some(c) if !c.is_zero() => dets.push(format!("det B^({kk}) = {}", format_rational(&c))),
                _ => out.fail(format!("det B^({kk}) = {d}")),
            }
        }
        dets.dedup();
        out.value = Some(dets.join(", "));
        Ok(())
    })
}

/// `B^(1)_ij = (2j-1) h_{i+j-l-1}` and, for `k >= 2`,
/// `B^(k)_ij = (k(2i+2j-2) - 2i + 1) h_{i+j-l-1}`, with `h` the complete
/// symmetric polynomials in the squares. Type B only.
pub fn verify_bl_formula(pipe: &Pipeline, k: usize) -> CheckRecord {
    timed("bl-formula", Some(format!("k={k}")), |out| {
        let s = pipe.system();
        if s.family() != Family::B {
            out.skipped = Some(format!("{} is not of type B", s.key()));
            return Ok(());
        }
        let l = s.rank();
        let b = pipe.b_matrix(k, BRoute::Definition)?.b;
        for i in 1..=l {
            for j in 1..=l {
                let c = if k == 1 {
                    2 * j as i64 - 1
                } else {
                    k as i64 * (2 * i as i64 + 2 * j as i64 - 2) - 2 * i as i64 + 1
                };
                let ht = symmetric_polys(SymKind::CompleteSq, i as i64 + j as i64 - l as i64 - 1, l);
                let want = ht.scale(&Rational::from_integer(c.into()));
                if b.get(i - 1, j - 1) != &want {
                    out.fail(format!("B^({k}) ({i}, {j}) = {}, formula gives {want}", b.get(i - 1, j - 1)));
                    return Ok(());
                }
            }
        }
        Ok(())
    })
}

/// `g[J(f)] = rho^{-1} J(f)`, `g[J(D^j x)] = rho^{-1} J(D^j x) rho` for
/// `j <= k`, and `g[P_{2j+1}] = rho^T P_{2j+1}` for `j <= k`. With `m` given,
/// also `g[P_m]` (for even `m`, `g[P_m] = rho^T P_m rho`).
pub fn verify_equivariance(pipe: &Pipeline, k: usize, m: Option<usize>) -> CheckRecord {
    timed("equivariance", Some(format!("k={k}")), |out| {
        let s = pipe.system();
        let l = s.rank();
        let jf = pipe.jf().to_frac();
        let mut odd: Vec<usize> = (0..=k).map(|j| 2 * j + 1).collect();
        let mut even = Vec::new();
        if let Some(m) = m {
            if m % 2 == 1 && !odd.contains(&m) {
                odd.push(m);
            } else if m % 2 == 0 {
                even.push(m);
            }
        }
        let kmax = odd.iter().chain(&even).map(|m| m / 2).max().unwrap_or(0).max(k);
        let levels: Vec<_> = (0..=kmax).map(|j| pipe.level(j)).collect::<Result<_>>()?;
        let podd: Vec<_> = odd.iter().map(|&m| pipe.p_matrix(m)).collect::<Result<_>>()?;
        let peven: Vec<_> = even.iter().map(|&m| pipe.p_matrix(m)).collect::<Result<_>>()?;
        for (gi, (g, rows)) in s.generators().iter().zip(s.generator_rows()).enumerate() {
            let rho = rat_to_frac(g, l);
            let rho_inv = rat_to_frac(&g.inverse()?, l);
            let rho_t = g.transpose().to_poly(l);
            let tag = gi + 1;
            if let Some(w) = first_mismatch(&jf.substitute_linear(&rows)?, &rho_inv.mul(&jf)) {
                out.fail(format!("generator {tag}: g[J(f)] {w}"));
            }
            for lv in levels.iter().take(k + 1) {
                let lhs = lv.jac.substitute_linear(&rows)?;
                if let Some(w) = first_mismatch(&lhs, &rho_inv.mul(&lv.jac).mul(&rho)) {
                    out.fail(format!("generator {tag}: g[J(D^{} x)] {w}", lv.k));
                }
            }
            for b in &podd {
                let lhs = b.p.substitute_linear(&rows)?;
                if let Some(w) = first_poly_mismatch(&lhs, &rho_t.mul(&b.p)) {
                    out.fail(format!("generator {tag}: g[P_{}] {w}", b.m));
                }
            }
            for b in &peven {
                let lhs = b.p.substitute_linear(&rows)?;
                let rho_p = g.to_poly(l);
                if let Some(w) = first_poly_mismatch(&lhs, &rho_t.mul(&b.p).mul(&rho_p)) {
                    out.fail(format!("generator {tag}: g[P_{}] {w}", b.m));
                }
            }
        }
        if !s.generators_complete() {
            out.flags.push("partial generator set".into());
        }
        Ok(())
    })
}

/// The recursive route reproduces `P_m` exactly.
pub fn verify_recursion(pipe: &Pipeline, m: usize) -> CheckRecord {
    timed("recursion", Some(format!("m={m}")), |out| {
        let a = pipe.p_matrix(m)?;
        let b = pipe.p_matrix_recursive(m)?;
        if let Some(w) = first_poly_mismatch(&a.p, &b.p) {
            out.fail(w);
        }
        Ok(())
    })
}

/// Each column of `P_{m+1}` has polynomial coordinates in the basis `P_m`.
///
/// `P_m^{-1}` is taken as `J(f)^{-1} J(D^k x) G^{-1}` (the `J(f)^{-1}` only
/// for odd `m`) and certified by `P_m P_m^{-1} = I` before use.
pub fn verify_nesting(pipe: &Pipeline, m: usize) -> CheckRecord {
    timed("nesting", Some(format!("m={m}")), |out| {
        let s = pipe.system();
        let l = s.rank();
        let pm = pipe.p_matrix(m)?.p.to_frac();
        let pn = pipe.p_matrix(m + 1)?.p.to_frac();
        let gram_inv = rat_to_frac(&s.gram().inverse()?, l);
        let mut inv = pipe.level(m / 2)?.jac.mul(&gram_inv);
        if m % 2 == 1 {
            inv = pipe.jf_inverse()?.mul(&inv);
        }
        if let Some(w) = first_mismatch(&pm.mul(&inv), &FracMatrix::identity(l, l)) {
            out.fail(format!("P_m^-1 candidate rejected: {w}"));
            return Ok(());
        }
        let coords = inv.mul(&pn);
        for i in 0..l {
            for j in 0..l {
                let c = coords.get(i, j);
                if !c.is_polynomial() {
                    out.fail(format!("coordinate {} of column {} = {c}", i + 1, j + 1));
                    return Ok(());
                }
            }
        }
        Ok(())
    })
}

/// Runs the selected checks for `P_m` and reports them in a fixed order.
pub fn run_checks(pipe: &Pipeline, m: usize, kinds: &[CheckKind]) -> VerificationReport {
    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    let mut checks = Vec::new();
    let k = m / 2;
    let basis = if kinds
        .iter()
        .any(|c| matches!(c, CheckKind::Ziegler | CheckKind::Membership | CheckKind::Degrees))
    {
        Some(pipe.p_matrix(m))
    } else {
        None
    };
    for kind in kinds {
        match kind {
            CheckKind::Ziegler | CheckKind::Membership | CheckKind::Degrees => {
                match basis.as_ref().unwrap() {
                    Ok(b) => checks.push(match kind {
                        CheckKind::Ziegler => verify_ziegler(pipe, b),
                        CheckKind::Membership => verify_membership(pipe, b),
                        _ => verify_degrees(pipe, b),
                    }),
                    Err(e) => checks.push(timed(kind.name(), Some(format!("m={m}")), |_| Err(e.clone()))),
                }
            }
            CheckKind::DetJdkx => {
                for j in 0..=k {
                    checks.push(verify_det_jdkx(pipe, j));
                }
            }
            CheckKind::Jdg => match verify_jdg(pipe, 1) {
                Ok(v) => checks.extend(v),
                Err(e) => checks.push(timed("jdg", None, |_| Err(e))),
            },
            CheckKind::BProperties => checks.push(verify_b_properties(pipe, k.max(1))),
            CheckKind::Equivariance => checks.push(verify_equivariance(pipe, k, Some(m))),
            CheckKind::Recursion => checks.push(verify_recursion(pipe, m)),
            CheckKind::Nesting => checks.push(verify_nesting(pipe, m)),
        }
    }
    VerificationReport {
        system: pipe.system().key().to_string(),
        m: Some(m),
        k: None,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::lookup;

    fn pipe(key: &str) -> Pipeline {
        Pipeline::new(lookup(key).unwrap())
    }

    #[test]
    fn b2_all_checks_pass() {
        let pl = pipe("B2");
        let r = run_checks(&pl, 3, &CheckKind::ALL);
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
        }
        let z = r.checks.iter().find(|c| c.name == "ziegler").unwrap();
        assert!(z.value.is_some());
    }

    #[test]
    fn det_constants() {
        let pl = pipe("B2");
        assert_eq!(verify_det_jdkx(&pl, 0).value.as_deref(), Some("1/1"));
        // the canonical Q is -(x1 x2^3 - x1^3 x2); even powers do not care
        assert_eq!(verify_det_jdkx(&pl, 1).value.as_deref(), Some("-3/1"));
        assert_eq!(verify_det_jdkx(&pl, 2).value.as_deref(), Some("105/1"));
    }

    #[test]
    fn membership_m0_and_witness() {
        let pl = pipe("B2");
        let b0 = pl.p_matrix(0).unwrap();
        assert!(verify_membership(&pl, &b0).passed());
        // P_1 columns are not in D^(2)
        let mut b1 = pl.p_matrix(1).unwrap();
        b1.m = 2;
        let r = verify_membership(&pl, &b1);
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.unwrap().contains("column"));
    }

    #[test]
    fn dihedral_orbit_membership() {
        let pl = pipe("I2(5)");
        for m in 0..=3 {
            let b = pl.p_matrix(m).unwrap();
            let r = verify_membership(&pl, &b);
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.flags, vec!["orbit-level membership".to_string()]);
        }
        let mut b = pl.p_matrix(1).unwrap();
        b.m = 2;
        assert_eq!(verify_membership(&pl, &b).status, Status::Fail);
    }

    #[test]
    fn jdg_singular_skips() {
        let pl = pipe("B2");
        let g = vec![ArrFrac::one(2), ArrFrac::one(2)];
        let r = verify_jdg_identities(&pl, &g, "const");
        assert_eq!(r.status, Status::Skipped);
    }

    #[test]
    fn check_names_parse() {
        for c in CheckKind::ALL {
            assert_eq!(c.name().parse::<CheckKind>().unwrap(), c);
        }
        assert!("bogus".parse::<CheckKind>().is_err());
    }
}
