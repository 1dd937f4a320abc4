//! The primitive derivation, its iterates on the coordinates, and the
//! matrices `P_m` and `B^(k)` built from them.

use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::coxeter::{jacobian_of, CoxeterSystem};
use crate::error::{Error, Result};
use crate::exactpoly::{mat_det_adj, ArrFrac, FracMatrix, Poly, PolyMatrix, RatMatrix, Rational};

use super::{BMatrix, BRoute, DerivationBasis};

/// Deliberate defects for negative-control tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Every derivative by `x_1` has its sign flipped.
    NegateFirstPartial,
}

/// Everything known about `D^k x` for one `k`.
#[derive(Debug)]
pub struct Level {
    pub k: usize,
    pub dkx: Vec<ArrFrac>,
    /// `J(D^k x)`.
    pub jac: FracMatrix,
    /// `J(D^k x)^{-1}`.
    pub jac_inv: FracMatrix,
    /// `det J(D^k x)`.
    pub det: ArrFrac,
    /// `B^(k)` by its definition, for `k >= 1`, before any polynomiality check.
    pub b_def: Option<FracMatrix>,
}

/// Pipeline state for one system. Results for `D^k x` are cached per `k`;
/// reads may happen concurrently, new levels are built under a lock.
pub struct Pipeline {
    system: Arc<CoxeterSystem>,
    fault: Option<Fault>,
    jf: PolyMatrix,
    jf_inv: OnceLock<FracMatrix>,
    dx: OnceLock<Vec<ArrFrac>>,
    b1: OnceLock<PolyMatrix>,
    levels: RwLock<Vec<Arc<Level>>>,
    build: Mutex<()>,
}

pub(crate) fn rat_to_frac(m: &RatMatrix, nvars: usize) -> FracMatrix {
    m.to_poly(nvars).to_frac()
}

fn violation(what: &str, witness: impl ToString) -> Error {
    Error::TheoremViolation {
        what: what.to_string(),
        witness: witness.to_string(),
    }
}

impl Pipeline {
    pub fn new(system: CoxeterSystem) -> Self {
        Self::with_fault(Arc::new(system), None)
    }

    pub fn with_fault(system: Arc<CoxeterSystem>, fault: Option<Fault>) -> Self {
        let l = system.rank();
        let jf = match fault {
            None => jacobian_of(system.invariants()),
            Some(Fault::NegateFirstPartial) => {
                let polys = system.invariants();
                PolyMatrix::from_fn(l, l, l, |i, j| {
                    let d = polys[j].partial(i);
                    if i == 0 {
                        d.neg()
                    } else {
                        d
                    }
                })
            }
        };
        let level0 = Level {
            k: 0,
            dkx: (0..l).map(|i| ArrFrac::from_poly(Poly::var(l, i))).collect(),
            jac: FracMatrix::identity(l, l),
            jac_inv: FracMatrix::identity(l, l),
            det: ArrFrac::one(l),
            b_def: None,
        };
        Pipeline {
            system,
            fault,
            jf,
            jf_inv: OnceLock::new(),
            dx: OnceLock::new(),
            b1: OnceLock::new(),
            levels: RwLock::new(vec![Arc::new(level0)]),
            build: Mutex::new(()),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn system_arc(&self) -> Arc<CoxeterSystem> {
        self.system.clone()
    }

    fn l(&self) -> usize {
        self.system.rank()
    }

    /// `d/dx_{i+1}`, subject to the configured fault.
    pub fn partial(&self, p: &ArrFrac, i: usize) -> ArrFrac {
        let d = p.partial(i);
        match self.fault {
            Some(Fault::NegateFirstPartial) if i == 0 => d.neg(),
            _ => d,
        }
    }

    /// `J(g)_{ij} = d_i g_j`.
    pub fn jacobian(&self, g: &[ArrFrac]) -> FracMatrix {
        FracMatrix::from_fn(self.l(), self.l(), g.len(), |i, j| self.partial(&g[j], i))
    }

    /// `J(f)`.
    pub fn jf(&self) -> &PolyMatrix {
        &self.jf
    }

    pub fn gram_frac(&self) -> FracMatrix {
        rat_to_frac(self.system.gram(), self.l())
    }

    /// `J(f)^{-1} = adj J(f) / det J(f)`, cached.
    pub fn jf_inverse(&self) -> Result<FracMatrix> {
        if let Some(inv) = self.jf_inv.get() {
            return Ok(inv.clone());
        }
        let factors = self.system.denominator_factors();
        let (det, adj) = self.jf.det_adj()?;
        let inv = adj.try_map(|x| ArrFrac::from_quotient(x.clone(), &det, factors))?;
        let _ = self.jf_inv.set(inv.clone());
        Ok(inv)
    }

    /// The bottom row of `J(f)^{-1}`, certified by `D f_i = delta_{i,l}`.
    pub fn primitive_dx(&self) -> Result<Vec<ArrFrac>> {
        if let Some(dx) = self.dx.get() {
            return Ok(dx.clone());
        }
        let l = self.l();
        let inv = self.jf_inverse()?;
        let dx: Vec<ArrFrac> = inv.row(l - 1).to_vec();
        for (i, f) in self.system.invariants().iter().enumerate() {
            let v = self.apply_d_with(&dx, &ArrFrac::from_poly(f.clone()));
            let want = if i + 1 == l { Rational::one() } else { Rational::zero() };
            if v.constant_value() != Some(want) {
                return Err(Error::CatalogIntegrity {
                    system: self.system.key().to_string(),
                    detail: format!("D f{} = {} after inverting J(f)", i + 1, v),
                });
            }
        }
        let _ = self.dx.set(dx.clone());
        Ok(dx)
    }

    fn apply_d_with(&self, dx: &[ArrFrac], p: &ArrFrac) -> ArrFrac {
        let terms: Vec<ArrFrac> = (0..self.l())
            .filter(|&j| !dx[j].is_zero())
            .map(|j| dx[j].mul(&self.partial(p, j)))
            .filter(|t| !t.is_zero())
            .collect();
        ArrFrac::sum_in(self.l(), &terms)
    }

    /// `D p = sum_j (D x_j) d_j p`.
    pub fn apply_d(&self, p: &ArrFrac) -> Result<ArrFrac> {
        let dx = self.primitive_dx()?;
        Ok(self.apply_d_with(&dx, p))
    }

    /// `D[A]`, entrywise.
    pub fn apply_d_matrix(&self, a: &FracMatrix) -> Result<FracMatrix> {
        let dx = self.primitive_dx()?;
        Ok(a.map(|x| self.apply_d_with(&dx, x)))
    }

    /// Cached level `k`, building the missing ones in order.
    pub fn level(&self, k: usize) -> Result<Arc<Level>> {
        if let Some(lv) = self.levels.read().unwrap().get(k) {
            return Ok(lv.clone());
        }
        let _guard = self.build.lock().unwrap();
        loop {
            let last = {
                let levels = self.levels.read().unwrap();
                if let Some(lv) = levels.get(k) {
                    return Ok(lv.clone());
                }
                levels.last().unwrap().clone()
            };
            let next = Arc::new(self.next_level(&last)?);
            self.levels.write().unwrap().push(next);
        }
    }

    /// Levels computed so far, for diagnostics.
    pub fn cached_levels(&self) -> usize {
        self.levels.read().unwrap().len()
    }

    fn next_level(&self, prev: &Level) -> Result<Level> {
        let l = self.l();
        let k = prev.k + 1;
        let factors = self.system.denominator_factors();
        let dkx: Vec<ArrFrac> = prev
            .dkx
            .iter()
            .map(|p| self.apply_d(p))
            .collect::<Result<_>>()?;
        let jac = self.jacobian(&dkx);

        // B^(k) = -(J(f)^T G J_k)(J_{k-1}^{-1} J(f)); both halves are cheap to
        // form and the product collapses to a small matrix.
        let jf = self.jf.to_frac();
        let jft_g = self.jf.transpose().to_frac().mul(&self.gram_frac());
        let left = jft_g.mul(&jac);
        let right = prev.jac_inv.mul(&jf);
        let b_def = left.mul(&right).neg();

        // J_k = C J_{k-1} with B = -J(f)^T G C J(f), hence
        // C^{-1} = -J(f) B^{-1} J(f)^T G and det C = (-1)^l det B / (det J(f)^2 det G).
        let (bdet, badj) = mat_det_adj(&b_def)?;
        if bdet.is_zero() {
            return Err(violation("B^(k) is singular", format!("k = {k}")));
        }
        let binv = badj.try_map(|x| x.div_in(&bdet, factors))?;
        let cinv = jf.mul(&binv).mul(&jft_g).neg();
        let jac_inv = prev.jac_inv.mul(&cinv);

        let jdet = ArrFrac::from_poly(self.jf.det()?);
        let gdet = self.system.gram().det()?;
        let mut det_c = bdet.div_in(&jdet.mul(&jdet), factors)?;
        det_c = det_c.scale(&gdet.recip());
        if l % 2 == 1 {
            det_c = det_c.neg();
        }
        let det = prev.det.mul(&det_c);
        Ok(Level {
            k,
            dkx,
            jac,
            jac_inv,
            det,
            b_def: Some(b_def),
        })
    }

    /// `D^k x`, memoized.
    pub fn iterate_dkx(&self, k: usize) -> Result<Vec<ArrFrac>> {
        Ok(self.level(k)?.dkx.clone())
    }

    /// `D^k x` recomputed from scratch, bypassing the cache.
    pub fn iterate_dkx_uncached(&self, k: usize) -> Result<Vec<ArrFrac>> {
        let l = self.l();
        let mut v: Vec<ArrFrac> = (0..l).map(|i| ArrFrac::from_poly(Poly::var(l, i))).collect();
        for _ in 0..k {
            v = v.iter().map(|p| self.apply_d(p)).collect::<Result<_>>()?;
        }
        Ok(v)
    }

    /// Column degrees promised for `P_m`.
    pub fn expected_degrees(&self, m: usize) -> Vec<u32> {
        let k = (m / 2) as u32;
        let h = self.system.coxeter_number();
        self.system
            .exponents()
            .iter()
            .map(|&e| if m % 2 == 0 { k * h } else { k * h + e })
            .collect()
    }

    /// `P_m = G J(D^k x)^{-1}`, times `J(f)` for odd `m`.
    pub fn p_matrix(&self, m: usize) -> Result<DerivationBasis> {
        let lv = self.level(m / 2)?;
        let mut p = self.gram_frac().mul(&lv.jac_inv);
        if m % 2 == 1 {
            p = p.mul_poly(&self.jf);
        }
        let p = p.to_poly().map_err(|(i, j, e)| {
            violation(
                "P_m has a non-polynomial entry",
                format!("m = {m}, entry ({}, {}) = {e}", i + 1, j + 1),
            )
        })?;
        self.basis(m, p)
    }

    fn basis(&self, m: usize, p: PolyMatrix) -> Result<DerivationBasis> {
        let degrees = self.expected_degrees(m);
        for j in 0..self.l() {
            for i in 0..self.l() {
                let e = p.get(i, j);
                if !e.is_zero() && e.homogeneous_degree() != Some(degrees[j]) {
                    return Err(violation(
                        "P_m column degree",
                        format!("m = {m}, entry ({}, {}) = {e}, expected degree {}", i + 1, j + 1, degrees[j]),
                    ));
                }
            }
        }
        Ok(DerivationBasis {
            m,
            k: m / 2,
            p,
            degrees,
        })
    }

    /// `P_0 = G`, `P_m = P_{m-1} J(f)` for odd `m`, and
    /// `P_m = -P_{m-1} (B^(m/2))^{-1} P_1^T` otherwise, with `B` in closed form.
    pub fn p_matrix_recursive(&self, m: usize) -> Result<DerivationBasis> {
        let l = self.l();
        let gram = self.system.gram().to_poly(l);
        let p1t = gram.mul(&self.jf).transpose();
        let mut p = gram;
        for step in 1..=m {
            if step % 2 == 1 {
                p = p.mul(&self.jf);
            } else {
                let b = self.b_matrix(step / 2, BRoute::ClosedForm)?.b;
                let (d, adj) = b.det_adj()?;
                let c = d
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| violation("det B^(k) is not a nonzero constant", &d))?;
                let binv = adj.map(|x| x.scale(&c.recip()));
                p = p.mul(&binv).mul(&p1t).neg();
            }
        }
        self.basis(m, p)
    }

    /// `B^(1)` by definition, cached.
    pub fn b1(&self) -> Result<PolyMatrix> {
        if let Some(b) = self.b1.get() {
            return Ok(b.clone());
        }
        let b = self.b_definition(1)?;
        let _ = self.b1.set(b.clone());
        Ok(b)
    }

    fn b_definition(&self, k: usize) -> Result<PolyMatrix> {
        let lv = self.level(k)?;
        lv.b_def.as_ref().unwrap().to_poly().map_err(|(i, j, e)| {
            violation(
                "B^(k) has a non-polynomial entry",
                format!("k = {k}, entry ({}, {}) = {e}", i + 1, j + 1),
            )
        })
    }

    /// `B^(k)` for `k >= 1`.
    pub fn b_matrix(&self, k: usize, route: BRoute) -> Result<BMatrix> {
        if k == 0 {
            return Err(Error::Dimension("B^(k) needs k >= 1".into()));
        }
        let b = match route {
            BRoute::Definition => {
                if k == 1 {
                    self.b1()?
                } else {
                    self.b_definition(k)?
                }
            }
            BRoute::ClosedForm => {
                let b1 = self.b1()?;
                let kk = Poly::constant(self.l(), Rational::from_integer((k as i64).into()));
                let km = Poly::constant(self.l(), Rational::from_integer((k as i64 - 1).into()));
                b1.scale(&kk).add(&b1.transpose().scale(&km))
            }
        };
        Ok(BMatrix { k, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::lookup;
    use crate::exactpoly::{rat, ratio, Factor};

    fn pipe(key: &str) -> Pipeline {
        Pipeline::new(lookup(key).unwrap())
    }

    fn p2(s: &str) -> Poly {
        Poly::parse(s, 2).unwrap()
    }

    fn q_b2() -> Poly {
        p2("x1*x2^3 - x1^3*x2")
    }

    fn b2_frac(num: &str, qpow: u32) -> ArrFrac {
        let s = lookup("B2").unwrap();
        ArrFrac::from_quotient(p2(num), &q_b2().pow(qpow), s.denominator_factors()).unwrap()
    }

    #[test]
    fn b2_primitive_derivation() {
        let pl = pipe("B2");
        let dx = pl.primitive_dx().unwrap();
        assert_eq!(dx[0], b2_frac("-x2", 1));
        assert_eq!(dx[1], b2_frac("x1", 1));
        assert_eq!(dx[0].degree(), Some(-3));
        let f = pl.system().invariants().to_vec();
        assert!(pl.apply_d(&f[0].clone().into()).unwrap().is_zero());
        assert_eq!(pl.apply_d(&f[1].clone().into()).unwrap(), ArrFrac::one(2));
    }

    #[test]
    fn b2_jacobian_of_dx() {
        let pl = pipe("B2");
        let j = pl.level(1).unwrap().jac.clone();
        assert_eq!(j.get(0, 0), &b2_frac("x2^4 - 3*x1^2*x2^2", 2));
        assert_eq!(j.get(0, 1), &b2_frac("2*x1^3*x2", 2));
        assert_eq!(j.get(1, 0), &b2_frac("2*x1*x2^3", 2));
        assert_eq!(j.get(1, 1), &b2_frac("x1^4 - 3*x1^2*x2^2", 2));
        let (d, _) = mat_det_adj(&j).unwrap();
        let c = d.mul(&ArrFrac::from_poly(q_b2().pow(2)));
        assert_eq!(c.constant_value(), Some(rat(-3)));
        assert_eq!(pl.level(1).unwrap().det, d);
    }

    #[test]
    fn a1_rank_one() {
        let pl = pipe("A1");
        let dx = pl.primitive_dx().unwrap();
        // f1 = 2 x1^2 here (power sum of x1 and -x1), so D x1 = 1/(4 x1)
        let s = pl.system();
        let expect = ArrFrac::from_quotient(
            Poly::constant(1, ratio(1, 4)),
            &Poly::var(1, 0),
            s.denominator_factors(),
        )
        .unwrap();
        assert_eq!(dx[0], expect);
        let b = pl.p_matrix(5).unwrap();
        assert_eq!(b.degrees, vec![5]);
    }

    #[test]
    fn chained_inverse_matches_adjugate() {
        for key in ["B2", "B3", "A3"] {
            let pl = pipe(key);
            for k in 1..=2 {
                let lv = pl.level(k).unwrap();
                let (d, adj) = mat_det_adj(&lv.jac).unwrap();
                let f: Vec<Factor> = pl.system().denominator_factors().to_vec();
                let inv = adj.try_map(|x| x.div_in(&d, &f)).unwrap();
                assert_eq!(inv, lv.jac_inv, "{key} k={k}");
                assert_eq!(d, lv.det, "{key} k={k}");
            }
        }
    }

    #[test]
    fn b2_p3_matches_table() {
        let pl = pipe("B2");
        let p3 = pl.p_matrix(3).unwrap();
        let expect = PolyMatrix::from_rows(
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
        .unwrap();
        assert_eq!(p3.p, expect);
        assert_eq!(p3.degrees, vec![5, 7]);
        assert_eq!(pl.p_matrix_recursive(3).unwrap().p, expect);
    }

    #[test]
    fn b2_b1() {
        let pl = pipe("B2");
        let b1 = pl.b1().unwrap();
        let expect = PolyMatrix::from_rows(
            2,
            vec![vec![p2("0"), p2("3")], vec![p2("1"), p2("3*x1^2 + 3*x2^2")]],
        )
        .unwrap();
        assert_eq!(b1, expect);
        let b2 = pl.b_matrix(2, BRoute::Definition).unwrap();
        assert_eq!(b2, pl.b_matrix(2, BRoute::ClosedForm).unwrap());
    }

    #[test]
    fn memo_is_transparent() {
        let pl = pipe("B2");
        assert_eq!(pl.iterate_dkx(2).unwrap(), pl.iterate_dkx_uncached(2).unwrap());
        assert_eq!(pl.cached_levels(), 3);
        let d2 = pl.iterate_dkx(2).unwrap();
        assert_eq!(d2[0].degree(), Some(1 - 8));
    }

    #[test]
    fn fault_changes_p1() {
        let s = Arc::new(lookup("B2").unwrap());
        let bad = Pipeline::with_fault(s.clone(), Some(Fault::NegateFirstPartial));
        let good = Pipeline::with_fault(s, None);
        assert_ne!(bad.p_matrix(1).unwrap().p, good.p_matrix(1).unwrap().p);
    }
}
