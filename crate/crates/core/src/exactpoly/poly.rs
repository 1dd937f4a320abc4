//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::modular;
use super::monomial::{Monomial, MAX_DEGREE, MAX_VARS};
use super::rational::{display_rational, Rational};
use crate::error::{Error, Result};

/// A polynomial in `nvars` variables with exact rational coefficients.
///
/// Terms are kept sorted by descending graded-lex order, with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale(Rational),
}

/// Checked ring operations on `S`.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
    if let PolyOp::Scale(c) = &op {
        return Ok(a.scale(c));
    }
    a.check_same(b)?;
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::Scale(_) => unreachable!(),
    })
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The coordinate `x_{i+1}` (indices are zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly {
            nvars,
            terms: vec![(Monomial::var(i), Rational::one())],
        }
    }

    pub fn monomial(nvars: usize, exps: &[u32], c: Rational) -> Result<Self> {
        if exps.len() != nvars {
            return Err(Error::Dimension(format!(
                "monomial has {} exponents, ring has {nvars} variables",
                exps.len()
            )));
        }
        let m = Monomial::from_exponents(exps)?;
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        Ok(p)
    }

    /// `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        Poly { nvars: n, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { nvars, terms }
    }

    pub fn from_exponent_terms(nvars: usize, terms: &[(Vec<u32>, Rational)]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!(
                    "term has {} exponents, ring has {nvars} variables",
                    e.len()
                )));
            }
            out.push((Monomial::from_exponents(e)?, c.clone()));
        }
        Ok(Poly::from_terms(nvars, out))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if *m == Monomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Degree of a nonzero homogeneous polynomial; `None` if zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub(crate) fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiplies by a single term `c * m`; order is preserved.
    pub fn mul_term(&self, m: Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
        }
    }

    /// Divides every coefficient so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate { -c } else { c.clone() }));
        }
        Poly {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Integer coefficients after clearing denominators: `self = ints / den`.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints = self
            .terms
            .iter()
            .map(|(_, c)| {
                if c.denom() == &den {
                    c.numer().clone()
                } else {
                    c.numer() * (&den / c.denom())
                }
            })
            .collect();
        (ints, den)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let deg = self.total_degree().unwrap() + other.total_degree().unwrap();
        assert!(deg <= MAX_DEGREE, "product degree {deg} overflows packed monomials");
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(*m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(*m, c);
        }
        let (ia, da) = self.integer_form();
        let (ib, db) = other.integer_form();
        let den = da * db;
        let sums = mul_small_ints(&self.terms, &ia, &other.terms, &ib)
            .unwrap_or_else(|| mul_big_ints(&self.terms, &ia, &other.terms, &ib));
        let mut terms: Vec<(Monomial, Rational)> = sums
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let r = if den.is_one() {
                    Rational::from_integer(c)
                } else {
                    Rational::new(c, den.clone())
                };
                (Monomial::from_raw(m), r)
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Formal partial derivative by `x_{i+1}`. Panics if `i` is out of range.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "variable index {i} out of range");
        // Lowering x_i is strictly monotone on the surviving monomials, so
        // the result stays sorted.
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                m.lower(i)
                    .map(|lm| (lm, c * Rational::from_integer(BigInt::from(m.exponent(i)))))
            })
            .collect();
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        Ok(self.partial(i))
    }

    /// Exact division. `Ok(None)` signals that `div` does not divide `self`.
    pub fn divide_exact(&self, div: &Poly) -> Result<Option<Poly>> {
        self.check_same(div)?;
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Poly::zero(self.nvars)));
        }
        if let Some(c) = div.constant_value() {
            return Ok(Some(self.scale(&c.recip())));
        }
        if div.total_degree() == Some(1) && div.is_homogeneous() {
            return Ok(self.div_linear(div));
        }
        Ok(self.div_general(div))
    }

    /// Whether `self` vanishes at a deterministic pseudo-random point of the
    /// hyperplane `lin = 0`, modulo a large prime. `Some(false)` proves
    /// non-divisibility.
    fn may_vanish_on(&self, lin: &Poly, salt: u64) -> Option<bool> {
        let (lead, rest) = lin.terms.split_first()?;
        let v = (0..self.nvars).find(|&i| lead.0.exponent(i) == 1)?;
        let mut point = vec![0u64; self.nvars];
        for (i, p) in point.iter_mut().enumerate() {
            if i != v {
                *p = modular::sample(salt.wrapping_mul(31).wrapping_add(i as u64 + 1));
            }
        }
        // x_v = -(rest . point) / lead
        let mut acc = 0u64;
        for (m, c) in rest {
            let j = (0..self.nvars).find(|&i| m.exponent(i) == 1)?;
            acc = modular::add(acc, modular::mul(modular::reduce(c)?, point[j]));
        }
        let lc = modular::inv(modular::reduce(&lead.1)?)?;
        point[v] = modular::neg(modular::mul(acc, lc));
        Some(self.eval_mod(&point)? == 0)
    }

    /// Evaluation modulo 2^61 - 1; `None` if a denominator vanishes there.
    pub(crate) fn eval_mod(&self, point: &[u64]) -> Option<u64> {
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<u64>> = point
            .iter()
            .map(|&x| {
                let mut v = Vec::with_capacity(maxdeg + 1);
                let mut acc = 1u64;
                for _ in 0..=maxdeg {
                    v.push(acc);
                    acc = modular::mul(acc, x);
                }
                v
            })
            .collect();
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut t = modular::reduce(c)?;
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = modular::mul(t, pw[e]);
                }
            }
            total = modular::add(total, t);
        }
        Some(total)
    }

    /// Synthetic division by a homogeneous linear form.
    fn div_linear(&self, lin: &Poly) -> Option<Poly> {
        if self.may_vanish_on(lin, 0x5eed) == Some(false) {
            return None;
        }
        let (lead, rest) = lin.terms.split_first().unwrap();
        let v = (0..self.nvars).find(|&i| lead.0.exponent(i) == 1).unwrap();
        let lc_inv = lead.1.recip();
        // beta = rest / lc, a form in variables after x_v
        let beta = Poly {
            nvars: self.nvars,
            terms: rest.iter().map(|(m, c)| (*m, c * &lc_inv)).collect(),
        };
        // Split self = sum_e p_e x_v^e.
        let top = self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap() as usize;
        if top == 0 {
            return None;
        }
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); top + 1];
        for (m, c) in &self.terms {
            parts[m.exponent(v) as usize].push((m.without(v), c.clone()));
        }
        let parts: Vec<Poly> = parts
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly {
                    nvars: self.nvars,
                    terms: t,
                }
            })
            .collect();
        // q_{top-1} = p_top; q_{e-1} = p_e - beta q_e; remainder p_0 - beta q_0.
        let mut q: Vec<Poly> = vec![Poly::zero(self.nvars); top];
        q[top - 1] = parts[top].clone();
        for e in (1..top).rev() {
            q[e - 1] = &parts[e] - &beta.mul_few(&q[e]);
        }
        let rem = &parts[0] - &beta.mul_few(&q[0]);
        if !rem.is_zero() {
            return None;
        }
        let mut terms = Vec::with_capacity(q.iter().map(|p| p.terms.len()).sum());
        for (e, qe) in q.iter().enumerate() {
            for (m, c) in &qe.terms {
                terms.push((m.with_power(v, e as u32), c * &lc_inv));
            }
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Some(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Product where `self` has very few terms: shift-and-merge.
    fn mul_few(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            acc = acc.merge(&other.mul_term(*m, c), false);
        }
        acc
    }

    /// Multivariate long division by a single divisor; with one divisor the
    /// remainder vanishes exactly when the division is exact, so the first
    /// leading term that cannot be cancelled settles the question.
    fn div_general(&self, div: &Poly) -> Option<Poly> {
        let (lm, lc) = div.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = lm.quotient_of(m)?;
            let qc = c * &lc_inv;
            for (dm, dc) in &div.terms[1..] {
                let key = qm.mul(*dm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            q.push((qm, qc));
        }
        Some(Poly {
            nvars: self.nvars,
            terms: q,
        })
    }

    /// Replaces each `x_j` by `sum_i m[i][j] x_i`.
    ///
    /// With `m = rho(g)` this is the action of `g` on `S`.
    pub fn substitute_linear(&self, m: &[Vec<Rational>]) -> Result<Poly> {
        let n = self.nvars;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "substitution matrix must be {n}x{n}"
            )));
        }
        // Signed permutation (or any monomial matrix): map terms directly.
        let mut image = Vec::with_capacity(n);
        for j in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&i| !m[i][j].is_zero()).collect();
            if nz.len() != 1 {
                image.clear();
                break;
            }
            image.push((nz[0], m[nz[0]][j].clone()));
        }
        if image.len() == n {
            let terms = self.terms.iter().map(|(mono, c)| {
                let mut exps = vec![0u32; n];
                let mut coeff = c.clone();
                for (j, (i, s)) in image.iter().enumerate() {
                    let e = mono.exponent(j);
                    exps[*i] += e;
                    if e > 0 && !s.is_one() {
                        coeff *= num_traits::pow(s.clone(), e as usize);
                    }
                }
                (Monomial::from_exponents(&exps).unwrap(), coeff)
            });
            return Ok(Poly::from_terms(n, terms));
        }
        let images: Vec<Poly> = (0..n)
            .map(|j| Poly::linear(&(0..n).map(|i| m[i][j].clone()).collect::<Vec<_>>()))
            .collect();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(n), p.clone()]).collect();
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for j in 0..n {
                let e = mono.exponent(j) as usize;
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                t = &t * &powers[j][e];
            }
            for (tm, tc) in t.terms {
                *acc.entry(tm).or_insert_with(Rational::zero) += tc;
            }
        }
        Ok(Poly::from_terms(n, acc))
    }

    /// `c` with `self = c * other`, if one exists. `(0, 0)` gives `1`.
    pub fn is_constant_multiple(&self, other: &Poly) -> Option<Rational> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::one());
        }
        let c = &self.terms[0].1 / &other.terms[0].1;
        let same = self
            .terms
            .iter()
            .zip(&other.terms)
            .all(|((ma, ca), (mb, cb))| ma == mb && *ca == &c * cb);
        if same {
            Some(c)
        } else {
            None
        }
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Parses sums of terms such as `"-1/3*x1^5 + 5/3*x1^3*x2^2"`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        parse_poly(s, nvars)
    }
}

fn mul_small_ints(
    a: &[(Monomial, Rational)],
    ia: &[BigInt],
    b: &[(Monomial, Rational)],
    ib: &[BigInt],
) -> Option<Vec<(u128, BigInt)>> {
    let sa: Vec<i64> = ia.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
    let sb: Vec<i64> = ib.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
    let mut acc: FxHashMap<u128, i128> =
        FxHashMap::with_capacity_and_hasher((a.len() * b.len()).min(1 << 20), Default::default());
    for ((ma, _), &ca) in a.iter().zip(&sa) {
        let ra = ma.raw();
        let ca = ca as i128;
        for ((mb, _), &cb) in b.iter().zip(&sb) {
            let slot = acc.entry(ra + mb.raw()).or_insert(0);
            *slot = slot.checked_add(ca * cb as i128)?;
        }
    }
    Some(acc.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect())
}

fn mul_big_ints(
    a: &[(Monomial, Rational)],
    ia: &[BigInt],
    b: &[(Monomial, Rational)],
    ib: &[BigInt],
) -> Vec<(u128, BigInt)> {
    let mut acc: FxHashMap<u128, BigInt> =
        FxHashMap::with_capacity_and_hasher((a.len() * b.len()).min(1 << 20), Default::default());
    for ((ma, _), ca) in a.iter().zip(ia) {
        let ra = ma.raw();
        for ((mb, _), cb) in b.iter().zip(ib) {
            let p = ca * cb;
            match acc.entry(ra + mb.raw()) {
                std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += p,
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(p);
                }
            }
        }
    }
    acc.into_iter().collect()
}

fn parse_poly(s: &str, nvars: usize) -> Result<Poly> {
    let err = |msg: &str| Error::Parse(format!("{msg} in polynomial `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    // Split into signed terms at top-level '+'/'-' (not inside exponents).
    let mut terms_src: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (k, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && !(k > 0 && compact[..k].ends_with('^')) {
            if !cur.is_empty() {
                terms_src.push((neg, std::mem::take(&mut cur)));
            } else if k != 0 {
                return Err(err("dangling sign"));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(err("dangling sign"));
    }
    terms_src.push((neg, cur));

    let mut out = Vec::new();
    for (neg, src) in terms_src {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; nvars];
        for factor in src.split('*').filter(|f| !f.is_empty()) {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, p)) => (i, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| err("bad variable"))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        nvars,
                    });
                }
                exps[idx - 1] += pow;
            } else {
                coeff *= super::rational::parse_rational(factor)?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.push((Monomial::from_exponents(&exps)?, coeff));
    }
    Ok(Poly::from_terms(nvars, out))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&i| m.exponent(i) > 0)
                .map(|i| match m.exponent(i) {
                    1 => format!("x{}", i + 1),
                    e => format!("x{}^{}", i + 1, e),
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", display_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", display_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        self.merge(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
