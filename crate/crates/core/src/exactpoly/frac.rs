//! Rational functions whose denominators are products of known factors.
//!
//! An [`ArrFrac`] is `num / prod f^e` with the factors kept apart. Every
//! constructor reduces: no denominator factor divides the numerator. There is
//! no general gcd; cancellation is only ever attempted against the factors
//! already present, which is all the pipeline needs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::linform::Factor;
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

pub type Denominator = BTreeMap<Factor, u32>;

#[derive(Clone, Eq)]
pub struct ArrFrac {
    num: Poly,
    den: Denominator,
}

#[derive(Clone, Debug)]
pub enum FracOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field operations on reduced fractions.
///
/// Division may only introduce factors that already occur in one of the two
/// denominators; use [`ArrFrac::div_in`] to supply the arrangement.
pub fn frac_arith(a: &ArrFrac, b: &ArrFrac, op: FracOp) -> Result<ArrFrac> {
    a.num.check_same(&b.num)?;
    Ok(match op {
        FracOp::Add => a.add(b),
        FracOp::Sub => a.sub(b),
        FracOp::Mul => a.mul(b),
        FracOp::Div => {
            let known: Vec<Factor> = a.den.keys().chain(b.den.keys()).cloned().collect();
            a.div_in(b, &known)?
        }
    })
}

/// Divides `num` by each factor as long as it divides and the factor is
/// still present in `den`.
fn reduce_against(num: &mut Poly, den: &mut Denominator, nonlinear_only: bool) {
    if num.is_zero() {
        den.clear();
        return;
    }
    for (f, e) in den.iter_mut() {
        if nonlinear_only && f.is_linear() {
            continue;
        }
        while *e > 0 {
            match num.divide_exact(f.poly()) {
                Ok(Some(q)) => {
                    *num = q;
                    *e -= 1;
                }
                _ => break,
            }
        }
    }
    den.retain(|_, e| *e > 0);
}

/// Product of `f^e` over a denominator.
pub fn den_poly(nvars: usize, den: &Denominator) -> Poly {
    den.iter()
        .fold(Poly::one(nvars), |acc, (f, e)| &acc * &f.poly().pow(*e))
}

impl ArrFrac {
    pub fn zero(nvars: usize) -> Self {
        ArrFrac {
            num: Poly::zero(nvars),
            den: Denominator::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        ArrFrac::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        ArrFrac::from_poly(Poly::constant(nvars, c))
    }

    pub fn from_poly(p: Poly) -> Self {
        ArrFrac {
            num: p,
            den: Denominator::new(),
        }
    }

    /// `num / prod f^e`, reduced.
    pub fn new(mut num: Poly, mut den: Denominator) -> Self {
        den.retain(|_, e| *e > 0);
        reduce_against(&mut num, &mut den, false);
        ArrFrac { num, den }
    }

    /// `num / (c * prod f^e)` for an arbitrary denominator polynomial that is
    /// a product of the given factors times a nonzero constant.
    pub fn from_quotient(num: Poly, den: &Poly, factors: &[Factor]) -> Result<Self> {
        let (c, d) = factorize(den, factors)?;
        Ok(ArrFrac::new(num.scale(&c.recip()), d))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Denominator {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn into_poly(self) -> std::result::Result<Poly, ArrFrac> {
        if self.den.is_empty() {
            Ok(self.num)
        } else {
            Err(self)
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_poly().and_then(|p| p.constant_value())
    }

    /// Degree of the denominator polynomial.
    pub fn den_degree(&self) -> i64 {
        self.den.iter().map(|(f, e)| f.degree() as i64 * *e as i64).sum()
    }

    /// `deg(num) - deg(den)` for homogeneous nonzero fractions.
    pub fn degree(&self) -> Option<i64> {
        self.num
            .homogeneous_degree()
            .map(|d| d as i64 - self.den_degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.num.is_homogeneous()
    }

    /// The reduction invariant: no denominator factor divides the numerator.
    pub fn is_reduced(&self) -> bool {
        self.den.values().all(|e| *e > 0)
            && self
                .den
                .keys()
                .all(|f| !matches!(self.num.divide_exact(f.poly()), Ok(Some(_))))
    }

    pub fn den_poly(&self) -> Poly {
        den_poly(self.nvars(), &self.den)
    }

    pub fn neg(&self) -> ArrFrac {
        ArrFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> ArrFrac {
        if c.is_zero() {
            return ArrFrac::zero(self.nvars());
        }
        ArrFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &ArrFrac) -> ArrFrac {
        if self.den == other.den {
            let mut num = &self.num + &other.num;
            let mut den = self.den.clone();
            reduce_against(&mut num, &mut den, false);
            return ArrFrac { num, den };
        }
        ArrFrac::sum([self, other])
    }

    pub fn sub(&self, other: &ArrFrac) -> ArrFrac {
        self.add(&other.neg())
    }

    /// Sum over a common denominator with a single reduction at the end.
    pub fn sum<'a, I>(items: I) -> ArrFrac
    where
        I: IntoIterator<Item = &'a ArrFrac>,
    {
        let items: Vec<&ArrFrac> = items.into_iter().filter(|t| !t.is_zero()).collect();
        let Some(first) = items.first() else {
            return ArrFrac::zero(0);
        };
        let nvars = first.nvars();
        let mut common = Denominator::new();
        for t in &items {
            for (f, e) in &t.den {
                let slot = common.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(*e);
            }
        }
        let mut powers: FxHashMap<(&Factor, u32), Poly> = FxHashMap::default();
        let mut num = Poly::zero(nvars);
        for t in &items {
            let mut term = t.num.clone();
            for (f, e) in &common {
                let have = t.den.get(f).copied().unwrap_or(0);
                if have < *e {
                    let p = powers
                        .entry((f, e - have))
                        .or_insert_with(|| f.poly().pow(e - have));
                    term = &term * p;
                }
            }
            num = &num + &term;
        }
        ArrFrac::new(num, common)
    }

    /// Like [`ArrFrac::sum`], but returns the zero of the right ring when empty.
    pub fn sum_in<'a, I>(nvars: usize, items: I) -> ArrFrac
    where
        I: IntoIterator<Item = &'a ArrFrac>,
    {
        let s = ArrFrac::sum(items);
        if s.is_zero() {
            ArrFrac::zero(nvars)
        } else {
            s
        }
    }

    pub fn mul(&self, other: &ArrFrac) -> ArrFrac {
        if self.is_zero() || other.is_zero() {
            return ArrFrac::zero(self.nvars());
        }
        let mut an = self.num.clone();
        let mut bn = other.num.clone();
        let mut ad = self.den.clone();
        let mut bd = other.den.clone();
        // Cross-cancel first: both inputs are reduced, so afterwards only
        // factors that are not irreducible can still cancel in the product.
        reduce_against(&mut an, &mut bd, false);
        reduce_against(&mut bn, &mut ad, false);
        let mut num = &an * &bn;
        let mut den = ad;
        for (f, e) in bd {
            *den.entry(f).or_insert(0) += e;
        }
        reduce_against(&mut num, &mut den, true);
        ArrFrac { num, den }
    }

    pub fn mul_poly(&self, p: &Poly) -> ArrFrac {
        self.mul(&ArrFrac::from_poly(p.clone()))
    }

    /// `1/self`, provided the numerator is a constant times a product of
    /// `factors`.
    pub fn recip_in(&self, factors: &[Factor]) -> Result<ArrFrac> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, d) = factorize(&self.num, factors)?;
        let num = den_poly(self.nvars(), &self.den).scale(&c.recip());
        Ok(ArrFrac::new(num, d))
    }

    pub fn div_in(&self, other: &ArrFrac, factors: &[Factor]) -> Result<ArrFrac> {
        Ok(self.mul(&other.recip_in(factors)?))
    }

    /// Partial derivative by `x_{i+1}` via the quotient rule over the radical
    /// of the factors that actually involve `x_{i+1}`.
    pub fn partial(&self, i: usize) -> ArrFrac {
        let nvars = self.nvars();
        let moving: Vec<(&Factor, u32, Poly)> = self
            .den
            .iter()
            .filter_map(|(f, e)| {
                let d = f.poly().partial(i);
                (!d.is_zero()).then_some((f, *e, d))
            })
            .collect();
        if moving.is_empty() {
            return ArrFrac::new(self.num.partial(i), self.den.clone());
        }
        // d(n/(F * prod a^e)) = [n' R - n sum e a' R/a] / (F * prod a^e * R)
        let polys: Vec<&Poly> = moving.iter().map(|(f, _, _)| f.poly()).collect();
        let radical = polys.iter().fold(Poly::one(nvars), |acc, p| &acc * p);
        let mut num = &self.num.partial(i) * &radical;
        let mut corr = Poly::zero(nvars);
        for (k, (_, e, d)) in moving.iter().enumerate() {
            let others = polys
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(Poly::one(nvars), |acc, (_, p)| &acc * *p);
            let t = &others * d;
            corr = &corr + &t.scale(&Rational::from_integer((*e).into()));
        }
        num = &num - &(&self.num * &corr);
        let mut den = self.den.clone();
        for (f, _, _) in &moving {
            *den.get_mut(*f).unwrap() += 1;
        }
        ArrFrac::new(num, den)
    }

    /// Applies `x_j -> sum_i m[i][j] x_i` to numerator and denominator.
    pub fn substitute_linear(&self, m: &[Vec<Rational>]) -> Result<ArrFrac> {
        let mut num = self.num.substitute_linear(m)?;
        let mut den = Denominator::new();
        let mut scale = Rational::one();
        for (f, e) in &self.den {
            let img = f.poly().substitute_linear(m)?;
            let (g, c) = Factor::canonical(&img)?;
            scale *= num_traits::pow(c, *e as usize);
            *den.entry(g).or_insert(0) += e;
        }
        num = num.scale(&scale.recip());
        Ok(ArrFrac::new(num, den))
    }

    /// `Some(c)` with `self = c * other`.
    pub fn is_constant_multiple(&self, other: &ArrFrac) -> Option<Rational> {
        if self.den == other.den {
            return self.num.is_constant_multiple(&other.num);
        }
        let a = &self.num * &den_poly(self.nvars(), &other.den);
        let b = &other.num * &den_poly(self.nvars(), &self.den);
        a.is_constant_multiple(&b)
    }
}

/// Splits `p` as `c * prod f^e` over `factors`, or reports the leftover.
pub fn factorize(p: &Poly, factors: &[Factor]) -> Result<(Rational, Denominator)> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut rest = p.clone();
    let mut out = Denominator::new();
    for f in factors {
        if rest.is_constant() {
            break;
        }
        while let Ok(Some(q)) = rest.divide_exact(f.poly()) {
            rest = q;
            *out.entry(f.clone()).or_insert(0) += 1;
        }
    }
    match rest.constant_value() {
        Some(c) => Ok((c, out)),
        None => Err(Error::UnsupportedDenominator {
            witness: rest.to_string(),
        }),
    }
}

impl PartialEq for ArrFrac {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        self.sub(other).is_zero()
    }
}

impl From<Poly> for ArrFrac {
    fn from(p: Poly) -> Self {
        ArrFrac::from_poly(p)
    }
}

impl fmt::Display for ArrFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(fac, e)| {
                let base = format!("({fac})");
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        write!(f, "({})/({})", self.num, parts.join("*"))
    }
}

impl fmt::Debug for ArrFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArrFrac[{}]({})", self.nvars(), self)
    }
}
