//! Packed monomials.
//!
//! A monomial in at most [`MAX_VARS`] variables is stored in a single `u128`:
//! the top 32 bits hold the total degree, followed by 12 bits per variable
//! with `x1` most significant. Integer comparison of the packed words is then
//! exactly graded-lexicographic order with `x1 > x2 > ... > xn`, and
//! multiplication is integer addition as long as the total degree stays
//! within [`MAX_DEGREE`].

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;
pub const MAX_DEGREE: u32 = (1 << EXP_BITS) - 1;

const EXP_BITS: u32 = 12;
const EXP_MASK: u128 = (1 << EXP_BITS) - 1;
const DEG_SHIFT: u32 = 96;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u128);

#[inline]
fn shift(i: usize) -> u32 {
    DEG_SHIFT - EXP_BITS * (i as u32 + 1)
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::Dimension(format!(
                "{} variables exceeds the supported maximum of {MAX_VARS}",
                exps.len()
            )));
        }
        let deg: u64 = exps.iter().map(|&e| e as u64).sum();
        if deg > MAX_DEGREE as u64 {
            return Err(Error::DegreeOverflow(deg.min(u32::MAX as u64) as u32));
        }
        let mut w = (deg as u128) << DEG_SHIFT;
        for (i, &e) in exps.iter().enumerate() {
            w |= (e as u128) << shift(i);
        }
        Ok(Monomial(w))
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        Monomial((1u128 << DEG_SHIFT) | (1u128 << shift(i)))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> DEG_SHIFT) as u32
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & EXP_MASK) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub(crate) fn raw(self) -> u128 {
        self.0
    }

    #[inline]
    pub(crate) fn from_raw(w: u128) -> Self {
        Monomial(w)
    }

    /// Product of two monomials. Panics if the total degree would exceed
    /// [`MAX_DEGREE`]; at that size nothing in this crate is tractable anyway.
    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        let d = self.degree() + other.degree();
        assert!(d <= MAX_DEGREE, "monomial degree overflow ({d})");
        Monomial(self.0 + other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        if self.degree() > other.degree() {
            return false;
        }
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(self, other: Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0 - self.0))
        } else {
            None
        }
    }

    /// Lowers the exponent of variable `i` by one, if it is positive.
    #[inline]
    pub fn lower(self, i: usize) -> Option<Monomial> {
        if self.exponent(i) == 0 {
            None
        } else {
            Some(Monomial(self.0 - ((1u128 << DEG_SHIFT) | (1u128 << shift(i)))))
        }
    }

    /// Removes variable `i` entirely.
    pub(crate) fn without(self, i: usize) -> Monomial {
        let e = self.exponent(i) as u128;
        Monomial(self.0 - ((e << DEG_SHIFT) | (e << shift(i))))
    }

    pub(crate) fn with_power(self, i: usize, e: u32) -> Monomial {
        self.mul(Monomial(((e as u128) << DEG_SHIFT) | ((e as u128) << shift(i))))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({:?})", self.exponents(MAX_VARS))
    }
}
