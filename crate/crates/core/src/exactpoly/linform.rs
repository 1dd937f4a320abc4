//! Linear forms up to scalar, and the irreducible-ish factors that may appear
//! in denominators.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{display_rational, Rational};
use crate::error::{Error, Result};

/// A nonzero linear form `sum c_i x_i`, scaled so that its first nonzero
/// coefficient is `+1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    coeffs: Vec<Rational>,
}

impl LinForm {
    /// Canonicalizes `coeffs`; returns the form and the scalar `s` with
    /// `sum coeffs_i x_i = s * form`.
    pub fn canonical(coeffs: &[Rational]) -> Result<(LinForm, Rational)> {
        let lead = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or_else(|| Error::Parse("linear form with all coefficients zero".into()))?;
        let inv = lead.recip();
        let coeffs = coeffs.iter().map(|c| c * &inv).collect();
        Ok((LinForm { coeffs }, lead))
    }

    pub fn new(coeffs: &[Rational]) -> Result<LinForm> {
        Ok(Self::canonical(coeffs)?.0)
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<LinForm> {
        let c: Vec<Rational> = coeffs.iter().map(|&x| Rational::from_integer(x.into())).collect();
        Self::new(&c)
    }

    /// Recovers the form from a homogeneous degree-one polynomial.
    pub fn from_poly(p: &Poly) -> Result<(LinForm, Rational)> {
        if p.homogeneous_degree() != Some(1) {
            return Err(Error::Parse(format!("`{p}` is not a linear form")));
        }
        let mut c = vec![Rational::zero(); p.nvars()];
        for (m, coeff) in p.terms() {
            let i = (0..p.nvars()).find(|&i| m.exponent(i) == 1).unwrap();
            c[i] = coeff.clone();
        }
        Self::canonical(&c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.coeffs)
    }

    /// `d alpha / d x_{i+1}`.
    pub fn partial(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(display_rational).collect();
        write!(f, "LinForm[{}]", c.join(", "))
    }
}

/// A denominator factor: a nonconstant homogeneous polynomial with leading
/// coefficient one. Linear factors coincide with canonical [`LinForm`]s,
/// since the graded-lex leading term of a linear form is its first variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor(Poly);

impl Factor {
    /// Normalizes `p`, returning the factor and `c` with `p = c * factor`.
    pub fn canonical(p: &Poly) -> Result<(Factor, Rational)> {
        if p.is_constant() || !p.is_homogeneous() {
            return Err(Error::UnsupportedDenominator {
                witness: p.to_string(),
            });
        }
        let lc = p.leading_coefficient().unwrap().clone();
        Ok((Factor(p.scale(&lc.recip())), lc))
    }

    pub fn new(p: &Poly) -> Result<Factor> {
        Ok(Self::canonical(p)?.0)
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.total_degree().unwrap()
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == 1
    }

    pub fn linform(&self) -> Option<LinForm> {
        if self.is_linear() {
            LinForm::from_poly(&self.0).ok().map(|(l, _)| l)
        } else {
            None
        }
    }
}

impl From<&LinForm> for Factor {
    fn from(l: &LinForm) -> Self {
        let p = l.to_poly();
        debug_assert!(p.leading_coefficient().is_some_and(|c| c.is_one()));
        Factor(p)
    }
}

impl From<LinForm> for Factor {
    fn from(l: LinForm) -> Self {
        Factor::from(&l)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Factor({})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rational::rat;

    #[test]
    fn canonical_sign() {
        let (l, s) = LinForm::canonical(&[rat(0), rat(-2), rat(4)]).unwrap();
        assert_eq!(l.coeffs(), &[rat(0), rat(1), rat(-2)]);
        assert_eq!(s, rat(-2));
        assert!(LinForm::new(&[rat(0), rat(0)]).is_err());
    }

    #[test]
    fn factor_of_linform_matches() {
        let l = LinForm::from_ints(&[-1, 1]).unwrap();
        assert_eq!(l.to_poly(), Poly::parse("x1 - x2", 2).unwrap());
        let f = Factor::from(&l);
        assert_eq!(f.linform(), Some(l));
        let (g, c) = Factor::canonical(&Poly::parse("-x1 + x2", 2).unwrap()).unwrap();
        assert_eq!(g, f);
        assert_eq!(c, rat(-1));
        assert!(Factor::new(&Poly::parse("3", 2).unwrap()).is_err());
    }
}
