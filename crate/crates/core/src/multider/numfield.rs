//! Divisibility by powers of `x1 - t x2` over `Q[t]/(mu)`, used for the
//! irrational reflecting lines of a dihedral arrangement.
//!
//! A monic orbit factor `F(x1, x2) = prod (x1 - t_i x2)` with squarefree
//! `mu(t) = F(t, 1)` splits `Q[t]/(mu)` into a product of fields, one per
//! Galois orbit of the `t_i`, so a zero remainder there means a zero remainder
//! at every root simultaneously.

use num_traits::Zero;

use crate::exactpoly::{Factor, Poly, Rational};

/// Element of `Q[t]/(mu)`, coefficients by ascending power of `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem(Vec<Rational>);

pub struct Field {
    /// `mu` without its leading 1, ascending.
    tail: Vec<Rational>,
}

impl Field {
    /// `mu(t) = F(t, 1)` for a monic binary form whose leading term is `x1^d`.
    pub fn from_factor(f: &Factor) -> Field {
        let d = f.degree() as usize;
        let mut tail = vec![Rational::zero(); d];
        for (m, c) in f.poly().terms() {
            let a = m.exponent(0) as usize;
            if a < d {
                tail[a] = c.clone();
            }
        }
        Field { tail }
    }

    fn dim(&self) -> usize {
        self.tail.len()
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![Rational::zero(); self.dim()])
    }

    pub fn constant(&self, c: &Rational) -> Elem {
        let mut e = self.zero();
        e.0[0] = c.clone();
        e
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    /// Multiplication by `t`.
    pub fn mul_t(&self, a: &Elem) -> Elem {
        let d = self.dim();
        let top = a.0[d - 1].clone();
        let mut out = Vec::with_capacity(d);
        out.push(Rational::zero());
        out.extend(a.0[..d - 1].iter().cloned());
        if !top.is_zero() {
            for (o, c) in out.iter_mut().zip(&self.tail) {
                *o -= &top * c;
            }
        }
        Elem(out)
    }

    pub fn is_zero(a: &Elem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    /// `p - t q` for binary forms `p, q` of degree `e`, as coefficients of
    /// `x1^a x2^(e-a)` for `a = 0..=e`.
    pub fn theta(&self, p: &Poly, q: &Poly, e: u32) -> Vec<Elem> {
        let mut out = vec![self.zero(); e as usize + 1];
        for (m, c) in p.terms() {
            let slot = &mut out[m.exponent(0) as usize];
            slot.0[0] += c;
        }
        for (m, c) in q.terms() {
            let a = m.exponent(0) as usize;
            let prod = self.mul_t(&self.constant(c));
            out[a] = self.add(&out[a], &Elem(prod.0.iter().map(|x| -x).collect()));
        }
        out
    }

    /// Divides by `x1 - t x2` once; `Err(remainder)` if it does not divide.
    pub fn divide_line(&self, coeffs: &[Elem]) -> Result<Vec<Elem>, Elem> {
        if coeffs.len() <= 1 {
            return match coeffs.first() {
                Some(c) if !Field::is_zero(c) => Err(c.clone()),
                _ => Ok(Vec::new()),
            };
        }
        let e = coeffs.len() - 1;
        let mut q = vec![self.zero(); e];
        q[e - 1] = coeffs[e].clone();
        for a in (1..e).rev() {
            q[a - 1] = self.add(&coeffs[a], &self.mul_t(&q[a]));
        }
        let r = self.add(&coeffs[0], &self.mul_t(&q[0]));
        if Field::is_zero(&r) {
            Ok(q)
        } else {
            Err(r)
        }
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
