//! Symmetric polynomials used by the catalog and the type B checks.

use num_traits::{One, Zero};

use crate::exactpoly::{Monomial, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymKind {
    /// `h_i(x_1^2, ..., x_l^2)`, the complete symmetric polynomial in squares.
    CompleteSq,
    Elementary,
    PowerSum,
}

/// The `i`-th symmetric polynomial of the given kind in `l` variables.
///
/// Negative `i` gives zero. Index zero gives one, except for power sums where
/// `p_0 = l`.
pub fn symmetric_polys(kind: SymKind, i: i64, l: usize) -> Poly {
    if i < 0 {
        return Poly::zero(l);
    }
    let i = i as u32;
    match kind {
        SymKind::PowerSum => {
            if i == 0 {
                return Poly::constant(l, Rational::from_integer((l as i64).into()));
            }
            let terms = (0..l).map(|j| {
                let mut e = vec![0u32; l];
                e[j] = i;
                (Monomial::from_exponents(&e).unwrap(), Rational::one())
            });
            Poly::from_terms(l, terms)
        }
        SymKind::Elementary => {
            let mut out = Vec::new();
            subsets(l, i as usize, 0, &mut vec![0u32; l], &mut out);
            Poly::from_terms(l, out.into_iter().map(|m| (m, Rational::one())))
        }
        SymKind::CompleteSq => {
            let mut out = Vec::new();
            compositions(l, i, 0, &mut vec![0u32; l], &mut out);
            Poly::from_terms(l, out.into_iter().map(|m| (m, Rational::one())))
        }
    }
}

fn subsets(l: usize, k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if k == 0 {
        out.push(Monomial::from_exponents(cur).unwrap());
        return;
    }
    for j in start..l {
        if l - j < k {
            break;
        }
        cur[j] = 1;
        subsets(l, k - 1, j + 1, cur, out);
        cur[j] = 0;
    }
}

/// All exponent vectors `2a` with `sum a = left`, over positions `pos..`.
fn compositions(l: usize, left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos + 1 == l || l == 0 {
        if l > 0 {
            cur[pos] = 2 * left;
        }
        if l > 0 || left == 0 {
            out.push(Monomial::from_exponents(cur).unwrap());
        }
        if l > 0 {
            cur[pos] = 0;
        }
        return;
    }
    for a in 0..=left {
        cur[pos] = 2 * a;
        compositions(l, left - a, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Product `x_1 x_2 ... x_l`.
pub fn monomial_product(l: usize) -> Poly {
    let m = Monomial::from_exponents(&vec![1; l]).unwrap();
    Poly::from_terms(l, [(m, Rational::one())])
}

/// Power sum scaled by `1/i`: `(1/i) sum x_j^i`.
pub fn scaled_power_sum(i: u32, l: usize) -> Poly {
    let p = symmetric_polys(SymKind::PowerSum, i as i64, l);
    if i.is_zero() {
        p
    } else {
        p.scale(&Rational::new(1.into(), (i as i64).into()))
    }
}
