//! Dense matrices over exact rings, with fraction-free determinant and
//! adjugate.

use std::fmt;

use num_traits::{One, Zero};

use super::frac::{ArrFrac, Denominator};
use super::poly::Poly;
use super::rational::{display_rational, Rational};
use crate::error::{Error, Result};

/// The operations a matrix entry needs. `nvars` is ignored by coefficient
/// rings that have no variables.
pub trait ExactRing: Clone + PartialEq + fmt::Debug {
    fn zero_in(nvars: usize) -> Self;
    fn one_in(nvars: usize) -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn ris_zero(&self) -> bool;
    /// Exact quotient, `None` if `o` does not divide `self`.
    fn rdiv_exact(&self, o: &Self) -> Option<Self>;
    /// A rough size used to pick pivots.
    fn weight(&self) -> usize {
        1
    }
    fn rsum(nvars: usize, items: &[Self]) -> Self {
        items.iter().fold(Self::zero_in(nvars), |acc, x| acc.radd(x))
    }
}

impl ExactRing for Rational {
    fn zero_in(_: usize) -> Self {
        Rational::zero()
    }
    fn one_in(_: usize) -> Self {
        Rational::one()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn ris_zero(&self) -> bool {
        self.is_zero()
    }
    fn rdiv_exact(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
}

impl ExactRing for Poly {
    fn zero_in(nvars: usize) -> Self {
        Poly::zero(nvars)
    }
    fn one_in(nvars: usize) -> Self {
        Poly::one(nvars)
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        Poly::neg(self)
    }
    fn ris_zero(&self) -> bool {
        self.is_zero()
    }
    fn rdiv_exact(&self, o: &Self) -> Option<Self> {
        self.divide_exact(o).ok().flatten()
    }
    fn weight(&self) -> usize {
        self.nterms()
    }
}

impl ExactRing for ArrFrac {
    fn zero_in(nvars: usize) -> Self {
        ArrFrac::zero(nvars)
    }
    fn one_in(nvars: usize) -> Self {
        ArrFrac::one(nvars)
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
    fn ris_zero(&self) -> bool {
        self.is_zero()
    }
    fn rdiv_exact(&self, o: &Self) -> Option<Self> {
        let known: Vec<_> = self.den().keys().chain(o.den().keys()).cloned().collect();
        self.div_in(o, &known).ok()
    }
    fn weight(&self) -> usize {
        self.num().nterms()
    }
    fn rsum(nvars: usize, items: &[Self]) -> Self {
        ArrFrac::sum_in(nvars, items)
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<Poly>;
pub type FracMatrix = Matrix<ArrFrac>;
pub type RatMatrix = Matrix<Rational>;

impl<T: ExactRing> Matrix<T> {
    pub fn from_rows(nvars: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if r == 0 || c == 0 || rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged or empty matrix".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            nvars,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(nvars: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, nvars, data }
    }

    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(nvars, rows, cols, |_, _| T::zero_in(nvars))
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        Self::from_fn(nvars, n, n, |i, j| {
            if i == j {
                T::one_in(nvars)
            } else {
                T::zero_in(nvars)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: ExactRing>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: ExactRing, E>(
        &self,
        f: impl FnMut(&T) -> std::result::Result<U, E>,
    ) -> std::result::Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.nvars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self::from_fn(self.nvars, self.rows, self.cols, |i, j| self.get(i, j).radd(o.get(i, j)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self::from_fn(self.nvars, self.rows, self.cols, |i, j| self.get(i, j).rsub(o.get(i, j)))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.rneg())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.rmul(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        Self::from_fn(self.nvars, self.rows, o.cols, |i, j| {
            let terms: Vec<T> = (0..self.cols)
                .filter(|&k| !self.get(i, k).ris_zero() && !o.get(k, j).ris_zero())
                .map(|k| self.get(i, k).rmul(o.get(k, j)))
                .collect();
            T::rsum(self.nvars, &terms)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.ris_zero())
    }

    fn square_check(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )))
        }
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_r) {
            for j in (0..n).filter(|&j| j != skip_c) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: n - 1,
            cols: n - 1,
            nvars: self.nvars,
            data,
        }
    }

    /// Laplace expansion along the first two rows; no divisions.
    fn laplace2(&self) -> Result<T> {
        let n = self.rows;
        let mut terms = Vec::with_capacity(n * (n - 1) / 2);
        for c1 in 0..n {
            for c2 in c1 + 1..n {
                let top = self.get(0, c1).rmul(self.get(1, c2)).rsub(&self.get(0, c2).rmul(self.get(1, c1)));
                if top.ris_zero() {
                    continue;
                }
                let rest: Vec<usize> = (0..n).filter(|&c| c != c1 && c != c2).collect();
                let sub = Matrix::from_fn(self.nvars, n - 2, n - 2, |i, j| self.get(i + 2, rest[j]).clone());
                let t = top.rmul(&sub.det()?);
                terms.push(if (c1 + c2) % 2 == 0 { t.rneg() } else { t });
            }
        }
        Ok(T::rsum(self.nvars, &terms))
    }

    /// Determinant: cofactors for n <= 3, two-row Laplace for n = 4, 5,
    /// Bareiss elimination beyond.
    pub fn det(&self) -> Result<T> {
        self.square_check()?;
        let n = self.rows;
        let g = |i, j| self.get(i, j);
        match n {
            1 => return Ok(g(0, 0).clone()),
            2 => return Ok(g(0, 0).rmul(g(1, 1)).rsub(&g(0, 1).rmul(g(1, 0)))),
            3 => {
                let c0 = g(1, 1).rmul(g(2, 2)).rsub(&g(1, 2).rmul(g(2, 1)));
                let c1 = g(1, 0).rmul(g(2, 2)).rsub(&g(1, 2).rmul(g(2, 0)));
                let c2 = g(1, 0).rmul(g(2, 1)).rsub(&g(1, 1).rmul(g(2, 0)));
                return Ok(g(0, 0)
                    .rmul(&c0)
                    .rsub(&g(0, 1).rmul(&c1))
                    .radd(&g(0, 2).rmul(&c2)));
            }
            4 | 5 => return self.laplace2(),
            _ => {}
        }
        let mut a = self.to_rows();
        let mut prev = T::one_in(self.nvars);
        let mut negate = false;
        for k in 0..n {
            let Some(p) = pick_pivot(&a, k, k) else {
                return Ok(T::zero_in(self.nvars));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[k][k].rmul(&a[i][j]).rsub(&a[i][k].rmul(&a[k][j]));
                    a[i][j] = exact(&t, &prev)?;
                }
                a[i][k] = T::zero_in(self.nvars);
            }
            prev = a[k][k].clone();
        }
        Ok(if negate { prev.rneg() } else { prev })
    }

    /// Determinant and classical adjugate, `self * adj = det * I`.
    pub fn det_adj(&self) -> Result<(T, Self)> {
        self.square_check()?;
        let n = self.rows;
        if n == 1 {
            return Ok((self.get(0, 0).clone(), Self::identity(self.nvars, 1)));
        }
        if n <= 3 {
            return self.det_adj_cofactor();
        }
        // Fraction-free Gauss-Jordan on [A | I] ends at [d I | (d / det A) adj(A)].
        let nv = self.nvars;
        let mut a: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { T::one_in(nv) } else { T::zero_in(nv) }));
                r
            })
            .collect();
        let mut negate = false;
        let mut prev = T::one_in(nv);
        for k in 0..n {
            let Some(p) = pick_pivot(&a, k, k) else {
                return self.det_adj_cofactor();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in (0..n).filter(|&i| i != k) {
                for j in (0..2 * n).filter(|&j| j != k) {
                    let t = a[k][k].rmul(&a[i][j]).rsub(&a[i][k].rmul(&a[k][j]));
                    a[i][j] = exact(&t, &prev)?;
                }
                a[i][k] = T::zero_in(nv);
            }
            prev = a[k][k].clone();
        }
        // The swaps act on the identity block too, so the right half is
        // X with X A = det(PA) I, i.e. det(P) adj(A).
        let det = if negate { prev.rneg() } else { prev };
        let adj = Self::from_fn(nv, n, n, |i, j| {
            let v = a[i][n + j].clone();
            if negate {
                v.rneg()
            } else {
                v
            }
        });
        Ok((det, adj))
    }

    fn det_adj_cofactor(&self) -> Result<(T, Self)> {
        let n = self.rows;
        let mut adj = Self::zeros(self.nvars, n, n);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(j, i).det()?;
                adj.set(i, j, if (i + j) % 2 == 0 { d } else { d.rneg() });
            }
        }
        let det = T::rsum(
            self.nvars,
            &(0..n)
                .map(|j| self.get(0, j).rmul(adj.get(j, 0)))
                .collect::<Vec<_>>(),
        );
        Ok((det, adj))
    }

    /// Checks `self * adj == det * I` exactly.
    pub fn verify_adjugate(&self, det: &T, adj: &Self) -> bool {
        let prod = self.mul(adj);
        let n = self.rows;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = prod.get(i, j);
                if i == j {
                    e == det
                } else {
                    e.ris_zero()
                }
            })
        })
    }
}

fn pick_pivot<T: ExactRing>(a: &[Vec<T>], k: usize, col: usize) -> Option<usize> {
    (k..a.len())
        .filter(|&i| !a[i][col].ris_zero())
        .min_by_key(|&i| (a[i][col].weight(), i))
}

fn exact<T: ExactRing>(t: &T, d: &T) -> Result<T> {
    t.rdiv_exact(d).ok_or_else(|| Error::TheoremViolation {
        what: "fraction-free elimination".into(),
        witness: format!("{t:?} not divisible by {d:?}"),
    })
}

impl PolyMatrix {
    pub fn to_frac(&self) -> FracMatrix {
        self.map(|p| ArrFrac::from_poly(p.clone()))
    }

    pub fn substitute_linear(&self, m: &[Vec<Rational>]) -> Result<PolyMatrix> {
        self.try_map(|p| p.substitute_linear(m))
    }
}

impl RatMatrix {
    pub fn to_poly(&self, nvars: usize) -> PolyMatrix {
        let mut out = self.map(|c| Poly::constant(nvars, c.clone()));
        out.nvars = nvars;
        out
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        let (d, adj) = self.det_adj()?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(adj.map(|x| x / &d))
    }
}

impl FracMatrix {
    /// Converts back to polynomials, or returns the first offending entry.
    pub fn to_poly(&self) -> std::result::Result<PolyMatrix, (usize, usize, ArrFrac)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_polynomial() {
                    return Err((i, j, self.get(i, j).clone()));
                }
            }
        }
        Ok(self.map(|f| f.as_poly().unwrap().clone()))
    }

    pub fn substitute_linear(&self, m: &[Vec<Rational>]) -> Result<FracMatrix> {
        self.try_map(|p| p.substitute_linear(m))
    }

    pub fn mul_poly(&self, o: &PolyMatrix) -> FracMatrix {
        self.mul(&o.to_frac())
    }
}

/// Determinant and adjugate of a fraction matrix: each row is cleared by the
/// least common multiple of its denominators, the polynomial matrix is
/// eliminated fraction-free, and denominators are reattached.
pub fn mat_det_adj(m: &FracMatrix) -> Result<(ArrFrac, FracMatrix)> {
    m.square_check()?;
    let n = m.rows;
    let nv = m.nvars;
    let mut row_dens: Vec<Denominator> = Vec::with_capacity(n);
    let mut cleared: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = Denominator::new();
        for x in m.row(i) {
            for (f, e) in x.den() {
                let s = r.entry(f.clone()).or_insert(0);
                *s = (*s).max(*e);
            }
        }
        let row = m
            .row(i)
            .iter()
            .map(|x| {
                let mut missing = Denominator::new();
                for (f, e) in &r {
                    let have = x.den().get(f).copied().unwrap_or(0);
                    if have < *e {
                        missing.insert(f.clone(), e - have);
                    }
                }
                x.num() * &super::frac::den_poly(nv, &missing)
            })
            .collect();
        cleared.push(row);
        row_dens.push(r);
    }
    let nmat = PolyMatrix::from_rows(nv, cleared)?;
    let (dn, adjn) = nmat.det_adj()?;
    let mut total = Denominator::new();
    for r in &row_dens {
        for (f, e) in r {
            *total.entry(f.clone()).or_insert(0) += e;
        }
    }
    let det = ArrFrac::new(dn, total.clone());
    // adj(M)_ij = adj(N)_ij * r_j / prod r
    let adj = FracMatrix::from_fn(nv, n, n, |i, j| {
        let mut d = total.clone();
        for (f, e) in &row_dens[j] {
            *d.get_mut(f).unwrap() -= e;
        }
        ArrFrac::new(adjn.get(i, j).clone(), d)
    });
    Ok((det, adj))
}

impl<T: ExactRing + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: ExactRing> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Renders a rational matrix compactly, e.g. `[[1, 0], [0, 1/2]]`.
pub fn format_rat_matrix(m: &RatMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let c: Vec<String> = m.row(i).iter().map(display_rational).collect();
            format!("[{}]", c.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
