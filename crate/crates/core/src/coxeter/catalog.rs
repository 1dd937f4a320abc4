//! Raw data for each family. Everything here is checked by `assemble`.

use num_traits::{One, Zero};

use super::symmetric::{monomial_product, scaled_power_sum};
use super::{int_matrix, RawSystem};
use crate::error::Result;
use crate::exactpoly::{Factor, LinForm, Monomial, Poly, RatMatrix, Rational};

fn swap_matrix(l: usize, i: usize) -> RatMatrix {
    let mut rows = vec![vec![0i64; l]; l];
    for (k, row) in rows.iter_mut().enumerate() {
        let img = if k == i {
            i + 1
        } else if k == i + 1 {
            i
        } else {
            k
        };
        row[img] = 1;
    }
    int_matrix(&rows)
}

fn diag(entries: &[i64]) -> RatMatrix {
    let l = entries.len();
    int_matrix(
        &(0..l)
            .map(|i| (0..l).map(|j| if i == j { entries[i] } else { 0 }).collect())
            .collect::<Vec<_>>(),
    )
}

fn pair_forms(l: usize) -> Result<Vec<LinForm>> {
    let mut out = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            for s in [-1i64, 1] {
                let mut c = vec![0i64; l];
                c[i] = 1;
                c[j] = s;
                out.push(LinForm::from_ints(&c)?);
            }
        }
    }
    Ok(out)
}

pub(crate) fn type_b(l: usize) -> Result<RawSystem> {
    let mut hyperplanes = Vec::new();
    for i in 0..l {
        let mut c = vec![0i64; l];
        c[i] = 1;
        hyperplanes.push(LinForm::from_ints(&c)?);
    }
    hyperplanes.extend(pair_forms(l)?);
    let invariants = (1..=l as u32).map(|i| scaled_power_sum(2 * i, l)).collect();
    let exponents = (1..=l as u32).map(|i| 2 * i - 1).collect();
    let mut flip = vec![1i64; l];
    flip[0] = -1;
    let mut generators = vec![diag(&flip)];
    generators.extend((0..l - 1).map(|i| swap_matrix(l, i)));
    Ok(RawSystem {
        hyperplanes,
        orbits: Vec::new(),
        invariants,
        exponents,
        gram: RatMatrix::identity(0, l),
        generators,
        generators_complete: true,
    })
}

pub(crate) fn type_d(l: usize) -> Result<RawSystem> {
    let hyperplanes = pair_forms(l)?;
    let mut invariants: Vec<Poly> = (1..l as u32).map(|i| scaled_power_sum(2 * i, l)).collect();
    invariants.push(monomial_product(l));
    // stable: on a degree tie the power sum stays first
    invariants.sort_by_key(|f| f.homogeneous_degree());
    let exponents = invariants
        .iter()
        .map(|f| f.homogeneous_degree().unwrap() - 1)
        .collect();
    let mut generators: Vec<RatMatrix> = (0..l - 1).map(|i| swap_matrix(l, i)).collect();
    // x1 -> -x2, x2 -> -x1
    let mut rows = vec![vec![0i64; l]; l];
    rows[1][0] = -1;
    rows[0][1] = -1;
    for (k, row) in rows.iter_mut().enumerate().skip(2) {
        row[k] = 1;
    }
    generators.push(int_matrix(&rows));
    Ok(RawSystem {
        hyperplanes,
        orbits: Vec::new(),
        invariants,
        exponents,
        gram: RatMatrix::identity(0, l),
        generators,
        generators_complete: true,
    })
}

/// `A_l` on the hyperplane `y_1 + ... + y_{l+1} = 0`, in the coordinates
/// `x_i = y_i` for `i <= l`.
pub(crate) fn type_a(l: usize) -> Result<RawSystem> {
    let n = l + 1;
    let y: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            (0..l)
                .map(|i| {
                    if j == l {
                        -Rational::one()
                    } else if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut hyperplanes = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c: Vec<Rational> = (0..l).map(|k| &y[i][k] - &y[j][k]).collect();
            hyperplanes.push(LinForm::new(&c)?);
        }
    }
    let ypolys: Vec<Poly> = y.iter().map(|c| Poly::linear(c)).collect();
    let invariants = (2..=n as u32)
        .map(|k| {
            ypolys
                .iter()
                .fold(Poly::zero(l), |acc, yp| &acc + &yp.pow(k))
        })
        .collect();
    let exponents = (1..=l as u32).collect();
    // Gram matrix of the projections of e_1..e_l onto the hyperplane.
    let inv = Rational::new(1.into(), (n as i64).into());
    let gram = RatMatrix::from_fn(0, l, l, |i, j| {
        if i == j {
            Rational::one() - &inv
        } else {
            -inv.clone()
        }
    });
    // transposition (i, i+1) of the y's; column j is the image of x_j
    let generators = (0..l)
        .map(|t| {
            let sigma = |j: usize| {
                if j == t {
                    t + 1
                } else if j == t + 1 {
                    t
                } else {
                    j
                }
            };
            RatMatrix::from_fn(0, l, l, |i, j| y[sigma(j)][i].clone())
        })
        .collect();
    Ok(RawSystem {
        hyperplanes,
        orbits: Vec::new(),
        invariants,
        exponents,
        gram,
        generators,
        generators_complete: true,
    })
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Real and imaginary parts of `(x1 + i x2)^d`.
fn z_power(d: u32) -> (Poly, Poly) {
    let mut re = Vec::new();
    let mut im = Vec::new();
    for k in 0..=d {
        let c = binom(d, k);
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        let m = Monomial::from_exponents(&[d - k, k]).unwrap();
        let v = Rational::from_integer((sign * c).into());
        if k % 2 == 0 {
            re.push((m, v));
        } else {
            im.push((m, v));
        }
    }
    (Poly::from_terms(2, re), Poly::from_terms(2, im))
}

fn mobius(mut n: u32) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

pub(crate) fn type_i2(m: u32) -> Result<RawSystem> {
    let candidates: Vec<LinForm> = [[0, 1], [1, 0], [1, -1], [1, 1]]
        .iter()
        .map(|c| LinForm::from_ints(c))
        .collect::<Result<_>>()?;
    let mut hyperplanes = Vec::new();
    let mut orbits = Vec::new();
    // Im(z^m) = prod over b | m of psi_b, psi_b = prod_{d | b} Im(z^d)^mu(b/d).
    for b in (1..=m).filter(|b| m % b == 0) {
        let mut num = Poly::one(2);
        let mut den = Poly::one(2);
        for d in (1..=b).filter(|d| b % d == 0) {
            match mobius(b / d) {
                1 => num = &num * &z_power(d).1,
                -1 => den = &den * &z_power(d).1,
                _ => {}
            }
        }
        let mut psi = num
            .divide_exact(&den)?
            .expect("cyclotomic-type quotient is exact");
        for c in &candidates {
            while let Some(q) = psi.divide_exact(&c.to_poly())? {
                hyperplanes.push(c.clone());
                psi = q;
            }
        }
        if !psi.is_constant() {
            orbits.push(Factor::new(&psi)?);
        }
    }
    let f1 = scaled_power_sum(2, 2);
    let f2 = z_power(m).0;
    let mut generators = vec![diag(&[1, -1])];
    if m % 2 == 0 {
        generators.push(diag(&[-1, 1]));
    }
    if m % 4 == 0 {
        generators.push(int_matrix(&[vec![0, 1], vec![1, 0]]));
        generators.push(int_matrix(&[vec![0, -1], vec![-1, 0]]));
    }
    Ok(RawSystem {
        hyperplanes,
        orbits,
        invariants: vec![f1, f2],
        exponents: vec![1, m - 1],
        gram: RatMatrix::identity(0, 2),
        generators,
        generators_complete: m == 4,
    })
}
