//! Catalog of the irreducible reflection arrangements of types A, B, D and
//! I2(m), with basic invariants, exponents, Gram matrix and generators.

mod catalog;
pub mod symmetric;

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactpoly::{Factor, LinForm, Poly, PolyMatrix, RatMatrix, Rational};

pub use symmetric::{symmetric_polys, SymKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    D,
    I2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I2 => "I2",
        })
    }
}

/// A homogeneous factor of `Q` that is irreducible-or-not over the rationals
/// but carries no rational line: it is the product of the `degree` forms of
/// a Galois-stable set of irrational hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitFactor {
    pub factor: Factor,
}

impl OrbitFactor {
    pub fn degree(&self) -> u32 {
        self.factor.degree()
    }
}

/// The defining polynomial together with its factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    pub poly: Poly,
    /// Linear forms first, then orbit factors; the product is `poly`.
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    key: String,
    family: Family,
    rank: usize,
    order_param: u32,
    hyperplanes: Vec<LinForm>,
    orbits: Vec<OrbitFactor>,
    invariants: Vec<Poly>,
    exponents: Vec<u32>,
    coxeter_number: u32,
    gram: RatMatrix,
    generators: Vec<RatMatrix>,
    generators_complete: bool,
    q: QPoly,
}

impl CoxeterSystem {
    pub fn key(&self) -> &str {
        &self.key
    }
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn order_param(&self) -> u32 {
        self.order_param
    }
    /// Rational hyperplane forms.
    pub fn hyperplanes(&self) -> &[LinForm] {
        &self.hyperplanes
    }
    /// Factors of `Q` that collect irrational hyperplanes.
    pub fn orbit_factors(&self) -> &[OrbitFactor] {
        &self.orbits
    }
    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len() + self.orbits.iter().map(|o| o.degree() as usize).sum::<usize>()
    }
    pub fn invariants(&self) -> &[Poly] {
        &self.invariants
    }
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }
    /// `rho(g)` for each generating reflection: column `j` is the image of `x_j`.
    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }
    /// False when only the rational reflections of the group are listed,
    /// which happens for dihedral groups other than order 8.
    pub fn generators_complete(&self) -> bool {
        self.generators_complete
    }
    pub fn defining_poly(&self) -> &QPoly {
        &self.q
    }
    /// Every factor that may appear in a denominator of the pipeline.
    pub fn denominator_factors(&self) -> &[Factor] {
        &self.q.factors
    }
    /// Column-major `rho(g)` rows as plain vectors, the argument format of
    /// `substitute_linear`.
    pub fn generator_rows(&self) -> Vec<Vec<Vec<Rational>>> {
        self.generators.iter().map(|g| g.to_rows()).collect()
    }
}

/// Builds a catalog entry and checks all of its structural invariants.
pub fn build_system(family: Family, rank: usize, order_param: u32) -> Result<CoxeterSystem> {
    let raw = match family {
        Family::A => {
            if rank < 1 {
                return Err(unsupported("A needs rank >= 1"));
            }
            catalog::type_a(rank)
        }
        Family::B => {
            if rank < 1 {
                return Err(unsupported("B needs rank >= 1"));
            }
            catalog::type_b(rank)
        }
        Family::D => {
            if rank < 3 {
                return Err(unsupported("D needs rank >= 3"));
            }
            catalog::type_d(rank)
        }
        Family::I2 => {
            if rank != 2 || order_param < 3 {
                return Err(unsupported("I2(m) needs rank 2 and m >= 3"));
            }
            catalog::type_i2(order_param)
        }
    }?;
    let key = match family {
        Family::I2 => format!("I2({order_param})"),
        _ => format!("{family}{rank}"),
    };
    assemble(key, family, rank, order_param, raw)
}

fn unsupported(msg: &str) -> Error {
    Error::UnsupportedSystem(msg.to_string())
}

/// Parses keys such as `B3`, `A4`, `D4` and `I2(5)`.
pub fn parse_key(key: &str) -> Result<(Family, usize, u32)> {
    let unknown = || Error::UnknownSystem(key.to_string());
    let k = key.trim().to_ascii_uppercase();
    if let Some(rest) = k.strip_prefix("I2(") {
        let m: u32 = rest
            .strip_suffix(')')
            .and_then(|s| s.parse().ok())
            .ok_or_else(unknown)?;
        return Ok((Family::I2, 2, m));
    }
    let (fam, num) = k.split_at(k.chars().next().map_or(0, |c| c.len_utf8()));
    let family = match fam {
        "A" => Family::A,
        "B" => Family::B,
        "D" => Family::D,
        _ => return Err(unknown()),
    };
    let rank: usize = num.parse().map_err(|_| unknown())?;
    Ok((family, rank, 0))
}

/// Resolves a catalog key. Keys that parse but name no supported system are
/// reported as unknown too.
pub fn lookup(key: &str) -> Result<CoxeterSystem> {
    let (f, r, m) = parse_key(key)?;
    build_system(f, r, m).map_err(|e| match e {
        Error::UnsupportedSystem(msg) => Error::UnknownSystem(format!("{key} ({msg})")),
        other => other,
    })
}

/// Keys listed by the `catalog` command.
pub fn catalog_keys() -> Vec<String> {
    let mut keys = Vec::new();
    keys.extend((1..=5).map(|r| format!("A{r}")));
    keys.extend((2..=5).map(|r| format!("B{r}")));
    keys.extend((3..=5).map(|r| format!("D{r}")));
    keys.extend((3..=8).map(|m| format!("I2({m})")));
    keys
}

/// Unchecked data produced by a family builder.
pub(crate) struct RawSystem {
    pub hyperplanes: Vec<LinForm>,
    pub orbits: Vec<Factor>,
    pub invariants: Vec<Poly>,
    pub exponents: Vec<u32>,
    pub gram: RatMatrix,
    pub generators: Vec<RatMatrix>,
    pub generators_complete: bool,
}

fn integrity(key: &str, detail: impl Into<String>) -> Error {
    Error::CatalogIntegrity {
        system: key.to_string(),
        detail: detail.into(),
    }
}

pub fn jacobian_of(polys: &[Poly]) -> PolyMatrix {
    let n = polys[0].nvars();
    PolyMatrix::from_fn(n, n, polys.len(), |i, j| polys[j].partial(i))
}

fn assemble(
    key: String,
    family: Family,
    rank: usize,
    order_param: u32,
    raw: RawSystem,
) -> Result<CoxeterSystem> {
    let l = rank;
    let fail = |d: String| integrity(&key, d);
    let RawSystem {
        hyperplanes,
        orbits,
        invariants,
        exponents,
        gram,
        generators,
        generators_complete,
    } = raw;

    if invariants.len() != l || exponents.len() != l {
        return Err(fail(format!("expected {l} invariants and exponents")));
    }
    if exponents.windows(2).any(|w| w[0] > w[1]) {
        return Err(fail("exponents not ascending".into()));
    }
    let h = exponents[l - 1] + 1;
    for i in 0..l {
        if exponents[i] + exponents[l - 1 - i] != h {
            return Err(fail(format!("exponent duality fails at position {}", i + 1)));
        }
        if invariants[i].homogeneous_degree() != Some(exponents[i] + 1) {
            return Err(fail(format!("invariant f{} has the wrong degree", i + 1)));
        }
    }
    let count = hyperplanes.len() + orbits.iter().map(|f| f.degree() as usize).sum::<usize>();
    let total: u32 = exponents.iter().sum();
    if count != total as usize {
        return Err(fail(format!("{count} hyperplanes but exponents sum to {total}")));
    }

    // Gram matrix: symmetric, positive definite, preserved by each generator.
    if gram.transpose() != gram {
        return Err(fail("Gram matrix not symmetric".into()));
    }
    for k in 1..=l {
        let lead = RatMatrix::from_fn(0, k, k, |i, j| gram.get(i, j).clone());
        if !lead.det()?.is_positive() {
            return Err(fail("Gram matrix not positive definite".into()));
        }
    }
    let grows: Vec<Vec<Vec<Rational>>> = generators.iter().map(|g| g.to_rows()).collect();
    for (n, g) in generators.iter().enumerate() {
        if g.transpose().mul(&gram).mul(g) != gram {
            return Err(fail(format!("generator {} does not preserve the Gram matrix", n + 1)));
        }
        for (i, f) in invariants.iter().enumerate() {
            if f.substitute_linear(&grows[n])? != *f {
                return Err(fail(format!("f{} not fixed by generator {}", i + 1, n + 1)));
            }
        }
    }

    let mut factors: Vec<Factor> = hyperplanes.iter().map(Factor::from).collect();
    factors.extend(orbits.iter().cloned());
    let qpoly = factors.iter().fold(Poly::one(l), |acc, f| &acc * f.poly());
    let jac = jacobian_of(&invariants);
    let det = jac.det()?;
    if det.is_constant_multiple(&qpoly).is_none() {
        return Err(fail("det J(f) is not a constant multiple of Q".into()));
    }
    for (n, g) in generators.iter().enumerate() {
        let sign = g.det()?;
        if qpoly.substitute_linear(&grows[n])? != qpoly.scale(&sign) {
            return Err(fail(format!("Q is not anti-invariant under generator {}", n + 1)));
        }
        if sign != -Rational::one() || !g.mul(g).eq(&RatMatrix::identity(0, l)) {
            return Err(fail(format!("generator {} is not a reflection", n + 1)));
        }
    }
    if generators.is_empty() {
        return Err(fail("no generators".into()));
    }
    for o in &orbits {
        // irrational lines are parametrized as x1 - t x2
        let top = o.poly().terms()[0].0;
        if top.exponent(0) != o.degree() {
            return Err(fail(format!("orbit factor {} contains the line x2 = 0", o)));
        }
    }

    Ok(CoxeterSystem {
        key,
        family,
        rank,
        order_param,
        hyperplanes,
        orbits: orbits.into_iter().map(|factor| OrbitFactor { factor }).collect(),
        invariants,
        exponents,
        coxeter_number: h,
        gram,
        generators,
        generators_complete,
        q: QPoly {
            poly: qpoly,
            factors,
        },
    })
}

/// Builds `[[..]]` rational matrices from integer rows.
pub(crate) fn int_matrix(rows: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_rows(
        0,
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect(),
    )
    .expect("nonempty matrix")
}
