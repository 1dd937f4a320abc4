//! JSON records for polynomials, fractions, matrices and catalog entries.
//!
//! A polynomial is a list of `{coefficient: "p/q", exponents: [..]}` in
//! descending graded-lex order. A fraction adds a denominator list whose
//! entries carry either a linear `form` or a nonlinear `factor`, plus `exp`.

use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::exactpoly::{
    format_rational, parse_rational, ArrFrac, Denominator, Factor, FracMatrix, LinForm, Monomial, Poly, PolyMatrix,
    RatMatrix, Rational,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

pub type PolyRecord = Vec<TermRecord>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<PolyRecord>,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FracRecord {
    pub num: PolyRecord,
    pub den: Vec<DenRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub key: String,
    pub family: String,
    pub rank: usize,
    pub h: u32,
    pub exponents: Vec<u32>,
    pub hyperplane_count: usize,
    pub invariants: Vec<PolyRecord>,
    pub hyperplanes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbit_factors: Vec<PolyRecord>,
    pub defining_poly: PolyRecord,
    pub gram: Vec<Vec<String>>,
    pub generators: Vec<Vec<Vec<String>>>,
    pub generators_complete: bool,
}

pub fn poly_record(p: &Poly) -> PolyRecord {
    p.terms()
        .iter()
        .map(|(m, c)| TermRecord {
            coefficient: format_rational(c),
            exponents: m.exponents(p.nvars()),
        })
        .collect()
}

pub fn poly_from_record(r: &[TermRecord], nvars: usize) -> Result<Poly> {
    let mut terms = Vec::with_capacity(r.len());
    for t in r {
        if t.exponents.len() != nvars {
            return Err(Error::Parse(format!(
                "term has {} exponents, expected {nvars}",
                t.exponents.len()
            )));
        }
        terms.push((Monomial::from_exponents(&t.exponents)?, parse_rational(&t.coefficient)?));
    }
    Ok(Poly::from_terms(nvars, terms))
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_rats(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn frac_record(f: &ArrFrac) -> FracRecord {
    let den = f
        .den()
        .iter()
        .map(|(fac, &exp)| match fac.linform() {
            Some(lf) => DenRecord {
                form: Some(rats(lf.coeffs())),
                factor: None,
                exp,
            },
            None => DenRecord {
                form: None,
                factor: Some(poly_record(fac.poly())),
                exp,
            },
        })
        .collect();
    FracRecord {
        num: poly_record(f.num()),
        den,
    }
}

pub fn frac_from_record(r: &FracRecord, nvars: usize) -> Result<ArrFrac> {
    let num = poly_from_record(&r.num, nvars)?;
    let mut den = Denominator::new();
    for d in &r.den {
        let fac = match (&d.form, &d.factor) {
            (Some(form), None) => Factor::from(LinForm::new(&parse_rats(form)?)?),
            (None, Some(p)) => Factor::new(&poly_from_record(p, nvars)?)?,
            _ => return Err(Error::Parse("denominator entry needs exactly one of form, factor".into())),
        };
        *den.entry(fac).or_insert(0) += d.exp;
    }
    Ok(ArrFrac::new(num, den))
}

pub fn poly_matrix_record(m: &PolyMatrix) -> Vec<Vec<PolyRecord>> {
    m.to_rows().iter().map(|r| r.iter().map(poly_record).collect()).collect()
}

pub fn poly_matrix_from_record(r: &[Vec<PolyRecord>], nvars: usize) -> Result<PolyMatrix> {
    let rows = r
        .iter()
        .map(|row| row.iter().map(|p| poly_from_record(p, nvars)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(nvars, rows)
}

pub fn frac_matrix_record(m: &FracMatrix) -> Vec<Vec<FracRecord>> {
    m.to_rows().iter().map(|r| r.iter().map(frac_record).collect()).collect()
}

pub fn frac_matrix_from_record(r: &[Vec<FracRecord>], nvars: usize) -> Result<FracMatrix> {
    let rows = r
        .iter()
        .map(|row| row.iter().map(|p| frac_from_record(p, nvars)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FracMatrix::from_rows(nvars, rows)
}

pub fn rat_matrix_record(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| rats(r)).collect()
}

pub fn system_record(s: &CoxeterSystem) -> SystemRecord {
    SystemRecord {
        key: s.key().to_string(),
        family: s.family().to_string(),
        rank: s.rank(),
        h: s.coxeter_number(),
        exponents: s.exponents().to_vec(),
        hyperplane_count: s.hyperplane_count(),
        invariants: s.invariants().iter().map(poly_record).collect(),
        hyperplanes: s.hyperplanes().iter().map(|h| rats(h.coeffs())).collect(),
        orbit_factors: s.orbit_factors().iter().map(|o| poly_record(o.factor.poly())).collect(),
        defining_poly: poly_record(&s.defining_poly().poly),
        gram: rat_matrix_record(s.gram()),
        generators: s.generators().iter().map(rat_matrix_record).collect(),
        generators_complete: s.generators_complete(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::lookup;

    #[test]
    fn poly_shape() {
        let p = Poly::parse("-1/3*x1^5 + 5/3*x1^3*x2^2", 2).unwrap();
        let v = serde_json::to_value(poly_record(&p)).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"coefficient": "-1/3", "exponents": [5, 0]},
                {"coefficient": "5/3", "exponents": [3, 2]}
            ])
        );
        assert_eq!(poly_from_record(&poly_record(&p), 2).unwrap(), p);
        assert!(poly_from_record(&poly_record(&p), 3).is_err());
    }

    #[test]
    fn frac_round_trip() {
        let s = lookup("I2(5)").unwrap();
        let q = &s.defining_poly().poly;
        let f = ArrFrac::from_quotient(Poly::parse("x1^3 - 2*x2^3", 2).unwrap(), &q.pow(2), s.denominator_factors())
            .unwrap();
        let rec = frac_record(&f);
        assert!(rec.den.iter().any(|d| d.factor.is_some()));
        assert!(rec.den.iter().any(|d| d.form.is_some()));
        let text = serde_json::to_string(&rec).unwrap();
        let back: FracRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(frac_from_record(&back, 2).unwrap(), f);
    }

    #[test]
    fn system_metadata() {
        let r = system_record(&lookup("B2").unwrap());
        assert_eq!(r.h, 4);
        assert_eq!(r.exponents, vec![1, 3]);
        assert_eq!(r.hyperplane_count, 4);
        assert_eq!(r.invariants[0].len(), 2);
    }
}
