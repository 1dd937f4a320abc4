//! Derivation bases `P_m` for the multiarrangements `(A, m)` of a Coxeter
//! arrangement, the matrices `B^(k)`, and checks that certify them.

mod checks;
mod numfield;
mod pipeline;

use serde::Serialize;

use crate::exactpoly::PolyMatrix;

pub use checks::{
    run_checks, verify_b_properties, verify_bl_formula, verify_degrees, verify_det_jdkx,
    verify_equivariance, verify_jdg, verify_jdg_identities, verify_membership, verify_nesting,
    verify_recursion, verify_ziegler, CheckKind, CheckRecord, Status, VerificationReport,
};
pub use pipeline::{Fault, Level, Pipeline};

/// Column `j` of `p` is the derivation `sum_i p_ij d_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationBasis {
    pub m: usize,
    pub k: usize,
    pub p: PolyMatrix,
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BMatrix {
    pub k: usize,
    pub b: PolyMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BRoute {
    Definition,
    ClosedForm,
}
