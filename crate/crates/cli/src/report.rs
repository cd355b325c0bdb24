//! JSON shapes printed by the subcommands. Every type deserializes back from
//! its own output.

use num_complex::Complex64;
use qinv_core::poly::PolyJson;
use serde::{Deserialize, Serialize};

pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

/// `eval` on a full state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateReport {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f4: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bilinear_form: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic: Option<bool>,
}

/// `eval --dump-poly NAME`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyDump {
    pub name: String,
    pub degree: Option<u32>,
    pub term_count: usize,
    pub display: String,
    pub poly: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub which: String,
    pub order: usize,
    pub rotations: usize,
    pub contains_minus_identity: bool,
    /// Order of the image in `GL(A) / {±I}`; 576 for the full group.
    pub order_mod_sign: usize,
    pub generators: Vec<[[String; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<[[String; 4]; 4]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub orbit_dim: usize,
    pub max_orbit_dim: usize,
    /// Singular values of the orbit tangent map, descending.
    pub singular_values: Vec<f64>,
    pub generic: bool,
    /// Present when the input was given in A-coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_nonzero: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The statement being checked, in words.
    pub claim: String,
    pub status: Status,
    /// Measured error: `0` for exact checks that hold, otherwise the size of
    /// the discrepancy (term count or numeric error).
    pub residual: f64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}
