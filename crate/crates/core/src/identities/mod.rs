//! Named polynomials and rational functions, identity certification by grid
//! evaluation, and sign claims on declared regions.

mod catalog;
mod named;
mod poly;
mod scalar;

pub use catalog::{
    g_case_structure, l_value, verify_all_identities, verify_dn3_ratio, verify_g_identity,
    verify_identity, verify_identity_at, verify_sign_claim, ClaimFamily, Grid, Identity,
    IdentityCheck, IdentityReport, Region, SampleSpec, Sign, UnknownClaim, FAMILIES,
};
pub use named::Forms;
pub use poly::{sha256_hex, BivarPoly, PolyError, PolyTable, BUILTIN_CHECKSUM};
pub use scalar::{Adjoin, Affine, DegreeBound, Point, Scalar};

use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NamedError {
    #[error("unknown name {0}")]
    Unknown(String),
    #[error("{name} is undefined at (m, i) = ({m}, {i}); needs 1 <= i <= m-1")]
    Domain { name: String, m: i64, i: i64 },
    #[error("{0} is surd-valued; use l_value")]
    Irrational(String),
}

/// Rational functions of `(m, i)` by name, in addition to every table polynomial.
pub const RATIONAL_FUNCTION_NAMES: [&str; 27] = [
    "A", "B", "C", "Delta1", "Delta1_closed", "U", "V", "W", "Delta2", "Delta2_closed", "A1",
    "B1", "C1", "D1", "F1", "Y1", "Y2", "Y3", "Y4", "Z1", "Z2", "Z3", "Z4", "Z5",
    "Z6", "kp2", "E1",
];

/// Exact value of a named quantity. Table polynomials accept any point;
/// the univariate ones (`g`, `f`, `DN3_*`) read `m` as their variable.
pub fn eval_named(forms: &Forms, name: &str, m: i64, i: i64) -> Result<Rational, NamedError> {
    if let Ok(p) = forms.table().get(name) {
        return Ok(p.eval_at(m, i));
    }
    if name == "L" {
        return Err(NamedError::Irrational(name.to_string()));
    }
    if !RATIONAL_FUNCTION_NAMES.contains(&name) {
        return Err(NamedError::Unknown(name.to_string()));
    }
    if !(1 <= i && i < m) {
        return Err(NamedError::Domain {
            name: name.to_string(),
            m,
            i,
        });
    }
    let p = Point::at(m, i);
    let f = forms;
    let v = match name {
        "A" => f.a(&p),
        "B" => f.b(&p),
        "C" => f.c(&p),
        "Delta1" => f.delta1(&p),
        "Delta1_closed" => f.delta1_closed(&p),
        "U" => f.u(&p),
        "V" => f.v(&p),
        "W" => f.w(&p),
        "Delta2" => f.delta2(&p),
        "Delta2_closed" => f.delta2_closed(&p),
        "A1" => f.a1(&p),
        "B1" => f.b1(&p),
        "C1" => f.c1(&p),
        "D1" => f.d1(&p),
        "E1" => f.e1(&p),
        "F1" => f.f1(&p),
        "Y1" => f.y1(&p),
        "Y2" => f.y2(&p),
        "Y3" => f.y3(&p),
        "Y4" => f.y4(&p),
        "kp2" => f.kp2(&p),
        z => {
            let k: usize = z[1..].parse().expect("Z1..Z6");
            f.z(&p)[k - 1].clone()
        }
    };
    Ok(v)
}
