//! Re-checking stored artifacts against a curve.

use serde_json::Value;

use crate::algebra::{validate_rho, Csa};
use crate::curve::TorsionTable;
use crate::descent::{EpsilonTable, GBasis};
use crate::error::{Error, Result};
use crate::geometry::{descend, quadrics_for_c};
use crate::io;

fn mismatch(what: &str) -> Error {
    Error::CertificationFailed { what: what.into(), witness: vec![] }
}

/// Re-runs every check that applies to an artifact of the given kind and
/// returns a one-line summary.
pub fn verify_artifact(table: &TorsionTable, v: &Value) -> Result<String> {
    let curve = table.curve();
    let kind = io::kind_of(v)?;
    if kind != "curve" {
        io::check_hash(curve, v)?;
    }
    match kind {
        "curve" => {
            let c = io::curve_from_json(v)?;
            if io::curve_hash(&c) != io::curve_hash(curve) {
                return Err(Error::CurveMismatch { expected: io::curve_hash(curve), found: io::curve_hash(&c) });
            }
            Ok("curve".into())
        }
        "torsion" => {
            if &io::torsion_to_json(table) != v {
                return Err(mismatch("torsion table differs from recomputation"));
            }
            Ok("torsion table recomputed".into())
        }
        "rho" => {
            let rho = io::rho_from_json(table, v)?;
            let rep = validate_rho(table, &rho)?;
            Ok(format!("rho accepted ({})", rep.criterion))
        }
        "relement" => {
            let z = io::relement_from_json(curve, v)?;
            if z.len() != table.len() {
                return Err(Error::DimensionMismatch("z must have one value per torsion point".into()));
            }
            if !z.is_invertible() {
                return Err(Error::NotInvertible("z has a zero value".into()));
            }
            Ok("invertible element of R".into())
        }
        "quadrics" => {
            let (rho, q) = io::quadrics_from_json(table, v)?;
            let rho = validate_rho(table, &rho)?.normalized;
            if quadrics_for_c(table, &rho)? != q {
                return Err(mismatch("quadrics differ from recomputation"));
            }
            Ok(format!("{} quadrics, rank {}", q.len(), q.rank()))
        }
        "csa" => {
            let csa = io::csa_from_json(table, v)?;
            Ok(format!("central simple certificate holds (dimension {})", csa.dim()))
        }
        "trivialisation" => {
            let (csa, t) = io::triv_from_json(table, v)?;
            t.certify(&csa)?;
            Ok(format!("{} trivialisation certified", t.mode.name()))
        }
        "descent" => {
            let s = io::descent_from_json(table, v)?;
            let rho = validate_rho(table, &s.rho)?.normalized;
            let eps = EpsilonTable::compute(table)?;
            let csa = Csa::build(table, &eps, &rho)?;
            if csa.constants() != s.csa.constants() {
                return Err(mismatch("structure constants differ from eps * rho"));
            }
            s.trivialisation.certify(&csa)?;
            if quadrics_for_c(table, &rho)? != s.quadrics {
                return Err(mismatch("quadrics differ from recomputation"));
            }
            let g = GBasis::compute(table)?;
            let out = descend(table, &eps, &g, &rho, &s.trivialisation, s.seed)?;
            if out.equation != s.equation {
                return Err(mismatch("plane cubic differs from recomputation"));
            }
            Ok("descent re-run; all checks pass".into())
        }
        other => Err(Error::Parse(format!("unknown artifact kind {other:?}"))),
    }
}
