use super::csa::Csa;
use super::rho::RElement;
use crate::descent::EmbeddingData;
use crate::error::{Error, Result};
use crate::field::ExactMatrix;

/// Where the images of a trivialisation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivMode {
    Standard,
    ZTwist,
    User,
}

impl TrivMode {
    pub fn name(self) -> &'static str {
        match self {
            TrivMode::Standard => "standard",
            TrivMode::ZTwist => "z-twist",
            TrivMode::User => "user",
        }
    }

    pub fn parse(s: &str) -> Option<TrivMode> {
        match s {
            "standard" => Some(TrivMode::Standard),
            "z-twist" => Some(TrivMode::ZTwist),
            "user" => Some(TrivMode::User),
            _ => None,
        }
    }
}

/// Images of the basis `delta_T` in `Mat_n(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialisation {
    pub mode: TrivMode,
    pub images: Vec<ExactMatrix>,
}

impl Trivialisation {
    /// `delta_T -> M_T`.
    pub fn standard(csa: &Csa, emb: &EmbeddingData) -> Result<Trivialisation> {
        let t = Trivialisation { mode: TrivMode::Standard, images: emb.matrices().to_vec() };
        t.certify(csa)?;
        Ok(t)
    }

    /// `delta_T -> z(T) M_T`, with `z` rescaled so that `z(O) = 1`.
    pub fn z_twist(csa: &Csa, emb: &EmbeddingData, z: &RElement) -> Result<Trivialisation> {
        if !z.is_invertible() {
            return Err(Error::NotInvertible("z has a zero value".into()));
        }
        let z = z.scale(&z.get(0).inv().unwrap());
        let images = emb.matrices().iter().zip(z.values()).map(|(m, v)| m.scale(v)).collect();
        let t = Trivialisation { mode: TrivMode::ZTwist, images };
        t.certify(csa)?;
        Ok(t)
    }

    pub fn user(csa: &Csa, images: Vec<ExactMatrix>) -> Result<Trivialisation> {
        let t = Trivialisation { mode: TrivMode::User, images };
        t.certify(csa)?;
        Ok(t)
    }

    pub fn image(&self, t: usize) -> &ExactMatrix {
        &self.images[t]
    }

    /// Image of a general element.
    pub fn apply(&self, x: &RElement) -> Result<ExactMatrix> {
        let first = &self.images[0];
        let mut acc = ExactMatrix::zero(first.tower(), first.rows(), first.cols());
        for (m, v) in self.images.iter().zip(x.values()) {
            if !v.is_zero() {
                acc = acc.add(&m.scale(v))?;
            }
        }
        Ok(acc)
    }

    /// Multiplicativity on every basis pair, unit and spanning.
    pub fn certify(&self, csa: &Csa) -> Result<()> {
        let n = csa.n();
        let n2 = csa.dim();
        let fail = |what: &str, witness: Vec<usize>| Err(Error::CertificationFailed { what: what.into(), witness });
        if self.images.len() != n2 {
            return Err(Error::DimensionMismatch(format!("expected {n2} images, got {}", self.images.len())));
        }
        if self.images.iter().any(|m| m.rows() != n || m.cols() != n || m.tower() != csa.tower()) {
            return Err(Error::DimensionMismatch(format!("images must be {n}x{n} over the curve's field")));
        }
        if self.images[0] != ExactMatrix::identity(csa.tower(), n) {
            return fail("unit", vec![0]);
        }
        for a in 0..n2 {
            for b in 0..n2 {
                let lhs = self.images[a].mul(&self.images[b])?;
                let rhs = self.images[csa.sum(a, b)].scale(csa.constant(a, b));
                if lhs != rhs {
                    return fail("multiplicativity", vec![a, b]);
                }
            }
        }
        let rows = self.images.iter().map(|m| m.entries().to_vec()).collect();
        let rank = ExactMatrix::from_rows(csa.tower(), rows)?.rank();
        if rank != n2 {
            return fail("spanning", vec![rank]);
        }
        Ok(())
    }
}
