use crate::algebra::{GammaWitness, Trivialisation};
use crate::curve::Point;
use crate::descent::GBasis;
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldElement};

/// `(gamma(T)^-1 G_T(P))_T`, or `(G_T(P))_T` without `gamma`.
///
/// With `gamma`, `P` must be defined over an extension of the tower of `gamma`.
pub fn g_eval(g: &GBasis, gamma: Option<&GammaWitness>, p: &Point) -> Result<Vec<FieldElement>> {
    let vals = g.eval(p)?;
    let Some(gamma) = gamma else {
        return Ok(vals);
    };
    let l = p.tower().ok_or_else(|| Error::BadBasePoint("point at infinity".into()))?;
    if !gamma.tower.is_prefix_of(l) {
        return Err(Error::DimensionMismatch("point is not defined over the field of gamma".into()));
    }
    Ok(vals.iter().zip(&gamma.gamma).map(|(v, c)| v / &c.embed(l)).collect())
}

/// The trace-zero part of `sum_T z_T tau(delta_T)`; must have rank one.
pub fn lambda_eval(triv: &Trivialisation, z: &[FieldElement]) -> Result<ExactMatrix> {
    let l = z[0].tower().clone();
    let n = triv.images[0].rows();
    let mut acc = ExactMatrix::zero(&l, n, n);
    for (m, v) in triv.images.iter().zip(z) {
        acc = acc.add(&m.embed(&l).scale(v))?;
    }
    let shift = &acc.trace() / &l.from_int(n as i64);
    let lam = acc.sub(&ExactMatrix::identity(&l, n).scale(&shift))?;
    debug_assert!(lam.trace().is_zero());
    let rank = lam.rank();
    if rank != 1 {
        return Err(Error::RankNotOne(rank));
    }
    Ok(lam)
}

/// Splits a rank-one matrix as `column * row`, using its first nonzero
/// column.
pub fn extract_point(m: &ExactMatrix) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let j = (0..m.cols()).find(|&j| m.col(j).iter().any(|v| !v.is_zero())).ok_or(Error::ZeroMatrix)?;
    let col = m.col(j);
    let i = col.iter().position(|v| !v.is_zero()).unwrap();
    let pivot = col[i].inv().unwrap();
    let row = m.row(i).iter().map(|v| v * &pivot).collect();
    Ok((col, row))
}
