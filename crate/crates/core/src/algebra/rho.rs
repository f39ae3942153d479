use crate::curve::{Point, TorsionTable};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};

/// A map from torsion indices to field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RElement {
    values: Vec<FieldElement>,
}

impl RElement {
    pub fn new(values: Vec<FieldElement>) -> Self {
        RElement { values }
    }

    pub fn ones(k: &FieldTower, n2: usize) -> Self {
        RElement { values: vec![k.one(); n2] }
    }

    /// The characteristic function of index `t`.
    pub fn delta(k: &FieldTower, n2: usize, t: usize) -> Self {
        let mut values = vec![k.zero(); n2];
        values[t] = k.one();
        RElement { values }
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn get(&self, t: usize) -> &FieldElement {
        &self.values[t]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_invertible(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    /// Pointwise product.
    pub fn mul(&self, o: &RElement) -> RElement {
        RElement { values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> RElement {
        RElement { values: self.values.iter().map(|a| a * c).collect() }
    }
}

/// A map from pairs of torsion indices to field elements, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoTable {
    n2: usize,
    entries: Vec<FieldElement>,
}

impl RhoTable {
    pub fn new(n2: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != n2 * n2 {
            return Err(Error::DimensionMismatch(format!("expected {} entries, got {}", n2 * n2, entries.len())));
        }
        Ok(RhoTable { n2, entries })
    }

    pub fn ones(k: &FieldTower, n2: usize) -> Self {
        RhoTable { n2, entries: vec![k.one(); n2 * n2] }
    }

    pub fn from_fn(n2: usize, f: impl Fn(usize, usize) -> FieldElement) -> Self {
        let entries = (0..n2 * n2).map(|i| f(i / n2, i % n2)).collect();
        RhoTable { n2, entries }
    }

    pub fn size(&self) -> usize {
        self.n2
    }

    pub fn get(&self, a: usize, b: usize) -> &FieldElement {
        &self.entries[a * self.n2 + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: FieldElement) {
        self.entries[a * self.n2 + b] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    /// Pointwise product.
    pub fn mul(&self, o: &RhoTable) -> RhoTable {
        RhoTable { n2: self.n2, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a * b).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.entries.iter().all(|v| v.is_one())
    }
}

/// `(dz)(T1, T2) = z(T1) z(T2) / z(T1 + T2)`.
pub fn partial(table: &TorsionTable, z: &RElement) -> Result<RhoTable> {
    if !z.is_invertible() {
        return Err(Error::NotInvertible("z has a zero value".into()));
    }
    let n2 = table.len();
    if z.len() != n2 {
        return Err(Error::DimensionMismatch("z must have one value per torsion point".into()));
    }
    Ok(RhoTable::from_fn(n2, |a, b| &(z.get(a) * z.get(b)) / z.get(table.add(a, b))))
}

/// Outcome of [`validate_rho`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoReport {
    /// `rho / rho(O, O)`.
    pub normalized: RhoTable,
    /// The constant `rho(O, O)` that was divided out.
    pub scale: FieldElement,
    /// Name of the membership criterion that was applied.
    pub criterion: &'static str,
}

/// Accepts symmetric 2-cocycles with constant `rho(O, .)`, normalising so
/// that `rho(O, .) = 1`.
pub fn validate_rho(table: &TorsionTable, rho: &RhoTable) -> Result<RhoReport> {
    let n2 = table.len();
    if rho.size() != n2 {
        return Err(Error::DimensionMismatch("rho size does not match the torsion table".into()));
    }
    let reject = |identity: &str, witness: Vec<usize>| Err(Error::RhoRejected { identity: identity.into(), witness });
    for a in 0..n2 {
        for b in 0..n2 {
            if rho.get(a, b).is_zero() {
                return reject("nonzero entries", vec![a, b]);
            }
        }
    }
    let c = rho.get(0, 0).clone();
    for b in 0..n2 {
        if *rho.get(0, b) != c {
            return reject("rho(O, T) constant", vec![0, b]);
        }
    }
    for a in 0..n2 {
        for b in a + 1..n2 {
            if rho.get(a, b) != rho.get(b, a) {
                return reject("symmetry", vec![a, b]);
            }
        }
    }
    for a in 0..n2 {
        for b in 0..n2 {
            let ab = table.add(a, b);
            for d in 0..n2 {
                let lhs = rho.get(a, b) * rho.get(ab, d);
                let rhs = rho.get(a, table.add(b, d)) * rho.get(b, d);
                if lhs != rhs {
                    return reject("2-cocycle", vec![a, b, d]);
                }
            }
        }
    }
    let ci = c.inv().unwrap();
    let normalized = RhoTable { n2, entries: rho.entries.iter().map(|v| v * &ci).collect() };
    Ok(RhoReport { normalized, scale: c, criterion: "split-torsion criterion" })
}

/// `(T1, T2) -> r_{(T1,T2)}(Q)` for a rational non-torsion point `Q`.
pub fn rho_from_point(table: &TorsionTable, q: &Point) -> Result<RhoTable> {
    let curve = table.curve();
    let k = curve.field();
    let q = match q.tower() {
        Some(t) if t != k => {
            let restrict = |v: &FieldElement| {
                v.restrict(k).ok_or_else(|| Error::Parse("point is not rational over the curve's field".into()))
            };
            Point::affine(restrict(q.x().unwrap())?, restrict(q.y().unwrap())?)
        }
        _ => q.clone(),
    };
    curve.check(&q)?;
    if curve.mul(table.n() as i64, &q).is_infinity() {
        return Err(Error::TorsionPoint("Q lies in E[n]".into()));
    }
    let n2 = table.len();
    let mut entries = Vec::with_capacity(n2 * n2);
    for a in 0..n2 {
        for b in 0..n2 {
            entries.push(table.r_eval(a, b, &q)?);
        }
    }
    RhoTable::new(n2, entries)
}
