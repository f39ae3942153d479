use super::rho::{RElement, RhoTable};
use crate::curve::TorsionTable;
use crate::descent::EpsilonTable;
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldElement, FieldTower};

/// What the certification of an algebra established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certification {
    pub associative: bool,
    pub unit_index: usize,
    pub center_dimension: usize,
    pub trace_form_rank: usize,
}

impl Certification {
    pub fn is_central_simple(&self, n2: usize) -> bool {
        self.associative && self.unit_index == 0 && self.center_dimension == 1 && self.trace_form_rank == n2
    }
}

/// The algebra on the basis `delta_T` with `delta_a * delta_b = c(a, b) delta_{a+b}`.
#[derive(Clone, Debug)]
pub struct Csa {
    tower: FieldTower,
    n: usize,
    sum: Vec<usize>,
    c: RhoTable,
    certification: Certification,
}

impl Csa {
    /// Structure constants `eps * rho`, certified before returning.
    pub fn build(table: &TorsionTable, eps: &EpsilonTable, rho: &RhoTable) -> Result<Csa> {
        let n2 = table.len();
        if rho.size() != n2 {
            return Err(Error::DimensionMismatch("rho size does not match the torsion table".into()));
        }
        let c = RhoTable::from_fn(n2, |a, b| eps.get(a, b) * rho.get(a, b));
        let sum = (0..n2 * n2).map(|i| table.add(i / n2, i % n2)).collect();
        Csa::from_constants(table.curve().field().clone(), table.n(), sum, c)
    }

    /// Certifies an arbitrary structure-constant table over the group with
    /// addition table `sum` (row-major, `n^2 x n^2`).
    pub fn from_constants(tower: FieldTower, n: usize, sum: Vec<usize>, c: RhoTable) -> Result<Csa> {
        let mut csa = Csa {
            tower,
            n,
            sum,
            c,
            certification: Certification { associative: false, unit_index: 0, center_dimension: 0, trace_form_rank: 0 },
        };
        csa.certification = csa.certify()?;
        Ok(csa)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.c.size()
    }

    pub fn constants(&self) -> &RhoTable {
        &self.c
    }

    pub fn constant(&self, a: usize, b: usize) -> &FieldElement {
        self.c.get(a, b)
    }

    pub fn certification(&self) -> &Certification {
        &self.certification
    }

    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.dim() + b]
    }

    pub fn mul(&self, x: &RElement, y: &RElement) -> RElement {
        let n2 = self.dim();
        let mut out = vec![self.tower.zero(); n2];
        for a in 0..n2 {
            if x.get(a).is_zero() {
                continue;
            }
            for b in 0..n2 {
                if y.get(b).is_zero() {
                    continue;
                }
                let s = self.sum(a, b);
                out[s] = &out[s] + &(&(x.get(a) * y.get(b)) * self.c.get(a, b));
            }
        }
        RElement::new(out)
    }

    /// Matrix of `y -> x * y` in the delta basis (columns are images).
    pub fn left_multiplication(&self, x: &RElement) -> ExactMatrix {
        let n2 = self.dim();
        let mut m = ExactMatrix::zero(&self.tower, n2, n2);
        for b in 0..n2 {
            let col = self.mul(x, &RElement::delta(&self.tower, n2, b));
            for (i, v) in col.values().iter().enumerate() {
                m.set(i, b, v.clone());
            }
        }
        m
    }

    pub fn regular_trace(&self, x: &RElement) -> FieldElement {
        self.left_multiplication(x).trace()
    }

    /// `Tr_reg / n`.
    pub fn reduced_trace(&self, x: &RElement) -> FieldElement {
        &self.regular_trace(x) / &self.tower.from_int(self.n as i64)
    }

    fn certify(&self) -> Result<Certification> {
        let n2 = self.dim();
        let fail = |what: &str, witness: Vec<usize>| Err(Error::CertificationFailed { what: what.into(), witness });
        for a in 0..n2 {
            for b in 0..n2 {
                if self.c.get(a, b).is_zero() {
                    return fail("structure constants nonzero", vec![a, b]);
                }
                let ab = self.sum(a, b);
                for d in 0..n2 {
                    let lhs = self.c.get(a, b) * self.c.get(ab, d);
                    let rhs = self.c.get(b, d) * self.c.get(a, self.sum(b, d));
                    if lhs != rhs {
                        return fail("associativity", vec![a, b, d]);
                    }
                }
            }
        }
        let unit = (0..n2)
            .find(|&e| (0..n2).all(|b| self.sum(e, b) == b && self.c.get(e, b).is_one() && self.c.get(b, e).is_one()));
        let Some(unit_index) = unit else {
            return fail("unit", vec![]);
        };

        // x commutes with delta_b iff x_a (c(a,b) - c(b,a)) = 0 for all a.
        let mut rows = Vec::new();
        for b in 0..n2 {
            for a in 0..n2 {
                let mut row = vec![self.tower.zero(); n2];
                row[a] = self.c.get(a, b) - self.c.get(b, a);
                rows.push(row);
            }
        }
        let center_dimension = n2 - ExactMatrix::from_rows(&self.tower, rows)?.rank();
        if center_dimension != 1 {
            return fail("center dimension", vec![center_dimension]);
        }

        let traces: Vec<FieldElement> =
            (0..n2).map(|s| self.regular_trace(&RElement::delta(&self.tower, n2, s))).collect();
        let form = (0..n2).map(|a| (0..n2).map(|b| self.c.get(a, b) * &traces[self.sum(a, b)]).collect()).collect();
        let trace_form_rank = ExactMatrix::from_rows(&self.tower, form)?.rank();
        if trace_form_rank != n2 {
            return fail("trace form rank", vec![trace_form_rank]);
        }
        Ok(Certification { associative: true, unit_index, center_dimension, trace_form_rank })
    }

    /// Checks that `x -> z x` carries the product of `self` to that of `other`
    /// on every basis pair; returns the first failing pair.
    pub fn intertwined_by(&self, other: &Csa, z: &RElement) -> std::result::Result<(), (usize, usize)> {
        let n2 = self.dim();
        for a in 0..n2 {
            for b in 0..n2 {
                let s = self.sum(a, b);
                let lhs = &(self.c.get(a, b) * z.get(s)) - &(&(z.get(a) * z.get(b)) * other.c.get(a, b));
                if s != other.sum(a, b) || !lhs.is_zero() {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}
