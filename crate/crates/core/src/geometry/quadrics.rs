use crate::algebra::RhoTable;
use crate::curve::TorsionTable;
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldElement, FieldTower};

/// Quadratic forms in the coordinates `z_T`, in torsion order.
///
/// Each form is stored densely over the monomials `z_i z_j`, `i <= j`,
/// ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSystem {
    pub tower: FieldTower,
    pub dim: usize,
    pub forms: Vec<Vec<FieldElement>>,
}

impl QuadricSystem {
    fn monomial_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.dim - i * (i + 1) / 2 + j
    }

    pub fn num_monomials(&self) -> usize {
        self.dim * (self.dim + 1) / 2
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim).map(|t| format!("z{t}")).collect()
    }

    /// Pairs `(i, j)` in storage order.
    pub fn monomials(&self) -> Vec<(usize, usize)> {
        (0..self.dim).flat_map(|i| (i..self.dim).map(move |j| (i, j))).collect()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn rank(&self) -> usize {
        ExactMatrix::from_rows(&self.tower, self.forms.clone()).map(|m| m.rank()).unwrap_or(0)
    }

    /// Value of form `k` at `z` (entries in any extension of the field).
    pub fn eval(&self, k: usize, z: &[FieldElement]) -> FieldElement {
        let mut acc = z[0].tower().zero();
        for ((i, j), c) in self.monomials().into_iter().zip(&self.forms[k]) {
            if !c.is_zero() {
                acc = &acc + &(&(&z[i] * &z[j]) * c);
            }
        }
        acc
    }

    /// First form not vanishing at `z`.
    pub fn first_nonvanishing(&self, z: &[FieldElement]) -> Option<usize> {
        (0..self.len()).find(|&k| !self.eval(k, z).is_zero())
    }

    fn push(&mut self, terms: &[(usize, usize, FieldElement)]) {
        let mut row = vec![self.tower.zero(); self.num_monomials()];
        for (i, j, c) in terms {
            let m = self.monomial_index(*i, *j);
            row[m] = &row[m] + c;
        }
        self.forms.push(row);
    }
}

pub fn quadrics_for_e(table: &TorsionTable) -> Result<QuadricSystem> {
    let k = table.curve().field();
    quadrics_for_c(table, &RhoTable::ones(k, table.len()))
}

/// One difference per class, taken against a fixed reference member:
/// `x`-differences over the `+-` classes and slope differences over the
/// decompositions `T = T1 + T2` of each nonzero `T`.
pub fn quadrics_for_c(table: &TorsionTable, rho: &RhoTable) -> Result<QuadricSystem> {
    let k = table.curve().field();
    let n2 = table.len();
    let mut sys = QuadricSystem { tower: k.clone(), dim: n2, forms: Vec::new() };
    let x = |t: usize| table.point(t).x().unwrap().clone();

    let reps: Vec<usize> = (1..n2).filter(|&t| t <= table.neg(t)).collect();
    let r0 = reps[0];
    for &t in &reps[1..] {
        sys.push(&[
            (0, 0, &x(t) - &x(r0)),
            (t, table.neg(t), rho.get(t, table.neg(t)).clone()),
            (r0, table.neg(r0), -rho.get(r0, table.neg(r0))),
        ]);
    }

    for t in 1..n2 {
        let pairs: Vec<(usize, usize)> =
            (1..n2).map(|a| (a, table.sub(t, a))).filter(|&(a, b)| b != 0 && a <= b).collect();
        let (a0, b0) = pairs[0];
        let l0 = table.slope(a0, b0)?;
        for &(a, b) in &pairs[1..] {
            sys.push(&[(0, t, &table.slope(a, b)? - &l0), (a0, b0, -rho.get(a0, b0)), (a, b, rho.get(a, b).clone())]);
        }
    }

    let expected = n2 * (n2 - 3) / 2;
    let rank = sys.rank();
    if sys.len() != expected || rank != expected {
        return Err(Error::CertificationFailed { what: "quadric rank".into(), witness: vec![sys.len(), rank] });
    }
    Ok(sys)
}
