use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::{epsilon_value, miller_f, sample_point, FunctionFieldElement, Point, TorsionTable};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// `epsilon(T1, T2) = F_{T1+T2}(P) / (F_{T1}(P) F_{T2}(P - T1))` for all pairs,
/// together with the functions `F_T`.
#[derive(Clone, Debug)]
pub struct EpsilonTable {
    n2: usize,
    f: Vec<FunctionFieldElement>,
    eps: Vec<FieldElement>,
}

impl EpsilonTable {
    pub fn compute(table: &TorsionTable) -> Result<EpsilonTable> {
        let curve = table.curve();
        let n = table.n();
        let n2 = n * n;
        let f: Vec<FunctionFieldElement> = table.points().iter().map(|p| miller_f(curve, n, p)).collect();
        let mut eps = Vec::with_capacity(n2 * n2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for a in 0..n2 {
            for b in 0..n2 {
                if a == 0 || b == 0 {
                    eps.push(curve.field().one());
                    continue;
                }
                let s = table.add(a, b);
                let mut value = None;
                for (i, p) in table.points().iter().enumerate() {
                    if i == 0 || i == a || i == s {
                        continue;
                    }
                    if let Ok(v) = epsilon_value(curve, &f[a], &f[b], &f[s], table.point(a), p) {
                        value = Some(v);
                        break;
                    }
                }
                while value.is_none() {
                    let p = sample_point(curve, &mut rng, &[]);
                    if let Ok(v) = epsilon_value(curve, &f[a], &f[b], &f[s], table.point(a), &p) {
                        let v = v.restrict(curve.field()).ok_or_else(|| Error::CertificationFailed {
                            what: "epsilon value outside the base field".into(),
                            witness: vec![a, b],
                        })?;
                        value = Some(v);
                    }
                }
                eps.push(value.unwrap());
            }
        }
        Ok(EpsilonTable { n2, f, eps })
    }

    pub fn get(&self, a: usize, b: usize) -> &FieldElement {
        &self.eps[a * self.n2 + b]
    }

    /// `F_T` with divisor `n(T) - n(O)` and leading coefficient 1 at O.
    pub fn f(&self, t: usize) -> &FunctionFieldElement {
        &self.f[t]
    }

    pub fn size(&self) -> usize {
        self.n2
    }

    /// The defining quotient evaluated at a chosen point `p`.
    pub fn evaluate_at(&self, table: &TorsionTable, a: usize, b: usize, p: &Point) -> Result<FieldElement> {
        let s = table.add(a, b);
        epsilon_value(table.curve(), &self.f[a], &self.f[b], &self.f[s], table.point(a), p)
    }
}
