use crate::curve::{FunctionFieldElement, LaurentSeries, Point, TorsionTable};
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldElement, Poly};

use super::EpsilonTable;

/// The embedding `f_E` by a graded monomial basis of `L(n O)` (for n = 3:
/// `1, x, y`), its osculating hyperplane at O and the matrices `M_T` with
/// `M_T f_E(P)` proportional to `f_E(P + T)`.
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    n: usize,
    basis: Vec<FunctionFieldElement>,
    labels: Vec<String>,
    dual_o: Vec<FieldElement>,
    m: Vec<ExactMatrix>,
}

/// Monomials `x^i y^j` (`j <= 1`) of pole order `0, 2, 3, ..., n` at O.
fn graded_basis(table: &TorsionTable) -> (Vec<FunctionFieldElement>, Vec<String>) {
    let curve = table.curve();
    let k = curve.field();
    let mut fs = Vec::new();
    let mut labels = Vec::new();
    for order in (0..=table.n()).filter(|&d| d != 1) {
        let (i, with_y) = if order % 2 == 0 { (order / 2, false) } else { ((order - 3) / 2, true) };
        let mut c = vec![k.zero(); i + 1];
        c[i] = k.one();
        let xi = Poly::new(k.clone(), c);
        let label = match (i, with_y) {
            (0, false) => "1".to_string(),
            (0, true) => "y".to_string(),
            (1, false) => "x".to_string(),
            (1, true) => "x*y".to_string(),
            (_, false) => format!("x^{i}"),
            (_, true) => format!("x^{i}*y"),
        };
        let f = if with_y {
            FunctionFieldElement::new(curve, Poly::zero(k), xi, Poly::one(k))
        } else {
            FunctionFieldElement::from_poly(curve, xi)
        };
        fs.push(f);
        labels.push(label);
    }
    (fs, labels)
}

impl EmbeddingData {
    pub fn compute(table: &TorsionTable, eps: &EpsilonTable) -> Result<EmbeddingData> {
        let n = table.n();
        let (basis, labels) = graded_basis(table);
        let mut emb = EmbeddingData { n, basis, labels, dual_o: Vec::new(), m: Vec::new() };
        emb.dual_o = emb.osculating_hyperplane(&Point::Infinity)?;
        for t in 0..n * n {
            let m = emb.translation_matrix(table, eps, t)?;
            emb.m.push(m);
        }
        Ok(emb)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[FunctionFieldElement] {
        &self.basis
    }

    /// Names of the basis functions, in order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The row vector `f_E^v(O)`.
    pub fn dual_at_o(&self) -> &[FieldElement] {
        &self.dual_o
    }

    pub fn m(&self, t: usize) -> &ExactMatrix {
        &self.m[t]
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.m
    }

    /// `f_E(P)` as a column; at O the limit point `(0 : ... : 0 : 1)`.
    pub fn f_eval(&self, p: &Point) -> Vec<FieldElement> {
        match p {
            Point::Infinity => {
                let k = self.basis[0].curve().field();
                let mut v = vec![k.zero(); self.n];
                v[self.n - 1] = k.one();
                v
            }
            _ => self.basis.iter().map(|f| f.eval(p).expect("polynomial functions are regular")).collect(),
        }
    }

    /// The row `c` such that `sum c_k f_k` meets the curve to order `n - 1`
    /// at `p`.
    pub fn osculating_hyperplane(&self, p: &Point) -> Result<Vec<FieldElement>> {
        let n = self.n;
        let curve = self.basis[0].curve();
        let series: Vec<LaurentSeries> = match p {
            Point::Infinity => self.basis.iter().map(|f| f.laurent_at_o(n + 2)).collect(),
            _ => self
                .basis
                .iter()
                .map(|f| f.series_at(p, n + 1))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::DegenerateSample("osculating hyperplane at a 2-torsion point".into()))?,
        };
        let exps: Vec<i64> = match p {
            Point::Infinity => (-(n as i64)..-1).collect(),
            _ => (0..n as i64 - 1).collect(),
        };
        let t = series.iter().fold(curve.field().clone(), |t, s| t.join(s.tower()));
        let rows: Vec<Vec<FieldElement>> =
            exps.iter().map(|&e| series.iter().map(|s| s.coeff(e).expect("expansion precision")).collect()).collect();
        let ker = ExactMatrix::from_rows(&t, rows)?.kernel_basis();
        if ker.len() != 1 {
            return Err(Error::DegenerateSample(format!("osculating hyperplane space has dimension {}", ker.len())));
        }
        Ok(ker.into_iter().next().unwrap())
    }

    fn translation_matrix(&self, table: &TorsionTable, eps: &EpsilonTable, t: usize) -> Result<ExactMatrix> {
        let n = self.n;
        let n2 = n * n;
        let k = table.curve().field();
        let unknowns = n2 + n2;
        let mut rows = Vec::with_capacity(n * n2);
        for q in 0..n2 {
            let fq = self.f_eval(table.point(q));
            let fqt = self.f_eval(table.point(table.add(q, t)));
            for r in 0..n {
                let mut row = vec![k.zero(); unknowns];
                for c in 0..n {
                    row[r * n + c] = fq[c].clone();
                }
                row[n2 + q] = -&fqt[r];
                rows.push(row);
            }
        }
        let ker = ExactMatrix::from_rows(k, rows)?.kernel_basis();
        if ker.len() != 1 {
            return Err(Error::DegenerateSample(format!(
                "translation matrix for index {t} not determined ({} solutions)",
                ker.len()
            )));
        }
        let v = &ker[0];
        let m0 = ExactMatrix::from_rows(k, (0..n).map(|r| v[r * n..(r + 1) * n].to_vec()).collect())?;
        let m0_inv = m0.inverse().ok_or(Error::NotInvertible(format!("M_{t}")))?;

        // fix the scalar by F_T(P) = f^v(O) M_T^{-1} f(P) / f^v(O) f(P)
        let ft = eps.f(t);
        let mut scale = None;
        let mut checked = 0;
        for p in 1..n2 {
            if p == t {
                continue;
            }
            let pt = table.point(p);
            let fp = self.f_eval(pt);
            let num = dot(&self.dual_o, &m0_inv.mul_vec(&fp)?);
            let den = dot(&self.dual_o, &fp);
            let val = ft.eval(pt)?;
            if den.is_zero() || val.is_zero() {
                continue;
            }
            let c = &num / &(&den * &val);
            match &scale {
                None => scale = Some(c),
                Some(s) if *s == c => checked += 1,
                Some(_) => {
                    return Err(Error::CertificationFailed {
                        what: "translation matrix scaling".into(),
                        witness: vec![t, p],
                    })
                }
            }
        }
        let Some(c) = scale else {
            return Err(Error::DegenerateSample(format!("no admissible point to scale M_{t}")));
        };
        if checked == 0 {
            return Err(Error::DegenerateSample(format!("scaling of M_{t} could not be cross-checked")));
        }
        Ok(m0.scale(&c))
    }
}

pub(crate) fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let t = a.iter().chain(b).fold(a[0].tower().clone(), |t, x| t.join(x.tower()));
    a.iter().zip(b).fold(t.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// `sum_T alpha(T) M_T`.
pub fn tau_1(emb: &EmbeddingData, alpha: &[FieldElement]) -> Result<ExactMatrix> {
    if alpha.len() != emb.m.len() {
        return Err(Error::DimensionMismatch("alpha must have one value per torsion point".into()));
    }
    let k = emb.m[0].tower().clone();
    let mut acc = ExactMatrix::zero(&k, emb.n, emb.n);
    for (a, m) in alpha.iter().zip(&emb.m) {
        if !a.is_zero() {
            acc = acc.add(&m.scale(a))?;
        }
    }
    Ok(acc)
}
