use crate::curve::{FunctionFieldElement, Point, TorsionTable};
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldElement, Poly};

/// `G_T` for every torsion index, with `div G_T = [n]^*(T) - [n]^*(O)`,
/// residue `1/n` at O in `t = x/y` and `G_O = 1`.
#[derive(Clone, Debug)]
pub struct GBasis {
    g: Vec<FunctionFieldElement>,
}

/// Exponents of the monomials `x^i` and `x^j y` spanning `L(n^2 O)`.
fn monomials(n: usize) -> (usize, usize) {
    let nn = n * n;
    (nn / 2, (nn - 3) / 2)
}

/// Coordinates of `u + v y` in the monomial basis, or `None` if it is not
/// a polynomial of the allowed degrees.
fn coordinates(f: &FunctionFieldElement, n: usize) -> Option<Vec<FieldElement>> {
    let (du, dv) = monomials(n);
    if !f.is_polynomial() || f.u().degree().is_some_and(|d| d > du) || f.v().degree().is_some_and(|d| d > dv) {
        return None;
    }
    let mut out: Vec<FieldElement> = (0..=du).map(|i| f.u().coeff(i)).collect();
    out.extend((0..=dv).map(|j| f.v().coeff(j)));
    Some(out)
}

impl GBasis {
    pub fn compute(table: &TorsionTable) -> Result<GBasis> {
        let curve = table.curve();
        let k = curve.field();
        let n = table.n();
        let psi = curve.division_polynomial(n)?;
        let psi_f = FunctionFieldElement::from_poly(curve, psi.clone());
        let (du, dv) = monomials(n);
        let dim = du + dv + 2;
        debug_assert_eq!(dim, n * n);

        // translation operators on psi^{-1} L(n^2 O) in the monomial basis
        let translation = |s: &Point| -> Result<ExactMatrix> {
            let Point::Affine { x: xs, y: ys } = s else {
                return Ok(ExactMatrix::identity(k, dim));
            };
            let x = FunctionFieldElement::x(curve);
            let y = FunctionFieldElement::y(curve);
            let lam = y.add_scalar(&-ys).div(&x.add_scalar(&-xs)).unwrap();
            let x3 = lam.mul(&lam).sub(&x).add_scalar(&-xs);
            let y3 = lam.mul(&x.sub(&x3)).sub(&y);
            let psi_t = psi_f.substitute(&x3, &y3);
            let ratio = psi_f.div(&psi_t).unwrap();
            let mut m = ExactMatrix::zero(k, dim, dim);
            let mut xpow = FunctionFieldElement::one(curve);
            let mut col = 0;
            let mut powers = Vec::new();
            for _ in 0..=du {
                powers.push(xpow.clone());
                xpow = xpow.mul(&x3);
            }
            let images: Vec<FunctionFieldElement> =
                powers.iter().cloned().chain(powers.iter().take(dv + 1).map(|p| p.mul(&y3))).collect();
            for img in images {
                let g = img.mul(&ratio);
                let c = coordinates(&g, n).ok_or_else(|| Error::CertificationFailed {
                    what: "translate of a Riemann-Roch basis function left the space".into(),
                    witness: vec![col],
                })?;
                for (r, v) in c.into_iter().enumerate() {
                    m.set(r, col, v);
                }
                col += 1;
            }
            Ok(m)
        };
        let (b1, b2) = table.basis();
        let a1 = translation(table.point(b1))?;
        let a2 = translation(table.point(b2))?;

        let mut g = Vec::with_capacity(n * n);
        for t in 0..n * n {
            if t == 0 {
                g.push(FunctionFieldElement::one(curve));
                continue;
            }
            let id = ExactMatrix::identity(k, dim);
            let s1 = a1.sub(&id.scale(&table.weil_pairing(b1, t)))?;
            let s2 = a2.sub(&id.scale(&table.weil_pairing(b2, t)))?;
            let ker = s1.vstack(&s2)?.kernel_basis();
            if ker.len() != 1 {
                return Err(Error::EigenspaceDimension { index: t, dim: ker.len() });
            }
            let v = &ker[0];
            let u = Poly::new(k.clone(), v[..=du].to_vec());
            let w = Poly::new(k.clone(), v[du + 1..].to_vec());
            let f = FunctionFieldElement::new(curve, u, w, psi.clone());
            let lead = f.laurent_at_o(1);
            if lead.valuation() != Some(-1) {
                return Err(Error::CertificationFailed {
                    what: "G_T does not have a simple pole at O".into(),
                    witness: vec![t],
                });
            }
            let scale = (lead.leading().unwrap() * &k.from_int(n as i64)).inv().unwrap();
            g.push(f.scale(&scale));
        }
        Ok(GBasis { g })
    }

    pub fn get(&self, t: usize) -> &FunctionFieldElement {
        &self.g[t]
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    /// `(G_T(P))_T`; fails if `P` hits a zero or pole of some `G_T`.
    pub fn eval(&self, p: &Point) -> Result<Vec<FieldElement>> {
        let mut out = Vec::with_capacity(self.g.len());
        for (t, g) in self.g.iter().enumerate() {
            let v = g.eval(p).map_err(|_| Error::BadBasePoint(format!("G_{t} has a pole at the point")))?;
            if v.is_zero() {
                return Err(Error::BadBasePoint(format!("G_{t} vanishes at the point")));
            }
            out.push(v);
        }
        Ok(out)
    }
}
