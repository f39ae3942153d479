use super::rho::RhoTable;
use crate::curve::TorsionTable;
use crate::error::{Error, Result};
use crate::field::{factor, roots_in_field, tower_extend, FieldElement, FieldTower, Poly};

/// An explicit `gamma` with `d(gamma) = rho`, defined over `tower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaWitness {
    pub tower: FieldTower,
    pub gamma: Vec<FieldElement>,
}

impl GammaWitness {
    pub fn get(&self, t: usize) -> &FieldElement {
        &self.gamma[t]
    }

    /// Recomputes `d(gamma)` and compares it with `rho` on every pair.
    pub fn verify(&self, table: &TorsionTable, rho: &RhoTable) -> Result<()> {
        let n2 = table.len();
        for a in 0..n2 {
            for b in 0..n2 {
                let lhs = &(&self.gamma[a] * &self.gamma[b]) / &self.gamma[table.add(a, b)];
                if lhs != rho.get(a, b).embed(&self.tower) {
                    return Err(Error::CertificationFailed { what: "d(gamma) = rho".into(), witness: vec![a, b] });
                }
            }
        }
        Ok(())
    }
}

/// An n-th root of `a`, adjoining one (named `gen`) when `field` has none.
fn nth_root(field: &FieldTower, a: &FieldElement, n: usize, gen: &str) -> Result<(FieldTower, FieldElement)> {
    if a.is_one() {
        return Ok((field.clone(), field.one()));
    }
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[0] = -a;
    coeffs[n] = field.one();
    let p = Poly::new(field.clone(), coeffs);
    if let Some((r, _)) = roots_in_field(&p).into_iter().next() {
        return Ok((field.clone(), r));
    }
    let (g, _) = factor(&p).into_iter().next().expect("nonconstant polynomial has a factor");
    let ext = tower_extend(field, gen, g.coeffs())?;
    let r = ext.generator(ext.depth());
    Ok((ext, r))
}

/// Solves `d(gamma) = rho` for a validated (normalised) `rho`.
///
/// `gamma(T1) = alpha`, `gamma(T2) = beta` with `alpha^n`, `beta^n` the
/// products of `rho` along the cyclic subgroups; everything else follows
/// from the cocycle identity.
pub fn solve_gamma(table: &TorsionTable, rho: &RhoTable) -> Result<GammaWitness> {
    let n = table.n();
    let k = table.curve().field();
    let (t1, t2) = table.basis();
    let cyclic_product = |t: usize| {
        let mut acc = k.one();
        let mut kt = t;
        for _ in 1..n {
            acc = &acc * rho.get(kt, t);
            kt = table.add(kt, t);
        }
        acc
    };
    let (l1, alpha) = nth_root(k, &cyclic_product(t1), n, "alpha")?;
    let (tower, beta) = nth_root(&l1, &cyclic_product(t2).embed(&l1), n, "beta")?;
    let alpha = alpha.embed(&tower);
    let rho_at = |a: usize, b: usize| rho.get(a, b).embed(&tower);

    // powers along each cyclic factor: g((k+1)T) = g(kT) g(T) / rho(kT, T)
    let walk = |t: usize, root: &FieldElement| {
        let mut vals = vec![tower.one()];
        let mut kt = 0;
        for _ in 1..n {
            let next = &(vals.last().unwrap() * root) / &rho_at(kt, t);
            vals.push(next);
            kt = table.add(kt, t);
        }
        vals
    };
    let ga = walk(t1, &alpha);
    let gb = walk(t2, &beta);
    let mut gamma = vec![tower.zero(); table.len()];
    for (i, gi) in ga.iter().enumerate() {
        for (j, gj) in gb.iter().enumerate() {
            let a = table.index(i, 0);
            let b = table.index(0, j);
            gamma[table.index(i, j)] = &(gi * gj) / &rho_at(a, b);
        }
    }
    let w = GammaWitness { tower, gamma };
    w.verify(table, rho)?;
    Ok(w)
}
