//! Factorisation of univariate polynomials over number field towers.
//!
//! Over Q the work is delegated to Zassenhaus. Over a tower we use Trager's
//! norm method: shift until the norm down one level is squarefree, factor
//! the norm over the level below and pull the factors back with gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

use super::poly::Poly;
use super::rational::Rational;
use super::tower::{FieldElement, FieldTower};
use super::zassenhaus;

/// Monic irreducible factors of `f` with multiplicities, sorted by degree and
/// then by coefficients. Constants have no factors.
pub fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|(a, _), (b, _)| poly_order(a, b));
    out
}

fn poly_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in 0..=a.deg() {
            let o = a.coeff(i).cmp_coords(&b.coeff(i));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Monic irreducible factors of a squarefree polynomial.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    let f = f.monic();
    if f.deg() <= 1 {
        return vec![f];
    }
    if f.tower().depth() == 0 {
        return factor_over_q(&f);
    }
    trager(&f)
}

fn factor_over_q(f: &Poly) -> Vec<Poly> {
    let q = f.tower().clone();
    let coeffs: Vec<Rational> = f.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    zassenhaus::factor_squarefree(&ints)
        .into_iter()
        .map(|g| {
            let c = g.into_iter().map(|v| q.from_rational(Rational::from_integer(v))).collect();
            Poly::new(q.clone(), c).monic()
        })
        .collect()
}

/// Norm from the top level of `g.tower()` to the level below, computed by
/// evaluation at rational points and interpolation.
fn norm_down(g: &Poly) -> Poly {
    let t = g.tower();
    let base = t.base();
    let deg = g.deg() * t.top_degree();
    let xs: Vec<FieldElement> = (0..=deg as i64).map(|i| base.from_int(i)).collect();
    let ys: Vec<FieldElement> = xs.iter().map(|x| g.eval(&x.embed(t)).norm_down()).collect();
    Poly::interpolate(&base, &xs, &ys)
}

fn trager(f: &Poly) -> Vec<Poly> {
    let t = f.tower().clone();
    let alpha = t.generator(t.depth());
    let base = t.base();
    for s in (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
        let shift = alpha.scale(&Rational::from_integer(BigInt::from(s)));
        let g = f.shift(&(-&shift));
        let n = norm_down(&g);
        if !n.gcd(&n.derivative()).is_constant() {
            continue;
        }
        let mut out = Vec::new();
        let mut rest = g.clone();
        for h in factor_squarefree(&n) {
            debug_assert_eq!(h.tower(), &base);
            let d = rest.gcd(&h.embed(&t));
            if d.is_constant() {
                continue;
            }
            rest = rest.exact_div(&d);
            out.push(d.shift(&shift).monic());
        }
        debug_assert!(rest.is_constant());
        return out;
    }
    unreachable!()
}

/// Roots of `f` lying in its coefficient field, with multiplicities, sorted.
pub fn roots_in_field(f: &Poly) -> Vec<(FieldElement, usize)> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<(FieldElement, usize)> =
        factor(f).into_iter().filter(|(g, _)| g.deg() == 1).map(|(g, m)| (-g.coeff(0), m)).collect();
    out.sort_by(|a, b| a.0.cmp_coords(&b.0));
    out
}

/// Adjoins a root of `minpoly` (coefficients in `base`, constant first) after
/// certifying that it is irreducible over `base`.
pub fn tower_extend(base: &FieldTower, gen: &str, minpoly: &[FieldElement]) -> Result<FieldTower> {
    let p = Poly::new(base.clone(), minpoly.to_vec());
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::DimensionMismatch("minimal polynomial must have positive degree".into()));
    }
    let p = p.monic();
    let fs = factor(&p);
    if fs.len() != 1 || fs[0].1 != 1 {
        return Err(Error::ReducibleExtension { factor: fs[0].0.to_string() });
    }
    Ok(base.extend_unchecked(gen, p.coeffs()))
}
