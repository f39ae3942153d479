//! The table of n-torsion points with a fixed basis.

use crate::error::{Error, Result};
use crate::field::{roots_in_field, FieldElement, Poly};

use super::miller::{epsilon_value, miller_f};
use super::{Curve, FunctionFieldElement, Point};

/// The `n^2` points of `E[n](K)`; index `i*n + j` holds `i T1 + j T2`.
#[derive(Clone, Debug)]
pub struct TorsionTable {
    curve: Curve,
    n: usize,
    points: Vec<Point>,
    /// `e_n(T1, T2)`.
    zeta: FieldElement,
}

fn divisors_below(n: usize) -> Vec<usize> {
    (1..n).filter(|d| n.is_multiple_of(*d)).collect()
}

impl TorsionTable {
    pub fn new(curve: &Curve, n: usize) -> Result<TorsionTable> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::UnsupportedN(n));
        }
        let k = curve.field();
        let psi = curve.division_polynomial(n)?;
        let mut found = vec![Point::Infinity];
        for (x0, _) in roots_in_field(&psi) {
            let ysq = Poly::new(k.clone(), vec![-curve.rhs(&x0), k.zero(), k.one()]);
            for (y0, _) in roots_in_field(&ysq) {
                found.push(Point::Affine { x: x0.clone(), y: y0 });
            }
        }
        let expected = n * n;
        if found.len() != expected {
            return Err(Error::TorsionNotRational { found: found.len(), expected });
        }
        found.sort_by(|a, b| a.cmp_key(b));

        let t1 = found
            .iter()
            .find(|p| curve.order(p, n) == Some(n))
            .cloned()
            .ok_or(Error::TorsionNotRational { found: 0, expected })?;
        let f1 = miller_f(curve, n, &t1);
        let mut basis = None;
        for p in &found {
            if curve.order(p, n) != Some(n) {
                continue;
            }
            let e = pairing_by_epsilon(curve, n, &found, (&t1, &f1), p)?;
            if divisors_below(n).iter().all(|&d| !e.pow(d as u64).is_one()) {
                basis = Some((p.clone(), e));
                break;
            }
        }
        let (t2, zeta) = basis.ok_or(Error::TorsionNotRational { found: expected, expected })?;

        let mut points = Vec::with_capacity(expected);
        let mut it1 = Point::Infinity;
        for _ in 0..n {
            let mut p = it1.clone();
            for _ in 0..n {
                points.push(p.clone());
                p = curve.add(&p, &t2);
            }
            it1 = curve.add(&it1, &t1);
        }
        for p in &points {
            if !found.contains(p) {
                return Err(Error::TorsionNotRational { found: expected, expected });
            }
        }
        Ok(TorsionTable { curve: curve.clone(), n, points, zeta })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &Point {
        &self.points[idx]
    }

    /// Indices of `T1` and `T2`.
    pub fn basis(&self) -> (usize, usize) {
        (self.n, 1)
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx / self.n, idx % self.n)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        (i % self.n) * self.n + j % self.n
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (i1, j1) = self.coords(a);
        let (i2, j2) = self.coords(b);
        self.index(i1 + i2, j1 + j2)
    }

    pub fn neg(&self, a: usize) -> usize {
        let (i, j) = self.coords(a);
        self.index(self.n - i, self.n - j)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `e_n(T1, T2)`, a primitive n-th root of unity.
    pub fn zeta(&self) -> &FieldElement {
        &self.zeta
    }

    /// `e_n(S, T)` by bilinearity from `e_n(T1, T2)`.
    pub fn weil_pairing(&self, s: usize, t: usize) -> FieldElement {
        let (i1, j1) = self.coords(s);
        let (i2, j2) = self.coords(t);
        let n = self.n as i64;
        let det = ((i1 * j2) as i64 - (j1 * i2) as i64).rem_euclid(n);
        self.zeta.pow(det as u64)
    }

    /// `e_n(S, T)` recomputed as `epsilon(S, T) / epsilon(T, S)`.
    pub fn weil_pairing_by_epsilon(&self, s: usize, t: usize) -> Result<FieldElement> {
        let ps = self.point(s);
        let fs = miller_f(&self.curve, self.n, ps);
        pairing_by_epsilon(&self.curve, self.n, &self.points, (ps, &fs), self.point(t))
    }

    pub fn slope(&self, a: usize, b: usize) -> Result<FieldElement> {
        self.curve.slope(self.point(a), self.point(b))
    }

    /// `r_{(T1,T2)}` as a function.
    pub fn r_function(&self, a: usize, b: usize) -> FunctionFieldElement {
        let c = &self.curve;
        if a == 0 || b == 0 {
            return FunctionFieldElement::one(c);
        }
        let s = self.add(a, b);
        if s == 0 {
            let x1 = self.point(a).x().unwrap();
            return FunctionFieldElement::from_poly(c, Poly::linear_root(x1));
        }
        let l = self.slope(a, b).unwrap();
        let p3 = self.point(s);
        let (x3, y3) = (p3.x().unwrap(), p3.y().unwrap());
        let num = FunctionFieldElement::y(c).add_scalar(y3);
        let den = FunctionFieldElement::from_poly(c, Poly::linear_root(x3));
        num.div(&den).unwrap().add_scalar(&-&l)
    }

    /// `r_{(T1,T2)}(P)` by the defining formula.
    pub fn r_eval(&self, a: usize, b: usize, p: &Point) -> Result<FieldElement> {
        if a == 0 || b == 0 {
            return Ok(self.curve.field().one());
        }
        let Point::Affine { x, y } = p else {
            return Err(Error::PoleAtP);
        };
        let s = self.add(a, b);
        if s == 0 {
            return Ok(x - self.point(a).x().unwrap());
        }
        let p3 = self.point(s);
        let den = x - p3.x().unwrap();
        if den.is_zero() {
            return Err(Error::PoleAtP);
        }
        let l = self.slope(a, b)?;
        Ok(&(&(y + p3.y().unwrap()) / &den) - &l)
    }
}

/// `epsilon(S, T) / epsilon(T, S)`, each evaluated at the first listed point
/// where the defining formula is regular.
fn pairing_by_epsilon(
    curve: &Curve,
    n: usize,
    pts: &[Point],
    (s, fs): (&Point, &FunctionFieldElement),
    t: &Point,
) -> Result<FieldElement> {
    let ft = miller_f(curve, n, t);
    let sum = curve.add(s, t);
    let fsum = miller_f(curve, n, &sum);
    let eps = |a: &Point, fa: &FunctionFieldElement, fb: &FunctionFieldElement| -> Result<FieldElement> {
        for p in pts {
            if p.is_infinity() || p == a || *p == sum {
                continue;
            }
            if let Ok(v) = epsilon_value(curve, fa, fb, &fsum, a, p) {
                return Ok(v);
            }
        }
        Err(Error::PoleAtP)
    };
    let e_st = eps(s, fs, &ft)?;
    let e_ts = eps(t, &ft, fs)?;
    Ok(&e_st / &e_ts)
}
