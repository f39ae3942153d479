//! Elliptic curves in short Weierstrass form, their n-torsion and function
//! field.

mod function;
mod miller;
mod sample;
mod series;
mod torsion;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{int, FieldElement, FieldTower, Poly};

pub use function::FunctionFieldElement;
pub use miller::{epsilon_value, miller_f};
pub use sample::sample_point;
pub use series::{expand_at_infinity, expand_at_point, LaurentSeries};
pub use torsion::TorsionTable;

/// `y^2 = x^3 + a x + b` over a number field.
#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    field: FieldTower,
    a: FieldElement,
    b: FieldElement,
}

/// A point of a curve, with coordinates in the curve's field or in an
/// extension of it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Point {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl Point {
    pub fn affine(x: FieldElement, y: FieldElement) -> Point {
        let t = x.tower().join(y.tower());
        Point::Affine { x: x.embed(&t), y: y.embed(&t) }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&FieldElement> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }

    /// Field of definition of the coordinates (`None` for O).
    pub fn tower(&self) -> Option<&FieldTower> {
        self.x().map(|x| x.tower())
    }

    pub fn embed(&self, t: &FieldTower) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.embed(t), y: y.embed(t) },
        }
    }

    /// Sort key: O first, then x coordinates, then y.
    pub fn cmp_key(&self, other: &Point) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Point::Infinity, Point::Infinity) => Equal,
            (Point::Infinity, _) => Less,
            (_, Point::Infinity) => Greater,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
                x1.cmp_coords(x2).then_with(|| y1.cmp_coords(y2))
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({}, {})", x, y),
        }
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({}) over {:?}", self.a, self.b, self.field)
    }
}

impl Curve {
    pub fn new(field: &FieldTower, a: FieldElement, b: FieldElement) -> Result<Curve> {
        let a = a.embed(field);
        let b = b.embed(field);
        let disc = &(&a.pow(3) * &field.from_int(4)) + &(&b.pow(2) * &field.from_int(27));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { field: field.clone(), a, b })
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    /// `-16 (4 a^3 + 27 b^2)`.
    pub fn discriminant(&self) -> FieldElement {
        let f = &self.field;
        let s = &(&self.a.pow(3) * &f.from_int(4)) + &(&self.b.pow(2) * &f.from_int(27));
        &s * &f.from_int(-16)
    }

    /// `x^3 + a x + b` evaluated at `x`.
    pub fn rhs(&self, x: &FieldElement) -> FieldElement {
        &(&x.pow(3) + &(&self.a * x)) + &self.b
    }

    /// `x^3 + a x + b` as a polynomial.
    pub fn rhs_poly(&self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), vec![self.b.clone(), self.a.clone(), f.zero(), f.one()])
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => (y * y) == self.rhs(x),
        }
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: -y },
        }
    }

    /// Chord or tangent slope; fails when `p + q = O` or either is O.
    pub fn slope(&self, p: &Point, q: &Point) -> Result<FieldElement> {
        let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) = (p, q) else {
            return Err(Error::VerticalLine);
        };
        if x1 != x2 {
            return Ok(&(y2 - y1) / &(x2 - x1));
        }
        if y1 != y2 || y1.is_zero() {
            return Err(Error::VerticalLine);
        }
        let num = &(&(x1 * x1) * &self.field.from_int(3)) + &self.a;
        Ok(&num / &(y1 + y1))
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, .. }) => match self.slope(p, q) {
                Err(_) => Point::Infinity,
                Ok(l) => {
                    let x3 = &(&(&l * &l) - x1) - x2;
                    let y3 = &(&l * &(x1 - &x3)) - y1;
                    Point::Affine { x: x3, y: y3 }
                }
            },
        }
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.neg(q))
    }

    /// `k * p` by double-and-add; negative `k` allowed.
    pub fn mul(&self, k: i64, p: &Point) -> Point {
        let mut base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Point::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Order of `p` if it divides `bound`, by repeated addition.
    pub fn order(&self, p: &Point, bound: usize) -> Option<usize> {
        let mut q = p.clone();
        for k in 1..=bound {
            if q.is_infinity() {
                return Some(k);
            }
            q = self.add(&q, p);
        }
        None
    }

    /// The division polynomial `psi_n` as a polynomial in `x` (odd `n`).
    pub fn division_polynomial(&self, n: usize) -> Result<Poly> {
        if n.is_multiple_of(2) {
            return Err(Error::UnsupportedN(n));
        }
        let mut memo = HashMap::new();
        Ok(self.reduced_psi(n, &mut memo))
    }

    /// `psi_k` for odd `k`, `psi_k / y` for even `k`, as polynomials in `x`.
    fn reduced_psi(&self, k: usize, memo: &mut HashMap<usize, Poly>) -> Poly {
        if let Some(p) = memo.get(&k) {
            return p.clone();
        }
        let f = &self.field;
        let (a, b) = (&self.a, &self.b);
        let p = match k {
            0 => Poly::zero(f),
            1 => Poly::one(f),
            2 => Poly::from_ints(f, &[2]),
            3 => {
                Poly::new(f.clone(), vec![-&(a * a), b * &f.from_int(12), a * &f.from_int(6), f.zero(), f.from_int(3)])
            }
            4 => {
                let a2 = a * a;
                Poly::new(
                    f.clone(),
                    vec![
                        &(&(b * b) * &f.from_int(-32)) - &(&(&a2 * a) * &f.from_int(4)),
                        &(a * b) * &f.from_int(-16),
                        &a2 * &f.from_int(-20),
                        b * &f.from_int(80),
                        a * &f.from_int(20),
                        f.zero(),
                        f.from_int(4),
                    ],
                )
            }
            _ => {
                let rhs2 = self.rhs_poly().pow(2);
                let m = k / 2;
                let mut g = |i: usize| self.reduced_psi(i, memo);
                if k % 2 == 1 {
                    let (pm2, pm, pm1, pp1) = (g(m + 2), g(m), g(m - 1), g(m + 1));
                    if m.is_multiple_of(2) {
                        &(&(&pm2 * &pm.pow(3)) * &rhs2) - &(&pm1 * &pp1.pow(3))
                    } else {
                        &(&pm2 * &pm.pow(3)) - &(&(&pm1 * &pp1.pow(3)) * &rhs2)
                    }
                } else {
                    let (pm, pp2, pm1, pm2, pp1) = (g(m), g(m + 2), g(m - 1), g(m - 2), g(m + 1));
                    let inner = &(&pp2 * &pm1.pow(2)) - &(&pm2 * &pp1.pow(2));
                    (&pm * &inner).scale(&f.from_rational(int(1) / int(2)))
                }
            }
        };
        memo.insert(k, p.clone());
        p
    }
}
