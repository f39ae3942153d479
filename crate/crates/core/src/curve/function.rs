//! Elements of the function field K(E) in the normal form `(u + v y) / w`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, Poly};

use super::series::{expand_at_infinity, expand_at_point, LaurentSeries};
use super::{Curve, Point};

/// `(u(x) + v(x) y) / w(x)` with `gcd(u, v, w) = 1` and `w` monic.
#[derive(Clone, PartialEq, Eq)]
pub struct FunctionFieldElement {
    curve: Curve,
    u: Poly,
    v: Poly,
    w: Poly,
}

impl FunctionFieldElement {
    pub fn new(curve: &Curve, u: Poly, v: Poly, w: Poly) -> Self {
        assert!(!w.is_zero(), "zero denominator");
        let k = curve.field();
        let mut f = FunctionFieldElement { curve: curve.clone(), u: u.embed(k), v: v.embed(k), w: w.embed(k) };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        if self.u.is_zero() && self.v.is_zero() {
            self.w = Poly::one(self.curve.field());
            return;
        }
        let g = self.u.gcd(&self.v).gcd(&self.w);
        if !g.is_constant() {
            self.u = self.u.exact_div(&g);
            self.v = self.v.exact_div(&g);
            self.w = self.w.exact_div(&g);
        }
        let li = self.w.lc().inv().unwrap();
        self.u = self.u.scale(&li);
        self.v = self.v.scale(&li);
        self.w = self.w.scale(&li);
    }

    pub fn from_poly(curve: &Curve, u: Poly) -> Self {
        let k = curve.field();
        Self::new(curve, u, Poly::zero(k), Poly::one(k))
    }

    pub fn constant(curve: &Curve, c: FieldElement) -> Self {
        Self::from_poly(curve, Poly::constant(c))
    }

    pub fn one(curve: &Curve) -> Self {
        Self::constant(curve, curve.field().one())
    }

    pub fn x(curve: &Curve) -> Self {
        Self::from_poly(curve, Poly::x(curve.field()))
    }

    pub fn y(curve: &Curve) -> Self {
        let k = curve.field();
        Self::new(curve, Poly::zero(k), Poly::one(k), Poly::one(k))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn w(&self) -> &Poly {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// True when the function is a polynomial `u(x) + v(x) y`.
    pub fn is_polynomial(&self) -> bool {
        self.w.is_constant()
    }

    pub fn add(&self, o: &Self) -> Self {
        let u = &(&self.u * &o.w) + &(&o.u * &self.w);
        let v = &(&self.v * &o.w) + &(&o.v * &self.w);
        Self::new(&self.curve, u, v, &self.w * &o.w)
    }

    pub fn neg(&self) -> Self {
        FunctionFieldElement { curve: self.curve.clone(), u: -&self.u, v: -&self.v, w: self.w.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = self.curve.rhs_poly();
        let u = &(&self.u * &o.u) + &(&(&self.v * &o.v) * &f);
        let v = &(&self.u * &o.v) + &(&self.v * &o.u);
        Self::new(&self.curve, u, v, &self.w * &o.w)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.curve, self.u.scale(c), self.v.scale(c), self.w.clone())
    }

    pub fn add_scalar(&self, c: &FieldElement) -> Self {
        self.add(&Self::constant(&self.curve, c.clone()))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let f = self.curve.rhs_poly();
        let norm = &(&self.u * &self.u) - &(&(&self.v * &self.v) * &f);
        Some(Self::new(&self.curve, &self.w * &self.u, -&(&self.w * &self.v), norm))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(&self.curve);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Evaluates a polynomial in `x` at a function.
    fn poly_at(p: &Poly, g: &Self) -> Self {
        let mut acc = Self::constant(&g.curve, g.curve.field().zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(g).add_scalar(c);
        }
        acc
    }

    /// Substitutes `x -> gx`, `y -> gy`.
    pub fn substitute(&self, gx: &Self, gy: &Self) -> Self {
        let num = Self::poly_at(&self.u, gx).add(&Self::poly_at(&self.v, gx).mul(gy));
        num.div(&Self::poly_at(&self.w, gx)).expect("substituted denominator vanishes")
    }

    /// The pullback `P -> f(P + S)` for `S` rational over the curve's field.
    pub fn translate(&self, s: &Point) -> Self {
        let Point::Affine { x: xs, y: ys } = s else {
            return self.clone();
        };
        let c = &self.curve;
        let x = Self::x(c);
        let y = Self::y(c);
        let lam = y.add_scalar(&-ys).div(&x.add_scalar(&-xs)).unwrap();
        let x3 = lam.mul(&lam).sub(&x).add_scalar(&-xs);
        let y3 = lam.mul(&x.sub(&x3)).sub(&y);
        self.substitute(&x3, &y3)
    }

    /// Value at a point (possibly over an extension).
    pub fn eval(&self, p: &Point) -> Result<FieldElement> {
        match p {
            Point::Infinity => {
                let s = self.laurent_at_o(2);
                match s.valuation() {
                    None => Ok(self.curve.field().zero()),
                    Some(v) if v > 0 => Ok(self.curve.field().zero()),
                    Some(0) => Ok(s.leading().unwrap().clone()),
                    Some(_) => Err(Error::PoleAtP),
                }
            }
            Point::Affine { x, y } => {
                let den = self.w.eval(x);
                if !den.is_zero() {
                    let num = &self.u.eval(x) + &(&self.v.eval(x) * y);
                    return Ok(&num / &den);
                }
                let (v, lead) = self.local_leading(p)?;
                match v {
                    v if v > 0 => Ok(x.tower().zero()),
                    0 => Ok(lead),
                    _ => Err(Error::PoleAtP),
                }
            }
        }
    }

    /// Valuation and leading coefficient in `x - x(P)` at an affine point.
    fn local_leading(&self, p: &Point) -> Result<(i64, FieldElement)> {
        if self.is_zero() {
            return Err(Error::DegenerateSample("zero function has no valuation".into()));
        }
        let bound = (2 * self.u.degree().unwrap_or(0)).max(2 * self.v.degree().unwrap_or(0) + 3) + self.w.deg() + 3;
        let (xs, ys) = expand_at_point(&self.curve, p, bound)
            .ok_or_else(|| Error::DegenerateSample("local expansion at a 2-torsion point".into()))?;
        let num = self.numerator_series(&xs, &ys);
        let den = LaurentSeries::eval_poly(&self.w, &xs);
        let q = num.mul(&den.inv().expect("denominator is a nonzero polynomial"));
        let v = q.valuation().expect("precision bound too small");
        Ok((v, q.leading().unwrap().clone()))
    }

    /// Expansion at an affine point with `y(P) != 0` in `s = x - x(P)`; the
    /// numerator is known to `rel` terms.
    pub fn series_at(&self, p: &Point, rel: usize) -> Option<LaurentSeries> {
        let (xs, ys) = expand_at_point(&self.curve, p, rel)?;
        let num = self.numerator_series(&xs, &ys);
        let den = LaurentSeries::eval_poly(&self.w, &xs);
        Some(num.mul(&den.inv()?))
    }

    /// Order of vanishing at `p` (negative for poles).
    pub fn order_at(&self, p: &Point) -> Result<i64> {
        match p {
            Point::Infinity => Ok(self.laurent_at_o(1).valuation().expect("nonzero function")),
            _ => Ok(self.local_leading(p)?.0),
        }
    }

    fn numerator_series(&self, x: &LaurentSeries, y: &LaurentSeries) -> LaurentSeries {
        let vy = || LaurentSeries::eval_poly(&self.v, x).mul(y);
        match (self.u.is_zero(), self.v.is_zero()) {
            (_, true) => LaurentSeries::eval_poly(&self.u, x),
            (true, false) => vy(),
            (false, false) => LaurentSeries::eval_poly(&self.u, x).add(&vy()),
        }
    }

    /// Laurent expansion at O in `t = x/y` with `rel` known terms.
    pub fn laurent_at_o(&self, rel: usize) -> LaurentSeries {
        let (x, y) = expand_at_infinity(&self.curve, rel);
        let num = self.numerator_series(&x, &y);
        if num.valuation().is_none() {
            return num;
        }
        let den = LaurentSeries::eval_poly(&self.w, &x);
        num.mul(&den.inv().unwrap())
    }
}

impl fmt::Debug for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}) + ({})*y) / ({})", self.u, self.v, self.w)
    }
}
