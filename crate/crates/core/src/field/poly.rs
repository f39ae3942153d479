//! Dense univariate polynomials over a [`FieldTower`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::tower::{FieldElement, FieldTower};

/// Coefficients are stored constant term first, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    tower: FieldTower,
    c: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(tower: &FieldTower) -> Self {
        Poly { tower: tower.clone(), c: Vec::new() }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Poly::constant(tower.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(c.tower().clone(), vec![c])
    }

    /// The monomial `x`.
    pub fn x(tower: &FieldTower) -> Self {
        Poly::new(tower.clone(), vec![tower.zero(), tower.one()])
    }

    pub fn new(tower: FieldTower, coeffs: Vec<FieldElement>) -> Self {
        let c = coeffs.into_iter().map(|e| e.embed(&tower)).collect();
        let mut p = Poly { tower, c };
        p.trim();
        p
    }

    pub fn from_ints(tower: &FieldTower, coeffs: &[i64]) -> Self {
        Poly::new(tower.clone(), coeffs.iter().map(|&v| tower.from_int(v)).collect())
    }

    /// `x - r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        let t = r.tower().clone();
        Poly::new(t.clone(), vec![-r, t.one()])
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|v| v.is_zero()) {
            self.c.pop();
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> FieldElement {
        self.c.last().cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn embed(&self, target: &FieldTower) -> Poly {
        Poly::new(target.clone(), self.c.clone())
    }

    pub fn scale(&self, s: &FieldElement) -> Poly {
        let t = self.tower.join(s.tower());
        Poly::new(t, self.c.iter().map(|v| v * s).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    /// Evaluates at a point of this tower or of an extension of it.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let t = self.tower.join(x.tower());
        let mut acc = t.zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation in any ring where `FieldElement` scalars act.
    pub fn eval_with<R, F, G>(&self, x: &R, lift: F, mulr: G) -> R
    where
        R: Clone + Add<Output = R>,
        F: Fn(&FieldElement) -> R,
        G: Fn(&R, &R) -> R,
    {
        let mut acc = lift(&self.tower.zero());
        for c in self.c.iter().rev() {
            acc = mulr(&acc, x) + lift(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, v)| v.scale(&super::rational::int(i as i64))).collect();
        Poly::new(self.tower.clone(), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.tower);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let t = self.tower.join(&d.tower);
        let mut r: Vec<FieldElement> = self.c.iter().map(|v| v.embed(&t)).collect();
        let dd = d.deg();
        if r.len() <= dd {
            return (Poly::zero(&t), Poly::new(t, r));
        }
        let lc_inv = d.lc().inv().unwrap();
        let mut q = vec![t.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &lc_inv;
            if coef.is_zero() {
                continue;
            }
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&coef * dc);
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(t.clone(), q), Poly::new(t, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let t = self.tower.join(&other.tower);
        let (mut r0, mut r1) = (self.embed(&t), other.embed(&t));
        let (mut s0, mut s1) = (Poly::one(&t), Poly::zero(&t));
        let (mut t0, mut t1) = (Poly::zero(&t), Poly::one(&t));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self(x + s)`.
    pub fn shift(&self, s: &FieldElement) -> Poly {
        let t = self.tower.join(s.tower());
        let lin = Poly::new(t.clone(), vec![s.clone(), t.one()]);
        let mut acc = Poly::zero(&t);
        for c in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.embed(&t));
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let t = self.tower.join(&g.tower);
        let mut acc = Poly::zero(&t);
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.embed(&t));
        }
        acc
    }

    /// Squarefree decomposition `self = lc * prod f_i^i` (characteristic 0).
    /// Returns monic `(f_i, i)` for the non-constant `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        // Yun's algorithm
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.exact_div(&a);
        let c = fp.exact_div(&a);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let g = b.gcd(&d);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g);
            let c = d.exact_div(&g);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(tower: &FieldTower, xs: &[FieldElement], ys: &[FieldElement]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut coef: Vec<FieldElement> = ys.iter().map(|y| y.embed(tower)).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                coef[i] = &(&coef[i] - &coef[i - 1]) / &(&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = Poly::zero(tower);
        for i in (0..n).rev() {
            acc = &(&acc * &Poly::linear_root(&xs[i].embed(tower))) + &Poly::constant(coef[i].clone());
        }
        acc
    }
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let t = self.tower.join(&rhs.tower);
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::new(t, c)
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let t = self.tower.join(&rhs.tower);
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::new(t, c)
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        let t = self.tower.join(&rhs.tower);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&t);
        }
        let mut c = vec![t.zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(t, c)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.tower.clone(), self.c.iter().map(|v| -v).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{}", i),
            };
            let coef = format!("{}", v);
            if mon.is_empty() {
                terms.push(coef);
            } else if v.is_one() {
                terms.push(mon);
            } else {
                terms.push(format!("({})*{}", coef, mon));
            }
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}
