//! Truncated Laurent series with exact coefficients.

use std::fmt;

use crate::field::{FieldElement, FieldTower, Poly};

use super::{Curve, Point};

/// `sum_{k >= val} c[k - val] t^k + O(t^(val + c.len()))`.
///
/// The leading coefficient is kept nonzero; a series that vanishes to its
/// precision has no coefficients and `val` equal to its absolute precision.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    tower: FieldTower,
    val: i64,
    c: Vec<FieldElement>,
}

impl LaurentSeries {
    pub fn new(tower: &FieldTower, val: i64, coeffs: Vec<FieldElement>) -> Self {
        let c = coeffs.into_iter().map(|v| v.embed(tower)).collect();
        let mut s = LaurentSeries { tower: tower.clone(), val, c };
        s.normalize();
        s
    }

    /// The monomial `t^e` known to `rel` terms.
    pub fn monomial(tower: &FieldTower, e: i64, rel: usize) -> Self {
        let mut c = vec![tower.zero(); rel.max(1)];
        c[0] = tower.one();
        LaurentSeries::new(tower, e, c)
    }

    fn normalize(&mut self) {
        let lead = self.c.iter().position(|v| !v.is_zero()).unwrap_or(self.c.len());
        if lead > 0 {
            self.c.drain(..lead);
            self.val += lead as i64;
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Order of the leading term, `None` if zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.c.first()
    }

    /// Exponent of the first unknown term.
    pub fn abs_precision(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    pub fn rel_precision(&self) -> usize {
        self.c.len()
    }

    /// Coefficient of `t^e`, `None` beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<FieldElement> {
        if e >= self.abs_precision() {
            None
        } else if e < self.val {
            Some(self.tower.zero())
        } else {
            Some(self.c[(e - self.val) as usize].clone())
        }
    }

    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        let t = self.tower.join(&o.tower);
        let n = self.c.len().min(o.c.len());
        let mut c = vec![t.zero(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] = &c[i + j] + &(&self.c[i] * &o.c[j]);
            }
        }
        LaurentSeries::new(&t, self.val + o.val, c)
    }

    pub fn add(&self, o: &LaurentSeries) -> LaurentSeries {
        let t = self.tower.join(&o.tower);
        let val = self.val.min(o.val);
        let top = self.abs_precision().min(o.abs_precision());
        let len = (top - val).max(0) as usize;
        let mut c = vec![t.zero(); len];
        for s in [self, o] {
            for (i, v) in s.c.iter().enumerate() {
                let e = s.val + i as i64;
                if e < top {
                    let idx = (e - val) as usize;
                    c[idx] = &c[idx] + v;
                }
            }
        }
        LaurentSeries::new(&t, val.min(top), c)
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries { tower: self.tower.clone(), val: self.val, c: self.c.iter().map(|v| -v).collect() }
    }

    pub fn sub(&self, o: &LaurentSeries) -> LaurentSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &FieldElement) -> LaurentSeries {
        let t = self.tower.join(s.tower());
        LaurentSeries::new(&t, self.val, self.c.iter().map(|v| v * s).collect())
    }

    /// Adds an exact scalar; the precision is unchanged.
    pub fn add_scalar(&self, s: &FieldElement) -> LaurentSeries {
        if s.is_zero() || self.abs_precision() <= 0 {
            return self.clone();
        }
        let t = self.tower.join(s.tower());
        if self.val <= 0 {
            let mut c: Vec<FieldElement> = self.c.iter().map(|v| v.embed(&t)).collect();
            let idx = (-self.val) as usize;
            c[idx] = &c[idx] + s;
            LaurentSeries::new(&t, self.val, c)
        } else {
            let mut c = vec![t.zero(); (self.abs_precision()) as usize];
            c[0] = s.embed(&t);
            for (i, v) in self.c.iter().enumerate() {
                c[self.val as usize + i] = v.embed(&t);
            }
            LaurentSeries::new(&t, 0, c)
        }
    }

    /// Multiplicative inverse; the leading coefficient must be known.
    pub fn inv(&self) -> Option<LaurentSeries> {
        let lead = self.c.first()?;
        let li = lead.inv().unwrap();
        let n = self.c.len();
        let mut d: Vec<FieldElement> = Vec::with_capacity(n);
        d.push(li.clone());
        for k in 1..n {
            let mut acc = self.tower.zero();
            for i in 1..=k {
                acc = &acc + &(&self.c[i] * &d[k - i]);
            }
            d.push(-&(&acc * &li));
        }
        Some(LaurentSeries::new(&self.tower, -self.val, d))
    }

    /// Keeps at most `rel` known terms.
    pub fn truncate(&self, rel: usize) -> LaurentSeries {
        let mut s = self.clone();
        s.c.truncate(rel);
        s
    }

    /// Horner evaluation of a polynomial at a series.
    pub fn eval_poly(p: &Poly, x: &LaurentSeries) -> LaurentSeries {
        let t = p.tower().join(&x.tower);
        let mut acc: Option<LaurentSeries> = None;
        for c in p.coeffs().iter().rev() {
            acc = Some(match acc {
                None => LaurentSeries::new(&t, 0, vec![c.clone()]).extend_exact(x),
                Some(a) => a.mul(x).add_scalar(c),
            });
        }
        acc.unwrap_or_else(|| LaurentSeries::new(&t, 0, Vec::new()))
    }

    /// A constant read as a series with the precision of `like` (relative).
    fn extend_exact(mut self, like: &LaurentSeries) -> LaurentSeries {
        if self.c.is_empty() {
            return self;
        }
        let n = like.c.len().max(1);
        self.c.resize(n, self.tower.zero());
        self
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("({})t^{}", v, self.val + i as i64))
            .collect();
        write!(f, "{} + O(t^{})", terms.join(" + "), self.abs_precision())
    }
}

/// Expansions of `x` and `y` at O in `t = x/y`, each with `rel` known terms.
pub fn expand_at_infinity(curve: &Curve, rel: usize) -> (LaurentSeries, LaurentSeries) {
    let k = curve.field();
    // u = 1/y satisfies u = t^3 + a t u^2 + b u^3
    let t3 = LaurentSeries::monomial(k, 3, rel);
    let t1 = LaurentSeries::monomial(k, 1, rel + 8);
    let mut u = t3.clone();
    for _ in 0..rel / 2 + 2 {
        let u2 = u.mul(&u);
        let next = t3.add(&t1.mul(&u2).scale(curve.a())).add(&u2.mul(&u).scale(curve.b()));
        u = next.truncate(rel);
    }
    let y = u.inv().unwrap();
    let x = y.mul(&LaurentSeries::monomial(k, 1, rel));
    (x, y)
}

/// Expansions of `x` and `y` at an affine point `P` with `y(P) != 0` in the
/// local parameter `s = x - x(P)`, each with `rel` known terms.
pub fn expand_at_point(curve: &Curve, p: &Point, rel: usize) -> Option<(LaurentSeries, LaurentSeries)> {
    let Point::Affine { x: x0, y: y0 } = p else {
        return None;
    };
    if y0.is_zero() {
        return None;
    }
    let t = x0.tower().clone();
    // rhs(x0 + s) as a polynomial in s
    let g = curve.rhs_poly().embed(&t).shift(x0);
    let gc: Vec<FieldElement> = (0..rel).map(|i| g.coeff(i)).collect();
    let two_y0_inv = (y0 + y0).inv().unwrap();
    let mut yc: Vec<FieldElement> = vec![y0.clone()];
    for k in 1..rel {
        let mut acc = gc[k].clone();
        for i in 1..k {
            acc = &acc - &(&yc[i] * &yc[k - i]);
        }
        yc.push(&acc * &two_y0_inv);
    }
    let mut xc = vec![t.zero(); rel.max(2)];
    xc[0] = x0.clone();
    xc[1] = t.one();
    xc.truncate(rel.max(1));
    Some((LaurentSeries::new(&t, 0, xc), LaurentSeries::new(&t, 0, yc)))
}
