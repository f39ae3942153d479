//! Number fields as towers of simple extensions over the rationals.
//!
//! An element of a tower of depth `k` is stored as a flat vector of rationals
//! of length `d_1 * ... * d_k`. The lowest level varies fastest: the element
//! `sum_j c_j * a_k^j` with `c_j` in the level below is the concatenation of
//! the coordinate vectors of `c_0, c_1, ...`. Embedding a prefix tower into a
//! deeper one is therefore zero padding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    pub(crate) gen: String,
    pub(crate) degree: usize,
    /// Monic minimal polynomial, constant term first; each coefficient is a
    /// coordinate vector over the previous level.
    pub(crate) minpoly: Vec<Vec<Rational>>,
}

#[derive(Debug)]
pub(crate) struct Levels {
    pub(crate) levels: Vec<Level>,
    /// `dims[k]` is the rational dimension of the first `k` levels.
    pub(crate) dims: Vec<usize>,
}

/// A number field presented as a tower `Q = K_0 < K_1 < ... < K_depth`.
#[derive(Clone)]
pub struct FieldTower {
    data: Arc<Levels>,
    depth: usize,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower[Q")?;
        for lv in &self.data.levels[..self.depth] {
            write!(f, " ({}: deg {})", lv.gen, lv.degree)?;
        }
        write!(f, "]")
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.depth == other.depth
            && (Arc::ptr_eq(&self.data, &other.data)
                || self.data.levels[..self.depth] == other.data.levels[..other.depth])
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    /// The rational numbers.
    pub fn rationals() -> Self {
        FieldTower { data: Arc::new(Levels { levels: Vec::new(), dims: vec![1] }), depth: 0 }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Degree over Q.
    pub fn degree(&self) -> usize {
        self.data.dims[self.depth]
    }

    pub(crate) fn levels(&self) -> &Levels {
        &self.data
    }

    /// Degree of the top level over the level below (1 for Q).
    pub fn top_degree(&self) -> usize {
        if self.depth == 0 {
            1
        } else {
            self.data.levels[self.depth - 1].degree
        }
    }

    /// Generator names, bottom level first.
    pub fn generator_names(&self) -> Vec<String> {
        self.data.levels[..self.depth].iter().map(|l| l.gen.clone()).collect()
    }

    /// Minimal polynomial of level `level` (1-based) with coefficients in the
    /// tower of depth `level - 1`, constant term first.
    pub fn minpoly(&self, level: usize) -> Vec<FieldElement> {
        assert!(level >= 1 && level <= self.depth);
        let base = self.truncate(level - 1);
        self.data.levels[level - 1].minpoly.iter().map(|c| FieldElement::from_coords(&base, c.clone())).collect()
    }

    /// The sub-tower made of the first `depth` levels.
    pub fn truncate(&self, depth: usize) -> FieldTower {
        assert!(depth <= self.depth);
        FieldTower { data: self.data.clone(), depth }
    }

    /// The tower one level down; Q stays Q.
    pub fn base(&self) -> FieldTower {
        self.truncate(self.depth.saturating_sub(1))
    }

    /// True when `self` is a prefix of `other` (possibly equal).
    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        self.depth <= other.depth
            && (Arc::ptr_eq(&self.data, &other.data)
                || self.data.levels[..self.depth] == other.data.levels[..self.depth])
    }

    /// Adjoins a root of `minpoly` without checking irreducibility.
    ///
    /// `minpoly` must be monic with coefficients in `self`. Use
    /// [`crate::field::tower_extend`] for the certified version.
    pub fn extend_unchecked(&self, gen: &str, minpoly: &[FieldElement]) -> FieldTower {
        assert!(minpoly.len() >= 2, "minimal polynomial must have positive degree");
        assert!(minpoly.last().unwrap().is_one(), "minimal polynomial must be monic");
        let coeffs: Vec<Vec<Rational>> = minpoly.iter().map(|c| c.embed(self).coords().to_vec()).collect();
        let mut levels: Vec<Level> = self.data.levels[..self.depth].to_vec();
        levels.push(Level { gen: gen.to_string(), degree: minpoly.len() - 1, minpoly: coeffs });
        let mut dims = vec![1usize];
        for l in &levels {
            let last = *dims.last().unwrap();
            dims.push(last * l.degree);
        }
        let depth = levels.len();
        FieldTower { data: Arc::new(Levels { levels, dims }), depth }
    }

    /// Common tower of two towers, one of which must be a prefix of the other.
    pub fn join(&self, other: &FieldTower) -> FieldTower {
        if self.is_prefix_of(other) {
            other.clone()
        } else if other.is_prefix_of(self) {
            self.clone()
        } else {
            panic!("incompatible towers {:?} and {:?}", self, other)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero(self)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(self)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement::from_rational(self, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(&self, v: Rational) -> FieldElement {
        FieldElement::from_rational(self, v)
    }

    /// Generator of level `level` (1-based) as an element of this tower.
    pub fn generator(&self, level: usize) -> FieldElement {
        assert!(level >= 1 && level <= self.depth);
        let mut c = vec![Rational::zero(); self.degree()];
        c[self.data.dims[level - 1]] = Rational::one();
        FieldElement { tower: self.clone(), c }
    }
}

/// An element of a [`FieldTower`].
#[derive(Clone)]
pub struct FieldElement {
    tower: FieldTower,
    c: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(tower: &FieldTower) -> Self {
        FieldElement { tower: tower.clone(), c: vec![Rational::zero(); tower.degree()] }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::from_rational(tower, Rational::one())
    }

    pub fn from_rational(tower: &FieldTower, v: Rational) -> Self {
        let mut c = vec![Rational::zero(); tower.degree()];
        c[0] = v;
        FieldElement { tower: tower.clone(), c }
    }

    pub fn from_int(tower: &FieldTower, v: i64) -> Self {
        Self::from_rational(tower, Rational::from_integer(BigInt::from(v)))
    }

    /// Builds an element from rational coordinates; short vectors are padded.
    pub fn from_coords(tower: &FieldTower, mut c: Vec<Rational>) -> Self {
        assert!(c.len() <= tower.degree(), "too many coordinates for tower");
        c.resize(tower.degree(), Rational::zero());
        FieldElement { tower: tower.clone(), c }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|v| v.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|v| v.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Embeds into a tower that has `self.tower()` as a prefix.
    pub fn embed(&self, target: &FieldTower) -> FieldElement {
        if self.tower == *target {
            return FieldElement { tower: target.clone(), c: self.c.clone() };
        }
        assert!(self.tower.is_prefix_of(target), "cannot embed {:?} into {:?}", self.tower, target);
        let mut c = self.c.clone();
        c.resize(target.degree(), Rational::zero());
        FieldElement { tower: target.clone(), c }
    }

    /// Restricts to a prefix tower if the element lies in it.
    pub fn restrict(&self, target: &FieldTower) -> Option<FieldElement> {
        assert!(target.is_prefix_of(&self.tower));
        let d = target.degree();
        if self.c[d..].iter().all(|v| v.is_zero()) {
            Some(FieldElement { tower: target.clone(), c: self.c[..d].to_vec() })
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let c = inv_flat(self.tower.levels(), self.tower.depth, &self.c);
        Some(FieldElement { tower: self.tower.clone(), c })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.tower);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> FieldElement {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().expect("negative power of zero").pow(e.unsigned_abs())
        }
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement { tower: self.tower.clone(), c: self.c.iter().map(|v| v * r).collect() }
    }

    /// Multiplication matrix over the level below, acting on coefficient
    /// columns with respect to the powers of the top generator.
    pub fn multiplication_matrix(&self) -> ExactMatrix {
        let tower = &self.tower;
        assert!(tower.depth >= 1);
        let base = tower.base();
        let d = tower.top_degree();
        let bd = base.degree();
        let gen = tower.generator(tower.depth);
        let mut m = ExactMatrix::zero(&base, d, d);
        let mut col = self.clone();
        for j in 0..d {
            for i in 0..d {
                m.set(i, j, FieldElement::from_coords(&base, col.c[i * bd..(i + 1) * bd].to_vec()));
            }
            col = &col * &gen;
        }
        m
    }

    /// Norm from the top level down to the level below.
    pub fn norm_down(&self) -> FieldElement {
        if self.tower.depth == 0 {
            return self.clone();
        }
        self.multiplication_matrix().det()
    }

    /// Norm all the way down to Q.
    pub fn norm_to_q(&self) -> Rational {
        let mut e = self.clone();
        while e.tower.depth > 0 {
            e = e.norm_down();
        }
        e.c[0].clone()
    }

    /// Comparison key: lexicographic on rational coordinates.
    pub fn cmp_coords(&self, other: &FieldElement) -> Ordering {
        let t = self.tower.join(&other.tower);
        let a = self.embed(&t);
        let b = other.embed(&t);
        for (x, y) in a.c.iter().zip(b.c.iter()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Coordinates as exact strings `p/q` (or `p` for integers).
    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(format_rational).collect()
    }

    /// Splits into coordinates over a prefix tower: the element equals
    /// `sum_j blocks[j] * b_j` where `b_j` runs over the monomial basis of
    /// `self.tower()` relative to `base`.
    pub fn blocks_over(&self, base: &FieldTower) -> Vec<FieldElement> {
        assert!(base.is_prefix_of(&self.tower));
        let bd = base.degree();
        self.c.chunks(bd).map(|ch| FieldElement { tower: base.clone(), c: ch.to_vec() }).collect()
    }

    fn binop(&self, other: &FieldElement) -> (FieldTower, Vec<Rational>, Vec<Rational>) {
        if self.tower == other.tower {
            return (self.tower.clone(), self.c.clone(), other.c.clone());
        }
        let t = self.tower.join(&other.tower);
        (t.clone(), self.embed(&t).c, other.embed(&t).c)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.tower == other.tower {
            return self.c == other.c;
        }
        let t = self.tower.join(&other.tower);
        self.embed(&t).c == other.embed(&t).c
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.tower.generator_names();
        let degs: Vec<usize> = self.tower.levels().levels[..self.tower.depth].iter().map(|l| l.degree).collect();
        let mut terms = Vec::new();
        for (idx, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut rem = idx;
            let mut mon = Vec::new();
            for (k, d) in degs.iter().enumerate() {
                let e = rem % d;
                rem /= d;
                match e {
                    0 => {}
                    1 => mon.push(names[k].clone()),
                    _ => mon.push(format!("{}^{}", names[k], e)),
                }
            }
            let coef = format_rational(v);
            if mon.is_empty() {
                terms.push(coef);
            } else if v.is_one() {
                terms.push(mon.join("*"));
            } else if (-v).is_one() {
                terms.push(format!("-{}", mon.join("*")));
            } else {
                terms.push(format!("{}*{}", coef, mon.join("*")));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'b FieldElement) -> FieldElement {
        let (t, mut a, b) = self.binop(rhs);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        FieldElement { tower: t, c: a }
    }
}

impl<'b> Sub<&'b FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'b FieldElement) -> FieldElement {
        let (t, mut a, b) = self.binop(rhs);
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
        FieldElement { tower: t, c: a }
    }
}

impl<'b> Mul<&'b FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'b FieldElement) -> FieldElement {
        if self.tower == rhs.tower {
            let c = mul_flat(self.tower.levels(), self.tower.depth, &self.c, &rhs.c);
            return FieldElement { tower: self.tower.clone(), c };
        }
        // a base-field scalar times an extension element needs no reduction
        let (small, big) = if self.tower.depth < rhs.tower.depth { (self, rhs) } else { (rhs, self) };
        assert!(small.tower.is_prefix_of(&big.tower), "incompatible towers");
        let sd = small.tower.degree();
        let mut out = Vec::with_capacity(big.c.len());
        for ch in big.c.chunks(sd) {
            out.extend(mul_flat(small.tower.levels(), small.tower.depth, &small.c, ch));
        }
        FieldElement { tower: big.tower.clone(), c: out }
    }
}

impl<'b> Div<&'b FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &'b FieldElement) -> FieldElement {
        self * &rhs.inv().expect("division by zero")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { tower: self.tower, c: self.c.into_iter().map(|v| -v).collect() }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { tower: self.tower.clone(), c: self.c.iter().map(|v| -v).collect() }
    }
}

// ---- flat arithmetic -------------------------------------------------------

fn is_zero_slice(a: &[Rational]) -> bool {
    a.iter().all(|v| v.is_zero())
}

pub(crate) fn mul_flat(lv: &Levels, depth: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if depth == 0 {
        return vec![&a[0] * &b[0]];
    }
    let bd = lv.dims[depth - 1];
    let level = &lv.levels[depth - 1];
    let d = level.degree;
    let mut prod: Vec<Vec<Rational>> = vec![vec![Rational::zero(); bd]; 2 * d - 1];
    for i in 0..d {
        let ai = &a[i * bd..(i + 1) * bd];
        if is_zero_slice(ai) {
            continue;
        }
        for j in 0..d {
            let bj = &b[j * bd..(j + 1) * bd];
            if is_zero_slice(bj) {
                continue;
            }
            let t = mul_flat(lv, depth - 1, ai, bj);
            for (x, y) in prod[i + j].iter_mut().zip(t) {
                *x += y;
            }
        }
    }
    reduce_chunks(lv, depth, prod)
}

/// Reduces a polynomial in the top generator (chunks over the level below)
/// modulo the minimal polynomial.
fn reduce_chunks(lv: &Levels, depth: usize, mut prod: Vec<Vec<Rational>>) -> Vec<Rational> {
    let bd = lv.dims[depth - 1];
    let level = &lv.levels[depth - 1];
    let d = level.degree;
    while prod.len() > d {
        let top = prod.pop().unwrap();
        if is_zero_slice(&top) {
            continue;
        }
        let shift = prod.len() - d;
        for (i, p) in level.minpoly[..d].iter().enumerate() {
            if is_zero_slice(p) {
                continue;
            }
            let t = mul_flat(lv, depth - 1, &top, p);
            for (x, y) in prod[shift + i].iter_mut().zip(t) {
                *x -= y;
            }
        }
    }
    prod.resize(d, vec![Rational::zero(); bd]);
    prod.into_iter().flatten().collect()
}

fn trim(p: &mut Vec<Vec<Rational>>) {
    while p.last().is_some_and(|c| is_zero_slice(c)) {
        p.pop();
    }
}

/// Inverse via the extended Euclidean algorithm over the level below.
pub(crate) fn inv_flat(lv: &Levels, depth: usize, a: &[Rational]) -> Vec<Rational> {
    if depth == 0 {
        return vec![a[0].recip()];
    }
    let bd = lv.dims[depth - 1];
    let level = &lv.levels[depth - 1];
    let sub = depth - 1;
    let mul = |x: &[Rational], y: &[Rational]| mul_flat(lv, sub, x, y);
    let inv = |x: &[Rational]| inv_flat(lv, sub, x);
    let zero = || vec![Rational::zero(); bd];
    let mut one = zero();
    one[0] = Rational::one();

    // r0 = minpoly, r1 = a; track s with s * a = r (mod minpoly)
    let mut r0: Vec<Vec<Rational>> = level.minpoly.clone();
    let mut r1: Vec<Vec<Rational>> = a.chunks(bd).map(|c| c.to_vec()).collect();
    trim(&mut r1);
    let mut s0: Vec<Vec<Rational>> = Vec::new();
    let mut s1: Vec<Vec<Rational>> = vec![one.clone()];
    while r1.len() > 1 {
        // divide r0 by r1
        let lc_inv = inv(r1.last().unwrap());
        let mut q: Vec<Vec<Rational>> = vec![zero(); r0.len().saturating_sub(r1.len()) + 1];
        let mut r = r0.clone();
        while r.len() >= r1.len() && !r.is_empty() {
            let shift = r.len() - r1.len();
            let coef = mul(r.last().unwrap(), &lc_inv);
            for (i, c) in r1.iter().enumerate() {
                let t = mul(&coef, c);
                for (x, y) in r[shift + i].iter_mut().zip(t) {
                    *x -= y;
                }
            }
            q[shift] = coef;
            r.pop();
            trim(&mut r);
        }
        // s2 = s0 - q * s1
        let mut s2: Vec<Vec<Rational>> = vec![zero(); (q.len() + s1.len()).max(s0.len())];
        for (i, c) in s0.iter().enumerate() {
            for (x, y) in s2[i].iter_mut().zip(c) {
                *x += y;
            }
        }
        for (i, qi) in q.iter().enumerate() {
            if is_zero_slice(qi) {
                continue;
            }
            for (j, sj) in s1.iter().enumerate() {
                let t = mul(qi, sj);
                for (x, y) in s2[i + j].iter_mut().zip(t) {
                    *x -= y;
                }
            }
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    assert!(r1.len() == 1, "element is not invertible (minimal polynomial reducible?)");
    let c = inv(&r1[0]);
    let scaled: Vec<Vec<Rational>> = s1.iter().map(|s| mul(s, &c)).collect();
    reduce_chunks(lv, depth, scaled)
}

/// Height-style size measure used to prefer small sample values.
pub fn height(e: &FieldElement) -> BigInt {
    e.c.iter().map(|v| v.numer().abs().max(v.denom().clone())).max().unwrap_or_default()
}
