#![allow(dead_code)]

use ndescent::curve::{Curve, Point};
use ndescent::field::{tower_extend, FieldElement, FieldTower, Poly};

pub fn q_zeta3() -> FieldTower {
    let q = FieldTower::rationals();
    tower_extend(&q, "zeta3", &[q.one(), q.one(), q.one()]).unwrap()
}

/// `y^2 = x^3 - 432` over `Q(zeta3)`.
pub fn reference_curve() -> Curve {
    let k = q_zeta3();
    Curve::new(&k, k.zero(), k.from_int(-432)).unwrap()
}

/// A point with rational `x = x0`, over a quadratic extension if needed.
pub fn point_with_x(curve: &Curve, x0: i64) -> Point {
    let k = curve.field();
    let x = k.from_int(x0);
    let r = curve.rhs(&x);
    let sq = ndescent::field::roots_in_field(&Poly::new(k.clone(), vec![-&r, k.zero(), k.one()]));
    if let Some((y, _)) = sq.into_iter().next() {
        return Point::affine(x, y);
    }
    let l = tower_extend(k, "s", &[-&r, k.zero(), k.one()]).unwrap();
    Point::affine(x.embed(&l), l.generator(l.depth()))
}

/// Three sample points over quadratic extensions of the curve's field.
pub fn samples(curve: &Curve) -> Vec<Point> {
    [2, 5, -7].iter().map(|&x| point_with_x(curve, x)).collect()
}

pub fn elt(k: &FieldTower, c: &[i64]) -> FieldElement {
    FieldElement::from_coords(k, c.iter().map(|&v| ndescent::field::int(v)).collect())
}

/// `y^2 = x^3 - 864 x - 5616` over `Q(zeta3)`, a Hessian curve: full rational
/// 3-torsion and the point `(-24, 36)` of infinite order.
pub fn aux_curve() -> Curve {
    let k = q_zeta3();
    Curve::new(&k, k.from_int(-864), k.from_int(-5616)).unwrap()
}

pub fn aux_point(curve: &Curve) -> Point {
    let k = curve.field();
    Point::affine(k.from_int(-24), k.from_int(36))
}

/// Random invertible element of `R` with small coordinates.
pub fn random_z(k: &FieldTower, n2: usize, seed: u64) -> ndescent::algebra::RElement {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let vals = (0..n2)
        .map(|_| loop {
            let c: Vec<i64> = (0..k.degree()).map(|_| rng.gen_range(-4..=4)).collect();
            let e = elt(k, &c);
            if !e.is_zero() {
                break e;
            }
        })
        .collect();
    ndescent::algebra::RElement::new(vals)
}

/// Miller function `f_P` with divisor `n(P) - n(O)` evaluated pointwise with
/// lines, independent of the function-field code.
pub fn miller_value(curve: &Curve, n: usize, p: &Point, at: &Point) -> FieldElement {
    let k = curve.field();
    let (xa, ya) = (at.x().unwrap(), at.y().unwrap());
    let line = |r: &Point, s: &Point| -> FieldElement {
        match (r, s) {
            (Point::Infinity, _) | (_, Point::Infinity) => k.one(),
            (Point::Affine { x, y }, _) => {
                let s_sum = curve.add(r, s);
                let l = if s_sum.is_infinity() {
                    xa - x
                } else {
                    let lam = curve.slope(r, s).unwrap();
                    &(ya - y) - &(&lam * &(xa - x))
                };
                let v = match &s_sum {
                    Point::Infinity => k.one(),
                    Point::Affine { x: x3, .. } => xa - x3,
                };
                &l / &v
            }
        }
    };
    let mut f = k.one();
    let mut r = p.clone();
    let bits = usize::BITS - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        f = &(&f * &f) * &line(&r, &r);
        r = curve.add(&r, &r);
        if (n >> i) & 1 == 1 {
            f = &f * &line(&r, p);
            r = curve.add(&r, p);
        }
    }
    f
}

/// `[f_Q(P + R) / f_Q(R)] / [f_P(Q - R) / f_P(-R)]` with an auxiliary point
/// `R` over an extension. With this argument order the value is the pairing
/// characterised by `g_Q(X + P) = e(P, Q) g_Q(X)` where `g_Q^n = f_Q o [n]`;
/// Miller's usual `f_P(D_Q) / f_Q(D_P)` is its inverse.
pub fn miller_pairing(curve: &Curve, n: usize, p: &Point, q: &Point) -> FieldElement {
    let k = curve.field();
    if p.is_infinity() || q.is_infinity() {
        return k.one();
    }
    let r = point_with_x(curve, 2);
    let l = r.tower().unwrap().clone();
    let (p, q) = (p.embed(&l), q.embed(&l));
    let c = Curve::new(&l, curve.a().clone(), curve.b().clone()).unwrap();
    let num = &miller_value(&c, n, &q, &c.add(&p, &r)) / &miller_value(&c, n, &q, &r);
    let den = &miller_value(&c, n, &p, &c.sub(&q, &r)) / &miller_value(&c, n, &p, &c.neg(&r));
    (&num / &den).restrict(k).expect("pairing value lies in the base field")
}
