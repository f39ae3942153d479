//! Functions with divisor `n(T) - n(O)` built from line functions.

use crate::error::{Error, Result};
use crate::field::{FieldElement, Poly};

use super::{Curve, FunctionFieldElement, Point};

/// The line through `p` and `q` (tangent if equal); 1 if either is O.
fn line(curve: &Curve, p: &Point, q: &Point) -> FunctionFieldElement {
    let k = curve.field();
    match (p, q) {
        (Point::Infinity, _) | (_, Point::Infinity) => FunctionFieldElement::one(curve),
        (Point::Affine { x: x1, y: y1 }, _) => match curve.slope(p, q) {
            Ok(l) => {
                // y - l x - (y1 - l x1)
                let c = y1 - &(&l * x1);
                FunctionFieldElement::new(curve, Poly::new(k.clone(), vec![-&c, -&l]), Poly::one(k), Poly::one(k))
            }
            Err(_) => vertical(curve, p),
        },
    }
}

/// `x - x(p)`; 1 for O.
fn vertical(curve: &Curve, p: &Point) -> FunctionFieldElement {
    match p {
        Point::Infinity => FunctionFieldElement::one(curve),
        Point::Affine { x, .. } => FunctionFieldElement::from_poly(curve, Poly::linear_root(x)),
    }
}

/// `F_T` with divisor `n(T) - n(O)` and leading coefficient 1 at O in
/// `t = x/y`. `T` must be rational over the curve's field with `nT = O`.
pub fn miller_f(curve: &Curve, n: usize, t: &Point) -> FunctionFieldElement {
    if t.is_infinity() {
        return FunctionFieldElement::one(curve);
    }
    let t = t.embed(curve.field());
    let mut f = FunctionFieldElement::one(curve);
    let mut r = t.clone();
    let bits = usize::BITS - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        let r2 = curve.add(&r, &r);
        f = f.mul(&f).mul(&line(curve, &r, &r)).div(&vertical(curve, &r2)).unwrap();
        r = r2;
        if (n >> i) & 1 == 1 {
            let rt = curve.add(&r, &t);
            f = f.mul(&line(curve, &r, &t)).div(&vertical(curve, &rt)).unwrap();
            r = rt;
        }
    }
    assert!(r.is_infinity(), "point is not n-torsion");
    let lead = f.laurent_at_o(1).leading().cloned().expect("nonzero function");
    f.scale(&lead.inv().unwrap())
}

/// `F_{T1+T2}(P) / (F_{T1}(P) F_{T2}(P - T1))`.
pub fn epsilon_value(
    curve: &Curve,
    f_t1: &FunctionFieldElement,
    f_t2: &FunctionFieldElement,
    f_sum: &FunctionFieldElement,
    t1: &Point,
    p: &Point,
) -> Result<FieldElement> {
    let a = f_sum.eval(p)?;
    let b = f_t1.eval(p)?;
    let c = f_t2.eval(&curve.sub(p, t1))?;
    let d = &b * &c;
    if a.is_zero() || d.is_zero() {
        return Err(Error::PoleAtP);
    }
    Ok(&a / &d)
}
