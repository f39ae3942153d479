//! Seeded sampling of points over quadratic extensions.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{rat, roots_in_field, tower_extend, Poly};

use super::{Curve, Point};

/// A point with a random small rational `x`-coordinate, defined over the
/// curve's field or a quadratic extension of it. `x`-values in `exclude`
/// and points with `y = 0` are skipped.
pub fn sample_point(curve: &Curve, rng: &mut ChaCha8Rng, exclude: &[crate::field::Rational]) -> Point {
    let k = curve.field();
    loop {
        let num: i64 = rng.gen_range(-60..=60);
        let den: i64 = rng.gen_range(1..=4);
        let x0 = rat(num, den);
        if exclude.contains(&x0) {
            continue;
        }
        let x = k.from_rational(x0);
        let r = curve.rhs(&x);
        if r.is_zero() {
            continue;
        }
        let sq = Poly::new(k.clone(), vec![-&r, k.zero(), k.one()]);
        if let Some((y, _)) = roots_in_field(&sq).into_iter().next() {
            return Point::affine(x, y);
        }
        let l = tower_extend(k, "s", sq.coeffs()).expect("non-square gives an irreducible quadratic");
        return Point::affine(x.embed(&l), l.generator(l.depth()));
    }
}
