mod common;

use common::*;
use ndescent::curve::{miller_f, Curve, FunctionFieldElement, Point, TorsionTable};
use ndescent::field::{FieldTower, Poly};
use ndescent::Error;
use proptest::prelude::*;

#[test]
fn group_law_basics() {
    let c = reference_curve();
    let k = c.field();
    let p = Point::affine(k.from_int(12), k.from_int(36));
    assert!(c.contains(&p));
    assert_eq!(c.add(&p, &Point::Infinity), p);
    assert_eq!(c.add(&p, &c.neg(&p)), Point::Infinity);
    assert_eq!(c.mul(3, &p), Point::Infinity);
    assert_eq!(c.slope(&p, &p).unwrap(), k.from_int(6));
    assert_eq!(c.slope(&p, &c.neg(&p)), Err(Error::VerticalLine));
    assert!(!c.contains(&Point::affine(k.from_int(1), k.from_int(1))));
}

#[test]
fn singular_curve_rejected() {
    let q = FieldTower::rationals();
    assert_eq!(Curve::new(&q, q.from_int(-3), q.from_int(2)).unwrap_err(), Error::SingularCurve);
}

#[test]
fn division_polynomial_three() {
    // generic a, b: 3x^4 + 6ax^2 + 12bx - a^2
    let q = FieldTower::rationals();
    let c = Curve::new(&q, q.from_int(5), q.from_int(7)).unwrap();
    assert_eq!(c.division_polynomial(3).unwrap(), Poly::from_ints(&q, &[-25, 84, 30, 0, 3]));
    let r = reference_curve();
    let psi = r.division_polynomial(3).unwrap();
    assert_eq!(psi, Poly::from_ints(r.field(), &[0, -5184, 0, 0, 3]));
    assert!(psi.eval(&r.field().from_int(12)).is_zero());
    assert_eq!(r.division_polynomial(4), Err(Error::UnsupportedN(4)));
}

#[test]
fn division_polynomial_five_vanishes_on_five_torsion() {
    let q = FieldTower::rationals();
    let c = Curve::new(&q, q.from_int(0), q.from_int(1)).unwrap();
    let psi5 = c.division_polynomial(5).unwrap();
    assert_eq!(psi5.deg(), 12);
    let psi3 = c.division_polynomial(3).unwrap();
    assert!(psi5.gcd(&psi3).is_constant());
}

#[test]
fn torsion_over_q_is_not_split() {
    let q = FieldTower::rationals();
    let c = Curve::new(&q, q.zero(), q.from_int(-432)).unwrap();
    assert_eq!(TorsionTable::new(&c, 3).unwrap_err(), Error::TorsionNotRational { found: 3, expected: 9 });
}

#[test]
fn torsion_over_q_zeta3() {
    let c = reference_curve();
    let k = c.field().clone();
    let t = TorsionTable::new(&c, 3).unwrap();
    assert_eq!(t.len(), 9);
    let z = k.generator(1);
    let s = &(&z + &z) + &k.one();
    assert_eq!(&s * &s, k.from_int(-3));
    let mut want = vec![
        Point::Infinity,
        Point::affine(k.zero(), &s * &k.from_int(12)),
        Point::affine(k.zero(), &s * &k.from_int(-12)),
    ];
    for x in [k.from_int(12), &k.from_int(12) * &z, &k.from_int(12) * &(&z * &z)] {
        want.push(Point::affine(x.clone(), k.from_int(36)));
        want.push(Point::affine(x, k.from_int(-36)));
    }
    for p in &want {
        assert!(t.index_of(p).is_some(), "missing {p}");
    }
    let zeta = t.zeta();
    assert!(*zeta == z || *zeta == &z * &z);
    // closure and index arithmetic
    for a in 0..9 {
        for b in 0..9 {
            assert_eq!(c.add(t.point(a), t.point(b)), *t.point(t.add(a, b)));
        }
        assert_eq!(c.neg(t.point(a)), *t.point(t.neg(a)));
        assert_eq!(c.mul(3, t.point(a)), Point::Infinity);
    }
}

#[test]
fn weil_pairing_agrees_with_miller_oracle() {
    let c = reference_curve();
    let t = TorsionTable::new(&c, 3).unwrap();
    for s in 0..9 {
        assert!(t.weil_pairing(s, s).is_one());
        for u in 0..9 {
            let e = t.weil_pairing(s, u);
            assert!((&e * &t.weil_pairing(u, s)).is_one());
            assert_eq!(t.weil_pairing_by_epsilon(s, u).unwrap(), e, "epsilon ratio at {s},{u}");
            let oracle = miller_pairing(&c, 3, t.point(s), t.point(u));
            assert_eq!(oracle, e, "oracle at {s},{u}");
            for v in 0..9 {
                let lhs = t.weil_pairing(t.add(s, v), u);
                assert_eq!(lhs, &e * &t.weil_pairing(v, u));
            }
        }
    }
}

#[test]
fn laurent_expansions_at_o() {
    let c = reference_curve();
    let x = FunctionFieldElement::x(&c).laurent_at_o(4);
    let y = FunctionFieldElement::y(&c).laurent_at_o(4);
    assert_eq!(x.valuation(), Some(-2));
    assert!(x.leading().unwrap().is_one());
    assert_eq!(y.valuation(), Some(-3));
    assert!(y.leading().unwrap().is_one());
    let t = FunctionFieldElement::x(&c).div(&FunctionFieldElement::y(&c)).unwrap().laurent_at_o(6);
    assert_eq!(t.valuation(), Some(1));
    for e in 2..7 {
        assert!(t.coeff(e).unwrap().is_zero());
    }
    // with a != 0 the tail of x is visible: x = t^-2 - a t^2 + ...
    let q = FieldTower::rationals();
    let c2 = Curve::new(&q, q.from_int(2), q.from_int(3)).unwrap();
    let x2 = FunctionFieldElement::x(&c2).laurent_at_o(8);
    assert_eq!(x2.coeff(2).unwrap(), q.from_int(-2));
    assert_eq!(x2.coeff(4).unwrap(), q.from_int(-3));
}

#[test]
fn miller_functions_have_the_right_divisor() {
    let c = reference_curve();
    let t = TorsionTable::new(&c, 3).unwrap();
    assert_eq!(miller_f(&c, 3, &Point::Infinity), FunctionFieldElement::one(&c));
    for i in 1..9 {
        let f = miller_f(&c, 3, t.point(i));
        let s = f.laurent_at_o(2);
        assert_eq!(s.valuation(), Some(-3));
        assert!(s.leading().unwrap().is_one());
        assert_eq!(f.order_at(t.point(i)).unwrap(), 3);
        for j in 1..9 {
            if j != i {
                assert!(!f.eval(t.point(j)).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn miller_functions_for_five_torsion() {
    // for n = 3 the function is a tangent line; n = 5 exercises the full
    // double-and-add chain. Short model of 11a3 with a rational 5-torsion point.
    let q = FieldTower::rationals();
    let c = Curve::new(&q, q.from_int(-13392), q.from_int(-1080432)).unwrap();
    let p = Point::affine(q.from_int(168), q.from_int(1188));
    assert!(c.contains(&p));
    assert_eq!(c.order(&p, 5), Some(5));
    let f = miller_f(&c, 5, &p);
    assert_eq!(f.order_at(&p).unwrap(), 5);
    assert_eq!(f.order_at(&Point::Infinity).unwrap(), -5);
    assert!(f.laurent_at_o(1).leading().unwrap().is_one());
    for k in 2..5 {
        let v = f.eval(&c.mul(k, &p)).unwrap();
        assert!(!v.is_zero());
    }
}

#[test]
fn r_function_divisor_and_values() {
    let c = reference_curve();
    let t = TorsionTable::new(&c, 3).unwrap();
    let ps = samples(&c);
    for a in 0..9 {
        for b in 0..9 {
            let r = t.r_function(a, b);
            for p in &ps {
                assert_eq!(r.eval(p).unwrap(), t.r_eval(a, b, p).unwrap());
            }
            if a == 0 || b == 0 {
                assert!(t.r_eval(a, b, &ps[0]).unwrap().is_one());
                continue;
            }
            let s = t.add(a, b);
            if s == 0 {
                assert_eq!(r.order_at(&Point::Infinity).unwrap(), -2);
                continue;
            }
            assert_eq!(r.order_at(&Point::Infinity).unwrap(), -1);
            assert!(r.laurent_at_o(1).leading().unwrap().is_one());
            if a != b {
                assert!(t.r_eval(a, b, t.point(a)).unwrap().is_zero());
                assert!(t.r_eval(a, b, t.point(b)).unwrap().is_zero());
                assert_eq!(r.order_at(t.point(a)).unwrap(), 1);
            } else {
                assert_eq!(r.order_at(t.point(a)).unwrap(), 2);
            }
            assert_eq!(r.order_at(t.point(s)).unwrap(), -1);
        }
    }
}

#[test]
fn translation_of_functions_matches_point_addition() {
    let c = reference_curve();
    let t = TorsionTable::new(&c, 3).unwrap();
    let f = FunctionFieldElement::x(&c).mul(&FunctionFieldElement::y(&c)).add_scalar(&c.field().from_int(5));
    for s in [1usize, 4, 8] {
        let g = f.translate(t.point(s));
        for p in samples(&c) {
            let moved = c.add(&p, &t.point(s).embed(p.tower().unwrap()));
            assert_eq!(g.eval(&p).unwrap(), f.eval(&moved).unwrap());
        }
    }
}

#[test]
fn function_field_inverse() {
    let c = reference_curve();
    let k = c.field();
    let f = FunctionFieldElement::new(
        &c,
        Poly::from_ints(k, &[1, 2]),
        Poly::from_ints(k, &[3]),
        Poly::from_ints(k, &[-1, 0, 1]),
    );
    assert_eq!(f.mul(&f.inv().unwrap()), FunctionFieldElement::one(&c));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_law_is_associative(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        // y^2 = x^3 - 2 over Q has the rank-one generator (3, 5)
        let q = FieldTower::rationals();
        let c = Curve::new(&q, q.zero(), q.from_int(-2)).unwrap();
        let g = Point::affine(q.from_int(3), q.from_int(5));
        let pts: Vec<Point> = (1..7).map(|m| c.mul(m, &g)).collect();
        let (a, b, d) = (&pts[i], &pts[j], &pts[k]);
        prop_assert_eq!(c.add(&c.add(a, b), d), c.add(a, &c.add(b, d)));
        prop_assert!(c.contains(&c.add(a, b)));
    }
}
