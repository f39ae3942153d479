mod common;

use std::sync::OnceLock;

use common::*;
use ndescent::curve::{Point, TorsionTable};
use ndescent::descent::{tau_1, EmbeddingData, EpsilonTable, GBasis};
use ndescent::field::{projectively_equal, rat, ExactMatrix, FieldElement};

struct Setup {
    table: TorsionTable,
    g: GBasis,
    eps: EpsilonTable,
    emb: EmbeddingData,
    samples: Vec<Point>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let c = reference_curve();
        let table = TorsionTable::new(&c, 3).unwrap();
        let g = GBasis::compute(&table).unwrap();
        let eps = EpsilonTable::compute(&table).unwrap();
        let emb = EmbeddingData::compute(&table, &eps).unwrap();
        Setup { samples: samples(&c), table, g, eps, emb }
    })
}

#[test]
fn g_basis_normalisation() {
    let s = setup();
    let k = s.table.curve().field();
    assert!(s.g.get(0).eval(&s.samples[0]).unwrap().is_one());
    for t in 1..9 {
        let l = s.g.get(t).laurent_at_o(2);
        assert_eq!(l.valuation(), Some(-1));
        assert_eq!(*l.leading().unwrap(), k.from_rational(rat(1, 3)));
    }
}

#[test]
fn g_basis_poles() {
    let s = setup();
    for t in 1..9 {
        let g = s.g.get(t);
        assert_eq!(g.order_at(&Point::Infinity).unwrap(), -1);
        for q in 1..9 {
            assert_eq!(g.order_at(s.table.point(q)).unwrap(), -1, "G_{t} at T_{q}");
        }
    }
}

#[test]
fn translation_eigenproperty() {
    let s = setup();
    let c = s.table.curve();
    for p in &s.samples {
        let l = p.tower().unwrap();
        let gp = s.g.eval(p).unwrap();
        for sh in [1usize, 3, 5, 7] {
            let moved = c.add(p, &s.table.point(sh).embed(l));
            let gm = s.g.eval(&moved).unwrap();
            for t in 0..9 {
                assert_eq!(gm[t], &s.table.weil_pairing(sh, t) * &gp[t], "S={sh} T={t}");
            }
        }
    }
}

#[test]
fn r_of_three_p_is_coboundary_of_g() {
    let s = setup();
    let c = s.table.curve();
    for p in &s.samples {
        let gp = s.g.eval(p).unwrap();
        let p3 = c.mul(3, p);
        for a in 0..9 {
            for b in 0..9 {
                let lhs = s.table.r_eval(a, b, &p3).unwrap();
                let rhs = &(&gp[a] * &gp[b]) / &gp[s.table.add(a, b)];
                assert_eq!(lhs, rhs, "pair {a},{b}");
            }
        }
    }
}

#[test]
fn f_t_composed_with_three_is_g_cubed() {
    let s = setup();
    let c = s.table.curve();
    for p in &s.samples {
        let gp = s.g.eval(p).unwrap();
        let p3 = c.mul(3, p);
        for t in 0..9 {
            assert_eq!(s.eps.f(t).eval(&p3).unwrap(), gp[t].pow(3), "T={t}");
        }
    }
}

#[test]
fn epsilon_properties() {
    let s = setup();
    let t = &s.table;
    for a in 0..9 {
        assert!(s.eps.get(0, a).is_one());
        assert!(s.eps.get(a, 0).is_one());
        for b in 0..9 {
            let ratio = s.eps.get(a, b) / s.eps.get(b, a);
            assert_eq!(ratio, t.weil_pairing(a, b));
            for c in 0..9 {
                let lhs = s.eps.get(a, b) * s.eps.get(t.add(a, b), c);
                let rhs = s.eps.get(a, t.add(b, c)) * s.eps.get(b, c);
                assert_eq!(lhs, rhs);
            }
        }
    }
    // independence of the evaluation point
    for (a, b) in [(1, 2), (3, 4), (5, 8)] {
        for p in &s.samples {
            assert_eq!(s.eps.evaluate_at(t, a, b, p).unwrap(), *s.eps.get(a, b));
        }
    }
}

#[test]
fn osculating_hyperplane_at_o() {
    let s = setup();
    let k = s.table.curve().field();
    assert_eq!(s.emb.labels(), &["1", "x", "y"]);
    assert!(projectively_equal(s.emb.dual_at_o(), &[k.one(), k.zero(), k.zero()]));
}

#[test]
fn translation_matrices() {
    let s = setup();
    let t = &s.table;
    let k = t.curve().field();
    assert_eq!(*s.emb.m(0), ExactMatrix::identity(k, 3));
    for a in 1..9 {
        assert!(s.emb.m(a).trace().is_zero());
    }
    for a in 0..9 {
        for b in 0..9 {
            let prod = s.emb.m(a).mul(s.emb.m(b)).unwrap();
            assert_eq!(prod, s.emb.m(t.add(a, b)).scale(s.eps.get(a, b)), "pair {a},{b}");
        }
    }
    let rows: Vec<Vec<FieldElement>> = s.emb.matrices().iter().map(|m| m.entries().to_vec()).collect();
    assert_eq!(ExactMatrix::from_rows(k, rows).unwrap().rank(), 9);
}

#[test]
fn translation_matrices_move_points_and_satisfy_scaling() {
    let s = setup();
    let c = s.table.curve();
    let dual = s.emb.dual_at_o();
    for p in &s.samples {
        let l = p.tower().unwrap();
        let fp = s.emb.f_eval(p);
        for t in 0..9 {
            let moved = c.add(p, &s.table.point(t).embed(l));
            let image = s.emb.m(t).mul_vec(&fp).unwrap();
            assert!(projectively_equal(&image, &s.emb.f_eval(&moved)));
            let inv = s.emb.m(t).inverse().unwrap();
            let dot =
                |a: &[FieldElement], b: &[FieldElement]| a.iter().zip(b).fold(l.zero(), |acc, (x, y)| &acc + &(x * y));
            let lhs = s.eps.f(t).eval(p).unwrap();
            let rhs = &dot(dual, &inv.mul_vec(&fp).unwrap()) / &dot(dual, &fp);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tau_one_is_multiplicative() {
    let s = setup();
    let t = &s.table;
    let k = t.curve().field();
    let delta = |i: usize| -> Vec<FieldElement> { (0..9).map(|j| if i == j { k.one() } else { k.zero() }).collect() };
    assert_eq!(tau_1(&s.emb, &delta(0)).unwrap(), ExactMatrix::identity(k, 3));
    for a in 0..9 {
        assert_eq!(tau_1(&s.emb, &delta(a)).unwrap(), *s.emb.m(a));
        for b in 0..9 {
            // delta_a * delta_b = eps(a, b) delta_{a+b}
            let mut prod = vec![k.zero(); 9];
            prod[t.add(a, b)] = s.eps.get(a, b).clone();
            let lhs = tau_1(&s.emb, &prod).unwrap();
            assert_eq!(lhs, s.emb.m(a).mul(s.emb.m(b)).unwrap());
        }
    }
}
