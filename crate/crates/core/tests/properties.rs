//! Property tests for the structural invariants.

use std::sync::OnceLock;

use proptest::prelude::*;

use prohecke::bernstein::{theta_hat, x_bar};
use prohecke::hecke::AlgebraRef;
use prohecke::json::{hecke_from_value, hecke_to_value, parse_orientation, propp_from_value, propp_to_value};
use prohecke::orientation::{big_l, Orientation};
use prohecke::presets::{affine_hecke_gln, yokonuma_aff, GlnMode};
use prohecke::propcox::ProPElem;
use prohecke::rings::Poly;
use prohecke::rootdata::{alternate_point, RootDatum};
use prohecke::verify::{run_suite, SuiteConfig};
use prohecke::weyl::{WElem, Weyl};

fn gl3() -> &'static AlgebraRef {
    static A: OnceLock<AlgebraRef> = OnceLock::new();
    A.get_or_init(|| affine_hecke_gln(3, GlnMode::Universal).unwrap())
}

fn y22() -> &'static AlgebraRef {
    static A: OnceLock<AlgebraRef> = OnceLock::new();
    A.get_or_init(|| yokonuma_aff(2, 2).unwrap())
}

fn ball(alg: &AlgebraRef, len: usize) -> Vec<WElem> {
    let w = alg.weyl();
    w.ball(len, &w.small_omegas(1).unwrap())
}

/// Elements of `W⁽¹⁾` with `ℓ ≤ len`, indexed by `(ball index, torus index)`.
fn elem(alg: &AlgebraRef, len: usize, i: usize, j: usize) -> ProPElem {
    let b = ball(alg, len);
    let ts = alg.group.torus.elements();
    ProPElem { w: b[i % b.len()].clone(), t: ts[j % ts.len()].clone() }
}

fn poly(coeffs: &[(i64, u8, u8)]) -> Poly {
    let vars = gl3().vars.clone();
    let mut p = Poly::zero(&vars);
    for &(c, ea, eb) in coeffs {
        let m = Poly::parse(&vars, &format!("{c}*a^{ea}*b^{eb}")).unwrap();
        p = &p + &m;
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, 0u8..3, 0u8..3), 0..4).prop_map(|v| poly(&v))
}

fn orientation(alg: &AlgebraRef, k: usize) -> Orientation {
    let w = alg.weyl();
    let n = w.w0.size();
    match k % 4 {
        0 => Orientation::spherical((k / 4 % n) as u32),
        1 => Orientation::spherical((k / 4 % n) as u32).opposite(),
        2 => {
            let b = w.affine_ball(2);
            Orientation::chamber(b[k / 4 % b.len()].clone())
        }
        _ => {
            let b = w.affine_ball(2);
            Orientation::chamber(b[k / 4 % b.len()].clone()).opposite()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn poly_text_round_trip(p in poly_strategy()) {
        prop_assert_eq!(Poly::parse(&gl3().vars, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn length_inverse_and_generators(i in 0usize..10_000, s in 0usize..3) {
        let alg = gl3();
        let w = alg.weyl();
        let b = ball(alg, 5);
        let g = &b[i % b.len()];
        prop_assert_eq!(w.length(g), w.length(&w.inv(g)));
        let gs = w.mul(g, w.gen(s));
        prop_assert_eq!(w.length(&gs).abs_diff(w.length(g)), 1);
        prop_assert_eq!(w.is_right_descent(g, s), w.length(&gs) < w.length(g));
        prop_assert_eq!(big_l(w, g).len(), w.length(g));
    }

    #[test]
    fn group_associative(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let alg = y22();
        let g = &alg.group;
        let (a, b, c) = (elem(alg, 4, i, j), elem(alg, 4, j, k), elem(alg, 4, k, i));
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
    }

    #[test]
    fn hecke_associative(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let alg = y22();
        let (a, b, c) = (alg.basis(elem(alg, 3, i, j)), alg.basis(elem(alg, 3, j, k)), alg.basis(elem(alg, 3, k, i)));
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }

    #[test]
    fn json_round_trip(i in 0usize..10_000, j in 0usize..10_000, p in poly_strategy()) {
        let alg = y22();
        let g = elem(alg, 4, i, j);
        prop_assert_eq!(propp_from_value(alg, &propp_to_value(alg, &g)).unwrap(), g.clone());
        let c = Poly::parse(&alg.vars, "u*v - 2").unwrap();
        let h = alg.basis(g).scale(&c).add(&alg.gen(i % 2));
        prop_assert_eq!(hecke_from_value(alg, &hecke_to_value(alg, &h)).unwrap(), h);
        let alg3 = gl3();
        let h3 = alg3.basis(elem(alg3, 3, j, i)).scale(&p);
        prop_assert_eq!(hecke_from_value(alg3, &hecke_to_value(alg3, &h3)).unwrap(), h3);
    }

    #[test]
    fn orientation_spec_round_trip(k in 0usize..1000) {
        let alg = gl3();
        let o = orientation(alg, k);
        prop_assert_eq!(parse_orientation(alg.weyl(), &o.describe(alg.weyl())).unwrap(), o);
    }

    #[test]
    fn orientation_action(k in 0usize..1000, i in 0usize..10_000, j in 0usize..10_000) {
        let alg = gl3();
        let w = alg.weyl();
        let b = ball(alg, 3);
        let (g, h) = (&b[i % b.len()], &b[j % b.len()]);
        let o = orientation(alg, k);
        prop_assert_eq!(o.act(w, g).act(w, h), o.act(w, &w.mul(g, h)));
        prop_assert_eq!(o.opposite().opposite(), o.clone());
        for s in 0..w.num_gens() {
            prop_assert_eq!(o.opposite().eval(w, g, s), -o.eval(w, g, s));
        }
    }

    #[test]
    fn spherical_translation_invariant(d in 0u32..6, x in prop::array::uniform3(-3i64..=3)) {
        let alg = gl3();
        let w = alg.weyl();
        let o = Orientation::spherical(d);
        prop_assert_eq!(o.act(w, &w.translation(&x)), o);
    }

    #[test]
    fn theta_hat_product_rule(k in 0usize..1000, i in 0usize..10_000, j in 0usize..10_000) {
        let alg = y22();
        let (a, b) = (elem(alg, 3, i, j), elem(alg, 3, j, i));
        let o = orientation(alg, k);
        let lhs = alg.mul(&theta_hat(alg, &o, &a).unwrap(), &theta_hat(alg, &o.act(alg.weyl(), &a.w), &b).unwrap());
        let rhs = theta_hat(alg, &o, &alg.group.mul(&a, &b)).unwrap().scale(&x_bar(alg, &a.w, &b.w).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn seeded_reports_are_deterministic(seed in any::<u64>()) {
        let alg = y22();
        let cfg = SuiteConfig { seed, assoc_samples: 10, pair_samples: 10, ..SuiteConfig::default() };
        let a = serde_json::to_string(&run_suite("product-rule", alg, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("product-rule", alg, &cfg).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

/// Lengths, reduced-word lengths, and walls do not depend on the base point of `C₀`.
#[test]
fn base_point_independence() {
    let d = RootDatum::gln(3).unwrap();
    let alt = alternate_point(&d).unwrap();
    let w1 = Weyl::gln(3).unwrap();
    let w2 = Weyl::with_point(d, alt).unwrap();
    for g in w1.ball(5, &w1.small_omegas(1).unwrap()) {
        assert_eq!(w1.length(&g), w2.length(&g));
        assert_eq!(big_l(&w1, &g), big_l(&w2, &g));
        for s in 0..w1.num_gens() {
            assert_eq!(w1.is_left_descent(s, &g), w2.is_left_descent(s, &g));
        }
    }
}
