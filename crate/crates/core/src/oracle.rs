//! Independent second routes used by the verification suites.

use crate::error::{Error, Result};
use crate::hecke::{Algebra, HeckeElem};
use crate::orientation::FormalMultiset;
use crate::presets::{e_idempotent, torus_generator, x1};
use crate::rings::Poly;
use crate::weyl::{WElem, Weyl};

pub use crate::weyl::bfs_lengths;

/// Walls crossed by the concatenated gallery `1 → w → ww'`, with multiplicity.
pub fn concatenated_gallery(weyl: &Weyl, w: &WElem, w2: &WElem) -> Result<FormalMultiset> {
    let r1 = weyl.reduced_word(w)?;
    let r2 = weyl.reduced_word(w2)?;
    let mut m = FormalMultiset::default();
    let mut prefix = weyl.identity();
    for &s in &r1.word {
        m.add(weyl.hyperplane_action(&prefix, weyl.gen_wall(s)), 1);
        prefix = weyl.mul(&prefix, weyl.gen(s));
    }
    prefix = weyl.mul(&prefix, &r1.omega);
    for &s in &r2.word {
        m.add(weyl.hyperplane_action(&prefix, weyl.gen_wall(s)), 1);
        prefix = weyl.mul(&prefix, weyl.gen(s));
    }
    Ok(m)
}

/// `X(w,w')` as the walls crossed twice by the concatenated gallery.
pub fn x_by_gallery(weyl: &Weyl, w: &WElem, w2: &WElem) -> Result<FormalMultiset> {
    let all = concatenated_gallery(weyl, w, w2)?;
    let mut out = FormalMultiset::default();
    for (h, c) in &all.counts {
        if *c >= 2 {
            out.add(*h, c / 2);
        }
    }
    Ok(out)
}

/// `L(w)` as the walls of a reduced gallery.
pub fn l_by_gallery(weyl: &Weyl, w: &WElem) -> Result<FormalMultiset> {
    let r = weyl.reduced_word(w)?;
    Ok(FormalMultiset::from_walls(&weyl.gallery_walls(&r.word)))
}

/// Product by peeling generators off the right factor.
pub fn mul_right(alg: &Algebra, x: &HeckeElem, y: &HeckeElem) -> HeckeElem {
    alg.mul_right_peel(x, y)
}

/// Outcome of one defining relation.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub id: String,
    pub ok: bool,
}

/// The defining relations of `Y_{d,n}^aff` on the images
/// `g_i ↦ T_{s_i}`, `t_j ↦ T_{t_j}`, `X₁ ↦ T_{τ^{-e₁}}⁻¹`, and the image of `T_u`.
pub fn yokonuma_relations(alg: &Algebra) -> Result<Vec<RelationCheck>> {
    let weyl = alg.weyl();
    let n = weyl.rank();
    let torus = &alg.group.torus;
    if torus.dim() != n || !weyl.is_gln() {
        return Err(Error::Usage(format!("`{}` is not a Yokonuma context", alg.label)));
    }
    let d = torus.moduli[0];
    let g: Vec<HeckeElem> = (0..n).map(|i| if i == 0 { alg.zero() } else { alg.gen(i) }).collect();
    let t: Vec<HeckeElem> = (1..=n).map(|j| torus_generator(alg, j)).collect::<Result<_>>()?;
    let x = x1(alg)?;
    let mut e1 = vec![0; n];
    e1[0] = -1;
    let x_inv = alg.basis_w(weyl.translation(&e1));
    let m = |a: &HeckeElem, b: &HeckeElem| alg.mul(a, b);
    let mut out = Vec::new();
    let mut push = |id: String, ok: bool| out.push(RelationCheck { id, ok });
    for i in 1..n {
        for j in i + 2..n {
            push(format!("(1) g{i} g{j}"), m(&g[i], &g[j]) == m(&g[j], &g[i]));
        }
        if i + 1 < n {
            let (a, b) = (&g[i], &g[i + 1]);
            push(format!("(2) g{i} g{}", i + 1), m(&m(a, b), a) == m(&m(b, a), b));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            push(format!("(3) t{} t{}", i + 1, j + 1), m(&t[i], &t[j]) == m(&t[j], &t[i]));
        }
    }
    for i in 1..n {
        for j in 1..=n {
            let sj = if j == i { i + 1 } else if j == i + 1 { i } else { j };
            push(format!("(4) g{i} t{j}"), m(&g[i], &t[j - 1]) == m(&t[sj - 1], &g[i]));
        }
    }
    for j in 0..n {
        let p = (0..d).fold(alg.one(), |acc, _| m(&acc, &t[j]));
        push(format!("(5) t{}^{d}", j + 1), p == alg.one());
    }
    push("(6) X1 X1^-1".into(), m(&x, &x_inv) == alg.one() && m(&x_inv, &x) == alg.one());
    let g1 = &g[1];
    push("(7) X1 g1 X1 g1".into(), m(&m(&m(&x, g1), &x), g1) == m(&m(&m(g1, &x), g1), &x));
    for i in 2..n {
        push(format!("(8) X1 g{i}"), m(&x, &g[i]) == m(&g[i], &x));
    }
    for j in 0..n {
        push(format!("(9) X1 t{}", j + 1), m(&x, &t[j]) == m(&t[j], &x));
    }
    let u2 = Poly::parse(&alg.vars, "u^2")?;
    let v = Poly::parse(&alg.vars, "v")?;
    for i in 1..n {
        let e = e_idempotent(alg, i)?;
        let rhs = alg.scalar(u2.clone()).add(&m(&e, &g[i]).scale(&v));
        push(format!("(10) g{i}^2"), m(&g[i], &g[i]) == rhs);
    }
    let psi_u = (1..n).rev().fold(alg.one(), |acc, i| m(&acc, &g[i]));
    push("T_u = g_{n-1}..g_1 X1".into(), m(&psi_u, &x) == alg.basis_w(weyl.u()?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::{big_l, big_x};
    use crate::presets::{affine_hecke_gln, yokonuma_aff, GlnMode};

    #[test]
    fn gallery_routes_match() {
        let w = Weyl::gln(3).unwrap();
        let ball = w.ball(3, &w.small_omegas(1).unwrap());
        for a in ball.iter().step_by(7) {
            assert_eq!(l_by_gallery(&w, a).unwrap(), big_l(&w, a));
            for b in ball.iter().step_by(11) {
                assert_eq!(x_by_gallery(&w, a, b).unwrap(), big_x(&w, a, b));
            }
        }
    }

    #[test]
    fn yokonuma_relations_hold() {
        for (d, n) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
            let alg = yokonuma_aff(d, n).unwrap();
            for r in yokonuma_relations(&alg).unwrap() {
                assert!(r.ok, "Y({d},{n}) {}", r.id);
            }
        }
        assert!(yokonuma_relations(&affine_hecke_gln(2, GlnMode::Laurent).unwrap()).is_err());
    }

    #[test]
    fn right_peel_agrees() {
        let alg = yokonuma_aff(2, 2).unwrap();
        let w = alg.weyl();
        let ball = w.ball(2, &w.small_omegas(1).unwrap());
        let t = alg.group.torus.normalize(&[1, 0]).unwrap();
        for a in ball.iter().step_by(3) {
            for b in ball.iter().step_by(5) {
                let x = alg.basis(alg.group.make(&t, a.clone()).unwrap());
                let y = alg.basis_w(b.clone());
                assert_eq!(alg.mul(&x, &y), mul_right(&alg, &x, &y));
            }
        }
    }
}
