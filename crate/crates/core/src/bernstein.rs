//! Bernstein maps `θ̂_o`, `θ_o`, the normalized `θ̃_o`, the elements `Ξ_o(H)`
//! and the Bernstein relation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hecke::{rt_act, Algebra, HeckeElem};
use crate::orientation::{adjacent_on, big_l, big_x, Orientation};
use crate::propcox::ProPElem;
use crate::rings::Poly;
use crate::weyl::{HyperplaneId, WElem};

/// `θ̂_o(g) · h`, reading `g = n_{s_1} ⋯ n_{s_r} ω̃` along `word`.
pub fn theta_hat_apply_word(alg: &Algebra, o: &Orientation, word: &[usize], omega: &ProPElem, h: &HeckeElem) -> HeckeElem {
    let weyl = alg.weyl();
    let mut signs = Vec::with_capacity(word.len());
    let mut prefix = weyl.identity();
    for &s in word {
        signs.push(o.eval(weyl, &prefix, s));
        prefix = weyl.mul(&prefix, weyl.gen(s));
    }
    let mut cur = alg.left_length_zero(omega, h);
    for (&s, &e) in word.iter().zip(&signs).rev() {
        let next = alg.left_gen(s, &cur);
        cur = if e > 0 { next } else { next.sub(&alg.rt_left(&alg.params.b[s], &cur)) };
    }
    cur
}

/// `θ̂_o(g)` along the given reduced word of `π(g)`.
pub fn theta_hat_word(alg: &Algebra, o: &Orientation, word: &[usize], g: &ProPElem) -> Result<HeckeElem> {
    let weyl = alg.weyl();
    if word.len() != weyl.length(&g.w) {
        return Err(Error::Usage(format!("word {word:?} is not reduced for the given element")));
    }
    let p = alg.group.word_lift(word);
    let omega = alg.group.mul(&alg.group.inv(&p), g);
    if weyl.length(&omega.w) != 0 {
        return Err(Error::Usage(format!("word {word:?} is not a reduced word of the element")));
    }
    Ok(theta_hat_apply_word(alg, o, word, &omega, &alg.one()))
}

pub fn theta_hat_apply(alg: &Algebra, o: &Orientation, g: &ProPElem, h: &HeckeElem) -> Result<HeckeElem> {
    let (word, omega) = alg.decompose(g)?;
    Ok(theta_hat_apply_word(alg, o, &word, &omega, h))
}

pub fn theta_hat(alg: &Algebra, o: &Orientation, g: &ProPElem) -> Result<HeckeElem> {
    theta_hat_apply(alg, o, g, &alg.one())
}

/// `γ̄_o(π(g))`, the product of `a_H` over negatively crossed walls.
pub fn gamma_bar(alg: &Algebra, o: &Orientation, w: &WElem) -> Result<Poly> {
    o.gamma(alg.weyl(), w).bar(alg.weyl(), &alg.classes, &alg.a_by_class())
}

/// `X̄(g, g')`.
pub fn x_bar(alg: &Algebra, g: &WElem, g2: &WElem) -> Result<Poly> {
    big_x(alg.weyl(), g, g2).bar(alg.weyl(), &alg.classes, &alg.a_by_class())
}

/// `θ_o(g) = γ̄_o(π(g))⁻¹ θ̂_o(g)`; needs every `a_s` to be a unit.
pub fn theta(alg: &Algebra, o: &Orientation, g: &ProPElem) -> Result<HeckeElem> {
    for s in 0..alg.weyl().num_gens() {
        alg.a_inv(s)?;
    }
    let inv = gamma_bar(alg, o, &g.w)?
        .inv_monomial()
        .map_err(|_| Error::NonInvertible("γ̄ is not invertible".into()))?;
    Ok(theta_hat(alg, o, g)?.scale(&inv))
}

/// `√L̄(w)` for the algebra's fixed square roots.
pub fn sqrt_l_bar(alg: &Algebra, w: &WElem) -> Result<Poly> {
    let roots = alg.sqrt_a_by_class().ok_or_else(|| {
        Error::Usage(format!("`{}` has no chosen square roots of the parameters a", alg.label))
    })?;
    big_l(alg.weyl(), w).bar(alg.weyl(), &alg.classes, &roots)
}

/// `θ̃_o(g) = √L̄(π(g))⁻¹ θ̂_o(g)`.
pub fn theta_tilde(alg: &Algebra, o: &Orientation, g: &ProPElem) -> Result<HeckeElem> {
    let inv = sqrt_l_bar(alg, &g.w)?
        .inv_monomial()
        .map_err(|_| Error::NonInvertible("√L̄ is not invertible".into()))?;
    Ok(theta_hat(alg, o, g)?.scale(&inv))
}

/// `Ξ_o(H) = √a_s⁻¹ w(b_s) θ̃_o(w n_s⁻¹ w⁻¹)` for a presentation `π(w n_s w⁻¹) = s_H`.
pub fn xi_with(alg: &Algebra, o: &Orientation, h: HyperplaneId, w: &ProPElem, s: usize) -> Result<HeckeElem> {
    let weyl = alg.weyl();
    if s >= weyl.num_gens() {
        return Err(Error::Usage(format!("no generator {s}")));
    }
    if weyl.conj(&w.w, weyl.gen(s)) != weyl.reflection(h) {
        return Err(Error::Usage(format!("presentation ({:?}, {s}) does not match hyperplane {h:?}", w.w)));
    }
    let roots = alg
        .sqrt_a
        .as_ref()
        .ok_or_else(|| Error::Usage(format!("`{}` has no chosen square roots of the parameters a", alg.label)))?;
    let sqrt_inv = roots[s].inv_monomial().map_err(|_| Error::NonInvertible("√a_s".into()))?;
    let g = alg.group.mul(&alg.group.mul(w, &alg.group.inv(&alg.group.lift(s))), &alg.group.inv(w));
    let wb = rt_act(&alg.group.torus, w.w.w, &alg.params.b[s]);
    let th = theta_tilde(alg, o, &g)?;
    Ok(alg.rt_left(&wb, &th).scale(&sqrt_inv))
}

/// `Ξ_o(H)` through the canonical presentation of `s_H`.
pub fn xi(alg: &Algebra, o: &Orientation, h: HyperplaneId) -> Result<HeckeElem> {
    let (w, s) = alg.weyl().presentation(h)?;
    xi_with(alg, o, h, &alg.group.from_weyl(w), s)
}

/// Memoized `Ξ_o(H)` for repeated Bernstein checks.
pub struct BernsteinCache<'a> {
    alg: &'a Algebra,
    xi: HashMap<(Orientation, HyperplaneId), HeckeElem>,
}

impl<'a> BernsteinCache<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        BernsteinCache { alg, xi: HashMap::new() }
    }

    pub fn xi(&mut self, o: &Orientation, h: HyperplaneId) -> Result<HeckeElem> {
        if let Some(v) = self.xi.get(&(o.clone(), h)) {
            return Ok(v.clone());
        }
        let v = xi(self.alg, o, h)?;
        self.xi.insert((o.clone(), h), v.clone());
        Ok(v)
    }

    /// Both sides of the Bernstein relation for `o`, `o'` at `g`.
    pub fn bernstein_sides(&mut self, o: &Orientation, o2: &Orientation, g: &ProPElem) -> Result<(HeckeElem, HeckeElem)> {
        let alg = self.alg;
        let weyl = alg.weyl();
        let one = weyl.identity();
        let lhs_o = theta_tilde(alg, o, g)?;
        let lhs = lhs_o.sub(&theta_tilde(alg, o2, g)?);
        let mut sum = alg.zero();
        for h in weyl.separating(&one, &g.w) {
            let e = o.eval_h(weyl, &one, h);
            if e == o2.eval_h(weyl, &one, h) {
                continue;
            }
            let x = self.xi(o2, h)?;
            sum.add_assign(&if e > 0 { x } else { x.neg() });
        }
        Ok((lhs, alg.mul(&sum, &lhs_o)))
    }

    /// Certifies adjacency on `probe`, then compares both sides exactly.
    pub fn bernstein_check(&mut self, o: &Orientation, o2: &Orientation, g: &ProPElem, probe: &[WElem]) -> Result<bool> {
        if !adjacent_on(self.alg.weyl(), o, o2, &g.w, probe) {
            return Err(Error::Validation("orientations are not adjacent on the separating walls".into()));
        }
        let (l, r) = self.bernstein_sides(o, o2, g)?;
        Ok(l == r)
    }
}

pub fn bernstein_check(alg: &Algebra, o: &Orientation, o2: &Orientation, g: &ProPElem, probe: &[WElem]) -> Result<bool> {
    BernsteinCache::new(alg).bernstein_check(o, o2, g, probe)
}

/// Coordinates of `h` in the basis `{θ̂_o(g)}`, by peeling off leading terms
/// of maximal length.
pub fn theta_hat_coordinates(alg: &Algebra, o: &Orientation, h: &HeckeElem) -> Result<HeckeElem> {
    let weyl = alg.weyl();
    let mut rest = h.clone();
    let mut coords = alg.zero();
    while let Some(g) = rest.support().max_by_key(|g| (weyl.length(&g.w), (*g).clone())).cloned() {
        let c = rest.coeff(&g).cloned().expect("support element");
        let th = theta_hat(alg, o, &g)?;
        rest = rest.sub(&th.scale(&c));
        if rest.coeff(&g).is_some() {
            return Err(Error::Internal("θ̂ has a non-unit leading coefficient".into()));
        }
        coords.add_term(g, &c);
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{affine_hecke_gln, yokonuma_aff, GlnMode};

    #[test]
    fn rank_one_cases() {
        let alg = affine_hecke_gln(2, GlnMode::Universal).unwrap();
        let o = Orientation::dominant();
        let w = alg.weyl();
        for s in 0..w.num_gens() {
            let g = alg.group.lift(s);
            let expect = if o.eval(w, &w.identity(), s) > 0 {
                alg.gen(s)
            } else {
                alg.gen(s).sub(&alg.from_rt(&alg.params.b[s]))
            };
            assert_eq!(theta_hat(&alg, &o, &g).unwrap(), expect);
        }
        let y = yokonuma_aff(2, 2).unwrap();
        let t = y.group.from_torus(y.group.torus.normalize(&[1, 0]).unwrap());
        assert_eq!(theta_hat(&y, &o, &t).unwrap(), y.basis(t));
    }

    #[test]
    fn theta_inverts_generators() {
        let alg = affine_hecke_gln(3, GlnMode::Laurent).unwrap();
        let w = alg.weyl();
        for o in [Orientation::dominant(), Orientation::spherical(w.w0.longest())] {
            for s in 0..w.num_gens() {
                let g = alg.group.lift(s);
                let th = theta(&alg, &o, &g).unwrap();
                if o.eval(w, &w.identity(), s) > 0 {
                    assert_eq!(th, alg.gen(s));
                } else {
                    let ginv = alg.group.inv(&g);
                    assert_eq!(alg.mul(&th, &alg.basis(ginv)), alg.one());
                }
            }
        }
        let univ = affine_hecke_gln(2, GlnMode::Universal).unwrap();
        assert!(theta(&univ, &Orientation::dominant(), &univ.group.lift(0)).is_err());
    }

    #[test]
    fn reduced_word_independence_gl2() {
        let alg = affine_hecke_gln(2, GlnMode::A1).unwrap();
        let w = alg.weyl();
        let o = Orientation::dominant();
        let g = alg.group.from_weyl(w.translation(&[-1, 1]));
        let words = w.all_reduced_words(&g.w);
        assert!(!words.is_empty());
        let first = theta_hat_word(&alg, &o, &words[0], &g).unwrap();
        for word in &words {
            assert_eq!(theta_hat_word(&alg, &o, word, &g).unwrap(), first);
        }
    }

    #[test]
    fn xi_presentations_agree() {
        let alg = affine_hecke_gln(3, GlnMode::A1).unwrap();
        let w = alg.weyl();
        let o = Orientation::dominant();
        for s in 0..w.num_gens() {
            let h = w.gen_wall(s);
            let a = xi_with(&alg, &o, h, &alg.group.identity(), s).unwrap();
            let b = xi_with(&alg, &o, h, &alg.group.lift(s), s).unwrap();
            assert_eq!(a, b);
            let direct = alg.from_rt(&alg.params.b[s]);
            let th = theta_hat(&alg, &o, &alg.group.inv(&alg.group.lift(s))).unwrap();
            assert_eq!(a, alg.mul(&direct, &th));
            let other = (s + 1) % w.num_gens();
            assert!(xi_with(&alg, &o, h, &alg.group.identity(), other).is_err());
        }
    }

    #[test]
    fn bernstein_gl2_example() {
        let alg = affine_hecke_gln(2, GlnMode::A1).unwrap();
        let w = alg.weyl();
        let o = Orientation::dominant();
        let s1 = w.finite(w.w0.simple_refl[0]);
        let o2 = o.act(w, &s1);
        let probe = w.affine_ball(3);
        let g = alg.group.from_weyl(w.translation(&[-1, 1]));
        assert!(bernstein_check(&alg, &o, &o2, &g, &probe).unwrap());
        assert!(bernstein_check(&alg, &o, &o, &g, &probe).unwrap());
    }

    #[test]
    fn coordinates_round_trip() {
        let alg = affine_hecke_gln(2, GlnMode::Universal).unwrap();
        let w = alg.weyl();
        let o = Orientation::dominant();
        let g = alg.group.from_weyl(w.translation(&[1, -1]));
        let th = theta_hat(&alg, &o, &g).unwrap();
        let c = theta_hat_coordinates(&alg, &o, &th).unwrap();
        assert_eq!(c, alg.basis(g));
    }
}
