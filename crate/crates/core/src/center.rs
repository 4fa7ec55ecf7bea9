//! Conjugation orbits in `X⁽¹⁾`, the central elements `z_γ`, and left
//! module generators over the commutative subalgebra `A_o`.

use std::collections::{BTreeMap, BTreeSet};

use crate::bernstein::{theta_hat, theta_hat_coordinates};
use crate::error::{Error, Result};
use crate::hecke::{Algebra, HeckeElem};
use crate::orientation::Orientation;
use crate::propcox::ProPElem;
use crate::weyl::{preceq, WElem};

pub const DEFAULT_ORBIT_BOUND: usize = 10_000;

/// Generators of `W⁽¹⁾` used for conjugation: the `n_s`, the lifts of the
/// `Ω` generators and their inverses, and generators of `T`.
pub fn conjugators(alg: &Algebra) -> Result<Vec<(String, ProPElem)>> {
    let g = &alg.group;
    let mut out = Vec::new();
    for s in 0..alg.weyl().num_gens() {
        out.push((format!("n_{s}"), g.lift(s)));
    }
    for (i, u) in alg.weyl().omega_generators()?.into_iter().enumerate() {
        let lift = g.from_weyl(u);
        out.push((format!("u_{i}^-1"), g.inv(&lift)));
        out.push((format!("u_{i}"), lift));
    }
    for (i, t) in g.torus.generators().into_iter().enumerate() {
        out.push((format!("t_{i}"), g.from_torus(t)));
    }
    Ok(out)
}

/// The `W⁽¹⁾`-conjugation orbit of `x`, for `π(x) ∈ X`.
pub fn orbit(alg: &Algebra, x: &ProPElem, bound: usize) -> Result<Vec<ProPElem>> {
    if !alg.weyl().is_translation(&x.w) {
        return Err(Error::Usage("orbit needs an element of X(1)".into()));
    }
    let g = &alg.group;
    let gens: Vec<ProPElem> = conjugators(alg)?.into_iter().map(|(_, e)| e).collect();
    let mut seen: BTreeSet<ProPElem> = BTreeSet::new();
    seen.insert(x.clone());
    let mut queue = vec![x.clone()];
    while let Some(y) = queue.pop() {
        for c in &gens {
            let z = g.mul(&g.mul(c, &y), &g.inv(c));
            if seen.insert(z.clone()) {
                if seen.len() > bound {
                    return Err(Error::Bound("orbit not finite within bound".into()));
                }
                queue.push(z);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `z_γ = Σ_{x ∈ γ} θ̂_o(x)`.
pub fn z_gamma(alg: &Algebra, o: &Orientation, orbit: &[ProPElem]) -> Result<HeckeElem> {
    if !o.is_spherical() {
        return Err(Error::Usage("z_gamma needs a spherical orientation".into()));
    }
    let mut z = alg.zero();
    for x in orbit {
        z.add_assign(&theta_hat(alg, o, x)?);
    }
    Ok(z)
}

/// Commutators of `h` with a generating set of the algebra.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct CentralityReport {
    /// `(generator, commutes)`.
    pub checks: Vec<(String, bool)>,
}

impl CentralityReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, b)| *b)
    }
}

pub fn centrality(alg: &Algebra, h: &HeckeElem) -> Result<CentralityReport> {
    let mut report = CentralityReport::default();
    for (name, g) in conjugators(alg)? {
        let c = alg.commutator(&alg.basis(g), h);
        report.checks.push((name, c.is_zero()));
    }
    Ok(report)
}

pub fn is_central(alg: &Algebra, h: &HeckeElem) -> Result<bool> {
    Ok(centrality(alg, h)?.ok())
}

/// A map generating an orbit.
pub type OrbitMap<'a, T> = Box<dyn Fn(&T) -> T + 'a>;

/// Whether `coeff` is constant on the orbits of `support` under the maps
/// `act`, with absent elements counting as zero.
pub fn constant_on_orbits<E: Ord + Clone, C: PartialEq>(
    coeff: &BTreeMap<E, C>,
    act: &[&dyn Fn(&E) -> E],
    bound: usize,
) -> Result<bool> {
    let mut done: BTreeSet<E> = BTreeSet::new();
    for (e, c) in coeff {
        if done.contains(e) {
            continue;
        }
        let mut orbit = BTreeSet::from([e.clone()]);
        let mut queue = vec![e.clone()];
        while let Some(y) = queue.pop() {
            for f in act {
                let z = f(&y);
                if orbit.insert(z.clone()) {
                    if orbit.len() > bound {
                        return Err(Error::Bound("orbit not finite within bound".into()));
                    }
                    queue.push(z);
                }
            }
        }
        if orbit.iter().any(|z| coeff.get(z) != Some(c)) {
            return Ok(false);
        }
        done.extend(orbit);
    }
    Ok(true)
}

/// `coords` holds `θ̂_o`-coordinates supported on `X⁽¹⁾`. True iff they are
/// constant on `X⁽¹⁾`-conjugation orbits; in that case `Σ c_x θ̂_o(x)` is
/// also checked to commute with `θ̂_o(y)` for `y ∈ probe`.
pub fn invariant_projection_check(alg: &Algebra, coords: &HeckeElem, o: &Orientation, probe: &[ProPElem]) -> Result<bool> {
    let h = coords;
    let weyl = alg.weyl();
    if let Some(g) = h.support().find(|g| !weyl.is_translation(&g.w)) {
        return Err(Error::Usage(format!("support element {:?} lies outside X(1)", g.w)));
    }
    let g = &alg.group;
    let mut conj: Vec<ProPElem> = (0..weyl.rank())
        .map(|i| {
            let mut e = vec![0; weyl.rank()];
            e[i] = 1;
            g.from_weyl(weyl.translation(&e))
        })
        .collect();
    conj.extend(g.torus.generators().into_iter().map(|t| g.from_torus(t)));
    let maps: Vec<OrbitMap<'_, ProPElem>> = conj
        .iter()
        .map(|c| {
            let inv = g.inv(c);
            Box::new(move |y: &ProPElem| g.mul(&g.mul(c, y), &inv)) as Box<dyn Fn(&ProPElem) -> ProPElem>
        })
        .collect();
    let refs: Vec<&dyn Fn(&ProPElem) -> ProPElem> = maps.iter().map(|b| b.as_ref()).collect();
    if !constant_on_orbits(&h.terms, &refs, DEFAULT_ORBIT_BOUND)? {
        return Ok(false);
    }
    let mut elem = alg.zero();
    for (x, c) in &h.terms {
        elem.add_assign(&theta_hat(alg, o, x)?.scale(c));
    }
    for y in probe {
        if !weyl.is_translation(&y.w) {
            return Err(Error::Usage("probe elements must lie in X(1)".into()));
        }
        let th = theta_hat(alg, o, y)?;
        if !alg.commutator(&th, &elem).is_zero() {
            return Err(Error::Validation("invariant element fails to commute with θ̂".into()));
        }
    }
    Ok(true)
}

/// Left `A_o`-module generators `θ̂_o(w̃)`, one per minimal alcove.
#[derive(Clone, Debug)]
pub struct ModuleGenerators {
    /// `(w ∈ W₀, w̃)` with `w̃⁻¹(C₀) ∈ Λ_w`.
    pub generators: Vec<(u32, ProPElem)>,
    pub box_bound: i64,
}

impl ModuleGenerators {
    /// `g = x·w̃` with `ℓ(g) = ℓ(x) + ℓ(w̃)`, `x ∈ X⁽¹⁾`.
    pub fn factor(&self, alg: &Algebra, g: &ProPElem) -> Option<(ProPElem, ProPElem)> {
        let weyl = alg.weyl();
        let one = weyl.identity();
        let target = weyl.vector_distance(&one, &weyl.inv(&g.w));
        let grp = &alg.group;
        self.generators.iter().filter(|(w, _)| *w == g.w.w).find_map(|(_, wt)| {
            let d = weyl.vector_distance(&one, &weyl.inv(&wt.w));
            if !preceq(&d, &target) {
                return None;
            }
            let x = grp.mul(g, &grp.inv(wt));
            (weyl.length(&x.w) + weyl.length(&wt.w) == weyl.length(&g.w)).then_some((x, wt.clone()))
        })
    }
}

/// Computes `Λ_w` for every `w ∈ W₀` among translates `τ^x w⁻¹(C₀)` with
/// `x ∈ [-bound, bound]^n`. Minimal alcoves on the boundary of the box are
/// rejected, since the box may be hiding smaller ones.
pub fn module_generators(alg: &Algebra, o: &Orientation, bound: i64) -> Result<ModuleGenerators> {
    if !o.is_spherical() {
        return Err(Error::Usage("module generators need a spherical orientation".into()));
    }
    let weyl = alg.weyl();
    let n = weyl.rank();
    let one = weyl.identity();
    let mut xs: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        xs = xs
            .into_iter()
            .flat_map(|p| (-bound..=bound).map(move |c| p.iter().copied().chain([c]).collect()))
            .collect();
    }
    let mut generators = Vec::new();
    for w in 0..weyl.w0.size() as u32 {
        let winv = weyl.finite(weyl.w0.inv[w as usize]);
        // alcoves are identified by their vector distance from C₀; keep the
        // representative translation of smallest sup-norm
        let mut alcoves: BTreeMap<Vec<i64>, (Vec<i64>, WElem)> = BTreeMap::new();
        for x in &xs {
            let v = weyl.mul(&weyl.translation(x), &winv);
            let d = weyl.vector_distance(&one, &v);
            let norm = |y: &[i64]| y.iter().map(|c| c.abs()).max().unwrap_or(0);
            match alcoves.get(&d) {
                Some((x0, _)) if (norm(x0), x0) <= (norm(x), x) => {}
                _ => {
                    alcoves.insert(d, (x.clone(), v));
                }
            }
        }
        for (d, (x, v)) in &alcoves {
            if alcoves.keys().any(|d2| d2 != d && preceq(d2, d)) {
                continue;
            }
            if x.iter().any(|c| c.abs() == bound) {
                return Err(Error::Bound(format!("increase bounds: minimal alcove at box edge {x:?}")));
            }
            generators.push((w, alg.group.from_weyl(weyl.inv(v))));
        }
    }
    Ok(ModuleGenerators { generators, box_bound: bound })
}

/// Outcome of expressing `T_g` through the module generators.
#[derive(Clone, Debug)]
pub struct FactorCertificate {
    pub element: ProPElem,
    pub terms: usize,
    pub ok: bool,
}

/// Writes each `T_g`, `g ∈ elems`, as `Σ c θ̂_o(x) θ̂_o(w̃)` and checks the
/// sum exactly; a missing factorization means the box was too small.
pub fn certify_module_generators(
    alg: &Algebra,
    o: &Orientation,
    gens: &ModuleGenerators,
    elems: &[ProPElem],
) -> Result<Vec<FactorCertificate>> {
    let mut out = Vec::new();
    for g in elems {
        let coords = theta_hat_coordinates(alg, o, &alg.basis(g.clone()))?;
        let mut sum = alg.zero();
        for (h, c) in &coords.terms {
            let (x, wt) = gens
                .factor(alg, h)
                .ok_or_else(|| Error::Bound(format!("increase bounds: no generator for {:?}", h.w)))?;
            let prod = alg.mul(&theta_hat(alg, o, &x)?, &theta_hat(alg, o, &wt)?);
            sum.add_assign(&prod.scale(c));
        }
        out.push(FactorCertificate { element: g.clone(), terms: coords.len(), ok: sum == alg.basis(g.clone()) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{affine_hecke_gln, yokonuma_aff, GlnMode};
    use crate::propcox::TVec;

    #[test]
    fn orbits_gl2() {
        let alg = affine_hecke_gln(2, GlnMode::A1).unwrap();
        let w = alg.weyl();
        let c = alg.group.from_weyl(w.translation(&[1, 1]));
        assert_eq!(orbit(&alg, &c, 100).unwrap(), vec![c.clone()]);
        let e1 = alg.group.from_weyl(w.translation(&[1, 0]));
        let e2 = alg.group.from_weyl(w.translation(&[0, 1]));
        let orb = orbit(&alg, &e1, 100).unwrap();
        assert_eq!(orb.len(), 2);
        assert!(orb.contains(&e2));
        assert!(orbit(&alg, &alg.group.lift(1), 100).is_err());
        match orbit(&alg, &e1, 1) {
            Err(Error::Bound(m)) => assert!(m.contains("orbit not finite within bound")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orbit_yokonuma() {
        let alg = yokonuma_aff(2, 2).unwrap();
        let w = alg.weyl();
        let x = ProPElem { w: w.translation(&[1, 0]), t: TVec::from_slice(&[1, 0]) };
        let orb = orbit(&alg, &x, 100).unwrap();
        let y = ProPElem { w: w.translation(&[0, 1]), t: TVec::from_slice(&[0, 1]) };
        assert_eq!(orb, {
            let mut v = vec![x, y];
            v.sort();
            v
        });
    }

    #[test]
    fn z_gamma_basics() {
        let alg = affine_hecke_gln(2, GlnMode::Universal).unwrap();
        let w = alg.weyl();
        let c = alg.group.from_weyl(w.translation(&[1, 1]));
        let o = Orientation::dominant();
        assert_eq!(z_gamma(&alg, &o, std::slice::from_ref(&c)).unwrap(), alg.basis(c));
        let orb = orbit(&alg, &alg.group.from_weyl(w.translation(&[1, 0])), 100).unwrap();
        let z = z_gamma(&alg, &o, &orb).unwrap();
        let z2 = z_gamma(&alg, &Orientation::spherical(1), &orb).unwrap();
        assert_eq!(z, z2);
        assert!(is_central(&alg, &z).unwrap());
        assert!(is_central(&alg, &alg.one()).unwrap());
        assert!(!is_central(&alg, &alg.gen(1)).unwrap());
        let gl3 = affine_hecke_gln(3, GlnMode::A1).unwrap();
        let orb3 = orbit(&gl3, &gl3.group.from_weyl(gl3.weyl().translation(&[1, 0, 0])), 100).unwrap();
        assert_eq!(orb3.len(), 3);
    }

    #[test]
    fn invariant_projection() {
        let alg = yokonuma_aff(2, 2).unwrap();
        let w = alg.weyl();
        let mut h = alg.zero();
        h.add_term(alg.group.from_weyl(w.translation(&[2, 0])), &crate::rings::Poly::from_int(&alg.vars, 3));
        h.add_term(alg.group.from_torus(TVec::from_slice(&[1, 0])), &crate::rings::Poly::from_int(&alg.vars, -1));
        let probe = vec![alg.group.from_weyl(w.translation(&[1, 0]))];
        assert!(invariant_projection_check(&alg, &h, &Orientation::dominant(), &probe).unwrap());
        assert!(invariant_projection_check(&alg, &alg.gen(1), &Orientation::dominant(), &probe).is_err());
    }

    /// `S₃` acting on itself by conjugation, as permutations of `{0,1,2}`.
    #[test]
    fn synthetic_nonabelian_orbits() {
        type P = [u8; 3];
        let compose = |a: &P, b: &P| -> P { [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]] };
        let inverse = |a: &P| -> P {
            let mut r = [0; 3];
            for i in 0..3 {
                r[a[i] as usize] = i as u8;
            }
            r
        };
        let gens: [P; 2] = [[1, 0, 2], [0, 2, 1]];
        let maps: Vec<OrbitMap<'_, P>> = gens
            .iter()
            .map(|g| {
                let g = *g;
                Box::new(move |y: &P| compose(&compose(&g, y), &inverse(&g))) as Box<dyn Fn(&P) -> P>
            })
            .collect();
        let refs: Vec<&dyn Fn(&P) -> P> = maps.iter().map(|b| b.as_ref()).collect();
        let transpositions: [P; 3] = [[1, 0, 2], [0, 2, 1], [2, 1, 0]];
        let even: BTreeMap<P, i32> = transpositions.iter().map(|t| (*t, 5)).collect();
        assert!(constant_on_orbits(&even, &refs, 10).unwrap());
        let mut uneven = even.clone();
        uneven.insert([2, 1, 0], 4);
        assert!(!constant_on_orbits(&uneven, &refs, 10).unwrap());
        // the uneven sum fails to commute with a transposition in Z[S₃]
        let mul = |x: &BTreeMap<P, i32>, y: &BTreeMap<P, i32>| {
            let mut out: BTreeMap<P, i32> = BTreeMap::new();
            for (a, c) in x {
                for (b, d) in y {
                    *out.entry(compose(a, b)).or_default() += c * d;
                }
            }
            out.retain(|_, v| *v != 0);
            out
        };
        let s = BTreeMap::from([([1, 0, 2], 1)]);
        assert_ne!(mul(&s, &uneven), mul(&uneven, &s));
        assert_eq!(mul(&s, &even), mul(&even, &s));
    }

    #[test]
    fn module_generators_gl2() {
        let alg = affine_hecke_gln(2, GlnMode::A1).unwrap();
        let w = alg.weyl();
        let o = Orientation::dominant();
        let gens = module_generators(&alg, &o, 3).unwrap();
        assert!(gens.generators.iter().any(|(w0, g)| *w0 == 0 && *g == alg.group.identity()));
        let one = w.identity();
        for (a, ga) in &gens.generators {
            for (b, gb) in &gens.generators {
                if a == b && ga != gb {
                    let da = w.vector_distance(&one, &w.inv(&ga.w));
                    let db = w.vector_distance(&one, &w.inv(&gb.w));
                    assert!(!preceq(&da, &db));
                }
            }
        }
        let omegas = w.small_omegas(1).unwrap();
        let elems: Vec<ProPElem> = w.ball(3, &omegas).into_iter().map(|e| alg.group.from_weyl(e)).collect();
        let certs = certify_module_generators(&alg, &o, &gens, &elems).unwrap();
        assert!(certs.iter().all(|c| c.ok));
        assert!(module_generators(&alg, &o, 0).is_err());
    }
}
