//! The pro-p layer `W⁽¹⁾`: an extension of `W` by a finite abelian group `T`,
//! twisted by a `W`-equivariant cocycle `h` on walls.

use std::collections::BTreeSet;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::weyl::{HyperplaneId, WElem, WeylRef};

pub type TVec = SmallVec<[i64; 4]>;

/// `T ≅ ∏ Z/d_i` with `W` acting through `W₀` by integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusData {
    pub moduli: Vec<i64>,
    /// Row-major `k × k` matrix for each `W₀` index.
    pub action: Vec<Vec<i64>>,
}

impl TorusData {
    pub fn trivial(weyl: &WeylRef) -> Self {
        TorusData { moduli: Vec::new(), action: vec![Vec::new(); weyl.w0.size()] }
    }

    /// `(Z/d)^n` with `W₀` permuting coordinates like it permutes `e_i`.
    pub fn permutation(weyl: &WeylRef, d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::Usage(format!("modulus must be positive, got {d}")));
        }
        if (0..weyl.w0.size() as u32).any(|w| weyl.w0.to_perm(w).is_none()) {
            return Err(Error::Usage("W0 does not act by permutations".into()));
        }
        Ok(TorusData { moduli: vec![d; weyl.rank()], action: weyl.w0.mats.clone() })
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&d| d as u64).product()
    }

    pub fn zero(&self) -> TVec {
        SmallVec::from_elem(0, self.dim())
    }

    pub fn is_zero(&self, t: &[i64]) -> bool {
        t.iter().all(|&v| v == 0)
    }

    pub fn reduce(&self, t: &mut TVec) {
        for (v, d) in t.iter_mut().zip(&self.moduli) {
            *v = v.rem_euclid(*d);
        }
    }

    pub fn normalize(&self, t: &[i64]) -> Result<TVec> {
        if t.len() != self.dim() {
            return Err(Error::Usage(format!("torus element of length {} for dimension {}", t.len(), self.dim())));
        }
        let mut v: TVec = t.iter().copied().collect();
        self.reduce(&mut v);
        Ok(v)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> TVec {
        let mut v: TVec = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut v);
        v
    }

    pub fn neg(&self, a: &[i64]) -> TVec {
        let mut v: TVec = a.iter().map(|x| -x).collect();
        self.reduce(&mut v);
        v
    }

    /// Action of the `W₀` element with index `w`.
    pub fn act(&self, w: u32, t: &[i64]) -> TVec {
        let k = self.dim();
        if k == 0 || w == 0 {
            return t.iter().copied().collect();
        }
        let m = &self.action[w as usize];
        let mut v: TVec = (0..k).map(|i| (0..k).map(|j| m[i * k + j] * t[j]).sum()).collect();
        self.reduce(&mut v);
        v
    }

    /// Every element of `T`, in lexicographic order.
    pub fn elements(&self) -> Vec<TVec> {
        let mut out = vec![self.zero()];
        for (i, &d) in self.moduli.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for t in &out {
                for c in 0..d {
                    let mut u = t.clone();
                    u[i] = c;
                    next.push(u);
                }
            }
            out = next;
        }
        out
    }

    /// Unit vectors `e_i`, which generate `T`.
    pub fn generators(&self) -> Vec<TVec> {
        (0..self.dim())
            .filter(|&i| self.moduli[i] > 1)
            .map(|i| {
                let mut t = self.zero();
                t[i] = 1;
                t
            })
            .collect()
    }
}

/// An element `(t, w)` of `W⁽¹⁾`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProPElem {
    pub w: WElem,
    pub t: TVec,
}

#[derive(Debug)]
pub struct ProPGroup {
    pub weyl: WeylRef,
    pub torus: TorusData,
    /// `h(H_s)` for each generator, or `None` for the trivial cocycle.
    h: Option<Vec<TVec>>,
}

impl ProPGroup {
    pub fn split(weyl: WeylRef, torus: TorusData) -> Self {
        ProPGroup { weyl, torus, h: None }
    }

    /// Cocycle determined by its values on the generator walls, extended
    /// equivariantly; consistency is checked on walls met within `check_len`.
    pub fn with_cocycle(weyl: WeylRef, torus: TorusData, values: Vec<TVec>, check_len: usize) -> Result<Self> {
        if values.len() != weyl.num_gens() {
            return Err(Error::Usage(format!("{} cocycle values for {} generators", values.len(), weyl.num_gens())));
        }
        let values = values.iter().map(|v| torus.normalize(v)).collect::<Result<Vec<_>>>()?;
        let trivial = values.iter().all(|v| torus.is_zero(v));
        let g = ProPGroup { weyl, torus, h: if trivial { None } else { Some(values) } };
        g.check_cocycle(check_len)?;
        Ok(g)
    }

    pub fn has_trivial_cocycle(&self) -> bool {
        self.h.is_none()
    }

    /// `h(H) = w(h(s))` for `H = w(H_s)`.
    pub fn h_wall(&self, hyp: HyperplaneId) -> Result<TVec> {
        let Some(vals) = &self.h else { return Ok(self.torus.zero()) };
        let (p, s) = self.weyl.presentation(hyp)?;
        Ok(self.torus.act(p.w, &vals[s]))
    }

    pub fn h_sum<'a>(&self, walls: impl IntoIterator<Item = &'a HyperplaneId>) -> Result<TVec> {
        let mut t = self.torus.zero();
        if self.h.is_none() {
            return Ok(t);
        }
        for hyp in walls {
            t = self.torus.add(&t, &self.h_wall(*hyp)?);
        }
        Ok(t)
    }

    fn check_cocycle(&self, check_len: usize) -> Result<()> {
        let Some(vals) = &self.h else { return Ok(()) };
        let w = &self.weyl;
        for p in w.affine_ball(check_len) {
            for s in 0..w.num_gens() {
                let hyp = w.hyperplane_action(&p, w.gen_wall(s));
                let direct = self.torus.act(p.w, &vals[s]);
                if self.h_wall(hyp)? != direct {
                    return Err(Error::Validation(format!(
                        "cocycle not well defined on wall {hyp:?} (via {p:?} and generator {s})"
                    )));
                }
            }
        }
        for om in w.small_omegas(1)? {
            for s in 0..w.num_gens() {
                if let Some(s2) = w.conj_gen(&om, s) {
                    if self.torus.act(om.w, &vals[s]) != vals[s2] {
                        return Err(Error::Validation(format!("cocycle not Ω-equivariant at generator {s}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(&self) -> ProPElem {
        ProPElem { w: self.weyl.identity(), t: self.torus.zero() }
    }

    pub fn from_weyl(&self, w: WElem) -> ProPElem {
        ProPElem { w, t: self.torus.zero() }
    }

    pub fn from_torus(&self, t: TVec) -> ProPElem {
        ProPElem { w: self.weyl.identity(), t }
    }

    pub fn make(&self, t: &[i64], w: WElem) -> Result<ProPElem> {
        self.weyl.check(&w)?;
        Ok(ProPElem { w, t: self.torus.normalize(t)? })
    }

    /// The distinguished lift `n_s = (0, s)`.
    pub fn lift(&self, s: usize) -> ProPElem {
        self.from_weyl(self.weyl.gen(s).clone())
    }

    pub fn mul(&self, a: &ProPElem, b: &ProPElem) -> ProPElem {
        let mut t = self.torus.add(&a.t, &self.torus.act(a.w.w, &b.t));
        if self.h.is_some() {
            let x = self.weyl.double_crossings(&a.w, &b.w);
            let hx = self.h_sum(&x).expect("cocycle evaluation");
            t = self.torus.add(&t, &hx);
        }
        ProPElem { w: self.weyl.mul(&a.w, &b.w), t }
    }

    pub fn inv(&self, a: &ProPElem) -> ProPElem {
        let winv = self.weyl.inv(&a.w);
        let mut t = a.t.clone();
        if self.h.is_some() {
            let l = self.weyl.separating(&self.weyl.identity(), &a.w);
            t = self.torus.add(&t, &self.h_sum(&l).expect("cocycle evaluation"));
        }
        ProPElem { w: winv.clone(), t: self.torus.neg(&self.torus.act(winv.w, &t)) }
    }

    pub fn torus_act(&self, g: &WElem, t: &[i64]) -> TVec {
        self.torus.act(g.w, t)
    }

    pub fn word_lift(&self, word: &[usize]) -> ProPElem {
        word.iter().fold(self.identity(), |acc, &s| self.mul(&acc, &self.lift(s)))
    }

    /// Checks `n_s n_t ⋯ = n_t n_s ⋯` (`m(s,t)` factors each) for every pair with finite order.
    pub fn validate_braid_lifts(&self, order_bound: usize) -> Result<BraidReport> {
        let w = &self.weyl;
        let mut checked = Vec::new();
        let mut skipped = Vec::new();
        for s in 0..w.num_gens() {
            for t in s + 1..w.num_gens() {
                let Some(m) = w.coxeter_m(s, t, order_bound) else {
                    skipped.push((s, t));
                    continue;
                };
                let left: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { s } else { t }).collect();
                let right: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { t } else { s }).collect();
                let ok = self.word_lift(&left) == self.word_lift(&right);
                checked.push(((s, t), m, ok));
            }
        }
        Ok(BraidReport { checked, skipped })
    }

    /// The walls `X(w,w')` as a set, for reuse by callers.
    pub fn big_x(&self, a: &WElem, b: &WElem) -> BTreeSet<HyperplaneId> {
        self.weyl.double_crossings(a, b)
    }
}

#[derive(Clone, Debug)]
pub struct BraidReport {
    pub checked: Vec<((usize, usize), usize, bool)>,
    pub skipped: Vec<(usize, usize)>,
}

impl BraidReport {
    pub fn ok(&self) -> bool {
        self.checked.iter().all(|c| c.2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Weyl;
    use smallvec::smallvec;

    fn yok(d: i64, n: usize) -> ProPGroup {
        let w = Weyl::gln(n).unwrap();
        let t = TorusData::permutation(&w, d).unwrap();
        ProPGroup::split(w, t)
    }

    #[test]
    fn torus_products() {
        let g = yok(3, 2);
        let a = g.from_torus(smallvec![1, 2]);
        let b = g.from_torus(smallvec![2, 2]);
        assert_eq!(g.mul(&a, &b), g.from_torus(smallvec![0, 1]));
    }

    #[test]
    fn split_lift_squares() {
        let g = yok(2, 3);
        for s in 0..3 {
            let n = g.lift(s);
            assert_eq!(g.mul(&n, &n), g.identity());
            assert_eq!(n.w, *g.weyl.gen(s));
            assert!(g.torus.is_zero(&n.t));
        }
    }

    #[test]
    fn nontrivial_h_square() {
        // T = Z/2 with trivial action; h = 1 on every wall
        let w = Weyl::gln(2).unwrap();
        let torus = TorusData { moduli: vec![2], action: vec![vec![1]; w.w0.size()] };
        let g = ProPGroup::with_cocycle(w, torus, vec![smallvec![1], smallvec![1]], 3).unwrap();
        for s in 0..2 {
            let n = g.lift(s);
            assert_eq!(g.mul(&n, &n), g.from_torus(smallvec![1]));
        }
    }

    #[test]
    fn inconsistent_cocycle_rejected() {
        // in GL_3 all generators are conjugate under Ω, so differing values fail
        let w = Weyl::gln(3).unwrap();
        let torus = TorusData { moduli: vec![2], action: vec![vec![1]; w.w0.size()] };
        let r = ProPGroup::with_cocycle(w, torus, vec![smallvec![1], smallvec![0], smallvec![0]], 2);
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn swap_action() {
        let g = yok(2, 2);
        let s1 = g.weyl.gen(1).clone();
        assert_eq!(g.torus_act(&s1, &[1, 0]).to_vec(), vec![0, 1]);
        assert_eq!(g.torus_act(&g.weyl.translation(&[3, -1]), &[1, 0]).to_vec(), vec![1, 0]);
    }

    #[test]
    fn braid_lifts() {
        let g2 = yok(1, 2);
        let r = g2.validate_braid_lifts(12).unwrap();
        assert!(r.ok() && r.checked.is_empty() && r.skipped == vec![(0, 1)]);
        let r = yok(1, 3).validate_braid_lifts(12).unwrap();
        assert!(r.ok());
        assert_eq!(r.checked.len(), 3);
        assert!(r.checked.iter().all(|c| c.1 == 3));
        assert!(yok(2, 3).validate_braid_lifts(12).unwrap().ok());
    }

    #[test]
    fn inverse_with_cocycle() {
        let w = Weyl::gln(2).unwrap();
        let torus = TorusData { moduli: vec![3], action: vec![vec![1]; w.w0.size()] };
        let g = ProPGroup::with_cocycle(w.clone(), torus, vec![smallvec![1], smallvec![1]], 3).unwrap();
        for x in w.affine_ball(4) {
            let e = ProPElem { w: x, t: smallvec![2] };
            assert_eq!(g.mul(&e, &g.inv(&e)), g.identity());
            assert_eq!(g.mul(&g.inv(&e), &e), g.identity());
        }
    }
}
