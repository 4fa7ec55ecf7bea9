//! The extended affine Weyl group `W = X ⋊ W₀` acting on alcoves.
//!
//! Every geometric quantity is computed by floor arithmetic on the root values
//! `α(w·p₀)` at a fixed interior point `p₀` of the fundamental alcove `C₀`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rootdata::{self, dot, AlcovePoint, FiniteWeyl, RootDatum, DEFAULT_W0_BOUND};

pub type Vector = SmallVec<[i64; 4]>;

/// `τ^x σ` with `σ` given by its index in the `W₀` table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WElem {
    pub x: Vector,
    pub w: u32,
}

/// The affine wall `H_{α,k} = {α + k = 0}` with `α` positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HyperplaneId {
    pub root: u32,
    pub k: i64,
}

/// `w = s_{word[0]} ⋯ s_{word[r-1]} · omega` with `r = ℓ(w)` and `ℓ(omega) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub word: Vec<usize>,
    pub omega: WElem,
}

#[derive(Debug)]
pub struct Weyl {
    pub datum: RootDatum,
    pub w0: FiniteWeyl,
    pub point: AlcovePoint,
    // c[w][a] = denom * α_a(M_w p₀)
    c: Vec<Vec<i64>>,
    gens: Vec<WElem>,
    gen_walls: Vec<HyperplaneId>,
    gln: bool,
}

pub type WeylRef = Arc<Weyl>;

impl Weyl {
    pub fn new(datum: RootDatum) -> Result<WeylRef> {
        datum.validate()?;
        let point = rootdata::base_point(&datum)?;
        Self::with_point(datum, point)
    }

    pub fn gln(n: usize) -> Result<WeylRef> {
        Self::new(RootDatum::gln(n)?)
    }

    pub fn with_point(datum: RootDatum, point: AlcovePoint) -> Result<WeylRef> {
        let w0 = FiniteWeyl::new(&datum, DEFAULT_W0_BOUND)?;
        for a in &datum.positive_roots {
            let v = dot(a, &point.numer);
            if v <= 0 || v >= point.denom {
                return Err(Error::Datum("point is not interior to the fundamental alcove".into()));
            }
        }
        let c = (0..w0.size() as u32)
            .map(|w| {
                let wp = w0.apply(w, &point.numer);
                datum.positive_roots.iter().map(|a| dot(a, &wp)).collect()
            })
            .collect();
        let n = datum.rank;
        let theta = datum.highest;
        let mut gens = vec![WElem { x: datum.coroots[theta].iter().copied().collect(), w: w0.reflection[theta] }];
        let mut gen_walls = vec![HyperplaneId { root: theta as u32, k: -1 }];
        for &a in &datum.simple {
            gens.push(WElem { x: SmallVec::from_elem(0, n), w: w0.reflection[a] });
            gen_walls.push(HyperplaneId { root: a as u32, k: 0 });
        }
        let gln = datum.is_gln();
        Ok(Arc::new(Weyl { datum, w0, point, c, gens, gen_walls, gln }))
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn is_gln(&self) -> bool {
        self.gln
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn num_roots(&self) -> usize {
        self.datum.num_positive()
    }

    pub fn gen(&self, s: usize) -> &WElem {
        &self.gens[s]
    }

    pub fn gen_wall(&self, s: usize) -> HyperplaneId {
        self.gen_walls[s]
    }

    pub fn identity(&self) -> WElem {
        WElem { x: SmallVec::from_elem(0, self.rank()), w: 0 }
    }

    pub fn translation(&self, x: &[i64]) -> WElem {
        WElem { x: x.iter().copied().collect(), w: 0 }
    }

    pub fn finite(&self, w: u32) -> WElem {
        WElem { x: SmallVec::from_elem(0, self.rank()), w }
    }

    pub fn is_translation(&self, w: &WElem) -> bool {
        w.w == 0
    }

    pub fn check(&self, w: &WElem) -> Result<()> {
        if w.x.len() != self.rank() {
            return Err(Error::Usage(format!("rank mismatch: vector of length {} for rank {}", w.x.len(), self.rank())));
        }
        if w.w as usize >= self.w0.size() {
            return Err(Error::Usage("finite part out of range".into()));
        }
        Ok(())
    }

    pub fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        let bx = self.w0.apply(a.w, &b.x);
        WElem { x: a.x.iter().zip(&bx).map(|(p, q)| p + q).collect(), w: self.w0.mul[a.w as usize][b.w as usize] }
    }

    pub fn inv(&self, a: &WElem) -> WElem {
        let wi = self.w0.inv[a.w as usize];
        let x = self.w0.apply(wi, &a.x);
        WElem { x: x.iter().map(|v| -v).collect(), w: wi }
    }

    pub fn conj(&self, g: &WElem, w: &WElem) -> WElem {
        self.mul(&self.mul(g, w), &self.inv(g))
    }

    /// Action on lattice vectors through the finite part.
    pub fn act_vec(&self, w: &WElem, v: &[i64]) -> Vec<i64> {
        self.w0.apply(w.w, v)
    }

    /// Affine action on a rational point.
    pub fn act_point(&self, w: &WElem, p: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank();
        let m = &self.w0.mats[w.w as usize];
        (0..n)
            .map(|i| {
                let mut s = BigRational::from_integer(w.x[i].into());
                for j in 0..n {
                    if m[i * n + j] != 0 {
                        s += &p[j] * BigRational::from_integer(m[i * n + j].into());
                    }
                }
                s
            })
            .collect()
    }

    /// `denom · α_a(w·p₀)`.
    #[inline]
    pub fn root_value(&self, w: &WElem, a: usize) -> i64 {
        dot(&self.datum.positive_roots[a], &w.x) * self.point.denom + self.c[w.w as usize][a]
    }

    /// `⌊α_a(w·p₀)⌋`.
    #[inline]
    pub fn root_floor(&self, w: &WElem, a: usize) -> i64 {
        Integer::div_floor(&self.root_value(w, a), &self.point.denom)
    }

    pub fn length(&self, w: &WElem) -> usize {
        (0..self.num_roots()).map(|a| self.root_floor(w, a).unsigned_abs() as usize).sum()
    }

    /// Sign of `α + k` on the alcove `w(C₀)`.
    pub fn side(&self, w: &WElem, h: HyperplaneId) -> i8 {
        let v = self.root_value(w, h.root as usize) + h.k * self.point.denom;
        debug_assert!(v != 0);
        if v > 0 {
            1
        } else {
            -1
        }
    }

    pub fn separates(&self, h: HyperplaneId, a: &WElem, b: &WElem) -> bool {
        self.side(a, h) != self.side(b, h)
    }

    pub fn separating(&self, a: &WElem, b: &WElem) -> BTreeSet<HyperplaneId> {
        let mut out = BTreeSet::new();
        for r in 0..self.num_roots() {
            let fa = self.root_floor(a, r);
            let fb = self.root_floor(b, r);
            for m in fa.min(fb) + 1..=fa.max(fb) {
                out.insert(HyperplaneId { root: r as u32, k: -m });
            }
        }
        out
    }

    /// `X(w,w') = sep(1,w) ∩ sep(w,ww')`.
    pub fn double_crossings(&self, w: &WElem, w2: &WElem) -> BTreeSet<HyperplaneId> {
        let one = self.identity();
        let ww = self.mul(w, w2);
        let first = self.separating(&one, w);
        if first.is_empty() {
            return first;
        }
        let second = self.separating(w, &ww);
        first.intersection(&second).copied().collect()
    }

    pub fn hyperplane_action(&self, w: &WElem, h: HyperplaneId) -> HyperplaneId {
        let (b, eps) = self.w0.root_act[w.w as usize][h.root as usize];
        let bx = dot(&self.datum.positive_roots[b as usize], &w.x);
        HyperplaneId { root: b, k: i64::from(eps) * h.k - bx }
    }

    /// `s_{α,k}: p ↦ p - (α(p)+k)α∨`.
    pub fn reflection(&self, h: HyperplaneId) -> WElem {
        let r = h.root as usize;
        WElem { x: self.datum.coroots[r].iter().map(|c| -h.k * c).collect(), w: self.w0.reflection[r] }
    }

    pub fn is_left_descent(&self, s: usize, w: &WElem) -> bool {
        self.side(w, self.gen_walls[s]) != self.side(&self.identity(), self.gen_walls[s])
    }

    pub fn is_right_descent(&self, w: &WElem, s: usize) -> bool {
        let h = self.hyperplane_action(w, self.gen_walls[s]);
        self.side(w, h) != self.side(&self.identity(), h)
    }

    /// Greedy left-descent decomposition; ties go to the smallest generator index.
    pub fn reduced_word(&self, w: &WElem) -> Result<Reduced> {
        let mut cur = w.clone();
        let mut word = Vec::new();
        let mut len = self.length(&cur);
        while len > 0 {
            let s = (0..self.num_gens())
                .find(|&s| self.is_left_descent(s, &cur))
                .ok_or_else(|| Error::Internal(format!("no descent for {cur:?} of length {len}")))?;
            cur = self.mul(&self.gens[s], &cur);
            word.push(s);
            len -= 1;
        }
        Ok(Reduced { word, omega: cur })
    }

    pub fn word_product(&self, word: &[usize]) -> WElem {
        word.iter().fold(self.identity(), |acc, &s| self.mul(&acc, &self.gens[s]))
    }

    /// All reduced words of the affine part of `w`.
    pub fn all_reduced_words(&self, w: &WElem) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.words_rec(w, &mut prefix, &mut out);
        out
    }

    fn words_rec(&self, w: &WElem, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if self.length(w) == 0 {
            out.push(prefix.clone());
            return;
        }
        for s in 0..self.num_gens() {
            if self.is_left_descent(s, w) {
                prefix.push(s);
                self.words_rec(&self.mul(&self.gens[s], w), prefix, out);
                prefix.pop();
            }
        }
    }

    /// Walls crossed by the gallery of `word`, in order.
    pub fn gallery_walls(&self, word: &[usize]) -> Vec<HyperplaneId> {
        let mut prefix = self.identity();
        let mut out = Vec::with_capacity(word.len());
        for &s in word {
            out.push(self.hyperplane_action(&prefix, self.gen_walls[s]));
            prefix = self.mul(&prefix, &self.gens[s]);
        }
        out
    }

    /// `(w, s)` with `H = w(H_s)`, read off the reduced gallery of `s_H`.
    pub fn presentation(&self, h: HyperplaneId) -> Result<(WElem, usize)> {
        let red = self.reduced_word(&self.reflection(h))?;
        let mut prefix = self.identity();
        for &s in &red.word {
            if self.hyperplane_action(&prefix, self.gen_walls[s]) == h {
                return Ok((prefix, s));
            }
            prefix = self.mul(&prefix, &self.gens[s]);
        }
        Err(Error::Internal(format!("wall {h:?} not on the gallery of its reflection")))
    }

    /// Generator `s'` with `g s g⁻¹ = s'` for a length-zero `g`.
    pub fn conj_gen(&self, g: &WElem, s: usize) -> Option<usize> {
        let c = self.conj(g, &self.gens[s]);
        self.gens.iter().position(|t| *t == c)
    }

    /// Class index of each generator under `W`-conjugacy: odd braid edges
    /// together with the `Ω`-action on `S`.
    pub fn gen_classes(&self) -> Result<Vec<usize>> {
        let k = self.num_gens();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for s in 0..k {
            for t in s + 1..k {
                if let Some(m) = self.coxeter_m(s, t, 12) {
                    if m % 2 == 1 {
                        union(&mut parent, s, t);
                    }
                }
            }
        }
        for om in self.omega_generators()? {
            for s in 0..k {
                let t = self
                    .conj_gen(&om, s)
                    .ok_or_else(|| Error::Internal("length-zero element does not normalize S".into()))?;
                union(&mut parent, s, t);
            }
        }
        let roots: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
        let mut ids: Vec<usize> = roots.clone();
        ids.sort_unstable();
        ids.dedup();
        Ok(roots.iter().map(|r| ids.binary_search(r).unwrap()).collect())
    }

    /// Order of `s t`, or `None` if it exceeds `bound`.
    pub fn coxeter_m(&self, s: usize, t: usize, bound: usize) -> Option<usize> {
        let st = self.mul(&self.gens[s], &self.gens[t]);
        let one = self.identity();
        let mut cur = st.clone();
        for m in 1..=bound {
            if cur == one {
                return Some(m);
            }
            cur = self.mul(&cur, &st);
        }
        None
    }

    /// `u = τ^{e_n} σ` with `σ = [n,1,…,n-1]`; only for `GL_n`.
    pub fn u(&self) -> Result<WElem> {
        if !self.gln {
            return Err(Error::Usage("u is defined for GL_n only".into()));
        }
        let n = self.rank();
        let mut perm = vec![n];
        perm.extend(1..n);
        let w = self.w0.from_perm(&perm)?;
        let mut x: Vector = SmallVec::from_elem(0, n);
        x[n - 1] = 1;
        Ok(WElem { x, w })
    }

    pub fn u_pow(&self, m: i64) -> Result<WElem> {
        let u = self.u()?;
        let base = if m >= 0 { u } else { self.inv(&u) };
        let mut out = self.identity();
        for _ in 0..m.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        Ok(out)
    }

    /// `w = w_aff · u^m` with `m = Σ x_i`; only for `GL_n`.
    pub fn omega_decompose(&self, w: &WElem) -> Result<(WElem, i64)> {
        let m: i64 = w.x.iter().sum();
        let w_aff = self.mul(w, &self.u_pow(-m)?);
        Ok((w_aff, m))
    }

    /// Length-zero parts of the translations `τ^{e_j}`; they generate `Ω`.
    pub fn omega_generators(&self) -> Result<Vec<WElem>> {
        let n = self.rank();
        let mut out: Vec<WElem> = Vec::new();
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let red = self.reduced_word(&self.translation(&e))?;
            if red.omega != self.identity() && !out.contains(&red.omega) {
                out.push(red.omega);
            }
        }
        Ok(out)
    }

    /// Strict Bruhat order via the subword property on a fixed reduced word.
    pub fn bruhat_lt(&self, a: &WElem, b: &WElem) -> Result<bool> {
        if a == b {
            return Ok(false);
        }
        let ra = self.reduced_word(a)?;
        let rb = self.reduced_word(b)?;
        if ra.omega != rb.omega || ra.word.len() >= rb.word.len() {
            return Ok(false);
        }
        let target = self.word_product(&ra.word);
        let mut products: HashSet<WElem> = HashSet::new();
        products.insert(self.identity());
        for &s in &rb.word {
            let next: Vec<WElem> = products.iter().map(|p| self.mul(p, &self.gens[s])).collect();
            products.extend(next);
        }
        Ok(products.contains(&target))
    }

    /// `d⃗(C,C')_α = ⌊-α(C')⌋ - ⌊-α(C)⌋` for `C = a(C₀)`, `C' = b(C₀)`.
    pub fn vector_distance(&self, a: &WElem, b: &WElem) -> Vec<i64> {
        let d = self.point.denom;
        (0..self.num_roots())
            .map(|r| Integer::div_floor(&-self.root_value(b, r), &d) - Integer::div_floor(&-self.root_value(a, r), &d))
            .collect()
    }

    /// `ν(x) = (α(x))_{α ∈ Φ⁺}`.
    pub fn nu(&self, x: &[i64]) -> Vec<i64> {
        self.datum.positive_roots.iter().map(|a| dot(a, x)).collect()
    }

    /// Sign of `α` on the Weyl chamber `D = d(D₀)`.
    pub fn chamber_sign(&self, d: u32, a: usize) -> i8 {
        self.w0.root_act[self.w0.inv[d as usize] as usize][a].1
    }

    /// Generators of `X_D` found in the box `[-bound, bound]^n`, checked to
    /// generate every element of `X_D` in that box.
    pub fn dominant_monoid_generators(&self, d: u32, bound: i64) -> Result<DominantGenerators> {
        let n = self.rank();
        let eps: Vec<i8> = (0..self.num_roots()).map(|a| self.chamber_sign(d, a)).collect();
        let in_xd = |nu: &[i64]| nu.iter().zip(&eps).all(|(v, e)| v * i64::from(*e) >= 0);
        let mut members: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut x = vec![-bound; n];
        loop {
            let nu = self.nu(&x);
            if in_xd(&nu) {
                members.push((x.clone(), nu));
            }
            let mut i = 0;
            while i < n && x[i] == bound {
                x[i] = -bound;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        let nonzero: Vec<&(Vec<i64>, Vec<i64>)> = members.iter().filter(|(_, nu)| nu.iter().any(|&v| v != 0)).collect();
        let mut minimal: Vec<Vec<i64>> = Vec::new();
        let mut seen_nu: HashSet<Vec<i64>> = HashSet::new();
        for (x, nu) in &nonzero {
            if seen_nu.contains(nu) {
                continue;
            }
            if nonzero.iter().any(|(_, m)| m != nu && preceq(m, nu)) {
                continue;
            }
            seen_nu.insert(nu.clone());
            minimal.push(x.clone());
        }
        let kernel = rootdata::integer_kernel(&self.datum);
        let gens_nu: Vec<Vec<i64>> = minimal.iter().map(|g| self.nu(g)).collect();
        for (x, nu) in &members {
            let mut rest = nu.clone();
            while rest.iter().any(|&v| v != 0) {
                let Some(g) = gens_nu.iter().find(|g| preceq(g, &rest)) else {
                    return Err(Error::Bound(format!("{x:?} is not generated within bound {bound}")));
                };
                for (r, v) in rest.iter_mut().zip(g) {
                    *r -= v;
                }
            }
        }
        Ok(DominantGenerators { minimal, kernel })
    }

    /// Length-`≤ max_len` elements of the affine Weyl group.
    pub fn affine_ball(&self, max_len: usize) -> Vec<WElem> {
        let mut seen: HashSet<WElem> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut queue = VecDeque::from([(self.identity(), 0usize)]);
        while let Some((w, l)) = queue.pop_front() {
            if l == max_len {
                continue;
            }
            for s in 0..self.num_gens() {
                let ws = self.mul(&w, &self.gens[s]);
                if !seen.contains(&ws) && self.length(&ws) == l + 1 {
                    seen.insert(ws.clone());
                    out.push(ws.clone());
                    queue.push_back((ws, l + 1));
                }
            }
        }
        out
    }

    /// The affine ball multiplied on the right by each of `omegas`.
    pub fn ball(&self, max_len: usize, omegas: &[WElem]) -> Vec<WElem> {
        let aff = self.affine_ball(max_len);
        let mut out = Vec::with_capacity(aff.len() * omegas.len().max(1));
        if omegas.is_empty() {
            return aff;
        }
        for o in omegas {
            out.extend(aff.iter().map(|w| self.mul(w, o)));
        }
        out
    }

    /// A few length-zero elements: `u^m` for `|m| ≤ radius` in `GL_n`, else
    /// products of at most `radius` Ω-generators.
    pub fn small_omegas(&self, radius: i64) -> Result<Vec<WElem>> {
        if self.gln {
            return (-radius..=radius).map(|m| self.u_pow(m)).collect();
        }
        let gens = self.omega_generators()?;
        let mut all = vec![self.identity()];
        let mut frontier = all.clone();
        for _ in 0..radius {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &gens {
                    for h in [g.clone(), self.inv(g)] {
                        let p = self.mul(f, &h);
                        if !all.contains(&p) {
                            all.push(p.clone());
                            next.push(p);
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(all)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantGenerators {
    pub minimal: Vec<Vec<i64>>,
    pub kernel: Vec<Vec<i64>>,
}

/// `x ⪯ y` iff `x_α (y_α - x_α) ≥ 0` for all `α`.
pub fn preceq(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a * (b - a) >= 0)
}

/// Length-`≤ max_len` words in the Cayley graph of `(W_aff, S)`, by BFS distance.
pub fn bfs_lengths(w: &Weyl, max_len: usize) -> std::collections::HashMap<WElem, usize> {
    let mut dist = std::collections::HashMap::new();
    dist.insert(w.identity(), 0);
    let mut queue = VecDeque::from([w.identity()]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if d == max_len {
            continue;
        }
        for s in 0..w.num_gens() {
            let next = w.mul(&cur, w.gen(s));
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}
