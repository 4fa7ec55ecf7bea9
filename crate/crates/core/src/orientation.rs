//! Orientations of `W` and the hyperplane multisets `γ_o`, `L` and `X`.
//!
//! Every orientation here is determined by a choice of positive half-space
//! for each wall: `o(w,s) = +1` exactly when `ws(C₀)` lies on the positive
//! side of `w(H_s)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rings::Poly;
use crate::rootdata::FiniteWeyl;
use crate::weyl::{HyperplaneId, WElem, Weyl};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrientationKind {
    /// Orientation towards the alcove `c(C₀)`.
    Chamber(WElem),
    /// Orientation attached to the Weyl chamber `d(D₀)`, by `W₀` index.
    Spherical(u32),
}

/// Shifts `o•g` are normalized into the kind, so no explicit shift is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub kind: OrientationKind,
    pub opposite: bool,
}

impl Orientation {
    pub fn chamber(c: WElem) -> Self {
        Orientation { kind: OrientationKind::Chamber(c), opposite: false }
    }

    pub fn spherical(d: u32) -> Self {
        Orientation { kind: OrientationKind::Spherical(d), opposite: false }
    }

    pub fn dominant() -> Self {
        Self::spherical(0)
    }

    pub fn opposite(&self) -> Self {
        Orientation { kind: self.kind.clone(), opposite: !self.opposite }
    }

    pub fn is_spherical(&self) -> bool {
        matches!(self.kind, OrientationKind::Spherical(_))
    }

    /// `+1` if the positive half-space of `H_{α,k}` is `{α + k > 0}`.
    pub fn positive_sign(&self, weyl: &Weyl, h: HyperplaneId) -> i8 {
        let s = match &self.kind {
            OrientationKind::Chamber(c) => weyl.side(c, h),
            OrientationKind::Spherical(d) => weyl.chamber_sign(*d, h.root as usize),
        };
        if self.opposite {
            -s
        } else {
            s
        }
    }

    /// Sign of crossing `H` starting from the alcove `w(C₀)`.
    pub fn eval_h(&self, weyl: &Weyl, w: &WElem, h: HyperplaneId) -> i8 {
        if weyl.side(w, h) == self.positive_sign(weyl, h) {
            -1
        } else {
            1
        }
    }

    pub fn eval(&self, weyl: &Weyl, w: &WElem, s: usize) -> i8 {
        self.eval_h(weyl, w, weyl.hyperplane_action(w, weyl.gen_wall(s)))
    }

    /// `o•g`, defined by `(o•g)(w,s) = o(gw,s)`.
    pub fn act(&self, weyl: &Weyl, g: &WElem) -> Self {
        let kind = match &self.kind {
            OrientationKind::Chamber(c) => OrientationKind::Chamber(weyl.mul(&weyl.inv(g), c)),
            OrientationKind::Spherical(d) => {
                OrientationKind::Spherical(weyl.w0.mul[weyl.w0.inv[g.w as usize] as usize][*d as usize])
            }
        };
        Orientation { kind, opposite: self.opposite }
    }

    /// `γ_o(w)`: walls separating `1` and `w` that are crossed negatively.
    pub fn gamma(&self, weyl: &Weyl, w: &WElem) -> FormalMultiset {
        let one = weyl.identity();
        let mut m = FormalMultiset::default();
        for h in weyl.separating(&one, w) {
            if self.eval_h(weyl, &one, h) < 0 {
                m.add(h, 1);
            }
        }
        m
    }

    /// `γ_o(w)` read off a given reduced word of the affine part of `w`.
    pub fn gamma_along(&self, weyl: &Weyl, word: &[usize]) -> FormalMultiset {
        let mut m = FormalMultiset::default();
        let mut prefix = weyl.identity();
        for &s in word {
            if self.eval(weyl, &prefix, s) < 0 {
                m.add(weyl.hyperplane_action(&prefix, weyl.gen_wall(s)), 1);
            }
            prefix = weyl.mul(&prefix, weyl.gen(s));
        }
        m
    }

    /// Spec-string form: `chamber:<json>` or `spherical:<perm>`, with `.op`.
    pub fn describe(&self, weyl: &Weyl) -> String {
        let base = match &self.kind {
            OrientationKind::Chamber(c) => {
                format!("chamber:{}", crate::json::welem_to_json(weyl, c))
            }
            OrientationKind::Spherical(d) => match weyl.w0.to_perm(*d) {
                Some(p) => format!("spherical:{}", serde_json::to_string(&p).unwrap()),
                None => format!("spherical:#{d}"),
            },
        };
        if self.opposite {
            format!("{base}.op")
        } else {
            base
        }
    }
}

impl fmt::Display for OrientationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrientationKind::Chamber(c) => write!(f, "chamber({:?}, {})", c.x.as_slice(), c.w),
            OrientationKind::Spherical(d) => write!(f, "spherical({d})"),
        }
    }
}

/// Finite multiset of walls.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalMultiset {
    pub counts: BTreeMap<HyperplaneId, u32>,
}

impl FormalMultiset {
    pub fn from_walls<'a>(walls: impl IntoIterator<Item = &'a HyperplaneId>) -> Self {
        let mut m = Self::default();
        for h in walls {
            m.add(*h, 1);
        }
        m
    }

    pub fn add(&mut self, h: HyperplaneId, c: u32) {
        if c > 0 {
            *self.counts.entry(h).or_insert(0) += c;
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (h, c) in &other.counts {
            m.add(*h, *c);
        }
        m
    }

    pub fn scaled(&self, k: u32) -> Self {
        FormalMultiset { counts: self.counts.iter().filter(|_| k > 0).map(|(h, c)| (*h, c * k)).collect() }
    }

    /// Image under `w`.
    pub fn act(&self, weyl: &Weyl, w: &WElem) -> Self {
        let mut m = Self::default();
        for (h, c) in &self.counts {
            m.add(weyl.hyperplane_action(w, *h), *c);
        }
        m
    }

    pub fn len(&self) -> usize {
        self.counts.values().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Collapse walls to generator classes: class index → multiplicity.
    pub fn collapse(&self, weyl: &Weyl, classes: &[usize]) -> Result<BTreeMap<usize, u32>> {
        let mut out = BTreeMap::new();
        for (h, c) in &self.counts {
            let (_, s) = weyl.presentation(*h)?;
            *out.entry(classes[s]).or_insert(0) += c;
        }
        Ok(out)
    }

    /// `∏ a_{[H]}^{mult}` with `a` given per generator class.
    pub fn bar(&self, weyl: &Weyl, classes: &[usize], a: &[Poly]) -> Result<Poly> {
        let Some(first) = a.first() else {
            return Err(Error::Usage("empty parameter list".into()));
        };
        let mut out = Poly::one(first.vars());
        for (class, c) in self.collapse(weyl, classes)? {
            let p = a.get(class).ok_or_else(|| Error::Usage(format!("no parameter for class {class}")))?;
            out = &out * &p.pow(c as i32)?;
        }
        Ok(out)
    }
}

/// `L(w)`: the walls separating `1` and `w`.
pub fn big_l(weyl: &Weyl, w: &WElem) -> FormalMultiset {
    FormalMultiset::from_walls(&weyl.separating(&weyl.identity(), w))
}

/// `X(w,w')`: walls separating `1` from `w` and `w` from `ww'`.
pub fn big_x(weyl: &Weyl, w: &WElem, w2: &WElem) -> FormalMultiset {
    FormalMultiset::from_walls(&weyl.double_crossings(w, w2))
}

/// Checks that `o•s_H` agrees with `o'` on `probe` for every wall `H` in
/// `sep(1,w)` where `o` and `o'` disagree.
pub fn adjacent_on(weyl: &Weyl, o: &Orientation, o2: &Orientation, w: &WElem, probe: &[WElem]) -> bool {
    let one = weyl.identity();
    for h in weyl.separating(&one, w) {
        if o.eval_h(weyl, &one, h) == o2.eval_h(weyl, &one, h) {
            continue;
        }
        let moved = o.act(weyl, &weyl.reflection(h));
        if !agree_on(weyl, &moved, o2, probe) {
            return false;
        }
    }
    true
}

/// Pointwise agreement on `probe × S`.
pub fn agree_on(weyl: &Weyl, a: &Orientation, b: &Orientation, probe: &[WElem]) -> bool {
    probe
        .iter()
        .all(|v| (0..weyl.num_gens()).all(|s| a.eval(weyl, v, s) == b.eval(weyl, v, s)))
}

/// OR2 at `w` for the pair `(s,t)` of finite order `m`.
pub fn or2_holds<E: Clone>(
    eval: impl Fn(&E, usize) -> i8,
    mul: impl Fn(&E, usize) -> E,
    w: &E,
    s: usize,
    t: usize,
    m: usize,
) -> bool {
    let seq = |first: usize, second: usize| -> Vec<i8> {
        let mut cur = w.clone();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let g = if i % 2 == 0 { first } else { second };
            out.push(eval(&cur, g));
            cur = mul(&cur, g);
        }
        out
    };
    or2_pattern(&seq(s, t), &seq(t, s))
}

/// `(a, b)` is `(+^k -^{m-k}, -^{m-k} +^k)` or `(-^k +^{m-k}, +^{m-k} -^k)`.
pub fn or2_pattern(a: &[i8], b: &[i8]) -> bool {
    let m = a.len();
    (0..=m).any(|k| {
        let pat = |first: i8, second: i8, split: usize, i: usize| if i < split { first } else { second };
        let p1 = (0..m).all(|i| a[i] == pat(1, -1, k, i) && b[i] == pat(-1, 1, m - k, i));
        let p2 = (0..m).all(|i| a[i] == pat(-1, 1, k, i) && b[i] == pat(1, -1, m - k, i));
        p1 || p2
    })
}

/// An orientation of a finite Coxeter group as a table `(w, s) ↦ ±1`.
pub type FiniteTable = Vec<Vec<i8>>;

/// All `W₀ × S₀ → ±1` satisfying OR1 and OR2, for groups of order at most 6.
pub fn enumerate_finite_orientations(w0: &FiniteWeyl) -> Result<Vec<FiniteTable>> {
    let size = w0.size();
    let gens = &w0.simple_refl;
    let k = gens.len();
    if size * k > 12 {
        return Err(Error::Bound(format!("{size} x {k} table too large to enumerate")));
    }
    // one free bit per OR1 pair {(w,s), (ws,s)}
    let mut reps = Vec::new();
    for w in 0..size {
        for (si, &s) in gens.iter().enumerate() {
            let ws = w0.mul[w][s as usize] as usize;
            if w < ws {
                reps.push((w, si, ws));
            }
        }
    }
    let mut orders = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            let st = w0.mul[gens[i] as usize][gens[j] as usize] as usize;
            let mut cur = st;
            let mut m = 1;
            while cur != 0 {
                cur = w0.mul[cur][st] as usize;
                m += 1;
            }
            orders[i][j] = m;
        }
    }
    let mut out = Vec::new();
    for bits in 0u32..(1 << reps.len()) {
        let mut table = vec![vec![0i8; k]; size];
        for (b, &(w, si, ws)) in reps.iter().enumerate() {
            let v = if bits >> b & 1 == 1 { 1 } else { -1 };
            table[w][si] = v;
            table[ws][si] = -v;
        }
        let eval = |w: &usize, s: usize| table[*w][s];
        let mul = |w: &usize, s: usize| w0.mul[*w][gens[s] as usize] as usize;
        let ok = (0..size).all(|w| {
            (0..k).all(|i| (i + 1..k).all(|j| or2_holds(eval, mul, &w, i, j, orders[i][j])))
        });
        if ok {
            out.push(table);
        }
    }
    Ok(out)
}

/// Chamber orientation of a finite group: `+1` iff `ℓ(c⁻¹ws) < ℓ(c⁻¹w)`.
pub fn finite_chamber_table(w0: &FiniteWeyl, c: usize) -> FiniteTable {
    let ci = w0.inv[c] as usize;
    (0..w0.size())
        .map(|w| {
            w0.simple_refl
                .iter()
                .map(|&s| {
                    let cw = w0.mul[ci][w] as usize;
                    let cws = w0.mul[cw][s as usize] as usize;
                    if w0.length[cws] < w0.length[cw] {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        })
        .collect()
}

/// The unique `c` with `o(c,s) = -1` for every `s`, if any.
pub fn sink_of(table: &FiniteTable) -> Option<usize> {
    let sinks: Vec<usize> = (0..table.len()).filter(|&w| table[w].iter().all(|&v| v < 0)).collect();
    (sinks.len() == 1).then(|| sinks[0])
}

/// `δ_D`: a translation deep inside the Weyl chamber `d(D₀)`.
pub fn chamber_direction(weyl: &Weyl, d: u32) -> Vec<i64> {
    weyl.w0.apply(d, &weyl.point.numer)
}

/// `Chamber(τ^{N δ_D})`, whose limit as `N → ∞` is the spherical orientation.
pub fn limit_chamber(weyl: &Weyl, d: u32, n: i64) -> Orientation {
    let delta = chamber_direction(weyl, d);
    let x: Vec<i64> = delta.iter().map(|v| v * n).collect();
    Orientation::chamber(weyl.translation(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Weyl;

    #[test]
    fn chamber_one_is_negative() {
        let w = Weyl::gln(3).unwrap();
        let o = Orientation::chamber(w.identity());
        for s in 0..3 {
            assert_eq!(o.eval(&w, &w.identity(), s), -1);
        }
    }

    #[test]
    fn dominant_gl2() {
        let w = Weyl::gln(2).unwrap();
        let o = Orientation::dominant();
        assert_eq!(o.eval(&w, &w.identity(), 1), -1);
        assert_eq!(o.eval(&w, w.gen(1), 1), 1);
        assert_eq!(o.eval(&w, &w.identity(), 0), 1);
    }

    #[test]
    fn act_matches_shift() {
        let w = Weyl::gln(3).unwrap();
        let ball = w.ball(3, &w.small_omegas(1).unwrap());
        let os = [Orientation::dominant(), Orientation::spherical(3), Orientation::chamber(w.gen(2).clone()).opposite()];
        for o in &os {
            for g in ball.iter().take(20) {
                let moved = o.act(&w, g);
                for v in &ball {
                    for s in 0..3 {
                        assert_eq!(moved.eval(&w, v, s), o.eval(&w, &w.mul(g, v), s));
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let w = Weyl::gln(2).unwrap();
        assert!(Orientation::dominant().gamma(&w, &w.identity()).is_empty());
        let c1 = Orientation::chamber(w.identity());
        let g = c1.gamma(&w, w.gen(1));
        assert_eq!(g, FormalMultiset::from_walls(&[HyperplaneId { root: 0, k: 0 }]));
        let t = w.translation(&[-1, 1]);
        let o = Orientation::dominant();
        assert_eq!(o.gamma(&w, &t), o.gamma_along(&w, &[0, 1]));
    }

    #[test]
    fn bar_of_square() {
        let w = Weyl::gln(2).unwrap();
        let vars = crate::rings::VarTable::new(&[("a", true)]).unwrap();
        let a = Poly::var(&vars, "a").unwrap();
        let s1 = w.gen(1).clone();
        let classes = w.gen_classes().unwrap();
        assert_eq!(big_x(&w, &s1, &s1).bar(&w, &classes, std::slice::from_ref(&a)).unwrap(), a);
    }

    #[test]
    fn adjacency_examples() {
        let w = Weyl::gln(2).unwrap();
        let probe = w.ball(5, &w.small_omegas(1).unwrap());
        let o = Orientation::dominant();
        let o2 = o.act(&w, w.gen(1));
        for v in w.affine_ball(4) {
            assert!(adjacent_on(&w, &o, &o, &v, &probe));
            assert!(adjacent_on(&w, &o, &o2, &v, &probe));
        }
        let c1 = Orientation::chamber(w.identity());
        assert!(!adjacent_on(&w, &o, &c1, &w.translation(&[-1, 1]), &probe));
    }

    #[test]
    fn finite_enumeration() {
        for (n, count) in [(2, 2), (3, 6)] {
            let w = Weyl::gln(n).unwrap();
            let tables = enumerate_finite_orientations(&w.w0).unwrap();
            assert_eq!(tables.len(), count);
            for t in &tables {
                let c = sink_of(t).unwrap();
                assert_eq!(*t, finite_chamber_table(&w.w0, c));
            }
        }
    }
}
