//! The generic pro-p Hecke algebra `H⁽¹⁾(a,b)` in its Iwahori-Matsumoto basis.
//!
//! Products are computed by peeling a reduced word of the left factor and
//! applying `T_{n_s}` one generator at a time.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::propcox::{ProPElem, ProPGroup, TVec};
use crate::rings::{Poly, VarTable};
use crate::weyl::{WElem, Weyl};

/// An element of `R[T]`.
pub type RT = BTreeMap<TVec, Poly>;

#[derive(Clone, Debug)]
pub struct Params {
    /// `a_s` for each generator (index 0 is `s₀`).
    pub a: Vec<Poly>,
    /// `b_s ∈ R[T]` for each generator.
    pub b: Vec<RT>,
}

/// A finite `R`-linear combination of basis elements `T_g`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeckeElem {
    pub terms: BTreeMap<ProPElem, Poly>,
}

impl HeckeElem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &ProPElem) -> Option<&Poly> {
        self.terms.get(g)
    }

    pub fn support(&self) -> impl Iterator<Item = &ProPElem> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, g: ProPElem, c: &Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c.clone());
            }
        }
    }

    /// `self += c · T_g` without cloning `c` when possible.
    pub fn add_scaled_term(&mut self, g: ProPElem, c: &Poly, x: &Poly) {
        if c.is_zero() || x.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(e) => {
                e.add_scaled(c, x);
                if e.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c * x);
            }
        }
    }

    pub fn add_assign(&mut self, other: &HeckeElem) {
        for (g, c) in &other.terms {
            self.add_term(g.clone(), c);
        }
    }

    pub fn add(&self, other: &HeckeElem) -> HeckeElem {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &HeckeElem) -> HeckeElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HeckeElem {
        HeckeElem { terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Poly) -> HeckeElem {
        let mut out = HeckeElem::default();
        if c.is_zero() {
            return out;
        }
        for (g, x) in &self.terms {
            let p = c * x;
            if !p.is_zero() {
                out.terms.insert(g.clone(), p);
            }
        }
        out
    }
}

#[derive(Debug)]
pub struct Algebra {
    pub group: ProPGroup,
    pub vars: Arc<VarTable>,
    pub params: Params,
    /// `√a_s` when the normalized Bernstein map is available.
    pub sqrt_a: Option<Vec<Poly>>,
    pub classes: Vec<usize>,
    pub label: String,
}

pub type AlgebraRef = Arc<Algebra>;

impl Algebra {
    pub fn new(group: ProPGroup, vars: Arc<VarTable>, params: Params, sqrt_a: Option<Vec<Poly>>, label: &str) -> Result<Self> {
        let k = group.weyl.num_gens();
        if params.a.len() != k || params.b.len() != k {
            return Err(Error::Usage(format!("parameters for {} generators expected", k)));
        }
        if let Some(r) = &sqrt_a {
            for (s, q) in r.iter().enumerate() {
                if (q * q) != params.a[s] {
                    return Err(Error::Usage(format!("sqrt_a for generator {s} does not square to a")));
                }
            }
        }
        let classes = group.weyl.gen_classes()?;
        Ok(Algebra { group, vars, params, sqrt_a, classes, label: label.to_string() })
    }

    pub fn weyl(&self) -> &Weyl {
        &self.group.weyl
    }

    pub fn zero(&self) -> HeckeElem {
        HeckeElem::default()
    }

    pub fn poly_one(&self) -> Poly {
        Poly::one(&self.vars)
    }

    pub fn one(&self) -> HeckeElem {
        self.basis(self.group.identity())
    }

    pub fn basis(&self, g: ProPElem) -> HeckeElem {
        let mut h = HeckeElem::default();
        h.terms.insert(g, self.poly_one());
        h
    }

    pub fn basis_w(&self, w: WElem) -> HeckeElem {
        self.basis(self.group.from_weyl(w))
    }

    pub fn gen(&self, s: usize) -> HeckeElem {
        self.basis(self.group.lift(s))
    }

    pub fn scalar(&self, c: Poly) -> HeckeElem {
        let mut h = HeckeElem::default();
        h.add_term(self.group.identity(), &c);
        h
    }

    /// `Σ_t b(t) T_t`.
    pub fn from_rt(&self, b: &RT) -> HeckeElem {
        let mut h = HeckeElem::default();
        for (t, c) in b {
            h.add_term(self.group.from_torus(t.clone()), c);
        }
        h
    }

    pub fn a_class(&self, class: usize) -> &Poly {
        let s = self.classes.iter().position(|&c| c == class).expect("class index");
        &self.params.a[s]
    }

    pub fn a_by_class(&self) -> Vec<Poly> {
        let n = self.classes.iter().max().map_or(0, |m| m + 1);
        (0..n).map(|c| self.a_class(c).clone()).collect()
    }

    pub fn sqrt_a_by_class(&self) -> Option<Vec<Poly>> {
        let r = self.sqrt_a.as_ref()?;
        let n = self.classes.iter().max().map_or(0, |m| m + 1);
        Some((0..n).map(|c| r[self.classes.iter().position(|&x| x == c).unwrap()].clone()).collect())
    }

    /// `b · h` for `b ∈ R[T]`.
    pub fn rt_left(&self, b: &RT, h: &HeckeElem) -> HeckeElem {
        let mut out = HeckeElem::default();
        for (t, c) in b {
            let tg = self.group.from_torus(t.clone());
            for (g, x) in &h.terms {
                out.add_scaled_term(self.group.mul(&tg, g), c, x);
            }
        }
        out
    }

    /// `T_{n_s} · h`.
    pub fn left_gen(&self, s: usize, h: &HeckeElem) -> HeckeElem {
        let w = self.weyl();
        let ns = self.group.lift(s);
        let a = &self.params.a[s];
        let b = &self.params.b[s];
        let mut out = HeckeElem::default();
        for (y, c) in &h.terms {
            let nsy = self.group.mul(&ns, y);
            if !w.is_left_descent(s, &y.w) {
                out.add_term(nsy, c);
            } else {
                out.add_scaled_term(nsy, a, c);
                for (t, bt) in b {
                    let ty = self.group.mul(&self.group.from_torus(t.clone()), y);
                    out.add_scaled_term(ty, bt, c);
                }
            }
        }
        out
    }

    /// `T_g · h` for a length-zero `g`.
    pub fn left_length_zero(&self, g: &ProPElem, h: &HeckeElem) -> HeckeElem {
        HeckeElem { terms: h.terms.iter().map(|(y, c)| (self.group.mul(g, y), c.clone())).collect() }
    }

    /// `g = n_{s_1} ⋯ n_{s_r} · ω̃` with `ω̃` of length zero.
    pub fn decompose(&self, g: &ProPElem) -> Result<(Vec<usize>, ProPElem)> {
        let red = self.weyl().reduced_word(&g.w)?;
        let p = self.group.word_lift(&red.word);
        let omega = self.group.mul(&self.group.inv(&p), g);
        Ok((red.word, omega))
    }

    /// `T_g · h`.
    pub fn left_basis(&self, g: &ProPElem, h: &HeckeElem) -> HeckeElem {
        let (word, omega) = self.decompose(g).expect("reduced word");
        let mut cur = self.left_length_zero(&omega, h);
        for &s in word.iter().rev() {
            cur = self.left_gen(s, &cur);
        }
        cur
    }

    pub fn mul(&self, x: &HeckeElem, y: &HeckeElem) -> HeckeElem {
        let mut out = HeckeElem::default();
        for (g, c) in &x.terms {
            let prod = self.left_basis(g, y);
            for (k, v) in &prod.terms {
                out.add_scaled_term(k.clone(), c, v);
            }
        }
        out
    }

    pub fn mul_many(&self, xs: &[&HeckeElem]) -> HeckeElem {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn commutator(&self, x: &HeckeElem, y: &HeckeElem) -> HeckeElem {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    pub fn a_inv(&self, s: usize) -> Result<Poly> {
        self.params.a[s]
            .inv_monomial()
            .map_err(|_| Error::NonInvertible(format!("non-invertible parameter a for generator {s}")))
    }

    /// `T_{n_s}⁻¹ = a_s⁻¹ (T_{n_s⁻¹} - b_s T_{n_s⁻²})`.
    pub fn inv_generator(&self, s: usize) -> Result<HeckeElem> {
        let ai = self.a_inv(s)?;
        let ns_inv = self.group.inv(&self.group.lift(s));
        let ns_inv2 = self.group.mul(&ns_inv, &ns_inv);
        let first = self.basis(ns_inv);
        let second = self.rt_left(&self.params.b[s], &self.basis(ns_inv2));
        Ok(first.sub(&second).scale(&ai))
    }

    /// `T_g⁻¹`, a product of generator inverses.
    pub fn inv_basis(&self, g: &ProPElem) -> Result<HeckeElem> {
        let (word, omega) = self.decompose(g)?;
        let mut cur = self.basis(self.group.inv(&omega));
        for &s in word.iter().rev() {
            cur = self.mul(&cur, &self.inv_generator(s)?);
        }
        Ok(cur)
    }

    pub fn check_vars(&self, p: &Poly) -> Result<()> {
        if **p.vars() != *self.vars {
            return Err(Error::Usage("coefficient over a different variable table".into()));
        }
        Ok(())
    }

    /// Clause-by-clause parameter validation with witnesses.
    pub fn validate_params(&self, search_len: usize) -> Result<ParamReport> {
        let w = self.weyl();
        let torus = &self.group.torus;
        let mut failures = Vec::new();
        for s in 0..w.num_gens() {
            for t in 0..w.num_gens() {
                if self.classes[s] == self.classes[t] && self.params.a[s] != self.params.a[t] {
                    failures.push(format!("clause (i): a differs on conjugate generators {s} and {t}"));
                }
            }
        }
        for s in 0..w.num_gens() {
            let sw = w.gen(s).w;
            for t in torus.generators() {
                let shift = torus.add(&torus.act(sw, &t), &torus.neg(&t));
                if rt_shift(torus, &shift, &self.params.b[s]) != self.params.b[s] {
                    return Ok(ParamReport::fail(failures, format!(
                        "clause (ii): s(t)t^-1 b_s != b_s for generator {s}, t = {:?}",
                        t.as_slice()
                    )));
                }
            }
        }
        let probe = w.ball(search_len, &w.small_omegas(1)?);
        for s in 0..w.num_gens() {
            for t in 0..w.num_gens() {
                for v in &probe {
                    if w.conj(v, w.gen(t)) != *w.gen(s) {
                        continue;
                    }
                    // (n_s v n_t⁻¹ v⁻¹) · v(b_t) = b_s
                    let vp = self.group.from_weyl(v.clone());
                    let c = self.group.mul(
                        &self.group.mul(&self.group.lift(s), &vp),
                        &self.group.mul(&self.group.inv(&self.group.lift(t)), &self.group.inv(&vp)),
                    );
                    let moved = rt_shift(torus, &c.t, &rt_act(torus, v.w, &self.params.b[t]));
                    if moved != self.params.b[s] {
                        failures.push(format!(
                            "clause (iii): transport of b_{t} to b_{s} fails via x={:?} w0={}",
                            v.x.as_slice(),
                            v.w
                        ));
                    }
                }
            }
        }
        Ok(ParamReport { ok: failures.is_empty(), failures })
    }

    /// `T_h · T_{n_s}`, the right-peeling counterpart of [`Algebra::left_gen`].
    pub fn right_gen(&self, h: &HeckeElem, s: usize) -> HeckeElem {
        let w = self.weyl();
        let ns = self.group.lift(s);
        let mut out = HeckeElem::default();
        for (y, c) in &h.terms {
            let yns = self.group.mul(y, &ns);
            if !w.is_right_descent(&y.w, s) {
                out.add_term(yns, c);
            } else {
                out.add_scaled_term(yns, &self.params.a[s], c);
                for (t, bt) in &self.params.b[s] {
                    out.add_scaled_term(self.group.mul(y, &self.group.from_torus(t.clone())), bt, c);
                }
            }
        }
        out
    }

    /// Product computed by peeling the right factor instead of the left one.
    pub fn mul_right_peel(&self, x: &HeckeElem, y: &HeckeElem) -> HeckeElem {
        let mut out = HeckeElem::default();
        for (g, c) in &y.terms {
            let (word, omega) = self.decompose(g).expect("reduced word");
            let mut cur = x.clone();
            for &s in &word {
                cur = self.right_gen(&cur, s);
            }
            let cur = HeckeElem { terms: cur.terms.into_iter().map(|(k, v)| (self.group.mul(&k, &omega), v)).collect() };
            for (k, v) in &cur.terms {
                out.add_scaled_term(k.clone(), c, v);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ParamReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

impl ParamReport {
    fn fail(mut failures: Vec<String>, msg: String) -> Self {
        failures.push(msg);
        ParamReport { ok: false, failures }
    }
}

/// `Σ b(t) T_{c+t}`.
pub fn rt_shift(torus: &crate::propcox::TorusData, c: &[i64], b: &RT) -> RT {
    b.iter().map(|(t, v)| (torus.add(c, t), v.clone())).collect()
}

/// `w(b)` for the `W₀` index `w`.
pub fn rt_act(torus: &crate::propcox::TorusData, w: u32, b: &RT) -> RT {
    b.iter().map(|(t, v)| (torus.act(w, t), v.clone())).collect()
}

pub fn rt_scale(b: &RT, c: &Poly) -> RT {
    b.iter().map(|(t, v)| (t.clone(), v * c)).filter(|(_, v)| !v.is_zero()).collect()
}
