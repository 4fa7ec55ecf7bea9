//! Built-in algebras: the affine Hecke algebra of `GL_n` and the affine
//! Yokonuma-Hecke algebra `Y_{d,n}^aff`, with their distinguished elements.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hecke::{Algebra, AlgebraRef, HeckeElem, Params, RT};
use crate::propcox::{ProPGroup, TVec, TorusData};
use crate::rings::{Poly, VarTable};
use crate::weyl::Weyl;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlnMode {
    /// `a`, `b` free; `a` not invertible.
    Universal,
    /// `a = 1`, `b` free.
    A1,
    /// `a` a unit, `b` free.
    Laurent,
}

impl fmt::Display for GlnMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GlnMode::Universal => "universal",
            GlnMode::A1 => "a1",
            GlnMode::Laurent => "laurent",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Gln { n: usize, mode: GlnMode },
    Yokonuma { d: i64, n: usize },
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Gln { n, mode } => write!(f, "gln:{n}:{mode}"),
            Preset::Yokonuma { d, n } => write!(f, "yokonuma:{d}:{n}"),
        }
    }
}

/// Parses `gln:<n>:<universal|a1|laurent>` or `yokonuma:<d>:<n>`.
pub fn parse_preset(s: &str) -> Result<Preset> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str, what: &str| -> Result<i64> {
        p.parse::<i64>().map_err(|_| Error::Usage(format!("invalid {what} `{p}` in preset `{s}`")))
    };
    match parts.as_slice() {
        ["gln", n, mode] => {
            let n = num(n, "rank")?;
            if n < 2 {
                return Err(Error::Usage(format!("preset `{s}`: n must be at least 2")));
            }
            let mode = match *mode {
                "universal" => GlnMode::Universal,
                "a1" => GlnMode::A1,
                "laurent" => GlnMode::Laurent,
                other => return Err(Error::Usage(format!("unknown mode `{other}`"))),
            };
            Ok(Preset::Gln { n: n as usize, mode })
        }
        ["yokonuma", d, n] => {
            let d = num(d, "d")?;
            let n = num(n, "n")?;
            if d < 1 || n < 2 {
                return Err(Error::Usage(format!("preset `{s}`: need d >= 1 and n >= 2")));
            }
            Ok(Preset::Yokonuma { d, n: n as usize })
        }
        _ => Err(Error::Usage(format!("unknown preset `{s}`"))),
    }
}

pub fn build(p: Preset) -> Result<AlgebraRef> {
    match p {
        Preset::Gln { n, mode } => affine_hecke_gln(n, mode),
        Preset::Yokonuma { d, n } => yokonuma_aff(d, n),
    }
}

pub fn affine_hecke_gln(n: usize, mode: GlnMode) -> Result<AlgebraRef> {
    let weyl = Weyl::gln(n)?;
    let vars = match mode {
        GlnMode::Universal => VarTable::new(&[("a", false), ("b", false)])?,
        GlnMode::A1 => VarTable::new(&[("b", false)])?,
        GlnMode::Laurent => VarTable::new(&[("a", true), ("b", false)])?,
    };
    let a = match mode {
        GlnMode::A1 => Poly::one(&vars),
        _ => Poly::var(&vars, "a")?,
    };
    let b = Poly::var(&vars, "b")?;
    let k = weyl.num_gens();
    let torus = TorusData::trivial(&weyl);
    let mut b_rt: RT = BTreeMap::new();
    b_rt.insert(torus.zero(), b);
    let params = Params { a: vec![a; k], b: vec![b_rt; k] };
    let sqrt_a = (mode == GlnMode::A1).then(|| vec![Poly::one(&vars); k]);
    let group = ProPGroup::split(weyl, torus);
    let label = Preset::Gln { n, mode }.to_string();
    Ok(Arc::new(Algebra::new(group, vars, params, sqrt_a, &label)?))
}

/// The torus element `k (e_i - e_j)` in `(Z/d)^n` (0-based indices).
fn ratio_power(torus: &TorusData, i: usize, j: usize, k: i64) -> TVec {
    let mut t = torus.zero();
    t[i] += k;
    t[j] -= k;
    torus.normalize(&t).expect("torus dimension")
}

/// `(1/d) Σ_k (t_i/t_j)^k` with coefficient `c`.
fn ratio_average(torus: &TorusData, vars: &Arc<VarTable>, i: usize, j: usize, c: &Poly) -> RT {
    let d = torus.moduli[0];
    let scale = c.scale(&BigRational::new(BigInt::from(1), BigInt::from(d)));
    let mut out: RT = BTreeMap::new();
    for k in 0..d {
        let t = ratio_power(torus, i, j, k);
        let e = out.entry(t).or_insert_with(|| Poly::zero(vars));
        *e = &*e + &scale;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn yokonuma_aff(d: i64, n: usize) -> Result<AlgebraRef> {
    if d < 1 {
        return Err(Error::Usage("d must be positive".into()));
    }
    let weyl = Weyl::gln(n)?;
    let vars = VarTable::new(&[("u", true), ("v", false)])?;
    let u = Poly::var(&vars, "u")?;
    let v = Poly::var(&vars, "v")?;
    let torus = TorusData::permutation(&weyl, d)?;
    let k = weyl.num_gens();
    let mut b = Vec::with_capacity(k);
    for s in 0..k {
        // s_i swaps coordinates i-1 and i (0-based); s₀ pairs t_n with t_1
        let (i, j) = if s == 0 { (n - 1, 0) } else { (s - 1, s) };
        b.push(ratio_average(&torus, &vars, i, j, &v));
    }
    let a = &u * &u;
    let params = Params { a: vec![a; k], b };
    let group = ProPGroup::split(weyl, torus);
    let label = Preset::Yokonuma { d, n }.to_string();
    Ok(Arc::new(Algebra::new(group, vars, params, Some(vec![u; k]), &label)?))
}

fn yokonuma_data(alg: &Algebra) -> Result<(i64, usize)> {
    let torus = &alg.group.torus;
    if torus.dim() == 0 || !alg.weyl().is_gln() || torus.dim() != alg.weyl().rank() {
        return Err(Error::Usage(format!("`{}` is not a Yokonuma context", alg.label)));
    }
    Ok((torus.moduli[0], torus.dim()))
}

/// `e_i = (1/d) Σ_k (t_i/t_{i+1})^k` for `1 ≤ i < n`.
pub fn e_idempotent(alg: &Algebra, i: usize) -> Result<HeckeElem> {
    let (_, n) = yokonuma_data(alg)?;
    if i == 0 || i >= n {
        return Err(Error::Usage(format!("e_i needs 1 <= i < {n}")));
    }
    let rt = ratio_average(&alg.group.torus, &alg.vars, i - 1, i, &Poly::one(&alg.vars));
    Ok(alg.from_rt(&rt))
}

/// `T_{t_j}` for the unit vector `t_j` (1-based).
pub fn torus_generator(alg: &Algebra, j: usize) -> Result<HeckeElem> {
    let (_, n) = yokonuma_data(alg)?;
    if j == 0 || j > n {
        return Err(Error::Usage(format!("t_j needs 1 <= j <= {n}")));
    }
    let mut t = alg.group.torus.zero();
    t[j - 1] = 1;
    Ok(alg.basis(alg.group.from_torus(alg.group.torus.normalize(&t)?)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JmVariant {
    Finite,
    Affine,
}

fn require_gln(alg: &Algebra) -> Result<usize> {
    if !alg.weyl().is_gln() {
        return Err(Error::Usage(format!("`{}` is not built on GL_n", alg.label)));
    }
    Ok(alg.weyl().rank())
}

/// `X₁ = T_{τ^{-e₁}}⁻¹`.
pub fn x1(alg: &Algebra) -> Result<HeckeElem> {
    let n = require_gln(alg)?;
    let mut e = vec![0; n];
    e[0] = -1;
    alg.inv_basis(&alg.group.from_weyl(alg.weyl().translation(&e)))
        .map_err(|_| Error::Usage(format!("`{}` is not a Laurent context", alg.label)))
}

/// `J₁ = 1` (finite) or `X₁` (affine), and `J_{i+1} = T_{s_i} J_i T_{s_i}`.
pub fn jucys_murphy(alg: &Algebra, i: usize, variant: JmVariant) -> Result<HeckeElem> {
    let n = require_gln(alg)?;
    if i == 0 || i > n {
        return Err(Error::Usage(format!("J_i needs 1 <= i <= {n}")));
    }
    let mut j = match variant {
        JmVariant::Finite => alg.one(),
        JmVariant::Affine => x1(alg)?,
    };
    for s in 1..i {
        let t = alg.gen(s);
        j = alg.mul(&alg.mul(&t, &j), &t);
    }
    Ok(j)
}

/// The projection `π: H^aff → H` with `X₁ ↦ 1`, via the braid-group rewriting
/// `T_u ↦ T_{s_{n-1}} ⋯ T_{s_1} X₁` and `T_{s₀} ↦ Ψ(T_u) T_{s_1} Ψ(T_u)⁻¹`.
pub struct Projection<'a> {
    alg: &'a Algebra,
    p: HeckeElem,
    p_inv: HeckeElem,
    s0: HeckeElem,
}

impl<'a> Projection<'a> {
    pub fn new(alg: &'a Algebra) -> Result<Self> {
        let n = require_gln(alg)?;
        let non_laurent = |_| Error::Usage(format!("`{}` is not a Laurent context", alg.label));
        let mut p = alg.one();
        let mut p_inv = alg.one();
        for s in (1..n).rev() {
            p = alg.mul(&p, &alg.gen(s));
        }
        for s in 1..n {
            p_inv = alg.mul(&p_inv, &alg.inv_generator(s).map_err(non_laurent)?);
        }
        let s0 = alg.mul(&alg.mul(&p, &alg.gen(1)), &p_inv);
        Ok(Projection { alg, p, p_inv, s0 })
    }

    fn image_gen(&self, s: usize) -> HeckeElem {
        if s == 0 {
            self.s0.clone()
        } else {
            self.alg.gen(s)
        }
    }

    pub fn apply(&self, h: &HeckeElem) -> Result<HeckeElem> {
        let alg = self.alg;
        let w = alg.weyl();
        let mut out = alg.zero();
        for (g, c) in &h.terms {
            let (word, omega) = alg.decompose(g)?;
            let (_, m) = w.omega_decompose(&omega.w)?;
            let mut img = alg.one();
            for &s in &word {
                img = alg.mul(&img, &self.image_gen(s));
            }
            img = alg.mul(&img, &alg.basis(alg.group.from_torus(omega.t.clone())));
            let step = if m >= 0 { &self.p } else { &self.p_inv };
            for _ in 0..m.unsigned_abs() {
                img = alg.mul(&img, step);
            }
            out.add_assign(&img.scale(c));
        }
        Ok(out)
    }
}

pub fn pi_to_finite(alg: &Algebra, h: &HeckeElem) -> Result<HeckeElem> {
    Projection::new(alg)?.apply(h)
}
