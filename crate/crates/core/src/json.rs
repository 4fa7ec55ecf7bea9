//! JSON encodings of elements and orientation spec strings.
//!
//! `WElem`: `{"x":[..],"sigma":[..]}` with `sigma` a 1-based one-line
//! permutation. Non-permutation `W₀` elements use `"w0"`, the matrix rows.
//! `ProPElem` adds `"t"`. `HeckeElem` is `{"terms":[{"coeff":"..","elem":..}]}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{Algebra, HeckeElem};
use crate::orientation::Orientation;
use crate::propcox::{ProPElem, TVec};
use crate::rings::Poly;
use crate::weyl::{WElem, Weyl};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse { pos: 0, msg: msg.into() }
}

pub fn parse_value(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
}

fn int_array(v: &Value, field: &str) -> Result<Vec<i64>> {
    let arr = v
        .get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing array field `{field}`")))?;
    arr.iter()
        .map(|e| e.as_i64().ok_or_else(|| bad(format!("`{field}` must contain integers"))))
        .collect()
}

fn w0_to_value(weyl: &Weyl, w: u32) -> (&'static str, Value) {
    match weyl.w0.to_perm(w) {
        Some(p) => ("sigma", json!(p)),
        None => {
            let n = weyl.rank();
            let m = &weyl.w0.mats[w as usize];
            let rows: Vec<Vec<i64>> = (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect();
            ("w0", json!(rows))
        }
    }
}

fn w0_from_value(weyl: &Weyl, v: &Value) -> Result<u32> {
    if v.get("sigma").is_some() {
        let p = int_array(v, "sigma")?;
        let p: Vec<usize> = p.iter().map(|&k| usize::try_from(k).unwrap_or(0)).collect();
        return weyl.w0.from_perm(&p).map_err(|e| bad(e.to_string()));
    }
    let rows = v.get("w0").and_then(Value::as_array).ok_or_else(|| bad("missing `sigma`"))?;
    let mut flat = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| bad("`w0` must be a matrix"))?;
        for e in r {
            flat.push(e.as_i64().ok_or_else(|| bad("`w0` must contain integers"))?);
        }
    }
    weyl.w0.lookup(&flat).ok_or_else(|| bad("`w0` is not an element of W0"))
}

pub fn welem_to_value(weyl: &Weyl, w: &WElem) -> Value {
    let (k, f) = w0_to_value(weyl, w.w);
    let mut m = serde_json::Map::new();
    m.insert("x".into(), json!(w.x.as_slice()));
    m.insert(k.into(), f);
    Value::Object(m)
}

pub fn welem_to_json(weyl: &Weyl, w: &WElem) -> String {
    welem_to_value(weyl, w).to_string()
}

pub fn welem_from_value(weyl: &Weyl, v: &Value) -> Result<WElem> {
    let x = int_array(v, "x")?;
    if x.len() != weyl.rank() {
        return Err(bad(format!("`x` has length {}, expected {}", x.len(), weyl.rank())));
    }
    let w = w0_from_value(weyl, v)?;
    Ok(WElem { x: x.into_iter().collect(), w })
}

pub fn propp_to_value(alg: &Algebra, g: &ProPElem) -> Value {
    let mut v = welem_to_value(alg.weyl(), &g.w);
    v.as_object_mut().unwrap().insert("t".into(), json!(g.t.as_slice()));
    v
}

/// Missing `t` means the identity of `T`.
pub fn propp_from_value(alg: &Algebra, v: &Value) -> Result<ProPElem> {
    let w = welem_from_value(alg.weyl(), v)?;
    let torus = &alg.group.torus;
    let t: TVec = if v.get("t").is_some() {
        let t = int_array(v, "t")?;
        torus.normalize(&t).map_err(|e| bad(e.to_string()))?
    } else {
        torus.zero()
    };
    Ok(ProPElem { w, t })
}

pub fn propp_from_json(alg: &Algebra, s: &str) -> Result<ProPElem> {
    propp_from_value(alg, &parse_value(s)?)
}

pub fn hecke_to_value(alg: &Algebra, h: &HeckeElem) -> Value {
    let terms: Vec<Value> = h
        .terms
        .iter()
        .map(|(g, c)| json!({"coeff": c.to_string(), "elem": propp_to_value(alg, g)}))
        .collect();
    json!({ "terms": terms })
}

pub fn hecke_from_value(alg: &Algebra, v: &Value) -> Result<HeckeElem> {
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms`"))?;
    let mut h = alg.zero();
    for t in terms {
        let c = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("`coeff` must be a string"))?;
        let c = Poly::parse(&alg.vars, c)?;
        let g = propp_from_value(alg, t.get("elem").ok_or_else(|| bad("missing `elem`"))?)?;
        h.add_term(g, &c);
    }
    Ok(h)
}

pub fn hecke_from_json(alg: &Algebra, s: &str) -> Result<HeckeElem> {
    hecke_from_value(alg, &parse_value(s)?)
}

/// A basis element `{"x":..}` or a combination `{"terms":..}`.
pub fn element_from_json(alg: &Algebra, s: &str) -> Result<HeckeElem> {
    let v = parse_value(s)?;
    if v.get("terms").is_some() {
        hecke_from_value(alg, &v)
    } else {
        Ok(alg.basis(propp_from_value(alg, &v)?))
    }
}

/// Reads one JSON value from the front of `s`, returning it and the rest.
fn leading_value(s: &str, offset: usize) -> Result<(Value, &str)> {
    let mut it = serde_json::Deserializer::from_str(s).into_iter::<Value>();
    match it.next() {
        Some(Ok(v)) => {
            let used = it.byte_offset();
            Ok((v, &s[used..]))
        }
        Some(Err(e)) => Err(Error::Parse { pos: offset + e.column(), msg: e.to_string() }),
        None => Err(Error::Parse { pos: offset, msg: "expected JSON".into() }),
    }
}

/// Parses `chamber:<WElem>`, `spherical:<perm>` or `dominant`, followed by
/// any sequence of `.op` and `.act(<WElem>)`.
pub fn parse_orientation(weyl: &Weyl, spec: &str) -> Result<Orientation> {
    let (mut o, mut rest) = if let Some(r) = spec.strip_prefix("chamber:") {
        let (v, rest) = leading_value(r, 8)?;
        (Orientation::chamber(welem_from_value(weyl, &v)?), rest)
    } else if let Some(r) = spec.strip_prefix("spherical:") {
        let (v, rest) = leading_value(r, 10)?;
        let d = w0_from_value(weyl, &json!({ "sigma": v }))?;
        (Orientation::spherical(d), rest)
    } else if let Some(r) = spec.strip_prefix("dominant") {
        (Orientation::dominant(), r)
    } else {
        return Err(Error::Parse { pos: 0, msg: "expected `chamber:`, `spherical:` or `dominant`".into() });
    };
    loop {
        let pos = spec.len() - rest.len();
        if rest.is_empty() {
            return Ok(o);
        } else if let Some(r) = rest.strip_prefix(".op") {
            o = o.opposite();
            rest = r;
        } else if let Some(r) = rest.strip_prefix(".act(") {
            let (v, r) = leading_value(r, pos + 5)?;
            let g = welem_from_value(weyl, &v)?;
            rest = r.strip_prefix(')').ok_or(Error::Parse { pos: spec.len() - r.len(), msg: "expected `)`".into() })?;
            o = o.act(weyl, &g);
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected `{rest}`") });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{affine_hecke_gln, yokonuma_aff, GlnMode};

    #[test]
    fn element_round_trip() {
        let alg = yokonuma_aff(2, 2).unwrap();
        let g = propp_from_json(&alg, r#"{"t":[1,0],"x":[1,-2],"sigma":[2,1]}"#).unwrap();
        assert_eq!(g.w.w, 1);
        let back = propp_from_value(&alg, &propp_to_value(&alg, &g)).unwrap();
        assert_eq!(back, g);
        let h = alg.mul(&alg.basis(g), &alg.gen(0)).add(&alg.gen(1).scale(&Poly::parse(&alg.vars, "-3/2*u*v").unwrap()));
        let s = hecke_to_value(&alg, &h).to_string();
        assert_eq!(hecke_from_json(&alg, &s).unwrap(), h);
    }

    #[test]
    fn parse_errors_have_positions() {
        let alg = affine_hecke_gln(2, GlnMode::A1).unwrap();
        match propp_from_json(&alg, r#"{"x":[1,0], "sigma":}"#) {
            Err(Error::Parse { pos, .. }) => assert!(pos > 10),
            other => panic!("{other:?}"),
        }
        assert!(propp_from_json(&alg, r#"{"x":[1],"sigma":[1,2]}"#).is_err());
        assert!(propp_from_json(&alg, r#"{"x":[1,0],"sigma":[1,1]}"#).is_err());
    }

    #[test]
    fn orientation_specs() {
        let alg = affine_hecke_gln(3, GlnMode::A1).unwrap();
        let w = alg.weyl();
        let o = parse_orientation(w, "spherical:[2,1,3].op").unwrap();
        assert!(o.opposite && o.is_spherical());
        let c = parse_orientation(w, r#"chamber:{"x":[0,1,0],"sigma":[1,3,2]}"#).unwrap();
        assert_eq!(parse_orientation(w, &c.describe(w)).unwrap(), c);
        let a = parse_orientation(w, r#"dominant.act({"x":[0,0,0],"sigma":[2,1,3]})"#).unwrap();
        assert_eq!(a, Orientation::dominant().act(w, &w.finite(w.w0.from_perm(&[2, 1, 3]).unwrap())));
        assert!(parse_orientation(w, "spherical:[2,1,3].foo").is_err());
        assert!(parse_orientation(w, "nowhere").is_err());
    }
}
