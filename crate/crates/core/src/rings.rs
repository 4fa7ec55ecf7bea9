//! Multivariate Laurent polynomials with rational coefficients.
//!
//! Every polynomial carries the [`VarTable`] it lives over. Variables flagged
//! as units may appear with negative exponents; all others may not.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Exp = SmallVec<[i32; 4]>;

/// Ordered variable names with a per-variable unit flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    units: Vec<bool>,
}

impl VarTable {
    pub fn new(vars: &[(&str, bool)]) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(vars.len());
        let mut units = Vec::with_capacity(vars.len());
        for (name, unit) in vars {
            if !is_ident(name) {
                return Err(Error::Usage(format!("invalid variable name `{name}`")));
            }
            if names.iter().any(|n: &String| n == name) {
                return Err(Error::Usage(format!("duplicate variable `{name}`")));
            }
            names.push(name.to_string());
            units.push(*unit);
        }
        Ok(Arc::new(VarTable { names, units }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_unit(&self, i: usize) -> bool {
        self.units[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A Laurent polynomial in canonical form: no zero coefficients are stored.
#[derive(Clone, Debug)]
pub struct Poly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Exp, Rat>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(zero_exp(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &Arc<VarTable>, c: i64) -> Self {
        Self::constant(vars, Rat::from_integer(BigInt::from(c)))
    }

    /// `name^e`; negative `e` requires a unit variable.
    pub fn var_pow(vars: &Arc<VarTable>, name: &str, e: i32) -> Result<Self> {
        let i = vars
            .index(name)
            .ok_or_else(|| Error::Usage(format!("unknown variable `{name}`")))?;
        if e < 0 && !vars.is_unit(i) {
            return Err(Error::Usage(format!("variable `{name}` is not a unit")));
        }
        let mut exp = zero_exp(vars.len());
        exp[i] = e;
        let mut p = Self::zero(vars);
        p.terms.insert(exp, Rat::one());
        Ok(p)
    }

    pub fn var(vars: &Arc<VarTable>, name: &str) -> Result<Self> {
        Self::var_pow(vars, name, 1)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn same_table(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(Error::Usage("polynomials over different variable tables".into()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_assign_unchecked(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            add_term(&mut self.terms, e.clone(), c.clone());
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exp = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                add_term(&mut out.terms, e, c1 * c2);
            }
        }
        out
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        self.check_table(other).expect("usage error");
        self.add_assign_unchecked(other);
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Poly, other: &Poly) {
        self.check_table(other).expect("usage error");
        self.check_table(c).expect("usage error");
        if c.terms.len() == 1 {
            let (ce, cc) = c.terms.iter().next().unwrap();
            for (e, x) in &other.terms {
                let e2: Exp = e.iter().zip(ce.iter()).map(|(a, b)| a + b).collect();
                add_term(&mut self.terms, e2, x * cc);
            }
        } else {
            let prod = c.mul_unchecked(other);
            self.add_assign_unchecked(&prod);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.terms.insert(e.clone(), x * c);
        }
        out
    }

    /// Integer power. Negative powers exist only for monomials in unit variables.
    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv_monomial()?.pow(-k);
        }
        let mut out = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(out)
    }

    /// Inverse of `c * m` where `m` is a monomial in unit variables.
    pub fn inv_monomial(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NonInvertible(format!("`{self}` is not a monomial")));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        for (i, &x) in e.iter().enumerate() {
            if x != 0 && !self.vars.is_unit(i) {
                return Err(Error::NonInvertible(format!(
                    "variable `{}` is not a unit",
                    self.vars.name(i)
                )));
            }
        }
        let mut out = Self::zero(&self.vars);
        out.terms.insert(e.iter().map(|x| -x).collect(), c.recip());
        Ok(out)
    }

    /// Ring homomorphism into `target` sending each variable to its assigned image.
    pub fn specialize(&self, target: &Arc<VarTable>, assignment: &BTreeMap<String, Poly>) -> Result<Poly> {
        let mut images = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            let name = self.vars.name(i);
            let img = assignment
                .get(name)
                .ok_or_else(|| Error::Usage(format!("variable `{name}` not assigned")))?;
            if !(Arc::ptr_eq(img.vars(), target) || **img.vars() == **target) {
                return Err(Error::Usage(format!("image of `{name}` lives over another table")));
            }
            images.push(img.clone());
        }
        let mut inverses: Vec<Option<Poly>> = vec![None; self.vars.len()];
        for i in 0..self.vars.len() {
            if self.vars.is_unit(i) {
                let inv = images[i].inv_monomial().map_err(|_| {
                    Error::NonInvertible(format!(
                        "non-invertible specialization of `{}`",
                        self.vars.name(i)
                    ))
                })?;
                inverses[i] = Some(inv);
            }
        }
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                let factor = match x.cmp(&0) {
                    Ordering::Equal => continue,
                    Ordering::Greater => images[i].pow(x)?,
                    Ordering::Less => inverses[i].as_ref().unwrap().pow(-x)?,
                };
                term = term.mul_unchecked(&factor);
            }
            out.add_assign_unchecked(&term);
        }
        Ok(out)
    }

    pub fn parse(vars: &Arc<VarTable>, text: &str) -> Result<Poly> {
        Parser { vars, src: text.as_bytes(), pos: 0 }.parse_all()
    }
}

fn zero_exp(n: usize) -> Exp {
    let mut e = Exp::new();
    e.resize(n, 0);
    e
}

fn add_term(terms: &mut BTreeMap<Exp, Rat>, e: Exp, c: Rat) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("usage error")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("usage error")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("usage error")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), x)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    vars: &'a Arc<VarTable>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Poly> {
        let p = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.vars);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc = &acc - &t;
            } else {
                acc = &acc + &t;
            }
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = Rat::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    q /= Rat::from_integer(den);
                }
                Poly::constant(self.vars, q)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let save = self.pos;
                self.pos = start;
                let p = Poly::var(self.vars, name).map_err(|_| self.err(&format!("unknown variable `{name}`")))?;
                self.pos = save;
                p
            }
            _ => return Err(self.err("expected number, variable or `(`")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let k = self.integer()?;
            let k: i32 = i32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            let k = if neg { -k } else { k };
            return base.pow(k).map_err(|e| self.err(&e.to_string()));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<VarTable> {
        VarTable::new(&[("a", false), ("b", false), ("u", true), ("v", false), ("x", false)]).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(&table(), s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
    }

    #[test]
    fn unit_cancels() {
        assert!((&p("u") * &p("u^-1")).is_one());
    }

    #[test]
    fn additive_inverse() {
        assert_eq!(&p("a+b") + &p("-a"), p("b"));
    }

    #[test]
    fn render_round_trip() {
        let q = p("3/2*a^2*b - v");
        assert_eq!(q.to_string(), "3/2*a^2*b - v");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-u^-2 + 1").to_string(), "1 - u^-2");
    }

    #[test]
    fn non_unit_negative_power_rejected() {
        assert!(Poly::parse(&table(), "a^-1").is_err());
        assert!(matches!(Poly::parse(&table(), "a +* b"), Err(Error::Parse { .. })));
    }

    #[test]
    fn mismatched_tables() {
        let other = VarTable::new(&[("q", false)]).unwrap();
        let q = Poly::var(&other, "q").unwrap();
        assert!(p("a").checked_add(&q).is_err());
    }

    #[test]
    fn specialize_examples() {
        let t = table();
        let mut asg = BTreeMap::new();
        for name in ["b", "u", "v", "x"] {
            asg.insert(name.to_string(), Poly::var(&t, name).unwrap());
        }
        asg.insert("a".to_string(), Poly::one(&t));
        assert_eq!(p("a*x + b").specialize(&t, &asg).unwrap(), p("x + b"));

        asg.insert("a".to_string(), p("u^2"));
        assert!(p("a - u^2").specialize(&t, &asg).unwrap().is_zero());

        let q = VarTable::new(&[("q", false)]).unwrap();
        let mut asg = BTreeMap::new();
        asg.insert("a".to_string(), Poly::parse(&q, "q").unwrap());
        asg.insert("b".to_string(), Poly::parse(&q, "q - 1").unwrap());
        for name in ["u", "v", "x"] {
            asg.insert(name.to_string(), Poly::one(&q));
        }
        let image = p("a + b*x").specialize(&q, &asg).unwrap();
        assert_eq!(image, Poly::parse(&q, "2*q - 1").unwrap());
    }

    #[test]
    fn unit_needs_unit_image() {
        let t = table();
        let mut asg = BTreeMap::new();
        for name in ["a", "b", "v", "x"] {
            asg.insert(name.to_string(), Poly::var(&t, name).unwrap());
        }
        asg.insert("u".to_string(), p("a + 1"));
        let err = p("u").specialize(&t, &asg).unwrap_err();
        assert!(err.to_string().contains("non-invertible specialization"));
    }
}
