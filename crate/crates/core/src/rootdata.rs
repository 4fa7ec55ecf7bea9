//! Root data on `X = Z^n`, the rational model of the fundamental alcove and
//! the finite Weyl group `W₀` as an explicit multiplication table.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_W0_BOUND: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    pub highest: usize,
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    /// Root datum of `GL_n`: positive roots `e_j - e_i` for `i < j`.
    pub fn gln(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Datum(format!("GL_n needs n >= 2, got {n}")));
        }
        let mut positive_roots = Vec::new();
        let mut simple = Vec::new();
        let mut highest = 0;
        for i in 0..n {
            for j in i + 1..n {
                let mut a = vec![0; n];
                a[j] = 1;
                a[i] = -1;
                if j == i + 1 {
                    simple.push(positive_roots.len());
                }
                if i == 0 && j == n - 1 {
                    highest = positive_roots.len();
                }
                positive_roots.push(a);
            }
        }
        // order simple roots as e_2-e_1, e_3-e_2, ...
        simple.sort_by_key(|&k| positive_roots[k].iter().position(|&c| c == 1));
        Ok(RootDatum { rank: n, coroots: positive_roots.clone(), positive_roots, simple, highest })
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// True if this is the built-in `GL_n` datum (up to root ordering).
    pub fn is_gln(&self) -> bool {
        match RootDatum::gln(self.rank) {
            Ok(g) => g == *self,
            Err(_) => false,
        }
    }

    pub fn root_index(&self, root: &[i64]) -> Option<(usize, i64)> {
        for (i, a) in self.positive_roots.iter().enumerate() {
            if a.as_slice() == root {
                return Some((i, 1));
            }
            if a.iter().zip(root).all(|(x, y)| *x == -*y) {
                return Some((i, -1));
            }
        }
        None
    }

    /// `s_α(x) = x - ⟨α,x⟩α∨` on the lattice.
    pub fn reflect_vec(&self, a: usize, x: &[i64]) -> Vec<i64> {
        let c = dot(&self.positive_roots[a], x);
        x.iter().zip(&self.coroots[a]).map(|(xi, ci)| xi - c * ci).collect()
    }

    /// Reflection applied to a covector: `β ∘ s_α = β - ⟨β,α∨⟩α`.
    pub fn reflect_covec(&self, a: usize, beta: &[i64]) -> Vec<i64> {
        let c = dot(beta, &self.coroots[a]);
        beta.iter().zip(&self.positive_roots[a]).map(|(b, r)| b - c * r).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank;
        if n == 0 {
            return Err(Error::Datum("rank must be positive".into()));
        }
        if self.positive_roots.is_empty() {
            return Err(Error::Datum("no roots".into()));
        }
        if self.positive_roots.len() != self.coroots.len() {
            return Err(Error::Datum("roots and coroots differ in number".into()));
        }
        for (a, c) in self.positive_roots.iter().zip(&self.coroots) {
            if a.len() != n || c.len() != n {
                return Err(Error::Datum("vector length differs from rank".into()));
            }
            if dot(a, c) != 2 {
                return Err(Error::Datum(format!("<{a:?}, {c:?}> != 2")));
            }
        }
        if self.highest >= self.num_positive() || self.simple.iter().any(|&i| i >= self.num_positive()) {
            return Err(Error::Datum("index out of range".into()));
        }
        for i in 0..self.num_positive() {
            for j in 0..self.num_positive() {
                let r = self.reflect_covec(i, &self.positive_roots[j]);
                if self.root_index(&r).is_none() {
                    return Err(Error::Datum(format!("reflection of root {j} by root {i} is not a root")));
                }
                let c = self.reflect_vec(i, &self.coroots[j]);
                if !self.coroots.iter().any(|x| *x == c || x.iter().zip(&c).all(|(p, q)| *p == -*q)) {
                    return Err(Error::Datum(format!("reflection of coroot {j} by root {i} is not a coroot")));
                }
            }
        }
        for a in &self.positive_roots {
            if simple_coefficients(self, a).is_none() {
                return Err(Error::Datum(format!("root {a:?} is not a nonnegative combination of simple roots")));
            }
        }
        let theta = simple_coefficients(self, &self.positive_roots[self.highest]).unwrap();
        for a in &self.positive_roots {
            let c = simple_coefficients(self, a).unwrap();
            if c.iter().zip(&theta).any(|(x, t)| x > t) {
                return Err(Error::Datum("datum is not irreducible (no single highest root)".into()));
            }
        }
        Ok(())
    }
}

/// Coefficients of `a` in the simple roots, if they exist and are nonnegative integers.
pub fn simple_coefficients(d: &RootDatum, a: &[i64]) -> Option<Vec<i64>> {
    let rows: Vec<Vec<BigRational>> = d
        .simple
        .iter()
        .map(|&s| d.positive_roots[s].iter().map(|&v| rat(v)).collect())
        .collect();
    let target: Vec<BigRational> = a.iter().map(|&v| rat(v)).collect();
    // solve sum c_k rows[k] = target, i.e. rows^T c = target
    let m = rows.len();
    let n = d.rank;
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = (0..m).map(|k| rows[k][i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let sol = solve_consistent(&mut aug, m)?;
    let mut out = Vec::with_capacity(m);
    for c in sol {
        if !c.is_integer() || c.is_negative() {
            return None;
        }
        out.push(c.to_integer().to_i64()?);
    }
    Some(out)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Gauss-Jordan on an augmented matrix with `m` unknowns; free variables set to 0.
fn solve_consistent(aug: &mut [Vec<BigRational>], m: usize) -> Option<Vec<BigRational>> {
    let rows = aug.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for v in aug[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=m {
                    let t = &aug[r][j] * &f;
                    aug[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = aug[i][m].clone();
    }
    Some(sol)
}

/// An interior point of the fundamental alcove as `numer / denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcovePoint {
    pub denom: i64,
    pub numer: Vec<i64>,
}

impl AlcovePoint {
    pub fn coords(&self) -> Vec<BigRational> {
        self.numer
            .iter()
            .map(|&v| BigRational::new(BigInt::from(v), BigInt::from(self.denom)))
            .collect()
    }
}

/// `((2i-1)/(2n))_i` for `GL_n`; otherwise the point where every simple root
/// takes the value `1/(2h)` with `h` the height of the highest root.
pub fn base_point(d: &RootDatum) -> Result<AlcovePoint> {
    if d.is_gln() {
        let n = d.rank as i64;
        return Ok(AlcovePoint { denom: 2 * n, numer: (1..=n).map(|i| 2 * i - 1).collect() });
    }
    let theta = simple_coefficients(d, &d.positive_roots[d.highest])
        .ok_or_else(|| Error::Datum("highest root not in the simple cone".into()))?;
    let h: i64 = theta.iter().sum();
    let values: Vec<BigRational> =
        d.simple.iter().map(|_| BigRational::new(BigInt::one(), BigInt::from(2 * h))).collect();
    point_with_simple_values(d, &values)
}

/// A second interior point with pairwise different simple-root values, used to
/// check that geometry does not depend on the choice of base point.
pub fn alternate_point(d: &RootDatum) -> Result<AlcovePoint> {
    let theta = simple_coefficients(d, &d.positive_roots[d.highest])
        .ok_or_else(|| Error::Datum("highest root not in the simple cone".into()))?;
    let weight: i64 = theta.iter().enumerate().map(|(i, c)| c * (i as i64 + 2)).sum();
    let values: Vec<BigRational> = (0..d.simple.len())
        .map(|i| BigRational::new(BigInt::from(i as i64 + 2), BigInt::from(weight + 1)))
        .collect();
    let mut p = point_with_simple_values(d, &values)?;
    // shift along the kernel so the point is not symmetric
    let ker = integer_kernel(d);
    for k in &ker {
        for (v, c) in p.numer.iter_mut().zip(k) {
            *v += c * p.denom / 3;
        }
    }
    check_interior(d, &p)?;
    Ok(p)
}

fn point_with_simple_values(d: &RootDatum, values: &[BigRational]) -> Result<AlcovePoint> {
    let n = d.rank;
    let mut aug: Vec<Vec<BigRational>> = d
        .simple
        .iter()
        .zip(values)
        .map(|(&s, v)| {
            let mut r: Vec<BigRational> = d.positive_roots[s].iter().map(|&c| rat(c)).collect();
            r.push(v.clone());
            r
        })
        .collect();
    let sol = solve_consistent(&mut aug, n).ok_or_else(|| Error::Datum("no interior rational point found".into()))?;
    let mut denom = BigInt::one();
    for c in &sol {
        denom = denom.lcm(c.denom());
    }
    let denom_i = denom.to_i64().ok_or_else(|| Error::Datum("base point denominator overflow".into()))?;
    let numer: Vec<i64> = sol
        .iter()
        .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer().to_i64().unwrap())
        .collect();
    let p = AlcovePoint { denom: denom_i, numer };
    check_interior(d, &p)?;
    Ok(p)
}

fn check_interior(d: &RootDatum, p: &AlcovePoint) -> Result<()> {
    for a in &d.positive_roots {
        let v = dot(a, &p.numer);
        if v <= 0 || v >= p.denom {
            return Err(Error::Datum("no interior rational point found".into()));
        }
    }
    Ok(())
}

/// Integer basis of `{x ∈ Z^n : α(x) = 0 for all roots}` via unimodular column operations.
pub fn integer_kernel(d: &RootDatum) -> Vec<Vec<i64>> {
    let n = d.rank;
    let mut a: Vec<Vec<i64>> = d.positive_roots.clone();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut col = 0;
    for row in 0..a.len() {
        if col >= n {
            break;
        }
        loop {
            let nz: Vec<usize> = (col..n).filter(|&j| a[row][j] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| a[row][j].abs()).unwrap();
            swap_cols(&mut a, &mut u, col, p);
            let mut done = true;
            for j in col + 1..n {
                let q = a[row][j] / a[row][col];
                if q != 0 {
                    for r in a.iter_mut() {
                        r[j] -= q * r[col];
                    }
                    for r in u.iter_mut() {
                        r[j] -= q * r[col];
                    }
                }
                if a[row][j] != 0 {
                    done = false;
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }
    (col..n).map(|j| (0..n).map(|i| u[i][j]).collect()).collect()
}

fn swap_cols(a: &mut [Vec<i64>], u: &mut [Vec<i64>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in a.iter_mut() {
        r.swap(i, j);
    }
    for r in u.iter_mut() {
        r.swap(i, j);
    }
}

/// `W₀` enumerated as integer matrices acting on `X`, identity at index 0.
#[derive(Clone, Debug)]
pub struct FiniteWeyl {
    pub rank: usize,
    pub mats: Vec<Vec<i64>>,
    pub mul: Vec<Vec<u32>>,
    pub inv: Vec<u32>,
    /// `root_act[w][a] = (b, ε)` with `w·α_a = ε α_b`, where `w·α = α ∘ w⁻¹`.
    pub root_act: Vec<Vec<(u32, i8)>>,
    /// W₀-index of `s_α` for each positive root.
    pub reflection: Vec<u32>,
    pub simple_refl: Vec<u32>,
    pub length: Vec<u32>,
    index: HashMap<Vec<i64>, u32>,
}

impl FiniteWeyl {
    pub fn new(d: &RootDatum, bound: usize) -> Result<Self> {
        let n = d.rank;
        let ident: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        let refl_mat = |a: usize| -> Vec<i64> {
            let mut m = vec![0; n * n];
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                let col = d.reflect_vec(a, &e);
                for i in 0..n {
                    m[i * n + j] = col[i];
                }
            }
            m
        };
        let gens: Vec<Vec<i64>> = d.simple.iter().map(|&a| refl_mat(a)).collect();
        let mut mats = vec![ident.clone()];
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        index.insert(ident, 0);
        let mut head = 0;
        while head < mats.len() {
            let cur = mats[head].clone();
            head += 1;
            for g in &gens {
                let m = matmul(n, &cur, g);
                if !index.contains_key(&m) {
                    if mats.len() >= bound {
                        return Err(Error::GroupTooLarge(format!("more than {bound} elements")));
                    }
                    index.insert(m.clone(), mats.len() as u32);
                    mats.push(m);
                }
            }
        }
        let size = mats.len();
        let mut mul = vec![vec![0u32; size]; size];
        for i in 0..size {
            for j in 0..size {
                mul[i][j] = index[&matmul(n, &mats[i], &mats[j])];
            }
        }
        let inv: Vec<u32> = (0..size).map(|i| (0..size).find(|&j| mul[i][j] == 0).unwrap() as u32).collect();
        let mut root_act = vec![Vec::with_capacity(d.num_positive()); size];
        for w in 0..size {
            let winv = &mats[inv[w] as usize];
            for a in &d.positive_roots {
                // (α ∘ w⁻¹)_j = Σ_i α_i (w⁻¹)_{ij}
                let img: Vec<i64> = (0..n).map(|j| (0..n).map(|i| a[i] * winv[i * n + j]).sum()).collect();
                let (b, s) = d.root_index(&img).ok_or_else(|| Error::Datum("root action left Φ".into()))?;
                root_act[w].push((b as u32, s as i8));
            }
        }
        let reflection: Vec<u32> = (0..d.num_positive()).map(|a| index[&refl_mat(a)]).collect();
        let simple_refl: Vec<u32> = d.simple.iter().map(|&a| reflection[a]).collect();
        let length: Vec<u32> =
            (0..size).map(|w| root_act[w].iter().filter(|(_, s)| *s < 0).count() as u32).collect();
        Ok(FiniteWeyl { rank: n, mats, mul, inv, root_act, reflection, simple_refl, length, index })
    }

    pub fn size(&self) -> usize {
        self.mats.len()
    }

    pub fn lookup(&self, mat: &[i64]) -> Option<u32> {
        self.index.get(mat).copied()
    }

    pub fn apply(&self, w: u32, x: &[i64]) -> Vec<i64> {
        let n = self.rank;
        let m = &self.mats[w as usize];
        (0..n).map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum()).collect()
    }

    /// Index of the permutation matrix with `σ(e_i) = e_{σ(i)}`; `perm` is 1-based one-line.
    pub fn from_perm(&self, perm: &[usize]) -> Result<u32> {
        let n = self.rank;
        if perm.len() != n {
            return Err(Error::Usage(format!("permutation of length {} for rank {n}", perm.len())));
        }
        let mut m = vec![0; n * n];
        let mut seen = vec![false; n];
        for (i, &p) in perm.iter().enumerate() {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::Usage(format!("{perm:?} is not a permutation")));
            }
            seen[p - 1] = true;
            m[(p - 1) * n + i] = 1;
        }
        self.lookup(&m).ok_or_else(|| Error::Usage(format!("{perm:?} is not in W0")))
    }

    /// One-line (1-based) form of a permutation matrix, `None` for non-permutations.
    pub fn to_perm(&self, w: u32) -> Option<Vec<usize>> {
        let n = self.rank;
        let m = &self.mats[w as usize];
        (0..n)
            .map(|j| {
                let rows: Vec<usize> = (0..n).filter(|&i| m[i * n + j] != 0).collect();
                (rows.len() == 1 && m[rows[0] * n + j] == 1).then(|| rows[0] + 1)
            })
            .collect()
    }

    pub fn longest(&self) -> u32 {
        (0..self.size()).max_by_key(|&w| self.length[w]).unwrap() as u32
    }
}

fn matmul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    c[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gln_counts() {
        let d2 = RootDatum::gln(2).unwrap();
        assert_eq!(d2.positive_roots, vec![vec![-1, 1]]);
        assert_eq!(d2.simple, vec![0]);
        let d3 = RootDatum::gln(3).unwrap();
        assert_eq!(d3.num_positive(), 3);
        assert_eq!(d3.positive_roots[d3.highest], vec![-1, 0, 1]);
        assert_eq!(RootDatum::gln(4).unwrap().num_positive(), 6);
        assert!(RootDatum::gln(1).is_err());
    }

    #[test]
    fn simple_roots_ordered() {
        let d = RootDatum::gln(4).unwrap();
        let s: Vec<_> = d.simple.iter().map(|&i| d.positive_roots[i].clone()).collect();
        assert_eq!(s, vec![vec![-1, 1, 0, 0], vec![0, -1, 1, 0], vec![0, 0, -1, 1]]);
    }

    #[test]
    fn base_points() {
        let p = base_point(&RootDatum::gln(2).unwrap()).unwrap();
        assert_eq!((p.denom, p.numer), (4, vec![1, 3]));
        let d3 = RootDatum::gln(3).unwrap();
        let p = base_point(&d3).unwrap();
        assert_eq!((p.denom, p.numer.clone()), (6, vec![1, 3, 5]));
        for a in &d3.positive_roots {
            let v = dot(a, &p.numer);
            assert!(v == 2 || v == 4);
        }
        assert_eq!(dot(&d3.positive_roots[d3.highest], &p.numer), 4);
        for n in 2..=5 {
            let d = RootDatum::gln(n).unwrap();
            let q = alternate_point(&d).unwrap();
            assert_ne!(q, base_point(&d).unwrap());
        }
    }

    #[test]
    fn weyl_sizes() {
        for (n, size) in [(2, 2), (3, 6), (4, 24)] {
            let w = FiniteWeyl::new(&RootDatum::gln(n).unwrap(), DEFAULT_W0_BOUND).unwrap();
            assert_eq!(w.size(), size);
        }
        assert!(matches!(
            FiniteWeyl::new(&RootDatum::gln(5).unwrap(), 10),
            Err(Error::GroupTooLarge(_))
        ));
    }

    #[test]
    fn reflection_closure_and_positivity() {
        for n in 2..=5 {
            let d = RootDatum::gln(n).unwrap();
            d.validate().unwrap();
        }
    }

    #[test]
    fn kernel_gln() {
        for n in 2..=5 {
            let k = integer_kernel(&RootDatum::gln(n).unwrap());
            assert_eq!(k.len(), 1);
            let v = &k[0];
            assert!(v.iter().all(|&c| c == v[0]) && v[0].abs() == 1);
        }
    }

    #[test]
    fn perm_round_trip() {
        let d = RootDatum::gln(3).unwrap();
        let w = FiniteWeyl::new(&d, DEFAULT_W0_BOUND).unwrap();
        for i in 0..w.size() as u32 {
            let p = w.to_perm(i).unwrap();
            assert_eq!(w.from_perm(&p).unwrap(), i);
        }
        let s = w.from_perm(&[3, 1, 2]).unwrap();
        assert_eq!(w.apply(s, &[1, 0, 0]), vec![0, 0, 1]);
    }

    #[test]
    fn generic_b2() {
        // B2 on Z^2: short roots e1, e2; long roots e1±e2
        let d = RootDatum {
            rank: 2,
            positive_roots: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
            coroots: vec![vec![2, 0], vec![0, 2], vec![1, 1], vec![1, -1]],
            simple: vec![1, 3],
            highest: 0,
        };
        // highest root of B2 with simple roots e2, e1-e2 is e1+e2
        let d = RootDatum { highest: 2, ..d };
        d.validate().unwrap();
        let w = FiniteWeyl::new(&d, DEFAULT_W0_BOUND).unwrap();
        assert_eq!(w.size(), 8);
        let p = base_point(&d).unwrap();
        assert!(d.positive_roots.iter().all(|a| {
            let v = dot(a, &p.numer);
            v > 0 && v < p.denom
        }));
        assert!(integer_kernel(&d).is_empty());
    }
}
