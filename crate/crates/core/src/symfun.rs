//! Symmetric polynomials in Chern-root variables `t1 … tv`: monomial
//! symmetric functions `s_I`, elementary symmetric functions `σ_k`, and
//! conversion into the elementary basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Monomial, Ring};
use crate::rational::Rational;

/// Weakly decreasing tuple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Spec("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Spec(format!("partition {parts:?} is not weakly decreasing")));
        }
        parts.shrink_to_fit();
        Ok(Partition(parts))
    }

    /// Sorts an arbitrary exponent list into a partition, dropping zeros.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut parts: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// All partitions of `n` with at most `max_len` parts, in decreasing
    /// lexicographic order.
    pub fn all_of(n: u32, max_len: usize) -> Vec<Partition> {
        fn go(n: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=max_part.min(n)).rev() {
                cur.push(p);
                go(n - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, max_len, &mut vec![], &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", inner.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t).trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Ring of Chern-root variables `t1 … tv`, each of degree 2.
pub fn root_ring(v: usize) -> Arc<Ring> {
    Ring::new((1..=v).map(|i| (format!("t{i}"), 2))).expect("valid names")
}

/// Ring of abstract elementary classes `sigma1 … sigmav`, `sigma_i` of
/// degree `2i`.
pub fn sigma_ring(v: usize) -> Arc<Ring> {
    Ring::new((1..=v).map(|i| (format!("sigma{i}"), 2 * i as u32))).expect("valid names")
}

fn check_root_ring(p: &GradedPoly, v: usize) -> Result<()> {
    let r = p.ring();
    if r.len() != v || r.degrees().iter().any(|&d| d != 2) {
        return Err(Error::RingMismatch(format!(
            "expected {v} root variables of degree 2, got [{}]",
            r.names().join(",")
        )));
    }
    Ok(())
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `s_I` in `v` variables: each distinct rearrangement of the parts over
/// `t1 … tv` appears once.
pub fn monomial_symmetric(part: &Partition, v: usize) -> Result<GradedPoly> {
    monomial_symmetric_in(&root_ring(v), part)
}

fn monomial_symmetric_in(ring: &Arc<Ring>, part: &Partition) -> Result<GradedPoly> {
    let v = ring.len();
    if part.len() > v {
        return Err(Error::Arity { partition: part.to_string(), vars: v });
    }
    let mut exps = vec![0u32; v];
    exps[..part.len()].copy_from_slice(part.parts());
    exps.sort_unstable();
    let mut out = GradedPoly::zero(ring);
    loop {
        out.add_term(Monomial::from_dense(&exps), Rational::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(out)
}

/// `σ_k` in `v` variables; `σ_0 = 1` and `σ_k = 0` for `k > v`.
pub fn elementary(k: usize, v: usize) -> GradedPoly {
    let ring = root_ring(v);
    if k > v {
        return GradedPoly::zero(&ring);
    }
    monomial_symmetric_in(&ring, &Partition(vec![1; k])).expect("k <= v")
}

fn permute(p: &GradedPoly, perm: &[usize]) -> GradedPoly {
    GradedPoly::from_terms(
        p.ring(),
        p.terms().map(|(m, c)| (Monomial::from_pairs(m.pairs().iter().map(|&(i, e)| (perm[i], e))), c.clone())),
    )
}

/// Invariance under a transposition and a full cycle, which generate `S_v`.
pub fn is_symmetric(p: &GradedPoly) -> bool {
    let v = p.ring().len();
    if v < 2 {
        return true;
    }
    let mut swap: Vec<usize> = (0..v).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..v).map(|i| (i + 1) % v).collect();
    permute(p, &swap) == *p && permute(p, &cycle) == *p
}

/// Linear combination of monomial symmetric functions in `v` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymExpr {
    vars: usize,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymExpr {
    pub fn new(vars: usize) -> Self {
        SymExpr { vars, coeffs: BTreeMap::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Partitions longer than `vars` are zero in `vars` variables and
    /// are dropped.
    pub fn add(&mut self, part: Partition, c: Rational) {
        if part.len() > self.vars || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(part.clone()).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&part);
        }
    }

    pub fn coeff(&self, part: &Partition) -> Rational {
        self.coeffs.get(part).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn expand(&self) -> GradedPoly {
        let ring = root_ring(self.vars);
        let mut out = GradedPoly::zero(&ring);
        for (part, c) in &self.coeffs {
            let s = monomial_symmetric_in(&ring, part).expect("length checked on insert");
            out = &out + &s.scale(c);
        }
        out
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut entries: Vec<_> = self.coeffs.iter().collect();
        entries.sort_by(|a, b| a.0.weight().cmp(&b.0.weight()).then_with(|| b.0.cmp(a.0)));
        let text: Vec<String> = entries.into_iter().map(|(p, c)| format!("{c}*s{p}")).collect();
        f.write_str(&text.join(" + "))
    }
}

/// Reads off the monomial-symmetric coefficients of a symmetric polynomial.
pub fn to_monomial_basis(p: &GradedPoly, v: usize) -> Result<SymExpr> {
    check_root_ring(p, v)?;
    if !is_symmetric(p) {
        return Err(Error::Symmetry(format!("{p} is not symmetric in {v} variables")));
    }
    let mut out = SymExpr::new(v);
    for (m, c) in p.terms() {
        let dense = m.to_dense(v);
        if dense.windows(2).all(|w| w[0] >= w[1]) {
            out.add(Partition::from_exponents(&dense), c.clone());
        }
    }
    Ok(out)
}

/// Expresses a symmetric polynomial in `t1 … tv` as a polynomial in
/// `sigma1 … sigmav`.
///
/// Repeatedly takes the lexicographically largest monomial `t^λ` (for a
/// symmetric input, `λ` is a partition), and subtracts its coefficient
/// times `σ_{λ'_1} σ_{λ'_2} ⋯`, whose expansion has leading monomial `t^λ`.
pub fn to_elementary(p: &GradedPoly, v: usize) -> Result<GradedPoly> {
    check_root_ring(p, v)?;
    if !is_symmetric(p) {
        return Err(Error::Symmetry(format!("{p} is not symmetric in {v} variables")));
    }
    let sig = sigma_ring(v);
    let elem: Vec<GradedPoly> =
        (0..=v).map(|k| monomial_symmetric_in(p.ring(), &Partition(vec![1; k])).expect("k <= v")).collect();
    let mut rest = p.clone();
    let mut out = GradedPoly::zero(&sig);
    while let Some((m, c)) = rest.terms().max_by(|a, b| a.0.to_dense(v).cmp(&b.0.to_dense(v))) {
        let (m, c) = (m.clone(), c.clone());
        let lam = Partition::from_exponents(&m.to_dense(v));
        let conj = lam.conjugate();
        let mut prod = GradedPoly::constant(p.ring(), c.clone());
        let mut sig_mono = Monomial::one();
        for &j in conj.parts() {
            prod = &prod * &elem[j as usize];
            sig_mono = sig_mono.mul(&Monomial::var(j as usize - 1));
        }
        rest = &rest - &prod;
        out.add_term(sig_mono, c);
    }
    Ok(out)
}

/// Substitutes `sigma_k ↦ σ_k(t1 … tv)`.
pub fn from_elementary(e: &GradedPoly, v: usize) -> Result<GradedPoly> {
    let images: Vec<GradedPoly> = (1..=e.ring().len()).map(|k| elementary(k, v)).collect();
    e.substitute(&root_ring(v), &images)
}

/// Coefficient of the linear monomial `sigma_k`.
pub fn sigma_top_coefficient(e: &GradedPoly, k: usize) -> Rational {
    if k == 0 || k > e.ring().len() {
        return Rational::zero();
    }
    e.coeff(&Monomial::var(k - 1))
}
