//! Splitting-principle Chern calculus for formal bundle expressions.
//!
//! Each distinct universal leaf (`E4`, `F2`, …) receives its own block of
//! root variables; repeated occurrences of the same leaf share the block.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Ring};
use crate::rational::Rational;
use crate::symfun::{self, SymExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleExpr {
    /// Universal bundle over `BU(rank)`; leaves with equal names coincide.
    Universal { name: String, rank: usize },
    Trivial(usize),
    Dual(Box<BundleExpr>),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Lambda2(Box<BundleExpr>),
}

impl BundleExpr {
    /// The leaf written `E<rank>`.
    pub fn universal(rank: usize) -> Self {
        BundleExpr::Universal { name: format!("E{rank}"), rank }
    }

    pub fn named(name: &str, rank: usize) -> Self {
        BundleExpr::Universal { name: name.to_string(), rank }
    }

    pub fn dual(e: BundleExpr) -> Self {
        BundleExpr::Dual(Box::new(e))
    }

    pub fn sum(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn lambda2(e: BundleExpr) -> Self {
        BundleExpr::Lambda2(Box::new(e))
    }

    /// Folds `sum` over a nonempty list.
    pub fn sum_all(items: Vec<BundleExpr>) -> Self {
        items.into_iter().reduce(BundleExpr::sum).expect("nonempty sum")
    }

    pub fn rank(&self) -> usize {
        match self {
            BundleExpr::Universal { rank, .. } => *rank,
            BundleExpr::Trivial(r) => *r,
            BundleExpr::Dual(e) => e.rank(),
            BundleExpr::Sum(a, b) => a.rank() + b.rank(),
            BundleExpr::Tensor(a, b) => a.rank() * b.rank(),
            BundleExpr::Lambda2(e) => {
                let r = e.rank();
                r * r.saturating_sub(1) / 2
            }
        }
    }

    /// Distinct universal leaves in order of first appearance.
    pub fn leaves(&self) -> Result<Vec<(String, usize)>> {
        fn walk(e: &BundleExpr, out: &mut Vec<(String, usize)>) -> Result<()> {
            match e {
                BundleExpr::Universal { name, rank } => match out.iter().find(|(n, _)| n == name) {
                    Some((_, r)) if r != rank => {
                        Err(Error::Spec(format!("leaf {name} used with ranks {r} and {rank}")))
                    }
                    Some(_) => Ok(()),
                    None => {
                        out.push((name.clone(), *rank));
                        Ok(())
                    }
                },
                BundleExpr::Trivial(_) => Ok(()),
                BundleExpr::Dual(x) | BundleExpr::Lambda2(x) => walk(x, out),
                BundleExpr::Sum(a, b) | BundleExpr::Tensor(a, b) => {
                    walk(a, out)?;
                    walk(b, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out)?;
        Ok(out)
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Universal { name, .. } => f.write_str(name),
            BundleExpr::Trivial(r) => write!(f, "triv({r})"),
            BundleExpr::Dual(e) => write!(f, "dual({e})"),
            BundleExpr::Sum(a, b) => write!(f, "sum({a},{b})"),
            BundleExpr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            BundleExpr::Lambda2(e) => write!(f, "lambda2({e})"),
        }
    }
}

impl FromStr for BundleExpr {
    type Err = Error;

    /// Grammar: `E4` (letters then rank), `triv(r)`, `dual(X)`,
    /// `lambda2(X)`, `sum(X,Y,…)`, `tensor(X,Y,…)`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = ExprParser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("trailing input in bundle expression {s:?}")));
        }
        Ok(e)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{}' at offset {}", c as char, self.pos)))
        }
    }

    fn args(&mut self) -> Result<Vec<BundleExpr>> {
        self.eat(b'(')?;
        let mut out = vec![self.expr()?];
        loop {
            self.ws();
            match self.src.get(self.pos) {
                Some(b',') => {
                    self.pos += 1;
                    out.push(self.expr()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(Error::Parse(format!("expected ',' or ')' at offset {}", self.pos))),
            }
        }
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
        self.ws();
        let call = self.src.get(self.pos) == Some(&b'(');
        let one = |mut v: Vec<BundleExpr>, name: &str| {
            if v.len() == 1 {
                Ok(v.pop().expect("len 1"))
            } else {
                Err(Error::Parse(format!("{name} takes one argument")))
            }
        };
        match (word.as_str(), call) {
            ("dual", true) => Ok(BundleExpr::dual(one(self.args()?, "dual")?)),
            ("lambda2", true) => Ok(BundleExpr::lambda2(one(self.args()?, "lambda2")?)),
            ("sum", true) => Ok(BundleExpr::sum_all(self.args()?)),
            ("tensor", true) => Ok(self.args()?.into_iter().reduce(BundleExpr::tensor).expect("nonempty")),
            ("triv", true) => {
                self.eat(b'(')?;
                self.ws();
                let s = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let r: usize = std::str::from_utf8(&self.src[s..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| Error::Parse("triv expects a rank".into()))?;
                self.eat(b')')?;
                Ok(BundleExpr::Trivial(r))
            }
            (w, false) => {
                let split = w.find(|c: char| c.is_ascii_digit()).unwrap_or(w.len());
                let (letters, digits) = w.split_at(split);
                if letters.is_empty() || digits.is_empty() || !letters.chars().all(|c| c.is_ascii_alphabetic()) {
                    return Err(Error::Parse(format!("bad bundle leaf {w:?}; expected e.g. E4")));
                }
                let rank: usize = digits.parse().map_err(|_| Error::Parse(format!("bad rank in {w:?}")))?;
                if rank == 0 {
                    return Err(Error::Parse("universal bundles need positive rank".into()));
                }
                Ok(BundleExpr::named(w, rank))
            }
            (w, true) => Err(Error::Parse(format!("unknown bundle operation {w:?}"))),
        }
    }
}

/// Chern roots of a bundle expression as linear forms in `t1 … tN`.
#[derive(Clone, Debug)]
pub struct ChernRoots {
    ring: Arc<Ring>,
    roots: Vec<GradedPoly>,
    blocks: Vec<(String, Range<usize>)>,
}

impl ChernRoots {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn roots(&self) -> &[GradedPoly] {
        &self.roots
    }

    /// Variable range assigned to each universal leaf.
    pub fn blocks(&self) -> &[(String, Range<usize>)] {
        &self.blocks
    }
}

pub fn chern_roots(e: &BundleExpr) -> Result<ChernRoots> {
    let leaves = e.leaves()?;
    let mut blocks = Vec::new();
    let mut next = 0;
    for (name, rank) in leaves {
        blocks.push((name, next..next + rank));
        next += rank;
    }
    let ring = symfun::root_ring(next);
    let roots = roots_of(e, &ring, &blocks);
    Ok(ChernRoots { ring, roots, blocks })
}

fn roots_of(e: &BundleExpr, ring: &Arc<Ring>, blocks: &[(String, Range<usize>)]) -> Vec<GradedPoly> {
    match e {
        BundleExpr::Universal { name, .. } => {
            let range = &blocks.iter().find(|(n, _)| n == name).expect("leaf registered").1;
            range.clone().map(|i| GradedPoly::var(ring, i)).collect()
        }
        BundleExpr::Trivial(r) => vec![GradedPoly::zero(ring); *r],
        BundleExpr::Dual(x) => roots_of(x, ring, blocks).iter().map(|r| -r).collect(),
        BundleExpr::Sum(a, b) => {
            let mut v = roots_of(a, ring, blocks);
            v.extend(roots_of(b, ring, blocks));
            v
        }
        BundleExpr::Tensor(a, b) => {
            let (ra, rb) = (roots_of(a, ring, blocks), roots_of(b, ring, blocks));
            ra.iter().flat_map(|x| rb.iter().map(move |y| x + y)).collect()
        }
        BundleExpr::Lambda2(x) => {
            let r = roots_of(x, ring, blocks);
            let mut out = Vec::new();
            for i in 0..r.len() {
                for j in i + 1..r.len() {
                    out.push(&r[i] + &r[j]);
                }
            }
            out
        }
    }
}

/// Chern classes `c_0 … c_kmax` from the roots: elementary symmetric
/// functions of the roots, computed incrementally.
fn classes_from_roots(ring: &Arc<Ring>, roots: &[GradedPoly], kmax: usize) -> Vec<GradedPoly> {
    let mut c = vec![GradedPoly::zero(ring); kmax + 1];
    c[0] = GradedPoly::one(ring);
    for (i, r) in roots.iter().enumerate() {
        for j in (1..=kmax.min(i + 1)).rev() {
            c[j] = &c[j] + &(&c[j - 1] * r);
        }
    }
    c
}

/// `c_k(E)`, the degree-`2k` part of `∏ (1 + root)`.
pub fn chern_class(e: &BundleExpr, k: usize) -> Result<GradedPoly> {
    let roots = chern_roots(e)?;
    if k > roots.roots.len() {
        return Ok(GradedPoly::zero(&roots.ring));
    }
    Ok(classes_from_roots(&roots.ring, &roots.roots, k).pop().expect("k + 1 entries"))
}

/// Total Chern class components `c_0 … c_rank`.
pub fn chern_classes(e: &BundleExpr) -> Result<Vec<GradedPoly>> {
    let roots = chern_roots(e)?;
    Ok(classes_from_roots(&roots.ring, &roots.roots, roots.roots.len()))
}

fn single_leaf(e: &BundleExpr) -> Result<usize> {
    match e.leaves()?[..] {
        [(_, rank)] => Ok(rank),
        ref ls => Err(Error::EvaluationModel(format!(
            "expression has {} universal leaves; sphere evaluation needs exactly one",
            ls.len()
        ))),
    }
}

/// `c_k(E)` of a single-leaf expression in the monomial symmetric basis.
pub fn chern_class_monomial_basis(e: &BundleExpr, k: usize) -> Result<SymExpr> {
    let v = single_leaf(e)?;
    symfun::to_monomial_basis(&chern_class(e, k)?, v)
}

/// Pairing of `c_k(E)` with the generator `γ` of `π_{2k}(BU(m))`, where `E`
/// is built from one universal leaf of rank `m`.
///
/// Decomposable elementary monomials vanish on a sphere, so only the linear
/// `σ_k` term survives; `σ_k(γ) = (k-1)!` fixes the orientation of `γ`.
pub fn sphere_eval(e: &BundleExpr, k: usize) -> Result<Rational> {
    sphere_eval_with(e, k, &Rational::factorial(k.saturating_sub(1) as u64))
}

/// [`sphere_eval`] with an explicit value for `σ_k(γ)`.
pub fn sphere_eval_with(e: &BundleExpr, k: usize, sigma_on_generator: &Rational) -> Result<Rational> {
    let v = single_leaf(e)?;
    if k == 0 {
        return Err(Error::Spec("sphere evaluation needs k >= 1".into()));
    }
    let ck = chern_class(e, k)?;
    let elem = symfun::to_elementary(&ck, v)?;
    Ok(symfun::sigma_top_coefficient(&elem, k) * sigma_on_generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(s: &str) -> BundleExpr {
        s.parse().unwrap()
    }

    #[test]
    fn roots_of_basic_constructions() {
        let r = chern_roots(&e("E2")).unwrap();
        assert_eq!(r.roots().iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["1*t1", "1*t2"]);
        let r = chern_roots(&e("lambda2(E4)")).unwrap();
        let got: Vec<String> = r.roots().iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["1*t1 + 1*t2", "1*t1 + 1*t3", "1*t1 + 1*t4", "1*t2 + 1*t3", "1*t2 + 1*t4", "1*t3 + 1*t4"]);
        let r = chern_roots(&e("sum(E2,dual(E2))")).unwrap();
        let got: Vec<String> = r.roots().iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["1*t1", "1*t2", "-1*t1", "-1*t2"]);
        let r = chern_roots(&e("sum(E1,triv(2))")).unwrap();
        assert_eq!(r.roots().len(), 3);
        assert!(r.roots()[1].is_zero() && r.roots()[2].is_zero());
    }

    #[test]
    fn ranks() {
        assert_eq!(e("lambda2(E4)").rank(), 6);
        assert_eq!(e("tensor(E2,F3)").rank(), 6);
        assert_eq!(e("sum(E4,E4,E4,E4,lambda2(E4))").rank(), 22);
        assert_eq!(e("dual(triv(3))").rank(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!("E".parse::<BundleExpr>().is_err());
        assert!("foo(E2)".parse::<BundleExpr>().is_err());
        assert!("dual(E2,E2)".parse::<BundleExpr>().is_err());
        assert!("sum(E2,E3)".parse::<BundleExpr>().is_ok());
        assert!(chern_roots(&BundleExpr::sum(BundleExpr::named("E", 2), BundleExpr::named("E", 3))).is_err());
        assert_eq!(e(" sum( E2 , lambda2(E2) ) ").to_string(), "sum(E2,lambda2(E2))");
    }

    #[test]
    fn top_class_of_universal_bundle() {
        for m in 1..=5 {
            let top = chern_class(&BundleExpr::universal(m), m).unwrap();
            assert_eq!(top, symfun::elementary(m, m));
            assert!(chern_class(&BundleExpr::universal(m), m + 1).unwrap().is_zero());
        }
    }

    #[test]
    fn lambda2_c4_in_monomial_basis() {
        let s = chern_class_monomial_basis(&e("lambda2(E4)"), 4).unwrap();
        assert_eq!(s.to_string(), "2*s(3,1) + 5*s(2,2) + 13*s(2,1,1) + 30*s(1,1,1,1)");
    }

    #[test]
    fn sphere_values() {
        assert_eq!(sphere_eval(&e("E4"), 4).unwrap(), Rational::integer(6));
        assert_eq!(sphere_eval(&e("lambda2(E4)"), 4).unwrap(), Rational::integer(-24));
        assert_eq!(sphere_eval(&e("sum(E4,E4,E4,E4,lambda2(E4))"), 4).unwrap(), Rational::zero());
        assert!(matches!(sphere_eval(&e("sum(E2,F2)"), 2), Err(Error::EvaluationModel(_))));
    }

    #[test]
    fn odd_classes_of_complexified_bundles_vanish() {
        for m in 1..=4 {
            let x = BundleExpr::sum(BundleExpr::universal(m), BundleExpr::dual(BundleExpr::universal(m)));
            for k in (1..=2 * m).step_by(2) {
                assert!(chern_class(&x, k).unwrap().is_zero(), "m={m} k={k}");
            }
        }
    }

    fn arb_single_leaf() -> impl Strategy<Value = BundleExpr> {
        let leaf = prop_oneof![
            Just(BundleExpr::universal(2)),
            Just(e("lambda2(E2)")),
            Just(e("tensor(E2,triv(1))")),
            (0usize..3).prop_map(BundleExpr::Trivial),
        ];
        leaf.prop_recursive(3, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(BundleExpr::dual),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| BundleExpr::sum(a, b)),
            ]
        })
    }

    fn arb_two_leaf() -> impl Strategy<Value = (BundleExpr, BundleExpr)> {
        let a = prop_oneof![Just(e("E2")), Just(e("dual(E2)")), Just(e("lambda2(E3)")), Just(e("tensor(E2,L1)"))];
        let b = prop_oneof![Just(e("F2")), Just(e("triv(2)")), Just(e("dual(F1)")), Just(e("sum(F1,E2)"))];
        (a, b)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn whitney_sum_formula((a, b) in arb_two_leaf(), k in 0usize..5) {
            let s = BundleExpr::sum(a.clone(), b.clone());
            let whole = chern_class(&s, k).unwrap();
            // Recompute the factors in the ring of the sum so the variable
            // blocks line up.
            let roots = chern_roots(&s).unwrap();
            let ra = a.rank();
            let ca = classes_from_roots(roots.ring(), &roots.roots()[..ra], k);
            let cb = classes_from_roots(roots.ring(), &roots.roots()[ra..], k);
            let mut acc = GradedPoly::zero(roots.ring());
            for i in 0..=k {
                acc = &acc + &(&ca[i] * &cb[k - i]);
            }
            prop_assert_eq!(whole, acc);
        }

        #[test]
        fn duality_and_trivial_summands(x in arb_single_leaf(), k in 0usize..5, r in 0usize..3) {
            prop_assume!(!x.leaves().unwrap().is_empty());
            let c = chern_class(&x, k).unwrap();
            let dual = chern_class(&BundleExpr::dual(x.clone()), k).unwrap();
            let sign = if k % 2 == 0 { Rational::one() } else { Rational::integer(-1) };
            prop_assert_eq!(dual, c.scale(&sign));
            let padded = chern_class(&BundleExpr::sum(x.clone(), BundleExpr::Trivial(r)), k).unwrap();
            prop_assert_eq!(padded, c);
        }

        #[test]
        fn sphere_eval_is_additive(x in arb_single_leaf(), y in arb_single_leaf(), k in 1usize..3) {
            prop_assume!(!x.leaves().unwrap().is_empty() && !y.leaves().unwrap().is_empty());
            let s = sphere_eval(&BundleExpr::sum(x.clone(), y.clone()), k).unwrap();
            prop_assert_eq!(s, sphere_eval(&x, k).unwrap() + sphere_eval(&y, k).unwrap());
        }
    }
}
