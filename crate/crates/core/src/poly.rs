//! Graded multivariate polynomials with exact rational coefficients.
//!
//! A [`Ring`] is an ordered list of named generators, each carrying an even
//! cohomological degree. Monomials are compared in the graded order that
//! breaks ties lexicographically starting from the *highest* generator
//! index, so generators appended later (for instance the hyperplane class
//! of a projectivized bundle) dominate the ones they are adjoined to.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl Ring {
    /// Builds a ring from `(name, degree)` pairs. Degrees must be even and
    /// positive; names must be distinct identifiers.
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Ring>> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (name, deg) in gens {
            let name = name.into();
            if deg == 0 || deg % 2 == 1 {
                return Err(Error::Spec(format!(
                    "generator {name} has degree {deg}; only positive even degrees are supported"
                )));
            }
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Spec(format!("invalid generator name {name:?}")));
            }
            if names.contains(&name) {
                return Err(Error::Spec(format!("duplicate generator name {name}")));
            }
            names.push(name);
            degrees.push(deg);
        }
        Ok(Arc::new(Ring { names, degrees }))
    }

    /// The ring with no generators, i.e. ℚ in degree 0.
    pub fn point() -> Arc<Ring> {
        Arc::new(Ring { names: vec![], degrees: vec![] })
    }

    /// Returns a new ring with `extra` generators appended after these.
    pub fn extend<S: Into<String>>(&self, extra: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Ring>> {
        let gens = self
            .names
            .iter()
            .cloned()
            .zip(self.degrees.iter().copied())
            .chain(extra.into_iter().map(|(n, d)| (n.into(), d)));
        Ring::new(gens)
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

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// True when `self` is `other` or a prefix of it.
    pub fn is_prefix_of(&self, other: &Ring) -> bool {
        self.len() <= other.len()
            && self.names[..] == other.names[..self.len()]
            && self.degrees[..] == other.degrees[..self.len()]
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().map(|&(i, e)| self.degrees[i] * e).sum()
    }

    /// Graded order, ties broken from the highest generator index down.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.monomial_degree(a)
            .cmp(&self.monomial_degree(b))
            .then_with(|| {
                let mut ia = a.0.iter().rev().peekable();
                let mut ib = b.0.iter().rev().peekable();
                loop {
                    match (ia.peek(), ib.peek()) {
                        (None, None) => return Ordering::Equal,
                        (Some(_), None) => return Ordering::Greater,
                        (None, Some(_)) => return Ordering::Less,
                        (Some(&&(ga, ea)), Some(&&(gb, eb))) => {
                            if ga != gb {
                                // The monomial carrying the higher generator wins.
                                return ga.cmp(&gb);
                            }
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            ia.next();
                            ib.next();
                        }
                    }
                }
            })
    }

    /// All monomials of total degree `d`, ascending in the monomial order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp_monomials(a, b));
        out
    }

    fn enumerate(&self, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if left == 0 {
                out.push(Monomial::from_dense(exps));
            }
            return;
        }
        let deg = self.degrees[i];
        let mut e = 0;
        while e * deg <= left {
            exps[i] = e;
            self.enumerate(i + 1, left - e * deg, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
}

/// Sparse exponent vector: sorted `(generator, exponent)` pairs, zero
/// exponents never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![(i, 1)])
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(i, e)])
        }
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial(exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut m = Monomial::one();
        for (i, e) in pairs {
            m = m.mul(&Monomial::var_pow(i, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.iter().find(|&&(g, _)| g == i).map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn to_dense(&self, n: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        for &(i, e) in &self.0 {
            v[i] = e;
        }
        v
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(i, e)| other.exponent(i) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .filter_map(|&(i, e)| {
                    let r = e - self.exponent(i);
                    (r > 0).then_some((i, r))
                })
                .collect(),
        ))
    }

    /// Splits into the part supported on `gens` and the rest.
    pub fn split(&self, gens: &[usize]) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(i, _)| gens.contains(i));
        (Monomial(a), Monomial(b))
    }

    pub fn is_square_free(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    fn render(&self, ring: &Ring) -> String {
        self.0
            .iter()
            .map(|&(i, e)| if e == 1 { ring.name(i).to_string() } else { format!("{}^{}", ring.name(i), e) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Polynomial over a [`Ring`]; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        GradedPoly::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        GradedPoly::term(ring, Monomial::one(), c)
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        let mut p = GradedPoly::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        GradedPoly::term(ring, m, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.len(), "generator index {i} out of range");
        GradedPoly::monomial(ring, Monomial::var(i))
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        ring.index_of(name)
            .map(|i| GradedPoly::var(ring, i))
            .ok_or_else(|| Error::Parse(format!("unknown generator {name}")))
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = GradedPoly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// The scalar value if this polynomial has degree 0 only.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.terms.contains_key(&Monomial::one()) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &GradedPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.ring.names().join(","),
                other.ring.names().join(",")
            )))
        }
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = GradedPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut acc = GradedPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.ring);
        }
        GradedPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GradedPoly {
        GradedPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    fn neg_ref(&self) -> GradedPoly {
        self.scale(&Rational::integer(-1))
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn graded_component(&self, d: u32) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.monomial_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Distinct degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|m| self.ring.monomial_degree(m)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// `Some(d)` when every term has degree `d`; zero is homogeneous of
    /// every degree and reports `None` here.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees()[..] {
            [d] => Some(d),
            _ => None,
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.degrees().last().copied()
    }

    /// Largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| self.ring.cmp_monomials(a.0, b.0))
    }

    /// Reinterprets the polynomial in `ring`, which must extend this ring.
    pub fn lift_to(&self, ring: &Arc<Ring>) -> Result<GradedPoly> {
        if !self.ring.is_prefix_of(ring) {
            return Err(Error::RingMismatch(format!(
                "[{}] is not a prefix of [{}]",
                self.ring.names().join(","),
                ring.names().join(",")
            )));
        }
        Ok(GradedPoly { ring: ring.clone(), terms: self.terms.clone() })
    }

    /// Reinterprets the polynomial in a smaller ring that is a prefix of
    /// this one; fails if a dropped generator occurs.
    pub fn restrict_to(&self, ring: &Arc<Ring>) -> Result<GradedPoly> {
        if !ring.is_prefix_of(&self.ring) {
            return Err(Error::RingMismatch("target is not a prefix".into()));
        }
        if self.terms.keys().any(|m| m.pairs().iter().any(|&(i, _)| i >= ring.len())) {
            return Err(Error::RingMismatch("polynomial involves generators outside the target ring".into()));
        }
        Ok(GradedPoly { ring: ring.clone(), terms: self.terms.clone() })
    }

    /// Ring homomorphism defined on generators: generator `i` is sent to
    /// `images[i]`, all images living in `target`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[GradedPoly]) -> Result<GradedPoly> {
        if images.len() != self.ring.len() {
            return Err(Error::Spec(format!(
                "substitution needs {} images, got {}",
                self.ring.len(),
                images.len()
            )));
        }
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(target, c.clone());
            for &(i, e) in m.pairs() {
                t = t.checked_mul(&images[i].pow(e))?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Terms in canonical order: ascending degree, then monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.cmp_monomials(a.0, b.0));
        v
    }

    /// Canonical text encoding: terms ascending by (degree, monomial order)
    /// joined by `" + "`, each written `coeff*g1^e1*g2^e2` with exponent 1
    /// omitted; the zero polynomial is `0`.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| if m.is_one() { c.to_string() } else { format!("{}*{}", c, m.render(&self.ring)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses an arithmetic expression over the generators of `ring`:
    /// integers, `p/q` literals, `+ - * ^` and parentheses.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<GradedPoly> {
        let mut parser = Parser { ring, src: text.as_bytes(), pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(Error::Parse(format!("unexpected input at offset {} in {text:?}", parser.pos)));
        }
        Ok(p)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({})", self.to_canonical())
    }
}

// Operator forms panic on mismatched rings; the `checked_*` methods report it.
impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: GradedPoly) -> GradedPoly {
        &self + &rhs
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: GradedPoly) -> GradedPoly {
        &self - &rhs
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.neg_ref()
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.neg_ref()
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<GradedPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GradedPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<GradedPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            let e: u32 = digits.parse().map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<GradedPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let mut text = num;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.err("expected denominator"));
                    }
                    text = format!("{text}/{den}");
                }
                let r: Rational = text.parse()?;
                Ok(GradedPoly::constant(self.ring, r))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                GradedPoly::var_named(self.ring, &name)
            }
            _ => Err(self.err("expected a number, generator or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring_y() -> Arc<Ring> {
        Ring::new([("y0", 2), ("y1", 2)]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring_y();
        let y0 = GradedPoly::var(&r, 0);
        let y1 = GradedPoly::var(&r, 1);
        let p = &(&y0 + &y1) * &(&y0 - &y1);
        assert_eq!(p, GradedPoly::parse(&r, "y0^2 - y1^2").unwrap());
        assert!((&p * &GradedPoly::zero(&r)).is_zero());
    }

    #[test]
    fn square_of_affine_form() {
        // Hand expansion: (1 - 2x1 - x2)^2 = 1 - 4x1 - 2x2 + 4x1^2 + 4x1x2 + x2^2.
        let r = Ring::new([("x1", 2), ("x2", 2)]).unwrap();
        let p = GradedPoly::parse(&r, "1 - 2*x1 - x2").unwrap().pow(2);
        let expected = GradedPoly::from_terms(
            &r,
            [
                (Monomial::one(), Rational::integer(1)),
                (Monomial::var(0), Rational::integer(-4)),
                (Monomial::var(1), Rational::integer(-2)),
                (Monomial::var_pow(0, 2), Rational::integer(4)),
                (Monomial::from_pairs([(0, 1), (1, 1)]), Rational::integer(4)),
                (Monomial::var_pow(1, 2), Rational::integer(1)),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = GradedPoly::var(&ring_y(), 0);
        let b = GradedPoly::var(&Ring::new([("c", 2)]).unwrap(), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn odd_generators_rejected() {
        assert!(Ring::new([("z", 3)]).is_err());
        assert!(Ring::new([("z", 0)]).is_err());
    }

    #[test]
    fn graded_components() {
        let r = Ring::new([("y1", 2)]).unwrap();
        let p = GradedPoly::parse(&r, "1 + y1 + y1^2").unwrap();
        assert_eq!(p.graded_component(2), GradedPoly::var(&r, 0));
        assert!(GradedPoly::zero(&r).graded_component(4).is_zero());
        let q = GradedPoly::parse(&r, "(1 + y1)^3").unwrap();
        assert_eq!(q.graded_component(4), GradedPoly::parse(&r, "3*y1^2").unwrap());
    }

    #[test]
    fn canonical_encoding() {
        let r = Ring::new([("x1", 2), ("x2", 2)]).unwrap();
        let p = GradedPoly::parse(&r, "(1 - 2*x1 - x2)^2").unwrap();
        assert_eq!(p.to_canonical(), "1 + -4*x1 + -2*x2 + 4*x1^2 + 4*x1*x2 + 1*x2^2");
        assert_eq!(GradedPoly::parse(&r, "1/2*x1 - 1/3").unwrap().to_canonical(), "-1/3 + 1/2*x1");
        assert_eq!(GradedPoly::zero(&r).to_canonical(), "0");
    }

    #[test]
    fn order_prefers_later_generators() {
        let r = Ring::new([("b", 2), ("c", 2)]).unwrap();
        let bc = Monomial::from_pairs([(0, 1), (1, 1)]);
        let c2 = Monomial::var_pow(1, 2);
        let b2 = Monomial::var_pow(0, 2);
        assert_eq!(r.cmp_monomials(&c2, &bc), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&bc, &b2), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&Monomial::var(0), &b2), Ordering::Less);
    }

    #[test]
    fn monomial_enumeration_by_weighted_degree() {
        let r = Ring::new([("y1", 2), ("y2", 4)]).unwrap();
        assert_eq!(r.monomials_of_degree(4).len(), 2);
        assert_eq!(r.monomials_of_degree(8).len(), 3);
        assert_eq!(r.monomials_of_degree(0), vec![Monomial::one()]);
    }

    fn arb_poly() -> impl Strategy<Value = GradedPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..6, 1i64..4), 0..6).prop_map(|ts| {
            let r = Ring::new([("a", 2), ("b", 2), ("e", 4)]).unwrap();
            GradedPoly::from_terms(
                &r,
                ts.into_iter().map(|((i, j, k), n, d)| (Monomial::from_dense(&[i, j, k]), Rational::new(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn components_sum_back(p in arb_poly()) {
            let mut acc = GradedPoly::zero(p.ring());
            for d in p.degrees() {
                acc = &acc + &p.graded_component(d);
            }
            prop_assert_eq!(acc, p);
        }

        #[test]
        fn canonical_text_round_trips(p in arb_poly()) {
            let back = GradedPoly::parse(p.ring(), &p.to_canonical()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn products_add_degrees(p in arb_poly(), q in arb_poly()) {
            for dp in p.degrees() {
                for dq in q.degrees() {
                    let prod = &p.graded_component(dp) * &q.graded_component(dq);
                    prop_assert!(prod.is_zero() || prod.homogeneous_degree() == Some(dp + dq));
                }
            }
        }
    }
}
