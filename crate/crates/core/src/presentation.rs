//! Quotient rings presented by rewrite rules, with an optional Leray–Hirsch
//! fiber basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{GradedPoly, Monomial, Ring};
use crate::rational::Rational;

/// Maximum rule applications in one `normal_form` call.
pub const REWRITE_LIMIT: usize = 1_000_000;

/// Completion gives up on rings that are still nonzero past this degree.
const COMPLETION_DEGREE_LIMIT: u32 = 400;

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lead: Monomial,
    pub replacement: GradedPoly,
}

/// Lifted fiber classes `b_0 = 1, …, b_N`; `b_N` is the top class.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberBasis {
    fiber_gens: Vec<usize>,
    elements: Vec<Monomial>,
}

impl FiberBasis {
    pub fn fiber_generators(&self) -> &[usize] {
        &self.fiber_gens
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn top(&self) -> &Monomial {
        self.elements.last().expect("fiber basis is never empty")
    }
}

#[derive(Clone, Debug)]
pub struct RingPresentation {
    ring: Arc<Ring>,
    rules: Vec<Rule>,
    fiber_basis: Option<FiberBasis>,
    /// Quotient dimension in degree `2i` at index `i`, through the top
    /// degree. Known only for presentations built by completion.
    dims: Option<Vec<usize>>,
}

fn order_key(ring: &Ring, m: &Monomial) -> (u32, Vec<u32>) {
    let mut dense = m.to_dense(ring.len());
    dense.reverse();
    (ring.monomial_degree(m), dense)
}

impl RingPresentation {
    /// The polynomial ring itself, no relations.
    pub fn free(ring: &Arc<Ring>) -> Self {
        RingPresentation { ring: ring.clone(), rules: vec![], fiber_basis: None, dims: None }
    }

    /// Uses the supplied rules verbatim. Each must be homogeneous with a
    /// replacement strictly below its leading monomial; confluence is the
    /// caller's responsibility.
    pub fn from_rules(ring: &Arc<Ring>, rules: Vec<(Monomial, GradedPoly)>) -> Result<Self> {
        let mut out = Vec::new();
        for (lead, replacement) in rules {
            if **replacement.ring() != **ring {
                return Err(Error::RingMismatch("rule replacement lives in another ring".into()));
            }
            let d = ring.monomial_degree(&lead);
            if let Some(bad) = replacement.degrees().into_iter().find(|&e| e != d) {
                return Err(Error::Presentation(format!(
                    "rule for a degree-{d} monomial has a degree-{bad} replacement"
                )));
            }
            if replacement.terms().any(|(m, _)| ring.cmp_monomials(m, &lead) != std::cmp::Ordering::Less) {
                return Err(Error::Presentation("rule replacement is not below its leading monomial".into()));
            }
            out.push(Rule { lead, replacement });
        }
        Ok(RingPresentation { ring: ring.clone(), rules: out, fiber_basis: None, dims: None })
    }

    /// Presents `ring / (relations)` for a finite-dimensional quotient.
    ///
    /// Works one even degree at a time: the span of all multiples of the
    /// relations is brought to reduced echelon form against the monomials in
    /// descending order, and each pivot not already divisible by an earlier
    /// leading monomial becomes a rule. Stops once a window of
    /// `max generator degree` consecutive degrees is entirely zero, after
    /// which every monomial is reducible to zero.
    pub fn from_relations(ring: &Arc<Ring>, relations: &[GradedPoly]) -> Result<Self> {
        let mut rels = Vec::new();
        for r in relations {
            if **r.ring() != **ring {
                return Err(Error::RingMismatch("relation lives in another ring".into()));
            }
            if r.is_zero() {
                continue;
            }
            let d = r
                .homogeneous_degree()
                .ok_or_else(|| Error::Presentation(format!("relation {r} is not homogeneous")))?;
            if d == 0 {
                return Err(Error::Presentation("a nonzero constant relation kills the ring".into()));
            }
            rels.push((d, r.clone()));
        }
        let window = ring.max_degree().max(2);
        if rels.iter().all(|(_, r)| r.len() == 1) {
            return Self::from_monomial_relations(ring, rels.iter().map(|(_, r)| r.terms().next().expect("one term").0.clone()), window);
        }
        // Products are reduced by the rules of lower degree first, so each
        // elimination only runs over the monomials still standard.
        let mut pres = RingPresentation { ring: ring.clone(), rules: Vec::new(), fiber_basis: None, dims: None };
        let mut dims = vec![1usize];
        let mut zero_run = 0;
        let mut d = 0;
        while zero_run < window {
            d += 2;
            if d > COMPLETION_DEGREE_LIMIT {
                return Err(Error::Presentation(format!(
                    "quotient is still nonzero in degree {COMPLETION_DEGREE_LIMIT}; only finite presentations are supported"
                )));
            }
            let mut cols = pres.standard_monomials(d);
            cols.reverse();
            let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            for (rd, r) in &rels {
                if *rd > d {
                    continue;
                }
                for q in ring.monomials_of_degree(d - rd) {
                    let reduced = pres.normal_form(&r.mul_monomial(&q))?;
                    if reduced.is_zero() {
                        continue;
                    }
                    let mut row = vec![Rational::zero(); cols.len()];
                    for (m, c) in reduced.terms() {
                        row[index[m]] = c.clone();
                    }
                    rows.push(row);
                }
            }
            let mut mat = Matrix::from_rows(cols.len(), rows);
            let pivots = mat.rref();
            for (row, &pc) in pivots.iter().enumerate() {
                let mut replacement = GradedPoly::zero(ring);
                for (j, m) in cols.iter().enumerate().skip(pc + 1) {
                    let c = mat.get(row, j);
                    if !c.is_zero() {
                        replacement.add_term(m.clone(), -c);
                    }
                }
                pres.rules.push(Rule { lead: cols[pc].clone(), replacement });
            }
            let dim = cols.len() - pivots.len();
            dims.push(dim);
            zero_run = if dim == 0 { zero_run + 2 } else { 0 };
        }
        while dims.last() == Some(&0) {
            dims.pop();
        }
        pres.dims = Some(dims);
        Ok(pres)
    }

    /// Monomial ideals need no elimination: the minimal generators are the
    /// rules and the standard monomials are a basis.
    fn from_monomial_relations(ring: &Arc<Ring>, leads: impl Iterator<Item = Monomial>, window: u32) -> Result<Self> {
        let mut leads: Vec<Monomial> = leads.collect();
        leads.sort_by_key(|m| order_key(ring, m));
        leads.dedup();
        let mut rules: Vec<Rule> = Vec::new();
        for lead in leads {
            if !rules.iter().any(|r| r.lead.divides(&lead)) {
                rules.push(Rule { lead, replacement: GradedPoly::zero(ring) });
            }
        }
        let mut pres = RingPresentation { ring: ring.clone(), rules, fiber_basis: None, dims: None };
        let mut dims = vec![1usize];
        let mut zero_run = 0;
        let mut d = 0;
        while zero_run < window {
            d += 2;
            if d > COMPLETION_DEGREE_LIMIT {
                return Err(Error::Presentation(format!(
                    "quotient is still nonzero in degree {COMPLETION_DEGREE_LIMIT}; only finite presentations are supported"
                )));
            }
            let dim = pres.standard_monomials(d).len();
            dims.push(dim);
            zero_run = if dim == 0 { zero_run + 2 } else { 0 };
        }
        while dims.last() == Some(&0) {
            dims.pop();
        }
        pres.dims = Some(dims);
        Ok(pres)
    }

    /// Designates a Leray–Hirsch basis. `elements` must start with `1`, be
    /// distinct monomials in `fiber_gens`, and end with the unique element
    /// of maximal degree.
    pub fn with_fiber_basis(mut self, fiber_gens: Vec<usize>, elements: Vec<Monomial>) -> Result<Self> {
        if elements.first() != Some(&Monomial::one()) {
            return Err(Error::Basis("fiber basis must start with 1".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.pairs().iter().any(|(g, _)| !fiber_gens.contains(g)) {
                return Err(Error::Basis(format!("basis element {i} leaves the fiber generators")));
            }
            if elements[..i].contains(e) {
                return Err(Error::Basis("repeated fiber basis element".into()));
            }
        }
        let top = elements.last().expect("nonempty");
        let top_deg = self.ring.monomial_degree(top);
        if elements[..elements.len() - 1].iter().any(|e| self.ring.monomial_degree(e) >= top_deg) {
            return Err(Error::Basis("the last fiber basis element must be the unique one of top degree".into()));
        }
        self.fiber_basis = Some(FiberBasis { fiber_gens, elements });
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn fiber_basis(&self) -> Option<&FiberBasis> {
        self.fiber_basis.as_ref()
    }

    /// Rules written back as relations `lead - replacement`.
    pub fn relations(&self) -> Vec<GradedPoly> {
        self.rules
            .iter()
            .map(|r| &GradedPoly::monomial(&self.ring, r.lead.clone()) - &r.replacement)
            .collect()
    }

    /// Quotient dimensions by degree `0, 2, 4, …` through the top degree,
    /// for presentations built from relations.
    pub fn dims_by_degree(&self) -> Option<&[usize]> {
        self.dims.as_deref()
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.dims.as_ref().map(|d| 2 * (d.len() as u32 - 1))
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.rules.iter().any(|r| r.lead.divides(m))
    }

    /// Monomials of degree `d` not divisible by any leading monomial,
    /// ascending in the monomial order.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.ring.monomials_of_degree(d).into_iter().filter(|m| !self.is_reducible(m)).collect()
    }

    pub fn normal_form(&self, p: &GradedPoly) -> Result<GradedPoly> {
        if **p.ring() != *self.ring {
            return Err(Error::RingMismatch("polynomial is not over the presented ring".into()));
        }
        let mut pending: BTreeMap<(u32, Vec<u32>), (Monomial, Rational)> = p
            .terms()
            .map(|(m, c)| (order_key(&self.ring, m), (m.clone(), c.clone())))
            .collect();
        let mut out = GradedPoly::zero(&self.ring);
        let mut steps = 0usize;
        while let Some((_, (m, c))) = pending.pop_last() {
            let Some(rule) = self.rules.iter().find(|r| r.lead.divides(&m)) else {
                out.add_term(m, c);
                continue;
            };
            steps += 1;
            if steps > REWRITE_LIMIT {
                return Err(Error::Presentation(format!(
                    "no normal form after {REWRITE_LIMIT} rule applications"
                )));
            }
            let q = rule.lead.quotient_of(&m).expect("divisibility checked");
            for (rm, rc) in rule.replacement.terms() {
                let nm = rm.mul(&q);
                let key = order_key(&self.ring, &nm);
                let add = &c * rc;
                match pending.get_mut(&key) {
                    Some(slot) => {
                        slot.1 += &add;
                        if slot.1.is_zero() {
                            pending.remove(&key);
                        }
                    }
                    None => {
                        pending.insert(key, (nm, add));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Normal form of a product.
    pub fn mul(&self, a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly> {
        self.normal_form(&a.checked_mul(b)?)
    }

    /// Normal form of a power, reducing after every multiplication.
    pub fn pow(&self, a: &GradedPoly, e: u32) -> Result<GradedPoly> {
        let mut acc = self.normal_form(&GradedPoly::one(&self.ring))?;
        let a = self.normal_form(a)?;
        for _ in 0..e {
            acc = self.mul(&acc, &a)?;
        }
        Ok(acc)
    }

    /// Base coefficient of the fiber basis element `b` in the Leray–Hirsch
    /// decomposition `p = Σ π*(z_j) b_j`.
    pub fn fiber_coefficient(&self, p: &GradedPoly, b: &Monomial) -> Result<GradedPoly> {
        let fb = self
            .fiber_basis
            .as_ref()
            .ok_or_else(|| Error::Presentation("presentation has no fiber basis".into()))?;
        if !fb.elements.contains(b) {
            return Err(Error::Basis("requested element is not in the fiber basis".into()));
        }
        let nf = self.normal_form(p)?;
        let mut out = GradedPoly::zero(&self.ring);
        for (m, c) in nf.terms() {
            let (fiber, base) = m.split(&fb.fiber_gens);
            if !fb.elements.contains(&fiber) {
                return Err(Error::Presentation(format!(
                    "normal form of {p} is not a Leray–Hirsch decomposition over the fiber basis"
                )));
            }
            if fiber == *b {
                out.add_term(base, c.clone());
            }
        }
        Ok(out)
    }

    /// Fiber integral: the coefficient of the top fiber class.
    pub fn fiber_integrate(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let top = self
            .fiber_basis
            .as_ref()
            .ok_or_else(|| Error::Presentation("presentation has no fiber basis".into()))?
            .top()
            .clone();
        self.fiber_coefficient(p, &top)
    }
}
