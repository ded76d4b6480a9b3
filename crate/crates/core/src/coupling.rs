//! Coupling class and the characteristic classes `μ_k`, `ν_k`, `μ_{k,I}`
//! obtained from it by fiber integration.

use crate::error::{Error, Result};
use crate::poly::GradedPoly;
use crate::presentation::RingPresentation;
use crate::rational::Rational;

/// Images `σ*(g)` of the fiber generators under a section; base
/// generators are fixed by `σ*` because `σ* ∘ π* = id`.
#[derive(Clone, Debug)]
pub struct SectionPullback {
    images: Vec<(usize, GradedPoly)>,
}

impl SectionPullback {
    pub fn new(pres: &RingPresentation, images: Vec<(usize, GradedPoly)>) -> Result<Self> {
        let fb = pres
            .fiber_basis()
            .ok_or_else(|| Error::Presentation("section needs a presentation with a fiber basis".into()))?;
        let fiber = fb.fiber_generators();
        for &g in fiber {
            if !images.iter().any(|(i, _)| *i == g) {
                return Err(Error::Spec(format!("section gives no image for fiber generator {}", pres.ring().name(g))));
            }
        }
        for (g, img) in &images {
            if !fiber.contains(g) {
                return Err(Error::Spec(format!("{} is not a fiber generator", pres.ring().name(*g))));
            }
            if **img.ring() != **pres.ring() {
                return Err(Error::RingMismatch("section image lives in another ring".into()));
            }
            if img.terms().any(|(m, _)| m.pairs().iter().any(|(i, _)| fiber.contains(i))) {
                return Err(Error::Spec("section images must be base classes".into()));
            }
            let want = pres.ring().degree_of(*g);
            if !img.is_zero() && img.homogeneous_degree() != Some(want) {
                return Err(Error::Spec(format!("section image must have degree {want}")));
            }
        }
        Ok(SectionPullback { images })
    }

    /// The section pulling every fiber generator back to zero.
    pub fn zero(pres: &RingPresentation) -> Result<Self> {
        let fb = pres
            .fiber_basis()
            .ok_or_else(|| Error::Presentation("section needs a presentation with a fiber basis".into()))?;
        let images = fb.fiber_generators().iter().map(|&g| (g, GradedPoly::zero(pres.ring()))).collect();
        SectionPullback::new(pres, images)
    }

    /// `σ*(p)`, a base class written in the total-space ring.
    pub fn apply(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let ring = p.ring();
        let images: Vec<GradedPoly> = (0..ring.len())
            .map(|i| match self.images.iter().find(|(g, _)| *g == i) {
                Some((_, img)) => img.clone(),
                None => GradedPoly::var(ring, i),
            })
            .collect();
        p.substitute(ring, &images)
    }
}

/// Total space of a bundle with fiber of real dimension `2n`, together with
/// a degree-2 class `u` extending the fiber class.
#[derive(Clone, Debug)]
pub struct CouplingInput {
    pres: RingPresentation,
    u: GradedPoly,
    n: u32,
    section: Option<SectionPullback>,
    /// `π_!(uⁿ)`, a nonzero scalar.
    volume: Rational,
}

impl CouplingInput {
    pub fn new(pres: RingPresentation, u: GradedPoly, n: u32) -> Result<Self> {
        if pres.fiber_basis().is_none() {
            return Err(Error::Presentation("coupling needs a presentation with a fiber basis".into()));
        }
        let top_deg = pres.ring().monomial_degree(pres.fiber_basis().expect("checked").top());
        if top_deg != 2 * n {
            return Err(Error::Spec(format!("fiber top class has degree {top_deg}, expected {}", 2 * n)));
        }
        if u.homogeneous_degree() != Some(2) {
            return Err(Error::Spec("u must be a nonzero homogeneous class of degree 2".into()));
        }
        let vol = pres.fiber_integrate(&pres.pow(&u, n)?)?;
        let volume = vol
            .as_constant()
            .ok_or_else(|| Error::Degeneracy(format!("fiber integral of u^n is not a scalar: {vol}")))?;
        if volume.is_zero() {
            return Err(Error::Degeneracy("fiber integral of u^n vanishes".into()));
        }
        Ok(CouplingInput { pres, u, n, section: None, volume })
    }

    pub fn with_section(mut self, section: SectionPullback) -> Self {
        self.section = Some(section);
        self
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.pres
    }

    pub fn u(&self) -> &GradedPoly {
        &self.u
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    fn integrate_power(&self, class: &GradedPoly, e: u32) -> Result<GradedPoly> {
        self.pres.fiber_integrate(&self.pres.pow(class, e)?)
    }
}

/// `ã = u - π*π_!(u^{n+1}) / ((n+1) π_!(uⁿ))`.
///
/// With the fiber volume normalized to one this is the familiar
/// `u - 1/(n+1) π*π_!(u^{n+1})`.
pub fn coupling_class(input: &CouplingInput) -> Result<GradedPoly> {
    let correction = input.integrate_power(&input.u, input.n + 1)?;
    let scale = (Rational::integer(input.n as i64 + 1) * input.volume.clone()).recip().expect("volume nonzero");
    input.pres.normal_form(&(&input.u - &correction.scale(&scale)))
}

/// `μ_k = π_!(ã^{n+k})`.
pub fn mu_class(input: &CouplingInput, k: u32) -> Result<GradedPoly> {
    if k == 0 {
        return Err(Error::Spec("mu_k is defined for k >= 1".into()));
    }
    let a = coupling_class(input)?;
    input.integrate_power(&a, input.n + k)
}

/// `ã_p = u - π*σ*(u)`, normalized to vanish along the section.
pub fn pointed_coupling_class(input: &CouplingInput) -> Result<GradedPoly> {
    let section = input
        .section
        .as_ref()
        .ok_or_else(|| Error::Spec("nu classes need a section pullback".into()))?;
    input.pres.normal_form(&(&input.u - &section.apply(&input.u)?))
}

/// `ν_k = π_!(ã_p^{n+k})`; unlike `μ_1`, `ν_1` need not vanish.
pub fn nu_class(input: &CouplingInput, k: u32) -> Result<GradedPoly> {
    if k == 0 {
        return Err(Error::Spec("nu_k is defined for k >= 1".into()));
    }
    let a = pointed_coupling_class(input)?;
    input.integrate_power(&a, input.n + k)
}

/// Exponent data for `μ_{k,I} = π_!(ã^k c̃_1^{m_1} ⋯ c̃_n^{m_n})`.
#[derive(Clone, Debug)]
pub struct MixedIndex {
    pub k: u32,
    pub exponents: Vec<u32>,
    /// `c̃_i` at index `i - 1`, of degree `2i`.
    pub vertical_classes: Vec<GradedPoly>,
}

pub fn mixed_class(input: &CouplingInput, idx: &MixedIndex) -> Result<GradedPoly> {
    if idx.exponents.len() > idx.vertical_classes.len() {
        return Err(Error::Spec(format!(
            "{} exponents but only {} vertical classes",
            idx.exponents.len(),
            idx.vertical_classes.len()
        )));
    }
    for (i, c) in idx.vertical_classes.iter().enumerate() {
        let want = 2 * (i as u32 + 1);
        if !c.is_zero() && c.homogeneous_degree() != Some(want) {
            return Err(Error::Spec(format!("vertical class {} must have degree {want}", i + 1)));
        }
    }
    let a = coupling_class(input)?;
    let mut prod = input.pres.pow(&a, idx.k)?;
    for (c, &m) in idx.vertical_classes.iter().zip(&idx.exponents) {
        prod = input.pres.mul(&prod, &input.pres.pow(c, m)?)?;
    }
    input.pres.fiber_integrate(&prod)
}
