//! Cohomology presentations of flag manifolds, projectivized bundles and
//! products of spheres, together with fiber integration over them.
//!
//! Sign convention for projectivized bundles: the adjoined degree-2 class
//! `c` satisfies `Σ_{i=0}^{n+1} c_i(E) c^{n+1-i} = 0`, i.e. `c` is the
//! hyperplane class `c_1(O(1))`. With this convention `∫_fiber c^n = 1`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Monomial, Ring};
use crate::presentation::RingPresentation;
use crate::rational::Rational;

/// Dimensions `(m_1, …, m_k)` of the flag manifold
/// `U(ℓ)/U(m_1)×⋯×U(m_k)`, nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpec {
    dims: Vec<usize>,
}

impl FlagSpec {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Spec("flag dimensions must be a nonempty list of positive integers".into()));
        }
        if dims.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Spec(format!("flag dimensions {dims:?} must be nonincreasing")));
        }
        Ok(FlagSpec { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ell(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `ℓ! / (m_1! ⋯ m_k!)`, the Euler characteristic.
    pub fn multinomial(&self) -> Rational {
        let mut r = Rational::factorial(self.ell() as u64);
        for &m in &self.dims {
            r = r / Rational::factorial(m as u64);
        }
        r
    }
}

/// Even dimensions `2d_1, …, 2d_r` of a product of spheres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereProductSpec {
    dims: Vec<u32>,
}

impl SphereProductSpec {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if let Some(d) = dims.iter().find(|&&d| d == 0 || d % 2 == 1) {
            return Err(Error::Spec(format!("sphere dimension {d} is not a positive even number")));
        }
        Ok(SphereProductSpec { dims })
    }

    pub fn two_spheres(r: usize) -> Self {
        SphereProductSpec { dims: vec![2; r] }
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }
}

/// Ring `y1 … yv` with `y_i` of degree `2i`: the Chern classes of one
/// universal factor.
pub fn chern_generator_ring(v: usize) -> Arc<Ring> {
    Ring::new((1..=v).map(|i| (format!("y{i}"), 2 * i as u32))).expect("valid names")
}

/// Homogeneous components `f_1 … f_d` of `(1 + y_1 + ⋯ + y_v)^{-1}`.
pub fn inverse_series(v: usize, d: usize) -> Vec<GradedPoly> {
    let ring = chern_generator_ring(v);
    let total: Vec<GradedPoly> = std::iter::once(GradedPoly::one(&ring))
        .chain((0..v).map(|i| GradedPoly::var(&ring, i)))
        .collect();
    invert_total_class(&ring, &total, d).split_off(1)
}

/// Components `X_0 = 1, X_1, …, X_d` of the inverse of a total class given
/// by its components `Y_0 = 1, Y_1, …` (index = half degree).
fn invert_total_class(ring: &Arc<Ring>, total: &[GradedPoly], d: usize) -> Vec<GradedPoly> {
    let mut inv = vec![GradedPoly::one(ring)];
    for j in 1..=d {
        let mut acc = GradedPoly::zero(ring);
        for i in 1..=j.min(total.len() - 1) {
            acc = &acc - &(&total[i] * &inv[j - i]);
        }
        inv.push(acc);
    }
    inv
}

/// Presents `H*` of the space where the bundle with total class `total`
/// (components by half degree) has a complement of rank `m`: the relations
/// are the components of `(1 + x_1 + ⋯ + x_m)(total) - 1` in half degrees
/// `m+1 … ell`, with `x = total^{-1}` truncated at `m`.
fn complement_presentation(ring: &Arc<Ring>, total: &[GradedPoly], m: usize, ell: usize) -> Result<RingPresentation> {
    let x = invert_total_class(ring, total, m);
    let mut relations = Vec::new();
    for j in m + 1..=ell {
        let mut comp = GradedPoly::zero(ring);
        for (i, xi) in x.iter().enumerate() {
            if let Some(t) = total.get(j.checked_sub(i).expect("i <= m < j")) {
                comp = &comp + &(xi * t);
            }
        }
        relations.push(comp);
    }
    let pres = RingPresentation::from_relations(ring, &relations)?;
    with_point_fiber_basis(pres)
}

/// Designates the standard monomials as a fiber basis over a point. The
/// top degree must be one-dimensional.
fn with_point_fiber_basis(pres: RingPresentation) -> Result<RingPresentation> {
    let top = pres.top_degree().expect("built from relations");
    let mut elements = Vec::new();
    for d in (0..=top).step_by(2) {
        elements.extend(pres.standard_monomials(d));
    }
    if pres.standard_monomials(top).len() != 1 {
        return Err(Error::Presentation(format!("top degree {top} is not one-dimensional")));
    }
    let gens = (0..pres.ring().len()).collect();
    pres.with_fiber_basis(gens, elements)
}

/// `H*(Gr)` for `U(m+k)/U(m)×U(k)` on generators `y1 … yk`.
///
/// Usually stated for `m ≥ k`; any `m, k ≥ 1` is accepted.
pub fn grassmannian_presentation(m: usize, k: usize) -> Result<RingPresentation> {
    if m == 0 || k == 0 {
        return Err(Error::Spec("Grassmannian needs m, k >= 1".into()));
    }
    let ring = chern_generator_ring(k);
    let total: Vec<GradedPoly> = std::iter::once(GradedPoly::one(&ring))
        .chain((0..k).map(|i| GradedPoly::var(&ring, i)))
        .collect();
    complement_presentation(&ring, &total, m, m + k)
}

/// `H*` of `M(m_1, …, m_k)` on generators `y{α}_{i}` (`2 ≤ α ≤ k`,
/// `1 ≤ i ≤ m_α`), the Chern classes of all but the first tautological
/// factor.
pub fn flag_presentation(spec: &FlagSpec) -> Result<RingPresentation> {
    let gens: Vec<(String, u32)> = spec
        .dims
        .iter()
        .enumerate()
        .skip(1)
        .flat_map(|(a, &m)| (1..=m).map(move |i| (format!("y{}_{}", a + 1, i), 2 * i as u32)))
        .collect();
    let ring = Ring::new(gens)?;
    let mut total_poly = GradedPoly::one(&ring);
    let mut next = 0;
    for &m in &spec.dims[1..] {
        let mut factor = GradedPoly::one(&ring);
        for _ in 0..m {
            factor = &factor + &GradedPoly::var(&ring, next);
            next += 1;
        }
        total_poly = &total_poly * &factor;
    }
    let rest = spec.ell() - spec.dims[0];
    let total: Vec<GradedPoly> = (0..=rest).map(|j| total_poly.graded_component(2 * j as u32)).collect();
    complement_presentation(&ring, &total, spec.dims[0], spec.ell())
}

/// A point, as a presentation with fiber basis `{1}`.
pub fn point() -> RingPresentation {
    let ring = Ring::point();
    RingPresentation::from_relations(&ring, &[])
        .and_then(|p| p.with_fiber_basis(vec![], vec![Monomial::one()]))
        .expect("point is finite")
}

/// `H*(S^{2k}) = ℚ[b]/(b²)` with fiber basis `{1, b}`.
pub fn sphere(dim: u32) -> Result<RingPresentation> {
    let spec = SphereProductSpec::new(vec![dim])?;
    let ring = Ring::new([("b", spec.dims[0])])?;
    let pres = RingPresentation::from_relations(&ring, &[GradedPoly::var(&ring, 0).pow(2)])?;
    pres.with_fiber_basis(vec![0], vec![Monomial::one(), Monomial::var(0)])
}

/// `ℚ[y_0 … y_{r-1}]/(y_j²)` with all square-free monomials as fiber basis.
pub fn sphere_product_ring(spec: &SphereProductSpec) -> Result<RingPresentation> {
    let ring = Ring::new(spec.dims.iter().enumerate().map(|(i, &d)| (format!("y{i}"), d)))?;
    let relations: Vec<GradedPoly> = (0..ring.len()).map(|i| GradedPoly::var(&ring, i).pow(2)).collect();
    let pres = RingPresentation::from_relations(&ring, &relations)?;
    let r = ring.len();
    let mut elements: Vec<Monomial> = (0u32..1 << r)
        .map(|mask| Monomial::from_dense(&(0..r).map(|i| (mask >> i) & 1).collect::<Vec<_>>()))
        .collect();
    elements.sort_by(|a, b| ring.cmp_monomials(a, b));
    pres.with_fiber_basis((0..r).collect(), elements)
}

/// `H*(ℂPⁿ) = ℚ[c]/(c^{n+1})`.
pub fn projective_space(n: usize) -> Result<RingPresentation> {
    let base = point();
    let zeros = vec![GradedPoly::zero(base.ring()); n + 1];
    projective_bundle(&base, &zeros, n)
}

/// Projectivization of a rank `n+1` bundle with Chern classes
/// `chern = [c_1, …, c_{n+1}]` over a finite base.
///
/// Adjoins `c` of degree 2 with `c^{n+1} = -Σ c_i c^{n+1-i}`; the fiber
/// basis is `1, c, …, cⁿ`.
pub fn projective_bundle(base: &RingPresentation, chern: &[GradedPoly], n: usize) -> Result<RingPresentation> {
    let base_dims = base
        .dims_by_degree()
        .ok_or_else(|| Error::Spec("base ring must be a finite presentation built from relations".into()))?;
    if chern.len() != n + 1 {
        return Err(Error::Spec(format!("expected {} Chern classes, got {}", n + 1, chern.len())));
    }
    for (i, ci) in chern.iter().enumerate() {
        if **ci.ring() != **base.ring() {
            return Err(Error::RingMismatch(format!("c_{} is not a base class", i + 1)));
        }
        if !ci.is_zero() && ci.homogeneous_degree() != Some(2 * (i as u32 + 1)) {
            return Err(Error::Spec(format!("c_{} must be homogeneous of degree {}", i + 1, 2 * (i + 1))));
        }
    }
    let name = if base.ring().index_of("c").is_none() { "c" } else { "h" };
    let ring = base.ring().extend([(name, 2)])?;
    let ci = ring.len() - 1;
    let c = GradedPoly::var(&ring, ci);
    let mut rel = c.pow(n as u32 + 1);
    for (i, chern_i) in chern.iter().enumerate() {
        rel = &rel + &(&chern_i.lift_to(&ring)? * &c.pow((n - i) as u32));
    }
    let mut relations: Vec<GradedPoly> =
        base.relations().iter().map(|r| r.lift_to(&ring)).collect::<Result<_>>()?;
    relations.push(rel);
    let pres = RingPresentation::from_relations(&ring, &relations)?;
    let total: usize = pres.dims_by_degree().expect("built from relations").iter().sum();
    let base_total: usize = base_dims.iter().sum();
    if total != base_total * (n + 1) {
        return Err(Error::Presentation("total space is not free over the base on 1, c, …, c^n".into()));
    }
    pres.with_fiber_basis(vec![ci], (0..=n as u32).map(|e| Monomial::var_pow(ci, e)).collect())
}

/// Chern classes `c̃_1 … c̃_n` of the vertical tangent bundle of a
/// projective bundle, from `T ⊕ ℂ = π*E ⊗ O(1)`:
/// `c(T) = Σ_i c_i(E)(1 + c)^{n+1-i}`.
pub fn vertical_chern_classes(pres: &RingPresentation, chern: &[GradedPoly], n: usize) -> Result<Vec<GradedPoly>> {
    let fb = pres
        .fiber_basis()
        .ok_or_else(|| Error::Presentation("projective bundle needs a fiber basis".into()))?;
    let [ci] = fb.fiber_generators() else {
        return Err(Error::Presentation("expected a single fiber generator".into()));
    };
    if chern.len() != n + 1 {
        return Err(Error::Spec(format!("expected {} Chern classes, got {}", n + 1, chern.len())));
    }
    let ring = pres.ring();
    let one_plus_c = &GradedPoly::one(ring) + &GradedPoly::var(ring, *ci);
    let mut total = one_plus_c.pow(n as u32 + 1);
    for (i, chern_i) in chern.iter().enumerate() {
        total = &total + &(&chern_i.lift_to(ring)? * &one_plus_c.pow((n - i) as u32));
    }
    (1..=n as u32).map(|i| pres.normal_form(&total.graded_component(2 * i))).collect()
}

/// `p_!`: base coefficient of the top fiber class.
pub fn fiber_integrate(p: &GradedPoly, pres: &RingPresentation) -> Result<GradedPoly> {
    pres.fiber_integrate(p)
}

/// `Φ*(t_1 ⋯ t_{k+1})` on a product of `k+1` two-spheres:
/// `(y_0+⋯+y_k)(-y_0-y_1+y_2+⋯+y_k) ∏_{j=2}^{k} (-j y_j + Σ_{i>j} y_i)`.
pub fn phi_pullback(k: usize) -> Result<GradedPoly> {
    if k == 0 {
        return Err(Error::Spec("phi_pullback needs k >= 1".into()));
    }
    let pres = sphere_product_ring(&SphereProductSpec::two_spheres(k + 1))?;
    let ring = pres.ring().clone();
    let y = |i: usize| GradedPoly::var(&ring, i);
    let tail = |from: usize| (from..=k).fold(GradedPoly::zero(&ring), |acc, i| &acc + &y(i));
    let first = tail(0);
    let second = &tail(2) - &(&y(0) + &y(1));
    let mut acc = pres.mul(&first, &second)?;
    for j in 2..=k {
        let factor = &tail(j + 1) - &y(j).scale(&Rational::integer(j as i64));
        acc = pres.mul(&acc, &factor)?;
    }
    Ok(acc)
}

/// Total quotient dimension.
pub fn total_dimension(pres: &RingPresentation) -> Option<usize> {
    pres.dims_by_degree().map(|d| d.iter().sum())
}
