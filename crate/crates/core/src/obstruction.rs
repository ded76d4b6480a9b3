//! Degree-wise linear algebra over presented rings: bases, ideal
//! membership, the Whitehead product criteria and hard Lefschetz.

use crate::error::{Error, Result};
use crate::linalg::{in_span, Matrix};
use crate::poly::{GradedPoly, Monomial};
use crate::presentation::RingPresentation;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBasis {
    pub degree: u32,
    pub elements: Vec<Monomial>,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Coordinates of a normal form over the standard monomials of degree `d`.
fn standard_vector(pres: &RingPresentation, p: &GradedPoly, standard: &[Monomial]) -> Result<Vec<Rational>> {
    let nf = pres.normal_form(p)?;
    for (m, _) in nf.terms() {
        if !standard.contains(m) {
            return Err(Error::Presentation(format!("normal form leaves the degree component: {nf}")));
        }
    }
    Ok(standard.iter().map(|m| nf.coeff(m)).collect())
}

/// Basis of the degree-`d` component: monomials, smallest first, whose
/// normal forms are linearly independent.
pub fn degree_basis(pres: &RingPresentation, d: u32) -> Result<DegreeBasis> {
    let standard = pres.standard_monomials(d);
    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for m in pres.ring().monomials_of_degree(d) {
        let v = standard_vector(pres, &GradedPoly::monomial(pres.ring(), m.clone()), &standard)?;
        if in_span(&rows, &v) {
            continue;
        }
        rows.push(v);
        chosen.push(m);
    }
    Ok(DegreeBasis { degree: d, elements: chosen })
}

/// Coordinates of the homogeneous class `p` in `basis`.
pub fn coordinates(pres: &RingPresentation, basis: &DegreeBasis, p: &GradedPoly) -> Result<Vec<Rational>> {
    let standard = pres.standard_monomials(basis.degree);
    let cols: Vec<Vec<Rational>> = basis
        .elements
        .iter()
        .map(|m| standard_vector(pres, &GradedPoly::monomial(pres.ring(), m.clone()), &standard))
        .collect::<Result<_>>()?;
    let target = standard_vector(pres, p, &standard)?;
    // Augmented system [cols | target] in standard-monomial rows.
    let n = cols.len();
    let rows: Vec<Vec<Rational>> = (0..standard.len())
        .map(|i| cols.iter().map(|c| c[i].clone()).chain(std::iter::once(target[i].clone())).collect())
        .collect();
    let mut m = Matrix::from_rows(n + 1, rows);
    let pivots = m.rref();
    if pivots.contains(&n) {
        return Err(Error::Basis(format!("{p} is not in degree {}", basis.degree)));
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m.get(row, n).clone();
    }
    Ok(x)
}

fn check_homogeneous(p: &GradedPoly, what: &str) -> Result<Option<u32>> {
    if p.is_zero() {
        return Ok(None);
    }
    p.homogeneous_degree()
        .map(Some)
        .ok_or_else(|| Error::Spec(format!("{what} is not homogeneous: {p}")))
}

/// Whether `z` lies in the ideal generated by `gens`, decided in the degree
/// of `z` by a linear solve over all products `g·m`.
pub fn ideal_membership(z: &GradedPoly, gens: &[GradedPoly], pres: &RingPresentation) -> Result<bool> {
    let d = check_homogeneous(z, "target")?;
    let mut gen_degrees = Vec::with_capacity(gens.len());
    for g in gens {
        gen_degrees.push(check_homogeneous(g, "generator")?);
    }
    let Some(d) = d else { return Ok(true) };
    let standard = pres.standard_monomials(d);
    let mut vectors = Vec::new();
    for (g, gd) in gens.iter().zip(gen_degrees) {
        let Some(gd) = gd else { continue };
        if gd > d {
            continue;
        }
        for m in pres.ring().monomials_of_degree(d - gd) {
            vectors.push(standard_vector(pres, &g.mul_monomial(&m), &standard)?);
        }
    }
    Ok(in_span(&vectors, &standard_vector(pres, z, &standard)?))
}

/// A ring `H*(M)` with a functional `α*` on `H²` and a class `c` with
/// `α*(c) ≠ 0`.
#[derive(Clone, Debug)]
pub struct ObstructionInput {
    pres: RingPresentation,
    h2: DegreeBasis,
    alpha: Vec<Rational>,
    c: GradedPoly,
}

impl ObstructionInput {
    /// `alpha` lists the values of `α*` on `degree_basis(pres, 2)`.
    pub fn new(pres: RingPresentation, alpha: Vec<Rational>, c: GradedPoly) -> Result<Self> {
        let h2 = degree_basis(&pres, 2)?;
        if alpha.len() != h2.dim() {
            return Err(Error::Spec(format!("alpha has {} values but H^2 has dimension {}", alpha.len(), h2.dim())));
        }
        if alpha.iter().all(Rational::is_zero) {
            return Err(Error::Spec("alpha pairing is identically zero".into()));
        }
        if !c.is_zero() && c.homogeneous_degree() != Some(2) {
            return Err(Error::Spec("c must be a degree-2 class".into()));
        }
        let input = ObstructionInput { pres, h2, alpha, c };
        if input.pairing(&input.c)?.is_zero() {
            return Err(Error::Spec("alpha pairing vanishes on c".into()));
        }
        Ok(input)
    }

    /// Uses the first class of `H²` with nonzero pairing as `c`.
    pub fn with_default_class(pres: RingPresentation, alpha: Vec<Rational>) -> Result<Self> {
        let h2 = degree_basis(&pres, 2)?;
        let i = alpha
            .iter()
            .position(|a| !a.is_zero())
            .ok_or_else(|| Error::Spec("alpha pairing is identically zero".into()))?;
        let c = GradedPoly::monomial(pres.ring(), h2.elements[i].clone());
        ObstructionInput::new(pres, alpha, c)
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.pres
    }

    pub fn class(&self) -> &GradedPoly {
        &self.c
    }

    pub fn h2(&self) -> &DegreeBasis {
        &self.h2
    }

    pub fn pairing(&self, x: &GradedPoly) -> Result<Rational> {
        let coords = coordinates(&self.pres, &self.h2, x)?;
        Ok(coords.iter().zip(&self.alpha).map(|(a, b)| a * b).sum())
    }

    /// Basis of `ker α*` as degree-2 classes.
    pub fn kernel(&self) -> Vec<GradedPoly> {
        let m = Matrix::from_rows(self.alpha.len(), vec![self.alpha.clone()]);
        m.nullspace()
            .into_iter()
            .map(|v| {
                GradedPoly::from_terms(
                    self.pres.ring(),
                    self.h2.elements.iter().cloned().zip(v),
                )
            })
            .collect()
    }

    /// The same input with `c` replaced.
    pub fn with_class(&self, c: GradedPoly) -> Result<Self> {
        ObstructionInput::new(self.pres.clone(), self.alpha.clone(), c)
    }
}

pub const HYPOTHESIS_NOT_REQUIRED: &str = "not_required";
pub const HYPOTHESIS_HOMOLOGICAL_PROXY: &str = "homological_proxy";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub holds: bool,
    pub degree_checked: u32,
    pub hypothesis_checked: &'static str,
}

fn power_in_kernel_ideal(input: &ObstructionInput, e: u32) -> Result<bool> {
    let z = input.pres.pow(&input.c, e)?;
    ideal_membership(&z, &input.kernel(), &input.pres)
}

/// `c² ∈ (ker α*)`.
pub fn whitehead_square_criterion(input: &ObstructionInput) -> Result<CriterionReport> {
    Ok(CriterionReport {
        holds: power_in_kernel_ideal(input, 2)?,
        degree_checked: 4,
        hypothesis_checked: HYPOTHESIS_NOT_REQUIRED,
    })
}

/// `c³ ∈ (ker α*)`. The simple-connectivity hypothesis on `π₃` is replaced
/// by `H³ = 0`, which holds for every evenly graded ring.
pub fn whitehead_cube_criterion(input: &ObstructionInput) -> Result<CriterionReport> {
    Ok(CriterionReport {
        holds: power_in_kernel_ideal(input, 3)?,
        degree_checked: 6,
        hypothesis_checked: HYPOTHESIS_HOMOLOGICAL_PROXY,
    })
}

/// Whether `a^k: H^{n−k} → H^{n+k}` is an isomorphism for `1 ≤ k ≤ n`,
/// where the top degree is `2n`.
pub fn hard_lefschetz_check(pres: &RingPresentation, a: &GradedPoly, n: u32) -> Result<bool> {
    if a.homogeneous_degree() != Some(2) {
        return Err(Error::Spec("a must be a nonzero class of degree 2".into()));
    }
    if degree_basis(pres, 2 * n)?.dim() == 0 {
        return Err(Error::Spec(format!("ring has nothing in degree {}", 2 * n)));
    }
    for d in (2 * n + 2)..=(2 * n + 2 * pres.ring().max_degree().max(2)) {
        if d % 2 == 0 && degree_basis(pres, d)?.dim() != 0 {
            return Err(Error::Spec(format!("ring has classes above degree {}", 2 * n)));
        }
    }
    for k in 1..=n {
        let src = degree_basis(pres, n - k)?;
        let dst = degree_basis(pres, n + k)?;
        if src.dim() != dst.dim() {
            return Ok(false);
        }
        if src.dim() == 0 {
            continue;
        }
        let ak = pres.pow(a, k)?;
        let cols: Vec<Vec<Rational>> = src
            .elements
            .iter()
            .map(|m| coordinates(pres, &dst, &ak.mul_monomial(m)))
            .collect::<Result<_>>()?;
        if Matrix::from_rows(dst.dim(), cols).rank() != dst.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{grassmannian_presentation, projective_space, sphere_product_ring, SphereProductSpec};
    use crate::poly::Ring;
    use proptest::prelude::*;

    fn s2xs2() -> RingPresentation {
        sphere_product_ring(&SphereProductSpec::two_spheres(2)).unwrap()
    }

    fn p(pres: &RingPresentation, s: &str) -> GradedPoly {
        GradedPoly::parse(pres.ring(), s).unwrap()
    }

    fn first_factor(pres: &RingPresentation) -> Vec<Rational> {
        let h2 = degree_basis(pres, 2).unwrap();
        h2.elements.iter().map(|m| if m.exponent(0) == 1 { Rational::one() } else { Rational::zero() }).collect()
    }

    #[test]
    fn bases() {
        let r = Ring::new([("y", 2)]).unwrap();
        let pres = RingPresentation::from_relations(&r, &[GradedPoly::var(&r, 0).pow(3)]).unwrap();
        let b = degree_basis(&pres, 4).unwrap();
        assert_eq!(b.elements, vec![Monomial::var_pow(0, 2)]);
        assert_eq!(degree_basis(&pres, 3).unwrap().dim(), 0);
        assert_eq!(degree_basis(&pres, 6).unwrap().dim(), 0);
        let gr = grassmannian_presentation(2, 2).unwrap();
        let dims: Vec<usize> = (0..=4).map(|i| degree_basis(&gr, 2 * i).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn grassmannian_totals() {
        for m in 1..=4usize {
            for k in 1..=4usize {
                let gr = grassmannian_presentation(m, k).unwrap();
                let total: usize = (0..=(m * k) as u32).map(|i| degree_basis(&gr, 2 * i).unwrap().dim()).sum();
                assert_eq!(Rational::integer(total as i64), Rational::binomial((m + k) as u64, k as u64));
            }
        }
    }

    #[test]
    fn membership_examples() {
        let s = s2xs2();
        assert!(ideal_membership(&GradedPoly::zero(s.ring()), &[], &s).unwrap());
        assert!(ideal_membership(&p(&s, "y0*y1"), &[p(&s, "y1")], &s).unwrap());
        assert!(!ideal_membership(&p(&s, "y0*y1"), &[], &s).unwrap());
        let cp2 = projective_space(2).unwrap();
        assert!(!ideal_membership(&p(&cp2, "c^2"), &[], &cp2).unwrap());
        assert!(ideal_membership(&p(&cp2, "c^2"), &[p(&cp2, "c")], &cp2).unwrap());
        assert!(ideal_membership(&p(&s, "y0 + y0*y1"), &[], &s).is_err());
    }

    #[test]
    fn square_and_cube() {
        let run = |pres: RingPresentation| {
            let alpha = first_factor(&pres);
            let input = ObstructionInput::with_default_class(pres, alpha).unwrap();
            (
                whitehead_square_criterion(&input).unwrap().holds,
                whitehead_cube_criterion(&input).unwrap().holds,
            )
        };
        assert!(run(projective_space(1).unwrap()).0);
        assert_eq!(run(projective_space(2).unwrap()), (false, true));
        assert!(!run(projective_space(3).unwrap()).1);
        assert_eq!(run(s2xs2()), (true, true));
        let cube = whitehead_cube_criterion(
            &ObstructionInput::with_default_class(s2xs2(), first_factor(&s2xs2())).unwrap(),
        )
        .unwrap();
        assert_eq!(cube.degree_checked, 6);
        assert_eq!(cube.hypothesis_checked, HYPOTHESIS_HOMOLOGICAL_PROXY);
    }

    #[test]
    fn input_errors() {
        let s = s2xs2();
        let alpha = first_factor(&s);
        assert!(ObstructionInput::new(s.clone(), alpha.clone(), p(&s, "y1")).is_err());
        assert!(ObstructionInput::new(s.clone(), vec![Rational::zero(); 2], p(&s, "y0")).is_err());
        assert!(ObstructionInput::new(s.clone(), vec![Rational::one()], p(&s, "y0")).is_err());
        let input = ObstructionInput::new(s.clone(), alpha, p(&s, "y0")).unwrap();
        assert_eq!(input.kernel(), vec![p(&s, "y1")]);
    }

    #[test]
    fn lefschetz() {
        for n in 1..=6u32 {
            let cp = projective_space(n as usize).unwrap();
            assert!(hard_lefschetz_check(&cp, &p(&cp, "c"), n).unwrap());
        }
        let s = s2xs2();
        assert!(!hard_lefschetz_check(&s, &p(&s, "y0"), 2).unwrap());
        assert!(hard_lefschetz_check(&s, &p(&s, "y0 + y1"), 2).unwrap());
        assert!(hard_lefschetz_check(&s, &p(&s, "y0*y1"), 2).is_err());
        let gr = grassmannian_presentation(2, 2).unwrap();
        assert!(hard_lefschetz_check(&gr, &p(&gr, "3*y1"), 4).unwrap());
        assert!(hard_lefschetz_check(&gr, &p(&gr, "y1"), 3).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let gr = grassmannian_presentation(2, 2).unwrap();
        let b = degree_basis(&gr, 4).unwrap();
        let x = p(&gr, "2*y1^2 - 5*y2");
        let coords = coordinates(&gr, &b, &x).unwrap();
        let back = b
            .elements
            .iter()
            .zip(&coords)
            .fold(GradedPoly::zero(gr.ring()), |acc, (m, c)| &acc + &GradedPoly::term(gr.ring(), m.clone(), c.clone()));
        assert_eq!(gr.normal_form(&back).unwrap(), gr.normal_form(&x).unwrap());
    }

    /// Oracle: membership decided by brute-force rank over every product
    /// `g·m` written in full monomial coordinates before reduction.
    fn brute_membership(z: &GradedPoly, gens: &[GradedPoly], pres: &RingPresentation) -> bool {
        let Some(d) = z.homogeneous_degree() else { return true };
        let rels: Vec<GradedPoly> = pres.relations();
        let all = pres.ring().monomials_of_degree(d);
        let vec_of = |q: &GradedPoly| all.iter().map(|m| q.coeff(m)).collect::<Vec<_>>();
        let mut vectors = Vec::new();
        for g in gens.iter().chain(&rels) {
            let Some(gd) = g.homogeneous_degree() else { continue };
            if gd > d {
                continue;
            }
            for m in pres.ring().monomials_of_degree(d - gd) {
                vectors.push(vec_of(&g.mul_monomial(&m)));
            }
        }
        in_span(&vectors, &vec_of(z))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn membership_matches_oracle(
            which in 0usize..3,
            zc in prop::collection::vec(-2i64..=2, 6),
            gc in prop::collection::vec(-2i64..=2, 4),
            deg in 1u32..=3,
        ) {
            let pres = match which {
                0 => s2xs2(),
                1 => grassmannian_presentation(2, 2).unwrap(),
                _ => sphere_product_ring(&SphereProductSpec::two_spheres(3)).unwrap(),
            };
            let ring = pres.ring().clone();
            let lin = |c: &[i64]| GradedPoly::from_terms(
                &ring,
                ring.monomials_of_degree(2).into_iter().zip(c.iter().map(|&x| Rational::integer(x))),
            );
            let target: Vec<Monomial> = ring.monomials_of_degree(2 * deg);
            let z = GradedPoly::from_terms(&ring, target.into_iter().zip(zc.iter().map(|&x| Rational::integer(x))));
            let gens = vec![lin(&gc[..2]), lin(&gc[2..])];
            prop_assert_eq!(ideal_membership(&z, &gens, &pres).unwrap(), brute_membership(&z, &gens, &pres));
        }

        #[test]
        fn criteria_invariant_under_reduction(
            which in 0usize..3,
            lambda in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
            zs in prop::collection::vec(-3i64..=3, 3),
        ) {
            let pres = match which {
                0 => s2xs2(),
                1 => projective_space(2).unwrap(),
                _ => sphere_product_ring(&SphereProductSpec::two_spheres(3)).unwrap(),
            };
            let alpha = first_factor(&pres);
            let input = ObstructionInput::with_default_class(pres.clone(), alpha).unwrap();
            let mut c = input.class().scale(&Rational::integer(lambda));
            for (k, s) in input.kernel().iter().zip(&zs) {
                c = &c + &k.scale(&Rational::integer(*s));
            }
            let moved = input.with_class(c).unwrap();
            prop_assert_eq!(
                whitehead_square_criterion(&moved).unwrap(),
                whitehead_square_criterion(&input).unwrap()
            );
            prop_assert_eq!(
                whitehead_cube_criterion(&moved).unwrap(),
                whitehead_cube_criterion(&input).unwrap()
            );
        }
    }
}
