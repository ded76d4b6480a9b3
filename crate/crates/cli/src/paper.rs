//! Reruns every reference computation and reports each anchor.

use charcalc_core::bundle::{chern_class, chern_class_monomial_basis, sphere_eval_with, BundleExpr};
use charcalc_core::coupling::{mu_class, nu_class, CouplingInput, SectionPullback};
use charcalc_core::equivariant::{
    extremal_vertices, mu_of_circle, nu1_at_fixed_point, su_product_integral, WeightedCircleAction,
};
use charcalc_core::flag::{inverse_series, phi_pullback, projective_bundle, projective_space, sphere, sphere_product_ring, SphereProductSpec};
use charcalc_core::obstruction::{
    hard_lefschetz_check, whitehead_cube_criterion, whitehead_square_criterion, ObstructionInput,
};
use charcalc_core::symfun::{monomial_symmetric, sigma_top_coefficient, to_elementary, Partition};
use charcalc_core::{GradedPoly, Monomial, Rational, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Value of `σ_k` on the spherical generator of `π_{2k}(BU)`.
pub type SphereNormalization = dyn Fn(usize) -> Rational;

pub fn standard_normalization(k: usize) -> Rational {
    Rational::factorial(k.saturating_sub(1) as u64)
}

pub const SPHERE_GROUP: &str = "spherical-evaluation";

#[derive(Clone, Debug)]
pub struct Anchor {
    pub id: &'static str,
    pub group: &'static str,
    pub statement: &'static str,
    pub observed: String,
    pub pass: bool,
}

fn anchor(id: &'static str, group: &'static str, statement: &'static str, r: Result<(String, bool)>) -> Anchor {
    let (observed, pass) = r.unwrap_or_else(|e| (format!("error: {e}"), false));
    Anchor { id, group, statement, observed, pass }
}

fn random_weights(rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let n = rng.gen_range(1..=4usize);
        let w: Vec<i64> = (0..=n).map(|_| rng.gen_range(-6..=6)).collect();
        if w.iter().any(|x| *x != w[0]) {
            return w;
        }
    }
}

pub fn run_suite(seed: u64) -> Vec<Anchor> {
    run_suite_with(seed, &standard_normalization)
}

/// The suite with an explicit sphere normalization, used to check that a
/// broken normalization is caught by exactly the evaluation anchors.
pub fn run_suite_with(seed: u64, norm: &SphereNormalization) -> Vec<Anchor> {
    let mut out = Vec::new();
    let e4 = BundleExpr::universal(4);
    let l2 = BundleExpr::lambda2(e4.clone());
    let sphere_value = |e: &BundleExpr, k: usize| sphere_eval_with(e, k, &norm(k));

    out.push(anchor(
        "lambda2-c4-monomial-basis",
        SPHERE_GROUP,
        "c4(Λ²E) = 2s(3,1) + 5s(2,2) + 13s(2,1,1) + 30s(1,1,1,1) for E of rank 4",
        chern_class_monomial_basis(&l2, 4).map(|s| {
            let text = s.to_string();
            let ok = text == "2*s(3,1) + 5*s(2,2) + 13*s(2,1,1) + 30*s(1,1,1,1)";
            (text, ok)
        }),
    ));
    out.push(anchor(
        "sigma4-coefficients",
        SPHERE_GROUP,
        "σ4-coefficients of s(3,1), s(2,2), s(2,1,1), s(1,1,1,1) in 4 variables are 4, 2, -4, 1",
        (|| {
            let mut vals = Vec::new();
            for p in ["(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"] {
                let part: Partition = p.parse()?;
                let e = to_elementary(&monomial_symmetric(&part, 4)?, 4)?;
                vals.push(sigma_top_coefficient(&e, 4).to_string());
            }
            let ok = vals == ["4", "2", "-4", "1"];
            Ok((vals.join(","), ok))
        })(),
    ));
    out.push(anchor(
        "c4-universal-on-generator",
        SPHERE_GROUP,
        "c4(E)(γ) = 6 for the generator γ of π8(BU(4))",
        sphere_value(&e4, 4).map(|v| (v.to_string(), v == Rational::integer(6))),
    ));
    out.push(anchor(
        "c4-lambda2-on-generator",
        SPHERE_GROUP,
        "c4(Λ²E)(γ) = -24",
        sphere_value(&l2, 4).map(|v| (v.to_string(), v == Rational::integer(-24))),
    ));
    out.push(anchor(
        "four-copies-plus-lambda2",
        SPHERE_GROUP,
        "c4(4E ⊕ Λ²E)(γ) = 0",
        sphere_value(&BundleExpr::sum_all(vec![e4.clone(), e4.clone(), e4.clone(), e4.clone(), l2.clone()]), 4)
            .map(|v| (v.to_string(), v.is_zero())),
    ));

    out.push(anchor(
        "conjugate-odd-classes",
        "conjugate-bundles",
        "odd Chern classes of E ⊕ E* vanish for rank m ≤ 4",
        (|| {
            let mut checked = 0;
            for m in 1..=4 {
                let e = BundleExpr::universal(m);
                let s = BundleExpr::sum(e.clone(), BundleExpr::dual(e));
                for k in (1..=2 * m).step_by(2) {
                    if !chern_class(&s, k)?.is_zero() {
                        return Ok((format!("c{k} nonzero for m={m}"), false));
                    }
                    checked += 1;
                }
            }
            Ok((format!("{checked} classes vanish"), true))
        })(),
    ));

    out.push(anchor(
        "square-zero-product",
        "sphere-products",
        "Φ*(t1⋯t_{k+1}) = 2(-1)^k k! y0⋯yk for 1 ≤ k ≤ 6",
        (|| {
            let mut vals = Vec::new();
            let mut ok = true;
            for k in 1..=6usize {
                let p = phi_pullback(k)?;
                let top = Monomial::from_pairs((0..=k).map(|i| (i, 1)));
                let sign = if k % 2 == 0 { 2 } else { -2 };
                let expected = GradedPoly::term(p.ring(), top, Rational::integer(sign) * Rational::factorial(k as u64));
                ok &= p == expected;
                vals.push(p.to_canonical());
            }
            Ok((vals.join("; "), ok))
        })(),
    ));

    out.push(anchor(
        "inverse-series-leading-coefficient",
        "flag-manifolds",
        "the coefficient of y1^i in f_i is (-1)^i for i ≤ 6",
        {
            let fs = inverse_series(6, 6);
            let coeffs: Vec<Rational> =
                fs.iter().enumerate().map(|(i, f)| f.coeff(&Monomial::var_pow(0, i as u32 + 1))).collect();
            let ok = coeffs.iter().enumerate().all(|(i, c)| *c == Rational::integer(if i % 2 == 0 { -1 } else { 1 }));
            Ok((coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","), ok))
        },
    ));

    out.push(anchor(
        "projectivized-relation",
        "projectivized-bundles",
        "over S^{2k} with only c_k = β: c^{n+1} = -β c^{n+1-k}, 2 ≤ k ≤ n+1 ≤ 5",
        (|| {
            let mut ok = true;
            for n in 1..=4usize {
                for k in 2..=n + 1 {
                    let (pres, _) = sphere_bundle(n, k)?;
                    let c = GradedPoly::var(pres.ring(), 1);
                    let b = GradedPoly::var(pres.ring(), 0);
                    ok &= pres.normal_form(&c.pow(n as u32 + 1))? == -&(&b * &c.pow((n + 1 - k) as u32));
                }
            }
            Ok(("checked 10 bundles".to_string(), ok))
        })(),
    ));
    out.push(anchor(
        "projectivized-fiber-integral",
        "projectivized-bundles",
        "p_!(c^{n+k}) is a nonzero multiple of β",
        (|| {
            let mut consts = Vec::new();
            let mut ok = true;
            for n in 1..=4usize {
                for k in 2..=n + 1 {
                    let (pres, _) = sphere_bundle(n, k)?;
                    let c = GradedPoly::var(pres.ring(), 1);
                    let v = pres.fiber_integrate(&c.pow((n + k) as u32))?;
                    let coeff = v.coeff(&Monomial::var(0));
                    ok &= !coeff.is_zero() && v == GradedPoly::term(pres.ring(), Monomial::var(0), coeff.clone());
                    consts.push(coeff.to_string());
                }
            }
            Ok((format!("constants {}", consts.join(",")), ok))
        })(),
    ));

    out.push(anchor(
        "mu1-vanishes",
        "coupling",
        "μ1 = 0 for every coupling class",
        (|| {
            let mut ok = true;
            for n in 1..=3usize {
                for k in 2..=n + 1 {
                    let (pres, _) = sphere_bundle(n, k)?;
                    let u = GradedPoly::var(pres.ring(), 1);
                    ok &= mu_class(&CouplingInput::new(pres, u, n as u32)?, 1)?.is_zero();
                }
            }
            Ok(("checked 6 bundles".to_string(), ok))
        })(),
    ));
    out.push(anchor(
        "nu1-need-not-vanish",
        "coupling",
        "ν1 ≠ 0 for the Hirzebruch surface with its zero section",
        (|| {
            let base = projective_space(1)?;
            let cb = GradedPoly::var(base.ring(), 0);
            let pres = projective_bundle(&base, &[cb, GradedPoly::zero(base.ring())], 1)?;
            let u = GradedPoly::var(pres.ring(), 1);
            let input = CouplingInput::new(pres.clone(), u, 1)?.with_section(SectionPullback::zero(&pres)?);
            let nu = nu_class(&input, 1)?;
            Ok((nu.to_canonical(), !nu.is_zero()))
        })(),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<Vec<i64>> = (0..20).map(|_| random_weights(&mut rng)).collect();
    out.push(anchor(
        "circle-mu-even-nonzero",
        "circle-actions",
        "μ_k(λ) ≠ 0 for even k ≤ 6 on sampled nontrivial circles in ℂPⁿ, n ≤ 4",
        (|| {
            for w in &sample {
                let a = WeightedCircleAction::new(w.clone())?;
                for k in [2, 4, 6] {
                    if mu_of_circle(&a, k)?.is_zero() {
                        return Ok((format!("zero for weights {w:?}, k={k}"), false));
                    }
                }
            }
            Ok((format!("{} actions", sample.len()), true))
        })(),
    ));
    out.push(anchor(
        "circle-nu1-extreme-vertex",
        "circle-actions",
        "∫(H - H(p))ωⁿ ≠ 0 when H has its maximum or minimum at p",
        (|| {
            for w in &sample {
                let a = WeightedCircleAction::new(w.clone())?;
                for v in extremal_vertices(&a) {
                    if nu1_at_fixed_point(&a, v)?.is_zero() {
                        return Ok((format!("zero for weights {w:?} at vertex {v}"), false));
                    }
                }
            }
            Ok((format!("{} actions", sample.len()), true))
        })(),
    ));
    out.push(anchor(
        "su-product-nonzero",
        "circle-actions",
        "∫ H1² H2 ⋯ H_{k-1} ωⁿ ≠ 0 for 2 ≤ k ≤ ℓ ≤ 4",
        (|| {
            let mut vals = Vec::new();
            let mut ok = true;
            for ell in 2..=4 {
                for k in 2..=ell {
                    let v = su_product_integral(ell, k)?;
                    ok &= !v.is_zero();
                    vals.push(v.to_string());
                }
            }
            Ok((vals.join(","), ok))
        })(),
    ));
    out.push(anchor(
        "moment-square-positive",
        "circle-actions",
        "∫ H² ωⁿ > 0 for a nontrivial circle on ℂP¹",
        su_product_integral(2, 2).map(|v| (v.to_string(), v.is_positive())),
    ));

    out.push(anchor(
        "whitehead-square",
        "whitehead-criteria",
        "c² ∈ I holds on ℂP¹ and S²×S², fails on ℂP²",
        (|| {
            let cp1 = square_holds(projective_space(1)?)?;
            let s2s2 = square_holds(sphere_product_ring(&SphereProductSpec::two_spheres(2))?)?;
            let cp2 = square_holds(projective_space(2)?)?;
            Ok((format!("cp1={cp1} s2xs2={s2s2} cp2={cp2}"), cp1 && s2s2 && !cp2))
        })(),
    ));
    out.push(anchor(
        "whitehead-cube",
        "whitehead-criteria",
        "c³ ∈ I holds on ℂP², fails on ℂP³",
        (|| {
            let cube = |pres| -> Result<bool> {
                let alpha = first_class_alpha(&pres)?;
                Ok(whitehead_cube_criterion(&ObstructionInput::with_default_class(pres, alpha)?)?.holds)
            };
            let cp2 = cube(projective_space(2)?)?;
            let cp3 = cube(projective_space(3)?)?;
            Ok((format!("cp2={cp2} cp3={cp3}"), cp2 && !cp3))
        })(),
    ));
    out.push(anchor(
        "lefschetz-projective",
        "lefschetz",
        "a^k is an isomorphism H^{n-k} → H^{n+k} on ℂPⁿ, n ≤ 6",
        (|| {
            let mut ok = true;
            for n in 1..=6u32 {
                let cp = projective_space(n as usize)?;
                ok &= hard_lefschetz_check(&cp, &GradedPoly::var(cp.ring(), 0), n)?;
            }
            Ok(("n = 1..6".to_string(), ok))
        })(),
    ));
    out
}

fn sphere_bundle(n: usize, k: usize) -> Result<(charcalc_core::RingPresentation, GradedPoly)> {
    let base = sphere(2 * k as u32)?;
    let mut chern = vec![GradedPoly::zero(base.ring()); n + 1];
    chern[k - 1] = GradedPoly::var(base.ring(), 0);
    let pres = projective_bundle(&base, &chern, n)?;
    let b = GradedPoly::var(pres.ring(), 0);
    Ok((pres, b))
}

fn first_class_alpha(pres: &charcalc_core::RingPresentation) -> Result<Vec<Rational>> {
    let h2 = charcalc_core::obstruction::degree_basis(pres, 2)?;
    Ok((0..h2.dim()).map(|i| if i == 0 { Rational::one() } else { Rational::zero() }).collect())
}

fn square_holds(pres: charcalc_core::RingPresentation) -> Result<bool> {
    let alpha = first_class_alpha(&pres)?;
    Ok(whitehead_square_criterion(&ObstructionInput::with_default_class(pres, alpha)?)?.holds)
}

pub fn report(anchors: &[Anchor], seed: u64) -> Value {
    let passed = anchors.iter().filter(|a| a.pass).count();
    json!({
        "seed": seed,
        "anchors": anchors.iter().map(|a| json!({
            "id": a.id,
            "group": a.group,
            "statement": a.statement,
            "observed": a.observed,
            "pass": a.pass,
        })).collect::<Vec<_>>(),
        "passed": passed,
        "failed": anchors.len() - passed,
        "failing": anchors.iter().filter(|a| !a.pass).map(|a| a.id).collect::<Vec<_>>(),
    })
}
