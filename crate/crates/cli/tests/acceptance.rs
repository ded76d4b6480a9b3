//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use charcalc_cli::run;
use charcalc_core::bundle::{chern_class, chern_class_monomial_basis, sphere_eval, BundleExpr};
use charcalc_core::coupling::{coupling_class, mu_class, CouplingInput};
use charcalc_core::equivariant::{
    extremal_vertices, mu_of_circle, nu1_at_fixed_point, simplex_integral, simplex_ring, su_product_integral,
    WeightedCircleAction,
};
use charcalc_core::flag::{
    flag_presentation, grassmannian_presentation, inverse_series, phi_pullback, projective_bundle, projective_space,
    sphere, sphere_product_ring, FlagSpec, SphereProductSpec,
};
use charcalc_core::obstruction::{
    degree_basis, hard_lefschetz_check, whitehead_cube_criterion, whitehead_square_criterion, ObstructionInput,
};
use charcalc_core::{GradedPoly, Monomial, Rational, RingPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_bundle_evaluation() -> Check {
    let e4 = BundleExpr::universal(4);
    let l2 = BundleExpr::lambda2(e4.clone());
    let sym = chern_class_monomial_basis(&l2, 4).map_err(|e| e.to_string())?.to_string();
    ensure(sym == "2*s(3,1) + 5*s(2,2) + 13*s(2,1,1) + 30*s(1,1,1,1)", || format!("expansion {sym}"))?;
    let v = |e: &BundleExpr| sphere_eval(e, 4).map_err(|e| e.to_string());
    ensure(v(&e4)? == Rational::integer(6), || "c4(E) != 6".into())?;
    ensure(v(&l2)? == Rational::integer(-24), || "c4(L2E) != -24".into())?;
    let combo = BundleExpr::sum_all(vec![e4.clone(), e4.clone(), e4.clone(), e4, l2]);
    ensure(v(&combo)?.is_zero(), || "4E + L2E does not evaluate to 0".into())
}

fn c2_conjugate_bundles() -> Check {
    for m in 1..=4 {
        let e = BundleExpr::universal(m);
        let s = BundleExpr::sum(e.clone(), BundleExpr::dual(e));
        for k in (1..=2 * m).step_by(2) {
            let c = chern_class(&s, k).map_err(|e| e.to_string())?;
            ensure(c.is_zero(), || format!("c{k} of E+E* nonzero for m={m}"))?;
        }
    }
    Ok(())
}

fn c3_square_zero_product() -> Check {
    for k in 1..=6usize {
        let p = phi_pullback(k).map_err(|e| e.to_string())?;
        let sign = if k % 2 == 0 { 2 } else { -2 };
        let top = Monomial::from_pairs((0..=k).map(|i| (i, 1)));
        let want = GradedPoly::term(p.ring(), top, Rational::integer(sign) * Rational::factorial(k as u64));
        ensure(p == want, || format!("k={k}: got {p}"))?;
    }
    Ok(())
}

fn c4_circle_mu() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut sampled = 0;
    while sampled < 50 {
        let n = rng.gen_range(1..=4usize);
        let w: Vec<i64> = (0..=n).map(|_| rng.gen_range(-7..=7)).collect();
        let Ok(a) = WeightedCircleAction::new(w.clone()) else { continue };
        sampled += 1;
        let mu = |a: &WeightedCircleAction, k| mu_of_circle(a, k).map_err(|e| e.to_string());
        ensure(mu(&a, 1)?.is_zero(), || format!("mu1 != 0 for {w:?}"))?;
        for k in [2, 4, 6] {
            ensure(!mu(&a, k)?.is_zero(), || format!("mu{k} = 0 for {w:?}"))?;
        }
        let m = rng.gen_range(2..=4i64);
        let scaled = WeightedCircleAction::new(w.iter().map(|x| x * m).collect()).map_err(|e| e.to_string())?;
        for k in 1..=6u32 {
            ensure(mu(&scaled, k)? == mu(&a, k)? * Rational::integer(m).pow(k), || {
                format!("homogeneity fails for {w:?}, m={m}, k={k}")
            })?;
        }
    }
    Ok(())
}

/// Integrates the last coordinate from 0 to 1 − (sum of the others),
/// symbolically, until only a constant is left.
fn iterated_simplex(alpha: &[u32], n: usize) -> Rational {
    let ring = simplex_ring(n);
    let mut dense = alpha.to_vec();
    dense.resize(n, 0);
    let mut p = GradedPoly::monomial(&ring, Monomial::from_dense(&dense));
    for v in (0..n).rev() {
        let upper = (0..v).fold(GradedPoly::one(&ring), |acc, i| &acc - &GradedPoly::var(&ring, i));
        let mut next = GradedPoly::zero(&ring);
        for (m, c) in p.terms() {
            let e = m.exponent(v);
            let rest = Monomial::from_pairs(m.pairs().iter().copied().filter(|(i, _)| *i != v));
            let antideriv = GradedPoly::term(&ring, rest, c / &Rational::integer(e as i64 + 1));
            next = &next + &(&antideriv * &upper.pow(e + 1));
        }
        p = next;
    }
    p.constant_term()
}

fn exponent_vectors(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max_total {
        for mut rest in exponent_vectors(n - 1, max_total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn c5_simplex_oracle() -> Check {
    for n in 1..=4 {
        for alpha in exponent_vectors(n, 6) {
            let closed = simplex_integral(&alpha, n).map_err(|e| e.to_string())?;
            let oracle = iterated_simplex(&alpha, n);
            ensure(closed == oracle, || format!("alpha={alpha:?}: {closed} vs {oracle}"))?;
        }
    }
    Ok(())
}

fn c6_projectivized_bundles() -> Check {
    for n in 1..=4usize {
        for k in 2..=n + 1 {
            let base = sphere(2 * k as u32).map_err(|e| e.to_string())?;
            let mut chern = vec![GradedPoly::zero(base.ring()); n + 1];
            chern[k - 1] = GradedPoly::var(base.ring(), 0);
            let pres = projective_bundle(&base, &chern, n).map_err(|e| e.to_string())?;
            let u = GradedPoly::var(pres.ring(), 1);
            let input = CouplingInput::new(pres.clone(), u, n as u32).map_err(|e| e.to_string())?;
            let mu = mu_class(&input, k as u32).map_err(|e| e.to_string())?;
            let beta = Monomial::var(0);
            let coeff = mu.coeff(&beta);
            ensure(!coeff.is_zero() && mu == GradedPoly::term(pres.ring(), beta, coeff.clone()), || {
                format!("n={n} k={k}: mu = {mu}")
            })?;
            let a = coupling_class(&input).map_err(|e| e.to_string())?;
            let top = pres.fiber_integrate(&pres.pow(&a, n as u32 + 1).map_err(|e| e.to_string())?);
            ensure(top.map_err(|e| e.to_string())?.is_zero(), || format!("n={n} k={k}: normalization fails"))?;
        }
    }
    Ok(())
}

fn total_dim(pres: &RingPresentation, top: u32) -> Result<usize, String> {
    let mut t = 0;
    for d in (0..=top).step_by(2) {
        t += degree_basis(pres, d).map_err(|e| e.to_string())?.dim();
    }
    Ok(t)
}

fn c7_flag_machinery() -> Check {
    let v = 6;
    let fs = inverse_series(v, 6);
    let ring = fs[0].ring().clone();
    let total = (0..v).fold(GradedPoly::one(&ring), |acc, i| &acc + &GradedPoly::var(&ring, i));
    let inv = fs.iter().fold(GradedPoly::one(&ring), |acc, f| &acc + f);
    let prod = &total * &inv;
    for d in 1..=6u32 {
        ensure(prod.graded_component(2 * d).is_zero(), || format!("inversion fails in degree {}", 2 * d))?;
    }
    for (i, f) in fs.iter().enumerate() {
        let want = Rational::integer(if i % 2 == 0 { -1 } else { 1 });
        ensure(f.coeff(&Monomial::var_pow(0, i as u32 + 1)) == want, || format!("f_{} leading coefficient", i + 1))?;
    }
    for m in 1..=4usize {
        for k in 1..=4usize {
            let gr = grassmannian_presentation(m, k).map_err(|e| e.to_string())?;
            let t = total_dim(&gr, 2 * (m * k) as u32)?;
            ensure(Rational::integer(t as i64) == Rational::binomial((m + k) as u64, k as u64), || {
                format!("Gr({m},{k}) has total dimension {t}")
            })?;
        }
    }
    let fl = flag_presentation(&FlagSpec::new(vec![1, 1, 1]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let t = total_dim(&fl, 6)?;
    ensure(t == 6, || format!("full flag of C^3 has total dimension {t}"))
}

fn c8_circle_nonvanishing() -> Check {
    for ell in 2..=4 {
        for k in 2..=ell {
            let v = su_product_integral(ell, k).map_err(|e| e.to_string())?;
            ensure(!v.is_zero(), || format!("su product ell={ell} k={k} vanishes"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sampled = 0;
    while sampled < 20 {
        let n = rng.gen_range(1..=4usize);
        let w: Vec<i64> = (0..=n).map(|_| rng.gen_range(-7..=7)).collect();
        let Ok(a) = WeightedCircleAction::new(w.clone()) else { continue };
        sampled += 1;
        for v in extremal_vertices(&a) {
            let nu = nu1_at_fixed_point(&a, v).map_err(|e| e.to_string())?;
            ensure(!nu.is_zero(), || format!("nu1 = 0 at extreme vertex {v} of {w:?}"))?;
        }
    }
    Ok(())
}

fn obstruction(pres: RingPresentation) -> Result<ObstructionInput, String> {
    let h2 = degree_basis(&pres, 2).map_err(|e| e.to_string())?;
    let alpha = (0..h2.dim()).map(|i| if i == 0 { Rational::one() } else { Rational::zero() }).collect();
    ObstructionInput::with_default_class(pres, alpha).map_err(|e| e.to_string())
}

fn c9_whitehead_criteria() -> Check {
    let cp = |n| projective_space(n).map_err(|e| e.to_string());
    let s2s2 = sphere_product_ring(&SphereProductSpec::two_spheres(2)).map_err(|e| e.to_string())?;
    let sq = |i: &ObstructionInput| whitehead_square_criterion(i).map(|r| r.holds).map_err(|e| e.to_string());
    let cu = |i: &ObstructionInput| whitehead_cube_criterion(i).map(|r| r.holds).map_err(|e| e.to_string());
    let inputs = [obstruction(cp(1)?)?, obstruction(s2s2)?, obstruction(cp(2)?)?, obstruction(cp(3)?)?];
    ensure(sq(&inputs[0])?, || "square fails on CP1".into())?;
    ensure(sq(&inputs[1])?, || "square fails on S2xS2".into())?;
    ensure(!sq(&inputs[2])?, || "square holds on CP2".into())?;
    ensure(cu(&inputs[2])?, || "cube fails on CP2".into())?;
    ensure(!cu(&inputs[3])?, || "cube holds on CP3".into())?;
    for input in &inputs {
        for lambda in [-2i64, 3] {
            let mut c = input.class().scale(&Rational::integer(lambda));
            for z in input.kernel() {
                c = &c + &z.scale(&Rational::integer(5));
            }
            let moved = input.with_class(c).map_err(|e| e.to_string())?;
            ensure(sq(&moved)? == sq(input)? && cu(&moved)? == cu(input)?, || "criteria not invariant".into())?;
        }
    }
    Ok(())
}

fn c10_hard_lefschetz() -> Check {
    for n in 1..=6u32 {
        let cp = projective_space(n as usize).map_err(|e| e.to_string())?;
        let c = GradedPoly::var(cp.ring(), 0);
        ensure(hard_lefschetz_check(&cp, &c, n).map_err(|e| e.to_string())?, || format!("fails on CP{n}"))?;
    }
    let gr = grassmannian_presentation(2, 2).map_err(|e| e.to_string())?;
    let a = GradedPoly::parse(gr.ring(), "7/3*y1").map_err(|e| e.to_string())?;
    ensure(hard_lefschetz_check(&gr, &a, 4).map_err(|e| e.to_string())?, || "fails on Gr(2,4)".into())?;
    let s = sphere_product_ring(&SphereProductSpec::two_spheres(2)).map_err(|e| e.to_string())?;
    let a = GradedPoly::var(s.ring(), 0);
    ensure(!hard_lefschetz_check(&s, &a, 2).map_err(|e| e.to_string())?, || "holds on S2xS2 with a = s1".into())
}

fn has_float_token(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::String(s) => {
            let b = s.as_bytes();
            (1..b.len().saturating_sub(1)).any(|i| {
                (b[i] == b'.' && b[i - 1].is_ascii_digit() && b[i + 1].is_ascii_digit())
                    || ((b[i] == b'e' || b[i] == b'E') && b[i - 1].is_ascii_digit() && (b[i + 1].is_ascii_digit() || b[i + 1] == b'-'))
            })
        }
        Value::Array(xs) => xs.iter().any(has_float_token),
        Value::Object(m) => m.values().any(has_float_token),
        _ => false,
    }
}

fn c11_reference_suite_determinism() -> Check {
    let first = run(["charcalc", "paper"]);
    let second = run(["charcalc", "paper"]);
    ensure(first.code == 0, || format!("suite failed: {}", first.stdout))?;
    ensure(first == second, || "reference suite output differs between runs".into())?;
    let v: Value = serde_json::from_str(&first.stdout).map_err(|e| e.to_string())?;
    ensure(!has_float_token(&v), || "floating-point token in suite output".into())?;
    let text = run(["charcalc", "paper", "--output", "text"]);
    ensure(text == run(["charcalc", "paper", "--output", "text"]), || "text output differs".into())
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() {
    let criteria: [Criterion; 11] = [
        ("bundle evaluation on spherical generators", Duration::from_secs(1), c1_bundle_evaluation),
        ("odd classes of E + E* vanish", Duration::from_secs(1), c2_conjugate_bundles),
        ("square-zero product 2(-1)^k k!", Duration::from_secs(1), c3_square_zero_product),
        ("circle mu_k: vanishing, nonvanishing, homogeneity", Duration::from_secs(10), c4_circle_mu),
        ("simplex closed form vs iterated integration", Duration::from_secs(10), c5_simplex_oracle),
        ("projectivized bundles over spheres", Duration::from_secs(5), c6_projectivized_bundles),
        ("formal inversion and flag dimensions", Duration::from_secs(10), c7_flag_machinery),
        ("SU product integrals and nu1 at extremes", Duration::from_secs(10), c8_circle_nonvanishing),
        ("Whitehead square and cube criteria", Duration::from_secs(5), c9_whitehead_criteria),
        ("hard Lefschetz predicate", Duration::from_secs(5), c10_hard_lefschetz),
        ("reference suite determinism and exactness", Duration::from_secs(60), c11_reference_suite_determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= *limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (took {elapsed:?}, limit {limit:?})"),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!("criterion {:>2}: {verdict} - {name} [{} ms]", i + 1, elapsed.as_millis());
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
