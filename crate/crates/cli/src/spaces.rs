//! Named rings accepted by `--space` and `--base`.

use charcalc_core::flag::{
    flag_presentation, grassmannian_presentation, point, projective_bundle, projective_space, sphere,
    sphere_product_ring, FlagSpec, SphereProductSpec,
};
use charcalc_core::{GradedPoly, RingPresentation};

use crate::CliError;

/// Parses a comma list of unsigned integers for `flag`.
pub fn usize_list(flag: &str, text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(flag, format!("expected a comma list of nonnegative integers, got '{text}'")))
}

pub fn i64_list(flag: &str, text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(flag, format!("expected a comma list of integers, got '{text}'")))
}

/// `point`, `cpN`, `sD` (sphere of even dimension D), `s2xs2`,
/// `spheres:D1,D2,…`, `gr:m,k`, `flag:m1,m2,…`.
pub fn named_space(flag: &str, text: &str) -> Result<RingPresentation, CliError> {
    let wrap = |e| CliError::core(flag, e);
    if text == "point" {
        return Ok(point());
    }
    if text == "s2xs2" {
        return sphere_product_ring(&SphereProductSpec::two_spheres(2)).map_err(wrap);
    }
    if let Some(rest) = text.strip_prefix("cp") {
        let n = rest
            .parse::<usize>()
            .map_err(|_| CliError::usage(flag, format!("expected cpN, got '{text}'")))?;
        return projective_space(n).map_err(wrap);
    }
    if let Some(rest) = text.strip_prefix("spheres:") {
        let dims = usize_list(flag, rest)?.into_iter().map(|d| d as u32).collect();
        return sphere_product_ring(&SphereProductSpec::new(dims).map_err(wrap)?).map_err(wrap);
    }
    if let Some(rest) = text.strip_prefix("gr:") {
        let mk = usize_list(flag, rest)?;
        let [m, k] = mk[..] else {
            return Err(CliError::usage(flag, format!("expected gr:m,k, got '{text}'")));
        };
        return grassmannian_presentation(m, k).map_err(wrap);
    }
    if let Some(rest) = text.strip_prefix("flag:") {
        let spec = FlagSpec::new(usize_list(flag, rest)?).map_err(wrap)?;
        return flag_presentation(&spec).map_err(wrap);
    }
    if let Some(rest) = text.strip_prefix('s') {
        if let Ok(d) = rest.parse::<u32>() {
            return sphere(d).map_err(wrap);
        }
    }
    Err(CliError::usage(
        flag,
        format!("unknown space '{text}' (point, cpN, sD, s2xs2, spheres:D,..., gr:m,k, flag:m1,...)"),
    ))
}

/// A projectivized bundle `P(E) → base` with fiber ℂPⁿ.
pub struct ProjectiveBundle {
    pub pres: RingPresentation,
    /// `c_1(E) … c_{n+1}(E)` in the base ring.
    pub chern: Vec<GradedPoly>,
    pub n: usize,
    pub fiber_generator: String,
}

/// Chern classes default to zero, except over a sphere `s{2k}` with
/// `k ≤ n+1`, where `c_k(E)` is the generator `b`.
pub fn projective(base_text: &str, n: usize, chern: Option<&str>) -> Result<ProjectiveBundle, CliError> {
    let base = named_space("--base", base_text)?;
    let ring = base.ring().clone();
    let chern: Vec<GradedPoly> = match chern {
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            if parts.len() > n + 1 {
                return Err(CliError::usage("--chern", format!("at most {} classes for n = {n}", n + 1)));
            }
            let mut cs = parts
                .iter()
                .map(|s| GradedPoly::parse(&ring, s.trim()).map_err(|e| CliError::core("--chern", e)))
                .collect::<Result<Vec<_>, _>>()?;
            cs.resize(n + 1, GradedPoly::zero(&ring));
            cs
        }
        None => {
            let mut cs = vec![GradedPoly::zero(&ring); n + 1];
            if ring.len() == 1 && ring.name(0) == "b" && base.dims_by_degree().map(|d| d.len()) != Some(1) {
                let k = ring.degree_of(0) as usize / 2;
                if k <= n + 1 {
                    cs[k - 1] = GradedPoly::var(&ring, 0);
                }
            }
            cs
        }
    };
    let pres = projective_bundle(&base, &chern, n).map_err(|e| CliError::core("--chern", e))?;
    let fb = pres.fiber_basis().expect("projective bundles carry a fiber basis");
    let fiber_generator = pres.ring().name(fb.fiber_generators()[0]).to_string();
    Ok(ProjectiveBundle { pres, chern, n, fiber_generator })
}
