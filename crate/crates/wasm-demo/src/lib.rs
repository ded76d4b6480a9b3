//! Browser bindings for a few charcalc computations. Every entry point
//! takes the same text the command line accepts and returns the exact
//! answer as a string; failures come back as the error message.

use wasm_bindgen::prelude::*;

use charcalc_core::bundle::{sphere_eval, BundleExpr};
use charcalc_core::equivariant::{mu_of_circle, WeightedCircleAction};
use charcalc_core::flag::{flag_presentation, FlagSpec};

fn list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|_| format!("bad {what} entry '{}'", s.trim())))
        .collect()
}

/// Coefficient of `x^k` in `μ_k` for the circle action with these weights.
#[wasm_bindgen]
pub fn circle_mu(weights: &str, k: u32) -> Result<String, String> {
    let w = list::<i64>(weights, "weight")?;
    let action = WeightedCircleAction::new(w).map_err(|e| e.to_string())?;
    mu_of_circle(&action, k).map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// `c_k` of a bundle expression on the spherical generator.
#[wasm_bindgen]
pub fn sphere_value(expr: &str, k: usize) -> Result<String, String> {
    let e: BundleExpr = expr.trim().parse().map_err(|e: charcalc_core::Error| e.to_string())?;
    sphere_eval(&e, k).map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// Betti numbers of a flag manifold, even degrees only, comma separated.
#[wasm_bindgen]
pub fn flag_betti(dims: &str) -> Result<String, String> {
    let spec = FlagSpec::new(list::<usize>(dims, "dimension")?).map_err(|e| e.to_string())?;
    let pres = flag_presentation(&spec).map_err(|e| e.to_string())?;
    let betti = pres.dims_by_degree().unwrap_or(&[]);
    Ok(betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_cli_answers() {
        assert_eq!(circle_mu("1,-1,0", 1).unwrap(), "0");
        assert_eq!(circle_mu("1,0", 2).unwrap(), "1/4");
        assert_eq!(sphere_value("lambda2(E4)", 4).unwrap(), "-24");
        assert_eq!(flag_betti("2,2").unwrap(), "1,1,2,1,1");
    }

    #[test]
    fn errors_are_messages() {
        assert!(circle_mu("3,3", 1).unwrap_err().contains("trivial"));
        assert!(circle_mu("1,x", 1).unwrap_err().contains("'x'"));
        assert!(sphere_value("sum(E2,F2)", 2).is_err());
        assert!(flag_betti("").is_err());
    }
}
