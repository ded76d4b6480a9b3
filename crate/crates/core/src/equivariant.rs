//! Circle actions on ℂPⁿ through their moment polynomials on the standard
//! simplex Δₙ = {xᵢ ≥ 0, Σxᵢ ≤ 1}.
//!
//! Integrals use the unit-volume normalization ∫_M ωⁿ = 1, i.e.
//! ∫_M p ωⁿ = n! ∫_Δ p dx.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Monomial, Ring};
use crate::rational::Rational;

pub const NORMALIZATION: &str = "unit-volume";

/// Ring of simplex coordinates x1..xn.
pub fn simplex_ring(n: usize) -> Arc<Ring> {
    Ring::new((1..=n).map(|i| (format!("x{i}"), 2))).expect("valid names")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCircleAction {
    weights: Vec<i64>,
}

impl WeightedCircleAction {
    /// Weights `(w₀, …, wₙ)` on homogeneous coordinates of ℂPⁿ.
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::Spec("need at least two weights (n >= 1)".into()));
        }
        if weights.iter().all(|w| *w == weights[0]) {
            return Err(Error::TrivialAction(weights[0].to_string()));
        }
        Ok(WeightedCircleAction { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Mean weight, the constant removed by normalization.
    pub fn mean_weight(&self) -> Rational {
        let s: i64 = self.weights.iter().sum();
        Rational::new(s, self.weights.len() as i64)
    }

    /// `H₀(x) = w₀ + Σ (w_j − w₀) x_j`.
    pub fn raw_moment(&self) -> GradedPoly {
        let ring = simplex_ring(self.n());
        let w0 = self.weights[0];
        let mut h = GradedPoly::constant(&ring, Rational::integer(w0));
        for (j, &w) in self.weights.iter().enumerate().skip(1) {
            h.add_term(Monomial::var(j - 1), Rational::integer(w - w0));
        }
        h
    }

    /// Value of the normalized moment map at the fixed point `vertex`:
    /// vertex 0 is the origin, vertex j is e_j.
    pub fn value_at_vertex(&self, vertex: usize) -> Result<Rational> {
        let w = self
            .weights
            .get(vertex)
            .ok_or_else(|| Error::Spec(format!("vertex {vertex} out of range 0..={}", self.n())))?;
        Ok(Rational::integer(*w) - self.mean_weight())
    }
}

/// `∫_Δₙ x^α dx = ∏αᵢ! / (n + |α|)!`.
pub fn simplex_integral(alpha: &[u32], n: usize) -> Result<Rational> {
    if alpha.len() > n {
        return Err(Error::Spec(format!("exponent vector of length {} on a {n}-simplex", alpha.len())));
    }
    let num: Rational = alpha.iter().map(|&a| Rational::factorial(a as u64)).product();
    let total: u64 = alpha.iter().map(|&a| a as u64).sum();
    Ok(num / Rational::factorial(n as u64 + total))
}

/// Normalized moment map `H = H₀ − mean(w)`, so that ∫_Δ H = 0.
pub fn normalized_moment(a: &WeightedCircleAction) -> GradedPoly {
    let h = a.raw_moment();
    &h - &GradedPoly::constant(h.ring(), a.mean_weight())
}

/// `n! ∫_Δₙ p dx`.
pub fn moment_integral(p: &GradedPoly, n: usize) -> Result<Rational> {
    let ring = p.ring();
    if ring.len() > n {
        return Err(Error::Spec(format!("polynomial in {} coordinates on a {n}-simplex", ring.len())));
    }
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        acc += &(c * &simplex_integral(&m.to_dense(ring.len()), n)?);
    }
    Ok(acc * Rational::factorial(n as u64))
}

/// Coefficient of `x^k` in `μ_k(λ) = (−1)^k C(n+k, n) ∫_M H^k ωⁿ · x^k`.
///
/// The sign depends on orienting `x`; the opposite orientation flips odd k.
pub fn mu_of_circle(a: &WeightedCircleAction, k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Spec("mu_k is defined for k >= 1".into()));
    }
    let n = a.n();
    let h = normalized_moment(a);
    let sign = if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Ok(sign * Rational::binomial((n + k as usize) as u64, n as u64) * moment_integral(&h.pow(k), n)?)
}

/// Weights `λ_j = (1, …, 1, −j, 0, …, 0)` (j ones) on ℂ^ℓ.
pub fn su_weights(ell: usize, j: usize) -> Result<Vec<i64>> {
    if j == 0 || j >= ell {
        return Err(Error::Spec(format!("weight index {j} outside 1..{ell}")));
    }
    let mut w = vec![0i64; ell];
    for x in w.iter_mut().take(j) {
        *x = 1;
    }
    w[j] = -(j as i64);
    Ok(w)
}

/// `∫_{ℂP^{ℓ−1}} H₁² H₂ ⋯ H_{k−1} ωⁿ` for the circles `λ_j`.
pub fn su_product_integral(ell: usize, k: usize) -> Result<Rational> {
    if k < 2 || k > ell {
        return Err(Error::Spec(format!("need 2 <= k <= ell, got k={k}, ell={ell}")));
    }
    let moment = |j| -> Result<GradedPoly> { Ok(normalized_moment(&WeightedCircleAction::new(su_weights(ell, j)?)?)) };
    let mut prod = moment(1)?.pow(2);
    for j in 2..k {
        prod = &prod * &moment(j)?;
    }
    moment_integral(&prod, ell - 1)
}

/// `∫_M (H − H(p)) ωⁿ = −H(p)` at the fixed point `vertex`.
pub fn nu1_at_fixed_point(a: &WeightedCircleAction, vertex: usize) -> Result<Rational> {
    let hp = a.value_at_vertex(vertex)?;
    let h = normalized_moment(a);
    let shifted = &h - &GradedPoly::constant(h.ring(), hp);
    moment_integral(&shifted, a.n())
}

/// Vertices where the moment map attains its maximum or minimum.
pub fn extremal_vertices(a: &WeightedCircleAction) -> Vec<usize> {
    let max = *a.weights.iter().max().expect("nonempty");
    let min = *a.weights.iter().min().expect("nonempty");
    (0..a.weights.len()).filter(|&i| a.weights[i] == max || a.weights[i] == min).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Iterated integration over the simplex: integrate x_n from 0 to
    /// 1 − x_1 − … − x_{n−1}, then recurse.
    fn iterated(alpha: &[u32], n: usize) -> Rational {
        // Represent the integrand as a polynomial in x1..xn and integrate
        // the last variable symbolically.
        let ring = simplex_ring(n);
        let mut p = GradedPoly::monomial(&ring, Monomial::from_dense(&{
            let mut a = alpha.to_vec();
            a.resize(n, 0);
            a
        }));
        for v in (0..n).rev() {
            // upper limit s = 1 - x_0 - ... - x_{v-1}
            let mut s = GradedPoly::one(&ring);
            for i in 0..v {
                s = &s - &GradedPoly::var(&ring, i);
            }
            let mut next = GradedPoly::zero(&ring);
            for (m, c) in p.terms() {
                let e = m.exponent(v);
                let rest: Vec<(usize, u32)> = m.pairs().iter().copied().filter(|(i, _)| *i != v).collect();
                let rest = GradedPoly::term(&ring, Monomial::from_pairs(rest), c / &Rational::integer(e as i64 + 1));
                next = &next + &(&rest * &s.pow(e + 1));
            }
            p = next;
        }
        p.constant_term()
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(simplex_integral(&[0, 0], 2).unwrap(), Rational::new(1, 2));
        assert_eq!(simplex_integral(&[1, 0], 2).unwrap(), Rational::new(1, 6));
        assert_eq!(simplex_integral(&[2, 0], 2).unwrap(), Rational::new(1, 12));
        assert_eq!(iterated(&[2, 0], 2), Rational::new(1, 12));
        assert!(simplex_integral(&[1, 1, 1], 2).is_err());
    }

    #[test]
    fn normalized_moments() {
        let a = WeightedCircleAction::new(vec![1, 0]).unwrap();
        let r = simplex_ring(1);
        // vertex 0 (the origin) carries w₀ = 1
        assert_eq!(normalized_moment(&a), GradedPoly::parse(&r, "1/2 - x1").unwrap());
        let a = WeightedCircleAction::new(vec![1, -1, 0]).unwrap();
        let r = simplex_ring(2);
        assert_eq!(normalized_moment(&a), GradedPoly::parse(&r, "1 - 2*x1 - x2").unwrap());
        assert!(matches!(WeightedCircleAction::new(vec![5, 5, 5]), Err(Error::TrivialAction(_))));
    }

    #[test]
    fn moment_integrals() {
        let r = simplex_ring(1);
        assert_eq!(moment_integral(&GradedPoly::one(&r), 1).unwrap(), Rational::one());
        let p = GradedPoly::parse(&r, "(x1 - 1/2)^2").unwrap();
        assert_eq!(moment_integral(&p, 1).unwrap(), Rational::new(1, 12));
        for w in [vec![3, -1, 4, 1], vec![0, 2, 7]] {
            let a = WeightedCircleAction::new(w).unwrap();
            assert!(moment_integral(&normalized_moment(&a), a.n()).unwrap().is_zero());
        }
    }

    #[test]
    fn mu_examples() {
        let a = WeightedCircleAction::new(vec![1, 0]).unwrap();
        assert!(mu_of_circle(&a, 1).unwrap().is_zero());
        assert_eq!(mu_of_circle(&a, 2).unwrap(), Rational::new(1, 4));
        let a = WeightedCircleAction::new(vec![1, -1, 0]).unwrap();
        assert!(mu_of_circle(&a, 1).unwrap().is_zero());
        assert_eq!(mu_of_circle(&a, 2).unwrap(), Rational::one());
        assert!(mu_of_circle(&a, 0).is_err());
    }

    #[test]
    fn su_products() {
        let expected = [
            (2, 2, Rational::new(1, 3)),
            (3, 2, Rational::new(1, 6)),
            (3, 3, Rational::new(1, 15)),
            (4, 2, Rational::new(1, 10)),
            (4, 3, Rational::new(1, 30)),
            (4, 4, Rational::new(1, 70)),
        ];
        for (ell, k, v) in expected {
            assert_eq!(su_product_integral(ell, k).unwrap(), v, "ell={ell} k={k}");
        }
        assert_eq!(su_weights(5, 2).unwrap(), vec![1, 1, -2, 0, 0]);
        assert!(su_product_integral(3, 4).is_err());
        assert!(su_product_integral(3, 1).is_err());
    }

    #[test]
    fn nu1_examples() {
        let a = WeightedCircleAction::new(vec![1, 0]).unwrap();
        assert_eq!(nu1_at_fixed_point(&a, 1).unwrap(), Rational::new(1, 2));
        assert_eq!(nu1_at_fixed_point(&a, 0).unwrap(), Rational::new(-1, 2));
        assert!(nu1_at_fixed_point(&a, 2).is_err());
        // vertex weight equal to the mean: inconclusive zero
        let a = WeightedCircleAction::new(vec![1, 0, -1]).unwrap();
        assert!(nu1_at_fixed_point(&a, 1).unwrap().is_zero());
        assert_eq!(extremal_vertices(&a), vec![0, 2]);
    }

    fn weights() -> impl Strategy<Value = Vec<i64>> {
        (1usize..=4)
            .prop_flat_map(|n| prop::collection::vec(-5i64..=5, n + 1))
            .prop_filter("nontrivial", |w| w.iter().any(|x| *x != w[0]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn simplex_matches_iterated(n in 1usize..=4, alpha in prop::collection::vec(0u32..=3, 4)) {
            let mut a: Vec<u32> = alpha.into_iter().take(n).collect();
            while a.iter().sum::<u32>() > 6 {
                let i = a.iter().position(|x| *x > 0).unwrap();
                a[i] -= 1;
            }
            prop_assert_eq!(simplex_integral(&a, n).unwrap(), iterated(&a, n));
        }

        #[test]
        fn mu_properties(w in weights(), m in 1i64..=3, shift in -4i64..=4) {
            let a = WeightedCircleAction::new(w.clone()).unwrap();
            prop_assert!(mu_of_circle(&a, 1).unwrap().is_zero());
            let scaled = WeightedCircleAction::new(w.iter().map(|x| x * m).collect()).unwrap();
            let shifted = WeightedCircleAction::new(w.iter().map(|x| x + shift).collect()).unwrap();
            let mut rev = w.clone();
            rev.reverse();
            let rev = WeightedCircleAction::new(rev).unwrap();
            for k in 1..=4u32 {
                let mu = mu_of_circle(&a, k).unwrap();
                if k % 2 == 0 {
                    prop_assert!(!mu.is_zero());
                }
                prop_assert_eq!(mu_of_circle(&scaled, k).unwrap(), &mu * &Rational::integer(m).pow(k));
                prop_assert_eq!(&mu_of_circle(&shifted, k).unwrap(), &mu);
                prop_assert_eq!(&mu_of_circle(&rev, k).unwrap(), &mu);
            }
        }

        #[test]
        fn nu1_nonzero_at_extremes(w in weights()) {
            let a = WeightedCircleAction::new(w).unwrap();
            for v in extremal_vertices(&a) {
                let nu = nu1_at_fixed_point(&a, v).unwrap();
                prop_assert!(!nu.is_zero());
                prop_assert_eq!(nu, -a.value_at_vertex(v).unwrap());
            }
        }
    }
}
