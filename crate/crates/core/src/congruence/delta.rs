use serde::{Deserialize, Serialize};

use super::{BinaryRelation, Congruence};
use crate::algebra::FiniteAlgebra;
use crate::error::Result;

/// The pair `(δ_n, ε_n)` of the relation recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaEpsilon {
    pub delta: BinaryRelation,
    pub epsilon: BinaryRelation,
}

/// Serializable view: pair lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaEpsilonPairs {
    pub n: usize,
    pub fold: usize,
    pub delta: Vec<(usize, usize)>,
    pub epsilon: Vec<(usize, usize)>,
}

/// Mutual recursion starting from `δ_0 = ε_0 = Δ`:
///
/// ```text
/// δ_{j+1} = (θ ∘ ε_j) ∩ (θ* ∘ ε_j)
/// ε_{j+1} = (φ ∘ δ_j) ∩ (φ* ∘ δ_j)
/// ```
///
/// Results are relations; they need not be transitive.
pub fn delta_epsilon(
    alg: &FiniteAlgebra,
    theta: &Congruence,
    theta_star: &Congruence,
    phi: &Congruence,
    phi_star: &Congruence,
    n: usize,
) -> Result<DeltaEpsilon> {
    delta_epsilon_folded(alg, theta, theta_star, phi, phi_star, n, 1)
}

/// Variant with every `∘` replaced by the alternating product `∘^fold`
/// (`fold + 1` factors, starting and ending with the congruence when `fold`
/// is even). `fold = 1` is the plain recursion.
pub fn delta_epsilon_folded(
    alg: &FiniteAlgebra,
    theta: &Congruence,
    theta_star: &Congruence,
    phi: &Congruence,
    phi_star: &Congruence,
    n: usize,
    fold: usize,
) -> Result<DeltaEpsilon> {
    for c in [theta, theta_star, phi, phi_star] {
        c.ensure_of(alg)?;
    }
    let fold = fold.max(1);
    let (t, ts, p, ps) = (theta.relation(), theta_star.relation(), phi.relation(), phi_star.relation());
    let mut delta = BinaryRelation::identity(alg.size());
    let mut epsilon = delta.clone();
    for _ in 0..n {
        let next_delta = t
            .alternating_compose(&epsilon, fold)?
            .intersect(&ts.alternating_compose(&epsilon, fold)?)?;
        let next_epsilon = p
            .alternating_compose(&delta, fold)?
            .intersect(&ps.alternating_compose(&delta, fold)?)?;
        delta = next_delta;
        epsilon = next_epsilon;
    }
    Ok(DeltaEpsilon { delta, epsilon })
}

impl DeltaEpsilon {
    pub fn to_pairs(&self, n: usize, fold: usize) -> DeltaEpsilonPairs {
        DeltaEpsilonPairs { n, fold, delta: self.delta.pairs(), epsilon: self.epsilon.pairs() }
    }
}
