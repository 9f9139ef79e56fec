//! Factor congruences, the distributivity test on FC(A), direct
//! decompositions, the Γ predicate and strict refinement.

mod gamma;
mod refine;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use gamma::{gamma, GammaTable};
pub use refine::{
    decomposition_systems, strict_refinement, DecompositionSystem, RefinementReport,
};

use crate::algebra::{encode_coordinates, is_homomorphism, Element, FiniteAlgebra};
use crate::congruence::{con_lattice, BinaryRelation, Congruence};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// `θ ⋄ θ* = Δ`: meet is Δ and both relational products are ∇.
pub fn is_factor_pair(theta: &Congruence, theta_star: &Congruence) -> Result<bool> {
    if !theta.meet(theta_star)?.is_delta() {
        return Ok(false);
    }
    let n = theta.size();
    let full = BinaryRelation::full(n);
    let (t, ts) = (theta.relation(), theta_star.relation());
    Ok(t.compose(&ts)? == full && ts.compose(&t)? == full)
}

/// A factor congruence with every complement found in the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEntry {
    pub congruence: Congruence,
    pub complements: Vec<Congruence>,
}

/// FC(A) in congruence-lattice order.
pub fn factor_congruences(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<FactorEntry>> {
    let lattice = con_lattice(alg, limits)?;
    factor_congruences_in(&lattice)
}

/// FC(A) computed from an already materialized congruence lattice.
pub fn factor_congruences_in(lattice: &[Congruence]) -> Result<Vec<FactorEntry>> {
    let Some(first) = lattice.first() else {
        return Ok(Vec::new());
    };
    let n = first.size();
    let entries: Vec<Result<Option<FactorEntry>>> = lattice
        .par_iter()
        .map(|theta| {
            let mut complements = Vec::new();
            for other in lattice {
                // blocks of complementary congruences meet in exactly one element
                if theta.num_blocks() * other.num_blocks() != n {
                    continue;
                }
                if is_factor_pair(theta, other)? {
                    complements.push(other.clone());
                }
            }
            Ok((!complements.is_empty())
                .then(|| FactorEntry { congruence: theta.clone(), complements }))
        })
        .collect();
    let mut out = Vec::new();
    for e in entries {
        if let Some(e) = e? {
            out.push(e);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BfcWitness {
    /// `fc[i] ∨ fc[j]` is not a factor congruence.
    JoinNotInFc { i: usize, j: usize },
    /// `fc[i] ∧ fc[j]` is not a factor congruence.
    MeetNotInFc { i: usize, j: usize },
    /// `fc[i] ∧ (fc[j] ∨ fc[k]) ≠ (fc[i] ∧ fc[j]) ∨ (fc[i] ∧ fc[k])`.
    NotDistributive { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfcReport {
    pub fc: Vec<Vec<Vec<usize>>>,
    pub is_sublattice: bool,
    pub is_distributive: bool,
    pub witness: Option<BfcWitness>,
}

impl BfcReport {
    pub fn passed(&self) -> bool {
        self.is_sublattice && self.is_distributive
    }
}

/// Checks that FC(A) is a distributive sublattice of Con(A). Witnesses are
/// the lexicographically least failing pair (closure) or triple
/// (distributivity).
pub fn check_bfc(alg: &FiniteAlgebra, limits: &Limits) -> Result<BfcReport> {
    let fc: Vec<Congruence> = factor_congruences(alg, limits)?
        .into_iter()
        .map(|e| e.congruence)
        .collect();
    check_bfc_on(&fc)
}

pub fn check_bfc_on(fc: &[Congruence]) -> Result<BfcReport> {
    let m = fc.len();
    let mut closure_witness = None;
    'outer: for i in 0..m {
        for j in 0..m {
            if !fc.contains(&fc[i].join(&fc[j])?) {
                closure_witness = Some(BfcWitness::JoinNotInFc { i, j });
                break 'outer;
            }
            if !fc.contains(&fc[i].meet(&fc[j])?) {
                closure_witness = Some(BfcWitness::MeetNotInFc { i, j });
                break 'outer;
            }
        }
    }
    let distributive_witness = (0..m * m * m).into_par_iter().find_map_first(|idx| {
        let (i, j, k) = (idx / (m * m), (idx / m) % m, idx % m);
        let lhs = fc[i].meet(&fc[j].join(&fc[k]).ok()?).ok()?;
        let rhs = fc[i].meet(&fc[j]).ok()?.join(&fc[i].meet(&fc[k]).ok()?).ok()?;
        (lhs != rhs).then_some(BfcWitness::NotDistributive { i, j, k })
    });
    Ok(BfcReport {
        fc: fc.iter().map(|c| c.partition().blocks()).collect(),
        is_sublattice: closure_witness.is_none(),
        is_distributive: distributive_witness.is_none(),
        witness: closure_witness.or(distributive_witness),
    })
}

/// `A ≅ A/θ × A/θ*` for a factor pair, with the isomorphism replayed.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub left: FiniteAlgebra,
    pub right: FiniteAlgebra,
    pub map: Vec<(Element, Element)>,
}

pub fn decompose(alg: &FiniteAlgebra, theta: &Congruence, theta_star: &Congruence) -> Result<Decomposition> {
    theta.ensure_of(alg)?;
    theta_star.ensure_of(alg)?;
    if !is_factor_pair(theta, theta_star)? {
        return Err(Error::InvariantViolation("not a pair of complementary factor congruences".into()));
    }
    let (left, q0) = alg.quotient(theta)?;
    let (right, q1) = alg.quotient(theta_star)?;
    let map: Vec<(Element, Element)> = (0..alg.size()).map(|e| (q0[e], q1[e])).collect();
    let product = FiniteAlgebra::direct_product(&[&left, &right])?;
    let sizes = [left.size(), right.size()];
    let flat: Vec<Element> = map.iter().map(|&(x, y)| encode_coordinates(&[x, y], &sizes)).collect();
    let mut seen = vec![false; product.size()];
    for &f in &flat {
        if std::mem::replace(&mut seen[f], true) {
            return Err(Error::InvariantViolation("decomposition map is not injective".into()));
        }
    }
    if product.size() != alg.size() || !is_homomorphism(alg, &product, &flat) {
        return Err(Error::InvariantViolation("decomposition map is not an isomorphism".into()));
    }
    Ok(Decomposition { left, right, map })
}
