//! Congruences of finite algebras: generation, lattice enumeration,
//! relational calculus, Mal'cev chains and the δ/ε relation recursion.

mod chain;
mod delta;
mod partition;
mod relation;

use std::collections::{HashSet, VecDeque};
use std::fmt;

pub use chain::{malcev_chain, ChainOutcome, ChainStep, Translation, UnaryPolynomial};
pub use delta::{delta_epsilon, delta_epsilon_folded, DeltaEpsilon};
pub use partition::{all_partitions, Partition, UnionFind};
pub use relation::BinaryRelation;

use crate::algebra::{decode_tuple, Element, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A partition known to be compatible with every operation of one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    algebra: u64,
    partition: Partition,
}

impl Congruence {
    /// Validates compatibility exhaustively.
    pub fn new(alg: &FiniteAlgebra, partition: Partition) -> Result<Congruence> {
        if partition.len() != alg.size() {
            return Err(Error::LengthMismatch { expected: alg.size(), found: partition.len() });
        }
        if let Some(op) = incompatible_operation(alg, &partition) {
            return Err(Error::NotACongruence(alg.signature().ops()[op].0.clone()));
        }
        Ok(Congruence { algebra: alg.fingerprint(), partition })
    }

    pub fn from_labels(alg: &FiniteAlgebra, labels: Vec<usize>) -> Result<Congruence> {
        Congruence::new(alg, Partition::from_labels(labels)?)
    }

    fn trusted(alg: &FiniteAlgebra, partition: Partition) -> Congruence {
        Congruence { algebra: alg.fingerprint(), partition }
    }

    /// The trivial congruence Δ.
    pub fn delta(alg: &FiniteAlgebra) -> Congruence {
        Self::trusted(alg, Partition::discrete(alg.size()))
    }

    /// The universal congruence ∇.
    pub fn nabla(alg: &FiniteAlgebra) -> Congruence {
        Self::trusted(alg, Partition::indiscrete(alg.size()))
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn labels(&self) -> &[usize] {
        self.partition.labels()
    }

    pub fn size(&self) -> usize {
        self.partition.len()
    }

    #[inline]
    pub fn contains(&self, a: Element, b: Element) -> bool {
        self.partition.same_block(a, b)
    }

    pub fn num_blocks(&self) -> usize {
        self.partition.num_blocks()
    }

    pub fn is_delta(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_nabla(&self) -> bool {
        self.num_blocks() == 1
    }

    pub fn ensure_of(&self, alg: &FiniteAlgebra) -> Result<()> {
        if self.algebra == alg.fingerprint() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn same_algebra(&self, other: &Congruence) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        self.same_algebra(other)?;
        Ok(Congruence { algebra: self.algebra, partition: self.partition.meet(&other.partition) })
    }

    /// Transitive closure of the union; always compatible again.
    pub fn join(&self, other: &Congruence) -> Result<Congruence> {
        self.same_algebra(other)?;
        Ok(Congruence { algebra: self.algebra, partition: self.partition.join(&other.partition) })
    }

    pub fn leq(&self, other: &Congruence) -> Result<bool> {
        self.same_algebra(other)?;
        Ok(self.partition.refines(&other.partition))
    }

    pub fn relation(&self) -> BinaryRelation {
        BinaryRelation::from_partition(&self.partition)
    }

    /// Fingerprint of the algebra this congruence belongs to.
    pub fn algebra_fingerprint(&self) -> u64 {
        self.algebra
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)
    }
}

/// Index of an operation the partition is not compatible with. Uses
/// `f(u) ~ f(rep(u))` for every tuple `u`, which is equivalent to
/// compatibility.
fn incompatible_operation(alg: &FiniteAlgebra, p: &Partition) -> Option<usize> {
    let labels = p.labels();
    for op in 0..alg.signature().len() {
        let arity = alg.arity(op);
        let mut args = vec![0; arity];
        let mut reps = vec![0; arity];
        for idx in 0..alg.table(op).len() {
            decode_tuple(idx, alg.size(), &mut args);
            for k in 0..arity {
                reps[k] = labels[args[k]];
            }
            if !p.same_block(alg.apply(op, &args), alg.apply(op, &reps)) {
                return Some(op);
            }
        }
    }
    None
}

pub fn is_compatible(alg: &FiniteAlgebra, p: &Partition) -> bool {
    p.len() == alg.size() && incompatible_operation(alg, p).is_none()
}

/// Least congruence containing `pairs`.
///
/// Union-find closure: every merge queues the merged pair, and each queued
/// pair is pushed through every basic translation (one operation with one
/// free argument and constants elsewhere) until no new merges happen.
pub fn cg(alg: &FiniteAlgebra, pairs: &[(Element, Element)]) -> Result<Congruence> {
    let n = alg.size();
    for &(a, b) in pairs {
        alg.check_element(a)?;
        alg.check_element(b)?;
    }
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(Element, Element)> = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    while let Some((u, v)) = queue.pop_front() {
        for op in 0..alg.signature().len() {
            let arity = alg.arity(op);
            if arity == 0 {
                continue;
            }
            let contexts = n.pow(arity as u32 - 1);
            let mut ctx = vec![0; arity - 1];
            let mut args = vec![0; arity];
            for hole in 0..arity {
                for c in 0..contexts {
                    decode_tuple(c, n, &mut ctx);
                    args[..hole].copy_from_slice(&ctx[..hole]);
                    args[hole + 1..].copy_from_slice(&ctx[hole..]);
                    args[hole] = u;
                    let fu = alg.apply(op, &args);
                    args[hole] = v;
                    let fv = alg.apply(op, &args);
                    if uf.union(fu, fv) {
                        queue.push_back((fu, fv));
                    }
                }
            }
        }
    }
    Ok(Congruence::trusted(alg, Partition::from_union_find(&mut uf)))
}

/// All congruences, sorted Δ-first: descending number of blocks, then
/// ascending label vector. Built as the join closure of the principal
/// congruences.
pub fn con_lattice(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Congruence>> {
    let n = alg.size();
    let mut principals: Vec<Partition> = Vec::new();
    let mut seen_principal: HashSet<Partition> = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = cg(alg, &[(a, b)])?.partition;
            if seen_principal.insert(p.clone()) {
                principals.push(p);
            }
        }
    }
    let mut all: HashSet<Partition> = HashSet::new();
    let mut queue: VecDeque<Partition> = VecDeque::new();
    let delta = Partition::discrete(n);
    all.insert(delta.clone());
    queue.push_back(delta);
    while let Some(p) = queue.pop_front() {
        for q in &principals {
            let j = p.join(q);
            if !all.contains(&j) {
                if all.len() >= limits.max_congruences {
                    return Err(Error::SizeGuard {
                        what: "congruence lattice".into(),
                        needed: all.len() as u128 + 1,
                        limit: limits.max_congruences as u128,
                    });
                }
                all.insert(j.clone());
                queue.push_back(j);
            }
        }
    }
    let mut out: Vec<Partition> = all.into_iter().collect();
    sort_congruences(&mut out);
    Ok(out.into_iter().map(|p| Congruence::trusted(alg, p)).collect())
}

pub(crate) fn sort_congruences(ps: &mut [Partition]) {
    ps.sort_by(|a, b| {
        b.num_blocks()
            .cmp(&a.num_blocks())
            .then_with(|| a.labels().cmp(b.labels()))
    });
}
