use std::fmt;

use super::{Partition, UnionFind};
use crate::error::{Error, Result};

/// Binary relation on `{0..n-1}` stored as one bitset row per element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> BinaryRelation {
        let words = n.div_ceil(64).max(1);
        BinaryRelation { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> BinaryRelation {
        let mut r = Self::empty(n);
        for a in 0..n {
            r.insert(a, a);
        }
        r
    }

    pub fn full(n: usize) -> BinaryRelation {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                r.insert(a, b);
            }
        }
        r
    }

    pub fn from_partition(p: &Partition) -> BinaryRelation {
        let n = p.len();
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if p.same_block(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<BinaryRelation> {
        let mut r = Self::empty(n);
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::OutOfRange { element: a.max(b), size: n });
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn same_size(&self, other: &BinaryRelation) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.n, found: other.n })
        }
    }

    /// Relational product: `(a, c)` is related iff `a R b` and `b S c` for some `b`.
    pub fn compose(&self, other: &BinaryRelation) -> Result<BinaryRelation> {
        self.same_size(other)?;
        let mut out = Self::empty(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                if self.contains(a, b) {
                    let base = a * self.words;
                    for (w, &s) in other.row(b).iter().enumerate() {
                        out.bits[base + w] |= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `R ∘ R ∘ … ∘ R` with `m` factors; the identity when `m = 0`.
    pub fn n_fold_compose(&self, m: usize) -> BinaryRelation {
        let mut acc = Self::identity(self.n);
        for _ in 0..m {
            acc = acc.compose(self).expect("same size");
        }
        acc
    }

    /// `R ∘ S ∘ R ∘ …` with `m + 1` factors, so that `m = 1` is the ordinary
    /// product `R ∘ S`.
    pub fn alternating_compose(&self, other: &BinaryRelation, m: usize) -> Result<BinaryRelation> {
        self.same_size(other)?;
        let mut acc = self.clone();
        for i in 0..m {
            let next = if i % 2 == 0 { other } else { self };
            acc = acc.compose(next)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &BinaryRelation) -> Result<BinaryRelation> {
        self.same_size(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        Ok(BinaryRelation { n: self.n, words: self.words, bits })
    }

    pub fn union(&self, other: &BinaryRelation) -> Result<BinaryRelation> {
        self.same_size(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Ok(BinaryRelation { n: self.n, words: self.words, bits })
    }

    pub fn is_subset(&self, other: &BinaryRelation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.contains(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().into_iter().all(|(a, b)| self.contains(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).map(|r| r.is_subset(self)).unwrap_or(false)
    }

    /// Least equivalence relation containing the relation, as a partition.
    pub fn equivalence_closure(&self) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for (a, b) in self.pairs() {
            uf.union(a, b);
        }
        Partition::from_union_find(&mut uf)
    }

    /// The partition this relation is, if it is an equivalence relation.
    pub fn as_partition(&self) -> Option<Partition> {
        let p = self.equivalence_closure();
        (BinaryRelation::from_partition(&p) == *self).then_some(p)
    }
}

impl fmt::Display for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.n {
            let row: String = (0..self.n).map(|b| if self.contains(a, b) { '1' } else { '.' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
