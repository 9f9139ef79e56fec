use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Set partition of `{0..n-1}` in canonical form: each element is labelled
/// with the least element of its block, so equal partitions have equal
/// label vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Partition {
        Partition { labels: (0..n).collect() }
    }

    pub fn indiscrete(n: usize) -> Partition {
        Partition { labels: vec![0; n] }
    }

    /// Validates a canonical label vector.
    pub fn from_labels(labels: Vec<usize>) -> Result<Partition> {
        for (e, &l) in labels.iter().enumerate() {
            if l > e || labels[l] != l {
                return Err(Error::Parse(format!(
                    "labels are not canonical at element {e}: {labels:?}"
                )));
            }
        }
        Ok(Partition { labels })
    }

    /// Elements with equal keys share a block.
    pub fn from_key<K: std::hash::Hash + Eq>(keys: &[K]) -> Partition {
        let mut first: HashMap<&K, usize> = HashMap::new();
        let labels = keys
            .iter()
            .enumerate()
            .map(|(e, k)| *first.entry(k).or_insert(e))
            .collect();
        Partition { labels }
    }

    pub fn from_union_find(uf: &mut UnionFind) -> Partition {
        let n = uf.len();
        let roots: Vec<usize> = (0..n).map(|e| uf.find(e)).collect();
        Partition::from_key(&roots)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().enumerate().filter(|(e, &l)| *e == l).count()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.len()];
        for (e, &l) in self.labels.iter().enumerate() {
            if l == e {
                index[e] = out.len();
                out.push(Vec::new());
            }
            out[index[l]].push(e);
        }
        out
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let keys: Vec<(usize, usize)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Partition::from_key(&keys)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for e in 0..self.len() {
            uf.union(e, self.labels[e]);
            uf.union(e, other.labels[e]);
        }
        Partition::from_union_find(&mut uf)
    }

    /// `self ⊆ other` as equivalence relations.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.len()).all(|e| other.same_block(e, self.labels[e]))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            let items: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// All partitions of an `n`-set, generated as restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rgs.len() {
            out.push(Partition::from_key(rgs));
            return;
        }
        for v in 0..=max + 1 {
            rgs[i] = v;
            rec(i + 1, max.max(v), rgs, out);
        }
    }
    if n == 0 {
        return vec![Partition { labels: vec![] }];
    }
    rec(1, 0, &mut rgs, &mut out);
    out
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
