use std::collections::HashMap;

use super::meet_signature;
use crate::algebra::{decode_tuple, find_isomorphism, FiniteAlgebra};
use crate::error::{Error, Result};

pub const MAX_SEMILATTICE_SIZE: usize = 6;

/// All meet-semilattices with at most `max_size` elements, one per
/// isomorphism class, by size and then in generation order.
pub fn enumerate_semilattices(max_size: usize) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(semilattices_of_size(n)?);
    }
    Ok(out)
}

/// Meet-semilattices of exactly `n` elements up to isomorphism. Each is a
/// partial order on `1..n` (labelled so that `i < j` whenever `i` lies
/// below `j`) with a bottom `0` adjoined, kept when every pair has a meet.
pub fn semilattices_of_size(n: usize) -> Result<Vec<FiniteAlgebra>> {
    if n == 0 || n > MAX_SEMILATTICE_SIZE {
        return Err(Error::SizeGuard {
            what: "semilattice enumeration".into(),
            needed: n as u128,
            limit: MAX_SEMILATTICE_SIZE as u128,
        });
    }
    let top: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut classes: Dedup = Dedup::default();
    for mask in 0u64..(1 << top.len()) {
        // le[i][j]: i ≤ j
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        le[0].fill(true);
        for (b, &(i, j)) in top.iter().enumerate() {
            if mask >> b & 1 == 1 {
                le[i][j] = true;
            }
        }
        if !transitive(&le) {
            continue;
        }
        let Some(table) = meet_table(&le) else { continue };
        let alg = FiniteAlgebra::new(format!("sl{n}"), meet_signature(), n, vec![table], None)?;
        classes.insert(alg)?;
    }
    Ok(classes.finish(n))
}

fn transitive(le: &[Vec<bool>]) -> bool {
    let n = le.len();
    (0..n).all(|i| (0..n).all(|j| !le[i][j] || (0..n).all(|k| !le[j][k] || le[i][k])))
}

fn meet_table(le: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = le.len();
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&z| le[z][x] && le[z][y]).collect();
            let greatest = lower.iter().copied().find(|&g| lower.iter().all(|&z| le[z][g]))?;
            table[x * n + y] = greatest;
        }
    }
    Some(table)
}

/// Commutative, idempotent, associative binary tables of size `n`, found by
/// scanning every table, deduplicated up to isomorphism. Independent of the
/// poset construction; only feasible for `n ≤ 3`.
pub fn semilattices_by_table_filter(n: usize) -> Result<Vec<FiniteAlgebra>> {
    if n == 0 || n > 3 {
        return Err(Error::SizeGuard {
            what: "table-filter semilattice enumeration".into(),
            needed: n as u128,
            limit: 3,
        });
    }
    let cells = n * n;
    let mut table = vec![0; cells];
    let mut classes = Dedup::default();
    for idx in 0..n.pow(cells as u32) {
        decode_tuple(idx, n, &mut table);
        let m = |a: usize, b: usize| table[a * n + b];
        let ok = (0..n).all(|a| m(a, a) == a)
            && (0..n).all(|a| (0..n).all(|b| m(a, b) == m(b, a)))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
        if ok {
            classes.insert(FiniteAlgebra::new(format!("sl{n}"), meet_signature(), n, vec![table.clone()], None)?)?;
        }
    }
    Ok(classes.finish(n))
}

/// Isomorphism-class collector with a cheap invariant as first filter.
#[derive(Default)]
struct Dedup {
    reps: Vec<FiniteAlgebra>,
    by_key: HashMap<Vec<usize>, Vec<usize>>,
}

impl Dedup {
    fn insert(&mut self, alg: FiniteAlgebra) -> Result<()> {
        let key = invariant(&alg);
        let bucket = self.by_key.entry(key).or_default();
        for &r in bucket.iter() {
            if find_isomorphism(&self.reps[r], &alg)?.is_some() {
                return Ok(());
            }
        }
        bucket.push(self.reps.len());
        self.reps.push(alg);
        Ok(())
    }

    fn finish(self, n: usize) -> Vec<FiniteAlgebra> {
        self.reps
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.renamed(format!("sl{n}.{i}")))
            .collect()
    }
}

/// Sorted multiset of down-set sizes.
fn invariant(alg: &FiniteAlgebra) -> Vec<usize> {
    let n = alg.size();
    let mut v: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| alg.apply(0, &[x, y]) == y).count())
        .collect();
    v.sort_unstable();
    v
}
