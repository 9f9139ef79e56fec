use super::{decode_tuple, Element, FiniteAlgebra};
use crate::error::Result;

/// Searches for an isomorphism `A -> B`. Backtracks over elements of `A` in
/// increasing order, trying images in increasing order, and prunes whenever
/// an operation applied to already-mapped arguments contradicts the partial
/// map. Returns the first map found.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<Element>>> {
    a.ensure_same_signature(b)?;
    if a.size() != b.size() {
        return Ok(None);
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    let mut sorted_a = inv_a.clone();
    let mut sorted_b = inv_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(None);
    }
    let n = a.size();
    let mut search = Search {
        a,
        b,
        inv_a,
        inv_b,
        map: vec![None; n],
        used: vec![false; n],
    };
    if search.extend(0) {
        Ok(Some(search.map.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

/// Exhaustively checks that `map` commutes with every operation.
pub fn is_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Element]) -> bool {
    if a.signature() != b.signature() || map.len() != a.size() || map.iter().any(|&e| e >= b.size()) {
        return false;
    }
    for (op, (_, arity)) in a.signature().ops().iter().enumerate() {
        let cells = a.table(op).len();
        let mut args = vec![0; *arity];
        let mut img = vec![0; *arity];
        for idx in 0..cells {
            decode_tuple(idx, a.size(), &mut args);
            for (k, &x) in args.iter().enumerate() {
                img[k] = map[x];
            }
            if map[a.apply(op, &args)] != b.apply(op, &img) {
                return false;
            }
        }
    }
    true
}

/// Per-element isomorphism invariant: for every operation, how often the
/// element occurs as a value and whether it is idempotent.
fn invariants(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size();
    let mut inv = vec![Vec::new(); n];
    for op in 0..alg.signature().len() {
        let arity = alg.arity(op);
        let mut counts = vec![0usize; n];
        for &v in alg.table(op) {
            counts[v] += 1;
        }
        for e in 0..n {
            inv[e].push(counts[e]);
            if arity > 0 {
                let diag = vec![e; arity];
                inv[e].push(usize::from(alg.apply(op, &diag) == e));
            }
        }
    }
    inv
}

struct Search<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    inv_a: Vec<Vec<usize>>,
    inv_b: Vec<Vec<usize>>,
    map: Vec<Option<Element>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, x: Element) -> bool {
        let n = self.a.size();
        if x == n {
            return true;
        }
        for y in 0..n {
            if self.used[y] || self.inv_a[x] != self.inv_b[y] {
                continue;
            }
            self.map[x] = Some(y);
            self.used[y] = true;
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.map[x] = None;
            self.used[y] = false;
        }
        false
    }

    /// Checks every tuple of mapped elements that involves `x`.
    fn consistent(&self, x: Element) -> bool {
        let mapped: Vec<Element> = (0..=x).collect();
        for op in 0..self.a.signature().len() {
            let arity = self.a.arity(op);
            if arity == 0 {
                let ca = self.a.apply(op, &[]);
                if let Some(img) = self.map[ca] {
                    if img != self.b.apply(op, &[]) {
                        return false;
                    }
                }
                continue;
            }
            let m = mapped.len();
            let total = m.pow(arity as u32);
            let mut idx_args = vec![0; arity];
            let mut args = vec![0; arity];
            let mut img = vec![0; arity];
            for idx in 0..total {
                decode_tuple(idx, m, &mut idx_args);
                if !idx_args.contains(&x) {
                    continue;
                }
                for k in 0..arity {
                    args[k] = mapped[idx_args[k]];
                    img[k] = self.map[args[k]].unwrap();
                }
                let r = self.a.apply(op, &args);
                let s = self.b.apply(op, &img);
                match self.map[r] {
                    Some(t) if t != s => return false,
                    None if self.used[s] => return false,
                    _ => {}
                }
            }
        }
        true
    }
}
