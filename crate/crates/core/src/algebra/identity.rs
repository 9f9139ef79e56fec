use rayon::prelude::*;

use super::{decode_tuple, Assignment, CompiledTerm, FiniteAlgebra, Term};
use crate::error::Result;
use crate::limits::{pow_saturating, Limits};

const CHUNK: usize = 1 << 12;

/// True iff `lhs` and `rhs` agree under every assignment of their variables.
pub fn check_identity(alg: &FiniteAlgebra, lhs: &Term, rhs: &Term) -> Result<bool> {
    Ok(find_identity_counterexample(alg, lhs, rhs, &Limits::default())?.is_none())
}

/// Lexicographically least failing assignment, variables ordered by first
/// occurrence in `lhs` then `rhs` (first variable most significant).
pub fn find_identity_counterexample(
    alg: &FiniteAlgebra,
    lhs: &Term,
    rhs: &Term,
    limits: &Limits,
) -> Result<Option<Assignment>> {
    let mut vars = lhs.vars();
    rhs.collect_vars(&mut vars);
    let slot_of = |v: &str| vars.iter().position(|x| x == v);
    let l = CompiledTerm::compile(lhs, alg.signature(), &slot_of)?;
    let r = CompiledTerm::compile(rhs, alg.signature(), &slot_of)?;
    let n = alg.size();
    let total = pow_saturating(n, vars.len());
    limits.check_assignments("identity check", total)?;
    let total = total as usize;

    let scan = |start: usize| -> Option<Vec<usize>> {
        let end = (start + CHUNK).min(total);
        let mut slots = vec![0; vars.len()];
        decode_tuple(start, n, &mut slots);
        for _ in start..end {
            if l.eval(alg, &slots) != r.eval(alg, &slots) {
                return Some(slots);
            }
            increment(&mut slots, n);
        }
        None
    };
    let chunks = total.div_ceil(CHUNK);
    let found = if chunks <= 1 {
        scan(0)
    } else {
        (0..chunks).into_par_iter().find_map_first(|c| scan(c * CHUNK))
    };
    Ok(found.map(|slots| vars.iter().cloned().zip(slots).collect()))
}

/// Odometer step over `{0..n-1}^k`, last slot least significant.
pub(crate) fn increment(slots: &mut [usize], n: usize) -> bool {
    for s in slots.iter_mut().rev() {
        *s += 1;
        if *s < n {
            return true;
        }
        *s = 0;
    }
    false
}
