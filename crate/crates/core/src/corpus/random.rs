use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{band0_identities, band0_signature};
use crate::algebra::{check_identity, FiniteAlgebra};
use crate::error::{Error, Result};

/// Proposal budget for [`random_member_band0`].
pub const RANDOM_ATTEMPTS: usize = 1_000_000;

/// A random idempotent semigroup with zero on `size ≤ 5` elements, by
/// rejection sampling. Element `0` is the zero; proposals fix the zero
/// rows and the diagonal and draw the rest uniformly. `None` when the
/// budget runs out.
pub fn random_member_band0(size: usize, seed: u64) -> Result<Option<FiniteAlgebra>> {
    if size == 0 || size > 5 {
        return Err(Error::SizeGuard { what: "random band0 member".into(), needed: size as u128, limit: 5 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = vec![0; size * size];
    for _ in 0..RANDOM_ATTEMPTS {
        for x in 1..size {
            for y in 1..size {
                table[x * size + y] = if x == y { x } else { rng.gen_range(0..size) };
            }
        }
        let m = |a: usize, b: usize| table[a * size + b];
        let associative =
            (0..size).all(|a| (0..size).all(|b| (0..size).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
        if !associative {
            continue;
        }
        let mut names = vec!["0".to_string()];
        names.extend((1..size).map(|i| format!("e{i}")));
        let alg = FiniteAlgebra::new(
            format!("band0.random{size}.{seed}"),
            band0_signature(),
            size,
            vec![vec![0], table.clone()],
            Some(names),
        )?;
        for (name, l, r) in band0_identities() {
            if !check_identity(&alg, &l, &r)? {
                return Err(Error::InvariantViolation(format!("generated table violates {name}")));
            }
        }
        return Ok(Some(alg));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_forced_sizes() {
        let one = random_member_band0(1, 7).unwrap().unwrap();
        assert_eq!(one.size(), 1);
        let two = random_member_band0(2, 3).unwrap().unwrap();
        assert_eq!(two.table(1), &[0, 0, 0, 1]);
        assert!(random_member_band0(6, 0).is_err());
    }

    /// Exhaustive over all 2^4 tables on {0, e}: only one satisfies the
    /// identities.
    #[test]
    fn two_element_member_is_unique() {
        let mut found = Vec::new();
        for bits in 0..16usize {
            let table: Vec<usize> = (0..4).map(|i| bits >> i & 1).collect();
            let alg = FiniteAlgebra::new("t", band0_signature(), 2, vec![vec![0], table.clone()], None).unwrap();
            if band0_identities().iter().all(|(_, l, r)| check_identity(&alg, l, r).unwrap()) {
                found.push(table);
            }
        }
        assert_eq!(found, vec![vec![0, 0, 0, 1]]);
    }

    #[test]
    fn seeded_members_are_deterministic() {
        for seed in 0..5 {
            let a = random_member_band0(4, seed).unwrap().unwrap();
            let b = random_member_band0(4, seed).unwrap().unwrap();
            assert_eq!(a, b);
        }
    }
}
