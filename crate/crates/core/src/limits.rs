use crate::error::{Error, Result};

/// Resource guards applied by the enumeration kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest operation table (|A|^arity entries) any operation may build.
    pub max_cells: u128,
    /// Largest number of variable assignments an exhaustive check may visit.
    pub max_assignments: u128,
    /// Largest congruence lattice that will be materialized.
    pub max_congruences: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: 10_000_000,
            max_assignments: 1_000_000_000,
            max_congruences: 200_000,
        }
    }
}

impl Limits {
    pub fn check_cells(&self, what: &str, needed: u128) -> Result<()> {
        guard(what, needed, self.max_cells)
    }

    pub fn check_assignments(&self, what: &str, needed: u128) -> Result<()> {
        guard(what, needed, self.max_assignments)
    }
}

fn guard(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::SizeGuard {
            what: what.to_string(),
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn pow_saturating(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
