use serde::{Deserialize, Serialize};

use super::maps::CompiledScheme;
use super::scheme::WitnessScheme;
use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::Congruence;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionFlag {
    Unique,
    /// Several solutions; the least one was taken.
    Multiple,
    None,
}

/// Solution of the `a_i, b_i` recursion. On a `none` flag the search
/// stops and the vectors hold the solved prefix only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionSolution {
    pub a: Vec<Element>,
    pub b: Vec<Element>,
    pub a_flags: Vec<SolutionFlag>,
    pub b_flags: Vec<SolutionFlag>,
    pub complete: bool,
}

impl RecursionSolution {
    pub fn all_unique(&self) -> bool {
        self.complete
            && self.a_flags.iter().chain(&self.b_flags).all(|f| *f == SolutionFlag::Unique)
    }

    /// The X-vector `(a, b, c, d, a1, b1, ..)` when complete.
    pub fn x_vector(&self, abcd: [Element; 4]) -> Option<Vec<Element>> {
        self.complete.then(|| {
            let mut v = abcd.to_vec();
            for (x, y) in self.a.iter().zip(&self.b) {
                v.push(*x);
                v.push(*y);
            }
            v
        })
    }
}

/// For `i = 1..n` finds `a_i` with `s_i(..) θ a_i θ* t_i(..)` and `b_i` with
/// `s_i(..) φ b_i φ* t_i(..)`, both sides evaluated on
/// `(a, b, c, d, a_1, b_1, .., a_{i-1}, b_{i-1})`.
pub fn solve_recursion(
    alg: &FiniteAlgebra,
    congruences: [&Congruence; 4],
    abcd: [Element; 4],
    scheme: &WitnessScheme,
) -> Result<RecursionSolution> {
    let [theta, theta_star, phi, phi_star] = congruences;
    for c in congruences {
        c.ensure_of(alg)?;
    }
    for e in abcd {
        alg.check_element(e)?;
    }
    let compiled = CompiledScheme::new(scheme, alg)?;
    let mut prefix = abcd.to_vec();
    let mut sol = RecursionSolution {
        a: Vec::new(),
        b: Vec::new(),
        a_flags: Vec::new(),
        b_flags: Vec::new(),
        complete: false,
    };
    let pick = |s: Element, t: Element, left: &Congruence, right: &Congruence| {
        let mut hits = (0..alg.size()).filter(|&e| left.contains(s, e) && right.contains(e, t));
        match (hits.next(), hits.next()) {
            (None, _) => (None, SolutionFlag::None),
            (Some(e), None) => (Some(e), SolutionFlag::Unique),
            (Some(e), Some(_)) => (Some(e), SolutionFlag::Multiple),
        }
    };
    for i in 0..scheme.n() {
        let s = compiled.eval_s(alg, i, &prefix);
        let t = compiled.eval_t(alg, i, &prefix);
        let (ai, fa) = pick(s, t, theta, theta_star);
        sol.a_flags.push(fa);
        let Some(ai) = ai else {
            return Ok(sol);
        };
        let (bi, fb) = pick(s, t, phi, phi_star);
        sol.b_flags.push(fb);
        let Some(bi) = bi else {
            return Ok(sol);
        };
        sol.a.push(ai);
        sol.b.push(bi);
        prefix.push(ai);
        prefix.push(bi);
    }
    sol.complete = true;
    Ok(sol)
}
