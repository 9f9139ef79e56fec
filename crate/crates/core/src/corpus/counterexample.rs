use serde::{Deserialize, Serialize};

use super::{band0_algebra_a, band0_phi2_simplified, band0_scheme, semilattice_pi_s};
use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::{Congruence, Partition};
use crate::error::Result;
use crate::factor::GammaTable;
use crate::formula::{build_phi2, build_pi, truth_table, CompiledFormula};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleClause {
    pub label: String,
    pub statement: String,
    pub holds: bool,
}

/// Why no set of congruences can describe `π` on band0.algebraA.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub algebra: String,
    pub clauses: Vec<CounterexampleClause>,
    /// Least `u` with `a·u = b·u` and `(a·c)·u ≠ (b·c)·u`.
    pub separating_u: Option<String>,
    pub matches: bool,
}

pub fn reproduce_counterexample() -> Result<CounterexampleReport> {
    let alg = band0_algebra_a();
    let e = |s: &str| alg.parse_element(s);
    let (a, b, c) = (e("a")?, e("b")?, e("c")?);
    let m = |x: Element, y: Element| alg.op("*", &[x, y]);
    let name = |x: Element| alg.element_name(x);
    let xyzw: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();

    let scheme = band0_scheme();
    let pi = CompiledFormula::compile(&build_pi(&scheme), &alg, &xyzw)?;
    let phi2 = CompiledFormula::compile(&build_phi2(&scheme), &alg, &xyzw)?;
    let phi2s = CompiledFormula::compile(&band0_phi2_simplified(), &alg, &xyzw)?;
    let gamma = GammaTable::new(&alg, &Limits::default())?;
    let (ac, bc) = (m(a, c), m(b, c));

    let mut clauses = Vec::new();
    let mut clause = |label: &str, statement: String, holds: bool| {
        clauses.push(CounterexampleClause { label: label.into(), statement, holds });
    };
    clause("i", "π(a,b,a,b)".into(), pi.eval(&alg, &[a, b, a, b]));
    clause("ii", "π(c,c,a,b)".into(), pi.eval(&alg, &[c, c, a, b]));
    let products = [
        (ac == a, format!("a·c = {}", name(ac))),
        (bc == c, format!("b·c = {}", name(bc))),
        (m(a, a) == a && m(b, a) == a, format!("a·a = {} and b·a = {}", name(m(a, a)), name(m(b, a)))),
        (
            m(ac, a) == a && m(bc, a) == c && m(ac, a) != m(bc, a),
            format!("(a·c)·a = {} ≠ {} = (b·c)·a", name(m(ac, a)), name(m(bc, a))),
        ),
    ];
    clause(
        "iii",
        products.iter().map(|(_, s)| s.as_str()).collect::<Vec<_>>().join("; "),
        products.iter().all(|(ok, _)| *ok),
    );
    let phi2_value = phi2.eval(&alg, &[ac, bc, a, b]);
    let phi2s_value = phi2s.eval(&alg, &[ac, bc, a, b]);
    clause("iv", "¬Φ2(a·c, b·c, a, b)".into(), !phi2_value && !phi2s_value);
    let premises = gamma.holds(a, b, a, b)? && gamma.holds(c, c, a, b)?;
    // Γ(·,·,a,b) is a congruence, so it is closed under multiplication
    let closed = gamma.kernel(a, b).contains(m(a, c), m(b, c));
    clause(
        "v",
        "Γ(a,b,a,b) and Γ(c,c,a,b) give Γ(a·c, b·c, a, b)".into(),
        premises && closed && gamma.holds(ac, bc, a, b)?,
    );

    let separating_u = (0..alg.size())
        .find(|&u| m(a, u) == m(b, u) && m(ac, u) != m(bc, u))
        .map(name);
    let matches = clauses.iter().all(|c| c.holds) && separating_u.is_some();
    Ok(CounterexampleReport { algebra: alg.name().to_string(), clauses, separating_u, matches })
}

/// Checks on a semilattice that every `θ_{z,w} = {(x,y) : π_s(x,y,z,w)}`
/// is a congruence and that `π_s(x,y,z,w)` holds iff every `θ_{z',w'}`
/// containing `(z,w)` contains `(x,y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FcStarReport {
    pub all_congruences: bool,
    pub equivalent: bool,
    pub witness: Option<[Element; 4]>,
}

pub fn pi_s_fc_star_check(alg: &FiniteAlgebra, limits: &Limits) -> Result<FcStarReport> {
    let n = alg.size();
    let table = truth_table(alg, &semilattice_pi_s(), limits)?;
    let pi = |x: usize, y: usize, z: usize, w: usize| table[((x * n + y) * n + z) * n + w];
    let mut thetas = Vec::with_capacity(n * n);
    let mut all_congruences = true;
    for z in 0..n {
        for w in 0..n {
            let rel = crate::congruence::BinaryRelation::from_pairs(
                n,
                &(0..n * n).map(|i| (i / n, i % n)).filter(|&(x, y)| pi(x, y, z, w)).collect::<Vec<_>>(),
            )?;
            match rel.as_partition().map(|p: Partition| Congruence::new(alg, p)) {
                Some(Ok(theta)) => thetas.push(theta),
                _ => all_congruences = false,
            }
        }
    }
    let mut witness = None;
    if all_congruences {
        'search: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let via = thetas.iter().all(|t| !t.contains(z, w) || t.contains(x, y));
                        if via != pi(x, y, z, w) {
                            witness = Some([x, y, z, w]);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    Ok(FcStarReport { all_congruences, equivalent: all_congruences && witness.is_none(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::chain;

    #[test]
    fn counterexample_matches() {
        let r = reproduce_counterexample().unwrap();
        assert!(r.matches, "{r:#?}");
        assert_eq!(r.clauses.len(), 5);
        assert_eq!(r.separating_u.as_deref(), Some("a"));
        assert_eq!(r.clauses[2].statement, "a·c = a; b·c = c; a·a = a and b·a = a; (a·c)·a = a ≠ c = (b·c)·a");
    }

    #[test]
    fn fc_star_on_chains() {
        for n in 1..=4 {
            let r = pi_s_fc_star_check(&chain(n), &Limits::default()).unwrap();
            assert!(r.all_congruences && r.equivalent, "{r:?}");
        }
    }
}
