use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CompiledFormula, Formula};
use crate::algebra::{coordinate, encode_coordinates, Element, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::factor::GammaTable;
use crate::limits::{pow_saturating, Limits};

const XYZW: [&str; 4] = ["x", "y", "z", "w"];

/// Compiles `pi` with `x y z w` as its free slots after checking it has no
/// other free variables.
fn compile_xyzw(alg: &FiniteAlgebra, pi: &Formula) -> Result<CompiledFormula> {
    if let Some(v) = pi.free_vars().into_iter().find(|v| !XYZW.contains(&v.as_str())) {
        return Err(Error::MalformedFormula(format!("free variable `{v}` is not one of x, y, z, w")));
    }
    let free: Vec<String> = XYZW.iter().map(|s| s.to_string()).collect();
    CompiledFormula::compile(pi, alg, &free)
}

fn guard(alg: &FiniteAlgebra, pi: &Formula, tuple_arity: usize, limits: &Limits, what: &str) -> Result<()> {
    limits.check_assignments(what, pow_saturating(alg.size(), tuple_arity + pi.quantifier_depth()))
}

/// `π(a,b,c,d)` for every 4-tuple, indexed by the base-|A| encoding of
/// `(a,b,c,d)` (`a` most significant).
pub fn truth_table(alg: &FiniteAlgebra, pi: &Formula, limits: &Limits) -> Result<Vec<bool>> {
    guard(alg, pi, 4, limits, "formula truth table")?;
    let c = compile_xyzw(alg, pi)?;
    let n = alg.size();
    Ok((0..n.pow(4))
        .into_par_iter()
        .map(|i| c.eval(alg, &[i / (n * n * n), i / (n * n) % n, i / n % n, i % n]))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub holds: bool,
    /// Least failing `(x, y, z, w)`.
    pub witness: Option<[Element; 4]>,
}

impl ConditionResult {
    fn from_witness(witness: Option<[Element; 4]>) -> ConditionResult {
        ConditionResult { holds: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    /// `π(a, b, a, b)` for all `a, b`.
    pub cond_a: ConditionResult,
    /// `π(a, a, c, d)` for all `a, c, d`.
    pub cond_b: ConditionResult,
    /// `π(a, b, c, c)` implies `a = b`.
    pub cond_c: ConditionResult,
}

impl StarReport {
    pub fn passed(&self) -> bool {
        self.cond_a.holds && self.cond_b.holds && self.cond_c.holds
    }
}

pub fn check_star_conditions(alg: &FiniteAlgebra, pi: &Formula, limits: &Limits) -> Result<StarReport> {
    guard(alg, pi, 3, limits, "property (*) check")?;
    let c = compile_xyzw(alg, pi)?;
    let n = alg.size();
    let first = |arity: u32, fail: &(dyn Fn(&[usize]) -> Option<[Element; 4]> + Sync)| {
        (0..n.pow(arity)).into_par_iter().find_map_first(|i| {
            let t: Vec<usize> = (0..arity).map(|p| i / n.pow(arity - 1 - p) % n).collect();
            fail(&t)
        })
    };
    let cond_a = first(2, &|t| {
        let v = [t[0], t[1], t[0], t[1]];
        (!c.eval(alg, &v)).then_some(v)
    });
    let cond_b = first(3, &|t| {
        let v = [t[0], t[0], t[1], t[2]];
        (!c.eval(alg, &v)).then_some(v)
    });
    let cond_c = first(3, &|t| {
        let v = [t[0], t[1], t[2], t[2]];
        (t[0] != t[1] && c.eval(alg, &v)).then_some(v)
    });
    Ok(StarReport {
        cond_a: ConditionResult::from_witness(cond_a),
        cond_b: ConditionResult::from_witness(cond_b),
        cond_c: ConditionResult::from_witness(cond_c),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationWitness {
    pub left: [Element; 4],
    pub right: [Element; 4],
    pub product_holds: bool,
    pub left_holds: bool,
    pub right_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationReport {
    pub passed: bool,
    pub tuples_checked: usize,
    pub witness: Option<PreservationWitness>,
}

/// `A × B ⊨ π(⟨a,a'⟩, ⟨b,b'⟩, ⟨c,c'⟩, ⟨d,d'⟩)` iff `A ⊨ π(a,b,c,d)` and
/// `B ⊨ π(a',b',c',d')`, over all tuples.
pub fn check_factor_preservation(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    pi: &Formula,
    limits: &Limits,
) -> Result<PreservationReport> {
    a.ensure_same_signature(b)?;
    let product = FiniteAlgebra::direct_product_with(&[a, b], limits)?;
    let ta = truth_table(a, pi, limits)?;
    let tb = truth_table(b, pi, limits)?;
    let tp = truth_table(&product, pi, limits)?;
    let (na, nb, np) = (a.size(), b.size(), product.size());
    let sizes = [na, nb];
    let idx4 = |t: &[usize; 4], n: usize| ((t[0] * n + t[1]) * n + t[2]) * n + t[3];
    let witness = (0..tp.len()).into_par_iter().find_map_first(|i| {
        let p = [i / (np * np * np), i / (np * np) % np, i / np % np, i % np];
        let left = p.map(|e| coordinate(e, &sizes, 0));
        let right = p.map(|e| coordinate(e, &sizes, 1));
        let (lh, rh) = (ta[idx4(&left, na)], tb[idx4(&right, nb)]);
        (tp[i] != (lh && rh)).then_some(PreservationWitness {
            left,
            right,
            product_holds: tp[i],
            left_holds: lh,
            right_holds: rh,
        })
    });
    Ok(PreservationReport { passed: witness.is_none(), tuples_checked: tp.len(), witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelWitness {
    pub a: Element,
    pub b: Element,
    pub a1: Element,
    pub b1: Element,
    pub c1: Element,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub passed: bool,
    pub tuples_checked: usize,
    pub witness: Option<KernelWitness>,
}

/// On `A0 × A1`: `π(⟨a,a'⟩, ⟨b,b'⟩, ⟨a,c'⟩, ⟨b,c'⟩)` holds iff `a' = b'`.
pub fn check_kernel_characterization(
    a0: &FiniteAlgebra,
    a1: &FiniteAlgebra,
    pi: &Formula,
    limits: &Limits,
) -> Result<KernelReport> {
    a0.ensure_same_signature(a1)?;
    let product = FiniteAlgebra::direct_product_with(&[a0, a1], limits)?;
    limits.check_assignments(
        "kernel characterization",
        pow_saturating(a0.size(), 2)
            .saturating_mul(pow_saturating(a1.size(), 3))
            .saturating_mul(pow_saturating(product.size(), pi.quantifier_depth())),
    )?;
    let c = compile_xyzw(&product, pi)?;
    let (n0, n1) = (a0.size(), a1.size());
    let sizes = [n0, n1];
    let total = n0 * n0 * n1 * n1 * n1;
    let witness = (0..total).into_par_iter().find_map_first(|i| {
        let (a, b) = (i / (n0 * n1 * n1 * n1), i / (n1 * n1 * n1) % n0);
        let (x1, y1, z1) = (i / (n1 * n1) % n1, i / n1 % n1, i % n1);
        let p = |u: usize, v: usize| encode_coordinates(&[u, v], &sizes);
        let holds = c.eval(&product, &[p(a, x1), p(b, y1), p(a, z1), p(b, z1)]);
        (holds != (x1 == y1)).then_some(KernelWitness { a, b, a1: x1, b1: y1, c1: z1, holds })
    });
    Ok(KernelReport { passed: witness.is_none(), tuples_checked: total, witness })
}

/// Comparison of `π` with Γ over all 4-tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaPiReport {
    /// `π ⇒ Γ` on every tuple.
    pub implication_holds: bool,
    pub implication_failures: Vec<[Element; 4]>,
    /// Tuples with Γ true and π false; the converse is not required.
    pub converse_failures: Vec<[Element; 4]>,
    pub tuples_checked: usize,
}

pub fn gamma_vs_pi(alg: &FiniteAlgebra, pi: &Formula, limits: &Limits) -> Result<GammaPiReport> {
    let table = truth_table(alg, pi, limits)?;
    let n = alg.size();
    gamma_vs_predicate(alg, limits, |t| table[((t[0] * n + t[1]) * n + t[2]) * n + t[3]])
}

/// As [`gamma_vs_pi`] for an arbitrary 4-ary predicate.
pub fn gamma_vs_predicate(
    alg: &FiniteAlgebra,
    limits: &Limits,
    pred: impl Fn([Element; 4]) -> bool + Sync,
) -> Result<GammaPiReport> {
    let gamma = GammaTable::new(alg, limits)?;
    let n = alg.size();
    let rows: Vec<([Element; 4], bool, bool)> = (0..n.pow(4))
        .into_par_iter()
        .map(|i| {
            let t = [i / (n * n * n), i / (n * n) % n, i / n % n, i % n];
            let g = gamma.holds(t[0], t[1], t[2], t[3]).expect("in range");
            (t, pred(t), g)
        })
        .collect();
    let implication_failures: Vec<[Element; 4]> = rows.iter().filter(|(_, p, g)| *p && !g).map(|r| r.0).collect();
    let converse_failures = rows.iter().filter(|(_, p, g)| !p && *g).map(|r| r.0).collect();
    Ok(GammaPiReport {
        implication_holds: implication_failures.is_empty(),
        implication_failures,
        converse_failures,
        tuples_checked: rows.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn degenerate_formulas() {
        let a = corpus::chain(3);
        let l = Limits::default();
        let eq = Formula::parse("(= x y)").unwrap();
        let r = check_star_conditions(&a, &eq, &l).unwrap();
        assert!(!r.cond_a.holds);
        assert_eq!(r.cond_a.witness, Some([0, 1, 0, 1]));
        assert!(r.cond_b.holds && r.cond_c.holds);

        let t = check_star_conditions(&a, &Formula::True, &l).unwrap();
        assert!(t.cond_a.holds && t.cond_b.holds);
        assert_eq!(t.cond_c.witness, Some([0, 1, 0, 0]));

        let bad = Formula::parse("(= x u)").unwrap();
        assert!(check_star_conditions(&a, &bad, &l).is_err());
    }

    #[test]
    fn pi_s_on_small_products() {
        let l = Limits::default();
        let pi = corpus::semilattice_pi_s();
        let c2 = corpus::chain(2);
        assert!(check_factor_preservation(&c2, &c2, &pi, &l).unwrap().passed);
        assert!(check_kernel_characterization(&c2, &c2, &pi, &l).unwrap().passed);
        assert!(check_factor_preservation(&c2, &c2, &Formula::True, &l).unwrap().passed);
        let k = check_kernel_characterization(&c2, &c2, &Formula::True, &l).unwrap();
        assert!(!k.passed);
        assert!(k.witness.unwrap().holds);
    }

    #[test]
    fn gamma_against_itself() {
        let p = FiniteAlgebra::direct_product(&[&corpus::chain(2), &corpus::chain(2)]).unwrap();
        let l = Limits::default();
        let g = GammaTable::new(&p, &l).unwrap();
        let r = gamma_vs_predicate(&p, &l, |t| g.holds(t[0], t[1], t[2], t[3]).unwrap()).unwrap();
        assert!(r.implication_holds);
        assert!(r.converse_failures.is_empty());
        assert_eq!(r.tuples_checked, 256);
    }

    #[test]
    fn guard_trips() {
        let a = corpus::band0_algebra_a();
        let tiny = Limits { max_assignments: 10, ..Limits::default() };
        let err = check_star_conditions(&a, &corpus::semilattice_pi_s(), &tiny).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { .. }));
    }
}
