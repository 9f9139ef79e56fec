//! First-order formulas over a finite algebra, the Ψ/Φ builders and the
//! property (*) checks.

mod build;
mod checks;

use std::fmt;

pub use build::{build_phi1, build_phi2, build_pi, build_psi};
pub use checks::{
    check_factor_preservation, check_kernel_characterization, check_star_conditions, gamma_vs_pi,
    gamma_vs_predicate, truth_table, ConditionResult, GammaPiReport, KernelReport, KernelWitness,
    PreservationReport, PreservationWitness, StarReport,
};

use crate::algebra::{Assignment, CompiledTerm, FiniteAlgebra, Term};
use crate::error::{Error, Result};
use crate::sexpr::Sexp;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    Eq(Term, Term),
    And(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    /// Conjunction with nested conjunctions spliced in; a single conjunct
    /// is returned as is and the empty conjunction is `true`.
    pub fn and(parts: Vec<Formula>) -> Formula {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::True,
            1 => flat.pop().unwrap(),
            _ => Formula::And(flat),
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::True => {}
            Formula::Eq(l, r) => {
                for v in l.vars().into_iter().chain(r.vars()) {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula::And(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Longest chain of nested quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::True | Formula::Eq(..) => 0,
            Formula::And(fs) => fs.iter().map(Formula::quantifier_depth).max().unwrap_or(0),
            Formula::Implies(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_depth(),
        }
    }

    /// Renames every bound variable to a fresh `_v<i>`.
    pub fn alpha_normalize(&self) -> Formula {
        let mut counter = 0;
        self.rename_bound(&mut Vec::new(), &mut counter)
    }

    fn rename_bound(&self, scope: &mut Vec<(String, String)>, counter: &mut usize) -> Formula {
        let rename = |t: &Term, scope: &Vec<(String, String)>| {
            let binding = scope
                .iter()
                .map(|(old, new)| (old.clone(), Term::var(new.clone())))
                .collect();
            t.substitute(&binding)
        };
        match self {
            Formula::True => Formula::True,
            Formula::Eq(l, r) => Formula::Eq(rename(l, scope), rename(r, scope)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rename_bound(scope, counter)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_bound(scope, counter), b.rename_bound(scope, counter))
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let fresh = format!("_v{counter}");
                *counter += 1;
                // inner bindings shadow outer ones
                let saved: Vec<(String, String)> = scope.clone();
                scope.retain(|(old, _)| old != v);
                scope.push((v.clone(), fresh.clone()));
                let body = f.rename_bound(scope, counter);
                *scope = saved;
                match self {
                    Formula::Forall(..) => Formula::forall(fresh, body),
                    _ => Formula::exists(fresh, body),
                }
            }
        }
    }

    pub fn parse(input: &str) -> Result<Formula> {
        Formula::from_sexp(&Sexp::parse(input)?)
    }

    pub fn from_sexp(s: &Sexp) -> Result<Formula> {
        let bad = |msg: &str| Error::MalformedFormula(format!("{msg}: `{s}`"));
        match s {
            Sexp::Atom(a) if a == "true" => Ok(Formula::True),
            Sexp::Atom(_) => Err(bad("atom is not a formula")),
            Sexp::List(items) => {
                let head = items.first().and_then(Sexp::as_atom).ok_or_else(|| bad("missing head"))?;
                let args = &items[1..];
                match (head, args.len()) {
                    ("=", 2) => Ok(Formula::Eq(Term::from_sexp(&args[0])?, Term::from_sexp(&args[1])?)),
                    ("and", _) => Ok(Formula::And(args.iter().map(Formula::from_sexp).collect::<Result<_>>()?)),
                    ("implies", 2) => Ok(Formula::implies(Formula::from_sexp(&args[0])?, Formula::from_sexp(&args[1])?)),
                    ("forall" | "exists", 2) => {
                        let v = args[0]
                            .as_atom()
                            .filter(|v| crate::algebra::is_identifier(v))
                            .ok_or_else(|| bad("quantified variable expected"))?;
                        let body = Formula::from_sexp(&args[1])?;
                        Ok(if head == "forall" { Formula::forall(v, body) } else { Formula::exists(v, body) })
                    }
                    _ => Err(bad("unknown connective or wrong argument count")),
                }
            }
        }
    }

    pub fn to_sexp(&self) -> Sexp {
        let atom = |s: &str| Sexp::Atom(s.to_string());
        match self {
            Formula::True => atom("true"),
            Formula::Eq(l, r) => Sexp::List(vec![atom("="), l.to_sexp(), r.to_sexp()]),
            Formula::And(fs) => {
                let mut items = vec![atom("and")];
                items.extend(fs.iter().map(Formula::to_sexp));
                Sexp::List(items)
            }
            Formula::Implies(a, b) => Sexp::List(vec![atom("implies"), a.to_sexp(), b.to_sexp()]),
            Formula::Forall(v, f) => Sexp::List(vec![atom("forall"), atom(v), f.to_sexp()]),
            Formula::Exists(v, f) => Sexp::List(vec![atom("exists"), atom(v), f.to_sexp()]),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

#[derive(Debug, Clone)]
enum Node {
    True,
    Eq(CompiledTerm, CompiledTerm),
    And(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A formula resolved against one algebra. Free variables occupy the first
/// slots in the order given at compile time; every quantifier gets its own
/// slot after those.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    root: Node,
    free: Vec<String>,
    slots: usize,
    algebra: u64,
}

impl CompiledFormula {
    pub fn compile(f: &Formula, alg: &FiniteAlgebra, free: &[String]) -> Result<CompiledFormula> {
        let mut scope: Vec<(String, usize)> = free.iter().cloned().zip(0..).collect();
        let mut next = free.len();
        let root = compile_node(f, alg, &mut scope, &mut next)?;
        Ok(CompiledFormula { root, free: free.to_vec(), slots: next, algebra: alg.fingerprint() })
    }

    pub fn free(&self) -> &[String] {
        &self.free
    }

    /// Evaluates with `values` bound to the free variables in order.
    pub fn eval(&self, alg: &FiniteAlgebra, values: &[usize]) -> bool {
        debug_assert_eq!(self.algebra, alg.fingerprint());
        let mut slots = vec![0; self.slots];
        slots[..values.len()].copy_from_slice(values);
        eval_node(&self.root, alg, &mut slots)
    }

    pub fn ensure_of(&self, alg: &FiniteAlgebra) -> Result<()> {
        if self.algebra == alg.fingerprint() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

fn compile_node(
    f: &Formula,
    alg: &FiniteAlgebra,
    scope: &mut Vec<(String, usize)>,
    next: &mut usize,
) -> Result<Node> {
    Ok(match f {
        Formula::True => Node::True,
        Formula::Eq(l, r) => {
            let lookup = |v: &str| scope.iter().rev().find(|(n, _)| n == v).map(|(_, s)| *s);
            Node::Eq(
                CompiledTerm::compile(l, alg.signature(), &lookup)?,
                CompiledTerm::compile(r, alg.signature(), &lookup)?,
            )
        }
        Formula::And(fs) => Node::And(fs.iter().map(|g| compile_node(g, alg, scope, next)).collect::<Result<_>>()?),
        Formula::Implies(a, b) => Node::Implies(
            Box::new(compile_node(a, alg, scope, next)?),
            Box::new(compile_node(b, alg, scope, next)?),
        ),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let slot = *next;
            *next += 1;
            scope.push((v.clone(), slot));
            let body = Box::new(compile_node(g, alg, scope, next)?);
            scope.pop();
            if matches!(f, Formula::Forall(..)) {
                Node::Forall(slot, body)
            } else {
                Node::Exists(slot, body)
            }
        }
    })
}

fn eval_node(node: &Node, alg: &FiniteAlgebra, slots: &mut [usize]) -> bool {
    match node {
        Node::True => true,
        Node::Eq(l, r) => l.eval(alg, slots) == r.eval(alg, slots),
        Node::And(ns) => ns.iter().all(|n| eval_node(n, alg, slots)),
        Node::Implies(a, b) => !eval_node(a, alg, slots) || eval_node(b, alg, slots),
        Node::Forall(s, body) => (0..alg.size()).all(|e| {
            slots[*s] = e;
            eval_node(body, alg, slots)
        }),
        Node::Exists(s, body) => (0..alg.size()).any(|e| {
            slots[*s] = e;
            eval_node(body, alg, slots)
        }),
    }
}

/// Standard finite-model semantics; `env` must bind every free variable.
pub fn eval_formula(alg: &FiniteAlgebra, f: &Formula, env: &Assignment) -> Result<bool> {
    let free = f.free_vars();
    let mut values = Vec::with_capacity(free.len());
    for v in &free {
        let e = *env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
        alg.check_element(e)?;
        values.push(e);
    }
    Ok(CompiledFormula::compile(f, alg, &free)?.eval(alg, &values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn env(pairs: &[(&str, usize)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn parse_print_round_trip() {
        for text in [
            "true",
            "(= x y)",
            "(forall u (implies (= (* z u) (* w u)) (= (* x u) (* y u))))",
            "(exists y1 (and (= (* y y1) 0) true))",
            "(and)",
        ] {
            assert_eq!(Formula::parse(text).unwrap().to_string(), text);
        }
        assert!(Formula::parse("(or a b)").is_err());
        assert!(Formula::parse("(forall (* x y) true)").is_err());
        assert!(Formula::parse("x").is_err());
    }

    #[test]
    fn basic_semantics() {
        let a = corpus::band0_algebra_a();
        let f = Formula::parse("(forall u (= x x))").unwrap();
        assert!(eval_formula(&a, &f, &env(&[("x", 2)])).unwrap());
        let g = Formula::parse("(exists u (= (* u x) u))").unwrap();
        assert!(eval_formula(&a, &g, &env(&[("x", 3)])).unwrap());
        let h = Formula::parse("(forall u (= (* u x) u))").unwrap();
        assert!(!eval_formula(&a, &h, &env(&[("x", 3)])).unwrap());
        assert_eq!(
            eval_formula(&a, &h, &env(&[])).unwrap_err(),
            Error::UnboundVariable("x".into())
        );
    }

    #[test]
    fn shadowing() {
        let a = corpus::chain(3);
        // inner u shadows the outer one
        let g = Formula::parse("(exists u (and (= u x) (forall u (= (* u x) (* x u)))))").unwrap();
        assert!(eval_formula(&a, &g, &env(&[("x", 1)])).unwrap());
        assert_eq!(g.alpha_normalize().free_vars(), vec!["x".to_string()]);
    }

    #[test]
    fn free_variables_and_depth() {
        let f = Formula::parse("(forall u (implies (= (* z u) (* w u)) (= (* x u) (* y u))))").unwrap();
        assert_eq!(f.free_vars(), ["z", "w", "x", "y"]);
        assert_eq!(f.quantifier_depth(), 1);
        assert_eq!(Formula::and(vec![Formula::True]), Formula::True);
        assert_eq!(Formula::and(vec![]), Formula::True);
    }
}
