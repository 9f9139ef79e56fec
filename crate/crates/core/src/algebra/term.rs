use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::Signature;
use crate::error::{Error, Result};
use crate::sexpr::Sexp;

/// A term over some signature: a variable or an operation applied to subterms.
///
/// The textual form is an s-expression. A bare identifier such as `x1` is a
/// variable; any other bare atom (`0`, `*`) is a nullary operation symbol.
/// Identifier-like constants are written as a one-element list, `(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(symbol: impl Into<String>) -> Term {
        Term::App(symbol.into(), Vec::new())
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(symbol.into(), args)
    }

    /// Binary application, the common case for the bundled signatures.
    pub fn bin(symbol: &str, left: Term, right: Term) -> Term {
        Term::App(symbol.to_string(), vec![left, right])
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|o| o == v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Simultaneous substitution; variables without a binding are kept.
    pub fn substitute(&self, binding: &HashMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => binding.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(binding)).collect())
            }
        }
    }

    /// Checks every application against the signature.
    pub fn conforms(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let (_, arity) = sig.lookup(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: f.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.conforms(sig))
            }
        }
    }

    pub fn parse(input: &str) -> Result<Term> {
        Term::from_sexp(&Sexp::parse(input)?)
    }

    pub fn from_sexp(s: &Sexp) -> Result<Term> {
        match s {
            Sexp::Atom(a) if is_identifier(a) => Ok(Term::Var(a.clone())),
            Sexp::Atom(a) => Ok(Term::App(a.clone(), Vec::new())),
            Sexp::List(items) => {
                let (head, rest) = items
                    .split_first()
                    .ok_or_else(|| Error::Parse("empty list is not a term".into()))?;
                let symbol = head
                    .as_atom()
                    .ok_or_else(|| Error::Parse(format!("operation symbol expected, got `{head}`")))?;
                let args = rest.iter().map(Term::from_sexp).collect::<Result<Vec<_>>>()?;
                Ok(Term::App(symbol.to_string(), args))
            }
        }
    }

    pub fn to_sexp(&self) -> Sexp {
        match self {
            Term::Var(v) => Sexp::Atom(v.clone()),
            Term::App(f, args) if args.is_empty() && !is_identifier(f) => Sexp::Atom(f.clone()),
            Term::App(f, args) => {
                let mut items = vec![Sexp::Atom(f.clone())];
                items.extend(args.iter().map(Term::to_sexp));
                Sexp::List(items)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

/// Total map from variable names to elements.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Load(usize),
    Apply(usize),
}

/// A term resolved against a signature and a slot layout, evaluated with a
/// small stack machine.
#[derive(Debug, Clone)]
pub struct CompiledTerm {
    code: Vec<Instr>,
}

impl CompiledTerm {
    /// `slot_of` maps a variable name to its index in the value slice passed
    /// to [`CompiledTerm::eval`].
    pub fn compile(
        term: &Term,
        sig: &Signature,
        slot_of: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<CompiledTerm> {
        term.conforms(sig)?;
        let mut code = Vec::new();
        emit(term, sig, slot_of, &mut code)?;
        Ok(CompiledTerm { code })
    }

    pub fn eval(&self, alg: &crate::algebra::FiniteAlgebra, slots: &[usize]) -> usize {
        let mut stack: Vec<usize> = Vec::with_capacity(8);
        for ins in &self.code {
            match *ins {
                Instr::Load(s) => stack.push(slots[s]),
                Instr::Apply(op) => {
                    let arity = alg.arity(op);
                    let base = stack.len() - arity;
                    let v = alg.apply(op, &stack[base..]);
                    stack.truncate(base);
                    stack.push(v);
                }
            }
        }
        stack[0]
    }
}

fn emit(
    term: &Term,
    sig: &Signature,
    slot_of: &dyn Fn(&str) -> Option<usize>,
    code: &mut Vec<Instr>,
) -> Result<()> {
    match term {
        Term::Var(v) => {
            let s = slot_of(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            code.push(Instr::Load(s));
        }
        Term::App(f, args) => {
            for a in args {
                emit(a, sig, slot_of, code)?;
            }
            let (idx, _) = sig.lookup(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
            code.push(Instr::Apply(idx));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t = Term::parse("(* (* x y1) 0)").unwrap();
        assert_eq!(
            t,
            Term::bin(
                "*",
                Term::bin("*", Term::var("x"), Term::var("y1")),
                Term::constant("0")
            )
        );
        assert_eq!(t.to_string(), "(* (* x y1) 0)");
        assert_eq!(t.vars(), vec!["x".to_string(), "y1".to_string()]);
        assert_eq!(t.depth(), 2);
        assert_eq!(Term::parse("(e)").unwrap(), Term::constant("e"));
        assert_eq!(Term::constant("e").to_string(), "(e)");
    }

    #[test]
    fn substitution_is_simultaneous() {
        let t = Term::parse("(* x y)").unwrap();
        let mut b = HashMap::new();
        b.insert("x".to_string(), Term::var("y"));
        b.insert("y".to_string(), Term::var("x"));
        assert_eq!(t.substitute(&b), Term::parse("(* y x)").unwrap());
    }
}
