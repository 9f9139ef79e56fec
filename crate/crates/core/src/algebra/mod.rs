//! Finite algebras stored as flattened operation tables over `{0..n-1}`.

mod identity;
mod io;
mod iso;
mod term;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

pub use identity::{check_identity, find_identity_counterexample};
#[cfg(test)]
pub(crate) use identity::increment;
pub use io::{AlgebraFile, OperationFile};
pub use iso::{find_isomorphism, is_homomorphism};
pub use term::{is_identifier, Assignment, CompiledTerm, Term};

use crate::congruence::{Congruence, Partition};
use crate::error::{Error, Result};
use crate::limits::{pow_saturating, Limits};

/// Element of a finite universe, always an index in `0..size`.
pub type Element = usize;

/// An operation given as a closure over its arguments.
pub type OpFn = dyn Fn(&[Element]) -> Element;

/// Ordered list of operation symbols with their arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(ops: Vec<(String, usize)>) -> Result<Signature> {
        for (i, (s, _)) in ops.iter().enumerate() {
            if ops[..i].iter().any(|(t, _)| t == s) {
                return Err(Error::MalformedAlgebra(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Signature { ops })
    }

    /// Index and arity of a symbol.
    pub fn lookup(&self, symbol: &str) -> Option<(usize, usize)> {
        self.ops
            .iter()
            .position(|(s, _)| s == symbol)
            .map(|i| (i, self.ops[i].1))
    }

    pub fn ops(&self) -> &[(String, usize)] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// A finite algebra. Immutable after construction.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    names: Option<Vec<String>>,
    signature: Signature,
    tables: Vec<Vec<Element>>,
    fingerprint: u64,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.signature == other.signature && self.tables == other.tables
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        tables: Vec<Vec<Element>>,
        names: Option<Vec<String>>,
    ) -> Result<FiniteAlgebra> {
        Self::with_limits(name, signature, size, tables, names, &Limits::default())
    }

    pub fn with_limits(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        tables: Vec<Vec<Element>>,
        names: Option<Vec<String>>,
        limits: &Limits,
    ) -> Result<FiniteAlgebra> {
        if size == 0 {
            return Err(Error::MalformedAlgebra("universe must be nonempty".into()));
        }
        if tables.len() != signature.len() {
            return Err(Error::MalformedAlgebra(format!(
                "{} tables for {} operations",
                tables.len(),
                signature.len()
            )));
        }
        for ((sym, arity), table) in signature.ops().iter().zip(&tables) {
            let cells = pow_saturating(size, *arity);
            limits.check_cells(&format!("table of `{sym}`"), cells)?;
            if table.len() as u128 != cells {
                return Err(Error::MalformedAlgebra(format!(
                    "table of `{sym}` has {} entries, expected {cells}",
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange { element: bad, size });
            }
        }
        if let Some(n) = &names {
            if n.len() != size {
                return Err(Error::MalformedAlgebra(format!(
                    "{} names for {size} elements",
                    n.len()
                )));
            }
            for (i, a) in n.iter().enumerate() {
                if n[..i].contains(a) {
                    return Err(Error::MalformedAlgebra(format!("duplicate element name `{a}`")));
                }
            }
        }
        let mut h = DefaultHasher::new();
        size.hash(&mut h);
        signature.hash(&mut h);
        tables.hash(&mut h);
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            names,
            signature,
            tables,
            fingerprint: h.finish(),
        })
    }

    /// Builds an algebra by tabulating closures, one per signature entry.
    pub fn from_fns(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        ops: &[&OpFn],
    ) -> Result<FiniteAlgebra> {
        let tables = signature
            .ops()
            .iter()
            .zip(ops)
            .map(|((_, arity), f)| {
                let cells = pow_saturating(size, *arity) as usize;
                let mut args = vec![0; *arity];
                (0..cells)
                    .map(|idx| {
                        decode_tuple(idx, size, &mut args);
                        f(&args)
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra::new(name, signature, size, tables, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn table(&self, op: usize) -> &[Element] {
        &self.tables[op]
    }

    pub fn arity(&self, op: usize) -> usize {
        self.signature.ops[op].1
    }

    /// Content hash used to tell congruences of different algebras apart.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn renamed(mut self, name: impl Into<String>) -> FiniteAlgebra {
        self.name = name.into();
        self
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Result<FiniteAlgebra> {
        if let Some(n) = &names {
            if n.len() != self.size {
                return Err(Error::MalformedAlgebra("wrong number of names".into()));
            }
        }
        self.names = names;
        Ok(self)
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[Element]) -> Element {
        let mut idx = 0;
        for &a in args {
            idx = idx * self.size + a;
        }
        self.tables[op][idx]
    }

    /// Applies the operation named `symbol`; panics on unknown symbols.
    pub fn op(&self, symbol: &str, args: &[Element]) -> Element {
        let (i, _) = self
            .signature
            .lookup(symbol)
            .unwrap_or_else(|| panic!("unknown symbol {symbol}"));
        self.apply(i, args)
    }

    pub fn element_name(&self, e: Element) -> String {
        match &self.names {
            Some(n) => n[e].clone(),
            None => e.to_string(),
        }
    }

    /// Resolves an element given by index or by display name.
    pub fn parse_element(&self, token: &str) -> Result<Element> {
        if let Some(n) = &self.names {
            if let Some(i) = n.iter().position(|x| x == token) {
                return Ok(i);
            }
        }
        let e: usize = token
            .parse()
            .map_err(|_| Error::Parse(format!("unknown element `{token}`")))?;
        self.check_element(e)?;
        Ok(e)
    }

    pub fn check_element(&self, e: Element) -> Result<()> {
        if e < self.size {
            Ok(())
        } else {
            Err(Error::OutOfRange { element: e, size: self.size })
        }
    }

    pub fn ensure_same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.signature == other.signature {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "`{}` and `{}` have different signatures",
                self.name, other.name
            )))
        }
    }

    /// Structural evaluation of `t` under `env`.
    pub fn eval_term(&self, t: &Term, env: &Assignment) -> Result<Element> {
        match t {
            Term::Var(v) => {
                let e = *env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                self.check_element(e)?;
                Ok(e)
            }
            Term::App(f, args) => {
                let (idx, arity) = self
                    .signature
                    .lookup(f)
                    .ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: f.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                let vals = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.apply(idx, &vals))
            }
        }
    }

    /// Direct product with lexicographic element encoding: coordinates
    /// `(e0, .., e_{m-1})` get index `sum e_i * prod_{j>i} n_j`.
    pub fn direct_product(factors: &[&FiniteAlgebra]) -> Result<FiniteAlgebra> {
        Self::direct_product_with(factors, &Limits::default())
    }

    pub fn direct_product_with(factors: &[&FiniteAlgebra], limits: &Limits) -> Result<FiniteAlgebra> {
        let first = *factors
            .first()
            .ok_or_else(|| Error::MalformedAlgebra("empty product".into()))?;
        for f in &factors[1..] {
            first.ensure_same_signature(f)?;
        }
        if factors.len() == 1 {
            return Ok(first.clone());
        }
        let sizes: Vec<usize> = factors.iter().map(|f| f.size).collect();
        let size_u = sizes.iter().fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
        limits.check_cells("product universe", size_u)?;
        let size = size_u as usize;
        let mut tables = Vec::with_capacity(first.signature.len());
        for (op, (sym, arity)) in first.signature.ops().iter().enumerate() {
            let cells = pow_saturating(size, *arity);
            limits.check_cells(&format!("product table of `{sym}`"), cells)?;
            let mut table = Vec::with_capacity(cells as usize);
            let mut args = vec![0; *arity];
            let mut coord_args = vec![0; *arity];
            for idx in 0..cells as usize {
                decode_tuple(idx, size, &mut args);
                let mut result = 0;
                for (i, f) in factors.iter().enumerate() {
                    for (k, &a) in args.iter().enumerate() {
                        coord_args[k] = coordinate(a, &sizes, i);
                    }
                    result = result * sizes[i] + f.apply(op, &coord_args);
                }
                table.push(result);
            }
            tables.push(table);
        }
        let names = if factors.iter().all(|f| f.names.is_some()) {
            Some(
                (0..size)
                    .map(|e| {
                        let parts: Vec<String> = factors
                            .iter()
                            .enumerate()
                            .map(|(i, f)| f.element_name(coordinate(e, &sizes, i)))
                            .collect();
                        format!("<{}>", parts.join(","))
                    })
                    .collect(),
            )
        } else {
            None
        };
        let name = factors.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(" x ");
        FiniteAlgebra::with_limits(name, first.signature.clone(), size, tables, names, limits)
    }

    /// Quotient by a congruence. Blocks are numbered in order of their least
    /// member; the second component maps each element to its block.
    pub fn quotient(&self, theta: &Congruence) -> Result<(FiniteAlgebra, Vec<Element>)> {
        theta.ensure_of(self)?;
        let labels = theta.partition().labels();
        let reps: Vec<Element> = (0..self.size).filter(|&e| labels[e] == e).collect();
        let mut block_of = vec![0; self.size];
        for e in 0..self.size {
            block_of[e] = reps.iter().position(|&r| r == labels[e]).unwrap();
        }
        let m = reps.len();
        let mut tables = Vec::with_capacity(self.signature.len());
        for (op, (_, arity)) in self.signature.ops().iter().enumerate() {
            let cells = pow_saturating(m, *arity) as usize;
            let mut args = vec![0; *arity];
            let mut rep_args = vec![0; *arity];
            let mut table = Vec::with_capacity(cells);
            for idx in 0..cells {
                decode_tuple(idx, m, &mut args);
                for (k, &a) in args.iter().enumerate() {
                    rep_args[k] = reps[a];
                }
                table.push(block_of[self.apply(op, &rep_args)]);
            }
            tables.push(table);
        }
        let names = self
            .names
            .as_ref()
            .map(|n| reps.iter().map(|&r| format!("[{}]", n[r])).collect());
        let q = FiniteAlgebra::new(
            format!("{}/~", self.name),
            self.signature.clone(),
            m,
            tables,
            names,
        )?;
        Ok((q, block_of))
    }

    /// Kernel of the projection onto coordinate `i` of a product with the
    /// given factor sizes.
    pub fn projection_kernel(&self, factor_sizes: &[usize], i: usize) -> Result<Congruence> {
        let total: usize = factor_sizes.iter().product();
        if total != self.size || i >= factor_sizes.len() {
            return Err(Error::LengthMismatch { expected: self.size, found: total });
        }
        let coords: Vec<usize> = (0..self.size).map(|e| coordinate(e, factor_sizes, i)).collect();
        let p = Partition::from_key(&coords);
        Congruence::new(self, p)
    }
}

/// Coordinate `i` of a product element under the lexicographic encoding.
pub fn coordinate(e: Element, sizes: &[usize], i: usize) -> Element {
    let stride: usize = sizes[i + 1..].iter().product();
    (e / stride) % sizes[i]
}

/// Product index of a coordinate vector.
pub fn encode_coordinates(coords: &[Element], sizes: &[usize]) -> Element {
    coords.iter().zip(sizes).fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Row-major decoding of a flat tuple index, first coordinate most significant.
pub(crate) fn decode_tuple(mut idx: usize, size: usize, out: &mut [Element]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % size;
        idx /= size;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn sig_meet() -> Signature {
        Signature::new(vec![("*".into(), 2)]).unwrap()
    }

    #[test]
    fn eval_on_band0_table() {
        let a = corpus::band0_algebra_a();
        let t = Term::parse("(* x y)").unwrap();
        let env: Assignment = [("x".to_string(), 1), ("y".to_string(), 3)].into();
        // row a, column c
        assert_eq!(a.eval_term(&t, &env).unwrap(), 1);
    }

    #[test]
    fn eval_variable_and_chain() {
        let chain = corpus::chain(3);
        let env: Assignment = [("x".to_string(), 2), ("y".to_string(), 1), ("z".to_string(), 0)].into();
        assert_eq!(chain.eval_term(&Term::var("x"), &env).unwrap(), 2);
        let t = Term::parse("(* (* x y) z)").unwrap();
        assert_eq!(chain.eval_term(&t, &env).unwrap(), 0);
    }

    #[test]
    fn eval_errors() {
        let chain = corpus::chain(2);
        let env = Assignment::new();
        assert_eq!(
            chain.eval_term(&Term::var("q"), &env),
            Err(Error::UnboundVariable("q".into()))
        );
        let env: Assignment = [("x".to_string(), 0)].into();
        assert!(matches!(
            chain.eval_term(&Term::parse("(+ x x)").unwrap(), &env),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(matches!(
            chain.eval_term(&Term::parse("(* x)").unwrap(), &env),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn construction_validates_tables() {
        assert!(FiniteAlgebra::new("bad", sig_meet(), 2, vec![vec![0, 0, 0]], None).is_err());
        assert!(matches!(
            FiniteAlgebra::new("bad", sig_meet(), 2, vec![vec![0, 0, 0, 2]], None),
            Err(Error::OutOfRange { element: 2, size: 2 })
        ));
        assert!(FiniteAlgebra::new("bad", sig_meet(), 0, vec![vec![]], None).is_err());
        let tiny = Limits { max_cells: 3, ..Limits::default() };
        assert!(matches!(
            FiniteAlgebra::with_limits("big", sig_meet(), 2, vec![vec![0, 0, 0, 1]], None, &tiny),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn product_of_two_chains_is_coordinatewise() {
        let c2 = corpus::chain(2);
        let p = FiniteAlgebra::direct_product(&[&c2, &c2]).unwrap();
        assert_eq!(p.size(), 4);
        for x in 0..4 {
            for y in 0..4 {
                let expect = encode_coordinates(
                    &[
                        coordinate(x, &[2, 2], 0).min(coordinate(y, &[2, 2], 0)),
                        coordinate(x, &[2, 2], 1).min(coordinate(y, &[2, 2], 1)),
                    ],
                    &[2, 2],
                );
                assert_eq!(p.op("*", &[x, y]), expect);
            }
        }
    }

    #[test]
    fn unary_product_is_identity() {
        let a = corpus::band0_algebra_a();
        let p = FiniteAlgebra::direct_product(&[&a]).unwrap();
        assert_eq!(p, a);
    }

    #[test]
    fn band0_square_product() {
        let a = corpus::band0_algebra_a();
        let p = FiniteAlgebra::direct_product(&[&a, &a]).unwrap();
        let ac = encode_coordinates(&[1, 3], &[4, 4]);
        let ca = encode_coordinates(&[3, 1], &[4, 4]);
        // (a,c)*(c,a) = (a*c, c*a) = (a, c)
        assert_eq!(p.op("*", &[ac, ca]), ac);
        assert_eq!(p.element_name(ac), "<a,c>");
    }

    #[test]
    fn product_signature_mismatch() {
        let a = corpus::band0_algebra_a();
        let c = corpus::chain(2);
        assert!(matches!(
            FiniteAlgebra::direct_product(&[&a, &c]),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn quotients_by_bounds() {
        let a = corpus::band0_algebra_a();
        let (qd, map) = a.quotient(&Congruence::delta(&a)).unwrap();
        assert_eq!(qd, a);
        assert_eq!(map, vec![0, 1, 2, 3]);
        let (qn, map) = a.quotient(&Congruence::nabla(&a)).unwrap();
        assert_eq!(qn.size(), 1);
        assert_eq!(map, vec![0; 4]);
    }

    #[test]
    fn quotient_band0_by_principal() {
        let a = corpus::band0_algebra_a();
        let theta = crate::congruence::cg(&a, &[(1, 2)]).unwrap();
        // closure oracle: a~b forces b*c ~ a*c, i.e. c ~ a
        assert_eq!(theta.partition().labels(), &[0, 1, 1, 1]);
        let (q, map) = a.quotient(&theta).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(map, vec![0, 1, 1, 1]);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(q.op("*", &[map[x], map[y]]), map[a.op("*", &[x, y])]);
            }
        }
    }
}
