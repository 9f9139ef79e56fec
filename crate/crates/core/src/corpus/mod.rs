//! Bundled algebras, schemes and formulas, plus small-algebra generators.

mod counterexample;
mod random;
mod semilattice;

use std::collections::BTreeMap;

pub use counterexample::{pi_s_fc_star_check, reproduce_counterexample, CounterexampleClause, CounterexampleReport, FcStarReport};
pub use random::{random_member_band0, RANDOM_ATTEMPTS};
pub use semilattice::{enumerate_semilattices, semilattices_by_table_filter, semilattices_of_size, MAX_SEMILATTICE_SIZE};

use crate::algebra::{FiniteAlgebra, Signature, Term};
use crate::error::{Error, Result};
use crate::formula::{build_pi, Formula};
use crate::malcev::{WitnessScheme, Word};

pub fn meet_signature() -> Signature {
    Signature::new(vec![("*".into(), 2)]).expect("valid signature")
}

/// Constant `0` and binary `*`.
pub fn band0_signature() -> Signature {
    Signature::new(vec![("0".into(), 0), ("*".into(), 2)]).expect("valid signature")
}

/// The `n`-element chain as a meet-semilattice, `x * y = min(x, y)`.
pub fn chain(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fns(format!("chain{n}"), meet_signature(), n, &[&|a: &[usize]| a[0].min(a[1])])
        .expect("chain is well formed")
}

/// `{0, a, b, c}` with absorbing `0`, `a` row constant `a`, `c` row constant
/// `c` and `b` a two-sided identity on the nonzero part.
pub fn band0_algebra_a() -> FiniteAlgebra {
    #[rustfmt::skip]
    let mul = vec![
        0, 0, 0, 0,
        0, 1, 1, 1,
        0, 1, 2, 3,
        0, 3, 3, 3,
    ];
    let names = ["0", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
    FiniteAlgebra::new("band0.algebraA", band0_signature(), 4, vec![vec![0], mul], Some(names))
        .expect("band0.algebraA is well formed")
}

/// `Z_6` as a unital ring `{+, *, 0, 1}`.
pub fn z6_ring() -> FiniteAlgebra {
    let sig = Signature::new(vec![("+".into(), 2), ("*".into(), 2), ("0".into(), 0), ("1".into(), 0)])
        .expect("valid signature");
    FiniteAlgebra::from_fns(
        "z6.ring",
        sig,
        6,
        &[&|a: &[usize]| (a[0] + a[1]) % 6, &|a: &[usize]| (a[0] * a[1]) % 6, &|_: &[usize]| 0, &|_: &[usize]| 1],
    )
    .expect("Z6 is well formed")
}

/// Defining identities of idempotent semigroups with zero.
pub fn band0_identities() -> Vec<(&'static str, Term, Term)> {
    let p = |s: &str| Term::parse(s).expect("valid term");
    vec![
        ("associativity", p("(* (* x y) z)"), p("(* x (* y z))")),
        ("idempotence", p("(* x x)"), p("x")),
        ("right_zero", p("(* x 0)"), p("0")),
        ("left_zero", p("(* 0 x)"), p("0")),
    ]
}

fn mul(a: Term, b: Term) -> Term {
    Term::bin("*", a, b)
}

fn scheme_with_t(t: Term) -> WitnessScheme {
    let v = Term::var;
    let w = |k: &str| Word::from_key(k, 2).expect("valid word");
    let mut l = BTreeMap::new();
    let mut r = BTreeMap::new();
    let entries = [
        ("", v("x"), v("y")),
        ("1", mul(v("x"), v("y1")), mul(v("y"), v("y1"))),
        ("2", mul(v("y2"), v("x")), mul(v("y2"), v("y"))),
        ("11", mul(v("z"), v("y1")), mul(v("w"), v("y1"))),
        ("12", mul(v("y"), v("y1")), mul(v("y"), v("y1"))),
        ("21", mul(v("y2"), v("z")), mul(v("y2"), v("w"))),
        ("22", mul(v("y2"), v("y")), mul(v("y2"), v("y"))),
    ];
    for (k, lt, rt) in entries {
        l.insert(w(k), lt);
        r.insert(w(k), rt);
    }
    WitnessScheme::new(2, 1, vec![v("x"), v("y")], vec![t.clone(), t], l, r).expect("bundled scheme is valid")
}

/// `s1 = x, s2 = y, t1 = t2 = 0`, `n = N = 2`.
pub fn band0_scheme() -> WitnessScheme {
    scheme_with_t(Term::constant("0"))
}

/// As [`band0_scheme`] with `t1 = t2 = z * w`.
pub fn semilattice_scheme() -> WitnessScheme {
    scheme_with_t(mul(Term::var("z"), Term::var("w")))
}

fn parse_formula(text: &str) -> Formula {
    Formula::parse(text).expect("bundled formula parses")
}

pub fn band0_phi1() -> Formula {
    parse_formula(
        "(exists y1 (forall x1 (exists y2 (forall x2 (and \
         (= (* z y1) (* w y1)) (= (* y y1) (* y y1)) \
         (= (* y2 z) (* y2 w)) (= (* y2 y) (* y2 y)))))))",
    )
}

pub fn band0_phi2() -> Formula {
    parse_formula(
        "(exists x1 (forall y1 (exists x2 (forall y2 (and \
         (implies (and (= (* z y1) (* w y1)) (= (* y y1) (* y y1))) (= (* x y1) (* y y1))) \
         (implies (and (= (* y2 z) (* y2 w)) (= (* y2 y) (* y2 y))) (= (* y2 x) (* y2 y))))))))",
    )
}

/// One-quantifier form of `Φ2` for the band0 scheme.
pub fn band0_phi2_simplified() -> Formula {
    parse_formula(
        "(forall u (and (implies (= (* z u) (* w u)) (= (* x u) (* y u))) \
         (implies (= (* u z) (* u w)) (= (* u x) (* u y)))))",
    )
}

/// `π_s(x,y,z,w) = ∀u (z·u = w·u → x·u = y·u)`.
pub fn semilattice_pi_s() -> Formula {
    parse_formula("(forall u (implies (= (* z u) (* w u)) (= (* x u) (* y u))))")
}

#[derive(Debug, Clone)]
pub enum Payload {
    Algebra(FiniteAlgebra),
    Scheme(WitnessScheme),
    Formula(Formula),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Algebra(_) => "algebra",
            Payload::Scheme(_) => "scheme",
            Payload::Formula(_) => "formula",
        }
    }

    /// The payload in its file format: JSON for algebras and schemes, an
    /// s-expression for formulas.
    pub fn export(&self) -> String {
        match self {
            Payload::Algebra(a) => a.to_json(),
            Payload::Scheme(s) => s.to_json(),
            Payload::Formula(f) => f.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BuiltinEntry {
    pub name: &'static str,
    pub payload: Payload,
    pub provenance: &'static str,
}

pub const BUILTIN_NAMES: [&str; 12] = [
    "band0.algebraA",
    "band0.scheme",
    "band0.phi1",
    "band0.phi2",
    "band0.phi2_simplified",
    "band0.pi",
    "semilattice.scheme",
    "semilattice.pi_s",
    "semilattice.pi",
    "chain2",
    "chain3",
    "z6.ring",
];

pub fn load_builtin(name: &str) -> Result<BuiltinEntry> {
    let (name, payload, provenance) = match name {
        "band0.algebraA" => (
            "band0.algebraA",
            Payload::Algebra(band0_algebra_a()),
            "4-element idempotent semigroup with zero, elements 0 a b c",
        ),
        "band0.scheme" => ("band0.scheme", Payload::Scheme(band0_scheme()), "witness terms for idempotent semigroups with zero"),
        "band0.phi1" => ("band0.phi1", Payload::Formula(band0_phi1()), "Φ1 for the band0 scheme, written out"),
        "band0.phi2" => ("band0.phi2", Payload::Formula(band0_phi2()), "Φ2 for the band0 scheme, written out"),
        "band0.phi2_simplified" => (
            "band0.phi2_simplified",
            Payload::Formula(band0_phi2_simplified()),
            "one-quantifier equivalent of Φ2 over band0",
        ),
        "band0.pi" => ("band0.pi", Payload::Formula(build_pi(&band0_scheme())), "Φ1 ∧ Φ2 built from band0.scheme"),
        "semilattice.scheme" => (
            "semilattice.scheme",
            Payload::Scheme(semilattice_scheme()),
            "band0 terms with t1 = t2 = z·w",
        ),
        "semilattice.pi_s" => ("semilattice.pi_s", Payload::Formula(semilattice_pi_s()), "one-quantifier formula for semilattices"),
        "semilattice.pi" => (
            "semilattice.pi",
            Payload::Formula(build_pi(&semilattice_scheme())),
            "Φ1 ∧ Φ2 built from semilattice.scheme",
        ),
        "chain2" => ("chain2", Payload::Algebra(chain(2)), "2-element meet-semilattice"),
        "chain3" => ("chain3", Payload::Algebra(chain(3)), "3-element meet-semilattice"),
        "z6.ring" => ("z6.ring", Payload::Algebra(z6_ring()), "integers mod 6 as a unital ring"),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(BuiltinEntry { name, payload, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_identity;

    #[test]
    fn band0_table() {
        let a = band0_algebra_a();
        let e = |s: &str| a.parse_element(s).unwrap();
        assert_eq!(a.op("*", &[e("b"), e("c")]), e("c"));
        assert_eq!(a.op("*", &[e("c"), e("a")]), e("c"));
        assert_eq!(a.op("*", &[e("a"), e("c")]), e("a"));
        assert_eq!(a.op("0", &[]), e("0"));
    }

    #[test]
    fn band0_identity_audit() {
        let a = band0_algebra_a();
        for (name, l, r) in band0_identities() {
            assert!(check_identity(&a, &l, &r).unwrap(), "{name}");
        }
        let comm = (Term::parse("(* x y)").unwrap(), Term::parse("(* y x)").unwrap());
        assert!(!check_identity(&a, &comm.0, &comm.1).unwrap());
    }

    #[test]
    fn builtins_load() {
        for name in BUILTIN_NAMES {
            let entry = load_builtin(name).unwrap();
            assert_eq!(entry.name, name);
            assert!(!entry.payload.export().is_empty());
        }
        assert!(matches!(load_builtin("nope"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn scheme_terms() {
        let s = band0_scheme();
        let w = |k: &str| Word::from_key(k, 2).unwrap();
        assert_eq!(s.l(&w("1")).to_string(), "(* x y1)");
        assert_eq!(s.r(&w("21")).to_string(), "(* y2 w)");
        assert_eq!(s.t()[1].to_string(), "0");
        assert_eq!(semilattice_scheme().t()[0].to_string(), "(* z w)");
    }

    #[test]
    fn z6_is_a_ring() {
        let z = z6_ring();
        assert_eq!(z.op("*", &[2, 3]), 0);
        assert_eq!(z.op("+", &[4, 5]), 3);
    }
}
