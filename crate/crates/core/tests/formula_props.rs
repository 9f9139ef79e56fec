mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use serde::{de::DeserializeOwned, Serialize};

use bfc_lab::algebra::Assignment;
use bfc_lab::corpus::{self, band0_scheme, semilattice_scheme};
use bfc_lab::factor::check_bfc;
use bfc_lab::formula::{
    build_phi1, build_phi2, build_pi, check_factor_preservation, check_kernel_characterization,
    check_star_conditions, eval_formula, gamma_vs_pi, truth_table,
};
use bfc_lab::{FiniteAlgebra, Formula, Limits, Term};

fn small_algebras() -> Vec<FiniteAlgebra> {
    let mut out = common::all_band0(3);
    out.extend(corpus::enumerate_semilattices(3).unwrap());
    out
}

const VARS: [&str; 4] = ["x", "y", "u", "v"];

fn term() -> impl Strategy<Value = Term> {
    proptest::sample::select(&VARS[..])
        .prop_map(Term::var)
        .prop_recursive(2, 6, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Term::bin("*", a, b)))
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![1 => Just(Formula::True), 6 => (term(), term()).prop_map(|(l, r)| Formula::eq(l, r))];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let var = proptest::sample::select(&VARS[..3]);
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..3).prop_map(Formula::And),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (var.clone(), inner.clone()).prop_map(|(v, f)| Formula::forall(v, f)),
            (var, inner).prop_map(|(v, f)| Formula::exists(v, f)),
        ]
    })
}

fn term_value(alg: &FiniteAlgebra, t: &Term, env: &HashMap<String, usize>) -> usize {
    match t {
        Term::Var(v) => env[v],
        Term::App(s, args) => {
            let (op, _) = alg.signature().lookup(s).unwrap();
            let vals: Vec<usize> = args.iter().map(|a| term_value(alg, a, env)).collect();
            common::apply(alg, op, &vals)
        }
    }
}

fn naive(alg: &FiniteAlgebra, f: &Formula, env: &HashMap<String, usize>) -> bool {
    match f {
        Formula::True => true,
        Formula::Eq(l, r) => term_value(alg, l, env) == term_value(alg, r, env),
        Formula::And(fs) => fs.iter().all(|g| naive(alg, g, env)),
        Formula::Implies(a, b) => !naive(alg, a, env) || naive(alg, b, env),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let mut inner = env.clone();
            let mut results = (0..alg.size()).map(|e| {
                inner.insert(v.clone(), e);
                naive(alg, g, &inner)
            });
            if matches!(f, Formula::Forall(..)) {
                results.all(|b| b)
            } else {
                results.any(|b| b)
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn evaluation_matches_naive_semantics(
        alg in proptest::sample::select(small_algebras()),
        f in formula(),
        raw in proptest::array::uniform4(0usize..3),
    ) {
        let n = alg.size();
        let env: HashMap<String, usize> = VARS.iter().map(|v| v.to_string()).zip(raw.map(|e| e % n)).collect();
        let assignment: Assignment = env.iter().map(|(k, v)| (k.clone(), *v)).collect();
        let want = naive(&alg, &f, &env);
        prop_assert_eq!(eval_formula(&alg, &f, &assignment).unwrap(), want);
        let renamed = f.alpha_normalize();
        prop_assert_eq!(eval_formula(&alg, &renamed, &assignment).unwrap(), want);
        prop_assert_eq!(renamed.alpha_normalize(), renamed.clone());
        prop_assert_eq!(renamed.free_vars(), f.free_vars());
    }

    #[test]
    fn printed_formulas_parse_back(f in formula()) {
        prop_assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
    }
}

/// `Φ1` holds everywhere and `Φ2` satisfies the three (*) conditions on
/// every band0 table up to size 4; the one-quantifier `Φ2` agrees.
#[test]
fn band0_parts_on_all_small_members() {
    let limits = Limits::default();
    let (phi1, phi2) = (build_phi1(&band0_scheme()), build_phi2(&band0_scheme()));
    assert_eq!(phi1, corpus::band0_phi1());
    assert_eq!(phi2, corpus::band0_phi2());
    let pi = build_pi(&band0_scheme());
    for a in common::all_band0(4) {
        assert!(truth_table(&a, &phi1, &limits).unwrap().iter().all(|&b| b), "{}", a.name());
        let table = truth_table(&a, &phi2, &limits).unwrap();
        assert_eq!(table, truth_table(&a, &corpus::band0_phi2_simplified(), &limits).unwrap(), "{}", a.name());
        assert_eq!(table, truth_table(&a, &pi, &limits).unwrap());
        assert!(check_star_conditions(&a, &phi2, &limits).unwrap().passed(), "{}", a.name());
    }
}

/// Products of two small band0 tables: `π` detects equality in the second
/// coordinate and is preserved factorwise.
#[test]
fn band0_pi_kernels_on_products() {
    let limits = Limits::default();
    let pi = corpus::band0_phi2_simplified();
    let members = common::all_band0(3);
    let mut checked = 0;
    for a in &members {
        for b in &members {
            if a.size() * b.size() > 6 {
                continue;
            }
            assert!(check_kernel_characterization(a, b, &pi, &limits).unwrap().passed, "{} x {}", a.name(), b.name());
            assert!(check_factor_preservation(a, b, &pi, &limits).unwrap().passed, "{} x {}", a.name(), b.name());
            checked += 1;
        }
    }
    assert!(checked > 10);
}

/// The built semilattice `π` has the truth table of `π_s`.
#[test]
fn semilattice_built_pi_equals_pi_s() {
    let limits = Limits::default();
    let built = build_pi(&semilattice_scheme());
    for a in corpus::enumerate_semilattices(5).unwrap() {
        assert_eq!(
            truth_table(&a, &built, &limits).unwrap(),
            truth_table(&a, &corpus::semilattice_pi_s(), &limits).unwrap(),
            "{}",
            a.name()
        );
    }
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(value: &T) {
    let text = serde_json::to_string(value).unwrap();
    assert_eq!(&serde_json::from_str::<T>(&text).unwrap(), value);
}

#[test]
fn reports_round_trip_through_json() {
    let limits = Limits::default();
    let a = corpus::band0_algebra_a();
    let pi = corpus::band0_phi2_simplified();
    round_trip(&check_bfc(&a, &limits).unwrap());
    round_trip(&check_star_conditions(&a, &pi, &limits).unwrap());
    round_trip(&check_star_conditions(&corpus::chain(3), &Formula::parse("(= x y)").unwrap(), &limits).unwrap());
    round_trip(&gamma_vs_pi(&a, &pi, &limits).unwrap());
    let c2 = corpus::chain(2);
    round_trip(&check_factor_preservation(&c2, &c2, &corpus::semilattice_pi_s(), &limits).unwrap());
    round_trip(&check_kernel_characterization(&c2, &corpus::chain(3), &corpus::semilattice_pi_s(), &limits).unwrap());
    let set = FiniteAlgebra::new("set3", bfc_lab::Signature::new(vec![]).unwrap(), 3, vec![], None).unwrap();
    round_trip(&check_bfc(&set, &limits).unwrap());
}
