use serde::{Deserialize, Serialize};

use super::maps::{x_vector_terms, SubstitutionMap};
use super::scheme::WitnessScheme;
use super::word::Word;
use crate::algebra::{find_identity_counterexample, Assignment, FiniteAlgebra, Term};
use crate::error::Result;
use crate::limits::Limits;

/// Identity groups, in the order they are reported.
pub const GROUPS: [&str; 8] = [
    "top_level_rho",
    "top_level_rho_star",
    "base_x",
    "base_chain_rho",
    "even_rho",
    "even_rho_star",
    "odd_sigma",
    "odd_sigma_star",
];

/// One identity `lhs ≈ rhs` of the schema with the substitution already
/// applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeIdentity {
    pub group: &'static str,
    pub label: String,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Clone, Copy)]
enum Side {
    L,
    R,
}

/// Every identity the scheme must satisfy.
pub fn scheme_identities(scheme: &WitnessScheme) -> Result<Vec<SchemeIdentity>> {
    let big_n = scheme.big_n();
    let k = scheme.k();
    let xs = x_vector_terms(scheme.n());
    let mut images = Vec::new();
    for map in SubstitutionMap::ALL {
        images.push((map, map.apply_symbolic(scheme, &xs)?));
    }
    let image = |m: SubstitutionMap| &images.iter().find(|(x, _)| *x == m).unwrap().1;
    let names = crate::malcev::x_vector_names(scheme.n());
    let plug = |side: Side, w: &Word, m: SubstitutionMap| -> Term {
        let t = match side {
            Side::L => scheme.l(w),
            Side::R => scheme.r(w),
        };
        let binding = names.iter().cloned().zip(image(m).iter().cloned()).collect();
        t.substitute(&binding)
    };
    let label = |a: (Side, &Word), b: (Side, &Word), m: SubstitutionMap| {
        let s = |side: Side| match side {
            Side::L => "L",
            Side::R => "R",
        };
        format!("{}_{}({m}) ≈ {}_{}({m})", s(a.0), a.1, s(b.0), b.1)
    };
    let mut out = Vec::new();
    let mut push = |group: &'static str, a: (Side, &Word), b: (Side, &Word), m: SubstitutionMap| {
        out.push(SchemeIdentity {
            group,
            label: label(a, b, m),
            lhs: plug(a.0, a.1, m),
            rhs: plug(b.0, b.1, m),
        });
    };
    use SubstitutionMap::*;
    use Side::*;

    let words = scheme.words();
    for w in words.iter().filter(|w| w.len() == big_n) {
        push("top_level_rho", (L, w), (R, w), Rho);
    }
    for w in words.iter().filter(|w| w.len() == big_n) {
        push("top_level_rho_star", (L, w), (R, w), RhoStar);
    }

    let eps = Word::empty();
    let letter = |j: usize| eps.child(j);
    push("base_chain_rho", (L, &eps), (L, &letter(1)), Rho);
    for j in 1..big_n {
        push("base_chain_rho", (R, &letter(j)), (L, &letter(j + 1)), Rho);
    }
    push("base_chain_rho", (R, &letter(big_n)), (R, &eps), Rho);

    for w in words.iter().filter(|w| !w.is_empty() && w.len() < big_n) {
        let (g1, g2, m1, m2) = if w.len() % 2 == 0 {
            ("even_rho", "even_rho_star", Rho, RhoStar)
        } else {
            ("odd_sigma", "odd_sigma_star", Sigma, SigmaStar)
        };
        push(g1, (L, w), (L, &w.child(1)), m1);
        for j in 1..k {
            push(g1, (R, &w.child(j)), (L, &w.child(j + 1)), m1);
        }
        push(g1, (R, &w.child(k)), (R, w), m1);

        push(g2, (L, w), (L, &w.child(k + 1)), m2);
        for j in k + 1..big_n {
            push(g2, (R, &w.child(j)), (L, &w.child(j + 1)), m2);
        }
        push(g2, (R, &w.child(big_n)), (R, w), m2);
    }

    let mut all = vec![
        SchemeIdentity {
            group: "base_x",
            label: "x ≈ L_ε".into(),
            lhs: Term::var("x"),
            rhs: scheme.l(&eps).clone(),
        },
        SchemeIdentity {
            group: "base_x",
            label: "y ≈ R_ε".into(),
            lhs: Term::var("y"),
            rhs: scheme.r(&eps).clone(),
        },
    ];
    all.extend(out);
    all.sort_by_key(|i| GROUPS.iter().position(|g| *g == i.group));
    Ok(all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
    pub counterexample: Option<Assignment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupResult {
    pub name: String,
    pub passed: bool,
    pub identities: Vec<IdentityResult>,
    /// First failing identity and assignment, if any.
    pub first_failure: Option<IdentityResult>,
}

/// Outcome of checking every identity on one algebra. Passing is evidence
/// only, so it is reported as `consistent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeReport {
    pub algebra: String,
    pub consistent: bool,
    pub groups: Vec<GroupResult>,
}

pub fn verify_scheme_identities(scheme: &WitnessScheme, alg: &FiniteAlgebra, limits: &Limits) -> Result<SchemeReport> {
    scheme.conforms(alg.signature())?;
    let identities = scheme_identities(scheme)?;
    let mut groups: Vec<GroupResult> = GROUPS
        .iter()
        .map(|g| GroupResult { name: g.to_string(), passed: true, identities: Vec::new(), first_failure: None })
        .collect();
    for id in identities {
        let cex = find_identity_counterexample(alg, &id.lhs, &id.rhs, limits)?;
        let result = IdentityResult {
            label: id.label,
            lhs: id.lhs.to_string(),
            rhs: id.rhs.to_string(),
            passed: cex.is_none(),
            counterexample: cex,
        };
        let g = groups.iter_mut().find(|g| g.name == id.group).expect("known group");
        if !result.passed && g.passed {
            g.passed = false;
            g.first_failure = Some(result.clone());
        }
        g.identities.push(result);
    }
    Ok(SchemeReport {
        algebra: alg.name().to_string(),
        consistent: groups.iter().all(|g| g.passed),
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn band0_identity_list() {
        let ids = scheme_identities(&corpus::band0_scheme()).unwrap();
        let count = |g: &str| ids.iter().filter(|i| i.group == g).count();
        assert_eq!(count("top_level_rho"), 4);
        assert_eq!(count("top_level_rho_star"), 4);
        assert_eq!(count("base_x"), 2);
        assert_eq!(count("base_chain_rho"), 3);
        assert_eq!(count("even_rho"), 0);
        assert_eq!(count("odd_sigma"), 4);
        assert_eq!(count("odd_sigma_star"), 4);
        let first = ids.iter().find(|i| i.group == "odd_sigma").unwrap();
        assert_eq!(first.label, "L_1(σ) ≈ L_11(σ)");
        // L1 = x·y1 and L11 = z·y1 agree after σ sends z to x
        assert_eq!(first.lhs, first.rhs);
    }

    #[test]
    fn corrupted_scheme_fails() {
        let alg = corpus::band0_algebra_a();
        let bad = corpus::band0_scheme().with_swapped(&Word::new(vec![1], 2).unwrap());
        let report = verify_scheme_identities(&bad, &alg, &Limits::default()).unwrap();
        assert!(!report.consistent);
        let failing: Vec<&GroupResult> = report.groups.iter().filter(|g| !g.passed).collect();
        assert!(!failing.is_empty());
        assert!(failing[0].first_failure.as_ref().unwrap().counterexample.is_some());
    }

    #[test]
    fn band0_scheme_holds() {
        let alg = corpus::band0_algebra_a();
        let report = verify_scheme_identities(&corpus::band0_scheme(), &alg, &Limits::default()).unwrap();
        assert!(report.consistent, "{report:#?}");
    }
}
