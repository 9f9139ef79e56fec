use super::Formula;
use crate::malcev::{all_words, WitnessScheme, Word};

fn equation(scheme: &WitnessScheme, w: &Word) -> Formula {
    Formula::eq(scheme.l(w).clone(), scheme.r(w).clone())
}

/// `Ψ_m`: for each `|α| = m`, the equations at all proper extensions of α
/// imply the equation at α. Extensions are listed by length, then
/// lexicographically.
pub fn build_psi(scheme: &WitnessScheme, m: usize) -> Formula {
    let big_n = scheme.big_n();
    if m > big_n {
        return Formula::True;
    }
    let words = all_words(big_n);
    let suffixes: Vec<&Word> = words.iter().filter(|w| !w.is_empty()).collect();
    let mut conjuncts = Vec::new();
    for alpha in words.iter().filter(|w| w.len() == m) {
        let antecedent: Vec<Formula> = suffixes
            .iter()
            .filter(|g| alpha.len() + g.len() <= big_n)
            .map(|g| equation(scheme, &alpha.concat(g)))
            .collect();
        let consequent = equation(scheme, alpha);
        conjuncts.push(if antecedent.is_empty() {
            consequent
        } else {
            Formula::implies(Formula::and(antecedent), consequent)
        });
    }
    Formula::and(conjuncts)
}

/// `∃y1 ∀x1 .. ∃yn ∀xn ⋀_{m=1..k} Ψ_{2m}`.
pub fn build_phi1(scheme: &WitnessScheme) -> Formula {
    let matrix = Formula::and((1..=scheme.k()).map(|m| build_psi(scheme, 2 * m)).collect());
    prefix(scheme.n(), matrix, "y", "x")
}

/// `∃x1 ∀y1 .. ∃xn ∀yn ⋀_{m=1..k} Ψ_{2m-1}`.
pub fn build_phi2(scheme: &WitnessScheme) -> Formula {
    let matrix = Formula::and((1..=scheme.k()).map(|m| build_psi(scheme, 2 * m - 1)).collect());
    prefix(scheme.n(), matrix, "x", "y")
}

/// `π = Φ1 ∧ Φ2`.
pub fn build_pi(scheme: &WitnessScheme) -> Formula {
    Formula::And(vec![build_phi1(scheme), build_phi2(scheme)])
}

fn prefix(n: usize, matrix: Formula, exists: &str, forall: &str) -> Formula {
    (1..=n).rev().fold(matrix, |body, i| {
        Formula::exists(format!("{exists}{i}"), Formula::forall(format!("{forall}{i}"), body))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn psi_edge_cases() {
        let s = corpus::band0_scheme();
        assert_eq!(build_psi(&s, 3), Formula::True);
        let top = build_psi(&s, 2);
        let Formula::And(parts) = &top else { panic!("{top}") };
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().all(|p| matches!(p, Formula::Eq(..))));
        let psi1 = build_psi(&s, 1);
        let Formula::And(parts) = &psi1 else { panic!("{psi1}") };
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| matches!(p, Formula::Implies(..))));
    }

    #[test]
    fn band0_phi1_matches_display() {
        let expected = "(exists y1 (forall x1 (exists y2 (forall x2 (and \
            (= (* z y1) (* w y1)) (= (* y y1) (* y y1)) \
            (= (* y2 z) (* y2 w)) (= (* y2 y) (* y2 y)))))))";
        assert_eq!(build_phi1(&corpus::band0_scheme()).to_string(), expected);
        assert_eq!(build_phi1(&corpus::band0_scheme()), corpus::band0_phi1());
    }

    #[test]
    fn band0_phi2_matches_display() {
        let expected = "(exists x1 (forall y1 (exists x2 (forall y2 (and \
            (implies (and (= (* z y1) (* w y1)) (= (* y y1) (* y y1))) (= (* x y1) (* y y1))) \
            (implies (and (= (* y2 z) (* y2 w)) (= (* y2 y) (* y2 y))) (= (* y2 x) (* y2 y))))))))";
        assert_eq!(build_phi2(&corpus::band0_scheme()).to_string(), expected);
        assert_eq!(build_phi2(&corpus::band0_scheme()), corpus::band0_phi2());
    }

    #[test]
    fn pi_free_variables() {
        let pi = build_pi(&corpus::band0_scheme());
        let mut free = pi.free_vars();
        free.sort();
        assert_eq!(free, ["w", "x", "y", "z"]);
        assert_eq!(pi.quantifier_depth(), 4);
    }
}
