use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scheme::{x_vector_names, WitnessScheme};
use crate::algebra::{CompiledTerm, Element, FiniteAlgebra, Term};
use crate::error::{Error, Result};

/// The four substitutions `σ, σ*, ρ, ρ*` acting on X-vectors
/// `(x, y, z, w, x1, y1, .., xn, yn)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubstitutionMap {
    Sigma,
    SigmaStar,
    Rho,
    RhoStar,
}

impl SubstitutionMap {
    pub const ALL: [SubstitutionMap; 4] =
        [SubstitutionMap::Sigma, SubstitutionMap::SigmaStar, SubstitutionMap::Rho, SubstitutionMap::RhoStar];

    pub fn symbol(self) -> &'static str {
        match self {
            SubstitutionMap::Sigma => "σ",
            SubstitutionMap::SigmaStar => "σ*",
            SubstitutionMap::Rho => "ρ",
            SubstitutionMap::RhoStar => "ρ*",
        }
    }

    pub fn parse(name: &str) -> Result<SubstitutionMap> {
        match name {
            "sigma" | "σ" => Ok(SubstitutionMap::Sigma),
            "sigma_star" | "sigma*" | "σ*" => Ok(SubstitutionMap::SigmaStar),
            "rho" | "ρ" => Ok(SubstitutionMap::Rho),
            "rho_star" | "rho*" | "ρ*" => Ok(SubstitutionMap::RhoStar),
            _ => Err(Error::Parse(format!("unknown map `{name}`"))),
        }
    }

    /// Runs the recursion with `s(j, prefix)` / `t(j, prefix)` evaluating
    /// `s_{j+1}` / `t_{j+1}` on the already rewritten prefix.
    fn run<V: Clone>(
        self,
        n: usize,
        xs: &[V],
        s: impl Fn(usize, &[V]) -> Result<V>,
        t: impl Fn(usize, &[V]) -> Result<V>,
    ) -> Result<Vec<V>> {
        if xs.len() != 2 * n + 4 {
            return Err(Error::LengthMismatch { expected: 2 * n + 4, found: xs.len() });
        }
        let (a, b, c, d) = (&xs[0], &xs[1], &xs[2], &xs[3]);
        let head = match self {
            SubstitutionMap::Sigma => [a, b, a, b],
            SubstitutionMap::SigmaStar => [a, a, c, d],
            SubstitutionMap::Rho => [a, b, c, c],
            SubstitutionMap::RhoStar => [a, b, c, d],
        };
        let mut out = xs.to_vec();
        for (o, h) in out.iter_mut().zip(head) {
            *o = h.clone();
        }
        for j in 0..n {
            let (xi, yi) = (4 + 2 * j, 5 + 2 * j);
            match self {
                SubstitutionMap::Sigma => out[xi] = s(j, &out[..xi])?,
                SubstitutionMap::SigmaStar => out[xi] = t(j, &out[..xi])?,
                SubstitutionMap::Rho => out[yi] = s(j, &out[..xi])?,
                SubstitutionMap::RhoStar => out[yi] = t(j, &out[..xi])?,
            }
        }
        Ok(out)
    }

    /// Symbolic mode: components are terms.
    pub fn apply_symbolic(self, scheme: &WitnessScheme, xs: &[Term]) -> Result<Vec<Term>> {
        let names = x_vector_names(scheme.n());
        let plug = |term: &Term, prefix: &[Term]| {
            let binding: HashMap<String, Term> = names.iter().cloned().zip(prefix.iter().cloned()).collect();
            term.substitute(&binding)
        };
        self.run(
            scheme.n(),
            xs,
            |j, p| Ok(plug(&scheme.s()[j], p)),
            |j, p| Ok(plug(&scheme.t()[j], p)),
        )
    }

    /// Concrete mode over `alg`.
    pub fn apply_concrete(self, compiled: &CompiledScheme, alg: &FiniteAlgebra, xs: &[Element]) -> Result<Vec<Element>> {
        compiled.ensure_of(alg)?;
        for &e in xs {
            alg.check_element(e)?;
        }
        self.run(
            compiled.n,
            xs,
            |j, p| Ok(compiled.s[j].eval(alg, p)),
            |j, p| Ok(compiled.t[j].eval(alg, p)),
        )
    }
}

impl fmt::Display for SubstitutionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The `s_i`, `t_i` of a scheme compiled against one algebra, with the
/// X-vector coordinates as slots.
#[derive(Debug, Clone)]
pub struct CompiledScheme {
    n: usize,
    algebra: u64,
    s: Vec<CompiledTerm>,
    t: Vec<CompiledTerm>,
}

impl CompiledScheme {
    pub fn new(scheme: &WitnessScheme, alg: &FiniteAlgebra) -> Result<CompiledScheme> {
        let names = x_vector_names(scheme.n());
        let slot = |v: &str| names.iter().position(|n| n == v);
        let compile = |ts: &[Term]| {
            ts.iter()
                .map(|t| CompiledTerm::compile(t, alg.signature(), &slot))
                .collect::<Result<Vec<_>>>()
        };
        Ok(CompiledScheme {
            n: scheme.n(),
            algebra: alg.fingerprint(),
            s: compile(scheme.s())?,
            t: compile(scheme.t())?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `s_{i+1}` evaluated on a prefix of length `2i + 4`.
    pub fn eval_s(&self, alg: &FiniteAlgebra, i: usize, prefix: &[Element]) -> Element {
        self.s[i].eval(alg, prefix)
    }

    pub fn eval_t(&self, alg: &FiniteAlgebra, i: usize, prefix: &[Element]) -> Element {
        self.t[i].eval(alg, prefix)
    }

    fn ensure_of(&self, alg: &FiniteAlgebra) -> Result<()> {
        if self.algebra == alg.fingerprint() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// The X-vector of variables `x y z w x1 y1 ..`.
pub fn x_vector_terms(n: usize) -> Vec<Term> {
    x_vector_names(n).into_iter().map(Term::Var).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::increment;
    use crate::corpus;

    #[test]
    fn heads() {
        let scheme = corpus::band0_scheme();
        let xs = x_vector_terms(2);
        let v = |s: &str| Term::var(s);
        let sigma = SubstitutionMap::Sigma.apply_symbolic(&scheme, &xs).unwrap();
        assert_eq!(&sigma[..4], &[v("x"), v("y"), v("x"), v("y")]);
        // s1 = x, s2 = y
        assert_eq!(sigma[4], v("x"));
        assert_eq!(sigma[6], v("y"));
        assert_eq!(sigma[5], v("y1"));
        let ss = SubstitutionMap::SigmaStar.apply_symbolic(&scheme, &xs).unwrap();
        assert_eq!(&ss[..4], &[v("x"), v("x"), v("z"), v("w")]);
        assert_eq!(ss[4], Term::constant("0"));
        let rho = SubstitutionMap::Rho.apply_symbolic(&scheme, &xs).unwrap();
        assert_eq!(&rho[..4], &[v("x"), v("y"), v("z"), v("z")]);
        assert_eq!(rho[4], v("x1"));
        assert_eq!(rho[5], v("x"));
        assert_eq!(rho[7], v("y"));
        assert!(SubstitutionMap::Rho.apply_symbolic(&scheme, &xs[..5]).is_err());
    }

    #[test]
    fn concrete_matches_symbolic_and_is_idempotent() {
        let alg = corpus::band0_algebra_a();
        let scheme = corpus::band0_scheme();
        let compiled = CompiledScheme::new(&scheme, &alg).unwrap();
        let names = x_vector_names(2);
        for map in SubstitutionMap::ALL {
            let symbolic = map.apply_symbolic(&scheme, &x_vector_terms(2)).unwrap();
            let mut xs = vec![0; 8];
            loop {
                let once = map.apply_concrete(&compiled, &alg, &xs).unwrap();
                assert_eq!(map.apply_concrete(&compiled, &alg, &once).unwrap(), once);
                let env = names.iter().cloned().zip(xs.iter().copied()).collect();
                for (t, &e) in symbolic.iter().zip(&once) {
                    assert_eq!(alg.eval_term(t, &env).unwrap(), e);
                }
                if !increment(&mut xs, 4) {
                    break;
                }
            }
        }
    }
}
