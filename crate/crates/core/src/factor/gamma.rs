use super::factor_congruences;
use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::Congruence;
use crate::error::Result;
use crate::limits::Limits;

/// Γ(a,b,c,d): every factor congruence containing `(c,d)` contains `(a,b)`.
pub fn gamma(alg: &FiniteAlgebra, a: Element, b: Element, c: Element, d: Element) -> Result<bool> {
    GammaTable::new(alg, &Limits::default())?.holds(a, b, c, d)
}

/// Precomputed `⋂{θ ∈ FC(A) : (c,d) ∈ θ}` for every pair `(c,d)`.
#[derive(Debug, Clone)]
pub struct GammaTable {
    n: usize,
    fc: Vec<Congruence>,
    /// `kernels[c * n + d]`
    kernels: Vec<Congruence>,
}

impl GammaTable {
    pub fn new(alg: &FiniteAlgebra, limits: &Limits) -> Result<GammaTable> {
        let fc: Vec<Congruence> = factor_congruences(alg, limits)?
            .into_iter()
            .map(|e| e.congruence)
            .collect();
        Self::from_fc(alg, fc)
    }

    pub fn from_fc(alg: &FiniteAlgebra, fc: Vec<Congruence>) -> Result<GammaTable> {
        let n = alg.size();
        let mut kernels = Vec::with_capacity(n * n);
        for c in 0..n {
            for d in 0..n {
                let mut k = Congruence::nabla(alg);
                for theta in fc.iter().filter(|t| t.contains(c, d)) {
                    k = k.meet(theta)?;
                }
                kernels.push(k);
            }
        }
        Ok(GammaTable { n, fc, kernels })
    }

    pub fn factor_congruences(&self) -> &[Congruence] {
        &self.fc
    }

    pub fn kernel(&self, c: Element, d: Element) -> &Congruence {
        &self.kernels[c * self.n + d]
    }

    pub fn holds(&self, a: Element, b: Element, c: Element, d: Element) -> Result<bool> {
        for e in [a, b, c, d] {
            if e >= self.n {
                return Err(crate::error::Error::OutOfRange { element: e, size: self.n });
            }
        }
        Ok(self.kernel(c, d).contains(a, b))
    }
}
