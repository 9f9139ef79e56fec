use serde::{Deserialize, Serialize};

use super::is_factor_pair;
use crate::algebra::{encode_coordinates, is_homomorphism, Element, FiniteAlgebra};
use crate::congruence::Congruence;
use crate::error::{Error, Result};

/// Congruences `θ_1..θ_m` presenting `A ≅ Π A/θ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSystem {
    congruences: Vec<Congruence>,
}

impl DecompositionSystem {
    pub fn new(alg: &FiniteAlgebra, congruences: Vec<Congruence>) -> Result<DecompositionSystem> {
        if congruences.is_empty() {
            return Err(Error::InvariantViolation("empty decomposition system".into()));
        }
        for c in &congruences {
            c.ensure_of(alg)?;
        }
        let mut all = Congruence::nabla(alg);
        for c in &congruences {
            all = all.meet(c)?;
        }
        if !all.is_delta() {
            return Err(Error::InvariantViolation("decomposition system does not separate points".into()));
        }
        for i in 0..congruences.len() {
            let mut rest = Congruence::nabla(alg);
            for (j, c) in congruences.iter().enumerate() {
                if j != i {
                    rest = rest.meet(c)?;
                }
            }
            if !is_factor_pair(&congruences[i], &rest)? {
                return Err(Error::InvariantViolation(format!(
                    "member {i} is not complemented by the meet of the others"
                )));
            }
        }
        Ok(DecompositionSystem { congruences })
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }
}

/// Every valid system formed from at most `max_len` distinct non-∇ members
/// of `fc`, taken in the order of `fc`.
pub fn decomposition_systems(
    alg: &FiniteAlgebra,
    fc: &[Congruence],
    max_len: usize,
) -> Result<Vec<DecompositionSystem>> {
    if alg.size() == 1 {
        return Ok(vec![DecompositionSystem::new(alg, vec![Congruence::delta(alg)])?]);
    }
    let pool: Vec<&Congruence> = fc.iter().filter(|c| !c.is_nabla()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    subsets(alg, &pool, 0, max_len, &mut chosen, &mut out);
    Ok(out)
}

fn subsets(
    alg: &FiniteAlgebra,
    pool: &[&Congruence],
    start: usize,
    max_len: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<DecompositionSystem>,
) {
    if !chosen.is_empty() {
        let members = chosen.iter().map(|&i| pool[i].clone()).collect();
        if let Ok(d) = DecompositionSystem::new(alg, members) {
            out.push(d);
        }
    }
    if chosen.len() == max_len {
        return;
    }
    for i in start..pool.len() {
        chosen.push(i);
        subsets(alg, pool, i + 1, max_len, chosen, out);
        chosen.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefinementFailure {
    /// `A/θ_i → Π_j D_ij` is not an isomorphism.
    RowNotIsomorphic { i: usize },
    /// `A/φ_j → Π_i D_ij` is not an isomorphism.
    ColumnNotIsomorphic { j: usize },
    /// The two routes `A → D_ij` disagree at `element`.
    NotCommutative { i: usize, j: usize, element: Element },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub ok: bool,
    /// `|D_ij|`, rows indexed by the first system.
    pub sizes: Vec<Vec<usize>>,
    pub failures: Vec<RefinementFailure>,
}

/// Builds `D_ij = A/(θ_i ∨ φ_j)` and checks that both systems factor
/// through the grid with commuting canonical maps.
pub fn strict_refinement(
    alg: &FiniteAlgebra,
    d: &DecompositionSystem,
    e: &DecompositionSystem,
) -> Result<RefinementReport> {
    let (m, k) = (d.len(), e.len());
    let n = alg.size();
    // grid[i][j] = (D_ij, canonical map A → D_ij)
    let mut grid: Vec<Vec<(FiniteAlgebra, Vec<Element>)>> = Vec::with_capacity(m);
    for theta in d.congruences() {
        let mut row = Vec::with_capacity(k);
        for phi in e.congruences() {
            row.push(alg.quotient(&theta.join(phi)?)?);
        }
        grid.push(row);
    }
    let sizes = grid.iter().map(|r| r.iter().map(|(q, _)| q.size()).collect()).collect();
    let rows: Vec<_> = d.congruences().iter().map(|t| alg.quotient(t)).collect::<Result<_>>()?;
    let cols: Vec<_> = e.congruences().iter().map(|p| alg.quotient(p)).collect::<Result<_>>()?;

    let mut failures = Vec::new();
    for (i, (row_alg, row_map)) in rows.iter().enumerate() {
        let targets: Vec<&(FiniteAlgebra, Vec<Element>)> = grid[i].iter().collect();
        if !canonical_iso(row_alg, row_map, &targets)? {
            failures.push(RefinementFailure::RowNotIsomorphic { i });
        }
    }
    for (j, (col_alg, col_map)) in cols.iter().enumerate() {
        let targets: Vec<&(FiniteAlgebra, Vec<Element>)> = grid.iter().map(|r| &r[j]).collect();
        if !canonical_iso(col_alg, col_map, &targets)? {
            failures.push(RefinementFailure::ColumnNotIsomorphic { j });
        }
    }
    for i in 0..m {
        for j in 0..k {
            let b = block_map(&rows[i].1, &grid[i][j].1);
            let c = block_map(&cols[j].1, &grid[i][j].1);
            if let Some(element) = (0..n).find(|&x| b[rows[i].1[x]] != c[cols[j].1[x]]) {
                failures.push(RefinementFailure::NotCommutative { i, j, element });
            }
        }
    }
    Ok(RefinementReport { ok: failures.is_empty(), sizes, failures })
}

/// The map on blocks induced by `to` through the least member of each
/// block of `from`.
fn block_map(from: &[Element], to: &[Element]) -> Vec<Element> {
    let blocks = from.iter().max().map_or(0, |&b| b + 1);
    let mut out = vec![usize::MAX; blocks];
    for (x, &b) in from.iter().enumerate() {
        if out[b] == usize::MAX {
            out[b] = to[x];
        }
    }
    out
}

/// Whether `source → Π targets`, block by block, is a bijective
/// homomorphism.
fn canonical_iso(
    source: &FiniteAlgebra,
    source_map: &[Element],
    targets: &[&(FiniteAlgebra, Vec<Element>)],
) -> Result<bool> {
    let algebras: Vec<&FiniteAlgebra> = targets.iter().map(|(q, _)| q).collect();
    let product = FiniteAlgebra::direct_product(&algebras)?;
    if product.size() != source.size() {
        return Ok(false);
    }
    let sizes: Vec<usize> = algebras.iter().map(|q| q.size()).collect();
    let maps: Vec<Vec<Element>> = targets.iter().map(|(_, q)| block_map(source_map, q)).collect();
    let mut flat = Vec::with_capacity(source.size());
    let mut seen = vec![false; product.size()];
    let mut coords = vec![0; maps.len()];
    for b in 0..source.size() {
        for (c, m) in coords.iter_mut().zip(&maps) {
            *c = m[b];
        }
        let f = encode_coordinates(&coords, &sizes);
        if std::mem::replace(&mut seen[f], true) {
            return Ok(false);
        }
        flat.push(f);
    }
    Ok(is_homomorphism(source, &product, &flat))
}
