use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::cg;
use crate::algebra::{decode_tuple, Element, FiniteAlgebra};
use crate::error::Result;

/// One basic translation: operation `op` with its argument `hole` left
/// free and the remaining arguments fixed to `constants` (in order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Translation {
    pub op: usize,
    pub hole: usize,
    pub constants: Vec<Element>,
}

impl Translation {
    pub fn apply(&self, alg: &FiniteAlgebra, x: Element) -> Element {
        let mut args = self.constants.clone();
        args.insert(self.hole, x);
        alg.apply(self.op, &args)
    }
}

/// A unary polynomial as a composition of basic translations; `steps[0]`
/// is applied first. The empty composition is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnaryPolynomial {
    pub steps: Vec<Translation>,
}

impl UnaryPolynomial {
    pub fn apply(&self, alg: &FiniteAlgebra, x: Element) -> Element {
        self.steps.iter().fold(x, |acc, t| t.apply(alg, acc))
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Renders the polynomial with `hole` for the free argument and element
    /// names for constants, e.g. `(* x 1)`.
    pub fn describe(&self, alg: &FiniteAlgebra, hole: &str) -> String {
        let mut s = hole.to_string();
        for t in &self.steps {
            let mut parts: Vec<String> = t.constants.iter().map(|&c| alg.element_name(c)).collect();
            parts.insert(t.hole, s);
            s = format!("({} {})", alg.signature().ops()[t.op].0, parts.join(" "));
        }
        s
    }
}

/// One link `from -> to` of a Mal'cev chain: plugging the two sides of
/// generator `generator` (swapped when `flipped`) into `polynomial` gives
/// `from` and `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub from: Element,
    pub to: Element,
    pub generator: usize,
    pub flipped: bool,
    pub polynomial: UnaryPolynomial,
}

impl ChainStep {
    pub fn replays(&self, alg: &FiniteAlgebra, gens: &[(Element, Element)]) -> bool {
        let Some(&(u, v)) = gens.get(self.generator) else {
            return false;
        };
        let (u, v) = if self.flipped { (v, u) } else { (u, v) };
        self.polynomial.apply(alg, u) == self.from && self.polynomial.apply(alg, v) == self.to
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "steps", rename_all = "snake_case")]
pub enum ChainOutcome {
    Chain(Vec<ChainStep>),
    NotInCongruence,
    /// The pair is in the congruence but no chain was found with
    /// polynomials of at most the allowed depth.
    WitnessDepthExceeded,
}

impl ChainOutcome {
    pub fn replays(&self, alg: &FiniteAlgebra, gens: &[(Element, Element)], a: Element, b: Element) -> bool {
        match self {
            ChainOutcome::Chain(steps) => {
                let mut cur = a;
                for s in steps {
                    if s.from != cur || !s.replays(alg, gens) {
                        return false;
                    }
                    cur = s.to;
                }
                cur == b
            }
            _ => true,
        }
    }
}

/// Element-level witness for `(a, b) ∈ Cg(gens)`: a shortest sequence
/// `a = z0, .., zk = b` whose links are images of generator pairs under
/// unary polynomials of depth at most `max_depth`.
pub fn malcev_chain(
    alg: &FiniteAlgebra,
    gens: &[(Element, Element)],
    a: Element,
    b: Element,
    max_depth: usize,
) -> Result<ChainOutcome> {
    alg.check_element(a)?;
    alg.check_element(b)?;
    for &(u, v) in gens {
        alg.check_element(u)?;
        alg.check_element(v)?;
    }
    if a == b {
        return Ok(ChainOutcome::Chain(Vec::new()));
    }
    let links = polynomial_images(alg, gens, max_depth);

    // breadth-first search over elements along the links
    let n = alg.size();
    let mut adjacency: Vec<Vec<Element>> = vec![Vec::new(); n];
    let mut keys: Vec<&(Element, Element)> = links.keys().collect();
    keys.sort();
    for &(p, q) in keys {
        adjacency[p].push(q);
    }
    let mut prev: Vec<Option<Element>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(z) = queue.pop_front() {
        if z == b {
            break;
        }
        for &w in &adjacency[z] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some(z);
                queue.push_back(w);
            }
        }
    }
    if !seen[b] {
        let in_cg = cg(alg, gens)?.contains(a, b);
        return Ok(if in_cg { ChainOutcome::WitnessDepthExceeded } else { ChainOutcome::NotInCongruence });
    }
    let mut path = vec![b];
    let mut cur = b;
    while let Some(p) = prev[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    let steps = path
        .windows(2)
        .map(|w| {
            let (generator, flipped, polynomial) = links[&(w[0], w[1])].clone();
            ChainStep { from: w[0], to: w[1], generator, flipped, polynomial }
        })
        .collect();
    Ok(ChainOutcome::Chain(steps))
}

type Link = (usize, bool, UnaryPolynomial);

/// Every pair `(p(u), p(v))` with `p(u) != p(v)`, `(u, v)` a generator in
/// either orientation and `p` of depth `<= max_depth`, with the shallowest
/// polynomial found first.
fn polynomial_images(
    alg: &FiniteAlgebra,
    gens: &[(Element, Element)],
    max_depth: usize,
) -> HashMap<(Element, Element), Link> {
    let mut found: HashMap<(Element, Element), Link> = HashMap::new();
    let mut frontier: Vec<(Element, Element)> = Vec::new();
    for (g, &(u, v)) in gens.iter().enumerate() {
        for (flipped, pair) in [(false, (u, v)), (true, (v, u))] {
            if pair.0 != pair.1 && !found.contains_key(&pair) {
                found.insert(pair, (g, flipped, UnaryPolynomial::default()));
                frontier.push(pair);
            }
        }
    }
    let translations = all_translations(alg);
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for &(p, q) in &frontier {
            for t in &translations {
                let image = (t.apply(alg, p), t.apply(alg, q));
                if image.0 == image.1 || found.contains_key(&image) {
                    continue;
                }
                let (g, flipped, poly) = found[&(p, q)].clone();
                let mut steps = poly.steps;
                steps.push(t.clone());
                found.insert(image, (g, flipped, UnaryPolynomial { steps }));
                next.push(image);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    found
}

fn all_translations(alg: &FiniteAlgebra) -> Vec<Translation> {
    let n = alg.size();
    let mut out = Vec::new();
    for op in 0..alg.signature().len() {
        let arity = alg.arity(op);
        if arity == 0 {
            continue;
        }
        let mut ctx = vec![0; arity - 1];
        for hole in 0..arity {
            for c in 0..n.pow(arity as u32 - 1) {
                decode_tuple(c, n, &mut ctx);
                out.push(Translation { op, hole, constants: ctx.clone() });
            }
        }
    }
    out
}
