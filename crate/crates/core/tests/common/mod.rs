//! Brute-force oracles shared by the integration suites. They touch only
//! operation tables, never the library's lattice or factor code.
#![allow(dead_code)]

use bfc_lab::algebra::find_isomorphism;
use bfc_lab::corpus;
use bfc_lab::FiniteAlgebra;

/// Canonical block labels: each element labelled by the least member of its block.
pub type Labels = Vec<usize>;

/// Every partition of `0..n` as canonical labels, via restricted growth strings.
pub fn partitions(n: usize) -> Vec<Labels> {
    fn go(i: usize, n: usize, rgs: &mut Vec<usize>, blocks: usize, out: &mut Vec<Labels>) {
        if i == n {
            let mut first = vec![usize::MAX; blocks];
            let labels = rgs
                .iter()
                .enumerate()
                .map(|(e, &b)| {
                    if first[b] == usize::MAX {
                        first[b] = e;
                    }
                    first[b]
                })
                .collect();
            out.push(labels);
            return;
        }
        for b in 0..=blocks {
            rgs.push(b);
            go(i + 1, n, rgs, blocks.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

/// Value of operation `op` at `args`, read straight from the table.
pub fn apply(alg: &FiniteAlgebra, op: usize, args: &[usize]) -> usize {
    let n = alg.size();
    let idx = args.iter().fold(0, |acc, &a| acc * n + a);
    alg.table(op)[idx]
}

/// Compatibility by changing one argument at a time.
pub fn compatible(alg: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = alg.size();
    for (op, (_, arity)) in alg.signature().ops().iter().enumerate() {
        for args in tuples(n, *arity) {
            for pos in 0..*arity {
                for e in 0..n {
                    if labels[e] == labels[args[pos]] {
                        let mut other = args.clone();
                        other[pos] = e;
                        if labels[apply(alg, op, &args)] != labels[apply(alg, op, &other)] {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

pub fn refines(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..a.len()).all(|y| a[x] != a[y] || b[x] == b[y]))
}

pub fn lattice(alg: &FiniteAlgebra) -> Vec<Labels> {
    partitions(alg.size()).into_iter().filter(|p| compatible(alg, p)).collect()
}

/// The least compatible partition containing `pairs`.
pub fn cg(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Labels {
    let candidates: Vec<Labels> = lattice(alg)
        .into_iter()
        .filter(|p| pairs.iter().all(|&(a, b)| p[a] == p[b]))
        .collect();
    candidates
        .iter()
        .find(|p| candidates.iter().all(|q| refines(p, q)))
        .expect("a least member exists")
        .clone()
}

fn compose_full(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    (0..n).all(|x| (0..n).all(|z| (0..n).any(|y| a[x] == a[y] && b[y] == b[z])))
}

pub fn is_factor_pair(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    let meet_delta = (0..n).all(|x| (0..n).all(|y| x == y || a[x] != a[y] || b[x] != b[y]));
    meet_delta && compose_full(a, b) && compose_full(b, a)
}

pub fn factor_congruences(alg: &FiniteAlgebra) -> Vec<Labels> {
    let lat = lattice(alg);
    lat.iter().filter(|a| lat.iter().any(|b| is_factor_pair(a, b))).cloned().collect()
}

/// Γ(a,b,c,d) from a precomputed FC.
pub fn gamma(fc: &[Labels], a: usize, b: usize, c: usize, d: usize) -> bool {
    fc.iter().all(|t| t[c] != t[d] || t[a] == t[b])
}

/// Corpus algebras with at most `max` elements: band0.algebraA, chains,
/// semilattices, generated band0 members (one per isomorphism class) and Z6.
pub fn corpus_up_to(max: usize) -> Vec<FiniteAlgebra> {
    let mut out = Vec::new();
    if max >= 4 {
        out.push(corpus::band0_algebra_a());
    }
    if max >= 6 {
        out.push(corpus::z6_ring());
    }
    out.extend(corpus::enumerate_semilattices(max.min(corpus::MAX_SEMILATTICE_SIZE)).unwrap());
    out.extend(band0_members(max.min(5), 12));
    out
}

/// Distinct generated band0 members of each size up to `max`.
pub fn band0_members(max: usize, seeds: u64) -> Vec<FiniteAlgebra> {
    let mut out: Vec<FiniteAlgebra> = Vec::new();
    for size in 1..=max {
        for seed in 0..seeds {
            if let Some(a) = corpus::random_member_band0(size, seed).unwrap() {
                if !out.iter().any(|b| b.size() == size && find_isomorphism(b, &a).unwrap().is_some()) {
                    out.push(a);
                }
            }
        }
    }
    out
}

/// Every band0 table on `1..=max` elements with `0` as the zero, by
/// scanning the free off-diagonal cells and keeping associative ones.
pub fn all_band0(max: usize) -> Vec<FiniteAlgebra> {
    let mut out = Vec::new();
    for n in 1..=max {
        let cells: Vec<(usize, usize)> =
            (1..n).flat_map(|x| (1..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
        for code in 0..n.pow(cells.len() as u32) {
            let mut table = vec![0; n * n];
            for x in 1..n {
                table[x * n + x] = x;
            }
            let mut k = code;
            for &(x, y) in &cells {
                table[x * n + y] = k % n;
                k /= n;
            }
            let m = |a: usize, b: usize| table[a * n + b];
            let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
            if assoc {
                out.push(
                    FiniteAlgebra::new(format!("band0.all{n}.{code}"), corpus::band0_signature(), n, vec![vec![0], table], None)
                        .unwrap(),
                );
            }
        }
    }
    out
}
