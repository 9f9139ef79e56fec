use std::path::Path;

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::{cg, Congruence, Partition};
use crate::corpus::{self, Payload};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::malcev::WitnessScheme;

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn builtin(name: &str) -> Option<Payload> {
    corpus::load_builtin(name).ok().map(|e| e.payload)
}

/// Resolves an algebra argument: a builtin name, a generated name
/// (`chain<n>`, `sl<n>.<i>`, `band0.random<n>.<seed>`) or a JSON file.
pub fn algebra(arg: &str) -> Result<FiniteAlgebra> {
    match builtin(arg) {
        Some(Payload::Algebra(a)) => return Ok(a),
        Some(other) => return Err(Error::Parse(format!("builtin `{arg}` is a {}, not an algebra", other.kind()))),
        None => {}
    }
    if let Some(a) = generated(arg)? {
        return Ok(a);
    }
    if Path::new(arg).exists() {
        return FiniteAlgebra::from_json(&read(arg)?);
    }
    Err(Error::UnknownBuiltin(arg.to_string()))
}

fn generated(arg: &str) -> Result<Option<FiniteAlgebra>> {
    if let Some(n) = arg.strip_prefix("chain").and_then(|s| s.parse::<usize>().ok()) {
        if n == 0 {
            return Err(Error::MalformedAlgebra("universe must be nonempty".into()));
        }
        return Ok(Some(corpus::chain(n)));
    }
    if let Some((n, i)) = arg.strip_prefix("sl").and_then(|s| s.split_once('.')) {
        if let (Ok(n), Ok(i)) = (n.parse::<usize>(), i.parse::<usize>()) {
            let all = corpus::semilattices_of_size(n)?;
            let count = all.len();
            return all
                .into_iter()
                .nth(i)
                .map(Some)
                .ok_or_else(|| Error::Parse(format!("there are only {count} semilattices of size {n}")));
        }
    }
    if let Some((n, seed)) = arg.strip_prefix("band0.random").and_then(|s| s.split_once('.')) {
        if let (Ok(n), Ok(seed)) = (n.parse::<usize>(), seed.parse::<u64>()) {
            return corpus::random_member_band0(n, seed)?
                .map(Some)
                .ok_or_else(|| Error::InvariantViolation(format!("no member found for `{arg}`")));
        }
    }
    Ok(None)
}

pub fn scheme(arg: &str) -> Result<WitnessScheme> {
    match builtin(arg) {
        Some(Payload::Scheme(s)) => Ok(s),
        Some(other) => Err(Error::Parse(format!("builtin `{arg}` is a {}, not a scheme", other.kind()))),
        None if Path::new(arg).exists() => WitnessScheme::from_json(&read(arg)?),
        None => Err(Error::UnknownBuiltin(arg.to_string())),
    }
}

/// A builtin formula name, an inline s-expression or a file holding one.
pub fn formula(arg: &str) -> Result<Formula> {
    match builtin(arg) {
        Some(Payload::Formula(f)) => Ok(f),
        Some(other) => Err(Error::Parse(format!("builtin `{arg}` is a {}, not a formula", other.kind()))),
        None if arg.trim_start().starts_with('(') || arg.trim() == "true" => Formula::parse(arg),
        None if Path::new(arg).exists() => Formula::parse(&read(arg)?),
        None => Formula::parse(arg),
    }
}

/// Comma-separated elements, by name or index.
pub fn elements(alg: &FiniteAlgebra, arg: &str) -> Result<Vec<Element>> {
    arg.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| alg.parse_element(s))
        .collect()
}

/// `a,b;c,d` as element pairs.
pub fn pairs(alg: &FiniteAlgebra, arg: &str) -> Result<Vec<(Element, Element)>> {
    arg.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| match elements(alg, p)?.as_slice() {
            &[a, b] => Ok((a, b)),
            _ => Err(Error::Parse(format!("expected a pair `a,b`, got `{p}`"))),
        })
        .collect()
}

/// `delta`, `nabla`, `cg:a,b;c,d`, or a label per element (`0,0,1,1`).
pub fn congruence(alg: &FiniteAlgebra, arg: &str) -> Result<Congruence> {
    match arg.trim() {
        "delta" | "Δ" => Ok(Congruence::delta(alg)),
        "nabla" | "∇" => Ok(Congruence::nabla(alg)),
        s => {
            if let Some(gens) = s.strip_prefix("cg:") {
                return cg(alg, &pairs(alg, gens)?);
            }
            let labels: Vec<usize> = s
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad label `{t}`"))))
                .collect::<Result<_>>()?;
            if labels.len() != alg.size() {
                return Err(Error::LengthMismatch { expected: alg.size(), found: labels.len() });
            }
            Congruence::new(alg, Partition::from_key(&labels))
        }
    }
}
