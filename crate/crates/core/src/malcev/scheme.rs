use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::word::{all_words, word_count, Word};
use crate::algebra::{Signature, Term};
use crate::error::{Error, Result};

/// Largest word alphabet accepted; keeps the L/R tables small.
pub const MAX_ALPHABET: usize = 8;

/// Names of the `2n + 4` coordinates `x y z w x1 y1 .. xn yn`.
pub fn x_vector_names(n: usize) -> Vec<String> {
    let mut out: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    for i in 1..=n {
        out.push(format!("x{i}"));
        out.push(format!("y{i}"));
    }
    out
}

/// Terms `s_i, t_i` (`i = 1..n`) and `L_α, R_α` (`|α| ≤ N = 2k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessScheme {
    n: usize,
    k: usize,
    s: Vec<Term>,
    t: Vec<Term>,
    /// indexed by [`Word::index`]
    l: Vec<Term>,
    r: Vec<Term>,
}

impl WitnessScheme {
    pub fn new(
        n: usize,
        k: usize,
        s: Vec<Term>,
        t: Vec<Term>,
        l: BTreeMap<Word, Term>,
        r: BTreeMap<Word, Term>,
    ) -> Result<WitnessScheme> {
        if k == 0 || 2 * k > MAX_ALPHABET {
            return Err(Error::MalformedScheme(format!("k must be in 1..={}", MAX_ALPHABET / 2)));
        }
        let big_n = 2 * k;
        for (label, terms) in [("s", &s), ("t", &t)] {
            if terms.len() != n {
                return Err(Error::MalformedScheme(format!("{label} has {} terms, expected {n}", terms.len())));
            }
        }
        let names = x_vector_names(n);
        for i in 0..n {
            let allowed = &names[..4 + 2 * i];
            for (label, term) in [("s", &s[i]), ("t", &t[i])] {
                if let Some(v) = term.vars().into_iter().find(|v| !allowed.contains(v)) {
                    return Err(Error::MalformedScheme(format!(
                        "{label}{} uses `{v}` but has arity {}",
                        i + 1,
                        allowed.len()
                    )));
                }
            }
        }
        let words = all_words(big_n);
        let mut tables = Vec::new();
        for (label, map) in [("L", &l), ("R", &r)] {
            if let Some(extra) = map.keys().find(|w| w.len() > big_n || w.letters().iter().any(|&c| c > big_n)) {
                return Err(Error::MalformedScheme(format!("{label} has word {extra} outside the alphabet")));
            }
            let mut table = Vec::with_capacity(words.len());
            for w in &words {
                let term = map
                    .get(w)
                    .ok_or_else(|| Error::MalformedScheme(format!("{label}_{w} is missing")))?;
                if let Some(v) = term.vars().into_iter().find(|v| !names.contains(v)) {
                    return Err(Error::MalformedScheme(format!("{label}_{w} uses unknown variable `{v}`")));
                }
                table.push(term.clone());
            }
            tables.push(table);
        }
        let r_table = tables.pop().unwrap();
        let l_table = tables.pop().unwrap();
        if l_table[0] != Term::var("x") || r_table[0] != Term::var("y") {
            return Err(Error::MalformedScheme("L_ε must be x and R_ε must be y".into()));
        }
        Ok(WitnessScheme { n, k, s, t, l: l_table, r: r_table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Alphabet size and maximal word length `N = 2k`.
    pub fn big_n(&self) -> usize {
        2 * self.k
    }

    pub fn s(&self) -> &[Term] {
        &self.s
    }

    pub fn t(&self) -> &[Term] {
        &self.t
    }

    pub fn l(&self, w: &Word) -> &Term {
        &self.l[w.index(self.big_n())]
    }

    pub fn r(&self, w: &Word) -> &Term {
        &self.r[w.index(self.big_n())]
    }

    pub fn words(&self) -> Vec<Word> {
        all_words(self.big_n())
    }

    /// Total number of L/R words.
    pub fn word_count(&self) -> u128 {
        word_count(self.big_n())
    }

    pub fn conforms(&self, sig: &Signature) -> Result<()> {
        self.s
            .iter()
            .chain(&self.t)
            .chain(&self.l)
            .chain(&self.r)
            .try_for_each(|t| t.conforms(sig))
    }

    /// Copy with `L_w` and `R_w` exchanged.
    pub fn with_swapped(&self, w: &Word) -> WitnessScheme {
        let mut out = self.clone();
        let i = w.index(self.big_n());
        std::mem::swap(&mut out.l[i], &mut out.r[i]);
        out
    }

    pub fn to_file(&self) -> SchemeFile {
        let big_n = self.big_n();
        let table = |ts: &[Term]| -> BTreeMap<String, String> {
            all_words(big_n).iter().zip(ts).map(|(w, t)| (w.key(big_n), t.to_string())).collect()
        };
        SchemeFile {
            n: self.n,
            k: self.k,
            s: self.s.iter().map(Term::to_string).collect(),
            t: self.t.iter().map(Term::to_string).collect(),
            l: table(&self.l),
            r: table(&self.r),
        }
    }

    pub fn from_file(file: &SchemeFile) -> Result<WitnessScheme> {
        let big_n = 2 * file.k;
        if big_n > MAX_ALPHABET {
            return Err(Error::MalformedScheme(format!("k must be in 1..={}", MAX_ALPHABET / 2)));
        }
        let parse_all = |v: &[String]| v.iter().map(|s| Term::parse(s)).collect::<Result<Vec<_>>>();
        let table = |m: &BTreeMap<String, String>| -> Result<BTreeMap<Word, Term>> {
            m.iter().map(|(k, v)| Ok((Word::from_key(k, big_n)?, Term::parse(v)?))).collect()
        };
        WitnessScheme::new(file.n, file.k, parse_all(&file.s)?, parse_all(&file.t)?, table(&file.l)?, table(&file.r)?)
    }

    pub fn from_json(text: &str) -> Result<WitnessScheme> {
        WitnessScheme::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scheme serializes")
    }
}

/// On-disk form; terms are s-expressions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub n: usize,
    pub k: usize,
    pub s: Vec<String>,
    pub t: Vec<String>,
    #[serde(rename = "L")]
    pub l: BTreeMap<String, String>,
    #[serde(rename = "R")]
    pub r: BTreeMap<String, String>,
}
