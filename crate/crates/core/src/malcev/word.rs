use std::fmt;

use crate::error::{Error, Result};

/// A word over `{1..N}`; the empty word is ε.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>, alphabet: usize) -> Result<Word> {
        if letters.len() > alphabet {
            return Err(Error::MalformedScheme(format!(
                "word of length {} exceeds {alphabet}",
                letters.len()
            )));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > alphabet) {
            return Err(Error::MalformedScheme(format!("letter {bad} outside 1..{alphabet}")));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `letter`.
    pub fn child(&self, letter: usize) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position in the listing by length, then lexicographically.
    pub fn index(&self, alphabet: usize) -> usize {
        let offset: usize = (0..self.len()).map(|l| alphabet.pow(l as u32)).sum();
        offset + self.0.iter().fold(0, |acc, &l| acc * alphabet + (l - 1))
    }

    /// Key in scheme files: `""` for ε, digits when `alphabet ≤ 9`, dot
    /// separated numbers otherwise.
    pub fn key(&self, alphabet: usize) -> String {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        if alphabet <= 9 {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    pub fn from_key(key: &str, alphabet: usize) -> Result<Word> {
        let key = key.trim();
        if key.is_empty() || key == "ε" || key == "eps" {
            return Ok(Word::empty());
        }
        let bad = || Error::MalformedScheme(format!("bad word key `{key}`"));
        let letters: Vec<usize> = if key.contains('.') || alphabet > 9 {
            key.split('.').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            key.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        Word::new(letters, alphabet)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        if self.0.iter().all(|&l| l <= 9) {
            f.write_str(&parts.concat())
        } else {
            f.write_str(&parts.join("."))
        }
    }
}

/// Number of words of length at most `alphabet`.
pub fn word_count(alphabet: usize) -> u128 {
    (0..=alphabet).map(|l| crate::limits::pow_saturating(alphabet, l)).fold(0u128, u128::saturating_add)
}

/// All words of length at most `alphabet`, by length then lexicographically.
pub fn all_words(alphabet: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..alphabet {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| (1..=alphabet).map(move |l| w.child(l)))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
