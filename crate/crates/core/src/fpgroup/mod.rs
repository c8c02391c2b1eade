//! Free words, finite group presentations, and Todd–Coxeter coset
//! enumeration producing permutation representations.

mod abelian;
mod coset;
mod parse;

pub use abelian::abelianization;
pub use coset::{table_to_perms, CosetTable, EnumerationError, Strategy};
pub(crate) use coset::standardize_entries;
pub use parse::ParseError;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A freely reduced word over generators `0..n`.
///
/// Letters are signed indices: `k > 0` is generator `k-1`, `k < 0` is the
/// inverse of generator `-k-1`. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// Single-letter word for generator `g`.
    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![g as i32 + 1],
        }
    }

    /// Builds a word from signed letters, freely reducing.
    pub fn from_letters(letters: &[i32]) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0, "letter 0 is not a valid signed generator index");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// `self · other`, freely reduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// `self^n` (negative `n` gives the inverse power).
    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Conjugate `y⁻¹ · self · y`.
    pub fn conjugated_by(&self, y: &Word) -> Word {
        y.inverse().concat(self).concat(y)
    }

    /// Commutator `x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// Rewrites the word through generator images: letter `±(g+1)` becomes
    /// `images[g]` (or its inverse). The result is freely reduced.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &l in &self.letters {
            let g = l.unsigned_abs() as usize - 1;
            assert!(g < images.len(), "letter {l} has no image");
            if l > 0 {
                out = out.concat(&images[g]);
            } else {
                out = out.concat(&images[g].inverse());
            }
        }
        out
    }

    /// Removes matching prefix/suffix inverse pairs (`x⁻¹ w x` → `w`).
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == -self.letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: self.letters[lo..hi].to_vec(),
        }
    }

    /// Generator indices occurring in the word (ignoring sign).
    pub fn generators_used(&self) -> BTreeSet<usize> {
        self.letters.iter().map(|&l| l.unsigned_abs() as usize - 1).collect()
    }

    /// Renders the word using the given generator names (`*` separated,
    /// with `^k` collecting runs); the identity renders as `1`.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let g = l.unsigned_abs() as usize - 1;
            let name = names.get(g).map(String::as_str).unwrap_or("?");
            let exp = if l > 0 { run as i64 } else { -(run as i64) };
            if exp == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join("*")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.letters)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator name {0:?} is not a valid identifier")]
    BadName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("relator uses generator index {0} but only {1} generators are declared")]
    LetterOutOfRange(usize, usize),
}

/// A finite presentation: named generators and freely+cyclically reduced
/// relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(
        names: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for n in &names {
            if !is_identifier(n) {
                return Err(PresentationError::BadName(n.clone()));
            }
            if !seen.insert(n.clone()) {
                return Err(PresentationError::DuplicateName(n.clone()));
            }
        }
        let relators: Vec<Word> = relators
            .into_iter()
            .map(|w| w.cyclically_reduced())
            .filter(|w| !w.is_empty())
            .collect();
        for r in &relators {
            if let Some(&g) = r.generators_used().iter().next_back() {
                if g >= names.len() {
                    return Err(PresentationError::LetterOutOfRange(g, names.len()));
                }
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Parses the one-line text form
    /// `gens: a b ; rels: a^3 b^2 (a*b)^2 [a,b] a^2=b`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_presentation(text)
    }

    /// Parses a single word over this presentation's generators.
    pub fn word(&self, text: &str) -> Result<Word, ParseError> {
        parse::parse_word(text, &self.names)
    }

    /// Parses several whitespace-separated words.
    pub fn words(&self, texts: &[&str]) -> Result<Vec<Word>, ParseError> {
        texts.iter().map(|t| self.word(t)).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Round-trippable text form.
    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_text(&self.names)).collect();
        format!("gens: {} ; rels: {}", self.names.join(" "), rels.join(" "))
    }

    /// Enumerates the cosets of the subgroup generated by `subgroup_gens`
    /// (HLT with lookahead; see [`CosetTable::enumerate`]).
    pub fn coset_enumerate(
        &self,
        subgroup_gens: &[Word],
        max_cosets: usize,
    ) -> Result<CosetTable, EnumerationError> {
        CosetTable::enumerate(self, subgroup_gens, max_cosets, Strategy::HltLookahead)
    }

    /// Order of the presented group, if the regular coset enumeration
    /// completes within `max_cosets`.
    pub fn group_order(&self, max_cosets: usize) -> Result<usize, EnumerationError> {
        Ok(self.coset_enumerate(&[], max_cosets)?.coset_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_is_canonical() {
        let w = Word::from_letters(&[1, 2, -2, -1, 1, 3]);
        assert_eq!(w.letters(), &[1, 3]);
        // Reduction is idempotent.
        assert_eq!(Word::from_letters(w.letters()), w);
    }

    #[test]
    fn inverse_laws() {
        let w = Word::from_letters(&[1, -2, 3, 3]);
        let v = Word::from_letters(&[2, 1]);
        assert_eq!(w.inverse().inverse(), w);
        assert_eq!(w.concat(&v).inverse(), v.inverse().concat(&w.inverse()));
        assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        // a⁻¹ b a  →  b
        let w = Word::from_letters(&[-1, 2, 1]);
        assert_eq!(w.cyclically_reduced().letters(), &[2]);
        // Already cyclically reduced words are untouched.
        let v = Word::from_letters(&[1, 2]);
        assert_eq!(v.cyclically_reduced(), v);
    }

    #[test]
    fn commutator_and_conjugate() {
        let x = Word::generator(0);
        let y = Word::generator(1);
        assert_eq!(Word::commutator(&x, &y).letters(), &[-1, -2, 1, 2]);
        assert_eq!(x.conjugated_by(&y).letters(), &[-2, 1, 2]);
    }

    #[test]
    fn pow() {
        let x = Word::generator(0);
        assert_eq!(x.pow(3).letters(), &[1, 1, 1]);
        assert_eq!(x.pow(-2).letters(), &[-1, -1]);
        assert!(x.pow(0).is_empty());
    }

    #[test]
    fn presentation_validation() {
        assert!(Presentation::new(vec!["a".into(), "a".into()], vec![]).is_err());
        assert!(Presentation::new(vec!["1a".into()], vec![]).is_err());
        let err = Presentation::new(vec!["a".into()], vec![Word::from_letters(&[2])]);
        assert_eq!(err, Err(PresentationError::LetterOutOfRange(1, 1)));
    }

    #[test]
    fn presentation_reduces_relators() {
        // b a³ b⁻¹ is stored as a³; empty relators are dropped.
        let p = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![
                Word::from_letters(&[2, 1, 1, 1, -2]),
                Word::from_letters(&[1, -1]),
            ],
        )
        .unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].letters(), &[1, 1, 1]);
    }

    #[test]
    fn word_text_roundtrip() {
        let p = Presentation::parse("gens: a b ; rels: a^3 b^2").unwrap();
        let w = Word::from_letters(&[1, 1, -2, 1]);
        assert_eq!(w.to_text(p.names()), "a^2*b^-1*a");
        assert_eq!(p.word(&w.to_text(p.names())).unwrap(), w);
        assert_eq!(Word::identity().to_text(p.names()), "1");
    }
}
