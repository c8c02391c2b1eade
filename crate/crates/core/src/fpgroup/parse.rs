//! Text form for presentations and words.
//!
//! Grammar (words contain no whitespace; relators are whitespace-separated):
//!
//! ```text
//! presentation := 'gens' ':' name* ';' 'rels' ':' relation*
//! relation     := word ('=' word)?          u=v abbreviates u·v⁻¹
//! word         := factor ('*' factor)*
//! factor       := atom ('^' exponent)?
//! atom         := name | '1' | '(' word ')' | '[' word ',' word ']'
//! exponent     := integer | atom            x^-2 is a power, x^y is y⁻¹xy
//! name         := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! `[x,y]` denotes the commutator x⁻¹y⁻¹xy and `1` the empty word.

use super::{is_identifier, Presentation, PresentationError, Word};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected {expected} in {context:?}")]
    Expected { expected: String, context: String },
    #[error("unexpected character {ch:?} in {context:?}")]
    UnexpectedChar { ch: char, context: String },
    #[error("unknown generator {name:?} in {context:?}")]
    UnknownGenerator { name: String, context: String },
    #[error("trailing input after {parsed:?} in {context:?}")]
    Trailing { parsed: String, context: String },
    #[error("exponent out of range in {context:?}")]
    ExponentRange { context: String },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Star,
    Caret,
    Equals,
}

fn tokenize(chunk: &str) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = chunk.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            '(' => toks.push(Tok::LParen),
            ')' => toks.push(Tok::RParen),
            '[' => toks.push(Tok::LBracket),
            ']' => toks.push(Tok::RBracket),
            ',' => toks.push(Tok::Comma),
            '*' => toks.push(Tok::Star),
            '^' => toks.push(Tok::Caret),
            '=' => toks.push(Tok::Equals),
            '-' | '0'..='9' => {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(ParseError::UnexpectedChar {
                        ch: c,
                        context: chunk.to_string(),
                    });
                }
                let text: String = bytes[start..i].iter().collect();
                let n: i64 = text.parse().map_err(|_| ParseError::ExponentRange {
                    context: chunk.to_string(),
                })?;
                toks.push(Tok::Int(n));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_')
                {
                    i += 1;
                }
                toks.push(Tok::Name(bytes[start..i].iter().collect()));
                continue;
            }
            c if c.is_whitespace() => {}
            other => {
                return Err(ParseError::UnexpectedChar {
                    ch: other,
                    context: chunk.to_string(),
                })
            }
        }
        i += 1;
    }
    Ok(toks)
}

struct WordParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    names: &'a [String],
    context: &'a str,
}

impl<'a> WordParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        ParseError::Expected {
            expected: what.to_string(),
            context: self.context.to_string(),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        if let Some(&Tok::Int(n)) = self.peek() {
            self.pos += 1;
            let n32 = i32::try_from(n).map_err(|_| ParseError::ExponentRange {
                context: self.context.to_string(),
            })?;
            Ok(base.pow(n32))
        } else {
            // x^y is the conjugate y⁻¹xy.
            let by = self.atom()?;
            Ok(base.conjugated_by(&by))
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.bump() {
            Some(Tok::Name(name)) => {
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(ParseError::UnknownGenerator {
                        name,
                        context: self.context.to_string(),
                    })?;
                Ok(Word::generator(g))
            }
            Some(Tok::Int(1)) => Ok(Word::identity()),
            Some(Tok::LParen) => {
                let w = self.word()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(w)
            }
            Some(Tok::LBracket) => {
                let x = self.word()?;
                self.expect(Tok::Comma, "','")?;
                let y = self.word()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(Word::commutator(&x, &y))
            }
            _ => Err(self.expected("a generator name, '1', '(' or '['")),
        }
    }
}

/// Parses one word (no `=`); used for subgroup generators and CLI input.
pub(super) fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    let toks = tokenize(text)?;
    let mut p = WordParser {
        toks: &toks,
        pos: 0,
        names,
        context: text,
    };
    let w = p.word()?;
    if p.pos != toks.len() {
        return Err(ParseError::Trailing {
            parsed: w.to_text(names),
            context: text.to_string(),
        });
    }
    Ok(w)
}

/// Parses a relation `word` or `word=word` (the latter meaning u·v⁻¹).
fn parse_relation(chunk: &str, names: &[String]) -> Result<Word, ParseError> {
    let toks = tokenize(chunk)?;
    let mut p = WordParser {
        toks: &toks,
        pos: 0,
        names,
        context: chunk,
    };
    let mut w = p.word()?;
    if p.peek() == Some(&Tok::Equals) {
        p.pos += 1;
        let v = p.word()?;
        w = w.concat(&v.inverse());
    }
    if p.pos != toks.len() {
        return Err(ParseError::Trailing {
            parsed: w.to_text(names),
            context: chunk.to_string(),
        });
    }
    Ok(w)
}

pub(super) fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let err = |what: &str| ParseError::Expected {
        expected: what.to_string(),
        context: text.to_string(),
    };
    let rest = text.trim();
    let rest = rest.strip_prefix("gens").ok_or_else(|| err("'gens:'"))?;
    let rest = rest.trim_start().strip_prefix(':').ok_or_else(|| err("':' after 'gens'"))?;
    let (gens_part, rest) = rest.split_once(';').ok_or_else(|| err("';' between sections"))?;
    let rest = rest.trim_start();
    let rest = rest.strip_prefix("rels").ok_or_else(|| err("'rels:'"))?;
    let rels_part = rest.trim_start().strip_prefix(':').ok_or_else(|| err("':' after 'rels'"))?;

    let names: Vec<String> = gens_part.split_whitespace().map(str::to_string).collect();
    for n in &names {
        if !is_identifier(n) {
            return Err(PresentationError::BadName(n.clone()).into());
        }
    }
    let relators = rels_part
        .split_whitespace()
        .map(|chunk| parse_relation(chunk, &names))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Presentation::new(names, relators)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &Presentation, text: &str) -> Vec<i32> {
        p.word(text).unwrap().letters().to_vec()
    }

    #[test]
    fn parses_spec_style_line() {
        let p = Presentation::parse("gens: a b c ; rels: a^3 b^2 (a*b)^2 [a,c] a^3=c").unwrap();
        assert_eq!(p.names(), ["a", "b", "c"]);
        let rels: Vec<&[i32]> = p.relators().iter().map(|r| r.letters()).collect();
        assert_eq!(
            rels,
            vec![
                &[1, 1, 1][..],
                &[2, 2][..],
                &[1, 2, 1, 2][..],
                &[-1, -3, 1, 3][..],
                &[1, 1, 1, -3][..],
            ]
        );
    }

    #[test]
    fn powers_and_conjugates() {
        let p = Presentation::parse("gens: x y ; rels:").unwrap();
        assert_eq!(w(&p, "x^-2"), vec![-1, -1]);
        assert_eq!(w(&p, "x^0"), Vec::<i32>::new());
        // x^y = y⁻¹xy
        assert_eq!(w(&p, "x^y"), vec![-2, 1, 2]);
        // Nested groups: (x*y)^2 and conjugation by a parenthesised word.
        assert_eq!(w(&p, "(x*y)^2"), vec![1, 2, 1, 2]);
        assert_eq!(w(&p, "x^(y*x)"), vec![-1, -2, 1, 2, 1]);
        assert_eq!(w(&p, "1"), Vec::<i32>::new());
        assert_eq!(w(&p, "[x,y]^-1"), vec![-2, -1, 2, 1]);
    }

    #[test]
    fn equations_become_relators() {
        let p = Presentation::parse("gens: a c ; rels: a^3=c^2").unwrap();
        assert_eq!(p.relators()[0].letters(), &[1, 1, 1, -2, -2]);
    }

    #[test]
    fn error_cases() {
        assert!(Presentation::parse("rels: a").is_err());
        assert!(Presentation::parse("gens: a ; rels: b").is_err());
        assert!(Presentation::parse("gens: a ; rels: a^").is_err());
        assert!(Presentation::parse("gens: a ; rels: (a").is_err());
        assert!(Presentation::parse("gens: a ; rels: a)").is_err());
        assert!(Presentation::parse("gens: a ; rels: a%b").is_err());
        assert!(Presentation::parse("gens: 9a ; rels:").is_err());
        let p = Presentation::parse("gens: a ; rels:").unwrap();
        assert!(p.word("a=a").is_err());
    }

    #[test]
    fn empty_relator_list_allowed() {
        let p = Presentation::parse("gens: a b ; rels:").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn presentation_text_roundtrip() {
        let p = Presentation::parse("gens: a b ; rels: a^3 b^2 (a*b)^2").unwrap();
        let q = Presentation::parse(&p.to_text()).unwrap();
        assert_eq!(p, q);
    }
}
