use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite (possibly empty) string of answer symbols.
///
/// Symbols are indices into an answer alphabet; for Hardy's game the
/// alphabet is `{0, 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnswerString(Vec<u8>);

impl Serialize for AnswerString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl AnswerString {
    pub fn new(symbols: Vec<u8>) -> Self {
        Self(symbols)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Parses a string of binary digits. Panics on anything else; meant for
    /// literals in tests and examples.
    pub fn bits(s: &str) -> Self {
        s.parse().expect("binary literal")
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, symbol: u8) {
        self.0.push(symbol);
    }

    /// Label form: symbol labels concatenated when every label is a single
    /// character, comma separated otherwise.
    pub fn render(&self, alphabet: &[String]) -> String {
        let sep = if single_char(alphabet) { "" } else { "," };
        self.0
            .iter()
            .map(|&s| alphabet[s as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Inverse of [`render`](Self::render).
    pub fn parse(label: &str, alphabet: &[String]) -> Result<Self> {
        if label.is_empty() {
            return Ok(Self::empty());
        }
        let lookup = |tok: &str| {
            alphabet
                .iter()
                .position(|l| l == tok)
                .map(|p| p as u8)
                .ok_or_else(|| {
                    Error::Schema(format!("'{tok}' is not an answer symbol in {label:?}"))
                })
        };
        let symbols = if single_char(alphabet) {
            let mut buf = [0u8; 4];
            label
                .chars()
                .map(|c| lookup(c.encode_utf8(&mut buf)))
                .collect::<Result<Vec<_>>>()?
        } else {
            label.split(',').map(lookup).collect::<Result<Vec<_>>>()?
        };
        Ok(Self(symbols))
    }

    /// Checks every symbol lies below `size`.
    pub fn check_alphabet(&self, size: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s as usize >= size) {
            Some(&symbol) => Err(Error::Alphabet { symbol, size }),
            None => Ok(()),
        }
    }
}

fn single_char(alphabet: &[String]) -> bool {
    alphabet.iter().all(|l| l.chars().count() == 1)
}

impl From<Vec<u8>> for AnswerString {
    fn from(v: Vec<u8>) -> Self {
        Self(v)
    }
}

impl FromStr for AnswerString {
    type Err = Error;

    /// Decimal digits, one symbol per character.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parameter(format!("'{c}' is not a digit symbol")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for AnswerString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn render_and_parse() {
        let bin = labels(&["0", "1"]);
        let s = AnswerString::bits("0110");
        assert_eq!(s.render(&bin), "0110");
        assert_eq!(AnswerString::parse("0110", &bin).unwrap(), s);
        assert_eq!(
            AnswerString::parse("", &bin).unwrap(),
            AnswerString::empty()
        );
        assert!(AnswerString::parse("012", &bin).is_err());

        let words = labels(&["lo", "hi"]);
        let w = AnswerString::new(vec![1, 0, 1]);
        assert_eq!(w.render(&words), "hi,lo,hi");
        assert_eq!(AnswerString::parse("hi,lo,hi", &words).unwrap(), w);
    }

    #[test]
    fn alphabet_check() {
        assert!(AnswerString::bits("0101").check_alphabet(2).is_ok());
        let err = AnswerString::new(vec![0, 3]).check_alphabet(2).unwrap_err();
        assert!(matches!(err, Error::Alphabet { symbol: 3, size: 2 }));
    }
}
