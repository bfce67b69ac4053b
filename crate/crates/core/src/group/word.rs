use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of the symmetric generating set: generator `index`, inverted or not.
/// Letters are numbered `2 * index + inverse` throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(pub u32);

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Letter {
        Letter(2 * gen as u32 + inverse as u32)
    }

    pub fn gen(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inv(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word::default()
    }

    /// Whitespace-separated generator names, each optionally suffixed by an
    /// integer exponent `^k`. Relator strings in group files use the same form.
    pub fn parse(s: &str, names: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        if s.trim() == "1" {
            return Ok(Word { letters });
        }
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Precondition(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            let l = Letter::new(g, exp < 0);
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Word { letters }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let mut toks: Vec<String> = Vec::new();
        for run in self.word.letters.chunk_by(|x, y| x == y) {
            let n = &self.names[run[0].gen()];
            let e = if run[0].is_inverse() { -(run.len() as i64) } else { run.len() as i64 };
            toks.push(if e == 1 { n.clone() } else { format!("{n}^{e}") });
        }
        write!(f, "{}", toks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parse_and_print() {
        let w = Word::parse("a b^-1 a^-1 b", &names()).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.display(&names()).to_string(), "a b^-1 a^-1 b");
        assert_eq!(w.inverse().display(&names()).to_string(), "b^-1 a b a^-1");
        assert!(matches!(Word::parse("a c", &names()), Err(Error::UnknownGenerator(_))));
        assert_eq!(Word::parse("a^3 b^-2 a^0", &names()).unwrap(), Word::parse("a a a b^-1 b^-1", &names()).unwrap());
        assert!(Word::parse("a^x", &names()).is_err());
    }

    #[test]
    fn reduction() {
        let w = Word::parse("a b b^-1 a^-1 b", &names()).unwrap();
        assert!(!w.is_freely_reduced());
        assert_eq!(w.free_reduce().display(&names()).to_string(), "b");
    }
}
