//! Words in the generators `c_1, …, c_n` of the punctured-sphere group and
//! the pants curves `b_i`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::dd::DdMat;
use crate::error::{Error, Result};
use crate::hyperbolic::Isometry;

/// One letter `c_i^{±1}`; `generator` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    fn flip(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }
}

/// A word in the free group on `c_1, c_2, …`. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word, cancelling adjacent inverse pairs.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.flip()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// The single generator `c_i`.
    pub fn generator(i: usize) -> Self {
        Word {
            letters: vec![Letter::new(i, false)],
        }
    }

    /// `c_i c_{i+1} ⋯ c_j` for `i ≤ j`.
    pub fn contiguous(i: usize, j: usize) -> Self {
        Word::from_letters((i..=j).map(|k| Letter::new(k, false)))
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

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.flip()).collect(),
        }
    }

    /// Largest generator index used, or 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// Left-to-right product of the images `gens[i-1]^{±1}`, accumulated in
    /// double-double and rounded once.
    pub fn evaluate(&self, gens: &[Isometry]) -> Result<Isometry> {
        let gens: Vec<DdMat> = gens.iter().map(|g| DdMat::from_f64(g.entries())).collect();
        Ok(Isometry::from_raw(self.evaluate_dd(&gens)?.round()))
    }

    pub(crate) fn evaluate_dd(&self, gens: &[DdMat]) -> Result<DdMat> {
        let mut acc = DdMat::IDENTITY;
        for l in &self.letters {
            let m = gens
                .get(l.generator.wrapping_sub(1))
                .ok_or(Error::Index {
                    index: l.generator,
                    len: gens.len(),
                })?;
            acc = acc.mul(&if l.inverse { m.adjugate() } else { *m });
        }
        Ok(acc)
    }
}

/// Free function form of [`Word::evaluate`].
pub fn evaluate(w: &Word, gens: &[Isometry]) -> Result<Isometry> {
    w.evaluate(gens)
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&rhs.letters).copied())
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "c{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `c3^-1*c2^-1*c1^-1`; `1` or an empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for tok in s.split('*') {
            let tok = tok.trim();
            let body = tok
                .strip_prefix('c')
                .ok_or_else(|| Error::Parse(format!("expected 'c<index>', got '{tok}'")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.trim()),
                None => (body, "1"),
            };
            let generator: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index in '{tok}'")))?;
            if generator == 0 {
                return Err(Error::Parse("generator indices start at 1".into()));
            }
            let inverse = match exp {
                "1" | "+1" => false,
                "-1" => true,
                _ => return Err(Error::Parse(format!("exponent must be 1 or -1 in '{tok}'"))),
            };
            letters.push(Letter { generator, inverse });
        }
        Ok(Word::from_letters(letters))
    }
}

/// The standard pants decomposition curves of the `n`-punctured sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PantsCurves {
    n: usize,
    b_words: Vec<Word>,
}

impl PantsCurves {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `b_1, …, b_{n-3}`.
    pub fn b_words(&self) -> &[Word] {
        &self.b_words
    }

    /// `b_i` for `0 ≤ i ≤ n-2`, where `b_0 = c_1⁻¹` and `b_{n-2} = c_n`.
    pub fn b(&self, i: usize) -> Result<Word> {
        match i {
            0 => Ok(Word::generator(1).inverse()),
            i if i == self.n - 2 => Ok(Word::generator(self.n)),
            i if i < self.n - 2 => Ok(self.b_words[i - 1].clone()),
            _ => Err(Error::Index {
                index: i,
                len: self.n - 1,
            }),
        }
    }
}

/// `b_i = c_{i+1}⁻¹ c_i⁻¹ ⋯ c_1⁻¹` for `i = 1, …, n-3`.
pub fn make_pants_curves(n: usize) -> Result<PantsCurves> {
    if n < 3 {
        return Err(Error::Domain(format!("need at least 3 punctures, got {n}")));
    }
    let b_words = (1..=n - 3)
        .map(|i| Word::contiguous(1, i + 1).inverse())
        .collect();
    Ok(PantsCurves { n, b_words })
}
