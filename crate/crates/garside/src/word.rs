//! Raw braid words: signed sequences of Artin generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the Artin generators of the braid group on `n` strands.
///
/// Letters are nonzero integers: `k` stands for the generator crossing
/// strands `k` and `k+1`, `-k` for its inverse. No reduction is performed
/// on construction; the word is kept exactly as given.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::StrandCount(n));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > n - 1 {
                return Err(Error::GeneratorRange {
                    index: l as i64,
                    max: n - 1,
                });
            }
        }
        Ok(BraidWord { n, letters })
    }

    /// The empty word (identity braid).
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// The single letter σ_i or σ_i⁻¹.
    pub fn generator(n: usize, index: usize, inverse: bool) -> Result<Self> {
        let l = index as i32;
        Self::new(n, vec![if inverse { -l } else { l }])
    }

    /// Parse whitespace-separated nonzero integers.
    pub fn parse(n: usize, input: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in input.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| Error::WordSyntax(format!("bad letter `{tok}`")))?;
            letters.push(l);
        }
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// Iterate letters as (1-based generator index, is_inverse).
    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.letters
            .iter()
            .map(|&l| (l.unsigned_abs() as usize, l < 0))
    }

    /// The reversed, sign-flipped word; represents the inverse braid.
    pub fn inverse_word(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    pub fn repeat(&self, times: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { n: self.n, letters }
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}
