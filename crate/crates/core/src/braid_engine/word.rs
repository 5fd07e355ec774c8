use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BraidError;

/// A braid word on `strands` strands: `k` stands for `sigma_k`, `-k` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::Index { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Parses `"s1 s2 s1^-1"`, `"1 2 -1"` or `"σ1σ2σ1⁻¹"`.
    pub fn parse(strands: usize, s: &str) -> Result<Self, BraidError> {
        let bad = || BraidError::Parse(s.to_string());
        let norm = s.replace("⁻¹", "^-1").replace("sigma", "s").replace('σ', " s");
        let mut letters = Vec::new();
        for tok in norm.split(|c: char| c.is_whitespace() || c == ',' || c == '*' || c == '·').filter(|t| !t.is_empty()) {
            for part in tok.split('s').filter(|p| !p.is_empty()) {
                let (num, inv) = match part.strip_suffix("^-1").or_else(|| part.strip_suffix('\'')) {
                    Some(n) => (n, true),
                    None => (part, false),
                };
                let k: i32 = num.parse().map_err(|_| bad())?;
                letters.push(if inv { -k } else { k });
            }
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `self` followed by `other` (as operators, `other` acts after `self`).
    pub fn then(&self, other: &BraidWord) -> Self {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { strands: self.strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// `"n: word"`, e.g. `"4: s1 s2 s1"`.
    fn from_str(s: &str) -> Result<Self, BraidError> {
        let (n, w) = s.split_once(':').ok_or_else(|| BraidError::Parse(s.to_string()))?;
        let n = n.trim().parse().map_err(|_| BraidError::Parse(s.to_string()))?;
        Self::parse(n, w)
    }
}
