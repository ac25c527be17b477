//! The infinite dihedral group W(Ã1) on letters s1 (0) and s0 (1).

use std::fmt;
use std::str::FromStr;

use crate::coxeter::{CoxeterGroup, Element};
use crate::error::{Error, Result};

/// Reduced alternating word. Letter 0 is s1 (Coxeter generator 1), letter 1
/// is s0 (generator 2).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffWeyl(Vec<u8>);

impl AffWeyl {
    pub fn identity() -> Self {
        AffWeyl(Vec::new())
    }

    /// Alternating word of length `len` starting with `first`.
    pub fn alternating(first: u8, len: usize) -> Self {
        AffWeyl((0..len).map(|i| first ^ (i % 2) as u8).collect())
    }

    /// Reduces any word in the letters 0 and 1; only s² = 1 applies.
    pub fn from_letters(letters: &[u8]) -> Self {
        let mut w: Vec<u8> = Vec::with_capacity(letters.len());
        for &a in letters {
            if w.last() == Some(&a) {
                w.pop();
            } else {
                w.push(a);
            }
        }
        AffWeyl(w)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Self {
        AffWeyl(self.0.iter().rev().copied().collect())
    }

    pub fn mul(&self, o: &AffWeyl) -> Self {
        AffWeyl::from_letters(&[self.0.as_slice(), o.0.as_slice()].concat())
    }

    pub fn rmul(&self, letter: u8) -> Self {
        AffWeyl::from_letters(&[self.0.as_slice(), &[letter]].concat())
    }

    /// The corresponding element of `g`, which must be built on the Ã1 matrix.
    pub fn to_element(&self, g: &CoxeterGroup) -> Element {
        g.reduce_letters(&self.0)
    }

    pub fn from_element(x: &Element) -> Self {
        AffWeyl::from_letters(x.letters())
    }
}

pub fn letter_name(a: u8) -> &'static str {
    if a == 0 {
        "s1"
    } else {
        "s0"
    }
}

impl fmt::Display for AffWeyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let names: Vec<&str> = self.0.iter().map(|&a| letter_name(a)).collect();
        f.write_str(&names.join(" "))
    }
}

impl FromStr for AffWeyl {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',' || c == '.').filter(|t| !t.is_empty()) {
            match tok {
                "e" | "1" if letters.is_empty() && s.trim() == tok => {}
                "s1" => letters.push(0),
                "s0" => letters.push(1),
                other => return Err(Error::Parse(format!("bad affine Weyl letter {other:?}"))),
            }
        }
        Ok(AffWeyl::from_letters(&letters))
    }
}
