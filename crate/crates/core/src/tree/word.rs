//! Reduced words in the free group on `a`, `b`. Capitals denote inverses.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// One of the four generators `a`, `A = a⁻¹`, `b`, `B = b⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const A: Letter = Letter(0);
    pub const A_INV: Letter = Letter(1);
    pub const B: Letter = Letter(2);
    pub const B_INV: Letter = Letter(3);

    pub const ALL: [Letter; 4] = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::A_INV),
            'b' => Some(Letter::B),
            'B' => Some(Letter::B_INV),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        ['a', 'A', 'b', 'B'][self.index()]
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// Fails unless the letters are already reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Word> {
        if letters.windows(2).any(|w| w[1] == w[0].inverse()) {
            return Err(Error::InvalidAddress("word contains a letter followed by its inverse".to_string()));
        }
        Ok(Word(letters))
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self · l`, reduced.
    pub fn push(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        if v.last() == Some(&l.inverse()) {
            v.pop();
        } else {
            v.push(l);
        }
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut out = Word::identity();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `(u, c)` with `self = u c u⁻¹` and `c` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let v = &self.0;
        let mut k = 0;
        while 2 * k + 1 < v.len() && v[v.len() - 1 - k] == v[k].inverse() {
            k += 1;
        }
        (Word(v[..k].to_vec()), Word(v[k..v.len() - k].to_vec()))
    }

    /// Rotation moving the first letter to the end.
    pub fn rotate_left(&self) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            v.rotate_left(1);
        }
        Word(v)
    }

    pub fn rotate_right(&self) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            v.rotate_right(1);
        }
        Word(v)
    }

    /// Shortest `r` with `self = r^k`.
    pub fn primitive_root(&self) -> Word {
        let n = self.0.len();
        for d in 1..=n {
            if n % d == 0 && (0..n).all(|i| self.0[i] == self.0[i % d]) {
                return Word(self.0[..d].to_vec());
            }
        }
        self.clone()
    }

    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0.iter().zip(other.0.iter()).take_while(|(x, y)| x == y).count()
    }

    /// Parses `e` (or the empty string) as the identity; other input must be
    /// a reduced word over `a`, `A`, `b`, `B`.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::identity());
        }
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(alloc::format!("bad letter {c:?} in word {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::from_reduced(letters)
    }

    /// Text form with the empty word written as `""`.
    pub fn letters_string(&self) -> String {
        self.0.iter().map(|l| l.to_char()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        f.write_str(&self.letters_string())
    }
}
