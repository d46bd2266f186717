//! Words in a free group over a ranked alphabet.
//!
//! Generators `x₁, x₂, …` are written `a, b, …`; their inverses are the
//! uppercase letters `A, B, …`. Whitespace is ignored by the parser.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum supported rank (one letter per generator).
pub const MAX_RANK: usize = 26;

/// A generator `x_i` or its inverse.
///
/// Stored as a signed index: `+i` is `x_i`, `-i` is `x_i⁻¹`, never zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(i16);

impl Generator {
    /// Generator `x_index` (1-based).
    pub fn new(index: usize) -> Generator {
        assert!(
            (1..=MAX_RANK).contains(&index),
            "generator index {index} out of range"
        );
        Generator(index as i16)
    }

    pub fn with_sign(index: usize, inverse: bool) -> Generator {
        let g = Generator::new(index);
        if inverse {
            g.inverse()
        } else {
            g
        }
    }

    /// 1-based generator index.
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        self.0.signum() as i32
    }

    pub fn inverse(self) -> Generator {
        Generator(-self.0)
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + (self.index() - 1) as u8) as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    fn from_char(ch: char) -> Option<Generator> {
        if ch.is_ascii_lowercase() {
            Some(Generator::new((ch as u8 - b'a') as usize + 1))
        } else if ch.is_ascii_uppercase() {
            Some(Generator::new((ch as u8 - b'A') as usize + 1).inverse())
        } else {
            None
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// What is known about the reduction state of a [`Word`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalForm {
    Raw,
    Reduced,
    CyclicallyReduced,
}

/// A word in the generators and their inverses.
///
/// Equality compares letters only; two words spelling the same letters are
/// equal regardless of the recorded [`CanonicalForm`].
#[derive(Clone)]
pub struct Word {
    letters: Vec<Generator>,
    form: CanonicalForm,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state)
    }
}

impl Word {
    pub fn identity() -> Word {
        Word {
            letters: Vec::new(),
            form: CanonicalForm::CyclicallyReduced,
        }
    }

    /// An unreduced word with the given letters.
    pub fn from_letters(letters: Vec<Generator>) -> Word {
        Word {
            letters,
            form: CanonicalForm::Raw,
        }
    }

    pub fn generator(index: usize) -> Word {
        Word {
            letters: vec![Generator::new(index)],
            form: CanonicalForm::CyclicallyReduced,
        }
    }

    /// Parses the letter encoding, rejecting letters beyond `rank`.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        let mut letters = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            if ch.is_whitespace() {
                continue;
            }
            let g = Generator::from_char(ch).ok_or(Error::UnknownCharacter { ch, pos })?;
            if g.index() > rank {
                return Err(Error::IndexExceedsRank {
                    ch,
                    index: g.index(),
                    rank,
                });
            }
            letters.push(g);
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.letters
    }

    pub fn form(&self) -> CanonicalForm {
        self.form
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring in the word (0 for the identity).
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|g| g.index()).max().unwrap_or(0)
    }

    /// Free reduction: cancels adjacent `g g⁻¹` pairs until none remain.
    pub fn reduce(&self) -> Word {
        if self.form != CanonicalForm::Raw {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.letters.len());
        push_reduced(&mut out, self.letters.iter().copied());
        Word {
            letters: out,
            form: CanonicalForm::Reduced,
        }
    }

    /// Cyclically reduced representative of the conjugacy class, with its length.
    pub fn cyclic_reduce(&self) -> (Word, usize) {
        if self.form == CanonicalForm::CyclicallyReduced {
            return (self.clone(), self.len());
        }
        let reduced = self.reduce();
        let letters = &reduced.letters;
        let (mut lo, mut hi) = (0, letters.len());
        while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        let out = Word {
            letters: letters[lo..hi].to_vec(),
            form: CanonicalForm::CyclicallyReduced,
        };
        let len = out.len();
        (out, len)
    }

    /// Length of the cyclically reduced representative.
    pub fn cyclic_length(&self) -> usize {
        self.cyclic_reduce().1
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
            form: self.form,
        }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.reduce().letters;
        push_reduced(&mut out, other.reduce().letters.into_iter());
        Word {
            letters: out,
            form: CanonicalForm::Reduced,
        }
    }

    /// Reduced conjugate `u · self · u⁻¹`.
    pub fn conjugate(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inverse())
    }

    /// Reduced power `selfⁿ`.
    pub fn pow(&self, n: usize) -> Word {
        (0..n).fold(Word::identity(), |acc, _| acc.mul(self))
    }

    /// Exponent-sum vector of length `rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for g in &self.letters {
            sums[g.index() - 1] += g.sign() as i64;
        }
        sums
    }

    pub(crate) fn from_reduced(letters: Vec<Generator>) -> Word {
        Word {
            letters,
            form: CanonicalForm::Reduced,
        }
    }
}

/// Appends letters to an already reduced buffer, cancelling as it goes.
pub(crate) fn push_reduced(out: &mut Vec<Generator>, letters: impl Iterator<Item = Generator>) {
    for g in letters {
        if out.last() == Some(&g.inverse()) {
            out.pop();
        } else {
            out.push(g);
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.letters {
            write!(f, "{}", g.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "Word(1)")
        } else {
            write!(f, "Word({self})")
        }
    }
}

/// All cyclically reduced words of the given exact length, in lexicographic
/// letter order.
pub fn cyclically_reduced_words(rank: usize, len: usize) -> Vec<Word> {
    let alphabet: Vec<Generator> = (1..=rank)
        .flat_map(|i| [Generator::new(i), Generator::new(i).inverse()])
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(len);
    fn extend(alphabet: &[Generator], len: usize, stack: &mut Vec<Generator>, out: &mut Vec<Word>) {
        if stack.len() == len {
            if len < 2 || stack[0] != stack[len - 1].inverse() {
                out.push(Word {
                    letters: stack.clone(),
                    form: CanonicalForm::CyclicallyReduced,
                });
            }
            return;
        }
        for &g in alphabet {
            if stack.last() == Some(&g.inverse()) {
                continue;
            }
            stack.push(g);
            extend(alphabet, len, stack, out);
            stack.pop();
        }
    }
    extend(&alphabet, len, &mut stack, &mut out);
    out
}
