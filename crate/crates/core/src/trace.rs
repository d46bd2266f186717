//! Trace polynomials of words in F₂ = ⟨X, Y⟩.
//!
//! For every representation φ: F₂ → SL₂, `tr φ(w)` is an integer polynomial
//! in `x = tr φ(X)`, `y = tr φ(Y)`, `z = tr φ(XY)`. The engine reduces a
//! cyclic word with three identities, each of which strictly decreases the
//! pair (length, number of inverse letters) once the word is oriented so that
//! at most half its letters are inverses:
//!
//! * square:  `tr(AAW) = tr(A)·tr(AW) − tr(W)` for a letter `A`;
//! * inverse: `tr(R·A⁻¹) = tr(R)·tr(A) − tr(R·A)` for a letter `A`;
//! * alternating: `tr((XY)ᵏ) = z·tr((XY)ᵏ⁻¹) − tr((XY)ᵏ⁻²)`.
//!
//! A cyclically reduced word with no square and no inverse letter is a
//! rotation of `(XY)ᵏ`, so one of the three always applies. Results are
//! memoized on [`TraceKey`], since traces are invariant under conjugation and
//! inversion in SL₂.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{variables, IntPolynomial, Variables};
use crate::word::{Generator, Word};

/// The coordinate ring ℤ[x, y, z].
pub fn trace_variables() -> Variables {
    thread_local! {
        static VARS: Variables = variables(&["x", "y", "z"]);
    }
    VARS.with(|v| v.clone())
}

/// Canonical representative of a cyclic word up to rotation and inversion:
/// the lexicographically least rotation of `w` or `w⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceKey(Vec<Generator>);

impl TraceKey {
    pub fn new(w: &Word) -> TraceKey {
        let (c, _) = w.cyclic_reduce();
        TraceKey(canonical_rotation(c.letters()))
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }
}

fn canonical_rotation(letters: &[Generator]) -> Vec<Generator> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let inverse: Vec<Generator> = letters.iter().rev().map(|g| g.inverse()).collect();
    let mut best: Option<Vec<Generator>> = None;
    for source in [letters, &inverse[..]] {
        for r in 0..n {
            let cand: Vec<Generator> = source[r..].iter().chain(&source[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("non-empty")
}

/// Memoizing trace engine. One engine may be reused across many words; the
/// memo is private to the engine.
#[derive(Debug)]
pub struct TraceEngine {
    vars: Variables,
    memo: HashMap<TraceKey, IntPolynomial>,
}

impl Default for TraceEngine {
    fn default() -> Self {
        TraceEngine::new()
    }
}

impl TraceEngine {
    pub fn new() -> TraceEngine {
        TraceEngine {
            vars: trace_variables(),
            memo: HashMap::new(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Trace polynomial of a rank-2 word.
    pub fn trace(&mut self, w: &Word) -> Result<IntPolynomial> {
        if w.max_index() > 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: w.max_index(),
            });
        }
        let (c, _) = w.cyclic_reduce();
        Ok(self.trace_cyclic(c.letters()))
    }

    fn var(&self, g: Generator) -> IntPolynomial {
        IntPolynomial::var(&self.vars, g.index() - 1)
    }

    fn trace_cyclic(&mut self, letters: &[Generator]) -> IntPolynomial {
        let word = Word::from_letters(letters.to_vec());
        let (c, n) = word.cyclic_reduce();
        let letters = c.letters();
        match n {
            0 => return IntPolynomial::constant(&self.vars, 2),
            1 => return self.var(letters[0]),
            _ => {}
        }
        let key = TraceKey(canonical_rotation(letters));
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        // Expand the orientation with fewer inverse letters; the inverse rule
        // then strictly lowers min(#inverse, #positive).
        let inverses = letters.iter().filter(|g| g.is_inverse()).count();
        let oriented = if 2 * inverses > n {
            c.inverse().into_letters()
        } else {
            letters.to_vec()
        };
        let result = self.expand(&oriented);
        self.memo.insert(key, result.clone());
        result
    }

    fn expand(&mut self, letters: &[Generator]) -> IntPolynomial {
        let n = letters.len();
        let rotated = |start: usize| -> Vec<Generator> {
            letters[start..]
                .iter()
                .chain(&letters[..start])
                .copied()
                .collect()
        };

        if let Some(i) = (0..n).find(|&i| letters[i] == letters[(i + 1) % n]) {
            // A A W
            let r = rotated(i);
            let a = self.var(r[0]);
            let aw = self.trace_cyclic(&r[1..]);
            let w = self.trace_cyclic(&r[2..]);
            return &(&a * &aw) - &w;
        }

        if let Some(i) = (0..n).find(|&i| letters[i].is_inverse()) {
            // R A⁻¹
            let r = rotated((i + 1) % n);
            let inv = r[n - 1];
            let rest = &r[..n - 1];
            let tr_rest = self.trace_cyclic(rest);
            let mut flipped = rest.to_vec();
            flipped.push(inv.inverse());
            let tr_flipped = self.trace_cyclic(&flipped);
            return &(&tr_rest * &self.var(inv)) - &tr_flipped;
        }

        // Positive and square-free: a rotation of (XY)^k with k = n/2.
        debug_assert!(n.is_multiple_of(2));
        let z = IntPolynomial::var(&self.vars, 2);
        if n == 2 {
            return z;
        }
        let prev = self.trace_cyclic(&letters[..n - 2]);
        let prev2 = self.trace_cyclic(&letters[..n - 4]);
        &(&z * &prev) - &prev2
    }
}

/// Trace polynomial of a rank-2 word with a fresh engine.
pub fn trace_polynomial(w: &Word) -> Result<IntPolynomial> {
    TraceEngine::new().trace(w)
}
