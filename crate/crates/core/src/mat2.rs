//! 2×2 matrices over an exact commutative ring, and word evaluation.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::word::Word;

/// Row-major 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub trait Ring:
    Clone
    + Zero
    + One
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn diagonal(p: T, q: T) -> Self {
        Mat2::new(p, T::zero(), T::zero(), q)
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }

    /// Adjugate; the inverse when the determinant is one.
    pub fn adjugate(&self) -> Self {
        Mat2::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Mat2::identity(), |acc, _| acc.mul(self))
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: (T, T)) -> (T, T) {
        (
            self.a.clone() * v.0.clone() + self.b.clone() * v.1.clone(),
            self.c.clone() * v.0 + self.d.clone() * v.1,
        )
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

/// Evaluates a word under the representation sending `x_i ↦ images[i-1]`.
/// `inverses[i-1]` must be the inverse of `images[i-1]`.
pub fn eval_word<T: Ring>(w: &Word, images: &[Mat2<T>], inverses: &[Mat2<T>]) -> Mat2<T> {
    w.letters().iter().fold(Mat2::identity(), |acc, g| {
        let table = if g.is_inverse() { inverses } else { images };
        acc.mul(&table[g.index() - 1])
    })
}
