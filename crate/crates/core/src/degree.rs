//! Exact degrees of trace-map iterates without expanding them.
//!
//! For `Fⁿ = F ∘ Fⁿ⁻¹` two cheap bounds bracket `deg Fⁿ`:
//!
//! * upper: the component degree vector `Dₙ[i] = max over monomials xᵃyᵇzᶜ
//!   of Fᵢ of a·Dₙ₋₁[0] + b·Dₙ₋₁[1] + c·Dₙ₋₁[2]`;
//! * lower: the degree in `t` of `Fⁿ` restricted to a random affine line,
//!   computed modulo the prime `2⁶¹ − 1`. Reduction and restriction can only
//!   lose degree, so this never overshoots.
//!
//! When the two agree the degree is certified exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::dynamics::TraceMap;
use crate::poly::IntPolynomial;
use crate::sample::rng_from_seed;

const MODULUS: u64 = (1 << 61) - 1;

/// Reduces `x < 2¹²⁸` modulo the Mersenne prime by folding high bits.
fn fold(x: u128) -> u64 {
    let m = MODULUS as u128;
    let x = (x & m) + (x >> 61);
    let x = ((x & m) + (x >> 61)) as u64;
    if x >= MODULUS {
        x - MODULUS
    } else {
        x
    }
}

fn mul_mod(a: u64, b: u64) -> u64 {
    fold(a as u128 * b as u128)
}

/// Dense univariate polynomial over `ℤ/(2⁶¹ − 1)`, no trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Univariate(Vec<u64>);

impl Univariate {
    fn constant(c: u64) -> Univariate {
        Univariate(vec![c]).trimmed()
    }

    fn trimmed(mut self) -> Univariate {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn add_scaled(&mut self, other: &Univariate, c: u64) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (s, &o) in self.0.iter_mut().zip(&other.0) {
            *s = (*s + mul_mod(o, c)) % MODULUS;
        }
    }

    fn mul(&self, other: &Univariate) -> Univariate {
        if self.0.is_empty() || other.0.is_empty() {
            return Univariate(Vec::new());
        }
        let mut out = vec![0u128; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += u128::from(mul_mod(a, b));
            }
        }
        Univariate(out.into_iter().map(fold).collect()).trimmed()
    }
}

fn reduce(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(MODULUS))
        .to_u64()
        .expect("residue fits in u64")
}

/// `poly(images)` over the residue field.
fn evaluate(poly: &IntPolynomial, images: &[Univariate; 3]) -> Univariate {
    let mut powers: [Vec<Univariate>; 3] = Default::default();
    for (k, image) in images.iter().enumerate() {
        let top = poly.degree_in(k).unwrap_or(0) as usize;
        powers[k].push(Univariate::constant(1));
        for e in 1..=top {
            let next = powers[k][e - 1].mul(image);
            powers[k].push(next);
        }
    }
    let mut out = Univariate(Vec::new());
    for (m, c) in poly.terms() {
        let e = m.exponents();
        let term = powers[0][e[0] as usize]
            .mul(&powers[1][e[1] as usize])
            .mul(&powers[2][e[2] as usize]);
        out.add_scaled(&term, reduce(c));
    }
    out.trimmed()
}

/// Bracket on the total degree of one iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub lower: u32,
    pub upper: u32,
}

impl DegreeBounds {
    pub fn exact(&self) -> Option<u32> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// Degree brackets for `F⁰, …, F^{n_max}`. The random line is drawn from
/// `seed`; a different seed can only change the lower bounds.
pub fn certified_degrees(map: &TraceMap, n_max: usize, seed: u64) -> Vec<DegreeBounds> {
    let components = map.components();
    let mut rng = rng_from_seed(seed);
    let mut line: [Univariate; 3] = Default::default();
    for image in &mut line {
        let slope = rng.gen_range(1..MODULUS);
        let offset = rng.gen_range(0..MODULUS);
        *image = Univariate(vec![offset, slope]);
    }

    let mut upper = [1u64; 3];
    let mut out = vec![DegreeBounds { lower: 1, upper: 1 }];
    for _ in 1..=n_max {
        let next_upper: [u64; 3] = std::array::from_fn(|i| {
            components[i]
                .terms()
                .map(|(m, _)| {
                    m.exponents()
                        .iter()
                        .zip(&upper)
                        .map(|(&e, &d)| u64::from(e) * d)
                        .sum()
                })
                .max()
                .unwrap_or(0)
        });
        upper = next_upper;
        line = std::array::from_fn(|i| evaluate(&components[i], &line));
        let lower = line
            .iter()
            .filter_map(Univariate::degree)
            .max()
            .unwrap_or(0);
        out.push(DegreeBounds {
            lower: lower as u32,
            upper: upper.iter().copied().max().unwrap_or(0) as u32,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{induced_trace_map, map_degree_sequence};
    use crate::fixtures;

    #[test]
    fn univariate_arithmetic() {
        let a = Univariate(vec![1, 1]);
        let b = Univariate(vec![MODULUS - 1, 1]);
        assert_eq!(a.mul(&b), Univariate(vec![MODULUS - 1, 0, 1]));
        assert_eq!(reduce(&BigInt::from(-3)), MODULUS - 3);
        assert_eq!(fold(MODULUS as u128), 0);
        assert_eq!(mul_mod(MODULUS - 1, MODULUS - 1), 1);
        assert_eq!(fold(u128::MAX), (u128::MAX % MODULUS as u128) as u64);
        assert_eq!(Univariate::constant(0).degree(), None);
    }

    #[test]
    fn brackets_match_expanded_degrees() {
        for f in [
            fixtures::dehn_twist_x(),
            fixtures::pseudo_anosov(),
            fixtures::pseudo_anosov_trace4(),
        ] {
            let map = induced_trace_map(&f).unwrap();
            let explicit = map_degree_sequence(&map, 3, usize::MAX);
            let bounds = certified_degrees(&map, 3, 11);
            for (b, &d) in bounds.iter().zip(&explicit.degrees) {
                assert!(b.lower <= d && d <= b.upper, "{b:?} vs {d}");
                assert_eq!(b.exact(), Some(d));
            }
        }
    }

    #[test]
    fn pseudo_anosov_degrees_are_fibonacci() {
        let map = induced_trace_map(&fixtures::pseudo_anosov()).unwrap();
        let exact: Vec<Option<u32>> = certified_degrees(&map, 8, 3)
            .iter()
            .map(DegreeBounds::exact)
            .collect();
        let fib = [1, 3, 8, 21, 55, 144, 377, 987, 2584].map(Some);
        assert_eq!(exact, fib);
    }
}
