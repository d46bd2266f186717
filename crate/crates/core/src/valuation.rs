//! p-adic valuations on ℚ and 𝔭-adic valuations on ℚ(i).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Value of a valuation: an integer, or `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational number.
pub fn vp(q: &BigRational, p: u64) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    Valuation::Finite(int_valuation(q.numer(), &p) - int_valuation(q.denom(), &p))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    (n + 1..)
        .find(|&k| is_prime(k))
        .expect("primes are unbounded")
}

/// Exact element `re + im·i` of ℚ(i); rational numbers have `im = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactScalar {
    pub fn rational(q: BigRational) -> ExactScalar {
        ExactScalar {
            re: q,
            im: BigRational::zero(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> ExactScalar {
        ExactScalar::rational(BigRational::from_integer(n.into()))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> ExactScalar {
        ExactScalar { re, im }
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> ExactScalar {
        ExactScalar::gaussian(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// On zero.
    pub fn recip(&self) -> ExactScalar {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        ExactScalar::gaussian(&self.re / &n, -(&self.im / &n))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: ExactScalar) -> ExactScalar {
        ExactScalar::gaussian(self.re + o.re, self.im + o.im)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: ExactScalar) -> ExactScalar {
        ExactScalar::gaussian(self.re - o.re, self.im - o.im)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        if self.is_rational() && o.is_rational() {
            return ExactScalar::rational(self.re * o.re);
        }
        ExactScalar::gaussian(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: ExactScalar) -> ExactScalar {
        self * o.recip()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::gaussian(-self.re, -self.im)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::integer(0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::integer(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValuationKind {
    RationalPrime,
    GaussianSplitPrime,
}

/// Which valuation to use: `v_p` on ℚ, or `ν_𝔭` on ℚ(i) for `𝔭 = (a + bi)`
/// with `a² + b² = p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ValuationSpec {
    pub kind: ValuationKind,
    pub p: u64,
    pub a: i64,
    pub b: i64,
}

impl ValuationSpec {
    pub fn rational(p: u64) -> Result<ValuationSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ValuationSpec {
            kind: ValuationKind::RationalPrime,
            p,
            a: 0,
            b: 0,
        })
    }

    pub fn gaussian(p: u64, a: i64, b: i64) -> Result<ValuationSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if i128::from(a) * i128::from(a) + i128::from(b) * i128::from(b) != i128::from(p) {
            return Err(Error::NotSumOfSquares { p, a, b });
        }
        Ok(ValuationSpec {
            kind: ValuationKind::GaussianSplitPrime,
            p,
            a,
            b,
        })
    }

    pub fn valuation(&self, z: &ExactScalar) -> Result<Valuation> {
        match self.kind {
            ValuationKind::RationalPrime => {
                if !z.is_rational() {
                    return Err(Error::ValuationKind(
                        "p-adic valuation of a non-rational scalar",
                    ));
                }
                Ok(vp(&z.re, self.p))
            }
            ValuationKind::GaussianSplitPrime => Ok(gaussian_valuation(z, self)),
        }
    }

    /// `log p`, the scale of `|·| = p^{-ν(·)}`.
    pub fn log_base(&self) -> f64 {
        (self.p as f64).ln()
    }
}

/// Number of times the Gaussian integer `u + vi` is exactly divisible by `a + bi`.
fn gaussian_int_valuation(mut u: BigInt, mut v: BigInt, a: &BigInt, b: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!(u.is_zero() && v.is_zero()));
    let mut count = 0;
    loop {
        // (u + vi)(a - bi) = (ua + vb) + (va - ub)i; divisible by a + bi iff p divides both parts.
        let re = &u * a + &v * b;
        let im = &v * a - &u * b;
        let (qr, rr) = re.div_rem(p);
        let (qi, ri) = im.div_rem(p);
        if !rr.is_zero() || !ri.is_zero() {
            return count;
        }
        u = qr;
        v = qi;
        count += 1;
    }
}

/// `ν_𝔭(z)` for `𝔭 = (a + bi)`: clear denominators, then count exact
/// divisions by `a + bi` of the numerator and of the common denominator.
pub fn gaussian_valuation(z: &ExactScalar, spec: &ValuationSpec) -> Valuation {
    if z.is_zero() {
        return Valuation::Infinite;
    }
    let (a, b, p) = (
        BigInt::from(spec.a),
        BigInt::from(spec.b),
        BigInt::from(spec.p),
    );
    let denom = z.re.denom().lcm(z.im.denom());
    let u = z.re.numer() * (&denom / z.re.denom());
    let v = z.im.numer() * (&denom / z.im.denom());
    let top = gaussian_int_valuation(u, v, &a, &b, &p);
    let bottom = gaussian_int_valuation(denom, BigInt::zero(), &a, &b, &p);
    Valuation::Finite(top - bottom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn g(re: (i64, i64), im: (i64, i64)) -> ExactScalar {
        ExactScalar::gaussian(q(re.0, re.1), q(im.0, im.1))
    }

    #[test]
    fn vp_examples() {
        assert_eq!(vp(&q(8, 1), 2), Valuation::Finite(3));
        assert_eq!(vp(&q(1, 25), 5), Valuation::Finite(-2));
        assert_eq!(vp(&q(0, 1), 7), Valuation::Infinite);
        assert_eq!(vp(&q(-12, 7), 3), Valuation::Finite(1));
    }

    #[test]
    fn gaussian_examples() {
        let spec = ValuationSpec::gaussian(5, 2, 1).unwrap();
        assert_eq!(
            gaussian_valuation(&ExactScalar::integer(1), &spec),
            Valuation::Finite(0)
        );
        assert_eq!(
            gaussian_valuation(&ExactScalar::integer(5), &spec),
            Valuation::Finite(1)
        );
        let pi = g((2, 1), (1, 1));
        let pi_sq_over_5 = (pi.clone() * pi.clone()) / ExactScalar::integer(5);
        assert_eq!(
            gaussian_valuation(&pi_sq_over_5, &spec),
            Valuation::Finite(1)
        );
        // The conjugate prime is a unit at 𝔭.
        assert_eq!(gaussian_valuation(&pi.conj(), &spec), Valuation::Finite(0));
        assert_eq!(
            gaussian_valuation(&ExactScalar::zero(), &spec),
            Valuation::Infinite
        );
    }

    #[test]
    fn valuation_spec_validation() {
        assert!(matches!(
            ValuationSpec::rational(100),
            Err(Error::NotPrime(100))
        ));
        assert!(matches!(
            ValuationSpec::gaussian(13, 2, 2),
            Err(Error::NotSumOfSquares { .. })
        ));
        assert!(ValuationSpec::gaussian(13, 3, 2).is_ok());
        let spec = ValuationSpec::rational(3).unwrap();
        assert!(spec.valuation(&g((1, 1), (1, 1))).is_err());
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(next_prime(101), 103);
        assert_eq!(next_prime(1), 2);
    }

    #[test]
    fn scalar_field_ops() {
        let z = g((3, 2), (-1, 5));
        assert_eq!(z.clone() * z.recip(), ExactScalar::one());
        assert_eq!(z.clone() - z.clone(), ExactScalar::zero());
        assert_eq!(z.conj().conj(), z);
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-2000i64..2000, 1i64..2000).prop_map(|(n, d)| q(n, d))
    }

    fn arb_gaussian() -> impl Strategy<Value = ExactScalar> {
        (arb_rational(), arb_rational()).prop_map(|(re, im)| ExactScalar::gaussian(re, im))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn rational_multiplicative_and_ultrametric(a in arb_rational(), b in arb_rational(), pi in 0usize..4) {
            let p = [2u64, 3, 5, 101][pi];
            prop_assert_eq!(vp(&(&a * &b), p), vp(&a, p) + vp(&b, p));
            prop_assert!(vp(&(&a + &b), p) >= vp(&a, p).min(vp(&b, p)));
        }

        #[test]
        fn gaussian_multiplicative_and_ultrametric(a in arb_gaussian(), b in arb_gaussian(), pi in 0usize..3) {
            let spec = [
                ValuationSpec::gaussian(5, 2, 1).unwrap(),
                ValuationSpec::gaussian(13, 3, 2).unwrap(),
                ValuationSpec::gaussian(2, 1, 1).unwrap(),
            ][pi];
            let (va, vb) = (gaussian_valuation(&a, &spec), gaussian_valuation(&b, &spec));
            prop_assert_eq!(gaussian_valuation(&(a.clone() * b.clone()), &spec), va + vb);
            prop_assert!(gaussian_valuation(&(a + b), &spec) >= va.min(vb));
        }
    }
}
