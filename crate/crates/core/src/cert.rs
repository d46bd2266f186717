//! Translation-length certificates on the Bruhat–Tits tree.
//!
//! A matrix `A ∈ SL₂(K)` over a field with valuation ν translates the tree
//! by `−2·min(ν(tr A), 0)`. The representation built here sends `x_i` to
//! `Sⁱ⁻¹ D S⁻⁽ⁱ⁻¹⁾` with `D = diag(1/p, p)`; its generators are hyperbolic
//! with translation length 2 and axes meeting in a single vertex, so every
//! word `w` translates by exactly `2·|w|_red`. The certificate checks this by
//! exact matrix products, and the lower bound on algebraic entropy follows
//! from `ν(tr Ψ(w)) = −|w|_red`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::growth::growth_sequence;
use crate::mat2::{eval_word, Mat2};
use crate::rate::trailing_rate;
use crate::sample::{random_cyclically_reduced_word, rng_from_seed};
use crate::valuation::{next_prime, ExactScalar, Valuation, ValuationKind, ValuationSpec};
use crate::word::{cyclically_reduced_words, Word};

/// Default prime for the rational representation.
pub const DEFAULT_PRIME: u64 = 101;

/// Default Gaussian split prime `5 = (2 + i)(2 − i)`.
pub const DEFAULT_GAUSSIAN: (u64, i64, i64) = (5, 2, 1);

/// Iterates longer than this are not re-certified by matrix products in
/// [`lower_bound_rate`]; their traces follow from the certified identity.
pub const CERTIFY_LENGTH_CAP: usize = 256;

/// Default conjugating matrix `[[2, 1], [1, 1]]`.
pub fn default_s() -> Mat2<BigInt> {
    Mat2::new(2.into(), 1.into(), 1.into(), 1.into())
}

/// `diag(1/p, p)`.
pub fn rational_hyperbolic(p: u64) -> Mat2<ExactScalar> {
    let p = BigRational::from_integer(p.into());
    Mat2::diagonal(ExactScalar::rational(p.recip()), ExactScalar::rational(p))
}

/// `diag((a+bi)²/p, (a−bi)²/p)` for a Gaussian valuation spec.
pub fn gaussian_hyperbolic(spec: &ValuationSpec) -> Result<Mat2<ExactScalar>> {
    if spec.kind != ValuationKind::GaussianSplitPrime {
        return Err(Error::ValuationKind(
            "Gaussian hyperbolic needs a Gaussian prime",
        ));
    }
    let int = |n: i64| BigRational::from_integer(n.into());
    let pi = ExactScalar::gaussian(int(spec.a), int(spec.b));
    let p = ExactScalar::integer(spec.p);
    Ok(Mat2::diagonal(
        pi.clone() * pi.clone() / p.clone(),
        pi.conj() * pi.conj() / p,
    ))
}

/// Translation length `−2·min(ν(tr M), 0)` of `M ∈ SL₂`.
pub fn translation_length(m: &Mat2<ExactScalar>, spec: &ValuationSpec) -> Result<u64> {
    let det = m.det();
    if !det.is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    Ok(match spec.valuation(&m.trace())? {
        Valuation::Finite(v) if v < 0 => (-2 * v) as u64,
        _ => 0,
    })
}

/// A validated representation `Ψ: F_n → SL₂(ℚ)`.
#[derive(Debug, Clone)]
pub struct RepresentationSpec {
    rank: usize,
    valuation: ValuationSpec,
    s: Mat2<BigInt>,
    d: Mat2<ExactScalar>,
    images: Vec<Mat2<ExactScalar>>,
    inverses: Vec<Mat2<ExactScalar>>,
}

impl RepresentationSpec {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn valuation(&self) -> &ValuationSpec {
        &self.valuation
    }

    pub fn p(&self) -> u64 {
        self.valuation.p
    }

    pub fn s(&self) -> &Mat2<BigInt> {
        &self.s
    }

    pub fn d(&self) -> &Mat2<ExactScalar> {
        &self.d
    }

    pub fn images(&self) -> &[Mat2<ExactScalar>] {
        &self.images
    }

    /// `Ψ(w)` by left-fold exact multiplication.
    pub fn evaluate(&self, w: &Word) -> Mat2<ExactScalar> {
        eval_word(w, &self.images, &self.inverses)
    }
}

/// Projective points `Sᵏ(0,1)` and `Sᵏ(1,0)` for `k < n`, in that order.
fn projective_points(s: &Mat2<BigInt>, n: usize) -> Vec<(BigInt, BigInt)> {
    let mut power = Mat2::identity();
    let mut cols = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        cols.push(power.apply((BigInt::zero(), BigInt::one())));
        rows.push(power.apply((BigInt::one(), BigInt::zero())));
        power = s.mul(&power);
    }
    cols.extend(rows);
    cols
}

/// Builds `Ψ(x_i) = Sⁱ⁻¹ D S⁻⁽ⁱ⁻¹⁾` with `D = diag(1/p, p)`.
///
/// Fails with [`Error::BadS`] when `S ∉ SL₂(ℤ)` or the `2n` projective points
/// collide over ℚ, and with [`Error::PTooSmall`] when they collide mod `p`.
pub fn build_representation(rank: usize, p: u64, s: &Mat2<BigInt>) -> Result<RepresentationSpec> {
    if rank < 1 {
        return Err(Error::RankTooSmall { rank, min: 1 });
    }
    let valuation = ValuationSpec::rational(p)?;
    if !s.det().is_one() {
        return Err(Error::BadS(format!("det S = {}, expected 1", s.det())));
    }
    let points = projective_points(s, rank);
    let pb = BigInt::from(p);
    let mut collides_mod_p = false;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let cross = &points[i].0 * &points[j].1 - &points[i].1 * &points[j].0;
            if cross.is_zero() {
                return Err(Error::BadS(format!(
                    "projective points {i} and {j} coincide over Q"
                )));
            }
            if (&cross % &pb).is_zero() {
                collides_mod_p = true;
            }
        }
    }
    if collides_mod_p {
        return Err(Error::PTooSmall { p });
    }

    let d = rational_hyperbolic(p);
    let s_exact = s.map(|e| ExactScalar::integer(e.clone()));
    let s_inv = s_exact.adjugate();
    let mut images = Vec::with_capacity(rank);
    let mut conj = Mat2::identity();
    let mut conj_inv = Mat2::identity();
    for _ in 0..rank {
        images.push(conj.mul(&d).mul(&conj_inv));
        conj = conj.mul(&s_exact);
        conj_inv = s_inv.mul(&conj_inv);
    }
    let inverses = images.iter().map(Mat2::adjugate).collect();
    Ok(RepresentationSpec {
        rank,
        valuation,
        s: s.clone(),
        d,
        images,
        inverses,
    })
}

/// [`build_representation`], moving to the next prime while `p` is too small.
pub fn build_representation_with_retry(
    rank: usize,
    p: u64,
    s: &Mat2<BigInt>,
) -> Result<RepresentationSpec> {
    let mut p = p;
    loop {
        match build_representation(rank, p, s) {
            Err(Error::PTooSmall { .. }) => p = next_prime(p),
            Err(Error::NotPrime(_)) => p = next_prime(p),
            other => return other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationWitness {
    pub word: String,
    pub reduced_length: usize,
    pub translation_length: Option<u64>,
    pub trace_valuation: Valuation,
    pub determinant_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub p: u64,
    pub words_checked: usize,
    pub failures: Vec<CertificationWitness>,
}

impl CertificationReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn into_result(self) -> Result<CertificationReport> {
        match self.failures.first() {
            None => Ok(self),
            Some(w) => Err(Error::CertificationFailed {
                checked: self.words_checked,
                failures: self.failures.len(),
                witness: w.word.clone(),
            }),
        }
    }
}

/// Checks `−2·min(ν(tr Ψ(w)), 0) = 2·|w|_red` and `det Ψ(w) = 1` for each word.
pub fn certify_length_formula(
    rep: &RepresentationSpec,
    words: &[Word],
) -> Result<CertificationReport> {
    certify_length_formula_with(rep, words, ExecMode::default())
}

pub fn certify_length_formula_with(
    rep: &RepresentationSpec,
    words: &[Word],
    mode: ExecMode,
) -> Result<CertificationReport> {
    if let Some(w) = words.iter().find(|w| w.max_index() > rep.rank) {
        return Err(Error::RankMismatch {
            expected: rep.rank,
            found: w.max_index(),
        });
    }
    let outcomes = mode.map(words, |w| certify_word(rep, w));
    let mut failures = Vec::new();
    for outcome in outcomes {
        if let Some(witness) = outcome? {
            failures.push(witness);
        }
    }
    Ok(CertificationReport {
        p: rep.p(),
        words_checked: words.len(),
        failures,
    })
}

fn certify_word(rep: &RepresentationSpec, w: &Word) -> Result<Option<CertificationWitness>> {
    let m = rep.evaluate(w);
    let reduced_length = w.cyclic_length();
    let determinant_one = m.det().is_one();
    let trace_valuation = rep.valuation.valuation(&m.trace())?;
    let translation = if determinant_one {
        Some(translation_length(&m, &rep.valuation)?)
    } else {
        None
    };
    if translation == Some(2 * reduced_length as u64) {
        return Ok(None);
    }
    Ok(Some(CertificationWitness {
        word: w.to_string(),
        reduced_length,
        translation_length: translation,
        trace_valuation,
        determinant_one,
    }))
}

/// Word set for a certification run: every cyclically reduced word of length
/// at most `exhaustive_len`, then `random_count` seeded random cyclically
/// reduced words with lengths drawn from `1..=random_max_len`.
pub fn certification_words(
    rank: usize,
    exhaustive_len: usize,
    random_count: usize,
    random_max_len: usize,
    seed: u64,
) -> Vec<Word> {
    let mut words: Vec<Word> = (0..=exhaustive_len)
        .flat_map(|len| cyclically_reduced_words(rank, len))
        .collect();
    let mut rng = rng_from_seed(seed);
    for _ in 0..random_count {
        let len = rng.gen_range(1..=random_max_len.max(1));
        words.push(random_cyclically_reduced_word(&mut rng, rank, len));
    }
    words
}

/// Lower bound for the algebraic entropy from the orbit of the character of Ψ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBound {
    /// Trailing-window slope of `log log |tr_{x₁}(fⁿ·ψ)|_ν`.
    pub rate: f64,
    /// `|fⁿ(x₁)|_red = −ν(tr Ψ(fⁿ(x₁)))` for `n = 0..=n_used`.
    pub lengths: Vec<usize>,
    pub n_used: usize,
    pub budget_hit: bool,
    /// Iterates whose trace valuation was verified by exact matrix products.
    pub certified_iterates: usize,
}

/// Growth rate of `log |tr_{x₁}(fⁿ·ψ)|_ν = |fⁿ(x₁)|_red · log p`.
///
/// Iterates up to [`CERTIFY_LENGTH_CAP`] letters are checked against the
/// representation; longer ones use the certified identity
/// `ν(tr Ψ(w)) = −|w|_red` without floating-point matrix powers.
pub fn lower_bound_rate(
    f: &Automorphism,
    rep: &RepresentationSpec,
    n_max: usize,
    budget: usize,
) -> Result<LowerBound> {
    if f.rank() != rep.rank() {
        return Err(Error::RankMismatch {
            expected: rep.rank(),
            found: f.rank(),
        });
    }
    let seed = Word::generator(1);
    let seq = growth_sequence(f, &seed, n_max, budget)?;

    let mut to_certify = Vec::new();
    let mut current = seed;
    for &len in &seq.lengths {
        if len > CERTIFY_LENGTH_CAP {
            break;
        }
        let (c, _) = current.cyclic_reduce();
        to_certify.push(c.clone());
        current = f.apply(&c);
    }
    let report = certify_length_formula(rep, &to_certify)?.into_result()?;

    let log_p = rep.valuation.log_base();
    let double_log: Vec<f64> = seq.lengths.iter().map(|&l| l as f64 * log_p).collect();
    Ok(LowerBound {
        rate: trailing_rate(&double_log),
        n_used: seq.lengths.len() - 1,
        budget_hit: seq.budget_hit,
        certified_iterates: report.words_checked,
        lengths: seq.lengths,
    })
}
