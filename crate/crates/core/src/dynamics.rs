//! Induced polynomial self-maps of the character variety 𝔸³ and their
//! degree growth.
//!
//! An automorphism `f` of F₂ acts on characters by `χ ↦ χ ∘ f`; in trace
//! coordinates this is the polynomial map
//! `(x, y, z) ↦ (tr_{f(X)}, tr_{f(Y)}, tr_{f(XY)})`.
//! Iterates are built as `Fⁿ = Fⁿ⁻¹ ∘ F`, substituting the base map into the
//! previous iterate.

use num_bigint::BigInt;
use serde::Serialize;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::mat2::{eval_word, Mat2};
use crate::poly::IntPolynomial;
use crate::rate::trailing_rate;
use crate::sample::{random_sl2, rng_from_seed};
use crate::trace::{trace_variables, TraceEngine};
use crate::word::Word;

/// Default cap on stored monomials (summed over the three components).
pub const DEFAULT_TERM_BUDGET: usize = 20_000;

/// Default number of iterates for degree growth.
pub const DEFAULT_EALG_N_MAX: usize = 30;

/// Entry bound for the random SL₂(ℤ) matrices of [`semiconjugacy_check`].
pub const ORACLE_ENTRY_BOUND: i64 = 5;

/// A polynomial self-map of 𝔸³ in trace coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct TraceMap {
    components: [IntPolynomial; 3],
}

impl std::fmt::Debug for TraceMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TraceMap{self}")
    }
}

impl std::fmt::Display for TraceMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "({a}, {b}, {c})")
    }
}

impl TraceMap {
    pub fn new(components: [IntPolynomial; 3]) -> Result<TraceMap> {
        let vars = trace_variables();
        if components.iter().any(|c| **c.variables() != *vars) {
            return Err(Error::VariableMismatch);
        }
        Ok(TraceMap { components })
    }

    /// Parses three components written in `x`, `y`, `z`.
    pub fn parse(components: [&str; 3]) -> Result<TraceMap> {
        let vars = trace_variables();
        let [a, b, c] = components;
        TraceMap::new([
            IntPolynomial::parse(a, &vars)?,
            IntPolynomial::parse(b, &vars)?,
            IntPolynomial::parse(c, &vars)?,
        ])
    }

    pub fn identity() -> TraceMap {
        let vars = trace_variables();
        TraceMap {
            components: [0, 1, 2].map(|i| IntPolynomial::var(&vars, i)),
        }
    }

    pub fn components(&self) -> &[IntPolynomial; 3] {
        &self.components
    }

    /// Maximum component degree (0 for constant maps).
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.degree().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.components.iter().map(IntPolynomial::num_terms).sum()
    }

    pub fn evaluate_int(&self, point: &[BigInt; 3]) -> [BigInt; 3] {
        [0, 1, 2].map(|i| self.components[i].evaluate_int(point))
    }
}

/// The map on characters induced by a rank-2 automorphism.
pub fn induced_trace_map(f: &Automorphism) -> Result<TraceMap> {
    if f.rank() != 2 {
        return Err(Error::CharacterRank(f.rank()));
    }
    let mut engine = TraceEngine::new();
    let xy = Word::parse("ab", 2).expect("literal");
    Ok(TraceMap {
        components: [
            engine.trace(&f.images()[0])?,
            engine.trace(&f.images()[1])?,
            engine.trace(&f.apply(&xy))?,
        ],
    })
}

/// `outer ∘ inner`: substitutes the components of `inner` into `outer`.
pub fn compose_trace_map(outer: &TraceMap, inner: &TraceMap) -> TraceMap {
    compose_trace_map_with(outer, inner, ExecMode::default())
}

pub fn compose_trace_map_with(outer: &TraceMap, inner: &TraceMap, mode: ExecMode) -> TraceMap {
    TraceMap {
        components: [0, 1, 2].map(|i| outer.components[i].substitute_with(&inner.components, mode)),
    }
}

/// Degrees of the iterates of a polynomial self-map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeSequence {
    /// `d_0 = 1, d_1, …, d_m`.
    pub degrees: Vec<u32>,
    /// Stored monomials of each iterate.
    pub terms: Vec<usize>,
    /// Trailing-window growth rate of the degrees.
    pub ealg: f64,
    pub budget_hit: bool,
}

impl DegreeSequence {
    pub fn n_used(&self) -> usize {
        self.degrees.len() - 1
    }

    /// `d_{n+m} ≤ d_n · d_m` for every computed index pair.
    pub fn is_submultiplicative(&self) -> bool {
        let d = &self.degrees;
        (0..d.len()).all(|n| {
            (0..d.len() - n).all(|m| u64::from(d[n + m]) <= u64::from(d[n]) * u64::from(d[m]))
        })
    }

    /// Ratio `d_m / d_{m-1}` of the last two degrees.
    pub fn last_ratio(&self) -> Option<f64> {
        let d = &self.degrees;
        (d.len() >= 2).then(|| f64::from(d[d.len() - 1]) / f64::from(d[d.len() - 2]))
    }
}

/// Degree sequence of the map induced by `f`.
pub fn degree_sequence(
    f: &Automorphism,
    n_max: usize,
    term_budget: usize,
) -> Result<DegreeSequence> {
    let map = induced_trace_map(f)?;
    Ok(map_degree_sequence(&map, n_max, term_budget))
}

/// Degree sequence of an arbitrary trace map. Iteration stops after the first
/// iterate whose stored monomials exceed `term_budget`.
pub fn map_degree_sequence(map: &TraceMap, n_max: usize, term_budget: usize) -> DegreeSequence {
    map_degree_sequence_with(map, n_max, term_budget, ExecMode::default())
}

pub fn map_degree_sequence_with(
    map: &TraceMap,
    n_max: usize,
    term_budget: usize,
    mode: ExecMode,
) -> DegreeSequence {
    let identity = TraceMap::identity();
    let mut degrees = vec![identity.degree()];
    let mut terms = vec![identity.num_terms()];
    let mut budget_hit = false;
    let mut current = identity;
    for n in 1..=n_max {
        current = if n == 1 {
            map.clone()
        } else {
            compose_trace_map_with(&current, map, mode)
        };
        degrees.push(current.degree());
        terms.push(current.num_terms());
        if current.num_terms() > term_budget && n < n_max {
            budget_hit = true;
            break;
        }
    }
    let as_f64: Vec<f64> = degrees.iter().map(|&d| f64::from(d.max(1))).collect();
    DegreeSequence {
        ealg: trailing_rate(&as_f64),
        degrees,
        terms,
        budget_hit,
    }
}

/// A pair `(A, B)` on which the induced map disagreed with matrix traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiconjugacyWitness {
    pub trial: usize,
    pub a: [String; 4],
    pub b: [String; 4],
    pub map_value: [String; 3],
    pub matrix_value: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiconjugacyReport {
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<SemiconjugacyWitness>,
}

impl SemiconjugacyReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `F(tr A, tr B, tr AB) = (tr φ(fX), tr φ(fY), tr φ(f(XY)))` on
/// seeded random pairs `φ(X) = A, φ(Y) = B` in SL₂(ℤ).
pub fn semiconjugacy_check(
    f: &Automorphism,
    trials: usize,
    seed: u64,
) -> Result<SemiconjugacyReport> {
    semiconjugacy_check_with(f, trials, seed, ExecMode::default())
}

pub fn semiconjugacy_check_with(
    f: &Automorphism,
    trials: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<SemiconjugacyReport> {
    let map = induced_trace_map(f)?;
    let mut rng = rng_from_seed(seed);
    let pairs: Vec<(usize, Mat2<BigInt>, Mat2<BigInt>)> = (0..trials)
        .map(|t| {
            (
                t,
                random_sl2(&mut rng, ORACLE_ENTRY_BOUND),
                random_sl2(&mut rng, ORACLE_ENTRY_BOUND),
            )
        })
        .collect();
    let xy = Word::parse("ab", 2).expect("literal");
    let words = [f.images()[0].clone(), f.images()[1].clone(), f.apply(&xy)];
    let outcomes = mode.map(&pairs, |(t, a, b)| check_pair(&map, &words, *t, a, b));
    let failures: Vec<SemiconjugacyWitness> = outcomes.into_iter().flatten().collect();
    Ok(SemiconjugacyReport {
        trials,
        passed: trials - failures.len(),
        failures,
    })
}

fn check_pair(
    map: &TraceMap,
    words: &[Word; 3],
    trial: usize,
    a: &Mat2<BigInt>,
    b: &Mat2<BigInt>,
) -> Option<SemiconjugacyWitness> {
    let point = [a.trace(), b.trace(), a.mul(b).trace()];
    let map_value = map.evaluate_int(&point);
    let images = [a.clone(), b.clone()];
    let inverses = [a.adjugate(), b.adjugate()];
    let matrix_value = [0, 1, 2].map(|i| eval_word(&words[i], &images, &inverses).trace());
    if map_value == matrix_value {
        return None;
    }
    let entries = |m: &Mat2<BigInt>| [&m.a, &m.b, &m.c, &m.d].map(|e| e.to_string());
    Some(SemiconjugacyWitness {
        trial,
        a: entries(a),
        b: entries(b),
        map_value: map_value.map(|v| v.to_string()),
        matrix_value: matrix_value.map(|v| v.to_string()),
    })
}

/// Degree sequences of `F` and of `change⁻¹ ∘ F ∘ change`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingComparison {
    pub original: DegreeSequence,
    pub conjugated: DegreeSequence,
}

impl EmbeddingComparison {
    pub fn ealg_gap(&self) -> f64 {
        (self.original.ealg - self.conjugated.ealg).abs()
    }
}

/// Compares degree growth of the induced map of `f` in the standard trace
/// embedding and after the polynomial change of coordinates `change`.
pub fn embedding_invariance_harness(
    f: &Automorphism,
    change: &TraceMap,
    change_inverse: &TraceMap,
    n_max: usize,
    term_budget: usize,
) -> Result<EmbeddingComparison> {
    let identity = TraceMap::identity();
    if compose_trace_map(change, change_inverse) != identity
        || compose_trace_map(change_inverse, change) != identity
    {
        return Err(Error::InvalidChangeInverse);
    }
    let map = induced_trace_map(f)?;
    let conjugated = compose_trace_map(change_inverse, &compose_trace_map(&map, change));
    Ok(EmbeddingComparison {
        original: map_degree_sequence(&map, n_max, term_budget),
        conjugated: map_degree_sequence(&conjugated, n_max, term_budget),
    })
}
