//! Spectral radius of an automorphism from cyclically reduced word growth.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::rate::{trailing_rate_usize, trailing_window};
use crate::word::Word;

/// Default cap on the cyclically reduced length of any iterate.
pub const DEFAULT_LENGTH_BUDGET: usize = 10_000_000;

/// Default iteration count for growth estimates.
pub const DEFAULT_N_MAX: usize = 64;

/// Tolerance passed to the eigenvalue solver for the abelian bound.
pub const EIGEN_TOLERANCE: f64 = 1e-12;

/// Cyclically reduced lengths `L_0, …, L_m` of the iterates of a seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthSequence {
    pub lengths: Vec<usize>,
    pub budget_hit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedRate {
    pub seed: String,
    pub rate: f64,
    pub iterations: usize,
    pub budget_hit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// One entry per non-trivial seed, in input order.
    pub per_seed: Vec<SeedRate>,
    /// Maximum of the per-seed rates.
    pub rho: f64,
    /// Largest iteration count reached by any seed.
    pub iterations_used: usize,
    pub budget_hit: bool,
    /// `log` of the spectral radius of the abelianization.
    pub abelian_lower_bound: f64,
}

impl GrowthEstimate {
    /// Resolution of the trailing-window slope at the iteration count used.
    pub fn window_tolerance(&self) -> f64 {
        1.0 / trailing_window(self.iterations_used) as f64
    }
}

/// Cyclically reduced lengths of `fᵏ(seed)` for `k = 0..=m`, with `m ≤ n_max`
/// cut short before any length exceeds `budget`.
///
/// Only the conjugacy class matters, so each iterate is cyclically reduced
/// before the next substitution.
pub fn growth_sequence(
    f: &Automorphism,
    seed: &Word,
    n_max: usize,
    budget: usize,
) -> Result<GrowthSequence> {
    let (mut current, len) = seed.cyclic_reduce();
    if len == 0 {
        return Err(Error::TrivialSeed(seed.to_string()));
    }
    let mut lengths = vec![len];
    let mut budget_hit = false;
    for _ in 0..n_max {
        let (next, len) = f.apply(&current).cyclic_reduce();
        if len > budget {
            budget_hit = true;
            break;
        }
        lengths.push(len);
        current = next;
    }
    Ok(GrowthSequence {
        lengths,
        budget_hit,
    })
}

/// Estimates ρ(f) over the given seeds (the generators when `seeds` is empty).
pub fn estimate_rho(
    f: &Automorphism,
    seeds: &[Word],
    n_max: usize,
    budget: usize,
) -> Result<GrowthEstimate> {
    estimate_rho_with(f, seeds, n_max, budget, ExecMode::default())
}

pub fn estimate_rho_with(
    f: &Automorphism,
    seeds: &[Word],
    n_max: usize,
    budget: usize,
    mode: ExecMode,
) -> Result<GrowthEstimate> {
    let seeds: Vec<Word> = if seeds.is_empty() {
        (1..=f.rank()).map(Word::generator).collect()
    } else {
        seeds.to_vec()
    };
    if let Some(w) = seeds.iter().find(|w| w.max_index() > f.rank()) {
        return Err(Error::RankMismatch {
            expected: f.rank(),
            found: w.max_index(),
        });
    }
    let sequences = mode.map(&seeds, |seed| growth_sequence(f, seed, n_max, budget));
    let per_seed: Vec<SeedRate> = seeds
        .iter()
        .zip(sequences)
        .filter_map(|(seed, seq)| {
            let seq = seq.ok()?;
            Some(SeedRate {
                seed: seed.to_string(),
                rate: trailing_rate_usize(&seq.lengths),
                iterations: seq.lengths.len() - 1,
                budget_hit: seq.budget_hit,
            })
        })
        .collect();
    if per_seed.is_empty() {
        return Err(Error::AllSeedsTrivial);
    }
    let rho = per_seed.iter().map(|s| s.rate).fold(0.0, f64::max);
    let radius = spectral_radius_matrix(&abelianization(f), EIGEN_TOLERANCE)?;
    Ok(GrowthEstimate {
        rho,
        iterations_used: per_seed.iter().map(|s| s.iterations).max().unwrap_or(0),
        budget_hit: per_seed.iter().any(|s| s.budget_hit),
        abelian_lower_bound: radius.ln().max(0.0),
        per_seed,
    })
}

/// Square matrix with arbitrary-precision integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMatrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        IntMatrix {
            dim,
            entries: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn identity(dim: usize) -> IntMatrix {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        IntMatrix::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let entries = (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()
            })
            .collect();
        IntMatrix { dim: n, entries }
    }
}

/// Action on H₁: column `i` is the exponent-sum vector of the image of `x_i`.
pub fn abelianization(f: &Automorphism) -> IntMatrix {
    let n = f.rank();
    let columns: Vec<Vec<i64>> = f.images().iter().map(|w| w.exponent_sums(n)).collect();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| columns[j][i]).collect())
        .collect();
    IntMatrix::from_rows(rows)
}

/// Maximum modulus of the (complex) eigenvalues of `m`.
///
/// Computed from a real Schur decomposition; `tol` is the convergence
/// threshold for the off-diagonal entries.
pub fn spectral_radius_matrix(m: &IntMatrix, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    const MAX_ITERATIONS: usize = 10_000;
    let n = m.dim();
    if n == 0 {
        return Ok(0.0);
    }
    let dense = DMatrix::from_fn(n, n, |i, j| m.get(i, j).to_f64().unwrap_or(f64::INFINITY));
    let schur = nalgebra::linalg::Schur::try_new(dense, tol, MAX_ITERATIONS).ok_or(
        Error::NonConvergence {
            iterations: MAX_ITERATIONS,
        },
    )?;
    Ok(schur
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}
