use std::fmt::Write as _;

use fricke_core::cert::{
    build_representation_with_retry, certification_words, certify_length_formula, default_s,
    lower_bound_rate, CertificationWitness, RepresentationSpec,
};
use fricke_core::dynamics::{degree_sequence, induced_trace_map, DEFAULT_EALG_N_MAX};
use fricke_core::growth::{estimate_rho, GrowthEstimate, DEFAULT_N_MAX};
use fricke_core::mat2::Mat2;
use fricke_core::trace::trace_polynomial;
use fricke_core::{Automorphism, Error, Word};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::Result;
use crate::report::{Report, Verdict, SCHEMA_VERSION};

/// Exhaustive word length for `certify`.
pub const CERTIFY_EXHAUSTIVE_LEN: usize = 5;
/// Number of random words for `certify`.
pub const CERTIFY_RANDOM_COUNT: usize = 50;
/// Maximum length of the random words for `certify`.
pub const CERTIFY_RANDOM_MAX_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub rank: usize,
    pub n_max: usize,
    pub budget: usize,
    pub estimate: GrowthEstimate,
    pub verdict: Verdict,
}

impl Report for RhoReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn text(&self) -> String {
        let e = &self.estimate;
        let mut out = String::new();
        let _ = writeln!(out, "rho: {}", e.rho);
        let _ = writeln!(out, "abelian_lower_bound: {}", e.abelian_lower_bound);
        let _ = writeln!(out, "iterations_used: {}", e.iterations_used);
        let _ = writeln!(out, "budget_hit: {}", e.budget_hit);
        for s in &e.per_seed {
            let _ = writeln!(
                out,
                "seed {}: rate {} after {} iterations",
                s.seed, s.rate, s.iterations
            );
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }
}

/// Word-growth estimate of ρ(f). Passes when the estimate is not below the
/// abelianization bound by more than the tolerance.
pub fn cmd_rho(f: &Automorphism, config: &RunConfig) -> Result<RhoReport> {
    config.validate()?;
    let n_max = config.n_max.unwrap_or(DEFAULT_N_MAX);
    let estimate = estimate_rho(f, &[], n_max, config.budget)?;
    let ok = estimate.rho + config.tolerance(estimate.abelian_lower_bound)
        >= estimate.abelian_lower_bound;
    Ok(RhoReport {
        schema_version: SCHEMA_VERSION,
        command: "rho",
        rank: f.rank(),
        n_max,
        budget: config.budget,
        estimate,
        verdict: Verdict::from_bool(ok),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EalgReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub n_max: usize,
    pub term_budget: usize,
    pub ealg: f64,
    pub n_used: usize,
    pub degrees: Vec<u32>,
    pub terms: Vec<usize>,
    pub budget_hit: bool,
    pub submultiplicative: bool,
    pub verdict: Verdict,
}

impl Report for EalgReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ealg: {}", self.ealg);
        let _ = writeln!(out, "degrees: {}", join(&self.degrees));
        let _ = writeln!(out, "terms: {}", join(&self.terms));
        let _ = writeln!(out, "budget_hit: {}", self.budget_hit);
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }
}

/// Degree growth of the induced trace map. Passes when the degree sequence
/// is submultiplicative.
pub fn cmd_ealg(f: &Automorphism, config: &RunConfig) -> Result<EalgReport> {
    config.validate()?;
    let n_max = config.n_max.unwrap_or(DEFAULT_EALG_N_MAX);
    let seq = degree_sequence(f, n_max, config.term_budget)?;
    let submultiplicative = seq.is_submultiplicative();
    Ok(EalgReport {
        schema_version: SCHEMA_VERSION,
        command: "ealg",
        n_max,
        term_budget: config.term_budget,
        ealg: seq.ealg,
        n_used: seq.n_used(),
        degrees: seq.degrees,
        terms: seq.terms,
        budget_hit: seq.budget_hit,
        submultiplicative,
        verdict: Verdict::from_bool(submultiplicative),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub word: String,
    pub cyclic_length: usize,
    pub polynomial: String,
    pub degree: u32,
    pub verdict: Verdict,
}

impl Report for TraceReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn text(&self) -> String {
        format!("{}\n", self.polynomial)
    }
}

/// Trace polynomial of a word in `a, b, A, B`.
pub fn cmd_trace(word: &str) -> Result<TraceReport> {
    let w = Word::parse(word, 2)?;
    let poly = trace_polynomial(&w)?;
    Ok(TraceReport {
        schema_version: SCHEMA_VERSION,
        command: "trace",
        word: word.to_string(),
        cyclic_length: w.cyclic_length(),
        polynomial: poly.to_string(),
        degree: poly.degree().unwrap_or(0),
        verdict: Verdict::Pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InduceReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub components: Vec<String>,
    pub map: String,
    pub degree: u32,
    pub verdict: Verdict,
}

impl Report for InduceReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn text(&self) -> String {
        format!("{}\n", self.map)
    }
}

/// The induced map `(tr f(X), tr f(Y), tr f(XY))`.
pub fn cmd_induce(f: &Automorphism) -> Result<InduceReport> {
    let map = induced_trace_map(f)?;
    Ok(InduceReport {
        schema_version: SCHEMA_VERSION,
        command: "induce",
        components: map.components().iter().map(|c| c.to_string()).collect(),
        map: map.to_string(),
        degree: map.degree(),
        verdict: Verdict::Pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub rank: usize,
    pub p_requested: u64,
    pub p: u64,
    #[serde(rename = "S")]
    pub s: String,
    pub seed: u64,
    pub words_checked: usize,
    pub failures: Vec<CertificationWitness>,
    pub verdict: Verdict,
}

impl Report for CertifyReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p: {} (requested {})", self.p, self.p_requested);
        let _ = writeln!(out, "S: {}", self.s);
        let _ = writeln!(out, "words_checked: {}", self.words_checked);
        let _ = writeln!(out, "failures: {}", self.failures.len());
        for w in &self.failures {
            let _ = writeln!(
                out,
                "  {}: |w|_red = {}, translation = {:?}",
                w.word, w.reduced_length, w.translation_length
            );
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }
}

fn representation(rank: usize, config: &RunConfig) -> Result<RepresentationSpec> {
    Ok(build_representation_with_retry(
        rank,
        config.prime,
        &default_s(),
    )?)
}

/// Checks the translation-length formula on every cyclically reduced word of
/// length at most 5 and on 50 seeded random words of length at most 8. A
/// prime that is too small is replaced by the next prime.
pub fn cmd_certify(rank: usize, config: &RunConfig) -> Result<CertifyReport> {
    config.validate()?;
    let rep = representation(rank, config)?;
    let words = certification_words(
        rank,
        CERTIFY_EXHAUSTIVE_LEN,
        CERTIFY_RANDOM_COUNT,
        CERTIFY_RANDOM_MAX_LEN,
        config.seed,
    );
    let report = certify_length_formula(&rep, &words)?;
    Ok(CertifyReport {
        schema_version: SCHEMA_VERSION,
        command: "certify",
        rank,
        p_requested: config.prime,
        p: rep.p(),
        s: matrix_text(rep.s()),
        seed: config.seed,
        words_checked: report.words_checked,
        verdict: Verdict::from_bool(report.is_pass()),
        failures: report.failures,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub p_requested: u64,
    pub p: u64,
    #[serde(rename = "S")]
    pub s: String,
    pub rate: f64,
    pub lengths: Vec<usize>,
    pub n_used: usize,
    pub budget_hit: bool,
    pub certified_iterates: usize,
    pub verdict: Verdict,
}

impl Report for LowerBoundReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rate: {}", self.rate);
        let _ = writeln!(out, "p: {} (requested {})", self.p, self.p_requested);
        let _ = writeln!(out, "n_used: {}", self.n_used);
        let _ = writeln!(out, "certified_iterates: {}", self.certified_iterates);
        let _ = writeln!(out, "budget_hit: {}", self.budget_hit);
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }
}

/// Certified lower bound for the algebraic entropy.
pub fn cmd_lower_bound(f: &Automorphism, config: &RunConfig) -> Result<LowerBoundReport> {
    config.validate()?;
    let rep = representation(f.rank(), config)?;
    let n_max = config.n_max.unwrap_or(DEFAULT_N_MAX);
    let bound = lower_bound_rate(f, &rep, n_max, config.budget)?;
    Ok(LowerBoundReport {
        schema_version: SCHEMA_VERSION,
        command: "lower-bound",
        p_requested: config.prime,
        p: rep.p(),
        s: matrix_text(rep.s()),
        rate: bound.rate,
        lengths: bound.lengths,
        n_used: bound.n_used,
        budget_hit: bound.budget_hit,
        certified_iterates: bound.certified_iterates,
        verdict: Verdict::Pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rates {
    pub rho: f64,
    pub ealg: f64,
    pub lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gaps {
    pub rho_ealg: f64,
    pub rho_lower_bound: f64,
    pub ealg_lower_bound: f64,
}

impl Gaps {
    fn max(&self) -> f64 {
        self.rho_ealg
            .max(self.rho_lower_bound)
            .max(self.ealg_lower_bound)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub rates: Rates,
    pub gaps: Gaps,
    pub tolerance: f64,
    pub rho_iterations: usize,
    pub ealg_degrees: Vec<u32>,
    pub ealg_budget_hit: bool,
    pub lower_bound_p: u64,
    pub verdict: Verdict,
}

impl Report for CompareReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rho: {}", self.rates.rho);
        let _ = writeln!(out, "ealg: {}", self.rates.ealg);
        let _ = writeln!(out, "lower_bound: {}", self.rates.lower_bound);
        let _ = writeln!(out, "gap rho/ealg: {}", self.gaps.rho_ealg);
        let _ = writeln!(out, "gap rho/lower_bound: {}", self.gaps.rho_lower_bound);
        let _ = writeln!(out, "gap ealg/lower_bound: {}", self.gaps.ealg_lower_bound);
        let _ = writeln!(out, "tolerance: {}", self.tolerance);
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }
}

/// Runs the three estimators and checks that they agree pairwise within
/// `max(0.05, tol · largest rate)`.
pub fn cmd_compare(f: &Automorphism, config: &RunConfig) -> Result<CompareReport> {
    config.validate()?;
    if f.rank() != 2 {
        return Err(Error::CharacterRank(f.rank()).into());
    }
    let rho = cmd_rho(f, config)?;
    let ealg = cmd_ealg(f, config)?;
    let lower = cmd_lower_bound(f, config)?;
    let rates = Rates {
        rho: rho.estimate.rho,
        ealg: ealg.ealg,
        lower_bound: lower.rate,
    };
    let gaps = Gaps {
        rho_ealg: (rates.rho - rates.ealg).abs(),
        rho_lower_bound: (rates.rho - rates.lower_bound).abs(),
        ealg_lower_bound: (rates.ealg - rates.lower_bound).abs(),
    };
    let tolerance = config.tolerance(rates.rho.max(rates.ealg).max(rates.lower_bound));
    Ok(CompareReport {
        schema_version: SCHEMA_VERSION,
        command: "compare",
        verdict: Verdict::from_bool(gaps.max() <= tolerance),
        rates,
        gaps,
        tolerance,
        rho_iterations: rho.estimate.iterations_used,
        ealg_degrees: ealg.degrees,
        ealg_budget_hit: ealg.budget_hit,
        lower_bound_p: lower.p,
    })
}

fn matrix_text<T: std::fmt::Display>(m: &Mat2<T>) -> String {
    format!("[[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
