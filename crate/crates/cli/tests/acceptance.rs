//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use fricke_cli::{
    cmd_certify, cmd_compare, cmd_ealg, cmd_lower_bound, cmd_rho, render, Format, RunConfig,
};
use fricke_core::cert::{build_representation, default_s, DEFAULT_PRIME};
use fricke_core::degree::certified_degrees;
use fricke_core::dynamics::{
    compose_trace_map, degree_sequence, embedding_invariance_harness, induced_trace_map,
    semiconjugacy_check, TraceMap, DEFAULT_TERM_BUDGET,
};
use fricke_core::mat2::Mat2;
use fricke_core::sample::{random_reduced_word, random_sl2, rng_from_seed};
use fricke_core::trace::{trace_variables, TraceEngine};
use fricke_core::{fixtures, Error, IntPolynomial, Word};

type Check = Result<String, String>;

/// Id, name, runtime limit and check.
type Criterion = (u8, &'static str, Option<Duration>, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

/// `log((3 + √5)/2)`, the log of the larger eigenvalue of `[[2,1],[1,1]]`.
fn pseudo_anosov_target() -> f64 {
    ((3.0 + 5f64.sqrt()) / 2.0).ln()
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn poly(text: &str) -> IntPolynomial {
    IntPolynomial::parse(text, &trace_variables()).expect("valid polynomial")
}

fn trace_map(c: [&str; 3]) -> TraceMap {
    TraceMap::parse(c).expect("valid map")
}

/// Integer 2×2 matrices `[a, b, c, d]` with their own product, so the oracle
/// shares no arithmetic with the library.
type M = [i128; 4];

fn m_mul(p: &M, q: &M) -> M {
    [
        p[0] * q[0] + p[1] * q[2],
        p[0] * q[1] + p[1] * q[3],
        p[2] * q[0] + p[3] * q[2],
        p[2] * q[1] + p[3] * q[3],
    ]
}

fn m_inv(p: &M) -> M {
    [p[3], -p[1], -p[2], p[0]]
}

fn m_trace(p: &M) -> i128 {
    p[0] + p[3]
}

fn to_m<T: Display>(m: &Mat2<T>) -> M {
    let f = |v: &T| v.to_string().parse::<i128>().expect("small entry");
    [f(&m.a), f(&m.b), f(&m.c), f(&m.d)]
}

fn m_word(w: &Word, a: &M, b: &M) -> M {
    w.to_string().chars().fold([1, 0, 0, 1], |acc, ch| {
        let g = match ch {
            'a' => *a,
            'b' => *b,
            'A' => m_inv(a),
            'B' => m_inv(b),
            other => panic!("unexpected letter {other}"),
        };
        m_mul(&acc, &g)
    })
}

/// Seeded SL₂(ℤ) pairs with entries in [-5, 5].
fn sl2_pairs(
    seed: u64,
    count: usize,
) -> Vec<(Mat2<impl Display + Clone>, Mat2<impl Display + Clone>)> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| (random_sl2(&mut rng, 5), random_sl2(&mut rng, 5)))
        .collect()
}

/// `poly(tr A, tr B, tr AB)` compared against the trace of `w(A, B)`.
fn oracle_agrees(p: &IntPolynomial, w: &Word, a: &M, b: &M) -> bool {
    let point = [m_trace(a), m_trace(b), m_trace(&m_mul(a, b))].map(|v| v.into());
    p.evaluate_int(&point).to_string() == m_trace(&m_word(w, a, b)).to_string()
}

fn criterion_1() -> Check {
    let tx = fixtures::dehn_twist_x();
    let f1 = induced_trace_map(&tx).map_err(|e| e.to_string())?;
    ensure!(f1 == trace_map(["x", "z", "x*z - y"]), "first map {f1}");
    let f2 = compose_trace_map(&f1, &f1);
    ensure!(
        f2 == trace_map(["x", "x*z - y", "x^2*z - x*y - z"]),
        "second iterate {f2}"
    );
    let f3 = compose_trace_map(&f2, &f1);
    let expected3 = trace_map(["x", "x^2*z - x*y - z", "x^3*z - x^2*y - 2*x*z + y"]);
    ensure!(f3 == expected3, "third iterate {f3}");
    let from_words = induced_trace_map(&tx.pow(3)).map_err(|e| e.to_string())?;
    ensure!(
        f3 == from_words,
        "composition {f3} vs trace engine {from_words}"
    );

    let report = semiconjugacy_check(&tx.pow(3), 100, 1).map_err(|e| e.to_string())?;
    ensure!(
        report.failures.is_empty() && report.passed == 100,
        "semiconjugacy {report:?}"
    );
    let images = [
        Word::generator(1),
        Word::generator(2),
        Word::parse("ab", 2).unwrap(),
    ];
    for (a, b) in sl2_pairs(101, 100) {
        let (a, b) = (to_m(&a), to_m(&b));
        for (component, w) in f3.components().iter().zip(&images) {
            let w = tx.pow(3).apply(w);
            ensure!(
                oracle_agrees(component, &w, &a, &b),
                "oracle mismatch on {w}"
            );
        }
    }
    Ok(format!("F^3 = {f3}, 100/100 trials"))
}

fn criterion_2() -> Check {
    let tx = fixtures::dehn_twist_x();
    let config = RunConfig::default();
    let rho = cmd_rho(&tx, &config).map_err(|e| e.to_string())?;
    let ealg = cmd_ealg(&tx, &config).map_err(|e| e.to_string())?;
    ensure!(rho.estimate.rho < 0.05, "rho {}", rho.estimate.rho);
    ensure!(ealg.ealg < 0.05, "ealg {}", ealg.ealg);
    let linear: Vec<u32> = (1..=31).collect();
    ensure!(ealg.degrees == linear, "degrees {:?}", ealg.degrees);
    Ok(format!(
        "rho {:.4}, ealg {:.4}, d_n = n + 1 for n <= 30",
        rho.estimate.rho, ealg.ealg
    ))
}

fn criterion_3() -> Check {
    let pa = fixtures::pseudo_anosov();
    let target = pseudo_anosov_target();
    let config = RunConfig::default();
    ensure!(config.budget == 10_000_000, "budget {}", config.budget);
    let rho = cmd_rho(&pa, &config)
        .map_err(|e| e.to_string())?
        .estimate
        .rho;
    ensure!(relative_gap(rho, target) < 0.02, "rho {rho} vs {target}");
    let seq = degree_sequence(&pa, 8, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
    ensure!(seq.n_used() <= 8, "n {}", seq.n_used());
    ensure!(
        relative_gap(seq.ealg, target) < 0.10,
        "ealg {} vs {target}",
        seq.ealg
    );
    let tolerance = config.tolerance(rho.max(seq.ealg));
    ensure!(
        (rho - seq.ealg).abs() <= tolerance,
        "|rho - ealg| = {}",
        (rho - seq.ealg).abs()
    );
    Ok(format!(
        "rho {rho:.5}, ealg {:.5} at n = {}, target {target:.5}",
        seq.ealg,
        seq.n_used()
    ))
}

fn criterion_4() -> Check {
    let basis = fixtures::basis_x_xy();
    let mut detail = Vec::new();
    for (name, f) in [
        ("T_X", fixtures::dehn_twist_x()),
        ("pA", fixtures::pseudo_anosov()),
    ] {
        let config = RunConfig::default();
        let standard = cmd_rho(&f, &config)
            .map_err(|e| e.to_string())?
            .estimate
            .rho;
        let changed = f.conjugate_by(&basis).map_err(|e| e.to_string())?;
        let other = cmd_rho(&changed, &config)
            .map_err(|e| e.to_string())?
            .estimate
            .rho;
        ensure!(
            relative_gap(standard, other) <= 0.05,
            "{name}: {standard} vs {other}"
        );
        detail.push(format!("{name} {standard:.4}/{other:.4}"));
    }
    Ok(detail.join(", "))
}

fn criterion_5() -> Check {
    let change = trace_map(["x", "y", "z + x^2"]);
    let change_inv = trace_map(["x", "y", "z - x^2"]);
    let mut detail = Vec::new();
    for (name, f) in [
        ("T_X", fixtures::dehn_twist_x()),
        ("pA", fixtures::pseudo_anosov()),
    ] {
        let cmp = embedding_invariance_harness(&f, &change, &change_inv, 30, DEFAULT_TERM_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure!(cmp.ealg_gap() < 0.05, "{name}: gap {}", cmp.ealg_gap());
        detail.push(format!("{name} gap {:.4}", cmp.ealg_gap()));
    }
    Ok(detail.join(", "))
}

fn criterion_6() -> Check {
    let mut rng = rng_from_seed(6);
    let words: Vec<Word> = (0..200)
        .map(|_| {
            let len = rng.gen_range(0..=10);
            random_reduced_word(&mut rng, 2, len)
        })
        .collect();
    let pairs: Vec<(M, M)> = sl2_pairs(66, 20)
        .iter()
        .map(|(a, b)| (to_m(a), to_m(b)))
        .collect();
    let mut engine = TraceEngine::new();
    let mut failures = 0;
    for w in &words {
        let p = engine.trace(w).map_err(|e| e.to_string())?;
        failures += pairs
            .iter()
            .filter(|(a, b)| !oracle_agrees(&p, w, a, b))
            .count();
    }
    ensure!(failures == 0, "{failures} mismatches");
    let commutator = engine
        .trace(&Word::parse("abAB", 2).unwrap())
        .map_err(|e| e.to_string())?;
    ensure!(
        commutator == poly("x^2 + y^2 + z^2 - x*y*z - 2"),
        "commutator {commutator}"
    );
    Ok("4000 evaluations, 0 failures; tr[X,Y] exact".to_string())
}

fn criterion_7() -> Check {
    let mut detail = Vec::new();
    for (name, f) in [
        ("T_X", fixtures::dehn_twist_x()),
        ("pA", fixtures::pseudo_anosov()),
    ] {
        let map = induced_trace_map(&f).map_err(|e| e.to_string())?;
        let bounds = certified_degrees(&map, 8, 7);
        let explicit = degree_sequence(&f, 8, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
        let orbits: Vec<_> = (1..=2)
            .map(|i| f.iterate_image(&Word::generator(i), 8, usize::MAX).words)
            .collect();
        for n in 0..=8 {
            let d = bounds[n]
                .exact()
                .ok_or_else(|| format!("{name}: degree of F^{n} not certified {:?}", bounds[n]))?;
            if let Some(&e) = explicit.degrees.get(n) {
                ensure!(
                    e == d,
                    "{name}: explicit degree {e} vs certified {d} at n = {n}"
                );
            }
            let longest = orbits.iter().map(|o| o[n].len()).max().unwrap();
            ensure!(d as usize <= longest, "{name}: d_{n} = {d} > {longest}");
        }
        detail.push(format!("{name} d_8 = {}", bounds[8].upper));
    }
    Ok(detail.join(", "))
}

fn criterion_8() -> Check {
    let report = cmd_certify(2, &RunConfig::default()).map_err(|e| e.to_string())?;
    ensure!(
        report.p == DEFAULT_PRIME && report.p_requested == DEFAULT_PRIME,
        "p {}",
        report.p
    );
    ensure!(report.s == "[[2, 1], [1, 1]]", "S {}", report.s);
    // 1 + 4 + 12 + 28 + 84 + 244 cyclically reduced words, then 50 random.
    ensure!(
        report.words_checked == 373 + 50,
        "checked {}",
        report.words_checked
    );
    ensure!(report.failures.is_empty(), "failures {:?}", report.failures);
    match build_representation(2, 2, &default_s()) {
        Err(Error::PTooSmall { p: 2 }) => {}
        other => return Err(format!("p = 2 gave {other:?}")),
    }
    Ok(format!(
        "{} words at p = 101, 0 failures; p = 2 too small",
        report.words_checked
    ))
}

fn criterion_9() -> Check {
    let pa = fixtures::pseudo_anosov();
    let config = RunConfig::default();
    let lower = cmd_lower_bound(&pa, &config)
        .map_err(|e| e.to_string())?
        .rate;
    let rho = cmd_rho(&pa, &config)
        .map_err(|e| e.to_string())?
        .estimate
        .rho;
    let ealg = cmd_ealg(&pa, &config).map_err(|e| e.to_string())?.ealg;
    ensure!(
        relative_gap(lower, rho) < 0.02,
        "lower bound {lower} vs rho {rho}"
    );
    ensure!(lower <= ealg + 0.05, "lower bound {lower} vs ealg {ealg}");
    Ok(format!(
        "lower bound {lower:.5}, rho {rho:.5}, ealg {ealg:.5}"
    ))
}

fn criterion_10() -> Check {
    let fixture = fixture_path("pseudo_anosov.json");
    let f = fricke_cli::load_automorphism(&fixture).map_err(|e| e.to_string())?;
    let config = RunConfig::default();
    let first = render(
        &cmd_compare(&f, &config).map_err(|e| e.to_string())?,
        Format::Json,
    )
    .map_err(|e| e.to_string())?;
    let second = render(
        &cmd_compare(&f, &config).map_err(|e| e.to_string())?,
        Format::Json,
    )
    .map_err(|e| e.to_string())?;
    ensure!(first == second, "in-process reports differ");

    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fricke"))
            .args(["compare", "--aut"])
            .arg(&fixture)
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    ensure!(
        a.status.success() && b.status.success(),
        "exit {:?} / {:?}",
        a.status,
        b.status
    );
    ensure!(a.stdout == b.stdout, "binary outputs differ");
    ensure!(
        a.stdout == first.as_bytes(),
        "binary output differs from in-process report"
    );
    Ok(format!("{} identical bytes x 4", first.len()))
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            1,
            "twist golden maps and semiconjugacy",
            Some(Duration::from_secs(1)),
            criterion_1,
        ),
        (
            2,
            "twist has zero entropy",
            Some(Duration::from_secs(10)),
            criterion_2,
        ),
        (
            3,
            "pseudo-Anosov rates agree",
            Some(Duration::from_secs(300)),
            criterion_3,
        ),
        (4, "rho independent of generating set", None, criterion_4),
        (5, "ealg independent of embedding", None, criterion_5),
        (
            6,
            "trace engine soundness",
            Some(Duration::from_secs(30)),
            criterion_6,
        ),
        (7, "degree bounded by word length", None, criterion_7),
        (
            8,
            "p-adic length certificate",
            Some(Duration::from_secs(60)),
            criterion_8,
        ),
        (9, "certified lower bound", None, criterion_9),
        (10, "compare is deterministic", None, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (other, _) => other,
        };
        let (tag, detail) = match outcome {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!("[{tag}] {id:>2} {name} ({elapsed:.2?}): {detail}");
    }
    println!("acceptance: {}/10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
