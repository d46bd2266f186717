//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Terms are kept in graded-lex order (total degree first, then exponents
//! compared left to right), which fixes the text and JSON serializations.
//! Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exec::ExecMode;

/// Exponent vector, one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn new(exponents: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(exponents))
    }

    fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shared, ordered list of variable names.
pub type Variables = Arc<[String]>;

pub fn variables(names: &[&str]) -> Variables {
    names.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    vars: Variables,
    terms: BTreeMap<Monomial, BigInt>,
}

/// JSON term-list form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variables: Vec<String>,
    /// Terms in descending graded-lex order.
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    /// Decimal string, to keep arbitrary precision through JSON.
    pub coefficient: String,
}

impl IntPolynomial {
    pub fn zero(vars: &Variables) -> IntPolynomial {
        IntPolynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Variables, c: impl Into<BigInt>) -> IntPolynomial {
        let mut p = IntPolynomial::zero(vars);
        p.add_term(Monomial::one(vars.len()), c.into());
        p
    }

    /// The `i`-th variable (0-based).
    pub fn var(vars: &Variables, i: usize) -> IntPolynomial {
        assert!(i < vars.len(), "variable index {i} out of range");
        let mut exps = Monomial::one(vars.len());
        exps.0[i] = 1;
        let mut p = IntPolynomial::zero(vars);
        p.add_term(exps, BigInt::one());
        p
    }

    pub fn from_terms<I>(vars: &Variables, terms: I) -> IntPolynomial
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = IntPolynomial::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn from_map(vars: &Variables, map: HashMap<Monomial, BigInt>) -> IntPolynomial {
        IntPolynomial {
            vars: vars.clone(),
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial::new(exponents))
            .cloned()
            .unwrap_or_default()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    fn check_vars(&self, other: &IntPolynomial) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomial variable lists differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero(&self.vars);
        }
        IntPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(&self.vars, 1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    ///
    /// # Panics
    ///
    /// If `point.len()` differs from the number of variables.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(BigRational::from_integer(c.clone()), |acc, (&e, v)| {
                        acc * num_traits::pow(v.clone(), e as usize)
                    })
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Exact evaluation at an integer point.
    pub fn evaluate_int(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(c.clone(), |acc, (&e, v)| {
                    acc * num_traits::pow(v.clone(), e as usize)
                })
            })
            .sum()
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// images' ring.
    pub fn substitute(&self, images: &[IntPolynomial]) -> IntPolynomial {
        self.substitute_with(images, ExecMode::default())
    }

    /// [`substitute`](Self::substitute) with an explicit execution mode. The
    /// coefficient polynomials of each power of the first variable are
    /// substituted independently (in parallel when enabled) and then combined
    /// by Horner's rule.
    pub fn substitute_with(&self, images: &[IntPolynomial], mode: ExecMode) -> IntPolynomial {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        assert!(!images.is_empty(), "substitution into a constant ring");
        let target = images[0].vars.clone();
        for img in images {
            images[0].check_vars(img);
        }
        let terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        substitute_level(&terms, 0, images, &target, mode)
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            variables: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exponents: m.0.to_vec(),
                    coefficient: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<IntPolynomial> {
        let vars: Variables = json.variables.iter().cloned().collect();
        let mut p = IntPolynomial::zero(&vars);
        for t in &json.terms {
            if t.exponents.len() != vars.len() {
                return Err(Error::VariableMismatch);
            }
            let c: BigInt = t.coefficient.parse().map_err(|_| Error::PolynomialSyntax {
                text: t.coefficient.clone(),
                reason: "coefficient is not an integer".into(),
            })?;
            p.add_term(Monomial::new(&t.exponents), c);
        }
        Ok(p)
    }

    /// Parses the text form produced by `Display`, e.g. `x^2*z - x*y - 3`.
    pub fn parse(text: &str, vars: &Variables) -> Result<IntPolynomial> {
        let err = |reason: &str| Error::PolynomialSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        // Split into signed terms.
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut p = IntPolynomial::zero(vars);
        for piece in pieces {
            let (negative, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = BigInt::one();
            let mut exps = Monomial::one(vars.len());
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().map_err(|_| err("bad integer"))?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| err(&format!("unknown variable {name:?}")))?;
                exps.0[idx] += power;
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }
}

fn substitute_level(
    terms: &[(&Monomial, &BigInt)],
    level: usize,
    images: &[IntPolynomial],
    target: &Variables,
    mode: ExecMode,
) -> IntPolynomial {
    if level == images.len() {
        let c: BigInt = terms.iter().map(|(_, c)| (*c).clone()).sum();
        return IntPolynomial::constant(target, c);
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &BigInt)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.0[level]).or_default().push((m, c));
    }
    let groups: Vec<(u32, Vec<(&Monomial, &BigInt)>)> = groups.into_iter().rev().collect();
    // Only the outermost level fans out; inner levels run on the calling thread.
    let inner_mode = ExecMode::Sequential;
    let parts: Vec<(u32, IntPolynomial)> = mode.map(&groups, |(e, group)| {
        (
            *e,
            substitute_level(group, level + 1, images, target, inner_mode),
        )
    });

    let image = &images[level];
    let mut acc = IntPolynomial::zero(target);
    let mut prev: Option<u32> = None;
    for (e, part) in parts {
        if let Some(p) = prev {
            for _ in e..p {
                acc = &acc * image;
            }
        }
        acc = &acc + &part;
        prev = Some(e);
    }
    for _ in 0..prev.unwrap_or(0) {
        acc = &acc * image;
    }
    acc
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_vars(rhs);
        let (big, small) = if self.num_terms() >= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_vars(rhs);
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero(&self.vars);
        }
        let (big, small) = if self.num_terms() >= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.num_terms() == 1 {
            // Monomial times polynomial: shifting preserves distinctness and order.
            let (m, c) = small.terms.iter().next().expect("one term");
            return IntPolynomial {
                vars: self.vars.clone(),
                terms: big
                    .terms
                    .iter()
                    .map(|(bm, bc)| (bm.mul(m), bc * c))
                    .collect(),
            };
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(big.num_terms() * small.num_terms());
        for (bm, bc) in &big.terms {
            for (sm, sc) in &small.terms {
                let prod = bc * sc;
                match acc.entry(bm.mul(sm)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                }
            }
        }
        IntPolynomial::from_map(&self.vars, acc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if m.degree() == 0 || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (name, &e) in self.vars.iter().zip(m.0.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
