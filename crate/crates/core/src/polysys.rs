//! Homogeneous polynomial systems: parsing, evaluation, degree equalization
//! and reduction modulo a prime.
//!
//! The `.poly` text format is line oriented:
//!
//! ```text
//! # a conic in P^2
//! ambient n=2
//! x0*x2 - x1^2
//! ```
//!
//! `#` starts a comment, the optional `ambient n=<int>` directive fixes the
//! ambient dimension, and every other nonempty line is one polynomial in the
//! variables `x0, x1, ...` built from integer or `a/b` coefficients with the
//! operators `+ - * ^`. Multiplication must be written out.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactmath::{Field, MathError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {inner}")]
    AtLine {
        line: usize,
        #[source]
        inner: Box<PolyError>,
    },
    #[error("polynomial is not homogeneous (terms of degree {0} and {1})")]
    NonHomogeneous(u32, u32),
    #[error("nonzero constant equation")]
    ConstantEquation,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("ambient dimension n={0} is too small; need n >= 1")]
    AmbientTooSmall(usize),
    #[error("ambient dimension cannot be inferred; add an `ambient n=<int>` line")]
    MissingAmbient,
    #[error("variable x{index} is outside P^{n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cannot equalize to degree {requested}; equations reach degree {max}")]
    DegreeTooSmall { requested: u32, max: u32 },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Exponent tuple `(m_0, ..., m_n)`.
///
/// `Ord` is the canonical monomial order used for every serialized basis:
/// decreasing lexicographic on the exponent tuple, so `x0^2 < x0*x1 < x1^2`
/// in the sense that the former is listed first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial { exponents }
    }

    /// The tuple with a single 1 in position `i`.
    pub fn unit(nvars: usize, i: usize) -> Monomial {
        let mut exponents = vec![0; nvars];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn add_unit(&self, i: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[i] += 1;
        Monomial { exponents }
    }

    /// `m - e_i`, defined only when `m_i != 0`.
    pub fn sub_unit(&self, i: usize) -> Option<Monomial> {
        let mut exponents = self.exponents.clone();
        exponents[i] = exponents[i].checked_sub(1)?;
        Some(Monomial { exponents })
    }

    /// `x^m` at `point`. The empty product is 1 in the point's field.
    pub fn evaluate(&self, point: &[Scalar], field: Field) -> Scalar {
        self.exponents
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .fold(Scalar::one(field), |acc, (&e, x)| &acc * &x.pow(e))
    }

    /// All monomials in `nvars` variables of total degree `d`, in canonical order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(remaining);
                out.push(Monomial::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=remaining).rev() {
                prefix.push(e);
                fill(prefix, remaining - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars > 0 {
            fill(&mut Vec::with_capacity(nvars), d, nvars, &mut out);
        } else if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.exponents.cmp(&self.exponents)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A nonzero homogeneous polynomial with sparse nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPolynomial {
    nvars: usize,
    degree: u32,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomogeneousPolynomial {
    /// Combines like terms and drops zeros. Fails on the zero polynomial, on
    /// mixed degrees, and on coefficients from a field other than `field`.
    pub fn new(
        nvars: usize,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<HomogeneousPolynomial, PolyError> {
        let mut combined: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if c.field() != field {
                return Err(MathError::FieldMismatch(field, c.field()).into());
            }
            let slot = combined.entry(m).or_insert_with(|| Scalar::zero(field));
            *slot = &*slot + &c;
        }
        combined.retain(|_, c| !c.is_zero());
        let mut degrees = combined.keys().map(Monomial::degree);
        let degree = degrees.next().ok_or(PolyError::ZeroPolynomial)?;
        if let Some(other) = degrees.find(|&d| d != degree) {
            return Err(PolyError::NonHomogeneous(degree, other));
        }
        Ok(HomogeneousPolynomial {
            nvars,
            degree,
            field,
            terms: combined,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// `Σ c_m x^m`. Coefficients are reduced into the point's field first.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let field = point[0].field();
        if let Some(x) = point.iter().find(|x| x.field() != field) {
            return Err(MathError::FieldMismatch(field, x.field()).into());
        }
        let mut acc = Scalar::zero(field);
        for (m, c) in &self.terms {
            let c = c.reduce_into(field)?;
            acc = &acc + &(&c * &m.evaluate(point, field));
        }
        Ok(acc)
    }

    pub fn mul_monomial(&self, q: &Monomial) -> HomogeneousPolynomial {
        HomogeneousPolynomial {
            nvars: self.nvars,
            degree: self.degree + q.degree(),
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.mul(q), c.clone())).collect(),
        }
    }

    /// Reduces the coefficients into `field`; `Ok(None)` if every coefficient vanishes.
    pub fn reduce_into(&self, field: Field) -> Result<Option<HomogeneousPolynomial>, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.reduce_into(field)?)))
            .collect::<Result<Vec<_>, MathError>>()?;
        match HomogeneousPolynomial::new(self.nvars, field, terms) {
            Ok(p) => Ok(Some(p)),
            Err(PolyError::ZeroPolynomial) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.as_rational().is_some_and(|r| r.is_negative());
            let magnitude = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialSystem {
    ambient_n: usize,
    field: Field,
    equations: Vec<HomogeneousPolynomial>,
    common_degree: Option<u32>,
}

impl PolynomialSystem {
    pub fn new(
        ambient_n: usize,
        field: Field,
        equations: Vec<HomogeneousPolynomial>,
    ) -> Result<PolynomialSystem, PolyError> {
        if ambient_n == 0 {
            return Err(PolyError::AmbientTooSmall(ambient_n));
        }
        for eq in &equations {
            if eq.nvars() != ambient_n + 1 {
                return Err(PolyError::ArityMismatch {
                    expected: ambient_n + 1,
                    found: eq.nvars(),
                });
            }
            if eq.field() != field {
                return Err(MathError::FieldMismatch(field, eq.field()).into());
            }
            if eq.degree() == 0 {
                return Err(PolyError::ConstantEquation);
            }
        }
        Ok(PolynomialSystem {
            ambient_n,
            field,
            equations,
            common_degree: None,
        })
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn nvars(&self) -> usize {
        self.ambient_n + 1
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn equations(&self) -> &[HomogeneousPolynomial] {
        &self.equations
    }

    /// Set once the system has been equalized.
    pub fn common_degree(&self) -> Option<u32> {
        self.common_degree
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.equations.iter().map(HomogeneousPolynomial::degree).max()
    }

    /// True iff every equation vanishes at `point`.
    pub fn vanishes_at(&self, point: &[Scalar]) -> Result<bool, PolyError> {
        for eq in &self.equations {
            if !eq.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equalizes to the maximum equation degree, or to degree 1 for a system
    /// without equations.
    pub fn equalize_degrees(&self) -> PolynomialSystem {
        let d = self.max_degree().unwrap_or(1);
        self.equalize_to_degree(d).expect("max degree is admissible")
    }

    /// Replaces each equation `p` of degree `d' < d` by `{q·p : q ∈ M_{n,d-d'}}`,
    /// keeping input order and multiplying in canonical monomial order.
    pub fn equalize_to_degree(&self, d: u32) -> Result<PolynomialSystem, PolyError> {
        let max = self.max_degree().unwrap_or(1);
        if d < max || d == 0 {
            return Err(PolyError::DegreeTooSmall { requested: d, max });
        }
        let mut equations = Vec::new();
        for eq in &self.equations {
            if eq.degree() == d {
                equations.push(eq.clone());
            } else {
                for q in Monomial::all_of_degree(self.nvars(), d - eq.degree()) {
                    equations.push(eq.mul_monomial(&q));
                }
            }
        }
        Ok(PolynomialSystem {
            ambient_n: self.ambient_n,
            field: self.field,
            equations,
            common_degree: Some(d),
        })
    }

    /// Reduces every coefficient into F_p. Equations that vanish identically
    /// are dropped and reported in the returned warnings.
    pub fn reduce_mod_p(&self, p: u64) -> Result<(PolynomialSystem, Vec<String>), PolyError> {
        let field = Field::prime(p)?;
        let mut equations = Vec::new();
        let mut warnings = Vec::new();
        for (i, eq) in self.equations.iter().enumerate() {
            match eq.reduce_into(field)? {
                Some(r) => equations.push(r),
                None => warnings.push(format!(
                    "equation {} vanishes modulo {p} and was dropped",
                    i + 1
                )),
            }
        }
        Ok((
            PolynomialSystem {
                ambient_n: self.ambient_n,
                field,
                equations,
                common_degree: self.common_degree,
            },
            warnings,
        ))
    }

    /// Canonical `.poly` text; always carries the ambient directive.
    pub fn to_text(&self) -> String {
        let mut out = format!("ambient n={}\n", self.ambient_n);
        for eq in &self.equations {
            out.push_str(&eq.to_string());
            out.push('\n');
        }
        out
    }
}

pub fn parse_system(text: &str) -> Result<PolynomialSystem, PolyError> {
    let mut ambient: Option<usize> = None;
    let mut parsed: Vec<(usize, Vec<RawTerm>)> = Vec::new();
    let mut max_index: Option<usize> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if content.trim_start().starts_with("ambient") {
            if ambient.is_some() {
                return Err(PolyError::Syntax {
                    line: line_no,
                    column: 1,
                    message: "duplicate ambient directive".into(),
                });
            }
            ambient = Some(parse_directive(content, line_no)?);
            continue;
        }
        let terms = LineParser::new(content, line_no).parse()?;
        check_line_degrees(&terms).map_err(|inner| PolyError::AtLine {
            line: line_no,
            inner: Box::new(inner),
        })?;
        for t in &terms {
            if let Some(&top) = t.vars.keys().next_back() {
                max_index = max_index.max(Some(top));
            }
        }
        parsed.push((line_no, terms));
    }

    let n = match (ambient, max_index) {
        (Some(n), Some(top)) if top > n => {
            return Err(PolyError::VariableOutOfRange { index: top, n });
        }
        (Some(n), _) => n,
        (None, Some(top)) => top,
        (None, None) => return Err(PolyError::MissingAmbient),
    };
    if n == 0 {
        return Err(PolyError::AmbientTooSmall(0));
    }

    let nvars = n + 1;
    let mut equations = Vec::new();
    for (line, terms) in parsed {
        let terms = terms.into_iter().map(|t| {
            let mut exps = vec![0u32; nvars];
            for (i, e) in t.vars {
                exps[i] += e;
            }
            (Monomial::new(exps), Scalar::Rational(t.coefficient))
        });
        match HomogeneousPolynomial::new(nvars, Field::Rational, terms) {
            Ok(p) if p.degree() == 0 => {
                return Err(PolyError::AtLine {
                    line,
                    inner: Box::new(PolyError::ConstantEquation),
                })
            }
            Ok(p) => equations.push(p),
            Err(PolyError::ZeroPolynomial) => {}
            Err(e) => {
                return Err(PolyError::AtLine {
                    line,
                    inner: Box::new(e),
                })
            }
        }
    }
    PolynomialSystem::new(n, Field::Rational, equations)
}

/// Homogeneity and non-constancy of one parsed line, after combining like terms.
fn check_line_degrees(terms: &[RawTerm]) -> Result<(), PolyError> {
    let mut combined: BTreeMap<Vec<(usize, u32)>, BigRational> = BTreeMap::new();
    for t in terms {
        let key = t.vars.iter().filter(|(_, &e)| e > 0).map(|(&i, &e)| (i, e)).collect();
        *combined.entry(key).or_insert_with(BigRational::zero) += &t.coefficient;
    }
    let mut degrees = combined
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, _)| k.iter().map(|(_, e)| e).sum::<u32>());
    let Some(first) = degrees.next() else {
        return Ok(());
    };
    if let Some(other) = degrees.find(|&d| d != first) {
        return Err(PolyError::NonHomogeneous(first, other));
    }
    if first == 0 {
        return Err(PolyError::ConstantEquation);
    }
    Ok(())
}

fn parse_directive(content: &str, line: usize) -> Result<usize, PolyError> {
    let bad = |message: &str| PolyError::Syntax {
        line,
        column: content.len() - content.trim_start().len() + 1,
        message: message.into(),
    };
    let rest = content.trim().strip_prefix("ambient").unwrap_or("").trim();
    let value = rest
        .strip_prefix("n")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| bad("expected `ambient n=<int>`"))?;
    value
        .trim()
        .parse::<usize>()
        .map_err(|_| bad("ambient dimension must be a non-negative integer"))
}

#[derive(Debug)]
struct RawTerm {
    coefficient: BigRational,
    vars: BTreeMap<usize, u32>,
}

struct LineParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    text: &'a str,
}

impl<'a> LineParser<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        LineParser {
            chars: text
                .chars()
                .enumerate()
                .filter(|(_, c)| !c.is_whitespace())
                .map(|(i, c)| (i + 1, c))
                .collect(),
            pos: 0,
            line,
            text,
        }
    }

    fn error(&self, message: impl Into<String>) -> PolyError {
        let column = self
            .chars
            .get(self.pos)
            .map_or(self.text.chars().count() + 1, |(col, _)| *col);
        PolyError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn parse(mut self) -> Result<Vec<RawTerm>, PolyError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let mut term = self.term()?;
            if negate {
                term.coefficient = -term.coefficient;
            }
            terms.push(term);
            match self.peek() {
                None => return Ok(terms),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(c) => return Err(self.error(format!("unexpected `{c}`; expected `+`, `-` or `*`"))),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RawTerm, PolyError> {
        let mut term = RawTerm {
            coefficient: BigRational::from_integer(1.into()),
            vars: BTreeMap::new(),
        };
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let den = if self.peek() == Some('/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        den
                    } else {
                        BigInt::from(1)
                    };
                    term.coefficient *= BigRational::new(num, den);
                }
                Some('x') => {
                    self.pos += 1;
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.error("expected variable index after `x`"));
                    }
                    let index = self.small_integer()?;
                    let exp = if self.peek() == Some('^') {
                        self.pos += 1;
                        u32::try_from(self.small_integer()?)
                            .map_err(|_| self.error("exponent too large"))?
                    } else {
                        1
                    };
                    *term.vars.entry(index).or_insert(0) += exp;
                }
                Some(c) => return Err(self.error(format!("unexpected `{c}`; expected a coefficient or variable"))),
                None => return Err(self.error("unexpected end of line")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(term);
            }
        }
    }

    fn digits(&mut self) -> Result<String, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().map(|(_, c)| *c).collect())
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let digits = self.digits()?;
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_integer(&mut self) -> Result<usize, PolyError> {
        let digits = self.digits()?;
        digits.parse().map_err(|_| self.error("integer too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_i64(v, Field::Rational)
    }

    #[test]
    fn parse_conic() {
        let s = parse_system("x0*x2 - x1^2").unwrap();
        assert_eq!(s.ambient_n(), 2);
        assert_eq!(s.equations().len(), 1);
        assert_eq!(s.equations()[0].degree(), 2);
    }

    #[test]
    fn parse_rejects_non_homogeneous() {
        let err = parse_system("x0 + 1").unwrap_err();
        assert!(matches!(
            err,
            PolyError::AtLine { line: 1, ref inner } if matches!(**inner, PolyError::NonHomogeneous(..))
        ));
    }

    #[test]
    fn parse_empty_with_directive() {
        let s = parse_system("# nothing\nambient n=1\n").unwrap();
        assert_eq!(s.ambient_n(), 1);
        assert!(s.equations().is_empty());
        assert_eq!(parse_system("").unwrap_err(), PolyError::MissingAmbient);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_system("x0*x0"), Err(PolyError::AmbientTooSmall(0))));
        assert!(matches!(
            parse_system("x0 + 3"),
            Err(PolyError::AtLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_system("ambient n=1\n7"),
            Err(PolyError::AtLine { line: 2, ref inner }) if **inner == PolyError::ConstantEquation
        ));
        assert_eq!(
            parse_system("x0*x1 + 2x1^2").unwrap_err(),
            PolyError::Syntax {
                line: 1,
                column: 10,
                message: "unexpected `x`; expected `+`, `-` or `*`".into()
            }
        );
        assert!(matches!(
            parse_system("ambient n=1\nx0*x2"),
            Err(PolyError::VariableOutOfRange { index: 2, n: 1 })
        ));
        assert!(matches!(parse_system("x0 +"), Err(PolyError::Syntax { column: 5, .. })));
        assert!(matches!(parse_system("y0"), Err(PolyError::Syntax { column: 1, .. })));
        assert!(matches!(parse_system("x1/0"), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn zero_polynomials_are_dropped() {
        let s = parse_system("x0*x1 - x1*x0\nx0^2 - x1^2").unwrap();
        assert_eq!(s.equations().len(), 1);
    }

    #[test]
    fn rational_coefficients() {
        let s = parse_system("1/2*x0^2 + 3/4*x1*x0 - 2*x1^2").unwrap();
        assert_eq!(s.equations()[0].to_string(), "1/2*x0^2 + 3/4*x0*x1 - 2*x1^2");
    }

    #[test]
    fn evaluate_examples() {
        let s = parse_system("x0*x2 - x1^2").unwrap();
        let p = &s.equations()[0];
        assert_eq!(p.evaluate(&[q(1), q(2), q(4)]).unwrap(), q(0));
        let f3 = Field::prime(3).unwrap();
        let pt: Vec<Scalar> = [1, 1, 0].iter().map(|&v| Scalar::from_i64(v, f3)).collect();
        assert_eq!(p.evaluate(&pt).unwrap(), Scalar::from_i64(2, f3));
        assert_eq!(p.evaluate(&[q(0), q(0), q(0)]).unwrap(), q(0));
    }

    #[test]
    fn evaluate_mixed_point_fields_is_an_error() {
        let s = parse_system("x0*x2 - x1^2").unwrap();
        let f3 = Field::prime(3).unwrap();
        let pt = vec![q(1), Scalar::one(f3), q(0)];
        assert!(matches!(
            s.equations()[0].evaluate(&pt),
            Err(PolyError::Math(MathError::FieldMismatch(..)))
        ));
    }

    #[test]
    fn equalize_linear_in_p1() {
        let s = parse_system("x0\nx1^2").unwrap().equalize_degrees();
        let text: Vec<String> = s.equations().iter().map(|e| e.to_string()).collect();
        assert_eq!(text, vec!["x0^2", "x0*x1", "x1^2"]);
        assert_eq!(s.common_degree(), Some(2));
    }

    #[test]
    fn equalize_identity_and_mixed() {
        let conic = parse_system("x0*x2 - x1^2").unwrap();
        let eq = conic.equalize_degrees();
        assert_eq!(eq.equations(), conic.equations());

        let mixed = parse_system("x0\nx1^2 - x0*x2").unwrap().equalize_degrees();
        let text: Vec<String> = mixed.equations().iter().map(|e| e.to_string()).collect();
        assert_eq!(text, vec!["x0^2", "x0*x1", "x0*x2", "-x0*x2 + x1^2"]);
    }

    #[test]
    fn equalize_to_lower_degree_fails() {
        let s = parse_system("x0^3 - x1^3").unwrap();
        assert!(matches!(
            s.equalize_to_degree(2),
            Err(PolyError::DegreeTooSmall { requested: 2, max: 3 })
        ));
        let empty = parse_system("ambient n=2").unwrap().equalize_degrees();
        assert_eq!(empty.common_degree(), Some(1));
    }

    #[test]
    fn reduce_mod_p_examples() {
        let s = parse_system("x0*x2 - x1^2").unwrap();
        let (r, warnings) = s.reduce_mod_p(3).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(r.equations()[0].to_string(), "x0*x2 + 2*x1^2");

        let s = parse_system("3*x0^2\nx0*x1").unwrap();
        let (r, warnings) = s.reduce_mod_p(3).unwrap();
        assert_eq!(r.equations().len(), 1);
        assert_eq!(warnings.len(), 1);

        let s = parse_system("1/2*x0^2 + x1^2").unwrap();
        assert!(matches!(
            s.reduce_mod_p(2),
            Err(PolyError::Math(MathError::DenominatorDivisible { .. }))
        ));
        assert!(matches!(
            s.reduce_mod_p(4),
            Err(PolyError::Math(MathError::NotPrime(4)))
        ));
    }

    #[test]
    fn monomial_enumeration_order() {
        let ms: Vec<Vec<u32>> = Monomial::all_of_degree(2, 2)
            .into_iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        assert_eq!(ms, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(Monomial::all_of_degree(3, 0).len(), 1);
    }

    #[test]
    fn canonical_text_round_trips() {
        let s = parse_system("ambient n=3\n-x1^2 + x0*x2 # conic\n\n2/3*x3 - x0").unwrap();
        let text = s.to_text();
        assert_eq!(text, "ambient n=3\nx0*x2 - x1^2\n-x0 + 2/3*x3\n");
        assert_eq!(parse_system(&text).unwrap(), s);
    }
}
