//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] lives in a fixed ambient ring `Q[x_1, ..., x_n]`. Terms are
//! kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic, so equality, iteration and printing are deterministic.
//!
//! The text form prints terms from the largest monomial down, rationals as
//! `p/q` (or `p` when the denominator is one) and variables as `e1`, `e2`,
//! ... unless other names are supplied:
//!
//! ```
//! use flagchow::poly::Poly;
//! let f = Poly::parse("e1^2 - 1/2*e1*e2 + 3", 2).unwrap();
//! assert_eq!(f.to_string(), "e1^2 - 1/2*e1*e2 + 3");
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| u64::from(e) * u64::from(w))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
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

/// A polynomial with rational coefficients in a fixed number of variables.
///
/// No zero coefficient is ever stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn term(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_{i+1}` (indices are zero based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, i), Rational::one())
    }

    /// Linear form `sum coeffs[i] * x_{i+1}`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), rat(c));
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Largest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only the monomials accepted by `keep`.
    ///
    /// `keep` must be closed under division (if it accepts `m` it accepts
    /// every divisor of `m`) for chained products to stay exact.
    pub fn mul_filtered<F>(&self, other: &Poly, keep: F) -> Poly
    where
        F: Fn(&Monomial) -> bool,
    {
        assert_eq!(self.nvars, other.nvars, "ambient variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if keep(&m) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u64) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::AmbientMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Applies a map that sends each monomial to a signed monomial
    /// (`true` = negate). Used for signed permutations of the variables.
    pub fn map_monomials<F>(&self, f: F) -> Poly
    where
        F: Fn(&Monomial) -> (bool, Monomial),
    {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let (neg, m2) = f(m);
            out.add_term(m2, if neg { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// one ambient ring, which becomes the ambient ring of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::AmbientMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, Poly::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::AmbientMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        // Cache powers per variable; exponents stay small in practice.
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (m2, c2) in t.terms {
                out.add_term(m2, c2);
            }
        }
        Ok(out)
    }

    /// Multivariate division by a single divisor using graded-lex leading
    /// terms. Returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => {
                return Err(Error::Precondition("division by the zero polynomial".into()));
            }
        };
        let mut p = self.clone();
        let mut q = Poly::zero(self.nvars);
        let mut r = Poly::zero(self.nvars);
        while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            match lm.quotient_of(&m) {
                Some(qm) => {
                    let qc = &c / &lc;
                    p = &p - &divisor.mul_monomial(&qm).scale(&qc);
                    q.add_term(qm, qc);
                }
                None => {
                    p.add_term(m.clone(), -c.clone());
                    r.add_term(m, c);
                }
            }
        }
        Ok((q, r))
    }

    /// Division that must be exact; a nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::DivisionRemainder(r.to_string()));
        }
        Ok(q)
    }

    /// Prints with custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display_with(names).to_string()
    }

    /// Parses the text form with variables `e1..en`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        Self::parse_with(s, &default_names(nvars))
    }

    /// Parses the text form with the given variable names.
    pub fn parse_with(s: &str, names: &[String]) -> Result<Poly> {
        Parser::new(s, names).parse()
    }
}

/// `e1, ..., en`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("e{i}")).collect()
}

/// Elementary symmetric polynomial of degree `k` in the chosen variables
/// (zero based indices into an ambient ring with `nvars` variables).
pub fn elementary_symmetric(nvars: usize, k: usize, vars: &[usize]) -> Result<Poly> {
    if k > vars.len() {
        return Err(Error::OutOfRange {
            what: "elementary symmetric degree",
            value: k as i64,
            min: 0,
            max: vars.len() as i64,
        });
    }
    if let Some(&bad) = vars.iter().find(|&&v| v >= nvars) {
        return Err(Error::OutOfRange {
            what: "variable index",
            value: bad as i64,
            min: 0,
            max: nvars as i64 - 1,
        });
    }
    Ok(elementary_symmetric_all(nvars, vars, k).swap_remove(k))
}

/// `[sigma_0, ..., sigma_upto]` in the chosen variables.
pub(crate) fn elementary_symmetric_all(nvars: usize, vars: &[usize], upto: usize) -> Vec<Poly> {
    let mut e = vec![Poly::zero(nvars); upto + 1];
    e[0] = Poly::one(nvars);
    for &v in vars {
        let x = Poly::var(nvars, v);
        for k in (1..=upto).rev() {
            let t = &e[k - 1] * &x;
            e[k] = &e[k] + &t;
        }
    }
    e
}

/// Elementary symmetric polynomials of arbitrary polynomials:
/// `[sigma_0, ..., sigma_upto]` of `values`.
pub fn elementary_symmetric_of(nvars: usize, values: &[Poly], upto: usize) -> Vec<Poly> {
    let mut e = vec![Poly::zero(nvars); upto + 1];
    e[0] = Poly::one(nvars);
    for x in values {
        for k in (1..=upto).rev() {
            let t = &e[k - 1] * x;
            e[k] = &e[k] + &t;
        }
    }
    e
}

pub fn power_sum(nvars: usize, k: u32, vars: &[usize]) -> Poly {
    let mut p = Poly::zero(nvars);
    for &v in vars {
        let mut e = vec![0; nvars];
        e[v] = k;
        p.add_term(Monomial::new(e), Rational::one());
    }
    p
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ambient variable count mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ambient variable count mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ambient variable count mismatch")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m, self.names)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(s: &'a str, names: &'a [String]) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
            names,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut out = Poly::zero(n);
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut negative = false;
        let mut first = true;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                }
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                _ if first => {}
                None => break,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            first = false;
            self.skip_ws();
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
            negative = false;
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            // ASCII digits are valid UTF-8.
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let n = self.names.len();
        let mut exps = vec![0u32; n];
        let mut coeff = Rational::one();
        loop {
            self.skip_ws();
            if let Some(num) = self.digits() {
                let num: BigInt = num.parse().expect("digits");
                let mut value = Rational::from_integer(num);
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = match self.digits() {
                        Some(d) => d.parse::<BigInt>().expect("digits"),
                        None => return self.err("expected denominator"),
                    };
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= Rational::from_integer(den);
                }
                coeff *= value;
            } else if let Some(name) = self.ident() {
                let idx = match self.names.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => return self.err(format!("unknown variable '{name}'")),
                };
                self.skip_ws();
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    e = match self.digits().map(str::parse::<u32>) {
                        Some(Ok(e)) => e,
                        Some(Err(_)) => return self.err("exponent too large"),
                        None => return self.err("expected exponent"),
                    };
                }
                exps[idx] = match exps[idx].checked_add(e) {
                    Some(v) => v,
                    None => return self.err("exponent overflow"),
                };
            } else {
                return self.err("expected a number or a variable");
            }
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                // Juxtaposition such as `2e1`.
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
                _ => break,
            }
        }
        Ok((Monomial::new(exps), coeff))
    }
}
