//! Exact scalars: rationals and sparse multivariate polynomials over the
//! rationals with named indeterminates.
//!
//! Polynomials are kept in canonical form at all times. Terms live in a
//! `BTreeMap` keyed by [`Monomial`], ordered graded-lexicographically with
//! indeterminates compared alphabetically, and zero coefficients are never
//! stored. Two equal polynomials therefore have identical representations
//! and identical printed forms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Ring operations shared by every coefficient type the algebra code runs on.
///
/// Implemented for machine integers (fast exhaustive searches over integral
/// tensors), [`Rational`] and [`Poly`].
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Ring for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Ring for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
}

impl Ring for Poly {
    fn from_i64(v: i64) -> Self {
        Poly::from_i64(v)
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A power product of named indeterminates. Factors are sorted by name and
/// every exponent is positive; the empty product is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((na, ea)), Some((nb, eb))) => match na.cmp(nb) {
                    Ordering::Less => {
                        out.push((na.clone(), *ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((nb.clone(), *eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((na.clone(), ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((*y).clone());
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// Splits off the factor `name^e`, returning `(e, rest)`.
    fn split(&self, name: &str) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut exp = 0;
        for (n, e) in &self.0 {
            if n == name {
                exp = *e;
            } else {
                rest.push((n.clone(), *e));
            }
        }
        (exp, Monomial(rest))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // Lexicographic on exponent vectors, names in alphabetical order.
            let (mut a, mut b) = (self.0.iter(), other.0.iter());
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((na, ea)), Some((nb, eb))) => {
                        if na != nb {
                            // The alphabetically earlier name is absent from the other side.
                            return if na < nb {
                                Ordering::Greater
                            } else {
                                Ordering::Less
                            };
                        }
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_i64(v: i64) -> Self {
        Poly::constant(Rational::from_integer(v.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), Rational::one());
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// True iff the polynomial has no terms. Exact.
    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial, `None` if any indeterminate occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.numer().to_i64())
    }

    pub fn indeterminates(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    /// Leading (largest) term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact polynomial composition: every bound indeterminate is replaced by
    /// its image, unbound indeterminates stay symbolic.
    pub fn substitute(&self, bindings: &BTreeMap<String, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut kept = Monomial::one();
            for (name, e) in &m.0 {
                match bindings.get(name) {
                    Some(image) => term = &term * &image.pow(*e),
                    None => kept = kept.mul(&Monomial(vec![(name.clone(), *e)])),
                }
            }
            if !kept.is_one() {
                term = &term * &Poly::from_terms([(kept, Rational::one())]);
            }
            out += term;
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in `name` alone, indexed
    /// by degree. The coefficients may still mention other indeterminates.
    pub fn coefficients_in(&self, name: &str) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(name);
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, Poly::zero());
            }
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Rational roots of a univariate polynomial, sorted ascending.
    /// Returns `None` when more than one indeterminate occurs.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let vars = self.indeterminates();
        if vars.len() > 1 {
            return None;
        }
        let Some(name) = vars.iter().next() else {
            return Some(Vec::new());
        };
        let coeffs: Vec<Rational> = self
            .coefficients_in(name)
            .iter()
            .map(|c| c.as_rational().expect("univariate"))
            .collect();
        Some(rational_roots_of(&coeffs))
    }
}

/// Rational roots of `sum coeffs[k] x^k` by the rational root test.
fn rational_roots_of(coeffs: &[Rational]) -> Vec<Rational> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[low..];
    if ints.len() <= 1 {
        return roots;
    }
    let eval = |x: &Rational| {
        ints.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    };
    let numer_divs = divisors(&ints[0]);
    let denom_divs = divisors(ints.last().unwrap());
    let mut seen = BTreeSet::new();
    for p in &numer_divs {
        for q in &denom_divs {
            for sign in [1, -1] {
                let cand = Rational::new(p * BigInt::from(sign), q.clone());
                if seen.insert(cand.clone()) && eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl From<Rational> for Poly {
    fn from(r: Rational) -> Self {
        Poly::constant(r)
    }
}

impl From<i64> for Poly {
    fn from(v: i64) -> Self {
        Poly::from_i64(v)
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

/// Parses integers, fractions `p/q`, names, and `+ - * ^` expressions with
/// parentheses into a canonical [`Poly`].
pub fn parse_scalar(text: &str) -> Result<Poly> {
    let mut parser = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    if parser.pos == parser.bytes.len() {
        return Err(parser.error("empty expression"));
    }
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::ScalarSyntax {
            input: self.src.to_string(),
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer: BigInt = self.digits().parse().expect("digits");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected a positive integer denominator"));
                    }
                    let denom: BigInt = d.parse().expect("digits");
                    if denom.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(Poly::constant(Rational::new(numer, denom)));
                }
                self.pos = save;
                Ok(Poly::constant(Rational::from_integer(numer)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Poly::var(&self.src[start..self.pos]))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn substitute(p: &Poly, bindings: &BTreeMap<String, Poly>) -> Poly {
    p.substitute(bindings)
}

pub fn is_identically_zero(p: &Poly) -> bool {
    p.is_identically_zero()
}
