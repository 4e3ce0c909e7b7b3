//! Exact polynomials in the simple-root variables `a1..an`.
//!
//! [`Poly`] is a sparse map from exponent vectors to nonzero big-integer
//! coefficients. [`RatFn`] is the small localisation needed by triangular
//! inversion: numerators are polynomials and denominators are multisets of
//! positive roots, kept factored. [`LaurentV`] holds graded dimensions in
//! `Z[v, v^-1]`.
//!
//! Canonical printing uses graded lexicographic order with `a1 > a2 > ...`,
//! leading term first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootDatum};

/// Exponent vector. Ordered graded-lexicographically with `a1 > a2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
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

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            write!(f, "a{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            first = false;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial with integer coefficients in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        Poly { nvars, terms }
    }

    /// The variable `a_i`, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(nvars, i - 1), BigInt::one());
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// The degree-1 form of a root, coefficients = root coordinates.
    pub fn linear_form(beta: &Root) -> Self {
        let n = beta.rank();
        let mut p = Poly::zero(n);
        for (i, &c) in beta.coords().iter().enumerate() {
            if c != 0 {
                p.terms.insert(Monomial::var(n, i), BigInt::from(c));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.degree() == 0 && c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_default()
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
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

    fn check_arity(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Common total degree of all terms; the zero polynomial has degree 0.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let Some(d) = it.next() else { return Ok(0) };
        if it.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Exact division. Returns `q` with `self = q * g`, or `NotDivisible`.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly> {
        self.check_arity(g);
        let (lm, lc) = g.leading().ok_or(Error::NotDivisible)?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(lm).ok_or(Error::NotDivisible)?;
            let (c, r) = rc.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (gm, gc) in &g.terms {
                rem.add_term(gm.mul(&m), -(gc * &c));
            }
            q.add_term(m, c);
        }
        Ok(q)
    }

    /// Whether `beta^m` divides `self`. Zero is divisible by everything.
    pub fn divides_power(&self, beta: &Root, m: u32) -> bool {
        if m == 0 || self.is_zero() {
            return true;
        }
        let l = Poly::linear_form(beta);
        let mut f = self.clone();
        for _ in 0..m {
            match f.exact_divide(&l) {
                Ok(q) => f = q,
                Err(_) => return false,
            }
        }
        true
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Coefficient vector if the polynomial is a linear form (degree exactly 1).
    pub fn linear_coefficients(&self) -> Option<Vec<i32>> {
        if self.is_zero() {
            return None;
        }
        let mut out = vec![0i32; self.nvars];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1)?;
            out[i] = c.to_i32()?;
        }
        Some(out)
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    /// Factors `self` as `sign * prod(roots)` over the positive roots of
    /// `datum`, when it has that shape.
    pub fn factor_root_product(&self, datum: &RootDatum) -> Option<(i32, BTreeMap<Root, u32>)> {
        let (rest, factors) = self.strip_root_factors(datum);
        if rest.is_one() {
            Some((1, factors))
        } else if (-&rest).is_one() {
            Some((-1, factors))
        } else {
            None
        }
    }

    /// Divides out positive-root linear factors as often as possible.
    fn strip_root_factors(&self, datum: &RootDatum) -> (Poly, BTreeMap<Root, u32>) {
        let mut rest = self.clone();
        let mut factors = BTreeMap::new();
        if rest.is_zero() {
            return (rest, factors);
        }
        let d = rest.homogeneous_degree().unwrap_or(u32::MAX);
        let mut remaining = d;
        for alpha in datum.positive_roots() {
            if remaining == 0 {
                break;
            }
            let l = Poly::linear_form(alpha);
            while remaining > 0 {
                match rest.exact_divide(&l) {
                    Ok(q) => {
                        rest = q;
                        *factors.entry(alpha.clone()).or_insert(0) += 1;
                        remaining = remaining.saturating_sub(1);
                    }
                    Err(_) => break,
                }
            }
        }
        (rest, factors)
    }

    /// Renders as a product of positive-root factors where possible, e.g.
    /// `-(a5+a6)*a2`. Falls back to the expanded form for the cofactor.
    pub fn render_factored(&self, datum: &RootDatum) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (mut rest, factors) = self.strip_root_factors(datum);
        if factors.is_empty() {
            return self.to_string();
        }
        let mut sign = "";
        let content = rest.content();
        if rest.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            sign = "-";
            rest = -&rest;
        }
        let mut parts = Vec::new();
        if !rest.is_one() {
            if rest.num_terms() == 1 || (rest.homogeneous_degree() == Ok(0)) {
                parts.push(rest.to_string());
            } else {
                parts.push(format!("({rest})"));
            }
        }
        let _ = content;
        let mut ordered: Vec<(&Root, &u32)> = factors.iter().collect();
        ordered.sort_by_key(|(r, _)| datum.positive_root_index(r));
        for (r, &e) in ordered {
            let base = Poly::linear_form(r);
            let s = if base.num_terms() == 1 { base.to_string() } else { format!("({base})") };
            if e == 1 {
                parts.push(s);
            } else {
                parts.push(format!("{s}^{e}"));
            }
        }
        format!("{sign}{}", parts.join("*"))
    }

    /// Parses expressions built from integers, `a<i>`, `+ - * ^` and
    /// parentheses, e.g. `-(a3+a4+a5)*(a2+a3)` or `2*a1^2-a2`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, nvars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("trailing input in `{s}` at {}", p.pos)));
        }
        Ok(out)
    }

    /// Map `{ "exponents": coefficient }` with exponents joined by commas.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let k: Vec<String> = m.0.iter().map(|e| e.to_string()).collect();
                (k.join(","), c.to_string())
            })
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check_arity(rhs);
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add, Poly);
forward_owned!(Sub, sub, Poly);
forward_owned!(Mul, mul, Poly);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?.to_u32().ok_or_else(|| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'a') => {
                self.pos += 1;
                let i = self.number()?.to_usize().ok_or_else(|| self.err("bad index"))?;
                if i == 0 || i > self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                Ok(Poly::var(self.nvars, i))
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(self.nvars, self.number()?)),
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// A fraction whose denominator is a product of positive roots.
#[derive(Debug, Clone)]
pub struct RatFn {
    num: Poly,
    den: BTreeMap<Root, u32>,
}

impl RatFn {
    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: BTreeMap::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    /// `num / prod(den)`, brought to lowest terms.
    pub fn new(num: Poly, den: BTreeMap<Root, u32>) -> Self {
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<Root, u32> {
        &self.den
    }

    pub fn denominator_poly(&self) -> Poly {
        let n = self.num.nvars();
        let mut p = Poly::one(n);
        for (r, &e) in &self.den {
            p = &p * &Poly::linear_form(r).pow(e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.values().all(|&e| e == 0)
    }

    /// The polynomial value if the denominator has cancelled completely.
    pub fn to_poly(&self) -> Option<Poly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    /// `1 / (sign * prod(factors))`.
    pub fn inverse_of_root_product(nvars: usize, sign: i32, factors: BTreeMap<Root, u32>) -> Self {
        RatFn { num: Poly::constant(nvars, sign), den: factors }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut den = std::mem::take(&mut self.den);
        for (r, e) in den.iter_mut() {
            let l = Poly::linear_form(r);
            while *e > 0 {
                match self.num.exact_divide(&l) {
                    Ok(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        self.den = den;
    }

    /// Multiplies the numerator by the factors of `lcm / den`.
    fn lift_to(&self, lcm: &BTreeMap<Root, u32>) -> Poly {
        let mut num = self.num.clone();
        for (r, &e) in lcm {
            let have = self.den.get(r).copied().unwrap_or(0);
            if e > have {
                num = &num * &Poly::linear_form(r).pow(e - have);
            }
        }
        num
    }

    fn lcm_den(&self, other: &RatFn) -> BTreeMap<Root, u32> {
        let mut lcm = self.den.clone();
        for (r, &e) in &other.den {
            let slot = lcm.entry(r.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        lcm
    }

    pub fn scalar_mul_poly(&self, p: &Poly) -> RatFn {
        RatFn::new(&self.num * p, self.den.clone())
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.denominator_poly() == &other.num * &self.denominator_poly()
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;

    fn add(self, rhs: &RatFn) -> RatFn {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let lcm = self.lcm_den(rhs);
        let num = &self.lift_to(&lcm) + &rhs.lift_to(&lcm);
        RatFn::new(num, lcm)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;

    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;

    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.num.nvars());
        }
        let mut den = self.den.clone();
        for (r, &e) in &rhs.den {
            *den.entry(r.clone()).or_insert(0) += e;
        }
        RatFn::new(&self.num * &rhs.num, den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;

    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(Add, add, RatFn);
forward_owned!(Sub, sub, RatFn);
forward_owned!(Mul, mul, RatFn);

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(r, &e)| {
                let l = Poly::linear_form(r);
                let s = if l.num_terms() == 1 { l.to_string() } else { format!("({l})") };
                if e == 1 {
                    s
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        let num = if self.num.num_terms() == 1 { self.num.to_string() } else { format!("({})", self.num) };
        write!(f, "{num}/({})", parts.join("*"))
    }
}

/// An element of `Z[v, v^-1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentV(BTreeMap<i64, i64>);

impl LaurentV {
    pub fn zero() -> Self {
        LaurentV::default()
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut l = LaurentV::zero();
        l.add_term(exp, coeff);
        l
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.0.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }
}

impl fmt::Display for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.0.iter().rev().enumerate() {
            if c < 0 {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "v^{e}")?,
                _ => write!(f, "{a}*v^{e}")?,
            }
        }
        Ok(())
    }
}

/// Coefficient field: `Q` (characteristic 0) or `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    characteristic: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Validates the characteristic, without reference to a root datum.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::BadCharacteristic(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    /// Validates the characteristic for use with `datum`: characteristic 2 is
    /// refused when a component of type C is present.
    pub fn for_datum(characteristic: u64, datum: &RootDatum) -> Result<Self> {
        let k = Self::new(characteristic)?;
        if characteristic == 2 && datum.has_c_component() {
            return Err(Error::Char2Forbidden);
        }
        Ok(k)
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn reduce_scalar(&self, c: &BigInt) -> BigInt {
        if self.characteristic == 0 {
            c.clone()
        } else {
            c.mod_floor(&BigInt::from(self.characteristic))
        }
    }

    /// Coefficients reduced into `[0, p)`; identity for characteristic 0.
    pub fn reduce_mod(&self, f: &Poly) -> Poly {
        if self.characteristic == 0 {
            return f.clone();
        }
        Poly::from_terms(f.nvars(), f.terms().map(|(m, c)| (m.clone(), self.reduce_scalar(c))))
    }

    pub fn name(&self) -> String {
        match self.characteristic {
            0 => "Q".into(),
            p => format!("F{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn root(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn linear_forms() {
        assert_eq!(Poly::linear_form(&root(&[1, 0, 0])).to_string(), "a1");
        assert_eq!(Poly::linear_form(&root(&[-1, 0, 0])).to_string(), "-a1");
        assert_eq!(Poly::linear_form(&root(&[0, 1, 1])).to_string(), "a2+a3");
    }

    #[test]
    fn canonical_order_and_rendering() {
        assert_eq!((p("a1", 2) * p("a1", 2)).to_string(), "a1^2");
        assert_eq!(p("a2^2 + a1*a2 + 3 - a1", 2).to_string(), "a1*a2+a2^2-a1+3");
        assert_eq!(p("-(a5+a6)*a2", 6).to_string(), "-a2*a5-a2*a6");
        assert_eq!(Poly::zero(3).to_string(), "0");
        assert!(Poly::parse("a4", 3).is_err());
        assert!(Poly::parse("a1+", 3).is_err());
    }

    #[test]
    fn factored_rendering() {
        let a7 = RootDatum::simple_type(CartanType::A, 7).unwrap();
        assert_eq!(p("a2*a3*a5*a6", 7).render_factored(&a7), "a2*a3*a5*a6");
        assert_eq!(p("-(a5+a6)*a2", 7).render_factored(&a7), "-a2*(a5+a6)");
        assert_eq!(p("a1^2*(a2+a3)", 7).render_factored(&a7), "a1^2*(a2+a3)");
        assert_eq!(p("2*a1", 7).render_factored(&a7), "2*a1");
        assert_eq!(p("a1^2+a2^2", 7).render_factored(&a7), "a1^2+a2^2");
    }

    #[test]
    fn exact_division() {
        let q = p("a1^2 - a2^2", 2).exact_divide(&p("a1+a2", 2)).unwrap();
        assert_eq!(q, p("a1-a2", 2));
        assert_eq!(p("a1", 2).exact_divide(&p("a2", 2)), Err(Error::NotDivisible));
        assert_eq!(Poly::zero(2).exact_divide(&p("a1+a2", 2)).unwrap(), Poly::zero(2));
        assert_eq!(p("2*a1", 2).exact_divide(&p("3", 2)), Err(Error::NotDivisible));
        assert_eq!(p("a1", 2).exact_divide(&Poly::zero(2)), Err(Error::NotDivisible));
    }

    #[test]
    fn root_power_divisibility() {
        let f = p("a1^2*(a2+a3)", 3);
        let a1 = root(&[1, 0, 0]);
        assert!(f.divides_power(&a1, 2));
        assert!(!f.divides_power(&a1, 3));
        assert!(f.divides_power(&a1, 0));
        assert!(Poly::zero(3).divides_power(&a1, 7));
    }

    #[test]
    fn reduction_mod_p() {
        let f2 = FieldSpec::new(2).unwrap();
        assert!(f2.reduce_mod(&p("2*a1", 1)).is_zero());
        assert_eq!(f2.reduce_mod(&p("3*a1", 1)), p("a1", 1));
        assert_eq!(FieldSpec::rationals().reduce_mod(&p("2", 1)), p("2", 1));
        assert_eq!(FieldSpec::new(4), Err(Error::BadCharacteristic(4)));
        let c2 = RootDatum::simple_type(CartanType::C, 2).unwrap();
        let b2 = RootDatum::simple_type(CartanType::B, 2).unwrap();
        assert_eq!(FieldSpec::for_datum(2, &c2), Err(Error::Char2Forbidden));
        assert!(FieldSpec::for_datum(3, &c2).is_ok());
        assert!(FieldSpec::for_datum(2, &b2).is_ok());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("a1*a2 + a3^2", 3).homogeneous_degree(), Ok(2));
        assert_eq!(p("a1 + a2^2", 3).homogeneous_degree(), Err(Error::NotHomogeneous));
        assert_eq!(p("7", 3).homogeneous_degree(), Ok(0));
        assert_eq!(Poly::zero(3).homogeneous_degree(), Ok(0));
    }

    #[test]
    fn fractions() {
        let n = 2;
        let inv = |v: &[i32]| {
            let mut d = BTreeMap::new();
            d.insert(root(v), 1);
            RatFn::inverse_of_root_product(n, 1, d)
        };
        let half = inv(&[1, 0]);
        let s = &half + &half;
        assert_eq!(s.numerator(), &p("2", n));
        assert_eq!(s.to_string(), "2/(a1)");
        // 1/a1 - 1/(a1+a2) = a2 / (a1 (a1+a2))
        let d = &inv(&[1, 0]) - &inv(&[1, 1]);
        assert_eq!(d.numerator(), &p("a2", n));
        assert_eq!(d.denominator().len(), 2);
        // cancellation back to a polynomial
        let x = RatFn::from_poly(p("a1^2+a1*a2", n));
        let y = &x * &inv(&[1, 1]);
        assert_eq!(y.to_poly(), Some(p("a1", n)));
        assert!(RatFn::zero(n).is_polynomial());
    }

    #[test]
    fn laurent_rendering() {
        let mut l = LaurentV::zero();
        l.add_term(0, 1);
        l.add_term(-2, 1);
        assert_eq!(l.to_string(), "1+v^-2");
        assert_eq!(LaurentV::zero().to_string(), "0");
    }

    fn arb_root() -> impl Strategy<Value = Root> {
        let a3 = RootDatum::simple_type(CartanType::A, 3).unwrap();
        let roots = a3.positive_roots().to_vec();
        (0..roots.len(), any::<bool>()).prop_map(move |(i, neg)| if neg { -&roots[i] } else { roots[i].clone() })
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6), 0..6)
            .prop_map(|ts| Poly::from_terms(3, ts.into_iter().map(|(e, c)| (Monomial::new(e), BigInt::from(c)))))
    }

    fn root_product(rs: &[Root]) -> Poly {
        rs.iter().fold(Poly::one(3), |acc, r| &acc * &Poly::linear_form(r))
    }

    fn arb_ratfn() -> impl Strategy<Value = RatFn> {
        (arb_poly(), prop::collection::vec(arb_root(), 0..3)).prop_map(|(num, den)| {
            let mut d = BTreeMap::new();
            for r in den {
                *d.entry(r.abs()).or_insert(0) += 1;
            }
            RatFn::new(num, d)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn exact_divide_inverts_multiplication(f in prop::collection::vec(arb_root(), 0..4), g in prop::collection::vec(arb_root(), 1..4), k in 1i64..4) {
            let f = root_product(&f).scalar_mul(&BigInt::from(k));
            let g = root_product(&g);
            prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
        }

        #[test]
        fn ratfn_sum_matches_cleared_denominators(a in arb_ratfn(), b in arb_ratfn()) {
            let s = &a + &b;
            let (da, db, ds) = (a.denominator_poly(), b.denominator_poly(), s.denominator_poly());
            let lhs = &(&(s.numerator() * &da) * &db);
            let rhs = &(&(a.numerator() * &db) + &(b.numerator() * &da)) * &ds;
            prop_assert_eq!(lhs, &rhs);
        }

        #[test]
        fn reduce_mod_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), pi in 0usize..4) {
            let k = FieldSpec::new([2u64, 3, 5, 7][pi]).unwrap();
            prop_assert_eq!(k.reduce_mod(&(&a * &b)), k.reduce_mod(&(&k.reduce_mod(&a) * &k.reduce_mod(&b))));
            prop_assert_eq!(k.reduce_mod(&(&a + &b)), k.reduce_mod(&(&k.reduce_mod(&a) + &k.reduce_mod(&b))));
        }

        #[test]
        fn parse_inverts_display(a in arb_poly()) {
            prop_assert_eq!(Poly::parse(&a.to_string(), 3).unwrap(), a);
        }
    }
}
