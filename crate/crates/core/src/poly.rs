//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `x1 > x2 > ...`. The map never stores a zero
//! coefficient, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::uni::UniPoly;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
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

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
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

/// Total degree with `-inf` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::term(nvars, Monomial(exps), Rational::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Build from `(exponents, coefficient)` pairs; repeated monomials add up.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "monomial arity");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.nvars)))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    /// Total degree as a number, with `0` for the zero polynomial.
    pub fn degree_or_zero(&self) -> u32 {
        self.total_degree().finite().unwrap_or(0)
    }

    /// Largest exponent of variable `i`, `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term().map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// Sum of the terms of maximal total degree.
    pub fn leading_form(&self) -> Result<Poly> {
        let d = self
            .total_degree()
            .finite()
            .ok_or(Error::ZeroPolynomial("leading form"))?;
        Ok(self.homogeneous_part(d))
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
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

    fn check_nvars(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::VarOutOfRange { index: i, nvars: self.nvars });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * int(e as i64));
        }
        Ok(out)
    }

    /// Antiderivative in variable `i` with zero constant of integration.
    pub fn integrate(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::VarOutOfRange { index: i, nvars: self.nvars });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[i] += 1;
            let e = exps[i];
            out.add_term(Monomial(exps), c / int(e as i64));
        }
        Ok(out)
    }

    /// Replace variable `i` by `images[i]` for every `i`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::NvarsMismatch { left: target, right: bad.nvars });
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        for (i, cache) in powers.iter_mut().enumerate() {
            let need = self.degree_in(i).unwrap_or(0) as usize;
            while cache.len() <= need {
                let next = &cache[cache.len() - 1] * &images[i];
                cache.push(next);
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            for (k, v) in t.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Scale so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_divide(&self, d: &Poly) -> Result<Option<Poly>> {
        self.check_nvars(d)?;
        let (dm, dc) = d.leading_term().ok_or(Error::DivisionByZero)?;
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return Ok(None);
            }
            let qm = dm.quotient_of(rm);
            let qc = rc * &dc_inv;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Express `self` as `P(f)`; returns the coefficients of `P` (constant
    /// term first) or `None` when `self` is not in `Q[f]`.
    pub fn univariate_membership(&self, f: &Poly) -> Result<Option<Vec<Rational>>> {
        self.check_nvars(f)?;
        let fdeg = match f.total_degree() {
            Degree::Finite(d) if d > 0 => d,
            _ => return Err(Error::ConstantPolynomial("univariate_membership generator")),
        };
        let flead = f.leading_form()?;
        let flead_c = f.leading_coeff();
        let mut powers = vec![Poly::one(self.nvars)];
        let mut lead_powers = vec![Poly::one(self.nvars)];
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut c = self.clone();
        while let Degree::Finite(n) = c.total_degree() {
            if n % fdeg != 0 {
                return Ok(None);
            }
            let t = (n / fdeg) as usize;
            while powers.len() <= t {
                powers.push(&powers[powers.len() - 1] * f);
                lead_powers.push(&lead_powers[lead_powers.len() - 1] * &flead);
            }
            let mut lc_pow = Rational::one();
            for _ in 0..t {
                lc_pow *= &flead_c;
            }
            let mu = c.leading_coeff() / lc_pow;
            if c.leading_form()? != lead_powers[t].scale(&mu) {
                return Ok(None);
            }
            if coeffs.len() <= t {
                coeffs.resize(t + 1, Rational::zero());
            }
            coeffs[t] = mu.clone();
            c = &c - &powers[t].scale(&mu);
        }
        Ok(Some(coeffs))
    }

    /// Bivariate gcd, normalized to graded-lex leading coefficient 1.
    pub fn gcd2(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        if self.nvars != 2 {
            return Err(Error::WrongNvars { expected: 2, got: self.nvars });
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::ZeroPolynomial("gcd of two zeros")),
            (true, false) => return Ok(other.monic()),
            (false, true) => return Ok(self.monic()),
            _ => {}
        }
        let a = to_y_coeffs(self);
        let b = to_y_coeffs(other);
        let (ca, pa) = content_split(&a);
        let (cb, pb) = content_split(&b);
        let content = ca.gcd(&cb);
        let g = primitive_prs_gcd(pa, pb);
        let g = from_y_coeffs(&g);
        Ok((&g * &content.to_poly(2, 0)).monic())
    }

    /// Multiply by the lcm of denominators and divide by the integer content;
    /// the leading coefficient ends up positive.
    pub fn primitive_integer(&self) -> Poly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        for c in self.terms.values() {
            g = g.gcd(&(c * Rational::from_integer(lcm.clone())).to_integer());
        }
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        self.scale(&Rational::new(lcm, g))
    }

    /// Rename into a ring with more variables, keeping variable indices.
    pub fn extend_nvars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.resize(nvars, 0);
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Keep only the listed variables (in the given order); every other
    /// variable must be absent.
    pub fn restrict_to(&self, vars: &[usize]) -> Result<Poly> {
        let mut out = Poly::zero(vars.len());
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 && !vars.contains(&i) {
                    return Err(Error::Internal(format!("variable {i} still present")));
                }
            }
            out.add_term(Monomial(vars.iter().map(|&v| m.0[v]).collect()), c.clone());
        }
        Ok(out)
    }

    /// Write `self` as `sum_k coeff_k * x_i^k` with coefficients free of `x_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            if out.len() <= e {
                out.resize(e + 1, Poly::zero(self.nvars));
            }
            let mut exps = m.0.clone();
            exps[i] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Canonical text with caller-supplied variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Default variable names: `x`, `y` for up to two variables, `x1..xn` beyond.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    match nvars {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        n => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].to_string()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_string_with(&refs))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
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

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// Bivariate gcd helpers: polynomials in y with coefficients in Q[x].

fn to_y_coeffs(p: &Poly) -> Vec<UniPoly> {
    p.coefficients_in(1)
        .iter()
        .map(|c| UniPoly::from_poly(c, 0).expect("coefficient free of y"))
        .collect()
}

fn from_y_coeffs(cs: &[UniPoly]) -> Poly {
    let y = Poly::var(2, 1);
    let mut acc = Poly::zero(2);
    for c in cs.iter().rev() {
        acc = &(&acc * &y) + &c.to_poly(2, 0);
    }
    acc
}

fn trim(mut v: Vec<UniPoly>) -> Vec<UniPoly> {
    while v.last().is_some_and(UniPoly::is_zero) {
        v.pop();
    }
    v
}

fn content_split(cs: &[UniPoly]) -> (UniPoly, Vec<UniPoly>) {
    let mut g = UniPoly::zero();
    for c in cs {
        g = g.gcd(c);
    }
    let pp = cs
        .iter()
        .map(|c| c.exact_div(&g).expect("nonzero content").expect("content divides"))
        .collect();
    (g, pp)
}

fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bc);
        }
        r = trim(r);
    }
    r
}

fn primitive_prs_gcd(a: Vec<UniPoly>, b: Vec<UniPoly>) -> Vec<UniPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { content_split(&r).1 };
    }
    if a.len() <= 1 {
        vec![UniPoly::one()]
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(2, int(n))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&(&x() + &y()) + &(&x() - &y()), x().scale(&int(2)));
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &x().pow(2) - &y().pow(2));
        let cube = (&x() + &c(1)).pow(3);
        let by_hand = &(&(&x() + &c(1)) * &(&x() + &c(1))) * &(&x() + &c(1));
        assert_eq!(cube, by_hand);
        assert_eq!(cube.to_string(), "x^3 + 3*x^2 + 3*x + 1");
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let p = Poly::var(3, 0);
        assert!(matches!(x().try_add(&p), Err(Error::NvarsMismatch { .. })));
        assert!(x().try_mul(&p).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let x2y = &x().pow(2) * &y();
        assert_eq!(x2y.partial(0).unwrap(), (&x() * &y()).scale(&int(2)));
        assert!(x().pow(2).partial(1).unwrap().is_zero());
        let s = &x() + &y();
        assert_eq!(s.pow(3).partial(0).unwrap(), s.pow(2).scale(&int(3)));
        assert!(x().partial(2).is_err());
    }

    #[test]
    fn substitution_examples() {
        let p = &x().pow(2) + &y();
        assert_eq!(p.substitute(&[y(), x()]).unwrap(), &y().pow(2) + &x());
        let q = x().substitute(&[&x() + &y().pow(2), y()]).unwrap();
        assert_eq!(q, &x() + &y().pow(2));
        let xy = (&x() * &y()).substitute(&[&x() + &c(1), &y() - &c(1)]).unwrap();
        assert_eq!(xy.to_string(), "x*y - x + y - 1");
        assert!(p.substitute(&[x()]).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!((&(&x().pow(2) * &y()) + &y()).total_degree(), Degree::Finite(3));
        assert_eq!(Poly::zero(2).total_degree(), Degree::NegInfinity);
        assert_eq!((&x() + &y()).pow(5).total_degree(), Degree::Finite(5));
        assert_eq!(Degree::NegInfinity + Degree::Finite(3), Degree::NegInfinity);
    }

    #[test]
    fn leading_form_examples() {
        let p = &(&x().pow(2) + &x()) + &c(1);
        assert_eq!(p.leading_form().unwrap(), x().pow(2));
        let q = &(&(&x().pow(2) * &y()) + &(&x() * &y().pow(2))) + &x();
        assert_eq!(q.leading_form().unwrap(), &(&x().pow(2) * &y()) + &(&x() * &y().pow(2)));
        let r = &(&x() + &y()).pow(2) + &x();
        assert_eq!(r.leading_form().unwrap(), (&x() + &y()).pow(2));
        assert!(Poly::zero(2).leading_form().is_err());
    }

    #[test]
    fn gcd_examples() {
        let g = (&x().pow(2) - &y().pow(2)).gcd2(&(&x() - &y())).unwrap();
        assert_eq!(g, &x() - &y());
        assert_eq!((&x() * &y()).gcd2(&x().pow(2)).unwrap(), x());
        let a = (&x() + &y()).pow(2);
        let b = &x().pow(2) - &y().pow(2);
        assert_eq!(a.gcd2(&b).unwrap(), &x() + &y());
        assert!(Poly::zero(2).gcd2(&Poly::zero(2)).is_err());
        assert_eq!(Poly::zero(2).gcd2(&y().scale(&int(3))).unwrap(), y());
        assert_eq!(x().gcd2(&y()).unwrap(), c(1));
    }

    #[test]
    fn gcd_with_content_in_x() {
        // x(x+1)(y - x) and x(y - x)(y + 2)
        let common = &x() * &(&y() - &x());
        let p = &common * &(&x() + &c(1));
        let q = &common * &(&y() + &c(2));
        assert_eq!(p.gcd2(&q).unwrap(), common.monic());
    }

    #[test]
    fn exact_division_examples() {
        let p = &x().pow(2) - &y().pow(2);
        assert_eq!(p.exact_divide(&(&x() - &y())).unwrap(), Some(&x() + &y()));
        assert_eq!((&x().pow(2) + &c(1)).exact_divide(&x()).unwrap(), None);
        let r = &(&x().pow(3) * &y()) + &x();
        assert_eq!(r.exact_divide(&x()).unwrap(), Some(&(&x().pow(2) * &y()) + &c(1)));
        assert_eq!(p.exact_divide(&Poly::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn membership_examples() {
        let f = &x() - &y();
        let cpoly = &f.pow(2) + &c(3);
        assert_eq!(cpoly.univariate_membership(&f).unwrap(), Some(vec![int(3), int(0), int(1)]));
        assert_eq!(x().univariate_membership(&x().pow(2)).unwrap(), None);
        let f2 = &x().pow(2) + &c(1);
        let c2 = &(&x().pow(4) + &x().pow(2).scale(&int(2))) + &c(2);
        assert_eq!(c2.univariate_membership(&f2).unwrap(), Some(vec![int(1), int(0), int(1)]));
        assert!(x().univariate_membership(&c(2)).is_err());
    }

    #[test]
    fn display_uses_explicit_operators() {
        let p = &x().scale(&rat(3, 2)) - &c(1);
        assert_eq!(p.to_string(), "3/2*x - 1");
        assert_eq!((-&x()).to_string(), "-x");
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!(Poly::var(3, 2).pow(2).to_string(), "x3^2");
    }

    #[test]
    fn integrate_inverts_partial() {
        let p = &(&x().pow(2) * &y()) + &y().scale(&rat(1, 3));
        assert_eq!(p.integrate(1).unwrap().partial(1).unwrap(), p);
    }
}
