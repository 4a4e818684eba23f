//! Exact dense linear algebra and small elimination tools.
//!
//! Determinants use fraction-free Bareiss elimination so the same code serves
//! rational matrices and matrices of polynomials. Rational root finding and
//! the bivariate solver feed the Darboux, J_u and sweep computations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, Poly, Rational};
use crate::uni::UniPoly;

/// Entries over which fraction-free elimination is exact.
pub trait BareissEntry: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_entry(&self) -> bool;
    fn mul_entry(&self, other: &Self) -> Self;
    fn sub_entry(&self, other: &Self) -> Self;
    fn neg_entry(&self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Result<Self>;
}

impl BareissEntry for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn mul_entry(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_entry(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_entry(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }
}

impl BareissEntry for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars())
    }
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn mul_entry(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_entry(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_entry(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        self.exact_divide(other)?
            .ok_or_else(|| Error::Internal("Bareiss division not exact".into()))
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rational>;
pub type PolyMatrix = Matrix<Poly>;

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: BareissEntry> Matrix<T> {
    /// Determinant by fraction-free Bareiss elimination with row pivoting.
    pub fn det_bareiss(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Err(Error::DimensionMismatch("empty matrix has no entry type".into()));
        }
        let mut m = self.clone();
        let one = m.get(0, 0).one_like();
        let mut prev = one.clone();
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            if m.get(k, k).is_zero_entry() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero_entry()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(one.zero_like()),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let v = m.get(i, j).mul_entry(&pivot).sub_entry(&lead.mul_entry(m.get(k, j)));
                    m.set(i, j, v.div_exact(&prev)?);
                }
                m.set(i, k, one.zero_like());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { d.neg_entry() } else { d })
    }
}

/// Affine solution set `particular + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..self.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..self.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `Mv = rhs`; `None` when inconsistent.
    pub fn solve_affine(&self, rhs: &[Rational]) -> Result<Option<AffineSolution>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("{} rows vs rhs of {}", self.rows, rhs.len())));
        }
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            particular[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(AffineSolution { particular, basis: self.nullspace() }))
    }
}

fn sylvester<T: BareissEntry>(p: &[T], q: &[T], zero: &T) -> Matrix<T> {
    // p, q: coefficient lists, constant term first.
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut s = Matrix::filled(size, size, zero.clone());
    for i in 0..n {
        for (k, c) in p.iter().rev().enumerate() {
            s.set(i, i + k, c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in q.iter().rev().enumerate() {
            s.set(n + i, i + k, c.clone());
        }
    }
    s
}

/// Sylvester resultant of two univariate polynomials.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial("resultant of two zeros"));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Rational::zero());
    }
    if p.degree() == Some(0) && q.degree() == Some(0) {
        return Ok(Rational::one());
    }
    sylvester(p.coeffs(), q.coeffs(), &Rational::zero()).det_bareiss()
}

/// Resultant of two polynomials that involve at most one and the same
/// variable.
pub fn resultant_polys(p: &Poly, q: &Poly) -> Result<Rational> {
    if p.nvars() != q.nvars() {
        return Err(Error::NvarsMismatch { left: p.nvars(), right: q.nvars() });
    }
    let used: Vec<usize> = (0..p.nvars()).filter(|&i| p.involves(i) || q.involves(i)).collect();
    if used.len() > 1 {
        return Err(Error::NotUnivariate);
    }
    let var = used.first().copied().unwrap_or(0);
    resultant(&UniPoly::from_poly(p, var)?, &UniPoly::from_poly(q, var)?)
}

/// Resultant with respect to variable `var`; the result is free of `var`.
pub fn resultant_in(p: &Poly, q: &Poly, var: usize) -> Result<Poly> {
    if p.nvars() != q.nvars() {
        return Err(Error::NvarsMismatch { left: p.nvars(), right: q.nvars() });
    }
    let n = p.nvars();
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial("resultant of two zeros"));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero(n));
    }
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    if pc.len() == 1 && qc.len() == 1 {
        return Ok(Poly::one(n));
    }
    sylvester(&pc, &qc, &Poly::zero(n)).det_bareiss()
}

/// Rational roots, each repeated according to multiplicity, ascending.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("rational_roots"));
    }
    let mut roots = Vec::new();
    let mut rest = p.clone();
    while rest.coeff(0).is_zero() && !rest.is_constant() {
        roots.push(Rational::zero());
        rest = rest.exact_div(&UniPoly::x())?.expect("x divides");
    }
    if !rest.is_constant() {
        let sqf = rest.squarefree_part();
        for r in squarefree_rational_roots(&sqf) {
            let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
            while let Some(q) = rest.exact_div(&lin)? {
                roots.push(r.clone());
                rest = q;
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Distinct rational roots, ascending.
pub fn distinct_rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    let mut r = rational_roots(p)?;
    r.dedup();
    Ok(r)
}

/// `p` divided by all its rational linear factors (monic), i.e. the part
/// whose roots are irrational.
pub fn irrational_part(p: &UniPoly) -> Result<UniPoly> {
    let mut rest = p.monic();
    for r in distinct_rational_roots(p)? {
        let lin = UniPoly::new(vec![-r, Rational::one()]);
        while let Some(q) = rest.exact_div(&lin)? {
            rest = q;
        }
    }
    Ok(rest.monic())
}

const DIVISOR_ENUMERATION_LIMIT: u64 = 1_000_000_000_000;

fn squarefree_rational_roots(p: &UniPoly) -> Vec<Rational> {
    let ints = p.primitive_integer();
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let limit = BigInt::from(DIVISOR_ENUMERATION_LIMIT);
    let candidates = if a0 <= limit && an <= limit {
        divisor_candidates(&a0, &an)
    } else {
        sturm_candidates(&ints)
    };
    let mut out: Vec<Rational> = candidates.into_iter().filter(|c| p.eval(c).is_zero()).collect();
    out.sort();
    out.dedup();
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn divisor_candidates(a0: &BigInt, an: &BigInt) -> Vec<Rational> {
    let mut out = Vec::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            let r = Rational::new(p.clone(), q);
            out.push(-r.clone());
            out.push(r);
        }
    }
    out
}

/// Candidates for large coefficients: rational roots `r` of a primitive
/// integer polynomial with leading coefficient `an` are `z / an` for integer
/// roots `z` of the monic `g(z) = an^(n-1) p(z / an)`; those are located by
/// Sturm bisection.
fn sturm_candidates(ints: &[BigInt]) -> Vec<Rational> {
    let n = ints.len() - 1;
    let an = ints[n].clone();
    let mut g: Vec<Rational> = (0..n)
        .map(|i| Rational::from_integer(&ints[i] * num_traits::pow(an.clone(), n - 1 - i)))
        .collect();
    g.push(Rational::one());
    let g = UniPoly::new(g);
    let bound = g.coeffs().iter().map(|c| c.abs()).fold(Rational::zero(), |a, b| if b > a { b } else { a }) + Rational::one();
    let seq = sturm_sequence(&g);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        if count == 0 {
            continue;
        }
        if &hi - &lo <= Rational::from_integer(2.into()) {
            let mut z = lo.ceil();
            while z <= hi {
                out.push(Rational::new(z.to_integer(), an.clone()));
                z += Rational::one();
            }
            continue;
        }
        let mid = ((&lo + &hi) / int(2)).floor();
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out
}

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero").1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

/// Sign changes at `x`; a root exactly at `x` counts as right-continuous.
fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// A solution branch of a bivariate system that is not a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrrationalBranch {
    /// First coordinate rational, second a root of `second` (no rational roots).
    RationalFirst { first: Rational, second: UniPoly },
    /// First coordinate a root of `first` (no rational roots); for each such
    /// root the second coordinate ranges over the roots of a common factor of
    /// degree `second_degree`.
    IrrationalFirst { first: UniPoly, second_degree: usize },
}

/// A positive-dimensional component of the solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionCurve {
    /// Every point solves the system.
    Plane,
    /// The zero set of this polynomial (the gcd of the system) solves it.
    Curve(Poly),
}

/// Solutions of a system of bivariate polynomial equations over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSolutions {
    pub points: Vec<(Rational, Rational)>,
    pub curve: Option<SolutionCurve>,
    pub irrational: Vec<IrrationalBranch>,
}

impl BivariateSolutions {
    pub fn on_curve(&self, s: &Rational, t: &Rational) -> bool {
        match &self.curve {
            None => false,
            Some(SolutionCurve::Plane) => true,
            Some(SolutionCurve::Curve(g)) => g.eval(&[s.clone(), t.clone()]).is_ok_and(|v| v.is_zero()),
        }
    }
}

/// Solve `eqs = 0` for `(s, t)` (variables 0 and 1 of a two-variable ring):
/// common factors become a [`SolutionCurve`], isolated rational solutions are
/// found by elimination of `t` and rational root finding, and irrational
/// isolated solutions are detected exactly.
pub fn solve_bivariate(eqs: &[Poly]) -> Result<BivariateSolutions> {
    let mut eqs: Vec<Poly> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    if let Some(e) = eqs.iter().find(|e| e.nvars() != 2) {
        return Err(Error::WrongNvars { expected: 2, got: e.nvars() });
    }
    let mut out = BivariateSolutions { points: Vec::new(), curve: None, irrational: Vec::new() };
    if eqs.is_empty() {
        out.curve = Some(SolutionCurve::Plane);
        return Ok(out);
    }
    let mut g = eqs[0].clone();
    for e in &eqs[1..] {
        g = g.gcd2(e)?;
    }
    if !g.is_constant() {
        eqs = eqs
            .iter()
            .map(|e| e.exact_divide(&g)?.ok_or_else(|| Error::Internal("gcd does not divide".into())))
            .collect::<Result<_>>()?;
        out.curve = Some(SolutionCurve::Curve(g.primitive_integer()));
    }
    if eqs.iter().any(Poly::is_constant) {
        return Ok(out);
    }
    let eliminant = eliminate_second(&eqs)?;
    for s in distinct_rational_roots(&eliminant)? {
        let mut h = UniPoly::zero();
        for e in &eqs {
            let at_s = e.substitute(&[Poly::constant(2, s.clone()), Poly::var(2, 1)])?;
            h = h.gcd(&UniPoly::from_poly(&at_s, 1)?);
        }
        if h.is_zero() {
            return Err(Error::Internal("vertical line inside a coprime system".into()));
        }
        if h.is_constant() {
            continue;
        }
        for t in distinct_rational_roots(&h)? {
            if !out.on_curve(&s, &t) {
                out.points.push((s.clone(), t));
            }
        }
        let rest = irrational_part(&h)?;
        if !rest.is_constant() {
            out.irrational.push(IrrationalBranch::RationalFirst { first: s.clone(), second: rest });
        }
    }
    let irr = irrational_part(&eliminant)?.squarefree_part();
    if !irr.is_constant() {
        let t_polys: Vec<Vec<UniPoly>> = eqs.iter().map(coeffs_in_second).collect();
        for (modulus, degree) in gcd_over_extension(&t_polys, irr)? {
            if degree > 0 {
                out.irrational.push(IrrationalBranch::IrrationalFirst { first: modulus, second_degree: degree });
            }
        }
    }
    out.points.sort();
    Ok(out)
}

/// A nonzero polynomial in the first variable vanishing at the first
/// coordinate of every common zero of a coprime system.
fn eliminate_second(eqs: &[Poly]) -> Result<UniPoly> {
    if eqs.len() == 1 {
        return Err(Error::Internal("single equation has no isolated zeros".into()));
    }
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next_weight = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        int(((state >> 33) % 11) as i64 - 5)
    };
    for attempt in 0..40 {
        let (f1, f2) = if attempt == 0 {
            (eqs[0].clone(), eqs[1..].iter().fold(Poly::zero(2), |a, e| &a + e))
        } else {
            let mut f1 = Poly::zero(2);
            let mut f2 = Poly::zero(2);
            for e in eqs {
                f1 = &f1 + &e.scale(&next_weight());
                f2 = &f2 + &e.scale(&next_weight());
            }
            (f1, f2)
        };
        if f1.is_zero() || f2.is_zero() || !f1.gcd2(&f2)?.is_constant() {
            continue;
        }
        let r = resultant_in(&f1, &f2, 1)?;
        if !r.is_zero() {
            return UniPoly::from_poly(&r, 0);
        }
    }
    Err(Error::BudgetExceeded("no coprime combination found for elimination".into()))
}

fn coeffs_in_second(p: &Poly) -> Vec<UniPoly> {
    p.coefficients_in(1)
        .iter()
        .map(|c| UniPoly::from_poly(c, 0).expect("free of the second variable"))
        .collect()
}

/// For each component `m_i` of a squarefree modulus `m`, the degree of the gcd
/// of the given polynomials (coefficients in `Q[s]`) over `Q[s]/(m_i)`.
/// Zero divisors met during Euclid split the modulus.
fn gcd_over_extension(polys: &[Vec<UniPoly>], modulus: UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let mut work = vec![modulus.monic()];
    let mut done = Vec::new();
    while let Some(m) = work.pop() {
        if m.is_constant() {
            continue;
        }
        match ext_gcd_list(polys, &m)? {
            Ok(deg) => done.push((m, deg)),
            Err(factor) => {
                let other = m.exact_div(&factor)?.expect("factor divides modulus");
                work.push(factor.monic());
                work.push(other.monic());
            }
        }
    }
    Ok(done)
}

type ExtPoly = Vec<UniPoly>;

fn reduce_ext(p: &[UniPoly], m: &UniPoly) -> Result<ExtPoly> {
    let mut out: ExtPoly = p.iter().map(|c| c.div_rem(m).map(|(_, r)| r)).collect::<Result<_>>()?;
    while out.last().is_some_and(UniPoly::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// Inverse modulo `m`, or a nontrivial factor of `m`.
fn ext_inverse(c: &UniPoly, m: &UniPoly) -> Result<std::result::Result<UniPoly, UniPoly>> {
    let (mut r0, mut r1) = (m.clone(), c.clone());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.is_constant() {
        let inv = t0.scale(&r0.coeff(0).recip());
        Ok(Ok(inv.div_rem(m)?.1))
    } else {
        Ok(Err(r0.monic()))
    }
}

/// Degree of the gcd over `Q[s]/(m)`, or a factor of `m` to split on.
fn ext_gcd_list(polys: &[Vec<UniPoly>], m: &UniPoly) -> Result<std::result::Result<usize, UniPoly>> {
    let mut acc: ExtPoly = Vec::new();
    for p in polys {
        let mut a = acc;
        let mut b = reduce_ext(p, m)?;
        while !b.is_empty() {
            let inv = match ext_inverse(b.last().expect("nonempty"), m)? {
                Ok(inv) => inv,
                Err(f) => return Ok(Err(f)),
            };
            let db = b.len() - 1;
            while a.len() > db {
                let da = a.len() - 1;
                let c = (&a[da] * &inv).div_rem(m)?.1;
                for (i, bc) in b.iter().enumerate() {
                    a[da - db + i] = (&a[da - db + i] - &(&c * bc)).div_rem(m)?.1;
                }
                while a.last().is_some_and(UniPoly::is_zero) {
                    a.pop();
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        acc = a;
    }
    Ok(Ok(acc.len().saturating_sub(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn cofactor_det(m: &QMatrix) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor = Matrix::from_rows(
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect()).collect(),
            )
            .unwrap();
            let term = m.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn nullspace_examples() {
        let m = QMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.nullspace(), vec![vec![int(-1), int(1)]]);
        assert!(QMatrix::identity(3).nullspace().is_empty());
        let m = QMatrix::from_ints(&[&[1, 2, 3]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(QMatrix::from_rows(ns).unwrap().rank(), 2);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(QMatrix::identity(4).det_bareiss().unwrap(), int(1));
        assert_eq!(QMatrix::from_ints(&[&[0, 1], &[1, 0]]).det_bareiss().unwrap(), int(-1));
        let m = QMatrix::from_ints(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        assert_eq!(m.det_bareiss().unwrap(), cofactor_det(&m));
        let ns = QMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(ns.det_bareiss(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn resultant_examples() {
        let r = resultant(&UniPoly::from_ints(&[-1, 1]), &UniPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(r, int(2));
        assert!(resultant(&UniPoly::from_ints(&[0, 0, 1]), &UniPoly::x()).unwrap().is_zero());
        let r = resultant(&UniPoly::from_ints(&[-2, 0, 1]), &UniPoly::from_ints(&[-3, 0, 1])).unwrap();
        assert_eq!(r, int(1));
        assert!(resultant(&UniPoly::zero(), &UniPoly::zero()).is_err());
        let two = Poly::var(2, 0);
        assert!(resultant_polys(&(&two + &Poly::var(2, 1)), &two).is_err());
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&UniPoly::from_ints(&[-1, 0, 1])).unwrap(), vec![int(-1), int(1)]);
        assert!(rational_roots(&UniPoly::from_ints(&[-2, 0, 1])).unwrap().is_empty());
        let p = UniPoly::from_ints(&[2, -3, -3, 2]);
        assert_eq!(rational_roots(&p).unwrap(), vec![int(-1), rat(1, 2), int(2)]);
        assert!(rational_roots(&UniPoly::zero()).is_err());
        // multiplicities and zero roots
        let q = &UniPoly::from_ints(&[-1, 1]).pow(2) * &UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(rational_roots(&q).unwrap(), vec![int(0), int(0), int(1), int(1)]);
    }

    #[test]
    fn large_coefficients_use_sturm_candidates() {
        // (x - 10^13/7)(x + 3)(x^2 + 1)
        let big = Rational::new(BigInt::from(10u64.pow(13)), 7.into());
        let p = &(&UniPoly::new(vec![-big.clone(), int(1)]) * &UniPoly::from_ints(&[3, 1])) * &UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(rational_roots(&p).unwrap(), vec![int(-3), big]);
    }

    fn s() -> Poly {
        Poly::var(2, 0)
    }
    fn t() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn bivariate_isolated_points() {
        // 2 s t = 0, t^2 + 1 - s^2 = 0  ->  (+-1, 0); s = 0 gives t = +-i
        let eqs = [(&s() * &t()).scale(&int(2)), &(&t().pow(2) + &Poly::one(2)) - &s().pow(2)];
        let sol = solve_bivariate(&eqs).unwrap();
        assert_eq!(sol.points, vec![(int(-1), int(0)), (int(1), int(0))]);
        assert!(sol.curve.is_none());
        assert_eq!(
            sol.irrational,
            vec![IrrationalBranch::RationalFirst { first: int(0), second: UniPoly::from_ints(&[1, 0, 1]) }]
        );
    }

    #[test]
    fn bivariate_detects_irrational_first_coordinate() {
        // s^2 + 1 = 0, t = 0
        let eqs = [&s().pow(2) + &Poly::one(2), t()];
        let sol = solve_bivariate(&eqs).unwrap();
        assert!(sol.points.is_empty());
        assert_eq!(
            sol.irrational,
            vec![IrrationalBranch::IrrationalFirst { first: UniPoly::from_ints(&[1, 0, 1]), second_degree: 1 }]
        );
        // s^2 - 2 = 0 and t^2 - 3 = 0 and s t = 1: no common solution
        let eqs = [&s().pow(2) - &Poly::constant(2, int(2)), &(&s() * &t()) - &Poly::one(2), &t().pow(2) - &Poly::constant(2, int(3))];
        let sol = solve_bivariate(&eqs).unwrap();
        assert!(sol.points.is_empty());
        assert!(sol.irrational.is_empty());
    }

    #[test]
    fn bivariate_curve_component() {
        // t (s - 1) = 0 and t (s - 2) = 0 -> curve t = 0
        let eqs = [&t() * &(&s() - &Poly::one(2)), &t() * &(&s() - &Poly::constant(2, int(2)))];
        let sol = solve_bivariate(&eqs).unwrap();
        assert_eq!(sol.curve, Some(SolutionCurve::Curve(t())));
        assert!(sol.points.is_empty());
        let sol = solve_bivariate(&[Poly::zero(2)]).unwrap();
        assert_eq!(sol.curve, Some(SolutionCurve::Plane));
    }
}
