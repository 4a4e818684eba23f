//! Darboux polynomials (eigenvectors) of plane derivations, extactic
//! determinants, bounded-degree kernels and the eigenvector census.

use std::fmt;

use num_traits::One;

use crate::derivation::{apply, Derivation};
use crate::error::{Error, Result};
use crate::exactlin::{distinct_rational_roots, irrational_part, solve_bivariate, PolyMatrix, QMatrix, SolutionCurve};
use crate::poly::{Monomial, Poly, Rational};
use crate::uni::UniPoly;

/// `D(h) = lambda * h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DarbouxPair {
    pub h: Poly,
    pub lambda: Poly,
}

impl fmt::Display for DarbouxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h = {}, lambda = {}", self.h, self.lambda)
    }
}

/// The eigenvalue of `h`, or `None` when `h` does not divide `D(h)`.
pub fn darboux_verify(d: &Derivation, h: &Poly) -> Result<Option<Poly>> {
    if h.is_constant() {
        return Err(Error::ConstantPolynomial("darboux_verify"));
    }
    apply(d, h)?.exact_divide(h)
}

/// Verified pair with `h` scaled to graded-lex leading coefficient 1.
pub fn darboux_pair(d: &Derivation, h: &Poly) -> Result<Option<DarbouxPair>> {
    let h = h.monic();
    Ok(darboux_verify(d, &h)?.map(|lambda| DarbouxPair { h, lambda }))
}

/// Largest extactic order computed without an explicit override.
pub const DEFAULT_EXTACTIC_MAX_ORDER: u32 = 4;

/// Monomials of degree `<= m`, by degree, powers of `x` first.
pub fn extactic_basis(m: u32, nvars: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for total in 0..=m {
        for j in 0..=total {
            out.push(Poly::term(nvars, Monomial::new(vec![total - j, j]), Rational::one()));
        }
    }
    out
}

pub fn extactic(d: &Derivation, m: u32) -> Result<Poly> {
    extactic_with_limit(d, m, DEFAULT_EXTACTIC_MAX_ORDER)
}

/// Determinant of `[D^i(v_j)]` over the monomials `v_j` of degree `<= m`.
pub fn extactic_with_limit(d: &Derivation, m: u32, max_order: u32) -> Result<Poly> {
    if d.nvars() != 2 {
        return Err(Error::WrongNvars { expected: 2, got: d.nvars() });
    }
    if m == 0 {
        return Err(Error::Malformed("extactic order must be at least 1".into()));
    }
    if m > max_order {
        return Err(Error::BudgetExceeded(format!("extactic order {m} exceeds the limit {max_order}")));
    }
    let basis = extactic_basis(m, 2);
    let n = basis.len();
    let mut rows = vec![basis.clone()];
    for i in 1..n {
        let next = rows[i - 1].iter().map(|p| apply(d, p)).collect::<Result<Vec<_>>>()?;
        rows.push(next);
    }
    PolyMatrix::from_rows(rows)?.det_bareiss()
}

/// Basis of `{p : deg p <= m, D(p) = 0}`, each element monic; the constant
/// `1` always comes first.
pub fn kernel_bounded(d: &Derivation, m: u32) -> Result<Vec<Poly>> {
    let nvars = d.nvars();
    let mut monos: Vec<Monomial> = Vec::new();
    exponent_vectors(nvars, m, &mut Vec::new(), &mut monos);
    monos.sort();
    let images: Vec<Poly> = monos
        .iter()
        .map(|mo| apply(d, &Poly::term(nvars, mo.clone(), Rational::one())))
        .collect::<Result<_>>()?;
    let mut rows: Vec<Monomial> = images.iter().flat_map(|p| p.terms().map(|(mo, _)| mo.clone())).collect();
    rows.sort();
    rows.dedup();
    let mut a = QMatrix::zeros(rows.len(), monos.len());
    for (j, img) in images.iter().enumerate() {
        for (mo, c) in img.terms() {
            let i = rows.binary_search(mo).expect("row collected");
            a.set(i, j, c.clone());
        }
    }
    let mut basis: Vec<Poly> = if rows.is_empty() {
        monos.iter().map(|mo| Poly::term(nvars, mo.clone(), Rational::one())).collect()
    } else {
        a.nullspace()
            .into_iter()
            .map(|v| Poly::from_terms(nvars, monos.iter().zip(v).map(|(mo, c)| (mo.exps().to_vec(), c))).monic())
            .collect()
    };
    basis.sort_by(|p, q| p.leading_term().map(|t| t.0).cmp(&q.leading_term().map(|t| t.0)));
    Ok(basis)
}

fn exponent_vectors(nvars: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() == nvars {
        out.push(Monomial::new(prefix.clone()));
        return;
    }
    for e in 0..=budget {
        prefix.push(e);
        exponent_vectors(nvars, budget - e, prefix, out);
        prefix.pop();
    }
}

/// A one-parameter family of invariant lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineFamily {
    /// Every vertical line `x - beta` (happens iff `D(x) = 0`).
    Vertical,
    /// Every line `y - s*x - t` with `relation(s, t) = 0`; `None` means all
    /// `(s, t)`.
    Slanted { relation: Option<Poly> },
}

impl fmt::Display for LineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineFamily::Vertical => write!(f, "x - beta for every beta"),
            LineFamily::Slanted { relation: None } => write!(f, "y - s*x - t for every s, t"),
            LineFamily::Slanted { relation: Some(r) } => {
                write!(f, "y - s*x - t with {} = 0", r.to_string_with(&["s", "t"]))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearDarboux {
    /// Isolated invariant lines with rational coefficients.
    pub pairs: Vec<DarbouxPair>,
    pub families: Vec<LineFamily>,
    /// Invariant lines exist whose coefficients are irrational.
    pub extension_flag: bool,
}

/// All invariant lines `c0 + c1*x + c2*y` with rational coefficients.
pub fn linear_darboux_search(d: &Derivation) -> Result<LinearDarboux> {
    if d.nvars() != 2 {
        return Err(Error::WrongNvars { expected: 2, got: d.nvars() });
    }
    let (a, b) = (d.component(0), d.component(1));
    let mut out = LinearDarboux::default();
    let mut lines: Vec<Poly> = Vec::new();

    // y = s*x + t: b - s*a vanishes on the line
    let (x3, s3, t3) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
    let on_line = [x3.clone(), &(&s3 * &x3) + &t3];
    let a_line = a.substitute(&on_line)?;
    let b_line = b.substitute(&on_line)?;
    let cond = &b_line - &(&s3 * &a_line);
    let eqs = cond.coefficients_in(0).iter().map(|c| c.restrict_to(&[1, 2])).collect::<Result<Vec<_>>>()?;
    let sols = solve_bivariate(&eqs)?;
    match &sols.curve {
        Some(SolutionCurve::Plane) => out.families.push(LineFamily::Slanted { relation: None }),
        Some(SolutionCurve::Curve(g)) => out.families.push(LineFamily::Slanted { relation: Some(g.clone()) }),
        None => {}
    }
    out.extension_flag |= !sols.irrational.is_empty();
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    for (s, t) in &sols.points {
        lines.push(&(&y - &x.scale(s)) - &Poly::constant(2, t.clone()));
    }

    // x = beta: a(beta, y) = 0
    if a.is_zero() {
        out.families.push(LineFamily::Vertical);
    } else {
        let mut g = UniPoly::zero();
        for c in a.coefficients_in(1) {
            g = g.gcd(&UniPoly::from_poly(&c, 0)?);
        }
        if !g.is_constant() {
            for beta in distinct_rational_roots(&g)? {
                lines.push(&x - &Poly::constant(2, beta));
            }
            out.extension_flag |= !irrational_part(&g)?.is_constant();
        }
    }

    for h in lines {
        let pair = darboux_pair(d, &h)?
            .ok_or_else(|| Error::Internal(format!("line {h} found but not invariant")))?;
        out.pairs.push(pair);
    }
    out.pairs.sort_by(|p, q| p.h.leading_term().map(|t| t.0).cmp(&q.h.leading_term().map(|t| t.0)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CensusKind {
    NoEigenvectorUpTo(u32),
    FiniteList { pairs: Vec<DarbouxPair>, bound: u32 },
    /// The extactic determinant of this order vanishes identically and the
    /// family is corroborated by a first integral or a family of lines.
    InfiniteFamily { extactic_order: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCensus {
    pub bound: u32,
    pub kind: CensusKind,
    pub kernel_basis: Vec<Poly>,
    /// Verified pairs found along the way (for every kind).
    pub pairs: Vec<DarbouxPair>,
    pub line_families: Vec<LineFamily>,
    /// Orders `m` whose extactic determinant vanishes identically.
    pub vanishing_orders: Vec<u32>,
    /// Vanishing without corroboration is reported, not acted upon.
    pub uncorroborated: bool,
    pub extension_flag: bool,
}

pub const DEFAULT_CENSUS_BOUND: u32 = 3;

pub fn census(d: &Derivation, m_max: u32, candidates: &[Poly]) -> Result<EigenCensus> {
    census_with_limit(d, m_max, candidates, DEFAULT_EXTACTIC_MAX_ORDER)
}

pub fn census_with_limit(d: &Derivation, m_max: u32, candidates: &[Poly], max_order: u32) -> Result<EigenCensus> {
    if d.nvars() != 2 {
        return Err(Error::WrongNvars { expected: 2, got: d.nvars() });
    }
    if d.is_zero() {
        return Err(Error::ZeroDerivation);
    }
    if m_max == 0 {
        return Err(Error::Malformed("census bound must be at least 1".into()));
    }
    let kernel_basis = kernel_bounded(d, m_max)?;
    let mut vanishing_orders = Vec::new();
    for m in 1..=m_max {
        if extactic_with_limit(d, m, max_order)?.is_zero() {
            vanishing_orders.push(m);
        }
    }
    let linear = linear_darboux_search(d)?;
    let mut pairs = linear.pairs.clone();
    for h in candidates {
        if h.is_constant() || h.degree_or_zero() > m_max {
            continue;
        }
        if let Some(pair) = darboux_pair(d, h)? {
            if !pairs.iter().any(|p| p.h == pair.h) {
                pairs.push(pair);
            }
        }
    }
    let corroborated = kernel_basis.iter().any(|p| !p.is_constant()) || !linear.families.is_empty();
    let kind = match vanishing_orders.first() {
        Some(&m) if corroborated => CensusKind::InfiniteFamily { extactic_order: m },
        _ if pairs.is_empty() => CensusKind::NoEigenvectorUpTo(m_max),
        _ => CensusKind::FiniteList { pairs: pairs.clone(), bound: m_max },
    };
    Ok(EigenCensus {
        bound: m_max,
        uncorroborated: !vanishing_orders.is_empty() && !corroborated,
        kind,
        kernel_basis,
        pairs,
        line_families: linear.families,
        vanishing_orders,
        extension_flag: linear.extension_flag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn c(v: i64) -> Poly {
        Poly::constant(2, int(v))
    }
    fn der(a: Poly, b: Poly) -> Derivation {
        Derivation::plane(a, b).unwrap()
    }

    #[test]
    fn verify_examples() {
        let d = der(&x() * &(&y() + &c(3)), y());
        assert_eq!(darboux_verify(&d, &x()).unwrap(), Some(&y() + &c(3)));
        let rot = der(y(), -&x());
        assert_eq!(darboux_verify(&rot, &(&x().pow(2) + &y().pow(2))).unwrap(), Some(c(0)));
        let diag = der(x(), y().scale(&int(2)));
        assert_eq!(darboux_verify(&diag, &(&x() * &y())).unwrap(), Some(c(3)));
        assert_eq!(darboux_verify(&rot, &x()).unwrap(), None);
        assert!(darboux_verify(&rot, &c(2)).is_err());
    }

    #[test]
    fn extactic_examples() {
        let u = &x().pow(2) + &c(1);
        assert!(extactic(&der(c(0), u), 1).unwrap().is_zero());
        let e = extactic(&der(y(), -&x()), 1).unwrap();
        assert_eq!(e, -&(&x().pow(2) + &y().pow(2)));
        assert!(extactic(&der(c(1), c(0)), 1).unwrap().is_zero());
        assert!(matches!(extactic(&der(c(1), c(0)), 9), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_bounded(&der(c(0), c(1)), 2).unwrap();
        assert_eq!(k, vec![c(1), x(), x().pow(2)]);
        let k = kernel_bounded(&der(x(), y().scale(&int(2))), 3).unwrap();
        assert_eq!(k, vec![c(1)]);
        let k = kernel_bounded(&der(y(), -&x()), 2).unwrap();
        assert_eq!(k, vec![c(1), &x().pow(2) + &y().pow(2)]);
    }

    #[test]
    fn linear_search_examples() {
        let diag = der(x(), y().scale(&int(2)));
        let found = linear_darboux_search(&diag).unwrap();
        let hs: Vec<Poly> = found.pairs.iter().map(|p| p.h.clone()).collect();
        assert_eq!(hs, vec![y(), x()]);
        assert_eq!(found.pairs[1].lambda, c(1));
        assert_eq!(found.pairs[0].lambda, c(2));
        assert!(!found.extension_flag);

        let u = &x().pow(2) + &c(1);
        let found = linear_darboux_search(&der(c(0), u)).unwrap();
        assert!(found.families.contains(&LineFamily::Vertical));

        let found = linear_darboux_search(&der(y(), -&x())).unwrap();
        assert!(found.pairs.is_empty());
        assert!(found.families.is_empty());
        assert!(found.extension_flag);
    }

    #[test]
    fn census_examples() {
        let cen = census(&der(c(0), x()), 2, &[]).unwrap();
        assert_eq!(cen.kind, CensusKind::InfiniteFamily { extactic_order: 1 });

        let cen = census(&der(x(), y().scale(&int(2))), 2, &[]).unwrap();
        let CensusKind::FiniteList { pairs, .. } = &cen.kind else { panic!("{cen:?}") };
        assert_eq!(pairs.len(), 2);
        // the pencil y - c x^2 makes the order-2 determinant vanish
        assert_eq!(cen.vanishing_orders, vec![2]);
        assert!(cen.uncorroborated);

        let cen = census(&der(y(), -&x()), 2, &[]).unwrap();
        assert_eq!(cen.kind, CensusKind::InfiniteFamily { extactic_order: 2 });
        assert!(cen.extension_flag);
        assert!(cen.pairs.is_empty());

        let cen = census(&der(y(), -&x()), 1, &[]).unwrap();
        assert_eq!(cen.kind, CensusKind::NoEigenvectorUpTo(1));
    }
}
