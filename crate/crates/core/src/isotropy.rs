//! Isotropy groups of derivations: commutation tests, conjugation, the
//! groups `J_u`, triangular isotropy equations, degree sweeps over the
//! de Jonquieres class and witness families.

use std::fmt;

use num_traits::{One, Zero};

use crate::automorphism::{validate, PlaneAuto, PolyMap};
use crate::derivation::{
    apply, default_cap, lnd_decide2, lnd_semidecide, Derivation, LndCertificate, LndVerdict, Nilpotence,
    NotLndCertificate,
};
use crate::eigen::{census, CensusKind, EigenCensus, DEFAULT_CENSUS_BOUND};
use crate::error::{Error, Result};
use crate::exactlin::{distinct_rational_roots, solve_bivariate, AffineSolution, QMatrix, SolutionCurve};
use crate::poly::{int, rat, Degree, Poly, Rational};
use crate::uni::UniPoly;

/// Result of checking `m D = D m` on the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationReport {
    pub commutes: bool,
    /// `apply(D, m_i) - D(x_i)(m)` for each variable.
    pub residuals: Vec<Poly>,
    /// Set when `m` was only checked to have a constant nonzero jacobian.
    pub caveat: Option<String>,
}

pub fn is_in_isotropy(m: &PolyMap, d: &Derivation) -> Result<CommutationReport> {
    if m.nvars() != d.nvars() {
        return Err(Error::NvarsMismatch { left: d.nvars(), right: m.nvars() });
    }
    let caveat = if m.nvars() == 2 {
        validate(m)?;
        None
    } else {
        let jac = m.jacobian_det()?;
        match jac.constant_value() {
            Some(c) if !c.is_zero() => {}
            _ => {
                return Err(Error::NotAnAutomorphism(crate::automorphism::Obstruction::NonConstantJacobian(jac)))
            }
        }
        Some(format!("{} variables: jacobian is a nonzero constant, invertibility not certified", m.nvars()))
    };
    let residuals = m
        .components()
        .iter()
        .zip(d.components())
        .map(|(mi, di)| Ok(&apply(d, mi)? - &m.apply(di)?))
        .collect::<Result<Vec<Poly>>>()?;
    Ok(CommutationReport { commutes: residuals.iter().all(Poly::is_zero), residuals, caveat })
}

/// The derivation `phi^-1 D phi` acting on `Q[x, y]`, where `phi` acts by
/// substitution: component `i` is `D(phi_i)` evaluated at `phi^-1`.
/// `conjugate(phi, D) = D` exactly when `phi` commutes with `D`.
pub fn conjugate(phi: &PlaneAuto, d: &Derivation) -> Result<Derivation> {
    if d.nvars() != 2 {
        return Err(Error::WrongNvars { expected: 2, got: d.nvars() });
    }
    let inv = phi.invert().to_map();
    let components = [phi.f(), phi.g()]
        .iter()
        .map(|c| inv.apply(&apply(d, c)?))
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(components)
}

/// A one-parameter family of solutions `(alpha, beta, alpha^n)` of
/// `u(alpha x + beta) = gamma u(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JuFamily {
    /// `(alpha, beta)` ranges over the zeros of this polynomial (variables
    /// `alpha`, `beta`) with `alpha != 0`; `None` means every such pair.
    pub relation: Option<Poly>,
    /// `gamma = alpha^gamma_exponent`.
    pub gamma_exponent: u32,
}

impl fmt::Display for JuFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gamma = match self.gamma_exponent {
            0 => "1".to_string(),
            1 => "alpha".to_string(),
            n => format!("alpha^{n}"),
        };
        match &self.relation {
            None => write!(f, "all alpha != 0, beta; gamma = {gamma}"),
            Some(r) => write!(f, "{} = 0, alpha != 0; gamma = {gamma}", r.to_string_with(&["alpha", "beta"])),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JuGroupData {
    pub u: UniPoly,
    /// Isolated `(alpha, beta, gamma)`.
    pub affine_solutions: Vec<(Rational, Rational, Rational)>,
    pub families: Vec<JuFamily>,
    /// `P` in `gamma y + P(x)` is unconstrained.
    pub free_part: bool,
    pub extension_flag: bool,
}

impl JuGroupData {
    /// Does `(alpha, beta, gamma)` belong to one of the families?
    pub fn family_contains(&self, alpha: &Rational, beta: &Rational, gamma: &Rational) -> bool {
        let n = self.u.degree().unwrap_or(0) as i32;
        !alpha.is_zero()
            && *gamma == alpha.pow(n)
            && self.families.iter().any(|fam| match &fam.relation {
                None => true,
                Some(r) => r.eval(&[alpha.clone(), beta.clone()]).is_ok_and(|v| v.is_zero()),
            })
    }
}

/// Affine maps `alpha x + beta` with `u(alpha x + beta) = gamma u(x)`.
pub fn ju_group(u: &UniPoly) -> Result<JuGroupData> {
    let n = u.degree().ok_or(Error::ZeroPolynomial("ju_group"))? as u32;
    let eqs = affine_equations(u, n)?;
    let sols = solve_bivariate(&eqs)?;
    let mut families = Vec::new();
    match sols.curve {
        Some(SolutionCurve::Plane) => families.push(JuFamily { relation: None, gamma_exponent: n }),
        Some(SolutionCurve::Curve(g)) => {
            if let Some(rel) = strip_alpha(&g)? {
                families.push(JuFamily { relation: Some(rel), gamma_exponent: n });
            }
        }
        None => {}
    }
    let affine_solutions: Vec<_> = sols
        .points
        .into_iter()
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, b)| {
            let g = a.pow(n as i32);
            (a, b, g)
        })
        .collect();
    let extension_flag = sols.irrational.iter().any(|branch| match branch {
        crate::exactlin::IrrationalBranch::RationalFirst { first, .. } => !first.is_zero(),
        crate::exactlin::IrrationalBranch::IrrationalFirst { .. } => true,
    });
    for (a, b, g) in &affine_solutions {
        if u.affine_substitute(a, b) != u.scale(g) {
            return Err(Error::Internal(format!("({a}, {b}, {g}) does not solve the J_u equation")));
        }
    }
    Ok(JuGroupData { u: u.clone(), affine_solutions, families, free_part: true, extension_flag })
}

/// Coefficients in `x` of `u(alpha x + beta) - alpha^n u(x)`, as
/// polynomials in `(alpha, beta)`.
fn affine_equations(u: &UniPoly, n: u32) -> Result<Vec<Poly>> {
    let (x, al, be) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
    let u3 = u.to_poly(3, 0);
    let lhs = u3.substitute(&[&(&al * &x) + &be, Poly::var(3, 1), Poly::var(3, 2)])?;
    let diff = &lhs - &(&al.pow(n) * &u3);
    diff.coefficients_in(0).iter().map(|c| c.restrict_to(&[1, 2])).collect()
}

/// Remove factors `alpha` from a family relation; `None` if nothing is left.
fn strip_alpha(g: &Poly) -> Result<Option<Poly>> {
    let alpha = Poly::var(2, 0);
    let mut g = g.clone();
    while let Some(q) = g.exact_divide(&alpha)? {
        g = q;
    }
    Ok((!g.is_constant()).then_some(g))
}

/// `D = x^ell a(x) d/dx + (b0(x) + b1(x) y) d/dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularIsotropyProblem {
    pub ell: u32,
    pub a: UniPoly,
    pub b0: UniPoly,
    pub b1: UniPoly,
}

impl TriangularIsotropyProblem {
    pub fn new(ell: u32, a: UniPoly, b0: UniPoly, b1: UniPoly) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Malformed("a must be nonzero".into()));
        }
        if a.coeff(0).is_zero() {
            return Err(Error::Malformed("x divides a".into()));
        }
        Ok(TriangularIsotropyProblem { ell, a, b0, b1 })
    }

    pub fn derivation(&self) -> Derivation {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let dx = &x.pow(self.ell) * &self.a.to_poly(2, 0);
        let dy = &self.b0.to_poly(2, 0) + &(&self.b1.to_poly(2, 0) * &y);
        Derivation::plane(dx, dy).expect("two variables")
    }

    /// `(A_r, r)`.
    pub fn a_leading(&self) -> (Rational, usize) {
        (self.a.leading_coeff(), self.a.degree().unwrap_or(0))
    }

    /// `(B_s, s)`, or `None` when `b1 = 0`.
    pub fn b1_leading(&self) -> Option<(Rational, usize)> {
        self.b1.degree().map(|s| (self.b1.leading_coeff(), s))
    }
}

/// The maps `(alpha x, gamma y + P(x))` with `deg P <= m` commuting with the
/// problem's derivation, for fixed `alpha, gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularSolution {
    pub alpha: Rational,
    pub gamma: Rational,
    pub particular: UniPoly,
    pub basis: Vec<UniPoly>,
}

impl TriangularSolution {
    pub fn map_for(&self, p: &UniPoly) -> PolyMap {
        triangular_map(&self.alpha, &Rational::zero(), &self.gamma, p)
    }

    /// `particular + sum coeffs[i] * basis[i]`.
    pub fn member(&self, coeffs: &[Rational]) -> UniPoly {
        let mut p = self.particular.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            p = &p + &b.scale(c);
        }
        p
    }
}

/// `(alpha x + beta, gamma y + P(x))`.
pub fn triangular_map(alpha: &Rational, beta: &Rational, gamma: &Rational, p: &UniPoly) -> PolyMap {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let f = &x.scale(alpha) + &Poly::constant(2, beta.clone());
    let g = &y.scale(gamma) + &p.to_poly(2, 0);
    PolyMap::plane(f, g).expect("two variables")
}

pub fn triangular_isotropy_solve(
    prob: &TriangularIsotropyProblem,
    alpha: &Rational,
    gamma: &Rational,
    m: u32,
) -> Result<Option<TriangularSolution>> {
    if alpha.is_zero() || gamma.is_zero() {
        return Err(Error::Malformed("alpha and gamma must be nonzero".into()));
    }
    let prob = TriangularIsotropyProblem::new(prob.ell, prob.a.clone(), prob.b0.clone(), prob.b1.clone())?;
    let zero = Rational::zero();
    // alpha^(ell-1) a(alpha x) = a(x)
    let scale = alpha.pow(prob.ell as i32 - 1);
    if prob.a.affine_substitute(alpha, &zero).scale(&scale) != prob.a {
        return Ok(None);
    }
    // b1(alpha x) = b1(x)
    if prob.b1.affine_substitute(alpha, &zero) != prob.b1 {
        return Ok(None);
    }
    // b0(alpha x) + b1(x) P - gamma b0(x) - x^ell a(x) P'(x) = 0, linear in P
    let xl_a = &UniPoly::monomial(prob.ell as usize, Rational::one()) * &prob.a;
    let columns: Vec<UniPoly> = (0..=m as usize)
        .map(|j| {
            let xj = UniPoly::monomial(j, Rational::one());
            &(&prob.b1 * &xj) - &(&xl_a * &xj.derivative())
        })
        .collect();
    let rhs_poly = &prob.b0.scale(gamma) - &prob.b0.affine_substitute(alpha, &zero);
    let Some(sol) = solve_uni_columns(&columns, &rhs_poly)? else { return Ok(None) };
    let to_uni = |v: &[Rational]| UniPoly::new(v.to_vec());
    let out = TriangularSolution {
        alpha: alpha.clone(),
        gamma: gamma.clone(),
        particular: to_uni(&sol.particular),
        basis: sol.basis.iter().map(|v| to_uni(v)).collect(),
    };
    let d = prob.derivation();
    let mut members = vec![out.particular.clone()];
    members.extend(out.basis.iter().map(|b| &out.particular + b));
    for p in &members {
        if !is_in_isotropy(&out.map_for(p), &d)?.commutes {
            return Err(Error::Internal(format!("solution P = {p} does not commute")));
        }
    }
    Ok(Some(out))
}

/// Solve `sum_j c_j columns[j] = rhs` coefficientwise.
fn solve_uni_columns(columns: &[UniPoly], rhs: &UniPoly) -> Result<Option<AffineSolution>> {
    let rows = columns
        .iter()
        .chain(std::iter::once(rhs))
        .map(|p| p.coeffs().len())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut a = QMatrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.coeffs().iter().enumerate() {
            a.set(i, j, c.clone());
        }
    }
    let b: Vec<Rational> = (0..rows).map(|i| rhs.coeff(i)).collect();
    a.solve_affine(&b)
}

/// `alpha^s B_s / A_r`.
pub fn predicted_degree(prob: &TriangularIsotropyProblem, alpha: &Rational) -> Result<Rational> {
    let (ar, _) = prob.a_leading();
    if ar.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (bs, s) = prob.b1_leading().ok_or(Error::ZeroPolynomial("predicted_degree needs b1 != 0"))?;
    Ok(alpha.pow(s as i32) * bs / ar)
}

/// `phi_k = exp(f^k D)` for `k = 1..=k_max`, each verified to commute with `D`.
pub fn witness_unbounded_family(d: &Derivation, verdict: &LndVerdict, k_max: u32) -> Result<Vec<PlaneAuto>> {
    let LndVerdict::Lnd(cert) = verdict else {
        return Err(Error::NotNilpotent("witness family needs a locally nilpotent verdict".into()));
    };
    let f = &cert.kernel_generator;
    if f.is_constant() {
        return Err(Error::ConstantPolynomial("kernel generator"));
    }
    let iterates = variable_iterates(d, cert)?;
    let mut out = Vec::with_capacity(k_max as usize);
    let mut fk = Poly::one(2);
    for _ in 1..=k_max {
        fk = &fk * f;
        // (h D)^j = h^j D^j for h in the kernel
        let mut comps = Vec::with_capacity(2);
        for its in &iterates {
            let mut sum = Poly::zero(2);
            let mut hj = Poly::one(2);
            let mut fact = Rational::one();
            for (j, it) in its.iter().enumerate() {
                if j > 0 {
                    hj = &hj * &fk;
                    fact *= int(j as i64);
                }
                sum = &sum + &(&hj * it).scale(&fact.recip());
            }
            comps.push(sum);
        }
        let map = PolyMap::new(comps)?;
        let auto = validate(&map)?;
        let report = is_in_isotropy(&map, d)?;
        if !report.commutes {
            return Err(Error::Internal(format!("exp(f^k D) = {map} does not commute")));
        }
        out.push(auto);
    }
    Ok(out)
}

/// `D^j(x_i)` for `j < nilpotence index`.
fn variable_iterates(d: &Derivation, cert: &LndCertificate) -> Result<Vec<Vec<Poly>>> {
    (0..2)
        .map(|i| {
            let mut its = vec![Poly::var(2, i)];
            for _ in 1..cert.nilpotence_index {
                let next = apply(d, its.last().expect("nonempty"))?;
                its.push(next);
            }
            if !apply(d, its.last().expect("nonempty"))?.is_zero() {
                return Err(Error::NotNilpotent("stated nilpotence index is too small".into()));
            }
            Ok(its)
        })
        .collect()
}

/// Outcome of the search in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    Witness { auto: PlaneAuto, alpha: Rational, beta: Rational, gamma: Rational, p: UniPoly },
    NoneFound,
    Undecided { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCell {
    pub degree: u32,
    pub outcome: CellOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchClass {
    /// `a` in `Q[x]` and `b` of degree at most one in `y`: `P` solves a
    /// linear system once `(alpha, beta)` is fixed.
    LinearInP,
    /// `P` is forced by `(alpha, beta, gamma)`.
    ForcedP { degree_bound: u32 },
}

/// Search of maps `(alpha x + beta, gamma y + P(x))` commuting with `D`.
/// Cell `d >= 2` asks for `deg P = d`; cell `1` for `deg P <= 1`, so the
/// degree of a witness in cell `d` is `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepResult {
    pub d_max: u32,
    pub cells: Vec<SweepCell>,
    pub search_class: SearchClass,
    /// Scope statements attached to the result.
    pub notes: Vec<String>,
}

impl SweepResult {
    pub fn max_witness_degree(&self) -> Option<u32> {
        self.cells
            .iter()
            .filter(|c| matches!(c.outcome, CellOutcome::Witness { .. }))
            .map(|c| c.degree)
            .max()
    }

    pub fn cell(&self, degree: u32) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.degree == degree)
    }
}

pub const DEFAULT_SWEEP_BUDGET: usize = 256;

pub fn jonquieres_sweep(d: &Derivation, d_max: u32) -> Result<SweepResult> {
    jonquieres_sweep_with_budget(d, d_max, DEFAULT_SWEEP_BUDGET)
}

/// Candidate `(alpha, beta)` pairs and cells are searched in a fixed order.
pub fn jonquieres_sweep_with_budget(d: &Derivation, d_max: u32, budget: usize) -> Result<SweepResult> {
    if d.nvars() != 2 {
        return Err(Error::WrongNvars { expected: 2, got: d.nvars() });
    }
    if d_max == 0 {
        return Err(Error::Malformed("d_max must be at least 1".into()));
    }
    let a_y = d.component(0).coefficients_in(1);
    let b_y = d.component(1).coefficients_in(1);
    let linear = a_y.len() <= 1 && b_y.len() <= 2;
    if linear {
        sweep_linear(d, d_max, budget)
    } else {
        sweep_forced(d, d_max, budget, &a_y, &b_y)
    }
}

fn uni_coeffs(parts: &[Poly], i: usize) -> Result<UniPoly> {
    match parts.get(i) {
        Some(p) => UniPoly::from_poly(p, 0),
        None => Ok(UniPoly::zero()),
    }
}

fn sweep_linear(d: &Derivation, d_max: u32, budget: usize) -> Result<SweepResult> {
    let a = UniPoly::from_poly(d.component(0), 0)?;
    let b_y = d.component(1).coefficients_in(1);
    let b0 = uni_coeffs(&b_y, 0)?;
    let b1 = uni_coeffs(&b_y, 1)?;

    // a(alpha x + beta) = alpha a(x), b1(alpha x + beta) = b1(x)
    let mut eqs = affine_equations_general(&a, 1)?;
    eqs.extend(affine_equations_general(&b1, 0)?);
    let sols = solve_bivariate(&eqs)?;
    let mut notes = vec!["search restricted to maps (alpha*x + beta, gamma*y + P(x)) with rational coefficients".to_string()];
    let mut candidates: Vec<(Rational, Rational)> = Vec::new();
    let push = |c: &mut Vec<(Rational, Rational)>, p: (Rational, Rational)| {
        if !p.0.is_zero() && !c.contains(&p) {
            c.push(p);
        }
    };
    push(&mut candidates, (Rational::one(), Rational::zero()));
    for p in &sols.points {
        push(&mut candidates, p.clone());
    }
    if let Some(curve) = &sols.curve {
        let samples = sample_family(curve)?;
        notes.push(format!(
            "(alpha, beta) ranges over a one-parameter family; sampled at {}",
            samples.iter().map(|(a, b)| format!("({a}, {b})")).collect::<Vec<_>>().join(", ")
        ));
        for p in samples {
            push(&mut candidates, p);
        }
    }
    if !sols.irrational.is_empty() {
        notes.push("some (alpha, beta) solutions are irrational and were not searched".into());
    }
    if candidates.len() > budget {
        return Err(Error::BudgetExceeded(format!("{} candidates exceed the budget {budget}", candidates.len())));
    }

    let mut cells = Vec::new();
    for deg in 1..=d_max {
        let mut outcome = CellOutcome::NoneFound;
        for (alpha, beta) in &candidates {
            if let Some(w) = linear_cell_witness(d, &a, &b0, &b1, alpha, beta, deg)? {
                outcome = w;
                break;
            }
        }
        if matches!(outcome, CellOutcome::NoneFound) && sols.curve.is_some() && !top_coefficient_forced_zero(&a, &b0, &b1, deg) {
            outcome = CellOutcome::Undecided { reason: "no witness at the sampled family members".into() };
        }
        cells.push(SweepCell { degree: deg, outcome });
    }
    Ok(SweepResult { d_max, cells, search_class: SearchClass::LinearInP, notes })
}

/// Does every `P` of degree `<= deg` with `b1 P - a P'` of degree at most
/// `deg b0` have zero coefficient of `x^deg`? When it does, no choice of
/// `(alpha, beta, gamma)` gives a witness with `deg P = deg`.
fn top_coefficient_forced_zero(a: &UniPoly, b0: &UniPoly, b1: &UniPoly, deg: u32) -> bool {
    if deg < 2 {
        return false;
    }
    let mut columns: Vec<UniPoly> = (0..=deg as usize)
        .map(|j| {
            let xj = UniPoly::monomial(j, Rational::one());
            &(b1 * &xj) - &(a * &xj.derivative())
        })
        .collect();
    if let Some(db0) = b0.degree() {
        columns.extend((0..=db0).map(|i| UniPoly::monomial(i, Rational::one())));
    }
    let rows = columns.iter().map(|p| p.coeffs().len()).max().unwrap_or(0).max(1);
    let mut m = QMatrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.coeffs().iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    m.nullspace().iter().all(|v| v[deg as usize].is_zero())
}

/// Coefficients of `u(alpha x + beta) - alpha^k u(x)` in `(alpha, beta)`.
fn affine_equations_general(u: &UniPoly, k: u32) -> Result<Vec<Poly>> {
    if u.is_zero() {
        return Ok(Vec::new());
    }
    affine_equations(u, k)
}

/// Deterministic rational points with `alpha != 0` on a solution family.
fn sample_family(curve: &SolutionCurve) -> Result<Vec<(Rational, Rational)>> {
    let alphas = [int(1), int(-1), int(2), int(-2), rat(1, 2), int(3)];
    let mut out = Vec::new();
    match curve {
        SolutionCurve::Plane => {
            for a in &alphas {
                for b in [int(0), int(1)] {
                    out.push((a.clone(), b));
                }
            }
        }
        SolutionCurve::Curve(g) => {
            for a in &alphas {
                let line = g.substitute(&[Poly::constant(2, a.clone()), Poly::var(2, 1)])?;
                if line.is_zero() {
                    out.push((a.clone(), int(0)));
                    out.push((a.clone(), int(1)));
                    continue;
                }
                for b in distinct_rational_roots(&UniPoly::from_poly(&line, 1)?)? {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    Ok(out)
}

/// Solve `b0(alpha x + beta) + b1(x) P - gamma b0(x) - a(x) P'(x) = 0` for
/// `(gamma, P)` with `deg P <= deg`, and pick `gamma != 0` with the required
/// degree of `P`.
#[allow(clippy::too_many_arguments)]
fn linear_cell_witness(
    d: &Derivation,
    a: &UniPoly,
    b0: &UniPoly,
    b1: &UniPoly,
    alpha: &Rational,
    beta: &Rational,
    deg: u32,
) -> Result<Option<CellOutcome>> {
    let mut columns = vec![-b0];
    for j in 0..=deg as usize {
        let xj = UniPoly::monomial(j, Rational::one());
        columns.push(&(b1 * &xj) - &(a * &xj.derivative()));
    }
    let rhs = -&b0.affine_substitute(alpha, beta);
    let Some(sol) = solve_uni_columns(&columns, &rhs)? else { return Ok(None) };
    let mut required = vec![0];
    if deg >= 2 {
        required.push(deg as usize + 1);
    }
    let Some(v) = avoid_hyperplanes(&sol, &required) else { return Ok(None) };
    let gamma = v[0].clone();
    let p = UniPoly::new(v[1..].to_vec());
    let map = triangular_map(alpha, beta, &gamma, &p);
    let auto = validate(&map)?;
    if !is_in_isotropy(&map, d)?.commutes {
        return Err(Error::Internal(format!("sweep candidate {map} does not commute")));
    }
    Ok(Some(CellOutcome::Witness { auto, alpha: alpha.clone(), beta: beta.clone(), gamma, p }))
}

/// A point of the affine solution set whose listed coordinates are all
/// nonzero, found on the moment curve `t -> particular + sum t^k basis_k`.
fn avoid_hyperplanes(sol: &AffineSolution, coords: &[usize]) -> Option<Vec<Rational>> {
    let dim = sol.basis.len();
    for t in 0..=(coords.len() * dim + 1) as i64 {
        let t = int(t);
        let mut v = sol.particular.clone();
        let mut tk = Rational::one();
        for w in &sol.basis {
            tk *= &t;
            for (vi, wi) in v.iter_mut().zip(w) {
                *vi += &tk * wi;
            }
        }
        if coords.iter().all(|&i| !v[i].is_zero()) {
            return Some(v);
        }
    }
    None
}

fn sweep_forced(d: &Derivation, d_max: u32, budget: usize, a_y: &[Poly], b_y: &[Poly]) -> Result<SweepResult> {
    // the top y-coefficient of whichever component is nonlinear forces P
    let (parts, e, from_a) = if a_y.len() >= 2 { (a_y, a_y.len() - 1, true) } else { (b_y, b_y.len() - 1, false) };
    let top = UniPoly::from_poly(&parts[e], 0)?;
    let next = UniPoly::from_poly(&parts[e - 1], 0)?;
    let bound = match next.degree() {
        Some(dn) => (dn as i64 - top.degree().unwrap_or(0) as i64).max(1) as u32,
        None => 1,
    };
    let alphas = [int(1), int(-1), int(2), int(-2), rat(1, 2), rat(-1, 2)];
    let betas = [int(0), int(1), int(-1)];
    let n_candidates = alphas.len() * alphas.len() * betas.len();
    if n_candidates > budget {
        return Err(Error::BudgetExceeded(format!("{n_candidates} candidates exceed the budget {budget}")));
    }
    let notes = vec![
        "search restricted to maps (alpha*x + beta, gamma*y + P(x)) with rational coefficients".to_string(),
        format!("P is determined by (alpha, beta, gamma), so deg P <= {bound}"),
        format!(
            "cells up to {bound} were searched over alpha, gamma in {{1, -1, 2, -2, 1/2, -1/2}} and beta in {{0, 1, -1}}"
        ),
    ];
    let mut cells = Vec::new();
    for deg in 1..=d_max {
        if deg > bound {
            cells.push(SweepCell { degree: deg, outcome: CellOutcome::NoneFound });
            continue;
        }
        let mut outcome = CellOutcome::Undecided { reason: "no witness among the sampled (alpha, beta, gamma)".into() };
        'search: for alpha in &alphas {
            for beta in &betas {
                for gamma in &alphas {
                    let Some(p) = forced_p(&top, &next, e, alpha, beta, gamma, from_a)? else { continue };
                    let ok_degree = match p.degree() {
                        None => deg == 1,
                        Some(k) => (deg == 1 && k <= 1) || k == deg as usize,
                    };
                    if !ok_degree {
                        continue;
                    }
                    let map = triangular_map(alpha, beta, gamma, &p);
                    if is_in_isotropy(&map, d)?.commutes {
                        let auto = validate(&map)?;
                        outcome = CellOutcome::Witness {
                            auto,
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            gamma: gamma.clone(),
                            p,
                        };
                        break 'search;
                    }
                }
            }
        }
        cells.push(SweepCell { degree: deg, outcome });
    }
    Ok(SweepResult { d_max, cells, search_class: SearchClass::ForcedP { degree_bound: bound }, notes })
}

/// The `P` forced by matching the two top `y`-coefficients, if polynomial.
///
/// For `a` with top `y`-degree `e`:
/// `P = (alpha a_{e-1}(x) - gamma^{e-1} a_{e-1}(alpha x + beta)) / (e gamma^{e-1} a_e(alpha x + beta))`;
/// for `b`, `alpha` on the left is replaced by `gamma`.
fn forced_p(
    top: &UniPoly,
    next: &UniPoly,
    e: usize,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    from_a: bool,
) -> Result<Option<UniPoly>> {
    let ge = gamma.pow(e as i32 - 1);
    let lead = if from_a { alpha } else { gamma };
    let num = &next.scale(lead) - &next.affine_substitute(alpha, beta).scale(&ge);
    let den = top.affine_substitute(alpha, beta).scale(&(ge * int(e as i64)));
    if den.is_zero() {
        return Ok(None);
    }
    num.exact_div(&den)
}

/// Outcome of [`theorem_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub verdict: LndVerdict,
    /// Commuting automorphisms of growing degree (locally nilpotent case).
    pub witnesses: Vec<PlaneAuto>,
    pub sweep: Option<SweepResult>,
    pub census: Option<EigenCensus>,
    /// Eigenvectors with nonzero eigenvalue, each a re-checkable certificate.
    pub eigen_certificates: Vec<NotLndCertificate>,
    pub summary: String,
}

impl TheoremReport {
    pub fn max_witness_degree(&self) -> Option<u32> {
        self.witnesses.iter().map(|w| w.degree().0).max()
    }
}

pub fn theorem_check(d: &Derivation, d_max: u32) -> Result<TheoremReport> {
    theorem_check_with(d, d_max, DEFAULT_CENSUS_BOUND, DEFAULT_SWEEP_BUDGET)
}

pub fn theorem_check_with(d: &Derivation, d_max: u32, m_max: u32, budget: usize) -> Result<TheoremReport> {
    let verdict = lnd_decide2(d)?;
    if let LndVerdict::Lnd(_) = &verdict {
        let mut k_max = d_max.max(1);
        let mut witnesses = witness_unbounded_family(d, &verdict, k_max)?;
        while witnesses.iter().map(|w| w.degree().0).max().unwrap_or(0) < d_max && k_max < 4 * d_max {
            k_max *= 2;
            witnesses = witness_unbounded_family(d, &verdict, k_max)?;
        }
        let top = witnesses.iter().map(|w| w.degree().0).max().unwrap_or(0);
        let summary = format!(
            "LND; {} commuting automorphisms verified, maximal degree {top}{}",
            witnesses.len(),
            if top >= d_max { format!(" >= {d_max}") } else { String::new() }
        );
        return Ok(TheoremReport {
            verdict,
            witnesses,
            sweep: None,
            census: None,
            eigen_certificates: Vec::new(),
            summary,
        });
    }
    let sweep = jonquieres_sweep_with_budget(d, d_max, budget)?;
    let cen = census(d, m_max, &[])?;
    let mut eigen_certificates = Vec::new();
    for pair in &cen.pairs {
        if let Some(cert) = NotLndCertificate::nonzero_eigenvalue(d, &pair.h)? {
            eigen_certificates.push(cert);
        }
    }
    let head = match &verdict {
        LndVerdict::NotLnd(c) => format!("NotLND ({c})"),
        LndVerdict::Inconclusive { reason } => format!("Inconclusive ({reason})"),
        LndVerdict::Lnd(_) => unreachable!(),
    };
    let sweep_part = match sweep.max_witness_degree() {
        Some(m) => format!("triangular sweep max degree {m}"),
        None => "triangular sweep found no witness".to_string(),
    };
    let eigen_part = match &cen.kind {
        CensusKind::InfiniteFamily { extactic_order } => {
            format!("infinite family of invariant curves (extactic order {extactic_order})")
        }
        CensusKind::FiniteList { pairs, .. } => format!(
            "eigenvectors {{{}}}",
            pairs.iter().map(|p| format!("{} (lambda = {})", p.h, p.lambda)).collect::<Vec<_>>().join(", ")
        ),
        CensusKind::NoEigenvectorUpTo(m) => format!("no rational eigenvector of degree <= {m} found"),
    };
    let ext = if cen.extension_flag { "; invariant lines exist over an extension" } else { "" };
    Ok(TheoremReport {
        summary: format!("{head}; {sweep_part}; {eigen_part}{ext}"),
        verdict,
        witnesses: Vec::new(),
        sweep: Some(sweep),
        census: Some(cen),
        eigen_certificates,
    })
}

/// A commuting map of large degree for a derivation of `Q[x1, x2, x3]` that
/// is not locally nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim3Report {
    pub derivation: Derivation,
    pub witness: PolyMap,
    pub witness_degree: u32,
    pub commutation: CommutationReport,
    pub nilpotence: Nilpotence,
    pub control: Derivation,
    pub control_nilpotence: Nilpotence,
}

/// `D = x2 d/dx1 + x2 d/dx2` and the map `(x1 + x3^p, x2, x3)`; the control
/// `x2 d/dx1` is locally nilpotent.
pub fn dim3_counterexample(p_degree: u32) -> Result<Dim3Report> {
    if p_degree == 0 {
        return Err(Error::Malformed("p_degree must be at least 1".into()));
    }
    let n = 3;
    let (x1, x2, x3) = (Poly::var(n, 0), Poly::var(n, 1), Poly::var(n, 2));
    let derivation = Derivation::new(vec![x2.clone(), x2.clone(), Poly::zero(n)])?;
    let witness = PolyMap::new(vec![&x1 + &x3.pow(p_degree), x2.clone(), x3])?;
    let commutation = is_in_isotropy(&witness, &derivation)?;
    let nilpotence = lnd_semidecide(&derivation, default_cap(&derivation));
    let control = Derivation::new(vec![x2, Poly::zero(n), Poly::zero(n)])?;
    let control_nilpotence = lnd_semidecide(&control, default_cap(&control));
    Ok(Dim3Report {
        witness_degree: witness.degree(),
        derivation,
        witness,
        commutation,
        nilpotence,
        control,
        control_nilpotence,
    })
}

/// Degree of `P` in a witness, `None` for `P = 0`.
pub fn witness_p_degree(cell: &SweepCell) -> Option<Degree> {
    match &cell.outcome {
        CellOutcome::Witness { p, .. } => Some(p.to_poly(1, 0).total_degree()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::lnd_decide2;

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
    fn map(f: Poly, g: Poly) -> PolyMap {
        PolyMap::plane(f, g).unwrap()
    }

    #[test]
    fn isotropy_examples() {
        let u = &x().pow(2) + &c(1);
        let d = der(c(0), u);
        for p in [c(0), x().pow(5), &x() - &c(7)] {
            assert!(is_in_isotropy(&map(x(), &y() + &p), &d).unwrap().commutes);
        }
        let diag = der(x(), y().scale(&int(2)));
        assert!(is_in_isotropy(&map(x(), &y() + &x().pow(2)), &diag).unwrap().commutes);
        let r = is_in_isotropy(&map(x(), &y() + &x().pow(3)), &diag).unwrap();
        assert!(!r.commutes);
        assert_eq!(r.residuals, vec![c(0), x().pow(3)]);
        assert!(is_in_isotropy(&map(x().pow(2), y()), &diag).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let phi = validate(&map(&x() - &y(), y())).unwrap();
        assert_eq!(conjugate(&phi, &der(c(1), c(1))).unwrap(), der(c(0), c(1)));
        let d = der(&x() * &y(), y().pow(2));
        assert_eq!(conjugate(&PlaneAuto::identity(), &d).unwrap(), d);
        let diag = der(x(), y().scale(&int(2)));
        let inside = validate(&map(x(), &y() + &x().pow(2))).unwrap();
        let outside = validate(&map(x(), &y() + &x().pow(3))).unwrap();
        assert_eq!(conjugate(&inside, &diag).unwrap(), diag);
        assert_ne!(conjugate(&outside, &diag).unwrap(), diag);
    }

    #[test]
    fn conjugate_is_functorial() {
        let phi = validate(&map(&x() + &y().pow(2), y())).unwrap();
        let psi = validate(&map(x(), &y() - &x().pow(3))).unwrap();
        let d = der(&x() * &y(), c(1));
        let lhs = conjugate(&phi.compose(&psi), &d).unwrap();
        let rhs = conjugate(&phi, &conjugate(&psi, &d).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ju_examples() {
        let data = ju_group(&UniPoly::x()).unwrap();
        assert!(data.affine_solutions.is_empty());
        assert_eq!(data.families.len(), 1);
        assert!(data.family_contains(&int(5), &int(0), &int(5)));
        assert!(!data.family_contains(&int(5), &int(1), &int(5)));

        let data = ju_group(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(
            data.affine_solutions,
            vec![(int(-1), int(0), int(1)), (int(1), int(0), int(1))]
        );
        assert!(data.families.is_empty());
        assert!(data.free_part);

        let data = ju_group(&UniPoly::one()).unwrap();
        assert_eq!(data.families, vec![JuFamily { relation: None, gamma_exponent: 0 }]);
        assert!(ju_group(&UniPoly::zero()).is_err());
    }

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn triangular_examples() {
        let prob = TriangularIsotropyProblem::new(1, uni(&[1]), uni(&[]), uni(&[1])).unwrap();
        let sol = triangular_isotropy_solve(&prob, &int(3), &int(-2), 3).unwrap().unwrap();
        assert!(sol.particular.is_zero());
        assert_eq!(sol.basis, vec![UniPoly::x()]);

        let prob2 = TriangularIsotropyProblem::new(1, uni(&[1]), uni(&[]), uni(&[2])).unwrap();
        let sol = triangular_isotropy_solve(&prob2, &int(1), &int(1), 5).unwrap().unwrap();
        assert_eq!(sol.basis, vec![uni(&[0, 0, 1])]);

        let sol = triangular_isotropy_solve(&prob, &int(2), &int(1), 3).unwrap().unwrap();
        let m = sol.map_for(&sol.member(&[int(7)]));
        assert!(is_in_isotropy(&m, &prob.derivation()).unwrap().commutes);

        assert!(TriangularIsotropyProblem::new(0, uni(&[0, 1]), uni(&[]), uni(&[1])).is_err());
    }

    #[test]
    fn predicted_degree_examples() {
        let p = TriangularIsotropyProblem::new(1, uni(&[5]), uni(&[1]), uni(&[3])).unwrap();
        assert_eq!(predicted_degree(&p, &int(7)).unwrap(), rat(3, 5));
        let p = TriangularIsotropyProblem::new(1, uni(&[1]), uni(&[]), uni(&[0, 1])).unwrap();
        assert_eq!(predicted_degree(&p, &int(2)).unwrap(), int(2));
        let p = TriangularIsotropyProblem::new(0, uni(&[2]), uni(&[]), uni(&[3])).unwrap();
        assert_eq!(predicted_degree(&p, &int(1)).unwrap(), rat(3, 2));
        // x^0 * 2 d/dx + 3y d/dy: 3P = 2P' has only P = 0
        let sol = triangular_isotropy_solve(&p, &int(1), &int(1), 4).unwrap().unwrap();
        assert!(sol.particular.is_zero() && sol.basis.is_empty());
        let p = TriangularIsotropyProblem::new(0, uni(&[2]), uni(&[]), uni(&[])).unwrap();
        assert!(predicted_degree(&p, &int(1)).is_err());
    }

    #[test]
    fn witness_family_examples() {
        let d = der(c(0), c(1));
        let v = lnd_decide2(&d).unwrap();
        let fam = witness_unbounded_family(&d, &v, 5).unwrap();
        for (k, w) in fam.iter().enumerate() {
            assert_eq!(w.to_map(), map(x(), &y() + &x().pow(k as u32 + 1)));
        }

        let u = &x().pow(2) + &c(1);
        let d = der(c(0), u.clone());
        let v = lnd_decide2(&d).unwrap();
        let fam = witness_unbounded_family(&d, &v, 4).unwrap();
        assert_eq!(fam[2].to_map(), map(x(), &y() + &(&x().pow(3) * &u)));
        assert_eq!(fam[2].degree().0, 5);

        let d = der(c(1), c(1));
        let v = lnd_decide2(&d).unwrap();
        let fam = witness_unbounded_family(&d, &v, 3).unwrap();
        assert_eq!(fam[0].to_map(), map(&x().scale(&int(2)) - &y(), x()));
        assert_eq!(fam.iter().map(|w| w.degree().0).collect::<Vec<_>>(), vec![1, 2, 3]);

        let not = lnd_decide2(&der(x(), y())).unwrap();
        assert!(witness_unbounded_family(&der(x(), y()), &not, 3).is_err());
    }

    #[test]
    fn sweep_examples() {
        let r = jonquieres_sweep(&der(c(0), x()), 6).unwrap();
        assert!(r.cells.iter().all(|c| matches!(c.outcome, CellOutcome::Witness { .. })));

        let r = jonquieres_sweep(&der(x(), y().scale(&int(2))), 10).unwrap();
        assert_eq!(r.max_witness_degree(), Some(2));
        assert!((3..=10).all(|d| r.cell(d).unwrap().outcome == CellOutcome::NoneFound));

        let r = jonquieres_sweep(&der(x(), y()), 10).unwrap();
        assert_eq!(r.max_witness_degree(), Some(1));

        let r = jonquieres_sweep(&der(y(), -&x()), 5).unwrap();
        assert_eq!(r.search_class, SearchClass::ForcedP { degree_bound: 1 });
        assert_eq!(r.max_witness_degree(), Some(1));
        assert!((2..=5).all(|d| r.cell(d).unwrap().outcome == CellOutcome::NoneFound));
    }

    #[test]
    fn theorem_check_examples() {
        let u = &x().pow(2) + &c(1);
        let rep = theorem_check(&der(c(0), u), 8).unwrap();
        assert!(rep.verdict.is_lnd());
        assert!(rep.max_witness_degree().unwrap() >= 8);

        let rep = theorem_check(&der(x(), y().scale(&int(2))), 10).unwrap();
        assert!(matches!(rep.verdict, LndVerdict::NotLnd(NotLndCertificate::NonzeroDivergence { .. })));
        assert_eq!(rep.sweep.as_ref().unwrap().max_witness_degree(), Some(2));
        assert_eq!(rep.eigen_certificates.len(), 2);

        let rep = theorem_check(&der(y(), -&x()), 4).unwrap();
        assert_eq!(rep.sweep.as_ref().unwrap().max_witness_degree(), Some(1));
        assert!(rep.census.as_ref().unwrap().extension_flag);
    }

    #[test]
    fn dim3_examples() {
        let rep = dim3_counterexample(100).unwrap();
        assert_eq!(rep.witness_degree, 100);
        assert!(rep.commutation.commutes);
        assert!(rep.commutation.caveat.is_some());
        assert!(matches!(rep.nilpotence, Nilpotence::NotNilpotentWithin { cap: 9, .. }));
        assert_eq!(rep.control_nilpotence, Nilpotence::NilpotentWithin(2));
        assert_eq!(dim3_counterexample(1).unwrap().witness_degree, 1);
    }
}
