//! Polynomial maps and automorphisms of the plane.
//!
//! A map `(f, g)` acts on polynomials by substitution, `p -> p(f, g)`.
//! `compose(phi, psi)` has components `phi_i(psi_1, psi_2)`, i.e. it is the
//! point map "psi first, then phi". Every other module uses this convention.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{PolyMatrix, QMatrix};
use crate::poly::{Degree, Monomial, Poly, Rational};
use crate::uni::UniPoly;

/// A polynomial endomorphism of `Q[x_1..x_n]` given by the images of the
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap {
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::ArityMismatch { expected: 1, got: 0 });
        }
        for c in &components {
            if c.nvars() != n {
                return Err(Error::NvarsMismatch { left: n, right: c.nvars() });
            }
        }
        Ok(PolyMap { components })
    }

    pub fn identity(nvars: usize) -> Self {
        PolyMap { components: (0..nvars).map(|i| Poly::var(nvars, i)).collect() }
    }

    pub fn plane(f: Poly, g: Poly) -> Result<Self> {
        Self::new(vec![f, g])
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `p(components)`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        p.substitute(&self.components)
    }

    /// The map with components `self_i(other)`.
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap> {
        if self.nvars() != other.nvars() {
            return Err(Error::NvarsMismatch { left: self.nvars(), right: other.nvars() });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&other.components))
            .collect::<Result<_>>()?;
        Ok(PolyMap { components })
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::degree_or_zero).max().unwrap_or(0)
    }

    pub fn jacobian_matrix(&self) -> Result<PolyMatrix> {
        let n = self.nvars();
        let rows = self
            .components
            .iter()
            .map(|c| (0..n).map(|j| c.partial(j)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(rows)
    }

    pub fn jacobian_det(&self) -> Result<Poly> {
        if self.nvars() == 2 {
            return Ok(jacobian2(&self.components[0], &self.components[1]));
        }
        self.jacobian_matrix()?.det_bareiss()
    }
}

/// `f_x g_y - f_y g_x`.
pub fn jacobian2(f: &Poly, g: &Poly) -> Poly {
    let fx = f.partial(0).expect("two variables");
    let fy = f.partial(1).expect("two variables");
    let gx = g.partial(0).expect("two variables");
    let gy = g.partial(1).expect("two variables");
    &(&fx * &gy) - &(&fy * &gx)
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(Poly::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Which variable an elementary factor shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `(x + q(y), y)`
    X,
    /// `(x, y + q(x))`
    Y,
}

/// One factor of a tame decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TameFactor {
    /// `(m00 x + m01 y + t0, m10 x + m11 y + t1)`
    Affine { matrix: [[Rational; 2]; 2], translation: [Rational; 2] },
    Elementary { axis: Axis, shift: UniPoly },
}

impl TameFactor {
    pub fn to_map(&self) -> PolyMap {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        match self {
            TameFactor::Affine { matrix, translation } => {
                let row = |i: usize| {
                    &(&x.scale(&matrix[i][0]) + &y.scale(&matrix[i][1])) + &Poly::constant(2, translation[i].clone())
                };
                PolyMap { components: vec![row(0), row(1)] }
            }
            TameFactor::Elementary { axis: Axis::X, shift } => {
                PolyMap { components: vec![&x + &shift.to_poly(2, 1), y] }
            }
            TameFactor::Elementary { axis: Axis::Y, shift } => {
                PolyMap { components: vec![x.clone(), &y + &shift.to_poly(2, 0)] }
            }
        }
    }

    pub fn jacobian(&self) -> Rational {
        match self {
            TameFactor::Affine { matrix, .. } => &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0],
            TameFactor::Elementary { .. } => Rational::one(),
        }
    }

    pub fn inverse(&self) -> Result<TameFactor> {
        match self {
            TameFactor::Affine { matrix, translation } => {
                let det = self.jacobian();
                if det.is_zero() {
                    return Err(Error::NotAnAutomorphism(Obstruction::SingularAffine));
                }
                let inv = [
                    [&matrix[1][1] / &det, -&matrix[0][1] / &det],
                    [-&matrix[1][0] / &det, &matrix[0][0] / &det],
                ];
                let t = [
                    -(&inv[0][0] * &translation[0] + &inv[0][1] * &translation[1]),
                    -(&inv[1][0] * &translation[0] + &inv[1][1] * &translation[1]),
                ];
                Ok(TameFactor::Affine { matrix: inv, translation: t })
            }
            TameFactor::Elementary { axis, shift } => Ok(TameFactor::Elementary { axis: *axis, shift: -shift }),
        }
    }

    fn is_identity(&self) -> bool {
        match self {
            TameFactor::Affine { matrix, translation } => {
                matrix[0][0].is_one()
                    && matrix[1][1].is_one()
                    && matrix[0][1].is_zero()
                    && matrix[1][0].is_zero()
                    && translation.iter().all(Zero::is_zero)
            }
            TameFactor::Elementary { shift, .. } => shift.is_zero(),
        }
    }
}

impl fmt::Display for TameFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TameFactor::Affine { .. } => write!(f, "affine {}", self.to_map()),
            TameFactor::Elementary { .. } => write!(f, "elementary {}", self.to_map()),
        }
    }
}

/// `map = factors[0] o factors[1] o ... o factors[k-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TameDecomposition {
    pub factors: Vec<TameFactor>,
}

impl TameDecomposition {
    pub fn recompose(&self) -> PolyMap {
        let mut acc = PolyMap::identity(2);
        for factor in self.factors.iter().rev() {
            acc = factor.to_map().compose(&acc).expect("plane maps");
        }
        acc
    }

    pub fn inverse(&self) -> Result<TameDecomposition> {
        let factors = self.factors.iter().rev().map(TameFactor::inverse).collect::<Result<_>>()?;
        Ok(TameDecomposition { factors })
    }

    pub fn jacobian(&self) -> Rational {
        self.factors.iter().map(TameFactor::jacobian).product()
    }
}

/// Why a plane map failed to validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    WrongArity(usize),
    NonConstantJacobian(Poly),
    ZeroJacobian,
    SingularAffine,
    /// No elementary reduction applies to the current pair of components.
    ReductionStuck { f: Poly, g: Poly },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::WrongArity(n) => write!(f, "expected a map of the plane, got {n} variables"),
            Obstruction::NonConstantJacobian(j) => write!(f, "jacobian determinant {j} is not constant"),
            Obstruction::ZeroJacobian => write!(f, "jacobian determinant is zero"),
            Obstruction::SingularAffine => write!(f, "singular affine factor"),
            Obstruction::ReductionStuck { f: a, g: b } => write!(f, "tame reduction stuck at ({a}, {b})"),
        }
    }
}

/// Peel elementary factors off the left of `m` until an affine map remains.
pub fn tame_decompose(m: &PolyMap) -> Result<TameDecomposition> {
    if m.nvars() != 2 {
        return Err(Error::NotAnAutomorphism(Obstruction::WrongArity(m.nvars())));
    }
    let jac = m.jacobian_det()?;
    match jac.constant_value() {
        None => return Err(Error::NotAnAutomorphism(Obstruction::NonConstantJacobian(jac))),
        Some(c) if c.is_zero() => return Err(Error::NotAnAutomorphism(Obstruction::ZeroJacobian)),
        Some(_) => {}
    }
    let (mut f, mut g) = (m.components[0].clone(), m.components[1].clone());
    let mut factors = Vec::new();
    loop {
        let stuck = |f: &Poly, g: &Poly| Error::NotAnAutomorphism(Obstruction::ReductionStuck { f: f.clone(), g: g.clone() });
        let (df, dg) = match (f.total_degree(), g.total_degree()) {
            (Degree::Finite(a), Degree::Finite(b)) if a > 0 && b > 0 => (a, b),
            _ => return Err(stuck(&f, &g)),
        };
        if df == 1 && dg == 1 {
            let lin = |p: &Poly| {
                [
                    p.coeff(&Monomial::new(vec![1, 0])),
                    p.coeff(&Monomial::new(vec![0, 1])),
                    p.coeff(&Monomial::one(2)),
                ]
            };
            let [a, b, t0] = lin(&f);
            let [c, d, t1] = lin(&g);
            factors.push(TameFactor::Affine { matrix: [[a, b], [c, d]], translation: [t0, t1] });
            break;
        }
        if df == dg {
            let ratio = f.leading_coeff() / g.leading_coeff();
            if f.leading_form()? != g.leading_form()?.scale(&ratio) {
                return Err(stuck(&f, &g));
            }
            f = &f - &g.scale(&ratio);
            factors.push(TameFactor::Affine {
                matrix: [[Rational::one(), ratio], [Rational::zero(), Rational::one()]],
                translation: [Rational::zero(), Rational::zero()],
            });
            continue;
        }
        let (hi, lo, axis) = if df > dg { (&f, &g, Axis::X) } else { (&g, &f, Axis::Y) };
        let (dh, dl) = (df.max(dg), df.min(dg));
        if dh % dl != 0 {
            return Err(stuck(&f, &g));
        }
        let k = dh / dl;
        let c = hi.leading_coeff() / lo.leading_coeff().pow(k as i32);
        if hi.leading_form()? != lo.leading_form()?.pow(k).scale(&c) {
            return Err(stuck(&f, &g));
        }
        let reduced = hi - &lo.pow(k).scale(&c);
        let shift = UniPoly::monomial(k as usize, c);
        match axis {
            Axis::X => f = reduced,
            Axis::Y => g = reduced,
        }
        push_elementary(&mut factors, axis, shift);
    }
    factors.retain(|f| !f.is_identity());
    Ok(TameDecomposition { factors })
}

fn push_elementary(factors: &mut Vec<TameFactor>, axis: Axis, shift: UniPoly) {
    if let Some(TameFactor::Elementary { axis: last_axis, shift: last }) = factors.last_mut() {
        if *last_axis == axis {
            *last = &*last + &shift;
            return;
        }
    }
    factors.push(TameFactor::Elementary { axis, shift });
}

/// A validated automorphism of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneAuto {
    f: Poly,
    g: Poly,
    jacobian: Rational,
    factorization: TameDecomposition,
}

/// Degree of an automorphism: the larger component degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeValue(pub u32);

impl PlaneAuto {
    pub fn identity() -> Self {
        PlaneAuto {
            f: Poly::var(2, 0),
            g: Poly::var(2, 1),
            jacobian: Rational::one(),
            factorization: TameDecomposition::default(),
        }
    }

    pub fn from_decomposition(factorization: TameDecomposition) -> Self {
        let map = factorization.recompose();
        let jacobian = factorization.jacobian();
        let [f, g]: [Poly; 2] = map.components.try_into().expect("plane map");
        PlaneAuto { f, g, jacobian, factorization }
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn jacobian(&self) -> &Rational {
        &self.jacobian
    }

    pub fn factorization(&self) -> &TameDecomposition {
        &self.factorization
    }

    pub fn to_map(&self) -> PolyMap {
        PolyMap { components: vec![self.f.clone(), self.g.clone()] }
    }

    pub fn degree(&self) -> DegreeValue {
        DegreeValue(self.f.degree_or_zero().max(self.g.degree_or_zero()))
    }

    /// `p(f, g)`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        p.substitute(&[self.f.clone(), self.g.clone()])
    }

    pub fn compose(&self, other: &PlaneAuto) -> PlaneAuto {
        let map = self.to_map().compose(&other.to_map()).expect("plane maps");
        let mut factors = self.factorization.factors.clone();
        factors.extend(other.factorization.factors.iter().cloned());
        let [f, g]: [Poly; 2] = map.components.try_into().expect("plane map");
        PlaneAuto {
            f,
            g,
            jacobian: &self.jacobian * &other.jacobian,
            factorization: TameDecomposition { factors },
        }
    }

    pub fn invert(&self) -> PlaneAuto {
        let inv = self.factorization.inverse().expect("validated factors are invertible");
        PlaneAuto::from_decomposition(inv)
    }
}

impl fmt::Display for PlaneAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// Validate a plane map as an automorphism; succeeds iff tame peeling does.
pub fn validate(m: &PolyMap) -> Result<PlaneAuto> {
    let factorization = tame_decompose(m)?;
    let jacobian = factorization.jacobian();
    let recomposed = factorization.recompose();
    if &recomposed != m {
        return Err(Error::Internal(format!("decomposition recomposes to {recomposed}, not {m}")));
    }
    let [f, g]: [Poly; 2] = m.components.clone().try_into().expect("plane map");
    Ok(PlaneAuto { f, g, jacobian, factorization })
}

/// Evidence that a polynomial is a coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateWitness {
    /// `(f, partner)` is an automorphism.
    pub partner: Poly,
    pub automorphism: PlaneAuto,
    /// Factors of the inverse automorphism; substituting them into `f`
    /// gives `x`.
    pub reduction: TameDecomposition,
}

impl CoordinateWitness {
    /// Apply the reduction steps to `p`.
    pub fn reduce(&self, p: &Poly) -> Result<Poly> {
        self.reduction.recompose().apply(p)
    }
}

/// Certificates that a polynomial is not a coordinate, valid over the
/// algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCoordinate {
    /// The leading form has at least two distinct linear factors, so it is
    /// not a power of a linear form.
    LeadingFormNotLinearPower { leading_form: Poly, squarefree_part: Poly },
    /// No `g` of degree at most `degree_bound` has `jacobian(f, g) = 1`;
    /// a coordinate of degree `n >= 2` always has a partner of degree `< n`.
    NoJacobianPartner { degree_bound: u32 },
}

impl fmt::Display for NotCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotCoordinate::LeadingFormNotLinearPower { leading_form, squarefree_part } => write!(
                f,
                "leading form {leading_form} has squarefree part {squarefree_part} of degree {}",
                squarefree_part.degree_or_zero()
            ),
            NotCoordinate::NoJacobianPartner { degree_bound } => {
                write!(f, "no g of degree <= {degree_bound} with jacobian(f, g) = 1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordinateVerdict {
    Yes(CoordinateWitness),
    No(NotCoordinate),
    /// A jacobian partner exists but tame peeling of `(f, partner)` failed.
    Unresolved { partner: Poly },
}

/// Squarefree part of a binary form: `L / gcd(L_x, L_y)`.
pub fn binary_form_squarefree_part(form: &Poly) -> Result<Poly> {
    let fx = form.partial(0)?;
    let fy = form.partial(1)?;
    let g = if fx.is_zero() && fy.is_zero() { Poly::one(2) } else { fx.gcd2(&fy)? };
    form.exact_divide(&g)?
        .map(|p| p.monic())
        .ok_or_else(|| Error::Internal("partials gcd does not divide the form".into()))
}

/// Decide whether `f` is a coordinate of `Q[x, y]`.
///
/// The leading form must be a power of a linear form; then a partner `g`
/// with `jacobian(f, g) = 1` and `deg g < deg f` (or `deg g <= 1` for linear
/// `f`) is sought by solving a linear system, and `(f, g)` is validated by
/// tame peeling.
pub fn is_coordinate(f: &Poly) -> Result<CoordinateVerdict> {
    if f.nvars() != 2 {
        return Err(Error::WrongNvars { expected: 2, got: f.nvars() });
    }
    let n = match f.total_degree() {
        Degree::Finite(d) if d > 0 => d,
        _ => return Err(Error::ConstantPolynomial("is_coordinate")),
    };
    let lead = f.leading_form()?;
    let sqf = binary_form_squarefree_part(&lead)?;
    if sqf.degree_or_zero() >= 2 {
        return Ok(CoordinateVerdict::No(NotCoordinate::LeadingFormNotLinearPower {
            leading_form: lead,
            squarefree_part: sqf,
        }));
    }
    let bound = n.saturating_sub(1).max(1);
    let Some(partner) = jacobian_partner(f, bound)? else {
        return Ok(CoordinateVerdict::No(NotCoordinate::NoJacobianPartner { degree_bound: bound }));
    };
    let map = PolyMap::plane(f.clone(), partner.clone())?;
    match validate(&map) {
        Ok(automorphism) => {
            let reduction = automorphism.factorization().inverse()?;
            Ok(CoordinateVerdict::Yes(CoordinateWitness { partner, automorphism, reduction }))
        }
        Err(Error::NotAnAutomorphism(_)) => Ok(CoordinateVerdict::Unresolved { partner }),
        Err(e) => Err(e),
    }
}

/// Monomials of degree `<= d` in two variables, ascending graded-lex.
pub fn monomials_up_to(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for total in 0..=d {
        for i in 0..=total {
            out.push(Monomial::new(vec![i, total - i]));
        }
    }
    out
}

/// Lowest-degree solution `g` (no constant term) of `jacobian(f, g) = 1`.
fn jacobian_partner(f: &Poly, bound: u32) -> Result<Option<Poly>> {
    let unknowns: Vec<Monomial> = monomials_up_to(bound).into_iter().filter(|m| !m.is_one()).collect();
    let images: Vec<Poly> = unknowns
        .iter()
        .map(|m| jacobian2(f, &Poly::term(2, m.clone(), Rational::one())))
        .collect();
    let mut rows: Vec<Monomial> = images.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    rows.push(Monomial::one(2));
    rows.sort();
    rows.dedup();
    let mut a = QMatrix::zeros(rows.len(), unknowns.len());
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            let i = rows.binary_search(m).expect("row collected");
            a.set(i, j, c.clone());
        }
    }
    let rhs: Vec<Rational> = rows.iter().map(|m| if m.is_one() { Rational::one() } else { Rational::zero() }).collect();
    Ok(a.solve_affine(&rhs)?.map(|sol| {
        Poly::from_terms(
            2,
            unknowns.iter().zip(sol.particular).map(|(m, c)| (m.exps().to_vec(), c)),
        )
    }))
}

/// `g` completing a recognized coordinate `f` to an automorphism `(f, g)`.
pub fn complete_coordinate(f: &Poly, witness: &CoordinateWitness) -> Result<Poly> {
    let auto = validate(&PolyMap::plane(f.clone(), witness.partner.clone())?)?;
    let reduced = witness.reduce(f)?;
    if reduced != Poly::var(2, 0) {
        return Err(Error::Malformed(format!("reduction steps send f to {reduced}, not x")));
    }
    debug_assert_eq!(auto.g(), &witness.partner);
    Ok(witness.partner.clone())
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
    fn map(f: Poly, g: Poly) -> PolyMap {
        PolyMap::plane(f, g).unwrap()
    }

    #[test]
    fn validate_examples() {
        let a = validate(&map(&x() + &y().pow(2), y())).unwrap();
        assert_eq!(a.factorization().factors.len(), 1);
        assert!(matches!(
            validate(&map(x().pow(2), y())),
            Err(Error::NotAnAutomorphism(Obstruction::NonConstantJacobian(_)))
        ));
        let inner = &x() + &y().pow(2);
        let m = map(&y() + &inner.pow(3), inner.clone());
        let a = validate(&m).unwrap();
        assert_eq!(a.factorization().recompose(), m);
        assert_eq!(a.factorization().factors.len(), 3);
    }

    #[test]
    fn decompose_examples() {
        let d = tame_decompose(&map(x(), &y() + &x().pow(3))).unwrap();
        assert_eq!(d.factors, vec![TameFactor::Elementary { axis: Axis::Y, shift: UniPoly::from_ints(&[0, 0, 0, 1]) }]);
        let aff = map(&x().scale(&int(2)) + &Poly::one(2), y().scale(&int(3)));
        let d = tame_decompose(&aff).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert!(matches!(d.factors[0], TameFactor::Affine { .. }));
        assert!(tame_decompose(&PolyMap::identity(3)).is_err());
    }

    #[test]
    fn compose_examples() {
        let phi = validate(&map(x(), &y() + &x().pow(2))).unwrap();
        let psi = validate(&map(&x() + &Poly::one(2), y())).unwrap();
        let c = phi.compose(&psi);
        let x1 = &x() + &Poly::one(2);
        assert_eq!(c.to_map(), map(x1.clone(), &y() + &x1.pow(2)));
        assert_eq!(phi.compose(&PlaneAuto::identity()), phi);
        let psi2 = validate(&map(&x() + &y().pow(2), y())).unwrap();
        assert_eq!(phi.compose(&psi2).degree(), DegreeValue(4));
        assert!(phi.compose(&psi2).degree().0 <= phi.degree().0 * psi2.degree().0);
    }

    #[test]
    fn invert_examples() {
        let phi = validate(&map(x(), &y() + &x().pow(2))).unwrap();
        assert_eq!(phi.invert().to_map(), map(x(), &y() - &x().pow(2)));
        let aff = validate(&map(&x().scale(&int(2)) + &Poly::one(2), y().scale(&int(3)))).unwrap();
        let half = crate::poly::rat(1, 2);
        let third = crate::poly::rat(1, 3);
        assert_eq!(
            aff.invert().to_map(),
            map(&x().scale(&half) - &Poly::constant(2, half.clone()), y().scale(&third))
        );
        let inner = &x() + &y().pow(2);
        let big = validate(&map(&y() + &inner.pow(3), inner)).unwrap();
        assert_eq!(big.compose(&big.invert()).to_map(), PolyMap::identity(2));
        assert_eq!(big.invert().compose(&big).to_map(), PolyMap::identity(2));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(PlaneAuto::identity().degree(), DegreeValue(1));
        assert_eq!(validate(&map(x(), &y() + &x().pow(7))).unwrap().degree(), DegreeValue(7));
    }

    #[test]
    fn coordinate_examples() {
        let f = &x() - &y();
        let CoordinateVerdict::Yes(w) = is_coordinate(&f).unwrap() else { panic!("x - y is a coordinate") };
        assert_eq!(complete_coordinate(&f, &w).unwrap(), y());
        assert_eq!(w.reduce(&f).unwrap(), x());

        let f = &x() + &y().pow(3);
        let CoordinateVerdict::Yes(w) = is_coordinate(&f).unwrap() else { panic!("x + y^3 is a coordinate") };
        assert_eq!(complete_coordinate(&f, &w).unwrap(), y());

        let f = &x().pow(2) + &y().pow(2);
        assert!(matches!(
            is_coordinate(&f).unwrap(),
            CoordinateVerdict::No(NotCoordinate::LeadingFormNotLinearPower { .. })
        ));
        assert!(matches!(
            is_coordinate(&x().pow(2)).unwrap(),
            CoordinateVerdict::No(NotCoordinate::NoJacobianPartner { .. })
        ));
        assert!(is_coordinate(&Poly::one(2)).is_err());
    }

    #[test]
    fn nested_coordinate_is_recognized() {
        let inner = &x() + &y().pow(2);
        let f = &y() + &inner.pow(3);
        let CoordinateVerdict::Yes(w) = is_coordinate(&f).unwrap() else { panic!("coordinate") };
        let g = complete_coordinate(&f, &w).unwrap();
        assert!(validate(&map(f.clone(), g)).is_ok());
        assert_eq!(w.reduce(&f).unwrap(), x());
    }

    #[test]
    fn jacobian_three_variables() {
        let n = 3;
        let m = PolyMap::new(vec![
            &Poly::var(n, 0) + &Poly::var(n, 2).pow(5),
            Poly::var(n, 1),
            Poly::var(n, 2),
        ])
        .unwrap();
        assert_eq!(m.jacobian_det().unwrap(), Poly::one(3));
    }
}
