//! Derivations of `Q[x_1..x_n]` and the two-variable local nilpotence
//! decision.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::automorphism::{is_coordinate, validate, CoordinateVerdict, NotCoordinate, PlaneAuto, PolyMap};
use crate::eigen::{darboux_verify, DarbouxPair};
use crate::error::{Error, Result};
use crate::isotropy::conjugate;
use crate::poly::{Degree, Poly, Rational};
use crate::uni::UniPoly;

/// `D = sum_i components[i] * d/dx_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    components: Vec<Poly>,
}

impl Derivation {
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
        Ok(Derivation { components })
    }

    /// `a * d/dx + b * d/dy`.
    pub fn plane(a: Poly, b: Poly) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Largest total degree among the components (0 for the zero derivation).
    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::degree_or_zero).max().unwrap_or(0)
    }

    /// `f * D`.
    pub fn scaled_by(&self, f: &Poly) -> Result<Derivation> {
        let components = self.components.iter().map(|c| c.try_mul(f)).collect::<Result<_>>()?;
        Ok(Derivation { components })
    }

    pub fn negated(&self) -> Derivation {
        Derivation { components: self.components.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(Poly::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn apply(d: &Derivation, p: &Poly) -> Result<Poly> {
    if p.nvars() != d.nvars() {
        return Err(Error::NvarsMismatch { left: d.nvars(), right: p.nvars() });
    }
    let mut acc = Poly::zero(p.nvars());
    for (i, c) in d.components.iter().enumerate() {
        if c.is_zero() || !p.involves(i) {
            continue;
        }
        acc = &acc + &(c * &p.partial(i)?);
    }
    Ok(acc)
}

pub fn iterate(d: &Derivation, p: &Poly, k: u32) -> Result<Poly> {
    let mut acc = p.clone();
    for _ in 0..k {
        if acc.is_zero() {
            break;
        }
        acc = apply(d, &acc)?;
    }
    Ok(acc)
}

pub fn divergence(d: &Derivation) -> Poly {
    let mut acc = Poly::zero(d.nvars());
    for (i, c) in d.components.iter().enumerate() {
        acc = &acc + &c.partial(i).expect("index in range");
    }
    acc
}

/// Outcome of iterating a derivation on the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotence {
    /// `D^k` kills every variable and `k` is minimal.
    NilpotentWithin(u32),
    /// Some variable survives `cap` applications; `trajectory[i][j]` is the
    /// degree of `D^j(x_i)` for `j = 0..=cap`.
    NotNilpotentWithin { cap: u32, trajectory: Vec<Vec<Degree>> },
}

/// `(d + 2)^2` with `d` the largest component degree.
pub fn default_cap(d: &Derivation) -> u32 {
    let deg = d.degree();
    (deg + 2) * (deg + 2)
}

pub fn lnd_semidecide(d: &Derivation, cap: u32) -> Nilpotence {
    let n = d.nvars();
    let mut trajectory = vec![Vec::new(); n];
    let mut k_needed = 0;
    let mut failed = false;
    for (i, traj) in trajectory.iter_mut().enumerate() {
        let mut p = Poly::var(n, i);
        traj.push(p.total_degree());
        let mut k = 0;
        while !p.is_zero() && k < cap {
            p = apply(d, &p).expect("matching nvars");
            k += 1;
            traj.push(p.total_degree());
        }
        if p.is_zero() {
            k_needed = k_needed.max(k);
        } else {
            failed = true;
        }
    }
    if failed {
        Nilpotence::NotNilpotentWithin { cap, trajectory }
    } else {
        Nilpotence::NilpotentWithin(k_needed.max(1))
    }
}

/// Why `D` is certainly not locally nilpotent. Each variant carries enough
/// data to be re-checked by [`NotLndCertificate::recheck`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotLndCertificate {
    /// `D = c * (a0, b0)` with `gcd(a0, b0) = 1` and `div(a0, b0) != 0`.
    NonzeroDivergence { cofactor: Poly, reduced: [Poly; 2], divergence: Poly },
    /// The cofactor `c` is not a polynomial in the kernel generator `f`.
    CofactorNotInKernelAlgebra { cofactor: Poly, kernel_generator: Poly },
    /// The only candidate kernel generator is not a coordinate.
    KernelGeneratorNotCoordinate { kernel_generator: Poly, reason: NotCoordinate },
    /// `D(h) = lambda * h` with `lambda != 0`.
    NonzeroEigenvalueWitness(DarbouxPair),
}

impl NotLndCertificate {
    pub fn nonzero_eigenvalue(d: &Derivation, h: &Poly) -> Result<Option<NotLndCertificate>> {
        Ok(match darboux_verify(d, h)? {
            Some(lambda) if !lambda.is_zero() => {
                Some(NotLndCertificate::NonzeroEigenvalueWitness(DarbouxPair { h: h.clone(), lambda }))
            }
            _ => None,
        })
    }

    /// Recompute the certificate against `d` from scratch.
    pub fn recheck(&self, d: &Derivation) -> Result<bool> {
        match self {
            NotLndCertificate::NonzeroDivergence { cofactor, reduced, divergence } => {
                let Some(c) = d.component(0).gcd2(d.component(1)).ok() else { return Ok(false) };
                let scaled_ok = (0..2).all(|i| &reduced[i] * cofactor == *d.component(i));
                let coprime = reduced[0].is_zero()
                    || reduced[1].is_zero()
                    || reduced[0].gcd2(&reduced[1])?.is_constant();
                let div = &reduced[0].partial(0)? + &reduced[1].partial(1)?;
                Ok(scaled_ok && coprime && c.monic() == cofactor.monic() && div == *divergence && !div.is_zero())
            }
            NotLndCertificate::CofactorNotInKernelAlgebra { cofactor, kernel_generator } => {
                Ok(apply(d, kernel_generator)?.is_zero()
                    && !kernel_generator.is_constant()
                    && cofactor.univariate_membership(kernel_generator)?.is_none())
            }
            NotLndCertificate::KernelGeneratorNotCoordinate { kernel_generator, .. } => {
                Ok(apply(d, kernel_generator)?.is_zero()
                    && matches!(is_coordinate(kernel_generator)?, CoordinateVerdict::No(_)))
            }
            NotLndCertificate::NonzeroEigenvalueWitness(pair) => {
                Ok(!pair.lambda.is_zero() && darboux_verify(d, &pair.h)?.as_ref() == Some(&pair.lambda))
            }
        }
    }
}

impl fmt::Display for NotLndCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotLndCertificate::NonzeroDivergence { cofactor, divergence, .. } => {
                write!(f, "nonzero divergence {divergence} after removing the common factor {cofactor}")
            }
            NotLndCertificate::CofactorNotInKernelAlgebra { cofactor, kernel_generator } => {
                write!(f, "common factor {cofactor} is not a polynomial in {kernel_generator}")
            }
            NotLndCertificate::KernelGeneratorNotCoordinate { kernel_generator, reason } => {
                write!(f, "kernel generator {kernel_generator} is not a coordinate: {reason}")
            }
            NotLndCertificate::NonzeroEigenvalueWitness(pair) => {
                write!(f, "eigenvector {} with nonzero eigenvalue {}", pair.h, pair.lambda)
            }
        }
    }
}

/// Data returned for a locally nilpotent derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndCertificate {
    /// `ker D = Q[f]`.
    pub kernel_generator: Poly,
    /// `D = c(f) * (-f_y, f_x)`; coefficients of `c`, constant term first.
    pub cofactor_coeffs: Vec<Rational>,
    /// `conjugate(rectifier, D) = (0, normal_u(x))`.
    pub rectifier: PlaneAuto,
    pub normal_u: UniPoly,
    /// Minimal `k` with `D^k(x) = D^k(y) = 0`.
    pub nilpotence_index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LndVerdict {
    Lnd(LndCertificate),
    NotLnd(NotLndCertificate),
    Inconclusive { reason: String },
}

impl LndVerdict {
    pub fn is_lnd(&self) -> bool {
        matches!(self, LndVerdict::Lnd(_))
    }
}

/// Exact local nilpotence decision in two variables.
pub fn lnd_decide2(d: &Derivation) -> Result<LndVerdict> {
    if d.nvars() != 2 {
        return Err(Error::WrongNvars { expected: 2, got: d.nvars() });
    }
    if d.is_zero() {
        return Err(Error::ZeroDerivation);
    }
    let (a, b) = (d.component(0), d.component(1));
    let c = a.gcd2(b)?;
    let divide = |p: &Poly| p.exact_divide(&c)?.ok_or_else(|| Error::Internal("gcd does not divide".into()));
    let (a0, b0) = (divide(a)?, divide(b)?);
    let div = &a0.partial(0)? + &b0.partial(1)?;
    if !div.is_zero() {
        return Ok(LndVerdict::NotLnd(NotLndCertificate::NonzeroDivergence {
            cofactor: c,
            reduced: [a0, b0],
            divergence: div,
        }));
    }

    // f_x = b0, f_y = -a0, no constant term
    let fx_part = b0.integrate(0)?;
    let rest = &(-&a0) - &fx_part.partial(1)?;
    let f = &fx_part + &rest.integrate(1)?;
    let reduced = Derivation::plane(a0, b0)?;
    if !apply(&reduced, &f)?.is_zero() {
        return Err(Error::Internal(format!("integrated first integral {f} is not killed")));
    }

    let Some(cofactor_coeffs) = c.univariate_membership(&f)? else {
        return Ok(LndVerdict::NotLnd(NotLndCertificate::CofactorNotInKernelAlgebra {
            cofactor: c,
            kernel_generator: f,
        }));
    };

    let witness = match is_coordinate(&f)? {
        CoordinateVerdict::Yes(w) => w,
        CoordinateVerdict::No(reason) => {
            return Ok(LndVerdict::NotLnd(NotLndCertificate::KernelGeneratorNotCoordinate {
                kernel_generator: f,
                reason,
            }))
        }
        CoordinateVerdict::Unresolved { partner } => {
            return Ok(LndVerdict::Inconclusive {
                reason: format!("({f}, {partner}) has jacobian 1 but tame reduction failed"),
            })
        }
    };
    let rectifier = witness.automorphism;
    let conj = conjugate(&rectifier, d)?;
    if !conj.component(0).is_zero() {
        return Err(Error::Internal(format!("rectified derivation {conj} has nonzero x component")));
    }
    let normal_u = UniPoly::from_poly(conj.component(1), 0)
        .map_err(|_| Error::Internal(format!("rectified derivation {conj} is not of the form u(x) d/dy")))?;

    let inverse = rectifier.invert();
    let cap = [inverse.f(), inverse.g()].iter().filter_map(|p| p.degree_in(1)).max().unwrap_or(0) + 1;
    let nilpotence_index = match lnd_semidecide(d, cap) {
        Nilpotence::NilpotentWithin(k) => k,
        Nilpotence::NotNilpotentWithin { .. } => {
            return Err(Error::Internal(format!("rectified derivation is not nilpotent within {cap}")))
        }
    };
    Ok(LndVerdict::Lnd(LndCertificate {
        kernel_generator: f,
        cofactor_coeffs,
        rectifier,
        normal_u,
        nilpotence_index,
    }))
}

fn factorial(j: u32) -> BigInt {
    (1..=j).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `exp(delta)`: component `i` is `sum_{j<k} delta^j(x_i) / j!`.
pub fn exp_auto(delta: &Derivation, proof: &Nilpotence) -> Result<PolyMap> {
    let k = match proof {
        Nilpotence::NilpotentWithin(k) => *k,
        Nilpotence::NotNilpotentWithin { cap, .. } => {
            return Err(Error::NotNilpotent(format!("not nilpotent within {cap}")))
        }
    };
    let n = delta.nvars();
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut term = Poly::var(n, i);
        let mut sum = Poly::zero(n);
        for j in 0..k {
            sum = &sum + &term.scale(&Rational::new(BigInt::one(), factorial(j)));
            term = apply(delta, &term)?;
        }
        if !term.is_zero() {
            return Err(Error::NotNilpotent(format!("delta^{k}(x_{}) = {term} is not zero", i + 1)));
        }
        components.push(sum);
    }
    PolyMap::new(components)
}

/// [`exp_auto`] for two variables, validated as an automorphism.
pub fn exp_auto_plane(delta: &Derivation, proof: &Nilpotence) -> Result<PlaneAuto> {
    validate(&exp_auto(delta, proof)?)
}

/// Certify nilpotence within the default cap and exponentiate.
pub fn exp_of_lnd(delta: &Derivation) -> Result<PolyMap> {
    exp_auto(delta, &lnd_semidecide(delta, default_cap(delta)))
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
    fn der(a: Poly, b: Poly) -> Derivation {
        Derivation::plane(a, b).unwrap()
    }
    fn c(v: i64) -> Poly {
        Poly::constant(2, int(v))
    }

    #[test]
    fn apply_examples() {
        let u = &x().pow(2) + &c(1);
        assert_eq!(apply(&der(c(0), u.clone()), &y()).unwrap(), u);
        let rot = der(y(), -&x());
        assert!(apply(&rot, &(&x().pow(2) + &y().pow(2))).unwrap().is_zero());
        let diag = der(x(), y().scale(&int(2)));
        assert_eq!(apply(&diag, &(&x() * &y())).unwrap(), (&x() * &y()).scale(&int(3)));
        assert!(apply(&diag, &Poly::var(3, 0)).is_err());
    }

    #[test]
    fn iterate_examples() {
        let dy = der(c(0), c(1));
        assert_eq!(iterate(&dy, &y().pow(3), 3).unwrap(), c(6));
        assert!(iterate(&dy, &y().pow(3), 4).unwrap().is_zero());
        let diag = der(x(), y().scale(&int(2)));
        assert_eq!(iterate(&diag, &y(), 5).unwrap(), y().scale(&int(32)));
    }

    #[test]
    fn semidecide_examples() {
        let u = &x().pow(2) + &c(1);
        assert_eq!(lnd_semidecide(&der(c(0), u), 3), Nilpotence::NilpotentWithin(2));
        let diag = der(x(), y().scale(&int(2)));
        assert!(matches!(lnd_semidecide(&diag, 50), Nilpotence::NotNilpotentWithin { cap: 50, .. }));
        // D x = y, D^2 x = 0, D y = 0
        assert_eq!(lnd_semidecide(&der(y(), c(0)), 5), Nilpotence::NilpotentWithin(2));
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(divergence(&der(x(), y())), c(2));
        assert!(divergence(&der(y(), -&x())).is_zero());
        let d = der(&x().pow(2) * &y(), -&(&x() * &y().pow(2)));
        assert!(divergence(&d).is_zero());
    }

    #[test]
    fn decide_translation() {
        let d = der(c(1), c(1));
        let LndVerdict::Lnd(cert) = lnd_decide2(&d).unwrap() else { panic!("(1, 1) is locally nilpotent") };
        assert_eq!(cert.kernel_generator, &x() - &y());
        assert_eq!(cert.rectifier.to_map(), PolyMap::plane(&x() - &y(), y()).unwrap());
        assert_eq!(cert.normal_u, UniPoly::one());
        assert_eq!(conjugate(&cert.rectifier, &d).unwrap(), der(c(0), c(1)));
    }

    #[test]
    fn decide_not_lnd() {
        let v = lnd_decide2(&der(x(), y())).unwrap();
        let LndVerdict::NotLnd(cert @ NotLndCertificate::NonzeroDivergence { .. }) = &v else { panic!("{v:?}") };
        assert!(cert.recheck(&der(x(), y())).unwrap());

        let rot = der(y(), -&x());
        let v = lnd_decide2(&rot).unwrap();
        let LndVerdict::NotLnd(cert @ NotLndCertificate::KernelGeneratorNotCoordinate { kernel_generator, .. }) = &v
        else {
            panic!("{v:?}")
        };
        assert_eq!(*kernel_generator, (&x().pow(2) + &y().pow(2)).scale(&crate::poly::rat(-1, 2)));
        assert!(cert.recheck(&rot).unwrap());
        assert!(matches!(lnd_decide2(&der(c(0), c(0))), Err(Error::ZeroDerivation)));
    }

    #[test]
    fn decide_with_cofactor() {
        // y * d/dx: kernel y, cofactor y
        let d = der(y(), c(0));
        let LndVerdict::Lnd(cert) = lnd_decide2(&d).unwrap() else { panic!() };
        let conj = conjugate(&cert.rectifier, &d).unwrap();
        assert!(conj.component(0).is_zero());
        assert_eq!(conj.component(1), &cert.normal_u.to_poly(2, 0));
        assert_eq!(cert.nilpotence_index, 2);

        // x * d/dy is fine, x^2 d/dx is not (divergence 2x)
        assert!(lnd_decide2(&der(c(0), x())).unwrap().is_lnd());
        assert!(!lnd_decide2(&der(x().pow(2), c(0))).unwrap().is_lnd());

        // (x - y)^2 * (1, 1): cofactor in Q[x - y]
        let w = (&x() - &y()).pow(2);
        assert!(lnd_decide2(&der(w.clone(), w)).unwrap().is_lnd());

        // x * (1, 1): cofactor x is not in Q[x - y]
        let v = lnd_decide2(&der(x(), x())).unwrap();
        assert!(matches!(v, LndVerdict::NotLnd(NotLndCertificate::CofactorNotInKernelAlgebra { .. })));
    }

    #[test]
    fn decide_conjugated_normal_form() {
        // conjugate x^2 d/dy by a nonlinear automorphism and decide again
        let phi = validate(&PolyMap::plane(&x() + &y().pow(2), y()).unwrap()).unwrap();
        let base = der(c(0), x().pow(2));
        let d = conjugate(&phi, &base).unwrap();
        let LndVerdict::Lnd(cert) = lnd_decide2(&d).unwrap() else { panic!("{d}") };
        let conj = conjugate(&cert.rectifier, &d).unwrap();
        assert!(conj.component(0).is_zero());
        assert_eq!(cert.normal_u.degree(), Some(2));
    }

    #[test]
    fn exp_examples() {
        let dy = der(c(0), c(1));
        let m = exp_of_lnd(&dy).unwrap();
        assert_eq!(m, PolyMap::plane(x(), &y() + &c(1)).unwrap());
        let m = exp_of_lnd(&der(c(0), x().pow(2))).unwrap();
        assert_eq!(m, PolyMap::plane(x(), &y() + &x().pow(2)).unwrap());
        let delta = dy.scaled_by(&x()).unwrap();
        let proof = lnd_semidecide(&delta, 5);
        assert_eq!(proof, Nilpotence::NilpotentWithin(2));
        assert_eq!(exp_auto_plane(&delta, &proof).unwrap().to_map(), PolyMap::plane(x(), &y() + &x()).unwrap());
        let diag = der(x(), y());
        assert!(exp_auto(&diag, &lnd_semidecide(&diag, 4)).is_err());
        assert!(exp_auto(&diag, &Nilpotence::NilpotentWithin(3)).is_err());
    }

    #[test]
    fn exp_inverse_pair() {
        let delta = der(y().pow(2), c(0));
        let fwd = exp_of_lnd(&delta).unwrap();
        let back = exp_of_lnd(&delta.negated()).unwrap();
        assert_eq!(fwd.compose(&back).unwrap(), PolyMap::identity(2));
    }
}
