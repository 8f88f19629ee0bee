//! Involutions `σ = Int(a)∘ϑᵗ` on `M_n(D)` with `a` symmetric and
//! invertible.
//!
//! Every involution of `M_n(D)` that restricts to the canonical one on the
//! centre has this shape, so this is the only representation. Arbitrary
//! linear maps are brought into it by [`Involution::from_map`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cones::{diagonalize_congruence, CongruenceCertificate};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalars::{rat, Kind, Rational, Scalar};

/// `x ↦ a·adjoint(x)·a⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution<T> {
    scale: Matrix<T>,
    scale_inv: Matrix<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionKind {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
    Unitary,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::First => "first",
            Self::Second => "second",
        })
    }
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Orthogonal => "orthogonal",
            Self::Symplectic => "symplectic",
            Self::Unitary => "unitary",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: InvolutionKind,
    pub ty: InvolutionType,
    /// `dim_ℚ Sym(M_n(D), σ)`.
    pub dim_sym: usize,
    /// Degree of the algebra: `n`, `n` or `2n`.
    pub degree: usize,
}

/// The first axiom found to fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionViolation {
    ScaleNotSymmetric,
    ScaleNotInvertible,
    NotSelfInverse { basis: usize },
    NotAntiMultiplicative { left: usize, right: usize },
    NotLinear { basis: usize },
    MovesRationals,
}

impl fmt::Display for InvolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ScaleNotSymmetric => write!(f, "scale is not symmetric"),
            Self::ScaleNotInvertible => write!(f, "scale is not invertible"),
            Self::NotSelfInverse { basis } => write!(f, "σ(σ(e_{basis})) ≠ e_{basis}"),
            Self::NotAntiMultiplicative { left, right } => {
                write!(f, "σ(e_{left}·e_{right}) ≠ σ(e_{right})·σ(e_{left})")
            }
            Self::NotLinear { basis } => write!(f, "σ is not ℚ-linear at e_{basis}"),
            Self::MovesRationals => write!(f, "σ does not fix ℚ"),
        }
    }
}

/// Verdict of [`Involution::is_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub positive: bool,
    /// Gram matrix of `(x, y) ↦ Trd(σ(x)y)` over ℚ on the canonical basis.
    pub gram: Matrix<Rational>,
    pub certificate: CongruenceCertificate<Rational>,
}

impl<T: Scalar> Involution<T> {
    /// `Int(scale)∘ϑᵗ`; `scale` must be symmetric and invertible.
    pub fn new(scale: Matrix<T>) -> Result<Self> {
        if !scale.is_hermitian() {
            return Err(Error::NotSymmetric);
        }
        let scale_inv = scale.inverse()?;
        Ok(Involution { scale, scale_inv })
    }

    /// The adjoint involution `ϑᵗ`.
    pub fn canonical(n: usize) -> Self {
        Involution {
            scale: Matrix::identity(n),
            scale_inv: Matrix::identity(n),
        }
    }

    pub fn scale(&self) -> &Matrix<T> {
        &self.scale
    }

    pub fn n(&self) -> usize {
        self.scale.n()
    }

    pub fn kind(&self) -> Kind {
        T::KIND
    }

    pub fn is_canonical(&self) -> bool {
        self.scale == Matrix::identity(self.n())
    }

    pub fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: x.n(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Matrix<T>) -> Matrix<T> {
        if self.is_canonical() {
            return x.adjoint();
        }
        &(&self.scale * &x.adjoint()) * &self.scale_inv
    }

    /// Checks the involution axioms on the canonical ℚ-basis and reports the
    /// first violation.
    pub fn verify(&self) -> std::result::Result<(), InvolutionViolation> {
        if !self.scale.is_hermitian() {
            return Err(InvolutionViolation::ScaleNotSymmetric);
        }
        if &self.scale * &self.scale_inv != Matrix::identity(self.n()) {
            return Err(InvolutionViolation::ScaleNotInvertible);
        }
        let basis = Matrix::<T>::basis(self.n());
        let images: Vec<Matrix<T>> = basis.iter().map(|e| self.apply_unchecked(e)).collect();
        for (u, (e, s)) in basis.iter().zip(&images).enumerate() {
            if self.apply_unchecked(s) != *e {
                return Err(InvolutionViolation::NotSelfInverse { basis: u });
            }
        }
        for (u, e) in basis.iter().enumerate() {
            for (v, f) in basis.iter().enumerate() {
                if self.apply_unchecked(&(e * f)) != &images[v] * &images[u] {
                    return Err(InvolutionViolation::NotAntiMultiplicative { left: u, right: v });
                }
            }
        }
        let r = rat(-3, 2);
        for u in 0..basis.len() {
            let next = &basis[(u + 1) % basis.len()];
            let sum = self.apply_unchecked(&(&basis[u] + next));
            let scaled = self.apply_unchecked(&basis[u].scale(&r));
            if sum != &images[u] + &images[(u + 1) % basis.len()] || scaled != images[u].scale(&r) {
                return Err(InvolutionViolation::NotLinear { basis: u });
            }
        }
        for r in [Rational::one(), rat(5, 3)] {
            let c = Matrix::scalar(self.n(), T::from_rational(r));
            if self.apply_unchecked(&c) != c {
                return Err(InvolutionViolation::MovesRationals);
            }
        }
        Ok(())
    }

    /// `dim_ℚ Sym(M_n(D), σ)`, from the rank of `σ − id` on the basis.
    pub fn dim_sym(&self) -> usize {
        let basis = Matrix::<T>::basis(self.n());
        let cols: Vec<Vec<Rational>> = basis
            .iter()
            .map(|e| (&self.apply_unchecked(e) - e).coords())
            .collect();
        basis.len() - linalg::rank(&cols)
    }

    /// Kind and type. Second kind exactly when `σ` moves `√−1`.
    pub fn classify(&self) -> Result<Classification> {
        let n = self.n();
        let dim_sym = self.dim_sym();
        let degree = T::KIND.degree(n);
        let second = T::KIND == Kind::Complex && {
            let i = Matrix::scalar(n, T::unit(1));
            self.apply_unchecked(&i) != i
        };
        let (kind, ty) = if second {
            (InvolutionKind::Second, InvolutionType::Unitary)
        } else if dim_sym == degree * (degree + 1) / 2 {
            (InvolutionKind::First, InvolutionType::Orthogonal)
        } else if dim_sym == degree * (degree - 1) / 2 {
            (InvolutionKind::First, InvolutionType::Symplectic)
        } else {
            return Err(Error::Inconsistent(format!(
                "dim Sym = {dim_sym} fits neither formula for degree {degree}"
            )));
        };
        Ok(Classification {
            kind,
            ty,
            dim_sym,
            degree,
        })
    }

    /// Gram matrix over ℚ of `(x, y) ↦ Trd(σ(x)y)`, descended from the
    /// centre by `z ↦ z + conj(z)` for the complex kind.
    pub fn trace_form_gram(&self) -> Matrix<Rational> {
        let basis = Matrix::<T>::basis(self.n());
        let images: Vec<Matrix<T>> = basis.iter().map(|e| self.apply_unchecked(e)).collect();
        let m = basis.len();
        Matrix::from_fn(m, |u, v| {
            T::descend_center(&images[u].reduced_trace_of_product(&basis[v]))
        })
    }

    /// Positive iff the trace form `Trd(σ(x)y)` is positive definite.
    pub fn is_positive(&self) -> PositivityVerdict {
        let gram = self.trace_form_gram();
        let certificate = diagonalize_congruence(&gram).expect("trace form is symmetric");
        PositivityVerdict {
            positive: certificate.d.iter().all(Signed::is_positive),
            gram,
            certificate,
        }
    }

    /// Recovers the normal form of a linear map claimed to be an
    /// involution of this shape.
    pub fn from_map(n: usize, f: impl Fn(&Matrix<T>) -> Matrix<T>) -> Result<Self> {
        let a = solve_scaling_map(n, &f, &Involution::canonical(n))?;
        let inv = Involution::new(a)?;
        for e in Matrix::<T>::basis(n) {
            if inv.apply_unchecked(&e) != f(&e) {
                return Err(Error::Invalid(
                    "map is not of the form Int(a)∘ϑᵗ".to_string(),
                ));
            }
        }
        Ok(inv)
    }
}

/// Solves `σ = Int(a)∘γ` for invertible `a`.
///
/// The output is normalized: integer coordinates with content 1 and a
/// positive leading nonzero coordinate. When a `γ`-symmetric solution
/// exists it is preferred, which fixes the phase left open by the central
/// scalar in the complex case.
pub fn solve_scaling<T: Scalar>(sigma: &Involution<T>, gamma: &Involution<T>) -> Result<Matrix<T>> {
    if sigma.n() != gamma.n() {
        return Err(Error::DimensionMismatch {
            left: sigma.n(),
            right: gamma.n(),
        });
    }
    solve_scaling_map(sigma.n(), |x| sigma.apply_unchecked(x), gamma)
}

/// [`solve_scaling`] for an arbitrary linear map given by its action.
pub fn solve_scaling_map<T: Scalar>(
    n: usize,
    sigma: impl Fn(&Matrix<T>) -> Matrix<T>,
    gamma: &Involution<T>,
) -> Result<Matrix<T>> {
    let basis = Matrix::<T>::basis(n);
    let m = basis.len();
    let sig: Vec<Matrix<T>> = basis.iter().map(&sigma).collect();
    let gam: Vec<Matrix<T>> = basis.iter().map(|x| gamma.apply_unchecked(x)).collect();
    // Column w holds σ(x_u)·e_w − e_w·γ(x_u) stacked over u.
    let cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|e| {
            sig.iter()
                .zip(&gam)
                .flat_map(|(s, g)| (&(s * e) - &(e * g)).coords())
                .collect()
        })
        .collect();
    let rows = linalg::columns_to_rows(&cols);
    let mut symmetric = rows.clone();
    let sym_cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|e| (&gamma.apply_unchecked(e) - e).coords())
        .collect();
    symmetric.extend(linalg::columns_to_rows(&sym_cols));

    for system in [&symmetric, &rows] {
        for v in linalg::nullspace(system, m) {
            let a = Matrix::from_coords(n, &normalize(&v));
            if a.inverse().is_ok() {
                return Ok(a);
            }
        }
    }
    Err(Error::NoSolution)
}

/// Integer vector with content 1 and positive leading entry.
fn normalize(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(Signed::is_negative)
    {
        g = -g;
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Checks `a⁻¹ = σ(b)·b` and `Int(b)∘Int(a)∘σ = σ∘Int(b)` on the basis.
pub fn verify_scaling_iso<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, inv: &Involution<T>) -> bool {
    let n = inv.n();
    if a.n() != n || b.n() != n || !a.is_hermitian() {
        return false;
    }
    let Ok(ai) = a.inverse() else {
        return false;
    };
    if &inv.apply_unchecked(b) * b != ai {
        return false;
    }
    let Ok(bi) = b.inverse() else {
        return false;
    };
    Matrix::<T>::basis(n).iter().all(|x| {
        let scaled = &(&(a * &inv.apply_unchecked(x)) * &ai);
        let lhs = &(b * scaled) * &bi;
        let rhs = inv.apply_unchecked(&(&(b * x) * &bi));
        lhs == rhs
    })
}
