//! Finite-dimensional ℚ-algebras given by structure constants, and the
//! checks that decide whether such an algebra (with involution) is central
//! simple.
//!
//! An algebra of dimension `m` is stored as the array `c[u][v][w]` with
//! `e_u·e_v = Σ_w c[u][v][w]·e_w`. Nothing beyond bilinearity is assumed:
//! associativity, the unit laws and the involution laws are all checked.
//!
//! ```
//! use csai::structure::{catalog, CsaVerdict};
//!
//! let m2 = catalog::matrices_2x2();
//! let report = m2.csa_model_check(0);
//! assert_eq!(report.verdict, CsaVerdict::Pass);
//! assert_eq!(report.degree, Some(2));
//! ```

pub mod catalog;
mod delta;
mod field;

use std::marker::PhantomData;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::involution::InvolutionKind;
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalars::{Rational, Scalar};

pub use delta::{check_linear_independence, verify_delta, BasisFamily, DeltaCase, DeltaReport};
pub use field::{FieldVerdict, FIELD_HEIGHT, FIELD_TRIALS};

/// An algebra whose elements can be multiplied and compared to zero,
/// with ℚ-coordinates for rank computations.
pub trait FiniteAlgebra {
    type Elem: Clone + PartialEq;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn coords(&self, a: &Self::Elem) -> Vec<Rational>;
}

/// `M_n(D)` with its matrices as elements.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatrixAlgebra<T>(PhantomData<T>);

impl<T> MatrixAlgebra<T> {
    pub fn new() -> Self {
        MatrixAlgebra(PhantomData)
    }
}

impl<T: Scalar> FiniteAlgebra for MatrixAlgebra<T> {
    type Elem = Matrix<T>;

    fn mul(&self, a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
        a * b
    }

    fn neg(&self, a: &Matrix<T>) -> Matrix<T> {
        -a
    }

    fn is_zero(&self, a: &Matrix<T>) -> bool {
        a.is_zero()
    }

    fn coords(&self, a: &Matrix<T>) -> Vec<Rational> {
        a.coords()
    }
}

/// A finite-dimensional ℚ-algebra in coordinates.
///
/// The optional involution is the `m×m` matrix `S` with `σ(x) = S·x` on
/// coordinate columns, so column `u` of `S` holds `σ(e_u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantAlgebra {
    m: usize,
    constants: Vec<Vec<Vec<Rational>>>,
    unit: Vec<Rational>,
    involution: Option<Matrix<Rational>>,
}

/// Result of the central-simplicity checks, in the order they are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsaVerdict {
    /// Central simple of degree at least 2 over its centre.
    Pass,
    /// A field: central simple of degree 1 over itself.
    PassCommutative,
    FailAssociativity,
    FailUnit,
    FailSemisimple,
    FailCenter,
    FailDimension,
    /// The centre test exhausted its strategies without a certificate.
    Inconclusive,
}

impl CsaVerdict {
    pub fn passed(self) -> bool {
        matches!(self, CsaVerdict::Pass | CsaVerdict::PassCommutative)
    }

    pub fn name(self) -> &'static str {
        match self {
            CsaVerdict::Pass => "pass",
            CsaVerdict::PassCommutative => "pass-commutative",
            CsaVerdict::FailAssociativity => "fail-associativity",
            CsaVerdict::FailUnit => "fail-unit",
            CsaVerdict::FailSemisimple => "fail-semisimple",
            CsaVerdict::FailCenter => "fail-center",
            CsaVerdict::FailDimension => "fail-dimension",
            CsaVerdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for CsaVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsaReport {
    pub m: usize,
    /// First basis triple `(u, v, w)` with `(e_u e_v) e_w ≠ e_u (e_v e_w)`.
    pub associativity_violation: Option<(usize, usize, usize)>,
    /// First basis index `u` with `1·e_u ≠ e_u` or `e_u·1 ≠ e_u`.
    pub unit_violation: Option<usize>,
    pub semisimple: bool,
    pub center: Vec<Vec<Rational>>,
    pub center_field: FieldVerdict,
    /// `√(m/c)` when `c = dim Z(A)` divides `m` with square quotient.
    pub degree: Option<usize>,
    pub verdict: CsaVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsaiVerdict {
    Pass,
    FailAlgebra,
    FailInvolutive,
    FailAntiMultiplicative,
    FailSymmetricCenter,
    Inconclusive,
}

impl CsaiVerdict {
    pub fn name(self) -> &'static str {
        match self {
            CsaiVerdict::Pass => "pass",
            CsaiVerdict::FailAlgebra => "fail-algebra",
            CsaiVerdict::FailInvolutive => "fail-involutive",
            CsaiVerdict::FailAntiMultiplicative => "fail-anti-multiplicative",
            CsaiVerdict::FailSymmetricCenter => "fail-symmetric-center",
            CsaiVerdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for CsaiVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsaiReport {
    pub csa: CsaReport,
    /// `σ² = id`.
    pub involutive: bool,
    /// First basis pair `(u, v)` with `σ(e_u e_v) ≠ σ(e_v) σ(e_u)`.
    pub anti_multiplicative_violation: Option<(usize, usize)>,
    /// Dimension of `Z(A) ∩ Sym(A, σ)`; the base field is ℚ·1 iff this is 1.
    pub symmetric_center_dim: usize,
    /// First kind iff σ fixes the centre pointwise.
    pub kind: InvolutionKind,
    pub verdict: CsaiVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFunctionalReport {
    /// First basis pair `(u, v)` with `f(e_u e_v) ≠ f(e_v e_u)`.
    pub commutator_violation: Option<(usize, usize)>,
    /// First pair `(z, u)` of a centre basis index and a basis index with
    /// `f(z·e_u) ≠ z·f(e_u)`.
    pub linearity_violation: Option<(usize, usize)>,
    /// `f(1) = deg·1`.
    pub unit_value_ok: bool,
    /// In matrix models: agreement with the reduced trace on every basis
    /// element.
    pub matches_reduced_trace: Option<bool>,
}

impl TraceFunctionalReport {
    pub fn passed(&self) -> bool {
        self.commutator_violation.is_none()
            && self.linearity_violation.is_none()
            && self.unit_value_ok
            && self.matches_reduced_trace != Some(false)
    }
}

fn zeros(m: usize) -> Vec<Rational> {
    vec![Rational::zero(); m]
}

fn add_scaled(acc: &mut [Rational], v: &[Rational], s: &Rational) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x * s;
        }
    }
}

fn square_root(q: usize) -> Option<usize> {
    let r = (q as f64).sqrt().round() as usize;
    (r.checked_mul(r) == Some(q)).then_some(r)
}

impl StructureConstantAlgebra {
    /// Checks shapes only; the algebra laws are checked by the reports.
    pub fn new(
        constants: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
        involution: Option<Matrix<Rational>>,
    ) -> Result<Self> {
        let m = constants.len();
        if m == 0 {
            return Err(Error::ShapeMismatch(
                "an algebra needs dimension at least 1".into(),
            ));
        }
        if constants
            .iter()
            .any(|row| row.len() != m || row.iter().any(|c| c.len() != m))
        {
            return Err(Error::ShapeMismatch(format!(
                "constants must be {m}×{m}×{m}"
            )));
        }
        if unit.len() != m {
            return Err(Error::ShapeMismatch(format!(
                "unit has {} coordinates, expected {m}",
                unit.len()
            )));
        }
        if let Some(s) = &involution {
            if s.n() != m {
                return Err(Error::ShapeMismatch(format!(
                    "involution is {0}×{0}, expected {m}×{m}",
                    s.n()
                )));
            }
        }
        Ok(StructureConstantAlgebra {
            m,
            constants,
            unit,
            involution,
        })
    }

    /// `M_n(D)` as a ℚ-algebra in the basis [`Matrix::basis`], with the
    /// conjugate transpose as involution.
    pub fn from_matrix_model<T: Scalar>(n: usize) -> Self {
        let basis = Matrix::<T>::basis(n);
        let constants = basis
            .iter()
            .map(|a| basis.iter().map(|b| (a * b).coords()).collect())
            .collect();
        let m = basis.len();
        let involution = Matrix::from_fn(m, |w, u| basis[u].adjoint().coords()[w].clone());
        StructureConstantAlgebra {
            m,
            constants,
            unit: Matrix::<T>::identity(n).coords(),
            involution: Some(involution),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.constants
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn involution(&self) -> Option<&Matrix<Rational>> {
        self.involution.as_ref()
    }

    pub fn with_involution(mut self, s: Option<Matrix<Rational>>) -> Result<Self> {
        if let Some(s) = &s {
            if s.n() != self.m {
                return Err(Error::ShapeMismatch(format!(
                    "involution is {0}×{0}, expected {1}×{1}",
                    s.n(),
                    self.m
                )));
            }
        }
        self.involution = s;
        Ok(self)
    }

    /// The basis vector `e_u`.
    pub fn basis_vector(&self, u: usize) -> Vec<Rational> {
        let mut v = zeros(self.m);
        v[u] = Rational::one();
        v
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zeros(self.m);
        for (u, xu) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (v, yv) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                add_scaled(&mut out, &self.constants[u][v], &(xu * yv));
            }
        }
        out
    }

    /// `σ(x)`, when an involution is attached.
    pub fn apply_involution(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let s = self.involution.as_ref()?;
        Some(
            (0..self.m)
                .map(|w| x.iter().enumerate().map(|(u, xu)| s.get(w, u) * xu).sum())
                .collect(),
        )
    }

    /// The same algebra in the basis `e'_u = Σ_i P[i][u]·e_i`.
    pub fn change_basis(&self, p: &Matrix<Rational>) -> Result<Self> {
        let m = self.m;
        if p.n() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: p.n(),
            });
        }
        let pinv = p.inverse()?;
        let col = |u: usize| (0..m).map(|i| p.get(i, u).clone()).collect::<Vec<_>>();
        let to_new = |x: &[Rational]| -> Vec<Rational> {
            (0..m)
                .map(|i| {
                    x.iter()
                        .enumerate()
                        .map(|(j, xj)| pinv.get(i, j) * xj)
                        .sum()
                })
                .collect()
        };
        let cols: Vec<Vec<Rational>> = (0..m).map(col).collect();
        let constants = (0..m)
            .map(|u| {
                (0..m)
                    .map(|v| to_new(&self.mul(&cols[u], &cols[v])))
                    .collect()
            })
            .collect();
        let involution = self.involution.as_ref().map(|s| &(&pinv * s) * p);
        Ok(StructureConstantAlgebra {
            m,
            constants,
            unit: to_new(&self.unit),
            involution,
        })
    }

    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let m = self.m;
        for u in 0..m {
            for v in 0..m {
                let uv = &self.constants[u][v];
                for w in 0..m {
                    let left = self.mul(uv, &self.basis_vector(w));
                    let right = self.mul(&self.basis_vector(u), &self.constants[v][w]);
                    if left != right {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    pub fn unit_violation(&self) -> Option<usize> {
        (0..self.m).find(|&u| {
            let e = self.basis_vector(u);
            self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
        })
    }

    /// Basis of `Z(A) = {x : x·e_u = e_u·x for all u}`, from the null space
    /// of the commutator system.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let m = self.m;
        let mut rows = Vec::with_capacity(m * m);
        for u in 0..m {
            for k in 0..m {
                rows.push(
                    (0..m)
                        .map(|w| &self.constants[w][u][k] - &self.constants[u][w][k])
                        .collect(),
                );
            }
        }
        linalg::nullspace(&rows, m)
    }

    /// Trace of left multiplication `L_x`.
    pub fn regular_trace(&self, x: &[Rational]) -> Rational {
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, xw)| {
                xw * (0..self.m)
                    .map(|v| &self.constants[w][v][v])
                    .sum::<Rational>()
            })
            .sum()
    }

    /// Gram matrix of `(x, y) ↦ tr(L_x L_y)` on the basis. Uses
    /// `L_x L_y = L_{xy}`, so it is meaningful for associative algebras.
    pub fn trace_form_gram(&self) -> Matrix<Rational> {
        let taus: Vec<Rational> = (0..self.m)
            .map(|w| self.regular_trace(&self.basis_vector(w)))
            .collect();
        Matrix::from_fn(self.m, |u, v| {
            self.constants[u][v]
                .iter()
                .zip(&taus)
                .map(|(c, t)| c * t)
                .sum()
        })
    }

    /// Semisimple iff the regular trace form is nondegenerate (valid in
    /// characteristic 0).
    pub fn is_semisimple(&self) -> bool {
        let g = self.trace_form_gram();
        let rows: Vec<Vec<Rational>> = g.rows().map(<[Rational]>::to_vec).collect();
        linalg::rank(&rows) == self.m
    }

    /// Decides whether the centre is a field; see [`FieldVerdict`].
    pub fn center_is_field(&self, seed: u64) -> FieldVerdict {
        field::center_is_field(self, &self.center(), seed)
    }

    /// Checks `f(e_u e_v) = f(e_v e_u)`, centre-linearity and
    /// `f(1) = deg·1`, where `values[u]` holds `f(e_u)` as coordinates of
    /// a central element.
    pub fn verify_trace_functional(
        &self,
        values: &[Vec<Rational>],
        degree: usize,
    ) -> Result<TraceFunctionalReport> {
        if values.len() != self.m || values.iter().any(|v| v.len() != self.m) {
            return Err(Error::ShapeMismatch(format!(
                "a functional needs {0} values of length {0}",
                self.m
            )));
        }
        let f = |x: &[Rational]| -> Vec<Rational> {
            let mut acc = zeros(self.m);
            for (v, xv) in values.iter().zip(x) {
                add_scaled(&mut acc, v, xv);
            }
            acc
        };
        let mut commutator_violation = None;
        'pairs: for u in 0..self.m {
            for v in 0..self.m {
                if f(&self.constants[u][v]) != f(&self.constants[v][u]) {
                    commutator_violation = Some((u, v));
                    break 'pairs;
                }
            }
        }
        let mut linearity_violation = None;
        'lin: for (zi, z) in self.center().iter().enumerate() {
            for u in 0..self.m {
                if f(&self.mul(z, &self.basis_vector(u))) != self.mul(z, &values[u]) {
                    linearity_violation = Some((zi, u));
                    break 'lin;
                }
            }
        }
        let deg = Rational::from_integer(degree.into());
        let expected: Vec<Rational> = self.unit.iter().map(|c| c * &deg).collect();
        Ok(TraceFunctionalReport {
            commutator_violation,
            linearity_violation,
            unit_value_ok: f(&self.unit) == expected,
            matches_reduced_trace: None,
        })
    }

    /// Associativity, unit, semisimplicity, centre a field, and
    /// `m = c·deg²` with `c = dim Z(A)`, reported in that order.
    pub fn csa_model_check(&self, seed: u64) -> CsaReport {
        let associativity_violation = self.associativity_violation();
        let unit_violation = self.unit_violation();
        let semisimple = self.is_semisimple();
        let center = self.center();
        let center_field = field::center_is_field(self, &center, seed);
        let c = center.len();
        let degree = (c > 0 && self.m.is_multiple_of(c))
            .then(|| square_root(self.m / c))
            .flatten();
        let verdict = if associativity_violation.is_some() {
            CsaVerdict::FailAssociativity
        } else if unit_violation.is_some() {
            CsaVerdict::FailUnit
        } else if !semisimple {
            CsaVerdict::FailSemisimple
        } else if matches!(center_field, FieldVerdict::NotField { .. }) {
            CsaVerdict::FailCenter
        } else if center_field == FieldVerdict::Inconclusive {
            CsaVerdict::Inconclusive
        } else {
            match degree {
                None => CsaVerdict::FailDimension,
                Some(1) => CsaVerdict::PassCommutative,
                Some(_) => CsaVerdict::Pass,
            }
        };
        CsaReport {
            m: self.m,
            associativity_violation,
            unit_violation,
            semisimple,
            center,
            center_field,
            degree,
            verdict,
        }
    }

    /// [`csa_model_check`](Self::csa_model_check) plus the involution laws,
    /// `Z(A) ∩ Sym = ℚ·1`, and the kind. Errors when no involution is
    /// attached.
    pub fn csai_model_check(&self, seed: u64) -> Result<CsaiReport> {
        let s = self
            .involution
            .as_ref()
            .ok_or_else(|| Error::Invalid("the algebra has no involution".into()))?;
        let csa = self.csa_model_check(seed);
        let involutive = (s * s) == Matrix::identity(self.m);
        let sigma = |x: &[Rational]| self.apply_involution(x).expect("involution present");
        let mut anti_multiplicative_violation = None;
        'pairs: for u in 0..self.m {
            for v in 0..self.m {
                let lhs = sigma(&self.constants[u][v]);
                let rhs = self.mul(&sigma(&self.basis_vector(v)), &sigma(&self.basis_vector(u)));
                if lhs != rhs {
                    anti_multiplicative_violation = Some((u, v));
                    break 'pairs;
                }
            }
        }
        // Z ∩ Sym: combinations Σ a_i z_i with σ(Σ a_i z_i) = Σ a_i z_i.
        let moved: Vec<Vec<Rational>> = csa
            .center
            .iter()
            .map(|z| sigma(z).iter().zip(z).map(|(a, b)| a - b).collect())
            .collect();
        let symmetric_center_dim = csa.center.len() - linalg::rank(&moved);
        let kind = if moved.iter().all(|d| d.iter().all(Zero::is_zero)) {
            InvolutionKind::First
        } else {
            InvolutionKind::Second
        };
        let verdict = if csa.verdict == CsaVerdict::Inconclusive {
            CsaiVerdict::Inconclusive
        } else if !csa.verdict.passed() {
            CsaiVerdict::FailAlgebra
        } else if !involutive {
            CsaiVerdict::FailInvolutive
        } else if anti_multiplicative_violation.is_some() {
            CsaiVerdict::FailAntiMultiplicative
        } else if symmetric_center_dim != 1 {
            CsaiVerdict::FailSymmetricCenter
        } else {
            CsaiVerdict::Pass
        };
        Ok(CsaiReport {
            csa,
            involutive,
            anti_multiplicative_violation,
            symmetric_center_dim,
            kind,
            verdict,
        })
    }
}

impl FiniteAlgebra for StructureConstantAlgebra {
    type Elem = Vec<Rational>;

    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        StructureConstantAlgebra::mul(self, a, b)
    }

    fn neg(&self, a: &Vec<Rational>) -> Vec<Rational> {
        a.iter().map(|x| -x).collect()
    }

    fn is_zero(&self, a: &Vec<Rational>) -> bool {
        a.iter().all(Zero::is_zero)
    }

    fn coords(&self, a: &Vec<Rational>) -> Vec<Rational> {
        a.clone()
    }
}

/// Embeds a central value of `M_n(D)` as a scalar matrix.
fn central_matrix<T: Scalar>(n: usize, z: &T::Center) -> Matrix<T> {
    let mut c = z.components();
    c.resize(T::KIND.rank(), Rational::zero());
    Matrix::scalar(n, T::from_components(&c))
}

/// [`StructureConstantAlgebra::verify_trace_functional`] on `M_n(D)`, with
/// `values[u] = f(B_u)` for the basis `B` of [`Matrix::basis`], plus a
/// comparison with the reduced trace on that basis.
pub fn verify_matrix_trace_functional<T: Scalar>(
    n: usize,
    values: &[T::Center],
) -> Result<TraceFunctionalReport> {
    let alg = StructureConstantAlgebra::from_matrix_model::<T>(n);
    let basis = Matrix::<T>::basis(n);
    if values.len() != basis.len() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} values, got {}",
            basis.len(),
            values.len()
        )));
    }
    let coords: Vec<Vec<Rational>> = values
        .iter()
        .map(|z| central_matrix::<T>(n, z).coords())
        .collect();
    let mut report = alg.verify_trace_functional(&coords, T::KIND.degree(n))?;
    report.matches_reduced_trace = Some(
        basis
            .iter()
            .zip(values)
            .all(|(b, v)| &b.reduced_trace() == v),
    );
    Ok(report)
}

/// The reduced trace of `M_n(D)` on the basis of [`Matrix::basis`].
pub fn reduced_trace_values<T: Scalar>(n: usize) -> Vec<T::Center> {
    Matrix::<T>::basis(n)
        .iter()
        .map(Matrix::reduced_trace)
        .collect()
}
