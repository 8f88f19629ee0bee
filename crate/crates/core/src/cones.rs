//! Positive cones on `(M_n(D), ϑᵗ)`.
//!
//! The workhorse is [`diagonalize_congruence`], which brings a hermitian
//! matrix to diagonal form by simultaneous row and column operations and
//! returns the transformation as a [`CongruenceCertificate`]. Signatures,
//! PSD tests and hermitian-square factorizations are all read off from it.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::involution::Involution;
use crate::matrix::Matrix;
use crate::random;
use crate::scalars::{rational_sqrt, Rational, Scalar};

/// The order in which diagonal pivots are visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotOrder {
    #[default]
    First,
    Last,
}

/// `(P, d)` with `adjoint(P)·H·P = diag(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCertificate<T> {
    pub p: Matrix<T>,
    pub d: Vec<Rational>,
}

impl<T: Scalar> CongruenceCertificate<T> {
    /// Checks `adjoint(P)·H·P = diag(d)` exactly and that `P` is invertible.
    pub fn verifies(&self, h: &Matrix<T>) -> bool {
        if self.p.n() != h.n() || self.d.len() != h.n() {
            return false;
        }
        let lhs = &(&self.p.adjoint() * h) * &self.p;
        let diag: Vec<T> = self.d.iter().cloned().map(T::from_rational).collect();
        lhs == Matrix::diag(&diag) && self.p.inverse().is_ok()
    }

    pub fn is_psd(&self) -> bool {
        self.d.iter().all(|x| !x.is_negative())
    }

    pub fn signature(&self) -> SignatureResult {
        let positives = self.d.iter().filter(|x| x.is_positive()).count();
        let negatives = self.d.iter().filter(|x| x.is_negative()).count();
        SignatureResult {
            positives,
            negatives,
            zeros: self.d.len() - positives - negatives,
            signature: positives as i64 - negatives as i64,
        }
    }
}

/// Inertia of a hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureResult {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
    pub signature: i64,
}

fn ensure_hermitian<T: Scalar>(h: &Matrix<T>) -> Result<()> {
    if h.is_hermitian() {
        Ok(())
    } else {
        Err(Error::NotHermitian)
    }
}

/// Working state: `w = adjoint(p)·H·p` is kept up to date as elementary
/// congruences are applied.
struct Congruence<T> {
    n: usize,
    w: Vec<Vec<T>>,
    p: Vec<Vec<T>>,
}

impl<T: Scalar> Congruence<T> {
    /// `col_dst += col_src·u` on `w` and `p`, then `row_dst += conj(u)·row_src`
    /// on `w`.
    fn add(&mut self, dst: usize, src: usize, u: &T) {
        let uc = u.conj();
        for r in 0..self.n {
            let x = self.w[r][src].clone() * u;
            self.w[r][dst] = self.w[r][dst].clone() + &x;
            let y = self.p[r][src].clone() * u;
            self.p[r][dst] = self.p[r][dst].clone() + &y;
        }
        for c in 0..self.n {
            let x = uc.clone() * &self.w[src][c];
            self.w[dst][c] = self.w[dst][c].clone() + &x;
        }
    }

    /// Value of the `(k, k)` entry after `add(k, j, u)`, with `w_kk = 0`.
    fn trial(&self, k: usize, j: usize, u: &T) -> Rational {
        let q = self.w[k][j].clone() * u;
        let jj = u.conj() * &self.w[j][j] * u;
        (q.clone() + &q.conj() + &jj).real_part()
    }
}

/// Congruence diagonalization with the default pivot order.
pub fn diagonalize_congruence<T: Scalar>(h: &Matrix<T>) -> Result<CongruenceCertificate<T>> {
    diagonalize_congruence_with(h, PivotOrder::First)
}

/// Congruence diagonalization visiting pivots in the given order.
///
/// When the current diagonal entry vanishes but its row does not, the
/// column of a later index `j` is added with a unit `u ∈ {1, conj(q), −conj(q)}`
/// (where `q = H_kj`), which always produces a nonzero pivot.
pub fn diagonalize_congruence_with<T: Scalar>(
    h: &Matrix<T>,
    order: PivotOrder,
) -> Result<CongruenceCertificate<T>> {
    ensure_hermitian(h)?;
    let n = h.n();
    let mut st = Congruence {
        n,
        w: h.rows().map(<[T]>::to_vec).collect(),
        p: Matrix::<T>::identity(n).rows().map(<[T]>::to_vec).collect(),
    };
    let seq: Vec<usize> = match order {
        PivotOrder::First => (0..n).collect(),
        PivotOrder::Last => (0..n).rev().collect(),
    };
    for (pos, &k) in seq.iter().enumerate() {
        let rest = &seq[pos + 1..];
        if st.w[k][k].is_zero() {
            let Some(&j) = rest.iter().find(|&&j| !st.w[k][j].is_zero()) else {
                continue;
            };
            let q = st.w[k][j].clone();
            let u = [T::one(), q.conj(), -q.conj()]
                .into_iter()
                .find(|u| !st.trial(k, j, u).is_zero())
                .expect("one of three units gives a nonzero pivot");
            st.add(k, j, &u);
        }
        let pivot = st.w[k][k].real_part();
        let inv = pivot.recip();
        for &j in rest {
            if st.w[k][j].is_zero() {
                continue;
            }
            let f = -st.w[k][j].scale(&inv);
            st.add(j, k, &f);
        }
    }
    let d = (0..n).map(|i| st.w[i][i].real_part()).collect();
    let p = Matrix::from_rows(st.p).expect("square by construction");
    Ok(CongruenceCertificate { p, d })
}

pub fn signature<T: Scalar>(h: &Matrix<T>) -> Result<SignatureResult> {
    Ok(diagonalize_congruence(h)?.signature())
}

/// PSD verdict together with the certificate it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdVerdict<T> {
    pub psd: bool,
    pub certificate: CongruenceCertificate<T>,
}

pub fn is_psd<T: Scalar>(h: &Matrix<T>) -> Result<PsdVerdict<T>> {
    let certificate = diagonalize_congruence(h)?;
    Ok(PsdVerdict {
        psd: certificate.is_psd(),
        certificate,
    })
}

/// Outcome of trying to write `H = adjoint(b)·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HermitianSquare<T> {
    /// `b` with entries in `D` and `adjoint(b)·b = H`.
    ExactFactor(Matrix<T>),
    /// All `d_i ≥ 0` but some are not rational squares; `b` exists once
    /// square roots are adjoined.
    RealClosureFactor(CongruenceCertificate<T>),
    NotPsd(CongruenceCertificate<T>),
}

pub fn hermitian_square_certificate<T: Scalar>(h: &Matrix<T>) -> Result<HermitianSquare<T>> {
    let cert = diagonalize_congruence(h)?;
    if !cert.is_psd() {
        return Ok(HermitianSquare::NotPsd(cert));
    }
    let roots: Option<Vec<T>> = cert
        .d
        .iter()
        .map(|x| rational_sqrt(x).map(T::from_rational))
        .collect();
    match roots {
        Some(r) => {
            let pinv = cert.p.inverse()?;
            Ok(HermitianSquare::ExactFactor(&Matrix::diag(&r) * &pinv))
        }
        None => Ok(HermitianSquare::RealClosureFactor(cert)),
    }
}

fn ensure_scaling<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_hermitian() {
        return Err(Error::NotSymmetric);
    }
    a.inverse()
}

/// Membership of `x` in the scaled cone `a·PSD`: `a⁻¹x` is hermitian and
/// PSD. Errors only when `a` is not symmetric and invertible.
pub fn cone_membership_scaled<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>) -> Result<bool> {
    let ai = ensure_scaling(a)?;
    let y = ai.try_mul(x)?;
    if !y.is_hermitian() {
        return Ok(false);
    }
    Ok(is_psd(&y)?.psd)
}

/// A certificate that `z = p + Σ u_i·σ(x_i)·a·x_i` with `p` PSD and
/// `u_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCertificate<T> {
    pub p: Matrix<T>,
    pub p_certificate: CongruenceCertificate<T>,
    pub terms: Vec<(Rational, Matrix<T>)>,
}

/// First failing component of a [`ConeCertificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateError {
    TooManyTerms { got: usize, max: usize },
    NegativeCoefficient { index: usize },
    DimensionMismatch,
    PNotHermitian,
    PCertificateInvalid,
    PNotPsd { index: usize },
    SumMismatch,
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooManyTerms { got, max } => write!(f, "{got} terms, at most {max} allowed"),
            Self::NegativeCoefficient { index } => write!(f, "coefficient {index} is negative"),
            Self::DimensionMismatch => write!(f, "matrix sizes disagree"),
            Self::PNotHermitian => write!(f, "p is not hermitian"),
            Self::PCertificateInvalid => write!(f, "congruence certificate for p does not verify"),
            Self::PNotPsd { index } => write!(f, "p certificate has negative d[{index}]"),
            Self::SumMismatch => write!(f, "z differs from the certified sum"),
        }
    }
}

impl std::error::Error for CertificateError {}

/// Verifies a [`ConeCertificate`] for `z` against the scaling `a` and the
/// involution `inv`. At most `m + 1` terms are allowed, `m = dim_ℚ M_n(D)`.
pub fn verify_cone_certificate<T: Scalar>(
    a: &Matrix<T>,
    inv: &Involution<T>,
    z: &Matrix<T>,
    cert: &ConeCertificate<T>,
) -> std::result::Result<(), CertificateError> {
    let n = z.n();
    let max = T::KIND.dim_over_q(n) + 1;
    if cert.terms.len() > max {
        return Err(CertificateError::TooManyTerms {
            got: cert.terms.len(),
            max,
        });
    }
    if let Some(index) = cert.terms.iter().position(|(u, _)| u.is_negative()) {
        return Err(CertificateError::NegativeCoefficient { index });
    }
    let sizes_ok =
        a.n() == n && inv.n() == n && cert.p.n() == n && cert.terms.iter().all(|(_, x)| x.n() == n);
    if !sizes_ok {
        return Err(CertificateError::DimensionMismatch);
    }
    if !cert.p.is_hermitian() {
        return Err(CertificateError::PNotHermitian);
    }
    if !cert.p_certificate.verifies(&cert.p) {
        return Err(CertificateError::PCertificateInvalid);
    }
    if let Some(index) = cert.p_certificate.d.iter().position(Signed::is_negative) {
        return Err(CertificateError::PNotPsd { index });
    }
    let mut sum = cert.p.clone();
    for (u, x) in &cert.terms {
        let t = &(&inv.apply_unchecked(x) * a) * x;
        sum = &sum + &t.scale(u);
    }
    if &sum == z {
        Ok(())
    } else {
        Err(CertificateError::SumMismatch)
    }
}

/// The five cone axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeAxiom {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl fmt::Display for ConeAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation<T> {
    pub axiom: ConeAxiom,
    pub witnesses: Vec<Matrix<T>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeAxiomReport<T> {
    pub samples: usize,
    pub checks: usize,
    pub violations: Vec<AxiomViolation<T>>,
}

impl<T> ConeAxiomReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: ConeAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Samples the cone axioms for the PSD cone of `M_n(D)`.
pub fn sample_cone_axioms<T: Scalar>(n: usize, samples: usize, seed: u64) -> ConeAxiomReport<T> {
    sample_cone_axioms_with(n, samples, seed, |m: &Matrix<T>| {
        is_psd(m).map(|v| v.psd).unwrap_or(false)
    })
}

/// Like [`sample_cone_axioms`] with a caller-supplied membership test, so
/// the harness itself can be checked against a faulty cone.
pub fn sample_cone_axioms_with<T: Scalar>(
    n: usize,
    samples: usize,
    seed: u64,
    member: impl Fn(&Matrix<T>) -> bool,
) -> ConeAxiomReport<T> {
    let mut rng = random::rng(seed);
    let mut checks = 0;
    let mut violations = Vec::new();
    let mut fail = |axiom, witnesses: Vec<Matrix<T>>, detail: &str| {
        violations.push(AxiomViolation {
            axiom,
            witnesses,
            detail: detail.to_string(),
        })
    };

    checks += 1;
    let zero = Matrix::zero(n);
    if !member(&zero) {
        fail(ConeAxiom::P1, vec![zero], "0 is not in the cone");
    }

    let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
        let g: Matrix<T> = random::matrix(rng, n, 5);
        &g.adjoint() * &g
    };
    for _ in 0..samples {
        let p1 = draw(&mut rng);
        let p2 = draw(&mut rng);
        let y: Matrix<T> = random::matrix(&mut rng, n, 5);
        let h: Matrix<T> = random::hermitian(&mut rng, n, 5);
        let u = random::rational(&mut rng, 10).abs();
        let v = u.clone() + Rational::one();
        checks += 5;

        if member(&p1) && member(&p2) && !member(&(&p1 + &p2)) {
            fail(
                ConeAxiom::P2,
                vec![p1.clone(), p2.clone()],
                "p1 + p2 left the cone",
            );
        }
        if member(&p1) && !member(&(&(&y.adjoint() * &p1) * &y)) {
            fail(
                ConeAxiom::P3,
                vec![p1.clone(), y],
                "adjoint(y)·p·y left the cone",
            );
        }
        if member(&p1) && !member(&p1.scale(&u)) {
            fail(
                ConeAxiom::P4,
                vec![p1.clone()],
                &format!("{u}·p left the cone"),
            );
        }
        if !p1.is_zero() && member(&p1) && member(&p1.scale(&-v.clone())) {
            fail(
                ConeAxiom::P4,
                vec![p1.clone()],
                &format!("-{v}·p is in the cone"),
            );
        }
        for m in [&p1, &h] {
            if !m.is_zero() && member(m) && member(&-m) {
                fail(
                    ConeAxiom::P5,
                    vec![m.clone()],
                    "p and -p are both in the cone",
                );
            }
        }
    }
    ConeAxiomReport {
        samples,
        checks,
        violations,
    }
}

/// A random PSD matrix `adjoint(g)·g`.
pub fn random_psd<T: Scalar, R: Rng>(rng: &mut R, n: usize, height: i64) -> Matrix<T> {
    let g: Matrix<T> = random::matrix(rng, n, height);
    &g.adjoint() * &g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, GaussRational, Quaternion};

    fn real(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    #[test]
    fn identity_diagonalizes_trivially() {
        let c = diagonalize_congruence(&Matrix::<Quaternion>::identity(3)).unwrap();
        assert_eq!(c.p, Matrix::identity(3));
        assert_eq!(c.d, vec![int(1); 3]);
    }

    #[test]
    fn hyperbolic_plane() {
        let h = real(&[&[0, 1], &[1, 0]]);
        for order in [PivotOrder::First, PivotOrder::Last] {
            let c = diagonalize_congruence_with(&h, order).unwrap();
            assert!(c.verifies(&h));
            let s = c.signature();
            assert_eq!((s.positives, s.negatives, s.signature), (1, 1, 0));
        }
    }

    #[test]
    fn quaternion_schur_complements() {
        let h = Matrix::from_rows(vec![
            vec![q(1, 0, 0, 0), q(0, 1, 0, 0)],
            vec![q(0, -1, 0, 0), q(1, 0, 0, 0)],
        ])
        .unwrap();
        let c = diagonalize_congruence(&h).unwrap();
        assert_eq!(c.d, vec![int(1), int(0)]);
        assert!(c.verifies(&h));

        let h2 = Matrix::from_rows(vec![
            vec![q(2, 0, 0, 0), q(0, 1, 0, 0)],
            vec![q(0, -1, 0, 0), q(2, 0, 0, 0)],
        ])
        .unwrap();
        let v = is_psd(&h2).unwrap();
        assert!(v.psd);
        assert_eq!(v.certificate.d, vec![int(2), rat(3, 2)]);
    }

    #[test]
    fn zero_pivot_with_imaginary_entry() {
        let i = GaussRational::i();
        let z = GaussRational::zero();
        let h = Matrix::from_rows(vec![vec![z.clone(), i.clone()], vec![-i, z]]).unwrap();
        let c = diagonalize_congruence(&h).unwrap();
        assert!(c.verifies(&h));
        assert_eq!(c.signature().signature, 0);
    }

    #[test]
    fn zero_pivot_where_unit_shift_cancels() {
        // With u = 1 and u = conj(q) the (0,0) entry stays zero here.
        let h = real(&[&[0, 1], &[1, -2]]);
        let c = diagonalize_congruence(&h).unwrap();
        assert!(c.verifies(&h));
        assert_eq!(c.signature().zeros, 0);
    }

    #[test]
    fn signatures() {
        assert_eq!(
            signature(&Matrix::<Rational>::identity(3))
                .unwrap()
                .signature,
            3
        );
        assert_eq!(
            signature(&-&Matrix::<Rational>::identity(3))
                .unwrap()
                .signature,
            -3
        );
        assert!(!is_psd(&real(&[&[1, 2], &[2, 1]])).unwrap().psd);
        assert_eq!(
            signature(&real(&[&[1, 2], &[3, 1]])),
            Err(Error::NotHermitian)
        );
    }

    #[test]
    fn hermitian_squares() {
        assert_eq!(
            hermitian_square_certificate(&Matrix::<Rational>::identity(2)).unwrap(),
            HermitianSquare::ExactFactor(Matrix::identity(2))
        );
        let h = real(&[&[1, 2], &[2, 5]]);
        match hermitian_square_certificate(&h).unwrap() {
            HermitianSquare::ExactFactor(b) => assert_eq!(&b.adjoint() * &b, h),
            other => panic!("{other:?}"),
        }
        let h = real(&[&[2, 0], &[0, 3]]);
        match hermitian_square_certificate(&h).unwrap() {
            HermitianSquare::RealClosureFactor(c) => {
                assert_eq!(c.p, Matrix::identity(2));
                assert_eq!(c.d, vec![int(2), int(3)]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            hermitian_square_certificate(&real(&[&[1, 2], &[2, 1]])).unwrap(),
            HermitianSquare::NotPsd(_)
        ));
    }

    #[test]
    fn scaled_membership() {
        let a = real(&[&[1, 0], &[0, 2]]);
        assert!(cone_membership_scaled(&a, &a).unwrap());
        assert!(!cone_membership_scaled(&a, &real(&[&[-1, 0], &[0, 2]])).unwrap());
        assert!(cone_membership_scaled(&Matrix::identity(2), &real(&[&[1, 2], &[2, 5]])).unwrap());
        assert_eq!(
            cone_membership_scaled(&real(&[&[1, 1], &[0, 1]]), &a),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn cone_certificates() {
        let a = real(&[&[1, 0], &[0, 2]]);
        let inv = Involution::canonical(2);
        let zero = Matrix::<Rational>::zero(2);
        let zero_cert = diagonalize_congruence(&zero).unwrap();
        let cert = ConeCertificate {
            p: zero.clone(),
            p_certificate: zero_cert.clone(),
            terms: vec![(int(1), Matrix::identity(2))],
        };
        assert_eq!(verify_cone_certificate(&a, &inv, &a, &cert), Ok(()));
        let empty = ConeCertificate {
            terms: vec![],
            ..cert.clone()
        };
        assert_eq!(verify_cone_certificate(&a, &inv, &zero, &empty), Ok(()));
        assert_eq!(
            verify_cone_certificate(&a, &inv, &zero, &cert),
            Err(CertificateError::SumMismatch)
        );
        let long = ConeCertificate {
            terms: vec![(int(0), Matrix::identity(2)); 6],
            ..cert.clone()
        };
        assert_eq!(
            verify_cone_certificate(&a, &inv, &zero, &long),
            Err(CertificateError::TooManyTerms { got: 6, max: 5 })
        );
        let negative = ConeCertificate {
            terms: vec![(int(-1), Matrix::identity(2))],
            ..cert
        };
        assert_eq!(
            verify_cone_certificate(&a, &inv, &zero, &negative),
            Err(CertificateError::NegativeCoefficient { index: 0 })
        );
    }

    #[test]
    fn axioms_hold_for_psd() {
        assert!(sample_cone_axioms::<Rational>(1, 50, 1).passed());
        assert!(sample_cone_axioms::<Rational>(2, 100, 2).passed());
        assert!(sample_cone_axioms::<Quaternion>(2, 20, 3).passed());
    }

    #[test]
    fn flipped_sign_is_caught() {
        let faulty = |m: &Matrix<Rational>| {
            is_psd(m).map(|v| v.psd).unwrap_or(false) || is_psd(&-m).map(|v| v.psd).unwrap_or(false)
        };
        let report = sample_cone_axioms_with(2, 20, 4, faulty);
        assert!(report.violated(ConeAxiom::P5));
    }
}
