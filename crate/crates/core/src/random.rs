//! Seeded generators for exact test data.
//!
//! Every generator draws from a caller-supplied RNG so results are
//! reproducible from a seed.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::scalars::{Kind, Rational, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ height` and `1 ≤ q ≤ height`.
pub fn rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    let h = height.max(1);
    let p = rng.gen_range(-h..=h);
    let q = rng.gen_range(1..=h);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// An integer in `[-height, height]`.
pub fn integer<R: Rng>(rng: &mut R, height: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-height..=height)))
}

pub fn scalar<T: Scalar, R: Rng>(rng: &mut R, height: i64) -> T {
    let c: Vec<Rational> = (0..T::KIND.rank()).map(|_| rational(rng, height)).collect();
    T::from_components(&c)
}

pub fn integer_scalar<T: Scalar, R: Rng>(rng: &mut R, height: i64) -> T {
    let c: Vec<Rational> = (0..T::KIND.rank()).map(|_| integer(rng, height)).collect();
    T::from_components(&c)
}

pub fn matrix<T: Scalar, R: Rng>(rng: &mut R, n: usize, height: i64) -> Matrix<T> {
    Matrix::from_fn(n, |_, _| scalar(rng, height))
}

pub fn integer_matrix<T: Scalar, R: Rng>(rng: &mut R, n: usize, height: i64) -> Matrix<T> {
    Matrix::from_fn(n, |_, _| integer_scalar(rng, height))
}

/// Draws until the matrix is invertible.
pub fn invertible<T: Scalar, R: Rng>(rng: &mut R, n: usize, height: i64) -> Matrix<T> {
    loop {
        let m = matrix(rng, n, height);
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// A hermitian matrix: rational diagonal, random upper triangle mirrored
/// by conjugation.
pub fn hermitian<T: Scalar, R: Rng>(rng: &mut R, n: usize, height: i64) -> Matrix<T> {
    let mut m = Matrix::zero(n);
    for r in 0..n {
        m.set(r, r, T::from_rational(rational(rng, height)));
        for c in r + 1..n {
            let x: T = scalar(rng, height);
            m.set(c, r, x.conj());
            m.set(r, c, x);
        }
    }
    m
}

/// An anti-hermitian matrix: `adjoint(S) = −S`. The diagonal is purely
/// imaginary, so it vanishes for the real kind.
pub fn anti_hermitian<T: Scalar, R: Rng>(rng: &mut R, n: usize, height: i64) -> Matrix<T> {
    let mut m = Matrix::zero(n);
    for r in 0..n {
        if T::KIND != Kind::Real {
            let mut c: Vec<Rational> = (0..T::KIND.rank()).map(|_| rational(rng, height)).collect();
            c[0] = Rational::from_integer(0.into());
            m.set(r, r, T::from_components(&c));
        }
        for c in r + 1..n {
            let x: T = scalar(rng, height);
            m.set(c, r, -x.conj());
            m.set(r, c, x);
        }
    }
    m
}
