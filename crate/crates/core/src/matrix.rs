//! Dense square matrices over the division algebras, the adjoint `ϑ(·)ᵗ`,
//! ordinary and reduced traces, inversion and the quaternion `*` embedding
//! `M_n(ℍ) → M_{2n}(ℚ(√−1))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::{GaussRational, Kind, Quaternion, Rational, Scalar};

/// An `n × n` matrix with exact entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(n: usize, entries: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("matrix size must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::BadShape {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::BadShape {
                expected: n,
                got: bad.len(),
            });
        }
        Matrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Matrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::scalar(n, T::one())
    }

    /// `s · I_n`.
    pub fn scalar(n: usize, s: T) -> Self {
        Matrix::from_fn(n, |r, c| if r == c { s.clone() } else { T::zero() })
    }

    pub fn diag(d: &[T]) -> Self {
        Matrix::from_fn(
            d.len(),
            |r, c| if r == c { d[r].clone() } else { T::zero() },
        )
    }

    /// `E_{r,s} · u`: the matrix with `u` at `(r, s)` and zeros elsewhere.
    pub fn unit(n: usize, r: usize, s: usize, u: T) -> Self {
        let mut m = Matrix::zero(n);
        m.entries[r * n + s] = u;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        T::KIND
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.n + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Matrix product, row entry times column entry (order matters for
    /// quaternions).
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    let a = &self.entries[r * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other.entries[k * n + c];
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * b;
                }
                out.push(acc);
            }
        }
        Ok(Matrix { n, entries: out })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `s · A` (left scalar multiplication).
    pub fn scalar_mul(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |r, c| self.get(c, r).clone())
    }

    /// `ϑ(A)ᵗ`: entrywise conjugation followed by transposition.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.n, |r, c| self.get(c, r).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|r| (r..self.n).all(|c| *self.get(r, c) == self.get(c, r).conj()))
    }

    pub fn is_anti_hermitian(&self) -> bool {
        (0..self.n).all(|r| (r..self.n).all(|c| *self.get(r, c) == -self.get(c, r).conj()))
    }

    /// Ordinary trace, valued in `D`.
    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Reduced trace `Trd`, valued in the centre: the ordinary trace for
    /// ℚ and ℚ(√−1), twice the real part of the trace for quaternions.
    pub fn reduced_trace(&self) -> T::Center {
        (0..self.n).fold(<T::Center as Zero>::zero(), |acc, i| {
            acc + self.get(i, i).reduced_trace_part()
        })
    }

    /// `Trd(A·B)` without forming the product.
    pub fn reduced_trace_of_product(&self, other: &Self) -> T::Center {
        let n = self.n;
        let mut acc = <T::Center as Zero>::zero();
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                let b = &other.entries[k * n + i];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc + (a.clone() * b).reduced_trace_part();
            }
        }
        acc
    }

    /// Exact two-sided inverse.
    pub fn inverse(&self) -> Result<Self> {
        T::invert_matrix(self).ok_or(Error::NotInvertible)
    }

    /// Coordinates over ℚ in the canonical basis, ordered by row, column,
    /// then unit (`1, i, j, k`).
    pub fn coords(&self) -> Vec<Rational> {
        self.entries.iter().flat_map(Scalar::components).collect()
    }

    pub fn from_coords(n: usize, coords: &[Rational]) -> Self {
        let rank = T::KIND.rank();
        Matrix {
            n,
            entries: coords.chunks(rank).map(T::from_components).collect(),
        }
    }

    /// The canonical ℚ-basis `{E_{r,s}·u}` of `M_n(D)`, in coordinate order.
    pub fn basis(n: usize) -> Vec<Self> {
        let rank = T::KIND.rank();
        let mut out = Vec::with_capacity(rank * n * n);
        for r in 0..n {
            for s in 0..n {
                for u in 0..rank {
                    out.push(Matrix::unit(n, r, s, T::unit(u)));
                }
            }
        }
        out
    }
}

/// Gauss–Jordan elimination on `[A | I]` with exact field arithmetic.
pub(crate) fn gauss_jordan<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.n;
    let mut a: Vec<Vec<T>> = m.rows().map(<[T]>::to_vec).collect();
    let mut inv: Vec<Vec<T>> = Matrix::<T>::identity(n).rows().map(<[T]>::to_vec).collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        inv.swap(k, p);
        let piv = a[k][k].inv()?;
        for x in a[k].iter_mut() {
            *x = piv.clone() * &*x;
        }
        for x in inv[k].iter_mut() {
            *x = piv.clone() * &*x;
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].clone();
            for c in 0..n {
                if !a[k][c].is_zero() {
                    let t = f.clone() * &a[k][c];
                    a[r][c] = a[r][c].clone() - t;
                }
                if !inv[k][c].is_zero() {
                    let t = f.clone() * &inv[k][c];
                    inv[r][c] = inv[r][c].clone() - t;
                }
            }
        }
    }
    Some(Matrix {
        n,
        entries: inv.into_iter().flatten().collect(),
    })
}

pub(crate) fn invert_quaternion(m: &Matrix<Quaternion>) -> Option<Matrix<Quaternion>> {
    let c = star_embed(m);
    let ci = gauss_jordan(&c)?;
    star_pullback(&ci)
}

/// The `*` embedding: writing `M = M₁ + j·M₂` entrywise (see
/// [`Quaternion::split`]), returns the block matrix
/// `[[M₁, −conj(M₂)], [M₂, conj(M₁)]]`.
pub fn star_embed(m: &Matrix<Quaternion>) -> Matrix<GaussRational> {
    let n = m.n;
    let mut out = Matrix::<GaussRational>::zero(2 * n);
    for r in 0..n {
        for c in 0..n {
            let (q1, q2) = m.get(r, c).split();
            out.set(r, c, q1.clone());
            out.set(r, c + n, -q2.conj());
            out.set(r + n, c, q2);
            out.set(r + n, c + n, q1.conj());
        }
    }
    out
}

/// Inverse of [`star_embed`] on its image; `None` when the block pattern
/// does not match.
pub fn star_pullback(m: &Matrix<GaussRational>) -> Option<Matrix<Quaternion>> {
    if !m.n.is_multiple_of(2) {
        return None;
    }
    let n = m.n / 2;
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let q1 = m.get(r, c);
            let q2 = m.get(r + n, c);
            if *m.get(r + n, c + n) != q1.conj() || *m.get(r, c + n) != -q2.conj() {
                return None;
            }
            entries.push(Quaternion::from_split(q1, q2));
        }
    }
    Some(Matrix { n, entries })
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    /// Panics on a size mismatch; use [`Matrix::try_mul`] to get an error.
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix sizes differ")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        self.try_add(rhs).expect("matrix sizes differ")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix sizes differ")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A nonempty tuple `(X_1, …, X_d)` of same-size matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixTuple<T> {
    items: Vec<Matrix<T>>,
}

impl<T: Scalar> MatrixTuple<T> {
    pub fn new(items: Vec<Matrix<T>>) -> Result<Self> {
        let first = items.first().ok_or(Error::EmptyTuple)?;
        let n = first.n();
        if let Some(bad) = items.iter().find(|m| m.n() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.n(),
            });
        }
        Ok(MatrixTuple { items })
    }

    pub fn n(&self) -> usize {
        self.items[0].n()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn items(&self) -> &[Matrix<T>] {
        &self.items
    }

    pub fn get(&self, i: usize) -> &Matrix<T> {
        &self.items[i]
    }

    pub fn map(&self, f: impl Fn(&Matrix<T>) -> Matrix<T>) -> Self {
        MatrixTuple {
            items: self.items.iter().map(f).collect(),
        }
    }
}

/// `true` when every diagonal entry is rational.
pub fn has_rational_diagonal<T: Scalar>(m: &Matrix<T>) -> bool {
    (0..m.n()).all(|i| m.get(i, i).components().iter().skip(1).all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    fn real(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn matrix_units_multiply() {
        let e12 = Matrix::unit(2, 0, 1, int(1));
        let e21 = Matrix::unit(2, 1, 0, int(1));
        assert_eq!(&e12 * &e21, Matrix::unit(2, 0, 0, int(1)));
        let a = real(&[&[1, 2], &[3, 4]]);
        assert_eq!(&Matrix::identity(2) * &a, a);
    }

    #[test]
    fn quaternion_products_keep_order() {
        let j = Matrix::scalar(1, Quaternion::j());
        let i = Matrix::scalar(1, Quaternion::i());
        assert_eq!(&j * &i, Matrix::scalar(1, -Quaternion::k()));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let a = Matrix::<Rational>::identity(2);
        let b = Matrix::<Rational>::identity(3);
        assert!(matches!(
            a.try_mul(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Matrix::<Rational>::from_rows(vec![vec![int(1)], vec![]]).is_err());
    }

    #[test]
    fn adjoints() {
        assert_eq!(
            Matrix::<Quaternion>::identity(3).adjoint(),
            Matrix::identity(3)
        );
        let m = Matrix::unit(2, 0, 1, Quaternion::i());
        assert_eq!(m.adjoint(), Matrix::unit(2, 1, 0, -Quaternion::i()));
        let r = real(&[&[1, 2], &[3, 4]]);
        assert_eq!(r.adjoint(), r.transpose());
    }

    #[test]
    fn reduced_traces() {
        assert_eq!(Matrix::<Quaternion>::identity(1).reduced_trace(), int(2));
        assert_eq!(Matrix::scalar(1, Quaternion::i()).reduced_trace(), int(0));
        assert_eq!(Matrix::diag(&[int(1), int(2)]).reduced_trace(), int(3));
        let c = Matrix::diag(&[GaussRational::new(int(1), int(2)), GaussRational::i()]);
        assert_eq!(c.reduced_trace(), GaussRational::new(int(1), int(3)));
    }

    #[test]
    fn star_examples() {
        let s = star_embed(&Matrix::scalar(1, Quaternion::j()));
        let g = |x: i64| GaussRational::new(int(x), int(0));
        assert_eq!(
            s,
            Matrix::from_rows(vec![vec![g(0), g(-1)], vec![g(1), g(0)]]).unwrap()
        );
        assert_eq!(star_embed(&Matrix::identity(1)), Matrix::identity(2));
        let m = Matrix::from_rows(vec![
            vec![q(1, 2, 3, 4), q(0, -1, 5, 2)],
            vec![q(3, 0, 0, 1), q(-2, 1, 1, 1)],
        ])
        .unwrap();
        assert_eq!(star_pullback(&star_embed(&m)), Some(m.clone()));
        assert_eq!(
            star_embed(&m).trace(),
            GaussRational::from_rational(m.reduced_trace())
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(
            Matrix::<Rational>::identity(3).inverse().unwrap(),
            Matrix::identity(3)
        );
        let d = Matrix::diag(&[int(2), int(3)]);
        assert_eq!(d.inverse().unwrap(), Matrix::diag(&[rat(1, 2), rat(1, 3)]));
        let h = Matrix::diag(&[Quaternion::i(), Quaternion::j()]);
        let hi = h.inverse().unwrap();
        assert_eq!(hi, Matrix::diag(&[-Quaternion::i(), -Quaternion::j()]));
        assert_eq!(&h * &hi, Matrix::identity(2));
        let sing = real(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(Error::NotInvertible));
        let qs = Matrix::from_rows(vec![
            vec![q(1, 1, 0, 0), q(0, 0, 1, 1)],
            vec![q(0, 1, 0, 0), q(1, 0, 0, 1)],
        ])
        .unwrap();
        let qi = qs.inverse().unwrap();
        assert_eq!(&qs * &qi, Matrix::identity(2));
        assert_eq!(&qi * &qs, Matrix::identity(2));
    }

    #[test]
    fn coordinates_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![q(1, 2, 3, 4), q(5, 6, 7, 8)],
            vec![q(0, 0, 0, 1), q(9, 0, 0, 0)],
        ])
        .unwrap();
        assert_eq!(Matrix::from_coords(2, &m.coords()), m);
        assert_eq!(Matrix::<Quaternion>::basis(2).len(), 16);
        assert_eq!(Matrix::<GaussRational>::basis(3).len(), 18);
    }
}
