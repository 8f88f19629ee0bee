//! Exact scalars for the three division algebras over ℚ.
//!
//! * [`Rational`]: the base field ℚ with the identity involution.
//! * [`GaussRational`]: ℚ(√−1) with complex conjugation.
//! * [`Quaternion`]: the rational Hamilton quaternions (−1,−1)_ℚ with the
//!   canonical involution.
//!
//! The [`Scalar`] trait is what the matrix code is generic over.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::matrix::Matrix;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let r = Rational::from_str(s).map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    Ok(r)
}

/// Exact square root of a nonnegative rational, when it exists in ℚ.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Which of the three division algebras a scalar or matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// ℚ with the identity involution (orthogonal type).
    Real,
    /// ℚ(√−1) with conjugation (unitary type).
    Complex,
    /// (−1,−1)_ℚ with quaternion conjugation (symplectic type).
    Quaternion,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Real, Kind::Complex, Kind::Quaternion];

    /// Dimension of the division algebra over ℚ: 1, 2 or 4.
    pub fn rank(self) -> usize {
        match self {
            Kind::Real => 1,
            Kind::Complex => 2,
            Kind::Quaternion => 4,
        }
    }

    /// Degree of `M_n(D)` over its centre: `n`, `n`, `2n`.
    pub fn degree(self, n: usize) -> usize {
        match self {
            Kind::Quaternion => 2 * n,
            _ => n,
        }
    }

    /// Dimension of `M_n(D)` over ℚ.
    pub fn dim_over_q(self, n: usize) -> usize {
        self.rank() * n * n
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Real => "real",
            Kind::Complex => "complex",
            Kind::Quaternion => "quaternion",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "real" => Ok(Kind::Real),
            "complex" => Ok(Kind::Complex),
            "quaternion" => Ok(Kind::Quaternion),
            other => Err(Error::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

/// An element of one of the division algebras ℚ, ℚ(√−1), (−1,−1)_ℚ.
///
/// Components are coordinates over ℚ in the basis `1`, `1, i` or
/// `1, i, j, k` respectively.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Zero
    + One
{
    const KIND: Kind;

    /// The centre of the algebra, where reduced traces take their values.
    type Center: Scalar;

    fn conj(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn real_part(&self) -> Rational;
    fn components(&self) -> Vec<Rational>;
    fn from_components(c: &[Rational]) -> Self;

    /// `x · conj(x)`, a nonnegative rational.
    fn norm(&self) -> Rational {
        self.components().iter().map(|c| c * c).sum()
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }

    fn scale(&self, r: &Rational) -> Self {
        let c: Vec<Rational> = self.components().iter().map(|x| x * r).collect();
        Self::from_components(&c)
    }

    /// The ℚ-basis unit with the given index (`1`, `i`, `j`, `k`).
    fn unit(index: usize) -> Self {
        let mut c = vec![Rational::zero(); Self::KIND.rank()];
        c[index] = Rational::one();
        Self::from_components(&c)
    }

    /// Contribution of a diagonal entry to the reduced trace.
    fn reduced_trace_part(&self) -> Self::Center;

    /// The ℚ-linear map `Z(D) → ℚ` used to test positivity of a
    /// centre-valued form: identity on ℚ, `z ↦ z + conj(z)` on ℚ(√−1).
    fn descend_center(c: &Self::Center) -> Rational;

    fn is_rational(&self) -> bool {
        self.components().iter().skip(1).all(Zero::is_zero)
    }

    /// Exact inverse of a square matrix over this algebra.
    fn invert_matrix(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        crate::matrix::gauss_jordan(m)
    }
}

impl Scalar for Rational {
    const KIND: Kind = Kind::Real;
    type Center = Rational;

    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn real_part(&self) -> Rational {
        self.clone()
    }
    fn components(&self) -> Vec<Rational> {
        vec![self.clone()]
    }
    fn from_components(c: &[Rational]) -> Self {
        c[0].clone()
    }
    fn norm(&self) -> Rational {
        self * self
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn reduced_trace_part(&self) -> Rational {
        self.clone()
    }
    fn descend_center(c: &Rational) -> Rational {
        c.clone()
    }
}

/// `re + im·√−1` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    /// `√−1`.
    pub fn i() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.re, self.im)
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussRational::new(self.re + o.re, self.im + o.im)
    }
}

impl<'a> Add<&'a GaussRational> for GaussRational {
    type Output = Self;
    fn add(self, o: &'a Self) -> Self {
        GaussRational::new(self.re + &o.re, self.im + &o.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussRational::new(self.re - o.re, self.im - o.im)
    }
}

impl<'a> Sub<&'a GaussRational> for GaussRational {
    type Output = Self;
    fn sub(self, o: &'a Self) -> Self {
        GaussRational::new(self.re - &o.re, self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussRational> for GaussRational {
    type Output = Self;
    fn mul(self, o: &'a Self) -> Self {
        GaussRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::new(Rational::one(), Rational::zero())
    }
}

impl Scalar for GaussRational {
    const KIND: Kind = Kind::Complex;
    type Center = GaussRational;

    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -&self.im)
    }
    fn from_rational(r: Rational) -> Self {
        GaussRational::new(r, Rational::zero())
    }
    fn real_part(&self) -> Rational {
        self.re.clone()
    }
    fn components(&self) -> Vec<Rational> {
        vec![self.re.clone(), self.im.clone()]
    }
    fn from_components(c: &[Rational]) -> Self {
        GaussRational::new(c[0].clone(), c[1].clone())
    }
    fn reduced_trace_part(&self) -> GaussRational {
        self.clone()
    }
    fn descend_center(c: &GaussRational) -> Rational {
        &c.re + &c.re
    }
}

/// `a + b·i + c·j + d·k` with `i² = j² = −1`, `ij = −ji = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(int(a), int(b), int(c), int(d))
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    /// Splits `q = q₁ + j·q₂` with `q₁ = a + b√−1` and `q₂ = c − d√−1`,
    /// where `√−1` is identified with `i` acting on the left.
    pub fn split(&self) -> (GaussRational, GaussRational) {
        (
            GaussRational::new(self.a.clone(), self.b.clone()),
            GaussRational::new(self.c.clone(), -&self.d),
        )
    }

    /// Inverse of [`Quaternion::split`].
    pub fn from_split(q1: &GaussRational, q2: &GaussRational) -> Self {
        Quaternion::new(q1.re.clone(), q1.im.clone(), q2.re.clone(), -&q2.im)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.a, self.b, self.c, self.d)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<'a> Add<&'a Quaternion> for Quaternion {
    type Output = Self;
    fn add(self, o: &'a Self) -> Self {
        Quaternion::new(self.a + &o.a, self.b + &o.b, self.c + &o.c, self.d + &o.d)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<'a> Sub<&'a Quaternion> for Quaternion {
    type Output = Self;
    fn sub(self, o: &'a Self) -> Self {
        Quaternion::new(self.a - &o.a, self.b - &o.b, self.c - &o.c, self.d - &o.d)
    }
}

impl<'a> Mul<&'a Quaternion> for Quaternion {
    type Output = Self;
    fn mul(self, o: &'a Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        Quaternion::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Quaternion::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }
}

impl Scalar for Quaternion {
    const KIND: Kind = Kind::Quaternion;
    type Center = Rational;

    fn conj(&self) -> Self {
        Quaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }
    fn from_rational(r: Rational) -> Self {
        Quaternion::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }
    fn real_part(&self) -> Rational {
        self.a.clone()
    }
    fn components(&self) -> Vec<Rational> {
        vec![
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }
    fn from_components(c: &[Rational]) -> Self {
        Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }
    fn reduced_trace_part(&self) -> Rational {
        &self.a + &self.a
    }
    fn descend_center(c: &Rational) -> Rational {
        c.clone()
    }
    fn invert_matrix(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        crate::matrix::invert_quaternion(m)
    }
}

/// Real part of a quaternion.
pub fn real_part(q: &Quaternion) -> Rational {
    q.a.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        assert_eq!(i.clone() * &j, k);
        assert_eq!(j.clone() * &i, -k.clone());
        assert_eq!(k.clone() * &k, -Quaternion::one());
        assert_eq!(i.clone() * &i, -Quaternion::one());
        assert_eq!(j.clone() * &j, -Quaternion::one());
    }

    #[test]
    fn conjugation() {
        assert_eq!(Quaternion::i().conj(), -Quaternion::i());
        let q = Quaternion::from_ints(1, 2, 3, 4);
        assert_eq!(q.conj(), Quaternion::from_ints(1, -2, -3, -4));
        assert_eq!(q.conj().conj(), q);
        assert_eq!(GaussRational::i().conj(), -GaussRational::i());
    }

    #[test]
    fn real_parts() {
        assert_eq!(real_part(&Quaternion::i()), int(0));
        let q = Quaternion::new(rat(3, 2), int(0), int(1), int(0));
        assert_eq!(real_part(&q), rat(3, 2));
        let q = Quaternion::new(rat(-5, 7), int(2), rat(1, 3), int(9));
        assert_eq!(real_part(&(q.clone() + q.conj())), int(2) * real_part(&q));
    }

    #[test]
    fn inverses_and_norms() {
        let q = Quaternion::from_ints(1, -2, 3, 1);
        assert_eq!(q.norm(), int(15));
        let qi = q.inv().unwrap();
        assert_eq!(q.clone() * &qi, Quaternion::one());
        assert_eq!(qi * &q, Quaternion::one());
        assert!(Quaternion::zero().inv().is_none());
        let z = GaussRational::new(int(3), int(4));
        assert_eq!(z.clone() * z.inv().unwrap(), GaussRational::one());
    }

    #[test]
    fn split_convention_round_trips() {
        let q = Quaternion::new(rat(1, 2), int(-3), int(5), rat(7, 3));
        let (q1, q2) = q.split();
        assert_eq!(Quaternion::from_split(&q1, &q2), q);
        // q = q1 + j·q2 with q1, q2 read as a + b·i
        let lift = |z: &GaussRational| Quaternion::new(z.re.clone(), z.im.clone(), int(0), int(0));
        assert_eq!(lift(&q1) + Quaternion::j() * &lift(&q2), q);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
