//! Is the centre a field? Verdicts come with certificates: a primitive
//! element with irreducible minimal polynomial, or a pair of nonzero
//! central elements whose product is zero.

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{add_scaled, zeros, StructureConstantAlgebra};
use crate::linalg;
use crate::random;
use crate::scalars::Rational;

/// Random primitive-element trials before the deterministic fallback.
pub const FIELD_TRIALS: usize = 20;
/// Coefficient height of the random central elements.
pub const FIELD_HEIGHT: i64 = 10;
/// Points `t = 1..=CURVE_POINTS` of the moment curve `Σ t^i z_i` tried by
/// the fallback.
const CURVE_POINTS: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldVerdict {
    /// `theta` generates the centre: its minimal polynomial (coefficients
    /// from the constant term up, monic) is irreducible of degree
    /// `dim Z(A)`.
    Field {
        theta: Vec<Rational>,
        minimal_polynomial: Vec<Rational>,
    },
    /// Nonzero central `left`, `right` with `left·right = 0`.
    NotField {
        left: Vec<Rational>,
        right: Vec<Rational>,
    },
    /// No certificate was found either way.
    Inconclusive,
}

impl FieldVerdict {
    pub fn is_field(&self) -> Option<bool> {
        match self {
            FieldVerdict::Field { .. } => Some(true),
            FieldVerdict::NotField { .. } => Some(false),
            FieldVerdict::Inconclusive => None,
        }
    }
}

/// Minimal polynomial of `theta` over ℚ, monic, from the constant term up.
fn minimal_polynomial(alg: &StructureConstantAlgebra, theta: &[Rational]) -> Option<Vec<Rational>> {
    if alg.unit().iter().all(Zero::is_zero) {
        return None;
    }
    let mut powers = vec![alg.unit().to_vec()];
    loop {
        let next = alg.mul(theta, powers.last().expect("nonempty"));
        if let Some(a) = linalg::solve(&linalg::columns_to_rows(&powers), &next) {
            let mut mu: Vec<Rational> = a.into_iter().map(|c| -c).collect();
            mu.push(Rational::one());
            return Some(mu);
        }
        powers.push(next);
    }
}

fn evaluate(
    alg: &StructureConstantAlgebra,
    poly: &[Rational],
    theta: &[Rational],
) -> Vec<Rational> {
    let mut acc = zeros(alg.m());
    for c in poly.iter().rev() {
        acc = alg.mul(theta, &acc);
        add_scaled(&mut acc, alg.unit(), c);
    }
    acc
}

/// Exact quotient of `a` by `b`, both from the constant term up.
fn divide(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    q
}

/// Irreducible factors over ℚ via the integer factorization of the
/// primitive multiple.
fn factors(mu: &[Rational]) -> Vec<(Vec<Rational>, usize)> {
    let den = mu.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = mu
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    Polynomial::from(ints)
        .factor()
        .polynomial_factors
        .into_iter()
        .map(|f| {
            let coeffs = f
                .polynomial
                .into_coefficients()
                .into_iter()
                .map(Rational::from_integer)
                .collect();
            (coeffs, f.power)
        })
        .collect()
}

/// Verdict from a single central element, if it yields a certificate.
fn try_element(
    alg: &StructureConstantAlgebra,
    c: usize,
    theta: Vec<Rational>,
) -> Option<FieldVerdict> {
    let mu = minimal_polynomial(alg, &theta)?;
    let fs = factors(&mu);
    if fs.len() == 1 && fs[0].1 == 1 {
        return (mu.len() - 1 == c).then_some(FieldVerdict::Field {
            theta,
            minimal_polynomial: mu,
        });
    }
    // A proper factor p and the cofactor μ/p both have degree below that
    // of μ, so neither vanishes at θ, while their product does.
    let p = &fs[0].0;
    let q = divide(&mu, p);
    Some(FieldVerdict::NotField {
        left: evaluate(alg, p, &theta),
        right: evaluate(alg, &q, &theta),
    })
}

/// A nonzero nilpotent central element from the radical of the centre's
/// own regular trace form, as a zero-divisor pair `(r^{k−1}, r)`.
fn nilpotent_certificate(
    alg: &StructureConstantAlgebra,
    center: &[Vec<Rational>],
) -> Option<FieldVerdict> {
    let c = center.len();
    let basis_rows = linalg::columns_to_rows(center);
    let in_basis = |x: &[Rational]| linalg::solve(&basis_rows, x);
    let mut gamma = vec![vec![Vec::new(); c]; c];
    for i in 0..c {
        for j in 0..c {
            gamma[i][j] = in_basis(&alg.mul(&center[i], &center[j]))?;
        }
    }
    let tau: Vec<Rational> = (0..c)
        .map(|k| (0..c).map(|l| gamma[k][l][l].clone()).sum())
        .collect();
    let gram: Vec<Vec<Rational>> = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| gamma[i][j].iter().zip(&tau).map(|(g, t)| g * t).sum())
                .collect()
        })
        .collect();
    let kernel = linalg::nullspace(&gram, c);
    let a = kernel.first()?;
    let mut r = zeros(alg.m());
    for (z, ai) in center.iter().zip(a) {
        add_scaled(&mut r, z, ai);
    }
    let mut power = r.clone();
    for _ in 0..=c {
        let next = alg.mul(&power, &r);
        if next.iter().all(Zero::is_zero) {
            return Some(FieldVerdict::NotField {
                left: power,
                right: r,
            });
        }
        power = next;
    }
    None
}

pub(super) fn center_is_field(
    alg: &StructureConstantAlgebra,
    center: &[Vec<Rational>],
    seed: u64,
) -> FieldVerdict {
    let c = center.len();
    if c == 0 {
        return FieldVerdict::Inconclusive;
    }
    let combine = |coeffs: &[Rational]| {
        let mut theta = zeros(alg.m());
        for (z, a) in center.iter().zip(coeffs) {
            add_scaled(&mut theta, z, a);
        }
        theta
    };
    let mut rng = random::rng(seed);
    for _ in 0..FIELD_TRIALS {
        let coeffs: Vec<Rational> = (0..c)
            .map(|_| random::integer(&mut rng, FIELD_HEIGHT))
            .collect();
        if let Some(v) = try_element(alg, c, combine(&coeffs)) {
            return v;
        }
    }
    if let Some(v) = nilpotent_certificate(alg, center) {
        return v;
    }
    for t in 1..=CURVE_POINTS {
        let coeffs: Vec<Rational> = (0..c as u32)
            .map(|i| Rational::from_integer(BigInt::from(t).pow(i)))
            .collect();
        if let Some(v) = try_element(alg, c, combine(&coeffs)) {
            return v;
        }
    }
    FieldVerdict::Inconclusive
}
