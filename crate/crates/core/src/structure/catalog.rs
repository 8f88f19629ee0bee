//! Small algebras with known answers, used as fixtures and in the guide.

use num_traits::{One, Zero};

use super::StructureConstantAlgebra;
use crate::matrix::Matrix;
use crate::scalars::{GaussRational, Quaternion, Rational};

/// Builds an algebra from products listed as `(u, v, w, coefficient)`.
fn from_table(
    m: usize,
    unit: &[i64],
    products: &[(usize, usize, usize, i64)],
    involution: Option<Matrix<Rational>>,
) -> StructureConstantAlgebra {
    let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
    for &(u, v, w, k) in products {
        c[u][v][w] = Rational::from_integer(k.into());
    }
    let unit = unit
        .iter()
        .map(|&k| Rational::from_integer(k.into()))
        .collect();
    StructureConstantAlgebra::new(c, unit, involution).expect("catalog shapes are consistent")
}

/// `M_2(ℚ)` in the basis `E11, E12, E21, E22`, with the transpose.
pub fn matrices_2x2() -> StructureConstantAlgebra {
    StructureConstantAlgebra::from_matrix_model::<Rational>(2)
}

/// Hamilton's quaternions over ℚ in the basis `1, i, j, k`, with
/// quaternion conjugation.
pub fn quaternions() -> StructureConstantAlgebra {
    StructureConstantAlgebra::from_matrix_model::<Quaternion>(1)
}

/// ℚ(√−1) in the basis `1, i`, with complex conjugation.
pub fn gaussian_rationals() -> StructureConstantAlgebra {
    StructureConstantAlgebra::from_matrix_model::<GaussRational>(1)
}

/// ℚ × ℚ in the basis of its two idempotents, with the swap.
pub fn split_pair() -> StructureConstantAlgebra {
    let swap = Matrix::from_fn(2, |r, s| {
        if r != s {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    from_table(2, &[1, 1], &[(0, 0, 0, 1), (1, 1, 1, 1)], Some(swap))
}

/// ℚ[x]/(x²) in the basis `1, x`, with the identity.
pub fn dual_numbers() -> StructureConstantAlgebra {
    from_table(
        2,
        &[1, 0],
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        Some(Matrix::identity(2)),
    )
}

/// Upper-triangular 2×2 matrices in the basis `E11, E12, E22`.
pub fn upper_triangular() -> StructureConstantAlgebra {
    from_table(
        3,
        &[1, 0, 1],
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
        None,
    )
}

/// The six reference algebras, named.
pub fn catalog() -> Vec<(&'static str, StructureConstantAlgebra)> {
    vec![
        ("M_2(Q)", matrices_2x2()),
        ("H", quaternions()),
        ("Q(i)", gaussian_rationals()),
        ("QxQ", split_pair()),
        ("Q[x]/(x^2)", dual_numbers()),
        ("upper-triangular", upper_triangular()),
    ]
}
