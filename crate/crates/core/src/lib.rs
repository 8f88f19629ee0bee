//! Exact computation in matrix algebras `M_n(D)` over ℚ, ℚ(√−1) and the
//! rational quaternions, and in finite-dimensional algebras given by
//! structure constants.
//!
//! - [`scalars`]: the three division algebras and exact rationals.
//! - [`matrix`]: matrices, adjoints, reduced traces, the `*` embedding.
//! - [`involution`]: involutions `Int(a)∘ϑᵗ`, their kind, type and
//!   positivity.
//! - [`cones`]: congruence diagonalization with certificates, signatures,
//!   PSD tests, hermitian squares, cone certificates.
//! - [`words`]: simultaneous unitary similarity by traces of words.
//! - [`structure`]: central simplicity checks for structure-constant
//!   algebras, matrix-unit families, trace functionals.
//! - [`json`] and [`cli`]: the JSON encodings and the `csai` front end.
//!
//! ```
//! use csai::cones::is_psd;
//! use csai::matrix::Matrix;
//! use csai::scalars::int;
//!
//! let h = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(2)]]).unwrap();
//! assert!(is_psd(&h).unwrap().psd);
//! ```

pub mod cli;
pub mod cones;
pub mod error;
pub mod involution;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod random;
pub mod scalars;
pub mod structure;
pub mod words;

// The guide's code blocks run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/involutions.md")]
    mod involutions {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/similarity.md")]
    mod similarity {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
}
