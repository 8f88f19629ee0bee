//! The multiplication tables of matrix-unit bases, as finite conjunctions
//! of equations checked element by element.

use std::fmt;

use num_traits::Zero;

use super::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalars::{GaussRational, Kind, Quaternion, Rational, Scalar};

/// Shape of a matrix-unit family: `e_{r,s}` over ℚ, or labelled by the
/// units `{1, i}` of ℚ(√−1) or `{1, i, j, k}` of the quaternions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaCase {
    One,
    Two,
    Three,
}

impl DeltaCase {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(DeltaCase::One),
            2 => Some(DeltaCase::Two),
            3 => Some(DeltaCase::Three),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            DeltaCase::One => 1,
            DeltaCase::Two => 2,
            DeltaCase::Three => 3,
        }
    }

    /// The case whose canonical family lives in `M_n` over this kind.
    pub fn for_kind(kind: Kind) -> Self {
        match kind {
            Kind::Real => DeltaCase::One,
            Kind::Complex => DeltaCase::Two,
            Kind::Quaternion => DeltaCase::Three,
        }
    }

    pub fn labels(self) -> &'static [&'static str] {
        match self {
            DeltaCase::One => &["1"],
            DeltaCase::Two => &["1", "i"],
            DeltaCase::Three => &["1", "i", "j", "k"],
        }
    }

    /// `x·y = δ·z` on labels, as `(δ, z)`.
    fn table(self, x: usize, y: usize) -> (i8, usize) {
        let comps = match self {
            DeltaCase::One => return (1, 0),
            DeltaCase::Two => (GaussRational::unit(x) * GaussRational::unit(y)).components(),
            DeltaCase::Three => (Quaternion::unit(x) * Quaternion::unit(y)).components(),
        };
        let z = comps
            .iter()
            .position(|c| !c.is_zero())
            .expect("units multiply to units");
        (
            if comps[z] > Rational::from_integer(0.into()) {
                1
            } else {
                -1
            },
            z,
        )
    }
}

/// Elements `X^{(x)}_{r,s}` of some algebra, stored label-major then by
/// row and column.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisFamily<E> {
    case: DeltaCase,
    n: usize,
    elems: Vec<E>,
}

impl<E: Clone> BasisFamily<E> {
    /// `elems[(x·n + r)·n + s] = X^{(x)}_{r,s}` with 0-based indices.
    pub fn new(case: DeltaCase, n: usize, elems: Vec<E>) -> Result<Self> {
        let want = case.labels().len() * n * n;
        if n == 0 || elems.len() != want {
            return Err(Error::ShapeMismatch(format!(
                "case {} with n = {n} needs {want} elements, got {}",
                case.number(),
                elems.len()
            )));
        }
        Ok(BasisFamily { case, n, elems })
    }

    pub fn case(&self) -> DeltaCase {
        self.case
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[E] {
        &self.elems
    }

    pub fn get(&self, x: usize, r: usize, s: usize) -> &E {
        &self.elems[(x * self.n + r) * self.n + s]
    }

    pub fn set(&mut self, x: usize, r: usize, s: usize, e: E) {
        self.elems[(x * self.n + r) * self.n + s] = e;
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> BasisFamily<F> {
        BasisFamily {
            case: self.case,
            n: self.n,
            elems: self.elems.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> BasisFamily<Matrix<T>> {
    /// `E_{r,s}·u` for the units `u` of the division algebra.
    pub fn canonical(n: usize) -> Self {
        let case = DeltaCase::for_kind(T::KIND);
        let mut elems = Vec::new();
        for x in 0..case.labels().len() {
            for r in 0..n {
                for s in 0..n {
                    elems.push(Matrix::unit(n, r, s, T::unit(x)));
                }
            }
        }
        BasisFamily { case, n, elems }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub holds: bool,
    /// The first conjunct that fails, written with 1-based indices.
    pub failing_clause: Option<String>,
    pub clauses_checked: usize,
}

impl fmt::Display for DeltaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failing_clause {
            None => write!(f, "holds ({} clauses)", self.clauses_checked),
            Some(c) => write!(f, "fails at {c}"),
        }
    }
}

fn var(case: DeltaCase, x: usize, r: usize, s: usize) -> String {
    match case {
        DeltaCase::One => format!("X_{{{},{}}}", r + 1, s + 1),
        _ => format!("X^{{({})}}_{{{},{}}}", case.labels()[x], r + 1, s + 1),
    }
}

/// Evaluates every conjunct of the formula for the family's case:
/// `X^{(x)}_{r,s}·X^{(y)}_{s,t} = δ·X^{(z)}_{r,t} ≠ 0` whenever `xy = δz`,
/// and `X^{(x)}_{r,s}·X^{(y)}_{t,l} = 0` whenever `s ≠ t`.
pub fn verify_delta<A: FiniteAlgebra>(alg: &A, fam: &BasisFamily<A::Elem>) -> DeltaReport {
    let case = fam.case;
    let n = fam.n;
    let k = case.labels().len();
    let mut checked = 0;
    let fail = |clause: String, checked: usize| DeltaReport {
        holds: false,
        failing_clause: Some(clause),
        clauses_checked: checked,
    };
    for x in 0..k {
        for y in 0..k {
            let (delta, z) = case.table(x, y);
            for r in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        checked += 1;
                        let prod = alg.mul(fam.get(x, r, s), fam.get(y, s, t));
                        let target = fam.get(z, r, t);
                        let signed = if delta > 0 {
                            target.clone()
                        } else {
                            alg.neg(target)
                        };
                        if prod != signed || alg.is_zero(target) {
                            let sign = if delta > 0 { "" } else { "−" };
                            return fail(
                                format!(
                                    "{}·{} = {sign}{} ≠ 0",
                                    var(case, x, r, s),
                                    var(case, y, s, t),
                                    var(case, z, r, t)
                                ),
                                checked,
                            );
                        }
                    }
                }
            }
        }
    }
    for x in 0..k {
        for y in 0..k {
            for r in 0..n {
                for s in 0..n {
                    for t in (0..n).filter(|&t| t != s) {
                        for l in 0..n {
                            checked += 1;
                            if !alg.is_zero(&alg.mul(fam.get(x, r, s), fam.get(y, t, l))) {
                                return fail(
                                    format!("{}·{} = 0", var(case, x, r, s), var(case, y, t, l)),
                                    checked,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    DeltaReport {
        holds: true,
        failing_clause: None,
        clauses_checked: checked,
    }
}

/// Exact rank test over ℚ.
pub fn check_linear_independence(vectors: &[Vec<Rational>]) -> bool {
    linalg::independent(vectors)
}

impl<E: Clone> BasisFamily<E> {
    /// Linear independence of the family's elements over ℚ.
    pub fn is_independent<A: FiniteAlgebra<Elem = E>>(&self, alg: &A) -> bool {
        let coords: Vec<Vec<Rational>> = self.elems.iter().map(|e| alg.coords(e)).collect();
        check_linear_independence(&coords)
    }
}
