//! Simultaneous unitary similarity of matrix tuples.
//!
//! Two tuples `X, Y ∈ M_n(D)^d` are simultaneously unitarily similar over
//! the real closure exactly when every word in the letters and their
//! adjoints has the same reduced trace on both, and words of length at
//! most `n²` suffice. Reduced traces are invariant under rotation of the
//! word, so only least rotations (necklaces) are scanned.
//!
//! ```
//! use csai::matrix::{Matrix, MatrixTuple};
//! use csai::scalars::int;
//! use csai::words::{decide_similarity, ScanOptions};
//!
//! let x = MatrixTuple::new(vec![Matrix::unit(2, 0, 1, int(1))]).unwrap();
//! let y = MatrixTuple::new(vec![Matrix::unit(2, 0, 1, int(2))]).unwrap();
//! let v = decide_similarity(&x, &y, &ScanOptions::default()).unwrap();
//! assert_eq!(v.witness.unwrap().to_string(), "x1 s1");
//! ```

mod modular;
pub mod necklace;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalars::{Kind, Scalar};

pub use modular::{is_prime, primes};
use modular::{Bound, ModEngine, PRIME_BITS};
use necklace::{search, suffix_index, suffix_table, Engine};

/// `x_i` or its adjoint `x_i^σ` (written `si`). Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub adjoint: bool,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.adjoint { 's' } else { 'x' }, self.index)
    }
}

/// A nonempty word over `x_1..x_d, x_1^σ..x_d^σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() || letters.iter().any(|l| l.index == 0) {
            return Err(Error::Invalid(
                "words are nonempty with 1-based letters".into(),
            ));
        }
        Ok(Word { letters })
    }

    /// From alphabet positions: `0..d` are `x_1..x_d`, `d..2d` their adjoints.
    pub fn from_indices(d: usize, idx: &[u8]) -> Self {
        let letters = idx
            .iter()
            .map(|&c| {
                let c = c as usize;
                Letter {
                    index: c % d + 1,
                    adjoint: c >= d,
                }
            })
            .collect();
        Word { letters }
    }

    pub fn to_indices(&self, d: usize) -> Vec<u8> {
        self.letters
            .iter()
            .map(|l| (l.index - 1 + if l.adjoint { d } else { 0 }) as u8)
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Rotation by `r` letters to the left.
    pub fn rotate(&self, r: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.rotate_left(r % self.len());
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                let (head, num) = tok.split_at(1);
                let adjoint = match head {
                    "x" => false,
                    "s" => true,
                    _ => return Err(Error::Parse(format!("bad letter {tok:?}"))),
                };
                let index = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
                Ok(Letter { index, adjoint })
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

/// Words of length `1..=max_len` in the order length, then alphabet
/// `x_1 < … < x_d < x_1^σ < … < x_d^σ`. With `dedup_cyclic` only least
/// rotations are produced.
pub fn enumerate_words(d: usize, max_len: usize, dedup_cyclic: bool) -> impl Iterator<Item = Word> {
    let k = 2 * d;
    (1..=max_len).flat_map(move |len| {
        let ws = if dedup_cyclic {
            necklace::necklaces(k, len)
        } else {
            necklace::all_words(k, len)
        };
        ws.into_iter().map(move |w| Word::from_indices(d, &w))
    })
}

/// The matrix `w(X, adjoint(X))`.
pub fn evaluate_word<T: Scalar>(x: &MatrixTuple<T>, w: &Word) -> Result<Matrix<T>> {
    let d = x.len();
    let mut acc: Option<Matrix<T>> = None;
    for l in w.letters() {
        if l.index == 0 || l.index > d {
            return Err(Error::LetterOutOfRange { index: l.index, d });
        }
        let m = x.get(l.index - 1);
        let m = if l.adjoint { m.adjoint() } else { m.clone() };
        acc = Some(match acc {
            None => m,
            Some(a) => &a * &m,
        });
    }
    Ok(acc.expect("words are nonempty"))
}

/// `Trd(w(X, adjoint(X)))`.
pub fn word_trace<T: Scalar>(x: &MatrixTuple<T>, w: &Word) -> Result<T::Center> {
    Ok(evaluate_word(x, w)?.reduced_trace())
}

/// `(I − S)(I + S)⁻¹` for anti-hermitian `S`, which is unitary.
pub fn cayley_unitary<T: Scalar>(s: &Matrix<T>) -> Result<Matrix<T>> {
    if !s.is_anti_hermitian() {
        return Err(Error::NotAntiHermitian);
    }
    let id = Matrix::identity(s.n());
    let inv = (&id + s).inverse().map_err(|_| Error::SingularCayley)?;
    Ok(&(&id - s) * &inv)
}

/// `(adjoint(O)·X_i·O)_i`.
pub fn conjugate_tuple<T: Scalar>(x: &MatrixTuple<T>, o: &Matrix<T>) -> MatrixTuple<T> {
    let oa = o.adjoint();
    x.map(|m| &(&oa * m) * o)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Equivalent,
    Inequivalent,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Equivalent => "equivalent",
            Outcome::Inequivalent => "inequivalent",
        })
    }
}

/// Result of [`decide_similarity`]. An inequivalent verdict carries the
/// witness and its two exact reduced traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityVerdict<T: Scalar> {
    pub outcome: Outcome,
    pub witness: Option<Word>,
    pub traces: Option<(T::Center, T::Center)>,
    /// Largest word length scanned.
    pub max_len: usize,
}

impl<T: Scalar> SimilarityVerdict<T> {
    pub fn is_equivalent(&self) -> bool {
        self.outcome == Outcome::Equivalent
    }
}

/// How word traces are compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    /// Residues modulo large primes, falling back to exact arithmetic if
    /// the prime pool cannot certify the bound.
    #[default]
    Auto,
    /// Exact rational arithmetic throughout.
    Exact,
    /// Residues only; fails if the pool is too small.
    Modular,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanOptions {
    /// Longest word scanned; `n²` when absent.
    pub max_len: Option<usize>,
    pub backend: Backend,
    /// Split the scan over the first letter with rayon.
    pub parallel: bool,
}

impl ScanOptions {
    pub fn with_max_len(max_len: usize) -> Self {
        ScanOptions {
            max_len: Some(max_len),
            ..Self::default()
        }
    }
}

/// Longest precomputed suffix: up to three letters while the table stays
/// small.
fn suffix_span(k: usize, max_len: usize) -> usize {
    (1..=3)
        .rev()
        .find(|&s| k.pow(s as u32) <= 4096 && s <= max_len)
        .unwrap_or(1)
}

struct ExactEngine<T> {
    n: usize,
    k: usize,
    span: usize,
    suffixes: [Vec<Matrix<T>>; 2],
}

impl<T: Scalar> ExactEngine<T> {
    fn new(x: &MatrixTuple<T>, y: &MatrixTuple<T>, span: usize) -> Self {
        let k = 2 * x.len();
        let table = |t: &MatrixTuple<T>| {
            let mut v: Vec<Matrix<T>> = t.items().to_vec();
            v.extend(t.items().iter().map(Matrix::adjoint));
            for w in suffix_table(k, span).into_iter().skip(k) {
                let head = &v[suffix_index(k, &w[..w.len() - 1])];
                let prod = head * &v[w[w.len() - 1] as usize];
                v.push(prod);
            }
            v
        };
        ExactEngine {
            n: x.n(),
            k,
            span,
            suffixes: [table(x), table(y)],
        }
    }
}

impl<T: Scalar> Engine for ExactEngine<T> {
    type M = Matrix<T>;
    type Rhs = Matrix<T>;
    type Key = T::Center;

    fn letters(&self) -> usize {
        self.k
    }

    fn suffix_len(&self) -> usize {
        self.span
    }

    fn identity(&self) -> Matrix<T> {
        Matrix::identity(self.n)
    }

    fn suffix(&self, side: usize, word: &[u8]) -> &Matrix<T> {
        &self.suffixes[side][suffix_index(self.k, word)]
    }

    fn mul_into(&self, a: &Matrix<T>, b: &Matrix<T>, out: &mut Matrix<T>) {
        *out = a * b;
    }

    fn trace_key(&self, a: &Matrix<T>, b: &Matrix<T>) -> T::Center {
        a.reduced_trace_of_product(b)
    }
}

fn modular_search<T: Scalar>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    max_len: usize,
    parallel: bool,
) -> (Option<Vec<u8>>, bool) {
    let bound = Bound::new(x, y);
    let span = suffix_span(2 * x.len(), max_len);
    let mut best: Option<Vec<u8>> = None;
    let mut bits = 0;
    for &p in primes() {
        let needed = bound.bits_needed(best.as_ref().map_or(max_len, Vec::len));
        if bits >= needed {
            return (best, true);
        }
        if !bound.admits(p) {
            continue;
        }
        best = match T::KIND {
            Kind::Real => search(&ModEngine::<1>::new(x, y, p, span), max_len, best, parallel),
            Kind::Complex => search(&ModEngine::<2>::new(x, y, p, span), max_len, best, parallel),
            Kind::Quaternion => {
                search(&ModEngine::<4>::new(x, y, p, span), max_len, best, parallel)
            }
        };
        bits += PRIME_BITS;
    }
    let needed = bound.bits_needed(best.as_ref().map_or(max_len, Vec::len));
    (best, bits >= needed)
}

/// Decides simultaneous unitary similarity of `x` and `y` by scanning
/// word traces up to `max_len` (default `n²`).
///
/// The witness, if any, is the least differing necklace in the order
/// length, then lexicographic.
pub fn decide_similarity<T: Scalar>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    options: &ScanOptions,
) -> Result<SimilarityVerdict<T>> {
    if x.n() != y.n() {
        return Err(Error::ShapeMismatch(format!("n = {} vs {}", x.n(), y.n())));
    }
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "d = {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let max_len = options.max_len.unwrap_or(x.n() * x.n());
    if max_len == 0 {
        return Err(Error::Invalid("max_len must be at least 1".into()));
    }
    let best = match options.backend {
        Backend::Exact => search(
            &ExactEngine::new(x, y, suffix_span(2 * x.len(), max_len)),
            max_len,
            None,
            options.parallel,
        ),
        Backend::Modular | Backend::Auto => {
            let (best, certified) = modular_search(x, y, max_len, options.parallel);
            if certified {
                best
            } else if options.backend == Backend::Modular {
                return Err(Error::Invalid("prime pool too small for this bound".into()));
            } else {
                search(
                    &ExactEngine::new(x, y, suffix_span(2 * x.len(), max_len)),
                    max_len,
                    best,
                    options.parallel,
                )
            }
        }
    };
    Ok(match best {
        None => SimilarityVerdict {
            outcome: Outcome::Equivalent,
            witness: None,
            traces: None,
            max_len,
        },
        Some(idx) => {
            let w = Word::from_indices(x.len(), &idx);
            let tx = word_trace(x, &w)?;
            let ty = word_trace(y, &w)?;
            if tx == ty {
                return Err(Error::Inconsistent(format!(
                    "witness {w} does not separate"
                )));
            }
            SimilarityVerdict {
                outcome: Outcome::Inequivalent,
                witness: Some(w),
                traces: Some((tx, ty)),
                max_len,
            }
        }
    })
}
