//! Multi-modular trace fingerprints.
//!
//! Matrices are reduced modulo word-sized primes, which is a ring
//! homomorphism on entries whose denominators avoid the prime. A nonzero
//! residue of `Trd(w(X)) − Trd(w(Y))` therefore proves the exact traces
//! differ, and agreement modulo enough primes proves they are equal: the
//! difference, cleared of denominators, is an integer bounded in terms of
//! the entry sizes and the word length.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::necklace::{suffix_index, suffix_table, Engine};
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalars::{Rational, Scalar};

/// Every pool prime exceeds `2^PRIME_BITS`.
pub(crate) const PRIME_BITS: u64 = 59;
const POOL: usize = 128;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The largest primes below `2^60`, descending.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(POOL);
        let mut c = (1u64 << 60) - 1;
        while out.len() < POOL {
            if is_prime(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// Residue of a rational whose denominator is prime to `p`.
pub(crate) fn reduce_rational(r: &Rational, p: u64) -> u64 {
    let num = reduce_int(r.numer(), p);
    let den = reduce_int(r.denom(), p);
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// Size data that bounds every cleared trace difference.
#[derive(Clone, Debug)]
pub(crate) struct Bound {
    /// Common denominator of all entries of both tuples.
    pub denominator: BigInt,
    /// Bit length of `n·B` where `B` is the largest entry l1-norm after
    /// clearing denominators.
    pub bits_per_letter: u64,
}

impl Bound {
    pub fn new<T: Scalar>(x: &MatrixTuple<T>, y: &MatrixTuple<T>) -> Bound {
        let comps = || {
            x.items()
                .iter()
                .chain(y.items())
                .flat_map(|m| m.entries().iter())
                .map(Scalar::components)
        };
        let mut denominator = BigInt::one();
        for c in comps() {
            for r in &c {
                denominator = denominator.lcm(r.denom());
            }
        }
        let mut b = BigInt::zero();
        for c in comps() {
            let norm: BigInt = c
                .iter()
                .map(|r| (r.numer() * (&denominator / r.denom())).abs())
                .sum();
            if norm > b {
                b = norm;
            }
        }
        let nb = b * BigInt::from(x.n());
        Bound {
            denominator,
            bits_per_letter: nb.bits().max(1),
        }
    }

    /// Bits the product of primes must exceed to certify equality of all
    /// traces of words of length at most `len`.
    pub fn bits_needed(&self, len: usize) -> u64 {
        3 + len as u64 * self.bits_per_letter
    }

    pub fn admits(&self, p: u64) -> bool {
        (&self.denominator % BigInt::from(p)).is_positive()
    }
}

/// Montgomery arithmetic modulo an odd `p < 2^60` with `R = 2^64`.
#[derive(Clone, Copy, Debug)]
struct Mont {
    p: u64,
    neg_inv: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        Mont {
            p,
            neg_inv: inv.wrapping_neg(),
        }
    }

    /// `t·R⁻¹ mod p` for `t < p·R`.
    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let r = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    fn encode(&self, a: u64) -> u64 {
        (((a as u128) << 64) % self.p as u128) as u64
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
}

/// Sums of at most this many products below `p²` stay below `p·2^64`.
const CHUNK: usize = 16;

/// A precomputed right operand: the `W×W` right-multiplication block of
/// every entry, with signs folded in, and the same data rearranged so that
/// each trace-key component of `a·b` is one flat dot product with `a`.
pub(crate) struct ModRhs {
    right: Vec<u64>,
    trace: Vec<u64>,
}

/// Residues of the suffix products over the letters
/// `X_1..X_d, adjoint(X_1)..adjoint(X_d)` and the same for `Y`, with `W`
/// components per entry, in Montgomery form.
pub(crate) struct ModEngine<const W: usize> {
    mont: Mont,
    n: usize,
    k: usize,
    span: usize,
    suffixes: [Vec<ModRhs>; 2],
}

fn reduce_matrix<T: Scalar>(m: &Matrix<T>, p: u64) -> Vec<u64> {
    m.entries()
        .iter()
        .flat_map(|e| {
            e.components()
                .iter()
                .map(|c| reduce_rational(c, p))
                .collect::<Vec<_>>()
        })
        .collect()
}

impl<const W: usize> ModEngine<W> {
    pub fn new<T: Scalar>(x: &MatrixTuple<T>, y: &MatrixTuple<T>, p: u64, span: usize) -> Self {
        assert_eq!(T::KIND.rank(), W);
        let mont = Mont::new(p);
        let k = 2 * x.len();
        let mut e = ModEngine {
            mont,
            n: x.n(),
            k,
            span,
            suffixes: [Vec::new(), Vec::new()],
        };
        for (side, t) in [x, y].into_iter().enumerate() {
            let plain: Vec<Vec<u64>> = t
                .items()
                .iter()
                .cloned()
                .chain(t.items().iter().map(Matrix::adjoint))
                .map(|m| {
                    reduce_matrix(&m, p)
                        .into_iter()
                        .map(|v| mont.encode(v))
                        .collect()
                })
                .collect();
            let mut table: Vec<ModRhs> = Vec::new();
            let mut products: Vec<Vec<u64>> = Vec::new();
            for w in suffix_table(k, span) {
                let prod = if w.len() == 1 {
                    plain[w[0] as usize].clone()
                } else {
                    let head = &products[suffix_index(k, &w[..w.len() - 1])];
                    let mut out = vec![0; head.len()];
                    e.mul_into(head, &table[w[w.len() - 1] as usize], &mut out);
                    out
                };
                table.push(e.rhs(&prod));
                products.push(prod);
            }
            e.suffixes[side] = table;
        }
        e
    }

    fn rhs(&self, m: &[u64]) -> ModRhs {
        let n = self.n;
        let ng = |v: u64| self.mont.neg(v);
        let mut right = Vec::with_capacity(m.len() * W);
        for y in m.chunks(W) {
            match W {
                1 => right.push(y[0]),
                2 => right.extend([y[0], ng(y[1]), y[1], y[0]]),
                _ => right.extend([
                    y[0],
                    ng(y[1]),
                    ng(y[2]),
                    ng(y[3]),
                    y[1],
                    y[0],
                    y[3],
                    ng(y[2]),
                    y[2],
                    ng(y[3]),
                    y[0],
                    y[1],
                    y[3],
                    y[2],
                    ng(y[1]),
                    y[0],
                ]),
            }
        }
        // Component t of Σ_{i,k} a_ik·b_ki pairs a_ik with row t of the
        // block of b_ki.
        let len = n * n * W;
        let mut trace = vec![0; Self::KEY_ROWS * len];
        for t in 0..Self::KEY_ROWS {
            for i in 0..n {
                for k in 0..n {
                    let block = &right[(k * n + i) * W * W..][..W * W];
                    trace[t * len + (i * n + k) * W..][..W].copy_from_slice(&block[t * W..][..W]);
                }
            }
        }
        ModRhs { right, trace }
    }

    /// Output rows of the trace key: both parts for ℚ(√−1), the real part
    /// otherwise (the reduced trace of a quaternion matrix is twice it).
    const KEY_ROWS: usize = if W == 2 { 2 } else { 1 };

    fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        let mut res = 0;
        for (ca, cb) in a.chunks(CHUNK).zip(b.chunks(CHUNK)) {
            let acc: u128 = ca
                .iter()
                .zip(cb)
                .map(|(&u, &v)| u as u128 * v as u128)
                .sum();
            res = self.mont.add(res, self.mont.redc(acc));
        }
        res
    }
}

impl<const W: usize> Engine for ModEngine<W> {
    type M = Vec<u64>;
    type Rhs = ModRhs;
    type Key = [u64; 2];

    fn letters(&self) -> usize {
        self.k
    }

    fn suffix_len(&self) -> usize {
        self.span
    }

    fn identity(&self) -> Vec<u64> {
        let one = self.mont.encode(1);
        let mut v = vec![0; self.n * self.n * W];
        for i in 0..self.n {
            v[(i * self.n + i) * W] = one;
        }
        v
    }

    fn suffix(&self, side: usize, word: &[u8]) -> &ModRhs {
        &self.suffixes[side][suffix_index(self.k, word)]
    }

    fn mul_into(&self, a: &Vec<u64>, b: &ModRhs, out: &mut Vec<u64>) {
        let n = self.n;
        let steps = CHUNK / W;
        for i in 0..n {
            for j in 0..n {
                let mut res = [0u64; W];
                let mut acc = [0u128; W];
                for k in 0..n {
                    let x = &a[(i * n + k) * W..][..W];
                    let r = &b.right[(k * n + j) * W * W..][..W * W];
                    for t in 0..W {
                        for u in 0..W {
                            acc[t] += x[u] as u128 * r[t * W + u] as u128;
                        }
                    }
                    if (k + 1) % steps == 0 || k + 1 == n {
                        for t in 0..W {
                            res[t] = self.mont.add(res[t], self.mont.redc(acc[t]));
                            acc[t] = 0;
                        }
                    }
                }
                out[(i * n + j) * W..][..W].copy_from_slice(&res);
            }
        }
    }

    fn trace_key(&self, a: &Vec<u64>, b: &ModRhs) -> [u64; 2] {
        let len = a.len();
        let mut res = [0u64; 2];
        for (t, r) in res.iter_mut().enumerate().take(Self::KEY_ROWS) {
            *r = self.dot(a, &b.trace[t * len..][..len]);
        }
        res
    }
}
