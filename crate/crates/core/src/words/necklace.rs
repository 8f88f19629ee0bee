//! Necklace enumeration and the pruned word search built on it.
//!
//! Words are sequences over `0..k`. A necklace is a word that is the
//! lexicographically least of its rotations. The FKM recursion walks the
//! tree of prenecklaces, in which every prefix of a node is again a node,
//! so one walk visits the necklaces of every length up to the bound in
//! lexicographic order within each length.

use rayon::prelude::*;

/// Necklaces of length exactly `len` over `k` letters, in lexicographic
/// order.
pub fn necklaces(k: usize, len: usize) -> Vec<Vec<u8>> {
    fn rec(t: usize, p: usize, len: usize, k: usize, a: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if t == len {
            if len.is_multiple_of(p) {
                out.push(a.clone());
            }
            return;
        }
        let start = a[t - p] as usize;
        for c in start..k {
            a.push(c as u8);
            rec(t + 1, if c == start { p } else { t + 1 }, len, k, a, out);
            a.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 || k == 0 {
        return out;
    }
    let mut a = Vec::with_capacity(len);
    for c in 0..k {
        a.push(c as u8);
        rec(1, 1, len, k, &mut a, &mut out);
        a.pop();
    }
    out
}

/// All `k^len` words of length `len`, in lexicographic order.
pub fn all_words(k: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut w = vec![0u8; len];
    if k == 0 {
        return out;
    }
    loop {
        out.push(w.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (w[i] as usize) + 1 < k {
                w[i] += 1;
                break;
            }
            w[i] = 0;
        }
    }
}

/// Least rotation of a word.
pub fn canonical_rotation(w: &[u8]) -> Vec<u8> {
    (0..w.len().max(1))
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

/// Evaluation backend for the search. Side 0 is `X`, side 1 is `Y`.
///
/// Products of short runs of letters ("suffixes", at most
/// [`Engine::suffix_len`] letters) are precomputed right operands, possibly
/// in a different representation from the running prefix products.
pub(crate) trait Engine: Sync {
    type M: Clone + Send;
    type Rhs;
    type Key: PartialEq;

    fn letters(&self) -> usize;
    fn suffix_len(&self) -> usize;
    fn identity(&self) -> Self::M;
    /// The product of the given letters, `1 ≤ len ≤ suffix_len`.
    fn suffix(&self, side: usize, word: &[u8]) -> &Self::Rhs;
    fn mul_into(&self, a: &Self::M, b: &Self::Rhs, out: &mut Self::M);
    /// Trace key of `a·b`; equal keys mean equal reduced traces.
    fn trace_key(&self, a: &Self::M, b: &Self::Rhs) -> Self::Key;
}

/// Index of a word of length `1..=s` in a table listing all words of
/// length 1, then 2, and so on, each block in lexicographic order.
pub(crate) fn suffix_index(k: usize, word: &[u8]) -> usize {
    let offset: usize = (1..word.len()).map(|l| k.pow(l as u32)).sum();
    offset + word.iter().fold(0, |acc, &c| acc * k + c as usize)
}

/// All words of length `1..=s` in [`suffix_index`] order.
pub(crate) fn suffix_table(k: usize, s: usize) -> Vec<Vec<u8>> {
    (1..=s).flat_map(|l| all_words(k, l)).collect()
}

/// `(length, lex)` order on words.
pub(crate) fn word_less(a: &[u8], b: &[u8]) -> bool {
    (a.len(), a) < (b.len(), b)
}

struct Search<'a, E: Engine> {
    e: &'a E,
    max_len: usize,
    span: usize,
    word: Vec<u8>,
    prefix: [Vec<E::M>; 2],
    best: Option<Vec<u8>>,
}

impl<'a, E: Engine> Search<'a, E> {
    fn new(e: &'a E, max_len: usize, best: Option<Vec<u8>>) -> Self {
        let id = e.identity();
        Search {
            e,
            max_len,
            span: e.suffix_len().max(1),
            word: Vec::with_capacity(max_len),
            prefix: [vec![id.clone(); max_len + 1], vec![id; max_len + 1]],
            best,
        }
    }

    /// `word` has length `t ≥ 1` and is a prenecklace with period `p`.
    ///
    /// `prefix[u]` holds the product of the first `u` letters whenever a
    /// node at depth `u + span` is still reachable, so each node reads its
    /// trace off one stored prefix and one precomputed suffix.
    fn node(&mut self, t: usize, p: usize) {
        if let Some(b) = &self.best {
            if t > b.len() || (t == b.len() && self.word[..] >= b[..]) {
                return;
            }
        }
        let base = t.saturating_sub(self.span);
        if t.is_multiple_of(p) {
            let kx = self
                .e
                .trace_key(&self.prefix[0][base], self.e.suffix(0, &self.word[base..]));
            let ky = self
                .e
                .trace_key(&self.prefix[1][base], self.e.suffix(1, &self.word[base..]));
            if kx != ky {
                self.best = Some(self.word.clone());
                return;
            }
        }
        let limit = self
            .best
            .as_ref()
            .map_or(self.max_len, |b| b.len().min(self.max_len));
        if t >= limit {
            return;
        }
        if t + self.span <= limit {
            for side in 0..2 {
                let tail = self.e.suffix(side, &self.word[base..]);
                let (done, rest) = self.prefix[side].split_at_mut(t);
                self.e.mul_into(&done[base], tail, &mut rest[0]);
            }
        }
        let start = self.word[t - p] as usize;
        for c2 in start..self.e.letters() {
            self.word.push(c2 as u8);
            self.node(t + 1, if c2 == start { p } else { t + 1 });
            self.word.pop();
        }
    }

    fn run_subtree(&mut self, c: usize) {
        self.word.clear();
        self.word.push(c as u8);
        self.node(1, 1);
    }
}

/// Finds the `(length, lex)`-least necklace of length `≤ max_len` whose
/// trace keys differ, among words before `best` when given.
pub(crate) fn search<E: Engine>(
    e: &E,
    max_len: usize,
    best: Option<Vec<u8>>,
    parallel: bool,
) -> Option<Vec<u8>> {
    if max_len == 0 {
        return best;
    }
    if parallel {
        let found: Vec<Option<Vec<u8>>> = (0..e.letters())
            .into_par_iter()
            .map(|c| {
                let mut s = Search::new(e, max_len, best.clone());
                s.run_subtree(c);
                s.best
            })
            .collect();
        found.into_iter().flatten().fold(best, |acc, w| match acc {
            Some(b) if !word_less(&w, &b) => Some(b),
            _ => Some(w),
        })
    } else {
        let mut s = Search::new(e, max_len, best);
        for c in 0..e.letters() {
            s.run_subtree(c);
        }
        s.best
    }
}
