//! Permutations in one-line notation and their lexicographically minimal
//! reduced words.
//!
//! A permutation `w` of `m` strands sends the strand starting at bottom
//! position `p` to top position `w(p)`. Simple transpositions and positions
//! are 0-based internally; [`Permutation::one_line`] reports the usual 1-based
//! notation.

use alloc::vec::Vec;
use core::fmt;

use crate::cartan::{next_permutation, Seq};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m as u8).collect())
    }

    /// From 1-based one-line notation; `None` unless it is a bijection of `1..=m`.
    pub fn from_one_line(images: &[usize]) -> Option<Self> {
        let m = images.len();
        let mut seen = alloc::vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Some(Permutation(out))
    }

    /// The longest element `w0`.
    pub fn longest(m: usize) -> Self {
        Permutation((0..m as u8).rev().collect())
    }

    /// `s_{k1} s_{k2} ... s_{kr}` as a composition of maps (`s_{kr}` acts first).
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(m);
        for &k in word.iter().rev() {
            w = w.left_mul_simple(k);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Image of bottom position `p` (0-based).
    pub fn image(&self, p: usize) -> usize {
        self.0[p] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0u8; self.0.len()];
        for (p, &x) in self.0.iter().enumerate() {
            inv[x as usize] = p as u8;
        }
        Permutation(inv)
    }

    /// `self o other`
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    /// Pairs of bottom positions `a < b` whose strands cross.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.0.len();
        (0..m).flat_map(move |a| {
            (a + 1..m).filter(move |&b| self.0[a] > self.0[b]).map(move |b| (a, b))
        })
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        self.inversions().count()
    }

    /// `s_k o self`: a crossing at top positions `k, k+1` placed above.
    pub fn left_mul_simple(&self, k: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&x| match x as usize {
                    v if v == k => (k + 1) as u8,
                    v if v == k + 1 => k as u8,
                    _ => x,
                })
                .collect(),
        )
    }

    /// `self o s_k`: a crossing at bottom positions `k, k+1` placed below.
    pub fn right_mul_simple(&self, k: usize) -> Self {
        let mut w = self.0.clone();
        w.swap(k, k + 1);
        Permutation(w)
    }

    /// Whether `l(s_k w) < l(w)`: the strands ending at top `k`, `k+1` cross.
    pub fn is_left_descent(&self, k: usize) -> bool {
        let inv = self.inverse();
        inv.0[k] > inv.0[k + 1]
    }

    /// Whether `l(w s_k) < l(w)`.
    pub fn is_right_descent(&self, k: usize) -> bool {
        self.0[k] > self.0[k + 1]
    }

    /// Lexicographically smallest reduced word `[k1, ..., kr]` with
    /// `w = s_{k1} ... s_{kr}`; the first letter is the topmost crossing.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(w.length());
        'outer: loop {
            for k in 0..w.len().saturating_sub(1) {
                if w.is_left_descent(k) {
                    word.push(k);
                    w = w.left_mul_simple(k);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// The top labels of a diagram with bottom `seq`: `top[w(p)] = seq[p]`.
    pub fn apply_to_seq(&self, seq: &Seq) -> Seq {
        let mut top = seq.0.clone();
        for (p, &x) in self.0.iter().enumerate() {
            top[x as usize] = seq.0[p];
        }
        Seq(top)
    }

    /// All of `S_m` in lexicographic order of one-line notation.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (0..m as u8).collect();
        let mut out = alloc::vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }

    /// Permutations carrying `bottom` to `top` (`w(bottom) = top`).
    pub fn transporting(bottom: &Seq, top: &Seq) -> Vec<Permutation> {
        if bottom.len() != top.len() {
            return Vec::new();
        }
        Self::all(bottom.len())
            .into_iter()
            .filter(|w| &w.apply_to_seq(bottom) == top)
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every word over `0..m-1` of length `l(w)` whose product is `w`.
    fn reduced_words_brute(w: &Permutation) -> Vec<Vec<usize>> {
        let m = w.len();
        let l = w.length();
        let gens = m.saturating_sub(1);
        let mut out = Vec::new();
        if gens == 0 {
            return if l == 0 { alloc::vec![Vec::new()] } else { out };
        }
        let total = gens.pow(l as u32);
        for code in 0..total {
            let mut word = Vec::with_capacity(l);
            let mut c = code;
            for _ in 0..l {
                word.push(c % gens);
                c /= gens;
            }
            word.reverse();
            if Permutation::from_word(m, &word) == *w {
                out.push(word);
            }
        }
        out
    }

    #[test]
    fn canonical_words_small() {
        assert!(Permutation::identity(3).canonical_word().is_empty());
        let s = Permutation::from_one_line(&[2, 1]).unwrap();
        assert_eq!(s.canonical_word(), alloc::vec![0]);
        let w0 = Permutation::from_one_line(&[3, 2, 1]).unwrap();
        assert_eq!(w0.canonical_word(), alloc::vec![0, 1, 0]);
    }

    #[test]
    fn canonical_word_is_lex_min_reduced_word() {
        for m in 1..=4 {
            for w in Permutation::all(m) {
                let brute = reduced_words_brute(&w);
                let min = brute.iter().min().expect("w has a reduced word");
                assert_eq!(&w.canonical_word(), min, "w = {w:?}");
            }
        }
    }

    #[test]
    fn group_structure() {
        for w in Permutation::all(4) {
            assert!(w.compose(&w.inverse()).is_identity());
            assert_eq!(Permutation::from_word(4, &w.canonical_word()), w);
            for k in 0..3 {
                let sw = w.left_mul_simple(k);
                assert_eq!(sw.length() < w.length(), w.is_left_descent(k));
                let ws = w.right_mul_simple(k);
                assert_eq!(ws.length() < w.length(), w.is_right_descent(k));
            }
        }
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::longest(4).length(), 6);
        assert!(Permutation::from_one_line(&[1, 1]).is_none());
    }

    #[test]
    fn sequences_are_transported() {
        let bottom = Seq(alloc::vec![0, 0, 1]);
        let top = Seq(alloc::vec![0, 1, 0]);
        let ws = Permutation::transporting(&bottom, &top);
        assert_eq!(ws.len(), 2);
        for w in ws {
            assert_eq!(w.apply_to_seq(&bottom), top);
        }
    }
}
