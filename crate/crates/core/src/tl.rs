//! The Temperley-Lieb algebra `TL_n` on planar matchings, loop value
//! `delta = t + t^-1`, and the quotient map from `H_n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::HeckeError;
use crate::hecke::HeckeElt;
use crate::ring::LaurentPoly;

/// A non-crossing perfect matching of `n` bottom points `0..n` and `n` top
/// points `n..2n`, stored as the partner of each point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching(Vec<u8>);

impl Matching {
    pub fn identity(n: usize) -> Self {
        Matching((0..2 * n).map(|p| ((p + n) % (2 * n)) as u8).collect())
    }

    /// The cup-cap generator `e_i` (1-based).
    pub fn e(i: usize, n: usize) -> Result<Self, HeckeError> {
        if i == 0 || i >= n {
            return Err(HeckeError::IndexOutOfRange { index: i, rank: n });
        }
        let mut m = Self::identity(n);
        let k = i - 1;
        for base in [0, n] {
            m.0[base + k] = (base + k + 1) as u8;
            m.0[base + k + 1] = (base + k) as u8;
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.0.len() / 2
    }

    pub fn partner(&self, p: usize) -> usize {
        self.0[p] as usize
    }

    /// Whether the matching is an involution without fixed points whose arcs
    /// do not cross, with points placed around a circle.
    pub fn is_planar(&self) -> bool {
        let n = self.rank();
        // Boundary order: bottom left to right, then top right to left.
        let pos = |p: usize| if p < n { p } else { 3 * n - 1 - p };
        let arcs: Vec<(usize, usize)> = (0..2 * n)
            .filter(|&p| p < self.partner(p))
            .map(|p| {
                let (a, b) = (pos(p), pos(self.partner(p)));
                (a.min(b), a.max(b))
            })
            .collect();
        let involution = (0..2 * n).all(|p| self.partner(p) != p && self.partner(self.partner(p)) == p);
        involution
            && arcs.iter().all(|&(a, b)| {
                arcs.iter().all(|&(c, d)| !(a < c && c < b && b < d))
            })
    }

    /// `self` stacked on top of `below`, and the number of closed loops.
    pub fn compose(&self, below: &Matching) -> (Matching, usize) {
        let n = self.rank();
        let mut out = vec![u8::MAX; 2 * n];
        let mut visited_mid = vec![false; n];
        // Endpoints: bottom of `below` (0..n) and top of `self` (n..2n).
        for start in 0..2 * n {
            if out[start] != u8::MAX {
                continue;
            }
            // (in_upper, point) where the point is local to that diagram.
            let (mut upper, mut p) = (start >= n, start);
            let end = loop {
                let q = if upper { self.partner(p) } else { below.partner(p) };
                match (upper, q < n) {
                    (true, false) => break q,
                    (false, true) => break q,
                    (true, true) => {
                        visited_mid[q] = true;
                        upper = false;
                        p = q + n;
                    }
                    (false, false) => {
                        visited_mid[q - n] = true;
                        upper = true;
                        p = q - n;
                    }
                }
            };
            out[start] = end as u8;
            out[end] = start as u8;
        }
        // Unvisited middle points lie on closed loops.
        let mut loops = 0;
        for s in 0..n {
            if visited_mid[s] {
                continue;
            }
            loops += 1;
            let mut m = s;
            loop {
                visited_mid[m] = true;
                let up = self.partner(m); // in the middle row
                visited_mid[up] = true;
                m = below.partner(up + n) - n;
                if m == s {
                    break;
                }
            }
        }
        (Matching(out), loops)
    }
}

/// `delta = t + t^-1`
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(1, 1), (-1, 1)])
}

/// A `Z[t, t^-1]`-combination of matchings.
#[derive(Clone, PartialEq, Eq)]
pub struct TLElt {
    n: usize,
    terms: BTreeMap<Matching, LaurentPoly>,
}

impl TLElt {
    pub fn zero(n: usize) -> Self {
        TLElt { n, terms: BTreeMap::new() }
    }

    pub fn basis(m: Matching) -> Self {
        let mut e = Self::zero(m.rank());
        e.add_term(m, LaurentPoly::one());
        e
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Matching::identity(n))
    }

    pub fn e(i: usize, n: usize) -> Result<Self, HeckeError> {
        Ok(Self::basis(Matching::e(i, n)?))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Matching, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(LaurentPoly::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// `self * other`: `self` stacked on top of `other`.
    pub fn mul(&self, other: &TLElt) -> Result<TLElt, HeckeError> {
        if self.n != other.n {
            return Err(HeckeError::RankMismatch(self.n, other.n));
        }
        let delta = loop_value();
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (m, loops) = a.compose(b);
                out.add_term(m, &(ca * cb) * &delta.pow(loops as u32));
            }
        }
        Ok(out)
    }
}

impl Add for &TLElt {
    type Output = TLElt;
    fn add(self, rhs: &TLElt) -> TLElt {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &TLElt {
    type Output = TLElt;
    fn neg(self) -> TLElt {
        self.scale(&-LaurentPoly::one())
    }
}

impl Sub for &TLElt {
    type Output = TLElt;
    fn sub(self, rhs: &TLElt) -> TLElt {
        self + &(-rhs)
    }
}

/// # Panics
/// On rank mismatch; use [`TLElt::mul`] to get an error instead.
impl Mul for &TLElt {
    type Output = TLElt;
    fn mul(self, rhs: &TLElt) -> TLElt {
        TLElt::mul(self, rhs).expect("same rank")
    }
}

impl core::fmt::Debug for TLElt {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (&m.0, c))).finish()
    }
}

/// All matchings reachable from the identity by multiplying with the `e_i`.
pub fn basis(n: usize) -> BTreeSet<Matching> {
    let mut seen = BTreeSet::from([Matching::identity(n)]);
    let mut frontier = vec![Matching::identity(n)];
    let gens: Vec<Matching> = (1..n).map(|i| Matching::e(i, n).expect("in range")).collect();
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let (next, _) = m.compose(g);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// `C_n = binom(2n, n) / (n + 1)`
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// The algebra map `H_n -> TL_n`, `b_i -> e_i`, i.e. `T_i -> t e_i - 1`.
pub fn hecke_to_tl(a: &HeckeElt) -> TLElt {
    let n = a.rank();
    let t = LaurentPoly::q_pow(1);
    let images: Vec<TLElt> = (1..n)
        .map(|i| &TLElt::e(i, n).expect("in range").scale(&t) - &TLElt::identity(n))
        .collect();
    let mut out = TLElt::zero(n);
    for (w, c) in a.terms() {
        let mut img = TLElt::identity(n).scale(c);
        for k in w.canonical_word() {
            img = &img * &images[k];
        }
        out = &out + &img;
    }
    out
}

/// Whether the images of the `b_i` satisfy the `b`-relations of `H_n` and
/// the extra relations `b_i b_{i+-1} b_i = b_i`.
pub fn check_quotient(n: usize) -> bool {
    let b = |i| hecke_to_tl(&HeckeElt::b_gen(i, n).expect("in range"));
    let delta = loop_value();
    for i in 1..n {
        if b(i) != TLElt::e(i, n).expect("in range") || &b(i) * &b(i) != b(i).scale(&delta) {
            return false;
        }
        for j in 1..n {
            if i.abs_diff(j) >= 2 && &b(i) * &b(j) != &b(j) * &b(i) {
                return false;
            }
            if i.abs_diff(j) == 1 {
                let hecke = |k| HeckeElt::b_gen(k, n).expect("in range");
                let word = &(&(&hecke(i) * &hecke(j)) * &hecke(i)) - &hecke(i);
                if !hecke_to_tl(&word).is_zero() {
                    return false;
                }
            }
        }
        if i + 1 < n {
            let lhs = &(&(&b(i) * &b(i + 1)) * &b(i)) + &b(i + 1);
            let rhs = &(&(&b(i + 1) * &b(i)) * &b(i + 1)) + &b(i);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
