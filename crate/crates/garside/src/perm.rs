//! Simple braids encoded as permutations, with the lattice structure
//! (prefix order, meet) and the combinatorics the normal form relies on.
//!
//! A positive braid in which every pair of strands crosses at most once is
//! determined by the permutation it induces; those braids are exactly the
//! prefixes of the half-twist Δ. All operations here work on the one-line
//! permutation and cost O(n) or O(n²).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::BraidWord;

/// A simple braid on `n` strands: `images[i]` is the 0-based end position of
/// the strand starting at position `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationBraid {
    images: Vec<u8>,
}

impl PermutationBraid {
    /// The trivial braid.
    pub fn identity(n: usize) -> Self {
        PermutationBraid {
            images: (0..n as u8).collect(),
        }
    }

    /// The half-twist Δ, i.e. the order-reversing permutation.
    pub fn delta(n: usize) -> Self {
        PermutationBraid {
            images: (0..n as u8).rev().collect(),
        }
    }

    /// The generator σ_index (1-based).
    pub fn generator(n: usize, index: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::StrandCount(n));
        }
        if index == 0 || index > n - 1 {
            return Err(Error::GeneratorRange {
                index: index as i64,
                max: n - 1,
            });
        }
        let mut s = Self::identity(n);
        s.images.swap(index - 1, index);
        Ok(s)
    }

    /// Build from a 1-based one-line permutation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n < 2 {
            return Err(Error::StrandCount(n));
        }
        let mut seen = vec![false; n];
        let mut raw = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[v - 1] = true;
            raw.push((v - 1) as u8);
        }
        Ok(PermutationBraid { images: raw })
    }

    /// The simple braid represented by a word, if the word is positive and
    /// each pair of strands crosses at most once.
    pub fn from_word(w: &BraidWord) -> Option<Self> {
        if w.iter().any(|(_, inv)| inv) {
            return None;
        }
        let mut p = Self::identity(w.n());
        for (i, _) in w.iter() {
            // appending σ_i crosses the strands currently ending at i-1, i
            p.images
                .iter_mut()
                .for_each(|v| *v = crate::perm::swap_at(*v, (i - 1) as u8));
        }
        if p.crossing_count() == w.len() {
            Some(p)
        } else {
            None
        }
    }

    /// Permutation induced by a word, ignoring signs and crossing
    /// multiplicity.
    pub fn underlying_permutation(w: &BraidWord) -> Self {
        let mut p = Self::identity(w.n());
        for (i, _) in w.iter() {
            p.images
                .iter_mut()
                .for_each(|v| *v = swap_at(*v, (i - 1) as u8));
        }
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n();
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == n - 1 - i)
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    /// 0-based end position of the strand starting at `pos`.
    pub fn image(&self, pos: usize) -> usize {
        self.images[pos] as usize
    }

    /// Composition: `self` applied first, then `other`.
    pub(crate) fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        PermutationBraid {
            images: self.images.iter().map(|&v| other.images[v as usize]).collect(),
        }
    }

    /// Inverse permutation.
    pub(crate) fn invert(&self) -> Self {
        let mut images = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        PermutationBraid { images }
    }

    /// Do the strands starting at `a < b` cross?
    fn crosses(&self, a: usize, b: usize) -> bool {
        self.images[a] > self.images[b]
    }

    /// Number of crossings, i.e. the length of any reduced word.
    pub fn crossing_count(&self) -> usize {
        let n = self.n();
        let mut c = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.crosses(a, b) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Conjugation by Δ: the flip `τ(s) = Δ⁻¹ s Δ`.
    pub fn tau(&self) -> Self {
        let n = self.n();
        PermutationBraid {
            images: (0..n)
                .map(|j| (n - 1) as u8 - self.images[n - 1 - j])
                .collect(),
        }
    }

    pub(crate) fn tau_pow(&self, e: i64) -> Self {
        if e.rem_euclid(2) == 1 {
            self.tau()
        } else {
            self.clone()
        }
    }

    /// The right complement `∂(s) = s⁻¹Δ`, the largest simple `t` with `st` simple.
    pub fn complement(&self) -> Self {
        let n = self.n();
        let inv = self.invert();
        PermutationBraid {
            images: (0..n).map(|j| (n - 1) as u8 - inv.images[j]).collect(),
        }
    }

    /// `∂⁻¹(s) = Δ s⁻¹`, the largest simple `t` with `ts` simple.
    pub(crate) fn complement_inv(&self) -> Self {
        let n = self.n();
        let inv = self.invert();
        PermutationBraid {
            images: (0..n).map(|j| inv.images[n - 1 - j]).collect(),
        }
    }

    /// Prefix order on simple braids: `self ≼ other` iff `self⁻¹·other` is
    /// positive, which on permutations is containment of crossing sets.
    pub fn prefix_le(&self, other: &Self) -> bool {
        assert_eq!(self.n(), other.n(), "prefix_le across strand counts");
        let n = self.n();
        for a in 0..n {
            for b in a + 1..n {
                if self.crosses(a, b) && !other.crosses(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// The ≼-greatest common prefix, by greedy ascent: keep appending any
    /// generator that stays below both arguments.
    pub fn meet(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "meet across strand counts");
        let n = self.n();
        let mut u = Self::identity(n);
        let mut u_inv: Vec<u8> = (0..n as u8).collect();
        loop {
            let mut extended = false;
            for i in 0..n - 1 {
                let a = u_inv[i] as usize;
                let b = u_inv[i + 1] as usize;
                // u·σ_{i+1} stays simple iff a < b; the new crossing is (a, b)
                if a < b && self.crosses(a, b) && other.crosses(a, b) {
                    u.images[a] = (i + 1) as u8;
                    u.images[b] = i as u8;
                    u_inv.swap(i, i + 1);
                    extended = true;
                }
            }
            if !extended {
                return u;
            }
        }
    }

    /// Given `self ≼ t`, the simple braid `v` with `self·v = t`.
    pub(crate) fn left_divide(&self, t: &Self) -> Self {
        debug_assert!(self.prefix_le(t));
        let inv = self.invert();
        PermutationBraid {
            images: inv.images.iter().map(|&v| t.images[v as usize]).collect(),
        }
    }

    /// Product of two simple braids when it is still simple.
    pub fn prod_simple(&self, other: &Self) -> Option<Self> {
        let p = self.then(other);
        if p.crossing_count() == self.crossing_count() + other.crossing_count() {
            Some(p)
        } else {
            None
        }
    }

    /// Generators σ_i with σ_i ≼ s, as 1-based indices (descents).
    pub fn starting_set(&self) -> Result<Vec<usize>> {
        if self.is_identity() {
            return Err(Error::IdentityHasNoDescents);
        }
        Ok((0..self.n() - 1)
            .filter(|&i| self.images[i] > self.images[i + 1])
            .map(|i| i + 1)
            .collect())
    }

    /// Generators σ_i with s ≽ σ_i, as 1-based indices (descents of the inverse).
    pub fn finishing_set(&self) -> Result<Vec<usize>> {
        if self.is_identity() {
            return Err(Error::IdentityHasNoDescents);
        }
        self.invert().starting_set()
    }

    /// Left-weightedness of the pair (self, other): no generator can be pulled
    /// from the head of `other` into `self`. Total; vacuously true when either
    /// side leaves no generator to move.
    pub fn left_weighted(&self, other: &Self) -> bool {
        self.complement().meet(other).is_identity()
    }

    /// A fixed reduced word for the permutation: bubble passes over the
    /// one-line notation, emitting the position of every swap.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut a = self.images.clone();
        let n = a.len();
        let mut word = Vec::with_capacity(self.crossing_count());
        loop {
            let mut swapped = false;
            for i in 0..n - 1 {
                if a[i] > a[i + 1] {
                    a.swap(i, i + 1);
                    word.push(i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                return word;
            }
        }
    }

    /// The canonical word as a `BraidWord`.
    pub fn to_word(&self) -> BraidWord {
        BraidWord::new(
            self.n(),
            self.canonical_word().iter().map(|&i| i as i32).collect(),
        )
        .expect("canonical word is valid")
    }

    /// All n! simple braids on `n` strands, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(PermutationBraid { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Simple braids strictly between the identity and `self` in prefix order.
    pub fn strict_prefixes(&self) -> Vec<Self> {
        Self::all(self.n())
            .into_iter()
            .filter(|u| !u.is_identity() && u != self && u.prefix_le(self))
            .collect()
    }
}

pub(crate) fn swap_at(v: u8, i: u8) -> u8 {
    if v == i {
        i + 1
    } else if v == i + 1 {
        i
    } else {
        v
    }
}

impl std::fmt::Display for PermutationBraid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let word = self.canonical_word();
        if word.is_empty() {
            return write!(f, ".");
        }
        let strs: Vec<String> = word.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

impl Serialize for PermutationBraid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PermutationBraid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        PermutationBraid::from_one_line(&images).map_err(D::Error::custom)
    }
}
