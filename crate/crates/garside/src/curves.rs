//! Braid action on isotopy classes of round curves in the punctured disk.
//!
//! Curves are modelled by conjugacy classes in the free group π_1 of the
//! punctured disk: the curve enclosing punctures p..q is the class of
//! x_p x_{p+1} ⋯ x_q. Braid generators act through the Artin automorphisms,
//! leftmost letter first, and roundness detection is exact comparison of
//! cyclically reduced words.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::NormalForm;
use crate::word::BraidWord;

/// An essential round curve: encloses the consecutive punctures p..q,
/// with 1 ≤ p < q ≤ n and (p, q) ≠ (1, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RoundCurve {
    pub p: usize,
    pub q: usize,
}

impl RoundCurve {
    pub fn new(n: usize, p: usize, q: usize) -> Result<Self> {
        if p >= 1 && p < q && q <= n && !(p == 1 && q == n) {
            Ok(RoundCurve { p, q })
        } else {
            Err(Error::InvalidCurve { n, p, q })
        }
    }

    /// The free-group conjugacy class x_p ⋯ x_q of the curve.
    pub fn class(&self, n: usize) -> CyclicClass {
        CyclicClass::new(n, (self.p..=self.q).map(|i| i as i32).collect())
            .expect("interval letters are valid")
    }
}

impl std::fmt::Display for RoundCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.p, self.q)
    }
}

/// All essential round curves for `n` strands, sorted; there are
/// n(n-1)/2 - 1 of them.
pub fn all_round_curves(n: usize) -> Vec<RoundCurve> {
    let mut out = Vec::new();
    for p in 1..=n {
        for q in p + 1..=n {
            if let Ok(c) = RoundCurve::new(n, p, q) {
                out.push(c);
            }
        }
    }
    out
}

/// A conjugacy class of the free group on x_1..x_n: a cyclically reduced
/// cyclic word, stored as its minimal rotation. Letters are nonzero signed
/// integers, `i` for x_i and `-i` for x_i⁻¹.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclicClass {
    n: usize,
    letters: Vec<i32>,
}

impl CyclicClass {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::StrandCount(n));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > n {
                return Err(Error::GeneratorRange {
                    index: l as i64,
                    max: n,
                });
            }
        }
        Ok(Self::canonical(n, letters))
    }

    fn canonical(n: usize, letters: Vec<i32>) -> Self {
        let reduced = cyclic_reduce(letters);
        let letters = minimal_rotation(reduced);
        CyclicClass { n, letters }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        let inv: Vec<i32> = self.letters.iter().rev().map(|&l| -l).collect();
        Self::canonical(self.n, inv)
    }

    /// Total exponent of each x_i in the class (conjugation-invariant).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.n];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            sums[i] += l.signum() as i64;
        }
        sums
    }
}

impl std::fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("x{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn free_reduce(letters: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(letters: Vec<i32>) -> Vec<i32> {
    let mut w = free_reduce(letters);
    while w.len() >= 2 && w.first().copied() == w.last().map(|&l| -l) {
        w.pop();
        w.remove(0);
        w = free_reduce(w);
    }
    w
}

fn minimal_rotation(letters: Vec<i32>) -> Vec<i32> {
    if letters.len() <= 1 {
        return letters;
    }
    let k = letters.len();
    let mut best = 0usize;
    for cand in 1..k {
        for j in 0..k {
            let a = letters[(cand + j) % k];
            let b = letters[(best + j) % k];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    best = cand;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    (0..k).map(|j| letters[(best + j) % k]).collect()
}

/// One Artin generator applied to one free-group letter.
/// σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i; the inverse letter applies
/// the inverse automorphism.
fn apply_generator(gen: usize, inverse: bool, letter: i32, out: &mut Vec<i32>) {
    let i = gen as i32;
    let idx = letter.unsigned_abs() as i32;
    let positive = letter > 0;
    if !inverse {
        if idx == i {
            if positive {
                out.extend_from_slice(&[i, i + 1, -i]);
            } else {
                out.extend_from_slice(&[i, -(i + 1), -i]);
            }
        } else if idx == i + 1 {
            out.push(if positive { i } else { -i });
        } else {
            out.push(letter);
        }
    } else if idx == i {
        out.push(if positive { i + 1 } else { -(i + 1) });
    } else if idx == i + 1 {
        if positive {
            out.extend_from_slice(&[-(i + 1), i, i + 1]);
        } else {
            out.extend_from_slice(&[-(i + 1), -i, i + 1]);
        }
    } else {
        out.push(letter);
    }
}

/// Apply a braid word to a curve class, leftmost letter first.
pub fn artin_apply(w: &BraidWord, c: &CyclicClass) -> Result<CyclicClass> {
    if w.n() != c.n {
        return Err(Error::StrandMismatch(w.n(), c.n));
    }
    let mut letters = c.letters.clone();
    for (gen, inverse) in w.iter() {
        let mut next = Vec::with_capacity(letters.len() * 2);
        for &l in &letters {
            apply_generator(gen, inverse, l, &mut next);
        }
        letters = cyclic_reduce(next);
    }
    Ok(CyclicClass::canonical(c.n, letters))
}

/// Recognize the class of a round curve (in either orientation).
pub fn round_of_class(c: &CyclicClass) -> Option<RoundCurve> {
    detect_positive_interval(c).or_else(|| detect_positive_interval(&c.inverse()))
}

fn detect_positive_interval(c: &CyclicClass) -> Option<RoundCurve> {
    if c.letters.len() < 2 {
        return None;
    }
    let first = *c.letters.first()?;
    if first <= 0 {
        return None;
    }
    for (j, &l) in c.letters.iter().enumerate() {
        if l != first + j as i32 {
            return None;
        }
    }
    let p = first as usize;
    let q = p + c.letters.len() - 1;
    RoundCurve::new(c.n, p, q).ok()
}

/// Image of a round curve under a braid, as an interval if it is still round.
pub fn image_of_round(x: &NormalForm, c: &RoundCurve) -> Option<RoundCurve> {
    let class = c.class(x.n());
    let image = artin_apply(&x.to_word(), &class).expect("matching strand counts");
    round_of_class(&image)
}

/// A step of the BGN prefix scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanStep {
    /// Image after applying Δ^p.
    DeltaPower { exponent: i64, image: RoundCurve },
    /// Image after the next normal-form factor (1-based index), round or not.
    Factor {
        index: usize,
        image: Option<RoundCurve>,
    },
}

impl ScanStep {
    pub fn image(&self) -> Option<RoundCurve> {
        match self {
            ScanStep::DeltaPower { image, .. } => Some(*image),
            ScanStep::Factor { image, .. } => *image,
        }
    }
}

/// Trace of a round curve through the normal-form prefixes of a braid.
///
/// Scanning stops at the first non-round intermediate image: the final image
/// is then certainly not round either.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BgnTrace {
    pub curve: RoundCurve,
    pub steps: Vec<ScanStep>,
    pub exited_early: bool,
    /// The image under the whole braid, when every prefix stayed round.
    pub final_image: Option<RoundCurve>,
}

/// Apply Δ^p, then each factor in order, recording the round image after
/// each prefix and exiting at the first non-round one.
pub fn bgn_scan(x: &NormalForm, c: &RoundCurve) -> BgnTrace {
    let n = x.n();
    let delta_word = crate::perm::PermutationBraid::delta(n).to_word();
    let power_word = if x.inf() >= 0 {
        delta_word.repeat(x.inf() as usize)
    } else {
        delta_word.inverse_word().repeat((-x.inf()) as usize)
    };
    let mut class = artin_apply(&power_word, &c.class(n)).expect("matching strand counts");
    // Δ^p maps round curves to round curves
    let after_delta =
        round_of_class(&class).expect("a power of the half-twist preserves roundness");
    let mut steps = vec![ScanStep::DeltaPower {
        exponent: x.inf(),
        image: after_delta,
    }];
    for (i, factor) in x.factors().iter().enumerate() {
        class = artin_apply(&factor.to_word(), &class).expect("matching strand counts");
        let image = round_of_class(&class);
        let round = image.is_some();
        steps.push(ScanStep::Factor {
            index: i + 1,
            image,
        });
        if !round {
            return BgnTrace {
                curve: *c,
                steps,
                exited_early: i + 1 < x.canonical_length(),
                final_image: None,
            };
        }
    }
    let final_image = steps.last().and_then(|s| s.image());
    BgnTrace {
        curve: *c,
        steps,
        exited_early: false,
        final_image,
    }
}
