//! Left normal forms Δ^p·x_1⋯x_r and their group arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::PermutationBraid;
use crate::word::BraidWord;

/// The unique left normal form of a braid: a power of Δ followed by a
/// left-weighted sequence of simple factors, none trivial, none Δ.
///
/// Two `NormalForm`s are equal as group elements iff they are equal as
/// values, so the derived `Eq`/`Ord`/`Hash` are canonical. Deserialization
/// re-checks the invariants and rejects anything that is not a normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NormalForm {
    n: usize,
    #[serde(rename = "p")]
    inf: i64,
    factors: Vec<PermutationBraid>,
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            p: i64,
            factors: Vec<PermutationBraid>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let nf = NormalForm {
            n: raw.n,
            inf: raw.p,
            factors: raw.factors,
        };
        nf.validate().map_err(serde::de::Error::custom)?;
        Ok(nf)
    }
}

impl NormalForm {
    pub fn identity(n: usize) -> Self {
        NormalForm {
            n,
            inf: 0,
            factors: Vec::new(),
        }
    }

    /// Δ^p as a normal form.
    pub fn delta_power(n: usize, p: i64) -> Self {
        NormalForm {
            n,
            inf: p,
            factors: Vec::new(),
        }
    }

    /// Normal form of a single simple braid (which may be trivial or Δ).
    pub fn of_simple(s: &PermutationBraid) -> Self {
        normalize(s.n(), 0, vec![s.clone()])
    }

    /// Compute the left normal form of a word.
    pub fn from_word(w: &BraidWord) -> Self {
        let n = w.n();
        let mut p: i64 = 0;
        let mut factors: Vec<PermutationBraid> = Vec::with_capacity(w.len());
        for (i, inverse) in w.iter() {
            let gen = PermutationBraid::generator(n, i).expect("validated word");
            if inverse {
                // σ_i⁻¹ = Δ⁻¹·(Δσ_i⁻¹); pulling Δ⁻¹ to the front τ-twists
                // everything collected so far
                p -= 1;
                for f in factors.iter_mut() {
                    *f = f.tau();
                }
                factors.push(PermutationBraid::delta(n).then(&gen));
            } else {
                factors.push(gen);
            }
        }
        normalize(n, p, factors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The infimum p.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    /// The supremum p + r.
    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    /// The canonical length r.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[PermutationBraid] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Product of two braids given by their normal forms.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "mul across strand counts");
        let mut factors: Vec<PermutationBraid> = self
            .factors
            .iter()
            .map(|f| f.tau_pow(other.inf))
            .collect();
        factors.extend(other.factors.iter().cloned());
        normalize(self.n, self.inf + other.inf, factors)
    }

    /// The inverse braid, in normal form.
    pub fn inverse(&self) -> Self {
        // x⁻¹ = x_r⁻¹ ⋯ x_1⁻¹ Δ⁻p, with s⁻¹ = Δ⁻¹·(Δs⁻¹)
        let mut p: i64 = 0;
        let mut factors: Vec<PermutationBraid> = Vec::with_capacity(self.factors.len());
        for s in self.factors.iter().rev() {
            p -= 1;
            for f in factors.iter_mut() {
                *f = f.tau();
            }
            factors.push(s.complement_inv());
        }
        // trailing Δ^{-p}
        for f in factors.iter_mut() {
            *f = f.tau_pow(self.inf);
        }
        normalize(self.n, p - self.inf, factors)
    }

    /// m-fold power (negative m through the inverse).
    pub fn power(&self, m: i64) -> Self {
        if m < 0 {
            return self.inverse().power(-m);
        }
        let mut acc = NormalForm::identity(self.n);
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    /// g⁻¹·self·g.
    pub fn conjugate(&self, g: &Self) -> Self {
        g.inverse().mul(self).mul(g)
    }

    /// s⁻¹·self·s for a simple conjugator.
    pub fn conjugate_by_simple(&self, s: &PermutationBraid) -> Self {
        self.conjugate(&NormalForm::of_simple(s))
    }

    /// Conjugation by Δ, factorwise.
    pub fn conjugate_by_delta(&self) -> Self {
        NormalForm {
            n: self.n,
            inf: self.inf,
            factors: self.factors.iter().map(|f| f.tau()).collect(),
        }
    }

    /// This braid as a simple element, when it is one (1, Δ, or a single
    /// factor).
    pub fn as_simple(&self) -> Option<PermutationBraid> {
        match (self.inf, self.factors.len()) {
            (0, 0) => Some(PermutationBraid::identity(self.n)),
            (1, 0) => Some(PermutationBraid::delta(self.n)),
            (0, 1) => Some(self.factors[0].clone()),
            _ => None,
        }
    }

    /// A word representing this braid: Δ^p expanded, then each factor.
    pub fn to_word(&self) -> BraidWord {
        let delta_word = PermutationBraid::delta(self.n).to_word();
        let mut w = BraidWord::empty(self.n).expect("n >= 2");
        if self.inf >= 0 {
            w = w.concat(&delta_word.repeat(self.inf as usize)).unwrap();
        } else {
            w = w
                .concat(&delta_word.inverse_word().repeat((-self.inf) as usize))
                .unwrap();
        }
        for f in &self.factors {
            w = w.concat(&f.to_word()).unwrap();
        }
        w
    }

    /// Check the normal-form invariants: factors nontrivial, non-Δ, adjacent
    /// pairs left-weighted, consistent strand counts.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::StrandCount(self.n));
        }
        for f in &self.factors {
            if f.n() != self.n {
                return Err(Error::StrandMismatch(f.n(), self.n));
            }
            if f.is_identity() || f.is_delta() {
                return Err(Error::Internal("trivial or Δ factor in normal form"));
            }
        }
        for pair in self.factors.windows(2) {
            if !pair[0].left_weighted(&pair[1]) {
                return Err(Error::Internal("adjacent factors not left-weighted"));
            }
        }
        Ok(())
    }
}

/// Absorb Δ factors into the power (twisting what precedes them) and drop
/// trivial factors.
fn sweep(p: &mut i64, factors: &mut Vec<PermutationBraid>) {
    if factors
        .iter()
        .all(|f| !f.is_identity() && !f.is_delta())
    {
        return;
    }
    let mut out: Vec<PermutationBraid> = Vec::with_capacity(factors.len());
    for f in factors.drain(..) {
        if f.is_identity() {
            continue;
        }
        if f.is_delta() {
            *p += 1;
            for g in out.iter_mut() {
                *g = g.tau();
            }
            continue;
        }
        out.push(f);
    }
    *factors = out;
}

/// Left-greedy normalization of Δ^p·f_1⋯f_m into normal form: repeatedly
/// move the largest movable head of each factor into its left neighbour.
pub(crate) fn normalize(n: usize, mut p: i64, mut factors: Vec<PermutationBraid>) -> NormalForm {
    sweep(&mut p, &mut factors);
    loop {
        let mut changed = false;
        for i in 0..factors.len().saturating_sub(1) {
            let head = factors[i].complement().meet(&factors[i + 1]);
            if !head.is_identity() {
                factors[i] = factors[i].prod_simple(&head).expect("head fits by construction");
                factors[i + 1] = head.left_divide(&factors[i + 1]);
                changed = true;
            }
        }
        if !changed {
            break;
        }
        sweep(&mut p, &mut factors);
    }
    NormalForm { n, inf: p, factors }
}

impl std::fmt::Display for NormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D^{}", self.inf)?;
        for s in &self.factors {
            write!(f, " ({s})")?;
        }
        Ok(())
    }
}
