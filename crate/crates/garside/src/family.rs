//! A family of 5-strand pseudo-Anosov braids whose super summit sets grow
//! exponentially with the canonical length, together with the witnesses for
//! the lower bound and a one-shot verification report.
//!
//! For k ≥ 2 the family member is ψ_k = δ_3^{3k+1} σ_4^{2k+2} σ_3 σ_4^{2k-1}
//! (δ_3 = σ_2σ_1), a braid of canonical length 4k-1. Its rigid conjugate β_k
//! generates the whole set of sliding circuits under cycling and conjugation
//! by Δ, while conjugating ψ_k by chains of the four atoms a_ij produces
//! 2^{2k-2} distinct super summit elements.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify::{classify_nt, is_periodic, ClassifyConfig, NtVerdict};
use crate::conjugacy::{
    enumerate, orbit_closure, verify_single_orbit_certificate, EnumerationConfig, SetKind,
};
use crate::error::{Error, Result};
use crate::normal::NormalForm;
use crate::perm::PermutationBraid;
use crate::word::BraidWord;

const N: usize = 5;

/// One of the four 3-strand atoms a_ij with starting set {σ_i} and finishing
/// set {σ_j}, used to build the witness conjugators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub i: u8,
    pub j: u8,
}

impl Atom {
    pub fn new(i: u8, j: u8) -> Option<Self> {
        if (1..=2).contains(&i) && (1..=2).contains(&j) {
            Some(Atom { i, j })
        } else {
            None
        }
    }

    pub fn all() -> [Atom; 4] {
        [
            Atom { i: 1, j: 1 },
            Atom { i: 1, j: 2 },
            Atom { i: 2, j: 1 },
            Atom { i: 2, j: 2 },
        ]
    }

    pub fn letters(&self) -> &'static [i32] {
        match (self.i, self.j) {
            (1, 1) => &[1],
            (1, 2) => &[1, 2],
            (2, 1) => &[2, 1],
            (2, 2) => &[2],
            _ => unreachable!("validated on construction"),
        }
    }

    pub fn word(&self) -> BraidWord {
        BraidWord::new(N, self.letters().to_vec()).expect("atom letters are valid")
    }

    pub fn perm(&self) -> PermutationBraid {
        PermutationBraid::from_word(&self.word()).expect("atoms are simple")
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::FamilyParameter(k))
    } else {
        Ok(())
    }
}

fn word5(letters: Vec<i32>) -> BraidWord {
    BraidWord::new(N, letters).expect("family words are valid")
}

fn simple5(letters: &[i32]) -> PermutationBraid {
    PermutationBraid::from_word(&word5(letters.to_vec())).expect("simple family factor")
}

/// The defining word δ_3^{3k+1} σ_4^{2k+2} σ_3 σ_4^{2k-1} of ψ_k.
pub fn psi_word(k: usize) -> Result<BraidWord> {
    check_k(k)?;
    let mut letters = Vec::new();
    for _ in 0..3 * k + 1 {
        letters.extend_from_slice(&[2, 1]);
    }
    letters.extend(std::iter::repeat_n(4, 2 * k + 2));
    letters.push(3);
    letters.extend(std::iter::repeat_n(4, 2 * k - 1));
    Ok(word5(letters))
}

/// ψ_k in normal form.
pub fn psi(k: usize) -> Result<NormalForm> {
    Ok(NormalForm::from_word(&psi_word(k)?))
}

/// The published factor sequence of ψ_k:
/// (Δ_3σ_4)^{2k} (δ_3σ_4σ_3σ_4) (σ_3σ_4) (σ_4)^{2k-3}.
pub fn psi_template(k: usize) -> Result<Vec<PermutationBraid>> {
    check_k(k)?;
    let mut factors = Vec::with_capacity(4 * k - 1);
    for _ in 0..2 * k {
        factors.push(simple5(&[2, 1, 2, 4]));
    }
    factors.push(simple5(&[2, 1, 4, 3, 4]));
    factors.push(simple5(&[3, 4]));
    for _ in 0..2 * k - 3 {
        factors.push(simple5(&[4]));
    }
    Ok(factors)
}

/// The conjugator τ with β_k = τ⁻¹ ψ_k τ:
/// (Δ_3σ_4)^{2k} (δ_3σ_4σ_3σ_4) (σ_3σ_4Δ_3) (Δ_3σ_4)^{2k-1} (δ_3σ_4σ_3σ_4).
pub fn tau_conjugator(k: usize) -> Result<NormalForm> {
    check_k(k)?;
    let mut letters = Vec::new();
    for _ in 0..2 * k {
        letters.extend_from_slice(&[2, 1, 2, 4]);
    }
    letters.extend_from_slice(&[2, 1, 4, 3, 4]);
    letters.extend_from_slice(&[3, 4, 2, 1, 2]);
    for _ in 0..2 * k - 1 {
        letters.extend_from_slice(&[2, 1, 2, 4]);
    }
    letters.extend_from_slice(&[2, 1, 4, 3, 4]);
    Ok(NormalForm::from_word(&word5(letters)))
}

/// β_k = τ⁻¹ ψ_k τ, the rigid sliding-circuit representative.
pub fn beta(k: usize) -> Result<NormalForm> {
    let tau = tau_conjugator(k)?;
    Ok(psi(k)?.conjugate(&tau))
}

/// The published factor sequence of β_k:
/// (σ_1σ_3)^{2k-2} (σ_3σ_4Δ_3) (Δ_3σ_4) [(δ_3σ_4)(δ̃_3σ_4)]^{k-1} (δ_3σ_4σ_3σ_4).
pub fn beta_template(k: usize) -> Result<Vec<PermutationBraid>> {
    check_k(k)?;
    let mut factors = Vec::with_capacity(4 * k - 1);
    for _ in 0..2 * k - 2 {
        factors.push(simple5(&[1, 3]));
    }
    factors.push(simple5(&[3, 4, 2, 1, 2]));
    factors.push(simple5(&[2, 1, 2, 4]));
    for _ in 0..k - 1 {
        factors.push(simple5(&[2, 1, 4]));
        factors.push(simple5(&[1, 2, 4]));
    }
    factors.push(simple5(&[2, 1, 4, 3, 4]));
    Ok(factors)
}

/// ∂_3⁻¹(y) = Δ_3·y⁻¹ on simple braids supported on strands 1..3.
fn partial3_inv(y: &PermutationBraid) -> PermutationBraid {
    simple5(&[2, 1, 2]).then(&y.invert())
}

fn partial3_inv_pow(y: &PermutationBraid, e: usize) -> PermutationBraid {
    let mut out = y.clone();
    for _ in 0..e {
        out = partial3_inv(&out);
    }
    out
}

fn validate_bits(k: usize, bits: &[u8]) -> Result<Vec<Atom>> {
    check_k(k)?;
    let expected = 2 * k - 2;
    if bits.len() != expected || bits.iter().any(|&b| b != 1 && b != 2) {
        return Err(Error::MalformedBits { expected });
    }
    // the atom chain a_{1,i_1} a_{i_1,i_2} ⋯ a_{i_{2k-3},i_{2k-2}}
    let mut atoms = Vec::with_capacity(expected);
    let mut prev = 1u8;
    for &b in bits {
        atoms.push(Atom::new(prev, b).expect("validated bits"));
        prev = b;
    }
    Ok(atoms)
}

/// The witness ψ_{k,i⃗}: the conjugate of ψ_k by the atom chain selected by
/// `bits` (entries in {1, 2}, length 2k-2).
pub fn psi_variant(k: usize, bits: &[u8]) -> Result<NormalForm> {
    let atoms = validate_bits(k, bits)?;
    let mut conj = BraidWord::empty(N).expect("n >= 2");
    for a in &atoms {
        conj = conj.concat(&a.word()).expect("same strand count");
    }
    Ok(psi(k)?.conjugate(&NormalForm::from_word(&conj)))
}

/// The expected factor skeleton of ψ_{k,i⃗}: (Δ_3σ_4)², the ∂_3-twisted
/// atoms ∂_3^{-(2t-1)}(A_t)·σ_4 in reverse order, δ_3σ_4σ_3σ_4, σ_3σ_4·A_1,
/// then σ_4·A_t for t = 2..2k-2.
pub fn psi_variant_template(k: usize, bits: &[u8]) -> Result<Vec<PermutationBraid>> {
    let atoms = validate_bits(k, bits)?;
    let s4 = simple5(&[4]);
    let mut factors = Vec::with_capacity(4 * k - 1);
    factors.push(simple5(&[2, 1, 2, 4]));
    factors.push(simple5(&[2, 1, 2, 4]));
    for (t, a) in atoms.iter().enumerate().rev() {
        let twisted = partial3_inv_pow(&a.perm(), 2 * t + 1);
        factors.push(
            twisted
                .prod_simple(&s4)
                .ok_or(Error::Internal("twisted atom times σ_4 not simple"))?,
        );
    }
    factors.push(simple5(&[2, 1, 4, 3, 4]));
    factors.push(
        simple5(&[3, 4])
            .prod_simple(&atoms[0].perm())
            .ok_or(Error::Internal("σ_3σ_4·a not simple"))?,
    );
    for a in &atoms[1..] {
        factors.push(
            s4.prod_simple(&a.perm())
                .ok_or(Error::Internal("σ_4·a not simple"))?,
        );
    }
    Ok(factors)
}

/// The 2^{2k-2} pairwise-distinct super summit witnesses.
pub fn sss_witnesses(k: usize) -> Result<BTreeSet<NormalForm>> {
    check_k(k)?;
    let len = 2 * k - 2;
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << len) {
        let bits: Vec<u8> = (0..len)
            .map(|t| if mask & (1 << t) != 0 { 2 } else { 1 })
            .collect();
        out.insert(psi_variant(k, &bits)?);
    }
    Ok(out)
}

/// One named check of the verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

/// Outcome of re-running the family computations for one k.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyReport {
    pub k: usize,
    pub checks: Vec<Check>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl std::fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "family report, k = {}", self.k)?;
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0);
        for c in &self.checks {
            writeln!(
                f,
                "  {:width$}  {}  {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.details,
            )?;
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Run every published computation for the given k and report each as a
/// named pass/fail check. Individual failures are recorded, not raised.
pub fn verify_paper(k: usize, cfg: &EnumerationConfig) -> Result<FamilyReport> {
    check_k(k)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, details: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            details,
        });
    };

    let psi_k = psi(k)?;
    let template = psi_template(k)?;
    push(
        "psi_normal_form",
        psi_k.inf() == 0 && psi_k.factors() == template.as_slice(),
        format!("{} factors", psi_k.canonical_length()),
    );
    push(
        "psi_inf_sup",
        psi_k.inf() == 0 && psi_k.sup() == (4 * k - 1) as i64,
        format!("inf {} sup {}", psi_k.inf(), psi_k.sup()),
    );

    let beta_k = beta(k)?;
    push(
        "beta_normal_form",
        beta_k.inf() == 0 && beta_k.factors() == beta_template(k)?.as_slice(),
        format!("{} factors", beta_k.canonical_length()),
    );
    push(
        "beta_rigid",
        crate::conjugacy::is_rigid(&beta_k),
        String::new(),
    );
    push(
        "beta_inf_sup",
        beta_k.inf() == 0 && beta_k.sup() == (4 * k - 1) as i64,
        format!("inf {} sup {}", beta_k.inf(), beta_k.sup()),
    );

    let tau = tau_conjugator(k)?;
    push(
        "tau_conjugation",
        tau.inverse().mul(&psi_k).mul(&tau) == beta_k,
        String::new(),
    );

    match verify_single_orbit_certificate(&beta_k) {
        Ok(cert) => {
            let excluded = cert.reports.iter().filter(|r| r.excluded).count();
            push(
                "prefix_certificate",
                cert.certified,
                format!(
                    "{}/{} prefixes excluded, orbit size {}",
                    excluded,
                    cert.reports.len(),
                    cert.orbit_size
                ),
            );
        }
        Err(e) => push("prefix_certificate", false, e.to_string()),
    }

    match (enumerate(SetKind::Sc, &psi_k, cfg), orbit_closure(&beta_k)) {
        (Ok(sc), Ok(orbit)) => push(
            "sc_single_orbit",
            sc.members == orbit.members,
            format!("|SC| = {}", sc.size()),
        ),
        (sc, orbit) => push(
            "sc_single_orbit",
            false,
            format!(
                "enumeration failed: {:?} / {:?}",
                sc.err().map(|e| e.to_string()),
                orbit.err().map(|e| e.to_string())
            ),
        ),
    }

    push("non_periodic", is_periodic(&psi_k).is_none(), String::new());

    let classify_cfg = ClassifyConfig {
        enumeration: cfg.clone(),
        full_scan: false,
    };
    let verdict = classify_nt(&psi_k, &classify_cfg);
    let verdict_details = match &verdict {
        NtVerdict::PseudoAnosovCertified(ev) => format!(
            "SC size {}, {} representative(s) scanned over {} curves",
            ev.sc_size, ev.members_scanned, ev.curves_checked
        ),
        other => format!("unexpected verdict {other:?}"),
    };
    push(
        "pseudo_anosov",
        matches!(verdict, NtVerdict::PseudoAnosovCertified(_)),
        verdict_details,
    );

    match sss_witnesses(k) {
        Ok(witnesses) => {
            let expected = 1usize << (2 * k - 2);
            let lengths_ok = witnesses
                .iter()
                .all(|w| w.inf() == 0 && w.canonical_length() == 4 * k - 1);
            push(
                "witness_family",
                witnesses.len() == expected && lengths_ok,
                format!("{} distinct witnesses", witnesses.len()),
            );
            if k == 2 {
                match enumerate(SetKind::Sss, &psi_k, cfg) {
                    Ok(sss) => push(
                        "sss_cross_check",
                        witnesses.iter().all(|w| sss.contains(w)) && sss.size() >= 4,
                        format!("|SSS| = {}", sss.size()),
                    ),
                    Err(e) => push("sss_cross_check", false, e.to_string()),
                }
            }
        }
        Err(e) => push("witness_family", false, e.to_string()),
    }

    Ok(FamilyReport { k, checks })
}
