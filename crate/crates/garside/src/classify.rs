//! Partial Nielsen–Thurston classification.
//!
//! Periodicity is decided exactly through the power relation x^m = Δ^l with
//! m ∈ {n-1, n}. Pseudo-Anosov braids are certified by scanning the set of
//! sliding circuits against all round curves: a reducible non-periodic braid
//! must have an SC element sending some round curve to a round curve, so a
//! clean scan is a proof. Reducibility is certified only by an explicit
//! setwise-invariant family of disjoint round curves.

use serde::{Deserialize, Serialize};

use crate::conjugacy::{
    self, enumerate, orbit_closure, EnumerationConfig, SetKind,
};
use crate::curves::{all_round_curves, image_of_round, RoundCurve};
use crate::error::Error;
use crate::normal::NormalForm;

/// Exact periodicity test: returns (m, l) with x^m = Δ^l and l ≠ 0.
///
/// Testing m = n-1 and m = n suffices because every periodic braid is
/// conjugate to a power of one of the two standard rotations, whose (n-1)-th
/// resp. n-th powers are powers of Δ.
pub fn is_periodic(x: &NormalForm) -> Option<(i64, i64)> {
    let n = x.n() as i64;
    for m in [n - 1, n] {
        let y = x.power(m);
        if y.canonical_length() == 0 && y.inf() != 0 {
            return Some((m, y.inf()));
        }
    }
    None
}

/// Evidence that a scan of the set of sliding circuits found no round curve
/// mapped to a round curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoAnosovEvidence {
    pub sc_size: usize,
    /// Number of SC members actually scanned (orbit representatives, or the
    /// whole SC).
    pub members_scanned: usize,
    pub full_scan: bool,
    pub curves_checked: usize,
}

/// An invariant multicurve: an SC member cycling a family of pairwise
/// disjoint round curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibleEvidence {
    pub member: NormalForm,
    /// image_of_round(member, cycle[i]) = cycle[(i+1) mod len].
    pub curve_cycle: Vec<RoundCurve>,
}

/// Outcome of the classifier, with machine-checkable evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "evidence")]
pub enum NtVerdict {
    /// x^exponent = Δ^delta_power with both nonzero.
    Periodic { exponent: i64, delta_power: i64 },
    PseudoAnosovCertified(PseudoAnosovEvidence),
    ReducibleCertified(ReducibleEvidence),
    Unknown { reason: String },
}

/// Options for `classify_nt`.
#[derive(Debug, Clone, Default)]
pub struct ClassifyConfig {
    pub enumeration: EnumerationConfig,
    /// Scan every SC member even when orbit representatives would do.
    pub full_scan: bool,
}

/// The classification pipeline: periodicity, then an SC enumeration and a
/// round-curve scan of one representative per cycling/Δ orbit (or of every
/// member when the SC is not rigid or a full scan is requested).
pub fn classify_nt(x: &NormalForm, cfg: &ClassifyConfig) -> NtVerdict {
    if let Some((m, l)) = is_periodic(x) {
        return NtVerdict::Periodic {
            exponent: m,
            delta_power: l,
        };
    }

    let sc = match enumerate(SetKind::Sc, x, &cfg.enumeration) {
        Ok(sc) => sc,
        Err(e @ (Error::MemberCapExceeded { .. } | Error::SlidingCapExceeded(_))) => {
            return NtVerdict::Unknown {
                reason: format!("SC enumeration hit a resource limit: {e}"),
            }
        }
        Err(e) => {
            return NtVerdict::Unknown {
                reason: format!("SC enumeration failed: {e}"),
            }
        }
    };

    // Orbit-representative scanning is only sound when cycling acts as a
    // rotation, i.e. on a rigid SC; otherwise fall back to the full scan.
    let all_rigid = sc.members.iter().all(conjugacy::is_rigid);
    let full_scan = cfg.full_scan || !all_rigid;
    let scan_members: Vec<&NormalForm> = if full_scan {
        sc.members.iter().collect()
    } else {
        let mut reps = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for m in &sc.members {
            if seen.contains(m) {
                continue;
            }
            let orbit = orbit_closure(m).expect("rigid member");
            seen.extend(orbit.members);
            reps.push(m);
        }
        reps
    };

    let curves = all_round_curves(x.n());
    let mut any_round_image = false;
    for member in &scan_members {
        for c in &curves {
            if image_of_round(member, c).is_some() {
                any_round_image = true;
            }
        }
    }

    if !any_round_image {
        return NtVerdict::PseudoAnosovCertified(PseudoAnosovEvidence {
            sc_size: sc.size(),
            members_scanned: scan_members.len(),
            full_scan,
            curves_checked: curves.len(),
        });
    }

    // Some round curve has a round image: look for a setwise-invariant
    // disjoint family, following image cycles member by member.
    for member in &sc.members {
        if let Some(cycle) = invariant_round_multicurve(member, &curves) {
            return NtVerdict::ReducibleCertified(ReducibleEvidence {
                member: member.clone(),
                curve_cycle: cycle,
            });
        }
    }

    NtVerdict::Unknown {
        reason: "an SC member sends a round curve to a round curve, but no \
                 setwise-invariant disjoint round family was found"
            .to_string(),
    }
}

/// Curves enclosing disjoint or nested puncture intervals are disjoint.
fn compatible(a: &RoundCurve, b: &RoundCurve) -> bool {
    a.q < b.p || b.q < a.p || (a.p <= b.p && b.q <= a.q) || (b.p <= a.p && a.q <= b.q)
}

/// A cycle of the partial map c ↦ image_of_round(member, c) whose curves are
/// pairwise disjoint, if one exists.
fn invariant_round_multicurve(
    member: &NormalForm,
    curves: &[RoundCurve],
) -> Option<Vec<RoundCurve>> {
    for start in curves {
        let mut cycle = vec![*start];
        let mut cur = *start;
        loop {
            let next = image_of_round(member, &cur)?;
            if next == *start {
                break;
            }
            if cycle.contains(&next) || cycle.len() > curves.len() {
                // closed up elsewhere; no cycle through `start`
                cycle.clear();
                break;
            }
            cycle.push(next);
            cur = next;
        }
        if cycle.is_empty() {
            continue;
        }
        let laminar = (0..cycle.len())
            .all(|i| (i + 1..cycle.len()).all(|j| compatible(&cycle[i], &cycle[j])));
        if laminar {
            return Some(cycle);
        }
    }
    None
}

/// Replay the evidence of a verdict against the braid it was produced for.
pub fn verify_verdict(x: &NormalForm, verdict: &NtVerdict, cfg: &ClassifyConfig) -> bool {
    match verdict {
        NtVerdict::Periodic {
            exponent,
            delta_power,
        } => {
            *exponent != 0
                && *delta_power != 0
                && x.power(*exponent) == NormalForm::delta_power(x.n(), *delta_power)
        }
        NtVerdict::ReducibleCertified(ev) => {
            if ev.curve_cycle.is_empty() {
                return false;
            }
            let in_sc = match enumerate(SetKind::Sc, x, &cfg.enumeration) {
                Ok(sc) => sc.contains(&ev.member),
                Err(_) => false,
            };
            let k = ev.curve_cycle.len();
            let maps_cyclically = (0..k).all(|i| {
                image_of_round(&ev.member, &ev.curve_cycle[i])
                    == Some(ev.curve_cycle[(i + 1) % k])
            });
            let laminar = (0..k).all(|i| {
                (i + 1..k).all(|j| compatible(&ev.curve_cycle[i], &ev.curve_cycle[j]))
            });
            in_sc && maps_cyclically && laminar
        }
        NtVerdict::PseudoAnosovCertified(_) | NtVerdict::Unknown { .. } => {
            classify_nt(x, cfg) == *verdict
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::BraidWord;

    fn nf(n: usize, letters: &[i32]) -> NormalForm {
        NormalForm::from_word(&BraidWord::new(n, letters.to_vec()).unwrap())
    }

    #[test]
    fn delta_is_periodic() {
        let d = NormalForm::delta_power(5, 1);
        let (m, l) = is_periodic(&d).unwrap();
        assert_eq!((m, l), (4, 4));
        assert_eq!(d.power(m), NormalForm::delta_power(5, l));
    }

    #[test]
    fn the_full_rotation_is_periodic_with_power_five() {
        let delta5 = nf(5, &[1, 2, 3, 4]);
        assert_eq!(is_periodic(&delta5), Some((5, 2)));
    }

    #[test]
    fn the_identity_is_not_periodic_in_the_strict_sense() {
        // 1^m = Δ^0 only, and the exponent l must be nonzero
        assert_eq!(is_periodic(&NormalForm::identity(5)), None);
    }

    #[test]
    fn generators_are_not_periodic() {
        assert_eq!(is_periodic(&nf(5, &[1])), None);
        assert_eq!(is_periodic(&nf(5, &[1, 3])), None);
    }

    #[test]
    fn classify_delta_as_periodic() {
        let verdict = classify_nt(&NormalForm::delta_power(5, 1), &ClassifyConfig::default());
        assert!(matches!(verdict, NtVerdict::Periodic { .. }));
        assert!(verify_verdict(
            &NormalForm::delta_power(5, 1),
            &verdict,
            &ClassifyConfig::default()
        ));
    }

    #[test]
    fn classify_a_generator_as_reducible() {
        let x = nf(5, &[1]);
        let verdict = classify_nt(&x, &ClassifyConfig::default());
        match &verdict {
            NtVerdict::ReducibleCertified(ev) => {
                assert!(ev.curve_cycle.contains(&RoundCurve::new(5, 1, 2).unwrap()));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
        assert!(verify_verdict(&x, &verdict, &ClassifyConfig::default()));
    }

    #[test]
    fn resource_limits_surface_as_unknown() {
        let cfg = ClassifyConfig {
            enumeration: crate::conjugacy::EnumerationConfig { cap: 2, jobs: 1 },
            full_scan: false,
        };
        let x = crate::family::psi(2).unwrap();
        let verdict = classify_nt(&x, &cfg);
        match &verdict {
            NtVerdict::Unknown { reason } => assert!(reason.contains("resource limit")),
            other => panic!("expected Unknown, got {other:?}"),
        }
        assert!(verify_verdict(&x, &verdict, &cfg));
    }

    #[test]
    fn verdicts_are_conjugation_invariant() {
        let cfg = ClassifyConfig::default();
        let cases = [
            NormalForm::delta_power(5, 1),
            nf(5, &[1]),
            garside_family_psi2(),
        ];
        let conjugators = [nf(5, &[2, -3, 1]), nf(5, &[4, 4, -1])];
        for x in &cases {
            let base = std::mem::discriminant(&classify_nt(x, &cfg));
            for g in &conjugators {
                let moved = classify_nt(&x.conjugate(g), &cfg);
                assert_eq!(std::mem::discriminant(&moved), base);
            }
        }
    }

    fn garside_family_psi2() -> NormalForm {
        crate::family::psi(2).unwrap()
    }

    #[test]
    fn periodicity_matches_brute_force_on_short_three_strand_words() {
        let words: Vec<Vec<i32>> = {
            let mut out = vec![vec![]];
            for len in 1..=4usize {
                let mut stack = vec![Vec::new()];
                while let Some(w) = stack.pop() {
                    if w.len() == len {
                        out.push(w);
                        continue;
                    }
                    for l in [1, -1, 2, -2] {
                        let mut next = w.clone();
                        next.push(l);
                        stack.push(next);
                    }
                }
            }
            out
        };
        for letters in words {
            let x = NormalForm::from_word(&BraidWord::new(3, letters).unwrap());
            let brute = (1..=6i64).any(|m| {
                let y = x.power(m);
                y.canonical_length() == 0 && y.inf() != 0
            });
            assert_eq!(is_periodic(&x).is_some(), brute, "braid {x}");
        }
    }
}
