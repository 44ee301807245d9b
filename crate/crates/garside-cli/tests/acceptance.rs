//! Acceptance suite: one test per criterion, each printing a pass line and
//! enforcing its stated time bound. Run with
//! `cargo test -p garside-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use garside::classify::{classify_nt, ClassifyConfig, NtVerdict};
use garside::conjugacy::{
    cycling, enumerate, initial_factor, is_rigid, orbit_closure, send_to_sss, transport,
    verify_single_orbit_certificate, EnumerationConfig, SetKind,
};
use garside::curves::{all_round_curves, artin_apply, bgn_scan, image_of_round, CyclicClass};
use garside::family::{beta, psi, psi_template, psi_word, sss_witnesses, tau_conjugator};
use garside::{BraidWord, NormalForm, PermutationBraid};

struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn below(&mut self, k: usize) -> usize {
        (self.next_u64() % k as u64) as usize
    }

    fn word(&mut self, n: usize, max_len: usize) -> BraidWord {
        let len = self.below(max_len + 1);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = self.below(n - 1) as i32 + 1;
                if self.next_u64() & 1 == 0 {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord::new(n, letters).unwrap()
    }

    fn simple(&mut self, n: usize) -> PermutationBraid {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            images.swap(i, self.below(i + 1));
        }
        PermutationBraid::from_one_line(&images).unwrap()
    }
}

fn simple5(letters: &[i32]) -> PermutationBraid {
    PermutationBraid::from_word(&BraidWord::new(5, letters.to_vec()).unwrap()).unwrap()
}

fn within(elapsed: Duration, bound_secs: u64, what: &str) {
    assert!(
        elapsed < Duration::from_secs(bound_secs),
        "{what} took {elapsed:?}, bound {bound_secs} s"
    );
}

#[test]
fn criterion_1_family_normal_form() {
    for k in 2..=5usize {
        let start = Instant::now();
        let macro_word = format!("(2 1)^{} (4)^{} 3 (4)^{}", 3 * k + 1, 2 * k + 2, 2 * k - 1);
        let out = Command::new(env!("CARGO_BIN_EXE_garside"))
            .args(["nf", "-n", "5", &macro_word, "--format", "json"])
            .output()
            .expect("cli runs");
        assert!(out.status.success());
        let from_cli: NormalForm =
            serde_json::from_slice(out.stdout.trim_ascii()).expect("valid normal-form json");
        let expected_factors = psi_template(k).unwrap();
        assert_eq!(from_cli.inf(), 0, "k={k}");
        assert_eq!(from_cli.sup(), (4 * k - 1) as i64, "k={k}");
        assert_eq!(from_cli.factors(), expected_factors.as_slice(), "k={k}");
        let direct = NormalForm::from_word(&psi_word(k).unwrap());
        assert_eq!(direct, from_cli, "k={k}");
        within(start.elapsed(), 1, "criterion 1 (one k, including a CLI run)");
    }
    println!("criterion 1 (family normal form, k = 2..5): PASS");
}

#[test]
fn criterion_2_rigidity_and_conjugacy() {
    for k in 2..=5usize {
        let start = Instant::now();
        let psi_k = psi(k).unwrap();
        let tau = tau_conjugator(k).unwrap();
        let beta_k = beta(k).unwrap();
        assert_eq!(beta_k, psi_k.conjugate(&tau), "k={k}");
        assert!(is_rigid(&beta_k), "k={k}");
        assert_eq!(beta_k.inf(), 0, "k={k}");
        assert_eq!(beta_k.sup(), (4 * k - 1) as i64, "k={k}");
        within(start.elapsed(), 1, "criterion 2 (one k)");
    }
    println!("criterion 2 (rigidity and conjugacy, k = 2..5): PASS");
}

#[test]
fn criterion_3_nine_prefix_certificate() {
    for k in [2usize, 3] {
        let start = Instant::now();
        // expected canonical length and rigidity per strict prefix
        let expected: Vec<(PermutationBraid, usize, bool)> = vec![
            (simple5(&[1]), 4 * k, false),
            (simple5(&[2]), 4 * k, false),
            (simple5(&[2, 1]), 4 * k, false),
            (simple5(&[2, 3]), 4 * k, false),
            (simple5(&[2, 1, 3]), 4 * k, false),
            (simple5(&[2, 3, 4]), 4 * k, false),
            (simple5(&[2, 1, 3, 4]), 4 * k, false),
            (simple5(&[3]), 4 * k - 1, false),
            (simple5(&[2, 1, 3, 2]), 4 * k - 1, false),
        ];
        let cert = verify_single_orbit_certificate(&beta(k).unwrap()).unwrap();
        assert!(cert.certified, "k={k}");
        assert_eq!(cert.reports.len(), 9, "k={k}");
        for (prefix, length, rigid) in &expected {
            let row = cert
                .reports
                .iter()
                .find(|r| r.prefix == *prefix)
                .unwrap_or_else(|| panic!("k={k}: prefix {prefix} missing"));
            assert_eq!(row.canonical_length, *length, "k={k} prefix {prefix}");
            assert_eq!(row.rigid, *rigid, "k={k} prefix {prefix}");
        }
        within(start.elapsed(), 5, "criterion 3 (one k)");
    }
    println!("criterion 3 (nine-prefix certificate, k = 2, 3): PASS");
}

#[test]
fn criterion_4_single_orbit_sc() {
    let start = Instant::now();
    let sc = enumerate(
        SetKind::Sc,
        &psi(2).unwrap(),
        &EnumerationConfig::default(),
    )
    .unwrap();
    let orbit = orbit_closure(&beta(2).unwrap()).unwrap();
    assert_eq!(sc.members, orbit.members);
    assert!(sc.size() <= 14);
    within(start.elapsed(), 60, "criterion 4");
    println!(
        "criterion 4 (single-orbit SC, |SC(psi_2)| = {}): PASS",
        sc.size()
    );
}

#[test]
fn criterion_5_exponential_sss_lower_bound() {
    let start = Instant::now();
    for k in 2..=6usize {
        let witnesses = sss_witnesses(k).unwrap();
        assert_eq!(witnesses.len(), 1 << (2 * k - 2), "k={k}");
        for w in &witnesses {
            assert_eq!(w.canonical_length(), 4 * k - 1, "k={k}");
        }
    }
    let sss = enumerate(
        SetKind::Sss,
        &psi(2).unwrap(),
        &EnumerationConfig::default(),
    )
    .unwrap();
    assert!(sss.size() >= 4);
    for w in sss_witnesses(2).unwrap() {
        assert!(sss.contains(&w));
    }
    within(start.elapsed(), 60, "criterion 5");
    println!(
        "criterion 5 (2^(2k-2) witnesses for k = 2..6; |SSS(psi_2)| = {}): PASS",
        sss.size()
    );
}

#[test]
fn criterion_6_round_curve_walkthrough() {
    let start = Instant::now();
    let curves = all_round_curves(5);
    assert_eq!(curves.len(), 9);
    let x = NormalForm::from_word(&BraidWord::new(5, vec![1, 3]).unwrap());
    let fixed: BTreeSet<(usize, usize)> = curves
        .iter()
        .filter(|c| image_of_round(&x, c) == Some(**c))
        .map(|c| (c.p, c.q))
        .collect();
    let expected: BTreeSet<(usize, usize)> =
        [(1, 2), (3, 4), (3, 5), (1, 4)].into_iter().collect();
    assert_eq!(fixed, expected);
    let beta2 = beta(2).unwrap();
    for c in &curves {
        let trace = bgn_scan(&beta2, c);
        assert_eq!(trace.final_image, None, "curve {c}");
        assert!(trace.steps.last().unwrap().image().is_none(), "curve {c}");
    }
    within(start.elapsed(), 5, "criterion 6");
    println!("criterion 6 (round-curve walkthrough): PASS");
}

#[test]
fn criterion_7_classification() {
    let cfg = ClassifyConfig::default();
    for k in 2..=4usize {
        let start = Instant::now();
        let verdict = classify_nt(&psi(k).unwrap(), &cfg);
        assert!(
            matches!(verdict, NtVerdict::PseudoAnosovCertified(_)),
            "k={k}: {verdict:?}"
        );
        within(start.elapsed(), 120, "criterion 7 (one pseudo-Anosov case)");
    }
    let delta = NormalForm::delta_power(5, 1);
    assert!(matches!(
        classify_nt(&delta, &cfg),
        NtVerdict::Periodic { .. }
    ));
    let rotation = NormalForm::from_word(&BraidWord::new(5, vec![1, 2, 3, 4]).unwrap());
    assert_eq!(
        classify_nt(&rotation, &cfg),
        NtVerdict::Periodic {
            exponent: 5,
            delta_power: 2
        }
    );
    let sigma1 = NormalForm::from_word(&BraidWord::new(5, vec![1]).unwrap());
    assert!(matches!(
        classify_nt(&sigma1, &cfg),
        NtVerdict::ReducibleCertified(_)
    ));
    println!("criterion 7 (classification): PASS");
}

/// Word rewriting that fixes the represented braid: insertions,
/// cancellations, braid moves, far commutations.
fn rewrite(rng: &mut Rng, w: &BraidWord, count: usize) -> BraidWord {
    let n = w.n();
    let mut letters: Vec<i32> = w.letters().to_vec();
    for _ in 0..count {
        match rng.below(4) {
            0 => {
                let i = rng.below(n - 1) as i32 + 1;
                let pos = rng.below(letters.len() + 1);
                let (a, b) = if rng.next_u64() & 1 == 0 {
                    (i, -i)
                } else {
                    (-i, i)
                };
                letters.insert(pos, b);
                letters.insert(pos, a);
            }
            1 => {
                if let Some(p) = (0..letters.len().saturating_sub(1))
                    .find(|&p| letters[p] == -letters[p + 1])
                {
                    letters.drain(p..p + 2);
                }
            }
            2 => {
                let spots: Vec<usize> = (0..letters.len().saturating_sub(2))
                    .filter(|&p| {
                        let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
                        a == c && a.signum() == b.signum() && (a.abs() - b.abs()).abs() == 1
                    })
                    .collect();
                if !spots.is_empty() {
                    let p = spots[rng.below(spots.len())];
                    let (a, b) = (letters[p], letters[p + 1]);
                    letters[p] = b;
                    letters[p + 1] = a;
                    letters[p + 2] = b;
                }
            }
            _ => {
                let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
                    .filter(|&p| (letters[p].abs() - letters[p + 1].abs()).abs() >= 2)
                    .collect();
                if !spots.is_empty() {
                    let p = spots[rng.below(spots.len())];
                    letters.swap(p, p + 1);
                }
            }
        }
    }
    BraidWord::new(n, letters).unwrap()
}

#[test]
fn criterion_8a_normal_form_uniqueness_under_rewriting() {
    let mut rng = Rng::new(0xACCE55);
    let mut failures = 0;
    for _ in 0..1000 {
        let u = rng.word(5, 10);
        let v = rewrite(&mut rng, &u, 14);
        if NormalForm::from_word(&u) != NormalForm::from_word(&v) {
            failures += 1;
        }
    }
    assert_eq!(failures, 0);
    println!("criterion 8a (normal-form uniqueness, 1000 rewrites): PASS");
}

#[test]
fn criterion_8b_transport_square_and_initial_factor() {
    let mut rng = Rng::new(0xBEEF);
    let mut checked = 0;
    while checked < 200 {
        let mut x = NormalForm::identity(5);
        for _ in 0..=rng.below(4) {
            x = x.mul(&NormalForm::of_simple(&rng.simple(5)));
        }
        let x = send_to_sss(&x);
        if x.canonical_length() == 0 {
            continue;
        }
        let s = rng.simple(5);
        let y = x.conjugate_by_simple(&s);
        if (y.inf(), y.sup()) != (x.inf(), x.sup()) {
            continue;
        }
        let t = transport(&x, &s).expect("transport of an SSS conjugator");
        assert_eq!(cycling(&y), cycling(&x).conjugate_by_simple(&t));
        let iota = initial_factor(&x).unwrap();
        assert_eq!(
            transport(&x, &iota).unwrap(),
            initial_factor(&cycling(&x)).unwrap()
        );
        checked += 1;
    }
    println!("criterion 8b (transport square + initial factor, 200 cases): PASS");
}

#[test]
fn criterion_8c_bgn_prefix_roundness() {
    let mut rng = Rng::new(0xB61);
    let curves = all_round_curves(5);
    for _ in 0..500 {
        let x = NormalForm::from_word(&rng.word(5, 7));
        for c in &curves {
            let direct = image_of_round(&x, c);
            let trace = bgn_scan(&x, c);
            assert_eq!(trace.final_image, direct);
            if direct.is_some() {
                assert!(trace.steps.iter().all(|s| s.image().is_some()));
            }
        }
    }
    println!("criterion 8c (BGN prefix roundness, 500 normal forms): PASS");
}

#[test]
fn criterion_8d_sc_inside_sss() {
    let mut rng = Rng::new(0x5C);
    let cfg = EnumerationConfig::default();
    for _ in 0..50 {
        // canonical length at most 4: a product of up to four simples
        let mut x = NormalForm::identity(5);
        for _ in 0..=rng.below(4) {
            x = x.mul(&NormalForm::of_simple(&rng.simple(5)));
        }
        assert!(x.canonical_length() <= 4);
        let sss = enumerate(SetKind::Sss, &x, &cfg).unwrap();
        let sc = enumerate(SetKind::Sc, &x, &cfg).unwrap();
        assert!(sc.members.iter().all(|m| sss.contains(m)));
    }
    println!("criterion 8d (SC inside SSS, 50 braids): PASS");
}

#[test]
fn criterion_8e_artin_braid_relations() {
    let mut rng = Rng::new(0xA271);
    for _ in 0..1000 {
        let len = rng.below(7);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.below(5) as i32 + 1;
                if rng.next_u64() & 1 == 0 {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let c = CyclicClass::new(5, letters).unwrap();
        for i in 1..4i32 {
            let lhs = artin_apply(&BraidWord::new(5, vec![i, i + 1, i]).unwrap(), &c).unwrap();
            let rhs = artin_apply(&BraidWord::new(5, vec![i + 1, i, i + 1]).unwrap(), &c).unwrap();
            assert_eq!(lhs, rhs);
        }
        for (i, j) in [(1i32, 3i32), (1, 4), (2, 4)] {
            let lhs = artin_apply(&BraidWord::new(5, vec![i, j]).unwrap(), &c).unwrap();
            let rhs = artin_apply(&BraidWord::new(5, vec![j, i]).unwrap(), &c).unwrap();
            assert_eq!(lhs, rhs);
        }
        let inverse_pair = BraidWord::new(5, vec![2, -2]).unwrap();
        assert_eq!(artin_apply(&inverse_pair, &c).unwrap(), c);
    }
    println!("criterion 8e (Artin braid relations, 1000 classes): PASS");
}
