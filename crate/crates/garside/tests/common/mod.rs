//! Test-support oracles, independent of the library's decision paths:
//! strand-crossing simulation for simplicity, brute-force word search for the
//! prefix order, and the faithful Artin representation for word equality.

#![allow(dead_code)]

use garside::{BraidWord, NormalForm, PermutationBraid};

/// xorshift64* generator; deterministic across runs.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, k: usize) -> usize {
        (self.next_u64() % k as u64) as usize
    }

    pub fn word(&mut self, n: usize, max_len: usize) -> BraidWord {
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

    pub fn positive_word(&mut self, n: usize, len: usize) -> Vec<usize> {
        (0..len).map(|_| self.below(n - 1) + 1).collect()
    }

    pub fn simple(&mut self, n: usize) -> PermutationBraid {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            images.swap(i, self.below(i + 1));
        }
        PermutationBraid::from_one_line(&images).unwrap()
    }
}

/// Simulate a positive word on labelled strands; returns (end position of
/// each start label, crossing count per unordered label pair).
pub fn simulate(n: usize, letters: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut arr: Vec<usize> = (0..n).collect(); // arr[pos] = start label
    let mut crossings = vec![vec![0usize; n]; n];
    for &i in letters {
        let (a, b) = (arr[i - 1], arr[i]);
        let (lo, hi) = (a.min(b), a.max(b));
        crossings[lo][hi] += 1;
        arr.swap(i - 1, i);
    }
    let mut end = vec![0usize; n];
    for (pos, &label) in arr.iter().enumerate() {
        end[label] = pos;
    }
    (end, crossings)
}

/// A positive word is simple iff every strand pair crosses at most once.
pub fn is_simple_word_oracle(n: usize, letters: &[usize]) -> bool {
    let (_, crossings) = simulate(n, letters);
    crossings.iter().all(|row| row.iter().all(|&c| c <= 1))
}

/// 1-based one-line permutation of a positive word, by simulation.
pub fn perm_of_word_oracle(n: usize, letters: &[usize]) -> Vec<usize> {
    let (end, _) = simulate(n, letters);
    end.iter().map(|&p| p + 1).collect()
}

fn check_reduced_word_for(n: usize, letters: &[usize], s: &PermutationBraid) {
    assert!(is_simple_word_oracle(n, letters));
    assert_eq!(perm_of_word_oracle(n, letters), s.one_line());
}

/// Brute-force prefix test on simple braids: search for a positive word w
/// with s·w simple and equal to t, over all words of the missing length.
pub fn prefix_le_oracle(s: &PermutationBraid, t: &PermutationBraid) -> bool {
    let n = s.n();
    let sw: Vec<usize> = s.canonical_word();
    let tw: Vec<usize> = t.canonical_word();
    check_reduced_word_for(n, &sw, s);
    check_reduced_word_for(n, &tw, t);
    if sw.len() > tw.len() {
        return false;
    }
    let d = tw.len() - sw.len();
    let target = perm_of_word_oracle(n, &tw);
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(tail) = stack.pop() {
        if tail.len() == d {
            let mut whole = sw.clone();
            whole.extend_from_slice(&tail);
            if is_simple_word_oracle(n, &whole) && perm_of_word_oracle(n, &whole) == target {
                return true;
            }
            continue;
        }
        for i in 1..n {
            let mut next = tail.clone();
            next.push(i);
            stack.push(next);
        }
    }
    false
}

/// Exhaustive greatest-common-prefix: the crossing-maximal simple braid below
/// both arguments, checked to dominate every other common prefix.
pub fn meet_oracle(s: &PermutationBraid, t: &PermutationBraid) -> PermutationBraid {
    let common: Vec<PermutationBraid> = PermutationBraid::all(s.n())
        .into_iter()
        .filter(|u| u.prefix_le(s) && u.prefix_le(t))
        .collect();
    let best = common
        .iter()
        .max_by_key(|u| u.crossing_count())
        .expect("identity is always common")
        .clone();
    for u in &common {
        assert!(
            u.prefix_le(&best),
            "common prefixes of {s} and {t} have no maximum"
        );
    }
    best
}

/// Definitional left-weighting: no generator σ_i with s·σ_i simple and
/// σ_i ≼ t, decided on words.
pub fn left_weighted_oracle(s: &PermutationBraid, t: &PermutationBraid) -> bool {
    let n = s.n();
    for i in 1..n {
        let mut sw = s.canonical_word();
        sw.push(i);
        let gen = PermutationBraid::generator(n, i).unwrap();
        if is_simple_word_oracle(n, &sw) && prefix_le_oracle(&gen, t) {
            return false;
        }
    }
    true
}

// --- the Artin representation, as an independent word-problem oracle ---

pub type FreeWord = Vec<i32>;

fn reduce(word: FreeWord) -> FreeWord {
    let mut out: FreeWord = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn substitute(gen: usize, inverse: bool, word: &FreeWord) -> FreeWord {
    let i = gen as i32;
    let mut out = Vec::with_capacity(word.len() * 3);
    for &l in word {
        let idx = l.abs();
        let pos = l > 0;
        if !inverse {
            if idx == i {
                if pos {
                    out.extend_from_slice(&[i, i + 1, -i]);
                } else {
                    out.extend_from_slice(&[i, -(i + 1), -i]);
                }
            } else if idx == i + 1 {
                out.push(if pos { i } else { -i });
            } else {
                out.push(l);
            }
        } else if idx == i {
            out.push(if pos { i + 1 } else { -(i + 1) });
        } else if idx == i + 1 {
            if pos {
                out.extend_from_slice(&[-(i + 1), i, i + 1]);
            } else {
                out.extend_from_slice(&[-(i + 1), -i, i + 1]);
            }
        } else {
            out.push(l);
        }
    }
    reduce(out)
}

/// Images of the free generators x_1..x_n under the word's automorphism.
pub fn artin_images(w: &BraidWord) -> Vec<FreeWord> {
    let n = w.n();
    let mut images: Vec<FreeWord> = (1..=n as i32).map(|i| vec![i]).collect();
    for (gen, inverse) in w.iter() {
        for img in images.iter_mut() {
            *img = substitute(gen, inverse, img);
        }
    }
    images
}

/// Exact word-problem oracle: the Artin representation is faithful.
pub fn words_equal_as_braids(u: &BraidWord, v: &BraidWord) -> bool {
    artin_images(u) == artin_images(v)
}

/// Is a normal form equal, as a braid, to the word it came from?
pub fn represents(x: &NormalForm, w: &BraidWord) -> bool {
    words_equal_as_braids(&x.to_word(), w)
}

/// Apply `count` random word rewrites that keep the represented braid fixed:
/// free insertions/cancellations, braid moves, far-commutations.
pub fn rewrite(rng: &mut TestRng, w: &BraidWord, count: usize) -> BraidWord {
    let n = w.n();
    let mut letters: Vec<i32> = w.letters().to_vec();
    for _ in 0..count {
        match rng.below(4) {
            0 => {
                // insert a cancelling pair
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
                // cancel an adjacent inverse pair, if any
                if let Some(p) = (0..letters.len().saturating_sub(1))
                    .find(|&p| letters[p] == -letters[p + 1])
                {
                    letters.drain(p..p + 2);
                }
            }
            2 => {
                // braid move a b a -> b a b for |a|-|b| = ±1, equal signs
                let spots: Vec<usize> = (0..letters.len().saturating_sub(2))
                    .filter(|&p| {
                        let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
                        a == c
                            && a.signum() == b.signum()
                            && (a.abs() - b.abs()).abs() == 1
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
                // commute distant generators
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
