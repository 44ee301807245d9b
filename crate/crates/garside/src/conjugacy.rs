//! Conjugacy-class machinery: cycling, decycling, cyclic sliding, transport,
//! rigidity, and enumeration of the super summit set and the set of sliding
//! circuits.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::{normalize, NormalForm};
use crate::perm::PermutationBraid;

/// Iteration cap for the sliding-recurrence membership test.
pub const SLIDING_CAP: usize = 4096;

/// The initial factor ι(x) = Δ^{-p} x_1 Δ^p.
pub fn initial_factor(x: &NormalForm) -> Result<PermutationBraid> {
    let f = x.factors().first().ok_or(Error::TrivialCanonicalLength)?;
    Ok(f.tau_pow(x.inf()))
}

/// The final factor φ(x) = x_r.
pub fn final_factor(x: &NormalForm) -> Result<PermutationBraid> {
    x.factors()
        .last()
        .cloned()
        .ok_or(Error::TrivialCanonicalLength)
}

/// Conjugation by ι(x): Δ^p x_2 ⋯ x_r τ^p(x_1). Fixes braids of canonical
/// length 0.
pub fn cycling(x: &NormalForm) -> NormalForm {
    if x.canonical_length() == 0 {
        return x.clone();
    }
    let mut fs: Vec<PermutationBraid> = x.factors()[1..].to_vec();
    fs.push(x.factors()[0].tau_pow(x.inf()));
    normalize(x.n(), x.inf(), fs)
}

/// Conjugation by φ(x)⁻¹: Δ^p τ^p(x_r) x_1 ⋯ x_{r-1}. Fixes braids of
/// canonical length 0.
pub fn decycling(x: &NormalForm) -> NormalForm {
    let r = x.canonical_length();
    if r == 0 {
        return x.clone();
    }
    let mut fs = Vec::with_capacity(r);
    fs.push(x.factors()[r - 1].tau_pow(x.inf()));
    fs.extend_from_slice(&x.factors()[..r - 1]);
    normalize(x.n(), x.inf(), fs)
}

/// The preferred prefix: greatest common prefix of ι(x) and ∂φ(x).
/// Trivial by convention when the canonical length is 0.
pub fn preferred_prefix(x: &NormalForm) -> PermutationBraid {
    if x.canonical_length() == 0 {
        return PermutationBraid::identity(x.n());
    }
    let iota = initial_factor(x).expect("length >= 1");
    let phi = final_factor(x).expect("length >= 1");
    iota.meet(&phi.complement())
}

/// Conjugation by the preferred prefix.
pub fn cyclic_sliding(x: &NormalForm) -> NormalForm {
    let s = preferred_prefix(x);
    if s.is_identity() {
        return x.clone();
    }
    x.conjugate_by_simple(&s)
}

/// A braid is rigid when its cyclic sliding fixes it, i.e. when φ(x), ι(x)
/// are left-weighted. Braids of canonical length 0 are rigid by convention.
pub fn is_rigid(x: &NormalForm) -> bool {
    preferred_prefix(x).is_identity()
}

fn maximize_inf(mut x: NormalForm) -> NormalForm {
    loop {
        let mut seen: BTreeSet<NormalForm> = BTreeSet::new();
        seen.insert(x.clone());
        let mut y = cycling(&x);
        let jumped = loop {
            if y.inf() > x.inf() {
                break true;
            }
            if !seen.insert(y.clone()) {
                break false;
            }
            y = cycling(&y);
        };
        if jumped {
            x = y;
        } else {
            // the cycling trajectory closed up without raising the infimum,
            // so the infimum is maximal over the conjugacy class
            return x;
        }
    }
}

fn minimize_sup(mut x: NormalForm) -> NormalForm {
    loop {
        let mut seen: BTreeSet<NormalForm> = BTreeSet::new();
        seen.insert(x.clone());
        let mut y = decycling(&x);
        let dropped = loop {
            if y.sup() < x.sup() {
                break true;
            }
            if !seen.insert(y.clone()) {
                break false;
            }
            y = decycling(&y);
        };
        if dropped {
            x = y;
        } else {
            return x;
        }
    }
}

/// A conjugate of `x` inside its super summit set: infimum maximal, then
/// supremum minimal, reached by cyclings and decyclings.
pub fn send_to_sss(x: &NormalForm) -> NormalForm {
    let mut cur = x.clone();
    loop {
        let stats = (cur.inf(), cur.sup());
        cur = minimize_sup(maximize_inf(cur));
        if (cur.inf(), cur.sup()) == stats {
            return cur;
        }
    }
}

/// A conjugate of `x` inside its set of sliding circuits: iterate cyclic
/// sliding from the super summit representative until the trajectory closes,
/// then pick the smallest element of the closed cycle.
pub fn send_to_sc(x: &NormalForm) -> NormalForm {
    let mut pos: BTreeMap<NormalForm, usize> = BTreeMap::new();
    let mut trail: Vec<NormalForm> = Vec::new();
    let mut cur = send_to_sss(x);
    loop {
        if let Some(&i) = pos.get(&cur) {
            return trail[i..].iter().min().expect("nonempty cycle").clone();
        }
        pos.insert(cur.clone(), trail.len());
        trail.push(cur.clone());
        cur = cyclic_sliding(&cur);
    }
}

/// Does iterated cyclic sliding return to `y`? Errors when no repetition is
/// seen within `cap` steps rather than answering "no".
fn recurs_under_sliding(y: &NormalForm, cap: usize) -> Result<bool> {
    let mut seen: BTreeSet<NormalForm> = BTreeSet::new();
    let mut cur = cyclic_sliding(y);
    let mut steps = 1;
    loop {
        if cur == *y {
            return Ok(true);
        }
        if !seen.insert(cur.clone()) {
            // the trajectory entered a cycle avoiding y
            return Ok(false);
        }
        if steps >= cap {
            return Err(Error::SlidingCapExceeded(cap));
        }
        cur = cyclic_sliding(&cur);
        steps += 1;
    }
}

/// The transport s^{(1)} = ι(x)⁻¹ s ι(y) of a conjugator `s` along one
/// cycling step. Both `x` and `y = s⁻¹xs` must lie in the super summit set.
pub fn transport(x: &NormalForm, s: &PermutationBraid) -> Result<PermutationBraid> {
    if x.canonical_length() == 0 {
        return Err(Error::TrivialCanonicalLength);
    }
    let sss = send_to_sss(x);
    if (x.inf(), x.sup()) != (sss.inf(), sss.sup()) {
        return Err(Error::NotSuperSummit("x"));
    }
    let y = x.conjugate_by_simple(s);
    if (y.inf(), y.sup()) != (x.inf(), x.sup()) {
        return Err(Error::NotSuperSummit("the conjugate"));
    }
    let ix = NormalForm::of_simple(&initial_factor(x)?);
    let iy = NormalForm::of_simple(&initial_factor(&y)?);
    let t = ix.inverse().mul(&NormalForm::of_simple(s)).mul(&iy);
    let t = t.as_simple().ok_or(Error::TransportNotSimple)?;
    if cycling(&y) != cycling(x).conjugate_by_simple(&t) {
        return Err(Error::Internal("transport commuting square violated"));
    }
    Ok(t)
}

/// Closure of a rigid braid under cycling and conjugation by Δ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSet {
    pub base: NormalForm,
    /// Sorted, closed under both operations.
    pub members: Vec<NormalForm>,
}

impl OrbitSet {
    pub fn contains(&self, x: &NormalForm) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

pub fn orbit_closure(x: &NormalForm) -> Result<OrbitSet> {
    if !is_rigid(x) {
        return Err(Error::NotRigid);
    }
    let mut members: BTreeSet<NormalForm> = BTreeSet::new();
    let mut frontier = vec![x.clone()];
    members.insert(x.clone());
    while let Some(y) = frontier.pop() {
        for next in [cycling(&y), y.conjugate_by_delta()] {
            if members.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    Ok(OrbitSet {
        base: x.clone(),
        members: members.into_iter().collect(),
    })
}

/// Which invariant set is being enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetKind {
    #[serde(rename = "SSS")]
    Sss,
    #[serde(rename = "SC")]
    Sc,
}

impl std::fmt::Display for SetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SetKind::Sss => write!(f, "SSS"),
            SetKind::Sc => write!(f, "SC"),
        }
    }
}

/// A conjugation edge between two members, labelled by the simple conjugator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: u32,
    pub by: PermutationBraid,
    pub to: u32,
}

/// A fully enumerated SSS or SC with its conjugation graph. Members are
/// sorted, so serialization is byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacySet {
    pub kind: SetKind,
    pub n: usize,
    pub inf: i64,
    pub sup: i64,
    pub base: NormalForm,
    pub members: Vec<NormalForm>,
    pub edges: Vec<Edge>,
}

impl ConjugacySet {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: &NormalForm) -> bool {
        self.members.binary_search(x).is_ok()
    }

    /// Re-check the structural invariants: uniform inf/sup, edge equations,
    /// connectedness, base membership, sortedness.
    pub fn validate(&self) -> Result<()> {
        if !self.contains(&self.base) {
            return Err(Error::Internal("base is not a member"));
        }
        if self.members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Internal("members not sorted"));
        }
        for m in &self.members {
            if (m.inf(), m.sup()) != (self.inf, self.sup) {
                return Err(Error::Internal("member stats differ"));
            }
        }
        let k = self.members.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for e in &self.edges {
            let (f, t) = (e.from as usize, e.to as usize);
            if f >= k || t >= k {
                return Err(Error::Internal("edge index out of range"));
            }
            if self.members[f].conjugate_by_simple(&e.by) != self.members[t] {
                return Err(Error::Internal("edge equation fails"));
            }
            let (a, b) = (find(&mut parent, f), find(&mut parent, t));
            parent[a] = b;
        }
        if k > 0 {
            let root = find(&mut parent, 0);
            for i in 1..k {
                if find(&mut parent, i) != root {
                    return Err(Error::Internal("edge graph is disconnected"));
                }
            }
        }
        Ok(())
    }

    /// Graphviz rendering of the conjugation graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph {} {{\n", self.kind.to_string().to_lowercase()));
        out.push_str("  rankdir=LR;\n");
        for (i, m) in self.members.iter().enumerate() {
            out.push_str(&format!("  m{} [label=\"{}: {}\"];\n", i, i, m));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  m{} -> m{} [label=\"{}\"];\n",
                e.from, e.to, e.by
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Limits and parallelism for set enumeration.
#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    /// Hard cap on the number of members collected before erroring out.
    pub cap: usize,
    /// Worker threads for frontier expansion. The output does not depend on
    /// this value.
    pub jobs: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            cap: 1_000_000,
            jobs: 1,
        }
    }
}

/// Enumerate the full SSS or SC of `x` by closing the seed representative
/// under conjugation by nontrivial simple braids, keeping exactly the
/// conjugates that pass the membership test.
pub fn enumerate(kind: SetKind, x: &NormalForm, cfg: &EnumerationConfig) -> Result<ConjugacySet> {
    let n = x.n();
    let base = match kind {
        SetKind::Sss => send_to_sss(x),
        SetKind::Sc => send_to_sc(x),
    };
    let inf0 = base.inf();
    let sup0 = base.sup();
    let candidates: Vec<PermutationBraid> = PermutationBraid::all(n)
        .into_iter()
        .filter(|s| !s.is_identity())
        .collect();

    let is_member = |y: &NormalForm| -> Result<bool> {
        if (y.inf(), y.sup()) != (inf0, sup0) {
            return Ok(false);
        }
        match kind {
            SetKind::Sss => Ok(true),
            SetKind::Sc => recurs_under_sliding(y, SLIDING_CAP),
        }
    };

    let expand = |m: &NormalForm| -> Result<Vec<(PermutationBraid, NormalForm)>> {
        let mut hits = Vec::new();
        for s in &candidates {
            let y = m.conjugate_by_simple(s);
            if is_member(&y)? {
                hits.push((s.clone(), y));
            }
        }
        Ok(hits)
    };

    let mut index: BTreeMap<NormalForm, u32> = BTreeMap::new();
    let mut members: Vec<NormalForm> = Vec::new();
    let mut edges: BTreeSet<(u32, PermutationBraid, u32)> = BTreeSet::new();
    index.insert(base.clone(), 0);
    members.push(base.clone());
    let mut frontier: Vec<u32> = vec![0];

    while !frontier.is_empty() {
        let expansions: Vec<(u32, Vec<(PermutationBraid, NormalForm)>)> =
            if cfg.jobs > 1 && frontier.len() > 1 {
                let chunk = frontier.len().div_ceil(cfg.jobs);
                let members_ref = &members;
                let results: Vec<Result<Vec<_>>> = std::thread::scope(|scope| {
                    let handles: Vec<_> = frontier
                        .chunks(chunk)
                        .map(|nodes| {
                            scope.spawn(move || {
                                nodes
                                    .iter()
                                    .map(|&i| Ok((i, expand(&members_ref[i as usize])?)))
                                    .collect::<Result<Vec<_>>>()
                            })
                        })
                        .collect();
                    handles.into_iter().map(|h| h.join().unwrap()).collect()
                });
                let mut all = Vec::new();
                for r in results {
                    all.extend(r?);
                }
                all
            } else {
                let mut all = Vec::with_capacity(frontier.len());
                for &i in &frontier {
                    all.push((i, expand(&members[i as usize])?));
                }
                all
            };

        let mut next: Vec<u32> = Vec::new();
        for (from, hits) in expansions {
            for (s, y) in hits {
                let to = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        if members.len() >= cfg.cap {
                            let partial = finalize(kind, n, inf0, sup0, &base, members, edges);
                            return Err(Error::MemberCapExceeded {
                                cap: cfg.cap,
                                partial: Box::new(partial),
                            });
                        }
                        let i = members.len() as u32;
                        index.insert(y.clone(), i);
                        members.push(y);
                        next.push(i);
                        i
                    }
                };
                edges.insert((from, s, to));
            }
        }
        frontier = next;
    }

    Ok(finalize(kind, n, inf0, sup0, &base, members, edges))
}

/// Canonicalize: sort members, remap edge endpoints.
fn finalize(
    kind: SetKind,
    n: usize,
    inf: i64,
    sup: i64,
    base: &NormalForm,
    members: Vec<NormalForm>,
    edges: BTreeSet<(u32, PermutationBraid, u32)>,
) -> ConjugacySet {
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by(|&a, &b| members[a].cmp(&members[b]));
    let mut rank = vec![0u32; members.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new as u32;
    }
    let mut sorted_members: Vec<NormalForm> = members.clone();
    sorted_members.sort();
    let mut sorted_edges: Vec<Edge> = edges
        .into_iter()
        .map(|(f, by, t)| Edge {
            from: rank[f as usize],
            by,
            to: rank[t as usize],
        })
        .collect();
    sorted_edges.sort();
    sorted_edges.dedup();
    ConjugacySet {
        kind,
        n,
        inf,
        sup,
        base: base.clone(),
        members: sorted_members,
        edges: sorted_edges,
    }
}

/// Where a strict prefix came from in the single-orbit certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrefixSource {
    Initial,
    FinalComplement,
}

/// One row of the single-orbit certificate: a strict prefix and what
/// conjugation by it produces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrefixReport {
    pub source: PrefixSource,
    pub prefix: PermutationBraid,
    pub conjugate: NormalForm,
    pub canonical_length: usize,
    pub rigid: bool,
    /// Canonical length strictly above the super summit length.
    pub leaves_sss: bool,
    /// Out of the SC: leaves the SSS or fails rigidity.
    pub excluded: bool,
}

/// Machine check of the single-orbit argument for a rigid braid: every
/// strict prefix of ι(x) or ∂φ(x) conjugates x out of the SC, while ι(x) and
/// ∂φ(x) themselves keep it inside the cycling/Δ orbit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitCertificate {
    pub base: NormalForm,
    pub orbit_size: usize,
    pub reports: Vec<PrefixReport>,
    pub initial_conjugate_in_orbit: bool,
    pub complement_conjugate_in_orbit: bool,
    pub certified: bool,
}

pub fn verify_single_orbit_certificate(x: &NormalForm) -> Result<OrbitCertificate> {
    if !is_rigid(x) {
        return Err(Error::NotRigid);
    }
    let r = x.canonical_length();
    if r == 0 {
        return Err(Error::TrivialCanonicalLength);
    }
    let orbit = orbit_closure(x)?;
    let iota = initial_factor(x)?;
    let dphi = final_factor(x)?.complement();

    let mut reports = Vec::new();
    let mut all_excluded = true;
    for (source, head) in [
        (PrefixSource::Initial, &iota),
        (PrefixSource::FinalComplement, &dphi),
    ] {
        for prefix in head.strict_prefixes() {
            let conjugate = x.conjugate_by_simple(&prefix);
            let rigid = is_rigid(&conjugate);
            let canonical_length = conjugate.canonical_length();
            let leaves_sss = canonical_length > r;
            let excluded = leaves_sss || !rigid;
            all_excluded &= excluded;
            reports.push(PrefixReport {
                source,
                prefix,
                conjugate,
                canonical_length,
                rigid,
                leaves_sss,
                excluded,
            });
        }
    }

    let initial_conjugate_in_orbit = orbit.contains(&x.conjugate_by_simple(&iota));
    let complement_conjugate_in_orbit = orbit.contains(&x.conjugate_by_simple(&dphi));
    let certified = all_excluded && initial_conjugate_in_orbit && complement_conjugate_in_orbit;
    Ok(OrbitCertificate {
        base: x.clone(),
        orbit_size: orbit.members.len(),
        reports,
        initial_conjugate_in_orbit,
        complement_conjugate_in_orbit,
        certified,
    })
}
