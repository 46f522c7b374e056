//! Bounded detection of free subalgebras generated by two cycles.
//!
//! A witness is a pair of cycles `w1 = p·r`, `w2 = q·r` (traversal order)
//! built from a non-cancellative pair `p ≁ q` with equal images, closed up
//! by a path `r` that keeps `σ` from dividing the image. Freeness is then
//! checked word by word up to a length bound.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::contraction::Contraction;
use crate::dimer::{ArrowId, DimerQuiver, Path, VertexId};
use crate::impression::{ImpressionMap, Monomial};
use crate::matchings::enumerate_matchings;
use crate::rewrite::{CancellativityAnalysis, Rewriter};

/// Every contracted arrow has an endpoint with exactly one incoming and one
/// outgoing arrow.
pub fn inout_hypothesis(c: &Contraction) -> bool {
    let d = c.source();
    let thin = |v: VertexId| d.in_degree(v) == 1 && d.out_degree(v) == 1;
    c.stars().iter().all(|&a| thin(d.head(a)) || thin(d.tail(a)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessWitness {
    pub w1: Path,
    pub w2: Path,
    pub p: Path,
    pub q: Path,
    pub r: Path,
}

/// The three defining properties of a witness, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub images_equal: bool,
    pub inequivalent: bool,
    pub sigma_free: bool,
}

impl WitnessCheck {
    pub fn holds(&self) -> bool {
        self.images_equal && self.inequivalent && self.sigma_free
    }
}

pub fn check_witness(rw: &Rewriter<'_>, map: &ImpressionMap, w1: &Path, w2: &Path, budget: usize) -> WitnessCheck {
    let e1 = map.eta_bar(w1);
    WitnessCheck {
        images_equal: e1 == map.eta_bar(w2),
        inequivalent: !rw.is_equivalent(w1, w2, budget),
        sigma_free: !map.sigma().divides(&e1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    FreeUpTo(usize),
    /// Two distinct words in the generators, as index sequences into
    /// `[w1, w2]`, found equivalent.
    RelationFound(Vec<u8>, Vec<u8>),
}

fn word_path(gens: [&Path; 2], word: &[u8]) -> Path {
    let start = gens[0].tail();
    word.iter().fold(Path::vertex(start), |acc, &i| acc.then(gens[i as usize]).expect("cycles at one vertex"))
}

/// Rewrite budget used for words of length at most `n`.
pub fn freeness_budget(d: &DimerQuiver, w1: &Path, w2: &Path, n: usize) -> usize {
    n * w1.len().max(w2.len()) + d.max_face_len()
}

/// Checks that distinct words of length `1..=n` in `w1`, `w2` are pairwise
/// inequivalent within [`freeness_budget`]. Words are visited by length,
/// then lexicographically, and the first relation found is returned.
pub fn verify_freeness(rw: &Rewriter<'_>, w1: &Path, w2: &Path, n: usize) -> Freeness {
    assert!(w1.is_cycle() && w2.is_cycle() && w1.tail() == w2.tail(), "generators must be cycles at one vertex");
    if w1 == w2 {
        return Freeness::RelationFound(vec![0], vec![1]);
    }
    let budget = freeness_budget(rw.dimer(), w1, w2, n);
    let mut words: Vec<Vec<u8>> = Vec::new();
    for len in 1..=n {
        for bits in 0u32..(1 << len) {
            words.push((0..len).map(|k| ((bits >> (len - 1 - k)) & 1) as u8).collect());
        }
    }
    let paths: Vec<Path> = words.iter().map(|w| word_path([w1, w2], w)).collect();
    let mut owner: HashMap<Path, usize> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        if let Some(&j) = owner.get(p) {
            return Freeness::RelationFound(words[j].clone(), words[i].clone());
        }
        let class = rw.class(p, budget);
        for m in class.members {
            if let Some(&j) = owner.get(&m) {
                return Freeness::RelationFound(words[j].clone(), words[i].clone());
            }
            owner.insert(m, i);
        }
    }
    Freeness::FreeUpTo(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(FreenessWitness),
    NoneFound { budget: usize, candidates: usize },
}

/// Pairs `(p, q)` of paths with common endpoints, from two sources: faces
/// sharing a consecutive pair of arrows (the rest of each face), and
/// cancellation failures among paths of length at most `cancel_budget`.
pub fn candidate_pairs(rw: &Rewriter<'_>, cancel_budget: usize) -> Vec<(Path, Path)> {
    let d = rw.dimer();
    let mut out: Vec<(Path, Path)> = Vec::new();
    let mut seen: HashSet<(Path, Path)> = HashSet::new();
    let mut push = |p: Path, q: Path, out: &mut Vec<(Path, Path)>| {
        let key = if p <= q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
        if p != q && seen.insert(key) {
            out.push((p, q));
        }
    };
    for (fi, f) in d.faces().iter().enumerate() {
        let n = f.arrows.len();
        for k in 0..n {
            let (a, b) = (f.arrows[k], f.arrows[(k + 1) % n]);
            for (gi, g) in d.faces().iter().enumerate() {
                if gi <= fi {
                    continue;
                }
                let m = g.arrows.len();
                for l in 0..m {
                    if g.arrows[l] == a && g.arrows[(l + 1) % m] == b {
                        let p: Vec<ArrowId> = (2..n).map(|j| f.arrows[(k + j) % n]).collect();
                        let q: Vec<ArrowId> = (2..m).map(|j| g.arrows[(l + j) % m]).collect();
                        let start = d.head(b);
                        push(Path::new(d, start, p).expect("face"), Path::new(d, start, q).expect("face"), &mut out);
                    }
                }
            }
        }
    }
    let analysis = CancellativityAnalysis::run(rw, cancel_budget);
    for c in analysis.counterexamples() {
        push(c.p.clone(), c.q.clone(), &mut out);
    }
    out.sort_by(|x, y| {
        (x.0.len() + x.1.len(), x.0.arrows(), x.1.arrows()).cmp(&(y.0.len() + y.1.len(), y.0.arrows(), y.1.arrows()))
    });
    out
}

/// Shortest `r` from `h(p)` to `t(p)` with `σ ∤ η̄(p·r)`.
pub fn closing_path(d: &DimerQuiver, map: &ImpressionMap, p: &Path, max_len: usize) -> Option<Path> {
    let sigma = map.sigma();
    let base = map.eta_bar(p);
    if sigma.divides(&base) {
        return None;
    }
    if p.head() == p.tail() {
        return Some(Path::vertex(p.head()));
    }
    let mut parent: HashMap<(VertexId, Monomial), Option<((VertexId, Monomial), ArrowId)>> = HashMap::new();
    let root = (p.head(), base);
    parent.insert(root.clone(), None);
    let mut queue = VecDeque::from([(root, 0usize)]);
    while let Some((state, len)) = queue.pop_front() {
        if len == max_len {
            continue;
        }
        for a in d.out_arrows(state.0) {
            let m = state.1.mul(map.arrow(a));
            if sigma.divides(&m) {
                continue;
            }
            let next = (d.head(a), m);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((state.clone(), a)));
            if next.0 == p.tail() {
                let mut arrows = Vec::new();
                let mut s = next;
                while let Some(Some((prev, a))) = parent.get(&s) {
                    arrows.push(*a);
                    s = prev.clone();
                }
                arrows.reverse();
                return Some(Path::new(d, p.head(), arrows).expect("walk"));
            }
            queue.push_back((next, len + 1));
        }
    }
    None
}

/// Searches for a witness whose words of length at most `screen` are
/// pairwise inequivalent. Images are taken through the contraction.
pub fn find_witness(c: &Contraction, budget: usize, screen: usize) -> WitnessSearch {
    let d = c.source();
    let target_map = ImpressionMap::from_catalog(c.target(), &enumerate_matchings(c.target()));
    let map = c.pulled_back(&target_map);
    let rw = Rewriter::new(d);
    let cands = candidate_pairs(&rw, budget.min(8));
    let count = cands.len();
    for (p, q) in cands {
        if map.eta_bar(&p) != map.eta_bar(&q) {
            continue;
        }
        let Some(r) = closing_path(d, &map, &p, budget) else { continue };
        let w1 = p.then(&r).expect("closing path");
        let w2 = q.then(&r).expect("closing path");
        if !check_witness(&rw, &map, &w1, &w2, budget).holds() {
            continue;
        }
        if verify_freeness(&rw, &w1, &w2, screen) == Freeness::FreeUpTo(screen) {
            return WitnessSearch::Found(FreenessWitness { w1, w2, p, q, r });
        }
    }
    WitnessSearch::NoneFound { budget, candidates: count }
}
