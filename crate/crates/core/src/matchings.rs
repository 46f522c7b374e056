//! Perfect matchings by exact cover over faces.

use serde::Serialize;

use crate::dimer::{ArrowId, DimerQuiver};

/// A set of arrows meeting every face exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    arrows: Vec<ArrowId>,
}

impl PerfectMatching {
    /// Sorts and deduplicates; does not check the matching property.
    pub fn new(mut arrows: Vec<ArrowId>) -> PerfectMatching {
        arrows.sort_unstable();
        arrows.dedup();
        PerfectMatching { arrows }
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.arrows.binary_search(&a).is_ok()
    }

    /// Checks `|D ∩ f| = 1` for every face, counting repeated arrows.
    pub fn is_perfect_in(&self, d: &DimerQuiver) -> bool {
        d.faces().iter().all(|f| f.arrows.iter().filter(|&&a| self.contains(a)).count() == 1)
    }
}

/// True iff the arrows outside `matching` form a strongly connected quiver,
/// i.e. they support a simple module of dimension one at every vertex.
pub fn is_simple_support(d: &DimerQuiver, matching: &PerfectMatching) -> bool {
    d.strongly_connected_on(|a| !matching.contains(a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    #[serde(skip)]
    pub matching: PerfectMatching,
    pub simple: bool,
    /// Index of the variable `x_D`, present only for simple matchings.
    pub var: Option<usize>,
}

/// All perfect matchings in canonical order (lexicographic on sorted arrow
/// indices, arrows indexed in declaration order); simple ones are numbered
/// `x0, x1, ...` in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCatalog {
    entries: Vec<CatalogEntry>,
    simple: Vec<usize>,
    arrow_count: usize,
}

impl MatchingCatalog {
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of matching variables.
    pub fn var_count(&self) -> usize {
        self.simple.len()
    }

    /// The simple matching behind variable `x_i`.
    pub fn simple_matching(&self, var: usize) -> &PerfectMatching {
        &self.entries[self.simple[var]].matching
    }

    pub fn simple_matchings(&self) -> impl Iterator<Item = &PerfectMatching> + '_ {
        self.simple.iter().map(move |&i| &self.entries[i].matching)
    }

    pub fn var_name(var: usize) -> String {
        format!("x{var}")
    }

    /// `Q_1^†`: arrows contained in no simple matching. Arrows a simple
    /// module of dimension `1^{Q_0}` never annihilates are exactly these,
    /// because such modules are evaluations of the matching monomials.
    pub fn dagger_arrows(&self) -> Vec<ArrowId> {
        (0..self.arrow_count).filter(|&a| self.simple_matchings().all(|m| !m.contains(a))).collect()
    }

    /// Arrows lying in no perfect matching at all.
    pub fn unmatched_arrows(&self) -> Vec<ArrowId> {
        (0..self.arrow_count).filter(|&a| self.entries.iter().all(|e| !e.matching.contains(a))).collect()
    }

    pub fn to_json(&self, d: &DimerQuiver) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    let mut obj = serde_json::Map::new();
                    obj.insert(
                        "arrows".into(),
                        e.matching.arrows().iter().map(|&a| serde_json::Value::from(d.arrow_name(a))).collect(),
                    );
                    obj.insert("simple".into(), e.simple.into());
                    obj.insert(
                        "var".into(),
                        e.var.map(|v| serde_json::Value::from(Self::var_name(v))).unwrap_or(serde_json::Value::Null),
                    );
                    serde_json::Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Exhaustive exact-cover search. Each arrow covers its plus and its minus
/// face; an arrow repeated inside one face can never be chosen. The most
/// constrained uncovered face is branched on first.
pub fn enumerate_matchings(d: &DimerQuiver) -> MatchingCatalog {
    let nf = d.face_count();
    // Arrows usable at all, and the faces each one covers.
    let mut covers: Vec<Option<[usize; 2]>> = Vec::with_capacity(d.arrow_count());
    for a in 0..d.arrow_count() {
        let p = d.incidence(a, crate::Sign::Plus).face;
        let m = d.incidence(a, crate::Sign::Minus).face;
        let once = |f: usize| d.face(f).arrows.iter().filter(|&&x| x == a).count() == 1;
        covers.push(if p != m && once(p) && once(m) { Some([p, m]) } else { None });
    }
    let mut face_arrows: Vec<Vec<ArrowId>> = vec![Vec::new(); nf];
    for (a, c) in covers.iter().enumerate() {
        if let Some([p, m]) = c {
            face_arrows[*p].push(a);
            face_arrows[*m].push(a);
        }
    }

    struct Search<'a> {
        covers: &'a [Option<[usize; 2]>],
        face_arrows: &'a [Vec<ArrowId>],
        covered: Vec<bool>,
        chosen: Vec<ArrowId>,
        found: Vec<PerfectMatching>,
    }

    impl Search<'_> {
        fn available(&self, a: ArrowId) -> bool {
            let [p, m] = self.covers[a].expect("only usable arrows are listed");
            !self.covered[p] && !self.covered[m]
        }

        fn go(&mut self) {
            let mut best: Option<(usize, usize)> = None;
            for f in 0..self.covered.len() {
                if self.covered[f] {
                    continue;
                }
                let n = self.face_arrows[f].iter().filter(|&&a| self.available(a)).count();
                if n == 0 {
                    return;
                }
                if best.map_or(true, |(_, bn)| n < bn) {
                    best = Some((f, n));
                }
            }
            let Some((f, _)) = best else {
                self.found.push(PerfectMatching::new(self.chosen.clone()));
                return;
            };
            let options: Vec<ArrowId> = self.face_arrows[f].iter().copied().filter(|&a| self.available(a)).collect();
            for a in options {
                let [p, m] = self.covers[a].expect("usable");
                self.covered[p] = true;
                self.covered[m] = true;
                self.chosen.push(a);
                self.go();
                self.chosen.pop();
                self.covered[p] = false;
                self.covered[m] = false;
            }
        }
    }

    let mut search =
        Search { covers: &covers, face_arrows: &face_arrows, covered: vec![false; nf], chosen: Vec::new(), found: Vec::new() };
    if nf > 0 {
        search.go();
    }
    let mut found = search.found;
    found.sort();
    found.dedup();

    let mut entries = Vec::with_capacity(found.len());
    let mut simple = Vec::new();
    for m in found {
        let is_simple = is_simple_support(d, &m);
        let var = if is_simple {
            simple.push(entries.len());
            Some(simple.len() - 1)
        } else {
            None
        };
        entries.push(CatalogEntry { matching: m, simple: is_simple, var });
    }
    MatchingCatalog { entries, simple, arrow_count: d.arrow_count() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(d: &DimerQuiver, m: &PerfectMatching) -> Vec<String> {
        m.arrows().iter().map(|&a| d.arrow_name(a).to_string()).collect()
    }

    #[test]
    fn conifold_singletons() {
        let d = fixtures::load("conifold");
        let cat = enumerate_matchings(&d);
        let all: Vec<Vec<String>> = cat.entries().iter().map(|e| names(&d, &e.matching)).collect();
        assert_eq!(all, vec![vec!["a1"], vec!["a2"], vec!["b1"], vec!["b2"]]);
        assert!(cat.entries().iter().all(|e| e.simple));
        assert_eq!(cat.var_count(), 4);
        assert!(cat.dagger_arrows().is_empty());
    }

    #[test]
    fn simplicity_of_conifold_a1() {
        let d = fixtures::load("conifold");
        assert!(is_simple_support(&d, &PerfectMatching::new(vec![0])));
        // Removing both arrows out of vertex 1 disconnects.
        assert!(!is_simple_support(&d, &PerfectMatching::new(vec![0, 1])));
        assert!(is_simple_support(&d, &PerfectMatching::new(vec![])));
    }

    #[test]
    fn every_entry_is_perfect() {
        for (name, _) in fixtures::DIMERS {
            let d = fixtures::load(name);
            for e in enumerate_matchings(&d).entries() {
                assert!(e.matching.is_perfect_in(&d), "{name}");
            }
        }
    }

    #[test]
    fn brute_force_agrees_on_small_fixtures() {
        for name in ["conifold", "fig_ab_a", "fig_ab_b", "fig_ab_c"] {
            let d = fixtures::load(name);
            let n = d.arrow_count();
            let mut brute = Vec::new();
            for mask in 0u32..(1 << n) {
                let m = PerfectMatching::new((0..n).filter(|&a| mask >> a & 1 == 1).collect());
                if m.is_perfect_in(&d) {
                    brute.push(m);
                }
            }
            brute.sort();
            let cat = enumerate_matchings(&d);
            let got: Vec<PerfectMatching> = cat.entries().iter().map(|e| e.matching.clone()).collect();
            assert_eq!(got, brute, "{name}");
        }
    }

    #[test]
    fn fig_ab_a_dagger_contains_a_and_b() {
        let d = fixtures::load("fig_ab_a");
        let cat = enumerate_matchings(&d);
        assert!(cat.var_count() >= 1);
        let dagger = cat.dagger_arrows();
        for n in ["a", "b"] {
            assert!(dagger.contains(&d.arrow_id(n).unwrap()));
        }
    }
}
