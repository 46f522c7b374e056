//! The monomial rings `S` (generated by cycle images at all vertices) and
//! `R` (monomials that are cycle images at every vertex), the cycle families
//! `𝒞^u`, and membership in the locus `U`.
//!
//! Generator lists are found by bounded enumeration. Membership of a given
//! monomial is decided exactly: a cycle with image `m` only passes through
//! states `(vertex, monomial dividing m)`, and there are finitely many.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::dimer::{ArrowId, DimerQuiver, Path, VertexId};
use crate::impression::{ImpressionMap, Monomial, PointB};
use crate::rewrite::Rewriter;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    S,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{role:?} still gains generators between budget {budget} and {next}; first new one is {new_generator}")]
    SaturationNotReached { role: Role, budget: usize, next: usize, new_generator: Monomial },
}

/// A finite, irredundant generating set of a monomial algebra, each
/// generator with a cycle realizing it.
#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    pub role: Role,
    pub budget: usize,
    pub generators: Vec<Monomial>,
    pub witnesses: Vec<Path>,
}

impl MonomialAlgebra {
    pub fn contains_generator(&self, m: &Monomial) -> bool {
        self.generators.contains(m)
    }

    /// Monoid membership in the monoid spanned by the listed generators.
    pub fn generated_contains(&self, m: &Monomial) -> bool {
        monoid_contains(&self.generators, m, &mut HashMap::new())
    }
}

/// Whether `m` is a product of elements of `gens` (repetition allowed).
pub fn monoid_contains(gens: &[Monomial], m: &Monomial, memo: &mut HashMap<Monomial, bool>) -> bool {
    if m.is_one() {
        return true;
    }
    if let Some(&r) = memo.get(m) {
        return r;
    }
    let mut ok = false;
    for g in gens {
        if g.is_one() {
            continue;
        }
        if let Some(rest) = g.quotient_of(m) {
            if monoid_contains(gens, &rest, memo) {
                ok = true;
                break;
            }
        }
    }
    memo.insert(m.clone(), ok);
    ok
}

/// Drops the unit and every candidate that is a product of earlier ones;
/// candidates are taken by degree, then lexicographically.
pub fn irredundant(mut cands: Vec<(Monomial, Path)>) -> (Vec<Monomial>, Vec<Path>) {
    cands.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
    cands.dedup_by(|a, b| a.0 == b.0);
    let mut gens: Vec<Monomial> = Vec::new();
    let mut wits = Vec::new();
    for (m, w) in cands {
        if m.is_one() {
            continue;
        }
        if !monoid_contains(&gens, &m, &mut HashMap::new()) {
            gens.push(m);
            wits.push(w);
        }
    }
    (gens, wits)
}

/// Cycle images of a dimer under a fixed arrow map.
pub struct CycleImages<'a> {
    d: &'a DimerQuiver,
    map: &'a ImpressionMap,
}

impl<'a> CycleImages<'a> {
    pub fn new(d: &'a DimerQuiver, map: &'a ImpressionMap) -> Self {
        CycleImages { d, map }
    }

    pub fn dimer(&self) -> &'a DimerQuiver {
        self.d
    }

    pub fn map(&self) -> &'a ImpressionMap {
        self.map
    }

    /// Images of all cycles at `start` of length `1..=budget`, each with a
    /// shortest witness.
    pub fn bounded_at(&self, start: VertexId, budget: usize) -> BTreeMap<Monomial, Path> {
        let d = self.d;
        let mut seen: HashSet<(VertexId, Monomial)> = HashSet::new();
        let mut frontier: Vec<(VertexId, Monomial, Vec<ArrowId>)> = vec![(start, Monomial::one(self.map.nvars()), Vec::new())];
        let mut out = BTreeMap::new();
        for _ in 0..budget {
            let mut next = Vec::new();
            for (v, m, arrows) in &frontier {
                for a in d.out_arrows(*v) {
                    let h = d.head(a);
                    let m2 = m.mul(self.map.arrow(a));
                    if !seen.insert((h, m2.clone())) {
                        continue;
                    }
                    let mut arrows2 = arrows.clone();
                    arrows2.push(a);
                    if h == start {
                        out.entry(m2.clone()).or_insert_with(|| Path::from_parts_unchecked(start, start, arrows2.clone()));
                    }
                    next.push((h, m2, arrows2));
                }
            }
            frontier = next;
        }
        out
    }

    /// Every cycle image at `start` dividing `bound`, each with a witness.
    pub fn dividing_at(&self, start: VertexId, bound: &Monomial) -> BTreeMap<Monomial, Path> {
        let d = self.d;
        let mut parent: HashMap<(VertexId, Monomial), Option<((VertexId, Monomial), ArrowId)>> = HashMap::new();
        let root = (start, Monomial::one(self.map.nvars()));
        parent.insert(root.clone(), None);
        let mut queue = VecDeque::from([root.clone()]);
        let mut hits: Vec<(VertexId, Monomial)> = Vec::new();
        // A cycle through the root state with unit image, if any.
        let mut unit_cycle: Option<((VertexId, Monomial), ArrowId)> = None;
        while let Some(state) = queue.pop_front() {
            for a in d.out_arrows(state.0) {
                let m2 = state.1.mul(self.map.arrow(a));
                if !m2.divides(bound) {
                    continue;
                }
                let next = (d.head(a), m2);
                if next == root {
                    unit_cycle.get_or_insert((state.clone(), a));
                    continue;
                }
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((state.clone(), a)));
                if next.0 == start {
                    hits.push(next.clone());
                }
                queue.push_back(next);
            }
        }
        let trace = |mut s: (VertexId, Monomial)| {
            let mut arrows = Vec::new();
            while let Some(Some((prev, a))) = parent.get(&s) {
                arrows.push(*a);
                s = prev.clone();
            }
            arrows.reverse();
            arrows
        };
        let mut out = BTreeMap::new();
        for h in hits {
            let arrows = trace(h.clone());
            out.insert(h.1, Path::from_parts_unchecked(start, start, arrows));
        }
        if let Some((prev, a)) = unit_cycle {
            let mut arrows = trace(prev);
            arrows.push(a);
            out.insert(Monomial::one(self.map.nvars()), Path::from_parts_unchecked(start, start, arrows));
        }
        out
    }

    /// A cycle at `v` with image exactly `m`.
    pub fn cycle_with_image(&self, v: VertexId, m: &Monomial) -> Option<Path> {
        if m.is_one() {
            return Some(Path::vertex(v));
        }
        self.dividing_at(v, m).remove(m)
    }

    /// `m ∈ R`: witnesses at every vertex, or `None`.
    pub fn in_r(&self, m: &Monomial) -> Option<Vec<Path>> {
        (0..self.d.vertex_count()).map(|v| self.cycle_with_image(v, m)).collect()
    }

    /// `m ∈ S`: a factorization into cycle images, or `None`.
    pub fn in_s(&self, m: &Monomial) -> Option<Vec<Path>> {
        let mut images: BTreeMap<Monomial, Path> = BTreeMap::new();
        for v in 0..self.d.vertex_count() {
            for (k, p) in self.dividing_at(v, m) {
                images.entry(k).or_insert(p);
            }
        }
        let gens: Vec<Monomial> = images.keys().filter(|k| !k.is_one()).cloned().collect();
        let mut memo = HashMap::new();
        if !monoid_contains(&gens, m, &mut memo) {
            return None;
        }
        let mut out = Vec::new();
        let mut rest = m.clone();
        while !rest.is_one() {
            let g = gens
                .iter()
                .find(|g| g.quotient_of(&rest).is_some_and(|r| monoid_contains(&gens, &r, &mut memo)))
                .expect("membership implies a factor");
            out.push(images[g].clone());
            rest = g.quotient_of(&rest).expect("divides");
        }
        Some(out)
    }

    fn s_candidates(&self, budget: usize) -> Vec<(Monomial, Path)> {
        let mut all: BTreeMap<Monomial, Path> = BTreeMap::new();
        for v in 0..self.d.vertex_count() {
            for (m, p) in self.bounded_at(v, budget) {
                match all.get(&m) {
                    Some(q) if q.len() <= p.len() => {}
                    _ => {
                        all.insert(m, p);
                    }
                }
            }
        }
        all.into_iter().collect()
    }

    /// Irredundant generators of the monoid spanned by cycle images of
    /// length at most `budget`, without a saturation check.
    pub fn s_at(&self, budget: usize) -> MonomialAlgebra {
        let (generators, witnesses) = irredundant(self.s_candidates(budget));
        MonomialAlgebra { role: Role::S, budget, generators, witnesses }
    }

    /// Irredundant generators of `R` among monomials that some cycle of
    /// length at most `budget` realizes; membership of each candidate in `R`
    /// is decided exactly.
    pub fn r_at(&self, budget: usize) -> MonomialAlgebra {
        let cands: Vec<(Monomial, Path)> = self.s_candidates(budget).into_iter().filter(|(m, _)| self.in_r(m).is_some()).collect();
        let (generators, witnesses) = irredundant(cands);
        MonomialAlgebra { role: Role::R, budget, generators, witnesses }
    }
}

fn saturated(a: MonomialAlgebra, b: &MonomialAlgebra) -> Result<MonomialAlgebra, RingError> {
    match b.generators.iter().find(|g| !a.generators.contains(g)) {
        None => Ok(a),
        Some(g) => Err(RingError::SaturationNotReached { role: a.role, budget: a.budget, next: b.budget, new_generator: g.clone() }),
    }
}

/// Generators of `S` at `budget`, checked against `budget + 2`.
pub fn generators_s(d: &DimerQuiver, map: &ImpressionMap, budget: usize) -> Result<MonomialAlgebra, RingError> {
    let ci = CycleImages::new(d, map);
    saturated(ci.s_at(budget), &ci.s_at(budget + 2))
}

/// Generators of `R` at `budget`, checked against `budget + 2`.
pub fn generators_r(d: &DimerQuiver, map: &ImpressionMap, budget: usize) -> Result<MonomialAlgebra, RingError> {
    let ci = CycleImages::new(d, map);
    saturated(ci.r_at(budget), &ci.r_at(budget + 2))
}

/// Why a generator of `S` is in the local ring of `R` at the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UCertificate {
    /// The generator already lies in `R`.
    InR,
    /// `s = f1 / f2` with `f1, f2 ∈ R` and `f2(b) ≠ 0`.
    Fraction { f1: Monomial, f2: Monomial },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UVerdict {
    InU(Vec<(Monomial, UCertificate)>),
    /// `generator` has no admissible denominator.
    NotInU { generator: Monomial },
    /// No denominator found for `generator` within the search bound.
    Unknown { generator: Monomial },
}

impl UVerdict {
    pub fn is_in(&self) -> Option<bool> {
        match self {
            UVerdict::InU(_) => Some(true),
            UVerdict::NotInU { .. } => Some(false),
            UVerdict::Unknown { .. } => None,
        }
    }
}

/// Decides `R_{n∩R} = S_n` for the maximal ideal `n` of `S` cut out by `b`.
///
/// Each generator `s` of `S` needs `f2 ∈ R` with `f2(b) ≠ 0` and
/// `s·f2 ∈ R`. Denominators are products of at most `max_factors`
/// generators of `r` that do not vanish at `b`. The negative answer is
/// returned only when `b` kills every variable, so that `f2 = 1` is the only
/// admissible denominator.
pub fn in_u<T: Scalar>(
    images: &CycleImages<'_>,
    s: &MonomialAlgebra,
    r: &MonomialAlgebra,
    b: &PointB<T>,
    max_factors: usize,
) -> UVerdict {
    let live: Vec<&Monomial> = r.generators.iter().filter(|g| g.nonvanishing_at(b)).collect();
    let all_zero = b.values.iter().all(|v| v.is_zero());
    let nvars = images.map().nvars();
    // Denominators by increasing number of factors.
    let mut denominators: Vec<Monomial> = Vec::new();
    let mut layer = vec![Monomial::one(nvars)];
    let mut seen: HashSet<Monomial> = HashSet::new();
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for base in &layer {
            for g in &live {
                let m = base.mul(g);
                if seen.insert(m.clone()) {
                    next.push(m);
                }
            }
        }
        next.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
        denominators.extend(next.iter().cloned());
        layer = next;
    }
    let mut certs = Vec::new();
    for gen in &s.generators {
        if images.in_r(gen).is_some() {
            certs.push((gen.clone(), UCertificate::InR));
            continue;
        }
        if all_zero {
            return UVerdict::NotInU { generator: gen.clone() };
        }
        let found = denominators.iter().find(|f2| images.in_r(&gen.mul(f2)).is_some());
        match found {
            Some(f2) => certs.push((gen.clone(), UCertificate::Fraction { f1: gen.mul(f2), f2: f2.clone() })),
            None => return UVerdict::Unknown { generator: gen.clone() },
        }
    }
    UVerdict::InU(certs)
}

/// Cycles of class `u` at each vertex that are not equivalent, within the
/// rewrite budget, to any path with a proper cyclic subpath.
#[derive(Clone, Debug)]
pub struct CycleFamily {
    pub u: [i64; 2],
    pub by_vertex: Vec<Vec<Path>>,
}

impl CycleFamily {
    pub fn covers_all_vertices(&self) -> bool {
        self.by_vertex.iter().all(|c| !c.is_empty())
    }

    pub fn cycles(&self) -> impl Iterator<Item = &Path> + '_ {
        self.by_vertex.iter().flatten()
    }

    /// `Q_1^u`: arrows occurring in some member.
    pub fn arrows(&self) -> Vec<ArrowId> {
        let mut out: Vec<ArrowId> = self.cycles().flat_map(|c| c.arrows().iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Vertex-simple cycles at `v` of length at most `budget`.
fn simple_cycles_at(d: &DimerQuiver, v: VertexId, budget: usize) -> Vec<Path> {
    fn go(d: &DimerQuiver, start: VertexId, at: VertexId, used: &mut Vec<bool>, cur: &mut Vec<ArrowId>, budget: usize, out: &mut Vec<Path>) {
        if cur.len() == budget {
            return;
        }
        for a in d.out_arrows(at) {
            let h = d.head(a);
            if h == start {
                cur.push(a);
                out.push(Path::from_parts_unchecked(start, start, cur.clone()));
                cur.pop();
            } else if !used[h] {
                used[h] = true;
                cur.push(a);
                go(d, start, h, used, cur, budget, out);
                cur.pop();
                used[h] = false;
            }
        }
    }
    let mut used = vec![false; d.vertex_count()];
    used[v] = true;
    let mut out = Vec::new();
    go(d, v, v, &mut used, &mut Vec::new(), budget, &mut out);
    out
}

/// The families `𝒞^u` for nonzero `u` with both coordinates in
/// `-window..=window`, from cycles of length at most `budget`. A candidate is
/// kept when no path reached from it by rewriting, within length
/// `|c| + longest face`, has a proper cyclic subpath. Every such cycle is in
/// particular vertex-simple. The class `(0,0)` is left out: its candidates
/// are powers of unit cycles up to rewriting.
pub fn cycle_families(d: &DimerQuiver, budget: usize, window: i64) -> Vec<CycleFamily> {
    let rw = Rewriter::new(d);
    let h = rw.homology();
    let mut families: BTreeMap<[i64; 2], Vec<Vec<Path>>> = BTreeMap::new();
    let mut verdicts: HashMap<Path, bool> = HashMap::new();
    for v in 0..d.vertex_count() {
        for c in simple_cycles_at(d, v, budget) {
            let u = h.of(&c);
            if u == [0, 0] || u[0].abs() > window || u[1].abs() > window {
                continue;
            }
            let keep = *verdicts.entry(c.clone()).or_insert_with(|| {
                let class = rw.class(&c, c.len() + d.max_face_len());
                class.members.iter().all(|m| !m.has_proper_cyclic_subpath(d))
            });
            if keep {
                families.entry(u).or_insert_with(|| vec![Vec::new(); d.vertex_count()])[v].push(c);
            }
        }
    }
    families.into_iter().map(|(u, by_vertex)| CycleFamily { u, by_vertex }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matchings::enumerate_matchings;
    use crate::Rational;

    fn setup(name: &str) -> (DimerQuiver, ImpressionMap) {
        let d = fixtures::load(name);
        let map = ImpressionMap::from_catalog(&d, &enumerate_matchings(&d));
        (d, map)
    }

    #[test]
    fn conifold_s_equals_r() {
        let (d, map) = setup("conifold");
        let s = generators_s(&d, &map, 12).unwrap();
        let r = generators_r(&d, &map, 12).unwrap();
        assert_eq!(s.generators, r.generators);
        assert_eq!(s.generators.len(), 4);
        for g in &s.generators {
            assert_eq!(g.degree(), 2);
        }
        assert!(s.generated_contains(map.sigma()));
    }

    #[test]
    fn membership_oracles_agree_with_generators_on_conifold() {
        let (d, map) = setup("conifold");
        let ci = CycleImages::new(&d, &map);
        let s = ci.s_at(10);
        for exps in [[1, 0, 1, 0], [2, 0, 1, 1], [1, 1, 1, 1], [1, 0, 0, 0], [2, 1, 0, 0]] {
            let m = Monomial::from_exponents(exps.to_vec());
            assert_eq!(ci.in_s(&m).is_some(), s.generated_contains(&m), "{m}");
            assert_eq!(ci.in_r(&m).is_some(), s.generated_contains(&m), "{m}");
        }
    }

    #[test]
    fn in_s_factorization_multiplies_back() {
        let (d, map) = setup("conifold");
        let ci = CycleImages::new(&d, &map);
        let m = Monomial::from_exponents(vec![2, 1, 1, 2]);
        let parts = ci.in_s(&m).unwrap();
        let prod = parts.iter().fold(Monomial::one(4), |acc, p| acc.mul(&map.eta_bar(p)));
        assert_eq!(prod, m);
    }

    #[test]
    fn cancellative_points_are_in_u() {
        let (d, map) = setup("conifold");
        let ci = CycleImages::new(&d, &map);
        let s = ci.s_at(8);
        let r = ci.r_at(8);
        let b = PointB::<Rational>::zeros(4);
        match in_u(&ci, &s, &r, &b, 3) {
            UVerdict::InU(certs) => assert!(certs.iter().all(|(_, c)| *c == UCertificate::InR)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conifold_families() {
        let d = fixtures::load("conifold");
        let fams = cycle_families(&d, 6, 1);
        assert!(!fams.is_empty());
        let a1b2 = d.path(&["a1", "b2"]).unwrap();
        assert!(fams.iter().any(|f| f.cycles().any(|c| *c == a1b2)));
        for f in &fams {
            assert_ne!(f.u, [0, 0]);
        }
    }
}
