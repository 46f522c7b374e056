//! Contracting a set of arrows to vertices.
//!
//! The contracted arrows are deleted and their endpoints identified; faces
//! keep their remaining arrows. The path map `ψ` erases contracted arrows.
//! Arrow ids survive unchanged, and each merged vertex takes the name of the
//! first declared vertex it absorbs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::dimer::{ArrowId, DimerQuiver, Path, RawArrow, RawDimer, RawFace, Sign, ValidationReport, VertexId};
use crate::impression::{ImpressionMap, Monomial};
use crate::matchings::{enumerate_matchings, MatchingCatalog, PerfectMatching};
use crate::rewrite::{Equivalence, Rewriter};
use crate::rings::{CycleImages, MonomialAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("contracted arrows contain the directed cycle {0:?}")]
    CycleContracted(Vec<String>),
    #[error("contracted arrows contain an undirected cycle through `{0}`")]
    NotForest(String),
    #[error("the contracted quiver is not a dimer: {0}")]
    TargetNotDimer(ValidationReport),
    #[error("the contracted quiver has no simple perfect matchings")]
    MatchingCorrespondenceFailure,
}

#[derive(Clone, Debug)]
pub struct Contraction {
    source: DimerQuiver,
    target: DimerQuiver,
    stars: Vec<ArrowId>,
    vertex_map: Vec<VertexId>,
    arrow_map: Vec<Option<ArrowId>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// A directed cycle among `stars`, as arrow names, if one exists.
fn directed_cycle(d: &DimerQuiver, stars: &[ArrowId]) -> Option<Vec<String>> {
    // Depth-first search with colors over the subquiver of stars.
    fn visit(d: &DimerQuiver, stars: &[ArrowId], v: VertexId, color: &mut [u8], stack: &mut Vec<ArrowId>) -> Option<Vec<ArrowId>> {
        color[v] = 1;
        for &a in stars.iter().filter(|&&a| d.tail(a) == v) {
            let h = d.head(a);
            stack.push(a);
            if color[h] == 1 {
                let start = stack.iter().position(|&x| d.tail(x) == h).expect("on stack");
                return Some(stack[start..].to_vec());
            }
            if color[h] == 0 {
                if let Some(c) = visit(d, stars, h, color, stack) {
                    return Some(c);
                }
            }
            stack.pop();
        }
        color[v] = 2;
        None
    }
    let mut color = vec![0u8; d.vertex_count()];
    for v in 0..d.vertex_count() {
        if color[v] == 0 {
            if let Some(c) = visit(d, stars, v, &mut color, &mut Vec::new()) {
                return Some(c.into_iter().map(|a| d.arrow_name(a).to_string()).collect());
            }
        }
    }
    None
}

impl Contraction {
    pub fn by_names(d: &DimerQuiver, names: &[&str]) -> Result<Contraction, ContractionError> {
        let stars = names
            .iter()
            .map(|n| d.arrow_id(n).ok_or_else(|| ContractionError::UnknownArrow(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Contraction::new(d, &stars)
    }

    pub fn new(d: &DimerQuiver, stars: &[ArrowId]) -> Result<Contraction, ContractionError> {
        let stars: Vec<ArrowId> = stars.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(c) = directed_cycle(d, &stars) {
            return Err(ContractionError::CycleContracted(c));
        }
        let mut parent: Vec<usize> = (0..d.vertex_count()).collect();
        for &a in &stars {
            let (t, h) = (find(&mut parent, d.tail(a)), find(&mut parent, d.head(a)));
            if t == h {
                return Err(ContractionError::NotForest(d.arrow_name(a).to_string()));
            }
            parent[t.max(h)] = t.min(h);
        }
        let roots: Vec<usize> = (0..d.vertex_count()).map(|v| find(&mut parent, v)).collect();
        let mut new_index = vec![usize::MAX; d.vertex_count()];
        let mut vertices = Vec::new();
        for v in 0..d.vertex_count() {
            if roots[v] == v {
                new_index[v] = vertices.len();
                vertices.push(d.vertex_name(v).to_string());
            }
        }
        let vertex_map: Vec<VertexId> = roots.iter().map(|&r| new_index[r]).collect();

        let is_star = |a: ArrowId| stars.binary_search(&a).is_ok();
        let mut arrow_map = vec![None; d.arrow_count()];
        let mut arrows = Vec::new();
        for a in 0..d.arrow_count() {
            if is_star(a) {
                continue;
            }
            arrow_map[a] = Some(arrows.len());
            arrows.push(RawArrow {
                id: d.arrow_name(a).to_string(),
                tail: vertices[vertex_map[d.tail(a)]].clone(),
                head: vertices[vertex_map[d.head(a)]].clone(),
            });
        }
        let faces = d
            .faces()
            .iter()
            .map(|f| RawFace {
                arrows: f.arrows.iter().filter(|&&a| !is_star(a)).map(|&a| d.arrow_name(a).to_string()).collect(),
                sign: f.sign,
            })
            .collect();
        let raw = RawDimer { vertices, arrows, faces };
        let target = DimerQuiver::validate(&raw).map_err(ContractionError::TargetNotDimer)?;
        Ok(Contraction { source: d.clone(), target, stars, vertex_map, arrow_map })
    }

    pub fn source(&self) -> &DimerQuiver {
        &self.source
    }

    pub fn target(&self) -> &DimerQuiver {
        &self.target
    }

    /// `Q_1^*`, sorted.
    pub fn stars(&self) -> &[ArrowId] {
        &self.stars
    }

    pub fn is_star(&self, a: ArrowId) -> bool {
        self.stars.binary_search(&a).is_ok()
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_map[v]
    }

    pub fn arrow_image(&self, a: ArrowId) -> Option<ArrowId> {
        self.arrow_map[a]
    }

    /// Source arrow mapped to target arrow `a`.
    pub fn arrow_preimage(&self, a: ArrowId) -> ArrowId {
        self.arrow_map.iter().position(|&x| x == Some(a)).expect("every target arrow has a source")
    }

    pub fn psi(&self, p: &Path) -> Path {
        let arrows = p.arrows().iter().filter_map(|&a| self.arrow_map[a]).collect();
        Path::new(&self.target, self.vertex_map[p.tail()], arrows).expect("images of composable paths compose")
    }

    /// `η̄ = τ̄′ ∘ ψ`: the target's arrow monomials pulled back, contracted
    /// arrows sent to 1, and `σ` the target's.
    pub fn pulled_back(&self, target_map: &ImpressionMap) -> ImpressionMap {
        let arrows = (0..self.source.arrow_count())
            .map(|a| match self.arrow_map[a] {
                Some(b) => target_map.arrow(b).clone(),
                None => Monomial::one(target_map.nvars()),
            })
            .collect();
        ImpressionMap::from_parts(target_map.nvars(), arrows, target_map.sigma().clone())
    }

    /// For every relation `p+ ~ p-` of the source, whether `ψ(p+) ~ ψ(p-)`
    /// is found in the target within `budget`. Returns the failing arrows.
    pub fn relation_failures(&self, budget: usize) -> Vec<ArrowId> {
        let rw = Rewriter::new(&self.target);
        let mut failures = Vec::new();
        for a in 0..self.source.arrow_count() {
            let start = self.source.head(a);
            let plus = Path::new(&self.source, start, self.source.complement(a, Sign::Plus)).expect("complement");
            let minus = Path::new(&self.source, start, self.source.complement(a, Sign::Minus)).expect("complement");
            let ok = matches!(rw.equivalent(&self.psi(&plus), &self.psi(&minus), budget), Ok(Equivalence::Equivalent { .. }));
            if !ok {
                failures.push(a);
            }
        }
        failures
    }

    /// How simple matchings on the two sides relate: for each simple
    /// matching of the source, the target variable of `D \ Q_1^*` if that is
    /// a simple matching there; for each simple matching of the target,
    /// whether its preimage is a perfect matching of the source.
    pub fn matching_correspondence(&self, source: &MatchingCatalog, target: &MatchingCatalog) -> MatchingCorrespondence {
        let forward = source
            .simple_matchings()
            .map(|m| {
                let img = PerfectMatching::new(m.arrows().iter().filter_map(|&a| self.arrow_map[a]).collect());
                (0..target.var_count()).find(|&v| *target.simple_matching(v) == img)
            })
            .collect();
        let backward = target
            .simple_matchings()
            .map(|m| PerfectMatching::new(m.arrows().iter().map(|&a| self.arrow_preimage(a)).collect()).is_perfect_in(&self.source))
            .collect();
        let stars_avoid_simple = source.simple_matchings().all(|m| self.stars.iter().all(|&a| !m.contains(a)));
        MatchingCorrespondence { forward, backward, stars_avoid_simple }
    }

    /// Compares `S`, generated by `η̄ = τ̄′ψ` of source cycles, with `S′`,
    /// generated by `τ̄′` of target cycles, both in the target's variables.
    pub fn check_s_equals_sprime(&self, budget: usize) -> Result<SCheck, ContractionError> {
        let target_cat = enumerate_matchings(&self.target);
        if target_cat.var_count() == 0 {
            return Err(ContractionError::MatchingCorrespondenceFailure);
        }
        let source_cat = enumerate_matchings(&self.source);
        let target_map = ImpressionMap::from_catalog(&self.target, &target_cat);
        let source_map = self.pulled_back(&target_map);
        let src = CycleImages::new(&self.source, &source_map);
        let tgt = CycleImages::new(&self.target, &target_map);
        let s = src.s_at(budget);
        let s_prime = tgt.s_at(budget);
        // Each side's generators are tested against the other side exactly.
        let verdict = if let Some(g) = s.generators.iter().find(|g| tgt.in_s(g).is_none()) {
            SComparison::Differ { witness: g.clone(), in_s: true }
        } else if let Some(g) = s_prime.generators.iter().find(|g| src.in_s(g).is_none()) {
            SComparison::Differ { witness: g.clone(), in_s: false }
        } else {
            SComparison::EqualUpTo(budget)
        };
        let correspondence = self.matching_correspondence(&source_cat, &target_cat);
        Ok(SCheck { verdict, s, s_prime, correspondence })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCorrespondence {
    pub forward: Vec<Option<usize>>,
    pub backward: Vec<bool>,
    /// No contracted arrow lies in a simple matching of the source.
    pub stars_avoid_simple: bool,
}

impl MatchingCorrespondence {
    pub fn is_bijection(&self) -> bool {
        let mut hit: Vec<usize> = self.forward.iter().flatten().copied().collect();
        hit.sort_unstable();
        hit.dedup();
        self.forward.iter().all(|f| f.is_some()) && hit.len() == self.forward.len() && hit.len() == self.backward.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SComparison {
    EqualUpTo(usize),
    /// A generator found on one side (`in_s`: the source side) that the
    /// other side does not contain.
    Differ { witness: Monomial, in_s: bool },
}

#[derive(Clone, Debug)]
pub struct SCheck {
    pub verdict: SComparison,
    pub s: MonomialAlgebra,
    pub s_prime: MonomialAlgebra,
    pub correspondence: MatchingCorrespondence,
}
