//! Representations of dimension one at every vertex: construction from
//! points of `Max B`, simplicity, Azumaya-locus verdicts, transfer along a
//! contraction, and normal forms under the torus action.

use std::collections::VecDeque;

use thiserror::Error;

use crate::contraction::Contraction;
use crate::dimer::{ArrowId, DimerQuiver, Path, Sign, VertexId};
use crate::impression::{ImpressionMap, PointB};
use crate::rings::{in_u, CycleImages, MonomialAlgebra, UVerdict};
use crate::scalar::Scalar;

/// One scalar per arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation1<T> {
    pub values: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("relation from arrow `{0}` fails")]
    RelationViolation(String),
    #[error("contracted arrow `{0}` acts by zero")]
    ContractedArrowVanishes(String),
    #[error("expected {expected} arrow values, got {got}")]
    WrongLength { expected: usize, got: usize },
}

impl<T: Scalar> Representation1<T> {
    pub fn new(values: Vec<T>) -> Self {
        Representation1 { values }
    }

    pub fn ones(d: &DimerQuiver) -> Self {
        Representation1 { values: vec![T::one(); d.arrow_count()] }
    }

    pub fn path_value(&self, p: &Path) -> T {
        p.arrows().iter().fold(T::one(), |acc, &a| acc * self.values[a].clone())
    }

    pub fn value_of(&self, arrows: &[ArrowId]) -> T {
        arrows.iter().fold(T::one(), |acc, &a| acc * self.values[a].clone())
    }

    pub fn support(&self) -> Vec<bool> {
        self.values.iter().map(|v| !v.is_zero()).collect()
    }

    /// The first arrow whose two complements act differently.
    pub fn relation_violation(&self, d: &DimerQuiver) -> Option<ArrowId> {
        (0..d.arrow_count()).find(|&a| self.value_of(&d.complement(a, Sign::Plus)) != self.value_of(&d.complement(a, Sign::Minus)))
    }

    pub fn check_relations(&self, d: &DimerQuiver) -> Result<(), RepError> {
        if self.values.len() != d.arrow_count() {
            return Err(RepError::WrongLength { expected: d.arrow_count(), got: self.values.len() });
        }
        match self.relation_violation(d) {
            Some(a) => Err(RepError::RelationViolation(d.arrow_name(a).to_string())),
            None => Ok(()),
        }
    }
}

/// Arrow `a` acts by `η̄(a)(b)`.
pub fn rep_from_point<T: Scalar>(d: &DimerQuiver, map: &ImpressionMap, b: &PointB<T>) -> Result<Representation1<T>, RepError> {
    let r = Representation1 { values: (0..d.arrow_count()).map(|a| map.arrow_value(a, b)).collect() };
    r.check_relations(d)?;
    Ok(r)
}

/// A representation of dimension `1^{Q_0}` is simple iff the arrows acting
/// nonzero connect every vertex to every other.
pub fn is_simple<T: Scalar>(d: &DimerQuiver, r: &Representation1<T>) -> bool {
    let support = r.support();
    d.strongly_connected_on(|a| support[a])
}

/// Direct search for a proper nonzero subrepresentation: a vertex subset
/// closed under the arrows acting nonzero. Exponential in `|Q_0|`.
pub fn has_proper_subrepresentation<T: Scalar>(d: &DimerQuiver, r: &Representation1<T>) -> bool {
    let n = d.vertex_count();
    assert!(n <= 24, "subset search is exponential");
    let support = r.support();
    for mask in 1u32..((1u32 << n) - 1) {
        let closed = d
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, arr)| !support[a] || mask >> arr.tail & 1 == 0 || mask >> arr.head & 1 == 1);
        if closed {
            return true;
        }
    }
    false
}

/// Membership of the point in the Azumaya locus of a cancellative dimer
/// algebra: the representation over it is simple of dimension `1^{Q_0}`.
pub fn azumaya_aprime<T: Scalar>(d: &DimerQuiver, map: &ImpressionMap, b: &PointB<T>) -> bool {
    match rep_from_point(d, map, b) {
        Ok(r) => is_simple(d, &r),
        Err(_) => false,
    }
}

/// Three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_option(b: Option<bool>) -> Tri {
        match b {
            Some(true) => Tri::Yes,
            Some(false) => Tri::No,
            None => Tri::Unknown,
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AzumayaVerdict<T> {
    pub point: PointB<T>,
    pub in_azumaya_aprime: bool,
    pub in_u: UVerdict,
    pub in_azumaya_a: Tri,
}

impl<T> AzumayaVerdict<T> {
    /// `𝒜 = 𝒜′ ∩ U` holds for the reported values.
    pub fn consistent(&self) -> bool {
        let u = Tri::from_option(self.in_u.is_in());
        let a_prime = if self.in_azumaya_aprime { Tri::Yes } else { Tri::No };
        a_prime.and(u) == self.in_azumaya_a
    }
}

/// Everything needed to place points of the target's `Max B` relative to
/// the source algebra.
pub struct LocusContext<'c> {
    pub contraction: &'c Contraction,
    pub target_map: ImpressionMap,
    pub source_map: ImpressionMap,
    pub s: MonomialAlgebra,
    pub r: MonomialAlgebra,
    /// The listed `R` generators did not change from `budget` to `budget + 2`.
    pub r_stable: bool,
    pub max_factors: usize,
}

impl<'c> LocusContext<'c> {
    /// Builds `τ̄′`, `η̄ = τ̄′ψ` and the generators of `S`, `R` at `budget`.
    pub fn new(contraction: &'c Contraction, budget: usize) -> LocusContext<'c> {
        let target_cat = crate::matchings::enumerate_matchings(contraction.target());
        let target_map = ImpressionMap::from_catalog(contraction.target(), &target_cat);
        let source_map = contraction.pulled_back(&target_map);
        let images = CycleImages::new(contraction.source(), &source_map);
        let s = images.s_at(budget);
        let r = images.r_at(budget);
        let r_next = images.r_at(budget + 2);
        let r_stable = r_next.generators == r.generators;
        LocusContext { contraction, target_map, source_map, s, r, r_stable, max_factors: 4 }
    }

    pub fn images(&self) -> CycleImages<'_> {
        CycleImages::new(self.contraction.source(), &self.source_map)
    }

    pub fn in_u<T: Scalar>(&self, b: &PointB<T>) -> UVerdict {
        in_u(&self.images(), &self.s, &self.r, b, self.max_factors)
    }

    /// `𝒜 = 𝒜′ ∩ U` evaluated at `b`.
    pub fn azumaya_a<T: Scalar>(&self, b: &PointB<T>) -> AzumayaVerdict<T> {
        let in_azumaya_aprime = azumaya_aprime(self.contraction.target(), &self.target_map, b);
        let in_u = self.in_u(b);
        let a_prime = if in_azumaya_aprime { Tri::Yes } else { Tri::No };
        let in_azumaya_a = a_prime.and(Tri::from_option(in_u.is_in()));
        AzumayaVerdict { point: b.clone(), in_azumaya_aprime, in_u, in_azumaya_a }
    }
}

/// Pulls a representation of the target back: contracted arrows act by 1.
pub fn transfer_back<T: Scalar>(c: &Contraction, r: &Representation1<T>) -> Representation1<T> {
    let values = (0..c.source().arrow_count())
        .map(|a| match c.arrow_image(a) {
            Some(b) => r.values[b].clone(),
            None => T::one(),
        })
        .collect();
    Representation1 { values }
}

/// Rescales vertex bases so every contracted arrow acts by 1, then reads
/// off the values of the surviving arrows. Each tree of contracted arrows is
/// normalized from its first declared vertex.
pub fn transfer_forward<T: Scalar>(c: &Contraction, r: &Representation1<T>) -> Result<Representation1<T>, RepError> {
    let d = c.source();
    if let Some(&a) = c.stars().iter().find(|&&a| r.values[a].is_zero()) {
        return Err(RepError::ContractedArrowVanishes(d.arrow_name(a).to_string()));
    }
    let scale = normalizing_scale(d, r, |a| c.is_star(a));
    let n = gauge(d, r, &scale);
    Ok(Representation1 {
        values: (0..c.target().arrow_count()).map(|b| n.values[c.arrow_preimage(b)].clone()).collect(),
    })
}

/// Basis change by `scale[v]` at each vertex: `a ↦ scale[h] · r(a) / scale[t]`.
pub fn gauge<T: Scalar>(d: &DimerQuiver, r: &Representation1<T>, scale: &[T]) -> Representation1<T> {
    Representation1 {
        values: d
            .arrows()
            .iter()
            .zip(&r.values)
            .map(|(arr, v)| scale[arr.head].clone() * v.clone() / scale[arr.tail].clone())
            .collect(),
    }
}

/// Vertex scalars making every arrow of a spanning forest of `tree(a)`
/// arrows (found breadth-first from the lowest vertex of each component,
/// arrows taken in index order) act by 1. Arrows selected must act nonzero.
fn normalizing_scale<T: Scalar>(d: &DimerQuiver, r: &Representation1<T>, tree: impl Fn(ArrowId) -> bool) -> Vec<T> {
    let n = d.vertex_count();
    let mut scale: Vec<Option<T>> = vec![None; n];
    for root in 0..n {
        if scale[root].is_some() {
            continue;
        }
        scale[root] = Some(T::one());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (a, arr) in d.arrows().iter().enumerate() {
                if !tree(a) || r.values[a].is_zero() {
                    continue;
                }
                let sv = scale[v].clone().expect("visited");
                if arr.tail == v && scale[arr.head].is_none() {
                    // scale[h] * r(a) / scale[t] = 1
                    scale[arr.head] = Some(sv / r.values[a].clone());
                    queue.push_back(arr.head);
                } else if arr.head == v && scale[arr.tail].is_none() {
                    scale[arr.tail] = Some(sv * r.values[a].clone());
                    queue.push_back(arr.tail);
                }
            }
        }
    }
    scale.into_iter().map(|s| s.expect("every vertex scaled")).collect()
}

/// Normal form under the torus `∏ GL_1`: a breadth-first spanning forest of
/// the arrows acting nonzero is scaled to 1. Values of cycles do not change.
pub fn gl_normalize<T: Scalar>(d: &DimerQuiver, r: &Representation1<T>) -> Representation1<T> {
    let scale = normalizing_scale(d, r, |_| true);
    gauge(d, r, &scale)
}

/// Vertices reachable from `v` through arrows acting nonzero.
pub fn support_reach<T: Scalar>(d: &DimerQuiver, r: &Representation1<T>, v: VertexId) -> Vec<bool> {
    let support = r.support();
    let mut seen = vec![false; d.vertex_count()];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for a in d.out_arrows(x) {
            if support[a] && !seen[d.head(a)] {
                seen[d.head(a)] = true;
                queue.push_back(d.head(a));
            }
        }
    }
    seen
}
