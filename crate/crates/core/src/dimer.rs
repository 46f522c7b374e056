//! Dimer quivers on the torus.
//!
//! A dimer is given combinatorially: vertices, arrows, and the oriented
//! boundary cycles of the faces of its torus embedding, each tagged with the
//! orientation the face inherits from the surface. Validation checks that the
//! face lists glue to a connected closed orientable surface of Euler
//! characteristic zero, which is all the embedding data the algebra needs.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type ArrowId = usize;
pub type FaceId = usize;

/// Orientation tag of a face relative to the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// On-disk form of a dimer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDimer {
    pub vertices: Vec<String>,
    pub arrows: Vec<RawArrow>,
    pub faces: Vec<RawFace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFace {
    pub arrows: Vec<String>,
    pub sign: Sign,
}

impl RawDimer {
    pub fn from_json(s: &str) -> Result<RawDimer, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("raw dimer serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub arrows: Vec<ArrowId>,
    pub sign: Sign,
}

/// Position of an arrow inside a face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub face: FaceId,
    pub position: usize,
}

/// One violated dimer invariant.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("face {face} refers to unknown arrow `{arrow}`")]
    UnknownArrow { face: usize, arrow: String },
    #[error("face {face} has length {len}, unit cycles need length at least 2")]
    FaceTooShort { face: usize, len: usize },
    #[error("face {face} is not a composable cycle at position {position}")]
    FaceNotComposable { face: usize, position: usize },
    #[error("arrow `{arrow}` lies in {plus} plus face(s) and {minus} minus face(s), expected one of each")]
    ArrowFaceCount { arrow: String, plus: usize, minus: usize },
    #[error("Euler characteristic {vertices} - {arrows} + {faces} = {chi}, a torus needs 0")]
    EulerCharacteristic { vertices: usize, arrows: usize, faces: usize, chi: i64 },
    #[error("the surface glued from the faces has {components} connected components")]
    Disconnected { components: usize },
    #[error("the faces around vertex `{vertex}` form {cycles} separate fans, the gluing is not a surface there")]
    NonManifoldVertex { vertex: String, cycles: usize },
}

/// Every invariant violated by a candidate dimer.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid dimer: {}", .errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationReport {
    pub errors: Vec<ValidationError>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DimerError {
    #[error("cycle space modulo face boundaries has rank {rank}, expected 2")]
    GenusNotOne { rank: usize },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("arrows do not compose at position {position}")]
    NotComposable { position: usize },
}

/// A validated dimer quiver.
#[derive(Clone, Debug)]
pub struct DimerQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    faces: Vec<Face>,
    /// `[plus, minus]` incidence of every arrow.
    incidence: Vec<[Incidence; 2]>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

impl DimerQuiver {
    /// Validates a raw description, collecting every violated invariant.
    pub fn validate(raw: &RawDimer) -> Result<DimerQuiver, ValidationReport> {
        let mut errors = Vec::new();

        let mut vertex_index = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                errors.push(ValidationError::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for (i, a) in raw.arrows.iter().enumerate() {
            if arrow_index.insert(a.id.clone(), i).is_some() {
                errors.push(ValidationError::DuplicateArrow(a.id.clone()));
            }
            let mut lookup = |name: &String| match vertex_index.get(name) {
                Some(&v) => v,
                None => {
                    errors.push(ValidationError::UnknownVertex { arrow: a.id.clone(), vertex: name.clone() });
                    usize::MAX
                }
            };
            let tail = lookup(&a.tail);
            let head = lookup(&a.head);
            arrows.push(Arrow { id: a.id.clone(), tail, head });
        }

        let mut faces = Vec::with_capacity(raw.faces.len());
        for (fi, f) in raw.faces.iter().enumerate() {
            let mut ids = Vec::with_capacity(f.arrows.len());
            for name in &f.arrows {
                match arrow_index.get(name) {
                    Some(&a) => ids.push(a),
                    None => errors.push(ValidationError::UnknownArrow { face: fi, arrow: name.clone() }),
                }
            }
            faces.push(Face { arrows: ids, sign: f.sign });
        }
        if !errors.is_empty() {
            return Err(ValidationReport { errors });
        }

        for (fi, f) in faces.iter().enumerate() {
            if f.arrows.len() < 2 {
                errors.push(ValidationError::FaceTooShort { face: fi, len: f.arrows.len() });
            }
            let n = f.arrows.len();
            for k in 0..n {
                let a = &arrows[f.arrows[k]];
                let b = &arrows[f.arrows[(k + 1) % n]];
                if a.head != b.tail {
                    errors.push(ValidationError::FaceNotComposable { face: fi, position: k });
                }
            }
        }

        let mut plus: Vec<Vec<Incidence>> = vec![Vec::new(); arrows.len()];
        let mut minus: Vec<Vec<Incidence>> = vec![Vec::new(); arrows.len()];
        for (fi, f) in faces.iter().enumerate() {
            for (k, &a) in f.arrows.iter().enumerate() {
                let inc = Incidence { face: fi, position: k };
                match f.sign {
                    Sign::Plus => plus[a].push(inc),
                    Sign::Minus => minus[a].push(inc),
                }
            }
        }
        let mut incidence = Vec::with_capacity(arrows.len());
        for (a, arrow) in arrows.iter().enumerate() {
            if plus[a].len() != 1 || minus[a].len() != 1 {
                errors.push(ValidationError::ArrowFaceCount {
                    arrow: arrow.id.clone(),
                    plus: plus[a].len(),
                    minus: minus[a].len(),
                });
                incidence.push([Incidence { face: 0, position: 0 }; 2]);
            } else {
                incidence.push([plus[a][0], minus[a][0]]);
            }
        }

        let chi = raw.vertices.len() as i64 - arrows.len() as i64 + faces.len() as i64;
        if chi != 0 {
            errors.push(ValidationError::EulerCharacteristic {
                vertices: raw.vertices.len(),
                arrows: arrows.len(),
                faces: faces.len(),
                chi,
            });
        }

        // Connectivity: faces glued along arrows, vertices attached to arrows.
        let nv = raw.vertices.len();
        let mut uf = UnionFind::new(nv + faces.len());
        for (fi, f) in faces.iter().enumerate() {
            for &a in &f.arrows {
                uf.union(nv + fi, arrows[a].tail);
                uf.union(nv + fi, arrows[a].head);
            }
        }
        for a in &arrows {
            uf.union(a.tail, a.head);
        }
        let components = uf.components();
        if components > 1 {
            errors.push(ValidationError::Disconnected { components });
        }

        if errors.is_empty() {
            // Link of every vertex must be a single cycle of corners.
            // Half-edge 2a is the head end of arrow a, 2a+1 its tail end.
            let mut link = UnionFind::new(2 * arrows.len());
            for f in &faces {
                let n = f.arrows.len();
                for k in 0..n {
                    link.union(2 * f.arrows[k], 2 * f.arrows[(k + 1) % n] + 1);
                }
            }
            let mut fans: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); nv];
            for (a, arrow) in arrows.iter().enumerate() {
                let h = link.find(2 * a);
                fans[arrow.head].insert(h);
                let t = link.find(2 * a + 1);
                fans[arrow.tail].insert(t);
            }
            for (v, set) in fans.iter().enumerate() {
                if set.len() != 1 {
                    errors.push(ValidationError::NonManifoldVertex { vertex: raw.vertices[v].clone(), cycles: set.len() });
                }
            }
        }

        if !errors.is_empty() {
            return Err(ValidationReport { errors });
        }
        Ok(DimerQuiver { vertices: raw.vertices.clone(), arrows, faces, incidence, vertex_index, arrow_index })
    }

    pub fn from_json(s: &str) -> Result<DimerQuiver, crate::Error> {
        let raw = RawDimer::from_json(s)?;
        Ok(DimerQuiver::validate(&raw)?)
    }

    pub fn to_raw(&self) -> RawDimer {
        RawDimer {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawArrow {
                    id: a.id.clone(),
                    tail: self.vertices[a.tail].clone(),
                    head: self.vertices[a.head].clone(),
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| RawFace { arrows: f.arrows.iter().map(|&a| self.arrows[a].id.clone()).collect(), sign: f.sign })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a].id
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    /// Where arrow `a` sits in the face of the given orientation.
    pub fn incidence(&self, a: ArrowId, sign: Sign) -> Incidence {
        match sign {
            Sign::Plus => self.incidence[a][0],
            Sign::Minus => self.incidence[a][1],
        }
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a].tail
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a].head
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].tail == v)
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arrows.iter().filter(|a| a.head == v).count()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arrows.iter().filter(|a| a.tail == v).count()
    }

    pub fn max_face_len(&self) -> usize {
        self.faces.iter().map(|f| f.arrows.len()).max().unwrap_or(0)
    }

    /// The arrows of face `f` read around its boundary starting at `position`.
    pub fn face_rotation(&self, f: FaceId, position: usize) -> Vec<ArrowId> {
        let arrows = &self.faces[f].arrows;
        let n = arrows.len();
        (0..n).map(|k| arrows[(position + k) % n]).collect()
    }

    /// The path from `h(a)` around the face back to `t(a)`: the complement
    /// `p` of `a` in the unit cycle `pa`.
    pub fn complement(&self, a: ArrowId, sign: Sign) -> Vec<ArrowId> {
        let inc = self.incidence(a, sign);
        let mut rot = self.face_rotation(inc.face, inc.position);
        rot.remove(0);
        rot
    }

    /// Builds a path from arrow ids in traversal order (first arrow first).
    pub fn path(&self, ids: &[&str]) -> Result<Path, DimerError> {
        let arrows = ids
            .iter()
            .map(|n| self.arrow_id(n).ok_or_else(|| DimerError::UnknownArrow(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        match arrows.first() {
            Some(&a) => Path::new(self, self.tail(a), arrows),
            None => Err(DimerError::NotComposable { position: 0 }),
        }
    }

    /// A unit cycle at every vertex, as a path (first corner in face order).
    pub fn unit_cycle_at(&self, v: VertexId) -> Option<Path> {
        for (fi, f) in self.faces.iter().enumerate() {
            for (k, &a) in f.arrows.iter().enumerate() {
                if self.arrows[a].tail == v {
                    return Some(Path { start: v, end: v, arrows: self.face_rotation(fi, k) });
                }
            }
        }
        None
    }

    /// Faces in a canonical form (least rotation, then sorted) for comparing
    /// dimers that differ only in face order or starting corner.
    pub fn canonical_faces(&self) -> Vec<(Vec<String>, Sign)> {
        let mut out: Vec<(Vec<String>, Sign)> = self
            .faces
            .iter()
            .map(|f| {
                let names: Vec<String> = f.arrows.iter().map(|&a| self.arrows[a].id.clone()).collect();
                let best = (0..names.len())
                    .map(|k| names[k..].iter().chain(names[..k].iter()).cloned().collect::<Vec<_>>())
                    .min()
                    .unwrap_or_default();
                (best, f.sign)
            })
            .collect();
        out.sort();
        out
    }

    /// Same vertices, arrows and faces up to ordering.
    pub fn same_dimer(&self, other: &DimerQuiver) -> bool {
        let mut va = self.vertices.clone();
        let mut vb = other.vertices.clone();
        va.sort();
        vb.sort();
        let arrows = |d: &DimerQuiver| {
            let mut v: Vec<(String, String, String)> = d
                .arrows
                .iter()
                .map(|a| (a.id.clone(), d.vertices[a.tail].clone(), d.vertices[a.head].clone()))
                .collect();
            v.sort();
            v
        };
        va == vb && arrows(self) == arrows(other) && self.canonical_faces() == other.canonical_faces()
    }

    /// True when the subquiver on the arrows with `keep[a]` connects every
    /// vertex to every other vertex by a directed path.
    pub fn strongly_connected_on(&self, keep: impl Fn(ArrowId) -> bool) -> bool {
        let n = self.vertices.len();
        if n <= 1 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(v) = queue.pop_front() {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if !keep(a) {
                        continue;
                    }
                    let (from, to) = if forward { (arrow.tail, arrow.head) } else { (arrow.head, arrow.tail) };
                    if from == v && !seen[to] {
                        seen[to] = true;
                        queue.push_back(to);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        reach(true) && reach(false)
    }

    /// Integral homology labels from a spanning tree / dual spanning tree
    /// decomposition; see [`Homology`].
    pub fn homology_labels(&self) -> Result<Homology, DimerError> {
        let na = self.arrows.len();
        let nv = self.vertices.len();
        let mut in_tree = vec![false; na];
        let mut seen = vec![false; nv];
        if nv > 0 {
            seen[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(v) = queue.pop_front() {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    let other = if arrow.tail == v {
                        arrow.head
                    } else if arrow.head == v {
                        arrow.tail
                    } else {
                        continue;
                    };
                    if !seen[other] {
                        seen[other] = true;
                        in_tree[a] = true;
                        queue.push_back(other);
                    }
                }
            }
        }

        // Dual tree over faces through non-tree arrows.
        let nf = self.faces.len();
        let mut in_dual = vec![false; na];
        let mut parent_arrow: Vec<Option<ArrowId>> = vec![None; nf];
        let mut face_seen = vec![false; nf];
        let mut order = Vec::with_capacity(nf);
        if nf > 0 {
            face_seen[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(f) = queue.pop_front() {
                order.push(f);
                let mut candidates: Vec<ArrowId> = self.faces[f].arrows.clone();
                candidates.sort_unstable();
                candidates.dedup();
                for a in candidates {
                    if in_tree[a] || in_dual[a] {
                        continue;
                    }
                    let [p, m] = self.incidence[a];
                    let other = if p.face == f { m.face } else { p.face };
                    if !face_seen[other] {
                        face_seen[other] = true;
                        in_dual[a] = true;
                        parent_arrow[other] = Some(a);
                        queue.push_back(other);
                    }
                }
            }
        }
        let leftover: Vec<ArrowId> = (0..na).filter(|&a| !in_tree[a] && !in_dual[a]).collect();
        if leftover.len() != 2 {
            return Err(DimerError::GenusNotOne { rank: leftover.len() });
        }

        let mut labels: Vec<Option<[i64; 2]>> = vec![None; na];
        for a in 0..na {
            if in_tree[a] {
                labels[a] = Some([0, 0]);
            }
        }
        labels[leftover[0]] = Some([1, 0]);
        labels[leftover[1]] = Some([0, 1]);
        for &f in order.iter().rev() {
            let Some(pa) = parent_arrow[f] else { continue };
            let mut sum = [0i64; 2];
            for &a in &self.faces[f].arrows {
                if a == pa {
                    continue;
                }
                let l = labels[a].expect("children of a face are labelled before the face");
                sum[0] += l[0];
                sum[1] += l[1];
            }
            labels[pa] = Some([-sum[0], -sum[1]]);
        }
        Ok(Homology { labels: labels.into_iter().map(|l| l.expect("every arrow labelled")).collect(), basis: [leftover[0], leftover[1]] })
    }
}

/// Per-arrow displacement vectors in `Z^2` realizing the lift of paths to
/// the universal cover of the torus: the label of a cycle is the lattice
/// translation between the endpoints of its lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    labels: Vec<[i64; 2]>,
    basis: [ArrowId; 2],
}

impl Homology {
    pub fn label(&self, a: ArrowId) -> [i64; 2] {
        self.labels[a]
    }

    pub fn labels(&self) -> &[[i64; 2]] {
        &self.labels
    }

    /// The two arrows outside tree and dual tree; their fundamental cycles
    /// carry classes `(1,0)` and `(0,1)`.
    pub fn basis_arrows(&self) -> [ArrowId; 2] {
        self.basis
    }

    pub fn of_arrows(&self, arrows: &[ArrowId]) -> [i64; 2] {
        arrows.iter().fold([0, 0], |acc, &a| [acc[0] + self.labels[a][0], acc[1] + self.labels[a][1]])
    }

    pub fn of(&self, p: &Path) -> [i64; 2] {
        self.of_arrows(&p.arrows)
    }

    /// Endpoints of `p` and the displacement of its lift.
    pub fn lift_endpoint(&self, p: &Path) -> (VertexId, VertexId, [i64; 2]) {
        (p.tail(), p.head(), self.of(p))
    }
}

/// A path in a dimer quiver, stored in traversal order (the first arrow
/// leaves the tail). Vertex paths have no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: VertexId,
    end: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn new(d: &DimerQuiver, start: VertexId, arrows: Vec<ArrowId>) -> Result<Path, DimerError> {
        let mut at = start;
        for (k, &a) in arrows.iter().enumerate() {
            if d.tail(a) != at {
                return Err(DimerError::NotComposable { position: k });
            }
            at = d.head(a);
        }
        Ok(Path { start, end: at, arrows })
    }

    pub fn vertex(v: VertexId) -> Path {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn tail(&self) -> VertexId {
        self.start
    }

    pub fn head(&self) -> VertexId {
        self.end
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.start == self.end
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.end != next.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path { start: self.start, end: next.end, arrows })
    }

    /// Vertices visited, `len() + 1` of them.
    pub fn vertex_sequence(&self, d: &DimerQuiver) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.arrows.len() + 1);
        out.push(self.start);
        for &a in &self.arrows {
            out.push(d.head(a));
        }
        out
    }

    /// Whether some proper subpath of positive length is a cycle.
    pub fn has_proper_cyclic_subpath(&self, d: &DimerQuiver) -> bool {
        has_proper_cycle(&self.vertex_sequence(d))
    }

    pub fn display(&self, d: &DimerQuiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", d.vertex_name(self.start))
        } else {
            self.arrows.iter().map(|&a| d.arrow_name(a)).collect::<Vec<_>>().join(" ")
        }
    }

    pub(crate) fn from_parts_unchecked(start: VertexId, end: VertexId, arrows: Vec<ArrowId>) -> Path {
        Path { start, end, arrows }
    }
}

pub(crate) fn has_proper_cycle(verts: &[VertexId]) -> bool {
    let n = verts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if verts[i] == verts[j] && !(i == 0 && j == n - 1) {
                return true;
            }
        }
    }
    false
}
