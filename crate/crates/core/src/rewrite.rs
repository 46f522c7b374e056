//! Path equivalence modulo the superpotential relations.
//!
//! Every arrow `a` gives one relation: the two paths that close `a` up to
//! its plus face and to its minus face are equal. A rewrite step replaces an
//! occurrence of one of those complements, anywhere inside a path, by the
//! other. Equivalence is semi-decided by breadth-first search over paths no
//! longer than a budget, so a negative answer is only ever "not found within
//! the budget".

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::dimer::{ArrowId, DimerQuiver, Homology, Path, Sign, VertexId};

/// The relation contributed by one arrow: `plus ~ minus` as paths from the
/// head of the arrow back to its tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub arrow: ArrowId,
    pub plus: Vec<ArrowId>,
    pub minus: Vec<ArrowId>,
}

/// One rewrite: at `position`, replace the `plus` complement of `rule` by
/// the `minus` one (`forward`) or the reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: usize,
    pub forward: bool,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// The steps turn the first path into the second.
    Equivalent { certificate: Vec<Step> },
    /// No derivation within the budget. `exhausted` is true when every path
    /// reachable inside the budget was visited.
    Inequivalent { explored: usize, exhausted: bool },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

/// Separations that prove two paths inequivalent outright.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("paths have different endpoints")]
    EndpointMismatch,
    #[error("paths have different homology classes {0:?} and {1:?}")]
    HomologyMismatch([i64; 2], [i64; 2]),
}

/// The equivalence class of a path restricted to paths of length at most
/// `budget`.
#[derive(Clone, Debug)]
pub struct PathClass {
    pub representative: Path,
    pub members: Vec<Path>,
    pub budget: usize,
    pub exhausted: bool,
}

/// Rewrite engine for one dimer.
#[derive(Clone, Debug)]
pub struct Rewriter<'d> {
    d: &'d DimerQuiver,
    rules: Vec<RewriteRule>,
    /// `(rule, forward)` pairs whose left side starts with the given arrow.
    by_first: Vec<Vec<(usize, bool)>>,
    homology: Homology,
    max_states: usize,
}

const DEFAULT_MAX_STATES: usize = 2_000_000;

/// `max(12, 3 * longest face)`.
pub fn default_budget(d: &DimerQuiver) -> usize {
    12.max(3 * d.max_face_len())
}

impl<'d> Rewriter<'d> {
    pub fn new(d: &'d DimerQuiver) -> Rewriter<'d> {
        let mut rules: Vec<RewriteRule> = Vec::new();
        for a in 0..d.arrow_count() {
            let plus = d.complement(a, Sign::Plus);
            let minus = d.complement(a, Sign::Minus);
            if plus == minus {
                continue;
            }
            let dup = rules
                .iter()
                .any(|r| (r.plus == plus && r.minus == minus) || (r.plus == minus && r.minus == plus));
            if !dup {
                rules.push(RewriteRule { arrow: a, plus, minus });
            }
        }
        let mut by_first = vec![Vec::new(); d.arrow_count()];
        for (i, r) in rules.iter().enumerate() {
            by_first[r.plus[0]].push((i, true));
            by_first[r.minus[0]].push((i, false));
        }
        let homology = d.homology_labels().expect("validated dimers are tori");
        Rewriter { d, rules, by_first, homology, max_states: DEFAULT_MAX_STATES }
    }

    /// Caps the number of distinct paths a single search may visit.
    pub fn with_max_states(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }

    pub fn dimer(&self) -> &'d DimerQuiver {
        self.d
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn homology(&self) -> &Homology {
        &self.homology
    }

    fn sides(&self, rule: usize, forward: bool) -> (&[ArrowId], &[ArrowId]) {
        let r = &self.rules[rule];
        if forward {
            (&r.plus, &r.minus)
        } else {
            (&r.minus, &r.plus)
        }
    }

    /// Applies one step, or `None` if its left side does not occur there.
    pub fn apply(&self, p: &Path, step: Step) -> Option<Path> {
        let (lhs, rhs) = self.sides(step.rule, step.forward);
        let arrows = p.arrows();
        if step.position + lhs.len() > arrows.len() || &arrows[step.position..step.position + lhs.len()] != lhs {
            return None;
        }
        let mut out = Vec::with_capacity(arrows.len() - lhs.len() + rhs.len());
        out.extend_from_slice(&arrows[..step.position]);
        out.extend_from_slice(rhs);
        out.extend_from_slice(&arrows[step.position + lhs.len()..]);
        Some(Path::from_parts_unchecked(p.tail(), p.head(), out))
    }

    /// Replays a certificate.
    pub fn replay(&self, p: &Path, steps: &[Step]) -> Option<Path> {
        steps.iter().try_fold(p.clone(), |cur, &s| self.apply(&cur, s))
    }

    /// All single-step rewrites of `p` whose result has length at most `budget`.
    pub fn neighbors(&self, p: &Path, budget: usize) -> Vec<(Step, Path)> {
        let arrows = p.arrows();
        let mut out = Vec::new();
        for (i, &a) in arrows.iter().enumerate() {
            for &(rule, forward) in &self.by_first[a] {
                let (lhs, rhs) = self.sides(rule, forward);
                if arrows.len() - lhs.len().min(arrows.len()) + rhs.len() > budget {
                    continue;
                }
                let step = Step { rule, forward, position: i };
                if let Some(q) = self.apply(p, step) {
                    out.push((step, q));
                }
            }
        }
        out
    }

    /// Decides `p ~ q` by search over paths of length at most
    /// `max(budget, |p|, |q|)`.
    pub fn equivalent(&self, p: &Path, q: &Path, budget: usize) -> Result<Equivalence, RewriteError> {
        if p.tail() != q.tail() || p.head() != q.head() {
            return Err(RewriteError::EndpointMismatch);
        }
        let (hp, hq) = (self.homology.of(p), self.homology.of(q));
        if hp != hq {
            return Err(RewriteError::HomologyMismatch(hp, hq));
        }
        if p == q {
            return Ok(Equivalence::Equivalent { certificate: Vec::new() });
        }
        let budget = budget.max(p.len()).max(q.len());
        let mut parent: HashMap<Path, Option<(Path, Step)>> = HashMap::new();
        parent.insert(p.clone(), None);
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(cur) = queue.pop_front() {
            for (step, next) in self.neighbors(&cur, budget) {
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((cur.clone(), step)));
                if &next == q {
                    let mut steps = Vec::new();
                    let mut at = next;
                    while let Some(Some((prev, step))) = parent.get(&at) {
                        steps.push(*step);
                        at = prev.clone();
                    }
                    steps.reverse();
                    return Ok(Equivalence::Equivalent { certificate: steps });
                }
                if parent.len() >= self.max_states {
                    return Ok(Equivalence::Inequivalent { explored: parent.len(), exhausted: false });
                }
                queue.push_back(next);
            }
        }
        Ok(Equivalence::Inequivalent { explored: parent.len(), exhausted: true })
    }

    /// Convenience: `true` iff a derivation is found within the budget.
    pub fn is_equivalent(&self, p: &Path, q: &Path, budget: usize) -> bool {
        matches!(self.equivalent(p, q, budget), Ok(Equivalence::Equivalent { .. }))
    }

    /// Everything reachable from `p` through paths of length at most
    /// `max(budget, |p|)`, sorted.
    pub fn class(&self, p: &Path, budget: usize) -> PathClass {
        let budget = budget.max(p.len());
        let mut seen: std::collections::HashSet<Path> = std::collections::HashSet::new();
        seen.insert(p.clone());
        let mut queue = VecDeque::from([p.clone()]);
        let mut exhausted = true;
        'outer: while let Some(cur) = queue.pop_front() {
            for (_, next) in self.neighbors(&cur, budget) {
                if seen.insert(next.clone()) {
                    if seen.len() >= self.max_states {
                        exhausted = false;
                        break 'outer;
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut members: Vec<Path> = seen.into_iter().collect();
        members.sort_by(|a, b| (a.len(), a.arrows()).cmp(&(b.len(), b.arrows())));
        PathClass { representative: p.clone(), members, budget, exhausted }
    }
}

/// Which side of the pair the cancelled arrow sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// The arrow is traversed first: `a·p ~ a·q` in traversal order.
    Before,
    /// The arrow is traversed last: `p·a ~ q·a`.
    After,
}

/// Paths `p`, `q` not found equivalent whose extensions by `arrow` are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub p: Path,
    pub q: Path,
    pub arrow: ArrowId,
    pub side: Side,
}

impl Counterexample {
    pub fn extended(&self, d: &DimerQuiver) -> (Path, Path) {
        let a = Path::new(d, d.tail(self.arrow), vec![self.arrow]).expect("single arrow");
        match self.side {
            Side::Before => (a.then(&self.p).expect("composable"), a.then(&self.q).expect("composable")),
            Side::After => (self.p.then(&a).expect("composable"), self.q.then(&a).expect("composable")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cancellativity {
    CancellativeUpTo(usize),
    Counterexample(Counterexample),
}

/// Rewrite classes of every path of length at most a budget.
pub struct CancellativityAnalysis {
    budget: usize,
    index: HashMap<Path, usize>,
    class_of: Vec<usize>,
    counterexamples: Vec<Counterexample>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn all_paths(d: &DimerQuiver, budget: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let outs: Vec<Vec<ArrowId>> = (0..d.vertex_count()).map(|v| d.out_arrows(v).collect()).collect();
    fn grow(outs: &[Vec<ArrowId>], d: &DimerQuiver, start: VertexId, at: VertexId, cur: &mut Vec<ArrowId>, budget: usize, out: &mut Vec<Path>) {
        out.push(Path::from_parts_unchecked(start, at, cur.clone()));
        if cur.len() == budget {
            return;
        }
        for &a in &outs[at] {
            cur.push(a);
            grow(outs, d, start, d.head(a), cur, budget, out);
            cur.pop();
        }
    }
    for v in 0..d.vertex_count() {
        grow(&outs, d, v, v, &mut Vec::new(), budget, &mut out);
    }
    out
}

impl CancellativityAnalysis {
    /// Unions every path of length at most `budget` with its one-step
    /// rewrites and collects cancellation failures.
    pub fn run(rw: &Rewriter<'_>, budget: usize) -> CancellativityAnalysis {
        let d = rw.dimer();
        let paths = all_paths(d, budget);
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut dsu = Dsu((0..paths.len()).collect());
        for (i, p) in paths.iter().enumerate() {
            for (_, q) in rw.neighbors(p, budget) {
                dsu.union(i, index[&q]);
            }
        }
        let class_of: Vec<usize> = (0..paths.len()).map(|i| dsu.find(i)).collect();

        // Key: (arrow, side, class of extension) -> class of remainder -> shortest remainder.
        let mut groups: HashMap<(ArrowId, bool, usize), Vec<(usize, usize)>> = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            let arrows = p.arrows();
            if arrows.is_empty() {
                continue;
            }
            let first = arrows[0];
            let rest = Path::from_parts_unchecked(d.head(first), p.head(), arrows[1..].to_vec());
            let last = arrows[arrows.len() - 1];
            let init = Path::from_parts_unchecked(p.tail(), d.tail(last), arrows[..arrows.len() - 1].to_vec());
            for (arrow, before, rem) in [(first, true, rest), (last, false, init)] {
                let j = index[&rem];
                let entry = groups.entry((arrow, before, class_of[i])).or_default();
                match entry.iter_mut().find(|(c, _)| *c == class_of[j]) {
                    Some(slot) => {
                        let cur = &paths[slot.1];
                        if (rem.len(), rem.arrows()) < (cur.len(), cur.arrows()) {
                            slot.1 = j;
                        }
                    }
                    None => entry.push((class_of[j], j)),
                }
            }
        }
        let mut counterexamples = Vec::new();
        for ((arrow, before, _), mut rems) in groups {
            if rems.len() < 2 {
                continue;
            }
            rems.sort_by(|x, y| (paths[x.1].len(), paths[x.1].arrows()).cmp(&(paths[y.1].len(), paths[y.1].arrows())));
            let p = &paths[rems[0].1];
            for r in &rems[1..] {
                counterexamples.push(Counterexample {
                    p: p.clone(),
                    q: paths[r.1].clone(),
                    arrow,
                    side: if before { Side::Before } else { Side::After },
                });
            }
        }
        counterexamples.sort_by(|x, y| {
            let kx = (x.p.len() + x.q.len(), x.p.arrows(), x.q.arrows(), x.arrow, x.side == Side::After);
            let ky = (y.p.len() + y.q.len(), y.p.arrows(), y.q.arrows(), y.arrow, y.side == Side::After);
            kx.cmp(&ky)
        });
        CancellativityAnalysis { budget, index, class_of, counterexamples }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn path_count(&self) -> usize {
        self.class_of.len()
    }

    /// `None` if either path is longer than the budget.
    pub fn same_class(&self, p: &Path, q: &Path) -> Option<bool> {
        let i = *self.index.get(p)?;
        let j = *self.index.get(q)?;
        Some(self.class_of[i] == self.class_of[j])
    }

    pub fn counterexamples(&self) -> &[Counterexample] {
        &self.counterexamples
    }

    /// Arrows that cancel against `p`, `q`: every `(a, side)` with the
    /// extensions in one class. Meaningful when `p`, `q` are in different
    /// classes.
    pub fn cancelling_arrows(&self, d: &DimerQuiver, p: &Path, q: &Path) -> Vec<(ArrowId, Side)> {
        let mut out = Vec::new();
        for a in 0..d.arrow_count() {
            let ap = Path::new(d, d.tail(a), vec![a]).expect("single arrow");
            if let (Some(x), Some(y)) = (ap.then(p), ap.then(q)) {
                if self.same_class(&x, &y) == Some(true) {
                    out.push((a, Side::Before));
                }
            }
            if let (Some(x), Some(y)) = (p.then(&ap), q.then(&ap)) {
                if self.same_class(&x, &y) == Some(true) {
                    out.push((a, Side::After));
                }
            }
        }
        out
    }

    pub fn verdict(&self) -> Cancellativity {
        match self.counterexamples.first() {
            Some(c) => Cancellativity::Counterexample(c.clone()),
            None => Cancellativity::CancellativeUpTo(self.budget),
        }
    }
}

/// Searches all paths of length at most `budget` for a failure of
/// cancellation; the reported counterexample is one of minimal total length.
pub fn cancellativity_check(d: &DimerQuiver, budget: usize) -> Cancellativity {
    CancellativityAnalysis::run(&Rewriter::new(d), budget).verdict()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rules_come_from_faces() {
        let d = fixtures::load("conifold");
        let rw = Rewriter::new(&d);
        assert_eq!(rw.rules().len(), 4);
        for r in rw.rules() {
            assert_eq!(r.plus.len(), 3);
            let a = Path::new(&d, d.head(r.arrow), r.plus.clone()).unwrap();
            let b = Path::new(&d, d.head(r.arrow), r.minus.clone()).unwrap();
            assert_eq!((a.tail(), a.head()), (b.tail(), b.head()));
            assert_eq!(a.head(), d.tail(r.arrow));
        }
    }

    #[test]
    fn conifold_relation_from_a1() {
        let d = fixtures::load("conifold");
        let rw = Rewriter::new(&d);
        // b1 a2 b2 ~ b2 a2 b1, both complements of a1.
        let p = d.path(&["b1", "a2", "b2"]).unwrap();
        let q = d.path(&["b2", "a2", "b1"]).unwrap();
        match rw.equivalent(&p, &q, 6).unwrap() {
            Equivalence::Equivalent { certificate } => {
                assert_eq!(certificate.len(), 1);
                assert_eq!(rw.replay(&p, &certificate), Some(q));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reflexive_with_empty_certificate() {
        let d = fixtures::load("conifold");
        let rw = Rewriter::new(&d);
        let p = d.path(&["a1", "b1"]).unwrap();
        assert_eq!(rw.equivalent(&p, &p, 4).unwrap(), Equivalence::Equivalent { certificate: vec![] });
    }

    #[test]
    fn separations_are_errors() {
        let d = fixtures::load("conifold");
        let rw = Rewriter::new(&d);
        let p = d.path(&["a1"]).unwrap();
        let q = d.path(&["a1", "b1", "a1"]).unwrap();
        let r = d.path(&["b1"]).unwrap();
        assert!(matches!(rw.equivalent(&p, &q, 6), Err(RewriteError::HomologyMismatch(..))));
        assert_eq!(rw.equivalent(&p, &r, 6), Err(RewriteError::EndpointMismatch));
    }

    #[test]
    fn unit_cycles_at_a_vertex_agree() {
        for (name, _) in fixtures::DIMERS {
            let d = fixtures::load(name);
            let rw = Rewriter::new(&d);
            for v in 0..d.vertex_count() {
                let mut cycles = Vec::new();
                for (fi, f) in d.faces().iter().enumerate() {
                    for (k, &a) in f.arrows.iter().enumerate() {
                        if d.tail(a) == v {
                            cycles.push(Path::new(&d, v, d.face_rotation(fi, k)).unwrap());
                        }
                    }
                }
                for c in &cycles[1..] {
                    assert!(rw.is_equivalent(&cycles[0], c, d.max_face_len() + 2), "{name} at {v}");
                }
            }
        }
    }

    #[test]
    fn conifold_is_cancellative_up_to_8() {
        let d = fixtures::load("conifold");
        assert_eq!(cancellativity_check(&d, 8), Cancellativity::CancellativeUpTo(8));
    }
}
