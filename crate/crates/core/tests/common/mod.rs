//! Oracles and randomized checks shared by the integration suites. The
//! oracles here deliberately avoid the library's own search routines.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use dimerlab::contraction::Contraction;
use dimerlab::dimer::{ArrowId, VertexId};
use dimerlab::impression::{ImpressionMap, PointB};
use dimerlab::loci::{self, LocusContext, Representation1, Tri};
use dimerlab::matchings::enumerate_matchings;
use dimerlab::{fixtures, DimerQuiver, Path, Rational, Rewriter};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Every arrow subset meeting each face exactly once, by exhaustion.
pub fn brute_matchings(d: &DimerQuiver) -> Vec<Vec<ArrowId>> {
    let n = d.arrow_count();
    assert!(n <= 20, "exhaustive matching search");
    (0u32..(1 << n))
        .filter(|mask| d.faces().iter().all(|f| f.arrows.iter().filter(|&&a| mask >> a & 1 == 1).count() == 1))
        .map(|mask| (0..n).filter(|a| mask >> a & 1 == 1).collect())
        .collect()
}

/// Transitive closure by repeated relaxation.
pub fn strongly_connected_oracle(d: &DimerQuiver, keep: impl Fn(ArrowId) -> bool) -> bool {
    let n = d.vertex_count();
    let mut reach = vec![vec![false; n]; n];
    for (v, row) in reach.iter_mut().enumerate() {
        row[v] = true;
    }
    for (a, arr) in d.arrows().iter().enumerate() {
        if keep(a) {
            reach[arr.tail][arr.head] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&x| x))
}

/// Exponent vector of a path: how many arrows of the path each matching holds.
pub fn image_oracle(matchings: &[Vec<ArrowId>], arrows: &[ArrowId]) -> Vec<u32> {
    matchings.iter().map(|m| arrows.iter().filter(|a| m.contains(a)).count() as u32).collect()
}

/// Arrow sequences of all cycles at `v` of length `1..=max_len`.
pub fn cycles_at(d: &DimerQuiver, v: VertexId, max_len: usize) -> Vec<Vec<ArrowId>> {
    fn go(d: &DimerQuiver, start: VertexId, at: VertexId, cur: &mut Vec<ArrowId>, max_len: usize, out: &mut Vec<Vec<ArrowId>>) {
        if cur.len() == max_len {
            return;
        }
        for (a, arr) in d.arrows().iter().enumerate() {
            if arr.tail != at {
                continue;
            }
            cur.push(a);
            if arr.head == start {
                out.push(cur.clone());
            }
            go(d, start, arr.head, cur, max_len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, v, v, &mut Vec::new(), max_len, &mut out);
    out
}

/// A proper nonzero vertex subset closed under the arrows acting nonzero.
pub fn brute_has_submodule(d: &DimerQuiver, support: &[bool]) -> bool {
    let n = d.vertex_count();
    assert!(n <= 16);
    let edges: Vec<(usize, usize)> =
        d.arrows().iter().enumerate().filter(|(a, _)| support[*a]).map(|(_, arr)| (arr.tail, arr.head)).collect();
    (1u32..(1 << n) - 1).any(|mask| edges.iter().all(|&(t, h)| mask >> t & 1 == 0 || mask >> h & 1 == 1))
}

/// A walk of up to `max_len` arrows from a random vertex.
pub fn random_path(d: &DimerQuiver, rng: &mut ChaCha8Rng, max_len: usize) -> Path {
    let mut at = rng.gen_range(0..d.vertex_count());
    let start = at;
    let mut arrows = Vec::new();
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let outs: Vec<ArrowId> = d.out_arrows(at).collect();
        let Some(&a) = outs.choose(rng) else { break };
        arrows.push(a);
        at = d.head(a);
    }
    Path::new(d, start, arrows).expect("walk")
}

/// A random cycle: a walk closed up along a shortest path.
pub fn random_cycle(d: &DimerQuiver, rng: &mut ChaCha8Rng, max_len: usize) -> Path {
    let p = random_path(d, rng, max_len);
    let back = shortest_path(d, p.head(), p.tail());
    p.then(&back).expect("closing path")
}

pub fn shortest_path(d: &DimerQuiver, from: VertexId, to: VertexId) -> Path {
    let n = d.vertex_count();
    let mut prev: Vec<Option<(VertexId, ArrowId)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for a in d.out_arrows(v) {
            let h = d.head(a);
            if !seen[h] {
                seen[h] = true;
                prev[h] = Some((v, a));
                queue.push_back(h);
            }
        }
    }
    let mut arrows = Vec::new();
    let mut at = to;
    while at != from {
        let (p, a) = prev[at].expect("strongly connected");
        arrows.push(a);
        at = p;
    }
    arrows.reverse();
    Path::new(d, from, arrows).expect("path")
}

/// Small rationals, zero with probability `zero_p`.
pub fn random_rational(rng: &mut ChaCha8Rng, zero_p: f64) -> Rational {
    if rng.gen_bool(zero_p) {
        return q(0);
    }
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=5);
    Rational::new(num.into(), den.into())
}

pub fn random_point(rng: &mut ChaCha8Rng, nvars: usize, zero_p: f64) -> PointB<Rational> {
    PointB::new((0..nvars).map(|_| random_rational(rng, zero_p)).collect())
}

pub fn random_rep(d: &DimerQuiver, rng: &mut ChaCha8Rng, zero_p: f64) -> Representation1<Rational> {
    Representation1::new((0..d.arrow_count()).map(|_| random_rational(rng, zero_p)).collect())
}

/// A dimer with an impression map: each fixture with its own matchings, and
/// each contraction source with `η̄` pulled back from the target.
pub struct MapCase {
    pub label: String,
    pub dimer: DimerQuiver,
    pub map: ImpressionMap,
}

pub const CONTRACTIONS: &[(&str, &[&str])] =
    &[("conifold", &[]), ("fig_ab_a", &["a"]), ("fig_ab_b", &["e1"]), ("fig_ab_c", &["e"]), ("fig_q", &["p5a"])];

pub fn map_cases() -> &'static [MapCase] {
    static CASES: OnceLock<Vec<MapCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for (name, _) in fixtures::DIMERS {
            let d = fixtures::load(name);
            let map = ImpressionMap::from_catalog(&d, &enumerate_matchings(&d));
            out.push(MapCase { label: name.to_string(), dimer: d, map });
        }
        for (name, stars) in CONTRACTIONS.iter().filter(|(_, s)| !s.is_empty()) {
            let c = contraction(name, stars);
            let target = ImpressionMap::from_catalog(c.target(), &enumerate_matchings(c.target()));
            out.push(MapCase { label: format!("{name}/{}", stars.join(",")), dimer: c.source().clone(), map: c.pulled_back(&target) });
        }
        out
    })
}

pub fn contraction(name: &str, stars: &[&str]) -> Contraction {
    Contraction::by_names(&fixtures::load(name), stars).expect("fixture contraction")
}

pub fn contractions() -> &'static [Contraction] {
    static CS: OnceLock<Vec<Contraction>> = OnceLock::new();
    CS.get_or_init(|| CONTRACTIONS.iter().map(|(n, s)| contraction(n, s)).collect())
}

pub fn locus_contexts() -> &'static [LocusContext<'static>] {
    static CTX: OnceLock<Vec<LocusContext<'static>>> = OnceLock::new();
    CTX.get_or_init(|| contractions().iter().map(|c| LocusContext::new(c, 12)).collect())
}

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Random rewrite steps never change `η̄`, and every rule's two sides agree.
pub fn prop_eta_constant(case: &MapCase, rng: &mut ChaCha8Rng) -> Check {
    let d = &case.dimer;
    let rw = Rewriter::new(d);
    for r in rw.rules() {
        ensure(case.map.eta_bar_arrows(&r.plus) == case.map.eta_bar_arrows(&r.minus), || {
            format!("{}: rule of {} differs", case.label, d.arrow_name(r.arrow))
        })?;
    }
    let mut p = random_path(d, rng, 10);
    let before = case.map.eta_bar(&p);
    for _ in 0..6 {
        let next = rw.neighbors(&p, p.len() + d.max_face_len());
        let Some((_, n)) = next.choose(rng) else { break };
        p = n.clone();
        ensure(case.map.eta_bar(&p) == before, || format!("{}: {} changed image", case.label, p.display(d)))?;
    }
    Ok(())
}

/// Homology classes add under concatenation and vanish on faces.
pub fn prop_hom_additive(d: &DimerQuiver, rng: &mut ChaCha8Rng) -> Check {
    let h = d.homology_labels().map_err(|e| e.to_string())?;
    for f in d.faces() {
        ensure(h.of_arrows(&f.arrows) == [0, 0], || "face with nonzero class".into())?;
    }
    let p = random_path(d, rng, 8);
    let mut q = random_path(d, rng, 8);
    q = shortest_path(d, p.head(), q.tail()).then(&q).expect("composable");
    let pq = p.then(&q).expect("composable");
    let (hp, hq, hpq) = (h.of(&p), h.of(&q), h.of(&pq));
    ensure(hpq == [hp[0] + hq[0], hp[1] + hq[1]], || format!("{hp:?} + {hq:?} != {hpq:?}"))
}

pub fn prop_rep_relations(case: &MapCase, rng: &mut ChaCha8Rng) -> Check {
    let b = random_point(rng, case.map.nvars(), 0.3);
    let r = loci::rep_from_point(&case.dimer, &case.map, &b).map_err(|e| format!("{}: {e}", case.label))?;
    // Independent check: both sides of every rule evaluate equally.
    let rw = Rewriter::new(&case.dimer);
    for rule in rw.rules() {
        ensure(r.value_of(&rule.plus) == r.value_of(&rule.minus), || format!("{}: relation broken", case.label))?;
    }
    Ok(())
}

pub fn prop_simple_matches_brute(d: &DimerQuiver, rng: &mut ChaCha8Rng) -> Check {
    let zero_p = rng.gen_range(0.0..0.6);
    let r = random_rep(d, rng, zero_p);
    let simple = loci::is_simple(d, &r);
    let brute = !brute_has_submodule(d, &r.support());
    ensure(simple == brute, || format!("is_simple {simple} vs subset search {brute} on {:?}", r.support()))
}

/// `forward ∘ back` is the identity; `back ∘ forward` keeps every cycle value.
pub fn prop_transfer_round_trip(c: &Contraction, rng: &mut ChaCha8Rng) -> Check {
    let rp = random_rep(c.target(), rng, 0.2);
    let back = loci::transfer_back(c, &rp);
    let fwd = loci::transfer_forward(c, &back).map_err(|e| e.to_string())?;
    ensure(fwd == rp, || "forward(back(r')) != r'".into())?;
    let mut r = random_rep(c.source(), rng, 0.2);
    if rng.gen_bool(0.2) {
        if let Some(&a) = c.stars().first() {
            r.values[a] = q(0);
        }
    }
    match loci::transfer_forward(c, &r) {
        Err(_) => ensure(c.stars().iter().any(|&a| r.values[a] == q(0)), || "forward refused a valid rep".into()),
        Ok(f) => {
            let again = loci::transfer_back(c, &f);
            for _ in 0..4 {
                let cyc = random_cycle(c.source(), rng, 8);
                ensure(again.path_value(&cyc) == r.path_value(&cyc), || format!("cycle {} changed", cyc.display(c.source())))?;
            }
            Ok(())
        }
    }
}

pub fn prop_normalize_fixes_cycles(d: &DimerQuiver, rng: &mut ChaCha8Rng) -> Check {
    let r = random_rep(d, rng, 0.25);
    let n = loci::gl_normalize(d, &r);
    for _ in 0..6 {
        let cyc = random_cycle(d, rng, 10);
        ensure(n.path_value(&cyc) == r.path_value(&cyc), || format!("cycle {} changed", cyc.display(d)))?;
    }
    ensure(loci::gl_normalize(d, &n) == n, || "normal form is not idempotent".into())
}

pub fn prop_azumaya_conjunction(ctx: &LocusContext<'_>, rng: &mut ChaCha8Rng) -> Check {
    let zero_p = *[0.0, 0.3, 0.7, 1.0].choose(rng).unwrap();
    let b = random_point(rng, ctx.target_map.nvars(), zero_p);
    let v = ctx.azumaya_a(&b);
    let expected = match (v.in_azumaya_aprime, v.in_u.is_in()) {
        (false, _) => Tri::No,
        (true, Some(true)) => Tri::Yes,
        (true, Some(false)) => Tri::No,
        (true, None) => Tri::Unknown,
    };
    ensure(v.in_azumaya_a == expected && v.consistent(), || format!("{:?} at {:?}", v.in_azumaya_a, b.values))
}

/// Distinct monomials among the images of cycles of length at most `max_len`
/// at each vertex.
pub fn images_by_vertex(d: &DimerQuiver, matchings: &[Vec<ArrowId>], max_len: usize) -> Vec<BTreeSet<Vec<u32>>> {
    (0..d.vertex_count())
        .map(|v| cycles_at(d, v, max_len).iter().map(|c| image_oracle(matchings, c)).collect())
        .collect()
}
