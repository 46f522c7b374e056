//! Expected results for the bundled fixtures. Every check records its
//! `origin`: a published worked example, a value computed independently,
//! or something true by definition.

use std::collections::BTreeMap;

use anyhow::Context;
use dimerlab::impression::{ImpressionMap, PointB};
use dimerlab::loci::{LocusContext, Tri};
use dimerlab::matchings::enumerate_matchings;
use dimerlab::pi_check::{self, Freeness, WitnessSearch};
use dimerlab::rewrite::{cancellativity_check, Cancellativity};
use dimerlab::rings::{CycleImages, UCertificate, UVerdict};
use dimerlab::{fixtures, Contraction, DimerQuiver, Path, Rational, Rewriter, SComparison};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::Report;
use crate::InputError;

const MANIFESTS: &[(&str, &str)] = &[
    ("conifold", include_str!("../manifests/conifold.json")),
    ("fig_ab_a", include_str!("../manifests/fig_ab_a.json")),
    ("fig_ab_b", include_str!("../manifests/fig_ab_b.json")),
    ("fig_ab_c", include_str!("../manifests/fig_ab_c.json")),
    ("fig_q", include_str!("../manifests/fig_q.json")),
    ("fig_q_prime", include_str!("../manifests/fig_q_prime.json")),
];

#[derive(Deserialize)]
struct Manifest {
    name: String,
    dimer: String,
    description: String,
    #[serde(default)]
    stars: Vec<String>,
    checks: Vec<Entry>,
}

#[derive(Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum Origin {
    PublishedExample,
    Computed,
    Definitional,
}

#[derive(Deserialize)]
struct Entry {
    origin: Origin,
    #[serde(flatten)]
    check: Check,
}

/// A point given by values, or by the simple matchings meeting `ψ(path)`.
#[derive(Deserialize)]
#[serde(untagged)]
enum PointInput {
    Meets { meets: Vec<String> },
    Values(BTreeMap<String, Value>),
}

#[derive(Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
enum Check {
    Matchings { total: usize, simple: usize },
    Sigma { exponents: Vec<u32> },
    FacesMapToSigma,
    Cancellative { budget: usize, expected: bool },
    REqualsS { budget: usize },
    InoutHypothesis { expected: bool },
    /// The witness found, as an unordered pair of arrow lists, or none.
    Witness { budget: usize, expected: Option<[Vec<String>; 2]> },
    Freeness { w1: Vec<String>, w2: Vec<String>, word_length: usize, free: bool },
    TargetIs { dimer: String },
    SEqualsSPrime { budget: usize },
    Eta { path: Vec<String>, exponents: Vec<u32> },
    InR { path: Vec<String>, expected: bool },
    UCertificate { point: PointInput, budget: usize, generator: Vec<String>, f1: Vec<String>, f2: Vec<String> },
    Azumaya { point: PointInput, budget: usize, aprime: bool, u: String, a: String },
}

struct Ctx {
    dimer: DimerQuiver,
    contraction: Contraction,
    /// `η̄` through the contraction (the dimer's own map when nothing is contracted).
    map: ImpressionMap,
    target_map: ImpressionMap,
}

impl Ctx {
    fn path(&self, names: &[String]) -> Result<Path, String> {
        let ids: Vec<&str> = names.iter().map(String::as_str).collect();
        self.dimer.path(&ids).map_err(|e| e.to_string())
    }

    fn point(&self, input: &PointInput) -> Result<PointB<Rational>, String> {
        match input {
            PointInput::Meets { meets } => {
                let hit = self.target_map.eta_bar(&self.contraction.psi(&self.path(meets)?));
                Ok(PointB::new(hit.exponents().iter().map(|&e| Rational::from_integer(i64::from(e > 0).into())).collect()))
            }
            PointInput::Values(values) => {
                let v = serde_json::to_value(values).map_err(|e| e.to_string())?;
                PointB::from_value(&v, self.target_map.nvars()).map_err(|e| e.to_string())
            }
        }
    }
}

fn names(d: &DimerQuiver, p: &Path) -> Vec<String> {
    p.arrows().iter().map(|&a| d.arrow_name(a).to_string()).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn tri(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Unknown => "unknown",
    }
}

fn evaluate(ctx: &Ctx, check: &Check) -> Result<String, String> {
    let d = &ctx.dimer;
    match check {
        Check::Matchings { total, simple } => {
            let cat = enumerate_matchings(d);
            expect((cat.len(), cat.var_count()), (*total, *simple))
        }
        Check::Sigma { exponents } => expect(ctx.map.sigma().exponents().to_vec(), exponents.clone()),
        Check::FacesMapToSigma => {
            let ok = d.faces().iter().all(|f| ctx.map.eta_bar_arrows(&f.arrows) == *ctx.map.sigma());
            expect(ok, true)
        }
        Check::Cancellative { budget, expected } => {
            expect(matches!(cancellativity_check(d, *budget), Cancellativity::CancellativeUpTo(_)), *expected)
        }
        Check::REqualsS { budget } => {
            let images = CycleImages::new(d, &ctx.map);
            expect(images.s_at(*budget).generators == images.r_at(*budget).generators, true)
        }
        Check::InoutHypothesis { expected } => expect(pi_check::inout_hypothesis(&ctx.contraction), *expected),
        Check::Witness { budget, expected } => {
            let got = match pi_check::find_witness(&ctx.contraction, *budget, 2) {
                WitnessSearch::Found(w) => {
                    let mut pair = [names(d, &w.w1), names(d, &w.w2)];
                    pair.sort();
                    Some(pair)
                }
                WitnessSearch::NoneFound { .. } => None,
            };
            let want = expected.clone().map(|mut p| {
                p.sort();
                p
            });
            expect(got, want)
        }
        Check::Freeness { w1, w2, word_length, free } => {
            let verdict = pi_check::verify_freeness(&Rewriter::new(d), &ctx.path(w1)?, &ctx.path(w2)?, *word_length);
            expect(matches!(verdict, Freeness::FreeUpTo(_)), *free).map(|_| format!("{verdict:?}"))
        }
        Check::TargetIs { dimer } => expect(ctx.contraction.target().same_dimer(&fixtures::load(dimer)), true),
        Check::SEqualsSPrime { budget } => {
            let sc = ctx.contraction.check_s_equals_sprime(*budget).map_err(|e| e.to_string())?;
            expect(sc.verdict, SComparison::EqualUpTo(*budget))
        }
        Check::Eta { path, exponents } => expect(ctx.map.eta_bar(&ctx.path(path)?).exponents().to_vec(), exponents.clone()),
        Check::InR { path, expected } => {
            let m = ctx.map.eta_bar(&ctx.path(path)?);
            expect(CycleImages::new(d, &ctx.map).in_r(&m).is_some(), *expected)
        }
        Check::UCertificate { point, budget, generator, f1, f2 } => {
            let lc = LocusContext::new(&ctx.contraction, *budget);
            let b = ctx.point(point)?;
            let g = ctx.map.eta_bar(&ctx.path(generator)?);
            let want = UCertificate::Fraction { f1: ctx.map.eta_bar(&ctx.path(f1)?), f2: ctx.map.eta_bar(&ctx.path(f2)?) };
            match lc.in_u(&b) {
                UVerdict::InU(certs) => expect(certs.into_iter().find(|(m, _)| *m == g).map(|(_, c)| c), Some(want)),
                other => Err(format!("in_U gave {other:?}")),
            }
        }
        Check::Azumaya { point, budget, aprime, u, a } => {
            let lc = LocusContext::new(&ctx.contraction, *budget);
            let v = lc.azumaya_a(&ctx.point(point)?);
            let got_u = match v.in_u.is_in() {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unknown",
            };
            expect((v.in_azumaya_aprime, got_u, tri(v.in_azumaya_a)), (*aprime, u.as_str(), a.as_str()))
        }
    }
}

fn check_name(c: &Check) -> String {
    format!("{c:?}")
}

impl Origin {
    fn name(self) -> &'static str {
        match self {
            Origin::PublishedExample => "published-example",
            Origin::Computed => "computed",
            Origin::Definitional => "definitional",
        }
    }
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Check::Matchings { .. } => "matchings",
            Check::Sigma { .. } => "sigma",
            Check::FacesMapToSigma => "faces_map_to_sigma",
            Check::Cancellative { .. } => "cancellative",
            Check::REqualsS { .. } => "r_equals_s",
            Check::InoutHypothesis { .. } => "inout_hypothesis",
            Check::Witness { .. } => "witness",
            Check::Freeness { .. } => "freeness",
            Check::TargetIs { .. } => "target_is",
            Check::SEqualsSPrime { .. } => "s_equals_s_prime",
            Check::Eta { .. } => "eta",
            Check::InR { .. } => "in_r",
            Check::UCertificate { .. } => "u_certificate",
            Check::Azumaya { .. } => "azumaya",
        };
        f.write_str(name)
    }
}

fn parse(src: &str) -> anyhow::Result<Manifest> {
    serde_json::from_str(src).context("bundled manifest")
}

pub fn list() -> Report {
    let mut rows = Vec::new();
    let mut text = String::new();
    for (name, src) in MANIFESTS {
        let m = parse(src).expect("bundled manifests parse");
        text.push_str(&format!("{name:<12} {:>2} checks  {}\n", m.checks.len(), m.description));
        rows.push(json!({ "name": m.name, "dimer": m.dimer, "stars": m.stars, "checks": m.checks.len(), "description": m.description }));
    }
    Report::new(Value::Array(rows), text, false)
}

pub fn run(name: Option<&str>) -> anyhow::Result<Report> {
    let selected: Vec<&(&str, &str)> = match name {
        Some(n) => vec![MANIFESTS.iter().find(|(m, _)| *m == n).ok_or_else(|| InputError(format!("no fixture named `{n}`")))?],
        None => MANIFESTS.iter().collect(),
    };
    let mut text = String::new();
    let mut out = Vec::new();
    let mut failed = 0;
    for (_, src) in selected {
        let m = parse(src)?;
        let dimer = fixtures::load(&m.dimer);
        let stars: Vec<&str> = m.stars.iter().map(String::as_str).collect();
        let contraction = Contraction::by_names(&dimer, &stars).map_err(|e| InputError(e.to_string()))?;
        let target_map = ImpressionMap::from_catalog(contraction.target(), &enumerate_matchings(contraction.target()));
        let map = contraction.pulled_back(&target_map);
        let ctx = Ctx { dimer, contraction, map, target_map };
        let mut results = Vec::new();
        for entry in &m.checks {
            let res = evaluate(&ctx, &entry.check);
            let origin = entry.origin.name();
            let name = check_name(&entry.check);
            match &res {
                Ok(detail) => text.push_str(&format!("PASS {}/{name} [{origin}] {detail}\n", m.name)),
                Err(why) => {
                    failed += 1;
                    text.push_str(&format!("FAIL {}/{name} [{origin}] {why}\n", m.name));
                }
            }
            results.push(json!({
                "check": name,
                "origin": origin,
                "pass": res.is_ok(),
                "detail": res.unwrap_or_else(|e| e),
            }));
        }
        out.push(json!({ "fixture": m.name, "results": results }));
    }
    text.push_str(&format!("{} failed\n", failed));
    Ok(Report::new(Value::Array(out), text, failed > 0))
}
