//! One function per subcommand. Each returns a JSON report and a text
//! summary, and a status that selects the exit code.

use std::path::Path as FsPath;

use anyhow::Context;
use dimerlab::contraction::SComparison;
use dimerlab::impression::{ImpressionMap, Monomial, PointB};
use dimerlab::loci::{self, LocusContext, Tri};
use dimerlab::matchings::{enumerate_matchings, MatchingCatalog};
use dimerlab::pi_check::{self, Freeness, WitnessSearch};
use dimerlab::rewrite::{cancellativity_check, default_budget, Cancellativity, Side};
use dimerlab::rings::{CycleImages, MonomialAlgebra, UCertificate, UVerdict};
use dimerlab::scalar::format_rational;
use dimerlab::{fixtures, Contraction, DimerQuiver, Path, Rational, Rewriter};
use serde_json::{json, Value};

use crate::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// The mathematics answered no.
    Negative,
    /// The input was read but is not a valid dimer.
    Invalid,
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: Status,
    /// Output written verbatim instead of the report (SVG, dimer JSON).
    pub raw: Option<String>,
}

impl Report {
    pub fn new(json: Value, text: String, negative: bool) -> Report {
        Report { json, text, status: if negative { Status::Negative } else { Status::Success }, raw: None }
    }
}

fn input(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// Reads a file, falling back to a bundled fixture of that name.
pub fn read_dimer_source(arg: &str) -> anyhow::Result<String> {
    let path = FsPath::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {arg}"));
    }
    fixtures::dimer_source(arg).map(str::to_string).ok_or_else(|| input(format!("no file or bundled fixture named `{arg}`")))
}

pub fn load_dimer(arg: &str) -> anyhow::Result<DimerQuiver> {
    DimerQuiver::from_json(&read_dimer_source(arg)?).map_err(|e| input(format!("{arg}: {e}")))
}

fn budget_for(d: &DimerQuiver, flag: Option<usize>) -> usize {
    flag.unwrap_or_else(|| default_budget(d))
}

fn contraction(d: &DimerQuiver, stars: &[String]) -> anyhow::Result<Contraction> {
    let names: Vec<&str> = stars.iter().map(String::as_str).collect();
    Contraction::by_names(d, &names).map_err(|e| input(e.to_string()))
}

fn path_names(d: &DimerQuiver, p: &Path) -> Value {
    p.arrows().iter().map(|&a| d.arrow_name(a)).collect()
}

fn monomial(m: &Monomial) -> Value {
    json!({ "monomial": m.to_string(), "exponents": m.exponents() })
}

fn own_map(d: &DimerQuiver) -> (MatchingCatalog, ImpressionMap) {
    let cat = enumerate_matchings(d);
    let map = ImpressionMap::from_catalog(d, &cat);
    (cat, map)
}

fn variant_name<T: std::fmt::Debug>(v: &T) -> String {
    let dbg = format!("{v:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

pub fn validate(arg: &str) -> anyhow::Result<Report> {
    let src = read_dimer_source(arg)?;
    match DimerQuiver::from_json(&src) {
        Ok(d) => {
            let text = format!(
                "valid dimer: {} vertices, {} arrows, {} faces\n",
                d.vertex_count(),
                d.arrow_count(),
                d.face_count()
            );
            let json = json!({
                "valid": true,
                "vertices": d.vertex_count(),
                "arrows": d.arrow_count(),
                "faces": d.face_count(),
            });
            Ok(Report::new(json, text, false))
        }
        Err(dimerlab::Error::Validation(report)) => {
            // Invalid input is reported in full, then signalled as exit 2.
            let errors: Vec<Value> =
                report.errors.iter().map(|e| json!({ "kind": variant_name(e), "message": e.to_string() })).collect();
            let mut text = String::from("invalid dimer:\n");
            for e in &report.errors {
                text.push_str(&format!("  {}: {e}\n", variant_name(e)));
            }
            let json = json!({ "valid": false, "errors": errors });
            Ok(Report { json, text, status: Status::Invalid, raw: None })
        }
        Err(e) => Err(input(format!("{arg}: {e}"))),
    }
}

pub fn matchings(arg: &str) -> anyhow::Result<Report> {
    let d = load_dimer(arg)?;
    let (cat, map) = own_map(&d);
    let mut text = format!("{} perfect matchings, {} simple; σ = {}\n", cat.len(), cat.var_count(), map.sigma());
    for e in cat.entries() {
        let names: Vec<&str> = e.matching.arrows().iter().map(|&a| d.arrow_name(a)).collect();
        let tag = e.var.map(MatchingCatalog::var_name).unwrap_or_else(|| "-".into());
        text.push_str(&format!("  {tag:>4}  {{{}}}\n", names.join(", ")));
    }
    let dagger: Vec<&str> = cat.dagger_arrows().iter().map(|&a| d.arrow_name(a)).collect();
    text.push_str(&format!("arrows in no simple matching: {{{}}}\n", dagger.join(", ")));
    Ok(Report::new(cat.to_json(&d), text, false))
}

fn algebra_json(d: &DimerQuiver, alg: &MonomialAlgebra, saturated: bool) -> Value {
    let gens: Vec<Value> = alg
        .generators
        .iter()
        .zip(&alg.witnesses)
        .map(|(g, w)| {
            let mut m = monomial(g);
            m["witness"] = json!({ "vertex": d.vertex_name(w.tail()), "arrows": path_names(d, w) });
            m
        })
        .collect();
    json!({ "budget": alg.budget, "saturated": saturated, "generators": gens })
}

fn algebra_text(name: &str, alg: &MonomialAlgebra, saturated: bool) -> String {
    let gens: Vec<String> = alg.generators.iter().map(|g| g.to_string()).collect();
    let note = if saturated { "" } else { " (still growing at budget + 2)" };
    format!("{name}: {} generators up to length {}{note}\n  {}\n", gens.len(), alg.budget, gens.join(", "))
}

pub fn rings(arg: &str, contract_from: Option<&str>, stars: &[String], budget: Option<usize>) -> anyhow::Result<Report> {
    let d = load_dimer(arg)?;
    let (_, target_map) = own_map(&d);
    let (source, map, c) = match contract_from {
        Some(big) => {
            let c = contraction(&load_dimer(big)?, stars)?;
            if !c.target().same_dimer(&d) {
                return Err(input(format!("contracting {big} along {} does not give {arg}", stars.join(","))));
            }
            let map = c.pulled_back(&target_map);
            (c.source().clone(), map, Some(c))
        }
        None => (d.clone(), target_map.clone(), None),
    };
    let budget = budget_for(&source, budget);
    let images = CycleImages::new(&source, &map);
    let (s, s2) = (images.s_at(budget), images.s_at(budget + 2));
    let (r, r2) = (images.r_at(budget), images.r_at(budget + 2));
    let (s_sat, r_sat) = (s.generators == s2.generators, r.generators == r2.generators);
    let equal = s.generators == r.generators;
    let mut text = algebra_text("S", &s, s_sat) + &algebra_text("R", &r, r_sat);
    text.push_str(&format!("R = S up to {budget}: {}\n", if equal { "yes" } else { "no" }));
    let mut json = json!({
        "S": algebra_json(&source, &s, s_sat),
        "R": algebra_json(&source, &r, r_sat),
        "R_equals_S": equal,
    });
    if let Some(c) = c {
        let tgt = CycleImages::new(&d, &target_map);
        let sp = tgt.s_at(budget);
        let sp_sat = sp.generators == tgt.s_at(budget + 2).generators;
        text.push_str(&algebra_text("S′", &sp, sp_sat));
        json["S_prime"] = algebra_json(&d, &sp, sp_sat);
        json["stars"] = c.stars().iter().map(|&a| c.source().arrow_name(a)).collect();
    }
    Ok(Report::new(json, text, false))
}

pub fn contract(arg: &str, stars: &[String], budget: Option<usize>, write_target: bool) -> anyhow::Result<Report> {
    let d = load_dimer(arg)?;
    let c = contraction(&d, stars)?;
    let budget = budget_for(&d, budget);
    let t = c.target();
    let failures: Vec<&str> = c.relation_failures(budget).iter().map(|&a| d.arrow_name(a)).collect();
    let dagger = enumerate_matchings(&d).dagger_arrows();
    let stars_in_dagger = c.stars().iter().all(|a| dagger.contains(a));
    let target_cancellative = cancellativity_check(t, budget.min(8));
    let sc = c.check_s_equals_sprime(budget).map_err(|e| input(e.to_string()))?;
    let (s_verdict, s_equal) = match &sc.verdict {
        SComparison::EqualUpTo(n) => (json!({ "equal_up_to": n }), true),
        SComparison::Differ { witness, in_s } => {
            (json!({ "differ": monomial(witness), "side": if *in_s { "S" } else { "S′" } }), false)
        }
    };
    let cancellative = matches!(target_cancellative, Cancellativity::CancellativeUpTo(_));
    let json = json!({
        "stars": stars,
        "target": { "vertices": t.vertex_count(), "arrows": t.arrow_count(), "faces": t.face_count() },
        "relations_preserved": failures.is_empty(),
        "relation_failures": failures,
        "stars_outside_simple_matchings": stars_in_dagger,
        "target_cancellative_up_to_8": cancellative,
        "s_equals_s_prime": s_verdict,
        "simple_matching_bijection": sc.correspondence.is_bijection(),
    });
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "contracted {{{}}}: {} vertices, {} arrows, {} faces\n",
        stars.join(", "),
        t.vertex_count(),
        t.arrow_count(),
        t.face_count()
    );
    text.push_str(&format!("relations preserved: {}\n", yes(failures.is_empty())));
    text.push_str(&format!("contracted arrows lie in no simple matching: {}\n", yes(stars_in_dagger)));
    text.push_str(&format!("target cancellative up to length {}: {}\n", budget.min(8), yes(cancellative)));
    text.push_str(&match &sc.verdict {
        SComparison::EqualUpTo(n) => format!("S = S′ up to {n}\n"),
        SComparison::Differ { witness, in_s } => {
            format!("S ≠ S′: {witness} lies in {} only\n", if *in_s { "S" } else { "S′" })
        }
    });
    text.push_str(&format!("simple matchings correspond one to one: {}\n", yes(sc.correspondence.is_bijection())));
    let negative = !failures.is_empty() || !s_equal;
    let mut json = json;
    json["target_dimer"] = serde_json::from_str(&t.to_json()).expect("dimer JSON");
    let mut report = Report::new(json, text, negative);
    // With `--out` the file written is the contracted dimer itself.
    if write_target {
        report.raw = Some(t.to_json());
    }
    Ok(report)
}

fn read_point(path: &FsPath, nvars: usize) -> anyhow::Result<PointB<Rational>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PointB::from_json(&text, nvars).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn point_json(b: &PointB<Rational>) -> Value {
    b.values.iter().enumerate().map(|(i, v)| (MatchingCatalog::var_name(i), Value::from(format_rational(v)))).collect::<serde_json::Map<_, _>>().into()
}

fn tri(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Unknown => "unknown",
    }
}

pub fn u_json(v: &UVerdict) -> Value {
    match v {
        UVerdict::InU(certs) => {
            let certs: Vec<Value> = certs
                .iter()
                .map(|(g, c)| match c {
                    UCertificate::InR => json!({ "generator": monomial(g), "in_R": true }),
                    UCertificate::Fraction { f1, f2 } => {
                        json!({ "generator": monomial(g), "in_R": false, "f1": monomial(f1), "f2": monomial(f2) })
                    }
                })
                .collect();
            json!({ "verdict": "in", "certificates": certs })
        }
        UVerdict::NotInU { generator } => json!({ "verdict": "not-in", "generator": monomial(generator) }),
        UVerdict::Unknown { generator } => json!({ "verdict": "unknown", "generator": monomial(generator) }),
    }
}

pub fn locus(arg: &str, stars: &[String], point: &FsPath, budget: Option<usize>) -> anyhow::Result<Report> {
    let d = load_dimer(arg)?;
    let c = contraction(&d, stars)?;
    let budget = budget_for(&d, budget);
    let ctx = LocusContext::new(&c, budget);
    let b = read_point(point, ctx.target_map.nvars())?;
    let v = ctx.azumaya_a(&b);
    let rep = loci::rep_from_point(c.target(), &ctx.target_map, &b).ok();
    let mut json = json!({
        "point": point_json(&b),
        "budget": budget,
        "in_azumaya_aprime": v.in_azumaya_aprime,
        "in_u": u_json(&v.in_u),
        "in_azumaya_a": tri(v.in_azumaya_a),
    });
    if let Some(r) = &rep {
        json["representation"] =
            r.values.iter().enumerate().map(|(a, x)| (c.target().arrow_name(a).to_string(), Value::from(format_rational(x)))).collect::<serde_json::Map<_, _>>().into();
    }
    let mut text = format!("in 𝒜′ (simple module over the point): {}\n", if v.in_azumaya_aprime { "yes" } else { "no" });
    text.push_str(&match &v.in_u {
        UVerdict::InU(certs) => {
            let mut s = String::from("in U: yes\n");
            for (g, cert) in certs {
                s.push_str(&match cert {
                    UCertificate::InR => format!("  {g} ∈ R\n"),
                    UCertificate::Fraction { f1, f2 } => format!("  {g} = ({f1}) / ({f2})\n"),
                });
            }
            s
        }
        UVerdict::NotInU { generator } => {
            json["note"] = "outside U the local ring of R differs from that of S, so the point is singular".into();
            format!("in U: no ({generator} has no admissible denominator)\n")
        }
        UVerdict::Unknown { generator } => format!("in U: unknown (no denominator for {generator} within the search bound)\n"),
    });
    text.push_str(&format!("in 𝒜: {}\n", tri(v.in_azumaya_a)));
    Ok(Report::new(json, text, v.in_azumaya_a == Tri::No))
}

pub fn simples(arg: &str, point: Option<&FsPath>) -> anyhow::Result<Report> {
    let d = load_dimer(arg)?;
    let (cat, map) = own_map(&d);
    match point {
        Some(p) => {
            let b = read_point(p, map.nvars())?;
            let r = loci::rep_from_point(&d, &map, &b).map_err(|e| input(e.to_string()))?;
            let simple = loci::is_simple(&d, &r);
            let zero: Vec<&str> = (0..d.arrow_count()).filter(|&a| r.values[a] == Rational::from_integer(0.into())).map(|a| d.arrow_name(a)).collect();
            let json = json!({ "point": point_json(&b), "simple": simple, "vanishing_arrows": zero });
            let text = format!("simple: {}\nvanishing arrows: {{{}}}\n", if simple { "yes" } else { "no" }, zero.join(", "));
            Ok(Report::new(json, text, !simple))
        }
        None => {
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut points: Vec<(String, PointB<Rational>)> = vec![("all ones".into(), PointB::ones(map.nvars()))];
            for v in 0..cat.var_count() {
                let mut b = PointB::ones(map.nvars());
                b.values[v] = Rational::from_integer(0.into());
                points.push((format!("{} = 0", MatchingCatalog::var_name(v)), b));
            }
            for (label, b) in points {
                let r = loci::rep_from_point(&d, &map, &b).map_err(|e| input(e.to_string()))?;
                let simple = loci::is_simple(&d, &r);
                let zero: Vec<&str> =
                    (0..d.arrow_count()).filter(|&a| r.values[a] == Rational::from_integer(0.into())).map(|a| d.arrow_name(a)).collect();
                text.push_str(&format!("{label:>10}: simple {:<3} vanishing {{{}}}\n", if simple { "yes" } else { "no" }, zero.join(", ")));
                rows.push(json!({ "point": label, "simple": simple, "vanishing_arrows": zero }));
            }
            Ok(Report::new(Value::Array(rows), text, false))
        }
    }
}

pub fn pi_check(arg: &str, stars: &[String], word_length: usize, budget: Option<usize>) -> anyhow::Result<Report> {
    let d = load_dimer(arg)?;
    let c = contraction(&d, stars)?;
    let budget = budget_for(&d, budget);
    let cancel = cancellativity_check(&d, budget.min(8));
    let inout = pi_check::inout_hypothesis(&c);
    let mut json = json!({ "budget": budget, "word_length": word_length, "inout_hypothesis": inout });
    let mut text = String::new();
    match &cancel {
        Cancellativity::CancellativeUpTo(n) => {
            json["cancellation_failure"] = Value::Null;
            text.push_str(&format!("cancellative up to length {n}\n"));
        }
        Cancellativity::Counterexample(cx) => {
            json["cancellation_failure"] = json!({
                "p": path_names(&d, &cx.p),
                "q": path_names(&d, &cx.q),
                "arrow": d.arrow_name(cx.arrow),
                "side": format!("{:?}", cx.side).to_lowercase(),
            });
            let (p, q, a) = (cx.p.display(&d), cx.q.display(&d), d.arrow_name(cx.arrow));
            text.push_str(&match cx.side {
                Side::After => format!("cancellation fails: [{p}] ≁ [{q}] but [{p} {a}] ~ [{q} {a}]\n"),
                Side::Before => format!("cancellation fails: [{p}] ≁ [{q}] but [{a} {p}] ~ [{a} {q}]\n"),
            });
        }
    }
    text.push_str(&format!("in-out hypothesis: {}\n", if inout { "holds" } else { "fails" }));
    let negative = match pi_check::find_witness(&c, budget, 2.min(word_length)) {
        WitnessSearch::Found(w) => {
            let free = pi_check::verify_freeness(&Rewriter::new(&d), &w.w1, &w.w2, word_length);
            json["witness"] = json!({
                "w1": path_names(&d, &w.w1),
                "w2": path_names(&d, &w.w2),
                "p": path_names(&d, &w.p),
                "q": path_names(&d, &w.q),
                "r": path_names(&d, &w.r),
            });
            text.push_str(&format!("witness: {} and {}\n", w.w1.display(&d), w.w2.display(&d)));
            match free {
                Freeness::FreeUpTo(n) => {
                    json["verdict"] = json!({ "free_up_to": n });
                    text.push_str(&format!("free up to word length {n}: the algebra is not PI within this bound\n"));
                    false
                }
                Freeness::RelationFound(u, v) => {
                    json["verdict"] = json!({ "relation": [u, v] });
                    text.push_str(&format!("relation between words {u:?} and {v:?}\n"));
                    true
                }
            }
        }
        WitnessSearch::NoneFound { budget, candidates } => {
            json["verdict"] = json!({ "none_found": { "budget": budget, "candidates": candidates } });
            text.push_str(&format!("no witness among {candidates} candidates; no claim about PI\n"));
            true
        }
    };
    Ok(Report::new(json, text, negative))
}

pub fn render(arg: &str, styles: Option<&FsPath>) -> anyhow::Result<Report> {
    let d = load_dimer(arg)?;
    let styles = match styles {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            crate::render::Styles::from_json(&d, &text).map_err(input)?
        }
        None => crate::render::Styles::default(),
    };
    let svg = crate::render::render(&d, &styles);
    let mut r = Report::new(Value::Null, String::new(), false);
    r.raw = Some(svg);
    Ok(r)
}
