use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{emit, Built, Format, Target, UsageError, VerifyArgs, EXIT_FAILED, EXIT_OK};
use crate::bgg::{hodge_report, Bgg, BggError};
use crate::exactla::ExactScalar;
use crate::linkmaps::{check_inj_surj, sident_check, y_block_check};
use crate::polyforms::{identity_report, PolySpace};
use crate::proxies::{named_diagram, VALID_NAMED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Appendix1,
    Homotopy,
    Lemma8,
    Projection,
    Exactness,
    Dimension,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == other || self == Suite::All
    }
}

/// One entry of the committed dimension tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub name: String,
    pub degree: i64,
    pub dims: Vec<usize>,
    pub cohomology: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    pub oracle: String,
    pub entries: Vec<GoldenEntry>,
}

/// Source of the committed golden dimension tables.
pub const GOLDEN_JSON: &str = include_str!("../../golden/dimensions.json");

pub fn golden() -> GoldenFile {
    serde_json::from_str(GOLDEN_JSON).expect("golden/dimensions.json is valid")
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

fn case(suite: &'static str, name: String, passed: bool, detail: impl Serialize) -> Case {
    Case {
        suite,
        name,
        passed,
        detail: serde_json::to_value(detail).expect("reports serialize"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub degree: i64,
    pub max_dim: usize,
    pub targets: Vec<String>,
    pub cases: Vec<Case>,
    pub passed: bool,
}

fn appendix1(max_dim: usize) -> Vec<Case> {
    let mut params = Vec::new();
    for n in 1..=max_dim {
        for j in 0..n {
            for i in 0..n {
                params.push((n, i, j));
            }
        }
    }
    let mut cases: Vec<Case> = params
        .par_iter()
        .map(|&(n, i, j)| {
            let r = check_inj_surj(n, i, j);
            case("appendix1", format!("inj_surj n={n} i={i} J={j}"), r.passed, &r)
        })
        .collect();
    let sident: Vec<(usize, usize)> = (1..=max_dim).flat_map(|n| (0..n).map(move |k| (n, k))).collect();
    cases.par_extend(sident.par_iter().map(|&(n, k)| {
        let r = sident_check(n, k);
        case("appendix1", format!("sident n={n} k={k}"), r.passed, &r)
    }));
    let blocks: Vec<(usize, usize, usize)> = (1..=max_dim.min(4))
        .flat_map(|n| (0..=n).flat_map(move |k| (1..=n - k).map(move |m| (n, k, m))))
        .collect();
    cases.par_extend(blocks.par_iter().map(|&(n, k, m)| {
        let r = y_block_check(n, k, m);
        case("appendix1", format!("y_blocks n={n} k={k} m={m}"), r.passed, &r)
    }));
    cases
}

fn poly_identities(max_dim: usize) -> Vec<Case> {
    let mut params = Vec::new();
    for n in 1..=max_dim.min(4) {
        for r in 0..=5 {
            for i in 0..=n {
                for j in 0..=n {
                    params.push(PolySpace::new(n, r, i, j));
                }
            }
        }
    }
    params
        .par_iter()
        .map(|s| {
            let r = identity_report(s);
            case("homotopy", format!("identities {s}"), r.passed, &r)
        })
        .collect()
}

fn golden_check(g: &GoldenFile, label: &str, degree: i64, dims: &[usize], coh: &[usize]) -> Option<bool> {
    g.entries
        .iter()
        .find(|e| e.name == label && e.degree == degree)
        .map(|e| e.dims == dims && e.cohomology == coh)
}

fn diagram_cases(suite: Suite, label: &str, degree: i64, b: &Bgg, g: &GoldenFile) -> Result<Vec<Case>, UsageError> {
    let mut cases = Vec::new();
    if suite.includes(Suite::Homotopy) {
        let r = b.homotopy_report();
        cases.push(case("homotopy", format!("{label} homotopy"), r.passed(), &r));
    }
    if suite.includes(Suite::Lemma8) {
        let r = b.lemma8();
        cases.push(case("lemma8", format!("{label} lemma8"), r.passed(), &r));
    }
    if suite.includes(Suite::Projection) {
        let s = b.structural_report();
        let r = json!({
            "anticommutativity": s.anticommutativity,
            "output_is_complex": s.output_is_complex,
            "projection": s.projection,
        });
        let ok = s.anticommutativity && s.output_is_complex && s.projection.passed();
        cases.push(case("projection", format!("{label} projection"), ok, r));
    }
    if suite.includes(Suite::Exactness) {
        let e = b.exactness_report();
        cases.push(case("exactness", format!("{label} exactness"), e.passed(), &e));
        let p = b.phi_report();
        cases.push(case("exactness", format!("{label} phi"), p.passed(), &p));
    }
    if suite.includes(Suite::Dimension) {
        let d = b.dimension_report();
        let c = b.output_complex();
        let coh = d.output_dims();
        let golden = golden_check(g, label, degree, &c.dims(), &coh);
        let detail = json!({ "report": d, "dims": c.dims(), "golden_match": golden });
        cases.push(case(
            "dimension",
            format!("{label} dimension"),
            d.passed() && golden != Some(false),
            detail,
        ));
        let k = b.cochain_k_report().map_err(|e| UsageError(format!("{}: {e}", e.kind())))?;
        cases.push(case("dimension", format!("{label} cochain_k"), k.passed(), &k));
        let tw = b.twisted_cohomology_report();
        let (ok, detail) = match &tw {
            Ok(v) => (v.iter().all(|t| t.in_kernel && t.direct && t.representatives == t.expected), json!(v)),
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        cases.push(case("dimension", format!("{label} twisted_cohomology"), ok, detail));
        let h = hodge_report(c);
        cases.push(case(
            "dimension",
            format!("{label} hodge"),
            h.iter().all(|x| x.passed()),
            &h,
        ));
    }
    Ok(cases)
}

fn rejection(name: &str, r: Result<Bgg, BggError>, expected: &str) -> Case {
    let kind = match &r {
        Ok(_) => "accepted".to_string(),
        Err(e) => e.kind().to_string(),
    };
    let detail = json!({ "expected": expected, "got": kind });
    case("dimension", format!("{name} rejected"), kind == expected, detail)
}

fn negative_cases(degree: i64) -> Vec<Case> {
    let fail = named_diagram("conformal2d_fail", degree.max(4)).expect("diagram builds");
    let mut flipped = named_diagram("elasticity3d", degree.max(4)).expect("diagram builds");
    flipped.links[1] = flipped.links[1].scale(&ExactScalar::from_int(-1));
    vec![
        rejection("conformal2d_fail", fail.validate(), "NoValidJ"),
        rejection("elasticity3d sign-flipped", flipped.validate(), "AnticommutativityViolation"),
    ]
}

/// Runs a suite over the given diagrams and returns the report. Cases are
/// listed in a fixed order regardless of thread count.
pub fn run_suite(
    suite: Suite,
    degree: i64,
    max_dim: usize,
    targets: &[Target],
    negative: bool,
) -> Result<VerifyReport, UsageError> {
    let g = golden();
    let labels: Vec<String> = targets.iter().map(Target::label).collect();
    let built: Vec<Built> = targets
        .par_iter()
        .map(|t| t.build(degree))
        .collect::<Result<_, _>>()?;
    let mut cases = Vec::new();
    if suite.includes(Suite::Appendix1) {
        cases.extend(appendix1(max_dim));
    }
    if suite.includes(Suite::Homotopy) {
        cases.extend(poly_identities(max_dim));
    }
    let per_target: Vec<Vec<Case>> = built
        .par_iter()
        .zip(labels.par_iter())
        .map(|(b, label)| match b {
            Built::Diagram(b) => diagram_cases(suite, label, degree, b, &g),
            Built::Complex(c) => {
                let mut v = Vec::new();
                if suite.includes(Suite::Dimension) {
                    let coh = c.cohomology_dims();
                    let golden = golden_check(&g, label, degree, &c.dims(), &coh);
                    let detail = json!({ "dims": c.dims(), "cohomology": coh, "golden_match": golden });
                    v.push(case("dimension", format!("{label} dimension"), golden != Some(false), detail));
                }
                Ok(v)
            }
        })
        .collect::<Result<_, _>>()?;
    cases.extend(per_target.into_iter().flatten());
    if negative && suite.includes(Suite::Dimension) {
        cases.extend(negative_cases(degree));
    }
    let passed = cases.iter().all(|c| c.passed);
    Ok(VerifyReport {
        suite,
        degree,
        max_dim,
        targets: labels,
        cases,
        passed,
    })
}

pub(super) fn run(a: &VerifyArgs) -> Result<i32, UsageError> {
    if a.output.format != Format::Json {
        return Err(UsageError("verify writes JSON reports only".into()));
    }
    let given = a.target.named.is_some() || a.target.family.is_some();
    if given && a.all_named {
        return Err(UsageError("--all-named cannot be combined with --named or --family".into()));
    }
    let targets: Vec<Target> = if given {
        vec![a.target.clone()]
    } else {
        VALID_NAMED
            .iter()
            .map(|n| Target::named(n))
            .collect()
    };
    let report = run_suite(a.suite, a.degree, a.max_dim, &targets, !given)?;
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| UsageError(e.to_string()))?;
    text.push('\n');
    emit(&a.output, text.as_bytes())?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}
