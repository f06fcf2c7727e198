//! Acceptance criteria 1 to 10. Runs without the libtest harness so that the
//! per-criterion lines are always printed; exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use bggc::bgg::family::alt_diagram;
use bggc::bgg::{hodge_report, Bgg};
use bggc::cli::golden;
use bggc::exactla::ExactScalar;
use bggc::linkmaps::{check_inj_surj, sident_check};
use bggc::multilinear::binomial;
use bggc::polyforms::{identity_report, PolySpace};
use bggc::proxies::{named_bgg, named_diagram, VALID_NAMED};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget_secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs() < budget_secs, || {
        format!("took {:.1}s, budget {budget_secs}s", elapsed.as_secs_f64())
    })
}

fn appendix1_law() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for n in 1..=5 {
        for j in 0..n {
            for i in 0..n {
                let r = check_inj_surj(n, i, j);
                ensure(r.passed, || format!("n={n} i={i} J={j}: {r:?}"))?;
                ensure(i != j || (r.injective && r.surjective), || format!("n={n} i=J={i} not bijective"))?;
                count += 1;
            }
        }
    }
    within(t.elapsed(), 10)?;
    Ok(format!("{count} links, all laws hold"))
}

fn inner_product_identity() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for n in 1..=6 {
        for k in 0..n {
            let r = sident_check(n, k);
            ensure(r.passed, || format!("n={n} k={k}: {r:?}"))?;
            count += 1;
        }
    }
    within(t.elapsed(), 5)?;
    Ok(format!("{count} pairs (n,k), zero residual"))
}

fn homotopy_identities() -> Outcome {
    let t = Instant::now();
    let mut spaces = Vec::new();
    for n in 1..=4 {
        for r in 0..=5 {
            for i in 0..=n {
                for j in 0..=n {
                    spaces.push(PolySpace::new(n, r, i, j));
                }
            }
        }
    }
    let failed: Vec<String> = spaces
        .par_iter()
        .map(identity_report)
        .filter(|r| !r.passed)
        .map(|r| format!("{r:?}"))
        .collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    within(t.elapsed(), 60)?;
    Ok(format!("{} spaces, four identities each", spaces.len()))
}

fn structural(diagrams: &[(String, Bgg)]) -> Outcome {
    let t = Instant::now();
    for (name, b) in diagrams {
        let r = b.structural_report();
        ensure(r.passed(), || format!("{name}: {r:?}"))?;
    }
    within(t.elapsed(), 300)?;
    Ok(format!("{} diagrams at r=8", diagrams.len()))
}

fn cohomology_dimensions(diagrams: &[(String, Bgg)]) -> Outcome {
    let expected: [(&str, &[usize]); 6] = [
        ("hessian3d", &[4, 0, 0, 0]),
        ("elasticity3d", &[6, 0, 0, 0]),
        ("divdiv3d", &[4, 0, 0, 0]),
        ("gradcurl3d", &[1, 3, 0, 0, 0, 0]),
        ("curldiv3d", &[3, 1, 0, 0, 0]),
        ("graddiv3d", &[1, 0, 1, 0, 0, 0]),
    ];
    let get = |name: &str| &diagrams.iter().find(|(n, _)| n == name).unwrap().1;
    let g = golden();
    let golden_coh = |name: &str, degree: i64| {
        g.entries
            .iter()
            .find(|e| e.name == name && e.degree == degree)
            .map(|e| e.cohomology.clone())
    };
    for (name, want) in expected {
        let got = get(name).output_complex().cohomology_dims();
        ensure(got == want, || format!("{name}: {got:?} != {want:?}"))?;
    }
    for (name, b) in diagrams {
        let got = b.output_complex().cohomology_dims();
        let oracle = golden_coh(name, 8);
        ensure(oracle.as_ref() == Some(&got), || format!("{name}: {got:?} vs oracle {oracle:?}"))?;
    }
    let ce = named_bgg("conformal_elasticity3d", 10).map_err(|e| e.to_string())?;
    let got = ce.output_complex().cohomology_dims();
    ensure(got == [10, 0, 0, 0], || format!("conformal elasticity r=10: {got:?}"))?;
    ensure(golden_coh("conformal_elasticity3d", 10).as_ref() == Some(&got), || "oracle mismatch at r=10".into())?;
    let a = get("conformal_hessian3d_a").output_complex();
    let b = get("conformal_hessian3d_b").output_complex();
    ensure(a.cohomology_dims() == b.cohomology_dims() && a.dims() == b.dims(), || {
        format!("conformal Hessian: {:?} vs {:?}", a.cohomology_dims(), b.cohomology_dims())
    })?;
    ensure(a.diffs == b.diffs, || "conformal Hessian operators differ between derivations".into())?;
    let gr = get("gradrot2d").output_complex().cohomology_dims();
    ensure(gr[1] == 1, || format!("gradrot2d: {gr:?}"))?;
    Ok("all tables match, oracle agrees".into())
}

fn theorem_one_formula() -> Outcome {
    let t = Instant::now();
    let mut params = Vec::new();
    for n in 2..=4usize {
        for j in 0..n {
            params.push((n, j));
        }
    }
    let results: Vec<Result<(), String>> = params
        .par_iter()
        .map(|&(n, j)| {
            let r = 2 * n as i64 + 2;
            let b = alt_diagram(n, j, r).validate().map_err(|e| format!("n={n} J={j}: {e}"))?;
            let coh = b.output_complex().cohomology_dims();
            let mut want = vec![0; coh.len()];
            want[0] = binomial(n + 1, j + 1);
            ensure(want[0] == binomial(n, j) + binomial(n, j + 1), || "Pascal".into())?;
            ensure(coh == want, || format!("n={n} J={j}: {coh:?} != {want:?}"))?;
            let d = b.dimension_report();
            ensure(d.passed() && d.snr_all && d.equality_all, || format!("n={n} J={j}: {d:?}"))?;
            let top = b.top().cohomology_dims();
            let bottom = b.bottom().cohomology_dims();
            for (i, &h) in coh.iter().enumerate() {
                let sum = top.get(i).copied().unwrap_or(0) + bottom.get(i).copied().unwrap_or(0);
                ensure(h == sum, || format!("n={n} J={j} index {i}: {h} != {sum}"))?;
            }
            Ok(())
        })
        .collect();
    for r in results {
        r?;
    }
    within(t.elapsed(), 600)?;
    Ok(format!("{} diagrams, n up to 4 at r=2n+2", params.len()))
}

fn theorem_two_certificate(diagrams: &[(String, Bgg)]) -> Outcome {
    for (name, b) in diagrams {
        let k = b.cochain_k_report().map_err(|e| format!("{name}: {e}"))?;
        ensure(k.passed(), || format!("{name}: {k:?}"))?;
    }
    Ok("K commutes and induces full-rank maps".into())
}

fn negative_cases() -> Outcome {
    let fail = named_diagram("conformal2d_fail", 8).map_err(|e| e.to_string())?;
    match fail.validate() {
        Err(e) if e.kind() == "NoValidJ" => {}
        other => return Err(format!("conformal2d_fail: {:?}", other.map(|b| b.j))),
    }
    let mut flipped = named_diagram("elasticity3d", 8).map_err(|e| e.to_string())?;
    flipped.links[1] = flipped.links[1].scale(&ExactScalar::from_int(-1));
    match flipped.validate() {
        Err(e) if e.kind() == "AnticommutativityViolation" => {}
        other => return Err(format!("sign-flipped elasticity: {:?}", other.map(|b| b.j))),
    }
    Ok("NoValidJ and AnticommutativityViolation".into())
}

fn hodge(diagrams: &[(String, Bgg)]) -> Outcome {
    let mut count = 0;
    for (name, b) in diagrams {
        for h in hodge_report(b.output_complex()) {
            ensure(h.passed(), || format!("{name}: {h:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} indices orthogonal and complete"))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_bggc"))
            .args(["verify", "--suite", "all", "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run("1")?;
    let b = run("4")?;
    ensure(a.status.success() && b.status.success(), || {
        format!("exit {:?} / {:?}", a.status.code(), b.status.code())
    })?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let diagrams: Vec<(String, Bgg)> = VALID_NAMED
        .par_iter()
        .map(|n| (n.to_string(), named_bgg(n, 8).expect("valid named diagram")))
        .collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("link injectivity and surjectivity", Box::new(appendix1_law)),
        ("inner-product identity on W(n,k)", Box::new(inner_product_identity)),
        ("Koszul and homotopy identities", Box::new(homotopy_identities)),
        ("structural suite per named diagram", Box::new(|| structural(&diagrams))),
        ("cohomology dimensions", Box::new(|| cohomology_dimensions(&diagrams))),
        ("dimension formula for the Alt family", Box::new(theorem_one_formula)),
        ("cochain map K certificate", Box::new(|| theorem_two_certificate(&diagrams))),
        ("rejected diagrams", Box::new(negative_cases)),
        ("Hodge decomposition", Box::new(|| hodge(&diagrams))),
        ("determinism across --jobs", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {title}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {title}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
