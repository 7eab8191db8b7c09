//! Acceptance gate. Prints one line per criterion and exits non-zero if any
//! criterion fails or overruns its time limit. Seeds are fixed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use blendkit::cli::{run_command, Command as Cmd, Options};
use blendkit::dsl::{from_json, parse, print, random::random_document, to_json};
use blendkit::gen;
use blendkit::laws::*;
use blendkit::msa::{Msa, MsaInclusionKind, MsaSignatures};
use blendkit::pl::{Pl, SetInclusions};
use blendkit::RunConfig;

const CAP: u64 = 4_000_000;

struct Outcome {
    laws: Vec<LawResult>,
    notes: Vec<String>,
}

impl Outcome {
    fn laws(laws: Vec<LawResult>) -> Self {
        Outcome { laws, notes: Vec::new() }
    }
}

type Check = fn() -> blendkit::Result<Outcome>;

fn crit1() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(101);
    let mut laws = vec![factorization_pl(&mut g, 1000, 6, CAP)?];
    for kind in MsaInclusionKind::ALL {
        laws.push(factorization_msa(&mut g, 500, kind, CAP)?);
    }
    Ok(Outcome::laws(laws))
}

fn crit2() -> blendkit::Result<Outcome> {
    Ok(Outcome::laws(vec![pullback_uniqueness_pl(4, CAP)?]))
}

fn crit3() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(103);
    let mut laws = psign_category_pl(3)?.to_vec();
    laws.push(psign_order_pl(&mut g, 1000)?);
    Ok(Outcome::laws(laws))
}

fn pl_partial_sample(g: &mut gen::Gen) -> blendkit::three_halves::PartialOf<Pl> {
    let a = gen::pl_signature(g, 6, 4);
    let mut b = gen::pl_signature(g, 6, 4);
    if b.is_empty() {
        b = named("p", 1);
    }
    gen::pl_partial(g, &a, &b)
}

fn crit4() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(104);
    let mut laws = vec![
        psign_factorization(&SetInclusions, &mut g, 500, CAP, "SET", pl_partial_sample)?,
        surjection_stability(&SetInclusions, &mut g, 500, "SET", pl_cospan)?,
    ];
    for kind in MsaInclusionKind::ALL {
        let cat = MsaSignatures::new(kind);
        let name = format!("{kind} MSA");
        laws.push(psign_factorization(&cat, &mut g, 500, CAP, &name, |g| {
            let a = gen::msa_signature(g, 3, 4);
            gen::msa_partial(g, &cat, &a, 1)
        })?);
        laws.push(surjection_stability(&cat, &mut g, 500, &name, |g| msa_cospan(g, &cat))?);
    }
    Ok(Outcome::laws(laws))
}

fn crit5() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(105);
    let cfg = RunConfig::default().with_max_carrier(2);
    let mut laws = vec![pl_satisfaction_exhaustive(4, 3, 1 << 20)?];
    for (i, kind) in MsaInclusionKind::ALL.into_iter().enumerate() {
        let msa = Msa::new(kind);
        let cat = MsaSignatures::new(kind);
        // 300 triples in all, spread over the three systems
        let mut law = satisfaction_sampled(&msa, &mut g, 100, &cfg, |g| msa_satisfaction_sample(g, &cat, 2))?;
        law.name = format!("MSA satisfaction condition ({kind}, carriers ≤2, batch {})", i + 1);
        laws.push(law);
    }
    Ok(Outcome::laws(laws))
}

fn crit6() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(106);
    let cfg = RunConfig::default().with_max_carrier(2);
    let mut laws = vec![
        psen_strictness_pl(3, 2)?,
        psen_strictness_pl_sampled(&mut g, 20_000, 4, 3)?,
        pmod_laws_pl_up_to_renaming(4)?,
        pl_homomorphism_laws(3)?,
    ];
    for kind in MsaInclusionKind::ALL {
        laws.push(psen_strictness_msa(&mut g, 300, kind)?);
        laws.push(pmod_laws_msa(&mut g, 100, kind, &cfg)?);
    }
    Ok(Outcome {
        laws,
        notes: vec!["PL translation strictness is exhaustive at ≤3 symbols, depth ≤2 and sampled at ≤4 symbols, depth ≤3".into()],
    })
}

fn crit7() -> blendkit::Result<Outcome> {
    let mut laws = vec![embedded_total_laws_pl(3)?];
    let mut search = LawResult::new("a strictly partial map that is not Mod-strict (2–3 symbols)");
    let found = find_non_strict_pl(2, 3)?;
    search.check(found.is_some(), || "no witness".into());
    laws.push(search);
    let notes = found
        .map(|w| vec![format!("witness {} after {} at {}", w.phi.total(), w.theta.total(), w.model)])
        .unwrap_or_default();
    Ok(Outcome { laws, notes })
}

fn crit8() -> blendkit::Result<Outcome> {
    Ok(Outcome::laws(vec![lax_pushout_universality_pl(3, 3, CAP)?]))
}

fn crit9() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(109);
    Ok(Outcome::laws(vec![cocone_amalgamation_pl(&mut g, 200, 3)?]))
}

fn crit10() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(110);
    Ok(Outcome::laws(theory_nesting_pl(&mut g, 500, 4, 4)?.to_vec()))
}

fn crit11() -> blendkit::Result<Outcome> {
    let mut g = gen::rng(111);
    let dir = std::env::temp_dir().join(format!("blendkit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| blendkit::Error::Input(e.to_string()))?;
    let mut fixed = LawResult::new("documents reach text and JSON fixed points");
    let mut same = LawResult::new("repeated runs are byte-identical");
    let cfg = RunConfig::default();
    for i in 0..100 {
        let doc = random_document(&mut g)?;
        let text = print(&doc);
        let json = to_json(&doc);
        let back = parse(&text)?;
        let from = from_json(&json)?;
        fixed.check(back == doc && print(&back) == text && from == doc && to_json(&from) == json, || text.clone());

        let args = ["S".to_string()];
        let a = run_command(Cmd::Blend, &doc, &args, Options::default(), &cfg)?;
        let b = run_command(Cmd::Blend, &parse(&text)?, &args, Options::default(), &cfg)?;
        same.check(a.render(true) == b.render(true) && a.render(false) == b.render(false), || text.clone());

        if i % 10 == 0 {
            let path = dir.join(format!("doc{i}.bk"));
            std::fs::write(&path, &text).map_err(|e| blendkit::Error::Input(e.to_string()))?;
            let p = path.to_str().expect("utf-8 path");
            for args in [
                vec!["validate", "--json"],
                vec!["blend", "S", "--dot"],
                vec!["amalgamate", "D"],
                vec!["check-square", "Q", "--json"],
            ] {
                let run = || Command::new(env!("CARGO_BIN_EXE_blendkit")).args(&args).args(["--file", p]).output();
                let (x, y) = (run(), run());
                let ok = matches!((&x, &y), (Ok(x), Ok(y)) if x.stdout == y.stdout && x.status == y.status && x.status.code() != Some(2));
                same.check(ok, || format!("{args:?} on {p}"));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(Outcome::laws(vec![fixed, same]))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Option<u64>); 11] = [
        ("inclusion-system factorization", crit1, Some(10)),
        ("semi-inclusive pullback uniqueness", crit2, Some(30)),
        ("partial morphisms form a 3/2-category", crit3, Some(60)),
        ("partial-morphism inclusion system", crit4, None),
        ("satisfaction condition", crit5, Some(300)),
        ("pSen strictness and pMod lax laws", crit6, None),
        ("totality and Mod-strictness", crit7, None),
        ("lax Sign-pushout universality", crit8, Some(300)),
        ("lax cocone amalgamation", crit9, None),
        ("theory morphism nesting", crit10, None),
        ("document round trip and determinism", crit11, None),
    ];
    let verbose = std::env::args().any(|a| a == "--verbose");
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let within = limit.is_none_or(|s| elapsed < Duration::from_secs(s));
        let limit_text = limit.map_or("no limit".to_string(), |s| format!("limit {s}s"));
        let (ok, detail) = match &result {
            Ok(o) => {
                let checked: u64 = o.laws.iter().map(|l| l.checked).sum();
                let violations: u64 = o.laws.iter().map(|l| l.violations).sum();
                (o.laws.iter().all(LawResult::passed), format!("{checked} checks, {violations} violations"))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let pass = ok && within;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail}; {:.2}s ({limit_text})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if let Ok(o) = &result {
            for law in o.laws.iter().filter(|l| verbose || !l.passed()) {
                println!("    {law}");
            }
            for n in &o.notes {
                println!("    note: {n}");
            }
        }
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
