//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! failure status if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{builtin, random_state};
use graphsep::classifier::{
    c6_bounds, classify_white_noise, theorem3_check, verify_verdict, WhiteNoiseFamily,
};
use graphsep::oracle::{oracle_crosscheck, OracleOptions};
use graphsep::ppt_mixture::{counterexample_state, dual_witness, verify_certificate};
use graphsep::rational::{rat, Rational};
use graphsep::{
    classify, dense, is_ppt_mixture, verify_decomposition, Bipartition, Graph,
    GraphDiagonalState, LpCertificate, TransferMatrix, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Offset above each threshold at which entanglement must be certified.
fn delta() -> Rational {
    rat(1, 1_000_000)
}

/// Dense eigenvalue tolerance for oracle and PPT checks.
const DENSE_TOL: f64 = 1e-10;

const C4_SAMPLES: usize = 10_000;
const Y5_SAMPLES: usize = 1_000;
const Y6_SAMPLES: usize = 200;
const FUZZ_SAMPLES: usize = 1_000;
const SEED: u64 = 0x6a09_e667;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: graphsep::Error) -> String {
    e.to_string()
}

fn white_noise(g: &Graph, p: &Rational) -> Result<GraphDiagonalState, String> {
    GraphDiagonalState::white_noise(g.clone(), p).map_err(err)
}

fn criterion_1() -> Outcome {
    let g = builtin("C4");
    let p = rat(5, 13);
    let at = white_noise(&g, &p)?;
    let above = white_noise(&g, &(&p + delta()))?;
    let v = classify(&at).map_err(err)?;
    check(v.is_biseparable(), format!("classify at 5/13 gave {}", v.label()))?;
    verify_verdict(&v, &at).map_err(err)?;
    check(is_ppt_mixture(&at, None).map_err(err)?.is_feasible(), "LP infeasible at 5/13")?;
    let v = classify(&above).map_err(err)?;
    check(v.is_gme(), format!("classify above 5/13 gave {}", v.label()))?;
    verify_verdict(&v, &above).map_err(err)?;
    let lp = is_ppt_mixture(&above, None).map_err(err)?;
    check(!lp.is_feasible(), "LP feasible above 5/13")?;
    verify_certificate(&lp, &above).map_err(err)?;
    Ok("biseparable at 5/13, GME at 5/13 + 1e-6, LP agrees".into())
}

fn criterion_2(family: WhiteNoiseFamily, budget: Duration) -> Outcome {
    let start = Instant::now();
    let g = family.graph();
    let p = family.threshold();
    let w = family.witness().map_err(err)?;
    let at = white_noise(&g, &p)?;
    let value = w.evaluate(&at).map_err(err)?;
    check(value == rat(0, 1), format!("Tr(W rho(p*)) = {value}"))?;
    let v = classify_white_noise(family, &p).map_err(err)?;
    check(v.is_biseparable(), format!("{} at p*", v.label()))?;
    verify_verdict(&v, &at).map_err(err)?;
    let above_p = &p + delta();
    let above = white_noise(&g, &above_p)?;
    let v = classify(&above).map_err(err)?;
    check(v.is_gme(), format!("{} above p*", v.label()))?;
    verify_verdict(&v, &above).map_err(err)?;
    let elapsed = start.elapsed();
    check(elapsed < budget, format!("took {elapsed:?}"))?;
    Ok(format!("{family}: p* = {p}, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let g = builtin("C6");
    let (lower, upper, d) = c6_bounds().map_err(err)?;
    let at = white_noise(&g, &lower)?;
    let report = verify_decomposition(&d, &at);
    check(report.is_valid(), format!("{:?}", report.problems))?;
    let v = classify(&at).map_err(err)?;
    check(v.is_biseparable(), format!("classify at 11/43 gave {}", v.label()))?;
    let above = white_noise(&g, &(&upper + delta()))?;
    let v = match is_ppt_mixture(&above, None).map_err(err)? {
        LpCertificate::Infeasible(f) => {
            let witness = dual_witness(&f, &g).map_err(err)?;
            let value = witness.evaluate(&above).map_err(err)?;
            Verdict::Gme { witness, value }
        }
        LpCertificate::Feasible(_) => return Err("LP feasible above 51/179".into()),
    };
    verify_verdict(&v, &above).map_err(err)?;
    Ok(format!("decomposition at {lower} verifies, witness detects {upper} + 1e-6"))
}

fn criterion_4() -> Outcome {
    let g = builtin("C4");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut gme = 0;
    for i in 0..C4_SAMPLES {
        let s = random_state(&mut rng, &g);
        let v = theorem3_check(&s).map_err(err)?;
        let lp = is_ppt_mixture(&s, None).map_err(err)?;
        check(v.is_gme() != lp.is_feasible(), format!("sample {i} disagrees: {:?}", s.weights()))?;
        gme += usize::from(v.is_gme());
    }
    Ok(format!("{C4_SAMPLES} states agree ({gme} GME)"))
}

fn one_bp_equals_all(g: &Graph, samples: usize, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let one_bp = g.one_bp_partitions();
    let mut feasible = 0;
    for i in 0..samples {
        let s = random_state(rng, g);
        let restricted = is_ppt_mixture(&s, Some(&one_bp)).map_err(err)?.is_feasible();
        let all = is_ppt_mixture(&s, None).map_err(err)?.is_feasible();
        check(restricted == all, format!("sample {i} differs: {:?}", s.weights()))?;
        feasible += usize::from(all);
    }
    Ok(feasible)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let y5 = one_bp_equals_all(&builtin("Y5"), Y5_SAMPLES, &mut rng)?;
    let y6 = one_bp_equals_all(&builtin("Y6"), Y6_SAMPLES, &mut rng)?;
    Ok(format!(
        "Y5 {Y5_SAMPLES} states ({y5} feasible), Y6 {Y6_SAMPLES} states ({y6} feasible)"
    ))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in ["C4", "GHZ4", "Y5", "C5", "R5"] {
        let r = oracle_crosscheck(&builtin(name), &OracleOptions::default()).map_err(err)?;
        for p in &r.partitions {
            check(p.invariants_hold, format!("{name} {}: invariants fail", p.partition))?;
            check(p.rank_matches(), format!("{name} {}: cut rank mismatch", p.partition))?;
        }
        check(r.is_consistent(DENSE_TOL), format!("{name}: deviation {:e}", r.max_deviation()))?;
        worst = worst.max(r.max_deviation());
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let graphs: Vec<Graph> = ["C4", "R4", "GHZ3", "GHZ4", "K4", "GHZ5", "Y5", "C5", "R5", "Y6", "C6"]
        .iter()
        .map(|n| builtin(n))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut counts = [0usize; 3];
    for i in 0..FUZZ_SAMPLES {
        let g = &graphs[i % graphs.len()];
        let s = random_state(&mut rng, g);
        let v = classify(&s).map_err(err)?;
        verify_verdict(&v, &s).map_err(|e| format!("sample {i} on {g}: {e}"))?;
        counts[match v {
            Verdict::Gme { .. } => 0,
            Verdict::Biseparable { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
        }] += 1;
    }
    Ok(format!(
        "{FUZZ_SAMPLES} verdicts re-verified ({} GME, {} biseparable, {} inconclusive)",
        counts[0], counts[1], counts[2]
    ))
}

fn criterion_8() -> Outcome {
    let s = counterexample_state();
    let m = Bipartition::parse(4, "AD|BC").map_err(err)?;
    let pt = dense::partial_transpose(&dense::state_to_dense(&s).map_err(err)?, &m).map_err(err)?;
    let eig = dense::min_eigenvalue(&pt).map_err(err)?;
    check(eig >= -DENSE_TOL, format!("dense min eigenvalue {eig}"))?;
    let t = TransferMatrix::new(s.graph(), &m).map_err(err)?;
    check(t.is_ppt(s.weights()).map_err(err)?, "transfer image has a negative entry")?;
    let v = theorem3_check(&s).map_err(err)?;
    check(v.is_biseparable(), format!("theorem3_check gave {}", v.label()))?;
    verify_verdict(&v, &s).map_err(err)?;
    Ok(format!("PPT across AD|BC (min eigenvalue {eig:.1e}) and biseparable"))
}

fn run(id: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|msg| {
        if elapsed < budget {
            Ok(msg)
        } else {
            Err(format!("{msg}; exceeded {budget:?}"))
        }
    });
    match &outcome {
        Ok(msg) => println!("criterion {id}: PASS [{elapsed:.2?}] {msg}"),
        Err(msg) => println!("criterion {id}: FAIL [{elapsed:.2?}] {msg}"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= run("1", secs(5), criterion_1);
    ok &= run("2", secs(90), || {
        let mut lines = Vec::new();
        for family in WhiteNoiseFamily::ALL {
            lines.push(criterion_2(family, secs(30))?);
        }
        Ok(lines.join("; "))
    });
    ok &= run("3", secs(60), criterion_3);
    ok &= run("4", secs(600), criterion_4);
    ok &= run("5", secs(900), criterion_5);
    ok &= run("6", secs(120), criterion_6);
    ok &= run("7", secs(600), criterion_7);
    ok &= run("8", secs(5), criterion_8);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
