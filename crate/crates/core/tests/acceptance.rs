//! Acceptance sweep: one PASS/FAIL line per criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use chromberge::arith::rank;
use chromberge::combinat::int_partitions;
use chromberge::invariants::redei_berge;
use chromberge::structures::{all_nuio, enumerate_posets_iso, nuio_functions};
use chromberge::verify::{run, Config, Report, Suite};
use chromberge::{Digraph, Exec};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn suite(s: Suite, n: usize) -> Result<Report, String> {
    run(s, &Config::new(n)).map_err(|e| format!("{s}: {e}"))
}

fn all_pass(reports: &[Report]) -> Verdict {
    let mut summary = Vec::new();
    for r in reports {
        if let Some(f) = r.failures().next() {
            return Err(format!("{}; first failure {} -- {}", r.summary(), f.instance, f.detail));
        }
        summary.push(r.summary());
    }
    Ok(summary.join(" | "))
}

fn omega_bridge() -> Verdict {
    all_pass(&[suite(Suite::OmegaBridge, 6)?])
}

fn ncsym_bridge() -> Verdict {
    all_pass(&[suite(Suite::NcsymBridge, 4)?])
}

fn p_expansion() -> Verdict {
    let r = suite(Suite::PExpansion, 4)?;
    if r.outcomes.len() != 4096 + 200 {
        return Err(format!("expected 4296 instances, got {}", r.outcomes.len()));
    }
    all_pass(&[r])
}

fn broken_cycle() -> Verdict {
    all_pass(&[suite(Suite::BrokenCycle, 5)?])
}

fn deletion_contraction() -> Verdict {
    all_pass(&[suite(Suite::DelConW, 4)?, suite(Suite::DelConY, 4)?])
}

fn antipodes() -> Verdict {
    all_pass(&[suite(Suite::PolynomialAntipode, 5)?])
}

fn parity() -> Verdict {
    all_pass(&[suite(Suite::ParityRedei, 6)?])
}

fn breakdown() -> Verdict {
    let r = suite(Suite::Breakdown, 5)?;
    for example in ["example D_2", "example D_3"] {
        if !r.outcomes.iter().any(|o| o.instance == example && o.ok) {
            return Err(format!("{example} missing or failing"));
        }
    }
    all_pass(&[r])
}

fn bag_corollaries() -> Verdict {
    all_pass(&[suite(Suite::BagCorollaries, 6)?])
}

fn positivity() -> Verdict {
    all_pass(&[suite(Suite::PositivityUio, 6)?])
}

/// Irreducible unit interval orders counted two ways: admissible functions, and
/// (3+1)-, (2+2)-free irreducible posets up to isomorphism; natural unit interval
/// orders filtered by irreducibility give a third count.
fn counting() -> Verdict {
    let mut seen = Vec::new();
    for n in 2..=7 {
        let functions = nuio_functions(n).len();
        let by_iso = enumerate_posets_iso(n, Exec::Parallel)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|p| p.is_free_3_1() && p.is_free_2_2() && p.is_irreducible())
            .count();
        let by_nuio = all_nuio(n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|p| p.is_irreducible())
            .count();
        if functions != by_iso || functions != by_nuio {
            return Err(format!("n={n}: {functions} functions, {by_iso} iso classes, {by_nuio} labeled"));
        }
        seen.push(format!("{n}:{functions}"));
    }
    Ok(format!("counts {}", seen.join(" ")))
}

fn independence() -> Verdict {
    let mut ranks = Vec::new();
    for n in 1..=6 {
        let lambdas = int_partitions(n);
        let rows: Vec<_> = lambdas
            .iter()
            .map(|l| redei_berge(&Digraph::bag_of_sticks(l)).dense_m())
            .collect();
        let r = rank(&rows);
        if r != lambdas.len() {
            return Err(format!("n={n}: rank {r} < {}", lambdas.len()));
        }
        ranks.push(format!("{n}:{r}"));
    }
    Ok(format!("full rank {}", ranks.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("X_inc(P) = ω(U_P), posets ≤ 6", omega_bridge),
        ("Y_inc(P) = ω(W_P), ρ(W)=U, ρ(Y)=X, posets ≤ 4", ncsym_bridge),
        ("cycle-census p-expansion = listing definition", p_expansion),
        ("broken-cycle expansion, 3 labelings, graphs ≤ 5", broken_cycle),
        ("deletion-contraction for W and Y, n ≤ 4", deletion_contraction),
        ("polynomial antipodes", antipodes),
        ("tournament and quasi-linear-extension parity", parity),
        ("linear breakdown reassembly and D_2, D_3", breakdown),
        ("bag-of-sticks corollaries", bag_corollaries),
        ("positivity of unit interval orders ≤ 6", positivity),
        ("irreducible unit interval order count, n = 2..7", counting),
        ("U_{P_λ} linearly independent, n ≤ 6", independence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
