//! One PASS/FAIL/WARN line per acceptance criterion.
//!
//! A criterion is FAIL when a hard check fails or its time budget is exceeded, WARN when only
//! soft checks fail. The process exits 0 so the rest of the workspace tests still run; set
//! `ACCEPTANCE_STRICT=1` to exit 1 on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use galcov::kstar::{analysis, Engine};
use galcov::report::{Report, Status};
use galcov::verify::{self, Inputs, VerifyConfig};

type Job<'a> = Box<dyn Fn() -> Vec<Report> + 'a>;

struct Criterion<'a> {
    id: usize,
    name: &'static str,
    budget: Duration,
    job: Job<'a>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let inputs = Inputs::load(&cfg.assets).expect("bundled assets load");
    let en = Engine::standard();
    let (en, inputs, cfg) = (&en, &inputs, &cfg);

    let criteria: Vec<Criterion> = vec![
        Criterion {
            id: 1,
            name: "theta lattice invariants",
            budget: secs(1),
            job: Box::new(|| vec![verify::theta_report()]),
        },
        Criterion {
            id: 2,
            name: "K* abelianization",
            budget: secs(1),
            job: Box::new(move || vec![analysis::ab_report(en).unwrap()]),
        },
        Criterion {
            id: 3,
            name: "K* nilpotency class 3",
            budget: secs(10),
            job: Box::new(move || vec![analysis::lcs_report(en).unwrap()]),
        },
        Criterion {
            id: 4,
            name: "H structure",
            budget: secs(1),
            job: Box::new(move || vec![analysis::h_report(en).unwrap()]),
        },
        Criterion {
            id: 5,
            name: "center of K*",
            budget: secs(10),
            job: Box::new(move || {
                vec![analysis::center_report(en).unwrap(), analysis::centralizer_report(en).unwrap()]
            }),
        },
        Criterion {
            id: 6,
            name: "projective element properties",
            budget: secs(10),
            job: Box::new(move || vec![analysis::p_report(en).unwrap()]),
        },
        Criterion {
            id: 7,
            name: "projective word pipeline",
            budget: secs(10),
            job: Box::new(move || vec![verify::pipeline_report(en, inputs).unwrap()]),
        },
        Criterion {
            id: 8,
            name: "phi soundness",
            budget: secs(5),
            job: Box::new(move || vec![verify::phi_report(inputs).unwrap()]),
        },
        Criterion {
            id: 9,
            name: "torus data",
            budget: secs(1),
            job: Box::new(move || vec![galcov::graph::validate_torus_data(&inputs.data)]),
        },
        Criterion {
            id: 10,
            name: "simplifier soundness",
            budget: secs(30),
            job: Box::new(move || vec![verify::simplifier_report(cfg).unwrap()]),
        },
        Criterion {
            id: 11,
            name: "engine consistency",
            budget: secs(10),
            job: Box::new(move || vec![analysis::consistency_check(en, cfg.seed, cfg.random_triples).unwrap()]),
        },
    ];

    let mut fails = 0;
    for c in &criteria {
        let t = Instant::now();
        let reports = (c.job)();
        let elapsed = t.elapsed();
        let hard: Vec<&str> = reports
            .iter()
            .flat_map(|r| r.checks.iter())
            .filter(|k| k.status == Status::Fail)
            .map(|k| k.name.as_str())
            .collect();
        let soft: Vec<&str> = reports
            .iter()
            .flat_map(|r| r.checks.iter())
            .filter(|k| k.status == Status::Warn)
            .map(|k| k.name.as_str())
            .collect();
        let total: usize = reports.iter().map(|r| r.checks.len()).sum();
        let over = elapsed > c.budget;
        let status = if !hard.is_empty() || over {
            Status::Fail
        } else if !soft.is_empty() {
            Status::Warn
        } else {
            Status::Pass
        };
        if status == Status::Fail {
            fails += 1;
        }
        let mut line = format!(
            "{status} criterion {:>2} {}: {} checks, {:.2}s (budget {}s)",
            c.id,
            c.name,
            total,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        if over {
            line.push_str("; over budget");
        }
        if !hard.is_empty() {
            line.push_str(&format!("; failed: {}", hard.join(", ")));
        }
        if !soft.is_empty() {
            line.push_str(&format!("; warned: {}", soft.join(", ")));
        }
        println!("{line}");
        if status == Status::Fail {
            for r in &reports {
                for k in r.checks.iter().filter(|k| k.status == Status::Fail) {
                    println!("    {}: claimed {}; computed {}", k.name, k.claimed, k.computed);
                }
                for n in &r.notes {
                    println!("    note: {n}");
                }
            }
        }
    }
    println!("acceptance: {} of {} criteria without FAIL", criteria.len() - fails, criteria.len());
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && fails > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
