//! The full verification matrix, run on a fixed-size worker pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use fzeta_core::special::{index_subclosure, Index, IndexSet};

use crate::checks;
use crate::config::RunConfig;
use crate::golden;
use crate::report::Check;

pub type Job = (String, Box<dyn Fn() -> Check + Send + Sync>);

/// Environment variable holding the worker count.
pub const WORKERS_VAR: &str = "FZETA_WORKERS";

pub fn worker_count() -> usize {
    std::env::var(WORKERS_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// All indices with weight `<= max_wt` and depth `<= max_dep`, by depth then lexicographically.
pub fn indices_up_to(max_wt: u64, max_dep: usize) -> Vec<Index> {
    fn rec(prefix: &mut Vec<u64>, left: u64, max_dep: usize, out: &mut Vec<Index>) {
        if !prefix.is_empty() {
            out.push(Index::new(prefix.clone()).expect("positive entries"));
        }
        if prefix.len() == max_dep {
            return;
        }
        for s in 1..=left {
            prefix.push(s);
            rec(prefix, left - s, max_dep, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_wt, max_dep, &mut out);
    out.sort_by(|a, b| a.depth().cmp(&b.depth()).then_with(|| a.cmp(b)));
    out
}

fn idx(s: &str) -> Index {
    Index::parse(s).expect("static index")
}

fn job(name: String, f: impl Fn() -> Check + Send + Sync + 'static) -> Job {
    (name, Box::new(f))
}

/// The verification matrix. `config.precision` and `config.tdeg`, when set,
/// replace the computation parameters; the required floors never change.
pub fn jobs(config: &RunConfig, fixtures: &golden::Source) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let three = [(2u64, 1u32), (3, 1), (2, 2)];
    let two = [(2u64, 1u32), (3, 1)];
    let prec = |d: i64| config.prec_or(d);
    let tdeg = |d: usize| config.tdeg_or(d);

    for (p, l) in three {
        for i in 0..=3 {
            jobs.push(job(format!("c01/{p}/{l}/{i}"), move || checks::carlitz_tower(p, l, i)));
        }
    }
    for (p, l) in three {
        let (pr, td) = (prec(60), tdeg(20));
        jobs.push(job(format!("c02/{p}/{l}"), move || checks::omega_functional(p, l, td, pr, 60)));
        jobs.push(job(format!("c02c/{p}/{l}"), move || checks::omega_control(p, l, td, pr)));
        let pr = prec(50);
        jobs.push(job(format!("c03/{p}/{l}"), move || checks::pi_tilde_two_path(p, l, pr, 50)));
    }
    let oracle_indices = ["1", "2", "3", "1,1", "1,2", "2,1", "2,2", "1,1,1", "1,2,1", "2,1,1"];
    for p in [2u64, 3] {
        for s in oracle_indices {
            let s = idx(s);
            let pr = prec(40);
            jobs.push(job(format!("c04/{p}/{}", s.to_text()), move || checks::mzv_oracle(p, &s, 3, pr)));
        }
    }
    for (p, l) in three {
        jobs.push(job(format!("c05a/{p}/{l}"), move || checks::at_polynomial_checks(p, l, 8)));
    }
    for (p, l) in two {
        for s in indices_up_to(6, 3) {
            let pr = prec(30);
            let name = format!("c05/{p}/{l}/{}", s.to_text());
            jobs.push(job(name, move || checks::period_identity(p, l, &s, pr, 30)));
        }
        for s in ["1", "2,1", "1,1,1", "3,2"] {
            let s = idx(s);
            let pr = prec(30);
            jobs.push(job(format!("c05c/{p}/{l}/{}", s.to_text()), move || checks::period_control(p, l, &s, pr, 30)));
        }
    }
    let motive_indices = ["1", "2", "1,1", "2,1", "1,2"];
    for (p, l) in two {
        for s in motive_indices {
            let s = idx(s);
            let (pr, td) = (prec(40), tdeg(10));
            let s2 = s.clone();
            jobs.push(job(format!("c06/{p}/{l}/{}", s.to_text()), move || checks::trivialization(p, l, &s, td, pr, 40)));
            jobs.push(job(format!("c06m/{p}/{l}/{}", s2.to_text()), move || checks::mutation(p, l, &s2, td, pr, 40)));
        }
    }
    for p in [2u64, 3] {
        for k in [2u32, 3] {
            let (pr, td) = (prec(40), tdeg(10));
            jobs.push(job(format!("c07/{p}/carlitz/{k}"), move || checks::derived(p, 1, None, k, td, pr, 40)));
            for s in ["1", "2,1"] {
                let s = idx(s);
                jobs.push(job(format!("c07/{p}/{}/{k}", s.to_text()), move || {
                    checks::derived(p, 1, Some(&s), k, td, pr, 40)
                }));
            }
        }
    }
    let seed = config.seed;
    jobs.push(job("c08/closure".into(), move || {
        let set = index_subclosure(&IndexSet::parse("1,2").unwrap());
        match checks::sample_field(3, 4) {
            Ok(f) => checks::group_closure(&set, 100, seed, &f),
            Err(e) => Check::error("group-closure", e),
        }
    }));
    jobs.push(job("c08/commutator".into(), move || {
        let set = index_subclosure(&IndexSet::parse("1,2").unwrap());
        match checks::sample_field(3, 4) {
            Ok(f) => checks::group_commutator(&set, &idx("1,2"), 100, seed.wrapping_add(1), &f),
            Err(e) => Check::error("group-commutator", e),
        }
    }));
    for (p, l) in two {
        for s in motive_indices {
            let n = idx(s).depth() + 1;
            for i in 1..=n {
                for j in 1..=i {
                    let s = idx(s);
                    let (pr, td) = (prec(40), tdeg(10));
                    jobs.push(job(format!("c09/{p}/{l}/{}/{i}/{j}", s.to_text()), move || {
                        checks::psi_tilde(p, l, &s, i, j, td, pr, 30)
                    }));
                }
            }
        }
    }
    jobs.extend(golden::checks(fixtures));
    jobs
}

/// Runs `jobs` on `workers` threads; output is sorted by check name, so it
/// does not depend on scheduling.
pub fn run_jobs(jobs: Vec<Job>, workers: usize, timings: bool) -> Vec<Check> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Check>> = Mutex::new(Vec::with_capacity(jobs.len()));
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(jobs.len().max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some((_, f)) = jobs.get(k) else { break };
                let start = Instant::now();
                let mut check = f();
                if timings {
                    check.runtime_ms = Some(start.elapsed().as_millis() as u64);
                }
                results.lock().expect("no worker panicked").push(check);
            });
        }
    });
    let mut out = results.into_inner().expect("no worker panicked");
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
