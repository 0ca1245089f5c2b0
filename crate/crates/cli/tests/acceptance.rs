//! The acceptance matrix, one line per criterion.
//!
//! Runs without the libtest harness so the summary lines always print.
//! Criteria run in order; the process fails if any assertion does.

use std::process::Command;
use std::time::Instant;

use fzeta_cli::checks;
use fzeta_cli::report::{Check, Status};
use fzeta_cli::suite::indices_up_to;
use fzeta_core::special::{index_subclosure, Index, IndexSet};

const THREE: [(u64, u32); 3] = [(2, 1), (3, 1), (2, 2)];
const TWO: [(u64, u32); 2] = [(2, 1), (3, 1)];

fn idx(s: &str) -> Index {
    Index::parse(s).unwrap()
}

fn line(n: u32, title: &str, ok: bool, detail: &str) {
    println!("criterion {n:>2} {} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn failures(checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{} [{}] {}", c.name, c.status.label(), c.detail))
        .collect()
}

fn all_pass(n: u32, title: &str, checks: &[Check], extra: &str) -> bool {
    let bad = failures(checks);
    let ok = bad.is_empty();
    let detail = if ok { format!("{} checks{extra}", checks.len()) } else { bad.join("; ") };
    line(n, title, ok, &detail);
    ok
}

fn criterion_01_carlitz_tower() {
    let start = Instant::now();
    let cs: Vec<Check> = THREE
        .iter()
        .flat_map(|&(p, l)| (0..=3).map(move |i| checks::carlitz_tower(p, l, i)))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let ok = all_pass(1, "Carlitz tower against brute-force products", &cs, &format!(", {secs:.3} s"));
    assert!(ok && secs < 1.0);
}

fn criterion_02_omega_functional_equation() {
    let mut cs = Vec::new();
    for (p, l) in THREE {
        cs.push(checks::omega_functional(p, l, 20, 60, 60));
        cs.push(checks::omega_control(p, l, 20, 60));
    }
    assert!(all_pass(2, "Omega functional equation (prec 60, tdeg 20) with dropped-factor controls", &cs, ""));
}

/// The product formula for the period and `Omega(theta)` multiply to
/// `theta * (-theta)^(1/(q-1)) * (-theta)^(-q/(q-1)) = -1`, whatever root is
/// fixed. The target value 1 is therefore reachable only in characteristic 2;
/// for odd `p` the criterion fails and the test pins down the reason instead.
fn criterion_03_pi_tilde_two_path() {
    let cs: Vec<Check> = THREE.iter().map(|&(p, l)| checks::pi_tilde_two_path(p, l, 50, 50)).collect();
    let ok = cs.iter().all(|c| c.status == Status::Pass);
    let detail = if ok {
        "product is 1 to O(z^50) for all configurations".to_string()
    } else {
        failures(&cs).join("; ")
    };
    line(3, "pi~ (product formula) * Omega(theta) = 1", ok, &detail);

    for (c, &(p, _)) in cs.iter().zip(THREE.iter()) {
        if p == 2 {
            assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.detail);
        } else {
            assert_eq!(c.status, Status::Fail, "{}: {}", c.name, c.detail);
            assert!(c.detail.contains("product is -1 to O(z^50)"), "{}", c.detail);
        }
    }
}

fn criterion_04_mzv_brute_force() {
    let start = Instant::now();
    let mut cs = Vec::new();
    for p in [2u64, 3] {
        for s in indices_up_to(5, 3) {
            cs.push(checks::mzv_oracle(p, &s, 3, 40));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = all_pass(4, "MZV partial sums against tuple enumeration (deg <= 3)", &cs, &format!(", {secs:.2} s"));
    assert!(ok && secs < 10.0);
}

fn criterion_05_period_identity() {
    let mut cs = Vec::new();
    for (p, l) in TWO {
        cs.push(checks::at_polynomial_checks(p, l, 8));
        for s in indices_up_to(6, 3) {
            cs.push(checks::period_identity(p, l, &s, 30, 30));
            cs.push(checks::period_control(p, l, &s, 30, 30));
        }
    }
    let controls_located = cs
        .iter()
        .filter(|c| c.name.starts_with("period-control"))
        .all(|c| c.detail.contains("detected at z^"));
    let ok = all_pass(5, "Li(H) = Gamma zeta to O(z^30), wt <= 6, dep <= 3, perturbations located", &cs, "");
    assert!(ok && controls_located);
}

fn criterion_06_rigid_analytic_trivialization() {
    let mut cs = Vec::new();
    for (p, l) in TWO {
        for s in ["1", "2", "1,1", "2,1", "1,2"] {
            let s = idx(s);
            cs.push(checks::trivialization(p, l, &s, 10, 40, 40));
            cs.push(checks::mutation(p, l, &s, 10, 40, 40));
        }
    }
    let ok = all_pass(6, "Psi = Phi^(l) Psi^(l) at prec 40, all single-entry mutants killed", &cs, "");
    assert!(ok);
}

fn criterion_07_derived_motives() {
    let mut cs = Vec::new();
    for p in [2u64, 3] {
        for k in [2u32, 3] {
            cs.push(checks::derived(p, 1, None, k, 10, 40, 40));
            for s in ["1", "2,1", "1,2"] {
                cs.push(checks::derived(p, 1, Some(&idx(s)), k, 10, 40, 40));
            }
        }
    }
    assert!(all_pass(7, "same Psi for the 2nd and 3rd derived motives", &cs, ""));
}

fn criterion_08_block_group() {
    let set = index_subclosure(&IndexSet::parse("1,2").unwrap());
    let field = checks::sample_field(3, 4).unwrap();
    let cs = vec![
        checks::group_closure(&set, 100, 7, &field),
        checks::group_commutator(&set, &idx("1,2"), 100, 8, &field),
    ];
    let detail: Vec<String> = cs.iter().map(|c| c.detail.clone()).collect();
    let ok = all_pass(8, "block group closure and commutator over F_3^4", &cs, &format!(" ({})", detail.join("; ")));
    assert!(ok);
}

fn criterion_09_psi_tilde_telescoping() {
    let mut cs = Vec::new();
    for (p, l) in TWO {
        for s in ["1", "2", "1,1", "2,1", "1,2", "3,1"] {
            let n = idx(s).depth() + 1;
            for i in 2..=n {
                for j in 1..i {
                    cs.push(checks::psi_tilde(p, l, &idx(s), i, j, 10, 40, 30));
                }
            }
        }
    }
    assert!(all_pass(9, "collapsed alternating sums vanish to O(z^30) for i > j", &cs, ""));
}

fn suite_output(workers: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fzeta"))
        .arg("suite")
        .env("FZETA_WORKERS", workers)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10_determinism() {
    let (c1, a) = suite_output("4");
    let (c2, b) = suite_output("4");
    let (c3, c) = suite_output("1");
    let ok = !a.is_empty() && a == b && b == c && c1 == c2 && c2 == c3;
    line(
        10,
        "suite output byte-identical across runs and 1 vs 4 workers",
        ok,
        &format!("{} bytes, exit code {c1}", a.len()),
    );
    assert!(ok);
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("criterion_01_carlitz_tower", criterion_01_carlitz_tower),
        ("criterion_02_omega_functional_equation", criterion_02_omega_functional_equation),
        ("criterion_03_pi_tilde_two_path", criterion_03_pi_tilde_two_path),
        ("criterion_04_mzv_brute_force", criterion_04_mzv_brute_force),
        ("criterion_05_period_identity", criterion_05_period_identity),
        ("criterion_06_rigid_analytic_trivialization", criterion_06_rigid_analytic_trivialization),
        ("criterion_07_derived_motives", criterion_07_derived_motives),
        ("criterion_08_block_group", criterion_08_block_group),
        ("criterion_09_psi_tilde_telescoping", criterion_09_psi_tilde_telescoping),
        ("criterion_10_determinism", criterion_10_determinism),
    ];
    let mut broken = Vec::new();
    for (name, f) in criteria {
        if std::panic::catch_unwind(f).is_err() {
            broken.push(name);
        }
    }
    if !broken.is_empty() {
        eprintln!("acceptance assertions failed: {}", broken.join(", "));
        std::process::exit(1);
    }
    println!("acceptance: all assertions hold");
}
