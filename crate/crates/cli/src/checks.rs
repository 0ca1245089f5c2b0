//! Individual verification checks. Each builder returns one [`Check`].

use fzeta_core::carlitz::CarlitzContext;
use fzeta_core::ffield::FieldSpec;
use fzeta_core::laurent::{Comparison, LaurentSeries};
use fzeta_core::motive::{
    block_closure_check, block_commutator_check, derived_product, frobenius_residual, mutation_test, phi_build,
    phi_carlitz, psi_build, psi_carlitz, psi_tilde_component, MotiveMatrix,
};
use fzeta_core::oracle::{carlitz_d_product, mzv_brute_force};
use fzeta_core::poly::BiPoly;
use fzeta_core::special::{
    at_polynomials, mzv_partial, verify_period_identity, verify_period_identity_with, CmplSpec, Index, IndexSet,
};
use fzeta_core::tate::ZeroCheck;

use crate::report::{fmt_floor, Check, Status};

pub fn tag(p: u64, l: u32) -> String {
    format!("p{p}l{l}")
}

fn context(p: u64, l: u32, prec: i64, tdeg: usize) -> fzeta_core::Result<CarlitzContext> {
    CarlitzContext::new(p, l, prec, tdeg)
}

/// `D_i` from the recursion against the product of all monic polynomials of degree `i`.
pub fn carlitz_tower(p: u64, l: u32, i: u32) -> Check {
    let name = format!("carlitz-tower/{}/i{i}", tag(p, l));
    let ctx = match context(p, l, 1, 1) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    let ok = ctx.carlitz_d(i) == carlitz_d_product(&ctx, i);
    let deg = ctx.carlitz_d(i).degree().unwrap_or(0);
    Check::from_bool(name, ok, format!("D_{i} has degree {deg}; recursion {} product", if ok { "equals" } else { "differs from" }))
}

/// `Omega = (t - theta^q) Omega^{(l)}` to the floor `required`.
pub fn omega_functional(p: u64, l: u32, tdeg: usize, prec: i64, required: i64) -> Check {
    let name = format!("omega-functional/{}", tag(p, l));
    let ctx = match context(p, l, prec, tdeg) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    let om = ctx.omega_series(None, tdeg, prec);
    let r = ctx.omega_functional_residual(&om, required);
    if r.passed {
        Check::new(name, Status::Pass, format!("residual vanishes to floor {} (tdeg {tdeg})", fmt_floor(r.floor)))
    } else if r.is_failure() {
        Check::new(name, Status::Fail, format!("residual nonzero: {:?} {:?}", r.witness, r.precheck))
    } else {
        Check::new(
            name,
            Status::Incomparable,
            format!("incomparable precision: floor {} below required {required}", fmt_floor(r.floor)),
        )
    }
}

/// The product with factor 1 left out must be rejected.
pub fn omega_control(p: u64, l: u32, tdeg: usize, prec: i64) -> Check {
    let name = format!("omega-control/{}", tag(p, l));
    let ctx = match context(p, l, prec, tdeg) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    let bad = ctx.omega_series_dropping(1, tdeg, prec);
    let r = ctx.omega_functional_residual(&bad, prec);
    match r.witness {
        Some((k, v)) => Check::new(name, Status::Pass, format!("dropped factor detected at t^{k} z^{v}")),
        None if r.passed => Check::new(name, Status::Fail, "dropped factor not detected"),
        None => Check::new(name, Status::Incomparable, "incomparable precision: control not decidable"),
    }
}

/// `pi~ (product formula) * Omega(theta)` against 1.
pub fn pi_tilde_two_path(p: u64, l: u32, prec: i64, required: i64) -> Check {
    let name = format!("pitilde-two-path/{}", tag(p, l));
    let ctx = match context(p, l, prec, 1) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    let q = ctx.q();
    let omega = match ctx.omega_value(prec + q as i64) {
        Ok(v) => v,
        Err(e) => return Check::error(name, e),
    };
    let prod = ctx.pi_tilde(prec).mul(&omega);
    let one = LaurentSeries::one(ctx.field(), q);
    let cmp = prod.compare_with_floor(&one, Some(prec));
    let mut check = Check::from_comparison(name, &cmp, required);
    if check.status == Status::Fail {
        let minus_one = one.neg();
        if prod.compare_with_floor(&minus_one, Some(prec)).is_equal() {
            check.detail = format!(
                "product is -1 to O(z^{}), not 1: theta (-theta)^(1/(q-1)) (-theta)^(-q/(q-1)) = -1 in odd characteristic",
                prod.precision().unwrap_or(prec)
            );
        }
    }
    check
}

/// DP partial sums against exhaustive tuple enumeration, for every bound up to `max_deg`.
pub fn mzv_oracle(p: u64, s: &Index, max_deg: u32, prec: i64) -> Check {
    let name = format!("mzv-oracle/{}/s{}", tag(p, 1), s.to_text());
    let ctx = match context(p, 1, prec, 1) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    for b in (s.depth() as u32 - 1)..=max_deg {
        let fast = match mzv_partial(&ctx, s, b, prec) {
            Ok(v) => v.value,
            Err(e) => return Check::error(name, e),
        };
        let slow = mzv_brute_force(&ctx, s, b, prec);
        if fast != slow {
            let at = match fast.eq_to_prec(&slow) {
                Comparison::Unequal { exponent } => format!("z^{exponent}"),
                c => format!("{c:?}"),
            };
            return Check::new(name, Status::Fail, format!("partial sum with deg a_1 <= {b} differs at {at}"));
        }
    }
    Check::new(name, Status::Pass, format!("exact agreement for deg a_1 <= {max_deg} to O(z^{prec})"))
}

pub fn period_identity(p: u64, l: u32, s: &Index, prec: i64, required: i64) -> Check {
    let name = format!("period/{}/s{}", tag(p, l), s.to_text());
    let ctx = match context(p, l, prec, 1) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    match verify_period_identity(&ctx, s, prec) {
        Ok(r) => Check::from_comparison(name, &r.comparison, required),
        Err(e) => Check::error(name, e),
    }
}

/// Perturbs the first argument by 1; the identity must break at a located exponent.
pub fn period_control(p: u64, l: u32, s: &Index, prec: i64, required: i64) -> Check {
    let name = format!("period-control/{}/s{}", tag(p, l), s.to_text());
    let ctx = match context(p, l, prec, 1) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    let mut spec = match CmplSpec::anderson_thakur(&ctx, s) {
        Ok(x) => x,
        Err(e) => return Check::error(name, e),
    };
    spec.u[0] = spec.u[0].add(&BiPoly::one(ctx.field()));
    // Deep indices have tiny values; the perturbation may sit past `prec`,
    // so widen the window a few times before declaring it undetected.
    let mut at = prec;
    loop {
        let r = match verify_period_identity_with(&ctx, &spec, at) {
            Ok(r) => r,
            Err(e) => return Check::error(name, e),
        };
        if !matches!(r.comparison, Comparison::Equal { .. }) || at >= 4 * prec {
            return Check::control_from_comparison(name, &r.comparison, required);
        }
        at *= 2;
    }
}

/// `H_s = 1` for `s < q`, plus the norm bound needed for convergence.
pub fn at_polynomial_checks(p: u64, l: u32, s_max: usize) -> Check {
    let name = format!("atpoly/{}/s{s_max}", tag(p, l));
    let ctx = match context(p, l, 1, 1) {
        Ok(c) => c,
        Err(e) => return Check::error(name, e),
    };
    let h = match at_polynomials(&ctx, s_max) {
        Ok(h) => h,
        Err(e) => return Check::error(name, e),
    };
    let q = ctx.q() as usize;
    if let Some(s) = (0..q.min(s_max + 1)).find(|&s| h[s] != BiPoly::one(ctx.field())) {
        return Check::new(name, Status::Fail, format!("H_{s} is not 1"));
    }
    for (s, hs) in h.iter().enumerate() {
        let deg = hs.degree_theta().unwrap_or(0);
        if (q - 1) * deg >= (s + 1) * q {
            return Check::new(name, Status::Fail, format!("H_{s} has theta-degree {deg}, too large for convergence"));
        }
    }
    Check::new(name, Status::Pass, format!("H_0..H_{s_max} integral; H_s = 1 for s < {q}; norm bounds hold"))
}

pub fn at_motive(ctx: &CarlitzContext, s: &Index, tdeg: usize, prec: i64) -> fzeta_core::Result<(MotiveMatrix, MotiveMatrix)> {
    let u = CmplSpec::anderson_thakur(ctx, s)?.u;
    Ok((phi_build(ctx, &u, s)?, psi_build(ctx, &u, s, tdeg, prec)?))
}

/// `Psi = Phi^{(l)} Psi^{(l)}` for the Anderson–Thakur motive of `s`.
pub fn trivialization(p: u64, l: u32, s: &Index, tdeg: usize, prec: i64, required: i64) -> Check {
    let name = format!("trivialization/{}/s{}", tag(p, l), s.to_text());
    let run = || -> fzeta_core::Result<Check> {
        let ctx = context(p, l, prec, tdeg)?;
        let (phi, psi) = at_motive(&ctx, s, tdeg, prec)?;
        Ok(Check::from_residual(name.clone(), &frobenius_residual(&phi, &psi, required)?))
    };
    run().unwrap_or_else(|e| Check::error(name.clone(), e))
}

/// Every single-entry mutant of `Phi^{(l)}` and `Psi` must be rejected.
pub fn mutation(p: u64, l: u32, s: &Index, tdeg: usize, prec: i64, required: i64) -> Check {
    let name = format!("mutation/{}/s{}", tag(p, l), s.to_text());
    let run = || -> fzeta_core::Result<Check> {
        let ctx = context(p, l, prec, tdeg)?;
        let (phi, psi) = at_motive(&ctx, s, tdeg, prec)?;
        let m = mutation_test(&phi, &psi, required)?;
        let detail = format!("{}/{} mutants killed", m.killed(), m.total());
        let status = if m.killed() == m.total() {
            Status::Pass
        } else if frobenius_residual(&phi, &psi, required)?.passed() {
            Status::Fail
        } else {
            Status::Incomparable
        };
        Ok(Check::new(name.clone(), status, detail))
    };
    run().unwrap_or_else(|e| Check::error(name.clone(), e))
}

/// The same `Psi` against the `k`-th derived product. `s = None` uses the Carlitz motive.
pub fn derived(p: u64, l: u32, s: Option<&Index>, k: u32, tdeg: usize, prec: i64, required: i64) -> Check {
    let label = s.map_or("carlitz".to_string(), |s| format!("s{}", s.to_text()));
    let name = format!("derived/{}/{label}/x{k}", tag(p, l));
    let run = || -> fzeta_core::Result<Check> {
        let ctx = context(p, l, prec, tdeg)?;
        let (phi, psi) = match s {
            Some(s) => at_motive(&ctx, s, tdeg, prec)?,
            None => (phi_carlitz(&ctx), psi_carlitz(&ctx, tdeg, prec)),
        };
        let d = derived_product(&phi, k)?;
        Ok(Check::from_residual(name.clone(), &frobenius_residual(&d, &psi, required)?))
    };
    run().unwrap_or_else(|e| Check::error(name.clone(), e))
}

#[allow(clippy::too_many_arguments)]
pub fn psi_tilde(p: u64, l: u32, s: &Index, i: usize, j: usize, tdeg: usize, prec: i64, required: i64) -> Check {
    let name = format!("psi-tilde/{}/s{}/{i}-{j}", tag(p, l), s.to_text());
    let run = || -> fzeta_core::Result<Check> {
        let ctx = context(p, l, prec, tdeg)?;
        let r = psi_tilde_component(&ctx, s, i, j, tdeg, prec)?;
        if let Some(z) = &r.zero_check {
            return Ok(match z {
                ZeroCheck::Zero { floor } if floor.is_none_or(|f| f >= required) => {
                    Check::new(name.clone(), Status::Pass, format!("alternating sum vanishes to {}", fmt_floor(*floor)))
                }
                ZeroCheck::Zero { floor } => Check::new(
                    name.clone(),
                    Status::Incomparable,
                    format!("incomparable precision: vanishes to {} only", fmt_floor(*floor)),
                ),
                ZeroCheck::Nonzero { t_degree, z_exponent } => Check::new(
                    name.clone(),
                    Status::Fail,
                    format!("alternating sum nonzero at t^{t_degree} z^{z_exponent}"),
                ),
            });
        }
        Ok(Check::from_comparison(name.clone(), r.diagonal.as_ref().unwrap(), required))
    };
    run().unwrap_or_else(|e| Check::error(name.clone(), e))
}

pub fn sample_field(p: u64, degree: u32) -> fzeta_core::Result<FieldSpec> {
    FieldSpec::new(p, degree)
}

pub fn group_closure(set: &IndexSet, samples: usize, seed: u64, field: &FieldSpec) -> Check {
    let name = format!("group-closure/F{}^{}/I{}", field.p(), field.m(), set.to_text());
    match block_closure_check(set, samples, seed, field) {
        Ok(r) => {
            let detail = format!(
                "{} pairs: {} product, {} inverse, {} round-trip failures; degree bound {} vs field order {}",
                r.samples,
                r.product_failures.len(),
                r.inverse_failures.len(),
                r.roundtrip_failures.len(),
                r.degree_bound,
                r.field_order
            );
            let ok = r.passed() && r.samples as u64 > r.degree_bound;
            Check::from_bool(name, ok, detail)
        }
        Err(e) => Check::error(name, e),
    }
}

pub fn group_commutator(set: &IndexSet, target: &Index, samples: usize, seed: u64, field: &FieldSpec) -> Check {
    let name = format!("group-commutator/F{}^{}/I{}/s{}", field.p(), field.m(), set.to_text(), target.to_text());
    match block_commutator_check(set, target, samples, seed, field) {
        Ok(r) => {
            let detail = format!(
                "{} samples: x -> alpha b^{w} fails {}, x -> alpha (1 - b^-{w}) fails {}; degree bound {}",
                r.samples,
                r.conjugation_failures.len(),
                r.commutator_failures.len(),
                r.degree_bound,
                w = r.weight
            );
            let ok = r.passed() && r.samples as u64 > r.degree_bound;
            Check::from_bool(name, ok, detail)
        }
        Err(e) => Check::error(name, e),
    }
}
