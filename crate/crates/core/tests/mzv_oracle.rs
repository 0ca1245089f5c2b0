use std::time::Instant;

use fzeta_core::carlitz::CarlitzContext;
use fzeta_core::oracle::mzv_brute_force;
use fzeta_core::special::{monic_power_sum, mzv_direct, mzv_partial, Index, DEFAULT_BUDGET};

#[test]
fn partial_sums_match_enumeration() {
    let start = Instant::now();
    for (p, l) in [(2, 1), (3, 1)] {
        let ctx = CarlitzContext::new(p, l, 40, 4).unwrap();
        for idx in ["1", "2", "3", "1,1", "2,1", "1,2", "1,1,1", "2,1,1", "1,2,1"] {
            let s = Index::parse(idx).unwrap();
            for b in (s.depth() as u32 - 1)..=3 {
                let fast = mzv_partial(&ctx, &s, b, 40).unwrap().value;
                let slow = mzv_brute_force(&ctx, &s, b, 40);
                assert_eq!(fast, slow, "q={} s={idx} B={b}", ctx.q());
            }
        }
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn depth_one_leading_term() {
    let ctx = CarlitzContext::new(3, 1, 30, 4).unwrap();
    for s in 1..6 {
        let z = mzv_direct(&ctx, &Index::new(vec![s]).unwrap(), 30).unwrap().value;
        assert_eq!(z.valuation(), Some(0));
        assert_eq!(z.leading(), Some(ctx.field().one()));
    }
}

#[test]
fn zeta_one_from_power_sums() {
    // zeta(1) = S_0 + S_1 + S_2 + ... for q = 3
    let ctx = CarlitzContext::new(3, 1, 40, 4).unwrap();
    let z = mzv_direct(&ctx, &Index::parse("1").unwrap(), 40).unwrap().value;
    let mut sum = monic_power_sum(&ctx, 0, 1, 40, DEFAULT_BUDGET).unwrap();
    for d in 1..=3 {
        sum = sum.add(&monic_power_sum(&ctx, d, 1, 40, DEFAULT_BUDGET).unwrap());
    }
    assert!(z.eq_to_prec(&sum).is_equal());
}

#[test]
fn power_sum_order_independent() {
    let ctx = CarlitzContext::new(3, 1, 30, 4).unwrap();
    let forward = monic_power_sum(&ctx, 2, 2, 30, DEFAULT_BUDGET).unwrap();
    let mut terms: Vec<_> = fzeta_core::special::monic_polynomials(&ctx, 2)
        .map(|a| reciprocal(&ctx, &a.pow(2)))
        .collect();
    terms.reverse();
    let backward = terms.iter().fold(fzeta_core::laurent::LaurentSeries::zero_to(ctx.field(), 3, 30), |acc, t| acc.add(t));
    assert_eq!(forward, backward);
}

fn reciprocal(ctx: &CarlitzContext, den: &fzeta_core::poly::Poly) -> fzeta_core::laurent::LaurentSeries {
    fzeta_core::laurent::LaurentSeries::from_theta_rational(&fzeta_core::poly::Poly::one(ctx.field()), den, ctx.q(), 30).unwrap()
}
