use fzeta_core::carlitz::CarlitzContext;
use fzeta_core::ffield::FieldSpec;
use fzeta_core::motive::{
    block_closure_check, block_commutator_check, derived_product, direct_sum, frobenius_residual, mutation_test,
    phi_build, psi_build, psi_tilde_component,
};
use fzeta_core::poly::BiPoly;
use fzeta_core::special::{index_subclosure, CmplSpec, Index, IndexSet};
use fzeta_core::tate::TateElement;

fn motive(ctx: &CarlitzContext, idx: &str, tdeg: usize, prec: i64) -> (fzeta_core::motive::MotiveMatrix, fzeta_core::motive::MotiveMatrix) {
    let s = Index::parse(idx).unwrap();
    let u = CmplSpec::anderson_thakur(ctx, &s).unwrap().u;
    (phi_build(ctx, &u, &s).unwrap(), psi_build(ctx, &u, &s, tdeg, prec).unwrap())
}

#[test]
fn trivializations_and_mutants() {
    for (p, l) in [(2, 1), (3, 1)] {
        let ctx = CarlitzContext::new(p, l, 40, 10).unwrap();
        for idx in ["1", "2", "1,1", "2,1", "1,2"] {
            let (phi, psi) = motive(&ctx, idx, 10, 40);
            let r = frobenius_residual(&phi, &psi, 40).unwrap();
            assert!(r.passed(), "q={} s={idx}: floor {:?} witness {:?}", ctx.q(), r.floor, r.witness());
            let m = mutation_test(&phi, &psi, 40).unwrap();
            assert_eq!(m.killed(), m.total(), "q={} s={idx}: {:?}", ctx.q(), m);
        }
    }
}

#[test]
fn zeroed_entry_is_located() {
    let ctx = CarlitzContext::new(3, 1, 40, 10).unwrap();
    let (phi, psi) = motive(&ctx, "1,2", 10, 40);
    let bad = psi.with_psi_entry(2, 1, TateElement::zero(ctx.field(), 3)).unwrap();
    let r = frobenius_residual(&phi, &bad, 40).unwrap();
    assert!(!r.passed());
    let (row, col, _, _) = r.witness().unwrap();
    assert_eq!(col, 1);
    assert!(row >= 2);
}

#[test]
fn derived_motives_share_psi() {
    let ctx = CarlitzContext::new(2, 1, 40, 10).unwrap();
    for idx in ["1", "2,1"] {
        let (phi, psi) = motive(&ctx, idx, 10, 40);
        for s in [2, 3] {
            let d = derived_product(&phi, s).unwrap();
            assert_eq!(d.level(), s);
            let r = frobenius_residual(&d, &psi, 40).unwrap();
            assert!(r.passed(), "s={idx} derived {s}: {:?}", r.witness());
        }
    }
}

#[test]
fn direct_sums_distribute() {
    let ctx = CarlitzContext::new(3, 1, 40, 8).unwrap();
    let (p1, s1) = motive(&ctx, "1", 8, 40);
    let (p2, s2) = motive(&ctx, "2", 8, 40);
    let (p3, s3) = motive(&ctx, "1,2", 8, 40);
    let phi = direct_sum(&direct_sum(&p1, &p2).unwrap(), &p3).unwrap();
    let psi = direct_sum(&direct_sum(&s1, &s2).unwrap(), &s3).unwrap();
    assert_eq!(phi.size(), 7);
    assert!(frobenius_residual(&phi, &psi, 40).unwrap().passed());
    // failing block makes the sum fail
    let bad = s2.with_psi_entry(1, 0, TateElement::zero(ctx.field(), 3)).unwrap();
    let psi_bad = direct_sum(&s1, &bad).unwrap();
    assert!(!frobenius_residual(&direct_sum(&p1, &p2).unwrap(), &psi_bad, 40).unwrap().passed());
    assert!(direct_sum(&p1, &s1).is_err());
    let one = phi_build(&ctx, &[BiPoly::zero(ctx.field())], &Index::parse("1").unwrap()).unwrap();
    assert_eq!(direct_sum(&one, &one).unwrap().size(), 4);
}

#[test]
fn psi_tilde_telescopes() {
    for (p, l) in [(2, 1), (3, 1)] {
        let ctx = CarlitzContext::new(p, l, 30, 10).unwrap();
        for idx in ["1", "2", "1,1", "2,1", "1,2"] {
            let s = Index::parse(idx).unwrap();
            let n = s.depth() + 1;
            for i in 1..=n {
                for j in 1..=i {
                    let r = psi_tilde_component(&ctx, &s, i, j, 10, 30).unwrap();
                    assert!(r.passed(), "q={} s={idx} ({i},{j}): {r:?}", ctx.q());
                }
            }
        }
    }
}

#[test]
fn block_group_over_f81() {
    let f = FieldSpec::new(3, 4).unwrap();
    let set = index_subclosure(&IndexSet::parse("1,2").unwrap());
    let c = block_closure_check(&set, 100, 17, &f).unwrap();
    assert!(c.passed(), "{c:?}");
    assert!(c.samples as u64 > c.degree_bound);
    let target = Index::parse("1,2").unwrap();
    let r = block_commutator_check(&set, &target, 100, 18, &f).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.weight, 3);
    let two = index_subclosure(&IndexSet::parse("2,5").unwrap());
    assert_eq!(two.to_text(), "2;5;2,5");
    assert!(block_commutator_check(&two, &Index::parse("2,5").unwrap(), 50, 1, &f).unwrap().passed());
    assert!(block_commutator_check(&two, &Index::parse("2").unwrap(), 50, 1, &f).is_err());
}
