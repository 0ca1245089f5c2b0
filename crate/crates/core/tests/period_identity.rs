use fzeta_core::carlitz::CarlitzContext;
use fzeta_core::laurent::Comparison;
use fzeta_core::special::{verify_period_identity, Index};

fn indices(max_wt: u64, max_dep: usize) -> Vec<Index> {
    fn rec(prefix: &mut Vec<u64>, left: u64, max_dep: usize, out: &mut Vec<Index>) {
        if !prefix.is_empty() {
            out.push(Index::new(prefix.clone()).unwrap());
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
    out
}

#[test]
fn all_small_indices() {
    for (p, l) in [(2, 1), (3, 1), (2, 2)] {
        let ctx = CarlitzContext::new(p, l, 30, 10).unwrap();
        for s in indices(6, 3) {
            let r = verify_period_identity(&ctx, &s, 30).unwrap();
            match r.comparison {
                Comparison::Equal { precision: Some(n) } if n >= 30 => {}
                other => panic!("p={p} l={l} s={s}: {other:?}"),
            }
        }
    }
}
