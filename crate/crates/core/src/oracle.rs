//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here shares code with the Laurent inversion or the summation
//! kernels: reciprocals are expanded by hand in `1/theta` and the sums run
//! over every tuple explicitly.

use crate::carlitz::CarlitzContext;
use crate::ffield::{FfElem, FieldSpec};
use crate::laurent::LaurentSeries;
use crate::poly::Poly;
use crate::special::{monic_polynomials, Index};

/// `D_i` as the product of all monic polynomials of degree `i`.
pub fn carlitz_d_product(ctx: &CarlitzContext, i: u32) -> Poly {
    monic_polynomials(ctx, i as usize).fold(Poly::one(ctx.field()), |acc, a| acc.mul(&a))
}

/// Coefficients `b_m` of `1/den = sum_m b_m theta^{-deg - m}` for `m < terms`,
/// with `den` monic.
fn reciprocal_in_inverse_theta(den: &Poly, terms: usize) -> Vec<FfElem> {
    let f = den.field();
    let n = den.degree().expect("nonzero denominator");
    let c = den.coeffs();
    let mut b = vec![FfElem::ZERO; terms];
    if terms > 0 {
        b[0] = FfElem::ONE;
    }
    for k in 1..terms {
        let mut acc = FfElem::ZERO;
        for j in 1..=k.min(n) {
            acc = f.add(acc, f.mul(c[n - j], b[k - j]));
        }
        b[k] = f.neg(acc);
    }
    b
}

/// Adds `1/den` into `acc`, where `acc[e]` is the coefficient of `z^e`.
fn accumulate_reciprocal(field: &FieldSpec, q: u64, den: &Poly, acc: &mut [FfElem]) {
    let e = q as usize - 1;
    let n = den.degree().unwrap();
    let first = n * e;
    if first >= acc.len() {
        return;
    }
    let terms = (acc.len() - first).div_ceil(e);
    let minus_one = field.neg(FfElem::ONE);
    for (m, b) in reciprocal_in_inverse_theta(den, terms).into_iter().enumerate() {
        let k = n + m;
        let pos = k * e;
        if pos >= acc.len() {
            break;
        }
        // theta^{-k} = (-1)^k z^{k(q-1)}
        let b = if k % 2 == 1 { field.mul(b, minus_one) } else { b };
        acc[pos] = field.add(acc[pos], b);
    }
}

/// The partial MZV sum over every tuple of monic polynomials
/// `a_1, ..., a_d` with `max_deg >= deg a_1 > ... > deg a_d >= 0`,
/// modulo `O(z^prec)`. Requires `prec >= 0`.
pub fn mzv_brute_force(ctx: &CarlitzContext, s: &Index, max_deg: u32, prec: i64) -> LaurentSeries {
    let (f, q) = (ctx.field(), ctx.q());
    let d = s.depth();
    let len = prec.max(0) as usize;
    let mut acc = vec![FfElem::ZERO; len];
    let by_degree: Vec<Vec<Poly>> = (0..=max_deg as usize).map(|k| monic_polynomials(ctx, k).collect()).collect();
    let mut degrees = vec![0usize; d];
    fn rec(
        j: usize,
        upper: usize,
        degrees: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let d = degrees.len();
        if j == d {
            visit(degrees);
            return;
        }
        let lowest = d - 1 - j;
        for k in lowest..upper {
            degrees[j] = k;
            rec(j + 1, k, degrees, visit);
        }
    }
    let mut visit = |degs: &[usize]| {
        let mut choice = vec![0usize; d];
        loop {
            let den = (0..d).fold(Poly::one(f), |p, j| p.mul(&by_degree[degs[j]][choice[j]].pow(s.entries()[j])));
            accumulate_reciprocal(f, q, &den, &mut acc);
            // odometer over the tuple of polynomials
            let mut j = 0;
            loop {
                if j == d {
                    return;
                }
                choice[j] += 1;
                if choice[j] < by_degree[degs[j]].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
        }
    };
    rec(0, max_deg as usize + 1, &mut degrees, &mut visit);
    LaurentSeries::from_coeffs_to(f, q, 0, acc, prec)
}
