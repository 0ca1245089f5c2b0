//! Truncated power series in `t` with Laurent-series coefficients, a model
//! of the Tate algebra.
//!
//! An element stores `c_0, ..., c_D` and a [`Tail`] describing what is known
//! about the coefficients it does not store. A linear certificate
//! `v_z(c_k) >= slope * k + offset` covers every `k`, stored or not.
//!
//! Builders in this crate use a *weighted* precision convention: a target
//! `P` means coefficient `c_k` is known modulo `O(z^{P + (q-1) k})`, which is
//! exactly what evaluation at `t = theta` (multiplication by
//! `theta^k = -z^{-(q-1)k}`) turns into `O(z^P)`.

use std::cmp::min;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::ffield::{FfElem, FieldSpec};
use crate::laurent::{Comparison, LaurentSeries, INF};
use crate::poly::BiPoly;

/// What is known about the coefficients beyond the stored ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// Every coefficient past `D` is exactly zero.
    Zero,
    /// `v_z(c_k) >= slope * k + offset` for all `k`.
    Linear { slope: i64, offset: i64 },
    Unknown,
}

#[derive(Clone)]
pub struct TateElement {
    field: FieldSpec,
    q: u64,
    coeffs: Vec<LaurentSeries>,
    tail: Tail,
}

/// Sup-norm over the stored coefficients, as an exponent of `|theta|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussNorm {
    /// `None` when every stored coefficient is zero to its precision.
    pub exponent: Option<Ratio<i64>>,
    /// Set when the certified tail bound does not rule out a larger coefficient.
    pub tail_may_dominate: bool,
}

/// Result of checking that an element vanishes on its known range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroCheck {
    /// Every stored coefficient is zero to its precision; `floor` is the least
    /// weighted precision `prec(c_k) - (q-1)k` (`None` if all exact).
    Zero { floor: Option<i64> },
    /// First nonzero coefficient found.
    Nonzero { t_degree: usize, z_exponent: i64 },
}

impl fmt::Debug for TateElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Binomial coefficient modulo `p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..kd {
            c = c * ((nd - i) % p) % p;
        }
        let mut den = 1u64;
        for i in 1..=kd {
            den = den * (i % p) % p;
        }
        c = c * inv_mod(den, p) % p;
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl TateElement {
    pub fn new(field: &FieldSpec, q: u64, coeffs: Vec<LaurentSeries>, tail: Tail) -> Self {
        assert!(!coeffs.is_empty(), "a Tate element stores at least c_0");
        TateElement { field: field.clone(), q, coeffs, tail }
    }

    pub fn zero(field: &FieldSpec, q: u64) -> Self {
        Self::new(field, q, vec![LaurentSeries::zero(field, q)], Tail::Zero)
    }

    pub fn one(field: &FieldSpec, q: u64) -> Self {
        Self::constant(LaurentSeries::one(field, q))
    }

    pub fn constant(c: LaurentSeries) -> Self {
        let (f, q) = (c.field().clone(), c.q());
        Self::new(&f, q, vec![c], Tail::Zero)
    }

    /// `t`
    pub fn t(field: &FieldSpec, q: u64) -> Self {
        Self::new(field, q, vec![LaurentSeries::zero(field, q), LaurentSeries::one(field, q)], Tail::Zero)
    }

    /// Exact image of a polynomial in `t` and `theta`.
    pub fn from_bipoly(b: &BiPoly, q: u64) -> Self {
        let f = b.field();
        if b.is_zero() {
            return Self::zero(f, q);
        }
        let coeffs = b.coeffs().iter().map(|p| LaurentSeries::from_theta_poly(p, q)).collect();
        Self::new(f, q, coeffs, Tail::Zero)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Truncation degree `D`.
    pub fn tdeg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&LaurentSeries> {
        self.coeffs.get(k)
    }

    pub fn is_exact(&self) -> bool {
        self.tail == Tail::Zero && self.coeffs.iter().all(|c| c.is_exact())
    }

    fn known_degree(&self) -> usize {
        match self.tail {
            Tail::Zero => usize::MAX,
            _ => self.tdeg(),
        }
    }

    /// The best offset for `slope` that the stored coefficients satisfy,
    /// assuming the unstored ones vanish.
    fn offset_for(&self, slope: i64) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match c.valuation() {
                Some(v) => v - slope * k as i64,
                None => c.precision().map_or(INF, |p| p - slope * k as i64),
            })
            .min()
            .unwrap_or(INF)
    }

    /// A linear certificate with the given slope, when one is available.
    pub fn certificate_at(&self, slope: i64) -> Option<(i64, i64)> {
        match self.tail {
            Tail::Zero => Some((slope, self.offset_for(slope))),
            Tail::Linear { slope: s, offset } if s >= slope => Some((slope, offset)),
            Tail::Linear { .. } | Tail::Unknown => None,
        }
    }

    /// Replaces the tail by a linear certificate. The certificate must hold
    /// for the true coefficients; see [`check_certificate`](Self::check_certificate).
    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = tail;
        self
    }

    /// Checks the certificate against the stored coefficients.
    pub fn check_certificate(&self) -> bool {
        match self.tail {
            Tail::Linear { slope, offset } => self
                .coeffs
                .iter()
                .enumerate()
                .all(|(k, c)| c.valuation().is_none_or(|v| v >= slope * k as i64 + offset)),
            _ => true,
        }
    }

    fn combine_tails(a: &Self, b: &Self, mul: bool) -> Tail {
        match (a.tail, b.tail) {
            (Tail::Zero, Tail::Zero) => Tail::Zero,
            (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
            (Tail::Linear { slope, offset }, Tail::Zero) | (Tail::Zero, Tail::Linear { slope, offset }) => {
                let exact = if a.tail == Tail::Zero { a } else { b };
                let o = exact.offset_for(slope);
                if mul {
                    Tail::Linear { slope, offset: offset.saturating_add(o) }
                } else {
                    Tail::Linear { slope, offset: min(offset, o) }
                }
            }
            (Tail::Linear { slope: sa, offset: oa }, Tail::Linear { slope: sb, offset: ob }) => {
                let slope = min(sa, sb);
                let offset = if mul { oa + ob } else { min(oa, ob) };
                Tail::Linear { slope, offset }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(self.field == other.field, "Tate elements over different fields");
        assert_eq!(self.q, other.q, "Tate elements at different levels");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let tail = Self::combine_tails(self, other, false);
        let d = min(self.known_degree(), other.known_degree());
        let d = if d == usize::MAX { self.tdeg().max(other.tdeg()) } else { d };
        let zero = LaurentSeries::zero(&self.field, self.q);
        let coeffs = (0..=d)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = other.coeffs.get(k).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        let mut r = Self::new(&self.field, self.q, coeffs, tail);
        r.trim_exact();
        r
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.neg()).collect();
        Self::new(&self.field, self.q, coeffs, self.tail)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplication by a constant series.
    pub fn scale(&self, c: &LaurentSeries) -> Self {
        self.mul(&Self::constant(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let tail = Self::combine_tails(self, other, true);
        let d = min(self.known_degree(), other.known_degree());
        let d = if d == usize::MAX { self.tdeg() + other.tdeg() } else { d };
        let mut coeffs = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let mut acc = LaurentSeries::zero(&self.field, self.q);
            let lo = n.saturating_sub(other.tdeg());
            let hi = min(n, self.tdeg());
            for i in lo..=hi {
                let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                if a.is_exact() && a.is_zero() || b.is_exact() && b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            coeffs.push(acc);
        }
        let mut r = Self::new(&self.field, self.q, coeffs, tail);
        r.trim_exact();
        r
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn trim_exact(&mut self) {
        if self.tail == Tail::Zero {
            while self.coeffs.len() > 1 {
                let last = self.coeffs.last().unwrap();
                if last.is_exact() && last.is_zero() {
                    self.coeffs.pop();
                } else {
                    break;
                }
            }
        }
    }

    /// Drops the coefficients above `tdeg`, keeping a certificate. An exact
    /// polynomial of higher degree receives the slope-`slope` certificate of
    /// its own coefficients.
    pub fn truncate_t(&self, tdeg: usize, slope: i64) -> Self {
        if tdeg >= self.tdeg() {
            return self.clone();
        }
        let tail = match self.tail {
            Tail::Zero => Tail::Linear { slope, offset: self.offset_for(slope) },
            t => t,
        };
        Self::new(&self.field, self.q, self.coeffs[..=tdeg].to_vec(), tail)
    }

    /// Truncates coefficient `k` to `O(z^{prec + (q-1) k})`.
    pub fn truncate_weighted(&self, prec: i64) -> Self {
        let w = self.q as i64 - 1;
        let coeffs =
            self.coeffs.iter().enumerate().map(|(k, c)| c.truncate(prec + w * k as i64)).collect();
        Self::new(&self.field, self.q, coeffs, self.tail)
    }

    /// The least weighted precision `prec(c_k) - (q-1)k`; `None` if all coefficients are exact.
    pub fn weighted_precision(&self) -> Option<i64> {
        let w = self.q as i64 - 1;
        self.coeffs.iter().enumerate().filter_map(|(k, c)| c.precision().map(|p| p - w * k as i64)).min()
    }

    /// `n`-fold twist: coefficients twisted, `t` fixed.
    pub fn twist(&self, n: u32) -> Self {
        let step = (self.field.p() as i64).pow(n);
        let coeffs = self.coeffs.iter().map(|c| c.twist(n)).collect();
        let tail = match self.tail {
            Tail::Linear { slope, offset } => Tail::Linear { slope: slope * step, offset: offset * step },
            t => t,
        };
        Self::new(&self.field, self.q, coeffs, tail)
    }

    /// As [`twist`](Self::twist) but each coefficient capped at weighted precision `prec`.
    pub fn twist_truncated(&self, n: u32, prec: i64) -> Self {
        let w = self.q as i64 - 1;
        let step = (self.field.p() as i64).pow(n);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.twist_truncated(n, prec.saturating_add(w * k as i64)))
            .collect();
        let tail = match self.tail {
            Tail::Linear { slope, offset } => Tail::Linear { slope: slope * step, offset: offset * step },
            t => t,
        };
        Self::new(&self.field, self.q, coeffs, tail)
    }

    /// `(t - c)^{-s}` for `v_z(c) < 0`, with coefficient `k` known to
    /// `O(z^{prec + (q-1)k})` and `k <= tdeg`.
    pub fn invert_linear_factor(c: &LaurentSeries, s: u64, tdeg: usize, prec: i64) -> Result<Self> {
        let (f, q) = (c.field().clone(), c.q());
        let v = match c.valuation() {
            Some(v) if v < 0 => v,
            Some(v) => return Err(Error::OutsideConvergence(v)),
            None => return Err(Error::OutsideConvergence(c.valuation_bound())),
        };
        let w = -v;
        let e = q as i64 - 1;
        let s_i = s as i64;
        // coefficient k has valuation (s + k) w and must reach prec + e k
        let rel = (0..=tdeg as i64).map(|k| prec + e * k - (s_i + k) * w).max().unwrap().max(1);
        let cinv = c.inv_to(w + rel)?;
        let sign = if s % 2 == 1 { f.neg(FfElem::ONE) } else { FfElem::ONE };
        let mut power = cinv.pow(s);
        let mut coeffs = Vec::with_capacity(tdeg + 1);
        for k in 0..=tdeg {
            let b = binomial_mod_p(s + k as u64 - 1, k as u64, f.p());
            let coeff = power.scale(f.mul(sign, f.from_int(b as i64)));
            coeffs.push(coeff.truncate(prec + e * k as i64));
            if k < tdeg {
                power = power.mul(&cinv);
            }
        }
        Ok(Self::new(&f, q, coeffs, Tail::Linear { slope: w, offset: s_i * w }))
    }

    /// `f(theta)` with certified precision.
    pub fn eval_theta(&self) -> Result<LaurentSeries> {
        let e = self.q as i64 - 1;
        let d = self.tdeg() as i64;
        let tail_prec = match self.tail {
            Tail::Zero => None,
            Tail::Linear { slope, offset } if slope > e => Some((slope - e) * (d + 1) + offset),
            _ => return Err(Error::UncertifiedEvaluation),
        };
        let mut acc = LaurentSeries::zero(&self.field, self.q);
        if let Some(p) = tail_prec {
            acc = LaurentSeries::zero_to(&self.field, self.q, p);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_exact() && c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&LaurentSeries::theta_power(&self.field, self.q, k as i64)));
        }
        Ok(acc)
    }

    pub fn gauss_norm(&self) -> GaussNorm {
        let exponent = self.coeffs.iter().filter_map(|c| c.norm()).max();
        let e = self.q as i64 - 1;
        let d = self.tdeg() as i64;
        let tail_may_dominate = match self.tail {
            Tail::Zero => false,
            Tail::Unknown => true,
            Tail::Linear { slope, offset } => {
                // the largest norm the tail allows, over k > D
                let bound = if slope >= 0 {
                    Ratio::new(-(slope * (d + 1) + offset), e)
                } else {
                    return GaussNorm { exponent, tail_may_dominate: true };
                };
                exponent.is_none_or(|x| bound >= x)
            }
        };
        GaussNorm { exponent, tail_may_dominate }
    }

    /// Whether every stored coefficient vanishes to its precision.
    pub fn check_zero(&self) -> ZeroCheck {
        for (k, c) in self.coeffs.iter().enumerate() {
            if let Some(v) = c.valuation() {
                return ZeroCheck::Nonzero { t_degree: k, z_exponent: v };
            }
        }
        ZeroCheck::Zero { floor: self.weighted_precision() }
    }

    /// Coefficientwise comparison on the jointly stored range.
    pub fn eq_to_prec(&self, other: &Self) -> Vec<Comparison> {
        let d = min(self.tdeg(), other.tdeg());
        (0..=d).map(|k| self.coeffs[k].eq_to_prec(&other.coeffs[k])).collect()
    }

    /// Text form `(c_0) + (c_1)t + ... + O(t^{D+1}; slope s, offset o)`.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_exact() && c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            parts.push(format!("({}){var}", c.to_text()));
        }
        let d1 = self.tdeg() + 1;
        match self.tail {
            Tail::Zero => {}
            Tail::Linear { slope, offset } => parts.push(format!("O(t^{d1}; slope {slope}, offset {offset})")),
            Tail::Unknown => parts.push(format!("O(t^{d1}; uncertified)")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> FieldSpec {
        FieldSpec::new(3, 1).unwrap()
    }

    fn theta_pow(f: &FieldSpec, q: u64, k: i64) -> LaurentSeries {
        LaurentSeries::theta_power(f, q, k)
    }

    #[test]
    fn lucas() {
        assert_eq!(binomial_mod_p(4, 2, 3), 0);
        assert_eq!(binomial_mod_p(5, 2, 3), 1);
        assert_eq!(binomial_mod_p(10, 3, 2), 0);
        assert_eq!(binomial_mod_p(7, 3, 2), 1);
        assert_eq!(binomial_mod_p(0, 0, 5), 1);
    }

    #[test]
    fn polynomial_arithmetic() {
        let f = f3();
        let t = TateElement::t(&f, 3);
        let one = TateElement::one(&f, 3);
        let prod = one.add(&t).mul(&one.sub(&t));
        let expect = one.sub(&t.mul(&t));
        assert_eq!(prod.to_text(), expect.to_text());
        assert_eq!(prod.to_text(), "(1*z^0) + (2*z^0)t^2");
        assert_eq!(prod.add(&TateElement::zero(&f, 3)).to_text(), prod.to_text());
    }

    #[test]
    fn t_minus_theta_vanishes_at_theta() {
        let f = f3();
        let b = BiPoly::t_minus_theta_power(&f, 1);
        let e = TateElement::from_bipoly(&b, 3).eval_theta().unwrap();
        assert!(e.is_zero() && e.is_exact());
        let c = TateElement::constant(theta_pow(&f, 3, 2));
        assert_eq!(c.eval_theta().unwrap(), theta_pow(&f, 3, 2));
    }

    #[test]
    fn inverse_of_linear_factor() {
        let f = f3();
        let c = theta_pow(&f, 3, 3);
        let inv = TateElement::invert_linear_factor(&c, 1, 8, 40).unwrap();
        // constant term -theta^{-3}
        let expect = theta_pow(&f, 3, 3).inv_to(100).unwrap().neg();
        assert!(inv.coeffs()[0].eq_to_prec(&expect).is_equal());
        let lin = TateElement::from_bipoly(&BiPoly::t_minus_theta_power(&f, 3), 3);
        let back = lin.mul(&inv);
        assert_eq!(back.tdeg(), 8);
        assert!(back.coeffs()[0].eq_to_prec(&LaurentSeries::one(&f, 3)).is_equal());
        for k in 1..=8 {
            assert!(back.coeffs()[k].is_zero(), "coefficient {k} of (t - c)/(t - c)");
        }
        let sq = TateElement::invert_linear_factor(&c, 2, 8, 40).unwrap();
        for (a, b) in sq.eq_to_prec(&inv.mul(&inv)).into_iter().enumerate() {
            assert!(b.is_equal(), "t^{a}");
        }
        assert!(inv.check_certificate() && sq.check_certificate());
        let z = LaurentSeries::monomial(&f, 3, f.one(), 0);
        assert_eq!(TateElement::invert_linear_factor(&z, 1, 3, 10).unwrap_err(), Error::OutsideConvergence(0));
    }

    #[test]
    fn eval_requires_certificate() {
        let f = f3();
        let c = theta_pow(&f, 3, 3);
        let inv = TateElement::invert_linear_factor(&c, 1, 8, 40).unwrap();
        // slope 6 > q - 1 = 2, so evaluation is certified
        let v = inv.eval_theta().unwrap();
        let expect = theta_pow(&f, 3, 1).sub(&theta_pow(&f, 3, 3)).inv_to(40).unwrap();
        assert!(v.eq_to_prec(&expect).is_equal());
        assert!(v.precision().unwrap() >= 40 - 4);
        let bad = inv.clone().with_tail(Tail::Linear { slope: 2, offset: 0 });
        assert_eq!(bad.eval_theta().unwrap_err(), Error::UncertifiedEvaluation);
        assert!(!inv.clone().with_tail(Tail::Linear { slope: 7, offset: 6 }).check_certificate());
    }

    #[test]
    fn twist_and_norm() {
        let f = f3();
        let t = TateElement::t(&f, 3);
        assert_eq!(t.twist(1).to_text(), t.to_text());
        let theta_t = t.scale(&theta_pow(&f, 3, 1));
        assert_eq!(theta_t.twist(1).to_text(), t.scale(&theta_pow(&f, 3, 3)).to_text());
        assert_eq!(t.gauss_norm(), GaussNorm { exponent: Some(Ratio::from_integer(0)), tail_may_dominate: false });
        let th = TateElement::constant(theta_pow(&f, 3, 1)).add(&t);
        assert_eq!(th.gauss_norm().exponent, Some(Ratio::from_integer(1)));
    }

    /// Independent schoolbook convolution on plain coefficient vectors.
    fn naive_mul(a: &[LaurentSeries], b: &[LaurentSeries]) -> Vec<LaurentSeries> {
        let f = a[0].field().clone();
        let mut out = vec![LaurentSeries::zero(&f, 3); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    }

    fn random_exact(rng: &mut ChaCha8Rng, f: &FieldSpec, deg: usize) -> Vec<LaurentSeries> {
        (0..=deg)
            .map(|_| {
                let start = rng.gen_range(-4..4);
                let c = (0..4).map(|_| f.random(rng)).collect();
                LaurentSeries::from_coeffs(f, 3, start, c)
            })
            .collect()
    }

    #[test]
    fn mul_matches_naive_convolution() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (da, db) = (rng.gen_range(0..5), rng.gen_range(0..5));
            let a = random_exact(&mut rng, &f, da);
            let b = random_exact(&mut rng, &f, db);
            let ta = TateElement::new(&f, 3, a.clone(), Tail::Zero);
            let tb = TateElement::new(&f, 3, b.clone(), Tail::Zero);
            let prod = ta.mul(&tb);
            let naive = naive_mul(&a, &b);
            for (k, c) in naive.iter().enumerate() {
                let mine = prod.coeff(k).cloned().unwrap_or_else(|| LaurentSeries::zero(&f, 3));
                assert_eq!(&mine, c);
            }
        }
    }

    fn arb_certified() -> impl Strategy<Value = TateElement> {
        (proptest::collection::vec((2i64..4, 0u32..3), 1..4), 0u64..2).prop_map(|(roots, s)| {
            let f = f3();
            let mut acc = TateElement::one(&f, 3);
            for (k, c) in roots {
                let root = theta_pow(&f, 3, k).scale(f.from_int(c as i64 % 2 + 1));
                acc = acc.mul(&TateElement::invert_linear_factor(&root, s + 1, 6, 30).unwrap());
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn evaluation_is_multiplicative(a in arb_certified(), b in arb_certified()) {
            let ab = a.mul(&b).eval_theta().unwrap();
            let prod = a.eval_theta().unwrap().mul(&b.eval_theta().unwrap());
            prop_assert!(ab.eq_to_prec(&prod).is_equal());
        }

        #[test]
        fn twist_commutes_with_arithmetic(a in arb_certified(), b in arb_certified()) {
            let l = a.mul(&b).twist(1);
            let r = a.twist(1).mul(&b.twist(1));
            prop_assert!(l.eq_to_prec(&r).iter().all(|c| c.is_equal()));
            let l = a.add(&b).twist(1);
            let r = a.twist(1).add(&b.twist(1));
            prop_assert!(l.eq_to_prec(&r).iter().all(|c| c.is_equal()));
        }

        #[test]
        fn linear_factor_round_trip(k in 1i64..4, c in 1i64..3, s in 1u64..4) {
            let f = f3();
            let root = theta_pow(&f, 3, k).scale(f.from_int(c));
            let inv = TateElement::invert_linear_factor(&root, s, 6, 30).unwrap();
            let lin = TateElement::from_bipoly(
                &BiPoly::new(&f, vec![Poly::zero(&f), Poly::one(&f)]), 3,
            ).sub(&TateElement::constant(root));
            let back = lin.pow(s).mul(&inv);
            prop_assert!(back.coeffs()[0].eq_to_prec(&LaurentSeries::one(&f, 3)).is_equal());
            for co in &back.coeffs()[1..] {
                prop_assert!(co.is_zero());
            }
        }
    }
}
