//! Truncated Laurent series in the uniformizer `z` of `F_{p^m}((z))`.
//!
//! At level `q = p^l` the uniformizer is `z = (-theta)^{-1/(q-1)}`, so
//! `theta = -z^{-(q-1)}` and the fixed root `(-theta)^{1/(q-1)}` is `z^{-1}`.
//! A series is either exact (finite support, no error term) or known modulo
//! `O(z^N)`. Precision is propagated pessimistically:
//!
//! ```text
//! (a + O(z^i)) + (b + O(z^j)) = a + b + O(z^min(i, j))
//! (z^e u + O(z^i)) (z^f w + O(z^j)) = z^(e+f) u w + O(z^min(e + j, f + i))
//! ```
//!
//! A series that is zero to its precision is never treated as an exact zero.

use std::cmp::{max, min};
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::ffield::{FfElem, FieldSpec};
use crate::poly::Poly;

/// Stand-in for an infinite exponent; far from overflow under addition.
pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Clone)]
pub struct LaurentSeries {
    field: FieldSpec,
    q: u64,
    /// Exponent of `coeffs[0]`; equals the precision for a series that is zero to precision.
    start: i64,
    /// `coeffs[0]` is nonzero whenever the vector is nonempty. With finite
    /// precision the vector is dense up to `prec - 1`; exact series carry no
    /// trailing zeros.
    coeffs: Vec<FfElem>,
    prec: Option<i64>,
}

/// Outcome of comparing two series on their jointly known range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Equal modulo `O(z^precision)`; `None` means exactly equal.
    Equal { precision: Option<i64> },
    /// The first exponent at which the known coefficients differ.
    Unequal { exponent: i64 },
    /// The joint precision is below the requested floor.
    Incomparable { precision: i64 },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl PartialEq for LaurentSeries {
    /// Structural equality: same stored coefficients and same precision.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.q == other.q
            && self.prec == other.prec
            && self.coeffs == other.coeffs
            && (self.coeffs.is_empty() || self.start == other.start)
    }
}

impl LaurentSeries {
    fn build(field: &FieldSpec, q: u64, start: i64, coeffs: Vec<FfElem>, prec: Option<i64>) -> Self {
        let mut s = LaurentSeries { field: field.clone(), q, start, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(n) = self.prec {
            let keep = (n - self.start).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        } else {
            while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                self.coeffs.pop();
            }
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.start += k as i64;
                }
            }
            None => {
                self.coeffs.clear();
                self.start = self.prec.unwrap_or(INF);
            }
        }
    }

    /// Exact zero.
    pub fn zero(field: &FieldSpec, q: u64) -> Self {
        LaurentSeries { field: field.clone(), q, start: INF, coeffs: vec![], prec: None }
    }

    /// `O(z^prec)`
    pub fn zero_to(field: &FieldSpec, q: u64, prec: i64) -> Self {
        LaurentSeries { field: field.clone(), q, start: prec, coeffs: vec![], prec: Some(prec) }
    }

    pub fn one(field: &FieldSpec, q: u64) -> Self {
        Self::monomial(field, q, FfElem::ONE, 0)
    }

    /// Exact `c z^e`.
    pub fn monomial(field: &FieldSpec, q: u64, c: FfElem, e: i64) -> Self {
        Self::build(field, q, e, vec![c], None)
    }

    /// Exact series from coefficients starting at exponent `start`.
    pub fn from_coeffs(field: &FieldSpec, q: u64, start: i64, coeffs: Vec<FfElem>) -> Self {
        Self::build(field, q, start, coeffs, None)
    }

    /// Series from coefficients starting at `start`, known modulo `O(z^prec)`.
    pub fn from_coeffs_to(field: &FieldSpec, q: u64, start: i64, mut coeffs: Vec<FfElem>, prec: i64) -> Self {
        let want = (prec - start).max(0) as usize;
        coeffs.resize(want.max(coeffs.len()), FfElem::ZERO);
        Self::build(field, q, start.min(prec), coeffs, Some(prec))
    }

    /// `theta^k = (-1)^k z^{-(q-1)k}` exactly.
    pub fn theta_power(field: &FieldSpec, q: u64, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 1 { field.neg(FfElem::ONE) } else { FfElem::ONE };
        Self::monomial(field, q, sign, -(q as i64 - 1) * k)
    }

    /// Exact image of a polynomial in `theta`.
    pub fn from_theta_poly(p: &Poly, q: u64) -> Self {
        let field = p.field();
        let Some(deg) = p.degree() else {
            return Self::zero(field, q);
        };
        let e = q as i64 - 1;
        let span = deg as i64 * e;
        let mut coeffs = vec![FfElem::ZERO; span as usize + 1];
        let minus_one = field.neg(FfElem::ONE);
        for (k, &c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if k % 2 == 1 { field.mul(c, minus_one) } else { c };
            coeffs[(span - k as i64 * e) as usize] = c;
        }
        Self::build(field, q, -span, coeffs, None)
    }

    /// Expansion of `num / den` (polynomials in `theta`) modulo `O(z^prec)`.
    pub fn from_theta_rational(num: &Poly, den: &Poly, q: u64, prec: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = Self::from_theta_poly(num, q);
        let d = Self::from_theta_poly(den, q);
        let vn = n.valuation().unwrap_or(prec);
        Ok(n.mul(&d.inv_to(prec - vn)?).truncate(prec))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Valuation, or `None` when the series is zero (exactly or to its precision).
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Lower bound for the valuation of the true value.
    pub fn valuation_bound(&self) -> i64 {
        self.start
    }

    /// `None` for exact series.
    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub(crate) fn prec_or_inf(&self) -> i64 {
        self.prec.unwrap_or(INF)
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Zero exactly or to precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^k`; `None` when `k` is at or beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<FfElem> {
        if k >= self.prec_or_inf() {
            return None;
        }
        if k < self.start {
            return Some(FfElem::ZERO);
        }
        Some(self.coeffs.get((k - self.start) as usize).copied().unwrap_or(FfElem::ZERO))
    }

    /// Leading coefficient, if nonzero to precision.
    pub fn leading(&self) -> Option<FfElem> {
        self.coeffs.first().copied()
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FfElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.start + i as i64, c))
    }

    fn check_compatible(&self, other: &Self) {
        assert!(self.field == other.field, "series over different coefficient fields");
        assert_eq!(self.q, other.q, "series at different levels");
    }

    /// Lowers the precision to at most `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let p = min(self.prec_or_inf(), prec);
        if p >= INF {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        let start = if coeffs.is_empty() { p } else { self.start };
        let len = (p - start).max(0) as usize;
        coeffs.resize(len, FfElem::ZERO);
        Self::build(&self.field, self.q, min(start, p), coeffs, Some(p))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        if self.is_exact() && self.is_zero() {
            return other.clone();
        }
        if other.is_exact() && other.is_zero() {
            return self.clone();
        }
        let prec = min(self.prec_or_inf(), other.prec_or_inf());
        if self.is_zero() && other.is_zero() {
            return if prec >= INF { Self::zero(&self.field, self.q) } else { Self::zero_to(&self.field, self.q, prec) };
        }
        let start = min(self.start, other.start);
        let end = if prec >= INF {
            max(self.start + self.coeffs.len() as i64, other.start + other.coeffs.len() as i64)
        } else {
            prec
        };
        if end <= start {
            return Self::zero_to(&self.field, self.q, prec);
        }
        let mut v = vec![FfElem::ZERO; (end - start) as usize];
        for s in [self, other] {
            for (i, &c) in s.coeffs.iter().enumerate() {
                let k = s.start + i as i64;
                if k >= end {
                    break;
                }
                let slot = &mut v[(k - start) as usize];
                *slot = self.field.add(*slot, c);
            }
        }
        Self::build(&self.field, self.q, start, v, (prec < INF).then_some(prec))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let mut s = self.clone();
        for c in s.coeffs.iter_mut() {
            *c = f.neg(*c);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FfElem) -> Self {
        if c.is_zero() {
            return match self.prec {
                None => Self::zero(&self.field, self.q),
                Some(p) => Self::zero_to(&self.field, self.q, p),
            };
        }
        let f = &self.field;
        let mut s = self.clone();
        for x in s.coeffs.iter_mut() {
            *x = f.mul(*x, c);
        }
        s
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        if !s.coeffs.is_empty() || s.prec.is_some() {
            s.start += k;
        }
        if let Some(p) = s.prec.as_mut() {
            *p += k;
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        if (self.is_exact() && self.is_zero()) || (other.is_exact() && other.is_zero()) {
            return Self::zero(&self.field, self.q);
        }
        let (va, vb) = (self.start, other.start);
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(pa), None) => Some(vb + pa),
            (None, Some(pb)) => Some(va + pb),
            (Some(pa), Some(pb)) => Some(min(va + pb, vb + pa)),
        };
        if self.is_zero() || other.is_zero() {
            return match prec {
                None => Self::zero(&self.field, self.q),
                Some(p) => Self::zero_to(&self.field, self.q, p),
            };
        }
        let start = va + vb;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match prec {
            Some(p) => (p - start).clamp(0, full as i64) as usize,
            None => full,
        };
        let f = &self.field;
        let mut v = vec![FfElem::ZERO; len];
        let b_nz: Vec<(usize, FfElem)> =
            other.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &b_nz {
                let k = i + j;
                if k >= len {
                    break;
                }
                v[k] = f.add(v[k], f.mul(a, b));
            }
        }
        if let Some(p) = prec {
            if p - start > len as i64 {
                v.resize((p - start) as usize, FfElem::ZERO);
            }
        }
        Self::build(f, self.q, start, v, prec)
    }

    /// Inverse, with precision `prec - 2v` for a series of valuation `v`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_exact() {
            return Err(Error::ExactNeedsPrecision);
        }
        self.inv_to(INF)
    }

    /// Inverse known to at most absolute precision `target`.
    pub fn inv_to(&self, target: i64) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::InsufficientPrecision(self.prec_or_inf()));
        };
        let prec = match self.prec {
            Some(p) => min(target, p - 2 * v),
            None => target,
        };
        if prec >= INF {
            return Err(Error::ExactNeedsPrecision);
        }
        let n = prec + v;
        if n <= 0 {
            return Ok(Self::zero_to(&self.field, self.q, prec));
        }
        let n = n as usize;
        let f = &self.field;
        let u0_inv = f.inv(self.coeffs[0])?;
        let minus_u0_inv = f.neg(u0_inv);
        let u_nz: Vec<(usize, FfElem)> = self
            .coeffs
            .iter()
            .copied()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut b = vec![FfElem::ZERO; n];
        b[0] = u0_inv;
        for k in 1..n {
            let mut acc = FfElem::ZERO;
            for &(j, uj) in &u_nz {
                if j > k {
                    break;
                }
                let bk = b[k - j];
                if !bk.is_zero() {
                    acc = f.add(acc, f.mul(uj, bk));
                }
            }
            b[k] = f.mul(acc, minus_u0_inv);
        }
        Ok(Self::build(f, self.q, -v, b, Some(prec)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let target = match (self.prec, other.prec) {
            (_, Some(_)) => INF,
            (Some(p), None) => {
                let vo = other.valuation().ok_or(Error::DivisionByZero)?;
                let va = self.valuation().unwrap_or(p);
                p - vo - va
            }
            (None, None) => return Err(Error::ExactNeedsPrecision),
        };
        Ok(self.mul(&other.inv_to(target)?))
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

    /// The `n`-fold twist: `z^i -> z^{i p^n}`, `c -> c^{p^n}`, precision scaled by `p^n`.
    pub fn twist(&self, n: u32) -> Self {
        self.twist_truncated(n, INF)
    }

    /// Twist followed by truncation to `cap`, without materializing the
    /// coefficients beyond `cap`.
    pub fn twist_truncated(&self, n: u32, cap: i64) -> Self {
        let f = &self.field;
        let step = (f.p() as i64).pow(n);
        let prec = self.prec.map(|p| p.saturating_mul(step)).map_or(cap, |p| min(p, cap));
        let prec = (prec < INF).then_some(prec);
        if self.is_zero() {
            return match prec {
                None => Self::zero(f, self.q),
                Some(p) => Self::zero_to(f, self.q, p),
            };
        }
        let start = self.start * step;
        let end = match prec {
            Some(p) => p,
            None => start + (self.coeffs.len() as i64 - 1) * step + 1,
        };
        if end <= start {
            return Self::zero_to(f, self.q, end);
        }
        let mut v = vec![FfElem::ZERO; (end - start) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = i as i64 * step;
            if k >= end - start {
                break;
            }
            v[k as usize] = f.frobenius(c, n as i64);
        }
        Self::build(f, self.q, start, v, prec)
    }

    /// Inverse of [`twist`](Self::twist); every exponent in the support must
    /// be divisible by `p^n`.
    pub fn inverse_twist(&self, n: u32) -> Result<Self> {
        let f = &self.field;
        let step = (f.p() as i64).pow(n);
        for (k, _) in self.terms() {
            if k.rem_euclid(step) != 0 {
                return Err(Error::NotATwist { exponent: k, n });
            }
        }
        let prec = self.prec.map(|p| p.div_euclid(step) + (p.rem_euclid(step) != 0) as i64);
        if self.is_zero() {
            return Ok(match prec {
                None => Self::zero(f, self.q),
                Some(p) => Self::zero_to(f, self.q, p),
            });
        }
        let start = self.start / step;
        let end = match prec {
            Some(p) => p,
            None => (self.start + self.coeffs.len() as i64 - 1) / step + 1,
        };
        let mut v = vec![FfElem::ZERO; (end - start).max(0) as usize];
        for (k, c) in self.terms() {
            let j = k / step - start;
            if (j as usize) < v.len() {
                v[j as usize] = f.frobenius(c, -(n as i64));
            }
        }
        Ok(Self::build(f, self.q, start, v, prec))
    }

    /// The absolute value as an exponent of `|theta|`: `|f| = |theta|^{-v/(q-1)}`.
    /// `None` stands for the zero series (exponent minus infinity).
    pub fn norm(&self) -> Option<Ratio<i64>> {
        self.valuation().map(|v| Ratio::new(-v, self.q as i64 - 1))
    }

    /// Compares on the jointly known range.
    pub fn eq_to_prec(&self, other: &Self) -> Comparison {
        self.compare_with_floor(other, None)
    }

    /// As [`eq_to_prec`](Self::eq_to_prec), but reports `Incomparable` when
    /// the joint precision is below `floor` and no difference was found.
    pub fn compare_with_floor(&self, other: &Self, floor: Option<i64>) -> Comparison {
        self.check_compatible(other);
        let diff = self.sub(other);
        if let Some(v) = diff.valuation() {
            return Comparison::Unequal { exponent: v };
        }
        match diff.prec {
            None => Comparison::Equal { precision: None },
            Some(p) => match floor {
                Some(fl) if p < fl => Comparison::Incomparable { precision: p },
                _ => Comparison::Equal { precision: Some(p) },
            },
        }
    }

    /// Canonical text `c*z^k + ... + O(z^N)`.
    pub fn to_text(&self) -> String {
        let mut terms: Vec<String> =
            self.terms().map(|(k, c)| format!("{}*z^{}", self.field.format_elem(c), k)).collect();
        if let Some(p) = self.prec {
            terms.push(format!("O(z^{p})"));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Parses the canonical text form.
    pub fn parse(field: &FieldSpec, q: u64, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(field, q));
        }
        let mut terms: Vec<(i64, FfElem)> = Vec::new();
        let mut prec = None;
        for part in text.split(" + ") {
            let part = part.trim();
            if let Some(inner) = part.strip_prefix("O(z^").and_then(|x| x.strip_suffix(')')) {
                prec = Some(inner.parse::<i64>().map_err(|e| Error::Parse(format!("{part}: {e}")))?);
                continue;
            }
            let (c, e) = part.rsplit_once("*z^").ok_or_else(|| Error::Parse(format!("bad term {part}")))?;
            let e = e.parse::<i64>().map_err(|err| Error::Parse(format!("{part}: {err}")))?;
            terms.push((e, field.parse_elem(c)?));
        }
        if terms.is_empty() {
            return match prec {
                Some(p) => Ok(Self::zero_to(field, q, p)),
                None => Err(Error::Parse("empty series".into())),
            };
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let end = prec.unwrap_or(hi + 1);
        if hi >= end {
            return Err(Error::Parse(format!("term z^{hi} beyond precision O(z^{end})")));
        }
        let mut v = vec![FfElem::ZERO; (end - lo) as usize];
        for (e, c) in terms {
            let slot = &mut v[(e - lo) as usize];
            *slot = field.add(*slot, c);
        }
        Ok(Self::build(field, q, lo, v, prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> FieldSpec {
        FieldSpec::new(3, 1).unwrap()
    }

    fn theta(f: &FieldSpec, q: u64) -> LaurentSeries {
        LaurentSeries::theta_power(f, q, 1)
    }

    #[test]
    fn theta_is_minus_z_to_the_minus_q_minus_one() {
        let f = f3();
        let t = theta(&f, 3);
        assert_eq!(t.valuation(), Some(-2));
        assert_eq!(t.leading(), Some(f.from_int(-1)));
        assert!(t.is_exact());
        assert_eq!(t.norm(), Some(Ratio::from_integer(1)));
        let inv = t.inv_to(20).unwrap();
        assert_eq!(inv.to_text(), "2*z^2 + O(z^20)");
        assert_eq!(inv.norm(), Some(Ratio::from_integer(-1)));
    }

    #[test]
    fn rational_embedding_multiplies_back() {
        // 1/(theta^3 - theta) at q = 3; valuation 6 and the product with the
        // denominator is 1 to precision.
        let f = f3();
        let den = Poly::new(&f, vec![f.zero(), f.from_int(-1), f.zero(), f.one()]);
        let one = Poly::one(&f);
        let r = LaurentSeries::from_theta_rational(&one, &den, 3, 40).unwrap();
        assert_eq!(r.valuation(), Some(6));
        let back = r.mul(&LaurentSeries::from_theta_poly(&den, 3));
        assert_eq!(back.eq_to_prec(&LaurentSeries::one(&f, 3)), Comparison::Equal { precision: Some(34) });
        assert!(LaurentSeries::from_theta_rational(&one, &Poly::zero(&f), 3, 10).is_err());
    }

    #[test]
    fn geometric_series() {
        let f = f3();
        let one_minus_z = LaurentSeries::from_coeffs(&f, 3, 0, vec![f.one(), f.from_int(-1)]);
        let inv = one_minus_z.inv_to(6).unwrap();
        assert_eq!(inv.to_text(), "1*z^0 + 1*z^1 + 1*z^2 + 1*z^3 + 1*z^4 + 1*z^5 + O(z^6)");
        assert!(one_minus_z.inv().is_err());
        assert_eq!(inv.inv().unwrap().eq_to_prec(&one_minus_z), Comparison::Equal { precision: Some(6) });
    }

    #[test]
    fn precision_rules() {
        let f = f3();
        let a = LaurentSeries::from_coeffs_to(&f, 3, 2, vec![f.one(), f.one()], 10);
        let b = LaurentSeries::from_coeffs_to(&f, 3, -1, vec![f.one()], 5);
        assert_eq!(a.add(&b).precision(), Some(5));
        // min(2 + 5, -1 + 10) = 7
        assert_eq!(a.mul(&b).precision(), Some(7));
        assert_eq!(a.mul(&b).valuation(), Some(1));
        // inverse of valuation-2 series known to O(z^10): 10 - 4 = 6
        assert_eq!(a.inv().unwrap().precision(), Some(6));
        let z = LaurentSeries::zero_to(&f, 3, 4);
        assert_eq!(z.inv().unwrap_err(), Error::InsufficientPrecision(4));
    }

    #[test]
    fn comparisons() {
        let f = f3();
        let z = LaurentSeries::monomial(&f, 3, f.one(), 1);
        let z_z2 = LaurentSeries::from_coeffs(&f, 3, 1, vec![f.one(), f.one()]).truncate(3);
        assert_eq!(z.eq_to_prec(&z), Comparison::Equal { precision: None });
        assert_eq!(z.eq_to_prec(&z_z2), Comparison::Unequal { exponent: 2 });
        let o5 = LaurentSeries::zero_to(&f, 3, 5);
        let z7 = LaurentSeries::monomial(&f, 3, f.one(), 7).truncate(9);
        assert_eq!(o5.eq_to_prec(&z7), Comparison::Equal { precision: Some(5) });
        assert_eq!(o5.compare_with_floor(&z7, Some(6)), Comparison::Incomparable { precision: 5 });
    }

    #[test]
    fn twist_examples() {
        let f = f3();
        let z = LaurentSeries::monomial(&f, 3, f.one(), 1);
        assert_eq!(z.twist(1), LaurentSeries::monomial(&f, 3, f.one(), 3));
        let t = theta(&f, 3);
        assert_eq!(t.twist(1), LaurentSeries::theta_power(&f, 3, 3));
        assert!(t.pow(3).sub(&t.twist(1)).is_zero());
        assert_eq!(t.twist(1).inverse_twist(1).unwrap(), t);
        assert_eq!(z.twist(1).inverse_twist(1).unwrap(), z);
        assert_eq!(z.inverse_twist(1).unwrap_err(), Error::NotATwist { exponent: 1, n: 1 });
        let s = LaurentSeries::from_coeffs_to(&f, 3, -2, vec![f.one(), f.from_int(2)], 4);
        assert_eq!(s.twist(1).precision(), Some(12));
        assert_eq!(s.twist(1).valuation(), Some(-6));
    }

    #[test]
    fn text_round_trip_extension_field() {
        let f = FieldSpec::new(2, 2).unwrap();
        let w = f.basis_root();
        let s = LaurentSeries::from_coeffs_to(&f, 4, -3, vec![w, f.zero(), f.add(w, f.one())], 2);
        let text = s.to_text();
        assert_eq!(text, "w*z^-3 + (1+w)*z^-1 + O(z^2)");
        assert_eq!(LaurentSeries::parse(&f, 4, &text).unwrap(), s);
        assert_eq!(LaurentSeries::parse(&f, 4, "O(z^3)").unwrap(), LaurentSeries::zero_to(&f, 4, 3));
    }

    fn arb_series(f: FieldSpec) -> impl Strategy<Value = LaurentSeries> {
        (-6i64..6, proptest::collection::vec(0u32..3, 1..12), 4i64..16).prop_map(move |(start, c, extra)| {
            let coeffs = c.into_iter().map(|x| f.from_int(x as i64)).collect();
            LaurentSeries::from_coeffs_to(&f, 3, start, coeffs, start + extra)
        })
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in arb_series(f3()), b in arb_series(f3())) {
            if let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) {
                prop_assert_eq!(a.mul(&b).valuation(), Some(va + vb));
            }
        }

        #[test]
        fn twist_is_a_ring_homomorphism(a in arb_series(f3()), b in arb_series(f3())) {
            prop_assert!(a.mul(&b).twist(1).eq_to_prec(&a.twist(1).mul(&b.twist(1))).is_equal());
            prop_assert!(a.add(&b).twist(1).eq_to_prec(&a.twist(1).add(&b.twist(1))).is_equal());
            prop_assert!(a.twist(1).eq_to_prec(&a.pow(3)).is_equal());
        }

        #[test]
        fn double_inverse(a in arb_series(f3())) {
            if let Ok(i) = a.inv() {
                if let Ok(ii) = i.inv() {
                    prop_assert!(ii.eq_to_prec(&a).is_equal());
                }
            }
        }

        #[test]
        fn rational_embedding_is_multiplicative(
            n in proptest::collection::vec(0i64..3, 1..5),
            d in proptest::collection::vec(0i64..3, 1..5),
        ) {
            let f = f3();
            let num = Poly::new(&f, n.into_iter().map(|c| f.from_int(c)).collect());
            let den = Poly::new(&f, d.into_iter().map(|c| f.from_int(c)).collect());
            prop_assume!(!den.is_zero());
            let r = LaurentSeries::from_theta_rational(&num, &den, 3, 30).unwrap();
            let back = r.mul(&LaurentSeries::from_theta_poly(&den, 3));
            prop_assert!(back.eq_to_prec(&LaurentSeries::from_theta_poly(&num, 3)).is_equal());
        }
    }
}
