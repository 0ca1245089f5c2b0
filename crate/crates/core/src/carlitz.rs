//! The Carlitz tower at level `q = p^l`: `D_i`, Carlitz factorials, the
//! period series `Omega`, the period `pi~` and the check of
//! `Omega = (t - theta^q) Omega^{(l)}`.

use crate::error::{Error, Result};
use crate::ffield::{FfElem, FieldSpec};
use crate::laurent::LaurentSeries;
use crate::poly::{BiPoly, Poly};
use crate::tate::{Tail, TateElement, ZeroCheck};

#[derive(Clone, Debug)]
pub struct CarlitzContext {
    p: u64,
    l: u32,
    q: u64,
    field: FieldSpec,
    /// Default z-precision.
    pub prec: i64,
    /// Default t-truncation degree.
    pub tdeg: usize,
}

/// Outcome of a functional-equation residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub passed: bool,
    /// Least weighted precision of the difference; `None` when it is exact.
    pub floor: Option<i64>,
    /// First nonzero coefficient of the difference, as `(t_degree, z_exponent)`.
    pub witness: Option<(usize, i64)>,
    /// Why the check could not run, if it could not.
    pub precheck: Option<String>,
}

impl Residual {
    /// Pass iff the difference vanishes and its floor reaches `required`.
    pub fn from_difference(diff: &TateElement, required: i64) -> Self {
        match diff.check_zero() {
            ZeroCheck::Zero { floor } => Residual {
                passed: floor.is_none_or(|f| f >= required),
                floor,
                witness: None,
                precheck: None,
            },
            ZeroCheck::Nonzero { t_degree, z_exponent } => Residual {
                passed: false,
                floor: diff.weighted_precision(),
                witness: Some((t_degree, z_exponent)),
                precheck: None,
            },
        }
    }

    /// Nonzero difference found, as opposed to a floor below the requirement.
    pub fn is_failure(&self) -> bool {
        self.witness.is_some() || self.precheck.is_some()
    }
}

impl CarlitzContext {
    pub fn new(p: u64, l: u32, prec: i64, tdeg: usize) -> Result<Self> {
        let field = FieldSpec::new(p, l)?;
        if prec < 1 {
            return Err(Error::InsufficientPrecision(prec));
        }
        Ok(CarlitzContext { p, l, q: field.order(), field, prec, tdeg })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `theta^k` as a polynomial.
    pub fn theta_pow(&self, k: usize) -> Poly {
        Poly::monomial(&self.field, FfElem::ONE, k)
    }

    /// `D_i = (theta^{q^i} - theta) D_{i-1}^q`.
    pub fn carlitz_d(&self, i: u32) -> Poly {
        let theta = self.theta_pow(1);
        let mut d = Poly::one(&self.field);
        for k in 1..=i {
            let qk = self.q.pow(k) as usize;
            d = self.theta_pow(qk).sub(&theta).mul(&d.pow(self.q));
        }
        d
    }

    /// `Gamma_{n+1} = prod_i D_i^{n_i}` over the base-`q` digits `n_i` of `n`.
    pub fn carlitz_factorial(&self, n: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut rest = n;
        let mut i = 0;
        while rest > 0 {
            let digit = rest % self.q;
            if digit > 0 {
                acc = acc.mul(&self.carlitz_d(i).pow(digit));
            }
            rest /= self.q;
            i += 1;
        }
        acc
    }

    /// Number of product factors for `omega_series` at t-degree `tdeg` and
    /// weighted precision `prec`: the first omitted factor must perturb every
    /// stored coefficient below its target, plus one factor of margin.
    pub fn omega_factors(&self, tdeg: usize, prec: i64) -> usize {
        let e = self.q as i64 - 1;
        let need = prec + e * tdeg as i64;
        let mut f = 1usize;
        while e * (self.q as i64).pow(f as u32 + 1) < need {
            f += 1;
        }
        f + 1
    }

    /// `Omega = z^q prod_{i>=1} (1 - t / theta^{q^i})` truncated at t-degree
    /// `tdeg`, coefficient `k` known modulo `O(z^{prec + (q-1)k})`.
    pub fn omega_series(&self, factors: Option<usize>, tdeg: usize, prec: i64) -> TateElement {
        let f = factors.unwrap_or_else(|| self.omega_factors(tdeg, prec));
        self.omega_product(f, None, tdeg, prec)
    }

    /// The same product with factor `skip` left out while still claiming the
    /// precision of the full product. Used as a negative control.
    pub fn omega_series_dropping(&self, skip: usize, tdeg: usize, prec: i64) -> TateElement {
        let f = self.omega_factors(tdeg, prec);
        self.omega_product(f, Some(skip), tdeg, prec)
    }

    fn omega_product(&self, factors: usize, skip: Option<usize>, tdeg: usize, prec: i64) -> TateElement {
        let (fd, q) = (&self.field, self.q);
        let e = q as i64 - 1;
        // exact coefficients of the finite product, capped at t-degree tdeg
        let mut a: Vec<LaurentSeries> = vec![LaurentSeries::one(fd, q)];
        for i in 1..=factors {
            if Some(i) == skip {
                continue;
            }
            let root_inv = LaurentSeries::theta_power(fd, q, -(q.pow(i as u32) as i64));
            let mut next = a.clone();
            next.push(LaurentSeries::zero(fd, q));
            for k in 1..next.len() {
                next[k] = next[k].sub(&a[k - 1].mul(&root_inv));
            }
            next.truncate(tdeg + 1);
            a = next;
        }
        // error from the omitted factors: each has valuation >= (q-1) q^{F+1}
        let gap = e.saturating_mul((q as i64).saturating_pow(factors as u32 + 1));
        let mut coeffs = Vec::with_capacity(tdeg + 1);
        for k in 0..=tdeg {
            let exact = a.get(k).cloned().unwrap_or_else(|| LaurentSeries::zero(fd, q));
            let err = (0..k)
                .filter_map(|j| a.get(j).and_then(|c| c.valuation()).map(|v| v.saturating_add(gap.saturating_mul((k - j) as i64))))
                .min();
            let target = prec + e * k as i64;
            let c = exact.shift(q as i64);
            let cap = err.map_or(target, |x| x.saturating_add(q as i64).min(target));
            coeffs.push(c.truncate(cap));
        }
        TateElement::new(fd, q, coeffs, Tail::Linear { slope: e * q as i64, offset: q as i64 })
    }

    /// `Omega(theta)` modulo `O(z^prec)`, via the series with enough t-terms
    /// that the certified tail reaches `prec`.
    pub fn omega_value(&self, prec: i64) -> Result<LaurentSeries> {
        let q = self.q as i64;
        let e2 = (q - 1) * (q - 1);
        let tdeg = ((prec - q).max(0) + e2 - 1) / e2;
        let v = self.omega_series(None, tdeg as usize, prec).eval_theta()?;
        Ok(v.truncate(prec))
    }

    /// `pi~ = theta (-theta)^{1/(q-1)} prod_{i>=1} (1 - theta^{1-q^i})^{-1}` modulo `O(z^prec)`.
    ///
    /// Note the prefactor: against `Omega(theta) = (-theta)^{-q/(q-1)} prod (1 - theta^{1-q^i})`
    /// this gives `pi~ Omega(theta) = theta / (-theta) = -1` for every choice of root,
    /// so `pi~ = 1/Omega(theta)` only in characteristic 2.
    pub fn pi_tilde(&self, prec: i64) -> LaurentSeries {
        let (fd, q) = (&self.field, self.q);
        // theta * z^{-1} has valuation -q; work to relative precision prec + q
        let rel = prec + q as i64;
        let mut acc = LaurentSeries::one(fd, q).truncate(rel);
        let mut i = 1u32;
        loop {
            let x = LaurentSeries::theta_power(fd, q, 1 - q.pow(i) as i64);
            if x.valuation().unwrap() >= rel {
                break;
            }
            let factor = LaurentSeries::one(fd, q).sub(&x);
            acc = acc.mul(&factor.inv_to(rel).expect("unit factor"));
            i += 1;
        }
        LaurentSeries::theta_power(fd, q, 1).shift(-1).mul(&acc)
    }

    /// `Omega - (t - theta^q) Omega^{(l)}`, which must vanish to the floor `required`.
    pub fn omega_functional_residual(&self, omega: &TateElement, required: i64) -> Residual {
        let c0 = omega.coeff(0);
        if c0.is_none_or(|c| c.is_zero() && c.is_exact()) {
            return Residual {
                passed: false,
                floor: omega.weighted_precision(),
                witness: None,
                precheck: Some("Omega has vanishing constant term".into()),
            };
        }
        let diff = self.omega_difference(omega, required);
        Residual::from_difference(&diff, required)
    }

    fn omega_difference(&self, omega: &TateElement, required: i64) -> TateElement {
        let q = self.q;
        let e = q as i64 - 1;
        let lin = TateElement::from_bipoly(&BiPoly::t_minus_theta_power(&self.field, q as usize), q);
        let cap = omega.weighted_precision().unwrap_or(required).max(required) + e * q as i64;
        let tw = omega.twist_truncated(self.l, cap);
        omega.sub(&lin.mul(&tw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, l: u32) -> CarlitzContext {
        CarlitzContext::new(p, l, 40, 12).unwrap()
    }

    #[test]
    fn small_d() {
        let c = ctx(3, 1);
        assert_eq!(c.carlitz_d(0), Poly::one(c.field()));
        let d1 = c.theta_pow(3).sub(&c.theta_pow(1));
        assert_eq!(c.carlitz_d(1), d1);
        let d2 = c.theta_pow(9).sub(&c.theta_pow(1)).mul(&d1.pow(3));
        assert_eq!(c.carlitz_d(2), d2);
    }

    #[test]
    fn factorial_digits() {
        let c = ctx(3, 1);
        for s in 0..3 {
            assert_eq!(c.carlitz_factorial(s), Poly::one(c.field()));
        }
        assert_eq!(c.carlitz_factorial(3), c.carlitz_d(1));
        // 14 = 2 + 1*3 + 1*9
        let expect = c.carlitz_d(1).mul(&c.carlitz_d(2));
        assert_eq!(c.carlitz_factorial(14 - 2), expect);
        assert_eq!(c.carlitz_factorial(14), expect);
    }

    #[test]
    fn omega_low_coefficients() {
        for (p, l) in [(2, 1), (3, 1), (2, 2)] {
            let c = ctx(p, l);
            let q = c.q();
            let om = c.omega_series(None, 6, 40);
            let c0 = om.coeff(0).unwrap();
            assert_eq!(c0.valuation(), Some(q as i64));
            assert_eq!(c0.leading(), Some(FfElem::ONE));
            // t^1: -z^q (theta^{-q} + theta^{-q^2} + theta^{-q^3})
            let mut s = LaurentSeries::zero(c.field(), q);
            for i in 1..=3 {
                s = s.add(&LaurentSeries::theta_power(c.field(), q, -(q.pow(i) as i64)));
            }
            let expect = s.neg().shift(q as i64);
            let got = om.coeff(1).unwrap();
            let cmp = got.eq_to_prec(&expect.truncate(q as i64 + (q as i64 - 1) * (q.pow(4) as i64)));
            assert!(cmp.is_equal(), "{p},{l}: {cmp:?}");
            assert!(om.check_certificate());
        }
    }

    #[test]
    fn functional_equation_and_negative_controls() {
        for (p, l) in [(2, 1), (3, 1), (2, 2)] {
            let c = ctx(p, l);
            let om = c.omega_series(None, 12, 40);
            let r = c.omega_functional_residual(&om, 40);
            assert!(r.passed, "{p},{l}: {r:?}");
            let bad = c.omega_series_dropping(1, 12, 40);
            let r = c.omega_functional_residual(&bad, 40);
            assert!(!r.passed && r.witness.is_some(), "{p},{l}: {r:?}");
            let zero = TateElement::zero(c.field(), c.q());
            assert!(c.omega_functional_residual(&zero, 40).precheck.is_some());
        }
    }

    #[test]
    fn pi_tilde_leading_terms() {
        let c = ctx(3, 1);
        let pi = c.pi_tilde(30);
        assert_eq!(pi.valuation(), Some(-3));
        assert_eq!(pi.leading(), Some(c.field().from_int(-1)));
        assert_eq!(pi.norm(), Some(num_rational::Ratio::new(3, 2)));
        // (1 - theta^{-2})^{-1} = 1 + z^4 + ..., so pi~ = -z^-3 - z + O(z^3) before i = 2 contributes at z^16
        assert_eq!(pi.coeff(1), Some(c.field().from_int(-1)));
        assert_eq!(pi.coeff(0), Some(FfElem::ZERO));
        let c2 = ctx(2, 1);
        assert_eq!(c2.pi_tilde(20).leading(), Some(FfElem::ONE));
    }

    #[test]
    fn product_formula_against_omega_value() {
        for (p, l) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let c = ctx(p, l);
            let q = c.q() as i64;
            let prod = c.pi_tilde(50).mul(&c.omega_value(50 + q).unwrap());
            let expect = if p == 2 { FfElem::ONE } else { c.field().from_int(-1) };
            let cmp = prod.eq_to_prec(&LaurentSeries::monomial(c.field(), c.q(), expect, 0));
            assert_eq!(cmp, crate::laurent::Comparison::Equal { precision: Some(50) }, "{p},{l}");
        }
    }
}
