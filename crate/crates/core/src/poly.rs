//! Exact polynomials over `F_{p^m}`: univariate (used for polynomials in
//! `theta` or in `t`) and bivariate in `(t, theta)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FfElem, FieldSpec};

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FfElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format("x"))
    }
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FfElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly::new(field, vec![])
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly::constant(field, FfElem::ONE)
    }

    pub fn constant(field: &FieldSpec, c: FfElem) -> Self {
        Poly::new(field, vec![c])
    }

    /// `c x^k`
    pub fn monomial(field: &FieldSpec, c: FfElem, k: usize) -> Self {
        let mut v = vec![FfElem::ZERO; k + 1];
        v[k] = c;
        Poly::new(field, v)
    }

    /// `x`
    pub fn x(field: &FieldSpec) -> Self {
        Poly::monomial(field, FfElem::ONE, 1)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FfElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FfElem {
        self.coeffs.get(k).copied().unwrap_or(FfElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FfElem::ONE)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, v)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FfElem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![FfElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
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

    /// Division with remainder.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.coeffs[dd])?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut qv = vec![FfElem::ZERO; r.len() - dd];
        for k in (0..r.len() - dd).rev() {
            let c = f.mul(r[k + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            qv[k] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, di));
            }
        }
        Ok((Poly::new(f, qv), Poly::new(f, r)))
    }

    pub fn eval(&self, x: FfElem) -> FfElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FfElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `n`-fold twist of a polynomial in `theta`: coefficients go to their
    /// `p^n`-th powers and `theta^k` to `theta^{k p^n}`.
    pub fn twist(&self, n: u32) -> Poly {
        let f = &self.field;
        let step = (f.p() as usize).pow(n);
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FfElem::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            v[k * step] = f.frobenius(c, n as i64);
        }
        Poly::new(f, v)
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = f.format_elem(c);
            terms.push(match (k, c == FfElem::ONE) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

/// Polynomial in `t` whose coefficients are polynomials in `theta`;
/// `coeffs[i]` multiplies `t^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: FieldSpec,
    coeffs: Vec<Poly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl BiPoly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        BiPoly::new(field, vec![])
    }

    pub fn one(field: &FieldSpec) -> Self {
        BiPoly::new(field, vec![Poly::one(field)])
    }

    pub fn constant(field: &FieldSpec, c: FfElem) -> Self {
        BiPoly::new(field, vec![Poly::constant(field, c)])
    }

    /// `t`
    pub fn t(field: &FieldSpec) -> Self {
        BiPoly::new(field, vec![Poly::zero(field), Poly::one(field)])
    }

    /// A polynomial in `theta` alone.
    pub fn from_theta(p: &Poly) -> Self {
        BiPoly::new(p.field(), vec![p.clone()])
    }

    /// A polynomial in `t` alone.
    pub fn from_t(p: &Poly) -> Self {
        let f = p.field();
        BiPoly::new(f, p.coeffs().iter().map(|&c| Poly::constant(f, c)).collect())
    }

    /// `t - theta^k`
    pub fn t_minus_theta_power(field: &FieldSpec, k: usize) -> Self {
        BiPoly::new(
            field,
            vec![Poly::monomial(field, field.neg(FfElem::ONE), k), Poly::one(field)],
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_theta(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new(&self.field, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(Poly::neg).collect())
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut v = vec![Poly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, v)
    }

    pub fn scale_theta(&self, c: &Poly) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one(&self.field);
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

    /// Twist acting on `theta` and the constants; `t` is fixed.
    pub fn twist(&self, n: u32) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.twist(n)).collect())
    }

    /// Exact division by a monic polynomial in `t` with constant coefficients.
    pub fn div_exact_by_t_poly(&self, d: &Poly) -> Result<BiPoly> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if !d.is_monic() {
            return Err(Error::Shape("divisor must be monic".into()));
        }
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return if self.is_zero() { Ok(self.clone()) } else { Err(Error::DivisionByZero) };
        }
        let mut qv = vec![Poly::zero(&self.field); r.len() - dd];
        for k in (0..r.len() - dd).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, &di) in d.coeffs().iter().enumerate() {
                if !di.is_zero() {
                    r[k + i] = r[k + i].sub(&c.scale(di));
                }
            }
            qv[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::DivisionByZero);
        }
        Ok(BiPoly::new(&self.field, qv))
    }

    /// Every coefficient lies in the subfield `F_{p^k}`.
    pub fn coefficients_in_subfield(&self, k: u32) -> bool {
        let f = &self.field;
        self.coeffs
            .iter()
            .flat_map(|c| c.coeffs().iter())
            .all(|&a| f.frobenius(a, k as i64) == a)
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let cs = c.format("theta");
            let single = c.coeffs().iter().filter(|x| !x.is_zero()).count() == 1;
            terms.push(match (i, cs.as_str()) {
                (0, _) => cs.clone(),
                (_, "1") => mono,
                _ if single => format!("{cs}*{mono}"),
                _ => format!("({cs})*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_reconstructs() {
        let f = FieldSpec::new(3, 1).unwrap();
        let a = Poly::new(&f, [1, 2, 0, 1, 2].iter().map(|&c| f.from_int(c)).collect());
        let b = Poly::new(&f, [2, 1, 1].iter().map(|&c| f.from_int(c)).collect());
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn twist_is_frobenius_on_theta() {
        let f = FieldSpec::new(2, 2).unwrap();
        let w = f.basis_root();
        let a = Poly::new(&f, vec![w, FfElem::ONE, w]);
        let t = a.twist(1);
        assert_eq!(t.degree(), Some(4));
        assert_eq!(t.coeff(0), f.frobenius(w, 1));
        // twist(fg) = twist(f) twist(g)
        let b = Poly::new(&f, vec![FfElem::ONE, w]);
        assert_eq!(a.mul(&b).twist(1), a.twist(1).mul(&b.twist(1)));
    }

    #[test]
    fn exact_t_division() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = BiPoly::t_minus_theta_power(&f, 3);
        let d = Poly::new(&f, vec![FfElem::ONE, FfElem::ONE]); // 1 + t
        let prod = a.mul(&BiPoly::from_t(&d));
        assert_eq!(prod.div_exact_by_t_poly(&d).unwrap(), a);
        assert!(a.div_exact_by_t_poly(&d).is_err());
    }
}
