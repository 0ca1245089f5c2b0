//! Parser for polynomials in `t` and `theta` with integer coefficients,
//! e.g. `t^2 - theta*t + 2`.

use fzeta_core::ffield::FieldSpec;
use fzeta_core::poly::{BiPoly, Poly};

fn parse_power(factor: &str, var: &str) -> Option<Result<usize, String>> {
    let rest = factor.strip_prefix(var)?;
    if rest.is_empty() {
        return Some(Ok(1));
    }
    let exp = rest.strip_prefix('^')?;
    Some(exp.parse::<usize>().map_err(|_| format!("bad exponent in '{factor}'")))
}

fn parse_term(field: &FieldSpec, term: &str) -> Result<BiPoly, String> {
    let mut coeff: i64 = 1;
    let (mut a, mut b) = (0usize, 0usize);
    for factor in term.split('*').map(str::trim) {
        if factor.is_empty() {
            return Err(format!("empty factor in '{term}'"));
        }
        // `theta` must be tried before `t`
        if let Some(e) = parse_power(factor, "theta") {
            a += e?;
        } else if let Some(e) = parse_power(factor, "t") {
            b += e?;
        } else {
            let c: i64 = factor.parse().map_err(|_| format!("unrecognized factor '{factor}'"))?;
            coeff = coeff.checked_mul(c).ok_or("coefficient overflow")?;
        }
    }
    let theta = Poly::monomial(field, field.from_int(coeff), a);
    let mut coeffs = vec![Poly::zero(field); b + 1];
    coeffs[b] = theta;
    Ok(BiPoly::new(field, coeffs))
}

pub fn parse_bipoly(field: &FieldSpec, text: &str) -> Result<BiPoly, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut acc = BiPoly::zero(field);
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut negative = false;
    for i in 0..=bytes.len() {
        let at_sign = i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') && i > 0 && bytes[i - 1] != b'^';
        if i == bytes.len() || at_sign {
            let term = &compact[start..i];
            if !term.is_empty() {
                let t = parse_term(field, term)?;
                acc = if negative { acc.sub(&t) } else { acc.add(&t) };
            } else if i > 0 {
                return Err(format!("dangling sign in '{text}'"));
            }
            if i < bytes.len() {
                negative = bytes[i] == b'-';
            }
            start = i + 1;
        } else if i == 0 && (bytes[0] == b'-' || bytes[0] == b'+') {
            negative = bytes[0] == b'-';
            start = 1;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_terms() {
        let f = FieldSpec::new(3, 1).unwrap();
        let p = parse_bipoly(&f, "t^2 - theta*t + 2").unwrap();
        let expect = BiPoly::t(&f)
            .pow(2)
            .sub(&BiPoly::t(&f).mul(&BiPoly::from_theta(&Poly::x(&f))))
            .add(&BiPoly::constant(&f, f.from_int(2)));
        assert_eq!(p, expect);
        assert_eq!(parse_bipoly(&f, "-1").unwrap(), BiPoly::constant(&f, f.from_int(-1)));
        assert_eq!(parse_bipoly(&f, "0").unwrap(), BiPoly::zero(&f));
        assert!(parse_bipoly(&f, "x + 1").is_err());
        assert!(parse_bipoly(&f, "t +").is_err());
    }
}
