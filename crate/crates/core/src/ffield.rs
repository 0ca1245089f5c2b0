//! Finite fields `F_{p^m}` in a polynomial basis over `F_p`.
//!
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` are the coordinates in the basis `1, w, ..., w^{m-1}` and `w`
//! is a root of the field's modulus. The modulus is the least monic
//! irreducible polynomial of degree `m` when the non-leading coefficients are
//! read as that same base-`p` integer, so equal `(p, m)` always give the same
//! field bit for bit. Multiplication goes through log/exp tables.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of some [`FieldSpec`], encoded as its base-`p` coordinate integer.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FfElem(pub(crate) u32);

impl FfElem {
    pub const ZERO: FfElem = FfElem(0);
    pub const ONE: FfElem = FfElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The coordinate integer of the element.
    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }
}

struct FieldData {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(order - 1)`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field `F_{p^m}` together with its arithmetic tables.
///
/// Cloning is cheap; all clones share the tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p as little-endian coefficient vectors. Only used
// while choosing the modulus and building tables.
fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[k + i] = (r[k + i] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push((n % p as u64) as u32);
        n /= p as u64;
    }
    v
}

fn is_irreducible_fp(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree `m` over `F_p`.
fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut f = digits(low, p, m as usize);
        f.push(1);
        if m == 1 || (f[0] != 0 && is_irreducible_fp(&f, p)) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let m = modulus.len() - 1;
    let da = digits(a as u64, p, m);
    let db = digits(b as u64, p, m);
    let mut prod = vec![0u32; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = ((prod[i + j] as u64 + da[i] as u64 * db[j] as u64) % p as u64) as u32;
        }
    }
    let r = fp_rem(&prod, modulus, p);
    let mut out = 0u64;
    for (i, &c) in r.iter().enumerate() {
        out += c as u64 * (p as u64).pow(i as u32);
    }
    out as u32
}

impl FieldSpec {
    /// Builds `F_{p^m}` with the canonical modulus.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u128).checked_pow(m).filter(|&o| o <= MAX_FIELD_ORDER as u128);
        let order = order.ok_or(Error::FieldTooLarge { p, m })? as u32;
        let p = p as u32;
        let modulus = least_irreducible(p, m);

        let gen = Self::find_generator(p, order, &modulus);
        let n = (order - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, gen, p, &modulus);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        Ok(FieldSpec(Arc::new(FieldData { p, m, order, modulus, exp, log })))
    }

    fn find_generator(p: u32, order: u32, modulus: &[u32]) -> u32 {
        let n = (order - 1) as u64;
        if n == 1 {
            return 1;
        }
        let factors = prime_factors(n);
        let pow = |mut b: u32, mut e: u64| {
            let mut r = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b, p, modulus);
                }
                b = slow_mul(b, b, p, modulus);
                e >>= 1;
            }
            r
        };
        (2..order)
            .find(|&g| factors.iter().all(|&r| pow(g, n / r) != 1))
            .unwrap_or(1)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.p as u64
    }
    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }
    #[inline]
    pub fn order(&self) -> u64 {
        self.0.order as u64
    }
    /// Coefficients of the modulus, constant term first; the last entry is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> FfElem {
        FfElem::ZERO
    }
    #[inline]
    pub fn one(&self) -> FfElem {
        FfElem::ONE
    }

    /// The image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> FfElem {
        FfElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The element `c_0 + c_1 w + ...`; coordinates are reduced mod `p`.
    pub fn from_coords(&self, coords: &[i64]) -> Result<FfElem> {
        if coords.len() > self.0.m as usize {
            return Err(Error::Parse(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.0.m
            )));
        }
        let p = self.0.p as i64;
        let mut v = 0u64;
        for &c in coords.iter().rev() {
            v = v * p as u64 + c.rem_euclid(p) as u64;
        }
        Ok(FfElem(v as u32))
    }

    pub fn from_raw(&self, raw: u32) -> Result<FfElem> {
        if raw < self.0.order {
            Ok(FfElem(raw))
        } else {
            Err(Error::Parse(format!("{raw} is not an element of a field of order {}", self.0.order)))
        }
    }

    pub fn coords(&self, a: FfElem) -> Vec<u32> {
        digits(a.0 as u64, self.0.p, self.0.m as usize)
    }

    /// The generator `w` of the polynomial basis (a root of the modulus).
    pub fn basis_root(&self) -> FfElem {
        if self.0.m == 1 {
            // In the prime field the modulus is x + c; its root is -c.
            self.neg(FfElem(self.0.modulus[0]))
        } else {
            FfElem(self.0.p)
        }
    }

    #[inline]
    pub fn add(&self, a: FfElem, b: FfElem) -> FfElem {
        let d = &*self.0;
        if d.p == 2 {
            return FfElem(a.0 ^ b.0);
        }
        if d.m == 1 {
            let s = a.0 + b.0;
            return FfElem(if s >= d.p { s - d.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..d.m {
            let s = (x % d.p + y % d.p) % d.p;
            out += s * place;
            place *= d.p;
            x /= d.p;
            y /= d.p;
        }
        FfElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FfElem) -> FfElem {
        let d = &*self.0;
        if d.p == 2 {
            return a;
        }
        if d.m == 1 {
            return FfElem(if a.0 == 0 { 0 } else { d.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..d.m {
            let c = x % d.p;
            out += ((d.p - c) % d.p) * place;
            place *= d.p;
            x /= d.p;
        }
        FfElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FfElem, b: FfElem) -> FfElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FfElem, b: FfElem) -> FfElem {
        if a.0 == 0 || b.0 == 0 {
            return FfElem::ZERO;
        }
        let d = &*self.0;
        if d.m == 1 {
            return FfElem(((a.0 as u64 * b.0 as u64) % d.p as u64) as u32);
        }
        FfElem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FfElem) -> Result<FfElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = &*self.0;
        let n = d.order - 1;
        let l = d.log[a.0 as usize];
        Ok(FfElem(d.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FfElem, b: FfElem) -> Result<FfElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any non-negative exponent.
    pub fn pow(&self, a: FfElem, e: u128) -> FfElem {
        if e == 0 {
            return FfElem::ONE;
        }
        if a.is_zero() {
            return FfElem::ZERO;
        }
        let d = &*self.0;
        let n = (d.order - 1) as u128;
        let l = (d.log[a.0 as usize] as u128 * (e % n)) % n;
        FfElem(d.exp[l as usize])
    }

    /// `a^{p^n}`; negative `n` applies the inverse Frobenius.
    pub fn frobenius(&self, a: FfElem, n: i64) -> FfElem {
        let k = n.rem_euclid(self.0.m as i64) as u32;
        if k == 0 || a.is_zero() {
            return a;
        }
        self.pow(a, (self.0.p as u128).pow(k))
    }

    pub fn elements(&self) -> impl Iterator<Item = FfElem> {
        (0..self.0.order).map(FfElem)
    }

    /// Elements of the subfield `F_{p^k}` (those fixed by the `p^k`-Frobenius).
    pub fn subfield_elements(&self, k: u32) -> Vec<FfElem> {
        self.elements().filter(|&a| self.frobenius(a, k as i64) == a).collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        FfElem(rng.gen_range(0..self.0.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        FfElem(rng.gen_range(1..self.0.order))
    }

    /// Canonical text for an element: an integer in the prime field, otherwise
    /// a polynomial in the basis root `w`.
    pub fn format_elem(&self, a: FfElem) -> String {
        if self.0.m == 1 {
            return a.0.to_string();
        }
        let coords = self.coords(a);
        let mut terms = Vec::new();
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else if terms.len() == 1 && !terms[0].contains('*') {
            terms.pop().unwrap()
        } else {
            format!("({})", terms.join("+"))
        }
    }

    /// Inverse of [`format_elem`](Self::format_elem).
    pub fn parse_elem(&self, s: &str) -> Result<FfElem> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
        let mut coords = vec![0i64; self.0.m as usize];
        for term in s.split('+') {
            let term = term.trim();
            let (c, mono) = match term.split_once('*') {
                Some((c, mono)) => (c.trim().parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?, mono.trim()),
                None if term.starts_with('w') => (1, term),
                None => (term.parse::<i64>().map_err(|e| Error::Parse(format!("{term}: {e}")))?, ""),
            };
            let deg = match mono {
                "" => 0usize,
                "w" => 1,
                m => m
                    .strip_prefix("w^")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad monomial {m}")))?,
            };
            if deg >= coords.len() {
                return Err(Error::Parse(format!("degree {deg} too large")));
            }
            coords[deg] += c;
        }
        self.from_coords(&coords)
    }

    /// The embedding of `self` into `sup`, sending the basis root to the least
    /// root of `self`'s modulus inside `sup`.
    pub fn embedding_into(&self, sup: &FieldSpec) -> Result<Embedding> {
        if self.p() != sup.p() || !sup.m().is_multiple_of(self.m()) {
            return Err(Error::BadEmbedding { sub: self.m(), sup: sup.m() });
        }
        let image_of_root = if self.m() == 1 {
            sup.from_int(self.basis_root().0 as i64)
        } else {
            let modulus: Vec<FfElem> = self.modulus().iter().map(|&c| sup.from_int(c as i64)).collect();
            sup.elements()
                .find(|&x| {
                    let mut acc = FfElem::ZERO;
                    for &c in modulus.iter().rev() {
                        acc = sup.add(sup.mul(acc, x), c);
                    }
                    acc.is_zero()
                })
                .expect("an irreducible polynomial of degree dividing m splits in F_{p^m}")
        };
        let mut powers = Vec::with_capacity(self.m() as usize);
        let mut x = FfElem::ONE;
        for _ in 0..self.m() {
            powers.push(x);
            x = sup.mul(x, image_of_root);
        }
        Ok(Embedding { sub: self.clone(), sup: sup.clone(), powers })
    }
}

/// A fixed ring embedding `F_{p^k} -> F_{p^m}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: FieldSpec,
    sup: FieldSpec,
    powers: Vec<FfElem>,
}

impl Embedding {
    pub fn source(&self) -> &FieldSpec {
        &self.sub
    }
    pub fn target(&self) -> &FieldSpec {
        &self.sup
    }
    pub fn apply(&self, a: FfElem) -> FfElem {
        let mut acc = FfElem::ZERO;
        for (c, &w) in self.sub.coords(a).into_iter().zip(&self.powers) {
            if c != 0 {
                acc = self.sup.add(acc, self.sup.mul(self.sup.from_int(c as i64), w));
            }
        }
        acc
    }
}

/// Embeds a single element; see [`FieldSpec::embedding_into`].
pub fn ff_embed(a: FfElem, sub: &FieldSpec, sup: &FieldSpec) -> Result<FfElem> {
    Ok(sub.embedding_into(sup)?.apply(a))
}

/// An element bundled with its field, for call sites that must reject
/// operands from different fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub field: FieldSpec,
    pub value: FfElem,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Element {
    pub fn new(field: &FieldSpec, value: FfElem) -> Self {
        Element { field: field.clone(), value }
    }

    pub fn apply(&self, other: &Element, op: ArithOp) -> Result<Element> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let value = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b)?,
        };
        Ok(Element::new(f, value))
    }

    pub fn pow(&self, e: u128) -> Element {
        Element::new(&self.field, self.field.pow(self.value, e))
    }

    pub fn frobenius(&self, n: i64) -> Element {
        Element::new(&self.field, self.field.frobenius(self.value, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_fields() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.mul(f3.from_int(2), f3.from_int(2)), f3.one());
    }

    #[test]
    fn f4_modulus_is_the_unique_quadratic() {
        // Exhaustive: among x^2, x^2+1, x^2+x, x^2+x+1 only the last has no root in F_2.
        let candidates: Vec<Vec<u32>> = (0..4).map(|low| vec![low & 1, low >> 1, 1]).collect();
        let irreducible: Vec<_> = candidates
            .into_iter()
            .filter(|f| (0..2u32).all(|x| (f[0] + f[1] * x + f[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let w = f4.basis_root();
        assert_eq!(f4.mul(w, f4.add(w, f4.one())), f4.one());
        assert_eq!(f4.frobenius(w, 1), f4.add(w, f4.one()));
        assert_eq!(f4.frobenius(w, 2), w);
    }

    #[test]
    fn deterministic_construction() {
        let a = FieldSpec::new(3, 4).unwrap();
        let b = FieldSpec::new(3, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), Error::ZeroDegree);
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.inv(f.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldSpec::new(2, 2).unwrap();
        let b = FieldSpec::new(2, 3).unwrap();
        let x = Element::new(&a, a.one());
        let y = Element::new(&b, b.one());
        assert_eq!(x.apply(&y, ArithOp::Add).unwrap_err(), Error::MixedFields);
        assert_eq!(x.apply(&x, ArithOp::Add).unwrap().value, a.zero());
    }

    #[test]
    fn frobenius_fixes_everything_after_m_steps() {
        for (p, m) in [(2, 3), (3, 2), (5, 2), (3, 4)] {
            let f = FieldSpec::new(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, f.order() as u128), a);
                let b = f.frobenius(a, 1);
                assert_eq!(f.frobenius(b, -1), a);
            }
        }
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let f = FieldSpec::new(3, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.sub(f.add(a, b), b), a);
            if !b.is_zero() {
                assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
            }
            // Frobenius is a ring endomorphism.
            assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
            assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        }
    }

    #[test]
    fn embeddings() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let f4 = FieldSpec::new(2, 2).unwrap();
        let f16 = FieldSpec::new(2, 4).unwrap();
        assert_eq!(ff_embed(f2.one(), &f2, &f4).unwrap(), f4.one());
        assert_eq!(ff_embed(f2.zero(), &f2, &f4).unwrap(), f4.zero());
        let e = f4.embedding_into(&f16).unwrap();
        let w = e.apply(f4.basis_root());
        // Least root of x^2 + x + 1 in F_16, found by search: it has order 3.
        let roots: Vec<_> = f16
            .elements()
            .filter(|&x| f16.add(f16.add(f16.mul(x, x), x), f16.one()).is_zero())
            .collect();
        assert_eq!(w, roots[0]);
        assert_ne!(w, f16.one());
        assert_eq!(f16.pow(w, 3), f16.one());
        assert!(FieldSpec::new(2, 3).unwrap().embedding_into(&f16).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (a, b) = (f4.random(&mut rng), f4.random(&mut rng));
            assert_eq!(e.apply(f4.add(a, b)), f16.add(e.apply(a), e.apply(b)));
            assert_eq!(e.apply(f4.mul(a, b)), f16.mul(e.apply(a), e.apply(b)));
            assert_eq!(e.apply(f4.frobenius(a, 1)), f16.frobenius(e.apply(a), 1));
        }
    }

    #[test]
    fn text_round_trip() {
        let f = FieldSpec::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse_elem(&f.format_elem(a)).unwrap(), a);
        }
    }
}
