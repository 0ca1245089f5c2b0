//! Matrices of pre-t-motives attached to Carlitz multiple polylogarithms,
//! their rigid analytic trivializations, and the block-group shells built
//! from sub-closed index sets.
//!
//! Frobenius equations are always checked in the positively twisted form
//! `Psi = Phi^{(l)} Psi^{(l)}`, so `Phi` is stored as `Phi^{(l)}` and every
//! entry stays polynomial.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::carlitz::{CarlitzContext, Residual};
use crate::error::{Error, Result};
use crate::ffield::{FfElem, FieldSpec};
use crate::laurent::{Comparison, LaurentSeries};
use crate::poly::BiPoly;
use crate::special::{cmpl_series, CmplSpec, Index, IndexSet};
use crate::tate::{TateElement, ZeroCheck};

#[derive(Clone, Debug)]
pub enum Entries {
    /// Exact entries of `Phi^{(l)}`.
    Phi(Vec<BiPoly>),
    /// Series entries of `Psi`.
    Psi(Vec<TateElement>),
}

#[derive(Clone, Debug)]
pub struct MotiveMatrix {
    field: FieldSpec,
    q: u64,
    level: u32,
    size: usize,
    entries: Entries,
}

/// Serialized form of a [`MotiveMatrix`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MatrixRecord {
    pub level: u32,
    pub size: usize,
    pub kind: &'static str,
    /// Twist already applied to the stored entries (1 for Phi: the matrix
    /// stored is `Phi^{(l)}`, whose untwisted form has `u^{(-l)}` entries).
    pub stored_twist: u32,
    pub entries: Vec<String>,
}

impl MotiveMatrix {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn is_phi(&self) -> bool {
        matches!(self.entries, Entries::Phi(_))
    }

    pub fn phi_entry(&self, i: usize, j: usize) -> Option<&BiPoly> {
        match &self.entries {
            Entries::Phi(v) => v.get(i * self.size + j),
            Entries::Psi(_) => None,
        }
    }

    pub fn psi_entry(&self, i: usize, j: usize) -> Option<&TateElement> {
        match &self.entries {
            Entries::Psi(v) => v.get(i * self.size + j),
            Entries::Phi(_) => None,
        }
    }

    /// Replaces one entry of a Phi matrix.
    pub fn with_phi_entry(&self, i: usize, j: usize, value: BiPoly) -> Result<Self> {
        let mut m = self.clone();
        match &mut m.entries {
            Entries::Phi(v) => v[i * self.size + j] = value,
            Entries::Psi(_) => return Err(Error::Shape("not a Phi matrix".into())),
        }
        Ok(m)
    }

    /// Replaces one entry of a Psi matrix.
    pub fn with_psi_entry(&self, i: usize, j: usize, value: TateElement) -> Result<Self> {
        let mut m = self.clone();
        match &mut m.entries {
            Entries::Psi(v) => v[i * self.size + j] = value,
            Entries::Phi(_) => return Err(Error::Shape("not a Psi matrix".into())),
        }
        Ok(m)
    }

    /// `(t - theta^q)^{sum of weights}`, the determinant of a triangular Phi.
    pub fn phi_determinant(&self) -> Option<BiPoly> {
        let Entries::Phi(v) = &self.entries else { return None };
        let n = self.size;
        Some((0..n).fold(BiPoly::one(&self.field), |acc, i| acc.mul(&v[i * n + i])))
    }

    pub fn record(&self) -> MatrixRecord {
        let (kind, stored_twist, entries) = match &self.entries {
            Entries::Phi(v) => ("phi-exact", 1, v.iter().map(|e| e.format()).collect()),
            Entries::Psi(v) => ("psi-series", 0, v.iter().map(|e| e.to_text()).collect()),
        };
        MatrixRecord { level: self.level, size: self.size, kind, stored_twist, entries }
    }
}

/// `(t - theta^q)^w` as an exact polynomial.
fn linear_power(ctx: &CarlitzContext, w: u64) -> BiPoly {
    BiPoly::t_minus_theta_power(ctx.field(), ctx.q() as usize).pow(w)
}

/// Suffix weights `w_i = s_i + ... + s_d`, with a trailing 0.
fn suffix_weights(s: &Index) -> Vec<u64> {
    let e = s.entries();
    (0..=e.len()).map(|i| e[i..].iter().sum()).collect()
}

/// `Phi^{(l)}` for `M_l[u; s]`: diagonal `(t - theta^q)^{w_i}`, subdiagonal
/// `(t - theta^q)^{w_i} u_i`, last diagonal entry 1.
pub fn phi_build(ctx: &CarlitzContext, u: &[BiPoly], s: &Index) -> Result<MotiveMatrix> {
    let d = s.depth();
    if u.len() != d {
        return Err(Error::Shape(format!("{} arguments for an index of depth {d}", u.len())));
    }
    let n = d + 1;
    let w = suffix_weights(s);
    let mut v = vec![BiPoly::zero(ctx.field()); n * n];
    for i in 0..d {
        let lp = linear_power(ctx, w[i]);
        v[(i + 1) * n + i] = lp.mul(&u[i]);
        v[i * n + i] = lp;
    }
    v[n * n - 1] = BiPoly::one(ctx.field());
    Ok(MotiveMatrix { field: ctx.field().clone(), q: ctx.q(), level: ctx.l(), size: n, entries: Entries::Phi(v) })
}

/// `Phi^{(l)} = (t - theta^q)` for the Carlitz motive.
pub fn phi_carlitz(ctx: &CarlitzContext) -> MotiveMatrix {
    MotiveMatrix {
        field: ctx.field().clone(),
        q: ctx.q(),
        level: ctx.l(),
        size: 1,
        entries: Entries::Phi(vec![linear_power(ctx, 1)]),
    }
}

/// `Psi = (Omega)` for the Carlitz motive.
pub fn psi_carlitz(ctx: &CarlitzContext, tdeg: usize, prec: i64) -> MotiveMatrix {
    MotiveMatrix {
        field: ctx.field().clone(),
        q: ctx.q(),
        level: ctx.l(),
        size: 1,
        entries: Entries::Psi(vec![ctx.omega_series(None, tdeg, prec)]),
    }
}

/// The series `L_{j,i}` (0-based, `j > i`) for the window `(s_i, ..., s_{j-1})`.
fn window_series(ctx: &CarlitzContext, spec: &CmplSpec, i: usize, j: usize, tdeg: usize, prec: i64) -> Result<TateElement> {
    cmpl_series(ctx, &spec.window(i, j), tdeg, prec)
}

/// The trivialization `Psi`: entry `(j, i)` is `Omega^{w_i} L_{j,i}`,
/// diagonal `Omega^{w_i}`, last diagonal entry 1. Every coefficient `k` is
/// known to at least `O(z^{prec + (q-1)k})`.
pub fn psi_build(ctx: &CarlitzContext, u: &[BiPoly], s: &Index, tdeg: usize, prec: i64) -> Result<MotiveMatrix> {
    let spec = CmplSpec::new(u.to_vec(), s.clone())?;
    let d = s.depth();
    let n = d + 1;
    let w = suffix_weights(s);
    let (f, q) = (ctx.field(), ctx.q());
    let omega = ctx.omega_series(None, tdeg, prec);
    let mut v = vec![TateElement::zero(f, q); n * n];
    for i in 0..n {
        let om = if w[i] == 0 { TateElement::one(f, q) } else { omega.pow(w[i]).truncate_weighted(prec) };
        for j in i + 1..n {
            let l = window_series(ctx, &spec, i, j, tdeg, prec)?;
            v[j * n + i] = om.mul(&l).truncate_weighted(prec);
        }
        v[i * n + i] = om;
    }
    Ok(MotiveMatrix { field: f.clone(), q, level: ctx.l(), size: n, entries: Entries::Psi(v) })
}

/// Block-diagonal sum of two matrices of the same kind and level.
pub fn direct_sum(a: &MotiveMatrix, b: &MotiveMatrix) -> Result<MotiveMatrix> {
    if a.level != b.level || a.q != b.q || a.field != b.field {
        return Err(Error::Shape("direct sum of matrices at different levels".into()));
    }
    let n = a.size + b.size;
    let place = |i: usize, j: usize| -> Option<(bool, usize)> {
        if i < a.size && j < a.size {
            Some((true, i * a.size + j))
        } else if i >= a.size && j >= a.size {
            Some((false, (i - a.size) * b.size + (j - a.size)))
        } else {
            None
        }
    };
    let entries = match (&a.entries, &b.entries) {
        (Entries::Phi(x), Entries::Phi(y)) => Entries::Phi(
            (0..n * n)
                .map(|k| match place(k / n, k % n) {
                    Some((true, idx)) => x[idx].clone(),
                    Some((false, idx)) => y[idx].clone(),
                    None => BiPoly::zero(&a.field),
                })
                .collect(),
        ),
        (Entries::Psi(x), Entries::Psi(y)) => Entries::Psi(
            (0..n * n)
                .map(|k| match place(k / n, k % n) {
                    Some((true, idx)) => x[idx].clone(),
                    Some((false, idx)) => y[idx].clone(),
                    None => TateElement::zero(&a.field, a.q),
                })
                .collect(),
        ),
        _ => return Err(Error::Shape("direct sum of a Phi and a Psi matrix".into())),
    };
    Ok(MotiveMatrix { field: a.field.clone(), q: a.q, level: a.level, size: n, entries })
}

/// `(Phi')^{(ls)} = Phi^{(l)} Phi^{(2l)} ... Phi^{(sl)}` for the `s`-th derived motive, at level `l s`.
pub fn derived_product(phi: &MotiveMatrix, s: u32) -> Result<MotiveMatrix> {
    let Entries::Phi(base) = &phi.entries else {
        return Err(Error::Shape("derived product needs a Phi matrix".into()));
    };
    if s == 0 {
        return Err(Error::Shape("derived product needs s >= 1".into()));
    }
    let n = phi.size;
    let mut acc = base.clone();
    for k in 1..s {
        let tw: Vec<BiPoly> = base.iter().map(|e| e.twist(k * phi.level)).collect();
        acc = bipoly_matmul(&phi.field, &acc, &tw, n);
    }
    Ok(MotiveMatrix { field: phi.field.clone(), q: phi.q, level: phi.level * s, size: n, entries: Entries::Phi(acc) })
}

fn bipoly_matmul(f: &FieldSpec, a: &[BiPoly], b: &[BiPoly], n: usize) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::zero(f); n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k * n + j].is_zero() {
                    continue;
                }
                out[i * n + j] = out[i * n + j].add(&a[i * n + k].mul(&b[k * n + j]));
            }
        }
    }
    out
}

/// Per-entry outcome of a Frobenius residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryResidual {
    pub row: usize,
    pub col: usize,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub entries: Vec<EntryResidual>,
    /// Least floor over all entries (`None` if every difference is exact).
    pub floor: Option<i64>,
    pub required: i64,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.residual.passed)
    }

    /// First entry with a nonzero difference, as `(row, col, t_degree, z_exponent)`.
    pub fn witness(&self) -> Option<(usize, usize, usize, i64)> {
        self.entries
            .iter()
            .find_map(|e| e.residual.witness.map(|(k, v)| (e.row, e.col, k, v)))
    }

    /// A genuine mismatch, as opposed to insufficient precision.
    pub fn is_failure(&self) -> bool {
        self.witness().is_some()
    }
}

/// Largest weighted-valuation loss when multiplying by an entry of `phi`:
/// `-min_k (v(phi_k) - (q-1)k)`.
fn phi_loss(q: u64, v: &[BiPoly]) -> i64 {
    let e = q as i64 - 1;
    v.iter()
        .flat_map(|b| {
            b.coeffs().iter().enumerate().filter_map(move |(k, c)| {
                c.degree().map(|deg| -(deg as i64) * e - e * k as i64)
            })
        })
        .min()
        .map_or(0, |m| -m.min(0))
}

/// `Psi - Phi^{(l)} Psi^{(l)}` entrywise, where `l` is the level of `phi`;
/// passes iff every entry vanishes with weighted floor at least `required`.
pub fn frobenius_residual(phi: &MotiveMatrix, psi: &MotiveMatrix, required: i64) -> Result<ResidualReport> {
    let (Entries::Phi(a), Entries::Psi(b)) = (&phi.entries, &psi.entries) else {
        return Err(Error::Shape("expected a Phi and a Psi matrix".into()));
    };
    if phi.size != psi.size {
        return Err(Error::Shape(format!("Phi is {0}x{0} but Psi is {1}x{1}", phi.size, psi.size)));
    }
    if phi.q != psi.q || phi.field != psi.field || !phi.level.is_multiple_of(psi.level) {
        return Err(Error::MixedLevels(phi.q, psi.q));
    }
    let n = phi.size;
    let (f, q) = (&phi.field, phi.q);
    let cap = b
        .iter()
        .filter_map(|x| x.weighted_precision())
        .min()
        .unwrap_or(required)
        .max(required)
        + phi_loss(q, a);
    let tw: Vec<TateElement> = b.iter().map(|x| x.twist_truncated(phi.level, cap)).collect();
    let a: Vec<TateElement> = a.iter().map(|x| TateElement::from_bipoly(x, q)).collect();
    let mut entries = Vec::with_capacity(n * n);
    let mut floor: Option<i64> = None;
    for i in 0..n {
        for j in 0..n {
            let mut rhs = TateElement::zero(f, q);
            for k in 0..n {
                if a[i * n + k].is_exact() && a[i * n + k].check_zero() == (ZeroCheck::Zero { floor: None }) {
                    continue;
                }
                rhs = rhs.add(&a[i * n + k].mul(&tw[k * n + j]));
            }
            let diff = b[i * n + j].sub(&rhs);
            let residual = Residual::from_difference(&diff, required);
            if let Some(fl) = residual.floor {
                floor = Some(floor.map_or(fl, |x: i64| x.min(fl)));
            }
            entries.push(EntryResidual { row: i, col: j, residual });
        }
    }
    Ok(ResidualReport { entries, floor, required })
}

/// Outcome of single-entry mutation testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationReport {
    /// `(matrix, row, col)` for every mutant, with whether it was detected.
    pub mutants: Vec<(&'static str, usize, usize, bool)>,
}

impl MutationReport {
    pub fn killed(&self) -> usize {
        self.mutants.iter().filter(|m| m.3).count()
    }

    pub fn total(&self) -> usize {
        self.mutants.len()
    }

    pub fn kill_rate(&self) -> f64 {
        if self.mutants.is_empty() {
            return 1.0;
        }
        self.killed() as f64 / self.total() as f64
    }
}

/// Perturbs every entry of `Phi^{(l)}` (by adding 1) and of `Psi` (by adding
/// `z` to the constant coefficient), one at a time, and records whether the
/// residual detects each mutant as a genuine mismatch.
pub fn mutation_test(phi: &MotiveMatrix, psi: &MotiveMatrix, required: i64) -> Result<MutationReport> {
    let n = phi.size;
    let (f, q) = (&phi.field, phi.q);
    let mut mutants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = phi.phi_entry(i, j).unwrap().add(&BiPoly::one(f));
            let m = phi.with_phi_entry(i, j, e)?;
            mutants.push(("phi", i, j, frobenius_residual(&m, psi, required)?.is_failure()));
        }
    }
    let bump = TateElement::constant(LaurentSeries::monomial(f, q, FfElem::ONE, 1));
    for i in 0..n {
        for j in 0..n {
            let e = psi.psi_entry(i, j).unwrap().add(&bump);
            let m = psi.with_psi_entry(i, j, e)?;
            mutants.push(("psi", i, j, frobenius_residual(phi, &m, required)?.is_failure()));
        }
    }
    Ok(MutationReport { mutants })
}

/// Collapsed `(i, j)` component of `Psi^{-1} Psi` (1-based positions).
#[derive(Clone, Debug)]
pub struct PsiTildeReport {
    pub i: usize,
    pub j: usize,
    /// For `i > j`: the alternating chain sum, which must vanish.
    pub zero_check: Option<ZeroCheck>,
    /// For `i = j`: `Omega(theta)^{-w} Omega(theta)^{w}` compared with 1.
    pub diagonal: Option<Comparison>,
    pub required: i64,
}

impl PsiTildeReport {
    pub fn passed(&self) -> bool {
        if let Some(z) = &self.zero_check {
            return matches!(z, ZeroCheck::Zero { floor } if floor.is_none_or(|f| f >= self.required));
        }
        match &self.diagonal {
            Some(Comparison::Equal { precision }) => precision.is_none_or(|p| p >= self.required),
            _ => false,
        }
    }
}

/// Checks the `(i, j)` component of `Psi^{-1} Psi` for the Anderson–Thakur
/// arguments of `s`, with the tensor collapsed to ordinary multiplication:
/// for `i > j`,
/// `Omega^{w_j - w_i} sum_n sum_m (-1)^m sum_{n = k_0 < ... < k_m = i} L_{k_m,k_{m-1}} ... L_{k_1,k_0} L_{n,j}`
/// vanishes; for `i = j` the component is `(Omega^{-1} Omega)^{w_i} = 1`.
pub fn psi_tilde_component(ctx: &CarlitzContext, s: &Index, i: usize, j: usize, tdeg: usize, prec: i64) -> Result<PsiTildeReport> {
    let n = s.depth() + 1;
    if i == 0 || j == 0 || i > n || j > n || i < j {
        return Err(Error::Shape(format!("component ({i},{j}) needs n >= i >= j >= 1 with n = {n}")));
    }
    let (f, q) = (ctx.field(), ctx.q());
    let w = suffix_weights(s);
    let (i0, j0) = (i - 1, j - 1);
    if i0 == j0 {
        let val = ctx.omega_value(prec + q as i64)?.pow(w[i0]);
        let back = val.inv_to(prec - val.valuation().unwrap_or(0))?.mul(&val).truncate(prec);
        let diagonal = back.compare_with_floor(&LaurentSeries::one(f, q), Some(prec));
        return Ok(PsiTildeReport { i, j, zero_check: None, diagonal: Some(diagonal), required: prec });
    }
    let spec = CmplSpec::anderson_thakur(ctx, s)?;
    // L[k][k'] for k > k' (0-based)
    let mut l: BTreeMap<(usize, usize), TateElement> = BTreeMap::new();
    for a in j0..=i0 {
        for b in j0..a {
            l.insert((a, b), window_series(ctx, &spec, b, a, tdeg, prec)?);
        }
    }
    let one = TateElement::one(f, q);
    let get = |a: usize, b: usize| -> TateElement { if a == b { one.clone() } else { l[&(a, b)].clone() } };
    // chain sums c[n] = sum over chains n = k_0 < ... < k_m = i of (-1)^m prod L
    let mut c: BTreeMap<usize, TateElement> = BTreeMap::new();
    c.insert(i0, one.clone());
    for nn in (j0..i0).rev() {
        let mut acc = TateElement::zero(f, q);
        for k in nn + 1..=i0 {
            acc = acc.sub(&c[&k].mul(&get(k, nn)));
        }
        c.insert(nn, acc.truncate_weighted(prec));
    }
    let mut total = TateElement::zero(f, q);
    for nn in j0..=i0 {
        total = total.add(&c[&nn].mul(&get(nn, j0)));
    }
    let om = ctx.omega_series(None, tdeg, prec);
    let total = om.pow(w[j0] - w[i0]).mul(&total).truncate_weighted(prec);
    Ok(PsiTildeReport { i, j, zero_check: Some(total.check_zero()), diagonal: None, required: prec })
}

/// A square matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfMatrix {
    field: FieldSpec,
    n: usize,
    data: Vec<FfElem>,
}

impl FfMatrix {
    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut data = vec![FfElem::ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = FfElem::ONE;
        }
        FfMatrix { field: field.clone(), n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FfElem {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FfElem) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (f, n) = (&self.field, self.n);
        let mut data = vec![FfElem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = f.add(data[i * n + j], f.mul(a, other.get(k, j)));
                }
            }
        }
        FfMatrix { field: f.clone(), n, data }
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let (f, n) = (&self.field, self.n);
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::DivisionByZero)?;
            for k in 0..n {
                a.data.swap(col * n + k, pivot * n + k);
                inv.data.swap(col * n + k, pivot * n + k);
            }
            let s = f.inv(a.get(col, col))?;
            for k in 0..n {
                a.set(col, k, f.mul(a.get(col, k), s));
                inv.set(col, k, f.mul(inv.get(col, k), s));
            }
            for r in 0..n {
                let factor = a.get(r, col);
                if r == col || factor.is_zero() {
                    continue;
                }
                for k in 0..n {
                    a.set(r, k, f.sub(a.get(r, k), f.mul(factor, a.get(col, k))));
                    inv.set(r, k, f.sub(inv.get(r, k), f.mul(factor, inv.get(col, k))));
                }
            }
        }
        Ok(inv)
    }
}

/// Parameters `(a, {x_s})` of an element of `(a) + X_{s_1} + ... + X_{s_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockShape {
    field: FieldSpec,
    set: IndexSet,
    pub a: FfElem,
    /// One parameter per member of the index set (every window of a member is a member).
    pub x: BTreeMap<Index, FfElem>,
}

fn check_block_set(set: &IndexSet) -> Result<()> {
    if let Some(missing) = set.missing_window() {
        return Err(Error::NotSubClosed(missing.to_string()));
    }
    if !set.is_depth_ordered() {
        return Err(Error::Shape("index set must be enumerated by non-decreasing depth".into()));
    }
    Ok(())
}

impl BlockShape {
    /// `x` may omit indices; they default to 0.
    pub fn new(field: &FieldSpec, set: &IndexSet, a: FfElem, x: BTreeMap<Index, FfElem>) -> Result<Self> {
        check_block_set(set)?;
        if a.is_zero() {
            return Err(Error::ZeroScalar);
        }
        if let Some(k) = x.keys().find(|k| !set.contains(k)) {
            return Err(Error::BadIndex(format!("{k} is not in the index set")));
        }
        let x = set.indices().iter().map(|s| (s.clone(), x.get(s).copied().unwrap_or(FfElem::ZERO))).collect();
        Ok(BlockShape { field: field.clone(), set: set.clone(), a, x })
    }

    pub fn random(field: &FieldSpec, set: &IndexSet, rng: &mut ChaCha8Rng) -> Result<Self> {
        let a = field.random_nonzero(rng);
        let x = set.indices().iter().map(|s| (s.clone(), field.random(rng))).collect();
        Self::new(field, set, a, x)
    }

    /// `1 + sum (dep s + 1)`.
    pub fn dimension(set: &IndexSet) -> usize {
        1 + set.indices().iter().map(|s| s.depth() + 1).sum::<usize>()
    }

    /// The realized matrix. In the block for `s = (s_1, ..., s_d)`, entry
    /// `(r, c)` with `r > c` is `a^{s_{c+1} + ... + s_d} x_{(s_{c+1}, ..., s_r)}`
    /// (1-based entries of `s`), and the diagonal is `a^{s_{c+1} + ... + s_d}`.
    pub fn realize(&self) -> FfMatrix {
        let f = &self.field;
        let mut m = FfMatrix::identity(f, Self::dimension(&self.set));
        m.set(0, 0, self.a);
        let mut base = 1;
        for s in self.set.indices() {
            let w = suffix_weights(s);
            let d = s.depth();
            for c in 0..=d {
                let ac = f.pow(self.a, w[c] as u128);
                m.set(base + c, base + c, ac);
                for r in c + 1..=d {
                    m.set(base + r, base + c, f.mul(ac, self.x[&s.window(c, r)]));
                }
            }
            base += d + 1;
        }
        m
    }

    /// Recovers the parameters, checking every structural constraint.
    pub fn parse(field: &FieldSpec, set: &IndexSet, m: &FfMatrix) -> Result<Self> {
        check_block_set(set)?;
        let n = Self::dimension(set);
        if m.size() != n {
            return Err(Error::Shape(format!("expected a {n}x{n} matrix, got {0}x{0}", m.size())));
        }
        let a = m.get(0, 0);
        if a.is_zero() {
            return Err(Error::ZeroScalar);
        }
        // block boundaries
        let mut block_of = vec![0usize; n];
        let mut base = 1;
        for (b, s) in set.indices().iter().enumerate() {
            for k in 0..=s.depth() {
                block_of[base + k] = b + 1;
            }
            base += s.depth() + 1;
        }
        for r in 0..n {
            for c in 0..n {
                let outside = block_of[r] != block_of[c] || c > r;
                if outside && !m.get(r, c).is_zero() {
                    return Err(Error::Parse(format!("entry ({r},{c}) must vanish")));
                }
            }
        }
        let mut x: BTreeMap<Index, FfElem> = BTreeMap::new();
        let mut base = 1;
        for s in set.indices() {
            let w = suffix_weights(s);
            let d = s.depth();
            for c in 0..=d {
                let ac = field.pow(a, w[c] as u128);
                if m.get(base + c, base + c) != ac {
                    return Err(Error::Parse(format!("diagonal entry {} is not a^{}", base + c, w[c])));
                }
                let ac_inv = field.inv(ac)?;
                for r in c + 1..=d {
                    let key = s.window(c, r);
                    let val = field.mul(m.get(base + r, base + c), ac_inv);
                    match x.get(&key) {
                        Some(&old) if old != val => {
                            return Err(Error::Parse(format!("inconsistent values for x_{key}")));
                        }
                        _ => {
                            x.insert(key, val);
                        }
                    }
                }
            }
            base += d + 1;
        }
        Self::new(field, set, a, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub samples: usize,
    pub product_failures: Vec<usize>,
    pub inverse_failures: Vec<usize>,
    pub roundtrip_failures: Vec<usize>,
    /// Total degree bound of the identities in the parameters.
    pub degree_bound: u64,
    pub field_order: u64,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.product_failures.is_empty() && self.inverse_failures.is_empty() && self.roundtrip_failures.is_empty()
    }
}

/// Degree bound `3 (W + 1)` with `W` the largest weight in the set.
fn block_degree_bound(set: &IndexSet) -> u64 {
    let w = set.indices().iter().map(|s| s.weight()).max().unwrap_or(0);
    3 * (w + 1)
}

/// For `samples` seeded random pairs: the product parses with parameter
/// `a a'`, the inverse parses with `a^{-1}`, and parse inverts realize.
pub fn block_closure_check(set: &IndexSet, samples: usize, seed: u64, field: &FieldSpec) -> Result<ClosureReport> {
    check_block_set(set)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ClosureReport {
        samples,
        product_failures: vec![],
        inverse_failures: vec![],
        roundtrip_failures: vec![],
        degree_bound: block_degree_bound(set),
        field_order: field.order(),
    };
    for k in 0..samples {
        let g = BlockShape::random(field, set, &mut rng)?;
        let h = BlockShape::random(field, set, &mut rng)?;
        let (mg, mh) = (g.realize(), h.realize());
        if BlockShape::parse(field, set, &mg).as_ref() != Ok(&g) {
            report.roundtrip_failures.push(k);
        }
        match BlockShape::parse(field, set, &mg.mul(&mh)) {
            Ok(p) if p.a == field.mul(g.a, h.a) => {}
            _ => report.product_failures.push(k),
        }
        let inv = mg.inverse()?;
        match BlockShape::parse(field, set, &inv) {
            Ok(p) if p.a == field.inv(g.a)? => {}
            _ => report.inverse_failures.push(k),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorReport {
    pub samples: usize,
    pub weight: u64,
    /// Samples where `Q^{-1} R Q` is not the element with `x = alpha b^{wt}`.
    pub conjugation_failures: Vec<usize>,
    /// Samples where `R Q R^{-1} Q^{-1}` is not the element with `x = alpha (1 - b^{-wt})`.
    pub commutator_failures: Vec<usize>,
    pub degree_bound: u64,
    pub field_order: u64,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.conjugation_failures.is_empty() && self.commutator_failures.is_empty()
    }
}

/// Whether `p` is the element with `a = 1` and a single nonzero-or-zero
/// coordinate `x_target = value`, all other coordinates zero.
fn is_v_element(p: &BlockShape, target: &Index, value: FfElem) -> bool {
    p.a == FfElem::ONE && p.x.iter().all(|(k, &v)| if k == target { v == value } else { v.is_zero() })
}

/// `R` has `a = 1` and only `x_target = alpha`; `Q` has parameter `b` and
/// random coordinates. The target must not be a window of another member. Checks both conjugation and commutator formulas exactly.
pub fn block_commutator_check(set: &IndexSet, target: &Index, samples: usize, seed: u64, field: &FieldSpec) -> Result<CommutatorReport> {
    check_block_set(set)?;
    if !set.contains(target) {
        return Err(Error::BadIndex(format!("{target} is not in the index set")));
    }
    if let Some(outer) = set.indices().iter().find(|s| *s != target && s.windows().contains(target)) {
        return Err(Error::BadIndex(format!("{target} is a window of {outer}; its coordinate subgroup is not normal")));
    }
    let wt = target.weight();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CommutatorReport {
        samples,
        weight: wt,
        conjugation_failures: vec![],
        commutator_failures: vec![],
        degree_bound: block_degree_bound(set),
        field_order: field.order(),
    };
    for k in 0..samples {
        let alpha = field.random(&mut rng);
        let r = BlockShape::new(field, set, FfElem::ONE, BTreeMap::from([(target.clone(), alpha)]))?;
        let q = BlockShape::random(field, set, &mut rng)?;
        let b = q.a;
        let (mr, mq) = (r.realize(), q.realize());
        let (mr_inv, mq_inv) = (mr.inverse()?, mq.inverse()?);
        let bw = field.pow(b, wt as u128);
        let conj = BlockShape::parse(field, set, &mq_inv.mul(&mr).mul(&mq));
        if !conj.is_ok_and(|p| is_v_element(&p, target, field.mul(alpha, bw))) {
            report.conjugation_failures.push(k);
        }
        let expect = field.mul(alpha, field.sub(FfElem::ONE, field.inv(bw)?));
        let comm = BlockShape::parse(field, set, &mr.mul(&mq).mul(&mr_inv).mul(&mq_inv));
        if !comm.is_ok_and(|p| is_v_element(&p, target, expect)) {
            report.commutator_failures.push(k);
        }
    }
    Ok(report)
}
