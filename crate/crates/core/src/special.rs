//! Indices, monic power sums, multiple zeta values, Anderson–Thakur
//! polynomials and Carlitz multiple polylogarithms.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::carlitz::CarlitzContext;
use crate::error::{Error, Result};
use crate::ffield::FfElem;
use crate::laurent::{Comparison, LaurentSeries};
use crate::poly::{BiPoly, Poly};
use crate::tate::{Tail, TateElement};

/// Which slot of the generating series carries `H_s`.
pub const AT_SLOT_CONVENTION: &str =
    "H_s/Gamma_{s+1}(t) is the coefficient of x^s in (1 - sum_{i>=0} c_i x^{q^i})^{-1}";

/// Default cap on the number of monic polynomials enumerated for one power sum.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

/// A tuple `(s_1, ..., s_d)` of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Index(Vec<u64>);

impl Index {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::BadIndex("empty index".into()));
        }
        if let Some(pos) = entries.iter().position(|&s| s == 0) {
            return Err(Error::BadIndex(format!("entry {} is zero", pos + 1)));
        }
        Ok(Index(entries))
    }

    /// Parses `"2,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|x| {
                let x = x.trim();
                x.parse::<u64>().map_err(|_| Error::BadIndex(format!("'{x}' in '{text}' is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The window `(s_i, ..., s_{j-1})` with 0-based, half-open bounds.
    pub fn window(&self, i: usize, j: usize) -> Index {
        Index(self.0[i..j].to_vec())
    }

    /// All contiguous windows, including the index itself.
    pub fn windows(&self) -> Vec<Index> {
        let d = self.depth();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..=d {
                out.push(self.window(i, j));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

/// An ordered list of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet(Vec<Index>);

impl IndexSet {
    pub fn new(indices: Vec<Index>) -> Self {
        IndexSet(indices)
    }

    /// Parses `"1,2;3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let v = text.split(';').map(Index::parse).collect::<Result<Vec<_>>>()?;
        Ok(IndexSet(v))
    }

    pub fn indices(&self) -> &[Index] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &Index) -> bool {
        self.0.contains(s)
    }

    /// Every window of every member is a member.
    pub fn is_sub_closed(&self) -> bool {
        self.missing_window().is_none()
    }

    pub fn missing_window(&self) -> Option<Index> {
        self.0.iter().flat_map(|s| s.windows()).find(|w| !self.contains(w))
    }

    /// Members appear in non-decreasing depth.
    pub fn is_depth_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0].depth() <= w[1].depth())
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|s| s.to_text()).collect::<Vec<_>>().join(";")
    }
}

/// The least sub-closed superset, by depth and then lexicographically.
pub fn index_subclosure(set: &IndexSet) -> IndexSet {
    let mut all: Vec<Index> = set.0.iter().flat_map(|s| s.windows()).collect();
    all.sort_by(|a, b| a.depth().cmp(&b.depth()).then_with(|| a.cmp(b)));
    all.dedup();
    IndexSet(all)
}

/// All monic polynomials of degree `d` over the context field.
pub fn monic_polynomials(ctx: &CarlitzContext, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = ctx.q();
    let count = q.pow(d as u32);
    let field = ctx.field();
    (0..count).map(move |mut n| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(field.from_raw((n % q) as u32).expect("raw element in range"));
            n /= q;
        }
        c.push(FfElem::ONE);
        Poly::new(field, c)
    })
}

/// A lower bound for `v_z(S_d(s))`: each term has valuation `s d (q-1)`, and
/// the whole sum is dominated by `1/((theta - theta^q) ... (theta - theta^{q^d}))`.
pub fn power_sum_valuation_bound(q: u64, d: u32, s: u64) -> i64 {
    if d == 0 {
        return 0;
    }
    let q = q as i64;
    let trivial = s as i64 * d as i64 * (q - 1);
    let carlitz = q.saturating_pow(d + 1) - q;
    trivial.max(carlitz)
}

/// `S_d(s) = sum of a^{-s}` over monic `a` of degree `d`, modulo `O(z^prec)`.
pub fn monic_power_sum(ctx: &CarlitzContext, d: u32, s: u64, prec: i64, budget: u128) -> Result<LaurentSeries> {
    let count = (ctx.q() as u128).pow(d);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let q = ctx.q();
    let mut acc = LaurentSeries::zero_to(ctx.field(), q, prec);
    for a in monic_polynomials(ctx, d as usize) {
        let den = LaurentSeries::from_theta_poly(&a.pow(s), q);
        acc = acc.add(&den.inv_to(prec)?);
    }
    Ok(acc)
}

/// A multiple zeta value together with summation statistics.
#[derive(Clone, Debug)]
pub struct MzvValue {
    pub value: LaurentSeries,
    /// Largest degree `d_1` included.
    pub max_degree: u32,
    /// Number of power sums `S_d(s)` evaluated.
    pub power_sums: usize,
    /// Number of monic polynomials enumerated for those power sums.
    pub polynomials: u128,
}

struct PowerSums<'a> {
    ctx: &'a CarlitzContext,
    prec: i64,
    budget: u128,
    cache: HashMap<(u32, u64), LaurentSeries>,
    polynomials: u128,
}

impl<'a> PowerSums<'a> {
    fn get(&mut self, d: u32, s: u64) -> Result<LaurentSeries> {
        if let Some(v) = self.cache.get(&(d, s)) {
            return Ok(v.clone());
        }
        let v = monic_power_sum(self.ctx, d, s, self.prec, self.budget)?;
        self.polynomials += (self.ctx.q() as u128).pow(d);
        self.cache.insert((d, s), v.clone());
        Ok(v)
    }
}

fn mzv_dp(ctx: &CarlitzContext, s: &Index, max_deg: u32, prec: i64, budget: u128) -> Result<MzvValue> {
    let r = s.depth();
    let mut sums = PowerSums { ctx, prec, budget, cache: HashMap::new(), polynomials: 0 };
    let q = ctx.q();
    let zero = LaurentSeries::zero_to(ctx.field(), q, prec);
    // t[d] holds the sum over tuples whose current entry has degree d
    let mut t: Vec<LaurentSeries> = Vec::new();
    for j in (0..r).rev() {
        let lowest = (r - 1 - j) as u32;
        let mut next = Vec::with_capacity(max_deg as usize + 1);
        let mut prefix = zero.clone();
        for d in 0..=max_deg {
            let term = if d < lowest {
                zero.clone()
            } else if j == r - 1 {
                sums.get(d, s.entries()[j])?
            } else {
                sums.get(d, s.entries()[j])?.mul(&prefix)
            };
            if j < r - 1 {
                prefix = prefix.add(&t[d as usize]);
            }
            next.push(term);
        }
        t = next;
    }
    let value = t.iter().fold(zero, |acc, x| acc.add(x));
    Ok(MzvValue { value, max_degree: max_deg, power_sums: sums.cache.len(), polynomials: sums.polynomials })
}

/// `zeta(s_1, ..., s_r)` modulo `O(z^prec)`, summed over decreasing degree tuples.
pub fn mzv_direct(ctx: &CarlitzContext, s: &Index, prec: i64) -> Result<MzvValue> {
    mzv_direct_budgeted(ctx, s, prec, DEFAULT_BUDGET)
}

/// As [`mzv_direct`], refusing any single power sum over more than `budget` polynomials.
pub fn mzv_direct_budgeted(ctx: &CarlitzContext, s: &Index, prec: i64, budget: u128) -> Result<MzvValue> {
    let q = ctx.q();
    let r = s.depth();
    let e = s.entries();
    let rest: i64 = (1..r).map(|j| power_sum_valuation_bound(q, (r - 1 - j) as u32, e[j])).sum();
    let mut max_deg = (r - 1) as u32;
    while power_sum_valuation_bound(q, max_deg + 1, e[0]) + rest < prec {
        max_deg += 1;
    }
    mzv_dp(ctx, s, max_deg, prec, budget)
}

/// The partial sum over tuples with `d_1 <= max_deg`, modulo `O(z^prec)`.
pub fn mzv_partial(ctx: &CarlitzContext, s: &Index, max_deg: u32, prec: i64) -> Result<MzvValue> {
    mzv_dp(ctx, s, max_deg, prec, DEFAULT_BUDGET)
}

/// `H_0, ..., H_{s_max}` as polynomials in `t` and `theta`.
pub fn at_polynomials(ctx: &CarlitzContext, s_max: usize) -> Result<Vec<BiPoly>> {
    let f = ctx.field();
    let q = ctx.q() as usize;
    let as_t = |p: &Poly| p.clone();
    // Gamma_{n+1}(t) and D_i(t) as polynomials in t with constant coefficients
    let gamma_t: Vec<Poly> = (0..=s_max).map(|n| as_t(&ctx.carlitz_factorial(n as u64))).collect();
    let mut levels = 0u32;
    while q.pow(levels + 1) <= s_max {
        levels += 1;
    }
    let d_t: Vec<Poly> = (0..=levels).map(|i| ctx.carlitz_d(i)).collect();
    let numerators: Vec<BiPoly> = (0..=levels)
        .map(|i| {
            let qi = q.pow(i);
            (1..=i).fold(BiPoly::one(f), |acc, j| {
                let tq = BiPoly::from_t(&Poly::monomial(f, FfElem::ONE, qi));
                let thq = BiPoly::from_theta(&Poly::monomial(f, FfElem::ONE, q.pow(j)));
                acc.mul(&tq.sub(&thq))
            })
        })
        .collect();
    let mut h: Vec<BiPoly> = vec![BiPoly::one(f)];
    for s in 1..=s_max {
        let terms: Vec<usize> = (0..=levels as usize).filter(|&i| q.pow(i as u32) <= s).collect();
        let dens: Vec<Poly> = terms.iter().map(|&i| d_t[i].mul(&gamma_t[s - q.pow(i as u32)])).collect();
        let mut num = BiPoly::zero(f);
        for (k, &i) in terms.iter().enumerate() {
            let mut term = numerators[i].mul(&h[s - q.pow(i as u32)]);
            for (k2, den) in dens.iter().enumerate() {
                if k2 != k {
                    term = term.mul(&BiPoly::from_t(den));
                }
            }
            num = num.add(&term);
        }
        let total = dens.iter().fold(Poly::one(f), |acc, d| acc.mul(d));
        let hs = num
            .mul(&BiPoly::from_t(&gamma_t[s]))
            .div_exact_by_t_poly(&total)
            .map_err(|_| Error::NonIntegralAtPolynomial(s))?;
        if !hs.coefficients_in_subfield(ctx.l()) {
            return Err(Error::NonIntegralAtPolynomial(s));
        }
        h.push(hs);
    }
    Ok(h)
}

/// Arguments and index of a Carlitz multiple polylogarithm.
#[derive(Clone, Debug)]
pub struct CmplSpec {
    pub u: Vec<BiPoly>,
    pub s: Index,
}

impl CmplSpec {
    pub fn new(u: Vec<BiPoly>, s: Index) -> Result<Self> {
        if u.len() != s.depth() {
            return Err(Error::Shape(format!("{} arguments for an index of depth {}", u.len(), s.depth())));
        }
        Ok(CmplSpec { u, s })
    }

    /// `u_j = H_{s_j - 1}`.
    pub fn anderson_thakur(ctx: &CarlitzContext, s: &Index) -> Result<Self> {
        let top = *s.entries().iter().max().unwrap() as usize;
        let h = at_polynomials(ctx, top - 1)?;
        let u = s.entries().iter().map(|&sj| h[sj as usize - 1].clone()).collect();
        Self::new(u, s.clone())
    }

    /// The sub-specification on the window `[i, j)`.
    pub fn window(&self, i: usize, j: usize) -> CmplSpec {
        CmplSpec { u: self.u[i..j].to_vec(), s: self.s.window(i, j) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceEntry {
    pub position: usize,
    /// `log_{|theta|} ||u_i||`; `None` for `u_i = 0`.
    pub norm: Option<Ratio<i64>>,
    /// `s_i q / (q - 1)`.
    pub bound: Ratio<i64>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub entries: Vec<ConvergenceEntry>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Checks `||u_i|| < |theta|^{s_i q/(q-1)}` for each argument.
pub fn convergence_check(ctx: &CarlitzContext, spec: &CmplSpec) -> ConvergenceReport {
    let q = ctx.q() as i64;
    let entries = spec
        .u
        .iter()
        .zip(spec.s.entries())
        .enumerate()
        .map(|(i, (u, &s))| {
            let norm = u.degree_theta().map(|d| Ratio::from_integer(d as i64));
            let bound = Ratio::new(s as i64 * q, q - 1);
            ConvergenceEntry { position: i + 1, norm, bound, passed: norm.is_none_or(|n| n < bound) }
        })
        .collect();
    ConvergenceReport { entries }
}

/// `b(t = theta)` for a polynomial in `t` and `theta`.
pub fn bipoly_at_theta(b: &BiPoly) -> Poly {
    let f = b.field();
    b.coeffs()
        .iter()
        .enumerate()
        .fold(Poly::zero(f), |acc, (k, c)| acc.add(&c.mul(&Poly::monomial(f, FfElem::ONE, k))))
}

/// Lower bound for the valuation of the `i`-th term of argument `j` at `t = theta`:
/// `s (q^{i+1} - q) - (q-1)(deg_t u + q^i deg_theta u)`.
fn value_term_bound(q: u64, s: u64, u: &BiPoly, i: u32) -> i64 {
    let q = q as i64;
    let e = u.degree_t().unwrap_or(0) as i64;
    let b = u.degree_theta().unwrap_or(0) as i64;
    let qi = q.pow(i);
    s as i64 * (q * qi - q) - (q - 1) * (e + qi * b)
}

/// `l_i = prod_{k=1}^{i} (theta - theta^{q^k})`.
fn ell(ctx: &CarlitzContext, i: u32) -> Poly {
    let q = ctx.q() as usize;
    (1..=i).fold(Poly::one(ctx.field()), |acc, k| {
        acc.mul(&ctx.theta_pow(1).sub(&ctx.theta_pow(q.pow(k))))
    })
}

struct ValuePlan {
    imax: u32,
    work: i64,
}

fn plan_value(ctx: &CarlitzContext, spec: &CmplSpec, prec: i64) -> Result<ValuePlan> {
    let conv = convergence_check(ctx, spec);
    if let Some(bad) = conv.entries.iter().find(|e| !e.passed) {
        return Err(Error::Divergent { position: bad.position });
    }
    let q = ctx.q();
    let d = spec.s.depth();
    let e = spec.s.entries();
    // entry j (0-based) has i_j >= d - 1 - j
    let minval: Vec<i64> = (0..d).map(|j| value_term_bound(q, e[j], &spec.u[j], (d - 1 - j) as u32)).collect();
    let rest: i64 = minval[1..].iter().sum();
    let mut imax = (d - 1) as u32;
    while value_term_bound(q, e[0], &spec.u[0], imax + 1) + rest < prec {
        imax += 1;
    }
    let work = prec - minval.iter().map(|&m| m.min(0)).sum::<i64>();
    Ok(ValuePlan { imax, work })
}

/// Factor `u^{(il)}(theta) / l_i^s` modulo `O(z^work)`.
fn value_factor(ctx: &CarlitzContext, u: &BiPoly, s: u64, i: u32, ells: &[Poly], work: i64) -> Result<LaurentSeries> {
    let q = ctx.q();
    let num = LaurentSeries::from_theta_poly(&bipoly_at_theta(&u.twist(i * ctx.l())), q);
    let Some(vn) = num.valuation() else {
        return Ok(LaurentSeries::zero(ctx.field(), q));
    };
    let den = LaurentSeries::from_theta_poly(&ells[i as usize].pow(s), q);
    let f = num.mul(&den.inv_to(work - vn)?);
    if let Some(v) = f.valuation() {
        if v < value_term_bound(q, s, u, i) {
            return Err(Error::NonIncreasingTerms(i as usize));
        }
    }
    Ok(f)
}

/// `Li(u)` at `t = theta`, modulo `O(z^prec)`.
pub fn cmpl_value(ctx: &CarlitzContext, spec: &CmplSpec, prec: i64) -> Result<LaurentSeries> {
    let plan = plan_value(ctx, spec, prec)?;
    let d = spec.s.depth();
    let e = spec.s.entries();
    let ells: Vec<Poly> = (0..=plan.imax).map(|i| ell(ctx, i)).collect();
    let zero = LaurentSeries::zero(ctx.field(), ctx.q());
    let mut w: Vec<LaurentSeries> = Vec::new();
    for j in (0..d).rev() {
        let lowest = (d - 1 - j) as u32;
        let mut next = Vec::new();
        let mut prefix = zero.clone();
        for i in 0..=plan.imax {
            let term = if i < lowest {
                zero.clone()
            } else {
                let f = value_factor(ctx, &spec.u[j], e[j], i, &ells, plan.work)?;
                if j == d - 1 {
                    f
                } else {
                    f.mul(&prefix)
                }
            };
            if j < d - 1 {
                prefix = prefix.add(&w[i as usize]);
            }
            next.push(term);
        }
        w = next;
    }
    let total = w.iter().fold(LaurentSeries::zero_to(ctx.field(), ctx.q(), prec), |acc, x| acc.add(x));
    match total.precision() {
        Some(p) if p >= prec => Ok(total),
        Some(p) => Err(Error::InsufficientPrecision(p)),
        None => Ok(total),
    }
}

/// The individual terms of [`cmpl_value`], one per tuple `i_1 > ... > i_d`,
/// followed by the `O(z^prec)` error term.
pub fn cmpl_value_terms(ctx: &CarlitzContext, spec: &CmplSpec, prec: i64) -> Result<Vec<LaurentSeries>> {
    let plan = plan_value(ctx, spec, prec)?;
    let d = spec.s.depth();
    let e = spec.s.entries();
    let ells: Vec<Poly> = (0..=plan.imax).map(|i| ell(ctx, i)).collect();
    let mut factors: Vec<Vec<LaurentSeries>> = Vec::new();
    for j in 0..d {
        let row = (0..=plan.imax)
            .map(|i| value_factor(ctx, &spec.u[j], e[j], i, &ells, plan.work))
            .collect::<Result<Vec<_>>>()?;
        factors.push(row);
    }
    let mut out = Vec::new();
    let mut tuple = vec![0u32; d];
    fn rec(
        j: usize,
        upper: u32,
        tuple: &mut Vec<u32>,
        factors: &[Vec<LaurentSeries>],
        out: &mut Vec<LaurentSeries>,
        one: &LaurentSeries,
    ) {
        let d = tuple.len();
        if j == d {
            let prod = (0..d).fold(one.clone(), |acc, k| acc.mul(&factors[k][tuple[k] as usize]));
            out.push(prod);
            return;
        }
        let lowest = (d - 1 - j) as u32;
        for i in lowest..upper {
            tuple[j] = i;
            rec(j + 1, i, tuple, factors, out, one);
        }
    }
    let one = LaurentSeries::one(ctx.field(), ctx.q());
    rec(0, plan.imax + 1, &mut tuple, &factors, &mut out, &one);
    out.push(LaurentSeries::zero_to(ctx.field(), ctx.q(), prec));
    Ok(out)
}

/// Certificate offset (at slope `(q-1)q`) bound for the `i`-th series term of one argument.
fn series_term_bound(q: u64, s: u64, u: &BiPoly, i: u32) -> i64 {
    let q = q as i64;
    let e = u.degree_t().unwrap_or(0) as i64;
    let b = u.degree_theta().unwrap_or(0) as i64;
    let qi = q.pow(i);
    s as i64 * (q * qi - q) - (q - 1) * qi * b - (q - 1) * q * e
}

/// The series `L_{u,s}(t)` truncated at t-degree `tdeg`, coefficient `k`
/// known modulo `O(z^{prec + (q-1)k})`.
pub fn cmpl_series(ctx: &CarlitzContext, spec: &CmplSpec, tdeg: usize, prec: i64) -> Result<TateElement> {
    let conv = convergence_check(ctx, spec);
    if let Some(bad) = conv.entries.iter().find(|e| !e.passed) {
        return Err(Error::Divergent { position: bad.position });
    }
    let (fd, q) = (ctx.field(), ctx.q());
    if spec.u.iter().any(|u| u.is_zero()) {
        return Ok(TateElement::zero(fd, q));
    }
    let d = spec.s.depth();
    let e = spec.s.entries();
    let slope = (q as i64 - 1) * q as i64;
    let minval: Vec<i64> = (0..d).map(|j| series_term_bound(q, e[j], &spec.u[j], (d - 1 - j) as u32)).collect();
    let rest: i64 = minval[1..].iter().sum();
    let mut imax = (d - 1) as u32;
    while series_term_bound(q, e[0], &spec.u[0], imax + 1) + rest < prec {
        imax += 1;
    }
    let omitted = series_term_bound(q, e[0], &spec.u[0], imax + 1) + rest;
    let work = prec - minval.iter().map(|&m| m.min(0)).sum::<i64>();

    // prod_{k=1}^{i} (t - theta^{q^k})^{-s} for each needed s, built incrementally
    let mut denominators: HashMap<u64, Vec<TateElement>> = HashMap::new();
    for &s in e {
        if denominators.contains_key(&s) {
            continue;
        }
        let mut v = vec![TateElement::one(fd, q)];
        for i in 1..=imax {
            let root = LaurentSeries::theta_power(fd, q, q.pow(i) as i64);
            let f = TateElement::invert_linear_factor(&root, s, tdeg, work)?;
            let next = v[i as usize - 1].mul(&f).truncate_weighted(work);
            v.push(next);
        }
        denominators.insert(s, v);
    }
    let factor = |j: usize, i: u32| -> TateElement {
        let u = TateElement::from_bipoly(&spec.u[j].twist(i * ctx.l()), q);
        // the numerator may have negative weighted valuation; widen accordingly
        let lift = u.certificate_at(q as i64 - 1).map_or(0, |(_, o)| o.min(0));
        let den = denominators[&e[j]][i as usize].truncate_weighted(work - lift);
        u.mul(&den).truncate_t(tdeg, slope)
    };

    let zero = TateElement::zero(fd, q);
    let mut w: Vec<TateElement> = Vec::new();
    for j in (0..d).rev() {
        let lowest = (d - 1 - j) as u32;
        let mut next = Vec::new();
        let mut prefix = zero.clone();
        for i in 0..=imax {
            let term = if i < lowest {
                zero.clone()
            } else if j == d - 1 {
                factor(j, i)
            } else {
                factor(j, i).mul(&prefix)
            };
            if j < d - 1 {
                prefix = prefix.add(&w[i as usize]);
            }
            next.push(term);
        }
        w = next;
    }
    let total = w.iter().fold(zero, |acc, x| acc.add(x)).truncate_t(tdeg, slope);
    let offset = match total.certificate_at(slope) {
        Some((_, o)) => o.min(omitted),
        None => return Err(Error::UncertifiedEvaluation),
    };
    // pad every coefficient to O(z^{prec + (q-1)k}) to account for omitted terms
    let zeros: Vec<LaurentSeries> = (0..=tdeg)
        .map(|k| LaurentSeries::zero_to(fd, q, prec + (q as i64 - 1) * k as i64))
        .collect();
    let pad = TateElement::new(fd, q, zeros, Tail::Linear { slope, offset });
    let out = total.add(&pad).with_tail(Tail::Linear { slope, offset });
    Ok(out)
}

/// Both sides of `Li_{(H_{s_1-1}, ...), s} = Gamma_{s_1} ... Gamma_{s_d} zeta(s)`.
#[derive(Clone, Debug)]
pub struct PeriodIdentity {
    pub lhs: LaurentSeries,
    pub rhs: LaurentSeries,
    pub comparison: Comparison,
}

/// Checks the period identity with Anderson–Thakur arguments.
pub fn verify_period_identity(ctx: &CarlitzContext, s: &Index, prec: i64) -> Result<PeriodIdentity> {
    let spec = CmplSpec::anderson_thakur(ctx, s)?;
    verify_period_identity_with(ctx, &spec, prec)
}

/// As [`verify_period_identity`] but with caller-supplied arguments (for negative controls).
pub fn verify_period_identity_with(ctx: &CarlitzContext, spec: &CmplSpec, prec: i64) -> Result<PeriodIdentity> {
    let q = ctx.q();
    let gamma = spec
        .s
        .entries()
        .iter()
        .fold(Poly::one(ctx.field()), |acc, &sj| acc.mul(&ctx.carlitz_factorial(sj - 1)));
    let g = LaurentSeries::from_theta_poly(&gamma, q);
    let lift = -g.valuation().unwrap();
    let zeta = mzv_direct(ctx, &spec.s, prec + lift)?;
    let rhs = g.mul(&zeta.value).truncate(prec);
    let lhs = cmpl_value(ctx, spec, prec)?.truncate(prec);
    let comparison = lhs.compare_with_floor(&rhs, Some(prec));
    Ok(PeriodIdentity { lhs, rhs, comparison })
}
