//! k-th order nonlinear complexity of sequences over `F_{q^2}`.
//!
//! `N^(k)` asks for the shortest window `m` such that some polynomial of
//! degree at most `k` in each variable maps every window
//! `(t_i, ..., t_{i+m-1})` to its successor `t_{i+m}`; `L^(k)` bounds the
//! total degree instead. For fixed `m` the unknown polynomial is a vector of
//! monomial coefficients, so existence is span membership: the successors
//! must lie in the span of the monomials evaluated at the windows. Columns
//! are streamed into [`SpanTracker`] one monomial at a time.
//!
//! Exponents are capped at `q^2 - 1` since `t^(q^2) = t` on `F_{q^2}`; larger
//! exponents never add new functions.
//!
//! Existence is monotone in both directions used here: a recurrence of
//! order `m` gives one of order `m + 1` (ignore the first variable), and a
//! recurrence valid on a sequence is valid on every prefix.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::SpanTracker;

/// Default cap on the number of monomials examined for a single `m`.
pub const DEFAULT_MONOMIAL_BUDGET: u64 = 1 << 22;

/// Largest candidate count the brute-force oracle accepts.
/// Polynomial as `(exponents, coefficient)` pairs.
pub type Polynomial = Vec<(Vec<u32>, FieldElement)>;

pub const ORACLE_LIMIT: u128 = 1 << 24;

/// Which degree restriction the feedback polynomial obeys.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DegreeMode {
    /// Degree at most `k` in each variable (`N^(k)`).
    PerVariable(u32),
    /// Total degree at most `k` (`L^(k)`).
    TotalDegree(u32),
}

impl DegreeMode {
    pub fn k(self) -> u32 {
        match self {
            DegreeMode::PerVariable(k) | DegreeMode::TotalDegree(k) => k,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DegreeMode::PerVariable(_) => "per-variable",
            DegreeMode::TotalDegree(_) => "total-degree",
        }
    }

    /// Same family with another degree.
    pub fn with_k(self, k: u32) -> Self {
        match self {
            DegreeMode::PerVariable(_) => DegreeMode::PerVariable(k),
            DegreeMode::TotalDegree(_) => DegreeMode::TotalDegree(k),
        }
    }

    fn check(self) -> Result<()> {
        if self.k() == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(())
    }
}

/// Exact complexity, or bounds when the monomial budget cut the search short.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ComplexityResult {
    Exact(usize),
    /// Every `m < lo` is proven infeasible and `hi` is proven feasible.
    Bracket {
        lo: usize,
        hi: usize,
    },
}

impl ComplexityResult {
    pub fn exact(self) -> Option<usize> {
        match self {
            ComplexityResult::Exact(m) => Some(m),
            ComplexityResult::Bracket { .. } => None,
        }
    }

    /// Proven lower bound on the complexity.
    pub fn lower(self) -> usize {
        match self {
            ComplexityResult::Exact(m) => m,
            ComplexityResult::Bracket { lo, .. } => lo,
        }
    }

    /// Proven upper bound on the complexity.
    pub fn upper(self) -> usize {
        match self {
            ComplexityResult::Exact(m) => m,
            ComplexityResult::Bracket { hi, .. } => hi,
        }
    }
}

/// Exponent vectors of admissible monomials in `m` variables, in
/// lexicographic order (first variable most significant).
pub struct Monomials {
    cap: u32,
    total: Option<u32>,
    current: Option<Vec<u32>>,
}

impl Monomials {
    /// `cap` bounds each exponent; `total` optionally bounds their sum.
    pub fn new(m: usize, cap: u32, total: Option<u32>) -> Self {
        Monomials {
            cap,
            total,
            current: Some(vec![0; m]),
        }
    }

    /// Admissible monomials for `mode` over a field with `order` elements.
    pub fn for_mode(m: usize, mode: DegreeMode, order: u32) -> Self {
        let cap = mode.k().min(order - 1);
        match mode {
            DegreeMode::PerVariable(_) => Monomials::new(m, cap, None),
            DegreeMode::TotalDegree(k) => Monomials::new(m, cap, Some(k)),
        }
    }
}

impl Iterator for Monomials {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.current.take()?;
        let mut next = current.clone();
        // Rightmost position that can still be incremented, after zeroing
        // everything to its right.
        let mut prefix_sum: u32 = next.iter().sum();
        let mut advanced = false;
        for pos in (0..next.len()).rev() {
            prefix_sum -= next[pos];
            let fits_total = self.total.is_none_or(|t| prefix_sum + next[pos] < t);
            if next[pos] < self.cap && fits_total {
                next[pos] += 1;
                advanced = true;
                break;
            }
            next[pos] = 0;
        }
        if advanced {
            self.current = Some(next);
        }
        Some(current)
    }
}

/// Number of admissible monomials, saturating at `u128::MAX`.
pub fn monomial_count(m: usize, mode: DegreeMode, order: u32) -> u128 {
    let cap = mode.k().min(order - 1) as usize;
    match mode {
        DegreeMode::PerVariable(_) => {
            let base = cap as u128 + 1;
            (0..m)
                .try_fold(1u128, |acc, _| acc.checked_mul(base))
                .unwrap_or(u128::MAX)
        }
        DegreeMode::TotalDegree(k) => {
            let k = k as usize;
            // ways[s] = number of exponent vectors so far with sum s
            let mut ways = vec![0u128; k + 1];
            ways[0] = 1;
            for _ in 0..m {
                let mut next = vec![0u128; k + 1];
                for (s, &w) in ways.iter().enumerate() {
                    if w == 0 {
                        continue;
                    }
                    for e in 0..=cap.min(k - s) {
                        next[s + e] = next[s + e].saturating_add(w);
                    }
                }
                ways = next;
            }
            ways.iter().fold(0u128, |acc, &w| acc.saturating_add(w))
        }
    }
}

/// Distinct windows of length `m` with their successors, or `None` if one
/// window is followed by two different values.
fn distinct_windows(
    t: &[FieldElement],
    m: usize,
) -> Option<(Vec<&[FieldElement]>, Vec<FieldElement>)> {
    let mut seen: HashMap<&[FieldElement], FieldElement> = HashMap::new();
    let mut rows = Vec::new();
    let mut targets = Vec::new();
    for i in 0..t.len() - m {
        let window = &t[i..i + m];
        let next = t[i + m];
        match seen.get(window) {
            Some(&prev) if prev != next => return None,
            Some(_) => {}
            None => {
                seen.insert(window, next);
                rows.push(window);
                targets.push(next);
            }
        }
    }
    Some((rows, targets))
}

fn monomial_column(ctx: &FieldCtx, rows: &[&[FieldElement]], exps: &[u32]) -> Vec<FieldElement> {
    rows.iter()
        .map(|row| {
            row.iter().zip(exps).fold(ctx.one(), |acc, (&v, &e)| {
                if e == 0 {
                    acc
                } else {
                    ctx.mul(acc, ctx.pow(v, e as u64))
                }
            })
        })
        .collect()
}

fn check_window(n: usize, m: usize) -> Result<()> {
    if n < 2 || m == 0 || m > n - 1 {
        return Err(Error::WindowOutOfRange {
            m,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// `Some(answer)` if the existence question for window `m` can be settled
/// within `budget` monomials, `None` otherwise.
fn decide(
    ctx: &FieldCtx,
    t: &[FieldElement],
    m: usize,
    mode: DegreeMode,
    budget: Option<u64>,
) -> Result<Option<bool>> {
    let Some((rows, targets)) = distinct_windows(t, m) else {
        return Ok(Some(false));
    };
    // A constant polynomial works when every successor is the same.
    if targets.windows(2).all(|w| w[0] == w[1]) {
        return Ok(Some(true));
    }
    // With every exponent up to q^2 - 1 available, any function on the
    // distinct windows can be interpolated.
    let full = (ctx.order() - 1) as u64;
    let interpolates = match mode {
        DegreeMode::PerVariable(k) => k as u64 >= full,
        DegreeMode::TotalDegree(k) => k as u64 >= full.saturating_mul(m as u64),
    };
    if interpolates {
        return Ok(Some(true));
    }
    if let Some(limit) = budget {
        if monomial_count(m, mode, ctx.order()) > limit as u128 {
            return Ok(None);
        }
    }
    let mut tracker = SpanTracker::new(ctx, &targets);
    for exps in Monomials::for_mode(m, mode, ctx.order()) {
        if tracker.push(&monomial_column(ctx, &rows, &exps))? || tracker.rank() == rows.len() {
            break;
        }
    }
    Ok(Some(tracker.target_in_span()))
}

/// Whether some polynomial admissible under `mode` satisfies
/// `t_{i+m} = f(t_i, ..., t_{i+m-1})` for every window of `t`.
pub fn exists_recurrence(
    ctx: &FieldCtx,
    t: &[FieldElement],
    m: usize,
    mode: DegreeMode,
) -> Result<bool> {
    mode.check()?;
    check_window(t.len(), m)?;
    Ok(decide(ctx, t, m, mode, None)?.expect("no budget"))
}

/// A feedback polynomial of window `m`, with nonzero coefficients only.
pub fn find_recurrence(
    ctx: &FieldCtx,
    t: &[FieldElement],
    m: usize,
    mode: DegreeMode,
) -> Result<Option<Polynomial>> {
    mode.check()?;
    check_window(t.len(), m)?;
    let Some((rows, targets)) = distinct_windows(t, m) else {
        return Ok(None);
    };
    let mut tracker = SpanTracker::new(ctx, &targets);
    let mut pushed = Vec::new();
    if !tracker.target_in_span() {
        for exps in Monomials::for_mode(m, mode, ctx.order()) {
            let done = tracker.push(&monomial_column(ctx, &rows, &exps))?;
            pushed.push(exps);
            if done {
                break;
            }
        }
    }
    Ok(tracker.witness().map(|w| {
        w.into_iter()
            .zip(pushed)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, e)| (e, c))
            .collect()
    }))
}

/// Evaluates a polynomial given as `(exponents, coefficient)` pairs.
pub fn eval_polynomial(
    ctx: &FieldCtx,
    poly: &[(Vec<u32>, FieldElement)],
    point: &[FieldElement],
) -> FieldElement {
    poly.iter().fold(ctx.zero(), |acc, (exps, c)| {
        let term = point
            .iter()
            .zip(exps)
            .fold(*c, |t, (&v, &e)| ctx.mul(t, ctx.pow(v, e as u64)));
        ctx.add(acc, term)
    })
}

fn search(
    ctx: &FieldCtx,
    t: &[FieldElement],
    mode: DegreeMode,
    budget: u64,
    start: usize,
) -> Result<ComplexityResult> {
    let n = t.len();
    let mut lo = start;
    let mut undecided = false;
    for m in start..n {
        match decide(ctx, t, m, mode, Some(budget))? {
            Some(true) if undecided => return Ok(ComplexityResult::Bracket { lo, hi: m }),
            Some(true) => return Ok(ComplexityResult::Exact(m)),
            // infeasible at m means infeasible for every smaller window too
            Some(false) => lo = m + 1,
            None => undecided = true,
        }
    }
    unreachable!("window n - 1 always admits a constant polynomial")
}

fn trivial_cases(t: &[FieldElement]) -> Option<ComplexityResult> {
    if t.iter().all(|v| v.is_zero()) {
        Some(ComplexityResult::Exact(0))
    } else if t.len() == 1 {
        Some(ComplexityResult::Exact(1))
    } else {
        None
    }
}

/// `N^(k)` or `L^(k)` of `t`, depending on `mode`.
///
/// ```
/// use hermseq::{nonlinear_complexity, ComplexityResult, DegreeMode, FieldCtx};
/// use hermseq::complexity::DEFAULT_MONOMIAL_BUDGET;
///
/// let f4 = FieldCtx::new(2, 1, None).unwrap();
/// let t = [f4.zero(), f4.zero(), f4.zero(), f4.one()];
/// let n = nonlinear_complexity(&f4, &t, DegreeMode::PerVariable(1), DEFAULT_MONOMIAL_BUDGET).unwrap();
/// assert_eq!(n, ComplexityResult::Exact(3));
/// ```
pub fn nonlinear_complexity(
    ctx: &FieldCtx,
    t: &[FieldElement],
    mode: DegreeMode,
    monomial_budget: u64,
) -> Result<ComplexityResult> {
    mode.check()?;
    if monomial_budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if let Some(r) = trivial_cases(t) {
        return Ok(r);
    }
    search(ctx, t, mode, monomial_budget, 1)
}

/// Complexity of every prefix `t_1, ..., t_n` for `n = 1..=len`.
///
/// Each search starts at the previous prefix's lower bound, which stays valid
/// because complexity never decreases along prefixes.
pub fn complexity_profile(
    ctx: &FieldCtx,
    t: &[FieldElement],
    mode: DegreeMode,
    monomial_budget: u64,
) -> Result<Vec<ComplexityResult>> {
    mode.check()?;
    if monomial_budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let mut out: Vec<ComplexityResult> = Vec::with_capacity(t.len());
    for n in 1..=t.len() {
        let prefix = &t[..n];
        let result = match trivial_cases(prefix) {
            Some(r) => r,
            None => {
                let start = out.last().map_or(1, |r| r.lower().max(1));
                search(ctx, prefix, mode, monomial_budget, start)?
            }
        };
        out.push(result);
    }
    Ok(out)
}

/// Exhaustive check of every coefficient assignment.
///
/// Independent of the linear-algebra route: it enumerates exponent vectors
/// without any capping and tries all `|F|^(#monomials)` polynomials.
pub fn brute_force_oracle(
    ctx: &FieldCtx,
    t: &[FieldElement],
    m: usize,
    mode: DegreeMode,
) -> Result<bool> {
    mode.check()?;
    check_window(t.len(), m)?;
    let k = mode.k();
    let mut monomials = Vec::new();
    let mut exps = vec![0u32; m];
    loop {
        let admissible = match mode {
            DegreeMode::PerVariable(_) => true,
            DegreeMode::TotalDegree(_) => exps.iter().sum::<u32>() <= k,
        };
        if admissible {
            monomials.push(exps.clone());
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if exps[pos] < k {
                exps[pos] += 1;
                break;
            }
            exps[pos] = 0;
        }
        if exps.iter().all(|&e| e == 0) {
            break;
        }
    }

    let order = ctx.order() as u128;
    let candidates = (0..monomials.len())
        .try_fold(1u128, |acc, _| acc.checked_mul(order))
        .filter(|&c| c <= ORACLE_LIMIT)
        .ok_or(Error::OracleTooLarge(
            order
                .checked_pow(monomials.len() as u32)
                .unwrap_or(u128::MAX),
        ))?;

    // values[row][monomial]
    let values: Vec<Vec<FieldElement>> = (0..t.len() - m)
        .map(|i| {
            monomials
                .iter()
                .map(|e| {
                    t[i..i + m].iter().zip(e).fold(ctx.one(), |acc, (&v, &x)| {
                        ctx.mul(acc, ctx.pow(v, x as u64))
                    })
                })
                .collect()
        })
        .collect();
    let elements: Vec<FieldElement> = ctx.elements().collect();
    let mut coeffs = vec![0usize; monomials.len()];
    for _ in 0..candidates {
        let satisfied = values.iter().enumerate().all(|(i, row)| {
            let value = row.iter().zip(&coeffs).fold(ctx.zero(), |acc, (&v, &c)| {
                ctx.add(acc, ctx.mul(elements[c], v))
            });
            value == t[i + m]
        });
        if satisfied {
            return Ok(true);
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < elements.len() {
                break;
            }
            *c = 0;
        }
    }
    Ok(false)
}

/// Linear complexity via Berlekamp-Massey.
pub fn linear_complexity(ctx: &FieldCtx, t: &[FieldElement]) -> usize {
    let mut conn = vec![ctx.one()];
    let mut prev = vec![ctx.one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = ctx.one();

    for i in 0..t.len() {
        let mut d = t[i];
        for j in 1..=len {
            d = ctx.add(d, ctx.mul(conn[j], t[i - j]));
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = ctx.div(d, prev_disc).expect("discrepancy is nonzero");
        let saved = conn.clone();
        if conn.len() < prev.len() + shift {
            conn.resize(prev.len() + shift, ctx.zero());
        }
        for (j, &b) in prev.iter().enumerate() {
            conn[j + shift] = ctx.sub(conn[j + shift], ctx.mul(coef, b));
        }
        if 2 * len <= i {
            len = i + 1 - len;
            prev = saved;
            prev_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    len
}
