//! Exact evaluation of the lower bounds on `N^(k)` and `L^(k)`.
//!
//! Three families are covered, each with an `N` and an `L` variant:
//!
//! * the bounds for the collinear-places sequence of length `q(q^2 - 2)`,
//!   which depend on `r2 = floor(n / (q^2 - 2))` and on `ell`;
//! * the Niederreiter-Xing bounds and the Geil-Ozbudak-Ruano bounds for the
//!   orbit sequence of length `(q - 1)(q^2 - 1)`, which depend on
//!   `r1 = floor(n / (q^2 - 1))`.
//!
//! Everything is an exact rational. A bound at or below zero carries no
//! information and is reported as trivial rather than clamped.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::prime_power;

pub type Rational = Ratio<i128>;

/// Largest `q` accepted; keeps every intermediate product well inside `i128`.
pub const MAX_Q: u64 = 1 << 12;

/// `(n, q, k, ell)` with the derived floors `r1` and `r2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub n: u64,
    pub q: u64,
    pub k: u64,
    pub ell: u64,
    pub r1: u64,
    pub r2: u64,
}

impl BoundParams {
    pub fn new(n: u64, q: u64, k: u64, ell: u64) -> Result<Self> {
        if q > MAX_Q || prime_power(q).is_none() {
            return Err(Error::BoundParams(format!(
                "q = {q} is not a supported prime power"
            )));
        }
        if k == 0 {
            return Err(Error::BoundParams("k must be at least 1".into()));
        }
        if ell < 2 || ell > q {
            return Err(Error::BoundParams(format!(
                "ell = {ell} is outside 2..={q}"
            )));
        }
        if n == 0 {
            return Err(Error::BoundParams("n must be at least 1".into()));
        }
        Ok(BoundParams {
            n,
            q,
            k,
            ell,
            r1: n / (q * q - 1),
            r2: n / (q * q - 2),
        })
    }

    /// `r2 - r1`, which is 0 or 1.
    pub fn lambda(&self) -> u64 {
        self.r2 - self.r1
    }

    /// Length of the collinear-places sequence, `q(q^2 - 2)`.
    pub fn new_length(&self) -> u64 {
        self.q * (self.q * self.q - 2)
    }

    /// Length of the orbit sequence the older bounds refer to, `(q - 1)(q^2 - 1)`.
    pub fn orbit_length(&self) -> u64 {
        (self.q - 1) * (self.q * self.q - 1)
    }

    fn check_new(&self) -> Result<()> {
        if self.n > self.new_length() {
            return Err(Error::BoundParams(format!(
                "n = {} exceeds the sequence length {}",
                self.n,
                self.new_length()
            )));
        }
        if self.k > self.q * self.q - 2 {
            return Err(Error::BoundParams(format!(
                "k = {} exceeds q^2 - 2",
                self.k
            )));
        }
        Ok(())
    }

    fn check_orbit(&self, scope: Scope) -> Result<()> {
        if self.k > self.q * self.q - 1 {
            return Err(Error::BoundParams(format!(
                "k = {} exceeds q^2 - 1",
                self.k
            )));
        }
        if scope == Scope::Faithful && self.n > self.orbit_length() {
            return Err(Error::BoundParams(format!(
                "n = {} exceeds the orbit sequence length {}",
                self.n,
                self.orbit_length()
            )));
        }
        Ok(())
    }
}

/// Whether the older bounds may be evaluated past the length of the
/// sequence they were proven for.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Require `n <= (q - 1)(q^2 - 1)`.
    Faithful,
    /// Evaluate the formula for any `n`, as the comparison plots do.
    FormulaLevel,
}

/// An exact bound together with its integer ceiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Rational,
    pub ceiling: i128,
}

impl BoundValue {
    fn new(numer: i128, denom: i128) -> Self {
        let value = Rational::new(numer, denom);
        let ceiling = value.ceil().to_integer();
        BoundValue { value, ceiling }
    }

    /// `true` when the bound is at most zero.
    pub fn is_trivial(&self) -> bool {
        self.value <= Rational::zero()
    }

    /// `(numerator, denominator)` in lowest terms.
    pub fn as_pair(&self) -> (i128, i128) {
        (*self.value.numer(), *self.value.denom())
    }

    pub fn decimal(&self, places: u32) -> String {
        to_decimal(&self.value, places)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Fixed-point rendering, rounding half away from zero.
pub fn to_decimal(value: &Rational, places: u32) -> String {
    let scale = 10i128.pow(places);
    let scaled = value * Rational::from_integer(scale);
    let (q, r) = scaled.numer().abs().div_rem(scaled.denom());
    let rounded = if 2 * r >= *scaled.denom() { q + 1 } else { q };
    let negative = value.is_negative() && rounded != 0;
    let int_part = rounded / scale;
    let frac_part = rounded % scale;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac_part:0width$}",
            width = places as usize
        )
    }
}

fn wide(p: &BoundParams) -> (i128, i128, i128, i128, i128) {
    (
        p.q as i128,
        p.k as i128,
        p.ell as i128,
        p.r1 as i128,
        p.r2 as i128,
    )
}

/// Lower bound on `N^(k)` for prefixes of the collinear-places sequence.
pub fn bound_n_new(p: &BoundParams) -> Result<BoundValue> {
    p.check_new()?;
    let (q, k, ell, _, r2) = wide(p);
    Ok(BoundValue::new(
        r2 * (q * q - 2) - (ell - 1),
        r2 + k * q * (q + 1 - ell),
    ))
}

/// Lower bound on `L^(k)` for prefixes of the collinear-places sequence.
pub fn bound_l_new(p: &BoundParams) -> Result<BoundValue> {
    p.check_new()?;
    let (q, k, ell, _, r2) = wide(p);
    Ok(BoundValue::new(
        r2 * (q * q - 2) - (ell - 1) - k * ((q - ell) * (q + 1) + 1),
        r2 + k * (ell - 1),
    ))
}

/// Niederreiter-Xing lower bound on `N^(k)`.
pub fn bound_n_nx(p: &BoundParams, scope: Scope) -> Result<BoundValue> {
    p.check_orbit(scope)?;
    let (q, k, _, r1, _) = wide(p);
    Ok(BoundValue::new(r1 * (q * q - 1) - 1, r1 + q * (q - 1) * k))
}

/// Niederreiter-Xing lower bound on `L^(k)`.
pub fn bound_l_nx(p: &BoundParams, scope: Scope) -> Result<BoundValue> {
    p.check_orbit(scope)?;
    let (q, k, _, r1, _) = wide(p);
    Ok(BoundValue::new(
        r1 * (q * q - 1) - (q * q - q - 1) * k - 1,
        r1 + k,
    ))
}

/// Geil-Ozbudak-Ruano lower bound on `N^(k)`.
pub fn bound_n_gor(p: &BoundParams, scope: Scope) -> Result<BoundValue> {
    p.check_orbit(scope)?;
    let (q, k, _, r1, _) = wide(p);
    Ok(BoundValue::new(
        r1 * (q * q - 1) - (q - 1),
        r1 + 2 * k * (q - 1),
    ))
}

/// Geil-Ozbudak-Ruano lower bound on `L^(k)`.
pub fn bound_l_gor(p: &BoundParams, scope: Scope) -> Result<BoundValue> {
    p.check_orbit(scope)?;
    let (q, k, _, r1, _) = wide(p);
    Ok(BoundValue::new(
        r1 * (q * q - 1) - (k + 1) * (q - 1),
        r1 + k * (q - 1),
    ))
}

/// All six bounds at one parameter point. The older bounds are evaluated at
/// formula level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllBounds {
    pub params: BoundParams,
    pub n_new: BoundValue,
    pub l_new: BoundValue,
    pub n_nx: BoundValue,
    pub l_nx: BoundValue,
    pub n_gor: BoundValue,
    pub l_gor: BoundValue,
}

pub fn all_bounds(p: &BoundParams) -> Result<AllBounds> {
    Ok(AllBounds {
        params: *p,
        n_new: bound_n_new(p)?,
        l_new: bound_l_new(p)?,
        n_nx: bound_n_nx(p, Scope::FormulaLevel)?,
        l_nx: bound_l_nx(p, Scope::FormulaLevel)?,
        n_gor: bound_n_gor(p, Scope::FormulaLevel)?,
        l_gor: bound_l_gor(p, Scope::FormulaLevel)?,
    })
}

/// One row of the comparison between the new bounds (`n1`, `l1`) and the
/// Geil-Ozbudak-Ruano bounds (`n2`, `l2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub n: u64,
    pub n1: BoundValue,
    pub n2: BoundValue,
    pub l1: BoundValue,
    pub l2: BoundValue,
}

/// Comparison rows for each `n`. The standard comparison takes `ell = q`;
/// other values need `allow_general_ell`.
pub fn comparison_sweep<I>(
    q: u64,
    k: u64,
    ell: u64,
    ns: I,
    allow_general_ell: bool,
) -> Result<Vec<ComparisonRow>>
where
    I: IntoIterator<Item = u64>,
{
    if ell != q && !allow_general_ell {
        return Err(Error::BoundParams(format!(
            "the comparison uses ell = q = {q}; got ell = {ell}"
        )));
    }
    let ns: Vec<u64> = ns.into_iter().collect();
    if ns.is_empty() {
        return Err(Error::EmptyRange);
    }
    ns.par_iter()
        .map(|&n| {
            let p = BoundParams::new(n, q, k, ell)?;
            Ok(ComparisonRow {
                n,
                n1: bound_n_new(&p)?,
                n2: bound_n_gor(&p, Scope::FormulaLevel)?,
                l1: bound_l_new(&p)?,
                l2: bound_l_gor(&p, Scope::FormulaLevel)?,
            })
        })
        .collect()
}

/// The comparison row at one `n` with `ell = q`.
pub fn comparison_at(q: u64, k: u64, n: u64) -> Result<ComparisonRow> {
    comparison_sweep(q, k, q, [n], false).map(|mut rows| rows.remove(0))
}

/// Parameters for which the `N` improvement is asserted: `q >= 3`, `2 <= k <= q^2 - 2`.
pub fn remark1_claimed(q: u64, k: u64) -> bool {
    q >= 3 && (2..=q * q - 2).contains(&k)
}

/// `N1 > N2` at `(q, k, n)`.
pub fn remark1_holds(q: u64, k: u64, n: u64) -> Result<bool> {
    let row = comparison_at(q, k, n)?;
    Ok(row.n1.value > row.n2.value)
}

/// Parameters for which the `L` improvement over Geil-Ozbudak-Ruano is
/// asserted: `q >= 5` with `k >= 2`; for `q = 3` and `q = 4` the threshold on
/// `k` depends on `lambda = r2 - r1`.
pub fn remark2_claimed(q: u64, k: u64, n: u64) -> bool {
    if k == 0 || k > q * q - 2 || n < q * q - 1 || n > q * (q * q - 2) {
        return false;
    }
    let lambda = n / (q * q - 2) - n / (q * q - 1);
    match q {
        3 => (lambda == 0 && k >= 4) || lambda == 1,
        4 => (lambda == 0 && k >= 3) || lambda == 1,
        q if q >= 5 => k >= 2,
        _ => false,
    }
}

/// `L1 > L2` at `(q, k, n)`.
pub fn remark2_holds(q: u64, k: u64, n: u64) -> Result<bool> {
    let row = comparison_at(q, k, n)?;
    Ok(row.l1.value > row.l2.value)
}

/// The quadratic-in-`k` sufficient condition for the new `L` bound (with
/// `ell = q`) to beat the Niederreiter-Xing `L` bound.
pub fn remark3_condition(q: u64, k: u64, n: u64) -> bool {
    let (q, k) = (q as i128, k as i128);
    let n = n as i128;
    let r1 = n / (q * q - 1);
    let r2 = n / (q * q - 2);
    let lead = q * q * q - 2 * q * q;
    let mid = r2 * (2 * q * q - q - 3) - r1 * (q * q * q - q * q - q + 2);
    let constant = r2 - r1 * (q - 1) - r1 * r2;
    lead * k * k + mid * k + constant > 0
}

/// `true` when [`remark3_condition`] agrees with the direct comparison
/// `L_new(ell = q) > L_nx`.
pub fn remark3_holds(q: u64, k: u64, n: u64) -> Result<bool> {
    let p = BoundParams::new(n, q, k, q)?;
    let improves = bound_l_new(&p)?.value > bound_l_nx(&p, Scope::FormulaLevel)?.value;
    Ok(remark3_condition(q, k, n) == improves)
}
