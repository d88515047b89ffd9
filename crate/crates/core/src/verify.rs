//! Invariant suite behind `hermseq verify`.
//!
//! Each check returns a [`CheckOutcome`]; the report passes only if all of
//! them do. The theorem-consistency checks compute exact complexities for
//! every prefix, so they are restricted to small `q` by default.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::bounds::{
    bound_l_new, bound_n_new, remark1_claimed, remark1_holds, remark2_claimed, remark2_holds,
    remark3_holds, BoundParams,
};
use crate::complexity::{
    brute_force_oracle, complexity_profile, exists_recurrence, ComplexityResult, DegreeMode,
    DEFAULT_MONOMIAL_BUDGET,
};
use crate::curve::{
    affine_places, orbit, sigma_point, zero_set, CollinearFamily, CurveFunction, Place,
};
use crate::error::{Error, Result};
use crate::field::{prime_power, FieldCtx, FieldElement};
use crate::sequence::{build_sequence, sequence_length, Sequence};

/// Deliberate corruption used to confirm the suite can fail.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Overwrite every term with the first term.
    RepeatFirstTerm,
}

impl Fault {
    pub fn apply(self, seq: &Sequence) -> Sequence {
        match self {
            Fault::RepeatFirstTerm => {
                let first = seq.terms()[0];
                Sequence::from_terms(vec![first; seq.len()])
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub qs: Vec<u32>,
    pub monomial_budget: u64,
    /// Largest `q` for which the exact theorem checks run.
    pub theorem_max_q: u32,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            qs: vec![2, 3],
            monomial_budget: DEFAULT_MONOMIAL_BUDGET,
            theorem_max_q: 3,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub q: u32,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5);
        writeln!(
            f,
            "{:<width$}  {:>3}  {:<6}  detail",
            "check", "q", "result"
        )?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{:<width$}  {:>3}  {:<6}  {}",
                c.name, c.q, status, c.detail
            )?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// A prefix whose complexity fell below a bound's ceiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub n: usize,
    pub mode: DegreeMode,
    pub bound_ceiling: i128,
    pub complexity: ComplexityResult,
}

/// Comparison of exact complexities with the bounds for every prefix.
#[derive(Clone, Debug, Default)]
pub struct TheoremCheck {
    pub comparisons: usize,
    pub brackets: usize,
    pub violations: Vec<Violation>,
}

/// Checks `ceil(bound) <= complexity` for every prefix of `seq`, each
/// `k` in `ks`, and both degree modes. `ell` selects the bound formulas.
pub fn check_theorem_bounds(
    ctx: &FieldCtx,
    seq: &Sequence,
    ell: u32,
    ks: &[u32],
    budget: u64,
) -> Result<TheoremCheck> {
    let q = ctx.q() as u64;
    let jobs: Vec<DegreeMode> = ks
        .iter()
        .flat_map(|&k| [DegreeMode::PerVariable(k), DegreeMode::TotalDegree(k)])
        .collect();
    let partial: Vec<TheoremCheck> = jobs
        .par_iter()
        .map(|&mode| -> Result<TheoremCheck> {
            let profile = complexity_profile(ctx, seq.terms(), mode, budget)?;
            let mut out = TheoremCheck::default();
            for (idx, &result) in profile.iter().enumerate() {
                let n = idx + 1;
                let p = BoundParams::new(n as u64, q, mode.k() as u64, ell as u64)?;
                let bound = match mode {
                    DegreeMode::PerVariable(_) => bound_n_new(&p)?,
                    DegreeMode::TotalDegree(_) => bound_l_new(&p)?,
                };
                out.comparisons += 1;
                if result.exact().is_none() {
                    out.brackets += 1;
                }
                if (result.lower() as i128) < bound.ceiling {
                    out.violations.push(Violation {
                        n,
                        mode,
                        bound_ceiling: bound.ceiling,
                        complexity: result,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(partial
        .into_iter()
        .fold(TheoremCheck::default(), |mut acc, c| {
            acc.comparisons += c.comparisons;
            acc.brackets += c.brackets;
            acc.violations.extend(c.violations);
            acc
        }))
}

fn field_for(q: u32) -> Result<FieldCtx> {
    let (p, e) = prime_power(q as u64).ok_or(Error::NotPrime(q as u64))?;
    FieldCtx::new(p, e, None)
}

fn outcome(name: &'static str, q: u32, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        q,
        passed,
        detail: detail.into(),
    }
}

/// Field axioms relevant to the construction.
pub fn check_field(ctx: &FieldCtx) -> Vec<CheckOutcome> {
    let q = ctx.q();
    let group = ctx.order() as u64 - 1;
    let identity = ctx
        .elements()
        .filter(|a| !a.is_zero())
        .all(|a| ctx.pow(a, group) == ctx.one() && ctx.mul(a, ctx.inv(a).unwrap()) == ctx.one());
    let eps_order = ctx.multiplicative_order(ctx.epsilon()) == Some(group);
    let subfield = ctx
        .elements()
        .all(|a| ctx.in_subfield(ctx.rel_trace(a)) && ctx.in_subfield(ctx.rel_norm(a)));
    let fibers: Vec<Vec<FieldElement>> = ctx.elements().map(|a| ctx.hermitian_fiber(a)).collect();
    let fiber_ok = fibers
        .iter()
        .all(|f| f.len() == q as usize && f.windows(2).all(|w| w[0] < w[1]));
    let total: usize = fibers.iter().map(Vec::len).sum();
    vec![
        outcome(
            "field.group_identity",
            q,
            identity && eps_order,
            "a^(q^2-1) = 1, epsilon primitive",
        ),
        outcome(
            "field.trace_norm_subfield",
            q,
            subfield,
            "trace and norm land in F_q",
        ),
        outcome(
            "field.fibers",
            q,
            fiber_ok && total == (q as usize).pow(3),
            format!("{total} (a, b) pairs"),
        ),
    ]
}

/// Structural facts about places, the automorphism and the functions.
pub fn check_curve(ctx: &FieldCtx, a: FieldElement) -> Result<Vec<CheckOutcome>> {
    let q = ctx.q();
    let group = ctx.order() as i64 - 1;
    let places = affine_places(ctx);
    let mut out = vec![outcome(
        "curve.affine_places",
        q,
        places.len() == (q as usize).pow(3) && places.iter().all(|p| p.is_on_curve(ctx)),
        format!("{} affine places", places.len()),
    )];

    let moving: Vec<Place> = places
        .iter()
        .copied()
        .filter(|p| !p.coords().unwrap().0.is_zero())
        .collect();
    let exact_order = moving.iter().all(|&p| {
        (1..group).all(|j| sigma_point(ctx, p, j) != p) && sigma_point(ctx, p, group) == p
    });
    out.push(outcome(
        "curve.sigma_order",
        q,
        exact_order,
        format!("smallest period {group} on {} places", moving.len()),
    ));

    let family = CollinearFamily::new(ctx, a)?;
    let orbits: Vec<Vec<Place>> = family
        .places
        .iter()
        .map(|&p| orbit(ctx, p))
        .collect::<Result<_>>()?;
    let union: HashSet<Place> = orbits.iter().flatten().copied().collect();
    let sizes_ok = orbits
        .iter()
        .all(|o| o.iter().collect::<HashSet<_>>().len() == group as usize);
    let missing: Vec<Place> = places
        .iter()
        .copied()
        .filter(|p| !union.contains(p))
        .collect();
    let missing_ok =
        missing.len() == q as usize && missing.iter().all(|p| p.coords().unwrap().0.is_zero());
    out.push(outcome(
        "curve.orbits",
        q,
        sizes_ok && union.len() == q as usize * group as usize && missing_ok,
        format!("{} orbits covering {} places", orbits.len(), union.len()),
    ));

    let f_ok = (1..=family.len())
        .map(|i| {
            family
                .f(i)
                .map(|f| zero_set(ctx, &f) == vec![family.places[i - 1]])
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    out.push(outcome(
        "curve.zero_set_f",
        q,
        f_ok,
        "zeros of f_i are exactly {P_i}",
    ));
    out.push(outcome(
        "curve.zero_set_line",
        q,
        zero_set(ctx, &CurveFunction::XMinus(a)) == family.places,
        "zeros of x - a are exactly P_1..P_q",
    ));

    // Substitution identity at 100 deterministic samples per ell.
    let mut lemma_ok = true;
    let mut samples = 0;
    for ell in 2..=q {
        let h = family.h(ell)?;
        for s in 0..100usize {
            let orbit_points = &orbits[s % orbits.len()];
            let point = orbit_points[1 + (s * 7) % (orbit_points.len() - 1)];
            let j = ((s * 13) % group as usize) as i64;
            let moved = h.eval(ctx, sigma_point(ctx, point, j));
            let pulled = h.pulled_back(ctx, j).eval(ctx, point);
            // Both sides agree, including on which samples are poles.
            lemma_ok &= moved == pulled;
            samples += 1;
        }
    }
    out.push(outcome(
        "curve.substitution_identity",
        q,
        lemma_ok,
        format!("{samples} sampled (P, j)"),
    ));
    Ok(out)
}

/// Length and nonvanishing of the sequence for every `ell`.
pub fn check_sequences(ctx: &FieldCtx, a: FieldElement) -> Result<Vec<CheckOutcome>> {
    let q = ctx.q();
    let mut length_ok = true;
    let mut nonzero_ok = true;
    for ell in 2..=q {
        let s = build_sequence(ctx, a, ell)?;
        length_ok &= s.len() == sequence_length(q);
        nonzero_ok &= s.terms().iter().all(|t| !t.is_zero());
    }
    Ok(vec![
        outcome(
            "sequence.length",
            q,
            length_ok,
            format!("length {}", sequence_length(q)),
        ),
        outcome("sequence.nonzero_terms", q, nonzero_ok, "no term vanishes"),
    ])
}

/// Linear-algebra route against exhaustive search on the constructed sequence.
pub fn check_oracle(ctx: &FieldCtx, seq: &Sequence) -> Result<CheckOutcome> {
    let q = ctx.q();
    let t = seq.terms();
    let mut compared = 0;
    let mut agree = true;
    for m in 1..t.len() {
        for k in 1..=2 {
            for mode in [DegreeMode::PerVariable(k), DegreeMode::TotalDegree(k)] {
                match brute_force_oracle(ctx, t, m, mode) {
                    Ok(expected) => {
                        agree &= exists_recurrence(ctx, t, m, mode)? == expected;
                        compared += 1;
                    }
                    Err(Error::OracleTooLarge(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(outcome(
        "complexity.oracle_agreement",
        q,
        agree && compared > 0,
        format!("{compared} (m, mode) pairs compared"),
    ))
}

/// Improvement claims of the new bounds for one `q` (requires `q >= 3`).
pub fn check_remarks(q: u32) -> Result<Vec<CheckOutcome>> {
    let q = q as u64;
    let ns: Vec<u64> = ((q * q - 1)..=q * (q * q - 2)).collect();
    let top = q * q - 2;
    let mut ks = vec![2, 3, top.div_ceil(2), top];
    ks.retain(|&k| remark1_claimed(q, k));
    ks.dedup();
    let mut r1 = (0usize, true);
    for &k in &ks {
        for &n in &ns {
            r1.0 += 1;
            r1.1 &= remark1_holds(q, k, n)?;
        }
    }
    let mut r2 = (0usize, true);
    let mut r3 = (0usize, true);
    for k in 1..=top {
        for &n in &ns {
            if remark2_claimed(q, k, n) {
                r2.0 += 1;
                r2.1 &= remark2_holds(q, k, n)?;
            }
            r3.0 += 1;
            r3.1 &= remark3_holds(q, k, n)?;
        }
    }
    let q = q as u32;
    Ok(vec![
        outcome(
            "bounds.remark1",
            q,
            r1.1,
            format!("N1 > N2 at {} points", r1.0),
        ),
        outcome(
            "bounds.remark2",
            q,
            r2.1,
            format!("L1 > L2 at {} points", r2.0),
        ),
        outcome(
            "bounds.remark3",
            q,
            r3.1,
            format!("condition <=> L1 > L_nx at {} points", r3.0),
        ),
    ])
}

/// Runs the whole suite.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for &q in &cfg.qs {
        let ctx = field_for(q)?;
        let a = ctx.epsilon();
        report.checks.extend(check_field(&ctx));
        report.checks.extend(check_curve(&ctx, a)?);
        report.checks.extend(check_sequences(&ctx, a)?);

        if q <= cfg.theorem_max_q {
            let base = build_sequence(&ctx, a, 2)?;
            let oracle_seq = cfg.fault.map_or_else(|| base.clone(), |f| f.apply(&base));
            if q == 2 {
                report.checks.push(check_oracle(&ctx, &oracle_seq)?);
            }
            let ks: Vec<u32> = (1..=q * q - 2).collect();
            let mut n_check = TheoremCheck::default();
            let mut l_check = TheoremCheck::default();
            for ell in 2..=q {
                let seq = build_sequence(&ctx, a, ell)?;
                let seq = cfg.fault.map_or(seq.clone(), |f| f.apply(&seq));
                let c = check_theorem_bounds(&ctx, &seq, ell, &ks, cfg.monomial_budget)?;
                for v in c.violations {
                    match v.mode {
                        DegreeMode::PerVariable(_) => n_check.violations.push(v),
                        DegreeMode::TotalDegree(_) => l_check.violations.push(v),
                    }
                }
                n_check.comparisons += c.comparisons / 2;
                l_check.comparisons += c.comparisons / 2;
            }
            for (name, c) in [("theorem.n_bound", n_check), ("theorem.l_bound", l_check)] {
                let detail = match c.violations.first() {
                    None => format!("{} prefix comparisons", c.comparisons),
                    Some(v) => format!(
                        "{} violations; first at n={} k={} ({}): complexity {:?} < {}",
                        c.violations.len(),
                        v.n,
                        v.mode.k(),
                        v.mode.label(),
                        v.complexity,
                        v.bound_ceiling
                    ),
                };
                report
                    .checks
                    .push(outcome(name, q, c.violations.is_empty(), detail));
            }
        }
        if q >= 3 {
            report.checks.extend(check_remarks(q)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run_verification(&VerifyConfig::default()).unwrap();
        assert!(report.all_passed(), "{report}");
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "theorem.l_bound" && c.q == 3));
    }

    #[test]
    fn corrupted_sequence_fails_theorem_checks() {
        let cfg = VerifyConfig {
            qs: vec![3],
            fault: Some(Fault::RepeatFirstTerm),
            ..VerifyConfig::default()
        };
        let report = run_verification(&cfg).unwrap();
        assert!(!report.all_passed());
        assert!(report.failures().any(|c| c.name == "theorem.n_bound"));
    }

    #[test]
    fn q4_structural_checks_pass() {
        let cfg = VerifyConfig {
            qs: vec![4],
            theorem_max_q: 3,
            ..VerifyConfig::default()
        };
        let report = run_verification(&cfg).unwrap();
        assert!(report.all_passed(), "{report}");
    }
}
