//! Streaming span-membership solver over `F_{q^2}`.
//!
//! The recurrence test builds systems with few rows (one per window) and a
//! very large number of columns (one per monomial). Instead of materialising
//! the matrix, [`SpanTracker`] keeps an echelon basis of the columns seen so
//! far (never more than `rows` vectors) together with the residual of the
//! target against that basis. The target is in the span exactly when the
//! residual is zero, so callers can stop as soon as that happens.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Result of a span-membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystemOutcome {
    pub consistent: bool,
    /// One coefficient per column examined; columns after the last entry
    /// take coefficient zero.
    pub witness: Option<Vec<FieldElement>>,
}

struct BasisVector {
    pivot: usize,
    entries: Vec<FieldElement>,
    // Coefficients over `basis_columns`, so that entries = sum combo[j] * col[basis_columns[j]].
    combo: Vec<FieldElement>,
}

/// Incremental column-space basis with a tracked target residual.
pub struct SpanTracker<'a> {
    ctx: &'a FieldCtx,
    rows: usize,
    basis: Vec<BasisVector>,
    basis_columns: Vec<usize>,
    residual: Vec<FieldElement>,
    // target - residual = sum weights[j] * col[basis_columns[j]]
    weights: Vec<FieldElement>,
    columns_seen: usize,
    residual_nonzero: usize,
}

impl<'a> SpanTracker<'a> {
    pub fn new(ctx: &'a FieldCtx, target: &[FieldElement]) -> Self {
        SpanTracker {
            ctx,
            rows: target.len(),
            basis: Vec::new(),
            basis_columns: Vec::new(),
            residual: target.to_vec(),
            weights: Vec::new(),
            columns_seen: 0,
            residual_nonzero: target.iter().filter(|v| !v.is_zero()).count(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn columns_seen(&self) -> usize {
        self.columns_seen
    }

    /// `true` once the target lies in the span of the columns pushed so far.
    pub fn target_in_span(&self) -> bool {
        self.residual_nonzero == 0
    }

    /// Adds one column; returns [`SpanTracker::target_in_span`] afterwards.
    pub fn push(&mut self, column: &[FieldElement]) -> Result<bool> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: column.len(),
            });
        }
        let index = self.columns_seen;
        self.columns_seen += 1;
        if self.target_in_span() || self.rank() == self.rows {
            return Ok(self.target_in_span());
        }

        let f = self.ctx;
        let mut v = column.to_vec();
        let slot = self.basis_columns.len();
        let mut combo = vec![FieldElement::ZERO; slot + 1];
        combo[slot] = f.one();
        for b in &self.basis {
            let c = v[b.pivot];
            if c.is_zero() {
                continue;
            }
            axpy(f, &mut v, c, &b.entries);
            axpy(f, &mut combo, c, &b.combo);
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let scale = f.inv(v[pivot])?;
        v.iter_mut().for_each(|x| *x = f.mul(*x, scale));
        combo.iter_mut().for_each(|x| *x = f.mul(*x, scale));
        self.basis_columns.push(index);

        let c = self.residual[pivot];
        if !c.is_zero() {
            axpy(f, &mut self.residual, c, &v);
            self.weights.resize(slot + 1, FieldElement::ZERO);
            // residual -= c * v  means  weights += c * combo
            let neg_c = f.neg(c);
            axpy(f, &mut self.weights, neg_c, &combo);
            self.residual_nonzero = self.residual.iter().filter(|x| !x.is_zero()).count();
        }
        self.basis.push(BasisVector {
            pivot,
            entries: v,
            combo,
        });
        Ok(self.target_in_span())
    }

    /// Witness over all columns pushed so far, if the target is in the span.
    pub fn witness(&self) -> Option<Vec<FieldElement>> {
        if !self.target_in_span() {
            return None;
        }
        let mut out = vec![FieldElement::ZERO; self.columns_seen];
        for (&col, &w) in self.basis_columns.iter().zip(&self.weights) {
            out[col] = w;
        }
        Some(out)
    }
}

/// `dst -= c * src` over the common prefix.
fn axpy(f: &FieldCtx, dst: &mut Vec<FieldElement>, c: FieldElement, src: &[FieldElement]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), FieldElement::ZERO);
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = f.sub(*d, f.mul(c, s));
        }
    }
}

/// Decides whether `target` lies in the span of the streamed `columns`.
///
/// Columns are consumed lazily and the iterator is abandoned as soon as the
/// answer is known.
pub fn solve_linear_system<I, C>(
    ctx: &FieldCtx,
    columns: I,
    target: &[FieldElement],
) -> Result<LinearSystemOutcome>
where
    I: IntoIterator<Item = C>,
    C: AsRef<[FieldElement]>,
{
    let mut tracker = SpanTracker::new(ctx, target);
    if !tracker.target_in_span() {
        for column in columns {
            if tracker.push(column.as_ref())? {
                break;
            }
        }
    }
    let witness = tracker.witness();
    Ok(LinearSystemOutcome {
        consistent: witness.is_some(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_witness(
        f: &FieldCtx,
        columns: &[Vec<FieldElement>],
        target: &[FieldElement],
        w: &[FieldElement],
    ) {
        let mut acc = vec![FieldElement::ZERO; target.len()];
        for (col, &c) in columns.iter().zip(w) {
            for (a, &x) in acc.iter_mut().zip(col) {
                *a = f.add(*a, f.mul(c, x));
            }
        }
        assert_eq!(acc, target);
    }

    /// Dense Gaussian elimination on the augmented matrix; consistent iff
    /// rank(A) == rank(A|b).
    fn dense_consistent(
        f: &FieldCtx,
        columns: &[Vec<FieldElement>],
        target: &[FieldElement],
    ) -> bool {
        let rows = target.len();
        let rank_of = |mats: &[Vec<FieldElement>]| -> usize {
            // rows x cols
            let cols = mats.len();
            let mut m: Vec<Vec<FieldElement>> = (0..rows)
                .map(|r| (0..cols).map(|c| mats[c][r]).collect())
                .collect();
            let mut rank = 0;
            for c in 0..cols {
                let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
                    continue;
                };
                m.swap(rank, piv);
                let inv = f.inv(m[rank][c]).unwrap();
                let pivot = m[rank].clone();
                for (r, row) in m.iter_mut().enumerate() {
                    if r != rank && !row[c].is_zero() {
                        let factor = f.mul(row[c], inv);
                        for (x, &y) in row.iter_mut().zip(&pivot) {
                            *x = f.sub(*x, f.mul(factor, y));
                        }
                    }
                }
                rank += 1;
            }
            rank
        };
        let mut aug = columns.to_vec();
        aug.push(target.to_vec());
        rank_of(columns) == rank_of(&aug)
    }

    #[test]
    fn standard_basis_spans_everything() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        let z = f.epsilon();
        let cols: Vec<Vec<FieldElement>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|r| if r == i { f.one() } else { f.zero() })
                    .collect()
            })
            .collect();
        let target = vec![z, f.one(), f.add(z, f.one())];
        let out = solve_linear_system(&f, &cols, &target).unwrap();
        assert!(out.consistent);
        check_witness(&f, &cols, &target, out.witness.as_ref().unwrap());
    }

    #[test]
    fn zero_column_cannot_reach_nonzero_target() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        let cols = vec![vec![f.zero(); 2]];
        let out = solve_linear_system(&f, &cols, &[f.one(), f.zero()]).unwrap();
        assert!(!out.consistent);
        assert!(out.witness.is_none());
    }

    #[test]
    fn zero_target_is_trivially_consistent() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let cols: Vec<Vec<FieldElement>> = Vec::new();
        let out = solve_linear_system(&f, &cols, &[f.zero(), f.zero()]).unwrap();
        assert!(out.consistent);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        let cols = vec![vec![f.one()]];
        let err = solve_linear_system(&f, &cols, &[f.one(), f.one()]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn random_f9_systems_match_dense_elimination() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen = [0usize; 2];
        for _ in 0..400 {
            // Sparse entries so that both outcomes occur.
            let entry = |rng: &mut ChaCha8Rng| {
                if rng.gen_bool(0.6) {
                    f.zero()
                } else {
                    f.element(rng.gen_range(0..9)).unwrap()
                }
            };
            let cols: Vec<Vec<FieldElement>> = (0..8)
                .map(|_| (0..5).map(|_| entry(&mut rng)).collect())
                .collect();
            let target: Vec<FieldElement> = (0..5).map(|_| entry(&mut rng)).collect();
            let out = solve_linear_system(&f, &cols, &target).unwrap();
            assert_eq!(out.consistent, dense_consistent(&f, &cols, &target));
            if let Some(w) = &out.witness {
                check_witness(&f, &cols, &target, w);
            }
            seen[out.consistent as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    /// Every system over F_4 with at most 3 rows and 3 columns except the
    /// 3x3 case, against brute force enumeration of all linear combinations.
    #[test]
    fn exhaustive_small_f4_systems() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        let all: Vec<FieldElement> = f.elements().collect();
        for rows in 1..=3usize {
            for ncols in 0..=3usize {
                let cells = rows * (ncols + 1);
                if cells > 9 {
                    continue;
                }
                let total = 4usize.pow(cells as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut next = || {
                        let v = all[c % 4];
                        c /= 4;
                        v
                    };
                    let cols: Vec<Vec<FieldElement>> = (0..ncols)
                        .map(|_| (0..rows).map(|_| next()).collect())
                        .collect();
                    let target: Vec<FieldElement> = (0..rows).map(|_| next()).collect();
                    let brute = (0..4usize.pow(ncols as u32)).any(|coef_code| {
                        let mut cc = coef_code;
                        let mut acc = vec![f.zero(); rows];
                        for col in &cols {
                            let w = all[cc % 4];
                            cc /= 4;
                            for (a, &x) in acc.iter_mut().zip(col) {
                                *a = f.add(*a, f.mul(w, x));
                            }
                        }
                        acc == target
                    });
                    let out = solve_linear_system(&f, &cols, &target).unwrap();
                    assert_eq!(out.consistent, brute, "{cols:?} {target:?}");
                }
            }
        }
    }

    #[test]
    fn three_row_f4_systems_sampled() {
        // 4^12 systems at 3x3 is too many to enumerate inside a unit test;
        // sample them uniformly instead.
        let f = FieldCtx::new(2, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..3000 {
            let cols: Vec<Vec<FieldElement>> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| f.element(rng.gen_range(0..4)).unwrap())
                        .collect()
                })
                .collect();
            let target: Vec<FieldElement> = (0..3)
                .map(|_| f.element(rng.gen_range(0..4)).unwrap())
                .collect();
            let out = solve_linear_system(&f, &cols, &target).unwrap();
            assert_eq!(out.consistent, dense_consistent(&f, &cols, &target));
        }
    }
}
