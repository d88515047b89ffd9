//! The sequence `s_M` of length `M = q(q^2 - 2)`.
//!
//! Term `(i - 1)(q^2 - 2) + j` is `h_ell(sigma^j(P_i))` for `1 <= i <= q` and
//! `1 <= j <= q^2 - 2`: the orbit of each collinear place is walked in turn,
//! skipping the place itself.

use rayon::prelude::*;

use crate::curve::{sigma_point, CollinearFamily};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Parameters a constructed sequence was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub q: u32,
    pub a: FieldElement,
    pub ell: u32,
    pub epsilon: FieldElement,
    pub modulus: Vec<u32>,
}

/// Terms over `F_{q^2}`, optionally tagged with how they were built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    terms: Vec<FieldElement>,
    meta: Option<Provenance>,
}

impl Sequence {
    /// A sequence with no construction metadata.
    pub fn from_terms(terms: Vec<FieldElement>) -> Self {
        Sequence { terms, meta: None }
    }

    pub fn terms(&self) -> &[FieldElement] {
        &self.terms
    }

    pub fn meta(&self) -> Option<&Provenance> {
        self.meta.as_ref()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The initial sequence `(s_1, ..., s_n)`.
    pub fn prefix(&self, n: usize) -> Result<Sequence> {
        if n == 0 || n > self.terms.len() {
            return Err(Error::PrefixOutOfRange {
                n,
                len: self.terms.len(),
            });
        }
        Ok(Sequence {
            terms: self.terms[..n].to_vec(),
            meta: self.meta.clone(),
        })
    }

    pub fn into_terms(self) -> Vec<FieldElement> {
        self.terms
    }
}

/// Full length `q(q^2 - 2)`.
pub fn sequence_length(q: u32) -> usize {
    q as usize * (q as usize * q as usize - 2)
}

/// 1-based position of `h_ell(sigma^j(P_i))` in the sequence.
pub fn term_index(q: u32, i: usize, j: usize) -> usize {
    let row = q as usize * q as usize - 2;
    (i - 1) * row + j
}

/// Inverse of [`term_index`]: the `(i, j)` pair for a 1-based position.
pub fn term_coordinates(q: u32, index: usize) -> (usize, usize) {
    let row = q as usize * q as usize - 2;
    ((index - 1) / row + 1, (index - 1) % row + 1)
}

/// Builds `s_M` for the line `x = a` and the function `h_ell`.
///
/// ```
/// use hermseq::{build_sequence, FieldCtx};
///
/// let f9 = FieldCtx::new(3, 1, None).unwrap();
/// let s = build_sequence(&f9, f9.epsilon(), 3).unwrap();
/// assert_eq!(s.len(), 21);
/// assert!(s.terms().iter().all(|t| !t.is_zero()));
/// ```
pub fn build_sequence(ctx: &FieldCtx, a: FieldElement, ell: u32) -> Result<Sequence> {
    let family = CollinearFamily::new(ctx, a)?;
    let h = family.h(ell)?;
    let row = ctx.order() as usize - 2;
    // Rows are independent; each is one orbit.
    let rows: Vec<Vec<FieldElement>> = family
        .places
        .par_iter()
        .map(|&place| {
            (1..=row)
                .map(|j| h.eval(ctx, sigma_point(ctx, place, j as i64)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Sequence {
        terms: rows.concat(),
        meta: Some(Provenance {
            q: ctx.q(),
            a,
            ell,
            epsilon: ctx.epsilon(),
            modulus: ctx.modulus().to_vec(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        let f4 = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(build_sequence(&f4, f4.one(), 2).unwrap().len(), 4);
        let f9 = FieldCtx::new(3, 1, None).unwrap();
        for ell in 2..=3 {
            assert_eq!(build_sequence(&f9, f9.epsilon(), ell).unwrap().len(), 21);
        }
        assert_eq!(sequence_length(32), 32704);
    }

    #[test]
    fn rejects_bad_parameters() {
        let f9 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(build_sequence(&f9, f9.zero(), 2), Err(Error::ZeroAbscissa));
        assert!(matches!(
            build_sequence(&f9, f9.one(), 4),
            Err(Error::EllOutOfRange { ell: 4, q: 3 })
        ));
        assert!(matches!(
            build_sequence(&f9, f9.one(), 1),
            Err(Error::EllOutOfRange { .. })
        ));
    }

    #[test]
    fn prefixes() {
        let f9 = FieldCtx::new(3, 1, None).unwrap();
        let s = build_sequence(&f9, f9.epsilon(), 2).unwrap();
        assert_eq!(s.prefix(s.len()).unwrap(), s);
        let one = s.prefix(1).unwrap();
        assert_eq!(one.terms(), &s.terms()[..1]);
        assert_eq!(one.meta(), s.meta());
        assert!(s.prefix(0).is_err());
        assert!(s.prefix(22).is_err());
    }

    #[test]
    fn index_round_trip() {
        for q in [2u32, 3, 4, 5] {
            for idx in 1..=sequence_length(q) {
                let (i, j) = term_coordinates(q, idx);
                assert!(i >= 1 && i <= q as usize);
                assert!(j >= 1 && j <= (q * q - 2) as usize);
                assert_eq!(term_index(q, i, j), idx);
            }
        }
    }
}
