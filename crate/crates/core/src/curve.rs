//! Rational places of the Hermitian curve `y^q + y = x^(q+1)` over `F_{q^2}`.
//!
//! Only the pieces the sequence construction needs are modelled: the affine
//! places, the `q` collinear places on a line `x = a`, the automorphism
//! `sigma: x -> eps x, y -> eps^(q+1) y` acting on places, and evaluation of
//! the functions `x - a`, `y`, `f_i` and `h_ell` at places.
//!
//! Places are indexed from 1 inside a [`CollinearFamily`] (`P_1, ..., P_q`),
//! which keeps `h_ell = (x - a)^q / (f_1 ... f_{ell-1})` readable.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// A rational place: an affine point on the curve or the point at infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Affine { x: FieldElement, y: FieldElement },
    Infinity,
}

impl Place {
    /// Checked constructor for an affine place.
    pub fn affine(ctx: &FieldCtx, x: FieldElement, y: FieldElement) -> Result<Place> {
        if ctx.rel_trace(y) != ctx.rel_norm(x) {
            return Err(Error::NotOnCurve {
                x: x.index(),
                y: y.index(),
            });
        }
        Ok(Place::Affine { x, y })
    }

    pub fn coords(&self) -> Option<(FieldElement, FieldElement)> {
        match *self {
            Place::Affine { x, y } => Some((x, y)),
            Place::Infinity => None,
        }
    }

    pub fn is_on_curve(&self, ctx: &FieldCtx) -> bool {
        match *self {
            Place::Affine { x, y } => ctx.rel_trace(y) == ctx.rel_norm(x),
            Place::Infinity => true,
        }
    }
}

/// All `q^3` affine places, ordered by `(x, y)`.
pub fn affine_places(ctx: &FieldCtx) -> Vec<Place> {
    ctx.elements()
        .flat_map(|x| {
            ctx.hermitian_fiber(x)
                .into_iter()
                .map(move |y| Place::Affine { x, y })
        })
        .collect()
}

/// The automorphism `sigma(x) = eps x`, `sigma(y) = eps^(q+1) y`.
///
/// On places it acts by `(u, v) -> (eps^-j u, eps^-(q+1)j v)` for `sigma^j`:
/// with that convention `sigma(f)(sigma(P)) = f(P)` holds for the coordinate
/// functions.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SigmaAction {
    pub epsilon: FieldElement,
    pub exponent_x: u32,
    pub exponent_y: u32,
}

impl SigmaAction {
    pub fn new(ctx: &FieldCtx) -> Self {
        SigmaAction {
            epsilon: ctx.epsilon(),
            exponent_x: 1,
            exponent_y: ctx.q() + 1,
        }
    }

    /// Order of the action on places with nonzero x-coordinate, `q^2 - 1`.
    pub fn order(&self, ctx: &FieldCtx) -> u32 {
        ctx.order() - 1
    }

    pub fn apply(&self, ctx: &FieldCtx, place: Place, j: i64) -> Place {
        match place {
            Place::Infinity => Place::Infinity,
            Place::Affine { x, y } => Place::Affine {
                x: ctx.mul(ctx.epsilon_pow(-j * self.exponent_x as i64), x),
                y: ctx.mul(ctx.epsilon_pow(-j * self.exponent_y as i64), y),
            },
        }
    }
}

/// `sigma^j(P)`.
pub fn sigma_point(ctx: &FieldCtx, place: Place, j: i64) -> Place {
    SigmaAction::new(ctx).apply(ctx, place, j)
}

/// The `q^2 - 1` places `sigma^j(P)` for `j = 0, ..., q^2 - 2`.
pub fn orbit(ctx: &FieldCtx, place: Place) -> Result<Vec<Place>> {
    match place {
        Place::Affine { x, .. } if !x.is_zero() => {
            let sigma = SigmaAction::new(ctx);
            Ok((0..sigma.order(ctx) as i64)
                .map(|j| sigma.apply(ctx, place, j))
                .collect())
        }
        _ => Err(Error::OrbitUndefined),
    }
}

/// The places `P_1, ..., P_q` on the line `x = a`, in canonical fiber order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearFamily {
    pub a: FieldElement,
    pub b_list: Vec<FieldElement>,
    pub places: Vec<Place>,
}

impl CollinearFamily {
    pub fn new(ctx: &FieldCtx, a: FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroAbscissa);
        }
        let b_list = ctx.hermitian_fiber(a);
        let places = b_list.iter().map(|&y| Place::Affine { x: a, y }).collect();
        Ok(CollinearFamily { a, b_list, places })
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    /// `P_i`, 1-based.
    pub fn place(&self, i: usize) -> Result<Place> {
        self.check_index(i)?;
        Ok(self.places[i - 1])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.places.len() {
            return Err(Error::PlaceIndexOutOfRange {
                index: i,
                q: self.places.len() as u32,
            });
        }
        Ok(())
    }

    /// Descriptor of `f_i = y - b_i - a^q (x - a)`.
    pub fn f(&self, i: usize) -> Result<CurveFunction> {
        self.check_index(i)?;
        Ok(CurveFunction::Tangent {
            a: self.a,
            b: self.b_list[i - 1],
        })
    }

    /// Descriptor of `h_ell = (x - a)^q / (f_1 ... f_{ell-1})`.
    pub fn h(&self, ell: u32) -> Result<CurveFunction> {
        let q = self.places.len() as u32;
        if ell < 2 || ell > q {
            return Err(Error::EllOutOfRange { ell, q });
        }
        Ok(CurveFunction::H {
            a: self.a,
            poles: self.b_list[..ell as usize - 1].to_vec(),
        })
    }

    /// `f_i(P)`.
    pub fn eval_f(&self, ctx: &FieldCtx, i: usize, place: Place) -> Result<FieldElement> {
        self.f(i)?.eval(ctx, place)
    }

    /// `h_ell(P)`; fails at `P_infinity` and at `P_1, ..., P_{ell-1}`.
    pub fn eval_h(&self, ctx: &FieldCtx, ell: u32, place: Place) -> Result<FieldElement> {
        self.h(ell)?.eval(ctx, place)
    }
}

/// One of the functions on the curve used by the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveFunction {
    /// `x - a`
    XMinus(FieldElement),
    /// `y`
    Y,
    /// `y - b - a^q (x - a)`, the tangent line at `(a, b)`
    Tangent { a: FieldElement, b: FieldElement },
    /// `(x - a)^q / prod_b (y - b - a^q (x - a))` over the listed `b`
    H {
        a: FieldElement,
        poles: Vec<FieldElement>,
    },
}

impl CurveFunction {
    /// Value at a place. Every function here has a pole at infinity.
    pub fn eval(&self, ctx: &FieldCtx, place: Place) -> Result<FieldElement> {
        let (x, y) = place.coords().ok_or(Error::Pole)?;
        Ok(match self {
            CurveFunction::XMinus(a) => ctx.sub(x, *a),
            CurveFunction::Y => y,
            CurveFunction::Tangent { a, b } => tangent(ctx, *a, *b, x, y),
            CurveFunction::H { a, poles } => {
                let numerator = ctx.pow(ctx.sub(x, *a), ctx.q() as u64);
                let denominator = poles
                    .iter()
                    .fold(ctx.one(), |acc, &b| ctx.mul(acc, tangent(ctx, *a, b, x, y)));
                if denominator.is_zero() {
                    return Err(Error::Pole);
                }
                ctx.div(numerator, denominator)?
            }
        })
    }

    /// The function `sigma^-j(self)`, written out with substituted
    /// coefficients rather than by moving the place.
    ///
    /// Substituting `x -> eps^-j x`, `y -> eps^-(q+1)j y` turns each tangent
    /// into another affine form and, because `t -> t^q` is additive, turns
    /// `(x - a)^q` into `eps^-jq x^q - a^q`.
    pub fn pulled_back(&self, ctx: &FieldCtx, j: i64) -> PulledBack {
        let q = ctx.q() as i64;
        let sx = ctx.epsilon_pow(-j);
        let sy = ctx.epsilon_pow(-j * (q + 1));
        let form = |a: FieldElement, b: FieldElement| {
            let aq = ctx.pow(a, q as u64);
            AffineForm {
                cx: ctx.neg(ctx.mul(aq, sx)),
                cy: sy,
                c0: ctx.sub(ctx.mul(aq, a), b),
            }
        };
        match self {
            CurveFunction::XMinus(a) => PulledBack {
                numerator: Numerator::Linear(AffineForm {
                    cx: sx,
                    cy: ctx.zero(),
                    c0: ctx.neg(*a),
                }),
                denominator: Vec::new(),
            },
            CurveFunction::Y => PulledBack {
                numerator: Numerator::Linear(AffineForm {
                    cx: ctx.zero(),
                    cy: sy,
                    c0: ctx.zero(),
                }),
                denominator: Vec::new(),
            },
            CurveFunction::Tangent { a, b } => PulledBack {
                numerator: Numerator::Linear(form(*a, *b)),
                denominator: Vec::new(),
            },
            CurveFunction::H { a, poles } => PulledBack {
                numerator: Numerator::FrobeniusX {
                    coeff: ctx.epsilon_pow(-j * q),
                    constant: ctx.neg(ctx.pow(*a, q as u64)),
                },
                denominator: poles.iter().map(|&b| form(*a, b)).collect(),
            },
        }
    }
}

fn tangent(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    x: FieldElement,
    y: FieldElement,
) -> FieldElement {
    let aq = ctx.pow(a, ctx.q() as u64);
    ctx.sub(ctx.sub(y, b), ctx.mul(aq, ctx.sub(x, a)))
}

/// `cx x + cy y + c0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub cx: FieldElement,
    pub cy: FieldElement,
    pub c0: FieldElement,
}

impl AffineForm {
    fn eval(&self, ctx: &FieldCtx, x: FieldElement, y: FieldElement) -> FieldElement {
        ctx.add(ctx.add(ctx.mul(self.cx, x), ctx.mul(self.cy, y)), self.c0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Numerator {
    Linear(AffineForm),
    /// `coeff * x^q + constant`
    FrobeniusX {
        coeff: FieldElement,
        constant: FieldElement,
    },
}

/// A function of the form `numerator / prod(denominator)` in `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulledBack {
    pub numerator: Numerator,
    pub denominator: Vec<AffineForm>,
}

impl PulledBack {
    pub fn eval(&self, ctx: &FieldCtx, place: Place) -> Result<FieldElement> {
        let (x, y) = place.coords().ok_or(Error::Pole)?;
        let top = match self.numerator {
            Numerator::Linear(form) => form.eval(ctx, x, y),
            Numerator::FrobeniusX { coeff, constant } => {
                ctx.add(ctx.mul(coeff, ctx.pow(x, ctx.q() as u64)), constant)
            }
        };
        let bottom = self
            .denominator
            .iter()
            .fold(ctx.one(), |acc, form| ctx.mul(acc, form.eval(ctx, x, y)));
        if bottom.is_zero() {
            return Err(Error::Pole);
        }
        ctx.div(top, bottom)
    }
}

/// Affine places where `function` vanishes; poles are skipped.
pub fn zero_set(ctx: &FieldCtx, function: &CurveFunction) -> Vec<Place> {
    affine_places(ctx)
        .into_iter()
        .filter(|&p| matches!(function.eval(ctx, p), Ok(v) if v.is_zero()))
        .collect()
}

/// Affine places where `function` has a pole.
pub fn affine_pole_set(ctx: &FieldCtx, function: &CurveFunction) -> Vec<Place> {
    affine_places(ctx)
        .into_iter()
        .filter(|&p| matches!(function.eval(ctx, p), Err(Error::Pole)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f4() -> FieldCtx {
        FieldCtx::new(2, 1, None).unwrap()
    }

    #[test]
    fn affine_place_counts() {
        for (p, e, q) in [(2, 1, 2usize), (3, 1, 3)] {
            let f = FieldCtx::new(p, e, None).unwrap();
            let places = affine_places(&f);
            assert_eq!(places.len(), q * q * q);
            assert!(places.windows(2).all(|w| w[0] < w[1]));
            assert!(places.iter().all(|pl| pl.is_on_curve(&f)));
        }
    }

    #[test]
    fn q2_collinear_family() {
        let f = f4();
        let z = f.epsilon();
        let z1 = f.add(z, f.one());
        let fam = CollinearFamily::new(&f, f.one()).unwrap();
        assert_eq!(fam.b_list, vec![z, z1]);
        assert_eq!(
            fam.places,
            vec![
                Place::Affine { x: f.one(), y: z },
                Place::Affine { x: f.one(), y: z1 }
            ]
        );
        assert_eq!(CollinearFamily::new(&f, f.zero()), Err(Error::ZeroAbscissa));
    }

    #[test]
    fn q3_families_share_abscissa() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        for a in f.elements().skip(1) {
            let fam = CollinearFamily::new(&f, a).unwrap();
            assert_eq!(fam.len(), 3);
            let distinct: HashSet<_> = fam.places.iter().collect();
            assert_eq!(distinct.len(), 3);
            assert!(fam
                .places
                .iter()
                .all(|p| p.coords().unwrap().0 == a && p.is_on_curve(&f)));
        }
    }

    #[test]
    fn sigma_on_q2_example() {
        let f = f4();
        let z = f.epsilon();
        let p = Place::Affine { x: f.one(), y: z };
        let image = sigma_point(&f, p, 1);
        assert_eq!(
            image,
            Place::Affine {
                x: f.add(z, f.one()),
                y: z
            }
        );
        assert!(image.is_on_curve(&f));
        assert_eq!(sigma_point(&f, p, 0), p);
        assert_eq!(sigma_point(&f, p, 3), p);
        assert_eq!(sigma_point(&f, Place::Infinity, 5), Place::Infinity);
    }

    #[test]
    fn sigma_is_a_bijection_and_composes() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let places = affine_places(&f);
        for j in 0..9 {
            let images: HashSet<_> = places.iter().map(|&p| sigma_point(&f, p, j)).collect();
            assert_eq!(images.len(), places.len());
            assert!(images.iter().all(|p| p.is_on_curve(&f)));
        }
        for &p in &places {
            for (j1, j2) in [(1, 2), (3, 7), (-2, 5)] {
                assert_eq!(
                    sigma_point(&f, sigma_point(&f, p, j1), j2),
                    sigma_point(&f, p, j1 + j2)
                );
            }
        }
    }

    #[test]
    fn orbit_rejects_degenerate_places() {
        let f = f4();
        assert_eq!(orbit(&f, Place::Infinity), Err(Error::OrbitUndefined));
        let origin = Place::Affine {
            x: f.zero(),
            y: f.zero(),
        };
        assert_eq!(orbit(&f, origin), Err(Error::OrbitUndefined));
        let fam = CollinearFamily::new(&f, f.one()).unwrap();
        assert_eq!(orbit(&f, fam.places[0]).unwrap().len(), 3);
    }

    #[test]
    fn f_values() {
        let f = f4();
        let z = f.epsilon();
        let fam = CollinearFamily::new(&f, f.one()).unwrap();
        assert!(fam.eval_f(&f, 1, fam.places[0]).unwrap().is_zero());
        assert!(!fam.eval_f(&f, 1, fam.places[1]).unwrap().is_zero());
        let p = Place::Affine {
            x: f.add(z, f.one()),
            y: z,
        };
        assert_eq!(fam.eval_f(&f, 1, p).unwrap(), z);
        assert_eq!(fam.eval_f(&f, 1, Place::Infinity), Err(Error::Pole));
        assert!(matches!(
            fam.eval_f(&f, 3, p),
            Err(Error::PlaceIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn h_values_and_poles() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let fam = CollinearFamily::new(&f, f.epsilon()).unwrap();
        for ell in 2..=3 {
            for r in 1..ell as usize {
                assert_eq!(fam.eval_h(&f, ell, fam.places[r - 1]), Err(Error::Pole));
            }
            for r in ell as usize..=3 {
                assert!(fam.eval_h(&f, ell, fam.places[r - 1]).unwrap().is_zero());
            }
        }
        assert!(matches!(fam.h(1), Err(Error::EllOutOfRange { .. })));
        assert!(matches!(fam.h(4), Err(Error::EllOutOfRange { .. })));

        let f = f4();
        let fam = CollinearFamily::new(&f, f.one()).unwrap();
        let moved = sigma_point(&f, fam.places[0], 1);
        assert!(!fam.eval_h(&f, 2, moved).unwrap().is_zero());
    }

    #[test]
    fn zero_sets_match_divisors() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let f = FieldCtx::new(p, e, None).unwrap();
            let fam = CollinearFamily::new(&f, f.epsilon()).unwrap();
            assert_eq!(zero_set(&f, &CurveFunction::XMinus(fam.a)), fam.places);
            for i in 1..=fam.len() {
                assert_eq!(zero_set(&f, &fam.f(i).unwrap()), vec![fam.places[i - 1]]);
            }
            assert_eq!(
                zero_set(&f, &CurveFunction::Y),
                vec![Place::Affine {
                    x: f.zero(),
                    y: f.zero()
                }]
            );
            for ell in 2..=f.q() {
                let h = fam.h(ell).unwrap();
                assert_eq!(
                    affine_pole_set(&f, &h),
                    fam.places[..ell as usize - 1].to_vec()
                );
                assert_eq!(zero_set(&f, &h), fam.places[ell as usize - 1..].to_vec());
            }
        }
    }

    #[test]
    fn pulled_back_functions_agree_with_moved_places() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let fam = CollinearFamily::new(&f, f.epsilon()).unwrap();
        let functions = [
            CurveFunction::XMinus(fam.a),
            CurveFunction::Y,
            fam.f(2).unwrap(),
            fam.h(3).unwrap(),
        ];
        for func in &functions {
            for j in [0i64, 1, 4, 7, -3] {
                let pulled = func.pulled_back(&f, j);
                for &p in &affine_places(&f) {
                    let moved = sigma_point(&f, p, j);
                    assert_eq!(func.eval(&f, moved), pulled.eval(&f, p), "{func:?} j={j}");
                }
            }
        }
    }
}
