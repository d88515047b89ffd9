//! Exact arithmetic in `F_{q^2}` with `q = p^e`.
//!
//! An element is a coefficient vector `(c_0, ..., c_{2e-1})` over the prime
//! field, read low degree first, modulo a monic irreducible polynomial of
//! degree `2e`. [`FieldElement`] stores the vector packed into a single
//! integer whose numeric order is the lexicographic order of the vectors
//! (`c_0` compared first), so deriving `Ord` gives the canonical order used
//! for fibers, places, and the choice of primitive element.
//!
//! Multiplication goes through discrete log tables built once per context;
//! addition is digit-wise, with a full table for small fields.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
const MAX_ORDER: u128 = 1 << 20;
/// Fields up to this order get a precomputed addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

/// An element of `F_{q^2}`, valid only together with the [`FieldCtx`] that
/// produced it.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Position of the element in the canonical order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_{q^2}` together with its modulus and primitive element.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    degree: usize,
    order: u32,
    modulus: Vec<u32>,
    epsilon: FieldElement,
    one: FieldElement,
    // weight of coefficient i in the packed index: p^(degree - 1 - i)
    weights: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("epsilon", &self.coeffs(self.epsilon))
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_{q^2}` for `q = p^e`.
    ///
    /// `modulus` lists the coefficients of a degree-`2e` polynomial, low
    /// degree first, leading coefficient included. It is made monic and
    /// checked for irreducibility. Without one, the lexicographically smallest
    /// monic irreducible polynomial of degree `2e` is used. The primitive
    /// element is always the smallest one in canonical order.
    ///
    /// ```
    /// use hermseq::FieldCtx;
    ///
    /// let f4 = FieldCtx::new(2, 1, None).unwrap();
    /// assert_eq!(f4.modulus(), &[1, 1, 1]);
    /// assert_eq!(f4.coeffs(f4.epsilon()), vec![0, 1]);
    /// ```
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let degree = 2 * e as usize;
        let order_wide = (p as u128).pow(degree as u32);
        if order_wide > MAX_ORDER {
            return Err(Error::FieldTooLarge(order_wide));
        }
        let order = order_wide as u32;
        let q = p.pow(e);

        let modulus = match modulus {
            Some(coeffs) => {
                let m = normalize_modulus(coeffs, p, degree)?;
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None => smallest_irreducible(p, degree),
        };

        let mut weights = vec![1u32; degree];
        for i in (0..degree - 1).rev() {
            weights[i] = weights[i + 1] * p;
        }
        let one = FieldElement(weights[0]);

        let mut ctx = FieldCtx {
            p,
            e,
            q,
            degree,
            order,
            modulus,
            epsilon: FieldElement::ZERO,
            one,
            weights,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add: None,
        };
        ctx.neg = (0..order).map(|a| ctx.neg_digits(a)).collect();
        if order <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    table.push(ctx.add_digits(a, b) as u16);
                }
            }
            ctx.add = Some(table);
        }
        ctx.epsilon = ctx.find_primitive();
        ctx.build_log_tables();
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree `e` of `F_q` over the prime field.
    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    /// `q`, so the field has `q^2` elements.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of elements, `q^2`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus, low degree first (`degree + 1` entries).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn epsilon(&self) -> FieldElement {
        self.epsilon
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        self.one
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Element at position `index` in canonical order.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.order).then_some(FieldElement(index))
    }

    /// Element with the given prime-field value as constant term.
    pub fn from_prime(&self, c: u32) -> FieldElement {
        FieldElement((c % self.p) * self.weights[0])
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: coeffs.len(),
            });
        }
        let mut index = 0;
        for (&c, &w) in coeffs.iter().zip(&self.weights) {
            if c >= self.p {
                return Err(Error::ElementSyntax(format!("{coeffs:?}")));
            }
            index += c * w;
        }
        Ok(FieldElement(index))
    }

    /// Coefficient vector over the prime field, low degree first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.weights.iter().map(|&w| (a.0 / w) % self.p).collect()
    }

    /// Renders an element as its coefficients joined by `:`, low degree first.
    pub fn format(&self, a: FieldElement) -> String {
        let parts: Vec<String> = self.coeffs(a).iter().map(u32::to_string).collect();
        parts.join(":")
    }

    /// Inverse of [`FieldCtx::format`].
    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        let coeffs = text
            .trim()
            .split(':')
            .map(|part| part.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ElementSyntax(text.to_string()))?;
        self.from_coeffs(&coeffs)
            .map_err(|_| Error::ElementSyntax(text.to_string()))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.add {
            Some(table) => FieldElement(table[(a.0 * self.order + b.0) as usize] as u32),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        let n = self.order - 1;
        FieldElement(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if a.is_zero() {
            return if n == 0 { self.one } else { FieldElement::ZERO };
        }
        let group = (self.order - 1) as u128;
        let l = (self.log[a.0 as usize] as u128 * (n as u128 % group)) % group;
        FieldElement(self.exp[l as usize])
    }

    /// `epsilon^j` for any integer `j`.
    pub fn epsilon_pow(&self, j: i64) -> FieldElement {
        let group = (self.order - 1) as i64;
        FieldElement(self.exp[j.rem_euclid(group) as usize])
    }

    /// Discrete logarithm to base epsilon; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        let l = self.log(a)? as u64;
        let group = (self.order - 1) as u64;
        Some(group / num_integer::gcd(l, group))
    }

    /// `true` when `a` lies in the subfield `F_q`.
    pub fn in_subfield(&self, a: FieldElement) -> bool {
        self.pow(a, self.q as u64) == a
    }

    /// Relative trace `b^q + b` onto `F_q`.
    pub fn rel_trace(&self, b: FieldElement) -> FieldElement {
        self.add(self.pow(b, self.q as u64), b)
    }

    /// Relative norm `a^(q+1)` onto `F_q`.
    pub fn rel_norm(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.q as u64 + 1)
    }

    /// The `q` solutions `b` of `b^q + b = a^(q+1)`, in canonical order.
    ///
    /// The trace map is linear over the prime field, so the fiber is an
    /// affine subspace: one particular solution plus an `e`-dimensional
    /// kernel.
    pub fn hermitian_fiber(&self, a: FieldElement) -> Vec<FieldElement> {
        let d = self.degree;
        let p = self.p;
        // Column j of the trace matrix is the image of the j-th basis vector.
        let columns: Vec<Vec<u32>> = (0..d)
            .map(|j| FieldElement(self.weights[j]))
            .map(|basis| self.coeffs(self.rel_trace(basis)))
            .collect();
        let rows: Vec<Vec<u32>> = (0..d)
            .map(|i| (0..d).map(|j| columns[j][i]).collect())
            .collect();
        let rhs = self.coeffs(self.rel_norm(a));
        let (particular, kernel) = solve_mod_p(&rows, &rhs, p)
            .expect("a^(q+1) lies in F_q, which is the image of the trace");

        let mut fiber = Vec::with_capacity(p.pow(kernel.len() as u32) as usize);
        let mut lambda = vec![0u32; kernel.len()];
        loop {
            let mut v = particular.clone();
            for (coef, basis) in lambda.iter().zip(&kernel) {
                for (vi, bi) in v.iter_mut().zip(basis) {
                    *vi = (*vi + coef * bi) % p;
                }
            }
            fiber.push(self.from_coeffs(&v).expect("reduced coefficients"));
            if !odometer_step(&mut lambda, p) {
                break;
            }
        }
        fiber.sort_unstable();
        fiber
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.degree {
            out += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        out
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.degree {
            out += ((self.p - a % self.p) % self.p) * w;
            a /= self.p;
            w *= self.p;
        }
        out
    }

    fn find_primitive(&self) -> FieldElement {
        let group = (self.order - 1) as u64;
        let factors = prime_factors(group);
        (1..self.order)
            .map(FieldElement)
            .find(|&g| {
                let poly = self.coeffs(g);
                factors.iter().all(|&r| {
                    let power = poly_powmod(&poly, group / r, &self.modulus, self.p);
                    !is_one(&power)
                })
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_log_tables(&mut self) {
        let n = (self.order - 1) as usize;
        self.exp = vec![0; n];
        self.log = vec![u32::MAX; self.order as usize];
        let generator = self.coeffs(self.epsilon);
        let mut current = self.coeffs(self.one);
        for (i, slot) in self.exp.iter_mut().enumerate() {
            let index = current
                .iter()
                .zip(&self.weights)
                .map(|(c, w)| c * w)
                .sum::<u32>();
            *slot = index;
            self.log[index as usize] = i as u32;
            current = poly_mulmod(&current, &generator, &self.modulus, self.p);
        }
    }
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
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
    let mut d = 2;
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

/// Advances a base-`p` counter (last digit fastest); `false` on wraparound.
fn odometer_step(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

fn normalize_modulus(coeffs: &[u32], p: u32, degree: usize) -> Result<Vec<u32>> {
    let mut m = coeffs.to_vec();
    while m.len() > 1 && m.last() == Some(&0) {
        m.pop();
    }
    if let Some(&c) = m.iter().find(|&&c| c >= p) {
        return Err(Error::ModulusCoefficient { coeff: c, p });
    }
    if m.len() != degree + 1 {
        return Err(Error::ModulusDegree {
            expected: degree,
            got: m.len().saturating_sub(1),
        });
    }
    let lead_inv = inv_mod(m[degree], p);
    Ok(m.iter().map(|&c| c * lead_inv % p).collect())
}

fn smallest_irreducible(p: u32, degree: usize) -> Vec<u32> {
    // Monic candidates in lexicographic order of (c_0, ..., c_{degree-1}).
    let mut low = vec![0u32; degree];
    loop {
        let mut candidate = low.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
        if !odometer_step(&mut low, p) {
            unreachable!("irreducible polynomials exist in every degree");
        }
    }
}

/// Trial division by every monic polynomial of degree at most half.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let degree = f.len() - 1;
    if degree == 0 {
        return false;
    }
    for d in 1..=degree / 2 {
        let mut low = vec![0u32; d];
        loop {
            let mut g = low.clone();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
            if !odometer_step(&mut low, p) {
                break;
            }
        }
    }
    true
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo monic-or-not `m` over `F_p`; coefficients low first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut r = a.to_vec();
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - c * mc % p) % p;
            }
        }
        r.pop();
    }
    r.resize(dm, 0);
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![0u32; m.len() - 1];
    acc[0] = 1;
    let mut base = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

fn is_one(poly: &[u32]) -> bool {
    poly[0] == 1 && poly[1..].iter().all(|&c| c == 0)
}

/// Solves `rows * x = rhs` over `F_p`, returning a particular solution and a
/// kernel basis, or `None` if inconsistent.
fn solve_mod_p(rows: &[Vec<u32>], rhs: &[u32], p: u32) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<u32>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..nrows).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(rank, found);
        let inv = inv_mod(aug[rank][col], p);
        for c in aug[rank].iter_mut() {
            *c = *c * inv % p;
        }
        let pivot = aug[rank].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if aug[rank..].iter().any(|row| row[ncols] != 0) {
        return None;
    }

    let mut particular = vec![0u32; ncols];
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = aug[r][ncols];
    }
    let kernel = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u32; ncols];
            v[free] = 1;
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = (p - aug[r][free]) % p;
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldCtx {
        FieldCtx::new(2, 1, None).unwrap()
    }

    #[test]
    fn f4_modulus_and_epsilon() {
        let f = f4();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let z = f.epsilon();
        assert_eq!(f.coeffs(z), vec![0, 1]);
        // z * z = z + 1
        let z_plus_1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(z, z), z_plus_1);
        assert_eq!(f.inv(z).unwrap(), z_plus_1);
    }

    #[test]
    fn f9_epsilon_has_order_eight() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // Exhaustive order check by repeated multiplication.
        let eps = f.epsilon();
        let mut acc = eps;
        let mut order = 1;
        while acc != f.one() {
            acc = f.mul(acc, eps);
            order += 1;
        }
        assert_eq!(order, 8);
        assert_eq!(f.coeffs(eps), vec![1, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            FieldCtx::new(2, 0, None).unwrap_err(),
            Error::ZeroExtensionDegree
        );
        // z^2 + 1 = (z + 1)^2 over F_2
        assert_eq!(
            FieldCtx::new(2, 1, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(2)
        );
        assert!(matches!(
            FieldCtx::new(2, 1, Some(&[1, 1, 0, 1])),
            Err(Error::ModulusDegree { .. })
        ));
        assert!(matches!(
            FieldCtx::new(2, 11, None),
            Err(Error::FieldTooLarge(_))
        ));
    }

    #[test]
    fn user_modulus_is_made_monic() {
        // 2z^2 + 2 = 2(z^2 + 1) over F_3
        let f = FieldCtx::new(3, 1, Some(&[2, 0, 2])).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = f4();
        assert_eq!(f.inv(f.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn trace_and_norm_in_f4() {
        let f = f4();
        let z = f.epsilon();
        assert_eq!(f.rel_trace(z), f.one());
        assert_eq!(f.rel_trace(f.zero()), f.zero());
        assert_eq!(f.rel_norm(z), f.one());
        assert_eq!(f.rel_norm(f.one()), f.one());
    }

    #[test]
    fn f9_trace_lands_in_prime_field() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        for b in f.elements() {
            let t = f.rel_trace(b);
            assert_eq!(f.pow(t, 3), t);
        }
        let n = f.rel_norm(f.epsilon());
        assert_eq!(n, f.pow(f.epsilon(), 4));
        assert!(f.in_subfield(n));
    }

    #[test]
    fn f4_fibers() {
        let f = f4();
        let z = f.epsilon();
        let z1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.hermitian_fiber(f.one()), vec![z, z1]);
        assert_eq!(f.hermitian_fiber(f.zero()), vec![f.zero(), f.one()]);
    }

    #[test]
    fn fibers_partition_the_curve() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FieldCtx::new(p, e, None).unwrap();
            let q = f.q() as usize;
            let mut total = 0;
            for a in f.elements() {
                let fiber = f.hermitian_fiber(a);
                assert_eq!(fiber.len(), q);
                assert!(fiber.windows(2).all(|w| w[0] < w[1]));
                let n = f.rel_norm(a);
                // Exhaustive cross-check of the linear solve.
                let brute: Vec<_> = f.elements().filter(|&b| f.rel_trace(b) == n).collect();
                assert_eq!(fiber, brute);
                total += fiber.len();
            }
            assert_eq!(total, q * q * q);
        }
    }

    #[test]
    fn group_identity_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FieldCtx::new(p, e, None).unwrap();
            let n = f.order() as u64 - 1;
            for a in f.elements().filter(|a| !a.is_zero()) {
                assert_eq!(f.pow(a, n), f.one());
                assert_eq!(f.pow(a, 0), f.one());
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            assert_eq!(f.multiplicative_order(f.epsilon()), Some(n));
        }
    }

    #[test]
    fn digitwise_addition_matches_table() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(5) {
                assert_eq!(f.add(a, b).0, f.add_digits(a.0, b.0));
            }
        }
    }

    #[test]
    fn format_round_trip() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(a)).unwrap(), a);
        }
        assert!(f.parse("1:2").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
