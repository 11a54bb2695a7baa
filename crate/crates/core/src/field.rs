//! Exact arithmetic in F_q for odd prime powers q = p^k.
//!
//! Elements of F_{p^k} are residue classes of polynomials over F_p modulo a
//! monic irreducible polynomial of degree k. An element is stored as its
//! index in the canonical enumeration: the coefficient vector
//! (c_0, ..., c_{k-1}) maps to index Σ c_j p^j, so indices 0..p are the
//! prime subfield and enumeration order is deterministic. A [`FieldCtx`]
//! carries the modulus and precomputed operation tables; elements are plain
//! values that only make sense together with their context.

use crate::{Error, Result};

/// Default cap on field size. Vertex counts q² stay small enough that dense
/// spectra and exhaustive censuses finish interactively.
pub const DEFAULT_MAX_Q: u64 = 121;

/// An element of F_q, identified by its index in the canonical enumeration.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    /// Position of this element in [`FieldCtx::elements`] order.
    #[inline(always)]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Arithmetic context for one field F_q. Immutable after construction; all
/// operations are pure table lookups, safe to share across threads.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus, coefficients c_0..c_k (c_k = 1). None for k = 1.
    modulus: Option<Vec<u64>>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    chi: Vec<i8>,
    tr: Vec<u64>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds the field with q elements, rejecting q that is not an odd prime
    /// power or exceeds [`DEFAULT_MAX_Q`].
    pub fn new(q: u64) -> Result<Self> {
        Self::with_cap(q, DEFAULT_MAX_Q)
    }

    /// Same as [`FieldCtx::new`] with an explicit size cap.
    pub fn with_cap(q: u64, cap: u64) -> Result<Self> {
        let (p, k) = prime_power_parts(q).ok_or(Error::NotOddPrimePower(q))?;
        if q > cap {
            return Err(Error::FieldTooLarge { q, cap });
        }
        let modulus = if k > 1 {
            Some(find_irreducible(p, k).expect("an irreducible polynomial of every degree exists"))
        } else {
            None
        };
        Ok(Self::build(p, k, q, modulus))
    }

    fn build(p: u64, k: u32, q: u64, modulus: Option<Vec<u64>>) -> Self {
        let qs = q as usize;
        let idx_coeffs: Vec<Vec<u64>> = (0..q).map(|i| digits(i, p, k)).collect();

        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        for a in 0..qs {
            neg[a] = coeffs_to_index(
                &idx_coeffs[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>(),
                p,
            ) as u32;
            for b in 0..qs {
                let sum: Vec<u64> = idx_coeffs[a]
                    .iter()
                    .zip(&idx_coeffs[b])
                    .map(|(&x, &y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = coeffs_to_index(&sum, p) as u32;
                let prod = poly_mul_mod(&idx_coeffs[a], &idx_coeffs[b], modulus.as_deref(), p);
                mul[a * qs + b] = coeffs_to_index(&prod, p) as u32;
            }
        }

        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv: Vec::new(),
            chi: Vec::new(),
            tr: Vec::new(),
        };

        // Fermat: a^(q-2) inverts a, a^((q-1)/2) is the quadratic character.
        let mut inv = vec![0u32; qs];
        let mut chi = vec![0i8; qs];
        for a in 1..qs {
            let e = FieldElement(a as u32);
            inv[a] = ctx.pow(e, q - 2).0;
            let c = ctx.pow(e, (q - 1) / 2);
            chi[a] = if c == ctx.one() {
                1
            } else {
                debug_assert_eq!(c, ctx.neg(ctx.one()));
                -1
            };
        }
        ctx.inv = inv;
        ctx.chi = chi;

        // Absolute trace Tr(a) = a + a^p + ... + a^(p^(k-1)), always in F_p.
        let mut tr = vec![0u64; qs];
        for a in 0..qs {
            let e = FieldElement(a as u32);
            let mut acc = ctx.zero();
            let mut exp = 1u64;
            for _ in 0..k {
                acc = ctx.add(acc, ctx.pow(e, exp));
                exp *= p;
            }
            let coeffs = ctx.coeffs(acc);
            debug_assert!(coeffs[1..].iter().all(|&c| c == 0));
            tr[a] = coeffs[0];
        }
        ctx.tr = tr;
        ctx
    }

    #[inline(always)]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    #[inline(always)]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus polynomial coefficients c_0..c_k, present only for k > 1.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    #[inline(always)]
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    #[inline(always)]
    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    #[inline(always)]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline(always)]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline(always)]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q as usize + b.index()])
    }

    #[inline(always)]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.index() == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(FieldElement(self.inv[a.index()]))
    }

    /// Square-and-multiply exponentiation; 0^0 = 1 by convention.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise.
    #[inline(always)]
    pub fn quadratic_character(&self, a: FieldElement) -> i8 {
        self.chi[a.index()]
    }

    /// χ(-1), which decides sphere sizes and the rotation group order.
    #[inline(always)]
    pub fn chi_minus_one(&self) -> i8 {
        self.quadratic_character(self.neg(self.one()))
    }

    /// Absolute trace F_q → F_p as a residue in [0, p).
    #[inline(always)]
    pub fn trace(&self, a: FieldElement) -> u64 {
        self.tr[a.index()]
    }

    /// All q elements in the fixed enumeration order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    /// Nonzero elements in enumeration order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q as u32).map(FieldElement)
    }

    pub fn from_index(&self, i: usize) -> FieldElement {
        assert!(i < self.q as usize, "element index {i} out of range for F_{}", self.q);
        FieldElement(i as u32)
    }

    /// Embeds an integer into the prime subfield (reduction mod p).
    pub fn from_int(&self, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u64;
        FieldElement(r as u32)
    }

    /// Coefficient vector (c_0, ..., c_{k-1}) of the element.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        digits(a.0 as u64, self.p, self.k)
    }

    /// Element with the given coefficients, reduced mod p. Extra trailing
    /// coefficients beyond degree k-1 are rejected by debug assertion.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        debug_assert!(coeffs.len() <= self.k as usize);
        let mut full = vec![0u64; self.k as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            full[i] = c % self.p;
        }
        FieldElement(coeffs_to_index(&full, self.p) as u32)
    }
}

/// Odd prime powers up to and including `max`, ascending.
pub fn odd_prime_powers(max: u64) -> Vec<u64> {
    (3..=max).filter(|&q| prime_power_parts(q).is_some()).collect()
}

/// Splits q into (p, k) with p an odd prime and q = p^k, if possible.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 3 || q % 2 == 0 {
        return None;
    }
    let p = (3..=q).step_by(2).find(|&d| q % d == 0 && is_prime(d))?;
    let mut rest = q;
    let mut k = 0u32;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn digits(mut i: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = vec![0u64; k as usize];
    for c in out.iter_mut() {
        *c = i % p;
        i /= p;
    }
    out
}

fn coeffs_to_index(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two degree-<k coefficient vectors, reduced modulo the monic
/// modulus (k > 1) or just mod p (k = 1, modulus None).
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: Option<&[u64]>, p: u64) -> Vec<u64> {
    let k = a.len();
    if k == 1 {
        return vec![(a[0] * b[0]) % p];
    }
    let m = modulus.expect("extension fields carry a modulus");
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // The modulus is monic, so x^k ≡ -(c_0 + ... + c_{k-1} x^{k-1}).
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for j in 0..k {
            let sub = (c * m[j]) % p;
            prod[d - k + j] = (prod[d - k + j] + p - sub) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn poly_eval(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Remainder of `a` modulo monic `m`, coefficients mod p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for d in (dm..r.len()).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        r[d] = 0;
        for j in 0..dm {
            let sub = (c * m[j]) % p;
            r[d - dm + j] = (r[d - dm + j] + p - sub) % p;
        }
    }
    r.truncate(dm);
    r
}

/// First monic irreducible polynomial of degree k over F_p in the canonical
/// enumeration (constant coefficients ordered as the least significant digit,
/// so the search is by ascending index of the non-leading coefficients).
/// Irreducibility at desk scale: no roots, and no monic factor of degree
/// 2..=k/2 by exhaustive trial division.
fn find_irreducible(p: u64, k: u32) -> Option<Vec<u64>> {
    let total = p.pow(k);
    'cand: for i in 0..total {
        let mut coeffs = digits(i, p, k);
        coeffs.push(1); // monic of degree k
        for x in 0..p {
            if poly_eval(&coeffs, x, p) == 0 {
                continue 'cand;
            }
        }
        for d in 2..=(k / 2) {
            let dtotal = p.pow(d);
            for j in 0..dtotal {
                let mut div = digits(j, p, d);
                div.push(1);
                if poly_rem(&coeffs, &div, p).iter().all(|&c| c == 0) {
                    continue 'cand;
                }
            }
        }
        return Some(coeffs);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_odd_prime_powers() {
        assert_eq!(prime_power_parts(3), Some((3, 1)));
        assert_eq!(prime_power_parts(9), Some((3, 2)));
        assert_eq!(prime_power_parts(27), Some((3, 3)));
        assert_eq!(prime_power_parts(121), Some((11, 2)));
        assert_eq!(prime_power_parts(4), None);
        assert_eq!(prime_power_parts(15), None);
        assert_eq!(prime_power_parts(1), None);
        assert_eq!(prime_power_parts(2), None);
        assert_eq!(
            odd_prime_powers(49),
            vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49]
        );
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(FieldCtx::new(4), Err(Error::NotOddPrimePower(4))));
        assert!(matches!(FieldCtx::new(15), Err(Error::NotOddPrimePower(15))));
        assert!(matches!(
            FieldCtx::new(127),
            Err(Error::FieldTooLarge { q: 127, cap: 121 })
        ));
        assert!(FieldCtx::with_cap(127, 127).is_ok());
    }

    #[test]
    fn f5_inverse_and_pow() {
        let f = FieldCtx::new(5).unwrap();
        let two = f.from_index(2);
        assert_eq!(f.inv(two).unwrap(), f.from_index(3));
        assert_eq!(f.pow(two, 4), f.one());
        assert!(matches!(f.inv(f.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    fn f9_modulus_is_t_squared_plus_one() {
        let f = FieldCtx::new(9).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 0, 1][..]));
        // t * t = -1 = 2 + 0t under that modulus.
        let t = f.from_coeffs(&[0, 1]);
        let tt = f.mul(t, t);
        assert_eq!(f.coeffs(tt), vec![2, 0]);
        assert_eq!(tt, f.neg(f.one()));
    }

    #[test]
    fn f9_trace_of_t_vanishes() {
        let f = FieldCtx::new(9).unwrap();
        let t = f.from_coeffs(&[0, 1]);
        assert_eq!(f.trace(t), 0);
        assert_eq!(f.trace(f.zero()), 0);
    }

    #[test]
    fn prime_field_trace_is_identity() {
        let f = FieldCtx::new(7).unwrap();
        for a in f.elements() {
            assert_eq!(f.trace(a), a.index() as u64);
        }
    }

    #[test]
    fn quadratic_character_small_fields() {
        let f3 = FieldCtx::new(3).unwrap();
        assert_eq!(f3.quadratic_character(f3.neg(f3.one())), -1);
        let f5 = FieldCtx::new(5).unwrap();
        assert_eq!(f5.quadratic_character(f5.neg(f5.one())), 1);
        assert_eq!(f5.quadratic_character(f5.zero()), 0);
    }

    #[test]
    fn enumeration_is_deterministic_and_complete() {
        let f3 = FieldCtx::new(3).unwrap();
        let els: Vec<usize> = f3.elements().map(|e| e.index()).collect();
        assert_eq!(els, vec![0, 1, 2]);

        let f9 = FieldCtx::new(9).unwrap();
        let els: Vec<FieldElement> = f9.elements().collect();
        assert_eq!(els.len(), 9);
        let mut sorted = els.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        assert_eq!(els[0], f9.zero());

        let f7 = FieldCtx::new(7).unwrap();
        assert_eq!(f7.elements().next().unwrap(), f7.zero());
    }

    // Exhaustive field-axiom checks; feasible for every supported q.
    fn axioms(q: u64) {
        let f = FieldCtx::new(q).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a != f.zero() {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), f.one());
                assert_eq!(f.pow(a, q - 1), f.one(), "a^(q-1) != 1 at q={q}");
                for b in f.elements() {
                    // (a*b)*a^{-1} = b: multiplication is exactly invertible.
                    assert_eq!(f.mul(f.mul(a, b), ai), b);
                }
            }
        }
        // Exactly (q-1)/2 nonzero squares.
        let squares = f.units().filter(|&a| f.quadratic_character(a) == 1).count();
        assert_eq!(squares as u64, (q - 1) / 2);
        // χ is multiplicative on units.
        for a in f.units() {
            for b in f.units() {
                assert_eq!(
                    f.quadratic_character(f.mul(a, b)),
                    f.quadratic_character(a) * f.quadratic_character(b)
                );
            }
        }
        // Trace is additive and not identically zero.
        let mut nonzero_trace = false;
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    f.trace(f.add(a, b)),
                    (f.trace(a) + f.trace(b)) % f.p()
                );
            }
            nonzero_trace |= f.trace(a) != 0;
        }
        assert!(nonzero_trace);
    }

    #[test]
    fn field_axioms_small() {
        for q in [3, 5, 7, 9, 11, 13] {
            axioms(q);
        }
    }

    #[test]
    fn field_axioms_prime_powers() {
        for q in [25, 27, 49, 81, 121] {
            axioms(q);
        }
    }

    #[test]
    fn from_int_wraps_mod_p() {
        let f = FieldCtx::new(7).unwrap();
        assert_eq!(f.from_int(-1), f.from_index(6));
        assert_eq!(f.from_int(7), f.zero());
        assert_eq!(f.from_int(15), f.from_index(1));
    }
}
