//! Table-driven arithmetic in GF(q²) for odd prime powers q, with GF(q)
//! embedded as the subfield fixed by the Frobenius map x ↦ x^q.
//!
//! Elements are stored as logarithm codes: `0` is zero and `1 + k` is ξ^k,
//! where ξ is the class of `x` modulo the lexicographically least primitive
//! polynomial of degree 2e over GF(p). Addition and multiplication are full
//! q² × q² lookup tables, which is affordable for q ≤ 13.
//!
//! The field also carries the constants used throughout the crate: ξ, the
//! least non-square `s` of GF(q), and the least `i` with i² = s.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest q for which a field context can be built.
pub const MAX_Q: u32 = 13;

/// An element of GF(q²), encoded as `0` (zero) or `1 + k` for ξ^k.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize)]
#[serde(transparent)]
pub struct Fe(u8);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub const fn from_code(code: u8) -> Fe {
        Fe(code)
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete logarithm to base ξ, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0 as u32 - 1)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(k) => write!(f, "ξ^{k}"),
        }
    }
}

/// Lookup-table realization of GF(q) ⊂ GF(q²).
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    q2: u32,
    /// Low-order coefficients c_0..c_{2e-1} of the monic primitive polynomial.
    poly: Vec<u32>,
    /// code -> vector value Σ d_i p^i of the polynomial-basis coordinates.
    vec_of: Vec<u32>,
    /// vector value -> code.
    code_of: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    s: Fe,
    i_elem: Fe,
    half: Fe,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("poly", &self.poly)
            .finish()
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^e` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
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
    (rest == 1).then_some((p, e))
}

impl Field {
    /// Builds GF((p^e)²) with the default bound q ≤ [`MAX_Q`].
    pub fn new(p: u32, e: u32) -> Result<Field> {
        Field::with_bound(p, e, MAX_Q)
    }

    /// Builds the field for an odd prime power `q`.
    pub fn for_q(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, e)
    }

    pub fn with_bound(p: u32, e: u32, max_q: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let q = p.checked_pow(e).filter(|&q| e >= 1 && q <= max_q.min(MAX_Q)).ok_or(Error::FieldTooLarge {
            p,
            e,
            max_q: max_q.min(MAX_Q),
        })?;
        let q2 = q * q;
        let n = 2 * e as usize;
        let poly = least_primitive_poly(p, n);

        // Powers of x modulo poly give the exp table directly.
        let mut vec_of = vec![0u32; q2 as usize];
        let mut code_of = vec![0u8; q2 as usize];
        let mut digits = vec![0u32; n];
        digits[0] = 1;
        for k in 0..(q2 - 1) {
            let v = digits_to_value(&digits, p);
            vec_of[1 + k as usize] = v;
            code_of[v as usize] = (1 + k) as u8;
            times_x(&mut digits, &poly, p);
        }

        let size = q2 as usize;
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for a in 0..size {
            for b in 0..size {
                let sum = add_values(vec_of[a], vec_of[b], p, n);
                add[a * size + b] = code_of[sum as usize];
                mul[a * size + b] = if a == 0 || b == 0 { 0 } else { (1 + (a - 1 + b - 1) % (size - 1)) as u8 };
            }
        }
        let neg: Vec<u8> = (0..size).map(|a| (0..size).find(|&b| add[a * size + b] == 0).unwrap() as u8).collect();
        let inv: Vec<u8> =
            (0..size).map(|a| if a == 0 { 0 } else { (1 + (size - 1 - (a - 1)) % (size - 1)) as u8 }).collect();
        let frob: Vec<u8> =
            (0..size).map(|a| if a == 0 { 0 } else { (1 + ((a - 1) * q as usize) % (size - 1)) as u8 }).collect();

        let mut field = Field {
            p,
            e,
            q,
            q2,
            poly,
            vec_of,
            code_of,
            add,
            mul,
            neg,
            inv,
            frob,
            s: Fe::ZERO,
            i_elem: Fe::ZERO,
            half: Fe::ZERO,
        };
        let s = field
            .elements_by_value()
            .find(|&x| field.in_subfield(x) && !x.is_zero() && !field.is_square_in_subfield(x))
            .expect("GF(q) has non-squares for odd q");
        field.s = s;
        let i_elem = field
            .elements_by_value()
            .find(|&x| field.mul(x, x) == s)
            .expect("every element of GF(q) is a square in GF(q^2)");
        field.i_elem = i_elem;
        field.half = field.inv(field.add(Fe::ONE, Fe::ONE));
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    #[inline]
    pub fn q2(&self) -> u32 {
        self.q2
    }
    /// Coefficients c_0..c_{2e-1} of `x^{2e} + Σ c_i x^i`.
    pub fn primitive_poly(&self) -> &[u32] {
        &self.poly
    }
    /// The primitive element ξ (the class of `x`).
    #[inline]
    pub fn xi(&self) -> Fe {
        Fe(2)
    }
    /// The fixed non-square of GF(q).
    #[inline]
    pub fn s(&self) -> Fe {
        self.s
    }
    /// The element with square `s`; satisfies i + i^q = 0.
    #[inline]
    pub fn i_elem(&self) -> Fe {
        self.i_elem
    }

    /// ξ^k for any integer k.
    #[inline]
    pub fn xi_pow(&self, k: i64) -> Fe {
        let m = self.q2 as i64 - 1;
        Fe((1 + k.rem_euclid(m)) as u8)
    }

    /// All elements in code order: 0, 1, ξ, ξ², ...
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q2).map(|c| Fe(c as u8))
    }

    /// All elements ordered by their polynomial-basis value; this is the
    /// ordering used to pick canonical constants.
    pub fn elements_by_value(&self) -> impl Iterator<Item = Fe> + '_ {
        self.code_of.iter().map(|&c| Fe(c))
    }

    /// The q elements of GF(q), zero first.
    pub fn subfield(&self) -> impl Iterator<Item = Fe> + '_ {
        std::iter::once(Fe::ZERO).chain((0..self.q - 1).map(move |m| self.xi_pow((m * (self.q + 1)) as i64)))
    }

    /// Polynomial-basis value Σ d_i p^i of an element.
    #[inline]
    pub fn value(&self, a: Fe) -> u32 {
        self.vec_of[a.0 as usize]
    }

    /// Polynomial-basis coordinates d_0..d_{2e-1}.
    pub fn coords(&self, a: Fe) -> Vec<u32> {
        let mut v = self.value(a);
        (0..2 * self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_value(&self, v: u32) -> Option<Fe> {
        self.code_of.get(v as usize).map(|&c| Fe(c))
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(self.code_of[n.rem_euclid(self.p as i64) as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.0 as usize * self.q2 as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.0 as usize * self.q2 as usize + b.0 as usize])
    }

    /// Multiplicative inverse. Panics on zero; see [`Field::checked_inv`].
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero");
        Fe(self.inv[a.0 as usize])
    }

    pub fn checked_inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(Fe(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.checked_inv(b)?))
    }

    /// a^n for any integer n; exponents are reduced mod q² − 1 for nonzero
    /// bases. Zero to a negative power is an error.
    pub fn pow(&self, a: Fe, n: i64) -> Result<Fe> {
        match a.log() {
            Some(k) => Ok(self.xi_pow(k as i64 * n.rem_euclid(self.q2 as i64 - 1))),
            None if n > 0 => Ok(Fe::ZERO),
            None if n == 0 => Ok(Fe::ONE),
            None => Err(Error::ZeroInverse),
        }
    }

    /// a^n for n ≥ 0.
    #[inline]
    pub fn powu(&self, a: Fe, n: u32) -> Fe {
        match a.log() {
            Some(k) => {
                let m = self.q2 as u64 - 1;
                Fe((1 + (k as u64 * n as u64) % m) as u8)
            }
            None if n == 0 => Fe::ONE,
            None => Fe::ZERO,
        }
    }

    /// x ↦ x^q.
    #[inline]
    pub fn frob(&self, a: Fe) -> Fe {
        Fe(self.frob[a.0 as usize])
    }

    /// x^{q+1}, an element of GF(q).
    #[inline]
    pub fn norm(&self, a: Fe) -> Fe {
        self.mul(a, self.frob(a))
    }

    /// x + x^q, an element of GF(q).
    #[inline]
    pub fn trace(&self, a: Fe) -> Fe {
        self.add(a, self.frob(a))
    }

    #[inline]
    pub fn in_subfield(&self, a: Fe) -> bool {
        self.frob(a) == a
    }

    /// True iff a = y² for some y in GF(q²). Zero counts as a square.
    #[inline]
    pub fn is_square(&self, a: Fe) -> bool {
        a.0 == 0 || (a.0 - 1).is_multiple_of(2)
    }

    /// Squareness inside GF(q) for an element of GF(q): a^{(q−1)/2} = 1.
    pub fn is_square_in_subfield(&self, a: Fe) -> bool {
        debug_assert!(self.in_subfield(a));
        match a.log() {
            None => true,
            Some(k) => (k / (self.q + 1)).is_multiple_of(2),
        }
    }

    /// Writes `a = x0 + i·x1` with x0, x1 in GF(q).
    pub fn decompose(&self, a: Fe) -> (Fe, Fe) {
        let conj = self.frob(a);
        let x0 = self.mul(self.add(a, conj), self.half);
        let two_i = self.add(self.i_elem, self.i_elem);
        let x1 = self.mul(self.sub(a, conj), self.inv(two_i));
        (x0, x1)
    }

    pub fn compose(&self, x0: Fe, x1: Fe) -> Fe {
        self.add(x0, self.mul(self.i_elem, x1))
    }

    /// Human-readable polynomial-basis string such as `2+1x`.
    pub fn poly_string(&self, a: Fe) -> String {
        let c = self.coords(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, d)| match i {
                0 => format!("{d}"),
                1 => format!("{d}x"),
                _ => format!("{d}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn info(&self) -> FieldInfo {
        let code = |a: Fe| ElemInfo { code: a.code(), poly: self.coords(a) };
        FieldInfo {
            p: self.p,
            e: self.e,
            q: self.q,
            q2: self.q2,
            primitive_poly: self.poly.clone(),
            xi: code(self.xi()),
            s: code(self.s),
            i_elem: code(self.i_elem),
        }
    }
}

/// Serializable summary of a field context.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FieldInfo {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub q2: u32,
    /// c_0..c_{2e-1} of the monic polynomial x^{2e} + Σ c_i x^i.
    pub primitive_poly: Vec<u32>,
    pub xi: ElemInfo,
    pub s: ElemInfo,
    pub i_elem: ElemInfo,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ElemInfo {
    pub code: u8,
    pub poly: Vec<u32>,
}

fn digits_to_value(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn add_values(a: u32, b: u32, p: u32, n: usize) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..n {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Multiplies the residue in `d` by x modulo the monic polynomial.
fn times_x(d: &mut [u32], poly: &[u32], p: u32) {
    let n = d.len();
    let top = d[n - 1];
    for i in (1..n).rev() {
        d[i] = d[i - 1];
    }
    d[0] = 0;
    if top != 0 {
        for i in 0..n {
            d[i] = (d[i] + (p - poly[i]) * top) % p;
        }
    }
}

/// The lexicographically least (by Σ c_i p^i) monic polynomial of degree n
/// over GF(p) for which x has multiplicative order p^n − 1.
fn least_primitive_poly(p: u32, n: usize) -> Vec<u32> {
    let order = p.pow(n as u32) - 1;
    (0..p.pow(n as u32))
        .map(|v| {
            let mut v = v;
            (0..n)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect::<Vec<u32>>()
        })
        .find(|poly| {
            if poly[0] == 0 {
                return false;
            }
            let mut d = vec![0u32; n];
            d[0] = 1;
            for k in 1..=order {
                times_x(&mut d, poly, p);
                let is_one = d[0] == 1 && d[1..].iter().all(|&x| x == 0);
                if is_one {
                    return k == order;
                }
            }
            false
        })
        .expect("primitive polynomials exist over every finite field")
}
