//! Exact arithmetic in GF(2^s) in a fixed polynomial basis.
//!
//! Elements are bit vectors: bit `i` of [`GfElement`] is the coefficient of
//! `x^i` in the polynomial basis determined by the context modulus. Addition
//! is XOR; multiplication is carry-less shift-and-reduce against the modulus.

use crate::error::{Error, Result};

/// Largest supported extension degree over F_2.
pub const MAX_DEGREE: u32 = 16;

/// One fixed irreducible polynomial per degree, bit `i` = coefficient of `x^i`.
/// Degree `s` lives at index `s - 1`. Entries are low-weight irreducibles;
/// the constructor re-checks irreducibility so a bad entry cannot slip through.
const MODULUS_TABLE: [u32; MAX_DEGREE as usize] = [
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11B,   // x^8 + x^4 + x^3 + x + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
];

fn f2_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn f2_rem(mut a: u64, b: u64) -> u64 {
    debug_assert!(b != 0);
    let db = f2_degree(b);
    while a != 0 && f2_degree(a) >= db {
        a ^= b << (f2_degree(a) - db);
    }
    a
}

/// Irreducibility over F_2 by trial division by every polynomial of degree
/// at most deg(p)/2.
fn f2_is_irreducible(p: u64) -> bool {
    let d = f2_degree(p);
    if d < 1 {
        return false;
    }
    for q in 2u64..(1u64 << (d / 2 + 1)) {
        if f2_degree(q) >= 1 && f2_rem(p, q) == 0 {
            return false;
        }
    }
    true
}

/// The field GF(2^s) presented as F_2[x]/(modulus).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GfContext {
    s: u32,
    modulus: u32,
}

/// An element of GF(2^s); bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElement {
    bits: u32,
}

impl GfElement {
    pub const ZERO: GfElement = GfElement { bits: 0 };
    pub const ONE: GfElement = GfElement { bits: 1 };

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == 1
    }
}

impl std::ops::Add for GfElement {
    type Output = GfElement;
    fn add(self, rhs: GfElement) -> GfElement {
        GfElement { bits: self.bits ^ rhs.bits }
    }
}

impl std::ops::AddAssign for GfElement {
    fn add_assign(&mut self, rhs: GfElement) {
        self.bits ^= rhs.bits;
    }
}

impl GfContext {
    /// A context with an explicit monic irreducible modulus of degree `s`.
    pub fn new(s: u32, modulus: u32) -> Result<Self> {
        if s == 0 || s > MAX_DEGREE {
            return Err(Error::Config(format!(
                "extension degree must be in 1..={MAX_DEGREE}, got {s}"
            )));
        }
        if modulus >> s != 1 {
            return Err(Error::Config(format!(
                "modulus {modulus:#x} is not monic of degree {s}"
            )));
        }
        if !f2_is_irreducible(modulus as u64) {
            return Err(Error::Config(format!("modulus {modulus:#x} is reducible")));
        }
        Ok(GfContext { s, modulus })
    }

    /// The fixed modulus for degree `s` from the built-in table.
    pub fn with_degree(s: u32) -> Result<Self> {
        if s == 0 || s > MAX_DEGREE {
            return Err(Error::Config(format!(
                "extension degree must be in 1..={MAX_DEGREE}, got {s}"
            )));
        }
        GfContext::new(s, MODULUS_TABLE[(s - 1) as usize])
    }

    /// The coefficient field used for the order-2^n constructions:
    /// GF(2^max(2, n-2)). The degree is at least 2 because the root
    /// construction needs two distinct nonzero scalars.
    pub fn for_group_order(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("group order exponent must be >= 3, got {n}")));
        }
        GfContext::with_degree(2.max(n - 2))
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements.
    pub fn order(&self) -> u64 {
        1u64 << self.s
    }

    /// Checked element constructor; the bit pattern must fit the degree.
    pub fn element(&self, bits: u32) -> Result<GfElement> {
        if bits >> self.s != 0 {
            return Err(Error::Dimension(format!(
                "element bits {bits:#x} exceed degree-{} field",
                self.s
            )));
        }
        Ok(GfElement { bits })
    }

    pub fn mul(&self, a: GfElement, b: GfElement) -> GfElement {
        debug_assert!(a.bits >> self.s == 0 && b.bits >> self.s == 0);
        let mut a = a.bits;
        let mut b = b.bits;
        let mut out = 0u32;
        while b != 0 {
            if b & 1 != 0 {
                out ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.s & 1 != 0 {
                a ^= self.modulus;
            }
        }
        GfElement { bits: out }
    }

    /// Square-and-multiply on top of `mul`.
    pub fn pow(&self, a: GfElement, mut e: u64) -> GfElement {
        let mut base = a;
        let mut out = GfElement::ONE;
        while e != 0 {
            if e & 1 != 0 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        out
    }

    pub fn inv(&self, a: GfElement) -> Result<GfElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a^(2^s - 2) = a^(-1) in a field of 2^s elements.
        Ok(self.pow(a, self.order() - 2))
    }

    /// All nonzero elements, in increasing bit-pattern order.
    pub fn units(&self) -> Vec<GfElement> {
        (1..self.order() as u32).map(|bits| GfElement { bits }).collect()
    }

    /// The nonzero elements of the subfield GF(2^d), i.e. the fixed points of
    /// the d-th Frobenius power. Requires d | s.
    pub fn subfield_units(&self, d: u32) -> Result<Vec<GfElement>> {
        if d == 0 || self.s % d != 0 {
            return Err(Error::Config(format!(
                "GF(2^{d}) is not a subfield of GF(2^{})",
                self.s
            )));
        }
        Ok(self
            .units()
            .into_iter()
            .filter(|&a| self.pow(a, 1u64 << d) == a)
            .collect())
    }

    /// The smallest (by bit pattern) multiplicative generator of the unit group.
    /// An element generates iff a^((2^s-1)/p) != 1 for every prime p | 2^s-1.
    pub fn generator(&self) -> GfElement {
        let full_order = self.order() - 1;
        let prime_factors = prime_factors(full_order);
        'cand: for a in self.units() {
            for &p in &prime_factors {
                if self.pow(a, full_order / p).is_one() {
                    continue 'cand;
                }
            }
            return a;
        }
        unreachable!("every finite field has a multiplicative generator")
    }

    /// Little-endian hex encoding of an element's coefficient bits.
    pub fn element_to_hex(&self, a: GfElement) -> String {
        bits_to_hex(a.bits, self.s)
    }

    pub fn element_from_hex(&self, hex: &str) -> Result<GfElement> {
        let bits = bits_from_hex(hex)
            .ok_or_else(|| Error::Config(format!("invalid element hex {hex:?}")))?;
        self.element(bits)
    }

    /// Little-endian hex encoding of the modulus bits (s+1 of them).
    pub fn modulus_hex(&self) -> String {
        bits_to_hex(self.modulus, self.s + 1)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn bits_to_hex(bits: u32, width_bits: u32) -> String {
    let nbytes = width_bits.div_ceil(8) as usize;
    let mut out = String::with_capacity(2 * nbytes);
    for i in 0..nbytes {
        out.push_str(&format!("{:02x}", (bits >> (8 * i)) & 0xff));
    }
    out
}

fn bits_from_hex(hex: &str) -> Option<u32> {
    if hex.is_empty() || hex.len() % 2 != 0 || hex.len() > 8 {
        return None;
    }
    let mut bits = 0u32;
    for i in (0..hex.len()).step_by(2) {
        let byte = u8::from_str_radix(&hex[i..i + 2], 16).ok()?;
        bits |= (byte as u32) << (4 * i);
    }
    Some(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: schoolbook polynomial product over F_2 followed by
    /// long division by the modulus. Used to cross-check the shift-and-reduce
    /// multiplier.
    fn naive_mul(s: u32, modulus: u32, a: u32, b: u32) -> u32 {
        let mut conv: u64 = 0;
        for i in 0..s {
            if a >> i & 1 != 0 {
                conv ^= (b as u64) << i;
            }
        }
        f2_rem(conv, modulus as u64) as u32
    }

    fn f4() -> GfContext {
        GfContext::with_degree(2).unwrap()
    }

    #[test]
    fn modulus_table_entries_are_irreducible() {
        for s in 1..=MAX_DEGREE {
            let ctx = GfContext::with_degree(s).unwrap();
            assert_eq!(ctx.degree(), s);
            assert_eq!(ctx.modulus() >> s, 1, "degree {s} modulus not monic");
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2
        assert!(matches!(GfContext::new(2, 0x5), Err(Error::Config(_))));
    }

    #[test]
    fn mul_matches_naive_table_over_f4() {
        let ctx = f4();
        for a in 0..4u32 {
            for b in 0..4u32 {
                let got = ctx.mul(ctx.element(a).unwrap(), ctx.element(b).unwrap());
                assert_eq!(got.bits(), naive_mul(2, ctx.modulus(), a, b), "{a} * {b}");
            }
        }
        let g = ctx.element(0b10).unwrap();
        let g1 = ctx.element(0b11).unwrap();
        assert_eq!(ctx.mul(GfElement::ONE, g), g, "1 * g");
        assert_eq!(ctx.mul(g, g), g1, "g^2 = g + 1");
        assert_eq!(ctx.mul(g, g1), GfElement::ONE, "g * (g + 1) = 1");
    }

    #[test]
    fn inv_over_f4() {
        let ctx = f4();
        let g = ctx.element(0b10).unwrap();
        let g1 = ctx.element(0b11).unwrap();
        assert_eq!(ctx.inv(GfElement::ONE).unwrap(), GfElement::ONE);
        assert_eq!(ctx.inv(g).unwrap(), g1);
        assert_eq!(ctx.inv(g1).unwrap(), g);
        assert!(matches!(ctx.inv(GfElement::ZERO), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inv_is_an_involution_on_units() {
        for s in [2, 3, 4] {
            let ctx = GfContext::with_degree(s).unwrap();
            for a in ctx.units() {
                let inv = ctx.inv(a).unwrap();
                assert!(ctx.mul(a, inv).is_one());
                assert_eq!(ctx.inv(inv).unwrap(), a);
            }
        }
    }

    #[test]
    fn unit_group_order() {
        for s in [2, 3, 4, 5] {
            let ctx = GfContext::with_degree(s).unwrap();
            for a in ctx.units() {
                assert!(ctx.pow(a, ctx.order() - 1).is_one(), "a^(2^{s}-1) != 1");
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for s in [2, 3] {
            let ctx = GfContext::with_degree(s).unwrap();
            for a in 0..ctx.order() as u32 {
                for b in 0..ctx.order() as u32 {
                    let a = ctx.element(a).unwrap();
                    let b = ctx.element(b).unwrap();
                    let lhs = ctx.mul(a + b, a + b);
                    let rhs = ctx.mul(a, a) + ctx.mul(b, b);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn units_product_is_one() {
        // F_2: the only unit is 1.
        let f2 = GfContext::with_degree(1).unwrap();
        assert_eq!(f2.units(), vec![GfElement::ONE]);

        // Oracle: fold with the naive multiplier.
        for s in [2, 3] {
            let ctx = GfContext::with_degree(s).unwrap();
            let units = ctx.units();
            assert_eq!(units.len(), (1usize << s) - 1);
            let prod = units
                .iter()
                .fold(1u32, |acc, u| naive_mul(s, ctx.modulus(), acc, u.bits()));
            assert_eq!(prod, 1, "product of GF(2^{s})* units");
        }
    }

    #[test]
    fn subfield_units_of_f16() {
        let ctx = GfContext::with_degree(4).unwrap();
        let sub = ctx.subfield_units(2).unwrap();
        assert_eq!(sub.len(), 3);
        assert!(sub.contains(&GfElement::ONE));
        // closed under multiplication
        for &a in &sub {
            for &b in &sub {
                assert!(sub.contains(&ctx.mul(a, b)));
            }
        }
        assert!(ctx.subfield_units(3).is_err());
    }

    #[test]
    fn subfield_units_trivial_cases() {
        let ctx = f4();
        assert_eq!(ctx.subfield_units(1).unwrap(), vec![GfElement::ONE]);
        assert_eq!(ctx.subfield_units(2).unwrap().len(), 3);
    }

    #[test]
    fn generator_has_full_order() {
        for s in [2, 3, 4] {
            let ctx = GfContext::with_degree(s).unwrap();
            let g = ctx.generator();
            let q1 = ctx.order() - 1;
            assert!(ctx.pow(g, q1).is_one());
            let mut seen = std::collections::HashSet::new();
            let mut cur = GfElement::ONE;
            for _ in 0..q1 {
                cur = ctx.mul(cur, g);
                seen.insert(cur);
            }
            assert_eq!(seen.len() as u64, q1, "generator of GF(2^{s})* not primitive");
        }
    }

    #[test]
    fn element_rejects_out_of_range_bits() {
        let ctx = f4();
        assert!(ctx.element(3).is_ok());
        assert!(matches!(ctx.element(4), Err(Error::Dimension(_))));
    }

    #[test]
    fn hex_round_trip() {
        let ctx = GfContext::with_degree(11).unwrap();
        let a = ctx.element(0x5A3).unwrap();
        let hex = ctx.element_to_hex(a);
        assert_eq!(hex, "a305");
        assert_eq!(ctx.element_from_hex(&hex).unwrap(), a);
        assert_eq!(f4().element_to_hex(f4().element(0b10).unwrap()), "02");
    }
}
