//! Coefficient fields: prime fields of word size and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The default modulus, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u32 = 2_147_483_647;

/// An exact coefficient field.
///
/// Elements are plain values; all arithmetic goes through the field
/// descriptor so that a runtime modulus can be carried around.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// A uniformly drawn element (bounded integers for the rationals).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// The `--field` spelling of this field.
    fn descriptor(&self) -> String;

    /// `acc -= c * a`
    #[inline]
    fn sub_mul_assign(&self, acc: &mut Self::Elem, c: &Self::Elem, a: &Self::Elem) {
        *acc = self.sub(acc, &self.mul(c, a));
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Integers modulo a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidArgument(format!("modulus {p} must be below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Canonical residue of an arbitrary integer.
    pub fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Reduce a rational number, `None` when the denominator vanishes mod p.
    pub fn reduce_rational(&self, q: &BigRational) -> Option<u32> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        self.div(&num, &den)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits in u32")
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn format_elem(&self, a: &u32) -> String {
        // symmetric representative keeps small negatives readable
        if *a > self.p / 2 {
            format!("-{}", self.p - *a)
        } else {
            a.to_string()
        }
    }
    fn descriptor(&self) -> String {
        format!("fp:{}", self.p)
    }
    #[inline]
    fn sub_mul_assign(&self, acc: &mut u32, c: &u32, a: &u32) {
        let prod = ((*c as u64 * *a as u64) % self.p as u64) as u32;
        *acc = self.sub(acc, &prod);
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Bound on integer entries drawn by [`Rationals::random`].
pub const RATIONAL_SAMPLE_BOUND: i64 = 1_000_000;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn descriptor(&self) -> String {
        "qq".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_check() {
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(21).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::default();
        for a in [1u32, 2, 3, 12345, DEFAULT_PRIME - 1] {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert!(f.inv(&0).is_none());
    }

    #[test]
    fn symmetric_format() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.format_elem(&6), "-1");
        assert_eq!(f.format_elem(&3), "3");
    }

    proptest! {
        // reduction mod p is a ring homomorphism from the integers
        #[test]
        fn prime_and_rational_agree(a in -1000i64..1000, b in -1000i64..1000, c in 1i64..1000) {
            let fp = PrimeField::default();
            let qq = Rationals;
            let (qa, qb, qc) = (qq.from_i64(a), qq.from_i64(b), qq.from_i64(c));
            let expr = qq.div(&qq.sub(&qq.mul(&qa, &qb), &qa), &qc).unwrap();
            let (pa, pb, pc) = (fp.from_i64(a), fp.from_i64(b), fp.from_i64(c));
            let pexpr = fp.div(&fp.sub(&fp.mul(&pa, &pb), &pa), &pc).unwrap();
            prop_assert_eq!(fp.reduce_rational(&expr).unwrap(), pexpr);
        }
    }
}
