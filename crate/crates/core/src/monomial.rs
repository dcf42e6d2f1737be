//! Exponent vectors with a cached total degree.

use std::fmt;

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 16;

/// Largest exponent of a single variable.
pub const MAX_EXPONENT: u32 = u8::MAX as u32;

/// A monomial `x^a` in at most [`MAX_VARS`] variables.
///
/// Stored inline so that it is `Copy` and cheap to hash; unused trailing
/// slots are always zero, which keeps the derived `Eq`/`Hash` correct.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    nvars: u8,
    degree: u16,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    /// Panics when an exponent exceeds [`MAX_EXPONENT`]; see [`Monomial::try_new`].
    pub fn new(exps: &[u32]) -> Self {
        Self::try_new(exps).expect("exponent out of range")
    }

    pub fn try_new(exps: &[u32]) -> Option<Self> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut m = Monomial::one(exps.len());
        let mut deg = 0u32;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            if e > MAX_EXPONENT {
                return None;
            }
            *slot = e as u8;
            deg += e;
        }
        m.degree = deg as u16;
        Some(m)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u8] {
        &self.exps[..self.nvars as usize]
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.raw().iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Largest index of a variable dividing the monomial.
    pub fn max_var(&self) -> Option<usize> {
        self.raw().iter().rposition(|&e| e > 0)
    }

    /// Smallest index of a variable dividing the monomial.
    pub fn min_var(&self) -> Option<usize> {
        self.raw().iter().position(|&e| e > 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m.degree += other.degree;
        m
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a -= *b;
        }
        m.degree -= other.degree;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0u16;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
            deg += *a as u16;
        }
        m.degree = deg;
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0u16;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
            deg += *a as u16;
        }
        m.degree = deg;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Multiply by `x_i^e`.
    pub fn mul_var(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        let v = m.exps[i] as u32 + e;
        assert!(v <= MAX_EXPONENT, "exponent overflow");
        m.exps[i] = v as u8;
        m.degree += e as u16;
        m
    }

    /// Divide by `x_i`, `None` when `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    /// Replace the exponent of `x_i` by `e`.
    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        assert!(e <= MAX_EXPONENT, "exponent overflow");
        m.degree = m.degree - m.exps[i] as u16 + e as u16;
        m.exps[i] = e as u8;
        m
    }

    /// Drop the first `k` variables (their exponents must be accounted for by the caller).
    pub fn drop_front(&self, k: usize) -> Monomial {
        let e: Vec<u32> = self.raw()[k..].iter().map(|&e| e as u32).collect();
        Monomial::new(&e)
    }

    /// Prepend `k` variables with the given exponents.
    pub fn prepend(&self, front: &[u32]) -> Monomial {
        let mut e = front.to_vec();
        e.extend(self.raw().iter().map(|&e| e as u32));
        Monomial::new(&e)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.raw().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }

    /// Lexicographic comparison of raw exponent vectors, ignoring degree.
    #[inline]
    pub(crate) fn cmp_lex_raw(&self, other: &Monomial) -> std::cmp::Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

/// All monomials of degree `d` in `n` variables, lexicographically descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut exps = vec![0u32; n];
    fill(&mut exps, 0, d, &mut out);
    out
}

fn fill(exps: &mut [u32], i: usize, left: u32, out: &mut Vec<Monomial>) {
    if i == exps.len() - 1 {
        exps[i] = left;
        out.push(Monomial::new(exps));
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        fill(exps, i + 1, left - e, out);
    }
    exps[i] = 0;
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_monomials(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_tracks_exponents() {
        let m = Monomial::new(&[2, 0, 3]);
        assert_eq!(m.degree(), 5);
        let n = Monomial::new(&[1, 1, 0]);
        assert_eq!(m.mul(&n).degree(), 7);
        assert_eq!(m.lcm(&n), Monomial::new(&[2, 1, 3]));
        assert_eq!(m.gcd(&n), Monomial::new(&[1, 0, 0]));
        assert!(Monomial::new(&[1, 0, 1]).divides(&m));
        assert!(!n.divides(&m));
        assert_eq!(m.try_div(&Monomial::new(&[1, 0, 1])), Some(Monomial::new(&[1, 0, 2])));
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..5 {
            for d in 0..7 {
                let ms = monomials_of_degree(n, d);
                assert_eq!(ms.len() as u64, count_monomials(n, d));
                assert!(ms.iter().all(|m| m.degree() == d));
            }
        }
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms[0], Monomial::new(&[2, 0, 0]));
        assert_eq!(ms[5], Monomial::new(&[0, 0, 2]));
    }

    #[test]
    fn rejects_large_exponent() {
        assert!(Monomial::try_new(&[256]).is_none());
        assert!(Monomial::try_new(&[255]).is_some());
    }
}
