//! Monomial ideals: minimal generators, Hilbert series, Borel and stable
//! tests, Eliahou–Kervaire Betti numbers and saturation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{binomial, count_monomials, monomials_of_degree, Monomial};

/// Canonical generator order: degree ascending, then lexicographically descending.
fn generator_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp_lex_raw(a))
}

fn default_names(n: usize) -> Arc<[String]> {
    (0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().into()
}

/// Remove non-minimal generators and sort canonically.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable_by(generator_cmp);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    names: Arc<[String]>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Ideal in `x0 .. x{nvars-1}`.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        Self::with_names(default_names(nvars), gens)
    }

    pub fn with_names(names: Arc<[String]>, gens: Vec<Monomial>) -> Self {
        assert!(gens.iter().all(|g| g.nvars() == names.len()), "generator has the wrong number of variables");
        MonomialIdeal {
            names,
            gens: minimalize(gens),
        }
    }

    /// Parse exponent vectors, handy for fixtures.
    pub fn from_exponents(nvars: usize, exps: &[&[u32]]) -> Self {
        Self::new(nvars, exps.iter().map(|e| Monomial::new(e)).collect())
    }

    /// Parse one generator per line (or comma separated) in the polynomial grammar.
    pub fn parse(names: Arc<[String]>, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for item in text.split(['\n', ',']) {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let mut e = vec![0u32; names.len()];
            if item != "1" {
                for factor in item.split('*') {
                    let (var, exp) = match factor.split_once('^') {
                        Some((v, x)) => (
                            v,
                            x.parse::<u32>()
                                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                        ),
                        None => (factor, 1),
                    };
                    let i = names
                        .iter()
                        .position(|n| n == var)
                        .ok_or_else(|| Error::Parse(format!("unknown variable `{var}`")))?;
                    e[i] += exp;
                }
            }
            gens.push(Monomial::try_new(&e).ok_or_else(|| Error::Parse(format!("exponent too large in `{item}`")))?);
        }
        Ok(Self::with_names(names, gens))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &Arc<[String]> {
        &self.names
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    pub fn generators_of_degree(&self, d: u32) -> Vec<Monomial> {
        self.gens.iter().filter(|g| g.degree() == d).copied().collect()
    }

    /// Monomials of degree `d` lying in the ideal, lexicographically descending.
    pub fn degree_part(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), d)
            .into_iter()
            .filter(|m| self.contains(m))
            .collect()
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Self::with_names(self.names.clone(), gens)
    }

    /// `J : m`.
    pub fn quotient(&self, m: &Monomial) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.try_div(&g.gcd(m)).unwrap()).collect();
        Self::with_names(self.names.clone(), gens)
    }

    /// `m * J`.
    pub fn multiply(&self, m: &Monomial) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.mul(m)).collect();
        Self::with_names(self.names.clone(), gens)
    }

    /// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `S/J`,
    /// coefficients from `t^0` upward.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let mut n = numerator(&self.gens);
        while n.len() > 1 && *n.last().unwrap() == 0 {
            n.pop();
        }
        n
    }

    /// Krull dimension, degree and Hilbert function of `S/J`.
    pub fn hilbert(&self, bound: u32) -> HilbertData {
        let numerator = self.hilbert_numerator();
        let n = self.nvars() as i64;
        // Divide out (1 - t) while N(1) = 0.
        let mut q = numerator.clone();
        let mut dim = n;
        if q.iter().all(|&c| c == 0) {
            dim = -1;
        } else {
            while dim > 0 && q.iter().sum::<i64>() == 0 {
                q = divide_one_minus_t(&q);
                dim -= 1;
            }
        }
        let degree = if dim < 0 { 0 } else { q.iter().sum::<i64>() };
        let dims = (0..=bound).map(|d| hf_from_numerator(&numerator, self.nvars(), d)).collect();
        let stable_value = match dim {
            -1 | 0 => Some(0),
            1 => Some(degree as u64),
            _ => None,
        };
        HilbertData {
            function: HilbertFunction {
                dims,
                stable_value,
                bound,
            },
            dimension: dim,
            degree: degree as u64,
            numerator,
        }
    }

    pub fn hilbert_function(&self, bound: u32) -> HilbertFunction {
        self.hilbert(bound).function
    }

    /// Borel-fixed: `x_i m in J` implies `x_j m in J` for every `j < i`.
    pub fn is_borel_fixed(&self) -> bool {
        self.gens.iter().all(|g| {
            (1..self.nvars()).all(|i| {
                g.exponent(i) == 0
                    || (0..i).all(|j| self.contains(&g.div_var(i).unwrap().mul_var(j, 1)))
            })
        })
    }

    /// Stable: the Borel move is only required from the largest variable.
    pub fn is_stable(&self) -> bool {
        self.gens.iter().all(|g| match g.max_var() {
            Some(i) => (0..i).all(|j| self.contains(&g.div_var(i).unwrap().mul_var(j, 1))),
            None => true,
        })
    }

    /// Regularity of a Borel-fixed ideal: its largest generator degree.
    pub fn borel_regularity(&self) -> Result<u32> {
        if !self.is_borel_fixed() {
            return Err(Error::NotBorelFixed);
        }
        Ok(self.max_generator_degree().unwrap_or(0))
    }

    /// Graded Betti numbers from the Eliahou–Kervaire resolution:
    /// `beta_{i, i+d} = sum over generators u of degree d of C(max(u), i)`.
    pub fn ek_betti(&self) -> Result<BettiTable> {
        if !self.is_stable() {
            return Err(Error::NotStable);
        }
        let mut entries = BTreeMap::new();
        for g in &self.gens {
            let m = g.max_var().unwrap_or(0) as u64;
            for i in 0..=m {
                *entries.entry((i as usize, g.degree() + i as u32)).or_insert(0) += binomial(m, i);
            }
        }
        Ok(BettiTable { entries })
    }

    /// Saturation with respect to a variable or to the maximal ideal.
    ///
    /// Returns the saturated ideal and the least degree from which the
    /// ideal agrees with it (`None` when they never agree).
    pub fn saturate(&self, target: SaturationTarget) -> Result<(MonomialIdeal, Option<u32>)> {
        let i = match target {
            SaturationTarget::Variable(i) => {
                if i >= self.nvars() {
                    return Err(Error::InvalidArgument(format!("no variable with index {i}")));
                }
                i
            }
            SaturationTarget::Maximal => {
                if !self.is_borel_fixed() {
                    return Err(Error::NotBorelFixed);
                }
                self.nvars() - 1
            }
        };
        let gens = self.gens.iter().map(|g| g.with_exponent(i, 0)).collect();
        let sat = Self::with_names(self.names.clone(), gens);
        let top = self
            .max_generator_degree()
            .unwrap_or(0)
            .max(sat.max_generator_degree().unwrap_or(0));
        let a = self.hilbert_function(top);
        let b = sat.hilbert_function(top);
        if a.dims[top as usize] != b.dims[top as usize] {
            return Ok((sat, None));
        }
        let mut d = top;
        while d > 0 && a.dims[d as usize - 1] == b.dims[d as usize - 1] {
            d -= 1;
        }
        Ok((sat, Some(d)))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.fmt_with(&self.names)).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationTarget {
    Variable(usize),
    /// `J : m^infinity`; for Borel-fixed ideals this is saturation by the last variable.
    Maximal,
}

/// `h(d) = dim_k (S/I)_d` for `d = 0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction {
    pub dims: Vec<u64>,
    /// Eventual constant value, when the quotient has dimension at most one.
    pub stable_value: Option<u64>,
    pub bound: u32,
}

impl HilbertFunction {
    pub fn from_values(dims: Vec<u64>, stable_value: Option<u64>) -> Self {
        assert!(!dims.is_empty());
        let bound = dims.len() as u32 - 1;
        HilbertFunction {
            dims,
            stable_value,
            bound,
        }
    }

    /// Value at `d`; beyond the bound only the stable value is known.
    pub fn get(&self, d: u32) -> Option<u64> {
        match self.dims.get(d as usize) {
            Some(v) => Some(*v),
            None => self.stable_value,
        }
    }

    /// Same function evaluated up to a different bound (must be known there).
    pub fn truncate(&self, bound: u32) -> Option<Self> {
        let dims = (0..=bound).map(|d| self.get(d)).collect::<Option<Vec<_>>>()?;
        Some(HilbertFunction {
            dims,
            stable_value: self.stable_value,
            bound,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub function: HilbertFunction,
    /// Krull dimension of `S/J`, `-1` for the unit ideal.
    pub dimension: i64,
    pub degree: u64,
    pub numerator: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    /// `(i, j) -> beta_{i,j}`, zero entries omitted.
    pub entries: BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `max { j - i : beta_{i,j} != 0 }`.
    pub fn regularity(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, j)| j - i as u32).max()
    }
}

fn hf_from_numerator(num: &[i64], n: usize, d: u32) -> u64 {
    // coefficient of t^d in N(t) / (1 - t)^n
    let mut acc: i128 = 0;
    for (k, &c) in num.iter().enumerate() {
        if c == 0 || k as u32 > d {
            continue;
        }
        acc += c as i128 * count_monomials(n, d - k as u32) as i128;
    }
    assert!(acc >= 0, "negative Hilbert function value");
    acc as u64
}

fn divide_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1 - t) q  =>  q_k = sum_{i <= k} p_i
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut run = 0;
    for &c in &p[..p.len() - 1] {
        run += c;
        q.push(run);
    }
    if q.is_empty() {
        q.push(0);
    }
    q
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

/// Hilbert series numerator by the pivot recursion
/// `N(J) = N(J + (x_i^k)) + t^k N(J : x_i^k)`.
fn numerator(gens: &[Monomial]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, g)| gens[i + 1..].iter().all(|h| g.is_coprime(h)));
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] = -1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // Pivot on the variable occurring in the most non-pure-power generators.
    let n = gens[0].nvars();
    let mixed: Vec<&Monomial> = gens.iter().filter(|g| g.min_var() != g.max_var()).collect();
    let (var, _) = (0..n)
        .map(|i| (i, mixed.iter().filter(|g| g.exponent(i) > 0).count()))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .unwrap();
    let k = mixed
        .iter()
        .map(|g| g.exponent(var))
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let pivot = Monomial::one(n).mul_var(var, k);

    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).copied().collect();
    plus.push(pivot);
    let plus = minimalize(plus);
    let colon = minimalize(gens.iter().map(|g| g.try_div(&g.gcd(&pivot)).unwrap()).collect());

    let mut out = numerator(&plus);
    poly_add_shifted(&mut out, &numerator(&colon), k as usize);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens)
    }

    /// Count standard monomials directly.
    fn brute_hf(j: &MonomialIdeal, d: u32) -> u64 {
        monomials_of_degree(j.nvars(), d).iter().filter(|m| !j.contains(m)).count() as u64
    }

    #[test]
    fn minimal_generators() {
        let j = ideal(3, &[&[2, 0, 0], &[3, 1, 0], &[1, 1, 0], &[2, 0, 0]]);
        assert_eq!(j.len(), 2);
        assert_eq!(j.to_string(), "(x0^2, x0*x1)");
    }

    #[test]
    fn hilbert_examples() {
        let j = ideal(2, &[&[1, 0]]);
        let h = j.hilbert(5);
        assert_eq!(h.function.dims, vec![1; 6]);
        assert_eq!((h.dimension, h.degree), (1, 1));

        let gin = ideal(4, &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 2, 0], &[0, 4, 0, 0]]);
        let h = gin.hilbert(8);
        assert_eq!(h.function.dims, vec![1, 4, 8, 12, 16, 20, 24, 28, 32]);
        assert_eq!((h.dimension, h.degree), (2, 4));

        let unit = ideal(3, &[&[0, 0, 0]]);
        let h = unit.hilbert(3);
        assert_eq!(h.function.dims, vec![0; 4]);
        assert_eq!(h.dimension, -1);
    }

    #[test]
    fn hilbert_matches_brute_force() {
        let j = ideal(3, &[&[3, 0, 0], &[2, 1, 0], &[1, 2, 1], &[0, 3, 2], &[1, 0, 4], &[0, 1, 5]]);
        let h = j.hilbert_function(10);
        for d in 0..=10 {
            assert_eq!(h.dims[d as usize], brute_hf(&j, d), "degree {d}");
        }
    }

    #[test]
    fn borel_checks() {
        assert!(ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 3, 0]]).is_borel_fixed());
        assert!(!ideal(3, &[&[1, 0, 1]]).is_borel_fixed());
        assert_eq!(ideal(2, &[&[1, 0]]).borel_regularity().unwrap(), 1);
        let gin = ideal(4, &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 2, 0], &[0, 4, 0, 0]]);
        assert_eq!(gin.borel_regularity().unwrap(), 4);
        assert_eq!(ideal(3, &[&[1, 0, 1]]).borel_regularity(), Err(Error::NotBorelFixed));
    }

    #[test]
    fn eliahou_kervaire() {
        let b = ideal(2, &[&[1, 0]]).ek_betti().unwrap();
        assert_eq!(b.entries.len(), 1);
        assert_eq!(b.get(0, 1), 1);

        let b = ideal(2, &[&[1, 0], &[0, 1]]).ek_betti().unwrap();
        assert_eq!((b.get(0, 1), b.get(1, 2)), (2, 1));

        let b = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]).ek_betti().unwrap();
        assert_eq!((b.get(0, 2), b.get(1, 3)), (3, 2));
        assert_eq!(b.regularity(), Some(2));
        assert_eq!(ideal(3, &[&[1, 0, 1]]).ek_betti(), Err(Error::NotStable));
    }

    #[test]
    fn saturation_examples() {
        let j = ideal(4, &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1]]);
        let (sat, d) = j.saturate(SaturationTarget::Maximal).unwrap();
        assert_eq!(sat, ideal(4, &[&[1, 0, 0, 0]]));
        assert_eq!(d, Some(2));

        let s = ideal(3, &[&[1, 0, 0]]);
        assert_eq!(s.saturate(SaturationTarget::Maximal).unwrap(), (s.clone(), Some(0)));

        let j = ideal(2, &[&[1, 1]]);
        let (sat, d) = j.saturate(SaturationTarget::Variable(1)).unwrap();
        assert_eq!(sat, ideal(2, &[&[1, 0]]));
        assert_eq!(d, None);
        assert_eq!(
            ideal(3, &[&[1, 0, 1]]).saturate(SaturationTarget::Maximal),
            Err(Error::NotBorelFixed)
        );
    }

    #[test]
    fn parse_generators() {
        let j = MonomialIdeal::parse(default_names(3), "x0^2\nx0*x1\nx1^3").unwrap();
        assert_eq!(j, ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 3, 0]]));
    }
}
