//! Polynomials with exact coefficients.
//!
//! Terms are stored in a canonical order that does not depend on any term
//! order (degree first, then lexicographic, descending); leading-term queries
//! take the order as a parameter.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::TermOrder;
use crate::ring::{same_ring, Ring};

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F::Elem)>,
    homogeneous_degree: Option<u32>,
}

/// Canonical storage order: higher degree first, then lexicographically larger.
#[inline]
pub(crate) fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.cmp_lex_raw(a))
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
            homogeneous_degree: None,
        }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Build from arbitrary terms: duplicates are merged and zeros dropped.
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial does not belong to the ring");
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        Self::from_sorted_unchecked(ring, terms, false)
    }

    /// Terms that are already distinct and nonzero; `sorted` states whether
    /// they are in canonical order.
    pub(crate) fn from_sorted_unchecked(
        ring: &Arc<Ring<F>>,
        mut terms: Vec<(Monomial, F::Elem)>,
        sorted: bool,
    ) -> Self {
        if !sorted {
            terms.sort_unstable_by(|a, b| canonical_cmp(&a.0, &b.0));
        }
        let homogeneous_degree = match terms.first() {
            Some((m, _)) if terms.iter().all(|(n, _)| n.degree() == m.degree()) => Some(m.degree()),
            _ => None,
        };
        Polynomial {
            ring: ring.clone(),
            terms,
            homogeneous_degree,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree when every term has the same degree; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree.is_some()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<F::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        match self.terms.binary_search_by(|(n, _)| canonical_cmp(n, m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field().zero(),
        }
    }

    /// The order-greatest term.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Monomial, F::Elem)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|t| t.0)
    }

    /// Terms sorted decreasingly by `ord`.
    pub fn terms_by_order(&self, ord: &TermOrder) -> Vec<(Monomial, F::Elem)> {
        let mut t = self.terms.clone();
        t.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        t
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MismatchedRings)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let o = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                canonical_cmp(&a[i].0, &b[j].0)
            };
            match o {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { field.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted_unchecked(&self.ring, out, true)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let field = self.field();
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let p = field.mul(a, b);
                let mn = m.mul(n);
                match acc.get_mut(&mn) {
                    Some(e) => *e = field.add(e, &p),
                    None => {
                        acc.insert(mn, p);
                    }
                }
            }
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        Self::from_sorted_unchecked(&self.ring, terms, false)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, field.mul(a, c))).collect();
        Self::from_sorted_unchecked(&self.ring, terms, true)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // multiplication by a monomial preserves the canonical order
        let terms = self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect();
        Self::from_sorted_unchecked(&self.ring, terms, true)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Scale so that the `ord`-leading coefficient is one.
    pub fn monic(&self, ord: &TermOrder) -> Result<Self> {
        let (_, c) = self.leading_term(ord)?;
        let inv = self.field().inv(&c).expect("nonzero leading coefficient");
        Ok(self.scale(&inv))
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Self::from_sorted_unchecked(&self.ring, terms, true)
    }

    /// Substitute `x_i -> forms[i]` for every variable. The forms may live in
    /// a different ring (all in the same one); the result lives there.
    pub fn substitute(&self, target: &Arc<Ring<F>>, forms: &[Polynomial<F>]) -> Result<Self> {
        if forms.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} forms, got {}",
                self.ring.nvars(),
                forms.len()
            )));
        }
        if forms.iter().any(|f| !same_ring(f.ring(), target)) {
            return Err(Error::MismatchedRings);
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = forms.iter().map(|_| vec![Self::one(target)]).collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul_unchecked(&forms[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul_unchecked(&pw[e]);
                }
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Substitute linear forms within the same ring: `x_i -> sum_j rows[i][j] x_j`.
    pub fn substitute_linear(&self, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let n = self.ring.nvars();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("substitution matrix has the wrong shape".into()));
        }
        let forms: Vec<_> = rows
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (Monomial::var(n, j), c.clone()))
                    .collect();
                Self::from_terms(&self.ring, terms)
            })
            .collect();
        self.substitute(&self.ring.clone(), &forms)
    }

    /// Move into `target` by mapping variable `i` to `var_map[i]`; variables
    /// mapped to `None` must not occur.
    pub fn map_variables(&self, target: &Arc<Ring<F>>, var_map: &[Option<usize>]) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, slot) in var_map.iter().enumerate() {
                let x = m.exponent(i);
                match slot {
                    Some(j) => e[*j] += x,
                    None if x > 0 => {
                        return Err(Error::InvalidArgument(format!(
                            "variable {} cannot be mapped into the target ring",
                            self.ring.names()[i]
                        )))
                    }
                    None => {}
                }
            }
            terms.push((Monomial::new(&e), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Largest exponent of `x_i`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exponent(i)).max()
    }

    /// Formal partial derivative.
    pub fn derivative(&self, i: usize) -> Self {
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(i);
                (e > 0).then(|| (m.div_var(i).unwrap(), field.mul(c, &field.from_i64(e as i64))))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Parse the text grammar: terms joined by `+`/`-`, each term
    /// `coeff*x<i>^<e>*...` with optional integer coefficient.
    pub fn parse(ring: &Arc<Ring<F>>, s: &str) -> Result<Self> {
        let field = ring.field();
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if cleaned == "0" {
            return Ok(Self::zero(ring));
        }
        let mut terms = Vec::new();
        let bytes: Vec<char> = cleaned.chars().collect();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == '+' || bytes[pos] == '-' {
                negative = bytes[pos] == '-';
                pos += 1;
            } else if pos > 0 {
                return Err(Error::Parse(format!("expected `+` or `-` at offset {pos} in `{s}`")));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != '+' && bytes[pos] != '-' {
                pos += 1;
            }
            let body: String = bytes[start..pos].iter().collect();
            if body.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let (m, mut c) = parse_term(ring, &body)?;
            if negative {
                c = field.neg(&c);
            }
            terms.push((m, c));
        }
        Ok(Self::from_terms(ring, terms))
    }

    /// Form of degree `d` with every coefficient drawn from the field sampler.
    pub fn random_form<R: rand::Rng + ?Sized>(ring: &Arc<Ring<F>>, d: u32, rng: &mut R) -> Self {
        let field = ring.field();
        let terms = monomials_of_degree(ring.nvars(), d)
            .into_iter()
            .map(|m| (m, field.random(rng)))
            .collect();
        Self::from_terms(ring, terms)
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let field = self.field();
        let names = self.ring.names();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = field.format_elem(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&cs);
            } else {
                if cs != "1" {
                    out.push_str(&cs);
                    out.push('*');
                }
                out.push_str(&m.fmt_with(names));
            }
        }
        out
    }
}

fn parse_term<F: Field>(ring: &Arc<Ring<F>>, body: &str) -> Result<(Monomial, F::Elem)> {
    let field = ring.field();
    let mut exps = vec![0u32; ring.nvars()];
    let mut coeff = field.one();
    for (k, factor) in body.split('*').enumerate() {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{body}`")));
        }
        if factor.chars().all(|c| c.is_ascii_digit()) {
            if k != 0 {
                return Err(Error::Parse(format!("coefficient must come first in `{body}`")));
            }
            let n: BigInt = factor.parse().map_err(|e| Error::Parse(format!("{e}")))?;
            coeff = field.from_bigint(&n);
            continue;
        }
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<u32>()
                    .map_err(|err| Error::Parse(format!("bad exponent `{e}`: {err}")))?,
            ),
            None => (factor, 1),
        };
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        exps[i] += e;
    }
    let m = Monomial::try_new(&exps).ok_or_else(|| Error::Parse(format!("exponent too large in `{body}`")))?;
    Ok((m, coeff))
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomial rings differ")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomial rings differ")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomial rings differ")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let c = self.field().neg(&self.field().one());
        self.scale(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ring(n: usize) -> Arc<Ring<PrimeField>> {
        Ring::new(PrimeField::default(), n).unwrap()
    }

    fn p(r: &Arc<Ring<PrimeField>>, s: &str) -> Polynomial<PrimeField> {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(3);
        assert_eq!(&p(&r, "x0 + x1") + &p(&r, "-x1"), p(&r, "x0"));
        assert_eq!(&p(&r, "x0 + x1") * &p(&r, "x0 - x1"), p(&r, "x0^2 - x1^2"));
        let sq = p(&r, "x0^2");
        let subst = sq
            .substitute(&r, &[p(&r, "x0 + x1"), p(&r, "x1"), p(&r, "x2")])
            .unwrap();
        assert_eq!(subst, p(&r, "x0^2 + 2*x0*x1 + x1^2"));
    }

    #[test]
    fn leading_terms() {
        let r = ring(4);
        let f = p(&r, "x0*x1 + x2^2");
        assert_eq!(f.leading_term(&TermOrder::Lex).unwrap(), (Monomial::new(&[1, 1, 0, 0]), 1));
        let r3 = ring(3);
        let g = p(&r3, "x1^2 + x0*x2");
        assert_eq!(g.leading_term(&TermOrder::RevLex).unwrap(), (Monomial::new(&[0, 2, 0]), 1));
        let h = p(&r, "5*x3");
        assert_eq!(h.leading_term(&TermOrder::Lex).unwrap(), (Monomial::new(&[0, 0, 0, 1]), 5));
        assert_eq!(Polynomial::zero(&r).leading_term(&TermOrder::Lex), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn mismatched_rings() {
        let a = ring(3);
        let b = ring(4);
        assert_eq!(p(&a, "x0").checked_add(&p(&b, "x0")), Err(Error::MismatchedRings));
    }

    #[test]
    fn parse_and_print() {
        let r = ring(3);
        let f = p(&r, "x0^2*x1 - 3*x2^3");
        assert_eq!(f.to_text(), "x0^2*x1 - 3*x2^3");
        assert_eq!(Polynomial::parse(&r, &f.to_text()).unwrap(), f);
        assert!(Polynomial::parse(&r, "x5").is_err());
        assert!(Polynomial::parse(&r, "x0^").is_err());
        assert!(f.homogeneous_degree() == Some(3));
        assert!(!p(&r, "x0 + 1").is_homogeneous());
        let q = Ring::new(Rationals, 2).unwrap();
        assert_eq!(Polynomial::parse(&q, "-2*x0 + x1").unwrap().to_text(), "-2*x0 + x1");
    }

    fn random_form(r: &Arc<Ring<PrimeField>>, d: u32, coeffs: &[i64]) -> Polynomial<PrimeField> {
        let ms = crate::monomial::monomials_of_degree(r.nvars(), d);
        let f = r.field();
        let terms = ms.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, f.from_i64(c))).collect();
        Polynomial::from_terms(r, terms)
    }

    proptest! {
        #[test]
        fn substitution_is_homomorphism(
            a in proptest::collection::vec(-5i64..5, 10),
            b in proptest::collection::vec(-5i64..5, 10),
            m in proptest::collection::vec(-3i64..3, 9),
        ) {
            let r = ring(3);
            let f = random_form(&r, 2, &a);
            let g = random_form(&r, 2, &b);
            let rows: Vec<Vec<u32>> = m.chunks(3).map(|c| c.iter().map(|&x| r.field().from_i64(x)).collect()).collect();
            let s = |h: &Polynomial<PrimeField>| h.substitute_linear(&rows).unwrap();
            prop_assert_eq!(s(&(&f + &g)), &s(&f) + &s(&g));
            prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
        }
    }
}
