use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::monomial_ideal::{HilbertData, HilbertFunction, MonomialIdeal};
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Default bound on the degree of S-pairs.
pub const DEFAULT_DEGREE_CAP: u32 = 60;

/// A homogeneous ideal with a per-order cache of reduced Gröbner bases.
pub struct IdealHandle<F: Field> {
    ring: Arc<Ring<F>>,
    generators: Vec<Polynomial<F>>,
    degree_cap: u32,
    cache: RwLock<HashMap<TermOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for IdealHandle<F> {
    fn clone(&self) -> Self {
        IdealHandle {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            degree_cap: self.degree_cap,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl<F: Field> std::fmt::Debug for IdealHandle<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl<F: Field> IdealHandle<F> {
    /// Zero generators are dropped; the rest must be homogeneous.
    pub fn new(ring: &Arc<Ring<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::MismatchedRings);
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(g.to_string()));
            }
            gens.push(g);
        }
        Ok(IdealHandle {
            ring: ring.clone(),
            generators: gens,
            degree_cap: DEFAULT_DEGREE_CAP,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Parse generators in the polynomial grammar, one per line or separated by `,`.
    pub fn parse(ring: &Arc<Ring<F>>, text: &str) -> Result<Self> {
        let gens = text
            .split(['\n', ',', ';'])
            .map(str::trim)
            .filter(|s| !s.is_empty() && !s.starts_with('#'))
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn from_monomial_ideal(ring: &Arc<Ring<F>>, j: &MonomialIdeal) -> Result<Self> {
        if j.nvars() != ring.nvars() {
            return Err(Error::MismatchedRings);
        }
        let one = ring.field().one();
        let gens = j.generators().iter().map(|m| Polynomial::monomial(ring, *m, one.clone())).collect();
        Self::new(ring, gens)
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Gröbner basis for `ord`, computed once and cached.
    pub fn groebner_basis(&self, ord: &TermOrder) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.cache.read().unwrap().get(ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.ring, &self.generators, ord, self.degree_cap)?);
        let mut cache = self.cache.write().unwrap();
        Ok(cache.entry(ord.clone()).or_insert(gb).clone())
    }

    /// Store a basis computed elsewhere (it must be the reduced basis of this ideal).
    pub(crate) fn insert_basis(&self, gb: GroebnerBasis<F>) {
        self.cache.write().unwrap().insert(gb.order().clone(), Arc::new(gb));
    }

    pub fn cached_orders(&self) -> Vec<TermOrder> {
        self.cache.read().unwrap().keys().cloned().collect()
    }

    pub fn initial_ideal(&self, ord: &TermOrder) -> Result<MonomialIdeal> {
        Ok(self.groebner_basis(ord)?.initial_ideal())
    }

    pub fn hilbert_data(&self, ord: &TermOrder, bound: u32) -> Result<HilbertData> {
        Ok(self.initial_ideal(ord)?.hilbert(bound))
    }

    /// `h(d) = dim (S/I)_d`, read from the initial ideal.
    pub fn hilbert_function(&self, ord: &TermOrder, bound: u32) -> Result<HilbertFunction> {
        Ok(self.hilbert_data(ord, bound)?.function)
    }

    pub fn ideal_equal(&self, other: &IdealHandle<F>, ord: &TermOrder) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::MismatchedRings);
        }
        Ok(self.groebner_basis(ord)?.elements() == other.groebner_basis(ord)?.elements())
    }

    /// Ideal membership, decided with the revlex basis.
    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::MismatchedRings);
        }
        self.groebner_basis(&TermOrder::RevLex)?.contains(f)
    }

    pub fn contains_ideal(&self, other: &IdealHandle<F>) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of `S/I`; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<i64> {
        Ok(self.hilbert_data(&TermOrder::RevLex, 0)?.dimension)
    }

    /// `nvars - dim S/I`.
    pub fn codimension(&self) -> Result<i64> {
        Ok(self.ring.nvars() as i64 - self.krull_dimension()?)
    }

    /// Degree of `S/I` from its Hilbert series.
    pub fn degree(&self) -> Result<u64> {
        Ok(self.hilbert_data(&TermOrder::RevLex, 0)?.degree)
    }

    /// Image under the ring map `x_i -> forms[i]` into `target`.
    pub fn map(&self, target: &Arc<Ring<F>>, forms: &[Polynomial<F>]) -> Result<IdealHandle<F>> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute(target, forms))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealHandle::new(target, gens)?.with_degree_cap(self.degree_cap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(n: usize) -> Arc<Ring<PrimeField>> {
        Ring::new(PrimeField::default(), n).unwrap()
    }

    #[test]
    fn equality_and_membership() {
        let r = ring(3);
        let a = IdealHandle::parse(&r, "x0, x1").unwrap();
        let b = IdealHandle::parse(&r, "x0 + x1, x1").unwrap();
        assert!(a.ideal_equal(&b, &TermOrder::Lex).unwrap());
        let c = IdealHandle::parse(&r, "x0^2").unwrap();
        let d = IdealHandle::parse(&r, "x0").unwrap();
        assert!(!c.ideal_equal(&d, &TermOrder::RevLex).unwrap());
        assert!(a.contains(&Polynomial::parse(&r, "x0*x2 - 4*x1^2").unwrap()).unwrap());
        assert!(!a.contains(&Polynomial::parse(&r, "x2").unwrap()).unwrap());
        assert_eq!(a.codimension().unwrap(), 2);
    }

    #[test]
    fn hilbert_functions() {
        let r = ring(4);
        let ci = IdealHandle::parse(&r, "x0^2 + x1*x2 - x3^2, x1^2 - 3*x0*x3 + x2^2").unwrap();
        let h = ci.hilbert_function(&TermOrder::RevLex, 6).unwrap();
        assert_eq!(h.dims, vec![1, 4, 8, 12, 16, 20, 24]);
        assert_eq!(ci.degree().unwrap(), 4);
        let unit = IdealHandle::parse(&r, "1").unwrap();
        assert_eq!(unit.hilbert_function(&TermOrder::Lex, 3).unwrap().dims, vec![0; 4]);
        assert!(IdealHandle::parse(&r, "x0 + x1^2").is_err());
    }

    #[test]
    fn cache_is_reused() {
        let r = ring(3);
        let i = IdealHandle::parse(&r, "x0^2 - x1*x2, x1^2 - x0*x2").unwrap();
        let a = i.groebner_basis(&TermOrder::Lex).unwrap();
        let b = i.groebner_basis(&TermOrder::Lex).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(i.cached_orders(), vec![TermOrder::Lex]);
    }
}
