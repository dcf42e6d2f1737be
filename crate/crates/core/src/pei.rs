//! Partial elimination ideals `K_p(I)` with respect to the first variable.
//!
//! Write `f = f_0 x0^p + (terms of lower x0-degree)`; then `K_p(I)` is the
//! ideal of the small ring `k[x1..xr]` spanned by the `f_0` of elements of
//! `I` with x0-degree `p`. From one Gröbner basis `G` for the `(1, r)`
//! product order, the initial coefficients of elements with x0-degree at
//! most `p` form a Gröbner basis of `K_p` for the inner order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gin::{apply_change, random_coordinate_change};
use crate::groebner::{GroebnerBasis, normal_form};
use crate::ideal::IdealHandle;
use crate::linalg::Matrix;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::monomial_ideal::MonomialIdeal;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::univariate;

#[derive(Clone, Debug, PartialEq)]
pub struct X0Profile<F: Field> {
    pub x0_degree: u32,
    /// Lives in the small ring `k[x1..xr]`.
    pub initial_coefficient: Polynomial<F>,
}

/// x0-degree and initial coefficient of `f`.
pub fn x0_profile<F: Field>(f: &Polynomial<F>) -> Result<X0Profile<F>> {
    let small = f.ring().drop_first()?;
    x0_profile_in(f, &small)
}

fn x0_profile_in<F: Field>(f: &Polynomial<F>, small: &Arc<Ring<F>>) -> Result<X0Profile<F>> {
    let p = f.degree_in(0).ok_or(Error::ZeroPolynomial)?;
    Ok(X0Profile {
        x0_degree: p,
        initial_coefficient: x0_coefficient(f, p, small),
    })
}

/// Coefficient of `x0^p` as a polynomial of the small ring.
fn x0_coefficient<F: Field>(f: &Polynomial<F>, p: u32, small: &Arc<Ring<F>>) -> Polynomial<F> {
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| m.exponent(0) == p)
        .map(|(m, c)| (m.drop_front(1), c.clone()))
        .collect();
    Polynomial::from_terms(small, terms)
}

/// Product order used for a given inner order. With lex inside it is
/// plain lex, which lets the tower share the basis of a lex gin run.
pub fn elimination_order(nvars: usize, inner: &TermOrder) -> TermOrder {
    match inner {
        TermOrder::Lex => TermOrder::Lex,
        o => TermOrder::eliminate_first(nvars, o.clone()),
    }
}

/// `K_0 ⊆ K_1 ⊆ ... ⊆ K_{p_max}` in the small ring.
#[derive(Clone, Debug)]
pub struct PartialElimTower<F: Field> {
    pub levels: Vec<IdealHandle<F>>,
    pub inner_order: TermOrder,
    /// Order of the big ring the basis was computed for.
    pub order: TermOrder,
    pub basis: Arc<GroebnerBasis<F>>,
    pub small_ring: Arc<Ring<F>>,
}

impl<F: Field> PartialElimTower<F> {
    /// Largest x0-degree of a basis element; the tower is constant from there on.
    pub fn max_x0_degree(&self) -> u32 {
        self.basis.leading_monomials().iter().map(|m| m.exponent(0)).max().unwrap_or(0)
    }

    pub fn level(&self, p: usize) -> &IdealHandle<F> {
        &self.levels[p.min(self.levels.len() - 1)]
    }

    /// `sum_p x0^p in(K_p)` as an ideal of the big ring.
    pub fn assembled_initial_ideal(&self) -> Result<MonomialIdeal> {
        let names = self.basis.ring().names().clone();
        let mut gens = Vec::new();
        for (p, level) in self.levels.iter().enumerate() {
            for m in level.initial_ideal(&self.inner_order)?.generators() {
                gens.push(m.prepend(&[p as u32]));
            }
        }
        Ok(MonomialIdeal::with_names(names, gens))
    }

    /// `in(I) = sum_p x0^p in(K_p(I))`; needs `p_max` at least [`Self::max_x0_degree`].
    pub fn decomposition_holds(&self) -> Result<bool> {
        if (self.levels.len() as u32) <= self.max_x0_degree() {
            return Err(Error::InvalidArgument("tower is too short for the decomposition".into()));
        }
        Ok(self.assembled_initial_ideal()? == self.basis.initial_ideal())
    }

    /// Minimal generators of each level lie in the next one.
    pub fn is_ascending(&self) -> Result<bool> {
        for w in self.levels.windows(2) {
            if !w[1].contains_ideal(&w[0])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The tower of partial elimination ideals up to `p_max`, from a single
/// Gröbner basis of `I` for the `(1, r)` product order.
pub fn partial_elim_ideals<F: Field>(
    ideal: &IdealHandle<F>,
    p_max: u32,
    inner: &TermOrder,
) -> Result<PartialElimTower<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if n < 2 {
        return Err(Error::InvalidArgument("partial elimination needs at least two variables".into()));
    }
    inner.validate(n - 1)?;
    let order = elimination_order(n, inner);
    let basis = ideal.groebner_basis(&order)?;
    let small = ring.drop_first()?;
    let profiles: Vec<X0Profile<F>> = basis
        .elements()
        .iter()
        .map(|g| x0_profile_in(g, &small))
        .collect::<Result<_>>()?;
    let mut levels = Vec::with_capacity(p_max as usize + 1);
    for p in 0..=p_max {
        let gp: Vec<Polynomial<F>> = profiles
            .iter()
            .filter(|pr| pr.x0_degree <= p)
            .map(|pr| pr.initial_coefficient.clone())
            .collect();
        let level = IdealHandle::new(&small, gp.clone())?.with_degree_cap(ideal.degree_cap());
        level.insert_basis(GroebnerBasis::from_groebner_set(&small, inner, &gp)?);
        levels.push(level);
    }
    Ok(PartialElimTower {
        levels,
        inner_order: inner.clone(),
        order,
        basis,
        small_ring: small,
    })
}

/// `K_p` of a monomial ideal: strip `x0^e` from generators with `e <= p`.
pub fn monomial_partial_elim(j: &MonomialIdeal, p: u32) -> MonomialIdeal {
    let names: Arc<[String]> = j.names()[1..].to_vec().into();
    let gens = j
        .generators()
        .iter()
        .filter(|m| m.exponent(0) <= p)
        .map(|m| m.drop_front(1))
        .collect();
    MonomialIdeal::with_names(names, gens)
}

/// Largest ring handled by [`pei_oracle`].
pub const ORACLE_MAX_VARS: usize = 4;
/// Largest degree handled by [`pei_oracle`].
pub const ORACLE_MAX_DEGREE: u32 = 10;

/// Graded pieces `K_p(I)_d` for `d = 0..=degree_bound`, straight from the
/// definition: row-reduce `I_{d+p}` over monomials sorted by the product
/// order and keep the `x0^p` coefficients of rows whose lead has x0-degree `p`.
pub fn pei_oracle<F: Field>(
    ideal: &IdealHandle<F>,
    p: u32,
    degree_bound: u32,
    inner: &TermOrder,
) -> Result<Vec<Vec<Polynomial<F>>>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if n > ORACLE_MAX_VARS || degree_bound > ORACLE_MAX_DEGREE {
        return Err(Error::ResourceGuard(format!(
            "oracle limited to {ORACLE_MAX_VARS} variables and degree {ORACLE_MAX_DEGREE}"
        )));
    }
    let field = ring.field();
    let small = ring.drop_first()?;
    let order = TermOrder::eliminate_first(n, inner.clone());
    let mut pieces = Vec::new();
    for d in 0..=degree_bound {
        let top = d + p;
        let mut cols = monomials_of_degree(n, top);
        order.sort_desc(&mut cols);
        let index: std::collections::HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows = Vec::new();
        for g in ideal.generators() {
            let e = g.homogeneous_degree().unwrap();
            if e > top {
                continue;
            }
            for m in monomials_of_degree(n, top - e) {
                let mut row = vec![field.zero(); cols.len()];
                for (t, c) in g.terms() {
                    row[index[&t.mul(&m)]] = c.clone();
                }
                rows.push(row);
            }
        }
        let mut piece = Vec::new();
        if !rows.is_empty() {
            let mut mat = Matrix::<F>::from_rows(rows);
            let pivots = mat.rref(field);
            for (r, &c) in pivots.iter().enumerate() {
                if cols[c].exponent(0) != p {
                    continue;
                }
                let terms = cols
                    .iter()
                    .zip(&mat.data[r])
                    .filter(|(m, v)| m.exponent(0) == p && !field.is_zero(v))
                    .map(|(m, v)| (m.drop_front(1), v.clone()))
                    .collect();
                piece.push(Polynomial::from_terms(&small, terms));
            }
        }
        pieces.push(piece);
    }
    Ok(pieces)
}

/// True when every element of `piece` reduces to zero modulo `gb`.
pub fn piece_contained<F: Field>(piece: &[Polynomial<F>], gb: &GroebnerBasis<F>) -> Result<bool> {
    for f in piece {
        if !normal_form(f, gb.elements(), gb.order())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of distinct points cut out by a one-dimensional ideal, counted by
/// projecting generically to a line: the elimination ideal in the last two
/// variables is read from a lex basis and the squarefree part of the gcd of
/// its binary forms is measured. Two seeds must agree.
pub fn count_distinct_points<F: Field>(ideal: &IdealHandle<F>, seed: u64) -> Result<usize> {
    let n = ideal.ring().nvars();
    if n < 2 {
        return Err(Error::InvalidArgument("point counting needs at least two variables".into()));
    }
    let dim = ideal.krull_dimension()?;
    if dim != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: dim });
    }
    let first = count_once(ideal, seed)?;
    let second = count_once(ideal, seed.wrapping_add(1))?;
    if first != second {
        return Err(Error::SeedDisagreement { first, second });
    }
    Ok(first)
}

fn count_once<F: Field>(ideal: &IdealHandle<F>, seed: u64) -> Result<usize> {
    let ring = ideal.ring();
    let field = ring.field();
    let n = ring.nvars();
    let moved = apply_change(ideal, &random_coordinate_change(ring, seed))?;
    let gb = moved.groebner_basis(&TermOrder::Lex)?;
    let (u, v) = (n - 2, n - 1);
    let mut acc: Vec<F::Elem> = Vec::new();
    let mut infinity = true;
    for g in gb.elements() {
        if g.terms().iter().any(|(m, _)| (0..u).any(|i| m.exponent(i) > 0)) {
            continue;
        }
        let deg = g.homogeneous_degree().unwrap() as usize;
        let mut f = vec![field.zero(); deg + 1];
        let mut val = u32::MAX;
        for (m, c) in g.terms() {
            f[m.exponent(u) as usize] = c.clone();
            val = val.min(m.exponent(v));
        }
        infinity &= val > 0;
        acc = univariate::gcd(field, &acc, &f);
    }
    if acc.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, found: 2 });
    }
    Ok(univariate::distinct_root_count(field, &acc) + usize::from(infinity))
}
