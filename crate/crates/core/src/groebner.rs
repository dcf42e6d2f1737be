//! Division and Buchberger's algorithm for homogeneous ideals.
//!
//! The basis is built degree by degree (normal strategy). Within a degree,
//! S-polynomials are reduced in a dense accumulator indexed by the monomials
//! of that degree, sorted by the active order; multiplied reducers are cached
//! per degree. Degrees with too many monomials fall back to sparse division.

use std::cmp::Ordering;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};
use crate::monomial_ideal::MonomialIdeal;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Largest number of monomials in one degree handled by the dense path.
const DENSE_LIMIT: u64 = 200_000;

/// Terms sorted decreasingly by the active order.
type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// A reduced Gröbner basis: monic, inter-reduced, sorted by (degree, order).
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    order: TermOrder,
    elements: Vec<Polynomial<F>>,
    leading: Vec<Monomial>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.order == other.order && self.elements == other.elements
    }
}

impl<F: Field> GroebnerBasis<F> {
    fn from_terms(ring: &Arc<Ring<F>>, order: &TermOrder, mut basis: Vec<Terms<F>>) -> Self {
        basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
        let leading = basis.iter().map(|t| t[0].0).collect();
        let elements = basis
            .into_iter()
            .map(|t| Polynomial::from_sorted_unchecked(ring, t, false))
            .collect();
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            elements,
            leading,
        }
    }

    /// Minimalize and inter-reduce a set already known to be a Gröbner basis.
    pub fn from_groebner_set(ring: &Arc<Ring<F>>, order: &TermOrder, polys: &[Polynomial<F>]) -> Result<Self> {
        let field = ring.field();
        let mut sorted: Vec<Terms<F>> = Vec::new();
        for p in polys {
            if !same_ring(p.ring(), ring) {
                return Err(Error::MismatchedRings);
            }
            if p.is_zero() {
                continue;
            }
            sorted.push(monic_terms(field, p.terms_by_order(order)));
        }
        sorted.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
        let mut minimal: Vec<Terms<F>> = Vec::new();
        for t in sorted {
            if !minimal.iter().any(|g| g[0].0.divides(&t[0].0)) {
                minimal.push(t);
            }
        }
        let reduced: Vec<Terms<F>> = (0..minimal.len())
            .map(|i| {
                let (head, tail) = minimal[i].split_at(1);
                let mut r = head.to_vec();
                r.extend(reduce_sparse(field, order, tail.to_vec(), &minimal));
                r
            })
            .collect();
        Ok(Self::from_terms(ring, order, reduced))
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::with_names(self.ring.names().clone(), self.leading.clone())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

fn monic_terms<F: Field>(field: &F, mut t: Terms<F>) -> Terms<F> {
    let inv = field.inv(&t[0].1).expect("nonzero leading coefficient");
    if !field.is_one(&inv) {
        for (_, c) in t.iter_mut() {
            *c = field.mul(c, &inv);
        }
    }
    t
}

/// Remainder of `f` on division by `g` (any nonzero polynomials): the
/// greatest reducible monomial is reduced first, by the first listed divisor.
pub fn normal_form<F: Field>(f: &Polynomial<F>, g: &[Polynomial<F>], ord: &TermOrder) -> Result<Polynomial<F>> {
    let ring = f.ring();
    if g.iter().any(|p| !same_ring(p.ring(), ring)) {
        return Err(Error::MismatchedRings);
    }
    if g.iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let field = ring.field();
    let divisors: Vec<Terms<F>> = g.iter().map(|p| monic_terms(field, p.terms_by_order(ord))).collect();
    let r = reduce_sparse(field, ord, f.terms_by_order(ord), &divisors);
    Ok(Polynomial::from_sorted_unchecked(ring, r, false))
}

/// Full sparse reduction of `p` (sorted by `ord`) against monic divisors.
fn reduce_sparse<F: Field>(field: &F, ord: &TermOrder, mut p: Terms<F>, divisors: &[Terms<F>]) -> Terms<F> {
    let mut rem: Terms<F> = Vec::new();
    // `p` is kept reversed so that the leading term sits at the end.
    p.reverse();
    while let Some((m, c)) = p.pop() {
        let Some(d) = divisors.iter().find(|d| d[0].0.divides(&m)) else {
            rem.push((m, c));
            continue;
        };
        let q = m.try_div(&d[0].0).unwrap();
        // p -= c * q * tail(d), merged in reversed order
        let mut merged: Terms<F> = Vec::with_capacity(p.len() + d.len());
        let mut a = p.into_iter().rev().peekable();
        let mut b = d[1..].iter().map(|(t, e)| (t.mul(&q), field.neg(&field.mul(&c, e)))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => merged.push(a.next().unwrap()),
                    Ordering::Less => merged.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (mx, cx) = a.next().unwrap();
                        let (_, cy) = b.next().unwrap();
                        let s = field.add(&cx, &cy);
                        if !field.is_zero(&s) {
                            merged.push((mx, s));
                        }
                    }
                },
                (Some(_), None) => merged.push(a.next().unwrap()),
                (None, Some(_)) => merged.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        merged.reverse();
        p = merged;
    }
    rem
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Monomials of one degree sorted decreasingly, plus the reducer cache.
struct DenseDegree<F: Field> {
    monos: Vec<Monomial>,
    index: FxHashMap<Monomial, u32>,
    /// `None`: not looked up yet; `Some(None)`: no divisor; otherwise a row.
    reducers: Vec<Option<Option<u32>>>,
    rows: Vec<(Vec<u32>, Vec<F::Elem>)>,
}

impl<F: Field> DenseDegree<F> {
    fn new(nvars: usize, d: u32, ord: &TermOrder) -> Self {
        let mut monos = monomials_of_degree(nvars, d);
        ord.sort_desc(&mut monos);
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let n = monos.len();
        DenseDegree {
            monos,
            index,
            reducers: vec![None; n],
            rows: Vec::new(),
        }
    }

    fn add_multiple(&self, field: &F, acc: &mut [F::Elem], q: &Monomial, c: &F::Elem, g: &Terms<F>) {
        for (t, e) in g {
            let k = self.index[&t.mul(q)] as usize;
            let v = field.mul(c, e);
            acc[k] = field.add(&acc[k], &v);
        }
    }

    fn row_for(&mut self, i: usize, basis: &[Terms<F>]) -> Option<u32> {
        if let Some(r) = self.reducers[i] {
            return r;
        }
        let m = self.monos[i];
        let found = basis.iter().find(|g| g[0].0.divides(&m)).map(|g| {
            let q = m.try_div(&g[0].0).unwrap();
            let idx: Vec<u32> = g.iter().map(|(t, _)| self.index[&t.mul(&q)]).collect();
            let coeffs: Vec<F::Elem> = g.iter().map(|(_, e)| e.clone()).collect();
            self.rows.push((idx, coeffs));
            self.rows.len() as u32 - 1
        });
        self.reducers[i] = Some(found);
        found
    }

    /// Fully reduce the accumulator, starting at position `from`.
    fn reduce(&mut self, field: &F, acc: &mut [F::Elem], from: usize, basis: &[Terms<F>]) {
        for i in from..acc.len() {
            if field.is_zero(&acc[i]) {
                continue;
            }
            let Some(r) = self.row_for(i, basis) else {
                continue;
            };
            let c = acc[i].clone();
            let (idx, coeffs) = &self.rows[r as usize];
            for (k, e) in idx.iter().zip(coeffs) {
                field.sub_mul_assign(&mut acc[*k as usize], &c, e);
            }
        }
    }

    fn extract(&self, field: &F, acc: &[F::Elem]) -> Terms<F> {
        acc.iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| (self.monos[i], c.clone()))
            .collect()
    }

    fn register(&mut self, g: &Terms<F>) {
        let i = self.index[&g[0].0] as usize;
        let idx: Vec<u32> = g.iter().map(|(t, _)| self.index[t]).collect();
        let coeffs = g.iter().map(|(_, e)| e.clone()).collect();
        self.rows.push((idx, coeffs));
        self.reducers[i] = Some(Some(self.rows.len() as u32 - 1));
    }
}

/// Homogeneous Buchberger algorithm with the Gebauer–Möller criteria.
pub fn buchberger<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Polynomial<F>],
    ord: &TermOrder,
    degree_cap: u32,
) -> Result<GroebnerBasis<F>> {
    ord.validate(ring.nvars())?;
    let field = ring.field();
    let mut inputs: Vec<Terms<F>> = Vec::new();
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::MismatchedRings);
        }
        if g.is_zero() {
            continue;
        }
        let Some(d) = g.homogeneous_degree() else {
            return Err(Error::NonHomogeneous(g.to_string()));
        };
        if d > degree_cap {
            return Err(Error::CapExceeded { degree: d, cap: degree_cap });
        }
        inputs.push(g.terms_by_order(ord));
    }
    // stable order keeps the computation deterministic
    inputs.sort_by(|a, b| a[0].0.degree().cmp(&b[0].0.degree()));

    let mut basis: Vec<Terms<F>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut next_input = 0;
    let n = ring.nvars();

    loop {
        let pair_deg = pairs.iter().map(|p| p.lcm.degree()).min();
        let input_deg = inputs.get(next_input).map(|t| t[0].0.degree());
        let d = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        if d > degree_cap {
            return Err(Error::CapExceeded { degree: d, cap: degree_cap });
        }
        let first_new = basis.len();
        let dense = count_monomials(n, d) <= DENSE_LIMIT;
        let mut table = dense.then(|| DenseDegree::<F>::new(n, d, ord));

        let reduce_job = |job: Terms<F>, basis: &[Terms<F>], table: &mut Option<DenseDegree<F>>| -> Option<Terms<F>> {
            let reduced = match table {
                Some(t) => {
                    let mut acc = vec![field.zero(); t.monos.len()];
                    for (m, c) in &job {
                        let k = t.index[m] as usize;
                        acc[k] = field.add(&acc[k], c);
                    }
                    t.reduce(field, &mut acc, 0, basis);
                    t.extract(field, &acc)
                }
                None => reduce_sparse(field, ord, job, basis),
            };
            (!reduced.is_empty()).then(|| monic_terms(field, reduced))
        };

        while inputs.get(next_input).is_some_and(|t| t[0].0.degree() == d) {
            let job = inputs[next_input].clone();
            next_input += 1;
            if let Some(h) = reduce_job(job, &basis, &mut table) {
                insert(&mut basis, &mut pairs, h, &mut table);
            }
        }
        loop {
            let Some(k) = (0..pairs.len())
                .filter(|&k| pairs[k].lcm.degree() == d)
                .min_by(|&a, &b| ord.cmp(&pairs[a].lcm, &pairs[b].lcm).then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j))))
            else {
                break;
            };
            let pair = pairs.swap_remove(k);
            let job = match &table {
                Some(t) => {
                    let mut acc = vec![field.zero(); t.monos.len()];
                    let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
                    let qi = pair.lcm.try_div(&gi[0].0).unwrap();
                    let qj = pair.lcm.try_div(&gj[0].0).unwrap();
                    t.add_multiple(field, &mut acc, &qi, &field.one(), gi);
                    t.add_multiple(field, &mut acc, &qj, &field.neg(&field.one()), gj);
                    t.extract(field, &acc)
                }
                None => s_polynomial(field, ord, &basis[pair.i], &basis[pair.j], &pair.lcm),
            };
            if job.is_empty() {
                continue;
            }
            if let Some(h) = reduce_job(job, &basis, &mut table) {
                insert(&mut basis, &mut pairs, h, &mut table);
            }
        }
        // Inter-reduce the tails of elements found in this degree.
        for k in first_new..basis.len() {
            let head = basis[k][0].clone();
            let tail: Terms<F> = basis[k][1..].to_vec();
            if tail.is_empty() {
                continue;
            }
            let reduced = match &mut table {
                Some(t) => {
                    let mut acc = vec![field.zero(); t.monos.len()];
                    for (m, c) in &tail {
                        acc[t.index[m] as usize] = c.clone();
                    }
                    let from = t.index[&tail[0].0] as usize;
                    t.reduce(field, &mut acc, from, &basis);
                    t.extract(field, &acc)
                }
                None => reduce_sparse(field, ord, tail, &basis),
            };
            let mut full = vec![head];
            full.extend(reduced);
            basis[k] = full;
        }
    }
    Ok(GroebnerBasis::from_terms(ring, ord, basis))
}

fn s_polynomial<F: Field>(field: &F, ord: &TermOrder, gi: &Terms<F>, gj: &Terms<F>, lcm: &Monomial) -> Terms<F> {
    let qi = lcm.try_div(&gi[0].0).unwrap();
    let qj = lcm.try_div(&gj[0].0).unwrap();
    let mut a: Terms<F> = gi[1..].iter().map(|(t, c)| (t.mul(&qi), c.clone())).collect();
    let b: Terms<F> = gj[1..].iter().map(|(t, c)| (t.mul(&qj), field.neg(c))).collect();
    a.extend(b);
    a.sort_by(|x, y| ord.cmp(&y.0, &x.0));
    let mut out: Terms<F> = Vec::with_capacity(a.len());
    for (m, c) in a {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    out
}

/// Add `h` to the basis and update the pair set (Gebauer–Möller).
fn insert<F: Field>(basis: &mut Vec<Terms<F>>, pairs: &mut Vec<Pair>, h: Terms<F>, table: &mut Option<DenseDegree<F>>) {
    let lh = h[0].0;
    let new = basis.len();
    // Candidate pairs (g, h), pruned by the chain criterion among themselves.
    let mut cands: Vec<(usize, Monomial, bool)> = basis
        .iter()
        .enumerate()
        .map(|(i, g)| (i, g[0].0.lcm(&lh), g[0].0.is_coprime(&lh)))
        .collect();
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some(c) = (!cands.is_empty()).then(|| cands.remove(0)) {
        let dominated = cands.iter().chain(kept.iter()).any(|o| o.1.divides(&c.1));
        if c.2 || !dominated {
            kept.push(c);
        }
    }
    // Old pairs whose lcm is divisible by lm(h) with both new lcms different.
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && basis[p.i][0].0.lcm(&lh) != p.lcm
            && basis[p.j][0].0.lcm(&lh) != p.lcm)
    });
    pairs.extend(kept.into_iter().filter(|c| !c.2).map(|(i, lcm, _)| Pair { i, j: new, lcm }));
    if let Some(t) = table {
        t.register(&h);
    }
    basis.push(h);
}
