//! Truncated Sylvester matrices and their ideals of maximal minors.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::IdealHandle;
use crate::monomial::binomial;
use crate::pei::x0_profile;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Largest column count accepted by [`maximal_minors_ideal`].
pub const MAX_MINOR_COLUMNS: usize = 12;

/// Matrix of polynomials with an optional degree ledger: a nonzero entry
/// `(i, j)` is homogeneous of degree `row_degrees[i] + col_degrees[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub entries: Vec<Vec<Polynomial<F>>>,
    pub row_degrees: Option<Vec<i64>>,
    pub col_degrees: Option<Vec<i64>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &Arc<Ring<F>>, entries: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix".into()));
        }
        if entries.iter().flatten().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::MismatchedRings);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            entries,
            row_degrees: None,
            col_degrees: None,
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i][j]
    }

    /// Degrees of the entries, `None` for zero entries.
    pub fn entry_degrees(&self) -> Vec<Vec<Option<u32>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| if e.is_zero() { None } else { e.degree() }).collect())
            .collect()
    }

    /// Solve `deg(i, j) = a_i + b_j` over the nonzero entries, normalised so
    /// that the smallest column degree of each connected block is zero.
    /// Returns false (and clears the ledger) when no such degrees exist.
    pub fn attach_ledger(&mut self) -> bool {
        let (m, n) = (self.rows(), self.cols());
        let mut row: Vec<Option<i64>> = vec![None; m];
        let mut col: Vec<Option<i64>> = vec![None; n];
        let mut ok = true;
        for start in 0..n {
            if col[start].is_some() {
                continue;
            }
            col[start] = Some(0);
            let mut block_cols = vec![start];
            let mut block_rows = Vec::new();
            let mut queue = VecDeque::from([(false, start)]);
            while let Some((is_row, k)) = queue.pop_front() {
                let cells: Vec<(usize, usize)> = if is_row {
                    (0..n).map(|j| (k, j)).collect()
                } else {
                    (0..m).map(|i| (i, k)).collect()
                };
                for (i, j) in cells {
                    let e = &self.entries[i][j];
                    if e.is_zero() {
                        continue;
                    }
                    let Some(d) = e.homogeneous_degree().map(i64::from) else {
                        ok = false;
                        continue;
                    };
                    match (row[i], col[j]) {
                        (Some(a), None) => {
                            col[j] = Some(d - a);
                            block_cols.push(j);
                            queue.push_back((false, j));
                        }
                        (None, Some(b)) => {
                            row[i] = Some(d - b);
                            block_rows.push(i);
                            queue.push_back((true, i));
                        }
                        (Some(a), Some(b)) => ok &= a + b == d,
                        (None, None) => unreachable!(),
                    }
                }
            }
            let shift = block_cols.iter().map(|&j| col[j].unwrap()).min().unwrap();
            for &j in &block_cols {
                col[j] = col[j].map(|b| b - shift);
            }
            for &i in &block_rows {
                row[i] = row[i].map(|a| a + shift);
            }
        }
        if !ok {
            self.row_degrees = None;
            self.col_degrees = None;
            return false;
        }
        self.row_degrees = Some(row.into_iter().map(|a| a.unwrap_or(0)).collect());
        self.col_degrees = Some(col.into_iter().map(|b| b.unwrap_or(0)).collect());
        true
    }
}

/// Form `x0^d + sum_{i>=1} c_i x0^{d-i}` with random coefficient forms `c_i`
/// in the remaining variables.
pub fn random_monic_in_x0<F: Field, R: Rng + ?Sized>(ring: &Arc<Ring<F>>, d: u32, rng: &mut R) -> Polynomial<F> {
    let f = Polynomial::random_form(ring, d, rng);
    let x0d = crate::monomial::Monomial::one(ring.nvars()).mul_var(0, d);
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| if *m == x0d { (*m, ring.field().one()) } else { (*m, c.clone()) })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Coefficients `[1, f_1, ..., f_a]` of `f` as a polynomial in `x0`.
fn x0_coefficients<F: Field>(f: &Polynomial<F>, small: &Arc<Ring<F>>) -> Result<Vec<Polynomial<F>>> {
    let profile = x0_profile(f)?;
    let a = profile.x0_degree;
    if !profile.initial_coefficient.is_constant() || !ring_one(&profile.initial_coefficient) {
        return Err(Error::NonMonic(f.to_string()));
    }
    if f.homogeneous_degree() != Some(a) {
        return Err(Error::NonHomogeneous(f.to_string()));
    }
    Ok((0..=a)
        .map(|i| {
            let terms = f
                .terms()
                .iter()
                .filter(|(m, _)| m.exponent(0) == a - i)
                .map(|(m, c)| (m.drop_front(1), c.clone()))
                .collect();
            Polynomial::from_terms(small, terms)
        })
        .collect())
}

fn ring_one<F: Field>(p: &Polynomial<F>) -> bool {
    p.constant_value().is_some_and(|c| p.field().is_one(&c))
}

/// First `a + b - p` rows of the Sylvester matrix of `f` and `g`, monic in
/// `x0` of degrees `a <= b`: `b` columns of shifted `f` coefficients, then
/// `a` columns of shifted `g` coefficients. Entries live in `k[x1..xr]`.
pub fn build_sylp<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, p: u32) -> Result<PolyMatrix<F>> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::MismatchedRings);
    }
    let small = f.ring().drop_first()?;
    let fc = x0_coefficients(f, &small)?;
    let gc = x0_coefficients(g, &small)?;
    let (a, b) = (fc.len() - 1, gc.len() - 1);
    if a > b {
        return Err(Error::InvalidArgument(format!("need deg f <= deg g, got {a} > {b}")));
    }
    if p as usize >= a {
        return Err(Error::InvalidArgument(format!("need p < {a}, got {p}")));
    }
    let rows = a + b - p as usize;
    let zero = Polynomial::zero(&small);
    let mut entries = vec![vec![zero; a + b]; rows];
    for j in 0..b {
        for (i, c) in fc.iter().enumerate() {
            if i + j < rows {
                entries[i + j][j] = c.clone();
            }
        }
    }
    for j in 0..a {
        for (i, c) in gc.iter().enumerate() {
            if i + j < rows {
                entries[i + j][b + j] = c.clone();
            }
        }
    }
    PolyMatrix::new(&small, entries)
}

#[derive(Clone, Debug)]
pub struct MinorsIdeal<F: Field> {
    pub ideal: IdealHandle<F>,
    /// Nonzero maximal minors, in lexicographic order of column subsets.
    pub minors: Vec<Polynomial<F>>,
    /// How many maximal minors vanished identically.
    pub zero_minors: usize,
}

/// Ideal of maximal minors, by Laplace expansion along the last row with
/// subdeterminants shared across column subsets.
pub fn maximal_minors_ideal<F: Field>(m: &PolyMatrix<F>) -> Result<MinorsIdeal<F>> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows > cols {
        return Err(Error::InvalidArgument(format!("{rows} rows exceed {cols} columns")));
    }
    if cols > MAX_MINOR_COLUMNS {
        return Err(Error::ResourceGuard(format!("{cols} columns exceed the limit {MAX_MINOR_COLUMNS}")));
    }
    let ring = &m.ring;
    // level k: determinants of rows 0..k over every k-subset of columns
    let mut level: HashMap<u32, Polynomial<F>> = HashMap::from([(0u32, Polynomial::one(ring))]);
    for k in 1..=rows {
        let mut next = HashMap::new();
        for mask in subsets(cols, k) {
            let mut det = Polynomial::zero(ring);
            for (pos, j) in (0..cols).filter(|j| mask & (1 << j) != 0).enumerate() {
                let e = &m.entries[k - 1][j];
                if e.is_zero() {
                    continue;
                }
                let sub = &level[&(mask & !(1 << j))];
                if sub.is_zero() {
                    continue;
                }
                let term = e * sub;
                det = if (pos + k - 1) % 2 == 0 { &det + &term } else { &det - &term };
            }
            next.insert(mask, det);
        }
        level = next;
    }
    let mut masks: Vec<u32> = level.keys().copied().collect();
    masks.sort_by_key(|&mask| (0..cols).filter(|j| mask & (1 << j) != 0).collect::<Vec<_>>());
    let total = binomial(cols as u64, rows as u64) as usize;
    let minors: Vec<Polynomial<F>> = masks.iter().map(|k| level[k].clone()).filter(|p| !p.is_zero()).collect();
    let zero_minors = total - minors.len();
    Ok(MinorsIdeal {
        ideal: IdealHandle::new(ring, minors.clone())?,
        minors,
        zero_minors,
    })
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Repeatedly eliminate a unit entry `m_pq`:
/// `n_ij = m_ij - m_pj m_iq / m_pq` on the remaining rows and columns.
/// The maximal-minors ideal is unchanged. The degree ledger is attached
/// to the result when one exists.
pub fn unit_reduce<F: Field>(m: &PolyMatrix<F>) -> PolyMatrix<F> {
    let field = m.ring.field();
    let mut entries = m.entries.clone();
    loop {
        let unit = entries.iter().enumerate().find_map(|(i, r)| {
            r.iter()
                .position(|e| e.is_constant() && !e.is_zero())
                .map(|j| (i, j))
        });
        let Some((p, q)) = unit else {
            break;
        };
        let inv = field.inv(&entries[p][q].constant_value().unwrap()).unwrap();
        let mut next = Vec::with_capacity(entries.len() - 1);
        for (i, r) in entries.iter().enumerate() {
            if i == p {
                continue;
            }
            let factor = r[q].scale(&inv);
            let row = r
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != q)
                .map(|(j, e)| if factor.is_zero() { e.clone() } else { e - &(&entries[p][j] * &factor) })
                .collect();
            next.push(row);
        }
        entries = next;
        if entries.first().is_some_and(|r| r.is_empty()) {
            break;
        }
    }
    let mut out = PolyMatrix {
        ring: m.ring.clone(),
        entries,
        row_degrees: None,
        col_degrees: None,
    };
    out.attach_ledger();
    out
}

/// Regularity of the ideal of maximal minors of an `m x n` matrix of
/// expected codimension with entry degrees `a_i + b_j`:
/// `sum a + sum b + (max a - 1)(n - m)`.
pub fn en_regularity(row_degrees: &[i64], col_degrees: &[i64]) -> Result<i64> {
    let (m, n) = (row_degrees.len(), col_degrees.len());
    if m > n {
        return Err(Error::InvalidArgument(format!("{m} rows exceed {n} columns")));
    }
    let max_a = row_degrees.iter().copied().max().unwrap_or(0);
    Ok(row_degrees.iter().sum::<i64>() + col_degrees.iter().sum::<i64>() + (max_a - 1) * (n - m) as i64)
}

/// `ab + C(a-p+1, 2) - C(a+1, 2) + p(a-p-1)` for `1 <= p < a <= b`.
pub fn kp_regularity_formula(a: i64, b: i64, p: i64) -> Result<i64> {
    if !(1 <= p && p < a && a <= b) {
        return Err(Error::InvalidArgument(format!("need 1 <= p < a <= b, got a={a} b={b} p={p}")));
    }
    let c2 = |x: i64| x * (x - 1) / 2;
    Ok(a * b + c2(a - p + 1) - c2(a + 1) + p * (a - p - 1))
}

/// Codimension of a homogeneous ideal.
pub fn codimension<F: Field>(ideal: &IdealHandle<F>) -> Result<i64> {
    ideal.codimension()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::order::TermOrder;

    fn ring(n: usize) -> Arc<Ring<PrimeField>> {
        Ring::new(PrimeField::default(), n).unwrap()
    }

    #[test]
    fn two_by_two_resultant() {
        let r = ring(3);
        let f = Polynomial::parse(&r, "x0 + x1").unwrap();
        let g = Polynomial::parse(&r, "x0 + 2*x2").unwrap();
        let s = build_sylp(&f, &g, 0).unwrap();
        assert_eq!(s.rows(), 2);
        assert_eq!(s.entry(1, 0).to_string(), "x1");
        let minors = maximal_minors_ideal(&s).unwrap();
        assert_eq!(minors.minors.len(), 1);
        assert_eq!(minors.minors[0].to_string(), "-x1 + 2*x2");
    }

    #[test]
    fn syl1_layout() {
        let r = ring(4);
        let f = Polynomial::parse(&r, "x0^2 + x0*x1 + x2^2").unwrap();
        let g = Polynomial::parse(&r, "x0^2 + x0*x3 + x1*x2").unwrap();
        let s = build_sylp(&f, &g, 1).unwrap();
        let text: Vec<Vec<String>> = s.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        assert_eq!(
            text,
            vec![
                vec!["1", "0", "1", "0"],
                vec!["x1", "1", "x3", "1"],
                vec!["x2^2", "x1", "x1*x2", "x3"],
            ]
        );
        let reduced = unit_reduce(&s);
        assert_eq!((reduced.rows(), reduced.cols()), (1, 2));
        assert_eq!(reduced.row_degrees, Some(vec![1]));
        assert_eq!(reduced.col_degrees, Some(vec![1, 0]));
        let a = maximal_minors_ideal(&s).unwrap().ideal;
        let b = maximal_minors_ideal(&reduced).unwrap().ideal;
        assert!(a.ideal_equal(&b, &TermOrder::RevLex).unwrap());
    }

    #[test]
    fn argument_checks() {
        let r = ring(3);
        let f = Polynomial::parse(&r, "2*x0^2 + x1^2").unwrap();
        let g = Polynomial::parse(&r, "x0^2 + x2^2").unwrap();
        assert!(matches!(build_sylp(&f, &g, 0), Err(Error::NonMonic(_))));
        assert!(build_sylp(&g, &g, 2).is_err());
        let id = PolyMatrix::new(
            &r,
            vec![
                vec![Polynomial::one(&r), Polynomial::zero(&r)],
                vec![Polynomial::zero(&r), Polynomial::one(&r)],
            ],
        )
        .unwrap();
        let m = maximal_minors_ideal(&id).unwrap();
        assert_eq!(m.ideal.hilbert_function(&TermOrder::RevLex, 2).unwrap().dims, vec![0, 0, 0]);
        let no_units = PolyMatrix::new(&r, vec![vec![Polynomial::var(&r, 1), Polynomial::var(&r, 2)]]).unwrap();
        assert_eq!(unit_reduce(&no_units).entries, no_units.entries);
    }

    #[test]
    fn formulas() {
        assert_eq!(en_regularity(&[1], &[1, 0]).unwrap(), 2);
        assert_eq!(en_regularity(&[1, 2], &[2, 1, 0]).unwrap(), 7);
        assert_eq!(en_regularity(&[2, 3], &[1, 1]).unwrap(), 7);
        assert!(en_regularity(&[1, 1], &[1]).is_err());
        assert_eq!(kp_regularity_formula(2, 2, 1).unwrap(), 2);
        assert_eq!(kp_regularity_formula(2, 3, 1).unwrap(), 4);
        assert_eq!(kp_regularity_formula(3, 3, 1).unwrap(), 7);
        assert_eq!(kp_regularity_formula(3, 3, 2).unwrap(), 4);
        assert!(kp_regularity_formula(2, 2, 2).is_err());
    }
}
