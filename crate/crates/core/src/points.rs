//! Finite point sets in projective space and their vanishing ideals.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::IdealHandle;
use crate::linalg::Matrix;
use crate::monomial::{binomial, monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<F: Field> {
    pub field: F,
    /// Homogeneous coordinates, each of length `r + 1`.
    pub points: Vec<Vec<F::Elem>>,
    pub seed: Option<u64>,
}

impl<F: Field> PointSet<F> {
    /// Checks that no point is zero and no two points are proportional.
    pub fn new(field: F, points: Vec<Vec<F::Elem>>) -> Result<Self> {
        let len = points.first().map_or(0, |p| p.len());
        if len == 0 || points.iter().any(|p| p.len() != len) {
            return Err(Error::DegeneratePoints("points need a common positive length".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.iter().all(|c| field.is_zero(c)) {
                return Err(Error::DegeneratePoints(format!("point {i} is zero")));
            }
            for (j, q) in points[..i].iter().enumerate() {
                if proportional(&field, p, q) {
                    return Err(Error::DegeneratePoints(format!("points {j} and {i} coincide")));
                }
            }
        }
        Ok(PointSet {
            field,
            points,
            seed: None,
        })
    }

    pub fn from_integers(field: F, points: &[Vec<i64>]) -> Result<Self> {
        let pts = points.iter().map(|p| p.iter().map(|&c| field.from_i64(c)).collect()).collect();
        Self::new(field, pts)
    }

    /// One point per line, comma-separated integer coordinates.
    pub fn parse(field: F, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let row = line
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad coordinate `{c}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_integers(field, &rows)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of homogeneous coordinates, `r + 1`.
    pub fn ambient_vars(&self) -> usize {
        self.points[0].len()
    }
}

fn proportional<F: Field>(field: &F, p: &[F::Elem], q: &[F::Elem]) -> bool {
    // all 2x2 minors vanish
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| field.mul(&p[i], &q[j]) == field.mul(&p[j], &q[i])))
}

/// `s` random points of `P^r` with last coordinate 1, reproducible from `seed`.
pub fn random_points<F: Field>(field: F, s: usize, r: usize, seed: u64) -> PointSet<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<F::Elem>> = Vec::with_capacity(s);
    while points.len() < s {
        let mut p: Vec<F::Elem> = (0..r).map(|_| field.random(&mut rng)).collect();
        p.push(field.one());
        if !points.iter().any(|q| proportional(&field, &p, q)) {
            points.push(p);
        }
    }
    PointSet {
        field,
        points,
        seed: Some(seed),
    }
}

/// The seven points in `P^3` whose three quadrics share a linear factor.
pub fn seven_special_points<F: Field>(field: F) -> PointSet<F> {
    let pts = [
        [0, 0, 0, 1],
        [0, 0, 1, 1],
        [0, 0, 2, 1],
        [0, 1, 0, 1],
        [0, 1, 1, 1],
        [0, 2, 0, 1],
        [1, 0, 0, 1],
    ];
    PointSet::from_integers(field, &pts.map(|p| p.to_vec())).unwrap()
}

/// The ten points `(a, b, c, 1)` of `P^3` with `a + b + c <= 2`.
pub fn ten_points<F: Field>(field: F) -> PointSet<F> {
    let mut pts = Vec::new();
    for a in 0..=2i64 {
        for b in 0..=2 - a {
            for c in 0..=2 - a - b {
                pts.push(vec![a, b, c, 1]);
            }
        }
    }
    PointSet::from_integers(field, &pts).unwrap()
}

/// `X_d`: rows indexed by points, columns by degree-`d` monomials in
/// lexicographically descending order.
pub fn evaluation_matrix<F: Field>(points: &PointSet<F>, d: u32) -> Matrix<F> {
    let field = &points.field;
    let monos = monomials_of_degree(points.ambient_vars(), d);
    let data = points
        .points
        .iter()
        .map(|p| monos.iter().map(|m| eval_monomial(field, m, p)).collect())
        .collect();
    Matrix::from_rows(data)
}

fn eval_monomial<F: Field>(field: &F, m: &Monomial, p: &[F::Elem]) -> F::Elem {
    let mut acc = field.one();
    for (i, x) in p.iter().enumerate() {
        let e = m.exponent(i);
        if e > 0 {
            acc = field.mul(&acc, &field.pow(x, e as u64));
        }
    }
    acc
}

/// Vanishing ideal from the kernels of `X_d`, `d <= degree_bound`
/// (default `s`). Each degree contributes the kernel vectors not already in
/// the span of `x_i` times the lower-degree part.
pub fn vanishing_ideal<F: Field>(
    ring: &Arc<Ring<F>>,
    points: &PointSet<F>,
    degree_bound: Option<u32>,
) -> Result<IdealHandle<F>> {
    let n = ring.nvars();
    if n != points.ambient_vars() || *ring.field() != points.field {
        return Err(Error::MismatchedRings);
    }
    let field = ring.field();
    let s = points.len();
    let bound = degree_bound.unwrap_or(s as u32);
    let mut gens: Vec<Polynomial<F>> = Vec::new();
    for d in 0..=bound {
        let monos = monomials_of_degree(n, d);
        let x = evaluation_matrix(points, d);
        let expected = s.min(monos.len());
        if x.rank(field) != expected {
            return Err(Error::DegeneratePoints(format!(
                "rank of the degree-{d} evaluation matrix is not {expected}"
            )));
        }
        let kernel = x.kernel(field);
        if kernel.is_empty() {
            continue;
        }
        // span of S_1 * (generators so far) in degree d
        let index: std::collections::HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut lower: Vec<Vec<F::Elem>> = Vec::new();
        for g in &gens {
            let e = g.homogeneous_degree().unwrap();
            for m in monomials_of_degree(n, d - e) {
                let mut row = vec![field.zero(); monos.len()];
                for (t, c) in g.terms() {
                    row[index[&t.mul(&m)]] = c.clone();
                }
                lower.push(row);
            }
        }
        let mut span = Matrix::<F>::from_rows(if lower.is_empty() { vec![vec![field.zero(); monos.len()]] } else { lower });
        span.rref(field);
        let mut rank = span.rows;
        for v in kernel {
            let mut trial = span.data.clone();
            trial.push(v.clone());
            let mut t = Matrix::<F>::from_rows(trial);
            if t.rref(field).len() > rank {
                span = t;
                rank += 1;
                let terms = monos.iter().zip(v).map(|(m, c)| (*m, c)).collect();
                gens.push(Polynomial::from_terms(ring, terms));
            }
        }
    }
    IdealHandle::new(ring, gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    /// `(d, columns tested, vanishing minors found)` per degree.
    pub per_degree: Vec<(u32, usize, usize)>,
    /// Degrees skipped because `X_d` has fewer columns than points.
    pub skipped: Vec<u32>,
    /// Column sets of vanishing maximal minors (first few per degree).
    pub witnesses: Vec<(u32, Vec<usize>)>,
}

impl GenericityReport {
    pub fn failures(&self) -> usize {
        self.per_degree.iter().map(|t| t.2).sum()
    }
}

/// Test random `s`-column subsets of each `X_d` for a nonzero determinant.
/// When a degree has no more subsets than `samples`, all are tested.
pub fn genericity_spot_check<F: Field>(points: &PointSet<F>, d_max: u32, samples: usize, seed: u64) -> GenericityReport {
    let field = &points.field;
    let s = points.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = GenericityReport {
        per_degree: Vec::new(),
        skipped: Vec::new(),
        witnesses: Vec::new(),
    };
    for d in 1..=d_max {
        let x = evaluation_matrix(points, d);
        if x.cols < s {
            report.skipped.push(d);
            continue;
        }
        let total = binomial(x.cols as u64, s as u64);
        let subsets: Vec<Vec<usize>> = if total <= samples as u64 {
            combinations(x.cols, s)
        } else {
            (0..samples)
                .map(|_| {
                    let mut c = sample(&mut rng, x.cols, s).into_vec();
                    c.sort_unstable();
                    c
                })
                .collect()
        };
        let mut bad = 0;
        for cols in &subsets {
            if field.is_zero(&x.columns(cols).determinant(field)) {
                bad += 1;
                if report.witnesses.iter().filter(|w| w.0 == d).count() < 3 {
                    report.witnesses.push((d, cols.clone()));
                }
            }
        }
        report.per_degree.push((d, subsets.len(), bad));
    }
    report
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::order::TermOrder;

    #[test]
    fn random_points_are_reproducible() {
        let f = PrimeField::default();
        let a = random_points(f, 3, 2, 9);
        assert_eq!(a, random_points(f, 3, 2, 9));
        assert_eq!(a.len(), 3);
        assert!(PointSet::new(f, a.points.clone()).is_ok());
        assert!(PointSet::from_integers(f, &[vec![1, 2, 1], vec![2, 4, 2]]).is_err());
    }

    #[test]
    fn evaluation_matrices() {
        let f = PrimeField::default();
        let simplex = PointSet::from_integers(f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let x = evaluation_matrix(&simplex, 1);
        assert_eq!(x, Matrix::identity(&f, 3));
        let p = PointSet::from_integers(f, &[vec![1, 2, 3]]).unwrap();
        let q = PointSet::from_integers(f, &[vec![2, 4, 6]]).unwrap();
        let (xp, xq) = (evaluation_matrix(&p, 2), evaluation_matrix(&q, 2));
        for j in 0..6 {
            assert_eq!(xq.data[0][j], f.mul(&4, &xp.data[0][j]));
        }
    }

    #[test]
    fn three_points_in_the_plane() {
        let f = PrimeField::default();
        let r = Ring::new(f, 3).unwrap();
        let pts = random_points(f, 3, 2, 1);
        let i = vanishing_ideal(&r, &pts, None).unwrap();
        assert_eq!(i.hilbert_function(&TermOrder::RevLex, 5).unwrap().dims, vec![1, 3, 3, 3, 3, 3]);
        for p in &pts.points {
            assert!(i.generators().iter().all(|g| g.evaluate(p) == 0));
        }
    }

    #[test]
    fn special_points_have_vanishing_minors() {
        let f = PrimeField::default();
        let report = genericity_spot_check(&seven_special_points(f), 2, 200, 3);
        assert!(report.skipped.contains(&1));
        assert!(report.failures() > 0);
        let random = genericity_spot_check(&random_points(f, 7, 3, 5), 3, 200, 3);
        assert_eq!(random.failures(), 0);
    }
}
