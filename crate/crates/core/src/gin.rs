//! Generic initial ideals via random changes of coordinates.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::IdealHandle;
use crate::linalg::Matrix;
use crate::monomial_ideal::MonomialIdeal;
use crate::order::TermOrder;
use crate::ring::Ring;

/// An invertible linear change of coordinates `x_i -> sum_j m_ij x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange<F: Field> {
    pub matrix: Matrix<F>,
    pub seed: u64,
}

impl<F: Field> CoordinateChange<F> {
    pub fn identity(field: &F, n: usize) -> Self {
        CoordinateChange {
            matrix: Matrix::identity(field, n),
            seed: 0,
        }
    }

    pub fn inverse(&self, field: &F) -> Result<Self> {
        Ok(CoordinateChange {
            matrix: self.matrix.inverse(field).ok_or(Error::SingularMatrix)?,
            seed: self.seed,
        })
    }
}

/// Uniformly random invertible matrix, redrawn until the determinant is nonzero.
pub fn random_coordinate_change<F: Field>(ring: &Ring<F>, seed: u64) -> CoordinateChange<F> {
    let field = ring.field();
    let n = ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let data = (0..n).map(|_| (0..n).map(|_| field.random(&mut rng)).collect()).collect();
        let matrix = Matrix::from_rows(data);
        if !field.is_zero(&matrix.determinant(field)) {
            return CoordinateChange { matrix, seed };
        }
    }
}

/// `g . I`: substitute the linear forms of `g` into every generator.
pub fn apply_change<F: Field>(ideal: &IdealHandle<F>, change: &CoordinateChange<F>) -> Result<IdealHandle<F>> {
    let ring = ideal.ring();
    let field = ring.field();
    let m = &change.matrix;
    if m.rows != ring.nvars() || m.cols != ring.nvars() {
        return Err(Error::InvalidArgument(format!(
            "coordinate change is {}x{}, ring has {} variables",
            m.rows,
            m.cols,
            ring.nvars()
        )));
    }
    if field.is_zero(&m.determinant(field)) {
        return Err(Error::SingularMatrix);
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.substitute_linear(&m.data))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealHandle::new(ring, gens)?.with_degree_cap(ideal.degree_cap()))
}

#[derive(Clone, Debug)]
pub struct GinResult<F: Field> {
    pub gin: MonomialIdeal,
    pub trials_used: usize,
    /// All trials produced the same initial ideal.
    pub agreed: bool,
    pub borel: bool,
    /// Largest generator degree; only reported for Borel-fixed results.
    pub regularity: Option<u32>,
    /// Seeds of the trials, in order.
    pub seeds: Vec<u64>,
    /// `g . I` for the first trial that produced `gin`; its basis for the
    /// requested order is cached.
    pub transformed: IdealHandle<F>,
}

/// `in(g . I)` for `trials` independent random `g` (seeds `seed`, `seed + 1`, ...).
///
/// On disagreement one extra trial is run and the majority answer is
/// returned with `agreed = false`; if no two trials agree the call fails.
pub fn gin<F: Field>(ideal: &IdealHandle<F>, ord: &TermOrder, trials: usize, seed: u64) -> Result<GinResult<F>> {
    if trials < 2 {
        return Err(Error::InvalidArgument("gin needs at least two trials".into()));
    }
    let ring: &Arc<Ring<F>> = ideal.ring();
    let mut runs: Vec<(MonomialIdeal, IdealHandle<F>)> = Vec::new();
    let run = |k: usize| -> Result<(MonomialIdeal, IdealHandle<F>)> {
        let g = random_coordinate_change(ring, seed.wrapping_add(k as u64));
        let gi = apply_change(ideal, &g)?;
        Ok((gi.initial_ideal(ord)?, gi))
    };
    for k in 0..trials {
        runs.push(run(k)?);
    }
    let agreed = runs.iter().all(|r| r.0 == runs[0].0);
    if !agreed {
        runs.push(run(trials)?);
    }
    let winner = (0..runs.len())
        .find(|&i| runs.iter().filter(|r| r.0 == runs[i].0).count() >= 2)
        .ok_or(Error::AllTrialsDisagree { trials: runs.len() })?;
    let trials_used = runs.len();
    let (gin, transformed) = runs.swap_remove(winner);
    let borel = gin.is_borel_fixed();
    let regularity = if borel { gin.max_generator_degree() } else { None };
    Ok(GinResult {
        gin,
        trials_used,
        agreed,
        borel,
        regularity,
        seeds: (0..trials_used as u64).map(|k| seed.wrapping_add(k)).collect(),
        transformed,
    })
}
