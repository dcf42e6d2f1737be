//! Exact feasibility of strict and weak linear inequalities, and the search
//! for weight vectors that make a monomial ideal a segment.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::monomial_ideal::MonomialIdeal;

/// `coeffs . x + constant > 0` (strict) or `>= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
    pub strict: bool,
}

impl Inequality {
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .find(|c| !c.is_zero())
            .map(|c| c.abs());
        if let Some(s) = scale {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &s;
            }
            self.constant = &self.constant / &s;
        }
        self
    }

    fn holds(&self, x: &[BigRational]) -> bool {
        let v = self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, b)| acc + a * b);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

const MAX_CONSTRAINTS: usize = 200_000;

/// A point satisfying every inequality, or `None` if the system is infeasible.
pub fn solve(nvars: usize, system: &[Inequality]) -> Result<Option<Vec<BigRational>>> {
    // stages[k] holds the system with variables k.. eliminated (only 0..k remain)
    let mut stages: Vec<Vec<Inequality>> = vec![dedupe(system.to_vec())];
    for k in (0..nvars).rev() {
        let current = stages.last().unwrap();
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in current {
            let c = &ineq.coeffs[k];
            if c.is_positive() {
                lower.push(ineq);
            } else if c.is_negative() {
                upper.push(ineq);
            } else {
                rest.push(ineq.clone());
            }
        }
        if lower.len() * upper.len() + rest.len() > MAX_CONSTRAINTS {
            return Err(Error::ResourceGuard(format!(
                "Fourier-Motzkin step would create {} constraints",
                lower.len() * upper.len()
            )));
        }
        for l in &lower {
            for u in &upper {
                // l: a x_k + p > 0, u: -b x_k + q > 0  =>  b p + a q > 0
                let a = &l.coeffs[k];
                let b = -&u.coeffs[k];
                let coeffs = l.coeffs.iter().zip(&u.coeffs).map(|(p, q)| &b * p + a * q).collect();
                rest.push(
                    Inequality {
                        coeffs,
                        constant: &b * &l.constant + a * &u.constant,
                        strict: l.strict || u.strict,
                    }
                    .normalized(),
                );
            }
        }
        stages.push(dedupe(rest));
    }
    if !stages.last().unwrap().iter().all(|i| i.holds(&[])) {
        return Ok(None);
    }
    // back substitution, first variable first
    let mut x: Vec<BigRational> = vec![BigRational::zero(); nvars];
    for k in 0..nvars {
        let system = &stages[nvars - 1 - k];
        let mut lo: Option<(BigRational, bool)> = None;
        let mut hi: Option<(BigRational, bool)> = None;
        for ineq in system {
            let c = &ineq.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let partial = ineq.coeffs[..k].iter().zip(&x).fold(ineq.constant.clone(), |acc, (a, v)| acc + a * v);
            let bound = -partial / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|(v, s)| bound > *v || (bound == *v && ineq.strict && !s)) {
                    lo = Some((bound, ineq.strict));
                }
            } else if hi.as_ref().is_none_or(|(v, s)| bound < *v || (bound == *v && ineq.strict && !s)) {
                hi = Some((bound, ineq.strict));
            }
        }
        let one = BigRational::one();
        x[k] = match (lo, hi) {
            (None, None) => BigRational::zero(),
            (Some((l, _)), None) => l + one,
            (None, Some((h, _))) => h - one,
            (Some((l, ls)), Some((h, hs))) => {
                if l == h {
                    debug_assert!(!ls && !hs);
                    l
                } else {
                    (l + h) / BigRational::from_integer(BigInt::from(2))
                }
            }
        };
    }
    debug_assert!(system.iter().all(|i| i.holds(&x)));
    Ok(Some(x))
}

fn dedupe(v: Vec<Inequality>) -> Vec<Inequality> {
    let mut seen = HashSet::new();
    v.into_iter()
        .filter(|i| !(i.coeffs.iter().all(Zero::is_zero) && i.holds(&[])))
        .filter(|i| seen.insert(i.clone()))
        .collect()
}

/// A positive weight vector separating `J_d` from its complement for every
/// `d` in `degrees`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightWitness {
    pub weights: Vec<BigRational>,
    pub degrees: (u32, u32),
}

impl WeightWitness {
    /// The weights scaled to coprime positive integers.
    pub fn integer_weights(&self) -> Vec<BigInt> {
        let lcm = self.weights.iter().fold(BigInt::one(), |acc, w| num_integer::lcm(acc, w.denom().clone()));
        let ints: Vec<BigInt> = self.weights.iter().map(|w| (w * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, w| num_integer::gcd(acc, w.clone()));
        ints.into_iter().map(|w| w / &g).collect()
    }
}

/// Default range `[1, max generator degree + 1]`.
pub fn default_degree_range(j: &MonomialIdeal) -> (u32, u32) {
    (1, j.max_generator_degree().unwrap_or(0) + 1)
}

fn separation_pairs(j: &MonomialIdeal, degrees: (u32, u32)) -> Vec<(Monomial, Monomial)> {
    let mut pairs = Vec::new();
    for d in degrees.0..=degrees.1 {
        let (inside, outside): (Vec<Monomial>, Vec<Monomial>) =
            monomials_of_degree(j.nvars(), d).into_iter().partition(|m| j.contains(m));
        for m in &inside {
            for n in &outside {
                pairs.push((*m, *n));
            }
        }
    }
    pairs
}

/// Does `w . m > w . n` hold for every in/out pair in the range?
pub fn verify_weight(j: &MonomialIdeal, weights: &[BigRational], degrees: (u32, u32)) -> bool {
    weights.len() == j.nvars()
        && weights.iter().all(Signed::is_positive)
        && separation_pairs(j, degrees).iter().all(|(m, n)| {
            let diff = (0..j.nvars()).fold(BigRational::zero(), |acc, i| {
                acc + &weights[i] * BigRational::from_integer(BigInt::from(m.exponent(i) as i64 - n.exponent(i) as i64))
            });
            diff.is_positive()
        })
}

pub fn verify_integer_weight(j: &MonomialIdeal, weights: &[i64], degrees: (u32, u32)) -> bool {
    let w: Vec<BigRational> = weights.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    verify_weight(j, &w, degrees)
}

/// Search for a weight making `J` a segment on `degrees`; `None` certifies
/// that no positive weight does.
///
/// The last weight is fixed to 1, which loses nothing since all
/// constraints are homogeneous and strict.
pub fn segment_witness(j: &MonomialIdeal, degrees: Option<(u32, u32)>) -> Result<Option<WeightWitness>> {
    let degrees = degrees.unwrap_or_else(|| default_degree_range(j));
    let n = j.nvars();
    if n == 0 {
        return Err(Error::InvalidArgument("no variables".into()));
    }
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let free = n - 1;
    let mut system = Vec::new();
    for (m, o) in separation_pairs(j, degrees) {
        let diff: Vec<i64> = (0..n).map(|i| m.exponent(i) as i64 - o.exponent(i) as i64).collect();
        system.push(
            Inequality {
                coeffs: diff[..free].iter().map(|&c| q(c)).collect(),
                constant: q(diff[free]),
                strict: true,
            }
            .normalized(),
        );
    }
    for i in 0..free {
        let mut coeffs = vec![q(0); free];
        coeffs[i] = q(1);
        system.push(Inequality {
            coeffs,
            constant: q(0),
            strict: true,
        });
    }
    Ok(solve(free, &system)?.map(|mut w| {
        w.push(BigRational::one());
        WeightWitness { weights: w, degrees }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn ineq(coeffs: &[i64], constant: i64, strict: bool) -> Inequality {
        Inequality {
            coeffs: coeffs.iter().map(|&c| q(c, 1)).collect(),
            constant: q(constant, 1),
            strict,
        }
    }

    #[test]
    fn strictness_matters() {
        // x >= 1 and x <= 1
        let weak = [ineq(&[1], -1, false), ineq(&[-1], 1, false)];
        assert_eq!(solve(1, &weak).unwrap(), Some(vec![q(1, 1)]));
        let strict = [ineq(&[1], -1, true), ineq(&[-1], 1, false)];
        assert_eq!(solve(1, &strict).unwrap(), None);
    }

    #[test]
    fn two_variables() {
        // x > 0, y > 0, x + y < 1, x > 2y
        let sys = [ineq(&[1, 0], 0, true), ineq(&[0, 1], 0, true), ineq(&[-1, -1], 1, true), ineq(&[1, -2], 0, true)];
        let x = solve(2, &sys).unwrap().unwrap();
        assert!(sys.iter().all(|i| i.holds(&x)));
        let bad = [ineq(&[1, 0], 0, true), ineq(&[0, 1], 0, true), ineq(&[-1, -1], 0, false)];
        assert_eq!(solve(2, &bad).unwrap(), None);
    }

    #[test]
    fn lex_segments_have_witnesses() {
        let j = MonomialIdeal::from_exponents(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 3, 0]]);
        let w = segment_witness(&j, None).unwrap().unwrap();
        assert!(verify_weight(&j, &w.weights, w.degrees));
        assert!(w.integer_weights().iter().all(|x| x > &BigInt::zero()));
    }
}
