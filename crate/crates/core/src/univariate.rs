//! Dense univariate polynomials, coefficients from the constant term upward.

use crate::field::Field;

fn trim<F: Field>(field: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
}

/// `None` for the zero polynomial.
pub fn degree<F: Field>(field: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !field.is_zero(c))
}

pub fn derivative<F: Field>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let mut d: Vec<F::Elem> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
        .collect();
    trim(field, &mut d);
    d
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let db = degree(field, b).expect("division by zero polynomial");
    let inv = field.inv(&b[db]).unwrap();
    let mut r = a.to_vec();
    trim(field, &mut r);
    while r.len() > db {
        let k = r.len() - 1;
        let c = field.mul(&r[k], &inv);
        let shift = k - db;
        for (i, bi) in b[..=db].iter().enumerate() {
            field.sub_mul_assign(&mut r[shift + i], &c, bi);
        }
        trim(field, &mut r);
    }
    r
}

/// Monic gcd; zero when both inputs are zero.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(field, &mut x);
    trim(field, &mut y);
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last() {
        let inv = field.inv(lc).unwrap();
        for c in x.iter_mut() {
            *c = field.mul(c, &inv);
        }
    }
    x
}

/// Number of distinct roots over the algebraic closure, `deg p - deg gcd(p, p')`.
/// Valid when the degree is below the characteristic.
pub fn distinct_root_count<F: Field>(field: &F, p: &[F::Elem]) -> usize {
    let Some(d) = degree(field, p) else {
        return 0;
    };
    let g = gcd(field, p, &derivative(field, p));
    d - degree(field, &g).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn gcd_and_roots() {
        let f = PrimeField::new(101).unwrap();
        // (t - 1)^2 (t - 2) = t^3 - 4t^2 + 5t - 2
        let p = vec![f.from_i64(-2), 5, f.from_i64(-4), 1];
        assert_eq!(distinct_root_count(&f, &p), 2);
        // gcd with (t - 1)(t + 3) = t^2 + 2t - 3
        let q = vec![f.from_i64(-3), 2, 1];
        assert_eq!(gcd(&f, &p, &q), vec![f.from_i64(-1), 1]);
        assert_eq!(distinct_root_count(&f, &[7]), 0);
        assert_eq!(distinct_root_count(&f, &[]), 0);
    }
}
