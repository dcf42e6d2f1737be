//! Segment spaces, segment ideals, lex ideals and Borel enumeration.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};
use crate::monomial_ideal::{HilbertFunction, MonomialIdeal};
use crate::order::TermOrder;

/// The `u` largest degree-`d` monomials under an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSpace {
    pub degree: u32,
    /// Descending in the order.
    pub monomials: Vec<Monomial>,
}

impl SegmentSpace {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }
}

fn sorted_desc(nvars: usize, d: u32, ord: &TermOrder) -> Vec<Monomial> {
    let mut all = monomials_of_degree(nvars, d);
    ord.sort_desc(&mut all);
    all
}

pub fn segment_space(nvars: usize, d: u32, u: usize, ord: &TermOrder) -> Result<SegmentSpace> {
    ord.validate(nvars)?;
    let total = count_monomials(nvars, d) as usize;
    if u > total {
        return Err(Error::InvalidArgument(format!("segment of size {u} in a space of dimension {total}")));
    }
    let mut monomials = sorted_desc(nvars, d, ord);
    monomials.truncate(u);
    Ok(SegmentSpace { degree: d, monomials })
}

/// True if `v` is spanned by the top `v.len()` monomials of its degree.
pub fn is_segment(nvars: usize, d: u32, v: &[Monomial], ord: &TermOrder) -> bool {
    let top: HashSet<Monomial> = sorted_desc(nvars, d, ord).into_iter().take(v.len()).collect();
    v.iter().all(|m| top.contains(m)) && v.iter().collect::<HashSet<_>>().len() == v.len()
}

/// `S_1 * V` in degree `d + 1`.
pub fn multiply_by_linear(nvars: usize, v: &[Monomial]) -> Vec<Monomial> {
    let set: HashSet<Monomial> = v.iter().flat_map(|m| (0..nvars).map(move |i| m.mul_var(i, 1))).collect();
    let mut out: Vec<Monomial> = set.into_iter().collect();
    TermOrder::Lex.sort_desc(&mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentIdeal {
    /// `Seg(d, dim I_d)` for `d = 0..=bound`.
    pub spaces: Vec<SegmentSpace>,
    /// `S_1 * Seg(d)` lies in `Seg(d + 1)` for every `d < bound`.
    pub is_ideal: bool,
    /// The ideal generated by all the spaces.
    pub ideal: MonomialIdeal,
}

/// `Seg(I)` from the Hilbert function `h(d) = dim (S/I)_d`, up to `bound`.
pub fn segment_ideal_of(hf: &HilbertFunction, nvars: usize, ord: &TermOrder, bound: u32) -> Result<SegmentIdeal> {
    let mut spaces = Vec::with_capacity(bound as usize + 1);
    for d in 0..=bound {
        let h = hf
            .get(d)
            .ok_or_else(|| Error::InvalidHilbertFunction(format!("value at degree {d} unknown")))?;
        let total = count_monomials(nvars, d);
        if h > total {
            return Err(Error::InvalidHilbertFunction(format!("h({d}) = {h} exceeds {total}")));
        }
        spaces.push(segment_space(nvars, d, (total - h) as usize, ord)?);
    }
    let is_ideal = spaces.windows(2).all(|w| {
        let next: HashSet<&Monomial> = w[1].monomials.iter().collect();
        multiply_by_linear(nvars, &w[0].monomials).iter().all(|m| next.contains(m))
    });
    let gens = spaces.iter().flat_map(|s| s.monomials.iter().copied()).collect();
    Ok(SegmentIdeal {
        spaces,
        is_ideal,
        ideal: MonomialIdeal::new(nvars, gens),
    })
}

/// The lex ideal with Hilbert function `hf` through `bound`. Fails when the
/// lex segments do not form an ideal, i.e. `hf` is not an O-sequence.
pub fn lex_ideal_of_hf(hf: &HilbertFunction, nvars: usize, bound: u32) -> Result<MonomialIdeal> {
    let seg = segment_ideal_of(hf, nvars, &TermOrder::Lex, bound)?;
    if !seg.is_ideal {
        return Err(Error::InvalidHilbertFunction(
            "lex segments are not closed under multiplication".into(),
        ));
    }
    Ok(seg.ideal)
}

const MAX_BRANCHES: usize = 1_000_000;

/// All Borel-fixed ideals with Hilbert function `hf`, generated in degrees
/// at most `bound`. Every result is checked against `hf` beyond the bound.
pub fn enumerate_borel_by_hf(hf: &HilbertFunction, nvars: usize, bound: u32) -> Result<Vec<MonomialIdeal>> {
    if nvars > 3 || bound > 10 {
        return Err(Error::ResourceGuard(format!(
            "Borel enumeration is limited to 3 variables and degree 10 (got {nvars}, {bound})"
        )));
    }
    // each state: (degree-d part, generators so far); distinct choices give distinct ideals
    let mut states: Vec<(Vec<Monomial>, Vec<Monomial>)> = vec![(Vec::new(), Vec::new())];
    let mut work = 0usize;
    for d in 0..=bound {
        let total = count_monomials(nvars, d);
        let h = hf
            .get(d)
            .ok_or_else(|| Error::InvalidHilbertFunction(format!("value at degree {d} unknown")))?;
        if h > total {
            return Err(Error::InvalidHilbertFunction(format!("h({d}) = {h} exceeds {total}")));
        }
        let target = (total - h) as usize;
        let all = monomials_of_degree(nvars, d);
        let mut next = Vec::new();
        for (part, gens) in &states {
            let base = if d == 0 { Vec::new() } else { multiply_by_linear(nvars, part) };
            if base.len() > target {
                continue;
            }
            let have: HashSet<Monomial> = base.iter().copied().collect();
            let rest: Vec<Monomial> = all.iter().filter(|m| !have.contains(m)).copied().collect();
            for extra in subsets(&rest, target - base.len(), &mut work)? {
                let mut cand = base.clone();
                cand.extend(extra.iter().copied());
                if borel_closed(nvars, &cand) {
                    let mut g = gens.clone();
                    g.extend(extra);
                    next.push((cand, g));
                }
            }
        }
        states = next;
    }
    let check_to = bound + 10;
    let mut out: Vec<MonomialIdeal> = states
        .into_iter()
        .map(|(_, g)| MonomialIdeal::new(nvars, g))
        .filter(|j| {
            let got = j.hilbert(check_to).function;
            (0..=check_to).all(|d| Some(got.dims[d as usize]) == hf.get(d)) && got.stable_value == hf.stable_value
        })
        .collect();
    out.sort_by_key(|j| j.generators().iter().map(Monomial::exponents).collect::<Vec<_>>());
    out.dedup();
    Ok(out)
}

/// Borel-closed within one degree: `x_i m` in the set forces `x_j m` for `j < i`.
fn borel_closed(nvars: usize, set: &[Monomial]) -> bool {
    let s: HashSet<&Monomial> = set.iter().collect();
    set.iter().all(|g| {
        (1..nvars).all(|i| g.exponent(i) == 0 || (0..i).all(|j| s.contains(&g.div_var(i).unwrap().mul_var(j, 1))))
    })
}

fn subsets(items: &[Monomial], k: usize, work: &mut usize) -> Result<Vec<Vec<Monomial>>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(
        items: &[Monomial],
        start: usize,
        k: usize,
        cur: &mut Vec<Monomial>,
        out: &mut Vec<Vec<Monomial>>,
        work: &mut usize,
    ) -> Result<()> {
        if cur.len() == k {
            *work += 1;
            if *work > MAX_BRANCHES {
                return Err(Error::ResourceGuard("Borel enumeration branched too far".into()));
            }
            out.push(cur.clone());
            return Ok(());
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, i + 1, k, cur, out, work)?;
            cur.pop();
        }
        Ok(())
    }
    if k <= items.len() {
        go(items, 0, k, &mut cur, &mut out, work)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier_motzkin::{segment_witness, verify_integer_weight};

    fn names3() -> std::sync::Arc<[String]> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn seven_point_census() -> Vec<MonomialIdeal> {
        [
            "x^3, x^2*y, x^2*z, x*y^3, x*y^2*z, x*y*z^3, x*z^5, y^7",
            "x^3, x^2*y, x^2*z, x*y^3, x*y^2*z, x*y*z^3, y^6",
            "x^3, x^2*y, x^2*z, x*y^3, x*y^2*z, y^5",
            "x^3, x^2*y, x^2*z, x*y^3, y^4",
            "x^3, x^2*y, x*y^2, x^2*z^2, x*y*z^3, x*z^5, y^7",
            "x^3, x^2*y, x*y^2, x^2*z^2, x*y*z^3, y^6",
            "x^3, x^2*y, x*y^2, x^2*z^2, y^5",
            "x^3, x^2*y, x*y^2, y^4",
        ]
        .iter()
        .map(|t| MonomialIdeal::parse(names3(), t).unwrap())
        .collect()
    }

    #[test]
    fn segment_spaces() {
        let lex = segment_space(3, 2, 3, &TermOrder::Lex).unwrap();
        assert_eq!(lex.monomials, vec![Monomial::new(&[2, 0, 0]), Monomial::new(&[1, 1, 0]), Monomial::new(&[1, 0, 1])]);
        let rev = segment_space(3, 2, 3, &TermOrder::RevLex).unwrap();
        assert_eq!(rev.monomials, vec![Monomial::new(&[2, 0, 0]), Monomial::new(&[1, 1, 0]), Monomial::new(&[0, 2, 0])]);
        assert!(segment_space(3, 2, 0, &TermOrder::Lex).unwrap().is_empty());
        assert!(segment_space(3, 2, 7, &TermOrder::Lex).is_err());
    }

    #[test]
    fn lex_ideals() {
        let three = HilbertFunction::from_values(vec![1, 3, 3], Some(3));
        assert_eq!(lex_ideal_of_hf(&three, 3, 4).unwrap().to_string(), "(x0^2, x0*x1, x0*x2, x1^3)");
        let line = HilbertFunction::from_values(vec![1, 1], Some(1));
        assert_eq!(lex_ideal_of_hf(&line, 2, 4).unwrap().to_string(), "(x0)");
        let full = HilbertFunction::from_values(vec![1, 0], Some(0));
        let seg = segment_ideal_of(&full, 3, &TermOrder::RevLex, 3).unwrap();
        assert!(seg.is_ideal);
        // h(2) = 3 > h(1)^<1> = 1 is not an O-sequence
        let bad = HilbertFunction::from_values(vec![1, 1, 3], Some(3));
        assert!(lex_ideal_of_hf(&bad, 3, 4).is_err());
    }

    #[test]
    fn small_borel_enumerations() {
        let hf = HilbertFunction::from_values(vec![1, 2, 2], Some(2));
        let all = enumerate_borel_by_hf(&hf, 2, 6).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].to_string(), "(x0^2)");
        let hf = HilbertFunction::from_values(vec![1, 1], Some(1));
        assert_eq!(enumerate_borel_by_hf(&hf, 2, 6).unwrap()[0].to_string(), "(x0)");
        assert!(enumerate_borel_by_hf(&hf, 4, 6).is_err());
    }

    #[test]
    fn seven_points_census() {
        let hf = HilbertFunction::from_values(vec![1, 3, 6, 7], Some(7));
        let mut found = enumerate_borel_by_hf(&hf, 3, 10).unwrap();
        let mut expected: Vec<MonomialIdeal> =
            seven_point_census().into_iter().map(|j| MonomialIdeal::new(3, j.generators().to_vec())).collect();
        found.sort_by_key(|j| j.to_string());
        expected.sort_by_key(|j| j.to_string());
        assert_eq!(found, expected);
        let census = seven_point_census();
        assert!(verify_integer_weight(&census[1], &[6, 2, 1], (1, 7)));
        assert!(verify_integer_weight(&census[2], &[4, 2, 1], (1, 6)));
        for (k, j) in census.iter().enumerate() {
            let w = segment_witness(j, None).unwrap();
            assert_eq!(w.is_some(), [0, 1, 2, 7].contains(&k), "ideal {}", k + 1);
        }
    }
}
