//! Degree-compatible term orders.
//!
//! Every comparison refines total degree first. Within one degree:
//!
//! * `Lex`: the left-most non-zero entry of `a - b` is positive,
//! * `RevLex`: the right-most non-zero entry of `a - b` is negative,
//! * `Weight`: larger `w . a` wins, ties go to the mandatory tiebreak order,
//! * `Product`: blocks of consecutive variables compared in turn, each block
//!   by its own degree and then by its inner order. The `(1, r)` product
//!   order is the elimination order for `x0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    RevLex,
    Weight {
        weights: Vec<u32>,
        tiebreak: Box<TermOrder>,
    },
    Product {
        blocks: Vec<(usize, TermOrder)>,
    },
}

impl TermOrder {
    /// Weight order; weights must be strictly positive.
    pub fn weight(weights: Vec<u32>, tiebreak: TermOrder) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::InvalidArgument("weights must be strictly positive".into()));
        }
        Ok(TermOrder::Weight {
            weights,
            tiebreak: Box::new(tiebreak),
        })
    }

    /// The `(1, r)` product order eliminating the first variable, with
    /// `inner` on the remaining `nvars - 1` variables.
    pub fn eliminate_first(nvars: usize, inner: TermOrder) -> Self {
        TermOrder::Product {
            blocks: vec![(1, TermOrder::Lex), (nvars - 1, inner)],
        }
    }

    /// Check that the order is well formed for `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            TermOrder::Lex | TermOrder::RevLex => Ok(()),
            TermOrder::Weight { weights, tiebreak } => {
                if weights.len() != nvars {
                    return Err(Error::InvalidArgument(format!(
                        "weight vector has length {}, ring has {nvars} variables",
                        weights.len()
                    )));
                }
                if weights.contains(&0) {
                    return Err(Error::InvalidArgument("weights must be strictly positive".into()));
                }
                tiebreak.validate(nvars)
            }
            TermOrder::Product { blocks } => {
                let total: usize = blocks.iter().map(|(k, _)| *k).sum();
                if total != nvars || blocks.iter().any(|(k, _)| *k == 0) {
                    return Err(Error::InvalidArgument(format!(
                        "product blocks cover {total} variables, ring has {nvars}"
                    )));
                }
                blocks.iter().try_for_each(|(k, o)| o.validate(*k))
            }
        }
    }

    /// Compare two monomials of the same ring.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => self.cmp_range(a.raw(), b.raw()),
            o => o,
        }
    }

    /// Comparison of two exponent slices of equal total degree.
    fn cmp_range(&self, a: &[u8], b: &[u8]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::RevLex => {
                for (x, y) in a.iter().zip(b.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            TermOrder::Weight { weights, tiebreak } => {
                let wa: u64 = a.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                let wb: u64 = b.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                wa.cmp(&wb).then_with(|| tiebreak.cmp_range(a, b))
            }
            TermOrder::Product { blocks } => {
                let mut start = 0;
                for (k, inner) in blocks {
                    let (sa, sb) = (&a[start..start + k], &b[start..start + k]);
                    let da: u32 = sa.iter().map(|&e| e as u32).sum();
                    let db: u32 = sb.iter().map(|&e| e as u32).sum();
                    let o = da.cmp(&db).then_with(|| inner.cmp_range(sa, sb));
                    if o != Ordering::Equal {
                        return o;
                    }
                    start += k;
                }
                Ordering::Equal
            }
        }
    }

    /// Sort monomials in decreasing order.
    pub fn sort_desc(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.cmp(b, a));
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::RevLex => write!(f, "revlex"),
            TermOrder::Weight { weights, tiebreak } => {
                let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                write!(f, "weight:{}/{}", w.join(","), tiebreak)
            }
            TermOrder::Product { blocks } => {
                let b: Vec<String> = blocks.iter().map(|(k, o)| format!("{k}:{o}")).collect();
                write!(f, "product[{}]", b.join(";"))
            }
        }
    }
}

/// Parsed `--order` argument. `elim` needs the ring size, so it is resolved
/// later through [`OrderSpec::resolve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Fixed(TermOrder),
    /// `(1, r)` elimination order with revlex on the remaining variables.
    Elim,
}

impl OrderSpec {
    pub fn resolve(&self, nvars: usize) -> Result<TermOrder> {
        let o = match self {
            OrderSpec::Fixed(o) => o.clone(),
            OrderSpec::Elim => TermOrder::eliminate_first(nvars, TermOrder::RevLex),
        };
        o.validate(nvars)?;
        Ok(o)
    }
}

impl FromStr for OrderSpec {
    type Err = Error;

    /// `lex`, `revlex`, `elim`, or `weight:w0,w1,...` (lex tiebreak).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "lex" => Ok(OrderSpec::Fixed(TermOrder::Lex)),
            "revlex" => Ok(OrderSpec::Fixed(TermOrder::RevLex)),
            "elim" => Ok(OrderSpec::Elim),
            _ => {
                let Some(rest) = s.strip_prefix("weight:") else {
                    return Err(Error::Parse(format!("unknown term order `{s}`")));
                };
                let weights = rest
                    .split(',')
                    .map(|w| w.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Parse(format!("bad weight vector `{rest}`: {e}")))?;
                Ok(OrderSpec::Fixed(TermOrder::weight(weights, TermOrder::Lex)?))
            }
        }
    }
}
