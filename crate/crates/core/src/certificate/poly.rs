use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polytope::{ExponentVector, Support};

/// Graded lexicographic order: total degree first, then coordinates.
pub fn grlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.cmp(b))
}

/// Sort key realizing [`grlex`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grlex(pub ExponentVector);

impl Ord for Grlex {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for Grlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    dim: usize,
    terms: BTreeMap<Grlex, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(dim: usize) -> Self {
        SparsePolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: BigRational) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(ExponentVector::zero(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, BigRational::one())
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (ExponentVector, BigRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Shorthand for tests and examples: integer coefficients and exponents.
    pub fn from_ints(dim: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::from_terms(
            dim,
            terms.iter().map(|(e, c)| {
                (
                    ExponentVector::new(e.to_vec()),
                    BigRational::from_integer(BigInt::from(*c)),
                )
            }),
        )
    }

    fn add_term(&mut self, e: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = Grlex(e);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.0.degree() == 0 && c.is_one())
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter().map(|(e, c)| (&e.0, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigRational {
        self.terms
            .get(&Grlex(e.clone()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.0.degree()).max()
    }

    pub fn support(&self) -> Result<Support> {
        Support::new(self.dim, self.terms.keys().map(|e| e.0.clone()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparsePolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0.clone(), c.clone());
        }
        out
    }

    /// Exact product; cancelling terms vanish.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.0.add(&b.0), x * y);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (k, &p) in e.0.coords().iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", k + 1)?,
                    _ => write!(f, "*x{}^{p}", k + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Parses `"p/q"` or an integer literal. Decimal and exponent forms are rejected.
pub fn parse_coefficient(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidCoefficient(s.to_string());
    let t = s.trim();
    let parse_int = |x: &str| -> Result<BigInt> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(dim: usize, terms: &[(&[u32], i64)]) -> SparsePolynomial {
        SparsePolynomial::from_ints(dim, terms).unwrap()
    }

    #[test]
    fn products() {
        let f = p(2, &[(&[1, 0], 1), (&[0, 1], 3)]);
        assert_eq!(f.multiply(&SparsePolynomial::one(2)).unwrap(), f);
        let a = p(1, &[(&[1], 1), (&[0], -1)]);
        let b = p(1, &[(&[1], 1), (&[0], 1)]);
        assert_eq!(a.multiply(&b).unwrap(), p(1, &[(&[2], 1), (&[0], -1)]));
        let c = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let d = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = c.multiply(&d).unwrap();
        assert_eq!(prod, p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!(prod.len(), 2);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let f = p(1, &[(&[1], 2), (&[1], -2), (&[0], 0)]);
        assert!(f.is_zero());
        assert_eq!(f.degree(), None);
    }

    #[test]
    fn grlex_order() {
        let f = p(2, &[(&[0, 2], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 0], 1)]);
        let order: Vec<String> = f.terms().map(|(e, _)| e.to_string()).collect();
        assert_eq!(order, ["(0,0)", "(1,0)", "(0,2)", "(2,0)"]);
    }

    #[test]
    fn coefficient_literals() {
        assert_eq!(
            parse_coefficient("3").unwrap(),
            BigRational::from_integer(3.into())
        );
        assert_eq!(
            parse_coefficient("-6/4").unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        for bad in ["1.5", "1e3", "", "1/0", "x", "/2", "3/"] {
            assert!(parse_coefficient(bad).is_err(), "{bad}");
        }
    }
}
