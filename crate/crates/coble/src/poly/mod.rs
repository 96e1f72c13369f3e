//! Exact rationals, sparse (Laurent) polynomials, exact linear algebra and the t-chart.

mod chart;
mod linalg;
mod monomial;
mod polynomial;

pub use chart::{LinearSubstitution, TChart};
pub use linalg::{
    bareiss_rank, bareiss_rank_checked, clear_denominators_columnwise, coefficient_matrix, commutant_dimension,
    coordinates, determinant, dot, identity, independent_rows, inverse, kernel, mat_mul, poly_determinant, rank, solve, RatMatrix,
    SpanCoordinates,
};
pub use monomial::{monomials_of_degree, Monomial};
pub use polynomial::{product, PolyRing, Polynomial};

use num_bigint::BigInt;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::Json(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial")]
    Zero,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("Laurent and plain polynomials cannot be mixed")]
    LaurentMix,
    #[error("exponent vector has {got} entries, ring has {expected}")]
    Arity { expected: usize, got: usize },
    #[error("negative exponent outside Laurent mode")]
    NegativeExponent,
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed input: {0}")]
    Json(String),
    #[error("substitution does not come from a Weyl element")]
    NotWeyl,
}

/// Rank of the coefficient matrix of a list of polynomials sharing one ring.
pub fn span_dimension(polys: &[Polynomial]) -> Result<usize, PolyError> {
    if let Some(first) = polys.first() {
        for p in polys {
            first.check_ring(p)?;
        }
    }
    let (_, rows) = coefficient_matrix(polys);
    Ok(rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_of_three_linear_forms() {
        let r = PolyRing::t_vars(2);
        let t1 = Polynomial::var(&r, 0);
        let t2 = Polynomial::var(&r, 1);
        assert_eq!(span_dimension(&[t1.clone(), t2.clone(), &t1 + &t2]).unwrap(), 2);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(4, -6)), "-2/3");
    }
}
