//! Exact scalars: rationals and elements of a cyclotomic field Q(ζ_M).
//!
//! Every root of unity the orbifold computations touch (group eigenvalues,
//! their half-angles, e[-1/4]) lives in one field fixed per run. Elements are
//! stored as residues modulo the cyclotomic polynomial Φ_M, so every nonzero
//! element is invertible.

mod cyclotomic;

pub use cyclotomic::{cyclotomic_polynomial, invert, root_of_unity, CycField, CycNum};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub type Rational = num_rational::BigRational;

/// `p/q` as a reduced rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Representative of `a` modulo 1 in `[0, 1)`.
pub fn frac(a: &Rational) -> Rational {
    a - a.floor()
}

/// Parses `"p/q"`, `"-p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

pub(crate) fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_wraps_into_unit_interval() {
        assert_eq!(frac(&rat(7, 4)), rat(3, 4));
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&int(2)), int(0));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational(" -2/6 "), Some(rat(-1, 3)));
        assert_eq!(parse_rational("5"), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("a/2"), None);
    }
}
