//! Textual exact scalars: rationals are written `"p/q"` (always with a denominator),
//! and parsed from either `"p/q"` or a bare integer `"p"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::Matrix;

pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn format_integer(x: &BigInt) -> String {
    format!("{x}/1")
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn parse_integer(s: &str) -> Option<BigInt> {
    let q = parse_rational(s)?;
    q.denom().is_one().then(|| q.numer().clone())
}

pub fn rat_rows(m: &Matrix<BigRational>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

pub fn int_rows(m: &Matrix<BigInt>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_integer).collect())
        .collect()
}

pub fn parse_rat_rows(rows: usize, cols: usize, text: &[Vec<String>]) -> Option<Matrix<BigRational>> {
    let entries: Option<Vec<Vec<BigRational>>> = text
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect())
        .collect();
    Matrix::from_rows(rows, cols, entries?)
}

pub fn parse_int_rows(rows: usize, cols: usize, text: &[Vec<String>]) -> Option<Matrix<BigInt>> {
    let entries: Option<Vec<Vec<BigInt>>> = text
        .iter()
        .map(|r| r.iter().map(|s| parse_integer(s)).collect())
        .collect();
    Matrix::from_rows(rows, cols, entries?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::ratio;

    #[test]
    fn formats_and_parses() {
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&ratio(3, 1)), "3/1");
        assert_eq!(parse_rational("6/-4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("7"), Some(ratio(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_integer("4/2"), Some(BigInt::from(2)));
        assert_eq!(parse_integer("1/2"), None);
    }
}

/// `#[serde(with = "rational_text")]` for a single rational.
pub mod rational_text {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).ok_or_else(|| D::Error::custom(format!("not a rational: {text:?}")))
    }
}
