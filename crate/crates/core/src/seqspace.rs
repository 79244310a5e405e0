//! Finitely supported rational sequences with their seminorms. Closure
//! witnesses show `(0, 1)` is a limit of points `(x, -Σx)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::text::rational_text;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("sequence indices start at 1")]
    NonPositiveIndex,
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(String),
    #[error("seminorm order must be at least 1")]
    ZeroOrder,
    #[error("witness index {0} does not fit in 64 bits")]
    TooLarge(String),
    #[error("runs overlap or are out of order")]
    BadRuns,
}

/// `len` consecutive entries equal to `value`, starting at index `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub start: u64,
    pub len: u64,
    #[serde(with = "rational_text")]
    pub value: BigRational,
}

impl Run {
    fn end(&self) -> u64 {
        self.start + self.len
    }
}

/// A finitely supported sequence `(x_1, x_2, ...)`, stored as maximal runs of
/// equal nonzero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Run>", into = "Vec<Run>")]
pub struct FiniteSeq {
    runs: Vec<Run>,
}

impl TryFrom<Vec<Run>> for FiniteSeq {
    type Error = SeqError;

    fn try_from(runs: Vec<Run>) -> Result<Self, SeqError> {
        let mut last = 1;
        for r in &runs {
            if r.start < last {
                return Err(if r.start == 0 { SeqError::NonPositiveIndex } else { SeqError::BadRuns });
            }
            last = r.end();
        }
        Ok(FiniteSeq::from_runs(runs))
    }
}

impl From<FiniteSeq> for Vec<Run> {
    fn from(x: FiniteSeq) -> Self {
        x.runs
    }
}

fn power_sum(from: u64, to: u64, m: u32) -> BigInt {
    (from..to).map(|j| BigInt::from(j).pow(m)).sum()
}

impl FiniteSeq {
    pub fn zero() -> Self {
        FiniteSeq::default()
    }

    /// Drops zero and empty runs and merges neighbours. Runs must be ordered
    /// and disjoint.
    fn from_runs(runs: Vec<Run>) -> Self {
        let mut out: Vec<Run> = Vec::new();
        for r in runs.into_iter().filter(|r| r.len > 0 && !r.value.is_zero()) {
            match out.last_mut() {
                Some(prev) if prev.end() == r.start && prev.value == r.value => prev.len += r.len,
                _ => out.push(r),
            }
        }
        FiniteSeq { runs: out }
    }

    /// From `(index, value)` pairs; later pairs overwrite earlier ones.
    pub fn from_entries(entries: impl IntoIterator<Item = (u64, BigRational)>) -> Result<Self, SeqError> {
        let mut map = std::collections::BTreeMap::new();
        for (j, v) in entries {
            if j == 0 {
                return Err(SeqError::NonPositiveIndex);
            }
            map.insert(j, v);
        }
        Ok(FiniteSeq::from_runs(map.into_iter().map(|(start, value)| Run { start, len: 1, value }).collect()))
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn get(&self, j: u64) -> BigRational {
        self.runs
            .iter()
            .find(|r| r.start <= j && j < r.end())
            .map_or_else(BigRational::zero, |r| r.value.clone())
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> u64 {
        self.runs.iter().map(|r| r.len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn sub(&self, other: &FiniteSeq) -> FiniteSeq {
        let mut cuts: Vec<u64> = self.runs.iter().chain(&other.runs).flat_map(|r| [r.start, r.end()]).collect();
        cuts.sort_unstable();
        cuts.dedup();
        let runs = cuts
            .windows(2)
            .map(|w| Run { start: w[0], len: w[1] - w[0], value: self.get(w[0]) - other.get(w[0]) })
            .collect();
        FiniteSeq::from_runs(runs)
    }

    pub fn sup_norm(&self) -> BigRational {
        self.runs.iter().map(|r| r.value.abs()).max().unwrap_or_else(BigRational::zero)
    }

    pub fn one_norm(&self) -> BigRational {
        self.runs.iter().map(|r| r.value.abs() * BigInt::from(r.len)).sum()
    }

    pub fn sum_functional(&self) -> BigRational {
        self.runs.iter().map(|r| &r.value * BigInt::from(r.len)).sum()
    }

    /// `Σ_j j^m |x_j|`.
    pub fn s_seminorm(&self, m: u32) -> Result<BigRational, SeqError> {
        if m == 0 {
            return Err(SeqError::ZeroOrder);
        }
        Ok(self.runs.iter().map(|r| r.value.abs() * power_sum(r.start, r.end(), m)).sum())
    }

    /// `max_{j ≤ m} |x_j|`.
    pub fn product_seminorm(&self, m: u32) -> Result<BigRational, SeqError> {
        if m == 0 {
            return Err(SeqError::ZeroOrder);
        }
        let m = u64::from(m);
        Ok(self
            .runs
            .iter()
            .filter(|r| r.start <= m)
            .map(|r| r.value.abs())
            .max()
            .unwrap_or_else(BigRational::zero))
    }
}

/// `x^n`: the entries `1..=n` equal `-1/n`, the rest vanish.
pub fn make_xn(n: u64) -> Result<FiniteSeq, SeqError> {
    if n == 0 {
        return Err(SeqError::NonPositiveIndex);
    }
    let value = -BigRational::new(BigInt::one(), BigInt::from(n));
    Ok(FiniteSeq { runs: vec![Run { start: 1, len: n, value }] })
}

/// Distance from `(t, s)` to `(x, -Σx)` in the max norm on the biproduct.
fn biproduct_distance(x: &FiniteSeq, target: &FiniteSeq, scalar: &BigRational) -> (BigRational, BigRational) {
    let seq = x.sub(target).sup_norm();
    let gap = (scalar + x.sum_functional()).abs();
    (seq, gap)
}

fn witness_index(eps: &BigRational) -> Result<u64, SeqError> {
    if !eps.is_positive() {
        return Err(SeqError::NonPositiveEpsilon(crate::linalg::text::format_rational(eps)));
    }
    let r = eps.recip();
    let n = r.numer().div_ceil(r.denom()).max(BigInt::one());
    n.to_u64().ok_or_else(|| SeqError::TooLarge(n.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumBound {
    pub m: u32,
    #[serde(with = "rational_text")]
    pub sum_abs: BigRational,
    #[serde(with = "rational_text")]
    pub s_seminorm: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Sup norm on the sequence, absolute value on the scalar.
    Banach {
        #[serde(with = "rational_text")]
        sup_norm: BigRational,
    },
    /// Product seminorms `|.|_m` for `m ≤ m_max`, with the bounds
    /// `|Σx| ≤ ‖x‖_m` recorded on the witness.
    Nuclear {
        m_max: u32,
        #[serde(with = "rational_vec")]
        product_seminorms: Vec<BigRational>,
        sum_bounds: Vec<SumBound>,
    },
}

mod rational_vec {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::text::{format_rational, parse_rational};

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).ok_or_else(|| D::Error::custom(format!("not a rational: {t:?}"))))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub target_sequence: FiniteSeq,
    #[serde(with = "rational_text")]
    pub target_scalar: BigRational,
    #[serde(with = "rational_text")]
    pub epsilon: BigRational,
    pub n: u64,
    #[serde(with = "rational_text")]
    pub distance: BigRational,
    #[serde(with = "rational_text")]
    pub scalar_gap: BigRational,
    pub family: Family,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("recomputed {field} is {got}, certificate says {stored}")]
    Mismatch { field: &'static str, got: String, stored: String },
    #[error("distance {0} exceeds epsilon")]
    TooFar(String),
}

fn banach_family(xn: &FiniteSeq, target: &FiniteSeq, scalar: &BigRational) -> (Family, BigRational, BigRational) {
    let (seq, gap) = biproduct_distance(xn, target, scalar);
    let distance = seq.clone().max(gap.clone());
    (Family::Banach { sup_norm: seq }, distance, gap)
}

fn nuclear_family(xn: &FiniteSeq, target: &FiniteSeq, scalar: &BigRational, m_max: u32) -> Result<(Family, BigRational, BigRational), SeqError> {
    let diff = xn.sub(target);
    let product_seminorms = (1..=m_max).map(|m| diff.product_seminorm(m)).collect::<Result<Vec<_>, _>>()?;
    let sum_abs = xn.sum_functional().abs();
    let sum_bounds = (1..=m_max)
        .map(|m| Ok(SumBound { m, sum_abs: sum_abs.clone(), s_seminorm: xn.s_seminorm(m)? }))
        .collect::<Result<Vec<_>, SeqError>>()?;
    let gap = (scalar + xn.sum_functional()).abs();
    let distance = product_seminorms.iter().cloned().chain([gap.clone()]).max().unwrap_or_else(BigRational::zero);
    Ok((Family::Nuclear { m_max, product_seminorms, sum_bounds }, distance, gap))
}

fn target() -> (FiniteSeq, BigRational) {
    (FiniteSeq::zero(), BigRational::one())
}

/// The least `n` with `‖(x^n, 1) - (0, 1)‖ ≤ eps` in `c_0 ⊕ k`.
pub fn banach_closure_witness(eps: &BigRational) -> Result<ClosureCertificate, SeqError> {
    let n = witness_index(eps)?;
    let xn = make_xn(n)?;
    let (t, s) = target();
    let (family, distance, scalar_gap) = banach_family(&xn, &t, &s);
    Ok(ClosureCertificate { target_sequence: t, target_scalar: s, epsilon: eps.clone(), n, distance, scalar_gap, family })
}

/// The least `n` with every product seminorm `|x^n|_m`, `m ≤ m_max`, at most `eps`.
pub fn nuclear_closure_witness(eps: &BigRational, m_max: u32) -> Result<ClosureCertificate, SeqError> {
    if m_max == 0 {
        return Err(SeqError::ZeroOrder);
    }
    let n = witness_index(eps)?;
    let xn = make_xn(n)?;
    let (t, s) = target();
    let (family, distance, scalar_gap) = nuclear_family(&xn, &t, &s, m_max)?;
    Ok(ClosureCertificate { target_sequence: t, target_scalar: s, epsilon: eps.clone(), n, distance, scalar_gap, family })
}

fn same<T: PartialEq + std::fmt::Debug>(field: &'static str, got: &T, stored: &T) -> Result<(), CertificateError> {
    if got == stored {
        Ok(())
    } else {
        Err(CertificateError::Mismatch { field, got: format!("{got:?}"), stored: format!("{stored:?}") })
    }
}

impl ClosureCertificate {
    /// Recomputes everything from the stored `n`.
    pub fn verify(&self) -> Result<(), CertificateError> {
        let xn = make_xn(self.n)?;
        let (family, distance, gap) = match &self.family {
            Family::Banach { .. } => banach_family(&xn, &self.target_sequence, &self.target_scalar),
            Family::Nuclear { m_max, .. } => nuclear_family(&xn, &self.target_sequence, &self.target_scalar, *m_max)?,
        };
        same("family", &family, &self.family)?;
        same("distance", &distance, &self.distance)?;
        same("scalar_gap", &gap, &self.scalar_gap)?;
        if let Family::Nuclear { sum_bounds, .. } = &family {
            if let Some(b) = sum_bounds.iter().find(|b| b.sum_abs > b.s_seminorm) {
                return Err(CertificateError::Mismatch { field: "sum_bounds", got: b.sum_abs.to_string(), stored: b.s_seminorm.to_string() });
            }
        }
        if distance > self.epsilon {
            return Err(CertificateError::TooFar(distance.to_string()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub n: u64,
    #[serde(with = "rational_text")]
    pub sup_norm: BigRational,
    #[serde(with = "rational_text")]
    pub one_norm: BigRational,
    #[serde(with = "rational_text")]
    pub sum: BigRational,
    /// `|1 - (-Σx^n)|`.
    #[serde(with = "rational_text")]
    pub gap: BigRational,
}

pub fn invariant_row(n: u64) -> Result<InvariantRow, SeqError> {
    let x = make_xn(n)?;
    let sum = x.sum_functional();
    let gap = (BigRational::one() + &sum).abs();
    Ok(InvariantRow { n, sup_norm: x.sup_norm(), one_norm: x.one_norm(), sum, gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn first_witness_sequences() {
        let x1 = make_xn(1).unwrap();
        assert_eq!(x1.get(1), ratio(-1, 1));
        assert_eq!(x1.get(2), ratio(0, 1));
        let x3 = make_xn(3).unwrap();
        assert_eq!((1..=4).map(|j| x3.get(j)).collect::<Vec<_>>(), vec![ratio(-1, 3), ratio(-1, 3), ratio(-1, 3), ratio(0, 1)]);
        assert_eq!(make_xn(17).unwrap().support_size(), 17);
        assert_eq!(make_xn(0), Err(SeqError::NonPositiveIndex));
    }

    #[test]
    fn norms_of_x4() {
        let x = make_xn(4).unwrap();
        assert_eq!(x.sup_norm(), ratio(1, 4));
        assert_eq!(x.one_norm(), ratio(1, 1));
        assert_eq!(x.sum_functional(), ratio(-1, 1));
        assert_eq!(x.s_seminorm(1).unwrap(), ratio(5, 2));
        assert_eq!(x.product_seminorm(3).unwrap(), ratio(1, 4));
        assert_eq!(FiniteSeq::zero().product_seminorm(5).unwrap(), ratio(0, 1));
    }

    #[test]
    fn banach_witnesses() {
        let c = banach_closure_witness(&ratio(1, 100)).unwrap();
        assert_eq!((c.n, c.distance.clone()), (100, ratio(1, 100)));
        assert!(c.scalar_gap.is_zero());
        c.verify().unwrap();
        let c = banach_closure_witness(&ratio(2, 1)).unwrap();
        assert_eq!((c.n, c.distance), (1, ratio(1, 1)));
        assert!(banach_closure_witness(&ratio(0, 1)).is_err());
        assert!(banach_closure_witness(&ratio(-1, 3)).is_err());
    }

    #[test]
    fn nuclear_witnesses() {
        let c = nuclear_closure_witness(&ratio(1, 10), 5).unwrap();
        assert_eq!(c.n, 10);
        match &c.family {
            Family::Nuclear { product_seminorms, .. } => assert!(product_seminorms.iter().all(|p| *p == ratio(1, 10))),
            other => panic!("{other:?}"),
        }
        c.verify().unwrap();
        assert_eq!(nuclear_closure_witness(&ratio(1, 1), 1).unwrap().n, 1);
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = banach_closure_witness(&ratio(1, 7)).unwrap();
        c.n = 6;
        assert!(c.verify().is_err());
    }

    #[test]
    fn runs_merge_and_subtract() {
        let x = FiniteSeq::from_entries([(1, ratio(2, 1)), (2, ratio(2, 1)), (4, ratio(1, 1))]).unwrap();
        assert_eq!(x.runs().len(), 2);
        let y = x.sub(&x);
        assert!(y.is_zero());
        let z = x.sub(&make_xn(2).unwrap());
        assert_eq!(z.get(1), ratio(5, 2));
        assert_eq!(z.get(4), ratio(1, 1));
    }

    #[test]
    fn serde_round_trip() {
        let c = nuclear_closure_witness(&ratio(1, 3), 2).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: ClosureCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let bad: Result<FiniteSeq, _> = serde_json::from_str(r#"[{"start":0,"len":1,"value":"1/1"}]"#);
        assert!(bad.is_err());
    }
}
