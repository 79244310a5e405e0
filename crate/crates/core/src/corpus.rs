//! Built-in probe corpora and JSON loading.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use thiserror::Error;

use crate::category::Category;
use crate::instances::fgab::{quotient, times};
use crate::instances::pairvect::monic_epic_witness;
use crate::instances::{AbGroup, Both, FgAb, Hom, LinearMap, PairMap, PairObj, PairVect};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::linalg::{ratio, Matrix};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record {index} is invalid: {reason}")]
    Invalid { index: usize, reason: String },
    #[error("corpus is empty")]
    Empty,
}

/// Parses a JSON list of morphisms and validates each against `cat`.
pub fn parse_corpus<C: Category>(cat: &C, text: &str) -> Result<Vec<C::Morphism>, CorpusError> {
    let items: Vec<C::Morphism> = serde_json::from_str(text)?;
    if items.is_empty() {
        return Err(CorpusError::Empty);
    }
    for (index, f) in items.iter().enumerate() {
        cat.validate_morphism(f).map_err(|e| CorpusError::Invalid { index, reason: e.to_string() })?;
    }
    Ok(items)
}

pub fn to_json<M: serde::Serialize>(corpus: &[M]) -> String {
    serde_json::to_string_pretty(corpus).expect("corpus serializes")
}

pub fn from_json<M: DeserializeOwned>(text: &str) -> Result<Vec<M>, CorpusError> {
    Ok(serde_json::from_str(text)?)
}

fn sign_matrices(rows: usize, cols: usize) -> Vec<RatMatrix> {
    let n = rows * cols;
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            let entries: Vec<i64> = (0..n)
                .map(|_| {
                    let e = (code % 3) as i64 - 1;
                    code /= 3;
                    e
                })
                .collect();
            Matrix::from_fn(rows, cols, |i, j| ratio(entries[i * cols + j], 1))
        })
        .collect()
}

/// Every map between spaces of dimension at most 2 with entries in `{-1, 0, 1}`.
pub fn vectq_exhaustive() -> Vec<LinearMap> {
    let mut out = Vec::new();
    for rows in 0..=2 {
        for cols in 0..=2 {
            out.extend(sign_matrices(rows, cols).into_iter().map(LinearMap::new));
        }
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    ratio(rng.gen_range(-2..=2), rng.gen_range(1..=3))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    Matrix::from_fn(rows, cols, |_, _| random_rational(rng))
}

/// A random `rows x cols` matrix of random rank, as a product through `ℚ^k`.
fn random_low_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    let k = rng.gen_range(0..=rows.min(cols));
    let a = random_matrix(rng, rows, k);
    let b = random_matrix(rng, k, cols);
    a.matmul(&b)
}

pub fn vectq_random(seed: u64, size: usize) -> Vec<LinearMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=3);
            LinearMap::new(random_low_rank(&mut rng, rows, cols))
        })
        .collect()
}

/// The exhaustive corpus followed by `size` random probes.
pub fn vectq_control(seed: u64, size: usize) -> Vec<LinearMap> {
    let mut out = vectq_exhaustive();
    out.extend(vectq_random(seed, size));
    out
}

fn small_pair_objects() -> Vec<PairObj> {
    let line = |a: i64, b: i64| PairObj::spanned(2, &Matrix::from_fn(1, 2, |_, j| ratio([a, b][j], 1)));
    vec![
        PairObj::zero_subspace(0),
        PairObj::zero_subspace(1),
        PairObj::full(1),
        PairObj::zero_subspace(2),
        line(1, 0),
        line(0, 1),
        line(1, 1),
        PairObj::full(2),
    ]
}

fn binary_matrices(rows: usize, cols: usize) -> Vec<RatMatrix> {
    let n = rows * cols;
    (0..1u32 << n)
        .map(|code| Matrix::from_fn(rows, cols, |i, j| ratio(i64::from((code >> (i * cols + j)) & 1), 1)))
        .collect()
}

/// All compatible `{0, 1}` maps between the pairs of dimension at most 2 whose
/// subspaces are coordinate or diagonal lines, with the monic-epic witness first.
pub fn pairvect_curated() -> Vec<PairMap> {
    let objects = small_pair_objects();
    let mut out = vec![monic_epic_witness()];
    for a in &objects {
        for b in &objects {
            for m in binary_matrices(b.dim, a.dim) {
                let f = PairMap::new(a.clone(), b.clone(), m);
                if PairVect.validate_morphism(&f).is_ok() {
                    out.push(f);
                }
            }
        }
    }
    out
}

fn random_pair_object(rng: &mut ChaCha8Rng, dim: usize) -> PairObj {
    let k = rng.gen_range(0..=dim);
    PairObj::spanned(dim, &random_matrix(rng, k, dim))
}

/// Random compatible maps: the target subspace is enlarged by the image of the
/// source subspace.
pub fn pairvect_random(seed: u64, size: usize) -> Vec<PairMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| random_pair_map(&mut rng)).collect()
}

fn random_pair_map(rng: &mut ChaCha8Rng) -> PairMap {
    let (n, m) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let source = random_pair_object(rng, n);
    let matrix = random_low_rank(rng, m, n);
    let k = rng.gen_range(0..=m);
    let extra = random_matrix(rng, k, m);
    let pushed = matrix.matmul(&source.basis_columns()).transpose();
    let target = PairObj::spanned(m, &extra.vstack(&pushed));
    PairMap::new(source, target, matrix)
}

pub fn product_random(seed: u64, size: usize) -> Vec<Both<LinearMap, PairMap>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let rows = rng.gen_range(1..=2);
            let cols = rng.gen_range(1..=2);
            let first = LinearMap::new(random_low_rank(&mut rng, rows, cols));
            Both::new(first, random_pair_map(&mut rng))
        })
        .collect()
}

fn small_groups() -> Vec<AbGroup> {
    [&[][..], &[0], &[2], &[3], &[4], &[6], &[2, 0], &[2, 2]]
        .iter()
        .map(|f| AbGroup::from_factors(f))
        .collect()
}

fn integer_matrices(rows: usize, cols: usize, values: &[i64]) -> Vec<IntMatrix> {
    let n = rows * cols;
    let base = values.len();
    (0..base.pow(n as u32))
        .map(|mut code| {
            let entries: Vec<i64> = (0..n)
                .map(|_| {
                    let v = values[code % base];
                    code /= base;
                    v
                })
                .collect();
            Matrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]))
        })
        .collect()
}

/// Homomorphisms between small groups with invariant factors at most 6, with
/// `×2: ℤ -> ℤ` and `ℤ -> ℤ/2` first. Duplicates after reduction are dropped.
pub fn fgab_curated() -> Vec<Hom> {
    let groups = small_groups();
    let mut out = vec![times(2), quotient(2)];
    let mut seen: Vec<String> = out.iter().map(|f| serde_json::to_string(f).expect("serializes")).collect();
    for a in &groups {
        for b in &groups {
            let values: &[i64] = if a.generators() * b.generators() <= 1 { &[0, 1, 2, 3] } else { &[0, 1] };
            for m in integer_matrices(b.generators(), a.generators(), values) {
                let f = Hom::new(a.clone(), b.clone(), m);
                if FgAb.validate_morphism(&f).is_err() {
                    continue;
                }
                let key = serde_json::to_string(&f).expect("serializes");
                if !seen.contains(&key) {
                    seen.push(key);
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Random homomorphisms between the small groups. Entries that make a map
/// invalid are zeroed column by column.
pub fn fgab_random(seed: u64, size: usize) -> Vec<Hom> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = small_groups();
    (0..size)
        .map(|_| {
            let a = groups[rng.gen_range(0..groups.len())].clone();
            let b = groups[rng.gen_range(0..groups.len())].clone();
            let (rows, cols) = (b.generators(), a.generators());
            let mut m = Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-3..=3)));
            for j in 0..cols {
                if FgAb.validate_morphism(&Hom::new(a.clone(), b.clone(), m.clone())).is_ok() {
                    break;
                }
                for i in 0..rows {
                    m.set(i, j, BigInt::from(0));
                }
            }
            Hom::new(a, b, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::VectQ;

    #[test]
    fn exhaustive_vectq_size() {
        // 1 + 1 + 1 + 1 + 3 + 9 + 1 + 9 + 81
        assert_eq!(vectq_exhaustive().len(), 107);
    }

    #[test]
    fn random_corpora_are_seeded() {
        let a = serde_json::to_string(&vectq_random(7, 20)).unwrap();
        let b = serde_json::to_string(&vectq_random(7, 20)).unwrap();
        let c = serde_json::to_string(&vectq_random(8, 20)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn generated_morphisms_are_valid() {
        for f in pairvect_random(3, 50).iter().chain(&pairvect_curated()) {
            PairVect.validate_morphism(f).unwrap();
        }
        for f in fgab_curated().iter().chain(&fgab_random(5, 100)) {
            FgAb.validate_morphism(f).unwrap();
        }
        for f in vectq_random(1, 50) {
            VectQ.validate_morphism(&f).unwrap();
        }
    }

    #[test]
    fn corpus_round_trip_and_rejection() {
        let corpus = pairvect_curated();
        let back = parse_corpus(&PairVect, &to_json(&corpus)).unwrap();
        assert_eq!(back.len(), corpus.len());
        let bad = r#"[{"source":{"dim":1,"subspace":[["1"]]},"target":{"dim":1,"subspace":[]},"matrix":[["1"]]}]"#;
        assert!(matches!(parse_corpus(&PairVect, bad), Err(CorpusError::Invalid { index: 0, .. })));
        assert!(matches!(parse_corpus(&PairVect, "[{"), Err(CorpusError::Json(_))));
        assert!(matches!(parse_corpus(&PairVect, "[]"), Err(CorpusError::Empty)));
    }
}
