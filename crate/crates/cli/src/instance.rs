//! Instance names and the per-instance default corpora.

use preab_core::category::Category;
use preab_core::corpus::{
    fgab_curated, fgab_random, pairvect_curated, pairvect_random, vectq_control, vectq_exhaustive, vectq_random,
};
use preab_core::fixtures::Mock;
use preab_core::instances::{Both, FgAb, PairVect, Product, VectQ};
use preab_core::oracle::Oracle;

use crate::error::CliError;

pub const BASE_NAMES: [&str; 7] =
    ["vectq", "fgab", "pairvect", "mock-closure", "mock-lazy", "mock-closure-dual", "mock-lazy-dual"];

/// Everything the commands need from an instance.
pub trait Instance: Category + Oracle<Arrow = <Self as Category>::Morphism> + Clone + 'static {
    fn default_corpus(&self, seed: u64) -> Vec<Self::Morphism>;
    fn random_corpus(&self, seed: u64, size: usize) -> Vec<Self::Morphism>;
}

impl Instance for VectQ {
    fn default_corpus(&self, seed: u64) -> Vec<Self::Morphism> {
        vectq_control(seed, 500)
    }

    fn random_corpus(&self, seed: u64, size: usize) -> Vec<Self::Morphism> {
        vectq_random(seed, size)
    }
}

impl Instance for FgAb {
    fn default_corpus(&self, seed: u64) -> Vec<Self::Morphism> {
        let mut out = fgab_curated();
        out.extend(fgab_random(seed, 100));
        out
    }

    fn random_corpus(&self, seed: u64, size: usize) -> Vec<Self::Morphism> {
        fgab_random(seed, size)
    }
}

impl Instance for PairVect {
    fn default_corpus(&self, seed: u64) -> Vec<Self::Morphism> {
        let mut out = pairvect_curated();
        out.extend(pairvect_random(seed, 200));
        out
    }

    fn random_corpus(&self, seed: u64, size: usize) -> Vec<Self::Morphism> {
        pairvect_random(seed, size)
    }
}

impl Instance for Mock {
    fn default_corpus(&self, _seed: u64) -> Vec<Self::Morphism> {
        vectq_exhaustive()
    }

    fn random_corpus(&self, seed: u64, size: usize) -> Vec<Self::Morphism> {
        vectq_random(seed, size)
    }
}

/// Pairs the two lists cyclically, so each component list appears in full.
fn zip_cyclic<X: Clone, Y: Clone>(xs: Vec<X>, ys: Vec<Y>) -> Vec<Both<X, Y>> {
    if xs.is_empty() || ys.is_empty() {
        return Vec::new();
    }
    let n = xs.len().max(ys.len());
    (0..n).map(|i| Both::new(xs[i % xs.len()].clone(), ys[i % ys.len()].clone())).collect()
}

impl<A: Instance, B: Instance> Instance for Product<A, B> {
    fn default_corpus(&self, seed: u64) -> Vec<Self::Morphism> {
        zip_cyclic(self.0.default_corpus(seed), self.1.default_corpus(seed))
    }

    fn random_corpus(&self, seed: u64, size: usize) -> Vec<Self::Morphism> {
        zip_cyclic(self.0.random_corpus(seed, size), self.1.random_corpus(seed.wrapping_add(1), size))
    }
}

/// A computation that can run against any instance.
pub trait Job {
    type Output;
    fn run<C: Instance>(self, cat: &C) -> Self::Output;
}

fn mock(name: &str) -> Option<Mock> {
    match name {
        "mock-closure" => Some(Mock::CLOSURE),
        "mock-lazy" => Some(Mock::LAZY),
        "mock-closure-dual" => Some(Mock::CLOSURE.dualized()),
        "mock-lazy-dual" => Some(Mock::LAZY.dualized()),
        _ => None,
    }
}

/// Product factors are limited to the three genuine instances.
fn with_factor<J: Job>(name: &str, job: J) -> Result<J::Output, CliError> {
    match name {
        "vectq" => Ok(job.run(&VectQ)),
        "fgab" => Ok(job.run(&FgAb)),
        "pairvect" => Ok(job.run(&PairVect)),
        _ => Err(CliError::UnknownInstance(name.to_string())),
    }
}

struct Second<A, J> {
    first: A,
    job: J,
}

impl<A: Instance, J: Job> Job for Second<A, J> {
    type Output = J::Output;
    fn run<B: Instance>(self, second: &B) -> J::Output {
        self.job.run(&Product(self.first, second.clone()))
    }
}

struct First<'a, J> {
    second: &'a str,
    job: J,
}

impl<J: Job> Job for First<'_, J> {
    type Output = Result<J::Output, CliError>;
    fn run<A: Instance>(self, first: &A) -> Self::Output {
        with_factor(self.second, Second { first: first.clone(), job: self.job })
    }
}

pub fn with_instance<J: Job>(name: &str, job: J) -> Result<J::Output, CliError> {
    if let Some(rest) = name.strip_prefix("product:") {
        let (a, b) = rest.split_once(':').ok_or_else(|| CliError::UnknownInstance(name.to_string()))?;
        return with_factor(a, First { second: b, job }).and_then(|r| r).map_err(|e| match e {
            CliError::UnknownInstance(_) => CliError::UnknownInstance(name.to_string()),
            e => e,
        });
    }
    if let Some(m) = mock(name) {
        return Ok(job.run(&m));
    }
    with_factor(name, job)
}
