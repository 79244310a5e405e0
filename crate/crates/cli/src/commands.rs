use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use preab_core::category::{Category, Engine};
use preab_core::checker::{
    check_property, is_projective_probe, is_quasi_projective_probe, verify, Certificate, CheckError, PairPolicy,
    Property, Verdict,
};
use preab_core::corpus::{parse_corpus, to_json};
use preab_core::exact::{check_admissible_intersections, check_exact_axioms, AiVerdict, ExactStructure};
use preab_core::seqspace::{banach_closure_witness, invariant_row, nuclear_closure_witness, SeqError};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::instance::{Instance, Job};
use crate::report::{
    derive_facts, Body, Fingerprint, ObjectProbe, Outcome, PropertyVerdict, RunReport, SeqReport, INVARIANT_GRID,
    SCHEMA, VERSION,
};

const PROBED_OBJECTS: usize = 6;
const BALANCE_WITNESSES: usize = 3;

/// Where the corpus comes from.
pub enum Source {
    File(String),
    Default(u64),
}

fn load<C: Instance>(cat: &C, source: &Source) -> Result<(Vec<C::Morphism>, Fingerprint), CliError> {
    match source {
        Source::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Read { path: path.clone(), source: e })?;
            let corpus = parse_corpus(cat, &text)?;
            let fp = Fingerprint::of(&corpus, None);
            Ok((corpus, fp))
        }
        Source::Default(seed) => {
            let corpus = cat.default_corpus(*seed);
            let fp = Fingerprint::of(&corpus, Some(*seed));
            Ok((corpus, fp))
        }
    }
}

fn record<M>(verdict: Result<Verdict<M>, CheckError>, certificates: &mut Vec<Certificate<M>>) -> Outcome {
    match verdict {
        Ok(Verdict::PassOnCorpus { probes }) => Outcome::PassOnCorpus { probes },
        Ok(Verdict::Certificate { certificate }) => {
            certificates.push(Certificate::Property(certificate));
            Outcome::Certificate { certificate: certificates.len() - 1 }
        }
        Err(e) => Outcome::Error { message: e.to_string() },
    }
}

fn finish<O, M>(mut report: RunReport<O, M>) -> RunReport<O, M> {
    match derive_facts(&report.base_facts()) {
        Ok(facts) => report.facts = facts,
        Err(e) => report.inference_error = Some(e.to_string()),
    }
    report
}

fn distinct_objects<C: Category>(cat: &C, corpus: &[C::Morphism], limit: usize) -> Vec<C::Object> {
    let mut out: Vec<C::Object> = Vec::new();
    for f in corpus {
        for o in [cat.source(f), cat.target(f)] {
            if out.len() < limit && !out.contains(&o) {
                out.push(o);
            }
        }
    }
    out
}

pub struct Classify {
    pub source: Source,
    pub policy: PairPolicy,
}

impl Job for Classify {
    type Output = Result<Value, CliError>;

    fn run<C: Instance>(self, cat: &C) -> Self::Output {
        let (corpus, fingerprint) = load(cat, &self.source)?;
        let mut certificates = Vec::new();
        let verdicts = Property::STABILITY
            .into_iter()
            .map(|p| PropertyVerdict {
                property: p,
                outcome: record(check_property(cat, p, &corpus, &self.policy), &mut certificates),
            })
            .collect();
        let projectivity = distinct_objects(cat, &corpus, PROBED_OBJECTS)
            .into_iter()
            .map(|o| {
                let projective = record(is_projective_probe(cat, &o, &corpus), &mut certificates);
                let quasi_projective = record(is_quasi_projective_probe(cat, &o, &corpus), &mut certificates);
                ObjectProbe { object: o, projective, quasi_projective }
            })
            .collect();
        let balance_witnesses = corpus
            .iter()
            .filter(|f| cat.is_mono(f) && cat.is_epi(f) && !cat.is_isomorphism(f))
            .take(BALANCE_WITNESSES)
            .cloned()
            .collect();
        let report = RunReport {
            schema: SCHEMA.into(),
            version: VERSION.into(),
            instance: cat.instance_id(),
            fingerprint,
            body: Body::Classify { verdicts, projectivity, balance_witnesses },
            certificates,
            facts: Vec::new(),
            inference_error: None,
        };
        to_value(&finish(report))
    }
}

pub struct AiCheck {
    pub source: Source,
    pub split: bool,
    pub policy: PairPolicy,
}

impl Job for AiCheck {
    type Output = Result<Value, CliError>;

    fn run<C: Instance>(self, cat: &C) -> Self::Output {
        let (corpus, fingerprint) = load(cat, &self.source)?;
        let structure = if self.split { ExactStructure::Split } else { ExactStructure::AllPairs };
        let axioms = check_exact_axioms(cat, &structure, &corpus, &self.policy)?;
        let mut certificates = Vec::new();
        let verdict = match check_admissible_intersections(cat, &structure, &corpus, &self.policy) {
            Ok(AiVerdict::PassOnCorpus { probes }) => Outcome::PassOnCorpus { probes },
            Ok(AiVerdict::Certificate { certificate }) => {
                certificates.push(Certificate::AdmissibleIntersections(certificate));
                Outcome::Certificate { certificate: 0 }
            }
            Err(e) => Outcome::Error { message: e.to_string() },
        };
        let report: RunReport<C::Object, C::Morphism> = RunReport {
            schema: SCHEMA.into(),
            version: VERSION.into(),
            instance: cat.instance_id(),
            fingerprint,
            body: Body::AiCheck { structure: structure.kind(), axioms, verdict },
            certificates,
            facts: Vec::new(),
            inference_error: None,
        };
        to_value(&finish(report))
    }
}

pub struct CorpusGen {
    pub seed: u64,
    pub size: usize,
}

impl Job for CorpusGen {
    type Output = String;

    fn run<C: Instance>(self, cat: &C) -> String {
        to_json(&cat.random_corpus(self.seed, self.size))
    }
}

/// Re-checks every certificate in a run report through the instance's oracle.
/// The listed facts must also match a fresh inference run.
pub struct VerifyReport {
    pub document: Value,
}

impl Job for VerifyReport {
    type Output = Result<usize, CliError>;

    fn run<C: Instance>(self, cat: &C) -> Self::Output {
        let report: RunReport<C::Object, C::Morphism> =
            serde_json::from_value(self.document).map_err(|e| CliError::Input(e.to_string()))?;
        if report.schema != SCHEMA {
            return Err(CliError::Input(format!("unsupported schema '{}'", report.schema)));
        }
        for (i, cert) in report.certificates.iter().enumerate() {
            verify(cat, cert).map_err(|e| CliError::Verification(format!("certificate {i}: {e}")))?;
        }
        let mut outcomes: Vec<(Option<Property>, &Outcome)> = Vec::new();
        match &report.body {
            Body::Classify { verdicts, projectivity, balance_witnesses } => {
                outcomes.extend(verdicts.iter().map(|v| (Some(v.property), &v.outcome)));
                for p in projectivity {
                    outcomes.push((Some(Property::Projective), &p.projective));
                    outcomes.push((Some(Property::QuasiProjective), &p.quasi_projective));
                }
                for (i, f) in balance_witnesses.iter().enumerate() {
                    if !(cat.re_is_mono(f) && cat.re_is_epi(f) && !cat.re_is_iso(f)) {
                        return Err(CliError::Verification(format!("balance witness {i} is not monic, epic and non-invertible")));
                    }
                }
            }
            Body::AiCheck { verdict, .. } => outcomes.push((None, verdict)),
        }
        let mut cited = BTreeMap::new();
        for (property, outcome) in outcomes {
            if let Outcome::Certificate { certificate } = outcome {
                let cert = report
                    .certificates
                    .get(*certificate)
                    .ok_or_else(|| CliError::Verification(format!("verdict cites missing certificate {certificate}")))?;
                let matches = match (cert, property) {
                    (Certificate::Property(c), Some(p)) => c.property == p,
                    (Certificate::AdmissibleIntersections(_), None) => true,
                    _ => false,
                };
                if !matches {
                    return Err(CliError::Verification(format!("certificate {certificate} does not fit its verdict")));
                }
                cited.insert(*certificate, ());
            }
        }
        if cited.len() != report.certificates.len() {
            return Err(CliError::Verification("report carries uncited certificates".into()));
        }
        if report.inference_error.is_none() {
            let facts = derive_facts(&report.base_facts()).map_err(|e| CliError::Verification(e.to_string()))?;
            if facts != report.facts {
                return Err(CliError::Verification("facts do not match a fresh inference run".into()));
            }
        }
        Ok(report.certificates.len())
    }
}

fn to_value<T: Serialize>(t: &T) -> Result<Value, CliError> {
    serde_json::to_value(t).map_err(|e| CliError::Input(e.to_string()))
}

pub fn parse_epsilon(text: &str) -> Result<BigRational, CliError> {
    let eps: BigRational = text.trim().parse().map_err(|_| CliError::BadArgument(format!("'{text}' is not a rational")))?;
    if eps <= BigRational::zero() {
        return Err(CliError::BadArgument(format!("epsilon must be positive, got {text}")));
    }
    Ok(eps)
}

fn seq_error(e: SeqError) -> CliError {
    CliError::BadArgument(e.to_string())
}

pub fn seq_verify(eps: &BigRational, m_max: u32) -> Result<Value, CliError> {
    let report = SeqReport {
        schema: SCHEMA.into(),
        version: VERSION.into(),
        command: "seq-verify".into(),
        epsilon: eps.clone(),
        m_max,
        banach: banach_closure_witness(eps).map_err(seq_error)?,
        nuclear: nuclear_closure_witness(eps, m_max).map_err(seq_error)?,
        invariants: INVARIANT_GRID.iter().map(|&n| invariant_row(n)).collect::<Result<_, _>>().map_err(seq_error)?,
    };
    to_value(&report)
}

/// Every certificate recomputed from scratch, and the table rows too.
pub fn verify_seq(document: Value) -> Result<usize, CliError> {
    let report: SeqReport = serde_json::from_value(document).map_err(|e| CliError::Input(e.to_string()))?;
    for (name, cert) in [("banach", &report.banach), ("nuclear", &report.nuclear)] {
        cert.verify().map_err(|e| CliError::Verification(format!("{name} certificate: {e}")))?;
        if cert.epsilon != report.epsilon {
            return Err(CliError::Verification(format!("{name} certificate has a different epsilon")));
        }
    }
    for row in &report.invariants {
        if invariant_row(row.n).ok().as_ref() != Some(row) {
            return Err(CliError::Verification(format!("invariant row for n = {} is wrong", row.n)));
        }
    }
    Ok(2)
}
