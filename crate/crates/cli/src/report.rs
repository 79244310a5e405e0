//! The JSON documents the tool writes and reads back.

use num_rational::BigRational;
use preab_core::checker::{infer, Atom, Certificate, FactBase, InferenceError, Property, Support};
use preab_core::exact::AxiomVerdict;
use preab_core::linalg::text::rational_text;
use preab_core::checker::StructureKind;
use preab_core::seqspace::{ClosureCertificate, InvariantRow};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "preab/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Outcome {
    /// No counterexample among the probes. Not a proof.
    PassOnCorpus { probes: usize },
    /// Index into the report's certificate list.
    Certificate { certificate: usize },
    Error { message: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub property: Property,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObjectProbe<O> {
    pub object: O,
    pub projective: Outcome,
    pub quasi_projective: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub property: Property,
    pub holds: bool,
    #[serde(flatten)]
    pub support: Support,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub seed: Option<u64>,
    pub morphisms: usize,
    pub sha256: String,
}

impl Fingerprint {
    pub fn of<M: Serialize>(corpus: &[M], seed: Option<u64>) -> Self {
        let bytes = serde_json::to_vec(corpus).expect("corpus serializes");
        Fingerprint { seed, morphisms: corpus.len(), sha256: hex::encode(Sha256::digest(&bytes)) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Body<O, M> {
    Classify {
        verdicts: Vec<PropertyVerdict>,
        projectivity: Vec<ObjectProbe<O>>,
        /// Corpus morphisms that are monic and epic but not isomorphisms.
        balance_witnesses: Vec<M>,
    },
    AiCheck {
        structure: StructureKind,
        axioms: AxiomVerdict<M>,
        verdict: Outcome,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport<O, M> {
    pub schema: String,
    pub version: String,
    pub instance: String,
    pub fingerprint: Fingerprint,
    #[serde(flatten)]
    pub body: Body<O, M>,
    pub certificates: Vec<Certificate<M>>,
    pub facts: Vec<Fact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inference_error: Option<String>,
}

impl<O, M> RunReport<O, M> {
    /// Atoms the report's own verdicts establish directly.
    pub fn base_facts(&self) -> FactBase {
        let mut base = FactBase::new();
        let mut add = |property: Property, outcome: &Outcome| match outcome {
            Outcome::PassOnCorpus { .. } => {
                base.insert(Atom::yes(property), Support::ProbePass);
            }
            Outcome::Certificate { .. } => {
                base.insert(Atom::no(property), Support::Certificate);
            }
            Outcome::Error { .. } => {}
        };
        match &self.body {
            Body::Classify { verdicts, .. } => {
                for v in verdicts {
                    add(v.property, &v.outcome);
                }
            }
            Body::AiCheck { structure: StructureKind::AllPairs, verdict, .. } => {
                add(Property::AdmissibleIntersections, verdict)
            }
            Body::AiCheck { .. } => {}
        }
        base
    }
}

pub fn derive_facts(base: &FactBase) -> Result<Vec<Fact>, InferenceError> {
    Ok(infer(base)?
        .iter()
        .map(|(a, s)| Fact { property: a.property, holds: a.holds, support: s.clone() })
        .collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeqReport {
    pub schema: String,
    pub version: String,
    pub command: String,
    #[serde(with = "rational_text")]
    pub epsilon: BigRational,
    pub m_max: u32,
    pub banach: ClosureCertificate,
    pub nuclear: ClosureCertificate,
    pub invariants: Vec<InvariantRow>,
}

pub const INVARIANT_GRID: [u64; 8] = [1, 2, 3, 10, 100, 1000, 5000, 10000];
