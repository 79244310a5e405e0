//! Counterexample certificates and their re-verification.
//!
//! A certificate names the morphisms of a witness and lists the predicates that
//! make it a counterexample, each with its expected truth value. Verification
//! rebuilds the expected transcript from the claimed property alone, rejects any
//! certificate whose transcript differs, then re-evaluates every step through an
//! [`Oracle`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::Oracle;

use super::Property;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    /// Two composite chains agree; chains compose right to left.
    Equal { left: Vec<String>, right: Vec<String> },
    Mono { arrow: String },
    Epi { arrow: String },
    Iso { arrow: String },
    Kernel { arrow: String },
    Cokernel { arrow: String },
    KernelOf { kernel: String, of: String },
    CokernelOf { cokernel: String, of: String },
    Pullback { f: String, g: String, f_prime: String, g_prime: String },
    Pushout { f: String, g: String, f_prime: String, g_prime: String },
    Lifts { h: String, through: String },
    Retraction { arrow: String },
    /// First leg of a conflation in the certificate's exact structure.
    Admissible { arrow: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub check: Check,
    pub expect: bool,
}

fn s(name: &str) -> String {
    name.to_string()
}

fn step(check: Check, expect: bool) -> Step {
    Step { check, expect }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyCertificate<M> {
    pub property: Property,
    pub instance: String,
    pub morphisms: BTreeMap<String, M>,
    pub transcript: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    AllPairs,
    Split,
    Custom,
}

/// A pullback of two admissible monomorphisms `c`, `d` with a leg (`a` or `b`)
/// that is not admissible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AiCertificate<M> {
    pub instance: String,
    pub structure: StructureKind,
    pub failing_leg: String,
    pub section_trick: bool,
    pub morphisms: BTreeMap<String, M>,
    pub transcript: Vec<Step>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate<M> {
    Property(PropertyCertificate<M>),
    AdmissibleIntersections(AiCertificate<M>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("no certificate template for property {0:?}")]
    NotCertifiable(Property),
    #[error("transcript does not match the template for the claimed failure")]
    TranscriptMismatch,
    #[error("morphism {0:?} is missing from the certificate")]
    MissingMorphism(String),
    #[error("morphism {0:?} fails its validity rule")]
    InvalidMorphism(String),
    #[error("step {index} ({check:?}) evaluated to {got}, expected {expected}")]
    StepFailed { index: usize, check: Check, got: bool, expected: bool },
    #[error("custom exact structures cannot be re-verified independently")]
    CustomStructure,
}

/// The transcript a failure of `property` must carry.
pub fn property_template(property: Property) -> Option<Vec<Step>> {
    use Check::*;
    let square = |kind: fn(String, String, String, String) -> Check| kind(s("f"), s("g"), s("f_prime"), s("g_prime"));
    let pullback = |f, g, f_prime, g_prime| Pullback { f, g, f_prime, g_prime };
    let pushout = |f, g, f_prime, g_prime| Pushout { f, g, f_prime, g_prime };
    let factorization = || {
        vec![
            step(KernelOf { kernel: s("kernel"), of: s("f") }, true),
            step(CokernelOf { cokernel: s("coimage"), of: s("kernel") }, true),
            step(CokernelOf { cokernel: s("cokernel"), of: s("f") }, true),
            step(KernelOf { kernel: s("image"), of: s("cokernel") }, true),
            step(Equal { left: vec![s("image"), s("parallel"), s("coimage")], right: vec![s("f")] }, true),
        ]
    };
    let t = match property {
        Property::LeftSemiAbelian => {
            let mut t = factorization();
            t.push(step(Mono { arrow: s("parallel") }, false));
            t
        }
        Property::RightSemiAbelian => {
            let mut t = factorization();
            t.push(step(Epi { arrow: s("parallel") }, false));
            t
        }
        Property::LeftQuasiAbelian => vec![
            step(Cokernel { arrow: s("f") }, true),
            step(square(pullback), true),
            step(Cokernel { arrow: s("f_prime") }, false),
        ],
        Property::RightQuasiAbelian => vec![
            step(Kernel { arrow: s("f") }, true),
            step(square(pushout), true),
            step(Kernel { arrow: s("f_prime") }, false),
        ],
        Property::LeftIntegral => vec![
            step(Epi { arrow: s("f") }, true),
            step(square(pullback), true),
            step(Epi { arrow: s("f_prime") }, false),
        ],
        Property::RightIntegral => vec![
            step(Mono { arrow: s("f") }, true),
            step(square(pushout), true),
            step(Mono { arrow: s("f_prime") }, false),
        ],
        Property::Projective => vec![
            step(Epi { arrow: s("e") }, true),
            step(Lifts { h: s("h"), through: s("e") }, false),
        ],
        Property::QuasiProjective => vec![
            step(Cokernel { arrow: s("e") }, true),
            step(Lifts { h: s("h"), through: s("e") }, false),
        ],
        _ => return None,
    };
    Some(t)
}

/// The transcript an admissible-intersection failure must carry.
pub fn ai_template(failing_leg: &str, section_trick: bool) -> Vec<Step> {
    use Check::*;
    let mut t = Vec::new();
    if section_trick {
        t.extend([
            step(KernelOf { kernel: s("f"), of: s("g") }, true),
            step(CokernelOf { cokernel: s("g"), of: s("f") }, true),
            step(Admissible { arrow: s("f") }, false),
            step(Retraction { arrow: s("c") }, true),
            step(Retraction { arrow: s("d") }, true),
        ]);
    }
    t.extend([
        step(Admissible { arrow: s("c") }, true),
        step(Admissible { arrow: s("d") }, true),
        step(Pullback { f: s("c"), g: s("d"), f_prime: s("b"), g_prime: s("a") }, true),
    ]);
    if section_trick {
        t.extend([
            step(Iso { arrow: s("phi_a") }, true),
            step(Equal { left: vec![s("a"), s("phi_a")], right: vec![s("f")] }, true),
            step(Iso { arrow: s("phi_b") }, true),
            step(Equal { left: vec![s("b"), s("phi_b")], right: vec![s("f")] }, true),
        ]);
    }
    t.push(step(Admissible { arrow: failing_leg.to_string() }, false));
    t
}

struct Evaluator<'a, O: Oracle> {
    oracle: &'a O,
    morphisms: &'a BTreeMap<String, O::Arrow>,
    structure: Option<StructureKind>,
}

impl<O: Oracle> Evaluator<'_, O> {
    fn get(&self, name: &str) -> Result<&O::Arrow, VerifyError> {
        self.morphisms.get(name).ok_or_else(|| VerifyError::MissingMorphism(name.to_string()))
    }

    fn chain(&self, names: &[String]) -> Result<Option<O::Arrow>, VerifyError> {
        let Some((last, rest)) = names.split_last() else {
            return Ok(None);
        };
        let mut acc = self.get(last)?.clone();
        for name in rest.iter().rev() {
            match self.oracle.re_compose(self.get(name)?, &acc) {
                Some(c) => acc = c,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    fn eval(&self, check: &Check) -> Result<bool, VerifyError> {
        let o = self.oracle;
        Ok(match check {
            Check::Equal { left, right } => match (self.chain(left)?, self.chain(right)?) {
                (Some(l), Some(r)) => o.re_equal(&l, &r),
                _ => false,
            },
            Check::Mono { arrow } => o.re_is_mono(self.get(arrow)?),
            Check::Epi { arrow } => o.re_is_epi(self.get(arrow)?),
            Check::Iso { arrow } => o.re_is_iso(self.get(arrow)?),
            Check::Kernel { arrow } => o.re_is_kernel(self.get(arrow)?),
            Check::Cokernel { arrow } => o.re_is_cokernel(self.get(arrow)?),
            Check::KernelOf { kernel, of } => o.re_is_kernel_of(self.get(kernel)?, self.get(of)?),
            Check::CokernelOf { cokernel, of } => o.re_is_cokernel_of(self.get(cokernel)?, self.get(of)?),
            Check::Pullback { f, g, f_prime, g_prime } => {
                o.re_is_pullback(self.get(f)?, self.get(g)?, self.get(f_prime)?, self.get(g_prime)?)
            }
            Check::Pushout { f, g, f_prime, g_prime } => {
                o.re_is_pushout(self.get(f)?, self.get(g)?, self.get(f_prime)?, self.get(g_prime)?)
            }
            Check::Lifts { h, through } => o.re_lifts(self.get(h)?, self.get(through)?),
            Check::Retraction { arrow } => o.re_has_retraction(self.get(arrow)?),
            Check::Admissible { arrow } => match self.structure {
                Some(StructureKind::AllPairs) => o.re_is_kernel(self.get(arrow)?),
                Some(StructureKind::Split) => o.re_has_retraction(self.get(arrow)?),
                _ => return Err(VerifyError::CustomStructure),
            },
        })
    }

    fn run(&self, transcript: &[Step]) -> Result<(), VerifyError> {
        for (name, m) in self.morphisms {
            if !self.oracle.re_valid(m) {
                return Err(VerifyError::InvalidMorphism(name.clone()));
            }
        }
        for (index, st) in transcript.iter().enumerate() {
            let got = self.eval(&st.check)?;
            if got != st.expect {
                return Err(VerifyError::StepFailed { index, check: st.check.clone(), got, expected: st.expect });
            }
        }
        Ok(())
    }
}

pub fn verify_property<O: Oracle>(oracle: &O, cert: &PropertyCertificate<O::Arrow>) -> Result<(), VerifyError> {
    let template = property_template(cert.property).ok_or(VerifyError::NotCertifiable(cert.property))?;
    if template != cert.transcript {
        return Err(VerifyError::TranscriptMismatch);
    }
    Evaluator { oracle, morphisms: &cert.morphisms, structure: None }.run(&cert.transcript)
}

pub fn verify_ai<O: Oracle>(oracle: &O, cert: &AiCertificate<O::Arrow>) -> Result<(), VerifyError> {
    if cert.structure == StructureKind::Custom {
        return Err(VerifyError::CustomStructure);
    }
    if !matches!(cert.failing_leg.as_str(), "a" | "b") || ai_template(&cert.failing_leg, cert.section_trick) != cert.transcript {
        return Err(VerifyError::TranscriptMismatch);
    }
    Evaluator { oracle, morphisms: &cert.morphisms, structure: Some(cert.structure) }.run(&cert.transcript)
}

pub fn verify<O: Oracle>(oracle: &O, cert: &Certificate<O::Arrow>) -> Result<(), VerifyError> {
    match cert {
        Certificate::Property(c) => verify_property(oracle, c),
        Certificate::AdmissibleIntersections(c) => verify_ai(oracle, c),
    }
}

impl<M> PropertyCertificate<M> {
    /// Maps every morphism, keeping names and transcript.
    pub fn map<N>(&self, instance: String, f: impl Fn(&M) -> N) -> PropertyCertificate<N> {
        PropertyCertificate {
            property: self.property,
            instance,
            morphisms: self.morphisms.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
            transcript: self.transcript.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_json_is_flat() {
        let st = step(Check::Lifts { h: s("h"), through: s("e") }, false);
        let json = serde_json::to_string(&st).unwrap();
        assert_eq!(json, r#"{"check":"lifts","h":"h","through":"e","expect":false}"#);
        let back: Step = serde_json::from_str(&json).unwrap();
        assert_eq!(back, st);
    }

    #[test]
    fn every_stability_template_ends_in_a_failed_check() {
        for p in Property::CERTIFIABLE {
            let t = property_template(p).unwrap();
            assert!(!t.last().unwrap().expect, "{p:?}");
            assert!(t[..t.len() - 1].iter().all(|s| s.expect));
        }
    }

    #[test]
    fn ai_template_names_the_failing_leg() {
        let t = ai_template("b", false);
        assert_eq!(t.last().unwrap().check, Check::Admissible { arrow: s("b") });
        assert_eq!(ai_template("a", true).len(), 13);
    }
}
