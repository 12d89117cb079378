//! JSON document forms.
//!
//! * sequence: `{"seq":[1,3,4]}` (a bare array is accepted on read),
//! * step function: `{"deltas":{"0":3,"1":-1}}`,
//! * descriptor: `{"name":"zero","rank":0,"e":null,"h0":{"low":0,"table":[],"rule":"zero"}}`,
//! * element: `{"ancestor":<descriptor or name>,"a":[1],"b":[0,0,0],"m":2}`,
//! * chain: `[{"move":"elem","a":3,"b":1},{"move":"reduce","s":[0,0]},{"move":"rigid"}]`.
//!
//! Unsorted sequences are sorted with a warning, or rejected in strict mode.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classrep::{ClassElement, DescriptorRegistry, PrimitiveDescriptor};
use crate::error::{ClassError, SeqError};
use crate::moves::Move;
use crate::seqlattice::SortedSeq;
use crate::sigmacalc::SignedStep;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Unsorted {
        field: &'static str,
        source: SeqError,
    },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("inconsistent element: {0}")]
    Inconsistent(String),
}

impl IoError {
    pub fn code(&self) -> &'static str {
        match self {
            IoError::Json(_) => "malformed_json",
            IoError::Unsorted { .. } => "unsorted",
            IoError::Class(e) => e.code(),
            IoError::Inconsistent(_) => "inconsistent_element",
        }
    }
}

/// Messages about input that was accepted after normalization.
pub type Warnings = Vec<String>;

fn normalize(
    field: &'static str,
    v: Vec<i64>,
    strict: bool,
    warnings: &mut Warnings,
) -> Result<SortedSeq, IoError> {
    match SortedSeq::new(v.clone()) {
        Ok(s) => Ok(s),
        Err(e) if strict => Err(IoError::Unsorted { field, source: e }),
        Err(_) => {
            warnings.push(format!("{field}: entries were not sorted; sorted them"));
            Ok(SortedSeq::from_unsorted(v))
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct SeqDoc {
    pub seq: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SeqInput {
    Bare(Vec<i64>),
    Doc(SeqDoc),
}

pub fn read_seq(text: &str, strict: bool) -> Result<(SortedSeq, Warnings), IoError> {
    let raw = match serde_json::from_str::<SeqInput>(text)? {
        SeqInput::Bare(v) => v,
        SeqInput::Doc(d) => d.seq,
    };
    let mut w = Vec::new();
    let s = normalize("seq", raw, strict, &mut w)?;
    Ok((s, w))
}

pub fn seq_doc(s: &SortedSeq) -> String {
    serde_json::to_string(&SeqDoc {
        seq: s.entries().to_vec(),
    })
    .expect("serializable")
}

pub fn read_step(text: &str) -> Result<SignedStep, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_chain(text: &str) -> Result<Vec<Move>, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_descriptor(text: &str) -> Result<PrimitiveDescriptor, IoError> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AncestorRef {
    Name(String),
    Inline(Box<PrimitiveDescriptor>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementDoc {
    pub ancestor: AncestorRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<i64>>,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SignedStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_rank: Option<u64>,
}

impl ElementDoc {
    /// Full form: inline ancestor, presentation if known, Σ and rank.
    pub fn from_element(el: &ClassElement) -> Self {
        let p = el.presentation();
        ElementDoc {
            ancestor: AncestorRef::Inline(Box::new(el.ancestor().clone())),
            a: p.map(|p| p.a.entries().to_vec()),
            b: p.map(|p| p.b.entries().to_vec()),
            m: el.m(),
            sigma: Some(el.sigma().clone()),
            rank: Some(el.rank()),
            min_rank: el.min_rank(),
        }
    }

    pub fn into_element(
        self,
        registry: &mut DescriptorRegistry,
        strict: bool,
    ) -> Result<(ClassElement, Warnings), IoError> {
        let ancestor = match self.ancestor {
            AncestorRef::Name(name) => registry.resolve(&name)?,
            AncestorRef::Inline(d) => registry.register(*d)?,
        };
        let mut warnings = Vec::new();
        let mut el = match (self.a, self.b) {
            (None, None) => {
                let sigma = self
                    .sigma
                    .clone()
                    .ok_or_else(|| IoError::Inconsistent("need a/b or sigma".into()))?;
                ClassElement::from_sigma(ancestor, sigma, self.m)?
            }
            (a, b) => {
                let a = normalize("a", a.unwrap_or_default(), strict, &mut warnings)?;
                let b = normalize("b", b.unwrap_or_default(), strict, &mut warnings)?;
                ClassElement::from_presentation(ancestor, a, b, self.m)?
            }
        };
        if let Some(sigma) = &self.sigma {
            if sigma != el.sigma() {
                return Err(IoError::Inconsistent(
                    "sigma does not match the presentation".into(),
                ));
            }
        }
        if let Some(rank) = self.rank {
            if rank != el.rank() {
                return Err(IoError::Inconsistent(format!(
                    "rank {rank} does not match derived rank {}",
                    el.rank()
                )));
            }
        }
        if let Some(r) = self.min_rank {
            el = el.with_min_rank(r)?;
        }
        Ok((el, warnings))
    }
}

pub fn read_element(
    text: &str,
    registry: &mut DescriptorRegistry,
    strict: bool,
) -> Result<(ClassElement, Warnings), IoError> {
    serde_json::from_str::<ElementDoc>(text)?.into_element(registry, strict)
}

pub fn element_doc(el: &ClassElement) -> String {
    serde_json::to_string(&ElementDoc::from_element(el)).expect("serializable")
}
