//! Move chains between members of one biliaison class.
//!
//! A chain is a list of [`Move`]s replayed on Σ and rank. Moves only track
//! these invariants: a verified chain certifies that the Σ bookkeeping of a
//! chain of biliaisons, deformations and reductions is consistent, not that
//! sheaves realizing it have been built.
//!
//! Sign convention for an elementary biliaison `{a, b}`: a Serre
//! correspondence `O(−a) → F` and one `O(−b) → G` with isomorphic cokernels,
//! so `Σ(G) = Σ(F) − 1_{[a,∞)} + 1_{[b,∞)}`. Its height is `a − b`; positive
//! height raises Σ on `[b, a)`, negative height lowers it on `[a, b)`.

use serde::{Deserialize, Serialize};

use crate::classrep::ClassElement;
use crate::error::{ClassError, MoveError};
use crate::seqlattice::SortedSeq;
use crate::sigmacalc::SignedStep;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum Move {
    #[serde(rename = "elem")]
    ElemBiliaison {
        a: i64,
        b: i64,
        /// Claimed `(S_m⁺)` level of the two Serre correspondences; metadata only.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        level: Option<u32>,
    },
    #[serde(rename = "rigid")]
    Rigid,
    #[serde(rename = "reduce")]
    Reduction { s: SortedSeq },
    #[serde(rename = "extend")]
    Extension { s: SortedSeq },
}

impl Move {
    pub fn elem(a: i64, b: i64) -> Self {
        Move::ElemBiliaison { a, b, level: None }
    }

    /// `a − b` for elementary biliaisons.
    pub fn height(&self) -> Option<Result<i64, MoveError>> {
        match *self {
            Move::ElemBiliaison { a, b, .. } => {
                Some(a.checked_sub(b).ok_or(MoveError::HeightOverflow))
            }
            _ => None,
        }
    }

    pub fn is_increasing(&self) -> bool {
        matches!(self, Move::ElemBiliaison { a, b, .. } if a > b)
    }

    pub fn is_descending(&self) -> bool {
        matches!(self, Move::ElemBiliaison { a, b, .. } if a < b)
    }

    pub fn changes_rank(&self) -> bool {
        matches!(self, Move::Reduction { .. } | Move::Extension { .. })
    }

    /// The move that undoes this one.
    pub fn inverse(&self) -> Move {
        match self {
            Move::ElemBiliaison { a, b, level } => Move::ElemBiliaison {
                a: *b,
                b: *a,
                level: *level,
            },
            Move::Rigid => Move::Rigid,
            Move::Reduction { s } => Move::Extension { s: s.clone() },
            Move::Extension { s } => Move::Reduction { s: s.clone() },
        }
    }

    /// Σ(after) − Σ(before).
    pub fn sigma_change(&self) -> SignedStep {
        match self {
            Move::ElemBiliaison { a, b, .. } => {
                &SignedStep::indicator(*b) - &SignedStep::indicator(*a)
            }
            Move::Rigid => SignedStep::zero(),
            Move::Reduction { s } => -&SignedStep::of_seq(s),
            Move::Extension { s } => SignedStep::of_seq(s),
        }
    }
}

/// Applies one move and checks the result against the class bounds of `f`.
pub fn apply_move(f: &ClassElement, mv: &Move) -> Result<ClassElement, MoveError> {
    let empty = SortedSeq::empty();
    let next = match mv {
        Move::Rigid => return Ok(f.clone()),
        Move::ElemBiliaison { a, b, .. } => {
            f.compose_ancestor(&SortedSeq::repeated(*a, 1), &SortedSeq::repeated(*b, 1))?
        }
        Move::Reduction { s } | Move::Extension { s } if s.is_empty() => {
            return Err(MoveError::EmptySequence)
        }
        Move::Reduction { s } => f.compose_ancestor(s, &empty)?,
        Move::Extension { s } => f.compose_ancestor(&empty, s)?,
    };
    match next.validate().violation {
        Some(v) => Err(ClassError::Inadmissible(v).into()),
        None => Ok(next),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    #[serde(rename = "step")]
    pub mv: Move,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SignedStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainFailure {
    Incomparable {
        detail: String,
    },
    StartInadmissible {
        detail: String,
    },
    Step {
        index: usize,
        detail: String,
    },
    /// More than one reduction or extension in the chain.
    RankChangedMoreThanOnce {
        count: usize,
    },
    TargetMismatch {
        witness_degree: Option<i64>,
        rank: u64,
        target_rank: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub passed: bool,
    pub steps: Vec<StepRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<ChainFailure>,
}

impl ChainReport {
    /// One JSON object per step, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("serializable"));
            out.push('\n');
        }
        #[derive(Serialize)]
        struct Summary<'a> {
            passed: bool,
            steps: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            failure: Option<&'a ChainFailure>,
        }
        let summary = Summary {
            passed: self.passed,
            steps: self.steps.len(),
            failure: self.failure.as_ref(),
        };
        out.push_str(&serde_json::to_string(&summary).expect("serializable"));
        out.push('\n');
        out
    }
}

/// Replays `chain` from `start` and compares the end point with `target`.
pub fn verify_chain(start: &ClassElement, chain: &[Move], target: &ClassElement) -> ChainReport {
    let mut steps = Vec::with_capacity(chain.len());
    let fail = |steps, failure| ChainReport {
        passed: false,
        steps,
        failure: Some(failure),
    };

    if let Err(e) = start.check_comparable(target) {
        return fail(
            steps,
            ChainFailure::Incomparable {
                detail: e.to_string(),
            },
        );
    }
    if let Some(v) = start.validate().violation {
        return fail(
            steps,
            ChainFailure::StartInadmissible {
                detail: v.to_string(),
            },
        );
    }
    let mut current = start.clone();
    let mut failure = None;
    for (index, mv) in chain.iter().enumerate() {
        match apply_move(&current, mv) {
            Ok(next) => {
                steps.push(StepRecord {
                    index,
                    mv: mv.clone(),
                    sigma: Some(next.sigma().clone()),
                    rank: Some(next.rank()),
                    error: None,
                });
                current = next;
            }
            Err(e) => {
                steps.push(StepRecord {
                    index,
                    mv: mv.clone(),
                    sigma: None,
                    rank: None,
                    error: Some(e.to_string()),
                });
                failure = Some(ChainFailure::Step {
                    index,
                    detail: e.to_string(),
                });
                break;
            }
        }
    }
    if let Some(f) = failure {
        return fail(steps, f);
    }
    let count = chain.iter().filter(|m| m.changes_rank()).count();
    if count > 1 {
        return fail(steps, ChainFailure::RankChangedMoreThanOnce { count });
    }
    if current.sigma() != target.sigma() {
        let witness = current
            .sigma()
            .leq_witness(target.sigma())
            .or_else(|| target.sigma().leq_witness(current.sigma()));
        return fail(
            steps,
            ChainFailure::TargetMismatch {
                witness_degree: witness,
                rank: current.rank(),
                target_rank: target.rank(),
            },
        );
    }
    ChainReport {
        passed: true,
        steps,
        failure: None,
    }
}

/// Degrees `s_1 ≤ … ≤ s_k` where `{D ≥ j}` takes its final, unbounded
/// interval. `Σ(s) ≤ D` pointwise and both end at `k`.
fn tail_layers(d: &SignedStep) -> Vec<i64> {
    let bps = d.breakpoints();
    let k = d.eventual();
    // suffix[i] = min of D on [l_i, ∞)
    let mut suffix = vec![0; bps.len()];
    let mut running = i64::MAX;
    for (i, &(_, v)) in bps.iter().enumerate().rev() {
        running = running.min(v);
        suffix[i] = running;
    }
    let mut out = Vec::with_capacity(k.max(0) as usize);
    let mut i = 0;
    for j in 1..=k {
        while suffix[i] < j {
            i += 1;
        }
        out.push(bps[i].0);
    }
    out
}

/// Unit boxes `[x, y)` peeled layer by layer from a non-negative,
/// eventually zero step function, sorted by left end then width.
fn unit_boxes(r: &SignedStep) -> Vec<(i64, i64)> {
    let bps = r.breakpoints();
    let top = bps.iter().map(|&(_, v)| v).max().unwrap_or(0);
    let mut boxes = Vec::new();
    for j in 1..=top {
        let mut open: Option<i64> = None;
        for &(l, v) in &bps {
            match (open, v >= j) {
                (None, true) => open = Some(l),
                (Some(x), false) => {
                    boxes.push((x, l));
                    open = None;
                }
                _ => {}
            }
        }
        debug_assert!(open.is_none(), "remainder must be eventually zero");
    }
    boxes.sort_by_key(|&(x, y)| (x, y - x));
    boxes
}

/// A chain from `start` down to `min_elt`: at most one reduction, which
/// carries the whole rank difference, followed by descending elementary
/// biliaisons, one per unit box of the remaining difference.
///
/// Every intermediate Σ lies pointwise between Σ(min_elt) and Σ(start).
/// Reverse the chain with [`reverse_chain`] to go up instead.
pub fn synthesize_chain(
    start: &ClassElement,
    min_elt: &ClassElement,
) -> Result<Vec<Move>, MoveError> {
    start.check_comparable(min_elt)?;
    if let Some(degree) = min_elt.sigma().leq_witness(start.sigma()) {
        return Err(MoveError::TargetNotBelow { degree });
    }
    let diff = start.sigma() - min_elt.sigma();
    let mut chain = Vec::new();
    let tail = SortedSeq::new(tail_layers(&diff)).expect("tail layers are sorted");
    let remainder = &diff - &SignedStep::of_seq(&tail);
    if !tail.is_empty() {
        chain.push(Move::Reduction { s: tail });
    }
    let level = Some(start.m());
    chain.extend(
        unit_boxes(&remainder)
            .into_iter()
            .map(|(x, y)| Move::ElemBiliaison { a: x, b: y, level }),
    );
    Ok(chain)
}

/// The same path walked backwards.
pub fn reverse_chain(chain: &[Move]) -> Vec<Move> {
    chain.iter().rev().map(Move::inverse).collect()
}
