//! Finite non-decreasing integer sequences and their counting functions.
//!
//! A [`SortedSeq`] `a` is identified with its counting function
//! `Σ(a, l) = #{i : a_i ≤ l}`, a non-decreasing step function that is `0`
//! far to the left and `len(a)` far to the right. Two sequences compare by
//! comparing these functions pointwise, which makes the set of all finite
//! sorted sequences a lattice:
//!
//! * [`seq_meet`] is the pointwise minimum of counting functions. In the
//!   literature on reductions of sheaves this is written `a ∨ b`.
//! * [`seq_join`] is the pointwise maximum, written `a ∧ b` there.
//!
//! The symbols are swapped with respect to the usual lattice notation, so the
//! functions here are named by their order-theoretic role only.
//!
//! [`padded_oracle`] computes both operations a second way (pad the shorter
//! sequence with `+∞`, compare position by position) and exists to cross-check
//! the counting-function route.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SeqError;

/// A finite non-decreasing sequence of integers.
///
/// Serializes as a bare JSON array; the `{"seq": [...]}` document form lives
/// in [`crate::io`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SortedSeq(Vec<i64>);

impl SortedSeq {
    /// Builds a sequence, rejecting input that is not already non-decreasing.
    pub fn new(entries: Vec<i64>) -> Result<Self, SeqError> {
        if let Some(i) = entries.windows(2).position(|w| w[0] > w[1]) {
            return Err(SeqError::Unsorted {
                index: i,
                left: entries[i],
                right: entries[i + 1],
            });
        }
        Ok(SortedSeq(entries))
    }

    /// Builds a sequence from entries in any order.
    pub fn from_unsorted(mut entries: Vec<i64>) -> Self {
        entries.sort_unstable();
        SortedSeq(entries)
    }

    pub fn empty() -> Self {
        SortedSeq(Vec::new())
    }

    /// `count` copies of `degree`.
    pub fn repeated(degree: i64, count: usize) -> Self {
        SortedSeq(vec![degree; count])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    /// `Σ(self, l)`: the number of entries `≤ l`.
    pub fn sigma_at(&self, l: i64) -> usize {
        self.0.partition_point(|&x| x <= l)
    }

    /// Distinct entries in increasing order. `Σ(self, -)` only changes here.
    pub fn jump_points(&self) -> Vec<i64> {
        let mut pts = self.0.clone();
        pts.dedup();
        pts
    }

    /// Multiset union.
    pub fn union(&self, other: &SortedSeq) -> SortedSeq {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        SortedSeq(out)
    }

    /// The `u` largest entries, or `None` if there are fewer than `u`.
    pub fn largest(&self, u: usize) -> Option<SortedSeq> {
        let n = self.0.len();
        (u <= n).then(|| SortedSeq(self.0[n - u..].to_vec()))
    }

    /// Counting function as breakpoints: `(l, Σ(self, l))` at each jump point.
    pub fn sigma_profile(&self) -> BTreeMap<i64, i64> {
        self.jump_points()
            .into_iter()
            .map(|l| (l, self.sigma_at(l) as i64))
            .collect()
    }

    pub fn le(&self, other: &SortedSeq) -> bool {
        seq_le(self, other)
    }

    pub fn meet(&self, other: &SortedSeq) -> SortedSeq {
        seq_meet(self, other)
    }

    pub fn join(&self, other: &SortedSeq) -> SortedSeq {
        seq_join(self, other)
    }
}

impl TryFrom<Vec<i64>> for SortedSeq {
    type Error = SeqError;

    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        SortedSeq::new(v)
    }
}

impl From<SortedSeq> for Vec<i64> {
    fn from(s: SortedSeq) -> Self {
        s.0
    }
}

impl fmt::Display for SortedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Pointwise order on counting functions. This is a partial order, so
/// `partial_cmp` returns `None` for incomparable pairs.
impl PartialOrd for SortedSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (seq_le(self, other), seq_le(other, self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

pub fn sigma_at(a: &SortedSeq, l: i64) -> usize {
    a.sigma_at(l)
}

fn merged_jump_points(a: &SortedSeq, b: &SortedSeq) -> Vec<i64> {
    let mut pts = a.union(b).0;
    pts.dedup();
    pts
}

/// Smallest degree `l` with `Σ(a, l) > Σ(b, l)`, if any.
pub fn le_witness(a: &SortedSeq, b: &SortedSeq) -> Option<i64> {
    merged_jump_points(a, b)
        .into_iter()
        .find(|&l| a.sigma_at(l) > b.sigma_at(l))
}

/// `a ≤ b` iff `Σ(a, l) ≤ Σ(b, l)` for every `l`.
pub fn seq_le(a: &SortedSeq, b: &SortedSeq) -> bool {
    le_witness(a, b).is_none()
}

fn combine(a: &SortedSeq, b: &SortedSeq, pick: fn(usize, usize) -> usize) -> SortedSeq {
    let profile: BTreeMap<i64, i64> = merged_jump_points(a, b)
        .into_iter()
        .map(|l| (l, pick(a.sigma_at(l), b.sigma_at(l)) as i64))
        .collect();
    from_sigma(&profile).expect("min/max of counting functions is a counting function")
}

/// Greatest lower bound: `Σ(c, l) = min(Σ(a, l), Σ(b, l))`. Written `a ∨ b`
/// in the reduction-shape literature.
pub fn seq_meet(a: &SortedSeq, b: &SortedSeq) -> SortedSeq {
    combine(a, b, std::cmp::min)
}

/// Least upper bound: `Σ(c, l) = max(Σ(a, l), Σ(b, l))`. Written `a ∧ b`
/// in the reduction-shape literature.
pub fn seq_join(a: &SortedSeq, b: &SortedSeq) -> SortedSeq {
    combine(a, b, std::cmp::max)
}

/// Meet and join via padding: extend the shorter sequence with `+∞`, take
/// the position-wise maximum (meet) and minimum (join), and drop the padding.
pub fn padded_oracle(a: &SortedSeq, b: &SortedSeq) -> (SortedSeq, SortedSeq) {
    let n = a.len().max(b.len());
    let pad = |s: &SortedSeq| -> Vec<Option<i64>> {
        let mut v: Vec<Option<i64>> = s.0.iter().copied().map(Some).collect();
        v.resize(n, None);
        v
    };
    let (pa, pb) = (pad(a), pad(b));
    // None plays +∞: it loses every min and wins every max.
    let mut meet = Vec::new();
    let mut join = Vec::new();
    for (x, y) in pa.into_iter().zip(pb) {
        match (x, y) {
            (Some(x), Some(y)) => {
                meet.push(x.max(y));
                join.push(x.min(y));
            }
            (Some(v), None) | (None, Some(v)) => join.push(v),
            (None, None) => unreachable!(),
        }
    }
    (SortedSeq(meet), SortedSeq(join))
}

/// Inverts [`sigma_at`]. `profile` maps breakpoints to the value of the
/// counting function from that degree until the next breakpoint; the value
/// is `0` before the first key and constant after the last.
pub fn from_sigma(profile: &BTreeMap<i64, i64>) -> Result<SortedSeq, SeqError> {
    let mut out = Vec::new();
    let mut prev = 0i64;
    for (&l, &v) in profile {
        if v < 0 {
            return Err(SeqError::NegativeProfile {
                degree: l,
                value: v,
            });
        }
        if v < prev {
            return Err(SeqError::DecreasingProfile {
                degree: l,
                from: prev,
                to: v,
            });
        }
        out.extend(std::iter::repeat_n(l, (v - prev) as usize));
        prev = v;
    }
    Ok(SortedSeq(out))
}
