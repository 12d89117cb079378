//! Integer step functions on ℤ with finitely many jumps.
//!
//! [`SignedStep`] stores only its jumps: `value(l)` is the sum of the jumps at
//! degrees `≤ l`. It is therefore `0` to the left of its support and equal to
//! its eventual value to the right. This is the representation of the Σ
//! function of a class member, `Σ(F, l) = Σ(b, l) − Σ(a, l)` for any
//! presentation `0 → O(a) → E ⊕ O(b) → F → 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Bound::{Excluded, Included};
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::seqlattice::SortedSeq;

/// Step function `ℤ → ℤ`, zero far left, constant far right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "StepDoc", into = "StepDoc")]
pub struct SignedStep {
    deltas: BTreeMap<i64, i64>,
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    deltas: BTreeMap<i64, i64>,
}

impl From<StepDoc> for SignedStep {
    fn from(doc: StepDoc) -> Self {
        SignedStep::from_deltas(doc.deltas)
    }
}

impl From<SignedStep> for StepDoc {
    fn from(s: SignedStep) -> Self {
        StepDoc { deltas: s.deltas }
    }
}

impl SignedStep {
    pub fn zero() -> Self {
        SignedStep::default()
    }

    /// Canonicalizes by dropping zero jumps.
    pub fn from_deltas(mut deltas: BTreeMap<i64, i64>) -> Self {
        deltas.retain(|_, v| *v != 0);
        SignedStep { deltas }
    }

    /// `1_{[d, ∞)}`.
    pub fn indicator(d: i64) -> Self {
        SignedStep {
            deltas: BTreeMap::from([(d, 1)]),
        }
    }

    /// `1_{[lo, hi)}`; zero when `hi ≤ lo`.
    pub fn unit_box(lo: i64, hi: i64) -> Self {
        if hi <= lo {
            return SignedStep::zero();
        }
        SignedStep {
            deltas: BTreeMap::from([(lo, 1), (hi, -1)]),
        }
    }

    /// Counting function of a sorted sequence.
    pub fn of_seq(a: &SortedSeq) -> Self {
        let mut deltas = BTreeMap::new();
        for &x in a.entries() {
            *deltas.entry(x).or_insert(0) += 1;
        }
        SignedStep { deltas }
    }

    /// `Σ(b, -) − Σ(a, -)`. Common entries cancel.
    pub fn from_pair(b: &SortedSeq, a: &SortedSeq) -> Self {
        let mut deltas = BTreeMap::new();
        for &x in b.entries() {
            *deltas.entry(x).or_insert(0) += 1;
        }
        for &x in a.entries() {
            *deltas.entry(x).or_insert(0) -= 1;
        }
        SignedStep::from_deltas(deltas)
    }

    pub fn deltas(&self) -> &BTreeMap<i64, i64> {
        &self.deltas
    }

    pub fn is_zero(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn value(&self, l: i64) -> i64 {
        self.deltas.range(..=l).map(|(_, v)| v).sum()
    }

    pub fn eventual(&self) -> i64 {
        self.deltas.values().sum()
    }

    /// Smallest and largest jump degree.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.deltas.keys().next()?;
        let hi = *self.deltas.keys().next_back()?;
        Some((lo, hi))
    }

    /// `(l, value(l))` at each jump degree, in increasing order.
    pub fn breakpoints(&self) -> Vec<(i64, i64)> {
        let mut acc = 0;
        self.deltas
            .iter()
            .map(|(&l, &d)| {
                acc += d;
                (l, acc)
            })
            .collect()
    }

    /// Values at every degree of the support window, for display.
    pub fn table(&self) -> Vec<(i64, i64)> {
        let Some((lo, hi)) = self.support() else {
            return Vec::new();
        };
        (lo..=hi).map(|l| (l, self.value(l))).collect()
    }

    /// Canonical presentation `(b, a)` with disjoint supports:
    /// positive jumps go to `b`, negative jumps to `a`.
    pub fn to_pair(&self) -> (SortedSeq, SortedSeq) {
        let mut b = Vec::new();
        let mut a = Vec::new();
        for (&l, &d) in &self.deltas {
            let target = if d > 0 { &mut b } else { &mut a };
            target.extend(std::iter::repeat_n(l, d.unsigned_abs() as usize));
        }
        // Keys are visited in increasing order, so both lists are sorted.
        (
            SortedSeq::new(b).expect("sorted by construction"),
            SortedSeq::new(a).expect("sorted by construction"),
        )
    }

    fn merged_points(&self, other: &SignedStep) -> Vec<i64> {
        let mut pts: Vec<i64> = self
            .deltas
            .keys()
            .chain(other.deltas.keys())
            .copied()
            .collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    fn combine(&self, other: &SignedStep, pick: fn(i64, i64) -> i64) -> SignedStep {
        let mut deltas = BTreeMap::new();
        let mut prev = 0;
        for l in self.merged_points(other) {
            let v = pick(self.value(l), other.value(l));
            deltas.insert(l, v - prev);
            prev = v;
        }
        SignedStep::from_deltas(deltas)
    }

    pub fn pointwise_min(&self, other: &SignedStep) -> SignedStep {
        self.combine(other, std::cmp::min)
    }

    pub fn pointwise_max(&self, other: &SignedStep) -> SignedStep {
        self.combine(other, std::cmp::max)
    }

    /// Smallest degree where `self > other`, if any. Both functions are
    /// constant between merged jump degrees and agree (at 0) far left.
    pub fn leq_witness(&self, other: &SignedStep) -> Option<i64> {
        self.merged_points(other)
            .into_iter()
            .find(|&l| self.value(l) > other.value(l))
    }

    pub fn leq(&self, other: &SignedStep) -> bool {
        self.leq_witness(other).is_none()
    }

    /// `Σ value(l)` over `l ∈ [lower, upper]`, computed per constant segment.
    pub fn window_sum(&self, lower: i64, upper: i64) -> i128 {
        if upper < lower {
            return 0;
        }
        let mut total: i128 = 0;
        let mut cursor = lower;
        let mut current = self.value(lower) as i128;
        for (&l, &d) in self.deltas.range((Excluded(lower), Included(upper))) {
            total += current * (l as i128 - cursor as i128);
            cursor = l;
            current += d as i128;
        }
        total + current * (upper as i128 - cursor as i128 + 1)
    }
}

pub fn signed_from_pair(b: &SortedSeq, a: &SortedSeq) -> SignedStep {
    SignedStep::from_pair(b, a)
}

pub fn sigma_leq(s: &SignedStep, t: &SignedStep) -> bool {
    s.leq(t)
}

impl Add for &SignedStep {
    type Output = SignedStep;

    fn add(self, rhs: &SignedStep) -> SignedStep {
        let mut deltas = self.deltas.clone();
        for (&l, &d) in &rhs.deltas {
            *deltas.entry(l).or_insert(0) += d;
        }
        SignedStep::from_deltas(deltas)
    }
}

impl Neg for &SignedStep {
    type Output = SignedStep;

    fn neg(self) -> SignedStep {
        SignedStep {
            deltas: self.deltas.iter().map(|(&l, &d)| (l, -d)).collect(),
        }
    }
}

impl Sub for &SignedStep {
    type Output = SignedStep;

    fn sub(self, rhs: &SignedStep) -> SignedStep {
        self + &(-rhs)
    }
}

impl fmt::Display for SignedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = self.table();
        if table.is_empty() {
            return writeln!(f, "Σ ≡ 0");
        }
        writeln!(f, "{:>8}  {:>6}", "l", "Σ(l)")?;
        writeln!(f, "{:>8}  {:>6}", format!("<{}", table[0].0), 0)?;
        for (l, v) in &table {
            writeln!(f, "{l:>8}  {v:>6}")?;
        }
        writeln!(
            f,
            "{:>8}  {:>6}",
            format!(">{}", table[table.len() - 1].0),
            self.eventual()
        )
    }
}

/// The data that bounds Σ functions of one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileBounds {
    /// First degree in which the ancestor has sections; `None` for the zero sheaf.
    pub first_section: Option<i64>,
    pub ancestor_rank: u64,
    /// Minimal rank of the relevant members of the class.
    pub min_rank: u64,
}

impl ProfileBounds {
    /// Lower bound on `Σ(l)` for admissible profiles. The zero ancestor has no
    /// first section degree, so the `≥ 0` bound holds everywhere.
    pub fn floor_at(&self, l: i64) -> i128 {
        match self.first_section {
            Some(e) if l >= e => self.min_rank as i128 - self.ancestor_rank as i128,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Σ must vanish far to the left.
    LeftTail,
    /// Σ(l) ≥ 0 before the ancestor's first section degree.
    NegativeBeforeFirstSection,
    /// Σ(l) ≥ r − rank E from the first section degree on.
    BelowRankFloor,
    /// Eventual value rank F − rank E ≥ r − rank E.
    EventualRank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileViolation {
    pub clause: Clause,
    pub degree: Option<i64>,
    pub value: i64,
    pub bound: i128,
}

impl fmt::Display for ProfileViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.clause {
            Clause::LeftTail => "Σ does not vanish far left",
            Clause::NegativeBeforeFirstSection => "Σ is negative before the first section degree",
            Clause::BelowRankFloor => "Σ drops below r - rank E",
            Clause::EventualRank => "eventual Σ is below r - rank E",
        };
        match self.degree {
            Some(l) => write!(
                f,
                "{what} at l = {l} (value {}, bound {})",
                self.value, self.bound
            ),
            None => write!(f, "{what} (value {}, bound {})", self.value, self.bound),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub passed: bool,
    pub eventual: i64,
    pub violation: Option<ProfileViolation>,
}

/// Checks the constraints every Σ function of the class must satisfy.
///
/// With an ancestor `E ≠ 0` and first section degree `e`:
/// Σ vanishes far left, `Σ(l) ≥ 0` for `l < e`, `Σ(l) ≥ r − rank E` for
/// `l ≥ e`, and the eventual value is at least `r − rank E`. For the zero
/// ancestor the second clause covers all of ℤ and the third is vacuous.
pub fn validate_profile(s: &SignedStep, bounds: &ProfileBounds) -> ProfileReport {
    let eventual = s.eventual();
    let fail = |v: ProfileViolation| ProfileReport {
        passed: false,
        eventual,
        violation: Some(v),
    };
    // The jump representation is zero below its support; nothing to check for
    // the left tail.
    let mut probes: Vec<(i64, i64)> = s.breakpoints();
    if let Some(e) = bounds.first_section {
        probes.push((e, s.value(e)));
        probes.sort_unstable();
    }
    for (l, v) in probes {
        let bound = bounds.floor_at(l);
        if (v as i128) < bound {
            let clause = match bounds.first_section {
                Some(e) if l >= e => Clause::BelowRankFloor,
                _ => Clause::NegativeBeforeFirstSection,
            };
            return fail(ProfileViolation {
                clause,
                degree: Some(l),
                value: v,
                bound,
            });
        }
    }
    let floor = bounds.min_rank as i128 - bounds.ancestor_rank as i128;
    if (eventual as i128) < floor {
        return fail(ProfileViolation {
            clause: Clause::EventualRank,
            degree: s.support().map(|(_, hi)| hi),
            value: eventual,
            bound: floor,
        });
    }
    ProfileReport {
        passed: true,
        eventual,
        violation: None,
    }
}
