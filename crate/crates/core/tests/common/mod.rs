#![allow(dead_code)]

use std::sync::Arc;

use biliaison::classrep::{H0Rule, SectionCounts};
use biliaison::{Ambient, ClassElement, PrimitiveDescriptor, SignedStep, SortedSeq};
use rand::Rng;

pub fn seq(v: &[i64]) -> SortedSeq {
    SortedSeq::new(v.to_vec()).unwrap()
}

pub fn random_seq<R: Rng>(rng: &mut R, max_len: usize, lo: i64, hi: i64) -> SortedSeq {
    let len = rng.gen_range(0..=max_len);
    SortedSeq::from_unsorted((0..len).map(|_| rng.gen_range(lo..=hi)).collect())
}

pub fn zero_on(n: u32) -> Arc<PrimitiveDescriptor> {
    Arc::new(PrimitiveDescriptor::zero(Some(Ambient::ProjectiveSpace(n))))
}

/// Rank 2 on P², `h⁰(l) = 2·C(l+2,2)` from `e = 0` on.
pub fn rank_two_ancestor() -> Arc<PrimitiveDescriptor> {
    let h0 = SectionCounts {
        low: 0,
        table: vec![2],
        rule: H0Rule::Terms(vec![biliaison::classrep::BinomialTerm {
            coef: 2,
            n: 2,
            shift: 0,
        }]),
    };
    Arc::new(
        PrimitiveDescriptor::new("twice O", 2, Some(0), h0, Some(Ambient::ProjectiveSpace(2)))
            .unwrap(),
    )
}

/// A pair `(a, b)` with `Σ(b) − Σ(a) ≥ 0` everywhere and eventual value
/// `len b − len a = rank`. Every entry of `a` sits at or above a distinct
/// entry of `b`.
pub fn nonnegative_pair<R: Rng>(
    rng: &mut R,
    rank: usize,
    matched: usize,
    lo: i64,
    hi: i64,
) -> (SortedSeq, SortedSeq) {
    let mut b = Vec::new();
    let mut a = Vec::new();
    for _ in 0..matched {
        let x = rng.gen_range(lo..=hi);
        b.push(x);
        a.push(rng.gen_range(x..=hi));
    }
    for _ in 0..rank {
        b.push(rng.gen_range(lo..=hi));
    }
    (SortedSeq::from_unsorted(a), SortedSeq::from_unsorted(b))
}

/// An element of the class of `anc` whose Σ is nonnegative, with jumps in
/// `[lo, hi]`.
pub fn random_element<R: Rng>(
    rng: &mut R,
    anc: &Arc<PrimitiveDescriptor>,
    m: u32,
    max_rank: usize,
    lo: i64,
    hi: i64,
) -> ClassElement {
    let extra = max_rank.saturating_sub(anc.rank() as usize);
    let rank = rng.gen_range(0..=extra);
    let matched = rng.gen_range(0..=4);
    let (a, b) = nonnegative_pair(rng, rank, matched, lo, hi);
    ClassElement::from_presentation(anc.clone(), a, b, m).unwrap()
}

/// `(min, start)` with `min ⪯ start`, both admissible.
pub fn random_chain_pair<R: Rng>(
    rng: &mut R,
    anc: &Arc<PrimitiveDescriptor>,
    max_rank: usize,
    lo: i64,
    hi: i64,
) -> (ClassElement, ClassElement) {
    let min = random_element(rng, anc, 2, max_rank, lo, hi);
    let room = max_rank.saturating_sub(min.rank() as usize);
    let k = rng.gen_range(0..=room);
    let matched = rng.gen_range(0..=4);
    let (a, b) = nonnegative_pair(rng, k, matched, lo, hi);
    let start = min.compose_ancestor(&a, &b).unwrap();
    (min, start)
}

/// Degrees at which two step functions can differ, padded by one on each side.
pub fn probe_degrees(steps: &[&SignedStep]) -> Vec<i64> {
    let mut pts: Vec<i64> = steps
        .iter()
        .flat_map(|s| s.deltas().keys().copied())
        .collect();
    let extra: Vec<i64> = pts.iter().flat_map(|&p| [p - 1, p + 1]).collect();
    pts.extend(extra);
    pts.push(0);
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// `C(n, k)` with the convention that it vanishes for `n < k` or `n < 0`.
pub fn binom(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || n < k {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
