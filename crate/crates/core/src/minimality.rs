//! Criteria for minimal `(S_m⁺)` members of a biliaison class.
//!
//! The two checks are one-directional. [`necessary_check`] can
//! only refute minimality and [`sufficient_check`] can only confirm it, so
//! every verdict is one of four values and none of them is ever upgraded.

use serde::{Deserialize, Serialize};

use crate::classrep::ClassElement;
use crate::error::MinimalityError;
use crate::seqlattice::{le_witness, seq_join, SortedSeq};
use crate::sigmacalc::{ProfileBounds, SignedStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Minimal,
    NotMinimal,
    Unknown,
    /// The necessary condition holds; minimality is still open.
    Pass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_degree: Option<i64>,
    pub c_prime: SortedSeq,
}

impl NecessaryReport {
    /// The shape `c' ∧ a` (pointwise max of counting functions) that a
    /// reduction of the ancestor must realize. When the check fails it is
    /// strictly above `a`.
    pub fn forced_shape(&self, a: &SortedSeq) -> SortedSeq {
        seq_join(&self.c_prime, a)
    }
}

/// Given a surjection `O(c) → E` and `0 → O(a) → E → F → 0`, a minimal
/// `(S_m⁺)` sheaf `F` needs `c' ≤ a` where `c'` is the largest
/// `rank E − m` entries of `c`.
pub fn necessary_check(
    c: &SortedSeq,
    a: &SortedSeq,
    rank_e: u64,
    m: u32,
) -> Result<NecessaryReport, MinimalityError> {
    let u = rank_e
        .checked_sub(m as u64)
        .ok_or(MinimalityError::RankBelowLevel { rank_e, m })?;
    let u = usize::try_from(u).unwrap_or(usize::MAX);
    let c_prime = c.largest(u).ok_or(MinimalityError::SurjectionTooSmall {
        needed: u,
        available: c.len(),
    })?;
    let witness = le_witness(&c_prime, a);
    Ok(NecessaryReport {
        verdict: if witness.is_some() {
            Verdict::NotMinimal
        } else {
            Verdict::Pass
        },
        witness_degree: witness,
        c_prime,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficientReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_degree: Option<i64>,
    /// Half-open degree window `[lo, hi)` in which `h⁰(F(l))` was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
}

/// For `0 → O(a) → E → F → 0` with `F` of minimal rank in its class,
/// `h⁰(F(l)) = 0` for all `l < max(a)` makes `F` minimal.
///
/// Below `min(e, min a)` every term of the Hilbert function vanishes, so only
/// `[min(e, min a), max a)` is scanned. Minimal rank cannot be decided here
/// and must be asserted by the caller.
pub fn sufficient_check(
    f: &ClassElement,
    minimal_rank_asserted: bool,
) -> Result<SufficientReport, MinimalityError> {
    let p = f
        .presentation()
        .ok_or(MinimalityError::MissingPresentation)?;
    if !p.b.is_empty() {
        return Err(MinimalityError::NotAReduction);
    }
    let (Some(min_a), Some(max_a)) = (p.a.min(), p.a.max()) else {
        let verdict = if minimal_rank_asserted {
            Verdict::Minimal
        } else {
            Verdict::Unknown
        };
        return Ok(SufficientReport {
            verdict,
            witness_degree: None,
            window: None,
        });
    };
    let lo = f.ancestor().first_section().map_or(min_a, |e| e.min(min_a));
    let mut witness = None;
    for l in lo..max_a {
        if f.hilbert(l)? != 0 {
            witness = Some(l);
            break;
        }
    }
    let verdict = if minimal_rank_asserted && witness.is_none() {
        Verdict::Minimal
    } else {
        Verdict::Unknown
    };
    Ok(SufficientReport {
        verdict,
        witness_degree: witness,
        window: Some((lo, max_a)),
    })
}

/// Binary tree of meets; every internal node records the Σ it certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "node")]
pub enum MeetTree {
    Leaf {
        index: usize,
    },
    Meet {
        sigma: SignedStep,
        left: Box<MeetTree>,
        right: Box<MeetTree>,
    },
}

impl MeetTree {
    fn sigma<'a>(&'a self, pool: &'a [ClassElement]) -> Option<&'a SignedStep> {
        match self {
            MeetTree::Leaf { index } => pool.get(*index).map(|e| e.sigma()),
            MeetTree::Meet { sigma, .. } => Some(sigma),
        }
    }

    /// Re-derives every internal node from its children.
    pub fn verify(&self, pool: &[ClassElement]) -> bool {
        match self {
            MeetTree::Leaf { index } => *index < pool.len(),
            MeetTree::Meet { sigma, left, right } => {
                if !left.verify(pool) || !right.verify(pool) {
                    return false;
                }
                match (left.sigma(pool), right.sigma(pool)) {
                    (Some(l), Some(r)) => &l.pointwise_min(r) == sigma,
                    _ => false,
                }
            }
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            MeetTree::Leaf { index } => vec![*index],
            MeetTree::Meet { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PoolMinimum {
    pub minimum: ClassElement,
    pub certificate: MeetTree,
    /// Index of the first pool member whose Σ equals the minimum.
    pub attained_by: Option<usize>,
}

/// Iterated meet of a pool, folded pairwise so the certificate is balanced.
pub fn pool_minimum(pool: &[ClassElement]) -> Result<PoolMinimum, MinimalityError> {
    let first = pool.first().ok_or(MinimalityError::EmptyPool)?;
    for el in &pool[1..] {
        first.check_comparable(el)?;
    }
    let mut level: Vec<(ClassElement, MeetTree)> = pool
        .iter()
        .enumerate()
        .map(|(i, el)| (el.clone(), MeetTree::Leaf { index: i }))
        .collect();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some((l_el, l_tree)) = it.next() {
            match it.next() {
                Some((r_el, r_tree)) => {
                    let met = l_el.meet(&r_el)?;
                    let tree = MeetTree::Meet {
                        sigma: met.sigma().clone(),
                        left: Box::new(l_tree),
                        right: Box::new(r_tree),
                    };
                    next.push((met, tree));
                }
                None => next.push((l_el, l_tree)),
            }
        }
        level = next;
    }
    let (minimum, certificate) = level.pop().expect("nonempty pool");
    let attained_by = pool.iter().position(|el| el.sigma() == minimum.sigma());
    // A singleton pool hands back the member itself, witness included.
    let minimum = match attained_by {
        Some(i) if pool.len() == 1 => pool[i].clone(),
        _ => minimum,
    };
    Ok(PoolMinimum {
        minimum,
        certificate,
        attained_by,
    })
}

/// Upper bound on the length of a strictly `⪯`-descending chain headed by
/// `head` whose members are admissible for `bounds` and jump only inside
/// `[lower, upper]`.
///
/// Each member is determined by its values on the window, every strict step
/// lowers their sum by at least one, and the sum is squeezed between the
/// head's and the admissible floor's: the bound is
/// `1 + Σ_{l ∈ [lower, upper]} (head(l) − floor(l))`.
pub fn descent_bound(
    head: &SignedStep,
    bounds: &ProfileBounds,
    lower: i64,
    upper: i64,
) -> Result<u128, MinimalityError> {
    if upper < lower {
        return Err(MinimalityError::EmptyWindow { lower, upper });
    }
    let mut probes = vec![lower];
    probes.extend(head.deltas().range(lower..=upper).map(|(&l, _)| l));
    if let Some(e) = bounds.first_section {
        if (lower..=upper).contains(&e) {
            probes.push(e);
        }
    }
    for l in probes {
        if (head.value(l) as i128) < bounds.floor_at(l) {
            return Err(MinimalityError::HeadBelowFloor { degree: l });
        }
    }
    let floor_total: i128 = match bounds.first_section {
        Some(e) if e <= upper => {
            let from = e.max(lower);
            let count = upper as i128 - from as i128 + 1;
            count * (bounds.min_rank as i128 - bounds.ancestor_rank as i128)
        }
        _ => 0,
    };
    let gap = head.window_sum(lower, upper) - floor_total;
    Ok(1 + u128::try_from(gap).expect("head dominates the floor on the window"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classrep::{from_presentation, Ambient, H0Rule, PrimitiveDescriptor, SectionCounts};

    fn seq(v: &[i64]) -> SortedSeq {
        SortedSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn necessary_examples() {
        let r = necessary_check(&seq(&[1, 1, 1]), &seq(&[2, 2, 2]), 5, 3).unwrap();
        assert_eq!(r.verdict, Verdict::NotMinimal);
        assert_eq!(r.witness_degree, Some(1));
        assert_eq!(r.c_prime, seq(&[1, 1]));
        assert_eq!(r.forced_shape(&seq(&[2, 2, 2])), seq(&[1, 1, 2]));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"verdict":"NOT_MINIMAL","witness_degree":1,"c_prime":[1,1]}"#
        );

        let r = necessary_check(&seq(&[0, 3, 4]), &seq(&[3, 4]), 4, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = necessary_check(&seq(&[3, 4]), &seq(&[1, 2]), 3, 1).unwrap();
        assert_eq!((r.verdict, r.witness_degree), (Verdict::Pass, None));
    }

    #[test]
    fn necessary_errors() {
        assert!(matches!(
            necessary_check(&seq(&[1]), &seq(&[]), 4, 1),
            Err(MinimalityError::SurjectionTooSmall {
                needed: 3,
                available: 1
            })
        ));
        assert!(matches!(
            necessary_check(&seq(&[1]), &seq(&[]), 1, 2),
            Err(MinimalityError::RankBelowLevel { .. })
        ));
    }

    fn ancestor(rank: u64, e: i64, table_low: i64, table: Vec<u64>) -> PrimitiveDescriptor {
        PrimitiveDescriptor::new(
            "E",
            rank,
            Some(e),
            SectionCounts {
                low: table_low,
                table,
                rule: H0Rule::Unspecified,
            },
            Some(Ambient::ProjectiveSpace(2)),
        )
        .unwrap()
    }

    #[test]
    fn sufficient_vacuous_and_errors() {
        let e = ancestor(2, 0, 0, vec![1, 4]);
        let f = from_presentation(e.clone(), seq(&[]), seq(&[]), 1).unwrap();
        assert_eq!(
            sufficient_check(&f, true).unwrap().verdict,
            Verdict::Minimal
        );
        assert_eq!(
            sufficient_check(&f, false).unwrap().verdict,
            Verdict::Unknown
        );
        let g = from_presentation(e, seq(&[]), seq(&[3]), 1).unwrap();
        assert_eq!(
            sufficient_check(&g, true).unwrap_err(),
            MinimalityError::NotAReduction
        );
    }

    #[test]
    fn sufficient_scans_window() {
        // h0(E) on [0, 2] = 1, 3, 6; one section in degree 0 is cut out.
        let e = ancestor(2, 0, 0, vec![1, 3, 6]);
        let f = from_presentation(e, seq(&[0]), seq(&[]), 1).unwrap();
        let r = sufficient_check(&f, true).unwrap();
        assert_eq!(r.window, Some((0, 0)));
        assert_eq!(r.verdict, Verdict::Minimal);

        let e = ancestor(2, -1, -1, vec![1, 3, 6]);
        let f = from_presentation(e, seq(&[1]), seq(&[]), 1).unwrap();
        let r = sufficient_check(&f, true).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.witness_degree, Some(-1));
    }

    #[test]
    fn zero_ancestor_never_reaches_sufficient_check() {
        let zero = PrimitiveDescriptor::zero(None);
        assert!(from_presentation(zero, seq(&[1]), seq(&[]), 1).is_err());
    }

    #[test]
    fn pool_singleton_and_pair() {
        let e = ancestor(4, 0, 0, vec![1]);
        let f = from_presentation(e.clone(), seq(&[1, 3, 4]), seq(&[]), 1).unwrap();
        let g = from_presentation(e, seq(&[2, 2]), seq(&[]), 1).unwrap();
        let single = pool_minimum(std::slice::from_ref(&f)).unwrap();
        assert_eq!(single.minimum, f);
        assert_eq!(single.certificate, MeetTree::Leaf { index: 0 });
        assert_eq!(single.attained_by, Some(0));

        let pool = [f.clone(), g.clone()];
        let pm = pool_minimum(&pool).unwrap();
        assert_eq!(
            pm.minimum.sigma(),
            &SignedStep::from_pair(&seq(&[]), &seq(&[1, 2, 4]))
        );
        assert_eq!(pm.attained_by, None);
        assert!(pm.certificate.verify(&pool));
        assert_eq!(pm.certificate.leaves(), vec![0, 1]);
        assert!(pool_minimum(&[]).is_err());
    }

    #[test]
    fn descent_bound_examples() {
        let b = ProfileBounds {
            first_section: Some(0),
            ancestor_rank: 2,
            min_rank: 2,
        };
        // head ≡ 3 on [0, 4], floor 0
        let head = SignedStep::indicator(0);
        let head = &(&head + &head) + &head;
        assert_eq!(descent_bound(&head, &b, 0, 4).unwrap(), 1 + 3 * 5);
        // head already at the floor
        assert_eq!(descent_bound(&SignedStep::zero(), &b, -3, 3).unwrap(), 1);
        // window reaching below e counts the gap above 0 there
        let s = SignedStep::from_deltas([(-2, 1), (0, -1)].into_iter().collect());
        assert_eq!(descent_bound(&s, &b, -3, 3).unwrap(), 1 + 2);
        assert!(matches!(
            descent_bound(
                &SignedStep::from_deltas([(1, -1)].into_iter().collect()),
                &b,
                0,
                3
            ),
            Err(MinimalityError::HeadBelowFloor { degree: 1 })
        ));
    }
}
