//! Members of a biliaison class, described by their very primitive ancestor
//! and their Σ function.
//!
//! The ancestor is a [`PrimitiveDescriptor`]: a name plus the discrete data
//! the calculus needs (rank, first section degree, section counts). Nothing
//! here constructs a sheaf; very-primitivity and the `(S_m⁺)` level are
//! assertions carried along with the data.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::ClassError;
use crate::seqlattice::SortedSeq;
use crate::sigmacalc::{validate_profile, ProfileBounds, ProfileReport, SignedStep};

/// Ambient variety. Only projective spaces carry built-in section counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    ProjectiveSpace(u32),
}

impl Ambient {
    /// `h⁰(O_X(d))`.
    pub fn h0(&self, d: i64) -> Result<u128, ClassError> {
        match *self {
            Ambient::ProjectiveSpace(n) => h0_pn(n, d),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::ProjectiveSpace(n) => write!(f, "pn:{n}"),
        }
    }
}

impl FromStr for Ambient {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = s
            .strip_prefix("pn:")
            .ok_or_else(|| format!("unknown ambient {s:?} (expected pn:<n>)"))?;
        let n: u32 = n.parse().map_err(|_| format!("bad dimension in {s:?}"))?;
        if n == 0 {
            return Err("projective space must have dimension ≥ 1".into());
        }
        Ok(Ambient::ProjectiveSpace(n))
    }
}

impl Serialize for Ambient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ambient {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `h⁰(O_{Pⁿ}(d)) = C(n + d, n)` for `d ≥ 0`, else `0`.
pub fn h0_pn(n: u32, d: i64) -> Result<u128, ClassError> {
    if d < 0 {
        return Ok(0);
    }
    let d = d as u128;
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        // acc = C(d + i - 1, i - 1) here, so the division is exact.
        acc = acc.checked_mul(d + i).ok_or(ClassError::Overflow {
            what: "binomial coefficient",
        })? / i;
    }
    Ok(acc)
}

/// `coef · h⁰(O_{Pⁿ}(l + shift))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinomialTerm {
    pub coef: i64,
    pub n: u32,
    #[serde(default)]
    pub shift: i64,
}

/// Section counts above the tabulated range.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum H0Rule {
    Zero,
    /// Not known above the table; queries there are errors.
    Unspecified,
    Terms(Vec<BinomialTerm>),
}

impl H0Rule {
    pub fn projective_space(n: u32) -> Self {
        H0Rule::Terms(vec![BinomialTerm {
            coef: 1,
            n,
            shift: 0,
        }])
    }

    fn eval(&self, l: i64) -> Result<Option<i128>, ClassError> {
        let overflow = ClassError::Overflow {
            what: "section-count rule",
        };
        match self {
            H0Rule::Zero => Ok(Some(0)),
            H0Rule::Unspecified => Ok(None),
            H0Rule::Terms(terms) => {
                let mut acc: i128 = 0;
                for t in terms {
                    let d = l.checked_add(t.shift).ok_or(overflow.clone())?;
                    let v = i128::try_from(h0_pn(t.n, d)?).map_err(|_| overflow.clone())?;
                    let term = v.checked_mul(t.coef as i128).ok_or(overflow.clone())?;
                    acc = acc.checked_add(term).ok_or(overflow.clone())?;
                }
                Ok(Some(acc))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RuleDoc {
    Named(String),
    Terms { terms: Vec<BinomialTerm> },
}

impl Serialize for H0Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let doc = match self {
            H0Rule::Zero => RuleDoc::Named("zero".into()),
            H0Rule::Unspecified => RuleDoc::Named("none".into()),
            H0Rule::Terms(t) if t.len() == 1 && t[0].coef == 1 && t[0].shift == 0 => {
                RuleDoc::Named(format!("pn:{}", t[0].n))
            }
            H0Rule::Terms(t) => RuleDoc::Terms { terms: t.clone() },
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for H0Rule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RuleDoc::deserialize(d)? {
            RuleDoc::Terms { terms } => Ok(H0Rule::Terms(terms)),
            RuleDoc::Named(name) => match name.as_str() {
                "zero" => Ok(H0Rule::Zero),
                "none" => Ok(H0Rule::Unspecified),
                other => match other.parse::<Ambient>() {
                    Ok(Ambient::ProjectiveSpace(n)) => Ok(H0Rule::projective_space(n)),
                    Err(e) => Err(serde::de::Error::custom(e)),
                },
            },
        }
    }
}

/// `l ↦ h⁰(E(l))`: zero below `low`, tabulated on `[low, low + len)`, then
/// given by `rule`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionCounts {
    pub low: i64,
    #[serde(default)]
    pub table: Vec<u64>,
    pub rule: H0Rule,
}

impl SectionCounts {
    pub fn zero() -> Self {
        SectionCounts {
            low: 0,
            table: Vec::new(),
            rule: H0Rule::Zero,
        }
    }

    /// Last tabulated degree, if the table is nonempty.
    pub fn high(&self) -> Option<i64> {
        (!self.table.is_empty()).then(|| self.low + self.table.len() as i64 - 1)
    }

    /// `None` when the degree lies in the unspecified region.
    pub fn at(&self, l: i64) -> Result<Option<i128>, ClassError> {
        if l < self.low {
            return Ok(Some(0));
        }
        let idx = (l as i128 - self.low as i128) as u128;
        if idx < self.table.len() as u128 {
            return Ok(Some(self.table[idx as usize] as i128));
        }
        self.rule.eval(l)
    }

    fn is_identically_zero(&self) -> bool {
        self.rule == H0Rule::Zero && self.table.iter().all(|&v| v == 0)
    }
}

/// A very primitive ancestor, given by its discrete invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DescriptorDoc", into = "DescriptorDoc")]
pub struct PrimitiveDescriptor {
    name: String,
    rank: u64,
    first_section: Option<i64>,
    h0: SectionCounts,
    ambient: Option<Ambient>,
    very_primitive: bool,
}

#[derive(Serialize, Deserialize)]
struct DescriptorDoc {
    name: String,
    rank: u64,
    e: Option<i64>,
    h0: SectionCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<Ambient>,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    very_primitive: bool,
}

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

impl TryFrom<DescriptorDoc> for PrimitiveDescriptor {
    type Error = ClassError;

    fn try_from(d: DescriptorDoc) -> Result<Self, ClassError> {
        let mut desc = PrimitiveDescriptor::new(d.name, d.rank, d.e, d.h0, d.ambient)?;
        desc.very_primitive = d.very_primitive;
        Ok(desc)
    }
}

impl From<PrimitiveDescriptor> for DescriptorDoc {
    fn from(d: PrimitiveDescriptor) -> Self {
        DescriptorDoc {
            name: d.name,
            rank: d.rank,
            e: d.first_section,
            h0: d.h0,
            ambient: d.ambient,
            very_primitive: d.very_primitive,
        }
    }
}

impl PrimitiveDescriptor {
    /// Validates the descriptor: `e` is absent exactly for the zero sheaf,
    /// and otherwise `h⁰(E(l)) = 0` for `l < e` and `h⁰(E(e)) ≠ 0`.
    pub fn new(
        name: impl Into<String>,
        rank: u64,
        first_section: Option<i64>,
        h0: SectionCounts,
        ambient: Option<Ambient>,
    ) -> Result<Self, ClassError> {
        let name = name.into();
        let invalid = |reason: String| ClassError::InvalidDescriptor {
            name: name.clone(),
            reason,
        };
        if name.is_empty() {
            return Err(invalid("empty name".into()));
        }
        match first_section {
            None => {
                if rank != 0 || !h0.is_identically_zero() {
                    return Err(invalid("e may be null only for the zero sheaf".into()));
                }
            }
            Some(e) => {
                if rank == 0 {
                    return Err(invalid("a nonzero ancestor must have positive rank".into()));
                }
                for (i, &v) in h0.table.iter().enumerate() {
                    let l = h0.low + i as i64;
                    if l < e && v != 0 {
                        return Err(invalid(format!("h0 is nonzero at {l} < e = {e}")));
                    }
                }
                if let Some(v) = h0.at(e)? {
                    if v <= 0 {
                        return Err(invalid(format!("h0 vanishes at e = {e}")));
                    }
                }
            }
        }
        Ok(PrimitiveDescriptor {
            name,
            rank,
            first_section,
            h0,
            ambient,
            very_primitive: true,
        })
    }

    /// The zero sheaf; it is the very primitive ancestor of every class that
    /// contains a direct sum of line bundles.
    pub fn zero(ambient: Option<Ambient>) -> Self {
        PrimitiveDescriptor {
            name: "zero".into(),
            rank: 0,
            first_section: None,
            h0: SectionCounts::zero(),
            ambient,
            very_primitive: true,
        }
    }

    /// `O_{Pⁿ}` as a descriptor named `pn:<n>`. It splits off a line bundle,
    /// so it is flagged as not very primitive.
    pub fn structure_sheaf(n: u32) -> Self {
        PrimitiveDescriptor {
            name: format!("pn:{n}"),
            rank: 1,
            first_section: Some(0),
            h0: SectionCounts {
                low: 0,
                table: Vec::new(),
                rule: H0Rule::projective_space(n),
            },
            ambient: Some(Ambient::ProjectiveSpace(n)),
            very_primitive: false,
        }
    }

    /// Built-in descriptors by name: `zero` and `pn:<n>`.
    pub fn builtin(name: &str, ambient: Option<Ambient>) -> Option<Self> {
        if name == "zero" {
            return Some(Self::zero(ambient));
        }
        match name.parse::<Ambient>() {
            Ok(Ambient::ProjectiveSpace(n)) => Some(Self::structure_sheaf(n)),
            Err(_) => None,
        }
    }

    pub fn with_ambient(mut self, ambient: Ambient) -> Self {
        self.ambient = Some(ambient);
        self
    }

    pub fn with_very_primitive(mut self, flag: bool) -> Self {
        self.very_primitive = flag;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// `e = inf{l | h⁰(E(l)) ≠ 0}`, `None` for the zero sheaf.
    pub fn first_section(&self) -> Option<i64> {
        self.first_section
    }

    pub fn section_counts(&self) -> &SectionCounts {
        &self.h0
    }

    pub fn ambient(&self) -> Option<Ambient> {
        self.ambient
    }

    pub fn is_very_primitive(&self) -> bool {
        self.very_primitive
    }

    pub fn is_zero(&self) -> bool {
        self.first_section.is_none()
    }

    /// `h⁰(E(l))`.
    pub fn h0(&self, l: i64) -> Result<i128, ClassError> {
        self.h0
            .at(l)?
            .ok_or_else(|| ClassError::UnspecifiedSections {
                name: self.name.clone(),
                degree: l,
            })
    }

    /// Same name and same data. Equal names with different data are a
    /// collision, not a different class.
    pub fn same_class(&self, other: &PrimitiveDescriptor) -> Result<(), ClassError> {
        if self.name != other.name {
            return Err(ClassError::AncestorMismatch {
                left: self.name.clone(),
                right: other.name.clone(),
            });
        }
        if self != other {
            return Err(ClassError::AncestorCollision {
                name: self.name.clone(),
            });
        }
        Ok(())
    }
}

/// Named descriptors; each name can be bound once.
#[derive(Clone, Debug, Default)]
pub struct DescriptorRegistry {
    by_name: BTreeMap<String, Arc<PrimitiveDescriptor>>,
    default_ambient: Option<Ambient>,
}

impl DescriptorRegistry {
    pub fn new(default_ambient: Option<Ambient>) -> Self {
        DescriptorRegistry {
            by_name: BTreeMap::new(),
            default_ambient,
        }
    }

    /// Registering an identical descriptor twice is a no-op.
    pub fn register(
        &mut self,
        desc: PrimitiveDescriptor,
    ) -> Result<Arc<PrimitiveDescriptor>, ClassError> {
        if let Some(existing) = self.by_name.get(desc.name()) {
            existing.same_class(&desc)?;
            return Ok(existing.clone());
        }
        let desc = Arc::new(desc);
        self.by_name.insert(desc.name().to_string(), desc.clone());
        Ok(desc)
    }

    pub fn resolve(&self, name: &str) -> Result<Arc<PrimitiveDescriptor>, ClassError> {
        if let Some(d) = self.by_name.get(name) {
            return Ok(d.clone());
        }
        PrimitiveDescriptor::builtin(name, self.default_ambient)
            .map(Arc::new)
            .ok_or_else(|| ClassError::UnknownAncestor {
                name: name.to_string(),
            })
    }
}

/// `0 → O(a) → E ⊕ O(b) → F → 0`, recorded by the twist lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub a: SortedSeq,
    pub b: SortedSeq,
}

/// A member of the biliaison class of `ancestor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassElement {
    ancestor: Arc<PrimitiveDescriptor>,
    sigma: SignedStep,
    m: u32,
    presentation: Option<Presentation>,
    min_rank: Option<u64>,
}

fn derived_rank(ancestor: &PrimitiveDescriptor, sigma: &SignedStep) -> Result<u64, ClassError> {
    let rank = ancestor.rank() as i128 + sigma.eventual() as i128;
    u64::try_from(rank).map_err(|_| ClassError::NegativeRank {
        ancestor_rank: ancestor.rank(),
        eventual: sigma.eventual(),
    })
}

impl ClassElement {
    /// The element presented by `0 → O(a) → E ⊕ O(b) → F → 0`.
    pub fn from_presentation(
        ancestor: impl Into<Arc<PrimitiveDescriptor>>,
        a: SortedSeq,
        b: SortedSeq,
        m: u32,
    ) -> Result<Self, ClassError> {
        let sigma = SignedStep::from_pair(&b, &a);
        let mut el = Self::from_sigma(ancestor, sigma, m)?;
        el.presentation = Some(Presentation { a, b });
        Ok(el)
    }

    /// An element known only through its Σ function.
    pub fn from_sigma(
        ancestor: impl Into<Arc<PrimitiveDescriptor>>,
        sigma: SignedStep,
        m: u32,
    ) -> Result<Self, ClassError> {
        if m == 0 {
            return Err(ClassError::InvalidLevel);
        }
        let ancestor = ancestor.into();
        derived_rank(&ancestor, &sigma)?;
        Ok(ClassElement {
            ancestor,
            sigma,
            m,
            presentation: None,
            min_rank: None,
        })
    }

    /// Attaches the minimal rank `r` of the class and checks the Σ profile
    /// against it.
    pub fn with_min_rank(mut self, r: u64) -> Result<Self, ClassError> {
        self.min_rank = Some(r);
        let report = self.validate();
        match report.violation {
            Some(v) => Err(ClassError::Inadmissible(v)),
            None => Ok(self),
        }
    }

    pub fn ancestor(&self) -> &PrimitiveDescriptor {
        &self.ancestor
    }

    pub fn ancestor_arc(&self) -> &Arc<PrimitiveDescriptor> {
        &self.ancestor
    }

    pub fn sigma(&self) -> &SignedStep {
        &self.sigma
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn min_rank(&self) -> Option<u64> {
        self.min_rank
    }

    pub fn rank(&self) -> u64 {
        derived_rank(&self.ancestor, &self.sigma).expect("checked at construction")
    }

    pub fn bounds(&self) -> ProfileBounds {
        ProfileBounds {
            first_section: self.ancestor.first_section(),
            ancestor_rank: self.ancestor.rank(),
            min_rank: self.min_rank.unwrap_or(0),
        }
    }

    pub fn validate(&self) -> ProfileReport {
        validate_profile(&self.sigma, &self.bounds())
    }

    /// The stored witness, or the canonical one read off the jumps of Σ.
    pub fn canonical_presentation(&self) -> Presentation {
        match &self.presentation {
            Some(p) => p.clone(),
            None => {
                let (b, a) = self.sigma.to_pair();
                Presentation { a, b }
            }
        }
    }

    /// Same class, same level; `other` need not be identical.
    pub fn check_comparable(&self, other: &ClassElement) -> Result<(), ClassError> {
        self.ancestor.same_class(&other.ancestor)?;
        if self.m != other.m {
            return Err(ClassError::LevelMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    /// `F` with `0 → O(a) → G ⊕ O(b) → F → 0`, where `G = self`:
    /// `Σ(F) = Σ(G) + Σ(b) − Σ(a)`.
    pub fn compose_ancestor(&self, a: &SortedSeq, b: &SortedSeq) -> Result<Self, ClassError> {
        let sigma = &self.sigma + &SignedStep::from_pair(b, a);
        derived_rank(&self.ancestor, &sigma)?;
        let presentation = self.presentation.as_ref().map(|p| Presentation {
            a: p.a.union(a),
            b: p.b.union(b),
        });
        Ok(ClassElement {
            ancestor: self.ancestor.clone(),
            sigma,
            m: self.m,
            presentation,
            min_rank: self.min_rank,
        })
    }

    /// `self ⪯ other`: pointwise comparison of Σ functions in one class.
    pub fn preceq(&self, other: &ClassElement) -> Result<bool, ClassError> {
        self.ancestor.same_class(&other.ancestor)?;
        Ok(self.sigma.leq(&other.sigma))
    }

    fn combine(&self, other: &ClassElement, sigma: SignedStep) -> Result<Self, ClassError> {
        self.check_comparable(other)?;
        let min_rank = match (self.min_rank, other.min_rank) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        let (b, a) = sigma.to_pair();
        let mut el = Self::from_sigma(self.ancestor.clone(), sigma, self.m)?;
        el.presentation = Some(Presentation { a, b });
        el.min_rank = min_rank;
        Ok(el)
    }

    /// Greatest lower bound under `⪯`: the pointwise minimum of Σ.
    pub fn meet(&self, other: &ClassElement) -> Result<Self, ClassError> {
        self.combine(other, self.sigma.pointwise_min(&other.sigma))
    }

    /// Pointwise maximum of Σ. Only available for `m = 1`, the level at
    /// which Σ functions of a class are known to form a lattice.
    pub fn join(&self, other: &ClassElement) -> Result<Self, ClassError> {
        self.check_comparable(other)?;
        if self.m != 1 {
            return Err(ClassError::JoinRequiresLevelOne { m: self.m });
        }
        self.combine(other, self.sigma.pointwise_max(&other.sigma))
    }

    /// `h⁰(F(l)) = h⁰(E(l)) + Σᵢ h⁰(O_X(l − bᵢ)) − Σⱼ h⁰(O_X(l − aⱼ))`.
    ///
    /// Exact when `H¹_*(O_X) = 0`, which holds for projective space.
    pub fn hilbert(&self, l: i64) -> Result<u128, ClassError> {
        let ambient = self
            .ancestor
            .ambient()
            .ok_or_else(|| ClassError::MissingAmbient {
                name: self.ancestor.name().to_string(),
            })?;
        let overflow = || ClassError::Overflow {
            what: "Hilbert function",
        };
        let p = self.canonical_presentation();
        let term = |d: i64| -> Result<i128, ClassError> {
            let shifted = l.checked_sub(d).ok_or_else(overflow)?;
            i128::try_from(ambient.h0(shifted)?).map_err(|_| overflow())
        };
        let mut total = self.ancestor.h0(l)?;
        for &bi in p.b.entries() {
            total = total.checked_add(term(bi)?).ok_or_else(overflow)?;
        }
        for &aj in p.a.entries() {
            total = total.checked_sub(term(aj)?).ok_or_else(overflow)?;
        }
        u128::try_from(total).map_err(|_| ClassError::NegativeHilbert {
            degree: l,
            value: total,
        })
    }
}

pub fn from_presentation(
    ancestor: impl Into<Arc<PrimitiveDescriptor>>,
    a: SortedSeq,
    b: SortedSeq,
    m: u32,
) -> Result<ClassElement, ClassError> {
    ClassElement::from_presentation(ancestor, a, b, m)
}

pub fn compose_ancestor(
    g: &ClassElement,
    a: &SortedSeq,
    b: &SortedSeq,
) -> Result<ClassElement, ClassError> {
    g.compose_ancestor(a, b)
}

pub fn preceq(f: &ClassElement, g: &ClassElement) -> Result<bool, ClassError> {
    f.preceq(g)
}

pub fn class_meet(f: &ClassElement, g: &ClassElement) -> Result<ClassElement, ClassError> {
    f.meet(g)
}

pub fn class_join(f: &ClassElement, g: &ClassElement) -> Result<ClassElement, ClassError> {
    f.join(g)
}

pub fn hilbert(f: &ClassElement, l: i64) -> Result<u128, ClassError> {
    f.hilbert(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> SortedSeq {
        SortedSeq::new(v.to_vec()).unwrap()
    }

    fn euler() -> ClassElement {
        let zero = PrimitiveDescriptor::zero(Some(Ambient::ProjectiveSpace(2)));
        from_presentation(zero, seq(&[1]), seq(&[0, 0, 0]), 2).unwrap()
    }

    /// Rank 3 ancestor with sections from degree 0 on, tabulated as P² would be.
    fn toy_ancestor(name: &str) -> PrimitiveDescriptor {
        let h0 = SectionCounts {
            low: -1,
            table: vec![0, 2, 7],
            rule: H0Rule::Terms(vec![BinomialTerm {
                coef: 3,
                n: 2,
                shift: 0,
            }]),
        };
        PrimitiveDescriptor::new(name, 3, Some(0), h0, Some(Ambient::ProjectiveSpace(2))).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(h0_pn(3, 2), Ok(10));
        assert_eq!(h0_pn(5, 0), Ok(1));
        assert_eq!(h0_pn(5, -1), Ok(0));
        assert_eq!(h0_pn(1, 7), Ok(8));
        assert_eq!(h0_pn(2, 4), Ok(15));
        assert!(matches!(
            h0_pn(40, i64::MAX),
            Err(ClassError::Overflow { .. })
        ));
    }

    #[test]
    fn euler_element() {
        let f = euler();
        assert_eq!(f.rank(), 2);
        assert_eq!(
            f.sigma()
                .deltas()
                .iter()
                .map(|(&k, &v)| (k, v))
                .collect::<Vec<_>>(),
            vec![(0, 3), (1, -1)]
        );
        assert_eq!(f.hilbert(0), Ok(3));
        assert_eq!(f.hilbert(-5), Ok(0));
        // 3·C(3,2) − C(2,2)
        assert_eq!(f.hilbert(1), Ok(8));
    }

    #[test]
    fn trivial_presentations() {
        let e = toy_ancestor("E");
        let f = from_presentation(e.clone(), seq(&[]), seq(&[]), 1).unwrap();
        assert!(f.sigma().is_zero());
        assert_eq!(f.rank(), 3);
        let g = from_presentation(e, seq(&[2, 5]), seq(&[2, 5]), 1).unwrap();
        assert!(g.sigma().is_zero());
    }

    #[test]
    fn negative_rank_rejected() {
        let zero = PrimitiveDescriptor::zero(None);
        let err = from_presentation(zero, seq(&[1]), seq(&[]), 1).unwrap_err();
        assert!(matches!(err, ClassError::NegativeRank { .. }));
        let zero = PrimitiveDescriptor::zero(None);
        assert_eq!(
            from_presentation(zero, seq(&[]), seq(&[]), 0).unwrap_err(),
            ClassError::InvalidLevel
        );
    }

    #[test]
    fn composition() {
        let e = toy_ancestor("E");
        let g = from_presentation(e, seq(&[]), seq(&[]), 1).unwrap();
        let f = g.compose_ancestor(&seq(&[]), &seq(&[4])).unwrap();
        assert_eq!(f.sigma(), &SignedStep::indicator(4));
        assert_eq!(f.rank(), 4);
        let same = g.compose_ancestor(&seq(&[1, 2]), &seq(&[1, 2])).unwrap();
        assert_eq!(same.sigma(), g.sigma());

        let f1 = g.compose_ancestor(&seq(&[3]), &seq(&[0, 5])).unwrap();
        let f2 = f1.compose_ancestor(&seq(&[1]), &seq(&[2])).unwrap();
        let direct = g.compose_ancestor(&seq(&[1, 3]), &seq(&[0, 2, 5])).unwrap();
        assert_eq!(f2.sigma(), direct.sigma());
        assert_eq!(f2.presentation(), direct.presentation());
    }

    #[test]
    fn preorder() {
        let f = euler();
        assert_eq!(f.preceq(&f), Ok(true));
        let bigger = f.compose_ancestor(&seq(&[]), &seq(&[0])).unwrap();
        assert_eq!(f.preceq(&bigger), Ok(true));
        assert_eq!(bigger.preceq(&f), Ok(false));
        let other = from_presentation(toy_ancestor("E"), seq(&[]), seq(&[]), 2).unwrap();
        assert!(matches!(
            f.preceq(&other),
            Err(ClassError::AncestorMismatch { .. })
        ));
    }

    #[test]
    fn collision_detected() {
        let e1 = toy_ancestor("E");
        let e2 =
            PrimitiveDescriptor::new("E", 2, Some(0), e1.section_counts().clone(), None).unwrap();
        let f = from_presentation(e1, seq(&[]), seq(&[]), 1).unwrap();
        let g = from_presentation(e2.clone(), seq(&[]), seq(&[]), 1).unwrap();
        assert_eq!(
            f.preceq(&g),
            Err(ClassError::AncestorCollision { name: "E".into() })
        );

        let mut reg = DescriptorRegistry::default();
        reg.register(toy_ancestor("E")).unwrap();
        reg.register(toy_ancestor("E")).unwrap();
        assert!(reg.register(e2).is_err());
        assert_eq!(reg.resolve("zero").unwrap().rank(), 0);
        assert_eq!(reg.resolve("pn:3").unwrap().rank(), 1);
        assert!(reg.resolve("nope").is_err());
    }

    #[test]
    fn meet_of_reductions_matches_shape_join() {
        let e = toy_ancestor("E");
        let f = from_presentation(e.clone(), seq(&[1, 3, 4]), seq(&[]), 1).unwrap();
        let g = from_presentation(e, seq(&[2, 2]), seq(&[]), 1).unwrap();
        let meet = class_meet(&f, &g).unwrap();
        assert_eq!(
            meet.sigma(),
            &SignedStep::from_pair(&seq(&[]), &seq(&[1, 2, 4]))
        );
        assert_eq!(meet.presentation().unwrap().a, seq(&[1, 2, 4]));
        let join = class_join(&f, &g).unwrap();
        assert_eq!(
            join.sigma(),
            &SignedStep::from_pair(&seq(&[]), &seq(&[2, 3]))
        );
        assert_eq!(class_meet(&f, &f).unwrap().sigma(), f.sigma());
        assert!(meet.rank() <= f.rank().min(g.rank()));
    }

    #[test]
    fn join_refused_above_level_one() {
        let f = euler();
        assert_eq!(
            class_join(&f, &f).unwrap_err(),
            ClassError::JoinRequiresLevelOne { m: 2 }
        );
        let g = ClassElement::from_sigma(f.ancestor_arc().clone(), f.sigma().clone(), 3).unwrap();
        assert!(matches!(
            class_meet(&f, &g),
            Err(ClassError::LevelMismatch { .. })
        ));
    }

    #[test]
    fn hilbert_additivity() {
        let f = euler();
        let g = f.compose_ancestor(&seq(&[]), &seq(&[2])).unwrap();
        for l in -3..6 {
            let extra = h0_pn(2, l - 2).unwrap();
            assert_eq!(g.hilbert(l).unwrap(), f.hilbert(l).unwrap() + extra);
        }
    }

    #[test]
    fn hilbert_detects_inadmissible_presentation() {
        // O(-5) → O(0) is not injective on sections in low degrees
        let zero = PrimitiveDescriptor::zero(Some(Ambient::ProjectiveSpace(2)));
        let f = from_presentation(zero, seq(&[0]), seq(&[5]), 1).unwrap();
        assert!(matches!(
            f.hilbert(0),
            Err(ClassError::NegativeHilbert { degree: 0, .. })
        ));
        let no_ambient =
            from_presentation(PrimitiveDescriptor::zero(None), seq(&[]), seq(&[0]), 1).unwrap();
        assert!(matches!(
            no_ambient.hilbert(0),
            Err(ClassError::MissingAmbient { .. })
        ));
    }

    #[test]
    fn descriptor_validation() {
        let counts = SectionCounts {
            low: -2,
            table: vec![0, 1],
            rule: H0Rule::Unspecified,
        };
        assert!(PrimitiveDescriptor::new("A", 2, Some(-1), counts.clone(), None).is_ok());
        // nonzero before e
        assert!(PrimitiveDescriptor::new("A", 2, Some(0), counts.clone(), None).is_err());
        // zero at e
        assert!(PrimitiveDescriptor::new("A", 2, Some(-2), counts.clone(), None).is_err());
        // null e for a nonzero sheaf
        assert!(PrimitiveDescriptor::new("A", 2, None, counts, None).is_err());
        // unspecified rule beyond the table
        let d = PrimitiveDescriptor::new(
            "B",
            1,
            Some(0),
            SectionCounts {
                low: 0,
                table: vec![1],
                rule: H0Rule::Unspecified,
            },
            None,
        )
        .unwrap();
        assert!(matches!(
            d.h0(1),
            Err(ClassError::UnspecifiedSections { degree: 1, .. })
        ));
    }

    #[test]
    fn descriptor_json_round_trip() {
        let json = r#"{"name":"zero","rank":0,"e":null,"h0":{"low":0,"table":[],"rule":"zero"}}"#;
        let d: PrimitiveDescriptor = serde_json::from_str(json).unwrap();
        assert_eq!(d, PrimitiveDescriptor::zero(None));
        assert_eq!(serde_json::to_string(&d).unwrap(), json);
        let t = toy_ancestor("E");
        let back: PrimitiveDescriptor =
            serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"name":"x","rank":2,"e":null,"h0":{"low":0,"table":[],"rule":"zero"}}"#;
        assert!(serde_json::from_str::<PrimitiveDescriptor>(bad).is_err());
    }
}
