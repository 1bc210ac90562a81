use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::knots::PrimeKey;

use super::{GenusResult, H1Class, PreconditionFailed, StageKind, ValidTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomeoRule {
    /// Attractors of homeomorphisms have finite genus.
    InfiniteGenus,
    /// Finite genus with non-cyclic Ȟ¹ forces every natural neighbourhood to
    /// be unknotted.
    KnottedWithH1NotZ,
}

/// Whether the set can be an attractor for a homeomorphism of `R³`.
///
/// `NoObstructionFound` is not a realizability claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomeoVerdict {
    Obstructed(HomeoRule),
    NoObstructionFound,
}

impl HomeoVerdict {
    pub fn is_obstructed(self) -> bool {
        matches!(self, HomeoVerdict::Obstructed(_))
    }

    pub fn tag(self) -> &'static str {
        match self {
            HomeoVerdict::Obstructed(HomeoRule::InfiniteGenus) => "obstructed:infinite_genus",
            HomeoVerdict::Obstructed(HomeoRule::KnottedWithH1NotZ) => "obstructed:knotted_with_h1_not_z",
            HomeoVerdict::NoObstructionFound => "no_obstruction_found",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowRule {
    EventuallyConcentric,
    H1NotZ,
    PersistentlyNonConcentric,
}

/// Whether the set can be an attractor for a flow on `R³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowVerdict {
    Realizable(FlowRule),
    NotRealizable(FlowRule),
}

impl FlowVerdict {
    pub fn is_realizable(self) -> bool {
        matches!(self, FlowVerdict::Realizable(_))
    }

    pub fn tag(self) -> &'static str {
        match self {
            FlowVerdict::Realizable(FlowRule::EventuallyConcentric) => "realizable:eventually_concentric",
            FlowVerdict::NotRealizable(FlowRule::H1NotZ) => "not_realizable:h1_not_z",
            FlowVerdict::NotRealizable(FlowRule::PersistentlyNonConcentric) => {
                "not_realizable:persistently_non_concentric"
            }
            FlowVerdict::Realizable(_) => "realizable",
            FlowVerdict::NotRealizable(_) => "not_realizable",
        }
    }
}

impl ValidTower {
    /// Some torus of a natural neighbourhood basis is known to be knotted.
    pub fn is_provably_knotted(&self) -> bool {
        let natural_from = self
            .tower()
            .prefix
            .iter()
            .rposition(|s| s.winding == 0)
            .map_or(0, |z| z + 1);
        self.chain()[natural_from..].iter().any(|e| e.lower > 0)
    }

    pub fn homeo_verdict(&self) -> HomeoVerdict {
        if let GenusResult::Infinite(_) = self.genus() {
            return HomeoVerdict::Obstructed(HomeoRule::InfiniteGenus);
        }
        if self.cech_h1().h1 == H1Class::NotFinitelyGenerated && self.is_provably_knotted() {
            return HomeoVerdict::Obstructed(HomeoRule::KnottedWithH1NotZ);
        }
        HomeoVerdict::NoObstructionFound
    }

    pub fn flow_verdict(&self) -> FlowVerdict {
        if self.cech_h1().h1 != H1Class::Z {
            return FlowVerdict::NotRealizable(FlowRule::H1NotZ);
        }
        if self.tower().cycle.iter().all(|s| s.concentric) {
            FlowVerdict::Realizable(FlowRule::EventuallyConcentric)
        } else {
            FlowVerdict::NotRealizable(FlowRule::PersistentlyNonConcentric)
        }
    }

    /// The cycle has both concentric and non-concentric stages.
    pub fn has_mixed_cycle(&self) -> bool {
        let cycle = &self.tower().cycle;
        cycle.iter().any(|s| s.concentric) && cycle.iter().any(|s| !s.concentric)
    }

    /// Every toroidal set has `r = 1`.
    pub fn r(&self) -> RValue {
        RValue::Finite(1)
    }

    /// Prime summands of a connected-sum tower; periodic summands occur
    /// infinitely often.
    pub fn summand_multiset(&self) -> Result<BTreeMap<PrimeKey, Multiplicity>, PreconditionFailed> {
        let t = self.tower();
        let keys = |k: &crate::knots::KnotExpr| -> Result<Vec<PrimeKey>, PreconditionFailed> {
            let primes = k
                .normalize()
                .and_then(|k| k.prime_summands())
                .map_err(|e| PreconditionFailed::NotConnectedSum(e.to_string()))?;
            primes
                .iter()
                .map(|p| {
                    p.prime_key()
                        .ok_or_else(|| PreconditionFailed::NotConnectedSum(format!("{p} is not prime")))
                })
                .collect()
        };
        let mut out: BTreeMap<PrimeKey, Multiplicity> = BTreeMap::new();
        let mut add = |key: PrimeKey, periodic: bool| {
            let m = out.entry(key).or_insert(Multiplicity::Finite(0));
            *m = match (*m, periodic) {
                (Multiplicity::Omega, _) | (_, true) => Multiplicity::Omega,
                (Multiplicity::Finite(n), false) => Multiplicity::Finite(n + 1),
            };
        };
        for key in keys(&t.initial)? {
            add(key, false);
        }
        let stages = t
            .prefix
            .iter()
            .map(|s| (s, false))
            .chain(t.cycle.iter().map(|s| (s, true)));
        for (i, (s, periodic)) in stages.enumerate() {
            match &s.kind {
                StageKind::CoreParallel => {}
                StageKind::Swallow(k) => {
                    for key in keys(k)? {
                        add(key, periodic);
                    }
                }
                other => {
                    return Err(PreconditionFailed::NotConnectedSum(format!(
                        "stage {i} is a {} stage",
                        other.tag()
                    )))
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    /// Countably infinite.
    Omega,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Omega => f.write_str("omega"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequivalence {
    /// A prime knot occurring with different multiplicities.
    pub witness: PrimeKey,
    pub left: Multiplicity,
    pub right: Multiplicity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumVerdict {
    Inequivalent(Inequivalence),
    /// Equal summand multisets do not prove equivalence.
    Inconclusive,
}

/// Compares the prime-summand multisets of two connected-sum towers.
pub fn distinguish_connected_sums(a: &ValidTower, b: &ValidTower) -> Result<SumVerdict, PreconditionFailed> {
    let (ma, mb) = (a.summand_multiset()?, b.summand_multiset()?);
    let keys: BTreeSet<&PrimeKey> = ma.keys().chain(mb.keys()).collect();
    let zero = Multiplicity::Finite(0);
    for key in keys {
        let (l, r) = (*ma.get(key).unwrap_or(&zero), *mb.get(key).unwrap_or(&zero));
        if l != r {
            return Ok(SumVerdict::Inequivalent(Inequivalence {
                witness: key.clone(),
                left: l,
                right: r,
            }));
        }
    }
    Ok(SumVerdict::Inconclusive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for RValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RValue::Finite(n) => write!(f, "{n}"),
            RValue::Infinite => f.write_str("infinite"),
        }
    }
}

/// First Čech cohomology as seen by the r-invariant classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum H1Input {
    Zero,
    Z,
    /// Nonzero and not isomorphic to `Z`.
    Other,
}

impl From<H1Class> for H1Input {
    fn from(c: H1Class) -> Self {
        match c {
            H1Class::Trivial => H1Input::Zero,
            H1Class::Z => H1Input::Z,
            H1Class::NotFinitelyGenerated => H1Input::Other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RInconclusive {
    HypothesesNotMet,
    ConnectedCaseWouldBeCellular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RClassification {
    Toroidal,
    ToroidalComponentPlusCellular,
    Inconclusive(RInconclusive),
}

impl RClassification {
    pub fn tag(self) -> &'static str {
        match self {
            RClassification::Toroidal => "toroidal",
            RClassification::ToroidalComponentPlusCellular => "toroidal_component_plus_cellular",
            RClassification::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn note(self) -> Option<&'static str> {
        match self {
            RClassification::Inconclusive(RInconclusive::ConnectedCaseWouldBeCellular) => {
                Some("connected case would be cellular")
            }
            RClassification::Inconclusive(RInconclusive::HypothesesNotMet) => Some("hypotheses not met"),
            _ => None,
        }
    }
}

/// Reads off what a compactum is from its r-invariant and cohomology.
pub fn classify_by_r(r: RValue, h1: H1Input, h2_trivial: bool, connected: bool) -> RClassification {
    match (r, h1, h2_trivial) {
        (RValue::Finite(1), H1Input::Other, true) if connected => RClassification::Toroidal,
        (RValue::Finite(1), H1Input::Other, true) => RClassification::ToroidalComponentPlusCellular,
        (RValue::Finite(0), _, true) => RClassification::Inconclusive(RInconclusive::ConnectedCaseWouldBeCellular),
        _ => RClassification::Inconclusive(RInconclusive::HypothesesNotMet),
    }
}
