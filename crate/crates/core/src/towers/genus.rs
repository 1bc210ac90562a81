use std::fmt;

use thiserror::Error;

use crate::knots::KnotExpr;
use crate::laurent::LaurentPoly;

use super::{H1Class, Stage, StageKind, Tower, ValidTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfiniteReason {
    /// Nontrivial patterns recur along a natural basis.
    StronglyKnotted,
    /// A knotted torus is followed by a recurring winding number `>= 2`.
    WindingBlowup,
}

/// Genus of the toroidal set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusResult {
    Exact(u64),
    Infinite(InfiniteReason),
    LowerBound(u64),
}

impl fmt::Display for GenusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusResult::Exact(g) => write!(f, "{g}"),
            GenusResult::Infinite(_) => f.write_str("infinite"),
            GenusResult::LowerBound(g) => write!(f, ">={g}"),
        }
    }
}

/// Which branch of the decision procedure produced the genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusReason {
    StronglyKnotted,
    WindingBlowup,
    /// Every stage after the prefix carries the exact value forward.
    ExactnessPreserved,
    /// Declared values pin the periodic part to a common value.
    DeclaredConsistentChain,
    /// Only the Schubert lower bound is known.
    SchubertChain,
    /// A winding-zero stage recurs, so the basis is not natural.
    TrivialCohomology,
}

impl GenusReason {
    pub fn tag(self) -> &'static str {
        match self {
            GenusReason::StronglyKnotted => "strongly_knotted",
            GenusReason::WindingBlowup => "winding_blowup",
            GenusReason::ExactnessPreserved => "exactness_preserved",
            GenusReason::DeclaredConsistentChain => "declared_consistent_chain",
            GenusReason::SchubertChain => "schubert_chain",
            GenusReason::TrivialCohomology => "trivial_cohomology",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionFailed {
    #[error("first cohomology is not Z")]
    H1NotZ,
    #[error("genus is infinite")]
    InfiniteGenus,
    #[error("genus is not known exactly")]
    GenusNotExact,
    #[error("invariant unavailable: {0}")]
    InvariantUnavailable(String),
    #[error("not a connected-sum tower: {0}")]
    NotConnectedSum(String),
}

impl PreconditionFailed {
    pub fn tag(&self) -> &'static str {
        match self {
            PreconditionFailed::H1NotZ => "h1_not_z",
            PreconditionFailed::InfiniteGenus => "infinite_genus",
            PreconditionFailed::GenusNotExact => "genus_not_exact",
            PreconditionFailed::InvariantUnavailable(_) => "invariant_unavailable",
            PreconditionFailed::NotConnectedSum(_) => "not_connected_sum",
        }
    }
}

impl ValidTower {
    pub fn genus(&self) -> GenusResult {
        self.genus_derivation().0
    }

    pub fn genus_derivation(&self) -> (GenusResult, GenusReason) {
        let t = self.tower();
        if t.cycle.iter().any(|s| s.winding == 0) {
            // Unknotted tori recur arbitrarily deep; nothing else is forced.
            let unknotted_recurs = self
                .pass_entries(1)
                .iter()
                .chain(self.pass_entries(2))
                .any(|e| e.exact == Some(0));
            let g = if unknotted_recurs {
                GenusResult::Exact(0)
            } else {
                GenusResult::LowerBound(0)
            };
            return (g, GenusReason::TrivialCohomology);
        }
        if t.cycle.iter().any(|s| s.pattern_lower() > 0) {
            return (
                GenusResult::Infinite(InfiniteReason::StronglyKnotted),
                GenusReason::StronglyKnotted,
            );
        }
        if t.cycle.iter().any(|s| s.winding >= 2) && self.after_pass(1).lower > 0 {
            return (
                GenusResult::Infinite(InfiniteReason::WindingBlowup),
                GenusReason::WindingBlowup,
            );
        }
        let (first, second) = (self.after_pass(1), self.after_pass(2));
        if let (true, Some(g)) = (first == second, second.exact) {
            let reason = if t.cycle.iter().any(|s| s.declared_genus.is_some()) {
                GenusReason::DeclaredConsistentChain
            } else {
                GenusReason::ExactnessPreserved
            };
            return (GenusResult::Exact(g), reason);
        }
        (GenusResult::LowerBound(second.lower), GenusReason::SchubertChain)
    }

    pub fn is_unknotted(&self) -> bool {
        self.genus() == GenusResult::Exact(0)
    }

    fn require_exact_genus(&self) -> Result<u64, PreconditionFailed> {
        match self.genus() {
            GenusResult::Exact(g) => Ok(g),
            GenusResult::Infinite(_) => Err(PreconditionFailed::InfiniteGenus),
            GenusResult::LowerBound(_) => Err(PreconditionFailed::GenusNotExact),
        }
    }

    /// The Alexander polynomial shared by all sufficiently deep tori.
    pub fn alexander(&self) -> Result<LaurentPoly, PreconditionFailed> {
        if self.cech_h1().h1 != H1Class::Z {
            return Err(PreconditionFailed::H1NotZ);
        }
        self.require_exact_genus()?;
        let t = self.tower();
        let mut delta = t
            .initial
            .normalize()
            .and_then(|k| k.alexander())
            .map_err(|e| PreconditionFailed::InvariantUnavailable(e.to_string()))?;
        // Periodic stages have winding one and, the genus being finite,
        // trivial patterns: they leave the polynomial unchanged.
        for (i, s) in t.prefix.iter().enumerate() {
            let pattern = s.effective_delta().ok_or_else(|| {
                PreconditionFailed::InvariantUnavailable(format!("pattern polynomial of prefix stage {i}"))
            })?;
            delta = if s.winding == 0 {
                pattern
            } else {
                &pattern * &delta.subst_power(s.winding).expect("winding is nonzero")
            };
        }
        Ok(delta.canonical_form())
    }

    /// Re-embeds a finite-genus tower so that every torus is unknotted.
    pub fn reembed_unknotted(&self) -> Result<Tower, PreconditionFailed> {
        self.require_exact_genus()?;
        if self.is_unknotted() {
            return Ok(self.tower().clone());
        }
        let t = self.tower();
        let cycle = t
            .cycle
            .iter()
            .map(|s| match s.kind {
                StageKind::CoreParallel | StageKind::Swallow(_) => Stage::core_parallel(),
                StageKind::Wind => Stage::wind(s.winding),
                StageKind::Generic => Stage::generic(s.winding, Some(0)).concentric(s.concentric),
            })
            .collect();
        Ok(Tower::new(
            format!("{}-reembedded", t.name),
            KnotExpr::Unknot,
            vec![],
            cycle,
        ))
    }
}
