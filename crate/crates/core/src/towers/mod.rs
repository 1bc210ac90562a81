//! Toroidal sets presented as eventually periodic towers of nested solid tori.
//!
//! A [`Tower`] records the knot type of the outermost torus `T₀` and, for
//! each nesting step `Tᵢ ⊃ Tᵢ₊₁`, a [`Stage`]: the winding number, the
//! pattern data and whether the two tori are concentric. The stages are split
//! into a finite `prefix` followed by a `cycle` that repeats forever.
//!
//! Classifiers only run on a [`ValidTower`], obtained from
//! [`Tower::into_valid`] after every stage contract and every Schubert
//! inequality along the unrolled tower has been checked.
//!
//! ```
//! use toroidal::knots::torus;
//! use toroidal::towers::{GenusResult, InfiniteReason, Stage, Tower};
//!
//! let tower = Tower::new("knotted solenoid", torus(2, 3), vec![], vec![Stage::wind(2)]);
//! let valid = tower.into_valid().unwrap();
//! assert_eq!(valid.genus(), GenusResult::Infinite(InfiniteReason::WindingBlowup));
//! ```

mod cohomology;
mod genus;
mod json;
mod validate;
mod verdicts;

pub use cohomology::{CohProfile, Exponent, H1Class, Steinitz};
pub use genus::{GenusReason, GenusResult, InfiniteReason, PreconditionFailed};
pub use json::TowerFileError;
pub use validate::{ChainEntry, Location, ValidTower, ValidationReport, Violation, ViolationKind};
pub use verdicts::{
    classify_by_r, distinguish_connected_sums, FlowRule, FlowVerdict, H1Input, HomeoRule, HomeoVerdict, Inequivalence,
    Multiplicity, RClassification, RInconclusive, RValue, SumVerdict,
};

use crate::knots::KnotExpr;
use crate::laurent::LaurentPoly;

/// What a nesting step does geometrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StageKind {
    /// `Tᵢ₊₁` is a thinner copy of `Tᵢ` around the same core.
    CoreParallel,
    /// The core of `Tᵢ₊₁` is the core of `Tᵢ` with the knot added as a local
    /// summand.
    Swallow(KnotExpr),
    /// `Tᵢ₊₁` winds `w >= 1` times around `Tᵢ` with an unknotted pattern.
    Wind,
    /// Anything else, described only by its numerical data.
    Generic,
}

impl StageKind {
    pub fn tag(&self) -> &'static str {
        match self {
            StageKind::CoreParallel => "core_parallel",
            StageKind::Swallow(_) => "swallow",
            StageKind::Wind => "wind",
            StageKind::Generic => "generic",
        }
    }
}

/// One nesting step `Tᵢ ⊃ Tᵢ₊₁`. `None` marks unknown data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub kind: StageKind,
    pub winding: u64,
    pub pattern_genus: Option<u64>,
    pub pattern_delta: Option<LaurentPoly>,
    /// Externally asserted exact genus of `Tᵢ₊₁`.
    pub declared_genus: Option<u64>,
    pub concentric: bool,
}

impl Stage {
    pub fn core_parallel() -> Self {
        Self {
            kind: StageKind::CoreParallel,
            winding: 1,
            pattern_genus: Some(0),
            pattern_delta: None,
            declared_genus: None,
            concentric: true,
        }
    }

    /// Pattern genus and Alexander polynomial are taken from the knot when
    /// they are known.
    pub fn swallow(knot: KnotExpr) -> Self {
        let normal = knot.normalize();
        Self {
            pattern_genus: normal.as_ref().ok().and_then(|k| k.genus().exact()),
            pattern_delta: normal.as_ref().ok().and_then(|k| k.alexander().ok()),
            kind: StageKind::Swallow(normal.unwrap_or(knot)),
            winding: 1,
            declared_genus: None,
            concentric: false,
        }
    }

    pub fn wind(w: u64) -> Self {
        Self {
            kind: StageKind::Wind,
            winding: w,
            pattern_genus: Some(0),
            pattern_delta: None,
            declared_genus: None,
            concentric: false,
        }
    }

    pub fn generic(w: u64, pattern_genus: Option<u64>) -> Self {
        Self {
            kind: StageKind::Generic,
            winding: w,
            pattern_genus,
            pattern_delta: None,
            declared_genus: None,
            concentric: false,
        }
    }

    pub fn declared(mut self, genus: u64) -> Self {
        self.declared_genus = Some(genus);
        self
    }

    pub fn concentric(mut self, concentric: bool) -> Self {
        self.concentric = concentric;
        self
    }

    pub fn with_delta(mut self, delta: LaurentPoly) -> Self {
        self.pattern_delta = Some(delta);
        self
    }

    /// Best known lower bound for the pattern genus.
    pub(crate) fn pattern_lower(&self) -> u64 {
        if let Some(g) = self.pattern_genus {
            return g;
        }
        if let StageKind::Swallow(k) = &self.kind {
            return k.genus().lower();
        }
        self.pattern_delta
            .as_ref()
            .and_then(|d| d.breadth().ok())
            .map_or(0, |b| b.div_ceil(2))
    }

    /// Alexander polynomial of the pattern, when determined by the data.
    pub(crate) fn effective_delta(&self) -> Option<LaurentPoly> {
        if let Some(d) = &self.pattern_delta {
            return Some(d.canonical_form());
        }
        if let StageKind::Swallow(k) = &self.kind {
            return k.alexander().ok();
        }
        // A genus-zero pattern is an unknot in R³.
        (self.pattern_genus == Some(0)).then(LaurentPoly::one)
    }
}

/// An eventually periodic nested sequence of solid tori.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub name: String,
    /// Core knot type of `T₀`.
    pub initial: KnotExpr,
    pub initial_genus: Option<u64>,
    pub prefix: Vec<Stage>,
    /// Repeats forever; must be nonempty.
    pub cycle: Vec<Stage>,
}

impl Tower {
    pub fn new(name: impl Into<String>, initial: KnotExpr, prefix: Vec<Stage>, cycle: Vec<Stage>) -> Self {
        Self {
            name: name.into(),
            initial,
            initial_genus: None,
            prefix,
            cycle,
        }
    }

    /// Iterates over the first `passes` periods of the unrolled tower.
    pub fn unrolled(&self, passes: usize) -> impl Iterator<Item = (Location, &Stage)> {
        let prefix = self.prefix.iter().enumerate().map(|(i, s)| (Location::Prefix(i), s));
        let cycle = (1..=passes).flat_map(move |pass| {
            self.cycle.iter().enumerate().map(move |(index, s)| {
                (
                    Location::Cycle {
                        index,
                        pass: Some(pass),
                    },
                    s,
                )
            })
        });
        prefix.chain(cycle)
    }
}
