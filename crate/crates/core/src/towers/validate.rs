use std::collections::BTreeSet;
use std::fmt;

use crate::knots::GenusValue;

use super::{Stage, StageKind, Tower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Tower,
    Initial,
    Prefix(usize),
    /// `pass` is `None` for checks that do not depend on the unrolling.
    Cycle {
        index: usize,
        pass: Option<usize>,
    },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Tower => f.write_str("tower"),
            Location::Initial => f.write_str("initial torus"),
            Location::Prefix(i) => write!(f, "prefix stage {i}"),
            Location::Cycle { index, pass: None } => write!(f, "cycle stage {index} (periodic)"),
            Location::Cycle { index, pass: Some(p) } => write!(f, "cycle stage {index} (periodic, pass {p})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    SchubertViolation,
    ConcentricityContract,
    MalformedStage,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::SchubertViolation => "SchubertViolation",
            ViolationKind::ConcentricityContract => "ConcentricityContract",
            ViolationKind::MalformedStage => "MalformedStage",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: Location,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("OK");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Genus knowledge about one torus of the unrolled tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainEntry {
    /// The stage that produced this torus (`Initial` for `T₀`).
    pub location: Location,
    /// Winding number of this torus in the previous one.
    pub winding: Option<u64>,
    /// Schubert lower bound for the genus.
    pub lower: u64,
    pub exact: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Track {
    pub lower: u64,
    pub exact: Option<u64>,
}

/// A tower that passed validation, together with its unrolled genus chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidTower {
    tower: Tower,
    chain: Vec<ChainEntry>,
}

impl ValidTower {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn into_inner(self) -> Tower {
        self.tower
    }

    pub fn name(&self) -> &str {
        &self.tower.name
    }

    /// Genus bounds along the unrolled tower: the prefix once, then the cycle
    /// for at least two periods.
    pub fn chain(&self) -> &[ChainEntry] {
        &self.chain
    }

    /// State of the torus entering the cycle after `pass` full periods.
    pub(crate) fn after_pass(&self, pass: usize) -> Track {
        let at = self.tower.prefix.len() + pass * self.tower.cycle.len();
        let e = &self.chain[at];
        Track {
            lower: e.lower,
            exact: e.exact,
        }
    }

    /// Chain entries for the tori produced during `pass` (1-based).
    pub(crate) fn pass_entries(&self, pass: usize) -> &[ChainEntry] {
        let start = self.tower.prefix.len() + (pass - 1) * self.tower.cycle.len() + 1;
        &self.chain[start..start + self.tower.cycle.len()]
    }
}

impl Tower {
    pub fn validate(&self) -> ValidationReport {
        analyse(self).0
    }

    pub fn into_valid(self) -> Result<ValidTower, ValidationReport> {
        let (report, chain) = analyse(&self);
        if report.is_ok() {
            Ok(ValidTower { tower: self, chain })
        } else {
            Err(report)
        }
    }
}

fn analyse(t: &Tower) -> (ValidationReport, Vec<ChainEntry>) {
    let mut violations = Vec::new();
    let mut push = |location, kind, message: String| {
        violations.push(Violation {
            location,
            kind,
            message,
        })
    };

    if t.cycle.is_empty() {
        push(
            Location::Tower,
            ViolationKind::MalformedStage,
            "cycle must be nonempty".into(),
        );
    }
    for (i, s) in t.prefix.iter().enumerate() {
        for (kind, msg) in check_stage(s) {
            push(Location::Prefix(i), kind, msg);
        }
    }
    for (index, s) in t.cycle.iter().enumerate() {
        for (kind, msg) in check_stage(s) {
            push(Location::Cycle { index, pass: None }, kind, msg);
        }
    }

    let initial = match t.initial.normalize() {
        Ok(k) => k.genus(),
        Err(e) => {
            push(Location::Initial, ViolationKind::MalformedStage, e.to_string());
            GenusValue::Unknown { lower: 0, upper: None }
        }
    };
    let mut track = Track {
        lower: initial.lower(),
        exact: initial.exact(),
    };
    if let Some(d) = t.initial_genus {
        match initial {
            GenusValue::Exact(g) if g != d => push(
                Location::Initial,
                ViolationKind::MalformedStage,
                format!("declared genus {d} contradicts the knot's genus {g}"),
            ),
            _ if d < track.lower => push(
                Location::Initial,
                ViolationKind::MalformedStage,
                format!("declared genus {d} is below the knot's genus bound {}", track.lower),
            ),
            _ => {
                track = Track {
                    lower: d,
                    exact: Some(d),
                }
            }
        }
    }

    let mut chain = vec![ChainEntry {
        location: Location::Initial,
        winding: None,
        lower: track.lower,
        exact: track.exact,
    }];
    let record = |track: Track, location, stage: &Stage, chain: &mut Vec<ChainEntry>| {
        chain.push(ChainEntry {
            location,
            winding: Some(stage.winding),
            lower: track.lower,
            exact: track.exact,
        })
    };

    for (i, s) in t.prefix.iter().enumerate() {
        let (next, err) = step(track, s);
        if let Some((kind, msg)) = err {
            push(Location::Prefix(i), kind, msg);
        }
        track = next;
        record(track, Location::Prefix(i), s, &mut chain);
    }

    if !t.cycle.is_empty() {
        // Enough periods for a growing chain to overtake every declared value.
        let max_declared = t.cycle.iter().filter_map(|s| s.declared_genus).max();
        let limit = max_declared.map_or(2, |d| (d as usize).saturating_add(3).max(2));
        let mut starts = vec![track];
        let mut reported = BTreeSet::new();
        for pass in 1..=limit {
            for (index, s) in t.cycle.iter().enumerate() {
                let (next, err) = step(track, s);
                if let Some((kind, msg)) = err {
                    if reported.insert(index) {
                        push(
                            Location::Cycle {
                                index,
                                pass: Some(pass),
                            },
                            kind,
                            msg,
                        );
                    }
                }
                track = next;
                record(
                    track,
                    Location::Cycle {
                        index,
                        pass: Some(pass),
                    },
                    s,
                    &mut chain,
                );
            }
            if !reported.is_empty() || (pass >= 2 && starts.contains(&track)) {
                break;
            }
            starts.push(track);
        }
    }

    (ValidationReport { violations }, chain)
}

fn step(prev: Track, s: &Stage) -> (Track, Option<(ViolationKind, String)>) {
    let w = s.winding;
    let pl = s.pattern_lower();
    let pe = s.pattern_genus;
    let (chain, exact) = if w >= 1 {
        let chain = w.saturating_mul(prev.lower).saturating_add(pl);
        let exact = match &s.kind {
            StageKind::CoreParallel => prev.exact,
            StageKind::Swallow(_) => prev.exact.zip(pe).map(|(a, b)| a + b),
            // Inside an unknotted torus the satellite is the pattern itself.
            _ if prev.exact == Some(0) => pe,
            _ => None,
        };
        (chain, exact)
    } else if prev.exact == Some(0) {
        (pl, pe)
    } else {
        (0, None)
    };
    let Some(d) = s.declared_genus else {
        return (Track { lower: chain, exact }, None);
    };
    let fallback = Track { lower: chain, exact };
    if w >= 1 && d < chain {
        let msg = format!(
            "declared genus {d} violates g(T') >= w*g(T) + g(pattern) = {w}*{} + {pl} = {chain}",
            prev.lower
        );
        return (fallback, Some((ViolationKind::SchubertViolation, msg)));
    }
    if let Some(e) = exact.filter(|&e| e != d) {
        let msg = format!("declared genus {d} contradicts the exact genus {e}");
        return (fallback, Some((ViolationKind::MalformedStage, msg)));
    }
    if d < chain {
        let msg = format!("declared genus {d} is below the pattern genus bound {chain}");
        return (fallback, Some((ViolationKind::MalformedStage, msg)));
    }
    (
        Track {
            lower: chain.max(d),
            exact: Some(d),
        },
        None,
    )
}

fn check_stage(s: &Stage) -> Vec<(ViolationKind, String)> {
    use ViolationKind::*;
    let mut out = Vec::new();
    let delta_unit = s.pattern_delta.as_ref().map(|d| d.is_unit());
    match &s.kind {
        StageKind::CoreParallel => {
            if s.winding != 1 {
                out.push((
                    MalformedStage,
                    format!("core_parallel stage has winding {} (needs 1)", s.winding),
                ));
            }
            if s.pattern_genus != Some(0) {
                out.push((MalformedStage, "core_parallel stage needs pattern genus 0".into()));
            }
            if delta_unit == Some(false) {
                out.push((
                    MalformedStage,
                    "core_parallel stage needs a trivial pattern polynomial".into(),
                ));
            }
            if !s.concentric {
                out.push((MalformedStage, "core_parallel stages are concentric".into()));
            }
        }
        StageKind::Swallow(k) => match k.normalize() {
            Err(e) => out.push((MalformedStage, format!("swallowed knot: {e}"))),
            Ok(k) => {
                if s.winding != 1 {
                    out.push((
                        MalformedStage,
                        format!("swallow stage has winding {} (needs 1)", s.winding),
                    ));
                }
                if let (Some(g), Some(kg)) = (s.pattern_genus, k.genus().exact()) {
                    if g != kg {
                        out.push((
                            MalformedStage,
                            format!("pattern genus {g} differs from genus {kg} of {k}"),
                        ));
                    }
                }
                if let (Some(d), Ok(kd)) = (&s.pattern_delta, k.alexander()) {
                    if !d.equal_up_to_unit(&kd) {
                        out.push((
                            MalformedStage,
                            format!("pattern polynomial {d} differs from that of {k}"),
                        ));
                    }
                }
                if s.concentric {
                    out.push((MalformedStage, "swallow stages are not concentric".into()));
                }
            }
        },
        StageKind::Wind => {
            if s.winding == 0 {
                out.push((MalformedStage, "wind stage needs winding >= 1".into()));
            }
            if s.pattern_genus != Some(0) {
                out.push((MalformedStage, "wind stage needs pattern genus 0".into()));
            }
            if delta_unit == Some(false) {
                out.push((MalformedStage, "wind stage needs a trivial pattern polynomial".into()));
            }
        }
        StageKind::Generic => {}
    }
    if s.concentric && (s.winding != 1 || s.pattern_genus != Some(0) || delta_unit == Some(false)) {
        out.push((
            ConcentricityContract,
            format!(
                "concentric stage needs winding 1 and a trivial pattern (winding {}, pattern genus {})",
                s.winding,
                s.pattern_genus.map_or("unknown".to_string(), |g| g.to_string())
            ),
        ));
    }
    if let Some(d) = &s.pattern_delta {
        if d.evaluate_at_one().magnitude() != &1u32.into() {
            out.push((
                MalformedStage,
                format!("pattern polynomial {d} does not satisfy |Δ(1)| = 1"),
            ));
        } else if !d.equal_up_to_unit(&d.invert_variable()) {
            out.push((MalformedStage, format!("pattern polynomial {d} is not symmetric")));
        } else if let (Some(g), Ok(b)) = (s.pattern_genus, d.breadth()) {
            if b > 2 * g {
                out.push((
                    MalformedStage,
                    format!("pattern polynomial {d} has breadth {b} > 2 * pattern genus {g}"),
                ));
            }
        }
    }
    out
}
