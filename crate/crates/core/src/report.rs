//! Classifier reports for towers.
//!
//! The JSON form has sorted keys and a fixed layout, so identical towers give
//! byte-identical reports. Every classifier result is cited in `citations`
//! with the rule that fired and the statement behind it.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::towers::{
    classify_by_r, FlowRule, FlowVerdict, GenusReason, GenusResult, H1Class, HomeoRule, HomeoVerdict, RClassification,
    ValidTower,
};

pub const SCHEMA: &str = "toroidal-report/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Citation {
    pub rule: &'static str,
    pub statement: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub subject: String,
    pub h1: H1Class,
    pub steinitz: Option<String>,
    pub h2_trivial: bool,
    pub genus: GenusResult,
    pub genus_reason: GenusReason,
    pub unknotted: bool,
    pub complement_pi1_abelian: Option<bool>,
    /// The stabilized polynomial, or the tag of the failed precondition.
    pub alexander: Result<String, &'static str>,
    pub homeo: HomeoVerdict,
    pub flow: FlowVerdict,
    pub r: u64,
    pub r_classification: RClassification,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(t: &ValidTower) -> Self {
        let coh = t.cech_h1();
        let (genus, genus_reason) = t.genus_derivation();
        let homeo = t.homeo_verdict();
        let flow = t.flow_verdict();
        let r_classification = classify_by_r(t.r(), coh.h1.into(), coh.h2_trivial, true);
        let complement_pi1_abelian = match (coh.h1, genus) {
            (H1Class::Trivial, _) => None,
            (_, GenusResult::Exact(g)) => Some(g == 0),
            (_, GenusResult::Infinite(_)) => Some(false),
            (_, GenusResult::LowerBound(g)) => (g > 0).then_some(false),
        };

        let mut notes = Vec::new();
        if coh.steinitz.is_some() {
            notes.push(
                "steinitz is an extension of the H1 classification; changing finitely many finite exponents gives an isomorphic group"
                    .to_string(),
            );
        }
        if homeo == HomeoVerdict::NoObstructionFound {
            notes.push("no_obstruction_found is not a realizability guarantee".to_string());
        }
        if flow == FlowVerdict::NotRealizable(FlowRule::PersistentlyNonConcentric) && t.has_mixed_cycle() {
            notes.push(
                "mixed cycle: concentric and non-concentric stages alternate; the verdict extrapolates from the recurring non-concentric stage"
                    .to_string(),
            );
        }
        if let Some(note) = r_classification.note() {
            notes.push(format!("r_classification: {note}"));
        }

        Self {
            subject: t.name().to_string(),
            h1: coh.h1,
            steinitz: coh.steinitz.map(|s| s.to_string()),
            h2_trivial: coh.h2_trivial,
            genus,
            genus_reason,
            unknotted: t.is_unknotted(),
            complement_pi1_abelian,
            alexander: t.alexander().map(|d| d.to_string()).map_err(|e| e.tag()),
            homeo,
            flow,
            r: match t.r() {
                crate::towers::RValue::Finite(n) => n,
                crate::towers::RValue::Infinite => u64::MAX,
            },
            r_classification,
            notes,
        }
    }

    pub fn citations(&self) -> Vec<(&'static str, Citation)> {
        let cite = |rule, statement| Citation { rule, statement };
        let h1 = cite(
            "cohomology_trichotomy",
            "H1 is the direct limit of the winding maps: 0 if windings vanish infinitely often, Z if they are eventually 1, not finitely generated if windings >= 2 recur",
        );
        let genus = match self.genus_reason {
            GenusReason::StronglyKnotted => cite(
                "strongly_knotted",
                "along a natural basis g(T') >= w*g(T) + g(pattern); recurring nontrivial patterns make the genus infinite",
            ),
            GenusReason::WindingBlowup => cite(
                "winding_blowup",
                "along a natural basis g(T') >= w*g(T) + g(pattern); a knotted torus followed by recurring windings >= 2 makes the genus infinite",
            ),
            GenusReason::ExactnessPreserved | GenusReason::DeclaredConsistentChain => cite(
                "genus_limit",
                "the genus of a toroidal set is the limit of the genera of any nested basis of solid tori",
            ),
            GenusReason::SchubertChain => cite(
                "schubert_chain",
                "genera along a natural basis are nondecreasing and bounded below by the Schubert inequality",
            ),
            GenusReason::TrivialCohomology => cite(
                "genus_definition",
                "the genus is the least g such that arbitrarily small tori of genus <= g exist",
            ),
        };
        let alexander = cite(
            "stabilized_alexander",
            "with finite genus and H1 = Z the Alexander polynomials of deep tori agree up to units; Δ = Δ_pattern(t) * Δ_companion(t^w)",
        );
        let homeo = match self.homeo {
            HomeoVerdict::Obstructed(HomeoRule::InfiniteGenus) => cite(
                "finite_genus_of_attractors",
                "a toroidal attractor of a homeomorphism of R3 has finite genus",
            ),
            HomeoVerdict::Obstructed(HomeoRule::KnottedWithH1NotZ) => cite(
                "unknotted_natural_neighbourhoods",
                "a toroidal attractor with H1 not Z has finite genus, hence all its natural neighbourhoods are unknotted",
            ),
            HomeoVerdict::NoObstructionFound => cite("none", "no obstruction applies"),
        };
        let flow = match self.flow {
            FlowVerdict::NotRealizable(FlowRule::H1NotZ) => cite(
                "flow_h1",
                "a toroidal attractor of a flow on R3 has H1 = Z",
            ),
            FlowVerdict::Realizable(_) => cite(
                "eventually_concentric",
                "a toroidal set with a nested basis of tori that are concentric from some index on is an attractor for a flow",
            ),
            FlowVerdict::NotRealizable(_) => cite(
                "persistently_non_concentric",
                "a toroidal flow attractor has a basis of eventually concentric tori; non-concentricity of recurring consecutive pairs propagates to all pairs",
            ),
        };
        let r = cite("r_of_toroidal", "every toroidal set has r = 1");
        let r_classification = cite(
            "r_classifier",
            "a continuum with r = 1, trivial H2 and H1 neither 0 nor Z is toroidal; for compacta one component is toroidal and the rest cellular",
        );
        vec![
            ("alexander", alexander),
            ("flow_verdict", flow),
            ("genus", genus),
            ("h1", h1),
            ("homeo_verdict", homeo),
            ("r", r),
            ("r_classification", r_classification),
        ]
    }

    pub fn to_json_value(&self) -> Value {
        let citations: Map<String, Value> = self
            .citations()
            .into_iter()
            .map(|(k, c)| (k.to_string(), json!({"rule": c.rule, "statement": c.statement})))
            .collect();
        let (alexander, alexander_unavailable) = match &self.alexander {
            Ok(d) => (json!(d), Value::Null),
            Err(tag) => (Value::Null, json!(tag)),
        };
        json!({
            "schema": SCHEMA,
            "subject": self.subject,
            "h1": self.h1.tag(),
            "steinitz": self.steinitz,
            "h2_trivial": self.h2_trivial,
            "genus": self.genus.to_string(),
            "genus_reason": self.genus_reason.tag(),
            "unknotted": self.unknotted,
            "complement_pi1_abelian": self.complement_pi1_abelian,
            "alexander": alexander,
            "alexander_unavailable": alexander_unavailable,
            "homeo_verdict": self.homeo.tag(),
            "flow_verdict": self.flow.tag(),
            "r": self.r,
            "r_classification": self.r_classification.tag(),
            "citations": citations,
            "notes": self.notes,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        match &self.steinitz {
            Some(s) => writeln!(f, "  H1:        {} (steinitz {s})", self.h1.tag())?,
            None => writeln!(f, "  H1:        {}", self.h1.tag())?,
        }
        writeln!(f, "  genus:     {} ({})", self.genus, self.genus_reason.tag())?;
        writeln!(f, "  unknotted: {}", self.unknotted)?;
        match &self.alexander {
            Ok(d) => writeln!(f, "  alexander: {d}")?,
            Err(tag) => writeln!(f, "  alexander: unavailable ({tag})")?,
        }
        writeln!(f, "  homeo:     {}", self.homeo.tag())?;
        writeln!(f, "  flow:      {}", self.flow.tag())?;
        writeln!(f, "  r:         {} ({})", self.r, self.r_classification.tag())?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}
