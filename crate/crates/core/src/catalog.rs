//! Built-in towers.
//!
//! `mask:<bits>` names a connected-sum tower: bit `i` (1-based) swallows the
//! torus knot `T(i+1, i+2)` at stage `i`, and the periodic tail swallows the
//! next torus knot forever.

use crate::knots::{torus, KnotExpr};
use crate::towers::{Stage, Tower};

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: &'static str,
    pub summary: &'static str,
    pub tower: Tower,
}

pub fn entries() -> Vec<Entry> {
    let trefoil = || torus(2, 3);
    let entry = |name: &'static str, summary: &'static str, initial, cycle| Entry {
        name,
        summary,
        tower: Tower::new(name, initial, vec![], cycle),
    };
    vec![
        entry(
            "whitehead",
            "Whitehead continuum: each torus has winding 0 in the previous one",
            KnotExpr::Unknot,
            vec![Stage::generic(0, Some(0))],
        ),
        entry(
            "dyadic_solenoid",
            "standard dyadic solenoid: unknotted tori winding twice",
            KnotExpr::Unknot,
            vec![Stage::wind(2).declared(0)],
        ),
        entry(
            "generalized_solenoid",
            "generalized solenoid with windings 2, 3, 2, 3, ...",
            KnotExpr::Unknot,
            vec![Stage::wind(2), Stage::wind(3)],
        ),
        entry(
            "knotted_dyadic_solenoid",
            "dyadic solenoid placed inside a trefoil-knotted torus",
            trefoil(),
            vec![Stage::wind(2)],
        ),
        entry(
            "infinite_trefoil_sum",
            "wild knot: infinite connected sum of trefoils",
            trefoil(),
            vec![Stage::swallow(trefoil())],
        ),
        entry(
            "tame_trefoil",
            "a trefoil knot with its shrinking regular neighbourhoods",
            trefoil(),
            vec![Stage::core_parallel()],
        ),
        entry(
            "modified_whitehead",
            "winding 1, trivial pattern, never concentric",
            KnotExpr::Unknot,
            vec![Stage::generic(1, Some(0))],
        ),
    ]
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

/// Looks up a built-in tower or a `mask:<bits>` tower.
pub fn get(name: &str) -> Option<Tower> {
    if let Some(bits) = name.strip_prefix("mask:") {
        let mask = bits
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()?;
        return Some(mask_tower(&mask));
    }
    entries().into_iter().find(|e| e.name == name).map(|e| e.tower)
}

/// `K_i = T(i+1, i+2)`.
pub fn mask_knot(i: u64) -> KnotExpr {
    torus(i + 1, i + 2)
}

/// Connected sum of the `K_i` selected by `mask`, followed by infinitely
/// many copies of `K_{n+1}` where `n = mask.len()`.
pub fn mask_tower(mask: &[bool]) -> Tower {
    let prefix = mask
        .iter()
        .enumerate()
        .map(|(i, &bit)| {
            if bit {
                Stage::swallow(mask_knot(i as u64 + 1))
            } else {
                Stage::core_parallel()
            }
        })
        .collect();
    let bits: String = mask.iter().map(|&b| if b { '1' } else { '0' }).collect();
    Tower::new(
        format!("mask:{bits}"),
        KnotExpr::Unknot,
        prefix,
        vec![Stage::swallow(mask_knot(mask.len() as u64 + 1))],
    )
}
