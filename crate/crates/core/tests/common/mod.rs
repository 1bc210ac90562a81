#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use toroidal::knots::{sum, torus, KnotExpr};
use toroidal::towers::{Stage, Tower};

fn random_knot<R: Rng>(rng: &mut R) -> KnotExpr {
    let choices = [
        KnotExpr::Unknot,
        torus(2, 3),
        torus(2, 5),
        torus(3, 4),
        sum([torus(2, 3), torus(2, 3)]),
        "table(4_1)".parse().unwrap(),
        "table(w; delta=1 - 3*t + t^2; prime=true)".parse().unwrap(),
    ];
    choices.choose(rng).unwrap().clone()
}

fn random_stage<R: Rng>(rng: &mut R) -> Stage {
    let mut stage = match rng.gen_range(0..5) {
        0 => Stage::core_parallel(),
        1 => Stage::swallow(random_knot(rng)),
        2 => Stage::wind(rng.gen_range(1..4)),
        3 => {
            let genus = [None, Some(0), Some(0), Some(1)].choose(rng).copied().unwrap();
            Stage::generic(rng.gen_range(0..3), genus)
        }
        _ => Stage::generic(1, Some(0)).concentric(rng.gen_bool(0.5)),
    };
    if rng.gen_bool(0.15) {
        stage = stage.declared(rng.gen_range(0..4));
    }
    stage
}

/// A random tower; may fail validation.
pub fn random_tower<R: Rng>(rng: &mut R) -> Tower {
    let prefix = (0..rng.gen_range(0..5)).map(|_| random_stage(rng)).collect();
    let cycle = (0..rng.gen_range(1..4)).map(|_| random_stage(rng)).collect();
    Tower::new("random", random_knot(rng), prefix, cycle)
}

/// The same tower with its cycle unrolled `k` times into the prefix.
pub fn unroll(t: &Tower, k: usize) -> Tower {
    let mut u = t.clone();
    for _ in 0..k {
        u.prefix.extend(t.cycle.iter().cloned());
    }
    u
}
