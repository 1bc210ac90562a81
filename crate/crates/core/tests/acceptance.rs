//! Acceptance criteria. Prints one PASS/FAIL line per criterion.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toroidal::catalog;
use toroidal::diagrams::Diagram;
use toroidal::knots::{torus, KnotExpr, KnotTable};
use toroidal::laurent::LaurentPoly;
use toroidal::towers::{
    classify_by_r, distinguish_connected_sums, Exponent, FlowRule, FlowVerdict, GenusResult, H1Class, H1Input,
    HomeoRule, HomeoVerdict, InfiniteReason, RClassification, RInconclusive, RValue, Stage, StageKind, SumVerdict,
    Tower, ValidTower, ViolationKind,
};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(path)
}

fn pd(name: &str) -> Result<Diagram, String> {
    let text = std::fs::read_to_string(data(&format!("pd/{name}"))).map_err(|e| e.to_string())?;
    Diagram::parse_pd(&text).map_err(|e| format!("{name}: {e}"))
}

fn tower_file(name: &str) -> Result<Tower, String> {
    let text = std::fs::read_to_string(data(&format!("towers/{name}"))).map_err(|e| e.to_string())?;
    Tower::from_json(&text).map_err(|e| format!("{name}: {e}"))
}

fn cat(name: &str) -> Result<ValidTower, String> {
    catalog::get(name)
        .ok_or(format!("missing catalog tower {name}"))?
        .into_valid()
        .map_err(|r| format!("{name}: {r}"))
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn cohomology_trichotomy() -> Outcome {
    let whitehead = cat("whitehead")?.cech_h1();
    ensure!(whitehead.h1 == H1Class::Trivial, "whitehead: {:?}", whitehead.h1);
    let tame = cat("tame_trefoil")?.cech_h1();
    ensure!(tame.h1 == H1Class::Z, "tame_trefoil: {:?}", tame.h1);
    let dyadic = cat("dyadic_solenoid")?.cech_h1();
    ensure!(dyadic.h1 == H1Class::NotFinitelyGenerated, "dyadic: {:?}", dyadic.h1);
    let s = dyadic.steinitz.ok_or("dyadic: no steinitz number")?;
    ensure!(
        s.exponents().len() == 1 && s.exponent(2) == Exponent::Infinite,
        "dyadic steinitz {s}"
    );
    ensure!(s.to_string() == "2^inf", "dyadic steinitz prints as {s}");
    Ok(())
}

fn oracle_agreement() -> Outcome {
    for (file, p, q, genus) in [
        ("trefoil.pd", 2, 3, 1),
        ("torus_2_5.pd", 2, 5, 2),
        ("torus_2_7.pd", 2, 7, 3),
        ("torus_3_4.pd", 3, 4, 3),
    ] {
        let d = pd(file)?;
        let closed = torus(p, q).alexander().map_err(|e| e.to_string())?;
        ensure!(
            d.alexander().equal_up_to_unit(&closed),
            "{file}: {} vs {closed}",
            d.alexander()
        );
        let bounds = d.genus_bounds().map_err(|e| e.to_string())?;
        ensure!(bounds == (genus, genus), "{file}: genus bounds {bounds:?}");
        ensure!((p - 1) * (q - 1) / 2 == genus, "T({p},{q}) closed-form genus");
    }
    Ok(())
}

fn knot_polynomial_properties() -> Outcome {
    let check = |label: &str, d: &LaurentPoly| -> Outcome {
        ensure!(
            d.evaluate_at_one().magnitude() == &1u32.into(),
            "{label}: Δ(1) = {}",
            d.evaluate_at_one()
        );
        ensure!(
            d.equal_up_to_unit(&d.invert_variable()),
            "{label}: {d} is not symmetric"
        );
        Ok(())
    };
    for file in [
        "trefoil.pd",
        "figure_eight.pd",
        "torus_2_5.pd",
        "torus_2_7.pd",
        "torus_3_4.pd",
        "granny.pd",
    ] {
        check(file, &pd(file)?.alexander())?;
    }
    let mut knots: Vec<KnotExpr> = Vec::new();
    for e in catalog::entries() {
        knots.push(e.tower.initial.clone());
        for s in e.tower.prefix.iter().chain(&e.tower.cycle) {
            if let StageKind::Swallow(k) = &s.kind {
                knots.push(k.clone());
            }
        }
    }
    for entry in KnotTable::builtin().entries() {
        knots.push(KnotExpr::Table(entry.clone()));
    }
    for k in knots {
        check(&k.to_string(), &k.alexander().map_err(|e| e.to_string())?)?;
    }
    let granny = pd("granny.pd")?.alexander();
    let trefoil = poly("1 - t + t^2");
    ensure!(granny.equal_up_to_unit(&(&trefoil * &trefoil)), "granny: {granny}");
    Ok(())
}

fn schubert_validator() -> Outcome {
    let bad = tower_file("bad_tower.json")?;
    let report = bad.validate();
    ensure!(report.has(ViolationKind::SchubertViolation), "bad tower: {report}");
    let undeclared = tower_file("knotted_dyadic_solenoid.json")?;
    ensure!(
        undeclared.cycle.iter().all(|s| s.declared_genus.is_none()) && undeclared.initial == bad.initial,
        "sample files describe different towers"
    );
    let t = undeclared.into_valid().map_err(|r| r.to_string())?;
    ensure!(
        t.genus() == GenusResult::Infinite(InfiniteReason::WindingBlowup),
        "genus {:?}",
        t.genus()
    );
    ensure!(
        t.homeo_verdict() == HomeoVerdict::Obstructed(HomeoRule::InfiniteGenus),
        "homeo {:?}",
        t.homeo_verdict()
    );
    Ok(())
}

fn infinite_connected_sum() -> Outcome {
    let wild = cat("infinite_trefoil_sum")?;
    ensure!(
        wild.genus() == GenusResult::Infinite(InfiniteReason::StronglyKnotted),
        "genus {:?}",
        wild.genus()
    );
    ensure!(wild.homeo_verdict().is_obstructed(), "homeo {:?}", wild.homeo_verdict());
    let truncated = Tower::new(
        "truncated",
        KnotExpr::Unknot,
        vec![Stage::swallow(torus(2, 3)), Stage::swallow(torus(2, 5))],
        vec![Stage::core_parallel()],
    )
    .into_valid()
    .map_err(|r| r.to_string())?;
    ensure!(
        truncated.genus() == GenusResult::Exact(3),
        "genus {:?}",
        truncated.genus()
    );
    let delta = truncated.alexander().map_err(|e| e.to_string())?;
    let expected = &pd("trefoil.pd")?.alexander() * &pd("torus_2_5.pd")?.alexander();
    ensure!(delta.equal_up_to_unit(&expected), "Δ = {delta}, expected {expected}");
    let from_file = tower_file("truncated_sum.json")?
        .into_valid()
        .map_err(|r| r.to_string())?;
    ensure!(from_file.alexander() == Ok(delta), "truncated_sum.json disagrees");
    Ok(())
}

fn flow_verdicts() -> Outcome {
    for (name, expected) in [
        ("dyadic_solenoid", FlowVerdict::NotRealizable(FlowRule::H1NotZ)),
        ("whitehead", FlowVerdict::NotRealizable(FlowRule::H1NotZ)),
        (
            "modified_whitehead",
            FlowVerdict::NotRealizable(FlowRule::PersistentlyNonConcentric),
        ),
        ("tame_trefoil", FlowVerdict::Realizable(FlowRule::EventuallyConcentric)),
    ] {
        let got = cat(name)?.flow_verdict();
        ensure!(got == expected, "{name}: {got:?}");
    }
    Ok(())
}

fn desk_scale_inequivalence() -> Outcome {
    let masks: [[u8; 8]; 10] = [
        [1, 0, 1, 0, 1, 0, 1, 0],
        [1, 1, 0, 1, 1, 0, 1, 1],
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 1, 0, 1, 0, 1],
        [1, 0, 0, 1, 0, 0, 1, 0],
        [0, 0, 1, 1, 0, 0, 1, 1],
        [1, 1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 1, 1],
        [1, 0, 0, 0, 0, 0, 0, 1],
    ];
    let towers: Vec<ValidTower> = masks
        .iter()
        .map(|m| {
            let bits: Vec<bool> = m.iter().map(|&b| b == 1).collect();
            catalog::mask_tower(&bits).into_valid().map_err(|r| r.to_string())
        })
        .collect::<Result<_, _>>()?;
    for (i, a) in towers.iter().enumerate() {
        for b in &towers[i + 1..] {
            let v = distinguish_connected_sums(a, b).map_err(|e| e.to_string())?;
            ensure!(
                matches!(v, SumVerdict::Inequivalent(_)),
                "{} vs {}: {v:?}",
                a.name(),
                b.name()
            );
        }
    }
    Ok(())
}

fn theorem_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x70201da1);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 1000 {
        attempts += 1;
        ensure!(attempts < 100_000, "generator produced only {checked} valid towers");
        let Ok(t) = common::random_tower(&mut rng).into_valid() else {
            continue;
        };
        checked += 1;
        let label = || format!("{:?}", t.tower());
        for pair in t.chain().windows(2) {
            if pair[1].winding.unwrap_or(0) >= 1 {
                ensure!(pair[1].lower >= pair[0].lower, "monotonicity fails for {}", label());
            }
        }
        let (h1, genus) = (t.cech_h1().h1, t.genus());
        if let (H1Class::NotFinitelyGenerated, GenusResult::Exact(g)) = (h1, genus) {
            ensure!(g == 0, "finite-genus solenoid of genus {g}: {}", label());
        }
        if let GenusResult::Infinite(_) = genus {
            ensure!(
                t.homeo_verdict().is_obstructed(),
                "infinite genus unobstructed: {}",
                label()
            );
        }
        if t.flow_verdict().is_realizable() {
            ensure!(h1 == H1Class::Z, "flow-realizable with H1 {h1:?}: {}", label());
        }
    }
    Ok(())
}

fn r_invariant() -> Outcome {
    for e in catalog::entries() {
        let r = cat(e.name)?.r();
        ensure!(r == RValue::Finite(1), "{}: r = {r}", e.name);
    }
    let one = RValue::Finite(1);
    let table = [
        ((one, H1Input::Other, true, true), RClassification::Toroidal),
        (
            (one, H1Input::Other, true, false),
            RClassification::ToroidalComponentPlusCellular,
        ),
        (
            (one, H1Input::Z, true, true),
            RClassification::Inconclusive(RInconclusive::HypothesesNotMet),
        ),
        (
            (one, H1Input::Zero, true, true),
            RClassification::Inconclusive(RInconclusive::HypothesesNotMet),
        ),
        (
            (one, H1Input::Other, false, true),
            RClassification::Inconclusive(RInconclusive::HypothesesNotMet),
        ),
        (
            (RValue::Finite(0), H1Input::Zero, true, true),
            RClassification::Inconclusive(RInconclusive::ConnectedCaseWouldBeCellular),
        ),
    ];
    for ((r, h1, h2, connected), expected) in table {
        let got = classify_by_r(r, h1, h2, connected);
        ensure!(
            got == expected,
            "classify_by_r({r}, {h1:?}, {h2}, {connected}) = {got:?}"
        );
    }
    Ok(())
}

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 cohomology trichotomy", cohomology_trichotomy, 1),
        ("2 diagram oracle agreement", oracle_agreement, 5),
        ("3 knot polynomial properties", knot_polynomial_properties, 5),
        ("4 Schubert validator", schubert_validator, 1),
        ("5 infinite connected sum", infinite_connected_sum, 1),
        ("6 flow verdicts", flow_verdicts, 1),
        ("7 inequivalence of mask towers", desk_scale_inequivalence, 5),
        ("8 theorem consistency on 1000 towers", theorem_consistency, 30),
        ("9 r-invariant", r_invariant, 1),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (label, run, budget) in criteria {
        let t0 = Instant::now();
        let outcome = run();
        let elapsed = t0.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("took {elapsed:?}, budget {budget} s"))
            } else {
                Ok(())
            }
        });
        match &outcome {
            Ok(()) => println!("PASS  {label} ({elapsed:.2?})"),
            Err(msg) => {
                println!("FAIL  {label} ({elapsed:.2?}): {msg}");
                failures.push(label);
            }
        }
    }
    // The whole workspace suite is timed separately; this bounds the heavy part.
    let total = start.elapsed();
    if total < Duration::from_secs(60) {
        println!("PASS  10 suite runtime ({total:.2?} for criteria 1-9, budget 60 s)");
    } else {
        println!("FAIL  10 suite runtime ({total:.2?}, budget 60 s)");
        failures.push("10 suite runtime");
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
