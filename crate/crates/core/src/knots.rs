//! Symbolic knot types.
//!
//! A [`KnotExpr`] is an unknot, a torus knot, a connected sum, or a table
//! entry whose invariants are supplied from outside. Genus and Alexander
//! polynomial are computed symbolically: closed formulas for torus knots,
//! additivity of genus and multiplicativity of the Alexander polynomial over
//! connected sums.
//!
//! Equivalence is only decided where it is decidable from the expression:
//! torus knots by their unordered parameter pair, connected sums by their
//! multiset of prime summands.
//!
//! # Text format
//!
//! ```text
//! knot  := "unknot"
//!        | "torus(" p "," q ")"
//!        | "sum(" knot (";" knot)* ")"
//!        | "table(" name ")"
//!        | "table(" name (";" key "=" value)+ ")"      keys: genus, delta, prime
//! ```
//!
//! `table(name)` resolves against the built-in table ([`KnotTable::builtin`]);
//! the long form declares a knot inline, e.g.
//! `table(k; genus=1; delta=2 - 3*t + 2*t^2; prime=true)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("torus({p},{q}) is not a nontrivial torus knot (need p, q >= 2 and coprime)")]
    InvalidTorus { p: u64, q: u64 },
    #[error("empty connected sum")]
    EmptySum,
    #[error("Alexander polynomial of {0} is unavailable")]
    InvariantUnavailable(String),
    #[error("{0} is declared non-prime and has no known decomposition")]
    NotDecomposable(String),
    #[error("unknown table knot '{0}'")]
    UnknownTableKnot(String),
    #[error("knot expression parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A knot supplied with externally known invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableKnot {
    pub name: String,
    pub genus: Option<u64>,
    pub delta: Option<LaurentPoly>,
    pub prime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KnotExpr {
    Unknot,
    /// The `(p, q)` torus knot.
    Torus {
        p: u64,
        q: u64,
    },
    /// Connected sum of the parts, in order.
    Sum(Vec<KnotExpr>),
    Table(TableKnot),
}

/// Genus of a knot, exact or bracketed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusValue {
    Exact(u64),
    /// `upper == None` means no finite upper bound is known.
    Unknown {
        lower: u64,
        upper: Option<u64>,
    },
}

impl GenusValue {
    pub fn lower(self) -> u64 {
        match self {
            GenusValue::Exact(g) => g,
            GenusValue::Unknown { lower, .. } => lower,
        }
    }

    pub fn exact(self) -> Option<u64> {
        match self {
            GenusValue::Exact(g) => Some(g),
            GenusValue::Unknown { .. } => None,
        }
    }

    pub fn upper(self) -> Option<u64> {
        match self {
            GenusValue::Exact(g) => Some(g),
            GenusValue::Unknown { upper, .. } => upper,
        }
    }
}

/// Identity of a prime summand for multiset comparisons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeKey {
    Torus { p: u64, q: u64 },
    Table(String),
}

impl fmt::Display for PrimeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeKey::Torus { p, q } => write!(f, "torus({p},{q})"),
            PrimeKey::Table(name) => write!(f, "table({name})"),
        }
    }
}

pub fn torus(p: u64, q: u64) -> KnotExpr {
    KnotExpr::Torus { p, q }
}

pub fn sum(parts: impl IntoIterator<Item = KnotExpr>) -> KnotExpr {
    KnotExpr::Sum(parts.into_iter().collect())
}

/// `T(p,q)` and `T(p',q')` are equivalent iff `{p,q} = {p',q'}`.
pub fn torus_knots_equivalent(p: u64, q: u64, p2: u64, q2: u64) -> bool {
    (p.min(q), p.max(q)) == (p2.min(q2), p2.max(q2))
}

fn check_torus(p: u64, q: u64) -> Result<(), KnotError> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(KnotError::InvalidTorus { p, q });
    }
    Ok(())
}

fn torus_alexander(p: u64, q: u64) -> LaurentPoly {
    // (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))
    let pow_minus_one = |n: u64| &LaurentPoly::monomial(1, n as i64) - &LaurentPoly::one();
    let num = &pow_minus_one(p * q) * &pow_minus_one(1);
    let den = &pow_minus_one(p) * &pow_minus_one(q);
    num.div_exact(&den)
        .expect("torus knot quotient is a polynomial")
        .canonical_form()
}

impl KnotExpr {
    /// Flattens sums, drops unknot summands and orders torus parameters `p <= q`.
    pub fn normalize(&self) -> Result<KnotExpr, KnotError> {
        match self {
            KnotExpr::Unknot => Ok(KnotExpr::Unknot),
            KnotExpr::Torus { p, q } => {
                check_torus(*p, *q)?;
                Ok(KnotExpr::Torus {
                    p: *p.min(q),
                    q: *p.max(q),
                })
            }
            KnotExpr::Table(t) => Ok(KnotExpr::Table(t.clone())),
            KnotExpr::Sum(parts) => {
                if parts.is_empty() {
                    return Err(KnotError::EmptySum);
                }
                let mut flat = Vec::new();
                for part in parts {
                    match part.normalize()? {
                        KnotExpr::Unknot => {}
                        KnotExpr::Sum(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                Ok(match flat.len() {
                    0 => KnotExpr::Unknot,
                    1 => flat.pop().unwrap(),
                    _ => KnotExpr::Sum(flat),
                })
            }
        }
    }

    pub fn is_unknot(&self) -> bool {
        match self {
            KnotExpr::Unknot => true,
            KnotExpr::Sum(parts) => parts.iter().all(KnotExpr::is_unknot),
            _ => false,
        }
    }

    /// Genus of a normalized expression.
    ///
    /// Table entries without a declared genus are bracketed below by half the
    /// breadth of their Alexander polynomial (and by 1, as they are nontrivial).
    pub fn genus(&self) -> GenusValue {
        match self {
            KnotExpr::Unknot => GenusValue::Exact(0),
            KnotExpr::Torus { p, q } => GenusValue::Exact(p.saturating_sub(1) * q.saturating_sub(1) / 2),
            KnotExpr::Table(t) => match t.genus {
                Some(g) => GenusValue::Exact(g),
                None => {
                    let from_delta = t
                        .delta
                        .as_ref()
                        .and_then(|d| d.breadth().ok())
                        .map_or(0, |b| b.div_ceil(2));
                    GenusValue::Unknown {
                        lower: from_delta.max(1),
                        upper: None,
                    }
                }
            },
            KnotExpr::Sum(parts) => {
                let gs: Vec<GenusValue> = parts.iter().map(KnotExpr::genus).collect();
                if let Some(exact) = gs.iter().map(|g| g.exact()).sum::<Option<u64>>() {
                    return GenusValue::Exact(exact);
                }
                GenusValue::Unknown {
                    lower: gs.iter().map(|g| g.lower()).sum(),
                    upper: gs.iter().map(|g| g.upper()).sum(),
                }
            }
        }
    }

    /// Canonical-form Alexander polynomial of a normalized expression.
    pub fn alexander(&self) -> Result<LaurentPoly, KnotError> {
        match self {
            KnotExpr::Unknot => Ok(LaurentPoly::one()),
            KnotExpr::Torus { p, q } => {
                check_torus(*p, *q)?;
                Ok(torus_alexander(*p, *q))
            }
            KnotExpr::Table(t) => t
                .delta
                .as_ref()
                .map(LaurentPoly::canonical_form)
                .ok_or_else(|| KnotError::InvariantUnavailable(self.to_string())),
            KnotExpr::Sum(parts) => {
                let mut acc = LaurentPoly::one();
                for part in parts {
                    acc = &acc * &part.alexander()?;
                }
                Ok(acc.canonical_form())
            }
        }
    }

    /// Nontrivial prime summands of a normalized expression, sorted.
    pub fn prime_summands(&self) -> Result<Vec<KnotExpr>, KnotError> {
        let mut out = Vec::new();
        self.collect_primes(&mut out)?;
        out.sort();
        Ok(out)
    }

    fn collect_primes(&self, out: &mut Vec<KnotExpr>) -> Result<(), KnotError> {
        match self {
            KnotExpr::Unknot => {}
            KnotExpr::Torus { .. } => out.push(self.clone()),
            KnotExpr::Table(t) if t.prime => out.push(self.clone()),
            KnotExpr::Table(t) => return Err(KnotError::NotDecomposable(t.name.clone())),
            KnotExpr::Sum(parts) => {
                for part in parts {
                    part.collect_primes(out)?;
                }
            }
        }
        Ok(())
    }

    /// Key identifying a prime knot in multiset comparisons; `None` for
    /// non-prime expressions.
    pub fn prime_key(&self) -> Option<PrimeKey> {
        match self {
            KnotExpr::Torus { p, q } => Some(PrimeKey::Torus {
                p: *p.min(q),
                q: *p.max(q),
            }),
            KnotExpr::Table(t) if t.prime => Some(PrimeKey::Table(t.name.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => f.write_str("unknot"),
            KnotExpr::Torus { p, q } => write!(f, "torus({p},{q})"),
            KnotExpr::Sum(parts) => {
                f.write_str("sum(")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{part}")?;
                }
                f.write_str(")")
            }
            KnotExpr::Table(t) => {
                if KnotTable::builtin().get(&t.name) == Some(t) {
                    return write!(f, "table({})", t.name);
                }
                write!(f, "table({}", t.name)?;
                if let Some(g) = t.genus {
                    write!(f, "; genus={g}")?;
                }
                if let Some(d) = &t.delta {
                    write!(f, "; delta={d}")?;
                }
                write!(f, "; prime={})", t.prime)
            }
        }
    }
}

/// Named knots with known invariants, resolvable as `table(name)`.
#[derive(Debug, Clone)]
pub struct KnotTable {
    entries: Vec<TableKnot>,
}

impl KnotTable {
    /// Prime knots through six crossings, by Rolfsen name.
    pub fn builtin() -> &'static KnotTable {
        static TABLE: std::sync::OnceLock<KnotTable> = std::sync::OnceLock::new();
        TABLE.get_or_init(|| {
            let entry = |name: &str, genus, delta: &str| TableKnot {
                name: name.to_string(),
                genus: Some(genus),
                delta: Some(delta.parse().expect("builtin polynomial")),
                prime: true,
            };
            KnotTable {
                entries: vec![
                    entry("3_1", 1, "1 - t + t^2"),
                    entry("4_1", 1, "1 - 3*t + t^2"),
                    entry("5_1", 2, "1 - t + t^2 - t^3 + t^4"),
                    entry("5_2", 1, "2 - 3*t + 2*t^2"),
                    entry("6_1", 1, "2 - 5*t + 2*t^2"),
                    entry("6_2", 2, "1 - 3*t + 3*t^2 - 3*t^3 + t^4"),
                    entry("6_3", 2, "1 - 3*t + 5*t^2 - 3*t^3 + t^4"),
                ],
            }
        })
    }

    pub fn get(&self, name: &str) -> Option<&TableKnot> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn entries(&self) -> &[TableKnot] {
        &self.entries
    }
}

impl FromStr for KnotExpr {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = ExprParser { src: s, pos: 0 };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.err("trailing input"));
        }
        Ok(expr)
    }
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, message: impl Into<String>) -> KnotError {
        KnotError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<(), KnotError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')))
            .unwrap_or(self.rest().len());
        let start = self.pos;
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<u64, KnotError> {
        let w = self.word().to_string();
        w.parse()
            .map_err(|_| self.err(format!("expected a positive integer, found '{w}'")))
    }

    fn expr(&mut self) -> Result<KnotExpr, KnotError> {
        let start = self.pos;
        match self.word() {
            "unknot" => Ok(KnotExpr::Unknot),
            "torus" => {
                self.expect('(')?;
                let p = self.number()?;
                self.expect(',')?;
                let q = self.number()?;
                self.expect(')')?;
                Ok(KnotExpr::Torus { p, q })
            }
            "sum" => {
                self.expect('(')?;
                let mut parts = vec![self.expr()?];
                loop {
                    self.skip_ws();
                    if self.rest().starts_with(';') {
                        self.pos += 1;
                        parts.push(self.expr()?);
                    } else {
                        self.expect(')')?;
                        return Ok(KnotExpr::Sum(parts));
                    }
                }
            }
            "table" => self.table(),
            other => {
                let other = other.to_string();
                self.pos = start;
                self.skip_ws();
                Err(self.err(format!("unknown knot constructor '{other}'")))
            }
        }
    }

    fn table(&mut self) -> Result<KnotExpr, KnotError> {
        self.expect('(')?;
        let name = self.word().to_string();
        if name.is_empty() {
            return Err(self.err("expected table knot name"));
        }
        self.skip_ws();
        if self.rest().starts_with(')') {
            self.pos += 1;
            return KnotTable::builtin()
                .get(&name)
                .cloned()
                .map(KnotExpr::Table)
                .ok_or(KnotError::UnknownTableKnot(name));
        }
        let mut knot = TableKnot {
            name,
            genus: None,
            delta: None,
            prime: true,
        };
        loop {
            self.skip_ws();
            if self.rest().starts_with(')') {
                self.pos += 1;
                return Ok(KnotExpr::Table(knot));
            }
            self.expect(';')?;
            let key = self.word().to_string();
            self.expect('=')?;
            self.skip_ws();
            let len = self.rest().find([';', ')']).unwrap_or(self.rest().len());
            let value = self.rest()[..len].trim().to_string();
            let value_pos = self.pos;
            self.pos += len;
            match key.as_str() {
                "genus" => {
                    knot.genus = Some(value.parse().map_err(|_| KnotError::Parse {
                        position: value_pos,
                        message: format!("invalid genus '{value}'"),
                    })?)
                }
                "delta" => {
                    let d: LaurentPoly = value.parse().map_err(|e| match e {
                        LaurentError::Parse { position, message } => KnotError::Parse {
                            position: value_pos + position,
                            message,
                        },
                        other => KnotError::Laurent(other),
                    })?;
                    if !d.evaluate_at_one().abs().is_one() {
                        return Err(KnotError::Parse {
                            position: value_pos,
                            message: format!("'{value}' is not an Alexander polynomial (|delta(1)| != 1)"),
                        });
                    }
                    knot.delta = Some(d);
                }
                "prime" => {
                    knot.prime = value.parse().map_err(|_| KnotError::Parse {
                        position: value_pos,
                        message: format!("invalid boolean '{value}'"),
                    })?
                }
                _ => return Err(self.err(format!("unknown table key '{key}'"))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(s: &str) -> KnotExpr {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let nested = sum([sum([torus(3, 2)]), KnotExpr::Unknot]);
        assert_eq!(nested.normalize().unwrap(), torus(2, 3));
        assert_eq!(KnotExpr::Unknot.normalize().unwrap(), KnotExpr::Unknot);
        let two = sum([torus(2, 3), torus(2, 5)]);
        assert_eq!(two.normalize().unwrap(), two);
    }

    #[test]
    fn normalize_rejects_bad_torus() {
        assert_eq!(torus(2, 4).normalize(), Err(KnotError::InvalidTorus { p: 2, q: 4 }));
        assert_eq!(torus(1, 5).normalize(), Err(KnotError::InvalidTorus { p: 1, q: 5 }));
        assert_eq!(sum([]).normalize(), Err(KnotError::EmptySum));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(KnotExpr::Unknot.genus(), GenusValue::Exact(0));
        assert_eq!(torus(2, 3).genus(), GenusValue::Exact(1));
        assert_eq!(sum([torus(2, 3), torus(2, 5)]).genus(), GenusValue::Exact(3));
        assert_eq!(torus(3, 4).genus(), GenusValue::Exact(3));
    }

    #[test]
    fn genus_of_partially_known_sum() {
        let mystery = k("table(m; delta=1 - 3*t + 5*t^2 - 3*t^3 + t^4)");
        assert_eq!(mystery.genus(), GenusValue::Unknown { lower: 2, upper: None });
        let opaque = k("table(x; prime=true)");
        assert_eq!(opaque.genus(), GenusValue::Unknown { lower: 1, upper: None });
        let s = sum([torus(2, 3), mystery]);
        assert_eq!(s.genus(), GenusValue::Unknown { lower: 3, upper: None });
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(KnotExpr::Unknot.alexander().unwrap(), LaurentPoly::one());
        assert_eq!(torus(2, 3).alexander().unwrap(), poly("1 - t + t^2"));
        assert_eq!(
            sum([torus(2, 3), torus(2, 3)]).alexander().unwrap(),
            poly("1 - 2*t + 3*t^2 - 2*t^3 + t^4")
        );
        assert_eq!(torus(3, 4).alexander().unwrap(), poly("1 - t + t^3 - t^5 + t^6"));
    }

    #[test]
    fn alexander_unavailable_for_opaque_table() {
        let opaque = k("table(x; genus=2)");
        assert!(matches!(opaque.alexander(), Err(KnotError::InvariantUnavailable(_))));
        assert!(sum([torus(2, 3), opaque]).alexander().is_err());
    }

    #[test]
    fn prime_summand_examples() {
        assert_eq!(torus(2, 3).prime_summands().unwrap(), vec![torus(2, 3)]);
        let s = sum([torus(2, 3), KnotExpr::Unknot, torus(3, 4)]).normalize().unwrap();
        assert_eq!(s.prime_summands().unwrap(), vec![torus(2, 3), torus(3, 4)]);
        assert!(KnotExpr::Unknot.prime_summands().unwrap().is_empty());
    }

    #[test]
    fn non_prime_table_is_not_decomposable() {
        let composite = k("table(granny; genus=2; prime=false)");
        assert_eq!(
            composite.prime_summands(),
            Err(KnotError::NotDecomposable("granny".into()))
        );
    }

    #[test]
    fn torus_equivalence_examples() {
        assert!(torus_knots_equivalent(2, 3, 3, 2));
        assert!(!torus_knots_equivalent(2, 3, 2, 5));
        assert!(torus_knots_equivalent(2, 3, 2, 3));
    }

    #[test]
    fn parse_and_print() {
        let e = k("sum( torus(2,3) ; table(4_1); unknot )");
        assert_eq!(e.to_string(), "sum(torus(2,3); table(4_1); unknot)");
        assert_eq!(k("table(5_2)").genus(), GenusValue::Exact(1));
        let inline = "table(k; genus=1; delta=2 - 3*t + 2*t^2; prime=true)";
        assert_eq!(k(inline).to_string(), inline);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("torus(2,)".parse::<KnotExpr>(), Err(KnotError::Parse { .. })));
        assert!(matches!(
            "knot".parse::<KnotExpr>(),
            Err(KnotError::Parse { position: 0, .. })
        ));
        assert!(matches!("sum(unknot".parse::<KnotExpr>(), Err(KnotError::Parse { .. })));
        assert!(matches!("unknot x".parse::<KnotExpr>(), Err(KnotError::Parse { .. })));
        assert_eq!(
            "table(9_42)".parse::<KnotExpr>(),
            Err(KnotError::UnknownTableKnot("9_42".into()))
        );
        assert!(matches!(
            "table(k; delta=1 + t)".parse::<KnotExpr>(),
            Err(KnotError::Parse { .. })
        ));
    }

    #[test]
    fn builtin_table_is_consistent() {
        for entry in KnotTable::builtin().entries() {
            let d = entry.delta.as_ref().unwrap();
            assert!(d.evaluate_at_one().abs().is_one(), "{}", entry.name);
            assert!(d.equal_up_to_unit(&d.invert_variable()), "{}", entry.name);
            assert!(d.breadth().unwrap() <= 2 * entry.genus.unwrap(), "{}", entry.name);
        }
    }

    fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
        (2u64..9, 2u64..9).prop_filter("coprime", |(p, q)| p.gcd(q) == 1)
    }

    fn knot_expr() -> impl Strategy<Value = KnotExpr> {
        let leaf = prop_oneof![
            Just(KnotExpr::Unknot),
            coprime_pair().prop_map(|(p, q)| torus(p, q)),
            prop::sample::select(vec!["3_1", "4_1", "5_2", "6_1", "6_3"])
                .prop_map(|n| KnotExpr::Table(KnotTable::builtin().get(n).unwrap().clone())),
        ];
        leaf.prop_recursive(2, 8, 3, |inner| {
            prop::collection::vec(inner, 1..4).prop_map(KnotExpr::Sum)
        })
    }

    proptest! {
        #[test]
        fn knot_polynomial_properties(e in knot_expr()) {
            let n = e.normalize().unwrap();
            let d = n.alexander().unwrap();
            prop_assert!(d.evaluate_at_one().abs().is_one());
            prop_assert!(d.equal_up_to_unit(&d.invert_variable()));
            let g = n.genus().exact().unwrap();
            prop_assert!(d.breadth().unwrap() <= 2 * g);
        }

        #[test]
        fn sum_is_additive_and_multiplicative(a in knot_expr(), b in knot_expr()) {
            let (a, b) = (a.normalize().unwrap(), b.normalize().unwrap());
            let s = sum([a.clone(), b.clone()]).normalize().unwrap();
            prop_assert_eq!(s.genus().exact().unwrap(), a.genus().exact().unwrap() + b.genus().exact().unwrap());
            let prod = &a.alexander().unwrap() * &b.alexander().unwrap();
            prop_assert!(s.alexander().unwrap().equal_up_to_unit(&prod));
        }

        #[test]
        fn print_parse_round_trip(e in knot_expr()) {
            let text = e.to_string();
            let back: KnotExpr = text.parse().unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, e);
        }
    }
}
