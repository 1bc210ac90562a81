//! Planar knot diagrams and the invariants computable from them.
//!
//! This module is deliberately independent of [`crate::knots`]: it computes
//! Alexander polynomials from the Alexander matrix of a diagram and genus
//! bounds from Seifert's algorithm, so that the closed formulas used by the
//! symbolic knot algebra can be checked against brute force.
//!
//! # PD convention
//!
//! A crossing `X[i,j,k,l]` lists the four edge labels meeting at the crossing
//! counterclockwise, starting from the incoming under-strand. The under-strand
//! therefore runs `i -> k`; the over-strand runs `l -> j` at a positive
//! crossing and `j -> l` at a negative one. The direction of the over-strand
//! is not written down: it is recovered by walking once around the knot.
//!
//! ```text
//!        k                  k
//!        ^                  ^
//!   l ---|--> j        l <--|--- j
//!        |                  |
//!        i                  i
//!     positive           negative
//! ```
//!
//! Multi-component links and non-planar codes are rejected.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("diagram has more than one component (knots only)")]
    MultiComponent,
    #[error("diagram is not planar ({faces} faces, expected {expected})")]
    NonPlanar { faces: usize, expected: usize },
    #[error("internal inconsistency: genus lower bound {lower} exceeds upper bound {upper}")]
    InconsistentBounds { lower: u64, upper: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    /// Slot through which the over-strand enters.
    fn over_in(self) -> usize {
        match self {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub labels: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.sign.over_in()
    }

    /// The outgoing slot adjacent to an incoming one (oriented smoothing).
    fn smoothing_partner(&self, slot: usize) -> usize {
        let next = (slot + 1) % 4;
        if self.is_incoming(next) {
            (slot + 3) % 4
        } else {
            next
        }
    }
}

/// A validated, oriented, single-component planar diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
}

type Slot = (usize, usize);

impl Diagram {
    pub fn unknot() -> Self {
        Self { crossings: Vec::new() }
    }

    /// Validates raw PD crossings and infers crossing signs.
    pub fn from_pd(raw: &[[u32; 4]]) -> Result<Self, DiagramError> {
        let n = raw.len();
        if n == 0 {
            return Ok(Self::unknot());
        }
        let occurrences = occurrences(raw)?;
        let other_end = |label: u32, here: Slot| -> Slot {
            let occ = &occurrences[&label];
            if occ[0] == here {
                occ[1]
            } else {
                occ[0]
            }
        };

        // Walk the knot once, entering crossing 0 along its under-strand.
        let mut over_in: Vec<Option<usize>> = vec![None; n];
        let mut visited = 0usize;
        let mut at: Slot = (0, 0);
        loop {
            let (c, slot) = at;
            match slot {
                0 => {}
                2 => {
                    return Err(DiagramError::Invalid(format!(
                        "crossing {} is entered against its under-strand orientation",
                        c + 1
                    )))
                }
                _ => {
                    if over_in[c].replace(slot).is_some() {
                        return Err(DiagramError::Invalid(format!(
                            "over-strand of crossing {} is traversed twice",
                            c + 1
                        )));
                    }
                }
            }
            visited += 2;
            let exit = (slot + 2) % 4;
            at = other_end(raw[c][exit], (c, exit));
            if at == (0, 0) {
                break;
            }
            if visited > 4 * n {
                return Err(DiagramError::Invalid("walk does not close up".into()));
            }
        }
        if visited != 4 * n {
            return Err(DiagramError::MultiComponent);
        }

        let crossings = raw
            .iter()
            .zip(&over_in)
            .map(|(&labels, over)| Crossing {
                labels,
                sign: if *over == Some(3) {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
            })
            .collect();
        let diagram = Self { crossings };
        let faces = diagram.face_count(&occurrences);
        if faces != n + 2 {
            return Err(DiagramError::NonPlanar { faces, expected: n + 2 });
        }
        Ok(diagram)
    }

    /// Parses `PD[X[a,b,c,d], ...]`.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let raw = PdParser::new(text).parse()?;
        Self::from_pd(&raw)
    }

    /// Parses a signed oriented Gauss code such as `O1- U2- O3- U1- O2- U3-`.
    ///
    /// Each token is `O` (over) or `U` (under), a crossing number and the
    /// crossing sign. Commas and whitespace between tokens are ignored.
    pub fn parse_gauss(text: &str) -> Result<Self, DiagramError> {
        let tokens = parse_gauss_tokens(text)?;
        let len = tokens.len();
        let mut by_crossing: HashMap<u32, [Option<(usize, Sign)>; 2]> = HashMap::new();
        for (visit, &(over, id, sign, pos)) in tokens.iter().enumerate() {
            let entry = by_crossing.entry(id).or_default();
            let slot = &mut entry[usize::from(over)];
            if slot.replace((visit, sign)).is_some() {
                return Err(DiagramError::Syntax {
                    position: pos,
                    message: format!("crossing {id} passed {} twice", if over { "over" } else { "under" }),
                });
            }
        }
        let in_label = |v: usize| if v == 0 { len as u32 } else { v as u32 };
        let out_label = |v: usize| v as u32 + 1;
        let mut ids: Vec<u32> = by_crossing.keys().copied().collect();
        ids.sort_unstable();
        let mut raw = Vec::with_capacity(ids.len());
        for id in ids {
            let [Some((u, su)), Some((o, so))] = by_crossing[&id] else {
                return Err(DiagramError::Invalid(format!(
                    "crossing {id} must appear once over and once under"
                )));
            };
            if su != so {
                return Err(DiagramError::Invalid(format!("crossing {id} has conflicting signs")));
            }
            let (j, l) = match su {
                Sign::Positive => (out_label(o), in_label(o)),
                Sign::Negative => (in_label(o), out_label(o)),
            };
            raw.push([in_label(u), j, out_label(u), l]);
        }
        Self::from_pd(&raw)
    }

    /// Closure of a braid on `strands` strands; generator `k` is `σ_k` and
    /// `-k` its inverse.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::Invalid("a braid needs at least one strand".into()));
        }
        let mut next_id = strands as u32;
        let mut current: Vec<u32> = (0..strands as u32).collect();
        let mut raw = Vec::with_capacity(word.len());
        for &g in word {
            let k = g.unsigned_abs() as usize;
            if g == 0 || k >= strands {
                return Err(DiagramError::Invalid(format!("generator {g} out of range")));
            }
            let (bl, br) = (current[k - 1], current[k]);
            let (tl, tr) = (next_id, next_id + 1);
            next_id += 2;
            raw.push(if g > 0 { [br, tr, tl, bl] } else { [bl, br, tr, tl] });
            current[k - 1] = tl;
            current[k] = tr;
        }
        // Close up: the top edge at each position is the bottom edge there.
        let mut rename: HashMap<u32, u32> = HashMap::new();
        for (pos, &top) in current.iter().enumerate() {
            if top == pos as u32 {
                return Err(DiagramError::MultiComponent);
            }
            rename.insert(top, pos as u32);
        }
        let mut compact: HashMap<u32, u32> = HashMap::new();
        let relabelled: Vec<[u32; 4]> = raw
            .iter()
            .map(|x| {
                x.map(|id| {
                    let id = rename.get(&id).copied().unwrap_or(id);
                    let fresh = compact.len() as u32 + 1;
                    *compact.entry(id).or_insert(fresh)
                })
            })
            .collect();
        Self::from_pd(&relabelled)
    }

    /// Signed Gauss code of the diagram, crossings numbered from 1 in PD order.
    pub fn to_gauss(&self) -> String {
        let n = self.crossings.len();
        if n == 0 {
            return String::new();
        }
        let mut tail: HashMap<u32, Slot> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                if c.is_incoming(slot) {
                    tail.insert(c.labels[slot], (ci, slot));
                }
            }
        }
        let mut tokens = Vec::with_capacity(2 * n);
        let mut at: Slot = (0, 0);
        loop {
            let (ci, slot) = at;
            let c = &self.crossings[ci];
            let sign = if c.sign == Sign::Positive { '+' } else { '-' };
            let kind = if slot == 0 { 'U' } else { 'O' };
            tokens.push(format!("{kind}{}{sign}", ci + 1));
            at = tail[&c.labels[(slot + 2) % 4]];
            if at == (0, 0) {
                break;
            }
        }
        tokens.join(" ")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Over-arc index of every edge label: edges are joined when they pass
    /// over a crossing.
    fn arcs(&self) -> HashMap<u32, usize> {
        let mut parent: HashMap<u32, u32> = HashMap::new();
        fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
            let p = *parent.entry(x).or_insert(x);
            if p == x {
                return x;
            }
            let root = find(parent, p);
            parent.insert(x, root);
            root
        }
        for c in &self.crossings {
            for &label in &c.labels {
                find(&mut parent, label);
            }
            let (a, b) = (find(&mut parent, c.labels[1]), find(&mut parent, c.labels[3]));
            parent.insert(a, b);
        }
        let mut labels: Vec<u32> = parent.keys().copied().collect();
        labels.sort_unstable();
        let mut index: HashMap<u32, usize> = HashMap::new();
        let mut out = HashMap::new();
        for label in labels {
            let root = find(&mut parent, label);
            let fresh = index.len();
            out.insert(label, *index.entry(root).or_insert(fresh));
        }
        out
    }

    pub fn arc_count(&self) -> usize {
        let arcs = self.arcs();
        arcs.values().copied().max().map_or(0, |m| m + 1)
    }

    /// The Alexander matrix: one row per crossing, one column per arc.
    pub fn alexander_matrix(&self) -> Vec<Vec<LaurentPoly>> {
        let arcs = self.arcs();
        let n = self.crossings.len();
        let one_minus_t = &LaurentPoly::one() - &LaurentPoly::t();
        let mut m = vec![vec![LaurentPoly::zero(); n]; n];
        for (row, c) in self.crossings.iter().enumerate() {
            let over = arcs[&c.labels[1]];
            let under_in = arcs[&c.labels[0]];
            let under_out = arcs[&c.labels[2]];
            let (into, out_of) = match c.sign {
                Sign::Positive => (LaurentPoly::t(), LaurentPoly::from(-1)),
                Sign::Negative => (LaurentPoly::from(-1), LaurentPoly::t()),
            };
            m[row][over] = &m[row][over] + &one_minus_t;
            m[row][under_in] = &m[row][under_in] + &into;
            m[row][under_out] = &m[row][under_out] + &out_of;
        }
        m
    }

    /// Canonical determinant of the Alexander matrix with one row and one
    /// column deleted.
    pub fn alexander_minor(&self, row: usize, col: usize) -> LaurentPoly {
        let m = self.alexander_matrix();
        let minor: Vec<Vec<LaurentPoly>> = m
            .into_iter()
            .enumerate()
            .filter(|&(r, _)| r != row)
            .map(|(_, cells)| {
                cells
                    .into_iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, x)| x)
                    .collect()
            })
            .collect();
        bareiss_determinant(minor).canonical_form()
    }

    /// Canonical-form Alexander polynomial.
    pub fn alexander(&self) -> LaurentPoly {
        let n = self.crossings.len();
        if n <= 1 {
            return LaurentPoly::one();
        }
        self.alexander_minor(n - 1, n - 1)
    }

    /// Number of circles produced by smoothing every crossing according to
    /// the orientation.
    pub fn seifert_circles(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        // Each label's head: the incoming slot where the edge ends.
        let mut head: HashMap<u32, Slot> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                if c.is_incoming(slot) {
                    head.insert(c.labels[slot], (ci, slot));
                }
            }
        }
        let mut seen: HashMap<u32, bool> = head.keys().map(|&l| (l, false)).collect();
        let mut labels: Vec<u32> = head.keys().copied().collect();
        labels.sort_unstable();
        let mut circles = 0;
        for start in labels {
            if seen[&start] {
                continue;
            }
            circles += 1;
            let mut label = start;
            while !seen[&label] {
                seen.insert(label, true);
                let (ci, slot) = head[&label];
                let c = &self.crossings[ci];
                label = c.labels[c.smoothing_partner(slot)];
            }
        }
        circles
    }

    /// Genus of the surface produced by Seifert's algorithm.
    pub fn seifert_genus_upper(&self) -> u64 {
        let c = self.crossings.len() as u64;
        let s = self.seifert_circles() as u64;
        (c + 1 - s) / 2
    }

    /// `(ceil(breadth(Δ)/2), seifert_genus_upper)`.
    pub fn genus_bounds(&self) -> Result<(u64, u64), DiagramError> {
        let lower = self.alexander().breadth().map_or(0, |b| b.div_ceil(2));
        let upper = self.seifert_genus_upper();
        if lower > upper {
            return Err(DiagramError::InconsistentBounds { lower, upper });
        }
        Ok((lower, upper))
    }

    fn face_count(&self, occurrences: &HashMap<u32, [Slot; 2]>) -> usize {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = 0;
        for c in 0..n {
            for s in 0..4 {
                if seen[c][s] {
                    continue;
                }
                faces += 1;
                let (mut ci, mut si) = (c, s);
                while !seen[ci][si] {
                    seen[ci][si] = true;
                    let occ = occurrences[&self.crossings[ci].labels[si]];
                    let (cj, sj) = if occ[0] == (ci, si) { occ[1] } else { occ[0] };
                    (ci, si) = (cj, (sj + 1) % 4);
                }
            }
        }
        faces
    }
}

fn occurrences(raw: &[[u32; 4]]) -> Result<HashMap<u32, [Slot; 2]>, DiagramError> {
    let mut seen: HashMap<u32, Vec<Slot>> = HashMap::new();
    for (c, x) in raw.iter().enumerate() {
        for (s, &label) in x.iter().enumerate() {
            if label == 0 {
                return Err(DiagramError::Invalid("edge labels must be positive".into()));
            }
            seen.entry(label).or_default().push((c, s));
        }
    }
    seen.into_iter()
        .map(|(label, slots)| match slots.as_slice() {
            [a, b] => Ok((label, [*a, *b])),
            _ => Err(DiagramError::Invalid(format!(
                "edge label {label} occurs {} times (expected 2)",
                slots.len()
            ))),
        })
        .collect()
}

/// Fraction-free Gaussian elimination over `Z[t, 1/t]`.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = cross.div_exact(&prev).expect("Bareiss quotients are exact");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_pd(s)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PD[")?;
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let [a, b, c, d] = c.labels;
            write!(f, "X[{a},{b},{c},{d}]")?;
        }
        f.write_str("]")
    }
}

struct PdParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> PdParser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> DiagramError {
        DiagramError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, token: &str) -> Result<(), DiagramError> {
        for &b in token.as_bytes() {
            if self.peek() != Some(b) {
                return Err(self.err(format!("expected '{token}'")));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn label(&mut self) -> Result<u32, DiagramError> {
        self.peek();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        match digits.parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => {
                self.pos = start;
                Err(self.err("expected a positive integer label"))
            }
        }
    }

    fn parse(mut self) -> Result<Vec<[u32; 4]>, DiagramError> {
        self.expect("PD[")?;
        let mut crossings = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
        } else {
            loop {
                self.expect("X[")?;
                let mut labels = [0u32; 4];
                for (i, slot) in labels.iter_mut().enumerate() {
                    if i > 0 {
                        if self.peek() == Some(b']') {
                            return Err(self.err("crossing needs 4 labels"));
                        }
                        self.expect(",")?;
                    }
                    *slot = self.label()?;
                }
                if self.peek() == Some(b',') {
                    return Err(self.err("crossing needs exactly 4 labels"));
                }
                self.expect("]")?;
                crossings.push(labels);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ']'")),
                }
            }
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(crossings)
    }
}

fn parse_gauss_tokens(text: &str) -> Result<Vec<(bool, u32, Sign, usize)>, DiagramError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let err = |position, message: &str| DiagramError::Syntax {
        position,
        message: message.to_string(),
    };
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() || b == b',' {
            pos += 1;
            continue;
        }
        let start = pos;
        let over = match b {
            b'O' | b'o' => true,
            b'U' | b'u' => false,
            _ => return Err(err(pos, "expected 'O' or 'U'")),
        };
        pos += 1;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let id: u32 = text[digits_start..pos]
            .parse()
            .map_err(|_| err(digits_start, "expected crossing number"))?;
        let sign = match bytes.get(pos) {
            Some(b'+') => Sign::Positive,
            Some(b'-') => Sign::Negative,
            _ => return Err(err(pos, "expected crossing sign '+' or '-'")),
        };
        pos += 1;
        out.push((over, id, sign, start));
    }
    Ok(out)
}
