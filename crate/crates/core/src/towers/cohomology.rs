use std::collections::BTreeMap;
use std::fmt;

use super::ValidTower;

/// First Čech cohomology of the intersection, up to isomorphism class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum H1Class {
    Trivial,
    Z,
    NotFinitelyGenerated,
}

impl H1Class {
    pub fn tag(self) -> &'static str {
        match self {
            H1Class::Trivial => "trivial",
            H1Class::Z => "Z",
            H1Class::NotFinitelyGenerated => "not_finitely_generated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

/// A supernatural number `∏ p^e(p)` with `e(p) ∈ ℕ ∪ {∞}`.
///
/// The direct limit of `ℤ --w₀--> ℤ --w₁--> ...` is the subgroup of `ℚ`
/// generated by the `1/(w₀⋯wₖ)`; its isomorphism type is this number up to
/// changing finitely many finite exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Steinitz {
    exponents: BTreeMap<u64, Exponent>,
}

impl Steinitz {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Exponent> {
        &self.exponents
    }

    pub fn exponent(&self, prime: u64) -> Exponent {
        self.exponents.get(&prime).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn has_infinite_exponent(&self) -> bool {
        self.exponents.values().any(|e| *e == Exponent::Infinite)
    }

    fn multiply(&mut self, n: u64, infinite: bool) {
        for (p, e) in factorize(n) {
            let slot = self.exponents.entry(p).or_insert(Exponent::Finite(0));
            *slot = match (*slot, infinite) {
                (Exponent::Infinite, _) | (_, true) => Exponent::Infinite,
                (Exponent::Finite(a), false) => Exponent::Finite(a + e),
            };
        }
    }
}

impl fmt::Display for Steinitz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            match e {
                Exponent::Infinite => write!(f, "{p}^inf")?,
                Exponent::Finite(1) => write!(f, "{p}")?,
                Exponent::Finite(k) => write!(f, "{p}^{k}")?,
            }
        }
        Ok(())
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohProfile {
    pub h1: H1Class,
    /// Present unless `h1` is trivial.
    pub steinitz: Option<Steinitz>,
    /// Always true: a nested intersection of solid tori has no Ȟ² or higher.
    pub h2_trivial: bool,
}

impl ValidTower {
    pub fn cech_h1(&self) -> CohProfile {
        let t = self.tower();
        if t.cycle.iter().any(|s| s.winding == 0) {
            return CohProfile {
                h1: H1Class::Trivial,
                steinitz: None,
                h2_trivial: true,
            };
        }
        let mut steinitz = Steinitz::one();
        let tail = t
            .prefix
            .iter()
            .rposition(|s| s.winding == 0)
            .map_or(&t.prefix[..], |z| &t.prefix[z + 1..]);
        for s in tail {
            steinitz.multiply(s.winding, false);
        }
        for s in &t.cycle {
            steinitz.multiply(s.winding, true);
        }
        let h1 = if steinitz.has_infinite_exponent() {
            H1Class::NotFinitelyGenerated
        } else {
            H1Class::Z
        };
        CohProfile {
            h1,
            steinitz: Some(steinitz),
            h2_trivial: true,
        }
    }
}
