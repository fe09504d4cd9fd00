//! Surfaces, the Dehn-twist generating set, and twist words.
//!
//! A surface `S_{g,r}^p` has genus `g`, `p` boundary components and `r`
//! punctures. Its pure mapping class group is generated (for `g >= 2`) by the
//! twists along
//!
//! ```text
//! a_1, b_1, ..., a_g, b_g;  c_1, ..., c_{g-1};  e_1, ..., e_p;  f_1, ..., f_r
//! ```
//!
//! The intersection pattern among these curves is fixed by [`intersects_once`]:
//! `a_i` meets `b_i`, `c_k` meets `b_k` and `b_{k+1}`, and every `e_j`, `f_j`
//! meets `b_1`. Everything else is disjoint.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    #[serde(alias = "genus")]
    pub g: u32,
    #[serde(alias = "boundary", default)]
    pub p: u32,
    #[serde(alias = "punctures", default)]
    pub r: u32,
}

impl SurfaceSig {
    pub fn new(g: u32, p: u32, r: u32) -> Result<Self> {
        let sig = SurfaceSig { g, p, r };
        sig.validate()?;
        Ok(sig)
    }

    pub fn closed(g: u32) -> Result<Self> {
        SurfaceSig::new(g, 0, 0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.g < 1 {
            return Err(Error::UnsupportedGenus { g: self.g, min: 1 });
        }
        Ok(())
    }

    /// The generator-level results all need `g >= 2`.
    pub fn require_genus_two(&self) -> Result<()> {
        if self.g < 2 {
            return Err(Error::UnsupportedGenus { g: self.g, min: 2 });
        }
        Ok(())
    }

    /// Dimension of the homology `H_1` of the closed-up surface.
    pub fn homology_dim(&self) -> usize {
        2 * self.g as usize
    }

    pub fn contains(&self, gen: GeneratorId) -> bool {
        let bound = match gen.family {
            Family::A | Family::B => self.g,
            Family::C => self.g.saturating_sub(1),
            Family::E => self.p,
            Family::F => self.r,
        };
        (1..=bound).contains(&gen.index)
    }

    pub fn check(&self, gen: GeneratorId) -> Result<()> {
        if self.contains(gen) {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(format!(
                "{gen} (g={}, p={}, r={})",
                self.g, self.p, self.r
            )))
        }
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(g={}, p={}, r={})", self.g, self.p, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    E,
    F,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::E => 'e',
            Family::F => 'f',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub family: Family,
    pub index: u32,
}

impl GeneratorId {
    pub const fn new(family: Family, index: u32) -> Self {
        GeneratorId { family, index }
    }
    pub const fn a(i: u32) -> Self {
        GeneratorId::new(Family::A, i)
    }
    pub const fn b(i: u32) -> Self {
        GeneratorId::new(Family::B, i)
    }
    pub const fn c(i: u32) -> Self {
        GeneratorId::new(Family::C, i)
    }
    pub const fn e(i: u32) -> Self {
        GeneratorId::new(Family::E, i)
    }
    pub const fn f(i: u32) -> Self {
        GeneratorId::new(Family::F, i)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid generator {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_lowercase()) {
            Some('a') => Family::A,
            Some('b') => Family::B,
            Some('c') => Family::C,
            Some('e') => Family::E,
            Some('f') => Family::F,
            _ => return Err(bad()),
        };
        let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(GeneratorId { family, index })
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// The Dehn-twist generators, in the order
/// `a1, b1, a2, b2, ..., ag, bg, c1, ..., c(g-1), e1, ..., ep, f1, ..., fr`.
///
/// Fails for `g < 2`, where this generating set is not available.
pub fn generator_set(sig: &SurfaceSig) -> Result<Vec<GeneratorId>> {
    sig.validate()?;
    sig.require_genus_two()?;
    Ok(generators_unchecked(sig))
}

/// Same order as [`generator_set`] but without the genus restriction; used
/// where only the `a_i`, `b_i` are meaningful (`g = 1`).
pub(crate) fn generators_unchecked(sig: &SurfaceSig) -> Vec<GeneratorId> {
    let mut out = Vec::new();
    for i in 1..=sig.g {
        out.push(GeneratorId::a(i));
        out.push(GeneratorId::b(i));
    }
    out.extend((1..sig.g).map(GeneratorId::c));
    out.extend((1..=sig.p).map(GeneratorId::e));
    out.extend((1..=sig.r).map(GeneratorId::f));
    out
}

/// Whether the two generator curves meet transversely in exactly one point.
pub fn intersects_once(sig: &SurfaceSig, x: GeneratorId, y: GeneratorId) -> Result<bool> {
    sig.check(x)?;
    sig.check(y)?;
    Ok(meets_once(x, y) || meets_once(y, x))
}

fn meets_once(x: GeneratorId, y: GeneratorId) -> bool {
    use Family::*;
    match (x.family, y.family) {
        (A, B) => x.index == y.index,
        (C, B) => y.index == x.index || y.index == x.index + 1,
        (E, B) | (F, B) => y.index == 1,
        _ => false,
    }
}

/// A word in the twist generators with nonzero exponents; adjacent letters on
/// the same generator are always merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TwistWord {
    letters: Vec<(GeneratorId, i32)>,
}

impl TwistWord {
    pub fn identity() -> Self {
        TwistWord::default()
    }

    pub fn letter(gen: GeneratorId) -> Self {
        TwistWord {
            letters: vec![(gen, 1)],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (GeneratorId, i32)>) -> Self {
        let mut w = TwistWord::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Product of single letters, e.g. `TwistWord::product(&[a1, b1, a1])`.
    pub fn product(gens: &[GeneratorId]) -> Self {
        TwistWord::from_letters(gens.iter().map(|&g| (g, 1)))
    }

    pub fn letters(&self) -> &[(GeneratorId, i32)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, gen: GeneratorId, exp: i32) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn inverse(&self) -> Self {
        TwistWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &TwistWord) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    /// `by · self · by⁻¹`.
    pub fn conjugate(&self, by: &TwistWord) -> Self {
        by.concat(self).concat(&by.inverse())
    }

    pub fn validate(&self, sig: &SurfaceSig) -> Result<()> {
        self.letters.iter().try_for_each(|&(g, _)| sig.check(g))
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, (g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    /// Whitespace-separated letters like `a1 b1^-1 c2^3`. An empty string or
    /// `1` is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut w = TwistWord::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (gen, exp) = match tok.split_once('^') {
                Some((g, e)) => {
                    let e: i32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                    (g, e)
                }
                None => (tok, 1),
            };
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent in {tok:?}")));
            }
            w.push(gen.parse()?, exp);
        }
        Ok(w)
    }
}

impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Braid,
    Commute,
    LanternMetadata,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub lhs: TwistWord,
    pub rhs: TwistWord,
    /// Human-readable label, e.g. `braid(a1,b1)`.
    pub label: String,
}

impl RelationInstance {
    pub fn braid(x: GeneratorId, y: GeneratorId) -> Self {
        RelationInstance {
            kind: RelationKind::Braid,
            lhs: TwistWord::product(&[x, y, x]),
            rhs: TwistWord::product(&[y, x, y]),
            label: format!("braid({x},{y})"),
        }
    }

    pub fn commute(x: GeneratorId, y: GeneratorId) -> Self {
        RelationInstance {
            kind: RelationKind::Commute,
            lhs: TwistWord::product(&[x, y]),
            rhs: TwistWord::product(&[y, x]),
            label: format!("commute({x},{y})"),
        }
    }

    /// Whether the instance carries words that can be checked under a
    /// representation.
    pub fn is_checkable(&self) -> bool {
        self.kind != RelationKind::LanternMetadata
    }
}

/// One braid relation per once-intersecting pair, one commuting relation per
/// disjoint pair, plus a single lantern entry that carries no words (the
/// homology classes of the lantern curves are not part of this model).
pub fn relation_catalog(sig: &SurfaceSig) -> Result<Vec<RelationInstance>> {
    let gens = generator_set(sig)?;
    let mut out = Vec::with_capacity(gens.len() * (gens.len() - 1) / 2 + 1);
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if meets_once(x, y) || meets_once(y, x) {
                out.push(RelationInstance::braid(x, y));
            } else {
                out.push(RelationInstance::commute(x, y));
            }
        }
    }
    out.push(RelationInstance {
        kind: RelationKind::LanternMetadata,
        lhs: TwistWord::identity(),
        rhs: TwistWord::identity(),
        label: "lantern(four-holed sphere; curves not modelled)".into(),
    });
    Ok(out)
}

/// Abelianization `H_1(Mod(S); Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Abelianization {
    Cyclic(u32),
    Free(u32),
    Trivial,
}

pub fn abelianization(sig: &SurfaceSig) -> Result<Abelianization> {
    sig.validate()?;
    Ok(match (sig.g, sig.p) {
        (1, 0) => Abelianization::Cyclic(12),
        (1, p) => Abelianization::Free(p),
        (2, _) => Abelianization::Cyclic(10),
        _ => Abelianization::Trivial,
    })
}
