//! Crossed homomorphisms `k(fg) = k(f) + f·k(g)` with values in homology,
//! given by their values on the Dehn-twist generators.
//!
//! A cocycle here is only an assignment on generators. It is checked against
//! the braid and commuting relations of [`relation_catalog`]; that is a
//! necessary condition for it to extend to the whole group, not a proof that
//! it does.

use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{self, LinearSolution, Matrix, Scalar, Vector};
use crate::surface::{generator_set, relation_catalog, GeneratorId, SurfaceSig, TwistWord};
use crate::symplectic::{self, block_embed, curve_class, rho0, rho0_power};
use crate::{Error, Result};

/// Values of a cocycle on each generator, in generator order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedHomData {
    sig: SurfaceSig,
    gens: Vec<GeneratorId>,
    values: Vec<Vector>,
}

impl CrossedHomData {
    /// Builds from `(generator, value)` pairs; every generator of the surface
    /// must appear exactly once with a vector of length `2g`.
    pub fn new(
        sig: SurfaceSig,
        entries: impl IntoIterator<Item = (GeneratorId, Vector)>,
    ) -> Result<Self> {
        let gens = generator_set(&sig)?;
        let mut values: Vec<Option<Vector>> = vec![None; gens.len()];
        for (gen, v) in entries {
            let slot = gens.iter().position(|&g| g == gen).ok_or_else(|| {
                Error::InvalidGenerator(format!("{gen} (g={}, p={}, r={})", sig.g, sig.p, sig.r))
            })?;
            if v.len() != sig.homology_dim() {
                return Err(Error::Shape(format!(
                    "value for {gen} has length {}, expected {}",
                    v.len(),
                    sig.homology_dim()
                )));
            }
            if values[slot].replace(v).is_some() {
                return Err(Error::Parse(format!("duplicate value for {gen}")));
            }
        }
        let values = values
            .into_iter()
            .zip(&gens)
            .map(|(v, g)| v.ok_or_else(|| Error::MissingGenerator(g.to_string())))
            .collect::<Result<_>>()?;
        Ok(CrossedHomData { sig, gens, values })
    }

    pub fn zero(sig: SurfaceSig) -> Result<Self> {
        let gens = generator_set(&sig)?;
        let values = vec![algebra::zero_vec(sig.homology_dim()); gens.len()];
        Ok(CrossedHomData { sig, gens, values })
    }

    pub fn sig(&self) -> &SurfaceSig {
        &self.sig
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.gens
    }

    pub fn get(&self, gen: GeneratorId) -> Result<&Vector> {
        self.gens
            .iter()
            .position(|&g| g == gen)
            .map(|k| &self.values[k])
            .ok_or_else(|| Error::InvalidGenerator(gen.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (GeneratorId, &Vector)> {
        self.gens.iter().copied().zip(&self.values)
    }

    pub fn map_values(&self, mut f: impl FnMut(GeneratorId, &Vector) -> Vector) -> Self {
        let values = self.iter().map(|(g, v)| f(g, v)).collect();
        CrossedHomData {
            sig: self.sig,
            gens: self.gens.clone(),
            values,
        }
    }

    pub fn scale(&self, z: &Scalar) -> Self {
        self.map_values(|_, v| algebra::vec_scale(v, z))
    }

    pub fn add(&self, other: &CrossedHomData) -> Result<Self> {
        self.same_sig(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| algebra::vec_add(a, b))
            .collect();
        Ok(CrossedHomData {
            sig: self.sig,
            gens: self.gens.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &CrossedHomData) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| algebra::is_zero_vec(v))
    }

    fn same_sig(&self, other: &CrossedHomData) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::Shape(format!(
                "cocycles live on {} and {}",
                self.sig, other.sig
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl Serialize for CrossedHomData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            sig: &'a SurfaceSig,
            values: OrderedMap<'a, Vector>,
        }
        Out {
            sig: &self.sig,
            values: OrderedMap(&self.gens, &self.values),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CrossedHomData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            sig: SurfaceSig,
            values: serde_json::Map<String, serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        raw.sig.validate().map_err(D::Error::custom)?;
        let mut entries = Vec::new();
        for (k, v) in raw.values {
            let gen: GeneratorId = k.parse().map_err(D::Error::custom)?;
            let vec: Vector = serde_json::from_value(v).map_err(D::Error::custom)?;
            entries.push((gen, vec));
        }
        CrossedHomData::new(raw.sig, entries).map_err(D::Error::custom)
    }
}

/// Serializes parallel `(keys, values)` slices as an ordered JSON object.
struct OrderedMap<'a, V>(&'a [GeneratorId], &'a [V]);

impl<V: Serialize> Serialize for OrderedMap<'_, V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

/// A representation given by its images on the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRep {
    sig: SurfaceSig,
    dim: usize,
    gens: Vec<GeneratorId>,
    images: Vec<Matrix>,
}

impl GeneratorRep {
    /// Every generator needs a square `dim x dim` invertible image.
    pub fn new(
        sig: SurfaceSig,
        entries: impl IntoIterator<Item = (GeneratorId, Matrix)>,
    ) -> Result<Self> {
        let gens = generator_set(&sig)?;
        let mut images: Vec<Option<Matrix>> = vec![None; gens.len()];
        let mut dim = None;
        for (gen, m) in entries {
            let slot = gens
                .iter()
                .position(|&g| g == gen)
                .ok_or_else(|| Error::InvalidGenerator(gen.to_string()))?;
            if !m.is_square() {
                return Err(Error::NotSquare {
                    op: "generator image",
                    shape: m.shape(),
                });
            }
            match dim {
                None => dim = Some(m.rows()),
                Some(d) if d != m.rows() => {
                    return Err(Error::Shape(format!(
                        "image of {gen} is {}x{}, expected {d}x{d}",
                        m.rows(),
                        m.cols()
                    )));
                }
                _ => {}
            }
            algebra::inverse(&m)
                .map_err(|e| Error::Shape(format!("image of {gen} is not invertible: {e}")))?;
            if images[slot].replace(m).is_some() {
                return Err(Error::Parse(format!("duplicate image for {gen}")));
            }
        }
        let images = images
            .into_iter()
            .zip(&gens)
            .map(|(m, g)| m.ok_or_else(|| Error::MissingGenerator(g.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let dim = dim.unwrap_or(0);
        Ok(GeneratorRep {
            sig,
            dim,
            gens,
            images,
        })
    }

    /// The symplectic representation itself (dimension `2g`).
    pub fn rho0(sig: SurfaceSig) -> Result<Self> {
        let gens = generator_set(&sig)?;
        let images = gens.iter().map(|&g| rho0(&sig, g)).collect::<Result<_>>()?;
        Ok(GeneratorRep {
            sig,
            dim: sig.homology_dim(),
            gens,
            images,
        })
    }

    /// `rho0 ⊕ trivial` (dimension `2g + 1`).
    pub fn rho0_plus_trivial(sig: SurfaceSig) -> Result<Self> {
        build_phi_c(&CrossedHomData::zero(sig)?)
    }

    pub fn sig(&self) -> &SurfaceSig {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.gens
    }

    pub fn image(&self, gen: GeneratorId) -> Result<&Matrix> {
        self.gens
            .iter()
            .position(|&g| g == gen)
            .map(|k| &self.images[k])
            .ok_or_else(|| Error::InvalidGenerator(gen.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (GeneratorId, &Matrix)> {
        self.gens.iter().copied().zip(&self.images)
    }

    pub fn map_images(
        &self,
        mut f: impl FnMut(GeneratorId, &Matrix) -> Result<Matrix>,
    ) -> Result<Self> {
        let images = self
            .iter()
            .map(|(g, m)| f(g, m))
            .collect::<Result<Vec<_>>>()?;
        let dim = images.first().map_or(self.dim, Matrix::rows);
        Ok(GeneratorRep {
            sig: self.sig,
            dim,
            gens: self.gens.clone(),
            images,
        })
    }

    /// Replaces one image (used to build perturbed fixtures).
    pub fn with_image(&self, gen: GeneratorId, m: Matrix) -> Result<Self> {
        let k = self
            .gens
            .iter()
            .position(|&g| g == gen)
            .ok_or_else(|| Error::InvalidGenerator(gen.to_string()))?;
        let mut out = self.clone();
        out.images[k] = m;
        Ok(out)
    }

    /// `A φ(f) A⁻¹` for every generator.
    pub fn conjugate(&self, a: &Matrix) -> Result<Self> {
        let a_inv = algebra::inverse(a)?;
        self.map_images(|_, m| Ok(&a.try_mul(m)? * &a_inv))
    }

    pub fn dual(&self) -> Result<Self> {
        self.map_images(|_, m| symplectic::dual_rep(m))
    }

    /// Image of a word, inverting images for negative exponents.
    pub fn image_word(&self, w: &TwistWord) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.dim);
        for &(gen, exp) in w.letters() {
            let base = self.image(gen)?;
            let base = if exp < 0 {
                algebra::inverse(base)?
            } else {
                base.clone()
            };
            acc = &acc * &base.pow(exp.unsigned_abs());
        }
        Ok(acc)
    }

    /// Labels of catalog relations that fail as matrix identities.
    pub fn relation_failures(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for rel in relation_catalog(&self.sig)?
            .iter()
            .filter(|r| r.is_checkable())
        {
            if self.image_word(&rel.lhs)? != self.image_word(&rel.rhs)? {
                bad.push(rel.label.clone());
            }
        }
        Ok(bad)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl Serialize for GeneratorRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            sig: &'a SurfaceSig,
            dim: usize,
            images: OrderedMap<'a, Matrix>,
        }
        Out {
            sig: &self.sig,
            dim: self.dim,
            images: OrderedMap(&self.gens, &self.images),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneratorRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            sig: SurfaceSig,
            dim: Option<usize>,
            images: serde_json::Map<String, serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        raw.sig.validate().map_err(D::Error::custom)?;
        let mut entries = Vec::new();
        for (k, v) in raw.images {
            let gen: GeneratorId = k.parse().map_err(D::Error::custom)?;
            let m: Matrix = serde_json::from_value(v).map_err(D::Error::custom)?;
            entries.push((gen, m));
        }
        let rep = GeneratorRep::new(raw.sig, entries).map_err(D::Error::custom)?;
        if let Some(d) = raw.dim {
            if d != rep.dim {
                return Err(D::Error::custom(format!(
                    "declared dim {d} but images are {}x{}",
                    rep.dim, rep.dim
                )));
            }
        }
        Ok(rep)
    }
}

/// Value of the cocycle extension on a word:
/// `k(w1 w2) = k(w1) + rho0(w1) k(w2)`, `k(f⁻¹) = -rho0(f)⁻¹ k(f)`.
pub fn extend_cocycle(c: &CrossedHomData, w: &TwistWord) -> Result<Vector> {
    let sig = c.sig;
    w.validate(&sig)?;
    let n = sig.homology_dim();
    let mut value = algebra::zero_vec(n);
    let mut prefix = Matrix::identity(n);
    for &(gen, exp) in w.letters() {
        let cv = c.get(gen)?;
        let step = rho0_power(&sig, gen, exp.signum())?;
        // k(x^e) for e > 0 is sum_{j<e} x^j k(x); for e < 0 it is
        // -sum_{j=1..|e|} x^{-j} k(x).
        let mut local = algebra::zero_vec(n);
        let mut v = if exp > 0 {
            cv.clone()
        } else {
            step.mul_vec(cv)?
        };
        for _ in 0..exp.unsigned_abs() {
            local = algebra::vec_add(&local, &v);
            v = step.mul_vec(&v)?;
        }
        if exp < 0 {
            local = algebra::vec_scale(&local, &-Scalar::one());
        }
        value = algebra::vec_add(&value, &prefix.mul_vec(&local)?);
        prefix = &prefix * &rho0_power(&sig, gen, exp)?;
    }
    Ok(value)
}

/// The coboundary `gen -> rho0(gen) w0 - w0`.
pub fn principal_cocycle(sig: &SurfaceSig, w0: &[Scalar]) -> Result<CrossedHomData> {
    if w0.len() != sig.homology_dim() {
        return Err(Error::Shape(format!(
            "w0 has length {}, expected {}",
            w0.len(),
            sig.homology_dim()
        )));
    }
    let gens = generator_set(sig)?;
    let values = gens
        .iter()
        .map(|&g| Ok(algebra::vec_sub(&rho0(sig, g)?.mul_vec(w0)?, w0)))
        .collect::<Result<_>>()?;
    Ok(CrossedHomData {
        sig: *sig,
        gens,
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub relation: String,
    pub lhs: Vector,
    pub rhs: Vector,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?} != {:?}", self.relation, self.lhs, self.rhs)
    }
}

/// Compares the cocycle extension on both sides of every braid and commuting
/// relation. Empty means consistent.
pub fn check_cocycle_on_relations(c: &CrossedHomData) -> Result<Vec<RelationViolation>> {
    let mut out = Vec::new();
    for rel in relation_catalog(&c.sig)?
        .iter()
        .filter(|r| r.is_checkable())
    {
        let lhs = extend_cocycle(c, &rel.lhs)?;
        let rhs = extend_cocycle(c, &rel.rhs)?;
        if lhs != rhs {
            out.push(RelationViolation {
                relation: rel.label.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(out)
}

/// Stacks `(rho0(gen) - I)` over all generators, with optional extra leading
/// columns.
fn stacked_system(sig: &SurfaceSig, gens: &[GeneratorId], lead: &[&[Vector]]) -> Result<Matrix> {
    let n = sig.homology_dim();
    let extra = lead.len();
    let mut a = Matrix::zeros(n * gens.len(), extra + n);
    for (k, &gen) in gens.iter().enumerate() {
        for (col, values) in lead.iter().enumerate() {
            a.set_block(k * n, col, &Matrix::column(&values[k]));
        }
        let shifted = &rho0(sig, gen)? - &Matrix::identity(n);
        a.set_block(k * n, extra, &shifted);
    }
    Ok(a)
}

/// Some `w0` with `c(gen) = (rho0(gen) - I) w0` for every generator.
pub fn is_coboundary(c: &CrossedHomData) -> Result<Option<Vector>> {
    let a = stacked_system(&c.sig, &c.gens, &[])?;
    let b: Vector = c.values.iter().flatten().cloned().collect();
    Ok(algebra::solve_linear(&a, &b)?.particular().cloned())
}

/// Certificate that `c1 = mu·c2 + ∂w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarEquivalence {
    pub mu: Scalar,
    pub w: Vector,
}

impl ScalarEquivalence {
    /// Substitutes the certificate back into `c1 = mu c2 + (rho0 - I) w`.
    pub fn verify(&self, c1: &CrossedHomData, c2: &CrossedHomData) -> Result<bool> {
        if self.mu.is_zero() {
            return Ok(false);
        }
        let rhs = c2
            .scale(&self.mu)
            .add(&principal_cocycle(&c1.sig, &self.w)?)?;
        Ok(&rhs == c1)
    }

    /// The certificate for the reverse direction: `c2 = (1/mu) c1 + ∂(-w/mu)`.
    pub fn reversed(&self) -> Self {
        let inv = self.mu.inv().expect("certificates have nonzero mu");
        ScalarEquivalence {
            mu: inv.clone(),
            w: algebra::vec_scale(&self.w, &-inv),
        }
    }
}

/// Solves `c1(gen) = mu c2(gen) + (rho0(gen) - I) w` for `(mu, w)` with
/// `mu != 0`. The system is linear in `(mu, w)` jointly.
pub fn cohomologous_mod_scalar(
    c1: &CrossedHomData,
    c2: &CrossedHomData,
) -> Result<Option<ScalarEquivalence>> {
    c1.same_sig(c2)?;
    let a = stacked_system(&c1.sig, &c1.gens, &[&c2.values])?;
    let b: Vector = c1.values.iter().flatten().cloned().collect();
    let LinearSolution::Feasible {
        particular,
        nullspace,
    } = algebra::solve_linear(&a, &b)?
    else {
        return Ok(None);
    };
    let mut sol = particular;
    if sol[0].is_zero() {
        // The mu coordinate is affine on the solution set; any null vector
        // with a nonzero mu component moves it off zero.
        match nullspace.iter().find(|v| !v[0].is_zero()) {
            Some(v) => sol = algebra::vec_add(&sol, v),
            None => return Ok(None),
        }
    }
    let mu = sol[0].clone();
    Ok(Some(ScalarEquivalence {
        mu,
        w: sol[1..].to_vec(),
    }))
}

/// `phi_c(gen) = [[rho0(gen), c(gen)], [0, 1]]`. Refuses cocycles that break
/// a catalog relation.
pub fn build_phi_c(c: &CrossedHomData) -> Result<GeneratorRep> {
    let violations = check_cocycle_on_relations(c)?;
    if !violations.is_empty() {
        return Err(Error::RelationViolations(violations));
    }
    let images = c
        .iter()
        .map(|(g, v)| block_embed(v, &rho0(&c.sig, g)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorRep {
        sig: c.sig,
        dim: c.sig.homology_dim() + 1,
        gens: c.gens.clone(),
        images,
    })
}

/// If `c(gen) = z·[gen]` for the generator's curve class, returns `z`.
/// Equivalently `phi_c(gen) - I` has rank at most one.
pub fn twist_value_coefficient(c: &CrossedHomData, gen: GeneratorId) -> Result<Option<Scalar>> {
    let class = curve_class(&c.sig, gen)?.to_vector();
    let value = c.get(gen)?;
    let Some(pivot) = class.iter().position(|x| !x.is_zero()) else {
        return Ok(algebra::is_zero_vec(value).then(Scalar::zero));
    };
    let z = &value[pivot] / &class[pivot];
    Ok((algebra::vec_scale(&class, &z) == *value).then_some(z))
}
