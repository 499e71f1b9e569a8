use std::collections::BTreeMap;
use std::sync::Arc;

use crate::data::Domain;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An endomorphism of a finite domain, stored as the image of each point.
///
/// Products are written in action order: `g.mul(h)` is the map `x ↦ g(h(x))`,
/// so that `(phi g) h = phi (g h)` for the right action `phi g = phi ∘ g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endo(Vec<usize>);

impl Endo {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::DomainMismatch(format!("image {bad} outside a {n}-point domain")));
        }
        Ok(Endo(images))
    }

    pub fn identity(n: usize) -> Self {
        Endo((0..n).collect())
    }

    pub fn constant(n: usize, x: usize) -> Self {
        Endo(vec![x; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `x ↦ self(other(x))`
    pub fn mul(&self, other: &Endo) -> Endo {
        Endo(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &x in &self.0 {
            if seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<Endo> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Some(Endo(inv))
    }
}

/// A total function `source → target` between two domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    source: Arc<Domain>,
    target: Arc<Domain>,
    map: Vec<usize>,
}

impl PointMap {
    pub fn new(source: impl Into<Arc<Domain>>, target: impl Into<Arc<Domain>>, map: Vec<usize>) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        if map.len() != source.len() {
            return Err(Error::DomainMismatch(format!(
                "map has {} entries, source has {} points",
                map.len(),
                source.len()
            )));
        }
        if map.iter().any(|&x| x >= target.len()) {
            return Err(Error::DomainMismatch("image outside the target domain".into()));
        }
        Ok(PointMap { source, target, map })
    }

    /// Builds a map from `(source point, target point)` name pairs; every
    /// source point must appear.
    pub fn from_names<'a, I>(source: impl Into<Arc<Domain>>, target: impl Into<Arc<Domain>>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let (source, target) = (source.into(), target.into());
        let mut map = vec![None; source.len()];
        for (from, to) in pairs {
            map[source.resolve(from)?] = Some(target.resolve(to)?);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::PartialMap(source.point(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointMap { source, target, map })
    }

    pub fn identity(domain: impl Into<Arc<Domain>>) -> Self {
        let domain = domain.into();
        let map = (0..domain.len()).collect();
        PointMap { source: domain.clone(), target: domain, map }
    }

    /// Inclusion of the listed points (in the given order) into `target`.
    pub fn inclusion(target: impl Into<Arc<Domain>>, points: &[usize]) -> Result<Self> {
        let target = target.into();
        let source = Domain::new(points.iter().map(|&i| target.point(i).to_string()))?;
        PointMap::new(source, target, points.to_vec())
    }

    pub fn source(&self) -> &Domain {
        &self.source
    }

    pub fn target(&self) -> &Domain {
        &self.target
    }

    pub(crate) fn source_arc(&self) -> &Arc<Domain> {
        &self.source
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, y: usize) -> usize {
        self.map[y]
    }

    /// `self ∘ inner`, defined when `inner.target == self.source`.
    pub fn compose(&self, inner: &PointMap) -> Result<PointMap> {
        if *inner.target != *self.source {
            return Err(Error::DomainMismatch("composition endpoints differ".into()));
        }
        Ok(PointMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: inner.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && Endo(self.map.clone()).is_bijective()
    }

    pub fn inverse(&self) -> Result<PointMap> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut inv = vec![0; self.map.len()];
        for (y, &x) in self.map.iter().enumerate() {
            inv[x] = y;
        }
        Ok(PointMap { source: self.target.clone(), target: self.source.clone(), map: inv })
    }

    /// `f1 ∐ f2 : Z1 ∐ Z2 → X ∐ Y` with the `L:`/`R:` tagging used by
    /// coproducts.
    pub fn coproduct(f1: &PointMap, f2: &PointMap) -> PointMap {
        let tag = |a: &Domain, b: &Domain| {
            Domain::new(a.tagged("L:").into_iter().chain(b.tagged("R:"))).expect("tags keep points distinct")
        };
        let source = tag(&f1.source, &f2.source);
        let target = tag(&f1.target, &f2.target);
        let offset = f1.target.len();
        let map = f1.map.iter().copied().chain(f2.map.iter().map(|&x| x + offset)).collect();
        PointMap { source: Arc::new(source), target: Arc::new(target), map }
    }

    /// The endomorphism with the same images; requires equal endpoints.
    pub fn to_endo(&self) -> Result<Endo> {
        if *self.source != *self.target {
            return Err(Error::DomainMismatch("not an endomorphism".into()));
        }
        Ok(Endo(self.map.clone()))
    }

    pub fn from_endo(domain: impl Into<Arc<Domain>>, g: &Endo) -> PointMap {
        let domain = domain.into();
        PointMap { source: domain.clone(), target: domain, map: g.0.clone() }
    }
}

/// A map `R → R` applied value-wise to measurements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueMap {
    Identity,
    Negate,
    /// `v ↦ a v + b`
    Affine(Rational, Rational),
    /// Negative values to `-1`, the rest to `1`.
    ClampSign,
    /// Explicit finite table; lookups outside it fail.
    Table(BTreeMap<Rational, Rational>),
}

impl ValueMap {
    pub fn apply(&self, v: Rational) -> Result<Rational> {
        let one = Rational::from_integer(1);
        Ok(match self {
            ValueMap::Identity => v,
            ValueMap::Negate => -v,
            ValueMap::Affine(a, b) => a * v + b,
            ValueMap::ClampSign => {
                if v < Rational::from_integer(0) {
                    -one
                } else {
                    one
                }
            }
            ValueMap::Table(t) => *t.get(&v).ok_or(Error::ValueMapMiss(v))?,
        })
    }

    pub fn apply_all(&self, values: &[Rational]) -> Result<Vec<Rational>> {
        values.iter().map(|&v| self.apply(v)).collect()
    }

    /// The inverse map, when this one is a bijection (for tables: injective on
    /// their keys, the inverse being defined on the image).
    pub fn inverse(&self) -> Result<ValueMap> {
        match self {
            ValueMap::Identity => Ok(ValueMap::Identity),
            ValueMap::Negate => Ok(ValueMap::Negate),
            ValueMap::Affine(a, b) => {
                if *a == Rational::from_integer(0) {
                    return Err(Error::NotInvertible);
                }
                let inv = a.recip();
                Ok(ValueMap::Affine(inv, -b * inv))
            }
            ValueMap::ClampSign => Err(Error::NotInvertible),
            ValueMap::Table(t) => {
                let mut inv = BTreeMap::new();
                for (&k, &v) in t {
                    if inv.insert(v, k).is_some() {
                        return Err(Error::NotInvertible);
                    }
                }
                Ok(ValueMap::Table(inv))
            }
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }
}
