//! Data sets: finite families of rational-valued measurements on a finite
//! domain, together with the maps that act on them.

mod constructions;
mod maps;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{abs_diff, max_or_zero, Rational};

pub use constructions::{
    change_units, copair, coproduct, domain_change, pair, product, Coproduct, Product,
};
pub use maps::{Endo, PointMap, ValueMap};

/// An ordered finite set of point identifiers. The order fixes matrix
/// indexing everywhere downstream.
#[derive(Clone)]
pub struct Domain {
    points: Vec<String>,
    index: HashMap<String, usize>,
}

impl Domain {
    pub fn new<I, S>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Ok(Domain { points, index })
    }

    /// Points `prefix0 .. prefix{n-1}`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Domain::new((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct by construction")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, point: &str) -> Option<usize> {
        self.index.get(point).copied()
    }

    pub fn resolve(&self, point: &str) -> Result<usize> {
        self.index_of(point).ok_or_else(|| Error::UnknownPoint(point.to_string()))
    }

    /// Same points with every identifier prefixed by `tag`.
    pub fn tagged(&self, tag: &str) -> Vec<String> {
        self.points.iter().map(|p| format!("{tag}{p}")).collect()
    }
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Domain {}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}

/// A function from the domain to the rationals. Identity is extensional:
/// the aliases are names only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measurement {
    values: Vec<Rational>,
    aliases: Vec<String>,
}

impl Measurement {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Primary name: the first alias.
    pub fn name(&self) -> &str {
        &self.aliases[0]
    }

    pub fn aliases(&self) -> &[String] {
        &self.aliases
    }
}

/// A finite set of measurements on a common domain, deduplicated by value
/// vector and kept in first-seen order.
#[derive(Clone, Debug)]
pub struct DataSet {
    domain: Arc<Domain>,
    measurements: Vec<Measurement>,
    by_values: HashMap<Vec<Rational>, usize>,
    by_name: HashMap<String, usize>,
}

impl PartialEq for DataSet {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.measurements == other.measurements
    }
}

impl DataSet {
    /// Builds a non-empty data set. Entries with equal value vectors are
    /// merged, the later name becoming an alias.
    pub fn new<I>(domain: impl Into<Arc<Domain>>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Vec<Rational>)>,
    {
        Self::build(domain.into(), entries, false)
    }

    /// Like [`DataSet::new`] but an empty family is accepted; its pseudometric is
    /// identically zero.
    pub fn new_allow_empty<I>(domain: impl Into<Arc<Domain>>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Vec<Rational>)>,
    {
        Self::build(domain.into(), entries, true)
    }

    /// Unnamed vectors get the names `m0, m1, ...` after their input position.
    pub fn from_vectors<I>(domain: impl Into<Arc<Domain>>, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        Self::new(domain, vectors.into_iter().enumerate().map(|(i, v)| (format!("m{i}"), v)))
    }

    fn build<I>(domain: Arc<Domain>, entries: I, allow_empty: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Vec<Rational>)>,
    {
        let mut set = DataSet {
            domain,
            measurements: Vec::new(),
            by_values: HashMap::new(),
            by_name: HashMap::new(),
        };
        for (name, values) in entries {
            set.insert(name, values)?;
        }
        if set.measurements.is_empty() && !allow_empty {
            return Err(Error::EmptyDataSet);
        }
        Ok(set)
    }

    fn insert(&mut self, name: String, values: Vec<Rational>) -> Result<usize> {
        if values.len() != self.domain.len() {
            return Err(Error::WrongLength {
                name,
                expected: self.domain.len(),
                found: values.len(),
            });
        }
        if let Some(&existing) = self.by_name.get(&name) {
            if self.measurements[existing].values == values {
                return Ok(existing);
            }
            return Err(Error::DuplicateName(name));
        }
        let idx = match self.by_values.get(&values) {
            Some(&idx) => {
                self.measurements[idx].aliases.push(name.clone());
                idx
            }
            None => {
                let idx = self.measurements.len();
                self.by_values.insert(values.clone(), idx);
                self.measurements.push(Measurement { values, aliases: vec![name.clone()] });
                idx
            }
        };
        self.by_name.insert(name, idx);
        Ok(idx)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub(crate) fn domain_arc(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.measurements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measurements.is_empty()
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn values(&self, i: usize) -> &[Rational] {
        &self.measurements[i].values
    }

    pub fn name(&self, i: usize) -> &str {
        self.measurements[i].name()
    }

    pub fn names(&self) -> Vec<String> {
        self.measurements.iter().map(|m| m.name().to_string()).collect()
    }

    /// The measurements at `indices`, in that order, aliases kept.
    pub fn subset(&self, indices: &[usize]) -> Result<DataSet> {
        let entries = indices.iter().flat_map(|&i| {
            let m = &self.measurements[i];
            m.aliases.iter().map(move |a| (a.clone(), m.values.clone()))
        });
        DataSet::build(self.domain.clone(), entries, true)
    }

    /// Index of the measurement with exactly these values.
    pub fn find(&self, values: &[Rational]) -> Option<usize> {
        self.by_values.get(values).copied()
    }

    pub fn find_name(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn resolve(&self, name: &str) -> Result<usize> {
        self.find_name(name).ok_or_else(|| Error::UnknownMeasurement(name.to_string()))
    }

    /// Index of `phi ∘ g`, if it belongs to the set.
    pub fn act(&self, phi: usize, g: &[usize]) -> Option<usize> {
        self.find(&precompose(self.values(phi), g))
    }

    pub fn sup_distance(&self, i: usize, j: usize) -> Rational {
        sup_norm_distance(self.values(i), self.values(j))
    }

    /// `d(x, y) = max_phi |phi(x) - phi(y)|`
    pub fn pseudometric(&self) -> Pseudometric {
        let n = self.domain.len();
        let mut data = vec![Rational::zero(); n * n];
        for x in 0..n {
            for y in (x + 1)..n {
                let d = max_or_zero(self.measurements.iter().map(|m| abs_diff(&m.values[x], &m.values[y])));
                data[x * n + y] = d;
                data[y * n + x] = d;
            }
        }
        Pseudometric { n, data }
    }

    /// True when both sets live on equal domains and hold the same vectors,
    /// regardless of order and names.
    pub fn same_measurements(&self, other: &DataSet) -> bool {
        self.domain == other.domain
            && self.len() == other.len()
            && self.measurements.iter().all(|m| other.find(&m.values).is_some())
    }

    /// Distinct values taken by any measurement, ascending.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.measurements.iter().flat_map(|m| m.values.iter().copied()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `out[y] = values[map[y]]`
pub fn precompose(values: &[Rational], map: &[usize]) -> Vec<Rational> {
    map.iter().map(|&x| values[x]).collect()
}

/// `max_x |phi(x) - psi(x)|`; vectors must have equal length.
pub fn sup_norm_distance(phi: &[Rational], psi: &[Rational]) -> Rational {
    debug_assert_eq!(phi.len(), psi.len());
    max_or_zero(phi.iter().zip(psi).map(|(a, b)| abs_diff(a, b)))
}

/// Checked version of [`sup_norm_distance`] for measurements of unknown origin.
pub fn sup_distance(phi: &[Rational], psi: &[Rational]) -> Result<Rational> {
    if phi.len() != psi.len() {
        return Err(Error::DomainMismatch(format!("{} vs {} points", phi.len(), psi.len())));
    }
    Ok(sup_norm_distance(phi, psi))
}

/// Symmetric distance matrix on the points of a domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pseudometric {
    n: usize,
    data: Vec<Rational>,
}

impl Pseudometric {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let data: Vec<Rational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * n, "distance matrix must be square");
        Pseudometric { n, data }
    }

    pub fn zero(n: usize) -> Self {
        Pseudometric { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> Rational {
        self.data[x * self.n + y]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|c| c.to_vec()).collect()
    }

    /// `{0}` together with every off-diagonal distance, ascending.
    pub fn distinct_distances(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = vec![Rational::zero()];
        v.extend(self.data.iter().copied());
        v.sort();
        v.dedup();
        v
    }

    /// Diameter of a set of points (zero for fewer than two).
    pub fn diameter(&self, points: &[usize]) -> Rational {
        let mut best = Rational::zero();
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                let d = self.get(a, b);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Symmetry, zero diagonal and the triangle inequality.
    pub fn is_pseudometric(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            if !self.get(x, x).is_zero() {
                return false;
            }
            for y in 0..n {
                if self.get(x, y) != self.get(y, x) || self.get(x, y) < Rational::zero() {
                    return false;
                }
                for z in 0..n {
                    if self.get(x, z) > self.get(x, y) + self.get(y, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_csv(&self, domain: &Domain) -> String {
        let mut out = String::from("point");
        for p in domain.points() {
            out.push(',');
            out.push_str(p);
        }
        out.push('\n');
        for x in 0..self.n {
            out.push_str(domain.point(x));
            for y in 0..self.n {
                out.push(',');
                out.push_str(&self.get(x, y).to_string());
            }
            out.push('\n');
        }
        out
    }
}
