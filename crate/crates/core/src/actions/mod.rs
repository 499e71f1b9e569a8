//! Operations on a data set, incarnations and the structure they induce:
//! deformations, blocks, independent sets and bases.

mod basis;
mod enumerate;

use std::collections::HashMap;
use std::fmt;

use crate::data::{precompose, DataSet, Endo};
use crate::error::{Error, Result};

pub use basis::{Partition, DEFAULT_BASIS_GUARD};
pub use enumerate::{enumerate_aut, enumerate_end, generated_submonoid, DEFAULT_POINT_GUARD};

/// Returns the first measurement that `g` sends outside the set, if any.
pub fn operation_witness(g: &Endo, set: &DataSet) -> Result<Option<usize>> {
    if g.len() != set.domain().len() {
        return Err(Error::DomainMismatch(format!(
            "operation on {} points, data set has {}",
            g.len(),
            set.domain().len()
        )));
    }
    Ok((0..set.len()).find(|&i| set.find(&precompose(set.values(i), g.images())).is_none()))
}

/// `phi ∘ g ∈ Φ` for every `phi ∈ Φ`.
pub fn is_operation(g: &Endo, set: &DataSet) -> Result<bool> {
    Ok(operation_witness(g, set)?.is_none())
}

/// Closure properties of the chosen operations, computed on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncarnationKind {
    General,
    GroupLike,
    Monoid,
    Group,
}

impl IncarnationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IncarnationKind::General => "general",
            IncarnationKind::GroupLike => "group-like",
            IncarnationKind::Monoid => "monoid",
            IncarnationKind::Group => "group",
        }
    }
}

impl fmt::Display for IncarnationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A data set together with a set `M` of verified operations acting on it
/// from the right.
#[derive(Clone, Debug)]
pub struct Incarnation {
    dataset: DataSet,
    ops: Vec<Endo>,
    op_names: Vec<String>,
    op_lookup: HashMap<String, usize>,
    op_index: HashMap<Endo, usize>,
    /// `action[phi][g]` is the index of `phi g`.
    action: Vec<Vec<usize>>,
    kind: IncarnationKind,
}

impl PartialEq for Incarnation {
    fn eq(&self, other: &Self) -> bool {
        self.dataset == other.dataset && self.ops == other.ops
    }
}

impl Incarnation {
    /// Verifies every operation and computes the action table. Operations
    /// with equal maps are merged, later names becoming aliases.
    pub fn new<I>(dataset: DataSet, ops: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Endo)>,
    {
        let mut inc = Incarnation {
            action: vec![Vec::new(); dataset.len()],
            dataset,
            ops: Vec::new(),
            op_names: Vec::new(),
            op_lookup: HashMap::new(),
            op_index: HashMap::new(),
            kind: IncarnationKind::General,
        };
        for (name, g) in ops {
            if let Some(phi) = operation_witness(&g, &inc.dataset)? {
                return Err(Error::NotAnOperation { op: name, measurement: inc.dataset.name(phi).to_string() });
            }
            let idx = match inc.op_index.get(&g) {
                Some(&idx) => idx,
                None => {
                    let idx = inc.ops.len();
                    for (phi, row) in inc.action.iter_mut().enumerate() {
                        row.push(inc.dataset.act(phi, g.images()).expect("verified operation"));
                    }
                    inc.op_index.insert(g.clone(), idx);
                    inc.ops.push(g);
                    inc.op_names.push(name.clone());
                    idx
                }
            };
            match inc.op_lookup.get(&name) {
                Some(&other) if other != idx => return Err(Error::DuplicateName(name)),
                _ => {
                    inc.op_lookup.insert(name, idx);
                }
            }
        }
        inc.kind = inc.compute_kind();
        Ok(inc)
    }

    /// The trivial incarnation `(Φ, {id})`.
    pub fn with_identity(dataset: DataSet) -> Self {
        let n = dataset.domain().len();
        Incarnation::new(dataset, [("id".to_string(), Endo::identity(n))]).expect("identity is an operation")
    }

    /// `(Φ, ∅)`
    pub fn bare(dataset: DataSet) -> Self {
        Incarnation::new(dataset, std::iter::empty()).expect("no operations to check")
    }

    fn compute_kind(&self) -> IncarnationKind {
        let bijective = self.ops.iter().all(Endo::is_bijective);
        let n = self.dataset.domain().len();
        let has_identity = self.op_index.contains_key(&Endo::identity(n));
        let closed = self
            .ops
            .iter()
            .all(|g| self.ops.iter().all(|h| self.op_index.contains_key(&g.mul(h))));
        let inverses = self
            .ops
            .iter()
            .all(|g| g.inverse().is_some_and(|inv| self.op_index.contains_key(&inv)));
        match (has_identity && closed, bijective && inverses) {
            (true, true) => IncarnationKind::Group,
            (true, false) => IncarnationKind::Monoid,
            (false, _) if bijective => IncarnationKind::GroupLike,
            _ => IncarnationKind::General,
        }
    }

    pub fn dataset(&self) -> &DataSet {
        &self.dataset
    }

    pub fn kind(&self) -> IncarnationKind {
        self.kind
    }

    pub fn is_monoid(&self) -> bool {
        matches!(self.kind, IncarnationKind::Monoid | IncarnationKind::Group)
    }

    pub fn is_group(&self) -> bool {
        self.kind == IncarnationKind::Group
    }

    /// Every operation is a bijection (groups included).
    pub fn is_group_like(&self) -> bool {
        self.ops.iter().all(Endo::is_bijective)
    }

    pub fn ops(&self) -> &[Endo] {
        &self.ops
    }

    pub fn op(&self, g: usize) -> &Endo {
        &self.ops[g]
    }

    pub fn op_count(&self) -> usize {
        self.ops.len()
    }

    pub fn op_name(&self, g: usize) -> &str {
        &self.op_names[g]
    }

    pub fn op_names(&self) -> &[String] {
        &self.op_names
    }

    pub fn find_op(&self, g: &Endo) -> Option<usize> {
        self.op_index.get(g).copied()
    }

    pub fn resolve_op(&self, name: &str) -> Result<usize> {
        self.op_lookup.get(name).copied().ok_or_else(|| Error::UnknownOperation(name.to_string()))
    }

    /// Index of the identity, when it belongs to `M`.
    pub fn identity_op(&self) -> Option<usize> {
        self.find_op(&Endo::identity(self.dataset.domain().len()))
    }

    /// Index of `g h` when it belongs to `M`.
    pub fn product(&self, g: usize, h: usize) -> Option<usize> {
        self.find_op(&self.ops[g].mul(&self.ops[h]))
    }

    /// Index of `phi g`.
    pub fn act(&self, phi: usize, g: usize) -> usize {
        self.action[phi][g]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// `(Φ, ⟨M⟩)`. Elements of `M` keep their names, the identity is called
    /// `id` unless already named, and other products are named by a
    /// shortest word in the generators.
    pub fn generated(&self) -> Incarnation {
        let n = self.dataset.domain().len();
        let mut named: Vec<(String, Endo)> = Vec::new();
        let mut seen: HashMap<Endo, ()> = HashMap::new();
        let id = Endo::identity(n);
        let id_name = self.find_op(&id).map(|g| self.op_names[g].clone()).unwrap_or_else(|| "id".to_string());
        named.push((id_name, id.clone()));
        seen.insert(id, ());
        for (g, name) in self.ops.iter().zip(&self.op_names) {
            if seen.insert(g.clone(), ()).is_none() {
                named.push((name.clone(), g.clone()));
            }
        }
        let mut frontier: Vec<usize> = (0..named.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in frontier {
                for (g, gname) in self.ops.iter().zip(&self.op_names) {
                    let prod = named[w].1.mul(g);
                    if seen.insert(prod.clone(), ()).is_none() {
                        let name = format!("{}*{}", named[w].0, gname);
                        named.push((name, prod));
                        next.push(named.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        let mut unique_names: HashMap<String, usize> = HashMap::new();
        let named = named.into_iter().map(|(name, g)| {
            let count = unique_names.entry(name.clone()).or_insert(0);
            *count += 1;
            if *count > 1 {
                (format!("{name}#{count}"), g)
            } else {
                (name, g)
            }
        });
        Incarnation::new(self.dataset.clone(), named).expect("products of operations are operations")
    }

    /// Same data set with a different choice of operations.
    pub fn with_ops<I>(&self, ops: I) -> Result<Incarnation>
    where
        I: IntoIterator<Item = (String, Endo)>,
    {
        Incarnation::new(self.dataset.clone(), ops)
    }

    pub fn named_ops(&self) -> Vec<(String, Endo)> {
        self.op_names.iter().cloned().zip(self.ops.iter().cloned()).collect()
    }
}
