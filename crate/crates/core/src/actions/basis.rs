use std::collections::BTreeSet;

use crate::actions::Incarnation;
use crate::error::{Error, Result};

/// Disjoint non-empty blocks of measurement indices covering the data set.
/// Blocks are ordered by their smallest member, members ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling `label[i]` into a partition.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (i, &l) in labels.iter().enumerate() {
            let b = match seen.iter().find(|(label, _)| *label == l) {
                Some(&(_, b)) => b,
                None => {
                    seen.push((l, blocks.len()));
                    blocks.push(Vec::new());
                    blocks.len() - 1
                }
            };
            blocks[b].push(i);
            block_of[i] = b;
        }
        Partition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Largest subset family scanned by [`Incarnation::enumerate_bases`].
pub const DEFAULT_BASIS_GUARD: usize = 12;

impl Incarnation {
    /// `ΩM`: `Ω` together with every `ω g1 ⋯ gk`, ascending.
    pub fn deformation_closure(&self, omega: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.dataset().len()];
        let mut stack: Vec<usize> = Vec::new();
        for &w in omega {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
        while let Some(phi) = stack.pop() {
            for &next in &self.action_table()[phi] {
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// `psi ∈ phi M`
    pub fn is_deformation(&self, psi: usize, phi: usize) -> bool {
        self.deformation_closure(&[phi]).binary_search(&psi).is_ok()
    }

    /// `Φ/M`: classes of the equivalence relation generated by deformation.
    pub fn blocks(&self) -> Partition {
        let n = self.dataset().len();
        let mut parent: Vec<usize> = (0..n).collect();
        for phi in 0..n {
            for &psi in &self.action_table()[phi] {
                let (a, b) = (find(&mut parent, phi), find(&mut parent, psi));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        Partition::from_labels(&labels)
    }

    pub fn is_transitive(&self) -> bool {
        self.blocks().len() <= 1
    }

    /// No element of `omega` is a deformation of another.
    pub fn is_independent(&self, omega: &[usize]) -> bool {
        let distinct: BTreeSet<usize> = omega.iter().copied().collect();
        distinct.iter().all(|&w| {
            let reach = self.deformation_closure(&[w]);
            distinct.iter().all(|&v| v == w || reach.binary_search(&v).is_err())
        })
    }

    pub fn generates(&self, omega: &[usize]) -> bool {
        self.deformation_closure(omega).len() == self.dataset().len()
    }

    pub fn is_basis(&self, omega: &[usize]) -> bool {
        self.is_independent(omega) && self.generates(omega)
    }

    /// A basis built by the exchange argument: while `ΩM ≠ Φ`, pick `psi`
    /// outside `ΩM` and replace `Ω` by `{psi} ∪ {ω ∈ Ω : ω ∉ psi M}`.
    /// Each step keeps `Ω` independent and strictly enlarges `ΩM`; the `psi`
    /// maximizing the new `|ΩM|` is taken, the earliest one on ties.
    /// Returned ascending.
    pub fn find_basis(&self) -> Vec<usize> {
        let n = self.dataset().len();
        let mut omega: Vec<usize> = Vec::new();
        let mut covered = self.deformation_closure(&omega);
        while covered.len() < n {
            let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
            for psi in (0..n).filter(|p| covered.binary_search(p).is_err()) {
                let reach = self.deformation_closure(&[psi]);
                let mut candidate: Vec<usize> = omega.iter().copied().filter(|w| reach.binary_search(w).is_err()).collect();
                candidate.push(psi);
                candidate.sort_unstable();
                let closure = self.deformation_closure(&candidate);
                let better = match &best {
                    None => true,
                    Some((_, _, c)) => closure.len() > c.len(),
                };
                if better {
                    best = Some((psi, candidate, closure));
                }
            }
            let (_, next, closure) = best.expect("some measurement is uncovered");
            debug_assert!(closure.len() > covered.len());
            omega = next;
            covered = closure;
        }
        omega
    }

    /// Every basis, each ascending, in lexicographic order. Scans all
    /// subsets, so `|Φ|` must not exceed `guard`.
    pub fn enumerate_bases(&self, guard: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.dataset().len();
        if n > guard {
            return Err(Error::GuardExceeded { size: n, guard });
        }
        let mut bases = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let omega: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if self.is_basis(&omega) {
                bases.push(omega);
            }
        }
        bases.sort();
        Ok(bases)
    }

    /// Cardinality of any basis.
    pub fn dimension(&self) -> usize {
        self.find_basis().len()
    }

    /// Each is a deformation of the other.
    pub fn indistinguishable(&self, phi: usize, psi: usize) -> bool {
        self.is_deformation(psi, phi) && self.is_deformation(phi, psi)
    }

    /// `([psi], M)`: the block of `psi` with the same operations.
    pub fn block_incarnation(&self, psi: usize) -> Result<Incarnation> {
        let blocks = self.blocks();
        let members = &blocks.blocks()[blocks.block_of(psi)];
        let data = self.dataset().subset(members)?;
        Incarnation::new(data, self.named_ops())
    }
}
