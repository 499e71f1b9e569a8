use std::collections::HashMap;

use crate::data::Pseudometric;
use crate::error::{Error, Result};
use crate::linalg::{Fp, FpMatrix};
use crate::rational::Rational;

/// `{x : phi(x) ≤ s}`, ascending.
pub fn sublevel(values: &[Rational], s: Rational) -> Vec<usize> {
    (0..values.len()).filter(|&x| values[x] <= s).collect()
}

/// `{x : phi(x) ≥ s}`, ascending.
pub fn superlevel(values: &[Rational], s: Rational) -> Vec<usize> {
    (0..values.len()).filter(|&x| values[x] >= s).collect()
}

/// Simplices on a subset of the domain up to a dimension cap, each a sorted
/// vertex tuple, listed per dimension in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Closes `maximal` under faces up to dimension `cap`.
    pub fn from_simplices(cap: usize, maximal: &[Vec<usize>]) -> Self {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = vec![Default::default(); cap + 1];
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            let n = s.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                if face.len() <= cap + 1 {
                    by_dim[face.len() - 1].insert(face);
                }
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|set| set.into_iter().collect()).collect();
        Self::assemble(simplices)
    }

    fn assemble(simplices: Vec<Vec<Vec<usize>>>) -> Self {
        let vertices = simplices[0].iter().map(|v| v[0]).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertices, simplices, index }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Highest dimension enumerated.
    pub fn cap(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Empty above the cap.
    pub fn simplices(&self, dim: usize) -> &[Vec<usize>] {
        self.simplices.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let dim = simplex.len().checked_sub(1)?;
        self.index.get(dim)?.get(simplex).copied()
    }

    /// `∂_dim : C_dim → C_{dim-1}` with `∂[v0..vk] = Σ (-1)^i [.. v̂i ..]`.
    pub fn boundary(&self, dim: usize, field: Fp) -> FpMatrix {
        if dim == 0 {
            return FpMatrix::zeros(field, 0, self.count(0));
        }
        let mut m = FpMatrix::zeros(field, self.count(dim - 1), self.count(dim));
        for (j, s) in self.simplices(dim).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = self.index_of(&face).expect("closed under faces");
                m.set(row, j, field.sign(i % 2 == 1));
            }
        }
        m
    }
}

/// `VR_r(points, d)`: subsets of at most `cap + 1` points with all pairwise
/// distances `≤ r`.
pub fn vr_complex(points: &[usize], d: &Pseudometric, r: Rational, cap: usize) -> Result<SimplicialComplex> {
    if r < Rational::from_integer(0) {
        return Err(Error::NegativeScale(r));
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cap + 1];

    fn extend(
        current: &mut Vec<usize>,
        start: usize,
        pts: &[usize],
        d: &Pseudometric,
        r: Rational,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        for k in start..pts.len() {
            let v = pts[k];
            if current.iter().all(|&u| d.get(u, v) <= r) {
                current.push(v);
                out[current.len() - 1].push(current.clone());
                if current.len() < out.len() {
                    extend(current, k + 1, pts, d, r, out);
                }
                current.pop();
            }
        }
    }

    extend(&mut Vec::new(), 0, &pts, d, r, &mut simplices);
    for list in &mut simplices {
        list.sort();
    }
    Ok(SimplicialComplex::assemble(simplices))
}
