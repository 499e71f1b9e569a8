use num_traits::One;

use crate::data::{DataSet, Pseudometric};
use crate::error::{Error, Result};
use crate::ggraph::Morphism;
use crate::linalg::{Fp, FpMatrix};
use crate::persistence::{homology, induced_map, sublevel, vr_complex, HomologySpace, SimplicialComplex};
use crate::rational::Rational;

/// Critical values `0 = r_0 < … < r_m` and `s_0 < … < s_l`, where `s_0` lies
/// one unit below every value so the empty sublevel set appears on the grid.
/// The cell `[r_i, r_{i+1}) × [s_j, s_{j+1})` is represented by its lower-left
/// corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    r: Vec<Rational>,
    s: Vec<Rational>,
}

fn sorted(values: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let mut v: Vec<Rational> = values.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

impl Grid {
    /// `r`: `0` and the given distances; `s`: the sentinel and the given values.
    pub fn new(distances: impl IntoIterator<Item = Rational>, values: impl IntoIterator<Item = Rational>) -> Self {
        let zero = Rational::from_integer(0);
        let r = sorted(std::iter::once(zero).chain(distances).filter(|d| *d >= zero));
        let values = sorted(values);
        let sentinel = values.first().map_or(zero, |m| m - Rational::one());
        let s = std::iter::once(sentinel).chain(values).collect();
        Grid { r, s }
    }

    /// The grid of `PH^Φ(phi)`.
    pub fn critical(set: &DataSet, phi: usize) -> Self {
        Grid::new(set.pseudometric().distinct_distances(), set.values(phi).iter().copied())
    }

    /// A grid on which every measurement of `set` is tame.
    pub fn for_dataset(set: &DataSet) -> Self {
        Grid::new(set.pseudometric().distinct_distances(), set.distinct_values())
    }

    /// The common refinement.
    pub fn union(&self, other: &Grid) -> Self {
        Grid::new(
            self.r.iter().chain(&other.r).copied(),
            self.s[1..].iter().chain(&other.s[1..]).copied(),
        )
    }

    pub fn r(&self) -> &[Rational] {
        &self.r
    }

    pub fn s(&self) -> &[Rational] {
        &self.s
    }

    /// The cell containing `(r, s)`; `None` below the sentinel or for `r < 0`.
    pub fn cell_of(&self, r: Rational, s: Rational) -> Option<(usize, usize)> {
        let i = self.r.iter().rposition(|&x| x <= r)?;
        let j = self.s.iter().rposition(|&x| x <= s)?;
        Some((i, j))
    }
}

/// One grid corner: the complex `VR_r(phi ≤ s)` and its homology.
#[derive(Clone, Debug)]
pub struct Cell {
    pub complex: SimplicialComplex,
    pub homology: HomologySpace,
}

/// `PH_d^Φ(phi)` on a grid: homology at every corner and the structure maps
/// of the unit steps to the right (`r`) and up (`s`).
#[derive(Clone, Debug)]
pub struct BigradedPersistence {
    grid: Grid,
    degree: usize,
    field: Fp,
    cells: Vec<Vec<Cell>>,
    right: Vec<Vec<FpMatrix>>,
    up: Vec<Vec<FpMatrix>>,
}

impl PartialEq for BigradedPersistence {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid
            && self.degree == other.degree
            && self.field == other.field
            && self.dims() == other.dims()
            && self.right == other.right
            && self.up == other.up
    }
}

/// Homology of `VR_r(points)` in the given degree.
pub fn cell(points: &[usize], d: &Pseudometric, r: Rational, degree: usize, field: Fp) -> Result<Cell> {
    let complex = vr_complex(points, d, r, degree + 1)?;
    let homology = homology(&complex, degree, field)?;
    Ok(Cell { complex, homology })
}

/// The map induced by including `from` into `to`.
pub fn inclusion_map(from: &Cell, to: &Cell, n: usize) -> Result<FpMatrix> {
    let id: Vec<usize> = (0..n).collect();
    induced_map(&from.complex, &from.homology, &to.complex, &to.homology, &id)
}

impl BigradedPersistence {
    /// Homology of `VR_r(values ≤ s, d)` at every corner of `grid`.
    pub fn compute(values: &[Rational], d: &Pseudometric, grid: &Grid, degree: usize, field: Fp) -> Result<Self> {
        let n = values.len();
        let cells = grid
            .r()
            .iter()
            .map(|&r| grid.s().iter().map(|&s| cell(&sublevel(values, s), d, r, degree, field)).collect())
            .collect::<Result<Vec<Vec<Cell>>>>()?;
        let (m, l) = (grid.r().len(), grid.s().len());
        let right = (0..m.saturating_sub(1))
            .map(|i| (0..l).map(|j| inclusion_map(&cells[i][j], &cells[i + 1][j], n)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let up = (0..m)
            .map(|i| (0..l.saturating_sub(1)).map(|j| inclusion_map(&cells[i][j], &cells[i][j + 1], n)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let bp = BigradedPersistence { grid: grid.clone(), degree, field, cells, right, up };
        bp.check_squares()?;
        Ok(bp)
    }

    fn check_squares(&self) -> Result<()> {
        for i in 0..self.right.len() {
            for j in 0..self.up[i].len() {
                let a = self.up[i + 1][j].mul(&self.right[i][j])?;
                let b = self.right[i][j + 1].mul(&self.up[i][j])?;
                if a != b {
                    return Err(Error::Internal(format!("grid square at ({i}, {j}) does not commute")));
                }
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[i][j]
    }

    /// `dims[i][j] = dim PH_{r_i, s_j}`
    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|row| row.iter().map(|c| c.homology.dimension()).collect()).collect()
    }

    /// Dimension at an arbitrary parameter; zero below the grid.
    pub fn dim_at(&self, r: Rational, s: Rational) -> usize {
        self.grid.cell_of(r, s).map_or(0, |(i, j)| self.cells[i][j].homology.dimension())
    }

    /// `(r_i, s_j) → (r_{i+1}, s_j)`
    pub fn right(&self, i: usize, j: usize) -> &FpMatrix {
        &self.right[i][j]
    }

    /// `(r_i, s_j) → (r_i, s_{j+1})`
    pub fn up(&self, i: usize, j: usize) -> &FpMatrix {
        &self.up[i][j]
    }

    /// Ranks of the right and up structure maps.
    pub fn ranks(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let rank = |rows: &Vec<Vec<FpMatrix>>| rows.iter().map(|r| r.iter().map(FpMatrix::rank).collect()).collect();
        (rank(&self.right), rank(&self.up))
    }
}

/// The grid of `PH_d^Φ(phi)` at its own critical values.
pub fn ph_grid(set: &DataSet, phi: usize, degree: usize, field: Fp) -> Result<BigradedPersistence> {
    BigradedPersistence::compute(set.values(phi), &set.pseudometric(), &Grid::critical(set, phi), degree, field)
}

/// A natural map between two persistence modules on the same grid, one
/// matrix per corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhMorphism {
    grid: Grid,
    maps: Vec<Vec<FpMatrix>>,
}

impl PhMorphism {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn map(&self, i: usize, j: usize) -> &FpMatrix {
        &self.maps[i][j]
    }

    pub fn maps(&self) -> &[Vec<FpMatrix>] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<Vec<usize>> {
        self.maps.iter().map(|row| row.iter().map(FpMatrix::rank).collect()).collect()
    }

    /// The identity of a module.
    pub fn identity(module: &BigradedPersistence) -> Self {
        let maps = module
            .cells
            .iter()
            .map(|row| row.iter().map(|c| FpMatrix::identity(module.field, c.homology.dimension())).collect())
            .collect();
        PhMorphism { grid: module.grid.clone(), maps }
    }
}

impl Morphism for PhMorphism {
    fn compose(&self, inner: &Self) -> Result<Self> {
        if self.grid != inner.grid {
            return Err(Error::DomainMismatch("persistence maps on different grids".into()));
        }
        let maps = self
            .maps
            .iter()
            .zip(&inner.maps)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.mul(y)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(PhMorphism { grid: self.grid.clone(), maps })
    }

    fn is_identity(&self) -> bool {
        self.maps.iter().flatten().all(FpMatrix::is_identity)
    }
}

/// The map `from → to` induced at every corner by `vertex_map`, which must
/// send each sublevel complex of `from` into the matching one of `to`.
pub fn induced_morphism(
    from: &BigradedPersistence,
    to: &BigradedPersistence,
    vertex_map: &[usize],
) -> Result<PhMorphism> {
    if from.grid != to.grid || from.degree != to.degree || from.field != to.field {
        return Err(Error::DomainMismatch("persistence modules on different grids".into()));
    }
    let maps = from
        .cells
        .iter()
        .zip(&to.cells)
        .map(|(a, b)| {
            a.iter()
                .zip(b)
                .map(|(x, y)| induced_map(&x.complex, &x.homology, &y.complex, &y.homology, vertex_map))
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(PhMorphism { grid: from.grid.clone(), maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Domain;
    use crate::fixtures;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn critical_grid_of_fixture_a() {
        let psi = fixtures::fixture_a_psi();
        let g = Grid::critical(&psi, 0);
        assert_eq!(g.r(), &[q(0), q(1), q(2)]);
        assert_eq!(g.s(), &[q(-2), q(-1), q(0), q(1)]);
        assert_eq!(g.cell_of(Rational::new(3, 2), q(5)), Some((1, 3)));
        assert_eq!(g.cell_of(q(0), q(-3)), None);
    }

    #[test]
    fn loop_region_of_fixture_a() {
        let psi = fixtures::fixture_a_psi();
        let bp = ph_grid(&psi, 0, 1, f2()).unwrap();
        for (i, &r) in bp.grid().r().iter().enumerate() {
            for (j, &s) in bp.grid().s().iter().enumerate() {
                let expected = usize::from(s >= q(1) && r >= q(1) && r < q(2));
                assert_eq!(bp.dims()[i][j], expected, "r={r} s={s}");
            }
        }
        let phi_only = fixtures::fixture_a_phi();
        let bp = ph_grid(&phi_only, 0, 1, f2()).unwrap();
        assert!(bp.dims().iter().flatten().all(|&d| d == 0));
    }

    #[test]
    fn single_point_domain() {
        let set = DataSet::from_vectors(Domain::numbered("x", 1), vec![vec![q(3)]]).unwrap();
        let bp = ph_grid(&set, 0, 0, f2()).unwrap();
        assert_eq!(bp.dims(), vec![vec![0, 1]]);
        assert_eq!(bp.dim_at(q(7), q(3)), 1);
        assert_eq!(bp.dim_at(q(0), Rational::new(5, 2)), 0);
    }

    #[test]
    fn identity_morphism_composes() {
        let psi = fixtures::fixture_a_psi();
        let bp = ph_grid(&psi, 0, 0, f2()).unwrap();
        let id = PhMorphism::identity(&bp);
        let induced = induced_morphism(&bp, &bp, &[0, 1, 2, 3]).unwrap();
        assert_eq!(induced, id);
        assert_eq!(id.compose(&id).unwrap(), id);
        assert!(id.is_identity());
    }

    #[test]
    fn union_grid_keeps_sentinel_below_everything() {
        let a = Grid::new([q(1)], [q(0), q(2)]);
        let b = Grid::new([q(3)], [q(-4)]);
        let u = a.union(&b);
        assert_eq!(u.r(), &[q(0), q(1), q(3)]);
        assert_eq!(u.s(), &[q(-5), q(-4), q(0), q(2)]);
    }
}
