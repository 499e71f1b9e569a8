use crate::error::{Error, Result};
use crate::linalg::{Echelon, Fp, FpMatrix};
use crate::persistence::SimplicialComplex;

/// `H_d` of a complex over `F_p` with a basis of representative cycles.
///
/// Boundaries and representatives are kept in one echelon structure, so a
/// cycle's coordinates in the basis are read off by a single reduction.
#[derive(Clone, Debug)]
pub struct HomologySpace {
    degree: usize,
    field: Fp,
    representatives: Vec<Vec<u32>>,
    echelon: Echelon,
}

impl HomologySpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    /// Cycles, as chains on the degree-`d` simplices, whose classes form the
    /// basis.
    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.representatives
    }

    /// Coordinates of the class of `cycle`.
    pub fn coordinates(&self, cycle: &[u32]) -> Result<Vec<u32>> {
        self.echelon
            .coordinates(cycle)
            .ok_or_else(|| Error::Internal("chain is not a cycle of the complex".into()))
    }
}

/// `dim ker ∂_d − rank ∂_{d+1}`, with representatives. The complex must be
/// enumerated up to dimension `d + 1`.
pub fn homology(complex: &SimplicialComplex, degree: usize, field: Fp) -> Result<HomologySpace> {
    if complex.cap() < degree + 1 {
        return Err(Error::DimensionCap { cap: complex.cap(), degree, needed: degree + 1 });
    }
    let n = complex.count(degree);
    let mut echelon = Echelon::new(field, n);
    let higher = complex.boundary(degree + 1, field);
    for j in 0..higher.cols() {
        let column: Vec<u32> = (0..n).map(|i| higher.get(i, j)).collect();
        echelon.insert(&column);
    }
    let mut representatives = Vec::new();
    for z in complex.boundary(degree, field).kernel() {
        if echelon.insert_tracked(&z) {
            representatives.push(z);
        }
    }
    Ok(HomologySpace { degree, field, representatives, echelon })
}

/// Parity of the permutation sorting `v`; `None` when entries repeat.
fn sort_sign(v: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(odd)
}

/// Image of a degree-`d` chain under the simplicial map `vertex_map`,
/// degenerate simplices going to zero.
pub fn chain_image(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    degree: usize,
    vertex_map: &[usize],
    field: Fp,
    chain: &[u32],
) -> Result<Vec<u32>> {
    let mut image = vec![0; target.count(degree)];
    for (k, &coef) in chain.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        let simplex = &source.simplices(degree)[k];
        let mut mapped: Vec<usize> = simplex.iter().map(|&v| vertex_map[v]).collect();
        let Some(odd) = sort_sign(&mut mapped) else { continue };
        let idx = target
            .index_of(&mapped)
            .ok_or_else(|| Error::SimplicialMap(simplex.iter().map(|v| format!("#{v}")).collect()))?;
        let term = field.mul(coef, field.sign(odd));
        image[idx] = field.add(image[idx], term);
    }
    Ok(image)
}

/// Verifies that `vertex_map` sends every simplex of `source` (up to the
/// shared cap) to a simplex of `target`.
pub fn check_simplicial(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: &[usize]) -> Result<()> {
    for dim in 0..=source.cap().min(target.cap()) {
        for s in source.simplices(dim) {
            let mut image: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            image.sort_unstable();
            image.dedup();
            if target.index_of(&image).is_none() {
                return Err(Error::SimplicialMap(s.iter().map(|v| format!("#{v}")).collect()));
            }
        }
    }
    Ok(())
}

/// `H_d(f)` as a `dim H_d(target) × dim H_d(source)` matrix.
pub fn induced_map(
    source: &SimplicialComplex,
    source_h: &HomologySpace,
    target: &SimplicialComplex,
    target_h: &HomologySpace,
    vertex_map: &[usize],
) -> Result<FpMatrix> {
    let (degree, field) = (source_h.degree(), source_h.field());
    check_simplicial(source, target, vertex_map)?;
    let columns = source_h
        .representatives()
        .iter()
        .map(|z| target_h.coordinates(&chain_image(source, target, degree, vertex_map, field, z)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FpMatrix::from_columns(field, target_h.dimension(), &columns))
}
