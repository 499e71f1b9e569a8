use std::collections::HashMap;
use std::fmt::Write as _;
use std::rc::Rc;

use crate::data::{change_units, DataSet, Pseudometric, ValueMap};
use crate::error::{Error, Result};
use crate::linalg::{Fp, FpMatrix};
use crate::persistence::{cell, inclusion_map, ph_grid, sublevel, superlevel, vr_complex, Cell, Grid};
use crate::rational::{abs_diff, format_rational, Rational};

/// Homology of `VR_r(A)` memoized by `(r, A)`.
struct HomologyCache<'a> {
    d: &'a Pseudometric,
    degree: usize,
    field: Fp,
    cells: HashMap<(Rational, Vec<usize>), Rc<Cell>>,
}

impl<'a> HomologyCache<'a> {
    fn new(d: &'a Pseudometric, degree: usize, field: Fp) -> Self {
        HomologyCache { d, degree, field, cells: HashMap::new() }
    }

    fn get(&mut self, r: Rational, points: Vec<usize>) -> Result<Rc<Cell>> {
        if let Some(c) = self.cells.get(&(r, points.clone())) {
            return Ok(c.clone());
        }
        let c = Rc::new(cell(&points, self.d, r, self.degree, self.field)?);
        self.cells.insert((r, points), c.clone());
        Ok(c)
    }

    /// The map `H(VR_r(A)) → H(VR_r'(B))` for `A ⊆ B`, `r ≤ r'`.
    fn map(&mut self, r: Rational, a: &[usize], r2: Rational, b: &[usize]) -> Result<FpMatrix> {
        if r > r2 || a.iter().any(|x| b.binary_search(x).is_err()) {
            return Err(Error::Internal("interleaving map between non-nested complexes".into()));
        }
        let (ca, cb) = (self.get(r, a.to_vec())?, self.get(r2, b.to_vec())?);
        inclusion_map(&ca, &cb, self.d.len())
    }
}

/// Certified bounds on the interleaving distance of two measurements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingResult {
    /// `‖phi − psi‖∞`, for which the shift maps were verified.
    pub epsilon: Rational,
    pub upper: Rational,
    /// Largest slice bottleneck distance.
    pub lower: Rational,
    /// Number of interleaving triangles and naturality squares checked.
    pub checks: usize,
}

/// Verifies that the inclusions `phi ≤ s ⊆ psi ≤ s + ε` and back give an
/// `ε`-interleaving at every `r` of the grid and every `s` at which either
/// side or a shifted side changes, natural in `r` as well.
pub fn interleave_upper(set: &DataSet, phi: usize, psi: usize, degree: usize, field: Fp) -> Result<InterleavingResult> {
    let (a, b) = (set.values(phi), set.values(psi));
    let eps = a.iter().zip(b).map(|(x, y)| abs_diff(x, y)).max().unwrap_or_default();
    let d = set.pseudometric();
    let grid = Grid::critical(set, phi).union(&Grid::critical(set, psi));
    let mut s_values: Vec<Rational> = grid.s().iter().flat_map(|&s| [s, s - eps, s - eps - eps]).collect();
    s_values.sort();
    s_values.dedup();
    let mut cache = HomologyCache::new(&d, degree, field);
    let mut checks = 0;
    for (first, second) in [(a, b), (b, a)] {
        for (ri, &r) in grid.r().iter().enumerate() {
            for &s in &s_values {
                let lo = sublevel(first, s);
                let mid = sublevel(second, s + eps);
                let hi = sublevel(first, s + eps + eps);
                let f = cache.map(r, &lo, r, &mid)?;
                let g = cache.map(r, &mid, r, &hi)?;
                if g.mul(&f)? != cache.map(r, &lo, r, &hi)? {
                    return Err(Error::Internal(format!("interleaving triangle fails at r={r}, s={s}")));
                }
                checks += 1;
                if let Some(&r2) = grid.r().get(ri + 1) {
                    let f2 = cache.map(r2, &lo, r2, &mid)?;
                    let lhs = f2.mul(&cache.map(r, &lo, r2, &lo)?)?;
                    let rhs = cache.map(r, &mid, r2, &mid)?.mul(&f)?;
                    if lhs != rhs {
                        return Err(Error::Internal(format!("shift map is not natural in r at r={r}, s={s}")));
                    }
                    checks += 1;
                }
            }
        }
    }
    let lower = bottleneck_lower(set, phi, psi, degree, field)?;
    if lower > eps {
        return Err(Error::Internal(format!("bottleneck lower bound {lower} exceeds {eps}")));
    }
    Ok(InterleavingResult { epsilon: eps, upper: eps, lower, checks })
}

/// A persistence interval `[birth, death)`; `None` is an infinite death.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bar {
    pub birth: Rational,
    pub death: Option<Rational>,
}

/// Barcode in `s` of the filtration `s ↦ VR_r(values ≤ s, d)` at fixed `r`,
/// by column reduction over `F_p`. Bars of length zero are dropped; bars are
/// sorted.
pub fn slice_barcode_for(
    values: &[Rational],
    d: &Pseudometric,
    r: Rational,
    degree: usize,
    field: Fp,
) -> Result<Vec<Bar>> {
    let all: Vec<usize> = (0..values.len()).collect();
    let complex = vr_complex(&all, d, r, degree + 1)?;
    let value = |s: &[usize]| s.iter().map(|&x| values[x]).max().expect("non-empty simplex");
    // filtration order: value, then dimension, then lexicographic
    let mut order: Vec<(Rational, usize, usize)> = Vec::new();
    for dim in 0..=degree + 1 {
        for (k, s) in complex.simplices(dim).iter().enumerate() {
            order.push((value(s), dim, k));
        }
    }
    order.sort();
    let mut position: Vec<HashMap<usize, usize>> = vec![HashMap::new(); degree + 2];
    for (pos, &(_, dim, k)) in order.iter().enumerate() {
        position[dim].insert(k, pos);
    }
    let n = order.len();
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(n);
    for &(_, dim, k) in &order {
        let mut col = vec![0; n];
        if dim > 0 {
            let s = &complex.simplices(dim)[k];
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let idx = complex.index_of(&face).expect("closed under faces");
                col[position[dim - 1][&idx]] = field.sign(i % 2 == 1);
            }
        }
        columns.push(col);
    }
    let low = |c: &[u32]| c.iter().rposition(|&x| x != 0);
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut paired_birth = vec![None; n];
    for j in 0..n {
        while let Some(l) = low(&columns[j]) {
            match owner.get(&l) {
                Some(&k) => {
                    let factor = field.mul(columns[j][l], field.inv(columns[k][l]));
                    let pivot = columns[k].clone();
                    field.axpy(&mut columns[j], factor, &pivot);
                }
                None => {
                    owner.insert(l, j);
                    paired_birth[l] = Some(j);
                    break;
                }
            }
        }
    }
    let mut bars = Vec::new();
    for (i, &(birth, dim, _)) in order.iter().enumerate() {
        if dim != degree || low(&columns[i]).is_some() {
            continue;
        }
        match paired_birth[i] {
            Some(j) => {
                let death = order[j].0;
                if death > birth {
                    bars.push(Bar { birth, death: Some(death) });
                }
            }
            None => bars.push(Bar { birth, death: None }),
        }
    }
    bars.sort();
    Ok(bars)
}

pub fn slice_barcode(set: &DataSet, phi: usize, degree: usize, field: Fp, r: Rational) -> Result<Vec<Bar>> {
    slice_barcode_for(set.values(phi), &set.pseudometric(), r, degree, field)
}

fn pair_cost(a: &Bar, b: &Bar) -> Option<Rational> {
    let birth = abs_diff(&a.birth, &b.birth);
    match (a.death, b.death) {
        (Some(x), Some(y)) => Some(birth.max(abs_diff(&x, &y))),
        (None, None) => Some(birth),
        _ => None,
    }
}

fn diagonal_cost(a: &Bar) -> Option<Rational> {
    a.death.map(|d| (d - a.birth) / Rational::from_integer(2))
}

/// Kuhn's augmenting paths; `adj[i]` lists the right vertices of left `i`.
fn has_perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], matched: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if matched[j].is_none_or(|k| augment(k, adj, seen, matched)) {
                    matched[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut matched = vec![None; right];
    (0..adj.len()).all(|i| augment(i, adj, &mut vec![false; right], &mut matched))
}

/// Bottleneck distance; `None` when the numbers of infinite bars differ.
pub fn bottleneck_distance(a: &[Bar], b: &[Bar]) -> Option<Rational> {
    let zero = Rational::from_integer(0);
    let mut inf_a: Vec<Rational> = a.iter().filter(|x| x.death.is_none()).map(|x| x.birth).collect();
    let mut inf_b: Vec<Rational> = b.iter().filter(|x| x.death.is_none()).map(|x| x.birth).collect();
    if inf_a.len() != inf_b.len() {
        return None;
    }
    inf_a.sort();
    inf_b.sort();
    // on a line, the sorted matching minimizes the largest displacement
    let infinite = inf_a.iter().zip(&inf_b).map(|(x, y)| abs_diff(x, y)).max().unwrap_or(zero);
    let fa: Vec<&Bar> = a.iter().filter(|x| x.death.is_some()).collect();
    let fb: Vec<&Bar> = b.iter().filter(|x| x.death.is_some()).collect();
    let (n, m) = (fa.len(), fb.len());
    let mut candidates: Vec<Rational> = vec![zero];
    for x in &fa {
        candidates.push(diagonal_cost(x).expect("finite"));
        for y in &fb {
            candidates.push(pair_cost(x, y).expect("finite"));
        }
    }
    candidates.extend(fb.iter().map(|y| diagonal_cost(y).expect("finite")));
    candidates.sort();
    candidates.dedup();
    // left: bars of a, then diagonal copies of b; right: bars of b, then diagonal copies of a
    let feasible = |eps: Rational| {
        let mut adj = vec![Vec::new(); n + m];
        for (i, x) in fa.iter().enumerate() {
            for (j, y) in fb.iter().enumerate() {
                if pair_cost(x, y).expect("finite") <= eps {
                    adj[i].push(j);
                }
            }
            if diagonal_cost(x).expect("finite") <= eps {
                adj[i].push(m + i);
            }
        }
        for (j, y) in fb.iter().enumerate() {
            if diagonal_cost(y).expect("finite") <= eps {
                adj[n + j].push(j);
            }
            adj[n + j].extend(m..m + n);
        }
        has_perfect_matching(&adj, n + m)
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(candidates[lo].max(infinite))
}

/// Largest bottleneck distance between the `r`-slices of `phi` and `psi`
/// over the grid `r` values; a lower bound for the interleaving distance.
pub fn bottleneck_lower(set: &DataSet, phi: usize, psi: usize, degree: usize, field: Fp) -> Result<Rational> {
    let d = set.pseudometric();
    let mut lower = Rational::from_integer(0);
    for r in d.distinct_distances() {
        let a = slice_barcode_for(set.values(phi), &d, r, degree, field)?;
        let b = slice_barcode_for(set.values(psi), &d, r, degree, field)?;
        let dist = bottleneck_distance(&a, &b)
            .ok_or_else(|| Error::Internal("slices with different numbers of infinite bars".into()))?;
        lower = lower.max(dist);
    }
    Ok(lower)
}

/// Checks that the grid of `−phi` in `−Φ` equals, corner by corner, the
/// homology of `VR_r(phi ≥ −s, d_Φ)` computed directly from `Φ`: dimensions
/// and ranks of the structure maps.
pub fn superlevel_duality_check(set: &DataSet, phi: usize, degree: usize, field: Fp) -> Result<bool> {
    let (negated, arrow) = change_units(&ValueMap::Negate, set)?;
    let left = ph_grid(&negated, arrow[phi], degree, field)?;
    let grid = left.grid();
    let d = set.pseudometric();
    let values = set.values(phi);
    let cells = grid
        .r()
        .iter()
        .map(|&r| grid.s().iter().map(|&s| cell(&superlevel(values, -s), &d, r, degree, field)).collect())
        .collect::<Result<Vec<Vec<Cell>>>>()?;
    let dims: Vec<Vec<usize>> = cells.iter().map(|row| row.iter().map(|c| c.homology.dimension()).collect()).collect();
    if dims != left.dims() {
        return Ok(false);
    }
    let (left_right, left_up) = left.ranks();
    let n = values.len();
    for i in 0..grid.r().len() {
        for j in 0..grid.s().len() {
            if i + 1 < grid.r().len() && inclusion_map(&cells[i][j], &cells[i + 1][j], n)?.rank() != left_right[i][j] {
                return Ok(false);
            }
            if j + 1 < grid.s().len() && inclusion_map(&cells[i][j], &cells[i][j + 1], n)?.rank() != left_up[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `r,s_birth,s_death,degree` lines, `inf` for infinite deaths.
pub fn barcode_csv(slices: &[(Rational, Vec<Bar>)], degree: usize) -> String {
    let mut out = String::from("r,s_birth,s_death,degree\n");
    for (r, bars) in slices {
        for bar in bars {
            let death = bar.death.map_or_else(|| "inf".to_string(), |d| format_rational(&d));
            let _ = writeln!(out, "{},{},{},{degree}", format_rational(r), format_rational(&bar.birth), death);
        }
    }
    out
}
