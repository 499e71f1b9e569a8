//! Reference computations that share no code with the library beyond its
//! value types: every answer is found by exhaustive enumeration and plain
//! Gaussian elimination.

use enriched_ph::Rational;

/// `d(x, y) = max_phi |phi(x) - phi(y)|` over raw value vectors.
pub fn sup_metric(vectors: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let zero = Rational::from_integer(0);
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    vectors.iter().fold(zero, |m, v| {
                        let diff = if v[x] > v[y] { v[x] - v[y] } else { v[y] - v[x] };
                        if diff > m {
                            diff
                        } else {
                            m
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Rank over `F_p` of a dense matrix with entries in `0..p`.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let inverse = |a: u64| (1..p).find(|&b| a * b % p == 1).expect("p is prime");
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = inverse(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Subsets of `points` with `size` elements and all pairwise distances at
/// most `r`, each ascending, found by scanning bitmasks.
pub fn vr_simplices(points: &[usize], metric: &[Vec<Rational>], r: Rational, size: usize) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let mut s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| points[i]).collect();
        s.sort_unstable();
        if s.iter().all(|&a| s.iter().all(|&b| metric[a][b] <= r)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Matrix of `∂ : C_k → C_{k-1}` with rows indexed by `faces`.
fn boundary(simplices: &[Vec<usize>], faces: &[Vec<usize>], p: u64) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0; simplices.len()]; faces.len()];
    for (j, s) in simplices.iter().enumerate() {
        for i in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
            let row = faces.iter().position(|f| *f == face).expect("faces of a clique are cliques");
            m[row][j] = if i % 2 == 0 { 1 } else { p - 1 };
        }
    }
    m
}

/// `dim H_d(VR_r(points))` over `F_p` as `#d-simplices − rank ∂_d − rank ∂_{d+1}`.
pub fn homology_dim(points: &[usize], metric: &[Vec<Rational>], r: Rational, degree: usize, p: u64) -> usize {
    let cells = vr_simplices(points, metric, r, degree + 1);
    let higher = vr_simplices(points, metric, r, degree + 2);
    let rank_d = if degree == 0 {
        0
    } else {
        let lower = vr_simplices(points, metric, r, degree);
        rank_mod_p(boundary(&cells, &lower, p), p)
    };
    let rank_up = rank_mod_p(boundary(&higher, &cells, p), p);
    cells.len() - rank_d - rank_up
}

/// `dim H_d(VR_r(phi ≤ s, d))` for every `(r, s)` of the given lists, rows
/// indexed by `r`.
pub fn sublevel_dims(
    values: &[Rational],
    metric: &[Vec<Rational>],
    rs: &[Rational],
    ss: &[Rational],
    degree: usize,
    p: u64,
) -> Vec<Vec<usize>> {
    rs.iter()
        .map(|&r| {
            ss.iter()
                .map(|&s| {
                    let points: Vec<usize> = (0..values.len()).filter(|&x| values[x] <= s).collect();
                    homology_dim(&points, metric, r, degree, p)
                })
                .collect()
        })
        .collect()
}

/// Every function `0..n → 0..m`, as image vectors in lexicographic order.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut current = vec![0; n];
    loop {
        out.push(current.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            current[k] += 1;
            if current[k] < m {
                break;
            }
            current[k] = 0;
        }
    }
}

fn position(vectors: &[Vec<Rational>], v: &[Rational]) -> Option<usize> {
    vectors.iter().position(|w| w.as_slice() == v)
}

fn precompose(v: &[Rational], g: &[usize]) -> Vec<Rational> {
    g.iter().map(|&x| v[x]).collect()
}

/// `Ω M` computed by repeatedly precomposing with the operations until
/// nothing new appears; indices ascending.
pub fn closure(vectors: &[Vec<Rational>], ops: &[Vec<usize>], omega: &[usize]) -> Vec<usize> {
    let mut seen: Vec<bool> = vec![false; vectors.len()];
    let mut stack: Vec<usize> = omega.to_vec();
    while let Some(i) = stack.pop() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        for g in ops {
            let j = position(vectors, &precompose(&vectors[i], g)).expect("operations preserve the set");
            stack.push(j);
        }
    }
    (0..vectors.len()).filter(|&i| seen[i]).collect()
}

/// All subsets that are independent and generate, by scanning every subset.
pub fn bases(vectors: &[Vec<Rational>], ops: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = vectors.len();
    let reach: Vec<Vec<usize>> = (0..n).map(|i| closure(vectors, ops, &[i])).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let omega: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let independent = omega
            .iter()
            .all(|&a| omega.iter().all(|&b| a == b || !reach[a].contains(&b)));
        if independent && closure(vectors, ops, &omega).len() == n {
            out.push(omega);
        }
    }
    out
}

/// Every `alpha : Φ → Ψ` with `alpha(phi g) = alpha(phi) T(g)`, found by
/// trying all `|Ψ|^|Φ|` functions.
pub fn equivariant_maps(
    source: &[Vec<Rational>],
    source_ops: &[Vec<usize>],
    target: &[Vec<Rational>],
    target_ops: &[Vec<usize>],
    t: &[usize],
) -> Vec<Vec<usize>> {
    let act = |vectors: &[Vec<Rational>], i: usize, g: &[usize]| {
        position(vectors, &precompose(&vectors[i], g)).expect("operations preserve the set")
    };
    all_functions(source.len(), target.len())
        .into_iter()
        .filter(|alpha| {
            (0..source.len()).all(|phi| {
                source_ops.iter().enumerate().all(|(g, op)| {
                    alpha[act(source, phi, op)] == act(target, alpha[phi], &target_ops[t[g]])
                })
            })
        })
        .collect()
}

/// Every `f : Y → X` with `phi ∘ f = alpha(phi)` for all `phi`.
pub fn realizations(
    source: &[Vec<Rational>],
    x: usize,
    target: &[Vec<Rational>],
    y: usize,
    alpha: &[usize],
) -> Vec<Vec<usize>> {
    all_functions(y, x)
        .into_iter()
        .filter(|f| (0..source.len()).all(|phi| precompose(&source[phi], f) == target[alpha[phi]]))
        .collect()
}
