use std::collections::BTreeSet;

use crate::actions::is_operation;
use crate::data::{DataSet, Endo};
use crate::error::{Error, Result};

/// Largest domain for which all `n^n` endomorphisms are scanned by default.
pub const DEFAULT_POINT_GUARD: usize = 6;

fn check_guard(set: &DataSet, guard: usize) -> Result<usize> {
    let n = set.domain().len();
    if n > guard {
        return Err(Error::GuardExceeded { size: n, guard });
    }
    Ok(n)
}

/// `End_Φ(X)`: every self-map of the domain preserving the data set, in
/// lexicographic order of the image vectors.
pub fn enumerate_end(set: &DataSet, guard: usize) -> Result<Vec<Endo>> {
    let n = check_guard(set, guard)?;
    let mut out = Vec::new();
    if n == 0 {
        out.push(Endo::identity(0));
        return Ok(out);
    }
    let mut images = vec![0usize; n];
    loop {
        let g = Endo::new(images.clone())?;
        if is_operation(&g, set)? {
            out.push(g);
        }
        // odometer, last coordinate fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            images[pos] += 1;
            if images[pos] < n {
                break;
            }
            images[pos] = 0;
        }
    }
}

/// `Aut_Φ(X)`: the bijective operations, lexicographically ordered.
pub fn enumerate_aut(set: &DataSet, guard: usize) -> Result<Vec<Endo>> {
    let n = check_guard(set, guard)?;
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    // permutations in lexicographic order
    loop {
        let g = Endo::new(perm.clone())?;
        if is_operation(&g, set)? {
            out.push(g);
        }
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return Ok(out);
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("exists by choice of i");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// The least composition-closed set containing the identity and `gens`,
/// lexicographically ordered.
pub fn generated_submonoid(gens: &[Endo], n: usize) -> Result<Vec<Endo>> {
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(Error::DomainMismatch(format!("generator on {} points, expected {n}", g.len())));
    }
    let mut seen: BTreeSet<Endo> = BTreeSet::new();
    let mut frontier = vec![Endo::identity(n)];
    seen.insert(Endo::identity(n));
    while let Some(w) = frontier.pop() {
        for g in gens {
            let prod = w.mul(g);
            if seen.insert(prod.clone()) {
                frontier.push(prod);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
