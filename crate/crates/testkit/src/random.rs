//! Seeded random instances. Values lie on the half-integer lattice in
//! `[-3, 3]` unless stated otherwise.

use std::sync::Arc;

use enriched_ph::{DataSet, Domain, Endo, Incarnation, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn half_integer(rng: &mut TestRng) -> Rational {
    Rational::new(rng.gen_range(-6..=6), 2)
}

pub fn vector(rng: &mut TestRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| half_integer(rng)).collect()
}

/// `|X| ≤ max_points`, `|Φ| ≤ max_measurements`, both at least one.
pub fn dataset(rng: &mut TestRng, max_points: usize, max_measurements: usize) -> DataSet {
    let n = rng.gen_range(1..=max_points);
    let k = rng.gen_range(1..=max_measurements);
    DataSet::from_vectors(Domain::numbered("x", n), (0..k).map(|_| vector(rng, n))).expect("non-empty")
}

fn endo(rng: &mut TestRng, n: usize) -> Endo {
    Endo::new((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("in range")
}

fn closure(seeds: Vec<Vec<Rational>>, ops: &[Endo], limit: usize) -> Option<Vec<Vec<Rational>>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut stack = seeds;
    while let Some(v) = stack.pop() {
        if out.contains(&v) {
            continue;
        }
        if out.len() == limit {
            return None;
        }
        for g in ops {
            stack.push(g.images().iter().map(|&x| v[x]).collect());
        }
        out.push(v);
    }
    Some(out)
}

/// Random operations on `|X| ≤ max_points` and `Φ` the closure of a few
/// random seeds under them, so every chosen map is a `Φ`-operation.
/// Values are drawn from a small range so that operations merge values
/// often enough for interesting blocks.
pub fn incarnation(rng: &mut TestRng, max_points: usize, max_measurements: usize, max_ops: usize) -> Incarnation {
    loop {
        let n = rng.gen_range(1..=max_points);
        let ops: Vec<Endo> = (0..rng.gen_range(0..=max_ops)).map(|_| endo(rng, n)).collect();
        let seeds = (0..rng.gen_range(1..=3)).map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(0..3))).collect());
        let Some(vectors) = closure(seeds.collect(), &ops, max_measurements) else { continue };
        let set = DataSet::from_vectors(Domain::numbered("x", n), vectors).expect("non-empty");
        let named = ops.into_iter().enumerate().map(|(i, g)| (format!("g{i}"), g));
        return Incarnation::new(set, named).expect("closed under the operations");
    }
}

/// Permutations forming a group, with the identity first.
fn group(n: usize, symmetric: bool) -> Vec<Endo> {
    if symmetric {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        perms.into_iter().map(|p| Endo::new(p).expect("permutation")).collect()
    } else {
        (0..n).map(|k| Endo::new((0..n).map(|x| (x + k) % n).collect()).expect("rotation")).collect()
    }
}

fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

/// A transitive group incarnation, a group incarnation on the same domain
/// with the same operations, and a homomorphism `T` between them.
#[derive(Clone, Debug)]
pub struct GroupPair {
    pub source: Arc<Incarnation>,
    pub target: Arc<Incarnation>,
    pub t: Vec<usize>,
    pub symmetric: bool,
}

/// Cyclic or symmetric actions on `|X| ≤ max_points`. The source is one
/// orbit; the target is one or two orbits. `T` is the identity, or a power
/// map for cyclic groups. Instances with more than `budget` candidate maps
/// `Φ → Ψ` are redrawn so that exhaustive search stays cheap.
pub fn group_pair(rng: &mut TestRng, max_points: usize, budget: u64) -> GroupPair {
    loop {
        let n = rng.gen_range(2..=max_points);
        let symmetric = rng.gen_bool(0.5) && n <= 4;
        let ops = group(n, symmetric);
        let small = |rng: &mut TestRng| (0..n).map(|_| Rational::from_integer(rng.gen_range(0..3))).collect::<Vec<_>>();
        let source = closure(vec![small(rng)], &ops, usize::MAX).expect("no limit");
        let target_seeds = (0..rng.gen_range(1..=2)).map(|_| small(rng)).collect();
        let target = closure(target_seeds, &ops, usize::MAX).expect("no limit");
        if (target.len() as u64).checked_pow(source.len() as u32).is_none_or(|c| c > budget) {
            continue;
        }
        let named = |ops: &[Endo]| ops.iter().enumerate().map(|(i, g)| (format!("g{i}"), g.clone())).collect::<Vec<_>>();
        let dom = Domain::numbered("x", n);
        let source = Incarnation::new(DataSet::from_vectors(dom.clone(), source).expect("orbit"), named(&ops))
            .expect("orbit is invariant");
        let target = Incarnation::new(DataSet::from_vectors(dom, target).expect("orbits"), named(&ops))
            .expect("orbits are invariant");
        let t = if symmetric {
            (0..ops.len()).collect()
        } else {
            // g_k is rotation by k, and g ↦ g^m is a homomorphism of Z/n
            let m = rng.gen_range(0..n);
            (0..n).map(|k| (k * m) % n).collect()
        };
        return GroupPair { source: Arc::new(source), target: Arc::new(target), t, symmetric };
    }
}

/// `Φ` on `X`, `Ψ = Φf ∪ extras` on `Y`, `Π = Ψg ∪ extras` on `Z`, with the
/// geometric functions `alpha(phi) = phi f` and `beta(psi) = psi g`.
#[derive(Clone, Debug)]
pub struct GeometricChain {
    pub phi: DataSet,
    pub psi: DataSet,
    pub pi: DataSet,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

pub fn geometric_chain(rng: &mut TestRng, max_points: usize) -> GeometricChain {
    let (x, y, z) = (rng.gen_range(1..=max_points), rng.gen_range(1..=max_points), rng.gen_range(1..=max_points));
    let f: Vec<usize> = (0..y).map(|_| rng.gen_range(0..x)).collect();
    let g: Vec<usize> = (0..z).map(|_| rng.gen_range(0..y)).collect();
    let pull = |v: &[Rational], m: &[usize]| m.iter().map(|&i| v[i]).collect::<Vec<_>>();
    let phi_vectors: Vec<Vec<Rational>> = (0..rng.gen_range(1..=3)).map(|_| vector(rng, x)).collect();
    let mut psi_vectors: Vec<Vec<Rational>> = phi_vectors.iter().map(|v| pull(v, &f)).collect();
    psi_vectors.extend((0..rng.gen_range(0..=2)).map(|_| vector(rng, y)));
    let mut pi_vectors: Vec<Vec<Rational>> = psi_vectors.iter().map(|v| pull(v, &g)).collect();
    pi_vectors.extend((0..rng.gen_range(0..=2)).map(|_| vector(rng, z)));
    let phi = DataSet::from_vectors(Domain::numbered("x", x), phi_vectors).expect("non-empty");
    let psi = DataSet::from_vectors(Domain::numbered("y", y), psi_vectors).expect("non-empty");
    let pi = DataSet::from_vectors(Domain::numbered("z", z), pi_vectors).expect("non-empty");
    let alpha = (0..phi.len()).map(|i| psi.find(&pull(phi.values(i), &f)).expect("included")).collect();
    let beta = (0..psi.len()).map(|i| pi.find(&pull(psi.values(i), &g)).expect("included")).collect();
    GeometricChain { phi, psi, pi, alpha, beta, f, g }
}

/// Up to `max` measurements on at most `max_points` points, values in `0..3`
/// so that sums coincide now and then.
pub fn small_dataset(rng: &mut TestRng, max_points: usize, max: usize) -> DataSet {
    let n = rng.gen_range(1..=max_points);
    let k = rng.gen_range(1..=max);
    let mut vectors: Vec<Vec<Rational>> =
        (0..k).map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(0..3))).collect()).collect();
    vectors.shuffle(rng);
    DataSet::from_vectors(Domain::numbered("x", n), vectors).expect("non-empty")
}
