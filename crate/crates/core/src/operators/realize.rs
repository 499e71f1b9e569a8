use crate::data::{precompose, DataSet, PointMap};
use crate::operators::Seo;

/// For each `y ∈ Y`, the points `x ∈ X` with `phi(x) = alpha(phi)(y)` for
/// every `phi ∈ Φ`. A realization picks one candidate per point.
pub fn realization_candidates(source: &DataSet, target: &DataSet, alpha: &[usize]) -> Vec<Vec<usize>> {
    let (xs, ys) = (source.domain().len(), target.domain().len());
    (0..ys)
        .map(|y| {
            (0..xs)
                .filter(|&x| (0..source.len()).all(|phi| source.values(phi)[x] == target.values(alpha[phi])[y]))
                .collect()
        })
        .collect()
}

/// `alpha(phi) = phi ∘ f` for every `phi`.
pub fn is_realization(source: &DataSet, target: &DataSet, alpha: &[usize], f: &PointMap) -> bool {
    f.target() == source.domain()
        && f.source() == target.domain()
        && (0..source.len()).all(|phi| precompose(source.values(phi), f.images()) == target.values(alpha[phi]))
}

/// Some `f : Y → X` with `alpha(phi) = phi ∘ f`, the smallest candidate at
/// each point. Any choice of candidates works.
pub fn find_realization(source: &DataSet, target: &DataSet, alpha: &[usize]) -> Option<PointMap> {
    let candidates = realization_candidates(source, target, alpha);
    let map = candidates.iter().map(|c| c.first().copied()).collect::<Option<Vec<_>>>()?;
    Some(PointMap::new(target.domain().clone(), source.domain().clone(), map).expect("candidates are in range"))
}

/// `f` realizes `alpha` and `g ∘ f = f ∘ T(g)` for every `g ∈ M`.
pub fn is_seo_realization(seo: &Seo, f: &PointMap) -> bool {
    let (src, tgt) = (seo.source(), seo.target());
    is_realization(src.dataset(), tgt.dataset(), seo.alpha(), f)
        && (0..src.op_count()).all(|g| {
            let (gm, tg) = (src.op(g), tgt.op(seo.t()[g]));
            (0..f.images().len()).all(|y| gm.apply(f.apply(y)) == f.apply(tg.apply(y)))
        })
}

/// A realization of the whole operator, found by backtracking over the
/// candidate sets in point order.
pub fn find_seo_realization(seo: &Seo) -> Option<PointMap> {
    let (src, tgt) = (seo.source(), seo.target());
    let candidates = realization_candidates(src.dataset(), tgt.dataset(), seo.alpha());
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let pairs: Vec<(&[usize], &[usize])> = (0..src.op_count())
        .map(|g| (src.op(g).images(), tgt.op(seo.t()[g]).images()))
        .collect();
    let mut assignment: Vec<Option<usize>> = vec![None; candidates.len()];

    // every constraint g(f(y)) = f(T(g)(y)) whose points are both assigned holds
    fn consistent(assignment: &[Option<usize>], pairs: &[(&[usize], &[usize])], y: usize) -> bool {
        pairs.iter().all(|(g, tg)| {
            let forward = match (assignment[y], assignment[tg[y]]) {
                (Some(fy), Some(fty)) => g[fy] == fty,
                _ => true,
            };
            let backward = (0..assignment.len()).filter(|&z| tg[z] == y).all(|z| match (assignment[z], assignment[y]) {
                (Some(fz), Some(fy)) => g[fz] == fy,
                _ => true,
            });
            forward && backward
        })
    }

    fn search(
        y: usize,
        candidates: &[Vec<usize>],
        assignment: &mut Vec<Option<usize>>,
        pairs: &[(&[usize], &[usize])],
    ) -> bool {
        if y == candidates.len() {
            return true;
        }
        for &x in &candidates[y] {
            assignment[y] = Some(x);
            if consistent(assignment, pairs, y) && search(y + 1, candidates, assignment, pairs) {
                return true;
            }
        }
        assignment[y] = None;
        false
    }

    if !search(0, &candidates, &mut assignment, &pairs) {
        return None;
    }
    let map = assignment.into_iter().map(|x| x.expect("assigned")).collect();
    let f = PointMap::new(tgt.dataset().domain().clone(), src.dataset().domain().clone(), map).ok()?;
    debug_assert!(is_seo_realization(seo, &f));
    Some(f)
}
