use crate::actions::Incarnation;
use crate::data::{DataSet, PointMap};
use crate::error::{Error, Result};
use crate::ggraph::{build_graph, GraphFunctor, MonoidTable};
use crate::linalg::Fp;
use crate::operators::is_realization;
use crate::persistence::{induced_morphism, BigradedPersistence, Grid, PhMorphism};

/// The persistent homology functor of an incarnation: `PH_d^Φ(phi)` at each
/// vertex and, for each edge `(phi, g, phi g)`, the map
/// `PH_d^Φ(phi g) → PH_d^Φ(phi)` induced by `g`.
pub type PhFunctor = GraphFunctor<BigradedPersistence, PhMorphism>;

/// Every object is computed on [`Grid::for_dataset`], so arrows compose
/// cellwise. Functoriality is verified for every pair of consecutive edges
/// whose product lies in `M`.
pub fn ph_functor(inc: &Incarnation, degree: usize, field: Fp) -> Result<PhFunctor> {
    ph_functor_on(inc, &Grid::for_dataset(inc.dataset()), degree, field)
}

/// [`ph_functor`] on a grid refining [`Grid::for_dataset`].
pub fn ph_functor_on(inc: &Incarnation, grid: &Grid, degree: usize, field: Fp) -> Result<PhFunctor> {
    let set = inc.dataset();
    let d = set.pseudometric();
    let objects = (0..set.len())
        .map(|phi| BigradedPersistence::compute(set.values(phi), &d, grid, degree, field))
        .collect::<Result<Vec<_>>>()?;
    let graph = build_graph(inc);
    let arrows = graph
        .edges()
        .into_iter()
        .map(|(phi, g, psi)| induced_morphism(&objects[psi], &objects[phi], inc.op(g).images()))
        .collect::<Result<Vec<_>>>()?;
    let functor = GraphFunctor::new(graph, objects, arrows)?;
    functor.check_functoriality(&MonoidTable::from_incarnation(inc))?;
    Ok(functor)
}

/// `PH_d^α(phi) : PH_d^Ψ(α(phi)) → PH_d^Φ(phi)` for a geometric function
/// `α : Φ → Ψ` realized by `f : Y → X`, on a grid refining both critical
/// grids. Since `α(phi) = phi f`, `f` sends `α(phi) ≤ s` into `phi ≤ s` and
/// does not increase distances.
#[allow(clippy::too_many_arguments)]
pub fn geometric_ph_map(
    source: &DataSet,
    target: &DataSet,
    alpha: &[usize],
    f: &PointMap,
    phi: usize,
    grid: &Grid,
    degree: usize,
    field: Fp,
) -> Result<PhMorphism> {
    if alpha.len() != source.len() || !is_realization(source, target, alpha, f) {
        return Err(Error::NotARealization);
    }
    let from = BigradedPersistence::compute(target.values(alpha[phi]), &target.pseudometric(), grid, degree, field)?;
    let to = BigradedPersistence::compute(source.values(phi), &source.pseudometric(), grid, degree, field)?;
    induced_morphism(&from, &to, f.images())
}
