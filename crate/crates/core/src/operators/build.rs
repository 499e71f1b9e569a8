use std::sync::Arc;

use crate::actions::Incarnation;
use crate::data::{change_units, domain_change, Endo, PointMap, ValueMap};
use crate::error::{Error, Result};
use crate::operators::{validate_seo, validate_seo_with_realization, Seo};

fn op_map(source: &Incarnation, target: &Incarnation, image: impl Fn(&Endo) -> Endo) -> Result<Vec<usize>> {
    source
        .ops()
        .iter()
        .map(|g| target.find_op(&image(g)).ok_or_else(|| Error::Internal("transported operation missing".into())))
        .collect()
}

/// `(Φ, M) → (Φ|Y, M|Y)` for an `M`-invariant `Y ⊆ X`, realized by the
/// inclusion. `Y` is taken in ascending point order.
pub fn restriction(inc: &Arc<Incarnation>, subset: &[usize]) -> Result<Seo> {
    let dom = inc.dataset().domain();
    let mut points = subset.to_vec();
    points.sort_unstable();
    points.dedup();
    if let Some(&bad) = points.iter().find(|&&x| x >= dom.len()) {
        return Err(Error::UnknownPoint(format!("#{bad}")));
    }
    let mut position = vec![None; dom.len()];
    for (k, &x) in points.iter().enumerate() {
        position[x] = Some(k);
    }
    let mut restricted_ops = Vec::with_capacity(inc.op_count());
    for g in 0..inc.op_count() {
        let images = points
            .iter()
            .map(|&x| {
                let gx = inc.op(g).apply(x);
                position[gx].ok_or_else(|| Error::NotInvariant {
                    point: dom.point(x).to_string(),
                    op: inc.op_name(g).to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        restricted_ops.push((inc.op_name(g).to_string(), Endo::new(images)?));
    }
    let inclusion = PointMap::inclusion(dom.clone(), &points)?;
    let (data, alpha) = domain_change(inc.dataset(), &inclusion)?;
    let target = Incarnation::new(data, restricted_ops.clone())?;
    let t = restricted_ops
        .iter()
        .map(|(_, g)| target.find_op(g).expect("inserted"))
        .collect();
    validate_seo_with_realization(inc.clone(), Arc::new(target), alpha, t, inclusion)
}

/// `(Φ, M) → (Φf, f⁻¹ M f)` for a bijection `f : Y → X`, realized by `f`.
pub fn domain_change_incarnation(inc: &Arc<Incarnation>, f: &PointMap) -> Result<Seo> {
    let finv = f.inverse()?;
    let (data, alpha) = domain_change(inc.dataset(), f)?;
    let conjugate = |g: &Endo| {
        Endo::new((0..f.images().len()).map(|y| finv.apply(g.apply(f.apply(y)))).collect()).expect("bijection")
    };
    let target = Incarnation::new(data, inc.named_ops().into_iter().map(|(name, g)| (name, conjugate(&g))))?;
    let t = op_map(inc, &target, conjugate)?;
    validate_seo_with_realization(inc.clone(), Arc::new(target), alpha, t, f.clone())
}

/// `(f−, id) : (Φ, M) → (fΦ, M)`
pub fn change_units_seo(f: &ValueMap, inc: &Arc<Incarnation>) -> Result<Seo> {
    let (data, alpha) = change_units(f, inc.dataset())?;
    let target = Incarnation::new(data, inc.named_ops())?;
    let t = op_map(inc, &target, Endo::clone)?;
    validate_seo(inc.clone(), Arc::new(target), alpha, t)
}

/// `(fΦ, M) → (fΨ, N)` induced by an invertible `f`, with the same `T`. A
/// realization of the original operator realizes the new one.
pub fn change_units_functor(f: &ValueMap, seo: &Seo) -> Result<Seo> {
    if !f.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let source = change_units_seo(f, seo.source())?;
    let target = change_units_seo(f, seo.target())?;
    let (src_arrow, tgt_arrow) = (source.alpha(), target.alpha());
    let mut alpha = vec![0; src_arrow.len()];
    for (phi, &image) in src_arrow.iter().enumerate() {
        alpha[image] = tgt_arrow[seo.alpha()[phi]];
    }
    let (new_src, new_tgt) = (source.target().clone(), target.target().clone());
    // the operations are untouched, so the source side keeps its indices
    debug_assert!(source.t().iter().enumerate().all(|(g, &h)| g == h));
    let t = seo.t().iter().map(|&h| target.t()[h]).collect();
    match seo.realization() {
        Some(r) => validate_seo_with_realization(new_src, new_tgt, alpha, t, r.clone()),
        None => validate_seo(new_src, new_tgt, alpha, t),
    }
}
