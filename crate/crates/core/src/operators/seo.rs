use std::sync::Arc;

use crate::actions::{enumerate_aut, enumerate_end, Incarnation};
use crate::data::{Endo, PointMap};
use crate::error::{Error, Result};
use crate::operators::realize::{find_seo_realization, is_seo_realization};

/// A set equivariant operator `(alpha, T) : (Φ, M) → (Ψ, N)`, i.e.
/// `alpha(phi g) = alpha(phi) T(g)` for all `phi ∈ Φ`, `g ∈ M`.
///
/// Only constructed through validation; the monoid/group flags and the
/// realization are computed, never supplied.
#[derive(Clone, Debug)]
pub struct Seo {
    source: Arc<Incarnation>,
    target: Arc<Incarnation>,
    alpha: Vec<usize>,
    t: Vec<usize>,
    is_meo: bool,
    is_geo: bool,
    realization: Option<PointMap>,
}

impl PartialEq for Seo {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.t == other.t && self.source == other.source && self.target == other.target
    }
}

/// First `(phi, g)` at which equivariance fails.
pub fn equivariance_witness(
    source: &Incarnation,
    target: &Incarnation,
    alpha: &[usize],
    t: &[usize],
) -> Option<(usize, usize)> {
    for phi in 0..source.dataset().len() {
        for g in 0..source.op_count() {
            if alpha[source.act(phi, g)] != target.act(alpha[phi], t[g]) {
                return Some((phi, g));
            }
        }
    }
    None
}

fn check_shapes(source: &Incarnation, target: &Incarnation, alpha: &[usize], t: &[usize]) -> Result<()> {
    if alpha.len() != source.dataset().len() {
        return Err(Error::DomainMismatch(format!(
            "alpha has {} entries, source has {} measurements",
            alpha.len(),
            source.dataset().len()
        )));
    }
    if alpha.iter().any(|&a| a >= target.dataset().len()) {
        return Err(Error::DomainMismatch("alpha image outside the target data set".into()));
    }
    if t.len() != source.op_count() {
        return Err(Error::DomainMismatch(format!(
            "T has {} entries, source has {} operations",
            t.len(),
            source.op_count()
        )));
    }
    if t.iter().any(|&g| g >= target.op_count()) {
        return Err(Error::DomainMismatch("T image outside the target operations".into()));
    }
    Ok(())
}

/// First `(g, h)` with `gh ∈ M` and `T(gh) ≠ T(g) T(h)`; `T(id) ≠ id` is
/// reported as `(id, id)`.
pub fn homomorphism_witness(source: &Incarnation, target: &Incarnation, t: &[usize]) -> Option<(usize, usize)> {
    if let Some(id) = source.identity_op() {
        if target.identity_op() != Some(t[id]) {
            return Some((id, id));
        }
    }
    for g in 0..source.op_count() {
        for h in 0..source.op_count() {
            if let Some(gh) = source.product(g, h) {
                if target.product(t[g], t[h]) != Some(t[gh]) {
                    return Some((g, h));
                }
            }
        }
    }
    None
}

/// Checks equivariance and builds the operator with computed flags. `T` is
/// not extended to `⟨M⟩`.
pub fn validate_seo(
    source: Arc<Incarnation>,
    target: Arc<Incarnation>,
    alpha: Vec<usize>,
    t: Vec<usize>,
) -> Result<Seo> {
    let mut seo = checked(source, target, alpha, t)?;
    seo.realization = find_seo_realization(&seo);
    Ok(seo)
}

/// Like [`validate_seo`] but with a known realization, verified instead of
/// searched for.
pub fn validate_seo_with_realization(
    source: Arc<Incarnation>,
    target: Arc<Incarnation>,
    alpha: Vec<usize>,
    t: Vec<usize>,
    realization: PointMap,
) -> Result<Seo> {
    let mut seo = checked(source, target, alpha, t)?;
    if !is_seo_realization(&seo, &realization) {
        return Err(Error::Internal("supplied map does not realize the operator".into()));
    }
    seo.realization = Some(realization);
    Ok(seo)
}

fn checked(source: Arc<Incarnation>, target: Arc<Incarnation>, alpha: Vec<usize>, t: Vec<usize>) -> Result<Seo> {
    check_shapes(&source, &target, &alpha, &t)?;
    if let Some((phi, g)) = equivariance_witness(&source, &target, &alpha, &t) {
        return Err(Error::Equivariance {
            measurement: source.dataset().name(phi).to_string(),
            op: source.op_name(g).to_string(),
            lhs: target.dataset().name(alpha[source.act(phi, g)]).to_string(),
            rhs: target.dataset().name(target.act(alpha[phi], t[g])).to_string(),
        });
    }
    let is_meo =
        source.is_monoid() && target.is_monoid() && homomorphism_witness(&source, &target, &t).is_none();
    let is_geo = is_meo && source.is_group() && target.is_group();
    Ok(Seo { source, target, alpha, t, is_meo, is_geo, realization: None })
}

impl Seo {
    /// `(id_Φ, id_M)`, realized by the identity of the domain.
    pub fn identity(inc: Arc<Incarnation>) -> Seo {
        let alpha = (0..inc.dataset().len()).collect();
        let t = (0..inc.op_count()).collect();
        let id = PointMap::identity(inc.dataset().domain().clone());
        validate_seo_with_realization(inc.clone(), inc, alpha, t, id).expect("identity is equivariant")
    }

    pub fn source(&self) -> &Arc<Incarnation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Incarnation> {
        &self.target
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn is_meo(&self) -> bool {
        self.is_meo
    }

    pub fn is_geo(&self) -> bool {
        self.is_geo
    }

    pub fn is_geometric(&self) -> bool {
        self.realization.is_some()
    }

    pub fn realization(&self) -> Option<&PointMap> {
        self.realization.as_ref()
    }

    /// Both `alpha` and `T` are bijections.
    pub fn is_isomorphism(&self) -> bool {
        is_bijection(&self.alpha, self.target.dataset().len()) && is_bijection(&self.t, self.target.op_count())
    }

    /// `next ∘ self`. Realizations compose as `f ∘ g` (`f` realizing `self`,
    /// `g` realizing `next`).
    pub fn then(&self, next: &Seo) -> Result<Seo> {
        if *self.target != *next.source {
            return Err(Error::EndpointMismatch);
        }
        let alpha = self.alpha.iter().map(|&a| next.alpha[a]).collect();
        let t = self.t.iter().map(|&g| next.t[g]).collect();
        match (&self.realization, &next.realization) {
            (Some(f), Some(g)) => {
                let fg = f.compose(g)?;
                validate_seo_with_realization(self.source.clone(), next.target.clone(), alpha, t, fg)
            }
            _ => validate_seo(self.source.clone(), next.target.clone(), alpha, t),
        }
    }
}

fn is_bijection(map: &[usize], codomain: usize) -> bool {
    if map.len() != codomain {
        return false;
    }
    let mut seen = vec![false; codomain];
    map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

fn universal(inc: &Incarnation, ops: Vec<Endo>) -> Result<Incarnation> {
    let named = ops.into_iter().enumerate().map(|(k, g)| {
        let name = inc.find_op(&g).map(|i| inc.op_name(i).to_string()).unwrap_or_else(|| format!("e{k}"));
        (name, g)
    });
    Incarnation::new(inc.dataset().clone(), named)
}

/// `(Φ, End_Φ(X))`. Operations already in `inc` keep their names.
pub fn universal_incarnation(inc: &Incarnation, guard: usize) -> Result<Incarnation> {
    universal(inc, enumerate_end(inc.dataset(), guard)?)
}

/// `(Φ, Aut_Φ(X))`
pub fn universal_group_incarnation(inc: &Incarnation, guard: usize) -> Result<Incarnation> {
    universal(inc, enumerate_aut(inc.dataset(), guard)?)
}

fn inclusion_seo(inc: Arc<Incarnation>, universal: Incarnation) -> Result<Seo> {
    let t = inc
        .ops()
        .iter()
        .map(|g| universal.find_op(g).ok_or_else(|| Error::Internal("operation missing from universal set".into())))
        .collect::<Result<Vec<_>>>()?;
    let alpha = (0..inc.dataset().len()).collect();
    let id = PointMap::identity(inc.dataset().domain().clone());
    validate_seo_with_realization(inc, Arc::new(universal), alpha, t, id)
}

/// The canonical operator `(id, M ↪ End_Φ(X))`.
pub fn canonical_seo(inc: Arc<Incarnation>, guard: usize) -> Result<Seo> {
    let universal = universal_incarnation(&inc, guard)?;
    inclusion_seo(inc, universal)
}

/// `(id, M ↪ Aut_Φ(X))` for a group incarnation.
pub fn canonical_geo(inc: Arc<Incarnation>, guard: usize) -> Result<Seo> {
    if !inc.is_group() {
        return Err(Error::KindMismatch(format!("canonical GEO needs a group incarnation, got {}", inc.kind())));
    }
    let universal = universal_group_incarnation(&inc, guard)?;
    inclusion_seo(inc, universal)
}
