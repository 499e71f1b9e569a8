use std::collections::VecDeque;
use std::sync::Arc;

use crate::actions::Incarnation;
use crate::error::{Error, Result};
use crate::operators::seo::homomorphism_witness;
use crate::operators::{validate_seo, Seo};

/// Which extension theorem to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionVariant {
    /// Arbitrary operation sets; relations between words must be preserved.
    Seo,
    /// Monoids and a homomorphism; coincidences `ωg = ω'h` must be preserved.
    Meo,
    /// Groups and a homomorphism; isotropy must be preserved.
    Geo,
}

/// Operations of `M` fixing `omega`.
pub fn isotropy(inc: &Incarnation, omega: usize) -> Vec<usize> {
    (0..inc.op_count()).filter(|&g| inc.act(omega, g) == omega).collect()
}

fn check_inputs(
    source: &Incarnation,
    target: &Incarnation,
    basis: &[usize],
    alpha_bar: &[usize],
    t: &[usize],
    variant: ExtensionVariant,
) -> Result<()> {
    if basis.len() != alpha_bar.len() {
        return Err(Error::DomainMismatch("basis and its images differ in length".into()));
    }
    if basis.iter().any(|&w| w >= source.dataset().len()) || alpha_bar.iter().any(|&a| a >= target.dataset().len()) {
        return Err(Error::DomainMismatch("basis index out of range".into()));
    }
    if t.len() != source.op_count() || t.iter().any(|&g| g >= target.op_count()) {
        return Err(Error::DomainMismatch("T does not map the source operations into the target".into()));
    }
    if !source.is_basis(basis) {
        return Err(Error::NotABasis(basis.iter().map(|&w| source.dataset().name(w).to_string()).collect()));
    }
    let need_group = variant == ExtensionVariant::Geo;
    if variant != ExtensionVariant::Seo {
        for inc in [source, target] {
            let ok = if need_group { inc.is_group() } else { inc.is_monoid() };
            if !ok {
                let want = if need_group { "group" } else { "monoid" };
                return Err(Error::KindMismatch(format!("expected {want} incarnation, got {}", inc.kind())));
            }
        }
        if let Some((g, h)) = homomorphism_witness(source, target, t) {
            return Err(Error::NotHomomorphism {
                g: source.op_name(g).to_string(),
                h: source.op_name(h).to_string(),
            });
        }
    }
    Ok(())
}

/// Extends `omega_i ↦ alpha_bar[i]` on a basis to an operator with the
/// given `T`.
///
/// The `Seo` variant explores the pairs `(omega w, alpha_bar(omega) T(w))`
/// reachable by words `w`; the extension exists exactly when no `phi` is
/// paired with two values, and a conflict comes with the two words.
pub fn extend_from_basis(
    source: &Arc<Incarnation>,
    target: &Arc<Incarnation>,
    basis: &[usize],
    alpha_bar: &[usize],
    t: &[usize],
    variant: ExtensionVariant,
) -> Result<Seo> {
    check_inputs(source, target, basis, alpha_bar, t, variant)?;
    let alpha = match variant {
        ExtensionVariant::Seo => extend_by_words(source, target, basis, alpha_bar, t)?,
        ExtensionVariant::Meo => extend_by_coincidences(source, target, basis, alpha_bar, t)?,
        ExtensionVariant::Geo => {
            check_isotropy(source, target, basis, alpha_bar, t)?;
            extend_by_coincidences(source, target, basis, alpha_bar, t)?
        }
    };
    validate_seo(source.clone(), target.clone(), alpha, t.to_vec())
}

struct Reached {
    value: usize,
    origin: usize,
    parent: Option<(usize, usize)>,
}

fn word(reached: &[Option<Reached>], inc: &Incarnation, mut phi: usize) -> Vec<String> {
    let mut letters = Vec::new();
    while let Some((prev, g)) = reached[phi].as_ref().and_then(|r| r.parent) {
        letters.push(inc.op_name(g).to_string());
        phi = prev;
    }
    letters.reverse();
    letters
}

fn extend_by_words(
    source: &Incarnation,
    target: &Incarnation,
    basis: &[usize],
    alpha_bar: &[usize],
    t: &[usize],
) -> Result<Vec<usize>> {
    let n = source.dataset().len();
    let mut reached: Vec<Option<Reached>> = (0..n).map(|_| None).collect();
    let name = |i: usize| source.dataset().name(basis[i]).to_string();
    for (i, (&w, &a)) in basis.iter().zip(alpha_bar).enumerate() {
        reached[w] = Some(Reached { value: a, origin: i, parent: None });
        let mut queue = VecDeque::from([w]);
        while let Some(phi) = queue.pop_front() {
            let (value, origin) = {
                let r = reached[phi].as_ref().expect("queued points are reached");
                (r.value, r.origin)
            };
            for (g, &tg) in t.iter().enumerate() {
                let next = source.act(phi, g);
                let next_value = target.act(value, tg);
                match &reached[next] {
                    None => {
                        reached[next] = Some(Reached { value: next_value, origin, parent: Some((phi, g)) });
                        queue.push_back(next);
                    }
                    Some(r) if r.value != next_value => {
                        let mut right = word(&reached, source, phi);
                        right.push(source.op_name(g).to_string());
                        return Err(Error::RelationViolation {
                            omega: name(r.origin),
                            omega_prime: name(origin),
                            left: word(&reached, source, next),
                            right,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    reached
        .into_iter()
        .map(|r| r.map(|r| r.value).ok_or_else(|| Error::Internal("basis does not generate".into())))
        .collect()
}

fn extend_by_coincidences(
    source: &Incarnation,
    target: &Incarnation,
    basis: &[usize],
    alpha_bar: &[usize],
    t: &[usize],
) -> Result<Vec<usize>> {
    let mut alpha: Vec<Option<(usize, usize, usize)>> = vec![None; source.dataset().len()];
    for (i, (&w, &a)) in basis.iter().zip(alpha_bar).enumerate() {
        for (g, &tg) in t.iter().enumerate() {
            let phi = source.act(w, g);
            let value = target.act(a, tg);
            match alpha[phi] {
                None => alpha[phi] = Some((value, i, g)),
                Some((v, j, h)) if v != value => {
                    return Err(Error::CoincidenceViolation {
                        omega: source.dataset().name(basis[j]).to_string(),
                        g: source.op_name(h).to_string(),
                        omega_prime: source.dataset().name(w).to_string(),
                        h: source.op_name(g).to_string(),
                    })
                }
                Some(_) => {}
            }
        }
    }
    alpha
        .into_iter()
        .map(|a| a.map(|(v, _, _)| v).ok_or_else(|| Error::Internal("basis does not generate".into())))
        .collect()
}

fn check_isotropy(
    source: &Incarnation,
    target: &Incarnation,
    basis: &[usize],
    alpha_bar: &[usize],
    t: &[usize],
) -> Result<()> {
    let id = source.identity_op().expect("groups contain the identity");
    for (&w, &a) in basis.iter().zip(alpha_bar) {
        if let Some(g) = isotropy(source, w).into_iter().find(|&g| target.act(a, t[g]) != a) {
            let name = source.dataset().name(w).to_string();
            return Err(Error::CoincidenceViolation {
                omega: name.clone(),
                g: source.op_name(g).to_string(),
                omega_prime: name,
                h: source.op_name(id).to_string(),
            });
        }
    }
    Ok(())
}

/// Every GEO `(alpha, T)` from a transitive group incarnation, one for each
/// `psi` fixed by `T(M_omega)`, in target order.
pub fn enumerate_geos(
    source: &Arc<Incarnation>,
    omega: usize,
    target: &Arc<Incarnation>,
    t: &[usize],
) -> Result<Vec<Seo>> {
    if !source.is_group() || !target.is_group() {
        return Err(Error::KindMismatch("GEO enumeration needs group incarnations".into()));
    }
    if !source.is_transitive() {
        return Err(Error::KindMismatch("GEO enumeration needs a transitive source".into()));
    }
    let stabilizer = isotropy(source, omega);
    (0..target.dataset().len())
        .filter(|&psi| stabilizer.iter().all(|&g| target.act(psi, t[g]) == psi))
        .map(|psi| extend_from_basis(source, target, &[omega], &[psi], t, ExtensionVariant::Geo))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{DataSet, Domain, Endo};
    use crate::fixtures;
    use crate::rational::Rational;

    fn b() -> Arc<Incarnation> {
        Arc::new(fixtures::fixture_b())
    }

    fn id_t(inc: &Incarnation) -> Vec<usize> {
        (0..inc.op_count()).collect()
    }

    #[test]
    fn identity_extends_in_every_variant() {
        let inc = b();
        let t = id_t(&inc);
        let basis = inc.find_basis();
        for variant in [ExtensionVariant::Seo, ExtensionVariant::Meo] {
            let seo = extend_from_basis(&inc, &inc, &basis, &basis, &t, variant).unwrap();
            assert_eq!(seo, Seo::identity(inc.clone()));
        }
        assert!(matches!(
            extend_from_basis(&inc, &inc, &basis, &basis, &t, ExtensionVariant::Geo),
            Err(Error::KindMismatch(_))
        ));
    }

    /// All coincidences `ωg = ω'h` respected by `alpha_bar`, by brute force.
    fn coincidences_respected(inc: &Incarnation, basis: &[usize], alpha_bar: &[usize], t: &[usize]) -> bool {
        let m = inc.op_count();
        (0..basis.len()).all(|i| {
            (0..basis.len()).all(|j| {
                (0..m).all(|g| {
                    (0..m).all(|h| {
                        inc.act(basis[i], g) != inc.act(basis[j], h)
                            || inc.act(alpha_bar[i], t[g]) == inc.act(alpha_bar[j], t[h])
                    })
                })
            })
        })
    }

    #[test]
    fn round_trip_through_a_basis() {
        let inc = b();
        let t = id_t(&inc);
        let basis = inc.find_basis();
        let s = validate_seo(inc.clone(), inc.clone(), vec![1, 1, 2], t.clone()).unwrap();
        let alpha_bar: Vec<usize> = basis.iter().map(|&w| s.alpha()[w]).collect();
        for variant in [ExtensionVariant::Seo, ExtensionVariant::Meo] {
            assert_eq!(extend_from_basis(&inc, &inc, &basis, &alpha_bar, &t, variant).unwrap(), s);
        }
    }

    #[test]
    fn conflicting_images_are_reported() {
        let inc = b();
        let t = id_t(&inc);
        let basis = inc.find_basis();
        assert!(!coincidences_respected(&inc, &basis, &[2, 0], &t));
        let err = extend_from_basis(&inc, &inc, &basis, &[2, 0], &t, ExtensionVariant::Seo).unwrap_err();
        assert!(matches!(err, Error::RelationViolation { .. }), "{err:?}");
        let err = extend_from_basis(&inc, &inc, &basis, &[2, 0], &t, ExtensionVariant::Meo).unwrap_err();
        assert!(matches!(err, Error::CoincidenceViolation { .. }), "{err:?}");
    }

    #[test]
    fn not_a_basis() {
        let inc = b();
        let t = id_t(&inc);
        assert!(matches!(
            extend_from_basis(&inc, &inc, &[0], &[0], &t, ExtensionVariant::Seo),
            Err(Error::NotABasis(_))
        ));
    }

    fn rotations() -> Arc<Incarnation> {
        let q = Rational::from_integer;
        let set = DataSet::from_vectors(
            Domain::numbered("x", 3),
            vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]],
        )
        .unwrap();
        let r = Endo::new(vec![1, 2, 0]).unwrap();
        Arc::new(Incarnation::new(set, [("id".into(), Endo::identity(3)), ("r".into(), r.clone()), ("r2".into(), r.mul(&r))]).unwrap())
    }

    #[test]
    fn free_transitive_action_has_one_geo_per_target() {
        let inc = rotations();
        assert!(inc.is_group());
        let t = id_t(&inc);
        let geos = enumerate_geos(&inc, 0, &inc, &t).unwrap();
        assert_eq!(geos.len(), 3);
        assert!(geos.iter().all(Seo::is_geo));
    }

    #[test]
    fn isotropy_blocks_targets() {
        let q = Rational::from_integer;
        let rot = rotations();
        let fixed = DataSet::from_vectors(Domain::numbered("x", 3), vec![vec![q(5), q(5), q(5)]]).unwrap();
        let source = Arc::new(Incarnation::new(fixed, rot.named_ops()).unwrap());
        let mut vectors: Vec<Vec<Rational>> = (0..3).map(|i| rot.dataset().values(i).to_vec()).collect();
        vectors.push(vec![q(1), q(1), q(1)]);
        let target = Arc::new(
            Incarnation::new(DataSet::from_vectors(Domain::numbered("x", 3), vectors).unwrap(), rot.named_ops()).unwrap(),
        );
        assert_eq!(isotropy(&source, 0), vec![0, 1, 2]);
        let t = id_t(&source);
        let geos = enumerate_geos(&source, 0, &target, &t).unwrap();
        assert_eq!(geos.len(), 1);
        assert_eq!(geos[0].alpha(), &[3]);
        let err = extend_from_basis(&source, &target, &[0], &[0], &t, ExtensionVariant::Geo).unwrap_err();
        assert!(matches!(err, Error::CoincidenceViolation { .. }), "{err:?}");
    }
}
