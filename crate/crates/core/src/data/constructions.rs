//! Coproduct, product, change of units and domain change.

use std::sync::Arc;

use num_traits::Zero;

use crate::data::{precompose, DataSet, Domain, PointMap, ValueMap};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `Φ ∐ Ψ` on the tagged disjoint union `L:x.. R:y..`, with its injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub dataset: DataSet,
    /// `in_left[i]` is the index of `phi_i + 0`.
    pub in_left: Vec<usize>,
    /// `in_right[j]` is the index of `0 + psi_j`.
    pub in_right: Vec<usize>,
}

/// `Φ × Ψ` on the tagged disjoint union, with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub dataset: DataSet,
    pub pr_left: Vec<usize>,
    pub pr_right: Vec<usize>,
    right_len: usize,
    by_pair: Vec<usize>,
}

impl Product {
    /// Index of `phi_i + psi_j`.
    pub fn index_of(&self, i: usize, j: usize) -> usize {
        self.by_pair[i * self.right_len + j]
    }
}

fn tagged_union(left: &Domain, right: &Domain) -> Arc<Domain> {
    let points = left.tagged("L:").into_iter().chain(right.tagged("R:"));
    Arc::new(Domain::new(points).expect("tags keep points distinct"))
}

fn pad(left: &[Rational], right: &[Rational]) -> Vec<Rational> {
    left.iter().chain(right).copied().collect()
}

pub fn coproduct(left: &DataSet, right: &DataSet) -> Coproduct {
    let domain = tagged_union(left.domain(), right.domain());
    let zeros_l = vec![Rational::zero(); left.domain().len()];
    let zeros_r = vec![Rational::zero(); right.domain().len()];
    let entries = (0..left.len())
        .map(|i| (format!("L:{}", left.name(i)), pad(left.values(i), &zeros_r)))
        .chain((0..right.len()).map(|j| (format!("R:{}", right.name(j)), pad(&zeros_l, right.values(j)))));
    let dataset = DataSet::new_allow_empty(domain, entries).expect("tagged names are distinct");
    let in_left = (0..left.len())
        .map(|i| dataset.find(&pad(left.values(i), &zeros_r)).expect("inserted"))
        .collect();
    let in_right = (0..right.len())
        .map(|j| dataset.find(&pad(&zeros_l, right.values(j))).expect("inserted"))
        .collect();
    Coproduct { dataset, in_left, in_right }
}

pub fn product(left: &DataSet, right: &DataSet) -> Product {
    let domain = tagged_union(left.domain(), right.domain());
    let mut entries = Vec::with_capacity(left.len() * right.len());
    for i in 0..left.len() {
        for j in 0..right.len() {
            entries.push((format!("{}+{}", left.name(i), right.name(j)), pad(left.values(i), right.values(j))));
        }
    }
    let dataset = DataSet::new_allow_empty(domain, entries).expect("pair names are distinct");
    let mut pr_left = vec![0; dataset.len()];
    let mut pr_right = vec![0; dataset.len()];
    let mut by_pair = Vec::with_capacity(left.len() * right.len());
    for i in 0..left.len() {
        for j in 0..right.len() {
            let k = dataset.find(&pad(left.values(i), right.values(j))).expect("inserted");
            pr_left[k] = i;
            pr_right[k] = j;
            by_pair.push(k);
        }
    }
    Product { dataset, pr_left, pr_right, right_len: right.len(), by_pair }
}

/// The unique `mu : Φ ∐ Ψ → Π` with `mu ∘ in_Φ = alpha` and `mu ∘ in_Ψ = beta`.
///
/// When `0 + 0` collapses (both sides contain the zero measurement) the
/// factorization exists only if `alpha` and `beta` agree on it.
pub fn copair(cop: &Coproduct, alpha: &[usize], beta: &[usize]) -> Result<Vec<usize>> {
    if alpha.len() != cop.in_left.len() || beta.len() != cop.in_right.len() {
        return Err(Error::DomainMismatch("copair arguments do not match the coproduct".into()));
    }
    let mut mu: Vec<Option<usize>> = vec![None; cop.dataset.len()];
    let sides = cop.in_left.iter().zip(alpha).chain(cop.in_right.iter().zip(beta));
    for (&k, &value) in sides {
        match mu[k] {
            Some(existing) if existing != value => {
                return Err(Error::CopairConflict(format!(
                    "{} is hit by both injections with different images",
                    cop.dataset.name(k)
                )))
            }
            _ => mu[k] = Some(value),
        }
    }
    Ok(mu.into_iter().map(|m| m.expect("injections are jointly surjective")).collect())
}

/// The unique `mu : Π → Φ × Ψ` with `pr_Φ ∘ mu = alpha` and `pr_Ψ ∘ mu = beta`.
pub fn pair(prod: &Product, alpha: &[usize], beta: &[usize]) -> Result<Vec<usize>> {
    if alpha.len() != beta.len() {
        return Err(Error::DomainMismatch("pair arguments have different sources".into()));
    }
    Ok(alpha.iter().zip(beta).map(|(&a, &b)| prod.index_of(a, b)).collect())
}

/// `fΦ` together with `f− : Φ → fΦ`.
pub fn change_units(f: &ValueMap, set: &DataSet) -> Result<(DataSet, Vec<usize>)> {
    let mapped = (0..set.len())
        .map(|i| Ok((set.name(i).to_string(), f.apply_all(set.values(i))?)))
        .collect::<Result<Vec<_>>>()?;
    let vectors: Vec<Vec<Rational>> = mapped.iter().map(|(_, v)| v.clone()).collect();
    let image = DataSet::new_allow_empty(set.domain_arc().clone(), mapped)?;
    let arrow = vectors.iter().map(|v| image.find(v).expect("inserted")).collect();
    Ok((image, arrow))
}

/// `Φf` for `f : Y → X`, together with `−f : Φ → Φf`.
pub fn domain_change(set: &DataSet, f: &PointMap) -> Result<(DataSet, Vec<usize>)> {
    if f.target() != set.domain() {
        return Err(Error::DomainMismatch("map target is not the data set domain".into()));
    }
    let vectors: Vec<Vec<Rational>> = (0..set.len()).map(|i| precompose(set.values(i), f.images())).collect();
    let entries = vectors.iter().enumerate().map(|(i, v)| (set.name(i).to_string(), v.clone()));
    let image = DataSet::new_allow_empty(f.source_arc().clone(), entries)?;
    let arrow = vectors.iter().map(|v| image.find(v).expect("inserted")).collect();
    Ok((image, arrow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn vectors(set: &DataSet) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = (0..set.len())
            .map(|i| set.values(i).iter().map(|r| r.to_integer()).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn coproduct_of_constants() {
        let (ones, signs) = fixtures::fixture_c();
        let cop = coproduct(&ones, &signs);
        assert_eq!(cop.dataset.domain().len(), 4);
        assert_eq!(
            vectors(&cop.dataset),
            vec![vec![0, 0, -1, -1], vec![0, 0, 1, 1], vec![1, 1, 0, 0], vec![2, 2, 0, 0]]
        );
        assert_eq!(cop.dataset.domain().points(), ["L:x1", "L:x2", "R:x1", "R:x2"]);
    }

    #[test]
    fn coproduct_collapses_zero() {
        let dom = Domain::numbered("x", 2);
        let zero = DataSet::from_vectors(dom, vec![vec![q(0), q(0)]]).unwrap();
        let cop = coproduct(&zero, &zero);
        assert_eq!(cop.dataset.len(), 1);
        assert_eq!(cop.in_left, cop.in_right);
        assert!(copair(&cop, &[0], &[0]).is_ok());
    }

    #[test]
    fn product_of_constants() {
        let (ones, signs) = fixtures::fixture_c();
        let prod = product(&ones, &signs);
        assert_eq!(
            vectors(&prod.dataset),
            vec![vec![1, 1, -1, -1], vec![1, 1, 1, 1], vec![2, 2, -1, -1], vec![2, 2, 1, 1]]
        );
        let single = DataSet::from_vectors(Domain::numbered("y", 1), vec![vec![q(7)]]).unwrap();
        assert_eq!(product(&ones, &single).dataset.len(), ones.len());
    }

    #[test]
    fn copair_of_identities_is_the_fold() {
        let (ones, _) = fixtures::fixture_c();
        let cop = coproduct(&ones, &ones);
        let id: Vec<usize> = (0..ones.len()).collect();
        let fold = copair(&cop, &id, &id).unwrap();
        for i in 0..ones.len() {
            assert_eq!(fold[cop.in_left[i]], i);
            assert_eq!(fold[cop.in_right[i]], i);
        }
    }

    #[test]
    fn pair_with_constant() {
        let (ones, signs) = fixtures::fixture_c();
        let prod = product(&ones, &signs);
        let id: Vec<usize> = (0..ones.len()).collect();
        let mu = pair(&prod, &id, &[1, 1]).unwrap();
        for (i, &k) in mu.iter().enumerate() {
            assert_eq!(prod.dataset.values(k), pad(ones.values(i), signs.values(1)).as_slice());
        }
    }

    #[test]
    fn change_units_clamp_sign() {
        let (ones, signs) = fixtures::fixture_c();
        let (image, arrow) = change_units(&ValueMap::ClampSign, &ones).unwrap();
        assert_eq!(image.len(), 1);
        assert_eq!(image.values(0), &[q(1), q(1)]);
        assert_eq!(arrow, vec![0, 0]);
        let (image, arrow) = change_units(&ValueMap::ClampSign, &signs).unwrap();
        assert!(image.same_measurements(&signs));
        for (i, &k) in arrow.iter().enumerate() {
            assert_eq!(image.values(k), signs.values(i));
        }
        let (same, id) = change_units(&ValueMap::Identity, &signs).unwrap();
        assert_eq!(same, signs);
        assert_eq!(id, vec![0, 1]);
    }

    #[test]
    fn change_units_reports_table_misses() {
        let (ones, _) = fixtures::fixture_c();
        let table = ValueMap::Table([(q(1), q(0))].into_iter().collect());
        assert!(matches!(change_units(&table, &ones), Err(Error::ValueMapMiss(_))));
    }

    #[test]
    fn domain_change_examples() {
        let b = fixtures::fixture_b_dataset();
        let id = PointMap::identity(b.domain().clone());
        let (same, arrow) = domain_change(&b, &id).unwrap();
        assert_eq!(same, b);
        assert_eq!(arrow, vec![0, 1, 2]);

        let dom = Arc::new(b.domain().clone());
        let g2 = PointMap::from_names(dom.clone(), dom, [("x1", "x2"), ("x2", "x2"), ("x3", "x2")]).unwrap();
        let (collapsed, arrow) = domain_change(&b, &g2).unwrap();
        assert_eq!(collapsed.len(), 1);
        assert_eq!(collapsed.values(0), &[q(2), q(2), q(2)]);
        assert_eq!(arrow, vec![0, 0, 0]);

        let other = PointMap::identity(Domain::numbered("z", 3));
        assert!(domain_change(&b, &other).is_err());
    }
}
