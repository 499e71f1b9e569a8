use std::collections::BTreeSet;
use std::sync::Arc;

use enriched_ph::actions::DEFAULT_BASIS_GUARD;
use enriched_ph::ggraph::{Morphism, MonoidTable};
use enriched_ph::io::{dataset_to_value, incarnation_to_value, parse_dataset, parse_incarnation};
use enriched_ph::linalg::Fp;
use enriched_ph::operators::{change_units_seo, decompose, extend_from_basis, ExtensionVariant, Seo};
use enriched_ph::persistence::{bottleneck_lower, interleave_upper, ph_functor, ph_grid};
use enriched_ph::rational::{format_rational, parse_rational};
use enriched_ph::{Incarnation, Rational, ValueMap};
use enriched_ph_testkit::{oracle, random};
use proptest::prelude::*;

fn f2() -> Fp {
    Fp::new(2).unwrap()
}

fn vectors(set: &enriched_ph::DataSet) -> Vec<Vec<Rational>> {
    (0..set.len()).map(|i| set.values(i).to_vec()).collect()
}

fn ops(inc: &Incarnation) -> Vec<Vec<usize>> {
    inc.ops().iter().map(|g| g.images().to_vec()).collect()
}

fn midpoints(values: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = values.windows(2).map(|w| (w[0] + w[1]) / 2).collect();
    if let Some(&last) = values.last() {
        out.push(last + 1);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pseudometric_matches_the_oracle(seed in any::<u64>()) {
        let set = random::dataset(&mut random::rng(seed), 6, 4);
        let d = set.pseudometric();
        prop_assert!(d.is_pseudometric());
        prop_assert_eq!(d.rows(), oracle::sup_metric(&vectors(&set), set.domain().len()));
    }

    #[test]
    fn modules_are_constant_on_grid_cells(seed in any::<u64>(), degree in 0usize..2) {
        let set = random::dataset(&mut random::rng(seed), 5, 3);
        let metric = oracle::sup_metric(&vectors(&set), set.domain().len());
        for phi in 0..set.len() {
            let module = ph_grid(&set, phi, degree, f2()).unwrap();
            let (rs, ss) = (midpoints(module.grid().r()), midpoints(module.grid().s()));
            let inside = oracle::sublevel_dims(set.values(phi), &metric, &rs, &ss, degree, 2);
            prop_assert_eq!(inside, module.dims());
        }
    }

    #[test]
    fn interleaving_is_bounded_by_the_sup_distance(seed in any::<u64>(), degree in 0usize..2) {
        let set = random::dataset(&mut random::rng(seed), 5, 3);
        for phi in 0..set.len() {
            for psi in 0..set.len() {
                let result = interleave_upper(&set, phi, psi, degree, f2()).unwrap();
                prop_assert_eq!(result.upper, set.sup_distance(phi, psi));
                prop_assert!(result.lower <= result.upper);
                prop_assert!(bottleneck_lower(&set, phi, psi, degree, f2()).unwrap() <= result.upper);
            }
        }
    }

    #[test]
    fn ph_functor_respects_products(seed in any::<u64>()) {
        let inc = random::incarnation(&mut random::rng(seed), 4, 6, 3);
        let functor = ph_functor(&inc, 0, f2()).unwrap();
        let graph = functor.graph();
        let table = MonoidTable::from_incarnation(&inc);
        for phi in 0..inc.dataset().len() {
            for g in 0..inc.op_count() {
                for h in 0..inc.op_count() {
                    let Some(gh) = table.product(g, h) else { continue };
                    let composite = functor.arrow(phi, g).compose(functor.arrow(graph.next(phi, g), h)).unwrap();
                    prop_assert_eq!(&composite, functor.arrow(phi, gh));
                }
            }
        }
    }

    #[test]
    fn bases_share_a_size(seed in any::<u64>()) {
        let inc = random::incarnation(&mut random::rng(seed), 5, 8, 4);
        let basis = inc.find_basis();
        prop_assert!(inc.is_basis(&basis));
        let all = inc.enumerate_bases(DEFAULT_BASIS_GUARD).unwrap();
        prop_assert!(all.contains(&basis));
        prop_assert!(all.iter().all(|b| b.len() == basis.len()));
    }

    #[test]
    fn closure_agrees_with_the_generated_monoid(seed in any::<u64>()) {
        let inc = random::incarnation(&mut random::rng(seed), 4, 8, 3);
        let generated = inc.generated();
        let raw = vectors(inc.dataset());
        for phi in 0..raw.len() {
            let expected = oracle::closure(&raw, &ops(&inc), &[phi]);
            prop_assert_eq!(inc.deformation_closure(&[phi]), expected.clone());
            prop_assert_eq!(generated.deformation_closure(&[phi]), expected);
        }
        prop_assert!(generated.is_monoid());
    }

    #[test]
    fn extension_from_a_basis_recovers_the_operator(seed in any::<u64>(), shift in -2i64..3) {
        let inc = Arc::new(random::incarnation(&mut random::rng(seed), 4, 8, 3));
        let basis = inc.find_basis();
        let map = ValueMap::Affine(Rational::from_integer(1), Rational::from_integer(shift));
        for seo in [Seo::identity(inc.clone()), change_units_seo(&map, &inc).unwrap()] {
            let alpha_bar: Vec<usize> = basis.iter().map(|&w| seo.alpha()[w]).collect();
            let extended =
                extend_from_basis(seo.source(), seo.target(), &basis, &alpha_bar, seo.t(), ExtensionVariant::Seo).unwrap();
            prop_assert_eq!(extended.alpha(), seo.alpha());
        }
    }

    #[test]
    fn isomorphisms_carry_bases_to_bases(seed in any::<u64>()) {
        let inc = Arc::new(random::incarnation(&mut random::rng(seed), 4, 8, 3));
        let dec = decompose(&inc).unwrap();
        let image = |b: &Vec<usize>| b.iter().map(|&w| dec.iso.alpha()[w]).collect::<BTreeSet<_>>();
        let source: BTreeSet<_> = inc.enumerate_bases(DEFAULT_BASIS_GUARD).unwrap().iter().map(image).collect();
        let target: BTreeSet<_> = dec
            .coproduct
            .enumerate_bases(DEFAULT_BASIS_GUARD)
            .unwrap()
            .into_iter()
            .map(|b| b.into_iter().collect::<BTreeSet<_>>())
            .collect();
        prop_assert_eq!(source, target);
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let set = random::dataset(&mut rng, 5, 4);
        let back = parse_dataset(&dataset_to_value(&set).to_string(), false).unwrap();
        prop_assert_eq!(vectors(&back), vectors(&set));
        prop_assert_eq!(back.names(), set.names());
        let inc = random::incarnation(&mut rng, 4, 6, 3);
        let back = parse_incarnation(&incarnation_to_value(&inc).to_string(), false).unwrap();
        prop_assert_eq!(vectors(back.dataset()), vectors(inc.dataset()));
        prop_assert_eq!(back.named_ops(), inc.named_ops());
    }

    #[test]
    fn rationals_round_trip(numer in -1000i64..1000, denom in 1i64..50) {
        let v = Rational::new(numer, denom);
        prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
    }
}
