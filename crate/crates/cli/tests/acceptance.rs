//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Golden examples go through the binary; property criteria go
//! through the library and are checked against the brute-force oracles.

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::sync::Arc;
use std::time::{Duration, Instant};

use enriched_ph::actions::DEFAULT_BASIS_GUARD;
use enriched_ph::data::{change_units, copair, coproduct, pair, product};
use enriched_ph::fixtures;
use enriched_ph::ggraph::Morphism;
use enriched_ph::linalg::Fp;
use enriched_ph::operators::{decompose, enumerate_geos, find_realization, is_realization};
use enriched_ph::persistence::{
    bottleneck_lower, geometric_ph_map, interleave_upper, ph_grid, superlevel_duality_check, BigradedPersistence, Grid,
};
use enriched_ph::rational::parse_rational;
use enriched_ph::{DataSet, Incarnation, PointMap, Rational, ValueMap};
use enriched_ph_testkit::{oracle, random};
use serde_json::{json, Value};

type Outcome = Result<String, String>;

/// Functions grouped by their pair of restrictions or projections.
type Factorizations = HashMap<(Vec<usize>, Vec<usize>), Vec<Vec<usize>>>;

/// A sublevel module together with the raw data needed to recompute it.
struct Recorded {
    values: Vec<Rational>,
    vectors: Vec<Vec<Rational>>,
    rs: Vec<Rational>,
    ss: Vec<Rational>,
    degree: usize,
    dims: Vec<Vec<usize>>,
}

#[derive(Default)]
struct Shared {
    recorded: Vec<Recorded>,
}

impl Shared {
    /// Records `module` at its grid corners and at the extra `s` values.
    fn record(&mut self, set: &DataSet, values: &[Rational], module: &BigradedPersistence, extra_s: &[Rational]) {
        let rs = module.grid().r().to_vec();
        let ss: Vec<Rational> =
            module.grid().s().iter().chain(extra_s).copied().collect::<BTreeSet<_>>().into_iter().collect();
        let dims = rs.iter().map(|&r| ss.iter().map(|&s| module.dim_at(r, s)).collect()).collect();
        self.recorded.push(Recorded {
            values: values.to_vec(),
            vectors: (0..set.len()).map(|i| set.values(i).to_vec()).collect(),
            rs,
            ss,
            degree: module.degree(),
            dims,
        });
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn f2() -> Fp {
    Fp::new(2).expect("prime")
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn lib<T>(r: enriched_ph::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    path.to_str().expect("utf-8 path").to_string()
}

fn cli(args: &[&str]) -> Result<Output, String> {
    Command::new(env!("CARGO_BIN_EXE_enriched-ph")).args(args).output().map_err(|e| e.to_string())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = cli(args)?;
    ensure(out.status.success(), || format!("`{}` exited with {:?}", args.join(" "), out.status.code()))?;
    serde_json::from_slice(&out.stdout).map_err(|e| format!("`{}` printed invalid JSON: {e}", args.join(" ")))
}

fn rationals(v: &Value) -> Result<Vec<Rational>, String> {
    v.as_array()
        .ok_or("expected an array of rationals")?
        .iter()
        .map(|x| parse_rational(x.as_str().ok_or("expected a rational string")?).map_err(|e| e.to_string()))
        .collect()
}

fn dims_of(v: &Value) -> Result<Vec<Vec<usize>>, String> {
    serde_json::from_value(v.clone()).map_err(|e| e.to_string())
}

fn vectors(set: &DataSet) -> Vec<Vec<Rational>> {
    (0..set.len()).map(|i| set.values(i).to_vec()).collect()
}

/// `1 ≤ s` and `1 ≤ r < 2`
fn square_loop(r: Rational, s: Rational) -> usize {
    usize::from(q(1) <= s && q(1) <= r && r < q(2))
}

fn criterion_1(shared: &mut Shared) -> Outcome {
    let grid = cli_json(&["ph", &data("fixture_a.json"), "--phi", "phi", "-d", "1"])?;
    let (rs, ss) = (rationals(&grid["r"])?, rationals(&grid["s"])?);
    ensure(rs == [q(0), q(1), q(2)], || format!("r grid {rs:?}"))?;
    ensure(ss == [q(-2), q(-1), q(0), q(1)], || format!("s grid {ss:?}"))?;
    let expected: Vec<Vec<usize>> = rs.iter().map(|&r| ss.iter().map(|&s| square_loop(r, s)).collect()).collect();
    ensure(dims_of(&grid["dims"])? == expected, || format!("PH_1 of phi in {{phi, psi}}: {}", grid["dims"]))?;

    let alone = cli_json(&["ph", &data("fixture_a_phi.json"), "--phi", "phi", "-d", "1"])?;
    ensure(dims_of(&alone["dims"])?.iter().flatten().all(|&d| d == 0), || "PH_1 of phi alone is not zero".into())?;

    // off-grid parameters, through the library
    let both = fixtures::fixture_a_psi();
    let module = lib(ph_grid(&both, 0, 1, f2()), "ph_grid")?;
    let single = fixtures::fixture_a_phi();
    let zero = lib(ph_grid(&single, 0, 1, f2()), "ph_grid")?;
    let samples: Vec<Rational> = (-16..=16).map(|k| Rational::new(k, 4)).collect();
    for &r in samples.iter().filter(|r| **r >= q(0)) {
        for &s in &samples {
            ensure(module.dim_at(r, s) == square_loop(r, s), || format!("dim at ({r}, {s})"))?;
            ensure(zero.dim_at(r, s) == 0, || format!("phi alone at ({r}, {s})"))?;
        }
    }
    shared.record(&both, both.values(0), &module, &samples);
    shared.record(&single, single.values(0), &zero, &samples);
    Ok("Fixture A grids match at every corner and at 561 off-grid parameters".into())
}

fn criterion_2(_: &mut Shared) -> Outcome {
    let report = cli_json(&["analyze", &data("fixture_b.json")])?;
    let expected = json!({"kind": "monoid", "blocks": [["phi1", "phi2", "phi3"]], "basis": ["phi1", "phi3"], "dimension": 2});
    ensure(report == expected, || format!("analyze reported {report}"))?;
    Ok("monoid, one block, basis {phi1, phi3}, dimension 2".into())
}

fn criterion_3(_: &mut Shared) -> Outcome {
    let (ones, signs) = fixtures::fixture_c();
    let (image, arrow) = lib(change_units(&ValueMap::ClampSign, &ones), "change_units")?;
    ensure(vectors(&image) == [vec![q(1), q(1)]] && arrow == [0, 0], || "f{1, 2} is not {1}".into())?;
    let (image, arrow) = lib(change_units(&ValueMap::ClampSign, &signs), "change_units")?;
    ensure(vectors(&image) == vectors(&signs) && arrow == [0, 1], || "f{-1, 1} is not {-1, 1} with f- = id".into())?;

    let sign = data("sign.json");
    let units = cli_json(&["seo", "units", &data("fixture_c_source.json"), "--map", &sign])?;
    ensure(units["arrow"] == json!({"one": "one", "two": "one"}), || format!("units arrow {}", units["arrow"]))?;
    let units = cli_json(&["seo", "units", &data("fixture_c_target.json"), "--map", &sign])?;
    ensure(units["arrow"] == json!({"minus_one": "minus_one", "plus_one": "plus_one"}), || {
        format!("units arrow {}", units["arrow"])
    })?;

    let realize = cli_json(&[
        "seo",
        "realize",
        "--source",
        &data("fixture_c_source.json"),
        "--target",
        &data("fixture_c_target.json"),
        "--alpha",
        &data("fixture_c_alpha.json"),
    ])?;
    ensure(realize["realization"].is_null(), || format!("realize reported {realize}"))?;
    ensure(find_realization(&ones, &signs, &fixtures::fixture_c_alpha()).is_none(), || "library found one".into())?;
    ensure(oracle::realizations(&vectors(&ones), 2, &vectors(&signs), 2, &[0, 1]).is_empty(), || {
        "oracle found a realization".into()
    })?;
    Ok("sign clamp gives {1} and {-1, 1}; no realization exists".into())
}

fn criterion_4(shared: &mut Shared) -> Outcome {
    let mut rng = random::rng(4);
    let (mut pairs, mut lower_positive) = (0, 0);
    for _ in 0..500 {
        let set = random::dataset(&mut rng, 6, 4);
        let raw = vectors(&set);
        let mut shifts: Vec<Vec<Rational>> = vec![Vec::new(); set.len()];
        for phi in 0..set.len() {
            for psi in phi + 1..set.len() {
                let eps = raw[phi].iter().zip(&raw[psi]).map(|(&a, &b)| if a > b { a - b } else { b - a }).max();
                let eps = eps.unwrap_or(q(0));
                for degree in [0, 1] {
                    let result = lib(interleave_upper(&set, phi, psi, degree, f2()), "interleave_upper")?;
                    ensure(result.epsilon == eps && result.upper == eps, || {
                        format!("epsilon {} upper {} but sup distance {eps}", result.epsilon, result.upper)
                    })?;
                    let lower = lib(bottleneck_lower(&set, phi, psi, degree, f2()), "bottleneck_lower")?;
                    ensure(lower <= eps, || format!("bottleneck lower bound {lower} exceeds {eps}"))?;
                    lower_positive += usize::from(lower > q(0));
                    pairs += 1;
                }
                for s in set.distinct_values() {
                    for k in [1, 2] {
                        shifts[phi].push(s - eps * k);
                        shifts[psi].push(s - eps * k);
                    }
                }
            }
        }
        for (phi, extra) in shifts.iter().enumerate() {
            for degree in [0, 1] {
                let module = lib(ph_grid(&set, phi, degree, f2()), "ph_grid")?;
                shared.record(&set, set.values(phi), &module, extra);
            }
        }
    }
    Ok(format!("{pairs} measurement pairs and degrees; {lower_positive} with a positive lower bound"))
}

/// A perfect matching between `a` and `b` along `related`.
fn has_bijection(a: &[usize], b: &[usize], related: impl Fn(usize, usize) -> bool) -> bool {
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    if a.len() != b.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = a.iter().map(|&x| (0..b.len()).filter(|&j| related(x, b[j])).collect()).collect();
    let mut owner = vec![None; b.len()];
    (0..a.len()).all(|i| augment(i, &adj, &mut vec![false; b.len()], &mut owner))
}

fn op_images(inc: &Incarnation) -> Vec<Vec<usize>> {
    inc.ops().iter().map(|g| g.images().to_vec()).collect()
}

fn criterion_5(_: &mut Shared) -> Outcome {
    let mut rng = random::rng(5);
    let (mut total_bases, mut several) = (0, 0);
    for _ in 0..200 {
        let inc = random::incarnation(&mut rng, 5, 8, 4);
        let raw = vectors(inc.dataset());
        let ops = op_images(&inc);
        let mut expected = oracle::bases(&raw, &ops);
        expected.sort();
        let found = lib(inc.enumerate_bases(DEFAULT_BASIS_GUARD), "enumerate_bases")?;
        ensure(found == expected, || format!("bases {found:?}, oracle {expected:?}"))?;
        let size = expected[0].len();
        ensure(expected.iter().all(|b| b.len() == size), || format!("bases of different sizes {expected:?}"))?;
        let reach: Vec<Vec<usize>> = (0..raw.len()).map(|i| oracle::closure(&raw, &ops, &[i])).collect();
        let indistinguishable = |a: usize, b: usize| reach[a].contains(&b) && reach[b].contains(&a);
        for a in 0..raw.len() {
            for b in 0..raw.len() {
                ensure(inc.indistinguishable(a, b) == indistinguishable(a, b), || format!("indistinguishable({a}, {b})"))?;
            }
        }
        for b in &expected {
            ensure(has_bijection(&expected[0], b, indistinguishable), || {
                format!("no bijection between {:?} and {b:?}", expected[0])
            })?;
        }
        let basis = inc.find_basis();
        ensure(expected.contains(&basis), || format!("find_basis gave {basis:?}, not a basis"))?;
        ensure(inc.dimension() == size, || "dimension differs from the basis size".into())?;
        total_bases += expected.len();
        several += usize::from(expected.len() > 1);
    }
    Ok(format!("200 incarnations, {total_bases} bases, {several} with more than one"))
}

fn point_map(from: &DataSet, to: &DataSet, images: &[usize]) -> Result<PointMap, String> {
    lib(PointMap::new(from.domain().clone(), to.domain().clone(), images.to_vec()), "PointMap::new")
}

fn criterion_6(shared: &mut Shared) -> Outcome {
    let mut rng = random::rng(6);
    let (mut squares, mut independence) = (0, 0);
    for _ in 0..100 {
        let chain = random::geometric_chain(&mut rng, 4);
        let (phi, psi, pi) = (&chain.phi, &chain.psi, &chain.pi);
        let (x, y, z) = (phi.domain().len(), psi.domain().len(), pi.domain().len());
        let beta_alpha: Vec<usize> = chain.alpha.iter().map(|&a| chain.beta[a]).collect();
        let fs = oracle::realizations(&vectors(phi), x, &vectors(psi), y, &chain.alpha);
        let gs = oracle::realizations(&vectors(psi), y, &vectors(pi), z, &chain.beta);
        let hs = oracle::realizations(&vectors(phi), x, &vectors(pi), z, &beta_alpha);
        ensure(fs.contains(&chain.f) && gs.contains(&chain.g), || "generated realization not found".into())?;
        for (source, target, alpha, all) in [(phi, psi, &chain.alpha, &fs), (psi, pi, &chain.beta, &gs)] {
            let found = find_realization(source, target, alpha).ok_or("library found no realization")?;
            ensure(all.contains(&found.images().to_vec()), || "library realization is not one".into())?;
        }
        let grid = Grid::for_dataset(phi).union(&Grid::for_dataset(psi)).union(&Grid::for_dataset(pi));
        for degree in [0, 1] {
            for (set, count) in [(phi, phi.len()), (psi, psi.len()), (pi, pi.len())] {
                for m in 0..count {
                    let module = lib(
                        BigradedPersistence::compute(set.values(m), &set.pseudometric(), &grid, degree, f2()),
                        "compute",
                    )?;
                    shared.record(set, set.values(m), &module, &[]);
                }
            }
            for m in 0..phi.len() {
                let map = |source: &DataSet, target: &DataSet, alpha: &[usize], f: &[usize], at: usize| {
                    let f = point_map(target, source, f)?;
                    lib(geometric_ph_map(source, target, alpha, &f, at, &grid, degree, f2()), "geometric_ph_map")
                };
                let ph_a: Vec<_> = fs.iter().map(|f| map(phi, psi, &chain.alpha, f, m)).collect::<Result<_, _>>()?;
                let ph_b: Vec<_> =
                    gs.iter().map(|g| map(psi, pi, &chain.beta, g, chain.alpha[m])).collect::<Result<_, _>>()?;
                let ph_ba: Vec<_> = hs.iter().map(|h| map(phi, pi, &beta_alpha, h, m)).collect::<Result<_, _>>()?;
                for maps in [&ph_a, &ph_b, &ph_ba] {
                    ensure(maps.iter().all(|other| *other == maps[0]), || "maps depend on the realization".into())?;
                    independence += usize::from(maps.len() > 1);
                }
                for (f, a) in fs.iter().zip(&ph_a) {
                    for (g, b) in gs.iter().zip(&ph_b) {
                        let h: Vec<usize> = g.iter().map(|&w| f[w]).collect();
                        let composite = map(phi, pi, &beta_alpha, &h, m)?;
                        ensure(lib(a.compose(b), "compose")? == composite, || {
                            format!("PH of beta alpha differs from PH alpha PH beta at measurement {m}")
                        })?;
                        squares += 1;
                    }
                }
            }
        }
        let bad: Vec<usize> = (0..y).map(|w| (chain.f[w] + 1) % x).collect();
        if !fs.contains(&bad) {
            let f = point_map(psi, phi, &bad)?;
            ensure(!is_realization(phi, psi, &chain.alpha, &f), || "a non-realization was accepted".into())?;
        }
    }
    Ok(format!("{squares} composites checked; {independence} independence checks with two or more realizations"))
}

fn act(vectors: &[Vec<Rational>], i: usize, g: &[usize]) -> usize {
    let image: Vec<Rational> = g.iter().map(|&x| vectors[i][x]).collect();
    vectors.iter().position(|v| *v == image).expect("operations preserve the set")
}

fn criterion_7(_: &mut Shared) -> Outcome {
    let mut rng = random::rng(7);
    let mut incarnations: Vec<Incarnation> = (0..200).map(|_| random::incarnation(&mut rng, 5, 8, 4)).collect();
    incarnations.push(fixtures::fixture_b());
    incarnations.push(Incarnation::with_identity(fixtures::fixture_a_psi()));
    let mut split = 0;
    for inc in incarnations {
        let inc = Arc::new(inc);
        let dec = lib(decompose(&inc), "decompose")?;
        let iso = &dec.iso;
        ensure(iso.is_isomorphism(), || "decompose did not return an isomorphism".into())?;
        let (source, target) = (vectors(inc.dataset()), vectors(dec.coproduct.dataset()));
        let (source_ops, target_ops) = (op_images(&inc), op_images(&dec.coproduct));
        let alpha = iso.alpha();
        ensure(alpha.iter().collect::<BTreeSet<_>>().len() == target.len() && source.len() == target.len(), || {
            "alpha is not a bijection".into()
        })?;
        for phi in 0..source.len() {
            for (g, t) in iso.t().iter().enumerate() {
                ensure(alpha[act(&source, phi, &source_ops[g])] == act(&target, alpha[phi], &target_ops[*t]), || {
                    format!("alpha is not equivariant at ({phi}, {g})")
                })?;
            }
        }
        let (sb, tb) = (oracle::bases(&source, &source_ops), oracle::bases(&target, &target_ops));
        ensure(sb[0].len() == tb[0].len() && dec.coproduct.dimension() == inc.dimension(), || {
            "dimension changed".into()
        })?;
        ensure(dec.coproduct.blocks().len() == inc.blocks().len(), || "block count changed".into())?;
        split += usize::from(inc.blocks().len() > 1);
    }
    Ok(format!("202 decompositions verified, {split} with several blocks"))
}

fn with_zero(set: &DataSet) -> DataSet {
    let mut v = vectors(set);
    v.push(vec![q(0); set.domain().len()]);
    DataSet::from_vectors(set.domain().clone(), v).expect("non-empty")
}

fn criterion_8(_: &mut Shared) -> Outcome {
    let mut rng = random::rng(8);
    let (mut instances, mut collapsed, mut checked) = (0, 0, 0);
    for i in 0..120 {
        let (mut phi, mut psi) = (random::small_dataset(&mut rng, 3, 3), random::small_dataset(&mut rng, 3, 3));
        let pi = random::small_dataset(&mut rng, 3, 3);
        if i % 3 == 0 {
            phi = with_zero(&phi.subset(&[0]).expect("in range"));
            psi = with_zero(&psi.subset(&[0]).expect("in range"));
        }
        let (a, b, c) = (phi.len(), psi.len(), pi.len());
        if a > 3 || b > 3 || c > 3 {
            continue;
        }
        instances += 1;

        let cop = coproduct(&phi, &psi);
        collapsed += usize::from(cop.dataset.len() < a + b);
        let mut by_restriction: Factorizations = HashMap::new();
        for mu in oracle::all_functions(cop.dataset.len(), c) {
            let key = (cop.in_left.iter().map(|&k| mu[k]).collect(), cop.in_right.iter().map(|&k| mu[k]).collect());
            by_restriction.entry(key).or_default().push(mu);
        }
        for alpha in oracle::all_functions(a, c) {
            for beta in oracle::all_functions(b, c) {
                let all = by_restriction.get(&(alpha.clone(), beta.clone())).cloned().unwrap_or_default();
                ensure(all.len() <= 1, || "copair factorization is not unique".into())?;
                match copair(&cop, &alpha, &beta) {
                    Ok(mu) => ensure(all == [mu], || "copair does not satisfy its equations".into())?,
                    Err(_) => ensure(all.is_empty(), || "copair missed a factorization".into())?,
                }
                checked += 1;
            }
        }

        let prod = product(&phi, &psi);
        let mut by_projection: Factorizations = HashMap::new();
        for mu in oracle::all_functions(c, prod.dataset.len()) {
            let key = (mu.iter().map(|&k| prod.pr_left[k]).collect(), mu.iter().map(|&k| prod.pr_right[k]).collect());
            by_projection.entry(key).or_default().push(mu);
        }
        for alpha in oracle::all_functions(c, a) {
            for beta in oracle::all_functions(c, b) {
                let mu = lib(pair(&prod, &alpha, &beta), "pair")?;
                let all = by_projection.get(&(alpha.clone(), beta)).cloned().unwrap_or_default();
                ensure(all == [mu], || "pair is not the unique factorization".into())?;
                checked += 1;
            }
        }
    }
    Ok(format!("{instances} instances, {collapsed} with a shared zero, {checked} factorizations checked"))
}

fn criterion_9(_: &mut Shared) -> Outcome {
    let mut rng = random::rng(9);
    let (mut cyclic, mut symmetric, mut maps) = (0, 0, 0);
    for _ in 0..60 {
        let pair = random::group_pair(&mut rng, 5, 200_000);
        let geos = lib(enumerate_geos(&pair.source, 0, &pair.target, &pair.t), "enumerate_geos")?;
        let found: BTreeSet<Vec<usize>> = geos.iter().map(|s| s.alpha().to_vec()).collect();
        let expected: BTreeSet<Vec<usize>> = oracle::equivariant_maps(
            &vectors(pair.source.dataset()),
            &op_images(&pair.source),
            &vectors(pair.target.dataset()),
            &op_images(&pair.target),
            &pair.t,
        )
        .into_iter()
        .collect();
        ensure(geos.len() == expected.len() && found == expected, || {
            format!("{} GEOs, oracle has {}", geos.len(), expected.len())
        })?;
        maps += expected.len();
        if pair.symmetric {
            symmetric += 1;
        } else {
            cyclic += 1;
        }
    }
    ensure(cyclic > 0 && symmetric > 0, || "both kinds of action must occur".into())?;
    Ok(format!("{cyclic} cyclic and {symmetric} symmetric actions, {maps} equivariant maps"))
}

fn criterion_10(shared: &mut Shared) -> Outcome {
    let mut corners = 0;
    for rec in &shared.recorded {
        let n = rec.values.len();
        let metric = oracle::sup_metric(&rec.vectors, n);
        let expected = oracle::sublevel_dims(&rec.values, &metric, &rec.rs, &rec.ss, rec.degree, 2);
        ensure(expected == rec.dims, || format!("values {:?}: dims {:?}, oracle {expected:?}", rec.values, rec.dims))?;
        corners += rec.rs.len() * rec.ss.len();
    }
    ensure(!shared.recorded.is_empty(), || "nothing was recorded".into())?;
    Ok(format!("{} modules, {corners} complexes", shared.recorded.len()))
}

fn superlevel_dims(set: &DataSet, phi: usize, module: &BigradedPersistence) -> Vec<Vec<usize>> {
    let raw = vectors(set);
    let metric = oracle::sup_metric(&raw, set.domain().len());
    let values = set.values(phi);
    module
        .grid()
        .r()
        .iter()
        .map(|&r| {
            module
                .grid()
                .s()
                .iter()
                .map(|&s| {
                    let points: Vec<usize> = (0..values.len()).filter(|&x| values[x] >= -s).collect();
                    oracle::homology_dim(&points, &metric, r, module.degree(), 2)
                })
                .collect()
        })
        .collect()
}

fn duality(set: &DataSet, phi: usize, degree: usize) -> Result<(), String> {
    ensure(lib(superlevel_duality_check(set, phi, degree, f2()), "superlevel_duality_check")?, || {
        format!("duality check failed for {} in degree {degree}", set.name(phi))
    })?;
    let (negated, arrow) = lib(change_units(&ValueMap::Negate, set), "change_units")?;
    let module = lib(ph_grid(&negated, arrow[phi], degree, f2()), "ph_grid")?;
    ensure(module.dims() == superlevel_dims(set, phi, &module), || "superlevel dims differ from the oracle".into())
}

fn criterion_11(_: &mut Shared) -> Outcome {
    let a = fixtures::fixture_a_psi();
    for phi in 0..a.len() {
        for degree in [0, 1] {
            duality(&a, phi, degree)?;
        }
    }
    let mut rng = random::rng(11);
    for k in 0..100 {
        let set = random::dataset(&mut rng, 6, 4);
        duality(&set, k % set.len(), k % 2)?;
    }
    Ok("Fixture A and 100 random instances".into())
}

type Criterion = (&'static str, Option<Duration>, fn(&mut Shared) -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("golden example: Fixture A persistence", Some(Duration::from_secs(1)), criterion_1),
        ("golden example: Fixture B analysis", Some(Duration::from_secs(1)), criterion_2),
        ("golden example: units and realization", None, criterion_3),
        ("non-expansiveness", Some(Duration::from_secs(300)), criterion_4),
        ("basis propositions", None, criterion_5),
        ("functoriality", None, criterion_6),
        ("decomposition", None, criterion_7),
        ("universal properties", None, criterion_8),
        ("GEO and isotropy", None, criterion_9),
        ("oracle equivalence", None, criterion_10),
        ("superlevel duality", None, criterion_11),
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut shared);
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {reason} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
