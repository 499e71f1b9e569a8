use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use enriched_ph::actions::DEFAULT_POINT_GUARD;
use enriched_ph::data::change_units;
use enriched_ph::ggraph::build_graph;
use enriched_ph::io::{
    analysis_report, dataset_to_value, functor_edges, graph_to_value, grid_to_value, incarnation_to_value,
    parse_dataset, parse_incarnation, parse_seo, parse_value_map, resolve_seo, seo_to_json, to_pretty,
};
use enriched_ph::linalg::Fp;
use enriched_ph::operators::{
    change_units_seo, decompose, extend_from_basis, find_realization, realization_candidates,
    universal_group_incarnation, universal_incarnation, validate_seo, validate_seo_with_realization,
    ExtensionVariant, Seo,
};
use enriched_ph::persistence::{barcode_csv, interleave_upper, ph_functor, ph_grid, slice_barcode};
use enriched_ph::rational::format_rational;
use enriched_ph::{DataSet, Error, Incarnation, PointMap};
use enriched_ph_testkit::random;
use serde_json::{json, Value};

use crate::failure::Failure;
use crate::{Cli, Command, GenKind, OpsKind, SeoCommand, Variant};

type Outcome = Result<(), Failure>;

const GUARD_VAR: &str = "ENRICHED_PH_GUARD";

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

/// `None` and `-` mean stdout.
fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display())))
        }
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The guard from the environment, or `default`.
fn guard(default: usize) -> Result<usize, Failure> {
    match std::env::var(GUARD_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::input(format!("{GUARD_VAR} must be a number, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn is_incarnation(text: &str) -> Result<bool, Failure> {
    let value: Value = serde_json::from_str(text).map_err(Error::from)?;
    Ok(value.get("dataset").is_some())
}

/// An incarnation, or a data set with the trivial monoid `{id}`.
fn load_either(path: &Path, allow_empty: bool) -> Result<(Incarnation, bool), Failure> {
    let text = read(path)?;
    if is_incarnation(&text)? {
        Ok((parse_incarnation(&text, allow_empty)?, true))
    } else {
        Ok((Incarnation::with_identity(parse_dataset(&text, allow_empty)?), false))
    }
}

fn load_incarnation(path: &Path, allow_empty: bool) -> Result<Incarnation, Failure> {
    Ok(parse_incarnation(&read(path)?, allow_empty)?)
}

fn load_dataset(path: &Path, allow_empty: bool) -> Result<DataSet, Failure> {
    Ok(parse_dataset(&read(path)?, allow_empty)?)
}

fn names(set: &DataSet, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| set.name(i).to_string()).collect()
}

fn point_map_names(f: &PointMap) -> Value {
    let map: serde_json::Map<String, Value> = (0..f.source().len())
        .map(|y| (f.source().point(y).to_string(), Value::from(f.target().point(f.apply(y)))))
        .collect();
    Value::Object(map)
}

fn seo_verdict(seo: &Seo) -> Value {
    json!({
        "valid": true,
        "meo": seo.is_meo(),
        "geo": seo.is_geo(),
        "isomorphism": seo.is_isomorphism(),
        "geometric": seo.is_geometric(),
        "realization": seo.realization().map(point_map_names),
    })
}

fn file_stem(text: &str) -> String {
    text.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

pub fn run(cli: Cli) -> Outcome {
    let allow_empty = cli.allow_empty;
    match cli.command {
        Command::Metric { dataset, out } => {
            let set = load_dataset(&dataset, allow_empty)?;
            emit(out.as_deref(), &set.pseudometric().to_csv(set.domain()))
        }
        Command::Analyze { incarnation, graph, dot } => {
            let inc = load_incarnation(&incarnation, allow_empty)?;
            let g = build_graph(&inc);
            if let Some(path) = graph {
                emit(Some(&path), &to_pretty(&graph_to_value(&g)))?;
            }
            if let Some(path) = dot {
                emit(Some(&path), &g.to_dot())?;
            }
            emit(None, &to_pretty(&analysis_report(&inc)))
        }
        Command::Ph { input, phi, degree, prime, grid, maps, barcodes, functor, dot } => {
            let (inc, _) = load_either(&input, allow_empty)?;
            let field = Fp::new(prime)?;
            let set = inc.dataset();
            let grid = match (&grid, &barcodes, &functor, &dot) {
                (None, None, None, None) => Some(PathBuf::from("-")),
                _ => grid,
            };
            let measurement = |flag: &str| -> Result<usize, Failure> {
                let name = phi.as_deref().ok_or_else(|| Failure::input(format!("--phi is required for {flag}")))?;
                Ok(set.resolve(name)?)
            };
            if let Some(path) = grid {
                let module = ph_grid(set, measurement("--grid")?, degree, field)?;
                emit(Some(&path), &to_pretty(&grid_to_value(&module, maps)))?;
            }
            if let Some(path) = barcodes {
                let m = measurement("--barcodes")?;
                let r_values = set.pseudometric().distinct_distances();
                let slices = r_values
                    .into_iter()
                    .map(|r| Ok((r, slice_barcode(set, m, degree, field, r)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                emit(Some(&path), &barcode_csv(&slices, degree))?;
            }
            if let Some(dir) = functor {
                let p = ph_functor(&inc, degree, field)?;
                fs::create_dir_all(&dir)?;
                let edges = functor_edges(&p);
                let mut files = Vec::new();
                for (k, (a, g, b, value)) in edges.iter().enumerate() {
                    let name = format!("edge-{k:03}-{}-{}-{}.json", file_stem(a), file_stem(g), file_stem(b));
                    emit(Some(&dir.join(&name)), &to_pretty(value))?;
                    files.push(name);
                }
                eprintln!("wrote {} edge maps to {}", files.len(), dir.display());
            }
            if let Some(path) = dot {
                emit(Some(&path), &build_graph(&inc).to_dot())?;
            }
            Ok(())
        }
        Command::Seo { command } => run_seo(command, allow_empty),
        Command::Interleave { dataset, phi, psi, degree, prime } => {
            let set = load_dataset(&dataset, allow_empty)?;
            let (a, b) = (set.resolve(&phi)?, set.resolve(&psi)?);
            let res = interleave_upper(&set, a, b, degree, Fp::new(prime)?)?;
            let report = json!({
                "epsilon": format_rational(&res.epsilon),
                "upper": format_rational(&res.upper),
                "lower": format_rational(&res.lower),
                "checks": res.checks,
            });
            emit(None, &to_pretty(&report))
        }
        Command::Ops { which, dataset } => {
            let set = load_dataset(&dataset, allow_empty)?;
            let bare = Incarnation::bare(set);
            let guard = guard(DEFAULT_POINT_GUARD)?;
            let universal = match which {
                OpsKind::End => universal_incarnation(&bare, guard)?,
                OpsKind::Aut => universal_group_incarnation(&bare, guard)?,
            };
            emit(None, &to_pretty(&incarnation_to_value(&universal)))
        }
        Command::Gen { seed, kind } => {
            let mut rng = random::rng(seed);
            let value = match kind {
                GenKind::Dataset => dataset_to_value(&random::dataset(&mut rng, 6, 4)),
                GenKind::Incarnation => incarnation_to_value(&random::incarnation(&mut rng, 4, 8, 4)),
            };
            emit(None, &to_pretty(&value))
        }
    }
}

fn run_seo(command: SeoCommand, allow_empty: bool) -> Outcome {
    match command {
        SeoCommand::Check { source, target, seo } => {
            let (src, tgt) = (load_incarnation(&source, allow_empty)?, load_incarnation(&target, allow_empty)?);
            let raw = parse_seo(&read(&seo)?)?;
            let (alpha, t, realization) = resolve_seo(&raw, &src, &tgt)?;
            let (src, tgt) = (Arc::new(src), Arc::new(tgt));
            let checked = match realization {
                Some(f) => validate_seo_with_realization(src, tgt, alpha, t, f)?,
                None => validate_seo(src, tgt, alpha, t)?,
            };
            emit(None, &to_pretty(&seo_verdict(&checked)))
        }
        SeoCommand::Extend { source, target, seo, variant, out } => {
            let (src, tgt) = (load_incarnation(&source, allow_empty)?, load_incarnation(&target, allow_empty)?);
            let raw = parse_seo(&read(&seo)?)?;
            let mut pairs = raw
                .alpha
                .iter()
                .map(|(a, b)| Ok((src.dataset().resolve(a)?, tgt.dataset().resolve(b)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            pairs.sort_unstable();
            let (basis, alpha_bar): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
            let mut t = vec![None; src.op_count()];
            for (g, h) in &raw.t {
                t[src.resolve_op(g)?] = Some(tgt.resolve_op(h)?);
            }
            let t = t
                .into_iter()
                .enumerate()
                .map(|(g, h)| h.ok_or_else(|| Error::PartialMap(src.op_name(g).to_string())))
                .collect::<Result<Vec<_>, Error>>()?;
            let variant = match variant {
                Variant::Seo => ExtensionVariant::Seo,
                Variant::Meo => ExtensionVariant::Meo,
                Variant::Geo => ExtensionVariant::Geo,
            };
            let (src, tgt) = (Arc::new(src), Arc::new(tgt));
            let extended = extend_from_basis(&src, &tgt, &basis, &alpha_bar, &t, variant)?;
            let json = seo_to_json(&src, &tgt, extended.alpha(), extended.t(), extended.realization());
            emit(out.as_deref(), &to_pretty(&serde_json::to_value(json).expect("plain data")))
        }
        SeoCommand::Realize { source, target, alpha } => {
            let (src_text, tgt_text, alpha_text) = (read(&source)?, read(&target)?, read(&alpha)?);
            if is_incarnation(&src_text)? && is_incarnation(&tgt_text)? {
                let (src, tgt) = (parse_incarnation(&src_text, allow_empty)?, parse_incarnation(&tgt_text, allow_empty)?);
                let (a, t, _) = resolve_seo(&parse_seo(&alpha_text)?, &src, &tgt)?;
                let seo = validate_seo(Arc::new(src), Arc::new(tgt), a, t)?;
                let report = match seo.realization() {
                    Some(f) => json!({ "realization": point_map_names(f) }),
                    None => json!({ "realization": null, "witness": "no point map satisfies the equivariance squares" }),
                };
                return emit(None, &to_pretty(&report));
            }
            let (src, tgt) = (parse_dataset(&src_text, allow_empty)?, parse_dataset(&tgt_text, allow_empty)?);
            let value: Value = serde_json::from_str(&alpha_text).map_err(Error::from)?;
            let map = value.get("alpha").unwrap_or(&value);
            let map = map.as_object().ok_or_else(|| Failure::input("alpha must be an object of names"))?;
            let mut a = vec![None; src.len()];
            for (k, v) in map {
                let v = v.as_str().ok_or_else(|| Failure::input("alpha values must be names"))?;
                a[src.resolve(k)?] = Some(tgt.resolve(v)?);
            }
            let a = a
                .into_iter()
                .enumerate()
                .map(|(i, x)| x.ok_or_else(|| Error::PartialMap(src.name(i).to_string())))
                .collect::<Result<Vec<_>, Error>>()?;
            let report = match find_realization(&src, &tgt, &a) {
                Some(f) => json!({ "realization": point_map_names(&f) }),
                None => {
                    let empty: Vec<&str> = realization_candidates(&src, &tgt, &a)
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.is_empty())
                        .map(|(y, _)| tgt.domain().point(y))
                        .collect();
                    json!({ "realization": null, "witness": { "empty_candidates": empty } })
                }
            };
            emit(None, &to_pretty(&report))
        }
        SeoCommand::Decompose { incarnation, out } => {
            let inc = Arc::new(load_either(&incarnation, allow_empty)?.0);
            let d = decompose(&inc)?;
            let coproduct = incarnation_to_value(&d.coproduct);
            let blocks: Vec<Vec<String>> = d.blocks.blocks().iter().map(|b| names(inc.dataset(), b)).collect();
            let mut report = json!({
                "blocks": blocks,
                "isomorphism": d.iso.is_isomorphism(),
                "geometric": d.iso.is_geometric(),
                "dimension": { "source": inc.dimension(), "coproduct": d.coproduct.dimension() },
                "block_count": { "source": inc.blocks().len(), "coproduct": d.coproduct.blocks().len() },
                "seo": seo_to_json(&inc, &d.coproduct, d.iso.alpha(), d.iso.t(), d.iso.realization()),
            });
            match out {
                Some(path) => emit(Some(&path), &to_pretty(&coproduct))?,
                None => report["coproduct"] = coproduct,
            }
            emit(None, &to_pretty(&report))
        }
        SeoCommand::Units { input, map, out } => {
            let f = parse_value_map(&read(&map)?)?;
            let (inc, is_inc) = load_either(&input, allow_empty)?;
            let report = if is_inc {
                let seo = change_units_seo(&f, &Arc::new(inc))?;
                json!({
                    "incarnation": incarnation_to_value(seo.target()),
                    "seo": seo_to_json(seo.source(), seo.target(), seo.alpha(), seo.t(), seo.realization()),
                })
            } else {
                let (image, arrow) = change_units(&f, inc.dataset())?;
                let arrow: serde_json::Map<String, Value> = arrow
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (inc.dataset().name(i).to_string(), Value::from(image.name(j))))
                    .collect();
                json!({ "dataset": dataset_to_value(&image), "arrow": arrow })
            };
            emit(out.as_deref(), &to_pretty(&report))
        }
    }
}
