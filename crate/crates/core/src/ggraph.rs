//! Grothendieck graphs: vertices with exactly one outgoing edge of each
//! color, the graph of an incarnation, morphisms, monoid compatibility and
//! contravariant functors indexed by such graphs.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::actions::Incarnation;
use crate::data::Pseudometric;
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

/// `(V, M, E)` with `E` stored as the map `(v, g) ↦ vg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckGraph {
    vertices: Vec<String>,
    colors: Vec<String>,
    /// `next[v][g]`
    next: Vec<Vec<usize>>,
}

fn index(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(Error::Graph(format!("duplicate {what} {n:?}")));
        }
    }
    Ok(map)
}

impl GrothendieckGraph {
    /// Checks that every vertex has exactly one outgoing edge of each color.
    pub fn from_edges(vertices: Vec<String>, colors: Vec<String>, edges: &[(String, String, String)]) -> Result<Self> {
        let vix = index(&vertices, "vertex")?;
        let cix = index(&colors, "color")?;
        let lookup = |map: &HashMap<String, usize>, name: &str, what: &str| {
            map.get(name).copied().ok_or_else(|| Error::Graph(format!("unknown {what} {name:?}")))
        };
        let mut next: Vec<Vec<Option<usize>>> = vec![vec![None; colors.len()]; vertices.len()];
        for (v, g, w) in edges {
            let (vi, gi, wi) = (lookup(&vix, v, "vertex")?, lookup(&cix, g, "color")?, lookup(&vix, w, "vertex")?);
            match next[vi][gi] {
                Some(existing) if existing != wi => {
                    return Err(Error::Graph(format!("vertex {v:?} has two outgoing {g:?} edges")))
                }
                _ => next[vi][gi] = Some(wi),
            }
        }
        let next = next
            .into_iter()
            .enumerate()
            .map(|(v, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(g, w)| {
                        w.ok_or_else(|| {
                            Error::Graph(format!("vertex {:?} has no outgoing {:?} edge", vertices[v], colors[g]))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GrothendieckGraph { vertices, colors, next })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    /// `vg`
    pub fn next(&self, v: usize, g: usize) -> usize {
        self.next[v][g]
    }

    /// Position of the edge `(v, g, vg)` in [`GrothendieckGraph::edges`].
    pub fn edge_index(&self, v: usize, g: usize) -> usize {
        v * self.colors.len() + g
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() * self.colors.len()
    }

    /// `(v, g, vg)` ordered by vertex, then color.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        (0..self.vertices.len())
            .flat_map(|v| (0..self.colors.len()).map(move |g| (v, g, self.next[v][g])))
            .collect()
    }

    pub fn named_edges(&self) -> Vec<(String, String, String)> {
        self.edges()
            .into_iter()
            .map(|(v, g, w)| (self.vertices[v].clone(), self.colors[g].clone(), self.vertices[w].clone()))
            .collect()
    }

    /// One node per vertex and one colored, labelled arc per edge.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "deeppink"];
        let mut out = String::from("digraph G {\n  node [shape=circle];\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (v, g, w) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\", color=\"{}\"];",
                self.vertices[v],
                self.vertices[w],
                self.colors[g],
                PALETTE[g % PALETTE.len()]
            );
        }
        out.push_str("}\n");
        out
    }
}

/// `E_{Φ,M} = {(phi, g, psi) : phi g = psi}`
pub fn build_graph(inc: &Incarnation) -> GrothendieckGraph {
    let graph = GrothendieckGraph {
        vertices: inc.dataset().names(),
        colors: inc.op_names().to_vec(),
        next: inc.action_table().to_vec(),
    };
    debug_assert!(validate_graph(&graph.vertices, &graph.colors, &graph.named_edges()).is_ok());
    graph
}

/// The bijection condition on a raw edge list.
pub fn validate_graph(vertices: &[String], colors: &[String], edges: &[(String, String, String)]) -> Result<()> {
    let graph = GrothendieckGraph::from_edges(vertices.to_vec(), colors.to_vec(), edges)?;
    let expected = graph.edge_count();
    let mut distinct: Vec<&(String, String, String)> = edges.iter().collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != expected {
        return Err(Error::Graph(format!("{} distinct edges, expected {expected}", distinct.len())));
    }
    Ok(())
}

/// `(alpha, T) : G → H` sends every edge `(v, g, w)` to `(alpha v, T g, alpha w)`.
pub fn validate_morphism(g: &GrothendieckGraph, h: &GrothendieckGraph, alpha: &[usize], t: &[usize]) -> Result<()> {
    if alpha.len() != g.vertices.len() || t.len() != g.colors.len() {
        return Err(Error::Graph("morphism does not cover the source graph".into()));
    }
    if alpha.iter().any(|&a| a >= h.vertices.len()) || t.iter().any(|&c| c >= h.colors.len()) {
        return Err(Error::Graph("morphism leaves the target graph".into()));
    }
    for (v, c, w) in g.edges() {
        if h.next(alpha[v], t[c]) != alpha[w] {
            return Err(Error::Graph(format!(
                "edge ({}, {}, {}) is not sent to an edge",
                g.vertices[v], g.colors[c], g.vertices[w]
            )));
        }
    }
    Ok(())
}

/// `d(v, w) ≥ d(vg, wg)` for all `v, w, g`.
pub fn validate_pseudometric(g: &GrothendieckGraph, d: &Pseudometric) -> Result<()> {
    let n = g.vertices.len();
    if d.len() != n {
        return Err(Error::Graph(format!("pseudometric on {} points, graph has {n} vertices", d.len())));
    }
    for v in 0..n {
        for w in 0..n {
            for c in 0..g.colors.len() {
                if d.get(v, w) < d.get(g.next(v, c), g.next(w, c)) {
                    return Err(Error::Graph(format!(
                        "{} expands the distance between {} and {}",
                        g.colors[c], g.vertices[v], g.vertices[w]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A partial multiplication on colors. `product(g, h)` is the color of the
/// composite of a `g` edge followed by an `h` edge, so `v g h = v (g h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    identity: Option<usize>,
    table: Vec<Vec<Option<usize>>>,
}

impl MonoidTable {
    pub fn new(identity: Option<usize>, table: Vec<Vec<Option<usize>>>) -> Self {
        MonoidTable { identity, table }
    }

    /// Products of maps that land in `M`.
    pub fn from_incarnation(inc: &Incarnation) -> Self {
        let m = inc.op_count();
        let table = (0..m).map(|g| (0..m).map(|h| inc.product(g, h)).collect()).collect();
        MonoidTable { identity: inc.identity_op(), table }
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn product(&self, g: usize, h: usize) -> Option<usize> {
        self.table[g][h]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Checks `(v, 1, v) ∈ E` and that consecutive edges compose inside `E`.
pub fn is_monoid_compatible(g: &GrothendieckGraph, table: &MonoidTable) -> Result<()> {
    if table.len() != g.colors.len() {
        return Err(Error::Graph("table does not match the colors".into()));
    }
    let id = table.identity.ok_or_else(|| Error::Graph("the colors have no identity".into()))?;
    if let Some(v) = (0..g.vertices.len()).find(|&v| g.next(v, id) != v) {
        return Err(Error::Graph(format!("no identity loop at {}", g.vertices[v])));
    }
    for v0 in 0..g.vertices.len() {
        for c0 in 0..g.colors.len() {
            let v1 = g.next(v0, c0);
            for c1 in 0..g.colors.len() {
                let v2 = g.next(v1, c1);
                let composite = table
                    .product(c0, c1)
                    .ok_or_else(|| Error::Graph(format!("{} {} is not a color", g.colors[c0], g.colors[c1])))?;
                if g.next(v0, composite) != v2 {
                    return Err(Error::Graph(format!(
                        "edges ({0}, {1}) and ({2}, {3}) from {4} do not compose",
                        g.vertices[v0], g.colors[c0], g.vertices[v1], g.colors[c1], g.vertices[v0]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `Gr_M V`: objects are vertices, arrows are edges, and
/// `(v0, g0, v1)(v1, g1, v2) = (v0, g0 g1, v2)`.
#[derive(Clone, Debug)]
pub struct GrCategory {
    graph: GrothendieckGraph,
    table: MonoidTable,
}

/// An arrow `(source vertex, color)` of `Gr_M V`; its target is `vg`.
pub type Arrow = (usize, usize);

impl GrCategory {
    /// Verifies compatibility, then unit and associativity laws exhaustively.
    pub fn new(graph: GrothendieckGraph, table: MonoidTable) -> Result<Self> {
        is_monoid_compatible(&graph, &table)?;
        let cat = GrCategory { graph, table };
        cat.verify_laws()?;
        Ok(cat)
    }

    pub fn graph(&self) -> &GrothendieckGraph {
        &self.graph
    }

    pub fn target(&self, (v, g): Arrow) -> usize {
        self.graph.next(v, g)
    }

    pub fn identity(&self, v: usize) -> Arrow {
        (v, self.table.identity.expect("verified"))
    }

    /// `a` followed by `b`; `None` when they are not consecutive.
    pub fn compose(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        (self.target(a) == b.0).then(|| (a.0, self.table.product(a.1, b.1).expect("verified")))
    }

    fn verify_laws(&self) -> Result<()> {
        let arrows: Vec<Arrow> = self.graph.edges().into_iter().map(|(v, g, _)| (v, g)).collect();
        for &a in &arrows {
            let left = self.compose(self.identity(a.0), a);
            let right = self.compose(a, self.identity(self.target(a)));
            if left.map(|x| self.target(x)) != Some(self.target(a)) || right.map(|x| self.target(x)) != Some(self.target(a)) {
                return Err(Error::Graph("identity arrows are not neutral".into()));
            }
            for &b in arrows.iter().filter(|b| b.0 == self.target(a)) {
                let ab = self.compose(a, b).expect("consecutive");
                for &c in arrows.iter().filter(|c| c.0 == self.target(b)) {
                    let lhs = self.compose(ab, c).expect("consecutive");
                    let rhs = self.compose(a, self.compose(b, c).expect("consecutive")).expect("consecutive");
                    if self.target(lhs) != self.target(rhs) || self.table.product(self.table.product(a.1, b.1).expect("closed"), c.1) != self.table.product(a.1, self.table.product(b.1, c.1).expect("closed")) {
                        return Err(Error::Graph("composition is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Arrows carried by a functor: composable, with a recognizable identity.
pub trait Morphism: Clone + PartialEq {
    /// `self ∘ inner`
    fn compose(&self, inner: &Self) -> Result<Self>;
    fn is_identity(&self) -> bool;
}

impl Morphism for FpMatrix {
    fn compose(&self, inner: &Self) -> Result<Self> {
        self.mul(inner)
    }

    fn is_identity(&self) -> bool {
        FpMatrix::is_identity(self)
    }
}

/// A contravariant functor: an object per vertex and, per edge
/// `(v0, g, v1)`, an arrow `P(v1) → P(v0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphFunctor<O, A> {
    graph: GrothendieckGraph,
    objects: Vec<O>,
    arrows: Vec<A>,
}

impl<O: Clone, A: Morphism> GraphFunctor<O, A> {
    /// `arrows` is indexed by [`GrothendieckGraph::edge_index`].
    pub fn new(graph: GrothendieckGraph, objects: Vec<O>, arrows: Vec<A>) -> Result<Self> {
        if objects.len() != graph.vertices.len() || arrows.len() != graph.edge_count() {
            return Err(Error::Graph("functor data does not match the graph".into()));
        }
        Ok(GraphFunctor { graph, objects, arrows })
    }

    pub fn graph(&self) -> &GrothendieckGraph {
        &self.graph
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn object(&self, v: usize) -> &O {
        &self.objects[v]
    }

    pub fn arrows(&self) -> &[A] {
        &self.arrows
    }

    pub fn arrow(&self, v: usize, g: usize) -> &A {
        &self.arrows[self.graph.edge_index(v, g)]
    }

    /// `P(v0, g0 g1, v2) = P(v0, g0, v1) ∘ P(v1, g1, v2)` whenever `g0 g1` is
    /// a color, and identity loops go to identities.
    pub fn check_functoriality(&self, table: &MonoidTable) -> Result<()> {
        let g = &self.graph;
        if let Some(id) = table.identity() {
            if let Some(v) = (0..g.vertices.len()).find(|&v| !self.arrow(v, id).is_identity()) {
                return Err(Error::Graph(format!("identity loop at {} is not sent to an identity", g.vertices[v])));
            }
        }
        for v0 in 0..g.vertices.len() {
            for c0 in 0..g.colors.len() {
                let v1 = g.next(v0, c0);
                for c1 in 0..g.colors.len() {
                    let Some(c) = table.product(c0, c1) else { continue };
                    let composite = self.arrow(v0, c0).compose(self.arrow(v1, c1))?;
                    if composite != *self.arrow(v0, c) {
                        return Err(Error::Graph(format!(
                            "functoriality fails for {} {} {} at {}",
                            g.colors[c0], g.colors[c1], g.colors[c], g.vertices[v0]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `P ∘ (alpha, T)` on `source`, for a morphism `source → self.graph`.
    pub fn compose_with(&self, source: &GrothendieckGraph, alpha: &[usize], t: &[usize]) -> Result<Self> {
        validate_morphism(source, &self.graph, alpha, t)?;
        let objects = alpha.iter().map(|&a| self.objects[a].clone()).collect();
        let arrows = source.edges().into_iter().map(|(v, c, _)| self.arrow(alpha[v], t[c]).clone()).collect();
        Ok(GraphFunctor { graph: source.clone(), objects, arrows })
    }

    /// `eta_v : P(v) → Q(v)` with `eta_{v0} ∘ P(e) = Q(e) ∘ eta_{v1}` for every
    /// edge `e = (v0, g, v1)`.
    pub fn check_natural(&self, other: &GraphFunctor<O, A>, eta: &[A]) -> Result<()> {
        if self.graph != other.graph || eta.len() != self.graph.vertices.len() {
            return Err(Error::Graph("natural transformation between different graphs".into()));
        }
        for (v0, c, v1) in self.graph.edges() {
            let lhs = eta[v0].compose(self.arrow(v0, c))?;
            let rhs = other.arrow(v0, c).compose(&eta[v1])?;
            if lhs != rhs {
                return Err(Error::Graph(format!(
                    "square at ({}, {}, {}) does not commute",
                    self.graph.vertices[v0], self.graph.colors[c], self.graph.vertices[v1]
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::Fp;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fixture_b_graph() {
        let inc = fixtures::fixture_b();
        let g = build_graph(&inc);
        assert_eq!(g.vertices().len(), 3);
        assert_eq!(g.colors(), strings(&["id", "g1", "g2", "g3"]));
        assert_eq!(g.edge_count(), 12);
        let edges = g.named_edges();
        assert!(edges.contains(&("phi1".into(), "g3".into(), "phi2".into())));
        assert!(validate_graph(g.vertices(), g.colors(), &edges).is_ok());
    }

    #[test]
    fn removing_an_edge_breaks_the_graph() {
        let g = build_graph(&fixtures::fixture_b());
        let mut edges = g.named_edges();
        edges.remove(5);
        assert!(validate_graph(g.vertices(), g.colors(), &edges).is_err());
    }

    #[test]
    fn empty_color_set() {
        let inc = Incarnation::bare(fixtures::fixture_b_dataset());
        let g = build_graph(&inc);
        assert_eq!(g.edge_count(), 0);
        assert!(validate_graph(g.vertices(), g.colors(), &[]).is_ok());
        assert!(is_monoid_compatible(&g, &MonoidTable::from_incarnation(&inc)).is_err());
    }

    #[test]
    fn identity_morphism() {
        let g = build_graph(&fixtures::fixture_b());
        assert!(validate_morphism(&g, &g, &[0, 1, 2], &[0, 1, 2, 3]).is_ok());
        assert!(validate_morphism(&g, &g, &[2, 1, 0], &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn fixture_b_category() {
        let inc = fixtures::fixture_b();
        let table = MonoidTable::from_incarnation(&inc);
        let cat = GrCategory::new(build_graph(&inc), table.clone()).unwrap();
        let (phi1, phi2) = (0, 1);
        let (g1, g3) = (1, 3);
        let composite = cat.compose((phi1, g1), (phi1, g3)).unwrap();
        assert_eq!(composite, (phi1, table.product(g1, g3).unwrap()));
        assert_eq!(cat.target(composite), phi2);
        // without the identity among the colors the graph is not compatible
        let no_id = Incarnation::new(fixtures::fixture_b_dataset(), fixtures::fixture_b_ops()).unwrap();
        assert!(is_monoid_compatible(&build_graph(&no_id), &MonoidTable::from_incarnation(&no_id)).is_err());
    }

    #[test]
    fn sup_distance_is_compatible() {
        let inc = fixtures::fixture_b();
        let g = build_graph(&inc);
        let n = inc.dataset().len();
        let d = Pseudometric::from_rows(
            (0..n).map(|i| (0..n).map(|j| inc.dataset().sup_distance(i, j)).collect()).collect(),
        );
        assert!(validate_pseudometric(&g, &d).is_ok());
        assert!(validate_pseudometric(&g, &Pseudometric::zero(n)).is_ok());
    }

    fn matrix_functor() -> (GraphFunctor<usize, FpMatrix>, MonoidTable) {
        // a one-dimensional representation of B: g acts by 0 unless it is the identity
        let inc = fixtures::fixture_b();
        let f = Fp::new(3).unwrap();
        let g = build_graph(&inc);
        let arrows = g
            .edges()
            .into_iter()
            .map(|(_, c, _)| if c == 0 { FpMatrix::identity(f, 1) } else { FpMatrix::zeros(f, 1, 1) })
            .collect();
        (GraphFunctor::new(g, vec![1; 3], arrows).unwrap(), MonoidTable::from_incarnation(&inc))
    }

    #[test]
    fn matrix_payload_functoriality() {
        let (p, table) = matrix_functor();
        assert!(p.check_functoriality(&table).is_ok());
        let mut broken = p.clone();
        let e = broken.graph.edge_index(0, 0);
        broken.arrows[e] = FpMatrix::zeros(Fp::new(3).unwrap(), 1, 1);
        assert!(broken.check_functoriality(&table).is_err());
    }

    #[test]
    fn composing_with_identity_is_neutral() {
        let (p, _) = matrix_functor();
        let q = p.compose_with(p.graph(), &[0, 1, 2], &[0, 1, 2, 3]).unwrap();
        assert_eq!(p, q);
        let eta = vec![FpMatrix::identity(Fp::new(3).unwrap(), 1); 3];
        assert!(p.check_natural(&q, &eta).is_ok());
    }
}
