//! Multigraphs, spanning data, graph-Coxeter presentations and the bundled torus data.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::report::Report;
use crate::word::{GeneratorSymbol, SymbolSet, Word};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge `{0}` has an endpoint out of range")]
    VertexOutOfRange(String),
    #[error("edge `{0}` is a loop")]
    Loop(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid spanning data: {0}")]
    Spanning(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: GeneratorSymbol,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.u, self.v]
    }

    fn shared(&self, o: &Edge) -> usize {
        self.endpoints().iter().filter(|x| o.touches(**x)).count()
    }
}

/// Undirected multigraph on vertices `1..=vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut ids = SymbolSet::new();
        for e in &edges {
            if e.u == 0 || e.v == 0 || e.u > vertex_count || e.v > vertex_count {
                return Err(GraphError::VertexOutOfRange(e.id.to_string()));
            }
            if e.u == e.v {
                return Err(GraphError::Loop(e.id.to_string()));
            }
            if !ids.insert(e.id.clone()) {
                return Err(GraphError::DuplicateEdge(e.id.to_string()));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    /// Builds a graph from `(id, u, v)` triples.
    pub fn from_triples(n: usize, triples: &[(&str, usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(triples.len());
        for (id, u, v) in triples {
            let id = GeneratorSymbol::parse(id).map_err(|e| GraphError::Parse { line: 0, msg: e.to_string() })?;
            edges.push(Edge { id, u: *u, v: *v });
        }
        Self::new(n, edges)
    }

    /// Path graph with vertices `1..=n` and edges named `e1..e(n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n)
            .map(|i| Edge { id: GeneratorSymbol::new(&format!("e{i}"), false).expect("valid name"), u: i, v: i + 1 })
            .collect();
        Self { vertex_count: n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: &GeneratorSymbol) -> Option<&Edge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(x)).count()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (1..=self.vertex_count).all(|x| self.degree(x) == k)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count + 1];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count + 1];
        let mut count = 0;
        for s in 1..=self.vertex_count {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        q.push_back(y);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }

    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut color = vec![-1i8; self.vertex_count + 1];
        for s in 1..=self.vertex_count {
            if color[s] >= 0 {
                continue;
            }
            color[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if color[y] < 0 {
                        color[y] = 1 - color[x];
                        q.push_back(y);
                    } else if color[y] == color[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of other edges sharing at least one vertex with `e`.
    pub fn edge_adjacency_degree(&self, e: &Edge) -> usize {
        self.edges.iter().filter(|o| o.id != e.id && o.shared(e) > 0).count()
    }

    /// Edges with the same endpoints as `e`, excluding `e`.
    pub fn parallels(&self, e: &Edge) -> Vec<&Edge> {
        self.edges.iter().filter(|o| o.id != e.id && o.shared(e) == 2).collect()
    }

    /// Edge ids of a breadth-first spanning forest, rooted at the smallest vertex.
    pub fn bfs_tree(&self) -> BTreeSet<GeneratorSymbol> {
        let mut seen = vec![false; self.vertex_count + 1];
        let mut tree = BTreeSet::new();
        for s in 1..=self.vertex_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for e in self.edges.iter().filter(|e| e.touches(x)) {
                    let y = e.other(x);
                    if !seen[y] {
                        seen[y] = true;
                        tree.insert(e.id.clone());
                        q.push_back(y);
                    }
                }
            }
        }
        tree
    }

    /// One cycle (as edge ids) per non-tree edge: the tree path between its endpoints, then the edge.
    pub fn fundamental_cycles(&self, tree: &BTreeSet<GeneratorSymbol>) -> Vec<Vec<GeneratorSymbol>> {
        let tree_edges: Vec<&Edge> = self.edges.iter().filter(|e| tree.contains(&e.id)).collect();
        self.edges
            .iter()
            .filter(|e| !tree.contains(&e.id))
            .filter_map(|e| {
                let mut path = tree_path(self.vertex_count, &tree_edges, e.u, e.v)?;
                path.push(e.id.clone());
                Some(path)
            })
            .collect()
    }
}

fn tree_path(n: usize, tree: &[&Edge], from: usize, to: usize) -> Option<Vec<GeneratorSymbol>> {
    let mut prev: Vec<Option<(usize, &GeneratorSymbol)>> = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(x) = q.pop_front() {
        if x == to {
            break;
        }
        for e in tree.iter().filter(|e| e.touches(x)) {
            let y = e.other(x);
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, &e.id));
                q.push_back(y);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut out = Vec::new();
    let mut cur = to;
    while let Some((p, id)) = prev[cur] {
        out.push(id.clone());
        cur = p;
    }
    out.reverse();
    Some(out)
}

/// `E - V + 1` for a connected graph.
pub fn cycle_rank(g: &MultiGraph) -> Result<usize, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(g.edges.len() + 1 - g.vertex_count)
}

/// A spanning tree and the oriented complementary edges.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpanningData {
    pub tree_edges: BTreeSet<GeneratorSymbol>,
    /// `(edge, alpha, beta)`, oriented alpha to beta.
    pub cycle_edges: Vec<(GeneratorSymbol, usize, usize)>,
}

impl SpanningData {
    pub fn orientation(&self, id: &GeneratorSymbol) -> Option<(usize, usize)> {
        self.cycle_edges.iter().find(|(e, _, _)| e == id).map(|(_, a, b)| (*a, *b))
    }

    pub fn cycle_symbols(&self) -> Vec<GeneratorSymbol> {
        self.cycle_edges.iter().map(|(e, _, _)| e.clone()).collect()
    }

    /// Checks that the tree spans `g`, the cycle edges are its complement, and orientations match endpoints.
    pub fn validate(&self, g: &MultiGraph) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::Spanning(m));
        let tree: Vec<&Edge> = g.edges.iter().filter(|e| self.tree_edges.contains(&e.id)).collect();
        if tree.len() != self.tree_edges.len() {
            return bad("tree names an unknown edge".into());
        }
        if tree.len() + 1 != g.vertex_count {
            return bad(format!("tree has {} edges, expected {}", tree.len(), g.vertex_count - 1));
        }
        let sub = MultiGraph { vertex_count: g.vertex_count, edges: tree.into_iter().cloned().collect() };
        if !sub.is_connected() {
            return bad("tree edges do not connect all vertices".into());
        }
        let complement: BTreeSet<&GeneratorSymbol> =
            g.edges.iter().map(|e| &e.id).filter(|id| !self.tree_edges.contains(*id)).collect();
        let cycles: BTreeSet<&GeneratorSymbol> = self.cycle_edges.iter().map(|(e, _, _)| e).collect();
        if complement != cycles || cycles.len() != self.cycle_edges.len() {
            return bad("cycle edges are not the complement of the tree".into());
        }
        for (id, a, b) in &self.cycle_edges {
            let e = g.edge(id).expect("checked above");
            if !(e.touches(*a) && e.touches(*b) && a != b) {
                return bad(format!("orientation of `{id}` does not match its endpoints"));
            }
        }
        Ok(())
    }
}

/// Contents of a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: MultiGraph,
    pub spanning: Option<SpanningData>,
}

impl GraphFile {
    /// Parses `vertices: n` and `edge: id u v [tree | cycle a b]` lines.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        let mut spanning = SpanningData::default();
        let mut annotated = 0usize;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let perr = |msg: String| GraphError::Parse { line, msg };
            let (key, rest) =
                content.split_once(':').ok_or_else(|| perr(format!("expected `key: value`, got `{content}`")))?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let num = |t: &str| t.parse::<usize>().map_err(|_| perr(format!("bad vertex `{t}`")));
            match key.trim() {
                "vertices" => {
                    if toks.len() != 1 {
                        return Err(perr("`vertices:` takes one integer".into()));
                    }
                    n = Some(num(toks[0])?);
                }
                "edge" => {
                    if toks.len() < 3 {
                        return Err(perr("`edge:` needs an id and two endpoints".into()));
                    }
                    let id = GeneratorSymbol::parse(toks[0]).map_err(|e| perr(e.to_string()))?;
                    let (u, v) = (num(toks[1])?, num(toks[2])?);
                    match &toks[3..] {
                        [] => {}
                        ["tree"] => {
                            spanning.tree_edges.insert(id.clone());
                            annotated += 1;
                        }
                        ["cycle", a, b] => {
                            spanning.cycle_edges.push((id.clone(), num(a)?, num(b)?));
                            annotated += 1;
                        }
                        _ => return Err(perr("expected `tree` or `cycle <alpha> <beta>`".into())),
                    }
                    edges.push(Edge { id, u, v });
                }
                other => return Err(perr(format!("unknown key `{other}`"))),
            }
        }
        let n = n.ok_or(GraphError::Parse { line: 0, msg: "missing `vertices:`".into() })?;
        let graph = MultiGraph::new(n, edges)?;
        let spanning = match annotated {
            0 => None,
            k if k == graph.edges.len() => Some(spanning),
            _ => return Err(GraphError::Spanning("only some edges carry tree/cycle annotations".into())),
        };
        Ok(Self { graph, spanning })
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("vertices: {}\n", self.graph.vertex_count);
        for e in &self.graph.edges {
            out.push_str(&format!("edge: {} {} {}", e.id, e.u, e.v));
            if let Some(s) = &self.spanning {
                if s.tree_edges.contains(&e.id) {
                    out.push_str(" tree");
                } else if let Some((a, b)) = s.orientation(&e.id) {
                    out.push_str(&format!(" cycle {a} {b}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GraphFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Relator families of the graph-Coxeter presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoxeterRelators {
    pub r1: Vec<Word>,
    pub r2: Vec<Word>,
    pub r3: Vec<Word>,
    pub r4: Vec<Word>,
    pub r5: Vec<Word>,
    pub commuting: Vec<(GeneratorSymbol, GeneratorSymbol)>,
}

impl CoxeterRelators {
    pub fn all(&self) -> impl Iterator<Item = &Word> {
        self.r1.iter().chain(&self.r2).chain(&self.r3).chain(&self.r4).chain(&self.r5)
    }
}

fn g(e: &Edge) -> Word {
    Word::generator(&e.id)
}

/// Conjugate `v u v` of involutions, written without collapsing.
fn sandwich(v: &Edge, u: &Edge) -> Word {
    Word::from_letters([v.id.letter(1), u.id.letter(1), v.id.letter(1)])
}

/// Emits R1 to R5 for `g`; parallel pairs get neither R2 nor R3.
pub fn coxeter_relators(graph: &MultiGraph) -> CoxeterRelators {
    let es = &graph.edges;
    let mut out = CoxeterRelators::default();
    for e in es {
        out.r1.push(Word::from_letters([e.id.letter(1), e.id.letter(1)]));
    }
    for (i, a) in es.iter().enumerate() {
        for b in &es[i + 1..] {
            match a.shared(b) {
                0 => {
                    out.r2.push(Word::commutator(&g(a), &g(b)));
                    out.commuting.push((a.id.clone(), b.id.clone()));
                }
                1 => out.r3.push(g(a).multiply(&g(b)).power(3)),
                _ => {}
            }
        }
    }
    for x in 1..=graph.vertex_count {
        let at: Vec<&Edge> = es.iter().filter(|e| e.touches(x)).collect();
        for u in &at {
            for (j, v) in at.iter().enumerate() {
                for w in &at[j + 1..] {
                    if v.id == u.id || w.id == u.id {
                        continue;
                    }
                    let cover: BTreeSet<usize> = [u, v, w].iter().flat_map(|e| e.endpoints()).collect();
                    if cover.len() >= 4 {
                        let vwv = Word::from_letters([v.id.letter(1), w.id.letter(1), v.id.letter(1)]);
                        out.r4.push(Word::commutator(&g(u), &vwv));
                    }
                }
            }
        }
    }
    for u in es {
        for up in graph.parallels(u) {
            let (a, b) = (u.u, u.v);
            for v in es.iter().filter(|e| e.touches(a) && !e.touches(b)) {
                for w in es.iter().filter(|e| e.touches(b) && !e.touches(a)) {
                    if v.other(a) != w.other(b) {
                        out.r5.push(Word::commutator(&sandwich(v, u), &sandwich(w, up)));
                    }
                }
            }
        }
    }
    out
}

/// Presentation with every edge an involution, R2 as cached commuting pairs, and R3 to R5 as relators.
pub fn coxeter_presentation(graph: &MultiGraph) -> Presentation {
    let r = coxeter_relators(graph);
    let alphabet: Vec<GeneratorSymbol> = graph.edges.iter().map(|e| e.id.clone()).collect();
    let invol: SymbolSet = alphabet.iter().cloned().collect();
    let rels = r.r3.iter().chain(&r.r4).chain(&r.r5).cloned().collect();
    Presentation::new(alphabet, rels, invol, r.commuting).expect("edge symbols are the alphabet")
}

/// Counts of generator pairs expected to commute and to have product of order 3.
pub fn braid_expectations(graph: &MultiGraph) -> (usize, usize) {
    let es = &graph.edges;
    let (mut comm, mut order3) = (0, 0);
    for (i, a) in es.iter().enumerate() {
        for b in &es[i + 1..] {
            match a.shared(b) {
                0 => comm += 1,
                1 => order3 += 1,
                _ => {}
            }
        }
    }
    (comm, order3)
}

/// Parameters `(n, k, lambda, mu)` if the underlying simple graph is strongly regular.
pub fn srg_parameters(graph: &MultiGraph) -> Option<(usize, usize, usize, usize)> {
    let n = graph.vertex_count;
    let mut adj = vec![BTreeSet::new(); n + 1];
    for e in &graph.edges {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    let k = adj[1].len();
    let (mut lambda, mut mu) = (None, None);
    for x in 1..=n {
        if adj[x].len() != k {
            return None;
        }
        for y in x + 1..=n {
            let common = adj[x].intersection(&adj[y]).count();
            let slot = if adj[x].contains(&y) { &mut lambda } else { &mut mu };
            match slot {
                None => *slot = Some(common),
                Some(c) if *c != common => return None,
                _ => {}
            }
        }
    }
    Some((n, k, lambda.unwrap_or(0), mu.unwrap_or(0)))
}

/// The bundled degeneration data: T with spanning data, the doubled graph, and the point graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGraphData {
    pub t: MultiGraph,
    pub spanning: SpanningData,
    pub t_hat: MultiGraph,
    /// Vertices are intersection points; edge `j` joins the two points on line `j`.
    pub points: MultiGraph,
}

impl TorusGraphData {
    pub fn parse(t: &str, t_hat: &str, points: &str) -> Result<Self, GraphError> {
        let tf = GraphFile::parse(t)?;
        let spanning = tf.spanning.ok_or(GraphError::Spanning("T carries no tree/cycle data".into()))?;
        Ok(Self {
            t: tf.graph,
            spanning,
            t_hat: GraphFile::parse(t_hat)?.graph,
            points: GraphFile::parse(points)?.graph,
        })
    }

    pub fn bundled() -> Self {
        Self::parse(crate::assets::TORUS, crate::assets::TORUS_HAT, crate::assets::POINTS)
            .expect("bundled torus data parses")
    }

    /// The edge of T carrying `s`; primed symbols use the unprimed edge.
    pub fn edge_for(&self, s: &GeneratorSymbol) -> Option<&Edge> {
        self.t.edge(&s.unprimed())
    }
}

fn sym(s: &str) -> GeneratorSymbol {
    GeneratorSymbol::parse(s).expect("static symbol")
}

fn meet_at(g: &MultiGraph, ids: &[&str], x: usize) -> bool {
    ids.iter().all(|id| g.edge(&sym(id)).is_some_and(|e| e.touches(x)))
}

/// Checks every structural invariant of the bundled data and the point-graph claim.
pub fn validate_torus_data(d: &TorusGraphData) -> Report {
    let mut r = Report::new("torus data");
    let t = &d.t;
    r.check_eq("T vertices", 18, t.vertex_count());
    r.check_eq("T edges", 27, t.edges().len());
    r.check("T 3-regular", t.is_regular(3), "degree 3 at every vertex", degree_summary(t));
    r.check("T connected", t.is_connected(), "1 component", format!("{} components", t.component_count()));
    r.check("T bipartite", t.is_bipartite(), true, t.is_bipartite());
    let rank = cycle_rank(t).map(|k| k.to_string()).unwrap_or_else(|e| e.to_string());
    r.check_eq("T cycle rank", "10".to_string(), rank);
    let adj: BTreeSet<usize> = t.edges().iter().map(|e| t.edge_adjacency_degree(e)).collect();
    r.check("T edge adjacency 4", adj == BTreeSet::from([4]), "{4}", format!("{adj:?}"));
    let (comm, o3) = braid_expectations(t);
    r.check_eq("T braid counts", "(297, 54)".to_string(), format!("({comm}, {o3})"));

    let h = &d.t_hat;
    r.check_eq("T-hat edges", 54, h.edges().len());
    let doubled = t.edges().iter().all(|e| {
        let twins: Vec<&Edge> = h.edges().iter().filter(|f| f.id.unprimed() == e.id && f.shared(e) == 2).collect();
        twins.len() == 2 && twins.iter().any(|f| f.id.primed())
    });
    r.check("T-hat doubles T", doubled, "each edge j of T appears as j and j'", doubled);
    let (hc, ho) = braid_expectations(h);
    r.check_eq("T-hat braid counts", "(1188, 216)".to_string(), format!("({hc}, {ho})"));
    r.check_eq("T-hat braid total", 1404, hc + ho);

    let span = d.spanning.validate(t);
    r.check(
        "spanning tree",
        span.is_ok(),
        "17 tree edges spanning T, 10 oriented cycle edges",
        span.as_ref().map(|_| "valid".to_string()).unwrap_or_else(|e| e.to_string()),
    );
    let omega: BTreeSet<String> = d.spanning.cycle_symbols().iter().map(|s| s.to_string()).collect();
    let want: BTreeSet<String> =
        ["1", "2", "3", "4", "7", "10", "13", "15", "17", "23"].iter().map(|s| s.to_string()).collect();
    r.check("cycle edge set", omega == want, fmt_set(&want), fmt_set(&omega));

    let e6 = t.edge(&sym("6")).map(|e| e.endpoints());
    r.check("edge 6 joins planes 2 3", matches!(e6, Some([2, 3]) | Some([3, 2])), "{2, 3}", format!("{e6:?}"));
    for (id, a, b) in [("1", 2, 7), ("7", 2, 6)] {
        let o = d.spanning.orientation(&sym(id));
        r.check(&format!("edge {id} oriented {a}->{b}"), o == Some((a, b)), format!("({a}, {b})"), format!("{o:?}"));
    }
    r.check("edges 4 6 8 meet at 3", meet_at(t, &["4", "6", "8"], 3), true, meet_at(t, &["4", "6", "8"], 3));
    r.check("edges 1 6 7 meet at 2", meet_at(t, &["1", "6", "7"], 2), true, meet_at(t, &["1", "6", "7"], 2));

    let dual = dual_triangles(d);
    r.check("planes are point triangles", dual.is_ok(), "every plane's 3 lines form a triangle", dual_msg(&dual));
    let srg = srg_parameters(&d.points);
    r.check(
        "point graph strongly regular (9,6,2,2)",
        srg == Some((9, 6, 2, 2)),
        "(9, 6, 2, 2)",
        srg.map(|p| format!("{p:?}")).unwrap_or_else(|| "not strongly regular".into()),
    );
    r
}

fn degree_summary(g: &MultiGraph) -> String {
    let mut hist = BTreeMap::new();
    for x in 1..=g.vertex_count() {
        *hist.entry(g.degree(x)).or_insert(0usize) += 1;
    }
    let parts: Vec<String> = hist.iter().map(|(d, c)| format!("{c} of degree {d}")).collect();
    parts.join(", ")
}

fn fmt_set(s: &BTreeSet<String>) -> String {
    let mut v: Vec<&String> = s.iter().collect();
    v.sort_by_key(|x| x.parse::<u32>().unwrap_or(u32::MAX));
    format!("{{{}}}", v.iter().map(|x| x.as_str()).collect::<Vec<_>>().join(", "))
}

fn dual_msg(r: &Result<(), String>) -> String {
    match r {
        Ok(()) => "all 18".into(),
        Err(e) => e.clone(),
    }
}

/// Each vertex of T is a plane; its three lines must pairwise meet in three distinct points.
fn dual_triangles(d: &TorusGraphData) -> Result<(), String> {
    for x in 1..=d.t.vertex_count() {
        let lines: Vec<&Edge> = d.t.edges().iter().filter(|e| e.touches(x)).collect();
        let pts: Option<Vec<[usize; 2]>> = lines.iter().map(|l| d.points.edge(&l.id).map(|p| p.endpoints())).collect();
        let pts = pts.ok_or(format!("plane {x}: a line is missing from the point graph"))?;
        let all: BTreeSet<usize> = pts.iter().flatten().copied().collect();
        let pairwise = (0..pts.len())
            .all(|i| (i + 1..pts.len()).all(|j| pts[i].iter().filter(|p| pts[j].contains(p)).count() == 1));
        if pts.len() != 3 || all.len() != 3 || !pairwise {
            return Err(format!("plane {x}: lines do not form a triangle"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{coset_enumerate, CosetResult};

    fn triangle() -> MultiGraph {
        MultiGraph::from_triples(3, &[("a", 1, 2), ("b", 2, 3), ("c", 1, 3)]).unwrap()
    }

    #[test]
    fn cycle_rank_examples() {
        assert_eq!(cycle_rank(&TorusGraphData::bundled().t), Ok(10));
        assert_eq!(cycle_rank(&MultiGraph::path(5)), Ok(0));
        assert_eq!(cycle_rank(&triangle()), Ok(1));
        let split = MultiGraph::from_triples(4, &[("a", 1, 2), ("b", 3, 4)]).unwrap();
        assert_eq!(cycle_rank(&split), Err(GraphError::Disconnected));
    }

    #[test]
    fn coxeter_small_cases() {
        let p = coxeter_presentation(&MultiGraph::path(3));
        assert_eq!(coset_enumerate(&p, &[], 1000), CosetResult::Index(6));
        let two = MultiGraph::from_triples(4, &[("u", 1, 2), ("v", 3, 4)]).unwrap();
        let r = coxeter_relators(&two);
        assert_eq!((r.r1.len(), r.r2.len(), r.r3.len()), (2, 1, 0));
        assert_eq!(coset_enumerate(&coxeter_presentation(&two), &[], 100), CosetResult::Index(4));
        assert_eq!(braid_expectations(&two), (1, 0));
    }

    #[test]
    fn torus_counts() {
        let d = TorusGraphData::bundled();
        let r = coxeter_relators(&d.t);
        assert_eq!((r.r1.len(), r.r2.len(), r.r3.len(), r.r4.len(), r.r5.len()), (27, 297, 54, 54, 0));
        assert_eq!(braid_expectations(&d.t_hat), (1188, 216));
        assert_eq!(coxeter_presentation(&d.t).alphabet().len(), 27);
    }

    #[test]
    fn multigraph_families() {
        let g = MultiGraph::from_triples(4, &[("u", 1, 2), ("u'", 1, 2), ("v", 1, 3), ("w", 2, 4)]).unwrap();
        let r = coxeter_relators(&g);
        assert_eq!(r.r2.len(), 1);
        assert_eq!(r.r3.len(), 4);
        assert_eq!(r.r5.len(), 2);
        assert!(r.r4.is_empty());
    }

    #[test]
    fn graph_file_round_trip() {
        let d = TorusGraphData::bundled();
        let f = GraphFile::parse(crate::assets::TORUS).unwrap();
        let again = GraphFile::parse(&f.serialize()).unwrap();
        assert_eq!(f, again);
        assert_eq!(again.graph, d.t);
        assert!(GraphFile::parse("vertices: 2\nedge: a 1 3\n").is_err());
        assert!(GraphFile::parse("vertices: 2\nedge: a 1 2 tree\nedge: b 1 2\n").is_err());
    }

    #[test]
    fn bundled_data_validates_except_srg() {
        let r = validate_torus_data(&TorusGraphData::bundled());
        let failed: Vec<&str> =
            r.checks.iter().filter(|c| c.status == crate::report::Status::Fail).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["point graph strongly regular (9,6,2,2)"]);
        assert_eq!(srg_parameters(&TorusGraphData::bundled().points), Some((9, 6, 3, 6)));
    }

    #[test]
    fn negative_controls() {
        let mut d = TorusGraphData::bundled();
        let edges: Vec<Edge> =
            d.t.edges().iter().map(|e| if e.id == sym("5") { Edge { v: 2, ..e.clone() } } else { e.clone() }).collect();
        d.t = MultiGraph::new(18, edges).unwrap();
        let r = validate_torus_data(&d);
        assert_eq!(r.find("T 3-regular").unwrap().status, crate::report::Status::Fail);

        let mut d = TorusGraphData::bundled();
        d.spanning.tree_edges.remove(&sym("5"));
        let (a, b) = (d.t.edge(&sym("5")).unwrap().u, d.t.edge(&sym("5")).unwrap().v);
        d.spanning.cycle_edges.push((sym("5"), a, b));
        let r = validate_torus_data(&d);
        assert_eq!(r.find("spanning tree").unwrap().status, crate::report::Status::Fail);
    }
}
