//! Multicolour Clique to List Hamilton Path.
//!
//! Conventions: classes `i` are 1-based, class members `V_i[r]` are
//! 1-based, offsets along a path `P_i[l]` are 0-based, and positions on a
//! Hamilton path are 1-based.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::decomp::PathDecomposition;
use crate::graph::{Color, ElementId, Graph, GraphError, ListAssignment};
use crate::listcolor::BudgetExhausted;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    TooFewClasses(usize),
    UnassignedVertex(usize),
    DuplicateVertex(usize),
    VertexOutOfRange(usize),
    IntraClassEdge(usize, usize),
    /// A size bound the construction relies on does not hold.
    Bound(&'static str),
    CliqueSize { expected: usize, found: usize },
    WrongClass { class: usize, vertex: usize },
    NotAdjacent(usize, usize),
    Connector { class: usize, alpha: i64 },
    InvalidPath(LhpViolation),
    Graph(GraphError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::TooFewClasses(k) => write!(f, "need at least 3 classes, got {k}"),
            ReductionError::UnassignedVertex(v) => write!(f, "vertex {v} is in no class"),
            ReductionError::DuplicateVertex(v) => write!(f, "vertex {v} is in more than one class"),
            ReductionError::VertexOutOfRange(v) => write!(f, "class member {v} is not a vertex"),
            ReductionError::IntraClassEdge(u, v) => write!(f, "edge {u}-{v} lies inside a class"),
            ReductionError::Bound(b) => write!(f, "construction bound violated: {b}"),
            ReductionError::CliqueSize { expected, found } => {
                write!(f, "clique has {found} vertices, expected {expected}")
            }
            ReductionError::WrongClass { class, vertex } => {
                write!(f, "vertex {vertex} is not in class {class}")
            }
            ReductionError::NotAdjacent(u, v) => write!(f, "{u} and {v} are not adjacent"),
            ReductionError::Connector { class, alpha } => {
                write!(f, "connector split {alpha} out of range for class {class}")
            }
            ReductionError::InvalidPath(v) => write!(f, "invalid path: {v}"),
            ReductionError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ReductionError {}

impl From<GraphError> for ReductionError {
    fn from(e: GraphError) -> Self {
        ReductionError::Graph(e)
    }
}

/// A graph with a proper colouring given as vertex classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccInstance {
    pub graph: Graph,
    pub classes: Vec<Vec<usize>>,
}

impl MccInstance {
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// Class (0-based) of every vertex.
    pub fn class_map(&self) -> Result<Vec<usize>, ReductionError> {
        let n = self.graph.n();
        let mut class = vec![usize::MAX; n];
        for (i, members) in self.classes.iter().enumerate() {
            for &v in members {
                if v >= n {
                    return Err(ReductionError::VertexOutOfRange(v));
                }
                if class[v] != usize::MAX {
                    return Err(ReductionError::DuplicateVertex(v));
                }
                class[v] = i;
            }
        }
        if let Some(v) = class.iter().position(|&c| c == usize::MAX) {
            return Err(ReductionError::UnassignedVertex(v));
        }
        for &(u, v) in self.graph.edges() {
            if class[u] == class[v] {
                return Err(ReductionError::IntraClassEdge(u, v));
            }
        }
        Ok(class)
    }
}

/// An instance with `k ≥ 3` classes of equal size `p`, exactly `q` edges
/// between every pair of classes and `p(k − 2) ≥ 2`.
///
/// Vertex `V_i[r]` has id `(i − 1)p + (r − 1)`. Edges are stored in the
/// order `e_0, …, e_{m−1}`, sorted by class pair and then by the indices of
/// the endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedMcc {
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub graph: Graph,
    /// Original vertex of each normalized vertex; `None` for padding.
    pub origin: Vec<Option<usize>>,
    /// Normalized id of each original vertex.
    pub label: Vec<usize>,
}

impl NormalizedMcc {
    pub fn n(&self) -> usize {
        self.k * self.p
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    /// `V_i[r]`.
    pub fn vertex(&self, i: usize, r: usize) -> usize {
        (i - 1) * self.p + (r - 1)
    }

    /// `(i, r)` with `v = V_i[r]`.
    pub fn class_index(&self, v: usize) -> (usize, usize) {
        (v / self.p + 1, v % self.p + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        (1..=self.k).map(|i| (1..=self.p).map(|r| self.vertex(i, r)).collect()).collect()
    }
}

/// Pads `m` to equal class sizes and equal pair counts. Missing pair edges
/// are added between fresh vertices, one in each class of the pair.
pub fn normalize_mcc(m: &MccInstance) -> Result<NormalizedMcc, ReductionError> {
    let k = m.k();
    if k < 3 {
        return Err(ReductionError::TooFewClasses(k));
    }
    let class = m.class_map()?;
    let mut members: Vec<Vec<usize>> = m.classes.clone();
    let mut count = vec![vec![0usize; k]; k];
    for &(u, v) in m.graph.edges() {
        let (a, b) = (class[u].min(class[v]), class[u].max(class[v]));
        count[a][b] += 1;
    }
    let q = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).map(|(a, b)| count[a][b]).max().unwrap();
    // Working ids: original vertices keep theirs, fresh ones follow.
    let mut next = m.graph.n();
    let mut edges: Vec<(usize, usize)> = m.graph.edges().to_vec();
    for a in 0..k {
        for b in a + 1..k {
            for _ in count[a][b]..q {
                members[a].push(next);
                members[b].push(next + 1);
                edges.push((next, next + 1));
                next += 2;
            }
        }
    }
    let mut p = members.iter().map(Vec::len).max().unwrap().max(1);
    while p * (k - 2) < 2 {
        p += 1;
    }
    let mut label = vec![0; next];
    let mut origin = vec![None; k * p];
    for (i, list) in members.iter().enumerate() {
        for (r, &v) in list.iter().enumerate() {
            label[v] = i * p + r;
            if v < m.graph.n() {
                origin[i * p + r] = Some(v);
            }
        }
    }
    let mut mapped: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (label[u], label[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    // (i, j, r, s) order; ids are i·p + r, so sort on the split key.
    mapped.sort_unstable_by_key(|&(a, b)| (a / p, b / p, a % p, b % p));
    let graph = Graph::new(k * p, &mapped)?;
    label.truncate(m.graph.n());
    Ok(NormalizedMcc { k, p, q, graph, origin, label })
}

/// What a vertex of `H` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// `P_class[offset]`.
    Path { class: usize, offset: usize },
    /// `Q_class[index]`, 1-based.
    Connector { class: usize, index: usize },
}

/// The edge gadget of `e_edge = V_low[r] V_high[s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub edge: usize,
    pub low: usize,
    pub high: usize,
    pub r: usize,
    pub s: usize,
    pub offset: usize,
    /// `P_low[l..l+3]` followed by `P_high[l..l+3]`.
    pub vertices: [usize; 8],
    /// Edges of `H`: `P_low[l]P_high[l+1]`, `P_high[l]P_low[l+1]`,
    /// `P_low[l+1]P_high[l+3]`, `P_low[l+2]P_high[l+2]`.
    pub edges: [usize; 4],
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub mcc: NormalizedMcc,
    pub h: Graph,
    /// Permitted positions of the path vertices. Connectors have no list.
    pub lists: ListAssignment,
    pub roles: Vec<Role>,
    pub gadgets: Vec<Gadget>,
    pub pdecomp: PathDecomposition,
}

/// Size parameters shared by the construction and its decomposition.
#[derive(Debug, Clone, Copy)]
struct Dims {
    k: usize,
    n: usize,
}

impl Dims {
    fn path_len(self) -> usize {
        2 * self.n * self.n
    }

    fn connector_len(self) -> usize {
        self.n * self.n * (self.n - 2)
    }

    fn order(self) -> usize {
        self.k * self.n * self.n * self.n
    }

    fn p_vertex(self, i: usize, l: usize) -> usize {
        (i - 1) * self.path_len() + l
    }

    fn q_vertex(self, i: usize, a: usize) -> usize {
        self.k * self.path_len() + (i - 1) * self.connector_len() + (a - 1)
    }

    fn end_vertices(self) -> Vec<usize> {
        (1..=self.k).flat_map(|i| [self.p_vertex(i, 0), self.p_vertex(i, self.path_len() - 1)]).collect()
    }
}

impl ReductionOutput {
    fn dims(&self) -> Dims {
        Dims { k: self.mcc.k, n: self.mcc.n() }
    }

    pub fn k(&self) -> usize {
        self.mcc.k
    }

    /// `|V(N)|`, not `|V(H)|`.
    pub fn n(&self) -> usize {
        self.mcc.n()
    }

    /// `|P_i| = 2n²`.
    pub fn path_len(&self) -> usize {
        self.dims().path_len()
    }

    /// `|Q_i| = n²(n − 2)`.
    pub fn connector_len(&self) -> usize {
        self.dims().connector_len()
    }

    /// `P_i[l]`.
    pub fn p_vertex(&self, i: usize, l: usize) -> usize {
        self.dims().p_vertex(i, l)
    }

    /// `Q_i[a]`.
    pub fn q_vertex(&self, i: usize, a: usize) -> usize {
        self.dims().q_vertex(i, a)
    }

    /// The `2k` path endpoints.
    pub fn end_vertices(&self) -> Vec<usize> {
        self.dims().end_vertices()
    }

    /// Position of `P_i[0]` when it selects `V_i[r]`.
    pub fn selection_position(&self, i: usize, r: usize) -> usize {
        let n = self.n();
        (i - 1) * n * n * n + 2 * r * n * n
    }
}

/// `{(i−1)n³ + 2αn² + j + β : 1 ≤ α ≤ p, |β| ≤ k − 1}`, unclipped.
pub fn internal_list(k: usize, n: usize, p: usize, i: usize, j: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(p * (2 * k - 1));
    for alpha in 1..=p {
        out.extend(window(k, n, i, alpha, j));
    }
    out
}

/// `{(i−1)n³ + 2αn² + j + β : |β| ≤ k − 1}`.
fn window(k: usize, n: usize, i: usize, alpha: usize, j: usize) -> impl Iterator<Item = usize> {
    let centre = (i - 1) * n * n * n + 2 * alpha * n * n + j;
    centre + 1 - k..=centre + k - 1
}

fn to_colors(positions: impl IntoIterator<Item = usize>, limit: usize) -> Vec<Color> {
    positions.into_iter().filter(|&x| x >= 1 && x <= limit).map(|x| x as Color).collect()
}

pub fn build_reduction(mcc: &NormalizedMcc) -> Result<ReductionOutput, ReductionError> {
    let (k, p) = (mcc.k, mcc.p);
    if k < 3 {
        return Err(ReductionError::TooFewClasses(k));
    }
    if p * (k - 2) < 2 {
        return Err(ReductionError::Bound("p(k - 2) >= 2"));
    }
    let d = Dims { k, n: mcc.n() };
    let n = d.n;
    let len = d.path_len();
    let m = mcc.m();
    if 4 * m + 1 > len {
        return Err(ReductionError::Bound("4m - 1 <= 2n^2 - 2"));
    }
    let order = d.order();
    let mut roles = Vec::with_capacity(order);
    for i in 1..=k {
        roles.extend((0..len).map(|offset| Role::Path { class: i, offset }));
    }
    for i in 1..=k {
        roles.extend((1..=d.connector_len()).map(|index| Role::Connector { class: i, index }));
    }

    let mut pairs = Vec::new();
    for i in 1..=k {
        pairs.extend((1..len).map(|l| (d.p_vertex(i, l - 1), d.p_vertex(i, l))));
    }
    let total_q = k * d.connector_len();
    let q0 = d.q_vertex(1, 1);
    pairs.extend((1..total_q).map(|a| (q0 + a - 1, q0 + a)));
    for i in 1..=k {
        for a in 1..=d.connector_len() {
            let qv = d.q_vertex(i, a);
            pairs.push((d.p_vertex(i, 0), qv));
            pairs.push((d.p_vertex(i, len - 1), qv));
        }
    }
    let gadget_start = pairs.len();
    let mut gadgets = Vec::with_capacity(m);
    for (e, &(u, v)) in mcc.graph.edges().iter().enumerate() {
        let (i, r) = mcc.class_index(u);
        let (j, s) = mcc.class_index(v);
        let l = 4 * e;
        let pi = |o: usize| d.p_vertex(i, l + o);
        let pj = |o: usize| d.p_vertex(j, l + o);
        pairs.extend([(pi(0), pj(1)), (pj(0), pi(1)), (pi(1), pj(3)), (pi(2), pj(2))]);
        let base = gadget_start + 4 * e;
        gadgets.push(Gadget {
            edge: e,
            low: i,
            high: j,
            r,
            s,
            offset: l,
            vertices: [pi(0), pi(1), pi(2), pi(3), pj(0), pj(1), pj(2), pj(3)],
            edges: [base, base + 1, base + 2, base + 3],
        });
    }
    let h = Graph::new(order, &pairs)?;

    let n2 = n * n;
    let n3 = n2 * n;
    let mut lists = ListAssignment::new();
    for i in 1..=k {
        let start = (1..=p).map(|a| (i - 1) * n3 + 2 * a * n2);
        // k + 1 − 2i may be negative; add before subtracting.
        let end = (1..=p).map(|a| (i - 1) * n3 + 2 * a * n2 + (len - 1) + k + 1 - 2 * i);
        for (l, positions) in [(0, start.collect::<Vec<_>>()), (len - 1, end.collect())] {
            if positions.iter().any(|&x| x > order) {
                return Err(ReductionError::Bound("endpoint position exceeds k n^3"));
            }
            lists.insert(ElementId::Vertex(d.p_vertex(i, l)), to_colors(positions, order))?;
        }
        for l in 1..len - 1 {
            lists.insert(ElementId::Vertex(d.p_vertex(i, l)), to_colors(internal_list(k, n, p, i, l), order))?;
        }
    }
    for g in &gadgets {
        let l = g.offset;
        let extra = [
            (d.p_vertex(g.low, l + 1), window(k, n, g.high, g.s, l + 1)),
            (d.p_vertex(g.high, l + 1), window(k, n, g.low, g.r, l + 1)),
            (d.p_vertex(g.high, l + 2), window(k, n, g.low, g.r, l + 2)),
        ];
        for (v, positions) in extra {
            let mut all: Vec<Color> = lists.get(ElementId::Vertex(v)).unwrap().to_vec();
            all.extend(to_colors(positions, order));
            lists.insert(ElementId::Vertex(v), all)?;
        }
    }
    let pdecomp = path_decomposition(d);
    Ok(ReductionOutput { mcc: mcc.clone(), h, lists, roles, gadgets, pdecomp })
}

fn path_decomposition(d: Dims) -> PathDecomposition {
    let ends = d.end_vertices();
    let total_q = d.k * d.connector_len();
    let q0 = d.q_vertex(1, 1);
    let mut bags = Vec::with_capacity(total_q + d.path_len() - 5);
    for a in 0..total_q - 1 {
        let mut bag = ends.clone();
        bag.extend([q0 + a, q0 + a + 1]);
        bags.push(bag);
    }
    for o in 0..d.path_len() - 4 {
        let mut bag = ends.clone();
        for j in 1..=d.k {
            bag.extend((1..=3).map(|x| d.p_vertex(j, o + x)));
        }
        bags.push(bag);
    }
    PathDecomposition::path(d.order(), bags)
}

/// Path decomposition of `H` with `|Q| + 2n² − 5` bags of at most `5k`
/// vertices, every bag holding all path endpoints.
pub fn build_path_decomposition(r: &ReductionOutput) -> PathDecomposition {
    path_decomposition(r.dims())
}

/// A Hamilton path through `H` that selects `clique[i − 1]` in class `i`
/// and swaps once in the gadget of each clique edge.
pub fn witness_from_clique(r: &ReductionOutput, clique: &[usize]) -> Result<Vec<usize>, ReductionError> {
    let mcc = &r.mcc;
    let k = mcc.k;
    if clique.len() != k {
        return Err(ReductionError::CliqueSize { expected: k, found: clique.len() });
    }
    let mut sel = vec![0; k + 1];
    for (idx, &v) in clique.iter().enumerate() {
        if v >= mcc.n() || mcc.class_index(v).0 != idx + 1 {
            return Err(ReductionError::WrongClass { class: idx + 1, vertex: v });
        }
        sel[idx + 1] = mcc.class_index(v).1;
    }
    // (class, offset) -> (other class, whether this class is the lower one)
    let mut swaps: BTreeMap<(usize, usize), (usize, bool)> = BTreeMap::new();
    for a in 0..k {
        for b in a + 1..k {
            let e = mcc
                .graph
                .edge_index(clique[a], clique[b])
                .ok_or(ReductionError::NotAdjacent(clique[a], clique[b]))?;
            let l = r.gadgets[e].offset;
            swaps.insert((a + 1, l), (b + 1, true));
            swaps.insert((b + 1, l), (a + 1, false));
        }
    }
    let len = r.path_len();
    let n2 = (r.n() * r.n()) as i64;
    let qlen = r.connector_len();
    let mut path = Vec::with_capacity(r.h.n());
    let mut gained = 0i64;
    for i in 1..=k {
        let alpha = 2 * sel[i] as i64 * n2 - 1 - gained;
        if alpha < 1 || alpha > qlen as i64 - 1 {
            return Err(ReductionError::Connector { class: i, alpha });
        }
        let alpha = alpha as usize;
        path.extend((1..=alpha).map(|a| r.q_vertex(i, a)));
        let mut l = 0;
        while l < len {
            match swaps.get(&(i, l)) {
                Some(&(j, true)) => {
                    path.extend([
                        r.p_vertex(i, l),
                        r.p_vertex(j, l + 1),
                        r.p_vertex(j, l + 2),
                        r.p_vertex(i, l + 2),
                        r.p_vertex(i, l + 3),
                    ]);
                    l += 4;
                }
                Some(&(j, false)) => {
                    path.extend([r.p_vertex(i, l), r.p_vertex(j, l + 1), r.p_vertex(i, l + 3)]);
                    l += 4;
                }
                None => {
                    path.push(r.p_vertex(i, l));
                    l += 1;
                }
            }
        }
        path.extend((alpha + 1..=qlen).map(|a| r.q_vertex(i, a)));
        gained += k as i64 + 1 - 2 * i as i64;
    }
    Ok(path)
}

/// Reads the selected vertex of every class off a valid Hamilton path.
///
/// # Panics
///
/// If two selected vertices are not adjacent in the instance.
pub fn extract_clique(r: &ReductionOutput, path: &[usize]) -> Result<Vec<usize>, ReductionError> {
    validate_lhp(&r.h, &r.lists, path).map_err(ReductionError::InvalidPath)?;
    let mut position = vec![0; r.h.n()];
    for (idx, &v) in path.iter().enumerate() {
        position[v] = idx + 1;
    }
    let n = r.n();
    let clique: Vec<usize> = (1..=r.k())
        .map(|i| {
            let pos = position[r.p_vertex(i, 0)];
            let alpha = (pos - (i - 1) * n * n * n) / (2 * n * n);
            r.mcc.vertex(i, alpha)
        })
        .collect();
    for a in 0..clique.len() {
        for b in a + 1..clique.len() {
            assert!(
                r.mcc.graph.has_edge(clique[a], clique[b]),
                "selected vertices {} and {} are not adjacent",
                clique[a],
                clique[b]
            );
        }
    }
    Ok(clique)
}

/// First defect of a candidate Hamilton path; positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhpViolation {
    OutOfRange { position: usize, vertex: usize },
    Repeated { position: usize, vertex: usize },
    NotAdjacent { position: usize, from: usize, to: usize },
    NotPermitted { position: usize, vertex: usize },
    Missing { vertex: usize },
}

impl fmt::Display for LhpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LhpViolation::OutOfRange { position, vertex } => {
                write!(f, "position {position}: vertex {vertex} does not exist")
            }
            LhpViolation::Repeated { position, vertex } => {
                write!(f, "position {position}: vertex {vertex} already visited")
            }
            LhpViolation::NotAdjacent { position, from, to } => {
                write!(f, "position {position}: {from} and {to} are not adjacent")
            }
            LhpViolation::NotPermitted { position, vertex } => {
                write!(f, "position {position} is not in the list of vertex {vertex}")
            }
            LhpViolation::Missing { vertex } => write!(f, "vertex {vertex} is never visited"),
        }
    }
}

/// Checks that `path` visits every vertex once along edges of `h` and puts
/// each listed vertex at a permitted position.
pub fn validate_lhp(h: &Graph, lists: &ListAssignment, path: &[usize]) -> Result<(), LhpViolation> {
    let mut seen = vec![false; h.n()];
    for (idx, &v) in path.iter().enumerate() {
        let position = idx + 1;
        if v >= h.n() {
            return Err(LhpViolation::OutOfRange { position, vertex: v });
        }
        if seen[v] {
            return Err(LhpViolation::Repeated { position, vertex: v });
        }
        seen[v] = true;
        if idx > 0 && !h.has_edge(path[idx - 1], v) {
            return Err(LhpViolation::NotAdjacent { position, from: path[idx - 1], to: v });
        }
        if let Some(list) = lists.get(ElementId::Vertex(v)) {
            if list.binary_search(&(position as Color)).is_err() {
                return Err(LhpViolation::NotPermitted { position, vertex: v });
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(vertex) => Err(LhpViolation::Missing { vertex }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lhp {
    Path(Vec<usize>),
    Unsat,
}

/// Lexicographically first valid Hamilton path, by backtracking over
/// positions. Vertices without a list may take any position.
pub fn solve_lhp(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<Lhp, BudgetExhausted> {
    let n = g.n();
    if n == 0 {
        return Ok(Lhp::Path(Vec::new()));
    }
    let table: Vec<Option<&[Color]>> = (0..n).map(|v| lists.get(ElementId::Vertex(v))).collect();
    let last: Vec<usize> = table.iter().map(|l| l.map_or(n, |l| *l.last().unwrap() as usize)).collect();
    let mut s = LhpSearch { g, table, last, used: vec![false; n], path: Vec::with_capacity(n), decisions: 0, budget };
    let first: Vec<usize> = (0..n).collect();
    Ok(if s.extend(&first)? { Lhp::Path(s.path) } else { Lhp::Unsat })
}

struct LhpSearch<'a> {
    g: &'a Graph,
    table: Vec<Option<&'a [Color]>>,
    last: Vec<usize>,
    used: Vec<bool>,
    path: Vec<usize>,
    decisions: u64,
    budget: u64,
}

impl LhpSearch<'_> {
    fn permits(&self, v: usize, position: usize) -> bool {
        self.table[v].map_or(true, |l| l.binary_search(&(position as Color)).is_ok())
    }

    fn extend(&mut self, candidates: &[usize]) -> Result<bool, BudgetExhausted> {
        let position = self.path.len() + 1;
        for &v in candidates {
            if self.used[v] || !self.permits(v, position) {
                continue;
            }
            self.decisions += 1;
            if self.decisions > self.budget {
                return Err(BudgetExhausted { decisions: self.decisions });
            }
            self.used[v] = true;
            self.path.push(v);
            if self.path.len() == self.g.n() {
                return Ok(true);
            }
            let viable = (0..self.g.n()).all(|w| self.used[w] || self.last[w] > position);
            if viable && self.extend(self.g.neighbors(v))? {
                return Ok(true);
            }
            self.path.pop();
            self.used[v] = false;
        }
        Ok(false)
    }
}

/// How a Hamilton path may cross a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TraversalClass {
    /// No gadget edge used.
    NoSwap,
    /// Exactly the swap routing.
    Swap,
    /// Any other use of gadget edges.
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elimination {
    /// Some vertex cannot reach path degree 2 with its outside neighbours.
    Degree,
    /// No assignment of consecutive permitted positions exists.
    Position,
}

/// A set of local edges, as indices into [`gadget_local_edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traversal {
    pub edges: Vec<usize>,
    pub class: TraversalClass,
    pub eliminated: Option<Elimination>,
}

#[derive(Debug, Clone)]
pub struct GadgetReport {
    pub gadget: usize,
    pub traversals: Vec<Traversal>,
}

impl GadgetReport {
    pub fn surviving(&self) -> impl Iterator<Item = &Traversal> {
        self.traversals.iter().filter(|t| t.eliminated.is_none())
    }

    pub fn surviving_classes(&self) -> BTreeSet<TraversalClass> {
        self.surviving().map(|t| t.class).collect()
    }
}

/// The ten edges of `H` among the gadget's vertices, as pairs of slots into
/// [`Gadget::vertices`]: three path edges on each side, then the four
/// gadget edges.
pub fn gadget_local_edges() -> [(usize, usize); 10] {
    [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (0, 5), (4, 1), (1, 7), (2, 6)]
}

/// Local edges of the swap routing: `P_i[l]P_j[l+1]P_j[l+2]P_i[l+2]P_i[l+3]`
/// and `P_j[l]P_i[l+1]P_j[l+3]`.
const SWAP: [usize; 6] = [6, 4, 9, 2, 7, 8];

/// Enumerates every linear forest on the gadget's local edges and decides
/// which could be the trace of a valid Hamilton path. With `selections =
/// Some((a, b))`, the low path selects `V_low[a]` and the high path
/// selects `V_high[b]`, so each gadget vertex is confined to the position
/// windows of those selections.
pub fn enumerate_gadget_traversals(r: &ReductionOutput, gadget: usize, selections: Option<(usize, usize)>) -> GadgetReport {
    let g = &r.gadgets[gadget];
    let local = gadget_local_edges();
    let slots = g.vertices;
    let order = r.h.n();
    let (k, n) = (r.k(), r.n());
    let allowed: Vec<Vec<usize>> = (0..8)
        .map(|s| {
            let list = r.lists.get(ElementId::Vertex(slots[s])).unwrap_or(&[]);
            let mut out: Vec<usize> = list.iter().map(|&c| c as usize).collect();
            if let Some((a, b)) = selections {
                let offset = g.offset + s % 4;
                let mut keep: BTreeSet<usize> = window(k, n, g.low, a, offset).collect();
                keep.extend(window(k, n, g.high, b, offset));
                out.retain(|x| keep.contains(x));
            }
            out
        })
        .collect();
    // Neighbours of each slot in H outside the gadget, capped at 2.
    let outside: Vec<usize> = slots
        .iter()
        .map(|&v| r.h.neighbors(v).iter().filter(|w| !slots.contains(w)).count().min(2))
        .collect();
    let mut traversals = Vec::new();
    for mask in 0u32..1 << local.len() {
        let edges: Vec<usize> = (0..local.len()).filter(|&b| mask >> b & 1 == 1).collect();
        let Some(paths) = linear_forest(&edges, &local) else { continue };
        let class = classify(&edges);
        let mut deg = [0usize; 8];
        for &e in &edges {
            deg[local[e].0] += 1;
            deg[local[e].1] += 1;
        }
        let degree_ok = (0..8).all(|s| {
            let needed = 2 - deg[s];
            let endpoint = allowed[s].first() == Some(&1) || allowed[s].last() == Some(&order);
            outside[s] >= needed || (endpoint && outside[s] + 1 >= needed)
        });
        let eliminated = if !degree_ok {
            Some(Elimination::Degree)
        } else if !positions_feasible(&paths, &allowed) {
            Some(Elimination::Position)
        } else {
            None
        };
        traversals.push(Traversal { edges, class, eliminated });
    }
    GadgetReport { gadget, traversals }
}

fn classify(edges: &[usize]) -> TraversalClass {
    let mut sorted = SWAP.to_vec();
    sorted.sort_unstable();
    if edges == sorted.as_slice() {
        TraversalClass::Swap
    } else if edges.iter().all(|&e| e < 6) {
        TraversalClass::NoSwap
    } else {
        TraversalClass::Partial
    }
}

/// Components of the local edge set as slot sequences, or `None` if some
/// slot has degree above 2 or the edges close a cycle.
fn linear_forest(edges: &[usize], local: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = [[usize::MAX; 2]; 8];
    let mut deg = [0usize; 8];
    for &e in edges {
        let (a, b) = local[e];
        for (x, y) in [(a, b), (b, a)] {
            if deg[x] == 2 {
                return None;
            }
            adj[x][deg[x]] = y;
            deg[x] += 1;
        }
    }
    let mut seen = [false; 8];
    let mut paths = Vec::new();
    for start in (0..8).filter(|&s| deg[s] <= 1) {
        if seen[start] {
            continue;
        }
        let mut seq = vec![start];
        seen[start] = true;
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            let next = adj[cur][..deg[cur]].iter().copied().find(|&y| y != prev);
            match next {
                Some(y) => {
                    seq.push(y);
                    seen[y] = true;
                    prev = cur;
                    cur = y;
                }
                None => break,
            }
        }
        paths.push(seq);
    }
    // A slot not reached from a path end lies on a cycle.
    if seen.iter().all(|&s| s) {
        Some(paths)
    } else {
        None
    }
}

/// Whether every component can be laid on consecutive positions, in one
/// direction or the other, with all positions permitted and distinct.
fn positions_feasible(paths: &[Vec<usize>], allowed: &[Vec<usize>]) -> bool {
    let options: Vec<Vec<Vec<usize>>> = paths
        .iter()
        .map(|seq| {
            let mut out = Vec::new();
            let reversed: Vec<usize> = seq.iter().rev().copied().collect();
            let directions: &[&[usize]] = if seq.len() > 1 { &[seq, &reversed] } else { &[seq] };
            for dir in directions {
                for &x in &allowed[dir[0]] {
                    let fits = dir.iter().enumerate().all(|(t, &s)| allowed[s].binary_search(&(x + t)).is_ok());
                    if fits {
                        out.push((0..dir.len()).map(|t| x + t).collect());
                    }
                }
            }
            out
        })
        .collect();
    fn place(options: &[Vec<Vec<usize>>], taken: &mut BTreeSet<usize>) -> bool {
        let Some((first, rest)) = options.split_first() else { return true };
        for positions in first {
            if positions.iter().any(|x| taken.contains(x)) {
                continue;
            }
            taken.extend(positions.iter().copied());
            if place(rest, taken) {
                return true;
            }
            positions.iter().for_each(|x| {
                taken.remove(x);
            });
        }
        false
    }
    place(&options, &mut BTreeSet::new())
}
