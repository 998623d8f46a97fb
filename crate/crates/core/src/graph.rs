//! Simple undirected graphs, the derived line and total graphs, and the
//! colouring checker shared by every other module.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

/// Colours and positions are opaque positive integers.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    VertexOutOfRange { vertex: usize, n: usize },
    UnknownElement(ElementId),
    EmptyList(ElementId),
    ZeroColor(ElementId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge {u}-{v}"),
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for a graph on {n} vertices")
            }
            GraphError::UnknownElement(x) => write!(f, "{x} is not an element of the graph"),
            GraphError::EmptyList(x) => write!(f, "empty list for {x}"),
            GraphError::ZeroColor(x) => write!(f, "colour 0 used for {x}; colours are positive"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges keep the index they were given at construction time; every edge
/// is stored with its smaller endpoint first. Neighbour and incidence lists
/// are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    index: BTreeMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = alloc::vec![Vec::new(); n];
        let mut inc = alloc::vec![Vec::new(); n];
        let mut index = BTreeMap::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if index.insert(key, edges.len()).is_some() {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
            inc[u].push(edges.len());
            inc[v].push(edges.len());
            edges.push(key);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj, inc, index })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph::new(n, &[]).expect("edgeless graph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Indices of the edges incident with `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Maximum degree; 0 for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Two-colours the graph if it is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = alloc::vec![None; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        match x {
            ElementId::Vertex(v) => v < self.n,
            ElementId::Edge(e) => e < self.edges.len(),
        }
    }

    /// The elements coloured in `mode`, in element order.
    pub fn elements(&self, mode: Mode) -> Vec<ElementId> {
        let vertices = (0..self.n).map(ElementId::Vertex);
        let edges = (0..self.m()).map(ElementId::Edge);
        match mode {
            Mode::Vertex => vertices.collect(),
            Mode::Edge => edges.collect(),
            Mode::Total => vertices.chain(edges).collect(),
        }
    }

    /// Elements that must receive a colour different from `x` in `mode`,
    /// sorted in element order.
    pub fn conflicts(&self, mode: Mode, x: ElementId) -> Vec<ElementId> {
        let mut out = Vec::new();
        match (mode, x) {
            (Mode::Vertex, ElementId::Vertex(v)) => {
                out.extend(self.adj[v].iter().map(|&w| ElementId::Vertex(w)));
            }
            (Mode::Edge, ElementId::Edge(e)) => {
                let (u, v) = self.edges[e];
                out.extend(
                    self.inc[u]
                        .iter()
                        .chain(&self.inc[v])
                        .filter(|&&f| f != e)
                        .map(|&f| ElementId::Edge(f)),
                );
            }
            (Mode::Total, ElementId::Vertex(v)) => {
                out.extend(self.adj[v].iter().map(|&w| ElementId::Vertex(w)));
                out.extend(self.inc[v].iter().map(|&f| ElementId::Edge(f)));
            }
            (Mode::Total, ElementId::Edge(e)) => {
                let (u, v) = self.edges[e];
                out.push(ElementId::Vertex(u));
                out.push(ElementId::Vertex(v));
                out.extend(
                    self.inc[u]
                        .iter()
                        .chain(&self.inc[v])
                        .filter(|&&f| f != e)
                        .map(|&f| ElementId::Edge(f)),
                );
            }
            _ => {}
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A vertex or an edge of a host graph.
///
/// The derived order puts all vertices before all edges, matching the
/// vertex numbering of [`total_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementId {
    Vertex(usize),
    Edge(usize),
}

impl ElementId {
    /// Index of this element among the vertices of the total graph of a
    /// graph with `n` vertices.
    pub fn total_index(self, n: usize) -> usize {
        match self {
            ElementId::Vertex(v) => v,
            ElementId::Edge(e) => n + e,
        }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Vertex(v) => write!(f, "vertex {v}"),
            ElementId::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

/// Which elements a colouring covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Vertex,
    Edge,
    Total,
}

impl Mode {
    pub fn covers(self, x: ElementId) -> bool {
        matches!(
            (self, x),
            (Mode::Vertex, ElementId::Vertex(_))
                | (Mode::Edge, ElementId::Edge(_))
                | (Mode::Total, _)
        )
    }
}

/// Finite lists of permitted colours (or positions), keyed by element.
/// Lists are kept sorted and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ListAssignment {
    lists: BTreeMap<ElementId, Vec<Color>>,
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert<I>(&mut self, x: ElementId, colors: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = Color>,
    {
        let set: BTreeSet<Color> = colors.into_iter().collect();
        if set.is_empty() {
            return Err(GraphError::EmptyList(x));
        }
        if set.contains(&0) {
            return Err(GraphError::ZeroColor(x));
        }
        self.lists.insert(x, set.into_iter().collect());
        Ok(())
    }

    /// Uniform lists `colors` on every element of `mode`.
    pub fn uniform(g: &Graph, mode: Mode, colors: &[Color]) -> Result<Self, GraphError> {
        let mut lists = ListAssignment::new();
        for x in g.elements(mode) {
            lists.insert(x, colors.iter().copied())?;
        }
        Ok(lists)
    }

    pub fn get(&self, x: ElementId) -> Option<&[Color]> {
        self.lists.get(&x).map(Vec::as_slice)
    }

    pub fn permits(&self, x: ElementId, c: Color) -> bool {
        self.get(x).is_some_and(|l| l.binary_search(&c).is_ok())
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ElementId, &[Color])> {
        self.lists.iter().map(|(&x, l)| (x, l.as_slice()))
    }

    /// Every listed element must exist in `g`.
    pub fn check(&self, g: &Graph) -> Result<(), GraphError> {
        match self.lists.keys().find(|&&x| !g.contains(x)) {
            Some(&x) => Err(GraphError::UnknownElement(x)),
            None => Ok(()),
        }
    }

    /// Shortest list among the elements of `mode`, `None` if one is missing.
    pub fn min_len(&self, g: &Graph, mode: Mode) -> Option<usize> {
        g.elements(mode)
            .into_iter()
            .map(|x| self.get(x).map(<[Color]>::len))
            .try_fold(usize::MAX, |acc, l| l.map(|l| acc.min(l)))
    }
}

/// A partial or total map from elements to colours.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coloring {
    colors: BTreeMap<ElementId, Color>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, x: ElementId, c: Color) {
        self.colors.insert(x, c);
    }

    pub fn get(&self, x: ElementId) -> Option<Color> {
        self.colors.get(&x).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ElementId, Color)> + '_ {
        self.colors.iter().map(|(&x, &c)| (x, c))
    }
}

impl FromIterator<(ElementId, Color)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (ElementId, Color)>>(iter: I) -> Self {
        Coloring { colors: iter.into_iter().collect() }
    }
}

/// Why a colouring was rejected.
///
/// `Uncolored`, `UnknownElement` and `ZeroColor` are input errors; the
/// other variants are genuine violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringError {
    Uncolored(ElementId),
    UnknownElement(ElementId),
    ZeroColor(ElementId),
    NotInList { element: ElementId, color: Color },
    Conflict { first: ElementId, second: ElementId, color: Color },
}

impl ColoringError {
    pub fn is_violation(&self) -> bool {
        matches!(self, ColoringError::NotInList { .. } | ColoringError::Conflict { .. })
    }
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::Uncolored(x) => write!(f, "{x} has no colour"),
            ColoringError::UnknownElement(x) => write!(f, "{x} is not coloured in this mode"),
            ColoringError::ZeroColor(x) => write!(f, "{x} has colour 0"),
            ColoringError::NotInList { element, color } => {
                write!(f, "{element} has colour {color}, which is not in its list")
            }
            ColoringError::Conflict { first, second, color } => {
                write!(f, "{first} and {second} share colour {color}")
            }
        }
    }
}

impl core::error::Error for ColoringError {}

/// Checks that `c` is a proper colouring of the `mode` elements of `g`
/// and, when `lists` is given, that every colour comes from its list.
///
/// Elements are scanned in element order; for each element its list is
/// checked first, then conflicts with later elements in ascending order,
/// so the reported violation is deterministic.
pub fn check_coloring(
    g: &Graph,
    mode: Mode,
    c: &Coloring,
    lists: Option<&ListAssignment>,
) -> Result<(), ColoringError> {
    for (x, col) in c.iter() {
        if !mode.covers(x) || !g.contains(x) {
            return Err(ColoringError::UnknownElement(x));
        }
        if col == 0 {
            return Err(ColoringError::ZeroColor(x));
        }
    }
    let elements = g.elements(mode);
    if let Some(&x) = elements.iter().find(|&&x| c.get(x).is_none()) {
        return Err(ColoringError::Uncolored(x));
    }
    for &x in &elements {
        let cx = c.get(x).unwrap();
        if let Some(l) = lists {
            if !l.permits(x, cx) {
                return Err(ColoringError::NotInList { element: x, color: cx });
            }
        }
        for y in g.conflicts(mode, x) {
            if y > x && c.get(y) == Some(cx) {
                return Err(ColoringError::Conflict { first: x, second: y, color: cx });
            }
        }
    }
    Ok(())
}

/// The line graph of `g`. Vertex `e` of the result is edge `e` of `g`, so
/// the returned map is the identity; it is returned for symmetry with
/// [`total_graph`].
pub fn line_graph(g: &Graph) -> (Graph, Vec<usize>) {
    let mut pairs = Vec::new();
    for v in 0..g.n() {
        let inc = g.incident(v);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    let lg = Graph::new(g.m(), &pairs).expect("two edges share at most one endpoint");
    (lg, (0..g.m()).collect())
}

/// The total graph of `g` on `V ∪ E`: vertex `v` keeps index `v`, edge `e`
/// becomes vertex `n + e`. Returns the graph and, per result vertex, the
/// element it stands for.
pub fn total_graph(g: &Graph) -> (Graph, Vec<ElementId>) {
    let n = g.n();
    let mut pairs: Vec<(usize, usize)> = g.edges().to_vec();
    for v in 0..n {
        let inc = g.incident(v);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                pairs.push((n + a, n + b));
            }
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        pairs.push((u, n + e));
        pairs.push((v, n + e));
    }
    let tg = Graph::new(n + g.m(), &pairs).expect("total graph is simple");
    (tg, g.elements(Mode::Total))
}
