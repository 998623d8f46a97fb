//! Constructive list edge (and list total) colouring for graphs of
//! treewidth at most `k` with `Δ ≥ (k + 2)·2^(k + 3)`.
//!
//! The graph is peeled: while the residual maximum degree is at least
//! `(k + 2)·2^(k + 2)`, delete an edge that meets fewer than `Δ` other
//! edges, or else `k + 1` vertices sharing a neighbourhood `W` of at most
//! `k + 1` vertices. The residual is coloured greedily, then the deletions
//! are undone in reverse. A deleted edge takes the first free colour of
//! its list; a deleted twin set `U` brings back the complete bipartite
//! block between `U` and `W`, coloured from per-edge sublists of `k + 1`
//! free colours by [`bipartite_list_edge_color`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chromatic::threshold;
use crate::graph::{Color, Coloring, ElementId, Graph, ListAssignment, Mode};
use crate::listcolor::bipartite_list_edge_color;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    BelowThreshold { max_degree: usize, needed: usize },
    MissingList(ElementId),
    ListTooShort { element: ElementId, len: usize, needed: usize },
    /// No light edge and no twin set while the residual degree is still
    /// at least the threshold. Cannot happen when the graph really has
    /// treewidth at most `k`.
    Stuck { max_degree: usize, k: usize },
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::BelowThreshold { max_degree, needed } => {
                write!(f, "maximum degree {max_degree} is below the required {needed}")
            }
            ConstructError::MissingList(x) => write!(f, "{x} has no list"),
            ConstructError::ListTooShort { element, len, needed } => {
                write!(f, "list of {element} has {len} colours, {needed} needed")
            }
            ConstructError::Stuck { max_degree, k } => write!(
                f,
                "peeling stuck at residual maximum degree {max_degree}; treewidth exceeds {k}"
            ),
        }
    }
}

impl core::error::Error for ConstructError {}

/// One peeling step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelRecord {
    Edge(usize),
    Twin {
        /// Exactly `k + 1` vertices with identical neighbourhoods.
        twins: Vec<usize>,
        /// Their common neighbourhood.
        common: Vec<usize>,
        /// The edges removed with them.
        edges: Vec<usize>,
    },
}

/// Deletions in the order they were made.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeelStack {
    pub records: Vec<PeelRecord>,
}

impl PeelStack {
    /// Edge mask of `g` after applying every deletion.
    pub fn replay(&self, g: &Graph) -> Vec<bool> {
        let mut alive = vec![true; g.m()];
        for r in &self.records {
            match r {
                PeelRecord::Edge(e) => alive[*e] = false,
                PeelRecord::Twin { edges, .. } => edges.iter().for_each(|&e| alive[e] = false),
            }
        }
        alive
    }

    /// Vertices removed by twin deletions.
    pub fn removed_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .records
            .iter()
            .flat_map(|r| match r {
                PeelRecord::Twin { twins, .. } => twins.clone(),
                PeelRecord::Edge(_) => Vec::new(),
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Vertices of degree between 1 and `k + 1`, grouped by their sorted
/// neighbourhoods so that twins sit together.
#[derive(Debug, Clone)]
pub struct TwinIndex {
    size: usize,
    classes: BTreeMap<Vec<usize>, BTreeSet<usize>>,
    qualifying: BTreeSet<Vec<usize>>,
    key: Vec<Option<Vec<usize>>>,
}

impl TwinIndex {
    fn new(n: usize, size: usize) -> Self {
        TwinIndex {
            size,
            classes: BTreeMap::new(),
            qualifying: BTreeSet::new(),
            key: vec![None; n],
        }
    }

    fn remove(&mut self, v: usize) {
        let Some(key) = self.key[v].take() else { return };
        let class = self.classes.get_mut(&key).unwrap();
        class.remove(&v);
        if class.len() < self.size {
            self.qualifying.remove(&key);
        }
        if class.is_empty() {
            self.classes.remove(&key);
        }
    }

    fn insert(&mut self, v: usize, nbrs: &BTreeSet<usize>) {
        if nbrs.is_empty() || nbrs.len() > self.size {
            return;
        }
        let key: Vec<usize> = nbrs.iter().copied().collect();
        let class = self.classes.entry(key.clone()).or_default();
        class.insert(v);
        if class.len() >= self.size {
            self.qualifying.insert(key.clone());
        }
        self.key[v] = Some(key);
    }

    /// The first `k + 1` vertices of the first neighbourhood class with at
    /// least `k + 1` members.
    pub fn first_class(&self) -> Option<Vec<usize>> {
        let key = self.qualifying.first()?;
        Some(self.classes[key].iter().copied().take(self.size).collect())
    }

    /// Small-degree vertices in neighbourhood order.
    pub fn sorted_vertices(&self) -> Vec<usize> {
        self.classes.values().flat_map(|c| c.iter().copied()).collect()
    }
}

/// The graph left after a sequence of deletions, with the bookkeeping the
/// peel needs: neighbour sets, a degree histogram and the twin index.
#[derive(Debug, Clone)]
pub struct Residual<'g> {
    g: &'g Graph,
    edge_alive: Vec<bool>,
    vertex_alive: Vec<bool>,
    nbrs: Vec<BTreeSet<usize>>,
    degree_count: Vec<usize>,
    max_degree: usize,
    twins: TwinIndex,
}

impl<'g> Residual<'g> {
    pub fn new(g: &'g Graph, k: usize) -> Self {
        let nbrs: Vec<BTreeSet<usize>> =
            (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
        let max_degree = g.max_degree();
        let mut degree_count = vec![0; max_degree + 1];
        let mut twins = TwinIndex::new(g.n(), k + 1);
        for (v, set) in nbrs.iter().enumerate() {
            degree_count[set.len()] += 1;
            twins.insert(v, set);
        }
        Residual {
            g,
            edge_alive: vec![true; g.m()],
            vertex_alive: vec![true; g.n()],
            nbrs,
            degree_count,
            max_degree,
            twins,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edge_alive(&self) -> &[bool] {
        &self.edge_alive
    }

    pub fn vertex_alive(&self) -> &[bool] {
        &self.vertex_alive
    }

    pub fn twin_index(&self) -> &TwinIndex {
        &self.twins
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.nbrs[v]
    }

    fn set_degree(&mut self, v: usize, old: usize) {
        self.degree_count[old] -= 1;
        self.degree_count[self.nbrs[v].len()] += 1;
        while self.max_degree > 0 && self.degree_count[self.max_degree] == 0 {
            self.max_degree -= 1;
        }
    }

    pub fn delete_edge(&mut self, e: usize) {
        debug_assert!(self.edge_alive[e]);
        self.edge_alive[e] = false;
        let (u, v) = self.g.edge(e);
        for (a, b) in [(u, v), (v, u)] {
            self.twins.remove(a);
            let old = self.nbrs[a].len();
            self.nbrs[a].remove(&b);
            self.set_degree(a, old);
            self.twins.insert(a, &self.nbrs[a]);
        }
    }

    /// Deletes `twins` with all their edges; returns the removed edges.
    pub fn delete_vertices(&mut self, twins: &[usize]) -> Vec<usize> {
        let mut removed = Vec::new();
        for &u in twins {
            for &e in self.g.incident(u) {
                if self.edge_alive[e] {
                    self.delete_edge(e);
                    removed.push(e);
                }
            }
            self.vertex_alive[u] = false;
        }
        removed
    }
}

/// First live edge (in index order) meeting fewer than `delta0` other
/// live edges.
pub fn find_light_edge(res: &Residual<'_>, delta0: usize) -> Option<usize> {
    (0..res.g.m()).find(|&e| {
        let (u, v) = res.g.edge(e);
        res.edge_alive[e] && res.degree(u) + res.degree(v) - 2 < delta0
    })
}

/// `k + 1` vertices with one common neighbourhood of size at most `k + 1`,
/// taken from the first qualifying class of the twin index.
pub fn find_twin_class(res: &Residual<'_>) -> Option<Vec<usize>> {
    res.twins.first_class()
}

/// A colouring with the peel that produced it.
#[derive(Debug, Clone)]
pub struct Construction {
    pub coloring: Coloring,
    pub stack: PeelStack,
}

/// Proper list edge colouring of `(g, lists)`, given that `g` has
/// treewidth at most `k`, `Δ(g) ≥ (k + 2)·2^(k + 3)` and every list has at
/// least `Δ(g)` colours.
pub fn construct_list_edge_coloring(g: &Graph, k: usize, lists: &ListAssignment) -> Result<Coloring, ConstructError> {
    peel_and_color(g, k, lists, Mode::Edge).map(|c| c.coloring)
}

/// Proper list total colouring; lists need at least `Δ(g) + 1` colours.
pub fn construct_list_total_coloring(g: &Graph, k: usize, lists: &ListAssignment) -> Result<Coloring, ConstructError> {
    peel_and_color(g, k, lists, Mode::Total).map(|c| c.coloring)
}

/// Runs the peel and reinsertion for `mode` (edge or total).
pub fn peel_and_color(g: &Graph, k: usize, lists: &ListAssignment, mode: Mode) -> Result<Construction, ConstructError> {
    assert!(mode != Mode::Vertex, "vertex mode is not supported");
    let delta = g.max_degree();
    let needed = 2 * threshold(k);
    if delta < needed {
        return Err(ConstructError::BelowThreshold { max_degree: delta, needed });
    }
    let list_len = if mode == Mode::Edge { delta } else { delta + 1 };
    let mut table: Vec<&[Color]> = Vec::new();
    for x in g.elements(mode) {
        let l = lists.get(x).ok_or(ConstructError::MissingList(x))?;
        if l.len() < list_len {
            return Err(ConstructError::ListTooShort { element: x, len: l.len(), needed: list_len });
        }
        table.push(l);
    }
    let stack = peel(g, k, mode)?;
    let mut state = Palette::new(g, mode, table);
    state.color_residual(&stack);
    for record in stack.records.iter().rev() {
        match record {
            PeelRecord::Edge(e) => state.reinsert_edge(*e),
            PeelRecord::Twin { twins, common, edges } => state.reinsert_twins(k, twins, common, edges),
        }
    }
    Ok(Construction { coloring: state.into_coloring(), stack })
}

/// Deletes light edges and twin sets until the residual maximum degree
/// drops below `threshold(k)`.
pub fn peel(g: &Graph, k: usize, mode: Mode) -> Result<PeelStack, ConstructError> {
    let delta = g.max_degree();
    // A reinserted edge must see fewer conflicts than its list has colours:
    // Δ in edge mode, Δ + 1 counting both endpoints in total mode.
    let delta0 = if mode == Mode::Edge { delta } else { delta.saturating_sub(1) };
    let stop = threshold(k);
    let mut res = Residual::new(g, k);
    let mut stack = PeelStack::default();
    while res.max_degree() >= stop {
        if let Some(e) = find_light_edge(&res, delta0) {
            res.delete_edge(e);
            stack.records.push(PeelRecord::Edge(e));
        } else if let Some(twins) = find_twin_class(&res) {
            let common: Vec<usize> = res.neighbors(twins[0]).iter().copied().collect();
            let edges = res.delete_vertices(&twins);
            stack.records.push(PeelRecord::Twin { twins, common, edges });
        } else {
            return Err(ConstructError::Stuck { max_degree: res.max_degree(), k });
        }
    }
    Ok(stack)
}

/// Colours during reinsertion, indexed by element.
struct Palette<'a> {
    g: &'a Graph,
    mode: Mode,
    lists: Vec<&'a [Color]>,
    vertex: Vec<Option<Color>>,
    edge: Vec<Option<Color>>,
}

impl<'a> Palette<'a> {
    fn new(g: &'a Graph, mode: Mode, lists: Vec<&'a [Color]>) -> Self {
        Palette { g, mode, lists, vertex: vec![None; g.n()], edge: vec![None; g.m()] }
    }

    fn list(&self, x: ElementId) -> &'a [Color] {
        match (self.mode, x) {
            (Mode::Edge, ElementId::Edge(e)) => self.lists[e],
            (_, x) => self.lists[x.total_index(self.g.n())],
        }
    }

    /// Colours already used at `v`: on its coloured edges and, in total
    /// mode, on `v` itself.
    fn used_at(&self, v: usize, out: &mut Vec<Color>) {
        out.extend(self.g.incident(v).iter().filter_map(|&f| self.edge[f]));
        if self.mode == Mode::Total {
            out.extend(self.vertex[v]);
        }
    }

    fn first_free(&self, x: ElementId, used: &mut Vec<Color>) -> Color {
        used.sort_unstable();
        self.list(x)
            .iter()
            .copied()
            .find(|c| used.binary_search(c).is_err())
            .unwrap_or_else(|| panic!("no free colour for {x}; list length bound violated"))
    }

    fn color_edge_first_free(&mut self, e: usize) {
        let (u, v) = self.g.edge(e);
        let mut used = Vec::new();
        self.used_at(u, &mut used);
        self.used_at(v, &mut used);
        self.edge[e] = Some(self.first_free(ElementId::Edge(e), &mut used));
    }

    fn color_vertex_first_free(&mut self, v: usize) {
        let mut used: Vec<Color> = self.g.neighbors(v).iter().filter_map(|&w| self.vertex[w]).collect();
        used.extend(self.g.incident(v).iter().filter_map(|&f| self.edge[f]));
        self.vertex[v] = Some(self.first_free(ElementId::Vertex(v), &mut used));
    }

    /// Greedy colouring of the residual in element order.
    fn color_residual(&mut self, stack: &PeelStack) {
        let alive = stack.replay(self.g);
        if self.mode == Mode::Total {
            let removed = stack.removed_vertices();
            for v in 0..self.g.n() {
                if removed.binary_search(&v).is_err() {
                    self.color_vertex_first_free(v);
                }
            }
        }
        for e in (0..self.g.m()).filter(|&e| alive[e]) {
            self.color_edge_first_free(e);
        }
    }

    fn reinsert_edge(&mut self, e: usize) {
        self.color_edge_first_free(e);
    }

    fn reinsert_twins(&mut self, k: usize, twins: &[usize], common: &[usize], edges: &[usize]) {
        let size = k + 1;
        let forbidden: Vec<Vec<Color>> = common
            .iter()
            .map(|&w| {
                let mut used = Vec::new();
                self.used_at(w, &mut used);
                used.sort_unstable();
                used
            })
            .collect();
        // Block vertices: twins first, then the common neighbourhood.
        let mut pairs = Vec::with_capacity(edges.len());
        let mut sublists = ListAssignment::new();
        for (i, &e) in edges.iter().enumerate() {
            let (a, b) = self.g.edge(e);
            let (u, w) = if twins.contains(&a) { (a, b) } else { (b, a) };
            let ui = twins.iter().position(|&t| t == u).unwrap();
            let wi = common.iter().position(|&c| c == w).unwrap();
            pairs.push((ui, twins.len() + wi));
            let avail: Vec<Color> = self
                .list(ElementId::Edge(e))
                .iter()
                .copied()
                .filter(|c| forbidden[wi].binary_search(c).is_err())
                .take(size)
                .collect();
            assert!(
                avail.len() >= size,
                "edge {e} has {} free colours, at least {size} guaranteed",
                avail.len()
            );
            sublists.insert(ElementId::Edge(i), avail).unwrap();
        }
        let block = Graph::new(twins.len() + common.len(), &pairs).expect("block is simple");
        let colored = bipartite_list_edge_color(&block, &sublists)
            .expect("block is bipartite with lists of size k + 1 ≥ its maximum degree");
        for (i, &e) in edges.iter().enumerate() {
            self.edge[e] = colored.get(ElementId::Edge(i));
        }
        if self.mode == Mode::Total {
            for &u in twins {
                self.color_vertex_first_free(u);
            }
        }
    }

    fn into_coloring(self) -> Coloring {
        let vertices = self
            .vertex
            .into_iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (ElementId::Vertex(v), c)));
        let edges = self.edge.into_iter().enumerate().map(|(e, c)| {
            (ElementId::Edge(e), c.expect("every edge is coloured after reinsertion"))
        });
        vertices.chain(edges).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::check_coloring;

    fn star(leaves: usize) -> Graph {
        let pairs: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        Graph::new(leaves + 1, &pairs).unwrap()
    }

    #[test]
    fn light_edges() {
        let s = star(5);
        let res = Residual::new(&s, 1);
        assert_eq!(find_light_edge(&res, 10), Some(0));
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let res = Residual::new(&k3, 1);
        assert_eq!(find_light_edge(&res, 2), None);
        assert_eq!(find_light_edge(&res, 3), Some(0));
    }

    #[test]
    fn twin_classes() {
        let s = star(3);
        let res = Residual::new(&s, 1);
        assert_eq!(find_twin_class(&res), Some(vec![1, 2]));

        let p = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let res = Residual::new(&p, 1);
        assert_eq!(find_twin_class(&res), None);

        let s = star(30);
        let mut res = Residual::new(&s, 1);
        assert_eq!(find_twin_class(&res), Some(vec![1, 2]));
        let removed = res.delete_vertices(&[1, 2]);
        assert_eq!(removed, vec![0, 1]);
        assert_eq!(res.max_degree(), 28);
        assert_eq!(find_twin_class(&res), Some(vec![3, 4]));
    }

    #[test]
    fn twin_index_stays_sorted_under_deletions() {
        // Two hubs 0 and 1; leaves 2..6 on hub 0, leaves 6..9 on both hubs.
        let mut pairs = vec![];
        for l in 2..6 {
            pairs.push((0, l));
        }
        for l in 6..9 {
            pairs.push((0, l));
            pairs.push((1, l));
        }
        let g = Graph::new(9, &pairs).unwrap();
        let mut res = Residual::new(&g, 2);
        // Hub 1 has degree 3 and is indexed too, under {6, 7, 8}.
        assert_eq!(res.twin_index().sorted_vertices(), vec![2, 3, 4, 5, 6, 7, 8, 1]);
        assert_eq!(find_twin_class(&res), Some(vec![2, 3, 4]));
        // Cut vertex 6 off hub 1; it joins the hub-0 class.
        res.delete_edge(g.edge_index(1, 6).unwrap());
        assert_eq!(res.twin_index().sorted_vertices(), vec![2, 3, 4, 5, 6, 7, 8, 1]);
        assert_eq!(res.twin_index().classes[&vec![0]].len(), 5);
    }

    #[test]
    fn star_48_uniform_lists() {
        let s = star(48);
        let lists = ListAssignment::uniform(&s, Mode::Edge, &(1..=48).collect::<Vec<_>>()).unwrap();
        let c = construct_list_edge_coloring(&s, 1, &lists).unwrap();
        assert_eq!(check_coloring(&s, Mode::Edge, &c, Some(&lists)), Ok(()));
        let distinct: BTreeSet<Color> = c.iter().map(|(_, c)| c).collect();
        assert_eq!(distinct.len(), 48);
    }

    #[test]
    fn star_48_total() {
        let s = star(48);
        let lists = ListAssignment::uniform(&s, Mode::Total, &(1..=49).collect::<Vec<_>>()).unwrap();
        let c = construct_list_total_coloring(&s, 1, &lists).unwrap();
        assert_eq!(check_coloring(&s, Mode::Total, &c, Some(&lists)), Ok(()));
    }

    #[test]
    fn twin_peel_on_fan_of_triangles() {
        // Hubs 0 and 1 joined, every spoke adjacent to both: a 2-tree with
        // Δ = 131 ≥ 128.
        let spokes = 130;
        let mut pairs = vec![(0, 1)];
        for v in 2..2 + spokes {
            pairs.push((0, v));
            pairs.push((1, v));
        }
        let g = Graph::new(2 + spokes, &pairs).unwrap();
        let lists = ListAssignment::uniform(&g, Mode::Edge, &(1..=g.max_degree() as Color).collect::<Vec<_>>()).unwrap();
        let out = peel_and_color(&g, 2, &lists, Mode::Edge).unwrap();
        assert!(out.stack.records.iter().any(|r| matches!(r, PeelRecord::Twin { .. })));
        assert_eq!(check_coloring(&g, Mode::Edge, &out.coloring, Some(&lists)), Ok(()));
    }

    #[test]
    fn preconditions() {
        let s = star(10);
        let lists = ListAssignment::uniform(&s, Mode::Edge, &(1..=10).collect::<Vec<_>>()).unwrap();
        assert_eq!(
            construct_list_edge_coloring(&s, 1, &lists),
            Err(ConstructError::BelowThreshold { max_degree: 10, needed: 48 })
        );
        let s = star(48);
        let lists = ListAssignment::uniform(&s, Mode::Edge, &(1..=47).collect::<Vec<_>>()).unwrap();
        assert!(matches!(
            construct_list_edge_coloring(&s, 1, &lists),
            Err(ConstructError::ListTooShort { needed: 48, .. })
        ));
        let lists = ListAssignment::uniform(&s, Mode::Edge, &(1..=48).collect::<Vec<_>>()).unwrap();
        assert!(matches!(
            construct_list_total_coloring(&s, 1, &lists),
            Err(ConstructError::MissingList(ElementId::Vertex(0)))
        ));
    }

    #[test]
    fn wrong_width_bound_is_reported() {
        // K_{3,60}: treewidth 3, so k = 1 is false and the peel gets stuck.
        let mut pairs = vec![];
        for a in 0..3 {
            for b in 3..63 {
                pairs.push((a, b));
            }
        }
        let g = Graph::new(63, &pairs).unwrap();
        assert!(matches!(peel(&g, 1, Mode::Edge), Err(ConstructError::Stuck { .. })));
    }
}
