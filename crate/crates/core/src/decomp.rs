//! Tree and path decompositions: validation, contraction to at most `n`
//! nodes, rooted bookkeeping, and the lifts to line and total graphs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompError {
    NotATree(&'static str),
    HostMismatch { expected: usize, found: usize },
    EmptyBag(usize),
    VertexOutOfRange { node: usize, vertex: usize },
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    DisconnectedSubtree(usize),
    RootOutOfRange(usize),
    TooLarge { n: usize, limit: usize },
}

impl fmt::Display for DecompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompError::NotATree(why) => write!(f, "indexing graph is not a tree: {why}"),
            DecompError::HostMismatch { expected, found } => write!(
                f,
                "decomposition is for a graph on {found} vertices, host has {expected}"
            ),
            DecompError::EmptyBag(t) => write!(f, "bag of node {t} is empty"),
            DecompError::VertexOutOfRange { node, vertex } => {
                write!(f, "bag of node {node} holds unknown vertex {vertex}")
            }
            DecompError::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            DecompError::UncoveredEdge(u, v) => write!(f, "edge {u}-{v} is in no bag"),
            DecompError::DisconnectedSubtree(v) => {
                write!(f, "nodes whose bags contain vertex {v} are not connected")
            }
            DecompError::RootOutOfRange(r) => write!(f, "root {r} is not a node"),
            DecompError::TooLarge { n, limit } => {
                write!(f, "graph has {n} vertices, exact limit is {limit}")
            }
        }
    }
}

impl core::error::Error for DecompError {}

/// Bags indexed by the nodes of a tree, for a host graph on `n` vertices.
///
/// Bags are kept sorted and duplicate-free. Nothing is checked on
/// construction; use [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// A path decomposition is a tree decomposition whose tree is a path; the
/// node order is the path order.
pub type PathDecomposition = TreeDecomposition;

impl TreeDecomposition {
    pub fn new(n: usize, bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { n, bags, edges }
    }

    /// Bags in path order, consecutive nodes joined.
    pub fn path(n: usize, bags: Vec<Vec<usize>>) -> Self {
        let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
        Self::new(n, bags, edges)
    }

    /// The host vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, t: usize) -> &[usize] {
        &self.bags[t]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>, DecompError> {
        let nodes = self.bags.len();
        if nodes == 0 {
            return Err(DecompError::NotATree("no nodes"));
        }
        if self.edges.len() != nodes - 1 {
            return Err(DecompError::NotATree("edge count is not node count minus one"));
        }
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &self.edges {
            if a >= nodes || b >= nodes {
                return Err(DecompError::NotATree("edge endpoint out of range"));
            }
            if a == b {
                return Err(DecompError::NotATree("self-loop"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let dist = bfs(&adj, 0);
        if dist.iter().any(Option::is_none) {
            return Err(DecompError::NotATree("disconnected"));
        }
        Ok(adj)
    }

    /// Nodes whose bag contains each vertex.
    fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < self.n {
                    occ[v].push(t);
                }
            }
        }
        occ
    }
}

fn bfs(adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        let d = dist[t].unwrap();
        for &s in &adj[t] {
            if dist[s].is_none() {
                dist[s] = Some(d + 1);
                queue.push_back(s);
            }
        }
    }
    dist
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

/// Checks the three decomposition axioms and returns the width.
///
/// A host with no vertices admits a single node with an empty bag.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Result<usize, DecompError> {
    if td.n != g.n() {
        return Err(DecompError::HostMismatch { expected: g.n(), found: td.n });
    }
    td.tree_adjacency()?;
    for (t, bag) in td.bags.iter().enumerate() {
        if bag.is_empty() && g.n() > 0 {
            return Err(DecompError::EmptyBag(t));
        }
        if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
            return Err(DecompError::VertexOutOfRange { node: t, vertex: v });
        }
    }
    let occ = td.occurrences();
    if let Some(v) = occ.iter().position(Vec::is_empty) {
        return Err(DecompError::UncoveredVertex(v));
    }
    for &(u, v) in g.edges() {
        if !occ[u].iter().any(|&t| td.bags[t].binary_search(&v).is_ok()) {
            return Err(DecompError::UncoveredEdge(u, v));
        }
    }
    // The nodes containing v induce a forest of the tree; it is connected
    // exactly when it has one edge fewer than it has nodes.
    let mut inner = vec![0usize; g.n()];
    for &(a, b) in &td.edges {
        let (ba, bb) = (&td.bags[a], &td.bags[b]);
        for &v in ba {
            if bb.binary_search(&v).is_ok() {
                inner[v] += 1;
            }
        }
    }
    for v in 0..g.n() {
        if inner[v] + 1 != occ[v].len() {
            return Err(DecompError::DisconnectedSubtree(v));
        }
    }
    Ok(td.width())
}

/// Contracts tree edges whose bags are nested until none remain.
///
/// Tree edges are scanned in index order and the scan restarts after every
/// contraction; the merged node keeps the larger bag. The result is valid,
/// no wider, and has at most `n` nodes.
pub fn normalize(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition, DecompError> {
    validate(g, td)?;
    let mut bags: Vec<Option<Vec<usize>>> = td.bags.iter().cloned().map(Some).collect();
    let mut edges = td.edges.clone();
    loop {
        let found = edges.iter().enumerate().find_map(|(i, &(a, b))| {
            let (ba, bb) = (bags[a].as_ref().unwrap(), bags[b].as_ref().unwrap());
            if is_subset(bb, ba) {
                Some((i, a, b))
            } else if is_subset(ba, bb) {
                Some((i, b, a))
            } else {
                None
            }
        });
        let Some((i, keep, drop)) = found else { break };
        contract(&mut bags, &mut edges, i, keep, drop);
    }
    Ok(compact(td.n, bags, edges))
}

fn contract(
    bags: &mut [Option<Vec<usize>>],
    edges: &mut Vec<(usize, usize)>,
    i: usize,
    keep: usize,
    drop: usize,
) {
    edges.remove(i);
    for e in edges.iter_mut() {
        if e.0 == drop {
            e.0 = keep;
        }
        if e.1 == drop {
            e.1 = keep;
        }
    }
    let dropped = bags[drop].take().unwrap();
    let kept = bags[keep].as_mut().unwrap();
    kept.extend(dropped);
    kept.sort_unstable();
    kept.dedup();
}

fn compact(n: usize, bags: Vec<Option<Vec<usize>>>, edges: Vec<(usize, usize)>) -> TreeDecomposition {
    let mut relabel = vec![usize::MAX; bags.len()];
    let mut out = Vec::new();
    for (t, bag) in bags.into_iter().enumerate() {
        if let Some(bag) = bag {
            relabel[t] = out.len();
            out.push(bag);
        }
    }
    let edges = edges.into_iter().map(|(a, b)| (relabel[a], relabel[b])).collect();
    TreeDecomposition::new(n, out, edges)
}

/// A decomposition rooted at a node, with node heights and, per vertex,
/// the node of minimal height whose bag contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDecomposition {
    pub base: TreeDecomposition,
    pub root: usize,
    pub heights: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// `t_v` for every vertex; `None` for a vertex in no bag.
    pub min_node: Vec<Option<usize>>,
}

impl RootedDecomposition {
    /// Nodes in the subtree hanging from `t` (including `t`).
    pub fn subtree(&self, t: usize) -> Vec<usize> {
        (0..self.base.num_nodes())
            .filter(|&s| {
                let mut cur = Some(s);
                while let Some(c) = cur {
                    if c == t {
                        return true;
                    }
                    cur = self.parent[c];
                }
                false
            })
            .collect()
    }
}

pub fn root_and_annotate(
    td: &TreeDecomposition,
    root: usize,
) -> Result<RootedDecomposition, DecompError> {
    let adj = td.tree_adjacency()?;
    if root >= td.num_nodes() {
        return Err(DecompError::RootOutOfRange(root));
    }
    let heights: Vec<usize> = bfs(&adj, root).into_iter().map(Option::unwrap).collect();
    let parent = (0..td.num_nodes())
        .map(|t| adj[t].iter().copied().find(|&s| heights[s] + 1 == heights[t]))
        .collect();
    let min_node = td
        .occurrences()
        .into_iter()
        .map(|nodes| nodes.into_iter().min_by_key(|&t| (heights[t], t)))
        .collect();
    Ok(RootedDecomposition { base: td.clone(), root, heights, parent, min_node })
}

/// Decomposition of the line graph: each bag becomes the set of edges with
/// an endpoint in it. Nodes left with an empty bag are contracted into a
/// neighbour.
pub fn lift_line(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition, DecompError> {
    validate(g, td)?;
    let bags = td
        .bags
        .iter()
        .map(|bag| incident_edges(g, bag).collect::<Vec<_>>())
        .collect();
    Ok(drop_empty_bags(g.m(), bags, td.edges.clone()))
}

/// Decomposition of the total graph: each bag `D(t)` becomes `D(t)` plus
/// every edge with an endpoint in `D(t)`, edge `e` numbered `n + e`.
pub fn lift_total(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition, DecompError> {
    validate(g, td)?;
    let n = g.n();
    let bags = td
        .bags
        .iter()
        .map(|bag| bag.iter().copied().chain(incident_edges(g, bag).map(|e| n + e)).collect())
        .collect();
    Ok(TreeDecomposition::new(n + g.m(), bags, td.edges.clone()))
}

fn incident_edges<'a>(g: &'a Graph, bag: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let mut seen: Vec<usize> = bag.iter().flat_map(|&v| g.incident(v).iter().copied()).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.into_iter()
}

fn drop_empty_bags(n: usize, bags: Vec<Vec<usize>>, mut edges: Vec<(usize, usize)>) -> TreeDecomposition {
    let mut bags: Vec<Option<Vec<usize>>> = bags.into_iter().map(Some).collect();
    while let Some(i) = edges.iter().position(|&(a, b)| {
        bags[a].as_ref().unwrap().is_empty() || bags[b].as_ref().unwrap().is_empty()
    }) {
        let (a, b) = edges[i];
        let (keep, drop) = if bags[a].as_ref().unwrap().is_empty() { (b, a) } else { (a, b) };
        contract(&mut bags, &mut edges, i, keep, drop);
    }
    compact(n, bags, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line_graph, total_graph};

    fn path3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let td = TreeDecomposition::new(3, vec![vec![0, 1, 2]], vec![]);
        assert_eq!(validate(&k3, &td), Ok(2));

        let td = TreeDecomposition::path(3, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(validate(&path3(), &td), Ok(1));

        let td = TreeDecomposition::path(3, vec![vec![0], vec![2]]);
        assert_eq!(validate(&path3(), &td), Err(DecompError::UncoveredVertex(1)));
        let td = TreeDecomposition::path(3, vec![vec![0], vec![1, 2]]);
        assert_eq!(validate(&path3(), &td), Err(DecompError::UncoveredEdge(0, 1)));
    }

    #[test]
    fn validate_rejects_broken_trees_and_subtrees() {
        let g = path3();
        let td = TreeDecomposition::path(3, vec![vec![0, 1], vec![2], vec![1, 2]]);
        assert_eq!(validate(&g, &td), Err(DecompError::DisconnectedSubtree(1)));
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![1, 2]], vec![]);
        assert!(matches!(validate(&g, &td), Err(DecompError::NotATree(_))));
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![1, 2]], vec![(0, 0)]);
        assert!(matches!(validate(&g, &td), Err(DecompError::NotATree(_))));
        let td = TreeDecomposition::path(3, vec![vec![0, 1], vec![]]);
        assert_eq!(validate(&g, &td), Err(DecompError::EmptyBag(1)));
        let td = TreeDecomposition::path(4, vec![vec![0, 1], vec![1, 2]]);
        assert!(matches!(validate(&g, &td), Err(DecompError::HostMismatch { .. })));
    }

    #[test]
    fn normalize_examples() {
        let g = path3();
        let td = TreeDecomposition::path(3, vec![vec![0, 1], vec![0, 1], vec![1, 2]]);
        let out = normalize(&g, &td).unwrap();
        assert_eq!(out.bags(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(out.tree_edges(), &[(0, 1)]);
        assert_eq!(normalize(&g, &out).unwrap(), out);
    }

    #[test]
    fn normalize_merges_into_superset() {
        let g = path3();
        let td = TreeDecomposition::path(3, vec![vec![1], vec![0, 1], vec![1], vec![1, 2]]);
        let out = normalize(&g, &td).unwrap();
        assert_eq!(out.num_nodes(), 2);
        assert_eq!(validate(&g, &out), Ok(1));
    }

    #[test]
    fn rooting() {
        let g = path3();
        let td = TreeDecomposition::path(3, vec![vec![0, 1], vec![1, 2]]);
        validate(&g, &td).unwrap();
        let rd = root_and_annotate(&td, 0).unwrap();
        assert_eq!(rd.heights, vec![0, 1]);
        assert_eq!(rd.min_node, vec![Some(0), Some(0), Some(1)]);
        assert_eq!(rd.subtree(1), vec![1]);
        assert_eq!(rd.subtree(0), vec![0, 1]);

        let single = TreeDecomposition::new(3, vec![vec![0, 1, 2]], vec![]);
        let rd = root_and_annotate(&single, 0).unwrap();
        assert_eq!(rd.heights, vec![0]);
        assert_eq!(rd.min_node, vec![Some(0); 3]);
        assert_eq!(root_and_annotate(&single, 1), Err(DecompError::RootOutOfRange(1)));
    }

    #[test]
    fn lifts() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let td = TreeDecomposition::new(3, vec![vec![0, 1, 2]], vec![]);
        let (lg, _) = line_graph(&k3);
        let lifted = lift_line(&k3, &td).unwrap();
        assert_eq!(validate(&lg, &lifted), Ok(2));
        let (tg, _) = total_graph(&k3);
        let lifted = lift_total(&k3, &td).unwrap();
        assert_eq!(validate(&tg, &lifted), Ok(5));

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let td = TreeDecomposition::new(
            4,
            vec![vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![(0, 1), (0, 2)],
        );
        let (lg, _) = line_graph(&star);
        let lifted = lift_line(&star, &td).unwrap();
        assert!(lifted.bags().iter().all(|b| b.len() == 3));
        assert_eq!(validate(&lg, &lifted), Ok(2));

        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let td = TreeDecomposition::new(2, vec![vec![0, 1]], vec![]);
        assert_eq!(lift_total(&k2, &td).unwrap().bags(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn lift_line_drops_isolated_bags() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let td = TreeDecomposition::path(3, vec![vec![0, 1], vec![2]]);
        let lifted = lift_line(&g, &td).unwrap();
        assert_eq!(lifted.bags(), &[vec![0]]);
        let (lg, _) = line_graph(&g);
        assert_eq!(validate(&lg, &lifted), Ok(0));

        let edgeless = Graph::empty(2);
        let td = TreeDecomposition::path(2, vec![vec![0], vec![1]]);
        let lifted = lift_line(&edgeless, &td).unwrap();
        assert_eq!(lifted.num_nodes(), 1);
        assert_eq!(validate(&Graph::empty(0), &lifted), Ok(0));
    }
}
