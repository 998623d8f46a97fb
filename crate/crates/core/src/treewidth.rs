//! Treewidth for desk-scale graphs: an exact branch-and-bound over
//! elimination orderings and the min-fill upper bound.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::decomp::{DecompError, TreeDecomposition};
use crate::graph::Graph;

/// Default vertex limit for [`treewidth_exact`].
pub const DEFAULT_EXACT_LIMIT: usize = 30;

/// Largest vertex count the bitset search supports.
const MAX_EXACT_LIMIT: usize = 64;

/// Builds the tree decomposition induced by eliminating vertices in
/// `order`: each vertex's bag is itself plus its neighbours at elimination
/// time, hung below the bag of the earliest-eliminated such neighbour.
pub fn from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(0, vec![Vec::new()], Vec::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (j, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[j + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        match nbrs.iter().min_by_key(|&&w| pos[w]) {
            Some(&p) => edges.push((i, pos[p])),
            None => roots.push(i),
        }
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
    }
    edges.extend(roots.windows(2).map(|w| (w[0], w[1])));
    TreeDecomposition::new(n, bags, edges)
}

fn fill_in_at_most(adj: &[BTreeSet<usize>], v: usize, cap: usize) -> Option<usize> {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut fill = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                fill += 1;
                if fill > cap {
                    return None;
                }
            }
        }
    }
    Some(fill)
}

/// Min-fill elimination: repeatedly eliminate the vertex whose
/// neighbourhood needs the fewest fill edges, lowest index on ties.
/// Returns the width and decomposition of the resulting ordering.
pub fn treewidth_heuristic(g: &Graph) -> (usize, TreeDecomposition) {
    let order = min_fill_order(g);
    let td = from_elimination_order(g, &order);
    (td.width(), td)
}

pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            if best.is_some_and(|(f, _)| f == 0) {
                break;
            }
            let cap = best.map_or(usize::MAX, |(f, _)| f - 1);
            if let Some(f) = fill_in_at_most(&adj, v, cap) {
                best = Some((f, v));
            }
        }
        let (_, v) = best.expect("a live vertex remains");
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (j, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[j + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Degeneracy: the largest minimum degree over all subgraphs. A lower
/// bound on treewidth.
pub fn degeneracy(g: &Graph) -> usize {
    let mut deg = g.degrees();
    let mut removed = vec![false; g.n()];
    let mut best = 0;
    for _ in 0..g.n() {
        let v = (0..g.n()).filter(|&v| !removed[v]).min_by_key(|&v| deg[v]).unwrap();
        best = best.max(deg[v]);
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

/// Outcome of an exact treewidth computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactTreewidth {
    Found { width: usize, decomposition: TreeDecomposition },
    ExceedsBound,
}

/// Exact treewidth by branch and bound over elimination orderings, for
/// graphs with at most `limit` vertices (at most 64).
///
/// Each candidate width `k` between the degeneracy and the min-fill bound
/// is decided by a depth-first search over sets of eliminated vertices,
/// memoizing sets already shown to fail. Returns `ExceedsBound` when the
/// treewidth is larger than `kmax`.
pub fn treewidth_exact(g: &Graph, kmax: usize, limit: usize) -> Result<ExactTreewidth, DecompError> {
    let limit = limit.min(MAX_EXACT_LIMIT);
    if g.n() > limit {
        return Err(DecompError::TooLarge { n: g.n(), limit });
    }
    let (upper, upper_td) = treewidth_heuristic(g);
    let lower = degeneracy(g);
    if lower > kmax {
        return Ok(ExactTreewidth::ExceedsBound);
    }
    let nbr: Vec<u64> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    for k in lower..upper.min(kmax + 1) {
        let mut search = Search { nbr: &nbr, k, failed: BTreeSet::new(), order: Vec::new() };
        if search.run(0) {
            let mut order = search.order;
            let eliminated = order.iter().fold(0u64, |m, &v| m | 1 << v);
            order.extend((0..g.n()).filter(|&v| eliminated & (1 << v) == 0));
            let td = from_elimination_order(g, &order);
            debug_assert!(td.width() <= k);
            return Ok(ExactTreewidth::Found { width: td.width(), decomposition: td });
        }
    }
    if upper <= kmax {
        Ok(ExactTreewidth::Found { width: upper, decomposition: upper_td })
    } else {
        Ok(ExactTreewidth::ExceedsBound)
    }
}

struct Search<'a> {
    nbr: &'a [u64],
    k: usize,
    failed: BTreeSet<u64>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn all(&self) -> u64 {
        if self.nbr.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.nbr.len()) - 1
        }
    }

    /// Neighbours of `v` in the graph left after eliminating `gone`:
    /// vertices outside `gone` reachable from `v` through `gone`.
    fn reach(&self, gone: u64, v: usize) -> u64 {
        let mut seen = self.nbr[v];
        let mut frontier = seen & gone;
        let mut done = 0u64;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            done |= 1 << u;
            seen |= self.nbr[u];
            frontier |= seen & gone & !done;
        }
        seen & !gone & !(1 << v)
    }

    fn run(&mut self, gone: u64) -> bool {
        let rest = self.all() & !gone;
        if rest.count_ones() as usize <= self.k + 1 {
            return true;
        }
        if self.failed.contains(&gone) {
            return false;
        }
        let verts: Vec<usize> = bits(rest).collect();
        let reach: Vec<u64> = verts.iter().map(|&v| self.reach(gone, v)).collect();
        let candidates: Vec<usize> = (0..verts.len())
            .filter(|&i| reach[i].count_ones() as usize <= self.k)
            .collect();
        // A vertex whose neighbourhood is already a clique can be eliminated
        // first without loss.
        let simplicial = candidates.iter().copied().find(|&i| {
            bits(reach[i]).all(|w| {
                let j = verts.binary_search(&w).unwrap();
                reach[i] & !reach[j] & !(1 << w) == 0
            })
        });
        let branch: Vec<usize> = match simplicial {
            Some(i) => vec![i],
            None => candidates,
        };
        for i in branch {
            let v = verts[i];
            self.order.push(v);
            if self.run(gone | 1 << v) {
                return true;
            }
            self.order.pop();
        }
        self.failed.insert(gone);
        false
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Connected components, each as a sorted vertex list.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
