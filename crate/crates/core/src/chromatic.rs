//! Exact list chromatic numbers by adversary enumeration, and the
//! large-degree dispatch for list edge and list total chromatic numbers.
//!
//! For a graph of treewidth at most `k` whose maximum degree is at least
//! [`threshold`]`(k)`, the list edge chromatic number equals `Δ` and the
//! list total chromatic number equals `Δ + 1`. Below the threshold the
//! value is computed exactly on the line (or total) graph.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::decomp::{validate, DecompError, TreeDecomposition};
use crate::graph::{line_graph, total_graph, Color, ElementId, Graph, ListAssignment, Mode};
use crate::listcolor::{BudgetExhausted, ConflictGraph, DEFAULT_BUDGET};
use crate::treewidth::{treewidth_exact, treewidth_heuristic, ExactTreewidth, DEFAULT_EXACT_LIMIT};

/// Default cap on the number of elements the adversary oracle accepts.
pub const DEFAULT_ORACLE_LIMIT: usize = 8;

/// Degree threshold `(k + 2)·2^(k + 2)` above which the list edge and list
/// total chromatic numbers of a treewidth-`k` graph are `Δ` and `Δ + 1`.
pub fn threshold(k: usize) -> usize {
    (k + 2) << (k + 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticError {
    TooLarge { elements: usize, limit: usize },
    Exceeded { cmax: usize },
    Budget(BudgetExhausted),
    InvalidDecomposition(DecompError),
}

impl fmt::Display for ChromaticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChromaticError::TooLarge { elements, limit } => write!(
                f,
                "{elements} elements exceed the oracle limit of {limit}; instance is out of desk scale"
            ),
            ChromaticError::Exceeded { cmax } => write!(f, "value exceeds {cmax}"),
            ChromaticError::Budget(b) => write!(f, "{b}"),
            ChromaticError::InvalidDecomposition(e) => write!(f, "invalid decomposition: {e}"),
        }
    }
}

impl core::error::Error for ChromaticError {}

impl From<BudgetExhausted> for ChromaticError {
    fn from(b: BudgetExhausted) -> Self {
        ChromaticError::Budget(b)
    }
}

/// An exact oracle answer with, when the value is at least 2, a list
/// assignment of size `value - 1` that admits no proper colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choosability {
    pub value: usize,
    pub certificate: Option<ListAssignment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Threshold,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Threshold => "threshold",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub value: usize,
    pub method: Method,
    pub certificate: Option<ListAssignment>,
}

/// Smallest `c ≤ cmax` such that every assignment of `c`-lists to the
/// vertices of `g` admits a proper list colouring.
pub fn choosability_exact(g: &Graph, cmax: usize, limit: usize) -> Result<Choosability, ChromaticError> {
    let cg = ConflictGraph::from_graph(g);
    let elements = g.elements(Mode::Vertex);
    oracle(&cg, &elements, cmax, limit)
}

/// List edge chromatic number: choosability of the line graph.
pub fn ch_edge_exact(g: &Graph, cmax: usize, limit: usize) -> Result<Choosability, ChromaticError> {
    let (lg, _) = line_graph(g);
    let cg = ConflictGraph::from_graph(&lg);
    oracle(&cg, &g.elements(Mode::Edge), cmax, limit)
}

/// List total chromatic number: choosability of the total graph.
pub fn ch_total_exact(g: &Graph, cmax: usize, limit: usize) -> Result<Choosability, ChromaticError> {
    let (tg, elements) = total_graph(g);
    let cg = ConflictGraph::from_graph(&tg);
    oracle(&cg, &elements, cmax, limit)
}

fn oracle(
    cg: &ConflictGraph,
    elements: &[ElementId],
    cmax: usize,
    limit: usize,
) -> Result<Choosability, ChromaticError> {
    let n = cg.len();
    if n > limit {
        return Err(ChromaticError::TooLarge { elements: n, limit });
    }
    if n == 0 {
        return Ok(Choosability { value: 0, certificate: None });
    }
    let mut previous_hard = None;
    for c in 1..=cmax {
        match find_hard_assignment(cg, c)? {
            None => {
                let certificate = previous_hard.map(|lists: Vec<Vec<Color>>| {
                    let mut out = ListAssignment::new();
                    for (&x, l) in elements.iter().zip(lists) {
                        out.insert(x, l).expect("adversary lists are non-empty");
                    }
                    out
                });
                return Ok(Choosability { value: c, certificate });
            }
            Some(hard) => previous_hard = Some(hard),
        }
    }
    Err(ChromaticError::Exceeded { cmax })
}

/// Elements that survive repeatedly deleting elements with fewer than `c`
/// remaining conflicts. Deleted elements can always be coloured last.
fn c_core(cg: &ConflictGraph, c: usize) -> Vec<usize> {
    let n = cg.len();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = cg.nbrs.iter().map(Vec::len).collect();
    loop {
        let Some(v) = (0..n).find(|&v| alive[v] && deg[v] < c) else { break };
        alive[v] = false;
        for &w in &cg.nbrs[v] {
            deg[w] -= 1;
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

/// Searches canonical `c`-list assignments for one with no proper
/// colouring. Colours are named in order of first use, so each list is a
/// choice of previously used colours plus a block of fresh ones; the
/// universe never exceeds `c` times the number of elements.
fn find_hard_assignment(cg: &ConflictGraph, c: usize) -> Result<Option<Vec<Vec<Color>>>, BudgetExhausted> {
    let core = c_core(cg, c);
    if core.is_empty() {
        return Ok(None);
    }
    let local = |v: usize| core.binary_search(&v).ok();
    let sub = ConflictGraph {
        nbrs: core.iter().map(|&v| cg.nbrs[v].iter().filter_map(|&w| local(w)).collect()).collect(),
    };
    let mut lists: Vec<Vec<Color>> = Vec::with_capacity(core.len());
    let Some(core_lists) = enumerate(&sub, c, 0, &mut lists)? else { return Ok(None) };
    // Elements outside the core get private colours.
    let mut next = (c * core.len()) as Color + 1;
    let mut full = Vec::with_capacity(cg.len());
    for v in 0..cg.len() {
        match local(v) {
            Some(i) => full.push(core_lists[i].clone()),
            None => {
                full.push((next..next + c as Color).collect());
                next += c as Color;
            }
        }
    }
    Ok(Some(full))
}

fn enumerate(
    sub: &ConflictGraph,
    c: usize,
    used: usize,
    lists: &mut Vec<Vec<Color>>,
) -> Result<Option<Vec<Vec<Color>>>, BudgetExhausted> {
    if lists.len() == sub.len() {
        return Ok(match sub.solve(lists, DEFAULT_BUDGET)? {
            Some(_) => None,
            None => Some(lists.clone()),
        });
    }
    let first = lists.is_empty();
    for fresh in 0..=c {
        let old = c - fresh;
        if old > used || (first && old > 0) {
            continue;
        }
        let mut combo: Vec<usize> = (0..old).collect();
        loop {
            let mut list: Vec<Color> = combo.iter().map(|&i| i as Color + 1).collect();
            list.extend((used + 1..=used + fresh).map(|x| x as Color));
            lists.push(list);
            let found = enumerate(sub, c, used + fresh, lists)?;
            lists.pop();
            if found.is_some() {
                return Ok(found);
            }
            if !next_combination(&mut combo, used) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `combo` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Where the dispatch gets its treewidth bound from.
#[derive(Debug, Clone, Copy)]
pub enum WidthSource<'a> {
    /// A caller-supplied decomposition; it must validate.
    Decomposition(&'a TreeDecomposition),
    /// Exact treewidth for small graphs, min-fill otherwise.
    Compute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DispatchConfig {
    pub oracle_limit: usize,
    pub exact_limit: usize,
    pub oracle_only: bool,
}

impl Default for DispatchConfig {
    fn default() -> Self {
        DispatchConfig {
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            exact_limit: DEFAULT_EXACT_LIMIT,
            oracle_only: false,
        }
    }
}

/// A treewidth bound confirmed by a validated decomposition.
pub fn confirmed_width(g: &Graph, source: WidthSource<'_>, exact_limit: usize) -> Result<usize, ChromaticError> {
    let td = match source {
        WidthSource::Decomposition(td) => td.clone(),
        WidthSource::Compute if g.n() <= exact_limit => {
            match treewidth_exact(g, g.n(), exact_limit).map_err(ChromaticError::InvalidDecomposition)? {
                ExactTreewidth::Found { decomposition, .. } => decomposition,
                ExactTreewidth::ExceedsBound => unreachable!("treewidth never exceeds n"),
            }
        }
        WidthSource::Compute => treewidth_heuristic(g).1,
    };
    validate(g, &td).map_err(ChromaticError::InvalidDecomposition)
}

/// List edge chromatic number: `Δ` when `Δ ≥ threshold(k)` for a
/// confirmed width `k`, otherwise the exact oracle with `cmax = 2Δ - 1`.
pub fn ch_edge(g: &Graph, source: WidthSource<'_>, cfg: &DispatchConfig) -> Result<ChromaticResult, ChromaticError> {
    dispatch(g, source, cfg, Mode::Edge)
}

/// List total chromatic number: `Δ + 1` above the threshold, otherwise the
/// exact oracle with `cmax = 2Δ + 1`.
pub fn ch_total(g: &Graph, source: WidthSource<'_>, cfg: &DispatchConfig) -> Result<ChromaticResult, ChromaticError> {
    dispatch(g, source, cfg, Mode::Total)
}

fn dispatch(
    g: &Graph,
    source: WidthSource<'_>,
    cfg: &DispatchConfig,
    mode: Mode,
) -> Result<ChromaticResult, ChromaticError> {
    let delta = g.max_degree();
    if !cfg.oracle_only {
        let k = confirmed_width(g, source, cfg.exact_limit)?;
        if delta >= threshold(k) {
            let value = if mode == Mode::Edge { delta } else { delta + 1 };
            return Ok(ChromaticResult { value, method: Method::Threshold, certificate: None });
        }
    }
    let exact = match mode {
        Mode::Edge => ch_edge_exact(g, (2 * delta).saturating_sub(1).max(1), cfg.oracle_limit)?,
        _ => ch_total_exact(g, 2 * delta + 1, cfg.oracle_limit)?,
    };
    Ok(ChromaticResult { value: exact.value, method: Method::Oracle, certificate: exact.certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::listcolor::{backtrack_color, Backtrack, ColoringProblem};

    fn graph(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::new(n, pairs).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let pairs: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        graph(leaves + 1, &pairs)
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold(1), 24);
        assert_eq!(threshold(2), 64);
        assert_eq!(threshold(3), 160);
    }

    #[test]
    fn oracle_examples() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let k2 = graph(2, &[(0, 1)]);
        assert_eq!(choosability_exact(&k3, 5, 8).unwrap().value, 3);
        assert_eq!(choosability_exact(&c4, 5, 8).unwrap().value, 2);
        assert_eq!(choosability_exact(&Graph::empty(1), 5, 8).unwrap().value, 1);
        assert_eq!(ch_edge_exact(&k2, 5, 8).unwrap().value, 1);
        assert_eq!(ch_edge_exact(&c4, 5, 8).unwrap().value, 2);
        assert_eq!(ch_edge_exact(&k3, 5, 8).unwrap().value, 3);
        assert_eq!(ch_total_exact(&Graph::empty(1), 5, 8).unwrap().value, 1);
        assert_eq!(ch_total_exact(&k2, 5, 8).unwrap().value, 3);
    }

    #[test]
    fn oracle_limits() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(choosability_exact(&k3, 2, 8), Err(ChromaticError::Exceeded { cmax: 2 }));
        assert_eq!(
            choosability_exact(&Graph::empty(9), 2, 8),
            Err(ChromaticError::TooLarge { elements: 9, limit: 8 })
        );
    }

    #[test]
    fn certificates_are_unsat() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let res = ch_total_exact(&graph(2, &[(0, 1)]), 5, 8).unwrap();
        let cert = res.certificate.unwrap();
        let k2 = graph(2, &[(0, 1)]);
        assert!(k2.elements(Mode::Total).iter().all(|&x| cert.get(x).unwrap().len() == 2));
        let p = ColoringProblem::new(&k2, Mode::Total, &cert).unwrap();
        assert_eq!(backtrack_color(&p, DEFAULT_BUDGET), Ok(Backtrack::Unsat));

        let res = choosability_exact(&k3, 5, 8).unwrap();
        let cert = res.certificate.unwrap();
        let p = ColoringProblem::new(&k3, Mode::Vertex, &cert).unwrap();
        assert_eq!(backtrack_color(&p, DEFAULT_BUDGET), Ok(Backtrack::Unsat));
        assert!(choosability_exact(&Graph::empty(1), 5, 8).unwrap().certificate.is_none());
    }

    #[test]
    fn certificate_covers_non_core_elements() {
        // K3 plus a pendant vertex: the pendant is outside the 2-core.
        let g = graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let res = choosability_exact(&g, 5, 8).unwrap();
        assert_eq!(res.value, 3);
        let cert = res.certificate.unwrap();
        assert_eq!(cert.len(), 4);
        let p = ColoringProblem::new(&g, Mode::Vertex, &cert).unwrap();
        assert_eq!(backtrack_color(&p, DEFAULT_BUDGET), Ok(Backtrack::Unsat));
    }

    #[test]
    fn dispatch_examples() {
        let cfg = DispatchConfig::default();
        let s24 = star(24);
        let r = ch_edge(&s24, WidthSource::Compute, &cfg).unwrap();
        assert_eq!((r.value, r.method), (24, Method::Threshold));
        let r = ch_total(&s24, WidthSource::Compute, &cfg).unwrap();
        assert_eq!((r.value, r.method), (25, Method::Threshold));

        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let r = ch_edge(&p4, WidthSource::Compute, &cfg).unwrap();
        assert_eq!((r.value, r.method), (2, Method::Oracle));
        let r = ch_edge(&star(3), WidthSource::Compute, &cfg).unwrap();
        assert_eq!((r.value, r.method), (3, Method::Oracle));

        let k2 = graph(2, &[(0, 1)]);
        let r = ch_total(&k2, WidthSource::Compute, &cfg).unwrap();
        assert_eq!((r.value, r.method), (3, Method::Oracle));
        let r = ch_total(&Graph::empty(1), WidthSource::Compute, &cfg).unwrap();
        assert_eq!((r.value, r.method), (1, Method::Oracle));
    }

    #[test]
    fn dispatch_refuses_bad_decomposition() {
        let s24 = star(24);
        let td = TreeDecomposition::new(25, vec![(0..25).collect()], vec![]);
        let cfg = DispatchConfig::default();
        // Width 24 is valid, but far too wide for the threshold: oracle is out of scale.
        assert!(matches!(
            ch_edge(&s24, WidthSource::Decomposition(&td), &cfg),
            Err(ChromaticError::TooLarge { .. })
        ));
        let bad = TreeDecomposition::new(25, vec![vec![0, 1]], vec![]);
        assert!(matches!(
            ch_edge(&s24, WidthSource::Decomposition(&bad), &cfg),
            Err(ChromaticError::InvalidDecomposition(_))
        ));
    }
}
