//! List colouring deciders and constructors: greedy, complete
//! backtracking, and bipartite list edge colouring.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Color, Coloring, ElementId, Graph, GraphError, ListAssignment, Mode};

/// Default decision budget for [`backtrack_color`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListColorError {
    MissingList(ElementId),
    Graph(GraphError),
    BadOrder,
    GreedyStuck(ElementId),
    NotBipartite,
    ListTooShort { element: ElementId, len: usize, needed: usize },
}

impl fmt::Display for ListColorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListColorError::MissingList(x) => write!(f, "{x} has no list"),
            ListColorError::Graph(e) => write!(f, "{e}"),
            ListColorError::BadOrder => f.write_str("order is not a permutation of the elements"),
            ListColorError::GreedyStuck(x) => write!(f, "greedy colouring stuck at {x}"),
            ListColorError::NotBipartite => f.write_str("graph is not bipartite"),
            ListColorError::ListTooShort { element, len, needed } => {
                write!(f, "list of {element} has {len} colours, {needed} needed")
            }
        }
    }
}

impl core::error::Error for ListColorError {}

impl From<GraphError> for ListColorError {
    fn from(e: GraphError) -> Self {
        ListColorError::Graph(e)
    }
}

/// The backtracking search ran out of decisions before reaching an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExhausted {
    pub decisions: u64,
}

impl fmt::Display for BudgetExhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search budget of {} decisions exhausted", self.decisions)
    }
}

impl core::error::Error for BudgetExhausted {}

/// A graph, a colouring mode, and a list for every element of the mode.
#[derive(Debug, Clone, Copy)]
pub struct ColoringProblem<'a> {
    graph: &'a Graph,
    mode: Mode,
    lists: &'a ListAssignment,
}

impl<'a> ColoringProblem<'a> {
    pub fn new(graph: &'a Graph, mode: Mode, lists: &'a ListAssignment) -> Result<Self, ListColorError> {
        lists.check(graph)?;
        if let Some(x) = graph.elements(mode).into_iter().find(|&x| lists.get(x).is_none()) {
            return Err(ListColorError::MissingList(x));
        }
        Ok(ColoringProblem { graph, mode, lists })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn lists(&self) -> &'a ListAssignment {
        self.lists
    }

    fn conflict_graph(&self) -> (Vec<ElementId>, ConflictGraph) {
        let elements = self.graph.elements(self.mode);
        let local = |x: ElementId| elements.binary_search(&x).unwrap();
        let nbrs = elements
            .iter()
            .map(|&x| self.graph.conflicts(self.mode, x).into_iter().map(local).collect())
            .collect();
        (elements, ConflictGraph { nbrs })
    }
}

/// Colours `order` one element at a time, each with the smallest list
/// colour unused by its already coloured conflicts.
pub fn greedy_color(p: &ColoringProblem<'_>, order: &[ElementId]) -> Result<Coloring, ListColorError> {
    let mut expected = p.graph.elements(p.mode);
    let mut given = order.to_vec();
    given.sort_unstable();
    expected.sort_unstable();
    if given != expected {
        return Err(ListColorError::BadOrder);
    }
    let mut c = Coloring::new();
    for &x in order {
        let used: Vec<Color> =
            p.graph.conflicts(p.mode, x).into_iter().filter_map(|y| c.get(y)).collect();
        let pick = p.lists.get(x).unwrap().iter().copied().find(|col| !used.contains(col));
        match pick {
            Some(col) => c.set(x, col),
            None => return Err(ListColorError::GreedyStuck(x)),
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backtrack {
    Colorable(Coloring),
    Unsat,
}

/// Complete depth-first search: elements in element order, colours in
/// ascending order, with forward checking. The first colouring found is
/// the lexicographically smallest one.
pub fn backtrack_color(p: &ColoringProblem<'_>, budget: u64) -> Result<Backtrack, BudgetExhausted> {
    let (elements, cg) = p.conflict_graph();
    let lists: Vec<Vec<Color>> = elements.iter().map(|&x| p.lists.get(x).unwrap().to_vec()).collect();
    Ok(match cg.solve(&lists, budget)? {
        Some(colors) => Backtrack::Colorable(elements.into_iter().zip(colors).collect()),
        None => Backtrack::Unsat,
    })
}

/// A proper list edge colouring of a bipartite graph whose lists all have
/// at least `Δ` colours. Such a colouring always exists (Galvin), so a
/// failed search is a bug and panics.
pub fn bipartite_list_edge_color(h: &Graph, lists: &ListAssignment) -> Result<Coloring, ListColorError> {
    let p = ColoringProblem::new(h, Mode::Edge, lists)?;
    if !h.is_bipartite() {
        return Err(ListColorError::NotBipartite);
    }
    let needed = h.max_degree();
    for e in 0..h.m() {
        let len = lists.get(ElementId::Edge(e)).unwrap().len();
        if len < needed {
            return Err(ListColorError::ListTooShort { element: ElementId::Edge(e), len, needed });
        }
    }
    match backtrack_color(&p, u64::MAX).expect("unbounded budget") {
        Backtrack::Colorable(c) => Ok(c),
        Backtrack::Unsat => panic!("bipartite graph with lists of size Δ has no list edge colouring"),
    }
}

/// Conflict structure over elements `0..N`; neighbour lists hold local
/// indices.
#[derive(Debug, Clone)]
pub(crate) struct ConflictGraph {
    pub(crate) nbrs: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub(crate) fn from_graph(g: &Graph) -> Self {
        ConflictGraph { nbrs: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect() }
    }

    pub(crate) fn len(&self) -> usize {
        self.nbrs.len()
    }

    /// Lexicographically first proper colouring with `colors[i] ∈ lists[i]`.
    /// Lists must be sorted.
    pub(crate) fn solve(&self, lists: &[Vec<Color>], budget: u64) -> Result<Option<Vec<Color>>, BudgetExhausted> {
        let mut palette: Vec<Color> = lists.iter().flatten().copied().collect();
        palette.sort_unstable();
        palette.dedup();
        let width = palette.len();
        let local: Vec<Vec<usize>> = lists
            .iter()
            .map(|l| l.iter().map(|c| palette.binary_search(c).unwrap()).collect())
            .collect();
        let n = self.nbrs.len();
        let mut state = SearchState {
            cg: self,
            lists: &local,
            width,
            forbidden: vec![0u32; n * width],
            available: local.iter().map(Vec::len).collect(),
            chosen: vec![usize::MAX; n],
            decisions: 0,
            budget,
        };
        if state.available.contains(&0) {
            return Ok(None);
        }
        Ok(state.run(0)?.then(|| state.chosen.iter().map(|&c| palette[c]).collect()))
    }
}

struct SearchState<'a> {
    cg: &'a ConflictGraph,
    lists: &'a [Vec<usize>],
    width: usize,
    forbidden: Vec<u32>,
    available: Vec<usize>,
    chosen: Vec<usize>,
    decisions: u64,
    budget: u64,
}

impl SearchState<'_> {
    /// Forbids `c` on the uncoloured conflicts of `i`; false on a wipeout.
    fn forbid(&mut self, i: usize, c: usize) -> bool {
        let mut ok = true;
        for &j in &self.cg.nbrs[i] {
            if self.chosen[j] != usize::MAX {
                continue;
            }
            let slot = &mut self.forbidden[j * self.width + c];
            *slot += 1;
            if *slot == 1 && self.lists[j].binary_search(&c).is_ok() {
                self.available[j] -= 1;
                if self.available[j] == 0 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn permit(&mut self, i: usize, c: usize) {
        for &j in &self.cg.nbrs[i] {
            if self.chosen[j] != usize::MAX {
                continue;
            }
            let slot = &mut self.forbidden[j * self.width + c];
            *slot -= 1;
            if *slot == 0 && self.lists[j].binary_search(&c).is_ok() {
                self.available[j] += 1;
            }
        }
    }

    fn run(&mut self, i: usize) -> Result<bool, BudgetExhausted> {
        if i == self.chosen.len() {
            return Ok(true);
        }
        for idx in 0..self.lists[i].len() {
            let c = self.lists[i][idx];
            if self.forbidden[i * self.width + c] > 0 {
                continue;
            }
            self.decisions += 1;
            if self.decisions > self.budget {
                return Err(BudgetExhausted { decisions: self.budget });
            }
            let ok = self.forbid(i, c);
            self.chosen[i] = c;
            if ok && self.run(i + 1)? {
                return Ok(true);
            }
            self.chosen[i] = usize::MAX;
            self.permit(i, c);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::check_coloring;

    fn k3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn lists(g: &Graph, mode: Mode, ls: &[&[Color]]) -> ListAssignment {
        let mut out = ListAssignment::new();
        for (x, l) in g.elements(mode).into_iter().zip(ls) {
            out.insert(x, l.iter().copied()).unwrap();
        }
        out
    }

    #[test]
    fn greedy_examples() {
        let g = k3();
        let l = ListAssignment::uniform(&g, Mode::Edge, &[1, 2, 3]).unwrap();
        let p = ColoringProblem::new(&g, Mode::Edge, &l).unwrap();
        let order = [ElementId::Edge(2), ElementId::Edge(0), ElementId::Edge(1)];
        let c = greedy_color(&p, &order).unwrap();
        assert_eq!(check_coloring(&g, Mode::Edge, &c, Some(&l)), Ok(()));

        let p2 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let l = lists(&p2, Mode::Edge, &[&[1], &[1]]);
        let p = ColoringProblem::new(&p2, Mode::Edge, &l).unwrap();
        let order = p2.elements(Mode::Edge);
        assert_eq!(greedy_color(&p, &order), Err(ListColorError::GreedyStuck(ElementId::Edge(1))));
        assert_eq!(greedy_color(&p, &order[..1]), Err(ListColorError::BadOrder));
    }

    #[test]
    fn backtrack_examples() {
        let g = k3();
        let l = ListAssignment::uniform(&g, Mode::Vertex, &[1, 2]).unwrap();
        let p = ColoringProblem::new(&g, Mode::Vertex, &l).unwrap();
        assert_eq!(backtrack_color(&p, DEFAULT_BUDGET), Ok(Backtrack::Unsat));

        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let l = ListAssignment::uniform(&c4, Mode::Vertex, &[1, 2]).unwrap();
        let p = ColoringProblem::new(&c4, Mode::Vertex, &l).unwrap();
        let Ok(Backtrack::Colorable(c)) = backtrack_color(&p, DEFAULT_BUDGET) else { panic!() };
        assert_eq!(check_coloring(&c4, Mode::Vertex, &c, Some(&l)), Ok(()));
        assert_eq!(c.get(ElementId::Vertex(0)), Some(1));

        // Edges (0,1), (1,2), (0,2) with lists {1,2}, {2,3}, {1,3}.
        let l = lists(&g, Mode::Edge, &[&[1, 2], &[2, 3], &[1, 3]]);
        let p = ColoringProblem::new(&g, Mode::Edge, &l).unwrap();
        let Ok(Backtrack::Colorable(c)) = backtrack_color(&p, DEFAULT_BUDGET) else { panic!() };
        let got: Vec<_> = c.iter().map(|(_, col)| col).collect();
        assert_eq!(got, vec![1, 2, 3]);
    }

    #[test]
    fn budget_is_not_unsat() {
        let g = Graph::new(5, &(0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect::<Vec<_>>()).unwrap();
        let l = ListAssignment::uniform(&g, Mode::Vertex, &[1, 2, 3, 4]).unwrap();
        let p = ColoringProblem::new(&g, Mode::Vertex, &l).unwrap();
        assert_eq!(backtrack_color(&p, 3), Err(BudgetExhausted { decisions: 3 }));
        assert_eq!(backtrack_color(&p, DEFAULT_BUDGET), Ok(Backtrack::Unsat));
    }

    #[test]
    fn missing_list_is_rejected() {
        let g = k3();
        let l = lists(&g, Mode::Edge, &[&[1], &[2]]);
        assert!(matches!(
            ColoringProblem::new(&g, Mode::Edge, &l),
            Err(ListColorError::MissingList(ElementId::Edge(2)))
        ));
    }

    #[test]
    fn bipartite_examples() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let l = ListAssignment::uniform(&c4, Mode::Edge, &[1, 2]).unwrap();
        let c = bipartite_list_edge_color(&c4, &l).unwrap();
        assert_eq!(check_coloring(&c4, Mode::Edge, &c, Some(&l)), Ok(()));

        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let ls: Vec<Vec<Color>> = (0..4).map(|e| (4 * e + 1..=4 * e + 4).collect()).collect();
        let refs: Vec<&[Color]> = ls.iter().map(Vec::as_slice).collect();
        let l = lists(&star, Mode::Edge, &refs);
        let c = bipartite_list_edge_color(&star, &l).unwrap();
        assert_eq!(check_coloring(&star, Mode::Edge, &c, Some(&l)), Ok(()));

        let l = ListAssignment::uniform(&k3(), Mode::Edge, &[1, 2, 3]).unwrap();
        assert_eq!(bipartite_list_edge_color(&k3(), &l), Err(ListColorError::NotBipartite));
        let l = ListAssignment::uniform(&star, Mode::Edge, &[1, 2, 3]).unwrap();
        assert!(matches!(
            bipartite_list_edge_color(&star, &l),
            Err(ListColorError::ListTooShort { needed: 4, .. })
        ));
    }
}
