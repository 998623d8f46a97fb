//! Text and JSON file formats. Vertex ids in files are 1-indexed.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;
use twlist_core::construct::{PeelRecord, PeelStack};
use twlist_core::decomp::{validate, DecompError, RootedDecomposition, TreeDecomposition};
use twlist_core::graph::GraphError;
use twlist_core::reduction::{MccInstance, NormalizedMcc, ReductionOutput, Role};
use twlist_core::{Color, Coloring, ElementId, Graph, ListAssignment};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

fn line_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Line { line, msg: msg.into() }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn num(line: usize, s: &str) -> Result<usize, FormatError> {
    s.parse().map_err(|_| line_err(line, format!("expected a number, found `{s}`")))
}

fn vertex(line: usize, s: &str, n: usize) -> Result<usize, FormatError> {
    let v = num(line, s)?;
    if v == 0 || v > n {
        return Err(line_err(line, format!("vertex {v} outside 1..{n}")));
    }
    Ok(v - 1)
}

/// `p <n> <m>` (a DIMACS `p edge <n> <m>` header is also accepted), then
/// `e <u> <v>` per edge.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::Invalid("empty graph file".into()))?;
    let nums: Vec<&str> = match header.as_slice() {
        ["p", kind, n, m] if !kind.starts_with(|c: char| c.is_ascii_digit()) => vec![n, m],
        ["p", n, m] => vec![n, m],
        _ => return Err(line_err(hl, "expected `p <n> <m>`")),
    };
    let (n, m) = (num(hl, nums[0])?, num(hl, nums[1])?);
    let mut pairs = Vec::with_capacity(m);
    for (ln, f) in lines {
        match f.as_slice() {
            ["e", u, v] => pairs.push((vertex(ln, u, n)?, vertex(ln, v, n)?)),
            _ => return Err(line_err(ln, "expected `e <u> <v>`")),
        }
    }
    if pairs.len() != m {
        return Err(FormatError::Invalid(format!("header declares {m} edges, found {}", pairs.len())));
    }
    Ok(Graph::new(n, &pairs)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// `td <nodes> <width> <n>`, `b <node> <vertices…>`, `t <a> <b>`; nodes
/// are 1-indexed.
pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::Invalid("empty decomposition file".into()))?;
    let ["td", nodes, width, n] = header.as_slice() else {
        return Err(line_err(hl, "expected `td <nodes> <width> <n>`"));
    };
    let (nodes, width, n) = (num(hl, nodes)?, num(hl, width)?, num(hl, n)?);
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nodes];
    let mut edges = Vec::new();
    for (ln, f) in lines {
        match f.as_slice() {
            ["b", id, rest @ ..] => {
                let id = vertex(ln, id, nodes)?;
                if bags[id].is_some() {
                    return Err(line_err(ln, format!("bag {} given twice", id + 1)));
                }
                bags[id] = Some(rest.iter().map(|s| vertex(ln, s, n)).collect::<Result<_, _>>()?);
            }
            ["t", a, b] => edges.push((vertex(ln, a, nodes)?, vertex(ln, b, nodes)?)),
            _ => return Err(line_err(ln, "expected `b …` or `t <a> <b>`")),
        }
    }
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| FormatError::Invalid(format!("bag {} missing", i + 1))))
        .collect::<Result<_, _>>()?;
    let td = TreeDecomposition::new(n, bags, edges);
    if td.width() != width {
        return Err(FormatError::Invalid(format!("header declares width {width}, bags give {}", td.width())));
    }
    Ok(td)
}

pub fn write_decomposition(td: &TreeDecomposition) -> String {
    let mut out = format!("td {} {} {}\n", td.num_nodes(), td.width(), td.n());
    for (t, bag) in td.bags().iter().enumerate() {
        out.push_str(&format!("b {}", t + 1));
        for v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        out.push_str(&format!("t {} {}\n", a + 1, b + 1));
    }
    out
}

/// The decomposition followed by comment lines with the root, node
/// heights and the highest node `t_v` of every vertex.
pub fn write_rooted(r: &RootedDecomposition) -> String {
    let mut out = write_decomposition(&r.base);
    out.push_str(&format!("c root {}\n", r.root + 1));
    for (t, h) in r.heights.iter().enumerate() {
        out.push_str(&format!("c height {} {}\n", t + 1, h));
    }
    for (v, t) in r.min_node.iter().enumerate() {
        if let Some(t) = t {
            out.push_str(&format!("c tv {} {}\n", v + 1, t + 1));
        }
    }
    out
}

pub fn element_key(g: &Graph, x: ElementId) -> String {
    match x {
        ElementId::Vertex(v) => (v + 1).to_string(),
        ElementId::Edge(e) => {
            let (u, v) = g.edge(e);
            format!("{}-{}", u + 1, v + 1)
        }
    }
}

fn parse_vertex_key(g: &Graph, key: &str) -> Result<ElementId, FormatError> {
    let v: usize = key.parse().map_err(|_| FormatError::Invalid(format!("bad vertex key `{key}`")))?;
    if v == 0 || v > g.n() {
        return Err(FormatError::Invalid(format!("vertex {v} outside 1..{}", g.n())));
    }
    Ok(ElementId::Vertex(v - 1))
}

fn parse_edge_key(g: &Graph, key: &str) -> Result<ElementId, FormatError> {
    let bad = || FormatError::Invalid(format!("bad edge key `{key}`"));
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    let (u, v): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if u == 0 || v == 0 {
        return Err(bad());
    }
    g.edge_index(u - 1, v - 1)
        .map(ElementId::Edge)
        .ok_or_else(|| FormatError::Invalid(format!("{u}-{v} is not an edge")))
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile<T> {
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    vertices: BTreeMap<String, T>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    edges: BTreeMap<String, T>,
}

fn parse_elements<T: for<'de> Deserialize<'de>>(g: &Graph, text: &str) -> Result<Vec<(ElementId, T)>, FormatError> {
    let file: ElementFile<T> = serde_json::from_str(text)?;
    let mut out = Vec::new();
    for (k, v) in file.vertices {
        out.push((parse_vertex_key(g, &k)?, v));
    }
    for (k, v) in file.edges {
        out.push((parse_edge_key(g, &k)?, v));
    }
    Ok(out)
}

/// Keys in element order, which the `preserve_order` map keeps.
fn write_elements(g: &Graph, items: impl Iterator<Item = (ElementId, Value)>) -> String {
    let mut vertices = Map::new();
    let mut edges = Map::new();
    for (x, value) in items {
        let key = element_key(g, x);
        match x {
            ElementId::Vertex(_) => vertices.insert(key, value),
            ElementId::Edge(_) => edges.insert(key, value),
        };
    }
    let mut root = Map::new();
    if !vertices.is_empty() {
        root.insert("vertices".into(), Value::Object(vertices));
    }
    if !edges.is_empty() {
        root.insert("edges".into(), Value::Object(edges));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
    text.push('\n');
    text
}

pub fn parse_lists(g: &Graph, text: &str) -> Result<ListAssignment, FormatError> {
    let mut lists = ListAssignment::new();
    for (x, colors) in parse_elements::<Vec<Color>>(g, text)? {
        lists.insert(x, colors)?;
    }
    Ok(lists)
}

pub fn write_lists(g: &Graph, lists: &ListAssignment) -> String {
    write_elements(g, lists.iter().map(|(x, c)| (x, Value::from(c.to_vec()))))
}

pub fn parse_coloring(g: &Graph, text: &str) -> Result<Coloring, FormatError> {
    Ok(parse_elements::<Color>(g, text)?.into_iter().collect())
}

pub fn write_coloring(g: &Graph, c: &Coloring) -> String {
    write_elements(g, c.iter().map(|(x, col)| (x, Value::from(col))))
}

/// A JSON array of 1-indexed vertices.
pub fn parse_path(text: &str) -> Result<Vec<usize>, FormatError> {
    let raw: Vec<usize> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|v| v.checked_sub(1).ok_or_else(|| FormatError::Invalid("vertex 0 in path".into())))
        .collect()
}

pub fn write_path(path: &[usize]) -> String {
    let raw: Vec<usize> = path.iter().map(|v| v + 1).collect();
    let mut text = serde_json::to_string(&raw).expect("serializable");
    text.push('\n');
    text
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MccFile {
    k: usize,
    classes: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
}

/// `{"k": …, "classes": [[…], …], "edges": [[u, v], …]}` with 1-indexed
/// vertices numbered `1..=n`.
pub fn parse_mcc(text: &str) -> Result<MccInstance, FormatError> {
    let file: MccFile = serde_json::from_str(text)?;
    if file.classes.len() != file.k {
        return Err(FormatError::Invalid(format!("k = {} but {} classes given", file.k, file.classes.len())));
    }
    let n: usize = file.classes.iter().map(Vec::len).sum();
    let zero = || FormatError::Invalid("vertex ids start at 1".into());
    let classes: Vec<Vec<usize>> = file
        .classes
        .iter()
        .map(|c| c.iter().map(|&v| v.checked_sub(1).ok_or_else(zero)).collect())
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = file
        .edges
        .iter()
        .map(|&[u, v]| Ok((u.checked_sub(1).ok_or_else(zero)?, v.checked_sub(1).ok_or_else(zero)?)))
        .collect::<Result<_, FormatError>>()?;
    Ok(MccInstance { graph: Graph::new(n, &pairs)?, classes })
}

pub fn write_mcc(m: &MccInstance) -> String {
    let file = MccFile {
        k: m.k(),
        classes: m.classes.iter().map(|c| c.iter().map(|v| v + 1).collect()).collect(),
        edges: m.graph.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("serializable");
    text.push('\n');
    text
}

pub fn role_name(role: Role) -> String {
    match role {
        Role::Path { class, offset } => format!("P_{class}[{offset}]"),
        Role::Connector { class, index } => format!("Q_{class}[{index}]"),
    }
}

pub fn parse_role(s: &str) -> Result<Role, FormatError> {
    let bad = || FormatError::Invalid(format!("bad role `{s}`"));
    let (head, rest) = s.split_at(s.find('_').ok_or_else(bad)?);
    let (class, idx) = rest[1..].strip_suffix(']').and_then(|r| r.split_once('[')).ok_or_else(bad)?;
    let (class, idx): (usize, usize) = (class.parse().map_err(|_| bad())?, idx.parse().map_err(|_| bad())?);
    match head {
        "P" => Ok(Role::Path { class, offset: idx }),
        "Q" => Ok(Role::Connector { class, index: idx }),
        _ => Err(bad()),
    }
}

/// `{"1": "P_1[0]", …}`.
pub fn write_roles(roles: &[Role]) -> String {
    let map: Map<String, Value> =
        roles.iter().enumerate().map(|(v, &r)| ((v + 1).to_string(), Value::from(role_name(r)))).collect();
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
    text.push('\n');
    text
}

pub fn parse_roles(text: &str, n: usize) -> Result<Vec<Role>, FormatError> {
    let raw: BTreeMap<String, String> = serde_json::from_str(text)?;
    let mut roles = vec![None; n];
    for (k, name) in raw {
        let v: usize = k.parse().map_err(|_| FormatError::Invalid(format!("bad vertex key `{k}`")))?;
        if v == 0 || v > n {
            return Err(FormatError::Invalid(format!("vertex {v} outside 1..{n}")));
        }
        roles[v - 1] = Some(parse_role(&name)?);
    }
    roles
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| FormatError::Invalid(format!("vertex {} has no role", v + 1))))
        .collect()
}

/// How a reduction was built, enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    /// `e_0, …, e_{m−1}` over normalized vertices, 1-indexed.
    pub edge_order: Vec<[usize; 2]>,
    /// Original vertex (1-indexed) of each normalized vertex.
    pub origin: Vec<Option<usize>>,
}

impl Provenance {
    pub fn of(m: &NormalizedMcc) -> Self {
        Provenance {
            k: m.k,
            p: m.p,
            q: m.q,
            n: m.n(),
            edge_order: m.graph.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
            origin: m.origin.iter().map(|o| o.map(|v| v + 1)).collect(),
        }
    }

    pub fn to_mcc(&self) -> Result<NormalizedMcc, FormatError> {
        if self.n != self.k * self.p || self.origin.len() != self.n {
            return Err(FormatError::Invalid("provenance sizes disagree".into()));
        }
        let pairs: Vec<(usize, usize)> = self
            .edge_order
            .iter()
            .map(|&[u, v]| match (u.checked_sub(1), v.checked_sub(1)) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(FormatError::Invalid("vertex ids start at 1".into())),
            })
            .collect::<Result<_, _>>()?;
        let graph = Graph::new(self.n, &pairs)?;
        let originals = self.origin.iter().flatten().copied().max().unwrap_or(0);
        let mut label = vec![usize::MAX; originals];
        for (v, o) in self.origin.iter().enumerate() {
            if let Some(o) = o {
                label[o - 1] = v;
            }
        }
        if label.contains(&usize::MAX) {
            return Err(FormatError::Invalid("origin map skips an original vertex".into()));
        }
        let origin = self.origin.iter().map(|o| o.map(|v| v - 1)).collect();
        Ok(NormalizedMcc { k: self.k, p: self.p, q: self.q, graph, origin, label })
    }
}

pub const GRAPH_FILE: &str = "graph.txt";
pub const LISTS_FILE: &str = "lists.json";
pub const ROLES_FILE: &str = "roles.json";
pub const DECOMP_FILE: &str = "decomposition.td";
pub const PROVENANCE_FILE: &str = "provenance.json";

pub fn write_reduction_dir(dir: &Path, r: &ReductionOutput) -> Result<(), FormatError> {
    fs::create_dir_all(dir).map_err(|source| FormatError::Io { path: dir.display().to_string(), source })?;
    write_file(&dir.join(GRAPH_FILE), &write_graph(&r.h))?;
    write_file(&dir.join(LISTS_FILE), &write_lists(&r.h, &r.lists))?;
    write_file(&dir.join(ROLES_FILE), &write_roles(&r.roles))?;
    write_file(&dir.join(DECOMP_FILE), &write_decomposition(&r.pdecomp))?;
    let mut prov = serde_json::to_string_pretty(&Provenance::of(&r.mcc))?;
    prov.push('\n');
    write_file(&dir.join(PROVENANCE_FILE), &prov)
}

/// The graph and position lists of a reduction directory.
pub fn read_lhp_dir(dir: &Path) -> Result<(Graph, ListAssignment), FormatError> {
    let g = parse_graph(&read_file(&dir.join(GRAPH_FILE))?)?;
    let lists = parse_lists(&g, &read_file(&dir.join(LISTS_FILE))?)?;
    Ok((g, lists))
}

pub fn read_provenance(dir: &Path) -> Result<Provenance, FormatError> {
    Ok(serde_json::from_str(&read_file(&dir.join(PROVENANCE_FILE))?)?)
}

/// Checks a decomposition file against its graph.
pub fn read_valid_decomposition(g: &Graph, text: &str) -> Result<(TreeDecomposition, usize), FormatError> {
    let td = parse_decomposition(text)?;
    let w = validate(g, &td)?;
    Ok((td, w))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum TraceRecord {
    Edge(String),
    Twin { twins: Vec<usize>, common: Vec<usize>, edges: Vec<String> },
}

/// The peel as a JSON array, edges as `"u-v"` keys.
pub fn write_trace(g: &Graph, stack: &PeelStack) -> String {
    let key = |e: usize| element_key(g, ElementId::Edge(e));
    let records: Vec<TraceRecord> = stack
        .records
        .iter()
        .map(|r| match r {
            PeelRecord::Edge(e) => TraceRecord::Edge(key(*e)),
            PeelRecord::Twin { twins, common, edges } => TraceRecord::Twin {
                twins: twins.iter().map(|v| v + 1).collect(),
                common: common.iter().map(|v| v + 1).collect(),
                edges: edges.iter().map(|&e| key(e)).collect(),
            },
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&records).expect("serializable");
    text.push('\n');
    text
}

pub fn parse_trace(g: &Graph, text: &str) -> Result<PeelStack, FormatError> {
    let raw: Vec<TraceRecord> = serde_json::from_str(text)?;
    let edge = |k: &str| match parse_edge_key(g, k)? {
        ElementId::Edge(e) => Ok(e),
        ElementId::Vertex(_) => unreachable!(),
    };
    let vertices = |vs: &[usize]| -> Result<Vec<usize>, FormatError> {
        vs.iter().map(|&v| vertex(0, &v.to_string(), g.n())).collect()
    };
    let records = raw
        .iter()
        .map(|r| match r {
            TraceRecord::Edge(k) => Ok(PeelRecord::Edge(edge(k)?)),
            TraceRecord::Twin { twins, common, edges } => Ok(PeelRecord::Twin {
                twins: vertices(twins)?,
                common: vertices(common)?,
                edges: edges.iter().map(|k| edge(k)).collect::<Result<_, FormatError>>()?,
            }),
        })
        .collect::<Result<_, FormatError>>()?;
    Ok(PeelStack { records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use twlist_core::Mode;

    #[test]
    fn graph_round_trip() {
        let text = "c triangle\np 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert!(parse_graph("p edge 2 1\ne 1 2\n").is_ok());
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph("p 2 1\ne 1 3\n"), Err(FormatError::Line { line: 2, .. })));
        assert!(matches!(parse_graph("p 2 2\ne 1 2\n"), Err(FormatError::Invalid(_))));
        assert!(matches!(parse_graph("p 2 1\ne 1 1\n"), Err(FormatError::Graph(GraphError::SelfLoop(_)))));
        assert!(parse_graph("").is_err());
        assert!(parse_graph("q 1 0\n").is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let td = TreeDecomposition::new(4, vec![vec![0, 1, 2], vec![2, 3]], vec![(0, 1)]);
        let text = write_decomposition(&td);
        assert_eq!(text, "td 2 2 4\nb 1 1 2 3\nb 2 3 4\nt 1 2\n");
        assert_eq!(parse_decomposition(&text).unwrap(), td);
        assert!(parse_decomposition("td 2 1 4\nb 1 1 2 3\nb 2 3 4\nt 1 2\n").is_err());
        assert!(parse_decomposition("td 2 2 4\nb 1 1 2 3\nt 1 2\n").is_err());
    }

    #[test]
    fn lists_and_colorings_round_trip() {
        let g = parse_graph("p 3 2\ne 1 2\ne 2 3\n").unwrap();
        let text = r#"{"vertices": {"2": [3, 1]}, "edges": {"1-2": [1, 2], "3-2": [5]}}"#;
        let l = parse_lists(&g, text).unwrap();
        assert_eq!(l.get(ElementId::Vertex(1)), Some(&[1, 3][..]));
        assert_eq!(l.get(ElementId::Edge(1)), Some(&[5][..]));
        assert_eq!(parse_lists(&g, &write_lists(&g, &l)).unwrap(), l);
        assert!(parse_lists(&g, r#"{"edges": {"1-3": [1]}}"#).is_err());
        assert!(parse_lists(&g, r#"{"vertices": {"1": []}}"#).is_err());
        assert!(parse_lists(&g, r#"{"vertices": {"1": [0]}}"#).is_err());
        assert!(parse_lists(&g, r#"{"colours": {}}"#).is_err());

        let c: Coloring = [(ElementId::Edge(0), 2), (ElementId::Edge(1), 1)].into_iter().collect();
        let text = write_coloring(&g, &c);
        assert_eq!(parse_coloring(&g, &text).unwrap(), c);
        let u = ListAssignment::uniform(&g, Mode::Total, &[1, 2]).unwrap();
        let text = write_lists(&g, &u);
        assert!(text.find("\"1\"").unwrap() < text.find("\"3\"").unwrap());
    }

    #[test]
    fn paths_mcc_roles() {
        assert_eq!(parse_path(&write_path(&[2, 0, 1])).unwrap(), vec![2, 0, 1]);
        assert!(parse_path("[0]").is_err());
        let text = r#"{"k": 3, "classes": [[1], [2], [3]], "edges": [[1, 2], [2, 3]]}"#;
        let m = parse_mcc(text).unwrap();
        assert_eq!(m.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(parse_mcc(&write_mcc(&m)).unwrap(), m);
        assert!(parse_mcc(r#"{"k": 2, "classes": [[1], [2], [3]], "edges": []}"#).is_err());
        for role in [Role::Path { class: 2, offset: 17 }, Role::Connector { class: 1, index: 3 }] {
            assert_eq!(parse_role(&role_name(role)).unwrap(), role);
        }
        assert!(parse_role("R_1[2]").is_err());
    }
}
