//! Simple graphs on vertices 1..n, named families, graph6, and the catalog of
//! small connected graphs with their Hilbert series.

use crate::error::{Error, Result};
use crate::freealg::Generator;
use crate::series::GradedSeries;
use std::collections::BTreeSet;
use std::fmt;

/// A finite simple graph on vertices 1..n; edges stored as (i, j) with i < j.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..=n {
            for j in i + 1..=n {
                g.edges.insert((i, j));
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::Graph(format!("loop at vertex {a}")));
        }
        if a == 0 || b == 0 {
            return Err(Error::Graph("vertex labels start at 1".into()));
        }
        if a > self.n || b > self.n {
            return Err(Error::Graph(format!("edge {a}-{b} outside 1..{}", self.n)));
        }
        self.edges.insert((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Generators x_ij for the edges, in word order.
    pub fn generators(&self) -> Vec<Generator> {
        self.edges.iter().map(|&(i, j)| Generator { i: i as u8, j: j as u8 }).collect()
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n <= other.n && self.edges.iter().all(|e| other.edges.contains(e))
    }

    /// Same edges, viewed inside a larger vertex set.
    pub fn with_vertices(&self, n: usize) -> Result<Graph> {
        if self.edges.iter().any(|&(_, b)| b > n) {
            return Err(Error::Graph(format!("graph does not fit on {n} vertices")));
        }
        Ok(Graph { n, edges: self.edges.clone() })
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n.max(other.n));
        g.edges = self.edges.union(&other.edges).copied().collect();
        g
    }

    pub fn minus(&self, other: &Graph) -> Graph {
        Graph { n: self.n, edges: self.edges.difference(&other.edges).copied().collect() }
    }

    /// Connected, ignoring isolated vertices.
    pub fn is_connected(&self) -> bool {
        let used: BTreeSet<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let Some(&start) = used.iter().next() else { return true };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == used.len()
    }

    /// Edge-list text `1-2,2-3`.
    pub fn to_edge_list(&self) -> String {
        let v: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        v.join(",")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [{}]", self.n, self.to_edge_list())
    }
}

pub fn complement(g: &Graph) -> Graph {
    Graph::complete(g.n).minus(g)
}

fn is_graph6(text: &str) -> bool {
    !text.is_empty() && text.bytes().all(|c| (63..=126).contains(&c))
}

/// Parse an edge list `i-j,k-l` or a graph6 string (detected by character class).
pub fn parse_graph(text: &str) -> Result<Graph> {
    let text = text.trim();
    let body = text.strip_prefix(">>graph6<<").unwrap_or(text);
    if is_graph6(body) {
        return decode_graph6(body);
    }
    let mut pairs = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = tok.split_once('-').ok_or_else(|| Error::Parse(format!("malformed edge `{tok}`")))?;
        let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("malformed edge `{tok}`")))?;
        let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("malformed edge `{tok}`")))?;
        if a == b {
            return Err(Error::Graph(format!("loop edge `{tok}`")));
        }
        if a < 1 || b < 1 {
            return Err(Error::Graph(format!("endpoint < 1 in `{tok}`")));
        }
        pairs.push((a, b));
    }
    if pairs.is_empty() {
        return Err(Error::Parse("empty edge list".into()));
    }
    let n = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
    Graph::new(n, &pairs)
}

/// graph6 encoding of the order and the upper triangle, column by column.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n;
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for k in (0..3).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for k in (0..6).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i + 1, j + 1));
        }
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for k in 0..6 {
            v <<= 1;
            if chunk.get(k).copied().unwrap_or(false) {
                v |= 1;
            }
        }
        out.push(v + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let bytes: Vec<u8> = text.trim().bytes().collect();
    let bad = |m: &str| Error::Parse(format!("graph6 `{text}`: {m}"));
    if bytes.is_empty() || bytes.iter().any(|c| !(63..=126).contains(c)) {
        return Err(bad("invalid character"));
    }
    let val = |c: u8| (c - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (val(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(bad("truncated order"));
        }
        ((val(bytes[1]) << 12) | (val(bytes[2]) << 6) | val(bytes[3]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(bad("truncated order"));
        }
        let mut n = 0usize;
        for &c in &bytes[2..8] {
            n = (n << 6) | val(c);
        }
        (n, &bytes[8..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(bad("wrong length"));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let c = val(rest[k / 6]);
            if (c >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i + 1, j + 1)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// A graph with a direction on every edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedGraph {
    pub underlying: Graph,
    /// (tail, head), indexed by edge label
    pub direction: Vec<(usize, usize)>,
}

impl OrientedGraph {
    pub fn new(underlying: Graph, direction: Vec<(usize, usize)>) -> Result<Self> {
        let covered: BTreeSet<(usize, usize)> = direction.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        if covered.len() != direction.len() || covered != underlying.edges {
            return Err(Error::Graph("directions must cover the edge set exactly".into()));
        }
        Ok(OrientedGraph { underlying, direction })
    }
}

/// Head-to-tail orientation of a disjoint union of paths and cycles.
///
/// Edge labels follow each component from its start: for a cycle through
/// vertex 1 in increasing order this is the labeling (1,2),(2,3),…,(n,1).
pub fn orient_for_theta(g: &Graph) -> Result<OrientedGraph> {
    for v in 1..=g.n {
        if g.degree(v) >= 3 {
            return Err(Error::Graph(format!("vertex {v} has degree {}", g.degree(v))));
        }
    }
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut dir = Vec::new();
    let neighbours = |v: usize| -> Vec<usize> {
        let mut out: Vec<usize> =
            g.edges.iter().filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None }).collect();
        out.sort();
        out
    };
    let walk = |start: usize, used: &mut BTreeSet<(usize, usize)>, dir: &mut Vec<(usize, usize)>| {
        let mut v = start;
        loop {
            let next = neighbours(v).into_iter().find(|&w| !used.contains(&(v.min(w), v.max(w))));
            match next {
                Some(w) => {
                    used.insert((v.min(w), v.max(w)));
                    dir.push((v, w));
                    v = w;
                }
                None => break,
            }
        }
    };
    // paths first (start at degree-1 endpoints), then cycles
    for v in 1..=g.n {
        if g.degree(v) == 1 && neighbours(v).iter().any(|&w| !used.contains(&(v.min(w), v.max(w)))) {
            walk(v, &mut used, &mut dir);
        }
    }
    for v in 1..=g.n {
        if neighbours(v).iter().any(|&w| !used.contains(&(v.min(w), v.max(w)))) {
            walk(v, &mut used, &mut dir);
        }
    }
    OrientedGraph::new(g.clone(), dir)
}

/// Named families; see [`named_graph`] for the labelings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    A,
    D,
    E6,
    E7,
    E8,
    Cycle,
    Star,
    Complete,
    CompleteMultipartite,
    Dtilde,
    E6tilde,
    E7tilde,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => Family::A,
            "D" => Family::D,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "complete" => Family::Complete,
            "complete_multipartite" => Family::CompleteMultipartite,
            "Dtilde" => Family::Dtilde,
            "E6tilde" => Family::E6tilde,
            "E7tilde" => Family::E7tilde,
            _ => return Err(Error::Range(format!("unknown graph family `{s}`"))),
        })
    }
}

fn path_edges(vs: &[usize]) -> Vec<(usize, usize)> {
    vs.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Labelings:
/// - `A n`: path 1-2-…-n.
/// - `D n` (n ≥ 3): leaves 1 (edge a) and 2 (edge b) at the branch vertex 3,
///   then the chain 3-4-…-n; see [`DnLabels`].
/// - `E6/E7/E8`: chain 1-…-(n-1) with vertex n attached to 3.
/// - `cycle n`: 1-2-…-n-1; edge label e joins e+1 → e+2 (mod n).
/// - `star k`: K_{1,k} centered at 1 with leaves 2..k+1.
/// - `complete_multipartite p1,p2,…`: consecutive blocks.
/// - `Dtilde n` (n ≥ 3, n+1 vertices): n = 3 is the 4-cycle; otherwise leaves
///   1,2 at vertex 3, chain 3-…-(n-1), leaves n, n+1 at vertex n-1.
/// - `E6tilde`: chain 1-2-3-4-5 with 3-6-7. `E7tilde`: chain 1-…-7 with 4-8.
pub fn named_graph(family: Family, params: &[usize]) -> Result<Graph> {
    let p = |k: usize| -> Result<usize> {
        params.get(k).copied().ok_or_else(|| Error::Range(format!("{family:?} needs a size parameter")))
    };
    let range = |m: String| Err(Error::Range(m));
    match family {
        Family::A => {
            let n = p(0)?;
            if n < 1 {
                return range("A needs n ≥ 1".into());
            }
            Graph::new(n, &path_edges(&(1..=n).collect::<Vec<_>>()))
        }
        Family::D => {
            let n = p(0)?;
            if n < 3 {
                return range(format!("D needs n ≥ 3, got {n}"));
            }
            let mut e = vec![(1, 3), (2, 3)];
            e.extend(path_edges(&(3..=n).collect::<Vec<_>>()));
            Graph::new(n, &e)
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let n = match family {
                Family::E6 => 6,
                Family::E7 => 7,
                _ => 8,
            };
            let mut e = path_edges(&(1..n).collect::<Vec<_>>());
            e.push((3, n));
            Graph::new(n, &e)
        }
        Family::Cycle => {
            let n = p(0)?;
            if n < 3 {
                return range(format!("cycle needs n ≥ 3, got {n}"));
            }
            let mut e = path_edges(&(1..=n).collect::<Vec<_>>());
            e.push((n, 1));
            Graph::new(n, &e)
        }
        Family::Star => {
            let k = p(0)?;
            if k < 1 {
                return range("star needs k ≥ 1".into());
            }
            Graph::new(k + 1, &(2..=k + 1).map(|v| (1, v)).collect::<Vec<_>>())
        }
        Family::Complete => {
            let n = p(0)?;
            if n < 1 {
                return range("complete needs n ≥ 1".into());
            }
            Ok(Graph::complete(n))
        }
        Family::CompleteMultipartite => {
            if params.is_empty() || params.contains(&0) {
                return range("complete_multipartite needs positive part sizes".into());
            }
            let n: usize = params.iter().sum();
            let mut block = Vec::with_capacity(n);
            for (b, &s) in params.iter().enumerate() {
                block.extend(std::iter::repeat_n(b, s));
            }
            let mut e = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    if block[i - 1] != block[j - 1] {
                        e.push((i, j));
                    }
                }
            }
            Graph::new(n, &e)
        }
        Family::Dtilde => {
            let n = p(0)?;
            if n < 3 {
                return range(format!("Dtilde needs n ≥ 3, got {n}"));
            }
            if n == 3 {
                return named_graph(Family::Cycle, &[4]);
            }
            let mut e = vec![(1, 3), (2, 3)];
            e.extend(path_edges(&(3..n).collect::<Vec<_>>()));
            e.push((n - 1, n));
            e.push((n - 1, n + 1));
            Graph::new(n + 1, &e)
        }
        Family::E6tilde => Graph::new(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)]),
        Family::E7tilde => {
            let mut e = path_edges(&(1..=7).collect::<Vec<_>>());
            e.push((4, 8));
            Graph::new(8, &e)
        }
    }
}

/// Parse `A:3`, `complete:6`, `complete_multipartite:2,3`, or a plain
/// edge-list / graph6 string.
pub fn graph_from_spec(spec: &str) -> Result<Graph> {
    if let Some((name, params)) = spec.split_once(':') {
        let fam: Family = name.trim().parse()?;
        let ps: Vec<usize> = if params.trim().is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad parameter `{x}`"))))
                .collect::<Result<_>>()?
        };
        return named_graph(fam, &ps);
    }
    if let Ok(fam) = spec.trim().parse::<Family>() {
        if matches!(fam, Family::E6 | Family::E7 | Family::E8 | Family::E6tilde | Family::E7tilde) {
            return named_graph(fam, &[]);
        }
    }
    parse_graph(spec)
}

/// Directed generators of D_n under the [`named_graph`] labeling.
///
/// Vertices: 1 and 2 are the leaves, c_0 = 3 is the branch vertex and
/// c_k = k+3 runs along the chain to c_{n-3} = n. Edges: a = c_0→1,
/// b = c_0→2, k = c_k→c_{k-1}. Primed edges start at the far end c_{n-3}:
/// a' = c_{n-3}→1, b' = c_{n-3}→2, k' = c_{n-3}→c_{k-1}.
#[derive(Clone, Debug)]
pub struct DnLabels {
    pub n: usize,
    pub a: (usize, usize),
    pub b: (usize, usize),
    /// chain[k-1] is edge k, for k = 1..n-3
    pub chain: Vec<(usize, usize)>,
    pub a_prime: (usize, usize),
    pub b_prime: (usize, usize),
    pub chain_prime: Vec<(usize, usize)>,
}

impl DnLabels {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Range(format!("D needs n ≥ 3, got {n}")));
        }
        let c = |k: usize| k + 3;
        let end = c(n - 3);
        Ok(DnLabels {
            n,
            a: (c(0), 1),
            b: (c(0), 2),
            chain: (1..=n - 3).map(|k| (c(k), c(k - 1))).collect(),
            a_prime: (end, 1),
            b_prime: (end, 2),
            chain_prime: (1..=n - 3).map(|k| (end, c(k - 1))).collect(),
        })
    }

    /// Directed pair for a label: `a`, `b`, or a chain index (primed if asked).
    pub fn edge(&self, label: &str, primed: bool) -> Result<(usize, usize)> {
        match (label, primed) {
            ("a", false) => Ok(self.a),
            ("b", false) => Ok(self.b),
            ("a", true) => Ok(self.a_prime),
            ("b", true) => Ok(self.b_prime),
            (d, p) => {
                let k: usize = d.parse().map_err(|_| Error::Range(format!("unknown D_n label `{label}`")))?;
                let list = if p { &self.chain_prime } else { &self.chain };
                list.get(k.wrapping_sub(1)).copied().ok_or_else(|| Error::Range(format!("no edge {k} in D_{}", self.n)))
            }
        }
    }
}

/// One row of the table of Hilbert series of connected graphs on ≤ 5 vertices.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub graph: Graph,
    /// bracket expression the series was expanded from
    pub expression: &'static str,
    pub series: GradedSeries,
    pub top_degree: usize,
    pub dimension: u64,
}

const CATALOG: &[(&str, usize, &[(usize, usize)], &str, usize, u64)] = &[
    ("K2", 2, &[(1, 2)], "[2]", 1, 2),
    ("P3", 3, &[(1, 2), (2, 3)], "[2][3]", 3, 6),
    ("K3", 3, &[(1, 2), (1, 3), (2, 3)], "[2]^2[3]", 4, 12),
    ("P4", 4, &[(1, 2), (2, 3), (3, 4)], "[2][3][4]", 6, 24),
    ("K1_3", 4, &[(1, 2), (1, 3), (1, 4)], "[3][4]^2", 8, 48),
    ("paw", 4, &[(1, 2), (1, 3), (2, 3), (1, 4)], "[2][3][4]^2", 9, 96),
    ("C4", 4, &[(1, 2), (2, 3), (3, 4), (1, 4)], "[3]^2[4]^2", 10, 144),
    ("diamond", 4, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)], "[2][3]^2[4]^2", 11, 288),
    ("K4", 4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], "[2]^2[3]^2[4]^2", 12, 576),
    ("P5", 5, &[(1, 2), (2, 3), (3, 4), (4, 5)], "[2][3][4][5]", 10, 120),
    ("fork", 5, &[(1, 3), (2, 3), (3, 4), (4, 5)], "[4]^2[5][6]", 15, 480),
    ("K1_4", 5, &[(1, 2), (1, 3), (1, 4), (1, 5)], "[2]^-2[3]^-2[4]^2[5]^2[6]^4", 28, 14400),
    ("triangle_tail2", 5, &[(1, 2), (1, 3), (2, 3), (1, 4), (4, 5)], "[2][4]^2[5][6]", 16, 960),
    ("bull", 5, &[(1, 2), (1, 3), (2, 3), (1, 4), (2, 5)], "[4]^2[5][6]^2", 20, 2880),
    ("C5", 5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)], "[4]^2[5][6]^2", 20, 2880),
    ("C4_pendant", 5, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 5)], "[2]^-1[4]^2[5][6]^3", 24, 8640),
    ("cricket", 5, &[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5)], "[2]^-1[3]^-2[4]^2[5]^2[6]^4", 29, 28800),
    ("diamond_pendant_deg2", 5, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 5)], "[4]^2[5][6]^3", 25, 17280),
    ("butterfly", 5, &[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)], "[3]^-2[4]^2[5]^2[6]^4", 30, 57600),
    ("house", 5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3)], "[2]^-1[3]^-1[4]^3[5][6]^4", 30, 69120),
    (
        "diamond_pendant_deg3",
        5,
        &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (1, 5)],
        "[2]^-1[3]^-1[4]^2[5]^2[6]^4",
        31,
        86400,
    ),
    ("K2_3", 5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)], "[2]^-3[3]^-1[4]^4[5]^2[6]^4", 35, 345600),
    (
        "K4_pendant",
        5,
        &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 5)],
        "[3]^-1[4]^2[5]^2[6]^4",
        32,
        172800,
    ),
    ("gem", 5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5)], "[2]^-1[3]^-1[4]^3[5]^2[6]^4", 34, 345600),
    (
        "K2_3_plus_edge",
        5,
        &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4)],
        "[2]^-2[3]^-1[4]^4[5]^2[6]^4",
        36,
        691200,
    ),
    (
        "K1_1_3",
        5,
        &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        "[2]^-2[3]^-1[4]^4[5]^2[6]^4",
        36,
        691200,
    ),
    (
        "K5_minus_P3",
        5,
        &[(1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        "[2]^-1[3]^-1[4]^4[5]^2[6]^4",
        37,
        1382400,
    ),
    (
        "K1_2_2",
        5,
        &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5)],
        "[2]^-2[4]^4[5]^2[6]^4",
        38,
        2073600,
    ),
    (
        "K5_minus_e",
        5,
        &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        "[2]^-1[4]^4[5]^2[6]^4",
        39,
        4147200,
    ),
    (
        "K5",
        5,
        &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        "[4]^4[5]^2[6]^4",
        40,
        8294400,
    ),
];

/// The 30 connected graphs on 2–5 vertices with their Hilbert series.
///
/// Labelings are fixed here; `id` names the isomorphism type.
pub fn appendix_catalog() -> Vec<CatalogEntry> {
    CATALOG
        .iter()
        .map(|&(id, n, edges, expr, top, dim)| CatalogEntry {
            id,
            graph: Graph::new(n, edges).expect("catalog graph"),
            expression: expr,
            series: GradedSeries::from_brackets(expr).expect("catalog series"),
            top_degree: top,
            dimension: dim,
        })
        .collect()
}

pub fn catalog_entry(id: &str) -> Option<CatalogEntry> {
    appendix_catalog().into_iter().find(|e| e.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_parsing() {
        let g = parse_graph("1-2,2-3").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 2));
        assert_eq!(parse_graph("1-2,2-1").unwrap().edge_count(), 1);
        assert!(parse_graph("1-1").is_err());
        assert!(parse_graph("0-2").is_err());
        assert!(parse_graph("1-x").is_err());
    }

    #[test]
    fn graph6_known_string() {
        let g = parse_graph("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.to_edge_list(), "1-5,2-5,3-5,4-5");
        assert_eq!(encode_graph6(&g), "D?{");
    }

    #[test]
    fn complement_of_star() {
        let s = named_graph(Family::Star, &[3]).unwrap();
        let c = complement(&s);
        assert_eq!(c, Graph::new(4, &[(2, 3), (2, 4), (3, 4)]).unwrap());
        assert_eq!(complement(&Graph::complete(4)).edge_count(), 0);
    }

    #[test]
    fn named_families() {
        assert_eq!(named_graph(Family::A, &[3]).unwrap().edge_count(), 2);
        let d4 = named_graph(Family::D, &[4]).unwrap();
        assert_eq!(d4.degree(3), 3);
        assert!(named_graph(Family::D, &[2]).is_err());
        assert_eq!(named_graph(Family::E8, &[]).unwrap().edge_count(), 7);
        let d4t = named_graph(Family::Dtilde, &[4]).unwrap();
        assert_eq!((d4t.n(), d4t.edge_count(), d4t.degree(3)), (5, 4, 4));
        assert_eq!(named_graph(Family::Dtilde, &[5]).unwrap().edge_count(), 5);
        assert_eq!(graph_from_spec("complete_multipartite:2,3").unwrap(), catalog_entry("K2_3").unwrap().graph);
    }

    #[test]
    fn theta_orientation() {
        let og = orient_for_theta(&named_graph(Family::A, &[3]).unwrap()).unwrap();
        assert_eq!(og.direction, vec![(1, 2), (2, 3)]);
        let og = orient_for_theta(&named_graph(Family::Cycle, &[4]).unwrap()).unwrap();
        assert_eq!(og.direction, vec![(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert!(orient_for_theta(&named_graph(Family::Star, &[3]).unwrap()).is_err());
    }

    #[test]
    fn catalog_shape() {
        let cat = appendix_catalog();
        assert_eq!(cat.len(), 30);
        let by_size = |n| cat.iter().filter(|e| e.graph.n() == n).count();
        assert_eq!((by_size(2), by_size(3), by_size(4), by_size(5)), (1, 2, 6, 21));
        for e in &cat {
            assert!(e.graph.is_connected(), "{}", e.id);
        }
    }
}
