//! Chromatic graph homology over GF(2).
//!
//! Graph files:
//!
//! ```text
//! V 3
//! E 1 2
//! E 2 3
//! E 3 1
//! AUT 3: 1->2, 2->3, 3->1
//! ```
//!
//! Vertices are 1-based in files and 0-based in memory. `→` may be used in
//! place of `->`; vertices missing from `AUT` are fixed.

use std::collections::BTreeMap;

use crate::complex::{homology, GradedComplex, Grading, HomologyTable};
use crate::equivariant::{compare_fixed_points, quotient_complex, require_odd, EquivariantComplex, FixedPointReport};
use crate::error::{Error, Result};
use crate::{oracles, LaurentPoly};

pub const DEFAULT_EDGE_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub p: usize,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    automorphism: Option<Automorphism>,
}

impl Graph {
    /// Edges are stored with the smaller endpoint first, in input order.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has a missing endpoint")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if out.contains(&e) {
                return Err(Error::InvalidGraph(format!("repeated edge ({a}, {b})")));
            }
            out.push(e);
        }
        Ok(Self {
            vertices,
            edges: out,
            automorphism: None,
        })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn rotation(n: usize) -> Automorphism {
        Automorphism {
            p: n,
            perm: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// Attaches a vertex permutation; it must be a bijection that maps edges
    /// to edges and whose `p`-th power is the identity.
    pub fn with_automorphism(mut self, aut: Automorphism) -> Result<Self> {
        let n = self.vertices;
        if aut.perm.len() != n || aut.p == 0 {
            return Err(Error::InvalidAction(
                "automorphism size does not match the graph".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &w in &aut.perm {
            if w >= n || std::mem::replace(&mut seen[w], true) {
                return Err(Error::InvalidAction("automorphism is not a bijection".into()));
            }
        }
        let mut cur: Vec<usize> = (0..n).collect();
        for _ in 0..aut.p {
            cur = cur.iter().map(|&v| aut.perm[v]).collect();
        }
        if cur.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::InvalidAction(format!(
                "automorphism order does not divide {}",
                aut.p
            )));
        }
        for &(a, b) in &self.edges {
            let (x, y) = (aut.perm[a], aut.perm[b]);
            if self.edge_index(x, y).is_none() {
                return Err(Error::InvalidAction(format!(
                    "edge ({}, {}) is not sent to an edge",
                    a + 1,
                    b + 1
                )));
            }
        }
        self.automorphism = Some(aut);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn automorphism(&self) -> Option<&Automorphism> {
        self.automorphism.as_ref()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = (a.min(b), a.max(b));
        self.edges.iter().position(|&f| f == e)
    }

    /// Component representative (smallest vertex) of each vertex in the
    /// spanning subgraph on the edges of `mask`.
    pub fn components(&self, mask: u32) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        (0..self.vertices).map(|v| find(&mut parent, v)).collect()
    }
}

/// Line number, group order and vertex pairs of an `AUT` line.
type AutLine = (usize, usize, Vec<(usize, usize)>);

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertices: Option<usize> = None;
    let mut edges = Vec::new();
    let mut aut: Option<AutLine> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let vertex = |s: &str| -> Result<usize> {
            match s.trim().parse::<usize>() {
                Ok(v) if v > 0 => Ok(v - 1),
                _ => Err(Error::parse(
                    line_no,
                    format!("expected a positive vertex number, got {s:?}"),
                )),
            }
        };
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match cmd {
            "V" => {
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex count {rest:?}")))?;
                if vertices.replace(n).is_some() {
                    return Err(Error::parse(line_no, "V given twice"));
                }
            }
            "E" => {
                let v: Vec<&str> = rest.split_whitespace().collect();
                if v.len() != 2 {
                    return Err(Error::parse(line_no, "E takes two vertices"));
                }
                edges.push((vertex(v[0])?, vertex(v[1])?));
            }
            "AUT" => {
                let (p, maps) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line_no, "expected AUT p: a->b, ..."))?;
                let p = p
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad group order {p:?}")))?;
                let mut pairs = Vec::new();
                for m in maps.split(',').map(str::trim).filter(|m| !m.is_empty()) {
                    let (a, b) = m
                        .split_once("->")
                        .or_else(|| m.split_once('→'))
                        .ok_or_else(|| Error::parse(line_no, format!("bad vertex map {m:?}")))?;
                    pairs.push((vertex(a)?, vertex(b)?));
                }
                if aut.replace((line_no, p, pairs)).is_some() {
                    return Err(Error::parse(line_no, "AUT given twice"));
                }
            }
            _ => return Err(Error::parse(line_no, format!("unknown command {cmd:?}"))),
        }
    }
    let n = vertices.ok_or_else(|| Error::parse(1, "missing V line"))?;
    let g = Graph::new(n, edges)?;
    match aut {
        None => Ok(g),
        Some((line_no, p, pairs)) => {
            let mut perm: Vec<usize> = (0..n).collect();
            for (a, b) in pairs {
                if a >= n || b >= n {
                    return Err(Error::parse(line_no, "AUT refers to a missing vertex"));
                }
                perm[a] = b;
            }
            g.with_automorphism(Automorphism { p, perm })
        }
    }
}

/// An edge subset and a `1`/`x` label on each component of the spanning
/// subgraph; bit `c` of `labels` is set when the `c`-th component (ordered by
/// smallest vertex) carries `x`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GraphState {
    pub edges: u32,
    pub labels: u32,
}

pub type GraphComplex = GradedComplex<GraphState>;

struct Spanning {
    /// Representative of each vertex.
    rep: Vec<usize>,
    /// Sorted representatives; position is the component index.
    reps: Vec<usize>,
}

impl Spanning {
    fn new(g: &Graph, mask: u32) -> Self {
        let rep = g.components(mask);
        let mut reps = rep.clone();
        reps.sort_unstable();
        reps.dedup();
        Self { rep, reps }
    }

    fn index_of_vertex(&self, v: usize) -> usize {
        self.reps.binary_search(&self.rep[v]).expect("known representative")
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    let m = g.edges.len();
    if m > cap.min(31) {
        return Err(Error::ResourceCap {
            what: "edge count",
            size: m,
            cap: cap.min(31),
        });
    }
    Ok(())
}

/// The differential adds one absent edge; merged components multiply their
/// labels with `x·x = 0`.
fn graph_differential_terms(g: &Graph, spans: &[Spanning], s: &GraphState) -> Vec<GraphState> {
    let cur = &spans[s.edges as usize];
    let mut out = Vec::new();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if s.edges >> e & 1 == 1 {
            continue;
        }
        let m2 = s.edges | 1 << e;
        let next = &spans[m2 as usize];
        let (ca, cb) = (cur.index_of_vertex(a), cur.index_of_vertex(b));
        if ca != cb && s.labels >> ca & 1 == 1 && s.labels >> cb & 1 == 1 {
            continue;
        }
        let mut labels = 0u32;
        for (c, &r) in cur.reps.iter().enumerate() {
            if s.labels >> c & 1 == 1 {
                labels |= 1 << next.index_of_vertex(r);
            }
        }
        out.push(GraphState { edges: m2, labels });
    }
    out
}

fn spans(g: &Graph) -> Vec<Spanning> {
    (0..1u32 << g.edges.len()).map(|m| Spanning::new(g, m)).collect()
}

fn complex_from_spans(g: &Graph, spans: &[Spanning]) -> Result<GraphComplex> {
    let mut blocks: BTreeMap<Grading, Vec<GraphState>> = BTreeMap::new();
    for (m, sp) in spans.iter().enumerate() {
        let i = (m as u32).count_ones() as i32;
        for labels in 0..1u32 << sp.reps.len() {
            blocks
                .entry(Grading::new(i, labels.count_ones() as i32))
                .or_default()
                .push(GraphState {
                    edges: m as u32,
                    labels,
                });
        }
    }
    GradedComplex::assemble(1, blocks, |_, s| graph_differential_terms(g, spans, s))
}

/// Complex graded by `(i, j)`: `i` edges present, `j` components labelled `x`.
pub fn build_graph_complex(g: &Graph, cap: usize) -> Result<GraphComplex> {
    check_cap(g, cap)?;
    complex_from_spans(g, &spans(g))
}

pub fn graph_homology(g: &Graph, cap: usize) -> Result<HomologyTable> {
    Ok(homology(&build_graph_complex(g, cap)?))
}

fn image_edges(g: &Graph, perm: &[usize], mask: u32) -> u32 {
    let mut edges = 0u32;
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if mask >> e & 1 == 1 {
            edges |= 1 << g.edge_index(perm[a], perm[b]).expect("automorphism");
        }
    }
    edges
}

fn image_labels(cur: &Spanning, next: &Spanning, perm: &[usize], labels: u32) -> u32 {
    let mut out = 0u32;
    for (c, &r) in cur.reps.iter().enumerate() {
        if labels >> c & 1 == 1 {
            out |= 1 << next.index_of_vertex(perm[r]);
        }
    }
    out
}

/// Image of a state under the vertex permutation `perm`.
fn act_on_state(g: &Graph, spans: &[Spanning], perm: &[usize], s: &GraphState) -> GraphState {
    let edges = image_edges(g, perm, s.edges);
    let labels = image_labels(&spans[s.edges as usize], &spans[edges as usize], perm, s.labels);
    GraphState { edges, labels }
}

/// Image of a state under the graph's automorphism.
pub fn act_on_graph_state(g: &Graph, s: &GraphState) -> Result<GraphState> {
    let aut = require_automorphism(g)?;
    let edges = image_edges(g, &aut.perm, s.edges);
    let (cur, next) = (Spanning::new(g, s.edges), Spanning::new(g, edges));
    Ok(GraphState {
        edges,
        labels: image_labels(&cur, &next, &aut.perm, s.labels),
    })
}

fn require_automorphism(g: &Graph) -> Result<&Automorphism> {
    g.automorphism
        .as_ref()
        .ok_or_else(|| Error::InvalidAction("graph has no automorphism".into()))
}

pub fn graph_quotient(g: &Graph, cap: usize, allow_even: bool) -> Result<EquivariantComplex<GraphState>> {
    let aut = require_automorphism(g)?;
    require_odd(aut.p, allow_even)?;
    check_cap(g, cap)?;
    let sp = spans(g);
    let c = complex_from_spans(g, &sp)?;
    quotient_complex(c, aut.p, &|s: &GraphState| act_on_state(g, &sp, &aut.perm, s))
}

pub fn equivariant_graph_homology(g: &Graph, cap: usize, allow_even: bool) -> Result<HomologyTable> {
    Ok(graph_quotient(g, cap, allow_even)?.homology())
}

/// Equivariant graph homology against the fixed subspace of the induced
/// action on graph homology.
pub fn compare_graph_fixed_points(
    g: &Graph,
    cap: usize,
    allow_even: bool,
) -> Result<(EquivariantComplex<GraphState>, FixedPointReport)> {
    let aut = require_automorphism(g)?;
    check_cap(g, cap)?;
    let sp = spans(g);
    let c = complex_from_spans(g, &sp)?;
    compare_fixed_points(
        c,
        aut.p,
        &|s: &GraphState| act_on_state(g, &sp, &aut.perm, s),
        allow_even,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticEulerReport {
    /// `Σ (-1)^i q^j dim H^{i,j}`.
    pub euler_q: LaurentPoly,
    /// The same polynomial with `q = λ - 1`.
    pub euler_lambda: LaurentPoly,
    /// Chromatic polynomial in `λ` by deletion and contraction.
    pub chromatic: LaurentPoly,
}

impl ChromaticEulerReport {
    pub fn passed(&self) -> bool {
        self.euler_lambda == self.chromatic
    }
}

pub fn chromatic_euler_check(g: &Graph, cap: usize) -> Result<ChromaticEulerReport> {
    let euler_q = graph_homology(g, cap)?.euler_polynomial();
    let lambda_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    Ok(ChromaticEulerReport {
        euler_lambda: euler_q.compose(&lambda_minus_one),
        euler_q,
        chromatic: oracles::chromatic_delcon(g.vertex_count(), g.edges()),
    })
}
