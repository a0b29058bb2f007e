//! Resolving sets on arbitrary simple undirected graphs, via BFS distances.
//!
//! This path shares no code with the bit-parallel hypercube verifier, which
//! makes it usable as an oracle for it.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypercube::{Dimension, Vertex};
use crate::resolve::VerificationReport;

pub const UNREACHABLE: u32 = u32::MAX;

/// Largest cube materialised as an adjacency list.
pub const HYPERCUBE_GRAPH_LIMIT: u32 = 16;

/// Simple undirected graph with sorted neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Rejects self-loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexIndex {
                        index: x,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge at vertex {u}"
                )));
            }
        }
        Ok(Graph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edges `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0
            || bfs_distances(self, 0)
                .map(|d| d.iter().all(|&x| x != UNREACHABLE))
                .unwrap_or(false)
    }

    /// Parses the edge-list format: `#` comments, a `p <vertex_count>` header
    /// as the first content line, then one `u v` pair per line.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut count: Option<usize> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::GraphFormat {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match count {
                None => {
                    if fields.len() != 2 || fields[0] != "p" {
                        return Err(err(format!("expected header \"p <vertex_count>\", found {line:?}")));
                    }
                    count = Some(
                        fields[1]
                            .parse()
                            .map_err(|_| err(format!("bad vertex count {:?}", fields[1])))?,
                    );
                }
                Some(n) => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected \"u v\", found {line:?}")));
                    }
                    let parse = |s: &str| -> Result<usize> {
                        let x: usize = s.parse().map_err(|_| err(format!("bad vertex index {s:?}")))?;
                        if x >= n {
                            return Err(err(format!("vertex {x} out of range 0..{n}")));
                        }
                        Ok(x)
                    };
                    let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                    if u == v {
                        return Err(err(format!("self-loop at vertex {u}")));
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(err(format!("duplicate edge {u} {v}")));
                    }
                    edges.push((u, v));
                }
            }
        }
        let n = count.ok_or(Error::GraphFormat {
            line: text.lines().count().max(1),
            message: "missing \"p <vertex_count>\" header".into(),
        })?;
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.vertex_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// `Q^n` with vertex index equal to the vertex bit set.
pub fn build_hypercube(n: Dimension) -> Result<Graph> {
    if n.get() > HYPERCUBE_GRAPH_LIMIT {
        return Err(Error::DimensionOutOfRange {
            n: n.get(),
            min: 1,
            max: HYPERCUBE_GRAPH_LIMIT,
        });
    }
    let adjacency = (0..n.vertex_count())
        .map(|v| {
            let mut list: Vec<usize> = (0..n.get()).map(|i| v ^ (1 << i)).collect();
            list.sort_unstable();
            list
        })
        .collect();
    Ok(Graph { adjacency })
}

/// Index of a hypercube vertex in [`build_hypercube`].
#[inline]
pub fn hypercube_index(v: Vertex) -> usize {
    v.bits() as usize
}

pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<u32>> {
    if source >= g.vertex_count() {
        return Err(Error::VertexIndex {
            index: source,
            count: g.vertex_count(),
        });
    }
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Same contract as the hypercube verifier; witness vertices are graph
/// indices wrapped as [`Vertex`] bit patterns.
pub fn is_resolving_general(g: &Graph, landmarks: &[usize]) -> Result<VerificationReport> {
    let start = Instant::now();
    if landmarks.is_empty() {
        return Err(Error::EmptyLandmarks);
    }
    let columns: Vec<Vec<u32>> = landmarks
        .iter()
        .map(|&s| bfs_distances(g, s))
        .collect::<Result<_>>()?;
    if columns[0].iter().any(|&d| d == UNREACHABLE) {
        return Err(Error::Disconnected);
    }

    // First two members of each class of equal vectors, scanning upwards.
    let mut classes: HashMap<Vec<u32>, (usize, Option<usize>)> = HashMap::new();
    for v in 0..g.vertex_count() {
        let key: Vec<u32> = columns.iter().map(|c| c[v]).collect();
        classes
            .entry(key)
            .and_modify(|e| {
                if e.1.is_none() {
                    e.1 = Some(v);
                }
            })
            .or_insert((v, None));
    }
    let witness = classes
        .values()
        .filter_map(|&(u, v)| v.map(|v| (u, v)))
        .min()
        .map(|(u, v)| (Vertex::from_bits(u as u32), Vertex::from_bits(v as u32)));
    Ok(VerificationReport {
        resolving: witness.is_none(),
        witness,
        vertices_checked: g.vertex_count() as u64,
        elapsed: start.elapsed(),
    })
}

/// `G x K_2`: copy 0 keeps indices, copy 1 vertex `v` becomes `v + |V|`.
pub fn cartesian_product_k2(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let adjacency = (0..2 * n)
        .map(|x| {
            let (v, offset) = if x < n { (x, 0) } else { (x - n, n) };
            let mut list: Vec<usize> = g.neighbors(v).iter().map(|&w| w + offset).collect();
            list.push(if offset == 0 { v + n } else { v });
            list.sort_unstable();
            list
        })
        .collect();
    Graph { adjacency }
}

/// `{w_1, ..., w_k}` in copy 0 plus `w_1` in copy 1.
pub fn lift_landmarks(g: &Graph, landmarks: &[usize]) -> Result<Vec<usize>> {
    let first = *landmarks.first().ok_or(Error::EmptyLandmarks)?;
    let mut out = landmarks.to_vec();
    out.push(first + g.vertex_count());
    Ok(out)
}
