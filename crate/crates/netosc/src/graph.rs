//! Graph construction, validation, builtin datasets and Laplacian assembly.
//!
//! Every analysis in this crate runs on a connected, undirected, simple
//! graph encoded as a symmetric 0/1 adjacency matrix. Node ids are 1-based
//! in files, reports and the public API; storage is 0-based.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Connected undirected simple graph.
///
/// Immutable after construction, so shared references are safe to use from
/// any number of threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    adjacency: Array2<f64>,
}

impl Graph {
    /// Builds a graph from 1-based edge pairs. `n` is the node count; every
    /// endpoint must lie in `1..=n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("node count must be >= 1".into()));
        }
        let mut adjacency = Array2::zeros((n, n));
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    msg: "self-loop".into(),
                });
            }
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    msg: format!("endpoint outside 1..={n}"),
                });
            }
            let (i, j) = (u - 1, v - 1);
            if adjacency[[i, j]] != 0.0 {
                return Err(Error::DuplicateEdge { u, v });
            }
            adjacency[[i, j]] = 1.0;
            adjacency[[j, i]] = 1.0;
        }
        let g = Graph { n, adjacency };
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    /// Parses an edge-list document: one edge per line as two
    /// whitespace-separated 1-based node ids, `#` comments, blank lines
    /// ignored. The node count is the largest id mentioned.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let parse = |t: Option<&str>| -> Result<usize> {
                let t = t.ok_or_else(|| Error::ParseError {
                    line: lineno + 1,
                    msg: "expected two node ids".into(),
                })?;
                let v: usize = t.parse().map_err(|_| Error::ParseError {
                    line: lineno + 1,
                    msg: format!("'{t}' is not a positive integer"),
                })?;
                if v == 0 {
                    return Err(Error::ParseError {
                        line: lineno + 1,
                        msg: "node ids are 1-based".into(),
                    });
                }
                Ok(v)
            };
            let u = parse(tok.next())?;
            let v = parse(tok.next())?;
            if tok.next().is_some() {
                return Err(Error::ParseError {
                    line: lineno + 1,
                    msg: "trailing tokens".into(),
                });
            }
            if u == v {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    msg: "self-loop".into(),
                });
            }
            n = n.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(Error::InvalidArgument("edge list is empty".into()));
        }
        Self::from_edges(n, &edges)
    }

    /// Renders the graph back to edge-list text (inverse of
    /// [`Graph::from_edge_list`] up to edge ordering).
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Edges as sorted 1-based pairs (u < v).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adjacency[[i, j]] != 0.0 {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        edges
    }

    pub fn adjacency(&self) -> &Array2<f64> {
        &self.adjacency
    }

    /// Degree of 1-based node `u`.
    pub fn degree(&self, u: usize) -> Result<usize> {
        if u < 1 || u > self.n {
            return Err(Error::NodeOutOfRange(u, self.n));
        }
        Ok(self.adjacency.row(u - 1).sum() as usize)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n)
            .map(|i| self.adjacency.row(i).sum() as usize)
            .collect()
    }

    pub fn total_degree(&self) -> usize {
        self.degrees().iter().sum()
    }

    /// Laplacian L = K - A with K the diagonal degree matrix. Rows sum to
    /// zero and the matrix is positive semidefinite.
    pub fn laplacian(&self) -> Array2<f64> {
        let mut l = -self.adjacency.clone();
        for i in 0..self.n {
            l[[i, i]] = self.adjacency.row(i).sum();
        }
        l
    }

    /// Network density k_mean / (n - 1), in (0, 1] for a connected graph.
    pub fn density(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::UndefinedDensity);
        }
        let k_mean = self.total_degree() as f64 / self.n as f64;
        Ok(k_mean / (self.n as f64 - 1.0))
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in 0..self.n {
                if self.adjacency[[i, j]] != 0.0 && !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == self.n
    }
}

/// A named edge list with optional reference eigenvalues used by the
/// built-in validation checks.
#[derive(Debug, Clone)]
pub struct NetworkDataset {
    pub name: String,
    pub edges: Vec<(usize, usize)>,
    pub expected_spectrum: Option<Vec<f64>>,
}

impl NetworkDataset {
    pub fn graph(&self) -> Result<Graph> {
        let n = self.edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
        Graph::from_edges(n, &self.edges)
    }
}

/// Four-node toy network: a triangle 1-2-3 with node 4 pendant on node 3.
/// Laplacian spectrum {4, 3, 1, 0}.
pub fn toy4() -> Graph {
    Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).expect("toy4 is valid")
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i, i + 1)).collect()
}

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = path_edges(n);
    e.push((n, 1));
    e
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            e.push((i, j));
        }
    }
    e
}

/// Complete graph on n-1 nodes with node n pendant on node n-1. For n = 4
/// this is [`toy4`]; the n = 5 member has Laplacian spectrum {5, 4, 4, 1, 0}.
/// Together with paths and complete graphs these form the family used by the
/// synchronization-time ranking comparisons.
fn clique_pendant_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = complete_edges(n - 1);
    e.push((n - 1, n));
    e
}

/// The 34-node, 78-edge karate-club network, 1-based node ids.
pub const ZACHARY_EDGES: [(usize, usize); 78] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 7),
    (1, 8),
    (1, 9),
    (1, 11),
    (1, 12),
    (1, 13),
    (1, 14),
    (1, 18),
    (1, 20),
    (1, 22),
    (1, 32),
    (2, 3),
    (2, 4),
    (2, 8),
    (2, 14),
    (2, 18),
    (2, 20),
    (2, 22),
    (2, 31),
    (3, 4),
    (3, 8),
    (3, 9),
    (3, 10),
    (3, 14),
    (3, 28),
    (3, 29),
    (3, 33),
    (4, 8),
    (4, 13),
    (4, 14),
    (5, 7),
    (5, 11),
    (6, 7),
    (6, 11),
    (6, 17),
    (7, 17),
    (9, 31),
    (9, 33),
    (9, 34),
    (10, 34),
    (14, 34),
    (15, 33),
    (15, 34),
    (16, 33),
    (16, 34),
    (19, 33),
    (19, 34),
    (20, 34),
    (21, 33),
    (21, 34),
    (23, 33),
    (23, 34),
    (24, 26),
    (24, 28),
    (24, 30),
    (24, 33),
    (24, 34),
    (25, 26),
    (25, 28),
    (25, 32),
    (26, 32),
    (27, 30),
    (27, 34),
    (28, 34),
    (29, 32),
    (29, 34),
    (30, 33),
    (30, 34),
    (31, 33),
    (31, 34),
    (32, 33),
    (32, 34),
    (33, 34),
];

/// Reference Laplacian spectrum of the karate-club network, descending with
/// multiplicity (the value 2 appears five times).
pub const ZACHARY_SPECTRUM: [f64; 34] = [
    18.137, 17.055, 13.306, 10.921, 9.777, 6.996, 6.516, 6.332, 5.618, 5.379, 4.581, 4.480, 4.276,
    3.472, 3.382, 3.376, 3.242, 3.014, 2.749, 2.487, 2.000, 2.000, 2.000, 2.000, 2.000, 1.955,
    1.826, 1.762, 1.599, 1.259, 1.125, 0.909, 0.468, 0.0,
];

/// Returns a named builtin dataset.
///
/// Accepted names: `toy4`, `zachary`, and the parametric families
/// `path:N`, `cycle:N`, `complete:N`, `clique_pendant:N`.
pub fn builtin_dataset(name: &str) -> Result<NetworkDataset> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    let parse_n = |min: usize| -> Result<usize> {
        let a = arg.ok_or_else(|| Error::UnknownDataset(name.into()))?;
        let n: usize = a.parse().map_err(|_| Error::UnknownDataset(name.into()))?;
        if n < min {
            return Err(Error::InvalidArgument(format!(
                "'{name}' needs at least {min} nodes"
            )));
        }
        Ok(n)
    };
    let ds = match kind {
        "toy4" => NetworkDataset {
            name: "toy4".into(),
            edges: vec![(1, 2), (1, 3), (2, 3), (3, 4)],
            expected_spectrum: Some(vec![4.0, 3.0, 1.0, 0.0]),
        },
        "zachary" => NetworkDataset {
            name: "zachary".into(),
            edges: ZACHARY_EDGES.to_vec(),
            expected_spectrum: Some(ZACHARY_SPECTRUM.to_vec()),
        },
        "path" => NetworkDataset {
            name: name.into(),
            edges: path_edges(parse_n(2)?),
            expected_spectrum: None,
        },
        "cycle" => NetworkDataset {
            name: name.into(),
            edges: cycle_edges(parse_n(3)?),
            expected_spectrum: None,
        },
        "complete" => NetworkDataset {
            name: name.into(),
            edges: complete_edges(parse_n(2)?),
            expected_spectrum: None,
        },
        "clique_pendant" => NetworkDataset {
            name: name.into(),
            edges: clique_pendant_edges(parse_n(3)?),
            expected_spectrum: None,
        },
        _ => return Err(Error::UnknownDataset(name.into())),
    };
    Ok(ds)
}

/// Builds a named builtin graph; see [`builtin_dataset`] for the names.
pub fn builtin(name: &str) -> Result<Graph> {
    builtin_dataset(name)?.graph()
}

/// All-ones vector of length n.
pub fn ones(n: usize) -> Array1<f64> {
    Array1::ones(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy4_degrees_and_trace() {
        let g = toy4();
        assert_eq!(g.degrees(), vec![2, 2, 3, 1]);
        let l = g.laplacian();
        let trace: f64 = (0..4).map(|i| l[[i, i]]).sum();
        assert_eq!(trace, 8.0);
    }

    #[test]
    fn edge_list_parsing() {
        let g = Graph::from_edge_list("1 2\n1 3\n2 3\n3 4").unwrap();
        assert_eq!(g.degrees(), vec![2, 2, 3, 1]);

        let p4 = Graph::from_edge_list("# a path\n1 2\n2 3\n\n3 4 # tail\n").unwrap();
        assert_eq!(p4.degrees(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            Graph::from_edge_list("1 1"),
            Err(Error::InvalidEdge { .. })
        ));
    }

    #[test]
    fn duplicate_edge_rejected() {
        assert!(matches!(
            Graph::from_edge_list("1 2\n2 1\n2 3"),
            Err(Error::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            Graph::from_edge_list("1 2\n3 4"),
            Err(Error::DisconnectedGraph)
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Graph::from_edge_list("1 x"),
            Err(Error::ParseError { line: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("1"),
            Err(Error::ParseError { .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("0 1"),
            Err(Error::ParseError { .. })
        ));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        for name in ["toy4", "path:6", "cycle:5", "complete:4", "zachary"] {
            let g = builtin(name).unwrap();
            let l = g.laplacian();
            let u = ones(g.node_count());
            let r = l.dot(&u);
            assert!(r.iter().all(|x| x.abs() < 1e-12), "{name}");
        }
    }

    #[test]
    fn complete4_laplacian_entries() {
        let g = builtin("complete:4").unwrap();
        assert!(g.degrees().iter().all(|&k| k == 3));
        let l = g.laplacian();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 3.0 } else { -1.0 };
                assert_eq!(l[[i, j]], want);
            }
        }
    }

    #[test]
    fn zachary_shape() {
        let g = builtin("zachary").unwrap();
        assert_eq!(g.node_count(), 34);
        assert_eq!(g.edges().len(), 78);
        assert_eq!(g.total_degree(), 156);
        let density = g.density().unwrap();
        assert!((density - 156.0 / 34.0 / 33.0).abs() < 1e-12);
    }

    #[test]
    fn density_values() {
        assert!((builtin("complete:4").unwrap().density().unwrap() - 1.0).abs() < 1e-12);
        assert!((builtin("path:4").unwrap().density().unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn render_round_trip() {
        for name in [
            "toy4",
            "path:5",
            "cycle:6",
            "complete:5",
            "clique_pendant:5",
            "zachary",
        ] {
            let g = builtin(name).unwrap();
            let back = Graph::from_edge_list(&g.render()).unwrap();
            assert_eq!(g, back, "{name}");
        }
    }

    #[test]
    fn unknown_dataset() {
        assert!(matches!(builtin("petersen"), Err(Error::UnknownDataset(_))));
        assert!(matches!(builtin("path:x"), Err(Error::UnknownDataset(_))));
    }
}
