//! Simple undirected graphs, adjacency spectra and bounds on graph energy
//! `E(G) = Σ |λ_i|`.
//!
//! Graphs are read from a plain edge list:
//!
//! ```text
//! # lines starting with '#' are comments
//! 3        <- vertex count n
//! 1 2      <- one edge per line, 1-based labels
//! 2 3
//! ```

use rand::Rng;
use serde::Serialize;

use crate::bounds::{BoundReport, BoundResult};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};

/// Eigenvalues with `|λ| ≤ RANK_TOL·max|λ|` count as zero.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Edges as `(u, v)` with `1 ≤ u < v ≤ n`, in input order.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range labels.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (k, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(u, v).map_err(|message| Error::Parse { line: k + 1, message })?;
        }
        Ok(g)
    }

    fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse { line: 0, message: "a graph needs at least one vertex".into() });
        }
        Ok(Self { n, edges: Vec::new() })
    }

    fn add_edge(&mut self, u: usize, v: usize) -> std::result::Result<(), String> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(format!("vertex {w} outside 1..={}", self.n));
            }
        }
        if u == v {
            return Err(format!("self-loop at vertex {u}"));
        }
        let e = (u.min(v), u.max(v));
        if self.edges.contains(&e) {
            return Err(format!("duplicate edge {} {}", e.0, e.1));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u - 1] += 1;
            d[v - 1] += 1;
        }
        d
    }

    /// `Σ_{j ∼ i} d_j` for every vertex `i`.
    pub fn degree_sums(&self) -> Vec<usize> {
        let d = self.degrees();
        let mut s = vec![0; self.n];
        for &(u, v) in &self.edges {
            s[u - 1] += d[v - 1];
            s[v - 1] += d[u - 1];
        }
        s
    }

    /// `max_i Σ_{j ∼ i} d_j`; zero for an edgeless graph.
    pub fn max_degree_sum(&self) -> usize {
        self.degree_sums().into_iter().max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u - 1, v - 1)].re = 1.0;
            a[(v - 1, u - 1)].re = 1.0;
        }
        a
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Erdős–Rényi `G(n, q)`: each pair is an edge independently with probability `q`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, q: f64) -> Self {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.random::<f64>() < q {
                    edges.push((u, v));
                }
            }
        }
        Self { n: n.max(1), edges }
    }
}

/// Parses the edge-list format described in the module docs.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let nums = trimmed
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|_| err(format!("expected a non-negative integer, found {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match (&mut graph, nums.as_slice()) {
            (None, &[n]) => graph = Some(Graph::empty(n).map_err(|_| err("vertex count must be positive".into()))?),
            (None, _) => return Err(err("first line must hold the vertex count alone".into())),
            (Some(g), &[u, v]) => g.add_edge(u, v).map_err(err)?,
            (Some(_), _) => return Err(err(format!("expected two vertex labels, found {} tokens", nums.len()))),
        }
    }
    graph.ok_or(Error::Parse { line: 0, message: "missing vertex count".into() })
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub n: usize,
    pub m: usize,
    pub energy: f64,
    pub spectral_norm: f64,
    pub rank: usize,
    pub max_degree_sum: usize,
    /// Adjacency eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Lower and upper energy bounds (reference `E(G)`) and the degree-sum
    /// bound on the spectral norm (reference `‖Adj(G)‖`).
    pub bounds: BoundReport,
}

impl EnergyReport {
    /// Whether `2m/√D` beats `2√m`; equivalent to `m > D` with `D` the
    /// maximum degree sum.
    pub fn degree_sum_bound_improves(&self) -> bool {
        self.m > self.max_degree_sum
    }
}

/// Spectrum, energy and energy bounds of `g`.
pub fn energy_report(g: &Graph) -> EnergyReport {
    let eigenvalues = hermitian_eigenvalues(&g.adjacency()).expect("adjacency is symmetric");
    let energy: f64 = eigenvalues.iter().map(|l| l.abs()).sum();
    let spectral_norm = eigenvalues.iter().fold(0.0f64, |a, l| a.max(l.abs()));
    let rank = eigenvalues.iter().filter(|l| l.abs() > RANK_TOL * spectral_norm).count();
    let (n, m) = (g.n() as f64, g.m() as f64);
    let d = g.max_degree_sum();
    let degree_sum_lower = if d == 0 { 0.0 } else { 2.0 * m / (d as f64).sqrt() };

    let mut bounds = BoundReport::default();
    bounds.push(BoundResult::lower("degree_sum_lower", degree_sum_lower, energy));
    bounds.push(BoundResult::lower("sqrt_edges_lower", 2.0 * m.sqrt(), energy));
    bounds.push(BoundResult::upper("mcclelland_upper", (2.0 * m * n).sqrt(), energy));
    bounds.push(BoundResult::upper("rank_upper", (2.0 * m * rank as f64).sqrt(), energy));
    bounds.push(BoundResult::upper("spectral_norm_degree_sum", (d as f64).sqrt(), spectral_norm));
    EnergyReport {
        n: g.n(),
        m: g.m(),
        energy,
        spectral_norm,
        rank,
        max_degree_sum: d,
        eigenvalues,
        bounds,
    }
}
