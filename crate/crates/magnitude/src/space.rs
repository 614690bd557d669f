//! Finite (extended) metric spaces: validation, combinators, graph metrics,
//! homogeneity and positivity checks.

use crate::error::{Error, Result};
use crate::genpoly::GenPoly;
use crate::rational::{rat_int, ExtRational, Rational};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

/// Default cap on the exact isometry search.
pub const DEFAULT_HOMOGENEITY_CAP: usize = 10;

/// A labeled finite metric space with exact extended-rational distances.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<ExtRational>>,
}

impl FiniteMetricSpace {
    /// Validates the metric axioms (with infinity absorbing) and builds the
    /// space.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<ExtRational>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if labels.len() != n {
            return Err(Error::LabelMismatch(labels.len(), n));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare(n, i, row.len()));
            }
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
                match &dist[i][j] {
                    ExtRational::Finite(r) if !r.is_positive() => {
                        return Err(Error::NegativeOrZeroOffDiagonal(i, j));
                    }
                    _ => {}
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if &dist[i][j] + &dist[j][k] < dist[i][k] {
                        return Err(Error::TriangleViolation(i, j, k));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Builds a space with default labels `p0, p1, ...`.
    pub fn from_matrix(dist: Vec<Vec<ExtRational>>) -> Result<Self> {
        let labels = (0..dist.len()).map(|i| format!("p{i}")).collect();
        Self::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist(&self, i: usize, j: usize) -> &ExtRational {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &Vec<Vec<ExtRational>> {
        &self.dist
    }

    /// True iff every distance is finite.
    pub fn is_finite(&self) -> bool {
        self.dist
            .iter()
            .all(|row| row.iter().all(|d| d.is_finite()))
    }

    /// Largest distance in the space.
    pub fn diameter(&self) -> ExtRational {
        let mut best = ExtRational::zero();
        for row in &self.dist {
            for d in row {
                if *d > best {
                    best = d.clone();
                }
            }
        }
        best
    }

    /// Finite distance matrix as rationals; errors if any distance is
    /// infinite.
    pub fn finite_matrix(&self) -> Result<Vec<Vec<Rational>>> {
        self.dist
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| {
                        d.finite()
                            .cloned()
                            .ok_or(Error::InfiniteDistanceUnsupported)
                    })
                    .collect()
            })
            .collect()
    }

    /// Multiplies every distance by `t > 0`.
    pub fn scale(&self, t: &Rational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::NonpositiveScale);
        }
        Ok(FiniteMetricSpace {
            labels: self.labels.clone(),
            dist: self
                .dist
                .iter()
                .map(|row| row.iter().map(|d| d.scale(t)).collect())
                .collect(),
        })
    }

    /// Join: disjoint union with all cross distances 1. Both spaces must
    /// have diameter at most 2.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let two = ExtRational::from_int(2);
        if self.diameter() > two || other.diameter() > two {
            return Err(Error::DiameterExceedsTwo);
        }
        let n = self.len();
        let m = other.len();
        let one = ExtRational::from_int(1);
        let mut dist = vec![vec![ExtRational::zero(); n + m]; n + m];
        let mut labels = Vec::with_capacity(n + m);
        for (i, l) in self.labels.iter().enumerate() {
            labels.push(format!("L.{l}"));
            for j in 0..n {
                dist[i][j] = self.dist[i][j].clone();
            }
            for j in 0..m {
                dist[i][n + j] = one.clone();
                dist[n + j][i] = one.clone();
            }
        }
        for (i, l) in other.labels.iter().enumerate() {
            labels.push(format!("R.{l}"));
            for j in 0..m {
                dist[n + i][n + j] = other.dist[i][j].clone();
            }
        }
        FiniteMetricSpace::new(labels, dist)
    }

    /// l1-product: cartesian point set with summed distances. Rejects
    /// infinite distances.
    pub fn l1_product(&self, other: &Self) -> Result<Self> {
        if !self.is_finite() || !other.is_finite() {
            return Err(Error::InfiniteDistanceUnsupported);
        }
        let n = self.len();
        let m = other.len();
        let mut labels = Vec::with_capacity(n * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        let mut dist = vec![vec![ExtRational::zero(); n * m]; n * m];
        for a in 0..n {
            for b in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        dist[a * m + b][a2 * m + b2] =
                            &self.dist[a][a2] + &other.dist[b][b2];
                    }
                }
            }
        }
        FiniteMetricSpace::new(labels, dist)
    }

    /// The `n`-point space with all nonzero distances equal to `r > 0`.
    pub fn uniform(n: usize, r: &Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if !r.is_positive() {
            return Err(Error::NegativeOrZeroOffDiagonal(0, 1));
        }
        let mut dist = vec![vec![ExtRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    dist[i][j] = ExtRational::Finite(r.clone());
                }
            }
        }
        Self::from_matrix(dist)
    }

    /// Shortest-path metric of a graph with unit edge weights; unreachable
    /// pairs are at distance infinity.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let adj = g.adjacency();
        let mut dist = vec![vec![ExtRational::Infinity; n]; n];
        for start in 0..n {
            // BFS
            let mut seen = vec![None; n];
            seen[start] = Some(0u64);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let dv = seen[v].unwrap();
                for &w in &adj[v] {
                    if seen[w].is_none() {
                        seen[w] = Some(dv + 1);
                        queue.push_back(w);
                    }
                }
            }
            for (v, d) in seen.iter().enumerate() {
                if let Some(d) = d {
                    dist[start][v] = ExtRational::Finite(rat_int(*d as i64));
                }
            }
        }
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        Self::new(labels, dist)
    }

    /// Exact homogeneity test: does the isometry group act transitively?
    /// Backtracking search for a distance-preserving permutation sending
    /// point 0 to each point, with row-multiset pruning.
    pub fn is_homogeneous(&self, cap: usize) -> Result<bool> {
        let n = self.len();
        if n > cap {
            return Err(Error::SizeCapExceeded { n, cap });
        }
        let mut row_multisets: Vec<Vec<ExtRational>> = self
            .dist
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort();
                r
            })
            .collect();
        for p in 1..n {
            if row_multisets[0] != row_multisets[p] {
                return Ok(false);
            }
        }
        row_multisets.truncate(n);
        for p in 1..n {
            if !self.isometry_exists(p, &row_multisets) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn isometry_exists(&self, target: usize, rows: &[Vec<ExtRational>]) -> bool {
        let n = self.len();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        image[0] = target;
        used[target] = true;
        self.extend_isometry(1, &mut image, &mut used, rows)
    }

    fn extend_isometry(
        &self,
        next: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        rows: &[Vec<ExtRational>],
    ) -> bool {
        let n = self.len();
        if next == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || rows[next] != rows[cand] {
                continue;
            }
            if (0..next).all(|k| self.dist[next][k] == self.dist[cand][image[k]]) {
                image[next] = cand;
                used[cand] = true;
                if self.extend_isometry(next + 1, image, used, rows) {
                    return true;
                }
                used[cand] = false;
                image[next] = usize::MAX;
            }
        }
        false
    }

    /// The profile polynomial `N_X(q) = (1/#X) sum_{x'} q^{d(x0,x')}` of a
    /// homogeneous space.
    pub fn n_profile(&self, cap: usize) -> Result<GenPoly> {
        if !self.is_homogeneous(cap)? {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.n_profile_unchecked())
    }

    /// `N_X` from the first row, without the homogeneity check.
    pub fn n_profile_unchecked(&self) -> GenPoly {
        let n = rat_int(self.len() as i64);
        let mut acc = GenPoly::zero();
        for d in &self.dist[0] {
            acc = &acc + &GenPoly::q_power(d);
        }
        acc.scale_coeffs(&(Rational::one() / n))
    }

    /// Smallest eigenvalue of `(e^{-t d(i,j)})` for each sample `t`.
    /// Numerical evidence for negative type, not a proof.
    pub fn negative_type_check(&self, t_samples: &[f64]) -> NegativeTypeReport {
        let samples: Vec<NegativeTypeSample> = t_samples
            .iter()
            .map(|&t| {
                let min_eigenvalue = self.min_similarity_eigenvalue(t);
                NegativeTypeSample {
                    t,
                    min_eigenvalue,
                    pass: min_eigenvalue > 1e-12,
                }
            })
            .collect();
        let all_pass = samples.iter().all(|s| s.pass);
        NegativeTypeReport { samples, all_pass }
    }

    fn min_similarity_eigenvalue(&self, t: f64) -> f64 {
        let n = self.len();
        let z = DMatrix::from_fn(n, n, |i, j| {
            let d = self.dist[i][j].to_f64();
            if d.is_infinite() {
                0.0
            } else {
                (-t * d).exp()
            }
        });
        z.symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Schoenberg criterion for Euclidean embeddability: the squared-distance
    /// matrix restricted to the hyperplane `sum v_i = 0` must be negative
    /// semidefinite (eigenvalues <= 1e-9).
    pub fn schoenberg_check(&self) -> Result<bool> {
        let d = self.finite_matrix()?;
        let n = self.len();
        let sq = DMatrix::from_fn(n, n, |i, j| {
            let v = crate::rational::rational_to_f64(&d[i][j]);
            v * v
        });
        let proj = DMatrix::from_fn(n, n, |i, j| {
            (if i == j { 1.0 } else { 0.0 }) - 1.0 / n as f64
        });
        let m = &proj * &sq * &proj;
        let max_eig = m
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(max_eig <= 1e-9)
    }

    /// Seeded random metric space: off-diagonal distances drawn i.i.d. from
    /// the grid `{8/8, 9/8, ..., 16/8}` in `[1, 2]`. The triangle inequality
    /// holds structurally since all distances lie in `[1, 2]`.
    pub fn sample_random(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut dist = vec![vec![ExtRational::zero(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let numer: i64 = rng.gen_range(8..=16);
                let d = ExtRational::Finite(Rational::new(BigInt::from(numer), BigInt::from(8)));
                dist[i][j] = d.clone();
                dist[j][i] = d;
            }
        }
        Self::from_matrix(dist)
    }
}

/// Per-sample outcome of the negative-type eigenvalue check.
#[derive(Debug, Clone)]
pub struct NegativeTypeSample {
    pub t: f64,
    pub min_eigenvalue: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct NegativeTypeReport {
    pub samples: Vec<NegativeTypeSample>,
    pub all_pass: bool,
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {e:?}")));
            }
            normalized.push(e);
        }
        normalized.sort_unstable();
        Ok(Graph {
            n,
            edges: normalized,
        })
    }

    /// Path graph on `n` vertices.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    /// Cycle graph on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("cycle needs at least 3 vertices".into()));
        }
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::new(n, edges)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    /// Complete bipartite graph `K_{m,n}`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..m {
            for j in 0..n {
                edges.push((i, m + j));
            }
        }
        Graph::new(m + n, edges).unwrap()
    }

    /// Star graph `K_{1,n}`: vertex 0 joined to `n` leaves.
    pub fn star(n: usize) -> Self {
        Graph::complete_bipartite(1, n)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// True iff the graph is acyclic.
    pub fn is_forest(&self) -> bool {
        // A graph is a forest iff #edges = #vertices - #components.
        self.edges.len() + self.component_count() == self.n
    }
}
