//! Simple graphs with oriented edges.
//!
//! Every stored edge `(u, v)` has `u < v`, and the edge list is kept in
//! lexicographic order, so the edge index doubles as the lexicographic rank.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{input, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, orienting each pair as `(min, max)`. Self-loops,
    /// duplicate edges and out-of-range endpoints are rejected.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return input(format!("edge ({a}, {b}) out of range for {vertex_count} vertices"));
            }
            if a == b {
                return input(format!("self-loop at vertex {a}"));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return input(format!("duplicate edge ({a}, {b})"));
            }
        }
        Ok(Self::from_sorted(vertex_count, set.into_iter().collect()))
    }

    fn from_sorted(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut incident = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        Self {
            vertex_count,
            edges,
            incident,
        }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted(vertex_count, Vec::new())
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        Self::from_sorted(k, edges)
    }

    pub fn path(k: usize) -> Self {
        Self::new(k, (1..k).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// The circulant graph on an even number `n >= 4` of vertices with a
    /// Hamiltonian cycle plus the `n/2` antipodal chords (the Möbius ladder).
    /// It is simple and 3-regular; for `n = 4` it is `K4`.
    pub fn mobius_ladder(n: usize) -> Result<Self> {
        if n < 4 || n % 2 == 1 {
            return input(format!("Möbius ladder needs an even vertex count >= 4, got {n}"));
        }
        let cycle = (0..n).map(|i| (i, (i + 1) % n));
        let chords = (0..n / 2).map(|i| (i, i + n / 2));
        Self::new(n, cycle.chain(chords))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Indices of the edges incident to `v`, in increasing order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(move |&e| {
            let (a, b) = self.edges[e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.incident.iter().all(|inc| inc.len() == r)
    }

    /// Whether the subgraph induced by `set` is connected. The empty set is
    /// not considered connected.
    pub fn is_connected_subset(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let members: BTreeSet<usize> = set.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if members.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == members.len()
    }

    /// Vertices in breadth-first order, restarting at the smallest unvisited
    /// vertex for every component.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        let mut order = Vec::with_capacity(self.vertex_count);
        for root in 0..self.vertex_count {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                let mut next: Vec<usize> = self.neighbors(v).filter(|&w| !seen[w]).collect();
                next.sort_unstable();
                for w in next {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }
}
