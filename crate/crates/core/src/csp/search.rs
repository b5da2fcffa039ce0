//! Exhaustive search for a maximum-size consistent partial assignment.

use crate::graph::Graph;

use super::PartialAssignment;

/// Depth-first search over vertices in index order. Each vertex tries its
/// candidate symbols in order and then ⊥. A branch dies as soon as an edge
/// between two assigned vertices is violated, or when it can no longer beat
/// the best size found so far. The search is exhaustive: the returned size is
/// the true maximum.
pub(crate) fn max_consistent_partial(
    graph: &Graph,
    candidates: &[Vec<usize>],
    compatible: impl Fn(usize, usize, usize) -> bool,
) -> (usize, PartialAssignment) {
    let n = graph.vertex_count();
    // For each vertex, the edges to lower-indexed neighbors.
    let back_edges: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|v| {
            graph
                .incident_edges(v)
                .iter()
                .filter_map(|&e| {
                    let (a, b) = graph.edge(e);
                    (b == v).then_some((e, a))
                })
                .collect()
        })
        .collect();

    let mut search = Search {
        n,
        candidates,
        back_edges: &back_edges,
        compatible: &compatible,
        current: vec![None; n],
        best_size: None,
        best: vec![None; n],
    };
    search.descend(0, 0);
    (
        search.best_size.unwrap_or(0),
        PartialAssignment::new(search.best),
    )
}

struct Search<'a, F> {
    n: usize,
    candidates: &'a [Vec<usize>],
    back_edges: &'a [Vec<(usize, usize)>],
    compatible: &'a F,
    current: Vec<Option<usize>>,
    best_size: Option<usize>,
    best: Vec<Option<usize>>,
}

impl<F: Fn(usize, usize, usize) -> bool> Search<'_, F> {
    fn descend(&mut self, v: usize, size: usize) {
        if let Some(best) = self.best_size {
            if size + (self.n - v) <= best {
                return;
            }
        }
        if v == self.n {
            self.best_size = Some(size);
            self.best.clone_from(&self.current);
            return;
        }
        for &sym in &self.candidates[v] {
            let ok = self.back_edges[v].iter().all(|&(e, u)| match self.current[u] {
                Some(su) => (self.compatible)(e, su, sym),
                None => true,
            });
            if ok {
                self.current[v] = Some(sym);
                self.descend(v + 1, size + 1);
                self.current[v] = None;
                if self.best_size == Some(self.n) {
                    return;
                }
            }
        }
        self.descend(v + 1, size);
    }
}
