use crate::caps::Caps;
use crate::error::{cap, input, Result};
use crate::graph::Graph;

/// A binary CSP: one nonempty relation `X_e ⊆ Σ × Σ` per edge `e = (u, v)`,
/// read as (symbol at `u`, symbol at `v`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Csp2Instance {
    graph: Graph,
    alphabet: usize,
    allowed: Vec<Vec<bool>>,
}

impl Csp2Instance {
    /// `constraints[e]` lists the allowed pairs of edge `e` (in graph order).
    pub fn new(graph: Graph, alphabet: usize, constraints: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        if constraints.len() != graph.edge_count() {
            return input(format!(
                "{} constraint sets for {} edges",
                constraints.len(),
                graph.edge_count()
            ));
        }
        let mut allowed = Vec::with_capacity(constraints.len());
        for (e, pairs) in constraints.iter().enumerate() {
            if pairs.is_empty() {
                return input(format!("constraint of edge {e} is empty"));
            }
            let mut table = vec![false; alphabet * alphabet];
            for &(a, b) in pairs {
                if a >= alphabet || b >= alphabet {
                    return input(format!("pair ({a}, {b}) on edge {e} outside alphabet {alphabet}"));
                }
                table[a * alphabet + b] = true;
            }
            allowed.push(table);
        }
        Ok(Self {
            graph,
            alphabet,
            allowed,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn allows(&self, e: usize, a: usize, b: usize) -> bool {
        self.allowed[e][a * self.alphabet + b]
    }

    /// The allowed pairs of edge `e` in lexicographic order.
    pub fn pairs(&self, e: usize) -> Vec<(usize, usize)> {
        let s = self.alphabet;
        self.allowed[e]
            .iter()
            .enumerate()
            .filter(|(_, &ok)| ok)
            .map(|(i, _)| (i / s, i % s))
            .collect()
    }

    fn check_total(&self, lambda: &[usize]) -> Result<()> {
        if lambda.len() != self.graph.vertex_count() {
            return input(format!(
                "assignment covers {} of {} vertices",
                lambda.len(),
                self.graph.vertex_count()
            ));
        }
        if let Some(v) = lambda.iter().position(|&s| s >= self.alphabet) {
            return input(format!("symbol {} at vertex {v} outside alphabet", lambda[v]));
        }
        Ok(())
    }

    /// Number of edges satisfied by the total assignment `lambda`.
    pub fn csp_value(&self, lambda: &[usize]) -> Result<usize> {
        self.check_total(lambda)?;
        Ok(self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, &(u, v))| self.allows(e, lambda[u], lambda[v]))
            .count())
    }

    /// The optimum over all `|Σ|^|V|` total assignments, with the first
    /// optimal assignment in search order.
    pub fn csp_opt_bruteforce(&self, caps: &Caps) -> Result<(usize, Vec<usize>)> {
        let n = self.graph.vertex_count();
        let space = (self.alphabet as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if space > caps.enumeration {
            return cap("2-CSP assignments", space, caps.enumeration);
        }
        if n == 0 {
            return Ok((0, Vec::new()));
        }
        if self.alphabet == 0 {
            return input("empty alphabet with a nonempty vertex set");
        }
        let back: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|v| {
                self.graph
                    .incident_edges(v)
                    .iter()
                    .filter_map(|&e| {
                        let (a, b) = self.graph.edge(e);
                        (b == v).then_some((e, a))
                    })
                    .collect()
            })
            .collect();
        // edges still undecided once vertices 0..v are fixed
        let mut open_after = vec![0usize; n + 1];
        for v in (0..n).rev() {
            open_after[v] = open_after[v + 1] + back[v].len();
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut current = vec![0usize; n];
        self.search(0, 0, &back, &open_after, &mut current, &mut best);
        Ok(best.expect("at least one assignment is enumerated"))
    }

    fn search(
        &self,
        v: usize,
        score: usize,
        back: &[Vec<(usize, usize)>],
        open_after: &[usize],
        current: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>)>,
    ) {
        let n = current.len();
        if let Some((b, _)) = best {
            if score + open_after[v] <= *b {
                return;
            }
        }
        if v == n {
            *best = Some((score, current.clone()));
            return;
        }
        for s in 0..self.alphabet {
            current[v] = s;
            let gained = back[v]
                .iter()
                .filter(|&&(e, u)| self.allows(e, current[u], s))
                .count();
            self.search(v + 1, score + gained, back, open_after, current, best);
            if best.as_ref().is_some_and(|(b, _)| *b == self.graph.edge_count()) {
                return;
            }
        }
    }
}
