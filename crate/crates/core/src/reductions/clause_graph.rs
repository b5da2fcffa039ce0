use crate::csp::SatInstance;
use crate::graph::Graph;

/// One vertex per clause; two clauses are adjacent iff they share a variable.
pub fn build_clause_conflict_graph(phi: &SatInstance) -> Graph {
    let vars: Vec<_> = (0..phi.clauses().len()).map(|c| phi.clause_vars(c)).collect();
    let mut edges = Vec::new();
    for a in 0..vars.len() {
        for b in a + 1..vars.len() {
            if vars[a].iter().any(|x| vars[b].contains(x)) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(vars.len(), edges).expect("clause pairs are distinct and in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::Literal;

    fn clause(a: usize, b: usize, c: usize) -> [Literal; 3] {
        [Literal::pos(a), Literal::neg(b), Literal::pos(c)]
    }

    #[test]
    fn examples() {
        let disjoint = SatInstance::with_tight_bound(6, vec![clause(0, 1, 2), clause(3, 4, 5)]).unwrap();
        assert_eq!(build_clause_conflict_graph(&disjoint).edge_count(), 0);

        let shared = SatInstance::with_tight_bound(5, vec![clause(0, 1, 2), clause(0, 3, 4)]).unwrap();
        assert_eq!(build_clause_conflict_graph(&shared).edges(), &[(0, 1)]);

        let triangle =
            SatInstance::with_tight_bound(6, vec![clause(0, 1, 2), clause(0, 3, 4), clause(2, 4, 5)]).unwrap();
        assert_eq!(build_clause_conflict_graph(&triangle).edges(), &[(0, 1), (0, 2), (1, 2)]);
    }
}
