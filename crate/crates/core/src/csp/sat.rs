use std::fmt;

use crate::caps::Caps;
use crate::error::{cap, input, Result};

/// A variable (0-based) with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }

    /// Parses the DIMACS convention: `+k` is variable `k-1`, `-k` its negation.
    pub fn from_dimacs(lit: i64) -> Result<Self> {
        if lit == 0 {
            return input("literal 0 is not allowed");
        }
        let var = (lit.unsigned_abs() - 1) as usize;
        Ok(Self {
            var,
            negated: lit < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let k = self.var as i64 + 1;
        if self.negated {
            -k
        } else {
            k
        }
    }

    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var + 1)
        } else {
            write!(f, "x{}", self.var + 1)
        }
    }
}

pub type Clause = [Literal; 3];

/// A 3-SAT formula in which every variable occurs in at most
/// `occurrence_bound` clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SatInstance {
    variables: usize,
    clauses: Vec<Clause>,
    occurrence_bound: usize,
}

impl SatInstance {
    pub fn new(variables: usize, clauses: Vec<Clause>, occurrence_bound: usize) -> Result<Self> {
        let mut occurrences = vec![0usize; variables];
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= variables {
                    return input(format!("clause {i} references variable {} of {variables}", lit.var));
                }
            }
            let [a, b, c] = clause.map(|l| l.var);
            if a == b || a == c || b == c {
                return input(format!("clause {i} repeats a variable"));
            }
            for lit in clause {
                occurrences[lit.var] += 1;
            }
        }
        if let Some(v) = occurrences.iter().position(|&k| k > occurrence_bound) {
            return input(format!(
                "variable {} occurs {} times, bound is {occurrence_bound}",
                v, occurrences[v]
            ));
        }
        Ok(Self {
            variables,
            clauses,
            occurrence_bound,
        })
    }

    /// Like [`SatInstance::new`] with the occurrence bound set to the actual
    /// maximum number of occurrences.
    pub fn with_tight_bound(variables: usize, clauses: Vec<Clause>) -> Result<Self> {
        let mut occurrences = vec![0usize; variables];
        for lit in clauses.iter().flatten() {
            if lit.var < variables {
                occurrences[lit.var] += 1;
            }
        }
        let bound = occurrences.into_iter().max().unwrap_or(0);
        Self::new(variables, clauses, bound)
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn occurrence_bound(&self) -> usize {
        self.occurrence_bound
    }

    /// Sorted variables of clause `c`.
    pub fn clause_vars(&self, c: usize) -> [usize; 3] {
        let mut vars = self.clauses[c].map(|l| l.var);
        vars.sort_unstable();
        vars
    }

    pub fn clause_satisfied(&self, c: usize, assignment: &[bool]) -> bool {
        self.clauses[c].iter().any(|l| l.eval(assignment[l.var]))
    }

    pub fn count_satisfied(&self, assignment: &[bool]) -> Result<usize> {
        if assignment.len() != self.variables {
            return input(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.variables
            ));
        }
        Ok((0..self.clauses.len())
            .filter(|&c| self.clause_satisfied(c, assignment))
            .count())
    }

    /// The maximum number of simultaneously satisfiable clauses, by
    /// enumerating all `2^n` assignments.
    pub fn sat_opt_bruteforce(&self, caps: &Caps) -> Result<usize> {
        self.best_assignment(caps).map(|(value, _)| value)
    }

    /// Like [`SatInstance::sat_opt_bruteforce`], also returning the first
    /// optimal assignment in counting order (variable 0 is the low bit).
    pub fn best_assignment(&self, caps: &Caps) -> Result<(usize, Vec<bool>)> {
        let n = self.variables;
        if n > caps.sat_variables || n > 63 {
            return cap("3-SAT variables", n, caps.sat_variables);
        }
        let masks: Vec<(u64, u64)> = self
            .clauses
            .iter()
            .map(|clause| {
                clause.iter().fold((0u64, 0u64), |(pos, neg), l| {
                    if l.negated {
                        (pos, neg | 1 << l.var)
                    } else {
                        (pos | 1 << l.var, neg)
                    }
                })
            })
            .collect();
        let m = masks.len();
        let mut best = (0usize, 0u64);
        let mut found = false;
        for s in 0..(1u64 << n) {
            let count = masks
                .iter()
                .filter(|&&(pos, neg)| s & pos != 0 || !s & neg != 0)
                .count();
            if !found || count > best.0 {
                best = (count, s);
                found = true;
                if count == m {
                    break;
                }
            }
        }
        let assignment = (0..n).map(|v| best.1 >> v & 1 == 1).collect();
        Ok((best.0, assignment))
    }
}
