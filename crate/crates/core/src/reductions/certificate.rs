use std::fmt;

/// Which way a certificate maps solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Source solution to target solution (completeness).
    Forward,
    /// Target solution to source solution (soundness).
    Backward,
}

/// The numeric claim a certificate makes about the two solution values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `target == source`.
    Equal,
    /// `target >= bound`.
    AtLeast(u64),
}

/// Binds a source solution value to a target solution value through one
/// reduction. `validity` records whether both solutions passed their own
/// checks (consistency, feasibility).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub reduction: &'static str,
    pub source_digest: String,
    pub target_digest: String,
    pub direction: Direction,
    pub relation: Relation,
    pub source_value: u64,
    pub target_value: u64,
    pub validity: bool,
}

impl ReductionCertificate {
    /// Both solutions valid and the claimed relation holds.
    pub fn holds(&self) -> bool {
        self.validity
            && match self.relation {
                Relation::Equal => self.source_value == self.target_value,
                Relation::AtLeast(bound) => self.target_value >= bound,
            }
    }
}

impl fmt::Display for ReductionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relation = match self.relation {
            Relation::Equal => format!("target == source ({})", self.source_value),
            Relation::AtLeast(b) => format!("target >= {b}"),
        };
        write!(
            f,
            "{} {:?}: {} -> {}: {relation}, observed {} [{}]",
            self.reduction,
            self.direction,
            self.source_digest,
            self.target_digest,
            self.target_value,
            if self.holds() { "ok" } else { "FAILED" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_checks() {
        let mut cert = ReductionCertificate {
            reduction: "simple",
            source_digest: "a".into(),
            target_digest: "b".into(),
            direction: Direction::Forward,
            relation: Relation::Equal,
            source_value: 3,
            target_value: 3,
            validity: true,
        };
        assert!(cert.holds());
        cert.relation = Relation::AtLeast(4);
        assert!(!cert.holds());
        cert.relation = Relation::AtLeast(2);
        cert.validity = false;
        assert!(!cert.holds());
        assert!(cert.to_string().contains("FAILED"));
    }
}
