use std::fmt;

/// A labeling of vertices by symbols where `None` plays the role of ⊥.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartialAssignment {
    values: Vec<Option<usize>>,
}

impl PartialAssignment {
    pub fn new(values: Vec<Option<usize>>) -> Self {
        Self { values }
    }

    pub fn unassigned(n: usize) -> Self {
        Self {
            values: vec![None; n],
        }
    }

    pub fn total(symbols: &[usize]) -> Self {
        Self {
            values: symbols.iter().copied().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of vertices that are not ⊥.
    pub fn size(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, value: Option<usize>) {
        self.values[v] = value;
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    /// Keeps only the vertices for which `keep` returns true.
    pub fn restricted(&self, keep: impl Fn(usize) -> bool) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(v, &s)| if keep(v) { s } else { None })
            .collect();
        Self { values }
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match v {
                Some(s) => write!(f, "{s}")?,
                None => write!(f, "⊥")?,
            }
        }
        write!(f, ")")
    }
}
