use crate::error::OrderingError;

/// A linear ordering of `0..n`: the sequence together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl Ordering {
    pub fn new(sequence: Vec<usize>) -> Result<Self, OrderingError> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (i, &x) in sequence.iter().enumerate() {
            if x >= n || position[x] != usize::MAX {
                return Err(OrderingError::NotBijective(x));
            }
            position[x] = i;
        }
        Ok(Self { sequence, position })
    }

    /// Like [`Ordering::new`] but also checks the ground set size.
    pub fn with_len(sequence: Vec<usize>, n: usize) -> Result<Self, OrderingError> {
        if sequence.len() != n {
            return Err(OrderingError::WrongLength { expected: n, found: sequence.len() });
        }
        Self::new(sequence)
    }

    pub fn identity(n: usize) -> Self {
        Self { sequence: (0..n).collect(), position: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Zero-based position of `x`.
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    pub fn first(&self) -> Option<usize> {
        self.sequence.first().copied()
    }

    /// `x` strictly left of `y`.
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    pub fn into_sequence(self) -> Vec<usize> {
        self.sequence
    }
}
