use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("element index {index} out of range for a ground set of size {size}")]
    UnknownElement { index: usize, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("ordering has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("element {0} appears twice or is out of range")]
    NotBijective(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("triple ({0}, {1}, {2}) repeats an element")]
    RepeatedElement(String, String, String),
    #[error("pair ({0}, {0}) relates an element to itself")]
    ReflexivePair(String),
    #[error("element index {0} out of range")]
    UnknownElement(usize),
    #[error("element `{0}` occurs in more than one triple")]
    SharedElement(String),
}

/// A syntax or validation error in an input file. `line` is 1-based; 0
/// marks problems with the file as a whole.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", if *line > 0 { format!("line {line}: ") } else { String::new() })]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }

    pub fn whole(message: impl Into<String>) -> Self {
        Self::new(0, message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid clause {clause}: {reason}")]
    InvalidClause { clause: usize, reason: String },
    #[error("assignment has {found} values for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("assignment leaves clause {0} unsatisfied")]
    UnsatisfiedClause(usize),
    #[error("ordering is not a witness for the reduced instance: {0}")]
    InvalidWitness(String),
    #[error("the induced order is not a partial order (cycle through {0:?})")]
    InconsistentOrder(Vec<String>),
    #[error("the induced order is not a cs-tree")]
    NotCsTree,
    #[error("instance has precedence pairs; lower them to triples first")]
    HasPairs,
    #[error("triple ({0}, {1}, {2}) can never be satisfied: its first element lies strictly between the others")]
    ForcedBetween(String, String, String),
    #[error("the height variant needs a spanning tree of height at least 2, got {0}")]
    TreeTooShallow(usize),
    #[error("invalid multicolor graph: {0}")]
    InvalidColoring(String),
    #[error("generated instance failed validation: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}
