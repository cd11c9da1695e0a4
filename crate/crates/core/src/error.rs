use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("quantum integer [{0}] is undefined for n <= 0")]
    NonPositiveQuantumInteger(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop at vertex `{0}` is not allowed")]
    Loop(String),
    #[error("multiple edge between `{0}` and `{1}` is not allowed")]
    MultipleEdge(String, String),
    #[error("weight has {got} entries, graph has {expected} vertices")]
    WeightLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlrError {
    #[error("ambient weight mismatch: expected {expected:?}, got {got:?}")]
    WeightMismatch { expected: Vec<u32>, got: Vec<u32> },
    #[error("sequence {0:?} does not have the algebra's weight")]
    SequenceWeight(Vec<usize>),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilHeckeError {
    #[error("nilHecke rank must be at least 1, got {0}")]
    RankTooSmall(usize),
    #[error("matrix units are only computed for m <= 3, got {0}")]
    RankTooLarge(usize),
    #[error("no dual basis found in bounded degree for m = {0}")]
    SolverFailure(usize),
    #[error("series for m = {m} did not stabilize below degree {cutoff}")]
    Unstable { m: usize, cutoff: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UplusError {
    #[error("split weights do not add up to the weight of the word")]
    SplitMismatch,
    #[error("vertices must be distinct")]
    SameVertex,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("projectives have different weights")]
    WeightMismatch,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("no inverse pair found at these shifts")]
    NoIsomorphism,
    #[error("graded dimension series did not stabilize below degree {0}")]
    Unstable(i64),
    #[error(transparent)]
    Klr(#[from] KlrError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}
