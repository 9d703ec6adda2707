use thiserror::Error;

/// Errors raised by instance construction, queries on the search view,
/// generators and the exhaustive oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} count {got} exceeds the capacity limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("element id {element} is out of range (n = {n})")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("element id {element} is repeated in set {set}")]
    RepeatedElement { element: usize, set: usize },
    #[error("weight {weight} of set {set} is negative or not finite")]
    InvalidWeight { set: usize, weight: f64 },
    #[error("{sets} sets but {weights} weights")]
    LengthMismatch { sets: usize, weights: usize },
    #[error("element {0} is not active")]
    InactiveElement(usize),
    #[error("element {y} is not a partner of element {x}")]
    NotPartner { x: usize, y: usize },
    #[error("the active ground set is empty")]
    EmptyGroundSet,
    #[error("packing element {0} is not contained in any set")]
    UnusedElement(usize),
    #[error("outcome carries no cover")]
    NoCover,
    #[error("invalid parameter: {0}")]
    Parameter(&'static str),
}
