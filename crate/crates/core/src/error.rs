use crate::semigroup::{Elem, Ray};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family must contain at least one ray")]
    EmptyFamily,

    #[error("ray {0} occurs more than once")]
    DuplicateRay(Ray),

    #[error("family is not omega-closed: {first} ∩ (-{shift} + {second}) is not a member")]
    NotOmegaClosed { first: Ray, second: Ray, shift: u64 },

    #[error("ray {ray} is not a member of the family")]
    NotInFamily { ray: Ray },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("cannot shift {elem} down by {shift}: ray start too small")]
    RayUnderflow { elem: Elem, shift: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{elem} has ray start {} outside the family {{[0),...,[{}) }}", elem.ray.start(), .layers - 1)]
    UnsupportedFamily { elem: Elem, layers: u64 },

    #[error("a{k}.l{m}.w1 contains the layer reversal and is outside the alpha/lambda submonoid")]
    NotInSubmonoid { k: u64, m: u64 },

    #[error("table domain {bound} is too small; pair window {window} needs a domain of at least {needed}")]
    DomainTooSmall {
        bound: u64,
        window: u64,
        needed: u64,
    },

    #[error("identity is sent to the middle layer: (0,0,0) -> {image}")]
    MiddleLayerIdentityImage { image: Elem },

    #[error("table is not the restriction of any normal form: {reason}")]
    NotClassifiable { reason: String },

    #[error("recovered multiplier {0} is not positive")]
    NonPositiveK(i128),

    #[error("table is missing {} key(s), first {}", keys.len(), keys[0])]
    MissingEntry { keys: Vec<Elem> },

    #[error("table entry {index}: {reason}")]
    MalformedEntry { index: usize, reason: String },
}

/// Rejected textual literal, carrying the offending token verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {token:?} as {expected}")]
pub struct ParseError {
    pub token: String,
    pub expected: &'static str,
}

impl ParseError {
    pub(crate) fn new(token: &str, expected: &'static str) -> Self {
        ParseError {
            token: token.to_owned(),
            expected,
        }
    }
}
