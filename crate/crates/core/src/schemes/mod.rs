//! Concrete instances of the generic protocol.

pub mod coloring;
pub mod graph_iso;
pub mod modexp;
pub mod subgraph_iso;

pub use coloring::{ColoringKeyPair, ColoringResponse, ColoringScheme, ColoringStatement};
pub use graph_iso::{GraphIso, GraphIsoKeyPair, GraphIsoStatement};
pub use modexp::{is_prime, mod_inverse, mod_pow, ModExp, ModExpKeyPair, ModExpStatement};
pub use subgraph_iso::{
    SubgraphEphemeral, SubgraphIso, SubgraphIsoKeyPair, SubgraphResponse, SubgraphStatement,
    SubgraphWitness,
};

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("modulus must be at least 2")]
    BadModulus,
    #[error("not an odd prime: {0}")]
    NotPrime(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
