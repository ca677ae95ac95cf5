//! Zero-knowledge identification schemes built from actions.
//!
//! A prover holds a secret that maps one public object onto another (a graph
//! isomorphism, a subgraph embedding, a proper coloring, a discrete
//! logarithm). Each round it commits to a freshly randomized image, the
//! verifier asks for one of two openings, and either opening alone reveals
//! nothing about the secret while both together reveal it.
//!
//! * [`graph`]: graphs, permutations, colorings and embeddings.
//! * [`sigma`]: the scheme-agnostic engine, session state machines,
//!   extraction and simulation.
//! * [`schemes`]: graph isomorphism, subgraph isomorphism, k-coloring and
//!   modular exponentiation.
//! * [`wire`]: framing and the networked prover/verifier endpoints.
//! * [`adversary`]: forgery measurement and brute-force oracles.
//! * [`keyfile`]: the JSON key file envelope.

pub mod adversary;
pub mod codec;
pub mod graph;
pub mod keyfile;
pub mod schemes;
pub mod sigma;
pub mod wire;

pub use adversary::{measure_forgery_rate, AdversaryError, ForgeryReport};
pub use graph::{Coloring, Graph, GraphError, Permutation, VertexEmbedding};
pub use keyfile::{AnyKeyPair, AnyStatement, KeyFileError};
pub use schemes::{ColoringScheme, GraphIso, ModExp, SchemeError, SubgraphIso};
pub use sigma::{
    Challenge, KeyPair, RoundRecord, Scheme, SchemeId, SigmaError, Transcript, Verdict,
    DEFAULT_ROUNDS,
};
pub use wire::{SessionConfig, StatementPolicy, WireError};
