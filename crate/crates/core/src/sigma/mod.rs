//! Generic three-move identification engine.
//!
//! A [`Scheme`] supplies the concrete action: how to commit, how to answer
//! each challenge bit, how the verifier checks a round, how a witness is
//! recovered from two accepting answers to one commitment, and how an
//! accepting round is simulated without the witness. The engine runs
//! multi-round sessions over opaque byte values and never interprets them.

mod engine;
mod session;

pub use engine::{
    extract_witness, run_session, run_session_with_challenges, simulate_transcript,
    verify_transcript,
};
pub use session::{
    ChallengeSource, ProverSession, RngChallenges, ScriptedChallenges, VerifierSession,
};

use std::fmt;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::CodecError;

/// Default number of rounds per session (forgery bound 2^-32).
pub const DEFAULT_ROUNDS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeId {
    GraphIso,
    SubgraphIso,
    Coloring,
    #[serde(rename = "modexp")]
    ModExp,
}

impl SchemeId {
    pub const ALL: [SchemeId; 4] = [
        SchemeId::GraphIso,
        SchemeId::SubgraphIso,
        SchemeId::Coloring,
        SchemeId::ModExp,
    ];

    pub fn to_byte(self) -> u8 {
        match self {
            SchemeId::GraphIso => 1,
            SchemeId::SubgraphIso => 2,
            SchemeId::Coloring => 3,
            SchemeId::ModExp => 4,
        }
    }

    pub fn from_byte(b: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.to_byte() == b)
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::GraphIso => "graph-iso",
            SchemeId::SubgraphIso => "subgraph-iso",
            SchemeId::Coloring => "coloring",
            SchemeId::ModExp => "modexp",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown scheme '{s}'"))
    }
}

/// The verifier's one-bit challenge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Challenge {
    Zero,
    One,
}

impl Challenge {
    pub fn from_bit(bit: u8) -> Result<Self, SigmaError> {
        match bit {
            0 => Ok(Challenge::Zero),
            1 => Ok(Challenge::One),
            other => Err(SigmaError::UnsupportedChallenge(other)),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Challenge::Zero => 0,
            Challenge::One => 1,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen::<bool>() {
            Challenge::One
        } else {
            Challenge::Zero
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Challenge::Zero => Challenge::One,
            Challenge::One => Challenge::Zero,
        }
    }
}

/// Why a round was rejected. Rejection is a verdict, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection(pub String);

impl Rejection {
    pub fn new(reason: impl Into<String>) -> Self {
        Rejection(reason.into())
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Returns `Err(Rejection)` with the formatted reason unless `cond` holds.
macro_rules! ensure_round {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::sigma::Rejection::new(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_round;

#[derive(Debug, Error)]
pub enum SigmaError {
    #[error("witness does not satisfy the statement")]
    InvalidKeyPair,
    #[error("malformed transcript: {0}")]
    MalformedTranscript(String),
    #[error("both responses must verify against the same commitment: {0}")]
    NotBothAccepting(String),
    #[error("response exponent has no inverse modulo the group order")]
    NonInvertibleResponse,
    #[error("extraction failed: {0}")]
    ExtractionFailed(String),
    #[error("unsupported challenge value {0}")]
    UnsupportedChallenge(u8),
    #[error("session step out of order: {0}")]
    OutOfOrder(&'static str),
    #[error("round count must be positive")]
    ZeroRounds,
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// One instance of the generic protocol: an action together with its
/// verification, extraction and simulation rules.
///
/// Encoders produce the byte values the engine and wire carry; decoders take
/// the statement as context because some values (a coloring's palette) are
/// interpreted relative to it.
pub trait Scheme: Send + Sync {
    const ID: SchemeId;

    type Statement: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Witness: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Commitment: Clone + PartialEq + fmt::Debug + Send;
    type Ephemeral: Send;
    type Response: Clone + PartialEq + fmt::Debug + Send;

    /// Whether `witness` proves `statement`.
    fn witness_holds(&self, statement: &Self::Statement, witness: &Self::Witness) -> bool;

    fn commit(
        &self,
        statement: &Self::Statement,
        witness: &Self::Witness,
        rng: &mut dyn RngCore,
    ) -> (Self::Commitment, Self::Ephemeral);

    fn respond(
        &self,
        statement: &Self::Statement,
        witness: &Self::Witness,
        ephemeral: &Self::Ephemeral,
        challenge: Challenge,
    ) -> Self::Response;

    /// Verifier's check for one round, with a diagnostic on rejection.
    fn check_round(
        &self,
        statement: &Self::Statement,
        commitment: &Self::Commitment,
        challenge: Challenge,
        response: &Self::Response,
    ) -> Result<(), Rejection>;

    fn verify_round(
        &self,
        statement: &Self::Statement,
        commitment: &Self::Commitment,
        challenge: Challenge,
        response: &Self::Response,
    ) -> bool {
        self.check_round(statement, commitment, challenge, response)
            .is_ok()
    }

    /// Recovers a witness from accepting answers to both challenges for the
    /// same commitment. Callers go through [`extract_witness`], which checks
    /// both rounds first.
    fn extract(
        &self,
        statement: &Self::Statement,
        commitment: &Self::Commitment,
        response0: &Self::Response,
        response1: &Self::Response,
    ) -> Result<Self::Witness, SigmaError>;

    /// An accepting (commitment, response) pair for `challenge`, produced
    /// from public data only.
    fn simulate(
        &self,
        statement: &Self::Statement,
        challenge: Challenge,
        rng: &mut dyn RngCore,
    ) -> (Self::Commitment, Self::Response);

    fn encode_statement(&self, statement: &Self::Statement) -> Vec<u8>;
    fn decode_statement(&self, bytes: &[u8]) -> Result<Self::Statement, CodecError>;
    fn encode_commitment(&self, commitment: &Self::Commitment) -> Vec<u8>;
    fn decode_commitment(
        &self,
        statement: &Self::Statement,
        bytes: &[u8],
    ) -> Result<Self::Commitment, CodecError>;
    fn encode_response(&self, response: &Self::Response) -> Vec<u8>;
    fn decode_response(
        &self,
        statement: &Self::Statement,
        bytes: &[u8],
    ) -> Result<Self::Response, CodecError>;
}

/// Public statement plus the secret witness proving it.
pub struct KeyPair<S: Scheme> {
    pub statement: S::Statement,
    pub witness: S::Witness,
}

impl<S: Scheme> Clone for KeyPair<S> {
    fn clone(&self) -> Self {
        KeyPair {
            statement: self.statement.clone(),
            witness: self.witness.clone(),
        }
    }
}

impl<S: Scheme> PartialEq for KeyPair<S> {
    fn eq(&self, other: &Self) -> bool {
        self.statement == other.statement && self.witness == other.witness
    }
}

impl<S: Scheme> fmt::Debug for KeyPair<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KeyPair")
            .field("scheme", &S::ID)
            .field("statement", &self.statement)
            .finish_non_exhaustive()
    }
}

impl<S: Scheme> KeyPair<S> {
    /// Pairs a statement with a witness, refusing a witness that does not hold.
    pub fn new(
        scheme: &S,
        statement: S::Statement,
        witness: S::Witness,
    ) -> Result<Self, SigmaError> {
        if !scheme.witness_holds(&statement, &witness) {
            return Err(SigmaError::InvalidKeyPair);
        }
        Ok(KeyPair { statement, witness })
    }

    pub fn is_valid(&self, scheme: &S) -> bool {
        scheme.witness_holds(&self.statement, &self.witness)
    }
}

/// One commitment-challenge-response exchange, values in encoded form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    pub commitment: Vec<u8>,
    pub challenge: Challenge,
    pub response: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }

    pub fn from_accept(ok: bool) -> Self {
        if ok {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub scheme: SchemeId,
    pub statement: Vec<u8>,
    pub rounds: Vec<RoundRecord>,
    pub verdict: Verdict,
}
