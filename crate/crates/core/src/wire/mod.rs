//! Length-prefixed message framing and the networked prover and verifier.

mod endpoint;
mod frame;
mod transport;

pub use endpoint::{
    prover_endpoint, verifier_endpoint, ProverOutcome, SessionConfig, StatementPolicy,
    VerifierOutcome, DEFAULT_TIMEOUT,
};
pub use frame::{
    decode_message, encode_message, FrameError, Hello, Message, Tag, HEADER_LEN, MAX_PAYLOAD,
    PROTOCOL_VERSION,
};
pub use transport::{loopback_pair, Duplex, FramedStream, LoopbackStream, Tap, TappedStream};

use std::io;

use thiserror::Error;

use crate::codec::CodecError;
use crate::sigma::{SchemeId, SigmaError};

#[derive(Debug, Error)]
pub enum WireError {
    #[error("protocol violation: expected {expected}, got {got:?}")]
    ProtocolViolation { expected: &'static str, got: Tag },
    #[error("timed out waiting for peer")]
    Timeout,
    #[error("transport closed by peer")]
    TransportClosed,
    #[error("public key does not match the pinned statement")]
    StatementMismatch,
    #[error("scheme mismatch: expected {expected}, peer sent {got}")]
    SchemeMismatch { expected: SchemeId, got: SchemeId },
    #[error("round count mismatch: expected {expected}, peer sent {got}")]
    RoundCountMismatch { expected: u32, got: u32 },
    #[error("unsupported protocol version {0}")]
    UnsupportedVersion(u8),
    #[error("bad session configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error("i/o error: {0}")]
    Io(io::Error),
}

impl WireError {
    pub(crate) fn from_io(e: io::Error) -> Self {
        match e.kind() {
            io::ErrorKind::TimedOut | io::ErrorKind::WouldBlock => WireError::Timeout,
            io::ErrorKind::UnexpectedEof
            | io::ErrorKind::BrokenPipe
            | io::ErrorKind::ConnectionReset
            | io::ErrorKind::ConnectionAborted => WireError::TransportClosed,
            _ => WireError::Io(e),
        }
    }
}
