use std::time::Duration;

use rand::RngCore;

use super::frame::{Hello, Message, Tag, PROTOCOL_VERSION};
use super::transport::{Duplex, FramedStream};
use super::WireError;
use crate::sigma::{
    ChallengeSource, KeyPair, ProverSession, Rejection, Scheme, SchemeId, Transcript, Verdict,
    VerifierSession,
};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_millis(5000);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub scheme: SchemeId,
    pub rounds: u32,
    /// Per-message read timeout.
    pub timeout: Duration,
}

impl SessionConfig {
    pub fn new(scheme: SchemeId, rounds: u32) -> Self {
        SessionConfig { scheme, rounds, timeout: DEFAULT_TIMEOUT }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    fn check<S: Scheme>(&self) -> Result<(), WireError> {
        if self.scheme != S::ID {
            return Err(WireError::BadConfig(format!(
                "configured for {} but driving {}",
                self.scheme,
                S::ID
            )));
        }
        if self.rounds == 0 {
            return Err(WireError::BadConfig("round count must be positive".into()));
        }
        if self.timeout.is_zero() {
            return Err(WireError::BadConfig("timeout must be positive".into()));
        }
        Ok(())
    }
}

/// How the verifier treats the public key the prover announces.
pub enum StatementPolicy<S: Scheme> {
    /// Only this statement is accepted.
    Pinned(S::Statement),
    /// Whatever the prover announces is used.
    TrustOnFirstUse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProverOutcome {
    pub verdict: Verdict,
    pub rounds_completed: usize,
}

pub struct VerifierOutcome<S: Scheme> {
    pub verdict: Verdict,
    pub statement: S::Statement,
    pub transcript: Transcript,
    pub rejections: Vec<(usize, Rejection)>,
}

fn expect(m: Message, tag: Tag, expected: &'static str) -> Result<Message, WireError> {
    if m.tag() == tag {
        Ok(m)
    } else {
        Err(WireError::ProtocolViolation { expected, got: m.tag() })
    }
}

/// Runs the prover side: Hello, PublicKey, then per round Commitment,
/// Challenge, Response, and finally the verifier's Verdict.
pub fn prover_endpoint<S: Scheme, T: Duplex>(
    scheme: &S,
    stream: T,
    keypair: &KeyPair<S>,
    config: &SessionConfig,
    rng: &mut dyn RngCore,
) -> Result<ProverOutcome, WireError> {
    config.check::<S>()?;
    let mut session = ProverSession::new(scheme, keypair)?;
    let mut io = FramedStream::new(stream);
    io.set_timeout(Some(config.timeout))?;

    io.send(&Message::hello(Hello {
        version: PROTOCOL_VERSION,
        scheme: S::ID,
        rounds: config.rounds,
    }))?;
    io.send(&Message::public_key(scheme.encode_statement(&keypair.statement)))?;

    for _ in 0..config.rounds {
        io.send(&Message::commitment(session.commit_bytes(rng)?))?;
        let reply = io.recv()?;
        if let Some(verdict) = reply.as_verdict() {
            // verifier gave up early
            return Ok(ProverOutcome { verdict, rounds_completed: session.rounds_completed() });
        }
        let c = expect(reply, Tag::Challenge, "challenge")?
            .as_challenge()
            .expect("challenge frames are validated on decode");
        io.send(&Message::response(session.respond_bytes(c)?))?;
    }
    let done = expect(io.recv()?, Tag::Verdict, "verdict")?;
    Ok(ProverOutcome {
        verdict: done.as_verdict().expect("verdict frames are validated on decode"),
        rounds_completed: session.rounds_completed(),
    })
}

/// Runs the verifier side. Every round is played out before the verdict is
/// sent; an undecodable or failing response makes the verdict Reject.
/// Protocol faults abort the session with a best-effort Reject to the peer.
pub fn verifier_endpoint<S: Scheme, T: Duplex>(
    scheme: &S,
    stream: T,
    policy: &StatementPolicy<S>,
    config: &SessionConfig,
    challenges: &mut dyn ChallengeSource,
) -> Result<VerifierOutcome<S>, WireError> {
    config.check::<S>()?;
    let mut io = FramedStream::new(stream);
    io.set_timeout(Some(config.timeout))?;
    let result = run_verifier(scheme, &mut io, policy, config, challenges);
    if result.is_err() {
        let _ = io.send(&Message::verdict(Verdict::Reject));
    }
    result
}

fn run_verifier<S: Scheme, T: Duplex>(
    scheme: &S,
    io: &mut FramedStream<T>,
    policy: &StatementPolicy<S>,
    config: &SessionConfig,
    challenges: &mut dyn ChallengeSource,
) -> Result<VerifierOutcome<S>, WireError> {
    let hello = Hello::from_bytes(expect(io.recv()?, Tag::Hello, "hello")?.payload())?;
    if hello.version != PROTOCOL_VERSION {
        return Err(WireError::UnsupportedVersion(hello.version));
    }
    if hello.scheme != S::ID {
        return Err(WireError::SchemeMismatch { expected: S::ID, got: hello.scheme });
    }
    if hello.rounds != config.rounds {
        return Err(WireError::RoundCountMismatch { expected: config.rounds, got: hello.rounds });
    }

    let announced = expect(io.recv()?, Tag::PublicKey, "public key")?;
    let statement = scheme.decode_statement(announced.payload())?;
    if let StatementPolicy::Pinned(pinned) = policy {
        if *pinned != statement {
            return Err(WireError::StatementMismatch);
        }
    }

    let mut session = VerifierSession::new(scheme, &statement, config.rounds as usize)?;
    for _ in 0..config.rounds {
        let commitment = expect(io.recv()?, Tag::Commitment, "commitment")?;
        session.receive_commitment(commitment.into_payload())?;
        let c = session.issue_challenge(challenges)?;
        io.send(&Message::challenge(c))?;
        let response = expect(io.recv()?, Tag::Response, "response")?;
        let _ = session.receive_response(response.into_payload())?;
    }
    let rejections = session.rejections().to_vec();
    let transcript = session.finish()?;
    let verdict = transcript.verdict;
    io.send(&Message::verdict(verdict))?;
    Ok(VerifierOutcome { verdict, statement, transcript, rejections })
}
