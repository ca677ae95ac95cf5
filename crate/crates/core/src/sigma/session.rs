use rand::RngCore;

use super::{
    Challenge, KeyPair, Rejection, RoundRecord, Scheme, SigmaError, Transcript, Verdict,
};

/// Where a verifier gets its challenge bits.
pub trait ChallengeSource {
    fn next_challenge(&mut self) -> Challenge;
}

/// Uniform challenges from a verifier-owned RNG.
#[derive(Debug, Clone)]
pub struct RngChallenges<R>(pub R);

impl<R: RngCore> ChallengeSource for RngChallenges<R> {
    fn next_challenge(&mut self) -> Challenge {
        Challenge::random(&mut self.0)
    }
}

/// A fixed challenge sequence, repeated cyclically. Used to force both
/// challenge values to occur.
#[derive(Debug, Clone)]
pub struct ScriptedChallenges {
    seq: Vec<Challenge>,
    pos: usize,
}

impl ScriptedChallenges {
    pub fn new(seq: Vec<Challenge>) -> Self {
        assert!(!seq.is_empty(), "challenge script must be nonempty");
        ScriptedChallenges { seq, pos: 0 }
    }

    /// Alternating 0, 1, 0, 1, ...
    pub fn alternating() -> Self {
        Self::new(vec![Challenge::Zero, Challenge::One])
    }
}

impl ChallengeSource for ScriptedChallenges {
    fn next_challenge(&mut self) -> Challenge {
        let c = self.seq[self.pos % self.seq.len()];
        self.pos += 1;
        c
    }
}

/// Prover side: alternates commit and respond, holding the round's
/// ephemeral secret in between.
pub struct ProverSession<'a, S: Scheme> {
    scheme: &'a S,
    keypair: &'a KeyPair<S>,
    pending: Option<S::Ephemeral>,
    completed: usize,
}

impl<'a, S: Scheme> ProverSession<'a, S> {
    pub fn new(scheme: &'a S, keypair: &'a KeyPair<S>) -> Result<Self, SigmaError> {
        if !keypair.is_valid(scheme) {
            return Err(SigmaError::InvalidKeyPair);
        }
        Ok(ProverSession {
            scheme,
            keypair,
            pending: None,
            completed: 0,
        })
    }

    pub fn commit(&mut self, rng: &mut dyn RngCore) -> Result<S::Commitment, SigmaError> {
        if self.pending.is_some() {
            return Err(SigmaError::OutOfOrder("commit while a round is open"));
        }
        let (commitment, ephemeral) =
            self.scheme
                .commit(&self.keypair.statement, &self.keypair.witness, rng);
        self.pending = Some(ephemeral);
        Ok(commitment)
    }

    pub fn commit_bytes(&mut self, rng: &mut dyn RngCore) -> Result<Vec<u8>, SigmaError> {
        let c = self.commit(rng)?;
        Ok(self.scheme.encode_commitment(&c))
    }

    /// Answers the open round and consumes its ephemeral secret.
    pub fn respond(&mut self, challenge: Challenge) -> Result<S::Response, SigmaError> {
        let ephemeral = self
            .pending
            .take()
            .ok_or(SigmaError::OutOfOrder("respond before commit"))?;
        self.completed += 1;
        Ok(self.scheme.respond(
            &self.keypair.statement,
            &self.keypair.witness,
            &ephemeral,
            challenge,
        ))
    }

    pub fn respond_bytes(&mut self, challenge: Challenge) -> Result<Vec<u8>, SigmaError> {
        let r = self.respond(challenge)?;
        Ok(self.scheme.encode_response(&r))
    }

    pub fn rounds_completed(&self) -> usize {
        self.completed
    }
}

enum VerifierState {
    Idle,
    Committed { commitment: Vec<u8> },
    Challenged { commitment: Vec<u8>, challenge: Challenge },
}

/// Verifier side. The challenge for a round can only be drawn after that
/// round's commitment has been received in full.
pub struct VerifierSession<'a, S: Scheme> {
    scheme: &'a S,
    statement: &'a S::Statement,
    rounds: usize,
    state: VerifierState,
    records: Vec<RoundRecord>,
    rejections: Vec<(usize, Rejection)>,
}

impl<'a, S: Scheme> VerifierSession<'a, S> {
    pub fn new(
        scheme: &'a S,
        statement: &'a S::Statement,
        rounds: usize,
    ) -> Result<Self, SigmaError> {
        if rounds == 0 {
            return Err(SigmaError::ZeroRounds);
        }
        Ok(VerifierSession {
            scheme,
            statement,
            rounds,
            state: VerifierState::Idle,
            records: Vec::with_capacity(rounds),
            rejections: Vec::new(),
        })
    }

    pub fn receive_commitment(&mut self, commitment: Vec<u8>) -> Result<(), SigmaError> {
        match self.state {
            VerifierState::Idle if !self.is_complete() => {
                self.state = VerifierState::Committed { commitment };
                Ok(())
            }
            VerifierState::Idle => {
                Err(SigmaError::OutOfOrder("commitment after final round"))
            }
            _ => Err(SigmaError::OutOfOrder("commitment while a round is open")),
        }
    }

    pub fn issue_challenge(
        &mut self,
        source: &mut dyn ChallengeSource,
    ) -> Result<Challenge, SigmaError> {
        match std::mem::replace(&mut self.state, VerifierState::Idle) {
            VerifierState::Committed { commitment } => {
                let challenge = source.next_challenge();
                self.state = VerifierState::Challenged {
                    commitment,
                    challenge,
                };
                Ok(challenge)
            }
            other => {
                self.state = other;
                Err(SigmaError::OutOfOrder("challenge before commitment"))
            }
        }
    }

    /// Records the response and returns this round's outcome. Undecodable
    /// values count as a rejected round.
    pub fn receive_response(
        &mut self,
        response: Vec<u8>,
    ) -> Result<Result<(), Rejection>, SigmaError> {
        let (commitment, challenge) =
            match std::mem::replace(&mut self.state, VerifierState::Idle) {
                VerifierState::Challenged {
                    commitment,
                    challenge,
                } => (commitment, challenge),
                other => {
                    self.state = other;
                    return Err(SigmaError::OutOfOrder("response before challenge"));
                }
            };
        let record = RoundRecord {
            commitment,
            challenge,
            response,
        };
        let outcome = check_record(self.scheme, self.statement, &record);
        if let Err(r) = &outcome {
            self.rejections.push((self.records.len(), r.clone()));
        }
        self.records.push(record);
        Ok(outcome)
    }

    pub fn is_complete(&self) -> bool {
        self.records.len() == self.rounds
    }

    pub fn rounds_done(&self) -> usize {
        self.records.len()
    }

    /// Per-round rejection diagnostics so far, by round index.
    pub fn rejections(&self) -> &[(usize, Rejection)] {
        &self.rejections
    }

    pub fn finish(self) -> Result<Transcript, SigmaError> {
        if !self.is_complete() || !matches!(self.state, VerifierState::Idle) {
            return Err(SigmaError::OutOfOrder("finish before all rounds completed"));
        }
        Ok(Transcript {
            scheme: S::ID,
            statement: self.scheme.encode_statement(self.statement),
            verdict: Verdict::from_accept(self.rejections.is_empty()),
            rounds: self.records,
        })
    }
}

pub(crate) fn check_record<S: Scheme>(
    scheme: &S,
    statement: &S::Statement,
    record: &RoundRecord,
) -> Result<(), Rejection> {
    let commitment = scheme
        .decode_commitment(statement, &record.commitment)
        .map_err(|e| Rejection::new(format!("undecodable commitment: {e}")))?;
    let response = scheme
        .decode_response(statement, &record.response)
        .map_err(|e| Rejection::new(format!("undecodable response: {e}")))?;
    scheme.check_round(statement, &commitment, record.challenge, &response)
}
