use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::session::check_record;
use super::{
    Challenge, ChallengeSource, KeyPair, ProverSession, RngChallenges, RoundRecord, Scheme,
    SigmaError, Transcript, VerifierSession,
};

/// Runs an honest session of `rounds` rounds in memory.
///
/// Prover randomness comes from `rng`; the verifier's challenges come from
/// a separate generator seeded from `rng`, so the two sides never share state.
pub fn run_session<S: Scheme, R: RngCore>(
    scheme: &S,
    keypair: &KeyPair<S>,
    rounds: usize,
    rng: &mut R,
) -> Result<Transcript, SigmaError> {
    let mut challenges = RngChallenges(ChaCha20Rng::from_rng(&mut *rng).expect("rng failure"));
    run_session_with_challenges(scheme, keypair, rounds, &mut challenges, rng)
}

/// As [`run_session`], but with the verifier's challenges supplied by the caller.
pub fn run_session_with_challenges<S: Scheme, R: RngCore>(
    scheme: &S,
    keypair: &KeyPair<S>,
    rounds: usize,
    challenges: &mut dyn ChallengeSource,
    rng: &mut R,
) -> Result<Transcript, SigmaError> {
    let mut prover = ProverSession::new(scheme, keypair)?;
    let mut verifier = VerifierSession::new(scheme, &keypair.statement, rounds)?;
    while !verifier.is_complete() {
        verifier.receive_commitment(prover.commit_bytes(rng)?)?;
        let c = verifier.issue_challenge(challenges)?;
        let outcome = verifier.receive_response(prover.respond_bytes(c)?)?;
        debug_assert!(outcome.is_ok(), "honest round rejected: {outcome:?}");
    }
    verifier.finish()
}

/// True iff every recorded round verifies against `statement`.
///
/// The transcript's own verdict field is ignored; it is recomputed. An empty
/// transcript or one for another scheme is malformed, not rejected.
pub fn verify_transcript<S: Scheme>(
    scheme: &S,
    statement: &S::Statement,
    transcript: &Transcript,
) -> Result<bool, SigmaError> {
    if transcript.rounds.is_empty() {
        return Err(SigmaError::MalformedTranscript("no rounds".into()));
    }
    if transcript.scheme != S::ID {
        return Err(SigmaError::MalformedTranscript(format!(
            "transcript is for {}, expected {}",
            transcript.scheme,
            S::ID
        )));
    }
    if transcript.statement != scheme.encode_statement(statement) {
        return Ok(false);
    }
    Ok(transcript
        .rounds
        .iter()
        .all(|r| check_record(scheme, statement, r).is_ok()))
}

/// Recovers a witness from two accepting responses to one commitment.
pub fn extract_witness<S: Scheme>(
    scheme: &S,
    statement: &S::Statement,
    commitment: &S::Commitment,
    response0: &S::Response,
    response1: &S::Response,
) -> Result<S::Witness, SigmaError> {
    for (c, r) in [(Challenge::Zero, response0), (Challenge::One, response1)] {
        scheme
            .check_round(statement, commitment, c, r)
            .map_err(|why| SigmaError::NotBothAccepting(format!("c={}: {why}", c.bit())))?;
    }
    let witness = scheme.extract(statement, commitment, response0, response1)?;
    if !scheme.witness_holds(statement, &witness) {
        return Err(SigmaError::ExtractionFailed(
            "recovered value does not satisfy the statement".into(),
        ));
    }
    Ok(witness)
}

/// A verifying round for `challenge` built without the witness.
pub fn simulate_transcript<S: Scheme>(
    scheme: &S,
    statement: &S::Statement,
    challenge: Challenge,
    rng: &mut dyn RngCore,
) -> RoundRecord {
    let (commitment, response) = scheme.simulate(statement, challenge, rng);
    RoundRecord {
        commitment: scheme.encode_commitment(&commitment),
        challenge,
        response: scheme.encode_response(&response),
    }
}
