//! Impersonation attempts and brute-force witness oracles.
//!
//! The forger enters at the commitment step: it has the public statement
//! but no witness, so each round it bets on the challenge, prepares a
//! simulated round answerable only for that bet, and is caught whenever the
//! verifier asks for the other opening.

mod oracles;

pub use oracles::{
    brute_force_coloring, brute_force_coloring_bounded, brute_force_discrete_log,
    brute_force_discrete_log_bounded, brute_force_isomorphism, brute_force_isomorphism_bounded,
    brute_force_modexp_witness, brute_force_subgraph_isomorphism,
    brute_force_subgraph_isomorphism_bounded, DEFAULT_COLORING_BOUND, DEFAULT_DLOG_BOUND,
    DEFAULT_ISOMORPHISM_BOUND, DEFAULT_SUBGRAPH_HOST_BOUND,
};

use std::fmt;

use rand::RngCore;
use serde::Serialize;
use thiserror::Error;

use crate::sigma::{Challenge, KeyPair, Scheme, SchemeId};

/// Two-sided 99% normal quantile.
const Z_99: f64 = 2.575_829_303_548_900_4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdversaryError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("instance of size {size} exceeds the search bound {bound}")]
    TooLarge { size: u64, bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForgeryReport {
    pub scheme: SchemeId,
    pub rounds: usize,
    pub trials: u64,
    pub successes: u64,
    pub empirical_rate: f64,
    pub expected_rate: f64,
    /// 99% Wilson score interval for the success rate.
    pub confidence_interval: (f64, f64),
}

impl ForgeryReport {
    pub fn new(scheme: SchemeId, rounds: usize, trials: u64, successes: u64) -> Self {
        let expected_rate = 0.5f64.powi(rounds.min(i32::MAX as usize) as i32);
        ForgeryReport {
            scheme,
            rounds,
            trials,
            successes,
            empirical_rate: successes as f64 / trials as f64,
            expected_rate,
            confidence_interval: wilson_interval(successes, trials, Z_99),
        }
    }

    /// Whether the expected rate 2^-k lies in the reported interval.
    pub fn consistent_with_expected(&self) -> bool {
        let (lo, hi) = self.confidence_interval;
        lo <= self.expected_rate && self.expected_rate <= hi
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is plain data")
    }
}

impl fmt::Display for ForgeryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.confidence_interval;
        write!(
            f,
            "{} k={} trials={} successes={} rate={:.6} expected={:.6} ci99=[{:.6}, {:.6}]",
            self.scheme,
            self.rounds,
            self.trials,
            self.successes,
            self.empirical_rate,
            self.expected_rate,
            lo,
            hi
        )
    }
}

/// Wilson score interval for `successes` out of `trials` at quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

fn check_params(rounds: usize, trials: u64) -> Result<(), AdversaryError> {
    if rounds == 0 {
        return Err(AdversaryError::BadParameters("at least one round is required".into()));
    }
    if trials == 0 {
        return Err(AdversaryError::BadParameters("at least one trial is required".into()));
    }
    Ok(())
}

/// One witness-less impersonation attempt over `rounds` rounds.
pub fn forge_session<S: Scheme>(
    scheme: &S,
    statement: &S::Statement,
    rounds: usize,
    rng: &mut dyn RngCore,
) -> bool {
    for _ in 0..rounds {
        let guess = Challenge::random(rng);
        let (commitment, response) = scheme.simulate(statement, guess, rng);
        let challenge = Challenge::random(rng);
        if !scheme.verify_round(statement, &commitment, challenge, &response) {
            return false;
        }
    }
    true
}

/// Runs `trials` independent forgery attempts and reports the success rate.
pub fn measure_forgery_rate<S: Scheme>(
    scheme: &S,
    statement: &S::Statement,
    rounds: usize,
    trials: u64,
    rng: &mut dyn RngCore,
) -> Result<ForgeryReport, AdversaryError> {
    check_params(rounds, trials)?;
    let successes = (0..trials)
        .filter(|_| forge_session(scheme, statement, rounds, rng))
        .count() as u64;
    Ok(ForgeryReport::new(S::ID, rounds, trials, successes))
}

/// The same harness driven by a party that holds the witness and answers
/// honestly. Its rate must be exactly 1.
pub fn measure_witness_holder_rate<S: Scheme>(
    scheme: &S,
    keypair: &KeyPair<S>,
    rounds: usize,
    trials: u64,
    rng: &mut dyn RngCore,
) -> Result<ForgeryReport, AdversaryError> {
    check_params(rounds, trials)?;
    let (st, w) = (&keypair.statement, &keypair.witness);
    let mut successes = 0;
    for _ in 0..trials {
        let all = (0..rounds).all(|_| {
            let (commitment, eph) = scheme.commit(st, w, rng);
            let challenge = Challenge::random(rng);
            let response = scheme.respond(st, w, &eph, challenge);
            scheme.verify_round(st, &commitment, challenge, &response)
        });
        successes += u64::from(all);
    }
    Ok(ForgeryReport::new(S::ID, rounds, trials, successes))
}
