//! Verifier and prover endpoints against hand-driven peers.

mod common;

use std::thread;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use zkaction::sigma::{RngChallenges, ScriptedChallenges};
use zkaction::wire::{
    loopback_pair, prover_endpoint, verifier_endpoint, FramedStream, Hello, LoopbackStream,
    Message, Tag, PROTOCOL_VERSION,
};
use zkaction::{
    Challenge, GraphIso, Scheme, SchemeId, SessionConfig, StatementPolicy, Verdict, WireError,
};

use common::*;

const ROUNDS: u32 = 8;

fn cfg() -> SessionConfig {
    SessionConfig::new(SchemeId::GraphIso, ROUNDS).with_timeout(Duration::from_secs(2))
}

fn opening(peer: &mut FramedStream<LoopbackStream>, st: &zkaction::schemes::GraphIsoStatement) {
    peer.send(&Message::hello(Hello {
        version: PROTOCOL_VERSION,
        scheme: SchemeId::GraphIso,
        rounds: ROUNDS,
    }))
    .unwrap();
    peer.send(&Message::public_key(GraphIso.encode_statement(st))).unwrap();
}

/// Spawns a verifier on one end and hands the other end to `peer`.
fn against_verifier<T: Send + 'static>(
    st: zkaction::schemes::GraphIsoStatement,
    peer: impl FnOnce(FramedStream<LoopbackStream>) -> T + Send + 'static,
) -> (Result<Verdict, WireError>, T) {
    let (a, b) = loopback_pair();
    let handle = thread::spawn(move || peer(FramedStream::new(a)));
    let v = verifier_endpoint(
        &GraphIso,
        b,
        &StatementPolicy::Pinned(st),
        &cfg(),
        &mut RngChallenges(ChaCha20Rng::seed_from_u64(1)),
    )
    .map(|o| o.verdict);
    (v, handle.join().unwrap())
}

#[test]
fn replayed_commitment_with_honest_answers_accepts() {
    let kp = graph_iso_key(8, 2);
    let st = kp.statement.clone();
    let (v, _) = against_verifier(st, move |mut peer| {
        opening(&mut peer, &kp.statement);
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let (commitment, eph) = GraphIso.commit(&kp.statement, &kp.witness, &mut rng);
        for _ in 0..ROUNDS {
            peer.send(&Message::commitment(GraphIso.encode_commitment(&commitment))).unwrap();
            let c = peer.recv().unwrap().as_challenge().unwrap();
            let r = GraphIso.respond(&kp.statement, &kp.witness, &eph, c);
            peer.send(&Message::response(GraphIso.encode_response(&r))).unwrap();
        }
        peer.recv().unwrap().as_verdict()
    });
    assert_eq!(v.unwrap(), Verdict::Accept);
}

#[test]
fn answering_one_with_the_zero_opening_rejects() {
    let kp = graph_iso_key(8, 4);
    let st = kp.statement.clone();
    let (v, peer_saw) = against_verifier(st, move |mut peer| {
        opening(&mut peer, &kp.statement);
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..ROUNDS {
            let (commitment, eph) = GraphIso.commit(&kp.statement, &kp.witness, &mut rng);
            peer.send(&Message::commitment(GraphIso.encode_commitment(&commitment))).unwrap();
            let _ = peer.recv().unwrap();
            let r = GraphIso.respond(&kp.statement, &kp.witness, &eph, Challenge::Zero);
            peer.send(&Message::response(GraphIso.encode_response(&r))).unwrap();
        }
        peer.recv().unwrap().as_verdict()
    });
    // the verifier's challenges for seed 1 include at least one 1-bit
    assert_eq!(v.unwrap(), Verdict::Reject);
    assert_eq!(peer_saw, Some(Verdict::Reject));
}

#[test]
fn response_before_commitment_is_a_violation() {
    let kp = graph_iso_key(6, 6);
    let st = kp.statement.clone();
    let (v, peer_saw) = against_verifier(st, move |mut peer| {
        opening(&mut peer, &kp.statement);
        peer.send(&Message::response(vec![0; 24])).unwrap();
        peer.recv().unwrap().as_verdict()
    });
    assert!(matches!(
        v,
        Err(WireError::ProtocolViolation { got: Tag::Response, .. })
    ));
    assert_eq!(peer_saw, Some(Verdict::Reject));
}

#[test]
fn garbage_response_counts_as_rejected_round() {
    let kp = graph_iso_key(6, 7);
    let st = kp.statement.clone();
    let (v, _) = against_verifier(st, move |mut peer| {
        opening(&mut peer, &kp.statement);
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        for round in 0..ROUNDS {
            let (commitment, eph) = GraphIso.commit(&kp.statement, &kp.witness, &mut rng);
            peer.send(&Message::commitment(GraphIso.encode_commitment(&commitment))).unwrap();
            let c = peer.recv().unwrap().as_challenge().unwrap();
            let bytes = if round == 3 {
                vec![0xAB; 5]
            } else {
                GraphIso.encode_response(&GraphIso.respond(&kp.statement, &kp.witness, &eph, c))
            };
            peer.send(&Message::response(bytes)).unwrap();
        }
        peer.recv().unwrap().as_verdict()
    });
    assert_eq!(v.unwrap(), Verdict::Reject);
}

#[test]
fn unknown_tag_from_peer_aborts() {
    use std::io::Write;
    let kp = graph_iso_key(6, 9);
    let (a, mut b_raw) = loopback_pair();
    let verifier = thread::spawn(move || {
        verifier_endpoint(
            &GraphIso,
            a,
            &StatementPolicy::Pinned(kp.statement),
            &cfg(),
            &mut ScriptedChallenges::alternating(),
        )
        .map(|o| o.verdict)
    });
    b_raw.write_all(&[0x7F, 0, 0, 0, 0]).unwrap();
    assert!(matches!(verifier.join().unwrap(), Err(WireError::Frame(_))));
}

#[test]
fn prover_sees_dropped_stream() {
    let kp = graph_iso_key(6, 10);
    let (a, b) = loopback_pair();
    let prover = thread::spawn(move || {
        prover_endpoint(&GraphIso, a, &kp, &cfg(), &mut ChaCha20Rng::seed_from_u64(0))
    });
    let mut peer = FramedStream::new(b);
    assert_eq!(peer.recv().unwrap().tag(), Tag::Hello);
    assert_eq!(peer.recv().unwrap().tag(), Tag::PublicKey);
    assert_eq!(peer.recv().unwrap().tag(), Tag::Commitment);
    drop(peer);
    assert!(matches!(prover.join().unwrap(), Err(WireError::TransportClosed)));
}

#[test]
fn prover_rejects_out_of_order_frames() {
    let kp = graph_iso_key(6, 11);
    let (a, b) = loopback_pair();
    let prover = thread::spawn(move || {
        prover_endpoint(&GraphIso, a, &kp, &cfg(), &mut ChaCha20Rng::seed_from_u64(0))
    });
    let mut peer = FramedStream::new(b);
    for _ in 0..3 {
        peer.recv().unwrap();
    }
    peer.send(&Message::commitment(vec![1, 2, 3])).unwrap();
    assert!(matches!(
        prover.join().unwrap(),
        Err(WireError::ProtocolViolation { got: Tag::Commitment, .. })
    ));
}

#[test]
fn scheme_mismatch_in_hello() {
    let kp = graph_iso_key(6, 12);
    let st = kp.statement.clone();
    let (v, _) = against_verifier(st, move |mut peer| {
        peer.send(&Message::hello(Hello {
            version: PROTOCOL_VERSION,
            scheme: SchemeId::ModExp,
            rounds: ROUNDS,
        }))
        .unwrap();
        peer.recv().ok()
    });
    assert!(matches!(
        v,
        Err(WireError::SchemeMismatch { expected: SchemeId::GraphIso, got: SchemeId::ModExp })
    ));
    let (v, _) = against_verifier(graph_iso_key(6, 12).statement, move |mut peer| {
        peer.send(&Message::hello(Hello { version: 9, scheme: SchemeId::GraphIso, rounds: ROUNDS }))
            .unwrap();
        peer.recv().ok()
    });
    assert!(matches!(v, Err(WireError::UnsupportedVersion(9))));
}
