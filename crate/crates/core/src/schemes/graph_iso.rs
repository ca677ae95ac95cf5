//! Identification from graph isomorphism.
//!
//! Statement: two isomorphic graphs `gamma` and `gamma1`. Witness: a
//! permutation `phi` with `phi(gamma) = gamma1`. Each round the prover
//! commits to `gamma2 = psi(gamma1)` for a fresh uniform `psi` and reveals
//! either `psi` (challenge 0) or `psi . phi` (challenge 1).

use rand::RngCore;

use super::SchemeError;
use crate::codec::{ByteReader, ByteWriter, CodecError};
use crate::graph::{apply_permutation, compose, invert, random_graph, random_permutation, Graph, Permutation};
use crate::sigma::{ensure_round, Challenge, KeyPair, Rejection, Scheme, SchemeId, SigmaError};

/// Edge probability used by [`GraphIso::keygen`] unless told otherwise.
pub const DEFAULT_EDGE_PROBABILITY: f64 = 0.5;

#[derive(Debug, Clone, Copy, Default)]
pub struct GraphIso;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphIsoStatement {
    pub gamma: Graph,
    pub gamma1: Graph,
}

pub type GraphIsoKeyPair = KeyPair<GraphIso>;

impl GraphIso {
    pub fn keygen(
        &self,
        n: usize,
        edge_probability: f64,
        rng: &mut dyn RngCore,
    ) -> Result<GraphIsoKeyPair, SchemeError> {
        if n == 0 {
            return Err(SchemeError::BadParameters("need at least one vertex".into()));
        }
        let gamma = random_graph(n, edge_probability, rng)?;
        let phi = random_permutation(n, rng);
        let gamma1 = apply_permutation(&gamma, &phi)?;
        Ok(KeyPair {
            statement: GraphIsoStatement { gamma, gamma1 },
            witness: phi,
        })
    }
}

impl Scheme for GraphIso {
    const ID: SchemeId = SchemeId::GraphIso;

    type Statement = GraphIsoStatement;
    type Witness = Permutation;
    type Commitment = Graph;
    type Ephemeral = Permutation;
    type Response = Permutation;

    fn witness_holds(&self, st: &GraphIsoStatement, phi: &Permutation) -> bool {
        apply_permutation(&st.gamma, phi).is_ok_and(|g| g == st.gamma1)
    }

    fn commit(
        &self,
        st: &GraphIsoStatement,
        _phi: &Permutation,
        rng: &mut dyn RngCore,
    ) -> (Graph, Permutation) {
        let psi = random_permutation(st.gamma1.vertex_count(), rng);
        let gamma2 = apply_permutation(&st.gamma1, &psi).expect("psi sized to gamma1");
        (gamma2, psi)
    }

    fn respond(
        &self,
        _st: &GraphIsoStatement,
        phi: &Permutation,
        psi: &Permutation,
        challenge: Challenge,
    ) -> Permutation {
        match challenge {
            Challenge::Zero => psi.clone(),
            Challenge::One => compose(psi, phi).expect("psi and phi have equal size"),
        }
    }

    fn check_round(
        &self,
        st: &GraphIsoStatement,
        gamma2: &Graph,
        challenge: Challenge,
        response: &Permutation,
    ) -> Result<(), Rejection> {
        let source = match challenge {
            Challenge::Zero => &st.gamma1,
            Challenge::One => &st.gamma,
        };
        let n = source.vertex_count();
        ensure_round!(
            gamma2.vertex_count() == n,
            "commitment has {} vertices, statement has {n}",
            gamma2.vertex_count()
        );
        ensure_round!(
            response.len() == n,
            "response permutes {} points, expected {n}",
            response.len()
        );
        let image = apply_permutation(source, response).map_err(|e| Rejection::new(e.to_string()))?;
        ensure_round!(
            &image == gamma2,
            "response does not map {} onto the commitment",
            if challenge == Challenge::Zero { "gamma1" } else { "gamma" }
        );
        Ok(())
    }

    fn extract(
        &self,
        _st: &GraphIsoStatement,
        _gamma2: &Graph,
        psi: &Permutation,
        psi_phi: &Permutation,
    ) -> Result<Permutation, SigmaError> {
        compose(&invert(psi), psi_phi).map_err(|e| SigmaError::ExtractionFailed(e.to_string()))
    }

    fn simulate(
        &self,
        st: &GraphIsoStatement,
        challenge: Challenge,
        rng: &mut dyn RngCore,
    ) -> (Graph, Permutation) {
        let source = match challenge {
            Challenge::Zero => &st.gamma1,
            Challenge::One => &st.gamma,
        };
        let rho = random_permutation(source.vertex_count(), rng);
        let commitment = apply_permutation(source, &rho).expect("rho sized to source");
        (commitment, rho)
    }

    fn encode_statement(&self, st: &GraphIsoStatement) -> Vec<u8> {
        let mut w = ByteWriter::new();
        w.put_bytes(&st.gamma.to_bytes()).put_bytes(&st.gamma1.to_bytes());
        w.finish()
    }

    fn decode_statement(&self, bytes: &[u8]) -> Result<GraphIsoStatement, CodecError> {
        let mut r = ByteReader::new(bytes);
        let gamma = Graph::from_bytes(r.get_bytes()?)?;
        let gamma1 = Graph::from_bytes(r.get_bytes()?)?;
        r.finish()?;
        if gamma.vertex_count() != gamma1.vertex_count() {
            return Err(CodecError::invalid("statement graphs differ in size"));
        }
        Ok(GraphIsoStatement { gamma, gamma1 })
    }

    fn encode_commitment(&self, g: &Graph) -> Vec<u8> {
        g.to_bytes()
    }

    fn decode_commitment(&self, _st: &GraphIsoStatement, bytes: &[u8]) -> Result<Graph, CodecError> {
        Graph::from_bytes(bytes)
    }

    fn encode_response(&self, p: &Permutation) -> Vec<u8> {
        p.to_bytes()
    }

    fn decode_response(
        &self,
        _st: &GraphIsoStatement,
        bytes: &[u8],
    ) -> Result<Permutation, CodecError> {
        Permutation::from_bytes(bytes)
    }
}
