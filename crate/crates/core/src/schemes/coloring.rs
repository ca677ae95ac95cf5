//! Identification from graph k-colorability.
//!
//! Statement: a graph `gamma` and a public color count `k`. Witness: a proper
//! k-coloring. The prover commits to an isomorphic copy `gamma1 = psi(gamma)`
//! and reveals either `psi` or a full k-coloring of `gamma1`. Each round
//! reveals one of the two, never both. Colorings are renamed in first-seen
//! order before sending so color names do not correlate across rounds.

use rand::RngCore;

use super::SchemeError;
use crate::codec::{ByteReader, ByteWriter, CodecError};
use crate::graph::{
    apply_permutation, generate_k_colorable_graph, is_valid_coloring, random_permutation,
    Coloring, Graph, Permutation,
};
use crate::sigma::{ensure_round, Challenge, KeyPair, Rejection, Scheme, SchemeId, SigmaError};

const TAG_ISOMORPHISM: u8 = 0x00;
const TAG_COLORING: u8 = 0x01;

#[derive(Debug, Clone, Copy, Default)]
pub struct ColoringScheme;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringStatement {
    pub gamma: Graph,
    pub k: u16,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringResponse {
    Isomorphism(Permutation),
    Coloring(Coloring),
}

pub type ColoringKeyPair = KeyPair<ColoringScheme>;

impl ColoringScheme {
    pub fn keygen(
        &self,
        n: usize,
        k: usize,
        rng: &mut dyn RngCore,
    ) -> Result<ColoringKeyPair, SchemeError> {
        if k == 0 || k > n || k > u16::MAX as usize {
            return Err(SchemeError::BadParameters(format!(
                "need 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        let (gamma, witness) = generate_k_colorable_graph(n, k, rng)?;
        Ok(KeyPair {
            statement: ColoringStatement { gamma, k: k as u16 },
            witness,
        })
    }
}

impl Scheme for ColoringScheme {
    const ID: SchemeId = SchemeId::Coloring;

    type Statement = ColoringStatement;
    type Witness = Coloring;
    type Commitment = Graph;
    type Ephemeral = Permutation;
    type Response = ColoringResponse;

    fn witness_holds(&self, st: &ColoringStatement, w: &Coloring) -> bool {
        w.k() == st.k && is_valid_coloring(&st.gamma, w).unwrap_or(false)
    }

    fn commit(
        &self,
        st: &ColoringStatement,
        _w: &Coloring,
        rng: &mut dyn RngCore,
    ) -> (Graph, Permutation) {
        let psi = random_permutation(st.gamma.vertex_count(), rng);
        let gamma1 = apply_permutation(&st.gamma, &psi).expect("psi sized to gamma");
        (gamma1, psi)
    }

    fn respond(
        &self,
        _st: &ColoringStatement,
        w: &Coloring,
        psi: &Permutation,
        challenge: Challenge,
    ) -> ColoringResponse {
        match challenge {
            Challenge::Zero => ColoringResponse::Isomorphism(psi.clone()),
            Challenge::One => ColoringResponse::Coloring(
                w.push_forward(psi)
                    .expect("psi sized to coloring")
                    .canonical_renaming(),
            ),
        }
    }

    fn check_round(
        &self,
        st: &ColoringStatement,
        gamma1: &Graph,
        challenge: Challenge,
        response: &ColoringResponse,
    ) -> Result<(), Rejection> {
        let n = st.gamma.vertex_count();
        ensure_round!(
            gamma1.vertex_count() == n,
            "commitment has {} vertices, statement has {n}",
            gamma1.vertex_count()
        );
        match (challenge, response) {
            (Challenge::Zero, ColoringResponse::Isomorphism(psi)) => {
                ensure_round!(psi.len() == n, "permutation on {} points, expected {n}", psi.len());
                let image = apply_permutation(&st.gamma, psi).map_err(|e| Rejection::new(e.to_string()))?;
                ensure_round!(&image == gamma1, "permutation does not map gamma onto the commitment");
                Ok(())
            }
            (Challenge::One, ColoringResponse::Coloring(col)) => {
                let valid = is_valid_coloring(gamma1, &col.with_k(st.k))
                    .map_err(|e| Rejection::new(e.to_string()))?;
                ensure_round!(valid, "not a proper {}-coloring of the commitment", st.k);
                Ok(())
            }
            (c, _) => Err(Rejection::new(format!(
                "response kind does not answer challenge {}",
                c.bit()
            ))),
        }
    }

    fn extract(
        &self,
        st: &ColoringStatement,
        _gamma1: &Graph,
        r0: &ColoringResponse,
        r1: &ColoringResponse,
    ) -> Result<Coloring, SigmaError> {
        match (r0, r1) {
            (ColoringResponse::Isomorphism(psi), ColoringResponse::Coloring(col)) => col
                .with_k(st.k)
                .pull_back(psi)
                .map_err(|e| SigmaError::ExtractionFailed(e.to_string())),
            _ => Err(SigmaError::ExtractionFailed("responses of the wrong kind".into())),
        }
    }

    /// Challenge 1 cannot be answered for a copy of `gamma` without the
    /// witness, so the simulator commits to a fresh random k-colorable graph
    /// of the same order. That round verifies but is not distributed like an
    /// honest one.
    fn simulate(
        &self,
        st: &ColoringStatement,
        challenge: Challenge,
        rng: &mut dyn RngCore,
    ) -> (Graph, ColoringResponse) {
        let n = st.gamma.vertex_count();
        match challenge {
            Challenge::Zero => {
                let psi = random_permutation(n, rng);
                let gamma1 = apply_permutation(&st.gamma, &psi).expect("psi sized to gamma");
                (gamma1, ColoringResponse::Isomorphism(psi))
            }
            Challenge::One => {
                let k = usize::from(st.k).clamp(1, n);
                let (g, col) =
                    generate_k_colorable_graph(n, k, rng).expect("1 <= k <= n by construction");
                (
                    g,
                    ColoringResponse::Coloring(col.with_k(st.k).canonical_renaming()),
                )
            }
        }
    }

    fn encode_statement(&self, st: &ColoringStatement) -> Vec<u8> {
        let mut w = ByteWriter::new();
        w.put_bytes(&st.gamma.to_bytes()).put_u16(st.k);
        w.finish()
    }

    fn decode_statement(&self, bytes: &[u8]) -> Result<ColoringStatement, CodecError> {
        let mut r = ByteReader::new(bytes);
        let gamma = Graph::from_bytes(r.get_bytes()?)?;
        let k = r.get_u16()?;
        r.finish()?;
        if k == 0 {
            return Err(CodecError::invalid("color count must be positive"));
        }
        Ok(ColoringStatement { gamma, k })
    }

    fn encode_commitment(&self, g: &Graph) -> Vec<u8> {
        g.to_bytes()
    }

    fn decode_commitment(&self, _st: &ColoringStatement, bytes: &[u8]) -> Result<Graph, CodecError> {
        Graph::from_bytes(bytes)
    }

    fn encode_response(&self, r: &ColoringResponse) -> Vec<u8> {
        let mut w = ByteWriter::new();
        match r {
            ColoringResponse::Isomorphism(p) => w.put_u8(TAG_ISOMORPHISM).put_raw(&p.to_bytes()),
            ColoringResponse::Coloring(c) => w.put_u8(TAG_COLORING).put_raw(&c.to_bytes()),
        };
        w.finish()
    }

    fn decode_response(
        &self,
        st: &ColoringStatement,
        bytes: &[u8],
    ) -> Result<ColoringResponse, CodecError> {
        let mut r = ByteReader::new(bytes);
        let tag = r.get_u8()?;
        let body = r.rest();
        match tag {
            TAG_ISOMORPHISM => Ok(ColoringResponse::Isomorphism(Permutation::from_bytes(body)?)),
            TAG_COLORING => Ok(ColoringResponse::Coloring(Coloring::from_bytes(body, st.k)?)),
            other => Err(CodecError::invalid(format!("unknown response kind {other:#04x}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::extract_witness;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn rng(seed: u64) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(seed)
    }

    #[test]
    fn keygen_cases() {
        let kp = ColoringScheme.keygen(3, 3, &mut rng(1)).unwrap();
        let mut used = kp.witness.colors().to_vec();
        used.sort_unstable();
        assert_eq!(used, vec![1, 2, 3]);
        for seed in 0..30 {
            let kp = ColoringScheme.keygen(10, 3, &mut rng(seed)).unwrap();
            assert!(kp.is_valid(&ColoringScheme));
        }
        assert_eq!(
            ColoringScheme.keygen(6, 2, &mut rng(5)).unwrap(),
            ColoringScheme.keygen(6, 2, &mut rng(5)).unwrap()
        );
        assert!(ColoringScheme.keygen(3, 4, &mut rng(0)).is_err());
        assert!(ColoringScheme.keygen(3, 0, &mut rng(0)).is_err());
    }

    #[test]
    fn identity_ephemeral_reveals_witness_up_to_renaming() {
        let kp = ColoringScheme.keygen(8, 3, &mut rng(2)).unwrap();
        let id = Permutation::identity(8);
        let r = ColoringScheme.respond(&kp.statement, &kp.witness, &id, Challenge::One);
        assert_eq!(r, ColoringResponse::Coloring(kp.witness.canonical_renaming()));
    }

    #[test]
    fn honest_branches() {
        let kp = ColoringScheme.keygen(12, 4, &mut rng(3)).unwrap();
        let (g1, psi) = ColoringScheme.commit(&kp.statement, &kp.witness, &mut rng(4));
        assert_eq!(g1.degree_multiset(), kp.statement.gamma.degree_multiset());
        let r0 = ColoringScheme.respond(&kp.statement, &kp.witness, &psi, Challenge::Zero);
        assert_eq!(r0, ColoringResponse::Isomorphism(psi.clone()));
        let r1 = ColoringScheme.respond(&kp.statement, &kp.witness, &psi, Challenge::One);
        let ColoringResponse::Coloring(col) = &r1 else { panic!("expected coloring") };
        assert!(is_valid_coloring(&g1, col).unwrap());
        assert!(ColoringScheme.verify_round(&kp.statement, &g1, Challenge::Zero, &r0));
        assert!(ColoringScheme.verify_round(&kp.statement, &g1, Challenge::One, &r1));
        // swapped branches are rejected
        assert!(!ColoringScheme.verify_round(&kp.statement, &g1, Challenge::One, &r0));
        assert!(!ColoringScheme.verify_round(&kp.statement, &g1, Challenge::Zero, &r1));
    }

    #[test]
    fn too_many_colors_rejected() {
        let st = ColoringStatement { gamma: Graph::complete(3), k: 2 };
        let col = Coloring::new(3, vec![1, 2, 3]);
        let g1 = Graph::complete(3);
        assert!(!ColoringScheme.verify_round(&st, &g1, Challenge::One, &ColoringResponse::Coloring(col)));
    }

    #[test]
    fn coloring_of_another_graph_rejected() {
        // Brute force: find a 2-coloring valid for the path 0-1-2-3 that makes
        // some edge of the commitment (cycle 0-2-1-3) monochromatic.
        let gamma1 = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let other = Graph::path(4);
        let st = ColoringStatement { gamma: gamma1.clone(), k: 2 };
        let mut found = 0;
        for mask in 0u16..16 {
            let colors: Vec<u16> = (0..4).map(|v| 1 + ((mask >> v) & 1)).collect();
            let col = Coloring::new(2, colors);
            if is_valid_coloring(&other, &col).unwrap() && !is_valid_coloring(&gamma1, &col).unwrap() {
                found += 1;
                let resp = ColoringResponse::Coloring(col);
                assert!(!ColoringScheme.verify_round(&st, &gamma1, Challenge::One, &resp));
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn extraction_is_pullback() {
        for seed in 0..30 {
            let kp = ColoringScheme.keygen(9, 3, &mut rng(seed)).unwrap();
            let (g1, psi) = ColoringScheme.commit(&kp.statement, &kp.witness, &mut rng(seed + 50));
            let r0 = ColoringScheme.respond(&kp.statement, &kp.witness, &psi, Challenge::Zero);
            let r1 = ColoringScheme.respond(&kp.statement, &kp.witness, &psi, Challenge::One);
            let w = extract_witness(&ColoringScheme, &kp.statement, &g1, &r0, &r1).unwrap();
            assert!(is_valid_coloring(&kp.statement.gamma, &w).unwrap());
        }
    }

    #[test]
    fn simulated_rounds_verify() {
        let kp = ColoringScheme.keygen(10, 3, &mut rng(6)).unwrap();
        for seed in 0..20 {
            for c in [Challenge::Zero, Challenge::One] {
                let (g1, r) = ColoringScheme.simulate(&kp.statement, c, &mut rng(seed));
                ColoringScheme.check_round(&kp.statement, &g1, c, &r).unwrap();
            }
        }
    }

    #[test]
    fn response_codec() {
        let st = ColoringStatement { gamma: Graph::complete(3), k: 3 };
        let r = ColoringResponse::Coloring(Coloring::new(3, vec![1, 2, 3]));
        let bytes = ColoringScheme.encode_response(&r);
        assert_eq!(bytes[0], TAG_COLORING);
        assert_eq!(ColoringScheme.decode_response(&st, &bytes).unwrap(), r);
        assert!(ColoringScheme.decode_response(&st, &[0x07]).is_err());
        assert!(ColoringScheme.decode_response(&st, &[]).is_err());
    }
}
