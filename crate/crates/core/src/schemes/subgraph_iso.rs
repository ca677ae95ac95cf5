//! Identification from induced subgraph isomorphism.
//!
//! Statement: a small graph `gamma` and a host `lambda1`. Witness: the
//! vertices of a copy `gamma1` of `gamma` inside `lambda1` together with the
//! isomorphism `phi: gamma -> gamma1`. A commitment is a larger graph
//! `lambda2` hiding `gamma2 = psi(lambda1)` as an induced subgraph.
//!
//! Responses name a vertex set in `lambda2` plus a map from the source graph
//! (`lambda1` for challenge 0, `gamma` for challenge 1) onto it. The vertex
//! set is sent in ascending order, so only the set and the correspondence
//! are revealed, never the order in which the prover placed vertices.
//! For challenge 1 the image is checked against the copy of `gamma` inside
//! `lambda2` rather than all of `gamma2`, which has more vertices whenever
//! `gamma1` is a proper subgraph.

use rand::RngCore;

use super::SchemeError;
use crate::codec::{ByteReader, ByteWriter, CodecError};
use crate::graph::{
    apply_permutation, embed_into_larger, induced_subgraph, invert, random_graph,
    random_permutation, Graph, Permutation, VertexEmbedding,
};
use crate::sigma::{ensure_round, Challenge, KeyPair, Rejection, Scheme, SchemeId, SigmaError};

/// `slack` is how many vertices the commitment adds on top of `lambda1`;
/// `None` means `|lambda1|`, doubling the host.
#[derive(Debug, Clone, Copy, Default)]
pub struct SubgraphIso {
    pub slack: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphStatement {
    pub gamma: Graph,
    pub lambda1: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphWitness {
    /// Where `gamma1` sits inside `lambda1`; position `a` is vertex `a` of `gamma1`.
    pub embedding: VertexEmbedding,
    /// Isomorphism from `gamma` onto `gamma1`.
    pub phi: Permutation,
}

pub struct SubgraphEphemeral {
    pub psi: Permutation,
    /// Location of `gamma2` inside `lambda2`.
    pub host_embedding: VertexEmbedding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphResponse {
    pub subgraph_vertices: VertexEmbedding,
    /// Source vertex `i` corresponds to `subgraph_vertices[map(i)]`.
    pub map: Permutation,
}

pub type SubgraphIsoKeyPair = KeyPair<SubgraphIso>;

impl SubgraphIso {
    pub fn with_slack(slack: usize) -> Self {
        SubgraphIso { slack: Some(slack) }
    }

    fn host_size(&self, st: &SubgraphStatement) -> usize {
        let m = st.lambda1.vertex_count();
        m + self.slack.unwrap_or(m)
    }

    pub fn keygen(
        &self,
        n_gamma: usize,
        n_lambda: usize,
        rng: &mut dyn RngCore,
    ) -> Result<SubgraphIsoKeyPair, SchemeError> {
        if n_gamma == 0 || n_gamma > n_lambda {
            return Err(SchemeError::BadParameters(format!(
                "need 1 <= n_gamma <= n_lambda, got {n_gamma} and {n_lambda}"
            )));
        }
        let gamma = random_graph(n_gamma, 0.5, rng)?;
        let phi = random_permutation(n_gamma, rng);
        let gamma1 = apply_permutation(&gamma, &phi)?;
        let (lambda1, embedding) = embed_into_larger(&gamma1, n_lambda, rng)?;
        Ok(KeyPair {
            statement: SubgraphStatement { gamma, lambda1 },
            witness: SubgraphWitness { embedding, phi },
        })
    }

    /// Commitment with an explicit `psi`; the embedding into the larger
    /// host is still random.
    pub fn commit_with(
        &self,
        st: &SubgraphStatement,
        psi: Permutation,
        rng: &mut dyn RngCore,
    ) -> (Graph, SubgraphEphemeral) {
        let gamma2 = apply_permutation(&st.lambda1, &psi).expect("psi sized to lambda1");
        let (lambda2, host_embedding) =
            embed_into_larger(&gamma2, self.host_size(st), rng).expect("host is large enough");
        (lambda2, SubgraphEphemeral { psi, host_embedding })
    }
}

/// Response revealing `targets[i]` as the host vertex of source vertex `i`.
fn locate(targets: Vec<usize>) -> SubgraphResponse {
    let mut sorted = targets.clone();
    sorted.sort_unstable();
    let map = targets
        .iter()
        .map(|t| sorted.binary_search(t).expect("target present"))
        .collect();
    SubgraphResponse {
        subgraph_vertices: VertexEmbedding::new(sorted),
        map: Permutation::from_vec(map).expect("targets are distinct"),
    }
}

impl Scheme for SubgraphIso {
    const ID: SchemeId = SchemeId::SubgraphIso;

    type Statement = SubgraphStatement;
    type Witness = SubgraphWitness;
    type Commitment = Graph;
    type Ephemeral = SubgraphEphemeral;
    type Response = SubgraphResponse;

    fn witness_holds(&self, st: &SubgraphStatement, w: &SubgraphWitness) -> bool {
        let n = st.gamma.vertex_count();
        if w.embedding.len() != n || w.phi.len() != n {
            return false;
        }
        match (
            induced_subgraph(&st.lambda1, &w.embedding),
            apply_permutation(&st.gamma, &w.phi),
        ) {
            (Ok(sub), Ok(img)) => sub == img,
            _ => false,
        }
    }

    fn commit(
        &self,
        st: &SubgraphStatement,
        _w: &SubgraphWitness,
        rng: &mut dyn RngCore,
    ) -> (Graph, SubgraphEphemeral) {
        let psi = random_permutation(st.lambda1.vertex_count(), rng);
        self.commit_with(st, psi, rng)
    }

    fn respond(
        &self,
        st: &SubgraphStatement,
        w: &SubgraphWitness,
        eph: &SubgraphEphemeral,
        challenge: Challenge,
    ) -> SubgraphResponse {
        let host_of_lambda1 = |v: usize| eph.host_embedding.get(eph.psi.apply(v));
        let targets = match challenge {
            Challenge::Zero => (0..st.lambda1.vertex_count()).map(host_of_lambda1).collect(),
            Challenge::One => (0..st.gamma.vertex_count())
                .map(|i| host_of_lambda1(w.embedding.get(w.phi.apply(i))))
                .collect(),
        };
        locate(targets)
    }

    fn check_round(
        &self,
        st: &SubgraphStatement,
        lambda2: &Graph,
        challenge: Challenge,
        r: &SubgraphResponse,
    ) -> Result<(), Rejection> {
        let source = match challenge {
            Challenge::Zero => &st.lambda1,
            Challenge::One => &st.gamma,
        };
        let n = source.vertex_count();
        ensure_round!(
            r.subgraph_vertices.len() == n && r.map.len() == n,
            "response covers {} vertices with a map on {}, expected {n}",
            r.subgraph_vertices.len(),
            r.map.len()
        );
        let sub = induced_subgraph(lambda2, &r.subgraph_vertices)
            .map_err(|e| Rejection::new(format!("bad vertex set: {e}")))?;
        let image = apply_permutation(source, &r.map).map_err(|e| Rejection::new(e.to_string()))?;
        ensure_round!(
            sub == image,
            "named subgraph of the commitment is not the image of {}",
            if challenge == Challenge::Zero { "lambda1" } else { "gamma" }
        );
        Ok(())
    }

    fn extract(
        &self,
        st: &SubgraphStatement,
        _lambda2: &Graph,
        r0: &SubgraphResponse,
        r1: &SubgraphResponse,
    ) -> Result<SubgraphWitness, SigmaError> {
        // gamma vertex -> lambda2 vertex -> position in the c=0 set -> lambda1 vertex
        let back = invert(&r0.map);
        let mut embedding = Vec::with_capacity(st.gamma.vertex_count());
        for i in 0..st.gamma.vertex_count() {
            let h = r1.subgraph_vertices.get(r1.map.apply(i));
            let q = r0.subgraph_vertices.position(h).ok_or_else(|| {
                SigmaError::ExtractionFailed(format!(
                    "vertex {h} of the c=1 image lies outside the c=0 image"
                ))
            })?;
            embedding.push(back.apply(q));
        }
        Ok(SubgraphWitness {
            embedding: VertexEmbedding::new(embedding),
            phi: Permutation::identity(st.gamma.vertex_count()),
        })
    }

    fn simulate(
        &self,
        st: &SubgraphStatement,
        challenge: Challenge,
        rng: &mut dyn RngCore,
    ) -> (Graph, SubgraphResponse) {
        match challenge {
            Challenge::Zero => {
                let psi = random_permutation(st.lambda1.vertex_count(), rng);
                let (lambda2, eph) = self.commit_with(st, psi, rng);
                let targets = (0..st.lambda1.vertex_count())
                    .map(|v| eph.host_embedding.get(eph.psi.apply(v)))
                    .collect();
                (lambda2, locate(targets))
            }
            Challenge::One => {
                let n = st.gamma.vertex_count();
                let rho = random_permutation(n, rng);
                let copy = apply_permutation(&st.gamma, &rho).expect("rho sized to gamma");
                let (lambda2, host) =
                    embed_into_larger(&copy, self.host_size(st), rng).expect("host is large enough");
                let targets = (0..n).map(|i| host.get(rho.apply(i))).collect();
                (lambda2, locate(targets))
            }
        }
    }

    fn encode_statement(&self, st: &SubgraphStatement) -> Vec<u8> {
        let mut w = ByteWriter::new();
        w.put_bytes(&st.gamma.to_bytes()).put_bytes(&st.lambda1.to_bytes());
        w.finish()
    }

    fn decode_statement(&self, bytes: &[u8]) -> Result<SubgraphStatement, CodecError> {
        let mut r = ByteReader::new(bytes);
        let gamma = Graph::from_bytes(r.get_bytes()?)?;
        let lambda1 = Graph::from_bytes(r.get_bytes()?)?;
        r.finish()?;
        if gamma.vertex_count() > lambda1.vertex_count() {
            return Err(CodecError::invalid("pattern graph larger than host"));
        }
        Ok(SubgraphStatement { gamma, lambda1 })
    }

    fn encode_commitment(&self, g: &Graph) -> Vec<u8> {
        g.to_bytes()
    }

    fn decode_commitment(&self, _st: &SubgraphStatement, bytes: &[u8]) -> Result<Graph, CodecError> {
        Graph::from_bytes(bytes)
    }

    fn encode_response(&self, r: &SubgraphResponse) -> Vec<u8> {
        let mut w = ByteWriter::new();
        w.put_bytes(&r.subgraph_vertices.to_bytes())
            .put_bytes(&r.map.to_bytes());
        w.finish()
    }

    fn decode_response(
        &self,
        _st: &SubgraphStatement,
        bytes: &[u8],
    ) -> Result<SubgraphResponse, CodecError> {
        let mut r = ByteReader::new(bytes);
        let subgraph_vertices = VertexEmbedding::from_bytes(r.get_bytes()?)?;
        let map = Permutation::from_bytes(r.get_bytes()?)?;
        r.finish()?;
        Ok(SubgraphResponse {
            subgraph_vertices,
            map,
        })
    }
}
