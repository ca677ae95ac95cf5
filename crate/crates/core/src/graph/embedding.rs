use super::{Graph, GraphError};
use crate::codec::{ByteReader, ByteWriter, CodecError};

/// An ordered list `(m_1, .., m_n)` of distinct host vertices. Position `a`
/// in the list is vertex `a` of the embedded graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexEmbedding {
    indices: Vec<usize>,
}

impl VertexEmbedding {
    pub fn new(indices: Vec<usize>) -> Self {
        VertexEmbedding { indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn get(&self, a: usize) -> usize {
        self.indices[a]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    /// Position of host vertex `h` in the list, if present.
    pub fn position(&self, h: usize) -> Option<usize> {
        self.indices.iter().position(|&x| x == h)
    }

    /// Checks that indices are distinct and below `host_n`.
    pub fn validate(&self, host_n: usize) -> Result<(), GraphError> {
        let mut seen = vec![false; host_n];
        for &m in &self.indices {
            if m >= host_n {
                return Err(GraphError::IndexOutOfRange { vertex: m, n: host_n });
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(GraphError::DuplicateIndex(m));
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        for &m in &self.indices {
            w.put_u32(m as u32);
        }
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        if !bytes.len().is_multiple_of(4) {
            return Err(CodecError::invalid("embedding length not a multiple of 4"));
        }
        let mut r = ByteReader::new(bytes);
        let mut indices = Vec::with_capacity(bytes.len() / 4);
        while r.remaining() > 0 {
            indices.push(r.get_u32()? as usize);
        }
        Ok(VertexEmbedding { indices })
    }
}

/// The subgraph of `g` induced on `emb`, relabeled so that `emb[a]` becomes `a`.
pub fn induced_subgraph(g: &Graph, emb: &VertexEmbedding) -> Result<Graph, GraphError> {
    emb.validate(g.vertex_count())?;
    if emb.is_empty() {
        return Err(GraphError::Empty);
    }
    let mut out = Graph::edgeless(emb.len());
    for a in 0..emb.len() {
        for b in (a + 1)..emb.len() {
            if g.has_edge(emb.get(a), emb.get(b)) {
                out.set_edge(a, b, true);
            }
        }
    }
    Ok(out)
}
