//! Combinatorial substrate for the graph-based schemes: simple undirected
//! graphs, vertex permutations, colorings and vertex embeddings.
//!
//! All values here are plain data with value semantics. The byte encodings
//! are canonical and are what travels on the wire and in key files:
//!
//! * graph: 4-byte big-endian vertex count, then the strict upper triangle
//!   of the adjacency matrix in row-major order, one bit per pair, packed
//!   most-significant bit first and zero-padded to a whole byte;
//! * permutation: `n` 4-byte big-endian images;
//! * coloring: `n` pairs of (4-byte vertex, 2-byte color);
//! * embedding: `n` 4-byte big-endian host indices.

mod coloring;
mod embedding;
mod generate;
mod permutation;

pub use coloring::{is_valid_coloring, Coloring};
pub use embedding::{induced_subgraph, VertexEmbedding};
pub use generate::{
    embed_into_larger, even_partition, generate_k_colorable_graph,
    generate_k_colorable_graph_with_partition, random_graph,
};
pub use permutation::{apply_permutation, compose, invert, random_permutation, Permutation};

use std::fmt;

use thiserror::Error;

use crate::codec::{ByteReader, ByteWriter, CodecError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("size mismatch: expected {expected} vertices, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed more than once")]
    DuplicateIndex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("not a permutation: {0}")]
    NotBijective(String),
    #[error("coloring covers {coloring} vertices but graph has {graph}")]
    CoverageMismatch { graph: usize, coloring: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("host of {host} vertices is too small for a graph on {graph}")]
    TooSmall { graph: usize, host: usize },
}

/// Simple undirected graph stored as a dense symmetric adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    ///
    /// Panics if `n == 0`; graphs are never empty.
    pub fn edgeless(n: usize) -> Self {
        assert!(n >= 1, "graph must have at least one vertex");
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = Self::edgeless(n);
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::IndexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are in range")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        let mut g = Self::path(n);
        g.set_edge(n - 1, 0, true);
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }

    /// Sets or clears the undirected edge `a`-`b`. Panics on a self-loop.
    pub fn set_edge(&mut self, a: usize, b: usize, present: bool) {
        assert!(a != b, "self-loops are not allowed");
        self.adj[a * self.n + b] = present;
        self.adj[b * self.n + a] = present;
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n).filter_map(move |j| self.has_edge(i, j).then_some((i, j)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    /// Sorted degree sequence; an isomorphism invariant.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let pairs = self.n * (self.n - 1) / 2;
        let mut packed = vec![0u8; pairs.div_ceil(8)];
        let mut bit = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    packed[bit / 8] |= 0x80 >> (bit % 8);
                }
                bit += 1;
            }
        }
        let mut w = ByteWriter::new();
        w.put_u32(self.n as u32).put_raw(&packed);
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        let mut r = ByteReader::new(bytes);
        let g = Self::read_from(&mut r)?;
        r.finish()?;
        Ok(g)
    }

    pub(crate) fn read_from(r: &mut ByteReader<'_>) -> Result<Self, CodecError> {
        let n = r.get_u32()? as usize;
        if n == 0 {
            return Err(CodecError::invalid("graph with zero vertices"));
        }
        let pairs = n
            .checked_mul(n - 1)
            .map(|x| x / 2)
            .ok_or_else(|| CodecError::invalid("vertex count overflows"))?;
        let nbytes = pairs.div_ceil(8);
        if r.remaining() < nbytes {
            return Err(CodecError::UnexpectedEof {
                needed: nbytes - r.remaining(),
            });
        }
        let packed = r.take(nbytes)?;
        if pairs % 8 != 0 {
            let pad_mask = 0xFFu8 >> (pairs % 8);
            if packed[nbytes - 1] & pad_mask != 0 {
                return Err(CodecError::invalid("nonzero padding bits in graph"));
            }
        }
        let mut g = Graph::edgeless(n);
        let mut bit = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if packed[bit / 8] & (0x80 >> (bit % 8)) != 0 {
                    g.set_edge(i, j, true);
                }
                bit += 1;
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_symmetric_without_loops() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 1), (3, 0)]).unwrap();
        for i in 0..4 {
            assert!(!g.has_edge(i, i));
            for j in 0..4 {
                assert_eq!(g.has_edge(i, j), g.has_edge(j, i));
            }
        }
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree_multiset(), vec![1, 1, 2, 2]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(0, &[]), Err(GraphError::Empty));
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::IndexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn triangle_encoding_is_bit_exact() {
        // pairs (0,1) (0,2) (1,2) -> bits 111 then five zero padding bits
        let bytes = Graph::complete(3).to_bytes();
        assert_eq!(bytes, [0, 0, 0, 3, 0b1110_0000]);
        // path 0-1-2: pairs (0,1)=1 (0,2)=0 (1,2)=1
        assert_eq!(Graph::path(3).to_bytes(), [0, 0, 0, 3, 0b1010_0000]);
        assert_eq!(Graph::edgeless(1).to_bytes(), [0, 0, 0, 1]);
    }

    #[test]
    fn encoding_size_is_quadratic() {
        for n in [1usize, 2, 5, 16, 33, 64] {
            let len = Graph::complete(n).to_bytes().len();
            assert_eq!(len, 4 + (n * (n - 1) / 2).div_ceil(8));
            // never more than the two-full-matrices figure of 2n^2 bits
            assert!((len - 4) * 8 <= 2 * n * n);
        }
    }

    #[test]
    fn decoding_rejects_padding_and_truncation() {
        assert!(Graph::from_bytes(&[0, 0, 0, 3, 0b1110_0001]).is_err());
        assert!(Graph::from_bytes(&[0, 0, 0, 3]).is_err());
        assert!(Graph::from_bytes(&[0, 0, 0, 0]).is_err());
        assert!(Graph::from_bytes(&[0, 0, 0, 3, 0, 0]).is_err());
    }
}
