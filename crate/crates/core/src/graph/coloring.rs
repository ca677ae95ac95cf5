use std::collections::HashMap;

use super::{Graph, GraphError, Permutation};
use crate::codec::{ByteReader, ByteWriter, CodecError};

/// A vertex coloring with colors drawn from `1..=k`.
///
/// Stored densely (`colors[v]` is the color of vertex `v`); on the wire it is
/// the set of pairs `(v, color)`. Colors outside `1..=k` are representable so
/// that a received coloring can be rejected by [`is_valid_coloring`] rather
/// than at decode time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    k: u16,
    colors: Vec<u16>,
}

impl Coloring {
    pub fn new(k: u16, colors: Vec<u16>) -> Self {
        Coloring { k, colors }
    }

    /// Builds a coloring from `(vertex, color)` pairs, which must cover
    /// `0..n` exactly once each.
    pub fn from_pairs(
        n: usize,
        k: u16,
        pairs: impl IntoIterator<Item = (usize, u16)>,
    ) -> Result<Self, GraphError> {
        let mut colors: Vec<Option<u16>> = vec![None; n];
        let mut count = 0;
        for (v, c) in pairs {
            if v >= n {
                return Err(GraphError::IndexOutOfRange { vertex: v, n });
            }
            if colors[v].replace(c).is_some() {
                return Err(GraphError::DuplicateIndex(v));
            }
            count += 1;
        }
        if count != n {
            return Err(GraphError::CoverageMismatch {
                graph: n,
                coloring: count,
            });
        }
        Ok(Coloring {
            k,
            colors: colors.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn k(&self) -> u16 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> u16 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u16] {
        &self.colors
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.colors.iter().copied().enumerate()
    }

    /// Same assignment read against a different palette size.
    pub fn with_k(&self, k: u16) -> Self {
        Coloring {
            k,
            colors: self.colors.clone(),
        }
    }

    /// Coloring of `p(G)` induced by this coloring of `G`: `out(p(v)) = self(v)`.
    pub fn push_forward(&self, p: &Permutation) -> Result<Self, GraphError> {
        self.check_len(p)?;
        let mut colors = vec![0; self.len()];
        for (v, c) in self.pairs() {
            colors[p.apply(v)] = c;
        }
        Ok(Coloring { k: self.k, colors })
    }

    /// Coloring of `G` obtained from this coloring of `p(G)`: `out(v) = self(p(v))`.
    pub fn pull_back(&self, p: &Permutation) -> Result<Self, GraphError> {
        self.check_len(p)?;
        Ok(Coloring {
            k: self.k,
            colors: (0..self.len()).map(|v| self.colors[p.apply(v)]).collect(),
        })
    }

    /// Renames colors in order of first appearance by vertex index, so the
    /// lowest-indexed vertex gets color 1 and so on.
    pub fn canonical_renaming(&self) -> Self {
        let mut names: HashMap<u16, u16> = HashMap::new();
        let colors = self
            .colors
            .iter()
            .map(|c| {
                let next = names.len() as u16 + 1;
                *names.entry(*c).or_insert(next)
            })
            .collect();
        Coloring { k: self.k, colors }
    }

    fn check_len(&self, p: &Permutation) -> Result<(), GraphError> {
        if p.len() != self.len() {
            return Err(GraphError::SizeMismatch {
                expected: self.len(),
                actual: p.len(),
            });
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        for (v, c) in self.pairs() {
            w.put_u32(v as u32).put_u16(c);
        }
        w.finish()
    }

    /// Decodes a pair list. The palette size is not transmitted; the caller
    /// supplies the public `k`.
    pub fn from_bytes(bytes: &[u8], k: u16) -> Result<Self, CodecError> {
        if !bytes.len().is_multiple_of(6) {
            return Err(CodecError::invalid("coloring length not a multiple of 6"));
        }
        let n = bytes.len() / 6;
        let mut r = ByteReader::new(bytes);
        let mut pairs = Vec::with_capacity(n);
        for _ in 0..n {
            pairs.push((r.get_u32()? as usize, r.get_u16()?));
        }
        Self::from_pairs(n, k, pairs).map_err(|e| CodecError::invalid(e.to_string()))
    }
}

/// True iff every color lies in `1..=k` and no edge joins two vertices of
/// the same color.
pub fn is_valid_coloring(g: &Graph, col: &Coloring) -> Result<bool, GraphError> {
    if col.len() != g.vertex_count() {
        return Err(GraphError::CoverageMismatch {
            graph: g.vertex_count(),
            coloring: col.len(),
        });
    }
    let in_range = col.colors.iter().all(|&c| c >= 1 && c <= col.k);
    Ok(in_range && g.edges().all(|(a, b)| col.color(a) != col.color(b)))
}
