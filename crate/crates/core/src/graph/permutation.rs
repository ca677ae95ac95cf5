use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, GraphError};
use crate::codec::{ByteReader, ByteWriter, CodecError};

/// A bijection on `{0, .., n-1}`; `map[i]` is the image of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn from_vec(map: Vec<usize>) -> Result<Self, GraphError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n {
                return Err(GraphError::NotBijective(format!(
                    "image {v} out of range for {n} points"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::NotBijective(format!("image {v} repeated")));
            }
        }
        Ok(Permutation { map })
    }

    /// Transposition of `a` and `b` on `n` points.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.map.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        for &v in &self.map {
            w.put_u32(v as u32);
        }
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        if !bytes.len().is_multiple_of(4) {
            return Err(CodecError::invalid("permutation length not a multiple of 4"));
        }
        let mut r = ByteReader::new(bytes);
        let mut map = Vec::with_capacity(bytes.len() / 4);
        while r.remaining() > 0 {
            map.push(r.get_u32()? as usize);
        }
        Self::from_vec(map).map_err(|e| CodecError::invalid(e.to_string()))
    }
}

/// Relabels `g` so that vertex `i` becomes `p(i)`.
pub fn apply_permutation(g: &Graph, p: &Permutation) -> Result<Graph, GraphError> {
    if p.len() != g.vertex_count() {
        return Err(GraphError::SizeMismatch {
            expected: g.vertex_count(),
            actual: p.len(),
        });
    }
    let mut out = Graph::edgeless(g.vertex_count());
    for (i, j) in g.edges() {
        out.set_edge(p.apply(i), p.apply(j), true);
    }
    Ok(out)
}

/// `compose(outer, inner)(i) = outer(inner(i))`.
pub fn compose(outer: &Permutation, inner: &Permutation) -> Result<Permutation, GraphError> {
    if outer.len() != inner.len() {
        return Err(GraphError::SizeMismatch {
            expected: inner.len(),
            actual: outer.len(),
        });
    }
    Ok(Permutation {
        map: inner.map.iter().map(|&i| outer.map[i]).collect(),
    })
}

pub fn invert(p: &Permutation) -> Permutation {
    let mut map = vec![0; p.len()];
    for (i, &v) in p.map.iter().enumerate() {
        map[v] = i;
    }
    Permutation { map }
}

/// Uniform element of `S_n` via Fisher-Yates.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation { map }
}
