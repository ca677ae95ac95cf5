use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::AdversaryError;
use crate::graph::{Coloring, Graph, Permutation, VertexEmbedding};
use crate::schemes::{is_prime, ModExpStatement};

pub const DEFAULT_ISOMORPHISM_BOUND: usize = 8;
pub const DEFAULT_SUBGRAPH_HOST_BOUND: usize = 24;
pub const DEFAULT_COLORING_BOUND: usize = 32;
pub const DEFAULT_DLOG_BOUND: u64 = 1 << 20;

fn too_large(size: usize, bound: usize) -> Result<(), AdversaryError> {
    if size > bound {
        Err(AdversaryError::TooLarge { size: size as u64, bound: bound as u64 })
    } else {
        Ok(())
    }
}

/// Lexicographically first permutation `p` with `apply_permutation(g1, p) == g2`.
pub fn brute_force_isomorphism(
    g1: &Graph,
    g2: &Graph,
) -> Result<Option<Permutation>, AdversaryError> {
    brute_force_isomorphism_bounded(g1, g2, DEFAULT_ISOMORPHISM_BOUND)
}

pub fn brute_force_isomorphism_bounded(
    g1: &Graph,
    g2: &Graph,
    max_n: usize,
) -> Result<Option<Permutation>, AdversaryError> {
    let n = g1.vertex_count();
    too_large(n.max(g2.vertex_count()), max_n)?;
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend_map(g1, g2, true, &mut map, &mut used) {
        Ok(Some(Permutation::from_vec(map).expect("search builds a bijection")))
    } else {
        Ok(None)
    }
}

/// Lexicographically first injection `e` with `induced_subgraph(host, e) == small`.
pub fn brute_force_subgraph_isomorphism(
    small: &Graph,
    host: &Graph,
) -> Result<Option<VertexEmbedding>, AdversaryError> {
    brute_force_subgraph_isomorphism_bounded(small, host, DEFAULT_SUBGRAPH_HOST_BOUND)
}

pub fn brute_force_subgraph_isomorphism_bounded(
    small: &Graph,
    host: &Graph,
    max_host: usize,
) -> Result<Option<VertexEmbedding>, AdversaryError> {
    too_large(host.vertex_count(), max_host)?;
    if small.vertex_count() > host.vertex_count() {
        return Ok(None);
    }
    let mut map = Vec::with_capacity(small.vertex_count());
    let mut used = vec![false; host.vertex_count()];
    if extend_map(small, host, false, &mut map, &mut used) {
        Ok(Some(VertexEmbedding::new(map)))
    } else {
        Ok(None)
    }
}

// Backtracking over images of vertices 0, 1, ... in ascending order, so the
// first complete map found is the lexicographically smallest.
fn extend_map(
    from: &Graph,
    to: &Graph,
    degrees_must_match: bool,
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = map.len();
    if i == from.vertex_count() {
        return true;
    }
    for cand in 0..to.vertex_count() {
        if used[cand] || (degrees_must_match && from.degree(i) != to.degree(cand)) {
            continue;
        }
        let consistent = map
            .iter()
            .enumerate()
            .all(|(j, &img)| from.has_edge(i, j) == to.has_edge(cand, img));
        if !consistent {
            continue;
        }
        map.push(cand);
        used[cand] = true;
        if extend_map(from, to, degrees_must_match, map, used) {
            return true;
        }
        used[cand] = false;
        map.pop();
    }
    false
}

/// First proper coloring with colors in `1..=k`, trying vertices in index
/// order and colors in ascending order.
pub fn brute_force_coloring(g: &Graph, k: u16) -> Result<Option<Coloring>, AdversaryError> {
    brute_force_coloring_bounded(g, k, DEFAULT_COLORING_BOUND)
}

pub fn brute_force_coloring_bounded(
    g: &Graph,
    k: u16,
    max_n: usize,
) -> Result<Option<Coloring>, AdversaryError> {
    if k == 0 {
        return Err(AdversaryError::BadParameters("k must be at least 1".into()));
    }
    too_large(g.vertex_count(), max_n)?;
    let mut colors = Vec::with_capacity(g.vertex_count());
    if extend_coloring(g, k, &mut colors) {
        Ok(Some(Coloring::new(k, colors)))
    } else {
        Ok(None)
    }
}

fn extend_coloring(g: &Graph, k: u16, colors: &mut Vec<u16>) -> bool {
    let v = colors.len();
    if v == g.vertex_count() {
        return true;
    }
    for c in 1..=k {
        if (0..v).any(|u| colors[u] == c && g.has_edge(u, v)) {
            continue;
        }
        colors.push(c);
        if extend_coloring(g, k, colors) {
            return true;
        }
        colors.pop();
    }
    false
}

/// Smallest `s` in `[0, p-2]` with `x^s = u (mod p)`.
pub fn brute_force_discrete_log(
    p: &BigUint,
    x: &BigUint,
    u: &BigUint,
) -> Result<Option<BigUint>, AdversaryError> {
    brute_force_discrete_log_bounded(p, x, u, DEFAULT_DLOG_BOUND)
}

pub fn brute_force_discrete_log_bounded(
    p: &BigUint,
    x: &BigUint,
    u: &BigUint,
    max_p: u64,
) -> Result<Option<BigUint>, AdversaryError> {
    let (p, x, u) = small_residues(p, x, u, max_p)?;
    let mut acc = 1u64;
    for s in 0..p - 1 {
        if acc == u {
            return Ok(Some(BigUint::from(s)));
        }
        acc = acc * x % p;
    }
    Ok(None)
}

/// Smallest exponent that is a valid secret for the statement: a unit
/// modulo `p-1` with `x^s = u`.
pub fn brute_force_modexp_witness(
    st: &ModExpStatement,
) -> Result<Option<BigUint>, AdversaryError> {
    let (p, x, u) = small_residues(&st.p, &st.x, &st.u, DEFAULT_DLOG_BOUND)?;
    let order = p - 1;
    let mut acc = 1u64;
    for s in 0..order {
        if acc == u && s.gcd(&order) == 1 {
            return Ok(Some(BigUint::from(s)));
        }
        acc = acc * x % p;
    }
    Ok(None)
}

fn small_residues(
    p: &BigUint,
    x: &BigUint,
    u: &BigUint,
    max_p: u64,
) -> Result<(u64, u64, u64), AdversaryError> {
    let bound = BigUint::from(max_p);
    if p > &bound {
        return Err(AdversaryError::TooLarge {
            size: p.to_u64().unwrap_or(u64::MAX),
            bound: max_p,
        });
    }
    if !is_prime(p) {
        return Err(AdversaryError::BadParameters(format!("{p} is not prime")));
    }
    let in_group = |v: &BigUint| *v > BigUint::ZERO && v < p;
    if !in_group(x) || !in_group(u) {
        return Err(AdversaryError::BadParameters("residues must lie in [1, p-1]".into()));
    }
    let small = |v: &BigUint| v.to_u64().expect("bounded by p");
    Ok((small(p), small(x), small(u)))
}
