use rand::Rng;

use super::{
    apply_permutation, random_permutation, Coloring, Graph, GraphError, VertexEmbedding,
};

/// Erdos-Renyi graph: each pair is an edge independently with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadParameters(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut g = Graph::edgeless(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok(g)
}

/// Splits `n` into `k` positive parts differing by at most one.
pub fn even_partition(n: usize, k: usize) -> Result<Vec<usize>, GraphError> {
    if k == 0 || k > n {
        return Err(GraphError::BadParameters(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok((0..k).map(|i| n / k + usize::from(i < n % k)).collect())
}

/// Random graph together with a proper coloring using exactly `k` colors,
/// built from an even partition of the vertices.
pub fn generate_k_colorable_graph<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<(Graph, Coloring), GraphError> {
    let sizes = even_partition(n, k)?;
    generate_k_colorable_graph_with_partition(&sizes, rng)
}

/// Classes `V_i` of the given sizes receive color `i`; no edges inside a
/// class, each cross-class pair is an edge with probability 1/2. The result
/// is relabeled by a uniform permutation so class membership is not
/// positional.
pub fn generate_k_colorable_graph_with_partition<R: Rng + ?Sized>(
    sizes: &[usize],
    rng: &mut R,
) -> Result<(Graph, Coloring), GraphError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(GraphError::BadParameters(
            "partition parts must be positive and at least one".into(),
        ));
    }
    let k = u16::try_from(sizes.len())
        .map_err(|_| GraphError::BadParameters("too many color classes".into()))?;
    let n: usize = sizes.iter().sum();
    let class: Vec<u16> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i as u16 + 1, s))
        .collect();

    let mut g = Graph::edgeless(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if class[i] != class[j] && rng.gen_bool(0.5) {
                g.set_edge(i, j, true);
            }
        }
    }
    let coloring = Coloring::new(k, class);

    let relabel = random_permutation(n, rng);
    let g = apply_permutation(&g, &relabel)?;
    let coloring = coloring.push_forward(&relabel)?;
    Ok((g, coloring))
}

/// Embeds `g` as an induced subgraph of a random host on `m` vertices.
///
/// Every pair touching one of the `m - n` fresh vertices is an edge with
/// probability 1/2, and the host is relabeled uniformly so the embedding is a
/// uniform injection. `induced_subgraph(host, emb) == g`.
pub fn embed_into_larger<R: Rng + ?Sized>(
    g: &Graph,
    m: usize,
    rng: &mut R,
) -> Result<(Graph, VertexEmbedding), GraphError> {
    let n = g.vertex_count();
    if m < n {
        return Err(GraphError::TooSmall { graph: n, host: m });
    }
    let mut host = Graph::edgeless(m);
    for (i, j) in g.edges() {
        host.set_edge(i, j, true);
    }
    for j in n..m {
        for i in 0..j {
            if rng.gen_bool(0.5) {
                host.set_edge(i, j, true);
            }
        }
    }
    let relabel = random_permutation(m, rng);
    let host = apply_permutation(&host, &relabel)?;
    let emb = VertexEmbedding::new((0..n).map(|i| relabel.apply(i)).collect());
    Ok((host, emb))
}
