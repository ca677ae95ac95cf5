mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use zkaction::graph::{
    apply_permutation, compose, induced_subgraph, invert, is_valid_coloring, Coloring, Graph,
    Permutation, VertexEmbedding,
};
use zkaction::schemes::{mod_inverse, mod_pow};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::edgeless(n);
            let mut it = bits.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    g.set_edge(a, b, it.next().unwrap());
                }
            }
            g
        })
    })
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_vec(v).unwrap())
}

fn graph_and_perms() -> impl Strategy<Value = (Graph, Permutation, Permutation)> {
    graph(12).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), perm(n), perm(n))
    })
}

fn slow_pow(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn permutation_action_is_compatible((g, p, q) in graph_and_perms()) {
        let stepwise = apply_permutation(&apply_permutation(&g, &q).unwrap(), &p).unwrap();
        let at_once = apply_permutation(&g, &compose(&p, &q).unwrap()).unwrap();
        prop_assert_eq!(stepwise, at_once);
    }

    #[test]
    fn identity_and_inverse((g, p, _q) in graph_and_perms()) {
        let n = g.vertex_count();
        prop_assert_eq!(apply_permutation(&g, &Permutation::identity(n)).unwrap(), g.clone());
        let there = apply_permutation(&g, &p).unwrap();
        prop_assert_eq!(apply_permutation(&there, &invert(&p)).unwrap(), g.clone());
        prop_assert!(compose(&p, &invert(&p)).unwrap().is_identity());
    }

    #[test]
    fn relabeling_preserves_edges_and_degrees((g, p, _q) in graph_and_perms()) {
        let h = apply_permutation(&g, &p).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(h.degree_multiset(), g.degree_multiset());
        for (a, b) in g.edges() {
            prop_assert!(h.has_edge(p.apply(a), p.apply(b)));
        }
    }

    #[test]
    fn graph_bytes_round_trip(g in graph(20)) {
        let bytes = g.to_bytes();
        let n = g.vertex_count();
        prop_assert_eq!(bytes.len(), 4 + (n * (n - 1) / 2).div_ceil(8));
        prop_assert_eq!(Graph::from_bytes(&bytes).unwrap(), g);
    }

    #[test]
    fn pushed_coloring_stays_proper((g, p, _q) in graph_and_perms()) {
        // greedy coloring is proper with at most n colors
        let n = g.vertex_count();
        let mut colors: Vec<u16> = Vec::with_capacity(n);
        for v in 0..n {
            let c = (1..=n as u16)
                .find(|c| (0..v).all(|u| !(g.has_edge(u, v) && colors[u] == *c)))
                .unwrap();
            colors.push(c);
        }
        let col = Coloring::new(n as u16, colors);
        prop_assert!(is_valid_coloring(&g, &col).unwrap());
        let h = apply_permutation(&g, &p).unwrap();
        let pushed = col.push_forward(&p).unwrap();
        prop_assert!(is_valid_coloring(&h, &pushed).unwrap());
        prop_assert!(is_valid_coloring(&h, &pushed.canonical_renaming()).unwrap());
        prop_assert_eq!(pushed.pull_back(&p).unwrap(), col);
    }

    #[test]
    fn induced_subgraph_commutes_with_relabeling((g, p, _q) in graph_and_perms(), take in 1usize..12) {
        let n = g.vertex_count();
        let take = take.min(n);
        let emb = VertexEmbedding::new((0..take).collect());
        let moved = VertexEmbedding::new((0..take).map(|i| p.apply(i)).collect());
        let h = apply_permutation(&g, &p).unwrap();
        prop_assert_eq!(induced_subgraph(&h, &moved).unwrap(), induced_subgraph(&g, &emb).unwrap());
    }

    #[test]
    fn exponent_action_composes(x in 2u64..1009, s in 1u64..1008, t in 1u64..1008) {
        let p = 1009u64;
        let big = |v: u64| BigUint::from(v);
        let u = mod_pow(&big(x), &big(s), &big(p)).unwrap();
        prop_assert_eq!(u.clone(), big(slow_pow(x, s, p)));
        let lhs = mod_pow(&u, &big(t), &big(p)).unwrap();
        let rhs = mod_pow(&big(x), &big(t * s % (p - 1)), &big(p)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mod_inverse_inverts(a in 1u64..10_000, m in 2u64..10_000) {
        let g = num_integer::gcd(a, m);
        match mod_inverse(&BigUint::from(a), &BigUint::from(m)) {
            Some(inv) => {
                prop_assert_eq!(g, 1);
                prop_assert_eq!((inv * a) % m, BigUint::from(1u8) % m);
            }
            None => prop_assert!(g != 1),
        }
    }
}
