#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use zkaction::schemes::{ColoringKeyPair, GraphIsoKeyPair, ModExpKeyPair, SubgraphIsoKeyPair};
use zkaction::{ColoringScheme, GraphIso, ModExp, SubgraphIso};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn graph_iso_key(n: usize, seed: u64) -> GraphIsoKeyPair {
    GraphIso.keygen(n, 0.5, &mut rng(seed)).unwrap()
}

pub fn subgraph_key(n: usize, host: usize, seed: u64) -> SubgraphIsoKeyPair {
    SubgraphIso::default().keygen(n, host, &mut rng(seed)).unwrap()
}

pub fn coloring_key(n: usize, k: usize, seed: u64) -> ColoringKeyPair {
    ColoringScheme.keygen(n, k, &mut rng(seed)).unwrap()
}

pub fn modexp_key(p: u64, seed: u64) -> ModExpKeyPair {
    ModExp.keygen(&BigUint::from(p), &mut rng(seed)).unwrap()
}

pub fn counts<T: Eq + Hash>(items: impl IntoIterator<Item = T>) -> HashMap<T, u64> {
    let mut m = HashMap::new();
    for it in items {
        *m.entry(it).or_insert(0) += 1;
    }
    m
}

/// Upper 1% point of the chi-square distribution.
pub fn chi2_critical_99(df: usize) -> f64 {
    ChiSquared::new(df as f64).unwrap().inverse_cdf(0.99)
}

/// Two-sample chi-square statistic for equal-sized samples, with its
/// degrees of freedom.
pub fn two_sample_chi2<T: Eq + Hash + Clone>(a: &HashMap<T, u64>, b: &HashMap<T, u64>) -> (f64, usize) {
    let mut keys: Vec<&T> = a.keys().collect();
    keys.extend(b.keys().filter(|k| !a.contains_key(*k)));
    let stat = keys
        .iter()
        .map(|k| {
            let x = *a.get(*k).unwrap_or(&0) as f64;
            let y = *b.get(*k).unwrap_or(&0) as f64;
            (x - y).powi(2) / (x + y)
        })
        .sum();
    (stat, keys.len() - 1)
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
