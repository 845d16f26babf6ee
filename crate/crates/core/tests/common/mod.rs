//! Shared generators and independent oracles for the integration tests.
//!
//! Everything here is deliberately naive: the generators build networks by
//! direct construction and the cut oracle enumerates edge subsets, so they
//! share no code paths with the library routines they cross-check.

#![allow(dead_code)]

use rand::Rng;
use sumnet::cutlab;
use sumnet::galois::FieldMatrix;
use sumnet::lincode::LinearCode;
use sumnet::netmodel::{EdgeIx, Network, NodeIx};

/// Random acyclic sum network: 2-3 sources, up to `max_relays` relay nodes,
/// one sink, edges only from earlier nodes to later ones. Retries until the
/// structural validator accepts and the edge count stays within `max_edges`.
pub fn random_network(rng: &mut impl Rng, q: u64, max_relays: usize, max_edges: usize) -> Network {
    loop {
        let s: usize = rng.gen_range(2..=3);
        let relays: usize = rng.gen_range(0..=max_relays);
        let total = s + relays + 1;
        let sink = total - 1;

        let mut node_ids: Vec<String> = (0..s).map(|i| format!("s{}", i + 1)).collect();
        node_ids.extend((0..relays).map(|i| format!("v{}", i + 1)));
        node_ids.push("rho".to_string());

        // Every relay and the sink pull in-edges from strictly earlier nodes,
        // which keeps the graph acyclic by construction.
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for j in s..total {
            for _ in 0..rng.gen_range(1..=2) {
                arcs.push((rng.gen_range(0..j), j));
            }
        }
        // Any node still without an out-edge sends one forward, so every
        // node reaches the sink.
        for i in 0..sink {
            if !arcs.iter().any(|&(t, _)| t == i) {
                let lo = s.max(i + 1);
                arcs.push((i, rng.gen_range(lo..=sink)));
            }
        }
        if arcs.len() > max_edges {
            continue;
        }

        let edge_list: Vec<(String, String, String)> = arcs
            .iter()
            .enumerate()
            .map(|(k, &(t, h))| (format!("e{}", k + 1), node_ids[t].clone(), node_ids[h].clone()))
            .collect();
        let source_list: Vec<(String, u64)> = (0..s)
            .map(|i| (node_ids[i].clone(), rng.gen_range(1..q.max(2))))
            .collect();

        if let Ok(n) = Network::build(q, node_ids, edge_list, source_list, "rho") {
            return n;
        }
    }
}

/// Random multi-edge tree: each non-sink node sends one bundle of 2-4
/// parallel edges to a single later node, so the underlying simple graph is
/// a tree directed at the sink and every source cut is some bundle size.
/// Retries until the instance fits in 8 nodes / 10 edges with the cheapest
/// source cut in [2, 4].
pub fn random_multi_edge_tree(rng: &mut impl Rng, q: u64) -> Network {
    loop {
        let s: usize = rng.gen_range(2..=3);
        let relays: usize = rng.gen_range(0..=1);
        let total = s + relays + 1;
        let sink = total - 1;

        let mut node_ids: Vec<String> = (0..s).map(|i| format!("s{}", i + 1)).collect();
        node_ids.extend((0..relays).map(|i| format!("v{}", i + 1)));
        node_ids.push("rho".to_string());

        let mut edge_list: Vec<(String, String, String)> = Vec::new();
        let mut k = 0;
        for i in 0..sink {
            let lo = s.max(i + 1);
            let parent = rng.gen_range(lo..=sink);
            for _ in 0..rng.gen_range(2..=4) {
                k += 1;
                edge_list.push((format!("e{k}"), node_ids[i].clone(), node_ids[parent].clone()));
            }
        }
        if edge_list.len() > 10 {
            continue;
        }
        let source_list: Vec<(String, u64)> = (0..s)
            .map(|i| (node_ids[i].clone(), rng.gen_range(1..q.max(2))))
            .collect();

        let Ok(n) = Network::build(q, node_ids, edge_list, source_list, "rho") else {
            continue;
        };
        debug_assert!(cutlab::is_multi_edge_tree(&n));
        let c_min = cutlab::compute_c_min(&n).unwrap().value;
        if (2..=4).contains(&c_min) {
            return n;
        }
    }
}

/// Whether removing `cut` leaves the sink unreachable from every node in
/// `from`. Plain depth-first search, independent of the flow machinery.
pub fn separated(n: &Network, from: &[NodeIx], cut: &[EdgeIx]) -> bool {
    let banned: std::collections::HashSet<EdgeIx> = cut.iter().copied().collect();
    let mut seen = vec![false; n.nodes().len()];
    let mut stack: Vec<NodeIx> = Vec::new();
    for &v in from {
        if !seen[v] {
            seen[v] = true;
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        for (k, e) in n.edges().iter().enumerate() {
            if e.tail == v && !banned.contains(&k) && !seen[e.head] {
                seen[e.head] = true;
                stack.push(e.head);
            }
        }
    }
    !seen[n.sink()]
}

/// Minimum number of edges whose removal separates `from` from the sink,
/// found by trying every edge subset in order of size.
pub fn brute_min_cut(n: &Network, from: &[NodeIx]) -> u64 {
    let m = n.edges().len();
    for size in 0..=m {
        if subsets(m, size).iter().any(|cut| separated(n, from, cut)) {
            return size as u64;
        }
    }
    unreachable!("removing every edge always separates a source from the sink");
}

/// Uniformly random global encoding matrices for every edge. The result is
/// usually not locally realizable; it exists to cross-check the algebraic
/// security conditions against the entropy oracle on arbitrary codes.
pub fn random_code(
    rng: &mut impl Rng,
    n: &Network,
    msg_len: usize,
    key_len: usize,
    edge_dim: usize,
) -> LinearCode {
    let field = n.field();
    let s = n.sources().len();
    let rows = s * (msg_len + key_len);
    let encodings = n
        .edges()
        .iter()
        .map(|e| {
            let flat: Vec<u64> = (0..rows * edge_dim)
                .map(|_| rng.gen_range(0..field.modulus()))
                .collect();
            let m = FieldMatrix::from_flat(field, rows, edge_dim, &flat).unwrap();
            (e.id.clone(), m)
        })
        .collect();
    LinearCode::from_parts(field, msg_len, key_len, edge_dim, s, encodings).unwrap()
}

/// All subsets of `0..m` of exactly `size` elements, materialized. Small
/// inputs only; the tests stay below a few hundred subsets.
pub fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn go(next: usize, m: usize, size: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pick.len() == size {
            out.push(pick.clone());
            return;
        }
        for v in next..m {
            if m - v < size - pick.len() {
                break;
            }
            pick.push(v);
            go(v + 1, m, size, pick, out);
            pick.pop();
        }
    }
    go(0, m, size, &mut pick, &mut out);
    out
}
