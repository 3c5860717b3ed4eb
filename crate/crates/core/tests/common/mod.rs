//! Brute-force oracles shared by the integration tests. Everything here
//! recomputes results by exhaustive enumeration, independent of the search
//! and counting paths in the library.

#![allow(dead_code)]

use haarcensus::graph::ColoredDigraph;
use haarcensus::group::GroupTable;
use haarcensus::perm::Permutation;
use haarcensus::rng;

/// Counts color-preserving adjacency-preserving bijections by scanning all
/// permutations of the vertex set. Usable up to ~8 vertices.
pub fn brute_force_aut_count(d: &ColoredDigraph) -> u64 {
    let v = d.vertex_count();
    let mut perm: Vec<usize> = (0..v).collect();
    let mut count = 0u64;
    loop {
        if preserves(d, &perm) {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    count
}

fn preserves(d: &ColoredDigraph, p: &[usize]) -> bool {
    let v = d.vertex_count();
    for u in 0..v {
        if d.colors()[u] != d.colors()[p[u]] {
            return false;
        }
        for w in 0..v {
            if d.has_arc(u, w) != d.has_arc(p[u], p[w]) {
                return false;
            }
        }
    }
    true
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 2;
    loop {
        if p[i] < p[i + 1] {
            break;
        }
        if i == 0 {
            return false;
        }
        i -= 1;
    }
    let mut j = n - 1;
    while p[j] <= p[i] {
        j -= 1;
    }
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Size of the group generated by permutations, by plain closure.
pub fn brute_force_closure_order(gens: &[Permutation], degree: usize) -> u64 {
    let mut seen = std::collections::HashSet::new();
    let mut elems = vec![Permutation::identity(degree)];
    seen.insert(elems[0].clone());
    let mut i = 0;
    while i < elems.len() {
        let e = elems[i].clone();
        i += 1;
        for g in gens {
            let p = e.compose(g);
            if seen.insert(p.clone()) {
                elems.push(p);
            }
        }
    }
    elems.len() as u64
}

/// Group isomorphism by brute force over generator images. Small orders only.
pub fn brute_force_isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    let gens = a.greedy_generators();
    let orders_a: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let orders_b: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();
    let mut images = vec![0usize; gens.len()];
    fn rec(
        a: &GroupTable,
        b: &GroupTable,
        gens: &[usize],
        orders_a: &[usize],
        orders_b: &[usize],
        level: usize,
        images: &mut Vec<usize>,
    ) -> bool {
        if level == gens.len() {
            return extend_map(a, b, gens, images).is_some();
        }
        for c in 0..b.order() {
            if orders_b[c] == orders_a[gens[level]] {
                images[level] = c;
                if extend_map_partial(a, b, &gens[..=level], &images[..=level])
                    && rec(a, b, gens, orders_a, orders_b, level + 1, images)
                {
                    return true;
                }
            }
        }
        false
    }
    rec(a, b, &gens, &orders_a, &orders_b, 0, &mut images)
}

fn extend_map_partial(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
    extend_inner(a, b, gens, images).is_some()
}

fn extend_map(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let map = extend_inner(a, b, gens, images)?;
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

fn extend_inner(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut hit = vec![false; b.order()];
    map[0] = 0;
    hit[0] = true;
    let mut elems = vec![0usize];
    let mut i = 0;
    while i < elems.len() {
        let e = elems[i];
        i += 1;
        for (j, &gen) in gens.iter().enumerate() {
            let f = a.mul(e, gen);
            let fm = b.mul(map[e], images[j]);
            if map[f] == usize::MAX {
                if hit[fm] {
                    return None;
                }
                map[f] = fm;
                hit[fm] = true;
                elems.push(f);
            } else if map[f] != fm {
                return None;
            }
        }
    }
    Some(map)
}

/// Deterministic pseudorandom colored digraph with at most `max_v` vertices.
pub fn random_colored_digraph(seed: u64, index: u64, max_v: usize) -> ColoredDigraph {
    let w0 = rng::mix3(seed, index, 0);
    let v = 1 + (w0 % max_v as u64) as usize;
    let undirected = w0 >> 32 & 1 == 1;
    let ncolors = 1 + (w0 >> 33) % 3;
    let mut d = ColoredDigraph::empty(v);
    let mut word = 1u64;
    let mut bits = rng::mix3(seed, index, word);
    let mut used = 0;
    let mut next_bit = || {
        if used == 64 {
            word += 1;
            bits = rng::mix3(seed, index, word);
            used = 0;
        }
        let b = bits & 1 == 1;
        bits >>= 1;
        used += 1;
        b
    };
    for u in 0..v {
        for w in 0..v {
            if u == w {
                continue;
            }
            if undirected && w < u {
                continue;
            }
            if next_bit() {
                if undirected {
                    d.add_edge(u, w);
                } else {
                    d.add_arc(u, w);
                }
            }
        }
    }
    d.set_undirected_flag(undirected);
    let colors: Vec<u32> = (0..v)
        .map(|u| (rng::mix3(seed ^ 0xC0105, index, u as u64) % ncolors) as u32)
        .collect();
    d.set_colors(colors);
    d
}
