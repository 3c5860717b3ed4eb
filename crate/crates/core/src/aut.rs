//! Exact automorphism groups of vertex-colored digraphs via
//! individualization-refinement, together with the representation predicates
//! built on top of them.
//!
//! The search fixes one individualization path (the base) and, for each base
//! vertex, looks for automorphisms that fix the earlier base vertices and move
//! it to each other member of its cell. The successful mappings are coset
//! representatives of a stabilizer chain, so the group order comes out as the
//! product of the per-level orbit sizes without enumerating elements.

use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::graph::{cayley_digraph, haar_graph, haar_graph_colored, is_automorphism, m_cayley_digraph, ColoredDigraph, SetMatrix};
use crate::group::{ElementSet, GroupTable};
use crate::perm::{PermGroup, Permutation};
use num_bigint::BigUint;

/// Colors a vertex can end up with during refinement.
type Coloring = Vec<u32>;

struct Engine<'a> {
    d: &'a ColoredDigraph,
    v: usize,
    /// Reversed adjacency, used for in-neighbor color counts on digraphs.
    radj: Vec<Bitset>,
    directed: bool,
}

impl<'a> Engine<'a> {
    fn new(d: &'a ColoredDigraph) -> Self {
        let v = d.vertex_count();
        let directed = !d.is_undirected();
        let mut radj = vec![Bitset::empty(v); v];
        if directed {
            for u in 0..v {
                for w in d.row(u).iter() {
                    radj[w].insert(u);
                }
            }
        }
        Engine { d, v, radj, directed }
    }

    /// Iterates the signature refinement to a fixpoint. A vertex's signature
    /// is (color, multiset of out-neighbor colors, multiset of in-neighbor
    /// colors); new color ids are ranks of the sorted distinct signatures, so
    /// two colorings refined from aligned states stay aligned. Returns one
    /// digest per round for divergence pruning.
    fn refine(&self, colors: &mut Coloring) -> Vec<u64> {
        let mut trace = Vec::new();
        loop {
            let before = count_colors(colors);
            let mut keyed: Vec<(Vec<u32>, usize)> = (0..self.v)
                .map(|u| (self.signature(colors, u), u))
                .collect();
            keyed.sort();
            trace.push(digest_keys(&keyed));
            let mut next = vec![0u32; self.v];
            let mut id = 0u32;
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    id += 1;
                }
                next[keyed[i].1] = id;
            }
            *colors = next;
            if count_colors(colors) == before {
                break;
            }
        }
        trace
    }

    fn signature(&self, colors: &Coloring, u: usize) -> Vec<u32> {
        let mut key = vec![colors[u], u32::MAX];
        push_counts(&mut key, colors, self.d.row(u));
        if self.directed {
            key.push(u32::MAX - 1);
            push_counts(&mut key, colors, &self.radj[u]);
        }
        key
    }

    /// Assigns a fresh color (one past the current maximum) to `u` and refines.
    fn individualize(&self, colors: &mut Coloring, u: usize) -> Vec<u64> {
        let fresh = count_colors(colors) as u32;
        colors[u] = fresh;
        self.refine(colors)
    }

    /// Searches for an automorphism mapping the left coloring onto the right
    /// one (aligned color ids); both are assumed refined.
    fn search(&self, left: &Coloring, right: &Coloring) -> Option<Permutation> {
        match target_cell(left) {
            None => {
                // Discrete: the candidate maps each left vertex to the right
                // vertex of the same color.
                let mut images = vec![0usize; self.v];
                let mut slot = vec![usize::MAX; self.v];
                for (x, &c) in right.iter().enumerate() {
                    if slot[c as usize] != usize::MAX {
                        return None;
                    }
                    slot[c as usize] = x;
                }
                for (x, &c) in left.iter().enumerate() {
                    images[x] = slot[c as usize];
                }
                let p = Permutation::from_images(images).ok()?;
                if self.check(&p) {
                    Some(p)
                } else {
                    None
                }
            }
            Some(cell_color) => {
                let u = left.iter().position(|&c| c == cell_color).unwrap();
                let mut l2 = left.clone();
                let tl = self.individualize(&mut l2, u);
                for (w, _) in right.iter().enumerate().filter(|&(_, &c)| c == cell_color) {
                    let mut r2 = right.clone();
                    let tr = self.individualize(&mut r2, w);
                    if tl == tr {
                        if let Some(p) = self.search(&l2, &r2) {
                            return Some(p);
                        }
                    }
                }
                None
            }
        }
    }

    /// Full adjacency-and-color verification of a candidate.
    fn check(&self, p: &Permutation) -> bool {
        for u in 0..self.v {
            if self.d.colors()[u] != self.d.colors()[p.apply(u)] {
                return false;
            }
            let mut mapped = Bitset::empty(self.v);
            for w in self.d.row(u).iter() {
                mapped.insert(p.apply(w));
            }
            if &mapped != self.d.row(p.apply(u)) {
                return false;
            }
        }
        true
    }
}

fn count_colors(colors: &Coloring) -> usize {
    colors.iter().map(|&c| c as usize).max().map_or(0, |m| m + 1)
}

fn push_counts(key: &mut Vec<u32>, colors: &Coloring, neighbors: &Bitset) {
    let k = count_colors(colors);
    let mut counts = vec![0u32; k];
    for w in neighbors.iter() {
        counts[colors[w] as usize] += 1;
    }
    for (c, &cnt) in counts.iter().enumerate() {
        if cnt > 0 {
            key.push(c as u32);
            key.push(cnt);
        }
    }
}

fn digest_keys(keyed: &[(Vec<u32>, usize)]) -> u64 {
    // FNV-1a over the sorted signature stream; used only to prune candidate
    // branches whose refinement diverged, so collisions merely cost time.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (key, _) in keyed {
        for &w in key {
            h ^= w as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The color of the first smallest non-singleton cell, in color-class order.
fn target_cell(colors: &Coloring) -> Option<u32> {
    let k = count_colors(colors);
    let mut sizes = vec![0usize; k];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s > 1)
        .min_by_key(|&(c, &s)| (s, c))
        .map(|(c, _)| c as u32)
}

/// Maps arbitrary input colors to 0..k, preserving numeric order.
fn normalize_colors(input: &[u32]) -> Coloring {
    let mut distinct: Vec<u32> = input.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    input
        .iter()
        .map(|c| distinct.binary_search(c).unwrap() as u32)
        .collect()
}

/// Record of one automorphism search: the refined initial coloring, the
/// individualization decisions along the base path, and the discovered
/// generators (each a verified automorphism).
#[derive(Clone, Debug)]
pub struct RefinementTrace {
    pub initial_coloring: Vec<u32>,
    /// (target cell color, individualized vertex), per base level.
    pub decisions: Vec<(u32, usize)>,
    pub generators: Vec<Permutation>,
}

/// Exact automorphism group of a vertex-colored digraph: generators preserve
/// arcs, non-arcs, and colors; the order is exact.
pub fn automorphism_group(d: &ColoredDigraph) -> PermGroup {
    automorphism_group_traced(d).0
}

/// As `automorphism_group`, also returning the search record.
pub fn automorphism_group_traced(d: &ColoredDigraph) -> (PermGroup, RefinementTrace) {
    let v = d.vertex_count();
    assert!(v >= 1, "automorphism_group requires at least one vertex");
    let engine = Engine::new(d);
    let mut colors = normalize_colors(d.colors());
    engine.refine(&mut colors);
    let initial_coloring = colors.clone();

    // Leftmost individualization path: always the smallest vertex of the
    // first smallest non-singleton cell.
    struct PathLevel {
        pre: Coloring,
        cell_color: u32,
        u: usize,
    }
    let mut path: Vec<PathLevel> = Vec::new();
    let mut cur = colors;
    while let Some(cell_color) = target_cell(&cur) {
        let u = cur.iter().position(|&c| c == cell_color).unwrap();
        path.push(PathLevel { pre: cur.clone(), cell_color, u });
        engine.individualize(&mut cur, u);
    }

    let mut chain: Vec<(usize, Vec<Permutation>)> = Vec::new();
    for level in &path {
        let mut left = level.pre.clone();
        let tl = engine.individualize(&mut left, level.u);
        let mut reps = Vec::new();
        for (cand, _) in level
            .pre
            .iter()
            .enumerate()
            .filter(|&(x, &c)| c == level.cell_color && x != level.u)
        {
            let mut right = level.pre.clone();
            let tr = engine.individualize(&mut right, cand);
            if tl != tr {
                continue;
            }
            if let Some(p) = engine.search(&left, &right) {
                debug_assert!(is_automorphism(d, &p));
                debug_assert_eq!(p.apply(level.u), cand);
                reps.push(p);
            }
        }
        chain.push((level.u, reps));
    }
    let trace = RefinementTrace {
        initial_coloring,
        decisions: path.iter().map(|l| (l.cell_color, l.u)).collect(),
        generators: chain.iter().flat_map(|(_, reps)| reps.iter().cloned()).collect(),
    };
    let group =
        PermGroup::from_stabilizer_chain(v, chain).expect("chain built from verified automorphisms");
    (group, trace)
}

/// Automorphism group order only.
pub fn aut_order(d: &ColoredDigraph) -> BigUint {
    automorphism_group(d).order().clone()
}

/// Part-preserving automorphism group of the Haar graph of (G, S): the
/// automorphisms fixing both parts setwise, computed by coloring the parts.
pub fn aut_plus_haar(g: &GroupTable, s: &ElementSet) -> PermGroup {
    automorphism_group(&haar_graph_colored(g, s))
}

/// The regular-representation tests identify "Aut isomorphic to G" with
/// "|Aut| = |G|": each construction plants a semiregular copy of G in the
/// automorphism group, so equality of orders forces equality of groups.
pub fn is_drr(g: &GroupTable, s: &ElementSet) -> bool {
    aut_order(&cayley_digraph(g, s)) == BigUint::from(g.order())
}

pub fn is_grr(g: &GroupTable, s: &ElementSet) -> Result<bool> {
    if !g.is_inverse_closed(s) {
        return Err(Error::NotInverseClosed);
    }
    Ok(is_drr(g, s))
}

pub fn is_hgr(g: &GroupTable, s: &ElementSet) -> bool {
    aut_order(&haar_graph(g, s)) == BigUint::from(g.order())
}

/// For abelian G: whether the part-preserving automorphisms of the Haar graph
/// are exactly the right translations.
pub fn is_haar_optimal_abelian(g: &GroupTable, s: &ElementSet) -> Result<bool> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    Ok(aut_plus_haar(g, s).order() == &BigUint::from(g.order()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MsrKind {
    /// Any set-matrix; the m-Cayley digraph case.
    Digraph,
    /// Requires an inverse-closed set-matrix; the m-Cayley graph case.
    Graph,
    /// Requires a skew set-matrix; the m-partite graph case.
    SkewGraph,
}

/// Whether the m-Cayley (di)graph of the set-matrix is a semiregular
/// representation of G, i.e. its automorphism group has order exactly |G|.
pub fn is_msr(g: &GroupTable, sm: &SetMatrix, kind: MsrKind) -> Result<bool> {
    match kind {
        MsrKind::Digraph => {}
        MsrKind::Graph => {
            if !sm.is_inverse_closed(g) {
                return Err(Error::SetMatrixFlags("expected an inverse-closed set-matrix"));
            }
        }
        MsrKind::SkewGraph => {
            if !sm.is_skew(g) {
                return Err(Error::SetMatrixFlags("expected a skew set-matrix"));
            }
        }
    }
    Ok(aut_order(&m_cayley_digraph(g, sm)) == BigUint::from(g.order()))
}
