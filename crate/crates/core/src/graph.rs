//! Construction of the graph objects under study: Cayley digraphs, Haar
//! graphs, m-Cayley (di)graphs, standard double covers, odd quotients, and the
//! canonical semiregular actions on them.

use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};
use crate::perm::Permutation;

/// Dense vertex-colored digraph. Row `adj[u]` has bit `w` set iff the arc
/// (u, w) is present. Undirected graphs keep the adjacency symmetric and set
/// the flag.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    v: usize,
    adj: Vec<Bitset>,
    colors: Vec<u32>,
    undirected: bool,
}

impl std::fmt::Debug for ColoredDigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ColoredDigraph(v={}, arcs={}, undirected={})",
            self.v,
            self.adj.iter().map(|r| r.count()).sum::<usize>(),
            self.undirected
        )
    }
}

impl ColoredDigraph {
    pub fn empty(v: usize) -> Self {
        ColoredDigraph {
            v,
            adj: vec![Bitset::empty(v); v],
            colors: vec![0; v],
            undirected: true,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn has_arc(&self, u: usize, w: usize) -> bool {
        self.adj[u].contains(w)
    }

    pub fn add_arc(&mut self, u: usize, w: usize) {
        self.adj[u].insert(w);
    }

    pub fn add_edge(&mut self, u: usize, w: usize) {
        self.adj[u].insert(w);
        self.adj[w].insert(u);
    }

    pub fn row(&self, u: usize) -> &Bitset {
        &self.adj[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn set_colors(&mut self, colors: Vec<u32>) {
        assert_eq!(colors.len(), self.v);
        self.colors = colors;
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn set_undirected_flag(&mut self, flag: bool) {
        self.undirected = flag;
    }

    pub fn adjacency_is_symmetric(&self) -> bool {
        (0..self.v).all(|u| self.adj[u].iter().all(|w| self.adj[w].contains(u)))
    }

    /// Arcs in lexicographic order; for undirected graphs each edge appears
    /// once as (min, max).
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.v {
            for w in self.adj[u].iter() {
                if !self.undirected || u <= w {
                    out.push((u, w));
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let (kind, sep) = if self.undirected { ("graph", "--") } else { ("digraph", "->") };
        let mut s = format!("{kind} g {{\n");
        let multi_color = self.colors.iter().any(|&c| c != self.colors[0]);
        if multi_color {
            for u in 0..self.v {
                s.push_str(&format!("  {} [colorclass={}];\n", u, self.colors[u]));
            }
        }
        for (u, w) in self.edge_list() {
            s.push_str(&format!("  {u} {sep} {w};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// An m x m matrix of element subsets describing an m-Cayley (di)graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetMatrix {
    m: usize,
    entries: Vec<ElementSet>, // row-major
}

impl SetMatrix {
    pub fn new(m: usize, entries: Vec<ElementSet>) -> Result<Self> {
        if m == 0 || entries.len() != m * m {
            return Err(Error::Invalid(format!(
                "set-matrix needs {}x{} entries, got {}",
                m,
                m,
                entries.len()
            )));
        }
        let n = entries[0].len();
        if entries.iter().any(|e| e.len() != n) {
            return Err(Error::Invalid("set-matrix entries over different universes".into()));
        }
        Ok(SetMatrix { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &ElementSet {
        &self.entries[i * self.m + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut ElementSet {
        &mut self.entries[i * self.m + j]
    }

    /// S_{j,i} = S_{i,j}^{-1} for all i, j.
    pub fn is_inverse_closed(&self, g: &GroupTable) -> bool {
        for i in 0..self.m {
            for j in 0..self.m {
                let sij = self.entry(i, j);
                let sji = self.entry(j, i);
                if sij.count() != sji.count() || !sij.iter().all(|s| sji.contains(g.inv(s))) {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse-closed with empty diagonal entries.
    pub fn is_skew(&self, g: &GroupTable) -> bool {
        self.is_inverse_closed(g) && (0..self.m).all(|i| self.entry(i, i).is_empty())
    }
}

/// An ordered partition of the vertex set into disjoint covering blocks.
#[derive(Clone, Debug)]
pub struct BlockPartition {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockPartition {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; v];
        let mut covered = 0;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            for &x in block {
                if x >= v {
                    return Err(Error::BadPartition(format!("vertex {x} out of range")));
                }
                if seen[x] {
                    return Err(Error::BadPartition(format!("vertex {x} in two blocks")));
                }
                seen[x] = true;
                covered += 1;
            }
        }
        if covered != v {
            return Err(Error::BadPartition("blocks do not cover the vertex set".into()));
        }
        Ok(BlockPartition { v, blocks })
    }

    pub fn singletons(v: usize) -> Self {
        BlockPartition { v, blocks: (0..v).map(|x| vec![x]).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }
}

/// Cayley digraph: vertex set G, arc (g, h) iff h g^-1 in S. Undirected flag
/// set exactly when S is inverse-closed.
pub fn cayley_digraph(g: &GroupTable, s: &ElementSet) -> ColoredDigraph {
    let n = g.order();
    debug_assert_eq!(s.len(), n);
    let mut d = ColoredDigraph::empty(n);
    for x in 0..n {
        for t in s.iter() {
            d.add_arc(x, g.mul(t, x));
        }
    }
    d.set_undirected_flag(g.is_inverse_closed(s));
    d
}

/// Haar graph on two copies of G: vertex (g, part) at index part*n + g, with
/// g in part 0 adjacent to h in part 1 iff h g^-1 in S. Always undirected,
/// bipartite, and loop-free; all vertices share one color.
pub fn haar_graph(g: &GroupTable, s: &ElementSet) -> ColoredDigraph {
    let n = g.order();
    debug_assert_eq!(s.len(), n);
    let mut d = ColoredDigraph::empty(2 * n);
    for x in 0..n {
        for t in s.iter() {
            d.add_edge(x, n + g.mul(t, x));
        }
    }
    d.set_undirected_flag(true);
    d
}

/// The Haar graph with the two parts distinguished by color (part 0 colored 0,
/// part 1 colored 1); automorphisms of this object are the part-preserving
/// automorphisms of the Haar graph.
pub fn haar_graph_colored(g: &GroupTable, s: &ElementSet) -> ColoredDigraph {
    let n = g.order();
    let mut d = haar_graph(g, s);
    let mut colors = vec![0u32; 2 * n];
    for c in colors.iter_mut().skip(n) {
        *c = 1;
    }
    d.set_colors(colors);
    d
}

/// m-Cayley digraph: vertex (g, block) at index block*n + g; arcs
/// ((g,i), (sg,j)) for s in S_{i,j}. Undirected flag set exactly when the
/// set-matrix is inverse-closed.
pub fn m_cayley_digraph(g: &GroupTable, sm: &SetMatrix) -> ColoredDigraph {
    let n = g.order();
    let m = sm.m();
    let mut d = ColoredDigraph::empty(m * n);
    for i in 0..m {
        for j in 0..m {
            for s in sm.entry(i, j).iter() {
                for x in 0..n {
                    d.add_arc(i * n + x, j * n + g.mul(s, x));
                }
            }
        }
    }
    d.set_undirected_flag(sm.is_inverse_closed(g));
    d
}

/// Standard double cover: vertex set V x {1,2}, one edge {(g,1),(h,2)} per
/// arc (g,h). Input colors are carried to both covers.
pub fn standard_double_cover(d: &ColoredDigraph) -> ColoredDigraph {
    let v = d.vertex_count();
    let mut out = ColoredDigraph::empty(2 * v);
    for u in 0..v {
        for w in d.row(u).iter() {
            out.add_edge(u, v + w);
        }
    }
    let mut colors = d.colors().to_vec();
    colors.extend_from_slice(d.colors());
    out.set_colors(colors);
    out.set_undirected_flag(true);
    out
}

/// Odd quotient: one vertex per block, arc B -> C iff the common neighbour
/// count e(B, C) is odd. The defining hypothesis (all vertices of B have the
/// same number of neighbours in C) is validated. The undirected flag is set
/// when all blocks are equal-sized and the quotient came out symmetric.
pub fn odd_quotient(d: &ColoredDigraph, partition: &BlockPartition) -> Result<ColoredDigraph> {
    if partition.vertex_count() != d.vertex_count() {
        return Err(Error::BadPartition("partition is over a different vertex set".into()));
    }
    let blocks = partition.blocks();
    let k = blocks.len();
    let mut masks: Vec<Bitset> = Vec::with_capacity(k);
    for block in blocks {
        masks.push(Bitset::from_indices(d.vertex_count(), block));
    }
    let mut q = ColoredDigraph::empty(k);
    for (bi, block) in blocks.iter().enumerate() {
        for (ci, mask) in masks.iter().enumerate() {
            let first = d.row(block[0]).intersection_count(mask);
            for &u in &block[1..] {
                if d.row(u).intersection_count(mask) != first {
                    return Err(Error::NotEquitable { u: block[0], v: u });
                }
            }
            if first % 2 == 1 {
                q.add_arc(bi, ci);
            }
        }
    }
    let equal_sizes = blocks.iter().all(|b| b.len() == blocks[0].len());
    q.set_undirected_flag(equal_sizes && q.adjacency_is_symmetric());
    Ok(q)
}

/// Right-multiplication action on m copies of G: one permutation per element
/// of a deterministic generating set, each mapping (g, i) to (gx, i).
pub fn right_regular_action(g: &GroupTable, m: usize) -> Vec<Permutation> {
    assert!(m >= 1);
    let n = g.order();
    g.greedy_generators()
        .into_iter()
        .map(|x| {
            let mut images = vec![0; m * n];
            for b in 0..m {
                for y in 0..n {
                    images[b * n + y] = b * n + g.mul(y, x);
                }
            }
            Permutation::from_images(images).expect("right multiplication is a bijection")
        })
        .collect()
}

/// The involution on Haar vertices sending (g, part) to (g^-1, other part).
/// Defined for abelian groups, where it is an automorphism of every Haar
/// graph of G and normalizes the right-regular action.
pub fn iota_permutation(g: &GroupTable) -> Result<Permutation> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = g.order();
    let mut images = vec![0; 2 * n];
    for x in 0..n {
        images[x] = n + g.inv(x);
        images[n + x] = g.inv(x);
    }
    Ok(Permutation::from_images(images).expect("iota is a bijection"))
}

/// Checks that a permutation preserves arcs, non-arcs, and colors.
pub fn is_automorphism(d: &ColoredDigraph, p: &Permutation) -> bool {
    let v = d.vertex_count();
    if p.degree() != v {
        return false;
    }
    for u in 0..v {
        if d.colors()[u] != d.colors()[p.apply(u)] {
            return false;
        }
        for w in 0..v {
            if d.has_arc(u, w) != d.has_arc(p.apply(u), p.apply(w)) {
                return false;
            }
        }
    }
    true
}
