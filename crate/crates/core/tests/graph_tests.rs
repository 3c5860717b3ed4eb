mod common;

use haarcensus::bits::Bitset;
use haarcensus::graph::*;
use haarcensus::group::{catalog_specs, make_group, ElementSet, GroupTable};
use haarcensus::perm::PermGroup;
use num_bigint::BigUint;

fn set(g: &GroupTable, elems: &[usize]) -> ElementSet {
    Bitset::from_indices(g.order(), elems)
}

fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..(1 << n)).map(move |mask| {
        let mut s = Bitset::empty(n);
        for x in 0..n {
            if mask >> x & 1 == 1 {
                s.insert(x);
            }
        }
        s
    })
}

#[test]
fn cayley_digraph_examples() {
    let c3 = make_group("C3").unwrap();
    let d = cayley_digraph(&c3, &set(&c3, &[1]));
    assert!(!d.is_undirected());
    assert_eq!(d.edge_list(), vec![(0, 1), (1, 2), (2, 0)]);

    let c4 = make_group("C4").unwrap();
    let cycle = cayley_digraph(&c4, &set(&c4, &[1, 3]));
    assert!(cycle.is_undirected());
    assert_eq!(cycle.edge_list(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);

    let c22 = make_group("C2^2").unwrap();
    let edgeless = cayley_digraph(&c22, &Bitset::empty(4));
    assert_eq!(edgeless.edge_list(), vec![]);

    // Identity in S puts a loop on every vertex.
    let loops = cayley_digraph(&c3, &set(&c3, &[0]));
    assert_eq!(loops.edge_list(), vec![(0, 0), (1, 1), (2, 2)]);
}

#[test]
fn haar_graph_examples() {
    let c2 = make_group("C2").unwrap();
    let two_edges = haar_graph(&c2, &set(&c2, &[1]));
    assert_eq!(two_edges.edge_list(), vec![(0, 3), (1, 2)]);

    let c3 = make_group("C3").unwrap();
    let matching = haar_graph(&c3, &set(&c3, &[0]));
    assert_eq!(matching.edge_list(), vec![(0, 3), (1, 4), (2, 5)]);

    let c4 = make_group("C4").unwrap();
    let complete_bipartite = haar_graph(&c4, &c4.full_set());
    assert_eq!(complete_bipartite.edge_list().len(), 16);
    for u in 0..8 {
        assert_eq!(complete_bipartite.out_degree(u), 4);
    }
}

#[test]
fn haar_graph_degree_is_set_size() {
    for spec in ["C4", "C6", "S3", "Q8"] {
        let g = make_group(spec).unwrap();
        for s in all_subsets(g.order()).step_by(3) {
            let h = haar_graph(&g, &s);
            for u in 0..2 * g.order() {
                assert_eq!(h.out_degree(u), s.count());
            }
        }
    }
}

#[test]
fn m_cayley_special_cases() {
    let g = make_group("C4").unwrap();
    let s = set(&g, &[1, 2]);

    // m = 1 with a single entry is the Cayley digraph.
    let sm1 = SetMatrix::new(1, vec![s.clone()]).unwrap();
    assert_eq!(m_cayley_digraph(&g, &sm1), cayley_digraph(&g, &s));

    // m = 2 skew with S_{1,2} = S is the Haar graph (identical indexing).
    let empty = Bitset::empty(4);
    let mut t = Bitset::empty(4);
    for x in s.iter() {
        t.insert(g.inv(x));
    }
    let sm2 = SetMatrix::new(2, vec![empty.clone(), s.clone(), t, empty]).unwrap();
    assert!(sm2.is_skew(&g));
    assert_eq!(m_cayley_digraph(&g, &sm2), haar_graph(&g, &s));
}

#[test]
fn m_cayley_full_matrix_has_all_arcs() {
    let c2 = make_group("C2").unwrap();
    let full = c2.full_set();
    let sm = SetMatrix::new(2, vec![full.clone(), full.clone(), full.clone(), full]).unwrap();
    let d = m_cayley_digraph(&c2, &sm);
    for u in 0..4 {
        for w in 0..4 {
            assert!(d.has_arc(u, w));
        }
    }
}

#[test]
fn m_cayley_undirected_iff_inverse_closed() {
    let g = make_group("C4").unwrap();
    let sm_directed = SetMatrix::new(
        2,
        vec![set(&g, &[1]), set(&g, &[0]), set(&g, &[0]), set(&g, &[1])],
    )
    .unwrap();
    assert!(!sm_directed.is_inverse_closed(&g));
    assert!(!m_cayley_digraph(&g, &sm_directed).is_undirected());

    let sm_closed = SetMatrix::new(
        2,
        vec![set(&g, &[1, 3]), set(&g, &[1]), set(&g, &[3]), set(&g, &[2])],
    )
    .unwrap();
    assert!(sm_closed.is_inverse_closed(&g));
    let d = m_cayley_digraph(&g, &sm_closed);
    assert!(d.is_undirected());
    assert!(d.adjacency_is_symmetric());
}

#[test]
fn double_cover_equals_haar_graph_exhaustively() {
    // Bit-for-bit under the shared vertex indexing, for all S over every
    // catalog group of order <= 6.
    for spec in catalog_specs() {
        let g = make_group(spec).unwrap();
        if g.order() > 6 {
            continue;
        }
        for s in all_subsets(g.order()) {
            let via_cover = standard_double_cover(&cayley_digraph(&g, &s));
            let direct = haar_graph(&g, &s);
            assert_eq!(via_cover, direct, "{spec} S={}", s.to_hex());
        }
    }
}

#[test]
fn double_cover_edge_cases() {
    let edgeless = ColoredDigraph::empty(3);
    assert_eq!(standard_double_cover(&edgeless).edge_list(), vec![]);

    // One cover edge per arc: the directed 3-cycle lifts to a perfect
    // matching, the undirected triangle to a 6-cycle.
    let c3 = make_group("C3").unwrap();
    let lift = standard_double_cover(&cayley_digraph(&c3, &set(&c3, &[1])));
    assert_eq!(lift.edge_list(), vec![(0, 4), (1, 5), (2, 3)]);
    let triangle = cayley_digraph(&c3, &set(&c3, &[1, 2]));
    let lift2 = standard_double_cover(&triangle);
    assert!(lift2.is_undirected());
    assert_eq!(lift2.edge_list().len(), 6);
    for u in 0..6 {
        assert_eq!(lift2.out_degree(u), 2);
    }
}

#[test]
fn odd_quotient_examples() {
    let c4 = make_group("C4").unwrap();

    // Cosets of <2> on both parts collapse H(C4,{0,1}) to H(C2,{0,1}).
    let h = haar_graph(&c4, &set(&c4, &[0, 1]));
    let blocks = vec![vec![0, 2], vec![1, 3], vec![4, 6], vec![5, 7]];
    let q = odd_quotient(&h, &BlockPartition::new(8, blocks).unwrap()).unwrap();
    let c2 = make_group("C2").unwrap();
    let expected = haar_graph(&c2, &c2.full_set());
    assert_eq!(q, expected);

    // Singleton blocks reproduce the graph.
    let any = haar_graph(&c4, &set(&c4, &[1, 2]));
    let q2 = odd_quotient(&any, &BlockPartition::singletons(8)).unwrap();
    assert_eq!(q2, any);

    // Complete bipartite over the same cosets: e(B,C) = 2 everywhere.
    let k44 = haar_graph(&c4, &c4.full_set());
    let blocks = vec![vec![0, 2], vec![1, 3], vec![4, 6], vec![5, 7]];
    let q3 = odd_quotient(&k44, &BlockPartition::new(8, blocks).unwrap()).unwrap();
    assert_eq!(q3.edge_list(), vec![]);
}

#[test]
fn odd_quotient_rejects_inequitable_partitions() {
    // A path on 3 vertices with blocks {0,2},{1}: fine (both ends see 1).
    // Blocks {0,1},{2}: vertex 0 has one neighbour in {2}? no, vertex 1 does.
    let mut path = ColoredDigraph::empty(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    let bad = BlockPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
    assert!(odd_quotient(&path, &bad).is_err());
    let good = BlockPartition::new(3, vec![vec![0, 2], vec![1]]).unwrap();
    assert!(odd_quotient(&path, &good).is_ok());
}

#[test]
fn odd_quotient_symmetric_on_equal_blocks() {
    // Haar graphs quotiented by coset blocks of equal size stay symmetric.
    for spec in ["C4", "C6", "C2^2"] {
        let g = make_group(spec).unwrap();
        let n = g.order();
        let core = g.subgroup_closure(&[(1..n).find(|&x| g.mul(x, x) == 0).unwrap()]);
        let mut blocks = Vec::new();
        for part in 0..2 {
            let mut seen = vec![false; n];
            for x in 0..n {
                if seen[x] {
                    continue;
                }
                let mut block: Vec<usize> = core.iter().map(|c| g.mul(c, x)).collect();
                block.sort_unstable();
                for &y in &block {
                    seen[y] = true;
                }
                blocks.push(block.iter().map(|&y| part * n + y).collect());
            }
        }
        let partition = BlockPartition::new(2 * n, blocks).unwrap();
        for s in all_subsets(n) {
            let q = odd_quotient(&haar_graph(&g, &s), &partition).unwrap();
            assert!(q.adjacency_is_symmetric(), "{spec} S={}", s.to_hex());
            assert!(q.is_undirected());
        }
    }
}

#[test]
fn right_regular_action_examples() {
    let c2 = make_group("C2").unwrap();
    let gens = right_regular_action(&c2, 2);
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].cycle_notation(), "(0 1)(2 3)");

    let c3 = make_group("C3").unwrap();
    let g3 = PermGroup::from_generators(right_regular_action(&c3, 1), 3).unwrap();
    assert_eq!(g3.order(), &BigUint::from(3u32));
    assert!(g3.is_semiregular());
    assert_eq!(g3.orbits().len(), 1);

    let q8 = make_group("Q8").unwrap();
    let gq = PermGroup::from_generators(right_regular_action(&q8, 2), 16).unwrap();
    assert_eq!(gq.order(), &BigUint::from(8u32));
    assert!(gq.is_semiregular());
    assert_eq!(gq.orbits().iter().map(|o| o.len()).collect::<Vec<_>>(), vec![8, 8]);
}

#[test]
fn right_regular_action_preserves_every_haar_graph() {
    for spec in ["C4", "C6", "S3", "Q8"] {
        let g = make_group(spec).unwrap();
        for s in all_subsets(g.order()).step_by(5) {
            let h = haar_graph(&g, &s);
            for p in right_regular_action(&g, 2) {
                assert!(is_automorphism(&h, &p), "{spec} S={}", s.to_hex());
            }
        }
    }
}

#[test]
fn iota_examples() {
    let c2 = make_group("C2").unwrap();
    assert_eq!(iota_permutation(&c2).unwrap().cycle_notation(), "(0 2)(1 3)");

    // iota preserves the 8-cycle H(C4,{1}).
    let c4 = make_group("C4").unwrap();
    let iota = iota_permutation(&c4).unwrap();
    let h = haar_graph(&c4, &set(&c4, &[1]));
    assert!(is_automorphism(&h, &iota));

    // Not defined for nonabelian groups.
    assert!(iota_permutation(&make_group("S3").unwrap()).is_err());
}

#[test]
fn iota_normalizes_right_translations() {
    // iota R(g) iota^-1 stays in R(G) for abelian G.
    let c3 = make_group("C3").unwrap();
    let iota = iota_permutation(&c3).unwrap();
    let rgens = right_regular_action(&c3, 2);
    let rg = PermGroup::from_generators(rgens.clone(), 6).unwrap();
    for r in &rgens {
        let conj = iota.inverse().compose(r).compose(&iota);
        assert!(rg.contains(&conj));
    }
}

#[test]
fn iota_is_an_involution() {
    for spec in ["C2", "C3", "C4", "C6", "C2^3", "C3xC3"] {
        let g = make_group(spec).unwrap();
        let iota = iota_permutation(&g).unwrap();
        assert!(iota.compose(&iota).is_identity());
    }
}

#[test]
fn dot_and_edge_output() {
    let c3 = make_group("C3").unwrap();
    let d = cayley_digraph(&c3, &set(&c3, &[1]));
    let dot = d.to_dot();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("0 -> 1;"));

    let h = haar_graph(&c3, &set(&c3, &[0]));
    assert!(h.to_dot().starts_with("graph"));
    assert!(h.to_dot().contains("0 -- 3;"));

    let hc = haar_graph_colored(&c3, &set(&c3, &[0]));
    assert!(hc.to_dot().contains("[colorclass=1]"));
}

#[test]
fn set_matrix_validation() {
    let g = make_group("C4").unwrap();
    assert!(SetMatrix::new(2, vec![Bitset::empty(4); 3]).is_err());
    assert!(SetMatrix::new(0, vec![]).is_err());
    let sm = SetMatrix::new(2, vec![Bitset::empty(4); 4]).unwrap();
    assert!(sm.is_skew(&g));
}

#[test]
fn block_partition_validation() {
    assert!(BlockPartition::new(4, vec![vec![0, 1], vec![2, 3]]).is_ok());
    assert!(BlockPartition::new(4, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
    assert!(BlockPartition::new(4, vec![vec![0, 1], vec![3]]).is_err());
    assert!(BlockPartition::new(4, vec![vec![0, 1, 2, 3], vec![]]).is_err());
    assert!(BlockPartition::new(2, vec![vec![0, 1, 2]]).is_err());
}
