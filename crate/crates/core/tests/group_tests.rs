mod common;

use haarcensus::bits::Bitset;
use haarcensus::error::Error;
use haarcensus::group::*;

fn set(g: &GroupTable, elems: &[usize]) -> ElementSet {
    Bitset::from_indices(g.order(), elems)
}

#[test]
fn cyclic_group_basics() {
    let c4 = make_group("C4").unwrap();
    assert_eq!(c4.order(), 4);
    assert_eq!(c4.inv(1), 3);
    assert_eq!(c4.mul(2, 3), 1);
    assert_eq!(c4.identity(), 0);
}

#[test]
fn q8_has_unique_involution() {
    // Brute-force count of x with x^2 = id over the constructed table.
    let q8 = make_group("Q8").unwrap();
    let involutions: Vec<usize> = (1..8).filter(|&x| q8.mul(x, x) == 0).collect();
    assert_eq!(involutions, vec![1]);
}

#[test]
fn elementary_abelian_exponent_two() {
    let g = make_group("C2^3").unwrap();
    assert_eq!(g.order(), 8);
    assert!((0..8).all(|x| g.mul(x, x) == 0));
}

#[test]
fn parser_rejects_bad_specs() {
    assert!(matches!(make_group("C 4"), Err(Error::GroupParse { .. })));
    assert!(make_group("C3^2").is_err());
    assert!(make_group("Q16").is_err());
    assert!(make_group("S8").is_err());
    assert!(make_group("").is_err());
    assert!(make_group("C4x").is_err());
    // S7 parses but its order 5040 exceeds the construction cap.
    assert!(matches!(make_group("S7"), Err(Error::OrderOverflow { .. })));
    assert!(matches!(make_group("C5000"), Err(Error::OrderOverflow { .. })));
}

#[test]
fn parser_handles_products_and_nesting() {
    assert_eq!(make_group("C2xC3").unwrap().order(), 6);
    assert_eq!(make_group("Q8xC2^2").unwrap().order(), 32);
    assert_eq!(make_group("Dic(C2xC4,4)").unwrap().order(), 16);
    assert_eq!(make_group("S4").unwrap().order(), 24);
    assert_eq!(make_group("A5").unwrap().order(), 60);
}

#[test]
fn dicyclic_of_c4_is_quaternion() {
    // Brute-force isomorphism test against the canonical table.
    let dic = generalized_dicyclic(&make_group("C4").unwrap(), 2).unwrap();
    assert_eq!(dic.order(), 8);
    assert!(common::brute_force_isomorphic(&dic, &make_group("Q8").unwrap()));
    // Unique non-identity square, exactly one involution.
    let squares: std::collections::HashSet<usize> =
        (1..8).map(|x| dic.mul(x, x)).filter(|&s| s != 0).collect();
    assert_eq!(squares.len(), 1);
    assert_eq!(dic.involution_count(), 1);
}

#[test]
fn dicyclic_of_c6_has_one_involution() {
    let dic = generalized_dicyclic(&make_group("C6").unwrap(), 3).unwrap();
    assert_eq!(dic.order(), 12);
    assert_eq!(dic.involution_count(), 1);
}

#[test]
fn dicyclic_rejects_bad_parameters() {
    let c4 = make_group("C4").unwrap();
    assert!(matches!(generalized_dicyclic(&c4, 1), Err(Error::NotInvolution { .. })));
    let c22 = make_group("C2^2").unwrap();
    assert!(matches!(generalized_dicyclic(&c22, 1), Err(Error::ExponentTooSmall)));
    let s3 = make_group("S3").unwrap();
    assert!(matches!(generalized_dicyclic(&s3, 1), Err(Error::NotAbelian)));
}

#[test]
fn dicyclic_relations_hold() {
    let a = make_group("C6").unwrap();
    let g = generalized_dicyclic(&a, 3).unwrap();
    let x = 6; // first element outside the base
    assert_eq!(g.mul(x, x), 3);
    for p in 0..6 {
        assert_eq!(g.mul(g.mul(g.inv(x), p), x), g.inv(p));
    }
}

#[test]
fn c_value_examples() {
    let c4 = make_group("C4").unwrap();
    // Elements with x^2 = id in C4: {0, 2}.
    assert_eq!(c_value(&c4, &c4.full_set()).unwrap(), 3);
    let c23 = make_group("C2^3").unwrap();
    assert_eq!(c_value(&c23, &c23.full_set()).unwrap(), 8);
    let q8 = make_group("Q8").unwrap();
    assert_eq!(c_value(&q8, &Bitset::empty(8)).unwrap(), 0);
    // Not inverse-closed: {1} in C4.
    assert!(matches!(c_value(&c4, &set(&c4, &[1])), Err(Error::NotInverseClosed)));
}

#[test]
fn c_value_bounds_on_random_inverse_closed_sets() {
    use haarcensus::census::{Connection, FamilyKind, FamilySpec};
    for spec in ["C4", "C6", "Q8", "S3", "D4"] {
        let g = make_group(spec).unwrap();
        let fam = FamilySpec::new(FamilyKind::InverseClosedSubsets, g.clone(), 1).unwrap();
        for k in 0..50 {
            let Connection::Set(s) = fam.sample(0xC0FFEE, k) else { panic!() };
            let c = c_value(&g, &s).unwrap();
            assert!(c <= s.count());
        }
    }
}

#[test]
fn double_cosets_of_transposition_subgroups_in_s3() {
    let s3 = make_group("S3").unwrap();
    // Elements 1 and 2 are transpositions (lex order of image vectors).
    let h = s3.subgroup_closure(&[1]);
    let k = s3.subgroup_closure(&[2]);
    let blocks = double_cosets(&s3, &h, &k).unwrap();
    let mut sizes: Vec<usize> = blocks.iter().map(|b| b.count()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 4]);
}

#[test]
fn double_cosets_trivial_and_full() {
    let c4 = make_group("C4").unwrap();
    let trivial = set(&c4, &[0]);
    assert_eq!(double_cosets(&c4, &trivial, &trivial).unwrap().len(), 4);
    assert_eq!(double_cosets(&c4, &c4.full_set(), &c4.full_set()).unwrap().len(), 1);
    assert!(double_cosets(&c4, &set(&c4, &[0, 1]), &trivial).is_err());
}

#[test]
fn double_cosets_partition_and_invariance() {
    for spec in ["S3", "D4", "Q8", "A4"] {
        let g = make_group(spec).unwrap();
        let subs = enumerate_subgroups(&g).unwrap();
        for h in &subs {
            for k in &subs {
                let blocks = double_cosets(&g, h, k).unwrap();
                // Disjoint cover.
                let mut seen = Bitset::empty(g.order());
                for b in &blocks {
                    assert_eq!(seen.intersection_count(b), 0);
                    seen.union_with(b);
                }
                assert_eq!(seen.count(), g.order());
                // H B K = B for each block.
                for b in &blocks {
                    for x in b.iter() {
                        for a in h.iter() {
                            for c in k.iter() {
                                assert!(b.contains(g.mul(g.mul(a, x), c)));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn subgroup_enumeration_examples() {
    // Brute-force closure search results.
    assert_eq!(enumerate_subgroups(&make_group("C4").unwrap()).unwrap().len(), 3);
    assert_eq!(enumerate_subgroups(&make_group("Q8").unwrap()).unwrap().len(), 6);
    assert_eq!(enumerate_subgroups(&make_group("C2").unwrap()).unwrap().len(), 2);
    let too_big = make_group("Q8xC2^4").unwrap();
    assert!(matches!(enumerate_subgroups(&too_big), Err(Error::CapExceeded { .. })));
}

#[test]
fn subgroup_count_bound_over_catalog() {
    for spec in catalog_specs() {
        let g = make_group(spec).unwrap();
        if g.order() < 2 || g.order() > 64 {
            continue;
        }
        let count = enumerate_subgroups(&g).unwrap().len() as f64;
        let l = (g.order() as f64).log2();
        assert!(count.log2() < l * l / 4.0 + 3.0, "subgroup count bound fails for {spec}");
    }
}

#[test]
fn automorphism_enumeration_examples() {
    assert_eq!(automorphisms_of_group(&make_group("C4").unwrap()).unwrap().len(), 2);
    assert_eq!(automorphisms_of_group(&make_group("S3").unwrap()).unwrap().len(), 6);
    assert_eq!(automorphisms_of_group(&make_group("C2").unwrap()).unwrap().len(), 1);
    assert!(matches!(
        automorphisms_of_group(&make_group("S4xC2").unwrap()),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn automorphism_lists_are_groups() {
    for spec in ["C4", "C6", "S3", "Q8", "C2^3", "D4"] {
        let g = make_group(spec).unwrap();
        let auts = automorphisms_of_group(&g).unwrap();
        // Every listed map is an automorphism.
        for phi in &auts {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(phi[g.mul(a, b)], g.mul(phi[a], phi[b]));
                }
            }
        }
        // Closed under composition.
        let index: std::collections::HashSet<&Vec<usize>> = auts.iter().collect();
        for phi in &auts {
            for psi in &auts {
                let comp: Vec<usize> = (0..g.order()).map(|x| psi[phi[x]]).collect();
                assert!(index.contains(&comp));
            }
        }
    }
}

#[test]
fn automorphism_count_bound_over_catalog() {
    for spec in catalog_specs() {
        let g = make_group(spec).unwrap();
        if g.order() < 2 || g.order() > 24 {
            continue;
        }
        let count = automorphisms_of_group(&g).unwrap().len() as f64;
        let l = (g.order() as f64).log2();
        assert!(count.log2() <= l * l + 1e-9, "automorphism bound fails for {spec}");
    }
}

#[test]
fn classification_examples() {
    let q8 = classify_group(&make_group("Q8").unwrap());
    assert!(q8.is_generalized_dicyclic);
    assert!(q8.is_q8_times_e2);
    assert!(!q8.is_abelian);

    let dic = classify_group(&make_group("Dic(C6,3)").unwrap());
    assert!(dic.is_generalized_dicyclic);
    assert!(!dic.is_q8_times_e2);

    let c23 = classify_group(&make_group("C2^3").unwrap());
    assert!(c23.is_elementary_abelian_2);
    assert!(!c23.is_abelian_exp_gt_2);
    assert_eq!(c23.exponent, 2);

    let c6 = classify_group(&make_group("C6").unwrap());
    assert!(c6.is_abelian_exp_gt_2);
    assert!(!c6.is_generalized_dicyclic);

    let q8c2 = classify_group(&make_group("Q8xC2").unwrap());
    assert!(q8c2.is_q8_times_e2);
    assert!(q8c2.is_generalized_dicyclic);
    let w = q8c2.q8e2_witness.unwrap();
    assert_eq!(w.e2_basis.len(), 1);

    // Dihedral groups are not generalized dicyclic (the outside elements are
    // involutions).
    let d6 = classify_group(&make_group("D6").unwrap());
    assert!(!d6.is_generalized_dicyclic);

    // Q8 x C2^l witnesses reproduce the quaternion relations.
    let g = make_group("Q8xC2^2").unwrap();
    let cls = classify_group(&g);
    let w = cls.q8e2_witness.unwrap();
    let (i, j) = (w.q8_embed[2], w.q8_embed[4]);
    assert_eq!(g.mul(i, i), g.mul(j, j));
    assert_eq!(g.mul(g.mul(g.inv(j), i), j), g.inv(i));
}

#[test]
fn classification_flags_consistent_across_catalog() {
    for spec in catalog_specs() {
        let g = make_group(spec).unwrap();
        let cls = classify_group(&g);
        if cls.is_q8_times_e2 {
            assert!(cls.is_generalized_dicyclic, "{spec}: q8e2 must imply dicyclic");
        }
        if cls.is_elementary_abelian_2 {
            assert!(cls.is_abelian && cls.exponent <= 2);
        }
        if cls.is_abelian_exp_gt_2 {
            assert!(cls.is_abelian && cls.exponent > 2);
        }
        assert_eq!(g.exponent() > 2 && g.is_abelian(), cls.is_abelian_exp_gt_2);
    }
}

#[test]
fn index2_subgroups_are_index2() {
    for spec in ["C4", "C6", "D4", "Q8", "S4", "C2^3", "Dic(C6,3)"] {
        let g = make_group(spec).unwrap();
        for h in index2_subgroups(&g) {
            assert_eq!(h.count() * 2, g.order(), "{spec}");
            assert!(g.is_subgroup(&h), "{spec}");
        }
    }
    // A4 has no index-2 subgroup.
    assert!(index2_subgroups(&make_group("A4").unwrap()).is_empty());
}

#[test]
fn catalog_constructs_cleanly() {
    for spec in catalog_specs() {
        let g = make_group(spec).unwrap();
        assert!(g.order() >= 1 && g.order() <= 64, "{spec}");
    }
}

#[test]
fn larger_group_randomized_validation_path() {
    // S6 (order 720) goes through the randomized associativity check.
    let s6 = make_group("S6").unwrap();
    assert_eq!(s6.order(), 720);
    assert_eq!(s6.element_order(1), 2);
}
