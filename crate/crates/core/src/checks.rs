//! Brute-force verification of finitely-checkable counting identities and
//! bounds, each addressable by a stable id. Every check recomputes both sides
//! from scratch (subset scans, element enumerations, graph-equality
//! partitions) rather than reusing the formula under test, and a failing
//! check carries a re-checkable counterexample payload.

use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::graph::{haar_graph, odd_quotient, right_regular_action, BlockPartition, ColoredDigraph};
use crate::group::{
    automorphisms_of_group, c_value, classify_group, double_cosets, enumerate_subgroups,
    index2_subgroups, make_group, ElementSet, GroupTable,
};
use crate::perm::Permutation;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::HashMap;

pub const LEMMA_IDS: &[&str] = &[
    "L2.2", "L2.4bc", "L2.5", "L2.6", "L2.7", "L2.8", "L2.9", "L5.1", "L7.2", "L7.5", "L7.8",
];

#[derive(Serialize, Clone, Debug)]
pub struct CheckResult {
    pub lemma: String,
    pub params: Value,
    pub pass: bool,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl CheckResult {
    fn pass(lemma: &str, params: Value, details: Value) -> Self {
        CheckResult { lemma: lemma.into(), params, pass: true, details, counterexample: None }
    }

    fn fail(lemma: &str, params: Value, details: Value, counterexample: Value) -> Self {
        CheckResult {
            lemma: lemma.into(),
            params,
            pass: false,
            details,
            counterexample: Some(counterexample),
        }
    }
}

/// Optional parameters forwarded from the command line.
#[derive(Default, Clone, Debug)]
pub struct CheckRequest {
    pub group: Option<String>,
    pub set: Option<String>,
    pub core: Option<String>,
    pub k: Option<u32>,
}

// ---------------------------------------------------------------------------
// L2.2: inverse-closed subsets of an inverse-closed S number 2^c(S)
// ---------------------------------------------------------------------------

pub fn check_inverse_closed_count(g: &GroupTable, s: &ElementSet) -> Result<CheckResult> {
    const MAX: usize = 20;
    if s.count() > MAX {
        return Err(Error::CapExceeded { what: "inverse-closed subset scan", max: MAX, got: s.count() });
    }
    let c = c_value(g, s)?;
    let members: Vec<usize> = s.iter().collect();
    let mut count: u64 = 0;
    for mask in 0u32..(1 << members.len()) {
        let subset: Vec<usize> =
            members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        let set = Bitset::from_indices(g.order(), &subset);
        if g.is_inverse_closed(&set) {
            count += 1;
        }
    }
    let expected = 1u64 << c;
    let params = json!({"group": g.name(), "set": s.to_hex()});
    let details = json!({"c": c, "expected": expected, "counted": count});
    Ok(if count == expected {
        CheckResult::pass("L2.2", params, details)
    } else {
        CheckResult::fail("L2.2", params, details.clone(), details)
    })
}

// ---------------------------------------------------------------------------
// L2.4bc: |Aut(G)| <= 2^(log2^2 n) and #subgroups < 2^((log2^2 n)/4 + 3)
// ---------------------------------------------------------------------------

pub fn check_group_size_bounds(g: &GroupTable) -> Result<CheckResult> {
    let n = g.order();
    let auts = automorphisms_of_group(g)?.len() as f64;
    let subs = enumerate_subgroups(g)?.len() as f64;
    let l = (n as f64).log2();
    let aut_ok = auts.log2() <= l * l + 1e-9;
    let sub_ok = subs.log2() < l * l / 4.0 + 3.0;
    let params = json!({"group": g.name(), "order": n});
    let details = json!({
        "automorphisms": auts as u64,
        "aut_bound_log2": l * l,
        "subgroups": subs as u64,
        "subgroup_bound_log2": l * l / 4.0 + 3.0,
    });
    Ok(if aut_ok && sub_ok {
        CheckResult::pass("L2.4bc", params, details)
    } else {
        CheckResult::fail("L2.4bc", params, details.clone(), details)
    })
}

// ---------------------------------------------------------------------------
// L2.5: equally many odd- and even-sized subsets of a non-empty set
// ---------------------------------------------------------------------------

pub fn check_parity_counts(k: u32) -> Result<CheckResult> {
    if k == 0 {
        return Err(Error::Domain("the set must be non-empty".into()));
    }
    if k > 20 {
        return Err(Error::CapExceeded { what: "subset parity scan", max: 20, got: k as usize });
    }
    let mut odd = 0u64;
    let mut even = 0u64;
    for mask in 0u64..(1 << k) {
        if mask.count_ones() % 2 == 1 {
            odd += 1;
        } else {
            even += 1;
        }
    }
    let params = json!({"k": k});
    let details = json!({"odd": odd, "even": even, "expected": 1u64 << (k - 1)});
    Ok(if odd == even && odd == 1u64 << (k - 1) {
        CheckResult::pass("L2.5", params, details)
    } else {
        CheckResult::fail("L2.5", params, details.clone(), details)
    })
}

// ---------------------------------------------------------------------------
// L2.6: max binomial coefficient C(k, j) <= 2^k / sqrt(k)
// ---------------------------------------------------------------------------

pub fn check_binomial_bound(k: u32) -> Result<CheckResult> {
    if !(1..=60).contains(&k) {
        return Err(Error::CapExceeded { what: "binomial bound", max: 60, got: k as usize });
    }
    // Pascal row in exact arithmetic.
    let mut row: Vec<u128> = vec![1];
    for _ in 0..k {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    let max = *row.iter().max().unwrap();
    // max <= 2^k / sqrt(k)  <=>  max^2 * k <= 2^(2k), exactly in u128.
    let ok = max * max * (k as u128) <= 1u128 << (2 * k);
    let params = json!({"k": k});
    let details = json!({"max_binomial": max.to_string(), "bound_check": "max^2 * k <= 2^(2k)"});
    Ok(if ok {
        CheckResult::pass("L2.6", params, details)
    } else {
        CheckResult::fail("L2.6", params, details.clone(), details)
    })
}

// ---------------------------------------------------------------------------
// L2.7: inversion and involution-density bounds, plus the coset consequence
// ---------------------------------------------------------------------------

pub fn check_inversion_bounds(g: &GroupTable) -> Result<CheckResult> {
    let n = g.order();
    if n > 24 {
        return Err(Error::CapExceeded { what: "inversion bound check", max: 24, got: n });
    }
    let params = json!({"group": g.name(), "order": n});
    let mut details = serde_json::Map::new();

    // No automorphism of a nonabelian group inverts more than 3/4 of it.
    if !g.is_abelian() {
        let mut max_inverted = 0usize;
        let mut witness = None;
        for phi in automorphisms_of_group(g)? {
            let inverted = (0..n).filter(|&x| phi[x] == g.inv(x)).count();
            if inverted > max_inverted {
                max_inverted = inverted;
                witness = Some(phi.clone());
            }
        }
        details.insert("max_inverted".into(), json!(max_inverted));
        if 4 * max_inverted > 3 * n {
            return Ok(CheckResult::fail(
                "L2.7",
                params,
                Value::Object(details),
                json!({"automorphism_images": witness, "inverted": max_inverted}),
            ));
        }
    }

    // More than 3/4 involutions forces an elementary abelian 2-group.
    let involutions = g.involution_count();
    details.insert("involutions".into(), json!(involutions));
    if 4 * involutions > 3 * n && !classify_group(g).is_elementary_abelian_2 {
        return Ok(CheckResult::fail(
            "L2.7",
            params,
            Value::Object(details.clone()),
            json!({"involutions": involutions, "order": n}),
        ));
    }

    // Coset consequence: for nonabelian index-2 H < G, the non-trivial coset
    // carries at most 3|H|/4 involutions.
    let mut coset_cases = Vec::new();
    for h in index2_subgroups(g) {
        let h_abelian = h.iter().all(|p| h.iter().all(|q| g.mul(p, q) == g.mul(q, p)));
        if h_abelian {
            continue;
        }
        let coset_involutions =
            (0..n).filter(|&x| !h.contains(x) && g.mul(x, x) == 0).count();
        coset_cases.push(json!({"subgroup": h.to_hex(), "coset_involutions": coset_involutions}));
        if 4 * coset_involutions > 3 * (n / 2) {
            details.insert("coset_cases".into(), json!(coset_cases));
            return Ok(CheckResult::fail(
                "L2.7",
                params,
                Value::Object(details.clone()),
                json!({"subgroup": h.to_hex(), "coset_involutions": coset_involutions}),
            ));
        }
    }
    details.insert("coset_cases".into(), json!(coset_cases));
    Ok(CheckResult::pass("L2.7", params, Value::Object(details)))
}

// ---------------------------------------------------------------------------
// L2.8: |H\G/K| <= (3/4) max(|G:H|, |G:K|) unless H = K is normal
// ---------------------------------------------------------------------------

pub fn check_double_coset_bound(g: &GroupTable, h: &ElementSet, k: &ElementSet) -> Result<CheckResult> {
    let blocks = double_cosets(g, h, k)?;
    let n = g.order();
    let idx_h = n / h.count();
    let idx_k = n / k.count();
    let count = blocks.len();
    let bound_ok = 4 * count <= 3 * idx_h.max(idx_k);
    let normal_branch = h == k && g.is_normal(h);
    let params = json!({"group": g.name(), "H": h.to_hex(), "K": k.to_hex()});
    let details = json!({
        "double_cosets": count,
        "index_H": idx_h,
        "index_K": idx_k,
        "normal_branch": normal_branch,
    });
    Ok(if bound_ok || normal_branch {
        CheckResult::pass("L2.8", params, details)
    } else {
        CheckResult::fail("L2.8", params, details.clone(), details)
    })
}

/// Runs L2.8 over every pair of subgroups of G.
pub fn check_double_coset_bound_all_pairs(g: &GroupTable) -> Result<CheckResult> {
    let subs = enumerate_subgroups(g)?;
    let mut checked = 0usize;
    for h in &subs {
        for k in &subs {
            let r = check_double_coset_bound(g, h, k)?;
            if !r.pass {
                return Ok(r);
            }
            checked += 1;
        }
    }
    Ok(CheckResult::pass(
        "L2.8",
        json!({"group": g.name(), "mode": "all subgroup pairs"}),
        json!({"pairs_checked": checked}),
    ))
}

// ---------------------------------------------------------------------------
// L2.9: invariant bipartite graphs number 2^kappa; kappa <= (3/4)|U| when
// the parts are equal and the action is not semiregular
// ---------------------------------------------------------------------------

fn perm_closure(gens: &[Permutation], degree: usize, cap: usize) -> Result<Vec<Permutation>> {
    let mut elems = vec![Permutation::identity(degree)];
    let mut seen: std::collections::HashSet<Permutation> = elems.iter().cloned().collect();
    let mut i = 0;
    while i < elems.len() {
        let e = elems[i].clone();
        i += 1;
        for g in gens {
            let p = e.compose(g);
            if seen.insert(p.clone()) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { what: "permutation closure", max: cap, got: cap + 1 });
                }
                elems.push(p);
            }
        }
    }
    Ok(elems)
}

pub fn check_bipartite_double_coset(gens: &[Permutation], degree: usize) -> Result<CheckResult> {
    let group = crate::perm::PermGroup::from_generators(gens.to_vec(), degree)?;
    let orbits = group.orbits();
    if orbits.len() != 2 {
        return Err(Error::Domain(format!("need exactly two orbits, got {}", orbits.len())));
    }
    let u_part = orbits[0].clone();
    let w_part = orbits[1].clone();
    if u_part.len() > 5 || w_part.len() > 5 {
        return Err(Error::CapExceeded {
            what: "bipartite graph scan",
            max: 5,
            got: u_part.len().max(w_part.len()),
        });
    }
    let elements = perm_closure(gens, degree, 50_000)?;

    // kappa as a double-coset count of the two point stabilizers.
    let u = u_part[0];
    let w = w_part[0];
    let stab_u: Vec<&Permutation> = elements.iter().filter(|p| p.apply(u) == u).collect();
    let stab_w: Vec<&Permutation> = elements.iter().filter(|p| p.apply(w) == w).collect();
    let index_of: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut coset_of: Vec<Option<usize>> = vec![None; elements.len()];
    let mut kappa = 0usize;
    for i in 0..elements.len() {
        if coset_of[i].is_some() {
            continue;
        }
        for a in &stab_w {
            let ax = a.compose(&elements[i]);
            for b in &stab_u {
                coset_of[index_of[&ax.compose(b)]] = Some(kappa);
            }
        }
        kappa += 1;
    }

    // Independent count of invariant bipartite graphs by scanning all of them.
    let pairs: Vec<(usize, usize)> =
        u_part.iter().flat_map(|&a| w_part.iter().map(move |&b| (a, b))).collect();
    let pair_index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    // Each generator induces a permutation of the pair slots.
    let pair_perms: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| pairs.iter().map(|&(a, b)| pair_index[&(g.apply(a), g.apply(b))]).collect())
        .collect();
    let mut invariant: u64 = 0;
    let nbits = pairs.len();
    'mask: for mask in 0u64..(1u64 << nbits) {
        for pp in &pair_perms {
            let mut mapped = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                mapped |= 1 << pp[i];
            }
            if mapped != mask {
                continue 'mask;
            }
        }
        invariant += 1;
    }

    let count_ok = invariant == 1u64 << kappa;
    let semiregular = group.is_semiregular();
    let bound_applies = u_part.len() == w_part.len() && !semiregular;
    let bound_ok = !bound_applies || 4 * kappa <= 3 * u_part.len();
    let params = json!({
        "generators": gens.iter().map(|g| g.cycle_notation()).collect::<Vec<_>>(),
        "degree": degree,
    });
    let details = json!({
        "kappa": kappa,
        "invariant_bipartite_graphs": invariant,
        "group_order": group.order().to_string(),
        "semiregular": semiregular,
        "three_quarters_bound_applies": bound_applies,
    });
    Ok(if count_ok && bound_ok {
        CheckResult::pass("L2.9", params, details)
    } else {
        CheckResult::fail("L2.9", params, details.clone(), details)
    })
}

// ---------------------------------------------------------------------------
// L5.1: fibers of the odd quotient over a normal core have size 2^(n - n/|C|)
// ---------------------------------------------------------------------------

pub fn check_odd_quotient_fibers(g: &GroupTable, core: &ElementSet) -> Result<CheckResult> {
    let n = g.order();
    if n > 16 {
        return Err(Error::CapExceeded { what: "odd-quotient fiber scan", max: 16, got: n });
    }
    if !g.is_subgroup(core) || !g.is_normal(core) {
        return Err(Error::NotSubgroup);
    }
    if core.count() < 2 {
        return Err(Error::Domain("the core must be a nontrivial normal subgroup".into()));
    }
    // Blocks: core orbits (cosets) on each Haar part, ordered by minimal vertex.
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for part in 0..2 {
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut block: Vec<usize> = core.iter().map(|c| g.mul(c, x)).collect();
            for &y in &block {
                seen[y] = true;
            }
            block.sort_unstable();
            blocks.push(block.iter().map(|&y| part * n + y).collect());
        }
    }
    let partition = BlockPartition::new(2 * n, blocks)?;

    let mut fibers: HashMap<Vec<u64>, u64> = HashMap::new();
    for mask in 0u64..(1u64 << n) {
        let s = subset_from_mask(n, mask);
        let quotient = odd_quotient(&haar_graph(g, &s), &partition)?;
        *fibers.entry(quotient_key(&quotient)).or_insert(0) += 1;
    }
    let expected = 1u64 << (n - n / core.count());
    let bad = fibers.iter().find(|(_, &c)| c != expected);
    let params = json!({"group": g.name(), "core": core.to_hex()});
    let details = json!({
        "fibers": fibers.len(),
        "expected_fiber_size": expected,
        "subsets": 1u64 << n,
    });
    Ok(match bad {
        None => CheckResult::pass("L5.1", params, details),
        Some((_, &c)) => CheckResult::fail(
            "L5.1",
            params,
            details.clone(),
            json!({"fiber_size": c, "expected": expected}),
        ),
    })
}

fn subset_from_mask(n: usize, mask: u64) -> ElementSet {
    let mut s = Bitset::empty(n);
    for x in 0..n {
        if mask >> x & 1 == 1 {
            s.insert(x);
        }
    }
    s
}

fn quotient_key(d: &ColoredDigraph) -> Vec<u64> {
    let mut key = Vec::new();
    for u in 0..d.vertex_count() {
        let mut row = 0u64;
        for w in d.row(u).iter() {
            row |= 1 << w;
        }
        key.push(row);
    }
    key
}

// ---------------------------------------------------------------------------
// L7.2 / L7.5 / L7.8: orbit-count bounds for cyclic subgroups of the
// class-specific overgroup M(G) acting on G
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitBoundClass {
    /// Abelian of exponent > 2; M(G) adjoins inversion; bound 5|G|/6.
    AbelianExpGt2,
    /// Q8 x C2^l; M(G) adjoins the three unit-flipping involutions; bound 7|G|/8.
    Q8TimesE2,
    /// Generalized dicyclic, not Q8 x C2^l; M(G) adjoins the half-inverting
    /// involution; bound 3|G|/4.
    DicyclicOther,
}

impl OrbitBoundClass {
    pub fn lemma_id(&self) -> &'static str {
        match self {
            OrbitBoundClass::AbelianExpGt2 => "L7.2",
            OrbitBoundClass::Q8TimesE2 => "L7.5",
            OrbitBoundClass::DicyclicOther => "L7.8",
        }
    }

    fn bound(&self) -> (usize, usize) {
        match self {
            OrbitBoundClass::AbelianExpGt2 => (5, 6),
            OrbitBoundClass::Q8TimesE2 => (7, 8),
            OrbitBoundClass::DicyclicOther => (3, 4),
        }
    }
}

pub fn check_orbit_bound(g: &GroupTable, class: OrbitBoundClass) -> Result<CheckResult> {
    let n = g.order();
    if n > 48 {
        return Err(Error::CapExceeded { what: "orbit bound check", max: 48, got: n });
    }
    let info = classify_group(g);
    let mut gens = right_regular_action(g, 1);
    match class {
        OrbitBoundClass::AbelianExpGt2 => {
            if !info.is_abelian_exp_gt_2 {
                return Err(Error::ClassMismatch("expected abelian of exponent > 2".into()));
            }
            let inv_images: Vec<usize> = (0..n).map(|x| g.inv(x)).collect();
            gens.push(Permutation::from_images(inv_images).unwrap());
        }
        OrbitBoundClass::Q8TimesE2 => {
            let w = info
                .q8e2_witness
                .as_ref()
                .ok_or_else(|| Error::ClassMismatch("expected Q8 x C2^l".into()))?;
            let e_members: Vec<usize> = g.subgroup_closure(&w.e2_basis).iter().collect();
            // One involution per quaternion unit: swap u*e with -u*e for all e.
            for unit in [2usize, 4, 6] {
                let mut images: Vec<usize> = (0..n).collect();
                for &e in &e_members {
                    let pos = g.mul(w.q8_embed[unit], e);
                    let neg = g.mul(w.q8_embed[unit + 1], e);
                    images[pos] = neg;
                    images[neg] = pos;
                }
                gens.push(Permutation::from_images(images).unwrap());
            }
        }
        OrbitBoundClass::DicyclicOther => {
            if info.is_q8_times_e2 {
                return Err(Error::ClassMismatch("group is Q8 x C2^l; use the Q8 class".into()));
            }
            let w = info
                .dicyclic_witness
                .as_ref()
                .ok_or_else(|| Error::ClassMismatch("expected a generalized dicyclic group".into()))?;
            let images: Vec<usize> =
                (0..n).map(|x| if w.base.contains(x) { x } else { g.inv(x) }).collect();
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    let elements = perm_closure(&gens, n, 16 * n.max(8))?;
    let (num, den) = class.bound();
    let mut max_orbits = 0usize;
    let mut witness = None;
    for s in &elements {
        if s.is_identity() {
            continue;
        }
        let orbits = s.cycle_count();
        if orbits > max_orbits {
            max_orbits = orbits;
            witness = Some(s.cycle_notation());
        }
        if den * orbits > num * n {
            return Ok(CheckResult::fail(
                class.lemma_id(),
                json!({"group": g.name()}),
                json!({"m_group_order": elements.len(), "orbits": orbits, "bound": format!("{num}|G|/{den}")}),
                json!({"element": s.cycle_notation(), "orbits": orbits}),
            ));
        }
    }
    // For Q8 x C2^l the adjoined involutions give index exactly 8.
    if class == OrbitBoundClass::Q8TimesE2 && elements.len() != 8 * n {
        return Ok(CheckResult::fail(
            class.lemma_id(),
            json!({"group": g.name()}),
            json!({"m_group_order": elements.len(), "expected": 8 * n}),
            json!({"m_group_order": elements.len()}),
        ));
    }
    Ok(CheckResult::pass(
        class.lemma_id(),
        json!({"group": g.name(), "order": n}),
        json!({
            "m_group_order": elements.len(),
            "max_orbits": max_orbits,
            "max_orbit_witness": witness,
            "bound": format!("{num}|G|/{den}"),
        }),
    ))
}

// ---------------------------------------------------------------------------
// Dispatch and default grids
// ---------------------------------------------------------------------------

fn parse_group(req: &CheckRequest) -> Result<Option<GroupTable>> {
    req.group.as_deref().map(make_group).transpose()
}

fn parse_set(g: &GroupTable, text: &str) -> Result<ElementSet> {
    Bitset::from_hex(g.order(), text).map_err(Error::Invalid)
}

fn default_l29_instances() -> Vec<(Vec<Permutation>, usize)> {
    let c = |d: usize, cy: &[&[usize]]| Permutation::from_cycles(d, cy).unwrap();
    vec![
        // Diagonal C3 on 3+3.
        (vec![c(6, &[&[0, 1, 2], &[3, 4, 5]])], 6),
        // Trivial group on 1+1.
        (vec![], 2),
        // Diagonal S3 on 3+3 (non-semiregular, equal parts).
        (vec![c(6, &[&[0, 1], &[3, 4]]), c(6, &[&[0, 1, 2], &[3, 4, 5]])], 6),
        // Diagonal C4 on 4+4.
        (vec![c(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]])], 8),
        // Semiregular C2 x C2 on 4+4.
        (
            vec![
                c(8, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]),
                c(8, &[&[0, 2], &[1, 3], &[4, 6], &[5, 7]]),
            ],
            8,
        ),
        // Diagonal D4 on 4+4 (non-semiregular, equal parts).
        (
            vec![c(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]), c(8, &[&[1, 3], &[5, 7]])],
            8,
        ),
    ]
}

fn l51_cores(g: &GroupTable) -> Result<Vec<ElementSet>> {
    // Every nontrivial normal subgroup for small groups; for larger orders the
    // 2^n subset scan makes per-core cost dominate, so take the smallest
    // nontrivial normal subgroup plus the full group.
    let mut normals: Vec<ElementSet> = enumerate_subgroups(g)?
        .into_iter()
        .filter(|h| h.count() >= 2 && g.is_normal(h))
        .collect();
    if g.order() > 8 {
        normals.truncate(1);
        normals.push(g.full_set());
        normals.dedup();
    }
    Ok(normals)
}

pub fn run_lemma(id: &str, req: &CheckRequest) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    match id {
        "L2.2" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => ["C4", "C6", "C8", "C2^3", "Q8", "S3", "D4", "C3xC3"]
                    .iter()
                    .map(|s| make_group(s))
                    .collect::<Result<Vec<_>>>()?,
            };
            for g in &groups {
                let sets = match &req.set {
                    Some(text) => vec![parse_set(g, text)?],
                    None => {
                        let mut sets = vec![g.full_set(), Bitset::empty(g.order())];
                        if let Some(x) = (1..g.order()).find(|&x| g.element_order(x) > 2) {
                            let cyclic = g.subgroup_closure(&[x]);
                            if !sets.contains(&cyclic) {
                                sets.push(cyclic);
                            }
                        }
                        sets
                    }
                };
                for s in sets {
                    out.push(check_inverse_closed_count(g, &s)?);
                }
            }
        }
        "L2.4bc" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => default_small_groups(24)?,
            };
            for g in &groups {
                out.push(check_group_size_bounds(g)?);
            }
        }
        "L2.5" => match req.k {
            Some(k) => out.push(check_parity_counts(k)?),
            None => {
                for k in 1..=12 {
                    out.push(check_parity_counts(k)?);
                }
            }
        },
        "L2.6" => match req.k {
            Some(k) => out.push(check_binomial_bound(k)?),
            None => {
                for k in 1..=60 {
                    out.push(check_binomial_bound(k)?);
                }
            }
        },
        "L2.7" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => default_small_groups(24)?,
            };
            for g in &groups {
                out.push(check_inversion_bounds(g)?);
            }
        }
        "L2.8" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => ["S3", "C4", "Q8", "D4", "D6", "A4"]
                    .iter()
                    .map(|s| make_group(s))
                    .collect::<Result<Vec<_>>>()?,
            };
            for g in &groups {
                out.push(check_double_coset_bound_all_pairs(g)?);
            }
        }
        "L2.9" => {
            for (gens, degree) in default_l29_instances() {
                out.push(check_bipartite_double_coset(&gens, degree)?);
            }
        }
        "L5.1" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => ["C2", "C4", "C6", "C8", "C2^2", "C2^3", "C4xC2", "S3", "Q8", "D4", "C2^4"]
                    .iter()
                    .map(|s| make_group(s))
                    .collect::<Result<Vec<_>>>()?,
            };
            for g in &groups {
                let cores = match &req.core {
                    Some(text) => vec![parse_set(g, text)?],
                    None => l51_cores(g)?,
                };
                for core in cores {
                    out.push(check_odd_quotient_fibers(g, &core)?);
                }
            }
        }
        "L7.2" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => ["C4", "C6", "C8", "C9", "C12", "C16", "C4xC2", "C3xC3", "C4xC4", "C6xC2"]
                    .iter()
                    .map(|s| make_group(s))
                    .collect::<Result<Vec<_>>>()?,
            };
            for g in &groups {
                out.push(check_orbit_bound(g, OrbitBoundClass::AbelianExpGt2)?);
            }
        }
        "L7.5" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => ["Q8", "Q8xC2", "Q8xC2xC2"]
                    .iter()
                    .map(|s| make_group(s))
                    .collect::<Result<Vec<_>>>()?,
            };
            for g in &groups {
                out.push(check_orbit_bound(g, OrbitBoundClass::Q8TimesE2)?);
            }
        }
        "L7.8" => {
            let groups = match parse_group(req)? {
                Some(g) => vec![g],
                None => ["Dic(C6,3)", "Dic(C8,4)", "Dic(C12,6)"]
                    .iter()
                    .map(|s| make_group(s))
                    .collect::<Result<Vec<_>>>()?,
            };
            for g in &groups {
                out.push(check_orbit_bound(g, OrbitBoundClass::DicyclicOther)?);
            }
        }
        other => return Err(Error::Invalid(format!("unknown lemma id {other:?}"))),
    }
    Ok(out)
}

fn default_small_groups(max_order: usize) -> Result<Vec<GroupTable>> {
    let mut out = Vec::new();
    for spec in crate::group::catalog_specs() {
        let g = make_group(spec)?;
        if g.order() <= max_order && g.order() >= 2 {
            out.push(g);
        }
    }
    Ok(out)
}

/// Runs every lemma on its default grid.
pub fn run_all() -> Result<Vec<CheckResult>> {
    let req = CheckRequest::default();
    let mut out = Vec::new();
    for id in LEMMA_IDS {
        out.extend(run_lemma(id, &req)?);
    }
    Ok(out)
}
