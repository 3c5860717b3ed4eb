//! Concrete finite groups as indexed elements with full multiplication tables,
//! plus the group-theoretic primitives built on them: subsets, subgroups,
//! double cosets, group automorphisms, and structural classification.

use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::rng;
use std::collections::HashMap;

/// Subsets of a group's elements, one bit per element index.
pub type ElementSet = Bitset;

/// Largest group order `make_group` will construct.
pub const MAX_ORDER: usize = 4096;

/// Order cap for `enumerate_subgroups` (closure-lattice search).
pub const SUBGROUP_ENUM_MAX: usize = 64;

/// Order cap for `automorphisms_of_group` (generator-image search).
pub const AUT_ENUM_MAX: usize = 24;

/// A finite group of order `n` with elements identified with `0..n`.
/// Element 0 is always the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<usize>, // row-major n*n
    inv: Vec<usize>,
    name: String,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable({}, n={})", self.name, self.n)
    }
}

impl GroupTable {
    /// Builds a group from a raw multiplication table and verifies the group
    /// axioms. Associativity is checked on all triples for n <= 64 and on
    /// 10*n^2 deterministic pseudorandom triples beyond that.
    pub fn from_table(name: impl Into<String>, n: usize, mul: Vec<usize>) -> Result<Self> {
        let name = name.into();
        if n == 0 || mul.len() != n * n {
            return Err(Error::Invalid(format!(
                "bad table size for {name}: n={n}, entries={}",
                mul.len()
            )));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderOverflow { got: n, max: MAX_ORDER });
        }
        for &e in &mul {
            if e >= n {
                return Err(Error::Invalid(format!("table entry {e} out of range in {name}")));
            }
        }
        // Latin square.
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = mul[a * n + b];
                let c = mul[b * n + a];
                if row[r] || col[c] {
                    return Err(Error::Invalid(format!("table of {name} is not a Latin square")));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        // Identity at index 0.
        for a in 0..n {
            if mul[a] != a || mul[a * n] != a {
                return Err(Error::Invalid(format!("element 0 is not the identity of {name}")));
            }
        }
        // Inverses.
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX || mul[inv[a] * n + a] != 0 {
                return Err(Error::Invalid(format!("element {a} of {name} has no two-sided inverse")));
            }
        }
        for a in 0..n {
            if inv[inv[a]] != a {
                return Err(Error::Invalid(format!("inverse table of {name} is not an involution")));
            }
        }
        // Associativity.
        let assoc = |a: usize, b: usize, c: usize| {
            mul[mul[a * n + b] * n + c] == mul[a * n + mul[b * n + c]]
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::Invalid(format!("table of {name} is not associative")));
                        }
                    }
                }
            }
        } else {
            let trials = 10 * n as u64 * n as u64;
            for t in 0..trials {
                let w = rng::mix3(0xA55A_C0DE, t, 0);
                let a = (w % n as u64) as usize;
                let b = ((w >> 21) % n as u64) as usize;
                let c = ((w >> 42) % n as u64) as usize;
                if !assoc(a, b, c) {
                    return Err(Error::Invalid(format!("table of {name} is not associative")));
                }
            }
        }
        Ok(GroupTable { n, mul, inv, name })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        let mut e: u64 = 1;
        for x in 0..self.n {
            let o = self.element_order(x) as u64;
            e = lcm(e, o);
        }
        e
    }

    /// Elements of order at most 2 (identity included).
    pub fn involution_closure(&self) -> ElementSet {
        let mut s = Bitset::empty(self.n);
        for x in 0..self.n {
            if self.mul(x, x) == 0 {
                s.insert(x);
            }
        }
        s
    }

    /// Count of elements of order exactly 2.
    pub fn involution_count(&self) -> usize {
        self.involution_closure().count() - 1
    }

    pub fn is_inverse_closed(&self, s: &ElementSet) -> bool {
        s.iter().all(|x| s.contains(self.inv(x)))
    }

    /// The full set of elements as a bitset.
    pub fn full_set(&self) -> ElementSet {
        Bitset::full(self.n)
    }

    /// Closure of a set of elements under multiplication (hence a subgroup).
    pub fn subgroup_closure(&self, generators: &[usize]) -> ElementSet {
        let mut members = Bitset::empty(self.n);
        members.insert(0);
        let mut elems = vec![0usize];
        let mut i = 0;
        let mut gens: Vec<usize> = Vec::new();
        for &g in generators {
            if !members.contains(g) {
                members.insert(g);
                elems.push(g);
            }
            gens.push(g);
        }
        while i < elems.len() {
            let e = elems[i];
            i += 1;
            for &g in &gens {
                for p in [self.mul(e, g), self.mul(g, e)] {
                    if !members.contains(p) {
                        members.insert(p);
                        elems.push(p);
                    }
                }
            }
        }
        members
    }

    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        for a in s.iter() {
            if !s.contains(self.inv(a)) {
                return false;
            }
            for b in s.iter() {
                if !s.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// A deterministic small generating sequence: scan elements in index
    /// order, keeping those that enlarge the generated subgroup.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subgroup_closure(&[]);
        for x in 1..self.n {
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup_closure(&gens);
                if span.count() == self.n {
                    break;
                }
            }
        }
        gens
    }

    /// Elements of the center.
    pub fn center(&self) -> ElementSet {
        let mut z = Bitset::empty(self.n);
        for a in 0..self.n {
            if (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)) {
                z.insert(a);
            }
        }
        z
    }

    pub fn is_normal(&self, h: &ElementSet) -> bool {
        for g in 0..self.n {
            for x in h.iter() {
                if !h.contains(self.mul(self.mul(self.inv(g), x), g)) {
                    return false;
                }
            }
        }
        true
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group order must be positive".into()));
    }
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = (a + b) % n;
        }
    }
    GroupTable::from_table(format!("C{n}"), n, mul)
}

pub fn elementary_abelian_2(l: u32) -> Result<GroupTable> {
    let n = 1usize
        .checked_shl(l)
        .filter(|&n| n <= MAX_ORDER)
        .ok_or(Error::OrderOverflow { got: usize::MAX, max: MAX_ORDER })?;
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = a ^ b;
        }
    }
    GroupTable::from_table(format!("C2^{l}"), n, mul)
}

/// Dihedral group of order 2n: rotations at indices 0..n, reflections at n..2n.
pub fn dihedral(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Invalid("dihedral parameter must be positive".into()));
    }
    let ord = 2 * n;
    let mut mul = vec![0; ord * ord];
    // Element f*n + i stands for r^i s^f with s r s = r^{-1}.
    for i in 0..n {
        for f in 0..2 {
            for j in 0..n {
                for g in 0..2 {
                    let k = if f == 0 { (i + j) % n } else { (i + n - j % n) % n };
                    let h = (f + g) % 2;
                    mul[(f * n + i) * ord + (g * n + j)] = h * n + k;
                }
            }
        }
    }
    GroupTable::from_table(format!("D{n}"), ord, mul)
}

/// Quaternion group with elements 1, -1, i, -i, j, -j, k, -k at indices 0..8.
pub fn quaternion8() -> Result<GroupTable> {
    // (unit index, sign) with units 0=1, 1=i, 2=j, 3=k.
    let unit_mul = |a: usize, b: usize| -> (usize, i32) {
        match (a, b) {
            (0, x) => (x, 1),
            (x, 0) => (x, 1),
            (1, 1) | (2, 2) | (3, 3) => (0, -1),
            (1, 2) => (3, 1),
            (2, 1) => (3, -1),
            (2, 3) => (1, 1),
            (3, 2) => (1, -1),
            (3, 1) => (2, 1),
            (1, 3) => (2, -1),
            _ => unreachable!(),
        }
    };
    let idx = |unit: usize, sign: i32| -> usize { 2 * unit + if sign < 0 { 1 } else { 0 } };
    let n = 8;
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let (ua, sa) = (a / 2, if a % 2 == 1 { -1 } else { 1 });
            let (ub, sb) = (b / 2, if b % 2 == 1 { -1 } else { 1 });
            let (u, s) = unit_mul(ua, ub);
            mul[a * n + b] = idx(u, s * sa * sb);
        }
    }
    GroupTable::from_table("Q8", n, mul)
}

fn permutations_lex(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    // Next lexicographic permutation, in place.
    loop {
        let mut i = n.wrapping_sub(2);
        while i != usize::MAX && cur[i] >= cur[i + 1] {
            i = i.wrapping_sub(1);
        }
        if i == usize::MAX {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i] {
            j -= 1;
        }
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

fn perm_parity(p: &[u8]) -> bool {
    // true for even permutations
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn permutation_group(name: String, points: usize, perms: Vec<Vec<u8>>) -> Result<GroupTable> {
    let n = perms.len();
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow { got: n, max: MAX_ORDER });
    }
    let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut mul = vec![0; n * n];
    let mut prod = vec![0u8; points];
    for a in 0..n {
        for b in 0..n {
            for (x, slot) in prod.iter_mut().enumerate() {
                // apply a, then b
                *slot = perms[b][perms[a][x] as usize];
            }
            mul[a * n + b] = *index
                .get(prod.as_slice())
                .ok_or_else(|| Error::Invalid(format!("{name} is not closed under composition")))?;
        }
    }
    GroupTable::from_table(name, n, mul)
}

pub fn symmetric(k: usize) -> Result<GroupTable> {
    if !(1..=7).contains(&k) {
        return Err(Error::Invalid(format!("S{k} not supported (k must be 1..=7)")));
    }
    permutation_group(format!("S{k}"), k, permutations_lex(k))
}

pub fn alternating(k: usize) -> Result<GroupTable> {
    if !(1..=7).contains(&k) {
        return Err(Error::Invalid(format!("A{k} not supported (k must be 1..=7)")));
    }
    let perms: Vec<Vec<u8>> = permutations_lex(k).into_iter().filter(|p| perm_parity(p)).collect();
    permutation_group(format!("A{k}"), k, perms)
}

/// Direct product with index (a, b) -> a * |B| + b.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let n = a
        .order()
        .checked_mul(b.order())
        .filter(|&n| n <= MAX_ORDER)
        .ok_or(Error::OrderOverflow { got: usize::MAX, max: MAX_ORDER })?;
    let nb = b.order();
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            mul[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
        }
    }
    GroupTable::from_table(format!("{}x{}", a.name(), b.name()), n, mul)
}

/// Generalized dicyclic group over an abelian base: adjoin x with x^2 = y and
/// x^-1 a x = a^-1. The base embeds at indices 0..|A|; x is index |A|.
pub fn generalized_dicyclic(a: &GroupTable, y: usize) -> Result<GroupTable> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if y == 0 || y >= a.order() || a.mul(y, y) != 0 {
        return Err(Error::NotInvolution { element: y });
    }
    if a.exponent() <= 2 {
        return Err(Error::ExponentTooSmall);
    }
    let na = a.order();
    let n = 2 * na;
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow { got: n, max: MAX_ORDER });
    }
    let mut mul = vec![0; n * n];
    for p in 0..na {
        for q in 0..na {
            // p * q
            mul[p * n + q] = a.mul(p, q);
            // p * (q x) = (p q) x
            mul[p * n + (na + q)] = na + a.mul(p, q);
            // (p x) * q = (p q^-1) x
            mul[(na + p) * n + q] = na + a.mul(p, a.inv(q));
            // (p x) * (q x) = p q^-1 y
            mul[(na + p) * n + (na + q)] = a.mul(a.mul(p, a.inv(q)), y);
        }
    }
    GroupTable::from_table(format!("Dic({},{y})", a.name()), n, mul)
}

// ---------------------------------------------------------------------------
// Group-spec parser
// ---------------------------------------------------------------------------

/// Parses the whitespace-free group-spec grammar:
/// `C<n>` | `C2^<l>` | `D<n>` | `Q8` | `S<n>` | `A<n>` (n <= 7) |
/// `Dic(<spec>,<y>)` | `<spec>x<spec>` (direct product).
pub fn make_group(spec: &str) -> Result<GroupTable> {
    if spec.chars().any(|c| c.is_whitespace()) {
        return Err(Error::GroupParse {
            spec: spec.to_string(),
            reason: "whitespace is not allowed".into(),
        });
    }
    let mut p = Parser { input: spec.as_bytes(), pos: 0, spec };
    let g = p.product()?;
    if p.pos != p.input.len() {
        return Err(p.err(format!("unexpected trailing input at byte {}", p.pos)));
    }
    Ok(g)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    spec: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: String) -> Error {
        Error::GroupParse { spec: self.spec.to_string(), reason }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(format!("expected a number at byte {start}")));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large".into()))
    }

    fn product(&mut self) -> Result<GroupTable> {
        let mut g = self.atom()?;
        while self.eat(b'x') {
            let h = self.atom()?;
            g = direct_product(&g, &h)?;
        }
        Ok(g)
    }

    fn atom(&mut self) -> Result<GroupTable> {
        match self.peek() {
            Some(b'C') => {
                self.pos += 1;
                let n = self.number()?;
                if self.eat(b'^') {
                    if n != 2 {
                        return Err(self.err("exponent notation is only defined for C2^<l>".into()));
                    }
                    let l = self.number()?;
                    elementary_abelian_2(l as u32)
                } else {
                    if n > MAX_ORDER {
                        return Err(Error::OrderOverflow { got: n, max: MAX_ORDER });
                    }
                    cyclic(n)
                }
            }
            Some(b'D') => {
                if self.input[self.pos..].starts_with(b"Dic(") {
                    self.dicyclic()
                } else {
                    self.pos += 1;
                    let n = self.number()?;
                    dihedral(n)
                }
            }
            Some(b'Q') => {
                self.pos += 1;
                if self.number()? != 8 {
                    return Err(self.err("only Q8 is supported".into()));
                }
                quaternion8()
            }
            Some(b'S') => {
                self.pos += 1;
                symmetric(self.number()?)
            }
            Some(b'A') => {
                self.pos += 1;
                alternating(self.number()?)
            }
            other => Err(self.err(format!("unexpected input {:?} at byte {}", other.map(|c| c as char), self.pos))),
        }
    }

    fn dicyclic(&mut self) -> Result<GroupTable> {
        if !self.input[self.pos..].starts_with(b"Dic(") {
            return Err(self.err(format!("unexpected input at byte {}", self.pos)));
        }
        self.pos += 4;
        let base = self.product()?;
        if !self.eat(b',') {
            return Err(self.err("expected ',' in Dic(<spec>,<y>)".into()));
        }
        let y = self.number()?;
        if !self.eat(b')') {
            return Err(self.err("expected ')' closing Dic(...)".into()));
        }
        generalized_dicyclic(&base, y)
    }
}

// ---------------------------------------------------------------------------
// Derived quantities and searches
// ---------------------------------------------------------------------------

/// c(S) = (|S| + |elements of S of order <= 2|) / 2 for inverse-closed S:
/// the number of bits parameterizing inverse-closed subsets of S.
pub fn c_value(g: &GroupTable, s: &ElementSet) -> Result<usize> {
    if !g.is_inverse_closed(s) {
        return Err(Error::NotInverseClosed);
    }
    let iota = s.iter().filter(|&x| g.mul(x, x) == 0).count();
    Ok((s.count() + iota) / 2)
}

/// c(G) over the full element set.
pub fn c_of_group(g: &GroupTable) -> usize {
    c_value(g, &g.full_set()).expect("full set is inverse-closed")
}

/// Partition of G into double cosets H x K, blocks ordered by minimal element.
pub fn double_cosets(g: &GroupTable, h: &ElementSet, k: &ElementSet) -> Result<Vec<ElementSet>> {
    if !g.is_subgroup(h) || !g.is_subgroup(k) {
        return Err(Error::NotSubgroup);
    }
    let n = g.order();
    let mut seen = Bitset::empty(n);
    let mut blocks = Vec::new();
    for x in 0..n {
        if seen.contains(x) {
            continue;
        }
        let mut block = Bitset::empty(n);
        for a in h.iter() {
            let ax = g.mul(a, x);
            for b in k.iter() {
                block.insert(g.mul(ax, b));
            }
        }
        seen.union_with(&block);
        blocks.push(block);
    }
    Ok(blocks)
}

/// All subgroups of G, found by saturating the closure lattice.
/// Deterministic order: by (size, bitmask).
pub fn enumerate_subgroups(g: &GroupTable) -> Result<Vec<ElementSet>> {
    let n = g.order();
    if n > SUBGROUP_ENUM_MAX {
        return Err(Error::CapExceeded { what: "subgroup enumeration", max: SUBGROUP_ENUM_MAX, got: n });
    }
    let trivial = g.subgroup_closure(&[]);
    let mut known: std::collections::HashSet<ElementSet> = std::collections::HashSet::new();
    known.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        let members: Vec<usize> = h.iter().collect();
        for x in 0..n {
            if h.contains(x) {
                continue;
            }
            let mut gens: Vec<usize> = members.clone();
            gens.push(x);
            let k = g.subgroup_closure(&gens);
            if known.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut subs: Vec<ElementSet> = known.into_iter().collect();
    subs.sort_by_key(|s| (s.count(), s.clone()));
    Ok(subs)
}

/// All automorphisms of G as image vectors (index -> image index),
/// sorted lexicographically.
pub fn automorphisms_of_group(g: &GroupTable) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > AUT_ENUM_MAX {
        return Err(Error::CapExceeded { what: "group automorphism enumeration", max: AUT_ENUM_MAX, got: n });
    }
    let gens = g.greedy_generators();
    let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut images = vec![0usize; gens.len()];
    search_automorphisms(g, &gens, &orders, 0, &mut images, &mut out);
    out.sort();
    Ok(out)
}

fn search_automorphisms(
    g: &GroupTable,
    gens: &[usize],
    orders: &[usize],
    level: usize,
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if level == gens.len() {
        if let Some(map) = extend_homomorphism(g, gens, images) {
            out.push(map);
        }
        return;
    }
    for c in 0..g.order() {
        if orders[c] == orders[gens[level]] {
            images[level] = c;
            // Prune: the partial assignment must already extend consistently.
            if extend_partial(g, &gens[..=level], &images[..=level]) {
                search_automorphisms(g, gens, orders, level + 1, images, out);
            }
        }
    }
}

/// Builds the unique multiplicative extension of gens[i] -> images[i] over the
/// subgroup the prefix generates; returns false on any conflict.
fn extend_partial(g: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
    build_extension(g, gens, images).is_some()
}

fn build_extension(g: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    map[0] = 0;
    hit[0] = true;
    let mut elems = vec![0usize];
    let mut i = 0;
    while i < elems.len() {
        let e = elems[i];
        i += 1;
        for (j, &gen) in gens.iter().enumerate() {
            let f = g.mul(e, gen);
            let fm = g.mul(map[e], images[j]);
            if map[f] == usize::MAX {
                if hit[fm] {
                    return None; // not injective
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

/// Full-image check for a complete generator assignment: the extension must be
/// a bijection of G.
fn extend_homomorphism(g: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let map = build_extension(g, gens, images)?;
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct DicyclicWitness {
    /// The abelian index-2 subgroup being inverted.
    pub base: ElementSet,
    /// An element outside the base with x^2 equal to `square`.
    pub x: usize,
    /// x^2, an involution of the base.
    pub square: usize,
}

#[derive(Clone, Debug)]
pub struct Q8E2Witness {
    /// Images in G of the eight canonical quaternion elements
    /// (1, -1, i, -i, j, -j, k, -k).
    pub q8_embed: [usize; 8],
    /// Independent central involutions spanning the elementary abelian factor.
    pub e2_basis: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GroupClass {
    pub is_abelian: bool,
    pub exponent: u64,
    pub is_elementary_abelian_2: bool,
    pub is_abelian_exp_gt_2: bool,
    pub is_generalized_dicyclic: bool,
    pub dicyclic_witness: Option<DicyclicWitness>,
    pub is_q8_times_e2: bool,
    pub q8e2_witness: Option<Q8E2Witness>,
}

/// Index-2 subgroups of G, via the quotient by the subgroup generated by all
/// squares and commutators (an elementary abelian 2-group).
pub fn index2_subgroups(g: &GroupTable) -> Vec<ElementSet> {
    let n = g.order();
    let mut gens: Vec<usize> = Vec::new();
    for a in 0..n {
        gens.push(g.mul(a, a));
    }
    for a in 0..n {
        for b in 0..n {
            gens.push(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let nucleus = g.subgroup_closure(&gens);
    let q = n / nucleus.count();
    if q == 1 {
        return Vec::new();
    }
    // Coset space is a vector space over F2; pick a basis of coset reps.
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<usize> = Vec::new(); // representative per coset
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        for h in nucleus.iter() {
            coset_of[g.mul(h, x)] = id;
        }
        cosets.push(x);
    }
    let mut basis: Vec<usize> = Vec::new(); // reps of independent cosets
    let mut spanned = vec![false; cosets.len()];
    spanned[coset_of[0]] = true;
    let mut span_members = vec![0usize];
    for x in 0..n {
        if !spanned[coset_of[x]] {
            basis.push(x);
            let mut extended = Vec::new();
            for &m in &span_members {
                let p = g.mul(m, x);
                if !spanned[coset_of[p]] {
                    spanned[coset_of[p]] = true;
                    extended.push(p);
                }
            }
            span_members.extend(extended);
        }
    }
    let r = basis.len();
    debug_assert_eq!(1 << r, q);
    // Coordinates of each element over the basis.
    let mut coord_of_coset = vec![u32::MAX; cosets.len()];
    coord_of_coset[coset_of[0]] = 0;
    let mut frontier = vec![(0usize, 0u32)];
    while let Some((x, v)) = frontier.pop() {
        for (bit, &b) in basis.iter().enumerate() {
            let y = g.mul(x, b);
            let w = v ^ (1 << bit);
            if coord_of_coset[coset_of[y]] == u32::MAX {
                coord_of_coset[coset_of[y]] = w;
                frontier.push((y, w));
            }
        }
    }
    // Index-2 subgroups = kernels of the nonzero functionals on F2^r.
    let mut out = Vec::new();
    for lambda in 1u32..(1 << r) {
        let mut h = Bitset::empty(n);
        for x in 0..n {
            if (coord_of_coset[coset_of[x]] & lambda).count_ones() % 2 == 0 {
                h.insert(x);
            }
        }
        out.push(h);
    }
    out
}

/// Structural flags computed by definition-level search.
pub fn classify_group(g: &GroupTable) -> GroupClass {
    let is_abelian = g.is_abelian();
    let exponent = g.exponent();
    let is_elementary_abelian_2 = is_abelian && exponent <= 2;
    let is_abelian_exp_gt_2 = is_abelian && exponent > 2;

    let mut dicyclic_witness = None;
    for a in index2_subgroups(g) {
        let sub_abelian = a.iter().all(|p| a.iter().all(|q| g.mul(p, q) == g.mul(q, p)));
        if !sub_abelian {
            continue;
        }
        let exp_gt_2 = a.iter().any(|p| g.element_order(p) > 2);
        if !exp_gt_2 {
            continue;
        }
        let x = (0..g.order()).find(|&x| {
            !a.contains(x)
                && g.mul(x, x) != 0
                && a.iter().all(|p| g.mul(g.mul(g.inv(x), p), x) == g.inv(p))
        });
        if let Some(x) = x {
            dicyclic_witness = Some(DicyclicWitness { base: a, x, square: g.mul(x, x) });
            break;
        }
    }
    let is_generalized_dicyclic = dicyclic_witness.is_some();

    let q8e2_witness = find_q8e2_decomposition(g);
    let is_q8_times_e2 = q8e2_witness.is_some();

    GroupClass {
        is_abelian,
        exponent,
        is_elementary_abelian_2,
        is_abelian_exp_gt_2,
        is_generalized_dicyclic,
        dicyclic_witness,
        is_q8_times_e2,
        q8e2_witness,
    }
}

fn find_q8e2_decomposition(g: &GroupTable) -> Option<Q8E2Witness> {
    let n = g.order();
    if n < 8 || !n.is_power_of_two() || g.is_abelian() {
        return None;
    }
    // Locate a quaternion subgroup: two order-4 elements with a^2 = b^2 that
    // invert each other under conjugation.
    let order4: Vec<usize> = (0..n).filter(|&x| g.element_order(x) == 4).collect();
    let mut quaternion = None;
    'outer: for &a in &order4 {
        for &b in &order4 {
            if g.mul(a, a) == g.mul(b, b)
                && g.mul(g.mul(g.inv(b), a), b) == g.inv(a)
                && g.subgroup_closure(&[a, b]).count() == 8
            {
                quaternion = Some((a, b));
                break 'outer;
            }
        }
    }
    let (a, b) = quaternion?;
    let q = g.subgroup_closure(&[a, b]);
    // Elementary abelian complement inside the center, avoiding a^2.
    let z = g.center();
    let minus_one = g.mul(a, a);
    if z.iter().any(|x| g.element_order(x) > 2) {
        return None;
    }
    let mut basis: Vec<usize> = Vec::new();
    let mut span = g.subgroup_closure(&[minus_one]);
    for v in z.iter() {
        if v != 0 && !span.contains(v) {
            basis.push(v);
            let mut gens = basis.clone();
            gens.push(minus_one);
            span = g.subgroup_closure(&gens);
        }
    }
    let e = g.subgroup_closure(&basis);
    if e.count() != n / 8 || e.contains(minus_one) {
        return None;
    }
    if q.intersection_count(&e) != 1 {
        return None;
    }
    let ab = g.mul(a, b);
    let q8_embed = [
        0,
        minus_one,
        a,
        g.inv(a),
        b,
        g.inv(b),
        ab,
        g.inv(ab),
    ];
    Some(Q8E2Witness { q8_embed, e2_basis: basis })
}

/// Curated groups used by tests, verification grids, and documentation.
pub fn catalog_specs() -> Vec<&'static str> {
    vec![
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12", "C16",
        "C2^2", "C2^3", "C2^4", "C2^5",
        "C3xC3", "C4xC2", "C4xC4", "C6xC2",
        "D3", "D4", "D5", "D6", "D7", "D8",
        "Q8", "Q8xC2",
        "S3", "S4", "A4",
        "Dic(C4,2)", "Dic(C6,3)", "Dic(C8,4)", "Dic(C12,6)",
    ]
}
