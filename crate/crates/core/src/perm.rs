//! Permutations and permutation groups backed by a base and strong generating
//! set: exact orders (arbitrary precision), membership, orbits, semiregularity.

use crate::error::{Error, Result};
use num_bigint::BigUint;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{}", self.cycle_notation())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &y in &images {
            if y >= d || seen[y] {
                return Err(Error::Invalid("image vector is not a bijection".into()));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::Invalid("cycle point out of range".into()));
                }
                images[from] = to;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&y| other.images[y]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn min_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(x, &y)| *x != y).map(|(x, _)| x)
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        cycles
    }

    /// Cycle notation with fixed points omitted; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.images.len()];
        let mut out = String::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                x = self.images[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

struct Level {
    point: usize,
    /// Strong generators active at this level (they fix all earlier base points).
    gens: Vec<Permutation>,
    /// Orbit of `point`, in BFS discovery order.
    orbit: Vec<usize>,
    /// reps[y] maps `point` to y for y in the orbit.
    reps: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        Level { point, gens: Vec::new(), orbit: Vec::new(), reps: vec![None; degree] }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps = vec![None; degree];
        self.reps[self.point] = Some(Permutation::identity(degree));
        self.orbit.push(self.point);
        let mut i = 0;
        while i < self.orbit.len() {
            let y = self.orbit[i];
            i += 1;
            for g in &self.gens {
                let z = g.apply(y);
                if self.reps[z].is_none() {
                    let rep = self.reps[y].as_ref().unwrap().compose(g);
                    self.reps[z] = Some(rep);
                    self.orbit.push(z);
                }
            }
        }
    }
}

/// A permutation group with exact order and membership testing.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree={}, order={})", self.degree, self.order)
    }
}

impl PermGroup {
    /// Deterministic Schreier-Sims: the base consists of smallest-index moved
    /// points, chosen in the order violations are discovered.
    pub fn from_generators(gens: Vec<Permutation>, degree: usize) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        let generators: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut levels: Vec<Level> = Vec::new();

        fn ensure_base_covers(levels: &mut Vec<Level>, degree: usize, g: &Permutation) {
            // Extend the base until g moves some base point.
            while levels.iter().all(|l| g.apply(l.point) == l.point) {
                if let Some(p) = g.min_moved_point() {
                    levels.push(Level::new(degree, p));
                } else {
                    return;
                }
            }
        }

        for g in &generators {
            ensure_base_covers(&mut levels, degree, g);
        }
        for i in 0..levels.len() {
            let point_prefix: Vec<usize> = levels[..i].iter().map(|l| l.point).collect();
            let gens_i: Vec<Permutation> = generators
                .iter()
                .filter(|g| point_prefix.iter().all(|&p| g.apply(p) == p))
                .cloned()
                .collect();
            levels[i].gens = gens_i;
            levels[i].recompute_orbit(degree);
        }

        // Verify levels bottom-up; insert sifted Schreier generators until the
        // chain is closed.
        let mut i = levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            // Fresh pass over Schreier generators of this level.
            let orbit = levels[lvl].orbit.clone();
            for y in orbit {
                let rep_y = levels[lvl].reps[y].clone().unwrap();
                for gi in 0..levels[lvl].gens.len() {
                    let s = levels[lvl].gens[gi].clone();
                    let z = s.apply(y);
                    let rep_z = levels[lvl].reps[z].clone().unwrap();
                    let schreier = rep_y.compose(&s).compose(&rep_z.inverse());
                    let (rem, stuck) = strip(&levels, lvl + 1, schreier);
                    if rem.is_identity() {
                        continue;
                    }
                    // Add the remainder as a strong generator for levels
                    // lvl+1 ..= stuck, extending the base if it fixes it all.
                    if stuck == levels.len() {
                        let p = rem.min_moved_point().expect("non-identity");
                        levels.push(Level::new(degree, p));
                    }
                    for l in (lvl + 1)..=stuck.min(levels.len() - 1) {
                        levels[l].gens.push(rem.clone());
                        levels[l].recompute_orbit(degree);
                    }
                    i = stuck.min(levels.len() - 1) + 1;
                    continue 'outer;
                }
            }
            i -= 1;
        }

        let order = levels.iter().map(|l| BigUint::from(l.orbit.len())).product();
        Ok(PermGroup { degree, generators, levels, order })
    }

    /// Builds a group from an explicit stabilizer chain: level i carries coset
    /// representatives mapping its base point to each point of its orbit under
    /// the stabilizer of the earlier base points. The representatives at
    /// levels >= i must generate that stabilizer.
    pub fn from_stabilizer_chain(
        degree: usize,
        chain: Vec<(usize, Vec<Permutation>)>,
    ) -> Result<Self> {
        let mut levels = Vec::new();
        let mut generators = Vec::new();
        for (point, reps) in chain {
            let mut level = Level::new(degree, point);
            level.reps[point] = Some(Permutation::identity(degree));
            level.orbit.push(point);
            for rep in reps {
                if rep.degree() != degree {
                    return Err(Error::DegreeMismatch { expected: degree, got: rep.degree() });
                }
                let y = rep.apply(point);
                if y == point || level.reps[y].is_some() {
                    return Err(Error::Invalid("stabilizer chain has duplicate coset representatives".into()));
                }
                level.reps[y] = Some(rep.clone());
                level.orbit.push(y);
                level.gens.push(rep.clone());
                generators.push(rep);
            }
            if level.orbit.len() > 1 {
                levels.push(level);
            }
        }
        let order = levels.iter().map(|l| BigUint::from(l.orbit.len())).product();
        Ok(PermGroup { degree, generators, levels, order })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), levels: Vec::new(), order: BigUint::from(1u32) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (rem, _) = strip(&self.levels, 0, p.clone());
        rem.is_identity()
    }

    /// Orbit partition, blocks ordered by their minimal point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut blocks = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut block = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < block.len() {
                let x = block[i];
                i += 1;
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        block.push(y);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// True iff every point stabilizer is trivial, i.e. every orbit length
    /// equals the group order.
    pub fn is_semiregular(&self) -> bool {
        self.orbits().iter().all(|b| BigUint::from(b.len()) == self.order)
    }
}

fn strip(levels: &[Level], from: usize, mut p: Permutation) -> (Permutation, usize) {
    for (i, level) in levels.iter().enumerate().skip(from) {
        let y = p.apply(level.point);
        match &level.reps[y] {
            None => return (p, i),
            Some(rep) => p = p.compose(&rep.inverse()),
        }
    }
    (p, levels.len())
}
