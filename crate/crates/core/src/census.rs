//! Exhaustive and Monte-Carlo censuses over connection-set families, with the
//! bound formulas evaluated alongside the measured proportions.
//!
//! Every family is parameterized by a fixed-length bit string, one family
//! member per bit pattern, so exhaustive runs iterate the index space and
//! Monte-Carlo runs draw the same bits from a counter-based stream. Results
//! are independent of the worker count: counts are commutative sums and trace
//! rows are emitted in index order.

use crate::aut;
use crate::bits::{BitCursor, Bitset};
use crate::bounds::{self, BoundReport};
use crate::error::{Error, Result};
use crate::graph::SetMatrix;
use crate::group::{c_of_group, ElementSet, GroupTable};
use crate::rng;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

/// Exhaustive index spaces are capped at this many bits unless forced.
pub const EXHAUSTIVE_BIT_CAP: u64 = 24;

const CHUNK: u64 = 2048;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    Subsets,
    InverseClosedSubsets,
    SetMatrices,
    InverseClosedSetMatrices,
    SkewSetMatrices,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Subsets => "subsets",
            FamilyKind::InverseClosedSubsets => "inverse-closed",
            FamilyKind::SetMatrices => "matrices",
            FamilyKind::InverseClosedSetMatrices => "inverse-closed-matrices",
            FamilyKind::SkewSetMatrices => "skew",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "subsets" => FamilyKind::Subsets,
            "inverse-closed" | "inverse-closed-subsets" => FamilyKind::InverseClosedSubsets,
            "matrices" | "set-matrices" => FamilyKind::SetMatrices,
            "inverse-closed-matrices" | "inverse-closed-set-matrices" => {
                FamilyKind::InverseClosedSetMatrices
            }
            "skew" | "skew-matrices" | "skew-set-matrices" => FamilyKind::SkewSetMatrices,
            other => return Err(Error::Invalid(format!("unknown family kind {other:?}"))),
        })
    }

    pub fn is_matrix(&self) -> bool {
        matches!(
            self,
            FamilyKind::SetMatrices
                | FamilyKind::InverseClosedSetMatrices
                | FamilyKind::SkewSetMatrices
        )
    }
}

/// A connection-set family over a fixed group.
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub group: GroupTable,
    pub m: usize,
}

/// One member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Connection {
    Set(ElementSet),
    Matrix(SetMatrix),
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, group: GroupTable, m: usize) -> Result<Self> {
        if kind.is_matrix() {
            if m < 1 {
                return Err(Error::Domain("matrix families need m >= 1".into()));
            }
        } else if m != 1 {
            return Err(Error::Domain("subset families have m = 1".into()));
        }
        Ok(FamilySpec { kind, group, m })
    }

    /// Number of bits indexing the family:
    /// n | c(G) | m^2 n | C(m,2) n + m c(G) | C(m,2) n.
    pub fn bits(&self) -> u64 {
        let n = self.group.order() as u64;
        let m = self.m as u64;
        let c = c_of_group(&self.group) as u64;
        match self.kind {
            FamilyKind::Subsets => n,
            FamilyKind::InverseClosedSubsets => c,
            FamilyKind::SetMatrices => m * m * n,
            FamilyKind::InverseClosedSetMatrices => m * (m - 1) / 2 * n + m * c,
            FamilyKind::SkewSetMatrices => m * (m - 1) / 2 * n,
        }
    }

    /// Family cardinality, 2^bits.
    pub fn total(&self) -> BigUint {
        BigUint::from(1u32) << self.bits()
    }

    /// Decodes a bit pattern into the family member it indexes. The encoding
    /// is a bijection between `{0,1}^bits` and the family.
    pub fn decode(&self, cursor: &mut BitCursor) -> Connection {
        let g = &self.group;
        let n = g.order();
        match self.kind {
            FamilyKind::Subsets => Connection::Set(decode_subset(n, cursor)),
            FamilyKind::InverseClosedSubsets => Connection::Set(decode_inverse_closed(g, cursor)),
            FamilyKind::SetMatrices => {
                let entries = (0..self.m * self.m).map(|_| decode_subset(n, cursor)).collect();
                Connection::Matrix(SetMatrix::new(self.m, entries).unwrap())
            }
            FamilyKind::InverseClosedSetMatrices | FamilyKind::SkewSetMatrices => {
                let skew = self.kind == FamilyKind::SkewSetMatrices;
                let mut sm =
                    SetMatrix::new(self.m, vec![Bitset::empty(n); self.m * self.m]).unwrap();
                // Upper triangle in row-major order; diagonals (when present)
                // use the inverse-closed bit scheme, and each strictly-upper
                // entry fixes its transpose to the inverse set.
                for i in 0..self.m {
                    for j in i..self.m {
                        if i == j {
                            if !skew {
                                *sm.entry_mut(i, i) = decode_inverse_closed(g, cursor);
                            }
                        } else {
                            let s = decode_subset(n, cursor);
                            let mut t = Bitset::empty(n);
                            for x in s.iter() {
                                t.insert(g.inv(x));
                            }
                            *sm.entry_mut(i, j) = s;
                            *sm.entry_mut(j, i) = t;
                        }
                    }
                }
                Connection::Matrix(sm)
            }
        }
    }

    pub fn decode_index(&self, index: u64) -> Connection {
        debug_assert!(self.bits() <= 64);
        let words = [index];
        self.decode(&mut BitCursor::new(&words))
    }

    /// Uniform member number `sample` of the stream keyed by `seed`.
    pub fn sample(&self, seed: u64, sample: u64) -> Connection {
        let words_needed = (self.bits() as usize).div_ceil(64).max(1);
        let mut words = vec![0u64; words_needed];
        rng::sample_words(seed, sample, &mut words);
        self.decode(&mut BitCursor::new(&words))
    }

    /// Hex encodings of the degenerate subset-family members (the empty and
    /// the full connection set); empty for matrix families.
    pub fn degenerate_members(&self) -> Vec<String> {
        match self.kind {
            FamilyKind::Subsets | FamilyKind::InverseClosedSubsets => {
                let n = self.group.order();
                vec![Bitset::empty(n).to_hex(), Bitset::full(n).to_hex()]
            }
            _ => Vec::new(),
        }
    }
}

fn decode_subset(n: usize, cursor: &mut BitCursor) -> ElementSet {
    let mut s = Bitset::empty(n);
    for x in 0..n {
        if cursor.next_bit() {
            s.insert(x);
        }
    }
    s
}

/// One bit per inverse pair {x, x^-1} (taken at x <= x^-1, so involutions and
/// the identity are their own pair), consumed in ascending element order:
/// c(G) bits in total.
fn decode_inverse_closed(g: &GroupTable, cursor: &mut BitCursor) -> ElementSet {
    let n = g.order();
    let mut s = Bitset::empty(n);
    for x in 0..n {
        if x <= g.inv(x) && cursor.next_bit() {
            s.insert(x);
            s.insert(g.inv(x));
        }
    }
    s
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Predicate {
    Drr,
    Grr,
    Hgr,
    HaarOptimalAbelian,
    Dmsr,
    Gmsr,
    Mpgsr,
}

impl Predicate {
    pub fn name(&self) -> &'static str {
        match self {
            Predicate::Drr => "drr",
            Predicate::Grr => "grr",
            Predicate::Hgr => "hgr",
            Predicate::HaarOptimalAbelian => "haar-optimal",
            Predicate::Dmsr => "dmsr",
            Predicate::Gmsr => "gmsr",
            Predicate::Mpgsr => "mpgsr",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "drr" => Predicate::Drr,
            "grr" => Predicate::Grr,
            "hgr" => Predicate::Hgr,
            "haar-optimal" | "haar-optimal-abelian" => Predicate::HaarOptimalAbelian,
            "dmsr" => Predicate::Dmsr,
            "gmsr" => Predicate::Gmsr,
            "mpgsr" => Predicate::Mpgsr,
            other => return Err(Error::Invalid(format!("unknown predicate {other:?}"))),
        })
    }

    /// Families a predicate is defined over.
    pub fn accepts(&self, kind: FamilyKind) -> bool {
        use FamilyKind::*;
        match self {
            Predicate::Drr | Predicate::Hgr | Predicate::HaarOptimalAbelian => {
                matches!(kind, Subsets | InverseClosedSubsets)
            }
            Predicate::Grr => kind == InverseClosedSubsets,
            Predicate::Dmsr => kind.is_matrix(),
            Predicate::Gmsr => matches!(kind, InverseClosedSetMatrices | SkewSetMatrices),
            Predicate::Mpgsr => kind == SkewSetMatrices,
        }
    }

    /// Evaluates the predicate, returning the hit flag and the automorphism
    /// group order it was decided by.
    pub fn eval(&self, g: &GroupTable, conn: &Connection) -> Result<(bool, BigUint)> {
        let n = BigUint::from(g.order());
        let order = match (self, conn) {
            (Predicate::Drr, Connection::Set(s)) => aut::aut_order(&crate::graph::cayley_digraph(g, s)),
            (Predicate::Grr, Connection::Set(s)) => {
                if !g.is_inverse_closed(s) {
                    return Err(Error::NotInverseClosed);
                }
                aut::aut_order(&crate::graph::cayley_digraph(g, s))
            }
            (Predicate::Hgr, Connection::Set(s)) => aut::aut_order(&crate::graph::haar_graph(g, s)),
            (Predicate::HaarOptimalAbelian, Connection::Set(s)) => {
                if !g.is_abelian() {
                    return Err(Error::NotAbelian);
                }
                aut::aut_plus_haar(g, s).order().clone()
            }
            (Predicate::Dmsr, Connection::Matrix(sm)) => {
                aut::aut_order(&crate::graph::m_cayley_digraph(g, sm))
            }
            (Predicate::Gmsr, Connection::Matrix(sm)) => {
                if !sm.is_inverse_closed(g) {
                    return Err(Error::SetMatrixFlags("expected an inverse-closed set-matrix"));
                }
                aut::aut_order(&crate::graph::m_cayley_digraph(g, sm))
            }
            (Predicate::Mpgsr, Connection::Matrix(sm)) => {
                if !sm.is_skew(g) {
                    return Err(Error::SetMatrixFlags("expected a skew set-matrix"));
                }
                aut::aut_order(&crate::graph::m_cayley_digraph(g, sm))
            }
            _ => {
                return Err(Error::PredicateFamilyMismatch {
                    predicate: self.name(),
                    family: "connection of the wrong shape",
                })
            }
        };
        Ok((order == n, order))
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

fn u64_string<S: serde::Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Serialize, Clone, Debug)]
pub struct FamilyDescription {
    pub kind: String,
    pub group: String,
    pub group_order: usize,
    pub m: usize,
    pub bits: u64,
}

#[derive(Serialize, Clone, Debug)]
pub struct CensusReport {
    pub family: FamilyDescription,
    pub predicate: String,
    pub mode: String,
    /// Family cardinality 2^bits, decimal.
    pub total: String,
    /// Number of predicate evaluations (equals total for exhaustive runs).
    #[serde(serialize_with = "u64_string")]
    pub evaluated: u64,
    #[serde(serialize_with = "u64_string")]
    pub hits: u64,
    #[serde(serialize_with = "u64_string")]
    pub misses: u64,
    pub proportion: f64,
    pub wilson_ci_95: Option<(f64, f64)>,
    pub seed: Option<String>,
    pub degenerate_members: Vec<String>,
    pub bound_comparison: BoundReport,
    pub workers: usize,
    pub wall_ms: f64,
}

/// One row per predicate evaluation, emitted in index order.
#[derive(Clone, Debug)]
pub struct TraceRow {
    pub family_index: u64,
    pub predicate: &'static str,
    pub aut_order: BigUint,
}

pub type TraceSink = Box<dyn FnMut(&TraceRow) + Send>;

#[derive(Default)]
pub struct CensusOptions {
    /// Lifts the exhaustive bit cap.
    pub force: bool,
    /// Seed text to echo verbatim in the report (Monte Carlo).
    pub seed_echo: Option<String>,
    /// Called with trace rows, in index order.
    pub trace: Option<TraceSink>,
}

fn bound_comparison(family: &FamilySpec, predicate: Predicate) -> BoundReport {
    let n = family.group.order().max(2) as u128;
    let m = match predicate {
        Predicate::Drr | Predicate::Grr => 1,
        Predicate::Hgr | Predicate::HaarOptimalAbelian | Predicate::Mpgsr => family.m.max(2) as u64,
        _ => family.m as u64,
    };
    bounds::eval_bounds(n, 0.1, m.max(1)).expect("bound domain")
}

struct Outcome {
    mode: &'static str,
    evaluated: u64,
    hits: u64,
    wilson: Option<(f64, f64)>,
    seed: Option<String>,
    wall_ms: f64,
}

fn make_report(family: &FamilySpec, predicate: Predicate, outcome: Outcome) -> CensusReport {
    CensusReport {
        family: FamilyDescription {
            kind: family.kind.name().to_string(),
            group: family.group.name().to_string(),
            group_order: family.group.order(),
            m: family.m,
            bits: family.bits(),
        },
        predicate: predicate.name().to_string(),
        mode: outcome.mode.to_string(),
        total: family.total().to_string(),
        evaluated: outcome.evaluated,
        hits: outcome.hits,
        misses: outcome.evaluated - outcome.hits,
        proportion: if outcome.evaluated == 0 {
            0.0
        } else {
            outcome.hits as f64 / outcome.evaluated as f64
        },
        wilson_ci_95: outcome.wilson,
        seed: outcome.seed,
        degenerate_members: family.degenerate_members(),
        bound_comparison: bound_comparison(family, predicate),
        workers: rayon::current_num_threads(),
        wall_ms: outcome.wall_ms,
    }
}

fn check_compat(family: &FamilySpec, predicate: Predicate) -> Result<()> {
    if !predicate.accepts(family.kind) {
        return Err(Error::PredicateFamilyMismatch {
            predicate: predicate.name(),
            family: family.kind.name(),
        });
    }
    Ok(())
}

/// Evaluates the predicate on every member of the family, in index order.
pub fn exhaustive_census(
    family: &FamilySpec,
    predicate: Predicate,
    opts: &mut CensusOptions,
) -> Result<CensusReport> {
    check_compat(family, predicate)?;
    let bits = family.bits();
    if bits > EXHAUSTIVE_BIT_CAP && !opts.force {
        return Err(Error::ExhaustiveTooLarge { bits, cap: EXHAUSTIVE_BIT_CAP });
    }
    if bits > 62 {
        return Err(Error::ExhaustiveTooLarge { bits, cap: 62 });
    }
    let start = std::time::Instant::now();
    let total: u64 = 1u64 << bits;
    let mut hits: u64 = 0;
    let mut index = 0u64;
    while index < total {
        let hi = (index + CHUNK).min(total);
        let results: Vec<(bool, BigUint)> = (index..hi)
            .into_par_iter()
            .map(|i| {
                let conn = family.decode_index(i);
                predicate.eval(&family.group, &conn)
            })
            .collect::<Result<Vec<_>>>()?;
        for (off, (hit, order)) in results.iter().enumerate() {
            if *hit {
                hits += 1;
            }
            if let Some(sink) = opts.trace.as_mut() {
                sink(&TraceRow {
                    family_index: index + off as u64,
                    predicate: predicate.name(),
                    aut_order: order.clone(),
                });
            }
        }
        index = hi;
    }
    let wall = start.elapsed().as_secs_f64() * 1e3;
    Ok(make_report(
        family,
        predicate,
        Outcome { mode: "exhaustive", evaluated: total, hits, wilson: None, seed: None, wall_ms: wall },
    ))
}

/// Draws `samples` i.i.d. members (sample k reads the counter-based stream at
/// counter k) and reports the hit proportion with a Wilson 95% interval.
pub fn monte_carlo_census(
    family: &FamilySpec,
    predicate: Predicate,
    samples: u64,
    seed: u64,
    opts: &mut CensusOptions,
) -> Result<CensusReport> {
    check_compat(family, predicate)?;
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    let start = std::time::Instant::now();
    let mut hits: u64 = 0;
    let mut k = 0u64;
    while k < samples {
        let hi = (k + CHUNK).min(samples);
        let results: Vec<(bool, BigUint)> = (k..hi)
            .into_par_iter()
            .map(|i| {
                let conn = family.sample(seed, i);
                predicate.eval(&family.group, &conn)
            })
            .collect::<Result<Vec<_>>>()?;
        for (off, (hit, order)) in results.iter().enumerate() {
            if *hit {
                hits += 1;
            }
            if let Some(sink) = opts.trace.as_mut() {
                sink(&TraceRow {
                    family_index: k + off as u64,
                    predicate: predicate.name(),
                    aut_order: order.clone(),
                });
            }
        }
        k = hi;
    }
    let wall = start.elapsed().as_secs_f64() * 1e3;
    let seed_text = opts.seed_echo.clone().unwrap_or_else(|| seed.to_string());
    Ok(make_report(
        family,
        predicate,
        Outcome {
            mode: "monte-carlo",
            evaluated: samples,
            hits,
            wilson: Some(wilson_95(hits, samples)),
            seed: Some(seed_text),
            wall_ms: wall,
        },
    ))
}

/// Wilson score interval at 95% confidence. Always contains the sample
/// proportion; the boundary cases p = 0 and p = 1 pin the matching endpoint
/// exactly (rounding would otherwise push it off by an ulp).
pub fn wilson_95(hits: u64, samples: u64) -> (f64, f64) {
    let z = 1.959963984540054_f64;
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if hits == samples { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}
