//! Finite-resolution evidence for the chaos predicates: dense periodic points,
//! a dense orbit, transitivity, sensitivity, and the hypotheses under which an
//! induced map is semiconjugate to its symbolic map.
//!
//! Every check partitions each arc into `2^p` dyadic cells and works with exact
//! rationals. Results are deterministic: parallel work is collected in order.

mod report;
mod systems;

pub use report::{CellSpan, ChaosReport, Params, Property, Verdict, Witness, MAX_WITNESSES};
pub use systems::{ChaosSystem, Control, IntervalChaos};

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use crate::rational::Rational;
use crate::symbolic::{
    dense_word, periodic_words_with_limit, SymbolicError, Word, DEFAULT_MAX_BITS,
};

pub const MAX_PERIOD: u32 = 24;
pub const MAX_RESOLUTION: u32 = 16;
pub const MAX_ORBIT_STEPS: u64 = 1_000_000;
pub const MAX_TRANSITIVITY_RESOLUTION: u32 = 8;
pub const MAX_GRID: u32 = 1 << 12;
pub const MAX_LEMMA6_PERIOD: u32 = 16;

/// Prefix length used to certify that a stream word avoids the special fibers.
pub const STREAM_CERTIFICATE_BITS: u64 = 256;

const NOT_CONTINUITY: &str = "continuity of the map is not tested";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifierError {
    #[error("{what} {value} exceeds the bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("{property} is not available for {system}: it has no symbolic model")]
    Unsupported { property: Property, system: String },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

fn bound(what: &'static str, value: u64, limit: u64) -> Result<(), VerifierError> {
    if value > limit {
        Err(VerifierError::BoundExceeded { what, value, limit })
    } else {
        Ok(())
    }
}

/// Caps on enumeration sizes, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_bits: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

/// A dyadic cell: index `k` covers `[k/2^p, (k+1)/2^p)` on `arc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Cell {
    arc: usize,
    index: u64,
}

impl Cell {
    fn span(self, p: u32) -> CellSpan {
        let scale = 1u64 << p;
        CellSpan {
            arc: self.arc,
            lo: Rational::from_u64_parts(self.index, scale),
            hi: Rational::from_u64_parts(self.index + 1, scale),
        }
    }
}

/// Flat indexing of the `arc_count · 2^p` cells.
struct Grid {
    arcs: usize,
    p: u32,
}

impl Grid {
    fn new<S: ChaosSystem>(sys: &S, p: u32) -> Self {
        Grid {
            arcs: sys.arc_count(),
            p,
        }
    }

    fn per_arc(&self) -> u64 {
        1u64 << self.p
    }

    fn len(&self) -> usize {
        self.arcs * self.per_arc() as usize
    }

    fn flat(&self, c: Cell) -> usize {
        (c.arc - 1) * self.per_arc() as usize + c.index as usize
    }

    fn cell(&self, flat: usize) -> Cell {
        Cell {
            arc: flat / self.per_arc() as usize + 1,
            index: (flat % self.per_arc() as usize) as u64,
        }
    }

    fn cell_of(&self, arc: usize, t: &Rational) -> Cell {
        let k = t.floor_scaled(self.p).to_u64().unwrap_or(u64::MAX);
        Cell {
            arc,
            index: k.min(self.per_arc() - 1),
        }
    }

    fn cells_of<S: ChaosSystem>(&self, sys: &S, x: &S::Point) -> Vec<usize> {
        sys.coordinates(x)
            .iter()
            .map(|(arc, t)| self.flat(self.cell_of(*arc, t)))
            .collect()
    }

    fn uncovered(&self, covered: &[bool]) -> Vec<Witness> {
        covered
            .iter()
            .enumerate()
            .filter(|(_, c)| !**c)
            .map(|(i, _)| Witness::UncoveredCell {
                cell: self.cell(i).span(self.p),
            })
            .collect()
    }
}

fn iterate<S: ChaosSystem>(sys: &S, x: &S::Point, n: u32) -> S::Point {
    (0..n).fold(x.clone(), |y, _| sys.step(&y))
}

/// Words whose primitive period is exactly `k`.
fn primitive_words(k: u32, limits: Limits) -> Result<Vec<Word>, VerifierError> {
    Ok(periodic_words_with_limit(k, limits.max_bits)?
        .into_iter()
        .filter(|w| w.period().len() == k as usize)
        .collect())
}

/// Projections of periodic words of period `k ≤ n` that are `F`-periodic with
/// period dividing `k`, each listed once with the least such `k`.
pub fn periodic_points<S: ChaosSystem>(
    sys: &S,
    max_period: u32,
    limits: Limits,
) -> Result<Vec<(u32, S::Point)>, VerifierError> {
    bound("max_period", max_period as u64, MAX_PERIOD as u64)?;
    let mut found: BTreeMap<S::Point, u32> = BTreeMap::new();
    for k in 1..=max_period {
        let words = primitive_words(k, limits)?;
        let kept: Vec<S::Point> = words
            .par_iter()
            .filter_map(|w| {
                let x = sys.project(w);
                (iterate(sys, &x, k) == x).then_some(x)
            })
            .collect();
        for x in kept {
            found.entry(x).or_insert(k);
        }
    }
    let mut out: Vec<(u32, S::Point)> = found.into_iter().map(|(x, k)| (k, x)).collect();
    out.sort();
    Ok(out)
}

pub fn periodic_density<S: ChaosSystem>(
    sys: &S,
    max_period: u32,
    resolution: u32,
    limits: Limits,
) -> Result<ChaosReport, VerifierError> {
    let started = Instant::now();
    bound("resolution", resolution as u64, MAX_RESOLUTION as u64)?;
    let points = periodic_points(sys, max_period, limits)?;
    let grid = Grid::new(sys, resolution);
    let mut covered = vec![false; grid.len()];
    for (_, x) in &points {
        for c in grid.cells_of(sys, x) {
            covered[c] = true;
        }
    }
    let witnesses = grid.uncovered(&covered);
    let mut stats = BTreeMap::new();
    stats.insert("periodic_points".into(), points.len().into());
    stats.insert("cells".into(), grid.len().into());
    stats.insert(
        "covered".into(),
        covered.iter().filter(|c| **c).count().into(),
    );
    Ok(ChaosReport::conclude(
        sys.name(),
        Property::PeriodicDensity,
        Params {
            max_period: Some(max_period),
            resolution: Some(resolution),
            ..Params::default()
        },
        witnesses,
        stats,
        vec![
            format!("density checked at resolution 2^-{resolution}"),
            NOT_CONTINUITY.into(),
        ],
        started,
    ))
}

pub fn dense_orbit_coverage<S: ChaosSystem>(
    sys: &S,
    steps: u64,
    resolution: u32,
) -> Result<ChaosReport, VerifierError> {
    let started = Instant::now();
    bound("steps", steps, MAX_ORBIT_STEPS)?;
    bound("resolution", resolution as u64, MAX_RESOLUTION as u64)?;
    let map = sys
        .symbolic_map()
        .ok_or_else(|| VerifierError::Unsupported {
            property: Property::DenseOrbit,
            system: sys.name(),
        })?;
    let grid = Grid::new(sys, resolution);
    let mut covered = vec![false; grid.len()];
    let mut remaining = grid.len();
    let mut used = 0;
    let mut sw = dense_word();
    let precision = resolution + 2;
    for i in 0..steps {
        // The orbit point lies in [m/2^(p+2), (m+1)/2^(p+2)), never on its right
        // end since ψ₀ is not eventually periodic, so the enclosure sits in
        // cell m >> 2.
        let (arc, bits) = sys.stream_address(&sw, precision);
        let m = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        let c = grid.flat(Cell { arc, index: m >> 2 });
        if !covered[c] {
            covered[c] = true;
            remaining -= 1;
            if remaining == 0 {
                used = i + 1;
                break;
            }
        }
        sw = map.apply_stream(&sw);
    }
    let witnesses = grid.uncovered(&covered);
    let mut stats = BTreeMap::new();
    stats.insert("cells".into(), grid.len().into());
    stats.insert("covered".into(), (grid.len() - remaining).into());
    if remaining == 0 {
        stats.insert("steps_used".into(), used.into());
    }
    let mut notes = vec![
        format!("orbit of the dense word under the symbolic map, enclosures at precision 2^-{precision}"),
        NOT_CONTINUITY.into(),
    ];
    if sys.arc_count() > 1 {
        notes.push("a dense orbit on a perfect space also gives transitivity evidence".into());
    }
    Ok(ChaosReport::conclude(
        sys.name(),
        Property::DenseOrbit,
        Params {
            steps: Some(steps),
            resolution: Some(resolution),
            ..Params::default()
        },
        witnesses,
        stats,
        notes,
        started,
    ))
}

/// Dyadics at spacing `2^-(2p+1)` inside cell `c`, left corner included.
fn cell_samples<S: ChaosSystem>(sys: &S, c: Cell, p: u32) -> Vec<S::Point> {
    let fine = 2 * p + 1;
    let base = c.index << (p + 1);
    (0..1u64 << (p + 1))
        .map(|j| sys.point_at(c.arc, Rational::from_u64_parts(base + j, 1u64 << fine)))
        .collect()
}

pub fn transitivity_witness<S: ChaosSystem>(
    sys: &S,
    resolution: u32,
    horizon: u32,
) -> Result<ChaosReport, VerifierError> {
    let started = Instant::now();
    bound(
        "resolution",
        resolution as u64,
        MAX_TRANSITIVITY_RESOLUTION as u64,
    )?;
    let grid = Grid::new(sys, resolution);
    let per_cell: Vec<(Vec<bool>, u32)> = (0..grid.len())
        .into_par_iter()
        .map(|u| {
            let mut reached = vec![false; grid.len()];
            let mut remaining = grid.len();
            let mut current = cell_samples(sys, grid.cell(u), resolution);
            let mut deepest = 0;
            for n in 1..=horizon {
                current = current.iter().map(|x| sys.step(x)).collect();
                current.sort();
                current.dedup();
                for x in &current {
                    for c in grid.cells_of(sys, x) {
                        if !reached[c] {
                            reached[c] = true;
                            remaining -= 1;
                            deepest = n;
                        }
                    }
                }
                if remaining == 0 {
                    break;
                }
            }
            (reached, deepest)
        })
        .collect();

    let mut witnesses = Vec::new();
    let mut linked = 0usize;
    let mut max_n = 0;
    for (u, (reached, deepest)) in per_cell.iter().enumerate() {
        max_n = max_n.max(*deepest);
        for (v, hit) in reached.iter().enumerate() {
            if *hit {
                linked += 1;
            } else {
                witnesses.push(Witness::UnlinkedPair {
                    from: grid.cell(u).span(resolution),
                    to: grid.cell(v).span(resolution),
                });
            }
        }
    }
    let mut stats = BTreeMap::new();
    stats.insert("pairs".into(), (grid.len() * grid.len()).into());
    stats.insert("linked".into(), linked.into());
    stats.insert("max_steps_needed".into(), max_n.into());
    Ok(ChaosReport::conclude(
        sys.name(),
        Property::Transitivity,
        Params {
            resolution: Some(resolution),
            horizon: Some(horizon),
            ..Params::default()
        },
        witnesses,
        stats,
        vec![
            format!("cell pairs at resolution 2^-{resolution}, dyadic samples iterated exactly"),
            NOT_CONTINUITY.into(),
        ],
        started,
    ))
}

/// How many halvings of `δ` are tried around each grid point.
const SENSITIVITY_REFINEMENTS: u32 = 4;

pub fn sensitivity_probe<S: ChaosSystem>(
    sys: &S,
    eta: &Rational,
    delta: &Rational,
    grid_points: u32,
    horizon: u32,
) -> Result<ChaosReport, VerifierError> {
    let started = Instant::now();
    bound("grid", grid_points as u64, MAX_GRID as u64)?;
    let g = grid_points as u64;
    let starts: Vec<S::Point> = (1..=sys.arc_count())
        .flat_map(|arc| (0..g).map(move |k| (arc, Rational::from_u64_parts(2 * k + 1, 2 * g))))
        .map(|(arc, t)| sys.point_at(arc, t))
        .collect();

    let separates = |x: &S::Point, y: &S::Point| -> Option<u32> {
        let (mut a, mut b) = (x.clone(), y.clone());
        for n in 0..=horizon {
            if sys.distance(&a, &b) > *eta {
                return Some(n);
            }
            a = sys.step(&a);
            b = sys.step(&b);
        }
        None
    };

    let results: Vec<Option<u32>> = starts
        .par_iter()
        .map(|x| {
            sys.coordinates(x).iter().find_map(|(arc, t)| {
                (0..SENSITIVITY_REFINEMENTS).find_map(|j| {
                    let d = delta * &Rational::dyadic_unit(j);
                    let up = t + &d;
                    let down = t.checked_sub(&d);
                    [Some(up), down]
                        .into_iter()
                        .flatten()
                        .filter(Rational::is_unit_interval)
                        .find_map(|s| separates(x, &sys.point_at(*arc, s)))
                })
            })
        })
        .collect();

    let witnesses: Vec<Witness> = starts
        .iter()
        .zip(&results)
        .filter(|(_, r)| r.is_none())
        .map(|(x, _)| Witness::InsensitivePoint {
            point: x.to_string(),
        })
        .collect();
    let mut stats = BTreeMap::new();
    stats.insert("grid_points".into(), starts.len().into());
    stats.insert(
        "separated".into(),
        results.iter().filter(|r| r.is_some()).count().into(),
    );
    if let Some(n) = results.iter().flatten().max() {
        stats.insert("max_separation_step".into(), (*n).into());
    }
    Ok(ChaosReport::conclude(
        sys.name(),
        Property::Sensitivity,
        Params {
            eta: Some(eta.clone()),
            delta: Some(delta.clone()),
            grid: Some(grid_points),
            horizon: Some(horizon),
            ..Params::default()
        },
        witnesses,
        stats,
        vec![NOT_CONTINUITY.into()],
        started,
    ))
}

/// Resolution of the sampled onto-ness evidence in the Lemma-6 report.
const ONTO_RESOLUTION: u32 = 4;

pub fn lemma6_commute_check<S: ChaosSystem>(
    sys: &S,
    max_period: u32,
    orbit_steps: u64,
    limits: Limits,
) -> Result<ChaosReport, VerifierError> {
    let started = Instant::now();
    bound("max_period", max_period as u64, MAX_LEMMA6_PERIOD as u64)?;
    bound("orbit_steps", orbit_steps, MAX_ORBIT_STEPS)?;
    let map = sys
        .symbolic_map()
        .ok_or_else(|| VerifierError::Unsupported {
            property: Property::Lemma6,
            system: sys.name(),
        })?;

    let mut witnesses = Vec::new();
    let mut periodic_checked = 0usize;
    let split = sys.periodic_free_fibers();
    for k in 1..=max_period {
        let words = primitive_words(k, limits)?;
        periodic_checked += words.len();
        let failures: Vec<Witness> = words
            .par_iter()
            .filter(|w| sys.semiconjugacy(w) == Some(false))
            .map(|w| Witness::SemiconjugacyFailure {
                word: w.to_string(),
            })
            .collect();
        witnesses.extend(failures);
        for w in &words {
            for (point, members) in &split {
                if members.contains(w) {
                    witnesses.push(Witness::PeriodicInSplitFiber {
                        word: w.to_string(),
                        point: point.clone(),
                    });
                }
            }
        }
    }

    let mut orbit = Vec::with_capacity(orbit_steps as usize);
    let mut sw = dense_word();
    for _ in 0..orbit_steps {
        let next = map.apply_stream(&sw);
        orbit.push(sw);
        sw = next;
    }
    let stream_failures: Vec<Witness> = orbit
        .par_iter()
        .filter(|sw| sys.semiconjugacy_stream(sw, STREAM_CERTIFICATE_BITS) == Some(false))
        .map(|sw| Witness::SemiconjugacyFailure {
            word: format!("dense word after {} steps", sw.offset()),
        })
        .collect();
    witnesses.extend(stream_failures);

    // Sampled onto-ness: images of fine dyadics, counted by coarse cell.
    let grid = Grid::new(sys, ONTO_RESOLUTION);
    let mut hit = vec![false; grid.len()];
    let fine = ONTO_RESOLUTION + 3;
    for arc in 1..=sys.arc_count() {
        for j in 0..=1u64 << fine {
            let x = sys.point_at(arc, Rational::from_u64_parts(j, 1 << fine));
            for c in grid.cells_of(sys, &sys.step(&x)) {
                hit[c] = true;
            }
        }
    }

    let mut stats = BTreeMap::new();
    stats.insert("periodic_words".into(), periodic_checked.into());
    stats.insert("orbit_words".into(), orbit_steps.into());
    let (exceptional, violations) = sys.patch_sets();
    stats.insert("exceptional".into(), json!(exceptional));
    stats.insert("violations".into(), json!(violations));
    stats.insert(
        "onto_sample".into(),
        json!({
            "resolution": ONTO_RESOLUTION,
            "cells": grid.len(),
            "cells_hit": hit.iter().filter(|h| **h).count(),
        }),
    );
    Ok(ChaosReport::conclude(
        sys.name(),
        Property::Lemma6,
        Params {
            max_period: Some(max_period),
            steps: Some(orbit_steps),
            ..Params::default()
        },
        witnesses,
        stats,
        vec![
            format!(
                "stream words certified off the special fibers within {STREAM_CERTIFICATE_BITS} bits"
            ),
            "onto-ness of the patched map is sampled, not proved".into(),
            NOT_CONTINUITY.into(),
        ],
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, GraphSystem};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn bounds_are_enforced() {
        let tent = IntervalChaos::tent();
        assert!(matches!(
            periodic_density(&tent, 25, 4, Limits::default()),
            Err(VerifierError::BoundExceeded {
                what: "max_period",
                ..
            })
        ));
        assert!(matches!(
            periodic_density(&tent, 4, 17, Limits::default()),
            Err(VerifierError::BoundExceeded { .. })
        ));
        assert!(matches!(
            periodic_density(&tent, 12, 4, Limits { max_bits: 8 }),
            Err(VerifierError::Symbolic(SymbolicError::BoundExceeded { .. }))
        ));
        assert!(transitivity_witness(&tent, 9, 4).is_err());
        assert!(sensitivity_probe(&tent, &q("1/4"), &q("1/8"), 5000, 4).is_err());
        assert!(dense_orbit_coverage(&tent, 2_000_000, 4).is_err());
        assert!(lemma6_commute_check(&tent, 17, 10, Limits::default()).is_err());
    }

    #[test]
    fn controls_have_no_symbolic_model() {
        assert!(matches!(
            dense_orbit_coverage(&Control::Identity, 10, 2),
            Err(VerifierError::Unsupported { .. })
        ));
        assert!(lemma6_commute_check(&Control::Identity, 2, 10, Limits::default()).is_err());
    }

    #[test]
    fn tent_density_fails_at_short_periods() {
        let r = periodic_density(&IntervalChaos::tent(), 2, 7, Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.witnesses[0], Witness::UncoveredCell { .. }));
    }

    #[test]
    fn baker_orbit_too_short() {
        let r = dense_orbit_coverage(&IntervalChaos::baker(), 100, 8).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn small_passes() {
        let tent = IntervalChaos::tent();
        assert!(periodic_density(&tent, 8, 4, Limits::default())
            .unwrap()
            .passed());
        assert!(transitivity_witness(&tent, 3, 10).unwrap().passed());
        assert!(sensitivity_probe(&tent, &q("1/4"), &q("1/64"), 16, 20)
            .unwrap()
            .passed());
        assert!(dense_orbit_coverage(&tent, 5000, 5).unwrap().passed());
        assert!(lemma6_commute_check(&tent, 6, 500, Limits::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn negative_controls_fail() {
        assert!(!transitivity_witness(&Control::Identity, 2, 10)
            .unwrap()
            .passed());
        assert!(
            !sensitivity_probe(&Control::Identity, &q("1/4"), &q("1/64"), 16, 20)
                .unwrap()
                .passed()
        );
        assert!(
            !sensitivity_probe(&Control::Constant, &q("1/4"), &q("1/64"), 16, 20)
                .unwrap()
                .passed()
        );
        let rot = Control::RotationThird;
        assert!(!transitivity_witness(&rot, 4, 20).unwrap().passed());
        assert!(!periodic_density(&rot, 2, 4, Limits::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn graph_nodes_cover_their_end_cells() {
        let g = GraphSystem::new(parse_graph("node a\nnode b\narc E1 a b\narc E2 b a").unwrap());
        let grid = Grid::new(&g, 2);
        let mut cells = grid.cells_of(&g, &crate::graph::GraphPoint::node("b"));
        cells.sort();
        assert_eq!(cells, vec![3, 4]);
    }

    #[test]
    fn reports_are_reproducible() {
        let baker = IntervalChaos::baker();
        let a = periodic_density(&baker, 6, 4, Limits::default()).unwrap();
        let b = periodic_density(&baker, 6, 4, Limits::default()).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }
}
