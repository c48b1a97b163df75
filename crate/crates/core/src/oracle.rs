//! Independent brute-force reference implementations and exhaustive property
//! runners. Everything here trades speed for obviousness: permutations are
//! enumerated factorially, patterns by explicit position subsets. The
//! runners re-derive the structural laws the fast paths rely on and report
//! concrete counterexamples when a law fails over its checked range.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exceptional::{
    exceptional_families_of, exceptional_of_size, exceptional_perm, exceptional_skip_target,
    is_exceptional, ExceptionalDescriptor, ExceptionalFamily,
};
use crate::perm::{pattern_occurs, GridSlot, Permutation};
use crate::poset::find_chain;

/// Default factorial-cost guard for whole-level enumeration.
pub const BRUTE_SIMPLES_GUARD: usize = 9;

/// Default guard for position-subset enumeration.
pub const BRUTE_PATTERNS_GUARD: usize = 10;

/// Frozen counts of simple permutations per size, first computed by
/// `brute_simples` and kept as regression fixtures.
pub const SIMPLE_COUNT_FIXTURES: [(usize, u64); 5] =
    [(4, 2), (5, 6), (6, 46), (7, 338), (8, 2926)];

/// All simple permutations of size `n`, by filtering the n! candidates.
pub fn brute_simples(n: usize) -> Result<Vec<Permutation>> {
    brute_simples_bounded(n, BRUTE_SIMPLES_GUARD)
}

pub fn brute_simples_bounded(n: usize, guard: usize) -> Result<Vec<Permutation>> {
    if n > guard {
        return Err(Error::SizeGuard {
            requested: n,
            max: guard,
        });
    }
    let mut out: Vec<Permutation> = (1..=n as u32)
        .permutations(n)
        .map(Permutation::from_vec_unchecked)
        .filter(Permutation::is_simple)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// All simple permutations of size `m` occurring in `sigma`, by enumerating
/// every m-subset of positions.
pub fn brute_simple_patterns(sigma: &Permutation, m: usize) -> Result<BTreeSet<Permutation>> {
    brute_simple_patterns_bounded(sigma, m, BRUTE_PATTERNS_GUARD)
}

pub fn brute_simple_patterns_bounded(
    sigma: &Permutation,
    m: usize,
    guard: usize,
) -> Result<BTreeSet<Permutation>> {
    let n = sigma.len();
    if n > guard {
        return Err(Error::SizeGuard {
            requested: n,
            max: guard,
        });
    }
    let mut out = BTreeSet::new();
    if m == 0 || m > n {
        return Ok(out);
    }
    for positions in (0..n).combinations(m) {
        let q = sigma.subpattern(&positions);
        if q.is_simple() {
            out.insert(q);
        }
    }
    Ok(out)
}

/// Identifies one exhaustively checkable structural law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyId {
    /// Containment between exceptional permutations holds iff they share a
    /// family.
    ExceptionalSameType,
    /// Every simple permutation of size >= 4 contains 2413 or 3142.
    ContainsSize4Simple,
    /// Between nested simple patterns there is a simple pattern two sizes up.
    PlusTwoInterpolation,
    /// An exceptional permutation has simple patterns exactly at even sizes.
    ExceptionalEvenPattern,
    /// A non-exceptional simple permutation has simple patterns of every
    /// size from 4 up.
    AllSizesPattern,
    /// An exceptional permutation has exactly one simple pattern per even
    /// size: the same-family exceptional.
    ExceptionalUniquePattern,
    /// A point whose deletion makes a non-simple permutation simple sits in
    /// a size-2 interval or in a corner.
    PairOrCorner,
    /// A simple pattern two sizes down lifts through one size down.
    GapTwoBridge,
    /// Some one-point deletion of a non-exceptional host keeps any given
    /// simple pattern.
    GapOneDescent,
    /// Every simple pattern is reachable by unit steps followed by
    /// exceptional skips (downward closure equals the pattern set).
    TwoPhaseChain,
    /// Any small point set of an exceptional permutation is covered by an
    /// occurrence of the next exceptional down.
    ExceptionalPointCover,
    /// Between an exceptional pattern two sizes down and a one-point
    /// extension there is an odd-size simple bridge.
    ExceptionalBridge,
    /// Chains from non-exceptional hosts consist of unit steps only.
    UnitChain,
    /// Each simple extension arises from exactly one insertion slot.
    UniqueInsertion,
    /// A simple permutation of size n has exactly (n+1)(n-3) simple
    /// extensions, by both construction strategies.
    ExtensionCount,
}

impl PropertyId {
    pub const ALL: [PropertyId; 15] = [
        PropertyId::ExceptionalSameType,
        PropertyId::ContainsSize4Simple,
        PropertyId::PlusTwoInterpolation,
        PropertyId::ExceptionalEvenPattern,
        PropertyId::AllSizesPattern,
        PropertyId::ExceptionalUniquePattern,
        PropertyId::PairOrCorner,
        PropertyId::GapTwoBridge,
        PropertyId::GapOneDescent,
        PropertyId::TwoPhaseChain,
        PropertyId::ExceptionalPointCover,
        PropertyId::ExceptionalBridge,
        PropertyId::UnitChain,
        PropertyId::UniqueInsertion,
        PropertyId::ExtensionCount,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            PropertyId::ExceptionalSameType => "exceptional-same-type",
            PropertyId::ContainsSize4Simple => "contains-size4-simple",
            PropertyId::PlusTwoInterpolation => "plus2-interpolation",
            PropertyId::ExceptionalEvenPattern => "exceptional-even-pattern",
            PropertyId::AllSizesPattern => "all-sizes-pattern",
            PropertyId::ExceptionalUniquePattern => "exceptional-unique-pattern",
            PropertyId::PairOrCorner => "pair-or-corner",
            PropertyId::GapTwoBridge => "gap2-bridge",
            PropertyId::GapOneDescent => "gap1-descent",
            PropertyId::TwoPhaseChain => "two-phase-chain",
            PropertyId::ExceptionalPointCover => "exceptional-point-cover",
            PropertyId::ExceptionalBridge => "exceptional-bridge",
            PropertyId::UnitChain => "unit-chain",
            PropertyId::UniqueInsertion => "unique-insertion",
            PropertyId::ExtensionCount => "extension-count",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|id| id.slug() == text)
            .ok_or_else(|| Error::UnknownProperty(text.to_string()))
    }

    /// Size checked by the default suite.
    pub fn default_max_n(self) -> usize {
        match self {
            PropertyId::ExceptionalSameType => 10,
            PropertyId::ExceptionalEvenPattern | PropertyId::ExceptionalUniquePattern => 12,
            PropertyId::ExceptionalPointCover => 12,
            PropertyId::ExceptionalBridge => 10,
            PropertyId::UniqueInsertion => 6,
            _ => 7,
        }
    }

    /// Hard feasibility bound; larger requests are refused rather than left
    /// running unbounded.
    pub fn max_feasible_n(self) -> usize {
        match self {
            PropertyId::ExceptionalSameType => 14,
            PropertyId::ExceptionalEvenPattern | PropertyId::ExceptionalUniquePattern => 14,
            PropertyId::ExceptionalPointCover => 16,
            PropertyId::ExceptionalBridge => 12,
            PropertyId::UniqueInsertion => 7,
            PropertyId::ContainsSize4Simple => 9,
            _ => 8,
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// Result of one exhaustive run: how much was checked and every violation
/// found, as formatted witness tuples (sorted, empty on success).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub max_n: usize,
    pub instances: u64,
    pub counterexamples: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property.slug(),
            "max_n": self.max_n,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
        })
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} max_n={} instances={} counterexamples={} {}",
            self.property.slug(),
            self.max_n,
            self.instances,
            self.counterexamples.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for c in &self.counterexamples {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

/// Runs one property exhaustively up to `max_n`.
pub fn run_property(id: PropertyId, max_n: usize) -> Result<PropertyReport> {
    if max_n > id.max_feasible_n() {
        return Err(Error::SizeGuard {
            requested: max_n,
            max: id.max_feasible_n(),
        });
    }
    let (instances, mut counterexamples) = match id {
        PropertyId::ExceptionalSameType => check_exceptional_same_type(max_n),
        PropertyId::ContainsSize4Simple => check_contains_size4(max_n)?,
        PropertyId::PlusTwoInterpolation => check_plus2_interpolation(max_n)?,
        PropertyId::ExceptionalEvenPattern => check_exceptional_even(max_n)?,
        PropertyId::AllSizesPattern => check_all_sizes(max_n)?,
        PropertyId::ExceptionalUniquePattern => check_exceptional_unique(max_n)?,
        PropertyId::PairOrCorner => check_pair_or_corner(max_n),
        PropertyId::GapTwoBridge => check_gap2_bridge(max_n)?,
        PropertyId::GapOneDescent => check_gap1_descent(max_n)?,
        PropertyId::TwoPhaseChain => check_two_phase_chain(max_n)?,
        PropertyId::ExceptionalPointCover => check_point_cover(max_n),
        PropertyId::ExceptionalBridge => check_exceptional_bridge(max_n)?,
        PropertyId::UnitChain => check_unit_chain(max_n)?,
        PropertyId::UniqueInsertion => check_unique_insertion(max_n)?,
        PropertyId::ExtensionCount => check_extension_count(max_n)?,
    };
    counterexamples.sort_unstable();
    Ok(PropertyReport {
        property: id,
        max_n,
        instances,
        counterexamples,
    })
}

/// Runs the whole default suite.
pub fn run_default_suite() -> Result<Vec<PropertyReport>> {
    PropertyId::ALL
        .into_iter()
        .map(|id| run_property(id, id.default_max_n()))
        .collect()
}

type CheckOutcome = (u64, Vec<String>);

fn check_exceptional_same_type(max_n: usize) -> CheckOutcome {
    let max_m = max_n / 2;
    let mut instances = 0;
    let mut bad = Vec::new();
    for f in ExceptionalFamily::ALL {
        for fp in ExceptionalFamily::ALL {
            for m in 2..=max_m {
                for mp in m..=max_m {
                    let small = exceptional_perm(ExceptionalDescriptor { family: f, m }).unwrap();
                    let large =
                        exceptional_perm(ExceptionalDescriptor { family: fp, m: mp }).unwrap();
                    let same_family = !exceptional_families_of(&small)
                        .is_disjoint(&exceptional_families_of(&large));
                    instances += 1;
                    if pattern_occurs(&small, &large) != same_family {
                        bad.push(format!("({small}) vs ({large})"));
                    }
                }
            }
        }
    }
    (instances, bad)
}

fn check_contains_size4(max_n: usize) -> Result<CheckOutcome> {
    let base1: Permutation = "2 4 1 3".parse()?;
    let base2: Permutation = "3 1 4 2".parse()?;
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 4..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            instances += 1;
            if !pattern_occurs(&base1, &sigma) && !pattern_occurs(&base2, &sigma) {
                bad.push(format!("({sigma})"));
            }
        }
    }
    Ok((instances, bad))
}

fn simple_patterns_by_size(sigma: &Permutation) -> Result<BTreeMap<usize, BTreeSet<Permutation>>> {
    let n = sigma.len();
    let mut out = BTreeMap::new();
    for m in 4..=n {
        out.insert(m, brute_simple_patterns_bounded(sigma, m, n)?);
    }
    Ok(out)
}

fn check_plus2_interpolation(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 6..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            let pats = simple_patterns_by_size(&sigma)?;
            for m in 4..=n - 2 {
                for pi in &pats[&m] {
                    instances += 1;
                    let ok = pats[&(m + 2)].iter().any(|tau| pattern_occurs(pi, tau));
                    if !ok {
                        bad.push(format!("({pi}) in ({sigma})"));
                    }
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_exceptional_even(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for size in (4..=max_n).filter(|s| s % 2 == 0) {
        for sigma in exceptional_of_size(size) {
            for m in 3..=size {
                instances += 1;
                let nonempty =
                    !brute_simple_patterns_bounded(&sigma, m, size)?.is_empty();
                if nonempty != (m % 2 == 0) {
                    bad.push(format!("({sigma}) at size {m}"));
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_all_sizes(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 5..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            if is_exceptional(&sigma) {
                continue;
            }
            for m in 4..=n {
                instances += 1;
                if brute_simple_patterns_bounded(&sigma, m, n)?.is_empty() {
                    bad.push(format!("({sigma}) at size {m}"));
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_exceptional_unique(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for size in (6..=max_n).filter(|s| s % 2 == 0) {
        for sigma in exceptional_of_size(size) {
            let family = *exceptional_families_of(&sigma)
                .iter()
                .next()
                .expect("exceptional");
            for m in 4..size {
                instances += 1;
                let found = brute_simple_patterns_bounded(&sigma, m, size)?;
                let expected: BTreeSet<Permutation> = if m % 2 == 0 {
                    [exceptional_perm(ExceptionalDescriptor { family, m: m / 2 })?]
                        .into_iter()
                        .collect()
                } else {
                    BTreeSet::new()
                };
                if found != expected {
                    bad.push(format!("({sigma}) at size {m}"));
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_pair_or_corner(max_n: usize) -> CheckOutcome {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 3..=max_n {
        for values in (1..=n as u32).permutations(n) {
            let tau = Permutation::from_vec_unchecked(values);
            if tau.is_simple() {
                continue;
            }
            for i in 1..=n {
                if !tau.delete_point(i).unwrap().is_simple() {
                    continue;
                }
                instances += 1;
                let v = tau.value_at(i).unwrap();
                let in_pair = (i > 1 && tau.value_at(i - 1).unwrap().abs_diff(v) == 1)
                    || (i < n && tau.value_at(i + 1).unwrap().abs_diff(v) == 1);
                let in_corner =
                    (i == 1 || i == n) && (v == 1 || v as usize == n);
                if !in_pair && !in_corner {
                    bad.push(format!("({tau}) at position {i}"));
                }
            }
        }
    }
    (instances, bad)
}

fn check_gap2_bridge(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 6..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            if is_exceptional(&sigma) {
                continue;
            }
            let kids = sigma.children()?;
            for pi in brute_simple_patterns_bounded(&sigma, n - 2, n)? {
                instances += 1;
                if !kids.iter().any(|tau| pattern_occurs(&pi, tau)) {
                    bad.push(format!("({pi}) in ({sigma})"));
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_gap1_descent(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 5..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            if is_exceptional(&sigma) {
                continue;
            }
            let kids = sigma.children()?;
            for m in 4..n {
                for pi in brute_simple_patterns_bounded(&sigma, m, n)? {
                    instances += 1;
                    if !kids.iter().any(|tau| pattern_occurs(&pi, tau)) {
                        bad.push(format!("({pi}) in ({sigma})"));
                    }
                }
            }
        }
    }
    Ok((instances, bad))
}

/// Downward closure along unit and skip edges, recomputed locally so the
/// check does not depend on the poset module.
fn brute_closure(sigma: &Permutation) -> Result<BTreeSet<Permutation>> {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(sigma.clone());
    queue.push_back(sigma.clone());
    while let Some(p) = queue.pop_front() {
        let mut nexts: Vec<Permutation> = p.children()?.into_iter().collect();
        if let Some(skip) = exceptional_skip_target(&p) {
            nexts.push(skip);
        }
        for q in nexts {
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    Ok(seen)
}

fn check_two_phase_chain(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 4..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            instances += 1;
            let mut patterns: BTreeSet<Permutation> = BTreeSet::new();
            for sets in simple_patterns_by_size(&sigma)?.into_values() {
                patterns.extend(sets);
            }
            if brute_closure(&sigma)? != patterns {
                bad.push(format!("({sigma})"));
            }
        }
    }
    Ok((instances, bad))
}

fn check_point_cover(max_n: usize) -> CheckOutcome {
    let mut instances = 0;
    let mut bad = Vec::new();
    for size in (8..=max_n).filter(|s| s % 2 == 0) {
        for family in ExceptionalFamily::ALL {
            let pi = exceptional_perm(ExceptionalDescriptor {
                family,
                m: size / 2,
            })
            .unwrap();
            let smaller = exceptional_perm(ExceptionalDescriptor {
                family,
                m: size / 2 - 1,
            })
            .unwrap();
            // pairs of positions whose removal leaves an occurrence of the
            // smaller exceptional
            let deletion_pairs: Vec<(usize, usize)> = (0..size)
                .combinations(2)
                .filter(|pair| {
                    let kept: Vec<usize> =
                        (0..size).filter(|i| !pair.contains(i)).collect();
                    pi.subpattern(&kept) == smaller
                })
                .map(|pair| (pair[0], pair[1]))
                .collect();
            let covered_points = size / 2 - 1;
            for subset in (0..size).combinations(covered_points) {
                instances += 1;
                let point_set: HashSet<usize> = subset.iter().copied().collect();
                let ok = deletion_pairs
                    .iter()
                    .any(|&(a, b)| !point_set.contains(&a) && !point_set.contains(&b));
                if !ok {
                    bad.push(format!("({pi}) points {subset:?}"));
                }
            }
        }
    }
    (instances, bad)
}

fn check_exceptional_bridge(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for size in (6..=max_n).filter(|s| s % 2 == 0) {
        for family in ExceptionalFamily::ALL {
            let pi = exceptional_perm(ExceptionalDescriptor {
                family,
                m: size / 2,
            })?;
            let smaller = exceptional_perm(ExceptionalDescriptor {
                family,
                m: size / 2 - 1,
            })?;
            for sigma in pi.simple_extensions()? {
                instances += 1;
                let target = smaller.len() + 1;
                let ok = (0..sigma.len()).combinations(target).any(|positions| {
                    let tau = sigma.subpattern(&positions);
                    tau.is_simple() && pattern_occurs(&smaller, &tau)
                });
                if !ok {
                    bad.push(format!("({pi}) extended to ({sigma})"));
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_unit_chain(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 5..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            if is_exceptional(&sigma) {
                continue;
            }
            for m in 4..n {
                for pi in brute_simple_patterns_bounded(&sigma, m, n)? {
                    instances += 1;
                    let chain = find_chain(&sigma, &pi)?;
                    let steps = chain.permutations();
                    let structurally_ok = chain.is_unit()
                        && chain.len() == n - m
                        && steps.first() == Some(&sigma)
                        && steps.last() == Some(&pi)
                        && steps.windows(2).all(|w| {
                            w[0].len() == w[1].len() + 1
                                && w[0]
                                    .children()
                                    .map(|kids| kids.contains(&w[1]))
                                    .unwrap_or(false)
                        });
                    if !structurally_ok {
                        bad.push(format!("({sigma}) down to ({pi})"));
                    }
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_unique_insertion(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 4..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            for q in sigma.simple_extensions()? {
                instances += 1;
                let mut ways = 0;
                for position in 0..=n {
                    for value in 1..=n as u32 + 1 {
                        if sigma.insert_point(GridSlot { position, value })? == q {
                            ways += 1;
                        }
                    }
                }
                if ways != 1 {
                    bad.push(format!("({sigma}) to ({q}): {ways} slots"));
                }
            }
        }
    }
    Ok((instances, bad))
}

fn check_extension_count(max_n: usize) -> Result<CheckOutcome> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for n in 4..=max_n {
        for sigma in brute_simples_bounded(n, max_n)? {
            instances += 1;
            let fast = sigma.simple_extensions()?;
            let filtered = sigma.simple_extensions_by_filter()?;
            if fast != filtered || fast.len() != (n + 1) * (n - 3) {
                bad.push(format!("({sigma})"));
            }
        }
    }
    Ok((instances, bad))
}
