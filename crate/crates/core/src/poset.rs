//! The poset of simple permutations of size >= 4 under pattern containment.
//!
//! The covering relation splits in two: a non-exceptional simple permutation
//! covers exactly the simple permutations obtained by deleting one of its
//! points (unit edges), while an exceptional permutation covers exactly the
//! same-family exceptional two sizes down (skip edges). Levels are generated
//! bottom-up from `{2413, 3142}` by one-point extension, with the exceptional
//! permutations injected at every even size since they are never extensions.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exceptional::{
    exceptional_families_of, exceptional_of_size, exceptional_perm, exceptional_skip_target,
    is_exceptional, ExceptionalDescriptor,
};
use crate::perm::{pattern_occurs, Permutation};

/// Leveled DAG of simple permutations. `deletion_edges` connect sizes n and
/// n-1 (the unit graph); `exceptional_edges` connect same-family exceptional
/// permutations of sizes 2m and 2m-2. Together they are exactly the covering
/// relations of the containment poset. All stored orders are lexicographic
/// on one-line notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetGraph {
    levels: BTreeMap<usize, Vec<Permutation>>,
    deletion_edges: Vec<(Permutation, Permutation)>,
    exceptional_edges: Vec<(Permutation, Permutation)>,
}

impl PosetGraph {
    pub fn levels(&self) -> &BTreeMap<usize, Vec<Permutation>> {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &[Permutation] {
        self.levels.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn node_count(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn contains_node(&self, p: &Permutation) -> bool {
        self.levels
            .get(&p.len())
            .is_some_and(|lvl| lvl.binary_search(p).is_ok())
    }

    /// Edges (parent, child) with |parent| = |child| + 1, sorted.
    pub fn deletion_edges(&self) -> &[(Permutation, Permutation)] {
        &self.deletion_edges
    }

    /// Edges (parent, child) between same-family exceptionals, sorted.
    pub fn exceptional_edges(&self) -> &[(Permutation, Permutation)] {
        &self.exceptional_edges
    }

    /// Out-degree of `p` in the unit graph (number of deletion edges out).
    pub fn unit_outdegree(&self, p: &Permutation) -> usize {
        let lo = self.deletion_edges.partition_point(|(a, _)| a < p);
        self.deletion_edges[lo..]
            .iter()
            .take_while(|(a, _)| a == p)
            .count()
    }
}

/// The complete set of simple permutations of each size `4..=max_n`, as
/// sorted levels: level n is the union of the one-point extensions of level
/// n-1 with the exceptional permutations of size n, seeded by
/// `{2413, 3142}` at n = 4.
pub fn enumerate_simples(max_n: usize) -> Result<BTreeMap<usize, Vec<Permutation>>> {
    if max_n < 4 {
        return Err(Error::SizeTooSmall {
            size: max_n,
            min: 4,
        });
    }
    let mut levels = BTreeMap::new();
    let seed: Vec<Permutation> = exceptional_of_size(4);
    levels.insert(4, seed);
    for n in 5..=max_n {
        let prev = &levels[&(n - 1)];
        // extension fan-out is independent per parent; merge deterministically
        let chunks: Vec<Vec<Permutation>> = prev
            .par_iter()
            .map(|p| {
                p.simple_extensions()
                    .expect("level members are simple of size >= 4")
                    .into_iter()
                    .collect()
            })
            .collect();
        let mut set: HashSet<Permutation> = HashSet::new();
        for chunk in chunks {
            set.extend(chunk);
        }
        set.extend(exceptional_of_size(n));
        let mut level: Vec<Permutation> = set.into_iter().collect();
        level.sort_unstable();
        levels.insert(n, level);
    }
    Ok(levels)
}

/// Builds the full poset graph over sizes `4..=max_n`.
pub fn build_poset(max_n: usize) -> Result<PosetGraph> {
    let levels = enumerate_simples(max_n)?;
    let mut deletion_edges = Vec::new();
    for n in 5..=max_n {
        let mut level_edges: Vec<(Permutation, Permutation)> = levels[&n]
            .par_iter()
            .flat_map_iter(|p| {
                let parent = p.clone();
                p.children()
                    .expect("level members are simple")
                    .into_iter()
                    .map(move |c| (parent.clone(), c))
            })
            .collect();
        level_edges.sort_unstable();
        deletion_edges.extend(level_edges);
    }
    let exceptional_edges = skip_edges_up_to(max_n);
    deletion_edges.sort_unstable();
    Ok(PosetGraph {
        levels,
        deletion_edges,
        exceptional_edges,
    })
}

fn skip_edges_up_to(max_n: usize) -> Vec<(Permutation, Permutation)> {
    let mut edges = Vec::new();
    let mut n = 6;
    while n <= max_n {
        for parent in exceptional_of_size(n) {
            let child = exceptional_skip_target(&parent).expect("size >= 6 exceptional");
            edges.push((parent, child));
        }
        n += 2;
    }
    edges.sort_unstable();
    edges
}

/// The sub-poset of simple patterns of `sigma`, computed by downward closure
/// along deletion and exceptional edges. Every simple pattern of size >= 4
/// is reachable this way.
pub fn pattern_closure(sigma: &Permutation) -> Result<PosetGraph> {
    if !sigma.is_simple() {
        return Err(Error::NotSimple(sigma.to_string()));
    }
    if sigma.len() < 4 {
        return Err(Error::SizeTooSmall {
            size: sigma.len(),
            min: 4,
        });
    }
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue: VecDeque<Permutation> = VecDeque::new();
    let mut deletion_edges = Vec::new();
    let mut exceptional_edges = Vec::new();
    seen.insert(sigma.clone());
    queue.push_back(sigma.clone());
    while let Some(p) = queue.pop_front() {
        for child in p.children()? {
            if seen.insert(child.clone()) {
                queue.push_back(child.clone());
            }
            deletion_edges.push((p.clone(), child));
        }
        if let Some(target) = exceptional_skip_target(&p) {
            if seen.insert(target.clone()) {
                queue.push_back(target.clone());
            }
            exceptional_edges.push((p.clone(), target));
        }
    }
    let mut levels: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for p in seen {
        levels.entry(p.len()).or_default().push(p);
    }
    for level in levels.values_mut() {
        level.sort_unstable();
    }
    deletion_edges.sort_unstable();
    exceptional_edges.sort_unstable();
    Ok(PosetGraph {
        levels,
        deletion_edges,
        exceptional_edges,
    })
}

/// A descending chain in the poset: consecutive containments whose size gaps
/// are 1 up to the split index and 2 afterwards, the tail consisting of
/// same-family exceptionals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    steps: Vec<Permutation>,
    split: usize,
}

impl Chain {
    pub fn permutations(&self) -> &[Permutation] {
        &self.steps
    }

    /// Number of transitions.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of leading unit (gap-1) transitions.
    pub fn split_index(&self) -> usize {
        self.split
    }

    /// True when every transition has gap 1.
    pub fn is_unit(&self) -> bool {
        self.split == self.len()
    }
}

/// A chain from `sigma` down to `pi` in the poset. When `sigma` is not
/// exceptional the chain uses unit steps only and has length
/// `|sigma| - |pi|`; when `sigma` is exceptional it walks the same-family
/// skip edges and has length `(|sigma| - |pi|) / 2`.
///
/// Deterministic: each unit step picks the lexicographically smallest
/// non-exceptional child still containing `pi` (the smallest child overall
/// for the final step). Restricting to non-exceptional children is what
/// keeps the chain unit all the way down when `pi` itself is exceptional.
pub fn find_chain(sigma: &Permutation, pi: &Permutation) -> Result<Chain> {
    for q in [sigma, pi] {
        if !q.is_simple() {
            return Err(Error::NotSimple(q.to_string()));
        }
    }
    if pi.len() < 4 {
        return Err(Error::SizeTooSmall {
            size: pi.len(),
            min: 4,
        });
    }
    if sigma == pi || !pattern_occurs(pi, sigma) {
        return Err(Error::NotAPattern {
            pattern: pi.to_string(),
            host: sigma.to_string(),
        });
    }

    let mut steps = vec![sigma.clone()];
    let mut split = 0;
    loop {
        let cur = steps.last().unwrap().clone();
        if cur == *pi {
            break;
        }
        if is_exceptional(&cur) {
            append_skip_tail(&mut steps, &cur, pi)?;
            break;
        }
        split += 1;
        if cur.len() == pi.len() + 1 {
            steps.push(pi.clone());
            continue;
        }
        let kids = cur.children()?;
        let eligible = |c: &&Permutation| pattern_occurs(pi, c);
        let next = kids
            .iter()
            .filter(eligible)
            .find(|c| !is_exceptional(c))
            .or_else(|| kids.iter().find(eligible))
            .cloned();
        match next {
            Some(c) => steps.push(c),
            // unreachable for valid inputs: a non-exceptional host always
            // has a one-size-down simple pattern containing pi
            None => {
                return Err(Error::NotAPattern {
                    pattern: pi.to_string(),
                    host: cur.to_string(),
                })
            }
        }
    }
    // split counts unit transitions; an exceptional tail keeps it where the
    // last unit step left it
    let split = split.min(steps.len() - 1);
    Ok(Chain { steps, split })
}

fn append_skip_tail(steps: &mut Vec<Permutation>, from: &Permutation, pi: &Permutation) -> Result<()> {
    let fams_from = exceptional_families_of(from);
    let fams_pi = exceptional_families_of(pi);
    let family = fams_from
        .intersection(&fams_pi)
        .next()
        .copied()
        .ok_or_else(|| Error::NotAPattern {
            pattern: pi.to_string(),
            host: from.to_string(),
        })?;
    let mut m = from.len() / 2;
    while m > pi.len() / 2 {
        m -= 1;
        steps.push(exceptional_perm(ExceptionalDescriptor { family, m })?);
    }
    Ok(())
}

/// Per-size out-degree histogram of the unit graph: `histogram[k]` counts
/// the simple permutations of size `n` with exactly `k` simple one-point
/// deletions, and `average_outdegree` is the exact mean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub n: usize,
    pub simple_count: u64,
    pub histogram: BTreeMap<usize, u64>,
    pub average_outdegree: Ratio<u64>,
}

impl DegreeStats {
    /// Total number of unit edges leaving level `n`.
    pub fn edge_count(&self) -> u64 {
        self.histogram.iter().map(|(&k, &c)| k as u64 * c).sum()
    }
}

/// Degree statistics for every size `5..=max_n`.
pub fn outdegree_stats(max_n: usize) -> Result<Vec<DegreeStats>> {
    if max_n < 5 {
        return Err(Error::SizeTooSmall {
            size: max_n,
            min: 5,
        });
    }
    let levels = enumerate_simples(max_n)?;
    let mut out = Vec::with_capacity(max_n - 4);
    for n in 5..=max_n {
        let level = &levels[&n];
        let degrees: Vec<usize> = level
            .par_iter()
            .map(Permutation::simple_deletion_count)
            .collect();
        let mut histogram: BTreeMap<usize, u64> = BTreeMap::new();
        for d in degrees {
            *histogram.entry(d).or_insert(0) += 1;
        }
        let simple_count = level.len() as u64;
        let edges: u64 = histogram.iter().map(|(&k, &c)| k as u64 * c).sum();
        out.push(DegreeStats {
            n,
            simple_count,
            histogram,
            average_outdegree: Ratio::new(edges, simple_count),
        });
    }
    Ok(out)
}
