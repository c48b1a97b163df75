//! Permutations in one-line notation and the point-level operations on them:
//! simplicity testing, interval detection, pattern containment, one-point
//! deletion/insertion and the simple-neighbourhood maps built from those.
//!
//! Values are 1-based (a permutation of size `n` is a rearrangement of
//! `1..=n`), and so are positions in the public API. Insertion slots count
//! the number of elements to the left, so they range over `0..=n`.

use std::cell::Cell;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

/// A nontrivial interval: a run of contiguous positions whose values form a
/// contiguous range. Positions are 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalWitness {
    pub start: usize,
    pub end: usize,
}

impl IntervalWitness {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An insertion slot in the grid of a size-`n` permutation: `position` is the
/// number of existing elements to the left (`0..=n`), `value` the rank of the
/// new element (`1..=n+1`). Existing values `>= value` shift up by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridSlot {
    pub position: usize,
    pub value: u32,
}

/// The three generating symmetries of the dihedral group acting on
/// permutation diagrams. All of them preserve simplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryOp {
    Reverse,
    Complement,
    Inverse,
}

impl FromStr for SymmetryOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reverse" => Ok(SymmetryOp::Reverse),
            "complement" => Ok(SymmetryOp::Complement),
            "inverse" => Ok(SymmetryOp::Inverse),
            other => Err(Error::MalformedInput(format!(
                "unknown symmetry {other:?} (expected reverse, complement or inverse)"
            ))),
        }
    }
}

thread_local! {
    static PATTERN_TESTS: Cell<u64> = const { Cell::new(0) };
}

/// Number of pattern containment tests performed so far on this thread.
///
/// The wreath generator is required to work without any containment test;
/// reading this counter before and after a run makes that checkable.
pub fn pattern_test_count() -> u64 {
    PATTERN_TESTS.get()
}

impl Permutation {
    /// Builds a permutation from its one-line values, rejecting anything that
    /// is not a bijection of `{1, …, n}` with `n >= 1`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::NotAPermutation("empty sequence".into()));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v < 1 || v as usize > n {
                return Err(Error::NotAPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::NotAPermutation(format!("duplicate value {v}")));
            }
        }
        Ok(Self { values })
    }

    pub fn from_slice(values: &[u32]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    /// Internal constructor for values already known to form a permutation.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Value at a 1-based position.
    pub fn value_at(&self, position: usize) -> Result<u32> {
        self.values
            .get(position.wrapping_sub(1))
            .copied()
            .ok_or(Error::PositionOutOfRange {
                position,
                size: self.len(),
            })
    }

    /// True iff every interval is a singleton or the whole permutation.
    /// Sizes 1 and 2 are simple; no permutation of size 3 is.
    pub fn is_simple(&self) -> bool {
        self.scan_intervals().is_none()
    }

    /// The first nontrivial interval in (start, end) order, if any. Returns
    /// `None` exactly when the permutation is simple.
    pub fn nontrivial_interval(&self) -> Option<IntervalWitness> {
        self.scan_intervals()
    }

    /// Window scan with running min/max: positions `start..=end` form an
    /// interval iff `max - min == end - start`.
    fn scan_intervals(&self) -> Option<IntervalWitness> {
        let n = self.values.len();
        for start in 0..n {
            let mut lo = self.values[start];
            let mut hi = lo;
            for end in start + 1..n {
                lo = lo.min(self.values[end]);
                hi = hi.max(self.values[end]);
                if end - start + 1 == n {
                    break; // the whole permutation is trivial
                }
                if (hi - lo) as usize == end - start {
                    return Some(IntervalWitness {
                        start: start + 1,
                        end: end + 1,
                    });
                }
            }
        }
        None
    }

    /// True iff `pattern` occurs in `self`, i.e. some subsequence of `self`
    /// is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        pattern_occurs(pattern, self)
    }

    /// Removes the entry at a 1-based position and renormalizes the rest.
    pub fn delete_point(&self, position: usize) -> Result<Permutation> {
        let n = self.len();
        if n < 2 {
            return Err(Error::SizeTooSmall { size: n, min: 2 });
        }
        if position < 1 || position > n {
            return Err(Error::PositionOutOfRange { position, size: n });
        }
        let removed = self.values[position - 1];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != position - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Ok(Self::from_vec_unchecked(values))
    }

    /// Inserts a new point at the given slot, producing a permutation one
    /// larger. Inverse of `delete_point` at the inserted index.
    pub fn insert_point(&self, slot: GridSlot) -> Result<Permutation> {
        let n = self.len();
        if slot.position > n || slot.value < 1 || slot.value as usize > n + 1 {
            return Err(Error::SlotOutOfRange {
                position: slot.position,
                value: slot.value,
                size: n,
            });
        }
        let mut values = Vec::with_capacity(n + 1);
        for (i, &v) in self.values.iter().enumerate() {
            if i == slot.position {
                values.push(slot.value);
            }
            values.push(if v >= slot.value { v + 1 } else { v });
        }
        if slot.position == n {
            values.push(slot.value);
        }
        Ok(Self::from_vec_unchecked(values))
    }

    /// The set of simple permutations reachable by one one-point deletion.
    /// This is the out-neighbourhood in the deletion graph; it is empty
    /// exactly for exceptional permutations (and for sizes below 5).
    pub fn children(&self) -> Result<BTreeSet<Permutation>> {
        if !self.is_simple() {
            return Err(Error::NotSimple(self.to_string()));
        }
        let mut out = BTreeSet::new();
        if self.len() < 2 {
            return Ok(out);
        }
        for position in 1..=self.len() {
            let q = self.delete_point(position)?;
            if q.is_simple() {
                out.insert(q);
            }
        }
        Ok(out)
    }

    /// Number of one-point deletions that stay simple. Equals
    /// `children().len()` (distinct deletion positions of a simple
    /// permutation cannot produce the same simple result).
    pub fn simple_deletion_count(&self) -> usize {
        (1..=self.len())
            .filter(|&p| self.delete_point(p).map(|q| q.is_simple()).unwrap_or(false))
            .count()
    }

    /// All simple one-point extensions, by excluding the forbidden slots: the
    /// four diagonal neighbours of each existing point's cell and the four
    /// grid corners. Every remaining slot yields a simple permutation, and
    /// there are exactly `(n+1)(n-3)` of them.
    pub fn simple_extensions(&self) -> Result<BTreeSet<Permutation>> {
        self.extension_preflight()?;
        let n = self.len();
        let mut forbidden: HashSet<GridSlot> = HashSet::with_capacity(4 * (n + 1));
        for position in [0, n] {
            for value in [1, n as u32 + 1] {
                forbidden.insert(GridSlot { position, value });
            }
        }
        for (i, &v) in self.values.iter().enumerate() {
            // slots adjacent to the point at 1-based position i+1 in both
            // coordinates; inserting there creates a size-2 interval
            for position in [i, i + 1] {
                for value in [v, v + 1] {
                    forbidden.insert(GridSlot { position, value });
                }
            }
        }
        let mut out = BTreeSet::new();
        for position in 0..=n {
            for value in 1..=n as u32 + 1 {
                let slot = GridSlot { position, value };
                if !forbidden.contains(&slot) {
                    out.insert(self.insert_point(slot)?);
                }
            }
        }
        debug_assert_eq!(out.len(), (n + 1) * (n - 3));
        Ok(out)
    }

    /// All simple one-point extensions, by trying every slot of the
    /// `(n+1) x (n+1)` grid and filtering on simplicity. Agrees with
    /// `simple_extensions`; kept as the independent construction.
    pub fn simple_extensions_by_filter(&self) -> Result<BTreeSet<Permutation>> {
        self.extension_preflight()?;
        let n = self.len();
        let mut out = BTreeSet::new();
        for position in 0..=n {
            for value in 1..=n as u32 + 1 {
                let q = self.insert_point(GridSlot { position, value })?;
                if q.is_simple() {
                    out.insert(q);
                }
            }
        }
        Ok(out)
    }

    fn extension_preflight(&self) -> Result<()> {
        if !self.is_simple() {
            return Err(Error::NotSimple(self.to_string()));
        }
        if self.len() < 4 {
            return Err(Error::SizeTooSmall {
                size: self.len(),
                min: 4,
            });
        }
        Ok(())
    }

    pub fn reverse(&self) -> Permutation {
        let mut values = self.values.clone();
        values.reverse();
        Self::from_vec_unchecked(values)
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len() as u32;
        let values = self.values.iter().map(|&v| n + 1 - v).collect();
        Self::from_vec_unchecked(values)
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = i as u32 + 1;
        }
        Self::from_vec_unchecked(values)
    }

    pub fn symmetry(&self, op: SymmetryOp) -> Permutation {
        match op {
            SymmetryOp::Reverse => self.reverse(),
            SymmetryOp::Complement => self.complement(),
            SymmetryOp::Inverse => self.inverse(),
        }
    }

    /// The orbit of this permutation under the eight diagram symmetries
    /// (with duplicates when the permutation is symmetric).
    pub fn dihedral_images(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(8);
        for base in [self.clone(), self.inverse()] {
            let rev = base.reverse();
            out.push(base.complement());
            out.push(rev.complement());
            out.push(rev);
            out.push(base);
        }
        out
    }

    /// The pattern formed by the entries at the given 0-based positions
    /// (which must be strictly increasing).
    pub(crate) fn subpattern(&self, positions: &[usize]) -> Permutation {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let picked: Vec<u32> = positions.iter().map(|&i| self.values[i]).collect();
        let mut sorted = picked.clone();
        sorted.sort_unstable();
        let values = picked
            .iter()
            .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
            .collect();
        Self::from_vec_unchecked(values)
    }
}

/// True iff `pattern` is order-isomorphic to some subsequence of `host`.
/// Naive backtracking with order-consistency pruning; this is the oracle
/// primitive, so clarity wins over speed.
pub fn pattern_occurs(pattern: &Permutation, host: &Permutation) -> bool {
    PATTERN_TESTS.with(|c| c.set(c.get() + 1));
    let k = pattern.len();
    let n = host.len();
    if k > n {
        return false;
    }
    if k == n {
        return pattern == host;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    extend_occurrence(pattern.values(), host.values(), &mut chosen, 0)
}

fn extend_occurrence(pat: &[u32], host: &[u32], chosen: &mut Vec<usize>, start: usize) -> bool {
    let idx = chosen.len();
    if idx == pat.len() {
        return true;
    }
    for j in start..host.len() {
        if host.len() - j < pat.len() - idx {
            return false;
        }
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(t, &jt)| (pat[t] < pat[idx]) == (host[jt] < host[j]));
        if consistent {
            chosen.push(j);
            if extend_occurrence(pat, host, chosen, j + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

impl fmt::Display for Permutation {
    /// Canonical text form: space-separated decimal values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts whitespace- or comma-separated values, or a compact digit
    /// string like "2413" (only possible when all values are single digits).
    fn from_str(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        match tokens.len() {
            0 => Err(Error::MalformedInput("empty input".into())),
            1 => {
                let tok = tokens[0];
                if !tok.chars().all(|c| c.is_ascii_digit()) {
                    return Err(Error::MalformedInput(format!("bad token {tok:?}")));
                }
                if tok.len() == 1 {
                    Self::new(vec![tok.parse::<u32>().unwrap()])
                } else {
                    // compact form: one digit per entry
                    let values = tok
                        .chars()
                        .map(|c| c.to_digit(10).unwrap())
                        .collect::<Vec<_>>();
                    Self::new(values)
                }
            }
            _ => {
                let mut values = Vec::with_capacity(tokens.len());
                for tok in tokens {
                    let v: u32 = tok
                        .parse()
                        .map_err(|_| Error::MalformedInput(format!("bad token {tok:?}")))?;
                    values.push(v);
                }
                Self::new(values)
            }
        }
    }
}

/// Convenience parser used throughout the crate and tests.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        parse_permutation(s).unwrap()
    }

    #[test]
    fn parse_accepts_spaced_comma_and_compact_forms() {
        assert_eq!(p("2 4 1 3").values(), &[2, 4, 1, 3]);
        assert_eq!(p("2413").values(), &[2, 4, 1, 3]);
        assert_eq!(p("2,4,1,3").values(), &[2, 4, 1, 3]);
        assert_eq!(p("1").values(), &[1]);
        assert_eq!(p("10 2 3 4 5 6 7 8 9 1").len(), 10);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            parse_permutation("2 4 4 1"),
            Err(Error::NotAPermutation(_))
        ));
        assert!(matches!(
            parse_permutation("2 4 x 1"),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            parse_permutation(""),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            parse_permutation("2 4 1"),
            Err(Error::NotAPermutation(_))
        ));
        assert!(matches!(
            parse_permutation("0 1"),
            Err(Error::NotAPermutation(_))
        ));
    }

    #[test]
    fn display_roundtrips() {
        for s in ["1", "2 4 1 3", "5 2 6 3 7 1 4", "2 7 4 8 1 6 3 5"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn simplicity_basics() {
        assert!(p("2 4 1 3").is_simple());
        assert!(p("3 1 4 2").is_simple());
        assert!(!p("1 2 3 4").is_simple());
        assert!(p("2 6 4 7 1 5 3").is_simple());
        assert!(p("1").is_simple());
        assert!(p("1 2").is_simple());
        assert!(p("2 1").is_simple());
        // no simple permutation of size 3
        for s in ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2", "3 2 1"] {
            assert!(!p(s).is_simple(), "{s} should not be simple");
        }
    }

    #[test]
    fn interval_witness_is_first_in_scan_order() {
        assert_eq!(p("2 4 1 3").nontrivial_interval(), None);
        assert_eq!(
            p("1 3 4 2").nontrivial_interval(),
            Some(IntervalWitness { start: 2, end: 3 })
        );
        assert_eq!(
            p("4 5 3 6 1 2").nontrivial_interval(),
            Some(IntervalWitness { start: 1, end: 2 })
        );
    }

    #[test]
    fn pattern_containment() {
        assert!(pattern_occurs(&p("3 1 4 2"), &p("5 2 6 3 7 1 4")));
        assert!(!pattern_occurs(&p("2 4 1 3"), &p("3 1 4 2")));
        assert!(pattern_occurs(&p("1"), &p("3 1 4 2")));
        assert!(pattern_occurs(&p("2 4 1 3"), &p("2 4 1 3")));
        assert!(!pattern_occurs(&p("1 2 3"), &p("3 2 1")));
        assert!(p("4 2 5 1 3").contains_pattern(&p("2 4 1 3")));
    }

    #[test]
    fn delete_point_examples() {
        assert_eq!(
            p("5 2 6 3 7 1 4").delete_point(5).unwrap(),
            p("5 2 6 3 1 4")
        );
        assert_eq!(
            p("5 2 6 3 7 1 4").delete_point(6).unwrap(),
            p("4 1 5 2 6 3")
        );
        assert_eq!(p("2 4 1 3").delete_point(1).unwrap(), p("3 1 2"));
        assert!(matches!(
            p("2 4 1 3").delete_point(5),
            Err(Error::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            p("1").delete_point(1),
            Err(Error::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn insert_point_examples() {
        let slot = GridSlot {
            position: 4,
            value: 3,
        };
        assert_eq!(p("2 4 1 3").insert_point(slot).unwrap(), p("2 5 1 4 3"));
        let slot = GridSlot {
            position: 0,
            value: 2,
        };
        assert_eq!(p("1").insert_point(slot).unwrap(), p("2 1"));
        assert!(matches!(
            p("1").insert_point(GridSlot {
                position: 2,
                value: 1
            }),
            Err(Error::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn children_examples() {
        let kids = p("5 2 6 3 7 1 4").children().unwrap();
        let expected: BTreeSet<_> = ["2 5 3 6 1 4", "4 1 5 2 6 3", "5 2 6 3 1 4"]
            .iter()
            .map(|s| p(s))
            .collect();
        assert_eq!(kids, expected);

        assert!(p("2 4 6 1 3 5").children().unwrap().is_empty());
        assert!(matches!(
            p("1 2 3 4").children(),
            Err(Error::NotSimple(_))
        ));
    }

    #[test]
    fn children_of_42513_follow_the_degree_law() {
        // both one-point deletions to 2413 (drop the 4) and to 3142 (drop
        // the 1) stay simple
        let kids = p("4 2 5 1 3").children().unwrap();
        let expected: BTreeSet<_> = ["2 4 1 3", "3 1 4 2"].iter().map(|s| p(s)).collect();
        assert_eq!(kids, expected);
    }

    #[test]
    fn simple_extensions_of_2413() {
        let ext = p("2 4 1 3").simple_extensions().unwrap();
        let expected: BTreeSet<_> = [
            "2 4 1 5 3",
            "2 5 3 1 4",
            "3 1 5 2 4",
            "3 5 1 4 2",
            "4 2 5 1 3",
        ]
        .iter()
        .map(|s| p(s))
        .collect();
        assert_eq!(ext, expected);
        assert_eq!(p("3 1 4 2").simple_extensions().unwrap().len(), 5);
    }

    #[test]
    fn extension_strategies_agree_and_count() {
        for s in ["2 4 1 3", "3 1 4 2", "2 4 1 5 3", "4 1 5 2 6 3", "2 6 4 7 1 5 3"] {
            let q = p(s);
            let a = q.simple_extensions_by_filter().unwrap();
            let b = q.simple_extensions().unwrap();
            assert_eq!(a, b, "strategies disagree on {s}");
            let n = q.len();
            assert_eq!(a.len(), (n + 1) * (n - 3), "count law fails on {s}");
        }
    }

    #[test]
    fn extension_preconditions() {
        assert!(matches!(
            p("1 2 3 4").simple_extensions(),
            Err(Error::NotSimple(_))
        ));
        assert!(matches!(
            p("2 1").simple_extensions(),
            Err(Error::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn symmetries_of_2413() {
        let q = p("2 4 1 3");
        assert_eq!(q.reverse(), p("3 1 4 2"));
        assert_eq!(q.complement(), p("3 1 4 2"));
        assert_eq!(q.inverse(), p("3 1 4 2"));
        assert_eq!(q.symmetry(SymmetryOp::Reverse), q.reverse());
    }

    #[test]
    fn dihedral_orbit_has_eight_members() {
        let images = p("5 2 6 3 7 1 4").dihedral_images();
        assert_eq!(images.len(), 8);
        for q in &images {
            assert!(q.is_simple());
        }
    }

    #[test]
    fn pattern_test_counter_moves() {
        let before = pattern_test_count();
        let _ = pattern_occurs(&p("1 2"), &p("2 1"));
        assert!(pattern_test_count() > before);
    }
}
