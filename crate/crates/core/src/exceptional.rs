//! The four parametric families of exceptional permutations and the
//! alternation predicates that characterize them among simple permutations.
//!
//! For every half-size `m >= 2` there is one exceptional permutation of size
//! `2m` per family:
//!
//! * type 1: `2 4 6 … (2m) 1 3 5 … (2m-1)`
//! * type 2: `(2m-1) (2m-3) … 1 (2m) (2m-2) … 2`
//! * type 3: `(m+1) 1 (m+2) 2 … (2m) m`
//! * type 4: `m (2m) (m-1) (2m-1) … 1 (m+1)`
//!
//! At size 4 the families collide pairwise: types 1 and 4 both give `2413`,
//! types 2 and 3 both give `3142`. Every even size `>= 6` has four distinct
//! exceptional permutations. They are exactly the simple permutations with no
//! simple pattern one size down, which makes them the special case in every
//! poset construction here.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExceptionalFamily {
    Type1,
    Type2,
    Type3,
    Type4,
}

impl ExceptionalFamily {
    pub const ALL: [ExceptionalFamily; 4] = [
        ExceptionalFamily::Type1,
        ExceptionalFamily::Type2,
        ExceptionalFamily::Type3,
        ExceptionalFamily::Type4,
    ];

    pub fn index(self) -> u8 {
        match self {
            ExceptionalFamily::Type1 => 1,
            ExceptionalFamily::Type2 => 2,
            ExceptionalFamily::Type3 => 3,
            ExceptionalFamily::Type4 => 4,
        }
    }

    pub fn from_index(index: u8) -> Result<Self> {
        match index {
            1 => Ok(ExceptionalFamily::Type1),
            2 => Ok(ExceptionalFamily::Type2),
            3 => Ok(ExceptionalFamily::Type3),
            4 => Ok(ExceptionalFamily::Type4),
            other => Err(Error::MalformedInput(format!(
                "exceptional type must be 1..=4, got {other}"
            ))),
        }
    }
}

/// Names one exceptional permutation: its family and half-size `m >= 2`
/// (the permutation has size `2m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExceptionalDescriptor {
    pub family: ExceptionalFamily,
    pub m: usize,
}

impl ExceptionalDescriptor {
    pub fn new(family: ExceptionalFamily, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidM(m));
        }
        Ok(Self { family, m })
    }

    pub fn size(&self) -> usize {
        2 * self.m
    }
}

/// The exceptional permutation named by a descriptor.
pub fn exceptional_perm(d: ExceptionalDescriptor) -> Result<Permutation> {
    if d.m < 2 {
        return Err(Error::InvalidM(d.m));
    }
    let m = d.m as u32;
    let values: Vec<u32> = match d.family {
        ExceptionalFamily::Type1 => (1..=m).map(|i| 2 * i).chain((1..=m).map(|i| 2 * i - 1)).collect(),
        ExceptionalFamily::Type2 => (1..=m)
            .map(|i| 2 * (m - i) + 1)
            .chain((1..=m).map(|i| 2 * (m - i + 1)))
            .collect(),
        ExceptionalFamily::Type3 => (1..=m).flat_map(|i| [m + i, i]).collect(),
        ExceptionalFamily::Type4 => (1..=m).flat_map(|i| [m + 1 - i, 2 * m + 1 - i]).collect(),
    };
    Ok(Permutation::new(values).expect("family formulas produce permutations"))
}

/// All descriptors whose permutation equals `p`. Empty iff `p` is not
/// exceptional; two descriptors at size 4, at most one at sizes >= 6.
pub fn exceptional_types_of(p: &Permutation) -> BTreeSet<ExceptionalDescriptor> {
    let n = p.len();
    let mut out = BTreeSet::new();
    if n < 4 || !n.is_multiple_of(2) {
        return out;
    }
    let m = n / 2;
    for family in ExceptionalFamily::ALL {
        let d = ExceptionalDescriptor { family, m };
        if exceptional_perm(d).expect("m >= 2") == *p {
            out.insert(d);
        }
    }
    out
}

pub fn is_exceptional(p: &Permutation) -> bool {
    !exceptional_types_of(p).is_empty()
}

/// The families under which `p` is exceptional.
pub fn exceptional_families_of(p: &Permutation) -> BTreeSet<ExceptionalFamily> {
    exceptional_types_of(p).into_iter().map(|d| d.family).collect()
}

/// The distinct exceptional permutations of size `n`, sorted. Empty for odd
/// or too-small sizes; 2 permutations at size 4, 4 at even sizes >= 6.
pub fn exceptional_of_size(n: usize) -> Vec<Permutation> {
    let mut out = BTreeSet::new();
    if n >= 4 && n.is_multiple_of(2) {
        for family in ExceptionalFamily::ALL {
            out.insert(exceptional_perm(ExceptionalDescriptor { family, m: n / 2 }).unwrap());
        }
    }
    out.into_iter().collect()
}

/// For an exceptional permutation of size `2m >= 6`, the same-family
/// exceptional of size `2m - 2`; `None` otherwise. These pairs are exactly
/// the skip edges of the poset graph.
pub fn exceptional_skip_target(p: &Permutation) -> Option<Permutation> {
    let types = exceptional_types_of(p);
    let d = types.iter().next()?;
    if d.m < 3 {
        return None;
    }
    Some(
        exceptional_perm(ExceptionalDescriptor {
            family: d.family,
            m: d.m - 1,
        })
        .unwrap(),
    )
}

/// Splits the entries into (odd values, even values) in position order when
/// every odd value sits strictly left of every even value.
fn oddleft_split(p: &Permutation) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut odds = Vec::new();
    let mut evens = Vec::new();
    for &v in p.values() {
        if v % 2 == 1 {
            if !evens.is_empty() {
                return None;
            }
            odds.push(v);
        } else {
            evens.push(v);
        }
    }
    Some((odds, evens))
}

fn increasing(seq: &[u32]) -> bool {
    seq.windows(2).all(|w| w[0] < w[1])
}

fn decreasing(seq: &[u32]) -> bool {
    seq.windows(2).all(|w| w[0] > w[1])
}

/// True iff `p` or one of its eight symmetries puts all odd entries left of
/// all even entries with both halves monotone in the same direction.
/// Degenerate below size 4 (halves of length <= 1 are trivially monotone).
pub fn is_parallel_alternation(p: &Permutation) -> bool {
    p.dihedral_images().iter().any(|q| {
        oddleft_split(q).is_some_and(|(odds, evens)| {
            (increasing(&odds) && increasing(&evens)) || (decreasing(&odds) && decreasing(&evens))
        })
    })
}

/// True iff `p` or one of its eight symmetries puts all odd entries left of
/// all even entries with the halves monotone in opposite directions.
pub fn is_wedge_alternation(p: &Permutation) -> bool {
    p.dihedral_images().iter().any(|q| {
        oddleft_split(q).is_some_and(|(odds, evens)| {
            (increasing(&odds) && decreasing(&evens)) || (decreasing(&odds) && increasing(&evens))
        })
    })
}
