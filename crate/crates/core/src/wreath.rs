//! Level-by-level generation of the simple permutations in an avoidance
//! class.
//!
//! For a wreath-closed class (basis of simple permutations), a candidate of
//! size n is accepted without any containment test: it must avoid being a
//! basis element itself and every simple pattern one size down must already
//! have been generated. Candidates are the admissible one-point extensions
//! of the previous level, plus the exceptional permutations of size n
//! whenever their same-family predecessor two sizes down survived. The
//! general variant accepts arbitrary bases and replaces the closure test by
//! direct avoidance checks.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exceptional::{exceptional_perm, ExceptionalDescriptor, ExceptionalFamily};
use crate::permset::PermSet;
use crate::perm::{pattern_occurs, Permutation};

/// Levels computed without a cap abort with `CapRequired` after this many
/// sizes; see `generate_bounded` to tighten or relax it.
pub const DEFAULT_SAFETY_BOUND: usize = 64;

/// A validated basis for a wreath-closed class: finitely many simple
/// permutations, none of size 1 or 2. Sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    perms: Vec<Permutation>,
}

impl Basis {
    pub fn new(perms: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let set: BTreeSet<Permutation> = perms.into_iter().collect();
        for p in &set {
            if p.len() <= 2 {
                return Err(Error::TrivialBasisElement(p.to_string()));
            }
            if !p.is_simple() {
                return Err(Error::NonSimpleBasisElement(p.to_string()));
            }
        }
        Ok(Basis {
            perms: set.into_iter().collect(),
        })
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }
}

/// Parses the basis file format: one permutation per line, blank lines and
/// `#` comments ignored. Validation is up to the caller.
pub fn parse_basis_text(text: &str) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(line.parse()?);
    }
    Ok(out)
}

/// Output of a generation run: the per-size sets (sorted), whether the run
/// terminated on an empty frontier, the cap used, and how many candidates
/// were examined per level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelResult {
    levels: BTreeMap<usize, Vec<Permutation>>,
    terminated: bool,
    cap: Option<usize>,
    candidates_examined: BTreeMap<usize, u64>,
}

impl LevelResult {
    pub fn levels(&self) -> &BTreeMap<usize, Vec<Permutation>> {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &[Permutation] {
        self.levels.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// True when generation stopped because two consecutive levels emptied,
    /// i.e. the class contains finitely many simple permutations and all of
    /// them were produced.
    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    /// Candidates examined at each generated level (before deduplication).
    pub fn candidates_examined(&self) -> &BTreeMap<usize, u64> {
        &self.candidates_examined
    }

    pub fn to_json(&self) -> Value {
        let mut levels = Map::new();
        for (n, level) in &self.levels {
            levels.insert(
                n.to_string(),
                Value::Array(level.iter().map(|p| Value::String(p.to_string())).collect()),
            );
        }
        let mut candidates = Map::new();
        for (n, c) in &self.candidates_examined {
            candidates.insert(n.to_string(), json!(c));
        }
        json!({
            "levels": levels,
            "terminated": self.terminated,
            "cap": self.cap,
            "candidates_examined": candidates,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// Plain text listing: a `# size n (count)` header per level followed by
    /// the permutations, then the final status.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, level) in &self.levels {
            out.push_str(&format!("# size {n} ({})\n", level.len()));
            for p in level {
                out.push_str(&format!("{p}\n"));
            }
        }
        out.push_str(&format!("# terminated: {}\n", self.terminated));
        out
    }
}

enum AcceptanceRule<'a> {
    /// Keep a candidate iff every simple one-point deletion lies in the
    /// previous level. Performs no containment test.
    Closure,
    /// Keep a candidate iff it avoids every basis element.
    DirectAvoidance(&'a [Permutation]),
}

/// Generates the simple permutations of the wreath-closed class with the
/// given basis; see `generate_bounded` for the uncapped safety behaviour.
pub fn generate(basis: &Basis, cap: Option<usize>) -> Result<LevelResult> {
    generate_bounded(basis, cap, DEFAULT_SAFETY_BOUND)
}

/// As `generate`, but with an explicit safety bound: when no cap is given
/// and the frontier is still alive past `safety_bound`, the run aborts with
/// `CapRequired` rather than looping forever on an infinite class.
pub fn generate_bounded(
    basis: &Basis,
    cap: Option<usize>,
    safety_bound: usize,
) -> Result<LevelResult> {
    let seed: Vec<Permutation> = seed_level4()
        .into_iter()
        .filter(|p| !basis.perms.contains(p))
        .collect();
    run_generation(
        basis.permutations(),
        seed,
        AcceptanceRule::Closure,
        cap,
        safety_bound,
    )
}

/// The general-class variant: basis elements need not be simple, candidate
/// acceptance is by direct avoidance, and a cap is mandatory.
pub fn generate_general(basis: &[Permutation], cap: usize) -> Result<LevelResult> {
    let set: BTreeSet<Permutation> = basis.iter().cloned().collect();
    for p in &set {
        if p.len() <= 2 {
            return Err(Error::TrivialBasisElement(p.to_string()));
        }
    }
    let basis: Vec<Permutation> = set.into_iter().collect();
    let seed: Vec<Permutation> = seed_level4()
        .into_iter()
        .filter(|p| basis.iter().all(|b| !pattern_occurs(b, p)))
        .collect();
    run_generation(
        &basis.clone(),
        seed,
        AcceptanceRule::DirectAvoidance(&basis),
        cap.into(),
        DEFAULT_SAFETY_BOUND,
    )
}

fn seed_level4() -> Vec<Permutation> {
    vec![
        Permutation::from_slice(&[2, 4, 1, 3]).unwrap(),
        Permutation::from_slice(&[3, 1, 4, 2]).unwrap(),
    ]
}

fn run_generation(
    basis: &[Permutation],
    seed: Vec<Permutation>,
    rule: AcceptanceRule<'_>,
    cap: Option<usize>,
    safety_bound: usize,
) -> Result<LevelResult> {
    let basis_set: PermSet = basis.iter().collect();

    let mut levels: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    levels.insert(1, vec![Permutation::from_slice(&[1]).unwrap()]);
    levels.insert(
        2,
        vec![
            Permutation::from_slice(&[1, 2]).unwrap(),
            Permutation::from_slice(&[2, 1]).unwrap(),
        ],
    );
    levels.insert(3, Vec::new());
    levels.insert(4, seed);

    let mut prev_set: PermSet = levels[&4].iter().collect();
    let mut prev2_set: PermSet = PermSet::new(); // level 3 is always empty
    let mut candidates_examined = BTreeMap::new();

    let mut n = 5;
    let terminated = loop {
        if levels[&(n - 1)].is_empty() && levels[&(n - 2)].is_empty() {
            break true;
        }
        if let Some(cap) = cap {
            if n > cap {
                break false;
            }
        } else if n > safety_bound {
            return Err(Error::CapRequired {
                bound: safety_bound,
            });
        }

        let mut level: BTreeSet<Permutation> = BTreeSet::new();
        let mut level_set = PermSet::new();
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut examined: u64 = 0;

        for parent in &levels[&(n - 1)] {
            for candidate in parent.simple_extensions()? {
                examined += 1;
                if !seen.insert(candidate.clone()) {
                    continue;
                }
                if basis_set.contains(&candidate) {
                    continue;
                }
                let accepted = match rule {
                    AcceptanceRule::Closure => {
                        (1..=n).all(|pos| {
                            let reduced = candidate.delete_point(pos).expect("pos in range");
                            !reduced.is_simple() || prev_set.contains(&reduced)
                        })
                    }
                    AcceptanceRule::DirectAvoidance(basis) => {
                        basis.iter().all(|b| !pattern_occurs(b, &candidate))
                    }
                };
                if accepted {
                    level_set.insert(&candidate);
                    level.insert(candidate);
                }
            }
        }

        if n % 2 == 0 {
            for family in ExceptionalFamily::ALL {
                let smaller =
                    exceptional_perm(ExceptionalDescriptor { family, m: n / 2 - 1 })?;
                if !prev2_set.contains(&smaller) {
                    continue;
                }
                let candidate = exceptional_perm(ExceptionalDescriptor { family, m: n / 2 })?;
                if basis_set.contains(&candidate) {
                    continue;
                }
                if let AcceptanceRule::DirectAvoidance(basis) = rule {
                    if basis.iter().any(|b| pattern_occurs(b, &candidate)) {
                        continue;
                    }
                }
                if level.insert(candidate.clone()) {
                    level_set.insert(&candidate);
                }
            }
        }

        candidates_examined.insert(n, examined);
        levels.insert(n, level.into_iter().collect());
        prev2_set = std::mem::replace(&mut prev_set, level_set);
        n += 1;
    };

    Ok(LevelResult {
        levels,
        terminated,
        cap,
        candidates_examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn p(s: &str) -> Permutation {
        parse_permutation(s).unwrap()
    }

    fn basis(perms: &[&str]) -> Basis {
        Basis::new(perms.iter().map(|s| p(s))).unwrap()
    }

    #[test]
    fn basis_validation() {
        assert!(Basis::new([p("2 4 1 3"), p("3 1 4 2")]).is_ok());
        assert!(matches!(
            Basis::new([p("1 2")]),
            Err(Error::TrivialBasisElement(_))
        ));
        assert!(matches!(
            Basis::new([p("1")]),
            Err(Error::TrivialBasisElement(_))
        ));
        assert!(matches!(
            Basis::new([p("2 3 1 4")]),
            Err(Error::NonSimpleBasisElement(_))
        ));
    }

    #[test]
    fn basis_text_parsing() {
        let text = "# a comment\n2 4 1 3\n\n3 1 4 2  # trailing note\n";
        let parsed = parse_basis_text(text).unwrap();
        assert_eq!(parsed, vec![p("2 4 1 3"), p("3 1 4 2")]);
    }

    #[test]
    fn both_size4_simples_in_basis_terminates_immediately() {
        let result = generate(&basis(&["2 4 1 3", "3 1 4 2"]), None).unwrap();
        assert!(result.terminated());
        assert!(result.level(4).is_empty());
        assert_eq!(result.levels().keys().max(), Some(&4));
        assert_eq!(result.level(2).len(), 2);
    }

    #[test]
    fn singleton_3142_first_levels() {
        let result = generate(&basis(&["3 1 4 2"]), Some(5)).unwrap();
        assert_eq!(result.level(4), &[p("2 4 1 3")]);
        assert_eq!(result.level(5), &[p("2 5 3 1 4")]);
        assert!(!result.terminated());
    }

    #[test]
    fn singleton_2413_first_levels() {
        let result = generate(&basis(&["2 4 1 3"]), Some(5)).unwrap();
        assert_eq!(result.level(4), &[p("3 1 4 2")]);
        assert_eq!(result.level(5), &[p("4 1 3 5 2")]);
    }

    #[test]
    fn uncapped_infinite_class_hits_the_safety_bound() {
        // keeping only exceptional permutations alive: every size-5 simple
        // permutation is in the basis, so closure kills all non-exceptional
        // candidates while the exceptional injection runs forever
        let all_size5 = [
            "2 4 1 5 3",
            "2 5 3 1 4",
            "3 1 5 2 4",
            "3 5 1 4 2",
            "4 1 3 5 2",
            "4 2 5 1 3",
        ];
        let b = basis(&all_size5);
        let err = generate_bounded(&b, None, 12).unwrap_err();
        assert_eq!(err, Error::CapRequired { bound: 12 });

        let result = generate_bounded(&b, Some(10), 12).unwrap();
        assert!(!result.terminated());
        assert_eq!(result.level(5).len(), 0);
        assert_eq!(result.level(6).len(), 4);
        assert_eq!(result.level(7).len(), 0);
        assert_eq!(result.level(8).len(), 4);
        assert_eq!(result.level(10).len(), 4);
    }

    #[test]
    fn general_variant_matches_closure_variant_on_simple_bases() {
        let b = basis(&["2 4 1 3", "3 1 4 2"]);
        let closure = generate(&b, Some(6)).unwrap();
        let general = generate_general(b.permutations(), 6).unwrap();
        assert_eq!(closure.levels(), general.levels());
    }

    #[test]
    fn general_variant_accepts_non_simple_bases() {
        // avoiding 132 kills both size-4 simples
        let result = generate_general(&[p("1 3 2")], 5).unwrap();
        assert!(result.level(4).is_empty());
        assert!(result.terminated());
        assert_eq!(result.level(2).len(), 2);

        assert!(matches!(
            generate_general(&[p("2 1")], 5),
            Err(Error::TrivialBasisElement(_))
        ));
    }

    #[test]
    fn candidate_counts_respect_the_extension_law() {
        let result = generate(&basis(&["3 1 4 2"]), Some(7)).unwrap();
        for (&n, &examined) in result.candidates_examined() {
            let prev = result.level(n - 1).len() as u64;
            assert!(
                examined <= prev * (n as u64) * (n as u64 - 4),
                "level {n}: {examined} candidates from {prev} parents"
            );
        }
    }

    #[test]
    fn json_mirror_contains_levels_and_status() {
        let result = generate(&basis(&["2 4 1 3", "3 1 4 2"]), None).unwrap();
        let v = result.to_json();
        assert_eq!(v["terminated"], serde_json::json!(true));
        assert_eq!(v["levels"]["2"], serde_json::json!(["1 2", "2 1"]));
        assert_eq!(v["levels"]["4"], serde_json::json!([]));
    }
}
