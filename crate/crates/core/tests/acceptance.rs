//! Acceptance suite. Each test checks one release criterion end to end at
//! its stated size range and tolerance and prints a `[PASS]` line; any
//! violation fails the build. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;

use simperm::oracle::{self, PropertyId, SIMPLE_COUNT_FIXTURES};
use simperm::wreath::{self, Basis};
use simperm::{
    enumerate_simples, exceptional_of_size, find_chain, outdegree_stats, parse_permutation,
    pattern_closure, pattern_occurs, pattern_test_count, Permutation,
};

fn p(s: &str) -> Permutation {
    parse_permutation(s).unwrap()
}

fn assert_within(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

/// Level-by-level generation agrees with the factorial filter for sizes
/// 4..=8 and reproduces the frozen counts (2, 6, 46, 338, 2926).
#[test]
fn acceptance_enumeration_counts() {
    let start = Instant::now();
    let levels = enumerate_simples(8).unwrap();
    for (n, expected_count) in SIMPLE_COUNT_FIXTURES {
        let brute = oracle::brute_simples(n).unwrap();
        assert_eq!(levels[&n], brute, "level {n} differs from brute force");
        assert_eq!(levels[&n].len() as u64, expected_count, "count at {n}");
    }
    assert_within(start.elapsed(), Duration::from_secs(30), "enumeration");
    println!(
        "[PASS] enumeration counts: levels 4..=8 match brute force, counts (2, 6, 46, 338, 2926) in {:?}",
        start.elapsed()
    );
}

/// Every simple permutation of size 4..=7 has exactly (n+1)(n-3) simple
/// extensions, identically under slot exclusion and exhaustive filtering.
#[test]
fn acceptance_extension_count_law() {
    let start = Instant::now();
    let report = oracle::run_property(PropertyId::ExtensionCount, 7).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.instances, 2 + 6 + 46 + 338);
    assert_within(start.elapsed(), Duration::from_secs(60), "extension law");
    println!(
        "[PASS] extension count law: {} permutations of size 4..=7, both strategies agree in {:?}",
        report.instances,
        start.elapsed()
    );
}

/// Each simple extension of a simple permutation of size <= 6 arises from
/// exactly one insertion slot.
#[test]
fn acceptance_insertion_uniqueness() {
    let report = oracle::run_property(PropertyId::UniqueInsertion, 6).unwrap();
    assert!(report.passed(), "{report}");
    println!(
        "[PASS] insertion uniqueness: {} (host, extension) pairs up to size 6, zero counterexamples",
        report.instances
    );
}

/// Exceptional structure up to size 12: simple patterns exist exactly at
/// even sizes and are the unique same-family exceptionals; there are 2
/// exceptional permutations at size 4 and 4 at each even size 6..=12.
#[test]
fn acceptance_exceptional_structure() {
    let even = oracle::run_property(PropertyId::ExceptionalEvenPattern, 12).unwrap();
    assert!(even.passed(), "{even}");
    let unique = oracle::run_property(PropertyId::ExceptionalUniquePattern, 12).unwrap();
    assert!(unique.passed(), "{unique}");

    assert_eq!(exceptional_of_size(4).len(), 2);
    for n in [6, 8, 10, 12] {
        assert_eq!(exceptional_of_size(n).len(), 4, "size {n}");
    }
    for n in [5, 7, 9, 11] {
        assert_eq!(exceptional_of_size(n).len(), 0, "size {n}");
    }
    println!(
        "[PASS] exceptional structure: pattern laws over {} instances up to size 12, counts 2/4 per size",
        even.instances + unique.instances
    );
}

/// Chain existence laws hold exhaustively up to size 7, and the documented
/// example pair admits both the 3-step unit chain and the 2-step path
/// through the exceptional 415263.
#[test]
fn acceptance_chain_theorems() {
    let bridge = oracle::run_property(PropertyId::GapTwoBridge, 7).unwrap();
    assert!(bridge.passed(), "{bridge}");
    let unit = oracle::run_property(PropertyId::UnitChain, 7).unwrap();
    assert!(unit.passed(), "{unit}");

    let sigma = p("5 2 6 3 7 1 4");
    let pi = p("3 1 4 2");
    let chain = find_chain(&sigma, &pi).unwrap();
    assert_eq!(chain.len(), 3);
    assert!(chain.is_unit());
    for w in chain.permutations().windows(2) {
        assert_eq!(w[0].len(), w[1].len() + 1);
        assert!(w[0].children().unwrap().contains(&w[1]));
    }

    // the alternative path of length 2 through the exceptional permutation
    let graph = pattern_closure(&sigma).unwrap();
    let via = p("4 1 5 2 6 3");
    assert!(graph
        .deletion_edges()
        .contains(&(sigma.clone(), via.clone())));
    assert!(graph.exceptional_edges().contains(&(via, pi)));
    println!(
        "[PASS] chain theorems: bridge ({} instances) and unit chains ({} instances) up to size 7; example pair has a 3-step unit chain and a 2-step skip path",
        bridge.instances, unit.instances
    );
}

/// The pattern closure of 2 7 4 8 1 6 3 5 has exactly the expected level
/// profile (8:1, 7:5, 6:9, 5:5, 4:2) — 22 nodes — with the expected labels,
/// five unit edges into 2 4 1 3, and a single skip edge
/// 2 4 6 1 3 5 -> 2 4 1 3. Node sets are cross-checked against the
/// position-subset oracle.
#[test]
fn acceptance_closure_of_27481635() {
    let start = Instant::now();
    let graph = pattern_closure(&p("2 7 4 8 1 6 3 5")).unwrap();
    let elapsed = start.elapsed();

    assert_eq!(graph.node_count(), 22);
    let expected_levels: &[(usize, &[&str])] = &[
        (4, &["2 4 1 3", "3 1 4 2"]),
        (5, &["2 4 1 5 3", "2 5 3 1 4", "3 1 5 2 4", "3 5 1 4 2", "4 2 5 1 3"]),
        (
            6,
            &[
                "2 4 1 6 3 5",
                "2 4 6 1 3 5",
                "2 4 6 1 5 3",
                "2 5 3 6 1 4",
                "2 6 4 1 3 5",
                "2 6 4 1 5 3",
                "3 6 1 5 2 4",
                "5 2 6 4 1 3",
                "5 3 6 1 4 2",
            ],
        ),
        (
            7,
            &[
                "2 4 7 1 6 3 5",
                "2 6 4 7 1 3 5",
                "2 6 4 7 1 5 3",
                "2 7 4 1 6 3 5",
                "6 3 7 1 5 2 4",
            ],
        ),
        (8, &["2 7 4 8 1 6 3 5"]),
    ];
    for (n, labels) in expected_levels {
        let expected: Vec<Permutation> = labels.iter().map(|s| p(s)).collect();
        assert_eq!(graph.level(*n), expected.as_slice(), "level {n}");
    }

    let into_2413: BTreeSet<&Permutation> = graph
        .deletion_edges()
        .iter()
        .filter(|(_, child)| *child == p("2 4 1 3"))
        .map(|(parent, _)| parent)
        .collect();
    let expected_parents: BTreeSet<Permutation> =
        ["2 4 1 5 3", "2 5 3 1 4", "3 1 5 2 4", "3 5 1 4 2", "4 2 5 1 3"]
            .iter()
            .map(|s| p(s))
            .collect();
    assert_eq!(into_2413, expected_parents.iter().collect());

    assert_eq!(
        graph.exceptional_edges(),
        &[(p("2 4 6 1 3 5"), p("2 4 1 3"))]
    );

    // independent confirmation of every level by subset enumeration
    for n in 4..=8 {
        let expected = oracle::brute_simple_patterns(&p("2 7 4 8 1 6 3 5"), n).unwrap();
        let actual: BTreeSet<Permutation> = graph.level(n).iter().cloned().collect();
        assert_eq!(actual, expected, "oracle disagrees at level {n}");
    }

    assert_within(elapsed, Duration::from_secs(1), "closure");
    println!("[PASS] closure of 2 7 4 8 1 6 3 5: level profile 1/5/9/5/2 (22 nodes, oracle-confirmed), five edges into 2 4 1 3, one skip edge, in {elapsed:?}");
}

/// Degree statistics up to size 10: exact edge conservation, exact rational
/// means, the asymptotic check at n = 10, and the zero-out-degree counts.
#[test]
fn acceptance_degree_statistics() {
    let start = Instant::now();
    let stats = outdegree_stats(10).unwrap();
    let mut prev_count = 2u64; // simple permutations of size 4
    for s in &stats {
        let n = s.n as u64;
        assert_eq!(
            s.edge_count(),
            prev_count * n * (n - 4),
            "edge conservation at {n}"
        );
        assert_eq!(
            s.average_outdegree,
            Ratio::new(prev_count * n * (n - 4), s.simple_count),
            "mean out-degree at {n}"
        );
        let histogram_total: u64 = s.histogram.values().sum();
        assert_eq!(histogram_total, s.simple_count, "histogram total at {n}");
        prev_count = s.simple_count;
    }

    let by_n = |n: usize| stats.iter().find(|s| s.n == n).unwrap();
    for n in [6, 8, 10] {
        assert_eq!(by_n(n).histogram.get(&0), Some(&4), "zero-degree at {n}");
    }
    for n in [5, 7, 9] {
        assert_eq!(by_n(n).histogram.get(&0), None, "zero-degree at {n}");
    }

    // |D_10 - (10 - 4 - 4/10)| <= 0.2, compared exactly in rationals
    let d10 = by_n(10).average_outdegree;
    let d10 = Ratio::new(*d10.numer() as i128, *d10.denom() as i128);
    assert!(
        Ratio::new(27i128, 5) <= d10 && d10 <= Ratio::new(29i128, 5),
        "D_10 = {d10} too far from 28/5"
    );

    assert_within(start.elapsed(), Duration::from_secs(300), "degree stats");
    println!(
        "[PASS] degree statistics: edge conservation and exact means for 5..=10, D_10 = {d10} within 0.2 of 5.6, zero-degree counts 4/0, in {:?}",
        start.elapsed()
    );
}

/// Wreath generation agrees with the brute-force avoidance filter on every
/// level up to 8 for the documented bases, performs no containment test,
/// and examines no more candidates than the extension law allows.
#[test]
fn acceptance_wreath_generation() {
    let start = Instant::now();

    // oracle: all simple permutations by size, then filter by avoidance
    let mut simples: Vec<Vec<Permutation>> = Vec::new();
    for n in 0..=8 {
        simples.push(if n == 0 {
            Vec::new()
        } else {
            oracle::brute_simples(n).unwrap()
        });
    }
    let avoidance_filter = |basis: &[Permutation], n: usize| -> Vec<Permutation> {
        simples[n]
            .iter()
            .filter(|sigma| basis.iter().all(|b| !pattern_occurs(b, sigma)))
            .cloned()
            .collect()
    };

    let mut bases: Vec<Vec<Permutation>> = vec![vec![p("2 4 1 3"), p("3 1 4 2")]];
    for n in [4, 5] {
        for b in &simples[n] {
            bases.push(vec![b.clone()]);
        }
    }
    bases.push(vec![p("2 4 1 3"), p("3 5 1 4 2")]);
    assert_eq!(bases.len(), 10);

    for (i, basis_perms) in bases.iter().enumerate() {
        let basis = Basis::new(basis_perms.clone()).unwrap();
        let cap = if i == 0 { None } else { Some(8) };

        let tests_before = pattern_test_count();
        let result = wreath::generate(&basis, cap).unwrap();
        let generate_tests = pattern_test_count() - tests_before;
        assert_eq!(
            generate_tests, 0,
            "generate ran {generate_tests} containment tests for basis {basis_perms:?}"
        );

        for n in 1..=8usize {
            let expected = avoidance_filter(basis_perms, n);
            assert_eq!(
                result.level(n),
                expected.as_slice(),
                "basis {basis_perms:?}, level {n}"
            );
        }

        for (&n, &examined) in result.candidates_examined() {
            let budget = result.level(n - 1).len() as u64 * n as u64 * (n as u64 - 4);
            assert!(
                examined <= budget,
                "basis {basis_perms:?}, level {n}: {examined} candidates > {budget}"
            );
        }

        if i == 0 {
            assert!(result.terminated());
            for n in 4..=8 {
                assert!(result.level(n).is_empty(), "level {n} should be empty");
            }
        }
    }

    assert_within(start.elapsed(), Duration::from_secs(120), "wreath runs");
    println!(
        "[PASS] wreath generation: 10 bases match the avoidance oracle on levels 1..=8 in {:?}",
        start.elapsed()
    );
    println!("[PASS] no containment test: zero pattern tests across all generation runs");
    println!("[PASS] candidate bound: examined <= |previous level| * n(n-4) at every level");
}
