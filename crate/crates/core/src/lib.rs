//! Simple permutations and their pattern-containment poset.
//!
//! A permutation is simple when its only intervals are the singletons and
//! the whole permutation. This crate provides:
//!
//! * the point-level machinery: simplicity and interval tests, pattern
//!   containment, one-point deletions/insertions and the simple
//!   neighbourhoods they induce ([`perm`]);
//! * the four exceptional families and the alternation predicates that
//!   single them out ([`exceptional`]);
//! * level-by-level enumeration of all simple permutations, the covering
//!   graph with unit and skip edges, descending chains between comparable
//!   simple permutations, and out-degree statistics ([`poset`]);
//! * generation of the simple permutations of a wreath-closed avoidance
//!   class without any containment test ([`wreath`]);
//! * brute-force reference implementations and exhaustive property runners
//!   backing all of the above ([`oracle`]).
//!
//! All operations are pure functions over immutable values and safe to use
//! concurrently.

pub mod error;
pub mod exceptional;
pub mod export;
pub mod oracle;
pub mod perm;
pub mod permset;
pub mod poset;
pub mod wreath;

pub use error::{Error, Result};
pub use exceptional::{
    exceptional_of_size, exceptional_perm, exceptional_types_of, is_exceptional,
    is_parallel_alternation, is_wedge_alternation, ExceptionalDescriptor, ExceptionalFamily,
};
pub use export::stats_to_csv;
pub use oracle::{
    brute_simple_patterns, brute_simples, run_default_suite, run_property, PropertyId,
    PropertyReport,
};
pub use perm::{
    parse_permutation, pattern_occurs, pattern_test_count, GridSlot, IntervalWitness, Permutation,
    SymmetryOp,
};
pub use permset::PermSet;
pub use poset::{
    build_poset, enumerate_simples, find_chain, outdegree_stats, pattern_closure, Chain,
    DegreeStats, PosetGraph,
};
pub use wreath::{generate, generate_general, parse_basis_text, Basis, LevelResult};
