//! Deterministic text exports: DOT and JSON for poset graphs, CSV for degree
//! statistics. Byte-identical output for identical inputs; everything is
//! emitted in sorted order.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::exceptional::exceptional_families_of;
use crate::poset::{DegreeStats, PosetGraph};

impl PosetGraph {
    /// Graphviz DOT: one node per permutation labeled with its one-line
    /// notation, `exceptional="…"` on exceptional nodes (comma-joined family
    /// indices), solid deletion edges, dashed skip edges with `skip="2"`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph simple_poset {\n");
        for level in self.levels().values() {
            for p in level {
                let families = exceptional_families_of(p);
                if families.is_empty() {
                    let _ = writeln!(out, "  \"{p}\";");
                } else {
                    let joined = families
                        .iter()
                        .map(|f| f.index().to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    let _ = writeln!(out, "  \"{p}\" [exceptional=\"{joined}\"];");
                }
            }
        }
        for (parent, child) in self.deletion_edges() {
            let _ = writeln!(out, "  \"{parent}\" -> \"{child}\";");
        }
        for (parent, child) in self.exceptional_edges() {
            let _ = writeln!(out, "  \"{parent}\" -> \"{child}\" [style=dashed, skip=\"2\"];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let mut levels = Map::new();
        for (n, level) in self.levels() {
            levels.insert(
                n.to_string(),
                Value::Array(level.iter().map(|p| Value::String(p.to_string())).collect()),
            );
        }
        json!({
            "levels": levels,
            "deletion_edges": edge_list(self.deletion_edges()),
            "exceptional_edges": edge_list(self.exceptional_edges()),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

fn edge_list(edges: &[(crate::perm::Permutation, crate::perm::Permutation)]) -> Value {
    Value::Array(
        edges
            .iter()
            .map(|(a, b)| json!([a.to_string(), b.to_string()]))
            .collect(),
    )
}

/// CSV with header `n,s_n,k,S_n_k,D_n_num,D_n_den`, one row per (n, k) with
/// a nonzero count.
pub fn stats_to_csv(stats: &[DegreeStats]) -> String {
    let mut out = String::from("n,s_n,k,S_n_k,D_n_num,D_n_den\n");
    for s in stats {
        for (&k, &count) in &s.histogram {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                s.n,
                s.simple_count,
                k,
                count,
                s.average_outdegree.numer(),
                s.average_outdegree.denom()
            );
        }
    }
    out
}
