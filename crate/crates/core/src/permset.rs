//! Size-stratified permutation sets with trie-backed membership, so that a
//! lookup costs O(length) regardless of how many permutations are stored.

use std::collections::HashMap;

use crate::perm::Permutation;

#[derive(Debug, Default)]
struct TrieNode {
    children: HashMap<u32, usize>,
    terminal: bool,
}

#[derive(Debug)]
struct Trie {
    nodes: Vec<TrieNode>,
}

impl Default for Trie {
    fn default() -> Self {
        // node 0 is the root
        Trie {
            nodes: vec![TrieNode::default()],
        }
    }
}

impl Trie {

    fn insert(&mut self, values: &[u32]) -> bool {
        let mut node = 0;
        for &v in values {
            node = match self.nodes[node].children.get(&v) {
                Some(&next) => next,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[node].children.insert(v, next);
                    next
                }
            };
        }
        !std::mem::replace(&mut self.nodes[node].terminal, true)
    }

    fn contains(&self, values: &[u32]) -> bool {
        let mut node = 0;
        for &v in values {
            match self.nodes[node].children.get(&v) {
                Some(&next) => node = next,
                None => return false,
            }
        }
        self.nodes[node].terminal
    }
}

/// A set of permutations stratified by size.
#[derive(Debug, Default)]
pub struct PermSet {
    by_size: HashMap<usize, Trie>,
    len: usize,
}

impl PermSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts, returning true when the permutation was not yet present.
    pub fn insert(&mut self, p: &Permutation) -> bool {
        let fresh = self
            .by_size
            .entry(p.len())
            .or_default()
            .insert(p.values());
        if fresh {
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.by_size
            .get(&p.len())
            .is_some_and(|t| t.contains(p.values()))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl<'a> FromIterator<&'a Permutation> for PermSet {
    fn from_iter<I: IntoIterator<Item = &'a Permutation>>(iter: I) -> Self {
        let mut set = PermSet::new();
        for p in iter {
            set.insert(p);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    #[test]
    fn insert_then_query() {
        let mut set = PermSet::new();
        let a = parse_permutation("2 4 1 3").unwrap();
        let b = parse_permutation("3 1 4 2").unwrap();
        assert!(!set.contains(&a));
        assert!(set.insert(&a));
        assert!(!set.insert(&a));
        assert!(set.contains(&a));
        assert!(!set.contains(&b));
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn prefixes_are_not_members() {
        let mut set = PermSet::new();
        set.insert(&parse_permutation("2 4 1 3").unwrap());
        // same values one shorter live in a different size stratum
        assert!(!set.contains(&parse_permutation("2 3 1").unwrap()));
    }
}
