//! Disjoint sets over vertex ids with word-valued path weights, used by the
//! folding worklist.
//!
//! Every vertex carries a fixed ghost word ρ₀ (never materialized). The
//! weight on a node's parent link is a symbol word evaluating to
//! `ρ₀(parent)·ρ₀(node)⁻¹`, so the accumulated potential toward the root
//! evaluates to `ρ₀(root)·ρ₀(node)⁻¹`. Edges queued long before their
//! endpoints merge can then be re-based lazily when they are popped.

use crate::word::Word;

pub(crate) struct WeightedUnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    /// `weight[i]` relates `i` to `parent[i]`; identity at roots.
    weight: Vec<Word>,
    symbols: usize,
}

impl WeightedUnionFind {
    pub fn new(symbols: usize) -> WeightedUnionFind {
        WeightedUnionFind { parent: Vec::new(), rank: Vec::new(), weight: Vec::new(), symbols }
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.rank.push(0);
        self.weight.push(Word::identity(self.symbols));
        id
    }

    /// Root of `i`'s class and the potential `ρ₀(root)·ρ₀(i)⁻¹`, with full
    /// path compression.
    pub fn find(&mut self, i: usize) -> (usize, Word) {
        let mut path = Vec::new();
        let mut node = i;
        while self.parent[node] != node {
            path.push(node);
            node = self.parent[node];
        }
        let root = node;
        // re-point the path at the root, accumulating absolute potentials
        let mut pot = Word::identity(self.symbols);
        for &n in path.iter().rev() {
            pot = pot.multiply(&self.weight[n]);
            self.parent[n] = root;
            self.weight[n] = pot.clone();
        }
        let out = if path.is_empty() { Word::identity(self.symbols) } else { self.weight[i].clone() };
        (root, out)
    }

    /// Unites the classes of the roots `a` and `b`, where `delta` evaluates
    /// to `ρ₀(a)·ρ₀(b)⁻¹`. Returns the surviving root.
    pub fn union_roots(&mut self, a: usize, b: usize, delta: Word) -> usize {
        debug_assert_eq!(self.parent[a], a);
        debug_assert_eq!(self.parent[b], b);
        debug_assert_ne!(a, b);
        if self.rank[a] < self.rank[b] {
            self.parent[a] = b;
            self.weight[a] = delta.inverse();
            b
        } else {
            if self.rank[a] == self.rank[b] {
                self.rank[a] += 1;
            }
            self.parent[b] = a;
            self.weight[b] = delta;
            a
        }
    }
}
