//! Stallings automata for finitely generated subgroups of the free group.
//!
//! The automaton of `H = ⟨w_1, …, w_m⟩` is the folded core of the wedge of
//! petals spelling the generators: a labeled digraph with a base vertex in
//! which every vertex has at most one outgoing and one incoming edge per
//! label. A reduced word lies in `H` exactly when it labels a closed path at
//! the base.
//!
//! Every edge additionally carries a word over the *generator symbols*
//! `s_1, …, s_m`. The bookkeeping invariant (each edge's symbol word
//! evaluates, under `s_i ↦ w_i`, to `ρ(src)·x·ρ(dst)⁻¹` for a fixed ghost
//! assignment ρ of ambient words to vertices with `ρ(base) = ε`) survives
//! folding, so multiplying the symbol words along a closed base path yields
//! an expression of the traced word over the original generators — even when
//! the generating tuple is redundant.

use std::collections::VecDeque;

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::text::render_letter;
use crate::union_find::WeightedUnionFind;
use crate::word::{Letter, Word};

/// A folded core automaton for a finitely generated subgroup.
#[derive(Clone, Debug)]
pub struct StallingsAutomaton {
    rank: usize,
    base: usize,
    /// `fwd[v][g-1]` is the endpoint of the g-labeled edge leaving `v`.
    fwd: Vec<Vec<Option<usize>>>,
    /// `bwd[v][g-1]` is the origin of the g-labeled edge entering `v`.
    bwd: Vec<Vec<Option<usize>>>,
    /// Symbol word of the positive edge at `(src, g)`, over the generator
    /// symbols `s_1..s_m`.
    sym: Vec<Vec<Option<Word>>>,
    generators: Vec<Word>,
}

/// In-progress graph during folding: adjacency tables per class root plus a
/// worklist of pending edge insertions.
///
/// A table entry or queued edge `(src, g, dst, s)` satisfies
/// `ev(s) = ρ₀(src)·x_g·ρ₀(dst)⁻¹` for the *node ids* it names. Live table
/// entries always name live class roots on both endpoints (an insertion
/// resolves its endpoints first, and a dying root's rows — with their
/// paired entries elsewhere — move back to the queue wholesale). Queued
/// edges may name long-dead nodes; popping re-bases their symbol words with
/// the union-find potentials.
struct Builder {
    rank: usize,
    uf: WeightedUnionFind,
    out: Vec<Vec<Option<(usize, Word)>>>,
    inc: Vec<Vec<Option<(usize, Word)>>>,
    queue: VecDeque<(usize, usize, usize, Word)>,
}

impl Builder {
    fn new(rank: usize, symbols: usize) -> Builder {
        Builder {
            rank,
            uf: WeightedUnionFind::new(symbols),
            out: Vec::new(),
            inc: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn new_vertex(&mut self) -> usize {
        self.out.push(vec![None; self.rank]);
        self.inc.push(vec![None; self.rank]);
        self.uf.push()
    }

    /// Merges the classes of the live roots `a` and `b`, where `delta`
    /// evaluates to `ρ₀(a)·ρ₀(b)⁻¹`. The victim's incident edges return to
    /// the queue untouched; their symbol words stay valid for the node ids
    /// they name.
    fn merge(&mut self, a: usize, b: usize, delta: Word) {
        let winner = self.uf.union_roots(a, b, delta);
        let victim = if winner == a { b } else { a };
        for g in 0..self.rank {
            if let Some((dst, s)) = self.out[victim][g].take() {
                if dst == victim {
                    self.inc[victim][g] = None;
                } else {
                    self.inc[dst][g] = None;
                }
                self.queue.push_back((victim, g, dst, s));
            }
            if let Some((src, s)) = self.inc[victim][g].take() {
                debug_assert_ne!(src, victim, "loops are drained through the out row");
                self.out[src][g] = None;
                self.queue.push_back((src, g, victim, s));
            }
        }
    }

    /// Processes pending insertions until the tables are deterministic and
    /// co-deterministic. A pending edge whose slot is taken triggers a merge
    /// and is dropped: the resident entry (requeued by the merge if its own
    /// endpoint died) covers the same edge of the quotient.
    fn fold(&mut self) {
        while let Some((src0, g, dst0, s0)) = self.queue.pop_front() {
            let (src, pot_src) = self.uf.find(src0);
            let (dst, pot_dst) = self.uf.find(dst0);
            let s = pot_src.multiply(&s0).multiply(&pot_dst.inverse());
            if let Some((d2, s2)) = self.out[src][g].clone() {
                if d2 == dst {
                    continue; // parallel duplicate; the resident word stays
                }
                // two g-edges leave src: their targets coincide
                let delta = s2.inverse().multiply(&s);
                self.merge(d2, dst, delta);
                continue;
            }
            if let Some((s2, s2w)) = self.inc[dst][g].clone() {
                if s2 == src {
                    continue;
                }
                // two g-edges enter dst: their origins coincide
                let delta = s2w.multiply(&s.inverse());
                self.merge(s2, src, delta);
                continue;
            }
            self.out[src][g] = Some((dst, s.clone()));
            self.inc[dst][g] = Some((src, s));
        }
    }
}

impl StallingsAutomaton {
    /// Folds the wedge of petals for `generators` into the core automaton.
    ///
    /// An empty generator list (or all-identity generators) yields the
    /// single-vertex automaton of the trivial subgroup.
    pub fn build(rank: usize, generators: &[Word]) -> StallingsAutomaton {
        for g in generators {
            assert_eq!(g.rank(), rank, "generator rank mismatch");
        }
        let symbols = generators.len();
        let mut b = Builder::new(rank, symbols);
        let base = b.new_vertex();
        for (i, gen) in generators.iter().enumerate() {
            let letters = gen.letters();
            let mut prev = base;
            for (j, l) in letters.iter().enumerate() {
                let last = j + 1 == letters.len();
                let next = if last { base } else { b.new_vertex() };
                let s = if last {
                    let sym = Word::generator(symbols, i + 1);
                    if l.is_inverse() {
                        sym.inverse()
                    } else {
                        sym
                    }
                } else {
                    Word::identity(symbols)
                };
                let gidx = l.generator() - 1;
                if l.is_inverse() {
                    b.queue.push_back((next, gidx, prev, s));
                } else {
                    b.queue.push_back((prev, gidx, next, s));
                }
                prev = next;
            }
        }
        b.fold();
        Self::finish(b, base, rank, generators.to_vec())
    }

    /// Compacts the folded tables: prunes hanging trees, drops dead class
    /// representatives and renumbers the survivors in BFS order from the
    /// base (which keeps reports and DOT exports deterministic).
    fn finish(
        mut b: Builder,
        base0: usize,
        rank: usize,
        generators: Vec<Word>,
    ) -> StallingsAutomaton {
        let n = b.out.len();
        // The expression calculus needs ρ(base) = ε, but folding may have
        // crowned a different node of the base's class; conjugating every
        // symbol word by the base potential re-grounds the ghost assignment.
        let (base, base_pot) = b.uf.find(base0);
        // core pruning: repeatedly strip non-base vertices of degree ≤ 1
        // (rows of dead class representatives are empty, so they never trip
        // the degree check and are dropped by the reachability pass below)
        let mut removed = vec![false; n];
        let degree = |b: &Builder, v: usize| -> usize {
            (0..rank)
                .map(|g| b.out[v][g].is_some() as usize + b.inc[v][g].is_some() as usize)
                .sum()
        };
        let mut stack: Vec<usize> =
            (0..n).filter(|&v| v != base && degree(&b, v) == 1).collect();
        while let Some(v) = stack.pop() {
            if removed[v] || v == base || degree(&b, v) != 1 {
                continue;
            }
            removed[v] = true;
            for g in 0..rank {
                if let Some((dst, _)) = b.out[v][g].take() {
                    b.inc[dst][g] = None;
                    if dst != base {
                        stack.push(dst);
                    }
                }
                if let Some((src, _)) = b.inc[v][g].take() {
                    b.out[src][g] = None;
                    if src != base {
                        stack.push(src);
                    }
                }
            }
        }
        // BFS renumbering from the base
        let mut id = vec![usize::MAX; n];
        let mut order: Vec<usize> = Vec::new();
        id[base] = 0;
        order.push(base);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for g in 0..rank {
                let visit = |w: usize, id: &mut Vec<usize>, order: &mut Vec<usize>| {
                    if !removed[w] && id[w] == usize::MAX {
                        id[w] = order.len();
                        order.push(w);
                    }
                };
                if let Some((dst, _)) = &b.out[v][g] {
                    visit(*dst, &mut id, &mut order);
                }
                if let Some((src, _)) = &b.inc[v][g] {
                    visit(*src, &mut id, &mut order);
                }
            }
        }
        let count = order.len();
        let mut fwd = vec![vec![None; rank]; count];
        let mut bwd = vec![vec![None; rank]; count];
        let mut sym = vec![vec![None; rank]; count];
        let base_pot_inv = base_pot.inverse();
        for (new_v, &old_v) in order.iter().enumerate() {
            for g in 0..rank {
                if let Some((dst, s)) = &b.out[old_v][g] {
                    fwd[new_v][g] = Some(id[*dst]);
                    let s = if base_pot.is_empty() {
                        s.clone()
                    } else {
                        base_pot_inv.multiply(s).multiply(&base_pot)
                    };
                    sym[new_v][g] = Some(s);
                }
                if let Some((src, _)) = &b.inc[old_v][g] {
                    bwd[new_v][g] = Some(id[*src]);
                }
            }
        }
        StallingsAutomaton { rank, base: 0, fwd, bwd, sym, generators }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.fwd.len()
    }

    pub fn edge_count(&self) -> usize {
        self.fwd.iter().map(|row| row.iter().flatten().count()).sum()
    }

    /// The generating tuple the automaton was built from.
    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// Endpoint of the path reading `u` from `from`, if the whole word can
    /// be traced.
    fn trace(&self, from: usize, u: &Word) -> Option<usize> {
        let mut v = from;
        for l in u.letters() {
            let g = l.generator() - 1;
            v = if l.is_inverse() { self.bwd[v][g]? } else { self.fwd[v][g]? };
        }
        Some(v)
    }

    /// Whether `u` belongs to the subgroup.
    pub fn member(&self, u: &Word) -> bool {
        assert_eq!(u.rank(), self.rank, "rank mismatch in member");
        self.trace(self.base, u) == Some(self.base)
    }

    /// Spanning tree plus, per non-tree edge, its expression over the
    /// generator symbols. The non-tree edges biject with a free basis of the
    /// subgroup.
    pub fn expression_table(&self) -> ExpressionTable {
        let n = self.vertex_count();
        let m = self.generators.len();
        let mut tau: Vec<Option<Word>> = vec![None; n];
        let mut tree: Vec<Option<TreeLink>> = vec![None; n];
        let mut istree = vec![vec![false; self.rank]; n];
        tau[self.base] = Some(Word::identity(m));
        let mut order = vec![self.base];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let tau_v = tau[v].clone().expect("visited vertices carry tau");
            for g in 0..self.rank {
                if let Some(child) = self.fwd[v][g] {
                    if tau[child].is_none() {
                        let s = self.sym[v][g].as_ref().expect("edge has symbol word");
                        tau[child] = Some(s.inverse().multiply(&tau_v));
                        tree[child] = Some(TreeLink { parent: v, generator: g + 1, forward: true });
                        istree[v][g] = true;
                        order.push(child);
                    }
                }
                if let Some(child) = self.bwd[v][g] {
                    if tau[child].is_none() {
                        let s = self.sym[child][g].as_ref().expect("edge has symbol word");
                        tau[child] = Some(s.multiply(&tau_v));
                        tree[child] =
                            Some(TreeLink { parent: v, generator: g + 1, forward: false });
                        istree[child][g] = true;
                        order.push(child);
                    }
                }
            }
        }
        let mut mexpr = vec![vec![None; self.rank]; n];
        let mut basis = Vec::new();
        for v in 0..n {
            for g in 0..self.rank {
                if let Some(dst) = self.fwd[v][g] {
                    if !istree[v][g] {
                        let s = self.sym[v][g].as_ref().unwrap();
                        let tv = tau[v].as_ref().expect("core automaton is connected");
                        let td = tau[dst].as_ref().unwrap();
                        let m_word = tv.inverse().multiply(s).multiply(td);
                        basis.push(BasisEdge {
                            source: v,
                            generator: g + 1,
                            target: dst,
                            expression: m_word.clone(),
                        });
                        mexpr[v][g] = Some(m_word);
                    }
                }
            }
        }
        ExpressionTable { tree, istree, basis, mexpr }
    }

    /// Rewrites a member word as an abstract word over the generator
    /// symbols `s_1..s_m`: substituting the generator words back in and
    /// reducing recovers `u` exactly.
    pub fn express(&self, table: &ExpressionTable, u: &Word) -> Result<Word> {
        assert_eq!(u.rank(), self.rank, "rank mismatch in express");
        let m = self.generators.len();
        let mut acc = Word::identity(m);
        let mut v = self.base;
        for l in u.letters() {
            let g = l.generator() - 1;
            if l.is_inverse() {
                let src = self.bwd[v][g].ok_or(Error::NotInSubgroup)?;
                if !table.istree[src][g] {
                    acc = acc.multiply(&table.mexpr[src][g].as_ref().unwrap().inverse());
                }
                v = src;
            } else {
                let dst = self.fwd[v][g].ok_or(Error::NotInSubgroup)?;
                if !table.istree[v][g] {
                    acc = acc.multiply(table.mexpr[v][g].as_ref().unwrap());
                }
                v = dst;
            }
        }
        if v != self.base {
            return Err(Error::NotInSubgroup);
        }
        Ok(acc)
    }

    /// Decides whether `r^m · g0` lies in the subgroup for some integer `m`
    /// and returns such an `m` (smallest absolute value, positive first).
    ///
    /// `r` must be nonempty and cyclically reduced; then for `|m| ≥ m₀ =
    /// ⌈|g0|/|r|⌉ + 1` the reduced form stabilizes to `r^(m∓m₀)·t` with a
    /// fixed tail, and reading `r` repeatedly from any vertex is eventually
    /// periodic with preperiod + period ≤ |V|. Scanning the window
    /// `|m| ≤ m₀ + |V| + 1` is therefore a complete decision procedure.
    pub fn coset_intersects(&self, r: &Word, g0: &Word) -> Option<i64> {
        assert!(!r.is_empty(), "coset_intersects requires a nonempty r");
        let first = r.letters()[0];
        let last = r.letters()[r.len() - 1];
        assert!(first != last.inverse(), "coset_intersects requires cyclically reduced r");
        assert_eq!(r.rank(), self.rank, "rank mismatch");
        assert_eq!(g0.rank(), self.rank, "rank mismatch");
        if self.member(g0) {
            return Some(0);
        }
        let m0 = g0.len().div_ceil(r.len()) + 1;
        let window = (m0 + self.vertex_count() + 1) as i64;
        let r_inv = r.inverse();
        let mut pos = g0.clone();
        let mut neg = g0.clone();
        for m in 1..=window {
            pos = r.multiply(&pos);
            if self.member(&pos) {
                return Some(m);
            }
            neg = r_inv.multiply(&neg);
            if self.member(&neg) {
                return Some(-m);
            }
        }
        None
    }

    /// DOT rendering of the automaton (positive edges only; the base vertex
    /// is drawn double-circled).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph stallings {\n  rankdir=LR;\n");
        for v in 0..self.vertex_count() {
            let shape = if v == self.base { "doublecircle" } else { "circle" };
            out.push_str(&format!("  {v} [shape={shape}];\n"));
        }
        for v in 0..self.vertex_count() {
            for g in 0..self.rank {
                if let Some(dst) = self.fwd[v][g] {
                    let label = render_letter(Letter::new(g + 1, false));
                    out.push_str(&format!("  {v} -> {dst} [label=\"{label}\"];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug)]
pub struct TreeLink {
    pub parent: usize,
    /// 1-based edge label.
    pub generator: usize,
    /// `true` when the tree edge runs parent → child in positive
    /// orientation.
    pub forward: bool,
}

/// A non-tree edge together with its expression over the generator symbols.
#[derive(Clone, Debug)]
pub struct BasisEdge {
    pub source: usize,
    pub generator: usize,
    pub target: usize,
    pub expression: Word,
}

/// Spanning tree of an automaton plus the symbol expressions of the
/// non-tree edges; tree edges contribute nothing to an expression.
#[derive(Clone, Debug)]
pub struct ExpressionTable {
    tree: Vec<Option<TreeLink>>,
    istree: Vec<Vec<bool>>,
    basis: Vec<BasisEdge>,
    mexpr: Vec<Vec<Option<Word>>>,
}

impl ExpressionTable {
    pub fn tree_link(&self, vertex: usize) -> Option<&TreeLink> {
        self.tree[vertex].as_ref()
    }

    /// The non-tree edges; they biject with a free basis of the subgroup.
    pub fn basis(&self) -> &[BasisEdge] {
        &self.basis
    }
}

/// One preimage of `v` under `phi`, if `v ∈ im(phi)`.
///
/// The expression of `v` over the images `(x_i)φ` turns into a preimage by
/// reading its symbols as the generators `x_i` themselves.
pub fn preimage(phi: &Endomorphism, v: &Word) -> Option<Word> {
    let aut = phi.image_automaton();
    let table = aut.expression_table();
    preimage_via(&aut, &table, v)
}

pub(crate) fn preimage_via(
    aut: &StallingsAutomaton,
    table: &ExpressionTable,
    v: &Word,
) -> Option<Word> {
    aut.express(table, v).ok()
}

impl Endomorphism {
    /// Stallings automaton of the image subgroup `⟨(x_1)φ, …, (x_n)φ⟩`.
    pub fn image_automaton(&self) -> StallingsAutomaton {
        StallingsAutomaton::build(self.rank(), self.images())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_endomorphism, parse_word, render_expression};
    use rand::{Rng, SeedableRng};

    fn w(text: &str, rank: usize) -> Word {
        parse_word(text, rank).unwrap()
    }

    fn subgroup(gens: &[&str], rank: usize) -> StallingsAutomaton {
        let gens: Vec<Word> = gens.iter().map(|t| w(t, rank)).collect();
        StallingsAutomaton::build(rank, &gens)
    }

    #[test]
    fn build_examples() {
        let h = subgroup(&["a"], 2);
        assert_eq!((h.vertex_count(), h.edge_count()), (1, 1));
        assert!(h.member(&w("a", 2)));
        assert!(!h.member(&w("b", 2)));

        let h = subgroup(&["aa", "b"], 2);
        assert_eq!((h.vertex_count(), h.edge_count()), (2, 3));
        assert!(h.member(&w("aab", 2)));
        assert!(!h.member(&w("a", 2)));
        assert!(h.member(&Word::identity(2)));

        let h = subgroup(&["ab", "b"], 2);
        assert!(h.member(&w("a", 2))); // a = (ab)·b⁻¹
        assert_eq!((h.vertex_count(), h.edge_count()), (1, 2));
    }

    #[test]
    fn trivial_subgroup() {
        let h = StallingsAutomaton::build(2, &[]);
        assert_eq!((h.vertex_count(), h.edge_count()), (1, 0));
        assert!(h.member(&Word::identity(2)));
        assert!(!h.member(&w("a", 2)));
        let h = subgroup(&["1"], 2);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn membership_examples() {
        let h = subgroup(&["aa", "b"], 2);
        // enumeration of all subgroup elements of length ≤ 1 is {ε}: a ∉ H
        assert!(!h.member(&w("a", 2)));
        assert!(h.member(&w("aabaa", 2)));
        assert!(h.member(&w("AAb", 2)));
        assert!(!h.member(&w("ab", 2)));
    }

    #[test]
    fn express_examples() {
        let h = subgroup(&["ab", "b"], 2);
        let t = h.expression_table();
        let e = h.express(&t, &w("a", 2)).unwrap();
        assert_eq!(render_expression(&e), "g1 g2^-1");
        assert_eq!(e.substitute(h.generators()), w("a", 2));

        let h = subgroup(&["aa", "b"], 2);
        let t = h.expression_table();
        let e = h.express(&t, &w("aab", 2)).unwrap();
        assert_eq!(render_expression(&e), "g1 g2");

        let h = subgroup(&["a"], 2);
        let t = h.expression_table();
        let e = h.express(&t, &w("aaa", 2)).unwrap();
        assert_eq!(render_expression(&e), "g1 g1 g1");

        assert_eq!(h.express(&t, &w("b", 2)), Err(Error::NotInSubgroup));
    }

    #[test]
    fn basis_size_matches_rank_formula() {
        let h = subgroup(&["aa", "b"], 2);
        let t = h.expression_table();
        assert_eq!(t.basis().len(), h.edge_count() - h.vertex_count() + 1);
        assert_eq!(t.basis().len(), 2);
        // redundant tuple: ⟨a, a²⟩ is just ⟨a⟩, basis has one element
        let h = subgroup(&["a", "aa"], 2);
        let t = h.expression_table();
        assert_eq!(t.basis().len(), 1);
    }

    #[test]
    fn express_handles_redundant_generators() {
        let h = subgroup(&["a", "aa"], 2);
        let t = h.expression_table();
        for text in ["a", "aa", "aaa", "A"] {
            let u = w(text, 2);
            let e = h.express(&t, &u).unwrap();
            assert_eq!(e.substitute(h.generators()), u);
        }
    }

    #[test]
    fn preimage_examples() {
        let f = parse_endomorphism("a=ab;b=b", 2).unwrap();
        let v1 = preimage(&f, &w("a", 2)).unwrap();
        assert_eq!(f.apply(&v1), w("a", 2));
        assert_eq!(v1, w("aB", 2));

        let id = Endomorphism::identity(2);
        let u = w("abAB", 2);
        assert_eq!(preimage(&id, &u), Some(u));

        let f = parse_endomorphism("a=aa;b=b", 2).unwrap();
        assert_eq!(preimage(&f, &w("a", 2)), None);
    }

    #[test]
    fn preimage_soundness_on_absent() {
        // whenever preimage reports absent, no word of length ≤ 6 maps to v
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut all = vec![Word::identity(2)];
        let mut frontier = vec![Word::identity(2)];
        for _ in 0..6 {
            let mut next = Vec::new();
            for wrd in &frontier {
                for g in 1..=2 {
                    for inv in [false, true] {
                        let ext =
                            wrd.multiply(&Word::from_letters(2, [Letter::new(g, inv)]).unwrap());
                        if ext.len() == wrd.len() + 1 {
                            next.push(ext);
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        for _ in 0..25 {
            let images = (0..2)
                .map(|_| {
                    let len = rng.gen_range(0..=2);
                    Word::from_letters(
                        2,
                        (0..len)
                            .map(|_| Letter::new(rng.gen_range(1..=2), rng.gen()))
                            .collect::<Vec<_>>(),
                    )
                    .unwrap()
                })
                .collect();
            let f = Endomorphism::new(images).unwrap();
            let len = rng.gen_range(0..=4);
            let v = Word::from_letters(
                2,
                (0..len).map(|_| Letter::new(rng.gen_range(1..=2), rng.gen())).collect::<Vec<_>>(),
            )
            .unwrap();
            match preimage(&f, &v) {
                Some(p) => assert_eq!(f.apply(&p), v),
                None => assert!(all.iter().all(|cand| f.apply(cand) != v)),
            }
        }
    }

    #[test]
    fn coset_intersects_examples() {
        let h = subgroup(&["aa", "b"], 2);
        assert_eq!(h.coset_intersects(&w("a", 2), &w("b", 2)), Some(0));
        assert_eq!(h.coset_intersects(&w("a", 2), &w("Ab", 2)), Some(1));
        assert_eq!(h.coset_intersects(&w("a", 2), &w("ba", 2)), None);
        // brute confirmation for the absent answer
        for m in -20i64..=20 {
            assert!(!h.member(&w("a", 2).pow(m).multiply(&w("ba", 2))));
        }
    }

    #[test]
    #[should_panic(expected = "cyclically reduced")]
    fn coset_intersects_rejects_non_cyclically_reduced() {
        let h = subgroup(&["aa", "b"], 2);
        let _ = h.coset_intersects(&w("aba^-1", 2), &w("b", 2));
    }

    fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
        let len = rng.gen_range(0..=max_len);
        Word::from_letters(
            rank,
            (0..len).map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen())).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn coset_intersects_agrees_with_wide_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(32);
        for _ in 0..60 {
            let rank = 2;
            let gens: Vec<Word> =
                (0..rng.gen_range(1..=2)).map(|_| random_word(&mut rng, rank, 4)).collect();
            let h = StallingsAutomaton::build(rank, &gens);
            let mut r = random_word(&mut rng, rank, 3);
            if r.is_empty() {
                r = w("a", 2);
            }
            let r = r.cyclically_reduce().canonical().clone();
            let r = if r.is_empty() { w("a", 2) } else { r };
            let g0 = random_word(&mut rng, rank, 4);
            let window = (g0.len().div_ceil(r.len()) + 1 + h.vertex_count() + 1) as i64;
            let wide = 3 * window;
            let brute = (-wide..=wide).find(|&m| h.member(&r.pow(m).multiply(&g0)));
            match h.coset_intersects(&r, &g0) {
                Some(m) => {
                    assert!(h.member(&r.pow(m).multiply(&g0)));
                    assert!(brute.is_some());
                }
                None => assert_eq!(brute, None),
            }
        }
    }

    #[test]
    fn folding_is_confluent_under_permutation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for _ in 0..40 {
            let rank = rng.gen_range(1..=3);
            let mut gens: Vec<Word> =
                (0..rng.gen_range(1..=3)).map(|_| random_word(&mut rng, rank, 4)).collect();
            let h1 = StallingsAutomaton::build(rank, &gens);
            gens.reverse();
            let h2 = StallingsAutomaton::build(rank, &gens);
            assert_eq!(h1.vertex_count(), h2.vertex_count());
            assert_eq!(h1.edge_count(), h2.edge_count());
            for g in h1.generators() {
                assert!(h2.member(g));
            }
            for g in h2.generators() {
                assert!(h1.member(g));
            }
        }
    }

    #[test]
    fn member_agrees_with_enumeration_and_certificates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(34);
        for _ in 0..40 {
            let rank = rng.gen_range(2..=3);
            let gens: Vec<Word> =
                (0..rng.gen_range(1..=3)).map(|_| random_word(&mut rng, rank, 4)).collect();
            let h = StallingsAutomaton::build(rank, &gens);
            let table = h.expression_table();
            // every product of ≤ 4 generators is a member and expressible
            let mut products = vec![Word::identity(rank)];
            let mut frontier = vec![Word::identity(rank)];
            for _ in 0..4 {
                let mut next = Vec::new();
                for p in &frontier {
                    for g in &gens {
                        next.push(p.multiply(g));
                        next.push(p.multiply(&g.inverse()));
                    }
                }
                products.extend(next.iter().cloned());
                frontier = next;
            }
            for p in &products {
                assert!(h.member(p));
                let e = h.express(&table, p).unwrap();
                assert_eq!(&e.substitute(&gens), p);
            }
            // membership positives always certify by resubstitution
            for _ in 0..10 {
                let u = random_word(&mut rng, rank, 6);
                if h.member(&u) {
                    let e = h.express(&table, &u).unwrap();
                    assert_eq!(e.substitute(&gens), u);
                } else {
                    assert!(h.express(&table, &u).is_err());
                }
            }
        }
    }

    #[test]
    fn dot_export_is_stable() {
        let h = subgroup(&["aa", "b"], 2);
        let dot = h.to_dot();
        assert_eq!(
            dot,
            "digraph stallings {\n  rankdir=LR;\n  0 [shape=doublecircle];\n  1 [shape=circle];\n  0 -> 1 [label=\"a\"];\n  0 -> 0 [label=\"b\"];\n  1 -> 0 [label=\"a\"];\n}\n"
        );
    }
}
