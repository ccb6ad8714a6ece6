//! Bounded approximation of the identity-class word graph of a special
//! inverse presentation.
//!
//! The graph starts as a single root vertex. Each round sews, at every
//! vertex, a loop spelling each relator (merging endpoints where the
//! relator is already readable), then folds until the graph is
//! deterministic and co-deterministic. Any word labeling a root-to-root
//! path equals the identity in the presented monoid, so `Proved` results
//! are sound; `Unknown` results carry no information and report the
//! resources spent.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::benois::{Factorization, Provenance};
use crate::presentation::SpecialInversePresentation;
use crate::word::{Sign, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StephenError {
    #[error("expansion exceeded the vertex limit of {0}")]
    VertexLimit(usize),
}

/// Resource bounds for the semidecision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_rounds: usize,
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rounds: 6,
            max_vertices: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofStatus {
    Proved,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProofResult {
    pub status: ProofStatus,
    pub rounds_used: usize,
    pub vertices_used: usize,
}

impl ProofResult {
    pub fn is_proved(&self) -> bool {
        self.status == ProofStatus::Proved
    }
}

/// Rooted edge-labeled graph over a generator alphabet, with vertices in a
/// union-find structure. Edges store the positive-letter direction only;
/// an inverse letter traverses the edge backwards. After folding the graph
/// is deterministic and co-deterministic.
#[derive(Debug, Clone)]
pub struct InverseWordGraph {
    parent: Vec<u32>,
    rank: Vec<u32>,
    // Indexed by vertex id; lists may hold stale ids, canonicalized lazily.
    out_by_letter: Vec<BTreeMap<u8, Vec<u32>>>,
    in_by_letter: Vec<BTreeMap<u8, Vec<u32>>>,
    root: u32,
    live: usize,
}

impl InverseWordGraph {
    pub fn single_vertex() -> Self {
        InverseWordGraph {
            parent: vec![0],
            rank: vec![0],
            out_by_letter: vec![BTreeMap::new()],
            in_by_letter: vec![BTreeMap::new()],
            root: 0,
            live: 1,
        }
    }

    /// Path graph reading `w` from a fresh root; useful for tests and for
    /// seeding folds.
    pub fn linear(w: &Word) -> Self {
        let mut g = Self::single_vertex();
        let mut current = g.root;
        for l in w.iter() {
            let next = g.add_vertex();
            match l.sign() {
                Sign::Positive => g.add_edge(current, l.base() as u8, next),
                Sign::Negative => g.add_edge(next, l.base() as u8, current),
            }
            current = next;
        }
        g
    }

    pub fn root(&self) -> u32 {
        self.find(self.root)
    }

    pub fn live_vertices(&self) -> usize {
        self.live
    }

    pub fn add_vertex(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.rank.push(0);
        self.out_by_letter.push(BTreeMap::new());
        self.in_by_letter.push(BTreeMap::new());
        self.live += 1;
        id
    }

    pub fn add_edge(&mut self, from: u32, letter: u8, to: u32) {
        let from = self.find(from);
        let to = self.find(to);
        self.out_by_letter[from as usize]
            .entry(letter)
            .or_default()
            .push(to);
        self.in_by_letter[to as usize]
            .entry(letter)
            .or_default()
            .push(from);
    }

    pub fn find(&self, v: u32) -> u32 {
        let mut v = v;
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    fn find_compress(&mut self, v: u32) -> u32 {
        let root = self.find(v);
        let mut v = v;
        while self.parent[v as usize] != root {
            let next = self.parent[v as usize];
            self.parent[v as usize] = root;
            v = next;
        }
        root
    }

    // Merges two classes; returns the surviving representative, moving the
    // loser's adjacency into it.
    fn union(&mut self, a: u32, b: u32) -> u32 {
        let a = self.find_compress(a);
        let b = self.find_compress(b);
        if a == b {
            return a;
        }
        let (winner, loser) = if self.rank[a as usize] >= self.rank[b as usize] {
            (a, b)
        } else {
            (b, a)
        };
        if self.rank[winner as usize] == self.rank[loser as usize] {
            self.rank[winner as usize] += 1;
        }
        self.parent[loser as usize] = winner;
        self.live -= 1;
        let out = std::mem::take(&mut self.out_by_letter[loser as usize]);
        for (letter, mut targets) in out {
            self.out_by_letter[winner as usize]
                .entry(letter)
                .or_default()
                .append(&mut targets);
        }
        let inn = std::mem::take(&mut self.in_by_letter[loser as usize]);
        for (letter, mut sources) in inn {
            self.in_by_letter[winner as usize]
                .entry(letter)
                .or_default()
                .append(&mut sources);
        }
        winner
    }

    /// Folds until deterministic and co-deterministic, starting from the
    /// given seed vertices (every vertex when `seeds` is empty).
    pub fn fold_from(&mut self, seeds: impl IntoIterator<Item = u32>) {
        let mut queue: VecDeque<u32> = seeds.into_iter().collect();
        if queue.is_empty() {
            queue = (0..self.parent.len() as u32)
                .filter(|&v| self.parent[v as usize] == v)
                .collect();
        }
        while let Some(v) = queue.pop_front() {
            let v = self.find_compress(v);
            let mut pending: Vec<(u32, u32)> = Vec::new();
            for list in self.out_by_letter[v as usize].values() {
                let mut reps: Vec<u32> = list.iter().map(|&t| self.find(t)).collect();
                reps.sort_unstable();
                reps.dedup();
                if reps.len() > 1 {
                    pending.extend(reps.windows(2).map(|p| (p[0], p[1])));
                }
            }
            for list in self.in_by_letter[v as usize].values() {
                let mut reps: Vec<u32> = list.iter().map(|&s| self.find(s)).collect();
                reps.sort_unstable();
                reps.dedup();
                if reps.len() > 1 {
                    pending.extend(reps.windows(2).map(|p| (p[0], p[1])));
                }
            }
            if pending.is_empty() {
                // Canonical happy path: dedup adjacency lists in place.
                self.dedup_adjacency(v);
                continue;
            }
            for (a, b) in pending {
                let merged = self.union(a, b);
                queue.push_back(merged);
            }
            queue.push_back(v);
        }
    }

    pub fn fold(&mut self) {
        self.fold_from(std::iter::empty());
    }

    fn dedup_adjacency(&mut self, v: u32) {
        let out = std::mem::take(&mut self.out_by_letter[v as usize]);
        self.out_by_letter[v as usize] = out
            .into_iter()
            .map(|(letter, list)| {
                let mut reps: Vec<u32> = list.iter().map(|&t| self.find(t)).collect();
                reps.sort_unstable();
                reps.dedup();
                (letter, reps)
            })
            .collect();
        let inn = std::mem::take(&mut self.in_by_letter[v as usize]);
        self.in_by_letter[v as usize] = inn
            .into_iter()
            .map(|(letter, list)| {
                let mut reps: Vec<u32> = list.iter().map(|&s| self.find(s)).collect();
                reps.sort_unstable();
                reps.dedup();
                (letter, reps)
            })
            .collect();
    }

    /// Follows `w` from `from` as far as possible; returns the vertices
    /// consumed and the endpoint reached. In a folded graph the walk is
    /// unique; mid-fold ambiguity resolves to the smallest representative.
    pub fn trace(&self, from: u32, w: &Word) -> Trace {
        let mut current = self.find(from);
        for (i, l) in w.iter().enumerate() {
            let next = match l.sign() {
                Sign::Positive => self.out_by_letter[current as usize]
                    .get(&(l.base() as u8))
                    .map(|list| list.iter().map(|&t| self.find(t)).min())
                    .unwrap_or(None),
                Sign::Negative => self.in_by_letter[current as usize]
                    .get(&(l.base() as u8))
                    .map(|list| list.iter().map(|&s| self.find(s)).min())
                    .unwrap_or(None),
            };
            match next {
                Some(n) => current = n,
                None => {
                    return Trace {
                        end: current,
                        consumed: i,
                    }
                }
            }
        }
        Trace {
            end: current,
            consumed: w.len(),
        }
    }

    /// Whether `w` labels a path from the root back to the root. The word
    /// is read graphically; no free reduction is applied.
    pub fn reads_root_loop(&self, w: &Word) -> bool {
        let root = self.root();
        let t = self.trace(root, w);
        t.consumed == w.len() && t.end == root
    }

    // Sews the missing tail of a relator loop: reads `letters` from `from`
    // through fresh vertices and lands on `to`.
    fn sew_path(
        &mut self,
        from: u32,
        letters: &[crate::word::SignedLetter],
        to: u32,
        max_vertices: usize,
    ) -> Result<(), StephenError> {
        debug_assert!(!letters.is_empty());
        let needed = letters.len() - 1;
        if self.live + needed > max_vertices {
            return Err(StephenError::VertexLimit(max_vertices));
        }
        let mut current = self.find(from);
        for (i, l) in letters.iter().enumerate() {
            let target = if i == letters.len() - 1 {
                self.find(to)
            } else {
                self.add_vertex()
            };
            match l.sign() {
                Sign::Positive => self.add_edge(current, l.base() as u8, target),
                Sign::Negative => self.add_edge(target, l.base() as u8, current),
            }
            current = target;
        }
        Ok(())
    }

    /// One expansion round: for every vertex alive at the start of the
    /// round and every relator, close the relator loop at that vertex
    /// (merging when the relator is readable to a different endpoint,
    /// sewing the missing tail otherwise), folding as it goes.
    pub fn expand_round(
        &mut self,
        p: &SpecialInversePresentation,
        max_vertices: usize,
    ) -> Result<(), StephenError> {
        let snapshot: Vec<u32> = (0..self.parent.len() as u32)
            .filter(|&v| self.parent[v as usize] == v)
            .collect();
        for v in snapshot {
            for relator in p.relators() {
                let v = self.find(v);
                let t = self.trace(v, relator);
                if t.consumed == relator.len() {
                    if t.end != v {
                        let merged = self.union(v, t.end);
                        self.fold_from([merged]);
                    }
                } else {
                    let tail = &relator.letters()[t.consumed..];
                    let first_fresh = self.parent.len() as u32;
                    self.sew_path(t.end, tail, v, max_vertices)?;
                    // Non-reduced tails can make even fresh vertices fold
                    // points, so seed the whole sewn chain.
                    let mut seeds = vec![self.find(t.end), self.find(v)];
                    seeds.extend(first_fresh..self.parent.len() as u32);
                    self.fold_from(seeds);
                }
            }
        }
        self.fold();
        Ok(())
    }

    /// Canonical form: breadth-first renumbering from the root, neighbors
    /// visited per letter (positive direction first), edges sorted by
    /// (source, letter). Two folded graphs are isomorphic as rooted labeled
    /// graphs exactly when their canonical forms agree.
    pub fn canonical_form(&self) -> CanonicalGraph {
        let root = self.root();
        let mut order: BTreeMap<u32, u32> = BTreeMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut neighbors: Vec<u32> = Vec::new();
            for list in self.out_by_letter[v as usize].values() {
                let mut reps: Vec<u32> = list.iter().map(|&t| self.find(t)).collect();
                reps.sort_unstable();
                reps.dedup();
                neighbors.extend(reps);
            }
            for list in self.in_by_letter[v as usize].values() {
                let mut reps: Vec<u32> = list.iter().map(|&s| self.find(s)).collect();
                reps.sort_unstable();
                reps.dedup();
                neighbors.extend(reps);
            }
            for n in neighbors {
                if !order.contains_key(&n) {
                    let next_id = order.len() as u32;
                    order.insert(n, next_id);
                    queue.push_back(n);
                }
            }
        }
        let mut edges = Vec::new();
        for (&old, &new) in &order {
            for (&letter, list) in &self.out_by_letter[old as usize] {
                let mut reps: Vec<u32> = list.iter().map(|&t| self.find(t)).collect();
                reps.sort_unstable();
                reps.dedup();
                for t in reps {
                    if let Some(&tn) = order.get(&t) {
                        edges.push((new, letter, tn));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        CanonicalGraph {
            num_vertices: order.len(),
            edges,
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.no_parallel_departures(true)
    }

    pub fn is_codeterministic(&self) -> bool {
        self.no_parallel_departures(false)
    }

    // No live vertex has two same-letter edges in the given direction.
    fn no_parallel_departures(&self, outgoing: bool) -> bool {
        (0..self.parent.len() as u32)
            .filter(|&v| self.parent[v as usize] == v)
            .all(|v| {
                let map = if outgoing {
                    &self.out_by_letter[v as usize]
                } else {
                    &self.in_by_letter[v as usize]
                };
                map.values().all(|list| {
                    let mut reps: Vec<u32> = list.iter().map(|&x| self.find(x)).collect();
                    reps.sort_unstable();
                    reps.dedup();
                    reps.len() <= 1
                })
            })
    }

    /// DOT rendering of the canonical form; the root is vertex 0 and is
    /// drawn with a double circle.
    pub fn to_dot(&self) -> String {
        let canonical = self.canonical_form();
        let mut out =
            String::from("digraph word_graph {\n  rankdir=LR;\n  node [shape=circle];\n");
        for v in 0..canonical.num_vertices {
            if v == 0 {
                out.push_str("  v0 [shape=doublecircle];\n");
            } else {
                out.push_str(&format!("  v{v};\n"));
            }
        }
        for &(s, letter, t) in &canonical.edges {
            out.push_str(&format!(
                "  v{s} -> v{t} [label=\"{}\"];\n",
                letter as char
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trace {
    pub end: u32,
    pub consumed: usize,
}

/// BFS-canonical rooted graph; vertex 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalGraph {
    pub num_vertices: usize,
    pub edges: Vec<(u32, u8, u32)>,
}

/// A proof search owning its graph; rounds are shared across goals since
/// the expansion depends only on the presentation.
pub struct ProofSession {
    presentation: SpecialInversePresentation,
    graph: InverseWordGraph,
    rounds_done: usize,
    limit_hit: bool,
}

impl ProofSession {
    pub fn new(p: &SpecialInversePresentation) -> Self {
        ProofSession {
            presentation: p.clone(),
            graph: InverseWordGraph::single_vertex(),
            rounds_done: 0,
            limit_hit: false,
        }
    }

    pub fn graph(&self) -> &InverseWordGraph {
        &self.graph
    }

    pub fn rounds_done(&self) -> usize {
        self.rounds_done
    }

    /// Runs one more expansion round unless a limit already stopped the
    /// session; returns whether the round completed.
    pub fn advance(&mut self, limits: &Limits) -> bool {
        if self.limit_hit || self.rounds_done >= limits.max_rounds {
            return false;
        }
        match self
            .graph
            .expand_round(&self.presentation, limits.max_vertices)
        {
            Ok(()) => {
                self.rounds_done += 1;
                true
            }
            Err(StephenError::VertexLimit(_)) => {
                self.limit_hit = true;
                false
            }
        }
    }

    pub fn proves(&self, goal: &Word) -> bool {
        self.graph.reads_root_loop(goal)
    }

    fn result(&self, proved: bool) -> ProofResult {
        ProofResult {
            status: if proved {
                ProofStatus::Proved
            } else {
                ProofStatus::Unknown
            },
            rounds_used: self.rounds_done,
            vertices_used: self.graph.live_vertices(),
        }
    }
}

/// Sound semidecision of `u = 1`: alternate expansion rounds with the goal
/// check until the goal is readable as a root loop or the limits exhaust.
pub fn proves_identity(
    p: &SpecialInversePresentation,
    u: &Word,
    limits: &Limits,
) -> ProofResult {
    let mut session = ProofSession::new(p);
    if session.proves(u) {
        return session.result(true);
    }
    while session.advance(limits) {
        if session.proves(u) {
            return session.result(true);
        }
    }
    session.result(false)
}

/// Sound semidecision of invertibility: proves both `u·u⁻¹ = 1` and
/// `u⁻¹·u = 1`.
pub fn proves_invertible(
    p: &SpecialInversePresentation,
    u: &Word,
    limits: &Limits,
) -> ProofResult {
    let right = u.concat(&u.invert());
    let left = u.invert().concat(u);
    let mut session = ProofSession::new(p);
    let both = |s: &ProofSession| s.proves(&right) && s.proves(&left);
    if both(&session) {
        return session.result(true);
    }
    while session.advance(limits) {
        if both(&session) {
            return session.result(true);
        }
    }
    session.result(false)
}

/// Adds a cut at every proper prefix (not already cut) that the bounded
/// procedure proves invertible. The base must factorize the same relator.
pub fn refine_factorization(
    p: &SpecialInversePresentation,
    base: &Factorization,
    limits: &Limits,
) -> Factorization {
    let relator = base.relator().clone();
    let mut pending: Vec<usize> = (1..relator.len())
        .filter(|k| !base.cuts().contains(k))
        .collect();
    let mut cuts: Vec<usize> = base.cuts().to_vec();
    let goals: BTreeMap<usize, (Word, Word)> = pending
        .iter()
        .map(|&k| {
            let prefix = relator.segment(0, k);
            (
                k,
                (
                    prefix.concat(&prefix.invert()),
                    prefix.invert().concat(&prefix),
                ),
            )
        })
        .collect();
    let mut session = ProofSession::new(p);
    loop {
        pending.retain(|k| {
            let (right, left) = &goals[k];
            if session.proves(right) && session.proves(left) {
                cuts.push(*k);
                false
            } else {
                true
            }
        });
        if pending.is_empty() || !session.advance(limits) {
            break;
        }
    }
    Factorization::new(relator, cuts, Provenance::StephenRefined)
}
