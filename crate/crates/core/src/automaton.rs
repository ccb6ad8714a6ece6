//! Submonoid membership in free groups via saturated flower automata.
//!
//! For a finite set `X` of reduced words, [`flower`] builds a one-base-state
//! automaton accepting `X*` as unreduced words, and [`FgAutomaton::saturate`]
//! adds ε-transitions to a fixpoint so that a reduced word is accepted
//! exactly when it is the free reduction of some product of elements of `X`.
//! [`SubmonoidOracle`] packages the saturated automaton behind a membership
//! query that reduces its input first.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::word::{Alphabet, SignedLetter, Word};

pub type StateId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("saturation exceeded the configured ε-transition limit of {0}")]
    EpsilonLimit(usize),
}

/// A finite set of reduced words generating a submonoid of the free group.
///
/// Words are stored freely reduced, deduplicated, and sorted; the empty
/// word is dropped since it generates nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl GeneratingSet {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Self {
        let mut reduced: Vec<Word> = words
            .into_iter()
            .map(|w| w.free_reduce())
            .filter(|w| !w.is_empty())
            .collect();
        reduced.sort();
        reduced.dedup();
        GeneratingSet {
            alphabet,
            words: reduced,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        self.words.binary_search(&w.free_reduce()).is_ok()
    }
}

/// Nondeterministic automaton over signed letters with ε-transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgAutomaton {
    num_states: u32,
    transitions: BTreeSet<(StateId, SignedLetter, StateId)>,
    epsilons: BTreeSet<(StateId, StateId)>,
    initial: StateId,
    finals: BTreeSet<StateId>,
}

impl FgAutomaton {
    /// Single-state automaton accepting only the empty word.
    pub fn epsilon_only() -> Self {
        FgAutomaton {
            num_states: 1,
            transitions: BTreeSet::new(),
            epsilons: BTreeSet::new(),
            initial: 0,
            finals: BTreeSet::from([0]),
        }
    }

    pub fn num_states(&self) -> u32 {
        self.num_states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn transitions(&self) -> &BTreeSet<(StateId, SignedLetter, StateId)> {
        &self.transitions
    }

    pub fn epsilons(&self) -> &BTreeSet<(StateId, StateId)> {
        &self.epsilons
    }

    fn add_state(&mut self) -> StateId {
        let id = self.num_states;
        self.num_states += 1;
        id
    }

    /// Saturates with no practical ε budget.
    pub fn saturate(&mut self) {
        self.saturate_with_limit(usize::MAX)
            .expect("unlimited saturation cannot hit the ε budget");
    }

    /// Adds ε-transitions to the fixpoint of the rule: whenever `p` reaches
    /// `r` by a letter `s` and `r` reaches `q` by `s⁻¹` (ε-edges allowed on
    /// the way), add `ε(p, q)`. The stored ε-relation is transitively closed.
    pub fn saturate_with_limit(&mut self, max_epsilons: usize) -> Result<(), AutomatonError> {
        let n = self.num_states as usize;
        // reach[p] ∋ q  ⟺  p ⇒ε q (reflexive); coreach is the transpose.
        let mut reach = BitMatrix::identity(n);
        let mut coreach = BitMatrix::identity(n);

        let mut in_edges: Vec<Vec<(StateId, SignedLetter)>> = vec![Vec::new(); n];
        let mut out_edges: Vec<Vec<(SignedLetter, StateId)>> = vec![Vec::new(); n];
        for &(p, s, q) in &self.transitions {
            in_edges[q as usize].push((p, s));
            out_edges[p as usize].push((s, q));
        }

        let mut count = 0usize;
        let mut worklist: Vec<(StateId, StateId)> = Vec::new();

        // Seed the closure with any pre-existing ε-edges.
        let seeds: Vec<(StateId, StateId)> = self.epsilons.iter().copied().collect();
        for (u, v) in seeds {
            add_closed(
                u,
                v,
                &mut reach,
                &mut coreach,
                &mut count,
                &mut worklist,
                max_epsilons,
            )?;
        }
        // Identity pairs let the rule fire on plain two-edge cancellations.
        for v in 0..n as StateId {
            worklist.push((v, v));
        }

        while let Some((u, v)) = worklist.pop() {
            for &(p, s) in &in_edges[u as usize] {
                let sbar = s.inverse();
                for &(t, q) in &out_edges[v as usize] {
                    if t == sbar && !reach.get(p as usize, q as usize) {
                        add_closed(
                            p,
                            q,
                            &mut reach,
                            &mut coreach,
                            &mut count,
                            &mut worklist,
                            max_epsilons,
                        )?;
                    }
                }
            }
        }

        self.epsilons.clear();
        for p in 0..n {
            for q in reach.row_iter(p) {
                if p != q {
                    self.epsilons.insert((p as StateId, q as StateId));
                }
            }
        }
        Ok(())
    }

    /// Raw NFA acceptance of the given word (ε-edges free, no reduction).
    pub fn accepts(&self, w: &Word) -> bool {
        let mut current = self.closure_of(std::iter::once(self.initial));
        for &letter in w.iter() {
            let mut next = BTreeSet::new();
            for &s in &current {
                for &(_, _, t) in self
                    .transitions
                    .range((s, letter, 0)..=(s, letter, StateId::MAX))
                {
                    next.insert(t);
                }
            }
            if next.is_empty() {
                return false;
            }
            current = self.closure_of(next.into_iter());
        }
        current.iter().any(|s| self.finals.contains(s))
    }

    // One hop suffices: the stored ε-relation is transitively closed.
    fn closure_of(&self, states: impl Iterator<Item = StateId>) -> BTreeSet<StateId> {
        let mut out = BTreeSet::new();
        for s in states {
            out.insert(s);
            for &(_, t) in self.epsilons.range((s, 0)..=(s, StateId::MAX)) {
                out.insert(t);
            }
        }
        out
    }

    /// Deterministic DOT rendering: states sorted by id, letter edges sorted
    /// lexicographically, then ε-edges. Inverse letters appear as `a^-1`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph fg_automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for s in 0..self.num_states {
            let mut attrs = Vec::new();
            if self.finals.contains(&s) {
                attrs.push("shape=doublecircle".to_string());
            }
            if s == self.initial {
                attrs.push("penwidth=2".to_string());
            }
            if attrs.is_empty() {
                out.push_str(&format!("  q{s};\n"));
            } else {
                out.push_str(&format!("  q{s} [{}];\n", attrs.join(", ")));
            }
        }
        for &(p, s, q) in &self.transitions {
            out.push_str(&format!("  q{p} -> q{q} [label=\"{}\"];\n", s.display_label()));
        }
        for &(p, q) in &self.epsilons {
            out.push_str(&format!("  q{p} -> q{q} [label=\"ε\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn add_closed(
    u: StateId,
    v: StateId,
    reach: &mut BitMatrix,
    coreach: &mut BitMatrix,
    count: &mut usize,
    worklist: &mut Vec<(StateId, StateId)>,
    max_epsilons: usize,
) -> Result<(), AutomatonError> {
    if reach.get(u as usize, v as usize) {
        return Ok(());
    }
    // Insert (u,v) together with everything forced by transitivity.
    let xs: Vec<usize> = coreach.row_iter(u as usize).collect();
    let ys: Vec<usize> = reach.row_iter(v as usize).collect();
    for &x in &xs {
        for &y in &ys {
            if !reach.get(x, y) {
                reach.set(x, y);
                coreach.set(y, x);
                if x != y {
                    *count += 1;
                    if *count > max_epsilons {
                        return Err(AutomatonError::EpsilonLimit(max_epsilons));
                    }
                }
                worklist.push((x as StateId, y as StateId));
            }
        }
    }
    Ok(())
}

/// Flower automaton for `X*`: one base state that is both initial and final,
/// with a fresh simple cycle spelling each nonempty generator (one-letter
/// generators become self-loops at the base).
pub fn flower(gens: &GeneratingSet) -> FgAutomaton {
    let mut a = FgAutomaton::epsilon_only();
    let base = a.initial;
    for word in gens.words() {
        let letters = word.letters();
        let mut current = base;
        for (i, &l) in letters.iter().enumerate() {
            let target = if i + 1 == letters.len() {
                base
            } else {
                a.add_state()
            };
            a.transitions.insert((current, l, target));
            current = target;
        }
    }
    a
}

/// A saturated flower automaton answering membership in `⟨X⟩`, the
/// submonoid of the free group generated by `X`.
#[derive(Debug, Clone)]
pub struct SubmonoidOracle {
    automaton: FgAutomaton,
}

impl SubmonoidOracle {
    pub fn new(gens: &GeneratingSet) -> Self {
        let mut automaton = flower(gens);
        automaton.saturate();
        SubmonoidOracle { automaton }
    }

    /// True when the free reduction of `w` represents an element of `⟨X⟩`.
    pub fn contains(&self, w: &Word) -> bool {
        self.automaton.accepts(&w.free_reduce())
    }

    pub fn automaton(&self) -> &FgAutomaton {
        &self.automaton
    }
}

/// One-shot membership query; builds and saturates a fresh automaton.
pub fn submonoid_contains(gens: &GeneratingSet, w: &Word) -> bool {
    SubmonoidOracle::new(gens).contains(w)
}

/// Whether the identity is a *nonempty* product of elements of `X`.
///
/// Reduction: `1 ∈ X⁺` iff some `x ∈ X` has `x⁻¹ ∈ ⟨X⟩` (split a vanishing
/// nonempty product after its first factor).
pub fn subsemigroup_contains_identity(gens: &GeneratingSet) -> bool {
    let oracle = SubmonoidOracle::new(gens);
    gens.words().iter().any(|x| oracle.contains(&x.invert()))
}

// Dense square bit matrix; rows are ε-reachability sets during saturation.
#[derive(Debug, Clone)]
struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn identity(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        let mut m = BitMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        };
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.n && c < self.n);
        self.bits[r * self.words_per_row + c / 64] & (1u64 << (c % 64)) != 0
    }

    fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words_per_row + c / 64] |= 1u64 << (c % 64);
    }

    fn row_iter(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row];
        row.iter().enumerate().flat_map(|(i, &chunk)| {
            let mut rest = chunk;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + bit)
                }
            })
        })
    }
}
