//! Factorization of defining words into invertible pieces via submonoid
//! membership in the free group.
//!
//! For a presentation with relators `wᵢ = 1`, the generating set `X` is
//! every prefix of every `wᵢ` and of every `wᵢ⁻¹`. Every element of `⟨X⟩`
//! is right invertible in the presented monoid, so a proper prefix `p` of a
//! relator with `p⁻¹ ∈ ⟨X⟩` is invertible and marks a sound cut point. The
//! verdict is one-sided: `Group` is certified, `Unknown` carries no
//! information (non-group certificates live in [`crate::quotient`]).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::automaton::{GeneratingSet, SubmonoidOracle};
use crate::presentation::SpecialInversePresentation;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Benois,
    StephenRefined,
}

/// A relator together with sound cut positions; pieces are the segments
/// between consecutive cuts and always concatenate back to the relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    relator: Word,
    cuts: Vec<usize>,
    provenance: Provenance,
}

impl Factorization {
    pub fn new(relator: Word, mut cuts: Vec<usize>, provenance: Provenance) -> Self {
        cuts.sort_unstable();
        cuts.dedup();
        debug_assert!(cuts.iter().all(|&c| c > 0 && c < relator.len()));
        Factorization {
            relator,
            cuts,
            provenance,
        }
    }

    pub fn trivial(relator: Word, provenance: Provenance) -> Self {
        Factorization {
            relator,
            cuts: Vec::new(),
            provenance,
        }
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    /// Strictly increasing interior positions, each strictly between 0 and
    /// the relator length.
    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_trivial(&self) -> bool {
        self.cuts.is_empty()
    }

    /// The induced segments of the relator.
    pub fn pieces(&self) -> Vec<Word> {
        let mut bounds = vec![0usize];
        bounds.extend_from_slice(&self.cuts);
        bounds.push(self.relator.len());
        bounds
            .windows(2)
            .map(|w| self.relator.segment(w[0], w[1]))
            .collect()
    }

    /// Pieces joined with `|`, the display form used by reports.
    pub fn pieces_display(&self) -> String {
        self.pieces()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invertibility {
    Invertible,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupVerdict {
    Group,
    Unknown,
}

/// Everything the factorization pipeline derives from one presentation.
#[derive(Debug, Clone)]
pub struct BenoisReport {
    pub generators: GeneratingSet,
    pub factorizations: Vec<Factorization>,
    pub invertible_letters: BTreeMap<char, Invertibility>,
    pub group_verdict: GroupVerdict,
    pub pieces: Vec<Word>,
}

/// All prefixes of the relators and of their inverses, freely reduced,
/// with duplicates and the empty word removed.
pub fn benois_generators(p: &SpecialInversePresentation) -> GeneratingSet {
    let mut words = Vec::new();
    for r in p.relators() {
        words.extend(r.prefixes());
        words.extend(r.invert().prefixes());
    }
    GeneratingSet::new(p.alphabet().clone(), words)
}

/// Reusable analysis context: one saturated automaton per presentation,
/// shared by every prefix query.
pub struct BenoisAnalysis {
    presentation: SpecialInversePresentation,
    generators: GeneratingSet,
    oracle: SubmonoidOracle,
}

impl BenoisAnalysis {
    pub fn new(p: &SpecialInversePresentation) -> Self {
        let generators = benois_generators(p);
        let oracle = SubmonoidOracle::new(&generators);
        BenoisAnalysis {
            presentation: p.clone(),
            generators,
            oracle,
        }
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.generators
    }

    pub fn oracle(&self) -> &SubmonoidOracle {
        &self.oracle
    }

    /// Cuts each relator at every proper nonempty prefix whose inverse lies
    /// in `⟨X⟩`. Cut positions live in the graphical relator, so a prefix
    /// that freely reduces to the empty word also yields a cut.
    pub fn factorize(&self) -> Vec<Factorization> {
        self.presentation
            .relators()
            .iter()
            .map(|r| {
                let cuts = (1..r.len())
                    .filter(|&k| self.oracle.contains(&r.segment(0, k).invert()))
                    .collect();
                Factorization::new(r.clone(), cuts, Provenance::Benois)
            })
            .collect()
    }

    /// A letter is marked invertible when both it and its inverse lie in
    /// `⟨X⟩`; this is sound but not complete.
    pub fn invertible_letters(&self) -> BTreeMap<char, Invertibility> {
        self.presentation
            .alphabet()
            .iter()
            .map(|ch| {
                let pos = Word::single(crate::word::SignedLetter::positive(ch));
                let status = if self.oracle.contains(&pos) && self.oracle.contains(&pos.invert())
                {
                    Invertibility::Invertible
                } else {
                    Invertibility::Unknown
                };
                (ch, status)
            })
            .collect()
    }

    pub fn group_verdict(&self) -> GroupVerdict {
        if self
            .invertible_letters()
            .values()
            .all(|&s| s == Invertibility::Invertible)
        {
            GroupVerdict::Group
        } else {
            GroupVerdict::Unknown
        }
    }

    /// Union of the pieces over all factorizations, sorted, deduplicated.
    /// May be coarser than the true minimal pieces.
    pub fn pieces(&self) -> Vec<Word> {
        let mut pieces: Vec<Word> = self
            .factorize()
            .iter()
            .flat_map(|f| f.pieces())
            .collect();
        pieces.sort();
        pieces.dedup();
        pieces
    }

    pub fn report(&self) -> BenoisReport {
        BenoisReport {
            generators: self.generators.clone(),
            factorizations: self.factorize(),
            invertible_letters: self.invertible_letters(),
            group_verdict: self.group_verdict(),
            pieces: self.pieces(),
        }
    }
}

pub fn benois_factorize(p: &SpecialInversePresentation) -> Vec<Factorization> {
    BenoisAnalysis::new(p).factorize()
}

pub fn invertible_letters(p: &SpecialInversePresentation) -> BTreeMap<char, Invertibility> {
    BenoisAnalysis::new(p).invertible_letters()
}

pub fn group_verdict(p: &SpecialInversePresentation) -> GroupVerdict {
    BenoisAnalysis::new(p).group_verdict()
}

pub fn pieces(p: &SpecialInversePresentation) -> Vec<Word> {
    BenoisAnalysis::new(p).pieces()
}

/// Overlap-algorithm baseline, implemented only for the self-overlap-free
/// case where it yields the trivial factorization; returns `None` when the
/// word has a self-overlap.
pub fn adian_self_overlap_free_baseline(relator: &Word) -> Option<Factorization> {
    if relator.is_self_overlap_free() {
        Some(Factorization::trivial(relator.clone(), Provenance::Benois))
    } else {
        None
    }
}
