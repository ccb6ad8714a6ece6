//! Presentation constructions and brute-force property checkers: the
//! group-making sandwich embedding, the positive-relator transfer, the
//! self-overlap-free group family, exhaustive prefix-product searches, and
//! a seeded sampler for candidate group-making word pairs.

use std::collections::BTreeMap;

use rand::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::benois::{self, GroupVerdict};
use crate::presentation::SpecialInversePresentation;
use crate::word::{apply_endomorphism, commutator, Alphabet, SignedLetter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("relator must be a nonempty positive word")]
    NotPositive,
    #[error("no cyclic rotation of the relator begins and ends with the same letter")]
    NoValidRotation,
    #[error("product enumeration exceeded the node budget of {0}")]
    NodeBudget(usize),
}

/// A one-relator group presentation used as construction input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentationInput {
    pub alphabet: Alphabet,
    pub relator: Word,
}

impl GroupPresentationInput {
    pub fn new(alphabet: Alphabet, relator: Word) -> Self {
        GroupPresentationInput { alphabet, relator }
    }

    pub fn from_literals(gens: &str, relator: &str) -> Self {
        GroupPresentationInput {
            alphabet: Alphabet::parse(gens).expect("valid alphabet"),
            relator: relator.parse().expect("valid relator"),
        }
    }
}

/// Wraps the relator as `r·w·r` where `r` is the concatenation of
/// `a a⁻¹ a⁻¹ a` over the alphabet. The wrapped word is freely equal to
/// `w`, and every generator of the resulting inverse monoid is invertible,
/// so the monoid is the same group presented by `w = 1`.
pub fn rwr_presentation(g: &GroupPresentationInput) -> SpecialInversePresentation {
    let mut sandwich = Vec::new();
    for ch in g.alphabet.iter() {
        sandwich.push(SignedLetter::positive(ch));
        sandwich.push(SignedLetter::negative(ch));
        sandwich.push(SignedLetter::negative(ch));
        sandwich.push(SignedLetter::positive(ch));
    }
    let sandwich = Word::from_letters(sandwich);
    let relator = sandwich.concat(&g.relator).concat(&sandwich);
    SpecialInversePresentation::new(g.alphabet.clone(), vec![relator])
        .expect("sandwiched relator is nonempty")
}

/// Positive-relator transfer: rotates the relator to begin and end with the
/// same letter `a`, then substitutes `a ↦ a₁⋯aₙ·a·aₙ⋯a₁` (other letters
/// fixed), yielding a positive relator of the form `a₁⋯aₙ·w·aₙ⋯a₁` whose
/// inverse monoid is a group.
pub fn positive_transfer(
    g: &GroupPresentationInput,
) -> Result<SpecialInversePresentation, ConstructError> {
    if g.relator.is_empty() || !g.relator.is_positive() {
        return Err(ConstructError::NotPositive);
    }
    if g.alphabet.len() < 2 {
        // With no other letters the substitution is the identity.
        return Err(ConstructError::NoValidRotation);
    }
    let n = g.relator.len();
    let rotation = (0..n)
        .find(|&k| {
            let rotated = g.relator.rotate(k);
            rotated.letters().first() == rotated.letters().last()
        })
        .ok_or(ConstructError::NoValidRotation)?;
    let rotated = g.relator.rotate(rotation);
    let distinguished = rotated.letters()[0].base();

    let others: Vec<char> = g.alphabet.iter().filter(|&c| c != distinguished).collect();
    let mut image = Vec::new();
    image.extend(others.iter().map(|&c| SignedLetter::positive(c)));
    image.push(SignedLetter::positive(distinguished));
    image.extend(others.iter().rev().map(|&c| SignedLetter::positive(c)));
    let image = Word::from_letters(image);

    // Positive images of positive letters: plain substitution, no reduction.
    let mut out = Vec::new();
    for l in rotated.iter() {
        if l.base() == distinguished {
            out.extend_from_slice(image.letters());
        } else {
            out.push(*l);
        }
    }
    SpecialInversePresentation::new(g.alphabet.clone(), vec![Word::from_letters(out)])
        .map_err(|_| ConstructError::NotPositive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerKind {
    APower,
    BPower,
}

/// `⟨a, b | a²b²·(aⁱ or bⁱ)·a³bab = 1⟩`: self-overlap free for every `i`,
/// and always a group.
pub fn ohare_family(kind: PowerKind, i: usize) -> SpecialInversePresentation {
    let mid = match kind {
        PowerKind::APower => "a".repeat(i),
        PowerKind::BPower => "b".repeat(i),
    };
    let relator = format!("aabb{mid}aaabab");
    SpecialInversePresentation::from_literals("ab", &[&relator])
}

/// Which prefix set feeds the product enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorSet {
    /// Nonempty prefixes of the word itself.
    PrefixesOnly,
    /// Nonempty prefixes of the word and of its inverse.
    PrefixesAndInverses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixProductReport {
    pub factors: Vec<Word>,
    /// Each vanishing product as its factor list, in discovery order.
    pub vanishing: Vec<Vec<Word>>,
    pub nodes_explored: usize,
}

/// Exhaustively enumerates nonempty products of at most `max_factors`
/// factors, recording every product that freely reduces to the identity.
/// No pruning beyond the node budget.
pub fn check_prefix_products(
    r: &Word,
    max_factors: usize,
    factor_set: FactorSet,
    node_budget: usize,
) -> Result<PrefixProductReport, ConstructError> {
    let mut candidates: Vec<Word> = r
        .prefixes()
        .into_iter()
        .filter(|p| !p.is_empty())
        .collect();
    if factor_set == FactorSet::PrefixesAndInverses {
        candidates.extend(
            r.invert()
                .prefixes()
                .into_iter()
                .filter(|p| !p.is_empty()),
        );
    }
    // The two prefix families can share words (both start like r when the
    // relator is a conjugate); keep first occurrences only.
    let mut factors: Vec<Word> = Vec::new();
    for c in candidates {
        if !factors.contains(&c) {
            factors.push(c);
        }
    }

    let mut report = PrefixProductReport {
        factors: factors.clone(),
        vanishing: Vec::new(),
        nodes_explored: 0,
    };
    let mut trail: Vec<usize> = Vec::new();
    descend(
        &factors,
        &Word::empty(),
        max_factors,
        node_budget,
        &mut trail,
        &mut report,
    )?;
    Ok(report)
}

fn descend(
    factors: &[Word],
    product: &Word,
    remaining: usize,
    node_budget: usize,
    trail: &mut Vec<usize>,
    report: &mut PrefixProductReport,
) -> Result<(), ConstructError> {
    if remaining == 0 {
        return Ok(());
    }
    for (i, f) in factors.iter().enumerate() {
        report.nodes_explored += 1;
        if report.nodes_explored > node_budget {
            return Err(ConstructError::NodeBudget(node_budget));
        }
        let next = product.concat(f).free_reduce();
        trail.push(i);
        if next.is_empty() {
            report
                .vanishing
                .push(trail.iter().map(|&j| factors[j].clone()).collect());
        }
        descend(factors, &next, remaining - 1, node_budget, trail, report)?;
        trail.pop();
    }
    Ok(())
}

/// The fixed verification bundle around the free-group automorphism
/// `a ↦ abaab, b ↦ ab` and the cyclically reduced 19-letter relator it
/// produces; the last check runs the factorization pipeline on that
/// relator and expects a group.
#[derive(Debug, Clone, Serialize)]
pub struct AutomorphismFixtureReport {
    pub checks: Vec<(String, bool)>,
}

impl AutomorphismFixtureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn baumslag_gersten_fixture() -> AutomorphismFixtureReport {
    let w = |s: &str| -> Word { s.parse().unwrap() };
    let phi = BTreeMap::from([('a', w("abaab")), ('b', w("ab"))]);
    let mut checks = Vec::new();

    // Surjectivity witnesses: both generators are images.
    let hits_a = apply_endomorphism(&phi, &w("BaB")).unwrap() == w("a");
    checks.push(("phi(b^-1 a b^-1) = a".to_string(), hits_a));
    let hits_b = apply_endomorphism(&phi, &w("bAbb")).unwrap() == w("b");
    checks.push(("phi(b a^-1 b b) = b".to_string(), hits_b));

    let conjugate = apply_endomorphism(&phi, &w("baB")).unwrap() == w("ababa");
    checks.push(("phi(b a b^-1) = ababa".to_string(), conjugate));

    // φ([a, bab⁻¹]·a) reduces to ab·aabab·w''.
    let argument = commutator(&w("a"), &w("baB")).concat(&w("a"));
    let image = apply_endomorphism(&phi, &argument).unwrap();
    let tail = w("abaBAABAABab");
    let expected = w("ab").concat(&w("aabab")).concat(&tail);
    checks.push((
        "phi([a, bab^-1] a) = ab aabab w''".to_string(),
        image == expected,
    ));

    // The 19-letter relator is a cyclic conjugate of w'·aabab·w''.
    let relator = w("ababaBAABAABababaab");
    let rotated = w("ab").concat(&w("aabab")).concat(&tail);
    checks.push((
        "relator is a cyclic conjugate of w' aabab w''".to_string(),
        rotated.cyclic_conjugate_index(&relator).is_some(),
    ));

    let verdict = benois::group_verdict(&SpecialInversePresentation::from_literals(
        "ab",
        &["ababaBAABAABababaab"],
    ));
    checks.push((
        "inverse monoid on the relator is a group".to_string(),
        verdict == GroupVerdict::Group,
    ));

    AutomorphismFixtureReport { checks }
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplerReport {
    pub u: Word,
    pub v: Word,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    pub group_count: usize,
    pub unknown_count: usize,
    /// First sampled middle word whose verdict was not `Group`, if any.
    pub first_unknown: Option<Word>,
}

/// Runs the group verdict on `⟨A | u·w·v = 1⟩` for seeded random positive
/// middles `w`. Finding no counterexample proves nothing; the report only
/// counts outcomes.
pub fn group_making_sampler(
    alphabet: &Alphabet,
    u: &Word,
    v: &Word,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> SamplerReport {
    assert!(u.is_positive() && v.is_positive(), "u and v must be positive");
    let mut rng = StdRng::seed_from_u64(seed);
    let letters: Vec<char> = alphabet.iter().collect();
    let mut report = SamplerReport {
        u: u.clone(),
        v: v.clone(),
        samples,
        max_len,
        seed,
        group_count: 0,
        unknown_count: 0,
        first_unknown: None,
    };
    for _ in 0..samples {
        let len = rng.random_range(0..=max_len);
        let mid = Word::from_letters(
            (0..len)
                .map(|_| SignedLetter::positive(letters[rng.random_range(0..letters.len())]))
                .collect(),
        );
        let relator = u.concat(&mid).concat(v);
        let p = SpecialInversePresentation::new(alphabet.clone(), vec![relator])
            .expect("u·w·v is nonempty");
        match benois::group_verdict(&p) {
            GroupVerdict::Group => report.group_count += 1,
            GroupVerdict::Unknown => {
                report.unknown_count += 1;
                if report.first_unknown.is_none() {
                    report.first_unknown = Some(mid);
                }
            }
        }
    }
    report
}
