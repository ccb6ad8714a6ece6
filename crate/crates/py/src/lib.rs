//! Python bindings for the special inverse monoid toolkit.
//!
//! Words cross the boundary as literal strings (lowercase letter =
//! generator, uppercase = its inverse, empty string = identity). The main
//! entry point is the `Presentation` class; free-standing functions cover
//! the word operations, free-group membership, the quotient arithmetic,
//! and the presentation constructions.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use simt_core::automaton::{GeneratingSet, SubmonoidOracle};
use simt_core::benois::BenoisAnalysis;
use simt_core::construct::{self, FactorSet, PowerKind};
use simt_core::presentation::SpecialInversePresentation;
use simt_core::quotient;
use simt_core::report::FullReport;
use simt_core::stephen::{self, Limits, ProofResult};
use simt_core::word::{Alphabet, Word};

fn parse_word(s: &str) -> PyResult<Word> {
    s.parse().map_err(|e| PyValueError::new_err(format!("{e}")))
}

fn parse_alphabet(s: &str) -> PyResult<Alphabet> {
    Alphabet::parse(s).map_err(|e| PyValueError::new_err(format!("{e}")))
}

fn parse_words(words: Vec<String>) -> PyResult<Vec<Word>> {
    words.iter().map(|s| parse_word(s)).collect()
}

fn generating_set(gens: &str, words: Vec<String>) -> PyResult<GeneratingSet> {
    let alphabet = parse_alphabet(gens)?;
    let words = parse_words(words)?;
    for w in &words {
        alphabet
            .check_word(w)
            .map_err(|e| PyValueError::new_err(format!("{e}")))?;
    }
    Ok(GeneratingSet::new(alphabet, words))
}

/// Outcome of a bounded proof search.
#[pyclass]
struct ProofOutcome {
    #[pyo3(get)]
    proved: bool,
    #[pyo3(get)]
    rounds_used: usize,
    #[pyo3(get)]
    vertices_used: usize,
}

#[pymethods]
impl ProofOutcome {
    fn __repr__(&self) -> String {
        format!(
            "ProofOutcome(proved={}, rounds_used={}, vertices_used={})",
            self.proved, self.rounds_used, self.vertices_used
        )
    }
}

impl From<ProofResult> for ProofOutcome {
    fn from(result: ProofResult) -> Self {
        ProofOutcome {
            proved: result.status == stephen::ProofStatus::Proved,
            rounds_used: result.rounds_used,
            vertices_used: result.vertices_used,
        }
    }
}

/// The unique reduced word freely equal to the input.
#[pyfunction]
fn free_reduce(word: &str) -> PyResult<String> {
    Ok(parse_word(word)?.free_reduce().to_string())
}

/// Graphical inverse: reversed word with all signs flipped.
#[pyfunction]
fn invert(word: &str) -> PyResult<String> {
    Ok(parse_word(word)?.invert().to_string())
}

/// Splits the reduction of the word as (conjugator, cyclically reduced core).
#[pyfunction]
fn cyclic_reduce(word: &str) -> PyResult<(String, String)> {
    let (conj, core) = parse_word(word)?.cyclic_reduce();
    Ok((conj.to_string(), core.to_string()))
}

/// Word predicates as a dict of booleans.
#[pyfunction]
fn classify(word: &str) -> PyResult<BTreeMap<String, bool>> {
    let c = parse_word(word)?.classify();
    Ok(BTreeMap::from([
        ("reduced".to_string(), c.is_reduced),
        ("cyclically_reduced".to_string(), c.is_cyclically_reduced),
        ("positive".to_string(), c.is_positive),
        ("self_overlap_free".to_string(), c.is_self_overlap_free),
    ]))
}

/// All prefixes from the empty word to the word itself.
#[pyfunction]
fn prefixes(word: &str) -> PyResult<Vec<String>> {
    Ok(parse_word(word)?
        .prefixes()
        .into_iter()
        .map(|p| p.to_string())
        .collect())
}

/// [u, v] = u v u⁻¹ v⁻¹, unreduced.
#[pyfunction]
fn commutator(u: &str, v: &str) -> PyResult<String> {
    Ok(simt_core::word::commutator(&parse_word(u)?, &parse_word(v)?).to_string())
}

/// Applies the generator substitution (keys are single letters) and
/// freely reduces.
#[pyfunction]
fn apply_endomorphism(images: BTreeMap<String, String>, word: &str) -> PyResult<String> {
    let mut map = BTreeMap::new();
    for (k, v) in &images {
        let mut chars = k.chars();
        let (Some(ch), None) = (chars.next(), chars.next()) else {
            return Err(PyValueError::new_err(format!(
                "image key {k:?} is not a single letter"
            )));
        };
        map.insert(ch, parse_word(v)?);
    }
    simt_core::word::apply_endomorphism(&map, &parse_word(word)?)
        .map(|w| w.to_string())
        .map_err(|e| PyValueError::new_err(format!("{e}")))
}

/// Rotation index k with rotate(u, k) == v, or None.
#[pyfunction]
fn cyclic_conjugate_index(u: &str, v: &str) -> PyResult<Option<usize>> {
    Ok(parse_word(u)?.cyclic_conjugate_index(&parse_word(v)?))
}

/// Whether the word lies in the submonoid of the free group generated by
/// the given set.
#[pyfunction]
fn submonoid_contains(gens: &str, words: Vec<String>, word: &str) -> PyResult<bool> {
    let set = generating_set(gens, words)?;
    Ok(SubmonoidOracle::new(&set).contains(&parse_word(word)?))
}

/// Whether the identity is a nonempty product of the given set.
#[pyfunction]
fn subsemigroup_contains_identity(gens: &str, words: Vec<String>) -> PyResult<bool> {
    let set = generating_set(gens, words)?;
    Ok(simt_core::subsemigroup_contains_identity(&set))
}

/// DOT text of the saturated membership automaton for the given set.
#[pyfunction]
fn saturated_automaton_dot(gens: &str, words: Vec<String>) -> PyResult<String> {
    let set = generating_set(gens, words)?;
    Ok(SubmonoidOracle::new(&set).automaton().to_dot())
}

/// Normal form (m, n) of a word over one generator, meaning x⁻ᵐxⁿ.
#[pyfunction]
fn bicyclic_normal_form(word: &str) -> PyResult<(u64, u64)> {
    let e = quotient::bicyclic_normal_form(&parse_word(word)?)
        .map_err(|e| PyValueError::new_err(format!("{e}")))?;
    Ok((e.m, e.n))
}

#[pyfunction]
fn bicyclic_mul(e1: (u64, u64), e2: (u64, u64)) -> (u64, u64) {
    let r = quotient::bicyclic_mul(
        quotient::BicyclicElement { m: e1.0, n: e1.1 },
        quotient::BicyclicElement { m: e2.0, n: e2.1 },
    );
    (r.m, r.n)
}

/// Exponent sums of the word per generator, in alphabet order.
#[pyfunction]
fn abelianize(gens: &str, word: &str) -> PyResult<Vec<i64>> {
    let alphabet = parse_alphabet(gens)?;
    Ok(quotient::abelianize(&alphabet, &parse_word(word)?).sums)
}

/// A special inverse monoid presentation with every relation `w = 1`.
#[pyclass]
struct Presentation {
    inner: SpecialInversePresentation,
}

#[pymethods]
impl Presentation {
    #[new]
    fn new(gens: &str, relators: Vec<String>) -> PyResult<Self> {
        let alphabet = parse_alphabet(gens)?;
        let relators = parse_words(relators)?;
        SpecialInversePresentation::new(alphabet, relators)
            .map(|inner| Presentation { inner })
            .map_err(|e| PyValueError::new_err(format!("{e}")))
    }

    /// Parses the gens:/rel: file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        SpecialInversePresentation::parse(text)
            .map(|inner| Presentation { inner })
            .map_err(|e| PyValueError::new_err(format!("{e}")))
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn gens(&self) -> String {
        self.inner.alphabet().to_string()
    }

    fn relators(&self) -> Vec<String> {
        self.inner.relators().iter().map(|r| r.to_string()).collect()
    }

    /// Reduced prefix generators of the relators and their inverses.
    fn benois_generators(&self) -> Vec<String> {
        simt_core::benois_generators(&self.inner)
            .words()
            .iter()
            .map(|w| w.to_string())
            .collect()
    }

    /// Pieces of each relator under the prefix-membership factorization.
    fn factorizations(&self) -> Vec<Vec<String>> {
        simt_core::benois_factorize(&self.inner)
            .iter()
            .map(|f| f.pieces().iter().map(|p| p.to_string()).collect())
            .collect()
    }

    /// Per-letter status: "invertible" or "unknown".
    fn invertible_letters(&self) -> BTreeMap<String, String> {
        simt_core::invertible_letters(&self.inner)
            .into_iter()
            .map(|(ch, status)| {
                let status = match status {
                    simt_core::Invertibility::Invertible => "invertible",
                    simt_core::Invertibility::Unknown => "unknown",
                };
                (ch.to_string(), status.to_string())
            })
            .collect()
    }

    /// "group" when every letter is invertible, else "unknown".
    fn group_verdict(&self) -> String {
        match simt_core::group_verdict(&self.inner) {
            simt_core::GroupVerdict::Group => "group".to_string(),
            simt_core::GroupVerdict::Unknown => "unknown".to_string(),
        }
    }

    /// Sorted set of pieces across all factorizations.
    fn pieces(&self) -> Vec<String> {
        simt_core::pieces(&self.inner)
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    /// The full JSON report; with refine=True also runs the bounded
    /// refinement.
    #[pyo3(signature = (refine = false, max_rounds = 6, max_vertices = 20_000))]
    fn report_json(&self, refine: bool, max_rounds: usize, max_vertices: usize) -> String {
        let limits = Limits {
            max_rounds,
            max_vertices,
        };
        FullReport::compute(&self.inner, refine.then_some(limits)).to_json()
    }

    /// Bounded proof that word = 1.
    #[pyo3(signature = (word, max_rounds = 6, max_vertices = 20_000))]
    fn proves_identity(
        &self,
        word: &str,
        max_rounds: usize,
        max_vertices: usize,
    ) -> PyResult<ProofOutcome> {
        let limits = Limits {
            max_rounds,
            max_vertices,
        };
        Ok(stephen::proves_identity(&self.inner, &parse_word(word)?, &limits).into())
    }

    /// Bounded proof that word is invertible (both sides).
    #[pyo3(signature = (word, max_rounds = 6, max_vertices = 20_000))]
    fn proves_invertible(
        &self,
        word: &str,
        max_rounds: usize,
        max_vertices: usize,
    ) -> PyResult<ProofOutcome> {
        let limits = Limits {
            max_rounds,
            max_vertices,
        };
        Ok(stephen::proves_invertible(&self.inner, &parse_word(word)?, &limits).into())
    }

    /// Factorizations after refining each relator with the bounded
    /// procedure.
    #[pyo3(signature = (max_rounds = 6, max_vertices = 20_000))]
    fn refined_factorizations(&self, max_rounds: usize, max_vertices: usize) -> Vec<Vec<String>> {
        let limits = Limits {
            max_rounds,
            max_vertices,
        };
        let analysis = BenoisAnalysis::new(&self.inner);
        analysis
            .factorize()
            .iter()
            .map(|f| {
                stephen::refine_factorization(&self.inner, f, &limits)
                    .pieces()
                    .iter()
                    .map(|p| p.to_string())
                    .collect()
            })
            .collect()
    }

    /// Searches homomorphisms into the bicyclic monoid; returns
    /// (images dict, witness letter) when the presented monoid is
    /// certified not to be a group.
    fn non_group_certificate(&self) -> Option<(BTreeMap<String, String>, String)> {
        match quotient::find_non_group_certificate(&self.inner) {
            Some(quotient::CertificateOutcome::CertifiedNotGroup {
                hom,
                witness_letter,
            }) => {
                let images = hom
                    .images
                    .into_iter()
                    .map(|(ch, w)| (ch.to_string(), w.to_string()))
                    .collect();
                Some((images, witness_letter.to_string()))
            }
            _ => None,
        }
    }

    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }
}

/// Wraps a group relator so the inverse monoid presents the same group.
#[pyfunction]
fn rwr_presentation(gens: &str, relator: &str) -> PyResult<Presentation> {
    let input =
        construct::GroupPresentationInput::new(parse_alphabet(gens)?, parse_word(relator)?);
    Ok(Presentation {
        inner: construct::rwr_presentation(&input),
    })
}

/// Positive-relator transfer; raises ValueError when the relator is not
/// positive or no rotation starts and ends alike.
#[pyfunction]
fn positive_transfer(gens: &str, relator: &str) -> PyResult<Presentation> {
    let input =
        construct::GroupPresentationInput::new(parse_alphabet(gens)?, parse_word(relator)?);
    construct::positive_transfer(&input)
        .map(|inner| Presentation { inner })
        .map_err(|e| PyValueError::new_err(format!("{e}")))
}

/// Family member a²b²·(kind^i)·a³bab over {a, b}; kind is "a" or "b".
#[pyfunction]
fn ohare_family(kind: &str, i: usize) -> PyResult<Presentation> {
    let kind = match kind {
        "a" => PowerKind::APower,
        "b" => PowerKind::BPower,
        other => {
            return Err(PyValueError::new_err(format!(
                "kind must be \"a\" or \"b\", got {other:?}"
            )))
        }
    };
    Ok(Presentation {
        inner: construct::ohare_family(kind, i),
    })
}

/// Result of a group-making sweep; finding no counterexample proves
/// nothing.
#[pyclass]
struct SamplerOutcome {
    #[pyo3(get)]
    group_count: usize,
    #[pyo3(get)]
    unknown_count: usize,
    #[pyo3(get)]
    first_unknown: Option<String>,
}

#[pymethods]
impl SamplerOutcome {
    fn __repr__(&self) -> String {
        format!(
            "SamplerOutcome(group_count={}, unknown_count={}, first_unknown={:?})",
            self.group_count, self.unknown_count, self.first_unknown
        )
    }
}

/// Seeded sweep of ⟨A | u·w·v = 1⟩ verdicts over random positive middles.
#[pyfunction]
#[pyo3(signature = (gens, u, v, samples = 100, max_len = 6, seed = 0))]
fn group_making_sampler(
    gens: &str,
    u: &str,
    v: &str,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> PyResult<SamplerOutcome> {
    let alphabet = parse_alphabet(gens)?;
    let u = parse_word(u)?;
    let v = parse_word(v)?;
    if !u.is_positive() || !v.is_positive() {
        return Err(PyValueError::new_err("u and v must be positive words"));
    }
    let report = construct::group_making_sampler(&alphabet, &u, &v, samples, max_len, seed);
    Ok(SamplerOutcome {
        group_count: report.group_count,
        unknown_count: report.unknown_count,
        first_unknown: report.first_unknown.map(|w| w.to_string()),
    })
}

/// Enumerates vanishing products of nonempty prefixes; returns the factor
/// lists of the vanishing products.
#[pyfunction]
#[pyo3(signature = (relator, max_factors = 4, prefixes_only = false, node_budget = 10_000_000))]
fn check_prefix_products(
    relator: &str,
    max_factors: usize,
    prefixes_only: bool,
    node_budget: usize,
) -> PyResult<Vec<Vec<String>>> {
    let factor_set = if prefixes_only {
        FactorSet::PrefixesOnly
    } else {
        FactorSet::PrefixesAndInverses
    };
    let report =
        construct::check_prefix_products(&parse_word(relator)?, max_factors, factor_set, node_budget)
            .map_err(|e| PyValueError::new_err(format!("{e}")))?;
    Ok(report
        .vanishing
        .iter()
        .map(|product| product.iter().map(|f| f.to_string()).collect())
        .collect())
}

/// Runs the built-in verification cases; returns (name, anchor, ok,
/// message) per case.
#[pyfunction]
#[pyo3(signature = (filter = None))]
fn run_fixtures(filter: Option<&str>) -> Vec<(String, String, bool, String)> {
    simt_core::fixtures::run_fixtures(filter)
        .into_iter()
        .map(|outcome| {
            let (ok, message) = match outcome.result {
                Ok(()) => (true, String::new()),
                Err(m) => (false, m),
            };
            (outcome.name.to_string(), outcome.anchor.to_string(), ok, message)
        })
        .collect()
}

#[pymodule]
fn simt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<ProofOutcome>()?;
    m.add_class::<SamplerOutcome>()?;
    m.add_function(wrap_pyfunction!(free_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(prefixes, m)?)?;
    m.add_function(wrap_pyfunction!(commutator, m)?)?;
    m.add_function(wrap_pyfunction!(apply_endomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_conjugate_index, m)?)?;
    m.add_function(wrap_pyfunction!(submonoid_contains, m)?)?;
    m.add_function(wrap_pyfunction!(subsemigroup_contains_identity, m)?)?;
    m.add_function(wrap_pyfunction!(saturated_automaton_dot, m)?)?;
    m.add_function(wrap_pyfunction!(bicyclic_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(bicyclic_mul, m)?)?;
    m.add_function(wrap_pyfunction!(abelianize, m)?)?;
    m.add_function(wrap_pyfunction!(rwr_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(positive_transfer, m)?)?;
    m.add_function(wrap_pyfunction!(ohare_family, m)?)?;
    m.add_function(wrap_pyfunction!(group_making_sampler, m)?)?;
    m.add_function(wrap_pyfunction!(check_prefix_products, m)?)?;
    m.add_function(wrap_pyfunction!(run_fixtures, m)?)?;
    Ok(())
}
