//! Exact computation with special inverse monoid presentations.
//!
//! The pipeline: [`word`] provides exact words over a generator alphabet
//! and its formal inverses; [`automaton`] decides membership in finitely
//! generated submonoids of free groups by saturating flower automata;
//! [`benois`] uses those membership queries to factorize defining words
//! into invertible pieces and to certify group verdicts; [`stephen`]
//! approximates the identity-class word graph to prove `u = 1` facts and
//! refine factorizations; [`quotient`] supplies bicyclic and abelianized
//! quotients as non-group certificates; [`construct`] builds the
//! presentation families and brute-force checkers; [`fixtures`] bundles
//! the named verification cases.

pub mod automaton;
pub mod benois;
pub mod construct;
pub mod fixtures;
pub mod presentation;
pub mod quotient;
pub mod report;
pub mod stephen;
pub mod word;

pub use automaton::{
    flower, submonoid_contains, subsemigroup_contains_identity, FgAutomaton, GeneratingSet,
    SubmonoidOracle,
};
pub use benois::{
    benois_factorize, benois_generators, group_verdict, invertible_letters, pieces,
    BenoisAnalysis, Factorization, GroupVerdict, Invertibility, Provenance,
};
pub use presentation::SpecialInversePresentation;
pub use quotient::{
    abelianize, bicyclic_mul, bicyclic_normal_form, eval_hom, find_non_group_certificate,
    non_group_certificate, AbelianVector, BicyclicElement, CertificateOutcome, MonoidHom,
};
pub use report::FullReport;
pub use stephen::{
    proves_identity, proves_invertible, refine_factorization, InverseWordGraph, Limits,
    ProofResult, ProofStatus,
};
pub use word::{apply_endomorphism, commutator, Alphabet, Sign, SignedLetter, Word, WordClass};
