//! Serializable report envelope combining the factorization pipeline with
//! the quotient certificate search.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::benois::{BenoisAnalysis, Factorization, GroupVerdict, Invertibility};
use crate::presentation::SpecialInversePresentation;
use crate::quotient::{find_non_group_certificate, CertificateOutcome, MonoidHom};
use crate::stephen::{self, Limits};
use crate::word::Word;

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub relator: Word,
    pub pieces: Vec<Word>,
    pub provenance: crate::benois::Provenance,
}

impl FactorizationReport {
    fn from_factorization(f: &Factorization) -> Self {
        FactorizationReport {
            relator: f.relator().clone(),
            pieces: f.pieces(),
            provenance: f.provenance(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NotGroupCertificate {
    pub hom: BTreeMap<char, Word>,
    pub witness_letter: char,
}

/// The full analysis of one presentation, in the shape emitted as JSON.
#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub generators: Vec<Word>,
    pub factorizations: Vec<FactorizationReport>,
    pub invertible_letters: BTreeMap<char, Invertibility>,
    pub group_verdict: GroupVerdict,
    pub pieces: Vec<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_group_certificate: Option<NotGroupCertificate>,
}

impl FullReport {
    /// Runs the factorization pipeline; with `refine` set, also runs the
    /// bounded refinement and appends the refined factorizations.
    pub fn compute(p: &SpecialInversePresentation, refine: Option<Limits>) -> Self {
        let analysis = BenoisAnalysis::new(p);
        let base = analysis.factorize();
        let mut factorizations: Vec<FactorizationReport> =
            base.iter().map(FactorizationReport::from_factorization).collect();
        if let Some(limits) = refine {
            for f in &base {
                let refined = stephen::refine_factorization(p, f, &limits);
                factorizations.push(FactorizationReport::from_factorization(&refined));
            }
        }
        let certificate = find_non_group_certificate(p).and_then(|outcome| match outcome {
            CertificateOutcome::CertifiedNotGroup {
                hom: MonoidHom { images },
                witness_letter,
            } => Some(NotGroupCertificate {
                hom: images,
                witness_letter,
            }),
            CertificateOutcome::Inapplicable => None,
        });
        FullReport {
            generators: analysis.generators().words().to_vec(),
            factorizations,
            invertible_letters: analysis.invertible_letters(),
            group_verdict: analysis.group_verdict(),
            pieces: analysis.pieces(),
            not_group_certificate: certificate,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
