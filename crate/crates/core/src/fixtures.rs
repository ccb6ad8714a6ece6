//! Named verification cases with expected outputs, runnable from the CLI
//! and from the test suite. Each case records a short anchor label and
//! returns an error message on the first failed expectation.

use std::collections::BTreeMap;

use crate::automaton::SubmonoidOracle;
use crate::benois::{self, BenoisAnalysis, GroupVerdict, Invertibility};
use crate::construct::{self, PowerKind};
use crate::presentation::SpecialInversePresentation;
use crate::quotient::{self, CertificateOutcome, MonoidHom};
use crate::stephen::{self, Limits};
use crate::word::Word;

pub struct FixtureCase {
    pub name: &'static str,
    pub anchor: &'static str,
    pub run: fn() -> Result<(), String>,
}

#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub anchor: &'static str,
    pub result: Result<(), String>,
}

pub fn all_fixtures() -> Vec<FixtureCase> {
    vec![
        FixtureCase {
            name: "four-generator-factorization",
            anchor: "O'Hare",
            run: four_generator_factorization,
        },
        FixtureCase {
            name: "nine-letter-group",
            anchor: "Thm 4.1",
            run: nine_letter_group,
        },
        FixtureCase {
            name: "overlap-free-family",
            anchor: "Prop 4.3",
            run: overlap_free_family,
        },
        FixtureCase {
            name: "counterexample-benois-cut",
            anchor: "Thm 5.1",
            run: counterexample_benois_cut,
        },
        FixtureCase {
            name: "counterexample-automaton",
            anchor: "Thm 5.1",
            run: counterexample_automaton,
        },
        FixtureCase {
            name: "counterexample-refinement",
            anchor: "Thm 5.1",
            run: counterexample_refinement,
        },
        FixtureCase {
            name: "counterexample-not-group",
            anchor: "Thm 5.1",
            run: counterexample_not_group,
        },
        FixtureCase {
            name: "three-relation-trivial",
            anchor: "Ex 2.2",
            run: three_relation_trivial,
        },
        FixtureCase {
            name: "sandwich-embedding",
            anchor: "Prop 3.1/3.5",
            run: sandwich_embedding,
        },
        FixtureCase {
            name: "commutator-not-group",
            anchor: "Prop 3.4",
            run: commutator_not_group,
        },
        FixtureCase {
            name: "sandwich-pair-sweep",
            anchor: "Lem 3.5",
            run: sandwich_pair_sweep,
        },
        FixtureCase {
            name: "automorphism-fixture",
            anchor: "Prop 3.6",
            run: automorphism_fixture,
        },
        FixtureCase {
            name: "identity-proof-letter",
            anchor: "Thm 5.1",
            run: identity_proof_letter,
        },
    ]
}

/// Runs all cases (optionally filtered by substring of the name) in name
/// order and collects per-case outcomes.
pub fn run_fixtures(filter: Option<&str>) -> Vec<FixtureOutcome> {
    let mut cases = all_fixtures();
    cases.sort_by_key(|c| c.name);
    cases
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .map(|c| FixtureOutcome {
            name: c.name,
            anchor: c.anchor,
            result: (c.run)(),
        })
        .collect()
}

fn expect(cond: bool, message: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn four_generator_factorization() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("abcd", &["abcdacdadabbcdacd"]);
    let fs = benois::benois_factorize(&p);
    expect(
        fs[0].pieces_display() == "abcd|acd|ad|abbcd|acd",
        &format!("pieces were {}", fs[0].pieces_display()),
    )?;
    let piece_set = benois::pieces(&p);
    let expected: Vec<Word> = ["ad", "acd", "abcd", "abbcd"].iter().map(|s| w(s)).collect();
    expect(
        piece_set == expected,
        &format!("piece set was {piece_set:?}"),
    )?;
    // The overlap baseline stays trivial on this self-overlap-free relator.
    let baseline = benois::adian_self_overlap_free_baseline(&p.relators()[0])
        .ok_or("relator unexpectedly has a self-overlap")?;
    expect(baseline.is_trivial(), "baseline factorization not trivial")
}

fn nine_letter_group() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("ab", &["aabbaabab"]);
    let analysis = BenoisAnalysis::new(&p);
    expect(
        analysis.group_verdict() == GroupVerdict::Group,
        "verdict was not group",
    )?;
    // The certificate product for a⁻¹, every factor a prefix generator.
    let factors = [w("BABAA"), w("aabb"), w("BA"), w("aabb"), w("BA")];
    for f in &factors {
        expect(
            analysis.generators().contains_word(f),
            &format!("certificate factor {f} not a generator"),
        )?;
    }
    let product = factors
        .iter()
        .fold(Word::empty(), |acc, f| acc.concat(f))
        .free_reduce();
    expect(product == w("A"), &format!("product reduced to {product}"))?;
    expect(
        benois::pieces(&p) == vec![w("a"), w("b")],
        "pieces were not the single letters",
    )?;
    expect(
        p.relators()[0].is_self_overlap_free(),
        "relator not self-overlap free",
    )
}

fn overlap_free_family() -> Result<(), String> {
    for mid in ["", "a", "b", "ab", "ba", "aaaaa", "bbbbb"] {
        let relator = format!("aabb{mid}aaabab");
        let p = SpecialInversePresentation::from_literals("ab", &[&relator]);
        expect(
            benois::group_verdict(&p) == GroupVerdict::Group,
            &format!("middle {mid:?} not a group"),
        )?;
    }
    for i in 0..=20 {
        for kind in [PowerKind::APower, PowerKind::BPower] {
            let p = construct::ohare_family(kind, i);
            expect(
                p.relators()[0].is_self_overlap_free(),
                &format!("{kind:?} i={i} has a self-overlap"),
            )?;
        }
    }
    Ok(())
}

fn counterexample_benois_cut() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("ab", &["abaBbAB"]);
    let fs = benois::benois_factorize(&p);
    expect(
        fs[0].pieces_display() == "a|baBbAB",
        &format!("pieces were {}", fs[0].pieces_display()),
    )
}

fn counterexample_automaton() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("ab", &["abaBbAB"]);
    let oracle = SubmonoidOracle::new(&benois::benois_generators(&p));
    for n in 0..=10 {
        let mid: String = std::iter::repeat_n('a', n).collect();
        expect(
            oracle.contains(&w(&format!("b{mid}B"))),
            &format!("b a^{n} b^-1 rejected"),
        )?;
    }
    let relator = &p.relators()[0];
    let mut accepted = Vec::new();
    for prefix in relator.proper_nonempty_prefixes() {
        if oracle.contains(&prefix.invert()) {
            accepted.push(prefix);
        }
    }
    expect(
        accepted == vec![w("a")],
        &format!("accepted prefix inverses: {accepted:?}"),
    )
}

fn counterexample_refinement() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("ab", &["abaBbAB"]);
    let base = benois::benois_factorize(&p).remove(0);
    let refined = stephen::refine_factorization(&p, &base, &Limits::default());
    expect(
        refined.pieces_display() == "a|baB|bAB",
        &format!("refined pieces were {}", refined.pieces_display()),
    )
}

fn counterexample_not_group() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("ab", &["abaBbAB"]);
    let h = MonoidHom::new(BTreeMap::from([('a', Word::empty()), ('b', w("x"))]));
    match quotient::non_group_certificate(&p, &h) {
        Ok(CertificateOutcome::CertifiedNotGroup { .. }) => Ok(()),
        other => Err(format!("certificate outcome was {other:?}")),
    }
}

fn three_relation_trivial() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("abcd", &["ab", "cabd", "cdd"]);
    for f in benois::benois_factorize(&p) {
        expect(
            f.is_trivial(),
            &format!("relator {} was cut", f.relator()),
        )?;
    }
    Ok(())
}

fn sandwich_embedding() -> Result<(), String> {
    let g = construct::GroupPresentationInput::from_literals("ab", "abAB");
    let p = construct::rwr_presentation(&g);
    expect(
        p.relators()[0].to_string() == "aAAabBBbabABaAAabBBb",
        &format!("relator was {}", p.relators()[0]),
    )?;
    expect(
        benois::group_verdict(&p) == GroupVerdict::Group,
        "sandwiched relator not a group",
    )
}

fn commutator_not_group() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("ab", &["abAB"]);
    let fs = benois::benois_factorize(&p);
    expect(fs[0].is_trivial(), "commutator relator was cut")?;
    let letters = benois::invertible_letters(&p);
    expect(
        letters.values().all(|&s| s == Invertibility::Unknown),
        "letters unexpectedly invertible",
    )?;
    let h = MonoidHom::new(BTreeMap::from([('a', w("x")), ('b', Word::empty())]));
    match quotient::non_group_certificate(&p, &h) {
        Ok(CertificateOutcome::CertifiedNotGroup { .. }) => Ok(()),
        other => Err(format!("certificate outcome was {other:?}")),
    }
}

fn sandwich_pair_sweep() -> Result<(), String> {
    let alphabet = crate::word::Alphabet::parse("ab").unwrap();
    let report = construct::group_making_sampler(&alphabet, &w("ab"), &w("aab"), 100, 12, 0);
    expect(
        report.group_count == 100 && report.unknown_count == 0,
        &format!(
            "{} group / {} unknown, first unknown {:?}",
            report.group_count, report.unknown_count, report.first_unknown
        ),
    )
}

fn automorphism_fixture() -> Result<(), String> {
    let report = construct::baumslag_gersten_fixture();
    if report.all_pass() {
        Ok(())
    } else {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect();
        Err(format!("failing checks: {failing:?}"))
    }
}

fn identity_proof_letter() -> Result<(), String> {
    let p = SpecialInversePresentation::from_literals("ab", &["abaBbAB"]);
    let r = stephen::proves_identity(&p, &w("a"), &Limits::default());
    expect(
        r.is_proved(),
        &format!("a = 1 not proved within defaults ({r:?})"),
    )?;
    // Rounds actually needed, pinned so regressions surface.
    expect(r.rounds_used == 1, &format!("took {} rounds", r.rounds_used))?;
    for u in ["baB", "bAB"] {
        let r = stephen::proves_invertible(&p, &w(u), &Limits::default());
        expect(r.is_proved(), &format!("{u} not proved invertible"))?;
    }
    Ok(())
}
