//! Decidable quotients used as certificates: the bicyclic monoid and
//! abelianization.
//!
//! The bicyclic monoid `⟨x | xx⁻¹ = 1⟩` has normal forms `x⁻ᵐxⁿ` and its
//! only unit is the identity, so a homomorphism that kills every relator
//! while sending some generator to a non-identity element certifies that
//! the presented monoid is not a group.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::SpecialInversePresentation;
use crate::word::{Alphabet, Sign, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("word uses more than one generator, not a bicyclic word")]
    MixedAlphabet,
    #[error("no image given for generator {0:?}")]
    MissingImage(char),
    #[error("homomorphism images use more than one target generator")]
    MixedTargetAlphabet,
}

/// Bicyclic element in normal form `x⁻ᵐxⁿ`; `(0, 0)` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BicyclicElement {
    pub m: u64,
    pub n: u64,
}

impl BicyclicElement {
    pub const IDENTITY: BicyclicElement = BicyclicElement { m: 0, n: 0 };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// The identity is the only invertible element.
    pub fn is_invertible(&self) -> bool {
        self.is_identity()
    }
}

/// Normal form of a word over a one-letter alphabet under `xx⁻¹ → ε`.
///
/// Scanning left to right implements right multiplication by one letter at
/// a time, which the rewriting system makes confluent.
pub fn bicyclic_normal_form(w: &Word) -> Result<BicyclicElement, QuotientError> {
    let mut base = None;
    let mut m = 0u64;
    let mut n = 0u64;
    for l in w.iter() {
        match base {
            None => base = Some(l.base()),
            Some(b) if b != l.base() => return Err(QuotientError::MixedAlphabet),
            _ => {}
        }
        match l.sign() {
            Sign::Positive => n += 1,
            Sign::Negative => {
                if n > 0 {
                    n -= 1;
                } else {
                    m += 1;
                }
            }
        }
    }
    Ok(BicyclicElement { m, n })
}

/// `(m,n)·(m',n') = (m + m' − min(n, m'), n' + n − min(n, m'))`.
pub fn bicyclic_mul(e1: BicyclicElement, e2: BicyclicElement) -> BicyclicElement {
    let k = e1.n.min(e2.m);
    BicyclicElement {
        m: e1.m + e2.m - k,
        n: e2.n + e1.n - k,
    }
}

/// A map from source generators to target words; inverse letters receive
/// inverted images. Evaluation is purely graphical — the caller normalizes
/// in the target monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidHom {
    pub images: BTreeMap<char, Word>,
}

impl MonoidHom {
    pub fn new(images: BTreeMap<char, Word>) -> Self {
        MonoidHom { images }
    }

    pub fn eval(&self, w: &Word) -> Result<Word, QuotientError> {
        let mut out = Vec::new();
        for l in w.iter() {
            let image = self
                .images
                .get(&l.base())
                .ok_or(QuotientError::MissingImage(l.base()))?;
            match l.sign() {
                Sign::Positive => out.extend_from_slice(image.letters()),
                Sign::Negative => out.extend(image.letters().iter().rev().map(|x| x.inverse())),
            }
        }
        Ok(Word::from_letters(out))
    }

    // The single target generator, if the images are bicyclic-shaped.
    fn target_base(&self) -> Result<Option<char>, QuotientError> {
        let mut base = None;
        for image in self.images.values() {
            for l in image.iter() {
                match base {
                    None => base = Some(l.base()),
                    Some(b) if b != l.base() => return Err(QuotientError::MixedTargetAlphabet),
                    _ => {}
                }
            }
        }
        Ok(base)
    }
}

pub fn eval_hom(h: &MonoidHom, w: &Word) -> Result<Word, QuotientError> {
    h.eval(w)
}

/// Exponent sum per generator, in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianVector {
    pub sums: Vec<i64>,
}

impl AbelianVector {
    pub fn is_zero(&self) -> bool {
        self.sums.iter().all(|&s| s == 0)
    }
}

pub fn abelianize(alphabet: &Alphabet, w: &Word) -> AbelianVector {
    let mut sums = vec![0i64; alphabet.len()];
    for l in w.iter() {
        if let Some(i) = alphabet.index_of(l.base()) {
            match l.sign() {
                Sign::Positive => sums[i] += 1,
                Sign::Negative => sums[i] -= 1,
            }
        }
    }
    AbelianVector { sums }
}

/// Whether `target` lies in the integer span of `columns`, by exact
/// integer column elimination (a Hermite-style triangularization).
pub fn in_integer_span(columns: &[AbelianVector], target: &AbelianVector) -> bool {
    let dim = target.sums.len();
    let mut active: Vec<Vec<i64>> = columns
        .iter()
        .map(|c| {
            assert_eq!(c.sums.len(), dim);
            c.sums.clone()
        })
        .collect();
    let mut goal = target.sums.clone();
    for row in 0..dim {
        // Combine active columns until at most one is nonzero at `row`.
        // Active columns are zero on every earlier row by construction.
        loop {
            let mut nonzero: Vec<usize> = (0..active.len())
                .filter(|&j| active[j][row] != 0)
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&j| active[j][row].unsigned_abs());
            let (small, big) = (nonzero[0], nonzero[1]);
            let q = active[big][row] / active[small][row];
            let small_col = active[small].clone();
            for (entry, s) in active[big].iter_mut().zip(&small_col) {
                *entry -= q * s;
            }
        }
        let pivot = (0..active.len()).find(|&j| active[j][row] != 0);
        match pivot {
            Some(p) => {
                if goal[row] % active[p][row] != 0 {
                    return false;
                }
                let q = goal[row] / active[p][row];
                for (g, a) in goal.iter_mut().zip(&active[p]) {
                    *g -= q * a;
                }
                active.swap_remove(p);
            }
            None => {
                if goal[row] != 0 {
                    return false;
                }
            }
        }
    }
    debug_assert!(goal.iter().all(|&g| g == 0));
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CertificateOutcome {
    /// The homomorphism kills every relator and sends `witness_letter` to a
    /// non-invertible bicyclic element, so the monoid is not a group.
    CertifiedNotGroup { hom: MonoidHom, witness_letter: char },
    Inapplicable,
}

/// Checks one candidate homomorphism into the bicyclic monoid.
pub fn non_group_certificate(
    p: &SpecialInversePresentation,
    h: &MonoidHom,
) -> Result<CertificateOutcome, QuotientError> {
    h.target_base()?;
    for r in p.relators() {
        if !bicyclic_normal_form(&h.eval(r)?)?.is_identity() {
            return Ok(CertificateOutcome::Inapplicable);
        }
    }
    for ch in p.alphabet().iter() {
        let image = h
            .images
            .get(&ch)
            .ok_or(QuotientError::MissingImage(ch))?;
        if !bicyclic_normal_form(image)?.is_invertible() {
            return Ok(CertificateOutcome::CertifiedNotGroup {
                hom: h.clone(),
                witness_letter: ch,
            });
        }
    }
    Ok(CertificateOutcome::Inapplicable)
}

/// Searches the hypothesis space of maps sending each generator to one of
/// `ε`, `x`, `x⁻¹`, in a fixed order, and returns the first certificate.
pub fn find_non_group_certificate(p: &SpecialInversePresentation) -> Option<CertificateOutcome> {
    let gens: Vec<char> = p.alphabet().iter().collect();
    let options: [Word; 3] = [
        Word::empty(),
        "x".parse().unwrap(),
        "X".parse().unwrap(),
    ];
    let total = 3usize.pow(gens.len() as u32);
    for code in 0..total {
        let mut images = BTreeMap::new();
        let mut rest = code;
        for &g in &gens {
            images.insert(g, options[rest % 3].clone());
            rest /= 3;
        }
        let h = MonoidHom::new(images);
        if let Ok(outcome @ CertificateOutcome::CertifiedNotGroup { .. }) =
            non_group_certificate(p, &h)
        {
            return Some(outcome);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn nf(s: &str) -> BicyclicElement {
        bicyclic_normal_form(&w(s)).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(nf("xX"), BicyclicElement::IDENTITY);
        assert_eq!(nf("xXxX"), BicyclicElement::IDENTITY);
        assert_eq!(nf("Xx"), BicyclicElement { m: 1, n: 1 });
        assert!(!nf("Xx").is_identity());
        assert!(matches!(
            bicyclic_normal_form(&w("xy")),
            Err(QuotientError::MixedAlphabet)
        ));
    }

    /// All descendants of `word` under single `xx⁻¹ → ε` steps, any order.
    fn rewrite_descendants(word: &Word) -> HashSet<Word> {
        let mut seen = HashSet::from([word.clone()]);
        let mut stack = vec![word.clone()];
        while let Some(current) = stack.pop() {
            let ls = current.letters();
            for i in 0..ls.len().saturating_sub(1) {
                if ls[i].is_positive() && ls[i + 1] == ls[i].inverse() {
                    let mut next = ls.to_vec();
                    next.drain(i..=i + 1);
                    let next = Word::from_letters(next);
                    if seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
        seen
    }

    fn irreducible(word: &Word) -> bool {
        !word
            .letters()
            .windows(2)
            .any(|p| p[0].is_positive() && p[1] == p[0].inverse())
    }

    #[test]
    fn rewriting_is_confluent_on_short_words() {
        // Every word over {x, x⁻¹} of length ≤ 4 rewrites to a unique
        // irreducible descendant, which matches the scan.
        let mut words = vec![Word::empty()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for word in &words {
                for l in ["x", "X"] {
                    next.push(word.concat(&w(l)));
                }
            }
            words.extend(next.clone());
            words = words.into_iter().collect::<HashSet<_>>().into_iter().collect();
        }
        for word in &words {
            let normals: Vec<Word> = rewrite_descendants(word)
                .into_iter()
                .filter(irreducible)
                .collect();
            assert_eq!(normals.len(), 1, "not confluent on {word}");
            let e = bicyclic_normal_form(&normals[0]).unwrap();
            assert_eq!(e, bicyclic_normal_form(word).unwrap());
            // The irreducible descendant really is x⁻ᵐxⁿ.
            let expected: String = std::iter::repeat_n('X', e.m as usize)
                .chain(std::iter::repeat_n('x', e.n as usize))
                .collect();
            assert_eq!(normals[0], w(&expected));
        }
    }

    #[test]
    fn exhaustive_oracle_rejects_wrong_direction() {
        // No sequence of xx⁻¹ → ε rewrites takes x⁻¹x to the empty word.
        let descendants = rewrite_descendants(&w("Xx"));
        assert!(!descendants.contains(&Word::empty()));
        assert_eq!(nf("Xx"), BicyclicElement { m: 1, n: 1 });
    }

    #[test]
    fn multiplication_examples() {
        let id = BicyclicElement::IDENTITY;
        let e = BicyclicElement { m: 3, n: 5 };
        assert_eq!(bicyclic_mul(id, e), e);
        assert_eq!(bicyclic_mul(e, id), e);
        assert_eq!(
            bicyclic_mul(BicyclicElement { m: 0, n: 1 }, BicyclicElement { m: 1, n: 0 }),
            id
        );
        assert_eq!(
            bicyclic_mul(BicyclicElement { m: 1, n: 0 }, BicyclicElement { m: 0, n: 1 }),
            BicyclicElement { m: 1, n: 1 }
        );
    }

    #[test]
    fn only_identity_is_invertible_in_grid() {
        let grid: Vec<BicyclicElement> = (0..10)
            .flat_map(|m| (0..10).map(move |n| BicyclicElement { m, n }))
            .collect();
        for &e in &grid {
            if e.is_identity() {
                continue;
            }
            for &f in &grid {
                assert!(
                    !(bicyclic_mul(e, f).is_identity() && bicyclic_mul(f, e).is_identity()),
                    "{e:?} invertible with {f:?}"
                );
            }
        }
    }

    #[test]
    fn hom_evaluation_examples() {
        let h = MonoidHom::new(BTreeMap::from([('a', Word::empty()), ('b', w("x"))]));
        let image = h.eval(&w("abaBbAB")).unwrap();
        assert_eq!(image, w("xXxX"));
        assert!(bicyclic_normal_form(&image).unwrap().is_identity());

        let h = MonoidHom::new(BTreeMap::from([('a', w("x")), ('b', Word::empty())]));
        let image = h.eval(&w("abAB")).unwrap();
        assert_eq!(image, w("xX"));
        assert!(bicyclic_normal_form(&image).unwrap().is_identity());

        let identity = MonoidHom::new(BTreeMap::from([('a', w("a")), ('b', w("b"))]));
        assert_eq!(
            identity.eval(&w("abBa")).unwrap().free_reduce(),
            w("abBa").free_reduce()
        );

        assert_eq!(
            h.eval(&w("c")),
            Err(QuotientError::MissingImage('c'))
        );
    }

    #[test]
    fn abelianize_examples() {
        let ab = Alphabet::parse("ab").unwrap();
        assert!(abelianize(&ab, &w("abAB")).is_zero());
        assert_eq!(abelianize(&ab, &w("aabbaabab")).sums, vec![5, 4]);
        let word = w("abAbb");
        assert!(abelianize(&ab, &word.concat(&word.invert())).is_zero());
    }

    #[test]
    fn abelianize_commutes_with_endomorphism() {
        // abelianize(φ(w)) is the matrix with columns abelianize(φ(a)),
        // abelianize(φ(b)) applied to abelianize(w).
        use crate::word::apply_endomorphism;
        let ab = Alphabet::parse("ab").unwrap();
        let phi = BTreeMap::from([('a', w("abaab")), ('b', w("ab"))]);
        let col_a = abelianize(&ab, &phi[&'a']).sums;
        let col_b = abelianize(&ab, &phi[&'b']).sums;
        for word in ["baB", "BaB", "abAB", "aabbaabab", "bbbA"] {
            let word = w(word);
            let input = abelianize(&ab, &word).sums;
            let image = abelianize(&ab, &apply_endomorphism(&phi, &word).unwrap());
            let expected: Vec<i64> = (0..2)
                .map(|i| col_a[i] * input[0] + col_b[i] * input[1])
                .collect();
            assert_eq!(image.sums, expected, "word {word}");
        }
    }

    #[test]
    fn integer_span_membership() {
        let v = |s: Vec<i64>| AbelianVector { sums: s };
        assert!(in_integer_span(&[v(vec![5, 4])], &v(vec![10, 8])));
        assert!(!in_integer_span(&[v(vec![5, 4])], &v(vec![5, 5])));
        assert!(!in_integer_span(&[v(vec![2, 0])], &v(vec![1, 0])));
        assert!(in_integer_span(&[v(vec![2, 1]), v(vec![0, 3])], &v(vec![4, 8])));
        assert!(in_integer_span(&[], &v(vec![0, 0])));
        assert!(!in_integer_span(&[], &v(vec![1, 0])));
    }

    #[test]
    fn certificate_for_counterexample_presentation() {
        let p = SpecialInversePresentation::from_literals("ab", &["abaBbAB"]);
        let h = MonoidHom::new(BTreeMap::from([('a', Word::empty()), ('b', w("x"))]));
        let outcome = non_group_certificate(&p, &h).unwrap();
        assert!(matches!(
            outcome,
            CertificateOutcome::CertifiedNotGroup {
                witness_letter: 'b',
                ..
            }
        ));
    }

    #[test]
    fn certificate_for_commutator_presentation() {
        let p = SpecialInversePresentation::from_literals("ab", &["abAB"]);
        let h = MonoidHom::new(BTreeMap::from([('a', w("x")), ('b', Word::empty())]));
        assert!(matches!(
            non_group_certificate(&p, &h).unwrap(),
            CertificateOutcome::CertifiedNotGroup {
                witness_letter: 'a',
                ..
            }
        ));
        // The automatic search also finds one (possibly a different hom).
        assert!(find_non_group_certificate(&p).is_some());
    }

    #[test]
    fn no_certificate_for_group_presentation() {
        // Nonzero exponent sums leave no relator-killing hom with a
        // non-invertible image; the exhaustive search comes up empty.
        let p = SpecialInversePresentation::from_literals("ab", &["aabbaabab"]);
        assert!(find_non_group_certificate(&p).is_none());
    }

    #[test]
    fn hom_with_mixed_target_rejected() {
        let p = SpecialInversePresentation::from_literals("ab", &["abAB"]);
        let h = MonoidHom::new(BTreeMap::from([('a', w("x")), ('b', w("y"))]));
        assert_eq!(
            non_group_certificate(&p, &h),
            Err(QuotientError::MixedTargetAlphabet)
        );
    }

    fn arb_x_word(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(proptest::bool::ANY, 0..=max_len).prop_map(|signs| {
            Word::from_letters(
                signs
                    .into_iter()
                    .map(|pos| {
                        if pos {
                            crate::word::SignedLetter::positive('x')
                        } else {
                            crate::word::SignedLetter::negative('x')
                        }
                    })
                    .collect(),
            )
        })
    }

    fn arb_two_letter_word(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec((0u8..2, proptest::bool::ANY), 0..=max_len).prop_map(|ls| {
            Word::from_letters(
                ls.into_iter()
                    .map(|(g, pos)| {
                        let ch = (b'a' + g) as char;
                        if pos {
                            crate::word::SignedLetter::positive(ch)
                        } else {
                            crate::word::SignedLetter::negative(ch)
                        }
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn eval_hom_multiplicative_and_inverse_compatible(
            u in arb_two_letter_word(10),
            v in arb_two_letter_word(10),
        ) {
            let h = MonoidHom::new(BTreeMap::from([('a', w("xX")), ('b', w("x"))]));
            prop_assert_eq!(
                h.eval(&u.concat(&v)).unwrap(),
                h.eval(&u).unwrap().concat(&h.eval(&v).unwrap())
            );
            prop_assert_eq!(h.eval(&u.invert()).unwrap(), h.eval(&u).unwrap().invert());
        }

        #[test]
        fn normal_form_respects_concatenation(u in arb_x_word(12), v in arb_x_word(12)) {
            let whole = bicyclic_normal_form(&u.concat(&v)).unwrap();
            let parts = bicyclic_mul(
                bicyclic_normal_form(&u).unwrap(),
                bicyclic_normal_form(&v).unwrap(),
            );
            prop_assert_eq!(whole, parts);
        }

        #[test]
        fn multiplication_is_associative(
            a in (0u64..8, 0u64..8),
            b in (0u64..8, 0u64..8),
            c in (0u64..8, 0u64..8),
        ) {
            let e = |p: (u64, u64)| BicyclicElement { m: p.0, n: p.1 };
            prop_assert_eq!(
                bicyclic_mul(bicyclic_mul(e(a), e(b)), e(c)),
                bicyclic_mul(e(a), bicyclic_mul(e(b), e(c)))
            );
        }
    }
}
