mod common;

use std::collections::BTreeMap;

use common::{alphabet, random_non_crossing};
use hairpin::{decide, DecideOptions, Justification, Outcome, PrimerAnalysis};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn options(a: &PrimerAnalysis) -> DecideOptions {
    DecideOptions {
        verify_bound: Some(a.word().len() + 4 * a.k() + 8),
        skip_verification: false,
    }
}

// Every regular verdict is checked against the closure inside `decide`, so
// an error here is a construction that disagrees with the oracle.
#[test]
fn random_non_crossing_words_get_verified_verdicts() {
    let s = alphabet();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..400 {
        let a = random_non_crossing(&mut rng, &s, 2, 13, |_| true);
        let v = decide(a.word(), a.primer(), options(&a))
            .unwrap_or_else(|e| panic!("{} (α = {}): {e}", a.word(), a.primer().alpha()));
        if v.outcome == Outcome::Regular {
            assert!(v.verified_bound.is_some());
        }
        let key = match v.justification {
            Some(j) => format!("{j:?}"),
            None => format!("{:?}", v.outcome),
        };
        *seen.entry(key).or_default() += 1;
    }
    for j in [Justification::M1, Justification::M1Complement, Justification::Mirror, Justification::TwoTwo] {
        assert!(seen.contains_key(&format!("{j:?}")), "{j:?} never exercised: {seen:?}");
    }
}

#[test]
fn three_two_words_are_decided_both_ways() {
    let s = alphabet();
    let mut rng = StdRng::seed_from_u64(32);
    let (mut regular, mut non_regular) = (0, 0);
    for _ in 0..40 {
        let a = random_non_crossing(&mut rng, &s, 2, 14, |a| {
            (a.m(), a.n()) == (3, 2) || (a.m(), a.n()) == (2, 3)
        });
        let v = decide(a.word(), a.primer(), options(&a))
            .unwrap_or_else(|e| panic!("{} (α = {}): {e}", a.word(), a.primer().alpha()));
        match v.outcome {
            Outcome::Regular => regular += 1,
            Outcome::NonRegular => {
                let w = v.witness.as_ref().unwrap().word(2);
                non_regular += 1;
                if w.len() > 32 {
                    continue;
                }
                let members = hairpin::closure(a.word(), a.primer(), w.len(), hairpin::Sides::Both).unwrap();
                assert!(members.contains(&w), "{}: witness {w} not reachable", a.word());
            }
            Outcome::Unknown => {}
        }
    }
    assert!(regular > 0 && non_regular > 0, "regular {regular}, non-regular {non_regular}");
}
