//! Regularity decision for the iterated hairpin completion of a single word.
//!
//! Dispatch, in order:
//! - α pseudo-palindromic: `{w₀}` when α occurs at most once, unknown otherwise;
//! - not of the form `αΣ* ∩ Σ*ᾱ`, or crossing: unknown;
//! - `u_m = v_n`: the mirror construction (or `{w₀}` for a (1,1)-word);
//! - (m,1) and (1,m): the (m,1) construction, directly or through the complement;
//! - (2,2): the (2,2) construction;
//! - (3,2) and (2,3): regular under one of the three conditions, otherwise
//!   non-regular with the balanced witness family;
//! - anything else: unknown.
//!
//! Every regular verdict carries an automaton that has been compared with
//! the bounded closure before it is returned.

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{analyze, PrimerAnalysis};
use crate::automata::{Counterexample, Nfa};
use crate::constructions::{
    build_22, build_32_regular, build_m1, build_mirror, conditions_32, witness_word, ThreeTwoConditions,
};
use crate::error::{Error, Result};
use crate::hc::{closure, Sides};
use crate::word::{Primer, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Regular,
    NonRegular,
    Unknown,
}

impl Outcome {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Regular => 0,
            Outcome::NonRegular => 2,
            Outcome::Unknown => 3,
        }
    }
}

/// Which construction or argument produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    Singleton,
    Mirror,
    M1,
    M1Complement,
    TwoTwo,
    ThreeTwo,
    ThreeTwoComplement,
    Witness,
    WitnessComplement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WordClass {
    pub m: usize,
    pub n: usize,
    pub non_crossing: bool,
    pub anchored: bool,
}

/// Balanced non-regularity family `prefix·x^i·middle·y^i·suffix`, `i >= 2`,
/// written in terms of the input word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub prefix: Word,
    pub pump_left: Word,
    pub middle: Word,
    pub pump_right: Word,
    pub suffix: Word,
}

impl Witness {
    pub fn word(&self, i: usize) -> Word {
        self.prefix
            .concat(&self.pump_left.repeat(i))
            .concat(&self.middle)
            .concat(&self.pump_right.repeat(i))
            .concat(&self.suffix)
    }

    fn to_json(&self) -> Value {
        json!({
            "prefix": self.prefix.to_string(),
            "pump_left": self.pump_left.to_string(),
            "middle": self.middle.to_string(),
            "pump_right": self.pump_right.to_string(),
            "suffix": self.suffix.to_string(),
            "family": "prefix pump_left^i middle pump_right^i suffix, i >= 2",
            "samples": [self.word(2).to_string(), self.word(3).to_string()],
        })
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub word: Word,
    pub class: WordClass,
    pub outcome: Outcome,
    pub justification: Option<Justification>,
    pub conditions: Option<ThreeTwoConditions>,
    pub automaton: Option<Nfa>,
    pub witness: Option<Witness>,
    /// Closure bound used to check a regular verdict.
    pub verified_bound: Option<usize>,
    pub reason: String,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "word": self.word.to_string(),
            "class": self.class,
            "outcome": self.outcome,
            "justification": self.justification,
            "conditions": self.conditions.map(|c| c.as_array()),
            "automaton_ref": self.automaton.as_ref().map(Nfa::to_json),
            "witness": self.witness.as_ref().map(Witness::to_json),
            "verified_bound": self.verified_bound,
            "reason": self.reason,
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecideOptions {
    /// Closure bound for checking regular verdicts; defaults to
    /// [`default_verify_bound`].
    pub verify_bound: Option<usize>,
    /// Skip the closure comparison.
    pub skip_verification: bool,
}

/// `|w₀| + 6k + 16`.
pub fn default_verify_bound(w: &Word, primer: &Primer) -> usize {
    w.len() + 6 * primer.k() + 16
}

struct Partial {
    outcome: Outcome,
    justification: Option<Justification>,
    conditions: Option<ThreeTwoConditions>,
    automaton: Option<Nfa>,
    witness: Option<Witness>,
    reason: String,
}

impl Partial {
    fn unknown(reason: impl Into<String>) -> Self {
        Partial {
            outcome: Outcome::Unknown,
            justification: None,
            conditions: None,
            automaton: None,
            witness: None,
            reason: reason.into(),
        }
    }

    fn regular(justification: Justification, automaton: Nfa, reason: impl Into<String>) -> Self {
        Partial {
            outcome: Outcome::Regular,
            justification: Some(justification),
            conditions: None,
            automaton: Some(automaton),
            witness: None,
            reason: reason.into(),
        }
    }
}

pub fn decide(w: &Word, primer: &Primer, options: DecideOptions) -> Result<Verdict> {
    let analysis = analyze(w, primer)?;
    let class = WordClass {
        m: analysis.m(),
        n: analysis.n(),
        non_crossing: analysis.is_non_crossing(),
        anchored: analysis.is_anchored(),
    };
    let partial = dispatch(&analysis)?;
    let mut verified_bound = None;
    if let (Some(nfa), false) = (&partial.automaton, options.skip_verification) {
        let bound = options.verify_bound.unwrap_or_else(|| default_verify_bound(w, primer));
        verify(nfa, w, primer, bound)?;
        verified_bound = Some(bound);
    }
    Ok(Verdict {
        word: w.clone(),
        class,
        outcome: partial.outcome,
        justification: partial.justification,
        conditions: partial.conditions,
        automaton: partial.automaton,
        witness: partial.witness,
        verified_bound,
        reason: partial.reason,
    })
}

/// Compares `nfa` with the closure of `w` up to `bound`.
pub fn verify(nfa: &Nfa, w: &Word, primer: &Primer, bound: usize) -> Result<()> {
    let oracle = closure(w, primer, bound, Sides::Both)?;
    let eq = nfa.equiv_up_to(oracle.members(), bound);
    match eq.counterexample {
        None => Ok(()),
        Some(c) => {
            let detail = match &c {
                Counterexample::Extra(_) => "accepted but not in the closure",
                Counterexample::Missing(_) => "in the closure but rejected",
            };
            Err(Error::VerificationFailed {
                counterexample: c.word().to_string(),
                detail: format!("{detail}, bound {bound}"),
            })
        }
    }
}

fn dispatch(a: &PrimerAnalysis) -> Result<Partial> {
    let w0 = a.word();
    if a.primer().is_pseudo_palindrome() {
        return Ok(if a.m() <= 1 {
            Partial::regular(
                Justification::Singleton,
                Nfa::literal(w0),
                "α is its own complement and occurs at most once, so no step applies",
            )
        } else {
            Partial::unknown("α is its own complement and occurs more than once")
        });
    }
    if !a.is_anchored() {
        return Ok(Partial::unknown(
            "word does not begin with α and end with ᾱ; only anchored words are covered",
        ));
    }
    if !a.is_non_crossing() {
        return Ok(Partial::unknown("word is crossing; no construction covers crossing words"));
    }
    let (m, n) = (a.m(), a.n());
    if a.alpha_prefixes().last() == a.v_words().last() {
        return Ok(if m == 1 && n == 1 {
            Partial::regular(Justification::Singleton, Nfa::literal(w0), "(1,1)-word: the closure is the word itself")
        } else {
            Partial::regular(Justification::Mirror, build_mirror(a)?, "u_m = v_n: closure is U*·w₀·Ū*")
        });
    }
    if n == 1 {
        return Ok(Partial::regular(Justification::M1, build_m1(a)?, "(m,1)-word"));
    }
    if m == 1 {
        let nfa = build_m1(&a.mirrored())?.mirror();
        return Ok(Partial::regular(
            Justification::M1Complement,
            nfa,
            "(1,n)-word: complement of an (n,1)-word",
        ));
    }
    if (m, n) == (2, 2) {
        return Ok(Partial::regular(Justification::TwoTwo, build_22(a)?, "(2,2)-word"));
    }
    if (m, n) == (3, 2) {
        return three_two(a, false);
    }
    if (m, n) == (2, 3) {
        return three_two(&a.mirrored(), true);
    }
    Ok(Partial::unknown(format!("no decision procedure for ({m},{n})-words")))
}

// `a` is a (3,2)-word; with `complemented` it is the complement of the input.
fn three_two(a: &PrimerAnalysis, complemented: bool) -> Result<Partial> {
    if !a.u(2).is_primitive() || !a.v(2).is_primitive() {
        return Ok(Partial::unknown("u₂ or v₂ is not primitive"));
    }
    let conditions = conditions_32(a)?;
    if let Some(c) = conditions.first() {
        let nfa = build_32_regular(a, c)?;
        let (nfa, justification) = if complemented {
            (nfa.mirror(), Justification::ThreeTwoComplement)
        } else {
            (nfa, Justification::ThreeTwo)
        };
        let mut p = Partial::regular(justification, nfa, format!("(3,2) regularity condition {c} holds"));
        p.conditions = Some(conditions);
        return Ok(p);
    }
    let (u2, u3, v2) = (a.u(2).clone(), a.u(3).clone(), a.v(2).clone());
    let plain = Witness {
        prefix: u3.clone(),
        pump_left: u2.clone(),
        middle: v2.concat(a.word()),
        pump_right: u2.complement(),
        suffix: u3.complement(),
    };
    debug_assert_eq!(plain.word(2), witness_word(a, 2));
    let witness = if complemented {
        Witness {
            prefix: plain.suffix.complement(),
            pump_left: plain.pump_right.complement(),
            middle: plain.middle.complement(),
            pump_right: plain.pump_left.complement(),
            suffix: plain.prefix.complement(),
        }
    } else {
        plain
    };
    Ok(Partial {
        outcome: Outcome::NonRegular,
        justification: Some(if complemented {
            Justification::WitnessComplement
        } else {
            Justification::Witness
        }),
        conditions: Some(conditions),
        automaton: None,
        witness: Some(witness),
        reason: "(3,2) word with none of the three regularity conditions".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::InvolutionAlphabet;
    use std::sync::Arc;

    fn setup() -> (Arc<InvolutionAlphabet>, Primer) {
        let s = InvolutionAlphabet::from_pairs([("a", "ā"), ("b", "b̄"), ("c", "c̄"), ("d", "d̄")]).unwrap();
        let p = Primer::parse(&s, "a").unwrap();
        (s, p)
    }

    fn run(t: &str) -> Verdict {
        let (s, p) = setup();
        decide(&Word::parse(&s, t).unwrap(), &p, DecideOptions::default()).unwrap()
    }

    #[test]
    fn regular_classes() {
        let cases = [
            ("aā", Justification::Singleton),
            ("abaā", Justification::M1),
            ("aāb̄ā", Justification::M1Complement),
            ("abaāb̄ā", Justification::Mirror),
            ("abaāc̄ā", Justification::TwoTwo),
            ("abadaād̄ā", Justification::ThreeTwo),
            ("adaād̄āb̄ā", Justification::ThreeTwoComplement),
        ];
        for (t, j) in cases {
            let v = run(t);
            assert_eq!(v.outcome, Outcome::Regular, "{t}");
            assert_eq!(v.justification, Some(j), "{t}");
            assert!(v.verified_bound.is_some());
        }
    }

    #[test]
    fn non_regular_with_witness_in_closure() {
        let (s, p) = setup();
        for t in ["abacaād̄ā", "acaād̄āb̄ā"] {
            let v = run(t);
            assert_eq!(v.outcome, Outcome::NonRegular);
            let w2 = v.witness.as_ref().unwrap().word(2);
            let oracle = closure(&Word::parse(&s, t).unwrap(), &p, w2.len(), Sides::Both).unwrap();
            assert!(oracle.contains(&w2), "{t}: {w2}");
        }
    }

    #[test]
    fn unknown_cases() {
        assert_eq!(run("baā").outcome, Outcome::Unknown);
        assert_eq!(run("aāaā").outcome, Outcome::Unknown);
        assert_eq!(run("abacadaād̄ā").outcome, Outcome::Unknown);
        let (s, _) = setup();
        let pal = Primer::parse(&s, "aā").unwrap();
        let v = decide(&Word::parse(&s, "aābaā").unwrap(), &pal, DecideOptions::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Unknown);
        let v = decide(&Word::parse(&s, "aāb").unwrap(), &pal, DecideOptions::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Regular);
    }

    #[test]
    fn verdict_json_keys() {
        let v = run("abaā").to_json();
        for key in ["class", "outcome", "conditions", "automaton_ref", "witness", "reason"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["outcome"], "regular");
        assert_eq!(v["class"]["m"], 2);
    }

    #[test]
    fn verification_catches_a_wrong_automaton() {
        let (s, p) = setup();
        let w = Word::parse(&s, "abaā").unwrap();
        let err = verify(&Nfa::literal(&w), &w, &p, 12).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed { .. }));
    }
}
