use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Nfa, Transition};
use crate::alphabet::InvolutionAlphabet;
use crate::error::{Error, Result};

/// JSON form: `{states, initial, accepting, transitions: [{from, label, to}]}`
/// where `label` is a letter token or `null` for ε.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfaJson {
    pub states: Vec<usize>,
    pub initial: Vec<usize>,
    pub accepting: Vec<usize>,
    pub transitions: Vec<TransitionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub from: usize,
    pub label: Option<String>,
    pub to: usize,
}

impl Nfa {
    pub fn to_json(&self) -> NfaJson {
        NfaJson {
            states: (0..self.num_states).collect(),
            initial: self.initial.iter().copied().collect(),
            accepting: self.accepting.iter().copied().collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionJson {
                    from: t.from,
                    label: t.label.map(|l| self.alphabet.token(l).to_owned()),
                    to: t.to,
                })
                .collect(),
        }
    }

    pub fn from_json(alphabet: &Arc<InvolutionAlphabet>, json: &NfaJson) -> Result<Nfa> {
        let states: BTreeSet<usize> = json.states.iter().copied().collect();
        let n = states.len();
        if states.iter().enumerate().any(|(i, s)| i != *s) {
            return Err(Error::PreconditionViolated("states must be numbered 0..n".into()));
        }
        let in_range = |s: usize| {
            if s < n {
                Ok(s)
            } else {
                Err(Error::PreconditionViolated(format!("undeclared state {s}")))
            }
        };
        let mut transitions = Vec::with_capacity(json.transitions.len());
        for t in &json.transitions {
            let label = match &t.label {
                None => None,
                Some(tok) => Some(alphabet.letter(tok).ok_or_else(|| Error::UnknownLetter {
                    token: tok.clone(),
                    input: "automaton JSON".into(),
                })?),
            };
            transitions.push(Transition {
                from: in_range(t.from)?,
                label,
                to: in_range(t.to)?,
            });
        }
        Ok(Nfa {
            alphabet: Arc::clone(alphabet),
            num_states: n,
            transitions,
            initial: json.initial.iter().map(|&s| in_range(s)).collect::<Result<_>>()?,
            accepting: json.accepting.iter().map(|&s| in_range(s)).collect::<Result<_>>()?,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        for s in 0..self.num_states {
            let shape = if self.accepting.contains(&s) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  q{s} [shape={shape}];");
        }
        for &s in &self.initial {
            let _ = writeln!(out, "  start{s} [shape=point];\n  start{s} -> q{s};");
        }
        for t in &self.transitions {
            let label = t.label.map_or("ε", |l| self.alphabet.token(l));
            let _ = writeln!(out, "  q{} -> q{} [label=\"{}\"];", t.from, t.to, label.replace('"', "\\\""));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    #[test]
    fn json_round_trip_preserves_language() {
        let s = InvolutionAlphabet::from_pairs([("a", "ā"), ("b", "b̄")]).unwrap();
        let nfa = Nfa::literal(&Word::parse(&s, "ab").unwrap())
            .star()
            .union(&Nfa::literal(&Word::parse(&s, "ā").unwrap()))
            .unwrap();
        let json = nfa.to_json();
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"label\":null"));
        let back = Nfa::from_json(&s, &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.enumerate(6), nfa.enumerate(6));
    }

    #[test]
    fn json_rejects_undeclared_states() {
        let s = InvolutionAlphabet::dna();
        let json = NfaJson {
            states: vec![0],
            initial: vec![0],
            accepting: vec![1],
            transitions: vec![],
        };
        assert!(Nfa::from_json(&s, &json).is_err());
    }

    #[test]
    fn dot_marks_accepting_and_epsilon() {
        let s = InvolutionAlphabet::dna();
        let dot = Nfa::literal(&Word::parse(&s, "A").unwrap()).star().to_dot();
        assert!(dot.starts_with("digraph nfa {"));
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("label=\"ε\""));
        assert!(dot.contains("label=\"A\""));
    }
}
