//! Finite automata for the iterated hairpin completion of the non-crossing
//! word classes whose closure is regular, and the witness language used to
//! certify the non-regular (3,2) case.
//!
//! Unless stated otherwise every builder expects a non-crossing word
//! `w₀ ∈ αΣ* ∩ Σ*ᾱ` with `α ≠ ᾱ` and returns an automaton for `HC*(w₀)`.

use std::sync::Arc;

use serde::Serialize;

use crate::alphabet::InvolutionAlphabet;
use crate::analysis::{analyze, PrimerAnalysis};
use crate::automata::{Nfa, NfaBuilder};
use crate::error::{Error, Result};
use crate::hc::{closure, Sides};
use crate::word::{commute, Word};

/// One extension word together with the position of the primer occurrence
/// it comes from and the minimum word length at which the step is legal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    /// The word added to the current word (`ū_i` on the right, `v_j` on the left).
    pub word: Word,
    /// 1-based index `i` or `j` in the analysis list.
    pub index: usize,
    /// `|u_i| + 2k` (right) or `|v_j| + 2k` (left).
    pub gate: usize,
}

/// The extension atoms available to a word and their overlap gates. λ atoms
/// are left out since they add nothing.
#[derive(Clone, Debug)]
pub struct ExtensionSystem {
    analysis: PrimerAnalysis,
    left_atoms: Vec<Atom>,
    right_atoms: Vec<Atom>,
}

impl ExtensionSystem {
    pub fn new(analysis: &PrimerAnalysis) -> Self {
        let k = analysis.k();
        let atoms = |list: &[Word], complemented: bool| -> Vec<Atom> {
            list.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_empty())
                .map(|(i, x)| Atom {
                    word: if complemented { x.complement() } else { x.clone() },
                    index: i + 1,
                    gate: x.len() + 2 * k,
                })
                .collect()
        };
        Self {
            left_atoms: atoms(analysis.v_words(), false),
            right_atoms: atoms(analysis.alpha_prefixes(), true),
            analysis: analysis.clone(),
        }
    }

    pub fn analysis(&self) -> &PrimerAnalysis {
        &self.analysis
    }

    /// `v_2..v_n`.
    pub fn left_atoms(&self) -> &[Atom] {
        &self.left_atoms
    }

    /// `ū_2..ū_m`.
    pub fn right_atoms(&self) -> &[Atom] {
        &self.right_atoms
    }

    pub fn is_legal(atom: &Atom, current_len: usize) -> bool {
        atom.gate <= current_len
    }

    /// Length from which every right atom is enabled.
    pub fn right_threshold(&self) -> usize {
        self.right_atoms
            .iter()
            .map(|a| a.gate)
            .max()
            .unwrap_or(0)
            .max(self.analysis.word().len())
    }
}

fn alphabet_of(analysis: &PrimerAnalysis) -> &Arc<InvolutionAlphabet> {
    analysis.word().alphabet()
}

/// Errors unless the analyzed word is anchored and non-crossing.
pub fn require_non_crossing_anchored(analysis: &PrimerAnalysis) -> Result<()> {
    if !analysis.is_anchored() {
        return Err(Error::NotAnchored);
    }
    if !analysis.is_non_crossing() {
        return Err(Error::NotNonCrossing);
    }
    Ok(())
}

fn class_error(analysis: &PrimerAnalysis, expected: &str) -> Error {
    Error::WrongClass(format!(
        "expected {expected}, got a ({}, {})-word",
        analysis.m(),
        analysis.n()
    ))
}

fn analyze_like(analysis: &PrimerAnalysis, w: &Word) -> PrimerAnalysis {
    analyze(w, analysis.primer()).expect("derived word shares the alphabet")
}

fn literal_set(words: &[Word], alphabet: &Arc<InvolutionAlphabet>) -> Nfa {
    Nfa::from_words(alphabet, words.iter())
}

// Saturating length counter for the right side: one state per length in
// |w₀|..=T, with `entry` as the |w₀| state. Returns the counter states.
fn right_counter(
    b: &mut NfaBuilder,
    system: &ExtensionSystem,
    entry: usize,
) -> Vec<usize> {
    let base = system.analysis().word().len();
    let threshold = system.right_threshold();
    let classes: Vec<usize> = (base..=threshold)
        .map(|len| if len == base { entry } else { b.add_state() })
        .collect();
    for (offset, &from) in classes.iter().enumerate() {
        let len = base + offset;
        for atom in system.right_atoms() {
            if ExtensionSystem::is_legal(atom, len) {
                let to = classes[(len + atom.word.len()).min(threshold) - base];
                b.add_path(from, atom.word.letters(), to);
            }
        }
    }
    classes
}

/// `RHC*(w₀)` or `LHC*(w₀)`. The right side tracks the current length up to
/// the largest gate; the left side is the complement mirror of the right
/// side of `complement(w₀)`.
pub fn build_one_sided(analysis: &PrimerAnalysis, side: Sides) -> Result<Nfa> {
    require_non_crossing_anchored(analysis)?;
    match side {
        Sides::Right => {
            let system = ExtensionSystem::new(analysis);
            let mut b = Nfa::builder(alphabet_of(analysis));
            let start = b.add_state();
            let entry = b.add_state();
            b.add_path(start, analysis.word().letters(), entry);
            b.set_initial(start);
            for s in right_counter(&mut b, &system, entry) {
                b.set_accepting(s);
            }
            Ok(b.build())
        }
        Sides::Left => Ok(build_one_sided(&analysis.mirrored(), Sides::Right)?.mirror()),
        Sides::Both => Err(Error::PreconditionViolated(
            "one-sided construction needs side left or right".into(),
        )),
    }
}

fn require_m1(analysis: &PrimerAnalysis) -> Result<()> {
    require_non_crossing_anchored(analysis)?;
    if analysis.n() != 1 || analysis.m() < 1 {
        return Err(class_error(analysis, "an (m,1)-word"));
    }
    Ok(())
}

/// `HC*(w₀)` for a non-crossing (m,1)-word.
///
/// Words are `x_s⋯x_1·w₀·ȳ_1⋯ȳ_t` with all `x_i, y_j ∈ {u_2..u_m}` and
/// `max ind(x_i) <= max ind(y_j)`. The automaton reads the left atoms
/// remembering their largest index, then `w₀`, then the right atoms
/// remembering their largest index and the saturated length (gates are
/// measured from `|w₀|`), and accepts once the right maximum has caught up.
pub fn build_m1(analysis: &PrimerAnalysis) -> Result<Nfa> {
    require_m1(analysis)?;
    let alphabet = alphabet_of(analysis);
    let w0 = analysis.word();
    let m = analysis.m();
    if m == 1 {
        return Ok(Nfa::literal(w0));
    }
    let system = ExtensionSystem::new(analysis);
    let base = w0.len();
    let threshold = system.right_threshold();
    let lens = threshold - base + 1;

    let mut b = Nfa::builder(alphabet);
    // left[ℓ] for ℓ in 1..=m (index 0 unused)
    let left: Vec<usize> = (0..=m).map(|_| b.add_state()).collect();
    let right_id = |l: usize, r: usize, len: usize| (l * (m + 1) + r) * lens + (len - base);
    let right: Vec<usize> = (0..(m + 1) * (m + 1) * lens).map(|_| b.add_state()).collect();
    b.set_initial(left[1]);

    for l in 1..=m {
        for atom in system.right_atoms() {
            // left atoms of an (m,1)-word are α-prefixes u_i
            let u = atom.word.complement();
            b.add_path(left[l], u.letters(), left[l.max(atom.index)]);
        }
        b.add_path(left[l], w0.letters(), right[right_id(l, 1, base)]);
        for r in 1..=m {
            for len in base..=threshold {
                let from = right[right_id(l, r, len)];
                if r >= l {
                    b.set_accepting(from);
                }
                for atom in system.right_atoms() {
                    if ExtensionSystem::is_legal(atom, len) {
                        let next_len = (len + atom.word.len()).min(threshold);
                        let to = right[right_id(l, r.max(atom.index), next_len)];
                        b.add_path(from, atom.word.letters(), to);
                    }
                }
            }
        }
    }
    Ok(b.build().trim())
}

/// Direct transcription of the displayed (m,1) language, λ atoms included:
/// `{w₀} ∪ {x_s⋯x_1·w₀·ȳ_1⋯ȳ_t : s >= 0, t >= 1, max ind(x) <= max ind(y)}`
/// where `y_1` ranges over `u_1..u_m` when `|u_m| + 2k <= |w₀|` and over
/// `u_1..u_{m-1}` otherwise, and every other atom over `u_1..u_m`.
pub fn build_m1_literal(analysis: &PrimerAnalysis) -> Result<Nfa> {
    require_m1(analysis)?;
    let alphabet = alphabet_of(analysis);
    let w0 = analysis.word();
    let m = analysis.m();
    let us = analysis.alpha_prefixes();
    let first_limit = if us[m - 1].len() + 2 * analysis.k() <= w0.len() {
        m
    } else {
        m - 1
    };

    let mut b = Nfa::builder(alphabet);
    // left[ℓ], ℓ = 0 means no x read yet
    let left: Vec<usize> = (0..=m).map(|_| b.add_state()).collect();
    let after_w0: Vec<usize> = (0..=m).map(|_| b.add_state()).collect();
    // right[ℓ][r]
    let right: Vec<Vec<usize>> = (0..=m).map(|_| (0..=m).map(|_| b.add_state()).collect()).collect();
    b.set_initial(left[0]);
    for l in 0..=m {
        for (i, u) in us.iter().enumerate() {
            b.add_path(left[l], u.letters(), left[l.max(i + 1)]);
        }
        b.add_path(left[l], w0.letters(), after_w0[l]);
        for (i, u) in us.iter().enumerate().take(first_limit) {
            b.add_path(after_w0[l], u.complement().letters(), right[l][i + 1]);
        }
        for r in 1..=m {
            if r >= l {
                b.set_accepting(right[l][r]);
            }
            for (i, u) in us.iter().enumerate() {
                b.add_path(right[l][r], u.complement().letters(), right[l][r.max(i + 1)]);
            }
        }
    }
    let body = b.build();
    body.union(&Nfa::literal(w0)).map(|n| n.trim())
}

/// `{u_1..u_m}*·w₀·{ū_1..ū_m}*` for a non-crossing word with `u_m = v_n`, `m >= 2`.
pub fn build_mirror(analysis: &PrimerAnalysis) -> Result<Nfa> {
    require_non_crossing_anchored(analysis)?;
    let m = analysis.m();
    if m < 2 || analysis.alpha_prefixes().last() != analysis.v_words().last() {
        return Err(class_error(analysis, "a word with u_m = v_n and m >= 2"));
    }
    let alphabet = alphabet_of(analysis);
    let us = analysis.alpha_prefixes();
    let bars: Vec<Word> = us.iter().map(Word::complement).collect();
    Nfa::concat_all(
        alphabet,
        [
            &literal_set(us, alphabet).star(),
            &Nfa::literal(analysis.word()),
            &literal_set(&bars, alphabet).star(),
        ],
    )
}

fn require_class(analysis: &PrimerAnalysis, m: usize, n: usize) -> Result<()> {
    require_non_crossing_anchored(analysis)?;
    if analysis.m() != m || analysis.n() != n {
        return Err(class_error(analysis, &format!("an ({m},{n})-word")));
    }
    Ok(())
}

/// `HC*(v₂·w₀)` for a non-crossing (2,2)-word:
/// `v₂*(v₂w₀)v̄₂* ∪ (v₂⁺u₂)*v₂*(v₂w₀)v̄₂*(ū₂v̄₂⁺)⁺`.
pub fn build_r22_left(analysis: &PrimerAnalysis) -> Result<Nfa> {
    require_class(analysis, 2, 2)?;
    let u2 = Nfa::literal(analysis.u(2));
    let v2 = Nfa::literal(analysis.v(2));
    let u2_bar = Nfa::literal(&analysis.u(2).complement());
    let v2_bar = Nfa::literal(&analysis.v(2).complement());
    let core = Nfa::literal(&analysis.v(2).concat(analysis.word()));
    let alphabet = alphabet_of(analysis);

    let plain = Nfa::concat_all(alphabet, [&v2.star(), &core, &v2_bar.star()])?;
    let left_blocks = v2.plus().concat(&u2)?.star();
    let right_blocks = u2_bar.concat(&v2_bar.plus())?.plus();
    let extended = Nfa::concat_all(
        alphabet,
        [&left_blocks, &v2.star(), &core, &v2_bar.star(), &right_blocks],
    )?;
    plain.union(&extended)
}

/// `HC*(w₀)` for a non-crossing (2,2)-word: `{w₀} ∪ R_22L ∪ R_22R`, where
/// `R_22R = HC*(w₀·ū₂)` is the complement mirror of `R_22L` built for
/// `complement(w₀)`. When `u₂ = v₂` the mirror construction applies instead.
pub fn build_22(analysis: &PrimerAnalysis) -> Result<Nfa> {
    require_class(analysis, 2, 2)?;
    if analysis.u(2) == analysis.v(2) {
        return build_mirror(analysis);
    }
    let left = build_r22_left(analysis)?;
    let right = build_r22_left(&analysis.mirrored())?.mirror();
    Nfa::literal(analysis.word()).union(&left)?.union(&right)
}

/// The three regularity conditions for a non-crossing (3,2)-word, each
/// evaluated both through commutation and as the equivalent word equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeTwoConditions {
    /// `u₂` commutes with `v₂`.
    pub u2_commutes_v2: bool,
    /// `u₂` commutes with `u₃`.
    pub u2_commutes_u3: bool,
    /// `u₃ = u₂·v₂`.
    pub u3_is_u2_v2: bool,
    /// `u₂ = v₂`.
    pub u2_equals_v2: bool,
    /// `u₃ = u₂²`.
    pub u3_is_u2_squared: bool,
}

impl ThreeTwoConditions {
    pub fn as_array(&self) -> [bool; 3] {
        [self.u2_commutes_v2, self.u2_commutes_u3, self.u3_is_u2_v2]
    }

    /// First satisfied condition, in the order 1, 2, 3.
    pub fn first(&self) -> Option<u8> {
        self.as_array().iter().position(|&c| c).map(|i| i as u8 + 1)
    }

    pub fn any(&self) -> bool {
        self.first().is_some()
    }

    /// Commutation and the word-equation forms agree, as primitivity of
    /// `u₂` and `v₂` guarantees.
    pub fn is_consistent(&self) -> bool {
        self.u2_commutes_v2 == self.u2_equals_v2 && self.u2_commutes_u3 == self.u3_is_u2_squared
    }
}

fn require_32(analysis: &PrimerAnalysis) -> Result<()> {
    require_class(analysis, 3, 2)
}

pub fn conditions_32(analysis: &PrimerAnalysis) -> Result<ThreeTwoConditions> {
    require_32(analysis)?;
    let (u2, u3, v2) = (analysis.u(2), analysis.u(3), analysis.v(2));
    Ok(ThreeTwoConditions {
        u2_commutes_v2: commute(u2, v2),
        u2_commutes_u3: commute(u2, u3),
        u3_is_u2_v2: *u3 == u2.concat(v2),
        u2_equals_v2: u2 == v2,
        u3_is_u2_squared: *u3 == u2.repeat(2),
    })
}

/// `HC*` of an (m,1)-word, or of a (1,n)-word through the complement mirror.
fn build_m1_either_side(analysis: &PrimerAnalysis) -> Result<Nfa> {
    if analysis.n() == 1 {
        build_m1(analysis)
    } else if analysis.m() == 1 {
        Ok(build_m1(&analysis.mirrored())?.mirror())
    } else {
        Err(class_error(analysis, "an (m,1)- or (1,n)-word"))
    }
}

// HC*(x·w) restricted to words containing x·w·y, computed as
// HC*(w-part) ∩ Σ*·marker·Σ*.
fn restrict(piece: Nfa, marker: &Word) -> Result<Nfa> {
    piece.intersect(&Nfa::factor_marker(marker))
}

/// `HC*(w₀)` for a non-crossing (3,2)-word satisfying regularity
/// condition `condition` (1: `u₂ ~ v₂`, 2: `u₂ ~ u₃`, 3: `u₃ = u₂v₂`).
pub fn build_32_regular(analysis: &PrimerAnalysis, condition: u8) -> Result<Nfa> {
    let conditions = conditions_32(analysis)?;
    let holds = match condition {
        1 => conditions.u2_commutes_v2,
        2 => conditions.u2_commutes_u3,
        3 => conditions.u3_is_u2_v2,
        _ => return Err(Error::PreconditionViolated(format!("no condition {condition}"))),
    };
    if !holds {
        return Err(Error::ConditionNotSatisfied(condition));
    }
    let alphabet = alphabet_of(analysis);
    let w0 = analysis.word();
    let (u2, v2) = (analysis.u(2), analysis.v(2));
    let u2_bar = u2.complement();
    let v2_bar = v2.complement();
    // w₀ = w'·v̄₂, where w' is a (3,1)-word
    let w_prime = w0.prefix(w0.len() - v2_bar.len());
    let seed = Nfa::literal(w0);

    match condition {
        1 => {
            let piece = build_m1(&analyze_like(analysis, &w_prime))?;
            restrict(piece, &w_prime.concat(&u2_bar))
        }
        2 => {
            // HC*(w₀·ū₂) = HC*(w) ∩ Σ*·u₂w·Σ* for w₀ = u₂·w, w a (2,2)-word
            let w = w0.suffix_from(u2.len());
            let right = restrict(build_22(&analyze_like(analysis, &w))?, &u2.concat(&w))?;
            // HC*(v₂·w₀) = HC*(v₂w') ∩ Σ*·v₂w'v̄₂·Σ* for the (4,1)-word v₂w'
            let v2w = v2.concat(&w_prime);
            let left = restrict(build_m1(&analyze_like(analysis, &v2w))?, &v2w.concat(&v2_bar))?;
            Nfa::union_all(alphabet, [&seed, &left, &right])
        }
        _ => {
            let v2w = v2.concat(&w_prime);
            let left = restrict(build_m1(&analyze_like(analysis, &v2w))?, &v2w.concat(&v2_bar))?;
            // w₀ū₂ has α-prefixes {λ, u₂, u₂v₂} mirrored by its ᾱ-suffixes
            let middle = build_mirror(&analyze_like(analysis, &w0.concat(&u2_bar)))?;
            // w₀v̄₂ū₂ = u₂v₂·w₂ with w₂ a (1,4)-word
            let extended = w0.concat(&v2_bar).concat(&u2_bar);
            let w2 = extended.suffix_from(u2.len() + v2.len());
            let far = restrict(build_m1_either_side(&analyze_like(analysis, &w2))?, &extended)?;
            Nfa::union_all(alphabet, [&seed, &left, &middle, &far])
        }
    }
}

/// `u₃·u₂^{>=2}·v₂·w₀·ū₂^{>=2}·ū₃` for a non-crossing (3,2)-word.
pub fn witness_language(analysis: &PrimerAnalysis) -> Result<Nfa> {
    require_32(analysis)?;
    let alphabet = alphabet_of(analysis);
    let (u2, u3, v2) = (analysis.u(2), analysis.u(3), analysis.v(2));
    let u2_bar = u2.complement();
    let lit = Nfa::literal;
    Nfa::concat_all(
        alphabet,
        [
            &lit(u3),
            &lit(&u2.repeat(2)),
            &lit(u2).star(),
            &lit(&v2.concat(analysis.word())),
            &lit(&u2_bar.repeat(2)),
            &lit(&u2_bar).star(),
            &lit(&u3.complement()),
        ],
    )
}

/// `u₃·u₂^i·v₂·w₀·ū₂^i·ū₃`.
pub fn witness_word(analysis: &PrimerAnalysis, i: usize) -> Word {
    let (u2, u3, v2) = (analysis.u(2), analysis.u(3), analysis.v(2));
    u3.concat(&u2.repeat(i))
        .concat(v2)
        .concat(analysis.word())
        .concat(&u2.complement().repeat(i))
        .concat(&u3.complement())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessMember {
    pub exponent: usize,
    pub word: Word,
}

/// Bounded certificate for the non-regular (3,2) case: the closure members
/// inside the witness language, split into the expected balanced family and
/// anything else.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub instance: Word,
    pub conditions: ThreeTwoConditions,
    pub bound: usize,
    pub i_max: usize,
    /// Balanced members `u₃u₂^i v₂ w₀ ū₂^i ū₃` found in the closure.
    pub family: Vec<WitnessMember>,
    /// Exponents `2..=i_max` whose balanced word is missing from the closure.
    pub missing: Vec<usize>,
    /// Closure members in the witness language that are not balanced.
    pub extraneous: Vec<Word>,
}

impl WitnessReport {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.extraneous.is_empty()
    }
}

/// Intersects the closure of `w₀` (bounded by `bound`) with the witness
/// language and compares against `{u₃u₂^i v₂ w₀ ū₂^i ū₃ : 2 <= i <= i_max}`,
/// where `i_max` is the largest exponent whose word fits in `bound`. The
/// requested `i_max` must fit.
pub fn witness_family(analysis: &PrimerAnalysis, i_max: usize, bound: usize) -> Result<WitnessReport> {
    let conditions = conditions_32(analysis)?;
    if let Some(c) = conditions.first() {
        return Err(Error::ConditionViolated(c));
    }
    let required = witness_word(analysis, i_max.max(2)).len();
    if bound < required {
        return Err(Error::BoundTooSmall { bound, required });
    }
    let fitting = (2..)
        .take_while(|&i| witness_word(analysis, i).len() <= bound)
        .last()
        .unwrap_or(2);
    let language = witness_language(analysis)?;
    let members = closure(analysis.word(), analysis.primer(), bound, Sides::Both)?;
    let mut inside: Vec<Word> = members.members().filter(|w| language.accepts(w)).cloned().collect();
    inside.sort();

    let mut family = Vec::new();
    let mut missing = Vec::new();
    for i in 2..=fitting {
        let word = witness_word(analysis, i);
        if members.contains(&word) {
            family.push(WitnessMember { exponent: i, word });
        } else {
            missing.push(i);
        }
    }
    let extraneous = inside
        .into_iter()
        .filter(|w| !family.iter().any(|f| f.word == *w))
        .collect();
    Ok(WitnessReport {
        instance: analysis.word().clone(),
        conditions,
        bound,
        i_max: fitting,
        family,
        missing,
        extraneous,
    })
}
