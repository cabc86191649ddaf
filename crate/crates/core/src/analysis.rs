//! α-prefixes, ᾱ-suffixes, (m,n) classification and crossing status of a
//! word with respect to a primer, plus the prefix-decomposition and
//! minimal-factor procedures built on them.

use crate::error::{Error, Result};
use crate::word::{find_all, Primer, Word};

/// Which of the two analysis lists a lookup refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// The α-prefix list `u_1..u_m`.
    Prefix,
    /// The list `v_1..v_n` of complemented ᾱ-suffixes.
    Suffix,
}

#[derive(Clone, Debug)]
pub struct PrimerAnalysis {
    word: Word,
    primer: Primer,
    alpha_positions: Vec<usize>,
    cbar_positions: Vec<usize>,
    alpha_prefixes: Vec<Word>,
    cbar_suffixes: Vec<Word>,
    v_words: Vec<Word>,
    non_crossing: bool,
    starts_with_alpha: bool,
    ends_with_cbar_alpha: bool,
}

impl PrimerAnalysis {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn primer(&self) -> &Primer {
        &self.primer
    }

    pub fn k(&self) -> usize {
        self.primer.k()
    }

    /// `u_1..u_m`, strictly increasing in length.
    pub fn alpha_prefixes(&self) -> &[Word] {
        &self.alpha_prefixes
    }

    /// `v̄_1..v̄_n`, strictly increasing in length.
    pub fn cbar_suffixes(&self) -> &[Word] {
        &self.cbar_suffixes
    }

    /// `v_j = complement(v̄_j)`.
    pub fn v_words(&self) -> &[Word] {
        &self.v_words
    }

    /// Start positions of α in the word, ascending.
    pub fn alpha_positions(&self) -> &[usize] {
        &self.alpha_positions
    }

    /// Start positions of ᾱ in the word, ascending.
    pub fn cbar_positions(&self) -> &[usize] {
        &self.cbar_positions
    }

    pub fn m(&self) -> usize {
        self.alpha_prefixes.len()
    }

    pub fn n(&self) -> usize {
        self.cbar_suffixes.len()
    }

    /// 1-based `u_i`.
    pub fn u(&self, i: usize) -> &Word {
        &self.alpha_prefixes[i - 1]
    }

    /// 1-based `v_j`.
    pub fn v(&self, j: usize) -> &Word {
        &self.v_words[j - 1]
    }

    pub fn is_non_crossing(&self) -> bool {
        self.non_crossing
    }

    pub fn starts_with_alpha(&self) -> bool {
        self.starts_with_alpha
    }

    pub fn ends_with_cbar_alpha(&self) -> bool {
        self.ends_with_cbar_alpha
    }

    /// `w ∈ αΣ* ∩ Σ*ᾱ`.
    pub fn is_anchored(&self) -> bool {
        self.starts_with_alpha && self.ends_with_cbar_alpha
    }

    pub fn list(&self, side: Side) -> &[Word] {
        match side {
            Side::Prefix => &self.alpha_prefixes,
            Side::Suffix => &self.v_words,
        }
    }

    /// 1-based position of `x` in the list for `side`.
    pub fn ind(&self, x: &Word, side: Side) -> Result<usize> {
        self.list(side)
            .iter()
            .position(|y| y == x)
            .map(|i| i + 1)
            .ok_or_else(|| Error::NotAMember(x.to_string()))
    }

    /// The analysis of the complemented word; its prefix and suffix lists
    /// are this analysis' suffix and prefix lists.
    pub fn mirrored(&self) -> PrimerAnalysis {
        analyze_unchecked(&self.word.complement(), &self.primer)
    }
}

/// Computes prefix/suffix lists and crossing status of `w` for primer `primer`.
pub fn analyze(w: &Word, primer: &Primer) -> Result<PrimerAnalysis> {
    w.check_alphabet(primer.alpha())?;
    Ok(analyze_unchecked(w, primer))
}

fn analyze_unchecked(w: &Word, primer: &Primer) -> PrimerAnalysis {
    let k = primer.k();
    let alpha_positions = find_all(w.letters(), primer.alpha().letters());
    let cbar_positions = find_all(w.letters(), primer.alpha_bar().letters());

    let alpha_prefixes: Vec<Word> = alpha_positions.iter().map(|&p| w.prefix(p)).collect();
    // ascending by suffix length means descending by position
    let cbar_suffixes: Vec<Word> = cbar_positions.iter().rev().map(|&q| w.suffix_from(q + k)).collect();
    let v_words = cbar_suffixes.iter().map(Word::complement).collect();

    let non_crossing = if primer.is_pseudo_palindrome() {
        alpha_positions.len() <= 1
    } else {
        match (alpha_positions.last(), cbar_positions.first()) {
            (Some(&rightmost_alpha), Some(&leftmost_cbar)) => rightmost_alpha + k <= leftmost_cbar,
            _ => true,
        }
    };

    PrimerAnalysis {
        word: w.clone(),
        primer: primer.clone(),
        starts_with_alpha: alpha_positions.first() == Some(&0),
        ends_with_cbar_alpha: w.len() >= k && cbar_positions.last() == Some(&(w.len() - k)),
        alpha_positions,
        cbar_positions,
        alpha_prefixes,
        cbar_suffixes,
        v_words,
        non_crossing,
    }
}

/// Result of splitting `u = x_1⋯x_i·z` with `z` strictly shorter than `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub index: usize,
    pub remainder: Word,
    /// Where `z` was found: in `u_1..u_{ind(x_{i+1})-1}` (prefix side) or
    /// `v_1..v_{ind(x_{i+1})-1}` (suffix side), with its 1-based index.
    /// `None` means neither list contains it, which cannot happen when the precondition holds.
    pub membership: Option<(Side, usize)>,
}

/// Decomposes `u` against a product `x_1⋯x_s` of α-prefixes and complemented
/// ᾱ-suffixes, given that `uα` is a prefix of `x_1⋯x_s·α`.
pub fn decompose_prefix(u: &Word, xs: &[Word], analysis: &PrimerAnalysis) -> Result<Decomposition> {
    for x in xs {
        u.check_alphabet(x)?;
        if analysis.ind(x, Side::Prefix).is_err() && analysis.ind(x, Side::Suffix).is_err() {
            return Err(Error::NotAMember(x.to_string()));
        }
    }
    let mut product = Word::empty(u.alphabet());
    for x in xs {
        product = product.concat(x);
    }
    let alpha = analysis.primer().alpha();
    if !u.concat(alpha).is_prefix_of(&product.concat(alpha)) {
        return Err(Error::PreconditionViolated(format!(
            "{u}·α is not a prefix of the product·α"
        )));
    }

    let mut consumed = 0;
    for (i, x) in xs.iter().enumerate() {
        if u.len() < consumed + x.len() {
            let remainder = u.suffix_from(consumed);
            let membership = [Side::Prefix, Side::Suffix].into_iter().find_map(|side| {
                let bound = analysis.ind(x, side).ok()?;
                analysis.list(side)[..bound - 1]
                    .iter()
                    .position(|z| *z == remainder)
                    .map(|p| (side, p + 1))
            });
            return Ok(Decomposition {
                index: i,
                remainder,
                membership,
            });
        }
        consumed += x.len();
    }
    Err(Error::PreconditionViolated(format!(
        "{u} is as long as the whole product; no strictly shorter remainder exists"
    )))
}

/// Spans `[start, end)` of the factors of `w` that lie in `αΣ* ∩ Σ*ᾱ` and have
/// no proper factor in that language.
pub fn minimal_factors(w: &Word, primer: &Primer) -> Vec<(usize, usize)> {
    let k = primer.k();
    let starts = find_all(w.letters(), primer.alpha().letters());
    let ends: Vec<usize> = find_all(w.letters(), primer.alpha_bar().letters())
        .into_iter()
        .map(|q| q + k)
        .collect();
    let candidates: Vec<(usize, usize)> = starts
        .iter()
        .flat_map(|&s| ends.iter().filter(move |&&e| e >= s + k).map(move |&e| (s, e)))
        .collect();
    let mut minimal: Vec<(usize, usize)> = candidates
        .iter()
        .copied()
        .filter(|&(s, e)| {
            !candidates
                .iter()
                .any(|&(s2, e2)| s <= s2 && e2 <= e && (s2, e2) != (s, e))
        })
        .collect();
    minimal.sort_unstable();
    minimal
}
