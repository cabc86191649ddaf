//! Single-step left/right hairpin completion and the bounded breadth-first
//! closure that every construction is checked against.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{InvolutionAlphabet, Letter};
use crate::error::{Error, Result};
use crate::word::{complement_letters, find_all, Primer, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// Which completions a closure may apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sides {
    Left,
    Right,
    Both,
}

impl Sides {
    fn allows(self, d: Direction) -> bool {
        matches!(
            (self, d),
            (Sides::Both, _) | (Sides::Left, Direction::Left) | (Sides::Right, Direction::Right)
        )
    }
}

impl fmt::Display for Sides {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sides::Left => "left",
            Sides::Right => "right",
            Sides::Both => "both",
        })
    }
}

/// One hairpin completion `parent -> child`.
///
/// Right: `parent = u·α·v·ᾱ`, `appended = u`, `child = parent·ū`, `anchor` is
/// the start of the α used. Left: `parent = α·v'·ᾱ·ū'`, `appended = u'`,
/// `child = u'·parent`, `anchor` is the start of the ᾱ used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcStep {
    pub direction: Direction,
    pub parent: Word,
    pub child: Word,
    pub appended: Word,
    pub anchor: usize,
}

// Compact successor record: (child letters, direction, anchor).
type RawStep = (Vec<Letter>, Direction, usize);

fn raw_right(alphabet: &InvolutionAlphabet, w: &[Letter], primer: &Primer, limit: usize) -> Vec<RawStep> {
    let k = primer.k();
    let n = w.len();
    if n < k || w[n - k..] != *primer.alpha_bar().letters() {
        return Vec::new();
    }
    find_all(w, primer.alpha().letters())
        .into_iter()
        .filter(|&p| p >= 1 && p + 2 * k <= n && n + p <= limit)
        .map(|p| {
            let mut child = Vec::with_capacity(n + p);
            child.extend_from_slice(w);
            child.extend(complement_letters(alphabet, &w[..p]));
            (child, Direction::Right, p)
        })
        .collect()
}

fn raw_left(alphabet: &InvolutionAlphabet, w: &[Letter], primer: &Primer, limit: usize) -> Vec<RawStep> {
    let k = primer.k();
    let n = w.len();
    if n < k || w[..k] != *primer.alpha().letters() {
        return Vec::new();
    }
    find_all(w, primer.alpha_bar().letters())
        .into_iter()
        .filter(|&q| q >= k && q + k < n && n + (n - q - k) <= limit)
        .map(|q| {
            let mut child = complement_letters(alphabet, &w[q + k..]);
            child.extend_from_slice(w);
            (child, Direction::Left, q)
        })
        .collect()
}

fn successors(alphabet: &InvolutionAlphabet, w: &[Letter], primer: &Primer, sides: Sides, limit: usize) -> Vec<RawStep> {
    let mut out = Vec::new();
    if sides.allows(Direction::Left) {
        out.extend(raw_left(alphabet, w, primer, limit));
    }
    if sides.allows(Direction::Right) {
        out.extend(raw_right(alphabet, w, primer, limit));
    }
    out
}

fn to_step(parent: &Word, raw: RawStep) -> HcStep {
    let (child, direction, anchor) = raw;
    let alphabet = parent.alphabet();
    let appended = match direction {
        Direction::Right => parent.prefix(anchor),
        Direction::Left => Word::new(alphabet, child[..child.len() - parent.len()].to_vec()),
    };
    HcStep {
        direction,
        parent: parent.clone(),
        child: Word::new(alphabet, child),
        appended,
        anchor,
    }
}

/// All right hairpin completions of `w`, one per factorization `u·α·v·ᾱ`
/// with `u ≠ λ`, in ascending anchor order.
pub fn rhc_step(w: &Word, primer: &Primer) -> Result<Vec<HcStep>> {
    w.check_alphabet(primer.alpha())?;
    Ok(raw_right(w.alphabet(), w.letters(), primer, usize::MAX)
        .into_iter()
        .map(|raw| to_step(w, raw))
        .collect())
}

/// All left hairpin completions of `w`, one per factorization `α·v'·ᾱ·ū'`
/// with `u' ≠ λ`, in ascending anchor order.
pub fn lhc_step(w: &Word, primer: &Primer) -> Result<Vec<HcStep>> {
    w.check_alphabet(primer.alpha())?;
    Ok(raw_left(w.alphabet(), w.letters(), primer, usize::MAX)
        .into_iter()
        .map(|raw| to_step(w, raw))
        .collect())
}

/// Left steps first, then right steps, each in ascending anchor order.
pub fn hc_step(w: &Word, primer: &Primer) -> Result<Vec<HcStep>> {
    let mut steps = lhc_step(w, primer)?;
    steps.extend(rhc_step(w, primer)?);
    Ok(steps)
}

#[derive(Clone, Copy, Debug)]
struct Link {
    parent: usize,
    direction: Direction,
    anchor: usize,
}

/// `{w' : seed ->* w', |w'| <= bound}` with one derivation per member.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    seed: Word,
    primer: Primer,
    bound: usize,
    sides: Sides,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    links: Vec<Option<Link>>,
}

impl ClosureResult {
    pub fn seed(&self) -> &Word {
        &self.seed
    }

    pub fn primer(&self) -> &Primer {
        &self.primer
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn sides(&self) -> Sides {
        self.sides
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// Members in discovery (breadth-first) order.
    pub fn members(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    /// Members sorted by length, then letter order.
    pub fn sorted_members(&self) -> Vec<Word> {
        let mut v = self.words.clone();
        v.sort();
        v
    }

    /// The step that first discovered `w`; `None` for the seed.
    pub fn parent_link(&self, w: &Word) -> Option<HcStep> {
        let &i = self.index.get(w)?;
        self.links[i].map(|l| self.link_step(i, l))
    }

    fn link_step(&self, child: usize, link: Link) -> HcStep {
        let parent = &self.words[link.parent];
        let child = &self.words[child];
        let appended = match link.direction {
            Direction::Right => parent.prefix(link.anchor),
            Direction::Left => child.prefix(child.len() - parent.len()),
        };
        HcStep {
            direction: link.direction,
            parent: parent.clone(),
            child: child.clone(),
            appended,
            anchor: link.anchor,
        }
    }
}

/// Breadth-first closure of `seed` under the allowed completions, keeping
/// only words of length at most `bound`. Every step strictly lengthens the
/// word, so pruning at the bound loses no member.
pub fn closure(seed: &Word, primer: &Primer, bound: usize, sides: Sides) -> Result<ClosureResult> {
    seed.check_alphabet(primer.alpha())?;
    if bound < seed.len() {
        return Err(Error::BoundTooSmall {
            bound,
            required: seed.len(),
        });
    }
    let alphabet = seed.alphabet().clone();
    let mut words = vec![seed.clone()];
    let mut index = HashMap::from([(seed.clone(), 0usize)]);
    let mut links = vec![None];
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let expanded: Vec<Vec<RawStep>> = frontier
            .par_iter()
            .map(|&i| successors(&alphabet, words[i].letters(), primer, sides, bound))
            .collect();
        let mut next = Vec::new();
        for (&parent, steps) in frontier.iter().zip(expanded) {
            for (child, direction, anchor) in steps {
                let child = Word::new(&alphabet, child);
                if index.contains_key(&child) {
                    continue;
                }
                let id = words.len();
                index.insert(child.clone(), id);
                words.push(child);
                links.push(Some(Link {
                    parent,
                    direction,
                    anchor,
                }));
                next.push(id);
            }
        }
        frontier = next;
    }

    Ok(ClosureResult {
        seed: seed.clone(),
        primer: primer.clone(),
        bound,
        sides,
        words,
        index,
        links,
    })
}

/// A derivation `seed -> ... -> target` following the recorded links.
pub fn trace(result: &ClosureResult, target: &Word) -> Result<Vec<HcStep>> {
    let mut i = *result
        .index
        .get(target)
        .ok_or_else(|| Error::NotInClosure(target.to_string()))?;
    let mut steps = Vec::new();
    while let Some(link) = result.links[i] {
        steps.push(result.link_step(i, link));
        i = link.parent;
    }
    steps.reverse();
    Ok(steps)
}
