#![allow(dead_code)]

use std::sync::Arc;

use hairpin::{analyze, InvolutionAlphabet, Primer, PrimerAnalysis, Word};
use rand::rngs::StdRng;
use rand::Rng;

pub fn alphabet() -> Arc<InvolutionAlphabet> {
    InvolutionAlphabet::from_pairs([("a", "ā"), ("b", "b̄"), ("c", "c̄"), ("d", "d̄")]).unwrap()
}

pub fn word(s: &Arc<InvolutionAlphabet>, text: &str) -> Word {
    Word::parse(s, text).unwrap()
}

pub fn primer(s: &Arc<InvolutionAlphabet>, text: &str) -> Primer {
    Primer::parse(s, text).unwrap()
}

pub fn random_word(rng: &mut StdRng, s: &Arc<InvolutionAlphabet>, len: usize) -> Word {
    let letters: Vec<_> = s.letters().collect();
    Word::new(s, (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
}

/// A primer of length `k` that is not its own complement.
pub fn random_primer(rng: &mut StdRng, s: &Arc<InvolutionAlphabet>, k: usize) -> Primer {
    loop {
        let w = random_word(rng, s, k);
        if w != w.complement() {
            return Primer::new(w).unwrap();
        }
    }
}

/// `α·x·ᾱ` with `|x| <= max_len - 2k`, where `x` mixes primer copies,
/// complement copies and single letters so that multi-occurrence words are
/// common.
pub fn random_anchored(rng: &mut StdRng, s: &Arc<InvolutionAlphabet>, p: &Primer, max_len: usize) -> Word {
    let k = p.k();
    let budget = rng.gen_range(0..=max_len - 2 * k);
    let mut mid = Word::empty(s);
    while mid.len() < budget {
        let roll: f64 = rng.gen();
        let piece = if roll < 0.25 {
            p.alpha().clone()
        } else if roll < 0.4 {
            p.alpha_bar().clone()
        } else {
            random_word(rng, s, 1)
        };
        if mid.len() + piece.len() > budget {
            break;
        }
        mid = mid.concat(&piece);
    }
    p.alpha().concat(&mid).concat(p.alpha_bar())
}

/// A non-crossing anchored word for a random primer with `k <= max_k`.
pub fn random_non_crossing(
    rng: &mut StdRng,
    s: &Arc<InvolutionAlphabet>,
    max_k: usize,
    max_len: usize,
    accept: impl Fn(&PrimerAnalysis) -> bool,
) -> PrimerAnalysis {
    loop {
        let k = rng.gen_range(1..=max_k);
        let p = random_primer(rng, s, k);
        let w = random_anchored(rng, s, &p, max_len);
        let a = analyze(&w, &p).unwrap();
        if a.is_non_crossing() && accept(&a) {
            return a;
        }
    }
}
