//! Words over an involution alphabet and the combinatorics-on-words
//! primitives used throughout: complement, primitive roots, commutation,
//! prefix/suffix tests and occurrence search.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::alphabet::{InvolutionAlphabet, Letter};
use crate::error::{Error, Result};

/// An immutable finite word. Equality and hashing look at the letter
/// sequence; ordering is length first, then lexicographic by letter index.
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<InvolutionAlphabet>,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: &Arc<InvolutionAlphabet>, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index() < alphabet.len()));
        Self {
            alphabet: Arc::clone(alphabet),
            letters,
        }
    }

    pub fn empty(alphabet: &Arc<InvolutionAlphabet>) -> Self {
        Self::new(alphabet, Vec::new())
    }

    pub fn parse(alphabet: &Arc<InvolutionAlphabet>, text: &str) -> Result<Self> {
        Ok(Self::new(alphabet, alphabet.tokenize(text)?))
    }

    pub fn alphabet(&self) -> &Arc<InvolutionAlphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn same_alphabet(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || *self.alphabet == *other.alphabet
    }

    pub(crate) fn check_alphabet(&self, other: &Word) -> Result<()> {
        if self.same_alphabet(other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Reverse the word and apply the involution letter-wise.
    pub fn complement(&self) -> Word {
        Word::new(&self.alphabet, complement_letters(&self.alphabet, &self.letters))
    }

    pub fn is_pseudo_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n).all(|i| self.letters[i] == self.alphabet.bar(self.letters[n - 1 - i]))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word::new(&self.alphabet, letters)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word::new(&self.alphabet, self.letters.repeat(times))
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::new(&self.alphabet, self.letters[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    pub fn is_prefix_of(&self, w: &Word) -> bool {
        w.letters.starts_with(&self.letters)
    }

    pub fn is_suffix_of(&self, w: &Word) -> bool {
        w.letters.ends_with(&self.letters)
    }

    pub fn is_factor_of(&self, w: &Word) -> bool {
        !find_all(&w.letters, &self.letters).is_empty()
    }

    /// The unique primitive `root` with `root^exponent == self`.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let p = smallest_period_dividing(&self.letters);
        Ok((self.prefix(p), self.len() / p))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && smallest_period_dividing(&self.letters) == self.len()
    }
}

/// `xy == yx`.
pub fn commute(x: &Word, y: &Word) -> bool {
    let (a, b) = (&x.letters, &y.letters);
    a.iter().chain(b.iter()).eq(b.iter().chain(a.iter()))
}

pub fn is_prefix(u: &Word, w: &Word) -> bool {
    u.is_prefix_of(w)
}

pub fn is_suffix(v: &Word, w: &Word) -> bool {
    v.is_suffix_of(w)
}

/// All (possibly overlapping) 0-based start positions of `pattern` in `w`.
pub fn find_occurrences(pattern: &Word, w: &Word) -> Vec<usize> {
    find_all(&w.letters, &pattern.letters)
}

pub(crate) fn find_all(text: &[Letter], pattern: &[Letter]) -> Vec<usize> {
    if pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&i| text[i..i + pattern.len()] == *pattern)
        .collect()
}

pub(crate) fn complement_letters(alphabet: &InvolutionAlphabet, letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|&l| alphabet.bar(l)).collect()
}

// Smallest p dividing |w| such that w is a power of its length-p prefix,
// computed from the failure function: w = x^k iff its smallest period divides |w|.
fn smallest_period_dividing(w: &[Letter]) -> usize {
    let n = w.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let period = n - fail[n - 1];
    if n.is_multiple_of(period) {
        period
    } else {
        n
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("λ")
        } else {
            f.write_str(&self.alphabet.render(&self.letters))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A nonempty primer α together with its complement ᾱ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primer {
    alpha: Word,
    alpha_bar: Word,
}

impl Primer {
    pub fn new(alpha: Word) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::EmptyWord);
        }
        let alpha_bar = alpha.complement();
        Ok(Self { alpha, alpha_bar })
    }

    pub fn parse(alphabet: &Arc<InvolutionAlphabet>, text: &str) -> Result<Self> {
        Self::new(Word::parse(alphabet, text)?)
    }

    pub fn alpha(&self) -> &Word {
        &self.alpha
    }

    pub fn alpha_bar(&self) -> &Word {
        &self.alpha_bar
    }

    /// Primer length `k`.
    pub fn k(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_pseudo_palindrome(&self) -> bool {
        self.alpha == self.alpha_bar
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Arc<InvolutionAlphabet> {
        InvolutionAlphabet::from_pairs([("a", "ā"), ("b", "b̄"), ("c", "c̄"), ("d", "d̄")]).unwrap()
    }

    fn w(s: &Arc<InvolutionAlphabet>, text: &str) -> Word {
        Word::parse(s, text).unwrap()
    }

    #[test]
    fn complement_examples() {
        let s = sigma();
        assert_eq!(w(&s, "").complement(), w(&s, ""));
        assert_eq!(w(&s, "ab").complement(), w(&s, "b̄ā"));
        let dna = InvolutionAlphabet::dna();
        assert_eq!(w(&dna, "ACG").complement(), w(&dna, "CGT"));
    }

    #[test]
    fn pseudo_palindromes() {
        let s = sigma();
        assert!(w(&s, "").is_pseudo_palindrome());
        assert!(w(&s, "aā").is_pseudo_palindrome());
        assert!(!w(&s, "ab").is_pseudo_palindrome());
    }

    #[test]
    fn primitive_roots() {
        let s = sigma();
        assert_eq!(w(&s, "abab").primitive_root().unwrap(), (w(&s, "ab"), 2));
        assert_eq!(w(&s, "a").primitive_root().unwrap(), (w(&s, "a"), 1));
        assert_eq!(w(&s, "aab").primitive_root().unwrap(), (w(&s, "aab"), 1));
        assert_eq!(w(&s, "aaaa").primitive_root().unwrap(), (w(&s, "a"), 4));
        // period 2 but length not a multiple of it
        assert_eq!(w(&s, "aba").primitive_root().unwrap(), (w(&s, "aba"), 1));
        assert_eq!(w(&s, "").primitive_root(), Err(Error::EmptyWord));
    }

    #[test]
    fn commutation() {
        let s = sigma();
        assert!(commute(&w(&s, "ab"), &w(&s, "abab")));
        assert!(!commute(&w(&s, "ab"), &w(&s, "ad")));
        assert!(commute(&w(&s, ""), &w(&s, "ab")));
    }

    #[test]
    fn prefixes_and_occurrences() {
        let s = sigma();
        assert!(is_prefix(&w(&s, "ab"), &w(&s, "abaā")));
        assert!(is_suffix(&w(&s, "aā"), &w(&s, "abaā")));
        assert!(!is_prefix(&w(&s, "b"), &w(&s, "abaā")));
        assert_eq!(find_occurrences(&w(&s, "a"), &w(&s, "abaā")), vec![0, 2]);
        assert_eq!(find_occurrences(&w(&s, "aa"), &w(&s, "aaaa")), vec![0, 1, 2]);
        assert!(find_occurrences(&w(&s, "aaaaa"), &w(&s, "aaaa")).is_empty());
    }

    #[test]
    fn ordering_is_length_then_letters() {
        let s = sigma();
        let mut v = [w(&s, "ba"), w(&s, "b"), w(&s, "aā"), w(&s, "")];
        v.sort();
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["λ", "b", "aā", "ba"]);
    }

    #[test]
    fn primer_rejects_empty() {
        let s = sigma();
        assert_eq!(Primer::parse(&s, ""), Err(Error::EmptyWord));
        let p = Primer::parse(&s, "ab").unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.alpha_bar(), &w(&s, "b̄ā"));
    }
}
