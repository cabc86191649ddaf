//! Alphabets equipped with a letter-to-letter involution.
//!
//! Letters are opaque string tokens. The alphabet file format is one
//! declaration per line, `X<TAB>Y`, meaning `bar(X) = Y` and `bar(Y) = X`.
//! `X<TAB>X` declares a self-complementary letter.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter inside its [`InvolutionAlphabet`]. Ordering follows
/// declaration order, which is also the lexicographic order used when
/// sorting words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub(crate) u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug)]
pub struct InvolutionAlphabet {
    tokens: Vec<String>,
    bar: Vec<Letter>,
    index: HashMap<String, Letter>,
    longest_token: usize,
    compact: bool,
}

impl PartialEq for InvolutionAlphabet {
    fn eq(&self, other: &Self) -> bool {
        self.tokens == other.tokens && self.bar == other.bar
    }
}

impl Eq for InvolutionAlphabet {}

impl InvolutionAlphabet {
    /// Builds an alphabet from complement declarations `(x, bar(x))`.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut tokens: Vec<String> = Vec::new();
        let mut index: HashMap<String, Letter> = HashMap::new();
        let mut bar: Vec<Option<Letter>> = Vec::new();
        let mut seen_pairs: BTreeSet<(String, String)> = BTreeSet::new();

        let mut intern = |tok: &str, tokens: &mut Vec<String>, bar: &mut Vec<Option<Letter>>| {
            *index.entry(tok.to_owned()).or_insert_with(|| {
                tokens.push(tok.to_owned());
                bar.push(None);
                Letter((tokens.len() - 1) as u32)
            })
        };

        for (x, y) in pairs {
            let (x, y) = (x.as_ref(), y.as_ref());
            for tok in [x, y] {
                if tok.is_empty() || tok.chars().any(char::is_whitespace) {
                    return Err(Error::MalformedAlphabet {
                        line: 0,
                        message: format!("invalid letter token {tok:?}"),
                    });
                }
            }
            let key = if x <= y {
                (x.to_owned(), y.to_owned())
            } else {
                (y.to_owned(), x.to_owned())
            };
            if !seen_pairs.insert(key) {
                return Err(Error::DuplicateLetter(x.to_owned()));
            }
            let lx = intern(x, &mut tokens, &mut bar);
            let ly = intern(y, &mut tokens, &mut bar);
            for (a, b) in [(lx, ly), (ly, lx)] {
                match bar[a.index()] {
                    None => bar[a.index()] = Some(b),
                    Some(prev) if prev == b => {}
                    Some(prev) => {
                        return Err(Error::ConflictingComplement {
                            letter: tokens[a.index()].clone(),
                            first: tokens[prev.index()].clone(),
                            second: tokens[b.index()].clone(),
                        })
                    }
                }
            }
        }

        if tokens.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let bar: Vec<Letter> = bar.into_iter().map(|b| b.expect("every interned letter has a partner")).collect();
        for (i, b) in bar.iter().enumerate() {
            if bar[b.index()].index() != i {
                return Err(Error::NotAnInvolution(tokens[i].clone()));
            }
        }

        let longest_token = tokens.iter().map(|t| t.chars().count()).max().unwrap_or(1);
        let compact = is_compact(&tokens);
        let index = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), Letter(i as u32)))
            .collect();
        Ok(Arc::new(Self {
            tokens,
            bar,
            index,
            longest_token,
            compact,
        }))
    }

    /// Parses the tab-separated alphabet file format. Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Arc<Self>> {
        let mut pairs = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 2 || fields.iter().any(|f| f.is_empty()) {
                return Err(Error::MalformedAlphabet {
                    line: n + 1,
                    message: "expected `X<TAB>Y`".to_owned(),
                });
            }
            pairs.push((fields[0].to_owned(), fields[1].to_owned()));
        }
        Self::from_pairs(pairs).map_err(|e| match e {
            Error::MalformedAlphabet { message, .. } => Error::MalformedAlphabet { line: 0, message },
            other => other,
        })
    }

    /// The Watson-Crick alphabet: A<->T, C<->G.
    pub fn dna() -> Arc<Self> {
        Self::from_pairs([("A", "T"), ("C", "G")]).expect("DNA preset is well formed")
    }

    /// Lowercase `a..z`, each paired with its macron form (`ā`, `b̄`, ...).
    /// The precomposed code point is used where Unicode has one.
    pub fn latin() -> Arc<Self> {
        let pairs: Vec<(String, String)> = ('a'..='z')
            .map(|c| (c.to_string(), precomposed_macron(c).map_or_else(|| format!("{c}\u{304}"), String::from)))
            .collect();
        Self::from_pairs(pairs).expect("latin preset is well formed")
    }

    /// Serializes back into the alphabet file format.
    pub fn to_file_format(&self) -> String {
        let mut out = String::new();
        for (i, tok) in self.tokens.iter().enumerate() {
            let partner = self.bar[i].index();
            if partner >= i {
                out.push_str(tok);
                out.push('\t');
                out.push_str(&self.tokens[partner]);
                out.push('\n');
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.tokens.len() as u32).map(Letter)
    }

    pub fn bar(&self, letter: Letter) -> Letter {
        self.bar[letter.index()]
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter.index()]
    }

    pub fn letter(&self, token: &str) -> Option<Letter> {
        self.index.get(token).copied()
    }

    /// True when words can be rendered by plain concatenation of tokens and
    /// still be split back unambiguously.
    pub fn is_compact(&self) -> bool {
        self.compact
    }

    /// Splits `text` into letters. Whitespace-separated input is read token by
    /// token; otherwise the longest matching token is taken at each position.
    pub fn tokenize(&self, text: &str) -> Result<Vec<Letter>> {
        let unknown = |token: &str| Error::UnknownLetter {
            token: token.to_owned(),
            input: text.to_owned(),
        };
        let trimmed = text.trim();
        if trimmed.chars().any(char::is_whitespace) {
            return trimmed
                .split_whitespace()
                .map(|tok| self.letter(tok).ok_or_else(|| unknown(tok)))
                .collect();
        }
        // "λ" and "" both denote the empty word
        if trimmed.is_empty() || (trimmed == "λ" && self.letter("λ").is_none()) {
            return Ok(Vec::new());
        }
        let chars: Vec<(usize, char)> = trimmed.char_indices().collect();
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            let start = chars[pos].0;
            let mut matched = None;
            for take in (1..=self.longest_token.min(chars.len() - pos)).rev() {
                let end = chars.get(pos + take).map_or(trimmed.len(), |c| c.0);
                if let Some(l) = self.letter(&trimmed[start..end]) {
                    matched = Some((l, take));
                    break;
                }
            }
            match matched {
                Some((l, take)) => {
                    out.push(l);
                    pos += take;
                }
                None => {
                    let end = chars.get(pos + 1).map_or(trimmed.len(), |c| c.0);
                    return Err(unknown(&trimmed[start..end]));
                }
            }
        }
        Ok(out)
    }

    /// Renders a letter sequence so that [`tokenize`](Self::tokenize) reads it back.
    pub fn render(&self, letters: &[Letter]) -> String {
        if self.compact {
            letters.iter().map(|&l| self.token(l)).collect()
        } else {
            letters.iter().map(|&l| self.token(l)).collect::<Vec<_>>().join(" ")
        }
    }
}

impl fmt::Display for InvolutionAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .tokens
            .iter()
            .enumerate()
            .filter(|(i, _)| self.bar[*i].index() >= *i)
            .map(|(i, t)| format!("{t}<->{}", self.tokens[self.bar[i].index()]))
            .collect();
        write!(f, "{{{}}}", pairs.join(", "))
    }
}

// Concatenation is unambiguous when every token is one "head" character
// followed by characters that never start a token.
fn is_compact(tokens: &[String]) -> bool {
    let tails: BTreeSet<char> = tokens.iter().flat_map(|t| t.chars().skip(1)).collect();
    tokens
        .iter()
        .all(|t| t.chars().next().is_some_and(|c| !tails.contains(&c)))
}

fn precomposed_macron(c: char) -> Option<char> {
    Some(match c {
        'a' => 'ā',
        'e' => 'ē',
        'g' => 'ḡ',
        'i' => 'ī',
        'o' => 'ō',
        'u' => 'ū',
        'y' => 'ȳ',
        _ => return None,
    })
}

/// Replaces a letter followed by a combining macron with the precomposed
/// character when one exists, so both spellings of `ā` are accepted.
pub fn compose_macrons(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match (precomposed_macron(c), chars.peek()) {
            (Some(p), Some('\u{304}')) => {
                out.push(p);
                chars.next();
            }
            _ => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Arc<InvolutionAlphabet> {
        InvolutionAlphabet::from_pairs([("a", "ā"), ("b", "b̄"), ("c", "c̄"), ("d", "d̄")]).unwrap()
    }

    #[test]
    fn dna_preset() {
        let dna = InvolutionAlphabet::dna();
        let a = dna.letter("A").unwrap();
        assert_eq!(dna.token(dna.bar(a)), "T");
        let c = dna.letter("C").unwrap();
        assert_eq!(dna.token(dna.bar(c)), "G");
        assert!(dna.is_compact());
    }

    #[test]
    fn bar_is_an_involution() {
        let s = sample();
        for l in s.letters() {
            assert_eq!(s.bar(s.bar(l)), l);
            assert_ne!(s.bar(l), l);
        }
    }

    #[test]
    fn self_complementary_letter_is_allowed() {
        let s = InvolutionAlphabet::parse("a\tb\nx\tx\n").unwrap();
        let x = s.letter("x").unwrap();
        assert_eq!(s.bar(x), x);
    }

    #[test]
    fn duplicate_and_conflicting_declarations_are_rejected() {
        assert!(matches!(
            InvolutionAlphabet::parse("a\tb\na\tb\n"),
            Err(Error::DuplicateLetter(_))
        ));
        assert!(matches!(
            InvolutionAlphabet::parse("a\tb\nb\ta\n"),
            Err(Error::DuplicateLetter(_))
        ));
        assert!(matches!(
            InvolutionAlphabet::parse("a\tb\na\tc\n"),
            Err(Error::ConflictingComplement { .. })
        ));
        assert!(matches!(
            InvolutionAlphabet::parse("a b\n"),
            Err(Error::MalformedAlphabet { line: 1, .. })
        ));
        assert!(matches!(InvolutionAlphabet::parse("\n\n"), Err(Error::EmptyAlphabet)));
    }

    #[test]
    fn combining_marks_tokenize_greedily() {
        let s = sample();
        assert!(s.is_compact());
        let w = s.tokenize("abaād̄ā").unwrap();
        let toks: Vec<&str> = w.iter().map(|&l| s.token(l)).collect();
        assert_eq!(toks, ["a", "b", "a", "ā", "d̄", "ā"]);
        assert_eq!(s.render(&w), "abaād̄ā");
    }

    #[test]
    fn ascii_primes_and_whitespace_input() {
        let s = InvolutionAlphabet::parse("a\ta'\nb\tb'\n").unwrap();
        assert!(s.is_compact());
        let w = s.tokenize("aba'b'").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(s.tokenize("a b a' b'").unwrap(), w);
        assert_eq!(s.render(&w), "aba'b'");
        assert!(s.tokenize("abz").is_err());
    }

    #[test]
    fn non_compact_alphabets_render_with_spaces() {
        let s = InvolutionAlphabet::parse("ab\tba\na\tb\n").unwrap();
        assert!(!s.is_compact());
        let w = s.tokenize("ab a ba").unwrap();
        assert_eq!(s.render(&w), "ab a ba");
        assert_eq!(s.tokenize(&s.render(&w)).unwrap(), w);
    }

    #[test]
    fn file_format_round_trip() {
        let s = sample();
        let again = InvolutionAlphabet::parse(&s.to_file_format()).unwrap();
        assert_eq!(*s, *again);
    }

    #[test]
    fn latin_preset_accepts_both_macron_spellings() {
        let s = InvolutionAlphabet::latin();
        assert_eq!(s.len(), 52);
        assert!(s.is_compact());
        let composed = s.tokenize("abaād̄ā").unwrap();
        let decomposed = s.tokenize(&compose_macrons("abaa\u{304}d\u{304}a\u{304}")).unwrap();
        assert_eq!(composed, decomposed);
        let d = s.letter("d").unwrap();
        assert_eq!(s.token(s.bar(d)), "d\u{304}");
    }

    #[test]
    fn empty_word_spellings() {
        let s = sample();
        assert!(s.tokenize("").unwrap().is_empty());
        assert!(s.tokenize("λ").unwrap().is_empty());
    }
}
