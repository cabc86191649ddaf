//! ε-NFAs over an involution alphabet: Thompson-style regular operations,
//! product intersection, the complement mirror, membership, bounded
//! enumeration and bounded equivalence against an explicit word set.

mod export;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::alphabet::{InvolutionAlphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;

pub use export::NfaJson;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    /// `None` is an ε-move.
    pub label: Option<Letter>,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Arc<InvolutionAlphabet>,
    num_states: usize,
    transitions: Vec<Transition>,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
}

/// Incremental construction of an [`Nfa`].
#[derive(Debug)]
pub struct NfaBuilder {
    nfa: Nfa,
}

impl NfaBuilder {
    pub fn new(alphabet: &Arc<InvolutionAlphabet>) -> Self {
        Self {
            nfa: Nfa {
                alphabet: Arc::clone(alphabet),
                num_states: 0,
                transitions: Vec::new(),
                initial: BTreeSet::new(),
                accepting: BTreeSet::new(),
            },
        }
    }

    pub fn add_state(&mut self) -> usize {
        self.nfa.num_states += 1;
        self.nfa.num_states - 1
    }

    pub fn add_transition(&mut self, from: usize, label: Option<Letter>, to: usize) {
        debug_assert!(from < self.nfa.num_states && to < self.nfa.num_states);
        self.nfa.transitions.push(Transition { from, label, to });
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) {
        self.add_transition(from, None, to);
    }

    /// Spells `letters` from `from` to `to` through fresh intermediate states.
    /// An empty path is an ε-move.
    pub fn add_path(&mut self, from: usize, letters: &[Letter], to: usize) {
        match letters {
            [] => self.add_epsilon(from, to),
            [only] => self.add_transition(from, Some(*only), to),
            [init @ .., last] => {
                let mut cur = from;
                for &l in init {
                    let next = self.add_state();
                    self.add_transition(cur, Some(l), next);
                    cur = next;
                }
                self.add_transition(cur, Some(*last), to);
            }
        }
    }

    pub fn set_initial(&mut self, state: usize) {
        self.nfa.initial.insert(state);
    }

    pub fn set_accepting(&mut self, state: usize) {
        self.nfa.accepting.insert(state);
    }

    pub fn build(self) -> Nfa {
        self.nfa
    }
}

impl Nfa {
    pub fn builder(alphabet: &Arc<InvolutionAlphabet>) -> NfaBuilder {
        NfaBuilder::new(alphabet)
    }

    pub fn alphabet(&self) -> &Arc<InvolutionAlphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    /// Accepts nothing.
    pub fn empty(alphabet: &Arc<InvolutionAlphabet>) -> Nfa {
        let mut b = NfaBuilder::new(alphabet);
        let s = b.add_state();
        b.set_initial(s);
        b.build()
    }

    /// Accepts exactly `w`.
    pub fn literal(w: &Word) -> Nfa {
        let mut b = NfaBuilder::new(w.alphabet());
        let start = b.add_state();
        let end = b.add_state();
        b.add_path(start, w.letters(), end);
        b.set_initial(start);
        b.set_accepting(end);
        b.build()
    }

    /// Accepts exactly the given finite set.
    pub fn from_words<'a>(alphabet: &Arc<InvolutionAlphabet>, words: impl IntoIterator<Item = &'a Word>) -> Nfa {
        let mut b = NfaBuilder::new(alphabet);
        let start = b.add_state();
        let end = b.add_state();
        for w in words {
            b.add_path(start, w.letters(), end);
        }
        b.set_initial(start);
        b.set_accepting(end);
        b.build()
    }

    /// `Σ*·x·Σ*`.
    pub fn factor_marker(x: &Word) -> Nfa {
        let alphabet = x.alphabet();
        let mut b = NfaBuilder::new(alphabet);
        let states: Vec<usize> = (0..=x.len()).map(|_| b.add_state()).collect();
        for (i, &l) in x.letters().iter().enumerate() {
            b.add_transition(states[i], Some(l), states[i + 1]);
        }
        for l in alphabet.letters() {
            b.add_transition(states[0], Some(l), states[0]);
            b.add_transition(states[x.len()], Some(l), states[x.len()]);
        }
        b.set_initial(states[0]);
        b.set_accepting(states[x.len()]);
        b.build()
    }

    fn check(&self, other: &Nfa) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || *self.alphabet == *other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    // Copies `other` into `b` and returns the state offset.
    fn embed(b: &mut NfaBuilder, other: &Nfa) -> usize {
        let offset = b.nfa.num_states;
        b.nfa.num_states += other.num_states;
        b.nfa.transitions.extend(other.transitions.iter().map(|t| Transition {
            from: t.from + offset,
            label: t.label,
            to: t.to + offset,
        }));
        offset
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.check(other)?;
        let mut b = NfaBuilder::new(&self.alphabet);
        for nfa in [self, other] {
            let off = Self::embed(&mut b, nfa);
            b.nfa.initial.extend(nfa.initial.iter().map(|s| s + off));
            b.nfa.accepting.extend(nfa.accepting.iter().map(|s| s + off));
        }
        Ok(b.build())
    }

    /// Union of any number of automata; the empty union accepts nothing.
    pub fn union_all<'a>(alphabet: &Arc<InvolutionAlphabet>, parts: impl IntoIterator<Item = &'a Nfa>) -> Result<Nfa> {
        parts
            .into_iter()
            .try_fold(Nfa::empty(alphabet), |acc, part| acc.union(part))
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.check(other)?;
        let mut b = NfaBuilder::new(&self.alphabet);
        let a_off = Self::embed(&mut b, self);
        let b_off = Self::embed(&mut b, other);
        for &f in &self.accepting {
            for &i in &other.initial {
                b.add_epsilon(f + a_off, i + b_off);
            }
        }
        b.nfa.initial.extend(self.initial.iter().map(|s| s + a_off));
        b.nfa.accepting.extend(other.accepting.iter().map(|s| s + b_off));
        Ok(b.build())
    }

    /// Concatenation of a sequence; the empty sequence accepts only λ.
    pub fn concat_all<'a>(alphabet: &Arc<InvolutionAlphabet>, parts: impl IntoIterator<Item = &'a Nfa>) -> Result<Nfa> {
        parts
            .into_iter()
            .try_fold(Nfa::literal(&Word::empty(alphabet)), |acc, part| acc.concat(part))
    }

    pub fn star(&self) -> Nfa {
        let mut b = NfaBuilder::new(&self.alphabet);
        let hub = b.add_state();
        let off = Self::embed(&mut b, self);
        for &i in &self.initial {
            b.add_epsilon(hub, i + off);
        }
        for &f in &self.accepting {
            b.add_epsilon(f + off, hub);
        }
        b.set_initial(hub);
        b.set_accepting(hub);
        b.build()
    }

    pub fn plus(&self) -> Nfa {
        let mut b = NfaBuilder::new(&self.alphabet);
        let start = b.add_state();
        let off = Self::embed(&mut b, self);
        for &i in &self.initial {
            b.add_epsilon(start, i + off);
            for &f in &self.accepting {
                b.add_epsilon(f + off, i + off);
            }
        }
        b.set_initial(start);
        b.nfa.accepting.extend(self.accepting.iter().map(|s| s + off));
        b.build()
    }

    /// Product construction on the ε-free forms of both operands.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.check(other)?;
        let left = self.remove_epsilons();
        let right = other.remove_epsilons();
        let lt = left.letter_table();
        let rt = right.letter_table();

        let mut b = NfaBuilder::new(&self.alphabet);
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &p in &left.initial {
            for &q in &right.initial {
                let id = b.add_state();
                ids.insert((p, q), id);
                b.set_initial(id);
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let from = ids[&(p, q)];
            if left.accepting.contains(&p) && right.accepting.contains(&q) {
                b.set_accepting(from);
            }
            for (&letter, ps) in &lt[p] {
                let Some(qs) = rt[q].get(&letter) else { continue };
                for &p2 in ps {
                    for &q2 in qs {
                        let to = *ids.entry((p2, q2)).or_insert_with(|| {
                            queue.push_back((p2, q2));
                            b.nfa.num_states += 1;
                            b.nfa.num_states - 1
                        });
                        b.add_transition(from, Some(letter), to);
                    }
                }
            }
        }
        Ok(b.build().trim())
    }

    /// An automaton for `{ complement(w) : w ∈ L(self) }`: every transition
    /// is reversed and relabelled with the complementary letter, and the
    /// initial and accepting sets swap roles.
    pub fn mirror(&self) -> Nfa {
        Nfa {
            alphabet: Arc::clone(&self.alphabet),
            num_states: self.num_states,
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    from: t.to,
                    label: t.label.map(|l| self.alphabet.bar(l)),
                    to: t.from,
                })
                .collect(),
            initial: self.accepting.clone(),
            accepting: self.initial.clone(),
        }
    }

    fn epsilon_table(&self) -> Vec<Vec<usize>> {
        let mut eps = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            if t.label.is_none() {
                eps[t.from].push(t.to);
            }
        }
        eps
    }

    fn letter_table(&self) -> Vec<HashMap<Letter, Vec<usize>>> {
        let mut table: Vec<HashMap<Letter, Vec<usize>>> = vec![HashMap::new(); self.num_states];
        for t in &self.transitions {
            if let Some(l) = t.label {
                table[t.from].entry(l).or_default().push(t.to);
            }
        }
        table
    }

    fn close(eps: &[Vec<usize>], seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(eps[s].iter().copied().filter(|t| !seen.contains(t)));
            }
        }
        seen.into_iter().collect()
    }

    /// Same language, no ε-moves, same state numbering.
    pub fn remove_epsilons(&self) -> Nfa {
        let eps = self.epsilon_table();
        let letters = self.letter_table();
        let mut transitions = BTreeSet::new();
        let mut accepting = BTreeSet::new();
        for q in 0..self.num_states {
            for p in Self::close(&eps, [q]) {
                if self.accepting.contains(&p) {
                    accepting.insert(q);
                }
                for (&l, targets) in &letters[p] {
                    for &to in targets {
                        transitions.insert(Transition {
                            from: q,
                            label: Some(l),
                            to,
                        });
                    }
                }
            }
        }
        Nfa {
            alphabet: Arc::clone(&self.alphabet),
            num_states: self.num_states,
            transitions: transitions.into_iter().collect(),
            initial: self.initial.clone(),
            accepting,
        }
    }

    /// Drops states that are unreachable from an initial state or cannot
    /// reach an accepting one, renumbering the rest.
    pub fn trim(&self) -> Nfa {
        let mut fwd = vec![Vec::new(); self.num_states];
        let mut bwd = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            fwd[t.from].push(t.to);
            bwd[t.to].push(t.from);
        }
        let reach = |adj: &[Vec<usize>], seeds: &BTreeSet<usize>| {
            let mut seen = vec![false; self.num_states];
            let mut stack: Vec<usize> = seeds.iter().copied().collect();
            while let Some(s) = stack.pop() {
                if !seen[s] {
                    seen[s] = true;
                    stack.extend(adj[s].iter().copied());
                }
            }
            seen
        };
        let a = reach(&fwd, &self.initial);
        let c = reach(&bwd, &self.accepting);
        let keep: Vec<bool> = a.iter().zip(&c).map(|(x, y)| *x && *y).collect();
        let mut remap = vec![usize::MAX; self.num_states];
        let mut n = 0;
        for (s, &k) in keep.iter().enumerate() {
            if k {
                remap[s] = n;
                n += 1;
            }
        }
        if n == 0 {
            return Nfa::empty(&self.alphabet);
        }
        Nfa {
            alphabet: Arc::clone(&self.alphabet),
            num_states: n,
            transitions: self
                .transitions
                .iter()
                .filter(|t| keep[t.from] && keep[t.to])
                .map(|t| Transition {
                    from: remap[t.from],
                    label: t.label,
                    to: remap[t.to],
                })
                .collect(),
            initial: self.initial.iter().filter(|s| keep[**s]).map(|s| remap[*s]).collect(),
            accepting: self.accepting.iter().filter(|s| keep[**s]).map(|s| remap[*s]).collect(),
        }
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let eps = self.epsilon_table();
        let letters = self.letter_table();
        let mut current = Self::close(&eps, self.initial.iter().copied());
        for l in w.letters() {
            let next: Vec<usize> = current
                .iter()
                .filter_map(|s| letters[*s].get(l))
                .flatten()
                .copied()
                .collect();
            if next.is_empty() {
                return false;
            }
            current = Self::close(&eps, next);
        }
        current.iter().any(|s| self.accepting.contains(s))
    }

    /// `{ w ∈ L(self) : |w| <= bound }`.
    pub fn enumerate(&self, bound: usize) -> BTreeSet<Word> {
        let mut dfa = LazyDfa::new(self);
        let mut out = BTreeSet::new();
        let start = dfa.start();
        let mut stack: Vec<(usize, Vec<Letter>)> = vec![(start, Vec::new())];
        let letters: Vec<Letter> = self.alphabet.letters().collect();
        while let Some((node, word)) = stack.pop() {
            if dfa.distance(node) > bound - word.len() {
                continue;
            }
            if dfa.is_accepting(node) {
                out.insert(Word::new(&self.alphabet, word.clone()));
            }
            if word.len() == bound {
                continue;
            }
            for &l in &letters {
                if let Some(next) = dfa.step(node, l) {
                    let mut w = word.clone();
                    w.push(l);
                    stack.push((next, w));
                }
            }
        }
        out
    }

    /// Compares `enumerate(bound)` with `members`. On disagreement reports
    /// the shortest (then letter-order least) word of the symmetric difference.
    pub fn equiv_up_to<'a>(&self, members: impl IntoIterator<Item = &'a Word>, bound: usize) -> Equivalence {
        let expected: HashSet<&Word> = members.into_iter().collect();
        let got = self.enumerate(bound);
        let extra = got.iter().filter(|w| !expected.contains(w)).min().cloned();
        let missing = expected
            .iter()
            .filter(|w| w.len() <= bound && !got.contains(**w))
            .min()
            .map(|w| (*w).clone());
        let counterexample = match (extra, missing) {
            (None, None) => None,
            (Some(e), None) => Some(Counterexample::Extra(e)),
            (None, Some(m)) => Some(Counterexample::Missing(m)),
            (Some(e), Some(m)) => Some(if e < m {
                Counterexample::Extra(e)
            } else {
                Counterexample::Missing(m)
            }),
        };
        Equivalence {
            bound,
            automaton_count: got.len(),
            expected_count: expected.iter().filter(|w| w.len() <= bound).count(),
            counterexample,
        }
    }
}

/// A word on which an automaton and a reference set disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// Accepted by the automaton but absent from the reference set.
    Extra(Word),
    /// In the reference set but rejected by the automaton.
    Missing(Word),
}

impl Counterexample {
    pub fn word(&self) -> &Word {
        match self {
            Counterexample::Extra(w) | Counterexample::Missing(w) => w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub bound: usize,
    pub automaton_count: usize,
    pub expected_count: usize,
    pub counterexample: Option<Counterexample>,
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        self.counterexample.is_none()
    }
}

// Subset construction computed on demand, with each subset's distance to
// acceptance used to prune the bounded enumeration.
struct LazyDfa<'a> {
    nfa: &'a Nfa,
    eps: Vec<Vec<usize>>,
    letters: Vec<HashMap<Letter, Vec<usize>>>,
    state_distance: Vec<usize>,
    subsets: Vec<Vec<usize>>,
    ids: HashMap<Vec<usize>, usize>,
    moves: HashMap<(usize, Letter), Option<usize>>,
}

impl<'a> LazyDfa<'a> {
    fn new(nfa: &'a Nfa) -> Self {
        let eps = nfa.epsilon_table();
        let letters = nfa.letter_table();
        // 0-1 BFS on reversed edges: ε costs 0, letters cost 1
        let mut rev: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nfa.num_states];
        for t in &nfa.transitions {
            rev[t.to].push((t.from, usize::from(t.label.is_some())));
        }
        let mut dist = vec![usize::MAX; nfa.num_states];
        let mut dq = VecDeque::new();
        for &f in &nfa.accepting {
            dist[f] = 0;
            dq.push_back(f);
        }
        while let Some(s) = dq.pop_front() {
            for &(p, cost) in &rev[s] {
                let d = dist[s] + cost;
                if d < dist[p] {
                    dist[p] = d;
                    if cost == 0 {
                        dq.push_front(p);
                    } else {
                        dq.push_back(p);
                    }
                }
            }
        }
        Self {
            nfa,
            eps,
            letters,
            state_distance: dist,
            subsets: Vec::new(),
            ids: HashMap::new(),
            moves: HashMap::new(),
        }
    }

    fn intern(&mut self, subset: Vec<usize>) -> usize {
        if let Some(&id) = self.ids.get(&subset) {
            return id;
        }
        let id = self.subsets.len();
        self.subsets.push(subset.clone());
        self.ids.insert(subset, id);
        id
    }

    fn start(&mut self) -> usize {
        let s = Nfa::close(&self.eps, self.nfa.initial.iter().copied());
        self.intern(s)
    }

    fn distance(&self, node: usize) -> usize {
        self.subsets[node]
            .iter()
            .map(|&s| self.state_distance[s])
            .min()
            .unwrap_or(usize::MAX)
    }

    fn is_accepting(&self, node: usize) -> bool {
        self.subsets[node].iter().any(|s| self.nfa.accepting.contains(s))
    }

    fn step(&mut self, node: usize, letter: Letter) -> Option<usize> {
        if let Some(&r) = self.moves.get(&(node, letter)) {
            return r;
        }
        let next: Vec<usize> = self.subsets[node]
            .iter()
            .filter_map(|s| self.letters[*s].get(&letter))
            .flatten()
            .copied()
            .collect();
        let result = if next.is_empty() {
            None
        } else {
            let closed = Nfa::close(&self.eps, next);
            if closed.iter().all(|&s| self.state_distance[s] == usize::MAX) {
                None
            } else {
                Some(self.intern(closed))
            }
        };
        self.moves.insert((node, letter), result);
        result
    }
}
