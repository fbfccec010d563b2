//! Oracle-defined media and bounded-memory state enumeration by reverse
//! search.
//!
//! A black-box medium is a token count, a transition oracle over opaque
//! byte-string states, and a seed state. The enumerator lists every state
//! exactly once while retaining only the current state, a token cursor, and
//! the set of positive tokens discovered so far, so it works on media far too
//! large for an explicit transition table.

use std::cell::Cell;

use thiserror::Error;

use crate::medium::{Medium, Message, Token};

/// Opaque state representation: unique per state, comparable for equality.
pub type OpaqueState = Vec<u8>;

#[derive(Debug, Error, PartialEq)]
pub enum BlackBoxError {
    #[error("bad medium: no positive step from state {0}")]
    BadMedium(String),
}

/// A medium given by a transition oracle instead of explicit tables.
pub struct BlackBoxMedium<'a> {
    token_count: usize,
    seed: OpaqueState,
    transition: Box<dyn Fn(&[u8], Token) -> OpaqueState + 'a>,
    render: Box<dyn Fn(&[u8]) -> String + 'a>,
    calls: Cell<u64>,
}

impl<'a> BlackBoxMedium<'a> {
    pub fn new(
        token_count: usize,
        seed: OpaqueState,
        transition: impl Fn(&[u8], Token) -> OpaqueState + 'a,
    ) -> Self {
        BlackBoxMedium {
            token_count,
            seed,
            transition: Box::new(transition),
            render: Box::new(|bytes| {
                bytes.iter().map(|b| format!("{b:02x}")).collect::<String>()
            }),
            calls: Cell::new(0),
        }
    }

    pub fn with_renderer(mut self, render: impl Fn(&[u8]) -> String + 'a) -> Self {
        self.render = Box::new(render);
        self
    }

    pub fn token_count(&self) -> usize {
        self.token_count
    }

    pub fn seed(&self) -> &[u8] {
        &self.seed
    }

    /// Applies the oracle, counting the call.
    pub fn transition(&self, state: &[u8], token: Token) -> OpaqueState {
        self.calls.set(self.calls.get() + 1);
        (self.transition)(state, token)
    }

    /// Total oracle calls made so far through this handle.
    pub fn transition_calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn render_state(&self, state: &[u8]) -> String {
        (self.render)(state)
    }

    pub fn enumerate_states(&self) -> StateEnumerator<'_, 'a> {
        StateEnumerator {
            search: ReverseSearch::new(self),
        }
    }
}

/// What the traversal did on one advance.
enum Event {
    Visit(OpaqueState),
    Backtrack(Token),
}

/// Reverse search over the canonical path tree induced by the content
/// orientation of the seed, with the positive-token list discovered on the
/// fly: the canonical step from a state is its first effective token in
/// discovery order, and a transition is descended only when it is the reverse
/// of the neighbor's canonical step.
struct ReverseSearch<'s, 'a> {
    bb: &'s BlackBoxMedium<'a>,
    positive: Vec<Token>,
    is_positive: Vec<bool>,
    state: OpaqueState,
    cursor: usize,
    started: bool,
    done: bool,
}

impl<'s, 'a> ReverseSearch<'s, 'a> {
    fn new(bb: &'s BlackBoxMedium<'a>) -> Self {
        ReverseSearch {
            bb,
            positive: Vec::new(),
            is_positive: vec![false; bb.token_count()],
            state: bb.seed().to_vec(),
            cursor: 0,
            started: false,
            done: false,
        }
    }

    /// The canonical step from `state`: the first discovered-positive token
    /// effective on it, with the state it leads to.
    fn step(&self, state: &[u8]) -> Option<(Token, OpaqueState)> {
        for &t in &self.positive {
            let neighbor = self.bb.transition(state, t);
            if neighbor != state {
                return Some((t, neighbor));
            }
        }
        None
    }

    fn bad_medium(&self, state: &[u8]) -> BlackBoxError {
        BlackBoxError::BadMedium(self.bb.render_state(state))
    }

    fn next_event(&mut self) -> Option<Result<Event, BlackBoxError>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Ok(Event::Visit(self.state.clone())));
        }
        loop {
            if self.cursor >= self.bb.token_count() {
                // transitions from the current state are exhausted
                if self.state == self.bb.seed() {
                    self.done = true;
                    return None;
                }
                let (token, parent) = match self.step(&self.state) {
                    Some(step) => step,
                    None => {
                        self.done = true;
                        return Some(Err(self.bad_medium(&self.state)));
                    }
                };
                // resume the parent's token scan just past the token that
                // led here
                let resume = (0..self.bb.token_count())
                    .find(|&t| self.bb.transition(&parent, t) == self.state)
                    .expect("token from parent to child exists");
                self.cursor = resume + 1;
                self.state = parent;
                return Some(Ok(Event::Backtrack(token)));
            }

            let t = self.cursor;
            self.cursor += 1;
            if self.is_positive[t] {
                continue;
            }
            let neighbor = self.bb.transition(&self.state, t);
            if neighbor == self.state {
                continue;
            }
            // effective non-positive token: its reverse lies on a straight
            // path to the seed, so record it as positive
            let invtok = match (0..self.bb.token_count())
                .find(|&r| self.bb.transition(&neighbor, r) == self.state)
            {
                Some(r) => r,
                None => {
                    self.done = true;
                    return Some(Err(self.bad_medium(&neighbor)));
                }
            };
            if !self.is_positive[invtok] {
                self.is_positive[invtok] = true;
                self.positive.push(invtok);
            }
            // descend only along reverses of canonical steps
            match self.step(&neighbor) {
                Some((_, back)) if back == self.state => {
                    self.state = neighbor;
                    self.cursor = 0;
                    return Some(Ok(Event::Visit(self.state.clone())));
                }
                Some(_) => {}
                None => {
                    self.done = true;
                    return Some(Err(self.bad_medium(&neighbor)));
                }
            }
        }
    }
}

/// Pull-based stream of the states of a black-box medium, seed first, each
/// exactly once. Single-consumer; memory stays O(state size + tokens).
pub struct StateEnumerator<'s, 'a> {
    search: ReverseSearch<'s, 'a>,
}

impl StateEnumerator<'_, '_> {
    /// Positive tokens discovered so far, in discovery order. After the
    /// stream is exhausted this is the positive part of the content
    /// orientation of the seed.
    pub fn discovered_positive_tokens(&self) -> &[Token] {
        &self.search.positive
    }
}

impl Iterator for StateEnumerator<'_, '_> {
    type Item = Result<OpaqueState, BlackBoxError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            match self.search.next_event()? {
                Ok(Event::Visit(state)) => return Some(Ok(state)),
                Ok(Event::Backtrack(_)) => {}
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Runs the same traversal but collects, instead of the states, the token
/// emitted each time the search returns from a state to its parent. The
/// resulting word has length n - 1 and sends every state to the seed.
pub fn black_box_reset_sequence(bb: &BlackBoxMedium<'_>) -> Result<Message, BlackBoxError> {
    let mut search = ReverseSearch::new(bb);
    let mut word = Vec::new();
    while let Some(event) = search.next_event() {
        match event? {
            Event::Visit(_) => {}
            Event::Backtrack(t) => word.push(t),
        }
    }
    Ok(word)
}

/// Wraps an explicit medium as a black box; states are rendered as their
/// decimal indices.
pub fn wrap_explicit(medium: &Medium) -> BlackBoxMedium<'_> {
    let labels: Vec<String> = (0..medium.state_count())
        .map(|s| medium.state_label(s).unwrap_or(&s.to_string()).to_owned())
        .collect();
    BlackBoxMedium::new(
        medium.token_count(),
        0usize.to_string().into_bytes(),
        move |bytes, token| {
            let s: usize = std::str::from_utf8(bytes)
                .expect("wrapped state is decimal text")
                .parse()
                .expect("wrapped state is a state index");
            medium.apply(s, token).to_string().into_bytes()
        },
    )
    .with_renderer(move |bytes| {
        let s: usize = std::str::from_utf8(bytes).unwrap().parse().unwrap();
        labels[s].clone()
    })
}

fn decode_bitmap(bytes: &[u8]) -> u64 {
    u64::from_le_bytes(bytes.try_into().expect("bitmap state is 8 bytes"))
}

fn encode_bitmap(mask: u64) -> OpaqueState {
    mask.to_le_bytes().to_vec()
}

/// Black box over a well-graded set family given only by a membership
/// predicate on bitmaps. Token `2x` inserts element `x`, token `2x + 1`
/// deletes it; transitions leaving the family are ineffective. A predicate
/// that does not define a well-graded family surfaces as a bad-medium error
/// during enumeration.
pub fn set_family_oracle<'a>(
    universe: usize,
    member: impl Fn(u64) -> bool + 'a,
    seed: u64,
) -> BlackBoxMedium<'a> {
    assert!(universe <= 64);
    let names: Vec<String> = (0..universe).map(crate::generators::item_name).collect();
    BlackBoxMedium::new(2 * universe, encode_bitmap(seed), move |bytes, token| {
        let mask = decode_bitmap(bytes);
        let bit = 1u64 << (token / 2);
        let next = if token % 2 == 0 { mask | bit } else { mask & !bit };
        if next != mask && member(next) {
            encode_bitmap(next)
        } else {
            bytes.to_vec()
        }
    })
    .with_renderer(move |bytes| {
        let mask = decode_bitmap(bytes);
        let inside: Vec<&str> = (0..names.len())
            .filter(|&x| mask & (1 << x) != 0)
            .map(|x| names[x].as_str())
            .collect();
        format!("{{{}}}", inside.join(","))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{from_well_graded_family, SetFamily};
    use crate::generators::permutation_medium;
    use crate::medium::{Orientation, TokenTable};

    fn collect_states(bb: &BlackBoxMedium<'_>) -> Vec<OpaqueState> {
        bb.enumerate_states().map(|r| r.unwrap()).collect()
    }

    #[test]
    fn powerset_bitmap_oracle_yields_all_subsets() {
        let bb = set_family_oracle(10, |_| true, 0);
        let states = collect_states(&bb);
        assert_eq!(states.len(), 1024);
        let mut masks: Vec<u64> = states.iter().map(|s| decode_bitmap(s)).collect();
        assert_eq!(masks[0], 0);
        masks.sort_unstable();
        masks.dedup();
        assert_eq!(masks.len(), 1024);
    }

    #[test]
    fn six_state_membership_oracle() {
        let bb = set_family_oracle(3, |m| m.count_ones() == 1 || m.count_ones() == 2, 0b001);
        let states = collect_states(&bb);
        assert_eq!(states.len(), 6);
        assert_eq!(decode_bitmap(&states[0]), 0b001);
    }

    #[test]
    fn single_state_box_yields_only_the_seed() {
        let bb = BlackBoxMedium::new(4, b"only".to_vec(), |s, _| s.to_vec());
        let states = collect_states(&bb);
        assert_eq!(states, vec![b"only".to_vec()]);
        assert_eq!(black_box_reset_sequence(&bb).unwrap(), Vec::<Token>::new());
    }

    #[test]
    fn wrapped_medium_round_trip() {
        let m = permutation_medium(4).unwrap();
        let bb = wrap_explicit(&m);
        // transition parity against the explicit tables
        for s in 0..m.state_count() {
            let bytes = s.to_string().into_bytes();
            for t in 0..m.token_count() {
                assert_eq!(
                    bb.transition(&bytes, t),
                    m.apply(s, t).to_string().into_bytes()
                );
            }
        }
        let states = collect_states(&bb);
        assert_eq!(states.len(), m.state_count());
        let mut seen: Vec<OpaqueState> = states.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), m.state_count());
    }

    #[test]
    fn call_count_stays_within_bound() {
        let m = permutation_medium(4).unwrap();
        let bb = wrap_explicit(&m);
        let before = bb.transition_calls();
        let states = collect_states(&bb);
        let calls = bb.transition_calls() - before;
        let n = states.len() as u64;
        let tau = m.token_count() as u64;
        assert!(calls <= 8 * n * tau * tau, "{calls} calls for n={n} tau={tau}");
    }

    #[test]
    fn discovered_positives_match_seed_content_orientation() {
        let f = SetFamily::new(3, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110]).unwrap();
        let m = from_well_graded_family(&f).unwrap();
        let bb = wrap_explicit(&m);
        let mut stream = bb.enumerate_states();
        for r in stream.by_ref() {
            r.unwrap();
        }
        let mut discovered = stream.discovered_positive_tokens().to_vec();
        discovered.sort_unstable();
        let o = Orientation::content_of(&m, 0).unwrap();
        assert_eq!(discovered, o.positive_tokens());
    }

    #[test]
    fn reset_sequence_from_subset_boxes() {
        let f = SetFamily::new(3, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110]).unwrap();
        let m = from_well_graded_family(&f).unwrap();
        let bb = wrap_explicit(&m);
        let word = black_box_reset_sequence(&bb).unwrap();
        assert_eq!(word.len(), 5);
        for s in 0..m.state_count() {
            assert_eq!(m.apply_message(s, &word), 0);
        }
    }

    #[test]
    fn bounded_size_family_oracle() {
        let bb = set_family_oracle(4, |m| m.count_ones() <= 2, 0);
        assert_eq!(collect_states(&bb).len(), 11);
    }

    #[test]
    fn independent_sets_of_a_triangle() {
        let edges = [(0u32, 1u32), (1, 2), (0, 2)];
        let bb = set_family_oracle(
            3,
            move |m| edges.iter().all(|&(a, b)| m & (1 << a) == 0 || m & (1 << b) == 0),
            0,
        );
        assert_eq!(collect_states(&bb).len(), 4);
    }

    #[test]
    fn irreversible_oracle_is_reported() {
        // token 0 moves the seed but nothing leads back: not a medium
        let bb = BlackBoxMedium::new(2, b"0".to_vec(), |s, t| {
            if s == b"0" && t == 0 {
                b"1".to_vec()
            } else {
                s.to_vec()
            }
        });
        let results: Vec<_> = bb.enumerate_states().collect();
        assert_eq!(results[0], Ok(b"0".to_vec()));
        assert!(matches!(
            results.last(),
            Some(Err(BlackBoxError::BadMedium(_)))
        ));
    }

    #[test]
    fn renderer_output() {
        let bb = set_family_oracle(3, |_| true, 0b101);
        assert_eq!(bb.render_state(bb.seed()), "{a,c}");
        let m = Medium::new(
            TokenTable::paired(0),
            vec![vec![]],
            Some(vec!["root".into()]),
        )
        .unwrap();
        let bb = wrap_explicit(&m);
        assert_eq!(bb.render_state(bb.seed()), "root");
    }
}
