//! Closed-orientation testing, constructive violation witnesses, and
//! closed-orientation search by reduction to 2-SAT.
//!
//! An orientation is closed when any two positive tokens effective at the
//! same state commute effectively: both tt' and t't are stepwise effective.
//! Closed orientations admit canonical messages (all positive tokens first,
//! then all negative ones) between any two states.

use std::collections::HashSet;

use thiserror::Error;

use crate::medium::{Medium, MediumError, Message, Orientation, State, Token};
use crate::twosat::{Lit, TwoSat};

/// Witness that an orientation is not closed: `first` and `second` are both
/// positive and both effective at `state`, but `second` is ineffective after
/// applying `first`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViolatingTriple {
    pub state: State,
    pub first: Token,
    pub second: Token,
}

impl ViolatingTriple {
    /// Replays the witness against the medium and orientation.
    pub fn replays(&self, medium: &Medium, orientation: &Orientation) -> bool {
        orientation.is_positive(self.first)
            && orientation.is_positive(self.second)
            && self.first != self.second
            && medium.is_effective(self.state, self.first)
            && medium.is_effective(self.state, self.second)
            && !medium.is_effective(medium.apply(self.state, self.first), self.second)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum OrientationError {
    #[error(transparent)]
    Medium(#[from] MediumError),
    #[error("orientation is not closed: token {1} blocked at state {0}")]
    NotClosed(State, Token),
}

/// p(S): how many positive tokens are effective at `s`.
pub fn positive_effective_count(medium: &Medium, orientation: &Orientation, s: State) -> usize {
    medium
        .transitions_from(s)
        .iter()
        .filter(|&&(t, _)| orientation.is_positive(t))
        .count()
}

fn positive_effective_tokens(medium: &Medium, orientation: &Orientation, s: State) -> Vec<Token> {
    medium
        .transitions_from(s)
        .iter()
        .map(|&(t, _)| t)
        .filter(|&t| orientation.is_positive(t))
        .collect()
}

/// True when `p` positive effective tokens at one state already exceed what a
/// closed orientation of an n-state medium allows (2^p distinct states).
fn exceeds_count_bound(p: usize, n: usize) -> bool {
    p >= usize::BITS as usize || (1usize << p) > n
}

/// Tests whether the orientation is closed, in O(m log n): any state with
/// more positive effective tokens than log2 n settles it immediately, and
/// otherwise every ordered pair drawn from each state's positive effective
/// list is checked.
pub fn is_closed(medium: &Medium, orientation: &Orientation) -> bool {
    let n = medium.state_count();
    for s in 0..n {
        let positives = positive_effective_tokens(medium, orientation, s);
        if exceeds_count_bound(positives.len(), n) {
            return false;
        }
        for &t in &positives {
            let after = medium.apply(s, t);
            for &t2 in &positives {
                if t2 != t && !medium.is_effective(after, t2) {
                    return false;
                }
            }
        }
    }
    true
}

/// Finds a minimal subsequence of `word` that is not stepwise effective from
/// `s`, and converts it to a violating triple: a minimal failure v t t' has
/// every proper subsequence stepwise effective, so t and t' are both
/// effective at the state reached by v.
///
/// Subsequences are searched breadth-first by size (ties broken by bitmask
/// value), so the first failure found is subset-minimal. Returns `None` when
/// every subsequence is stepwise effective; `word` must hold at most 25
/// distinct tokens.
pub fn violating_triple_by_subsequence(
    medium: &Medium,
    s: State,
    word: &[Token],
) -> Option<ViolatingTriple> {
    let k = word.len();
    assert!(k <= 25, "subsequence search over {k} tokens");
    let mut masks: Vec<u32> = (0..1u32 << k).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut cur = s;
        let mut taken: Vec<Token> = Vec::new();
        let mut blocked = None;
        for (i, &t) in word.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            if medium.is_effective(cur, t) {
                cur = medium.apply(cur, t);
                taken.push(t);
            } else {
                blocked = Some(t);
                break;
            }
        }
        if let Some(second) = blocked {
            // minimality by search order: the failure is at the mask's last
            // token, so `taken` ends with the token preceding it
            let first = *taken.last().expect("minimal failing subsequence has length >= 2");
            let mut state = s;
            for &t in &taken[..taken.len() - 1] {
                state = medium.apply(state, t);
            }
            return Some(ViolatingTriple {
                state,
                first,
                second,
            });
        }
    }
    None
}

/// Returns a violating triple when the orientation is not closed, in
/// O(m log n).
///
/// Three cases, tried in order. First, if p drops by more than one along some
/// positive transition S -> St, comparing the two effective lists exposes a
/// token killed by the step. Second, if p never drops by more than one but
/// some state exceeds the log2 n bound, positive transitions are followed to
/// a state with exactly 1 + floor(log2 n) positive effective tokens, where a
/// breadth-first subsequence search must find a failure by pigeonhole.
/// Otherwise every list is small and an exhaustive triple scan (states
/// ascending, pairs lexicographic) finds the first violation.
pub fn find_violating_triple(
    medium: &Medium,
    orientation: &Orientation,
) -> Option<ViolatingTriple> {
    let n = medium.state_count();
    let lists: Vec<Vec<Token>> = (0..n)
        .map(|s| positive_effective_tokens(medium, orientation, s))
        .collect();

    // p drops by 2 or more across a positive transition
    for s in 0..n {
        for &t in &lists[s] {
            let after = medium.apply(s, t);
            if lists[after].len() + 1 < lists[s].len() {
                let second = lists[s]
                    .iter()
                    .copied()
                    .find(|&t2| t2 != t && !medium.is_effective(after, t2))
                    .expect("a killed token exists when p drops by two");
                return Some(ViolatingTriple {
                    state: s,
                    first: t,
                    second,
                });
            }
        }
    }

    // p is monotone but too large somewhere: walk down to the threshold and
    // search subsequences of the token list there
    if let Some(start) = (0..n).find(|&s| exceeds_count_bound(lists[s].len(), n)) {
        let target = 1 + n.ilog2() as usize;
        let mut cur = start;
        while lists[cur].len() != target {
            // positive transitions form a DAG ending at p = 0, and p changes
            // downward by at most 1 per step, so the walk hits the target
            let t = *lists[cur].first().expect("walk passed p = 0 without hitting target");
            cur = medium.apply(cur, t);
        }
        let word = lists[cur].clone();
        return Some(
            violating_triple_by_subsequence(medium, cur, &word)
                .expect("more subsequences than states forces a failure"),
        );
    }

    // all lists small: exhaustive scan
    for s in 0..n {
        for &t in &lists[s] {
            let after = medium.apply(s, t);
            for &t2 in &lists[s] {
                if t2 != t && !medium.is_effective(after, t2) {
                    return Some(ViolatingTriple {
                        state: s,
                        first: t,
                        second: t2,
                    });
                }
            }
        }
    }
    None
}

/// Searches for a closed orientation by 2-SAT: one variable per token, forced
/// opposite to its reverse, plus a clause forbidding t and t' from both being
/// positive for every triple where St and St' are effective but Stt' is not
/// stepwise effective.
pub fn find_closed_orientation(medium: &Medium) -> Option<Orientation> {
    let tau = medium.token_count();
    let mut sat = TwoSat::new(tau);
    for (t, r) in medium.tokens().pairs() {
        sat.add_clause(Lit::pos(t), Lit::pos(r));
        sat.add_clause(Lit::neg(t), Lit::neg(r));
    }
    let mut added: HashSet<(Token, Token)> = HashSet::new();
    for s in 0..medium.state_count() {
        for &(t, after) in medium.transitions_from(s) {
            for &(t2, _) in medium.transitions_from(s) {
                if t2 != t && !medium.is_effective(after, t2) {
                    let key = (t.min(t2), t.max(t2));
                    if added.insert(key) {
                        sat.add_clause(Lit::neg(t), Lit::neg(t2));
                    }
                }
            }
        }
    }
    let assignment = sat.solve()?;
    let orientation = Orientation::new(medium.tokens(), assignment)
        .expect("pair clauses force exactly one positive token per pair");
    debug_assert!(is_closed(medium, &orientation));
    Some(orientation)
}

/// Builds the canonical message from `s` to `q` under a closed orientation:
/// the straight-path tokens, positive ones first (applied greedily in any
/// effective order), then the negative ones.
pub fn canonical_message(
    medium: &Medium,
    orientation: &Orientation,
    s: State,
    q: State,
) -> Result<Message, OrientationError> {
    let cs = medium.content(s)?;
    let cq = medium.content(q)?;
    let needed: Vec<Token> = cq
        .tokens()
        .iter()
        .copied()
        .filter(|&t| !cs.contains(t))
        .collect();
    let (mut pos, mut neg): (Vec<Token>, Vec<Token>) = needed
        .into_iter()
        .partition(|&t| orientation.is_positive(t));

    let mut word = Vec::with_capacity(pos.len() + neg.len());
    let mut cur = s;
    for pending in [&mut pos, &mut neg] {
        while !pending.is_empty() {
            let usable = pending
                .iter()
                .position(|&t| medium.is_effective(cur, t))
                .ok_or(OrientationError::NotClosed(cur, pending[0]))?;
            let t = pending.remove(usable);
            cur = medium.apply(cur, t);
            word.push(t);
        }
    }
    debug_assert_eq!(cur, q);
    Ok(word)
}
