//! Core types for media: token tables, adjacency-list media, messages,
//! contents, orientations, and length functions.
//!
//! A medium is a deterministic token system in which every token has a
//! fixed-point-free reverse and the effective transitions form the graph of a
//! well-graded set family. Only effective transitions are stored: a token is
//! the identity on every state where it has no listed transition.

use thiserror::Error;

/// Dense state index.
pub type State = usize;
/// Dense token index.
pub type Token = usize;
/// A message is a sequence of tokens applied left to right.
pub type Message = Vec<Token>;

#[derive(Debug, Error, PartialEq)]
pub enum MediumError {
    #[error("token count {0} is odd")]
    OddTokenCount(usize),
    #[error("reverse map is not an involution at token {0}")]
    NotInvolutive(Token),
    #[error("token {0} is its own reverse")]
    SelfReverse(Token),
    #[error("duplicate token label {0:?}")]
    DuplicateTokenLabel(String),
    #[error("token index {token} out of range (tau = {tau})")]
    TokenOutOfRange { token: Token, tau: usize },
    #[error("state index {state} out of range (n = {n})")]
    StateOutOfRange { state: State, n: usize },
    #[error("a medium needs at least one state")]
    NoStates,
    #[error("label count does not match entity count")]
    LabelCountMismatch,
    #[error("ineffective transition listed at state {0} (self loop)")]
    SelfTransition(State),
    #[error("state {state} has two transitions on token {token}")]
    DuplicateTransition { state: State, token: Token },
    #[error("length function violates lambda(t) + lambda(~t) >= 0 at pair ({0}, {1})")]
    NegativePairLength(Token, Token),
    #[error("orientation must mark exactly one of the pair ({0}, {1}) positive")]
    UnorientedPair(Token, Token),
    #[error("content of state {state} breaks the one-per-pair partition at pair ({token}, {reverse})")]
    ContentPartition {
        state: State,
        token: Token,
        reverse: Token,
    },
    #[error("state {0} is unreachable; contents are only defined on connected media")]
    Unreachable(State),
}

/// The token vocabulary: an even number of tokens together with a
/// fixed-point-free involution pairing each token with its reverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenTable {
    reverse: Vec<Token>,
    labels: Option<Vec<String>>,
}

impl TokenTable {
    pub fn new(reverse: Vec<Token>) -> Result<Self, MediumError> {
        let tau = reverse.len();
        if tau % 2 != 0 {
            return Err(MediumError::OddTokenCount(tau));
        }
        for t in 0..tau {
            let r = reverse[t];
            if r >= tau {
                return Err(MediumError::TokenOutOfRange { token: r, tau });
            }
            if r == t {
                return Err(MediumError::SelfReverse(t));
            }
            if reverse[r] != t {
                return Err(MediumError::NotInvolutive(t));
            }
        }
        Ok(TokenTable {
            reverse,
            labels: None,
        })
    }

    pub fn with_labels(reverse: Vec<Token>, labels: Vec<String>) -> Result<Self, MediumError> {
        if labels.len() != reverse.len() {
            return Err(MediumError::LabelCountMismatch);
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(MediumError::DuplicateTokenLabel(pair[0].clone()));
            }
        }
        let mut table = Self::new(reverse)?;
        table.labels = Some(labels);
        Ok(table)
    }

    /// Table of `pairs` reverse pairs where token 2i and 2i+1 are mutual
    /// reverses. This is the layout all the set-family generators use.
    pub fn paired(pairs: usize) -> Self {
        let reverse = (0..2 * pairs)
            .map(|t| if t % 2 == 0 { t + 1 } else { t - 1 })
            .collect();
        TokenTable {
            reverse,
            labels: None,
        }
    }

    pub fn count(&self) -> usize {
        self.reverse.len()
    }

    pub fn reverse(&self, t: Token) -> Token {
        self.reverse[t]
    }

    pub fn label(&self, t: Token) -> Option<&str> {
        self.labels.as_ref().map(|l| l[t].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Iterates each reverse pair once as `(t, reverse(t))` with `t < reverse(t)`.
    pub fn pairs(&self) -> impl Iterator<Item = (Token, Token)> + '_ {
        (0..self.count()).filter_map(move |t| {
            let r = self.reverse(t);
            (t < r).then_some((t, r))
        })
    }
}

/// Adjacency-list representation of a medium. Every listed transition is
/// effective, and per state at most one transition per token is allowed.
#[derive(Debug, Clone)]
pub struct Medium {
    tokens: TokenTable,
    adjacency: Vec<Vec<(Token, State)>>,
    state_labels: Option<Vec<String>>,
}

impl Medium {
    /// Builds a medium value from its token table and adjacency lists.
    ///
    /// Only structural invariants are checked here (index ranges, no self
    /// loops, determinism). Whether the value actually satisfies the medium
    /// axioms is decided by [`crate::verify::verify`].
    pub fn new(
        tokens: TokenTable,
        mut adjacency: Vec<Vec<(Token, State)>>,
        state_labels: Option<Vec<String>>,
    ) -> Result<Self, MediumError> {
        let n = adjacency.len();
        if n == 0 {
            return Err(MediumError::NoStates);
        }
        if let Some(labels) = &state_labels {
            if labels.len() != n {
                return Err(MediumError::LabelCountMismatch);
            }
        }
        let tau = tokens.count();
        for (s, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            for &(t, q) in list.iter() {
                if t >= tau {
                    return Err(MediumError::TokenOutOfRange { token: t, tau });
                }
                if q >= n {
                    return Err(MediumError::StateOutOfRange { state: q, n });
                }
                if q == s {
                    return Err(MediumError::SelfTransition(s));
                }
            }
            for w in list.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(MediumError::DuplicateTransition {
                        state: s,
                        token: w[0].0,
                    });
                }
            }
        }
        Ok(Medium {
            tokens,
            adjacency,
            state_labels,
        })
    }

    pub fn state_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn token_count(&self) -> usize {
        self.tokens.count()
    }

    /// Number of listed (effective) transitions, the `m` of the adjacency
    /// list representation.
    pub fn transition_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn stats(&self) -> MediumStats {
        MediumStats {
            states: self.state_count(),
            tokens: self.token_count(),
            transitions: self.transition_count(),
        }
    }

    pub fn tokens(&self) -> &TokenTable {
        &self.tokens
    }

    pub fn transitions_from(&self, s: State) -> &[(Token, State)] {
        &self.adjacency[s]
    }

    pub fn state_label(&self, s: State) -> Option<&str> {
        self.state_labels.as_ref().map(|l| l[s].as_str())
    }

    pub fn state_labels(&self) -> Option<&[String]> {
        self.state_labels.as_deref()
    }

    /// Applies a token: the listed target if (s, t) is effective, s itself
    /// otherwise. Panics if an index is out of range.
    pub fn apply(&self, s: State, t: Token) -> State {
        assert!(t < self.token_count(), "token index out of range");
        match self.adjacency[s].binary_search_by_key(&t, |&(tok, _)| tok) {
            Ok(i) => self.adjacency[s][i].1,
            Err(_) => s,
        }
    }

    pub fn apply_message(&self, s: State, w: &[Token]) -> State {
        w.iter().fold(s, |q, &t| self.apply(q, t))
    }

    pub fn is_effective(&self, s: State, t: Token) -> bool {
        self.apply(s, t) != s
    }

    /// Tokens effective for `s`, in ascending token order.
    pub fn effective_tokens(&self, s: State) -> Vec<Token> {
        self.adjacency[s].iter().map(|&(t, _)| t).collect()
    }

    /// A message is consistent when it never contains a token together with
    /// that token's reverse.
    pub fn is_consistent(&self, w: &[Token]) -> bool {
        let mut seen = vec![false; self.token_count()];
        for &t in w {
            if seen[self.tokens.reverse(t)] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    /// A message is vacuous when it contains equal numbers of copies of each
    /// token and its reverse.
    pub fn is_vacuous(&self, w: &[Token]) -> bool {
        let mut counts = vec![0isize; self.token_count()];
        for &t in w {
            counts[t] += 1;
        }
        (0..self.token_count()).all(|t| counts[t] == counts[self.tokens.reverse(t)])
    }

    /// A message is stepwise effective for `s` when every successive token
    /// application changes the state.
    pub fn is_stepwise_effective(&self, s: State, w: &[Token]) -> bool {
        let mut cur = s;
        for &t in w {
            let next = self.apply(cur, t);
            if next == cur {
                return false;
            }
            cur = next;
        }
        true
    }

    /// Unweighted distances from every state to `q` over the undirected
    /// effective-transition graph. `usize::MAX` marks unreachable states.
    pub fn bfs_distances(&self, q: State) -> Vec<usize> {
        let n = self.state_count();
        let mut dist = vec![usize::MAX; n];
        dist[q] = 0;
        let mut queue = std::collections::VecDeque::from([q]);
        while let Some(s) = queue.pop_front() {
            for &(_, next) in &self.adjacency[s] {
                if dist[next] == usize::MAX {
                    dist[next] = dist[s] + 1;
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    /// Content of state `q`: the set of tokens occurring on straight paths
    /// into `q`. Computed by one breadth-first pass from `q` followed by one
    /// scan of the listed transitions: a token belongs to the content exactly
    /// when one of its transitions moves a state closer to `q`.
    ///
    /// Fails when the one-per-pair partition breaks, which can only happen on
    /// transition systems that are not media.
    pub fn content(&self, q: State) -> Result<ContentSet, MediumError> {
        let dist = self.bfs_distances(q);
        if let Some(s) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(MediumError::Unreachable(s));
        }
        let mut member = vec![false; self.token_count()];
        for (a, list) in self.adjacency.iter().enumerate() {
            for &(t, b) in list {
                if dist[b] + 1 == dist[a] {
                    member[t] = true;
                }
            }
        }
        for (t, r) in self.tokens.pairs() {
            if member[t] == member[r] {
                return Err(MediumError::ContentPartition {
                    state: q,
                    token: t,
                    reverse: r,
                });
            }
        }
        let tokens = (0..self.token_count()).filter(|&t| member[t]).collect();
        Ok(ContentSet {
            owner: q,
            tokens,
            member,
        })
    }
}

/// The `(n, tau, m)` size parameters of a medium.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MediumStats {
    pub states: usize,
    pub tokens: usize,
    pub transitions: usize,
}

impl MediumStats {
    /// The density bound `m <= n log2 n` that every medium satisfies.
    pub fn density_bound_holds(&self) -> bool {
        // exact check: m <= n log2 n  <=>  2^m <= n^n, compared in log space
        // via integer arithmetic on n^n when small, else f64 is safe at the
        // scales involved.
        if self.states == 1 {
            return self.transitions == 0;
        }
        (self.transitions as f64) <= (self.states as f64) * (self.states as f64).log2() + 1e-9
    }

    /// The size bound `n <= 2^(tau/2)` that every medium satisfies.
    pub fn size_bound_holds(&self) -> bool {
        let half = self.tokens / 2;
        if half >= usize::BITS as usize {
            return true;
        }
        self.states <= 1usize << half
    }
}

/// The content of a state: exactly one token of every reverse pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentSet {
    owner: State,
    tokens: Vec<Token>,
    member: Vec<bool>,
}

impl ContentSet {
    pub fn owner(&self) -> State {
        self.owner
    }

    /// The member tokens in ascending order; always `tau / 2` of them.
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn contains(&self, t: Token) -> bool {
        self.member[t]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn is_disjoint(&self, other: &ContentSet) -> bool {
        self.tokens.iter().all(|&t| !other.contains(t))
    }
}

/// A choice of one positive token per reverse pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    positive: Vec<bool>,
}

impl Orientation {
    pub fn new(tokens: &TokenTable, positive: Vec<bool>) -> Result<Self, MediumError> {
        if positive.len() != tokens.count() {
            return Err(MediumError::LabelCountMismatch);
        }
        for (t, r) in tokens.pairs() {
            if positive[t] == positive[r] {
                return Err(MediumError::UnorientedPair(t, r));
            }
        }
        Ok(Orientation { positive })
    }

    /// The orientation taking the lower-indexed token of each pair positive.
    pub fn lowest_index(tokens: &TokenTable) -> Self {
        let mut positive = vec![false; tokens.count()];
        for (t, _) in tokens.pairs() {
            positive[t] = true;
        }
        Orientation { positive }
    }

    /// The content orientation of `q`: the content of `q` is the positive set.
    pub fn content_of(medium: &Medium, q: State) -> Result<Self, MediumError> {
        let content = medium.content(q)?;
        Ok(Orientation {
            positive: (0..medium.token_count())
                .map(|t| content.contains(t))
                .collect(),
        })
    }

    pub fn from_content(content: &ContentSet, tokens: &TokenTable) -> Result<Self, MediumError> {
        Self::new(
            tokens,
            (0..tokens.count()).map(|t| content.contains(t)).collect(),
        )
    }

    pub fn is_positive(&self, t: Token) -> bool {
        self.positive[t]
    }

    pub fn positive_tokens(&self) -> Vec<Token> {
        (0..self.positive.len())
            .filter(|&t| self.positive[t])
            .collect()
    }

    pub fn len(&self) -> usize {
        self.positive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }
}

/// Per-token real lengths with `lambda(t) + lambda(~t) >= 0` for every pair.
/// The constraint is checked exactly, so integer-valued lengths behave
/// exactly throughout the path algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthFunction {
    lambda: Vec<f64>,
}

impl LengthFunction {
    pub fn new(tokens: &TokenTable, lambda: Vec<f64>) -> Result<Self, MediumError> {
        if lambda.len() != tokens.count() {
            return Err(MediumError::LabelCountMismatch);
        }
        for (t, r) in tokens.pairs() {
            if !(lambda[t] + lambda[r] >= 0.0) {
                return Err(MediumError::NegativePairLength(t, r));
            }
        }
        Ok(LengthFunction { lambda })
    }

    /// All lengths 1; distances then count straight-path steps.
    pub fn unit(tokens: &TokenTable) -> Self {
        LengthFunction {
            lambda: vec![1.0; tokens.count()],
        }
    }

    pub fn get(&self, t: Token) -> f64 {
        self.lambda[t]
    }

    pub fn values(&self) -> &[f64] {
        &self.lambda
    }
}
