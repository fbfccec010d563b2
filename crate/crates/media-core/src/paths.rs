//! Reset sequences, shortest paths, straight-path reconstruction, and
//! complements.
//!
//! All of these ride on the same fact: orienting a medium by the content of a
//! state Q turns the effective transitions into a DAG with Q as its unique
//! sink, and every straight path is a shortest path under any valid length
//! function.

use crate::medium::{
    LengthFunction, Medium, MediumError, Message, Orientation, State, Token,
};

/// A reset word together with the common state it synchronizes to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResetResult {
    pub word: Message,
    pub sink: State,
}

/// Arcs of the directed graph drawn from an orientation: S -> Q whenever
/// St = Q for a positive token t. Acyclic for every orientation; for the
/// content orientation of Q the unique sink is Q.
pub fn content_dag(medium: &Medium, orientation: &Orientation) -> Vec<(State, State)> {
    let mut arcs = Vec::new();
    for s in 0..medium.state_count() {
        for &(t, q) in medium.transitions_from(s) {
            if orientation.is_positive(t) {
                arcs.push((s, q));
            }
        }
    }
    arcs
}

/// States in topological order of the positive-transition DAG (sources first),
/// by descending depth-first finish time. Roots and neighbors are taken in
/// ascending order so the result is deterministic.
fn topological_order(medium: &Medium, orientation: &Orientation) -> Vec<State> {
    let n = medium.state_count();
    let mut finished = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        // iterative DFS with explicit child cursors
        let mut stack = vec![(root, 0usize)];
        seen[root] = true;
        while let Some(&mut (s, ref mut cursor)) = stack.last_mut() {
            let list = medium.transitions_from(s);
            let mut advanced = false;
            while *cursor < list.len() {
                let (t, q) = list[*cursor];
                *cursor += 1;
                if orientation.is_positive(t) && !seen[q] {
                    seen[q] = true;
                    stack.push((q, 0));
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                finished.push(s);
                stack.pop();
            }
        }
    }
    finished.reverse();
    finished
}

/// The lowest-indexed positive token effective for `s`, if any.
fn first_positive_token(medium: &Medium, orientation: &Orientation, s: State) -> Option<Token> {
    medium
        .transitions_from(s)
        .iter()
        .map(|&(t, _)| t)
        .find(|&t| orientation.is_positive(t))
}

/// Finds a reset sequence of length n - 1: a word w with Sw equal to the same
/// sink for every state S.
///
/// The sink is fixed to state 0 and the word is built from the content
/// orientation of that state: topologically order the positive-transition
/// DAG and emit, for each non-sink state in order, its lowest positive
/// effective token.
pub fn reset_sequence(medium: &Medium) -> Result<ResetResult, MediumError> {
    let sink = 0;
    if medium.state_count() == 1 {
        return Ok(ResetResult { word: vec![], sink });
    }
    let orientation = Orientation::content_of(medium, sink)?;
    let order = topological_order(medium, &orientation);
    debug_assert_eq!(*order.last().unwrap(), sink);
    let word = order[..order.len() - 1]
        .iter()
        .map(|&s| {
            first_positive_token(medium, &orientation, s)
                .expect("every non-sink state has a positive effective token")
        })
        .collect();
    Ok(ResetResult { word, sink })
}

/// Distance from every state to `q`: the length of any straight path into
/// `q`, found by walking the content-orientation DAG of `q`.
pub fn distances_to_state(
    medium: &Medium,
    lambda: &LengthFunction,
    q: State,
) -> Result<Vec<f64>, MediumError> {
    let orientation = Orientation::content_of(medium, q)?;
    let n = medium.state_count();
    let mut dist = vec![f64::NAN; n];
    dist[q] = 0.0;
    for s in 0..n {
        follow_chain(medium, &orientation, lambda, s, &mut dist, false);
    }
    Ok(dist)
}

/// Distance from `s` to every state, via the reversed content-orientation
/// DAG of `s`.
pub fn single_source_distances(
    medium: &Medium,
    lambda: &LengthFunction,
    s: State,
) -> Result<Vec<f64>, MediumError> {
    let orientation = Orientation::content_of(medium, s)?;
    let n = medium.state_count();
    let mut dist = vec![f64::NAN; n];
    dist[s] = 0.0;
    for q in 0..n {
        follow_chain(medium, &orientation, lambda, q, &mut dist, true);
    }
    Ok(dist)
}

/// Fills `dist[start]` by following the chain of first positive tokens until
/// a state with a known distance. Forward mode accumulates lambda(t) (distance
/// to the sink); reversed mode accumulates lambda(~t) (distance from the
/// sink).
fn follow_chain(
    medium: &Medium,
    orientation: &Orientation,
    lambda: &LengthFunction,
    start: State,
    dist: &mut [f64],
    reversed: bool,
) {
    let mut chain = Vec::new();
    let mut cur = start;
    while dist[cur].is_nan() {
        let t = first_positive_token(medium, orientation, cur)
            .expect("every non-sink state has a positive effective token");
        chain.push((cur, t));
        cur = medium.apply(cur, t);
    }
    for &(s, t) in chain.iter().rev() {
        let next = medium.apply(s, t);
        dist[s] = if reversed {
            dist[next] + lambda.get(medium.tokens().reverse(t))
        } else {
            dist[next] + lambda.get(t)
        };
    }
}

/// All-pairs shortest path table: for every ordered pair (S, Q) the distance
/// from S to Q and a token effective for S lying on a straight path to Q.
#[derive(Debug, Clone)]
pub struct ApspTable {
    n: usize,
    dist: Vec<f64>,
    first_token: Vec<Token>,
    scan_work: u64,
}

/// Sentinel stored on the diagonal of the first-token table.
pub const NO_TOKEN: Token = usize::MAX;

impl ApspTable {
    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn distance(&self, from: State, to: State) -> f64 {
        self.dist[from * self.n + to]
    }

    /// A token effective for `from` on a straight path to `to`;
    /// [`NO_TOKEN`] when `from == to`.
    pub fn first_token(&self, from: State, to: State) -> Token {
        self.first_token[from * self.n + to]
    }

    /// Instrumented count of sequential-search steps spent maintaining the
    /// token list; bounded by n(tau/2 + 2n) up to a constant.
    pub fn scan_work(&self) -> u64 {
        self.scan_work
    }
}

/// Linked list of (token, bucket) pairs for the tokens in the content of the
/// currently visited state.
struct TokenList {
    token: Vec<Token>,
    next: Vec<usize>,
    prev: Vec<usize>,
    bucket: Vec<Vec<State>>,
    head: usize,
    tail: usize,
}

const NIL: usize = usize::MAX;

impl TokenList {
    fn new() -> Self {
        TokenList {
            token: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            bucket: Vec::new(),
            head: NIL,
            tail: NIL,
        }
    }

    fn append(&mut self, token: Token) -> usize {
        let id = self.token.len();
        self.token.push(token);
        self.next.push(NIL);
        self.prev.push(self.tail);
        self.bucket.push(Vec::new());
        if self.tail != NIL {
            self.next[self.tail] = id;
        } else {
            self.head = id;
        }
        self.tail = id;
        id
    }

    fn unlink(&mut self, id: usize) {
        let (p, n) = (self.prev[id], self.next[id]);
        if p != NIL {
            self.next[p] = n;
        } else {
            self.head = n;
        }
        if n != NIL {
            self.prev[n] = p;
        } else {
            self.tail = p;
        }
    }
}

/// Builds the all-pairs table by one depth-first traversal of the states.
///
/// The traversal maintains, for the current state Q, a sequence L of pairs
/// (t, bucket) over the tokens of the content of Q, and for every other state
/// a reference to the first pair of L whose token is effective for it. A
/// traversal step Qt = Q' removes the pair of the reversed token, appends a
/// fresh pair for t, and re-scans the displaced states forward from the
/// removal point, so no state ever re-visits a position of L. The pointed-to
/// tokens are recorded as the table column on first arrival at each state,
/// and the numeric distances are derived per column by walking the tree the
/// recorded tokens form.
pub fn all_pairs_shortest_paths(
    medium: &Medium,
    lambda: &LengthFunction,
) -> Result<ApspTable, MediumError> {
    let n = medium.state_count();
    let mut table = ApspTable {
        n,
        dist: vec![0.0; n * n],
        first_token: vec![NO_TOKEN; n * n],
        scan_work: 0,
    };
    if n == 1 {
        return Ok(table);
    }

    // full effectiveness table for O(1) tests
    let tau = medium.token_count();
    let mut target = vec![0usize; n * tau];
    for s in 0..n {
        for t in 0..tau {
            target[s * tau + t] = s;
        }
        for &(t, q) in medium.transitions_from(s) {
            target[s * tau + t] = q;
        }
    }

    // Euler tour of a depth-first spanning tree, as a token sequence
    let start: State = 0;
    let tour = euler_tour(medium, start);

    let mut list = TokenList::new();
    let mut pair_of_token = vec![NIL; tau];
    let content = medium.content(start)?;
    for &t in content.tokens() {
        let id = list.append(t);
        pair_of_token[t] = id;
    }

    // initial pointers: sequential scan of L per state, in state order
    let mut pointer = vec![NIL; n];
    for s in 0..n {
        if s == start {
            continue;
        }
        let mut id = list.head;
        loop {
            assert_ne!(id, NIL, "no effective content token for state {s}");
            table.scan_work += 1;
            let t = list.token[id];
            if target[s * tau + t] != s {
                pointer[s] = id;
                list.bucket[id].push(s);
                break;
            }
            id = list.next[id];
        }
    }

    let mut visited = vec![false; n];
    let record_column = |table: &mut ApspTable, pointer: &[usize], list: &TokenList, q: State| {
        for s in 0..n {
            if s != q {
                table.first_token[s * n + q] = list.token[pointer[s]];
            }
        }
    };
    visited[start] = true;
    record_column(&mut table, &pointer, &list, start);

    let mut current = start;
    for &step_token in &tour {
        let next_state = target[current * tau + step_token];
        debug_assert_ne!(next_state, current);
        let reverse = medium.tokens().reverse(step_token);
        let removed = pair_of_token[reverse];
        assert_ne!(removed, NIL, "reversed token must be in the content list");
        let resume = list.next[removed];
        list.unlink(removed);
        pair_of_token[reverse] = NIL;

        let fresh = list.append(step_token);
        pair_of_token[step_token] = fresh;

        // displaced states re-scan forward from the removal point, smallest
        // state first; entries whose pointer moved on are stale
        let mut displaced = std::mem::take(&mut list.bucket[removed]);
        displaced.sort_unstable();
        for s in displaced {
            if pointer[s] != removed || s == next_state {
                continue;
            }
            let mut id = resume;
            loop {
                assert_ne!(id, NIL, "no effective content token for state {s}");
                table.scan_work += 1;
                let t = list.token[id];
                if target[s * tau + t] != s {
                    pointer[s] = id;
                    list.bucket[id].push(s);
                    break;
                }
                id = list.next[id];
            }
        }

        // the state we just left points at the fresh pair without searching
        pointer[current] = fresh;
        list.bucket[fresh].push(current);

        current = next_state;
        if !visited[current] {
            visited[current] = true;
            record_column(&mut table, &pointer, &list, current);
        }
    }

    // numeric distances, one token-tree walk per column
    let mut chain = Vec::new();
    for q in 0..n {
        let mut known = vec![false; n];
        known[q] = true;
        for s in 0..n {
            chain.clear();
            let mut cur = s;
            while !known[cur] {
                chain.push(cur);
                cur = target[cur * tau + table.first_token[cur * n + q]];
            }
            for &v in chain.iter().rev() {
                let t = table.first_token[v * n + q];
                let w = target[v * tau + t];
                table.dist[v * n + q] = table.dist[w * n + q] + lambda.get(t);
                known[v] = true;
            }
        }
    }

    Ok(table)
}

/// Token sequence of an Euler tour of a depth-first spanning tree rooted at
/// `start`: each tree edge is walked down by its token and back up by the
/// reverse. Children are explored in ascending token order.
fn euler_tour(medium: &Medium, start: State) -> Vec<Token> {
    let n = medium.state_count();
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut tour = Vec::with_capacity(2 * n.saturating_sub(1));
    // stack of (state, cursor, token used to enter)
    let mut stack = vec![(start, 0usize, NO_TOKEN)];
    while let Some(&mut (s, ref mut cursor, entered_by)) = stack.last_mut() {
        let list = medium.transitions_from(s);
        let mut advanced = false;
        while *cursor < list.len() {
            let (t, q) = list[*cursor];
            *cursor += 1;
            if !seen[q] {
                seen[q] = true;
                tour.push(t);
                stack.push((q, 0, t));
                advanced = true;
                break;
            }
        }
        if !advanced {
            stack.pop();
            if entered_by != NO_TOKEN {
                tour.push(medium.tokens().reverse(entered_by));
            }
        }
    }
    tour
}

/// Reconstructs a straight path from `s` to `q` by following the first-token
/// table; the result is consistent, stepwise effective, and its token set is
/// content(q) minus content(s).
pub fn straight_path(medium: &Medium, table: &ApspTable, s: State, q: State) -> Message {
    let mut word = Vec::new();
    let mut cur = s;
    while cur != q {
        let t = table.first_token(cur, q);
        assert_ne!(t, NO_TOKEN);
        word.push(t);
        cur = medium.apply(cur, t);
        assert!(word.len() <= medium.state_count(), "first-token table is cyclic");
    }
    word
}

/// The complement of `s`: the unique state whose content is disjoint from the
/// content of `s`, if one exists. Found by one breadth-first pass: the
/// complement is exactly the state at straight-path distance tau/2.
pub fn complement_of(medium: &Medium, s: State) -> Result<Option<State>, MediumError> {
    let half = medium.token_count() / 2;
    let dist = medium.bfs_distances(s);
    let candidate = (0..medium.state_count()).find(|&q| dist[q] == half);
    match candidate {
        None => Ok(None),
        Some(q) => {
            let cs = medium.content(s)?;
            let cq = medium.content(q)?;
            Ok(cs.is_disjoint(&cq).then_some(q))
        }
    }
}

/// Finds every complementary pair of states in O(n tau) by a depth-first
/// traversal that drags a companion state S toward the complement of the
/// visited state Q, maintaining the token list of content(Q) and content(S)
/// in common. Pairs are reported with the smaller state first.
pub fn all_complementary_pairs(medium: &Medium) -> Result<Vec<(State, State)>, MediumError> {
    let n = medium.state_count();
    let tau = medium.token_count();

    let mut in_content_q: Vec<bool> = {
        let c = medium.content(0)?;
        (0..tau).map(|t| c.contains(t)).collect()
    };
    let mut in_content_s = in_content_q.clone();
    let mut companion: State = 0;

    // L: tokens in content(Q) and content(S), as a membership mask plus list
    let mut in_list: Vec<bool> = in_content_q.clone();
    let mut list: Vec<Token> = (0..tau).filter(|&t| in_list[t]).collect();

    let mut pairs = Vec::new();
    let mut record = |q: State, s: State| {
        let pair = (q.min(s), q.max(s));
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    };

    // drag the companion along tokens of L as long as possible
    let reduce = |medium: &Medium,
                  companion: &mut State,
                  in_content_s: &mut Vec<bool>,
                  in_list: &mut Vec<bool>,
                  list: &mut Vec<Token>| {
        loop {
            let found = list.iter().copied().find(|&t| {
                medium.is_effective(*companion, medium.tokens().reverse(t))
            });
            match found {
                None => break,
                Some(t) => {
                    let r = medium.tokens().reverse(t);
                    *companion = medium.apply(*companion, r);
                    in_content_s[t] = false;
                    in_content_s[r] = true;
                    in_list[t] = false;
                    list.retain(|&x| x != t);
                }
            }
        }
    };

    reduce(
        medium,
        &mut companion,
        &mut in_content_s,
        &mut in_list,
        &mut list,
    );
    if list.is_empty() {
        record(0, companion);
    }

    let mut visited = vec![false; n];
    visited[0] = true;
    let mut current: State = 0;
    for &t in &euler_tour(medium, 0) {
        current = medium.apply(current, t);
        let r = medium.tokens().reverse(t);
        in_content_q[r] = false;
        in_content_q[t] = true;
        if in_list[r] {
            in_list[r] = false;
            list.retain(|&x| x != r);
        }
        if in_content_s[t] && !in_list[t] {
            in_list[t] = true;
            list.push(t);
        }
        reduce(
            medium,
            &mut companion,
            &mut in_content_s,
            &mut in_list,
            &mut list,
        );
        if !visited[current] {
            visited[current] = true;
            if list.is_empty() {
                record(current, companion);
            }
        }
    }

    pairs.sort_unstable();
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{from_well_graded_family, SetFamily};
    use crate::generators::permutation_medium;
    use crate::medium::TokenTable;

    fn six_state_medium() -> Medium {
        let f = SetFamily::new(3, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110]).unwrap();
        from_well_graded_family(&f).unwrap()
    }

    fn powerset_medium(k: usize) -> Medium {
        let f = SetFamily::new(k, (0..1u64 << k).collect()).unwrap();
        from_well_graded_family(&f).unwrap()
    }

    #[test]
    fn content_dag_of_single_state_is_empty() {
        let m = Medium::new(TokenTable::paired(0), vec![vec![]], None).unwrap();
        let o = Orientation::lowest_index(m.tokens());
        assert!(content_dag(&m, &o).is_empty());
        assert_eq!(reset_sequence(&m).unwrap().word, Vec::<Token>::new());
    }

    #[test]
    fn content_dag_has_unique_sink_under_content_orientation() {
        let m = permutation_medium(3).unwrap();
        for q in 0..m.state_count() {
            let o = Orientation::content_of(&m, q).unwrap();
            let arcs = content_dag(&m, &o);
            let mut outdegree = vec![0; m.state_count()];
            for &(s, _) in &arcs {
                outdegree[s] += 1;
            }
            let sinks: Vec<State> = (0..m.state_count()).filter(|&s| outdegree[s] == 0).collect();
            assert_eq!(sinks, vec![q]);
        }
    }

    #[test]
    fn powerset_of_two_dag_is_diamond() {
        let m = powerset_medium(2);
        let o = Orientation::lowest_index(m.tokens());
        let arcs = content_dag(&m, &o);
        assert_eq!(arcs.len(), 4);
        // inserts all point toward the full set at state index 3
        let mut indegree = vec![0; 4];
        for &(_, q) in &arcs {
            indegree[q] += 1;
        }
        assert_eq!(indegree, vec![0, 1, 1, 2]);
    }

    #[test]
    fn reset_sequence_synchronizes_all_states() {
        for m in [six_state_medium(), permutation_medium(3).unwrap()] {
            let reset = reset_sequence(&m).unwrap();
            assert_eq!(reset.word.len(), m.state_count() - 1);
            for s in 0..m.state_count() {
                assert_eq!(m.apply_message(s, &reset.word), reset.sink);
            }
        }
    }

    #[test]
    fn unit_distances_count_content_difference() {
        let m = six_state_medium();
        let unit = LengthFunction::unit(m.tokens());
        for q in 0..m.state_count() {
            let dist = distances_to_state(&m, &unit, q).unwrap();
            let cq = m.content(q).unwrap();
            for s in 0..m.state_count() {
                let cs = m.content(s).unwrap();
                let diff = cq.tokens().iter().filter(|&&t| !cs.contains(t)).count();
                assert_eq!(dist[s], diff as f64, "s={s} q={q}");
            }
            assert_eq!(dist[q], 0.0);
        }
    }

    #[test]
    fn single_source_matches_per_target() {
        let m = permutation_medium(3).unwrap();
        let unit = LengthFunction::unit(m.tokens());
        let from0 = single_source_distances(&m, &unit, 0).unwrap();
        for q in 0..m.state_count() {
            let to_q = distances_to_state(&m, &unit, q).unwrap();
            assert_eq!(from0[q], to_q[0]);
        }
    }

    #[test]
    fn identity_to_reversal_distance_is_three() {
        let m = permutation_medium(3).unwrap();
        let unit = LengthFunction::unit(m.tokens());
        let identity = (0..6).find(|&s| m.state_label(s) == Some("abc")).unwrap();
        let reversal = (0..6).find(|&s| m.state_label(s) == Some("cba")).unwrap();
        let dist = distances_to_state(&m, &unit, reversal).unwrap();
        assert_eq!(dist[identity], 3.0);
    }

    #[test]
    fn apsp_matches_per_target_distances() {
        let m = six_state_medium();
        let unit = LengthFunction::unit(m.tokens());
        let table = all_pairs_shortest_paths(&m, &unit).unwrap();
        for q in 0..m.state_count() {
            let dist = distances_to_state(&m, &unit, q).unwrap();
            for s in 0..m.state_count() {
                assert_eq!(table.distance(s, q), dist[s]);
            }
        }
    }

    #[test]
    fn straight_path_between_subsets() {
        let m = six_state_medium();
        let unit = LengthFunction::unit(m.tokens());
        let table = all_pairs_shortest_paths(&m, &unit).unwrap();
        // {1} is member 0b001 at index 0; {2,3} is 0b110 at index 5
        let w = straight_path(&m, &table, 0, 5);
        assert_eq!(w.len(), 3);
        assert!(m.is_consistent(&w));
        assert!(m.is_stepwise_effective(0, &w));
        assert_eq!(m.apply_message(0, &w), 5);
        assert!(straight_path(&m, &table, 4, 4).is_empty());
    }

    #[test]
    fn complements_in_powerset_of_three() {
        let m = powerset_medium(3);
        // member order is numeric: index == bitmask
        assert_eq!(complement_of(&m, 0b001).unwrap(), Some(0b110));
        assert_eq!(complement_of(&m, 0b000).unwrap(), Some(0b111));
        let pairs = all_complementary_pairs(&m).unwrap();
        assert_eq!(pairs.len(), 4);
        for &(a, b) in &pairs {
            assert_eq!(a ^ b, 0b111);
        }
    }

    #[test]
    fn missing_complement() {
        let f = SetFamily::new(2, vec![0b00, 0b01, 0b10]).unwrap();
        let m = from_well_graded_family(&f).unwrap();
        assert_eq!(complement_of(&m, 0).unwrap(), None);
        let pairs = all_complementary_pairs(&m).unwrap();
        assert_eq!(pairs, vec![(1, 2)]);
    }

    #[test]
    fn six_state_complement_pairs() {
        let m = six_state_medium();
        // members: {1}=0, {2}=1, {3}=2, {1,2}=3, {1,3}=4, {2,3}=5
        let pairs = all_complementary_pairs(&m).unwrap();
        assert_eq!(pairs, vec![(0, 5), (1, 4), (2, 3)]);
    }

    #[test]
    fn single_state_is_self_complementary() {
        let m = Medium::new(TokenTable::paired(0), vec![vec![]], None).unwrap();
        assert_eq!(complement_of(&m, 0).unwrap(), Some(0));
        assert_eq!(all_complementary_pairs(&m).unwrap(), vec![(0, 0)]);
    }

    #[test]
    fn scan_work_is_quadratically_bounded() {
        let m = permutation_medium(4).unwrap();
        let unit = LengthFunction::unit(m.tokens());
        let table = all_pairs_shortest_paths(&m, &unit).unwrap();
        let n = m.state_count() as u64;
        let tau = m.token_count() as u64;
        assert!(table.scan_work() <= 4 * n * (tau / 2 + 2 * n));
    }
}
