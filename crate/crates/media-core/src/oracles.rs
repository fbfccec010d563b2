//! Brute-force reference implementations, kept deliberately independent of
//! the fast algorithms they check. Size guards are hard preconditions: each
//! oracle refuses inputs it cannot handle exactly.

use std::collections::{HashMap, VecDeque};

use crate::medium::{LengthFunction, Medium, Message, Orientation, State, Token};

/// All-pairs distances by Bellman-Ford relaxation over the transition graph.
/// Media admit no negative cycles, so n - 1 rounds suffice.
pub fn brute_distances(medium: &Medium, lambda: &LengthFunction) -> Vec<Vec<f64>> {
    let n = medium.state_count();
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = 0.0;
    }
    for _ in 0..n.saturating_sub(1) {
        let mut changed = false;
        for from in 0..n {
            for &(t, to) in medium.transitions_from(from) {
                let w = lambda.get(t);
                for src in 0..n {
                    let candidate = dist[src][from] + w;
                    if candidate < dist[src][to] {
                        dist[src][to] = candidate;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Tokens of the content of `q`, by exhaustive depth-first enumeration of
/// consistent stepwise-effective messages arriving at `q` from every state.
pub fn brute_content(medium: &Medium, q: State) -> Vec<Token> {
    let n = medium.state_count();
    assert!(n <= 12, "content enumeration limited to 12 states");
    let tau = medium.token_count();
    let mut in_content = vec![false; tau];

    fn explore(
        medium: &Medium,
        q: State,
        cur: State,
        used: &mut Vec<bool>,
        path: &mut Vec<Token>,
        in_content: &mut [bool],
    ) {
        if cur == q {
            for &t in path.iter() {
                in_content[t] = true;
            }
        }
        for &(t, next) in medium.transitions_from(cur) {
            // consistency: neither the token nor its reverse may recur
            if used[t] || used[medium.tokens().reverse(t)] {
                continue;
            }
            used[t] = true;
            path.push(t);
            explore(medium, q, next, used, path, in_content);
            path.pop();
            used[t] = false;
        }
    }

    for s in 0..n {
        let mut used = vec![false; tau];
        let mut path = Vec::new();
        explore(medium, q, s, &mut used, &mut path, &mut in_content);
    }
    (0..tau).filter(|&t| in_content[t]).collect()
}

/// A minimum-length reset word, by breadth-first search over the automaton of
/// state subsets. `None` when no word synchronizes the automaton.
pub fn brute_shortest_reset(medium: &Medium) -> Option<Message> {
    let n = medium.state_count();
    assert!(n <= 8, "subset automaton search limited to 8 states");
    let tau = medium.token_count();
    let full: u16 = ((1u32 << n) - 1) as u16;
    let mut parent: HashMap<u16, (u16, Token)> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(full);
    parent.insert(full, (full, usize::MAX));
    while let Some(set) = queue.pop_front() {
        if set.count_ones() == 1 {
            let mut word = Vec::new();
            let mut cur = set;
            while cur != full {
                let (prev, t) = parent[&cur];
                word.push(t);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for t in 0..tau {
            let mut image: u16 = 0;
            for s in 0..n {
                if set & (1 << s) != 0 {
                    image |= 1 << medium.apply(s, t);
                }
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(image) {
                e.insert((set, t));
                queue.push_back(image);
            }
        }
    }
    None
}

/// Tests closedness directly from the definition: every ordered pair of
/// positive tokens effective at a common state must commute effectively.
pub fn brute_is_closed(medium: &Medium, orientation: &Orientation) -> bool {
    for s in 0..medium.state_count() {
        let positives: Vec<Token> = medium
            .transitions_from(s)
            .iter()
            .map(|&(t, _)| t)
            .filter(|&t| orientation.is_positive(t))
            .collect();
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

/// Every closed orientation, found by testing all 2^(tau/2) candidates.
pub fn brute_closed_scan(medium: &Medium) -> Vec<Orientation> {
    let tau = medium.token_count();
    assert!(tau <= 16, "orientation scan limited to 16 tokens");
    let half = tau / 2;
    let mut closed = Vec::new();
    for bits in 0..1u32 << half {
        let positive: Vec<bool> = (0..tau)
            .map(|t| ((bits >> (t / 2)) & 1 == 0) == (t % 2 == 0))
            .collect();
        let o = Orientation::new(medium.tokens(), positive).expect("one token per pair");
        if brute_is_closed(medium, &o) {
            closed.push(o);
        }
    }
    closed
}

/// Axiom check by the geometry of the transition graph, independent of the
/// content-based verifier. A transition system on paired tokens is a medium
/// exactly when:
/// - every token moves at least one state;
/// - removing the transitions of any token pair splits the graph into
///   exactly two connected pieces, with the pair's two tokens crossing the
///   cut in consistent opposite directions;
/// - the resulting side-of-cut vectors distinguish all states;
/// - directed graph distance equals Hamming distance between those vectors.
pub fn brute_axiom_check(medium: &Medium) -> bool {
    let n = medium.state_count();
    assert!(n <= 4096, "axiom check limited to 4096 states");
    let tau = medium.token_count();
    let half = tau / 2;

    for t in 0..tau {
        if !(0..n).any(|s| medium.is_effective(s, t)) {
            return false;
        }
    }

    // side[s][p]: which piece s falls in once pair p's transitions are cut
    let mut side = vec![vec![false; half]; n];
    for p in 0..half {
        let (t, r) = (2 * p, 2 * p + 1);
        let mut comp = vec![usize::MAX; n];
        let mut comps = 0;
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            if comps == 2 {
                return false;
            }
            comp[root] = comps;
            let mut queue = VecDeque::from([root]);
            while let Some(s) = queue.pop_front() {
                for &(token, next) in medium.transitions_from(s) {
                    if token != t && token != r && comp[next] == usize::MAX {
                        comp[next] = comps;
                        queue.push_back(next);
                    }
                }
            }
            comps += 1;
        }
        if comps != 2 {
            return false;
        }
        // consistent crossing: t always from piece 0 to piece 1 (or always
        // the other way), r always opposite
        let mut t_dir = None;
        let mut r_dir = None;
        for s in 0..n {
            for &(token, next) in medium.transitions_from(s) {
                let dir = if token == t {
                    &mut t_dir
                } else if token == r {
                    &mut r_dir
                } else {
                    continue;
                };
                if comp[s] == comp[next] {
                    return false;
                }
                match *dir {
                    None => *dir = Some(comp[s]),
                    Some(d) if d != comp[s] => return false,
                    Some(_) => {}
                }
            }
        }
        if let (Some(td), Some(rd)) = (t_dir, r_dir) {
            if td == rd {
                return false;
            }
        }
        for s in 0..n {
            side[s][p] = comp[s] == 1;
        }
    }

    let mut seen: HashMap<&[bool], State> = HashMap::new();
    for (s, vector) in side.iter().enumerate() {
        if seen.insert(vector.as_slice(), s).is_some() {
            return false;
        }
    }

    // directed distance must equal Hamming distance between side vectors
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(cur) = queue.pop_front() {
            for &(_, next) in medium.transitions_from(cur) {
                if dist[next] == usize::MAX {
                    dist[next] = dist[cur] + 1;
                    queue.push_back(next);
                }
            }
        }
        for q in 0..n {
            let hamming = (0..half).filter(|&p| side[s][p] != side[q][p]).count();
            if dist[q] != hamming {
                return false;
            }
        }
    }
    true
}
