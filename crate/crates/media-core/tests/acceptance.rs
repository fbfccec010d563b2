//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, powerset_medium, six_state_medium};
use media_core::{
    all_complementary_pairs, all_pairs_shortest_paths, black_box_reset_sequence,
    brute_axiom_check, brute_closed_scan, brute_distances, brute_shortest_reset,
    downward_closed_medium, find_closed_orientation, find_violating_triple, is_closed,
    permutation_medium, positive_effective_count, reset_sequence, set_family_oracle, verify,
    wrap_explicit, LengthFunction, Medium, Orientation, SetFamily, TokenTable,
};

struct Criterion {
    number: u32,
    name: &'static str,
}

impl Criterion {
    fn new(number: u32, name: &'static str) -> Self {
        Criterion { number, name }
    }

    fn finish(self, passed: bool) {
        println!(
            "criterion {} ({}): {}",
            self.number,
            self.name,
            if passed { "PASS" } else { "FAIL" }
        );
        assert!(passed, "criterion {} ({}) failed", self.number, self.name);
    }
}

/// Deterministic corruptions of a medium that should fail verification:
/// drop one transition, or retarget one transition.
fn corruptions(medium: &Medium) -> Vec<Medium> {
    let mut out = Vec::new();
    let n = medium.state_count();
    let adjacency: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|s| medium.transitions_from(s).to_vec())
        .collect();
    let reverse: Vec<usize> = (0..medium.token_count())
        .map(|t| medium.tokens().reverse(t))
        .collect();
    if let Some(s) = (0..n).find(|&s| !adjacency[s].is_empty()) {
        let mut dropped = adjacency.clone();
        dropped[s].remove(0);
        if let Ok(m) = Medium::new(TokenTable::new(reverse.clone()).unwrap(), dropped, None) {
            out.push(m);
        }
        if n >= 2 {
            let mut retargeted = adjacency.clone();
            let (t, to) = retargeted[s][0];
            retargeted[s][0] = (t, (to + 1) % n);
            if retargeted[s][0].1 != s
                && !retargeted[s].iter().skip(1).any(|&(u, _)| u == t)
            {
                if let Ok(m) = Medium::new(TokenTable::new(reverse).unwrap(), retargeted, None) {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_axioms_and_structure() {
    let c = Criterion::new(1, "axioms/structure");
    let mut passed = true;
    for (name, medium) in corpus() {
        if !verify(&medium).passed() {
            eprintln!("verification failed on {name}");
            passed = false;
        }
        if medium.state_count() <= 12 {
            if !brute_axiom_check(&medium) {
                eprintln!("axiom oracle rejects {name}");
                passed = false;
            }
            for (i, bad) in corruptions(&medium).into_iter().enumerate() {
                let fast = verify(&bad).passed();
                let brute = brute_axiom_check(&bad);
                if fast != brute {
                    eprintln!("disagreement on corruption #{i} of {name}: fast={fast} brute={brute}");
                    passed = false;
                }
            }
        }
    }
    c.finish(passed);
}

#[test]
fn criterion_2_size_bounds() {
    let c = Criterion::new(2, "density and size bounds");
    let mut passed = true;
    for (name, medium) in corpus() {
        let stats = medium.stats();
        if !stats.density_bound_holds() || !stats.size_bound_holds() {
            eprintln!("bounds violated on {name}: {stats:?}");
            passed = false;
        }
    }
    c.finish(passed);
}

#[test]
fn criterion_3_reset_sequences() {
    let c = Criterion::new(3, "reset sequences");
    let mut passed = true;
    for (name, medium) in corpus() {
        let reset = reset_sequence(&medium).unwrap();
        if reset.word.len() != medium.state_count() - 1 {
            eprintln!("reset word on {name} has length {}", reset.word.len());
            passed = false;
        }
        for s in 0..medium.state_count() {
            if medium.apply_message(s, &reset.word) != reset.sink {
                eprintln!("reset word on {name} fails to synchronize state {s}");
                passed = false;
                break;
            }
        }
    }
    let shortest = brute_shortest_reset(&six_state_medium()).unwrap();
    if shortest.len() <= 3 {
        eprintln!("six-state medium reset at length {}", shortest.len());
        passed = false;
    }
    c.finish(passed);
}

#[test]
fn criterion_4_shortest_paths_against_oracle() {
    let c = Criterion::new(4, "all-pairs shortest paths");
    let mut passed = true;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // media up to n = 60: fixed picks plus random downward-closed families
    let mut media: Vec<Medium> = vec![
        permutation_medium(3).unwrap(),
        permutation_medium(4).unwrap(),
        powerset_medium(4),
        powerset_medium(5),
        six_state_medium(),
    ];
    while media.len() < 40 {
        let universe = rng.gen_range(4..=6);
        let mut members: HashSet<u64> = HashSet::new();
        members.insert(0);
        for x in 0..universe {
            members.insert(1 << x);
        }
        for _ in 0..rng.gen_range(2..=4) {
            let seed: u64 = rng.gen_range(0..1u64 << universe);
            // close downward so the family is well graded
            let mut stack = vec![seed];
            while let Some(m) = stack.pop() {
                if members.insert(m) || m == seed {
                    for x in 0..universe {
                        if m & (1 << x) != 0 {
                            stack.push(m & !(1 << x));
                        }
                    }
                }
            }
        }
        if members.len() > 60 {
            continue;
        }
        let mut sorted: Vec<u64> = members.into_iter().collect();
        sorted.sort_unstable();
        let family = SetFamily::new(universe, sorted).unwrap();
        media.push(downward_closed_medium(&family).unwrap());
    }

    let mut cases = 0;
    while cases < 200 {
        let medium = &media[cases % media.len()];
        let tau = medium.token_count();
        let mut lambda = vec![0.0; tau];
        for p in 0..tau / 2 {
            let a: i64 = rng.gen_range(-3..=5);
            let b: i64 = rng.gen_range(-a..=-a + 6);
            lambda[2 * p] = a as f64;
            lambda[2 * p + 1] = b as f64;
        }
        let lambda = LengthFunction::new(medium.tokens(), lambda).unwrap();
        let table = all_pairs_shortest_paths(medium, &lambda).unwrap();
        let brute = brute_distances(medium, &lambda);
        let n = medium.state_count();
        for s in 0..n {
            for q in 0..n {
                if table.distance(s, q) != brute[s][q] {
                    eprintln!(
                        "case {cases}: distance({s},{q}) = {} but oracle says {}",
                        table.distance(s, q),
                        brute[s][q]
                    );
                    passed = false;
                }
            }
        }
        let bound = 4 * (n as u64) * (tau as u64 / 2 + 2 * n as u64);
        if table.scan_work() > bound {
            eprintln!("case {cases}: scan work {} exceeds {bound}", table.scan_work());
            passed = false;
        }
        cases += 1;
    }
    c.finish(passed);
}

#[test]
fn criterion_5_complements() {
    let c = Criterion::new(5, "complementary pairs");
    let mut passed = true;
    for (name, medium) in corpus() {
        let n = medium.state_count();
        if n > 64 {
            continue;
        }
        let pairs = all_complementary_pairs(&medium).unwrap();
        // brute scan: contents pairwise disjoint
        let contents: Vec<_> = (0..n).map(|s| medium.content(s).unwrap()).collect();
        let mut brute = Vec::new();
        for s in 0..n {
            for q in s..n {
                if contents[s].is_disjoint(&contents[q]) {
                    brute.push((s, q));
                }
            }
        }
        if pairs != brute {
            eprintln!("complement mismatch on {name}: {pairs:?} vs {brute:?}");
            passed = false;
        }
        // uniqueness: no state belongs to two pairs
        let mut seen = HashSet::new();
        for &(a, b) in &pairs {
            if !seen.insert(a) || (a != b && !seen.insert(b)) {
                eprintln!("state in two complement pairs on {name}");
                passed = false;
            }
        }
    }
    c.finish(passed);
}

#[test]
fn criterion_6_closed_orientation_search() {
    let c = Criterion::new(6, "closed orientations");
    let mut passed = true;
    for (name, medium) in corpus() {
        let n = medium.state_count();
        if n <= 64 {
            for q in 0..n {
                let o = Orientation::content_of(&medium, q).unwrap();
                let fast = is_closed(&medium, &o);
                let brute = media_core::brute_is_closed(&medium, &o);
                if fast != brute {
                    eprintln!("isClosed disagrees on {name}, content orientation of {q}");
                    passed = false;
                }
                match find_violating_triple(&medium, &o) {
                    Some(triple) => {
                        if fast || !triple.replays(&medium, &o) {
                            eprintln!("bad witness on {name}, orientation of {q}");
                            passed = false;
                        }
                    }
                    None => {
                        if !fast {
                            eprintln!("missing witness on {name}, orientation of {q}");
                            passed = false;
                        }
                    }
                }
            }
        }
        if medium.token_count() <= 16 {
            let all = brute_closed_scan(&medium);
            let found = find_closed_orientation(&medium);
            if all.is_empty() != found.is_none() {
                eprintln!("closed-orientation search disagrees with scan on {name}");
                passed = false;
            }
            if let Some(o) = found {
                if !media_core::brute_is_closed(&medium, &o) {
                    eprintln!("unsound closed orientation on {name}");
                    passed = false;
                }
            }
        }
    }
    if find_closed_orientation(&six_state_medium()).is_some() {
        eprintln!("six-state medium should admit no closed orientation");
        passed = false;
    }
    c.finish(passed);
}

#[test]
fn criterion_7_closed_orientation_lemmas() {
    let c = Criterion::new(7, "closed-orientation lemmas");
    let mut passed = true;
    for (name, medium) in corpus() {
        if medium.token_count() > 16 {
            continue;
        }
        let n = medium.state_count();
        let log2n = if n == 1 { 0 } else { n.ilog2() as usize };
        for o in brute_closed_scan(&medium) {
            for s in 0..n {
                let p = positive_effective_count(&medium, &o, s);
                if p > log2n {
                    eprintln!("{name}: p({s}) = {p} exceeds log2 {n}");
                    passed = false;
                }
                for &(t, next) in medium.transitions_from(s) {
                    if o.is_positive(t)
                        && positive_effective_count(&medium, &o, next) + 1 < p
                    {
                        eprintln!("{name}: p drops by 2 across a positive transition");
                        passed = false;
                    }
                }
            }
        }
    }
    c.finish(passed);
}

#[test]
fn criterion_8_black_box_enumeration() {
    let c = Criterion::new(8, "black-box enumeration");
    let mut passed = true;

    let perm4 = permutation_medium(4).unwrap();
    let boxes: Vec<(&str, media_core::BlackBoxMedium<'_>, usize)> = vec![
        ("perm 4", wrap_explicit(&perm4), 24),
        ("powerset 10", set_family_oracle(10, |_| true, 0), 1024),
        (
            "subsets box",
            set_family_oracle(3, |m| m.count_ones() == 1 || m.count_ones() == 2, 0b001),
            6,
        ),
    ];
    for (name, bb, expected) in &boxes {
        let before = bb.transition_calls();
        let mut stream = bb.enumerate_states();
        let mut seen = HashSet::new();
        for state in stream.by_ref() {
            match state {
                Ok(s) => {
                    if !seen.insert(s) {
                        eprintln!("{name}: duplicate state");
                        passed = false;
                    }
                }
                Err(e) => {
                    eprintln!("{name}: {e}");
                    passed = false;
                }
            }
        }
        if seen.len() != *expected {
            eprintln!("{name}: {} states, expected {expected}", seen.len());
            passed = false;
        }
        if stream.discovered_positive_tokens().len() > bb.token_count() / 2 {
            eprintln!("{name}: positive-token set exceeds tau/2");
            passed = false;
        }
        let calls = bb.transition_calls() - before;
        let bound = 8 * (*expected as u64) * (bb.token_count() as u64).pow(2);
        if calls > bound {
            eprintln!("{name}: {calls} oracle calls exceed {bound}");
            passed = false;
        }
    }
    c.finish(passed);
}

#[test]
fn criterion_9_black_box_reset() {
    let c = Criterion::new(9, "black-box reset sequences");
    let mut passed = true;
    for (name, medium) in corpus() {
        if medium.state_count() > 200 {
            continue;
        }
        let bb = wrap_explicit(&medium);
        let word = black_box_reset_sequence(&bb).unwrap();
        if word.len() != medium.state_count() - 1 {
            eprintln!("{name}: black-box reset word has length {}", word.len());
            passed = false;
        }
        for s in 0..medium.state_count() {
            if medium.apply_message(s, &word) != 0 {
                eprintln!("{name}: black-box reset word fails on state {s}");
                passed = false;
                break;
            }
        }
    }
    c.finish(passed);
}
