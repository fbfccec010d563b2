//! Full axiom verification for medium values.
//!
//! Direct quantification over the medium axioms ranges over unbounded message
//! sets, so the verifier instead checks the finite characterization: after the
//! structural checks pass, it orients the token pairs, computes every state's
//! positive content, and confirms that the positive contents form a
//! well-graded family whose medium is isomorphic to the input. A transition
//! system passes exactly when it is a medium.

use crate::family::{isomorphism_witness, positive_content_family, FamilyError};
use crate::medium::{Medium, MediumError, Orientation, State, Token};

/// One violated sub-check, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A token with no effective transition anywhere; its reverse is then not
    /// unique, so axiom 1 fails vacuously.
    TokenNeverEffective { token: Token },
    /// A listed transition whose reverse transition is missing.
    ReverseClosureBroken {
        state: State,
        token: Token,
        target: State,
    },
    /// A state unreachable from state 0 in the effective-transition graph.
    Disconnected { state: State },
    /// A state whose incoming straight-path tokens do not pick exactly one
    /// member of some reverse pair.
    ContentPartitionBroken {
        state: State,
        token: Token,
        reverse: Token,
    },
    /// Two distinct states with identical contents.
    DuplicateContent { first: State, second: State },
    /// The positive-content family is not well-graded.
    NotWellGraded { first: State, second: State },
    /// A transition disagreeing with the medium rebuilt from the
    /// positive-content family.
    NotIsomorphic { state: State, token: Token },
    /// Content computation failed outright (only on badly broken inputs).
    ContentUncomputable { state: State, detail: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::TokenNeverEffective { token } => {
                write!(f, "token {token} is effective for no state")
            }
            Violation::ReverseClosureBroken {
                state,
                token,
                target,
            } => write!(
                f,
                "transition ({state}, {token}) -> {target} has no reverse transition"
            ),
            Violation::Disconnected { state } => {
                write!(f, "state {state} is unreachable from state 0")
            }
            Violation::ContentPartitionBroken {
                state,
                token,
                reverse,
            } => write!(
                f,
                "content of state {state} does not contain exactly one of the pair ({token}, {reverse})"
            ),
            Violation::DuplicateContent { first, second } => {
                write!(f, "states {first} and {second} have identical contents")
            }
            Violation::NotWellGraded { first, second } => write!(
                f,
                "positive contents of states {first} and {second} violate well-gradedness"
            ),
            Violation::NotIsomorphic { state, token } => write!(
                f,
                "transition ({state}, {token}) disagrees with the positive-content family medium"
            ),
            Violation::ContentUncomputable { state, detail } => {
                write!(f, "content of state {state} is uncomputable: {detail}")
            }
        }
    }
}

/// Result of [`verify`]: passes when no violation was found.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that a structurally valid medium value satisfies the medium axioms.
pub fn verify(medium: &Medium) -> VerifyReport {
    let mut violations = Vec::new();
    let n = medium.state_count();
    let tau = medium.token_count();

    // every token effective somewhere
    let mut effective_somewhere = vec![false; tau];
    for s in 0..n {
        for &(t, _) in medium.transitions_from(s) {
            effective_somewhere[t] = true;
        }
    }
    for t in 0..tau {
        if !effective_somewhere[t] {
            violations.push(Violation::TokenNeverEffective { token: t });
        }
    }

    // reverse closure: (s, t, q) listed requires (q, ~t, s) listed
    for s in 0..n {
        for &(t, q) in medium.transitions_from(s) {
            if medium.apply(q, medium.tokens().reverse(t)) != s {
                violations.push(Violation::ReverseClosureBroken {
                    state: s,
                    token: t,
                    target: q,
                });
            }
        }
    }

    // connectivity of the effective-transition graph
    let dist = medium.bfs_distances(0);
    for s in 0..n {
        if dist[s] == usize::MAX {
            violations.push(Violation::Disconnected { state: s });
        }
    }

    if !violations.is_empty() {
        return VerifyReport { violations };
    }

    // axiom check through the well-graded family reconstruction
    let orientation = Orientation::lowest_index(medium.tokens());
    let (family, positives) = match positive_content_family(medium, &orientation) {
        Ok(pair) => pair,
        Err(FamilyError::Medium(MediumError::ContentPartition {
            state,
            token,
            reverse,
        })) => {
            violations.push(Violation::ContentPartitionBroken {
                state,
                token,
                reverse,
            });
            return VerifyReport { violations };
        }
        Err(FamilyError::DuplicateMember(a, b)) => {
            violations.push(Violation::DuplicateContent {
                first: a,
                second: b,
            });
            return VerifyReport { violations };
        }
        Err(err) => {
            violations.push(Violation::ContentUncomputable {
                state: 0,
                detail: err.to_string(),
            });
            return VerifyReport { violations };
        }
    };

    let mut sorted: Vec<(u64, usize)> = family.members().iter().copied().zip(0..).collect();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            violations.push(Violation::DuplicateContent {
                first: w[0].1.min(w[1].1),
                second: w[0].1.max(w[1].1),
            });
        }
    }
    if !violations.is_empty() {
        return VerifyReport { violations };
    }

    if let Some((a, b)) = family.well_graded_witness() {
        violations.push(Violation::NotWellGraded {
            first: a,
            second: b,
        });
        return VerifyReport { violations };
    }

    if let Some((state, token)) = isomorphism_witness(medium, &orientation, &family, &positives) {
        violations.push(Violation::NotIsomorphic { state, token });
    }

    VerifyReport { violations }
}
