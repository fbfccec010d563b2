//! Set families and the correspondence between well-graded families and
//! oriented media.
//!
//! A family is well-graded when any two members are joined by a chain of
//! single-element changes whose length equals the size of their symmetric
//! difference. Such a family defines a medium whose states are the members
//! and whose tokens insert or delete one element; conversely the positive
//! contents of any oriented medium form a well-graded family.

use crate::medium::{Medium, MediumError, Orientation, State, Token, TokenTable};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("universe of {0} elements exceeds the 64-element bitset limit")]
    UniverseTooLarge(usize),
    #[error("member {0} uses elements outside the universe")]
    MemberOutOfRange(usize),
    #[error("duplicate members at indices {0} and {1}")]
    DuplicateMember(usize, usize),
    #[error("element {0} belongs to no member; the universe must be the union of the members")]
    ElementOutsideUnion(usize),
    #[error("element {0} belongs to every member, so its tokens would never be effective")]
    ElementInAllMembers(usize),
    #[error("family is empty")]
    Empty,
    #[error("family is not well-graded: members {0} and {1} have no single-change chain of length |symmetric difference|")]
    NotWellGraded(usize, usize),
    #[error(transparent)]
    Medium(#[from] MediumError),
}

/// A family of distinct subsets of a dense universe, stored as 64-bit masks.
/// The universe is exactly the union of the members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    members: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl SetFamily {
    pub fn new(universe: usize, members: Vec<u64>) -> Result<Self, FamilyError> {
        if universe > 64 {
            return Err(FamilyError::UniverseTooLarge(universe));
        }
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        let full: u64 = if universe == 64 {
            u64::MAX
        } else {
            (1u64 << universe) - 1
        };
        let mut union = 0u64;
        for (i, &m) in members.iter().enumerate() {
            if m & !full != 0 {
                return Err(FamilyError::MemberOutOfRange(i));
            }
            union |= m;
        }
        if union != full {
            let x = (!union & full).trailing_zeros() as usize;
            return Err(FamilyError::ElementOutsideUnion(x));
        }
        let mut sorted: Vec<(u64, usize)> = members.iter().copied().zip(0..).collect();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(FamilyError::DuplicateMember(w[0].1, w[1].1));
            }
        }
        Ok(SetFamily {
            universe,
            members,
            labels: None,
        })
    }

    /// Attaches element names, used for token and state labels.
    pub fn with_element_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.universe);
        self.labels = Some(labels);
        self
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: u64) -> bool {
        self.members.contains(&set)
    }

    pub fn element_label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Renders a member as a set literal over the element labels.
    pub fn set_label(&self, set: u64) -> String {
        let names: Vec<String> = (0..self.universe)
            .filter(|&x| set >> x & 1 == 1)
            .map(|x| self.element_label(x))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// True when every pair of members is joined through the family by a
    /// chain of single-element changes of length equal to their symmetric
    /// difference. Checked by one BFS per member over the |△| = 1 adjacency.
    pub fn is_well_graded(&self) -> bool {
        self.well_graded_witness().is_none()
    }

    /// The first pair of member indices violating well-gradedness, if any.
    pub fn well_graded_witness(&self) -> Option<(usize, usize)> {
        let k = self.members.len();
        let adjacency: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| (self.members[i] ^ self.members[j]).count_ones() == 1)
                    .collect()
            })
            .collect();
        for start in 0..k {
            let mut dist = vec![usize::MAX; k];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &j in &adjacency[i] {
                    if dist[j] == usize::MAX {
                        dist[j] = dist[i] + 1;
                        queue.push_back(j);
                    }
                }
            }
            for other in 0..k {
                let hamming = (self.members[start] ^ self.members[other]).count_ones() as usize;
                if dist[other] != hamming {
                    return Some((start.min(other), start.max(other)));
                }
            }
        }
        None
    }
}

/// Builds the medium of a well-graded family: states are the members, and
/// each element `x` contributes an insert token `i_x` (index `2x`) and a
/// delete token `d_x` (index `2x + 1`), mutual reverses.
///
/// Rejects families that are not well-graded, and families with an element
/// present in every member (its tokens would be effective nowhere, which no
/// medium allows).
pub fn from_well_graded_family(family: &SetFamily) -> Result<Medium, FamilyError> {
    if let Some((a, b)) = family.well_graded_witness() {
        return Err(FamilyError::NotWellGraded(a, b));
    }
    let mut intersection = u64::MAX;
    for &m in family.members() {
        intersection &= m;
    }
    if family.universe() > 0 && intersection != 0 {
        return Err(FamilyError::ElementInAllMembers(
            intersection.trailing_zeros() as usize,
        ));
    }

    let x = family.universe();
    let labels = (0..2 * x)
        .map(|t| {
            let (kind, elem) = if t % 2 == 0 { ("i", t / 2) } else { ("d", t / 2) };
            format!("{}_{}", kind, family.element_label(elem))
        })
        .collect();
    let reverse = (0..2 * x).map(|t| t ^ 1).collect();
    let tokens = TokenTable::with_labels(reverse, labels)?;

    let index_of = |set: u64| family.members().iter().position(|&m| m == set);
    let mut adjacency = Vec::with_capacity(family.len());
    for &member in family.members() {
        let mut list = Vec::new();
        for elem in 0..x {
            let bit = 1u64 << elem;
            if member & bit == 0 {
                if let Some(q) = index_of(member | bit) {
                    list.push((2 * elem, q));
                }
            } else if let Some(q) = index_of(member & !bit) {
                list.push((2 * elem + 1, q));
            }
        }
        adjacency.push(list);
    }
    let state_labels = family
        .members()
        .iter()
        .map(|&m| family.set_label(m))
        .collect();
    Ok(Medium::new(tokens, adjacency, Some(state_labels))?)
}

/// The family of positive contents of all states under an orientation,
/// together with the positive token represented by each universe element.
///
/// By the correspondence between oriented media and well-graded families the
/// result is always well-graded, and rebuilding a medium from it with
/// [`from_well_graded_family`] gives back a medium isomorphic to the input.
pub fn positive_content_family(
    medium: &Medium,
    orientation: &Orientation,
) -> Result<(SetFamily, Vec<Token>), FamilyError> {
    let positives = orientation.positive_tokens();
    if positives.len() > 64 {
        return Err(FamilyError::UniverseTooLarge(positives.len()));
    }
    let mut members = Vec::with_capacity(medium.state_count());
    for q in 0..medium.state_count() {
        let content = medium.content(q)?;
        let mut mask = 0u64;
        for (elem, &t) in positives.iter().enumerate() {
            if content.contains(t) {
                mask |= 1 << elem;
            }
        }
        members.push(mask);
    }
    let labels = positives
        .iter()
        .map(|&t| {
            medium
                .tokens()
                .label(t)
                .map(str::to_owned)
                .unwrap_or_else(|| t.to_string())
        })
        .collect();
    let family = SetFamily::new(positives.len(), members)?.with_element_labels(labels);
    Ok((family, positives))
}

/// Checks that `medium` is isomorphic (state by state, token by token) to the
/// medium of the positive-content family under `orientation`, with state `s`
/// mapped to its positive content and positive token `p_x` mapped to `i_x`.
/// Returns a violating `(state, token)` witness if not.
pub fn isomorphism_witness(
    medium: &Medium,
    orientation: &Orientation,
    family: &SetFamily,
    positives: &[Token],
) -> Option<(State, Token)> {
    let mut element_of = vec![usize::MAX; medium.token_count()];
    for (elem, &t) in positives.iter().enumerate() {
        element_of[t] = elem;
        element_of[medium.tokens().reverse(t)] = elem;
    }
    for s in 0..medium.state_count() {
        let set = family.members()[s];
        for t in 0..medium.token_count() {
            let elem = element_of[t];
            let bit = 1u64 << elem;
            // where the family medium would send this state
            let image = if orientation.is_positive(t) {
                if set & bit == 0 && family.contains(set | bit) {
                    set | bit
                } else {
                    set
                }
            } else if set & bit != 0 && family.contains(set & !bit) {
                set & !bit
            } else {
                set
            };
            let actual = family.members()[medium.apply(s, t)];
            if actual != image {
                return Some((s, t));
            }
        }
    }
    None
}
