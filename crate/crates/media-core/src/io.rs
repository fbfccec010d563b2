//! Pure-text file formats: the medium interchange document (JSON), length
//! functions, and orientations.
//!
//! The interchange format has a canonical form — ids dense from 0,
//! transitions sorted by token, only effective transitions listed, pretty
//! printed with a trailing newline — so a load/save round trip is
//! byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::medium::{LengthFunction, Medium, MediumError, Orientation, State, Token, TokenTable};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Medium(#[from] MediumError),
    #[error("token ids must be dense from 0, got {0} at position {1}")]
    NonDenseToken(usize, usize),
    #[error("state ids must be dense from 0, got {0} at position {1}")]
    NonDenseState(usize, usize),
    #[error("orientation sign for token {0} must be \"+\" or \"-\", got {1:?}")]
    BadSign(Token, String),
    #[error("token id {0} out of range")]
    UnknownToken(String),
}

#[derive(Serialize, Deserialize)]
struct TokenRecord {
    id: Token,
    reverse: Token,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct TransitionRecord {
    token: Token,
    to: State,
}

#[derive(Serialize, Deserialize)]
struct StateRecord {
    id: State,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    transitions: Vec<TransitionRecord>,
}

#[derive(Serialize, Deserialize)]
struct MediumDoc {
    tokens: Vec<TokenRecord>,
    states: Vec<StateRecord>,
}

pub fn medium_to_json(medium: &Medium) -> String {
    let tokens = (0..medium.token_count())
        .map(|t| TokenRecord {
            id: t,
            reverse: medium.tokens().reverse(t),
            label: medium.tokens().label(t).map(str::to_owned),
        })
        .collect();
    let states = (0..medium.state_count())
        .map(|s| StateRecord {
            id: s,
            label: medium.state_label(s).map(str::to_owned),
            transitions: medium
                .transitions_from(s)
                .iter()
                .map(|&(token, to)| TransitionRecord { token, to })
                .collect(),
        })
        .collect();
    let doc = MediumDoc { tokens, states };
    let mut text = serde_json::to_string_pretty(&doc).expect("medium document serializes");
    text.push('\n');
    text
}

pub fn medium_from_json(text: &str) -> Result<Medium, FormatError> {
    let doc: MediumDoc = serde_json::from_str(text)?;
    for (i, record) in doc.tokens.iter().enumerate() {
        if record.id != i {
            return Err(FormatError::NonDenseToken(record.id, i));
        }
    }
    for (i, record) in doc.states.iter().enumerate() {
        if record.id != i {
            return Err(FormatError::NonDenseState(record.id, i));
        }
    }
    let reverse: Vec<Token> = doc.tokens.iter().map(|r| r.reverse).collect();
    let labeled = doc.tokens.iter().any(|r| r.label.is_some());
    let tokens = if labeled {
        let labels = doc
            .tokens
            .iter()
            .enumerate()
            .map(|(i, r)| r.label.clone().unwrap_or_else(|| i.to_string()))
            .collect();
        TokenTable::with_labels(reverse, labels)?
    } else {
        TokenTable::new(reverse)?
    };
    let adjacency = doc
        .states
        .iter()
        .map(|s| s.transitions.iter().map(|t| (t.token, t.to)).collect())
        .collect();
    let state_labels = if doc.states.iter().any(|s| s.label.is_some()) {
        Some(
            doc.states
                .iter()
                .enumerate()
                .map(|(i, s)| s.label.clone().unwrap_or_else(|| i.to_string()))
                .collect(),
        )
    } else {
        None
    };
    Ok(Medium::new(tokens, adjacency, state_labels)?)
}

/// Length-function file: JSON map from token id to number. Absent ids default
/// to 1.0; the pair constraint lambda(t) + lambda(~t) >= 0 is enforced
/// exactly.
pub fn lengths_from_json(text: &str, tokens: &TokenTable) -> Result<LengthFunction, FormatError> {
    let map: BTreeMap<String, f64> = serde_json::from_str(text)?;
    let mut lambda = vec![1.0; tokens.count()];
    for (key, value) in map {
        let t: Token = key
            .parse()
            .map_err(|_| FormatError::UnknownToken(key.clone()))?;
        if t >= tokens.count() {
            return Err(FormatError::UnknownToken(key));
        }
        lambda[t] = value;
    }
    Ok(LengthFunction::new(tokens, lambda)?)
}

pub fn lengths_to_json(lambda: &LengthFunction, tokens: &TokenTable) -> String {
    let map: BTreeMap<String, f64> = (0..tokens.count())
        .map(|t| (t.to_string(), lambda.get(t)))
        .collect();
    let mut text = serde_json::to_string_pretty(&map).expect("length map serializes");
    text.push('\n');
    text
}

/// Orientation file: JSON map from token id to "+" or "-" (U+2212 minus is
/// accepted too). Every token must be signed, one positive per pair.
pub fn orientation_from_json(
    text: &str,
    tokens: &TokenTable,
) -> Result<Orientation, FormatError> {
    let map: BTreeMap<String, String> = serde_json::from_str(text)?;
    let mut positive = vec![false; tokens.count()];
    let mut signed = vec![false; tokens.count()];
    for (key, sign) in map {
        let t: Token = key
            .parse()
            .map_err(|_| FormatError::UnknownToken(key.clone()))?;
        if t >= tokens.count() {
            return Err(FormatError::UnknownToken(key));
        }
        positive[t] = match sign.as_str() {
            "+" => true,
            "-" | "\u{2212}" => false,
            _ => return Err(FormatError::BadSign(t, sign)),
        };
        signed[t] = true;
    }
    if let Some(t) = (0..tokens.count()).find(|&t| !signed[t]) {
        return Err(FormatError::BadSign(t, String::new()));
    }
    Ok(Orientation::new(tokens, positive)?)
}

pub fn orientation_to_json(orientation: &Orientation, tokens: &TokenTable) -> String {
    let map: BTreeMap<String, &str> = (0..tokens.count())
        .map(|t| {
            (
                t.to_string(),
                if orientation.is_positive(t) { "+" } else { "-" },
            )
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&map).expect("orientation map serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{from_well_graded_family, SetFamily};
    use crate::generators::permutation_medium;

    #[test]
    fn round_trip_is_byte_identical() {
        let f = SetFamily::new(3, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110]).unwrap();
        for m in [from_well_graded_family(&f).unwrap(), permutation_medium(3).unwrap()] {
            let text = medium_to_json(&m);
            let loaded = medium_from_json(&text).unwrap();
            assert_eq!(medium_to_json(&loaded), text);
            assert_eq!(loaded.state_count(), m.state_count());
            assert_eq!(loaded.token_count(), m.token_count());
        }
    }

    #[test]
    fn rejects_non_involutive_reverse() {
        let text = r#"{"tokens":[{"id":0,"reverse":0},{"id":1,"reverse":0}],
                       "states":[{"id":0,"transitions":[]}]}"#;
        assert!(medium_from_json(text).is_err());
    }

    #[test]
    fn rejects_sparse_ids() {
        let text = r#"{"tokens":[{"id":1,"reverse":0},{"id":0,"reverse":1}],
                       "states":[{"id":0,"transitions":[]}]}"#;
        assert!(matches!(
            medium_from_json(text),
            Err(FormatError::NonDenseToken(1, 0))
        ));
    }

    #[test]
    fn rejects_out_of_range_transition() {
        let text = r#"{"tokens":[{"id":0,"reverse":1},{"id":1,"reverse":0}],
                       "states":[{"id":0,"transitions":[{"token":0,"to":7}]}]}"#;
        assert!(medium_from_json(text).is_err());
    }

    #[test]
    fn lengths_default_and_reject() {
        let m = permutation_medium(3).unwrap();
        let lambda = lengths_from_json(r#"{"0": 2.5}"#, m.tokens()).unwrap();
        assert_eq!(lambda.get(0), 2.5);
        assert_eq!(lambda.get(2), 1.0);
        // lambda(t) + lambda(~t) = -0.5 < 0
        assert!(lengths_from_json(r#"{"0": -1.5}"#, m.tokens()).is_err());
        assert!(lengths_from_json(r#"{"99": 1.0}"#, m.tokens()).is_err());
        let text = lengths_to_json(&lambda, m.tokens());
        let reloaded = lengths_from_json(&text, m.tokens()).unwrap();
        assert_eq!(reloaded.get(0), 2.5);
    }

    #[test]
    fn orientation_signs() {
        let f = SetFamily::new(1, vec![0b0, 0b1]).unwrap();
        let m = from_well_graded_family(&f).unwrap();
        let o = orientation_from_json(r#"{"0": "+", "1": "−"}"#, m.tokens()).unwrap();
        assert!(o.is_positive(0));
        assert!(!o.is_positive(1));
        // same sign on a pair
        assert!(orientation_from_json(r#"{"0": "+", "1": "+"}"#, m.tokens()).is_err());
        // missing token
        assert!(orientation_from_json(r#"{"0": "+"}"#, m.tokens()).is_err());
        // junk sign
        assert!(orientation_from_json(r#"{"0": "x", "1": "-"}"#, m.tokens()).is_err());
        let text = orientation_to_json(&o, m.tokens());
        let reloaded = orientation_from_json(&text, m.tokens()).unwrap();
        assert!(reloaded.is_positive(0));
    }
}
