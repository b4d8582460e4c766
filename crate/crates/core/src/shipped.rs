//! Example inputs bundled with the library.

use crate::automata::RegisterAutomaton;
use crate::nomrep::FinPresentation;

pub const FIRST_REPEAT_JSON: &str = include_str!("../data/first_repeat.json");
pub const INCREASING_JSON: &str = include_str!("../data/increasing.json");
pub const PAIRS_JSON: &str = include_str!("../data/pairs.json");

fn load(text: &str) -> RegisterAutomaton {
    let v = serde_json::from_str(text).expect("bundled JSON parses");
    RegisterAutomaton::from_json(&v).expect("bundled automaton is well-formed")
}

/// Accepts the words in which some later letter equals the first one.
pub fn first_repeat() -> RegisterAutomaton {
    load(FIRST_REPEAT_JSON)
}

/// Accepts the nonempty strictly increasing words over the rationals.
pub fn increasing() -> RegisterAutomaton {
    load(INCREASING_JSON)
}

pub fn pairs() -> FinPresentation {
    let v = serde_json::from_str(PAIRS_JSON).expect("bundled JSON parses");
    FinPresentation::from_json(&v).expect("bundled presentation is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_pairs_is_the_unordered_pairs_presentation() {
        assert_eq!(pairs(), FinPresentation::unordered_pairs());
    }
}
