//! Programs and equation systems bundled with the binary.

pub const DEMO_TANGLE: &str = include_str!("../assets/demo.tangle");
pub const DECIDERS_TANGLE: &str = include_str!("../assets/deciders.tangle");

pub const LIAR_EQN: &str = include_str!("../assets/liar.eqn");
pub const TRUTHTELLER_EQN: &str = include_str!("../assets/truthteller.eqn");
pub const BG_EQN: &str = include_str!("../assets/bg.eqn");
pub const H_EQN: &str = include_str!("../assets/h.eqn");
pub const GOEDEL_EQN: &str = include_str!("../assets/goedel.eqn");
pub const CONST_EQN: &str = include_str!("../assets/const.eqn");

/// Deciders in `deciders.tangle` that return a boolean on every input.
pub const TOTAL_DECIDERS: &[&str] = &[
    "alwaysTrue",
    "alwaysFalse",
    "byName",
    "notGo",
    "nameIsStop",
    "sameArgs",
    "emptyInput",
    "evenSource",
    "looksLikeProcedure",
    "shortSource",
    "contrarian",
    "spotsDiag",
];

/// Deciders that loop or fault instead of answering.
pub const NON_TOTAL_DECIDERS: &[&str] = &["halts", "looper", "faulty", "forgetful"];

/// A decider whose recursion outruns any fuel budget.
pub const UNRESOLVED_DECIDERS: &[&str] = &["deep"];
