//! A laboratory for self-reference: a tiny Pascal-like language with a
//! fuel-bounded interpreter that certifies divergence by cycle detection,
//! a fixed-point classifier for self-referential boolean equations, and a
//! refuter that builds diagonal programs against any halting decider and
//! shows, by running them, that the decider answered wrongly.

pub mod cli;
pub mod corpus;
pub mod demo;
pub mod diagonal;
pub mod interp;
pub mod lang;
pub mod refuter;
pub mod spec_logic;
