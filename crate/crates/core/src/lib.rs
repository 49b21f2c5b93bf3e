//! Cubical token systems.
//!
//! Finite token systems, the cubical axioms C1–C4 and the medium axioms
//! Ma/Mb, message and state contents, G-systems on cube subgraphs, the
//! cube embedding of a cubical system, and the reversible Markov chain a
//! token distribution induces on the states.

pub mod axioms;
pub mod content;
pub mod dot;
pub mod families;
pub mod format;
pub mod gsystem;
pub mod paths;
pub mod representation;
pub mod stochastic;
pub mod system;

pub use axioms::{
    check_c1, check_c2, check_c3, check_c4, check_ma, check_mb, classify, enumerate_messages,
    Axiom, AxiomVerdict, CheckOptions, Classification, MessageFilter, Method, SystemKind, Witness,
};
pub use system::{
    check_isomorphism, Isomorphism, Message, ReverseTable, StateId, SystemError, TokenId,
    TokenSystem,
};
