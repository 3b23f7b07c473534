//! Decision procedures for the Brinkmann problems over free-group
//! endomorphisms, together with the algorithmic substrate they run on:
//! exact free-group word algebra, Stallings automata for finitely generated
//! subgroups, preimage and kernel-coset machinery, and a bounded orbit
//! oracle with sound cycle detection.
//!
//! Given `u, v ∈ F_n` and an endomorphism `φ` (as the tuple of generator
//! images), [`brp`] decides whether `uφ^k = v` for some `k ≥ 0` and
//! [`brcp`] decides the same up to conjugacy. Answers are tri-state: yes
//! with a replayable witness, no with a certificate, or an honest unknown
//! when the configured search budget runs out on an aperiodic orbit.
//!
//! ```
//! use brinkmann_core::{brp, parse_endomorphism, parse_word, Decision, OracleConfig};
//!
//! let phi = parse_endomorphism("a=ab;b=b", 2).unwrap();
//! let u = parse_word("a", 2).unwrap();
//! let v = parse_word("abb", 2).unwrap();
//! match brp(&u, &v, &phi, &OracleConfig::default()) {
//!     Decision::Yes { k, .. } => assert_eq!(k, 2),
//!     other => panic!("expected a hit, got {other:?}"),
//! }
//! ```

#![forbid(unsafe_code)]

mod decide;
mod endo;
mod error;
mod oracle;
mod stallings;
mod text;
mod union_find;
mod word;

pub use decide::{brcp, brcp_with_details, brp, consistency_id, BrcpDetails, Decision, NoReason};
pub use endo::Endomorphism;
pub use error::{Error, Result};
pub use oracle::{
    conj_into_coset, conj_into_coset_witness, detect_orbit_cycle, oracle_conj_coset,
    oracle_conj_coset_traced, oracle_coset_membership, oracle_coset_membership_traced,
    orbit_trace, CycleMode, OracleAnswer, OracleConfig, OrbitTrace, TraceStep,
};
pub use stallings::{preimage, BasisEdge, ExpressionTable, StallingsAutomaton, TreeLink};
pub use text::{
    parse_endomorphism, parse_word, render_expression, render_letter, render_word,
};
pub use word::{CyclicWord, Letter, Word};
