//! Hurwitz equivalence of quasipositive factorizations in the 3-strand braid
//! group.
//!
//! Braids are kept in the band-generator presentation with generators
//! `σ0, σ1, σ2` and `δ = σ2σ1 = σ1σ0 = σ0σ2`, in the normal form
//! `U·δ^(-p)` with `U` a positive word free of δ-pairs. A factorization of
//! `X` into conjugates of `σ1` is mapped to a hatted word; two
//! factorizations are equivalent exactly when their words reach one
//! component of a finite graph built from `X`.
//!
//! ```
//! use hurwitz3::{components_g0, SignedWord};
//!
//! let x = "s2 s0 s1 s1 s1- s2-".parse::<SignedWord>().unwrap().evaluate();
//! assert_eq!(x.to_string(), "s2 s0 s1 s1 | 1");
//! let g = components_g0(&x).unwrap();
//! assert_eq!((g.vertices.len(), g.len()), (2, 1));
//! ```

pub mod braid;
pub mod error;
pub mod graph;
pub mod hatted;
pub mod hurwitz;
pub mod quotient;
pub mod suite;
mod text;
pub mod union_find;

pub use braid::{
    evaluate, is_delta_pair, normalize_positive, positive_words_equal_to, Atom, BraidElement, PlainWord, SignedAtom,
    SignedWord,
};
pub use error::{Error, ParseError, Result};
pub use graph::{
    components_g0, decide_equivalence, descend, edge_h12, edge_h3, enumerate_level, enumerate_v0, neighbors_h3,
    neighbors_v, Components, Decision, Edge, EdgeKind, EquivalenceReport, LevelGraph, Verdict, Vertex, Witness,
};
pub use hatted::{
    f, matches, parenthesize, HattedLetter, HattedSignedWord, HattedWord, MatchingPair, SignedHattedLetter,
};
pub use hurwitz::{
    apply_moves, bracket, edge_to_moves, factorization_to_vertex, orbit_bfs, orbit_reaches, parse_factorization,
    sigma_move, validate, validate_against, values_equal, Factor, Factorization, FactorizationFile, Invalid, Move,
    MoveSequence, Orbit, DEFAULT_BUDGET,
};
