//! Reduced-word recognition in Coxeter groups via the root automaton, the
//! affine graph catalog with intervening-neighbours machinery, and the
//! roots-and-chips polygon game.
//!
//! The pieces fit together like this: [`graph`] holds the Coxeter graph and
//! file formats; [`field`] provides exact arithmetic for reflection weights;
//! [`root`] enumerates the finitely many small roots; [`recognizer`] decides
//! reducedness by token simulation over small roots, with [`dfa`] as the
//! materialized automaton and [`oracle`] as an independent matrix-based
//! cross-check; [`speyer`] samples random intervening-neighbours words and
//! asserts they are reduced; [`game`] plays the chip-firing view of the same
//! dynamics.

pub mod catalog;
pub mod dfa;
pub mod field;
pub mod game;
pub mod graph;
pub mod oracle;
pub mod recognizer;
pub mod root;
pub mod speyer;
pub mod witness;
pub mod word;

pub use catalog::{catalog, CatalogEntry, Family};
pub use field::{weight, ApproxValue, FieldValue, Sign, Value};
pub use graph::{CoxeterGraph, Edge, EdgeLabel, GraphError, Vertex};
pub use recognizer::{
    is_reduced, reduce_fully, run_first_letter_path, PathTrace, Recognizer, ReducedCheck,
    ReductionWitness,
};
pub use root::{
    enumerate_small_roots, is_small, reflect, side, unit_root, Root, Side, SmallRootSet,
};
pub use speyer::{check_speyer_property, SpeyerParams, SpeyerReport};
pub use witness::{find_affine_witness, AffineWitness};
pub use word::{bicoloured_word, has_intervening_neighbours, intervening_violation, InViolation, Word};
