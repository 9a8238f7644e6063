//! Proper rainbow saturation: graphs, proper edge colourings, the `F*(H)`
//! membership search, saturation predicates and the known constructions.

pub mod cache;
pub mod canon;
pub mod clock;
pub mod colour;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod frontier;
pub mod graph;
pub mod graph6;
pub mod independence;
pub mod kt;
pub mod named;
pub mod report;
pub mod reproduce;
pub mod saturation;
pub mod search;
pub mod subgraph;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use colour::{greedy_proper, has_rainbow, is_proper, Certificate, EdgeColouring};
pub use error::{Error, Result};
pub use graph::Graph;
pub use search::{
    decide_membership, find_rainbow_free_colouring, sample_membership, Budget, MembershipVerdict, Mode, Prune,
    Status,
};
