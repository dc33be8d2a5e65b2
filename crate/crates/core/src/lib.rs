//! Group codes over finite alphabets: Hamming-metric isometries, direct-sum
//! decomposition into indecomposable components, isomorphism testing,
//! automorphism groups and cyclic structure.
//!
//! Coordinates are 0-based in the library API and 1-based in JSON and CLI
//! output.

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod code;
pub mod cyclic;
pub mod decompose;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod isometry;
pub mod isomorphy;
pub mod json;
pub mod report;
pub mod selftest;

pub use classify::{classify, classify_group, Classification};
pub use code::{hamming_distance, weight, Code, GroupCode, ParameterReport, Word};
pub use decompose::{decompose, decompose_group, decompose_with, is_decomposable, split_test, Category, Certificate, Decomposition};
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup};
pub use isometry::{Configuration, Equivalence, Isometry};
pub use isomorphy::{aut_group, code_isomorphic, gc_isomorphic, SearchOptions};
