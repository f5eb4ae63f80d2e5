//! Exact mod 2 computations for the cohomology of oriented Grassmannians
//! `Gr~_k(R^n)`.
//!
//! The characteristic subring is `C = F2[w_2..w_k] / (q_{n-k+1}, .., q_n)` and
//! the anomalous module `K` is the first Koszul homology of that sequence.

pub mod algebra;
pub mod classes;
pub mod error;
pub mod ext;
pub mod f2;
pub mod koszul;
pub mod module;
pub mod poly;
pub mod presentation;
pub mod syzygy;

pub use error::{Error, Result};
