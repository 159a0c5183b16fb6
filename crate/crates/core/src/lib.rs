//! Fomin–Kirillov algebras E_n and their graph subalgebras E_G in exact
//! arithmetic: normal forms, graded dimensions, the Nichols bilinear form,
//! minimal coset representatives and the closed Hilbert-series formulas.

pub mod coxeter;
pub mod error;
pub mod freealg;
pub mod graphs;
pub mod linalg;
pub mod mcr;
pub mod pairing;
pub mod relations;
pub mod rewrite;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use freealg::{Element, Generator, Permutation, Word};
pub use graphs::Graph;
pub use scalar::ExactScalar;
pub use series::GradedSeries;
