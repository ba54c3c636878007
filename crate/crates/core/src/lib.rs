pub mod ball;
pub mod bounds;
pub mod embeddings;
mod error;
pub mod exact;
pub mod field;
pub mod json;
pub mod solver;
pub mod twist;

pub use ball::{ComplexBall, Interval};
pub use bounds::KappaConfig;
pub use embeddings::{isolate_roots, EmbeddingSet, Precision};
pub use error::{Error, Result};
pub use exact::{IntPoly, Integer, RatPoly, Rational};
pub use field::{Field, FieldElement, NumberField};
pub use solver::{enumerate, SearchBox, SolutionSet};
pub use twist::{BinaryForm, SolutionTriple, TwistFamily};
