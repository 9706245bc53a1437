//! Simplicial complexes with certified checks for collapsibility, shellability,
//! vertex decomposability and star decompositions, and a pipeline that shells
//! the second barycentric subdivision of a complex whose links are all
//! collapsible in a controlled way.

pub mod collapse;
pub mod complex;
pub mod corpus;
pub mod decomp;
pub mod error;
pub mod face;
pub mod homology;
pub mod pipeline;
pub mod subdivision;

pub use complex::{Complex, Dim};
pub use error::{Error, Result};
pub use face::{Face, Vertex};
pub use subdivision::{sd, SdComplex};
