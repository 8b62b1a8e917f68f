//! Exact computations with persistence modules: barcodes of filtered chain
//! complexes, bottleneck distances, tensor products and Tor, image and
//! kernel persistence of operators, `Z/p`-equivariant eigenspace barcodes,
//! and quantum Betti numbers of finite quantum homology rings.

pub mod barcode;
pub mod distances;
pub mod equivariant;
pub mod error;
pub mod exactnum;
pub mod filtered_complex;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod quantum;
pub mod svg;
pub mod tabulated;
pub mod tensor;

pub use error::{Error, Result};
