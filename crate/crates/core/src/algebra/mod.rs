//! Arithmetic of the Clifford algebra of signature (4,1) with basis
//! `e1, e2, e3, e+, e-` and its even subalgebra.

mod blade;
mod even;
mod json;
mod multivector;

pub use blade::{Blade, SignedBlade, BLADES, DIM, METRIC};
pub use even::{EvenMultivector, BIVECTOR_SLOTS, EVEN_DIM, QUADVECTOR_SLOTS};
pub use multivector::Multivector;
