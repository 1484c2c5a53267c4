//! Exact computational kernels for Legendrian knot invariants: front diagrams,
//! Chekanov-Eliashberg DGAs, augmentation varieties over finite fields,
//! linearized homology, A-infinity minimal models, and Laurent-polynomial
//! torus-obstruction experiments.

pub mod ainfinity;
pub mod augvar;
pub mod dga;
pub mod diagram;
pub mod field;
pub mod linalg;
pub mod linearized;
pub mod ncpoly;
pub mod obstruction;
pub mod suite;
pub mod sweep;
pub mod twist;
