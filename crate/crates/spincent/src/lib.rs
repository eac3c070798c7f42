//! Exact computations in centralizer algebras of Pin(N) / Spin(N) acting on
//! spinor (x) vector tensor spaces.

pub mod algebra;
pub mod characters;
pub mod clifford;
pub mod diagrams;
pub mod exterior;
pub mod linalg;
pub mod ops;
pub mod phi;
pub mod relations;
pub mod scalars;
pub mod verify;
