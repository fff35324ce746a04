//! Exact computational commutative algebra over quotients of polynomial
//! rings: Gröbner bases for ideals and submodules, finitely presented
//! modules, Koszul homology, dimension/height/grade invariants, the
//! regular / weakly proregular / parameter sequence taxonomy, Cohen-Macaulay
//! verdicts and trivial ring extensions `R ⋉ M`.

pub mod cm;
pub mod error;
pub mod ext;
pub mod groebner;
pub mod invariants;
pub mod koszul;
pub mod modpres;
pub mod poly;
pub mod sequences;
pub mod trivial_ext;

pub use error::{Error, Result};
pub use ext::ExtInt;
