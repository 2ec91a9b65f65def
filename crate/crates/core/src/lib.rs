//! Exact symbolic engine for cluster mutations, q-characters and Baxter
//! relations of quantum affine Borel categories, on finite windows.

pub mod algebra;
pub mod baxter;
pub mod cartan;
pub mod cluster;
pub mod error;
pub mod fixtures;
pub mod lweight;
pub mod qchar;
pub mod quiver;
pub mod seedfile;
pub mod sl2;

pub use algebra::monomial::Monomial;
pub use algebra::poly::{Coefficient, LPoly, Poly};
pub use algebra::var::{Family, VarKey};
pub use algebra::weight::Weight;
pub use error::{Error, Result};
pub use cartan::{a_monomial, varpi, CartanData, CartanKind};
pub use quiver::{Quiver, Vertex};
pub use cluster::{initial_seed, is_laurent, mutate, mutate_seq, Seed};
pub use lweight::{LWeightMono, Sign};
pub use qchar::QCharacter;
pub use fixtures::{run_all, run_fixture, Status, VerificationReport};
