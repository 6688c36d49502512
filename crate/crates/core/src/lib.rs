//! Exact verification engine for the intermediate Jacobian of Kummer-type
//! hyperkähler manifolds: cup products on generalized Kummer varieties, the
//! map from third to second cohomology, weight-one Hodge structures,
//! polarization types and Weil-type structure.

pub mod divisors;
pub mod error;
pub mod exterior;
pub mod field;
pub mod hodge;
pub mod kummer;
pub mod lehn_sorger;
pub mod linalg;
pub mod perm;
pub mod report;
pub mod ring_checks;
pub mod skew;
pub mod smith;
pub mod surface;
pub mod weil;

pub use error::{Error, Result};
pub use exterior::{iota, iota_inv, Ambient, ExtElement};
pub use field::{QuadExt, Rational, Scalar};
pub use hodge::ThetaTriple;
pub use kummer::{H2Class, H3Class};
pub use lehn_sorger::LSElement;
pub use perm::Perm;
pub use skew::SkewMap4;
pub use surface::{CohA, Tensor};
