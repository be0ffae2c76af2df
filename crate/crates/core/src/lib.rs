pub mod corpus;
pub mod error;
pub mod hankel;
pub mod intertwiners;
pub mod kfinite;
pub mod profile;
pub mod quadrature;
pub mod representation;
pub mod special;
pub mod suite;

pub use error::{Error, Result};
pub use intertwiners::InducedFunction;
pub use kfinite::BasisVector;
pub use profile::{parse_spec, Atom, Grid, Profile, SampledFunction, Side};
pub use quadrature::{Decay, QuadratureResult};
pub use representation::{GroupElement, KirillovSign, LieElement};
pub use special::ComplexOrder;
