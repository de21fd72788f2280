//! Executable model theory of modules over Euclidean rings: positive
//! primitive formulas, finitely presented modules, descending chains and
//! generalized Bass modules.

pub mod bass;
pub mod chains;
pub mod eqprobe;
pub mod error;
pub mod exactalg;
pub mod fpmod;
pub mod mat;
pub mod oracle;
pub mod ppcalc;
pub mod ring;

pub use error::{Error, Result};
pub use exactalg::{Card, Submodule};
pub use fpmod::{FpModule, ModElem, ModMorphism};
pub use mat::Mat;
pub use ppcalc::{PointedModule, PpFormula};
pub use ring::{EuclideanDomain, Integers, Ring, RingDescriptor};
#[cfg(feature = "poly")]
pub use ring::{Poly, PolyFp};
