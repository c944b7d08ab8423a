pub mod arrow;
pub mod brackets;
pub mod closure;
pub mod combmap;
pub mod diagram;
pub mod error;
pub mod gauss;
pub mod kmap;
pub mod moves;
pub mod parity;
pub mod parity_bracket;
pub mod poly;
pub mod state;
pub mod torus;
pub mod walk;

pub use combmap::{CanonicalCode, CombMap, Dart, FaceSet, RootPolicy};
pub use diagram::{Crossing, Diagram, Mode, Symmetry};
pub use error::{Error, Result};
pub use gauss::{parse_gauss, GaussCode, Pass, Shape, Sign, Token};
pub use parity::{gaussian_parity, is_evenly_intersticed, odd_writhe, ParityAssignment};
pub use poly::{Monomial, Poly, Var};
