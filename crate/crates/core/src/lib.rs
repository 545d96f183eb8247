//! Exact tools for plane Cremona transformations of fixed degree.
//!
//! * [`multiindex`]: H-types and the Noether equations.
//! * [`hudson`]: Hudson's admissibility test, the component census and dimension formulas.
//! * [`polyring`]: exact rationals and homogeneous trivariate forms.
//! * [`homaloidal`]: homaloidal nets, Cremona maps, quadratic factorization and inverses.
//! * [`cli`]: JSON document formats, the census cache and the command implementations.

pub mod cli;
pub mod homaloidal;
pub mod hudson;
pub mod multiindex;
pub mod polyring;

pub use hudson::{census, is_admissible, q_reduce, Admissibility, Census, ComponentRecord, QStep};
pub use multiindex::{enumerate_noether, MultiIndex, NoetherStatus};
pub use polyring::{Form, Mat3, ProjPoint, Rational};
