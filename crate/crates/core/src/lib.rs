//! Exact computations around counts of singular plane curves.
//!
//! * [`germ`]: Milnor and Tjurina numbers, determinacy windows and scheme
//!   lengths of curve germs, all by exact row reduction in jet spaces.
//! * [`catalog`]: named singularity types with verified invariants.
//! * [`series`]: truncated generating series with coefficients polynomial in
//!   the Chern numbers `(L^2, L.K, c1^2, c2)`.
//! * [`severi`]: Severi degrees of the plane and the quadric surface, with
//!   independent floor-diagram and pencil-discriminant oracles.
//! * [`fit`]: exact fitting of universal node polynomials from Severi data.

pub mod catalog;
pub mod fit;
pub mod germ;
pub mod linalg;
pub mod series;
pub mod severi;
