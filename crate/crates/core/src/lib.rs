//! Exact equivariant quantum cohomology for smooth semi-projective toric
//! manifolds, computed through torus-fixed-point localization.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! cohomology classes live in rational-function fields over the equivariant
//! parameters `l1..lm` and the loop variable `z`, and Novikov series are
//! truncated at an explicit rational cutoff in a positive grading certified
//! by a linear program.  No floats appear anywhere, so every identity this
//! crate claims to verify is checked as an exact zero residual, not as a
//! small number.
//!
//! The pipeline, bottom to top:
//!
//! * [`poly`], [`ratfun`] - sparse multivariate polynomials and reduced
//!   rational functions over ℚ, with the z-directed splitting and limit
//!   operations the Birkhoff factorization needs;
//! * [`degree`], [`series`] - curve-degree lattice, positive grading, and
//!   truncated Novikov series over any exact coefficient ring;
//! * [`fan`], [`simplex`] - fan validation (smoothness, primitivity, wall
//!   structure, convex support) plus an exact rational LP that certifies
//!   projectivity by a strictly convex support function and emits the
//!   grading vector;
//! * [`fixed_point`] - torus-fixed points, restriction weights, and section
//!   degrees of cocharacter actions;
//! * [`cohomology`] - the localized model of equivariant cohomology:
//!   restriction, interpolation, integration, and a greedy monomial basis;
//! * [`ifun`] - the hypergeometric I-function in the stripped gauge;
//! * [`shift`] - shift operators on the localized Givental space, the flow
//!   identity relating them to the I-function, and their composition law;
//! * [`mirror`] - the derivative frame, its Birkhoff factorization, the
//!   mirror map, the factor Upsilon, Seidel elements, and quantum-product
//!   matrices.

pub mod cohomology;
pub mod degree;
pub mod fan;
pub mod fixed_point;
pub mod fixtures;
pub mod ifun;
pub mod matrix;
pub mod mirror;
pub mod poly;
pub mod ratfun;
pub mod series;
pub mod shift;
pub mod simplex;

pub use cohomology::{CohomologyModel, GlobalClass, LocalizedClass};
pub use degree::{DegreeClass, Grading};
pub use fan::{Fan, FanError, ProjectivityCertificate, Wall};
pub use fixed_point::{fixed_points, section_degree, FixedPoint, SectionDegreeError};
pub use ifun::IFunction;
pub use mirror::{BirkhoffFactors, LaurentFrame, MirrorEngine, MirrorError};
pub use poly::{MPoly, QRat};
pub use ratfun::RationalFunction;
pub use series::NovikovSeries;
pub use shift::{
    compose_check, covariant_derivative, delta, flow_residual, ShiftError, ShiftFactor,
    ShiftOperator,
};
