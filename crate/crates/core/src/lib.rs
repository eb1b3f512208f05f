//! Teichmüller polynomials of fibered faces for mapping tori of
//! oriented-fixed pseudo-Anosov maps, computed from ordered block
//! permutations.
//!
//! The pipeline runs [`obp::Obp`] → incidence matrix → invariant cohomology →
//! lifted matrix `A(t)` → `det(uI − A(t)) / (u − 1)`. The [`cone`] module
//! analyzes the result (Teichmüller norm, fibered cone, specializations and
//! stretch factors) and [`families`] generates the closed-form families
//! `Θ_{g,p}`.

pub mod cone;
pub mod error;
pub mod families;
pub mod intlinalg;
pub mod intpoly;
pub mod laurent;
pub mod obp;
pub mod teichpoly;

pub use cone::{CohomClass, SpecializationReport};
pub use error::{Error, Result};
pub use families::{FamilyParams, Prop1Params};
pub use intlinalg::IntMatrix;
pub use intpoly::IntPoly;
pub use laurent::{ExpVec, LaurentMatrix, LaurentPoly};
pub use obp::{AdmissibilityReport, Obp, Orbit};
pub use teichpoly::{CoverData, TeichResult};

/// Default tolerance for real-root bisection.
pub const ROOT_TOL: f64 = 1e-9;
/// Default annulus tolerance for the bi-Perron check.
pub const BIPERRON_TOL: f64 = 1e-7;
