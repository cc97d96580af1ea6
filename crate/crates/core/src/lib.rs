//! Exact-arithmetic engine for deformed universal enveloping algebras.
//!
//! The crate builds Lie algebras from structure constants, runs PBW normal
//! ordering for series-deformed commutation rules, verifies Hopf and
//! quasi-Hopf axioms, solves deformation problems order by order through
//! Chevalley-Eilenberg cohomology, and performs Inonu-Wigner contractions
//! with a rescaled deformation parameter. The bundled models are the
//! kappa-deformations of the Euclidean algebras in three and four
//! dimensions together with their semisimple parents.

pub mod cohomology;
pub mod deform;
pub mod hopf;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod pbw;
pub mod scalars;
