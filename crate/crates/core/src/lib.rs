//! Restricted root systems, good-grading polytopes and alcove-adjacency
//! graphs for nilpotent elements of semisimple Lie algebras.
//!
//! All computations are exact. The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, exact linear algebra, feasibility, lattices;
//! - [`rootsys`]: root systems of types A–G, Weyl group actions, Chevalley
//!   structure constants and a direct good-grading rank test;
//! - [`restrict`]: restricted root systems, their bases and chambers, the
//!   restricted Weyl group and Levi conjugacy classes;
//! - [`arrange`]: arrangement statistics (characteristic polynomial,
//!   exponents, Coxeter-number analogue);
//! - [`grading`]: sl2 multiplicities, the good-grading polytope, integral
//!   good gradings, characteristics, adjacency graphs;
//! - [`pyramids`]: the explicit classical-type pipeline via Dynkin pyramids;
//! - [`cli`]: job specifications, JSON/DOT/SVG output and table reports.

pub mod arrange;
pub mod cli;
pub mod exact;
pub mod fixtures;
pub mod grading;
pub mod pyramids;
pub mod restrict;
pub mod rootsys;
