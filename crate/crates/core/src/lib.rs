// SPDX-License-Identifier: Apache-2.0

//! Curves between nearby points of a proximally smooth set in `ℓp^n`.
//!
//! The crate builds a curve by dyadic refinement: every new vertex is the
//! point of the metric projection of a segment that lies on the segment's
//! mid-hyperplane (a *slice-projection*). Alongside the construction it
//! evaluates the quantitative length, decay and inclusion bounds for such
//! curves and checks them against the built vertices.
//!
//! Module map:
//!
//! * [`space`]: `ℓp` norms, duality map, smoothness moduli and inverses.
//! * [`sets`]: proximally smooth test sets with projection oracles.
//! * [`slicer`]: slice-projection of a segment midpoint by bisection.
//! * [`builder`]: dyadic curve refinement and feasibility gates.
//! * [`bounds`]: closed-form constants and inequalities.
//! * [`harness`]: scenarios, verification reports, oracles, file output.

// `!(x > 0.0)` style guards deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod builder;
pub mod harness;
pub mod numeric;
pub mod sets;
pub mod slicer;
pub mod space;

pub use bounds::{BoundsContext, BoundsError, PowerType};
pub use builder::{
    build_curve, check_feasibility, polyline_length, BuildError, BuildParams, DyadicCurve, FeasibilityReport,
};
pub use harness::{run_scenario, CheckStatus, Scenario, ScenarioConfig, VerificationReport};
pub use sets::{ProximalSet, SetConfig, SetError};
pub use slicer::{slice_project, SliceError, SlicePoint, SlicerParams};
pub use space::{ModulusModel, SpaceError, SpaceModel, Vector};
