// SPDX-License-Identifier: Apache-2.0

//! Fixtures shared by the benchmarks.

use proxcurve::{ProximalSet, SpaceModel, Vector};

pub struct Fixture {
    pub space: SpaceModel,
    pub set: ProximalSet,
    pub x0: Vector,
    pub x1: Vector,
}

/// Complement of the unit ball in `ℓp²` with endpoints on the boundary at
/// angles 0 and `theta` (measured in the first two coordinates).
pub fn ball_complement(p: f64, theta: f64) -> Fixture {
    let space = SpaceModel::lp(p, 2).expect("valid space");
    let set = ProximalSet::ball_complement(&space, vec![0.0, 0.0], 1.0).expect("valid set");
    let x0 = set.boundary_point(&space, 0.0).expect("boundary point");
    let x1 = set.boundary_point(&space, theta).expect("boundary point");
    Fixture { space, set, x0, x1 }
}
