// SPDX-License-Identifier: Apache-2.0

//! Shortest paths through a set on a planar grid.
//!
//! Nodes are grid points of the box spanned by the endpoints with a `2R`
//! margin. A node is usable if it lies in the set, or within one grid step
//! of it for sets without interior. Edges follow a 16-neighbour stencil,
//! are weighted by the space norm and are kept only if their midpoint is
//! usable. Each endpoint is joined by straight edges to the usable nodes
//! within two grid steps. Node membership is evaluated lazily and Dijkstra
//! stops at the target.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::sets::{ProximalSet, SetError};
use crate::space::{SpaceModel, Vector};

pub const DEFAULT_GRID_N: usize = 1500;
pub const MAX_GRID_N: usize = 8000;
/// Worst relative excess of 16-neighbour paths over straight segments in the plane.
pub const STENCIL16_RELATIVE_ERROR: f64 = 0.028;

const STENCIL: [(i64, i64); 16] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (1, 2),
    (2, 1),
    (-1, 2),
    (-2, 1),
    (1, -2),
    (2, -1),
    (-1, -2),
    (-2, -1),
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("the grid oracle needs a 2D space, got dimension {0}")]
    NotPlanar(usize),
    #[error("grid_n = {0} outside [4, {MAX_GRID_N}]")]
    GridSize(usize),
    #[error("endpoint x{0} has no usable grid node within two steps")]
    Unattached(u8),
    #[error("endpoints are not connected on the grid")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    pub length: f64,
    /// Grid step.
    pub h: f64,
    pub grid_n: usize,
    /// `0.028 · length + 2h`.
    pub metrication_error: f64,
    pub nodes_settled: usize,
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Grid<'a> {
    space: &'a SpaceModel,
    set: &'a ProximalSet,
    origin: [f64; 2],
    h: f64,
    nx: usize,
    ny: usize,
    band: f64,
    usable: Vec<u8>,
}

impl Grid<'_> {
    fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    fn admits(&self, p: [f64; 2]) -> Result<bool, OracleError> {
        let v = Vector::new(p.to_vec()).expect("finite grid point");
        Ok(self.set.distance(self.space, &v)? <= self.band)
    }

    fn node_usable(&mut self, id: usize) -> Result<bool, OracleError> {
        if self.usable[id] == 0 {
            let ok = self.admits(self.point(id % self.nx, id / self.nx))?;
            self.usable[id] = if ok { 1 } else { 2 };
        }
        Ok(self.usable[id] == 1)
    }

    fn segment_usable(&self, a: [f64; 2], b: [f64; 2]) -> Result<bool, OracleError> {
        self.admits([(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0])
    }

    fn norm(&self, dx: f64, dy: f64) -> f64 {
        crate::space::lp_norm(&[dx, dy], self.space.p())
    }

    /// Usable nodes within two steps of `x`, with straight-edge weights.
    fn attach(&mut self, x: [f64; 2]) -> Result<Vec<(usize, f64)>, OracleError> {
        let ci = ((x[0] - self.origin[0]) / self.h).round() as i64;
        let cj = ((x[1] - self.origin[1]) / self.h).round() as i64;
        let mut out = Vec::new();
        for di in -2..=2 {
            for dj in -2..=2 {
                let (i, j) = (ci + di, cj + dj);
                if i < 0 || j < 0 || i >= self.nx as i64 || j >= self.ny as i64 {
                    continue;
                }
                let (i, j) = (i as usize, j as usize);
                let p = self.point(i, j);
                let w = self.norm(p[0] - x[0], p[1] - x[1]);
                let id = j * self.nx + i;
                if self.node_usable(id)? && self.segment_usable(x, p)? {
                    out.push((id, w));
                }
            }
        }
        Ok(out)
    }
}

/// Grid shortest-path length between `x0` and `x1` inside `set`.
pub fn geodesic_oracle_2d(
    space: &SpaceModel,
    set: &ProximalSet,
    x0: &Vector,
    x1: &Vector,
    grid_n: usize,
) -> Result<OracleResult, OracleError> {
    if space.dim() != 2 {
        return Err(OracleError::NotPlanar(space.dim()));
    }
    if !(4..=MAX_GRID_N).contains(&grid_n) {
        return Err(OracleError::GridSize(grid_n));
    }
    let margin = 2.0 * set.reach();
    let lo = [x0[0].min(x1[0]) - margin, x0[1].min(x1[1]) - margin];
    let hi = [x0[0].max(x1[0]) + margin, x0[1].max(x1[1]) + margin];
    let h = (hi[0] - lo[0]).max(hi[1] - lo[1]) / grid_n as f64;
    let nx = ((hi[0] - lo[0]) / h).ceil() as usize + 1;
    let ny = ((hi[1] - lo[1]) / h).ceil() as usize + 1;
    if x0 == x1 {
        return Ok(OracleResult { length: 0.0, h, grid_n, metrication_error: 0.0, nodes_settled: 0 });
    }
    let band = if set.is_thin() { h } else { 0.0 };
    let mut grid = Grid { space, set, origin: lo, h, nx, ny, band, usable: vec![0; nx * ny] };

    let p0 = [x0[0], x0[1]];
    let p1 = [x1[0], x1[1]];
    let start = grid.attach(p0)?;
    if start.is_empty() {
        return Err(OracleError::Unattached(0));
    }
    let finish = grid.attach(p1)?;
    if finish.is_empty() {
        return Err(OracleError::Unattached(1));
    }
    let target = nx * ny;
    let mut exit = vec![f64::INFINITY; nx * ny];
    for &(id, w) in &finish {
        exit[id] = w;
    }

    let mut dist = vec![f64::INFINITY; nx * ny + 1];
    let mut heap = BinaryHeap::new();
    if grid.segment_usable(p0, p1)? {
        let w = grid.norm(p1[0] - p0[0], p1[1] - p0[1]);
        dist[target] = w;
        heap.push(Entry { dist: w, node: target });
    }
    for &(id, w) in &start {
        if w < dist[id] {
            dist[id] = w;
            heap.push(Entry { dist: w, node: id });
        }
    }
    let mut settled = 0;
    while let Some(Entry { dist: du, node: u }) = heap.pop() {
        if du > dist[u] {
            continue;
        }
        if u == target {
            return Ok(OracleResult {
                length: du,
                h,
                grid_n,
                metrication_error: STENCIL16_RELATIVE_ERROR * du + 2.0 * h,
                nodes_settled: settled,
            });
        }
        settled += 1;
        if exit[u].is_finite() && du + exit[u] < dist[target] {
            dist[target] = du + exit[u];
            heap.push(Entry { dist: dist[target], node: target });
        }
        let (ui, uj) = ((u % nx) as i64, (u / nx) as i64);
        let pu = grid.point(ui as usize, uj as usize);
        for (di, dj) in STENCIL {
            let (vi, vj) = (ui + di, uj + dj);
            if vi < 0 || vj < 0 || vi >= nx as i64 || vj >= ny as i64 {
                continue;
            }
            let v = vj as usize * nx + vi as usize;
            let w = grid.norm(di as f64 * h, dj as f64 * h);
            if du + w >= dist[v] || !grid.node_usable(v)? {
                continue;
            }
            let pv = grid.point(vi as usize, vj as usize);
            if !grid.segment_usable(pu, pv)? {
                continue;
            }
            dist[v] = du + w;
            heap.push(Entry { dist: du + w, node: v });
        }
    }
    Err(OracleError::Disconnected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::SetConfig;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn half_plane_is_straight() {
        let l2 = SpaceModel::euclidean(2);
        let hs =
            ProximalSet::from_config(&SetConfig::HalfSpace { normal: vec![0.0, 1.0], offset: 0.0, reach: 0.25 }, &l2)
                .unwrap();
        let (x0, x1) = (v(&[0.0, -0.1]), v(&[0.4, -0.25]));
        let r = geodesic_oracle_2d(&l2, &hs, &x0, &x1, 400).unwrap();
        let d = l2.dist(&x0, &x1);
        assert!(r.length >= d - 1e-15 && r.length <= d * (1.0 + STENCIL16_RELATIVE_ERROR) + 2.0 * r.h);
    }

    #[test]
    fn around_an_obstacle() {
        let l2 = SpaceModel::euclidean(2);
        let bc = ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 0.5).unwrap();
        let (x0, x1) = (v(&[-0.5, 0.0]), v(&[0.5, 0.0]));
        let r = geodesic_oracle_2d(&l2, &bc, &x0, &x1, 800).unwrap();
        let arc = 0.5 * std::f64::consts::PI;
        assert!((r.length - arc).abs() <= r.metrication_error, "{} vs {arc}", r.length);
        assert!(r.length >= arc - 1e-12);
    }

    #[test]
    fn degenerate_and_errors() {
        let l2 = SpaceModel::euclidean(2);
        let bc = ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 1.0).unwrap();
        let x0 = v(&[1.0, 0.0]);
        assert_eq!(geodesic_oracle_2d(&l2, &bc, &x0, &x0, 100).unwrap().length, 0.0);
        let l3 = SpaceModel::euclidean(3);
        let bc3 = ProximalSet::ball_complement(&l3, vec![0.0; 3], 1.0).unwrap();
        let y = v(&[1.0, 0.0, 0.0]);
        assert_eq!(geodesic_oracle_2d(&l3, &bc3, &y, &y, 100), Err(OracleError::NotPlanar(3)));
        assert_eq!(geodesic_oracle_2d(&l2, &bc, &x0, &x0, 2), Err(OracleError::GridSize(2)));
    }

    #[test]
    fn thin_sphere_band() {
        let l2 = SpaceModel::euclidean(2);
        let sp = ProximalSet::sphere(&l2, vec![0.0, 0.0], 1.0).unwrap();
        let (x0, x1) = (v(&[1.0, 0.0]), v(&[0.0, 1.0]));
        let r = geodesic_oracle_2d(&l2, &sp, &x0, &x1, 1000).unwrap();
        let arc = std::f64::consts::FRAC_PI_2;
        assert!((r.length - arc).abs() <= r.metrication_error, "{} vs {arc}", r.length);
    }
}
