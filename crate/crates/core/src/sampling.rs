//! Deterministic meshes of unit spheres.
//!
//! In the plane the mesh is an angular sweep of `resolution` directions,
//! each rescaled onto the sphere by the gauge, merged with the corners of the
//! ball. In dimensions 3 and 4 it is the boundary of an integer lattice cube
//! projected radially onto the sphere, with the lattice chosen as fine as the
//! resolution allows, so `resolution` bounds the number of points per sphere
//! (corners aside) in every dimension.

use std::collections::HashMap;
use std::f64::consts::TAU;

use crate::config::EstimatorConfig;
use crate::error::{BpbError, Result};
use crate::space::NormedSpace;
use crate::vector::{Coords, Functional, Vector};

/// Smallest resolution accepted by the raw sampler.
pub const MIN_SAMPLER_RESOLUTION: usize = 4;
pub const MAX_SAMPLED_DIM: usize = 4;

/// Which sphere of the space is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Primal,
    Dual,
}

#[derive(Debug, Clone)]
pub(crate) struct SphereMesh {
    pub points: Vec<Coords>,
    /// Polar angle of each point (planar meshes only, sorted ascending).
    pub angles: Option<Vec<f64>>,
    /// Largest distance between neighbouring mesh points, in the sampled norm.
    pub gap: f64,
}

impl SphereMesh {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Angular neighbours of point `i` on the closed curve.
    pub fn bracket(&self, i: usize) -> Option<(f64, f64)> {
        let angles = self.angles.as_ref()?;
        let n = angles.len();
        let prev = if i == 0 { angles[n - 1] - TAU } else { angles[i - 1] };
        let next = if i + 1 == n { angles[0] + TAU } else { angles[i + 1] };
        Some((prev, next))
    }
}

pub(crate) fn check_sampled_dim(space: &NormedSpace) -> Result<()> {
    if space.dim() > MAX_SAMPLED_DIM {
        Err(BpbError::DimensionTooLarge(space.dim()))
    } else {
        Ok(())
    }
}

fn norm_on(space: &NormedSpace, side: Side, v: &[f64]) -> f64 {
    match side {
        Side::Primal => space.norm_of(v),
        Side::Dual => space.dual_norm_of(v),
    }
}

/// Point of the (primal or dual) unit sphere in direction `angle`.
pub(crate) fn planar_point(space: &NormedSpace, side: Side, angle: f64) -> Coords {
    let d = [angle.cos(), angle.sin()];
    let n = norm_on(space, side, &d);
    smallvec::smallvec![d[0] / n, d[1] / n]
}

/// Number of local coordinates describing a point of a unit sphere: none on
/// the line, an angle in the plane, raw coordinates (normalized by the norm)
/// in higher dimensions.
pub(crate) fn chart_len(dim: usize) -> usize {
    match dim {
        1 => 0,
        2 => 1,
        d => d,
    }
}

/// Appends the local coordinates of the sphere point `v` and their initial
/// search steps (`angle_step` for an angle).
pub(crate) fn chart_encode(v: &[f64], angle_step: f64, params: &mut Vec<f64>, steps: &mut Vec<f64>) {
    match v.len() {
        1 => {}
        2 => {
            params.push(v[1].atan2(v[0]));
            steps.push(angle_step);
        }
        d => {
            params.extend_from_slice(v);
            let size = crate::vector::euclid(v);
            steps.extend(std::iter::repeat_n(0.25 * size, d));
        }
    }
}

/// Sphere point with local coordinates `params`; on the line the sign is
/// carried by `fallback`.
pub(crate) fn chart_decode(space: &NormedSpace, side: Side, params: &[f64], fallback: &[f64]) -> Option<Coords> {
    match space.dim() {
        1 => Some(Coords::from_slice(fallback)),
        2 => Some(planar_point(space, side, params[0])),
        _ => {
            let n = norm_on(space, side, params);
            (n > 0.0 && n.is_finite()).then(|| params.iter().map(|c| c / n).collect())
        }
    }
}

pub(crate) fn sphere_mesh(space: &NormedSpace, side: Side, resolution: usize) -> Result<SphereMesh> {
    check_sampled_dim(space)?;
    if resolution < MIN_SAMPLER_RESOLUTION {
        return Err(BpbError::ResolutionTooSmall {
            found: resolution,
            min: MIN_SAMPLER_RESOLUTION,
        });
    }
    let corners: Vec<Coords> = match side {
        Side::Primal => space.corners().into_iter().map(|v| v.0).collect(),
        Side::Dual => space.dual().corners().into_iter().map(|v| v.0).collect(),
    };
    match space.dim() {
        1 => {
            let n = norm_on(space, side, &[1.0]);
            Ok(SphereMesh {
                points: vec![smallvec::smallvec![1.0 / n], smallvec::smallvec![-1.0 / n]],
                angles: None,
                gap: 0.0,
            })
        }
        2 => Ok(planar_mesh(space, side, resolution, &corners)),
        d => Ok(lattice_mesh(space, side, resolution, d, &corners)),
    }
}

fn planar_mesh(space: &NormedSpace, side: Side, resolution: usize, corners: &[Coords]) -> SphereMesh {
    // corners keep their exact coordinates; sweep directions are rescaled
    let mut entries: Vec<(f64, Option<&Coords>)> = (0..resolution)
        .map(|j| (TAU * j as f64 / resolution as f64, None))
        .collect();
    for c in corners {
        entries.push((c[1].atan2(c[0]).rem_euclid(TAU), Some(c)));
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    // merge near-equal angles, preferring corners
    let mut merged: Vec<(f64, Option<&Coords>)> = Vec::with_capacity(entries.len());
    for e in entries {
        match merged.last_mut() {
            Some(last) if e.0 - last.0 < 1e-12 => {
                if last.1.is_none() {
                    *last = e;
                }
            }
            _ => merged.push(e),
        }
    }
    let mut entries = merged;
    if entries.len() > 1 && TAU - entries[entries.len() - 1].0 + entries[0].0 < 1e-12 {
        let last = entries.pop().expect("length checked");
        if entries[0].1.is_none() {
            entries[0].1 = last.1;
        }
    }
    let angles: Vec<f64> = entries.iter().map(|e| e.0).collect();
    let points: Vec<Coords> = entries
        .iter()
        .map(|&(a, c)| c.cloned().unwrap_or_else(|| planar_point(space, side, a)))
        .collect();
    let n = points.len();
    let gap = (0..n)
        .map(|i| norm_on(space, side, &crate::vector::diff(&points[i], &points[(i + 1) % n])))
        .fold(0.0, f64::max);
    SphereMesh {
        points,
        angles: Some(angles),
        gap,
    }
}

/// Number of surface points of the cube `{-m..m}^dim`.
fn surface_count(m: usize, dim: usize) -> usize {
    (2 * m + 1).pow(dim as u32) - (2 * m - 1).pow(dim as u32)
}

/// Largest `m ≥ 1` whose cube surface has at most `resolution` points.
pub(crate) fn lattice_side(resolution: usize, dim: usize) -> usize {
    let mut m = 1;
    while surface_count(m + 1, dim) <= resolution {
        m += 1;
    }
    m
}

fn lattice_mesh(space: &NormedSpace, side: Side, resolution: usize, dim: usize, corners: &[Coords]) -> SphereMesh {
    let m = lattice_side(resolution, dim) as i64;
    let mut lattice: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![-m; dim];
    loop {
        if cur.iter().any(|c| c.abs() == m) {
            lattice.push(cur.clone());
        }
        let mut k = 0;
        loop {
            if k == dim {
                break;
            }
            cur[k] += 1;
            if cur[k] <= m {
                break;
            }
            cur[k] = -m;
            k += 1;
        }
        if k == dim {
            break;
        }
    }
    let project = |p: &[i64]| -> Coords {
        let raw: Coords = p.iter().map(|&c| c as f64 / m as f64).collect();
        let n = norm_on(space, side, &raw);
        raw.iter().map(|c| c / n).collect()
    };
    let mut points: Vec<Coords> = lattice.iter().map(|p| project(p)).collect();
    let index: HashMap<&[i64], usize> = lattice.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut neighbour_gap: f64 = 0.0;
    for (i, p) in lattice.iter().enumerate() {
        for axis in 0..dim {
            let mut q = p.clone();
            q[axis] += 1;
            if let Some(&j) = index.get(q.as_slice()) {
                let d = norm_on(space, side, &crate::vector::diff(&points[i], &points[j]));
                neighbour_gap = neighbour_gap.max(d);
            }
        }
    }
    // a surface cell is a (dim-1)-cube; its diagonal bounds the covering gap
    let gap = neighbour_gap * ((dim - 1) as f64).sqrt();
    for c in corners {
        if !points
            .iter()
            .any(|p| p.iter().zip(c).all(|(a, b)| (a - b).abs() < 1e-12))
        {
            points.push(c.clone());
        }
    }
    SphereMesh {
        points,
        angles: None,
        gap,
    }
}

/// Deterministic points of the unit sphere `S_X`.
pub fn sphere_sample(space: &NormedSpace, config: &EstimatorConfig) -> Result<Vec<Vector>> {
    Ok(sphere_mesh(space, Side::Primal, config.resolution)?
        .points
        .into_iter()
        .map(Vector::from_coords)
        .collect())
}

/// Deterministic points of the dual unit sphere `S_{X*}`.
pub fn dual_sphere_sample(space: &NormedSpace, config: &EstimatorConfig) -> Result<Vec<Functional>> {
    Ok(sphere_mesh(space, Side::Dual, config.resolution)?
        .points
        .into_iter()
        .map(Functional::from_coords)
        .collect())
}
