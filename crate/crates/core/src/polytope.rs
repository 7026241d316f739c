//! Centrally symmetric polytope norms.
//!
//! The unit ball is `hull(V)` for a symmetric vertex list `V`. On
//! construction the facet functionals (the vertices of the polar body) are
//! enumerated once, so the gauge is `max_j <f_j, v>` with no per-call solve.

use itertools::Itertools;

use crate::error::{BpbError, Result};
use crate::vector::{dot, Coords, Functional, Vector};

const SYMMETRY_TOL: f64 = 1e-9;
const FACET_TOL: f64 = 1e-9;
/// Relative window for deciding which facets are active at a point.
pub(crate) const ACTIVE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    vertices: Vec<Vector>,
    facets: Vec<Functional>,
}

impl Polytope {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        let dim = match vertices.first() {
            Some(v) => v.dim(),
            None => return Err(BpbError::DegeneratePolytope),
        };
        for v in &vertices {
            if v.dim() != dim {
                return Err(BpbError::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        check_symmetric(&vertices)?;
        if rank(&vertices, dim) < dim {
            return Err(BpbError::DegeneratePolytope);
        }
        let facets = enumerate_facets(&vertices, dim);
        if facets.is_empty() {
            return Err(BpbError::DegeneratePolytope);
        }
        Ok(Self { vertices, facets })
    }

    /// Regular `2n`-gon with vertices on the Euclidean unit circle, first
    /// vertex at angle 0.
    pub fn regular_polygon(sides: usize) -> Result<Self> {
        if sides < 4 || !sides.is_multiple_of(2) {
            return Err(BpbError::InvalidParameter(format!(
                "symmetric polygon needs an even number (>= 4) of sides, got {sides}"
            )));
        }
        let vertices = (0..sides)
            .map(|j| {
                let a = std::f64::consts::TAU * j as f64 / sides as f64;
                Vector::from_coords(Coords::from_slice(&[a.cos(), a.sin()]))
            })
            .collect();
        Self::new(vertices)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Functional] {
        &self.facets
    }

    /// Minkowski gauge of the hull.
    pub(crate) fn gauge(&self, v: &[f64]) -> f64 {
        self.facets.iter().map(|f| dot(&f.0, v)).fold(0.0, f64::max)
    }

    pub(crate) fn dual_gauge(&self, f: &[f64]) -> f64 {
        self.vertices.iter().map(|v| dot(&v.0, f).abs()).fold(0.0, f64::max)
    }

    /// Barycenter of the facet functionals active at `v`.
    pub(crate) fn support(&self, v: &[f64]) -> Coords {
        let n = self.gauge(v);
        let window = ACTIVE_TOL * n.max(1.0);
        let mut acc: Coords = smallvec::smallvec![0.0; v.len()];
        let mut count = 0usize;
        for f in &self.facets {
            if dot(&f.0, v) >= n - window {
                for (a, c) in acc.iter_mut().zip(&f.0) {
                    *a += c;
                }
                count += 1;
            }
        }
        let inv = 1.0 / count as f64;
        acc.iter_mut().for_each(|a| *a *= inv);
        acc
    }

    /// Barycenter of the vertices where `f` attains its dual norm.
    pub(crate) fn dual_support(&self, f: &[f64]) -> Coords {
        let n = self.dual_gauge(f);
        let window = ACTIVE_TOL * n.max(1.0);
        let mut acc: Coords = smallvec::smallvec![0.0; f.len()];
        let mut count = 0usize;
        for v in &self.vertices {
            if dot(&v.0, f) >= n - window {
                for (a, c) in acc.iter_mut().zip(&v.0) {
                    *a += c;
                }
                count += 1;
            }
        }
        let inv = 1.0 / count as f64;
        acc.iter_mut().for_each(|a| *a *= inv);
        acc
    }

    /// The polar body, whose vertices are this polytope's facet functionals.
    pub fn polar(&self) -> Polytope {
        let vertices: Vec<Vector> = self.facets.iter().map(|f| f.as_vector()).collect();
        let facets = self.extreme_vertices();
        Polytope { vertices, facets }
    }

    /// Vertices that are exposed by some facet pair, i.e. the true extreme
    /// points of the hull.
    fn extreme_vertices(&self) -> Vec<Functional> {
        let dim = self.dim();
        let mut out: Vec<Functional> = Vec::new();
        for v in &self.vertices {
            let active: Vec<&Functional> = self
                .facets
                .iter()
                .filter(|f| (dot(&f.0, &v.0) - 1.0).abs() <= FACET_TOL)
                .collect();
            let active_vecs: Vec<Vector> = active.iter().map(|f| f.as_vector()).collect();
            if rank(&active_vecs, dim) == dim && !out.iter().any(|w| close(&w.0, &v.0, FACET_TOL)) {
                out.push(v.as_functional());
            }
        }
        out
    }
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn check_symmetric(vertices: &[Vector]) -> Result<()> {
    let scale = vertices
        .iter()
        .flat_map(|v| v.0.iter())
        .fold(0.0f64, |m, c| m.max(c.abs()))
        .max(1.0);
    for v in vertices {
        let mirrored = vertices
            .iter()
            .any(|w| v.0.iter().zip(&w.0).all(|(a, b)| (a + b).abs() <= SYMMETRY_TOL * scale));
        if !mirrored {
            return Err(BpbError::NonSymmetricPolytope(format!(
                "no antipode for vertex {:?}",
                v.coords()
            )));
        }
    }
    Ok(())
}

/// Numerical rank by Gaussian elimination with partial pivoting.
fn rank(rows: &[Vector], dim: usize) -> usize {
    let mut m: Vec<Coords> = rows.iter().map(|r| r.0.clone()).collect();
    let mut rank = 0;
    for col in 0..dim {
        let pivot = (rank..m.len()).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()));
        let Some(p) = pivot else { break };
        if m[p][col].abs() <= 1e-12 {
            continue;
        }
        m.swap(rank, p);
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below {
            let factor = row[col] / pivot[col];
            for (x, y) in row[col..dim].iter_mut().zip(&pivot[col..dim]) {
                *x -= factor * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `A f = 1` for square `A` given by rows; `None` when singular.
fn solve_unit_rhs(rows: &[&Vector]) -> Option<Coords> {
    let n = rows.len();
    let mut a: Vec<Coords> = rows
        .iter()
        .map(|r| {
            let mut row = r.0.clone();
            row.push(1.0);
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[p][col].abs() <= 1e-12 {
            return None;
        }
        a.swap(col, p);
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col {
                let factor = row[col] / pivot[col];
                for (x, y) in row[col..=n].iter_mut().zip(&pivot[col..=n]) {
                    *x -= factor * y;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

fn enumerate_facets(vertices: &[Vector], dim: usize) -> Vec<Functional> {
    let mut facets: Vec<Functional> = Vec::new();
    for subset in vertices.iter().combinations(dim) {
        let Some(f) = solve_unit_rhs(&subset) else {
            continue;
        };
        let supporting = vertices.iter().all(|v| dot(&f, &v.0) <= 1.0 + FACET_TOL);
        if supporting && !facets.iter().any(|g| close(&g.0, &f, 1e-9)) {
            facets.push(Functional::from_coords(f));
        }
    }
    facets
}
