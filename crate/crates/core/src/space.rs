//! Finite-dimensional real normed spaces as norm oracles.
//!
//! Every space knows its norm, its dual norm, a supporting functional at
//! each nonzero point, the attaining point of each nonzero functional, and
//! how to build its dual space. Spaces are immutable values.

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{BpbError, Result};
use crate::polytope::{Polytope, ACTIVE_TOL};
use crate::vector::{Coords, Functional, Vector};

/// Exponent of an `ℓ_p` norm. The endpoints are separate variants so that
/// conjugate exponents never need to be formed as limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    One,
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == 1.0 {
            Ok(Exponent::One)
        } else if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p > 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(BpbError::InvalidParameter(format!(
                "exponent must lie in [1, inf], got {p}"
            )))
        }
    }

    pub fn conjugate(self) -> Self {
        match self {
            Exponent::One => Exponent::Infinity,
            Exponent::Infinity => Exponent::One,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    fn norm(self, v: &[f64]) -> f64 {
        match self {
            Exponent::One => v.iter().map(|c| c.abs()).sum(),
            Exponent::Infinity => v.iter().fold(0.0, |m, c| m.max(c.abs())),
            Exponent::Finite(2.0) => v.iter().map(|c| c * c).sum::<f64>().sqrt(),
            Exponent::Finite(p) => {
                // scale first so large p does not overflow
                let m = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                if m == 0.0 {
                    return 0.0;
                }
                m * v.iter().map(|c| (c.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }

    /// Barycenter of the subdifferential of this norm at nonzero `v`.
    fn support(self, v: &[f64]) -> Coords {
        match self {
            Exponent::One => v.iter().map(|&c| if c == 0.0 { 0.0 } else { c.signum() }).collect(),
            Exponent::Infinity => {
                let m = self.norm(v);
                let cut = m * (1.0 - ACTIVE_TOL);
                let count = v.iter().filter(|c| c.abs() >= cut).count() as f64;
                v.iter()
                    .map(|&c| if c.abs() >= cut { c.signum() / count } else { 0.0 })
                    .collect()
            }
            Exponent::Finite(2.0) => {
                let m = self.norm(v);
                v.iter().map(|c| c / m).collect()
            }
            Exponent::Finite(p) => {
                let m = self.norm(v);
                v.iter().map(|&c| c.signum() * (c.abs() / m).powf(p - 1.0)).collect()
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Infinity => s.serialize_str("inf"),
            other => s.serialize_f64(other.value()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormedSpace {
    Lp { p: Exponent, dim: usize },
    Polytope(Polytope),
    Sum1(Box<NormedSpace>, Box<NormedSpace>),
    SumInf(Box<NormedSpace>, Box<NormedSpace>),
}

impl NormedSpace {
    /// `ℓ_p^dim`. All one-dimensional `ℓ_p` spaces are the real line and are
    /// stored as the canonical `ℓ_2^1`.
    pub fn lp(p: f64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(BpbError::InvalidParameter("dimension must be positive".into()));
        }
        let p = if dim == 1 {
            Exponent::Finite(2.0)
        } else {
            Exponent::new(p)?
        };
        Ok(NormedSpace::Lp { p, dim })
    }

    pub fn real_line() -> Self {
        NormedSpace::Lp {
            p: Exponent::Finite(2.0),
            dim: 1,
        }
    }

    pub fn l1(dim: usize) -> Result<Self> {
        Self::lp(1.0, dim)
    }

    pub fn l2(dim: usize) -> Result<Self> {
        Self::lp(2.0, dim)
    }

    pub fn linf(dim: usize) -> Result<Self> {
        Self::lp(f64::INFINITY, dim)
    }

    pub fn polytope(vertices: Vec<Vector>) -> Result<Self> {
        Ok(NormedSpace::Polytope(Polytope::new(vertices)?))
    }

    pub fn hexagon() -> Self {
        NormedSpace::Polytope(Polytope::regular_polygon(6).expect("hexagon is valid"))
    }

    pub fn sum1(a: NormedSpace, b: NormedSpace) -> Self {
        NormedSpace::Sum1(Box::new(a), Box::new(b))
    }

    pub fn suminf(a: NormedSpace, b: NormedSpace) -> Self {
        NormedSpace::SumInf(Box::new(a), Box::new(b))
    }

    pub fn dim(&self) -> usize {
        match self {
            NormedSpace::Lp { dim, .. } => *dim,
            NormedSpace::Polytope(p) => p.dim(),
            NormedSpace::Sum1(a, b) | NormedSpace::SumInf(a, b) => a.dim() + b.dim(),
        }
    }

    /// True for Euclidean spaces of dimension at least two, where the
    /// Hilbert-space closed forms apply.
    pub fn is_hilbert(&self) -> bool {
        matches!(self, NormedSpace::Lp { p: Exponent::Finite(p), dim } if *p == 2.0 && *dim >= 2)
    }

    pub fn is_real_line(&self) -> bool {
        matches!(self, NormedSpace::Lp { dim: 1, .. })
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        let expected = self.dim();
        if expected == found {
            Ok(())
        } else {
            Err(BpbError::DimensionMismatch { expected, found })
        }
    }

    pub fn norm(&self, v: &Vector) -> Result<f64> {
        self.check_dim(v.dim())?;
        Ok(self.norm_of(&v.0))
    }

    pub fn dual_norm(&self, f: &Functional) -> Result<f64> {
        self.check_dim(f.dim())?;
        Ok(self.dual_norm_of(&f.0))
    }

    /// A norm-one functional attaining `‖v‖` at `v`. At non-smooth points the
    /// barycenter of the exposed dual face is returned.
    pub fn support_functional(&self, v: &Vector) -> Result<Functional> {
        self.check_dim(v.dim())?;
        if v.is_zero() {
            return Err(BpbError::ZeroVector);
        }
        Ok(Functional(self.support_of(&v.0)))
    }

    /// A unit vector where `f` attains its dual norm (barycenter of the
    /// attaining face). This is the supporting functional of `f` in the dual.
    pub fn attaining_vector(&self, f: &Functional) -> Result<Vector> {
        self.check_dim(f.dim())?;
        if f.is_zero() {
            return Err(BpbError::ZeroVector);
        }
        Ok(Vector(self.dual_support_of(&f.0)))
    }

    pub(crate) fn norm_of(&self, v: &[f64]) -> f64 {
        match self {
            NormedSpace::Lp { p, .. } => p.norm(v),
            NormedSpace::Polytope(poly) => poly.gauge(v),
            NormedSpace::Sum1(a, b) => {
                let (l, r) = v.split_at(a.dim());
                a.norm_of(l) + b.norm_of(r)
            }
            NormedSpace::SumInf(a, b) => {
                let (l, r) = v.split_at(a.dim());
                a.norm_of(l).max(b.norm_of(r))
            }
        }
    }

    pub(crate) fn dual_norm_of(&self, f: &[f64]) -> f64 {
        match self {
            NormedSpace::Lp { p, .. } => p.conjugate().norm(f),
            NormedSpace::Polytope(poly) => poly.dual_gauge(f),
            NormedSpace::Sum1(a, b) => {
                let (l, r) = f.split_at(a.dim());
                a.dual_norm_of(l).max(b.dual_norm_of(r))
            }
            NormedSpace::SumInf(a, b) => {
                let (l, r) = f.split_at(a.dim());
                a.dual_norm_of(l) + b.dual_norm_of(r)
            }
        }
    }

    pub(crate) fn norm_of_diff(&self, a: &[f64], b: &[f64]) -> f64 {
        self.norm_of(&crate::vector::diff(a, b))
    }

    pub(crate) fn dual_norm_of_diff(&self, a: &[f64], b: &[f64]) -> f64 {
        self.dual_norm_of(&crate::vector::diff(a, b))
    }

    pub(crate) fn support_of(&self, v: &[f64]) -> Coords {
        match self {
            NormedSpace::Lp { p, .. } => p.support(v),
            NormedSpace::Polytope(poly) => poly.support(v),
            NormedSpace::Sum1(a, b) => {
                let (l, r) = v.split_at(a.dim());
                let mut out = component_support(a, l, false);
                out.extend(component_support(b, r, false));
                out
            }
            NormedSpace::SumInf(a, b) => {
                let (l, r) = v.split_at(a.dim());
                let (na, nb) = (a.norm_of(l), b.norm_of(r));
                let (wa, wb) = max_weights(na, nb);
                let mut out = weighted(component_support(a, l, false), wa);
                out.extend(weighted(component_support(b, r, false), wb));
                out
            }
        }
    }

    pub(crate) fn dual_support_of(&self, f: &[f64]) -> Coords {
        match self {
            NormedSpace::Lp { p, .. } => p.conjugate().support(f),
            NormedSpace::Polytope(poly) => poly.dual_support(f),
            // dual of a 1-sum is the inf-sum of duals
            NormedSpace::Sum1(a, b) => {
                let (l, r) = f.split_at(a.dim());
                let (na, nb) = (a.dual_norm_of(l), b.dual_norm_of(r));
                let (wa, wb) = max_weights(na, nb);
                let mut out = weighted(component_support(a, l, true), wa);
                out.extend(weighted(component_support(b, r, true), wb));
                out
            }
            NormedSpace::SumInf(a, b) => {
                let (l, r) = f.split_at(a.dim());
                let mut out = component_support(a, l, true);
                out.extend(component_support(b, r, true));
                out
            }
        }
    }

    /// The dual space, with coordinates paired by the dot product.
    pub fn dual(&self) -> NormedSpace {
        match self {
            NormedSpace::Lp { p, dim } => NormedSpace::Lp {
                p: p.conjugate(),
                dim: *dim,
            },
            NormedSpace::Polytope(poly) => NormedSpace::Polytope(poly.polar()),
            NormedSpace::Sum1(a, b) => NormedSpace::suminf(a.dual(), b.dual()),
            NormedSpace::SumInf(a, b) => NormedSpace::sum1(a.dual(), b.dual()),
        }
    }

    /// A finite list of extreme points of the unit ball, when one exists.
    /// Samplers add these to their meshes so that corner maximizers are hit
    /// exactly. Empty for smooth or partially smooth balls.
    pub fn corners(&self) -> Vec<Vector> {
        match self {
            NormedSpace::Lp { dim: 1, .. } => {
                vec![Vector(smallvec::smallvec![1.0]), Vector(smallvec::smallvec![-1.0])]
            }
            NormedSpace::Lp { p: Exponent::One, dim } => (0..*dim)
                .flat_map(|i| {
                    let e = Vector::basis(*dim, i);
                    [e.clone(), -&e]
                })
                .collect(),
            NormedSpace::Lp {
                p: Exponent::Infinity,
                dim,
            } => (0..1usize << dim)
                .map(|mask| Vector((0..*dim).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect()))
                .collect(),
            NormedSpace::Lp { .. } => Vec::new(),
            NormedSpace::Polytope(poly) => poly
                .vertices()
                .iter()
                .map(|v| v.scale(1.0 / poly.gauge(&v.0)))
                .collect(),
            NormedSpace::Sum1(a, b) => {
                let (ca, cb) = (a.corners(), b.corners());
                if ca.is_empty() || cb.is_empty() {
                    return Vec::new();
                }
                let (za, zb) = (Vector::zeros(a.dim()), Vector::zeros(b.dim()));
                ca.iter()
                    .map(|x| x.concat(&zb))
                    .chain(cb.iter().map(|y| za.concat(y)))
                    .collect()
            }
            NormedSpace::SumInf(a, b) => {
                let (ca, cb) = (a.corners(), b.corners());
                ca.iter().flat_map(|x| cb.iter().map(move |y| x.concat(y))).collect()
            }
        }
    }

    /// Structured description used for JSON echo.
    pub fn describe(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("space serialization is infallible")
    }
}

/// Supporting element of one direct-sum component; zero at the origin (the
/// barycenter of the whole dual ball).
fn component_support(space: &NormedSpace, v: &[f64], dual: bool) -> Coords {
    if v.iter().all(|&c| c == 0.0) {
        return smallvec::smallvec![0.0; v.len()];
    }
    if dual {
        space.dual_support_of(v)
    } else {
        space.support_of(v)
    }
}

/// Barycentric weights on the components of a max-combination.
fn max_weights(na: f64, nb: f64) -> (f64, f64) {
    let window = ACTIVE_TOL * na.max(nb).max(1.0);
    if (na - nb).abs() <= window {
        (0.5, 0.5)
    } else if na > nb {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    }
}

fn weighted(mut c: Coords, w: f64) -> Coords {
    c.iter_mut().for_each(|x| *x *= w);
    c
}

impl Serialize for NormedSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormedSpace::Lp { p, dim } => {
                let mut st = s.serialize_struct("NormedSpace", 3)?;
                st.serialize_field("kind", "lp")?;
                st.serialize_field("p", p)?;
                st.serialize_field("dim", dim)?;
                st.end()
            }
            NormedSpace::Polytope(poly) => {
                let mut st = s.serialize_struct("NormedSpace", 3)?;
                st.serialize_field("kind", "polytope")?;
                st.serialize_field("dim", &poly.dim())?;
                st.serialize_field("vertices", poly.vertices())?;
                st.end()
            }
            NormedSpace::Sum1(a, b) | NormedSpace::SumInf(a, b) => {
                let kind = if matches!(self, NormedSpace::Sum1(..)) {
                    "sum1"
                } else {
                    "suminf"
                };
                let mut st = s.serialize_struct("NormedSpace", 4)?;
                st.serialize_field("kind", kind)?;
                st.serialize_field("dim", &self.dim())?;
                st.serialize_field("left", a.as_ref())?;
                st.serialize_field("right", b.as_ref())?;
                st.end()
            }
        }
    }
}

/// Canonical space-spec string; parsing it back gives an equal space.
impl fmt::Display for NormedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormedSpace::Lp { dim: 1, .. } => write!(f, "r:1"),
            NormedSpace::Lp { p: Exponent::One, dim } => write!(f, "l1:{dim}"),
            NormedSpace::Lp {
                p: Exponent::Infinity,
                dim,
            } => write!(f, "linf:{dim}"),
            NormedSpace::Lp {
                p: Exponent::Finite(p),
                dim,
            } if *p == 2.0 => write!(f, "l2:{dim}"),
            NormedSpace::Lp {
                p: Exponent::Finite(p),
                dim,
            } => write!(f, "lp:{dim}:p={p:?}"),
            NormedSpace::Polytope(poly) => {
                let verts: Vec<Vec<f64>> = poly.vertices().iter().map(|v| v.to_vec()).collect();
                write!(f, "poly:{}", serde_json::to_string(&verts).map_err(|_| fmt::Error)?)
            }
            NormedSpace::Sum1(a, b) => write!(f, "sum1({a},{b})"),
            NormedSpace::SumInf(a, b) => write!(f, "suminf({a},{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn f(c: &[f64]) -> Functional {
        Functional::new(c.to_vec()).unwrap()
    }

    #[test]
    fn norm_examples() {
        let linf = NormedSpace::linf(2).unwrap();
        assert_eq!(linf.norm(&v(&[1.0, -1.0])).unwrap(), 1.0);
        let l1 = NormedSpace::l1(2).unwrap();
        assert_abs_diff_eq!(l1.norm(&v(&[0.3, -0.4])).unwrap(), 0.7, epsilon = 1e-15);
        let cross =
            NormedSpace::polytope(vec![v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0]), v(&[0.0, -1.0])]).unwrap();
        assert_abs_diff_eq!(cross.norm(&v(&[0.5, 0.5])).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn dual_norm_examples() {
        let linf = NormedSpace::linf(2).unwrap();
        assert_eq!(linf.dual_norm(&f(&[0.5, 0.5])).unwrap(), 1.0);
        let square =
            NormedSpace::polytope(vec![v(&[1.0, 1.0]), v(&[-1.0, -1.0]), v(&[1.0, -1.0]), v(&[-1.0, 1.0])]).unwrap();
        assert_eq!(square.dual_norm(&f(&[1.0, 0.0])).unwrap(), 1.0);
        let s = NormedSpace::sum1(NormedSpace::l2(1).unwrap(), NormedSpace::l2(1).unwrap());
        assert_eq!(s.dual_norm(&f(&[0.3, 0.9])).unwrap(), 0.9);
    }

    #[test]
    fn support_examples() {
        let l2 = NormedSpace::l2(2).unwrap();
        let s = l2.support_functional(&v(&[3.0, 4.0])).unwrap();
        assert_abs_diff_eq!(s[0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(s[1], 0.8, epsilon = 1e-15);
        let linf = NormedSpace::linf(2).unwrap();
        assert_eq!(linf.support_functional(&v(&[0.5, 1.0])).unwrap(), f(&[0.0, 1.0]));
        let l1 = NormedSpace::l1(2).unwrap();
        assert_eq!(l1.support_functional(&v(&[1.0, 0.0])).unwrap(), f(&[1.0, 0.0]));
    }

    #[test]
    fn support_at_linf_corner_is_barycenter() {
        let linf = NormedSpace::linf(2).unwrap();
        assert_eq!(linf.support_functional(&v(&[1.0, -1.0])).unwrap(), f(&[0.5, -0.5]));
    }

    #[test]
    fn errors() {
        let l2 = NormedSpace::l2(2).unwrap();
        assert_eq!(
            l2.norm(&v(&[1.0])),
            Err(BpbError::DimensionMismatch { expected: 2, found: 1 })
        );
        assert_eq!(l2.support_functional(&v(&[0.0, 0.0])), Err(BpbError::ZeroVector));
        assert!(NormedSpace::lp(0.5, 2).is_err());
    }

    #[test]
    fn sums_combine_exactly() {
        let a = NormedSpace::l2(2).unwrap();
        let b = NormedSpace::l1(2).unwrap();
        let s1 = NormedSpace::sum1(a.clone(), b.clone());
        let si = NormedSpace::suminf(a, b);
        let x = v(&[3.0, 4.0, 1.0, -2.0]);
        assert_eq!(s1.norm(&x).unwrap(), 8.0);
        assert_eq!(si.norm(&x).unwrap(), 5.0);
        assert_eq!(s1.dim(), 4);
    }

    #[test]
    fn dual_of_dual_is_original() {
        let spaces = [
            NormedSpace::lp(3.0, 2).unwrap(),
            NormedSpace::l1(3).unwrap(),
            NormedSpace::hexagon(),
            NormedSpace::sum1(NormedSpace::real_line(), NormedSpace::l2(2).unwrap()),
        ];
        for s in spaces {
            let dd = s.dual().dual();
            let x = v(&vec![0.3, -0.7, 0.2][..s.dim()]);
            assert_abs_diff_eq!(dd.norm(&x).unwrap(), s.norm(&x).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn attaining_vector_is_dual_support() {
        let l1 = NormedSpace::l1(2).unwrap();
        // (t, 1-t) in the l_inf dual sphere attains on the l1 ball at e_2 when t < 1-t
        let y = l1.attaining_vector(&f(&[0.3, 1.0])).unwrap();
        assert_eq!(y, v(&[0.0, 1.0]));
        let linf = NormedSpace::linf(2).unwrap();
        let y = linf.attaining_vector(&f(&[0.25, 0.75])).unwrap();
        assert_eq!(y, v(&[1.0, 1.0]));
    }

    #[test]
    fn corners_lie_on_sphere() {
        for s in [
            NormedSpace::linf(3).unwrap(),
            NormedSpace::l1(2).unwrap(),
            NormedSpace::hexagon(),
            NormedSpace::suminf(NormedSpace::real_line(), NormedSpace::l1(2).unwrap()),
        ] {
            let c = s.corners();
            assert!(!c.is_empty());
            for p in c {
                assert_abs_diff_eq!(s.norm(&p).unwrap(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn display_is_canonical_spec() {
        let s = NormedSpace::sum1(NormedSpace::real_line(), NormedSpace::lp(1.5, 2).unwrap());
        assert_eq!(s.to_string(), "sum1(r:1,lp:2:p=1.5)");
        assert_eq!(NormedSpace::l1(1).unwrap().to_string(), "r:1");
    }

    #[test]
    fn describe_json() {
        let s = NormedSpace::suminf(NormedSpace::real_line(), NormedSpace::linf(2).unwrap());
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"kind":"suminf","dim":3,"left":{"kind":"lp","p":2.0,"dim":1},"right":{"kind":"lp","p":"inf","dim":2}}"#
        );
    }
}
