//! Coordinate vectors and linear functionals.
//!
//! Both carry their coordinates inline for the small dimensions this crate
//! works in, so the hot distance loops never touch the allocator.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{BpbError, Result};

pub(crate) type Coords = SmallVec<[f64; 4]>;

macro_rules! coord_type {
    ($name:ident, $what:literal) => {
        #[doc = concat!("A ", $what, " given by its coordinates in the standard basis.")]
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub(crate) Coords);

        impl $name {
            /// Builds from coordinates, rejecting empty or non-finite input.
            pub fn new(coords: impl Into<Vec<f64>>) -> Result<Self> {
                let coords: Vec<f64> = coords.into();
                if coords.is_empty() {
                    return Err(BpbError::InvalidParameter(
                        concat!($what, " must have dimension at least 1").into(),
                    ));
                }
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(BpbError::InvalidParameter(
                        concat!($what, " has a non-finite coordinate").into(),
                    ));
                }
                Ok(Self(Coords::from_vec(coords)))
            }

            pub(crate) fn from_coords(coords: Coords) -> Self {
                Self(coords)
            }

            pub fn zeros(dim: usize) -> Self {
                Self(smallvec::smallvec![0.0; dim])
            }

            /// The `i`-th standard basis element.
            pub fn basis(dim: usize, i: usize) -> Self {
                let mut v = Self::zeros(dim);
                v.0[i] = 1.0;
                v
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[f64] {
                &self.0
            }

            pub fn to_vec(&self) -> Vec<f64> {
                self.0.to_vec()
            }

            pub fn scale(&self, s: f64) -> Self {
                Self(self.0.iter().map(|c| c * s).collect())
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0.0)
            }

            /// Concatenation, used for direct sums.
            pub fn concat(&self, other: &Self) -> Self {
                let mut c = self.0.clone();
                c.extend_from_slice(&other.0);
                Self(c)
            }

            /// Components of a direct-sum element.
            pub fn split(&self, at: usize) -> (Self, Self) {
                (
                    Self(Coords::from_slice(&self.0[..at])),
                    Self(Coords::from_slice(&self.0[at..])),
                )
            }
        }

        impl Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: Self) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: Self) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Mul<f64> for &$name {
            type Output = $name;
            fn mul(self, s: f64) -> $name {
                self.scale(s)
            }
        }

        impl From<$name> for Vec<f64> {
            fn from(v: $name) -> Vec<f64> {
                v.0.to_vec()
            }
        }
    };
}

coord_type!(Vector, "vector");
coord_type!(Functional, "functional");

impl Functional {
    /// Action on a vector: the dot product of coordinate lists.
    pub fn apply(&self, v: &Vector) -> f64 {
        dot(&self.0, &v.0)
    }

    /// Reinterprets the coordinates as a vector (the bidual identification).
    pub fn as_vector(&self) -> Vector {
        Vector(self.0.clone())
    }
}

impl Vector {
    /// Reinterprets the coordinates as a functional.
    pub fn as_functional(&self) -> Functional {
        Functional(self.0.clone())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn diff(a: &[f64], b: &[f64]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn euclid(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}
