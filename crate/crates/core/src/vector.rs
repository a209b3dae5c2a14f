//! Coordinate vectors for the primal space `V` and its dual `V*`.
//!
//! Both are thin wrappers over `Vec<f64>`; keeping them distinct stops a
//! functional from being added to a point by accident.

use std::ops::{Add, Index, Neg, Sub};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

macro_rules! coord_vector {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(Vec<f64>);

        impl $name {
            pub fn new(coords: Vec<f64>) -> Self {
                Self(coords)
            }

            pub fn zeros(dim: usize) -> Self {
                Self(vec![0.0; dim])
            }

            /// The `i`-th standard basis vector of `R^dim`.
            pub fn basis(dim: usize, i: usize) -> Self {
                let mut v = vec![0.0; dim];
                v[i] = 1.0;
                Self(v)
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[f64] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<f64> {
                self.0
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|c| c.is_finite())
            }

            pub fn norm(&self) -> f64 {
                self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
            }

            pub fn norm_inf(&self) -> f64 {
                self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
            }

            pub fn scale(&self, s: f64) -> Self {
                Self(self.0.iter().map(|c| c * s).collect())
            }

            /// `self + s * other`
            pub fn axpy(&self, s: f64, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
            }

            pub fn inner(&self, other: &Self) -> f64 {
                self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
            }

            pub fn distance(&self, other: &Self) -> f64 {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            }

            /// Unit vector in the same direction, or `None` for (numerically) zero input.
            pub fn normalized(&self) -> Option<Self> {
                let n = self.norm();
                (n > f64::MIN_POSITIVE && n.is_finite()).then(|| self.scale(1.0 / n))
            }

            pub fn to_dvector(&self) -> DVector<f64> {
                DVector::from_column_slice(&self.0)
            }

            pub fn from_dvector(v: &DVector<f64>) -> Self {
                Self(v.iter().copied().collect())
            }
        }

        impl From<Vec<f64>> for $name {
            fn from(v: Vec<f64>) -> Self {
                Self(v)
            }
        }

        impl<const N: usize> From<[f64; N]> for $name {
            fn from(v: [f64; N]) -> Self {
                Self(v.to_vec())
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
            fn add(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }
    };
}

coord_vector!(Point);
coord_vector!(Functional);

impl Functional {
    /// Action of the functional on a point (coordinate dot product).
    pub fn apply(&self, x: &Point) -> f64 {
        self.0.iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    /// Reinterpret as a primal vector via the standard inner product.
    pub fn to_point(&self) -> Point {
        Point(self.0.clone())
    }
}

impl Point {
    pub fn to_functional(&self) -> Functional {
        Functional(self.0.clone())
    }
}

/// Arithmetic mean of a non-empty list of vectors, computed coordinate-wise.
pub fn mean_functional(items: &[Functional]) -> Functional {
    let d = items[0].dim();
    let n = items.len() as f64;
    let mut acc = vec![0.0; d];
    for f in items {
        for (a, c) in acc.iter_mut().zip(f.coords()) {
            *a += c;
        }
    }
    Functional(acc.into_iter().map(|a| a / n).collect())
}
