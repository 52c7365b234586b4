use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A 3×3 Cartesian tensor, real or complex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tensor3<T = f64>(pub [[T; 3]; 3]);

impl<T: Copy + Default> Default for Tensor3<T> {
    fn default() -> Self {
        Tensor3([[T::default(); 3]; 3])
    }
}

impl<T: Copy + Default> Tensor3<T> {
    pub fn map<U: Copy + Default>(&self, f: impl Fn(T) -> U) -> Tensor3<U> {
        let mut out = Tensor3::<U>::default();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = f(self.0[i][j]);
            }
        }
        out
    }

    pub fn zip_with<S: Copy, U: Copy + Default>(&self, other: &Tensor3<S>, f: impl Fn(T, S) -> U) -> Tensor3<U> {
        let mut out = Tensor3::<U>::default();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = f(self.0[i][j], other.0[i][j]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }
}

impl<T> Tensor3<T>
where
    T: Copy + Default + Add<Output = T> + Mul<Output = T>,
{
    pub fn trace(&self) -> T {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Full contraction A_ij B_ij.
    pub fn double_dot(&self, other: &Self) -> T {
        let mut acc = T::default();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + self.0[i][j] * other.0[i][j];
            }
        }
        acc
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = T::default();
                for l in 0..3 {
                    acc = acc + self.0[i][l] * other.0[l][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

impl Tensor3<f64> {
    pub fn identity() -> Self {
        let mut out = Self::default();
        for i in 0..3 {
            out.0[i][i] = 1.0;
        }
        out
    }

    pub fn outer(a: [f64; 3], b: [f64; 3]) -> Self {
        let mut out = Self::default();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = a[i] * b[j];
            }
        }
        out
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| (self.0[i][j] - self.0[j][i]).abs() <= tol))
    }

    pub fn to_complex(&self) -> Tensor3<Complex64> {
        self.map(|v| Complex64::new(v, 0.0))
    }
}

impl Tensor3<Complex64> {
    pub fn re(&self) -> Tensor3<f64> {
        self.map(|z| z.re)
    }

    pub fn im(&self) -> Tensor3<f64> {
        self.map(|z| z.im)
    }
}

impl<T: Copy + Default + Add<Output = T>> Add for Tensor3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl<T: Copy + Default + Sub<Output = T>> Sub for Tensor3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl<T: Copy + Default + Mul<f64, Output = T>> Mul<f64> for Tensor3<T> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.map(|a| a * rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_products() {
        let id = Tensor3::identity();
        let a = Tensor3([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]);
        assert_eq!(id.matmul(&a), a);
        assert_eq!(a.matmul(&id), a);
        assert_eq!(id.trace(), 3.0);
        assert_eq!(a.double_dot(&id), a.trace());
        assert_eq!(a.transpose().transpose(), a);
        assert!(!a.is_symmetric(0.0));
        assert!((a + a.transpose()).is_symmetric(0.0));
    }

    #[test]
    fn outer_trace_is_dot() {
        let t = Tensor3::outer([1.0, 2.0, 3.0], [4.0, -5.0, 6.0]);
        assert_eq!(t.trace(), 4.0 - 10.0 + 18.0);
    }
}
