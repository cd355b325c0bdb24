//! Exact 4×4 rational matrices acting on the coordinates of the critical subspace.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Builds the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A 4×4 matrix with exact rational entries, row-major.
///
/// Acts on column vectors: `(M z)_i = Σ_j M[i][j] z_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix(pub [[Rational; 4]; 4]);

impl RatMatrix {
    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        RatMatrix(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// Integer matrix scaled by `1/den`.
    pub fn from_ints(entries: [[i64; 4]; 4], den: i64) -> Self {
        Self::from_fn(|i, j| rat(entries[i][j], den))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    pub fn rows(&self) -> &[[Rational; 4]; 4] {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_fn(|i, j| &self.0[i][j] * s)
    }

    pub fn apply(&self, v: &[Rational; 4]) -> [Rational; 4] {
        std::array::from_fn(|i| {
            (0..4).fold(Rational::zero(), |acc, j| acc + &self.0[i][j] * &v[j])
        })
    }

    /// Exact determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> Rational {
        let mut a = self.0.clone();
        let mut det = Rational::one();
        for col in 0..4 {
            let Some(pivot) = (col..4).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..4 {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..4 {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }

    pub fn trace(&self) -> Rational {
        (0..4).fold(Rational::zero(), |acc, i| acc + &self.0[i][i])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// True when every row holds exactly one nonzero entry (a scaled permutation).
    pub fn is_monomial(&self) -> bool {
        self.0
            .iter()
            .all(|row| row.iter().filter(|x| !x.is_zero()).count() == 1)
    }

    /// True for signed permutation matrices (entries in {0, ±1}, one per row and column).
    pub fn is_signed_permutation(&self) -> bool {
        let mut seen = [false; 4];
        for row in &self.0 {
            let nz: Vec<usize> = (0..4).filter(|&j| !row[j].is_zero()).collect();
            if nz.len() != 1 || !row[nz[0]].abs().is_one() || seen[nz[0]] {
                return false;
            }
            seen[nz[0]] = true;
        }
        true
    }

    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        use num_traits::ToPrimitive;
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].to_f64().unwrap_or(f64::NAN)))
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        RatMatrix::from_fn(|i, j| {
            (0..4).fold(Rational::zero(), |acc, k| acc + &self.0[i][k] * &rhs.0[k][j])
        })
    }
}

impl Mul for RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: RatMatrix) -> RatMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            f.write_str(&cells.join(" "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_permutation_and_diagonal() {
        let swap = RatMatrix::from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 1);
        assert_eq!(swap.det(), rat(-1, 1));
        let diag = RatMatrix::from_ints([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 5]], 2);
        assert_eq!(diag.det(), rat(30, 16));
        assert!(swap.is_signed_permutation());
        assert!(diag.is_monomial() && !diag.is_signed_permutation());
    }

    #[test]
    fn singular_matrix_has_zero_determinant() {
        let m = RatMatrix::from_ints([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1], [1, 0, 1, 0]], 1);
        assert!(m.det().is_zero());
    }

    #[test]
    fn product_and_transpose() {
        let a = RatMatrix::from_ints([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 1);
        let b = a.transpose();
        let ab = &a * &b;
        assert_eq!(ab.entry(0, 0), &rat(2, 1));
        assert_eq!(ab.transpose(), ab);
        assert_eq!(ab.det(), rat(1, 1));
    }
}
