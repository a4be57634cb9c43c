//! Subspaces of `K^n` held in canonical form.
//!
//! A subspace is stored as the nonzero rows of the RREF of any spanning set,
//! so two subspaces are equal exactly when their stored bases are equal.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_rref_rows(ambient, Matrix::<T>::identity(ambient))
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            data.extend(v.iter().cloned());
        }
        let m = Matrix::from_vec(vectors.len(), ambient, data)?;
        Ok(Self::from_rref_rows(ambient, m.rref().trimmed().reduced))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Result<Self> {
        let vectors: Vec<Vec<T>> = indices
            .iter()
            .map(|&i| {
                if i >= ambient {
                    return Err(Error::DimensionMismatch {
                        expected: ambient,
                        found: i + 1,
                    });
                }
                let mut v = vec![T::zero(); ambient];
                v[i] = T::one();
                Ok(v)
            })
            .collect::<Result<_>>()?;
        Self::span(ambient, &vectors)
    }

    fn from_rref_rows(ambient: usize, reduced: Matrix<T>) -> Self {
        let basis = (0..reduced.rows()).map(|i| reduced.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix<T>) -> Self {
        Self::span(m.rows(), &(0..m.cols()).map(|j| m.column(j)).collect::<Vec<_>>())
            .expect("columns have the ambient length")
    }

    /// Null space of `m`.
    pub fn kernel(m: &Matrix<T>) -> Self {
        Self::span(m.cols(), &m.kernel_basis()).expect("kernel vectors have the ambient length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn contains(&self, v: &[T]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // Rows are in RREF: subtract along pivots, then check the residue.
        let mut r = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    let cur = std::mem::replace(x, T::zero());
                    *x = cur - f.clone() * y.clone();
                }
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let all: Vec<Vec<T>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(self.ambient));
        }
        // Solve sum x_i a_i - sum y_j b_j = 0 and map x back into the ambient space.
        let mut columns: Vec<Vec<T>> = self.basis.clone();
        columns.extend(other.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(self.ambient, &columns)?;
        let vectors: Vec<Vec<T>> = m
            .kernel_basis()
            .iter()
            .map(|k| combine(self.ambient, &self.basis, &k[..a]))
            .collect();
        Self::span(self.ambient, &vectors)
    }

    /// Image of the subspace under `m`.
    pub fn mapped(&self, m: &Matrix<T>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: m.cols(),
            });
        }
        let vectors: Vec<Vec<T>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Self::span(m.rows(), &vectors)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.basis
                .iter()
                .map(|v| Value::Array(v.iter().map(Field::to_json).collect()))
                .collect(),
        )
    }
}

pub(crate) fn combine<T: Field>(len: usize, vectors: &[Vec<T>], coeffs: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                let cur = std::mem::replace(o, T::zero());
                *o = cur + c.clone() * x.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span(3, &[q(&[1, 1, 0]), q(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[q(&[1, 2, 1]), q(&[1, 0, -1]), q(&[2, 2, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&q(&[3, 5, 2])));
        assert!(!a.contains(&q(&[1, 0, 0])));
    }

    #[test]
    fn sum_and_intersection_dimensions() {
        let a = Subspace::<Rational>::coordinate(4, &[0, 1]).unwrap();
        let b = Subspace::span(4, &[q(&[1, 0, 1, 0]), q(&[0, 1, 0, 0])]).unwrap();
        let s = a.sum(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        assert_eq!(i, Subspace::coordinate(4, &[1]).unwrap());
        assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        assert!(Subspace::<Rational>::zero(4).intersection(&a).unwrap().is_zero());
    }

    #[test]
    fn image_and_kernel_of_a_map() {
        type F3 = Fp<3>;
        let m = Matrix::<F3>::from_i64_rows(&[&[1, 1, 0], &[0, 0, 0], &[2, 2, 0]]);
        let im = Subspace::image(&m);
        let ker = Subspace::kernel(&m);
        assert_eq!(im.dim() + ker.dim(), 3);
        assert!(im.contains(&[F3::new(1), F3::new(0), F3::new(2)]));
        assert!(ker.contains(&[F3::new(1), F3::new(2), F3::new(0)]));
        assert_eq!(Subspace::<F3>::full(3).mapped(&m).unwrap(), im);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(Subspace::span(3, &[q(&[1, 0])]).is_err());
        assert!(Subspace::<Rational>::coordinate(2, &[2]).is_err());
    }
}
