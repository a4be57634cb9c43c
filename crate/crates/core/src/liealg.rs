//! Lie algebras given by structure constants.
//!
//! Only brackets `[e_i, e_j]` with `i < j` are stored; the rest of the table
//! follows from antisymmetry. Basis conventions of the constructors:
//!
//! * `heisenberg`: `(x, y, z)` with `[x, y] = z`.
//! * `sl2`: `(e, f, h)` with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
//! * `zassenhaus`: `e_{-1}, e_0, ..., e_{N-2}` with `N = p^n`; `e_i` sits at
//!   index `i + 1`.
//! * `witt_mod_p`: `e_0, ..., e_{p-1}` indexed by residues.
//! * `current`: `e_i ⊗ t^a` at index `a * dim + i`.
//! * `direct_sum`: basis of the first summand, then the second.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, FieldSpec};
use crate::subspace::Subspace;

/// Sparse vector: `(basis index, coefficient)` with increasing indices and
/// no zero coefficients.
pub type Terms<T> = Vec<(usize, T)>;

/// Largest `p^n` accepted by [`LieAlgebra::zassenhaus`].
pub const ZASSENHAUS_CAP: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra<T> {
    dim: usize,
    // upper[pair_index(i, j)] = [e_i, e_j] for i < j
    upper: Vec<Terms<T>>,
}

/// First basis triple on which the Jacobi identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation<T> {
    pub triple: (usize, usize, usize),
    pub defect: Vec<T>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn normalize<T: Field>(terms: impl IntoIterator<Item = (usize, T)>) -> Terms<T> {
    let mut acc: BTreeMap<usize, T> = BTreeMap::new();
    for (k, v) in terms {
        let e = acc.entry(k).or_insert_with(T::zero);
        *e = e.clone() + v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl<T: Field> LieAlgebra<T> {
    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            upper: vec![Vec::new(); dim * dim.saturating_sub(1) / 2],
        }
    }

    /// Build from brackets `[e_i, e_j] = Σ c_k e_k`. Pairs may be given in
    /// either order; each unordered pair at most once.
    pub fn from_brackets<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Terms<T>)>,
    {
        let mut alg = Self::abelian(dim);
        let mut seen = vec![false; alg.upper.len()];
        for (i, j, terms) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: i.max(j) + 1,
                });
            }
            if let Some(&(k, _)) = terms.iter().find(|(k, _)| *k >= dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k + 1,
                });
            }
            if i == j {
                if normalize(terms).is_empty() {
                    continue;
                }
                return Err(Error::Precondition(format!("bracket [e_{i}, e_{i}] must vanish")));
            }
            let (a, b, sign) = if i < j { (i, j, T::one()) } else { (j, i, -T::one()) };
            let idx = pair_index(dim, a, b);
            if seen[idx] {
                return Err(Error::Precondition(format!("bracket of e_{a} and e_{b} given twice")));
            }
            seen[idx] = true;
            alg.upper[idx] = normalize(terms.into_iter().map(|(k, v)| (k, v * sign.clone())));
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        T::spec()
    }

    pub fn is_abelian(&self) -> bool {
        self.upper.iter().all(Vec::is_empty)
    }

    /// `[e_i, e_j]` as sparse terms.
    pub fn structure(&self, i: usize, j: usize) -> Terms<T> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec::new(),
            Less => self.upper[pair_index(self.dim, i, j)].clone(),
            Greater => self.upper[pair_index(self.dim, j, i)]
                .iter()
                .map(|(k, v)| (*k, -v.clone()))
                .collect(),
        }
    }

    /// Full table of `[e_i, e_j]`, indexed by `i * dim + j`.
    pub fn structure_table(&self) -> Vec<Terms<T>> {
        let n = self.dim;
        let mut out = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let t = &self.upper[pair_index(n, i, j)];
                out[j * n + i] = t.iter().map(|(k, v)| (*k, -v.clone())).collect();
                out[i * n + j] = t.clone();
            }
        }
        out
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim];
        for (k, c) in self.structure(i, j) {
            v[k] = c;
        }
        v
    }

    fn check_len(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            for j in i + 1..n {
                let t = &self.upper[pair_index(n, i, j)];
                if t.is_empty() {
                    continue;
                }
                let c = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
                if c.is_zero() {
                    continue;
                }
                for (k, v) in t {
                    let cur = std::mem::replace(&mut out[*k], T::zero());
                    out[*k] = cur + c.clone() * v.clone();
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ [x, y]`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[T]) -> Result<Matrix<T>> {
        self.check_len(x)?;
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, v) in self.structure(i, j) {
                    let cur = std::mem::replace(&mut m[(k, j)], T::zero());
                    m[(k, j)] = cur + xi.clone() * v;
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<T> {
        let mut e = vec![T::zero(); self.dim];
        e[i] = T::one();
        self.ad(&e).expect("basis vector has ambient length")
    }

    /// `[[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]`.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, s) in self.structure(a, b) {
                for (r, t) in self.structure(m, c) {
                    let cur = std::mem::replace(&mut out[r], T::zero());
                    out[r] = cur + s.clone() * t;
                }
            }
        }
        out
    }

    pub fn validate(&self) -> std::result::Result<(), JacobiViolation<T>> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let d = self.jacobi_defect(i, j, k);
                    if d.iter().any(|x| !x.is_zero()) {
                        return Err(JacobiViolation {
                            triple: (i, j, k),
                            defect: d,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements commuting with every basis vector.
    pub fn center(&self) -> Subspace<T> {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n * n);
        for j in 0..n {
            data.extend(self.ad_basis(j).into_vec());
        }
        Subspace::kernel(&Matrix::from_vec(n * n, n, data).expect("stacked ad matrices"))
    }

    /// `α` is invertible and `α[e_i, e_j] = [α e_i, α e_j]` for all `i < j`.
    pub fn is_automorphism(&self, alpha: &Matrix<T>) -> bool {
        let n = self.dim;
        if alpha.rows() != n || alpha.cols() != n || alpha.rank() != n {
            return false;
        }
        let cols: Vec<Vec<T>> = (0..n).map(|j| alpha.column(j)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = alpha.apply(&self.basis_bracket(i, j));
                let rhs = self.bracket(&cols[i], &cols[j]).expect("ambient length");
                lhs == rhs
            })
        })
    }

    /// `L ⊗ K[t]/(t^m)`.
    pub fn current(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("truncation order must be at least 1".into()));
        }
        let n = self.dim;
        let mut brackets = Vec::new();
        for a in 0..m {
            for b in 0..m - a {
                for i in 0..n {
                    for j in 0..n {
                        let (p, q) = (a * n + i, b * n + j);
                        if p >= q {
                            continue;
                        }
                        let terms: Terms<T> = self
                            .structure(i, j)
                            .into_iter()
                            .map(|(k, v)| ((a + b) * n + k, v))
                            .collect();
                        if !terms.is_empty() {
                            brackets.push((p, q, terms));
                        }
                    }
                }
            }
        }
        Self::from_brackets(n * m, brackets)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let mut brackets = Vec::new();
        for i in 0..n1 {
            for j in i + 1..n1 {
                brackets.push((i, j, self.structure(i, j)));
            }
        }
        for i in 0..n2 {
            for j in i + 1..n2 {
                let t = other.structure(i, j).into_iter().map(|(k, v)| (k + n1, v)).collect();
                brackets.push((i + n1, j + n1, t));
            }
        }
        Self::from_brackets(n1 + n2, brackets).expect("blocks are well formed")
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let t = &self.upper[pair_index(n, i, j)];
                if t.is_empty() {
                    continue;
                }
                let terms: Vec<Value> = t.iter().map(|(k, v)| json!([k, v.to_json()])).collect();
                brackets.push(json!({"i": i, "j": j, "terms": terms}));
            }
        }
        json!({"field": T::spec().to_json(), "dim": n, "brackets": brackets})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = field_of_document(v)?;
        if field != T::spec() {
            return Err(Error::FieldMismatch {
                expected: T::spec(),
                found: field,
            });
        }
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("algebra: missing integer \"dim\"".into()))? as usize;
        let list = match v.get("brackets") {
            None => &[][..],
            Some(Value::Array(a)) => &a[..],
            Some(_) => return Err(Error::Parse("algebra: \"brackets\" must be an array".into())),
        };
        let mut brackets = Vec::with_capacity(list.len());
        for entry in list {
            let idx = |key: &str| {
                entry
                    .get(key)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("algebra: bracket entry needs integer {key:?}")))
            };
            let (i, j) = (idx("i")?, idx("j")?);
            if i >= j {
                return Err(Error::Parse(format!(
                    "algebra: bracket entries need i < j, got ({i}, {j})"
                )));
            }
            let terms = entry
                .get("terms")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("algebra: bracket entry needs \"terms\"".into()))?
                .iter()
                .map(|t| match t.as_array().map(Vec::as_slice) {
                    Some([k, s]) => {
                        let k = k
                            .as_u64()
                            .ok_or_else(|| Error::Parse("algebra: term index must be an integer".into()))?;
                        Ok((k as usize, T::from_json(s)?))
                    }
                    _ => Err(Error::Parse("algebra: terms are [index, scalar] pairs".into())),
                })
                .collect::<Result<Terms<T>>>()?;
            brackets.push((i, j, terms));
        }
        Self::from_brackets(dim, brackets).map_err(|e| match e {
            Error::Parse(_) => e,
            other => Error::Parse(format!("algebra: {other}")),
        })
    }
}

/// Field declared by a JSON algebra document.
pub fn field_of_document(v: &Value) -> Result<FieldSpec> {
    let f = v
        .get("field")
        .ok_or_else(|| Error::Parse("algebra: missing \"field\"".into()))?;
    FieldSpec::from_json(f)
}

impl<T: Field> LieAlgebra<T> {
    pub fn heisenberg() -> Self {
        Self::from_brackets(3, [(0, 1, vec![(2, T::one())])]).expect("static table")
    }

    pub fn sl2() -> Self {
        let two = T::from_i64(2);
        Self::from_brackets(
            3,
            [
                (0, 1, vec![(2, T::one())]),
                (2, 0, vec![(0, two.clone())]),
                (2, 1, vec![(1, -two)]),
            ],
        )
        .expect("static table")
    }

    /// Zassenhaus algebra `W_1(n)` over a prime field of characteristic `p`,
    /// of dimension `p^n`.
    pub fn zassenhaus(n: u32) -> Result<Self> {
        let p = T::characteristic();
        if p == 0 {
            return Err(Error::Precondition("zassenhaus needs a prime field".into()));
        }
        if n == 0 {
            return Err(Error::Precondition("zassenhaus needs n >= 1".into()));
        }
        let size = (p as usize)
            .checked_pow(n)
            .filter(|&s| s <= ZASSENHAUS_CAP)
            .ok_or_else(|| Error::CapExceeded {
                what: "zassenhaus dimension p^n".into(),
                cap: ZASSENHAUS_CAP,
                got: (p as u128).saturating_pow(n).min(usize::MAX as u128) as usize,
            })?;
        let binom = pascal_mod(2 * size, p);
        // C(m, r) with C = 0 outside 0 <= r <= m
        let c = |m: i64, r: i64| -> i64 {
            if m < 0 || r < 0 || r > m {
                0
            } else {
                binom[m as usize][r as usize]
            }
        };
        let top = size as i64 - 2;
        let mut brackets = Vec::new();
        for i in -1..=top {
            for j in i + 1..=top {
                let s = i + j;
                if s < -1 || s > top {
                    continue;
                }
                let coef = c(s + 1, j) - c(s + 1, i);
                if coef.rem_euclid(p as i64) != 0 {
                    brackets.push((
                        (i + 1) as usize,
                        (j + 1) as usize,
                        vec![((s + 1) as usize, T::from_i64(coef))],
                    ));
                }
            }
        }
        Self::from_brackets(size, brackets)
    }

    /// `W_G` for `G = Z/p`: `[e_α, e_β] = (β - α) e_{α+β}`.
    pub fn witt_mod_p() -> Result<Self> {
        let p = T::characteristic() as usize;
        if p == 0 {
            return Err(Error::Precondition("witt_mod_p needs a prime field".into()));
        }
        let mut brackets = Vec::new();
        for a in 0..p {
            for b in a + 1..p {
                brackets.push((a, b, vec![((a + b) % p, T::from_i64((b - a) as i64))]));
            }
        }
        Self::from_brackets(p, brackets)
    }
}

fn pascal_mod(rows: usize, p: u32) -> Vec<Vec<i64>> {
    let p = i64::from(p);
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(rows + 1);
    for m in 0..=rows {
        let mut row = vec![1i64; m + 1];
        for r in 1..m {
            row[r] = (out[m - 1][r - 1] + out[m - 1][r]) % p;
        }
        out.push(row);
    }
    out
}

/// Canonical basis of `span{[a, b] : a ∈ A, b ∈ B}`.
pub fn subspace_bracket<T: Field>(l: &LieAlgebra<T>, a: &Subspace<T>, b: &Subspace<T>) -> Result<Subspace<T>> {
    for s in [a, b] {
        if s.ambient() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: s.ambient(),
            });
        }
    }
    let mut products = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            products.push(l.bracket(x, y)?);
        }
    }
    Subspace::span(l.dim(), &products)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    type Q = Rational;
    type F5 = Fp<5>;
    type F7 = Fp<7>;

    fn e<T: Field>(n: usize, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        v
    }

    fn ints<T: Field>(v: &[i64]) -> Vec<T> {
        v.iter().map(|&x| T::from_i64(x)).collect()
    }

    #[test]
    fn pair_index_is_a_bijection() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in i + 1..n {
                let k = pair_index(n, i, j);
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn constructors_validate() {
        assert!(LieAlgebra::<Q>::abelian(4).validate().is_ok());
        assert!(LieAlgebra::<Q>::heisenberg().validate().is_ok());
        assert!(LieAlgebra::<Q>::sl2().validate().is_ok());
        assert!(LieAlgebra::<F5>::sl2().validate().is_ok());
        assert!(LieAlgebra::<F5>::witt_mod_p().unwrap().validate().is_ok());
        assert!(LieAlgebra::<F7>::witt_mod_p().unwrap().validate().is_ok());
        assert!(LieAlgebra::<Fp<3>>::zassenhaus(2).unwrap().validate().is_ok());
        assert!(LieAlgebra::<F5>::zassenhaus(1).unwrap().validate().is_ok());
        assert!(LieAlgebra::<F7>::zassenhaus(1).unwrap().validate().is_ok());
        let cur = LieAlgebra::<Q>::sl2().current(3).unwrap();
        assert!(cur.validate().is_ok());
        let sum = LieAlgebra::<Q>::sl2().direct_sum(&LieAlgebra::heisenberg());
        assert!(sum.validate().is_ok());
    }

    #[test]
    fn sl2_table() {
        let l = LieAlgebra::<Q>::sl2();
        let (ev, fv, hv) = (e::<Q>(3, 0), e::<Q>(3, 1), e::<Q>(3, 2));
        assert_eq!(l.bracket(&hv, &ev).unwrap(), ints::<Q>(&[2, 0, 0]));
        assert_eq!(l.bracket(&hv, &fv).unwrap(), ints::<Q>(&[0, -2, 0]));
        assert_eq!(l.bracket(&ev, &fv).unwrap(), ints::<Q>(&[0, 0, 1]));
        assert_eq!(l.bracket(&ev, &ev).unwrap(), ints::<Q>(&[0, 0, 0]));
    }

    #[test]
    fn heisenberg_table() {
        let l = LieAlgebra::<Q>::heisenberg();
        assert_eq!(l.basis_bracket(0, 1), ints::<Q>(&[0, 0, 1]));
        assert_eq!(l.basis_bracket(1, 0), ints::<Q>(&[0, 0, -1]));
        assert_eq!(l.basis_bracket(0, 2), ints::<Q>(&[0, 0, 0]));
        assert_eq!(l.basis_bracket(1, 2), ints::<Q>(&[0, 0, 0]));
    }

    #[test]
    fn tampered_sl2_reports_triple() {
        // [h, e] = 4e instead of 2e
        let l = LieAlgebra::<Q>::from_brackets(
            3,
            [
                (0, 1, vec![(2, Q::one())]),
                (2, 0, vec![(0, Q::from_i64(4))]),
                (2, 1, vec![(1, Q::from_i64(-2))]),
            ],
        )
        .unwrap();
        let v = l.validate().unwrap_err();
        assert_eq!(v.triple, (0, 1, 2));
        assert_eq!(v.defect, ints::<Q>(&[0, 0, 2]));

        // doubling [e, f] alone only rescales h and keeps Jacobi intact
        let rescaled = LieAlgebra::<Q>::from_brackets(
            3,
            [
                (0, 1, vec![(2, Q::from_i64(2))]),
                (2, 0, vec![(0, Q::from_i64(2))]),
                (2, 1, vec![(1, Q::from_i64(-2))]),
            ],
        )
        .unwrap();
        assert!(rescaled.validate().is_ok());
    }

    #[test]
    fn zassenhaus_values() {
        let l = LieAlgebra::<F5>::zassenhaus(1).unwrap();
        assert_eq!(l.dim(), 5);
        // [e_{-1}, e_0] = e_{-1}
        assert_eq!(l.structure(0, 1), vec![(0, F5::one())]);
        // [e_{-1}, e_1] = (C(1,1) - C(1,-1)) e_0 = e_0
        assert_eq!(l.structure(0, 2), vec![(1, F5::one())]);
        // [e_0, e_1] = (C(2,1) - C(2,0)) e_1 = e_1
        assert_eq!(l.structure(1, 2), vec![(2, F5::one())]);
        // [e_1, e_2] = (C(4,2) - C(4,1)) e_3 = 2 e_3, and [e_2, e_3] leaves the grading
        assert_eq!(l.structure(2, 3), vec![(4, F5::new(2))]);
        assert!(l.structure(3, 4).is_empty());
        assert_eq!(LieAlgebra::<F5>::zassenhaus(2).unwrap().dim(), 25);
        assert!(matches!(
            LieAlgebra::<F5>::zassenhaus(4),
            Err(Error::CapExceeded { .. })
        ));
        assert!(LieAlgebra::<Q>::zassenhaus(1).is_err());
    }

    #[test]
    fn witt_values() {
        let l = LieAlgebra::<F5>::witt_mod_p().unwrap();
        assert_eq!(l.basis_bracket(1, 2), ints::<F5>(&[0, 0, 0, 1, 0]));
        // [e_3, e_4] = e_2 since 3 + 4 = 2 mod 5
        assert_eq!(l.basis_bracket(3, 4), ints::<F5>(&[0, 0, 1, 0, 0]));
        assert!(l.basis_bracket(2, 2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn trivial_centers() {
        assert!(LieAlgebra::<F5>::witt_mod_p().unwrap().center().is_zero());
        assert!(LieAlgebra::<F7>::witt_mod_p().unwrap().center().is_zero());
        assert!(LieAlgebra::<F5>::zassenhaus(1).unwrap().center().is_zero());
        assert!(LieAlgebra::<F7>::zassenhaus(1).unwrap().center().is_zero());
        assert_eq!(
            LieAlgebra::<Q>::heisenberg().center(),
            Subspace::coordinate(3, &[2]).unwrap()
        );
        assert_eq!(LieAlgebra::<Q>::abelian(3).center().dim(), 3);
    }

    #[test]
    fn current_and_direct_sum() {
        let sl2 = LieAlgebra::<Q>::sl2();
        assert_eq!(sl2.current(1).unwrap(), sl2);
        let c2 = sl2.current(2).unwrap();
        assert_eq!(c2.dim(), 6);
        // e⊗t = 3, f⊗t = 4
        assert!(c2.structure(3, 4).is_empty());
        // [e, f⊗t] = h⊗t
        assert_eq!(c2.structure(0, 4), vec![(5, Q::one())]);
        let ab = LieAlgebra::<Q>::abelian(2).current(3).unwrap();
        assert_eq!(ab.dim(), 6);
        assert!(ab.is_abelian());
        assert!(sl2.current(0).is_err());

        assert_eq!(
            LieAlgebra::<Q>::abelian(1).direct_sum(&LieAlgebra::abelian(1)),
            LieAlgebra::abelian(2)
        );
        let s = sl2.direct_sum(&LieAlgebra::abelian(1));
        assert_eq!(s.dim(), 4);
        for i in 0..3 {
            assert!(s.structure(i, 3).is_empty());
        }
    }

    #[test]
    fn subspace_brackets() {
        let h = LieAlgebra::<Q>::heisenberg();
        let xy = Subspace::coordinate(3, &[0, 1]).unwrap();
        assert_eq!(
            subspace_bracket(&h, &xy, &xy).unwrap(),
            Subspace::coordinate(3, &[2]).unwrap()
        );
        assert!(subspace_bracket(&h, &xy, &Subspace::zero(3)).unwrap().is_zero());
        let s = LieAlgebra::<Q>::sl2();
        let hs = Subspace::coordinate(3, &[2]).unwrap();
        let es = Subspace::coordinate(3, &[0]).unwrap();
        assert_eq!(subspace_bracket(&s, &hs, &es).unwrap(), es);
        assert!(subspace_bracket(&s, &hs, &Subspace::zero(4)).is_err());
    }

    #[test]
    fn automorphisms_of_sl2() {
        let s = LieAlgebra::<Q>::sl2();
        assert!(s.is_automorphism(&Matrix::identity(3)));
        let swap = Matrix::<Q>::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        assert!(s.is_automorphism(&swap));
        let scale_e = Matrix::<Q>::diagonal(&ints(&[2, 1, 1]));
        assert!(!s.is_automorphism(&scale_e));
        assert!(!s.is_automorphism(&Matrix::scalar(3, Q::from_i64(2))));
        assert!(!s.is_automorphism(&Matrix::zeros(3, 3)));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let l = LieAlgebra::<F5>::zassenhaus(1).unwrap();
        let doc = l.to_json();
        assert_eq!(doc["field"], json!({"kind": "GF", "p": 5}));
        assert_eq!(LieAlgebra::<F5>::from_json(&doc).unwrap(), l);
        assert!(matches!(
            LieAlgebra::<Fp<7>>::from_json(&doc),
            Err(Error::FieldMismatch { .. })
        ));
        let q = LieAlgebra::<Q>::sl2();
        let qdoc = q.to_json();
        assert_eq!(qdoc["brackets"][1]["terms"][0][1], json!("-2"));
        assert_eq!(LieAlgebra::<Q>::from_json(&qdoc).unwrap(), q);
        let bad = json!({"field": {"kind": "Q"}, "dim": 2, "brackets": [{"i": 1, "j": 0, "terms": []}]});
        assert!(LieAlgebra::<Q>::from_json(&bad).is_err());
        let oob = json!({"field": {"kind": "Q"}, "dim": 2, "brackets": [{"i": 0, "j": 1, "terms": [[5, "1"]]}]});
        assert!(matches!(LieAlgebra::<Q>::from_json(&oob), Err(Error::Parse(_))));
    }

    fn qvec(n: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec(-4i64..=4, n).prop_map(|v| ints(&v))
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric_and_matches_ad(x in qvec(6), y in qvec(6)) {
            let l = LieAlgebra::<Q>::sl2().current(2).unwrap();
            let xy = l.bracket(&x, &y).unwrap();
            let yx = l.bracket(&y, &x).unwrap();
            prop_assert_eq!(xy.clone(), yx.into_iter().map(|v| -v).collect::<Vec<_>>());
            prop_assert_eq!(l.ad(&x).unwrap().apply(&y), xy);
            prop_assert!(l.bracket(&x, &x).unwrap().iter().all(|v| v.is_zero()));
        }

        #[test]
        fn bracket_is_bilinear(x in qvec(5), y in qvec(5), z in qvec(5), c in -3i64..=3) {
            let l = LieAlgebra::<Q>::sl2().direct_sum(&LieAlgebra::abelian(2));
            let c = Q::from_i64(c);
            let xz: Vec<Q> = x.iter().zip(&z).map(|(a, b)| a.clone() * c.clone() + b.clone()).collect();
            let lhs = l.bracket(&xz, &y).unwrap();
            let rhs: Vec<Q> = l.bracket(&x, &y).unwrap().into_iter()
                .zip(l.bracket(&z, &y).unwrap())
                .map(|(a, b)| a * c.clone() + b)
                .collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
