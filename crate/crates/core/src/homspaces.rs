//! Spaces of linear maps on a Lie algebra: Hom-Lie structures, the centroid,
//! the module action of `L` on `Hom(L, L)` and conjugation by automorphisms.
//!
//! A map `φ` is an `n × n` matrix whose column `b` is `φ(e_b)`. As a vector of
//! unknowns it is flattened row-major, so `φ_{ab}` sits at index `a * n + b`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{RowReducer, SpanIndex};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Largest algebra dimension accepted by the Hom-Lie and centroid solvers.
pub const HOMLIE_CAP: usize = 40;

/// Size of the linear system a space was cut out by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemShape {
    pub rows: usize,
    pub cols: usize,
}

/// Linearly independent maps together with a cached membership index.
#[derive(Clone, Debug)]
pub struct MapSpace<T> {
    n: usize,
    basis: Vec<Matrix<T>>,
    system: Option<SystemShape>,
    index: SpanIndex<T>,
}

impl<T: Field> PartialEq for MapSpace<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis && self.system == other.system
    }
}

impl<T: Field> MapSpace<T> {
    /// Fails with [`Error::Dependent`] if the maps are not independent.
    pub fn new(n: usize, basis: Vec<Matrix<T>>) -> Result<Self> {
        for m in &basis {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if m.rows() != n { m.rows() } else { m.cols() },
                });
            }
        }
        let flat: Vec<Vec<T>> = basis.iter().map(|m| m.as_slice().to_vec()).collect();
        let index = SpanIndex::new(n * n, &flat)?;
        Ok(MapSpace {
            n,
            basis,
            system: None,
            index,
        })
    }

    /// Independent maps drawn from an arbitrary spanning list, in the
    /// canonical (RREF) basis of their span.
    pub fn spanned_by(n: usize, maps: &[Matrix<T>]) -> Result<Self> {
        let mut red = RowReducer::new(n * n);
        for m in maps {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows(),
                });
            }
            red.add_dense(m.as_slice().to_vec());
        }
        let rref = red.into_rref();
        let basis = (0..rref.rank)
            .map(|r| Matrix::from_vec(n, n, rref.reduced.row(r).to_vec()))
            .collect::<Result<_>>()?;
        Self::new(n, basis)
    }

    /// All of `Hom(L, L)`, basis of matrix units in row-major order.
    pub fn full(n: usize) -> Self {
        let basis = (0..n * n)
            .map(|u| {
                let mut m = Matrix::zeros(n, n);
                m[(u / n, u % n)] = T::one();
                m
            })
            .collect();
        Self::new(n, basis).expect("matrix units are independent")
    }

    fn from_kernel(n: usize, kernel: Vec<Vec<T>>, system: SystemShape) -> Self {
        let basis = kernel
            .into_iter()
            .map(|v| Matrix::from_vec(n, n, v).expect("n^2 unknowns"))
            .collect();
        let mut s = Self::new(n, basis).expect("kernel bases are independent");
        s.system = Some(system);
        s
    }

    /// Dimension of the algebra the maps act on.
    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    pub fn system(&self) -> Option<SystemShape> {
        self.system
    }

    pub fn contains(&self, m: &Matrix<T>) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.index.contains(m.as_slice())
    }

    /// Coordinates of `m` in the basis, `None` outside the span.
    pub fn coords(&self, m: &Matrix<T>) -> Option<Vec<T>> {
        if m.rows() != self.n || m.cols() != self.n {
            return None;
        }
        self.index.coords(m.as_slice())
    }

    /// The element with the given coordinates.
    pub fn element(&self, coords: &[T]) -> Matrix<T> {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        let mut out = Matrix::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.n == other.n && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn to_json(&self) -> Value {
        let mut doc = json!({
            "algebra_dim": self.n,
            "dim": self.dim(),
            "basis": self.basis.iter().map(Matrix::to_json).collect::<Vec<_>>(),
        });
        if let Some(s) = self.system {
            doc["system"] = json!({"rows": s.rows, "cols": s.cols});
        }
        doc
    }
}

fn check_cap<T: Field>(l: &LieAlgebra<T>, what: &str) -> Result<()> {
    if l.dim() > HOMLIE_CAP {
        return Err(Error::CapExceeded {
            what: what.into(),
            cap: HOMLIE_CAP,
            got: l.dim(),
        });
    }
    Ok(())
}

/// Sparse `ad([e_i, e_j])` as `(row, col, value)` triples, for every `i < j`.
struct BracketAds<T> {
    n: usize,
    ads: Vec<Vec<(usize, usize, T)>>,
}

impl<T: Field> BracketAds<T> {
    fn new(l: &LieAlgebra<T>) -> Self {
        let n = l.dim();
        let table = l.structure_table();
        let mut ads = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
                for (m, s) in &table[i * n + j] {
                    for a in 0..n {
                        for (c, t) in &table[m * n + a] {
                            let e = acc.entry((*c, a)).or_insert_with(T::zero);
                            *e = e.clone() + s.clone() * t.clone();
                        }
                    }
                }
                ads[i * n + j] = acc
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|((c, a), v)| (c, a, v))
                    .collect();
            }
        }
        BracketAds { n, ads }
    }

    /// Entries of `ad([e_i, e_j])` for any ordered pair.
    fn ad(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        let list: &[(usize, usize, T)] = if i == j { &[] } else { &self.ads[a * self.n + b] };
        list.iter()
            .map(move |(c, x, v)| (*c, *x, if neg { -v.clone() } else { v.clone() }))
    }

    /// Hom-Jacobi equations of the triple, one sparse row per output coordinate.
    fn hom_jacobi_rows(&self, i: usize, j: usize, k: usize, out: &mut [Vec<(usize, T)>]) {
        let n = self.n;
        for (p, q, r) in [(i, j, k), (k, i, j), (j, k, i)] {
            // [[e_p, e_q], φ(e_r)] = Σ_a φ_{a r} ad([e_p, e_q]) e_a
            for (c, a, v) in self.ad(p, q) {
                out[c].push((a * n + r, v));
            }
        }
    }
}

fn hom_lie_system<T: Field>(l: &LieAlgebra<T>, ordered: bool) -> Result<MapSpace<T>> {
    check_cap(l, "hom_lie dimension")?;
    let n = l.dim();
    let ads = BracketAds::new(l);
    let mut red = RowReducer::new(n * n);
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    let mut triples = 0usize;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !ordered && !(i < j && j < k) {
                    continue;
                }
                triples += 1;
                ads.hom_jacobi_rows(i, j, k, &mut rows);
                for row in rows.iter_mut() {
                    if !row.is_empty() {
                        red.add_sparse(row);
                        row.clear();
                    }
                }
            }
        }
    }
    let shape = SystemShape {
        rows: triples * n,
        cols: n * n,
    };
    Ok(MapSpace::from_kernel(n, red.kernel_basis(), shape))
}

/// Solutions of the Hom-Jacobi equation, from the equations of the triples
/// `i < j < k`.
pub fn hom_lie_basis<T: Field>(l: &LieAlgebra<T>) -> Result<MapSpace<T>> {
    hom_lie_system(l, false)
}

/// Same space, generated from every ordered triple.
pub fn hom_lie_basis_all_triples<T: Field>(l: &LieAlgebra<T>) -> Result<MapSpace<T>> {
    hom_lie_system(l, true)
}

/// Cyclic Hom-Jacobi sum on basis vectors, evaluated directly.
pub fn hom_jacobi_defect<T: Field>(l: &LieAlgebra<T>, phi: &Matrix<T>, i: usize, j: usize, k: usize) -> Vec<T> {
    let n = l.dim();
    let mut out = vec![T::zero(); n];
    for (p, q, r) in [(i, j, k), (k, i, j), (j, k, i)] {
        let b = l.basis_bracket(p, q);
        let t = l.bracket(&b, &phi.column(r)).expect("ambient length");
        out = out.into_iter().zip(t).map(|(a, b)| a + b).collect();
    }
    out
}

pub fn is_hom_lie<T: Field>(l: &LieAlgebra<T>, phi: &Matrix<T>) -> bool {
    let n = l.dim();
    if phi.rows() != n || phi.cols() != n {
        return false;
    }
    (0..n)
        .all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| hom_jacobi_defect(l, phi, i, j, k).iter().all(|x| x.is_zero()))))
}

/// Maps with `φ([x, y]) = [φ(x), y]`, from the equations of all ordered
/// basis pairs.
pub fn centroid_basis<T: Field>(l: &LieAlgebra<T>) -> Result<MapSpace<T>> {
    check_cap(l, "centroid dimension")?;
    let n = l.dim();
    let table = l.structure_table();
    let mut red = RowReducer::new(n * n);
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            // φ([e_i, e_j]) = Σ_m c_ij^m φ(e_m), component c is Σ_m c_ij^m φ_{cm}
            for (m, s) in &table[i * n + j] {
                for (c, row) in rows.iter_mut().enumerate() {
                    row.push((c * n + m, s.clone()));
                }
            }
            // [φ(e_i), e_j] = Σ_a φ_{ai} [e_a, e_j]
            for a in 0..n {
                for (c, t) in &table[a * n + j] {
                    rows[*c].push((a * n + i, -t.clone()));
                }
            }
            for row in rows.iter_mut() {
                if !row.is_empty() {
                    red.add_sparse(row);
                    row.clear();
                }
            }
        }
    }
    let shape = SystemShape {
        rows: n * n * n,
        cols: n * n,
    };
    Ok(MapSpace::from_kernel(n, red.kernel_basis(), shape))
}

/// Matrix of `x ↦ [φ(x), y] - φ([x, y])`.
pub fn module_action<T: Field>(l: &LieAlgebra<T>, y: &[T], phi: &Matrix<T>) -> Result<Matrix<T>> {
    let n = l.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.rows(),
        });
    }
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut ej = vec![T::zero(); n];
        ej[j] = T::one();
        let first = l.bracket(&phi.column(j), y)?;
        let second = phi.apply(&l.bracket(&ej, y)?);
        columns.push(first.into_iter().zip(second).map(|(a, b)| a - b).collect());
    }
    Matrix::from_columns(n, &columns)
}

/// Whether `e_i • φ` stays in the span for every basis vector and basis map.
pub fn check_submodule<T: Field>(l: &LieAlgebra<T>, s: &MapSpace<T>) -> bool {
    let n = l.dim();
    s.algebra_dim() == n
        && (0..n).all(|i| {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            s.basis()
                .iter()
                .all(|phi| module_action(l, &e, phi).is_ok_and(|m| s.contains(&m)))
        })
}

/// `α^{-1} ∘ φ ∘ α`.
pub fn conjugate<T: Field>(phi: &Matrix<T>, alpha: &Matrix<T>) -> Result<Matrix<T>> {
    let inv = alpha.inverse()?;
    Ok(inv.mul(phi).mul(alpha))
}

/// Whether conjugation by the automorphism `α` maps the span into itself.
pub fn check_ad_invariance<T: Field>(l: &LieAlgebra<T>, s: &MapSpace<T>, alpha: &Matrix<T>) -> Result<bool> {
    if !alpha.is_square() || alpha.rank() != alpha.rows() {
        return Err(Error::Singular);
    }
    if !l.is_automorphism(alpha) {
        return Err(Error::NotAutomorphism);
    }
    for phi in s.basis() {
        if !s.contains(&conjugate(phi, alpha)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
