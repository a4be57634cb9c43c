//! Bilinear maps `F: L × L → L` and the cyclic equation
//! `[F(x,y),z] + [F(z,x),y] + [F(y,z),x] = 0`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homspaces::{hom_lie_basis, is_hom_lie, MapSpace, SystemShape};
use crate::liealg::{LieAlgebra, Terms};
use crate::linalg::RowReducer;
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Largest algebra dimension for unrestricted bilinear unknowns.
pub const FSPACE_CAP_ANY: usize = 10;
/// Largest algebra dimension for skew or symmetric unknowns.
pub const FSPACE_CAP_TAGGED: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Any,
    Skew,
    Sym,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Any => "any",
            Symmetry::Skew => "skew",
            Symmetry::Sym => "sym",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "any" | "none" => Ok(Symmetry::Any),
            "skew" => Ok(Symmetry::Skew),
            "sym" => Ok(Symmetry::Sym),
            other => Err(Error::Parse(format!(
                "symmetry must be any, skew or sym, got {other:?}"
            ))),
        }
    }

    fn cap(self) -> usize {
        match self {
            Symmetry::Any => FSPACE_CAP_ANY,
            _ => FSPACE_CAP_TAGGED,
        }
    }
}

/// Coefficients `F(e_i, e_j) = Σ_k F[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap<T> {
    n: usize,
    coeffs: Vec<T>,
    symmetry: Symmetry,
}

impl<T: Field> BilinearMap<T> {
    pub fn zero(n: usize) -> Self {
        BilinearMap {
            n,
            coeffs: vec![T::zero(); n * n * n],
            symmetry: Symmetry::Any,
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vec<T>) -> Self {
        let mut coeffs = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert_eq!(v.len(), n, "value length mismatch");
                coeffs.extend(v);
            }
        }
        BilinearMap {
            n,
            coeffs,
            symmetry: Symmetry::Any,
        }
    }

    /// The bracket of `L` as a bilinear map.
    pub fn bracket_of(l: &LieAlgebra<T>) -> Self {
        Self::from_fn(l.dim(), |i, j| l.basis_bracket(i, j)).tagged(Symmetry::Skew)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn value(&self, i: usize, j: usize) -> &[T] {
        let n = self.n;
        &self.coeffs[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn is_skew(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            self.value(i, i).iter().all(|x| x.is_zero())
                && (i + 1..n).all(|j| {
                    self.value(i, j)
                        .iter()
                        .zip(self.value(j, i))
                        .all(|(a, b)| (a.clone() + b.clone()).is_zero())
                })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| self.value(i, j) == self.value(j, i)))
    }

    /// Attach a symmetry tag. Panics if the coefficients do not have it.
    pub fn tagged(mut self, symmetry: Symmetry) -> Self {
        match symmetry {
            Symmetry::Skew => assert!(self.is_skew(), "map is not skew-symmetric"),
            Symmetry::Sym => assert!(self.is_symmetric(), "map is not symmetric"),
            Symmetry::Any => {}
        }
        self.symmetry = symmetry;
        self
    }

    /// Tag checking, without panicking.
    pub fn with_symmetry(self, symmetry: Symmetry) -> Result<Self> {
        let ok = match symmetry {
            Symmetry::Skew => self.is_skew(),
            Symmetry::Sym => self.is_symmetric(),
            Symmetry::Any => true,
        };
        if ok {
            Ok(self.tagged(symmetry))
        } else {
            Err(Error::Precondition(format!("map is not {}", symmetry.name())))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        BilinearMap {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            symmetry: if self.symmetry == other.symmetry {
                self.symmetry
            } else {
                Symmetry::Any
            },
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        BilinearMap {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            symmetry: self.symmetry,
        }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.coeffs
    }

    /// Nested `[i][j]` lists of `[k, scalar]` terms.
    pub fn to_json(&self) -> Value {
        let n = self.n;
        let table: Vec<Value> = (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| {
                            Value::Array(
                                self.value(i, j)
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, v)| !v.is_zero())
                                    .map(|(k, v)| json!([k, v.to_json()]))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        json!({"dim": n, "symmetry": self.symmetry.name(), "terms": table})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("bilinear map: missing \"dim\"".into()))? as usize;
        let symmetry = match v.get("symmetry").and_then(Value::as_str) {
            None => Symmetry::Any,
            Some(s) => Symmetry::parse(s)?,
        };
        let table = v
            .get("terms")
            .and_then(Value::as_array)
            .filter(|t| t.len() == n)
            .ok_or_else(|| Error::Parse("bilinear map: \"terms\" must be an n × n table".into()))?;
        let mut out = Self::zero(n);
        for (i, row) in table.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::Parse("bilinear map: rows must have n entries".into()))?;
            for (j, cell) in row.iter().enumerate() {
                for t in cell
                    .as_array()
                    .ok_or_else(|| Error::Parse("bilinear map: cells are term lists".into()))?
                {
                    let (k, s) = match t.as_array().map(Vec::as_slice) {
                        Some([k, s]) => (k.as_u64(), s),
                        _ => (None, t),
                    };
                    let k = k
                        .map(|k| k as usize)
                        .filter(|&k| k < n)
                        .ok_or_else(|| Error::Parse("bilinear map: bad term index".into()))?;
                    out.coeffs[(i * n + j) * n + k] = T::from_json(s)?;
                }
            }
        }
        out.with_symmetry(symmetry)
    }
}

fn check_dim<T: Field>(l: &LieAlgebra<T>, n: usize) -> Result<()> {
    if l.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: n,
        });
    }
    Ok(())
}

/// `[F(e_i,e_j), e_k] + [F(e_k,e_i), e_j] + [F(e_j,e_k), e_i]`.
pub fn f_equation_defect<T: Field>(l: &LieAlgebra<T>, f: &BilinearMap<T>, i: usize, j: usize, k: usize) -> Vec<T> {
    let n = l.dim();
    let e = |r: usize| {
        let mut v = vec![T::zero(); n];
        v[r] = T::one();
        v
    };
    let mut out = vec![T::zero(); n];
    for (a, b, r) in [(i, j, k), (k, i, j), (j, k, i)] {
        let t = l.bracket(f.value(a, b), &e(r)).expect("ambient length");
        out = out.into_iter().zip(t).map(|(x, y)| x + y).collect();
    }
    out
}

/// The cyclic equation on every ordered basis triple.
pub fn satisfies_f_equation<T: Field>(l: &LieAlgebra<T>, f: &BilinearMap<T>) -> Result<bool> {
    check_dim(l, f.dim())?;
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if f_equation_defect(l, f, i, j, k).iter().any(|x| !x.is_zero()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `F_φ(x, y) = [φx, y] + [x, φy]`.
pub fn f_of_phi<T: Field>(l: &LieAlgebra<T>, phi: &Matrix<T>) -> Result<BilinearMap<T>> {
    check_dim(l, phi.rows())?;
    let n = l.dim();
    let cols: Vec<Vec<T>> = (0..n).map(|j| phi.column(j)).collect();
    let e = |r: usize| {
        let mut v = vec![T::zero(); n];
        v[r] = T::one();
        v
    };
    Ok(BilinearMap::from_fn(n, |i, j| {
        let a = l.bracket(&cols[i], &e(j)).expect("ambient length");
        let b = l.bracket(&e(i), &cols[j]).expect("ambient length");
        a.into_iter().zip(b).map(|(x, y)| x + y).collect()
    })
    .tagged(Symmetry::Skew))
}

/// `F_{φ,ψ}(x, y) = [φx, ψy] + [ψx, φy]`.
pub fn f_of_pair<T: Field>(l: &LieAlgebra<T>, phi: &Matrix<T>, psi: &Matrix<T>) -> Result<BilinearMap<T>> {
    check_dim(l, phi.rows())?;
    check_dim(l, psi.rows())?;
    let n = l.dim();
    let pc: Vec<Vec<T>> = (0..n).map(|j| phi.column(j)).collect();
    let qc: Vec<Vec<T>> = (0..n).map(|j| psi.column(j)).collect();
    Ok(BilinearMap::from_fn(n, |i, j| {
        let a = l.bracket(&pc[i], &qc[j]).expect("ambient length");
        let b = l.bracket(&qc[i], &pc[j]).expect("ambient length");
        a.into_iter().zip(b).map(|(x, y)| x + y).collect()
    })
    .tagged(Symmetry::Skew))
}

/// Solution space of the cyclic equation within a symmetry class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSpace<T> {
    pub symmetry: Symmetry,
    pub basis: Vec<BilinearMap<T>>,
    pub system: SystemShape,
}

impl<T: Field> FSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &BilinearMap<T>) -> bool {
        let len = f.as_slice().len();
        let mut red = RowReducer::new(len);
        for b in &self.basis {
            red.add_dense(b.as_slice().to_vec());
        }
        red.contains(f.as_slice())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "symmetry": self.symmetry.name(),
            "dim": self.basis.len(),
            "system": {"rows": self.system.rows, "cols": self.system.cols},
            "basis": self.basis.iter().map(BilinearMap::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Maps the value slot `(a, b, m)` of `F` to an unknown and a sign.
struct Unknowns {
    n: usize,
    symmetry: Symmetry,
}

impl Unknowns {
    fn pair_count(&self) -> usize {
        let n = self.n;
        match self.symmetry {
            Symmetry::Any => n * n,
            Symmetry::Skew => n * (n - 1) / 2,
            Symmetry::Sym => n * (n + 1) / 2,
        }
    }

    fn count(&self) -> usize {
        self.pair_count() * self.n
    }

    // index of the unordered pair (a, b) with a < b (skew) or a <= b (sym)
    fn pair(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        match self.symmetry {
            Symmetry::Any => a * n + b,
            Symmetry::Skew => a * (2 * n - a - 1) / 2 + (b - a - 1),
            Symmetry::Sym => a * (2 * n - a + 1) / 2 + (b - a),
        }
    }

    fn slot(&self, a: usize, b: usize, m: usize) -> Option<(usize, bool)> {
        let n = self.n;
        match self.symmetry {
            Symmetry::Any => Some((self.pair(a, b) * n + m, false)),
            Symmetry::Skew => match a.cmp(&b) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Less => Some((self.pair(a, b) * n + m, false)),
                std::cmp::Ordering::Greater => Some((self.pair(b, a) * n + m, true)),
            },
            Symmetry::Sym => Some((self.pair(a.min(b), a.max(b)) * n + m, false)),
        }
    }

    fn expand<T: Field>(&self, v: &[T]) -> BilinearMap<T> {
        let n = self.n;
        BilinearMap::from_fn(n, |a, b| {
            (0..n)
                .map(|m| match self.slot(a, b, m) {
                    None => T::zero(),
                    Some((u, neg)) => {
                        if neg {
                            -v[u].clone()
                        } else {
                            v[u].clone()
                        }
                    }
                })
                .collect()
        })
        .tagged(self.symmetry)
    }
}

fn is_cyclic_canonical(i: usize, j: usize, k: usize) -> bool {
    let t = (i, j, k);
    t <= (j, k, i) && t <= (k, i, j)
}

fn f_rows<T: Field>(table: &[Terms<T>], u: &Unknowns, (i, j, k): (usize, usize, usize), out: &mut [Vec<(usize, T)>]) {
    let n = u.n;
    for (a, b, r) in [(i, j, k), (k, i, j), (j, k, i)] {
        // [F(e_a, e_b), e_r] = Σ_m F_{abm} [e_m, e_r]
        for m in 0..n {
            let Some((x, neg)) = u.slot(a, b, m) else {
                continue;
            };
            for (c, s) in &table[m * n + r] {
                out[*c].push((x, if neg { -s.clone() } else { s.clone() }));
            }
        }
    }
}

fn f_system<T: Field>(l: &LieAlgebra<T>, symmetry: Symmetry, dedup: bool) -> Result<FSpace<T>> {
    let n = l.dim();
    if n > symmetry.cap() {
        return Err(Error::CapExceeded {
            what: format!("fspace dimension for symmetry {}", symmetry.name()),
            cap: symmetry.cap(),
            got: n,
        });
    }
    let u = Unknowns { n, symmetry };
    let table = l.structure_table();
    let mut red = RowReducer::new(u.count());
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    let mut triples = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if dedup && !is_cyclic_canonical(i, j, k) {
                    continue;
                }
                triples += 1;
                f_rows(&table, &u, (i, j, k), &mut rows);
                for row in rows.iter_mut() {
                    if !row.is_empty() {
                        red.add_sparse(row);
                        row.clear();
                    }
                }
            }
        }
    }
    let basis = red.kernel_basis().iter().map(|v| u.expand(v)).collect();
    Ok(FSpace {
        symmetry,
        basis,
        system: SystemShape {
            rows: triples * n,
            cols: u.count(),
        },
    })
}

/// Canonical kernel basis of the cyclic equation, generated from one triple
/// per cyclic class.
pub fn f_space<T: Field>(l: &LieAlgebra<T>, symmetry: Symmetry) -> Result<FSpace<T>> {
    f_system(l, symmetry, true)
}

/// The same space from every ordered triple and a dense one-shot reduction.
pub fn f_space_naive<T: Field>(l: &LieAlgebra<T>, symmetry: Symmetry) -> Result<FSpace<T>> {
    let n = l.dim();
    if n > symmetry.cap() {
        return f_system(l, symmetry, false);
    }
    let u = Unknowns { n, symmetry };
    let table = l.structure_table();
    let mut data = Vec::new();
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                f_rows(&table, &u, (i, j, k), &mut rows);
                for row in rows.iter_mut() {
                    let mut dense = vec![T::zero(); u.count()];
                    for (x, v) in row.drain(..) {
                        dense[x] = dense[x].clone() + v;
                    }
                    data.extend(dense);
                    count += 1;
                }
            }
        }
    }
    let m = Matrix::from_vec(count, u.count(), data)?;
    let basis = m.kernel_basis().iter().map(|v| u.expand(v)).collect();
    Ok(FSpace {
        symmetry,
        basis,
        system: SystemShape {
            rows: count,
            cols: u.count(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub holds: bool,
    pub basis_checked: usize,
    pub trials: usize,
    /// Random maps that failed the Hom-Jacobi check and were tested.
    pub negatives: usize,
}

/// Forward direction on the Hom-Lie basis, converse on seeded random maps.
pub fn f_equation_equivalence_check<T: Field>(
    l: &LieAlgebra<T>,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    let s = hom_lie_basis(l)?;
    let mut holds = true;
    for phi in s.basis() {
        holds &= satisfies_f_equation(l, &f_of_phi(l, phi)?)?;
    }
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut negatives = 0;
    for _ in 0..trials {
        let phi = Matrix::from_vec(n, n, (0..n * n).map(|_| T::sample(&mut rng, 3)).collect())?;
        if is_hom_lie(l, &phi) {
            continue;
        }
        negatives += 1;
        holds &= !satisfies_f_equation(l, &f_of_phi(l, &phi)?)?;
    }
    Ok(EquivalenceReport {
        holds,
        basis_checked: s.dim(),
        trials,
        negatives,
    })
}

/// `F_{φ_i, φ_j}` satisfies the cyclic equation for every basis pair.
pub fn pair_maps_satisfy<T: Field>(l: &LieAlgebra<T>, s: &MapSpace<T>) -> Result<bool> {
    let b = s.basis();
    for i in 0..b.len() {
        for j in i..b.len() {
            if !satisfies_f_equation(l, &f_of_pair(l, &b[i], &b[j])?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixReport<T> {
    pub is_r_matrix: bool,
    /// `[φx, φy] - φ([φx, y] + [x, φy])`.
    pub defect: BilinearMap<T>,
    pub classical_ybe: bool,
    pub modified_ybe: bool,
}

impl<T: Field> RMatrixReport<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "is_r_matrix": self.is_r_matrix,
            "classical_ybe": self.classical_ybe,
            "modified_ybe": self.modified_ybe,
            "defect": self.defect.to_json(),
        })
    }
}

pub fn r_matrix_check<T: Field>(l: &LieAlgebra<T>, phi: &Matrix<T>) -> Result<RMatrixReport<T>> {
    check_dim(l, phi.rows())?;
    if !phi.is_square() {
        return Err(Error::NonSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    let n = l.dim();
    let fphi = f_of_phi(l, phi)?;
    let cols: Vec<Vec<T>> = (0..n).map(|j| phi.column(j)).collect();
    let defect = BilinearMap::from_fn(n, |i, j| {
        let a = l.bracket(&cols[i], &cols[j]).expect("ambient length");
        let b = phi.apply(fphi.value(i, j));
        a.into_iter().zip(b).map(|(x, y)| x - y).collect()
    })
    .tagged(Symmetry::Skew);
    let minus_bracket = BilinearMap::bracket_of(l).scale(&-T::one());
    Ok(RMatrixReport {
        is_r_matrix: satisfies_f_equation(l, &defect)?,
        classical_ybe: defect.is_zero(),
        modified_ybe: defect == minus_bracket,
        defect,
    })
}

/// Whether `[x, y]_φ = ½([φx, y] + [x, φy])` satisfies the Jacobi identity.
pub fn r_bracket_is_lie<T: Field>(l: &LieAlgebra<T>, phi: &Matrix<T>) -> Result<bool> {
    let f = f_of_phi(l, phi)?.scale(&T::half());
    let n = l.dim();
    let brackets = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| {
        let terms: Terms<T> = f
            .value(i, j)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect();
        (i, j, terms)
    });
    let r = LieAlgebra::from_brackets(n, brackets.collect::<Vec<_>>())?;
    Ok(r.validate().is_ok())
}
