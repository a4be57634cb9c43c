//! Jordan-algebra structure of a space of Hom-Lie maps.
//!
//! The product is the anticommutator `φ ∗ ψ = ½(φψ + ψφ)`, optionally twisted
//! by an invertible map `α`. Besides closure tests this module harvests
//! idempotent and square-zero elements from seeded candidate streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homspaces::{is_hom_lie, module_action, MapSpace};
use crate::liealg::LieAlgebra;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Field;
use crate::spectral::{idempotent_polynomial, is_idempotent, is_invertible, min_poly, IdempotentRoute};
use crate::subspace::Subspace;

pub const DEFAULT_BUDGET: usize = 64;

pub fn anticommutator<T: Field>(phi: &Matrix<T>, psi: &Matrix<T>) -> Matrix<T> {
    phi.mul(psi).add(&psi.mul(phi)).scale(&T::half())
}

/// A basis pair whose product leaves the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness<T> {
    pub pair: (usize, usize),
    pub product: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport<T> {
    pub closed: bool,
    pub witness: Option<ClosureWitness<T>>,
    /// `jordan_constants[i][j]` holds the coordinates of `φ_i ∗ φ_j`.
    pub jordan_constants: Option<Vec<Vec<Vec<T>>>>,
}

impl<T: Field> ClosureReport<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "closed": self.closed,
            "witness": self.witness.as_ref().map(|w| json!({
                "pair": [w.pair.0, w.pair.1],
                "product": w.product.to_json(),
            })),
            "jordan_constants": self.jordan_constants.as_ref().map(|c| {
                c.iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| v.iter().map(Field::to_json).collect::<Vec<_>>())
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            }),
        })
    }
}

fn closure_with<T, F>(s: &MapSpace<T>, product: F) -> ClosureReport<T>
where
    T: Field,
    F: Fn(&Matrix<T>, &Matrix<T>) -> Matrix<T>,
{
    let d = s.dim();
    let mut constants = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in i..d {
            let p = product(&s.basis()[i], &s.basis()[j]);
            match s.coords(&p) {
                Some(c) => {
                    constants[j][i] = c.clone();
                    constants[i][j] = c;
                }
                None => {
                    return ClosureReport {
                        closed: false,
                        witness: Some(ClosureWitness {
                            pair: (i, j),
                            product: p,
                        }),
                        jordan_constants: None,
                    }
                }
            }
        }
    }
    ClosureReport {
        closed: true,
        witness: None,
        jordan_constants: Some(constants),
    }
}

/// Whether `½(φ_i φ_j + φ_j φ_i)` stays in the span for all `i ≤ j`.
pub fn anticommutator_closure<T: Field>(s: &MapSpace<T>) -> ClosureReport<T> {
    closure_with(s, anticommutator)
}

/// Whether `φ²` and `(φ + ψ)²` stay in the span for all basis maps.
pub fn square_closure<T: Field>(s: &MapSpace<T>) -> bool {
    let b = s.basis();
    (0..b.len()).all(|i| {
        s.contains(&b[i].mul(&b[i]))
            && (i + 1..b.len()).all(|j| {
                let sum = b[i].add(&b[j]);
                s.contains(&sum.mul(&sum))
            })
    })
}

/// Whether `f(φ)` lies in the span. Needs `φ` in the span and the span
/// closed under the anticommutator.
pub fn polynomial_closure_spotcheck<T: Field>(s: &MapSpace<T>, phi: &Matrix<T>, f: &Poly<T>) -> Result<bool> {
    if !s.contains(phi) {
        return Err(Error::Precondition("map is not in the space".into()));
    }
    if !anticommutator_closure(s).closed {
        return Err(Error::Precondition(
            "space is not closed under the anticommutator".into(),
        ));
    }
    Ok(s.contains(&f.eval_matrix(phi)))
}

/// Per-element data recorded during a harvest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanElementFacts<T> {
    pub coords: Vec<T>,
    pub rank: usize,
    pub nilpotent: bool,
    pub invertible: bool,
}

impl<T: Field> JordanElementFacts<T> {
    pub fn of(coords: Vec<T>, m: &Matrix<T>) -> Self {
        let nilpotent = min_poly(m)
            .map(|mu| mu.coeffs().iter().rev().skip(1).all(num_traits::Zero::is_zero))
            .unwrap_or(false);
        JordanElementFacts {
            coords,
            rank: m.rank(),
            nilpotent,
            invertible: is_invertible(m),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coords": self.coords.iter().map(Field::to_json).collect::<Vec<_>>(),
            "rank": self.rank,
            "nilpotent": self.nilpotent,
            "invertible": self.invertible,
        })
    }
}

/// Deterministic stream of coordinate vectors: basis vectors, pairwise sums,
/// then seeded random combinations.
pub struct CandidateStream<T> {
    d: usize,
    stage: usize,
    i: usize,
    j: usize,
    rng: ChaCha8Rng,
    _field: std::marker::PhantomData<T>,
}

/// Coefficient height of random rational candidates.
pub const CANDIDATE_HEIGHT: u32 = 3;

impl<T: Field> CandidateStream<T> {
    pub fn new(d: usize, seed: u64) -> Self {
        CandidateStream {
            d,
            stage: 0,
            i: 0,
            j: 1,
            rng: ChaCha8Rng::seed_from_u64(seed),
            _field: std::marker::PhantomData,
        }
    }

    fn unit(&self, idx: &[usize]) -> Vec<T> {
        let mut v = vec![T::zero(); self.d];
        for &k in idx {
            v[k] = T::one();
        }
        v
    }
}

impl<T: Field> Iterator for CandidateStream<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.d == 0 {
            return None;
        }
        loop {
            match self.stage {
                0 if self.i < self.d => {
                    self.i += 1;
                    return Some(self.unit(&[self.i - 1]));
                }
                0 => {
                    self.stage = 1;
                    self.i = 0;
                    self.j = 1;
                }
                1 if self.j < self.d => {
                    let v = self.unit(&[self.i, self.j]);
                    self.j += 1;
                    if self.j == self.d {
                        self.i += 1;
                        self.j = self.i + 1;
                    }
                    return Some(v);
                }
                1 => self.stage = 2,
                _ => {
                    let v = (0..self.d)
                        .map(|_| T::sample(&mut self.rng, CANDIDATE_HEIGHT))
                        .collect();
                    return Some(v);
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarvestedIdempotent<T> {
    /// Candidate the idempotent was extracted from.
    pub source: JordanElementFacts<T>,
    pub poly: Poly<T>,
    pub route: IdempotentRoute,
    pub matrix: Matrix<T>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentHarvest<T> {
    pub examined: Vec<JordanElementFacts<T>>,
    pub found: Vec<HarvestedIdempotent<T>>,
    /// Idempotents discarded because they failed the Hom-Jacobi check.
    pub rejected: usize,
}

/// Apply the idempotent-polynomial construction to `budget` candidates and
/// keep the distinct results other than `0` and `id` that are Hom-Lie.
pub fn harvest_idempotents<T: Field>(
    l: &LieAlgebra<T>,
    s: &MapSpace<T>,
    budget: usize,
    seed: u64,
) -> IdempotentHarvest<T> {
    let n = s.algebra_dim();
    let mut out = IdempotentHarvest {
        examined: Vec::new(),
        found: Vec::new(),
        rejected: 0,
    };
    for coords in CandidateStream::<T>::new(s.dim(), seed).take(budget) {
        let phi = s.element(&coords);
        let facts = JordanElementFacts::of(coords, &phi);
        out.examined.push(facts.clone());
        let Ok(e) = idempotent_polynomial(&phi) else {
            continue;
        };
        let rank = e.matrix.rank();
        if rank == 0 || rank == n || out.found.iter().any(|h| h.matrix == e.matrix) {
            continue;
        }
        if !is_idempotent(&e.matrix) || !is_hom_lie(l, &e.matrix) {
            out.rejected += 1;
            continue;
        }
        out.found.push(HarvestedIdempotent {
            source: facts,
            poly: e.poly,
            route: e.route,
            matrix: e.matrix,
            rank,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarvestedSquareZero<T> {
    pub source: JordanElementFacts<T>,
    /// `matrix = candidate^(2^exponent)`.
    pub exponent: u32,
    pub matrix: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroHarvest<T> {
    pub examined: Vec<JordanElementFacts<T>>,
    pub found: Vec<HarvestedSquareZero<T>>,
    pub rejected: usize,
}

/// Square repeatedly each nonzero nilpotent candidate until the next square
/// would vanish; keep the distinct Hom-Lie results.
pub fn harvest_square_zero<T: Field>(
    l: &LieAlgebra<T>,
    s: &MapSpace<T>,
    budget: usize,
    seed: u64,
) -> SquareZeroHarvest<T> {
    let mut out = SquareZeroHarvest {
        examined: Vec::new(),
        found: Vec::new(),
        rejected: 0,
    };
    for coords in CandidateStream::<T>::new(s.dim(), seed).take(budget) {
        let phi = s.element(&coords);
        let facts = JordanElementFacts::of(coords, &phi);
        out.examined.push(facts.clone());
        if !facts.nilpotent || phi.is_zero() {
            continue;
        }
        let (mut m, mut exponent) = (phi, 0);
        loop {
            let sq = m.mul(&m);
            if sq.is_zero() {
                break;
            }
            m = sq;
            exponent += 1;
        }
        if out.found.iter().any(|h| h.matrix == m) {
            continue;
        }
        if !is_hom_lie(l, &m) {
            out.rejected += 1;
            continue;
        }
        out.found.push(HarvestedSquareZero {
            source: facts,
            exponent,
            matrix: m,
        });
    }
    out
}

impl<T: Field> IdempotentHarvest<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "examined": self.examined.len(),
            "rejected": self.rejected,
            "found": self.found.iter().map(|h| json!({
                "source": h.source.to_json(),
                "poly": h.poly.to_json(),
                "route": h.route.name(),
                "rank": h.rank,
                "matrix": h.matrix.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl<T: Field> SquareZeroHarvest<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "examined": self.examined.len(),
            "rejected": self.rejected,
            "found": self.found.iter().map(|h| json!({
                "source": h.source.to_json(),
                "exponent": h.exponent,
                "matrix": h.matrix.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRadical<T> {
    /// Basis of the radical as maps.
    pub basis: Vec<Matrix<T>>,
    /// Coordinates of the radical inside the space.
    pub coords: Subspace<T>,
    /// The radical criterion is exact only in characteristic zero.
    pub certified: bool,
}

/// Kernel of the Gram matrix `trace(φ_i φ_j)` on a closed space.
pub fn trace_form_radical<T: Field>(s: &MapSpace<T>, report: &ClosureReport<T>) -> Result<TraceRadical<T>> {
    if !report.closed {
        return Err(Error::Precondition("trace form radical needs a closed space".into()));
    }
    let d = s.dim();
    let b = s.basis();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let t = b[i].mul(&b[j]).trace();
            g[(j, i)] = t.clone();
            g[(i, j)] = t;
        }
    }
    let coords = Subspace::kernel(&g);
    let basis = coords.basis().iter().map(|c| s.element(c)).collect();
    Ok(TraceRadical {
        basis,
        coords,
        certified: T::characteristic() == 0,
    })
}

impl<T: Field> TraceRadical<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.basis.len(),
            "basis": self.basis.iter().map(Matrix::to_json).collect::<Vec<_>>(),
            "status": if self.certified {
                "certified"
            } else {
                "heuristic: criterion not certified in positive characteristic"
            },
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistMode {
    /// `½ α^{-1}(φαψ + ψαφ)α` for any invertible `α`.
    General,
    /// `½(φαψ + ψαφ)` for an automorphism `α`.
    Automorphism,
}

impl TwistMode {
    pub fn name(self) -> &'static str {
        match self {
            TwistMode::General => "general",
            TwistMode::Automorphism => "automorphism",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedReport<T> {
    pub mode: TwistMode,
    pub closed: bool,
    pub witness: Option<ClosureWitness<T>>,
    /// Whether `α` is itself Hom-Lie, necessary for closure when `id` is in
    /// the space.
    pub alpha_is_hom_lie: bool,
    pub identity_in_space: bool,
}

impl<T: Field> TwistedReport<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode.name(),
            "closed": self.closed,
            "witness": self.witness.as_ref().map(|w| json!({
                "pair": [w.pair.0, w.pair.1],
                "product": w.product.to_json(),
            })),
            "alpha_is_hom_lie": self.alpha_is_hom_lie,
            "identity_in_space": self.identity_in_space,
        })
    }
}

pub fn twisted_product<T: Field>(
    phi: &Matrix<T>,
    psi: &Matrix<T>,
    alpha: &Matrix<T>,
    alpha_inv: Option<&Matrix<T>>,
) -> Matrix<T> {
    let inner = phi.mul(alpha).mul(psi).add(&psi.mul(alpha).mul(phi));
    let inner = match alpha_inv {
        Some(inv) => inv.mul(&inner).mul(alpha),
        None => inner,
    };
    inner.scale(&T::half())
}

pub fn twisted_closure<T: Field>(
    l: &LieAlgebra<T>,
    s: &MapSpace<T>,
    alpha: &Matrix<T>,
    mode: TwistMode,
) -> Result<TwistedReport<T>> {
    let inv = alpha.inverse()?;
    if mode == TwistMode::Automorphism && !l.is_automorphism(alpha) {
        return Err(Error::NotAutomorphism);
    }
    let outer = (mode == TwistMode::General).then_some(&inv);
    let report = closure_with(s, |a, b| twisted_product(a, b, alpha, outer));
    Ok(TwistedReport {
        mode,
        closed: report.closed,
        witness: report.witness,
        alpha_is_hom_lie: is_hom_lie(l, alpha),
        identity_in_space: s.contains(&Matrix::identity(s.algebra_dim())),
    })
}

/// `y • (φ ∗ ψ) = (y • φ) ∗ ψ + φ ∗ (y • ψ)` for all basis `y`, `φ`, `ψ`.
pub fn derivation_property<T: Field>(l: &LieAlgebra<T>, s: &MapSpace<T>) -> Result<bool> {
    if !anticommutator_closure(s).closed {
        return Err(Error::Precondition(
            "space is not closed under the anticommutator".into(),
        ));
    }
    let n = l.dim();
    let b = s.basis();
    for k in 0..n {
        let mut y = vec![T::zero(); n];
        y[k] = T::one();
        let acted: Vec<Matrix<T>> = b.iter().map(|phi| module_action(l, &y, phi)).collect::<Result<_>>()?;
        for i in 0..b.len() {
            for j in i..b.len() {
                let lhs = module_action(l, &y, &anticommutator(&b[i], &b[j]))?;
                let rhs = anticommutator(&acted[i], &b[j]).add(&anticommutator(&b[i], &acted[j]));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homspaces::{conjugate, hom_lie_basis};
    use crate::scalar::{Fp, Rational};
    use crate::spectral::char_poly;
    use num_traits::{One, Zero};

    type Q = Rational;
    type F5 = Fp<5>;

    fn shift<T: Field>(p: usize, sigma: usize) -> Matrix<T> {
        let mut m = Matrix::zeros(p, p);
        for a in 0..p {
            m[((a + sigma) % p, a)] = T::one();
        }
        m
    }

    fn chevalley() -> Matrix<Q> {
        Matrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])
    }

    #[test]
    fn candidate_stream_order() {
        let v: Vec<Vec<Q>> = CandidateStream::new(3, 0).take(7).collect();
        let ints = |x: &[i64]| x.iter().map(|&a| Q::from_i64(a)).collect::<Vec<_>>();
        assert_eq!(v[0], ints(&[1, 0, 0]));
        assert_eq!(v[2], ints(&[0, 0, 1]));
        assert_eq!(v[3], ints(&[1, 1, 0]));
        assert_eq!(v[4], ints(&[1, 0, 1]));
        assert_eq!(v[5], ints(&[0, 1, 1]));
        assert!(v[6].iter().all(|x| x.abs() <= Q::from_i64(3)));
        let again: Vec<Vec<Q>> = CandidateStream::new(3, 0).take(7).collect();
        assert_eq!(v, again);
        assert_eq!(CandidateStream::<Q>::new(1, 0).take(3).count(), 3);
        assert_eq!(CandidateStream::<Q>::new(0, 0).next(), None);
    }

    #[test]
    fn closures_on_small_algebras() {
        let ab = MapSpace::<Q>::full(2);
        assert!(anticommutator_closure(&ab).closed);
        assert!(square_closure(&ab));

        let sl2 = LieAlgebra::<Q>::sl2();
        let s = hom_lie_basis(&sl2).unwrap();
        let r = anticommutator_closure(&s);
        assert!(r.closed && r.witness.is_none());
        let c = r.jordan_constants.as_ref().unwrap();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                assert_eq!(c[i][j], c[j][i]);
                assert_eq!(s.element(&c[i][j]), anticommutator(&s.basis()[i], &s.basis()[j]));
            }
        }
        assert!(square_closure(&s));
    }

    #[test]
    fn non_closed_space_reports_witness() {
        // span{E_01, E_10} does not contain their anticommutator
        let mut a = Matrix::<Q>::zeros(2, 2);
        a[(0, 1)] = Q::one();
        let b = a.transpose();
        let s = MapSpace::new(2, vec![a, b]).unwrap();
        let r = anticommutator_closure(&s);
        assert!(!r.closed);
        let w = r.witness.unwrap();
        assert_eq!(w.pair, (0, 1));
        assert!(!s.contains(&w.product));
        assert!(r.jordan_constants.is_none());
        assert!(!square_closure(&s));
    }

    #[test]
    fn witt_constants_are_the_group_algebra() {
        let l = LieAlgebra::<F5>::witt_mod_p().unwrap();
        let shifts: Vec<Matrix<F5>> = (0..5).map(|s| shift(5, s)).collect();
        let s = MapSpace::new(5, shifts).unwrap();
        assert!(s.basis().iter().all(|m| is_hom_lie(&l, m)));
        let r = anticommutator_closure(&s);
        let c = r.jordan_constants.unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let mut expect = vec![F5::zero(); 5];
                expect[(a + b) % 5] = F5::one();
                assert_eq!(c[a][b], expect);
            }
        }
        assert!(harvest_idempotents(&l, &hom_lie_basis(&l).unwrap(), 64, 0)
            .found
            .is_empty());
    }

    #[test]
    fn polynomial_spotchecks() {
        let s = hom_lie_basis(&LieAlgebra::<Q>::sl2()).unwrap();
        for phi in s.basis() {
            assert!(polynomial_closure_spotcheck(&s, phi, &Poly::t()).unwrap());
            assert!(polynomial_closure_spotcheck(&s, phi, &Poly::monomial(Q::one(), 2)).unwrap());
            let chi = char_poly(phi).unwrap();
            assert!(chi.eval_matrix(phi).is_zero());
            assert!(polynomial_closure_spotcheck(&s, phi, &chi).unwrap());
        }
        let outside = Matrix::<Q>::from_i64_rows(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert!(polynomial_closure_spotcheck(&s, &outside, &Poly::t()).is_err());
    }

    #[test]
    fn harvests_on_full_spaces() {
        let h = LieAlgebra::<Q>::heisenberg();
        let s = hom_lie_basis(&h).unwrap();
        let idem = harvest_idempotents(&h, &s, 64, 0);
        assert!(!idem.found.is_empty());
        assert_eq!(idem.examined.len(), 64);
        for e in &idem.found {
            assert!(is_idempotent(&e.matrix) && is_hom_lie(&h, &e.matrix));
            assert!(0 < e.rank && e.rank < 3);
        }
        let ab = LieAlgebra::<Q>::abelian(2);
        let sq = harvest_square_zero(&ab, &MapSpace::full(2), 16, 0);
        assert!(!sq.found.is_empty());
        for z in &sq.found {
            assert!(!z.matrix.is_zero() && z.matrix.mul(&z.matrix).is_zero());
            let im = Subspace::image(&z.matrix);
            assert!(im.is_subspace_of(&Subspace::kernel(&z.matrix)));
        }
    }

    #[test]
    fn zassenhaus_square_zero() {
        let l = LieAlgebra::<F5>::zassenhaus(1).unwrap();
        let s = hom_lie_basis(&l).unwrap();
        let sq = harvest_square_zero(&l, &s, 64, 0);
        assert!(!sq.found.is_empty());
        assert!(sq.found.iter().all(|z| is_hom_lie(&l, &z.matrix)));
    }

    #[test]
    fn trace_radical_examples() {
        let id = MapSpace::<Q>::new(3, vec![Matrix::identity(3)]).unwrap();
        let r = trace_form_radical(&id, &anticommutator_closure(&id)).unwrap();
        assert!(r.basis.is_empty() && r.certified);
        let full = MapSpace::<Q>::full(2);
        assert!(trace_form_radical(&full, &anticommutator_closure(&full))
            .unwrap()
            .basis
            .is_empty());
        // span{id, E_02} on dimension 3: E_02 is square zero and trace-orthogonal
        let mut z = Matrix::<Q>::zeros(3, 3);
        z[(0, 2)] = Q::one();
        let s = MapSpace::new(3, vec![Matrix::identity(3), z.clone()]).unwrap();
        let r = trace_form_radical(&s, &anticommutator_closure(&s)).unwrap();
        assert_eq!(r.basis, vec![z]);
        let f = MapSpace::<F5>::new(5, vec![Matrix::identity(5)]).unwrap();
        let rf = trace_form_radical(&f, &anticommutator_closure(&f)).unwrap();
        assert!(!rf.certified);
        // trace(id) = 5 = 0 in GF(5)
        assert_eq!(rf.basis.len(), 1);
    }

    #[test]
    fn twisted_closure_modes() {
        let l = LieAlgebra::<Q>::sl2();
        let s = hom_lie_basis(&l).unwrap();
        let id = Matrix::identity(3);
        for mode in [TwistMode::General, TwistMode::Automorphism] {
            let t = twisted_closure(&l, &s, &id, mode).unwrap();
            assert_eq!(t.closed, anticommutator_closure(&s).closed);
            assert!(t.alpha_is_hom_lie && t.identity_in_space);
        }
        let ch = twisted_closure(&l, &s, &chevalley(), TwistMode::Automorphism).unwrap();
        assert_eq!(ch.alpha_is_hom_lie, is_hom_lie(&l, &chevalley()));
        if ch.closed {
            assert!(ch.alpha_is_hom_lie);
        }
        assert_eq!(
            twisted_closure(&l, &s, &Matrix::zeros(3, 3), TwistMode::General),
            Err(Error::Singular)
        );
        assert_eq!(
            twisted_closure(&l, &s, &Matrix::scalar(3, Q::from_i64(2)), TwistMode::Automorphism),
            Err(Error::NotAutomorphism)
        );
        let ab = LieAlgebra::<Q>::abelian(2);
        let alpha = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[0, 2]]);
        assert!(
            twisted_closure(&ab, &MapSpace::full(2), &alpha, TwistMode::General)
                .unwrap()
                .closed
        );
    }

    #[test]
    fn derivations_and_invariance() {
        let l = LieAlgebra::<Q>::sl2();
        let s = hom_lie_basis(&l).unwrap();
        assert!(derivation_property(&l, &s).unwrap());
        let ab = LieAlgebra::<Q>::abelian(2);
        assert!(derivation_property(&ab, &MapSpace::full(2)).unwrap());

        // closure is invariant under conjugating by an automorphism and scrambling
        let conj: Vec<Matrix<Q>> = s.basis().iter().map(|b| conjugate(b, &chevalley()).unwrap()).collect();
        let cs = MapSpace::spanned_by(3, &conj).unwrap();
        assert_eq!(anticommutator_closure(&cs).closed, anticommutator_closure(&s).closed);
        let scrambled: Vec<Matrix<Q>> = (0..s.dim())
            .map(|i| {
                // unit upper triangular, hence invertible
                let c: Vec<Q> = (0..s.dim())
                    .map(|j| match j.cmp(&i) {
                        std::cmp::Ordering::Less => Q::zero(),
                        std::cmp::Ordering::Equal => Q::one(),
                        std::cmp::Ordering::Greater => Q::from_i64((i * 7 + j * 3) as i64 % 5 - 2),
                    })
                    .collect();
                s.element(&c)
            })
            .collect();
        let ss = MapSpace::new(3, scrambled).unwrap();
        assert_eq!(anticommutator_closure(&ss).closed, anticommutator_closure(&s).closed);
    }

    #[test]
    fn report_json_shape() {
        let s = MapSpace::<F5>::new(2, vec![Matrix::identity(2)]).unwrap();
        let doc = anticommutator_closure(&s).to_json();
        assert_eq!(doc["closed"], true);
        assert_eq!(doc["witness"], Value::Null);
        assert_eq!(doc["jordan_constants"], json!([[[1]]]));
    }
}
