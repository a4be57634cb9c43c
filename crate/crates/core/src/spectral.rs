//! Characteristic and minimal polynomials, the Jordan-Chevalley splitting, and
//! polynomial idempotents of the same rank.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Field;

fn require_square<T: Field>(m: &Matrix<T>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Characteristic polynomial `det(tI - M)`, via reduction to upper Hessenberg
/// form by similarity and the Hessenberg determinant recurrence.
pub fn char_poly<T: Field>(m: &Matrix<T>) -> Result<Poly<T>> {
    require_square(m)?;
    let n = m.rows();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap_rows(piv, j + 1);
            for r in 0..n {
                let a = h[(r, piv)].clone();
                let b = std::mem::replace(&mut h[(r, j + 1)], a);
                h[(r, piv)] = b;
            }
        }
        let inv = h[(j + 1, j)].inv().expect("nonzero pivot");
        for k in j + 2..n {
            if h[(k, j)].is_zero() {
                continue;
            }
            let u = h[(k, j)].clone() * inv.clone();
            for c in 0..n {
                let v = h[(j + 1, c)].clone();
                let cur = std::mem::replace(&mut h[(k, c)], T::zero());
                h[(k, c)] = cur - u.clone() * v;
            }
            for r in 0..n {
                let v = h[(r, k)].clone();
                let cur = std::mem::replace(&mut h[(r, j + 1)], T::zero());
                h[(r, j + 1)] = cur + u.clone() * v;
            }
        }
    }

    let mut p: Vec<Poly<T>> = Vec::with_capacity(n + 1);
    p.push(Poly::one());
    for m in 1..=n {
        let lin = Poly::new(vec![-h[(m - 1, m - 1)].clone(), T::one()]);
        let mut next = lin.mul(&p[m - 1]);
        let mut prod = T::one();
        for i in 1..m {
            prod = prod * h[(m - i, m - i - 1)].clone();
            if prod.is_zero() {
                break;
            }
            let c = h[(m - i - 1, m - 1)].clone() * prod.clone();
            next = next.sub(&p[m - i - 1].scale(&c));
        }
        p.push(next);
    }
    Ok(p.pop().expect("at least p_0"))
}

/// Monic least-degree annihilating polynomial, assembled as the least common
/// multiple of the Krylov relations of the standard basis vectors.
pub fn min_poly<T: Field>(m: &Matrix<T>) -> Result<Poly<T>> {
    require_square(m)?;
    let n = m.rows();
    let mut acc = Poly::one();
    for i in 0..n {
        let mut e = vec![T::zero(); n];
        e[i] = T::one();
        let rel = krylov_relation(m, e);
        acc = acc.lcm(&rel);
    }
    Ok(acc)
}

/// Minimal polynomial of `v` relative to `m`.
fn krylov_relation<T: Field>(m: &Matrix<T>, v: Vec<T>) -> Poly<T> {
    let n = m.rows();
    // stored (reduced vector, its pivot, combination as a polynomial in m)
    let mut stored: Vec<(Vec<T>, usize, Poly<T>)> = Vec::new();
    let mut current = v;
    for k in 0..=n {
        let mut vec = current.clone();
        let mut combo = Poly::monomial(T::one(), k);
        for (row, piv, c) in &stored {
            if vec[*piv].is_zero() {
                continue;
            }
            let f = vec[*piv].clone();
            for (x, y) in vec.iter_mut().zip(row) {
                let cur = std::mem::replace(x, T::zero());
                *x = cur - f.clone() * y.clone();
            }
            combo = combo.sub(&c.scale(&f));
        }
        match vec.iter().position(|x| !x.is_zero()) {
            None => return combo.monic(),
            Some(piv) => {
                let inv = vec[piv].inv().expect("nonzero pivot");
                let vec = vec.into_iter().map(|x| x * inv.clone()).collect();
                stored.push((vec, piv, combo.scale(&inv)));
            }
        }
        current = m.apply(&current);
    }
    unreachable!("a Krylov sequence in dimension {n} is dependent after {n} steps")
}

/// Additive Jordan-Chevalley decomposition `M = S + N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChevalley<T> {
    /// `S = poly(M)`.
    pub poly: Poly<T>,
    pub semisimple: Matrix<T>,
    pub nilpotent: Matrix<T>,
}

/// Newton iteration `s <- s - r(s) / r'(s)` in `K[t]/(χ)` on the radical `r`
/// of the characteristic polynomial, starting from `s = t`.
pub fn jordan_chevalley<T: Field>(m: &Matrix<T>) -> Result<JordanChevalley<T>> {
    let chi = char_poly(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(JordanChevalley {
            poly: Poly::zero(),
            semisimple: m.clone(),
            nilpotent: m.clone(),
        });
    }
    let r = chi.radical();
    let dr = r.derivative();
    let mut s = Poly::t().rem(&chi);
    // quadratic convergence: ceil(log2 n) steps suffice, the cap is slack
    for _ in 0..=usize::BITS {
        let rs = r.compose(&s, Some(&chi));
        if rs.is_zero() {
            let semisimple = s.eval_matrix(m);
            let nilpotent = m.sub(&semisimple);
            return Ok(JordanChevalley {
                poly: s,
                semisimple,
                nilpotent,
            });
        }
        let d = dr.compose(&s, Some(&chi));
        let dinv = d
            .inverse_mod(&chi)
            .expect("r'(s) is a unit modulo the characteristic polynomial");
        s = s.sub(&rs.mul(&dinv)).rem(&chi);
    }
    unreachable!("Newton iteration failed to converge")
}

/// Which construction produced an idempotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdempotentRoute {
    /// `f = 1 - χ(t)/χ(0)`.
    Invertible,
    /// `f ≡ 0 (mod t)`, `f ≡ 1 (mod g)` where the minimal polynomial is `t g(t)`.
    Semisimple,
    /// The semisimple route applied to the Jordan-Chevalley semisimple part.
    General,
}

impl IdempotentRoute {
    pub fn name(self) -> &'static str {
        match self {
            IdempotentRoute::Invertible => "invertible",
            IdempotentRoute::Semisimple => "semisimple",
            IdempotentRoute::General => "general",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdempotent<T> {
    pub poly: Poly<T>,
    pub matrix: Matrix<T>,
    pub route: IdempotentRoute,
}

/// A polynomial `f` with `f(M)` idempotent. The image of `f(M)` is the image
/// of the semisimple part of `M`; its rank agrees with `rank(M)` when `M` is
/// invertible or semisimple.
pub fn idempotent_polynomial<T: Field>(m: &Matrix<T>) -> Result<PolyIdempotent<T>> {
    let chi = char_poly(m)?;
    if let Some(poly) = invertible_route(&chi) {
        let matrix = poly.eval_matrix(m);
        return Ok(PolyIdempotent {
            poly,
            matrix,
            route: IdempotentRoute::Invertible,
        });
    }
    let mu = min_poly(m)?;
    if mu.is_squarefree() {
        let poly = semisimple_route(&mu);
        let matrix = poly.eval_matrix(m);
        return Ok(PolyIdempotent {
            poly,
            matrix,
            route: IdempotentRoute::Semisimple,
        });
    }
    let jc = jordan_chevalley(m)?;
    let s = &jc.semisimple;
    let inner = match invertible_route(&char_poly(s)?) {
        Some(g) => g,
        None => semisimple_route(&min_poly(s)?),
    };
    let poly = inner.compose(&jc.poly, Some(&chi));
    let matrix = poly.eval_matrix(m);
    debug_assert_eq!(matrix, inner.eval_matrix(s));
    Ok(PolyIdempotent {
        poly,
        matrix,
        route: IdempotentRoute::General,
    })
}

fn invertible_route<T: Field>(chi: &Poly<T>) -> Option<Poly<T>> {
    let c0 = chi.coeff(0);
    let inv = c0.inv()?;
    Some(Poly::one().sub(&chi.scale(&inv)))
}

/// `mu` squarefree with `mu(0) = 0`.
fn semisimple_route<T: Field>(mu: &Poly<T>) -> Poly<T> {
    let t = Poly::t();
    let g = mu.exact_div(&t);
    if g.degree() == Some(0) {
        return Poly::zero();
    }
    Poly::crt(&Poly::zero(), &t, &Poly::one(), &g).expect("t and g are coprime")
}

/// `M^k = 0` for some `k`.
pub fn is_nilpotent<T: Field>(m: &Matrix<T>) -> bool {
    m.is_square() && m.pow(m.rows() as u64).is_zero()
}

/// Index of nilpotency (`k` with `M^k = 0`, `M^{k-1} != 0`), when nilpotent.
pub fn nilpotency_index<T: Field>(m: &Matrix<T>) -> Option<usize> {
    let mu = min_poly(m).ok()?;
    let d = mu.degree()?;
    (mu == Poly::monomial(T::one(), d)).then_some(d)
}

pub fn is_invertible<T: Field>(m: &Matrix<T>) -> bool {
    m.is_square() && m.rank() == m.rows()
}

pub fn is_idempotent<T: Field>(m: &Matrix<T>) -> bool {
    m.is_square() && m.mul(m) == *m
}

impl<T: Field> JordanChevalley<T> {
    pub fn commute(&self) -> bool {
        self.semisimple.mul(&self.nilpotent) == self.nilpotent.mul(&self.semisimple)
    }
}
