//! Acceptance run: one line per criterion, exit status nonzero on any
//! unexpected outcome.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use homlie_core::binhom::{f_equation_equivalence_check, f_of_pair, f_space, pair_maps_satisfy, Symmetry};
use homlie_core::homspaces::{centroid_basis, check_ad_invariance, check_submodule, hom_lie_basis, is_hom_lie};
use homlie_core::jordancheck::{
    anticommutator_closure, derivation_property, harvest_idempotents, harvest_square_zero, square_closure,
    twisted_closure, TwistMode, DEFAULT_BUDGET,
};
use homlie_core::spectral::{
    idempotent_polynomial, is_idempotent, is_invertible, is_nilpotent, jordan_chevalley, min_poly,
};
use homlie_core::suits::{diamond_from_idempotent, heart_from_squarezero, verify_heart};
use homlie_core::{Field, Gf3, Gf5, Gf7, LieAlgebra, Matrix, Rational, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

/// Criteria whose literal statement is false; a pass here is reported as
/// unexpected.
const KNOWN_FALSE: &[u32] = &[9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Algebra<T> {
    name: String,
    l: LieAlgebra<T>,
}

fn alg<T>(name: &str, l: LieAlgebra<T>) -> Algebra<T> {
    Algebra {
        name: name.to_string(),
        l,
    }
}

fn matrix_q() -> Vec<Algebra<Q>> {
    let sl2 = LieAlgebra::<Q>::sl2();
    let mut v: Vec<Algebra<Q>> = (1..=4)
        .map(|n| alg(&format!("abelian({n})"), LieAlgebra::abelian(n)))
        .collect();
    v.push(alg("heisenberg", LieAlgebra::heisenberg()));
    v.push(alg("sl2", sl2.clone()));
    v.push(alg("current(sl2,2)", sl2.current(2).unwrap()));
    v.push(alg("sl2+abelian(1)", sl2.direct_sum(&LieAlgebra::abelian(1))));
    v
}

fn matrix_f5() -> Vec<Algebra<Gf5>> {
    vec![
        alg("witt_mod_p(5)", LieAlgebra::witt_mod_p().unwrap()),
        alg("zassenhaus(5,1)", LieAlgebra::zassenhaus(1).unwrap()),
    ]
}

fn shift<T: Field>(p: usize, sigma: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(p, p);
    for a in 0..p {
        m[((a + sigma) % p, a)] = T::one();
    }
    m
}

/// (e, f, h) ↦ (−f, −e, −h).
fn chevalley_involution() -> Matrix<Q> {
    Matrix::from_i64_rows(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, -1]])
}

fn c1() -> Outcome {
    let s = hom_lie_basis(&LieAlgebra::<Q>::sl2()).unwrap();
    outcome(s.dim() == 6, format!("dim {}", s.dim()))
}

fn c2() -> Outcome {
    let s = hom_lie_basis(&LieAlgebra::<Q>::sl2()).unwrap();
    let closed = anticommutator_closure(&s).closed;
    outcome(closed, format!("closed {closed}"))
}

fn c3() -> Outcome {
    let l = LieAlgebra::<Gf5>::witt_mod_p().unwrap();
    let s = hom_lie_basis(&l).unwrap();
    let shifts = (0..5).all(|sigma| is_hom_lie(&l, &shift(5, sigma)));
    let closed = anticommutator_closure(&s).closed;
    let found = harvest_idempotents(&l, &s, DEFAULT_BUDGET, 0).found.len();
    outcome(
        s.dim() == 5 && shifts && closed && found == 0,
        format!(
            "dim {}, shifts {shifts}, closed {closed}, nontrivial idempotents {found}",
            s.dim()
        ),
    )
}

fn c4() -> Outcome {
    let l = LieAlgebra::<Gf5>::zassenhaus(1).unwrap();
    // e_i sits at index i + 1
    let a = Subspace::coordinate(5, &[4]).unwrap();
    let b = Subspace::coordinate(5, &[1, 2, 3, 4]).unwrap();
    let given = verify_heart(&l, &a, &b).is_ok();
    let s = hom_lie_basis(&l).unwrap();
    let h = harvest_square_zero(&l, &s, DEFAULT_BUDGET, 0);
    let converted = h.found.iter().all(|z| heart_from_squarezero(&l, &z.matrix).is_ok());
    outcome(
        given && !h.found.is_empty() && converted,
        format!(
            "given witness {given}, square-zero harvested {}, converted {converted}",
            h.found.len()
        ),
    )
}

fn c5() -> Outcome {
    let l = LieAlgebra::<Gf5>::zassenhaus(2).unwrap();
    let s = hom_lie_basis(&l).unwrap();
    let sys = s.system().unwrap();
    outcome(
        s.dim() == 25,
        format!("dim {} from a {}x{} system", s.dim(), sys.rows, sys.cols),
    )
}

fn centroid_contained<T: Field>(algebras: &[Algebra<T>], bad: &mut Vec<String>) {
    for a in algebras {
        let c = centroid_basis(&a.l).unwrap();
        let h = hom_lie_basis(&a.l).unwrap();
        if !c.is_subspace_of(&h) {
            bad.push(a.name.clone());
        }
    }
}

fn c6() -> Outcome {
    let mut bad = Vec::new();
    centroid_contained(&matrix_q(), &mut bad);
    centroid_contained(&matrix_f5(), &mut bad);
    outcome(bad.is_empty(), format!("10 algebras, failing {bad:?}"))
}

fn c7() -> Outcome {
    let sl2 = f_equation_equivalence_check(&LieAlgebra::<Q>::sl2(), 20, 0).unwrap();
    let heis = f_equation_equivalence_check(&LieAlgebra::<Q>::heisenberg(), 20, 0).unwrap();
    let witt = f_equation_equivalence_check(&LieAlgebra::<Gf5>::witt_mod_p().unwrap(), 20, 0).unwrap();
    outcome(
        sl2.holds && heis.holds && witt.holds,
        format!(
            "sl2 {} ({} negatives), heisenberg {} ({}), witt {} ({})",
            sl2.holds, sl2.negatives, heis.holds, heis.negatives, witt.holds, witt.negatives
        ),
    )
}

/// `f_of_pair` of every basis pair lies in the unrestricted solution space.
fn pairs_in_f_space<T: Field>(l: &LieAlgebra<T>) -> bool {
    let s = hom_lie_basis(l).unwrap();
    let fs = f_space(l, Symmetry::Any).unwrap();
    let b = s.basis();
    (0..b.len()).all(|i| (i..b.len()).all(|j| fs.contains(&f_of_pair(l, &b[i], &b[j]).unwrap())))
}

fn closure_equivalences<T: Field>(algebras: &[Algebra<T>], summary: &mut Vec<String>, bad: &mut Vec<String>) {
    for a in algebras {
        let s = hom_lie_basis(&a.l).unwrap();
        let i = anticommutator_closure(&s).closed;
        let ii = square_closure(&s);
        let iv = pair_maps_satisfy(&a.l, &s).unwrap();
        let iv_span = pairs_in_f_space(&a.l);
        summary.push(format!("{}:{}", a.name, i));
        if i != ii || i != iv || iv != iv_span {
            bad.push(format!("{} (i {i}, ii {ii}, iv {iv}, span {iv_span})", a.name));
        }
    }
}

fn c8() -> Outcome {
    let (mut summary, mut bad) = (Vec::new(), Vec::new());
    closure_equivalences(&matrix_q(), &mut summary, &mut bad);
    closure_equivalences(&matrix_f5(), &mut summary, &mut bad);
    outcome(
        bad.is_empty(),
        format!("closure verdicts [{}], disagreements {bad:?}", summary.join(", ")),
    )
}

#[derive(Default)]
struct IdempotentTally {
    samples: usize,
    idempotent_fail: usize,
    rank_checked: [usize; 3],
    rank_fail: [usize; 3],
    jc_fail: usize,
    counterexample: Option<String>,
}

/// Random matrices mixing the shapes that exercise each clause: dense,
/// conjugated nilpotent, conjugated diagonal with zeros, and conjugated
/// diagonal plus nilpotent.
fn sample_matrix<T: Field>(rng: &mut ChaCha8Rng, n: usize, kind: usize) -> Matrix<T> {
    let mut entry = |rng: &mut ChaCha8Rng| T::sample(rng, 3);
    let dense = |rng: &mut ChaCha8Rng, entry: &mut dyn FnMut(&mut ChaCha8Rng) -> T| {
        Matrix::from_vec(n, n, (0..n * n).map(|_| entry(rng)).collect()).unwrap()
    };
    if kind == 0 {
        return dense(rng, &mut entry);
    }
    let p = loop {
        let p = dense(rng, &mut entry);
        if is_invertible(&p) {
            break p;
        }
    };
    let mut core = Matrix::zeros(n, n);
    if kind != 2 {
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.6) {
                    core[(i, j)] = entry(rng);
                }
            }
        }
    }
    if kind >= 2 {
        for i in 0..n {
            if rng.gen_bool(0.6) {
                core[(i, i)] = entry(rng);
            }
        }
    }
    p.mul(&core).mul(&p.inverse().unwrap())
}

fn idempotent_suite<T: Field>(seed: u64, t: &mut IdempotentTally) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..200 {
        let n = 1 + k % 6;
        let m: Matrix<T> = sample_matrix(&mut rng, n, (k / 6) % 4);
        t.samples += 1;
        let e = idempotent_polynomial(&m).unwrap();
        if !is_idempotent(&e.matrix) {
            t.idempotent_fail += 1;
        }
        let clauses = [
            is_invertible(&m),
            is_nilpotent(&m),
            min_poly(&m).unwrap().is_squarefree(),
        ];
        for (c, &applies) in clauses.iter().enumerate() {
            if !applies {
                continue;
            }
            t.rank_checked[c] += 1;
            if e.matrix.rank() != m.rank() {
                t.rank_fail[c] += 1;
                if t.counterexample.is_none() {
                    t.counterexample = Some(format!(
                        "{} n={n}: rank(M)={}, rank(E)={}, M={}",
                        T::spec(),
                        m.rank(),
                        e.matrix.rank(),
                        m.to_json()
                    ));
                }
            }
        }
        let jc = jordan_chevalley(&m).unwrap();
        let ok = jc.semisimple.add(&jc.nilpotent) == m
            && jc.commute()
            && min_poly(&jc.semisimple).unwrap().is_squarefree()
            && is_nilpotent(&jc.nilpotent);
        if !ok {
            t.jc_fail += 1;
        }
    }
}

fn c9() -> Outcome {
    let mut t = IdempotentTally::default();
    idempotent_suite::<Q>(9, &mut t);
    idempotent_suite::<Gf3>(9, &mut t);
    idempotent_suite::<Gf5>(9, &mut t);
    idempotent_suite::<Gf7>(9, &mut t);
    let pass = t.idempotent_fail == 0 && t.rank_fail.iter().all(|&f| f == 0) && t.jc_fail == 0;
    let mut detail = format!(
        "{} samples; E^2=E fails {}; rank clause fails invertible {}/{}, nilpotent {}/{}, squarefree {}/{}; JC fails {}",
        t.samples,
        t.idempotent_fail,
        t.rank_fail[0],
        t.rank_checked[0],
        t.rank_fail[1],
        t.rank_checked[1],
        t.rank_fail[2],
        t.rank_checked[2],
        t.jc_fail
    );
    if let Some(c) = t.counterexample {
        detail.push_str(&format!("; first counterexample {c}"));
    }
    outcome(pass, detail)
}

fn derivation_suite<T: Field>(l: &LieAlgebra<T>) -> (bool, bool) {
    let s = hom_lie_basis(l).unwrap();
    (derivation_property(l, &s).unwrap(), check_submodule(l, &s))
}

fn c10() -> Outcome {
    let sl2 = LieAlgebra::<Q>::sl2();
    let r = [
        derivation_suite(&sl2),
        derivation_suite(&LieAlgebra::<Q>::heisenberg()),
        derivation_suite(&LieAlgebra::<Gf5>::witt_mod_p().unwrap()),
    ];
    let s = hom_lie_basis(&sl2).unwrap();
    let ad_inv = check_ad_invariance(&sl2, &s, &chevalley_involution()).unwrap();
    outcome(
        r.iter().all(|&(d, m)| d && m) && ad_inv,
        format!(
            "(derivation, submodule) sl2 {:?}, heisenberg {:?}, witt {:?}; Ad-invariance {ad_inv}",
            r[0], r[1], r[2]
        ),
    )
}

fn suits_suite<T: Field>(algebras: &[Algebra<T>], counts: &mut [usize; 4]) {
    for a in algebras {
        let s = hom_lie_basis(&a.l).unwrap();
        for e in harvest_idempotents(&a.l, &s, DEFAULT_BUDGET, 0).found {
            counts[0] += 1;
            counts[1] += usize::from(diamond_from_idempotent(&a.l, &e.matrix).is_ok());
        }
        for z in harvest_square_zero(&a.l, &s, DEFAULT_BUDGET, 0).found {
            counts[2] += 1;
            counts[3] += usize::from(heart_from_squarezero(&a.l, &z.matrix).is_ok());
        }
    }
}

fn c11() -> Outcome {
    let mut counts = [0; 4];
    suits_suite(&matrix_q(), &mut counts);
    suits_suite(&matrix_f5(), &mut counts);
    outcome(
        counts[0] == counts[1] && counts[2] == counts[3],
        format!(
            "idempotents {} -> diamonds {}; square-zero {} -> hearts {}",
            counts[0], counts[1], counts[2], counts[3]
        ),
    )
}

/// `exp(ad e_i)` where the series terminates with invertible factorials.
fn inner_automorphisms<T: Field>(l: &LieAlgebra<T>) -> Vec<Matrix<T>> {
    let n = l.dim();
    let p = T::characteristic() as usize;
    let mut out = Vec::new();
    for i in 0..n {
        let ad = l.ad_basis(i);
        let mut term = Matrix::identity(n);
        let mut sum = Matrix::identity(n);
        let mut k = 1;
        while !term.is_zero() && k <= n {
            if p != 0 && k >= p {
                break;
            }
            term = term.mul(&ad).scale(&T::from_i64(k as i64).inv().unwrap());
            sum = sum.add(&term);
            k += 1;
        }
        if term.is_zero() && l.is_automorphism(&sum) && !sum.is_identity() {
            out.push(sum);
        }
    }
    out
}

fn twisted_suite<T: Field>(algebras: &[Algebra<T>], extra: &[Matrix<T>], bad: &mut Vec<String>, checked: &mut usize) {
    for a in algebras {
        let n = a.l.dim();
        let s = hom_lie_basis(&a.l).unwrap();
        let id = Matrix::identity(n);
        let plain = anticommutator_closure(&s).closed;
        for mode in [TwistMode::General, TwistMode::Automorphism] {
            if twisted_closure(&a.l, &s, &id, mode).unwrap().closed != plain {
                bad.push(format!("{} id {}", a.name, mode.name()));
            }
        }
        let mut alphas = inner_automorphisms(&a.l);
        alphas.extend(
            extra
                .iter()
                .filter(|m| m.rows() == n && a.l.is_automorphism(m))
                .cloned(),
        );
        for alpha in alphas {
            *checked += 1;
            let r = twisted_closure(&a.l, &s, &alpha, TwistMode::Automorphism).unwrap();
            if r.closed && !r.alpha_is_hom_lie {
                bad.push(format!("{} automorphism flag", a.name));
            }
        }
    }
}

fn c12() -> Outcome {
    let (mut bad, mut checked) = (Vec::new(), 0);
    let extra = vec![
        chevalley_involution(),
        Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
        Matrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]),
    ];
    twisted_suite(&matrix_q(), &extra, &mut bad, &mut checked);
    let witt_extra: Vec<Matrix<Gf5>> = (1..5).map(|s| shift(5, s)).collect();
    twisted_suite(&matrix_f5(), &witt_extra, &mut bad, &mut checked);
    outcome(
        bad.is_empty(),
        format!("{checked} automorphisms checked, disagreements {bad:?}"),
    )
}

type Criterion = (u32, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, Some(Duration::from_secs(1)), c1),
        (2, Some(Duration::from_secs(1)), c2),
        (3, Some(Duration::from_secs(5)), c3),
        (4, Some(Duration::from_secs(5)), c4),
        (5, Some(Duration::from_secs(120)), c5),
        (6, None, c6),
        (7, None, c7),
        (8, None, c8),
        (9, None, c9),
        (10, None, c10),
        (11, None, c11),
        (12, None, c12),
    ];
    let mut unexpected = 0;
    for (id, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = o.pass && in_time;
        let limit_text = limit.map(|l| format!(" < {}s", l.as_secs())).unwrap_or_default();
        let status = if pass { "PASS" } else { "FAIL" };
        let expected = if KNOWN_FALSE.contains(&id) { " (expected)" } else { "" };
        println!(
            "criterion {id:>2}: {status}{expected} [{:.3}s{limit_text}] {}",
            elapsed.as_secs_f64(),
            o.detail
        );
        if pass == KNOWN_FALSE.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        println!("acceptance: all outcomes as expected");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected outcome(s)");
        ExitCode::FAILURE
    }
}
