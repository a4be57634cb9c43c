//! Witnesses for the two decomposition properties.
//!
//! * Diamond: `L = A ⊕ B` with `A, B ≠ 0`, `[[A,A],B] = 0` and `[[B,B],A] = 0`.
//! * Heart: `0 ≠ A ⊆ B`, `dim A + dim B = dim L` and the same two bracket
//!   conditions.
//!
//! Verification records every condition in a transcript. The constructive
//! routes go through idempotent and square-zero Hom-Lie structures.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homspaces::{hom_lie_basis, is_hom_lie};
use crate::jordancheck::{anticommutator_closure, harvest_idempotents, harvest_square_zero};
use crate::liealg::{subspace_bracket, LieAlgebra};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::spectral::is_idempotent;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Diamond,
    Heart,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Diamond => "diamond",
            WitnessKind::Heart => "heart",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry<T> {
    pub condition: &'static str,
    pub passed: bool,
    /// Offending subspace for failed intersection and bracket conditions.
    pub defect: Option<Subspace<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<T> {
    pub kind: WitnessKind,
    pub a: Subspace<T>,
    pub b: Subspace<T>,
    pub transcript: Vec<TranscriptEntry<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuitFailure<T> {
    pub kind: WitnessKind,
    pub condition: &'static str,
    pub defect: Option<Subspace<T>>,
    pub transcript: Vec<TranscriptEntry<T>>,
}

pub const A_NONZERO: &str = "A != 0";
pub const B_NONZERO: &str = "B != 0";
pub const AMBIENT: &str = "A, B inside L";
pub const DISJOINT: &str = "A ∩ B = 0";
pub const SPANNING: &str = "A + B = L";
pub const NESTED: &str = "A ⊆ B";
pub const DIMENSIONS: &str = "dim A + dim B = dim L";
pub const AAB: &str = "[[A,A],B] = 0";
pub const BBA: &str = "[[B,B],A] = 0";

fn entry<T>(condition: &'static str, passed: bool, defect: Option<Subspace<T>>) -> TranscriptEntry<T> {
    TranscriptEntry {
        condition,
        passed,
        defect,
    }
}

fn bracket_entries<T: Field>(l: &LieAlgebra<T>, a: &Subspace<T>, b: &Subspace<T>) -> Vec<TranscriptEntry<T>> {
    let mut out = Vec::with_capacity(2);
    for (name, x, y) in [(AAB, a, b), (BBA, b, a)] {
        let inner = subspace_bracket(l, x, x).expect("ambient checked");
        let outer = subspace_bracket(l, &inner, y).expect("ambient checked");
        let ok = outer.is_zero();
        out.push(entry(name, ok, (!ok).then_some(outer)));
    }
    out
}

fn conclude<T: Field>(
    kind: WitnessKind,
    a: &Subspace<T>,
    b: &Subspace<T>,
    transcript: Vec<TranscriptEntry<T>>,
) -> std::result::Result<Witness<T>, SuitFailure<T>> {
    match transcript.iter().find(|e| !e.passed) {
        Some(f) => Err(SuitFailure {
            kind,
            condition: f.condition,
            defect: f.defect.clone(),
            transcript,
        }),
        None => Ok(Witness {
            kind,
            a: a.clone(),
            b: b.clone(),
            transcript,
        }),
    }
}

fn ambient_failure<T: Field>(kind: WitnessKind) -> SuitFailure<T> {
    SuitFailure {
        kind,
        condition: AMBIENT,
        defect: None,
        transcript: vec![entry(AMBIENT, false, None)],
    }
}

pub fn verify_diamond<T: Field>(
    l: &LieAlgebra<T>,
    a: &Subspace<T>,
    b: &Subspace<T>,
) -> std::result::Result<Witness<T>, SuitFailure<T>> {
    let kind = WitnessKind::Diamond;
    if a.ambient() != l.dim() || b.ambient() != l.dim() {
        return Err(ambient_failure(kind));
    }
    let meet = a.intersection(b).expect("same ambient");
    let disjoint = meet.is_zero();
    let mut t = vec![
        entry(A_NONZERO, !a.is_zero(), None),
        entry(B_NONZERO, !b.is_zero(), None),
        entry(DISJOINT, disjoint, (!disjoint).then_some(meet)),
        entry(SPANNING, a.dim() + b.dim() == l.dim() && disjoint, None),
    ];
    t.extend(bracket_entries(l, a, b));
    conclude(kind, a, b, t)
}

pub fn verify_heart<T: Field>(
    l: &LieAlgebra<T>,
    a: &Subspace<T>,
    b: &Subspace<T>,
) -> std::result::Result<Witness<T>, SuitFailure<T>> {
    let kind = WitnessKind::Heart;
    if a.ambient() != l.dim() || b.ambient() != l.dim() {
        return Err(ambient_failure(kind));
    }
    let mut t = vec![
        entry(A_NONZERO, !a.is_zero(), None),
        entry(B_NONZERO, !b.is_zero(), None),
        entry(NESTED, a.is_subspace_of(b), None),
        entry(DIMENSIONS, a.dim() + b.dim() == l.dim(), None),
    ];
    t.extend(bracket_entries(l, a, b));
    conclude(kind, a, b, t)
}

fn unverified<T>(f: SuitFailure<T>) -> Error {
    Error::Precondition(format!("{} witness check failed: {}", f.kind.name(), f.condition))
}

/// `A = im E`, `B = ker E` for a nontrivial idempotent Hom-Lie structure `E`.
pub fn diamond_from_idempotent<T: Field>(l: &LieAlgebra<T>, e: &Matrix<T>) -> Result<Witness<T>> {
    let n = l.dim();
    if e.rows() != n || e.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: e.rows(),
        });
    }
    if !is_idempotent(e) {
        return Err(Error::Precondition("map is not idempotent".into()));
    }
    if e.is_zero() || e.is_identity() {
        return Err(Error::Precondition("idempotent is trivial".into()));
    }
    if !is_hom_lie(l, e) {
        return Err(Error::Precondition("idempotent is not a Hom-Lie structure".into()));
    }
    verify_diamond(l, &Subspace::image(e), &Subspace::kernel(e)).map_err(unverified)
}

/// `A = im φ`, `B = ker φ` for a nonzero square-zero Hom-Lie structure `φ`.
pub fn heart_from_squarezero<T: Field>(l: &LieAlgebra<T>, phi: &Matrix<T>) -> Result<Witness<T>> {
    let n = l.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.rows(),
        });
    }
    if phi.is_zero() {
        return Err(Error::Precondition("map is zero".into()));
    }
    if !phi.mul(phi).is_zero() {
        return Err(Error::Precondition("map does not square to zero".into()));
    }
    if !is_hom_lie(l, phi) {
        return Err(Error::Precondition("map is not a Hom-Lie structure".into()));
    }
    verify_heart(l, &Subspace::image(phi), &Subspace::kernel(phi)).map_err(unverified)
}

/// How a search obtained its candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchRoute {
    /// The Hom-Lie space is closed, so polynomials in its elements stay inside.
    Closed,
    /// Not closed; every extracted map was checked individually.
    Filtered,
}

impl SearchRoute {
    pub fn name(self) -> &'static str {
        match self {
            SearchRoute::Closed => "closed",
            SearchRoute::Filtered => "filtered",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub kind: WitnessKind,
    pub route: SearchRoute,
    pub examined: usize,
    /// Number of extracted maps that passed the Hom-Lie check.
    pub harvested: usize,
    pub witness: Option<Witness<T>>,
}

pub fn diamond_search<T: Field>(l: &LieAlgebra<T>, budget: usize, seed: u64) -> Result<SearchOutcome<T>> {
    let s = hom_lie_basis(l)?;
    let route = if anticommutator_closure(&s).closed {
        SearchRoute::Closed
    } else {
        SearchRoute::Filtered
    };
    let h = harvest_idempotents(l, &s, budget, seed);
    let witness = h
        .found
        .first()
        .map(|e| diamond_from_idempotent(l, &e.matrix))
        .transpose()?;
    Ok(SearchOutcome {
        kind: WitnessKind::Diamond,
        route,
        examined: h.examined.len(),
        harvested: h.found.len(),
        witness,
    })
}

pub fn heart_search<T: Field>(l: &LieAlgebra<T>, budget: usize, seed: u64) -> Result<SearchOutcome<T>> {
    let s = hom_lie_basis(l)?;
    let route = if anticommutator_closure(&s).closed {
        SearchRoute::Closed
    } else {
        SearchRoute::Filtered
    };
    let h = harvest_square_zero(l, &s, budget, seed);
    let witness = h
        .found
        .first()
        .map(|z| heart_from_squarezero(l, &z.matrix))
        .transpose()?;
    Ok(SearchOutcome {
        kind: WitnessKind::Heart,
        route,
        examined: h.examined.len(),
        harvested: h.found.len(),
        witness,
    })
}

fn transcript_json<T: Field>(t: &[TranscriptEntry<T>]) -> Value {
    Value::Array(
        t.iter()
            .map(|e| {
                json!({
                    "condition": e.condition,
                    "status": if e.passed { "pass" } else { "fail" },
                    "defect": e.defect.as_ref().map(Subspace::to_json),
                })
            })
            .collect(),
    )
}

impl<T: Field> Witness<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "A": self.a.to_json(),
            "B": self.b.to_json(),
            "transcript": transcript_json(&self.transcript),
        })
    }
}

impl<T: Field> SuitFailure<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "failed": self.condition,
            "defect": self.defect.as_ref().map(Subspace::to_json),
            "transcript": transcript_json(&self.transcript),
        })
    }
}

impl<T: Field> SearchOutcome<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "route": self.route.name(),
            "examined": self.examined,
            "harvested": self.harvested,
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}
