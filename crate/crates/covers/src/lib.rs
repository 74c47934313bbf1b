//! Exact computation with dihedral branched covers of knots.
//!
//! The crate is organised around the pipeline used to predict signatures of
//! branched covers of four-manifolds from knot-theoretic data:
//!
//! * [`diagram`] — knot/link diagrams: arc-level data, embedded (PD-style)
//!   data with a rotation system, two-bridge plat builders, JSON interchange.
//! * [`dihedral`] — Fox p-colorings, dihedral representations, knot
//!   determinants.
//! * [`seifert`] — Seifert matrices for the two-bridge family `C(e1,…,e2k)`,
//!   symmetrised forms and characteristic knot classes mod p.
//! * [`twobridge`] — the slice families `K1(a,b)`, `K2(a,b)`: determinants,
//!   p = 3 admissibility case analysis, witness enumeration.
//! * [`signatures`] — exact signatures of rational symmetric forms and
//!   Tristram–Levine signatures at prime-power roots of unity, evaluated in
//!   real cyclotomic fields (no floating point in the result path).
//! * [`complex`] — the linking-number engine: a CW structure on S³ coning a
//!   link diagram, its lift through a permutation representation, homology of
//!   the cover, bounding chains and exact linking numbers of lifted curves.
//! * [`scene`] — geometric "band scenes": Seifert-surface band pictures of the
//!   two-bridge families together with overlay curves (characteristic knots
//!   and their pushoffs) compiled to embedded link diagrams.
//! * [`xi`] — the signature defect Ξ_p(α): quadratic term, linking matrix of
//!   the Cappell–Shaneson curve system, integrality/invariance reporting.
//! * [`predict`] — Euler characteristic and signature of irregular dihedral
//!   covers of four-manifolds, intersection-form descriptors.
//! * [`corpus`] — small bundled diagrams used by the CLI and tests.

pub mod linalg;
pub mod numfield;
pub mod diagram;
pub mod dihedral;
pub mod seifert;
pub mod twobridge;
pub mod signatures;
pub mod complex;
pub mod scene;
pub mod xi;
pub mod predict;
pub mod corpus;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Convenience alias used throughout: arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
/// Convenience alias used throughout: arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Build a `Rat` from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Build a `Rat` n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Serialize a `Rat` as `"n/d"` (or `"n"` when integral), the form used in
/// all JSON output.
pub fn serialize_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(r))
}

/// Render a `Rat` as `"n/d"`, or just `"n"` when the denominator is 1.
pub fn rat_string(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
