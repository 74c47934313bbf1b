//! Closed-form arithmetic for the two-bridge slice families
//! `K₁(a,b) = C(2a, 2, 2b, −2, −2a, 2b)` and `K₂(a,b) = C(2a, 2, 2b, 2a, 2, 2b)`:
//! determinants, p = 3 admissibility with its four-case classification and
//! tabulated characteristic classes, and enumeration of admissible parameter
//! pairs for general odd primes.

use crate::diagram::{DiagramError, TwoBridgeSpec};
use crate::Int;
use num_traits::Signed;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    K1,
    K2,
}

/// A parameter point in one of the two slice families. Points with `a` or
/// `b` zero are representable (the closed forms extend) but flagged as
/// outside the ribbon range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyPoint {
    pub family: Family,
    pub a: i64,
    pub b: i64,
}

impl FamilyPoint {
    pub fn new(family: Family, a: i64, b: i64) -> Self {
        FamilyPoint { family, a, b }
    }

    /// The ribbon construction needs both parameters nonzero.
    pub fn is_ribbon_range(&self) -> bool {
        self.a != 0 && self.b != 0
    }

    pub fn spec(&self) -> Result<TwoBridgeSpec, DiagramError> {
        match self.family {
            Family::K1 => TwoBridgeSpec::k1(self.a, self.b),
            Family::K2 => TwoBridgeSpec::k2(self.a, self.b),
        }
    }
}

/// Closed-form determinant of the symmetrized Seifert form:
/// `−(8ab+2b−1)²` for K₁ and `−(8ab+2a+2b+1)²` for K₂.
///
/// Both follow from the continuant recurrence for the tridiagonal matrix
/// `L + Lᵀ` (the off-diagonal entries are ±1 and only enter squared, so the
/// sign is intrinsic). The knot determinant is the absolute value.
pub fn det_closed_form(pt: &FamilyPoint) -> Int {
    let (a, b) = (Int::from(pt.a), Int::from(pt.b));
    let t = match pt.family {
        Family::K1 => Int::from(8) * &a * &b + Int::from(2) * &b - Int::from(1),
        Family::K2 => {
            Int::from(8) * &a * &b + Int::from(2) * &a + Int::from(2) * &b + Int::from(1)
        }
    };
    -(&t * &t)
}

/// p = 3 admissibility: returns the case number (1)–(4) when the knot admits
/// an irregular three-fold dihedral cover, `None` otherwise.
pub fn p3_admissible(pt: &FamilyPoint) -> Option<u8> {
    let (a, b) = (pt.a.rem_euclid(3), pt.b.rem_euclid(3));
    match (pt.family, a, b) {
        (Family::K1, 0, 2) => Some(1),
        (Family::K1, 1, 1) => Some(2),
        (Family::K2, 0, 1) => Some(3),
        (Family::K2, 1, 0) => Some(4),
        _ => None,
    }
}

/// The tabulated mod-3 characteristic class for an admissible point, in the
/// standard 6-curve basis of the band surface.
pub fn p3_characteristic_class(pt: &FamilyPoint) -> Option<Vec<Int>> {
    let case = p3_admissible(pt)?;
    let v: [i64; 6] = match case {
        1 => [1, 0, 1, 1, -1, 1],
        2 => [-1, 1, 1, 0, 1, 1],
        3 => [1, 0, 1, -1, 1, 1],
        4 => [-1, 1, 1, 1, 0, 1],
        _ => unreachable!(),
    };
    Some(v.iter().map(|&x| Int::from(x)).collect())
}

/// Fox–Milnor necessary condition for sliceness: `|det|` is a perfect square
/// (always true on these families).
pub fn fox_milnor_square(pt: &FamilyPoint) -> bool {
    let d = det_closed_form(pt).abs();
    let r = d.sqrt();
    &r * &r == d
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("p must be an odd prime")]
    NotOddPrime,
    #[error("bound must be at least 1")]
    BadBound,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All family points with `|a|,|b| ≤ bound` whose closed-form determinant
/// vanishes mod p, for an odd prime p. Contains the closed-form witness
/// families: K₁ with `a ≡ 0, 2b ≡ 1`; K₁ with `a ≡ 8⁻¹, b ≡ 3⁻¹`; and (for
/// p > 3) K₂ with `b ≡ −1, −6a ≡ 1 (mod p)`.
pub fn enumerate_admissible(p: u64, bound: i64) -> Result<Vec<FamilyPoint>, EnumerateError> {
    if !is_odd_prime(p) {
        return Err(EnumerateError::NotOddPrime);
    }
    if bound < 1 {
        return Err(EnumerateError::BadBound);
    }
    let q = Int::from(p);
    let mut out = Vec::new();
    for family in [Family::K1, Family::K2] {
        for a in -bound..=bound {
            for b in -bound..=bound {
                let pt = FamilyPoint::new(family, a, b);
                if (det_closed_form(&pt) % &q) == Int::from(0) {
                    out.push(pt);
                }
            }
        }
    }
    Ok(out)
}

/// CLI record for one enumerated point.
#[derive(Serialize)]
pub struct AdmissibleRecord {
    pub family: Family,
    pub a: i64,
    pub b: i64,
    pub det: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
    pub ribbon_range: bool,
}

impl AdmissibleRecord {
    pub fn from_point(pt: &FamilyPoint) -> Self {
        AdmissibleRecord {
            family: pt.family,
            a: pt.a,
            b: pt.b,
            det: det_closed_form(pt).to_string(),
            case: p3_admissible(pt),
            ribbon_range: pt.is_ribbon_range(),
        }
    }
}
