//! Exact signatures: rational symmetric forms and Tristram–Levine signatures
//! σ_{ζ^i} at p-th roots of unity.
//!
//! The Hermitian form `H(ζ) = (1−ζ)L + (1−ζ̄)Lᵀ` with `ζ = e^{2πi·i/p}` is
//! realified to a 2n×2n symmetric matrix and then congruence-scaled so every
//! entry lies in the real cyclotomic field Q(2cos(2π·i/p)): writing
//! `S = L+Lᵀ`, `K = L−Lᵀ`, `c = cos(2π·i/p)`, the block matrix
//!
//! ```text
//! [ (1−c²)·S    (1+c)·K ]
//! [ −(1+c)·K        S   ]
//! ```
//!
//! is congruent to a positive multiple of the standard realification of H,
//! so its inertia is exactly twice that of H. Sign counting is done with
//! certified algebraic-number arithmetic; no floating point is involved.

use crate::linalg;
use crate::numfield::{self, Elem, RealCyclotomicField};
use crate::seifert::SeifertData;
use crate::{rat, Int, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("p must be odd and ≥ 3, with 1 ≤ i ≤ p−1")]
    BadPoint,
    #[error("Tristram–Levine form is singular at i = {i} (Alexander root); request the averaged limit explicitly")]
    SingularForm { i: u64 },
    #[error("degenerate family: the form is singular at every parameter")]
    DegenerateFamily,
}

/// Evaluation point ζ^i, ζ = primitive p-th root of unity, p odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TLPoint {
    pub p: u64,
    pub i: u64,
}

impl TLPoint {
    pub fn new(p: u64, i: u64) -> Result<Self, SignatureError> {
        if p < 3 || p % 2 == 0 || i < 1 || i > p - 1 {
            return Err(SignatureError::BadPoint);
        }
        Ok(TLPoint { p, i })
    }
}

/// Signature (#positive − #negative eigenvalues) of an exact rational
/// symmetric matrix, by congruence pivoting.
pub fn matrix_signature(m: &[Vec<Rat>]) -> Result<i64, SignatureError> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(SignatureError::NotSquare);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i][j] != m[j][i] {
                return Err(SignatureError::NotSymmetric);
            }
        }
    }
    Ok(linalg::signature(m))
}

/// The congruence-scaled realification over Q(θ), θ = 2c.
fn realified_field(l: &[Vec<Int>], f: &RealCyclotomicField) -> Vec<Vec<Elem>> {
    let n = l.len();
    let one = f.from_rat(rat(1));
    let c = f.scale(&f.theta(), &crate::ratio(1, 2));
    let one_minus_c2 = f.sub(&one, &f.mul(&c, &c));
    let one_plus_c = f.add(&one, &c);
    let mut m = vec![vec![f.zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let s = Rat::from(&l[i][j] + &l[j][i]);
            let k = Rat::from(&l[i][j] - &l[j][i]);
            m[i][j] = f.scale(&one_minus_c2, &s);
            m[n + i][n + j] = f.from_rat(s);
            m[i][n + j] = f.scale(&one_plus_c, &k);
            m[n + i][j] = f.scale(&one_plus_c, &(-k));
        }
    }
    m
}

/// Same matrix with a rational value substituted for c (used for the
/// averaged limit at singular points, where c need not be a cosine of a
/// rational angle). Requires −1 < c < 1.
pub(crate) fn realified_rational(l: &[Vec<Int>], c: &Rat) -> Vec<Vec<Rat>> {
    let n = l.len();
    let one_minus_c2 = rat(1) - c * c;
    let one_plus_c = rat(1) + c;
    let mut m = vec![vec![Rat::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let s = Rat::from(&l[i][j] + &l[j][i]);
            let k = Rat::from(&l[i][j] - &l[j][i]);
            m[i][j] = &one_minus_c2 * &s;
            m[n + i][n + j] = s;
            m[i][n + j] = &one_plus_c * &k;
            m[n + i][j] = &one_plus_c * &(-k);
        }
    }
    m
}

fn tl_signature_raw(l: &[Vec<Int>], pt: TLPoint) -> Result<i64, SignatureError> {
    if l.is_empty() {
        return Ok(0);
    }
    let f = RealCyclotomicField::new(pt.i, pt.p);
    let m = realified_field(l, &f);
    let (pos, neg, zero) = numfield::field_inertia(&f, &m);
    if zero > 0 {
        return Err(SignatureError::SingularForm { i: pt.i });
    }
    let sig2 = pos as i64 - neg as i64;
    debug_assert_eq!(sig2 % 2, 0, "realified signature must be even");
    Ok(sig2 / 2)
}

/// Tristram–Levine signature σ_{ζ^i} of a Seifert matrix. Errors if ζ^i is
/// a root of the Alexander polynomial (use [`tl_signature_averaged`]).
pub fn tl_signature(l: &SeifertData, pt: TLPoint) -> Result<i64, SignatureError> {
    tl_signature_raw(&l.l, pt)
}

/// Averaged one-sided limit ½(σ(ζ e^{iε}) + σ(ζ e^{−iε})) at a singular
/// point, computed exactly: the determinant of the realified family is a
/// polynomial in c, its roots near c₀ = cos(2π·i/p) are separated by Sturm
/// counting, and the two limits are evaluated at rational parameters inside
/// the separating interval. At nonsingular points this agrees with
/// [`tl_signature`].
pub fn tl_signature_averaged(l: &SeifertData, pt: TLPoint) -> Result<Rat, SignatureError> {
    tl_signature_averaged_raw(&l.l, pt)
}

pub(crate) fn tl_signature_averaged_raw(l: &[Vec<Int>], pt: TLPoint) -> Result<Rat, SignatureError> {
    match tl_signature_raw(l, pt) {
        Ok(s) => return Ok(rat(s)),
        Err(SignatureError::SingularForm { .. }) => {}
        Err(e) => return Err(e),
    }
    // det of the realified family as an integer polynomial in c, by
    // interpolation at 4n+1 rational points (entry degree ≤ 2, size 2n)
    let n = l.len();
    let deg = 4 * n;
    let pts: Vec<(Rat, Rat)> = (0..=deg as i64)
        .map(|k| {
            let c = rat(k);
            let m = realified_rational(l, &c);
            (c, det_rational(&m))
        })
        .collect();
    let poly = lagrange_interpolate(&pts);
    let d_poly = clear_denominators(&poly);
    if d_poly.iter().all(Zero::is_zero) {
        return Err(SignatureError::DegenerateFamily);
    }
    // shrink an enclosure of c₀ until it contains exactly the one root c₀
    let f = RealCyclotomicField::new(pt.i, pt.p);
    let mut eps = crate::ratio(1, 1 << 10);
    loop {
        let (lo, hi) = f.enclose(&eps);
        let (cl, ch) = (lo / rat(2), hi / rat(2));
        let ok = cl > rat(-1)
            && ch < rat(1)
            && !numfield::eval_int_poly(&d_poly, &cl).is_zero()
            && !numfield::eval_int_poly(&d_poly, &ch).is_zero()
            && numfield::count_distinct_roots(&d_poly, &cl, &ch) == 1;
        if ok {
            let sl = linalg::signature(&realified_rational(l, &cl));
            let sr = linalg::signature(&realified_rational(l, &ch));
            return Ok(Rat::from(Int::from(sl + sr)) / rat(4));
        }
        eps = eps / rat(2);
    }
}

fn det_rational(m: &[Vec<Rat>]) -> Rat {
    // fraction-free: scale each row to integers, Bareiss, divide back
    let mut scale = Rat::from(Int::from(1));
    let mut im: Vec<Vec<Int>> = Vec::with_capacity(m.len());
    for row in m {
        let mut lcm = Int::from(1);
        for x in row {
            lcm = num_integer::lcm(lcm, x.denom().clone());
        }
        im.push(row.iter().map(|x| (x * Rat::from(lcm.clone())).to_integer()).collect());
        scale = scale * Rat::from(lcm);
    }
    Rat::from(linalg::det_bareiss(&im)) / scale
}

fn lagrange_interpolate(pts: &[(Rat, Rat)]) -> Vec<Rat> {
    let n = pts.len();
    let mut acc = vec![Rat::zero(); n];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        // basis polynomial Π_{j≠i} (x − x_j)/(x_i − x_j)
        let mut basis = vec![Rat::zero(); n];
        basis[0] = rat(1);
        let mut deg = 0;
        let mut denom = rat(1);
        for (j, (xj, _)) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            for k in (0..=deg).rev() {
                let t = basis[k].clone();
                basis[k + 1] = &basis[k + 1] + &t;
                basis[k] = -xj * &t;
            }
            deg += 1;
            denom = denom * (xi - xj);
        }
        for k in 0..n {
            acc[k] = &acc[k] + &(&basis[k] * yi / &denom);
        }
    }
    acc
}

fn clear_denominators(p: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::from(1);
    for x in p {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    p.iter().map(|x| (x * Rat::from(lcm.clone())).to_integer()).collect()
}

/// Map i ↦ σ_{ζ^i} for i = 1…p−1.
pub fn tl_map(l: &SeifertData, p: u64) -> Result<BTreeMap<u64, i64>, SignatureError> {
    let mut out = BTreeMap::new();
    for i in 1..p {
        out.insert(i, tl_signature(l, TLPoint::new(p, i)?)?);
    }
    Ok(out)
}

/// Σ_{i=1}^{p−1} σ_{ζ^i}; even by conjugate symmetry.
pub fn tl_sum(l: &SeifertData, p: u64) -> Result<i64, SignatureError> {
    let m = tl_map(l, p)?;
    let s: i64 = m.values().sum();
    debug_assert_eq!(s % 2, 0, "conjugate symmetry forces an even sum");
    Ok(s)
}
