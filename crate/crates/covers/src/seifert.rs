//! Seifert matrices for the two-bridge band surfaces and characteristic-knot
//! classes mod p.
//!
//! The genus-k surface for `C(e₁,…,e₂ₖ)` is a disk with 2k interleaved bands;
//! its symmetrized Seifert form in the standard basis is tridiagonal with
//! diagonal `(−e₁, e₂, −e₃, e₄, …)` and alternating `±1` off-diagonal. A
//! characteristic class mod p is a nonzero `β` with `(L+Lᵀ)β ≡ 0 (mod p)`,
//! reported up to scalar multiple and lifted to a primitive integer vector.

use crate::linalg::det_bareiss;
use crate::Int;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("spec must have even length and even entries for an orientable band surface")]
    BadSpec,
    #[error("not a valid Seifert matrix: det(L - Lᵀ) must be 1 and the size even")]
    NotSeifert,
    #[error("dimension mismatch")]
    Dimension,
}

/// An integer Seifert matrix with labeled basis curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub l: Vec<Vec<Int>>,
    pub basis_labels: Vec<String>,
}

impl SeifertData {
    pub fn new(l: Vec<Vec<Int>>) -> Result<Self, SeifertError> {
        let n = l.len();
        if n % 2 != 0 || l.iter().any(|r| r.len() != n) {
            return Err(SeifertError::NotSeifert);
        }
        // det(L - Lᵀ) == 1
        let mut skew = vec![vec![Int::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                skew[i][j] = &l[i][j] - &l[j][i];
            }
        }
        if det_bareiss(&skew) != Int::from(1) {
            return Err(SeifertError::NotSeifert);
        }
        let basis_labels = (1..=n).map(|i| format!("w{i}")).collect();
        Ok(SeifertData { l, basis_labels })
    }

    pub fn genus(&self) -> usize {
        self.l.len() / 2
    }

    /// The symmetrized form `L + Lᵀ`.
    pub fn symmetrized(&self) -> Vec<Vec<Int>> {
        symmetrize(&self.l)
    }
}

/// `L + Lᵀ` of any square integer matrix.
pub fn symmetrize(l: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = l.len();
    let mut s = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            s[i][j] = &l[i][j] + &l[j][i];
        }
    }
    s
}

/// Seifert matrix of the band surface for `C(e₁,…,e₂ₖ)` (all eᵢ even): the
/// upper-triangular split of the tridiagonal symmetrized form, i.e.
/// `L[i][i] = ±eᵢ/2`, the full `±1` on the super-diagonal and `0` below it.
/// This split satisfies `det(L − Lᵀ) = 1`.
pub fn seifert_matrix_c(e: &[i64]) -> Result<SeifertData, SeifertError> {
    if e.len() < 2 || e.len() % 2 != 0 || e.iter().any(|&x| x == 0 || x % 2 != 0) {
        return Err(SeifertError::BadSpec);
    }
    let n = e.len();
    let mut l = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        // diagonal of L+Lᵀ is (−e₁, e₂, −e₃, …): sign (−1)^(i+1), 1-based
        let d = if i % 2 == 0 { -e[i] } else { e[i] };
        l[i][i] = Int::from(d / 2);
        if i + 1 < n {
            // super-diagonal of L+Lᵀ alternates 1, −1, 1, …
            l[i][i + 1] = Int::from(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    SeifertData::new(l)
}

/// Quadratic form value `βᵀ M β`.
pub fn quad_form(m: &[Vec<Int>], beta: &[Int]) -> Result<Int, SeifertError> {
    let n = m.len();
    if beta.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(SeifertError::Dimension);
    }
    let mut acc = Int::zero();
    for i in 0..n {
        for j in 0..n {
            acc += &beta[i] * &m[i][j] * &beta[j];
        }
    }
    Ok(acc)
}

/// All nonzero classes `β` mod p with `M·β ≡ 0 (mod p)`, up to scalar
/// multiple, for odd prime p. Each class is returned as a primitive integer
/// vector with entries centered in `(−p/2, p/2]`.
pub fn characteristic_classes(m: &[Vec<Int>], p: u64) -> Vec<Vec<Int>> {
    assert!(p >= 3 && p % 2 == 1, "p must be odd and > 1");
    let n = m.len();
    let q = p as i64;
    // kernel mod p by Gaussian elimination
    let mut rows: Vec<Vec<i64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    let mut x: Int = v % Int::from(q);
                    if x.is_negative() {
                        x += Int::from(q);
                    }
                    i64::try_from(x).unwrap()
                })
                .collect()
        })
        .collect();
    let modinv = |a: i64| -> i64 {
        let mut acc = 1i64;
        let mut b = a.rem_euclid(q);
        let mut e = q - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut r0 = 0usize;
    for col in 0..n {
        if let Some(pr) = (r0..rows.len()).find(|&r| rows[r][col] % q != 0) {
            rows.swap(r0, pr);
            let iv = modinv(rows[r0][col]);
            for v in rows[r0].iter_mut() {
                *v = *v * iv % q;
            }
            let pr_row = rows[r0].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != r0 && row[col] % q != 0 {
                    let f = row[col] % q;
                    for (v, pv) in row.iter_mut().zip(&pr_row) {
                        *v = (*v - f * pv).rem_euclid(q);
                    }
                }
            }
            pivots.push(col);
            r0 += 1;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for &fc in &free {
        let mut v = vec![0i64; n];
        v[fc] = 1;
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = (-rows[pi][fc]).rem_euclid(q);
        }
        basis.push(v);
    }
    // enumerate nonzero kernel vectors, dedupe by scalar class: canonical
    // representative scales the first nonzero entry to 1
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; basis.len()];
    'outer: loop {
        let mut v = vec![0i64; n];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = (*vi + c * bi).rem_euclid(q);
            }
        }
        if v.iter().any(|&x| x != 0) {
            let lead = v.iter().find(|&&x| x != 0).unwrap();
            let iv = modinv(*lead);
            let canon: Vec<i64> = v.iter().map(|&x| x * iv % q).collect();
            if seen.insert(canon.clone()) {
                // centered primitive integer lift
                let mut lift: Vec<Int> = canon
                    .iter()
                    .map(|&x| Int::from(if x > q / 2 { x - q } else { x }))
                    .collect();
                let mut g = Int::zero();
                for x in &lift {
                    g = num_integer::gcd(g, x.abs());
                }
                if g > Int::from(1) {
                    for x in lift.iter_mut() {
                        *x = &*x / &g;
                    }
                }
                out.push(lift);
            }
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                break 'outer;
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}
