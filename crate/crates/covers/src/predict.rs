//! Euler characteristic and signature of irregular dihedral p-fold branched
//! covers of closed oriented PL four-manifolds, and the intersection-form
//! descriptor used to recognise the resulting manifolds.
//!
//! For a cover `Y → X` branched over a surface `B ⊂ X` with `k` isolated
//! cone singularities with defects `Ξ_p(α_i)`:
//!
//! ```text
//! χ(Y) = p·χ(X) − (p−1)/2·χ(B) − k·(p−1)/2                       (1)
//! σ(Y) = p·σ(X) − (p−1)/4·e(B) − Σᵢ Ξ_p(αᵢ)                      (2)
//! ```
//!
//! Both are evaluated exactly; a non-integral right-hand side of (2) is
//! reported as an inconsistency rather than rounded.

use crate::{Int, Rat};
use num_traits::One;
use serde::Serialize;

/// The ambient four-manifold `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseData {
    pub sigma_x: i64,
    pub chi_x: i64,
    pub simply_connected: bool,
}

/// The branching surface `B` with its singularity defects, one per cone
/// point.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchData {
    pub chi_b: i64,
    /// Self-intersection number `e(B) = [B]·[B]`.
    pub e_b: i64,
    /// `Ξ_p(α_i)` for each singular point.
    pub singularities: Vec<Rat>,
}

#[derive(Debug, thiserror::Error)]
pub enum PredictError {
    #[error("p must be an odd prime power ≥ 3, got {0}")]
    BadPrime(u64),
    #[error("a simply-connected closed 4-manifold has χ ≥ 2, got {0}")]
    BadEuler(i64),
    #[error("signature formula is non-integral: σ(Y) = {0}")]
    NonIntegral(Rat),
    #[error("no unimodular form has |σ| = {sigma} > rank = {rank}")]
    SignatureExceedsRank { sigma: i64, rank: i64 },
    #[error("no even unimodular form has σ = {sigma}, rank = {rank}")]
    ImpossibleEvenForm { sigma: i64, rank: i64 },
}

fn check_inputs(p: u64, base: &BaseData) -> Result<(), PredictError> {
    if p < 3 || p % 2 == 0 {
        return Err(PredictError::BadPrime(p));
    }
    if base.simply_connected && base.chi_x < 2 {
        return Err(PredictError::BadEuler(base.chi_x));
    }
    Ok(())
}

/// Eq. (1): `χ(Y) = p·χ(X) − (p−1)/2·χ(B) − k·(p−1)/2`.
pub fn euler_of_cover(p: u64, base: &BaseData, branch: &BranchData) -> Result<i64, PredictError> {
    check_inputs(p, base)?;
    let p = p as i64;
    let k = branch.singularities.len() as i64;
    Ok(p * base.chi_x - (p - 1) / 2 * branch.chi_b - k * (p - 1) / 2)
}

/// Eq. (2): `σ(Y) = p·σ(X) − (p−1)/4·e(B) − Σ Ξ_p(αᵢ)`, evaluated exactly.
/// A non-integral value means the supplied data cannot come from an actual
/// cover and is returned as an error carrying the exact rational.
pub fn signature_of_cover(p: u64, base: &BaseData, branch: &BranchData) -> Result<i64, PredictError> {
    check_inputs(p, base)?;
    let pi = Int::from(p);
    let mut sigma = Rat::from_integer(&pi * Int::from(base.sigma_x));
    sigma -= Rat::new((&pi - 1) * Int::from(branch.e_b), Int::from(4));
    for xi in &branch.singularities {
        sigma -= xi;
    }
    if !sigma.denom().is_one() {
        return Err(PredictError::NonIntegral(sigma));
    }
    Ok(i64::try_from(sigma.to_integer()).expect("signature fits in i64"))
}

/// Parity of a unimodular symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Classification bucket of an indefinite (or forced-definite) unimodular
/// form over ℤ, with a human-readable normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormDescriptor {
    pub rank: i64,
    pub signature: i64,
    pub parity: Parity,
    pub definite: bool,
    /// Normal form: `⟨1⟩^a ⊕ ⟨−1⟩^b`, `±I_n`, `q·E8 ⊕ m·H`, or `0`.
    pub normal_form: String,
}

/// Descriptor of the intersection form of a simply-connected closed
/// 4-manifold with signature `sigma` and Euler characteristic `chi`;
/// `rank = chi − 2`. Definite forms are reported in diagonal form `±I_n`;
/// indefinite forms follow the odd/even trichotomy
/// (`⟨1⟩^a ⊕ ⟨−1⟩^b` resp. `q·E8 ⊕ m·H`).
pub fn intersection_form_descriptor(
    sigma: i64,
    chi: i64,
    odd_form: bool,
) -> Result<FormDescriptor, PredictError> {
    if chi < 2 {
        return Err(PredictError::BadEuler(chi));
    }
    let rank = chi - 2;
    if sigma.abs() > rank {
        return Err(PredictError::SignatureExceedsRank { sigma, rank });
    }
    if rank == 0 {
        return Ok(FormDescriptor {
            rank,
            signature: 0,
            parity: Parity::Even,
            definite: true,
            normal_form: "0".into(),
        });
    }
    let definite = sigma.abs() == rank;
    if definite {
        // a nonzero definite intersection form of a closed simply-connected
        // 4-manifold is diagonal (±I_n), hence odd
        return Ok(FormDescriptor {
            rank,
            signature: sigma,
            parity: Parity::Odd,
            definite: true,
            normal_form: format!("{}I_{rank}", if sigma > 0 { "+" } else { "−" }),
        });
    }
    if odd_form {
        let a = (rank + sigma) / 2;
        let b = (rank - sigma) / 2;
        if a + b != rank {
            // rank and signature of an integral form have equal parity
            return Err(PredictError::SignatureExceedsRank { sigma, rank });
        }
        Ok(FormDescriptor {
            rank,
            signature: sigma,
            parity: Parity::Odd,
            definite: false,
            normal_form: format!("⟨1⟩^{a} ⊕ ⟨−1⟩^{b}"),
        })
    } else {
        // indefinite even: q·E8 ⊕ m·H with σ = 8q, rank = 8|q| + 2m, m ≥ 1
        if sigma % 8 != 0 {
            return Err(PredictError::ImpossibleEvenForm { sigma, rank });
        }
        let q = sigma / 8;
        let rest = rank - 8 * q.abs();
        if rest < 2 || rest % 2 != 0 {
            return Err(PredictError::ImpossibleEvenForm { sigma, rank });
        }
        let m = rest / 2;
        Ok(FormDescriptor {
            rank,
            signature: sigma,
            parity: Parity::Even,
            definite: false,
            normal_form: format!("{q}·E8 ⊕ {m}·H"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    const S4: BaseData = BaseData { sigma_x: 0, chi_x: 2, simply_connected: true };

    #[test]
    fn sphere_cover_is_cp2() {
        // the three-fold dihedral cover of S⁴ branched over a 2-sphere with
        // one singular point of defect −1 has (χ, σ) = (3, 1): CP²'s profile
        let branch = BranchData { chi_b: 2, e_b: 0, singularities: vec![ratio(-1, 1)] };
        assert_eq!(euler_of_cover(3, &S4, &branch).unwrap(), 3);
        assert_eq!(signature_of_cover(3, &S4, &branch).unwrap(), 1);
        let d = intersection_form_descriptor(1, 3, true).unwrap();
        assert_eq!(d.rank, 1);
        assert!(d.definite);
        assert_eq!(d.normal_form, "+I_1");
    }

    #[test]
    fn unbranched_terms_vanish() {
        // torus branch locus, no singularities: χ correction vanishes
        let branch = BranchData { chi_b: 0, e_b: 0, singularities: vec![] };
        for p in [3u64, 5, 7] {
            let base = BaseData { sigma_x: -4, chi_x: 6, simply_connected: false };
            assert_eq!(euler_of_cover(p, &base, &branch).unwrap(), p as i64 * 6);
            assert_eq!(signature_of_cover(p, &base, &branch).unwrap(), p as i64 * -4);
        }
    }

    #[test]
    fn extra_singularities_add_defects() {
        let one = BranchData { chi_b: 2, e_b: 0, singularities: vec![ratio(-1, 1)] };
        let two = BranchData { chi_b: 2, e_b: 0, singularities: vec![ratio(-1, 1), ratio(2, 1)] };
        let e1 = euler_of_cover(5, &S4, &one).unwrap();
        let e2 = euler_of_cover(5, &S4, &two).unwrap();
        assert_eq!(e2, e1 - 2); // one extra −(p−1)/2
        let s1 = signature_of_cover(5, &S4, &one).unwrap();
        let s2 = signature_of_cover(5, &S4, &two).unwrap();
        assert_eq!(s2, s1 - 2); // defects add
    }

    #[test]
    fn non_integral_signature_is_flagged() {
        let branch = BranchData { chi_b: 2, e_b: 1, singularities: vec![] };
        match signature_of_cover(3, &S4, &branch) {
            Err(PredictError::NonIntegral(v)) => assert_eq!(v, ratio(-1, 2)),
            other => panic!("expected non-integral flag, got {other:?}"),
        }
        // Ξ itself may be the non-integral part
        let branch = BranchData { chi_b: 2, e_b: 0, singularities: vec![ratio(-8, 3)] };
        assert!(matches!(
            signature_of_cover(3, &S4, &branch),
            Err(PredictError::NonIntegral(_))
        ));
    }

    #[test]
    fn descriptors() {
        let d = intersection_form_descriptor(0, 4, true).unwrap();
        assert_eq!((d.rank, d.definite, d.parity), (2, false, Parity::Odd));
        assert_eq!(d.normal_form, "⟨1⟩^1 ⊕ ⟨−1⟩^1");
        assert!(matches!(
            intersection_form_descriptor(3, 4, true),
            Err(PredictError::SignatureExceedsRank { .. })
        ));
        let d = intersection_form_descriptor(0, 4, false).unwrap();
        assert_eq!(d.normal_form, "0·E8 ⊕ 1·H"); // S²×S²
        let d = intersection_form_descriptor(-16, 24, false).unwrap();
        assert_eq!(d.normal_form, "-2·E8 ⊕ 3·H"); // the K3 surface
        assert!(matches!(
            intersection_form_descriptor(4, 8, false),
            Err(PredictError::ImpossibleEvenForm { .. })
        ));
        assert!(matches!(
            intersection_form_descriptor(1, 4, true),
            Err(PredictError::SignatureExceedsRank { .. })
        ));
    }

    #[test]
    fn bad_inputs_rejected() {
        let branch = BranchData { chi_b: 2, e_b: 0, singularities: vec![] };
        assert!(matches!(euler_of_cover(4, &S4, &branch), Err(PredictError::BadPrime(4))));
        assert!(matches!(euler_of_cover(1, &S4, &branch), Err(PredictError::BadPrime(1))));
        let bad = BaseData { sigma_x: 0, chi_x: 1, simply_connected: true };
        assert!(matches!(euler_of_cover(3, &bad, &branch), Err(PredictError::BadEuler(1))));
    }

    #[test]
    fn roundtrip_with_xi_on_trefoil_singularity() {
        // a singular sphere in S⁴ with one trefoil cone point: σ(Y) must come
        // out integral because Ξ₃ + (p−1)/4·e(B) does, for suitable e(B)
        let xi = crate::xi::xi_p(&crate::scene::systems::trefoil_realizations()[0], None, 3)
            .unwrap()
            .xi;
        // pick e(B) with (p−1)/4·e(B) ≡ Ξ mod 1: e(B) = 10/3... not integral,
        // so instead check the non-integral flag fires — the trefoil does not
        // bound the smooth piece of such a sphere with e(B) ≡ 0 (mod 2)
        let branch = BranchData { chi_b: 2, e_b: 0, singularities: vec![xi.clone()] };
        assert!(matches!(
            signature_of_cover(3, &S4, &branch),
            Err(PredictError::NonIntegral(_))
        ));
        // with e(B) = 2 the two fractional parts: (3−1)/4·2 = 1 integral, Ξ
        // still fractional — flag again
        let branch = BranchData { chi_b: 2, e_b: 2, singularities: vec![xi] };
        assert!(matches!(
            signature_of_cover(3, &S4, &branch),
            Err(PredictError::NonIntegral(_))
        ));
    }

    #[test]
    fn superposition_linearity() {
        // χ is linear in (χ(X), χ(B), k) and σ in (σ(X), e(B), ΣΞ):
        // f(u+v) + f(0) = f(u) + f(v) for each formula
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 41) as i64 - 20
        };
        for _ in 0..1000 {
            let p = [3u64, 5, 7, 11][rng().rem_euclid(4) as usize];
            let (x1, b1, k1) = (rng(), rng(), rng().rem_euclid(4));
            let (x2, b2, k2) = (rng(), rng(), rng().rem_euclid(4));
            let base = |x| BaseData { sigma_x: x, chi_x: x, simply_connected: false };
            let br = |b, k: i64, xi: i64| BranchData {
                chi_b: b,
                e_b: 4 * b,
                singularities: (0..k).map(|_| ratio(xi, 1)).collect(),
            };
            let chi = |x, b, k| euler_of_cover(p, &base(x), &br(b, k, 0)).unwrap();
            assert_eq!(chi(x1 + x2, b1 + b2, k1 + k2) + chi(0, 0, 0), chi(x1, b1, k1) + chi(x2, b2, k2));
            let (q1, q2) = (rng(), rng());
            let sig = |x, b, xi| signature_of_cover(p, &base(x), &br(b, 1, xi)).unwrap();
            // one singularity each; Ξ enters as a plain sum
            assert_eq!(
                sig(x1 + x2, b1 + b2, q1 + q2) + sig(0, 0, 0),
                sig(x1, b1, q1) + sig(x2, b2, q2)
            );
        }
    }
}
