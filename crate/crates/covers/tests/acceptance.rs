//! Acceptance suite: one test (one pass/fail line) per acceptance criterion.
//!
//! Each criterion is verified against independent oracles implemented inside
//! this file wherever the library value could be self-fulfilling: the
//! admissibility case analysis is restated from scratch, the kernel of the
//! symmetrized Seifert form is brute-forced over (ℤ/3)⁶, the trefoil
//! dihedral branch-curve linking number is recomputed from an explicit
//! rational-arithmetic embedding of the lifted curves, and the
//! Tristram–Levine values are cross-checked with a 100-digit fixed-point
//! evaluation.

use covers::complex::{self, branch_curves, homology, lift, CoverComplex, Homology, Rep};
use covers::corpus;
use covers::diagram::{build_k1, build_k2, embedded_trefoil, TwoBridgeSpec};
use covers::dihedral::{admits_dihedral_cover, coloring_to_rep, fox_colorings};
use covers::linalg::det_bareiss;
use covers::predict::{
    euler_of_cover, intersection_form_descriptor, signature_of_cover, BaseData, BranchData,
};
use covers::scene::systems;
use covers::seifert::{characteristic_classes, seifert_matrix_c, symmetrize};
use covers::signatures::{tl_signature, TLPoint};
use covers::twobridge::{
    det_closed_form, enumerate_admissible, p3_admissible, p3_characteristic_class, Family,
    FamilyPoint,
};
use covers::xi::xi_invariance_check;
use covers::{Int, Rat};
use num_traits::{One, Signed, Zero};

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

// ---------------------------------------------------------------------------
// Criterion 1: the p = 3 admissibility table over |a|,|b| ≤ 6 matches the
// four-case analysis AND the Fox-coloring decision procedure.
// ---------------------------------------------------------------------------

/// Independent restatement of the case analysis: an irregular three-fold
/// dihedral cover exists exactly in the four residue cases below.
fn oracle_case(family: Family, a: i64, b: i64) -> Option<u8> {
    let (ra, rb) = (a.rem_euclid(3), b.rem_euclid(3));
    match (family, ra, rb) {
        (Family::K1, 0, 2) => Some(1),
        (Family::K1, 1, 1) => Some(2),
        (Family::K2, 0, 1) => Some(3),
        (Family::K2, 1, 0) => Some(4),
        _ => None,
    }
}

#[test]
fn criterion_1_admissibility_table() {
    for family in [Family::K1, Family::K2] {
        for a in -6..=6i64 {
            for b in -6..=6i64 {
                if a == 0 || b == 0 {
                    continue;
                }
                let pt = FamilyPoint::new(family, a, b);
                let expected = oracle_case(family, a, b);
                assert_eq!(p3_admissible(&pt), expected, "{family:?}({a},{b}) case");
                // second, fully independent path: nontrivial Fox 3-colorings
                let diag = match family {
                    Family::K1 => build_k1(a, b).unwrap(),
                    Family::K2 => build_k2(a, b).unwrap(),
                };
                let admits = admits_dihedral_cover(&diag, 3).unwrap();
                assert_eq!(admits, expected.is_some(), "{family:?}({a},{b}) coloring");
            }
        }
    }
    eprintln!("criterion 1: PASS — admissibility cases (1)–(4) match Fox colorings, |a|,|b| ≤ 6");
}

// ---------------------------------------------------------------------------
// Criterion 2: determinant closed forms over |a|,|b| ≤ 10.
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_determinant_closed_forms() {
    for a in -10..=10i64 {
        for b in -10..=10i64 {
            if a == 0 || b == 0 {
                continue;
            }
            let d1 = det_bareiss(&symmetrize(
                &seifert_matrix_c(&TwoBridgeSpec::k1(a, b).unwrap().e).unwrap().l,
            ));
            let f1 = 8 * a * b + 2 * b - 1;
            assert_eq!(d1, Int::from(-(f1 * f1)), "K1({a},{b})");
            assert_eq!(d1, det_closed_form(&FamilyPoint::new(Family::K1, a, b)));
            let d2 = det_bareiss(&symmetrize(
                &seifert_matrix_c(&TwoBridgeSpec::k2(a, b).unwrap().e).unwrap().l,
            ));
            let f2 = 8 * a * b + 2 * a + 2 * b + 1;
            assert_eq!(d2, Int::from(-(f2 * f2)), "K2({a},{b})");
            assert_eq!(d2, det_closed_form(&FamilyPoint::new(Family::K2, a, b)));
        }
    }
    eprintln!(
        "criterion 2: PASS — det = −(8ab+2b−1)² on K₁ and −(8ab+2a+2b+1)² on K₂, |a|,|b| ≤ 10"
    );
}

// ---------------------------------------------------------------------------
// Criterion 3: characteristic classes per admissible case, against brute
// force over (ℤ/3)⁶.
// ---------------------------------------------------------------------------

/// All nonzero kernel vectors of `m` mod 3, by exhaustion over (ℤ/3)ⁿ.
fn brute_kernel_mod3(m: &[Vec<Int>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mi: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|v| i64::try_from(v % 3i64).unwrap().rem_euclid(3)).collect())
        .collect();
    let mut out = Vec::new();
    for code in 1..3usize.pow(n as u32) {
        let mut v = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            v.push((c % 3) as i64);
            c /= 3;
        }
        let ok = mi
            .iter()
            .all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() % 3 == 0);
        if ok {
            out.push(v);
        }
    }
    out
}

fn parallel_mod3(a: &[i64], b: &[i64]) -> bool {
    (1..3).any(|s| a.iter().zip(b).all(|(x, y)| (s * x - y).rem_euclid(3) == 0))
}

#[test]
fn criterion_3_characteristic_classes() {
    // one representative point per admissibility case
    let reps = [
        (FamilyPoint::new(Family::K1, 3, 2), 1u8),
        (FamilyPoint::new(Family::K1, 1, 1), 2),
        (FamilyPoint::new(Family::K2, 3, 1), 3),
        (FamilyPoint::new(Family::K2, 1, 3), 4),
    ];
    for (pt, case) in reps {
        assert_eq!(p3_admissible(&pt), Some(case));
        let table = p3_characteristic_class(&pt).expect("admissible point has a class");
        let table: Vec<i64> = table.iter().map(|v| i64::try_from(v.clone()).unwrap()).collect();
        let sym = seifert_matrix_c(&pt.spec().unwrap().e).unwrap().symmetrized();
        let classes = characteristic_classes(&sym, 3);
        // the table class is one of the returned kernel classes, up to scalar
        let as_small = |v: &Vec<Int>| -> Vec<i64> {
            v.iter().map(|x| i64::try_from(x % 3i64).unwrap().rem_euclid(3)).collect()
        };
        assert!(
            classes.iter().any(|c| parallel_mod3(&as_small(c), &table)),
            "case {case}: table class not among computed classes"
        );
        // brute force: every nonzero kernel vector is a scalar multiple of
        // some returned class, and vice versa
        let brute = brute_kernel_mod3(&sym);
        assert!(!brute.is_empty());
        for v in &brute {
            assert!(
                classes.iter().any(|c| parallel_mod3(&as_small(c), v)),
                "case {case}: kernel vector missing from classes"
            );
        }
        for c in &classes {
            assert!(
                brute.iter().any(|v| parallel_mod3(v, &as_small(c))),
                "case {case}: returned class not in brute-forced kernel"
            );
        }
    }
    eprintln!("criterion 3: PASS — per-case characteristic classes match brute-forced (ℤ/3)⁶ kernels");
}

// ---------------------------------------------------------------------------
// Criterion 4: cover homology orders.
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_cover_homology() {
    // |H₁(2-fold branched cover)| = knot determinant
    for (name, det) in [("trefoil", 3i64), ("figure-eight", 5), ("six-one", 9)] {
        let link = corpus::find(name).unwrap().embedded().unwrap();
        let cc = lift(&link, &Rep::two_fold(link.n_arcs)).unwrap();
        let h1 = homology(&cc, 1);
        assert_eq!(h1.order(), Some(Int::from(det)), "{name} double cover");
    }
    // H₁(3-fold irregular dihedral cover) = 0 for every 3-admissible
    // two-bridge corpus knot (the cover is S³)
    for entry in corpus::entries() {
        if entry.det % 3 != 0 {
            continue;
        }
        let link = entry.embedded().unwrap();
        let cols = fox_colorings(&link.arc_diagram(), 3).unwrap();
        let col = cols.iter().find(|c| !c.is_trivial()).unwrap();
        let rep = Rep::from_dihedral(&coloring_to_rep(col).unwrap());
        let cc = lift(&link, &rep).unwrap();
        assert_eq!(
            homology(&cc, 1),
            Homology { free_rank: 0, torsion: vec![] },
            "{} dihedral cover",
            entry.name
        );
    }
    eprintln!("criterion 4: PASS — double-cover H₁ orders 3/5/9; dihedral-cover H₁ = 0");
}

// ---------------------------------------------------------------------------
// Criterion 5: engine soundness — ∂∘∂ = 0, pivot invariance, and the trefoil
// branch-curve linking against an independent geometric oracle.
// ---------------------------------------------------------------------------

fn assert_boundary_squares_to_zero(cc: &CoverComplex, what: &str) {
    let compose = |outer: &Vec<Vec<(usize, i64)>>, inner: &Vec<Vec<(usize, i64)>>| {
        for (cell, bd) in inner.iter().enumerate() {
            let mut acc = std::collections::BTreeMap::<usize, i64>::new();
            for &(mid, c1) in bd {
                for &(lo, c2) in &outer[mid] {
                    *acc.entry(lo).or_insert(0) += c1 * c2;
                }
            }
            assert!(
                acc.values().all(|&v| v == 0),
                "{what}: ∂∂ ≠ 0 at cell {cell}"
            );
        }
    };
    compose(&cc.d1, &cc.d2);
    compose(&cc.d2, &cc.d3);
}

/// Exact point on the unit circle at `f` turns: each quadrant is covered by
/// the rational parametrization t ↦ ((1−t²)/(1+t²), 2t/(1+t²)), t ∈ [0,1).
fn circ(f: &Rat) -> (Rat, Rat) {
    let f = f - f.floor();
    let f4 = &f * Rat::from_integer(Int::from(4));
    let q = f4.floor();
    let t = &f4 - &q;
    let q = i64::try_from(q.to_integer()).unwrap();
    let t2 = &t * &t;
    let den = Rat::one() + &t2;
    let c = (Rat::one() - &t2) / &den;
    let s = (rat(2, 1) * &t) / &den;
    match q {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// Point on (a push-off of) the standardly embedded Heegaard torus, in the
/// flat coordinates of the 6-fold cover torus ℝ²/⟨(1,0),(0,3)⟩: meridian and
/// longitude turns (μ, λ) = (x + y/3, −y/3), tube radius 2 + off, core
/// radius 5.
fn torus_pt(x: &Rat, y: &Rat, off: &Rat) -> [Rat; 3] {
    let mu = x + y / rat(3, 1);
    let la = -(y / rat(3, 1));
    let (cm, sm) = circ(&mu);
    let (cl, sl) = circ(&la);
    let rr = rat(2, 1) + off;
    let rad = rat(5, 1) + &rr * &cm;
    [&rad * &cl, &rad * &sl, &rr * &sm]
}

/// Interior bump vanishing at the endpoints (replaces sin(πu) — only
/// positivity and the zeros matter).
fn bump(u: &Rat) -> Rat {
    rat(4, 1) * u * (Rat::one() - u)
}

/// One branch-curve component of the 6-fold cover of (S³, trefoil): two
/// bottom half-meridian arcs pushed inside the tube and two top slanted arcs
/// pushed outside, rows y₁ and y₁ + 3/2, slant −3 (handedness matching the
/// 3-crossing PD trefoil).
fn oracle_curve(y1: Rat, n: usize) -> Vec<[Rat; 3]> {
    let mut pts = Vec::new();
    let nq = Rat::from_integer(Int::from(n as i64));
    let slant = rat(-3, 1);
    let mut add_pair = |y1: &Rat| {
        // bottom arc (0,y) → (1/2,y), off < 0
        for i in 0..n {
            let u = Rat::from_integer(Int::from(i as i64)) / &nq;
            let x = &u / rat(2, 1);
            let off = -(rat(3, 5) * bump(&u));
            pts.push(torus_pt(&x, y1, &off));
        }
        // top arc (1/2,y₁) → (0, y₁ + 3/2) along y = y₁ + slant·(x − 1/2),
        // off > 0
        for i in 0..n {
            let s = Rat::from_integer(Int::from(i as i64)) / &nq;
            let x = (Rat::one() - &s) / rat(2, 1);
            let y = y1 + &slant * (&x - rat(1, 2));
            let off = rat(3, 5) * bump(&s);
            pts.push(torus_pt(&x, &y, &off));
        }
    };
    let y2 = &y1 + rat(3, 2);
    add_pair(&y1);
    add_pair(&y2);
    pts
}

/// Exact linking number of two disjoint closed polylines: half the signed
/// crossing count of the z-projection. Panics on any projective degeneracy
/// (none occur for the curves used here).
fn lk_polylines(a: &[[Rat; 3]], b: &[[Rat; 3]]) -> Rat {
    let seg = |pts: &[[Rat; 3]]| -> Vec<([Rat; 3], [Rat; 3], [f64; 4])> {
        (0..pts.len())
            .map(|i| {
                let p = pts[i].clone();
                let q = pts[(i + 1) % pts.len()].clone();
                let f = |r: &Rat| -> f64 {
                    use num_traits::ToPrimitive;
                    r.to_f64().unwrap()
                };
                let bb = [
                    f(&p[0]).min(f(&q[0])) - 1e-9,
                    f(&p[0]).max(f(&q[0])) + 1e-9,
                    f(&p[1]).min(f(&q[1])) - 1e-9,
                    f(&p[1]).max(f(&q[1])) + 1e-9,
                ];
                (p, q, bb)
            })
            .collect()
    };
    let orient = |a: &[Rat; 3], b: &[Rat; 3], c: &[Rat; 3]| -> Rat {
        (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
    };
    let sa = seg(a);
    let sb = seg(b);
    let mut signed = Rat::zero();
    for (p1, p2, ba) in &sa {
        for (q1, q2, bb) in &sb {
            if ba[0] > bb[1] || bb[0] > ba[1] || ba[2] > bb[3] || bb[2] > ba[3] {
                continue;
            }
            let d1 = orient(p1, p2, q1);
            let d2 = orient(p1, p2, q2);
            let d3 = orient(q1, q2, p1);
            let d4 = orient(q1, q2, p2);
            assert!(
                !d1.is_zero() && !d2.is_zero() && !d3.is_zero() && !d4.is_zero(),
                "degenerate projection"
            );
            if d1.is_positive() == d2.is_positive() || d3.is_positive() == d4.is_positive() {
                continue;
            }
            // crossing parameters: s on a-segment, t on b-segment
            let s = &d3 / (&d3 - &d4);
            let t = &d1 / (&d1 - &d2);
            let za = &p1[2] + &s * (&p2[2] - &p1[2]);
            let zb = &q1[2] + &t * (&q2[2] - &q1[2]);
            assert_ne!(za, zb, "curves intersect");
            // sign of det(tangent_a, tangent_b) in the plane
            let cross = (&p2[0] - &p1[0]) * (&q2[1] - &q1[1]) - (&p2[1] - &p1[1]) * (&q2[0] - &q1[0]);
            assert!(!cross.is_zero());
            let sgn = if cross.is_positive() { Rat::one() } else { -Rat::one() };
            // crossing sign: positive frame (over tangent, under tangent)
            signed += if za > zb { sgn } else { -sgn };
        }
    }
    signed / rat(2, 1)
}

#[test]
fn criterion_5_engine_soundness() {
    // (a) ∂∘∂ = 0 on every constructed complex
    for entry in corpus::entries() {
        let Some(link) = entry.embedded() else { continue };
        assert_boundary_squares_to_zero(&complex::base_complex(&link).unwrap(), entry.name);
        assert_boundary_squares_to_zero(
            &lift(&link, &Rep::two_fold(link.n_arcs)).unwrap(),
            entry.name,
        );
        if entry.det % 3 == 0 {
            let cols = fox_colorings(&link.arc_diagram(), 3).unwrap();
            let col = cols.iter().find(|c| !c.is_trivial()).unwrap();
            let rep = Rep::from_dihedral(&coloring_to_rep(col).unwrap());
            assert_boundary_squares_to_zero(&lift(&link, &rep).unwrap(), entry.name);
        }
    }

    // (b) linking invariant under re-solving with permuted pivots
    let link = embedded_trefoil();
    let cols = fox_colorings(&link.arc_diagram(), 3).unwrap();
    let col = cols.iter().find(|c| !c.is_trivial()).unwrap();
    let cc = lift(&link, &Rep::from_dihedral(&coloring_to_rep(col).unwrap())).unwrap();
    let mut curves = branch_curves(&cc);
    curves.sort_by_key(|c| c.branching_index);
    let cycles = vec![curves[1].cycle.clone()];
    let mut values = Vec::new();
    for rot in [0usize, 1, 7, cc.counts[2] / 3, cc.counts[2] / 2 + 1] {
        let chains = complex::bounding_chains(&cc, &cycles, rot).unwrap();
        values.push(complex::pairing(&curves[0].pushoff, &chains[0], curves[0].push_mult));
    }
    assert!(values.windows(2).all(|w| w[0] == w[1]), "pivot dependence: {values:?}");
    let engine_lk = values[0].clone();

    // (c) independent diagram-lift oracle, self-validated on a Hopf link:
    // two exact rational circles with lk = ±1
    let n = 64;
    let circle_a: Vec<[Rat; 3]> = (0..n)
        .map(|i| {
            let (c, s) = circ(&rat(i, n));
            [c, s, Rat::zero()]
        })
        .collect();
    let circle_b: Vec<[Rat; 3]> = (0..n)
        .map(|i| {
            let (c, s) = circ(&rat(i, n));
            [Rat::one() + c, &s / rat(3, 1), s]
        })
        .collect();
    let hopf = lk_polylines(&circle_a, &circle_b);
    assert!(hopf.abs() == Rat::one(), "Hopf self-check: {hopf}");

    // the three branch-curve components of the 6-fold cover of the trefoil,
    // at rows {0, 3/2}, {1, 5/2}, {2, 1/2}; slightly different sampling
    // densities break accidental projective symmetries
    let c0 = oracle_curve(rat(0, 1), 96);
    let c1 = oracle_curve(rat(1, 1), 97);
    let c2 = oracle_curve(rat(2, 1), 101);
    let l01 = lk_polylines(&c0, &c1);
    let l02 = lk_polylines(&c0, &c2);
    let l12 = lk_polylines(&c1, &c2);
    assert_eq!(l01, rat(-1, 1));
    assert_eq!(l02, rat(-1, 1));
    assert_eq!(l12, rat(-1, 1));
    // transfer through the 2-fold branched cover onto the dihedral cover:
    // lk(index-1 curve, index-2 curve) = lk(C0,C1) + lk(C0,C2)
    let oracle_lk = &l01 + &l02;
    assert_eq!(engine_lk, oracle_lk);
    assert_eq!(oracle_lk, rat(-2, 1));
    eprintln!("criterion 5: PASS — ∂∂=0, pivot-invariant linking, trefoil branch lk = −2 = geometric oracle");
}

// ---------------------------------------------------------------------------
// Criterion 6: Ξ invariance across realizations.
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_xi_invariance() {
    // trefoil: two distinct β realizations of the class (1,−1)
    let trefoil = systems::trefoil_realizations();
    let same: Vec<_> = trefoil
        .iter()
        .filter(|s| s.curves[0].class == trefoil[0].curves[0].class)
        .cloned()
        .collect();
    assert!(same.len() >= 2);
    let rep = xi_invariance_check(&same, None, 3).unwrap();
    // caveat: Ξ₃(trefoil) is provably non-integral (quadratic term −8/3 plus
    // integers); the integrality asserted by the sliceness hypotheses does
    // not apply to the trefoil, so the exact rational value is pinned
    // instead and the report's flag records the failure
    assert_eq!(rep.xi, rat(-8, 3));
    assert!(!rep.integral);
    // a realization with a different lift of the same mod-3 class differs by
    // an integer
    let spiral = covers::xi::xi_p(&trefoil[2], None, 3).unwrap();
    assert!((&spiral.xi - &rep.xi).denom().is_one());

    // two K₁ examples, two realizations each; here the sliceness hypotheses
    // hold and Ξ₃ is an integer
    for specs in [systems::k1_case1_realizations(), systems::k1_case2_realizations()] {
        assert!(specs.len() >= 2);
        let rep = xi_invariance_check(&specs, None, 3).unwrap();
        assert!(rep.integral, "K₁ example Ξ must be integral");
        assert_eq!(rep.xi, Rat::zero());
    }
    eprintln!(
        "criterion 6: PASS — Ξ₃ realization-independent; integral on K₁ examples; \
         trefoil value pinned at −8/3 (non-integral, integrality hypotheses do not apply)"
    );
}

// ---------------------------------------------------------------------------
// Criterion 7: cover formulas and linearity.
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_formula_suite() {
    let s4 = BaseData { sigma_x: 0, chi_x: 2, simply_connected: true };
    let sphere1 = BranchData { chi_b: 2, e_b: 0, singularities: vec![rat(-1, 1)] };
    assert_eq!(euler_of_cover(3, &s4, &sphere1).unwrap(), 3);
    assert_eq!(signature_of_cover(3, &s4, &sphere1).unwrap(), 1);
    // the (σ, χ) = (1, 3) profile: rank-1 positive definite form
    let d = intersection_form_descriptor(1, 3, true).unwrap();
    assert_eq!((d.rank, d.signature, d.definite), (1, 1, true));

    // linearity by superposition on 1000 random inputs
    let mut state = 0x243f6a8885a308d3u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 41) as i64 - 20
    };
    for _ in 0..1000 {
        let p = [3u64, 5, 7, 11][rng().rem_euclid(4) as usize];
        let base = |x: i64| BaseData { sigma_x: x, chi_x: x, simply_connected: false };
        let br = |b: i64, k: i64, xi: i64| BranchData {
            chi_b: b,
            e_b: 4 * b,
            singularities: (0..k).map(|_| rat(xi, 1)).collect(),
        };
        let (x1, b1, k1) = (rng(), rng(), rng().rem_euclid(4));
        let (x2, b2, k2) = (rng(), rng(), rng().rem_euclid(4));
        let chi = |x, b, k| euler_of_cover(p, &base(x), &br(b, k, 0)).unwrap();
        assert_eq!(chi(x1 + x2, b1 + b2, k1 + k2) + chi(0, 0, 0), chi(x1, b1, k1) + chi(x2, b2, k2));
        let (q1, q2) = (rng(), rng());
        let sig = |x, b, xi| signature_of_cover(p, &base(x), &br(b, 1, xi)).unwrap();
        assert_eq!(
            sig(x1 + x2, b1 + b2, q1 + q2) + sig(0, 0, 0),
            sig(x1, b1, q1) + sig(x2, b2, q2)
        );
    }
    eprintln!("criterion 7: PASS — CP² profile (σ,χ) = (1,3); linearity on 1000 random inputs");
}

// ---------------------------------------------------------------------------
// Criterion 8: Tristram–Levine signatures.
// ---------------------------------------------------------------------------

/// Newton integer square root.
fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative());
    if n.is_zero() {
        return Int::zero();
    }
    let mut x: Int = n.clone();
    let mut y: Int = (&x + 1) / 2;
    while y < x {
        x = y.clone();
        y = (&x + n / &x) / 2;
    }
    x
}

/// 100-digit fixed-point oracle for the trefoil's Tristram–Levine signature
/// at ζ = e^(2πi·i/3): the Hermitian form (1−ζ)L + (1−ζ̄)Lᵀ is 2×2, so its
/// signature follows from the signs of its determinant and trace, evaluated
/// in scaled-integer arithmetic with √3 to 100 digits.
fn trefoil_tl_oracle(l: &[Vec<Int>], i: u64) -> i64 {
    let scale: Int = Int::from(10).pow(100);
    let sqrt3 = isqrt(&(Int::from(3) * &scale * &scale));
    // ζ = (−1/2, ±√3/2) at scale; 1 − ζ = (3/2, ∓√3/2)
    let re_one_minus: Int = Int::from(3) * &scale / 2;
    let im_one_minus: Int = if i == 1 { -&sqrt3 / 2 } else { sqrt3.clone() / 2 };
    // H = (1−ζ)L + conj(1−ζ)Lᵀ; entries (re, im) at scale
    let ent = |r: usize, c: usize| -> (Int, Int) {
        let lrc = &l[r][c];
        let lcr = &l[c][r];
        (
            (&re_one_minus * lrc) + (&re_one_minus * lcr),
            (&im_one_minus * lrc) - (&im_one_minus * lcr),
        )
    };
    let (h11, h11i) = ent(0, 0);
    let (h22, h22i) = ent(1, 1);
    let (h12r, h12i) = ent(0, 1);
    assert!(h11i.is_zero() && h22i.is_zero(), "diagonal must be real");
    // det·scale² = h11·h22 − |h12|²; trace·scale = h11 + h22
    let det = &h11 * &h22 - (&h12r * &h12r + &h12i * &h12i);
    let trace = &h11 + &h22;
    // guard digits: the quantities are Θ(scale²) and Θ(scale); anything
    // smaller than scale would signal a loss of precision
    assert!(det.magnitude() > (&scale).magnitude());
    assert!(trace.magnitude() > (Int::from(10).pow(50)).magnitude());
    if det.is_positive() {
        if trace.is_positive() { 2 } else { -2 }
    } else {
        0
    }
}

#[test]
fn criterion_8_tristram_levine() {
    // conjugate symmetry σ_{ζ^i} = σ_{ζ^(p−i)} on 100 random two-bridge
    // Seifert matrices
    let mut state = 0x13198a2e03707344u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut tried = 0;
    while tried < 100 {
        let len = 2 * (1 + (rng() % 3) as usize);
        let e: Vec<i64> = (0..len)
            .map(|_| {
                let v = 2 * ((rng() % 5) as i64 - 2);
                if v == 0 { 2 } else { v }
            })
            .collect();
        let sd = seifert_matrix_c(&e).unwrap();
        let p = [3u64, 5, 7][(rng() % 3) as usize];
        for i in 1..p {
            let a = tl_signature(&sd, TLPoint::new(p, i).unwrap()).unwrap();
            let b = tl_signature(&sd, TLPoint::new(p, p - i).unwrap()).unwrap();
            assert_eq!(a, b, "conjugate symmetry, e={e:?}, p={p}, i={i}");
        }
        tried += 1;
    }
    // trefoil p = 3 values against the 100-digit fixed-point oracle
    let sd = seifert_matrix_c(&[2, -2]).unwrap();
    for i in [1u64, 2] {
        let engine = tl_signature(&sd, TLPoint::new(3, i).unwrap()).unwrap();
        assert_eq!(engine, -2, "trefoil σ_ζ^{i}");
        assert_eq!(engine, trefoil_tl_oracle(&sd.l, i));
    }
    eprintln!("criterion 8: PASS — conjugate symmetry ×100; trefoil (−2,−2) matches 100-digit oracle");
}

// ---------------------------------------------------------------------------
// Criterion 9: enumerate-slice witnesses.
// ---------------------------------------------------------------------------

fn modinv(a: i64, p: i64) -> i64 {
    (1..p).find(|x| (a.rem_euclid(p) * x) % p == 1).expect("unit")
}

#[test]
fn criterion_9_enumerate_witnesses() {
    for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
        let bound = p; // smallest positive residues fit in |a|,|b| ≤ p
        let found = enumerate_admissible(p as u64, bound).unwrap();
        let contains = |f: Family, a: i64, b: i64| {
            assert!(a != 0 && b != 0 && a.abs() <= bound && b.abs() <= bound);
            found.iter().any(|pt| pt.family == f && pt.a == a && pt.b == b)
        };
        let pick = |r: i64| if r == 0 { p } else { r }; // nonzero representative
        // K₁ with a ≡ 0, 2b ≡ 1 (take a = p to keep it nonzero)
        let b = pick(modinv(2, p));
        assert!(contains(Family::K1, p, b), "p={p}: K1 witness a≡0, 2b≡1");
        assert!(det_closed_form(&FamilyPoint::new(Family::K1, p, b)) % Int::from(p) == Int::zero());
        // K₁ with a ≡ 8⁻¹, b ≡ 3⁻¹
        if p != 3 {
            let a = pick(modinv(8, p));
            let b = pick(modinv(3, p));
            assert!(contains(Family::K1, a, b), "p={p}: K1 witness a≡8⁻¹, b≡3⁻¹");
            assert!(det_closed_form(&FamilyPoint::new(Family::K1, a, b)) % Int::from(p) == Int::zero());
        }
        // K₂ with b ≡ −1, a·(−6) ≡ 1
        if p != 3 {
            let a = pick(modinv(-6, p));
            assert!(contains(Family::K2, a, -1), "p={p}: K2 witness b≡−1, −6a≡1");
            assert!(det_closed_form(&FamilyPoint::new(Family::K2, a, -1)) % Int::from(p) == Int::zero());
        }
    }
    eprintln!("criterion 9: PASS — closed-form witnesses present for all odd primes p ≤ 23");
}
