//! Exact arithmetic in the real cyclotomic fields Q(2cos(2π/n)), with
//! certified sign determination for a designated embedding. This is what lets
//! Tristram–Levine signatures be computed with no floating point at all: the
//! Hermitian form at ζ = e^(2πi·j/n) is realified to a symmetric matrix with
//! entries in Q(2cos(2πj/n)) and eliminated symbolically, pivot signs decided
//! by interval refinement against the minimal polynomial.

use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};

/// Cyclotomic polynomial Φ_n as integer coefficients (index = degree).
pub fn cyclotomic(n: u64) -> Vec<Int> {
    // Φ_1 = x - 1; Φ_n = (x^n - 1) / Π_{d|n, d<n} Φ_d, by exact poly division.
    let mut num = vec![Int::zero(); n as usize + 1];
    num[0] = -Int::one();
    num[n as usize] = Int::one();
    let mut quo = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            quo = poly_div_exact(&quo, &phi_d);
        }
    }
    quo
}

fn poly_div_exact(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut r: Vec<Int> = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db].is_one() || b[db] == -Int::one());
    let mut q = vec![Int::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = if b[db].is_one() {
            r[i].clone()
        } else {
            -r[i].clone()
        };
        if !c.is_zero() {
            q[i - db] = c.clone();
            for j in 0..=db {
                let s = &c * &b[j];
                r[i - db + j] -= s;
            }
        }
    }
    assert!(r.iter().all(|x| x.is_zero()), "division must be exact");
    q
}

/// Minimal polynomial ψ_n of 2cos(2π/n) over Q (monic, integer coefficients),
/// obtained from the palindromic cyclotomic polynomial via the substitution
/// z^k + z^{-k} = c_k(t), c_0 = 2, c_1 = t, c_k = t·c_{k-1} − c_{k-2}.
pub fn real_min_poly(n: u64) -> Vec<Int> {
    assert!(n >= 3, "need n >= 3");
    let phi = cyclotomic(n);
    let two_d = phi.len() - 1;
    assert!(two_d % 2 == 0);
    let d = two_d / 2;
    // c_k as polynomials in t
    let mut c: Vec<Vec<Int>> = Vec::with_capacity(d + 1);
    c.push(vec![Int::from(2)]);
    if d >= 1 {
        c.push(vec![Int::zero(), Int::one()]);
    }
    for k in 2..=d {
        // t*c_{k-1} - c_{k-2}
        let mut t = vec![Int::zero()];
        t.extend_from_slice(&c[k - 1]);
        for (i, v) in c[k - 2].iter().enumerate() {
            t[i] -= v;
        }
        c.push(t);
    }
    // ψ = a_d·1 + Σ_{k=1..d} a_{d−k}·c_k  where a_i = coefficient of z^i in Φ
    let mut psi = vec![Int::zero(); d + 1];
    psi[0] = phi[d].clone();
    for k in 1..=d {
        let a = &phi[d - k];
        for (i, v) in c[k].iter().enumerate() {
            psi[i] += a * v;
        }
    }
    // normalize leading coefficient (it is ±1 by construction)
    let lead = psi[d].clone();
    assert!(lead.is_one() || lead == -Int::one());
    if lead == -Int::one() {
        for v in psi.iter_mut() {
            *v = -v.clone();
        }
    }
    psi
}

fn poly_eval_rat(p: &[Int], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + Rat::from_integer(c.clone());
    }
    acc
}

fn sign_of(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// The field Q(θ), θ = 2cos(2πj/n), with an isolating interval for θ.
#[derive(Clone, Debug)]
pub struct RealCyclotomicField {
    /// reduced n (so gcd(j, n) = 1)
    pub n: u64,
    pub j: u64,
    /// minimal polynomial of θ (monic, integer)
    pub min_poly: Vec<Int>,
    /// isolating interval (lo, hi) containing exactly θ among the roots
    lo: Rat,
    hi: Rat,
}

/// An element of a `RealCyclotomicField`, as a residue polynomial in θ.
pub type Elem = Vec<Rat>;

impl RealCyclotomicField {
    /// Field containing 2cos(2π·j/n). The fraction j/n is reduced internally.
    pub fn new(j: u64, n: u64) -> Self {
        assert!(n >= 3 && j >= 1 && j < n);
        let g = gcd(j, n);
        let (j, n) = (j / g, n / g);
        if n < 3 {
            // 2cos(2π/1) = 2 or 2cos(2π·1/2) = −2: rational, model over x−θ
            let theta = if n == 1 { 2i64 } else { -2 };
            return RealCyclotomicField {
                n,
                j,
                min_poly: vec![Int::from(-theta), Int::one()],
                lo: crate::rat(theta) - crate::ratio(1, 2),
                hi: crate::rat(theta) + crate::ratio(1, 2),
            };
        }
        let psi = real_min_poly(n);
        let d = psi.len() - 1;
        // Roots of ψ_n are 2cos(2πk/n) for k coprime to n, 1 ≤ k < n/2 ... plus
        // j itself reduced into that range; they are strictly decreasing in k.
        let mut ks: Vec<u64> = (1..=n / 2).filter(|&k| gcd(k, n) == 1).collect();
        assert_eq!(ks.len(), d);
        let jj = if j > n / 2 { n - j } else { j }; // cos is even
        ks.sort_unstable();
        let rank = ks.iter().position(|&k| k == jj).expect("j coprime to n");
        // isolate all d roots in [-2, 2] by bisection using Sturm counting,
        // then take the (rank)-th from the top (largest root first).
        let intervals = isolate_roots(&psi, d);
        let (lo, hi) = intervals[rank].clone();
        RealCyclotomicField {
            n,
            j,
            min_poly: psi,
            lo,
            hi,
        }
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn zero(&self) -> Elem {
        vec![]
    }

    pub fn from_rat(&self, r: Rat) -> Elem {
        if r.is_zero() {
            vec![]
        } else {
            vec![r]
        }
    }

    /// θ itself as a field element.
    pub fn theta(&self) -> Elem {
        if self.degree() == 1 {
            // θ is rational: −c0 of the monic min poly
            vec![Rat::from_integer(-self.min_poly[0].clone())]
        } else {
            vec![Rat::zero(), Rat::one()]
        }
    }

    fn reduce(&self, mut p: Vec<Rat>) -> Elem {
        let d = self.degree();
        while p.len() > d {
            let k = p.len() - 1;
            let c = p.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            // x^k = x^(k-d) * (x^d) = x^(k-d) * (−ψ_tail)
            for i in 0..d {
                let delta = &c * Rat::from_integer(self.min_poly[i].clone());
                p[k - d + i] -= delta;
            }
        }
        while p.last().map_or(false, |c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = a.clone();
        if out.len() < b.len() {
            out.resize(b.len(), Rat::zero());
        }
        for (i, v) in b.iter().enumerate() {
            out[i] += v;
        }
        while out.last().map_or(false, |c| c.is_zero()) {
            out.pop();
        }
        out
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let neg: Elem = b.iter().map(|x| -x.clone()).collect();
        self.add(a, &neg)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut prod = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let d = x * y;
                prod[i + j] += d;
            }
        }
        self.reduce(prod)
    }

    pub fn scale(&self, a: &Elem, r: &Rat) -> Elem {
        if r.is_zero() {
            return vec![];
        }
        a.iter().map(|x| x * r).collect()
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self, a: &Elem) -> Elem {
        assert!(!self.is_zero(a), "division by zero field element");
        // extended gcd of a and min_poly over Q[x]
        let modp: Vec<Rat> = self
            .min_poly
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (modp, a.to_vec());
        let (mut s0, mut s1): (Vec<Rat>, Vec<Rat>) = (vec![], vec![Rat::one()]);
        while !r1.iter().all(|c| c.is_zero()) {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s_new = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_new;
        }
        // r0 = gcd (nonzero constant, since min_poly is irreducible)
        trim(&mut r0);
        assert_eq!(r0.len(), 1, "minimal polynomial must be irreducible");
        let c = r0[0].clone();
        let inv: Vec<Rat> = s0.iter().map(|x| x / &c).collect();
        self.reduce(inv)
    }

    /// Certified sign of a at θ: exact zero test, then interval refinement.
    pub fn sign(&self, a: &Elem) -> i32 {
        if self.is_zero(a) {
            return 0;
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        loop {
            let (vlo, vhi) = eval_interval(a, &lo, &hi);
            if vlo.is_positive() {
                return 1;
            }
            if vhi.is_negative() {
                return -1;
            }
            // refine the root interval by one bisection step
            let mid = (&lo + &hi) / crate::rat(2);
            let smid = sign_of(&poly_eval_rat(&self.min_poly, &mid));
            if smid == 0 {
                // midpoint is the root exactly (only possible for degree 1)
                let v = eval_at(a, &mid);
                return sign_of(&v);
            }
            let slo = sign_of(&poly_eval_rat(&self.min_poly, &lo));
            if slo != 0 && slo != smid {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// A rational enclosure of θ with |hi − lo| < eps, by bisection.
    pub fn enclose(&self, eps: &Rat) -> (Rat, Rat) {
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        while &(&hi - &lo) >= eps {
            let mid = (&lo + &hi) / crate::rat(2);
            let smid = sign_of(&poly_eval_rat(&self.min_poly, &mid));
            if smid == 0 {
                return (mid.clone(), mid);
            }
            let slo = sign_of(&poly_eval_rat(&self.min_poly, &lo));
            if slo != 0 && slo != smid {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

/// Inertia (positive, negative, zero counts) of a symmetric matrix with
/// entries in the field, by congruence elimination with certified pivot signs.
pub fn field_inertia(f: &RealCyclotomicField, m: &[Vec<Elem>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Elem>> = m.to_vec();
    for row in &a {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&k) = active.first() {
        if f.is_zero(&a[k][k]) {
            // find j with a[k][j] ≠ 0; if none the row/col is zero
            let j = active.iter().skip(1).find(|&&j| !f.is_zero(&a[k][j]));
            match j {
                None => {
                    zero += 1;
                    active.remove(0);
                    continue;
                }
                Some(&j) => {
                    // add row/col j into row/col k; if that still leaves a
                    // zero diagonal (2a_kj + a_jj = 0), subtract instead
                    let d = f.add(
                        &f.add(&a[k][j], &a[k][j]),
                        &a[j][j],
                    );
                    let s = if f.is_zero(&d) { -1i64 } else { 1 };
                    let sr = f.from_rat(crate::rat(s));
                    for c in 0..n {
                        let t = f.mul(&sr, &a[j][c]);
                        a[k][c] = f.add(&a[k][c], &t);
                    }
                    for r in 0..n {
                        let t = f.mul(&sr, &a[r][j]);
                        a[r][k] = f.add(&a[r][k], &t);
                    }
                }
            }
        }
        let piv = a[k][k].clone();
        let s = f.sign(&piv);
        assert_ne!(s, 0);
        if s > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        let inv = f.inv(&piv);
        let others: Vec<usize> = active.iter().skip(1).cloned().collect();
        for &r in &others {
            if f.is_zero(&a[r][k]) {
                continue;
            }
            let factor = f.mul(&a[r][k], &inv);
            for &c in &others {
                let t = f.mul(&factor, &a[k][c]);
                a[r][c] = f.sub(&a[r][c], &t);
            }
            a[r][k] = f.zero();
        }
        // zero the pivot row only after all rows are updated: they read a[k][·]
        for &r in &others {
            a[k][r] = f.zero();
        }
        active.remove(0);
    }
    (pos, neg, zero)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let d = x * y;
            out[i + j] += d;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut bb = b.to_vec();
    trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = &r[i] / &lead;
        if !c.is_zero() {
            q[i - db] = c.clone();
            for j in 0..=db {
                let d = &c * &bb[j];
                r[i - db + j] -= d;
            }
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn eval_at(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Interval evaluation of a polynomial on [lo, hi] by interval Horner.
fn eval_interval(p: &[Rat], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let (mut alo, mut ahi) = (Rat::zero(), Rat::zero());
    for c in p.iter().rev() {
        // [alo, ahi] * [lo, hi]
        let cands = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
        let mut nlo = cands[0].clone();
        let mut nhi = cands[0].clone();
        for c in &cands[1..] {
            if c < &nlo {
                nlo = c.clone();
            }
            if c > &nhi {
                nhi = c.clone();
            }
        }
        alo = nlo + c;
        ahi = nhi + c;
    }
    (alo, ahi)
}

/// Number of sign changes of the Sturm sequence of p at x.
fn sturm_changes(seq: &[Vec<Int>], x: &Rat) -> usize {
    let mut prev = 0;
    let mut changes = 0;
    for p in seq {
        let s = sign_of(&poly_eval_rat(p, x));
        if s != 0 {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
    }
    changes
}

fn sturm_sequence(p: &[Int]) -> Vec<Vec<Int>> {
    // work over Q then clear denominators per remainder (signs preserved
    // because we only multiply by positive rationals)
    let to_rat = |p: &[Int]| -> Vec<Rat> {
        p.iter().map(|c| Rat::from_integer(c.clone())).collect()
    };
    let mut seq: Vec<Vec<Rat>> = Vec::new();
    let p0 = to_rat(p);
    let mut p1: Vec<Rat> = (1..p.len())
        .map(|i| Rat::from_integer(&p[i] * Int::from(i as i64)))
        .collect();
    trim(&mut p1);
    seq.push(p0);
    seq.push(p1);
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            break;
        }
        let (_, mut r) = poly_divmod(&seq[n - 2], &seq[n - 1]);
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    // clear denominators with positive multipliers
    seq.into_iter()
        .map(|p| {
            let mut den = Int::one();
            for c in &p {
                den = num_integer::lcm(den, c.denom().clone());
            }
            p.iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect()
        })
        .collect()
}

/// Number of distinct real roots of an integer polynomial in the half-open
/// interval (a, b] (Sturm's theorem; counts each root once regardless of
/// multiplicity).
pub(crate) fn count_distinct_roots(p: &[Int], a: &Rat, b: &Rat) -> i64 {
    let seq = sturm_sequence(p);
    sturm_changes(&seq, a) as i64 - sturm_changes(&seq, b) as i64
}

/// Evaluate an integer polynomial at a rational point.
pub(crate) fn eval_int_poly(p: &[Int], x: &Rat) -> Rat {
    poly_eval_rat(p, x)
}

/// Isolate all real roots of a squarefree integer polynomial in [−2−1, 2+1],
/// returning `count` disjoint intervals sorted by descending root value.
fn isolate_roots(p: &[Int], count: usize) -> Vec<(Rat, Rat)> {
    let seq = sturm_sequence(p);
    let lo = crate::rat(-3);
    let hi = crate::rat(3);
    let mut stack = vec![(lo, hi)];
    let mut found: Vec<(Rat, Rat)> = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let n = sturm_changes(&seq, &a) as i64 - sturm_changes(&seq, &b) as i64;
        if n <= 0 {
            continue;
        }
        if n == 1 {
            // ensure endpoints are not roots (they are rational; roots of ψ_n
            // for n ≥ 3 reduced are irrational except θ = ±1, 0 … which are
            // handled since we keep bisecting until endpoint values ≠ 0)
            if !poly_eval_rat(p, &a).is_zero() && !poly_eval_rat(p, &b).is_zero() {
                found.push((a, b));
                continue;
            }
        }
        let mid = (&a + &b) / crate::rat(2);
        if poly_eval_rat(p, &mid).is_zero() {
            // nudge the midpoint to avoid a root at an endpoint
            let mid2 = (&a + &mid) / crate::rat(2);
            stack.push((a, mid2.clone()));
            stack.push((mid2, b));
        } else {
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    assert_eq!(found.len(), count, "root isolation must find all roots");
    found.sort_by(|x, y| y.0.cmp(&x.0)); // descending
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn cyclotomic_polys() {
        let to_i = |v: &[i64]| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic(1), to_i(&[-1, 1]));
        assert_eq!(cyclotomic(2), to_i(&[1, 1]));
        assert_eq!(cyclotomic(3), to_i(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), to_i(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), to_i(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn real_min_polys() {
        let to_i = |v: &[i64]| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
        // 2cos(2π/3) = −1: x + 1
        assert_eq!(real_min_poly(3), to_i(&[1, 1]));
        // 2cos(2π/5): x^2 + x − 1
        assert_eq!(real_min_poly(5), to_i(&[-1, 1, 1]));
        // 2cos(2π/7): x^3 + x^2 − 2x − 1
        assert_eq!(real_min_poly(7), to_i(&[-1, -2, 1, 1]));
    }

    #[test]
    fn field_p3_is_rational() {
        let f = RealCyclotomicField::new(1, 3);
        assert_eq!(f.degree(), 1);
        let th = f.theta();
        // θ = −1
        assert_eq!(f.sign(&th), -1);
        let v = f.add(&th, &f.from_rat(rat(1)));
        assert!(f.is_zero(&v));
    }

    #[test]
    fn field_p5_signs() {
        // θ1 = 2cos(72°) ≈ 0.618 > 0 ; θ2 = 2cos(144°) ≈ −1.618 < 0
        let f1 = RealCyclotomicField::new(1, 5);
        assert_eq!(f1.sign(&f1.theta()), 1);
        let f2 = RealCyclotomicField::new(2, 5);
        assert_eq!(f2.sign(&f2.theta()), -1);
        // θ1 satisfies θ² + θ − 1 = 0, so θ² = 1 − θ ≈ 0.382 > 0
        let sq = f1.mul(&f1.theta(), &f1.theta());
        assert_eq!(f1.sign(&sq), 1);
        let check = f1.sub(&sq, &f1.sub(&f1.from_rat(rat(1)), &f1.theta()));
        assert!(f1.is_zero(&check));
        // inverse: θ·θ^{-1} = 1
        let inv = f1.inv(&f1.theta());
        let one = f1.mul(&f1.theta(), &inv);
        assert!(f1.is_zero(&f1.sub(&one, &f1.from_rat(rat(1)))));
    }

    #[test]
    fn inertia_over_field() {
        // diag(θ, −θ, 0) over Q(2cos(2π/5)), θ > 0
        let f = RealCyclotomicField::new(1, 5);
        let th = f.theta();
        let neg = f.sub(&f.zero(), &th);
        let z = f.zero();
        let m = vec![
            vec![th.clone(), z.clone(), z.clone()],
            vec![z.clone(), neg, z.clone()],
            vec![z.clone(), z.clone(), z.clone()],
        ];
        assert_eq!(field_inertia(&f, &m), (1, 1, 1));
        // hyperbolic [[0, 1], [1, 0]]
        let one = f.from_rat(rat(1));
        let h = vec![
            vec![f.zero(), one.clone()],
            vec![one, f.zero()],
        ];
        assert_eq!(field_inertia(&f, &h), (1, 1, 0));
    }

    #[test]
    fn enclosure_tightness() {
        let f = RealCyclotomicField::new(1, 7);
        let eps = ratio(1, 1_000_000_000);
        let (lo, hi) = f.enclose(&eps);
        assert!(&hi - &lo < eps);
        // 2cos(2π/7) ≈ 1.2469796
        assert!(lo < ratio(12469797, 10000000));
        assert!(hi > ratio(12469795, 10000000));
    }
}
