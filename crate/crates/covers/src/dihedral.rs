//! Fox p-colorings and dihedral representations.
//!
//! A Fox p-coloring assigns an element of Z/p to every arc so that at each
//! crossing `2·color(over) ≡ color(under_in) + color(under_out) (mod p)`.
//! Nontrivial colorings correspond to surjections of the knot group onto the
//! dihedral group D_p sending meridians to reflections, which in turn decide
//! existence of irregular dihedral p-fold branched covers.

use crate::diagram::ArcDiagram;
use crate::linalg::det_bareiss;
use crate::Int;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DihedralError {
    #[error("p must be odd and > 1")]
    BadModulus,
    #[error("p must be square-free")]
    NotSquareFree,
    #[error("trivial coloring does not give a surjective dihedral representation")]
    TrivialColoring,
}

/// A Fox p-coloring: one color per arc.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FoxColoring {
    pub p: u64,
    pub colors: Vec<u64>,
}

impl FoxColoring {
    pub fn is_trivial(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }
}

/// Arc-wise assignment of reflections: arc with color `c` acts on `{0,…,p−1}`
/// by `x ↦ 2c − x (mod p)`. For odd p each permutation is an involution with
/// exactly one fixed point.
#[derive(Clone, Debug)]
pub struct DihedralRep {
    pub p: u64,
    pub coloring: FoxColoring,
    /// per-arc permutation, as images of 0..p-1
    pub perms: Vec<Vec<usize>>,
}

fn factorize_squarefree(p: u64) -> Result<Vec<u64>, DihedralError> {
    if p < 3 || p % 2 == 0 {
        return Err(DihedralError::BadModulus);
    }
    let mut n = p;
    let mut fs = Vec::new();
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return Err(DihedralError::NotSquareFree);
            }
            fs.push(d);
        }
        d += 2;
    }
    if n > 1 {
        fs.push(n);
    }
    Ok(fs)
}

/// All solutions of the coloring system mod a prime q, enumerated from a
/// kernel basis found by Gaussian elimination. Deterministic ordering.
fn colorings_mod_prime(diagram: &ArcDiagram, q: u64) -> Vec<Vec<u64>> {
    let n = diagram.arcs;
    // rows: 2*over - under_in - under_out ≡ 0
    let mut rows: Vec<Vec<u64>> = diagram
        .crossings
        .iter()
        .map(|c| {
            let mut r = vec![0u64; n];
            r[c.over] = (r[c.over] + 2) % q;
            r[c.under_in] = (r[c.under_in] + q - 1) % q;
            r[c.under_out] = (r[c.under_out] + q - 1) % q;
            r
        })
        .collect();
    // Gaussian elimination mod q
    let inv = |a: u64| -> u64 {
        // Fermat inverse, q prime
        let mut base = a % q;
        let mut exp = q - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            exp >>= 1;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut r0 = 0usize;
    for col in 0..n {
        if let Some(pr) = (r0..rows.len()).find(|&r| rows[r][col] % q != 0) {
            rows.swap(r0, pr);
            let iv = inv(rows[r0][col]);
            for v in rows[r0].iter_mut() {
                *v = *v * iv % q;
            }
            let pivot_row = rows[r0].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != r0 && row[col] % q != 0 {
                    let f = row[col] % q;
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v = (*v + (q - f) * pv) % q;
                    }
                }
            }
            pivots.push(col);
            r0 += 1;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // kernel basis: one vector per free column
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![0u64; n];
        v[fc] = 1;
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = (q - rows[pi][fc] % q) % q;
        }
        basis.push(v);
    }
    // enumerate q^(#free) combinations in lexicographic coefficient order
    let mut out = Vec::new();
    let mut coeffs = vec![0u64; basis.len()];
    loop {
        let mut v = vec![0u64; n];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = (*vi + c * bi) % q;
            }
        }
        out.push(v);
        // increment
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                out.sort();
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// All Fox p-colorings of the diagram, for odd square-free `p` (solved per
/// prime factor and combined by the Chinese remainder theorem). The count is
/// always `p^(1+d)` with `d ≥ 0`.
pub fn fox_colorings(diagram: &ArcDiagram, p: u64) -> Result<Vec<FoxColoring>, DihedralError> {
    let factors = factorize_squarefree(p)?;
    let n = diagram.arcs;
    let mut sols: Vec<Vec<u64>> = vec![vec![0u64; n]];
    let mut modulus = 1u64;
    for q in factors {
        let per_prime = colorings_mod_prime(diagram, q);
        let mut next = Vec::with_capacity(sols.len() * per_prime.len());
        for s in &sols {
            for t in &per_prime {
                // CRT combine s (mod modulus) with t (mod q)
                let mut v = vec![0u64; n];
                for i in 0..n {
                    let mut x = s[i];
                    while x % q != t[i] {
                        x += modulus;
                    }
                    v[i] = x;
                }
                next.push(v);
            }
        }
        sols = next;
        modulus *= q;
    }
    sols.sort();
    Ok(sols
        .into_iter()
        .map(|colors| FoxColoring { p, colors })
        .collect())
}

/// True iff the diagram has a nontrivial Fox p-coloring.
pub fn admits_dihedral_cover(diagram: &ArcDiagram, p: u64) -> Result<bool, DihedralError> {
    Ok(fox_colorings(diagram, p)?.iter().any(|c| !c.is_trivial()))
}

/// Group colorings into orbits of the affine action `x ↦ a·x + b` with
/// `gcd(a, p) = 1`. Orbit representatives are lexicographically least; orbits
/// are sorted by representative.
pub fn coloring_orbits(colorings: &[FoxColoring]) -> Vec<Vec<FoxColoring>> {
    if colorings.is_empty() {
        return vec![];
    }
    let p = colorings[0].p;
    let mut remaining: std::collections::BTreeSet<Vec<u64>> =
        colorings.iter().map(|c| c.colors.clone()).collect();
    let mut orbits = Vec::new();
    while let Some(rep) = remaining.iter().next().cloned() {
        let mut orbit = Vec::new();
        for a in 1..p {
            if num_integer::gcd(a, p) != 1 {
                continue;
            }
            for b in 0..p {
                let img: Vec<u64> = rep.iter().map(|&x| (a * x + b) % p).collect();
                if remaining.remove(&img) {
                    orbit.push(FoxColoring { p, colors: img });
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits
}

/// Turn a nontrivial coloring into the dihedral representation sending each
/// arc to the reflection `x ↦ 2·color − x (mod p)`.
pub fn coloring_to_rep(c: &FoxColoring) -> Result<DihedralRep, DihedralError> {
    if c.is_trivial() {
        return Err(DihedralError::TrivialColoring);
    }
    let p = c.p;
    let perms = c
        .colors
        .iter()
        .map(|&col| {
            (0..p as usize)
                .map(|x| ((2 * col + p - (x as u64 % p)) % p) as usize)
                .collect()
        })
        .collect();
    Ok(DihedralRep {
        p,
        coloring: c.clone(),
        perms,
    })
}

/// Knot determinant `|Δ_K(−1)|` from the arc-level diagram: the absolute
/// determinant of the standard presentation matrix of H₁ of the double
/// branched cover (row `2·over − under_in − under_out` per crossing, one row
/// and one column deleted).
pub fn determinant(diagram: &ArcDiagram) -> Int {
    let n = diagram.crossings.len();
    if n == 0 {
        return Int::from(1);
    }
    assert_eq!(n, diagram.arcs, "determinant needs a knot-like diagram");
    let mut m = vec![vec![Int::from(0); n - 1]; n - 1];
    for (i, c) in diagram.crossings.iter().enumerate().take(n - 1) {
        for (a, coef) in [(c.over, 2i64), (c.under_in, -1), (c.under_out, -1)] {
            if a < n - 1 {
                m[i][a] += Int::from(coef);
            }
        }
    }
    det_bareiss(&m).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_k1, embedded_trefoil, embedded_two_bridge, ArcDiagram, TwoBridgeSpec};

    fn trefoil() -> ArcDiagram {
        embedded_trefoil().arc_diagram()
    }

    fn figure_eight() -> ArcDiagram {
        embedded_two_bridge(&TwoBridgeSpec::new(vec![2, 2]).unwrap())
            .unwrap()
            .arc_diagram()
    }

    #[test]
    fn trefoil_colorings() {
        let cs = fox_colorings(&trefoil(), 3).unwrap();
        assert_eq!(cs.len(), 9);
        assert_eq!(cs.iter().filter(|c| !c.is_trivial()).count(), 6);
        assert!(admits_dihedral_cover(&trefoil(), 3).unwrap());
        assert!(!admits_dihedral_cover(&trefoil(), 5).unwrap());
    }

    #[test]
    fn unknot_and_figure_eight_colorings() {
        let unknot = ArcDiagram::unknot();
        for p in [3u64, 5, 7, 15] {
            let cs = fox_colorings(&unknot, p).unwrap();
            assert_eq!(cs.len(), p as usize);
            assert!(cs.iter().all(|c| c.is_trivial()));
        }
        let f8 = figure_eight();
        let cs = fox_colorings(&f8, 3).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.is_trivial()));
        assert!(admits_dihedral_cover(&f8, 5).unwrap());
    }

    #[test]
    fn squarefree_crt_counts() {
        // trefoil mod 15 = mod 3 × mod 5: 9 × 5 = 45 colorings
        let cs = fox_colorings(&trefoil(), 15).unwrap();
        assert_eq!(cs.len(), 45);
        assert!(fox_colorings(&trefoil(), 9).is_err());
        assert!(fox_colorings(&trefoil(), 4).is_err());
    }

    #[test]
    fn orbits_and_reps() {
        let cs = fox_colorings(&trefoil(), 3).unwrap();
        let orbits = coloring_orbits(&cs);
        // trivial colorings form one affine orbit, nontrivial another
        assert_eq!(orbits.len(), 2);
        let nontriv = cs.iter().find(|c| !c.is_trivial()).unwrap();
        let rep = coloring_to_rep(nontriv).unwrap();
        // three distinct reflections, each an involution with one fixed point
        for perm in &rep.perms {
            let mut fixed = 0;
            for (x, &y) in perm.iter().enumerate() {
                assert_eq!(perm[y], x, "reflection must be an involution");
                if y == x {
                    fixed += 1;
                }
            }
            assert_eq!(fixed, 1);
        }
        assert!(coloring_to_rep(&cs[0]).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&trefoil()), Int::from(3));
        assert_eq!(determinant(&figure_eight()), Int::from(5));
        assert_eq!(determinant(&ArcDiagram::unknot()), Int::from(1));
        let six_one = embedded_two_bridge(&TwoBridgeSpec::new(vec![4, 2]).unwrap())
            .unwrap()
            .arc_diagram();
        assert_eq!(determinant(&six_one), Int::from(9));
        // closed form: |−(8ab+2b−1)²| at (1,2) is 361
        assert_eq!(determinant(&build_k1(1, 2).unwrap()), Int::from(361));
    }

    #[test]
    fn k1_admissibility_examples() {
        assert!(admits_dihedral_cover(&build_k1(3, 2).unwrap(), 3).unwrap());
        assert!(!admits_dihedral_cover(&build_k1(2, 1).unwrap(), 3).unwrap());
    }
}
