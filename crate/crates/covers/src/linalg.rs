//! Exact linear algebra over Z and Q: determinants, Smith normal form,
//! inertia of symmetric forms, and a sparse rational solver sized for the
//! chain complexes produced by [`crate::complex`].

use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            // find a pivot row below
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact division (Bareiss invariant)
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Smith normal form invariants of an integer matrix.
///
/// Returns the nonzero elementary divisors d1 | d2 | … (positive), so the
/// cokernel of the map is Z^(rows − rank) ⊕ ⊕ Z/d_i with rank = divisors.len().
pub fn smith_divisors(mat: &[Vec<Int>]) -> Vec<Int> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut a: Vec<Vec<Int>> = mat.to_vec();
    let mut divisors = Vec::new();
    let mut r0 = 0usize;
    let mut c0 = 0usize;
    while r0 < rows && c0 < cols {
        // locate smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if !a[i][j].is_zero() {
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
        }
        let (pi, pj) = match best {
            Some(p) => p,
            None => break,
        };
        a.swap(r0, pi);
        for row in a.iter_mut() {
            row.swap(c0, pj);
        }
        // clear row and column; restart if a remainder shows up
        let mut again = false;
        for i in r0 + 1..rows {
            if !a[i][c0].is_zero() {
                let q = &a[i][c0] / &a[r0][c0];
                if !q.is_zero() {
                    for j in c0..cols {
                        let s = &a[r0][j] * &q;
                        a[i][j] -= s;
                    }
                }
                if !a[i][c0].is_zero() {
                    again = true;
                }
            }
        }
        for j in c0 + 1..cols {
            if !a[r0][j].is_zero() {
                let q = &a[r0][j] / &a[r0][c0];
                if !q.is_zero() {
                    for i in r0..rows {
                        let s = &a[i][c0] * &q;
                        a[i][j] -= s;
                    }
                }
                if !a[r0][j].is_zero() {
                    again = true;
                }
            }
        }
        if again {
            continue;
        }
        // ensure divisibility into the rest of the block
        let mut fixed = false;
        'outer: for i in r0 + 1..rows {
            for j in c0 + 1..cols {
                if !(&a[i][j] % &a[r0][c0]).is_zero() {
                    // add row i to row r0 to create a remainder next pass
                    for jj in c0..cols {
                        let v = a[i][jj].clone();
                        a[r0][jj] += v;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        divisors.push(a[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    divisors
}

/// Inertia (n_plus, n_minus, n_zero) of a symmetric matrix over Q by
/// congruence elimination. Panics if the input is not symmetric.
pub fn inertia(m: &[Vec<Rat>]) -> (usize, usize, usize) {
    let n = m.len();
    for i in 0..n {
        assert_eq!(m[i].len(), n);
        for j in 0..i {
            assert_eq!(m[i][j], m[j][i], "matrix must be symmetric");
        }
    }
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut zero = 0usize;
    let mut act: Vec<usize> = (0..n).collect();
    while let Some(&k) = act.first() {
        // choose a nonzero diagonal pivot among active indices
        let pivot = act.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match pivot {
            Some(p) => p,
            None => {
                // all active diagonal entries are zero; find off-diagonal
                let mut found = None;
                'f: for (ai, &i) in act.iter().enumerate() {
                    for &j in act.iter().skip(ai + 1) {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'f;
                        }
                    }
                }
                match found {
                    None => {
                        zero += act.len();
                        break;
                    }
                    Some((i, j)) => {
                        // a[i][i] = a[j][j] = 0, a[i][j] != 0: add row/col j to i,
                        // making a[i][i] = 2 a[i][j] != 0.
                        for t in 0..n {
                            let v = a[j][t].clone();
                            a[i][t] += v;
                        }
                        for t in 0..n {
                            let v = a[t][j].clone();
                            a[t][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let _ = k;
        let d = a[piv][piv].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        act.retain(|&i| i != piv);
        // eliminate pivot row/column from the remaining active block
        let others: Vec<usize> = act.clone();
        for &i in &others {
            if a[i][piv].is_zero() {
                continue;
            }
            let f = &a[i][piv] / &d;
            for &j in &others {
                let s = &f * &a[piv][j];
                a[i][j] -= &s;
            }
            a[i][piv] = Rat::zero();
        }
        for &j in &others {
            a[piv][j] = Rat::zero();
        }
    }
    (pos, neg, zero)
}

/// Signature (n_plus − n_minus) of a symmetric rational matrix.
pub fn signature(m: &[Vec<Rat>]) -> i64 {
    let (p, q, _) = inertia(m);
    p as i64 - q as i64
}

/// A sparse matrix over Q stored by rows, for solving M x = b.
#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    rows: Vec<BTreeMap<usize, Rat>>,
}

impl SparseMat {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn add(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let e = self.rows[r].entry(c).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Rat {
        self.rows[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    /// Solve M x = b for one or more right-hand sides simultaneously.
    ///
    /// Returns one solution per RHS (columns of x), or None for RHS outside
    /// the column span. Uses Markowitz-style pivoting with a strong preference
    /// for ±1 pivots, which keeps elimination fraction-free on the unimodular
    /// boundary matrices this crate produces.
    pub fn solve(&self, rhs: &[Vec<Rat>]) -> Vec<Option<Vec<Rat>>> {
        let nr = self.nrows;
        let nc = self.ncols;
        for b in rhs {
            assert_eq!(b.len(), nr);
        }
        // working copies
        let mut rows: Vec<BTreeMap<usize, Rat>> = self.rows.clone();
        let mut b: Vec<Vec<Rat>> = (0..nr)
            .map(|i| rhs.iter().map(|r| r[i].clone()).collect())
            .collect();
        let mut col_rows: Vec<std::collections::BTreeSet<usize>> =
            vec![std::collections::BTreeSet::new(); nc];
        for (i, row) in rows.iter().enumerate() {
            for (&j, _) in row {
                col_rows[j].insert(i);
            }
        }
        let mut row_active = vec![true; nr];
        let mut col_pivot: Vec<Option<usize>> = vec![None; nc]; // col -> pivot row
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col) in order
        // Lazy min-heap over (row nnz, row); entries go stale when a row is
        // touched, so each row carries a version stamp.
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut version = vec![0u32; nr];
        let mut heap: BinaryHeap<Reverse<(usize, usize, u32)>> = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(i, r)| Reverse((r.len(), i, 0u32)))
            .collect();
        loop {
            // pick pivot row: fewest entries (lazy heap); within the row, pick
            // the column minimizing fill, preferring unit entries
            let pi = loop {
                match heap.pop() {
                    Some(Reverse((n, i, v))) => {
                        if row_active[i] && version[i] == v && !rows[i].is_empty() {
                            debug_assert_eq!(n, rows[i].len());
                            break Some(i);
                        }
                    }
                    None => break None,
                }
            };
            let pi = match pi {
                Some(i) => i,
                None => break,
            };
            let mut best: Option<(u64, usize)> = None;
            for (&j, v) in &rows[pi] {
                let cn = col_rows[j].len() as u64;
                let unit = v.numer().abs() == v.denom().abs();
                let score = cn * 2 + if unit { 0 } else { 1 };
                if best.as_ref().map_or(true, |&(s, _)| score < s) {
                    best = Some((score, j));
                }
            }
            let pj = best.unwrap().1;
            let pval = rows[pi][&pj].clone();
            // eliminate pj from all other active rows
            let targets: Vec<usize> = col_rows[pj]
                .iter()
                .copied()
                .filter(|&r| r != pi)
                .collect();
            let prow: Vec<(usize, Rat)> = rows[pi].iter().map(|(&c, v)| (c, v.clone())).collect();
            for t in targets {
                let f = &rows[t][&pj] / &pval;
                for (c, v) in &prow {
                    let delta = &f * v;
                    let e = rows[t].entry(*c).or_insert_with(Rat::zero);
                    *e -= &delta;
                    if e.is_zero() {
                        rows[t].remove(c);
                        col_rows[*c].remove(&t);
                    } else {
                        col_rows[*c].insert(t);
                    }
                }
                debug_assert!(!rows[t].contains_key(&pj));
                for k in 0..b[t].len() {
                    let delta = &f * &b[pi][k];
                    b[t][k] -= &delta;
                }
                version[t] += 1;
                if !rows[t].is_empty() {
                    heap.push(Reverse((rows[t].len(), t, version[t])));
                }
            }
            row_active[pi] = false;
            for (&c, _) in &rows[pi] {
                col_rows[c].remove(&pi);
            }
            col_pivot[pj] = Some(pi);
            pivots.push((pi, pj));
        }
        // rows never chosen as pivots must have zero RHS for consistency
        let nrhs = rhs.len();
        let mut ok = vec![true; nrhs];
        for (i, row) in rows.iter().enumerate() {
            if row_active[i] && row.is_empty() {
                for k in 0..nrhs {
                    if !b[i][k].is_zero() {
                        ok[k] = false;
                    }
                }
            }
        }
        // also: active rows with entries remaining cannot happen (loop runs to
        // exhaustion), so solution: back-substitute in reverse pivot order.
        let mut x: Vec<Vec<Rat>> = vec![vec![Rat::zero(); nc]; nrhs];
        for &(pi, pj) in pivots.iter().rev() {
            let pval = rows[pi][&pj].clone();
            for k in 0..nrhs {
                let mut acc = b[pi][k].clone();
                for (&c, v) in &rows[pi] {
                    if c != pj && !x[k][c].is_zero() {
                        acc -= v * &x[k][c];
                    }
                }
                x[k][pj] = acc / &pval;
            }
        }
        (0..nrhs)
            .map(|k| if ok[k] { Some(x[k].clone()) } else { None })
            .collect()
    }
}
