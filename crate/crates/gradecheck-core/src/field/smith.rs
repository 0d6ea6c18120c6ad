//! Integer matrices, Smith normal form, and cokernels of row lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: entries.first().map_or(0, |r| r.len()) });
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        })
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        IntMatrix { rows: data.len(), cols, data }
    }
}

/// `p * m * q = diag`, with `p`, `q` unimodular. The nonzero diagonal
/// entries are positive and each divides the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub p: Option<IntMatrix>,
    pub q: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().take(rows).skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn row_sub(a: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let (lo, hi) = if dst < src { (dst, src) } else { (src, dst) };
    let (left, right) = a.split_at_mut(hi);
    let (d, s) = if dst < src { (&mut left[lo], &right[0]) } else { (&mut right[0], &left[lo]) };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= k * y;
        }
    }
}

fn col_sub(a: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            let v = k * &row[src];
            row[dst] -= v;
        }
    }
}

fn col_swap(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Smith normal form with the column transform, and optionally the row one.
pub fn smith_form(m: &IntMatrix, track_rows: bool) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut p = track_rows.then(|| IntMatrix::identity(r).data);
    let mut q = IntMatrix::identity(c).data;
    let n = r.min(c);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_nonzero(&a, t, r, c) else { break };
        a.swap(t, pi);
        if let Some(p) = p.as_mut() {
            p.swap(t, pi);
        }
        col_swap(&mut a, t, pj);
        col_swap(&mut q, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let k = a[i][t].div_floor(&a[t][t]);
                    row_sub(&mut a, i, t, &k);
                    if let Some(p) = p.as_mut() {
                        row_sub(p, i, t, &k);
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let k = a[t][j].div_floor(&a[t][t]);
                    col_sub(&mut a, j, t, &k);
                    col_sub(&mut q, j, t, &k);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // A smaller remainder sits in row t or column t; move it to the pivot.
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    if let Some(p) = p.as_mut() {
                        p.swap(t, best.0);
                    }
                }
                if best.1 != t {
                    col_swap(&mut a, t, best.1);
                    col_swap(&mut q, t, best.1);
                }
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_sub(&mut a, t, i, &minus_one);
                    if let Some(p) = p.as_mut() {
                        row_sub(p, t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            if let Some(p) = p.as_mut() {
                for x in p[t].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        t += 1;
    }
    SmithForm {
        diag: (0..n).map(|i| a[i][i].clone()).collect(),
        p: p.map(|d| IntMatrix { rows: r, cols: r, data: d }),
        q: IntMatrix { rows: c, cols: c, data: q },
    }
}

/// A basis of the row lattice in echelon form; at most `cols` rows.
pub fn lattice_basis(cols: usize, rows: impl IntoIterator<Item = Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    // Kept sorted by pivot column.
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for mut v in rows {
        debug_assert_eq!(v.len(), cols);
        while let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            match basis.binary_search_by_key(&lead, |b| b.0) {
                Err(pos) => {
                    if v[lead].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    basis.insert(pos, (lead, v));
                    break;
                }
                Ok(pos) => {
                    let b = &basis[pos].1;
                    let (x, y) = (b[lead].clone(), v[lead].clone());
                    if y.is_multiple_of(&x) {
                        let k = &y / &x;
                        for (vi, bi) in v.iter_mut().zip(b.iter()) {
                            *vi -= &k * bi;
                        }
                        continue;
                    }
                    let e = x.extended_gcd(&y);
                    let (g, s, tt) = (e.gcd, e.x, e.y);
                    let new_b: Vec<BigInt> = b.iter().zip(v.iter()).map(|(bi, vi)| &s * bi + &tt * vi).collect();
                    let (xg, yg) = (&x / &g, &y / &g);
                    let new_v: Vec<BigInt> = b.iter().zip(v.iter()).map(|(bi, vi)| &xg * vi - &yg * bi).collect();
                    basis[pos].1 = new_b;
                    v = new_v;
                }
            }
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}

/// `(free_rank, torsion)` of `Z^cols / rowspace(m)`, torsion as invariant
/// factors `d1 | d2 | ...`, all greater than one.
pub fn smith_invariants(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let c = cokernel(m.cols, m.data.iter().cloned());
    (c.free_rank, c.torsion)
}

/// `Z^n / L` for a lattice `L` given by generating rows, with the quotient
/// map on the standard basis.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Image of `e_j`: free coordinates then torsion residues.
    pub images: Vec<(Vec<BigInt>, Vec<BigInt>)>,
}

pub fn cokernel(n: usize, rows: impl IntoIterator<Item = Vec<BigInt>>) -> Cokernel {
    let basis = lattice_basis(n, rows);
    let m = IntMatrix::from_rows(n, basis);
    let s = smith_form(&m, false);
    let rank = s.rank();
    let mut tors_idx = Vec::new();
    for (t, d) in s.diag.iter().enumerate().take(rank) {
        if !d.is_one() {
            tors_idx.push(t);
        }
    }
    let torsion: Vec<BigInt> = tors_idx.iter().map(|&t| s.diag[t].clone()).collect();
    let images = (0..n)
        .map(|j| {
            let row = &s.q.data[j];
            let free = (rank..n).map(|t| row[t].clone()).collect();
            let tors = tors_idx.iter().map(|&t| row[t].mod_floor(&s.diag[t])).collect();
            (free, tors)
        })
        .collect();
    Cokernel { free_rank: n - rank, torsion, images }
}

/// Solutions of `x m = b` over the integers: a particular solution and a
/// basis of the left kernel. `None` when there is no integer solution.
pub fn solve_left(m: &IntMatrix, b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let s = smith_form(m, true);
    let p = s.p.as_ref().expect("rows tracked");
    let rank = s.rank();
    let bq: Vec<BigInt> = (0..m.cols).map(|j| (0..m.cols).map(|k| &b[k] * &s.q.data[k][j]).sum()).collect();
    let mut z = vec![BigInt::zero(); m.rows];
    for t in 0..m.cols {
        if t < rank {
            if !bq[t].is_multiple_of(&s.diag[t]) {
                return None;
            }
            z[t] = &bq[t] / &s.diag[t];
        } else if !bq[t].is_zero() {
            return None;
        }
    }
    let x: Vec<BigInt> = (0..m.rows).map(|j| (0..m.rows).map(|t| &z[t] * &p.data[t][j]).sum()).collect();
    let kernel = (rank..m.rows).map(|t| p.data[t].clone()).collect();
    Some((x, kernel))
}

/// Converts invariant factors to machine integers.
pub fn torsion_u64(t: &[BigInt]) -> Result<Vec<u64>> {
    t.iter().map(|d| d.to_u64().ok_or_else(|| Error::Overflow(format!("torsion order {d}")))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(rows: usize, cols: usize, e: &[Vec<i64>]) -> (usize, Vec<i64>) {
        let (f, t) = smith_invariants(&IntMatrix::from_i64(rows, cols, e).unwrap());
        (f, t.iter().map(|x| x.to_i64().unwrap()).collect())
    }

    #[test]
    fn spec_examples() {
        assert_eq!(inv(2, 2, &[vec![2, 0], vec![0, 3]]), (0, vec![6]));
        assert_eq!(inv(0, 3, &[]), (3, vec![]));
        assert_eq!(inv(2, 2, &[vec![2, 4], vec![6, 8]]), (0, vec![2, 4]));
    }

    #[test]
    fn transforms_are_consistent() {
        let m = IntMatrix::from_i64(3, 3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let s = smith_form(&m, true);
        let p = s.p.clone().unwrap();
        let mul = |a: &IntMatrix, b: &IntMatrix| {
            let mut out = IntMatrix::zeros(a.rows, b.cols);
            for i in 0..a.rows {
                for j in 0..b.cols {
                    out.data[i][j] = (0..a.cols).map(|k| &a.data[i][k] * &b.data[k][j]).sum();
                }
            }
            out
        };
        let d = mul(&mul(&p, &m), &s.q);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d.data[i][j], want);
            }
        }
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn solve_left_finds_preimage() {
        // x * [[2, 0], [0, 3]] = (4, 9)
        let m = IntMatrix::from_i64(2, 2, &[vec![2, 0], vec![0, 3]]).unwrap();
        let (x, k) = solve_left(&m, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(k.is_empty());
        assert!(solve_left(&m, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
