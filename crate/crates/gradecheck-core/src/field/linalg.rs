//! Incremental reduced row echelon forms over Q(i) and over prime fields.
//!
//! Rows are sparse. Reducing a vector only touches the pivot rows whose pivot
//! column it hits, so block-structured systems (for instance those coming from
//! a graded basis) stay as cheap as their blocks.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::modular::{self, inv_mod, is_prime, sqrt_minus_one};
use crate::field::scalar::Scalar;
use crate::field::sparse::SVec;

pub trait Field: Clone {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Field for Exact {
    type E = Scalar;
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.add_ref(b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.mul_ref(b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.inv().expect("pivot is nonzero")
    }
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Field for Fp {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        modular::mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
}

pub type Row<E> = Vec<(usize, E)>;

fn combine<F: Field>(f: &F, mut terms: Row<F::E>) -> Row<F::E> {
    terms.sort_by_key(|t| t.0);
    let mut out: Row<F::E> = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = f.add(acc, &c),
            _ => {
                if matches!(out.last(), Some((_, acc)) if f.is_zero(acc)) {
                    out.pop();
                }
                out.push((i, c));
            }
        }
    }
    if matches!(out.last(), Some((_, acc)) if f.is_zero(acc)) {
        out.pop();
    }
    out
}

/// A reduced row echelon basis that grows one vector at a time.
///
/// Every row has a pivot entry equal to one, and no row has a nonzero entry
/// in another row's pivot column. Rows are kept in insertion order; the pivot
/// set does not depend on that order.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Row<F::E>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row<F::E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the current span.
    pub fn reduce(&self, v: &[(usize, F::E)]) -> Row<F::E> {
        let f = &self.field;
        let mut terms: Row<F::E> = Vec::with_capacity(v.len());
        let mut touched = false;
        for (c, a) in v {
            match self.pivot_row.get(c) {
                Some(&r) => {
                    touched = true;
                    let na = f.neg(a);
                    for (c2, b) in &self.rows[r] {
                        if c2 != c {
                            terms.push((*c2, f.mul(&na, b)));
                        }
                    }
                }
                None => terms.push((*c, a.clone())),
            }
        }
        if !touched {
            return terms;
        }
        combine(f, terms)
    }

    pub fn contains(&self, v: &[(usize, F::E)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the index of the new row, or `None` if
    /// `v` was already in the span.
    pub fn insert(&mut self, v: &[(usize, F::E)]) -> Option<usize> {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return None;
        }
        let f = self.field.clone();
        let (p, lead) = r[0].clone();
        if lead != f.one() {
            let inv = f.inv(&lead);
            for t in r.iter_mut() {
                t.1 = f.mul(&t.1, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |t| t.0) {
                let coef = f.neg(&row[k].1);
                let mut terms = std::mem::take(row);
                terms.extend(r.iter().map(|(c, b)| (*c, f.mul(&coef, b))));
                *row = combine(&f, terms);
            }
        }
        let idx = self.rows.len();
        self.pivot_row.insert(p, idx);
        self.pivots.push(p);
        self.rows.push(r);
        Some(idx)
    }

    /// Coordinates of `v` against the rows, read off the pivot columns. Only
    /// meaningful when `v` lies in the span.
    pub fn coords(&self, v: &[(usize, F::E)]) -> Vec<(usize, F::E)> {
        v.iter().filter_map(|(c, a)| self.pivot_row.get(c).map(|&r| (r, a.clone()))).collect()
    }

    /// A basis of `{x : row . x = 0 for every row}`.
    pub fn kernel(&self) -> Vec<Row<F::E>> {
        let f = &self.field;
        let mut by_col: HashMap<usize, Vec<(usize, F::E)>> = HashMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, a) in row {
                if !self.pivot_row.contains_key(c) {
                    by_col.entry(*c).or_default().push((self.pivots[r], f.neg(a)));
                }
            }
        }
        (0..self.ncols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .map(|c| {
                let mut terms = by_col.remove(&c).unwrap_or_default();
                terms.push((c, f.one()));
                combine(f, terms)
            })
            .collect()
    }

    /// Rows sorted by pivot column: the canonical reduced echelon form.
    pub fn sorted_rows(&self) -> Vec<Row<F::E>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        order.into_iter().map(|r| self.rows[r].clone()).collect()
    }
}

impl Echelon<Exact> {
    pub fn exact(ncols: usize) -> Self {
        Echelon::new(Exact, ncols)
    }

    pub fn insert_svec(&mut self, v: &SVec) -> Option<usize> {
        self.insert(v.entries())
    }

    pub fn reduce_svec(&self, v: &SVec) -> SVec {
        SVec::from_terms(self.reduce(v.entries()))
    }

    pub fn contains_svec(&self, v: &SVec) -> bool {
        self.contains(v.entries())
    }

    pub fn row_svec(&self, r: usize) -> SVec {
        SVec::from_terms(self.rows[r].clone())
    }

    pub fn basis_svecs(&self) -> Vec<SVec> {
        self.sorted_rows().into_iter().map(SVec::from_terms).collect()
    }

    pub fn kernel_svecs(&self) -> Vec<SVec> {
        self.kernel().into_iter().map(SVec::from_terms).collect()
    }
}

/// How to compute a rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    Exact,
    /// Rank over F_p and F_p2; the two must agree.
    Modular { p: u64, p2: u64 },
}

impl Default for RankMethod {
    fn default() -> Self {
        let (p, p2) = modular::DEFAULT_PRIMES;
        RankMethod::Modular { p, p2 }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p <= (1u64 << 31) || p >= (1u64 << 62) {
        return Err(Error::BadPrime(p, "must be a prime in (2^31, 2^62)".into()));
    }
    Ok(())
}

/// Rank over F_p of the given rows. Fails when `p` divides a denominator, or
/// when an entry is not real and -1 is not a square mod `p`.
pub fn rank_mod(rows: &[SVec], ncols: usize, p: u64) -> Result<usize> {
    check_prime(p)?;
    let root = sqrt_minus_one(p);
    let mut ech = Echelon::new(Fp { p }, ncols);
    let mut buf: Vec<(usize, u64)> = Vec::new();
    for row in rows {
        buf.clear();
        for (c, a) in row.iter() {
            if *c >= ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: *c + 1 });
            }
            let m = a.to_mod(p, root).ok_or_else(|| {
                Error::BadPrime(p, format!("does not reduce entry {a} (denominator or inert prime)"))
            })?;
            if m != 0 {
                buf.push((*c, m));
            }
        }
        ech.insert(&buf);
        if ech.rank() == ncols {
            break;
        }
    }
    Ok(ech.rank())
}

pub fn rank_exact(rows: &[SVec], ncols: usize) -> Result<usize> {
    let mut ech = Echelon::exact(ncols);
    for row in rows {
        if let Some(c) = row.max_index() {
            if c >= ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: c + 1 });
            }
        }
        ech.insert_svec(row);
        if ech.rank() == ncols {
            break;
        }
    }
    Ok(ech.rank())
}

/// Rank of the matrix with the given sparse rows.
pub fn matrix_rank(rows: &[SVec], ncols: usize, method: RankMethod) -> Result<usize> {
    match method {
        RankMethod::Exact => rank_exact(rows, ncols),
        RankMethod::Modular { p, p2 } => {
            if p == p2 {
                return Err(Error::BadPrime(p, "the two primes must differ".into()));
            }
            let r1 = rank_mod(rows, ncols, p)?;
            let r2 = rank_mod(rows, ncols, p2)?;
            if r1 != r2 {
                return Err(Error::RankMismatch { p, r1, p2, r2 });
            }
            Ok(r1)
        }
    }
}

/// A basis of the right kernel `{x : M x = 0}` where `M` has the given rows.
pub fn kernel_basis(rows: &[SVec], ncols: usize) -> Result<Vec<SVec>> {
    let mut ech = Echelon::exact(ncols);
    for row in rows {
        if let Some(c) = row.max_index() {
            if c >= ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: c + 1 });
            }
        }
        ech.insert_svec(row);
        if ech.rank() == ncols {
            break;
        }
    }
    Ok(ech.kernel_svecs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> SVec {
        SVec::from_dense(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_and_zero() {
        let eye: Vec<SVec> = (0..5).map(SVec::basis).collect();
        assert_eq!(matrix_rank(&eye, 5, RankMethod::Exact).unwrap(), 5);
        assert_eq!(matrix_rank(&eye, 5, RankMethod::default()).unwrap(), 5);
        let zero = vec![SVec::new(); 3];
        assert_eq!(matrix_rank(&zero, 7, RankMethod::Exact).unwrap(), 0);
        assert_eq!(kernel_basis(&zero, 3).unwrap().len(), 3);
    }

    #[test]
    fn kernel_of_ones() {
        let k = kernel_basis(&[row(&[1, 1])], 2).unwrap();
        assert_eq!(k.len(), 1);
        assert!(row(&[1, 1]).dot(&k[0]).is_zero());
    }

    #[test]
    fn rejects_bad_primes() {
        let m = vec![row(&[1, 2])];
        assert!(matrix_rank(&m, 2, RankMethod::Modular { p: 15, p2: 2_147_483_693 }).is_err());
        assert!(matrix_rank(&m, 2, RankMethod::Modular { p: 2_147_483_693, p2: 2_147_483_693 }).is_err());
        let half = vec![SVec::single(0, Scalar::frac(1, 2_147_483_693).unwrap())];
        assert!(rank_mod(&half, 1, 2_147_483_693).is_err());
        // 2^31 + 11 is prime and 3 mod 4: fine for real entries, not for i.
        assert_eq!(rank_mod(&m, 2, 2_147_483_659).unwrap(), 1);
        assert!(rank_mod(&[SVec::single(0, Scalar::i())], 1, 2_147_483_659).is_err());
    }

    #[test]
    fn echelon_is_canonical() {
        let vs = [row(&[1, 2, 3]), row(&[2, 4, 7]), row(&[0, 0, 1])];
        let mut a = Echelon::exact(3);
        let mut b = Echelon::exact(3);
        for v in &vs {
            a.insert_svec(v);
        }
        for v in vs.iter().rev() {
            b.insert_svec(v);
        }
        assert_eq!(a.basis_svecs(), b.basis_svecs());
        assert_eq!(a.basis_svecs(), vec![row(&[1, 2, 0]), row(&[0, 0, 1])]);
    }
}
