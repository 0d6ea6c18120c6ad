//! Finite-dimensional algebras given by sparse structure constants, with an
//! optional involution and unit, and the structural probes run on them.

pub(crate) mod probes;
mod report;
mod subspace;

pub use probes::{
    check_alternative, check_structurable, commutator_algebra, derivation_algebra, derivation_system,
    generalized_alt_nucleus, ideal_closure, is_derivation, split_involution,
};
pub use report::{Checker, Counterexample, Report};
pub use subspace::{Coordinates, Subspace};

use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar, SVec};

/// An algebra over Q(i) on a fixed basis.
///
/// `product(i, j)` is the sparse expansion of `b_i b_j`. The involution, when
/// present, is stored as the images of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    table: Vec<SVec>,
    involution: Option<Vec<SVec>>,
    unit: Option<SVec>,
}

impl Algebra {
    /// Builds and validates an algebra: positive dimension, indices in range,
    /// an involution that squares to the identity and reverses products, and
    /// a two-sided unit.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<SVec>,
        involution: Option<Vec<SVec>>,
        unit: Option<SVec>,
    ) -> Result<Self> {
        let a = Algebra::new_unchecked(name, labels, table, involution, unit)?;
        a.validate()?;
        Ok(a)
    }

    /// Shape checks only. The involution and unit are taken on trust; used
    /// for fault injection and for intermediate constructions.
    pub fn new_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<SVec>,
        involution: Option<Vec<SVec>>,
        unit: Option<SVec>,
    ) -> Result<Self> {
        let name = name.into();
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra(format!("{name}: dimension must be positive")));
        }
        if table.len() != n * n {
            return Err(Error::InvalidAlgebra(format!("{name}: table has {} entries, expected {}", table.len(), n * n)));
        }
        let in_range = |v: &SVec| v.max_index().is_none_or(|m| m < n);
        if let Some(pos) = table.iter().position(|v| !in_range(v)) {
            return Err(Error::InvalidAlgebra(format!(
                "{name}: product ({}, {}) refers to a basis index >= {n}",
                pos / n,
                pos % n
            )));
        }
        if let Some(inv) = &involution {
            if inv.len() != n || !inv.iter().all(in_range) {
                return Err(Error::InvalidAlgebra(format!("{name}: involution has the wrong shape")));
            }
        }
        if let Some(u) = &unit {
            if !in_range(u) {
                return Err(Error::InvalidAlgebra(format!("{name}: unit refers to a basis index >= {n}")));
            }
        }
        Ok(Algebra { name, labels, table, involution, unit })
    }

    /// Builds from `(i, j, k, c)` meaning `b_i b_j` has coefficient `c` on `b_k`.
    pub fn from_constants(
        name: impl Into<String>,
        labels: Vec<String>,
        constants: &[(usize, usize, usize, Scalar)],
        involution: Option<Vec<SVec>>,
        unit: Option<SVec>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut terms: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in constants {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidAlgebra(format!("constant ({i}, {j}, {k}) out of range for dimension {n}")));
            }
            terms[i * n + j].push((*k, c.clone()));
        }
        let table = terms.into_iter().map(SVec::from_terms).collect();
        Algebra::new(name, labels, table, involution, unit)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        if let Some(inv) = &self.involution {
            for i in 0..n {
                if self.apply_involution_rows(inv, &inv[i]) != SVec::basis(i) {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}: involution does not square to the identity on {}",
                        self.name, self.labels[i]
                    )));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let lhs = self.apply_involution_rows(inv, self.product(i, j));
                    let rhs = self.mul(&inv[j], &inv[i]);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "{}: involution does not reverse the product of {} and {}",
                            self.name, self.labels[i], self.labels[j]
                        )));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..n {
                let b = SVec::basis(i);
                if self.mul(u, &b) != b || self.mul(&b, u) != b {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}: unit does not act as the identity on {}",
                        self.name, self.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    fn apply_involution_rows(&self, inv: &[SVec], x: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (i, a) in x.iter() {
            for (j, c) in inv[*i].iter() {
                terms.push((*j, a.mul_ref(c)));
            }
        }
        SVec::from_terms(terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &SVec {
        &self.table[i * self.dim() + j]
    }

    pub fn table(&self) -> &[SVec] {
        &self.table
    }

    pub fn involution(&self) -> Option<&[SVec]> {
        self.involution.as_deref()
    }

    pub fn unit(&self) -> Option<&SVec> {
        self.unit.as_ref()
    }

    pub fn require_involution(&self) -> Result<&[SVec]> {
        self.involution().ok_or_else(|| Error::Missing { algebra: self.name.clone(), what: "involution" })
    }

    pub fn require_unit(&self) -> Result<&SVec> {
        self.unit().ok_or_else(|| Error::Missing { algebra: self.name.clone(), what: "unit" })
    }

    /// Replaces the involution without validation.
    pub fn with_involution_unchecked(mut self, involution: Option<Vec<SVec>>) -> Self {
        self.involution = involution;
        self
    }

    /// Every nonzero structure constant as `(i, j, k, c)`, sorted.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.product(i, j).iter() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Product of sparse vectors.
    pub fn mul(&self, x: &SVec, y: &SVec) -> SVec {
        let n = self.dim();
        let mut terms = Vec::new();
        for (i, a) in x.iter() {
            let row = &self.table[i * n..(i + 1) * n];
            for (j, b) in y.iter() {
                let p = &row[*j];
                if p.is_zero() {
                    continue;
                }
                let ab = a.mul_ref(b);
                for (k, c) in p.iter() {
                    terms.push((*k, ab.mul_ref(c)));
                }
            }
        }
        SVec::from_terms(terms)
    }

    /// Product of dense coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        Ok(self.mul(&SVec::from_dense(x), &SVec::from_dense(y)).to_dense(n))
    }

    /// `sigma(x)`; errors when there is no involution.
    pub fn conj(&self, x: &SVec) -> Result<SVec> {
        let inv = self.require_involution()?;
        Ok(self.apply_involution_rows(inv, x))
    }

    /// The associator `(xy)z - x(yz)`.
    pub fn associator(&self, x: &SVec, y: &SVec, z: &SVec) -> SVec {
        self.mul(&self.mul(x, y), z).sub(&self.mul(x, &self.mul(y, z)))
    }

    /// `xy - yx`.
    pub fn commutator(&self, x: &SVec, y: &SVec) -> SVec {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// The same algebra written in a new basis. Row `i` of `frame` is the
    /// `i`-th new basis vector in current coordinates.
    pub fn rebase(&self, frame: &Matrix, name: impl Into<String>, labels: Vec<String>) -> Result<Algebra> {
        let n = self.dim();
        if frame.nrows() != n || frame.ncols() != n || labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: frame.nrows() });
        }
        let inv = frame.inverse()?;
        let f = frame.row_svecs();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(inv.apply(&self.mul(&f[i], &f[j])));
            }
        }
        let involution = self.involution.as_ref().map(|rows| f.iter().map(|v| inv.apply(&self.apply_involution_rows(rows, v))).collect());
        let unit = self.unit.as_ref().map(|u| inv.apply(u));
        Algebra::new_unchecked(name, labels, table, involution, unit)
    }

    /// A copy with the coefficient of `b_k` in `b_i b_j` negated, bypassing
    /// all invariants. For mutation tests.
    pub fn with_negated_constant(&self, i: usize, j: usize, k: usize) -> Algebra {
        let mut out = self.clone();
        let n = self.dim();
        let cell = &mut out.table[i * n + j];
        let c = cell.get(k);
        *cell = cell.axpy(&Scalar::from_int(-2), &SVec::single(k, c));
        out.name = format!("{} (b{i} b{j} -> -b{k})", self.name);
        out
    }
}

/// A linear map stored as the images of basis vectors (row convention).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub rows: Vec<SVec>,
}

impl LinearMap {
    pub fn apply(&self, x: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (i, a) in x.iter() {
            for (j, c) in self.rows[*i].iter() {
                terms.push((*j, a.mul_ref(c)));
            }
        }
        SVec::from_terms(terms)
    }

    /// `self` after `first`: x -> self(first(x)).
    pub fn after(&self, first: &LinearMap) -> LinearMap {
        LinearMap { rows: first.rows.iter().map(|r| self.apply(r)).collect() }
    }

    /// Flattens to a vector indexed by `k * n + m` for the coefficient of
    /// `b_m` in the image of `b_k`, shifted by `offset`.
    pub fn flatten(&self, cols: usize, offset: usize) -> Vec<(usize, Scalar)> {
        let mut out = Vec::new();
        for (k, r) in self.rows.iter().enumerate() {
            for (m, c) in r.iter() {
                out.push((offset + k * cols + m, c.clone()));
            }
        }
        out
    }
}
