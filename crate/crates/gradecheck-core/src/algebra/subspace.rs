use crate::field::{Echelon, SVec};
use crate::field::linalg::Exact;

/// A subspace of `Q(i)^n` held in canonical reduced echelon form, so two
/// subspaces are equal exactly when their bases are.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    echelon: Echelon<Exact>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, echelon: Echelon::exact(ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(SVec::basis))
    }

    pub fn span<I>(ambient: usize, vecs: I) -> Self
    where
        I: IntoIterator,
        I::Item: std::borrow::Borrow<SVec>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vecs {
            s.insert(std::borrow::Borrow::borrow(&v));
        }
        s
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        self.echelon.insert_svec(v).is_some()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.echelon.contains_svec(v)
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// The canonical basis, sorted by pivot column.
    pub fn basis(&self) -> Vec<SVec> {
        self.echelon.basis_svecs()
    }

    /// Basis vectors in insertion order, with `coords` matching this order.
    pub fn rows(&self) -> Vec<SVec> {
        (0..self.dim()).map(|r| self.echelon.row_svec(r)).collect()
    }

    /// Coordinates of `v` against [`Subspace::rows`]; `None` off the span.
    pub fn coords(&self, v: &SVec) -> Option<SVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SVec::from_terms(self.echelon.coords(v.entries())))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(&v);
        }
        s
    }

    pub fn echelon(&self) -> &Echelon<Exact> {
        &self.echelon
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.basis() == other.basis()
    }
}

impl Eq for Subspace {}

/// Coordinates against a fixed list of independent vectors, in the order
/// given. Each vector is echelonized next to a unit vector that records it.
#[derive(Clone, Debug)]
pub struct Coordinates {
    ambient: usize,
    len: usize,
    echelon: Echelon<Exact>,
}

impl Coordinates {
    /// `None` if the vectors are dependent.
    pub fn new(ambient: usize, vecs: &[SVec]) -> Option<Self> {
        let mut echelon = Echelon::exact(ambient + vecs.len());
        for (k, v) in vecs.iter().enumerate() {
            let tagged = v.add(&SVec::basis(ambient + k));
            echelon.insert_svec(&tagged);
        }
        if echelon.pivots().iter().any(|&p| p >= ambient) {
            return None;
        }
        Some(Coordinates { ambient, len: vecs.len(), echelon })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `c` with `v = Σ c_k vecs[k]`, or `None` off the span.
    pub fn coords(&self, v: &SVec) -> Option<SVec> {
        let r = self.echelon.reduce_svec(v);
        if r.iter().any(|(i, _)| *i < self.ambient) {
            return None;
        }
        Some(r.neg().reindex(|i| i - self.ambient))
    }
}
