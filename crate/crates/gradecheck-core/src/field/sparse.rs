//! Sparse vectors over Q(i), kept sorted by index with no stored zeros.

use std::fmt;

use crate::field::scalar::Scalar;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SVec(Vec<(usize, Scalar)>);

impl SVec {
    pub fn new() -> Self {
        SVec(Vec::new())
    }

    /// Unit vector `e_i`.
    pub fn basis(i: usize) -> Self {
        SVec(vec![(i, Scalar::one())])
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            SVec::new()
        } else {
            SVec(vec![(i, c)])
        }
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_terms(mut terms: Vec<(usize, Scalar)>) -> Self {
        if terms.len() <= 1 {
            terms.retain(|(_, c)| !c.is_zero());
            return SVec(terms);
        }
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add_ref(&c),
                _ => {
                    if let Some((_, acc)) = out.last() {
                        if acc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((i, c));
                }
            }
        }
        if let Some((_, acc)) = out.last() {
            if acc.is_zero() {
                out.pop();
            }
        }
        SVec(out)
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SVec(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect())
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, c) in &self.0 {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, Scalar)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.0.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|t| t.0)
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SVec(self.0.iter().map(|(i, a)| (*i, a.mul_ref(c))).collect())
    }

    pub fn neg(&self) -> SVec {
        SVec(self.0.iter().map(|(i, a)| (*i, -a)).collect())
    }

    pub fn add(&self, other: &SVec) -> SVec {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        self.axpy(&Scalar::from_int(-1), other)
    }

    /// `self + c * other`, by a linear merge.
    pub fn axpy(&self, c: &Scalar, other: &SVec) -> SVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, b[j].1.mul_ref(c)));
                j += 1;
            } else {
                let s = a[i].1.add_ref(&b[j].1.mul_ref(c));
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SVec(out)
    }

    /// Applies `f` to every index; the result is re-sorted and merged.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SVec {
        SVec::from_terms(self.0.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> SVec {
        SVec(self.0.iter().map(|(i, c)| (*i, c.conj())).collect())
    }

    pub fn dot(&self, other: &SVec) -> Scalar {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut acc = Scalar::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.add_ref(&a[i].1.mul_ref(&b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

impl fmt::Display for SVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(i, c)| format!("({c})b{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromIterator<(usize, Scalar)> for SVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        SVec::from_terms(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_cancels() {
        let a = SVec::from_terms(vec![(3, Scalar::one()), (1, Scalar::from_int(2)), (3, Scalar::from_int(-1))]);
        assert_eq!(a.entries(), &[(1, Scalar::from_int(2))]);
        let b = SVec::from_terms(vec![(1, Scalar::from_int(-2)), (5, Scalar::one())]);
        assert_eq!(a.add(&b), SVec::basis(5));
        assert_eq!(a.axpy(&Scalar::one(), &a.neg()), SVec::new());
    }
}
