use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::smith::torsion_u64;
use crate::field::{smith_invariants, IntMatrix};

/// `Z^free_rank x Z/m_1 x ... x Z/m_k`. Elements list the free coordinates
/// first, then the torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// A group element as its coordinate vector; meaningful relative to an
/// [`AbelianGroup`], which keeps torsion residues reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn new(c: Vec<i64>) -> Self {
        GroupElement(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(m) = torsion.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidArgument(format!("torsion modulus {m} must be at least 2")));
        }
        if torsion.iter().any(|&m| m > i64::MAX as u64) {
            return Err(Error::Overflow("torsion modulus".into()));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(n: usize) -> Self {
        AbelianGroup { free_rank: n, torsion: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of coordinates of an element.
    pub fn len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.len()])
    }

    /// The `k`-th standard generator.
    pub fn generator(&self, k: usize) -> GroupElement {
        let mut c = vec![0; self.len()];
        c[k] = 1;
        GroupElement(c)
    }

    /// Order of the `k`-th generator; `None` for free generators.
    pub fn generator_order(&self, k: usize) -> Option<u64> {
        (k >= self.free_rank).then(|| self.torsion[k - self.free_rank])
    }

    pub fn reduce(&self, mut c: Vec<i64>) -> GroupElement {
        for (t, &m) in self.torsion.iter().enumerate() {
            let x = &mut c[self.free_rank + t];
            *x = x.rem_euclid(m as i64);
        }
        GroupElement(c)
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn element(&self, c: Vec<i64>) -> Result<GroupElement> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: c.len() });
        }
        Ok(self.reduce(c))
    }

    /// Whether `g` has the right length and reduced residues.
    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.len()
            && self.torsion.iter().enumerate().all(|(t, &m)| (0..m as i64).contains(&g.0[self.free_rank + t]))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| k * x).collect())
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// `self x other`, with free coordinates of both first.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion }
    }

    /// `(g, h)` in `self x other`.
    pub fn pair(&self, other: &AbelianGroup, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let (f1, f2) = (self.free_rank, other.free_rank);
        let mut c = Vec::with_capacity(self.len() + other.len());
        c.extend_from_slice(&g.0[..f1]);
        c.extend_from_slice(&h.0[..f2]);
        c.extend_from_slice(&g.0[f1..]);
        c.extend_from_slice(&h.0[f2..]);
        GroupElement(c)
    }

    /// Splits an element of `self x other` into its two coordinates.
    pub fn unpair(&self, other: &AbelianGroup, gh: &GroupElement) -> (GroupElement, GroupElement) {
        let (f1, f2) = (self.free_rank, other.free_rank);
        let t1 = self.torsion.len();
        let c = &gh.0;
        let mut g = c[..f1].to_vec();
        g.extend_from_slice(&c[f1 + f2..f1 + f2 + t1]);
        let mut h = c[f1..f1 + f2].to_vec();
        h.extend_from_slice(&c[f1 + f2 + t1..]);
        (GroupElement(g), GroupElement(h))
    }

    /// The torsion part in invariant-factor form `d1 | d2 | ...`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let k = self.torsion.len();
        let rows: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(if i == j { self.torsion[i] } else { 0 })).collect())
            .collect();
        let (_, t) = smith_invariants(&IntMatrix::from_rows(k, rows));
        torsion_u64(&t).expect("factors of a product of u64 moduli fit after reduction")
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors() == other.invariant_factors()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let m = self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == m {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z/{m}") } else { format!("(Z/{m})^{}", j - i) });
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A homomorphism given by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    source: AbelianGroup,
    target: AbelianGroup,
    images: Vec<GroupElement>,
}

impl Hom {
    /// Checks shapes and that a torsion generator of order `m` goes to an
    /// element killed by `m`.
    pub fn new(source: AbelianGroup, target: AbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidHom(format!("{} generator images for {} generators", images.len(), source.len())));
        }
        let images: Vec<GroupElement> = images
            .into_iter()
            .map(|g| target.element(g.0))
            .collect::<Result<_>>()
            .map_err(|e| Error::InvalidHom(e.to_string()))?;
        for (k, img) in images.iter().enumerate() {
            if let Some(m) = source.generator_order(k) {
                if !target.is_zero(&target.scale(m as i64, img)) {
                    return Err(Error::InvalidHom(format!(
                        "generator {k} has order {m} but its image {img} is not killed by {m}"
                    )));
                }
            }
        }
        Ok(Hom { source, target, images })
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let mut acc = self.target.zero();
        for (k, &x) in g.0.iter().enumerate() {
            if x != 0 {
                acc = self.target.add(&acc, &self.target.scale(x, &self.images[k]));
            }
        }
        acc
    }

    /// Whether every element of the target is hit.
    pub fn is_surjective(&self) -> bool {
        // The image is generated by the columns; compare Z^t / (images +
        // torsion relations) with the trivial group.
        let t = self.target.len();
        let f = self.target.free_rank;
        let mut rows: Vec<Vec<BigInt>> = self.images.iter().map(|g| g.0.iter().map(|&x| BigInt::from(x)).collect()).collect();
        for (k, &m) in self.target.torsion.iter().enumerate() {
            let mut r = vec![BigInt::from(0); t];
            r[f + k] = BigInt::from(m);
            rows.push(r);
        }
        let (free, tors) = smith_invariants(&IntMatrix::from_rows(t, rows));
        free == 0 && tors.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_arithmetic() {
        let g = AbelianGroup::new(1, vec![2, 4]).unwrap();
        let a = g.element(vec![1, 1, 3]).unwrap();
        assert_eq!(g.add(&a, &a), GroupElement(vec![2, 0, 2]));
        assert_eq!(g.neg(&a), GroupElement(vec![-1, 1, 1]));
        assert_eq!(g.to_string(), "Z x Z/2 x Z/4");
        assert_eq!(AbelianGroup::new(0, vec![4, 2, 2]).unwrap().invariant_factors(), vec![2, 2, 4]);
        assert_eq!(AbelianGroup::new(0, vec![2, 3]).unwrap().invariant_factors(), vec![6]);
        assert!(AbelianGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn pairing_roundtrip() {
        let g = AbelianGroup::new(1, vec![2]).unwrap();
        let h = AbelianGroup::new(2, vec![4]).unwrap();
        let x = GroupElement(vec![5, 1]);
        let y = GroupElement(vec![-1, 2, 3]);
        let p = g.pair(&h, &x, &y);
        assert_eq!(p, GroupElement(vec![5, -1, 2, 1, 3]));
        assert!(g.product(&h).contains(&p));
        assert_eq!(g.unpair(&h, &p), (x, y));
    }

    #[test]
    fn hom_checks_orders() {
        let z2 = AbelianGroup::new(0, vec![2]).unwrap();
        let z4 = AbelianGroup::new(0, vec![4]).unwrap();
        assert!(Hom::new(z2.clone(), z4.clone(), vec![GroupElement(vec![1])]).is_err());
        let h = Hom::new(z2.clone(), z4.clone(), vec![GroupElement(vec![2])]).unwrap();
        assert_eq!(h.apply(&GroupElement(vec![1])), GroupElement(vec![2]));
        assert!(!h.is_surjective());
        let z = AbelianGroup::free(2);
        let s = Hom::new(z, AbelianGroup::free(1), vec![GroupElement(vec![1]), GroupElement(vec![1])]).unwrap();
        assert!(s.is_surjective());
    }
}
