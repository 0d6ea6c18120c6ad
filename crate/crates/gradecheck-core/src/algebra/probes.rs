//! Identity checks and invariant subspaces: structurability, alternativity,
//! the generalized alternative nucleus, derivations and ideals.

use crate::algebra::{Algebra, Checker, Counterexample, LinearMap, Report, Subspace};
use crate::error::{Error, Result};
use crate::field::{Echelon, Scalar, SVec};

/// Dense scratch vector that remembers which slots it touched, so clearing
/// costs only the touched entries.
pub(crate) struct Acc {
    vals: Vec<Scalar>,
    seen: Vec<bool>,
    touched: Vec<usize>,
}

impl Acc {
    pub(crate) fn new(n: usize) -> Self {
        Acc { vals: vec![Scalar::zero(); n], seen: vec![false; n], touched: Vec::new() }
    }

    #[inline]
    pub(crate) fn add(&mut self, v: &SVec, c: &Scalar) {
        for (k, a) in v.iter() {
            let k = *k;
            if !self.seen[k] {
                self.seen[k] = true;
                self.touched.push(k);
            }
            self.vals[k] += &a.mul_ref(c);
        }
    }

    #[inline]
    pub(crate) fn sub(&mut self, v: &SVec, c: &Scalar) {
        for (k, a) in v.iter() {
            let k = *k;
            if !self.seen[k] {
                self.seen[k] = true;
                self.touched.push(k);
            }
            self.vals[k] -= &a.mul_ref(c);
        }
    }

    /// Returns whether the accumulated vector is zero, and resets it.
    pub(crate) fn check_zero(&mut self) -> bool {
        let mut zero = true;
        for &k in &self.touched {
            if !self.vals[k].is_zero() {
                zero = false;
            }
            self.vals[k] = Scalar::zero();
            self.seen[k] = false;
        }
        self.touched.clear();
        zero
    }
}

/// Checks that `a` is structurable: `[T_z, V_{x,y}] = V_{T_z x, y} - V_{x, T_{z̄} y}`
/// on every quadruple of basis vectors, where
/// `V_{x,y} z = (x ȳ) z + (z ȳ) x - (z x̄) y` and `T_z = V_{z,1}`.
/// Also checks the unit. Stops at the first failure.
pub fn check_structurable(a: &Algebra) -> Result<Report> {
    let sig = a.require_involution()?;
    let one = a.require_unit()?.clone();
    let n = a.dim();
    let mut ck = Checker::new(format!("structurable({})", a.name()));
    let label = |i: usize| a.label(i).to_string();

    for i in 0..n {
        let b = SVec::basis(i);
        if !ck.expect(&b, &a.mul(&one, &b), || vec!["1".into(), label(i)])
            || !ck.expect(&b, &a.mul(&b, &one), || vec![label(i), "1".into()])
        {
            return Ok(ck.finish());
        }
    }

    // xs[x * n + y] = b_x σ(b_y)
    let mut xs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            xs.push(a.mul(&SVec::basis(x), &sig[y]));
        }
    }
    let mut v = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for w in 0..n {
                let t = a
                    .mul(&xs[x * n + y], &SVec::basis(w))
                    .add(&a.mul(&xs[w * n + y], &SVec::basis(x)))
                    .sub(&a.mul(&xs[w * n + x], &SVec::basis(y)));
                v.push(t);
            }
        }
    }
    let vi = |x: usize, y: usize, w: usize| (x * n + y) * n + w;
    // t[z * n + w] = T_{b_z} b_w
    let mut t = Vec::with_capacity(n * n);
    for z in 0..n {
        for w in 0..n {
            t.push(a.product(z, w).add(a.product(w, z)).sub(&xs[w * n + z]));
        }
    }
    // st[z * n + y] = T_{σ(b_z)} b_y
    let mut st = Vec::with_capacity(n * n);
    for z in 0..n {
        for y in 0..n {
            let mut terms = Vec::new();
            for (k, c) in sig[z].iter() {
                for (m, d) in t[k * n + y].iter() {
                    terms.push((*m, c.mul_ref(d)));
                }
            }
            st.push(SVec::from_terms(terms));
        }
    }

    let mut acc = Acc::new(n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let tzx = &t[z * n + x];
                let tszy = &st[z * n + y];
                for w in 0..n {
                    for (k, c) in v[vi(x, y, w)].iter() {
                        acc.add(&t[z * n + k], c);
                    }
                    for (k, c) in t[z * n + w].iter() {
                        acc.sub(&v[vi(x, y, *k)], c);
                    }
                    for (k, c) in tzx.iter() {
                        acc.sub(&v[vi(*k, y, w)], c);
                    }
                    for (k, c) in tszy.iter() {
                        acc.add(&v[vi(x, *k, w)], c);
                    }
                    let ok = acc.check_zero();
                    if !ck.ensure(ok, || structurable_cx(a, &v, &t, &st, (x, y, z, w))) {
                        return Ok(ck.finish());
                    }
                }
            }
        }
    }
    Ok(ck.finish())
}

fn structurable_cx(
    a: &Algebra,
    v: &[SVec],
    t: &[SVec],
    st: &[SVec],
    (x, y, z, w): (usize, usize, usize, usize),
) -> Counterexample {
    let n = a.dim();
    let vxy = |u: &SVec| {
        let mut acc = SVec::new();
        for (k, c) in u.iter() {
            acc = acc.axpy(c, &v[(x * n + y) * n + k]);
        }
        acc
    };
    let tz = |u: &SVec| {
        let mut acc = SVec::new();
        for (k, c) in u.iter() {
            acc = acc.axpy(c, &t[z * n + k]);
        }
        acc
    };
    let lhs = tz(&v[(x * n + y) * n + w]).sub(&vxy(&t[z * n + w]));
    let mut rhs = SVec::new();
    for (k, c) in t[z * n + x].iter() {
        rhs = rhs.axpy(c, &v[(k * n + y) * n + w]);
    }
    for (k, c) in st[z * n + y].iter() {
        rhs = rhs.axpy(&-c, &v[(x * n + k) * n + w]);
    }
    Counterexample {
        inputs: [x, y, z, w].iter().map(|&i| a.label(i).to_string()).collect(),
        expected: rhs.to_string(),
        got: lhs.to_string(),
    }
}

/// Checks `(x,y,z) + (y,x,z) = 0` and `(x,y,z) + (x,z,y) = 0` on basis triples.
pub fn check_alternative(a: &Algebra) -> Report {
    let n = a.dim();
    let mut ck = Checker::new(format!("alternative({})", a.name()));
    let zero = SVec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (bx, by, bz) = (SVec::basis(x), SVec::basis(y), SVec::basis(z));
                let xyz = a.associator(&bx, &by, &bz);
                let left = xyz.add(&a.associator(&by, &bx, &bz));
                let right = xyz.add(&a.associator(&bx, &bz, &by));
                let labels = || vec![a.label(x).to_string(), a.label(y).to_string(), a.label(z).to_string()];
                if !ck.expect(&zero, &left, labels) || !ck.expect(&zero, &right, labels) {
                    return ck.finish();
                }
            }
        }
    }
    ck.finish()
}

/// `{a : (a,x,y) = -(x,a,y) = (x,y,a) for all x, y}`.
pub fn generalized_alt_nucleus(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut ech = Echelon::exact(n);
    let b: Vec<SVec> = (0..n).map(SVec::basis).collect();
    'outer: for x in 0..n {
        for y in 0..n {
            let mut e1: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            let mut e2: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for k in 0..n {
                let kxy = a.mul(a.product(k, x), &b[y]).sub(&a.mul(&b[k], a.product(x, y)));
                let xky = a.mul(a.product(x, k), &b[y]).sub(&a.mul(&b[x], a.product(k, y)));
                let xyk = a.mul(a.product(x, y), &b[k]).sub(&a.mul(&b[x], a.product(y, k)));
                for (m, c) in kxy.add(&xky).iter() {
                    e1[*m].push((k, c.clone()));
                }
                for (m, c) in xky.add(&xyk).iter() {
                    e2[*m].push((k, c.clone()));
                }
            }
            for row in e1.into_iter().chain(e2) {
                if !row.is_empty() {
                    ech.insert(&row);
                }
            }
            if ech.rank() == n {
                break 'outer;
            }
        }
    }
    Subspace::span(n, ech.kernel_svecs())
}

/// Calls `f` with each row of the linear system whose kernel is `Der(a)`.
/// Unknown `k * n + m` is the coefficient of `b_m` in `D(b_k)`.
fn for_each_derivation_row(a: &Algebra, mut f: impl FnMut(&[(usize, Scalar)])) {
    let n = a.dim();
    // left[i * n + m]: (l, c) with c the b_m coefficient of b_i b_l
    // right[j * n + m]: (l, c) with c the b_m coefficient of b_l b_j
    let mut left: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    let mut right: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    for i in 0..n {
        for l in 0..n {
            for (m, c) in a.product(i, l).iter() {
                left[i * n + m].push((l, c.clone()));
                right[l * n + m].push((i, c.clone()));
            }
        }
    }
    let mut row = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = a.product(i, j);
            for m in 0..n {
                row.clear();
                for (k, c) in p.iter() {
                    row.push((k * n + m, c.clone()));
                }
                for (l, c) in &right[j * n + m] {
                    row.push((i * n + l, -c));
                }
                for (l, c) in &left[i * n + m] {
                    row.push((j * n + l, -c));
                }
                if !row.is_empty() {
                    let v = SVec::from_terms(std::mem::take(&mut row));
                    if !v.is_zero() {
                        f(v.entries());
                    }
                }
            }
        }
    }
}

/// The derivation equations as sparse rows over `dim^2` unknowns.
pub fn derivation_system(a: &Algebra) -> Vec<SVec> {
    let mut rows = Vec::new();
    for_each_derivation_row(a, |r| rows.push(SVec::from_terms(r.to_vec())));
    rows
}

/// `Der(a)` as a subspace of flattened `dim x dim` matrices.
pub fn derivation_algebra(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut ech = Echelon::exact(n * n);
    for_each_derivation_row(a, |r| {
        ech.insert(r);
    });
    Subspace::span(n * n, ech.kernel_svecs())
}

/// Whether `d(xy) = d(x) y + x d(y)` on all basis pairs.
pub fn is_derivation(a: &Algebra, d: &LinearMap) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (bi, bj) = (SVec::basis(i), SVec::basis(j));
            d.apply(a.product(i, j)) == a.mul(&d.rows[i], &bj).add(&a.mul(&bi, &d.rows[j]))
        })
    })
}

/// The two-sided ideal generated by `seeds`.
pub fn ideal_closure(a: &Algebra, seeds: &[SVec]) -> Subspace {
    let n = a.dim();
    let mut s = Subspace::zero(n);
    let mut queue: Vec<SVec> = Vec::new();
    for v in seeds {
        if s.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for i in 0..n {
            let b = SVec::basis(i);
            for w in [a.mul(&b, &v), a.mul(&v, &b)] {
                if s.insert(&w) {
                    queue.push(w);
                }
            }
        }
    }
    s
}

/// The skew and symmetric parts `(S, H)` of the involution.
pub fn split_involution(a: &Algebra) -> Result<(Subspace, Subspace)> {
    let sig = a.require_involution()?;
    let n = a.dim();
    let skew = Subspace::span(n, (0..n).map(|i| SVec::basis(i).sub(&sig[i])));
    let herm = Subspace::span(n, (0..n).map(|i| SVec::basis(i).add(&sig[i])));
    Ok((skew, herm))
}

/// The subspace `s` under the commutator product `[x, y] = xy - yx`, on the
/// canonical basis of `s`. Errors if `s` is not closed.
pub fn commutator_algebra(a: &Algebra, s: &Subspace, name: impl Into<String>, labels: Vec<String>) -> Result<Algebra> {
    let basis = s.basis();
    let k = basis.len();
    if labels.len() != k {
        return Err(Error::DimensionMismatch { expected: k, got: labels.len() });
    }
    let frame = Subspace::span(a.dim(), &basis);
    let mut table = Vec::with_capacity(k * k);
    for x in &basis {
        for y in &basis {
            let c = a.commutator(x, y);
            match frame.coords(&c) {
                Some(v) => table.push(v),
                None => return Err(Error::InvalidAlgebra("subspace is not closed under the commutator".into())),
            }
        }
    }
    Algebra::new(name, labels, table, None, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 2x2 matrices on `e11, e12, e21, e22` with the symplectic
    /// involution (adjugate), which is structurable since it is associative.
    fn m2() -> Algebra {
        let n = 4;
        let idx = |r: usize, c: usize| 2 * r + c;
        let mut table = vec![SVec::new(); n * n];
        for r in 0..2 {
            for c in 0..2 {
                for c2 in 0..2 {
                    table[idx(r, c) * n + idx(c, c2)] = SVec::basis(idx(r, c2));
                }
            }
        }
        let m1 = Scalar::from_int(-1);
        let inv = vec![SVec::basis(3), SVec::single(1, m1.clone()), SVec::single(2, m1), SVec::basis(0)];
        let unit = SVec::from_terms(vec![(0, Scalar::one()), (3, Scalar::one())]);
        let labels = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
        Algebra::new("M2", labels, table, Some(inv), Some(unit)).unwrap()
    }

    #[test]
    fn matrices_are_structurable_and_alternative() {
        let a = m2();
        let r = check_structurable(&a).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
        assert_eq!(r.checks_run, 8 + 256);
        assert!(check_alternative(&a).passed);
        // associative, so the whole algebra is in the nucleus
        assert_eq!(generalized_alt_nucleus(&a).dim(), 4);
        // Der(M2) = inner derivations = sl2
        assert_eq!(derivation_algebra(&a).dim(), 3);
        assert_eq!(ideal_closure(&a, &[SVec::basis(1)]).dim(), 4);
        let (s, h) = split_involution(&a).unwrap();
        assert_eq!((s.dim(), h.dim()), (3, 1));
        let sl2 = commutator_algebra(&a, &s, "sl2", vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(derivation_algebra(&sl2).dim(), 3);
    }

    #[test]
    fn validation_rejects_a_non_anti_automorphism() {
        let a = m2();
        // the transpose is an involution; the identity is not, since M2 is
        // not commutative
        let id: Vec<SVec> = (0..4).map(SVec::basis).collect();
        let r = Algebra::new(
            "M2",
            a.labels().to_vec(),
            a.table().to_vec(),
            Some(id),
            a.unit().cloned(),
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }
}
