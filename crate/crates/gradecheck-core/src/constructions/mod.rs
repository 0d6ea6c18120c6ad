//! Product, tensor and loop algebras, and gradings generated from
//! homogeneous generators.

mod catalog;

pub use catalog::{
    bases, catalog, catalog_names, commutator_skew_product, transfer_to_tensor, BaseAlgebras, CatalogEntry,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::{Algebra, Subspace};
use crate::error::{Error, Result};
use crate::field::smith::solve_left;
use crate::field::{IntMatrix, Matrix, Scalar, SVec};
use crate::grading::{verify, AbelianGroup, Grading, GroupElement, Hom};

/// `A ⊗ B` on the basis `a_i ⊗ b_j` (index `i * dim B + j`), with the
/// tensor product of the involutions and unit `1 ⊗ 1`.
pub fn tensor_with_involution(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (sa, sb) = (a.require_involution()?, b.require_involution()?);
    let (ua, ub) = (a.require_unit()?, b.require_unit()?);
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let tensor = |x: &SVec, y: &SVec| -> SVec {
        let mut terms = Vec::with_capacity(x.nnz() * y.nnz());
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                terms.push((i * nb + j, c.mul_ref(d)));
            }
        }
        SVec::from_terms(terms)
    };
    let mut table = Vec::with_capacity(n * n);
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    table.push(tensor(a.product(i, k), b.product(j, l)));
                }
            }
        }
    }
    let mut inv = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..na {
        for j in 0..nb {
            inv.push(tensor(&sa[i], &sb[j]));
            labels.push(format!("{}⊗{}", a.label(i), b.label(j)));
        }
    }
    Algebra::new(format!("{}⊗{}", a.name(), b.name()), labels, table, Some(inv), Some(tensor(ua, ub)))
}

/// `A x B` with componentwise product; `A` occupies the first indices.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let shift = |v: &SVec| v.reindex(|i| i + na);
    let mut table = vec![SVec::new(); n * n];
    for i in 0..na {
        for k in 0..na {
            table[i * n + k] = a.product(i, k).clone();
        }
    }
    for j in 0..nb {
        for l in 0..nb {
            table[(na + j) * n + na + l] = shift(b.product(j, l));
        }
    }
    let inv = match (a.involution(), b.involution()) {
        (Some(sa), Some(sb)) => Some(sa.iter().cloned().chain(sb.iter().map(shift)).collect()),
        _ => None,
    };
    let unit = match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => Some(ua.add(&shift(ub))),
        _ => None,
    };
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(b.labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    Algebra::new(format!("{}x{}", a.name(), b.name()), labels, table, inv, unit)
}

/// A character of a finitely generated abelian group with values in
/// `{1, i, -1, -i}`, stored as the exponent of `i` on each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group: AbelianGroup,
    exps: Vec<u8>,
}

impl Character {
    pub fn new(group: AbelianGroup, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != group.len() {
            return Err(Error::DimensionMismatch { expected: group.len(), got: values.len() });
        }
        let mut exps = Vec::with_capacity(values.len());
        for (k, v) in values.iter().enumerate() {
            let e = (0..4u8)
                .find(|&e| &Scalar::i_pow(e as i64) == v)
                .ok_or_else(|| Error::InvalidArgument(format!("character value {v} is not a power of i")))?;
            if let Some(m) = group.generator_order(k) {
                if !(e as u64 * m).is_multiple_of(4) {
                    return Err(Error::InvalidArgument(format!(
                        "character value {v} on a generator of order {m}"
                    )));
                }
            }
            exps.push(e);
        }
        Ok(Character { group, exps })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn eval(&self, g: &GroupElement) -> Scalar {
        let e: i64 = g.coords().iter().zip(&self.exps).map(|(x, &e)| x * e as i64).sum();
        Scalar::i_pow(e.rem_euclid(4))
    }
}

/// The finite kernel of `pi` and a lift of each element of the target.
struct Fibers {
    kernel: Vec<GroupElement>,
    pi: Hom,
}

impl Fibers {
    fn new(pi: &Hom) -> Result<Self> {
        if !pi.is_surjective() {
            return Err(Error::InvalidHom("loop algebra needs a surjective homomorphism".into()));
        }
        let (src, tgt) = (pi.source(), pi.target());
        let m = Fibers::presentation(pi);
        let zero = vec![BigInt::from(0); tgt.len()];
        let (_, kernel_basis) = solve_left(&m, &zero).expect("zero is always a solution");
        let gens: Vec<GroupElement> = kernel_basis
            .iter()
            .map(|v| Fibers::to_source(src, &v[..src.len()]))
            .collect::<Result<_>>()?;
        if gens.iter().any(|g| g.coords()[..src.free_rank()].iter().any(|&x| x != 0)) {
            return Err(Error::InvalidHom("kernel is infinite, so the loop algebra is infinite-dimensional".into()));
        }
        let mut kernel: BTreeSet<GroupElement> = BTreeSet::from([src.zero()]);
        let mut frontier: Vec<GroupElement> = vec![src.zero()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = src.add(&x, g);
                if kernel.insert(y.clone()) {
                    if kernel.len() > 1 << 16 {
                        return Err(Error::InvalidHom("kernel too large".into()));
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(Fibers { kernel: kernel.into_iter().collect(), pi: pi.clone() })
    }

    /// Rows: the generator images, then the torsion relations of the target.
    fn presentation(pi: &Hom) -> IntMatrix {
        let tgt = pi.target();
        let mut rows: Vec<Vec<BigInt>> =
            pi.images().iter().map(|g| g.coords().iter().map(|&x| BigInt::from(x)).collect()).collect();
        for (t, &m) in tgt.torsion().iter().enumerate() {
            let mut r = vec![BigInt::from(0); tgt.len()];
            r[tgt.free_rank() + t] = BigInt::from(m);
            rows.push(r);
        }
        IntMatrix::from_rows(tgt.len(), rows)
    }

    fn to_source(src: &AbelianGroup, v: &[BigInt]) -> Result<GroupElement> {
        let c: Option<Vec<i64>> = v.iter().map(|x| x.to_i64()).collect();
        Ok(src.reduce(c.ok_or_else(|| Error::Overflow("group coordinate".into()))?))
    }

    /// All `g` with `pi(g) = target`, sorted.
    fn fiber(&self, target: &GroupElement) -> Result<Vec<GroupElement>> {
        let src = self.pi.source();
        let m = Fibers::presentation(&self.pi);
        let b: Vec<BigInt> = target.coords().iter().map(|&x| BigInt::from(x)).collect();
        let (x, _) = solve_left(&m, &b).ok_or_else(|| Error::InvalidHom(format!("{target} is not in the image")))?;
        let g0 = Fibers::to_source(src, &x[..src.len()])?;
        let mut out: Vec<GroupElement> = self.kernel.iter().map(|k| src.add(&g0, k)).collect();
        out.sort();
        Ok(out)
    }
}

/// The loop algebra `L_π(A) = ⊕_g A_{π(g)} ⊗ g` of a graded algebra.
///
/// Basis: `x_i ⊗ g` for each homogeneous basis vector `x_i` of the base
/// grading and each `g` in the fiber over its degree, ordered by `i` then `g`.
/// Returns the algebra and its grading by `G`.
pub fn loop_algebra(base: &Grading, pi: &Hom) -> Result<(Algebra, Grading)> {
    if pi.target() != base.group() {
        return Err(Error::GroupMismatch(format!("{} onto {} for a {}-grading", pi.source(), pi.target(), base.group())));
    }
    let r = verify(base, false);
    if !r.passed {
        return Err(Error::InvalidGrading(format!("base grading fails at {:?}", r.counterexample.map(|c| c.inputs))));
    }
    let fib = Fibers::new(pi)?;
    let h = base.homogeneous_algebra();
    let src = pi.source();
    let mut basis: Vec<(usize, GroupElement)> = Vec::new();
    for i in 0..h.dim() {
        for g in fib.fiber(base.degree(i))? {
            basis.push((i, g));
        }
    }
    let index: BTreeMap<(usize, GroupElement), usize> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    let n = basis.len();
    let mut table = Vec::with_capacity(n * n);
    for (i, g) in &basis {
        for (j, g2) in &basis {
            let gg = src.add(g, g2);
            let terms = h.product(*i, *j).iter().map(|(k, c)| (index[&(*k, gg.clone())], c.clone())).collect();
            table.push(SVec::from_terms(terms));
        }
    }
    let labels: Vec<String> = basis.iter().map(|(i, g)| format!("{}⊗{g}", h.label(*i))).collect();
    let inv = if verify(base, true).passed {
        h.involution().map(|sig| {
            basis
                .iter()
                .map(|(i, g)| SVec::from_terms(sig[*i].iter().map(|(k, c)| (index[&(*k, g.clone())], c.clone())).collect()))
                .collect()
        })
    } else {
        None
    };
    let zero = src.zero();
    let unit = h
        .unit()
        .map(|u| SVec::from_terms(u.iter().map(|(k, c)| (index[&(*k, zero.clone())], c.clone())).collect()));
    let alg = Algebra::new(format!("L({})", h.name()), labels, table, inv, unit)?;
    let degrees = basis.iter().map(|(_, g)| g.clone()).collect();
    let arc = Arc::new(alg.clone());
    let grading = Grading::new(arc, None, src.clone(), degrees)?;
    Ok((alg, grading))
}

/// The grading on `A x A` transported from `L_π(A)` along
/// `x ⊗ g ↦ (x, χ(g) x)`, where `ker π = {0, h}` and `χ(h) = -1`.
pub fn loop_to_product(base: &Grading, pi: &Hom, h: &GroupElement, chi: &Character) -> Result<Grading> {
    let src = pi.source();
    if chi.group() != src {
        return Err(Error::GroupMismatch("character is defined on a different group".into()));
    }
    let fib = Fibers::new(pi)?;
    if fib.kernel.len() != 2 || !fib.kernel.contains(h) || src.is_zero(h) {
        return Err(Error::InvalidArgument(format!("kernel of the projection must be {{0, {h}}}")));
    }
    if chi.eval(h) != Scalar::from_int(-1) {
        return Err(Error::InvalidArgument(format!("character must send {h} to -1")));
    }
    let a = base.algebra();
    let n = a.dim();
    let prod = Arc::new(direct_product(a, a)?);
    let mut rows = Vec::with_capacity(2 * n);
    let mut degrees = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(2 * n);
    for i in 0..n {
        let x = base.basis_vector(i);
        for g in fib.fiber(base.degree(i))? {
            let c = chi.eval(&g);
            rows.push(x.add(&x.scale(&c).reindex(|k| k + n)));
            let l = &base.labels()[i];
            let prefix = match c.to_string().as_str() {
                "1" => String::new(),
                "-1" => "-".into(),
                s => s.to_string(),
            };
            labels.push(format!("({l},{prefix}{l})"));
            degrees.push(g);
        }
    }
    let frame = Matrix::from_rows(&rows, 2 * n)?;
    Grading::with_frame(prod, frame, labels, src.clone(), degrees)
}

/// The grading generated by homogeneous elements: components are grown by
/// multiplying everything found so far until nothing new appears. The unit
/// is placed in degree zero.
pub fn grading_closure(algebra: Arc<Algebra>, group: AbelianGroup, gens: &[(SVec, GroupElement)]) -> Result<Grading> {
    let n = algebra.dim();
    if let Some((_, d)) = gens.iter().find(|(_, d)| !group.contains(d)) {
        return Err(Error::InvalidGrading(format!("generator degree {d} is not in {group}")));
    }
    let mut st = Closure { n, comps: BTreeMap::new(), items: Vec::new(), total: 0 };
    if let Some(u) = algebra.unit() {
        st.absorb(u, &group.zero())?;
    }
    for (v, d) in gens {
        st.absorb(v, d)?;
    }
    // items are multiplied pairwise in the order they were found
    let mut k = 0;
    while k < st.items.len() {
        let (v, d) = st.items[k].clone();
        for m in 0..=k {
            let (w, e) = st.items[m].clone();
            let de = group.add(&d, &e);
            st.absorb(&algebra.mul(&v, &w), &de)?;
            if m != k {
                st.absorb(&algebra.mul(&w, &v), &de)?;
            }
        }
        k += 1;
    }
    let Closure { comps, total, .. } = st;
    if total < n {
        return Err(Error::DoesNotGenerate { got: total, dim: n });
    }
    let mut rows = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (d, s) in &comps {
        for (k, v) in s.basis().into_iter().enumerate() {
            rows.push(v);
            labels.push(format!("{d}#{k}"));
            degrees.push(d.clone());
        }
    }
    let frame = Matrix::from_rows(&rows, n)?;
    let g = Grading::with_frame(algebra, frame, labels, group, degrees)
        .map_err(|_| Error::ComponentsCollide("the components do not form a direct sum".into()))?;
    let r = verify(&g, false);
    if !r.passed {
        return Err(Error::ComponentsCollide(format!("closure is not a grading: {:?}", r.counterexample)));
    }
    Ok(g)
}

struct Closure {
    n: usize,
    comps: BTreeMap<GroupElement, Subspace>,
    items: Vec<(SVec, GroupElement)>,
    total: usize,
}

impl Closure {
    fn absorb(&mut self, v: &SVec, d: &GroupElement) -> Result<()> {
        if v.is_zero() {
            return Ok(());
        }
        let n = self.n;
        let c = self.comps.entry(d.clone()).or_insert_with(|| Subspace::zero(n));
        if c.insert(v) {
            self.total += 1;
            if self.total > n {
                return Err(Error::ComponentsCollide(format!("components exceed dimension {n} at degree {d}")));
            }
            self.items.push((v.clone(), d.clone()));
        }
        Ok(())
    }
}
