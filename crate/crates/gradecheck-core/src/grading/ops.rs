use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{Algebra, Checker, Counterexample, Report, Subspace};
use crate::error::{Error, Result};
use crate::field::smith::{cokernel, torsion_u64};
use crate::field::{Matrix, SVec};
use crate::grading::{AbelianGroup, Grading, GroupElement, Hom};

/// Checks `A_g A_h ⊆ A_{g+h}` on every ordered pair of homogeneous basis
/// vectors, and with `with_involution` that each basis vector's conjugate
/// stays in its component.
pub fn verify(g: &Grading, with_involution: bool) -> Report {
    let h = g.homogeneous_algebra();
    let n = h.dim();
    let grp = g.group();
    let mut ck = Checker::new(format!("grading({})", h.name()));
    for i in 0..n {
        for j in 0..n {
            let target = grp.add(g.degree(i), g.degree(j));
            let bad = h.product(i, j).iter().find(|(k, _)| g.degree(*k) != &target);
            let ok = ck.ensure(bad.is_none(), || {
                let (k, c) = bad.expect("a violation");
                Counterexample {
                    inputs: vec![h.label(i).to_string(), h.label(j).to_string()],
                    expected: format!("product in degree {target}"),
                    got: format!("({c}){} of degree {}", h.label(*k), g.degree(*k)),
                }
            });
            if !ok {
                return ck.finish();
            }
        }
    }
    if with_involution {
        let Some(sig) = h.involution() else {
            ck.ensure(false, || Counterexample {
                inputs: vec![],
                expected: "an involution".into(),
                got: "none".into(),
            });
            return ck.finish();
        };
        for i in 0..n {
            let bad = sig[i].iter().find(|(k, _)| g.degree(*k) != g.degree(i));
            let ok = ck.ensure(bad.is_none(), || {
                let (k, c) = bad.expect("a violation");
                Counterexample {
                    inputs: vec![format!("involution({})", h.label(i))],
                    expected: format!("degree {}", g.degree(i)),
                    got: format!("({c}){} of degree {}", h.label(*k), g.degree(*k)),
                }
            });
            if !ok {
                return ck.finish();
            }
        }
    }
    ck.finish()
}

/// The universal group of a grading, with the grading regraded over it.
#[derive(Clone, Debug)]
pub struct UniversalGroup {
    pub group: AbelianGroup,
    /// Support elements of the original grading, sorted.
    pub support: Vec<GroupElement>,
    /// Their images in the universal group.
    pub images: Vec<GroupElement>,
    pub grading: Grading,
}

/// Support elements modulo `a + b = c` for every nonzero product of a
/// degree-`a` and a degree-`b` basis vector landing in degree `c`.
pub fn universal_group(g: &Grading) -> Result<UniversalGroup> {
    let r = verify(g, false);
    if !r.passed {
        let cx = r.counterexample.expect("failed reports carry a counterexample");
        return Err(Error::InvalidGrading(format!("fails at {:?}: {}", cx.inputs, cx.got)));
    }
    let h = g.homogeneous_algebra();
    let n = h.dim();
    let support = g.support();
    let index: BTreeMap<&GroupElement, usize> = support.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let deg_idx: Vec<usize> = (0..n).map(|i| index[g.degree(i)]).collect();
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some((k, _)) = h.product(i, j).entries().first() {
                let (a, b, c) = (deg_idx[i], deg_idx[j], deg_idx[*k]);
                let key = if a <= b { (a, b, c) } else { (b, a, c) };
                if seen.insert(key) {
                    let mut r = vec![BigInt::from(0); support.len()];
                    r[a] += 1;
                    r[b] += 1;
                    r[c] -= 1;
                    rows.push(r);
                }
            }
        }
    }
    let ck = cokernel(support.len(), rows);
    let group = AbelianGroup::new(ck.free_rank, torsion_u64(&ck.torsion)?)?;
    let images: Vec<GroupElement> = ck
        .images
        .iter()
        .map(|(free, tors)| {
            let c: Option<Vec<i64>> = free.iter().chain(tors).map(|x| x.to_i64()).collect();
            c.map(GroupElement::new).ok_or_else(|| Error::Overflow("universal group coordinate".into()))
        })
        .collect::<Result<_>>()?;
    let degrees = deg_idx.iter().map(|&s| images[s].clone()).collect();
    let grading = g.relabel(group.clone(), degrees)?;
    Ok(UniversalGroup { group, support, images, grading })
}

/// The coarsening of `g` along a homomorphism out of its group.
pub fn coarsen(g: &Grading, hom: &Hom) -> Result<Grading> {
    if hom.source() != g.group() {
        return Err(Error::GroupMismatch(format!("hom from {} applied to a {}-grading", hom.source(), g.group())));
    }
    let degrees = g.degrees().iter().map(|d| hom.apply(d)).collect();
    g.relabel(hom.target().clone(), degrees)
}

/// How two gradings combine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    /// `(A ⊗ B)_{(g, h)} = A_g ⊗ B_h` over `G x H`.
    Tensor,
    /// A `G`-grading on `A x B` with both factors graded by the shared `G`.
    ProductSameGroup,
    /// A `G x H`-grading on `A x B`: `A_g` in degree `(g, 0)`, `B_h` in `(0, h)`.
    DirectProduct,
}

fn frame_or_identity(g: &Grading) -> Matrix {
    g.frame().cloned().unwrap_or_else(|| Matrix::identity(g.dim()))
}

/// Combines gradings on `A` and `B` into a grading on `algebra`, which must
/// be `A ⊗ B` (basis `i * dim B + j`) or `A x B` (A first) as built by the
/// constructions module.
pub fn combine(g1: &Grading, g2: &Grading, mode: CombineMode, algebra: Arc<Algebra>) -> Result<Grading> {
    let (n1, n2) = (g1.dim(), g2.dim());
    let framed = g1.frame().is_some() || g2.frame().is_some();
    let (gr1, gr2) = (g1.group(), g2.group());
    match mode {
        CombineMode::Tensor => {
            if algebra.dim() != n1 * n2 {
                return Err(Error::DimensionMismatch { expected: n1 * n2, got: algebra.dim() });
            }
            let group = gr1.product(gr2);
            let mut degrees = Vec::with_capacity(n1 * n2);
            let mut labels = Vec::with_capacity(n1 * n2);
            for i in 0..n1 {
                for j in 0..n2 {
                    degrees.push(gr1.pair(gr2, g1.degree(i), g2.degree(j)));
                    labels.push(format!("{}⊗{}", g1.labels()[i], g2.labels()[j]));
                }
            }
            if framed {
                let f = frame_or_identity(g1).kron(&frame_or_identity(g2));
                Grading::with_frame(algebra, f, labels, group, degrees)
            } else {
                Grading::new(algebra, None, group, degrees)
            }
        }
        CombineMode::ProductSameGroup | CombineMode::DirectProduct => {
            if algebra.dim() != n1 + n2 {
                return Err(Error::DimensionMismatch { expected: n1 + n2, got: algebra.dim() });
            }
            let (group, degrees): (AbelianGroup, Vec<GroupElement>) = if mode == CombineMode::ProductSameGroup {
                if gr1 != gr2 {
                    return Err(Error::GroupMismatch(format!("{gr1} and {gr2}")));
                }
                (gr1.clone(), g1.degrees().iter().chain(g2.degrees()).cloned().collect())
            } else {
                let (z1, z2) = (gr1.zero(), gr2.zero());
                let left = g1.degrees().iter().map(|d| gr1.pair(gr2, d, &z2));
                let right = g2.degrees().iter().map(|d| gr1.pair(gr2, &z1, d));
                (gr1.product(gr2), left.chain(right).collect())
            };
            let labels: Vec<String> = g1
                .labels()
                .iter()
                .map(|l| format!("({l},0)"))
                .chain(g2.labels().iter().map(|l| format!("(0,{l})")))
                .collect();
            if framed {
                let f = frame_or_identity(g1).block_diag(&frame_or_identity(g2));
                Grading::with_frame(algebra, f, labels, group, degrees)
            } else {
                Grading::new(algebra, None, group, degrees)
            }
        }
    }
}

/// Whether `AA ≠ 0` and no proper nonzero sum of the given minimal ideals is
/// a graded subspace.
pub fn graded_simple(g: &Grading, minimal_ideals: &[Subspace]) -> Result<bool> {
    if minimal_ideals.is_empty() {
        return Err(Error::InvalidArgument("empty list of minimal ideals".into()));
    }
    if minimal_ideals.len() > 16 {
        return Err(Error::InvalidArgument("too many minimal ideals to enumerate their sums".into()));
    }
    let a = g.algebra();
    let n = a.dim();
    if a.table().iter().all(|v| v.is_zero()) {
        return Ok(false);
    }
    let support = g.support();
    let k = minimal_ideals.len();
    for mask in 1u32..(1 << k) {
        let mut v = Subspace::zero(n);
        for (i, ideal) in minimal_ideals.iter().enumerate() {
            if mask & (1 << i) != 0 {
                v = v.sum(ideal);
            }
        }
        if v.dim() == 0 || v.dim() == n {
            continue;
        }
        let graded = v.basis().iter().all(|x| support.iter().all(|d| v.contains(&g.project(x, d))));
        if graded {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A candidate isomorphism `φ` between graded algebras, row `i` being
/// `φ(b_i)` in canonical coordinates, with the bijection of supports.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub map: Matrix,
    pub support_bijection: BTreeMap<GroupElement, GroupElement>,
}

/// Checks that the witness is an isomorphism of algebras (and of
/// involutions when both carry one) sending each `A_g` onto `B_{α(g)}`.
pub fn check_equivalence_witness(g1: &Grading, g2: &Grading, w: &EquivalenceWitness) -> Report {
    let (a, b) = (g1.algebra(), g2.algebra());
    let n = a.dim();
    let mut ck = Checker::new(format!("equivalence({}, {})", a.name(), b.name()));
    let shape = |what: &str| Counterexample { inputs: vec![], expected: what.to_string(), got: "mismatch".into() };
    if !ck.ensure(b.dim() == n && w.map.nrows() == n && w.map.ncols() == n, || shape("square map between equal dimensions")) {
        return ck.finish();
    }
    if !ck.ensure(w.map.inverse().is_ok(), || shape("invertible map")) {
        return ck.finish();
    }
    let s1: BTreeSet<GroupElement> = g1.support().into_iter().collect();
    let s2: BTreeSet<GroupElement> = g2.support().into_iter().collect();
    let keys: BTreeSet<GroupElement> = w.support_bijection.keys().cloned().collect();
    let vals: BTreeSet<GroupElement> = w.support_bijection.values().cloned().collect();
    let bijective = keys == s1 && vals == s2 && vals.len() == keys.len();
    if !ck.ensure(bijective, || Counterexample {
        inputs: vec![],
        expected: format!("bijection between supports of sizes {} and {}", s1.len(), s2.len()),
        got: format!("{} keys onto {} values", keys.len(), vals.len()),
    }) {
        return ck.finish();
    }
    let phi: Vec<SVec> = w.map.row_svecs();
    let apply = |x: &SVec| w.map.apply(x);
    for i in 0..n {
        for j in 0..n {
            let lhs = apply(a.product(i, j));
            let rhs = b.mul(&phi[i], &phi[j]);
            if !ck.expect(&lhs, &rhs, || vec![a.label(i).to_string(), a.label(j).to_string()]) {
                return ck.finish();
            }
        }
    }
    if let (Some(sa), Some(_)) = (a.involution(), b.involution()) {
        for i in 0..n {
            let lhs = apply(&sa[i]);
            let rhs = b.conj(&phi[i]).expect("involution present");
            if !ck.expect(&lhs, &rhs, || vec![format!("involution({})", a.label(i))]) {
                return ck.finish();
            }
        }
    }
    for (d, e) in &w.support_bijection {
        let src = g1.component(d);
        let dst = g2.component(e);
        let img = Subspace::span(n, src.basis().iter().map(&apply));
        if !ck.ensure(img == dst, || Counterexample {
            inputs: vec![d.to_string()],
            expected: format!("image equal to the component of degree {e} (dim {})", dst.dim()),
            got: format!("image of dim {} not equal", img.dim()),
        }) {
            return ck.finish();
        }
    }
    ck.finish()
}

/// Invariants that separate inequivalent gradings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingInvariants {
    pub support_size: usize,
    /// Component dimensions, largest first.
    pub component_dims: Vec<usize>,
    pub universal_free_rank: usize,
    pub universal_torsion: Vec<u64>,
}

impl fmt::Display for GradingInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = AbelianGroup::new(self.universal_free_rank, self.universal_torsion.clone()).map_err(|_| fmt::Error)?;
        write!(f, "support {}, dims {:?}, universal group {g}", self.support_size, self.component_dims)
    }
}

pub fn invariants(g: &Grading) -> Result<GradingInvariants> {
    let u = universal_group(g)?;
    let mut component_dims: Vec<usize> = g.components().values().map(|v| v.len()).collect();
    component_dims.sort_unstable_by(|a, b| b.cmp(a));
    Ok(GradingInvariants {
        support_size: component_dims.len(),
        component_dims,
        universal_free_rank: u.group.free_rank(),
        universal_torsion: u.group.invariant_factors(),
    })
}
