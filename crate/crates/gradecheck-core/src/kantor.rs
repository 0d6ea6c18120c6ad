//! The Kantor construction: the 5-graded Lie algebra
//! `S⁻ ⊕ A⁻ ⊕ innstr(A) ⊕ A⁺ ⊕ S⁺` attached to a structurable algebra `A`,
//! a checker for the Lie axioms, and the `Z × G` gradings induced from
//! involution preserving gradings on `A`.
//!
//! Every element is modelled as a block operator on `A⁻ ⊕ A⁺`: degree zero
//! is `diag(P, Q)`, `s⁻` is `[[0, L_s], [0, 0]]`, `s⁺` is `[[0, 0], [L_s, 0]]`
//! and `A^±` are column vectors. Brackets are operator commutators and
//! actions, re-expressed on the fixed basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::probes::Acc;
use crate::algebra::{check_structurable, split_involution, Algebra, Checker, Coordinates, LinearMap, Report};
use crate::error::{Error, Result};
use crate::field::{Echelon, Exact, Matrix, Scalar, SVec};
use crate::grading::{verify, AbelianGroup, Grading, GroupElement};

/// `V_{x,y} z = (x ȳ) z + (z ȳ) x - (z x̄) y` as a map.
pub fn v_map(a: &Algebra, x: &SVec, y: &SVec) -> Result<LinearMap> {
    let xb = a.mul(x, &a.conj(y)?);
    let ybar = a.conj(y)?;
    let xbar = a.conj(x)?;
    let rows = (0..a.dim())
        .map(|k| {
            let z = SVec::basis(k);
            a.mul(&xb, &z).add(&a.mul(&a.mul(&z, &ybar), x)).sub(&a.mul(&a.mul(&z, &xbar), y))
        })
        .collect();
    Ok(LinearMap { rows })
}

/// The matrix of `z ↦ V_{x,y} z`, row `k` holding the image of `b_k`.
pub fn v_operator(a: &Algebra, x: &SVec, y: &SVec) -> Result<Matrix> {
    Matrix::from_rows(&v_map(a, x, y)?.rows, a.dim())
}

/// `K(x,y) z = V_{x,z} y - V_{y,z} x`.
pub fn k_operator(a: &Algebra, x: &SVec, y: &SVec) -> Result<Matrix> {
    let n = a.dim();
    let rows: Result<Vec<SVec>> = (0..n)
        .map(|k| {
            let z = SVec::basis(k);
            Ok(v_map(a, x, &z)?.apply(y).sub(&v_map(a, y, &z)?.apply(x)))
        })
        .collect();
    Matrix::from_rows(&rows?, n)
}

/// Left multiplication `z ↦ x z`.
pub fn left_multiplication(a: &Algebra, x: &SVec) -> Matrix {
    let rows: Vec<SVec> = (0..a.dim()).map(|k| a.mul(x, &SVec::basis(k))).collect();
    Matrix::from_rows(&rows, a.dim()).expect("rows in range")
}

/// `ψ(x, y) = x ȳ - y x̄`, a skew element.
pub fn psi(a: &Algebra, x: &SVec, y: &SVec) -> Result<SVec> {
    Ok(a.mul(x, &a.conj(y)?).sub(&a.mul(y, &a.conj(x)?)))
}

/// Checks `K(b_i, b_j) = L_{ψ(b_i, b_j)}` on every pair of basis vectors.
pub fn check_k_identity(a: &Algebra) -> Result<Report> {
    a.require_involution()?;
    let n = a.dim();
    let mut ck = Checker::new("K(x,y) = L_{ψ(x,y)}");
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (SVec::basis(i), SVec::basis(j));
            let k = k_operator(a, &x, &y)?;
            let l = left_multiplication(a, &psi(a, &x, &y)?);
            let ok = k == l;
            ck.ensure(ok, || crate::algebra::Counterexample {
                inputs: vec![a.label(i).to_string(), a.label(j).to_string()],
                expected: "L_{ψ(x,y)}".into(),
                got: "K(x,y) differs".into(),
            });
            if !ok {
                return Ok(ck.finish());
            }
        }
    }
    Ok(ck.finish())
}

/// Structure operators on the basis, with `b_i σ(b_j)` cached.
struct Ops<'a> {
    a: &'a Algebra,
    n: usize,
    xbar: Vec<SVec>,
}

impl<'a> Ops<'a> {
    fn new(a: &'a Algebra) -> Result<Self> {
        let sig = a.require_involution()?;
        let n = a.dim();
        let mut xbar = Vec::with_capacity(n * n);
        for i in 0..n {
            for s in sig.iter() {
                xbar.push(a.mul(&SVec::basis(i), s));
            }
        }
        Ok(Ops { a, n, xbar })
    }

    /// `v b_k` for a vector `v`.
    fn rmul(&self, v: &SVec, k: usize) -> SVec {
        let mut terms = Vec::new();
        for (l, c) in v.iter() {
            for (m, d) in self.a.product(*l, k).iter() {
                terms.push((*m, c.mul_ref(d)));
            }
        }
        SVec::from_terms(terms)
    }

    /// `V_{b_i, b_j} b_k`.
    fn d_row(&self, i: usize, j: usize, k: usize) -> SVec {
        let n = self.n;
        self.rmul(&self.xbar[i * n + j], k).add(&self.rmul(&self.xbar[k * n + j], i)).sub(&self.rmul(&self.xbar[k * n + i], j))
    }

    fn d_map(&self, i: usize, j: usize) -> LinearMap {
        LinearMap { rows: (0..self.n).map(|k| self.d_row(i, j, k)).collect() }
    }

    /// `ν(b_i, b_j) = (D_{b_i,b_j}, -D_{b_j,b_i})`.
    fn nu(&self, i: usize, j: usize) -> Pair {
        Pair { p: self.d_map(i, j), q: neg_map(&self.d_map(j, i)) }
    }

    fn psi(&self, i: usize, j: usize) -> SVec {
        let n = self.n;
        self.xbar[i * n + j].sub(&self.xbar[j * n + i])
    }
}

fn neg_map(m: &LinearMap) -> LinearMap {
    LinearMap { rows: m.rows.iter().map(SVec::neg).collect() }
}

fn sub_map(x: &LinearMap, y: &LinearMap) -> LinearMap {
    LinearMap { rows: x.rows.iter().zip(&y.rows).map(|(a, b)| a.sub(b)).collect() }
}

/// A degree zero element `diag(P, Q)` acting on `A⁻ ⊕ A⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub p: LinearMap,
    pub q: LinearMap,
}

impl Pair {
    fn flat(&self, n: usize) -> SVec {
        let mut t = self.p.flatten(n, 0);
        t.extend(self.q.flatten(n, n * n));
        SVec::from_terms(t)
    }

    /// `[self, other]` in `End(A) × End(A)`.
    pub fn commutator(&self, other: &Pair) -> Pair {
        Pair {
            p: sub_map(&self.p.after(&other.p), &other.p.after(&self.p)),
            q: sub_map(&self.q.after(&other.q), &other.q.after(&self.q)),
        }
    }
}

/// The inner structure algebra: the span of the pairs `ν(x, y)`, stored as
/// vectors of length `2 n²` (`P` entries first).
///
/// The basis is a set of independent generators `ν(b_i, b_j)`, so the
/// operators stay sparse. Coordinates go through a reduced echelon form of
/// the same span, whose rows remember how they combine the generators.
#[derive(Clone, Debug)]
pub struct Innstr {
    n: usize,
    generators: Vec<(usize, usize)>,
    ops: Vec<Pair>,
    echelon: Echelon<Exact>,
    /// Row `r` of the echelon form as a combination of the generators.
    transition: Vec<SVec>,
}

impl Innstr {
    pub fn dim(&self) -> usize {
        self.ops.len()
    }

    /// The basis pairs `(i, j)` with basis element `ν(b_i, b_j)`.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn basis(&self) -> &[Pair] {
        &self.ops
    }

    pub fn contains(&self, x: &Pair) -> bool {
        self.echelon.contains_svec(&x.flat(self.n))
    }

    /// Coordinates against `basis()`, read off the pivot columns. Only
    /// meaningful on the span; see `contains`.
    pub fn coords(&self, x: &Pair) -> SVec {
        self.coords_flat(&x.flat(self.n))
    }

    fn coords_flat(&self, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (r, c) in self.echelon.coords(v.entries()) {
            out = out.axpy(&c, &self.transition[r]);
        }
        out
    }

    /// Checks that every commutator of basis elements lies in the span.
    pub fn check_closed(&self) -> Report {
            let mut ck = Checker::new("innstr closed under commutator");
        for (r, x) in self.ops.iter().enumerate() {
            for (s, y) in self.ops.iter().enumerate().skip(r + 1) {
                let ok = self.contains(&x.commutator(y));
                ck.ensure(ok, || crate::algebra::Counterexample {
                    inputs: vec![format!("ν{:?}", self.generators[r]), format!("ν{:?}", self.generators[s])],
                    expected: "commutator in innstr".into(),
                    got: "outside innstr".into(),
                });
                if !ok {
                    return ck.finish();
                }
            }
        }
        ck.finish()
    }
}

/// Spans `ν(b_i, b_j)` over all pairs of basis vectors.
pub fn innstr(a: &Algebra) -> Result<Innstr> {
    let ops = Ops::new(a)?;
    Ok(build_innstr(&ops))
}

fn build_innstr(ops: &Ops) -> Innstr {
    let n = ops.n;
    let mut span = Echelon::exact(2 * n * n);
    let mut generators = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let nu = ops.nu(i, j);
            if span.insert_svec(&nu.flat(n)).is_some() {
                generators.push((i, j));
                basis.push(nu);
            }
        }
    }
    // Echelonize the chosen generators tagged with unit vectors, so each row
    // also records its combination of generators.
    let m = basis.len();
    let amb = 2 * n * n;
    let mut tagged = Echelon::exact(amb + m);
    for (k, x) in basis.iter().enumerate() {
        tagged.insert_svec(&x.flat(n).add(&SVec::basis(amb + k)));
    }
    let mut echelon = Echelon::exact(amb);
    let mut transition = Vec::with_capacity(m);
    for r in 0..tagged.rank() {
        let row = tagged.row_svec(r);
        let head = SVec::from_terms(row.iter().filter(|(c, _)| *c < amb).cloned().collect());
        let tail = SVec::from_terms(row.iter().filter(|(c, _)| *c >= amb).map(|(c, x)| (c - amb, x.clone())).collect());
        echelon.insert_svec(&head);
        transition.push(tail);
    }
    debug_assert_eq!(echelon.rank(), m);
    Innstr { n, generators, ops: basis, echelon, transition }
}

/// Which summand of the 5-grading a basis index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    SMinus(usize),
    AMinus(usize),
    Zero(usize),
    APlus(usize),
    SPlus(usize),
}

/// Offsets and sizes of the five summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub s: usize,
    pub a: usize,
    pub zero: usize,
}

impl Layout {
    pub fn dim(&self) -> usize {
        2 * self.s + 2 * self.a + self.zero
    }

    /// Dimensions of the components with labels -2, -1, 0, 1, 2.
    pub fn component_dims(&self) -> [usize; 5] {
        [self.s, self.a, self.zero, self.a, self.s]
    }

    pub fn s_minus(&self, k: usize) -> usize {
        k
    }

    pub fn a_minus(&self, i: usize) -> usize {
        self.s + i
    }

    pub fn zero(&self, r: usize) -> usize {
        self.s + self.a + r
    }

    pub fn a_plus(&self, i: usize) -> usize {
        self.s + self.a + self.zero + i
    }

    pub fn s_plus(&self, k: usize) -> usize {
        self.s + 2 * self.a + self.zero + k
    }

    fn part(&self, x: usize) -> Part {
        let (s, a, z) = (self.s, self.a, self.zero);
        if x < s {
            Part::SMinus(x)
        } else if x < s + a {
            Part::AMinus(x - s)
        } else if x < s + a + z {
            Part::Zero(x - s - a)
        } else if x < s + 2 * a + z {
            Part::APlus(x - s - a - z)
        } else {
            Part::SPlus(x - s - 2 * a - z)
        }
    }

    fn label(&self, x: usize) -> i64 {
        match self.part(x) {
            Part::SMinus(_) => -2,
            Part::AMinus(_) => -1,
            Part::Zero(_) => 0,
            Part::APlus(_) => 1,
            Part::SPlus(_) => 2,
        }
    }
}

/// A Lie algebra given by bracket constants, with the labels of its main
/// 5-grading. The bracket is stored as the product of an `Algebra`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    algebra: Arc<Algebra>,
    zlabels: Vec<i64>,
    layout: Layout,
    source: Arc<Algebra>,
    skew: Vec<SVec>,
    skew_coords: Coordinates,
    /// `[b_i⁻, b_j⁺]` in degree zero coordinates, at `i * n + j`.
    nu_coords: Vec<SVec>,
    innstr: Innstr,
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The bracket as an algebra product.
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn bracket(&self, x: &SVec, y: &SVec) -> SVec {
        self.algebra.mul(x, y)
    }

    pub fn zlabels(&self) -> &[i64] {
        &self.zlabels
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// The structurable algebra this was built from.
    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    /// The basis of `S` used for both copies `S⁻`, `S⁺`.
    pub fn skew_basis(&self) -> &[SVec] {
        &self.skew
    }

    pub fn innstr(&self) -> &Innstr {
        &self.innstr
    }

    /// The main 5-grading as a `Z`-grading.
    pub fn z_grading(&self) -> Result<Grading> {
        let degrees = self.zlabels.iter().map(|&z| GroupElement::new(vec![z])).collect();
        Grading::new(self.algebra.clone(), None, AbelianGroup::free(1), degrees)
    }

    /// Coordinates of `x ∈ S` on `skew_basis()`. Outside `S` the skew part
    /// `(x - x̄) / 2` is used, which only happens for non-structurable input.
    fn s_coords(&self, x: &SVec) -> SVec {
        skew_coords(&self.source, &self.skew_coords, x)
    }

    /// The copy of `x ∈ A` in `A⁻` (`plus = false`) or `A⁺`.
    pub fn embed_a(&self, x: &SVec, plus: bool) -> SVec {
        let l = self.layout;
        x.reindex(|i| if plus { l.a_plus(i) } else { l.a_minus(i) })
    }

    /// The copy of a skew `x` in `S⁻` or `S⁺`.
    pub fn embed_s(&self, x: &SVec, plus: bool) -> SVec {
        let l = self.layout;
        self.s_coords(x).reindex(|k| if plus { l.s_plus(k) } else { l.s_minus(k) })
    }

    /// `ν(x, y)` = `[x⁻, y⁺]` in degree zero.
    pub fn nu(&self, x: &SVec, y: &SVec) -> SVec {
        let n = self.source.dim();
        let mut out = SVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out = out.axpy(&a.mul_ref(b), &self.nu_coords[i * n + j]);
            }
        }
        let l = self.layout;
        out.reindex(|r| l.zero(r))
    }
}

fn skew_coords(a: &Algebra, coords: &Coordinates, x: &SVec) -> SVec {
    if let Some(c) = coords.coords(x) {
        return c;
    }
    let half = Scalar::frac(1, 2).expect("nonzero");
    let s = x.sub(&a.conj(x).expect("involution present")).scale(&half);
    coords.coords(&s).expect("skew part lies in S")
}

/// The Kantor Lie algebra of `a`. Refuses input that is not structurable.
pub fn kantor(a: &Algebra) -> Result<LieAlgebra> {
    let r = check_structurable(a)?;
    if !r.passed {
        return Err(Error::NotStructurable(format!(
            "{}: {}",
            a.name(),
            r.counterexample.map(|c| c.to_string()).unwrap_or_default()
        )));
    }
    kantor_unchecked(a)
}

/// The same bracket formulas without the structurability check; the result
/// need not be a Lie algebra. Used for fault injection.
pub fn kantor_unchecked(a: &Algebra) -> Result<LieAlgebra> {
    let ops = Ops::new(a)?;
    let n = a.dim();
    let unit = a.require_unit()?.clone();
    let (skew_space, _) = split_involution(a)?;
    let skew = skew_space.basis();
    let scoords = Coordinates::new(n, &skew).expect("echelon basis is independent");
    let inn = build_innstr(&ops);
    let layout = Layout { s: skew.len(), a: n, zero: inn.dim() };
    let dim = layout.dim();
    let sc = |x: &SVec| skew_coords(a, &scoords, x);

    // Degree zero coordinates of ν(b_i, b_j).
    let nu_coords: Vec<SVec> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| inn.coords(&ops.nu(i, j))).collect();
    let lefts: Vec<LinearMap> = skew.iter().map(|t| LinearMap { rows: (0..n).map(|k| a.mul(t, &SVec::basis(k))).collect() }).collect();
    let unit_images: Vec<(SVec, SVec)> = inn.ops.iter().map(|f| (f.p.apply(&unit), f.q.apply(&unit))).collect();

    let l = layout;
    let at_zero = |v: SVec| v.reindex(|r| l.zero(r));
    let at_am = |v: SVec| v.reindex(|i| l.a_minus(i));
    let at_ap = |v: SVec| v.reindex(|i| l.a_plus(i));
    let at_sm = |v: SVec| v.reindex(|k| l.s_minus(k));
    let at_sp = |v: SVec| v.reindex(|k| l.s_plus(k));

    // [x, y] for x in degree zero, y anywhere: the operator acting.
    let act = |r: usize, y: Part| -> SVec {
        let f = &inn.ops[r];
        match y {
            Part::AMinus(i) => at_am(f.p.rows[i].clone()),
            Part::APlus(i) => at_ap(f.q.rows[i].clone()),
            // diag(P,Q) [[0,L_t],[0,0]] - [[0,L_t],[0,0]] diag(P,Q) = [[0, P L_t - L_t Q],[0,0]],
            // which is L of its value at 1.
            Part::SMinus(k) => at_sm(sc(&f.p.apply(&skew[k]).sub(&a.mul(&skew[k], &unit_images[r].1)))),
            Part::SPlus(k) => at_sp(sc(&f.q.apply(&skew[k]).sub(&a.mul(&skew[k], &unit_images[r].0)))),
            Part::Zero(s) => at_zero(inn.coords(&f.commutator(&inn.ops[s]))),
        }
    };

    let mut table = Vec::with_capacity(dim * dim);
    for x in 0..dim {
        for y in 0..dim {
            let v = match (l.part(x), l.part(y)) {
                (Part::SMinus(_), Part::SMinus(_) | Part::AMinus(_)) => SVec::new(),
                (Part::SPlus(_), Part::SPlus(_) | Part::APlus(_)) => SVec::new(),
                (Part::AMinus(_), Part::SMinus(_)) | (Part::APlus(_), Part::SPlus(_)) => SVec::new(),
                (Part::Zero(r), py) => act(r, py),
                (px, Part::Zero(s)) => act(s, px).neg(),
                // [[0,L_t],[0,0]] (0; b_j) = (t b_j; 0)
                (Part::SMinus(k), Part::APlus(j)) => at_am(a.mul(&skew[k], &SVec::basis(j))),
                (Part::APlus(j), Part::SMinus(k)) => at_am(a.mul(&skew[k], &SVec::basis(j))).neg(),
                (Part::SPlus(k), Part::AMinus(j)) => at_ap(a.mul(&skew[k], &SVec::basis(j))),
                (Part::AMinus(j), Part::SPlus(k)) => at_ap(a.mul(&skew[k], &SVec::basis(j))).neg(),
                // [[0,L_t],[0,0]] [[0,0],[L_u,0]] - [[0,0],[L_u,0]] [[0,L_t],[0,0]] = diag(L_t L_u, -L_u L_t)
                (Part::SMinus(k), Part::SPlus(m)) => {
                    let d = Pair { p: lefts[k].after(&lefts[m]), q: neg_map(&lefts[m].after(&lefts[k])) };
                    at_zero(inn.coords(&d))
                }
                (Part::SPlus(m), Part::SMinus(k)) => {
                    let d = Pair { p: neg_map(&lefts[k].after(&lefts[m])), q: lefts[m].after(&lefts[k]) };
                    at_zero(inn.coords(&d))
                }
                // the bracket of (x⁻, x⁺) and (y⁻, y⁺), split by components
                (Part::AMinus(i), Part::AMinus(j)) => at_sm(sc(&ops.psi(i, j))),
                (Part::APlus(i), Part::APlus(j)) => at_sp(sc(&ops.psi(i, j))),
                (Part::AMinus(i), Part::APlus(j)) => at_zero(nu_coords[i * n + j].clone()),
                (Part::APlus(i), Part::AMinus(j)) => {
                    // (-D(b_j, b_i), D(b_i, b_j))
                    let d = Pair { p: neg_map(&ops.d_map(j, i)), q: ops.d_map(i, j) };
                    at_zero(inn.coords(&d))
                }
            };
            table.push(v);
        }
    }

    let mut labels = Vec::with_capacity(dim);
    let slabel = |k: usize| match skew[k].entries() {
        [(i, _)] => a.label(*i).to_string(),
        _ => format!("t{k}"),
    };
    labels.extend((0..l.s).map(|k| format!("{}⁻", slabel(k))));
    labels.extend((0..n).map(|i| format!("{}⁻", a.label(i))));
    labels.extend(inn.generators.iter().map(|&(i, j)| format!("ν({},{})", a.label(i), a.label(j))));
    labels.extend((0..n).map(|i| format!("{}⁺", a.label(i))));
    labels.extend((0..l.s).map(|k| format!("{}⁺", slabel(k))));
    let bracket = Algebra::new_unchecked(format!("kan({})", a.name()), labels, table, None, None)?;
    Ok(LieAlgebra {
        algebra: Arc::new(bracket),
        zlabels: (0..dim).map(|x| l.label(x)).collect(),
        layout,
        source: Arc::new(a.clone()),
        skew,
        skew_coords: scoords,
        nu_coords,
        innstr: inn,
    })
}

/// The Killing form `κ(x, y) = tr(ad x ad y)` on the basis.
pub fn killing_form(br: &Algebra) -> Matrix {
    let d = br.dim();
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            // tr(ad b_i ad b_j) = Σ_k coefficient of b_k in [b_i, [b_j, b_k]]
            let mut t = Scalar::zero();
            for k in 0..d {
                for (l, c) in br.product(j, k).iter() {
                    let e = br.product(i, *l).get(k);
                    if !e.is_zero() {
                        t += &c.mul_ref(&e);
                    }
                }
            }
            m.set(i, j, t.clone());
            m.set(j, i, t);
        }
    }
    m
}

/// How much of the Jacobi identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieCheck {
    /// Every triple of distinct basis indices `i < j < k`.
    Full,
    /// `n` triples drawn from ChaCha8 seeded with `seed`.
    Sampled { seed: u64, n: usize },
}

/// Checks antisymmetry on all pairs of basis vectors and the Jacobi
/// identity on basis triples.
///
/// Once the bracket is antisymmetric the Jacobiator is alternating, so the
/// full sweep only visits `i < j < k`.
pub fn check_lie(l: &LieAlgebra, mode: LieCheck) -> Report {
    check_lie_bracket(l.algebra(), mode)
}

/// `check_lie` for any bracket stored as an algebra product.
pub fn check_lie_bracket(br: &Algebra, mode: LieCheck) -> Report {
    let d = br.dim();
    let mut ck = Checker::new("Lie algebra");
    for i in 0..d {
        for j in i..d {
            let ok = br.product(i, j).add(br.product(j, i)).is_zero();
            ck.ensure(ok, || crate::algebra::Counterexample {
                inputs: vec![br.label(i).to_string(), br.label(j).to_string()],
                expected: "[x,y] + [y,x] = 0".into(),
                got: br.product(i, j).add(br.product(j, i)).to_string(),
            });
            if !ok {
                return ck.finish();
            }
        }
    }
    let mut acc = Acc::new(d);
    let mut jacobi = |ck: &mut Checker, i: usize, j: usize, k: usize| -> bool {
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (w, c) in br.product(x, y).iter() {
                acc.add(br.product(*w, z), c);
            }
        }
        let ok = acc.check_zero();
        ck.ensure(ok, || {
            let (x, y, z) = (SVec::basis(i), SVec::basis(j), SVec::basis(k));
            let jac = br.mul(&br.mul(&x, &y), &z).add(&br.mul(&br.mul(&y, &z), &x)).add(&br.mul(&br.mul(&z, &x), &y));
            crate::algebra::Counterexample {
                inputs: vec![br.label(i).to_string(), br.label(j).to_string(), br.label(k).to_string()],
                expected: "0".into(),
                got: jac.to_string(),
            }
        })
    };
    match mode {
        LieCheck::Full => {
            for i in 0..d {
                for j in i + 1..d {
                    for k in j + 1..d {
                        if !jacobi(&mut ck, i, j, k) {
                            return ck.finish();
                        }
                    }
                }
            }
        }
        LieCheck::Sampled { seed, n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..n {
                let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                if !jacobi(&mut ck, i, j, k) {
                    return ck.finish();
                }
            }
        }
    }
    ck.finish()
}

/// The `Z × G` grading on `kan(A)` induced by an involution preserving
/// grading on `A`: `deg s^± = (±2, deg s)`, `deg a^± = (±1, deg a)`, and
/// degree zero spanned degree-wise by `ν(x, y)` on homogeneous `x`, `y`.
pub fn extend_grading(l: &LieAlgebra, g: &Grading) -> Result<Grading> {
    if g.algebra().as_ref() != l.source().as_ref() {
        return Err(Error::InvalidGrading(format!(
            "grading is on {}, the Lie algebra was built from {}",
            g.algebra().name(),
            l.source().name()
        )));
    }
    let r = verify(g, true);
    if !r.passed {
        return Err(Error::InvalidGrading(format!(
            "not an involution preserving grading: {}",
            r.counterexample.map(|c| c.to_string()).unwrap_or_default()
        )));
    }
    let a = l.source();
    let n = a.dim();
    let lay = l.layout();
    let group = AbelianGroup::free(1).product(g.group());
    let lift = |z: i64, h: &GroupElement| {
        let mut c = vec![z];
        c.extend_from_slice(h.coords());
        GroupElement::new(c)
    };
    let xs: Vec<SVec> = (0..n).map(|i| g.basis_vector(i)).collect();

    // S: skew parts of homogeneous vectors, echelonized per degree.
    let half = Scalar::frac(1, 2)?;
    let mut s_parts: BTreeMap<GroupElement, Echelon<Exact>> = BTreeMap::new();
    for (i, x) in xs.iter().enumerate() {
        let s = x.sub(&a.conj(x)?).scale(&half);
        let cs = l.s_coords(&s);
        if !cs.is_zero() {
            s_parts.entry(g.degree(i).clone()).or_insert_with(|| Echelon::exact(lay.s)).insert_svec(&cs);
        }
    }
    // Degree zero: ν(x_i, x_j) has degree deg x_i + deg x_j.
    let mut zero_parts: BTreeMap<GroupElement, Echelon<Exact>> = BTreeMap::new();
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            let v = l.nu(x, y).reindex(|c| c - lay.zero(0));
            if !v.is_zero() {
                let h = g.group().add(g.degree(i), g.degree(j));
                zero_parts.entry(h).or_insert_with(|| Echelon::exact(lay.zero)).insert_svec(&v);
            }
        }
    }
    let s_total: usize = s_parts.values().map(Echelon::rank).sum();
    let z_total: usize = zero_parts.values().map(Echelon::rank).sum();
    if s_total != lay.s || z_total != lay.zero {
        return Err(Error::InvalidGrading(format!(
            "homogeneous pieces have dimensions {s_total} and {z_total}, expected {} and {}",
            lay.s, lay.zero
        )));
    }

    let mut frame = Vec::with_capacity(lay.dim());
    let mut degrees = Vec::with_capacity(lay.dim());
    let mut labels = Vec::with_capacity(lay.dim());
    let push_s = |frame: &mut Vec<SVec>, degrees: &mut Vec<GroupElement>, labels: &mut Vec<String>, z: i64| {
        for (h, e) in &s_parts {
            for v in e.basis_svecs() {
                frame.push(v.reindex(|k| if z < 0 { lay.s_minus(k) } else { lay.s_plus(k) }));
                labels.push(format!("s{}#{}", if z < 0 { "⁻" } else { "⁺" }, frame.len() - 1));
                degrees.push(lift(z, h));
            }
        }
    };
    push_s(&mut frame, &mut degrees, &mut labels, -2);
    for (i, x) in xs.iter().enumerate() {
        frame.push(l.embed_a(x, false));
        labels.push(format!("{}⁻", g.labels()[i]));
        degrees.push(lift(-1, g.degree(i)));
    }
    for (h, e) in &zero_parts {
        for v in e.basis_svecs() {
            frame.push(v.reindex(|r| lay.zero(r)));
            labels.push(format!("f#{}", frame.len() - 1));
            degrees.push(lift(0, h));
        }
    }
    for (i, x) in xs.iter().enumerate() {
        frame.push(l.embed_a(x, true));
        labels.push(format!("{}⁺", g.labels()[i]));
        degrees.push(lift(1, g.degree(i)));
    }
    push_s(&mut frame, &mut degrees, &mut labels, 2);

    let frame = Matrix::from_rows(&frame, lay.dim())?;
    let out = Grading::with_frame(l.algebra().clone(), frame, labels, group, degrees)?;
    let r = verify(&out, false);
    if !r.passed {
        return Err(Error::InvalidGrading(format!(
            "induced grading fails: {}",
            r.counterexample.map(|c| c.to_string()).unwrap_or_default()
        )));
    }
    Ok(out)
}
