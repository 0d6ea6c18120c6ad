//! The Smirnov algebra `T(C) = H ⊕ S` of a Cayley algebra: its product on
//! the basis `s_a` of the skew part and `s_a × s_b` (`a ≤ b`) of `H`, the
//! realization inside `C ⊗ C`, the trace form, recovery of the Cayley
//! product, and the gradings induced from `C`.

use std::sync::Arc;

use crate::algebra::{split_involution, Algebra, Checker, Coordinates, Counterexample, Report, Subspace};
use crate::composition::norm_form;
use crate::constructions::tensor_with_involution;
use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar, SVec};
use crate::grading::{verify, Grading, GroupElement};

/// Dimension of the skew part.
const S: usize = 7;
/// Dimension of `T(C)`.
pub const SMIRNOV_DIM: usize = 35;

/// Index of `s_a × s_b` in `T(C)`; the skew basis occupies `0..7`.
pub fn sym_index(a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    S + a * (2 * S - a + 1) / 2 + (b - a)
}

/// The pairs `(a, b)`, `a ≤ b`, in index order.
pub fn sym_pairs() -> Vec<(usize, usize)> {
    (0..S).flat_map(|a| (a..S).map(move |b| (a, b))).collect()
}

fn half() -> Scalar {
    Scalar::frac(1, 2).expect("nonzero denominator")
}

/// Human-readable name of a vector, e.g. `e1-e2`.
fn vec_label(v: &SVec, labels: &[String]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter() {
        if c.is_one() {
            s.push('+');
        } else if *c == Scalar::from_int(-1) {
            s.push('-');
        } else {
            s.push_str(&format!("+({c})"));
        }
        s.push_str(&labels[*i]);
    }
    s.strip_prefix('+').map(str::to_string).unwrap_or(s)
}

/// `T(C)` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct Smirnov {
    algebra: Arc<Algebra>,
    cayley: Arc<Algebra>,
    skew: Vec<SVec>,
    coords: Coordinates,
    gram: Vec<Vec<Scalar>>,
}

/// `T(C)` realized in `C ⊗ C` and the isomorphism onto it.
#[derive(Clone, Debug)]
pub struct InTensor {
    pub tensor: Arc<Algebra>,
    pub subspace: Subspace,
    /// `ψ` of each basis vector of `T(C)`.
    pub psi: Vec<SVec>,
    pub report: Report,
}

/// `T(C)` with the product as published.
pub fn build_smirnov(c: &Algebra) -> Result<Smirnov> {
    build_smirnov_with_coefficient(c, &Scalar::frac(1, 4)?)
}

/// `T(C)` with `quarter` in place of the coefficient `1/4` of the
/// `(s1 × s2) ⊙ (s3 × s4)` formula. Any other value gives an algebra that is
/// not structurable; the unit and involution are then not validated.
pub fn build_smirnov_with_coefficient(c: &Algebra, quarter: &Scalar) -> Result<Smirnov> {
    if c.dim() != 8 {
        return Err(Error::InvalidArgument(format!("T(C) needs an 8-dimensional Cayley algebra, got dimension {}", c.dim())));
    }
    let q = norm_form(c)?;
    let (skew_space, _) = split_involution(c)?;
    let skew = skew_space.basis();
    if skew.len() != S {
        return Err(Error::InvalidAlgebra(format!("skew part has dimension {}, expected 7", skew.len())));
    }
    let coords = Coordinates::new(8, &skew).expect("echelon basis is independent");
    let gram: Vec<Vec<Scalar>> = skew.iter().map(|x| skew.iter().map(|y| q.polar(x, y)).collect()).collect();
    let mut br = vec![vec![SVec::new(); S]; S];
    for a in 0..S {
        for b in 0..S {
            br[a][b] = coords
                .coords(&c.commutator(&skew[a], &skew[b]))
                .ok_or_else(|| Error::InvalidAlgebra("commutator of skew elements is not skew".into()))?;
        }
    }
    let cross = |x: &SVec, y: &SVec| -> SVec {
        let mut t = Vec::with_capacity(x.nnz() * y.nnz());
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                t.push((sym_index(*a, *b), xa.mul_ref(yb)));
            }
        }
        SVec::from_terms(t)
    };
    let h = half();
    let e = SVec::basis;
    let n = |a: usize, b: usize| &gram[a][b];

    // s ⊙ (s_p × s_q) and [s, s_p × s_q] for s = s_a
    let dot_sh = |a: usize, p: usize, q: usize| -> SVec {
        SVec::from_terms(vec![
            (a, n(p, q).mul_ref(&Scalar::from_int(-1))),
            (q, n(a, p).mul_ref(&h).mul_ref(&Scalar::from_int(-1))),
            (p, n(a, q).mul_ref(&h).mul_ref(&Scalar::from_int(-1))),
        ])
    };
    let brk_sh = |a: usize, p: usize, q: usize| cross(&br[a][p], &e(q)).add(&cross(&e(p), &br[a][q]));

    let kinds: Vec<Option<(usize, usize)>> =
        (0..S).map(|_| None).chain(sym_pairs().into_iter().map(Some)).collect();
    let dim = SMIRNOV_DIM;
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = match (kinds[i], kinds[j]) {
                (None, None) => e(sym_index(i, j)).add(&br[i][j].scale(&h)),
                (None, Some((p, q))) => dot_sh(i, p, q).add(&brk_sh(i, p, q).scale(&h)),
                (Some((p, q)), None) => dot_sh(j, p, q).sub(&brk_sh(j, p, q).scale(&h)),
                (Some((p, q)), Some((r, t))) => {
                    let dot = cross(&br[p][r], &br[q][t])
                        .add(&cross(&br[p][t], &br[q][r]))
                        .scale(quarter)
                        .sub(&e(sym_index(r, t)).scale(n(p, q)))
                        .sub(&e(sym_index(p, q)).scale(n(r, t)));
                    let brk = br[q][t]
                        .scale(n(p, r))
                        .add(&br[q][r].scale(n(p, t)))
                        .add(&br[p][t].scale(n(q, r)))
                        .add(&br[p][r].scale(n(q, t)))
                        .scale(&h.mul_ref(&Scalar::from_int(-1)));
                    dot.add(&brk.scale(&h))
                }
            };
            table.push(v);
        }
    }
    let inv: Vec<SVec> =
        (0..dim).map(|i| if i < S { SVec::single(i, Scalar::from_int(-1)) } else { e(i) }).collect();
    // 1 = Σ -1/(16 α_i) x_i × x_i for an n-orthogonal basis; without
    // choosing one this is -1/8 Σ (N^{-1})_{ab} s_a × s_b
    let gram_rows: Vec<SVec> = gram.iter().map(|r| SVec::from_dense(r)).collect();
    let ninv = Matrix::from_rows(&gram_rows, S)?.inverse()?;
    let eighth = Scalar::frac(-1, 8)?;
    let mut unit = SVec::new();
    for a in 0..S {
        for b in 0..S {
            unit = unit.add(&e(sym_index(a, b)).scale(&ninv.get(a, b).mul_ref(&eighth)));
        }
    }
    let skew_labels: Vec<String> = skew.iter().map(|v| vec_label(v, c.labels())).collect();
    let labels: Vec<String> = skew_labels
        .iter()
        .cloned()
        .chain(sym_pairs().into_iter().map(|(a, b)| format!("{}×{}", skew_labels[a], skew_labels[b])))
        .collect();
    let name = format!("T({})", c.name());
    let algebra = if *quarter == Scalar::frac(1, 4)? {
        Algebra::new(name, labels, table, Some(inv), Some(unit))?
    } else {
        Algebra::new_unchecked(name, labels, table, Some(inv), Some(unit))?
    };
    Ok(Smirnov { algebra: Arc::new(algebra), cayley: Arc::new(c.clone()), skew, coords, gram })
}

impl Smirnov {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn cayley(&self) -> &Arc<Algebra> {
        &self.cayley
    }

    /// The basis `s_a` of the skew part, in coordinates of `C`.
    pub fn skew_basis(&self) -> &[SVec] {
        &self.skew
    }

    /// `n(x, y)` for `x, y` in the skew part of `T(C)` (indices below 7).
    pub fn norm(&self, x: &SVec, y: &SVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                acc += &xa.mul_ref(yb).mul_ref(&self.gram[*a][*b]);
            }
        }
        acc
    }

    /// A skew element of `C` as an element of `T(C)`.
    pub fn skew_vector(&self, s: &SVec) -> Result<SVec> {
        self.coords.coords(s).ok_or_else(|| Error::InvalidArgument(format!("{s:?} is not skew")))
    }

    /// `x × y` for `x, y` in the skew part of `T(C)`.
    pub fn cross(&self, x: &SVec, y: &SVec) -> SVec {
        let mut t = Vec::with_capacity(x.nnz() * y.nnz());
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                t.push((sym_index(*a, *b), xa.mul_ref(yb)));
            }
        }
        SVec::from_terms(t)
    }

    /// `Σ -1/(16 α_i) x_i × x_i` for an orthogonal basis `x_i` of the skew
    /// part of `C` with `n(x_i) = α_i`.
    pub fn unit_vector(&self, xs: &[SVec]) -> Result<SVec> {
        if xs.len() != S {
            return Err(Error::DimensionMismatch { expected: S, got: xs.len() });
        }
        let ts: Vec<SVec> = xs.iter().map(|x| self.skew_vector(x)).collect::<Result<_>>()?;
        let mut out = SVec::new();
        for (i, x) in ts.iter().enumerate() {
            for y in &ts[..i] {
                if !self.norm(x, y).is_zero() {
                    return Err(Error::InvalidArgument("basis is not orthogonal".into()));
                }
            }
            let alpha = self.norm(x, x).mul_ref(&half());
            if alpha.is_zero() {
                return Err(Error::InvalidArgument(format!("isotropic basis vector {:?}", xs[i])));
            }
            let c = Scalar::from_int(-16).mul_ref(&alpha).inv()?;
            out = out.add(&self.cross(x, x).scale(&c));
        }
        Ok(out)
    }

    /// An orthogonal anisotropic basis of the skew part of `C`, found by
    /// Gram-Schmidt on `s_1, ..., s_7` (replacing an isotropic pivot by the
    /// sum with a vector it pairs with).
    pub fn orthogonal_skew_basis(&self) -> Result<Vec<SVec>> {
        let mut rest: Vec<SVec> = (0..S).map(SVec::basis).collect();
        let mut out = Vec::with_capacity(S);
        while !rest.is_empty() {
            let v = match rest.iter().position(|v| !self.norm(v, v).is_zero()) {
                Some(k) => rest.remove(k),
                None => {
                    let (k, l) = (0..rest.len())
                        .flat_map(|k| (k + 1..rest.len()).map(move |l| (k, l)))
                        .find(|&(k, l)| !self.norm(&rest[k], &rest[l]).is_zero())
                        .ok_or_else(|| Error::InvalidAlgebra("norm is degenerate on the skew part".into()))?;
                    let v = rest[k].add(&rest[l]);
                    rest.remove(k);
                    v
                }
            };
            let nv = self.norm(&v, &v);
            rest = rest
                .into_iter()
                .map(|w| {
                    let c = self.norm(&w, &v).div_ref(&nv).expect("anisotropic pivot");
                    w.axpy(&c.mul_ref(&Scalar::from_int(-1)), &v)
                })
                .filter(|w| !w.is_zero())
                .collect();
            out.push(v);
        }
        Ok(out
            .iter()
            .map(|v| v.iter().fold(SVec::new(), |acc, (a, c)| acc.add(&self.skew[*a].scale(c))))
            .collect())
    }

    /// The linear trace `(s1 × s2) + s ↦ -8 n(s1, s2)`.
    pub fn trace(&self, v: &SVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in v.iter() {
            if *k >= S {
                let (a, b) = sym_pairs()[*k - S];
                acc += &c.mul_ref(&self.gram[a][b]).mul_ref(&Scalar::from_int(-8));
            }
        }
        acc
    }

    /// `tr(x, y) = tr(x ȳ)`.
    pub fn trace_form(&self, x: &SVec, y: &SVec) -> Scalar {
        let yb = self.algebra.conj(y).expect("T(C) has an involution");
        self.trace(&self.algebra.mul(x, &yb))
    }

    /// Gram matrix of the bilinear trace on the basis.
    pub fn trace_gram(&self) -> Matrix {
        let n = SMIRNOV_DIM;
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.trace_form(&SVec::basis(i), &SVec::basis(j)));
            }
        }
        m
    }

    /// Symmetry of the trace, `tr(x̄, ȳ) = tr(x, y)`, and
    /// `tr(xy, z) = tr(x, z ȳ)` on all basis pairs and triples.
    pub fn check_trace_invariance(&self) -> Report {
        let n = SMIRNOV_DIM;
        let a = &self.algebra;
        let gm = self.trace_gram();
        let form = |x: &SVec, y: &SVec| -> Scalar {
            let mut acc = Scalar::zero();
            for (i, c) in x.iter() {
                for (j, d) in y.iter() {
                    acc += &c.mul_ref(d).mul_ref(gm.get(*i, *j));
                }
            }
            acc
        };
        let lab = |i: usize| a.label(i).to_string();
        let sig = a.involution().expect("T(C) has an involution");
        let mut ck = Checker::new("trace_invariance");
        for i in 0..n {
            for j in 0..n {
                if !ck.expect(gm.get(i, j), gm.get(j, i), || vec![lab(i), lab(j), "symmetry".into()]) {
                    return ck.finish();
                }
                if !ck.expect(gm.get(i, j), &form(&sig[i], &sig[j]), || vec![lab(i), lab(j), "involution".into()]) {
                    return ck.finish();
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xy = a.product(i, j);
                for k in 0..n {
                    let lhs = form(xy, &SVec::basis(k));
                    let rhs = form(&SVec::basis(i), &a.mul(&SVec::basis(k), &sig[j]));
                    if !ck.expect(&lhs, &rhs, || vec![lab(i), lab(j), lab(k)]) {
                        return ck.finish();
                    }
                }
            }
        }
        ck.finish()
    }

    /// `tr(x, y) ≠ 0 ⇒ deg x + deg y = 0` on the homogeneous basis of `g`.
    pub fn check_trace_homogeneity(&self, g: &Grading) -> Report {
        let n = g.dim();
        let hs: Vec<SVec> = (0..n).map(|i| g.basis_vector(i)).collect();
        let group = g.group();
        let mut ck = Checker::new("trace_homogeneity");
        for i in 0..n {
            for j in 0..n {
                let t = self.trace_form(&hs[i], &hs[j]);
                let d = group.add(g.degree(i), g.degree(j));
                let ok = t.is_zero() || group.is_zero(&d);
                if !ck.ensure(ok, || Counterexample {
                    inputs: vec![g.labels()[i].clone(), g.labels()[j].clone()],
                    expected: "degrees summing to 0".into(),
                    got: format!("tr = {t}, degree sum {d}"),
                }) {
                    return ck.finish();
                }
            }
        }
        ck.finish()
    }

    /// The algebra on `F1 ⊕ S` with `s1 · s2 = π_1(s1 s2) + π_S(s1 s2)`,
    /// `π_1(h + s) = tr(h)/16 · 1`. The report compares it, rewritten on the
    /// basis of `C`, with the table of `C`.
    pub fn recover_cayley(&self) -> Result<(Algebra, Report)> {
        let t = &self.algebra;
        let n = S + 1;
        let sixteenth = Scalar::frac(1, 16)?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = match (i, j) {
                    (0, _) => SVec::basis(j),
                    (_, 0) => SVec::basis(i),
                    _ => {
                        let p = t.product(i - 1, j - 1);
                        let skew = SVec::from_terms(p.iter().filter(|(k, _)| *k < S).map(|(k, c)| (k + 1, c.clone())).collect());
                        skew.add(&SVec::single(0, self.trace(p).mul_ref(&sixteenth)))
                    }
                };
                table.push(v);
            }
        }
        let inv = (0..n).map(|i| if i == 0 { SVec::basis(0) } else { SVec::single(i, Scalar::from_int(-1)) }).collect();
        let labels: Vec<String> =
            std::iter::once("1".to_string()).chain(t.labels()[..S].iter().cloned()).collect();
        let recovered = Algebra::new_unchecked(format!("C from {}", t.name()), labels, table, Some(inv), Some(SVec::basis(0)))?;

        // recovered basis (1, s_a) in coordinates of C
        let c = &self.cayley;
        let mut rows = vec![c.require_unit()?.clone()];
        rows.extend(self.skew.iter().cloned());
        let p = Matrix::from_rows(&rows, n)?;
        let on_c = recovered.rebase(&p.inverse()?, c.name(), c.labels().to_vec())?;
        let mut ck = Checker::new("recover_cayley");
        'outer: for i in 0..n {
            for j in 0..n {
                let (want, got) = (c.product(i, j), on_c.product(i, j));
                if !ck.expect(&format!("{want:?}"), &format!("{got:?}"), || vec![c.label(i).into(), c.label(j).into()]) {
                    break 'outer;
                }
            }
        }
        if !ck.failed() {
            let same_inv = on_c.involution() == c.involution();
            ck.ensure(same_inv, || Counterexample {
                inputs: vec!["involution".into()],
                expected: "standard conjugation".into(),
                got: "different involution".into(),
            });
        }
        Ok((recovered, ck.finish()))
    }

    /// `T(C ⊗ C) = span{a ⊗ a - n(a) 1 ⊗ 1}` and `ψ: T(C) → T(C ⊗ C)`,
    /// `ψ(s) = s ⊗ 1 + 1 ⊗ s`, `ψ(s × t) = s ⊗ t + t ⊗ s - n(s, t) 1 ⊗ 1`.
    /// The report covers closure of the span and `ψ` being an isomorphism
    /// of algebras with involution on all basis pairs.
    pub fn in_tensor(&self) -> Result<InTensor> {
        let c = &self.cayley;
        let cc = Arc::new(tensor_with_involution(c, c)?);
        let q = norm_form(c)?;
        let nb = c.dim();
        let t = |x: &SVec, y: &SVec| -> SVec {
            let mut terms = Vec::with_capacity(x.nnz() * y.nnz());
            for (i, a) in x.iter() {
                for (j, b) in y.iter() {
                    terms.push((i * nb + j, a.mul_ref(b)));
                }
            }
            SVec::from_terms(terms)
        };
        let one = c.require_unit()?.clone();
        let oo = t(&one, &one);
        let sym = |x: &SVec, y: &SVec, nxy: &Scalar| t(x, y).add(&t(y, x)).sub(&oo.scale(nxy));

        let mut span = Subspace::zero(cc.dim());
        for i in 0..nb {
            for j in i..nb {
                let (x, y) = (SVec::basis(i), SVec::basis(j));
                span.insert(&sym(&x, &y, &q.polar(&x, &y)));
            }
        }
        let mut psi: Vec<SVec> = self.skew.iter().map(|s| t(s, &one).add(&t(&one, s))).collect();
        for (a, b) in sym_pairs() {
            psi.push(sym(&self.skew[a], &self.skew[b], &self.gram[a][b]));
        }
        let apply = |v: &SVec| v.iter().fold(SVec::new(), |acc, (k, x)| acc.add(&psi[*k].scale(x)));

        let mut ck = Checker::new("smirnov_in_tensor");
        let dim = span.dim();
        let mut run = || -> Option<()> {
            if !ck.expect(&SMIRNOV_DIM, &dim, || vec!["dim span{a⊗a - n(a)1⊗1}".into()]) {
                return None;
            }
            let independent = Coordinates::new(cc.dim(), &psi).is_some();
            if !ck.ensure(independent && psi.iter().all(|v| span.contains(v)), || Counterexample {
                inputs: vec!["ψ(basis)".into()],
                expected: "an independent family inside the span".into(),
                got: "dependent or outside".into(),
            }) {
                return None;
            }
            let basis = span.basis();
            for (i, x) in basis.iter().enumerate() {
                let ok = span.contains(&cc.conj(x).ok()?);
                if !ck.ensure(ok, || Counterexample {
                    inputs: vec![format!("basis {i}")],
                    expected: "σ(x) in the span".into(),
                    got: "outside".into(),
                }) {
                    return None;
                }
                for (j, y) in basis.iter().enumerate() {
                    let ok = span.contains(&cc.mul(x, y));
                    if !ck.ensure(ok, || Counterexample {
                        inputs: vec![format!("basis {i}"), format!("basis {j}")],
                        expected: "xy in the span".into(),
                        got: "outside".into(),
                    }) {
                        return None;
                    }
                }
            }
            let ta = &self.algebra;
            let sig = ta.involution()?;
            for i in 0..SMIRNOV_DIM {
                let lhs = apply(&sig[i]);
                let rhs = cc.conj(&psi[i]).ok()?;
                if !ck.expect(&format!("{rhs:?}"), &format!("{lhs:?}"), || vec![ta.label(i).into(), "involution".into()]) {
                    return None;
                }
                for j in 0..SMIRNOV_DIM {
                    let lhs = apply(ta.product(i, j));
                    let rhs = cc.mul(&psi[i], &psi[j]);
                    if !ck.expect(&format!("{rhs:?}"), &format!("{lhs:?}"), || vec![ta.label(i).into(), ta.label(j).into()]) {
                        return None;
                    }
                }
            }
            Some(())
        };
        run();
        Ok(InTensor { tensor: cc, subspace: span, psi, report: ck.finish() })
    }

    /// The grading with `deg 1 = 0`, `deg s = deg_C s` and
    /// `deg(s1 × s2) = deg_C s1 + deg_C s2` on a homogeneous basis of the
    /// skew part. Verified with the involution before returning.
    pub fn induce_grading(&self, gc: &Grading) -> Result<Grading> {
        if **gc.algebra() != *self.cayley {
            return Err(Error::InvalidGrading("grading is not on the Cayley algebra of T(C)".into()));
        }
        let r = verify(gc, true);
        if !r.passed {
            return Err(Error::InvalidGrading(format!(
                "grading on C is not an involution preserving grading: {:?}",
                r.counterexample.map(|c| c.inputs)
            )));
        }
        let c = &self.cayley;
        let mut picked: Vec<(SVec, GroupElement, String)> = Vec::new();
        let mut seen = Subspace::zero(S);
        for i in 0..gc.dim() {
            let h = gc.basis_vector(i);
            let skew = h.sub(&c.conj(&h)?).scale(&half());
            if skew.is_zero() {
                continue;
            }
            let t = self.skew_vector(&skew)?;
            if seen.insert(&t) {
                picked.push((t, gc.degree(i).clone(), gc.labels()[i].clone()));
            }
        }
        if picked.len() != S {
            return Err(Error::InvalidGrading("homogeneous basis does not span the skew part".into()));
        }
        let group = gc.group().clone();
        let mut rows = Vec::with_capacity(SMIRNOV_DIM);
        let mut degrees = Vec::with_capacity(SMIRNOV_DIM);
        let mut labels = Vec::with_capacity(SMIRNOV_DIM);
        for (t, d, l) in &picked {
            rows.push(t.clone());
            degrees.push(d.clone());
            labels.push(format!("[{l}]"));
        }
        for (a, b) in sym_pairs() {
            let (ta, da, la) = &picked[a];
            let (tb, db, lb) = &picked[b];
            rows.push(self.cross(ta, tb));
            degrees.push(group.add(da, db));
            labels.push(format!("[{la}]×[{lb}]"));
        }
        let frame = Matrix::from_rows(&rows, SMIRNOV_DIM)?;
        let g = Grading::with_frame(self.algebra.clone(), frame, labels, group, degrees)?;
        let r = verify(&g, true);
        if !r.passed {
            return Err(Error::InvalidGrading(format!("induced grading fails at {:?}", r.counterexample.map(|c| c.inputs))));
        }
        Ok(g)
    }
}
