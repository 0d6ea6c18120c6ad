//! Split Hurwitz algebras on the good basis, their norms, Cayley-Dickson
//! doubling, and the standard gradings.

use std::sync::Arc;

use crate::algebra::{Algebra, Checker, Counterexample, Report};
use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar, SVec};
use crate::grading::{AbelianGroup, GroupElement, Grading};

/// A quadratic form given by the Gram matrix of its polar form
/// `n(x, y) = n(x + y) - n(x) - n(y)`, so `n(x) = n(x, x) / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Matrix,
    rows: Vec<SVec>,
}

impl QuadraticForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if gram.nrows() != gram.ncols() || gram != gram.transpose() {
            return Err(Error::InvalidArgument("Gram matrix must be square and symmetric".into()));
        }
        let rows = gram.row_svecs();
        Ok(QuadraticForm { gram, rows })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// `n(x, y)`.
    pub fn polar(&self, x: &SVec, y: &SVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in x.iter() {
            let d = self.rows[*i].dot(y);
            if !d.is_zero() {
                acc += &a.mul_ref(&d);
            }
        }
        acc
    }

    /// `n(x)`.
    pub fn eval(&self, x: &SVec) -> Scalar {
        let half = Scalar::frac(1, 2).expect("nonzero denominator");
        self.polar(x, x).mul_ref(&half)
    }
}

/// The norm of a unital algebra with involution, read off `x σ(x) = n(x) 1`
/// on the basis and polarized: `n(b_i, b_j) 1 = b_i σ(b_j) + b_j σ(b_i)`.
pub fn norm_form(a: &Algebra) -> Result<QuadraticForm> {
    let one = a.require_unit()?;
    let n = a.dim();
    let sig: Vec<SVec> = (0..n).map(|i| a.conj(&SVec::basis(i))).collect::<Result<_>>()?;
    let (p, lead) = one.entries().first().cloned().ok_or_else(|| Error::InvalidAlgebra("zero unit".into()))?;
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = a.mul(&SVec::basis(i), &sig[j]).add(&a.mul(&SVec::basis(j), &sig[i]));
            let c = v.get(p).div_ref(&lead)?;
            if v != one.scale(&c) {
                return Err(Error::InvalidAlgebra(format!(
                    "{}: {} times the conjugate of {} is not a scalar",
                    a.name(),
                    a.label(i),
                    a.label(j)
                )));
            }
            gram.set(i, j, c.clone());
            gram.set(j, i, c);
        }
    }
    QuadraticForm::new(gram)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The good-basis table of the split Cayley algebra, as `(i, j, k, sign)`.
/// Order: e1, e2, u1, u2, u3, v1, v2, v3.
const CAYLEY_TABLE: &[(usize, usize, usize, i64)] = &[
    (0, 0, 0, 1),
    (0, 2, 2, 1),
    (0, 3, 3, 1),
    (0, 4, 4, 1),
    (1, 1, 1, 1),
    (1, 5, 5, 1),
    (1, 6, 6, 1),
    (1, 7, 7, 1),
    (2, 1, 2, 1),
    (2, 3, 7, 1),
    (2, 4, 6, -1),
    (2, 5, 0, -1),
    (3, 1, 3, 1),
    (3, 2, 7, -1),
    (3, 4, 5, 1),
    (3, 6, 0, -1),
    (4, 1, 4, 1),
    (4, 2, 6, 1),
    (4, 3, 5, -1),
    (4, 7, 0, -1),
    (5, 0, 5, 1),
    (5, 2, 1, -1),
    (5, 6, 4, 1),
    (5, 7, 3, -1),
    (6, 0, 6, 1),
    (6, 3, 1, -1),
    (6, 5, 4, -1),
    (6, 7, 2, 1),
    (7, 0, 7, 1),
    (7, 4, 1, -1),
    (7, 5, 3, 1),
    (7, 6, 2, -1),
];

/// The split Hurwitz algebra of dimension 1, 2, 4 or 8 on its good basis
/// (F1; e1, e2; e1, e2, u1, v1; the full Cayley basis), with the standard
/// conjugation and its norm.
pub fn split_hurwitz(dim: usize) -> Result<(Algebra, QuadraticForm)> {
    // positions of the chosen basis inside the Cayley good basis
    let keep: &[usize] = match dim {
        1 => {
            let one = Scalar::one();
            let a = Algebra::from_constants(
                "F",
                labels(&["1"]),
                &[(0, 0, 0, one)],
                Some(vec![SVec::basis(0)]),
                Some(SVec::basis(0)),
            )?;
            let q = norm_form(&a)?;
            return Ok((a, q));
        }
        2 => &[0, 1],
        4 => &[0, 1, 2, 5],
        8 => &[0, 1, 2, 3, 4, 5, 6, 7],
        _ => return Err(Error::InvalidArgument(format!("no split Hurwitz algebra of dimension {dim}"))),
    };
    let all = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"];
    let pos = |c: usize| keep.iter().position(|&k| k == c);
    let constants: Vec<(usize, usize, usize, Scalar)> = CAYLEY_TABLE
        .iter()
        .filter_map(|&(i, j, k, s)| Some((pos(i)?, pos(j)?, pos(k)?, Scalar::from_int(s))))
        .collect();
    // standard conjugation: e1 <-> e2, u_i -> -u_i, v_i -> -v_i
    let inv: Vec<SVec> = keep
        .iter()
        .map(|&c| match c {
            0 => SVec::basis(pos(1).unwrap()),
            1 => SVec::basis(pos(0).unwrap()),
            _ => SVec::single(pos(c).unwrap(), Scalar::from_int(-1)),
        })
        .collect();
    let unit = SVec::from_terms(vec![(0, Scalar::one()), (1, Scalar::one())]);
    let name = match dim {
        2 => "K",
        4 => "H",
        _ => "C",
    };
    let names: Vec<&str> = keep.iter().map(|&c| all[c]).collect();
    let a = Algebra::from_constants(name, labels(&names), &constants, Some(inv), Some(unit))?;
    let q = norm_form(&a)?;
    Ok((a, q))
}

/// `CD(A, alpha)` on the basis `(b_i, 0), (0, b_i)` with
/// `(a, b)(c, d) = (ac + alpha d̄ b, da + b c̄)` and `(a, b)‾ = (ā, -b)`.
pub fn cayley_dickson_double(a: &Algebra, alpha: &Scalar) -> Result<(Algebra, QuadraticForm)> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("Cayley-Dickson parameter must be nonzero".into()));
    }
    let n = a.dim();
    if n >= 8 {
        return Err(Error::InvalidArgument(format!("cannot double the {n}-dimensional algebra {}", a.name())));
    }
    let sig = a.require_involution()?.to_vec();
    let one = a.require_unit()?.clone();
    let shift = |v: &SVec| v.reindex(|i| i + n);
    let mut table = vec![SVec::new(); 4 * n * n];
    let m = 2 * n;
    for i in 0..n {
        let bi = SVec::basis(i);
        for j in 0..n {
            table[i * m + j] = a.product(i, j).clone();
            table[i * m + (n + j)] = shift(a.product(j, i));
            table[(n + i) * m + j] = shift(&a.mul(&bi, &sig[j]));
            table[(n + i) * m + (n + j)] = a.mul(&sig[j], &bi).scale(alpha);
        }
    }
    let mut inv = sig.clone();
    inv.extend((0..n).map(|i| SVec::single(n + i, Scalar::from_int(-1))));
    let mut names: Vec<String> = a.labels().to_vec();
    names.extend(a.labels().iter().map(|l| if l == "1" { "w".to_string() } else { format!("({l})w") }));
    let name = format!("CD({}, {alpha})", a.name());
    let d = Algebra::new(name, names, table, Some(inv), Some(one))?;
    let q = norm_form(&d)?;
    Ok((d, q))
}

/// Checks `n(b_i b_j) = n(b_i) n(b_j)` on pairs and the fully polarized
/// composition law `n(xy, zw) + n(xw, zy) = n(x, z) n(y, w)` on quadruples,
/// which together with nondegeneracy is the whole definition.
pub fn check_composition(a: &Algebra, q: &QuadraticForm) -> Report {
    let n = a.dim();
    let mut ck = Checker::new(format!("composition({})", a.name()));
    let b: Vec<SVec> = (0..n).map(SVec::basis).collect();
    let label = |i: usize| a.label(i).to_string();
    if !ck.ensure(q.dim() == n && q.is_nondegenerate(), || Counterexample {
        inputs: vec![],
        expected: "nondegenerate form".into(),
        got: "degenerate form".into(),
    }) {
        return ck.finish();
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = q.eval(a.product(i, j));
            let rhs = q.eval(&b[i]).mul_ref(&q.eval(&b[j]));
            if !ck.expect(&rhs, &lhs, || vec![label(i), label(j)]) {
                return ck.finish();
            }
        }
    }
    for x in 0..n {
        for z in 0..n {
            let nxz = q.polar(&b[x], &b[z]);
            for y in 0..n {
                for w in 0..n {
                    let lhs = q.polar(a.product(x, y), a.product(z, w)).add_ref(&q.polar(a.product(x, w), a.product(z, y)));
                    let rhs = nxz.mul_ref(&q.polar(&b[y], &b[w]));
                    if !ck.expect(&rhs, &lhs, || vec![label(x), label(y), label(z), label(w)]) {
                        return ck.finish();
                    }
                }
            }
        }
    }
    ck.finish()
}

/// Which of the two standard gradings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Cartan,
    CayleyDickson,
}

/// The Cartan or Cayley-Dickson grading on the split Hurwitz algebra of
/// dimension 2, 4 or 8, over its universal group.
///
/// Cartan gradings live on the good basis. Cayley-Dickson gradings use the
/// frame `u = e1 - e2`, `v = u1 + v1`, `w = u2 + v2` with homogeneous basis
/// `1, u, v, w, uv, uw, vw, (uv)w` (truncated in lower dimension).
pub fn standard_grading(algebra: Arc<Algebra>, kind: StandardKind) -> Result<Grading> {
    let dim = algebra.dim();
    let el = GroupElement::new;
    match (dim, kind) {
        (2, StandardKind::Cartan) | (1, _) => {
            Err(Error::InvalidArgument(format!("no {kind:?} grading in dimension {dim}")))
        }
        (4, StandardKind::Cartan) => {
            let degs = vec![el(vec![0]), el(vec![0]), el(vec![1]), el(vec![-1])];
            Grading::new(algebra, None, AbelianGroup::free(1), degs)
        }
        (8, StandardKind::Cartan) => {
            let degs = [(0, 0), (0, 0), (1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)]
                .iter()
                .map(|&(a, b)| el(vec![a, b]))
                .collect();
            Grading::new(algebra, None, AbelianGroup::free(2), degs)
        }
        (_, StandardKind::CayleyDickson) => {
            let one = algebra.require_unit()?.clone();
            let gen = |terms: &[(usize, i64)]| SVec::from_terms(terms.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect());
            let u = gen(&[(0, 1), (1, -1)]);
            let (frame, bits): (Vec<SVec>, Vec<Vec<i64>>) = match dim {
                2 => (vec![one, u], vec![vec![0], vec![1]]),
                4 => {
                    // H on e1, e2, u1, v1
                    let v = gen(&[(2, 1), (3, 1)]);
                    let uv = algebra.mul(&u, &v);
                    (vec![one, u, v, uv], vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
                }
                8 => {
                    let v = gen(&[(2, 1), (5, 1)]);
                    let w = gen(&[(3, 1), (6, 1)]);
                    let uv = algebra.mul(&u, &v);
                    let uw = algebra.mul(&u, &w);
                    let vw = algebra.mul(&v, &w);
                    let uvw = algebra.mul(&uv, &w);
                    (
                        vec![one, u, v, w, uv, uw, vw, uvw],
                        vec![
                            vec![0, 0, 0],
                            vec![1, 0, 0],
                            vec![0, 1, 0],
                            vec![0, 0, 1],
                            vec![1, 1, 0],
                            vec![1, 0, 1],
                            vec![0, 1, 1],
                            vec![1, 1, 1],
                        ],
                    )
                }
                _ => return Err(Error::InvalidArgument(format!("no Cayley-Dickson grading in dimension {dim}"))),
            };
            let names = ["1", "u", "v", "w", "uv", "uw", "vw", "(uv)w"];
            let lbls = if dim == 4 { labels(&["1", "u", "v", "uv"]) } else { labels(&names[..dim]) };
            let k = bits[0].len();
            let frame = Matrix::from_rows(&frame, dim)?;
            Grading::with_frame(algebra, frame, lbls, AbelianGroup::new(0, vec![2; k])?, bits.into_iter().map(el).collect())
        }
        _ => Err(Error::InvalidArgument(format!("no split Hurwitz algebra of dimension {dim}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_alternative;

    fn idx(a: &Algebra, l: &str) -> SVec {
        SVec::basis(a.index_of(l).unwrap())
    }

    #[test]
    fn good_basis_products() {
        let (c, _) = split_hurwitz(8).unwrap();
        assert_eq!(c.mul(&idx(&c, "u1"), &idx(&c, "u2")), idx(&c, "v3"));
        assert_eq!(c.mul(&idx(&c, "u1"), &idx(&c, "v1")), idx(&c, "e1").neg());
        assert_eq!(c.mul(&idx(&c, "e2"), &idx(&c, "v1")), idx(&c, "v1"));
        assert_eq!(c.conj(&idx(&c, "e1")).unwrap(), idx(&c, "e2"));
        let (h, _) = split_hurwitz(4).unwrap();
        assert_eq!(h.mul(&idx(&h, "u1"), &idx(&h, "v1")), idx(&h, "e1").neg());
    }

    /// The conjugation must agree with `t(x) 1 - x`, where the trace is
    /// read independently from left multiplication: `tr L_x = (d / 2) t(x)`.
    #[test]
    fn conjugation_matches_trace_formula() {
        for d in [1usize, 2, 4, 8] {
            let (a, _) = split_hurwitz(d).unwrap();
            let one = a.unit().unwrap().clone();
            for i in 0..d {
                let x = SVec::basis(i);
                let mut tr = Scalar::zero();
                for k in 0..d {
                    tr += &a.mul(&x, &SVec::basis(k)).get(k);
                }
                let t = tr.mul_ref(&Scalar::frac(2, d as i64).unwrap());
                assert_eq!(a.conj(&x).unwrap(), one.scale(&t).sub(&x), "dim {d}, {}", a.label(i));
            }
        }
    }

    #[test]
    fn hurwitz_algebras_compose_and_are_alternative() {
        for d in [1, 2, 4, 8] {
            let (a, q) = split_hurwitz(d).unwrap();
            let r = check_composition(&a, &q);
            assert!(r.passed, "dim {d}: {:?}", r.counterexample);
            assert!(check_alternative(&a).passed);
        }
        assert!(split_hurwitz(3).is_err());
    }

    #[test]
    fn sign_flip_breaks_composition() {
        let (c, q) = split_hurwitz(8).unwrap();
        let bad = c.with_negated_constant(2, 3, 7);
        let r = check_composition(&bad, &q);
        assert!(!r.passed);
        assert!(r.counterexample.unwrap().inputs.len() >= 2);
    }

    #[test]
    fn doubling() {
        let (f, _) = split_hurwitz(1).unwrap();
        let one = Scalar::one();
        let (k, qk) = cayley_dickson_double(&f, &one).unwrap();
        assert_eq!(k.dim(), 2);
        assert!(check_composition(&k, &qk).passed);
        // (1 ± w)/2 are orthogonal idempotents, so CD(F, 1) is split
        let half = Scalar::frac(1, 2).unwrap();
        let e1 = SVec::from_terms(vec![(0, half.clone()), (1, half.clone())]);
        let e2 = SVec::from_terms(vec![(0, half.clone()), (1, -half)]);
        assert_eq!(k.mul(&e1, &e1), e1);
        assert_eq!(k.mul(&e2, &e2), e2);
        assert!(k.mul(&e1, &e2).is_zero());
        let (h, _) = cayley_dickson_double(&k, &one).unwrap();
        let (c, qc) = cayley_dickson_double(&h, &one).unwrap();
        assert_eq!(c.dim(), 8);
        assert!(check_composition(&c, &qc).passed);
        assert!(check_alternative(&c).passed);
        assert!(cayley_dickson_double(&c, &one).is_err());
        assert!(cayley_dickson_double(&h, &Scalar::zero()).is_err());
    }
}
