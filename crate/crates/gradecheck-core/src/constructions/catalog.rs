//! Named gradings: the two fine gradings on `C`, the fine involution
//! preserving gradings on `C ⊗ K`, `C ⊗ H`, `C x C`, `C ⊗ C` and `T(C)`.

use std::sync::{Arc, OnceLock};

use crate::algebra::{commutator_algebra, split_involution, Algebra};
use crate::composition::{split_hurwitz, standard_grading, StandardKind};
use crate::error::{Error, Result};
use crate::field::{Scalar, SVec};
use crate::grading::{combine, AbelianGroup, CombineMode, Grading, GroupElement, Hom};
use crate::smirnov::{build_smirnov, Smirnov};

use super::{direct_product, grading_closure, loop_to_product, tensor_with_involution, Character};

/// The algebras the catalog is built on, constructed once.
pub struct BaseAlgebras {
    pub f: Arc<Algebra>,
    pub k: Arc<Algebra>,
    pub h: Arc<Algebra>,
    pub c: Arc<Algebra>,
    pub cf: Arc<Algebra>,
    pub ck: Arc<Algebra>,
    pub ch: Arc<Algebra>,
    pub cc: Arc<Algebra>,
    pub cxc: Arc<Algebra>,
    pub smirnov: Smirnov,
}

pub fn bases() -> &'static BaseAlgebras {
    static B: OnceLock<BaseAlgebras> = OnceLock::new();
    B.get_or_init(|| {
        let hur = |d: usize| Arc::new(split_hurwitz(d).expect("split Hurwitz algebra").0);
        let (f, k, h, c) = (hur(1), hur(2), hur(4), hur(8));
        let tensor = |b: &Algebra| Arc::new(tensor_with_involution(&c, b).expect("tensor product"));
        BaseAlgebras {
            cf: tensor(&f),
            ck: tensor(&k),
            ch: tensor(&h),
            cc: tensor(&c),
            cxc: Arc::new(direct_product(&c, &c).expect("direct product")),
            smirnov: build_smirnov(&c).expect("Smirnov algebra"),
            f,
            k,
            h,
            c,
        }
    })
}

/// A catalog grading with the universal group it is stated to have.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub algebra: Arc<Algebra>,
    pub grading: Grading,
    pub stated_group: AbelianGroup,
}

const NAMES: &[(&str, &str)] = &[
    ("cayley-cartan", "Cartan Z^2-grading on C"),
    ("cayley-cd", "Cayley-Dickson (Z/2)^3-grading on C"),
    ("cxk-1", "Cayley-Dickson on C tensor Cayley-Dickson on K"),
    ("cxk-2", "Cartan on C tensor Cayley-Dickson on K"),
    ("cxh-1", "Cayley-Dickson on C tensor Cayley-Dickson on H"),
    ("cxh-2", "Cayley-Dickson on C tensor Cartan on H"),
    ("cxh-3", "Cartan on C tensor Cayley-Dickson on H"),
    ("cxh-4", "Cartan on C tensor Cartan on H"),
    ("cxc-prod-11", "product of two Cartan gradings on C x C"),
    ("cxc-prod-12", "product of Cartan and Cayley-Dickson gradings on C x C"),
    ("cxc-prod-22", "product of two Cayley-Dickson gradings on C x C"),
    ("cxc-loop-z2z2", "loop grading of the Cartan grading, (x, ±x), on C x C"),
    ("cxc-loop-z2^4", "loop grading of the Cayley-Dickson grading, (x, ±x), on C x C"),
    ("cxc-loop-z4", "loop grading of the Cayley-Dickson grading, (x, i^m x), on C x C"),
    ("ctc-1", "Cartan tensor Cartan on C ⊗ C"),
    ("ctc-2", "Cartan tensor Cayley-Dickson on C ⊗ C"),
    ("ctc-3", "Cayley-Dickson tensor Cayley-Dickson on C ⊗ C"),
    ("ctc-4", "generated by x⊗1 ± 1⊗x over the Cartan grading"),
    ("ctc-5", "generated by x⊗1 ± 1⊗x over the Cayley-Dickson grading"),
    ("ctc-6", "generated by x⊗1 + i^m 1⊗x over the Cayley-Dickson grading"),
    ("smirnov-z2", "grading on T(C) induced by the Cartan grading"),
    ("smirnov-z2cubed", "grading on T(C) induced by the Cayley-Dickson grading"),
];

pub fn catalog_names() -> Vec<&'static str> {
    NAMES.iter().map(|(n, _)| *n).collect()
}

fn group(free: usize, torsion: &[u64]) -> AbelianGroup {
    AbelianGroup::new(free, torsion.to_vec()).expect("valid moduli")
}

fn el(c: &[i64]) -> GroupElement {
    GroupElement::new(c.to_vec())
}

/// `x ⊗ y` in `C ⊗ C`.
fn tv(x: &SVec, y: &SVec) -> SVec {
    let mut t = Vec::with_capacity(x.nnz() * y.nnz());
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            t.push((i * 8 + j, a.mul_ref(b)));
        }
    }
    SVec::from_terms(t)
}

/// The three loop data on `C`: base grading, projection, `h` and character.
fn loop_data(name: &str) -> Result<(Grading, Hom, GroupElement, Character)> {
    let c = bases().c.clone();
    let one = Scalar::one;
    let m1 = || Scalar::from_int(-1);
    Ok(match name {
        "z2z2" => {
            let base = standard_grading(c, StandardKind::Cartan)?;
            let g = group(2, &[2]);
            let pi = Hom::new(g.clone(), base.group().clone(), vec![el(&[1, 0]), el(&[0, 1]), el(&[0, 0])])?;
            let chi = Character::new(g, vec![one(), one(), m1()])?;
            (base, pi, el(&[0, 0, 1]), chi)
        }
        "z2^4" => {
            let base = standard_grading(c, StandardKind::CayleyDickson)?;
            let g = group(0, &[2, 2, 2, 2]);
            let pi = Hom::new(
                g.clone(),
                base.group().clone(),
                vec![el(&[0, 0, 0]), el(&[1, 0, 0]), el(&[0, 1, 0]), el(&[0, 0, 1])],
            )?;
            let chi = Character::new(g, vec![m1(), one(), one(), one()])?;
            (base, pi, el(&[1, 0, 0, 0]), chi)
        }
        "z4" => {
            let base = standard_grading(c, StandardKind::CayleyDickson)?;
            let g = group(0, &[4, 2, 2]);
            let pi = Hom::new(g.clone(), base.group().clone(), vec![el(&[1, 0, 0]), el(&[0, 1, 0]), el(&[0, 0, 1])])?;
            let chi = Character::new(g, vec![Scalar::i(), one(), one()])?;
            (base, pi, el(&[2, 0, 0]), chi)
        }
        _ => unreachable!("loop data for {name}"),
    })
}

/// Generators `x ⊗ 1 + c 1 ⊗ x` of the `C ⊗ C` gradings 4 to 6, read off
/// the homogeneous basis of a grading on `C`.
fn tensor_generators(name: &str) -> Result<(AbelianGroup, Vec<(SVec, GroupElement)>)> {
    let b = bases();
    let c = b.c.clone();
    let one = c.require_unit()?.clone();
    let pm = |x: &SVec, s: &Scalar| tv(x, &one).add(&tv(&one, x).scale(s));
    let (p1, m1) = (Scalar::one(), Scalar::from_int(-1));
    let mut gens = Vec::new();
    let g = match name {
        "ctc-4" => {
            let cartan = standard_grading(c.clone(), StandardKind::Cartan)?;
            let u = SVec::from_terms(vec![(0, p1.clone()), (1, m1.clone())]);
            gens.push((pm(&u, &p1), el(&[0, 0, 0])));
            gens.push((pm(&u, &m1), el(&[0, 0, 1])));
            for i in 0..8 {
                let d = cartan.degree(i).coords();
                if d.iter().all(|&x| x == 0) {
                    continue;
                }
                let x = cartan.basis_vector(i);
                gens.push((pm(&x, &p1), el(&[d[0], d[1], 0])));
                gens.push((pm(&x, &m1), el(&[d[0], d[1], 1])));
            }
            group(2, &[2])
        }
        "ctc-5" | "ctc-6" => {
            let cd = standard_grading(c.clone(), StandardKind::CayleyDickson)?;
            for i in 0..8 {
                let d = cd.degree(i).coords();
                if d.iter().all(|&x| x == 0) {
                    continue;
                }
                let x = cd.basis_vector(i);
                if name == "ctc-5" {
                    gens.push((pm(&x, &p1), el(&[0, d[0], d[1], d[2]])));
                    gens.push((pm(&x, &m1), el(&[1, d[0], d[1], d[2]])));
                } else {
                    for m in [d[0], d[0] + 2] {
                        gens.push((pm(&x, &Scalar::i_pow(m)), el(&[m, d[1], d[2]])));
                    }
                }
            }
            if name == "ctc-5" {
                group(0, &[2, 2, 2, 2])
            } else {
                group(0, &[4, 2, 2])
            }
        }
        _ => unreachable!("generators for {name}"),
    };
    Ok((g, gens))
}

/// The grading on `C ⊗ C` generated by `x_0 ⊗ 1 + 1 ⊗ y_0` for the skew
/// parts `(x_0, y_0)` of the homogeneous elements of a grading on `C x C`.
pub fn transfer_to_tensor(g: &Grading) -> Result<Grading> {
    let b = bases();
    if **g.algebra() != *b.cxc {
        return Err(Error::InvalidGrading("transfer needs a grading on C x C".into()));
    }
    let cxc = &b.cxc;
    let c = &b.c;
    let one = c.require_unit()?.clone();
    let half = Scalar::frac(1, 2)?;
    let mut gens = Vec::new();
    for i in 0..g.dim() {
        let v = g.basis_vector(i);
        let skew = v.sub(&cxc.conj(&v)?).scale(&half);
        if skew.is_zero() {
            continue;
        }
        let x = SVec::from_terms(skew.iter().filter(|(k, _)| *k < 8).cloned().collect());
        let y = SVec::from_terms(skew.iter().filter(|(k, _)| *k >= 8).map(|(k, c)| (k - 8, c.clone())).collect());
        gens.push((tv(&x, &one).add(&tv(&one, &y)), g.degree(i).clone()));
    }
    grading_closure(b.cc.clone(), g.group().clone(), &gens)
}

/// `C_0 x C_0` under the commutator, on the canonical basis of the skew
/// part of `C x C`.
pub fn commutator_skew_product() -> Result<Algebra> {
    let cxc = &bases().cxc;
    let (skew, _) = split_involution(cxc)?;
    let labels = (0..skew.dim()).map(|i| format!("s{i}")).collect();
    commutator_algebra(cxc, &skew, "C0xC0", labels)
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let (key, description) = NAMES.iter().find(|(n, _)| *n == name).copied().ok_or_else(|| Error::UnknownCatalog {
        name: name.to_string(),
        valid: catalog_names().into_iter().map(String::from).collect(),
    })?;
    let b = bases();
    let std = |a: &Arc<Algebra>, kind| standard_grading(a.clone(), kind);
    use StandardKind::{Cartan, CayleyDickson as Cd};
    let tensor = |x: Grading, y: Grading, alg: &Arc<Algebra>| combine(&x, &y, CombineMode::Tensor, alg.clone());
    let (algebra, grading, stated) = match key {
        "cayley-cartan" => (b.c.clone(), std(&b.c, Cartan)?, group(2, &[])),
        "cayley-cd" => (b.c.clone(), std(&b.c, Cd)?, group(0, &[2, 2, 2])),
        "cxk-1" => (b.ck.clone(), tensor(std(&b.c, Cd)?, std(&b.k, Cd)?, &b.ck)?, group(0, &[2, 2, 2, 2])),
        "cxk-2" => (b.ck.clone(), tensor(std(&b.c, Cartan)?, std(&b.k, Cd)?, &b.ck)?, group(2, &[2])),
        "cxh-1" => (b.ch.clone(), tensor(std(&b.c, Cd)?, std(&b.h, Cd)?, &b.ch)?, group(0, &[2, 2, 2, 2, 2])),
        "cxh-2" => (b.ch.clone(), tensor(std(&b.c, Cd)?, std(&b.h, Cartan)?, &b.ch)?, group(1, &[2, 2, 2])),
        "cxh-3" => (b.ch.clone(), tensor(std(&b.c, Cartan)?, std(&b.h, Cd)?, &b.ch)?, group(2, &[2, 2])),
        "cxh-4" => (b.ch.clone(), tensor(std(&b.c, Cartan)?, std(&b.h, Cartan)?, &b.ch)?, group(3, &[])),
        "cxc-prod-11" | "cxc-prod-12" | "cxc-prod-22" => {
            let (k1, k2, stated) = match key {
                "cxc-prod-11" => (Cartan, Cartan, group(4, &[])),
                "cxc-prod-12" => (Cartan, Cd, group(2, &[2, 2, 2])),
                _ => (Cd, Cd, group(0, &[2, 2, 2, 2, 2, 2])),
            };
            let g = combine(&std(&b.c, k1)?, &std(&b.c, k2)?, CombineMode::DirectProduct, b.cxc.clone())?;
            (b.cxc.clone(), g, stated)
        }
        "cxc-loop-z2z2" | "cxc-loop-z2^4" | "cxc-loop-z4" => {
            let tag = key.trim_start_matches("cxc-loop-");
            let (base, pi, h, chi) = loop_data(tag)?;
            let g = loop_to_product(&base, &pi, &h, &chi)?;
            let stated = pi.source().clone();
            (b.cxc.clone(), g, stated)
        }
        "ctc-1" => (b.cc.clone(), tensor(std(&b.c, Cartan)?, std(&b.c, Cartan)?, &b.cc)?, group(4, &[])),
        "ctc-2" => (b.cc.clone(), tensor(std(&b.c, Cartan)?, std(&b.c, Cd)?, &b.cc)?, group(2, &[2, 2, 2])),
        "ctc-3" => (b.cc.clone(), tensor(std(&b.c, Cd)?, std(&b.c, Cd)?, &b.cc)?, group(0, &[2, 2, 2, 2, 2, 2])),
        "ctc-4" | "ctc-5" | "ctc-6" => {
            let (g, gens) = tensor_generators(key)?;
            let stated = g.clone();
            (b.cc.clone(), grading_closure(b.cc.clone(), g, &gens)?, stated)
        }
        "smirnov-z2" => {
            let s = &b.smirnov;
            (s.algebra().clone(), s.induce_grading(&std(&b.c, Cartan)?)?, group(2, &[]))
        }
        "smirnov-z2cubed" => {
            let s = &b.smirnov;
            (s.algebra().clone(), s.induce_grading(&std(&b.c, Cd)?)?, group(0, &[2, 2, 2]))
        }
        _ => unreachable!("every name in NAMES is handled"),
    };
    Ok(CatalogEntry { name: key, description, algebra, grading, stated_group: stated })
}
