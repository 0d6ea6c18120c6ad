//! The claims checked by `gradecheck report --suite paper`, grouped into ten
//! criteria. Each claim records its verdict, the number of elementary checks
//! behind it and its wall time; only the timing varies between runs.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use serde::Serialize;

use gradecheck_core::algebra::{
    check_structurable, derivation_system, generalized_alt_nucleus, ideal_closure, Algebra, Report, Subspace,
};
use gradecheck_core::composition::{check_composition, split_hurwitz, standard_grading, StandardKind};
use gradecheck_core::constructions::{bases, catalog, catalog_names, commutator_skew_product, transfer_to_tensor};
use gradecheck_core::field::{matrix_rank, RankMethod, Scalar, SVec};
use gradecheck_core::grading::{graded_simple, universal_group, verify, AbelianGroup, Grading};
use gradecheck_core::kantor::{check_lie, extend_grading, kantor, killing_form, LieAlgebra, LieCheck};
use gradecheck_core::smirnov::{build_smirnov_with_coefficient, SMIRNOV_DIM};

use crate::format::{emit_algebra, emit_grading, emit_pair, on_homogeneous_basis, parse_algebra, parse_grading, FormatError};

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub criterion: u8,
    pub id: String,
    pub claim: String,
    /// Where the claim comes from, in words.
    pub anchor: &'static str,
    pub passed: bool,
    pub checks_run: u64,
    pub elapsed_s: f64,
    pub detail: String,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Skip the full Jacobi sweeps on the 133- and 248-dimensional algebras.
    pub fast: bool,
    pub seed: u64,
    pub samples: usize,
    pub rank: RankMethod,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { fast: false, seed: 42, samples: 100_000, rank: RankMethod::default() }
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "composition law on split Hurwitz algebras"),
    (2, "structurable identity"),
    (3, "generalized alternative nucleus dimensions"),
    (4, "derivation algebra dimensions"),
    (5, "grading catalog and universal groups"),
    (6, "graded simplicity and transfer to C⊗C"),
    (7, "Smirnov algebra coherence"),
    (8, "Kantor Lie algebra dimensions and axioms"),
    (9, "induced gradings on the Kantor Lie algebras"),
    (10, "file round trips"),
];

/// Outcome of one claim before it is timed and labelled.
struct Outcome {
    passed: bool,
    checks: u64,
    detail: String,
}

fn from_report(r: Report) -> Outcome {
    let detail = match &r.counterexample {
        Some(c) => c.to_string(),
        None => String::new(),
    };
    Outcome { passed: r.passed, checks: r.checks_run, detail }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(got: T, want: T) -> Outcome {
    Outcome { passed: got == want, checks: 1, detail: format!("got {got}, expected {want}") }
}

struct Suite {
    criterion: u8,
    out: Vec<Claim>,
}

impl Suite {
    fn claim(
        &mut self,
        id: impl Into<String>,
        text: impl Into<String>,
        anchor: &'static str,
        f: impl FnOnce() -> Result<Outcome, String>,
    ) {
        let start = Instant::now();
        let o = f().unwrap_or_else(|e| Outcome { passed: false, checks: 0, detail: e });
        self.out.push(Claim {
            criterion: self.criterion,
            id: id.into(),
            claim: text.into(),
            anchor,
            passed: o.passed,
            checks_run: o.checks,
            elapsed_s: start.elapsed().as_secs_f64(),
            detail: o.detail,
        });
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The five structurable algebras fed to the Kantor construction.
fn kantor_sources() -> [(&'static str, Arc<Algebra>, &'static str, usize); 5] {
    let b = bases();
    [
        ("C⊗F", b.cf.clone(), "f4", 52),
        ("C⊗K", b.ck.clone(), "e6", 78),
        ("C⊗H", b.ch.clone(), "e7", 133),
        ("T(C)", b.smirnov.algebra().clone(), "e7", 133),
        ("C⊗C", b.cc.clone(), "e8", 248),
    ]
}

fn kantor_algebras() -> Result<&'static [LieAlgebra], String> {
    static KAN: OnceLock<std::result::Result<Vec<LieAlgebra>, String>> = OnceLock::new();
    KAN.get_or_init(|| kantor_sources().iter().map(|(_, a, _, _)| kantor(a).map_err(err)).collect())
        .as_ref()
        .map(Vec::as_slice)
        .map_err(Clone::clone)
}

fn derivation_dim(a: &Algebra, rank: RankMethod) -> Result<(usize, u64), String> {
    let n = a.dim();
    let rows = derivation_system(a);
    let r = matrix_rank(&rows, n * n, rank).map_err(err)?;
    Ok((n * n - r, rows.len() as u64))
}

/// Runs the claims of one criterion.
pub fn criterion(n: u8, opts: &SuiteOptions) -> Vec<Claim> {
    let mut s = Suite { criterion: n, out: Vec::new() };
    match n {
        1 => composition(&mut s),
        2 => structurable(&mut s),
        3 => nucleus(&mut s),
        4 => derivations(&mut s, opts),
        5 => gradings(&mut s),
        6 => simplicity(&mut s),
        7 => smirnov(&mut s, opts),
        8 => kantor_claims(&mut s, opts),
        9 => induced(&mut s),
        10 => round_trips(&mut s),
        _ => {}
    }
    s.out
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<Claim> {
    CRITERIA.iter().flat_map(|(n, _)| criterion(*n, opts)).collect()
}

fn composition(s: &mut Suite) {
    for d in [1, 2, 4, 8] {
        s.claim(format!("1.hurwitz-{d}"), format!("split Hurwitz algebra of dim {d} composes its norm"), "Hurwitz algebras", || {
            let (a, q) = split_hurwitz(d).map_err(err)?;
            Ok(from_report(check_composition(&a, &q)))
        });
    }
}

fn structurable(s: &mut Suite) {
    for (name, a, _, _) in kantor_sources() {
        s.claim(format!("2.{name}"), format!("{name} is structurable"), "structurable algebras", || {
            Ok(from_report(check_structurable(&a).map_err(err)?))
        });
    }
}

fn nucleus(s: &mut Suite) {
    let b = bases();
    for (name, a, want) in [("C", b.c.clone(), 8), ("C⊗H", b.ch.clone(), 11), ("C⊗C", b.cc.clone(), 15)] {
        s.claim(format!("3.{name}"), format!("dim N_alt({name}) = {want}"), "generalized alternative nucleus", || {
            Ok(expect_eq(generalized_alt_nucleus(&a).dim(), want))
        });
    }
}

fn derivations(s: &mut Suite, opts: &SuiteOptions) {
    let b = bases();
    let rank = opts.rank;
    let c0 = || commutator_skew_product().map(Arc::new).map_err(err);
    type Build<'a> = Box<dyn Fn() -> Result<Arc<Algebra>, String> + 'a>;
    let cases: [(&str, Build, usize); 4] = [
        ("C", Box::new(|| Ok(b.c.clone())), 14),
        ("T(C)", Box::new(|| Ok(b.smirnov.algebra().clone())), 14),
        ("C0×C0", Box::new(c0), 28),
        ("C⊗C", Box::new(|| Ok(b.cc.clone())), 28),
    ];
    for (name, alg, want) in cases {
        s.claim(format!("4.{name}"), format!("dim Der({name}) = {want}"), "derivation algebras", || {
            let (d, rows) = derivation_dim(&*alg()?, rank)?;
            let mut o = expect_eq(d, want);
            o.checks = rows;
            Ok(o)
        });
    }
}

fn gradings(s: &mut Suite) {
    for name in catalog_names() {
        let stated = catalog(name).map(|e| e.stated_group.to_string()).unwrap_or_default();
        s.claim(format!("5.{name}"), format!("{name} is an involution preserving grading with universal group {stated}"), "fine grading catalog", || {
            let e = catalog(name).map_err(err)?;
            let r = verify(&e.grading, true);
            if !r.passed {
                return Ok(from_report(r));
            }
            let u = universal_group(&e.grading).map_err(err)?.group;
            Ok(Outcome {
                passed: u.is_isomorphic(&e.stated_group),
                checks: r.checks_run + 1,
                detail: format!("universal group {u}, invariant factors {:?}", u.invariant_factors()),
            })
        });
    }
}

fn simplicity(s: &mut Suite) {
    let cxc = bases().cxc.clone();
    let ideals = || -> [Subspace; 2] { [ideal_closure(&cxc, &[SVec::basis(0)]), ideal_closure(&cxc, &[SVec::basis(8)])] };
    for (name, want) in [
        ("cxc-loop-z2z2", true),
        ("cxc-loop-z2^4", true),
        ("cxc-loop-z4", true),
        ("cxc-prod-11", false),
        ("cxc-prod-12", false),
        ("cxc-prod-22", false),
    ] {
        s.claim(format!("6.simple.{name}"), format!("{name} graded-simple = {want}"), "gradings on C×C", || {
            let e = catalog(name).map_err(err)?;
            Ok(expect_eq(graded_simple(&e.grading, &ideals()).map_err(err)?, want))
        });
    }
    for (src, dst) in [
        ("cxc-loop-z2z2", "ctc-4"),
        ("cxc-loop-z2^4", "ctc-5"),
        ("cxc-loop-z4", "ctc-6"),
        ("cxc-prod-11", "ctc-1"),
        ("cxc-prod-12", "ctc-2"),
        ("cxc-prod-22", "ctc-3"),
    ] {
        s.claim(format!("6.transfer.{src}"), format!("transfer of {src} to C⊗C agrees with {dst} componentwise"), "transfer through the skew part", || {
            let moved = transfer_to_tensor(&catalog(src).map_err(err)?.grading).map_err(err)?;
            let target = catalog(dst).map_err(err)?.grading;
            if moved.group() != target.group() || moved.support() != target.support() {
                return Ok(Outcome { passed: false, checks: 1, detail: "group or support differs".into() });
            }
            let support = target.support();
            let bad = support.iter().find(|d| moved.component(d) != target.component(d));
            Ok(Outcome {
                passed: bad.is_none(),
                checks: support.len() as u64,
                detail: bad.map(|d| format!("component {d} differs")).unwrap_or_else(|| format!("{} components", support.len())),
            })
        });
    }
}

fn smirnov(s: &mut Suite, opts: &SuiteOptions) {
    let t = &bases().smirnov;
    let anchor = "the Smirnov algebra";
    s.claim("7.psi", "ψ is an isomorphism of T(C) onto its image in T(C⊗C)", anchor, || Ok(from_report(t.in_tensor().map_err(err)?.report)));
    s.claim("7.unit", "the unit formula acts as the unit", anchor, || {
        let a = t.algebra();
        let one = t.unit_vector(&t.orthogonal_skew_basis().map_err(err)?).map_err(err)?;
        let mut checks = 1;
        let mut ok = Some(&one) == a.unit();
        for i in 0..a.dim() {
            let b = SVec::basis(i);
            ok &= a.mul(&one, &b) == b && a.mul(&b, &one) == b;
            checks += 2;
        }
        Ok(Outcome { passed: ok, checks, detail: String::new() })
    });
    s.claim("7.trace-one", "tr(1) = 7", anchor, || Ok(expect_eq(t.trace(t.algebra().unit().expect("unital")), Scalar::from_int(7))));
    let rank = opts.rank;
    s.claim("7.trace-rank", "the trace form has rank 35", anchor, || {
        Ok(expect_eq(matrix_rank(&t.trace_gram().row_svecs(), SMIRNOV_DIM, rank).map_err(err)?, SMIRNOV_DIM))
    });
    s.claim("7.trace-invariance", "the trace form is invariant", anchor, || Ok(from_report(t.check_trace_invariance())));
    for kind in [StandardKind::Cartan, StandardKind::CayleyDickson] {
        s.claim(format!("7.trace-homogeneity.{kind:?}"), format!("the trace is homogeneous for the grading induced by {kind:?}"), anchor, || {
            let g = t.induce_grading(&standard_grading(t.cayley().clone(), kind).map_err(err)?).map_err(err)?;
            Ok(from_report(t.check_trace_homogeneity(&g)))
        });
    }
    s.claim("7.recover", "the Cayley product is recovered from T(C)", anchor, || Ok(from_report(t.recover_cayley().map_err(err)?.1)));
    s.claim("7.coefficient", "replacing the coefficient 1/4 breaks structurability", anchor, || {
        let mut checks = 0;
        for bad in [Scalar::frac(1, 2).map_err(err)?, Scalar::one(), Scalar::frac(-1, 4).map_err(err)?] {
            let m = build_smirnov_with_coefficient(t.cayley(), &bad).map_err(err)?;
            let r = check_structurable(m.algebra()).map_err(err)?;
            checks += r.checks_run;
            if r.passed {
                return Ok(Outcome { passed: false, checks, detail: format!("coefficient {bad} still structurable") });
            }
        }
        Ok(Outcome { passed: true, checks, detail: "1/2, 1, -1/4 all fail".into() })
    });
}

fn kantor_claims(s: &mut Suite, opts: &SuiteOptions) {
    let anchor = "the Kantor construction";
    for (k, (name, _, target, want)) in kantor_sources().into_iter().enumerate() {
        s.claim(format!("8.dim.{name}"), format!("kan({name}) dim = {want}"), anchor, || {
            let l = &kantor_algebras()?[k];
            let mut o = expect_eq(l.dim(), want);
            let dims = l.layout().component_dims();
            o.detail = format!("{}; components {dims:?}; {target}", o.detail);
            Ok(o)
        });
        let sampled = want > 78;
        let mode = if sampled { LieCheck::Sampled { seed: opts.seed, n: opts.samples } } else { LieCheck::Full };
        let how = if sampled { format!("sampled Jacobi, seed {}, {} triples", opts.seed, opts.samples) } else { "full Jacobi".to_string() };
        s.claim(format!("8.lie.{name}"), format!("kan({name}) is a Lie algebra ({how})"), anchor, || {
            Ok(from_report(check_lie(&kantor_algebras()?[k], mode)))
        });
        if sampled && !opts.fast {
            s.claim(format!("8.lie-full.{name}"), format!("kan({name}) is a Lie algebra (full Jacobi)"), anchor, || {
                Ok(from_report(check_lie(&kantor_algebras()?[k], LieCheck::Full)))
            });
        }
        let rank = opts.rank;
        s.claim(format!("8.killing.{name}"), format!("the Killing form of kan({name}) is nondegenerate"), anchor, || {
            let l = &kantor_algebras()?[k];
            let kf = killing_form(l.algebra());
            Ok(expect_eq(matrix_rank(&kf.row_svecs(), l.dim(), rank).map_err(err)?, l.dim()))
        });
    }
}

fn induced(s: &mut Suite) {
    let groups = |free, t: &[u64]| AbelianGroup::new(free, t.to_vec()).expect("valid group");
    let families: [(usize, &[&str]); 5] = [
        (0, &["cayley-cartan", "cayley-cd"]),
        (1, &["cxk-1", "cxk-2"]),
        (2, &["cxh-1", "cxh-2", "cxh-3", "cxh-4"]),
        (3, &["smirnov-z2", "smirnov-z2cubed"]),
        (4, &["ctc-1", "ctc-2", "ctc-3", "ctc-4", "ctc-5", "ctc-6"]),
    ];
    // the groups listed for each target
    let lists: [Vec<AbelianGroup>; 5] = [
        vec![groups(3, &[]), groups(1, &[2, 2, 2])],
        vec![groups(1, &[2, 2, 2, 2]), groups(3, &[2])],
        vec![groups(1, &[2; 5]), groups(2, &[2, 2, 2]), groups(3, &[2, 2]), groups(4, &[])],
        vec![groups(3, &[]), groups(1, &[2, 2, 2])],
        vec![groups(5, &[]), groups(3, &[2, 2, 2]), groups(1, &[2; 6]), groups(3, &[2]), groups(1, &[2, 2, 2, 2]), groups(1, &[4, 2, 2])],
    ];
    let sources = kantor_sources();
    for ((k, names), listed) in families.into_iter().zip(lists) {
        for (pos, name) in names.iter().enumerate() {
            let (src, _, target, _) = &sources[k];
            let want = &listed[pos];
            s.claim(format!("9.{name}"), format!("{name} induces a {want}-grading on kan({src}) = {target}"), "induced gradings on Kantor algebras", || {
                let l = &kantor_algebras()?[k];
                let e = catalog(name).map_err(err)?;
                let g = if e.grading.algebra().as_ref() == l.source().as_ref() {
                    e.grading
                } else {
                    // the gradings on C, moved to C⊗F on the same basis
                    let (group, degrees) = (e.grading.group().clone(), e.grading.degrees().to_vec());
                    match e.grading.frame() {
                        None => Grading::new(l.source().clone(), None, group, degrees),
                        Some(f) => Grading::with_frame(l.source().clone(), f.clone(), e.grading.labels().to_vec(), group, degrees),
                    }
                    .map_err(err)?
                };
                let ext = extend_grading(l, &g).map_err(err)?;
                let r = verify(&ext, false);
                if !r.passed {
                    return Ok(from_report(r));
                }
                let u = universal_group(&ext).map_err(err)?.group;
                Ok(Outcome { passed: u.is_isomorphic(want), checks: r.checks_run + 1, detail: format!("universal group {u}") })
            });
        }
    }
}

fn round_trips(s: &mut Suite) {
    for name in catalog_names() {
        s.claim(format!("10.{name}"), format!("{name} survives emit, parse, emit byte for byte and still verifies"), "file formats", || {
            let e = catalog(name).map_err(err)?;
            let (at, gt) = emit_pair(&e.grading);
            let a = Arc::new(parse_algebra(&at).map_err(err)?);
            let g = parse_grading(&gt, a.clone()).map_err(err)?;
            let same = emit_algebra(&a) == at && emit_grading(&g).map_err(err)? == gt;
            let homog = on_homogeneous_basis(&e.grading);
            let equal = a.as_ref() == homog.algebra().as_ref() && g.degrees() == homog.degrees();
            let r = verify(&g, true);
            Ok(Outcome {
                passed: same && equal && r.passed,
                checks: r.checks_run + 2,
                detail: format!("byte stable {same}, values equal {equal}, verify {}", r.passed),
            })
        });
    }
    s.claim("10.unreduced", "the scalar \"2/4\" is rejected", "file formats", || {
        let (a, _) = split_hurwitz(2).map_err(err)?;
        let text = emit_algebra(&a).replacen("\"1\", \"0\"", "\"2/4\", \"0\"", 1);
        Ok(match parse_algebra(&text) {
            Err(FormatError::Invalid { msg, .. }) if msg.contains("lowest terms") || msg.contains("2/4") => {
                Outcome { passed: true, checks: 1, detail: msg }
            }
            other => Outcome { passed: false, checks: 1, detail: format!("{other:?}") },
        })
    });
    s.claim("10.range", "an out of range index is reported with its triple", "file formats", || {
        let (a, _) = split_hurwitz(2).map_err(err)?;
        let text = emit_algebra(&a).replacen("[0, 0, 0,", "[0, 0, 9,", 1);
        Ok(match parse_algebra(&text) {
            Err(FormatError::Invalid { at, msg }) if at.contains("(0, 0, 9)") => Outcome { passed: true, checks: 1, detail: format!("{at}: {msg}") },
            other => Outcome { passed: false, checks: 1, detail: format!("{other:?}") },
        })
    });
}
