//! Group gradings given by a homogeneous basis and a degree map, and the
//! computations on them.

mod group;
mod ops;

pub use group::{AbelianGroup, GroupElement, Hom};
pub use ops::{
    check_equivalence_witness, coarsen, combine, graded_simple, invariants, universal_group, verify, CombineMode,
    EquivalenceWitness, GradingInvariants, UniversalGroup,
};

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Algebra, Subspace};
use crate::error::{Error, Result};
use crate::field::{Matrix, SVec};

/// A grading of `algebra` by `group`.
///
/// Without a frame the canonical basis is homogeneous. With a frame, row `i`
/// is the `i`-th homogeneous basis vector in canonical coordinates and
/// `degrees[i]` its degree.
#[derive(Clone, Debug)]
pub struct Grading {
    algebra: Arc<Algebra>,
    frame: Option<(Matrix, Matrix)>,
    labels: Vec<String>,
    group: AbelianGroup,
    degrees: Vec<GroupElement>,
    homogeneous: OnceLock<Arc<Algebra>>,
}

impl Grading {
    /// A grading on the canonical basis when `frame` is `None`.
    pub fn new(
        algebra: Arc<Algebra>,
        frame: Option<Matrix>,
        group: AbelianGroup,
        degrees: Vec<GroupElement>,
    ) -> Result<Self> {
        let labels = match &frame {
            None => algebra.labels().to_vec(),
            Some(_) => (0..algebra.dim()).map(|i| format!("h{i}")).collect(),
        };
        Grading::build(algebra, frame, labels, group, degrees)
    }

    pub fn with_frame(
        algebra: Arc<Algebra>,
        frame: Matrix,
        labels: Vec<String>,
        group: AbelianGroup,
        degrees: Vec<GroupElement>,
    ) -> Result<Self> {
        Grading::build(algebra, Some(frame), labels, group, degrees)
    }

    fn build(
        algebra: Arc<Algebra>,
        frame: Option<Matrix>,
        labels: Vec<String>,
        group: AbelianGroup,
        degrees: Vec<GroupElement>,
    ) -> Result<Self> {
        let n = algebra.dim();
        if degrees.len() != n || labels.len() != n {
            return Err(Error::InvalidGrading(format!(
                "{} degrees and {} labels for an algebra of dimension {n}",
                degrees.len(),
                labels.len()
            )));
        }
        if let Some(g) = degrees.iter().find(|g| !group.contains(g)) {
            return Err(Error::InvalidGrading(format!("degree {g} is not a reduced element of {group}")));
        }
        let frame = match frame {
            None => None,
            Some(f) => {
                if f.nrows() != n || f.ncols() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: f.nrows() });
                }
                let inv = f.inverse().map_err(|_| Error::InvalidGrading("homogeneous basis is not a basis".into()))?;
                Some((f, inv))
            }
        };
        Ok(Grading { algebra, frame, labels, group, degrees, homogeneous: OnceLock::new() })
    }

    /// Same algebra and homogeneous basis, new degrees.
    pub(crate) fn relabel(&self, group: AbelianGroup, degrees: Vec<GroupElement>) -> Result<Grading> {
        let mut g = Grading::build(
            self.algebra.clone(),
            None,
            self.labels.clone(),
            group,
            degrees,
        )?;
        g.frame = self.frame.clone();
        if let Some(h) = self.homogeneous.get() {
            let _ = g.homogeneous.set(h.clone());
        }
        Ok(g)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn frame(&self) -> Option<&Matrix> {
        self.frame.as_ref().map(|f| &f.0)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The algebra written on the homogeneous basis.
    pub fn homogeneous_algebra(&self) -> Arc<Algebra> {
        self.homogeneous
            .get_or_init(|| match &self.frame {
                None => self.algebra.clone(),
                Some((f, _)) => Arc::new(
                    self.algebra
                        .rebase(f, self.algebra.name(), self.labels.clone())
                        .expect("frame was checked to be invertible"),
                ),
            })
            .clone()
    }

    /// The `i`-th homogeneous basis vector in canonical coordinates.
    pub fn basis_vector(&self, i: usize) -> SVec {
        match &self.frame {
            None => SVec::basis(i),
            Some((f, _)) => f.row(i),
        }
    }

    /// Canonical coordinates to homogeneous coordinates.
    pub fn to_homogeneous(&self, v: &SVec) -> SVec {
        match &self.frame {
            None => v.clone(),
            Some((_, inv)) => inv.apply(v),
        }
    }

    /// Homogeneous coordinates to canonical coordinates.
    pub fn from_homogeneous(&self, v: &SVec) -> SVec {
        match &self.frame {
            None => v.clone(),
            Some((f, _)) => f.apply(v),
        }
    }

    /// Homogeneous basis indices by degree.
    pub fn components(&self) -> BTreeMap<GroupElement, Vec<usize>> {
        let mut m: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.degrees.iter().enumerate() {
            m.entry(g.clone()).or_default().push(i);
        }
        m
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.components().into_keys().collect()
    }

    /// The component of degree `g`, in canonical coordinates.
    pub fn component(&self, g: &GroupElement) -> Subspace {
        let n = self.dim();
        Subspace::span(
            n,
            self.degrees.iter().enumerate().filter(|(_, d)| *d == g).map(|(i, _)| self.basis_vector(i)),
        )
    }

    /// Projection onto the component of degree `g`, in canonical coordinates.
    pub fn project(&self, v: &SVec, g: &GroupElement) -> SVec {
        let h = self.to_homogeneous(v);
        let kept = SVec::from_terms(h.iter().filter(|(i, _)| &self.degrees[*i] == g).cloned().collect());
        self.from_homogeneous(&kept)
    }
}
