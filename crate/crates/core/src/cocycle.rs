//! N-regular cocycles and their obstructors.
//!
//! A cocycle is a cyclic chain `X_1 → X_2 → … → X_N → X_1` of arrows
//! `f_1, …, f_N` such that going once around the cycle, starting and ending
//! with the same arrow, reproduces that arrow. Composition is read right to
//! left: in `f_2 ∘ f_1`, `f_1` is applied first.
//!
//! Levels are 0-based in the API and 1-based in reports.

use crate::error::{Error, Result};
use crate::exact_linalg::{FieldSpec, Matrix};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCocycle {
    field: FieldSpec,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
}

/// The endomorphisms `e_{X_n}` obtained by composing the full cycle from `X_n`
/// back to itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructorSet {
    obstructors: Vec<Matrix>,
}

impl RegularCocycle {
    /// Checks shapes only: arrow `n` must be `dims[n+1 mod N] × dims[n]`.
    /// Regularity is verified separately by [`verify_regularity`](Self::verify_regularity).
    pub fn new(field: FieldSpec, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self> {
        let n = dims.len();
        if n == 0 {
            return Err(Error::Shape("a cocycle needs at least one level".into()));
        }
        if arrows.len() != n {
            return Err(Error::Shape(format!(
                "{} arrows for {n} objects",
                arrows.len()
            )));
        }
        if let Some(&d) = dims.iter().find(|&&d| d == 0) {
            return Err(Error::Shape(format!("object dimension {d} is not positive")));
        }
        for (i, f) in arrows.iter().enumerate() {
            if f.field() != field {
                return Err(Error::FieldMismatch(field, f.field()));
            }
            let expected = (dims[(i + 1) % n], dims[i]);
            if f.shape() != expected {
                return Err(Error::Shape(format!(
                    "arrow f{} has shape {:?}, expected {:?}",
                    i + 1,
                    f.shape(),
                    expected
                )));
            }
        }
        Ok(RegularCocycle {
            field,
            dims,
            arrows,
        })
    }

    /// The 1-regular cocycle of a single endomorphism (regular iff idempotent).
    pub fn single(f: Matrix) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::NotSquare {
                op: "single-arrow cocycle",
                rows: f.rows(),
                cols: f.cols(),
            });
        }
        Self::new(f.field(), vec![f.rows()], vec![f])
    }

    /// `levels` copies of the same square arrow.
    pub fn constant(levels: usize, f: Matrix) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::NotSquare {
                op: "constant cocycle",
                rows: f.rows(),
                cols: f.cols(),
            });
        }
        Self::new(f.field(), vec![f.rows(); levels], vec![f; levels])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn levels(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.arrows
    }

    /// Entry-level access for perturbation; shapes must be preserved.
    pub fn arrows_mut(&mut self) -> &mut [Matrix] {
        &mut self.arrows
    }

    /// `f_{n-1} ∘ … ∘ f_{n+1} ∘ f_n`: the N arrows of the cycle starting at `X_n`.
    fn cycle_from(&self, n: usize) -> Matrix {
        let big_n = self.levels();
        (1..big_n).fold(self.arrows[n].clone(), |acc, k| {
            self.arrows[(n + k) % big_n]
                .mul(&acc)
                .expect("shapes chain by construction")
        })
    }

    /// Checks `f_n ∘ (f_{n-1} ∘ … ∘ f_n) == f_n` for every `n`.
    pub fn verify_regularity(&self) -> Report {
        let mut report = Report::new();
        for n in 0..self.levels() {
            let around = self.arrows[n]
                .mul(&self.cycle_from(n))
                .expect("shapes chain by construction");
            report
                .compare("regularity", Some(n), &around, &self.arrows[n])
                .expect("both sides are arrow n's shape");
        }
        report
    }

    pub fn is_regular(&self) -> bool {
        self.verify_regularity().passed()
    }

    /// Obstructors `e_{X_n}`; fails with the first violated regularity equation.
    pub fn obstructors(&self) -> Result<ObstructorSet> {
        let report = self.verify_regularity();
        if let Some(c) = report.first_failure() {
            return Err(Error::NotRegular {
                equation: c.level.unwrap_or(0),
            });
        }
        Ok(ObstructorSet {
            obstructors: (0..self.levels()).map(|n| self.cycle_from(n)).collect(),
        })
    }
}

impl ObstructorSet {
    /// Wraps standalone idempotents, for structures given without a cocycle.
    pub fn from_idempotents(obstructors: Vec<Matrix>) -> Result<Self> {
        for (i, e) in obstructors.iter().enumerate() {
            if !e.is_idempotent()? {
                return Err(Error::Verification(format!(
                    "obstructor at level {} is not idempotent",
                    i + 1
                )));
            }
        }
        Ok(ObstructorSet { obstructors })
    }

    pub fn get(&self, n: usize) -> &Matrix {
        &self.obstructors[n]
    }

    pub fn as_slice(&self) -> &[Matrix] {
        &self.obstructors
    }

    pub fn into_vec(self) -> Vec<Matrix> {
        self.obstructors
    }

    pub fn len(&self) -> usize {
        self.obstructors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obstructors.is_empty()
    }

    /// Idempotency and the two intertwining identities
    /// `f_n ∘ e_{X_n} == f_n == e_{X_{n+1}} ∘ f_n`.
    pub fn verify_against(&self, cocycle: &RegularCocycle) -> Result<Report> {
        let big_n = cocycle.levels();
        if self.len() != big_n {
            return Err(Error::Shape(format!(
                "{} obstructors for {big_n} levels",
                self.len()
            )));
        }
        let mut report = Report::new();
        for n in 0..big_n {
            let e = &self.obstructors[n];
            let f = &cocycle.arrows[n];
            report.compare("idempotent", Some(n), &e.mul(e)?, e)?;
            report.compare("intertwine_source", Some(n), &f.mul(e)?, f)?;
            let next = &self.obstructors[(n + 1) % big_n];
            report.compare("intertwine_target", Some(n), &next.mul(f)?, f)?;
        }
        Ok(report)
    }
}

/// Levelwise tensor product `(X_n ⊗ Y_n | f_n ⊗ g_n)`.
pub fn tensor_cocycles(c: &RegularCocycle, d: &RegularCocycle) -> Result<RegularCocycle> {
    if c.field != d.field {
        return Err(Error::FieldMismatch(c.field, d.field));
    }
    if c.levels() != d.levels() {
        return Err(Error::Shape(format!(
            "cannot tensor cocycles with {} and {} levels",
            c.levels(),
            d.levels()
        )));
    }
    let dims = c.dims.iter().zip(&d.dims).map(|(a, b)| a * b).collect();
    let arrows = c
        .arrows
        .iter()
        .zip(&d.arrows)
        .map(|(f, g)| f.kron(g))
        .collect::<Result<Vec<_>>>()?;
    let out = RegularCocycle::new(c.field, dims, arrows)?;
    if c.is_regular() && d.is_regular() && !out.is_regular() {
        return Err(Error::Verification(
            "tensor product of regular cocycles failed regularity".into(),
        ));
    }
    Ok(out)
}

/// Compares `e_{X_n ⊗ Y_n}` (computed from the tensored cocycle) with
/// `e_{X_n} ⊗ e_{Y_n}` at each level.
pub fn verify_obstructor_multiplicativity(
    c: &RegularCocycle,
    d: &RegularCocycle,
) -> Result<Report> {
    let joint = tensor_cocycles(c, d)?.obstructors()?;
    let ec = c.obstructors()?;
    let ed = d.obstructors()?;
    let mut report = Report::new();
    for n in 0..c.levels() {
        let product = ec.get(n).kron(ed.get(n))?;
        report.compare("multiplicativity", Some(n), joint.get(n), &product)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn diag_pair() -> RegularCocycle {
        RegularCocycle::constant(2, Matrix::diag(Q, &[1, 0])).unwrap()
    }

    #[test]
    fn identity_single_level_is_regular() {
        let c = RegularCocycle::single(Matrix::identity(Q, 3)).unwrap();
        assert!(c.verify_regularity().passed());
        assert_eq!(c.obstructors().unwrap().get(0), &Matrix::identity(Q, 3));
    }

    #[test]
    fn projector_pair_is_regular() {
        let c = diag_pair();
        assert!(c.verify_regularity().passed());
        let e = c.obstructors().unwrap();
        assert_eq!(e.get(0), &Matrix::diag(Q, &[1, 0]));
        assert_eq!(e.get(1), &Matrix::diag(Q, &[1, 0]));
    }

    #[test]
    fn nilpotent_fails_first_equation() {
        let f1 = Matrix::from_rows(Q, &[&[0, 1], &[0, 0]]);
        let c = RegularCocycle::new(Q, vec![2, 2], vec![f1, Matrix::identity(Q, 2)]).unwrap();
        let report = c.verify_regularity();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.level, Some(1));
        let w = fail.witness.as_ref().unwrap();
        assert_eq!((w.row, w.col, w.lhs.as_str(), w.rhs.as_str()), (0, 1, "0", "1"));
        assert_eq!(c.obstructors(), Err(Error::NotRegular { equation: 1 }));
    }

    #[test]
    fn single_level_reduces_to_idempotent() {
        let p = Matrix::from_rows(Q, &[&[1, 1], &[0, 0]]);
        assert!(p.is_idempotent().unwrap());
        let c = RegularCocycle::single(p.clone()).unwrap();
        assert_eq!(c.obstructors().unwrap().get(0), &p);
        let not_idem = Matrix::from_rows(Q, &[&[2, 0], &[0, 0]]);
        assert!(!RegularCocycle::single(not_idem).unwrap().is_regular());
    }

    #[test]
    fn identity_chain_of_three() {
        let c = RegularCocycle::constant(3, Matrix::identity(GF2, 2)).unwrap();
        let e = c.obstructors().unwrap();
        assert!(e.as_slice().iter().all(|m| *m == Matrix::identity(GF2, 2)));
    }

    #[test]
    fn rectangular_chain() {
        // X1 = Q^1 → X2 = Q^2 → X1: f2 ∘ f1 = 1, so both equations hold.
        let f1 = Matrix::from_rows(Q, &[&[1], &[2]]);
        let f2 = Matrix::from_rows(Q, &[&[1, 0]]);
        let c = RegularCocycle::new(Q, vec![1, 2], vec![f1, f2]).unwrap();
        let e = c.obstructors().unwrap();
        assert_eq!(e.get(0), &Matrix::identity(Q, 1));
        assert_eq!(e.get(1), &Matrix::from_rows(Q, &[&[1, 0], &[2, 0]]));
        assert!(e.verify_against(&c).unwrap().passed());
    }

    #[test]
    fn shape_errors() {
        assert!(RegularCocycle::new(Q, vec![], vec![]).is_err());
        let bad = RegularCocycle::new(Q, vec![2, 3], vec![Matrix::identity(Q, 2), Matrix::identity(Q, 2)]);
        assert!(matches!(bad, Err(Error::Shape(_))));
        let mixed = RegularCocycle::new(Q, vec![2], vec![Matrix::identity(GF2, 2)]);
        assert!(matches!(mixed, Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn tensor_identities() {
        let a = RegularCocycle::single(Matrix::identity(Q, 2)).unwrap();
        let b = RegularCocycle::single(Matrix::identity(Q, 3)).unwrap();
        let t = tensor_cocycles(&a, &b).unwrap();
        assert_eq!(t.arrows()[0], Matrix::identity(Q, 6));
        assert!(verify_obstructor_multiplicativity(&a, &b).unwrap().passed());
    }

    #[test]
    fn tensor_projector_pair() {
        let c = diag_pair();
        let t = tensor_cocycles(&c, &c).unwrap();
        assert!(t.arrows().iter().all(|f| *f == Matrix::diag(Q, &[1, 0, 0, 0])));
        assert!(verify_obstructor_multiplicativity(&c, &c).unwrap().passed());
    }

    #[test]
    fn tensor_level_mismatch() {
        let a = RegularCocycle::single(Matrix::identity(Q, 2)).unwrap();
        assert!(tensor_cocycles(&a, &diag_pair()).is_err());
    }
}
