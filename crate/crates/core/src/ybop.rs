//! Obstructed algebras and coalgebras with regular Yang-Baxter operators.
//!
//! All structures are families indexed by a level `n = 1..N`; each level has
//! a carrier `A_n`, an idempotent obstructor `e_n` standing in for the
//! identity, and its structure maps.

use crate::error::{Error, Result};
use crate::exact_linalg::{FieldSpec, Matrix};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructedAlgebra {
    pub field: FieldSpec,
    pub mults: Vec<Matrix>,
    pub obstructors: Vec<Matrix>,
    /// Whether obstructed associativity is claimed and therefore checked.
    pub associative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructedCoalgebra {
    pub field: FieldSpec,
    pub comults: Vec<Matrix>,
    pub obstructors: Vec<Matrix>,
    /// Whether obstructed coassociativity is claimed and therefore checked.
    pub coassociative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularYBOperator {
    pub operators: Vec<Matrix>,
    pub star_operators: Option<Vec<Matrix>>,
}

fn check_obstructors(field: FieldSpec, obstructors: &[Matrix]) -> Result<()> {
    if obstructors.is_empty() {
        return Err(Error::Shape("at least one level is required".into()));
    }
    for (n, e) in obstructors.iter().enumerate() {
        if e.field() != field {
            return Err(Error::FieldMismatch(field, e.field()));
        }
        if !e.is_square() || e.rows() == 0 {
            return Err(Error::Shape(format!(
                "obstructor at level {} has shape {:?}",
                n + 1,
                e.shape()
            )));
        }
    }
    Ok(())
}

fn check_maps(
    what: &str,
    field: FieldSpec,
    maps: &[Matrix],
    obstructors: &[Matrix],
    shape: impl Fn(usize) -> (usize, usize),
) -> Result<()> {
    if maps.len() != obstructors.len() {
        return Err(Error::Shape(format!(
            "{} {what} maps for {} levels",
            maps.len(),
            obstructors.len()
        )));
    }
    for (n, m) in maps.iter().enumerate() {
        let d = obstructors[n].rows();
        if m.field() != field {
            return Err(Error::FieldMismatch(field, m.field()));
        }
        if m.shape() != shape(d) {
            return Err(Error::Shape(format!(
                "{what} at level {} has shape {:?}, expected {:?}",
                n + 1,
                m.shape(),
                shape(d)
            )));
        }
    }
    Ok(())
}

impl ObstructedAlgebra {
    pub fn new(mults: Vec<Matrix>, obstructors: Vec<Matrix>, associative: bool) -> Result<Self> {
        let field = obstructors
            .first()
            .map(Matrix::field)
            .ok_or_else(|| Error::Shape("at least one level is required".into()))?;
        check_obstructors(field, &obstructors)?;
        check_maps("m", field, &mults, &obstructors, |d| (d, d * d))?;
        Ok(ObstructedAlgebra {
            field,
            mults,
            obstructors,
            associative,
        })
    }

    pub fn levels(&self) -> usize {
        self.obstructors.len()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.obstructors[n].rows()
    }

    pub fn verify(&self) -> Result<Report> {
        let mut report = Report::new();
        for (n, (m, e)) in self.mults.iter().zip(&self.obstructors).enumerate() {
            report.compare("idempotent", Some(n), &e.mul(e)?, e)?;
            let ee = e.kron(e)?;
            report.compare("me", Some(n), &e.mul(m)?, &m.mul(&ee)?)?;
            if self.associative {
                let lhs = m.mul(&m.kron(e)?)?;
                let rhs = m.mul(&e.kron(m)?)?;
                report.compare("associativity", Some(n), &lhs, &rhs)?;
            }
        }
        Ok(report)
    }
}

impl ObstructedCoalgebra {
    pub fn new(comults: Vec<Matrix>, obstructors: Vec<Matrix>, coassociative: bool) -> Result<Self> {
        let field = obstructors
            .first()
            .map(Matrix::field)
            .ok_or_else(|| Error::Shape("at least one level is required".into()))?;
        check_obstructors(field, &obstructors)?;
        check_maps("Delta", field, &comults, &obstructors, |d| (d * d, d))?;
        Ok(ObstructedCoalgebra {
            field,
            comults,
            obstructors,
            coassociative,
        })
    }

    pub fn levels(&self) -> usize {
        self.obstructors.len()
    }

    pub fn verify(&self) -> Result<Report> {
        let mut report = Report::new();
        for (n, (d, e)) in self.comults.iter().zip(&self.obstructors).enumerate() {
            report.compare("idempotent", Some(n), &e.mul(e)?, e)?;
            let ee = e.kron(e)?;
            report.compare("comult_consistency", Some(n), &d.mul(e)?, &ee.mul(d)?)?;
            if self.coassociative {
                let lhs = d.kron(e)?.mul(d)?;
                let rhs = e.kron(d)?.mul(d)?;
                report.compare("coassociativity", Some(n), &lhs, &rhs)?;
            }
        }
        Ok(report)
    }
}

impl RegularYBOperator {
    pub fn new(operators: Vec<Matrix>, star_operators: Option<Vec<Matrix>>) -> Self {
        RegularYBOperator {
            operators,
            star_operators,
        }
    }

    /// Identity operator `I_{d²}` at each level of `obstructors`.
    pub fn identity(obstructors: &[Matrix]) -> Self {
        Self::new(
            obstructors
                .iter()
                .map(|e| Matrix::identity(e.field(), e.rows() * e.rows()))
                .collect(),
            None,
        )
    }

    fn check_shapes(&self, obstructors: &[Matrix]) -> Result<()> {
        let field = obstructors
            .first()
            .map(Matrix::field)
            .ok_or_else(|| Error::Shape("at least one level is required".into()))?;
        check_maps("R", field, &self.operators, obstructors, |d| (d * d, d * d))?;
        if let Some(stars) = &self.star_operators {
            check_maps("R*", field, stars, obstructors, |d| (d * d, d * d))?;
        }
        Ok(())
    }

    /// Operator/obstructor commutation, the regular Yang-Baxter equation on
    /// `A ⊗ A ⊗ A`, and the star identities when stars are present.
    pub fn verify(&self, obstructors: &[Matrix]) -> Result<Report> {
        self.check_shapes(obstructors)?;
        let mut report = Report::new();
        for (n, (r, e)) in self.operators.iter().zip(obstructors).enumerate() {
            let ee = e.kron(e)?;
            report.compare("re", Some(n), &r.mul(&ee)?, &ee.mul(r)?)?;
            let (lhs, rhs) = ybr_sides(e, r)?;
            report.compare("ybr", Some(n), &lhs, &rhs)?;
            if let Some(stars) = &self.star_operators {
                let s = &stars[n];
                report.compare("rrr1", Some(n), &Matrix::compose(&[r, s, r])?, r)?;
                report.compare("rrr2", Some(n), &Matrix::compose(&[s, r, s])?, s)?;
            }
        }
        Ok(report)
    }

    /// The pair with roles exchanged: `(R*, R)`.
    pub fn swapped_roles(&self) -> Option<Self> {
        self.star_operators.as_ref().map(|stars| RegularYBOperator {
            operators: stars.clone(),
            star_operators: Some(self.operators.clone()),
        })
    }
}

/// `(e⊗R)(R⊗e)(e⊗R)` and `(R⊗e)(e⊗R)(R⊗e)` on `A ⊗ A ⊗ A`.
pub fn ybr_sides(e: &Matrix, r: &Matrix) -> Result<(Matrix, Matrix)> {
    let er = e.kron(r)?;
    let re = r.kron(e)?;
    Ok((
        Matrix::compose(&[&er, &re, &er])?,
        Matrix::compose(&[&re, &er, &re])?,
    ))
}

pub fn verify_algebra(a: &ObstructedAlgebra) -> Result<Report> {
    a.verify()
}

pub fn verify_coalgebra(c: &ObstructedCoalgebra) -> Result<Report> {
    c.verify()
}

pub fn verify_yb_operator(a: &ObstructedAlgebra, r: &RegularYBOperator) -> Result<Report> {
    let mut report = a.verify()?;
    report.extend(r.verify(&a.obstructors)?);
    Ok(report)
}

fn require(report: &Report, what: &str) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::Verification(format!("{what}: {c}"))),
    }
}

/// `m_R = m ∘ R`, same obstructors.
///
/// Obstructed associativity is not preserved by twisting in general: the
/// result claims it only if the input did and it still holds.
pub fn twist_multiplication(a: &ObstructedAlgebra, r: &RegularYBOperator) -> Result<ObstructedAlgebra> {
    require(&verify_yb_operator(a, r)?, "algebra/operator")?;
    let mults = a
        .mults
        .iter()
        .zip(&r.operators)
        .map(|(m, rn)| m.mul(rn))
        .collect::<Result<Vec<_>>>()?;
    let mut out = ObstructedAlgebra::new(mults, a.obstructors.clone(), false)?;
    if a.associative {
        let mut probe = out.clone();
        probe.associative = true;
        out.associative = probe.verify()?.passed();
    }
    require(&out.verify()?, "twisted algebra")?;
    Ok(out)
}

/// `Δ_R = R ∘ Δ`, same obstructors; coassociativity handled as in
/// [`twist_multiplication`].
pub fn twist_comultiplication(
    c: &ObstructedCoalgebra,
    r: &RegularYBOperator,
) -> Result<ObstructedCoalgebra> {
    require(&c.verify()?, "coalgebra")?;
    require(&r.verify(&c.obstructors)?, "operator")?;
    let comults = c
        .comults
        .iter()
        .zip(&r.operators)
        .map(|(d, rn)| rn.mul(d))
        .collect::<Result<Vec<_>>>()?;
    let mut out = ObstructedCoalgebra::new(comults, c.obstructors.clone(), false)?;
    if c.coassociative {
        let mut probe = out.clone();
        probe.coassociative = true;
        out.coassociative = probe.verify()?.passed();
    }
    require(&out.verify()?, "twisted coalgebra")?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn e() -> Matrix {
        Matrix::diag(Q, &[1, 0])
    }

    #[test]
    fn group_algebra_passes() {
        let a = fixtures::group_algebra_z2(GF2).algebra;
        assert!(a.verify().unwrap().passed());
    }

    #[test]
    fn projector_algebra_passes() {
        let a = fixtures::projector_bialgebra(Q).algebra;
        let report = a.verify().unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.axiom_passed("associativity"), Some(true));
    }

    #[test]
    fn projector_with_group_multiplication_fails_me() {
        let m = fixtures::group_algebra_z2(Q).algebra.mults[0].clone();
        let a = ObstructedAlgebra::new(vec![m], vec![e()], false).unwrap();
        let report = a.verify().unwrap();
        assert_eq!(report.axiom_passed("me"), Some(false));
    }

    #[test]
    fn associativity_only_checked_when_declared() {
        // e0·e1 = e0, e1·e0 = e1, e1·e1 = 0: (e0e1)e1 = e0 but e0(e1e1) = 0
        let skew = Matrix::from_rows(Q, &[&[1, 1, 0, 0], &[0, 0, 1, 0]]);
        let mut a = ObstructedAlgebra::new(vec![skew], vec![Matrix::identity(Q, 2)], false).unwrap();
        let report = a.verify().unwrap();
        assert!(report.passed());
        assert_eq!(report.axiom_passed("associativity"), None);
        a.associative = true;
        assert_eq!(a.verify().unwrap().axiom_passed("associativity"), Some(false));
    }

    #[test]
    fn classical_swap_operator() {
        let id = Matrix::identity(Q, 2);
        let r = RegularYBOperator::new(vec![Matrix::swap(2, 2, Q)], None);
        assert!(r.verify(&[id]).unwrap().passed());
    }

    #[test]
    fn projector_operators_pass_ybr() {
        let ee = e().kron(&e()).unwrap();
        let r = RegularYBOperator::new(vec![ee.clone()], Some(vec![ee]));
        assert!(r.verify(&[e()]).unwrap().passed());

        let tau = Matrix::swap(2, 2, Q);
        let (lhs, rhs) = ybr_sides(&e(), &tau).unwrap();
        let line = Matrix::diag(Q, &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(lhs, line);
        assert_eq!(rhs, line);
    }

    #[test]
    fn operator_must_commute_with_obstructor() {
        let bad = Matrix::from_rows(Q, &[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0]]);
        let report = RegularYBOperator::new(vec![bad], None).verify(&[e()]).unwrap();
        assert_eq!(report.axiom_passed("re"), Some(false));
    }

    #[test]
    fn star_roles_swap() {
        let r = Matrix::from_rows(Q, &[&[1, 2, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let s = crate::exact_linalg::reflexive_ginverse(&r);
        let op = RegularYBOperator::new(vec![r], Some(vec![s]));
        let id = [Matrix::identity(Q, 2)];
        let direct = op.verify(&id).unwrap();
        let swapped = op.swapped_roles().unwrap().verify(&id).unwrap();
        assert_eq!(direct.axiom_passed("rrr1"), Some(true));
        assert_eq!(direct.axiom_passed("rrr2"), Some(true));
        assert_eq!(swapped.axiom_passed("rrr1"), Some(true));
        assert_eq!(swapped.axiom_passed("rrr2"), Some(true));
    }

    #[test]
    fn twist_by_identity_is_noop() {
        let a = fixtures::projector_bialgebra(Q).algebra;
        let twisted = twist_multiplication(&a, &RegularYBOperator::identity(&a.obstructors)).unwrap();
        assert_eq!(twisted, a);
    }

    #[test]
    fn twist_projector_by_projector() {
        let a = fixtures::projector_bialgebra(Q).algebra;
        let ee = e().kron(&e()).unwrap();
        let twisted = twist_multiplication(&a, &RegularYBOperator::new(vec![ee], None)).unwrap();
        assert_eq!(twisted.mults, a.mults);
    }

    #[test]
    fn twist_commutative_by_swap() {
        let a = fixtures::group_algebra_z2(GF2).algebra;
        let r = RegularYBOperator::new(vec![Matrix::swap(2, 2, GF2)], None);
        let twisted = twist_multiplication(&a, &r).unwrap();
        assert_eq!(twisted, a);
        assert!(twisted.associative);
    }

    #[test]
    fn twist_rejects_unverified_input() {
        let a = fixtures::projector_bialgebra(Q).algebra;
        let bad = Matrix::from_rows(Q, &[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0]]);
        let r = RegularYBOperator::new(vec![bad], None);
        assert!(matches!(twist_multiplication(&a, &r), Err(Error::Verification(_))));
    }

    #[test]
    fn coalgebra_cases() {
        let grouplike = fixtures::group_algebra_z2(Q).coalgebra;
        assert!(grouplike.verify().unwrap().passed());
        let proj = fixtures::projector_bialgebra(Q).coalgebra;
        assert!(proj.verify().unwrap().passed());

        // Δ(e1) = e0⊗e0 although e kills e1
        let delta = Matrix::from_rows(Q, &[&[1, 1], &[0, 0], &[0, 0], &[0, 0]]);
        let bad = ObstructedCoalgebra::new(vec![delta], vec![e()], false).unwrap();
        assert_eq!(bad.verify().unwrap().axiom_passed("comult_consistency"), Some(false));
    }

    #[test]
    fn coalgebra_twists() {
        let grouplike = fixtures::group_algebra_z2(Q).coalgebra;
        let r = RegularYBOperator::new(vec![Matrix::swap(2, 2, Q)], None);
        assert_eq!(twist_comultiplication(&grouplike, &r).unwrap(), grouplike);
        assert_eq!(
            twist_comultiplication(&grouplike, &RegularYBOperator::identity(&grouplike.obstructors)).unwrap(),
            grouplike
        );

        let proj = fixtures::projector_bialgebra(Q).coalgebra;
        let ee = e().kron(&e()).unwrap();
        let twisted = twist_comultiplication(&proj, &RegularYBOperator::new(vec![ee], None)).unwrap();
        assert_eq!(twisted.comults, proj.comults);
    }

    #[test]
    fn shape_checks() {
        assert!(ObstructedAlgebra::new(vec![Matrix::identity(Q, 2)], vec![e()], false).is_err());
        assert!(ObstructedAlgebra::new(vec![], vec![], false).is_err());
        let r = RegularYBOperator::new(vec![Matrix::identity(Q, 3)], None);
        assert!(r.verify(&[e()]).is_err());
    }
}
