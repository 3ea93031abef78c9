//! Obstructed bialgebras, convolution, regular antipodes and modules.

use crate::braiding::RegularBraiding;
use crate::cocycle::RegularCocycle;
use crate::error::{Error, Result};
use crate::exact_linalg::{FieldSpec, Matrix};
use crate::report::Report;
use crate::ybop::{ObstructedAlgebra, ObstructedCoalgebra, RegularYBOperator};

/// An algebra and a coalgebra on the same carriers sharing obstructors.
/// Units are `d × 1` and counits `1 × d` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructedBialgebra {
    pub algebra: ObstructedAlgebra,
    pub coalgebra: ObstructedCoalgebra,
    pub units: Option<Vec<Matrix>>,
    pub counits: Option<Vec<Matrix>>,
    /// Also check `Δ∘m = (m⊗m)∘(e⊗τ⊗e)∘(Δ⊗Δ)`. Off by default.
    pub check_compatibility: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodePair {
    pub antipodes: Vec<Matrix>,
    pub star_antipodes: Option<Vec<Matrix>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionSide {
    /// `ρ : H ⊗ Q → Q`
    Left,
    /// `ρ : P ⊗ H → P`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructedModuleAction {
    pub side: ActionSide,
    pub obstructors: Vec<Matrix>,
    pub actions: Vec<Matrix>,
}

impl ObstructedBialgebra {
    pub fn new(
        mults: Vec<Matrix>,
        comults: Vec<Matrix>,
        obstructors: Vec<Matrix>,
        units: Option<Vec<Matrix>>,
        counits: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        let algebra = ObstructedAlgebra::new(mults, obstructors.clone(), true)?;
        let coalgebra = ObstructedCoalgebra::new(comults, obstructors, true)?;
        let levels = algebra.levels();
        for (what, maps, shape) in [
            ("eta", &units, (1usize, 0usize)),
            ("eps", &counits, (0, 1)),
        ] {
            let Some(maps) = maps else { continue };
            if maps.len() != levels {
                return Err(Error::Shape(format!("{} {what} maps for {levels} levels", maps.len())));
            }
            for (n, u) in maps.iter().enumerate() {
                let d = algebra.dim(n);
                let expected = if shape.0 == 1 { (d, 1) } else { (1, d) };
                if u.shape() != expected || u.field() != algebra.field {
                    return Err(Error::Shape(format!(
                        "{what} at level {} has shape {:?}, expected {:?}",
                        n + 1,
                        u.shape(),
                        expected
                    )));
                }
            }
        }
        Ok(ObstructedBialgebra {
            algebra,
            coalgebra,
            units,
            counits,
            check_compatibility: false,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn levels(&self) -> usize {
        self.algebra.levels()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.algebra.dim(n)
    }

    pub fn obstructors(&self) -> &[Matrix] {
        &self.algebra.obstructors
    }

    pub fn obstructor(&self, n: usize) -> &Matrix {
        &self.algebra.obstructors[n]
    }

    /// Both consistency conditions, associativity, coassociativity and,
    /// if enabled, the multiplicative compatibility of `Δ`.
    pub fn verify(&self) -> Result<Report> {
        let mut report = self.algebra.verify()?;
        let co = self.coalgebra.verify()?;
        report.checks.extend(co.checks.into_iter().filter(|c| c.axiom != "idempotent"));
        if self.check_compatibility {
            for n in 0..self.levels() {
                let (m, d, e) = (
                    &self.algebra.mults[n],
                    &self.coalgebra.comults[n],
                    self.obstructor(n),
                );
                let dim = self.dim(n);
                let middle = e
                    .kron(&Matrix::swap(dim, dim, self.field()))?
                    .kron(e)?;
                let lhs = d.mul(m)?;
                let rhs = Matrix::compose(&[&m.kron(m)?, &middle, &d.kron(d)?])?;
                report.compare("compatibility", Some(n), &lhs, &rhs)?;
            }
        }
        Ok(report)
    }

    /// `s ⋆ t = m ∘ (s ⊗ t) ∘ Δ` at level `n`.
    pub fn convolution(&self, n: usize, s: &Matrix, t: &Matrix) -> Result<Matrix> {
        let d = self.dim(n);
        for x in [s, t] {
            if x.shape() != (d, d) {
                return Err(Error::DimensionMismatch {
                    op: "convolution",
                    left: (d, d),
                    right: x.shape(),
                });
            }
        }
        Matrix::compose(&[&self.algebra.mults[n], &s.kron(t)?, &self.coalgebra.comults[n]])
    }

    /// `((a₁ ⋆ a₂) ⋆ a₃) ⋆ …`
    pub fn convolve_left(&self, n: usize, factors: &[&Matrix]) -> Result<Matrix> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Shape("empty convolution".into()))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, f| self.convolution(n, &acc, f))
    }

    /// `… ⋆ (a₋₂ ⋆ a₋₁)`
    pub fn convolve_right(&self, n: usize, factors: &[&Matrix]) -> Result<Matrix> {
        let (last, rest) = factors
            .split_last()
            .ok_or_else(|| Error::Shape("empty convolution".into()))?;
        rest.iter()
            .rev()
            .try_fold((*last).clone(), |acc, f| self.convolution(n, f, &acc))
    }

    /// `η_n ∘ ε_n`, when both exist.
    pub fn unit_counit(&self, n: usize) -> Option<Result<Matrix>> {
        let eta = self.units.as_ref()?.get(n)?;
        let eps = self.counits.as_ref()?.get(n)?;
        Some(eta.mul(eps))
    }
}

pub fn convolution(h: &ObstructedBialgebra, n: usize, s: &Matrix, t: &Matrix) -> Result<Matrix> {
    h.convolution(n, s, t)
}

impl AntipodePair {
    pub fn new(antipodes: Vec<Matrix>, star_antipodes: Option<Vec<Matrix>>) -> Self {
        AntipodePair {
            antipodes,
            star_antipodes,
        }
    }

    fn check(&self, h: &ObstructedBialgebra) -> Result<()> {
        let sets = std::iter::once(&self.antipodes).chain(self.star_antipodes.as_ref());
        for set in sets {
            if set.len() != h.levels() {
                return Err(Error::Missing(format!(
                    "{} antipodes for {} levels",
                    set.len(),
                    h.levels()
                )));
            }
            for (n, s) in set.iter().enumerate() {
                if s.shape() != (h.dim(n), h.dim(n)) || s.field() != h.field() {
                    return Err(Error::Shape(format!(
                        "antipode at level {} has shape {:?}",
                        n + 1,
                        s.shape()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Checks one convolution identity `lhs = target` with left-parenthesized
/// products, warning if the right-parenthesized product differs.
fn convolution_identity(
    report: &mut Report,
    h: &ObstructedBialgebra,
    axiom: &str,
    n: usize,
    factors: &[&Matrix],
    target: &Matrix,
) -> Result<()> {
    let left = h.convolve_left(n, factors)?;
    let right = h.convolve_right(n, factors)?;
    if left != right {
        report.warn(format!(
            "{axiom} level={}: left and right parenthesizations of the convolution differ",
            n + 1
        ));
    }
    report.compare(axiom, Some(n), &left, target)?;
    Ok(())
}

/// `e⋆S⋆e = e` and `S⋆e⋆S = S`; with star antipodes, the three-equation
/// system `e⋆S⋆S*⋆e = e`, `S⋆S*⋆e⋆S = S`, `S*⋆e⋆S⋆S* = S*` instead.
pub fn verify_regular_antipode(h: &ObstructedBialgebra, a: &AntipodePair) -> Result<Report> {
    a.check(h)?;
    let mut report = Report::new();
    for n in 0..h.levels() {
        let e = h.obstructor(n);
        let s = &a.antipodes[n];
        match &a.star_antipodes {
            None => {
                convolution_identity(&mut report, h, "se2_obstructor", n, &[e, s, e], e)?;
                convolution_identity(&mut report, h, "se2_antipode", n, &[s, e, s], s)?;
            }
            Some(stars) => {
                let t = &stars[n];
                convolution_identity(&mut report, h, "star_obstructor", n, &[e, s, t, e], e)?;
                convolution_identity(&mut report, h, "star_antipode", n, &[s, t, e, s], s)?;
                convolution_identity(&mut report, h, "star_partner", n, &[t, e, s, t], t)?;
            }
        }
    }
    Ok(report)
}

/// `m∘(S⊗e)∘Δ = m∘(e⊗S)∘Δ = η∘ε`.
pub fn verify_unit_counit_antipode(h: &ObstructedBialgebra, a: &AntipodePair) -> Result<Report> {
    a.check(h)?;
    let mut report = Report::new();
    for n in 0..h.levels() {
        let target = h
            .unit_counit(n)
            .ok_or_else(|| Error::Missing("bialgebra has no unit/counit".into()))??;
        let e = h.obstructor(n);
        let s = &a.antipodes[n];
        report.compare("antipode_left", Some(n), &h.convolution(n, s, e)?, &target)?;
        report.compare("antipode_right", Some(n), &h.convolution(n, e, s)?, &target)?;
    }
    Ok(report)
}

impl ObstructedModuleAction {
    pub fn new(side: ActionSide, obstructors: Vec<Matrix>, actions: Vec<Matrix>) -> Self {
        ObstructedModuleAction {
            side,
            obstructors,
            actions,
        }
    }

    /// `H` acting on itself through `m`, with obstructor `e_H`.
    pub fn regular(h: &ObstructedBialgebra, side: ActionSide) -> Self {
        Self::new(side, h.obstructors().to_vec(), h.algebra.mults.clone())
    }

    pub fn dim(&self, n: usize) -> usize {
        self.obstructors[n].rows()
    }
}

/// Right: `e_P∘ρ == ρ∘(e_P⊗e_H)`; left: `e_Q∘ρ == ρ∘(e_H⊗e_Q)`.
pub fn verify_module_action(
    m: &ObstructedModuleAction,
    h: &ObstructedBialgebra,
) -> Result<Report> {
    if m.obstructors.len() != h.levels() || m.actions.len() != h.levels() {
        return Err(Error::Shape(format!(
            "module has {} obstructors and {} actions for {} levels",
            m.obstructors.len(),
            m.actions.len(),
            h.levels()
        )));
    }
    let mut report = Report::new();
    for n in 0..h.levels() {
        let (ep, rho, eh) = (&m.obstructors[n], &m.actions[n], h.obstructor(n));
        if !ep.is_square() || rho.shape() != (ep.rows(), ep.rows() * eh.rows()) {
            return Err(Error::Shape(format!(
                "module action at level {} has shape {:?}",
                n + 1,
                rho.shape()
            )));
        }
        report.compare("module_idempotent", Some(n), &ep.mul(ep)?, ep)?;
        let inner = match m.side {
            ActionSide::Right => ep.kron(eh)?,
            ActionSide::Left => eh.kron(ep)?,
        };
        report.compare("module_compat", Some(n), &ep.mul(rho)?, &rho.mul(&inner)?)?;
    }
    Ok(report)
}

fn require(report: Report, what: &str) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::Verification(format!("{what}: {c}"))),
    }
}

/// `B_n = τ ∘ R^{PQ}_n : P_n ⊗ Q_n → Q_n ⊗ P_n`, one braiding per level.
///
/// `induced` is the operator through which `R_n` acts on `P_n ⊗ Q_n`; when
/// `None`, both modules must live on the carriers of `h` and `R_n` itself is
/// used. Each level's braiding is between the single-arrow cocycles of the
/// module obstructors, so its naturality square is commutation with
/// `e_P ⊗ e_Q`. Star components are the reflexive generalized inverses.
pub fn braiding_from_rmatrix(
    h: &ObstructedBialgebra,
    r: &RegularYBOperator,
    p: &ObstructedModuleAction,
    q: &ObstructedModuleAction,
    induced: Option<&[Matrix]>,
) -> Result<Vec<RegularBraiding>> {
    require(h.verify()?, "bialgebra")?;
    require(r.verify(h.obstructors())?, "R-matrix")?;
    require(verify_module_action(p, h)?, "module P")?;
    require(verify_module_action(q, h)?, "module Q")?;
    let field = h.field();
    let mut out = Vec::with_capacity(h.levels());
    for n in 0..h.levels() {
        let (dp, dq) = (p.dim(n), q.dim(n));
        let op = match induced {
            Some(ops) => ops
                .get(n)
                .cloned()
                .ok_or_else(|| Error::Missing(format!("no induced operator at level {}", n + 1)))?,
            None => {
                if dp != h.dim(n) || dq != h.dim(n) {
                    return Err(Error::Missing(
                        "modules differ from the regular representation; supply the induced operator".into(),
                    ));
                }
                r.operators[n].clone()
            }
        };
        if op.shape() != (dp * dq, dp * dq) {
            return Err(Error::Shape(format!(
                "induced operator at level {} has shape {:?}",
                n + 1,
                op.shape()
            )));
        }
        let b = Matrix::swap(dp, dq, field).mul(&op)?;
        let braiding = RegularBraiding::new(
            RegularCocycle::single(p.obstructors[n].clone())?,
            RegularCocycle::single(q.obstructors[n].clone())?,
            vec![b],
            None,
        )?
        .with_ginverse_stars();
        require(braiding.verify_naturality()?, "induced braiding")?;
        out.push(braiding);
    }
    Ok(out)
}
