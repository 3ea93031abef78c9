//! Regular braidings, triple maps, prebraidings and the component
//! Yang-Baxter equation.
//!
//! A regular braiding between cocycles `X·` and `Y·` is a family
//! `B_n : X_n ⊗ Y_n → Y_n ⊗ X_n` commuting with the cocycle arrows. Instead of
//! an inverse it carries star partners `B*_n : Y_n ⊗ X_n → X_n ⊗ Y_n` with
//! `B ∘ B* ∘ B = B` (and, in reflexive mode, `B* ∘ B ∘ B* = B*`).
//!
//! Triple maps replace the identity factors of the classical half-braidings
//! by obstructors:
//!
//! ```text
//! T^L_{a,b,c} = e_a ⊗ B_{b,c} : a ⊗ b ⊗ c → a ⊗ c ⊗ b
//! T^R_{a,b,c} = B_{a,b} ⊗ e_c : a ⊗ b ⊗ c → b ⊗ a ⊗ c
//! ```
//!
//! where `a, b, c` name which cocycle sits in each tensor slot.

use crate::cocycle::{tensor_cocycles, ObstructorSet, RegularCocycle};
use crate::error::{Error, Result};
use crate::exact_linalg::{reflexive_ginverse, FieldSpec, Matrix};
use crate::report::Report;

/// Which identities a stored star partner must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StarMode {
    /// Both `B∘B*∘B = B` and `B*∘B∘B* = B*`.
    #[default]
    Reflexive,
    /// Only `B∘B*∘B = B`.
    Inner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularBraiding {
    left: RegularCocycle,
    right: RegularCocycle,
    components: Vec<Matrix>,
    star_components: Option<Vec<Matrix>>,
}

fn check_components(
    what: &str,
    field: FieldSpec,
    comps: &[Matrix],
    shapes: impl Fn(usize) -> (usize, usize),
) -> Result<()> {
    for (n, m) in comps.iter().enumerate() {
        if m.field() != field {
            return Err(Error::FieldMismatch(field, m.field()));
        }
        if m.shape() != shapes(n) {
            return Err(Error::Shape(format!(
                "{what} at level {} has shape {:?}, expected {:?}",
                n + 1,
                m.shape(),
                shapes(n)
            )));
        }
    }
    Ok(())
}

impl RegularBraiding {
    pub fn new(
        left: RegularCocycle,
        right: RegularCocycle,
        components: Vec<Matrix>,
        star_components: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        let levels = left.levels();
        if right.levels() != levels {
            return Err(Error::Shape(format!(
                "cocycles have {} and {} levels",
                levels,
                right.levels()
            )));
        }
        if left.field() != right.field() {
            return Err(Error::FieldMismatch(left.field(), right.field()));
        }
        if components.len() != levels {
            return Err(Error::Shape(format!(
                "{} braiding components for {levels} levels",
                components.len()
            )));
        }
        let dx = left.dims().to_vec();
        let dy = right.dims().to_vec();
        check_components("B", left.field(), &components, |n| {
            (dy[n] * dx[n], dx[n] * dy[n])
        })?;
        if let Some(stars) = &star_components {
            if stars.len() != levels {
                return Err(Error::Shape(format!(
                    "{} star components for {levels} levels",
                    stars.len()
                )));
            }
            check_components("B*", left.field(), stars, |n| (dx[n] * dy[n], dy[n] * dx[n]))?;
        }
        Ok(RegularBraiding {
            left,
            right,
            components,
            star_components,
        })
    }

    /// The transposition `τ` at every level.
    pub fn transposition(left: RegularCocycle, right: RegularCocycle) -> Result<Self> {
        let field = left.field();
        let comps = left
            .dims()
            .iter()
            .zip(right.dims())
            .map(|(&a, &b)| Matrix::swap(a, b, field))
            .collect();
        Self::new(left, right, comps, None)
    }

    pub fn left(&self) -> &RegularCocycle {
        &self.left
    }

    pub fn right(&self) -> &RegularCocycle {
        &self.right
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn star_components(&self) -> Option<&[Matrix]> {
        self.star_components.as_deref()
    }

    pub fn levels(&self) -> usize {
        self.components.len()
    }

    /// Every stored matrix, for perturbation; shapes must be preserved.
    pub fn matrices_mut(&mut self) -> Vec<&mut Matrix> {
        let mut out: Vec<&mut Matrix> = self.left.arrows_mut().iter_mut().collect();
        out.extend(self.right.arrows_mut().iter_mut());
        out.extend(self.components.iter_mut());
        out.extend(self.star_components.iter_mut().flatten());
        out
    }

    /// Replaces the star components with the deterministic reflexive
    /// generalized inverses of the components.
    pub fn with_ginverse_stars(mut self) -> Self {
        self.star_components = Some(self.components.iter().map(reflexive_ginverse).collect());
        self
    }

    /// `B_{n+1} ∘ (f_n ⊗ g_n) == (g_n ⊗ f_n) ∘ B_n` for every level, indices mod N.
    pub fn verify_naturality(&self) -> Result<Report> {
        let big_n = self.levels();
        let mut report = Report::new();
        for n in 0..big_n {
            let f = &self.left.arrows()[n];
            let g = &self.right.arrows()[n];
            let lhs = self.components[(n + 1) % big_n].mul(&f.kron(g)?)?;
            let rhs = g.kron(f)?.mul(&self.components[n])?;
            report.compare("naturality", Some(n), &lhs, &rhs)?;
        }
        Ok(report)
    }

    /// The star identities per level.
    pub fn verify_star_regularity(&self, mode: StarMode) -> Result<Report> {
        let stars = self
            .star_components
            .as_ref()
            .ok_or_else(|| Error::Missing("braiding has no star components".into()))?;
        let mut report = Report::new();
        for (n, (b, s)) in self.components.iter().zip(stars).enumerate() {
            report.compare("star_inner", Some(n), &Matrix::compose(&[b, s, b])?, b)?;
            if mode == StarMode::Reflexive {
                report.compare("star_reflexive", Some(n), &Matrix::compose(&[s, b, s])?, s)?;
            }
        }
        Ok(report)
    }
}

/// `I_a ⊗ τ(b, c) ⊗ I_d`: exchanges the two middle tensor factors.
fn middle_swap(a: usize, b: usize, c: usize, d: usize, field: FieldSpec) -> Matrix {
    Matrix::identity(field, a)
        .kron(&Matrix::swap(b, c, field))
        .and_then(|m| m.kron(&Matrix::identity(field, d)))
        .expect("same field")
}

/// Braiding of `X·⊗X'·` past `Y·⊗Y'·`, built levelwise as
/// `(Y⊗X⊗Y'⊗X' → Y⊗Y'⊗X⊗X') ∘ (B ⊗ B') ∘ (X⊗X'⊗Y⊗Y' → X⊗Y⊗X'⊗Y')`.
pub fn tensor_braidings(b: &RegularBraiding, c: &RegularBraiding) -> Result<RegularBraiding> {
    let left = tensor_cocycles(&b.left, &c.left)?;
    let right = tensor_cocycles(&b.right, &c.right)?;
    let field = left.field();
    let mut comps = Vec::with_capacity(b.levels());
    for n in 0..b.levels() {
        let (x, y) = (b.left.dims()[n], b.right.dims()[n]);
        let (x2, y2) = (c.left.dims()[n], c.right.dims()[n]);
        let inner = b.components[n].kron(&c.components[n])?;
        let before = middle_swap(x, x2, y, y2, field);
        let after = middle_swap(y, x, y2, x2, field);
        comps.push(Matrix::compose(&[&after, &inner, &before])?);
    }
    RegularBraiding::new(left, right, comps, None)
}

/// Tensor slot labels for the three cocycles of a [`TripleContext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    X,
    Y,
    Z,
}

impl Slot {
    fn idx(self) -> usize {
        self as usize
    }
}

/// Which prebraiding of [`TripleContext::prebraid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrebraidSide {
    /// `P_{X⊗Y,Z} = T^R_{X,Z,Y} ∘ T^L_{X,Y,Z} : X⊗Y⊗Z → Z⊗X⊗Y`.
    LeftOfPair,
    /// `P_{Z,X⊗Y} = T^L_{X,Z,Y} ∘ T^R_{Z,X,Y} : Z⊗X⊗Y → X⊗Y⊗Z`.
    RightOfPair,
}

/// Star partners of the two prebraidings at one level.
#[derive(Clone, Debug)]
pub struct PrebraidStars {
    pub left_of_pair: Matrix,
    pub right_of_pair: Matrix,
}

/// Three cocycles of equal length with braiding components between ordered
/// pairs of them.
#[derive(Clone, Debug)]
pub struct TripleContext {
    cocycles: [RegularCocycle; 3],
    obstructors: [ObstructorSet; 3],
    braids: [[Option<Vec<Matrix>>; 3]; 3],
}

impl TripleContext {
    /// Fails if the cocycles disagree on field or length, or if any is not regular.
    pub fn new(x: RegularCocycle, y: RegularCocycle, z: RegularCocycle) -> Result<Self> {
        for other in [&y, &z] {
            if other.levels() != x.levels() {
                return Err(Error::Shape("cocycles have different lengths".into()));
            }
            if other.field() != x.field() {
                return Err(Error::FieldMismatch(x.field(), other.field()));
            }
        }
        let obstructors = [x.obstructors()?, y.obstructors()?, z.obstructors()?];
        Ok(TripleContext {
            cocycles: [x, y, z],
            obstructors,
            braids: Default::default(),
        })
    }

    /// One cocycle in all three slots, with the same components for every
    /// ordered pair (the single-object setting).
    pub fn uniform(cocycle: RegularCocycle, components: Vec<Matrix>) -> Result<Self> {
        let mut ctx = Self::new(cocycle.clone(), cocycle.clone(), cocycle)?;
        for a in [Slot::X, Slot::Y, Slot::Z] {
            for b in [Slot::X, Slot::Y, Slot::Z] {
                if a != b {
                    ctx = ctx.with_braiding(a, b, components.clone())?;
                }
            }
        }
        Ok(ctx)
    }

    /// Builds the context from braidings `X→Y`, `X→Z`, `Y→Z`. Star components,
    /// when present, are registered as the reverse braidings `Y→X`, `Z→X`,
    /// `Z→Y`.
    pub fn from_braidings(
        xy: &RegularBraiding,
        xz: &RegularBraiding,
        yz: &RegularBraiding,
    ) -> Result<Self> {
        if xy.left != xz.left || xy.right != yz.left || xz.right != yz.right {
            return Err(Error::Shape(
                "braidings do not share their X, Y, Z cocycles".into(),
            ));
        }
        let mut ctx = Self::new(xy.left.clone(), xy.right.clone(), xz.right.clone())?;
        for (b, from, to) in [(xy, Slot::X, Slot::Y), (xz, Slot::X, Slot::Z), (yz, Slot::Y, Slot::Z)] {
            ctx = ctx.with_braiding(from, to, b.components.clone())?;
            if let Some(stars) = &b.star_components {
                ctx = ctx.with_braiding(to, from, stars.clone())?;
            }
        }
        Ok(ctx)
    }

    /// Registers `B_{from,to}` components; shape `(d_to·d_from) × (d_from·d_to)`.
    pub fn with_braiding(mut self, from: Slot, to: Slot, components: Vec<Matrix>) -> Result<Self> {
        if from == to {
            return Err(Error::Shape("a braiding needs two distinct slots".into()));
        }
        if components.len() != self.levels() {
            return Err(Error::Shape(format!(
                "{} components for {} levels",
                components.len(),
                self.levels()
            )));
        }
        let da = self.cocycles[from.idx()].dims().to_vec();
        let db = self.cocycles[to.idx()].dims().to_vec();
        check_components("B", self.field(), &components, |n| {
            (db[n] * da[n], da[n] * db[n])
        })?;
        self.braids[from.idx()][to.idx()] = Some(components);
        Ok(self)
    }

    pub fn levels(&self) -> usize {
        self.cocycles[0].levels()
    }

    pub fn field(&self) -> FieldSpec {
        self.cocycles[0].field()
    }

    pub fn obstructor(&self, slot: Slot, n: usize) -> &Matrix {
        self.obstructors[slot.idx()].get(n)
    }

    fn braid(&self, from: Slot, to: Slot, n: usize) -> Result<&Matrix> {
        self.braids[from.idx()][to.idx()]
            .as_ref()
            .map(|v| &v[n])
            .ok_or_else(|| Error::Missing(format!("no braiding {from:?}→{to:?}")))
    }

    /// `T^L_{a,b,c} = e_a ⊗ B_{b,c}` at level `n`.
    pub fn triple_left(&self, order: [Slot; 3], n: usize) -> Result<Matrix> {
        let [a, b, c] = order;
        self.obstructor(a, n).kron(self.braid(b, c, n)?)
    }

    /// `T^R_{a,b,c} = B_{a,b} ⊗ e_c` at level `n`.
    pub fn triple_right(&self, order: [Slot; 3], n: usize) -> Result<Matrix> {
        let [a, b, c] = order;
        self.braid(a, b, n)?.kron(self.obstructor(c, n))
    }

    pub fn prebraid(&self, n: usize, side: PrebraidSide) -> Result<Matrix> {
        use Slot::*;
        match side {
            PrebraidSide::LeftOfPair => self
                .triple_right([X, Z, Y], n)?
                .mul(&self.triple_left([X, Y, Z], n)?),
            PrebraidSide::RightOfPair => self
                .triple_left([X, Z, Y], n)?
                .mul(&self.triple_right([Z, X, Y], n)?),
        }
    }

    /// Both sides of the component equation at level `n`, as maps
    /// `X⊗Y⊗Z → Z⊗Y⊗X`:
    ///
    /// ```text
    /// T^R_{Y,Z,X} ∘ T^L_{Y,X,Z} ∘ T^R_{X,Y,Z}   and   T^L_{Z,X,Y} ∘ T^R_{X,Z,Y} ∘ T^L_{X,Y,Z}
    /// ```
    pub fn ybe_sides(&self, n: usize) -> Result<(Matrix, Matrix)> {
        use Slot::*;
        let lhs = Matrix::compose(&[
            &self.triple_right([Y, Z, X], n)?,
            &self.triple_left([Y, X, Z], n)?,
            &self.triple_right([X, Y, Z], n)?,
        ])?;
        let rhs = Matrix::compose(&[
            &self.triple_left([Z, X, Y], n)?,
            &self.triple_right([X, Z, Y], n)?,
            &self.triple_left([X, Y, Z], n)?,
        ])?;
        Ok((lhs, rhs))
    }

    pub fn verify_component_ybe(&self) -> Result<Report> {
        let mut report = Report::new();
        for n in 0..self.levels() {
            let (lhs, rhs) = self.ybe_sides(n)?;
            report.compare("component_ybe", Some(n), &lhs, &rhs)?;
        }
        Ok(report)
    }

    /// The four reflexive identities linking each prebraiding with its star.
    pub fn verify_prebraid_star_tower(&self, stars: &[PrebraidStars]) -> Result<Report> {
        if stars.len() != self.levels() {
            return Err(Error::Missing(format!(
                "{} star prebraid pairs for {} levels",
                stars.len(),
                self.levels()
            )));
        }
        let mut report = Report::new();
        for (n, pair) in stars.iter().enumerate() {
            for (side, s, name) in [
                (PrebraidSide::LeftOfPair, &pair.left_of_pair, "prebraid_left"),
                (PrebraidSide::RightOfPair, &pair.right_of_pair, "prebraid_right"),
            ] {
                let p = self.prebraid(n, side)?;
                if s.shape() != (p.cols(), p.rows()) {
                    return Err(Error::Shape(format!(
                        "star of {name} at level {} has shape {:?}",
                        n + 1,
                        s.shape()
                    )));
                }
                report.compare(&format!("{name}_inner"), Some(n), &Matrix::compose(&[&p, s, &p])?, &p)?;
                report.compare(&format!("{name}_reflexive"), Some(n), &Matrix::compose(&[s, &p, s])?, s)?;
            }
        }
        Ok(report)
    }

    /// Star partners of both prebraidings from [`reflexive_ginverse`].
    pub fn ginverse_prebraid_stars(&self) -> Result<Vec<PrebraidStars>> {
        (0..self.levels())
            .map(|n| {
                Ok(PrebraidStars {
                    left_of_pair: reflexive_ginverse(&self.prebraid(n, PrebraidSide::LeftOfPair)?),
                    right_of_pair: reflexive_ginverse(&self.prebraid(n, PrebraidSide::RightOfPair)?),
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn proj_cocycle(levels: usize, field: FieldSpec) -> RegularCocycle {
        RegularCocycle::constant(levels, Matrix::diag(field, &[1, 0])).unwrap()
    }

    fn identity_cocycle(d: usize, field: FieldSpec) -> RegularCocycle {
        RegularCocycle::single(Matrix::identity(field, d)).unwrap()
    }

    #[test]
    fn swap_is_natural_for_identity_and_projector() {
        let c = identity_cocycle(2, Q);
        let b = RegularBraiding::transposition(c.clone(), c).unwrap();
        assert!(b.verify_naturality().unwrap().passed());

        let p = proj_cocycle(2, Q);
        let b = RegularBraiding::transposition(p.clone(), p).unwrap();
        assert!(b.verify_naturality().unwrap().passed());
    }

    #[test]
    fn non_intertwining_map_breaks_naturality() {
        let p = proj_cocycle(2, Q);
        // exchanges e0⊗e0 with e1⊗e1; invertible but does not commute with P⊗P
        let g = Matrix::from_rows(
            Q,
            &[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0]],
        );
        let b = Matrix::swap(2, 2, Q).mul(&g).unwrap();
        let br = RegularBraiding::new(p.clone(), p, vec![b.clone(), b], None).unwrap();
        let report = br.verify_naturality().unwrap();
        assert!(!report.passed());
        assert!(report.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn star_regularity_cases() {
        let c = identity_cocycle(2, Q);
        let b = Matrix::from_rows(Q, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 1]]);
        let inv = b.inverse().unwrap().unwrap();
        let br = RegularBraiding::new(c.clone(), c.clone(), vec![b], Some(vec![inv])).unwrap();
        assert!(br.verify_star_regularity(StarMode::Reflexive).unwrap().passed());

        let e = Matrix::diag(Q, &[1, 0]);
        let ee = e.kron(&e).unwrap();
        let br = RegularBraiding::new(c.clone(), c.clone(), vec![ee.clone()], Some(vec![ee])).unwrap();
        assert!(br.verify_star_regularity(StarMode::Reflexive).unwrap().passed());

        let no_star = RegularBraiding::transposition(c.clone(), c).unwrap();
        assert!(matches!(no_star.verify_star_regularity(StarMode::Inner), Err(Error::Missing(_))));
    }

    #[test]
    fn inner_mode_accepts_non_reflexive_star() {
        let c = identity_cocycle(2, Q);
        let e = Matrix::diag(Q, &[1, 0]);
        let ee = e.kron(&e).unwrap();
        // identity is an inner inverse of a projector but not a reflexive one
        let br = RegularBraiding::new(c.clone(), c, vec![ee], Some(vec![Matrix::identity(Q, 4)])).unwrap();
        assert!(br.verify_star_regularity(StarMode::Inner).unwrap().passed());
        assert!(!br.verify_star_regularity(StarMode::Reflexive).unwrap().passed());
    }

    #[test]
    fn shapes_are_checked() {
        let a = identity_cocycle(2, Q);
        let b = identity_cocycle(3, Q);
        assert!(RegularBraiding::new(a.clone(), b.clone(), vec![Matrix::identity(Q, 4)], None).is_err());
        assert!(RegularBraiding::transposition(a, b).is_ok());
    }

    #[test]
    fn triple_maps_reduce_to_half_braidings() {
        let c = identity_cocycle(2, Q);
        let tau = Matrix::swap(2, 2, Q);
        let ctx = TripleContext::uniform(c, vec![tau.clone()]).unwrap();
        let id = Matrix::identity(Q, 2);
        use Slot::*;
        assert_eq!(ctx.triple_left([X, Y, Z], 0).unwrap(), id.kron(&tau).unwrap());
        assert_eq!(ctx.triple_right([X, Y, Z], 0).unwrap(), tau.kron(&id).unwrap());
    }

    #[test]
    fn triple_maps_with_projector() {
        let ctx = TripleContext::uniform(proj_cocycle(1, Q), vec![Matrix::swap(2, 2, Q)]).unwrap();
        let e = Matrix::diag(Q, &[1, 0]);
        let expected = e.kron(&Matrix::swap(2, 2, Q)).unwrap();
        assert_eq!(ctx.triple_left([Slot::X, Slot::Y, Slot::Z], 0).unwrap(), expected);
        assert_eq!(expected.shape(), (8, 8));
    }

    #[test]
    fn zero_obstructor_kills_triple_maps() {
        let ctx = TripleContext::uniform(
            RegularCocycle::single(Matrix::zeros(Q, 2, 2)).unwrap(),
            vec![Matrix::swap(2, 2, Q)],
        )
        .unwrap();
        assert!(ctx.triple_left([Slot::X, Slot::Y, Slot::Z], 0).unwrap().is_zero());
        assert!(ctx.triple_right([Slot::X, Slot::Y, Slot::Z], 0).unwrap().is_zero());
    }

    #[test]
    fn prebraid_is_product_of_triple_maps() {
        let ctx = TripleContext::uniform(proj_cocycle(1, Q), vec![Matrix::swap(2, 2, Q)]).unwrap();
        use Slot::*;
        let p = ctx.prebraid(0, PrebraidSide::LeftOfPair).unwrap();
        let direct = ctx
            .triple_right([X, Z, Y], 0)
            .unwrap()
            .mul(&ctx.triple_left([X, Y, Z], 0).unwrap())
            .unwrap();
        assert_eq!(p, direct);
    }

    #[test]
    fn classical_prebraid_is_block_transposition() {
        // with identity obstructors and τ everywhere, P_{X⊗Y,Z} is τ(4, 2)
        let ctx = TripleContext::uniform(identity_cocycle(2, GF2), vec![Matrix::swap(2, 2, GF2)]).unwrap();
        assert_eq!(ctx.prebraid(0, PrebraidSide::LeftOfPair).unwrap(), Matrix::swap(4, 2, GF2));
        assert_eq!(ctx.prebraid(0, PrebraidSide::RightOfPair).unwrap(), Matrix::swap(2, 4, GF2));
    }

    #[test]
    fn component_ybe_projector_swap() {
        let ctx = TripleContext::uniform(proj_cocycle(1, Q), vec![Matrix::swap(2, 2, Q)]).unwrap();
        let (lhs, rhs) = ctx.ybe_sides(0).unwrap();
        let e0 = Matrix::diag(Q, &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(lhs, e0);
        assert_eq!(rhs, e0);
        assert!(ctx.verify_component_ybe().unwrap().passed());
    }

    #[test]
    fn component_ybe_rejects_generic_matrix() {
        let b = Matrix::from_rows(Q, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        let ctx = TripleContext::uniform(identity_cocycle(2, Q), vec![b]).unwrap();
        assert!(!ctx.verify_component_ybe().unwrap().passed());
    }

    #[test]
    fn star_tower_cases() {
        let ctx = TripleContext::uniform(identity_cocycle(2, Q), vec![Matrix::swap(2, 2, Q)]).unwrap();
        let inverses = vec![PrebraidStars {
            left_of_pair: Matrix::swap(4, 2, Q).inverse().unwrap().unwrap(),
            right_of_pair: Matrix::swap(2, 4, Q).inverse().unwrap().unwrap(),
        }];
        assert!(ctx.verify_prebraid_star_tower(&inverses).unwrap().passed());

        let zeros = vec![PrebraidStars {
            left_of_pair: Matrix::zeros(Q, 8, 8),
            right_of_pair: Matrix::zeros(Q, 8, 8),
        }];
        let report = ctx.verify_prebraid_star_tower(&zeros).unwrap();
        assert_eq!(report.first_failure().unwrap().axiom, "prebraid_left_inner");

        assert!(ctx.verify_prebraid_star_tower(&[]).is_err());
    }

    #[test]
    fn from_braidings_uses_stars_as_reverse() {
        let p = proj_cocycle(1, Q);
        let b = RegularBraiding::transposition(p.clone(), p).unwrap().with_ginverse_stars();
        let ctx = TripleContext::from_braidings(&b, &b, &b).unwrap();
        assert!(ctx.prebraid(0, PrebraidSide::RightOfPair).is_ok());
        let stars = ctx.ginverse_prebraid_stars().unwrap();
        assert!(ctx.verify_prebraid_star_tower(&stars).unwrap().passed());

        let bare = RegularBraiding::transposition(b.left().clone(), b.right().clone()).unwrap();
        let ctx = TripleContext::from_braidings(&bare, &bare, &bare).unwrap();
        assert!(matches!(ctx.prebraid(0, PrebraidSide::RightOfPair), Err(Error::Missing(_))));
    }

    #[test]
    fn tensor_of_natural_braidings_is_natural() {
        let p = proj_cocycle(2, Q);
        let b = RegularBraiding::transposition(p.clone(), p).unwrap();
        let t = tensor_braidings(&b, &b).unwrap();
        assert!(t.verify_naturality().unwrap().passed());
        // τ ⊗ τ reshuffled is the transposition of the doubled spaces
        assert_eq!(t.components()[0], Matrix::swap(4, 4, Q));
    }
}
