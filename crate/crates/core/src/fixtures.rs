//! Named example structures and seeded random generators of verified ones.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cocycle::RegularCocycle;
use crate::error::{Error, Result};
use crate::exact_linalg::{reflexive_ginverse, FieldSpec, Matrix};
use crate::hopf::{AntipodePair, ObstructedBialgebra};
use crate::ybop::{ObstructedAlgebra, ObstructedCoalgebra, RegularYBOperator};

const MAX_ATTEMPTS: usize = 1000;

/// The one-dimensional bialgebra `𝕂` with every structure map `[1]`.
pub fn trivial_bialgebra(field: FieldSpec) -> ObstructedBialgebra {
    let one = Matrix::identity(field, 1);
    ObstructedBialgebra::new(
        vec![one.clone()],
        vec![one.clone()],
        vec![one.clone()],
        Some(vec![one.clone()]),
        Some(vec![one]),
    )
    .expect("valid shapes")
}

/// Group algebra of `Z/2` on the basis `(1, g)`, obstructor `I₂`.
pub fn group_algebra_z2(field: FieldSpec) -> ObstructedBialgebra {
    ObstructedBialgebra::new(
        vec![Matrix::from_rows(field, &[&[1, 0, 0, 1], &[0, 1, 1, 0]])],
        vec![Matrix::from_rows(field, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]])],
        vec![Matrix::identity(field, 2)],
        Some(vec![Matrix::from_rows(field, &[&[1], &[0]])]),
        Some(vec![Matrix::from_rows(field, &[&[1, 1]])]),
    )
    .expect("valid shapes")
}

/// Antipode of [`group_algebra_z2`]: `g ↦ g⁻¹ = g`.
pub fn group_algebra_z2_antipode(field: FieldSpec) -> AntipodePair {
    AntipodePair::new(vec![Matrix::identity(field, 2)], None)
}

/// Two-dimensional bialgebra with obstructor `e = diag(1,0)`:
/// `m(e_i⊗e_j) = δ_{i0}δ_{j0} e₀`, `Δ(e₀) = e₀⊗e₀`, `Δ(e₁) = 0`,
/// `η = e₀`, `ε = e₀*`.
pub fn projector_bialgebra(field: FieldSpec) -> ObstructedBialgebra {
    ObstructedBialgebra::new(
        vec![Matrix::from_rows(field, &[&[1, 0, 0, 0], &[0, 0, 0, 0]])],
        vec![Matrix::from_rows(field, &[&[1, 0], &[0, 0], &[0, 0], &[0, 0]])],
        vec![Matrix::diag(field, &[1, 0])],
        Some(vec![Matrix::from_rows(field, &[&[1], &[0]])]),
        Some(vec![Matrix::from_rows(field, &[&[1, 0]])]),
    )
    .expect("valid shapes")
}

/// Antipode `S = e` of [`projector_bialgebra`].
pub fn projector_antipode(field: FieldSpec) -> AntipodePair {
    AntipodePair::new(vec![Matrix::diag(field, &[1, 0])], None)
}

fn random_entry<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> i64 {
    match field {
        FieldSpec::Rationals => rng.gen_range(-2..=2),
        FieldSpec::Prime(p) => i64::from(rng.gen_range(0..p)),
    }
}

fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> i64 {
    match field {
        FieldSpec::Rationals => *[-2, -1, 1, 2].choose(rng).expect("nonempty"),
        FieldSpec::Prime(p) => i64::from(rng.gen_range(1..p)),
    }
}

/// Entries uniform in `GF(p)`, or in `{-2, …, 2}` over `Q`.
pub fn random_matrix<R: Rng + ?Sized>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let values: Vec<i64> = (0..rows * cols).map(|_| random_entry(field, rng)).collect();
    Matrix::from_i64(field, rows, cols, &values).expect("shape by construction")
}

/// A random invertible matrix and its inverse.
pub fn random_invertible<R: Rng + ?Sized>(field: FieldSpec, d: usize, rng: &mut R) -> (Matrix, Matrix) {
    loop {
        let q = random_matrix(field, d, d, rng);
        if let Some(inv) = q.inverse().expect("square") {
            return (q, inv);
        }
    }
}

/// `Q·diag(mask)·Q⁻¹`.
fn conjugate_mask(q: &Matrix, q_inv: &Matrix, mask: &[bool]) -> Matrix {
    let d: Vec<i64> = mask.iter().map(|&b| i64::from(b)).collect();
    Matrix::compose(&[q, &Matrix::diag(q.field(), &d), q_inv]).expect("square")
}

/// A random idempotent of the given rank, `Q·D·Q⁻¹`.
pub fn random_idempotent<R: Rng + ?Sized>(field: FieldSpec, d: usize, rank: usize, rng: &mut R) -> Matrix {
    let (q, q_inv) = random_invertible(field, d, rng);
    let mut mask = vec![false; d];
    mask[..rank.min(d)].iter_mut().for_each(|b| *b = true);
    mask.shuffle(rng);
    conjugate_mask(&q, &q_inv, &mask)
}

/// A random regular cocycle with `levels` objects of dimension `1..=max_dim`.
///
/// Arrows are `f_n = L_{n+1} C_n K_n` where `K_n L_n = I_r` and the `C_n` are
/// invertible `r × r` blocks whose cyclic product is the identity, so every
/// obstructor is the rank-`r` idempotent `L_n K_n`. Regularity is still
/// checked before returning.
pub fn random_regular_cocycle<R: Rng + ?Sized>(
    field: FieldSpec,
    levels: usize,
    max_dim: usize,
    rng: &mut R,
) -> Result<RegularCocycle> {
    if levels == 0 || max_dim == 0 {
        return Err(Error::Shape("levels and max_dim must be positive".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let dims: Vec<usize> = (0..levels).map(|_| rng.gen_range(1..=max_dim)).collect();
        let min_dim = *dims.iter().min().expect("nonempty");
        let rank = rng.gen_range(0..=min_dim);
        let split: Vec<(Matrix, Matrix)> = dims
            .iter()
            .map(|&d| {
                let (q, q_inv) = random_invertible(field, d, rng);
                let keep: Vec<usize> = (0..rank).collect();
                (q.select_columns(&keep), q_inv.select_rows(&keep))
            })
            .collect();
        let mut blocks: Vec<Matrix> = (0..levels - 1)
            .map(|_| random_invertible(field, rank, rng).0)
            .collect();
        let around = blocks
            .iter()
            .try_fold(Matrix::identity(field, rank), |acc, c| c.mul(&acc))?;
        blocks.push(around.inverse()?.expect("product of invertibles"));
        let arrows = (0..levels)
            .map(|n| {
                let next = (n + 1) % levels;
                Matrix::compose(&[&split[next].0, &blocks[n], &split[n].1])
            })
            .collect::<Result<Vec<_>>>()?;
        let cocycle = RegularCocycle::new(field, dims, arrows)?;
        if cocycle.is_regular() {
            return Ok(cocycle);
        }
    }
    Err(Error::Verification("no regular cocycle generated".into()))
}

/// Obstructor and a commuting idempotent, both diagonal in the same basis.
fn commuting_idempotents<R: Rng + ?Sized>(field: FieldSpec, d: usize, rng: &mut R) -> (Matrix, Matrix, Matrix) {
    let (q, q_inv) = random_invertible(field, d, rng);
    let mut masks = (0..3).map(|_| (0..d).map(|_| rng.gen_bool(0.6)).collect::<Vec<_>>());
    let e = conjugate_mask(&q, &q_inv, &masks.next().expect("three masks"));
    let a = conjugate_mask(&q, &q_inv, &masks.next().expect("three masks"));
    let b = conjugate_mask(&q, &q_inv, &masks.next().expect("three masks"));
    (e, a, b)
}

/// Operators commuting with `e ⊗ e` drawn from `λτ`, `λI`, `λ(A⊗B)`, `τ(A⊗A)`
/// with `A`, `B` idempotents commuting with `e`; kept only if they verify.
fn random_operator<R: Rng + ?Sized>(
    e: &Matrix,
    a: &Matrix,
    b: &Matrix,
    rng: &mut R,
) -> Result<Option<RegularYBOperator>> {
    let field = e.field();
    let d = e.rows();
    let tau = Matrix::swap(d, d, field);
    let lambda = Matrix::diag(field, &vec![random_scalar(field, rng); d * d]);
    let r = match rng.gen_range(0..4) {
        0 => lambda.mul(&tau)?,
        1 => lambda,
        2 => lambda.mul(&a.kron(b)?)?,
        _ => tau.mul(&a.kron(a)?)?,
    };
    let stars = rng.gen_bool(0.5).then(|| vec![reflexive_ginverse(&r)]);
    let op = RegularYBOperator::new(vec![r], stars);
    Ok(op.verify(std::slice::from_ref(e))?.passed().then_some(op))
}

/// A single-level algebra `m = e·M·(e⊗e) + (1−e)·M'·(1−e⊗e)` with a regular
/// Yang-Baxter operator; both verify.
pub fn random_algebra_with_operator<R: Rng + ?Sized>(
    field: FieldSpec,
    d: usize,
    rng: &mut R,
) -> Result<(ObstructedAlgebra, RegularYBOperator)> {
    for _ in 0..MAX_ATTEMPTS {
        let (e, a, b) = commuting_idempotents(field, d, rng);
        let Some(op) = random_operator(&e, &a, &b, rng)? else { continue };
        let ee = e.kron(&e)?;
        let not_e = Matrix::identity(field, d).sub(&e)?;
        let not_ee = Matrix::identity(field, d * d).sub(&ee)?;
        let m = Matrix::compose(&[&e, &random_matrix(field, d, d * d, rng), &ee])?.add(&Matrix::compose(&[
            &not_e,
            &random_matrix(field, d, d * d, rng),
            &not_ee,
        ])?)?;
        let alg = ObstructedAlgebra::new(vec![m], vec![e], false)?;
        if alg.verify()?.passed() {
            return Ok((alg, op));
        }
    }
    Err(Error::Verification("no algebra/operator pair generated".into()))
}

/// Dual of [`random_algebra_with_operator`]:
/// `Δ = (e⊗e)·D·e + (1−e⊗e)·D'·(1−e)`.
pub fn random_coalgebra_with_operator<R: Rng + ?Sized>(
    field: FieldSpec,
    d: usize,
    rng: &mut R,
) -> Result<(ObstructedCoalgebra, RegularYBOperator)> {
    for _ in 0..MAX_ATTEMPTS {
        let (e, a, b) = commuting_idempotents(field, d, rng);
        let Some(op) = random_operator(&e, &a, &b, rng)? else { continue };
        let ee = e.kron(&e)?;
        let not_e = Matrix::identity(field, d).sub(&e)?;
        let not_ee = Matrix::identity(field, d * d).sub(&ee)?;
        let delta = Matrix::compose(&[&ee, &random_matrix(field, d * d, d, rng), &e])?.add(&Matrix::compose(&[
            &not_ee,
            &random_matrix(field, d * d, d, rng),
            &not_e,
        ])?)?;
        let co = ObstructedCoalgebra::new(vec![delta], vec![e], false)?;
        if co.verify()?.passed() {
            return Ok((co, op));
        }
    }
    Err(Error::Verification("no coalgebra/operator pair generated".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_fixtures_verify() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            for h in [trivial_bialgebra(field), group_algebra_z2(field), projector_bialgebra(field)] {
                assert!(h.verify().unwrap().passed(), "{h:?}");
            }
        }
    }

    #[test]
    fn generators_produce_verified_structures() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            for levels in 1..=3 {
                let c = random_regular_cocycle(field, levels, 3, &mut rng).unwrap();
                assert_eq!(c.levels(), levels);
                assert!(c.is_regular());
            }
            let e = random_idempotent(field, 3, 2, &mut rng);
            assert!(e.is_idempotent().unwrap());
            assert_eq!(e.rank(), 2);
            let (alg, op) = random_algebra_with_operator(field, 2, &mut rng).unwrap();
            assert!(crate::ybop::verify_yb_operator(&alg, &op).unwrap().passed());
            let (co, op) = random_coalgebra_with_operator(field, 2, &mut rng).unwrap();
            assert!(co.verify().unwrap().passed());
            assert!(op.verify(&co.obstructors).unwrap().passed());
        }
    }
}
