//! Rank factorization and von Neumann generalized inverses.

use super::{FieldSpec, Matrix};
use crate::error::{Error, Result};

/// Default bound on the number of points enumerated in an affine solution set.
pub const DEFAULT_SOLUTION_CAP: u64 = 1 << 20;

/// `m = f · g` with `f` of full column rank and `g` of full row rank.
///
/// `g` is the nonzero part of the reduced row echelon form and `f` collects
/// the pivot columns of `m`, pivots taken left to right. For the zero matrix
/// both factors are empty (`rows × 0` and `0 × cols`).
pub fn rank_factorization(m: &Matrix) -> (Matrix, Matrix) {
    let (reduced, pivots) = m.rref();
    let r = pivots.len();
    let f = m.select_columns(&pivots);
    let g = reduced.select_rows(&(0..r).collect::<Vec<_>>());
    (f, g)
}

/// Deterministic reflexive generalized inverse: `m·x·m = m` and `x·m·x = x`.
///
/// With `m = f·g`, returns `g_r · f_l` where `g_r` is the pivot-column right
/// inverse of `g` and `f_l` inverts the first independent rows of `f`. No Gram
/// matrices are formed, so this works unchanged over GF(p).
pub fn reflexive_ginverse(m: &Matrix) -> Matrix {
    let field = m.field();
    let (f, g) = rank_factorization(m);
    let r = f.cols();
    if r == 0 {
        return Matrix::zeros(field, m.cols(), m.rows());
    }

    // g is in reduced echelon form: it has the identity on its pivot columns.
    let (_, g_pivots) = g.rref();
    let mut gr_values = vec![0i64; g.cols() * r];
    for (i, &c) in g_pivots.iter().enumerate() {
        gr_values[c * r + i] = 1;
    }
    let g_right = Matrix::from_i64(field, g.cols(), r, &gr_values).expect("shape fixed above");

    // Independent rows of f are the pivot columns of fᵀ.
    let (_, row_pivots) = f.transpose().rref();
    let square = f.select_rows(&row_pivots);
    let square_inv = square
        .inverse()
        .expect("square by construction")
        .expect("independent rows of a full-column-rank factor");
    let f_left = square_inv
        .mul(&placement(field, &row_pivots, f.rows()))
        .expect("placement shape");

    g_right.mul(&f_left).expect("shapes agree by construction")
}

/// 0/1 matrix with a one at `(k, at[k])`; right-multiplying spreads the
/// columns of a matrix out to positions `at`.
fn placement(field: FieldSpec, at: &[usize], width: usize) -> Matrix {
    let mut values = vec![0i64; at.len() * width];
    for (k, &c) in at.iter().enumerate() {
        values[k * width + c] = 1;
    }
    Matrix::from_i64(field, at.len(), width, &values).expect("fixed shape")
}

/// Affine solution set `{x₀ + Σ tᵢ vᵢ}` of a linear system.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Matrix,
    pub directions: Vec<Matrix>,
}

/// Solves `a · x = b` for a column vector `x`; `None` when inconsistent.
pub fn solve_affine(a: &Matrix, b: &Matrix) -> Result<Option<AffineSolution>> {
    if b.cols() != 1 || b.rows() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "solve_affine",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let n = a.cols();
    let (reduced, pivots) = a.hstack(b)?.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let rhs = reduced.select_columns(&[n]);
    let mut values = Matrix::zeros(a.field(), n, 1);
    for (i, &pc) in pivots.iter().enumerate() {
        let unit = {
            let mut v = vec![0i64; n];
            v[pc] = 1;
            Matrix::from_i64(a.field(), n, 1, &v)?
        };
        let coeff = rhs.select_rows(&[i]);
        values = values.add(&unit.mul(&coeff)?)?;
    }
    Ok(Some(AffineSolution {
        particular: values,
        directions: a.nullspace(),
    }))
}

/// `vec(a · x · b) = (a ⊗ bᵀ) · vec(x)` for row-major `vec`.
pub(crate) fn sandwich_operator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.kron(&b.transpose())
}

pub(crate) fn vectorize(m: &Matrix) -> Matrix {
    let flat = m.select_rows(&(0..m.rows()).collect::<Vec<_>>());
    reshape(&flat, m.rows() * m.cols(), 1)
}

pub(crate) fn reshape(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    assert_eq!(m.rows() * m.cols(), rows * cols);
    match (m.residues(), m.rationals()) {
        (Some(v), _) => {
            let p = m.field().characteristic().expect("residues imply a prime field");
            Matrix::from_residues(p, rows, cols, v.to_vec()).expect("same length")
        }
        (_, Some(v)) => Matrix::from_rationals(rows, cols, v.to_vec()).expect("same length"),
        _ => unreachable!(),
    }
}

/// Every point of an affine set over GF(p), in entry-lexicographic order of
/// the reshaped `rows × cols` matrices.
pub(crate) fn enumerate_affine(
    sol: &AffineSolution,
    rows: usize,
    cols: usize,
    cap: u64,
    what: &str,
) -> Result<Vec<Matrix>> {
    let field = sol.particular.field();
    let p = match field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => return Err(Error::NotFinite(field)),
    };
    let k = sol.directions.len() as u32;
    let count = u64::from(p).checked_pow(k).filter(|&c| c <= cap).ok_or_else(|| {
        Error::CapExceeded {
            what: what.to_string(),
            candidates: format!("{p}^{k}"),
            cap,
        }
    })?;
    let base = sol.particular.residues().expect("prime field").to_vec();
    let dirs: Vec<&[u32]> = sol
        .directions
        .iter()
        .map(|d| d.residues().expect("prime field"))
        .collect();
    let modulus = u64::from(p);
    let mut out = Vec::with_capacity(count as usize);
    let mut coeffs = vec![0u32; k as usize];
    for _ in 0..count {
        let mut point: Vec<u64> = base.iter().map(|&x| u64::from(x)).collect();
        for (t, d) in coeffs.iter().zip(&dirs) {
            if *t == 0 {
                continue;
            }
            for (x, &y) in point.iter_mut().zip(d.iter()) {
                *x = (*x + u64::from(*t) * u64::from(y)) % modulus;
            }
        }
        out.push(
            Matrix::from_residues(p, rows, cols, point.into_iter().map(|x| x as u32).collect())
                .expect("length rows*cols"),
        );
        // odometer increment
        for t in coeffs.iter_mut() {
            *t += 1;
            if *t < p {
                break;
            }
            *t = 0;
        }
    }
    out.sort_by(|a, b| a.lex_cmp(b));
    Ok(out)
}

/// All `x` with `m·x·m = m`, optionally filtered by `x·m·x = x`, over GF(p).
///
/// The inner-inverse equation is linear in `x`; its affine solution set is
/// parameterized and walked, so the cost scales with `p^(nullity)` rather than
/// `p^(rows·cols)`.
pub fn inner_inverses(m: &Matrix, reflexive: bool, cap: u64) -> Result<Vec<Matrix>> {
    if !m.field().is_finite() {
        return Err(Error::NotFinite(m.field()));
    }
    let system = sandwich_operator(m, m)?;
    let rhs = vectorize(m);
    let sol = solve_affine(&system, &rhs)?
        .expect("every matrix over a field has an inner inverse");
    let all = enumerate_affine(&sol, m.cols(), m.rows(), cap, "generalized-inverse enumeration")?;
    if !reflexive {
        return Ok(all);
    }
    Ok(all
        .into_iter()
        .filter(|x| {
            Matrix::compose(&[x, m, x]).expect("shapes agree") == *x
        })
        .collect())
}

/// All reflexive generalized inverses of `m` over a prime field, canonically
/// ordered.
pub fn enumerate_ginverses(m: &Matrix, cap: u64) -> Result<Vec<Matrix>> {
    inner_inverses(m, true, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn check_reflexive(m: &Matrix, x: &Matrix) {
        assert_eq!(&Matrix::compose(&[m, x, m]).unwrap(), m);
        assert_eq!(&Matrix::compose(&[x, m, x]).unwrap(), x);
    }

    #[test]
    fn factorization_examples() {
        let (f, g) = rank_factorization(&Matrix::diag(Q, &[1, 0]));
        assert_eq!(f, Matrix::from_rows(Q, &[&[1], &[0]]));
        assert_eq!(g, Matrix::from_rows(Q, &[&[1, 0]]));

        let (f, g) = rank_factorization(&Matrix::identity(Q, 2));
        assert_eq!((f.clone(), g.clone()), (Matrix::identity(Q, 2), Matrix::identity(Q, 2)));

        let ones = Matrix::from_rows(GF2, &[&[1, 1], &[1, 1]]);
        let (f, g) = rank_factorization(&ones);
        assert_eq!(f, Matrix::from_rows(GF2, &[&[1], &[1]]));
        assert_eq!(g, Matrix::from_rows(GF2, &[&[1, 1]]));
        assert_eq!(f.mul(&g).unwrap(), ones);
    }

    #[test]
    fn factorization_of_zero_is_empty() {
        let z = Matrix::zeros(Q, 2, 3);
        let (f, g) = rank_factorization(&z);
        assert_eq!(f.shape(), (2, 0));
        assert_eq!(g.shape(), (0, 3));
        assert_eq!(f.mul(&g).unwrap(), z);
        assert_eq!(reflexive_ginverse(&z), Matrix::zeros(Q, 3, 2));
    }

    #[test]
    fn ginverse_examples() {
        let m = Matrix::from_rows(Q, &[&[2, 1], &[1, 1]]);
        assert_eq!(reflexive_ginverse(&m), m.inverse().unwrap().unwrap());

        let e = Matrix::diag(Q, &[1, 0]);
        let x = reflexive_ginverse(&e);
        assert_eq!(x, e);
        check_reflexive(&e, &x);

        let ones = Matrix::from_rows(GF2, &[&[1, 1], &[1, 1]]);
        let x = reflexive_ginverse(&ones);
        assert_eq!(x, Matrix::from_rows(GF2, &[&[1, 0], &[0, 0]]));
        check_reflexive(&ones, &x);
    }

    #[test]
    fn ginverse_rectangular_rational() {
        let m = Matrix::parse_inline(Q, "1/2 1 0; 1 2 0").unwrap();
        let x = reflexive_ginverse(&m);
        assert_eq!(x.shape(), (3, 2));
        check_reflexive(&m, &x);
    }

    #[test]
    fn solve_affine_inconsistent() {
        let a = Matrix::from_rows(Q, &[&[1, 1], &[1, 1]]);
        let b = Matrix::from_rows(Q, &[&[1], &[2]]);
        assert!(solve_affine(&a, &b).unwrap().is_none());
        let b = Matrix::from_rows(Q, &[&[3], &[3]]);
        let sol = solve_affine(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul(&sol.particular).unwrap(), b);
        assert_eq!(sol.directions.len(), 1);
    }

    #[test]
    fn sandwich_identity() {
        let a = Matrix::from_rows(Q, &[&[1, 2], &[3, 4], &[0, 1]]);
        let x = Matrix::from_rows(Q, &[&[1, -1, 2], &[0, 5, 1]]);
        let b = Matrix::from_rows(Q, &[&[2, 0], &[1, 1], &[-1, 3]]);
        let direct = vectorize(&Matrix::compose(&[&a, &x, &b]).unwrap());
        let via = sandwich_operator(&a, &b).unwrap().mul(&vectorize(&x)).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn enumerate_small_cases() {
        let i2 = Matrix::identity(GF2, 2);
        assert_eq!(enumerate_ginverses(&i2, 1 << 10).unwrap(), vec![i2]);

        let z = Matrix::zeros(GF2, 2, 2);
        assert_eq!(enumerate_ginverses(&z, 1 << 10).unwrap(), vec![z.clone()]);
        // without reflexivity every matrix is an inner inverse of zero
        assert_eq!(inner_inverses(&z, false, 1 << 10).unwrap().len(), 16);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        let e = Matrix::diag(GF2, &[1, 0]);
        let found = enumerate_ginverses(&e, 1 << 10).unwrap();
        let brute: Vec<Matrix> = (0u32..16)
            .map(|bits| Matrix::from_residues(2, 2, 2, (0..4).map(|k| (bits >> (3 - k)) & 1).collect()).unwrap())
            .filter(|x| Matrix::compose(&[&e, x, &e]).unwrap() == e && Matrix::compose(&[x, &e, x]).unwrap() == *x)
            .collect();
        assert_eq!(found, brute);
        assert!(found.contains(&e));
    }

    #[test]
    fn enumerate_rejects_rationals_and_cap() {
        let e = Matrix::diag(Q, &[1, 0]);
        assert!(matches!(enumerate_ginverses(&e, 100), Err(Error::NotFinite(_))));
        let z = Matrix::zeros(GF2, 3, 3);
        assert!(matches!(inner_inverses(&z, false, 100), Err(Error::CapExceeded { .. })));
    }
}
