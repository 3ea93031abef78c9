//! Reference arithmetic for integration tests: dense rows of rationals,
//! reduced modulo `p` for prime fields. Shares no code with the library
//! kernels.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use regbraid::{FieldSpec, Matrix};

pub type Dense = Vec<Vec<BigRational>>;

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub p: Option<u32>,
}

pub fn dense(m: &Matrix) -> Dense {
    m.to_string_rows()
        .iter()
        .map(|r| r.iter().map(|s| s.parse::<BigRational>().expect("entry")).collect())
        .collect()
}

impl Oracle {
    pub fn of(field: FieldSpec) -> Self {
        Oracle {
            p: field.characteristic(),
        }
    }

    pub fn reduce(&self, x: BigRational) -> BigRational {
        match self.p {
            None => x,
            Some(p) => {
                let p = BigInt::from(p);
                let mut r = x.to_integer() % &p;
                if r < BigInt::zero() {
                    r += &p;
                }
                BigRational::from_integer(r)
            }
        }
    }

    pub fn identity(&self, n: usize) -> Dense {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect()
    }

    pub fn zeros(&self, r: usize, c: usize) -> Dense {
        vec![vec![BigRational::zero(); c]; r]
    }

    pub fn mul(&self, a: &Dense, b: &Dense) -> Dense {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                assert_eq!(row.len(), inner, "oracle product shape");
                (0..cols)
                    .map(|j| {
                        let s = (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]);
                        self.reduce(s)
                    })
                    .collect()
            })
            .collect()
    }

    /// `chain[0] ∘ chain[1] ∘ …`
    pub fn compose(&self, chain: &[&Dense]) -> Dense {
        let (last, rest) = chain.split_last().expect("nonempty");
        rest.iter().rev().fold((*last).clone(), |acc, m| self.mul(m, &acc))
    }

    pub fn kron(&self, a: &Dense, b: &Dense) -> Dense {
        let (ar, ac) = (a.len(), a.first().map_or(0, Vec::len));
        let (br, bc) = (b.len(), b.first().map_or(0, Vec::len));
        let mut out = self.zeros(ar * br, ac * bc);
        for i in 0..ar {
            for j in 0..ac {
                for k in 0..br {
                    for l in 0..bc {
                        out[i * br + k][j * bc + l] = self.reduce(&a[i][j] * &b[k][l]);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, a: &Dense, b: &Dense) -> Dense {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| self.reduce(u - v)).collect())
            .collect()
    }

    /// `τ : K^a ⊗ K^b → K^b ⊗ K^a`.
    pub fn swap(&self, a: usize, b: usize) -> Dense {
        let mut out = self.zeros(a * b, a * b);
        for i in 0..a {
            for j in 0..b {
                out[j * a + i][i * b + j] = BigRational::one();
            }
        }
        out
    }

    /// Determinant by cofactor expansion; only for small matrices.
    pub fn det(&self, a: &Dense) -> BigRational {
        let n = a.len();
        if n == 0 {
            return BigRational::one();
        }
        let mut total = BigRational::zero();
        for j in 0..n {
            if a[0][j].is_zero() {
                continue;
            }
            let minor: Dense = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &a[0][j] * self.det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        self.reduce(total)
    }

    /// `s ⋆ t` evaluated on basis vectors: `Σ m[i][a·d+b] s[a][k] t[b][l] Δ[k·d+l][j]`.
    pub fn convolve(&self, m: &Dense, delta: &Dense, s: &Dense, t: &Dense) -> Dense {
        let d = s.len();
        let mut out = self.zeros(d, d);
        for (i, out_row) in out.iter_mut().enumerate() {
            for (j, cell) in out_row.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for a in 0..d {
                    for b in 0..d {
                        let mab = &m[i][a * d + b];
                        if mab.is_zero() {
                            continue;
                        }
                        for k in 0..d {
                            for l in 0..d {
                                acc += mab * &s[a][k] * &t[b][l] * &delta[k * d + l][j];
                            }
                        }
                    }
                }
                *cell = self.reduce(acc);
            }
        }
        out
    }
}
