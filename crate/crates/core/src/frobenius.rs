//! Graded Frobenius structures and their Nakayama automorphisms.

use crate::algebra::{check_automorphism, twisted_tensor, Bicharacter, Degree, GradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{is_semisimple, unit_vec, Matrix, Scalar};
use num_traits::Zero;
use std::collections::BTreeSet;

/// A nondegenerate invariant pairing `gram[i][j] = ⟨e_i, e_j⟩` together with
/// its grading shift and Nakayama automorphism (columns are `ν(e_i)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusStructure {
    pub algebra: GradedAlgebra,
    gram: Matrix,
    gram_inv: Matrix,
    sigma: Degree,
    nakayama: Matrix,
    nakayama_inv: Matrix,
}

impl FrobeniusStructure {
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inv
    }

    pub fn sigma(&self) -> &Degree {
        &self.sigma
    }

    pub fn nakayama(&self) -> &Matrix {
        &self.nakayama
    }

    pub fn nakayama_inverse(&self) -> &Matrix {
        &self.nakayama_inv
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.mul_vec(y).expect("dims");
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `⟨x, −⟩ = ⟨−, ν(x)⟩` for all basis vectors, checked directly.
    pub fn nakayama_law_holds(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            let nu_a = self.nakayama.column(a);
            (0..n).all(|b| self.pair(&unit_vec(n, a), &unit_vec(n, b)) == self.pair(&unit_vec(n, b), &nu_a))
        })
    }
}

pub fn validate_frobenius(alg: &GradedAlgebra, gram: &Matrix) -> Result<FrobeniusStructure> {
    let n = alg.dim();
    if gram.rows() != n || gram.cols() != n {
        return Err(Error::InvalidFrobenius(format!(
            "Gram matrix is {}x{}, algebra has dimension {n}",
            gram.rows(),
            gram.cols()
        )));
    }
    let gram_inv = gram
        .inverse()?
        .ok_or_else(|| Error::InvalidFrobenius("Gram matrix is degenerate".into()))?;
    // ⟨e_i e_j, e_k⟩ = ⟨e_i, e_j e_k⟩
    for i in 0..n {
        for j in 0..n {
            let ij = alg.multiply(&unit_vec(n, i), &unit_vec(n, j))?;
            for k in 0..n {
                let jk = alg.multiply(&unit_vec(n, j), &unit_vec(n, k))?;
                let lhs: Scalar = ij.iter().enumerate().map(|(a, c)| c * gram.get(a, k)).sum();
                let rhs: Scalar = jk.iter().enumerate().map(|(b, c)| c * gram.get(i, b)).sum();
                if lhs != rhs {
                    return Err(Error::InvalidFrobenius(format!(
                        "form is not invariant on basis triple ({i}, {j}, {k})"
                    )));
                }
            }
        }
    }
    let mut shifts = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if !gram.get(i, j).is_zero() {
                shifts.insert(&(-alg.degree(i)) - alg.degree(j));
            }
        }
    }
    if shifts.len() != 1 {
        return Err(Error::InvalidFrobenius(format!(
            "no consistent grading shift (candidates {shifts:?})"
        )));
    }
    let sigma = shifts.into_iter().next().expect("singleton");
    let nakayama = gram_inv.mul(&gram.transpose())?;
    check_automorphism(alg, &nakayama)
        .map_err(|e| Error::InvalidFrobenius(format!("Nakayama map fails: {e}")))?;
    let nakayama_inv = nakayama.inverse()?.expect("automorphism is invertible");
    Ok(FrobeniusStructure { algebra: alg.clone(), gram: gram.clone(), gram_inv, sigma, nakayama, nakayama_inv })
}

pub fn nakayama_semisimple(frob: &FrobeniusStructure) -> bool {
    is_semisimple(frob.nakayama()).expect("square")
}

/// Gram matrix `⟨e_i⊗f_j, e_k⊗f_l⟩ = t(|e_k|, |f_j|) ⟨e_i,e_k⟩ ⟨f_j,f_l⟩`.
pub fn twisted_product_gram(fr: &FrobeniusStructure, fs: &FrobeniusStructure, t: &Bicharacter) -> Matrix {
    let (r, s) = (&fr.algebra, &fs.algebra);
    let ds = s.dim();
    let mut g = Matrix::zeros(r.dim() * ds, r.dim() * ds);
    for i in 0..r.dim() {
        for k in 0..r.dim() {
            let gr = fr.gram().get(i, k);
            if gr.is_zero() {
                continue;
            }
            for j in 0..ds {
                let tw = t.at(r.degree(k), s.degree(j));
                for l in 0..ds {
                    let gs = fs.gram().get(j, l);
                    if !gs.is_zero() {
                        g.set(i * ds + j, k * ds + l, &tw * gr * gs);
                    }
                }
            }
        }
    }
    g
}

pub fn twisted_frobenius_product(
    fr: &FrobeniusStructure,
    fs: &FrobeniusStructure,
    t: &Bicharacter,
) -> Result<FrobeniusStructure> {
    let a = twisted_tensor(&fr.algebra, &fs.algebra, t)?;
    validate_frobenius(&a, &twisted_product_gram(fr, fs, t))
}

/// `ν(a⊗b) = t(|a|, σ_S) t(σ_R, |b|)^{-1} ν_R(a) ⊗ ν_S(b)` as a matrix.
pub fn nakayama_product_formula(fr: &FrobeniusStructure, fs: &FrobeniusStructure, t: &Bicharacter) -> Matrix {
    let (r, s) = (&fr.algebra, &fs.algebra);
    let ds = s.dim();
    let mut m = fr.nakayama().kron(fs.nakayama());
    for i in 0..r.dim() {
        for j in 0..ds {
            let c = t.at(r.degree(i), fs.sigma()) / t.at(fr.sigma(), s.degree(j));
            for row in 0..m.rows() {
                let x = m.get(row, i * ds + j) * &c;
                m.set(row, i * ds + j, x);
            }
        }
    }
    m
}

pub fn check_nakayama_product_formula(fr: &FrobeniusStructure, fs: &FrobeniusStructure, t: &Bicharacter) -> bool {
    match twisted_frobenius_product(fr, fs, t) {
        Ok(prod) => *prod.nakayama() == nakayama_product_formula(fr, fs, t),
        Err(_) => false,
    }
}

/// Left dual basis `⟨ε_i, e_j⟩ = δ_ij` and right dual basis `⟨e_i, φ_j⟩ = δ_ij`.
pub fn dualizing_bases(frob: &FrobeniusStructure) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
    let ginv = frob.gram_inverse();
    let left = ginv.to_rows();
    let right = (0..frob.dim()).map(|j| ginv.column(j)).collect();
    (left, right)
}
