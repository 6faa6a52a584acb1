//! Transport between cochains `C^*(A, M)` and functionals on chains
//! `C_*(A, A_φ)`, where `M ≅ D(A_φ)` via `e_k ↦ c_k ⟨e_k, −⟩`.

use super::{BarComplex, Cochain};
use crate::algebra::{
    regular_bimodule, twisted_bimodule_left, twisted_bimodule_right, Bicharacter, Degree, TwistedBimodule,
};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusStructure;
use crate::linalg::sparse::SparseVec;
use crate::linalg::{fixed_space_projection_by, is_semisimple, zero_vec, Matrix, Scalar};
use num_traits::{One, Zero};

/// Which coefficient module the cochains take values in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    /// Regular coefficients `A`, chains in `A_ν`.
    None,
    /// `R_b̂`, chains in `R_{ν b̂⁻¹}`.
    Right(Degree),
    /// `_âS`, chains in `S_{ν â}`.
    Left(Degree),
}

/// Everything needed to move between cochains and chain functionals for a
/// fixed Frobenius algebra and twist.
#[derive(Clone, Debug)]
pub struct DualityData {
    pub frob: FrobeniusStructure,
    pub twist: Twist,
    /// Composite automorphism φ acting on the chain coefficients (columns are images).
    pub phi: Matrix,
    /// `c_k` in `e_k ↦ c_k ⟨e_k, −⟩`.
    pub scalars: Vec<Scalar>,
    pub complex: BarComplex,
    h: Matrix,
    ht_inv: Matrix,
    k: Matrix,
    phi_slots: Vec<SparseVec>,
}

impl DualityData {
    pub fn new(frob: &FrobeniusStructure, twist: Twist, t: Option<&Bicharacter>) -> Result<Self> {
        let alg = &frob.algebra;
        let n = alg.dim();
        let need_t = || t.ok_or_else(|| Error::Invalid("a twisted context needs a bicharacter".into()));
        let (module, chi_diag, scalars): (TwistedBimodule, Vec<Scalar>, Vec<Scalar>) = match &twist {
            Twist::None => (regular_bimodule(alg), vec![Scalar::one(); n], vec![Scalar::one(); n]),
            Twist::Right(b) => {
                let t = need_t()?;
                let inv = t.right_character(b)?.inverse();
                let vals: Vec<Scalar> = alg.degrees().iter().map(|d| inv.eval(d)).collect();
                (twisted_bimodule_right(alg, t, b)?, vals.clone(), vals)
            }
            Twist::Left(a) => {
                let t = need_t()?;
                let chi = t.left_character(a)?;
                let vals = alg.degrees().iter().map(|d| chi.eval(d)).collect();
                (twisted_bimodule_left(alg, t, a)?, vals, vec![Scalar::one(); n])
            }
        };
        let phi = frob.nakayama().mul(&Matrix::diagonal(&chi_diag))?;
        let complex = BarComplex::new(alg, &module)?;
        Self::assemble(frob.clone(), twist, phi, scalars, complex)
    }

    fn assemble(
        frob: FrobeniusStructure,
        twist: Twist,
        phi: Matrix,
        scalars: Vec<Scalar>,
        complex: BarComplex,
    ) -> Result<Self> {
        let h = Matrix::diagonal(&scalars).mul(frob.gram())?;
        let ht_inv = h.transpose().inverse()?.ok_or_else(|| Error::InvalidFrobenius("degenerate pairing".into()))?;
        let k = ht_inv.mul(&phi.transpose())?.mul(&h.transpose())?;
        let bar = &complex.bar;
        let phi_slots = (0..bar.nred()).map(|p| bar.reduce_elem(&phi.column(bar.basis(p)))).collect();
        Ok(DualityData { frob, twist, phi, scalars, complex, h, ht_inv, k, phi_slots })
    }

    /// Same data with every `c_k` replaced by one (a deliberately wrong
    /// transport, used to check that tests notice the twist factor).
    #[doc(hidden)]
    pub fn without_twist_scalars(&self) -> Result<Self> {
        let n = self.frob.dim();
        Self::assemble(self.frob.clone(), self.twist.clone(), self.phi.clone(), vec![Scalar::one(); n], self.complex.clone())
    }

    pub fn module(&self) -> &TwistedBimodule {
        &self.complex.module
    }

    pub fn dim(&self) -> usize {
        self.frob.dim()
    }

    /// `H[k][i] = c_k ⟨e_k, e_i⟩`.
    pub fn pairing(&self) -> &Matrix {
        &self.h
    }

    pub fn pairing_transpose_inverse(&self) -> &Matrix {
        &self.ht_inv
    }

    pub fn phi_slot(&self, pos: usize) -> &SparseVec {
        &self.phi_slots[pos]
    }

    /// `F(e_u, σ)` for a tuple `σ` given by slot vectors, with `u` the unit.
    pub fn pair_with_unit(&self, f: &Cochain, slots: &[SparseVec]) -> Scalar {
        let value = self.complex.evaluate(f, slots);
        let u = self.frob.algebra.unit_index();
        value.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| x * self.h.get(k, u)).sum()
    }

    /// Recovers a module value from its pairings `v_i = F(e_i, τ)`.
    pub fn recover(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.ht_inv.mul_vec(v).expect("dims")
    }
}

/// `∂^{-1}(f)(e_i, τ) = Σ_k f_k(τ) c_k ⟨e_k, e_i⟩` as a dense vector over
/// chain basis entries (tuple-major).
pub fn dual_transport(data: &DualityData, f: &Cochain) -> Result<Vec<Scalar>> {
    let n = data.dim();
    let count = data.complex.bar.count(f.level);
    if f.values.len() != count * n {
        return Err(Error::Coefficients("cochain does not match the duality data".into()));
    }
    let ht = data.h.transpose();
    let mut out = Vec::with_capacity(count * n);
    for t in 0..count {
        out.extend(ht.mul_vec(f.value(t, n))?);
    }
    Ok(out)
}

pub fn dual_transport_inverse(data: &DualityData, level: usize, functional: &[Scalar]) -> Result<Cochain> {
    let n = data.dim();
    let count = data.complex.bar.count(level);
    if functional.len() != count * n {
        return Err(Error::Coefficients("functional does not match the duality data".into()));
    }
    let mut values = Vec::with_capacity(count * n);
    for t in 0..count {
        values.extend(data.recover(&functional[t * n..(t + 1) * n]));
    }
    Ok(data.complex.with_degree(Cochain { level, values, degree: None }))
}

/// `T* = ∂ ∘ D(T) ∘ ∂^{-1}`: `(T*f)(τ) = K f(φ^{⊗p} τ)` with
/// `K = H^{-T} Φ^T H^T`.
pub fn t_star(data: &DualityData, f: &Cochain) -> Result<Cochain> {
    let n = data.dim();
    let bar = &data.complex.bar;
    let p = f.level;
    if f.values.len() != bar.count(p) * n {
        return Err(Error::Coefficients("cochain does not match the duality data".into()));
    }
    let mut values = Vec::with_capacity(f.values.len());
    for t in 0..bar.count(p) {
        let slots: Vec<SparseVec> = bar.decode(t, p).iter().map(|&a| data.phi_slots[a].clone()).collect();
        let g = data.complex.evaluate(f, &slots);
        values.extend(data.k.mul_vec(&g)?);
    }
    Ok(Cochain { level: p, values, degree: f.degree.clone() })
}

pub fn is_invariant(data: &DualityData, f: &Cochain) -> Result<bool> {
    Ok(t_star(data, f)?.values == f.values)
}

/// A `T*`-fixed cocycle cohomologous to `f`.
pub fn invariant_representative(data: &DualityData, f: &Cochain) -> Result<Cochain> {
    if !data.complex.is_cocycle(f)? {
        return Err(Error::NotCocycle);
    }
    if is_invariant(data, f)? {
        return Ok(data.complex.with_degree(f.clone()));
    }
    if !is_semisimple(&data.phi)? {
        return Err(Error::NotSemisimple("composite automorphism is not semisimple".into()));
    }
    let level = f.level;
    let degree = f.degree.clone();
    let apply = |v: &[Scalar]| {
        let c = Cochain { level, values: v.to_vec(), degree: degree.clone() };
        t_star(data, &c).expect("shape checked").values
    };
    let values = fixed_space_projection_by(apply, &f.values)?;
    let g = data.complex.with_degree(Cochain { level, values, degree: None });
    debug_assert!(is_invariant(data, &g).unwrap_or(false));
    Ok(g)
}

/// Zero cochain at `level` for this data.
pub fn zero_cochain(data: &DualityData, level: usize) -> Cochain {
    Cochain { level, values: zero_vec(data.complex.cochain_len(level)), degree: None }
}
