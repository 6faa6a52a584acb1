//! Finite-dimensional ℤ^r-graded algebras given by structure constants,
//! bicharacters, twisted tensor products and twisted bimodules.

use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{is_zero_vec, pow, zero_vec, Matrix, Scalar};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn concat(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn split(&self, at: usize) -> (Degree, Degree) {
        (Degree(self.0[..at].to_vec()), Degree(self.0[at..].to_vec()))
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        assert_eq!(self.rank(), rhs.rank(), "degree ranks differ");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Degree {
    type Output = Degree;
    fn sub(self, rhs: &Degree) -> Degree {
        assert_eq!(self.rank(), rhs.rank(), "degree ranks differ");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }
}

/// An algebra over ℚ with a homogeneous basis, one element of which is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    names: Vec<String>,
    degrees: Vec<Degree>,
    rank: usize,
    table: Vec<Vec<SparseVec>>,
    unit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Associativity { i: usize, j: usize, k: usize },
    UnitLaw { i: usize },
    Grading { i: usize, j: usize, k: usize },
    UnitDegree,
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            AlgebraViolation::UnitLaw { i } => write!(f, "unit law fails on basis element {i}"),
            AlgebraViolation::Grading { i, j, k } => {
                write!(f, "product e{i}·e{j} has a component on e{k} of the wrong degree")
            }
            AlgebraViolation::UnitDegree => write!(f, "unit basis element is not of degree 0"),
        }
    }
}

impl GradedAlgebra {
    /// Assembles an algebra from `(i, j, k, c)` entries meaning `e_i e_j ∋ c e_k`.
    /// Only shapes are validated here; see [`check_algebra`] for the axioms.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<Degree>,
        products: &[(usize, usize, usize, Scalar)],
        unit: usize,
    ) -> Result<Self> {
        let dim = degrees.len();
        if names.len() != dim {
            return Err(Error::InvalidAlgebra("basis names and degrees differ in length".into()));
        }
        if dim == 0 || unit >= dim {
            return Err(Error::InvalidAlgebra("unit index out of range".into()));
        }
        let rank = degrees[0].rank();
        if degrees.iter().any(|d| d.rank() != rank) {
            return Err(Error::InvalidAlgebra("degrees of different ranks".into()));
        }
        let mut dense = vec![vec![zero_vec(dim); dim]; dim];
        for (i, j, k, c) in products {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant ({i},{j},{k}) out of range"
                )));
            }
            dense[*i][*j][*k] += c;
        }
        let table = dense
            .into_iter()
            .map(|row| row.iter().map(|v| crate::linalg::sparse::to_sparse(v)).collect())
            .collect();
        Ok(GradedAlgebra { names, degrees, rank, table, unit })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &Degree {
        &self.degrees[i]
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn unit(&self) -> Vec<Scalar> {
        crate::linalg::unit_vec(self.dim(), self.unit)
    }

    /// Basis indices of R̄ (all non-unit basis elements), in order.
    pub fn reduced_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| i != self.unit).collect()
    }

    /// `e_i e_j` as sparse coordinates.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j].iter().find(|(kk, _)| *kk == k).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// All nonzero structure constants in lexicographic order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in &self.table[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension(format!(
                "elements of length {} and {} in an algebra of dimension {n}",
                x.len(),
                y.len()
            )));
        }
        let mut out = zero_vec(n);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `m ↦ x m` on the regular representation.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|k| self.multiply(x, &crate::linalg::unit_vec(n, k)).expect("dims"))
            .collect();
        Matrix::from_columns(n, &cols).expect("dims")
    }

    /// Matrix of `m ↦ m x` on the regular representation.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|k| self.multiply(&crate::linalg::unit_vec(n, k), x).expect("dims"))
            .collect();
        Matrix::from_columns(n, &cols).expect("dims")
    }

    /// Degree of a nonzero element if it is homogeneous.
    pub fn homogeneous_degree(&self, x: &[Scalar]) -> Option<Degree> {
        let mut deg: Option<&Degree> = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(&self.degrees[i]),
                Some(d) if d != &self.degrees[i] => return None,
                _ => {}
            }
        }
        deg.cloned()
    }
}

/// Lists every violated algebra axiom (empty means the algebra is valid).
pub fn check_algebra(alg: &GradedAlgebra) -> Vec<AlgebraViolation> {
    let n = alg.dim();
    let mut out = Vec::new();
    if !alg.degree(alg.unit).is_zero() {
        out.push(AlgebraViolation::UnitDegree);
    }
    for i in 0..n {
        let e = crate::linalg::unit_vec(n, i);
        let l = alg.multiply(&alg.unit(), &e).expect("dims");
        let r = alg.multiply(&e, &alg.unit()).expect("dims");
        if l != e || r != e {
            out.push(AlgebraViolation::UnitLaw { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            for (k, _) in alg.mul_basis(i, j) {
                if alg.degree(*k) != &(alg.degree(i) + alg.degree(j)) {
                    out.push(AlgebraViolation::Grading { i, j, k: *k });
                }
            }
        }
    }
    for i in 0..n {
        let ei = crate::linalg::unit_vec(n, i);
        for j in 0..n {
            let ej = crate::linalg::unit_vec(n, j);
            let eij = alg.multiply(&ei, &ej).expect("dims");
            for k in 0..n {
                let ek = crate::linalg::unit_vec(n, k);
                let left = alg.multiply(&eij, &ek).expect("dims");
                let ejk = alg.multiply(&ej, &ek).expect("dims");
                let right = alg.multiply(&ei, &ejk).expect("dims");
                if left != right {
                    out.push(AlgebraViolation::Associativity { i, j, k });
                }
            }
        }
    }
    out
}

/// `t(a, b) = Π q_ij^{a_i b_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    q: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn new(q: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = q.first().map_or(0, Vec::len);
        if q.is_empty() || cols == 0 || q.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidBicharacter("q matrix must be a nonempty rectangle".into()));
        }
        if q.iter().flatten().any(Zero::is_zero) {
            return Err(Error::InvalidBicharacter("q matrix has a zero entry".into()));
        }
        Ok(Bicharacter { q })
    }

    pub fn trivial(left_rank: usize, right_rank: usize) -> Self {
        Bicharacter { q: vec![vec![Scalar::one(); right_rank]; left_rank] }
    }

    pub fn q_matrix(&self) -> &[Vec<Scalar>] {
        &self.q
    }

    pub fn left_rank(&self) -> usize {
        self.q.len()
    }

    pub fn right_rank(&self) -> usize {
        self.q[0].len()
    }

    pub fn eval(&self, a: &Degree, b: &Degree) -> Result<Scalar> {
        if a.rank() != self.left_rank() || b.rank() != self.right_rank() {
            return Err(Error::Dimension(format!(
                "bicharacter of shape {}x{} evaluated at degrees of ranks {} and {}",
                self.left_rank(),
                self.right_rank(),
                a.rank(),
                b.rank()
            )));
        }
        let mut acc = Scalar::one();
        for (i, ai) in a.0.iter().enumerate() {
            for (j, bj) in b.0.iter().enumerate() {
                if *ai != 0 && *bj != 0 {
                    acc *= pow(&self.q[i][j], ai * bj);
                }
            }
        }
        Ok(acc)
    }

    /// `t(a, b)` for degrees already known to have matching ranks.
    pub fn at(&self, a: &Degree, b: &Degree) -> Scalar {
        self.eval(a, b).expect("bicharacter rank mismatch")
    }

    /// The character b̂ = t(−, b) on the left grading group.
    pub fn right_character(&self, b: &Degree) -> Result<Character> {
        if b.rank() != self.right_rank() {
            return Err(Error::Dimension("twist degree rank".into()));
        }
        let values = (0..self.left_rank())
            .map(|i| {
                let mut e = Degree::zero(self.left_rank());
                e.0[i] = 1;
                self.at(&e, b)
            })
            .collect();
        Ok(Character { values })
    }

    /// The character â = t(a, −) on the right grading group.
    pub fn left_character(&self, a: &Degree) -> Result<Character> {
        if a.rank() != self.left_rank() {
            return Err(Error::Dimension("twist degree rank".into()));
        }
        let values = (0..self.right_rank())
            .map(|j| {
                let mut e = Degree::zero(self.right_rank());
                e.0[j] = 1;
                self.at(a, &e)
            })
            .collect();
        Ok(Character { values })
    }
}

/// A multiplicative character ℤ^r → ℚ^×, stored by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn trivial(rank: usize) -> Self {
        Character { values: vec![Scalar::one(); rank] }
    }

    pub fn eval(&self, d: &Degree) -> Scalar {
        self.values.iter().zip(&d.0).fold(Scalar::one(), |acc, (v, e)| acc * pow(v, *e))
    }

    pub fn inverse(&self) -> Character {
        Character { values: self.values.iter().map(Scalar::recip).collect() }
    }

    /// Diagonal matrix of the action on the basis of `alg`.
    pub fn matrix(&self, alg: &GradedAlgebra) -> Matrix {
        Matrix::diagonal(&alg.degrees().iter().map(|d| self.eval(d)).collect::<Vec<_>>())
    }
}

/// `λ · x = λ(|x|) x` applied per basis coefficient.
pub fn character_action(alg: &GradedAlgebra, chi: &Character, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(alg.degrees()).map(|(c, d)| c * chi.eval(d)).collect()
}

/// R ⊗^t S with `(r⊗s)(r'⊗s') = t(|r'|,|s|) rr' ⊗ ss'`; basis `e_i ⊗ f_j`
/// sits at index `i * dim S + j`.
pub fn twisted_tensor(r: &GradedAlgebra, s: &GradedAlgebra, t: &Bicharacter) -> Result<GradedAlgebra> {
    if t.left_rank() != r.rank() || t.right_rank() != s.rank() {
        return Err(Error::InvalidBicharacter(format!(
            "bicharacter of shape {}x{} for gradings of ranks {} and {}",
            t.left_rank(),
            t.right_rank(),
            r.rank(),
            s.rank()
        )));
    }
    let ds = s.dim();
    let idx = |i: usize, j: usize| i * ds + j;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..r.dim() {
        for j in 0..ds {
            names.push(format!("{}⊗{}", r.name(i), s.name(j)));
            degrees.push(r.degree(i).concat(s.degree(j)));
        }
    }
    let mut products = Vec::new();
    for i in 0..r.dim() {
        for j in 0..ds {
            for k in 0..r.dim() {
                let rr = r.mul_basis(i, k);
                if rr.is_empty() {
                    continue;
                }
                for l in 0..ds {
                    let ss = s.mul_basis(j, l);
                    if ss.is_empty() {
                        continue;
                    }
                    let tw = t.at(r.degree(k), s.degree(j));
                    for (a, ca) in rr {
                        for (b, cb) in ss {
                            products.push((idx(i, j), idx(k, l), idx(*a, *b), &tw * ca * cb));
                        }
                    }
                }
            }
        }
    }
    GradedAlgebra::new(names, degrees, &products, idx(r.unit_index(), s.unit_index()))
}

/// Which twisted module a [`TwistedBimodule`] realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Regular,
    /// R_b̂: right action scaled by t(|x|, b).
    RightTwisted(Degree),
    /// _âS: left action scaled by t(a, |x|).
    LeftTwisted(Degree),
    /// A_φ: right action through φ.
    Automorphism(Matrix),
}

/// A bimodule over a graded algebra whose underlying space is the algebra
/// itself; action matrices act on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedBimodule {
    pub kind: ModuleKind,
    degrees: Vec<Degree>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl TwistedBimodule {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_action(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    /// `e_i · m`.
    pub fn act_left(&self, i: usize, m: &[Scalar]) -> Vec<Scalar> {
        self.left[i].mul_vec(m).expect("module dims")
    }

    /// `m · e_i`.
    pub fn act_right(&self, m: &[Scalar], i: usize) -> Vec<Scalar> {
        self.right[i].mul_vec(m).expect("module dims")
    }

    /// `x · m` for an arbitrary algebra element.
    pub fn act_left_elem(&self, x: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            crate::linalg::add_scaled(&mut out, c, &self.act_left(i, m));
        }
        out
    }

    /// `m · x` for an arbitrary algebra element.
    pub fn act_right_elem(&self, m: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            crate::linalg::add_scaled(&mut out, c, &self.act_right(m, i));
        }
        out
    }

    pub fn same_shape(&self, alg: &GradedAlgebra) -> bool {
        self.left.len() == alg.dim() && self.right.len() == alg.dim()
    }
}

pub fn regular_bimodule(alg: &GradedAlgebra) -> TwistedBimodule {
    let n = alg.dim();
    TwistedBimodule {
        kind: ModuleKind::Regular,
        degrees: alg.degrees().to_vec(),
        left: (0..n).map(|i| alg.left_mult_matrix(&crate::linalg::unit_vec(n, i))).collect(),
        right: (0..n).map(|i| alg.right_mult_matrix(&crate::linalg::unit_vec(n, i))).collect(),
    }
}

/// R_b̂: `x · m = xm`, `m · x = t(|x|, b) mx`.
pub fn twisted_bimodule_right(r: &GradedAlgebra, t: &Bicharacter, b: &Degree) -> Result<TwistedBimodule> {
    let chi = t.right_character(b)?;
    let mut m = regular_bimodule(r);
    for (i, act) in m.right.iter_mut().enumerate() {
        *act = act.scale(&chi.eval(r.degree(i)));
    }
    m.kind = if b.is_zero() { ModuleKind::Regular } else { ModuleKind::RightTwisted(b.clone()) };
    Ok(m)
}

/// _âS: `x · m = t(a, |x|) xm`, `m · x = mx`.
pub fn twisted_bimodule_left(s: &GradedAlgebra, t: &Bicharacter, a: &Degree) -> Result<TwistedBimodule> {
    let chi = t.left_character(a)?;
    let mut m = regular_bimodule(s);
    for (i, act) in m.left.iter_mut().enumerate() {
        *act = act.scale(&chi.eval(s.degree(i)));
    }
    m.kind = if a.is_zero() { ModuleKind::Regular } else { ModuleKind::LeftTwisted(a.clone()) };
    Ok(m)
}

/// Checks that `phi` (columns = images of basis vectors) is a graded
/// algebra automorphism.
pub fn check_automorphism(alg: &GradedAlgebra, phi: &Matrix) -> Result<()> {
    let n = alg.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::NotAutomorphism(format!("matrix is {}x{}, expected {n}x{n}", phi.rows(), phi.cols())));
    }
    for i in 0..n {
        for k in 0..n {
            if !phi.get(k, i).is_zero() && alg.degree(k) != alg.degree(i) {
                return Err(Error::NotAutomorphism(format!("does not preserve the degree of basis element {i}")));
            }
        }
    }
    if phi.mul_vec(&alg.unit()).expect("dims") != alg.unit() {
        return Err(Error::NotAutomorphism("does not fix the unit".into()));
    }
    if phi.inverse()?.is_none() {
        return Err(Error::NotAutomorphism("not invertible".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let ij = alg.multiply(&crate::linalg::unit_vec(n, i), &crate::linalg::unit_vec(n, j))?;
            let lhs = phi.mul_vec(&ij)?;
            let rhs = alg.multiply(&phi.column(i), &phi.column(j))?;
            if lhs != rhs {
                return Err(Error::NotAutomorphism(format!("not multiplicative on basis pair ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// A_φ: left action regular, right action `m · x = m φ(x)`.
pub fn automorphism_twisted_module(alg: &GradedAlgebra, phi: &Matrix) -> Result<TwistedBimodule> {
    check_automorphism(alg, phi)?;
    let mut m = regular_bimodule(alg);
    m.right = (0..alg.dim()).map(|i| alg.right_mult_matrix(&phi.column(i))).collect();
    m.kind = if *phi == Matrix::identity(alg.dim()) {
        ModuleKind::Regular
    } else {
        ModuleKind::Automorphism(phi.clone())
    };
    Ok(m)
}

/// Lists violated bimodule laws (empty means valid).
pub fn check_bimodule(alg: &GradedAlgebra, m: &TwistedBimodule) -> Vec<String> {
    let n = alg.dim();
    let d = m.dim();
    let mut out = Vec::new();
    if !m.same_shape(alg) {
        return vec!["action count does not match algebra dimension".into()];
    }
    let u = alg.unit_index();
    if *m.left_action(u) != Matrix::identity(d) || *m.right_action(u) != Matrix::identity(d) {
        out.push("unit does not act as the identity".into());
    }
    for i in 0..n {
        for j in 0..n {
            let lr = m.left_action(i).mul(m.right_action(j)).expect("dims");
            let rl = m.right_action(j).mul(m.left_action(i)).expect("dims");
            if lr != rl {
                out.push(format!("left action of {i} and right action of {j} do not commute"));
            }
            let prod = alg.multiply(&crate::linalg::unit_vec(n, i), &crate::linalg::unit_vec(n, j)).expect("dims");
            let mut left_prod = Matrix::zeros(d, d);
            let mut right_prod = Matrix::zeros(d, d);
            for (k, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                left_prod = left_prod.add(&m.left_action(k).scale(c)).expect("dims");
                right_prod = right_prod.add(&m.right_action(k).scale(c)).expect("dims");
            }
            if m.left_action(i).mul(m.left_action(j)).expect("dims") != left_prod {
                out.push(format!("left action not associative on ({i}, {j})"));
            }
            if m.right_action(j).mul(m.right_action(i)).expect("dims") != right_prod {
                out.push(format!("right action not associative on ({i}, {j})"));
            }
        }
    }
    for i in 0..n {
        for (act, side) in [(m.left_action(i), "left"), (m.right_action(i), "right")] {
            for k in 0..d {
                let col = act.column(k);
                if is_zero_vec(&col) {
                    continue;
                }
                for (l, c) in col.iter().enumerate() {
                    if !c.is_zero() && m.degrees()[l] != &m.degrees()[k] + alg.degree(i) {
                        out.push(format!("{side} action of {i} is not graded"));
                    }
                }
            }
        }
    }
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    pub(crate) fn truncated(n: usize) -> GradedAlgebra {
        let names = (0..n).map(|i| format!("x^{i}")).collect();
        let degrees = (0..n).map(|i| Degree(vec![i as i64])).collect();
        let mut prods = Vec::new();
        for i in 0..n {
            for j in 0..n - i {
                prods.push((i, j, i + j, int(1)));
            }
        }
        GradedAlgebra::new(names, degrees, &prods, 0).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        crate::linalg::unit_vec(n, i)
    }

    #[test]
    fn truncated_multiplication() {
        let a = truncated(3);
        assert_eq!(a.multiply(&e(3, 1), &e(3, 1)).unwrap(), e(3, 2));
        assert_eq!(a.multiply(&e(3, 2), &e(3, 1)).unwrap(), zero_vec(3));
        for i in 0..3 {
            assert_eq!(a.multiply(&a.unit(), &e(3, i)).unwrap(), e(3, i));
        }
        assert!(check_algebra(&a).is_empty());
    }

    #[test]
    fn check_algebra_reports_violations() {
        let degrees = vec![Degree(vec![0]), Degree(vec![1])];
        let names = vec!["1".to_string(), "x".to_string()];
        // x·x lands on x, which has degree 1 rather than 2.
        let prods = [(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(1)), (1, 1, 1, int(1))];
        let a = GradedAlgebra::new(names.clone(), degrees.clone(), &prods, 0).unwrap();
        assert!(check_algebra(&a).contains(&AlgebraViolation::Grading { i: 1, j: 1, k: 1 }));
        // x·x = 1 + x (ungraded, but associativity still holds); x·1 broken.
        let prods = [(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(2))];
        let a = GradedAlgebra::new(names, degrees, &prods, 0).unwrap();
        let report = check_algebra(&a);
        assert!(report.contains(&AlgebraViolation::UnitLaw { i: 1 }));
        assert!(report.iter().any(|v| matches!(v, AlgebraViolation::Associativity { .. })));
    }

    #[test]
    fn bicharacter_examples() {
        let t = Bicharacter::new(vec![vec![int(2)]]).unwrap();
        assert_eq!(t.eval(&Degree(vec![3]), &Degree(vec![2])).unwrap(), int(64));
        assert_eq!(t.eval(&Degree(vec![0]), &Degree(vec![5])).unwrap(), int(1));
        assert_eq!(t.eval(&Degree(vec![1]), &Degree(vec![-1])).unwrap(), frac(1, 2));
        assert!(t.eval(&Degree(vec![1, 0]), &Degree(vec![1])).is_err());
        assert!(Bicharacter::new(vec![vec![int(0)]]).is_err());
    }

    #[test]
    fn character_examples() {
        let a = truncated(2);
        let t = Bicharacter::new(vec![vec![int(2)]]).unwrap();
        let chi = t.right_character(&Degree(vec![1])).unwrap();
        assert_eq!(character_action(&a, &chi, &e(2, 1)), vec![int(0), int(2)]);
        assert_eq!(character_action(&a, &chi, &a.unit()), a.unit());
        assert_eq!(character_action(&a, &Character::trivial(1), &e(2, 1)), e(2, 1));
    }

    #[test]
    fn twisted_tensor_examples() {
        let r = truncated(2);
        let t = Bicharacter::new(vec![vec![int(2)]]).unwrap();
        let a = twisted_tensor(&r, &r, &t).unwrap();
        assert!(check_algebra(&a).is_empty());
        // basis: 0=1⊗1, 1=1⊗y, 2=x⊗1, 3=x⊗y
        assert_eq!(a.multiply(&e(4, 1), &e(4, 2)).unwrap(), vec![int(0), int(0), int(0), int(2)]);
        assert_eq!(a.multiply(&e(4, 2), &e(4, 1)).unwrap(), e(4, 3));
        let untwisted = twisted_tensor(&r, &r, &Bicharacter::trivial(1, 1)).unwrap();
        assert_eq!(untwisted.multiply(&e(4, 1), &e(4, 2)).unwrap(), e(4, 3));
    }

    #[test]
    fn twisted_bimodules() {
        let r = truncated(2);
        let t = Bicharacter::new(vec![vec![int(2)]]).unwrap();
        let reg = regular_bimodule(&r);
        assert_eq!(twisted_bimodule_right(&r, &t, &Degree(vec![0])).unwrap(), reg);
        assert_eq!(twisted_bimodule_left(&r, &t, &Degree(vec![0])).unwrap(), reg);
        let rb = twisted_bimodule_right(&r, &t, &Degree(vec![1])).unwrap();
        assert_eq!(rb.act_right(&r.unit(), 1), vec![int(0), int(2)]);
        assert_eq!(rb.act_left(1, &r.unit()), vec![int(0), int(1)]);
        let la = twisted_bimodule_left(&r, &t, &Degree(vec![1])).unwrap();
        assert_eq!(la.act_left(1, &r.unit()), vec![int(0), int(2)]);
        assert_eq!(la.right_action(1), reg.right_action(1));
        for m in [&rb, &la] {
            assert!(check_bimodule(&r, m).is_empty());
        }
        assert_eq!(automorphism_twisted_module(&r, &Matrix::identity(2)).unwrap(), reg);
        let bad = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
        assert!(automorphism_twisted_module(&r, &bad).is_err());
    }
}
