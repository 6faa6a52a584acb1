//! Exact linear algebra over the rationals.
//!
//! Everything here is deterministic: elimination always picks the leftmost
//! nonzero column and, within it, the earliest available row.

mod matrix;
mod poly;
pub mod sparse;

pub use matrix::Matrix;
pub use poly::Polynomial;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use sparse::Echelon;

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(base: &Scalar, exp: i64) -> Scalar {
    let mut acc = Scalar::one();
    let b = if exp < 0 { base.recip() } else { base.clone() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Scalar::new(n, d))
}

/// Canonical `p/q` rendering (always with a denominator).
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short rendering: integers without a denominator.
pub fn display_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// Returns `x` with `Mx = v`, free variables set to zero; `None` if inconsistent.
pub fn solve_linear(m: &Matrix, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if m.rows() != v.len() {
        return Err(Error::Dimension(format!(
            "system has {} rows, right-hand side has length {}",
            m.rows(),
            v.len()
        )));
    }
    let n = m.cols();
    let mut aug = Matrix::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, v[i].clone());
    }
    let pivots = aug.rref_in_place();
    if pivots.contains(&n) {
        return Ok(None);
    }
    let mut x = zero_vec(n);
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, n).clone();
    }
    Ok(Some(x))
}

/// Basis of `ker(M)`, one vector per free column, in reduced echelon form.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut a = m.clone();
    let pivots = a.rref_in_place();
    let n = m.cols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vec(n);
        v[free] = Scalar::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -a.get(r, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Monic polynomial of least degree annihilating `m`.
pub fn minimal_polynomial(m: &Matrix) -> Result<Polynomial> {
    m.require_square()?;
    let n = m.rows();
    let flat = |a: &Matrix| a.entries().to_vec();
    let mut ech = Echelon::new(n * n);
    let mut power = Matrix::identity(n);
    let mut k = 0usize;
    loop {
        let v = flat(&power);
        match ech.express(&v) {
            Some(coeffs) => {
                let mut c: Vec<Scalar> = coeffs.iter().map(|x| -x.clone()).collect();
                c.resize(k, Scalar::zero());
                c.push(Scalar::one());
                return Ok(Polynomial::new(c));
            }
            None => {
                ech.insert_tracked(&v);
            }
        }
        power = power.mul(m)?;
        k += 1;
    }
}

pub fn is_semisimple(m: &Matrix) -> Result<bool> {
    Ok(minimal_polynomial(m)?.is_squarefree())
}

/// Minimal polynomial of `v` under the operator `apply` (monic, lowest first).
pub fn local_minimal_polynomial<F>(apply: F, v: &[Scalar]) -> Polynomial
where
    F: Fn(&[Scalar]) -> Vec<Scalar>,
{
    let mut ech = Echelon::new(v.len());
    let mut cur = v.to_vec();
    let mut k = 0usize;
    loop {
        match ech.express(&cur) {
            Some(coeffs) => {
                let mut c: Vec<Scalar> = coeffs.iter().map(|x| -x.clone()).collect();
                c.resize(k, Scalar::zero());
                c.push(Scalar::one());
                return Polynomial::new(c);
            }
            None => {
                ech.insert_tracked(&cur);
            }
        }
        cur = apply(&cur);
        k += 1;
    }
}

/// Projection of `v` onto `ker(M - I)` along `im(M - I)` for an operator
/// given as a closure.
pub fn fixed_space_projection_by<F>(apply: F, v: &[Scalar]) -> Result<Vec<Scalar>>
where
    F: Fn(&[Scalar]) -> Vec<Scalar>,
{
    let mu = local_minimal_polynomial(&apply, v);
    let one = Scalar::one();
    let (g, mult) = mu.strip_root(&one);
    match mult {
        0 => Ok(zero_vec(v.len())),
        1 => {
            let g1 = g.eval(&one);
            let mut acc = zero_vec(v.len());
            // Horner on the operator.
            for c in g.coeffs().iter().rev() {
                acc = apply(&acc);
                add_scaled(&mut acc, c, v);
            }
            Ok(scale_vec(&g1.recip(), &acc))
        }
        _ => Err(Error::NotSemisimple(format!(
            "eigenvalue 1 has a Jordan block of size {mult} on the cyclic subspace"
        ))),
    }
}

pub fn fixed_space_projection(m: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>> {
    m.require_square()?;
    if v.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} for a {}x{} matrix",
            v.len(),
            m.rows(),
            m.cols()
        )));
    }
    fixed_space_projection_by(|x| m.mul_vec(x).expect("square"), v)
}

/// Coordinates of `v` in a fixed complement of `span(subspace)` inside
/// `span(space)`.  The complement is spanned by those vectors of `space`
/// (in order) that are independent modulo the subspace and the earlier ones.
pub fn quotient_coordinates(
    space: &[Vec<Scalar>],
    subspace: &[Vec<Scalar>],
    v: &[Scalar],
) -> Result<Vec<Scalar>> {
    let n = v.len();
    let mut q = sparse::Quotient::new(n);
    for s in subspace {
        if s.len() != n {
            return Err(Error::Dimension("subspace vector length".into()));
        }
        q.add_relation(&sparse::to_sparse(s));
    }
    for s in space {
        if s.len() != n {
            return Err(Error::Dimension("space vector length".into()));
        }
        q.add_generator(&sparse::to_sparse(s));
    }
    q.coordinates(&sparse::to_sparse(v)).ok_or(Error::NotInSpan)
}

pub fn abs_max_height(v: &[Scalar]) -> BigInt {
    v.iter()
        .map(|x| x.numer().abs().max(x.denom().abs()))
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_linear(&m(&[&[1, 0], &[0, 1]]), &v(&[3, 5])).unwrap(), Some(v(&[3, 5])));
        assert_eq!(solve_linear(&m(&[&[1, 1]]), &v(&[2])).unwrap(), Some(v(&[2, 0])));
        assert_eq!(solve_linear(&m(&[&[1], &[1]]), &v(&[1, 2])).unwrap(), None);
        assert!(solve_linear(&m(&[&[1, 1]]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&m(&[&[1, 0], &[0, 1]])).is_empty());
        assert_eq!(kernel_basis(&m(&[&[1, 1]])), vec![v(&[-1, 1])]);
        assert_eq!(kernel_basis(&m(&[&[0]])), vec![v(&[1])]);
    }

    #[test]
    fn minimal_polynomial_examples() {
        let p = minimal_polynomial(&Matrix::identity(2)).unwrap();
        assert_eq!(p, Polynomial::new(v(&[-1, 1])));
        let p = minimal_polynomial(&m(&[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(p, Polynomial::new(v(&[2, -3, 1])));
        let p = minimal_polynomial(&m(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(p, Polynomial::new(v(&[0, 0, 1])));
        assert!(minimal_polynomial(&m(&[&[1, 2]])).is_err());
    }

    #[test]
    fn semisimplicity_examples() {
        assert!(is_semisimple(&m(&[&[1, 0], &[0, 2]])).unwrap());
        assert!(!is_semisimple(&m(&[&[0, 1], &[0, 0]])).unwrap());
        assert!(is_semisimple(&Matrix::identity(3)).unwrap());
    }

    #[test]
    fn projection_examples() {
        let x = v(&[7, -2, 5]);
        assert_eq!(fixed_space_projection(&Matrix::identity(3), &x).unwrap(), x);
        assert_eq!(fixed_space_projection(&m(&[&[1, 0], &[0, 2]]), &v(&[3, 4])).unwrap(), v(&[3, 0]));
        assert_eq!(fixed_space_projection(&m(&[&[2, 0], &[0, 3]]), &v(&[1, 1])).unwrap(), v(&[0, 0]));
        assert!(fixed_space_projection(&m(&[&[1, 1], &[0, 1]]), &v(&[0, 1])).is_err());
    }

    #[test]
    fn quotient_examples() {
        let space = vec![v(&[1, 0]), v(&[0, 1])];
        assert_eq!(quotient_coordinates(&space, &space, &v(&[4, 9])).unwrap(), Vec::<Scalar>::new());
        assert_eq!(quotient_coordinates(&space, &[], &v(&[4, 9])).unwrap(), v(&[4, 9]));
        assert_eq!(quotient_coordinates(&space, &[v(&[1, 0])], &v(&[2, 3])).unwrap(), v(&[3]));
        assert!(quotient_coordinates(&[v(&[1, 0])], &[], &v(&[0, 1])).is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        for s in ["3/1", "-1/2", "0/1", "22/7"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(parse_scalar("4/6").unwrap(), frac(2, 3));
        assert!(parse_scalar("1/0").is_none());
        assert_eq!(pow(&int(2), -3), frac(1, 8));
    }
}
