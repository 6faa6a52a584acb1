//! Algebra-definition files.
//!
//! A definition is a TOML document with five keys:
//!
//! ```toml
//! basis = ["1", "x", "x^2"]      # basis element names, all distinct
//! degrees = [[0], [1], [2]]      # one integer vector per basis element
//! unit = "1"                     # name of the unit element
//! products = [                   # left · right ∋ coefficient · result
//!     ["x", "x", "x^2", "1"],
//! ]
//! gram = [                       # ⟨e_i, e_j⟩, row by row
//!     ["0", "0", "1"],
//!     ["0", "1", "0"],
//!     ["1", "0", "0"],
//! ]
//! ```
//!
//! Scalars are strings `"p"` or `"p/q"`. Products with the unit are implied
//! and must not be listed; all other nonzero structure constants must be.
//! [`AlgebraFile::to_toml`] writes the canonical form, which parses back to
//! the same value and re-renders byte for byte.

use crate::algebra::{Degree, GradedAlgebra};
use crate::error::{Error, Result};
use crate::frobenius::{validate_frobenius, FrobeniusStructure};
use crate::linalg::{display_scalar, parse_scalar, Matrix, Scalar};
use num_traits::Zero;
use serde::Deserialize;
use std::collections::HashMap;
use std::fmt::Write;
use std::ops::Range;
use toml::Spanned;

/// A parsed algebra definition with names resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    pub degrees: Vec<Degree>,
    pub unit: usize,
    /// `(left, right, result, coefficient)` by basis index.
    pub products: Vec<(usize, usize, usize, Scalar)>,
    pub gram: Matrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    basis: Spanned<Vec<Spanned<String>>>,
    degrees: Spanned<Vec<Spanned<Vec<i64>>>>,
    unit: Spanned<String>,
    #[serde(default)]
    products: Vec<Spanned<Vec<Spanned<String>>>>,
    gram: Spanned<Vec<Spanned<Vec<Spanned<String>>>>>,
}

struct Ctx<'a> {
    file: &'a str,
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, span: Range<usize>, msg: impl Into<String>) -> Error {
        let line = self.text[..span.start.min(self.text.len())].matches('\n').count() + 1;
        Error::Parse { file: self.file.to_string(), line, msg: msg.into() }
    }

    fn scalar(&self, s: &Spanned<String>, field: &str) -> Result<Scalar> {
        parse_scalar(s.get_ref()).ok_or_else(|| self.err(s.span(), format!("{field}: \"{}\" is not a rational p or p/q", s.get_ref())))
    }
}

impl AlgebraFile {
    /// Parses a definition; `file` names the source in diagnostics.
    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let cx = Ctx { file, text };
        let raw: Raw = toml::from_str(text).map_err(|e| {
            let span = e.span().unwrap_or(0..0);
            cx.err(span, e.message().to_string())
        })?;

        let mut index = HashMap::new();
        let mut basis = Vec::new();
        for (i, name) in raw.basis.get_ref().iter().enumerate() {
            if name.get_ref().is_empty() {
                return Err(cx.err(name.span(), format!("basis[{i}]: empty name")));
            }
            if index.insert(name.get_ref().clone(), i).is_some() {
                return Err(cx.err(name.span(), format!("basis[{i}]: duplicate name \"{}\"", name.get_ref())));
            }
            basis.push(name.get_ref().clone());
        }
        let dim = basis.len();
        if dim == 0 {
            return Err(cx.err(raw.basis.span(), "basis: must not be empty"));
        }
        let lookup = |s: &Spanned<String>, field: String| {
            index.get(s.get_ref()).copied().ok_or_else(|| cx.err(s.span(), format!("{field}: unknown basis element \"{}\"", s.get_ref())))
        };

        if raw.degrees.get_ref().len() != dim {
            return Err(cx.err(
                raw.degrees.span(),
                format!("degrees: {} entries for {dim} basis elements", raw.degrees.get_ref().len()),
            ));
        }
        let rank = raw.degrees.get_ref()[0].get_ref().len();
        let mut degrees = Vec::with_capacity(dim);
        for (i, d) in raw.degrees.get_ref().iter().enumerate() {
            if d.get_ref().len() != rank || rank == 0 {
                return Err(cx.err(d.span(), format!("degrees[{i}]: expected a vector of length {}", rank.max(1))));
            }
            degrees.push(Degree(d.get_ref().clone()));
        }

        let unit = lookup(&raw.unit, "unit".into())?;
        if !degrees[unit].is_zero() {
            return Err(cx.err(raw.unit.span(), "unit: the unit must have degree zero"));
        }

        let mut products = Vec::new();
        let mut seen = HashMap::new();
        for (p, entry) in raw.products.iter().enumerate() {
            let e = entry.get_ref();
            if e.len() != 4 {
                return Err(cx.err(entry.span(), format!("products[{p}]: expected [left, right, result, coefficient]")));
            }
            let i = lookup(&e[0], format!("products[{p}][0]"))?;
            let j = lookup(&e[1], format!("products[{p}][1]"))?;
            let k = lookup(&e[2], format!("products[{p}][2]"))?;
            let c = cx.scalar(&e[3], &format!("products[{p}][3]"))?;
            if i == unit || j == unit {
                return Err(cx.err(entry.span(), format!("products[{p}]: products with the unit are implied")));
            }
            if c.is_zero() {
                return Err(cx.err(e[3].span(), format!("products[{p}][3]: zero coefficients must be omitted")));
            }
            if seen.insert((i, j, k), p).is_some() {
                return Err(cx.err(entry.span(), format!("products[{p}]: repeats an earlier entry")));
            }
            products.push((i, j, k, c));
        }
        products.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));

        let rows = raw.gram.get_ref();
        if rows.len() != dim {
            return Err(cx.err(raw.gram.span(), format!("gram: {} rows for {dim} basis elements", rows.len())));
        }
        let mut gram = Matrix::zeros(dim, dim);
        for (i, row) in rows.iter().enumerate() {
            if row.get_ref().len() != dim {
                return Err(cx.err(row.span(), format!("gram[{i}]: expected {dim} entries")));
            }
            for (j, x) in row.get_ref().iter().enumerate() {
                gram.set(i, j, cx.scalar(x, &format!("gram[{i}][{j}]"))?);
            }
        }
        Ok(AlgebraFile { basis, degrees, unit, products, gram })
    }

    pub fn from_frobenius(frob: &FrobeniusStructure) -> Self {
        let alg = &frob.algebra;
        let unit = alg.unit_index();
        AlgebraFile {
            basis: alg.names().to_vec(),
            degrees: alg.degrees().to_vec(),
            unit,
            products: alg.structure_constants().into_iter().filter(|(i, j, _, _)| *i != unit && *j != unit).collect(),
            gram: frob.gram().clone(),
        }
    }

    pub fn algebra(&self) -> Result<GradedAlgebra> {
        let n = self.basis.len();
        let mut all = self.products.clone();
        for i in 0..n {
            all.push((self.unit, i, i, Scalar::from_integer(1.into())));
            if i != self.unit {
                all.push((i, self.unit, i, Scalar::from_integer(1.into())));
            }
        }
        GradedAlgebra::new(self.basis.clone(), self.degrees.clone(), &all, self.unit)
    }

    /// The Frobenius structure; fails if the form is degenerate or not invariant.
    pub fn frobenius(&self) -> Result<FrobeniusStructure> {
        validate_frobenius(&self.algebra()?, &self.gram)
    }

    /// Canonical rendering.
    pub fn to_toml(&self) -> String {
        let q = |s: &str| toml::Value::String(s.to_string()).to_string();
        let sc = |x: &Scalar| q(&display_scalar(x));
        let mut out = String::new();
        let names: Vec<String> = self.basis.iter().map(|s| q(s)).collect();
        writeln!(out, "basis = [{}]", names.join(", ")).unwrap();
        let degs: Vec<String> = self
            .degrees
            .iter()
            .map(|d| format!("[{}]", d.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        writeln!(out, "degrees = [{}]", degs.join(", ")).unwrap();
        writeln!(out, "unit = {}", q(&self.basis[self.unit])).unwrap();
        writeln!(out, "products = [").unwrap();
        for (i, j, k, c) in &self.products {
            writeln!(out, "    [{}, {}, {}, {}],", q(&self.basis[*i]), q(&self.basis[*j]), q(&self.basis[*k]), sc(c)).unwrap();
        }
        writeln!(out, "]").unwrap();
        writeln!(out, "gram = [").unwrap();
        for i in 0..self.gram.rows() {
            let row: Vec<String> = self.gram.row(i).iter().map(sc).collect();
            writeln!(out, "    [{}],", row.join(", ")).unwrap();
        }
        writeln!(out, "]").unwrap();
        out
    }
}

/// Parses a bicharacter matrix written as rows separated by `;` and entries
/// by `,`, e.g. `"2"` or `"1/3, 2; 1, 1"`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Scalar>>> {
    let mut rows = Vec::new();
    for (i, row) in text.split(';').enumerate() {
        let mut out = Vec::new();
        for (j, x) in row.split(',').enumerate() {
            out.push(parse_scalar(x).ok_or_else(|| Error::Invalid(format!("matrix entry ({i}, {j}): \"{}\" is not a rational", x.trim())))?);
        }
        rows.push(out);
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Invalid("matrix rows have different lengths".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::twisted_frobenius_product;
    use crate::linalg::int;
    use crate::zoo::{build_qci, build_truncated};

    const LAMBDA2: &str = "basis = [\"1\", \"x\"]\ndegrees = [[0], [1]]\nunit = \"1\"\nproducts = [\n]\ngram = [\n    [\"0\", \"1\"],\n    [\"1\", \"0\"],\n]\n";

    fn line_of(text: &str) -> usize {
        match AlgebraFile::parse(text, "t.toml") {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn canonical_text_round_trips() {
        let f = AlgebraFile::parse(LAMBDA2, "l2.toml").unwrap();
        assert_eq!(f.to_toml(), LAMBDA2);
        assert_eq!(f.frobenius().unwrap(), build_truncated(2).unwrap());
    }

    #[test]
    fn generated_structures_round_trip() {
        let (fr, fs, t) = build_qci(2, 3, &crate::linalg::frac(1, 3)).unwrap();
        for frob in [build_truncated(4).unwrap(), twisted_frobenius_product(&fr, &fs, &t).unwrap()] {
            let f = AlgebraFile::from_frobenius(&frob);
            let text = f.to_toml();
            let back = AlgebraFile::parse(&text, "gen.toml").unwrap();
            assert_eq!(back, f);
            assert_eq!(back.to_toml(), text);
            assert_eq!(back.frobenius().unwrap(), frob);
        }
    }

    #[test]
    fn diagnostics_point_at_lines() {
        assert_eq!(line_of(&LAMBDA2.replace("unit = \"1\"", "unit = \"y\"")), 3);
        assert_eq!(line_of(&LAMBDA2.replace("[\"1\", \"0\"],", "[\"1\", \"zero\"],")), 8);
        assert_eq!(line_of(&LAMBDA2.replace("products = [\n]", "products = [\n    [\"x\", \"x\", \"q\", \"1\"],\n]")), 5);
        assert_eq!(line_of(&LAMBDA2.replace("degrees = [[0], [1]]", "degrees = [[0], [1, 2]]")), 2);
        assert_eq!(line_of(&format!("{LAMBDA2}extra = 1\n")), 10);
        assert_eq!(line_of("basis = [\"1\"\n"), 2);
    }

    #[test]
    fn semantic_failures_are_reported() {
        let degenerate = LAMBDA2.replace("[\"1\", \"0\"],", "[\"0\", \"0\"],");
        let f = AlgebraFile::parse(&degenerate, "d.toml").unwrap();
        assert!(matches!(f.frobenius(), Err(Error::InvalidFrobenius(_))));
    }

    #[test]
    fn matrices_parse() {
        assert_eq!(parse_matrix("2").unwrap(), vec![vec![int(2)]]);
        assert_eq!(parse_matrix("1/3, 2; 1, 1").unwrap()[0][0], crate::linalg::frac(1, 3));
        assert!(parse_matrix("1, 2; 3").is_err());
        assert!(parse_matrix("x").is_err());
    }
}
