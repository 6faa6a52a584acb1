use super::Cochain;
use crate::algebra::Degree;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Quotient, SparseVec};
use crate::linalg::{zero_vec, Scalar};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// A cochain complex with a homogeneous basis in every level.
pub trait CochainComplex {
    fn dim(&self, level: usize) -> usize;

    fn basis_degree(&self, level: usize, idx: usize) -> Degree;

    /// `δ^level` as sparse rows indexed by the basis of level `level + 1`.
    fn differential_rows(&self, level: usize) -> Arc<Vec<SparseVec>>;

    fn apply(&self, level: usize, f: &[Scalar]) -> Result<Vec<Scalar>> {
        if f.len() != self.dim(level) {
            return Err(Error::Dimension(format!(
                "cochain of length {} at level {level} (expected {})",
                f.len(),
                self.dim(level)
            )));
        }
        Ok(self
            .differential_rows(level)
            .iter()
            .map(|row| row.iter().filter(|(j, _)| !f[*j].is_zero()).map(|(j, c)| c * &f[*j]).sum())
            .collect())
    }

    /// Whether `v` (a level-`level` cochain) is a coboundary.
    fn is_coboundary(&self, level: usize, v: &[Scalar]) -> Result<bool> {
        let mut degrees: Vec<Degree> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| self.basis_degree(level, i))
            .collect();
        if degrees.is_empty() {
            return Ok(true);
        }
        degrees.sort();
        degrees.dedup();
        let group = cohomology_restricted(self, level, Some(&degrees))?;
        Ok(group.is_coboundary_vec(v))
    }
}

#[derive(Clone, Debug)]
struct Block {
    columns: Vec<usize>,
    local: HashMap<usize, usize>,
    quotient: Quotient,
    coboundaries: Vec<SparseVec>,
    first_rep: usize,
}

/// `H^level` of a [`CochainComplex`], graded by internal degree.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub level: usize,
    pub dimension: usize,
    pub representatives: Vec<Cochain>,
    pub graded_dims: BTreeMap<Degree, usize>,
    len: usize,
    blocks: BTreeMap<Degree, Block>,
    owner: HashMap<usize, Degree>,
    complete: bool,
}

impl CohomologyGroup {
    fn localize(&self, v: &[Scalar]) -> Option<BTreeMap<&Degree, SparseVec>> {
        let mut out: BTreeMap<&Degree, SparseVec> = BTreeMap::new();
        for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let d = self.owner.get(&i)?;
            let b = &self.blocks[d];
            out.entry(d).or_default().push((b.local[&i], x.clone()));
        }
        Some(out)
    }

    pub(crate) fn is_coboundary_vec(&self, v: &[Scalar]) -> bool {
        match self.localize(v) {
            None => false,
            Some(parts) => parts.iter().all(|(d, part)| self.blocks[*d].quotient.is_relation(part)),
        }
    }

    pub fn is_coboundary(&self, f: &Cochain) -> bool {
        f.level == self.level && self.is_coboundary_vec(&f.values)
    }

    /// Coordinates of the class of a cocycle along `representatives`.
    pub fn coordinates(&self, f: &Cochain) -> Result<Vec<Scalar>> {
        if f.level != self.level || f.values.len() != self.len {
            return Err(Error::Dimension("cochain does not belong to this cohomology group".into()));
        }
        let parts = self.localize(&f.values).ok_or(Error::NotCocycle)?;
        let mut out = zero_vec(self.dimension);
        for (d, part) in parts {
            let b = &self.blocks[d];
            let c = b.quotient.coordinates(&part).ok_or(Error::NotCocycle)?;
            for (i, x) in c.into_iter().enumerate() {
                out[b.first_rep + i] = x;
            }
        }
        Ok(out)
    }

    /// A basis of the coboundaries (only meaningful for unrestricted groups).
    pub fn coboundary_basis(&self) -> Vec<Cochain> {
        let mut out = Vec::new();
        for (d, b) in &self.blocks {
            for v in &b.coboundaries {
                let mut values = zero_vec(self.len);
                for (j, x) in v {
                    values[b.columns[*j]] = x.clone();
                }
                out.push(Cochain { level: self.level, values, degree: Some(d.clone()) });
            }
        }
        out
    }

    /// Whether every degree of the level was examined.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Representatives of the given internal degree.
    pub fn representatives_of_degree(&self, d: &Degree) -> Vec<&Cochain> {
        self.representatives.iter().filter(|r| r.degree.as_ref() == Some(d)).collect()
    }
}

pub fn cohomology<C: CochainComplex + ?Sized>(cx: &C, level: usize) -> Result<CohomologyGroup> {
    cohomology_restricted(cx, level, None)
}

/// Cohomology restricted to the listed internal degrees (all when `None`).
pub fn cohomology_restricted<C: CochainComplex + ?Sized>(
    cx: &C,
    level: usize,
    degrees: Option<&[Degree]>,
) -> Result<CohomologyGroup> {
    let n = cx.dim(level);
    let mut by_degree: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let d = cx.basis_degree(level, i);
        if degrees.map_or(true, |ds| ds.binary_search(&d).is_ok()) {
            by_degree.entry(d).or_default().push(i);
        }
    }
    let mut where_: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut blocks: Vec<(Degree, Vec<usize>)> = by_degree.into_iter().collect();
    for (b, (_, cols)) in blocks.iter().enumerate() {
        for (l, &c) in cols.iter().enumerate() {
            where_.insert(c, (b, l));
        }
    }
    // δ^level restricted per block
    let mut rows_per_block: Vec<Vec<SparseVec>> = vec![Vec::new(); blocks.len()];
    for row in cx.differential_rows(level).iter() {
        let mut target: Option<usize> = None;
        let mut local_row: SparseVec = Vec::new();
        for (j, c) in row {
            if let Some(&(b, l)) = where_.get(j) {
                debug_assert!(target.is_none_or(|t| t == b), "differential mixes degrees");
                target = Some(b);
                local_row.push((l, c.clone()));
            }
        }
        if let Some(b) = target {
            local_row.sort_by_key(|(l, _)| *l);
            rows_per_block[b].push(local_row);
        }
    }
    let mut quotients: Vec<Quotient> = blocks.iter().map(|(_, cols)| Quotient::new(cols.len())).collect();
    let mut coboundaries: Vec<Vec<SparseVec>> = vec![Vec::new(); blocks.len()];
    if level > 0 {
        let prev = cx.differential_rows(level - 1);
        let images = sparse::transpose(&prev, cx.dim(level - 1));
        for img in images {
            let mut target: Option<usize> = None;
            let mut local: SparseVec = Vec::new();
            for (i, c) in &img {
                if let Some(&(b, l)) = where_.get(i) {
                    target = Some(b);
                    local.push((l, c.clone()));
                }
            }
            if let Some(b) = target {
                local.sort_by_key(|(l, _)| *l);
                if quotients[b].add_relation(&local) {
                    coboundaries[b].push(local);
                }
            }
        }
    }
    let mut representatives = Vec::new();
    let mut graded_dims = BTreeMap::new();
    let mut out_blocks = BTreeMap::new();
    let mut owner = HashMap::new();
    for (b, (d, cols)) in blocks.drain(..).enumerate() {
        let first_rep = representatives.len();
        let kernel = sparse::kernel(&rows_per_block[b], cols.len());
        for z in kernel {
            if quotients[b].add_generator(&z).is_some() {
                let mut values = zero_vec(n);
                for (l, x) in &z {
                    values[cols[*l]] = x.clone();
                }
                representatives.push(Cochain { level, values, degree: Some(d.clone()) });
            }
        }
        let count = representatives.len() - first_rep;
        if count > 0 {
            graded_dims.insert(d.clone(), count);
        }
        for &c in &cols {
            owner.insert(c, d.clone());
        }
        let local = cols.iter().enumerate().map(|(l, &c)| (c, l)).collect();
        out_blocks.insert(
            d,
            Block {
                columns: cols,
                local,
                quotient: std::mem::replace(&mut quotients[b], Quotient::new(0)),
                coboundaries: std::mem::take(&mut coboundaries[b]),
                first_rep,
            },
        );
    }
    Ok(CohomologyGroup {
        level,
        dimension: representatives.len(),
        representatives,
        graded_dims,
        len: n,
        blocks: out_blocks,
        owner,
        complete: degrees.is_none(),
    })
}
