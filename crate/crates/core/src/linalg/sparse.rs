//! Sparse elimination used for the large bar complexes.

use super::Scalar;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn axpy(work: &mut BTreeMap<usize, Scalar>, c: &Scalar, v: &SparseVec) {
    for (j, x) in v {
        let entry = work.entry(*j).or_insert_with(Scalar::zero);
        *entry += c * x;
        if entry.is_zero() {
            work.remove(j);
        }
    }
}

fn from_map(work: BTreeMap<usize, Scalar>) -> SparseVec {
    work.into_iter().collect()
}

/// Semi-echelon basis of a growing subspace.  Each stored row has leading
/// coefficient one at its pivot and no entries left of it; optionally each
/// row remembers how it was built from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
    combos: Vec<SparseVec>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_of: HashMap::new(), combos: Vec::new(), inserted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the rows; returns the remainder and the
    /// multipliers `(row, c)` with `v = remainder + Σ c·row`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Scalar)>) {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut used = Vec::new();
        let mut cursor = 0;
        loop {
            let next = work
                .range(cursor..)
                .find(|(k, _)| self.pivot_of.contains_key(k))
                .map(|(k, x)| (*k, x.clone()));
            let Some((k, c)) = next else { break };
            let r = self.pivot_of[&k];
            axpy(&mut work, &-c.clone(), &self.rows[r]);
            used.push((r, c));
            cursor = k + 1;
        }
        (from_map(work), used)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v`; returns the new row index if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v);
        let (&(pivot, ref lead), _) = rem.split_first()?;
        let inv = lead.recip();
        let row: SparseVec = rem.iter().map(|(j, x)| (*j, x * &inv)).collect();
        let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
        combo.insert(id, inv.clone());
        for (r, c) in used {
            axpy(&mut combo, &(-c * &inv), &self.combos[r]);
        }
        self.pivot_of.insert(pivot, self.rows.len());
        self.rows.push(row);
        self.combos.push(from_map(combo));
        Some(self.rows.len() - 1)
    }

    pub fn insert_tracked(&mut self, v: &[Scalar]) -> bool {
        self.insert(&to_sparse(v)).is_some()
    }

    /// Coefficients of `v` in terms of the inserted vectors (in insertion
    /// order), or `None` when `v` is outside the span.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (rem, used) = self.reduce(&to_sparse(v));
        if !rem.is_empty() {
            return None;
        }
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (r, c) in used {
            axpy(&mut acc, &c, &self.combos[r]);
        }
        Some(to_dense(&from_map(acc), self.inserted))
    }

    /// Fully reduced rows sorted by pivot.
    pub fn reduced_rows(&self) -> Vec<(usize, SparseVec)> {
        let mut order: Vec<(usize, usize)> = self.pivot_of.iter().map(|(&p, &r)| (p, r)).collect();
        order.sort();
        let mut done: Vec<(usize, SparseVec)> = Vec::with_capacity(order.len());
        let mut pivot_set: HashMap<usize, usize> = HashMap::new();
        for &(p, r) in order.iter().rev() {
            let mut work: BTreeMap<usize, Scalar> = self.rows[r].iter().cloned().collect();
            let targets: Vec<(usize, Scalar)> = work
                .iter()
                .filter(|(k, _)| **k != p && pivot_set.contains_key(k))
                .map(|(k, x)| (*k, x.clone()))
                .collect();
            for (k, c) in targets {
                let idx = pivot_set[&k];
                axpy(&mut work, &-c, &done[idx].1);
            }
            pivot_set.insert(p, done.len());
            done.push((p, from_map(work)));
        }
        done.reverse();
        done
    }
}

/// Kernel of the linear map whose matrix has the given sparse rows, one
/// basis vector per free column (reduced echelon normalization).
pub fn kernel(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    let reduced = ech.reduced_rows();
    let pivots: HashMap<usize, &SparseVec> = reduced.iter().map(|(p, r)| (*p, r)).collect();
    // Column f of a reduced row sits at the row for pivot p; collect per free column.
    let mut by_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (p, row) in &reduced {
        for (j, x) in row {
            if *j != *p {
                by_free.entry(*j).or_default().push((*p, -x.clone()));
            }
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains_key(c))
        .map(|f| {
            let mut v = by_free.remove(&f).unwrap_or_default();
            v.push((f, Scalar::one()));
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}

/// Transposes a list of sparse rows into sparse columns.
pub fn transpose(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut cols: Vec<SparseVec> = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row {
            cols[*j].push((i, x.clone()));
        }
    }
    cols
}

/// A space spanned by generators modulo a subspace of relations, with
/// coordinates along the generators that survive.
#[derive(Clone, Debug)]
pub struct Quotient {
    ech: Echelon,
    gen_coords: Vec<SparseVec>,
    generators: Vec<usize>,
    offered: usize,
}

impl Quotient {
    pub fn new(dim: usize) -> Self {
        Quotient { ech: Echelon::new(dim), gen_coords: Vec::new(), generators: Vec::new(), offered: 0 }
    }

    /// Adds a relation; returns whether it enlarged the relation span.
    pub fn add_relation(&mut self, v: &SparseVec) -> bool {
        let (rem, used) = self.ech.reduce(v);
        if let Some(&(_, ref lead)) = rem.first() {
            let inv = lead.recip();
            let mut co: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (r, c) in used {
                axpy(&mut co, &(-c * &inv), &self.gen_coords[r]);
            }
            self.push_row(rem, inv, from_map(co));
            true
        } else {
            false
        }
    }

    /// Offers a generator; returns its complement index when it is new.
    pub fn add_generator(&mut self, v: &SparseVec) -> Option<usize> {
        let offered = self.offered;
        self.offered += 1;
        let (rem, used) = self.ech.reduce(v);
        let (_, lead) = rem.first()?;
        let inv = lead.recip();
        let g = self.generators.len();
        self.generators.push(offered);
        let mut co: BTreeMap<usize, Scalar> = BTreeMap::new();
        co.insert(g, inv.clone());
        for (r, c) in used {
            axpy(&mut co, &(-c * &inv), &self.gen_coords[r]);
        }
        self.push_row(rem, inv, from_map(co));
        Some(g)
    }

    fn push_row(&mut self, rem: SparseVec, inv: Scalar, co: SparseVec) {
        let pivot = rem[0].0;
        let row: SparseVec = rem.iter().map(|(j, x)| (*j, x * &inv)).collect();
        self.ech.pivot_of.insert(pivot, self.ech.rows.len());
        self.ech.rows.push(row);
        self.ech.combos.push(Vec::new());
        self.gen_coords.push(co);
    }

    /// Indices (in offering order) of the generators kept in the complement.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Coordinates of `v` along the kept generators; `None` if `v` lies
    /// outside relations + generators.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let (rem, used) = self.ech.reduce(v);
        if !rem.is_empty() {
            return None;
        }
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (r, c) in used {
            axpy(&mut acc, &c, &self.gen_coords[r]);
        }
        Some(to_dense(&from_map(acc), self.generators.len()))
    }

    /// True iff `v` lies in the span of the relations alone.
    pub fn is_relation(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn sv(xs: &[i64]) -> SparseVec {
        to_sparse(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_rank_one_row() {
        let k = kernel(&[sv(&[1, 2, 3])], 3);
        assert_eq!(k, vec![sv(&[-2, 1, 0]), sv(&[-3, 0, 1])]);
    }

    #[test]
    fn echelon_expresses_in_inserted_basis() {
        let mut e = Echelon::new(3);
        e.insert(&sv(&[1, 1, 0]));
        e.insert(&sv(&[0, 1, 1]));
        assert!(e.insert(&sv(&[1, 2, 1])).is_none());
        let c = e.express(&[int(2), int(3), int(1)]).unwrap();
        assert_eq!(c, vec![int(2), int(1), int(0)]);
        assert!(e.express(&[int(0), int(0), int(1)]).is_none());
    }

    #[test]
    fn quotient_coordinates_track_generators() {
        let mut q = Quotient::new(3);
        q.add_relation(&sv(&[1, 0, 0]));
        assert_eq!(q.add_generator(&sv(&[1, 1, 0])), Some(0));
        assert_eq!(q.add_generator(&sv(&[5, 0, 0])), None);
        assert_eq!(q.add_generator(&sv(&[0, 1, 1])), Some(1));
        assert_eq!(q.generators(), &[0, 2]);
        assert_eq!(q.coordinates(&sv(&[7, 2, 3])).unwrap(), vec![int(-1), int(3)]);
        assert!(q.is_relation(&sv(&[4, 0, 0])));
    }
}
