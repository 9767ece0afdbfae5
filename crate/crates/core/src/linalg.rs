//! Exact linear algebra over the rationals.
//!
//! Everything here is built on [`Echelon`], an incrementally maintained
//! reduced row echelon form over sparse rows. Columns with smaller indices
//! are preferred as pivots, so callers control canonical forms by choosing
//! the column order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

/// Sparse vector: column index to nonzero entry.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn to_sparse(dense: &[Rational]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, width: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); width];
    for (&i, x) in v {
        if i < width {
            out[i] = x.clone();
        }
    }
    out
}

/// `v += c * w`, dropping entries that cancel.
pub fn axpy(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    for (&i, x) in w {
        let delta = c * x;
        match v.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !delta.is_zero() {
                    e.insert(delta);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Reduced row echelon basis of a subspace, grown one vector at a time.
///
/// Pivots are only taken among columns `< pivot_limit`; columns at or beyond
/// the limit ride along and are used to track linear combinations.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivot_limit: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(pivot_limit: usize) -> Self {
        Echelon {
            pivot_limit,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_limit(&self) -> usize {
        self.pivot_limit
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Eliminates every pivot column from `v`. The result is the canonical
    /// representative of `v` modulo the row space (restricted to columns
    /// below the pivot limit).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, v: &mut SparseVec) {
        // Rows have zeros in every other pivot column, so one pass suffices.
        let hits: Vec<usize> = v
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for p in hits {
            let c = match v.get(&p) {
                Some(c) => -c.clone(),
                None => continue,
            };
            axpy(v, &c, &self.rows[&p]);
        }
    }

    /// Inserts `v`; returns `false` when it already lies in the span (on the
    /// pivot columns).
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_reduced(self.reduce(&v)).is_none()
    }

    /// Inserts an already reduced vector. On dependence returns the reduced
    /// vector back (whose tracked columns then describe a relation).
    fn insert_reduced(&mut self, mut v: SparseVec) -> Option<SparseVec> {
        let pivot = match v.keys().copied().find(|&c| c < self.pivot_limit) {
            Some(p) => p,
            None => return Some(v),
        };
        let inv = Rational::one() / &v[&pivot];
        for x in v.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-c, &v);
            }
        }
        self.rows.insert(pivot, v);
        None
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).keys().all(|&c| c >= self.pivot_limit)
    }
}

/// Rank of a family of vectors.
pub fn rank<'a, I>(vectors: I, width: usize) -> usize
where
    I: IntoIterator<Item = &'a SparseVec>,
{
    let mut e = Echelon::new(width);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Whether two families span the same subspace of `Q^width`.
pub fn same_span(a: &[SparseVec], b: &[SparseVec], width: usize) -> bool {
    let ra = rank(a, width);
    let rb = rank(b, width);
    ra == rb && rank(a.iter().chain(b), width) == ra
}

/// Basis of `{c : sum_i c_i * rows[i] = 0}`.
pub fn left_kernel(rows: &[SparseVec], width: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new(width);
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if let Some(&bad) = r.keys().find(|&&c| c >= width) {
            panic!("column {bad} outside width {width}");
        }
        let mut aug = r.clone();
        aug.insert(width + i, Rational::one());
        let reduced = e.reduce(&aug);
        if let Some(rel) = e.insert_reduced(reduced) {
            kernel.push(rel.into_iter().map(|(c, x)| (c - width, x)).collect());
        }
    }
    kernel
}

/// Expresses vectors as combinations of a fixed, linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinates {
    width: usize,
    count: usize,
    echelon: Echelon,
}

impl Coordinates {
    /// Fails when the family is linearly dependent.
    pub fn new(family: &[SparseVec], width: usize) -> Result<Self> {
        let mut echelon = Echelon::new(width);
        for (i, v) in family.iter().enumerate() {
            let mut aug = v.clone();
            aug.insert(width + i, Rational::one());
            if !echelon.insert(aug) {
                return Err(Error::Inconsistent(format!(
                    "family member {i} is linearly dependent on earlier members"
                )));
            }
        }
        Ok(Coordinates {
            width,
            count: family.len(),
            echelon,
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Coefficients `c` with `sum c_i family[i] = v`, or `None` if `v` is not
    /// in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        let reduced = self.echelon.reduce(v);
        if reduced.keys().any(|&c| c < self.width) {
            return None;
        }
        let mut out = vec![Rational::zero(); self.count];
        for (c, x) in reduced {
            out[c - self.width] = -x;
        }
        Some(out)
    }
}

/// Solves the square system `a x = b` exactly.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("system is not square".into()));
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, y)| {
            let mut row = r.clone();
            row.push(y.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::NoSolution(format!("singular matrix at column {col}")))?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Ok(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Rank of a dense matrix.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let sparse: Vec<SparseVec> = rows.iter().map(|r| to_sparse(r)).collect();
    rank(&sparse, width)
}
