//! Incremental sparse row echelon form over the rationals.
//!
//! Columns are plain indices; a lower index is a "smaller" column and is
//! preferred as pivot. Each stored row has leading coefficient 1 at its
//! pivot column. Optionally every row remembers which combination of the
//! inserted vectors produced it, which yields membership witnesses and
//! kernel vectors.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::ring::Rational;

/// Sparse vector sorted by column index, without zero entries.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_map(map: BTreeMap<usize, Rational>) -> SparseVec {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// a + c·b.
pub fn sparse_axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut map: BTreeMap<usize, Rational> = a.iter().cloned().collect();
    for (i, v) in b {
        *map.entry(*i).or_insert_with(Rational::zero) += c * v;
    }
    sparse_from_map(map)
}

pub fn sparse_scale(a: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

/// Result of reducing a vector against the echelon form.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub remainder: SparseVec,
    /// Combination of inserted vectors equal to `v − remainder` (only when tracking).
    pub witness: Option<SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_witnesses() -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of.keys().copied()
    }

    /// Fully reduces `v`: the remainder has no entry in a pivot column.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut acc: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut witness: Option<BTreeMap<usize, Rational>> = self.combos.as_ref().map(|_| BTreeMap::new());
        let mut remainder = Vec::new();
        while let Some((col, coeff)) = acc.pop_first() {
            if coeff.is_zero() {
                continue;
            }
            match self.pivot_of.get(&col) {
                None => remainder.push((col, coeff)),
                Some(&r) => {
                    for (c, val) in self.rows[r].iter().skip(1) {
                        let e = acc.entry(*c).or_insert_with(Rational::zero);
                        *e -= &coeff * val;
                        if e.is_zero() {
                            acc.remove(c);
                        }
                    }
                    if let (Some(w), Some(combos)) = (witness.as_mut(), self.combos.as_ref()) {
                        for (i, val) in &combos[r] {
                            *w.entry(*i).or_insert_with(Rational::zero) += &coeff * val;
                        }
                    }
                }
            }
        }
        Reduction { remainder, witness: witness.map(sparse_from_map) }
    }

    /// Inserts `v`. Returns `None` if the rank grew, otherwise the kernel
    /// relation among inserted vectors (when tracking, an empty relation otherwise).
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let index = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let relation = red.witness.map(|w| {
            let mut rel = sparse_scale(&w, &-Rational::one());
            rel.push((index, Rational::one()));
            rel
        });
        if red.remainder.is_empty() {
            return Some(relation.unwrap_or_default());
        }
        let lead = red.remainder[0].1.clone();
        let inv = Rational::one() / &lead;
        let row = sparse_scale(&red.remainder, &inv);
        self.pivot_of.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        if let Some(combos) = self.combos.as_mut() {
            combos.push(sparse_scale(&relation.expect("tracking"), &inv));
        }
        None
    }

    /// Whether `v` lies in the span, with a witness combination when tracking.
    pub fn contains(&self, v: &SparseVec) -> (bool, Option<SparseVec>) {
        let red = self.reduce(v);
        (red.remainder.is_empty(), red.witness)
    }
}

/// Rank of a list of sparse vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the kernel of the map eᵢ ↦ vectors[i].
pub fn kernel(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::with_witnesses();
    vectors.iter().filter_map(|v| e.insert(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, rat(c))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1)]), v(&[(0, 2), (1, 5)])];
        assert_eq!(rank(&vs), 2);
        let k = kernel(&vs);
        assert_eq!(k.len(), 1);
        let mut total: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in &k[0] {
            for (col, val) in &vs[*i] {
                *total.entry(*col).or_insert_with(Rational::zero) += c * val;
            }
        }
        assert!(total.values().all(Zero::is_zero));
    }

    #[test]
    fn membership_witness() {
        let mut e = Echelon::with_witnesses();
        e.insert(&v(&[(0, 3), (2, 1)]));
        e.insert(&v(&[(1, 1)]));
        let target = v(&[(0, 6), (1, -1), (2, 2)]);
        let (inside, w) = e.contains(&target);
        assert!(inside);
        assert_eq!(w.unwrap(), v(&[(0, 2), (1, -1)]));
        assert!(!e.contains(&v(&[(2, 1)])).0);
    }

    #[test]
    fn reduction_clears_pivots() {
        let mut e = Echelon::new();
        e.insert(&v(&[(1, 1), (3, 1)]));
        e.insert(&v(&[(2, 1), (3, 1)]));
        let red = e.reduce(&v(&[(1, 1), (2, 1)]));
        assert_eq!(red.remainder, v(&[(3, -2)]));
    }
}
