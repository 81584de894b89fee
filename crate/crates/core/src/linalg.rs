//! Exact sparse linear algebra over the integers.
//!
//! Vectors are sparse `(column, value)` lists sorted by column. Elimination is
//! fraction-free: combining two rows multiplies through by the pivot instead
//! of dividing, and every row is divided by its content afterwards so entries
//! stay small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type SparseVec = Vec<(usize, BigInt)>;

/// Clears denominators and content: the primitive integer vector on the same
/// line, with positive leading entry.
pub fn primitive_from_rational(v: &[(usize, BigRational)]) -> SparseVec {
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: SparseVec = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (*k, c.numer() * (&lcm / c.denom())))
        .collect();
    out.sort_by_key(|(k, _)| *k);
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut SparseVec) {
    let Some(first) = v.first() else { return };
    let mut g = BigInt::zero();
    for (_, c) in v.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c /= &g;
        }
    }
}

/// `a·v − b·w`, dropping zeros.
fn combine(a: &BigInt, v: &[(usize, BigInt)], b: &BigInt, w: &[(usize, BigInt)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let ci = v.get(i).map(|e| e.0);
        let cj = w.get(j).map(|e| e.0);
        match (ci, cj) {
            (Some(x), Some(y)) if x == y => {
                let c = a * &v[i].1 - b * &w[j].1;
                if !c.is_zero() {
                    out.push((x, c));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a * &v[i].1));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, a * &v[i].1));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(b * &w[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn entry(v: &[(usize, BigInt)], col: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|k| &v[k].1)
}

/// Row echelon form built one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    /// pivot column -> row index
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces until the leading column is not a pivot column; returns the
    /// (primitive) residue, empty when `v` is in the row span.
    pub fn reduce_leading(&self, v: &[(usize, BigInt)]) -> SparseVec {
        let mut v: SparseVec = v.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        while let Some(&(c, _)) = v.first() {
            let Some(&r) = self.pivots.get(&c) else { break };
            let row = &self.rows[r];
            let (a, b) = (&row[0].1, &v[0].1);
            let g = a.gcd(b);
            v = combine(&(a / &g), &v, &(b / &g), row);
            make_primitive(&mut v);
        }
        v
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce_full(&self, v: &[(usize, BigInt)]) -> SparseVec {
        let mut v = self.reduce_leading(v);
        loop {
            let hit = v
                .iter()
                .find_map(|(c, _)| self.pivots.get(c).map(|&r| (*c, r)));
            let Some((c, r)) = hit else { break };
            let row = &self.rows[r];
            let a = &row[0].1;
            let b = entry(&v, c).expect("present").clone();
            let g = a.gcd(&b);
            v = combine(&(a / &g), &v, &(&b / &g), row);
            make_primitive(&mut v);
        }
        v
    }

    pub fn contains(&self, v: &[(usize, BigInt)]) -> bool {
        self.reduce_leading(v).is_empty()
    }

    /// Adds `v`; true when it was independent of the rows so far.
    pub fn insert(&mut self, v: &[(usize, BigInt)]) -> bool {
        let r = self.reduce_leading(v);
        match r.first() {
            None => false,
            Some(&(c, _)) => {
                self.pivots.insert(c, self.rows.len());
                self.rows.push(r);
                true
            }
        }
    }

    /// Brings the rows to reduced echelon form (pivot columns cleared from
    /// all other rows).
    pub fn reduce_rows(&mut self) {
        let cols: Vec<(usize, usize)> = self.pivots.iter().rev().map(|(c, r)| (*c, *r)).collect();
        for &(c, r) in &cols {
            for k in 0..self.rows.len() {
                if k == r {
                    continue;
                }
                let Some(b) = entry(&self.rows[k], c).cloned() else { continue };
                let a = self.rows[r][0].1.clone();
                let g = a.gcd(&b);
                let mut nr = combine(&(&a / &g), &self.rows[k], &(&b / &g), &self.rows[r]);
                make_primitive(&mut nr);
                self.rows[k] = nr;
            }
        }
    }

    /// Basis of `{x : row·x = 0 for every row}` in `ncols` coordinates, one
    /// primitive vector per free column, in increasing free-column order.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<SparseVec> {
        let mut e = self.clone();
        e.reduce_rows();
        let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v: Vec<(usize, BigRational)> = vec![(f, BigRational::one())];
                for (&c, &r) in &e.pivots {
                    let row = &e.rows[r];
                    if let Some(b) = entry(row, f) {
                        v.push((c, -BigRational::new(b.clone(), row[0].1.clone())));
                    }
                }
                primitive_from_rational(&v)
            })
            .collect()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dot product of sparse vectors.
pub fn dot(a: &[(usize, BigInt)], b: &[(usize, BigInt)]) -> BigInt {
    let mut s = BigInt::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_to_sparse(row: &[i64]) -> SparseVec {
        row.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, BigInt::from(c)))
            .collect()
    }

    /// Rank over Q by plain rational Gaussian elimination on dense rows.
    fn dense_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| BigRational::from_integer(c.into())).collect())
            .collect();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[rank][col];
                    for c in 0..ncols {
                        let d = &f * &m[rank][c];
                        m[r][c] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn simple_rank_and_kernel() {
        let rows = vec![dense_to_sparse(&[1, 2, 3]), dense_to_sparse(&[2, 4, 6]), dense_to_sparse(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let mut e = Echelon::new();
        rows.iter().for_each(|r| {
            e.insert(r);
        });
        let k = e.kernel_basis(3);
        assert_eq!(k, vec![dense_to_sparse(&[1, 1, -1])]);
    }

    proptest! {
        #[test]
        fn rank_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 0..7)) {
            let sparse: Vec<SparseVec> = rows.iter().map(|r| dense_to_sparse(r)).collect();
            prop_assert_eq!(rank(&sparse), dense_rank(&rows, 6));
            let mut e = Echelon::new();
            for r in &sparse {
                e.insert(r);
            }
            let ker = e.kernel_basis(6);
            prop_assert_eq!(ker.len(), 6 - e.rank());
            for k in &ker {
                for r in &sparse {
                    prop_assert!(dot(k, r).is_zero());
                }
            }
            prop_assert_eq!(rank(&ker), ker.len());
            for r in &sparse {
                prop_assert!(e.contains(r));
                prop_assert!(e.reduce_full(r).is_empty());
            }
        }
    }
}
