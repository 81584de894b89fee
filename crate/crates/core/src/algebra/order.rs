//! Layered monomial orders.
//!
//! An order is a stack of comparison layers consulted in sequence, closed by
//! a reverse-lexicographic tie-break on the canonical variable enumeration.
//! Every layer is linear in the exponent vector, so the whole stack compiles
//! to a matrix order: monomials are compared by the lexicographic order of
//! `A·exp(m)` for an integer matrix `A`. Linearity makes every order
//! multiplicative; the tie-break rows make `A` injective, so comparison is
//! total.

use std::cmp::Ordering;

use serde::Serialize;

use super::monomial::Monomial;
use super::variable::{num_vars, Variable};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    LargerIsGreater,
    LargerIsSmaller,
}

impl Direction {
    fn sign(self) -> i64 {
        match self {
            Direction::LargerIsGreater => 1,
            Direction::LargerIsSmaller => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layer {
    TotalDegree,
    /// `w` is indexed by the canonical variable enumeration.
    Weight { weights: Vec<i64>, direction: Direction },
    /// Compare by total degree in `vars`.
    RestrictedDegree { vars: Vec<Variable>, direction: Direction },
    /// Lexicographic on `priority` (first entry most significant); variables
    /// not listed are ignored by this layer.
    RestrictedLex { priority: Vec<Variable> },
}

type SparseRow = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct MonomialOrder {
    n: usize,
    name: String,
    layers: Vec<Layer>,
    rows: Vec<SparseRow>,
}

impl MonomialOrder {
    pub fn new(n: usize, name: impl Into<String>, layers: Vec<Layer>) -> Result<MonomialOrder> {
        let nv = num_vars(n);
        let mut rows: Vec<SparseRow> = Vec::new();
        for layer in &layers {
            match layer {
                Layer::TotalDegree => rows.push((0..nv).map(|k| (k, 1)).collect()),
                Layer::Weight { weights, direction } => {
                    if weights.len() != nv {
                        return Err(Error::InvalidArgument(format!(
                            "weight vector has length {}, expected {nv}",
                            weights.len()
                        )));
                    }
                    let s = direction.sign();
                    rows.push(
                        weights
                            .iter()
                            .enumerate()
                            .filter(|(_, &w)| w != 0)
                            .map(|(k, &w)| (k, s * w))
                            .collect(),
                    );
                }
                Layer::RestrictedDegree { vars, direction } => {
                    let s = direction.sign();
                    let mut row = Vec::new();
                    for v in vars {
                        check_var(*v, n)?;
                        row.push((v.index(), s));
                    }
                    row.sort_unstable();
                    row.dedup();
                    rows.push(row);
                }
                Layer::RestrictedLex { priority } => {
                    for v in priority {
                        check_var(*v, n)?;
                        rows.push(vec![(v.index(), 1)]);
                    }
                }
            }
        }
        // reverse-lex tie-break: the last variable with differing exponent
        // decides, smaller exponent wins
        for k in (0..nv).rev() {
            rows.push(vec![(k, -1)]);
        }
        Ok(MonomialOrder {
            n,
            name: name.into(),
            layers,
            rows,
        })
    }

    /// Graded reverse lexicographic order.
    pub fn grevlex(n: usize) -> MonomialOrder {
        MonomialOrder::new(n, "grevlex", vec![Layer::TotalDegree]).expect("valid layers")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Checked comparison; errors when the monomials live in different rings.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        a.check_same_ring(b)?;
        if a.n() != self.n {
            return Err(Error::RingMismatch(self.n, a.n()));
        }
        Ok(self.cmp(a, b))
    }

    /// Comparison without ring checks.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        for row in &self.rows {
            let mut d = 0i64;
            for &(k, w) in row {
                d += w * (ea[k] as i64 - eb[k] as i64);
            }
            match d.cmp(&0) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Full sort key; comparing keys lexicographically agrees with
    /// [`MonomialOrder::cmp`].
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let e = m.exponents();
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(k, w)| w * e[k] as i64).sum())
            .collect()
    }
}

fn check_var(v: Variable, n: usize) -> Result<()> {
    if v.n() != n {
        return Err(Error::RingMismatch(n, v.n()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_monomial(n: usize, seed: &[u8]) -> Monomial {
        let nv = num_vars(n);
        let mut exps = vec![0u16; nv];
        for (k, b) in seed.iter().enumerate() {
            exps[(k * 7 + *b as usize) % nv] += (*b % 3) as u16;
        }
        Monomial::from_exponents(exps).unwrap()
    }

    fn sample_orders(n: usize) -> Vec<MonomialOrder> {
        let nv = num_vars(n);
        vec![
            MonomialOrder::grevlex(n),
            MonomialOrder::new(
                n,
                "weighted",
                vec![
                    Layer::TotalDegree,
                    Layer::Weight {
                        weights: (0..nv as i64).map(|k| (k * 5) % 7 - 3).collect(),
                        direction: Direction::LargerIsGreater,
                    },
                ],
            )
            .unwrap(),
            MonomialOrder::new(
                n,
                "restricted",
                vec![
                    Layer::TotalDegree,
                    Layer::RestrictedDegree {
                        vars: vec![Variable::y(2, n).unwrap(), Variable::y(3, n).unwrap()],
                        direction: Direction::LargerIsSmaller,
                    },
                    Layer::RestrictedLex {
                        priority: vec![Variable::y(n, n).unwrap(), Variable::y(1, n).unwrap()],
                    },
                ],
            )
            .unwrap(),
        ]
    }

    #[test]
    fn equal_iff_identical() {
        let n = 5;
        let a = random_monomial(n, &[1, 2, 3, 4]);
        for o in sample_orders(n) {
            assert_eq!(o.cmp(&a, &a), Ordering::Equal);
            assert_eq!(o.cmp(&a, &a.mul_var(Variable::y(1, n).unwrap())), Ordering::Less);
        }
    }

    #[test]
    fn ring_mismatch_errors() {
        let o = MonomialOrder::grevlex(5);
        assert!(o.compare(&Monomial::one(5), &Monomial::one(4)).is_err());
        assert!(o.compare(&Monomial::one(4), &Monomial::one(4)).is_err());
    }

    proptest! {
        #[test]
        fn order_axioms(a in proptest::collection::vec(0u8..6, 8),
                        b in proptest::collection::vec(0u8..6, 8),
                        c in proptest::collection::vec(0u8..6, 8)) {
            let n = 5;
            let (ma, mb, mc) = (random_monomial(n, &a), random_monomial(n, &b), random_monomial(n, &c));
            for o in sample_orders(n) {
                let ab = o.cmp(&ma, &mb);
                prop_assert_eq!(ab, o.cmp(&mb, &ma).reverse());
                prop_assert_eq!(ab == Ordering::Equal, ma == mb);
                prop_assert_eq!(ab, o.cmp(&ma.mul(&mc), &mb.mul(&mc)));
                prop_assert_eq!(ab, o.key(&ma).cmp(&o.key(&mb)));
                if ma.degree() < mb.degree() {
                    prop_assert_eq!(ab, Ordering::Less);
                }
                if ab != Ordering::Greater && o.cmp(&mb, &mc) != Ordering::Greater {
                    prop_assert!(o.cmp(&ma, &mc) != Ordering::Greater);
                }
                prop_assert_ne!(o.cmp(&ma.mul(&mc), &ma), Ordering::Less);
            }
        }
    }
}
