//! Multivariate division with recorded quotients.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::{Coeff, Polynomial};
use crate::{Error, Result};

/// `input = Σ quotients[i]·divisors[i] + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
    /// Number of elementary division steps taken.
    pub steps: usize,
}

/// Working polynomial keyed by the order's sort key, so the largest term is
/// always the last map entry.
struct Work<'a> {
    order: &'a MonomialOrder,
    terms: BTreeMap<Vec<i64>, (Monomial, Coeff)>,
}

impl<'a> Work<'a> {
    fn new(order: &'a MonomialOrder, p: &Polynomial) -> Self {
        let mut w = Work {
            order,
            terms: BTreeMap::new(),
        };
        for (m, c) in p.terms() {
            w.add(m.clone(), c.clone());
        }
        w
    }

    fn add(&mut self, m: Monomial, c: Coeff) {
        let key = self.order.key(&m);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                slot.1 += c;
                if slot.1.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(key, (m, c));
                }
            }
        }
    }

    fn pop_leading(&mut self) -> Option<(Monomial, Coeff)> {
        self.terms.pop_last().map(|(_, t)| t)
    }
}

/// Divides `f` by `divisors`, always using the first divisor (in list order)
/// whose leading monomial divides the current leading monomial.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<ReductionTrace> {
    let n = f.n();
    let mut leads = Vec::with_capacity(divisors.len());
    for d in divisors {
        if d.n() != n {
            return Err(Error::RingMismatch(n, d.n()));
        }
        let (m, c) = d.leading_term(order).ok_or(Error::ZeroPolynomial)?;
        leads.push((m.clone(), c.clone()));
    }
    if order.n() != n {
        return Err(Error::RingMismatch(order.n(), n));
    }

    let mut quotients: Vec<BTreeMap<Monomial, Coeff>> = vec![BTreeMap::new(); divisors.len()];
    let mut remainder: BTreeMap<Monomial, Coeff> = BTreeMap::new();
    let mut work = Work::new(order, f);
    let mut steps = 0;
    while let Some((m, c)) = work.pop_leading() {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lm, lc))| m.div(lm).map(|u| (i, u, lc)));
        match hit {
            Some((i, u, lc)) => {
                steps += 1;
                let q = &c / lc;
                // subtract q·u·divisor; its leading term cancels the popped one
                let (lm, _) = &leads[i];
                for (t, d) in divisors[i].terms() {
                    if t == lm {
                        continue;
                    }
                    work.add(t.mul(&u), -(&q * d));
                }
                *quotients[i].entry(u).or_insert_with(Coeff::zero) += q;
            }
            None => {
                remainder.insert(m, c);
            }
        }
    }
    Ok(ReductionTrace {
        quotients: quotients
            .into_iter()
            .map(|q| Polynomial::from_map(n, q))
            .collect(),
        remainder: Polynomial::from_map(n, remainder),
        steps,
    })
}
