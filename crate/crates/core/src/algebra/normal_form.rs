//! Memoised normal forms modulo a Groebner basis.
//!
//! Normal forms are linear, so it suffices to know the normal form of every
//! monomial; those are cached, which makes repeated reductions inside one
//! graded piece cheap.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::groebner::{buchberger_criterion, minimalize};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::{Coeff, Polynomial};
use crate::{Error, Result};

pub type SparseForm = Rc<Vec<(Monomial, Coeff)>>;

pub struct NormalForm {
    n: usize,
    gb: Vec<Polynomial>,
    leads: Vec<(Monomial, Coeff)>,
    init: Vec<Monomial>,
    cache: HashMap<Monomial, SparseForm>,
}

impl NormalForm {
    /// `gb` must be a Groebner basis for `order`; this is checked.
    pub fn new(gb: Vec<Polynomial>, order: &MonomialOrder) -> Result<NormalForm> {
        let outcome = buchberger_criterion(&gb, order, true)?;
        if let Some(f) = outcome.failure {
            return Err(Error::NotGroebner(f.pair.0, f.pair.1));
        }
        Ok(NormalForm::new_unchecked(gb, order))
    }

    /// Skips the Groebner check, for callers that have already run it.
    pub fn new_unchecked(gb: Vec<Polynomial>, order: &MonomialOrder) -> NormalForm {
        let leads: Vec<(Monomial, Coeff)> = gb
            .iter()
            .map(|g| {
                let (m, c) = g.leading_term(order).expect("nonzero generator");
                (m.clone(), c.clone())
            })
            .collect();
        let init = minimalize(leads.iter().map(|(m, _)| m.clone()).collect());
        NormalForm {
            n: order.n(),
            gb,
            leads,
            init,
            cache: HashMap::new(),
        }
    }

    pub fn initial_generators(&self) -> &[Monomial] {
        &self.init
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.init.iter().all(|g| !g.divides(m))
    }

    fn divisor_for(&self, m: &Monomial) -> Option<(usize, Monomial)> {
        self.leads
            .iter()
            .enumerate()
            .find_map(|(i, (l, _))| m.div(l).map(|u| (i, u)))
    }

    pub fn monomial(&mut self, m: &Monomial) -> SparseForm {
        if let Some(r) = self.cache.get(m) {
            return r.clone();
        }
        let mut stack = vec![m.clone()];
        while let Some(top) = stack.last().cloned() {
            if self.cache.contains_key(&top) {
                stack.pop();
                continue;
            }
            match self.divisor_for(&top) {
                None => {
                    self.cache.insert(top.clone(), Rc::new(vec![(top, Coeff::one())]));
                    stack.pop();
                }
                Some((i, u)) => {
                    let (lm, lc) = &self.leads[i];
                    let children: Vec<(Monomial, Coeff)> = self.gb[i]
                        .terms()
                        .iter()
                        .filter(|(t, _)| t != lm)
                        .map(|(t, c)| (t.mul(&u), -(c / lc)))
                        .collect();
                    let missing: Vec<Monomial> = children
                        .iter()
                        .filter(|(t, _)| !self.cache.contains_key(t))
                        .map(|(t, _)| t.clone())
                        .collect();
                    if missing.is_empty() {
                        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
                        for (t, c) in &children {
                            for (s, d) in self.cache[t].iter() {
                                *acc.entry(s.clone()).or_insert_with(Coeff::zero) += c * d;
                            }
                        }
                        let form: Vec<_> = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
                        self.cache.insert(top, Rc::new(form));
                        stack.pop();
                    } else {
                        stack.extend(missing);
                    }
                }
            }
        }
        self.cache[m].clone()
    }

    /// Normal form of `c·m`, accumulated into `acc`.
    pub fn accumulate(&mut self, m: &Monomial, c: &Coeff, acc: &mut BTreeMap<Monomial, Coeff>) {
        let form = self.monomial(m);
        for (s, d) in form.iter() {
            *acc.entry(s.clone()).or_insert_with(Coeff::zero) += c * d;
        }
    }

    pub fn polynomial(&mut self, p: &Polynomial) -> Polynomial {
        let mut acc = BTreeMap::new();
        for (m, c) in p.terms() {
            self.accumulate(m, c, &mut acc);
        }
        Polynomial::from_map(self.n, acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::reduce::reduce;

    #[test]
    fn agrees_with_division() {
        let n = 4;
        let o = MonomialOrder::grevlex(n);
        let phi = parse_polynomial("x[1,2]*x[3,4] - x[1,3]*x[2,4] + x[1,4]*x[2,3]", n).unwrap();
        let mut nf = NormalForm::new(vec![phi.clone()], &o).unwrap();
        let f = parse_polynomial("x[1,2]^2*x[3,4]^2 + 3*x[1,3]*x[2,4]*y[1] - y[2]", n).unwrap();
        let r = reduce(&f, &[phi], &o).unwrap().remainder;
        assert_eq!(nf.polynomial(&f), r);
        assert_eq!(nf.polynomial(&r), r);
    }
}
