//! S-polynomials, Buchberger's criterion and completion, initial ideals.

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::monomial::{monomials_of_bidegree, Bidegree, Monomial};
use super::order::MonomialOrder;
use super::polynomial::{Coeff, Polynomial};
use super::reduce::reduce;
use crate::{Error, Result};

/// Multipliers `(u_f, c_f, u_g, c_g)` with `S(f,g) = c_f·u_f·f + c_g·u_g·g`.
///
/// The scaling convention puts a monic monomial in front of `f`:
/// `S(f,g) = (L/LM f)·f − (lc f / lc g)·(L/LM g)·g`, `L = lcm(LM f, LM g)`.
pub(crate) fn s_pair_multipliers(
    f: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Result<(Monomial, Coeff, Monomial, Coeff)> {
    if f.n() != g.n() {
        return Err(Error::RingMismatch(f.n(), g.n()));
    }
    let (mf, cf) = f.leading_term(order).ok_or(Error::ZeroPolynomial)?;
    let (mg, cg) = g.leading_term(order).ok_or(Error::ZeroPolynomial)?;
    let l = mf.lcm(mg);
    let uf = l.div(mf).expect("lcm divisible");
    let ug = l.div(mg).expect("lcm divisible");
    Ok((uf, Coeff::one(), ug, -(cf / cg)))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    let (uf, cf, ug, cg) = s_pair_multipliers(f, g, order)?;
    Ok(&f.mul_term(&uf, &cf) + &g.mul_term(&ug, &cg))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub pair: (usize, usize),
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriterionStats {
    pub pairs_checked: usize,
    pub pairs_skipped_coprime: usize,
    pub reduction_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub stats: CriterionStats,
    /// First failing pair in lexicographic pair order, if any.
    pub failure: Option<PairFailure>,
}

impl CriterionOutcome {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

fn all_pairs(len: usize) -> Vec<(usize, usize)> {
    (0..len)
        .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
        .collect()
}

/// Checks that every S-pair of `g` reduces to zero modulo `g`. With
/// `skip_coprime`, pairs with coprime leading monomials are not reduced.
pub fn buchberger_criterion(
    g: &[Polynomial],
    order: &MonomialOrder,
    skip_coprime: bool,
) -> Result<CriterionOutcome> {
    let leads = leading_monomials(g, order)?;
    let pairs = all_pairs(g.len());
    let results: Vec<Option<Result<(usize, Option<Polynomial>)>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if skip_coprime && leads[i].gcd_is_one(&leads[j]) {
                return None;
            }
            Some(s_polynomial(&g[i], &g[j], order).and_then(|s| {
                let t = reduce(&s, g, order)?;
                Ok((t.steps, (!t.remainder.is_zero()).then_some(t.remainder)))
            }))
        })
        .collect();

    let mut stats = CriterionStats::default();
    let mut failure = None;
    for (pair, r) in pairs.into_iter().zip(results) {
        match r {
            None => stats.pairs_skipped_coprime += 1,
            Some(r) => {
                let (steps, rem) = r?;
                stats.pairs_checked += 1;
                stats.reduction_steps += steps;
                if let (None, Some(remainder)) = (&failure, rem) {
                    failure = Some(PairFailure { pair, remainder });
                }
            }
        }
    }
    Ok(CriterionOutcome { stats, failure })
}

pub(crate) fn leading_monomials(g: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Monomial>> {
    g.iter()
        .map(|p| p.leading_monomial(order).cloned().ok_or(Error::ZeroPolynomial))
        .collect()
}

/// Default pair budget for [`buchberger_complete`].
pub const DEFAULT_PAIR_BUDGET: usize = 200_000;

/// Buchberger completion with the normal selection strategy: always process
/// the pending pair whose lcm is smallest in `order`, ties broken by pair
/// index. Nonzero remainders are appended after the input, made monic.
pub fn buchberger_complete(
    g: &[Polynomial],
    order: &MonomialOrder,
    pair_budget: usize,
) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = g.to_vec();
    let mut leads = leading_monomials(&basis, order)?;
    let mut pending: Vec<(Monomial, usize, usize)> = Vec::new();
    for (i, j) in all_pairs(basis.len()) {
        pending.push((leads[i].lcm(&leads[j]), i, j));
    }
    let mut processed = 0;
    while !pending.is_empty() {
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (la, ia, ja) = &pending[a];
                let (lb, ib, jb) = &pending[b];
                order.cmp(la, lb).then((ia, ja).cmp(&(ib, jb)))
            })
            .expect("nonempty");
        let (_, i, j) = pending.swap_remove(best);
        if leads[i].gcd_is_one(&leads[j]) {
            continue;
        }
        processed += 1;
        if processed > pair_budget {
            return Err(Error::PairBudget(pair_budget));
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = reduce(&s, &basis, order)?.remainder;
        if r.is_zero() {
            continue;
        }
        let lc = r.leading_term(order).expect("nonzero").1.clone();
        let r = r.scale(&(Coeff::one() / lc));
        let lm = r.leading_monomial(order).expect("nonzero").clone();
        let k = basis.len();
        for (a, la) in leads.iter().enumerate() {
            pending.push((la.lcm(&lm), a, k));
        }
        basis.push(r);
        leads.push(lm);
    }
    Ok(basis)
}

/// Inclusion-minimal set of monic leading monomials, canonically sorted.
pub fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort();
    monos.dedup();
    let keep: Vec<bool> = monos
        .iter()
        .enumerate()
        .map(|(a, m)| {
            !monos
                .iter()
                .enumerate()
                .any(|(b, d)| a != b && d.divides(m) && d != m)
        })
        .collect();
    monos
        .into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// Minimal generators of the initial ideal, after confirming `g` is a
/// Groebner basis.
pub fn initial_ideal(g: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Monomial>> {
    let outcome = buchberger_criterion(g, order, true)?;
    if let Some(f) = outcome.failure {
        return Err(Error::NotGroebner(f.pair.0, f.pair.1));
    }
    Ok(minimalize(leading_monomials(g, order)?))
}

/// Monomials of the given bidegree divisible by no generator of `init`.
pub fn standard_monomials(init: &[Monomial], bidegree: Bidegree, n: usize) -> Vec<Monomial> {
    monomials_of_bidegree(n, bidegree)
        .into_iter()
        .filter(|m| init.iter().all(|g| !g.divides(m)))
        .collect()
}

/// True when `m` lies outside the monomial ideal generated by `init`.
pub fn is_standard(init: &[Monomial], m: &Monomial) -> bool {
    init.iter().all(|g| !g.divides(m))
}
