//! Syzygy vectors, Schreyer-style extraction from S-pair reductions, and
//! division in the syzygy module under the Schreyer order.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::groebner::{leading_monomials, s_pair_multipliers};
use super::monomial::{Bidegree, Monomial};
use super::order::MonomialOrder;
use super::polynomial::{dot, Coeff, Polynomial};
use super::reduce::reduce;
use crate::{Error, Result};

/// Polynomial coefficients indexed parallel to a generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVector {
    pub coefficients: Vec<Polynomial>,
}

impl SyzygyVector {
    pub fn new(coefficients: Vec<Polynomial>) -> Self {
        SyzygyVector { coefficients }
    }

    pub fn zero(n: usize, len: usize) -> Self {
        SyzygyVector {
            coefficients: vec![Polynomial::zero(n); len],
        }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Polynomial::is_zero)
    }

    /// Σ coefficients[i]·generators[i].
    pub fn dot(&self, generators: &[Polynomial]) -> Result<Polynomial> {
        dot(&self.coefficients, generators)
    }

    pub fn is_syzygy_of(&self, generators: &[Polynomial]) -> Result<bool> {
        Ok(self.dot(generators)?.is_zero())
    }

    /// Common bidegree of the products `a_i·g_i`, if the vector is
    /// bihomogeneous with respect to the generators' degrees.
    pub fn bidegree(&self, generators: &[Polynomial]) -> Option<Bidegree> {
        let mut out: Option<Bidegree> = None;
        for (a, g) in self.coefficients.iter().zip(generators) {
            if a.is_zero() {
                continue;
            }
            let (da, dg) = (a.bidegree()?, g.bidegree()?);
            let d = (da.0 + dg.0, da.1 + dg.1);
            match out {
                None => out = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        out
    }

    pub fn add(&self, other: &SyzygyVector) -> SyzygyVector {
        SyzygyVector::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> SyzygyVector {
        SyzygyVector::new(self.coefficients.iter().map(|a| a.mul_term(m, c)).collect())
    }
}

/// A syzygy read off the reduction of `S(g_i, g_j)` to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSyzygy {
    pub pair: (usize, usize),
    pub vector: SyzygyVector,
}

/// For every pair `i < j`, reduces `S(g_i, g_j) = Σ q_k g_k` and returns
/// `c_i u_i e_i + c_j u_j e_j − Σ q_k e_k`. When `g` is a Groebner basis
/// these generate the full syzygy module and form a Groebner basis of it for
/// the Schreyer order (see [`SchreyerReducer`]).
pub fn syzygies_from_traces(g: &[Polynomial], order: &MonomialOrder) -> Result<Vec<TraceSyzygy>> {
    let n = g.first().map(|p| p.n()).ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
    let pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (ui, ci, uj, cj) = s_pair_multipliers(&g[i], &g[j], order)?;
            let s = &g[i].mul_term(&ui, &ci) + &g[j].mul_term(&uj, &cj);
            let t = reduce(&s, g, order)?;
            if !t.remainder.is_zero() {
                return Err(Error::NotGroebner(i, j));
            }
            let mut coeffs: Vec<Polynomial> = t.quotients.iter().map(|q| -q).collect();
            coeffs[i] = &coeffs[i] + &Polynomial::term(ui, ci);
            coeffs[j] = &coeffs[j] + &Polynomial::term(uj, cj);
            debug_assert!(coeffs.iter().all(|c| c.n() == n));
            Ok(TraceSyzygy {
                pair: (i, j),
                vector: SyzygyVector::new(coeffs),
            })
        })
        .collect()
}

/// Division in the free module `⊕ S e_i` under the Schreyer order induced by
/// a Groebner basis: `u e_i > v e_j` iff `u·LM(g_i) > v·LM(g_j)`, or the
/// products are equal and `i < j`. Divisors must be trace syzygies (or any
/// vectors whose leading term is known to carry coefficient one).
pub struct SchreyerReducer<'a> {
    order: &'a MonomialOrder,
    gen_leads: Vec<Monomial>,
    divisors: Vec<(usize, Monomial, Coeff, SyzygyVector)>,
}

type ModuleKey = (Vec<i64>, Reverse<usize>);

impl<'a> SchreyerReducer<'a> {
    pub fn new(generators: &[Polynomial], order: &'a MonomialOrder, divisors: &[SyzygyVector]) -> Result<Self> {
        let gen_leads = leading_monomials(generators, order)?;
        let mut r = SchreyerReducer {
            order,
            gen_leads,
            divisors: Vec::new(),
        };
        for d in divisors {
            if let Some((comp, m, c)) = r.leading_term(d) {
                r.divisors.push((comp, m, c, d.clone()));
            }
        }
        Ok(r)
    }

    fn key(&self, comp: usize, m: &Monomial) -> ModuleKey {
        (self.order.key(&m.mul(&self.gen_leads[comp])), Reverse(comp))
    }

    pub fn leading_term(&self, v: &SyzygyVector) -> Option<(usize, Monomial, Coeff)> {
        let mut best: Option<(ModuleKey, usize, &Monomial, &Coeff)> = None;
        for (comp, a) in v.coefficients.iter().enumerate() {
            for (m, c) in a.terms() {
                let k = self.key(comp, m);
                if best.as_ref().is_none_or(|b| k > b.0) {
                    best = Some((k, comp, m, c));
                }
            }
        }
        best.map(|(_, comp, m, c)| (comp, m.clone(), c.clone()))
    }

    /// Returns the remainder of `v` after full division by the divisors,
    /// together with the multipliers used for each divisor.
    pub fn reduce(&self, v: &SyzygyVector) -> (SyzygyVector, Vec<Polynomial>) {
        let n = v.coefficients.first().map(|p| p.n()).unwrap_or(0);
        let len = v.len();
        let mut work: BTreeMap<ModuleKey, (usize, Monomial, Coeff)> = BTreeMap::new();
        let add = |work: &mut BTreeMap<ModuleKey, (usize, Monomial, Coeff)>, comp: usize, m: Monomial, c: Coeff| {
            let k = self.key(comp, &m);
            match work.get_mut(&k) {
                Some(slot) => {
                    slot.2 += c;
                    if slot.2.is_zero() {
                        work.remove(&k);
                    }
                }
                None => {
                    if !c.is_zero() {
                        work.insert(k, (comp, m, c));
                    }
                }
            }
        };
        for (comp, a) in v.coefficients.iter().enumerate() {
            for (m, c) in a.terms() {
                add(&mut work, comp, m.clone(), c.clone());
            }
        }
        let mut quotients: Vec<BTreeMap<Monomial, Coeff>> = vec![BTreeMap::new(); self.divisors.len()];
        let mut remainder: Vec<BTreeMap<Monomial, Coeff>> = vec![BTreeMap::new(); len];
        while let Some((_, (comp, m, c))) = work.pop_last() {
            let hit = self
                .divisors
                .iter()
                .enumerate()
                .find_map(|(k, (dc, dm, dcoef, d))| {
                    (*dc == comp).then(|| m.div(dm)).flatten().map(|u| (k, u, dcoef, d))
                });
            match hit {
                Some((k, u, dcoef, d)) => {
                    let q = &c / dcoef;
                    for (comp2, a) in d.coefficients.iter().enumerate() {
                        for (t, e) in a.terms() {
                            let tm = t.mul(&u);
                            if comp2 == comp && tm == m {
                                continue;
                            }
                            add(&mut work, comp2, tm, -(&q * e));
                        }
                    }
                    *quotients[k].entry(u).or_insert_with(Coeff::zero) += q;
                }
                None => {
                    remainder[comp].insert(m, c);
                }
            }
        }
        (
            SyzygyVector::new(remainder.into_iter().map(|r| Polynomial::from_map(n, r)).collect()),
            quotients.into_iter().map(|q| Polynomial::from_map(n, q)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::variable::Variable;

    #[test]
    fn koszul_pair() {
        let n = 4;
        let o = MonomialOrder::grevlex(n);
        let a = Polynomial::var(Variable::x(1, 2, n).unwrap().0);
        let b = Polynomial::var(Variable::x(1, 3, n).unwrap().0);
        let gens = vec![a.clone(), b.clone()];
        let syz = syzygies_from_traces(&gens, &o).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].vector.coefficients, vec![b, -&a]);
        assert!(syz[0].vector.is_syzygy_of(&gens).unwrap());
    }

    #[test]
    fn schreyer_membership_of_multiple() {
        let n = 4;
        let o = MonomialOrder::grevlex(n);
        let a = Polynomial::var(Variable::x(1, 2, n).unwrap().0);
        let b = Polynomial::var(Variable::x(1, 3, n).unwrap().0);
        let gens = vec![a.clone(), b.clone()];
        let syz: Vec<_> = syzygies_from_traces(&gens, &o)
            .unwrap()
            .into_iter()
            .map(|t| t.vector)
            .collect();
        let r = SchreyerReducer::new(&gens, &o, &syz).unwrap();
        let y1 = Monomial::var(Variable::y(1, n).unwrap());
        let v = syz[0].mul_term(&y1, &crate::algebra::polynomial::int(3));
        let (rem, q) = r.reduce(&v);
        assert!(rem.is_zero());
        assert_eq!(q[0], Polynomial::term(y1, crate::algebra::polynomial::int(3)));
        // (1, 0) is not a syzygy and does not reduce to zero
        let (rem, _) = r.reduce(&SyzygyVector::new(vec![Polynomial::one(n), Polynomial::zero(n)]));
        assert!(!rem.is_zero());
    }
}
