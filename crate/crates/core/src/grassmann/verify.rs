//! Initial-ideal verification and the degree cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{an_join_simplex, an_labeling, circular_weight_order, i2n, jn, kn_join_simplex, kn_labeling, composite_order};
use crate::algebra::{
    buchberger_complete, buchberger_criterion, groebner::leading_monomials, minimalize, Monomial,
    DEFAULT_PAIR_BUDGET,
};
use crate::complexes::{join_f_vector, kn_complex, simplex_f_vector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// `J_n` under the composite order, against `𝒦_n * Δ_{2n-4}`. Spelled
    /// `paper` on the command line and in JSON.
    #[serde(rename = "paper")]
    Composite,
    /// `I_{2,n}` under the circular weight order, against `𝒜_n * Δ_{n-1}`.
    Circular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub order: OrderKind,
    pub gb_holds: bool,
    pub initial_generators: Vec<Monomial>,
    pub sr_generators: Vec<Monomial>,
    /// `initial_generators == sr_generators` as sets.
    #[serde(rename = "match")]
    pub matches: bool,
    /// Every generator has a distinct squarefree leading monomial.
    pub leading_terms_squarefree: bool,
    pub pair_count: usize,
    pub pairs_skipped_coprime: usize,
    pub reduction_steps: usize,
    pub failing_pair: Option<(usize, usize)>,
    /// Leading monomials found by full completion that the generators'
    /// leading monomials do not already generate; `None` if not run.
    pub crosscheck_new_leads: Option<usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.gb_holds && self.matches && self.crosscheck_new_leads.unwrap_or(0) == 0
    }
}

pub fn verify_theorem1(n: usize) -> Result<VerificationReport> {
    verify(n, OrderKind::Composite, false)
}

/// Runs Buchberger's criterion on the generators and compares their
/// leading monomials with the Stanley-Reisner generators of the matching
/// complex. With `crosscheck`, also runs full completion and counts any new
/// minimal leading monomial.
pub fn verify(n: usize, kind: OrderKind, crosscheck: bool) -> Result<VerificationReport> {
    let (gens, order, sr) = match kind {
        OrderKind::Composite => {
            let order = composite_order(n)?;
            let sr = kn_join_simplex(n)?.stanley_reisner_ideal(&kn_labeling(n)?)?;
            (jn(n)?.generators, order, sr)
        }
        OrderKind::Circular => {
            let order = circular_weight_order(n)?;
            let sr = an_join_simplex(n)?.stanley_reisner_ideal(&an_labeling(n)?)?;
            (i2n(n)?.generators, order, sr)
        }
    };
    let outcome = buchberger_criterion(&gens, &order, true)?;
    let leads = leading_monomials(&gens, &order)?;
    let mut distinct = leads.clone();
    distinct.sort();
    distinct.dedup();
    let leading_terms_squarefree = distinct.len() == leads.len() && leads.iter().all(Monomial::is_squarefree);
    let initial_generators = minimalize(leads);
    let crosscheck_new_leads = if crosscheck {
        let basis = buchberger_complete(&gens, &order, DEFAULT_PAIR_BUDGET)?;
        let full = minimalize(leading_monomials(&basis, &order)?);
        Some(
            full.iter()
                .filter(|m| !initial_generators.iter().any(|g| g.divides(m)))
                .count(),
        )
    } else {
        None
    };
    let gb_holds = outcome.holds();
    Ok(VerificationReport {
        n,
        order: kind,
        gb_holds,
        matches: initial_generators == sr,
        initial_generators,
        sr_generators: sr,
        leading_terms_squarefree,
        pair_count: outcome.stats.pairs_checked,
        pairs_skipped_coprime: outcome.stats.pairs_skipped_coprime,
        reduction_steps: outcome.stats.reduction_steps,
        failing_pair: outcome.failure.map(|f| f.pair),
        crosscheck_new_leads,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    /// `2/(n-1)·C(2(n-2),n-2) + 1/(n-2)·C(2(n-3),n-3)`.
    pub formula: String,
    pub facet_count: u64,
    /// `(D-1)!` times the leading coefficient of the Hilbert polynomial of
    /// the Stanley-Reisner ring of `𝒦_n * Δ_{2n-4}`, `D` its Krull dimension.
    pub hilbert_degree: String,
    pub krull_dimension: usize,
    pub agree: bool,
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Exact value of the closed degree formula.
pub fn degree_formula(n: usize) -> Result<BigInt> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("degree formula needs n >= 5, got {n}")));
    }
    let n = n as u64;
    let a = BigRational::new(BigInt::from(2) * binomial(2 * (n - 2), n - 2), BigInt::from(n - 1));
    let b = BigRational::new(binomial(2 * (n - 3), n - 3), BigInt::from(n - 2));
    let s = a + b;
    if !s.is_integer() {
        return Err(Error::Degenerate(format!("degree formula is not an integer at n = {n}")));
    }
    Ok(s.to_integer())
}

/// Hilbert function of a Stanley-Reisner ring from its f-vector (indexed by
/// number of vertices): `H(t) = Σ_i f_{i-1} C(t-1, i-1)` for `t >= 1`.
pub fn hilbert_function(f: &[u128], t: u64) -> BigInt {
    if t == 0 {
        return BigInt::one();
    }
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| BigInt::from(c) * binomial(t - 1, i as u64 - 1))
        .sum()
}

/// Degree via the `(D-1)`-st finite difference of the Hilbert function,
/// which is constant and equal to `(D-1)!` times the leading coefficient.
pub fn hilbert_degree(f: &[u128]) -> (BigInt, usize) {
    let d = f.len() - 1;
    if d == 0 {
        return (BigInt::one(), 0);
    }
    let mut vals: Vec<BigInt> = (1..=d as u64).map(|t| hilbert_function(f, t)).collect();
    for _ in 0..d - 1 {
        vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    (vals.pop().expect("one value left"), d)
}

/// Closed formula, facet count of `𝒦_n`, and Hilbert-polynomial degree.
pub fn degree_check(n: usize) -> Result<DegreeReport> {
    let formula = degree_formula(n)?;
    let k = kn_complex(n)?;
    let facet_count = k.num_facets() as u64;
    let f = join_f_vector(&k.f_vector(), &simplex_f_vector(2 * n - 3));
    let (hd, dim) = hilbert_degree(&f);
    let agree = formula == hd && formula == BigInt::from(facet_count);
    Ok(DegreeReport {
        n,
        formula: formula.to_string(),
        facet_count,
        hilbert_degree: hd.to_string(),
        krull_dimension: dim,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{buchberger_complete, parse_ideal, standard_monomials};
    use crate::algebra::monomial::exponent_vectors;

    #[test]
    fn theorem_small() {
        let r = verify(5, OrderKind::Composite, true).unwrap();
        assert!(r.gb_holds && r.matches && r.leading_terms_squarefree);
        assert_eq!(r.initial_generators.len(), 10);
        assert_eq!(r.crosscheck_new_leads, Some(0));
        let expect: Vec<String> = ["x[1,3]*x[2,4]", "x[1,3]*x[2,5]", "x[1,4]*x[2,5]", "x[1,4]*x[3,5]", "x[2,4]*x[3,5]"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let r = verify(5, OrderKind::Circular, true).unwrap();
        assert!(r.passed());
        let mut got: Vec<String> = r.initial_generators.iter().map(|m| m.to_string()).collect();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn composite_initial_ideal_n5_mixed_terms() {
        let r = verify_theorem1(5).unwrap();
        let mut mixed: Vec<String> = r
            .initial_generators
            .iter()
            .filter(|m| m.bidegree() == (1, 1))
            .map(|m| m.to_string())
            .collect();
        mixed.sort();
        assert_eq!(mixed, ["x[1,4]*y[1]", "x[1,5]*y[1]", "x[1,5]*y[5]", "x[2,5]*y[5]", "x[3,5]*y[5]"]);
    }

    #[test]
    fn non_groebner_pair() {
        let o = circular_weight_order(5).unwrap();
        let g = parse_ideal("x[1,3]*x[2,4] - x[1,2]*x[3,4]\nx[1,3]*x[2,5] - x[1,2]*x[3,5]", Some(5)).unwrap();
        assert!(!buchberger_criterion(&g, &o, false).unwrap().holds());
        let full = buchberger_complete(&g, &o, 100).unwrap();
        assert_eq!(full.len(), 3);
        let before = minimalize(leading_monomials(&g, &o).unwrap());
        let after = minimalize(leading_monomials(&full, &o).unwrap());
        assert_eq!(after.len(), before.len() + 1);
    }

    #[test]
    fn complete_is_sound_on_groebner_inputs() {
        for n in 4..=6 {
            let o = circular_weight_order(n).unwrap();
            let g = i2n(n).unwrap().generators;
            let full = buchberger_complete(&g, &o, DEFAULT_PAIR_BUDGET).unwrap();
            assert_eq!(full.len(), g.len());
        }
        let full = buchberger_complete(&jn(6).unwrap().generators, &composite_order(6).unwrap(), DEFAULT_PAIR_BUDGET).unwrap();
        assert_eq!(full.len(), jn(6).unwrap().generators.len());
    }

    #[test]
    fn standard_monomial_counts() {
        let r = verify_theorem1(5).unwrap();
        let init = &r.initial_generators;
        assert_eq!(standard_monomials(init, (1, 0), 5).len(), 10);
        assert_eq!(standard_monomials(init, (0, 2), 5).len(), 15);
        assert_eq!(standard_monomials(init, (1, 1), 5).len(), 45);
    }

    #[test]
    fn degrees() {
        let expected = [12u64, 33, 98, 306, 990];
        for (k, n) in (5..=9).enumerate() {
            assert_eq!(degree_formula(n).unwrap(), BigInt::from(expected[k]));
        }
        for n in 5..=7 {
            let d = degree_check(n).unwrap();
            assert!(d.agree, "{d:?}");
            assert_eq!(d.krull_dimension, 3 * n - 5);
        }
    }

    /// The Hilbert function read off the f-vector agrees with a direct count
    /// of standard monomials of the initial ideal.
    #[test]
    fn hilbert_function_matches_standard_monomials() {
        let n = 5;
        let init = verify_theorem1(n).unwrap().initial_generators;
        let k = kn_complex(n).unwrap();
        let f = join_f_vector(&k.f_vector(), &simplex_f_vector(2 * n - 3));
        let nv = crate::algebra::num_vars(n);
        for t in 0..=3u16 {
            let count = exponent_vectors(nv, t)
                .into_iter()
                .map(|e| Monomial::from_exponents(e).unwrap())
                .filter(|m| init.iter().all(|g| !g.divides(m)))
                .count();
            assert_eq!(BigInt::from(count), hilbert_function(&f, t as u64), "t = {t}");
        }
    }
}
