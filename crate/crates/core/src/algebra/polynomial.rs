//! Sparse polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Bidegree, Monomial};
use super::order::MonomialOrder;
use super::variable::{num_vars, Variable};
use crate::{Error, Result};

pub type Coeff = BigRational;

pub fn int(k: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(k))
}

/// A polynomial in `S_n`. Terms are kept sorted descending in the canonical
/// graded reverse-lexicographic order with no zero coefficients and no
/// repeated monomials; the empty term list is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Polynomial {
        Polynomial { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: Coeff) -> Polynomial {
        Polynomial::term(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Polynomial {
        Polynomial::constant(n, Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Polynomial {
        let n = m.n();
        if c.is_zero() {
            return Polynomial::zero(n);
        }
        Polynomial { n, terms: vec![(m, c)] }
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(m, Coeff::one())
    }

    pub fn var(v: Variable) -> Polynomial {
        Polynomial::monomial(Monomial::var(v))
    }

    /// `x[i,j]` with the conventions `x[j,i] = -x[i,j]` and `x[i,i] = 0`.
    pub fn x(i: usize, j: usize, n: usize) -> Result<Polynomial> {
        if i == j && (1..=n).contains(&i) {
            return Ok(Polynomial::zero(n));
        }
        let (v, s) = Variable::x(i, j, n)?;
        Ok(Polynomial::term(Monomial::var(v), int(s as i64)))
    }

    pub fn y(i: usize, n: usize) -> Result<Polynomial> {
        Ok(Polynomial::var(Variable::y(i, n)?))
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(n: usize, terms: I) -> Result<Polynomial> {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::RingMismatch(n, m.n()));
            }
            *acc.entry(m).or_insert_with(Coeff::zero) += c;
        }
        Ok(Polynomial::from_map(n, acc))
    }

    pub(crate) fn from_map(n: usize, acc: BTreeMap<Monomial, Coeff>) -> Polynomial {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| Coeff::zero())
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Common bidegree of all terms, if the polynomial is bihomogeneous.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let first = self.terms.first()?.0.bidegree();
        self.terms
            .iter()
            .all(|(m, _)| m.bidegree() == first)
            .then_some(first)
    }

    /// Common torus degree of all terms, if homogeneous.
    pub fn fine_degree(&self) -> Option<Vec<i64>> {
        let first = self.terms.first()?.0.fine_degree();
        self.terms
            .iter()
            .all(|(m, _)| m.fine_degree() == first)
            .then_some(first)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RingMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero) += ca * cb;
            }
        }
        Ok(Polynomial::from_map(self.n, acc))
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { n: self.n, terms: out }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// `c·m·self`. Multiplying by a monomial preserves the canonical order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Variable) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| (m.div_var(v).expect("exponent positive"), c * int(e as i64)))
        });
        Polynomial::from_terms(self.n, terms).expect("same ring")
    }

    /// Evaluates at a point given in canonical variable order.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        if point.len() != num_vars(self.n) {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                num_vars(self.n)
            )));
        }
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (k, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[k];
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Sets every variable in `vars` to zero.
    pub fn set_zero(&self, vars: &[Variable]) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exponent(v) == 0))
                .cloned()
                .collect(),
        }
    }

    /// Content-free integer normalisation sign: makes the canonical first
    /// coefficient positive.
    pub fn normalize_sign(&self) -> Polynomial {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials over different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Σ coefficients[i]·generators[i].
pub fn dot(coefficients: &[Polynomial], generators: &[Polynomial]) -> Result<Polynomial> {
    if coefficients.len() != generators.len() {
        return Err(Error::InvalidArgument(format!(
            "{} coefficients for {} generators",
            coefficients.len(),
            generators.len()
        )));
    }
    let n = generators.first().map(|g| g.n()).unwrap_or(0);
    let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
    for (a, g) in coefficients.iter().zip(generators) {
        a.check(g)?;
        for (ma, ca) in &a.terms {
            for (mg, cg) in &g.terms {
                *acc.entry(ma.mul(mg)).or_insert_with(Coeff::zero) += ca * cg;
            }
        }
    }
    Ok(Polynomial::from_map(n, acc))
}
