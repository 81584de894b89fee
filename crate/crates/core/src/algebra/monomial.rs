//! Monomials of `S_n = K[x_ij, y_i]` as dense exponent vectors over the
//! canonical variable enumeration.

use std::cmp::Ordering;
use std::fmt;

use super::variable::{n_from_num_vars, num_vars, num_x_vars, VarKind, Variable};
use crate::{Error, Result};

/// Bidegree `(deg_x, deg_y)`; `deg x_ij = (1,0)`, `deg y_i = (0,1)`.
pub type Bidegree = (i64, i64);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: u8,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial {
            n: n as u8,
            exps: vec![0; num_vars(n)],
        }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Result<Monomial> {
        let n = n_from_num_vars(exps.len())
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not C(n,2)+n", exps.len())))?;
        Ok(Monomial { n: n as u8, exps })
    }

    pub fn var(v: Variable) -> Monomial {
        let mut m = Monomial::one(v.n());
        m.exps[v.index()] = 1;
        m
    }

    /// Product of variables with multiplicity.
    pub fn from_vars<I: IntoIterator<Item = Variable>>(n: usize, vars: I) -> Result<Monomial> {
        let mut m = Monomial::one(n);
        for v in vars {
            if v.n() != n {
                return Err(Error::RingMismatch(n, v.n()));
            }
            m.exps[v.index()] += 1;
        }
        Ok(m)
    }

    /// `x[i,j]·x[k,l]`-style shorthand; indices must already be ordered.
    pub fn x_product(n: usize, pairs: &[(usize, usize)]) -> Result<Monomial> {
        let vars = pairs
            .iter()
            .map(|&(i, j)| Variable::x(i, j, n).map(|(v, _)| v))
            .collect::<Result<Vec<_>>>()?;
        Monomial::from_vars(n, vars)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, v: Variable) -> u16 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn bidegree(&self) -> Bidegree {
        let nx = num_x_vars(self.n());
        let dx = self.exps[..nx].iter().map(|&e| e as i64).sum();
        let dy = self.exps[nx..].iter().map(|&e| e as i64).sum();
        (dx, dy)
    }

    /// Torus weight refining the bigrading: `x_ij ↦ e_i + e_j`,
    /// `y_i ↦ -e_i`, with the x-degree appended as a last coordinate.
    /// Every generator of `J_n` is homogeneous for it.
    pub fn fine_degree(&self) -> Vec<i64> {
        let n = self.n();
        let mut w = vec![0i64; n + 1];
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let e = e as i64;
            match Variable::from_index(k, n).kind() {
                VarKind::X(i, j) => {
                    w[i as usize - 1] += e;
                    w[j as usize - 1] += e;
                    w[n] += e;
                }
                VarKind::Y(i) => w[i as usize - 1] -= e,
            }
        }
        w
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = Variable> + '_ {
        let n = self.n();
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(move |(k, _)| Variable::from_index(k, n))
    }

    /// Variables with multiplicity.
    pub fn factors(&self) -> Vec<(Variable, u16)> {
        let n = self.n();
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| (Variable::from_index(k, n), e))
            .collect()
    }

    pub fn check_same_ring(&self, other: &Monomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RingMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        Monomial {
            n: self.n,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, v: Variable) -> Monomial {
        let mut m = self.clone();
        m.exps[v.index()] += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.n == other.n && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            n: self.n,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        Monomial {
            n: self.n,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Divide out one power of `v`, if present.
    pub fn div_var(&self, v: Variable) -> Option<Monomial> {
        let k = v.index();
        if self.exps[k] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[k] -= 1;
        Some(m)
    }
}

/// Canonical ambient order: graded reverse-lexicographic on the canonical
/// variable enumeration. Used for storage, never for leading terms.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as its display string.
impl serde::Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every monomial of `S_n` with the given bidegree, in canonical order.
pub fn monomials_of_bidegree(n: usize, (dx, dy): Bidegree) -> Vec<Monomial> {
    if dx < 0 || dy < 0 {
        return Vec::new();
    }
    let nx = num_x_vars(n);
    let xs = exponent_vectors(nx, dx as u16);
    let ys = exponent_vectors(n, dy as u16);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for xe in &xs {
        for ye in &ys {
            let mut exps = Vec::with_capacity(nx + n);
            exps.extend_from_slice(xe);
            exps.extend_from_slice(ye);
            out.push(Monomial { n: n as u8, exps });
        }
    }
    out.sort();
    out
}

/// All exponent vectors of length `len` summing to `deg`.
pub(crate) fn exponent_vectors(len: usize, deg: u16) -> Vec<Vec<u16>> {
    fn rec(pos: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        let len = cur.len();
        if pos + 1 == len {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if len == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0; len];
    rec(0, deg, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize, n: usize) -> Monomial {
        Monomial::var(Variable::x(i, j, n).unwrap().0)
    }

    #[test]
    fn bidegree_and_fine_degree() {
        let n = 5;
        let m = x(1, 2, n).mul(&Monomial::var(Variable::y(3, n).unwrap()));
        assert_eq!(m.bidegree(), (1, 1));
        assert_eq!(m.fine_degree(), vec![1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn divisibility() {
        let a = x(1, 3, 5).mul(&x(2, 4, 5));
        let b = x(1, 3, 5);
        assert!(b.divides(&a));
        assert_eq!(a.div(&b).unwrap(), x(2, 4, 5));
        assert!(a.div(&x(1, 2, 5)).is_none());
        assert_eq!(a.lcm(&x(1, 2, 5)).degree(), 3);
        assert!(b.gcd_is_one(&x(2, 4, 5)));
    }

    #[test]
    fn counts_by_bidegree() {
        assert_eq!(monomials_of_bidegree(5, (1, 0)).len(), 10);
        assert_eq!(monomials_of_bidegree(5, (0, 2)).len(), 15);
        assert_eq!(monomials_of_bidegree(5, (1, 1)).len(), 50);
        assert_eq!(monomials_of_bidegree(5, (0, 0)).len(), 1);
        assert!(monomials_of_bidegree(5, (-1, 0)).is_empty());
    }

    #[test]
    fn display() {
        let m = x(1, 2, 4).mul(&x(1, 2, 4)).mul(&Monomial::var(Variable::y(4, 4).unwrap()));
        assert_eq!(m.to_string(), "x[1,2]^2*y[4]");
        assert_eq!(Monomial::one(4).to_string(), "1");
    }
}
