//! Ring variables `x[i,j]` (Pluecker coordinates) and `y[i]`.
//!
//! The canonical enumeration lists `x[1,2], x[1,3], …, x[n-1,n]` in
//! lexicographic order followed by `y[1], …, y[n]`.

use std::fmt;

use crate::{Error, Result};

/// Number of variables of `S_n`: `C(n,2) + n`.
pub fn num_vars(n: usize) -> usize {
    n * (n - 1) / 2 + n
}

/// Number of x-variables, `C(n,2)`.
pub fn num_x_vars(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Recovers `n` from the number of variables. `n(n+1)/2` is strictly
/// increasing so the inverse is unique when it exists.
pub fn n_from_num_vars(len: usize) -> Option<usize> {
    let mut n = 1;
    while num_vars(n) < len {
        n += 1;
    }
    (num_vars(n) == len).then_some(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// `x[i,j]` with `1 <= i < j <= n`.
    X(u8, u8),
    /// `y[i]` with `1 <= i <= n`.
    Y(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    n: u8,
    kind: VarKind,
}

impl Variable {
    /// Builds `x[i,j]`, normalising `x[j,i] = -x[i,j]`. Returns the
    /// canonical variable together with the sign picked up by the swap.
    pub fn x(i: usize, j: usize, n: usize) -> Result<(Variable, i8)> {
        check_n(n)?;
        if i == j {
            return Err(Error::InvalidVariable(format!("x[{i},{i}] is identically zero")));
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        if a < 1 || b > n {
            return Err(Error::InvalidVariable(format!("x[{i},{j}] out of range for n = {n}")));
        }
        Ok((
            Variable {
                n: n as u8,
                kind: VarKind::X(a as u8, b as u8),
            },
            sign,
        ))
    }

    pub fn y(i: usize, n: usize) -> Result<Variable> {
        check_n(n)?;
        if i < 1 || i > n {
            return Err(Error::InvalidVariable(format!("y[{i}] out of range for n = {n}")));
        }
        Ok(Variable {
            n: n as u8,
            kind: VarKind::Y(i as u8),
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn is_x(&self) -> bool {
        matches!(self.kind, VarKind::X(..))
    }

    /// Position in the canonical enumeration.
    pub fn index(&self) -> usize {
        let n = self.n();
        match self.kind {
            VarKind::X(i, j) => x_index(i as usize, j as usize, n),
            VarKind::Y(i) => num_x_vars(n) + i as usize - 1,
        }
    }

    pub fn from_index(index: usize, n: usize) -> Variable {
        let nx = num_x_vars(n);
        assert!(index < num_vars(n), "variable index {index} out of range");
        let kind = if index >= nx {
            VarKind::Y((index - nx + 1) as u8)
        } else {
            let mut rest = index;
            let mut i = 1;
            while rest >= n - i {
                rest -= n - i;
                i += 1;
            }
            VarKind::X(i as u8, (i + 1 + rest) as u8)
        };
        Variable { n: n as u8, kind }
    }

    /// All variables of `S_n` in canonical order.
    pub fn all(n: usize) -> Vec<Variable> {
        (0..num_vars(n)).map(|k| Variable::from_index(k, n)).collect()
    }
}

/// Canonical index of `x[i,j]`, `1 <= i < j <= n`.
pub(crate) fn x_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > 64 {
        return Err(Error::InvalidArgument(format!("unsupported n = {n}")));
    }
    Ok(())
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::X(i, j) => write!(f, "x[{i},{j}]"),
            VarKind::Y(i) => write!(f, "y[{i}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry_normalises() {
        let (v, s) = Variable::x(3, 1, 4).unwrap();
        assert_eq!(v.kind(), VarKind::X(1, 3));
        assert_eq!(s, -1);
        let (w, t) = Variable::x(1, 3, 4).unwrap();
        assert_eq!((v, t), (w, 1));
    }

    #[test]
    fn diagonal_rejected() {
        assert!(Variable::x(2, 2, 4).is_err());
        assert!(Variable::x(0, 2, 4).is_err());
        assert!(Variable::y(5, 4).is_err());
    }

    #[test]
    fn index_round_trip() {
        for n in 1..=9 {
            let all = Variable::all(n);
            assert_eq!(all.len(), num_vars(n));
            for (k, v) in all.iter().enumerate() {
                assert_eq!(v.index(), k);
            }
            assert_eq!(n_from_num_vars(num_vars(n)), Some(n));
        }
        assert_eq!(Variable::all(4)[0].to_string(), "x[1,2]");
        assert_eq!(Variable::all(4)[5].to_string(), "x[3,4]");
        assert_eq!(Variable::all(4)[6].to_string(), "y[1]");
        assert_eq!(n_from_num_vars(11), None);
    }
}
