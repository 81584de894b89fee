//! Random points on the total space of the dual quotient bundle.
//!
//! A rank-2 integer matrix `M` with rows `a, b` gives Pluecker coordinates
//! `x_ij = a_i b_j − a_j b_i`; any `y` with `M y = 0` completes a point where
//! every generator of `J_n` must vanish.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::jn;
use crate::algebra::{num_vars, Coeff, VarKind, Variable};
use crate::linalg::{Echelon, SparseVec};
use crate::Result;

/// A random point `(x, y)` with `x` the minors of a random rank-2 matrix and
/// `y` in its kernel, in canonical variable order.
pub fn bundle_point<R: Rng>(n: usize, rng: &mut R) -> Vec<Coeff> {
    loop {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        let minor = |i: usize, j: usize| a[i] * b[j] - a[j] * b[i];
        if (0..n).all(|i| (i + 1..n).all(|j| minor(i, j) == 0)) {
            continue;
        }
        let row = |v: &[i64]| -> SparseVec {
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k, BigInt::from(c)))
                .collect()
        };
        let mut e = Echelon::new();
        e.insert(&row(&a));
        e.insert(&row(&b));
        let kernel = e.kernel_basis(n);
        let mut y = vec![BigInt::zero(); n];
        for v in &kernel {
            let c = BigInt::from(rng.gen_range(-9..=9i64));
            for (k, val) in v {
                y[*k] += &c * val;
            }
        }
        if y.iter().all(Zero::is_zero) && !kernel.is_empty() {
            continue;
        }
        return Variable::all(n)
            .into_iter()
            .map(|v| match v.kind() {
                VarKind::X(i, j) => BigRational::from_integer(minor(i as usize - 1, j as usize - 1).into()),
                VarKind::Y(i) => BigRational::from_integer(y[i as usize - 1].clone()),
            })
            .collect();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    /// Generator name of the first nonvanishing evaluation.
    pub first_failure: Option<String>,
}

pub fn vanishing_oracle(n: usize, trials: usize, seed: u64) -> Result<VanishingReport> {
    let spec = jn(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        let point = bundle_point(n, &mut rng);
        debug_assert_eq!(point.len(), num_vars(n));
        let mut bad = false;
        for (name, g) in spec.names.iter().zip(&spec.generators) {
            if !g.evaluate(&point)?.is_zero() {
                bad = true;
                first_failure.get_or_insert_with(|| name.clone());
            }
        }
        failures += bad as usize;
    }
    Ok(VanishingReport { n, trials, seed, failures, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::pfaffian;

    #[test]
    fn generators_vanish() {
        for n in 4..=6 {
            let r = vanishing_oracle(n, 20, 1).unwrap();
            assert_eq!(r.failures, 0, "{r:?}");
        }
    }

    #[test]
    fn non_member_does_not_vanish() {
        // x_12 alone is not in J_n, so some point must see it nonzero
        let n = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x12 = crate::algebra::Polynomial::x(1, 2, n).unwrap();
        let hits = (0..20).filter(|_| !x12.evaluate(&bundle_point(n, &mut rng)).unwrap().is_zero()).count();
        assert!(hits > 0);
        let phi = pfaffian(1, 2, 3, 4, n).unwrap();
        assert!(phi.evaluate(&bundle_point(n, &mut rng)).unwrap().is_zero());
    }
}
