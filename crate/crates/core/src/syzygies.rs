//! Explicit syzygy families of `J_n` and their comparison with the syzygy
//! module extracted from S-pair reductions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    monomials_of_bidegree, standard_monomials, syzygies_from_traces, Bidegree, Monomial, Polynomial,
    SchreyerReducer, SyzygyVector,
};
use crate::grassmann::{i2n, jn, composite_order, pfaffian_signed, IdealSpec};
use crate::linalg::{primitive_from_rational, Echelon};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSyzygy {
    pub name: String,
    pub vector: SyzygyVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyJson {
    pub name: String,
    pub coefficients: Vec<String>,
}

impl NamedSyzygy {
    pub fn to_json(&self) -> SyzygyJson {
        SyzygyJson {
            name: self.name.clone(),
            coefficients: self.vector.coefficients.iter().map(|c| c.to_string()).collect(),
        }
    }
}

fn x(a: usize, b: usize, n: usize) -> Polynomial {
    Polynomial::x(a, b, n).expect("in range")
}

fn y(a: usize, n: usize) -> Polynomial {
    Polynomial::y(a, n).expect("in range")
}

/// Adds `c·Φ_{sorted(q)}` to the vector, where `q` is written as in the
/// displayed families (already increasing).
fn add_phi(v: &mut [Polynomial], spec: &IdealSpec, q: [usize; 4], c: Polynomial) -> Result<()> {
    let k = spec
        .pfaffian_index(q)
        .ok_or_else(|| Error::InvalidIndex(format!("no Pfaffian {q:?}")))?;
    v[k] = &v[k] + &c;
    Ok(())
}

/// `R_ijk`: `x_ij f_k − x_ik f_j + x_jk f_i + Σ_{r<i} y_r Φ_rijk − Σ_{i<r<j} y_r Φ_irjk
/// + Σ_{j<r<k} y_r Φ_ijrk − Σ_{r>k} y_r Φ_ijkr`, over the `J_n` generator list.
pub fn syzygy_rijk(i: usize, j: usize, k: usize, n: usize) -> Result<SyzygyVector> {
    if !(1 <= i && i < j && j < k && k <= n) {
        return Err(Error::InvalidIndex(format!("R indices ({i},{j},{k}) for n = {n}")));
    }
    let spec = jn(n)?;
    let mut v = vec![Polynomial::zero(n); spec.generators.len()];
    let fi = |a: usize| spec.f_index(a).expect("in range");
    v[fi(k)] = x(i, j, n);
    v[fi(j)] = -x(i, k, n);
    v[fi(i)] = x(j, k, n);
    for r in 1..i {
        add_phi(&mut v, &spec, [r, i, j, k], y(r, n))?;
    }
    for r in i + 1..j {
        add_phi(&mut v, &spec, [i, r, j, k], -y(r, n))?;
    }
    for r in j + 1..k {
        add_phi(&mut v, &spec, [i, j, r, k], y(r, n))?;
    }
    for r in k + 1..=n {
        add_phi(&mut v, &spec, [i, j, k, r], -y(r, n))?;
    }
    Ok(SyzygyVector::new(v))
}

/// `Σ y_i f_i = 0`.
pub fn euler_syzygy(n: usize) -> Result<SyzygyVector> {
    let spec = jn(n)?;
    let mut v = vec![Polynomial::zero(n); spec.generators.len()];
    for i in 1..=n {
        v[spec.f_index(i).expect("in range")] = y(i, n);
    }
    Ok(SyzygyVector::new(v))
}

/// Row `r` of `M·v = 0` for the skew matrix `M` on `i<j<k<l<m`:
/// `x_ri Φ_jklm − x_rj Φ_iklm + x_rk Φ_ijlm − x_rl Φ_ijkm + x_rm Φ_ijkl`,
/// over the `J_n` generator list.
pub fn syzygy_r5(r: usize, q: [usize; 5], n: usize) -> Result<SyzygyVector> {
    let [i, j, k, l, m] = q;
    if !(1 <= i && i < j && j < k && k < l && l < m && m <= n) {
        return Err(Error::InvalidIndex(format!("quintuple {q:?} for n = {n}")));
    }
    if !q.contains(&r) {
        return Err(Error::InvalidIndex(format!("r = {r} not in {q:?}")));
    }
    let spec = jn(n)?;
    let mut v = vec![Polynomial::zero(n); spec.generators.len()];
    add_phi(&mut v, &spec, [j, k, l, m], x(r, i, n))?;
    add_phi(&mut v, &spec, [i, k, l, m], -x(r, j, n))?;
    add_phi(&mut v, &spec, [i, j, l, m], x(r, k, n))?;
    add_phi(&mut v, &spec, [i, j, k, m], -x(r, l, n))?;
    add_phi(&mut v, &spec, [i, j, k, l], x(r, m, n))?;
    Ok(SyzygyVector::new(v))
}

/// The vector `v` of the 5x5 construction, with the corrected last entry
/// `Φ_ijkl`, and the product `M·v` (which must vanish).
pub fn skew_matrix_product(q: [usize; 5], n: usize) -> Result<Vec<Polynomial>> {
    let [i, j, k, l, m] = q;
    let v = [
        pfaffian_signed(j, k, l, m, n)?,
        -pfaffian_signed(i, k, l, m, n)?,
        pfaffian_signed(i, j, l, m, n)?,
        -pfaffian_signed(i, j, k, m, n)?,
        pfaffian_signed(i, j, k, l, n)?,
    ];
    Ok(q.iter()
        .map(|&a| {
            q.iter()
                .zip(&v)
                .fold(Polynomial::zero(n), |acc, (&b, vb)| &acc + &(&x(a, b, n) * vb))
        })
        .collect())
}

fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn quintuples(n: usize) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    for m in l + 1..=n {
                        out.push([i, j, k, l, m]);
                    }
                }
            }
        }
    }
    out
}

pub fn rijk_family(n: usize) -> Result<Vec<NamedSyzygy>> {
    triples(n)
        .into_iter()
        .map(|[i, j, k]| {
            Ok(NamedSyzygy { name: format!("R[{i},{j},{k}]"), vector: syzygy_rijk(i, j, k, n)? })
        })
        .collect()
}

pub fn r5_family(n: usize) -> Result<Vec<NamedSyzygy>> {
    let mut out = Vec::new();
    for q in quintuples(n) {
        for r in q {
            let [i, j, k, l, m] = q;
            out.push(NamedSyzygy {
                name: format!("R{r}[{i},{j},{k},{l},{m}]"),
                vector: syzygy_r5(r, q, n)?,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub count: usize,
    pub all_expand_to_zero: bool,
    /// Total degree 3 and bihomogeneous against the generators.
    pub all_bihomogeneous: bool,
    /// `None` when membership was not requested.
    pub all_in_trace_module: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationRow {
    pub bidegree: Bidegree,
    pub module_dim: usize,
    pub generated_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub n: usize,
    pub trace_syzygies: usize,
    pub families: Vec<FamilyCheck>,
    /// Dimension of the syzygy module against the span of the
    /// `I_{2,n}` trace syzygies, `R_ijk` and the Euler syzygy, per bidegree.
    pub generation: Vec<GenerationRow>,
    pub generation_bound: i64,
    pub families_generate: bool,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| {
            f.all_expand_to_zero && f.all_bihomogeneous && f.all_in_trace_module.unwrap_or(true)
        }) && self.families_generate
    }
}

fn check_family(
    name: &str,
    family: &[NamedSyzygy],
    gens: &[Polynomial],
    reducer: Option<&SchreyerReducer<'_>>,
) -> Result<FamilyCheck> {
    let zero: Vec<bool> = family
        .par_iter()
        .map(|s| s.vector.is_syzygy_of(gens))
        .collect::<Result<_>>()?;
    let homog = family.iter().all(|s| {
        s.vector
            .bidegree(gens)
            .is_some_and(|(a, b)| a + b == 3)
    });
    let member = reducer.map(|red| {
        family
            .par_iter()
            .map(|s| red.reduce(&s.vector).0.is_zero())
            .collect::<Vec<bool>>()
            .into_iter()
            .all(|b| b)
    });
    Ok(FamilyCheck {
        family: name.to_string(),
        count: family.len(),
        all_expand_to_zero: zero.into_iter().all(|b| b),
        all_bihomogeneous: homog,
        all_in_trace_module: member,
    })
}

/// Checks every family and, with `membership`, that each member reduces to
/// zero against the trace syzygies under the Schreyer order. With
/// `generation_bound = Some(d)`, also compares, in every bidegree of total
/// degree at most `d`, the dimension of the syzygy module with that of the
/// submodule spanned by the `I_{2,n}` trace syzygies, `R_ijk` and Euler.
pub fn verify_generation(n: usize, membership: bool, generation_bound: Option<i64>) -> Result<GenerationReport> {
    if !(4..=9).contains(&n) {
        return Err(Error::InvalidArgument(format!("syzygy verification supports 4 <= n <= 9, got {n}")));
    }
    let spec = jn(n)?;
    let gens = &spec.generators;
    let order = if n >= 5 {
        composite_order(n)?
    } else {
        crate::grassmann::circular_weight_order(n)?
    };
    let traces: Vec<SyzygyVector> = syzygies_from_traces(gens, &order)?
        .into_iter()
        .map(|t| t.vector)
        .collect();
    let reducer = if membership { Some(SchreyerReducer::new(gens, &order, &traces)?) } else { None };

    let rijk = rijk_family(n)?;
    let euler = vec![NamedSyzygy { name: "Euler".into(), vector: euler_syzygy(n)? }];
    let r5 = r5_family(n)?;
    let families = vec![
        check_family("R_ijk", &rijk, gens, reducer.as_ref())?,
        check_family("Euler", &euler, gens, reducer.as_ref())?,
        check_family("R^r_ijklm", &r5, gens, reducer.as_ref())?,
    ];

    let mut generation = Vec::new();
    let bound = generation_bound.unwrap_or(0);
    if generation_bound.is_some() {
        let i2 = i2n(n)?;
        let pad = gens.len() - i2.generators.len();
        let mut generators: Vec<SyzygyVector> = syzygies_from_traces(&i2.generators, &order)?
            .into_iter()
            .map(|t| {
                let mut c = t.vector.coefficients;
                c.extend(std::iter::repeat_n(Polynomial::zero(n), pad));
                SyzygyVector::new(c)
            })
            .collect();
        generators.extend(rijk.iter().map(|s| s.vector.clone()));
        generators.push(euler[0].vector.clone());
        let init = crate::algebra::initial_ideal(gens, &order)?;
        for total in 3..=bound {
            for a in 0..=total {
                let d = (a, total - a);
                let module_dim = syzygy_module_dim(gens, &init, d, n);
                let generated_dim = span_dim(gens, &generators, d, n)?;
                generation.push(GenerationRow { bidegree: d, module_dim, generated_dim });
            }
        }
    }
    let families_generate = generation.iter().all(|r| r.module_dim == r.generated_dim);
    Ok(GenerationReport {
        n,
        trace_syzygies: traces.len(),
        families,
        generation,
        generation_bound: bound,
        families_generate,
    })
}

fn count_monomials(n: usize, d: Bidegree) -> usize {
    if d.0 < 0 || d.1 < 0 {
        0
    } else {
        monomials_of_bidegree(n, d).len()
    }
}

/// `dim Syz_d = Σ_α dim S_{d − deg g_α} − dim (J)_d`, with `dim J_d` read
/// from the standard monomials of the initial ideal.
fn syzygy_module_dim(gens: &[Polynomial], init: &[Monomial], d: Bidegree, n: usize) -> usize {
    let free: usize = gens
        .iter()
        .map(|g| {
            let e = g.bidegree().expect("nonzero");
            count_monomials(n, (d.0 - e.0, d.1 - e.1))
        })
        .sum();
    let ideal = count_monomials(n, d) - standard_monomials(init, d, n).len();
    free - ideal
}

/// Dimension of the degree-`d` part of the submodule spanned by `generators`.
fn span_dim(gens: &[Polynomial], generators: &[SyzygyVector], d: Bidegree, n: usize) -> Result<usize> {
    let gen_deg: Vec<Bidegree> = gens.iter().map(|g| g.bidegree().expect("nonzero")).collect();
    // columns are (component, monomial); products are grouped by fine degree
    // so each block is eliminated separately
    let mut blocks: BTreeMap<Vec<i64>, Vec<Vec<(usize, Monomial, num_rational::BigRational)>>> = BTreeMap::new();
    for s in generators {
        let Some(sd) = s.bidegree(gens) else { continue };
        let shift = (d.0 - sd.0, d.1 - sd.1);
        if shift.0 < 0 || shift.1 < 0 {
            continue;
        }
        for u in monomials_of_bidegree(n, shift) {
            let mut entries = Vec::new();
            let mut fine = None;
            for (comp, a) in s.coefficients.iter().enumerate() {
                for (m, c) in a.terms() {
                    let mm = m.mul(&u);
                    if fine.is_none() {
                        let mut f = mm.fine_degree();
                        let g = gens[comp].fine_degree().expect("homogeneous");
                        f.iter_mut().zip(&g).for_each(|(x, y)| *x += y);
                        fine = Some(f);
                    }
                    entries.push((comp, mm, c.clone()));
                }
            }
            if let Some(f) = fine {
                debug_assert!(entries.iter().all(|(comp, m, _)| {
                    let e = m.bidegree();
                    (e.0 + gen_deg[*comp].0, e.1 + gen_deg[*comp].1) == d
                }));
                blocks.entry(f).or_default().push(entries);
            }
        }
    }
    let ranks: Vec<usize> = blocks
        .into_par_iter()
        .map(|(_, rows)| {
            let mut cols: HashMap<(usize, Monomial), usize> = HashMap::new();
            let mut e = Echelon::new();
            for row in rows {
                let v: Vec<(usize, num_rational::BigRational)> = row
                    .into_iter()
                    .map(|(comp, m, c)| {
                        let next = cols.len();
                        (*cols.entry((comp, m)).or_insert(next), c)
                    })
                    .collect();
                let mut merged: BTreeMap<usize, num_rational::BigRational> = BTreeMap::new();
                for (k, c) in v {
                    *merged.entry(k).or_insert_with(|| num_rational::BigRational::from_integer(BigInt::from(0))) += c;
                }
                let v: Vec<_> = merged.into_iter().collect();
                e.insert(&primitive_from_rational(&v));
            }
            e.rank()
        })
        .collect();
    Ok(ranks.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::grassmann::quadric_f;

    #[test]
    fn rijk_n4_example() {
        let n = 4;
        let v = syzygy_rijk(1, 2, 3, n).unwrap();
        let spec = jn(n).unwrap();
        // one Pfaffian, then f_1..f_4
        assert_eq!(v.coefficients[0], parse_polynomial("-y[4]", n).unwrap());
        assert_eq!(v.coefficients[1], parse_polynomial("x[2,3]", n).unwrap());
        assert_eq!(v.coefficients[2], parse_polynomial("-x[1,3]", n).unwrap());
        assert_eq!(v.coefficients[3], parse_polynomial("x[1,2]", n).unwrap());
        assert!(v.is_syzygy_of(&spec.generators).unwrap());
    }

    #[test]
    fn rijk_n3_has_no_pfaffian_terms() {
        let v = syzygy_rijk(1, 2, 3, 3).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.is_syzygy_of(&jn(3).unwrap().generators).unwrap());
        assert!(syzygy_rijk(2, 1, 3, 4).is_err());
    }

    #[test]
    fn families_expand_to_zero() {
        for n in 4..=7 {
            let g = jn(n).unwrap().generators;
            for s in rijk_family(n).unwrap().iter().chain(&r5_family(n).unwrap()) {
                assert!(s.vector.is_syzygy_of(&g).unwrap(), "{} at n = {n}", s.name);
            }
            assert!(euler_syzygy(n).unwrap().is_syzygy_of(&g).unwrap());
        }
        assert_eq!(r5_family(6).unwrap().len(), 5 * 6);
    }

    #[test]
    fn euler_sign_flip_is_not_a_syzygy() {
        let n = 5;
        let spec = jn(n).unwrap();
        let mut v = euler_syzygy(n).unwrap();
        let k = spec.f_index(1).unwrap();
        v.coefficients[k] = -&v.coefficients[k];
        assert!(!v.is_syzygy_of(&spec.generators).unwrap());
    }

    #[test]
    fn r5_correction() {
        for q in quintuples(6) {
            assert!(skew_matrix_product(q, 6).unwrap().iter().all(Polynomial::is_zero));
        }
        // the printed row repeats Φ_ijkm in the last slot and is not a syzygy
        let n = 5;
        let (r, [i, j, k, l, m]) = (2, [1, 2, 3, 4, 5]);
        let printed = &(&(&(&(&x(r, i, n) * &pfaffian_signed(j, k, l, m, n).unwrap())
            - &(&x(r, j, n) * &pfaffian_signed(i, k, l, m, n).unwrap()))
            + &(&x(r, k, n) * &pfaffian_signed(i, j, l, m, n).unwrap()))
            - &(&x(r, l, n) * &pfaffian_signed(i, j, k, m, n).unwrap()))
            + &(&x(r, m, n) * &pfaffian_signed(i, j, k, m, n).unwrap());
        assert!(!printed.is_zero());
        assert!(syzygy_r5(r, [i, j, k, l, m], n).unwrap().is_syzygy_of(&jn(n).unwrap().generators).unwrap());
        assert!(syzygy_r5(6, [1, 2, 3, 4, 5], 6).is_err());
    }

    #[test]
    fn r_equals_i_drops_first_term() {
        let v = syzygy_r5(1, [1, 2, 3, 4, 5], 5).unwrap();
        let spec = jn(5).unwrap();
        assert!(v.coefficients[spec.pfaffian_index([2, 3, 4, 5]).unwrap()].is_zero());
        assert!(v.is_syzygy_of(&spec.generators).unwrap());
    }

    #[test]
    fn koszul_vector() {
        let n = 5;
        let spec = jn(n).unwrap();
        let mut c = vec![Polynomial::zero(n); spec.generators.len()];
        c[spec.f_index(1).unwrap()] = quadric_f(2, n).unwrap();
        c[spec.f_index(2).unwrap()] = -quadric_f(1, n).unwrap();
        assert!(SyzygyVector::new(c).is_syzygy_of(&spec.generators).unwrap());
    }

    #[test]
    fn generation_n5() {
        let r = verify_generation(5, true, Some(4)).unwrap();
        for row in &r.generation {
            eprintln!("{:?} {} {}", row.bidegree, row.module_dim, row.generated_dim);
        }
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn dropping_euler_loses_generation() {
        let n = 5;
        let spec = jn(n).unwrap();
        let gens: Vec<SyzygyVector> = rijk_family(n).unwrap().into_iter().map(|s| s.vector).collect();
        assert_eq!(span_dim(&spec.generators, &gens, (1, 2), n).unwrap(), 0);
        let with = vec![euler_syzygy(n).unwrap()];
        assert_eq!(span_dim(&spec.generators, &with, (1, 2), n).unwrap(), 1);
    }
}
