//! Graded pieces of `T¹(S_n/J_n)` by exact linear algebra over normal
//! forms, and the normal-form lemma checker.
//!
//! A homomorphism `ρ: J_n → S_n/J_n` of degree `δ` is determined by the
//! normal forms of `ρ(F_α)`; it is well defined iff every trace syzygy
//! `Σ a_α F_α = 0` maps to `Σ a_α ρ(F_α) ≡ 0`. Everything is homogeneous for
//! the torus grading `x_ij ↦ e_i + e_j`, `y_i ↦ −e_i` (plus x-degree), so the
//! linear systems split into small blocks by fine degree.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    buchberger_criterion, groebner::leading_monomials, minimalize, monomials_of_bidegree,
    syzygies_from_traces, Bidegree, Coeff, Monomial, MonomialOrder, NormalForm, Polynomial, SyzygyVector,
    Variable,
};
use crate::grassmann::{jn, composite_order, IdealSpec};
use crate::linalg::{dot, primitive_from_rational, Echelon, SparseVec};
use crate::{Error, Result};

/// Groebner data for `J_n` under the composite order, shared by all slices.
pub struct JnContext {
    pub n: usize,
    pub spec: IdealSpec,
    pub order: MonomialOrder,
    pub init: Vec<Monomial>,
    pub traces: Vec<SyzygyVector>,
}

impl JnContext {
    /// Checks that the generators form a Groebner basis and extracts the
    /// trace syzygies; fails otherwise.
    pub fn new(n: usize) -> Result<JnContext> {
        let spec = jn(n)?;
        let order = composite_order(n)?;
        let outcome = buchberger_criterion(&spec.generators, &order, true)?;
        if let Some(f) = outcome.failure {
            return Err(Error::NotGroebner(f.pair.0, f.pair.1));
        }
        let traces = syzygies_from_traces(&spec.generators, &order)?
            .into_iter()
            .map(|t| t.vector)
            .collect();
        let init = minimalize(leading_monomials(&spec.generators, &order)?);
        Ok(JnContext { n, spec, order, init, traces })
    }

    pub fn normal_form(&self) -> NormalForm {
        NormalForm::new_unchecked(self.spec.generators.clone(), &self.order)
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.init.iter().all(|g| !g.divides(m))
    }

    fn standard_of(&self, d: Bidegree) -> Vec<Monomial> {
        if d.0 < 0 || d.1 < 0 {
            return Vec::new();
        }
        monomials_of_bidegree(self.n, d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T1Slice {
    pub n: usize,
    pub delta: Bidegree,
    pub hom_dim: usize,
    pub der_dim: usize,
    pub t1_dim: usize,
    /// Number of fine-degree blocks with at least one unknown.
    pub blocks: usize,
    pub unknowns: usize,
    /// Representatives of a basis of the slice, reduced modulo the
    /// derivation image: pairs (generator name, image in normal form).
    pub basis: Vec<Vec<(String, String)>>,
    /// Basis elements re-checked symbolically against every trace syzygy.
    pub basis_verified: bool,
}

struct Column {
    alpha: usize,
    m: Monomial,
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_into(acc: &mut BTreeMap<usize, Coeff>, col: usize, c: Coeff) {
    let e = acc.entry(col).or_insert_with(Coeff::zero);
    *e += c;
}

fn to_sparse(acc: BTreeMap<usize, Coeff>) -> SparseVec {
    let v: Vec<(usize, BigRational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    primitive_from_rational(&v)
}

/// The graded piece `T¹(S_n/J_n)_δ`.
pub fn t1_slice(ctx: &JnContext, delta: Bidegree) -> Result<T1Slice> {
    t1_slice_with(ctx, delta, false)
}

/// With `exhaustive`, every trace syzygy is imposed even after the kernel
/// has shrunk to the derivation image.
pub fn t1_slice_with(ctx: &JnContext, delta: Bidegree, exhaustive: bool) -> Result<T1Slice> {
    let n = ctx.n;
    let gens = &ctx.spec.generators;
    let gdeg: Vec<Bidegree> = gens.iter().map(|g| g.bidegree().expect("nonzero")).collect();
    let gfine: Vec<Vec<i64>> = gens.iter().map(|g| g.fine_degree().expect("homogeneous")).collect();
    let mut nf = ctx.normal_form();

    // unknowns, grouped by fine shift
    let mut std_cache: HashMap<Bidegree, Vec<Monomial>> = HashMap::new();
    let mut blocks: BTreeMap<Vec<i64>, Vec<Column>> = BTreeMap::new();
    for alpha in 0..gens.len() {
        let target = (gdeg[alpha].0 + delta.0, gdeg[alpha].1 + delta.1);
        let stds = std_cache.entry(target).or_insert_with(|| ctx.standard_of(target));
        for m in stds.iter() {
            let key = sub(&m.fine_degree(), &gfine[alpha]);
            blocks.entry(key).or_default().push(Column { alpha, m: m.clone() });
        }
    }

    // derivation generators m·∂/∂z, grouped the same way
    let vars = Variable::all(n);
    let partials: Vec<Vec<(usize, Polynomial)>> = vars
        .iter()
        .map(|&z| {
            gens.iter()
                .enumerate()
                .map(|(a, g)| (a, g.derivative(z)))
                .filter(|(_, p)| !p.is_zero())
                .collect()
        })
        .collect();
    let mut ders: BTreeMap<Vec<i64>, Vec<(usize, Monomial)>> = BTreeMap::new();
    for (zi, z) in vars.iter().enumerate() {
        let zm = Monomial::var(*z);
        let zd = zm.bidegree();
        for m in ctx.standard_of((zd.0 + delta.0, zd.1 + delta.1)) {
            let key = sub(&m.fine_degree(), &zm.fine_degree());
            ders.entry(key).or_default().push((zi, m));
        }
    }

    let mut slice = T1Slice {
        n,
        delta,
        hom_dim: 0,
        der_dim: 0,
        t1_dim: 0,
        blocks: blocks.len(),
        unknowns: blocks.values().map(Vec::len).sum(),
        basis: Vec::new(),
        basis_verified: true,
    };

    for (key, cols) in &blocks {
        let index: HashMap<(usize, &Monomial), usize> =
            cols.iter().enumerate().map(|(k, c)| ((c.alpha, &c.m), k)).collect();
        let mut by_alpha: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, c) in cols.iter().enumerate() {
            by_alpha.entry(c.alpha).or_default().push(k);
        }

        // derivation image; these are homomorphisms, so Hom has at least
        // this dimension
        let mut der = Echelon::new();
        let mut der_vectors = Vec::new();
        for (zi, m) in ders.get(key).map(Vec::as_slice).unwrap_or(&[]) {
            let mut acc: BTreeMap<usize, Coeff> = BTreeMap::new();
            for (alpha, p) in &partials[*zi] {
                for (t, c) in p.terms() {
                    let form = nf.monomial(&t.mul(m));
                    for (mu, d) in form.iter() {
                        let col = *index.get(&(*alpha, mu)).ok_or_else(|| {
                            Error::Degenerate(format!("derivation image leaves the unknown space at {mu}"))
                        })?;
                        add_into(&mut acc, col, c * d);
                    }
                }
            }
            let v = to_sparse(acc);
            if !v.is_empty() && der.insert(&v) {
                der_vectors.push(((*zi, m), v));
            }
        }
        let der_dim = der.rank();

        // syzygy constraints, until the kernel is squeezed down to the
        // derivations (unless exhaustive)
        let target = if exhaustive { cols.len() } else { cols.len() - der_dim };
        let mut cons = Echelon::new();
        'syz: for s in &ctx.traces {
            if cons.rank() >= target {
                break;
            }
            let mut rows: BTreeMap<Monomial, BTreeMap<usize, Coeff>> = BTreeMap::new();
            for (alpha, a) in s.coefficients.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let Some(ks) = by_alpha.get(&alpha) else { continue };
                for &k in ks {
                    for (t, c) in a.terms() {
                        let form = nf.monomial(&t.mul(&cols[k].m));
                        for (mu, d) in form.iter() {
                            add_into(rows.entry(mu.clone()).or_default(), k, c * d);
                        }
                    }
                }
            }
            for (_, row) in rows {
                let v = to_sparse(row);
                if !v.is_empty() {
                    cons.insert(&v);
                    if cons.rank() >= target {
                        break 'syz;
                    }
                }
            }
        }
        for ((zi, m), v) in &der_vectors {
            if cons.rows().iter().any(|r| !dot(r, v).is_zero()) {
                return Err(Error::Degenerate(format!(
                    "derivation {m}·d/d{} is not a homomorphism at delta {delta:?}",
                    vars[*zi]
                )));
            }
        }
        let kernel = cons.kernel_basis(cols.len());
        let hom = kernel.len();
        slice.hom_dim += hom;
        slice.der_dim += der_dim;
        slice.t1_dim += hom - der_dim;

        if hom > der_dim {
            der.reduce_rows();
            let mut quotient = der.clone();
            let mut reps = Vec::new();
            for k in &kernel {
                let r = der.reduce_full(k);
                if quotient.insert(&r) {
                    reps.push(r);
                }
            }
            if reps.len() != hom - der_dim {
                return Err(Error::Degenerate("quotient basis size mismatch".into()));
            }
            for r in reps {
                let images = assignment(cols, &r, n, gens.len());
                if !verify_assignment(ctx, &mut nf, &images)? {
                    slice.basis_verified = false;
                }
                slice.basis.push(
                    images
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(a, p)| (ctx.spec.names[a].clone(), p.to_string()))
                        .collect(),
                );
            }
        }
    }
    Ok(slice)
}

fn assignment(cols: &[Column], v: &SparseVec, n: usize, len: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(n); len];
    for (k, c) in v {
        let col = &cols[*k];
        out[col.alpha] = &out[col.alpha] + &Polynomial::term(col.m.clone(), BigRational::from_integer(c.clone()));
    }
    out
}

/// `Σ a_α g_α ≡ 0 (mod J_n)` for every trace syzygy, by direct expansion.
fn verify_assignment(ctx: &JnContext, nf: &mut NormalForm, images: &[Polynomial]) -> Result<bool> {
    for s in &ctx.traces {
        let p = s.dot(images)?;
        if !nf.polynomial(&p).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shifts with some nonnegative target and every target `<= max_target`.
pub fn window_shifts(ctx: &JnContext, max_target: Bidegree) -> Vec<Bidegree> {
    let degs: Vec<Bidegree> = {
        let mut d: Vec<Bidegree> = ctx.spec.generators.iter().map(|g| g.bidegree().expect("nonzero")).collect();
        d.sort();
        d.dedup();
        d
    };
    let lo = (degs.iter().map(|d| -d.0).min().unwrap_or(0), degs.iter().map(|d| -d.1).min().unwrap_or(0));
    let hi = (
        degs.iter().map(|d| max_target.0 - d.0).min().unwrap_or(0),
        degs.iter().map(|d| max_target.1 - d.1).min().unwrap_or(0),
    );
    let mut out = Vec::new();
    for dx in lo.0..=hi.0 {
        for dy in lo.1..=hi.1 {
            if degs.iter().any(|d| d.0 + dx >= 0 && d.1 + dy >= 0) {
                out.push((dx, dy));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct T1Window {
    pub n: usize,
    pub max_target: Bidegree,
    pub slices: Vec<T1Slice>,
    pub nonzero: Vec<Bidegree>,
    /// Always true: vanishing is only established on the computed window.
    pub partial: bool,
}

/// All slices of the window, computed in parallel and returned in shift order.
pub fn t1_window(ctx: &JnContext, max_target: Bidegree) -> Result<T1Window> {
    let shifts = window_shifts(ctx, max_target);
    let slices: Vec<T1Slice> = shifts
        .par_iter()
        .map(|&d| t1_slice(ctx, d))
        .collect::<Result<_>>()?;
    let nonzero = slices.iter().filter(|s| s.t1_dim > 0).map(|s| s.delta).collect();
    Ok(T1Window { n: ctx.n, max_target, slices, nonzero, partial: true })
}

/// Whether a basis element's Pfaffian images are proportional to
/// `(y_1, −y_2, y_3, −y_4, y_5)` on `(Φ_2345, Φ_1345, Φ_1245, Φ_1235, Φ_1234)`
/// with every `f_i` sent to zero (for `n = 5`).
pub fn matches_n5_pattern(element: &[(String, String)]) -> bool {
    let expected = [
        ("Phi[2,3,4,5]", "y[1]", 1i64),
        ("Phi[1,3,4,5]", "y[2]", -1),
        ("Phi[1,2,4,5]", "y[3]", 1),
        ("Phi[1,2,3,5]", "y[4]", -1),
        ("Phi[1,2,3,4]", "y[5]", 1),
    ];
    if element.len() != expected.len() {
        return false;
    }
    let map: BTreeMap<&str, &str> = element.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let mut scale: Option<BigRational> = None;
    for (name, var, sign) in expected {
        let Some(img) = map.get(name) else { return false };
        let Ok(p) = crate::algebra::parse_polynomial(img, 5) else { return false };
        let Ok(v) = crate::algebra::parse_polynomial(var, 5) else { return false };
        if p.len() != 1 || p.terms()[0].0 != v.terms()[0].0 {
            return false;
        }
        let c = &p.terms()[0].1 * BigRational::from_integer(BigInt::from(sign));
        match &scale {
            None => scale = Some(c),
            Some(s) if *s != c => return false,
            _ => {}
        }
    }
    scale.is_some_and(|s| !s.is_zero())
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaWitness {
    pub alpha: usize,
    pub beta: usize,
    pub z_c: String,
    pub z_d: String,
    pub offending: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    /// Samples discarded because `z_D` was not standard.
    pub resampled: usize,
    /// Trials where `z_C·z_D` was already in normal form.
    pub already_normal: usize,
    pub witnesses: Vec<LemmaWitness>,
}

/// Checks the lemma for one sample: every monomial of `NF(z_C·z_D)` is
/// `z_D` times a monomial in the `C`-indexed variables. Returns the first
/// offending monomial.
pub fn lemma_instance(nf: &mut NormalForm, alpha: usize, beta: usize, z_c: &Monomial, z_d: &Monomial) -> Option<Monomial> {
    let in_c = |v: Variable| match v.kind() {
        crate::algebra::VarKind::X(i, j) => (alpha..=beta).contains(&(i as usize)) && (alpha..=beta).contains(&(j as usize)),
        crate::algebra::VarKind::Y(_) => false,
    };
    let form = nf.monomial(&z_c.mul(z_d));
    form.iter().map(|(m, _)| m).find(|m| match m.div(z_d) {
        None => true,
        Some(q) => !q.support().all(in_c),
    }).cloned()
}

fn random_monomial<R: Rng>(vars: &[Variable], n: usize, max_deg: usize, rng: &mut R) -> Monomial {
    let deg = if vars.is_empty() { 0 } else { rng.gen_range(0..=max_deg) };
    Monomial::from_vars(n, (0..deg).map(|_| *vars.choose(rng).expect("nonempty"))).expect("same ring")
}

/// Random trials of the normal-form lemma, modulo `J_n`.
pub fn check_normal_form_lemma(ctx: &JnContext, trials: usize, seed: u64) -> Result<LemmaReport> {
    let n = ctx.n;
    let mut nf = ctx.normal_form();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 40));
    let crossings: Vec<Monomial> = ctx.init.iter().filter(|m| m.bidegree() == (2, 0)).cloned().collect();
    let mut report = LemmaReport { n, trials, seed, failures: 0, resampled: 0, already_normal: 0, witnesses: Vec::new() };
    let intervals: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect();
    for _ in 0..trials {
        let (alpha, beta) = *intervals.choose(&mut rng).expect("nonempty");
        let in_c = |i: usize| (alpha..=beta).contains(&i);
        let in_d = |i: usize| i <= alpha || i >= beta;
        let xs = |pred: &dyn Fn(usize) -> bool| -> Vec<Variable> {
            Variable::all(n)
                .into_iter()
                .filter(|v| matches!(v.kind(), crate::algebra::VarKind::X(i, j) if pred(i as usize) && pred(j as usize)))
                .collect()
        };
        let c_vars = xs(&in_c);
        let d_vars = xs(&in_d);
        // with fewer than four indices in C no crossing involves a
        // C-variable and nothing reduces; otherwise force one into z_C
        let z_c = if beta - alpha >= 3 {
            let mut idx: Vec<usize> = (alpha..=beta).collect::<Vec<_>>().choose_multiple(&mut rng, 4).cloned().collect();
            idx.sort();
            let crossing = Monomial::x_product(n, &[(idx[0], idx[2]), (idx[1], idx[3])])?;
            crossing.mul(&random_monomial(&c_vars, n, 2, &mut rng))
        } else {
            random_monomial(&c_vars, n, 4, &mut rng)
        };
        let mut tries = 0;
        let z_d = loop {
            let z = random_monomial(&d_vars, n, 4, &mut rng);
            if crossings.iter().all(|g| !g.divides(&z)) {
                break z;
            }
            report.resampled += 1;
            tries += 1;
            if tries > 10_000 {
                return Err(Error::Degenerate("could not sample a standard z_D".into()));
            }
        };
        let z = z_c.mul(&z_d);
        if ctx.is_standard(&z) {
            report.already_normal += 1;
        }
        if let Some(bad) = lemma_instance(&mut nf, alpha, beta, &z_c, &z_d) {
            report.failures += 1;
            if report.witnesses.len() < 10 {
                report.witnesses.push(LemmaWitness {
                    alpha,
                    beta,
                    z_c: z_c.to_string(),
                    z_d: z_d.to_string(),
                    offending: bad.to_string(),
                });
            }
        }
    }
    Ok(report)
}

/// `NF(x_24 x_35 · x_16)` for `n = 6`, as a polynomial string.
pub fn lemma_worked_example(ctx: &JnContext) -> Result<Polynomial> {
    if ctx.n != 6 {
        return Err(Error::InvalidArgument("the worked example lives in S_6".into()));
    }
    let z = Monomial::x_product(6, &[(2, 4), (3, 5), (1, 6)])?;
    let mut nf = ctx.normal_form();
    Ok(nf.polynomial(&Polynomial::monomial(z)))
}
