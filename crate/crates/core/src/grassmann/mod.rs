//! The ideals `I_{2,n}` and `J_n`, their term orders, and the end-to-end
//! verifiers built on them.

mod cases;
mod oracle;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{num_vars, Direction, Layer, Monomial, MonomialOrder, Polynomial, VarKind, Variable};
use crate::complexes::{associahedron, kn_complex, SimplicialComplex, VertexLabel};
use crate::{Error, Result};

pub use cases::{replay_cases, CaseReplay, CaseReport};
pub use oracle::{bundle_point, vanishing_oracle, VanishingReport};
pub use verify::{degree_check, verify, verify_theorem1, DegreeReport, OrderKind, VerificationReport};

fn x(i: usize, j: usize, n: usize) -> Polynomial {
    Polynomial::x(i, j, n).expect("index in range")
}

fn y(i: usize, n: usize) -> Polynomial {
    Polynomial::y(i, n).expect("index in range")
}

/// `x_ab x_cd − x_ac x_bd + x_ad x_bc` for arbitrary indices, using
/// `x_ba = −x_ab` and `x_aa = 0`.
pub fn pfaffian_signed(a: usize, b: usize, c: usize, d: usize, n: usize) -> Result<Polynomial> {
    for k in [a, b, c, d] {
        if k < 1 || k > n {
            return Err(Error::InvalidIndex(format!("index {k} out of range for n = {n}")));
        }
    }
    Ok(&(&(&x(a, b, n) * &x(c, d, n)) - &(&x(a, c, n) * &x(b, d, n))) + &(&x(a, d, n) * &x(b, c, n)))
}

/// The Pfaffian `Φ_ijkl`, `1 <= i < j < k < l <= n`.
pub fn pfaffian(i: usize, j: usize, k: usize, l: usize, n: usize) -> Result<Polynomial> {
    if !(1 <= i && i < j && j < k && k < l && l <= n) {
        return Err(Error::InvalidIndex(format!("Pfaffian indices ({i},{j},{k},{l}) for n = {n}")));
    }
    pfaffian_signed(i, j, k, l, n)
}

/// `f_i = Σ_{j>i} x_ij y_j − Σ_{j<i} x_ji y_j`.
pub fn quadric_f(i: usize, n: usize) -> Result<Polynomial> {
    if i < 1 || i > n {
        return Err(Error::InvalidIndex(format!("f_{i} for n = {n}")));
    }
    let mut p = Polynomial::zero(n);
    for j in 1..=n {
        if j != i {
            p = &p + &(&x(i, j, n) * &y(j, n));
        }
    }
    Ok(p)
}

/// `f_i − x_ij y_j`.
pub fn quadric_f_without(i: usize, j: usize, n: usize) -> Result<Polynomial> {
    Ok(&quadric_f(i, n)? - &(&x(i, j, n) * &y(j, n)))
}

/// Increasing quadruples in lexicographic order.
pub fn quadruples(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdealKind {
    I2n,
    Jn,
}

#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub n: usize,
    pub kind: IdealKind,
    /// Pfaffians in lexicographic `(i,j,k,l)` order, then `f_1, …, f_n` for `J_n`.
    pub generators: Vec<Polynomial>,
    pub names: Vec<String>,
}

impl IdealSpec {
    pub fn num_pfaffians(&self) -> usize {
        quadruples(self.n).len()
    }

    /// Position of `Φ_ijkl` in the generator list.
    pub fn pfaffian_index(&self, q: [usize; 4]) -> Option<usize> {
        quadruples(self.n).iter().position(|p| *p == q)
    }

    /// Position of `f_i` (only for `J_n`).
    pub fn f_index(&self, i: usize) -> Option<usize> {
        (self.kind == IdealKind::Jn && (1..=self.n).contains(&i)).then(|| self.num_pfaffians() + i - 1)
    }

    /// Generator list as text, one polynomial per line with a name comment.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {:?} n={}\n", self.kind, self.n);
        for (name, g) in self.names.iter().zip(&self.generators) {
            out.push_str(&format!("# {name}\n{g}\n"));
        }
        out
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > 16 {
        return Err(Error::InvalidArgument(format!("n = {n} outside supported range {min}..=16")));
    }
    Ok(())
}

/// Generators of `I_{2,n}`.
pub fn i2n(n: usize) -> Result<IdealSpec> {
    check_n(n, 4)?;
    let mut generators = Vec::new();
    let mut names = Vec::new();
    for [i, j, k, l] in quadruples(n) {
        generators.push(pfaffian(i, j, k, l, n)?);
        names.push(format!("Phi[{i},{j},{k},{l}]"));
    }
    Ok(IdealSpec { n, kind: IdealKind::I2n, generators, names })
}

/// Generators of `J_n`.
pub fn jn(n: usize) -> Result<IdealSpec> {
    check_n(n, 2)?;
    let mut spec = if n >= 4 {
        i2n(n)?
    } else {
        IdealSpec { n, kind: IdealKind::I2n, generators: Vec::new(), names: Vec::new() }
    };
    spec.kind = IdealKind::Jn;
    for i in 1..=n {
        spec.generators.push(quadric_f(i, n)?);
        spec.names.push(format!("f[{i}]"));
    }
    Ok(spec)
}

/// `w(x_ab) = (b−a)(n−b+a)`; y-variables weigh 0.
pub fn circular_weights(n: usize) -> Vec<i64> {
    Variable::all(n)
        .into_iter()
        .map(|v| match v.kind() {
            VarKind::X(a, b) => {
                let arc = (b - a) as i64;
                arc * (n as i64 - arc)
            }
            VarKind::Y(_) => 0,
        })
        .collect()
}

pub fn circular_weight_order(n: usize) -> Result<MonomialOrder> {
    check_n(n, 4)?;
    MonomialOrder::new(
        n,
        "circular",
        vec![
            Layer::TotalDegree,
            Layer::Weight { weights: circular_weights(n), direction: Direction::LargerIsGreater },
        ],
    )
}

/// The composite order: total degree; fewer `y_2..y_{n-1}`; fewer
/// `x_{(n-1)n}`; lex in `y_n > y_1 > y_2 > … > y_{n-1}`; circular weight;
/// revlex.
pub fn composite_order(n: usize) -> Result<MonomialOrder> {
    check_n(n, 5)?;
    let yv = |i: usize| Variable::y(i, n).expect("in range");
    let middle: Vec<Variable> = (2..n).map(yv).collect();
    let mut priority = vec![yv(n), yv(1)];
    priority.extend(middle.iter().copied());
    MonomialOrder::new(
        n,
        "composite",
        vec![
            Layer::TotalDegree,
            Layer::RestrictedDegree { vars: middle, direction: Direction::LargerIsSmaller },
            Layer::RestrictedDegree {
                vars: vec![Variable::x(n - 1, n, n)?.0],
                direction: Direction::LargerIsSmaller,
            },
            Layer::RestrictedLex { priority },
            Layer::Weight { weights: circular_weights(n), direction: Direction::LargerIsGreater },
        ],
    )
}

/// Quadruples `i<j<k<l` whose Pfaffian does not lead with `x_ik x_jl`.
pub fn circular_failures(n: usize) -> Result<Vec<[usize; 4]>> {
    let order = circular_weight_order(n)?;
    let mut bad = Vec::new();
    for [i, j, k, l] in quadruples(n) {
        let phi = pfaffian(i, j, k, l, n)?;
        let expect = Monomial::x_product(n, &[(i, k), (j, l)])?;
        if phi.leading_monomial(&order) != Some(&expect) {
            bad.push([i, j, k, l]);
        }
    }
    Ok(bad)
}

/// Vertices and variables of `𝒦_n * Δ_{2n-4}`: diagonals to `x_ij`, `w1` to
/// `y_1`, `v` to `y_n`, `w2` to `x_1n`; the simplex factor takes the polygon
/// edges `x_{i,i+1}` and `y_2, …, y_{n-1}` (labelled `free[k]` for `y_k`).
pub fn kn_labeling(n: usize) -> Result<BTreeMap<VertexLabel, Variable>> {
    check_n(n, 5)?;
    let mut lab = BTreeMap::new();
    for v in kn_complex(n)?.vertices().iter().chain(&simplex_factor_vertices(n)) {
        let var = match *v {
            VertexLabel::Diagonal(i, j) | VertexLabel::Edge(i, j) => Variable::x(i as usize, j as usize, n)?.0,
            VertexLabel::W(1) => Variable::y(1, n)?,
            VertexLabel::W(_) => Variable::x(1, n, n)?.0,
            VertexLabel::V => Variable::y(n, n)?,
            VertexLabel::Free(k) => Variable::y(k as usize, n)?,
        };
        lab.insert(*v, var);
    }
    Ok(lab)
}

fn simplex_factor_vertices(n: usize) -> Vec<VertexLabel> {
    let mut out: Vec<VertexLabel> = (1..n).map(|i| VertexLabel::Edge(i as u8, i as u8 + 1)).collect();
    out.extend((2..n).map(|k| VertexLabel::Free(k as u32)));
    out
}

/// `𝒦_n * Δ_{2n-4}` with the labelling of [`kn_labeling`].
pub fn kn_join_simplex(n: usize) -> Result<SimplicialComplex> {
    kn_complex(n)?.join(&SimplicialComplex::simplex(&simplex_factor_vertices(n))?)
}

/// `𝒜_n * Δ_{n-1}` with the polygon edges (including `(1,n)`) as the simplex.
pub fn an_join_simplex(n: usize) -> Result<SimplicialComplex> {
    let mut edges: Vec<VertexLabel> = (1..n).map(|i| VertexLabel::Edge(i as u8, i as u8 + 1)).collect();
    edges.push(VertexLabel::Edge(1, n as u8));
    associahedron(n)?.join(&SimplicialComplex::simplex(&edges)?)
}

pub fn an_labeling(n: usize) -> Result<BTreeMap<VertexLabel, Variable>> {
    let k = an_join_simplex(n)?;
    k.vertices()
        .iter()
        .map(|v| match *v {
            VertexLabel::Diagonal(i, j) | VertexLabel::Edge(i, j) => {
                Ok((*v, Variable::x(i as usize, j as usize, n)?.0))
            }
            _ => Err(Error::InvalidComplex(format!("unexpected vertex {v}"))),
        })
        .collect()
}

/// Sanity helper for tests and reports: all variables of `S_n` are used by
/// the labelling of `𝒦_n * Δ_{2n-4}`.
pub fn labeling_is_complete(n: usize) -> Result<bool> {
    Ok(kn_labeling(n)?.len() == num_vars(n))
}
