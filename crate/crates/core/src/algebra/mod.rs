//! Exact sparse polynomial arithmetic over the rationals in
//! `S_n = Q[x_ij, y_i]`, layered monomial orders, division with quotient
//! traces, Buchberger machinery and syzygies.

pub mod groebner;
pub mod monomial;
pub mod normal_form;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod reduce;
pub mod syzygy;
pub mod variable;

pub use groebner::{
    buchberger_complete, buchberger_criterion, initial_ideal, is_standard, minimalize, s_polynomial,
    standard_monomials, CriterionOutcome, CriterionStats, PairFailure, DEFAULT_PAIR_BUDGET,
};
pub use monomial::{monomials_of_bidegree, Bidegree, Monomial};
pub use normal_form::NormalForm;
pub use order::{Direction, Layer, MonomialOrder};
pub use parse::{parse_ideal, parse_polynomial};
pub use polynomial::{dot, int, Coeff, Polynomial};
pub use reduce::{reduce, ReductionTrace};
pub use syzygy::{syzygies_from_traces, SchreyerReducer, SyzygyVector, TraceSyzygy};
pub use variable::{num_vars, num_x_vars, VarKind, Variable};
