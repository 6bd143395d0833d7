//! Sparse multivariate polynomials over exact fields and their monomial orders.

mod monomial;
mod order;
mod polynomial;
mod reduce;

pub use monomial::{Monomial, MonomialDisplay};
pub use order::{EliminationOrder, MonomialOrder, Tiebreak, WeightOrder};
pub use polynomial::{poly_arith, ArithOp, PolyDisplay, Polynomial, Ring};
pub use reduce::{divide_exact, divide_with_cofactors, reduce_mod_set};

pub(crate) use order::rational_rank;
pub(crate) use reduce::{reduce_work, work_map, Divisor};

use std::cmp::Ordering;

use crate::error::Result;

/// Strict comparison of `a` and `b` under `ord`.
pub fn compare_monomials(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    ord.compare(a, b)
}

/// `LM(f)` and its coefficient.
pub fn leading_monomial(
    f: &Polynomial,
    ord: &MonomialOrder,
) -> Result<(Monomial, crate::field::FieldElement)> {
    f.leading_term(ord)
}
