//! Monomial orders.
//!
//! Every order here is realized through a *sort key*: an integer vector that
//! depends linearly on the exponent vector and whose lexicographic comparison
//! is the order. Linearity gives `key(a*b) = key(a) + key(b)`, which the
//! reduction loop uses to avoid recomputing keys.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Monomial;
use crate::error::{Error, Result};

/// Tie-break order applied when the weight matrix does not separate two monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tiebreak {
    Lex,
    DegRevLex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic with `x_1 > x_2 > ... > x_n`.
    Lex,
    /// Total degree, then the rightmost nonzero entry of `a - b` negative wins.
    DegRevLex,
    Matrix(WeightOrder),
    Elimination(EliminationOrder),
}

/// `a > b` iff `M a > M b` lexicographically, else the tie-break decides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightOrder {
    rows: Vec<Vec<i64>>,
    tiebreak: Tiebreak,
}

/// Block order eliminating the trailing `block` variables: degrevlex on the
/// trailing block decides first, then `base` on the leading variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EliminationOrder {
    block: usize,
    base: Box<MonomialOrder>,
}

impl WeightOrder {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn tiebreak(&self) -> Tiebreak {
        self.tiebreak
    }
}

impl EliminationOrder {
    pub fn block(&self) -> usize {
        self.block
    }

    pub fn base(&self) -> &MonomialOrder {
        &self.base
    }
}

impl MonomialOrder {
    /// A weight-matrix order. Entries must be nonnegative and the rows linearly
    /// independent over the rationals.
    pub fn matrix(rows: Vec<Vec<i64>>, tiebreak: Tiebreak) -> Result<MonomialOrder> {
        if rows.is_empty() {
            return Err(Error::InvalidOrder("weight matrix has no rows".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidOrder("weight matrix rows are ragged or empty".into()));
        }
        if rows.iter().flatten().any(|&w| w < 0) {
            return Err(Error::InvalidOrder("weight matrix has a negative entry".into()));
        }
        if rational_rank(&rows) != rows.len() {
            return Err(Error::InvalidOrder("weight matrix rows are linearly dependent".into()));
        }
        Ok(MonomialOrder::Matrix(WeightOrder { rows, tiebreak }))
    }

    /// An order eliminating the last `block` variables, restricting to `base`
    /// on the others.
    pub fn eliminate_last(block: usize, base: MonomialOrder) -> MonomialOrder {
        MonomialOrder::Elimination(EliminationOrder {
            block,
            base: Box::new(base),
        })
    }

    /// Checks that the order can compare monomials in `n` variables.
    pub fn check_nvars(&self, n: usize) -> Result<()> {
        match self {
            MonomialOrder::Lex | MonomialOrder::DegRevLex => Ok(()),
            MonomialOrder::Matrix(w) => {
                if w.rows[0].len() == n {
                    Ok(())
                } else {
                    Err(Error::Dimension(format!(
                        "weight matrix has {} columns, ring has {n} variables",
                        w.rows[0].len()
                    )))
                }
            }
            MonomialOrder::Elimination(e) => {
                if e.block > n {
                    return Err(Error::Dimension(format!(
                        "cannot eliminate {} of {n} variables",
                        e.block
                    )));
                }
                e.base.check_nvars(n - e.block)
            }
        }
    }

    /// The sort key of an exponent vector.
    pub fn key(&self, exps: &[i32]) -> Vec<i64> {
        let mut out = Vec::with_capacity(exps.len() + 1);
        self.push_key(exps, &mut out);
        out
    }

    fn push_key(&self, exps: &[i32], out: &mut Vec<i64>) {
        match self {
            MonomialOrder::Lex => out.extend(exps.iter().map(|&e| e as i64)),
            MonomialOrder::DegRevLex => push_drl(exps, out),
            MonomialOrder::Matrix(w) => {
                for row in &w.rows {
                    out.push(row.iter().zip(exps).map(|(m, &e)| m * e as i64).sum());
                }
                match w.tiebreak {
                    Tiebreak::Lex => out.extend(exps.iter().map(|&e| e as i64)),
                    Tiebreak::DegRevLex => push_drl(exps, out),
                }
            }
            MonomialOrder::Elimination(e) => {
                let split = exps.len() - e.block;
                push_drl(&exps[split..], out);
                e.base.push_key(&exps[..split], out);
            }
        }
    }

    /// Strict comparison of two monomials.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::Dimension(format!(
                "monomials have {} and {} variables",
                a.nvars(),
                b.nvars()
            )));
        }
        self.check_nvars(a.nvars())?;
        Ok(self.cmp_unchecked(a, b))
    }

    pub(crate) fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a.exponents()).cmp(&self.key(b.exponents()))
    }
}

fn push_drl(exps: &[i32], out: &mut Vec<i64>) {
    out.push(exps.iter().map(|&e| e as i64).sum());
    out.extend(exps.iter().rev().map(|&e| -(e as i64)));
}

/// Rank of an integer matrix over the rationals.
pub(crate) fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                for j in col..ncols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "drl"),
            MonomialOrder::Matrix(w) => {
                write!(f, "matrix [")?;
                for (i, row) in w.rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    write!(f, "[{}]", cells.join(","))?;
                }
                let tb = match w.tiebreak {
                    Tiebreak::Lex => "lex",
                    Tiebreak::DegRevLex => "drl",
                };
                write!(f, "] {tb}")
            }
            MonomialOrder::Elimination(e) => write!(f, "elim({}, {})", e.block, e.base),
        }
    }
}
