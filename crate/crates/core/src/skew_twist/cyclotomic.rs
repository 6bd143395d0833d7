//! Formal sums `Σ c_k ζ^{k}` of roots of unity with field coefficients.
//!
//! Sums are stored as written (one entry per distinct phase) so that a single
//! phase stays a single term when printed. Equality and zero tests reduce both
//! sides in `k[ζ_N] / Φ_N` for a common order `N`, which makes them exact.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::field::{Field, FieldElement, Phase};

#[derive(Debug, Clone)]
pub struct Cyclotomic {
    field: Field,
    terms: BTreeMap<Phase, FieldElement>,
}

impl Cyclotomic {
    pub fn zero(field: Field) -> Cyclotomic {
        Cyclotomic {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Cyclotomic {
        Cyclotomic::phase(field, Phase::ONE)
    }

    pub fn phase(field: Field, p: Phase) -> Cyclotomic {
        Cyclotomic::term(p, field.one())
    }

    pub fn scalar(c: FieldElement) -> Cyclotomic {
        Cyclotomic::term(Phase::ONE, c)
    }

    pub fn term(p: Phase, c: FieldElement) -> Cyclotomic {
        let mut out = Cyclotomic::zero(c.field());
        out.add_term(p, &c);
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &FieldElement)> {
        self.terms.iter()
    }

    fn add_term(&mut self, p: Phase, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p).or_insert_with(|| c.field().zero());
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c);
        }
        out
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            field: self.field,
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let mut out = Cyclotomic::zero(self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(*p * *q, &(a * b));
            }
        }
        out
    }

    pub fn mul_phase(&self, p: Phase) -> Cyclotomic {
        Cyclotomic {
            field: self.field,
            terms: self.terms.iter().map(|(q, c)| (*q * p, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Cyclotomic {
        let mut out = Cyclotomic::zero(self.field);
        for (p, a) in &self.terms {
            out.add_term(*p, &(a * c));
        }
        out
    }

    /// Least common order of the phases present.
    pub fn conductor(&self) -> u64 {
        self.terms.keys().fold(1, |acc, p| acc.lcm(&p.denom()))
    }

    /// Coordinates in the power basis `1, ζ_N, ..., ζ_N^{φ(N)-1}` of `k(ζ_N)`;
    /// `n` must be a multiple of the conductor.
    pub fn reduce_at(&self, n: u64) -> Vec<FieldElement> {
        let n_us = n as usize;
        let mut coeffs = vec![self.field.zero(); n_us];
        for (p, c) in &self.terms {
            let k = (p.numer() * (n / p.denom())) as usize;
            coeffs[k] = &coeffs[k] + c;
        }
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let phi: Vec<FieldElement> = phi.iter().map(|&v| self.field.from_i64(v)).collect();
        for j in (deg..n_us).rev() {
            let lead = coeffs[j].clone();
            if lead.is_zero() {
                continue;
            }
            let shift = j - deg;
            for (k, pk) in phi.iter().enumerate() {
                coeffs[shift + k] = &coeffs[shift + k] - &(&lead * pk);
            }
        }
        coeffs.truncate(deg);
        coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.reduce_at(self.conductor()).iter().all(FieldElement::is_zero)
    }

    /// The value as a plain field element when it lies in the base field.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        let red = self.reduce_at(self.conductor());
        if red.iter().skip(1).all(FieldElement::is_zero) {
            Some(red.first().cloned().unwrap_or_else(|| self.field.zero()))
        } else {
            None
        }
    }

    /// If this is exactly one root of unity times one, that phase.
    pub fn as_unit_phase(&self) -> Option<Phase> {
        if self.terms.len() == 1 {
            let (p, c) = self.terms.iter().next().expect("one term");
            if c.is_one() {
                return Some(*p);
            }
        }
        // fall back to exact comparison, e.g. for 1 + [1/2] + [1/2] style sums
        let n = self.conductor();
        let red = self.reduce_at(n);
        for k in 0..n {
            let cand = Cyclotomic::phase(self.field, Phase::new(k as i64, n));
            if cand.reduce_at(n) == red {
                return Some(Phase::new(k as i64, n));
            }
        }
        None
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field {
            return false;
        }
        if self.terms == other.terms {
            return true;
        }
        let n = self.conductor().lcm(&other.conductor());
        self.reduce_at(n) == other.reduce_at(n)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| match (p.is_one(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => format!("[{p}]"),
                (false, false) => format!("{c}*[{p}]"),
            })
            .collect();
        match parts.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", parts[0]),
            _ => write!(f, "({})", parts.join(" + ")),
        }
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Division of integer polynomials by a monic divisor, remainder discarded.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for j in (0..=qd).rev() {
        let c = rem[j + dd];
        q[j] = c;
        for (k, &dk) in den.iter().enumerate() {
            rem[j + k] -= c * dk;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}
