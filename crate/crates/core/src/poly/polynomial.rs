use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A polynomial ring `k[x_1..x_n]`: coefficient field plus named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Ring {
        Ring {
            field,
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// A ring with variables named `x1..xn`.
    pub fn with_nvars(field: Field, n: usize) -> Ring {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Ring::new(field, &names)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// This ring with extra variables appended.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Ring {
        let mut names: Vec<String> = self.vars.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring {
            field: self.field,
            vars: names.into(),
        }
    }

    /// The same variables over another field.
    pub fn with_field(&self, field: Field) -> Ring {
        Ring {
            field,
            vars: self.vars.clone(),
        }
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "ring mismatch: {} vs {}",
                self.describe(),
                other.describe()
            )))
        }
    }

    fn describe(&self) -> String {
        format!("{}[{}]", self.field, self.vars.join(","))
    }
}

/// A sparse polynomial. The term map never stores a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElement>,
}

/// Operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring operation: fails with a dimension error on ring mismatch.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    f.ring.check_same(&g.ring)?;
    Ok(match op {
        ArithOp::Add => f + g,
        ArithOp::Sub => f - g,
        ArithOp::Mul => f * g,
    })
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Polynomial {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Ring, i: usize) -> Polynomial {
        Polynomial::term(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: FieldElement) -> Polynomial {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from possibly repeated terms, combining and pruning zeros.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
            p.add_term(m, &c);
        }
        p
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs with integer coefficients.
    pub fn from_int_terms(ring: &Ring, terms: &[(i64, &[i32])]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), ring.field().from_i64(*c))),
        )
    }

    pub(crate) fn from_map(ring: &Ring, terms: BTreeMap<Monomial, FieldElement>) -> Polynomial {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FieldElement> {
        self.terms.get(m)
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &FieldElement)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (ord.key(m.exponents()), m, c))
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    /// The `ord`-largest monomial and its coefficient.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, FieldElement)> {
        ord.check_nvars(self.ring.nvars())?;
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp_unchecked(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::UndefinedLeadingTerm)
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Scales so that the leading coefficient is one; zero stays zero.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            Err(_) => self.clone(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| !m.is_laurent_free())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Embeds into `ring`, which must extend this ring by trailing variables.
    pub fn extend_to(&self, ring: &Ring) -> Polynomial {
        let k = ring.nvars() - self.ring.nvars();
        Polynomial {
            ring: ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.extend(k), c.clone())).collect(),
        }
    }

    /// Drops trailing variables; `None` when any term uses one of them.
    pub fn restrict_to(&self, ring: &Ring) -> Option<Polynomial> {
        let n = ring.nvars();
        let k = self.ring.nvars() - n;
        if self.terms.keys().any(|m| m.exponents()[n..].iter().any(|&e| e != 0)) {
            return None;
        }
        Some(Polynomial {
            ring: ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.truncate(k), c.clone())).collect(),
        })
    }

    /// Reduces rational coefficients modulo `p`; `None` when a denominator vanishes.
    pub fn reduce_mod_prime(&self, p: u64) -> Option<Polynomial> {
        let field = Field::prime(p).ok()?;
        let ring = self.ring.with_field(field);
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let r = c.as_rational()?;
            terms.push((m.clone(), field.from_rational(r).ok()?));
        }
        Some(Polynomial::from_terms(&ring, terms))
    }

    /// Canonical rendering with terms in descending `ord` order.
    pub fn display<'a>(&'a self, ord: &'a MonomialOrder) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ord }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    ord: &'a MonomialOrder,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.ord);
        if terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.poly.ring.vars();
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = if neg { -*c } else { (*c).clone() };
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(names))?;
            } else {
                write!(f, "{abs}*{}", m.display(names))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&MonomialOrder::DegRevLex))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`poly_arith`] for a checked variant.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = Polynomial::zero(&self.ring);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
