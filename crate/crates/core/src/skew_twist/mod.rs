//! Quantum tori `x_i x_j = q_ij x_j x_i`, bicharacter twists
//! `x * y = χ(deg x, deg y) x y`, the commutation defect of a twisted pair,
//! and scalar-level braid relation checks.

mod cyclotomic;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Phase};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

fn check_square(entries: &[Vec<Phase>], what: &str) -> Result<usize> {
    let n = entries.len();
    if entries.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidMatrix(format!("{what} must be square")));
    }
    Ok(n)
}

/// A multiplicatively antisymmetric phase matrix: `q_ii = 1`, `q_ji = q_ij^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewMatrix {
    entries: Vec<Vec<Phase>>,
}

impl SkewMatrix {
    pub fn new(entries: Vec<Vec<Phase>>) -> Result<SkewMatrix> {
        let n = check_square(&entries, "q")?;
        for i in 0..n {
            if !entries[i][i].is_one() {
                return Err(Error::InvalidMatrix(format!("q[{i}][{i}] must be 1")));
            }
            for j in 0..i {
                if entries[j][i] != entries[i][j].inv() {
                    return Err(Error::InvalidMatrix(format!(
                        "q[{j}][{i}] must be the inverse of q[{i}][{j}]"
                    )));
                }
            }
        }
        Ok(SkewMatrix { entries })
    }

    /// The commutative case, all entries one.
    pub fn trivial(n: usize) -> SkewMatrix {
        SkewMatrix {
            entries: vec![vec![Phase::ONE; n]; n],
        }
    }

    /// Builds the matrix from its strict upper triangle `(i, j, q_ij)`, `i < j`.
    pub fn from_upper(n: usize, upper: &[(usize, usize, Phase)]) -> Result<SkewMatrix> {
        let mut m = vec![vec![Phase::ONE; n]; n];
        for &(i, j, p) in upper {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidMatrix(format!("bad entry ({i}, {j})")));
            }
            m[i][j] = p;
            m[j][i] = p.inv();
        }
        SkewMatrix::new(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Phase {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Phase>] {
        &self.entries
    }

    /// Every entry squares to one.
    pub fn is_involutive(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.pow(2).is_one())
    }

    /// Phase picked up when `x^a x^b` is brought to normal order:
    /// `Π_{i > j} q_ij^{a_i b_j}`.
    pub fn reorder_phase(&self, a: &[i32], b: &[i32]) -> Phase {
        let mut acc = Phase::ONE;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate().take(i) {
                if bj != 0 {
                    acc = acc * self.entries[i][j].pow(ai as i64 * bj as i64);
                }
            }
        }
        acc
    }
}

/// A bicharacter on `Z^n` given on basis pairs, required to be alternating.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    values: Vec<Vec<Phase>>,
}

impl Bicharacter {
    pub fn new(values: Vec<Vec<Phase>>) -> Result<Bicharacter> {
        let n = check_square(&values, "chi")?;
        for i in 0..n {
            if !values[i][i].is_one() {
                return Err(Error::InvalidMatrix(format!(
                    "chi is not alternating: chi(e{i}, e{i}) != 1"
                )));
            }
            for j in 0..i {
                if !(values[i][j] * values[j][i]).is_one() {
                    return Err(Error::InvalidMatrix(format!(
                        "chi is not alternating at ({j}, {i})"
                    )));
                }
            }
        }
        Ok(Bicharacter { values })
    }

    pub fn trivial(n: usize) -> Bicharacter {
        Bicharacter {
            values: vec![vec![Phase::ONE; n]; n],
        }
    }

    /// An alternating square root of an involutive `q`: `χ(e_i, e_j)^2 = q_ij`,
    /// taking `χ = i` above the diagonal where `q = -1`.
    pub fn square_root_of(q: &SkewMatrix) -> Result<Bicharacter> {
        let n = q.size();
        let mut v = vec![vec![Phase::ONE; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                match q.get(i, j).as_sign() {
                    Some(1) => {}
                    Some(_) => {
                        v[i][j] = Phase::new(1, 4);
                        v[j][i] = Phase::new(3, 4);
                    }
                    None => {
                        return Err(Error::InvalidMatrix(format!(
                            "q[{i}][{j}] = {} is not +1 or -1",
                            q.get(i, j)
                        )))
                    }
                }
            }
        }
        Bicharacter::new(v)
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Phase {
        self.values[i][j]
    }

    pub fn values(&self) -> &[Vec<Phase>] {
        &self.values
    }

    /// `χ(α, β) = Π χ(e_i, e_j)^{α_i β_j}`.
    pub fn eval(&self, alpha: &[i64], beta: &[i64]) -> Phase {
        let mut acc = Phase::ONE;
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta.iter().enumerate() {
                if b != 0 {
                    acc = acc * self.values[i][j].pow(a * b);
                }
            }
        }
        acc
    }
}

/// Assignment of a grading vector in `Z^r` to each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    rows: Vec<Vec<i64>>,
}

impl Grading {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Grading> {
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::Dimension("grading vectors differ in length".into()));
            }
        }
        Ok(Grading { rows })
    }

    /// Generator `i` has degree `e_i`; the degree of a term is its exponent vector.
    pub fn standard(n: usize) -> Grading {
        Grading {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Degree of the monomial `x^e`.
    pub fn degree(&self, e: &[i32]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for (row, &k) in self.rows.iter().zip(e) {
            for (o, &g) in out.iter_mut().zip(row) {
                *o += g * k as i64;
            }
        }
        out
    }
}

/// An element of the quantum torus: normal-ordered Laurent monomials with
/// cyclotomic coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewElement {
    q: Arc<SkewMatrix>,
    field: Field,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl SkewElement {
    pub fn zero(q: &SkewMatrix, field: Field) -> SkewElement {
        SkewElement {
            q: Arc::new(q.clone()),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(q: &SkewMatrix, field: Field) -> SkewElement {
        SkewElement::monomial(q, field, Monomial::one(q.size()), Cyclotomic::one(field))
    }

    pub fn monomial(q: &SkewMatrix, field: Field, m: Monomial, c: Cyclotomic) -> SkewElement {
        let mut e = SkewElement::zero(q, field);
        e.add_term(m, &c);
        e
    }

    /// The generator `x_i`.
    pub fn generator(q: &SkewMatrix, field: Field, i: usize) -> SkewElement {
        SkewElement::monomial(q, field, Monomial::var(q.size(), i), Cyclotomic::one(field))
    }

    fn same_shape(&self) -> SkewElement {
        SkewElement {
            q: self.q.clone(),
            field: self.field,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Cyclotomic) {
        let sum = match self.terms.get(&m) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn q(&self) -> &SkewMatrix {
        &self.q
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Cyclotomic> {
        self.terms.get(m)
    }

    pub fn add(&self, other: &SkewElement) -> Result<SkewElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclotomic) -> SkewElement {
        let mut out = self.same_shape();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.mul(c));
        }
        out
    }

    fn check_compatible(&self, other: &SkewElement) -> Result<()> {
        if self.q != other.q || self.field != other.field {
            return Err(Error::Dimension("skew elements live in different algebras".into()));
        }
        Ok(())
    }

    /// Product in the quantum torus.
    pub fn mul(&self, other: &SkewElement) -> Result<SkewElement> {
        self.check_compatible(other)?;
        let mut out = self.same_shape();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let phase = self.q.reorder_phase(a.exponents(), b.exponents());
                out.add_term(a.mul(b), &x.mul(y).mul_phase(phase));
            }
        }
        Ok(out)
    }

    /// Classical polynomial with the same terms, when every coefficient is a
    /// base-field value and no exponent is negative.
    pub fn to_polynomial(&self, ring: &Ring) -> Option<Polynomial> {
        if ring.nvars() != self.q.size() || ring.field() != self.field {
            return None;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if !m.is_laurent_free() {
                return None;
            }
            terms.push((m.clone(), c.as_scalar()?));
        }
        Some(Polynomial::from_terms(ring, terms))
    }

    pub fn from_polynomial(q: &SkewMatrix, p: &Polynomial) -> Result<SkewElement> {
        if p.ring().nvars() != q.size() {
            return Err(Error::Dimension("polynomial ring and q differ in size".into()));
        }
        let mut out = SkewElement::zero(q, p.ring().field());
        for (m, c) in p.terms() {
            out.add_term(m.clone(), &Cyclotomic::scalar(c.clone()));
        }
        Ok(out)
    }

    /// Renders terms in descending degrevlex order of their exponent vectors.
    pub fn display<'a>(&'a self, names: &'a [String]) -> SkewDisplay<'a> {
        SkewDisplay { elem: self, names }
    }
}

pub struct SkewDisplay<'a> {
    elem: &'a SkewElement,
    names: &'a [String],
}

impl fmt::Display for SkewDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = MonomialOrder::DegRevLex;
        let mut terms: Vec<_> = self.elem.terms.iter().collect();
        terms.sort_by(|a, b| ord.key(b.0.exponents()).cmp(&ord.key(a.0.exponents())));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.terms().count() == 1 && c.terms().all(|(p, k)| p.is_one() && k.is_one()) {
                write!(f, "{}", m.display(self.names))?;
            } else {
                write!(f, "{c}*{}", m.display(self.names))?;
            }
        }
        Ok(())
    }
}

/// Letters `(generator index, exponent)` of a word in the generators.
pub type Word = [(usize, i32)];

/// Normal-orders `word` by adjacent transpositions, multiplying by
/// `q_ji^{m k}` whenever `x_j^m` with `j > i` moves right past `x_i^k`.
pub fn skew_normal_form(word: &Word, q: &SkewMatrix, field: Field) -> Result<SkewElement> {
    normal_form_with_schedule(word, q, field, |inversions| inversions[0])
}

/// Normal form where `pick` chooses which adjacent inversion to swap next
/// (given the positions of all current inversions).
pub fn normal_form_with_schedule<F>(
    word: &Word,
    q: &SkewMatrix,
    field: Field,
    mut pick: F,
) -> Result<SkewElement>
where
    F: FnMut(&[usize]) -> usize,
{
    let n = q.size();
    if let Some(&(i, _)) = word.iter().find(|(i, _)| *i >= n) {
        return Err(Error::Dimension(format!("generator index {i} out of range for size {n}")));
    }
    let mut letters: Vec<(usize, i32)> = word.iter().copied().filter(|&(_, e)| e != 0).collect();
    let mut phase = Phase::ONE;
    loop {
        let inversions: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&p| letters[p].0 > letters[p + 1].0)
            .collect();
        if inversions.is_empty() {
            break;
        }
        let p = pick(&inversions);
        let (j, m) = letters[p];
        let (i, k) = letters[p + 1];
        phase = phase * q.get(j, i).pow(m as i64 * k as i64);
        letters.swap(p, p + 1);
    }
    let mut exps = vec![0i32; n];
    for (i, e) in letters {
        exps[i] += e;
    }
    Ok(SkewElement::monomial(
        q,
        field,
        Monomial::new(exps),
        Cyclotomic::phase(field, phase),
    ))
}

/// Twisted product with each term graded by its exponent vector.
pub fn twist_product(a: &SkewElement, b: &SkewElement, chi: &Bicharacter) -> Result<SkewElement> {
    twist_product_graded(a, b, chi, &Grading::standard(a.q.size()))
}

/// Twisted product `x * y = χ(deg x, deg y) x y` under an arbitrary grading.
pub fn twist_product_graded(
    a: &SkewElement,
    b: &SkewElement,
    chi: &Bicharacter,
    grading: &Grading,
) -> Result<SkewElement> {
    a.check_compatible(b)?;
    if grading.ngens() != a.q.size() || grading.rank() != chi.rank() {
        return Err(Error::Dimension(format!(
            "grading is {}x{}, algebra has {} generators and chi rank {}",
            grading.ngens(),
            grading.rank(),
            a.q.size(),
            chi.rank()
        )));
    }
    let mut out = a.same_shape();
    for (ma, x) in &a.terms {
        let da = grading.degree(ma.exponents());
        for (mb, y) in &b.terms {
            let db = grading.degree(mb.exponents());
            let phase = chi.eval(&da, &db) * a.q.reorder_phase(ma.exponents(), mb.exponents());
            out.add_term(ma.mul(mb), &x.mul(y).mul_phase(phase));
        }
    }
    Ok(out)
}

/// Scalar of the normal-ordered twisted product of the unit-coefficient
/// monomials `x^a * x^b`.
fn monomial_twist(q: &SkewMatrix, chi: &Bicharacter, g: &Grading, a: &[i32], b: &[i32]) -> Phase {
    chi.eval(&g.degree(a), &g.degree(b)) * q.reorder_phase(a, b)
}

/// Ratio of the normal-form scalars of `x_i * x_j` and `x_j * x_i`, equal to
/// `χ(e_i, e_j) χ(e_j, e_i)^{-1} q_ij`. One exactly when the pair commutes.
pub fn faithfulness_defect(i: usize, j: usize, q: &SkewMatrix, chi: &Bicharacter) -> Result<Phase> {
    defect_graded(i, j, q, chi, &Grading::standard(q.size()))
}

pub fn defect_graded(
    i: usize,
    j: usize,
    q: &SkewMatrix,
    chi: &Bicharacter,
    grading: &Grading,
) -> Result<Phase> {
    let n = q.size();
    if i == j {
        return Err(Error::InvalidPair(i, j));
    }
    if i >= n || j >= n {
        return Err(Error::Dimension(format!("pair ({i}, {j}) out of range for size {n}")));
    }
    if grading.ngens() != n || grading.rank() != chi.rank() {
        return Err(Error::Dimension("grading does not match q and chi".into()));
    }
    let ei = Monomial::var(n, i);
    let ej = Monomial::var(n, j);
    let ij = monomial_twist(q, chi, grading, ei.exponents(), ej.exponents());
    let ji = monomial_twist(q, chi, grading, ej.exponents(), ei.exponents());
    Ok(ij * ji.inv())
}

/// Which defining relation of the braid group a check refers to (0-based generators).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidRelation {
    /// `x_i * x_{i+1} * x_i = x_{i+1} * x_i * x_{i+1}`
    Braid(usize),
    /// `x_i * x_j = x_j * x_i` for `|i - j| > 1`
    FarCommutation(usize, usize),
}

impl fmt::Display for BraidRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BraidRelation::Braid(i) => write!(f, "braid x{},x{}", i + 1, i + 2),
            BraidRelation::FarCommutation(i, j) => write!(f, "far-commutation x{},x{}", i + 1, j + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: BraidRelation,
    /// Scalar of the left-hand side's normal form.
    pub lhs: Phase,
    /// Scalar of the right-hand side's normal form.
    pub rhs: Phase,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidReport {
    pub checks: Vec<RelationCheck>,
}

impl BraidReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(RelationCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }
}

impl fmt::Display for BraidReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_pass() {
            return write!(f, "PASS (all relations)");
        }
        let lines: Vec<String> = self
            .failures()
            .map(|c| format!("FAIL {}: {} != {}", c.relation, c.lhs, c.rhs))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// Checks the braid relations at the level of normal-form scalars; the
/// underlying monomials `x_i^2 x_{i+1}` and `x_i x_{i+1}^2` are not compared.
pub fn braid_check(
    n: usize,
    gradings: &Grading,
    q: &SkewMatrix,
    chi: &Bicharacter,
) -> Result<BraidReport> {
    if n < 2 {
        return Err(Error::Dimension("braid check needs at least two generators".into()));
    }
    if gradings.ngens() != n || q.size() != n {
        return Err(Error::Dimension(format!(
            "{} gradings and q of size {} for {n} generators",
            gradings.ngens(),
            q.size()
        )));
    }
    if gradings.rank() != chi.rank() {
        return Err(Error::Dimension("grading rank differs from chi rank".into()));
    }
    let scalar3 = |a: usize, b: usize, c: usize| {
        let (ea, eb, ec) = (Monomial::var(n, a), Monomial::var(n, b), Monomial::var(n, c));
        let first = monomial_twist(q, chi, gradings, ea.exponents(), eb.exponents());
        let ab = ea.mul(&eb);
        first * monomial_twist(q, chi, gradings, ab.exponents(), ec.exponents())
    };
    let mut checks = Vec::new();
    for i in 0..n - 1 {
        checks.push(RelationCheck {
            relation: BraidRelation::Braid(i),
            lhs: scalar3(i, i + 1, i),
            rhs: scalar3(i + 1, i, i + 1),
        });
    }
    for i in 0..n {
        for j in i + 2..n {
            let ei = Monomial::var(n, i);
            let ej = Monomial::var(n, j);
            checks.push(RelationCheck {
                relation: BraidRelation::FarCommutation(i, j),
                lhs: monomial_twist(q, chi, gradings, ei.exponents(), ej.exponents()),
                rhs: monomial_twist(q, chi, gradings, ej.exponents(), ei.exponents()),
            });
        }
    }
    Ok(BraidReport { checks })
}

/// A symmetric `±1` matrix with unit diagonal whose off-diagonal entries are
/// those of the negated Sylvester matrix, `q_ij = -(-1)^{popcount(i & j)}`.
pub fn involutive_q(n: usize) -> Result<SkewMatrix> {
    if n == 0 {
        return Err(Error::Dimension("size must be at least 1".into()));
    }
    let mut m = vec![vec![Phase::ONE; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j && (i & j).count_ones() % 2 == 0 {
                *cell = Phase::minus_one();
            }
        }
    }
    SkewMatrix::new(m)
}

/// Scalar coefficient of a single-term element, as a phase.
pub fn unit_scalar(e: &SkewElement) -> Option<(Monomial, Phase)> {
    if e.len() != 1 {
        return None;
    }
    let (m, c) = e.terms().next()?;
    Some((m.clone(), c.as_unit_phase()?))
}

/// Convenience: the plain field element `c` viewed as a coefficient.
pub fn scalar(c: FieldElement) -> Cyclotomic {
    Cyclotomic::scalar(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn q12(p: Phase) -> SkewMatrix {
        SkewMatrix::from_upper(2, &[(0, 1, p)]).unwrap()
    }

    #[test]
    fn matrix_validation() {
        let bad = vec![vec![Phase::ONE, Phase::new(1, 4)], vec![Phase::new(1, 4), Phase::ONE]];
        assert!(SkewMatrix::new(bad.clone()).is_err());
        assert!(Bicharacter::new(bad).is_err());
        let diag = vec![vec![Phase::new(1, 2)]];
        assert!(SkewMatrix::new(diag.clone()).is_err());
        assert!(Bicharacter::new(diag).is_err());
    }

    #[test]
    fn single_swap_picks_up_q21() {
        let q = q12(Phase::new(1, 4));
        let nf = skew_normal_form(&[(1, 1), (0, 1)], &q, Q).unwrap();
        assert_eq!(unit_scalar(&nf), Some((Monomial::new(vec![1, 1]), Phase::new(3, 4))));
    }

    #[test]
    fn inverse_pair_cancels() {
        let q = q12(Phase::new(1, 3));
        let nf = skew_normal_form(&[(0, 1), (0, -1)], &q, Q).unwrap();
        assert_eq!(nf, SkewElement::one(&q, Q));
        // x2 x1^-1: moving x1^-1 left past x2 gives q21^{-1}
        let nf = skew_normal_form(&[(1, 1), (0, -1)], &q, Q).unwrap();
        assert_eq!(unit_scalar(&nf), Some((Monomial::new(vec![-1, 1]), Phase::new(1, 3))));
    }

    #[test]
    fn trivial_q_is_commutative_merge() {
        let q = SkewMatrix::trivial(3);
        let nf = skew_normal_form(&[(2, 1), (0, 2), (1, 1), (0, 1)], &q, Q).unwrap();
        assert_eq!(unit_scalar(&nf), Some((Monomial::new(vec![3, 1, 1]), Phase::ONE)));
    }

    #[test]
    fn twist_examples() {
        let q = SkewMatrix::trivial(2);
        let x1 = SkewElement::generator(&q, Q, 0);
        let x2 = SkewElement::generator(&q, Q, 1);
        let chi = Bicharacter::new(vec![
            vec![Phase::ONE, Phase::new(1, 2)],
            vec![Phase::new(1, 2), Phase::ONE],
        ])
        .unwrap();
        let prod = twist_product(&x1, &x2, &chi).unwrap();
        let expected = x1.mul(&x2).unwrap().scale(&Cyclotomic::scalar(Q.from_i64(-1)));
        assert_eq!(prod, expected);

        let qi = q12(Phase::new(1, 4));
        let a = SkewElement::generator(&qi, Q, 1);
        let b = SkewElement::generator(&qi, Q, 0);
        assert_eq!(
            twist_product(&a, &b, &Bicharacter::trivial(2)).unwrap(),
            a.mul(&b).unwrap()
        );
    }

    #[test]
    fn defect_examples() {
        let trivial = Bicharacter::trivial(2);
        assert_eq!(faithfulness_defect(0, 1, &SkewMatrix::trivial(2), &trivial).unwrap(), Phase::ONE);
        let q = q12(Phase::minus_one());
        assert_eq!(faithfulness_defect(0, 1, &q, &trivial).unwrap(), Phase::minus_one());
        let chi = Bicharacter::new(vec![
            vec![Phase::ONE, Phase::new(1, 4)],
            vec![Phase::new(3, 4), Phase::ONE],
        ])
        .unwrap();
        assert_eq!(faithfulness_defect(0, 1, &q, &chi).unwrap(), Phase::ONE);
        assert_eq!(faithfulness_defect(1, 1, &q, &chi), Err(Error::InvalidPair(1, 1)));
    }

    #[test]
    fn defect_matches_closed_form() {
        let q = SkewMatrix::from_upper(3, &[(0, 1, Phase::new(1, 3)), (1, 2, Phase::new(1, 5))]).unwrap();
        let chi = Bicharacter::new(vec![
            vec![Phase::ONE, Phase::new(1, 6), Phase::new(1, 7)],
            vec![Phase::new(5, 6), Phase::ONE, Phase::ONE],
            vec![Phase::new(6, 7), Phase::ONE, Phase::ONE],
        ])
        .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let expected = chi.get(i, j) * chi.get(j, i).inv() * q.get(i, j);
                assert_eq!(faithfulness_defect(i, j, &q, &chi).unwrap(), expected);
            }
        }
    }

    #[test]
    fn braid_examples() {
        let n = 4;
        let g = Grading::standard(n);
        let report = braid_check(n, &g, &SkewMatrix::trivial(n), &Bicharacter::trivial(n)).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.to_string(), "PASS (all relations)");

        let q = involutive_q(n).unwrap();
        let chi = Bicharacter::square_root_of(&q).unwrap();
        assert!(braid_check(n, &g, &q, &chi).unwrap().all_pass());

        let q = SkewMatrix::from_upper(3, &[(0, 2, Phase::minus_one())]).unwrap();
        let report = braid_check(3, &Grading::standard(3), &q, &Bicharacter::trivial(3)).unwrap();
        let failed: Vec<_> = report.failures().map(|c| c.relation).collect();
        assert_eq!(failed, vec![BraidRelation::FarCommutation(0, 2)]);
        assert!(report.to_string().contains("far-commutation x1,x3"));

        assert!(braid_check(3, &Grading::standard(2), &q, &Bicharacter::trivial(2)).is_err());
    }

    #[test]
    fn involutive_examples() {
        assert_eq!(involutive_q(1).unwrap(), SkewMatrix::trivial(1));
        let q2 = involutive_q(2).unwrap();
        assert_eq!(q2.get(0, 1), Phase::minus_one());
        assert_eq!(q2.get(1, 0), Phase::minus_one());
        for n in 1..=8 {
            let q = involutive_q(n).unwrap();
            assert!(q.is_involutive());
        }
    }

    fn random_q(rng: &mut ChaCha8Rng, n: usize) -> SkewMatrix {
        let mut upper = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                upper.push((i, j, Phase::new(rng.random_range(0..12), 12)));
            }
        }
        SkewMatrix::from_upper(n, &upper).unwrap()
    }

    #[test]
    fn normal_form_is_schedule_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = 4;
            let q = random_q(&mut rng, n);
            let len = rng.random_range(0..=6);
            let word: Vec<(usize, i32)> = (0..len)
                .map(|_| (rng.random_range(0..n), rng.random_range(-2..=2)))
                .collect();
            let canonical = skew_normal_form(&word, &q, Q).unwrap();
            let mut inner = ChaCha8Rng::seed_from_u64(rng.random());
            let shuffled = normal_form_with_schedule(&word, &q, Q, |inv| {
                inv[inner.random_range(0..inv.len())]
            })
            .unwrap();
            assert_eq!(canonical, shuffled, "{word:?}");
        }
    }

    #[test]
    fn trivial_phases_collapse_to_polynomials() {
        let ring = Ring::with_nvars(Q, 2);
        let q = SkewMatrix::trivial(2);
        let f = Polynomial::from_int_terms(&ring, &[(1, &[1, 0]), (2, &[0, 1])]);
        let g = Polynomial::from_int_terms(&ring, &[(3, &[1, 1]), (-1, &[0, 0])]);
        let sf = SkewElement::from_polynomial(&q, &f).unwrap();
        let sg = SkewElement::from_polynomial(&q, &g).unwrap();
        assert_eq!(sf.mul(&sg).unwrap().to_polynomial(&ring).unwrap(), &f * &g);
        assert_eq!(sf.add(&sg).unwrap().to_polynomial(&ring).unwrap(), &f + &g);
    }
}
