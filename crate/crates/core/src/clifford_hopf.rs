//! Clifford and Grassmann algebras over a symmetric bilinear form, and the
//! Clifford-Hopf algebra with generators `Γ_1..Γ_{D+1}` and central `E_1..E_D`.
//!
//! Generator indices are 0-based in the API; printed names are 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// The form `η` with `{e_i, e_j} = 2 η_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    field: Field,
    eta: Vec<Vec<FieldElement>>,
}

impl Signature {
    pub fn new(field: Field, eta: Vec<Vec<FieldElement>>) -> Result<Signature> {
        let d = eta.len();
        if eta.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidMatrix("eta must be square".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if eta[i][j].field() != field {
                    return Err(Error::InvalidMatrix("eta entry over the wrong field".into()));
                }
                if j < i && eta[i][j] != eta[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "eta is not symmetric at ({}, {})",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Signature { field, eta })
    }

    /// `η = 0`: the exterior algebra.
    pub fn zero(field: Field, d: usize) -> Signature {
        Signature {
            field,
            eta: vec![vec![field.zero(); d]; d],
        }
    }

    pub fn diagonal(field: Field, diag: &[FieldElement]) -> Result<Signature> {
        let d = diag.len();
        let mut eta = vec![vec![field.zero(); d]; d];
        for (i, v) in diag.iter().enumerate() {
            eta[i][i] = v.clone();
        }
        Signature::new(field, eta)
    }

    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn eta(&self, i: usize, j: usize) -> &FieldElement {
        &self.eta[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.eta.iter().flatten().all(FieldElement::is_zero)
    }
}

/// Strictly increasing generator indices.
pub type Blade = Vec<usize>;

/// A linear combination of reduced blades.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordElement {
    sig: Arc<Signature>,
    terms: BTreeMap<Blade, FieldElement>,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, FieldElement>, k: K, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// `blade * e_k` as a combination of reduced blades.
fn right_mul_gen(sig: &Signature, blade: &[usize], k: usize, c: FieldElement, out: &mut BTreeMap<Blade, FieldElement>) {
    if c.is_zero() {
        return;
    }
    match blade.split_last() {
        Some((&last, _)) if last < k => {
            let mut b = blade.to_vec();
            b.push(k);
            accumulate(out, b, c);
        }
        None => accumulate(out, vec![k], c),
        Some((&last, rest)) if last == k => {
            accumulate(out, rest.to_vec(), &c * sig.eta(k, k));
        }
        Some((&last, rest)) => {
            // rest * last * e_k = 2 η rest - (rest * e_k) * last
            let two_eta = &sig.field.from_i64(2) * sig.eta(k, last);
            accumulate(out, rest.to_vec(), &c * &two_eta);
            let mut inner = BTreeMap::new();
            right_mul_gen(sig, rest, k, -c, &mut inner);
            for (b, v) in inner {
                let mut b = b;
                b.push(last);
                accumulate(out, b, v);
            }
        }
    }
}

fn product_with(sig: &Signature, a: &BTreeMap<Blade, FieldElement>, b: &BTreeMap<Blade, FieldElement>) -> BTreeMap<Blade, FieldElement> {
    let mut out = BTreeMap::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut cur: BTreeMap<Blade, FieldElement> = BTreeMap::new();
            cur.insert(wa.clone(), ca * cb);
            for &k in wb {
                let mut next = BTreeMap::new();
                for (w, c) in cur {
                    right_mul_gen(sig, &w, k, c, &mut next);
                }
                cur = next;
            }
            for (w, c) in cur {
                accumulate(&mut out, w, c);
            }
        }
    }
    out
}

impl CliffordElement {
    pub fn zero(sig: &Signature) -> CliffordElement {
        CliffordElement {
            sig: Arc::new(sig.clone()),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: &Signature, c: FieldElement) -> CliffordElement {
        let mut e = CliffordElement::zero(sig);
        accumulate(&mut e.terms, Vec::new(), c);
        e
    }

    pub fn one(sig: &Signature) -> CliffordElement {
        CliffordElement::scalar(sig, sig.field.one())
    }

    pub fn generator(sig: &Signature, i: usize) -> Result<CliffordElement> {
        CliffordElement::word(sig, &[i], sig.field.one())
    }

    /// `c * e_{w_1} * ... * e_{w_k}` for an arbitrary word, reduced.
    pub fn word(sig: &Signature, word: &[usize], c: FieldElement) -> Result<CliffordElement> {
        if let Some(&i) = word.iter().find(|&&i| i >= sig.dim()) {
            return Err(Error::Dimension(format!("generator {} out of range", i + 1)));
        }
        let mut cur = CliffordElement::scalar(sig, c);
        for &k in word {
            let mut next = BTreeMap::new();
            for (w, v) in cur.terms {
                right_mul_gen(sig, &w, k, v, &mut next);
            }
            cur.terms = next;
        }
        Ok(cur)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, blade: &[usize]) -> Option<&FieldElement> {
        self.terms.get(blade)
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

    /// The single grade of a homogeneous nonzero element.
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(Vec::len);
        let g = grades.next()?;
        grades.all(|h| h == g).then_some(g)
    }

    pub fn grade_part(&self, k: usize) -> CliffordElement {
        CliffordElement {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.len() == k)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &CliffordElement) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::Dimension("signature mismatch".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            accumulate(&mut out.terms, b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.add(&other.scale(&-self.sig.field.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> CliffordElement {
        let mut out = CliffordElement::zero(&self.sig);
        for (b, v) in &self.terms {
            accumulate(&mut out.terms, b.clone(), v * c);
        }
        out
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        write_terms(
            f,
            terms.into_iter().map(|(b, c)| {
                let name = b.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("*");
                (name, c)
            }),
        )
    }
}

/// Writes `c1*m1 + c2*m2 - ...`, with empty names meaning the unit.
fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a FieldElement)>,
{
    let mut first = true;
    for (name, c) in terms {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match (name.is_empty(), abs.is_one()) {
            (true, _) => write!(f, "{abs}")?,
            (false, true) => write!(f, "{name}")?,
            (false, false) => write!(f, "{abs}*{name}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub fn clifford_product(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    a.check(b)?;
    Ok(CliffordElement {
        sig: a.sig.clone(),
        terms: product_with(&a.sig, &a.terms, &b.terms),
    })
}

/// Exterior product, ignoring the form carried by the operands. The result
/// carries the zero form of the same dimension.
pub fn grassmann_product(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    if a.sig.dim() != b.sig.dim() || a.sig.field != b.sig.field {
        return Err(Error::Dimension("operands of different dimension".into()));
    }
    let sig = Signature::zero(a.sig.field, a.sig.dim());
    let terms = product_with(&sig, &a.terms, &b.terms);
    Ok(CliffordElement {
        sig: Arc::new(sig),
        terms,
    })
}

/// Number of distinct reduced blades reachable from products of generators.
pub fn basis_dimension(d: usize, sig: Option<&Signature>) -> Result<usize> {
    let owned;
    let sig = match sig {
        Some(s) if s.dim() != d => {
            return Err(Error::Dimension(format!("form has size {}, expected {d}", s.dim())))
        }
        Some(s) => s,
        None => {
            owned = Signature::zero(Field::Rational, d);
            &owned
        }
    };
    let mut seen: BTreeSet<Blade> = BTreeSet::new();
    seen.insert(Vec::new());
    let mut frontier = vec![Vec::new()];
    while let Some(b) = frontier.pop() {
        for k in 0..d {
            let mut out = BTreeMap::new();
            right_mul_gen(sig, &b, k, sig.field.one(), &mut out);
            for w in out.into_keys() {
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
    }
    Ok(seen.len())
}

/// Left contraction by the dual basis vector of `e_i`: the derivation with
/// `∂_i e_j = δ_ij` and `∂_i (a ∧ b) = ∂_i a ∧ b + (-1)^{|a|} a ∧ ∂_i b`.
pub fn contract(i: usize, x: &CliffordElement) -> Result<CliffordElement> {
    if i >= x.sig.dim() {
        return Err(Error::Dimension(format!("generator {} out of range", i + 1)));
    }
    let mut out = CliffordElement::zero(&x.sig);
    for (b, c) in &x.terms {
        if let Some(p) = b.iter().position(|&j| j == i) {
            let mut rest = b.clone();
            rest.remove(p);
            let v = if p % 2 == 1 { -c } else { c.clone() };
            accumulate(&mut out.terms, rest, v);
        }
    }
    Ok(out)
}

/// Basis label of the Clifford-Hopf algebra: `E^e Γ_{w}` with `w` a bitmask
/// over `Γ_1..Γ_{D+1}`, bit `D` standing for `Γ_{D+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClhLabel {
    pub e: Vec<u32>,
    pub gammas: u32,
}

impl ClhLabel {
    pub fn one(d: usize) -> ClhLabel {
        ClhLabel {
            e: vec![0; d],
            gammas: 0,
        }
    }

    /// Product of two labels and its sign.
    fn mul(&self, other: &ClhLabel) -> (ClhLabel, bool) {
        let d = self.e.len();
        let mut negate = false;
        for j in 0..=d {
            if other.gammas >> j & 1 == 1 {
                let above = (self.gammas >> (j + 1)).count_ones();
                negate ^= above % 2 == 1;
            }
        }
        let common = self.gammas & other.gammas;
        let e = self
            .e
            .iter()
            .zip(&other.e)
            .enumerate()
            .map(|(i, (a, b))| a + b + (common >> i & 1))
            .collect();
        (
            ClhLabel {
                e,
                gammas: self.gammas ^ other.gammas,
            },
            negate,
        )
    }

    fn name(&self) -> String {
        let d = self.e.len();
        let mut parts = Vec::new();
        for (i, &k) in self.e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("E{}", i + 1)),
                _ => parts.push(format!("E{}^{k}", i + 1)),
            }
        }
        for j in 0..=d {
            if self.gammas >> j & 1 == 1 {
                parts.push(format!("G{}", j + 1));
            }
        }
        parts.join("*")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClhElement {
    d: usize,
    field: Field,
    terms: BTreeMap<ClhLabel, FieldElement>,
}

impl ClhElement {
    pub fn zero(d: usize, field: Field) -> ClhElement {
        ClhElement {
            d,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_label(d: usize, field: Field, label: ClhLabel, c: FieldElement) -> ClhElement {
        let mut x = ClhElement::zero(d, field);
        accumulate(&mut x.terms, label, c);
        x
    }

    pub fn one(d: usize, field: Field) -> ClhElement {
        ClhElement::from_label(d, field, ClhLabel::one(d), field.one())
    }

    /// `Γ_{i+1}`; `i = d` gives `Γ_{D+1}`.
    pub fn gamma(d: usize, field: Field, i: usize) -> Result<ClhElement> {
        if i > d {
            return Err(Error::Dimension(format!("G{} out of range for D = {d}", i + 1)));
        }
        let mut l = ClhLabel::one(d);
        l.gammas = 1 << i;
        Ok(ClhElement::from_label(d, field, l, field.one()))
    }

    /// `E_{i+1}`.
    pub fn e(d: usize, field: Field, i: usize) -> Result<ClhElement> {
        if i >= d {
            return Err(Error::Dimension(format!("E{} out of range for D = {d}", i + 1)));
        }
        let mut l = ClhLabel::one(d);
        l.e[i] = 1;
        Ok(ClhElement::from_label(d, field, l, field.one()))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClhLabel, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &ClhElement) -> Result<()> {
        if self.d != other.d || self.field != other.field {
            return Err(Error::Dimension("Clifford-Hopf elements of different D".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ClhElement) -> Result<ClhElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            accumulate(&mut out.terms, l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> ClhElement {
        let mut out = ClhElement::zero(self.d, self.field);
        for (l, v) in &self.terms {
            accumulate(&mut out.terms, l.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &ClhElement) -> Result<ClhElement> {
        self.check(other)?;
        let mut out = ClhElement::zero(self.d, self.field);
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let (l, neg) = la.mul(lb);
                let c = ca * cb;
                accumulate(&mut out.terms, l, if neg { -c } else { c });
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ClhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(l, c)| (l.name(), c)))
    }
}

/// Element of the tensor square, multiplied componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct ClhTensor {
    d: usize,
    field: Field,
    terms: BTreeMap<(ClhLabel, ClhLabel), FieldElement>,
}

impl ClhTensor {
    pub fn zero(d: usize, field: Field) -> ClhTensor {
        ClhTensor {
            d,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize, field: Field) -> ClhTensor {
        ClhTensor::pure(&ClhElement::one(d, field), &ClhElement::one(d, field))
    }

    /// `a ⊗ b`.
    pub fn pure(a: &ClhElement, b: &ClhElement) -> ClhTensor {
        let mut out = ClhTensor::zero(a.d, a.field);
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                accumulate(&mut out.terms, (la.clone(), lb.clone()), ca * cb);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ClhLabel, ClhLabel), &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ClhTensor) -> ClhTensor {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            accumulate(&mut out.terms, l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> ClhTensor {
        let mut out = ClhTensor::zero(self.d, self.field);
        for (l, v) in &self.terms {
            accumulate(&mut out.terms, l.clone(), v * c);
        }
        out
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &ClhTensor) -> ClhTensor {
        let mut out = ClhTensor::zero(self.d, self.field);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let (ac, n1) = a.mul(c);
                let (bd, n2) = b.mul(d);
                let v = x * y;
                accumulate(&mut out.terms, (ac, bd), if n1 ^ n2 { -v } else { v });
            }
        }
        out
    }

    /// `m(f ⊗ g)`, applying `f` and `g` to the legs and multiplying.
    pub fn contract_with<F, G>(&self, f: F, g: G) -> Result<ClhElement>
    where
        F: Fn(&ClhLabel) -> ClhElement,
        G: Fn(&ClhLabel) -> ClhElement,
    {
        let mut out = ClhElement::zero(self.d, self.field);
        for ((a, b), c) in &self.terms {
            out = out.add(&f(a).mul(&g(b))?.scale(c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for ClhTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |l: &ClhLabel| {
            let n = l.name();
            if n.is_empty() {
                "1".to_string()
            } else {
                n
            }
        };
        write_terms(
            f,
            self.terms
                .iter()
                .map(|((a, b), c)| (format!("{}(x){}", name(a), name(b)), c)),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfMap {
    Coproduct,
    Antipode,
    Counit,
}

#[derive(Debug, Clone, PartialEq)]
pub enum HopfImage {
    Tensor(ClhTensor),
    Element(ClhElement),
    Scalar(FieldElement),
}

impl fmt::Display for HopfImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfImage::Tensor(t) => write!(f, "{t}"),
            HopfImage::Element(e) => write!(f, "{e}"),
            HopfImage::Scalar(c) => write!(f, "{c}"),
        }
    }
}

/// Generators of a label in product order: `E`s first, then `Γ`s ascending.
enum Gen {
    E(usize),
    G(usize),
}

fn label_factors(l: &ClhLabel) -> Vec<Gen> {
    let mut out = Vec::new();
    for (i, &k) in l.e.iter().enumerate() {
        out.extend((0..k).map(|_| Gen::E(i)));
    }
    for j in 0..=l.e.len() {
        if l.gammas >> j & 1 == 1 {
            out.push(Gen::G(j));
        }
    }
    out
}

fn coproduct_gen(d: usize, field: Field, g: &Gen) -> ClhTensor {
    let one = ClhElement::one(d, field);
    match *g {
        Gen::E(i) => {
            let e = ClhElement::e(d, field, i).expect("index in range");
            ClhTensor::pure(&e, &one).add(&ClhTensor::pure(&one, &e))
        }
        Gen::G(j) if j == d => {
            let top = ClhElement::gamma(d, field, d).expect("index in range");
            ClhTensor::pure(&top, &top)
        }
        Gen::G(j) => {
            let gj = ClhElement::gamma(d, field, j).expect("index in range");
            let top = ClhElement::gamma(d, field, d).expect("index in range");
            ClhTensor::pure(&gj, &one).add(&ClhTensor::pure(&top, &gj))
        }
    }
}

fn antipode_gen(d: usize, field: Field, g: &Gen) -> ClhElement {
    match *g {
        Gen::E(i) => ClhElement::e(d, field, i).expect("index in range").scale(&-field.one()),
        Gen::G(j) if j == d => ClhElement::gamma(d, field, d).expect("index in range"),
        Gen::G(j) => {
            let gj = ClhElement::gamma(d, field, j).expect("index in range");
            let top = ClhElement::gamma(d, field, d).expect("index in range");
            gj.mul(&top).expect("same algebra")
        }
    }
}

fn counit_gen(d: usize, field: Field, g: &Gen) -> FieldElement {
    match *g {
        Gen::G(j) if j == d => field.one(),
        _ => field.zero(),
    }
}

pub fn coproduct(x: &ClhElement) -> ClhTensor {
    let mut out = ClhTensor::zero(x.d, x.field);
    for (l, c) in &x.terms {
        let mut t = ClhTensor::one(x.d, x.field);
        for g in label_factors(l) {
            t = t.mul(&coproduct_gen(x.d, x.field, &g));
        }
        out = out.add(&t.scale(c));
    }
    out
}

/// Antipode, extended to products in reversed factor order.
pub fn antipode(x: &ClhElement) -> ClhElement {
    let mut out = ClhElement::zero(x.d, x.field);
    for (l, c) in &x.terms {
        let mut t = ClhElement::one(x.d, x.field);
        for g in label_factors(l).iter().rev() {
            t = t.mul(&antipode_gen(x.d, x.field, g)).expect("same algebra");
        }
        out = out.add(&t.scale(c)).expect("same algebra");
    }
    out
}

pub fn counit(x: &ClhElement) -> FieldElement {
    let mut out = x.field.zero();
    for (l, c) in &x.terms {
        let v = label_factors(l)
            .iter()
            .fold(x.field.one(), |acc, g| &acc * &counit_gen(x.d, x.field, g));
        out = &out + &(&v * c);
    }
    out
}

pub fn clh_apply(map: HopfMap, x: &ClhElement) -> HopfImage {
    match map {
        HopfMap::Coproduct => HopfImage::Tensor(coproduct(x)),
        HopfMap::Antipode => HopfImage::Element(antipode(x)),
        HopfMap::Counit => HopfImage::Scalar(counit(x)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClhCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClhReport {
    pub d: usize,
    pub checks: Vec<ClhCheck>,
}

impl ClhReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for ClhReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.checks.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {}", if c.holds { "PASS" } else { "FAIL" }, c.name)?;
        }
        Ok(())
    }
}

/// Checks that the coproduct, counit and antipode respect the defining
/// relations on every generator pair, plus the antipode and counit axioms.
pub fn clh_morphism_check(d: usize, field: Field) -> Result<ClhReport> {
    if d == 0 {
        return Err(Error::Dimension("D must be at least 1".into()));
    }
    if d > 30 {
        return Err(Error::UnsupportedDimension(format!("D = {d}")));
    }
    let gamma = |i| ClhElement::gamma(d, field, i).expect("index in range");
    let e = |i| ClhElement::e(d, field, i).expect("index in range");
    let one = ClhElement::one(d, field);
    let zero = ClhElement::zero(d, field);
    let mut checks = Vec::new();
    let mut push = |name: String, holds: bool| checks.push(ClhCheck { name, holds });

    // relations of the algebra itself, as a sanity baseline
    for i in 0..d {
        push(format!("G{0}^2 = E{0}", i + 1), gamma(i).mul(&gamma(i))? == e(i));
    }
    push(format!("G{0}^2 = 1", d + 1), gamma(d).mul(&gamma(d))? == one);

    let anti = |a: &ClhElement, b: &ClhElement| -> Result<ClhElement> { a.mul(b)?.add(&b.mul(a)?) };
    let comm_t = |a: &ClhTensor, b: &ClhTensor| a.mul(b) == b.mul(a);
    let anti_t = |a: &ClhTensor, b: &ClhTensor| a.mul(b).add(&b.mul(a)).is_zero();

    // coproduct
    for i in 0..d {
        let dg = coproduct(&gamma(i));
        push(format!("D(G{0})^2 = D(E{0})", i + 1), dg.mul(&dg) == coproduct(&e(i)));
    }
    for i in 0..=d {
        for j in i + 1..=d {
            push(
                format!("D(G{})D(G{}) + D(G{1})D(G{0}) = 0", i + 1, j + 1),
                anti_t(&coproduct(&gamma(i)), &coproduct(&gamma(j))),
            );
        }
    }
    let dtop = coproduct(&gamma(d));
    push(format!("D(G{0})^2 = 1(x)1", d + 1), dtop.mul(&dtop) == ClhTensor::one(d, field));
    for i in 0..d {
        let de = coproduct(&e(i));
        let central = (0..=d).all(|j| comm_t(&de, &coproduct(&gamma(j))))
            && (0..d).all(|j| comm_t(&de, &coproduct(&e(j))));
        push(format!("D(E{}) central", i + 1), central);
    }

    // counit
    for i in 0..d {
        let eg = counit(&gamma(i));
        push(format!("eps(G{0})^2 = eps(E{0})", i + 1), &eg * &eg == counit(&e(i)));
    }
    for i in 0..=d {
        for j in i + 1..=d {
            let (a, b) = (counit(&gamma(i)), counit(&gamma(j)));
            push(
                format!("eps(G{})eps(G{}) + eps(G{1})eps(G{0}) = 0", i + 1, j + 1),
                (&(&a * &b) + &(&b * &a)).is_zero(),
            );
        }
    }
    let et = counit(&gamma(d));
    push(format!("eps(G{0})^2 = 1", d + 1), (&et * &et).is_one());

    // antipode
    for i in 0..d {
        let sg = antipode(&gamma(i));
        push(format!("S(G{0})^2 = S(E{0})", i + 1), sg.mul(&sg)? == antipode(&e(i)));
    }
    for i in 0..=d {
        for j in i + 1..=d {
            push(
                format!("S(G{})S(G{}) + S(G{1})S(G{0}) = 0", i + 1, j + 1),
                anti(&antipode(&gamma(i)), &antipode(&gamma(j)))? == zero,
            );
        }
    }
    let st = antipode(&gamma(d));
    push(format!("S(G{0})^2 = 1", d + 1), st.mul(&st)? == one);
    for i in 0..d {
        let se = antipode(&e(i));
        let mut central = true;
        for j in 0..=d {
            let sg = antipode(&gamma(j));
            central &= se.mul(&sg)? == sg.mul(&se)?;
        }
        push(format!("S(E{}) central", i + 1), central);
    }

    // Hopf axioms on generators
    let single = |l: &ClhLabel| ClhElement::from_label(d, field, l.clone(), field.one());
    let anti_leg = |l: &ClhLabel| antipode(&single(l));
    let eps_leg = |l: &ClhLabel| ClhElement::one(d, field).scale(&counit(&single(l)));
    let mut gens: Vec<(String, ClhElement)> = (0..=d).map(|i| (format!("G{}", i + 1), gamma(i))).collect();
    gens.extend((0..d).map(|i| (format!("E{}", i + 1), e(i))));
    for (name, g) in &gens {
        let dg = coproduct(g);
        let unit_eps = one.scale(&counit(g));
        push(
            format!("m(S(x)id)D({name}) = eps({name})1"),
            dg.contract_with(anti_leg, single)? == unit_eps,
        );
        push(
            format!("m(id(x)S)D({name}) = eps({name})1"),
            dg.contract_with(single, anti_leg)? == unit_eps,
        );
        push(
            format!("(eps(x)id)D({name}) = {name}"),
            dg.contract_with(eps_leg, single)? == *g,
        );
        push(
            format!("(id(x)eps)D({name}) = {name}"),
            dg.contract_with(single, eps_leg)? == *g,
        );
    }
    Ok(ClhReport { d, checks })
}
