//! Buchberger's algorithm with the normal selection strategy, reduced bases,
//! and ideal membership.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{reduce_work, work_map, Divisor, Monomial, MonomialOrder, Polynomial, Ring};

/// A reduced, monic Groebner basis together with the order it was computed for.
/// Elements are sorted by leading monomial, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    /// Wraps elements known to form a reduced basis, sorting them canonically.
    pub(crate) fn from_reduced(mut elements: Vec<Polynomial>, order: MonomialOrder) -> GroebnerBasis {
        elements.sort_by_cached_key(|g| {
            std::cmp::Reverse(order.key(g.leading_monomial(&order).expect("nonzero").exponents()))
        });
        GroebnerBasis { elements, order }
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.elements.is_empty() {
            return Ok(f.clone());
        }
        crate::poly::reduce_mod_set(f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Every S-polynomial reduces to zero modulo the basis.
    pub fn satisfies_buchberger_criterion(&self) -> Result<bool> {
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j], &self.order)?;
                if !self.reduce(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Monic, and no monomial of an element is divisible by another element's
    /// leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lts: Vec<(Monomial, FieldElement)> = self
            .elements
            .iter()
            .map(|g| g.leading_term(&self.order).expect("nonzero element"))
            .collect();
        for (i, g) in self.elements.iter().enumerate() {
            if !lts[i].1.is_one() {
                return false;
            }
            for (j, (lm, _)) in lts.iter().enumerate() {
                if i != j && g.terms().any(|(m, _)| lm.divides(m)) {
                    return false;
                }
            }
        }
        true
    }
}

/// A polynomial ideal given by generators. The reduced basis for the first
/// order it is requested under is memoized.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    cache: OnceLock<GroebnerBasis>,
}

impl PartialEq for Ideal {
    /// Generator-list equality; use [`Ideal::same_ideal`] for ideal equality.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl Ideal {
    /// Builds an ideal, dropping zero generators.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            ring.check_same(g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            cache: OnceLock::new(),
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: vec![Polynomial::one(ring)],
            cache: OnceLock::new(),
        }
    }

    /// An ideal whose generators are an already reduced basis.
    pub(crate) fn from_basis(ring: &Ring, gb: GroebnerBasis) -> Ideal {
        let ideal = Ideal {
            ring: ring.clone(),
            generators: gb.elements.clone(),
            cache: OnceLock::new(),
        };
        let _ = ideal.cache.set(gb);
        ideal
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The memoized basis, if one has been computed.
    pub fn cached_basis(&self) -> Option<&GroebnerBasis> {
        self.cache.get()
    }

    /// Reduced Groebner basis under `ord`.
    pub fn groebner(&self, ord: &MonomialOrder) -> Result<GroebnerBasis> {
        if let Some(gb) = self.cache.get() {
            if &gb.order == ord {
                return Ok(gb.clone());
            }
        }
        let gb = compute_basis(&self.ring, &self.generators, ord)?;
        if self.cache.get().is_none() {
            let _ = self.cache.set(gb.clone());
        }
        Ok(gb)
    }

    /// Equality of ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal, ord: &MonomialOrder) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        Ok(self.groebner(ord)?.elements == other.groebner(ord)?.elements)
    }

    /// Sum of ideals: concatenation of generator lists.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Product ideal, generated by pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let gens = self
            .generators
            .iter()
            .flat_map(|f| other.generators.iter().map(move |g| f * g))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// True when every generator is homogeneous. Informational only.
    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }
}

/// `(L / LT(f)) f - (L / LT(g)) g` with `L = lcm(LM(f), LM(g))`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    f.ring().check_same(g.ring())?;
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    let l = mf.lcm(&mg);
    let a = f.mul_term(&l.div(&mf).expect("lcm divisible"), &cf.inv().expect("nonzero"));
    let b = g.mul_term(&l.div(&mg).expect("lcm divisible"), &cg.inv().expect("nonzero"));
    Ok(&a - &b)
}

/// Reduced Groebner basis of `ideal` under `ord`; memoizes on the ideal.
pub fn buchberger(ideal: &Ideal, ord: &MonomialOrder) -> Result<GroebnerBasis> {
    ideal.groebner(ord)
}

/// `f` lies in `ideal`.
pub fn member(f: &Polynomial, ideal: &Ideal, ord: &MonomialOrder) -> Result<bool> {
    ideal.ring.check_same(f.ring())?;
    if f.is_zero() {
        return Ok(true);
    }
    ideal.groebner(ord)?.contains(f)
}

/// A basis together with, for each element, cofactors expressing it in terms
/// of the original generators: `basis[i] = sum_j cofactors[i][j] * gens[j]`.
#[derive(Debug, Clone)]
pub struct CertifiedBasis {
    pub basis: GroebnerBasis,
    pub cofactors: Vec<Vec<Polynomial>>,
}

/// Buchberger run that tracks cofactors against the input generators.
pub fn buchberger_certified(ideal: &Ideal, ord: &MonomialOrder) -> Result<CertifiedBasis> {
    let (elements, reps) = run(&ideal.ring, &ideal.generators, ord, true)?;
    Ok(CertifiedBasis {
        basis: GroebnerBasis {
            elements,
            order: ord.clone(),
        },
        cofactors: reps.expect("tracking enabled"),
    })
}

fn compute_basis(ring: &Ring, gens: &[Polynomial], ord: &MonomialOrder) -> Result<GroebnerBasis> {
    let (elements, _) = run(ring, gens, ord, false)?;
    Ok(GroebnerBasis {
        elements,
        order: ord.clone(),
    })
}

type Reps = Vec<Vec<Polynomial>>;

struct Engine<'a> {
    ring: &'a Ring,
    ord: &'a MonomialOrder,
    basis: Vec<Polynomial>,
    divisors: Vec<Divisor>,
    reps: Option<Reps>,
    ngens: usize,
}

impl Engine<'_> {
    fn zero_rep(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(self.ring); self.ngens]
    }

    /// Fully reduces `f` by the current basis, updating its representation.
    fn reduce(&self, f: &Polynomial, rep: Option<Vec<Polynomial>>) -> (Polynomial, Option<Vec<Polynomial>>) {
        let mut cof = rep.as_ref().map(|_| vec![BTreeMap::new(); self.divisors.len()]);
        let rem = reduce_work(work_map(f, self.ord), &self.divisors, cof.as_mut(), true);
        let rem = Polynomial::from_map(self.ring, rem);
        let rep = match (rep, cof, &self.reps) {
            (Some(mut r), Some(cof), Some(all)) => {
                for (k, qmap) in cof.into_iter().enumerate() {
                    if qmap.is_empty() {
                        continue;
                    }
                    let q = Polynomial::from_map(self.ring, qmap);
                    for (slot, b) in r.iter_mut().zip(&all[k]) {
                        *slot = &*slot - &(&q * b);
                    }
                }
                Some(r)
            }
            _ => None,
        };
        (rem, rep)
    }

    fn push(&mut self, f: Polynomial, rep: Option<Vec<Polynomial>>) {
        let (_, lc) = f.leading_term(self.ord).expect("nonzero");
        let inv = lc.inv().expect("nonzero");
        let f = f.scale(&inv);
        if let (Some(all), Some(rep)) = (self.reps.as_mut(), rep) {
            all.push(rep.iter().map(|p| p.scale(&inv)).collect());
        }
        self.divisors.push(Divisor::new(&f, self.ord).expect("nonzero"));
        self.basis.push(f);
    }
}

fn run(
    ring: &Ring,
    gens: &[Polynomial],
    ord: &MonomialOrder,
    track: bool,
) -> Result<(Vec<Polynomial>, Option<Reps>)> {
    ord.check_nvars(ring.nvars())?;
    for g in gens {
        ring.check_same(g.ring())?;
        if g.has_negative_exponents() {
            return Err(Error::UnsupportedRing(
                "Groebner bases require nonnegative exponents".into(),
            ));
        }
    }
    let mut eng = Engine {
        ring,
        ord,
        basis: Vec::new(),
        divisors: Vec::new(),
        reps: track.then(Vec::new),
        ngens: gens.len(),
    };

    // Seed with the nonzero inputs, each reduced against the previous ones.
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let rep = track.then(|| {
            let mut r = eng.zero_rep();
            r[j] = Polynomial::one(ring);
            r
        });
        let (h, rep) = eng.reduce(g, rep);
        if !h.is_zero() {
            eng.push(h, rep);
        }
    }

    // Pending pairs keyed by (lcm sort key, i, j): the normal strategy pops the smallest lcm.
    let mut queue: BTreeSet<(Vec<i64>, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let lm = |eng: &Engine, i: usize| eng.divisors[i].lm.clone();
    let add_pairs = |eng: &Engine, new: usize, queue: &mut BTreeSet<_>, pending: &mut HashSet<_>| {
        for i in 0..new {
            let l = lm(eng, i).lcm(&lm(eng, new));
            queue.insert((ord.key(l.exponents()), i, new));
            pending.insert((i, new));
        }
    };
    for k in 1..eng.basis.len() {
        add_pairs(&eng, k, &mut queue, &mut pending);
    }

    while let Some((_, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (li, lj) = (lm(&eng, i), lm(&eng, j));
        // Product criterion: coprime leading monomials reduce to zero.
        if li.is_coprime(&lj) {
            continue;
        }
        // Chain criterion: some k with LM_k | lcm whose pairs with i and j are both done.
        let l = li.lcm(&lj);
        let chain = (0..eng.basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&eng, k).divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&eng.basis[i], &eng.basis[j], ord)?;
        let rep = eng.reps.as_ref().map(|all| {
            let (mi, _) = eng.basis[i].leading_term(ord).expect("nonzero");
            let (mj, _) = eng.basis[j].leading_term(ord).expect("nonzero");
            let qi = l.div(&mi).expect("divides");
            let qj = l.div(&mj).expect("divides");
            let one = ring.field().one();
            all[i]
                .iter()
                .zip(&all[j])
                .map(|(a, b)| &a.mul_term(&qi, &one) - &b.mul_term(&qj, &one))
                .collect()
        });
        let (h, rep) = eng.reduce(&s, rep);
        if !h.is_zero() {
            eng.push(h, rep);
            let new = eng.basis.len() - 1;
            add_pairs(&eng, new, &mut queue, &mut pending);
        }
    }

    Ok(interreduce(eng))
}

/// Minimalizes and fully interreduces; output sorted by leading monomial, descending.
fn interreduce(eng: Engine) -> (Vec<Polynomial>, Option<Reps>) {
    let ord = eng.ord;
    let n = eng.basis.len();
    let lms: Vec<Monomial> = eng.divisors.iter().map(|d| d.lm.clone()).collect();
    let keep: Vec<usize> = (0..n)
        .filter(|&i| {
            !(0..n).any(|j| {
                j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)
            })
        })
        .collect();

    let kept_divs: Vec<Divisor> = keep.iter().map(|&i| eng.divisors[i].clone()).collect();
    let mut out: Vec<(Vec<i64>, Polynomial, Option<Vec<Polynomial>>)> = Vec::new();
    for (pos, &i) in keep.iter().enumerate() {
        let g = &eng.basis[i];
        let others: Vec<Divisor> = kept_divs
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != pos)
            .map(|(_, d)| d.clone())
            .collect();
        let mut cof = eng.reps.as_ref().map(|_| vec![BTreeMap::new(); others.len()]);
        let rem = reduce_work(work_map(g, ord), &others, cof.as_mut(), true);
        let h = Polynomial::from_map(eng.ring, rem);
        let rep = match (&eng.reps, cof) {
            (Some(all), Some(cof)) => {
                let mut r = all[i].clone();
                let other_idx: Vec<usize> = keep.iter().copied().filter(|&k| k != i).collect();
                for (k, qmap) in cof.into_iter().enumerate() {
                    if qmap.is_empty() {
                        continue;
                    }
                    let q = Polynomial::from_map(eng.ring, qmap);
                    for (slot, b) in r.iter_mut().zip(&all[other_idx[k]]) {
                        *slot = &*slot - &(&q * b);
                    }
                }
                Some(r)
            }
            _ => None,
        };
        let key = ord.key(eng.divisors[i].lm.exponents());
        out.push((key, h, rep));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    let reps = eng
        .reps
        .as_ref()
        .map(|_| out.iter().map(|(_, _, r)| r.clone().expect("tracked")).collect());
    (out.into_iter().map(|(_, h, _)| h).collect(), reps)
}
