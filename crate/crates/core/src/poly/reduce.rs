//! Multivariate division with remainder.

use std::collections::BTreeMap;

use super::{Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// A divisor prepared for repeated use: terms carry their order keys,
/// the leading term first.
#[derive(Debug, Clone)]
pub(crate) struct Divisor {
    pub lm: Monomial,
    pub lc_inv: FieldElement,
    pub terms: Vec<(Vec<i64>, Monomial, FieldElement)>,
}

impl Divisor {
    pub fn new(g: &Polynomial, ord: &MonomialOrder) -> Option<Divisor> {
        let mut terms: Vec<_> = g
            .terms()
            .map(|(m, c)| (ord.key(m.exponents()), m.clone(), c.clone()))
            .collect();
        if terms.is_empty() {
            return None;
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Some(Divisor {
            lm: terms[0].1.clone(),
            lc_inv: terms[0].2.inv().expect("nonzero coefficient"),
            terms,
        })
    }

    pub fn lm_key(&self) -> &[i64] {
        &self.terms[0].0
    }
}

pub(crate) type WorkMap = BTreeMap<Vec<i64>, (Monomial, FieldElement)>;

pub(crate) fn work_map(f: &Polynomial, ord: &MonomialOrder) -> WorkMap {
    f.terms()
        .map(|(m, c)| (ord.key(m.exponents()), (m.clone(), c.clone())))
        .collect()
}

fn add_to_work(work: &mut WorkMap, key: Vec<i64>, m: Monomial, c: FieldElement) {
    match work.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert((m, c));
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = &o.get().1 + &c;
            if s.is_zero() {
                o.remove();
            } else {
                o.get_mut().1 = s;
            }
        }
    }
}

/// Core division loop. The first divisor in list order whose leading monomial
/// divides the current leading term is used.
pub(crate) fn reduce_work(
    mut work: WorkMap,
    divisors: &[Divisor],
    mut cofactors: Option<&mut Vec<BTreeMap<Monomial, FieldElement>>>,
    full: bool,
) -> BTreeMap<Monomial, FieldElement> {
    let mut remainder = BTreeMap::new();
    while let Some((key, (m, c))) = work.pop_last() {
        let hit = divisors.iter().enumerate().find(|(_, d)| d.lm.divides(&m));
        match hit {
            Some((i, d)) => {
                let q = m.div_laurent(&d.lm);
                let qkey: Vec<i64> = key.iter().zip(d.lm_key()).map(|(a, b)| a - b).collect();
                let coef = &c * &d.lc_inv;
                for (k, t, a) in &d.terms[1..] {
                    let nk: Vec<i64> = k.iter().zip(&qkey).map(|(x, y)| x + y).collect();
                    add_to_work(&mut work, nk, t.mul(&q), -(&coef * a));
                }
                if let Some(cf) = cofactors.as_deref_mut() {
                    let e = cf[i].entry(q).or_insert_with(|| coef.field().zero());
                    *e = &*e + &coef;
                }
            }
            None => {
                remainder.insert(m, c);
                if !full {
                    // top-reduction only: the rest of the polynomial is kept as is
                    remainder.extend(work.into_values());
                    break;
                }
            }
        }
    }
    remainder.retain(|_, c| !c.is_zero());
    if let Some(cf) = cofactors {
        for map in cf.iter_mut() {
            map.retain(|_, c| !c.is_zero());
        }
    }
    remainder
}

fn check_divisors(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Result<()> {
    ord.check_nvars(f.ring().nvars())?;
    for g in divisors {
        f.ring().check_same(g.ring())?;
        if g.is_zero() {
            return Err(Error::InvalidDivisor("zero polynomial in divisor list".into()));
        }
        if g.has_negative_exponents() {
            return Err(Error::UnsupportedRing("Laurent divisor".into()));
        }
    }
    if f.has_negative_exponents() {
        return Err(Error::UnsupportedRing("Laurent dividend".into()));
    }
    Ok(())
}

/// Remainder of `f` on division by `divisors`: no monomial of the result is
/// divisible by a leading monomial of a divisor, and `f - r` lies in the
/// ideal they generate.
pub fn reduce_mod_set(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<Polynomial> {
    check_divisors(f, divisors, ord)?;
    let prepared: Vec<Divisor> = divisors.iter().filter_map(|g| Divisor::new(g, ord)).collect();
    let rem = reduce_work(work_map(f, ord), &prepared, None, true);
    Ok(Polynomial::from_map(f.ring(), rem))
}

/// Division with cofactors: returns `(q, r)` with `f = sum q_i g_i + r`.
pub fn divide_with_cofactors(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    check_divisors(f, divisors, ord)?;
    let prepared: Vec<Divisor> = divisors.iter().filter_map(|g| Divisor::new(g, ord)).collect();
    let mut cof = vec![BTreeMap::new(); prepared.len()];
    let rem = reduce_work(work_map(f, ord), &prepared, Some(&mut cof), true);
    let quotients = cof
        .into_iter()
        .map(|m| Polynomial::from_map(f.ring(), m))
        .collect();
    Ok((quotients, Polynomial::from_map(f.ring(), rem)))
}

/// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
pub fn divide_exact(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Option<Polynomial>> {
    let (mut q, r) = divide_with_cofactors(f, std::slice::from_ref(g), ord)?;
    Ok(if r.is_zero() { q.pop() } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Ring;
    use proptest::prelude::*;

    fn ring() -> Ring {
        Ring::new(Field::Rational, &["x", "y", "z"])
    }

    fn p(terms: &[(i64, [i32; 3])]) -> Polynomial {
        let r = ring();
        Polynomial::from_terms(
            &r,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), r.field().from_i64(*c))),
        )
    }

    #[test]
    fn single_division_step() {
        // x^2 y mod (x y - 1) = x
        let f = p(&[(1, [2, 1, 0])]);
        let g = p(&[(1, [1, 1, 0]), (-1, [0, 0, 0])]);
        let r = reduce_mod_set(&f, &[g], &MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r, p(&[(1, [1, 0, 0])]));
    }

    #[test]
    fn constants_and_members() {
        let one = p(&[(1, [0, 0, 0])]);
        let x = p(&[(1, [1, 0, 0])]);
        for ord in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            assert_eq!(reduce_mod_set(&one, &[x.clone()], &ord).unwrap(), one);
        }
        let g = p(&[(3, [1, 2, 0]), (-1, [0, 0, 4])]);
        assert!(reduce_mod_set(&g, &[g.clone()], &MonomialOrder::Lex).unwrap().is_zero());
    }

    #[test]
    fn zero_divisor_rejected() {
        let f = p(&[(1, [1, 0, 0])]);
        let z = Polynomial::zero(&ring());
        assert!(matches!(
            reduce_mod_set(&f, &[z], &MonomialOrder::Lex),
            Err(Error::InvalidDivisor(_))
        ));
    }

    #[test]
    fn first_divisor_in_list_order_wins() {
        // f = x*y; both x and y divide; the remainder differs by choice.
        let f = p(&[(1, [1, 1, 0])]);
        let g1 = p(&[(1, [1, 0, 0]), (-1, [0, 0, 1])]);
        let g2 = p(&[(1, [0, 1, 0]), (-2, [0, 0, 1])]);
        let ord = MonomialOrder::Lex;
        let r12 = reduce_mod_set(&f, &[g1.clone(), g2.clone()], &ord).unwrap();
        let r21 = reduce_mod_set(&f, &[g2, g1], &ord).unwrap();
        assert_eq!(r12, p(&[(2, [0, 0, 2])]));
        assert_eq!(r21, p(&[(2, [0, 0, 2])]));
        let (q, _) = divide_with_cofactors(&f, &[p(&[(1, [1, 0, 0])]), p(&[(1, [0, 1, 0])])], &ord).unwrap();
        assert_eq!(q[0], p(&[(1, [0, 1, 0])]));
        assert!(q[1].is_zero());
    }

    #[test]
    fn exact_division() {
        let x = p(&[(1, [1, 0, 0])]);
        let g = p(&[(1, [1, 1, 0]), (1, [0, 0, 2])]);
        let f = &x * &g;
        assert_eq!(divide_exact(&f, &g, &MonomialOrder::DegRevLex).unwrap(), Some(x.clone()));
        assert_eq!(divide_exact(&g, &x, &MonomialOrder::DegRevLex).unwrap(), None);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-3i64..4, prop::array::uniform3(0i32..3)), 1..5)
            .prop_map(|ts| p(&ts))
    }

    proptest! {
        #[test]
        fn remainder_is_idempotent_and_certified(
            f in small_poly(),
            gs in prop::collection::vec(small_poly(), 1..4),
            lex in any::<bool>(),
        ) {
            let gs: Vec<Polynomial> = gs.into_iter().filter(|g| !g.is_zero()).collect();
            prop_assume!(!gs.is_empty());
            let ord = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
            let (q, r) = divide_with_cofactors(&f, &gs, &ord).unwrap();
            prop_assert_eq!(reduce_mod_set(&r, &gs, &ord).unwrap(), r.clone());
            let mut recon = r.clone();
            for (qi, gi) in q.iter().zip(&gs) {
                recon = &recon + &(qi * gi);
            }
            prop_assert_eq!(recon, f);
            let lms: Vec<Monomial> = gs.iter().map(|g| g.leading_monomial(&ord).unwrap()).collect();
            for (m, _) in r.terms() {
                prop_assert!(lms.iter().all(|l| !l.divides(m)));
            }
        }
    }
}
