//! Ideal intersections by elimination, ideal quotients, and normal forms in
//! quotient rings.

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Ideal};
use crate::poly::{divide_exact, MonomialOrder, Polynomial, Ring};

/// A base ring extended by one trailing elimination variable `t`, with the
/// block order `t >> base` whose restriction to the base is the caller's order.
#[derive(Debug, Clone)]
pub struct TaggedRing {
    base: Ring,
    extended: Ring,
    order: MonomialOrder,
}

impl TaggedRing {
    pub fn new(base: &Ring, ord: &MonomialOrder) -> TaggedRing {
        let mut name = String::from("t");
        while base.var_index(&name).is_some() {
            name.push('_');
        }
        TaggedRing {
            base: base.clone(),
            extended: base.extend(&[name]),
            order: MonomialOrder::eliminate_last(1, ord.clone()),
        }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn ring(&self) -> &Ring {
        &self.extended
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn t_index(&self) -> usize {
        self.base.nvars()
    }

    pub fn t(&self) -> Polynomial {
        Polynomial::var(&self.extended, self.t_index())
    }

    pub fn tag(&self, f: &Polynomial) -> Polynomial {
        f.extend_to(&self.extended)
    }

    pub fn is_t_free(&self, f: &Polynomial) -> bool {
        let t = self.t_index();
        f.terms().all(|(m, _)| m.exponents()[t] == 0)
    }

    /// Back to the base ring; `None` if `t` occurs.
    pub fn untag(&self, f: &Polynomial) -> Option<Polynomial> {
        f.restrict_to(&self.base)
    }
}

fn check_pair(i: &Ideal, j: &Ideal, ord: &MonomialOrder) -> Result<()> {
    i.ring().check_same(j.ring())?;
    ord.check_nvars(i.ring().nvars())
}

/// `I ∩ J` as the `t`-free part of a basis of `t I + (1 - t) J`. The result
/// carries its reduced basis under `ord`.
pub fn intersect(i: &Ideal, j: &Ideal, ord: &MonomialOrder) -> Result<Ideal> {
    check_pair(i, j, ord)?;
    let ring = i.ring();
    if i.is_zero_ideal() || j.is_zero_ideal() {
        // still surface Laurent input as an error
        i.groebner(ord)?;
        j.groebner(ord)?;
        return Ok(Ideal::zero(ring));
    }
    let tagged = TaggedRing::new(ring, ord);
    let t = tagged.t();
    let one_minus_t = &Polynomial::one(tagged.ring()) - &t;
    let mut gens = Vec::with_capacity(i.generators().len() + j.generators().len());
    gens.extend(i.generators().iter().map(|f| &t * &tagged.tag(f)));
    gens.extend(j.generators().iter().map(|g| &one_minus_t * &tagged.tag(g)));
    let big = Ideal::new(tagged.ring(), gens)?;
    let gb = big.groebner(tagged.order())?;
    let kept: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| tagged.is_t_free(g))
        .map(|g| tagged.untag(g).expect("t-free"))
        .collect();
    Ok(Ideal::from_basis(ring, GroebnerBasis::from_reduced(kept, ord.clone())))
}

/// `I : f` computed as `(I ∩ <f>) / f`.
pub fn quotient_by_poly(i: &Ideal, f: &Polynomial, ord: &MonomialOrder) -> Result<Ideal> {
    i.ring().check_same(f.ring())?;
    if f.is_zero() {
        return Err(Error::InvalidDivisor("quotient by the zero polynomial".into()));
    }
    let principal = Ideal::new(i.ring(), vec![f.clone()])?;
    let meet = intersect(i, &principal, ord)?;
    let mut gens = Vec::with_capacity(meet.generators().len());
    for g in meet.generators() {
        let q = divide_exact(g, f, ord)?.ok_or_else(|| {
            Error::Internal(format!(
                "intersection generator {} not divisible by {}",
                g.display(ord),
                f.display(ord)
            ))
        })?;
        gens.push(q);
    }
    let quot = Ideal::new(i.ring(), gens)?;
    let gb = quot.groebner(ord)?;
    Ok(Ideal::from_basis(i.ring(), gb))
}

/// `I : J = ⋂_k (I : f_k)` over the generators `f_k` of `J`.
pub fn quotient_by_ideal(i: &Ideal, j: &Ideal, ord: &MonomialOrder) -> Result<Ideal> {
    check_pair(i, j, ord)?;
    let mut gens = j.generators().iter();
    let first = gens
        .next()
        .ok_or_else(|| Error::InvalidDivisor("quotient by the zero ideal".into()))?;
    let mut acc = quotient_by_poly(i, first, ord)?;
    for f in gens {
        let next = quotient_by_poly(i, f, ord)?;
        acc = intersect(&acc, &next, ord)?;
    }
    Ok(acc)
}

/// Intersection of a nonempty list of ideals.
pub fn intersect_all(ideals: &[Ideal], ord: &MonomialOrder) -> Result<Ideal> {
    let (first, rest) = ideals
        .split_first()
        .ok_or_else(|| Error::InvalidConfig("empty ideal list".into()))?;
    let mut acc = Ideal::from_basis(first.ring(), first.groebner(ord)?);
    for k in rest {
        acc = intersect(&acc, k, ord)?;
    }
    Ok(acc)
}

/// Outcome of checking both quotient identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientIdentities {
    /// `(⋂ I_k) : I = ⋂ (I_k : I)`
    pub intersection_rule: bool,
    /// `I : (Σ I_k) = ⋂ (I : I_k)`
    pub sum_rule: bool,
}

impl QuotientIdentities {
    pub fn holds(&self) -> bool {
        self.intersection_rule && self.sum_rule
    }
}

/// Evaluates both sides of each identity and compares reduced bases.
pub fn check_quotient_identities(
    ideals: &[Ideal],
    i: &Ideal,
    ord: &MonomialOrder,
) -> Result<QuotientIdentities> {
    if ideals.is_empty() {
        return Err(Error::InvalidConfig("empty ideal list".into()));
    }
    for k in ideals {
        check_pair(k, i, ord)?;
    }
    let lhs1 = quotient_by_ideal(&intersect_all(ideals, ord)?, i, ord)?;
    let parts1: Vec<Ideal> = ideals
        .iter()
        .map(|k| quotient_by_ideal(k, i, ord))
        .collect::<Result<_>>()?;
    let rhs1 = intersect_all(&parts1, ord)?;

    let mut total = ideals[0].clone();
    for k in &ideals[1..] {
        total = total.sum(k)?;
    }
    let lhs2 = quotient_by_ideal(i, &total, ord)?;
    let parts2: Vec<Ideal> = ideals
        .iter()
        .map(|k| quotient_by_ideal(i, k, ord))
        .collect::<Result<_>>()?;
    let rhs2 = intersect_all(&parts2, ord)?;

    Ok(QuotientIdentities {
        intersection_rule: lhs1.same_ideal(&rhs1, ord)?,
        sum_rule: lhs2.same_ideal(&rhs2, ord)?,
    })
}

/// True iff both quotient identities hold for `ideals` and `i`.
pub fn verify_quotient_identities(ideals: &[Ideal], i: &Ideal, ord: &MonomialOrder) -> Result<bool> {
    Ok(check_quotient_identities(ideals, i, ord)?.holds())
}

/// Canonical representative of `f` in `R / I`.
pub fn quotient_ring_nf(f: &Polynomial, i: &Ideal, ord: &MonomialOrder) -> Result<Polynomial> {
    i.ring().check_same(f.ring())?;
    i.groebner(ord)?.reduce(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::groebner::member;
    use crate::poly::Monomial;

    fn qxy() -> Ring {
        Ring::new(Field::Rational, &["x", "y"])
    }

    fn mono(r: &Ring, e: &[i32]) -> Polynomial {
        Polynomial::from_int_terms(r, &[(1, e)])
    }

    fn ideal(r: &Ring, gens: &[&[i32]]) -> Ideal {
        Ideal::new(r, gens.iter().map(|e| mono(r, e)).collect()).unwrap()
    }

    /// Monomials in two variables of total degree <= d.
    fn monomials(d: i32) -> Vec<[i32; 2]> {
        let mut out = Vec::new();
        for a in 0..=d {
            for b in 0..=d - a {
                out.push([a, b]);
            }
        }
        out
    }

    /// Membership of a monomial in a monomial ideal: divisibility by a generator.
    fn monomial_ideal_contains(gens: &[[i32; 2]], m: [i32; 2]) -> bool {
        gens.iter().any(|g| g[0] <= m[0] && g[1] <= m[1])
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = qxy();
        let ord = MonomialOrder::DegRevLex;
        let meet = intersect(&ideal(&r, &[&[1, 0]]), &ideal(&r, &[&[0, 1]]), &ord).unwrap();
        assert_eq!(meet.generators(), &[mono(&r, &[1, 1])]);
        for m in monomials(3) {
            let expected = m[0] >= 1 && m[1] >= 1;
            assert_eq!(member(&mono(&r, &m), &meet, &ord).unwrap(), expected, "{m:?}");
        }
    }

    #[test]
    fn intersection_examples() {
        let r = qxy();
        let ord = MonomialOrder::Lex;
        let i = Ideal::new(
            &r,
            vec![Polynomial::from_int_terms(&r, &[(1, &[2, 0]), (-1, &[0, 1])])],
        )
        .unwrap();
        let meet = intersect(&i, &i, &ord).unwrap();
        assert!(meet.same_ideal(&i, &ord).unwrap());

        let x2 = ideal(&r, &[&[2, 0]]);
        let x = ideal(&r, &[&[1, 0]]);
        let meet = intersect(&x2, &x, &ord).unwrap();
        assert_eq!(meet.generators(), &[mono(&r, &[2, 0])]);
    }

    #[test]
    fn quotient_by_monomial() {
        let r = qxy();
        let ord = MonomialOrder::DegRevLex;
        let i = ideal(&r, &[&[2, 1], &[1, 2]]);
        let q = quotient_by_poly(&i, &mono(&r, &[1, 1]), &ord).unwrap();
        assert_eq!(q.generators(), &[mono(&r, &[1, 0]), mono(&r, &[0, 1])]);
        // brute force: r*xy in I exactly for monomials r outside {1}
        for m in monomials(4) {
            let prod = [m[0] + 1, m[1] + 1];
            let in_i = monomial_ideal_contains(&[[2, 1], [1, 2]], prod);
            assert_eq!(member(&mono(&r, &m), &q, &ord).unwrap(), in_i, "{m:?}");
        }

        let unit = quotient_by_poly(&i, &Polynomial::one(&r), &ord).unwrap();
        assert!(unit.same_ideal(&i, &ord).unwrap());

        let q = quotient_by_poly(&ideal(&r, &[&[1, 1]]), &mono(&r, &[1, 0]), &ord).unwrap();
        assert_eq!(q.generators(), &[mono(&r, &[0, 1])]);

        assert!(matches!(
            quotient_by_poly(&i, &Polynomial::zero(&r), &ord),
            Err(Error::InvalidDivisor(_))
        ));
    }

    #[test]
    fn quotient_by_ideal_examples() {
        let r = qxy();
        let ord = MonomialOrder::DegRevLex;
        let i = ideal(&r, &[&[2, 1], &[1, 2]]);
        let m = ideal(&r, &[&[1, 0], &[0, 1]]);

        let ix = quotient_by_poly(&i, &mono(&r, &[1, 0]), &ord).unwrap();
        assert_eq!(ix.generators(), &[mono(&r, &[1, 1]), mono(&r, &[0, 2])]);
        let iy = quotient_by_poly(&i, &mono(&r, &[0, 1]), &ord).unwrap();
        assert_eq!(iy.generators(), &[mono(&r, &[2, 0]), mono(&r, &[1, 1])]);

        let q = quotient_by_ideal(&i, &m, &ord).unwrap();
        assert_eq!(q.generators(), &[mono(&r, &[1, 1])]);
        for mm in monomials(4) {
            let expected = monomial_ideal_contains(&[[1, 1], [0, 2]], mm)
                && monomial_ideal_contains(&[[2, 0], [1, 1]], mm);
            assert_eq!(member(&mono(&r, &mm), &q, &ord).unwrap(), expected);
        }

        let q = quotient_by_ideal(&i, &Ideal::unit(&r), &ord).unwrap();
        assert!(q.same_ideal(&i, &ord).unwrap());

        let x = ideal(&r, &[&[1, 0]]);
        let q = quotient_by_ideal(&x, &x, &ord).unwrap();
        assert_eq!(q.generators(), &[Polynomial::one(&r)]);

        assert!(matches!(
            quotient_by_ideal(&i, &Ideal::zero(&r), &ord),
            Err(Error::InvalidDivisor(_))
        ));
    }

    #[test]
    fn identities_on_axes() {
        let r = qxy();
        let ord = MonomialOrder::DegRevLex;
        let ideals = [ideal(&r, &[&[1, 0]]), ideal(&r, &[&[0, 1]])];
        let i = ideal(&r, &[&[1, 1]]);
        assert!(verify_quotient_identities(&ideals, &i, &ord).unwrap());
        assert!(verify_quotient_identities(&ideals[..1], &i, &ord).unwrap());
        assert!(verify_quotient_identities(&[], &i, &ord).is_err());
    }

    #[test]
    fn normal_forms() {
        let r = Ring::new(Field::Rational, &["x"]);
        let ord = MonomialOrder::DegRevLex;
        let i = Ideal::new(&r, vec![Polynomial::from_int_terms(&r, &[(1, &[2]), (-1, &[0])])]).unwrap();
        let x2 = Polynomial::term(&r, Monomial::new(vec![2]), r.field().one());
        assert_eq!(quotient_ring_nf(&x2, &i, &ord).unwrap(), Polynomial::one(&r));
        assert!(quotient_ring_nf(&i.generators()[0], &i, &ord).unwrap().is_zero());
        let x5 = Polynomial::term(&r, Monomial::new(vec![5]), r.field().one());
        let nf = quotient_ring_nf(&x5, &i, &ord).unwrap();
        assert_eq!(quotient_ring_nf(&nf, &i, &ord).unwrap(), nf);
    }

    #[test]
    fn tagged_ring_names_avoid_clashes() {
        let r = Ring::new(Field::Rational, &["t", "x"]);
        let tagged = TaggedRing::new(&r, &MonomialOrder::Lex);
        assert_eq!(tagged.ring().vars()[2], "t_");
        assert_eq!(tagged.t_index(), 2);
        let f = tagged.tag(&Polynomial::var(&r, 0));
        assert!(tagged.is_t_free(&f));
        assert!(!tagged.is_t_free(&tagged.t()));
        assert_eq!(tagged.untag(&f).unwrap(), Polynomial::var(&r, 0));
    }
}
