//! Rational polyhedral cones and fans in `Z^D` for `D ≤ 3`, dual cones,
//! Hilbert bases, and toric ideals by elimination.

pub mod lattice;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use lattice::{dot, is_nonnegative, nullspace, primitive, rank, solve, subsets};

pub const MAX_RANK: usize = 3;
pub const MAX_TORIC_GENERATORS: usize = 6;

fn check_rank(d: usize) -> Result<()> {
    if d > MAX_RANK {
        return Err(Error::UnsupportedDimension(format!("rank {d} exceeds {MAX_RANK}")));
    }
    Ok(())
}

/// A cone generated by primitive integer rays; no rays means the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<i64>>,
}

impl Cone {
    /// Rays are primitivized and deduplicated, keeping first occurrences.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>) -> Result<Cone> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for r in rays {
            if r.len() != dim {
                return Err(Error::Dimension(format!("ray {r:?} is not in rank {dim}")));
            }
            let p = primitive(&r).ok_or_else(|| Error::InvalidConfig("zero ray".into()))?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(Cone { dim, rays: out })
    }

    pub fn zero(dim: usize) -> Cone {
        Cone { dim, rays: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Dimension of the linear span of the rays.
    pub fn span_rank(&self) -> usize {
        rank(&self.rays)
    }

    pub fn ray_set(&self) -> BTreeSet<Vec<i64>> {
        self.rays.iter().cloned().collect()
    }

    /// Whether `x` is a nonnegative combination of the rays, decided over
    /// the bases of the span drawn from the rays.
    pub fn contains(&self, x: &[i64]) -> bool {
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        let r = self.span_rank();
        if r == 0 {
            return false;
        }
        for s in subsets(self.rays.len(), r) {
            let cols: Vec<Vec<i64>> = s.iter().map(|&i| self.rays[i].clone()).collect();
            if rank(&cols) < r {
                continue;
            }
            match solve(&cols, x) {
                None => return false,
                Some(l) if is_nonnegative(&l) => return true,
                Some(_) => {}
            }
        }
        false
    }

    /// Contains no line.
    pub fn is_pointed(&self) -> Result<bool> {
        Ok(dual_cone(self)?.span_rank() == self.dim)
    }

    /// Rays not in the cone spanned by the others.
    pub fn extreme_rays(&self) -> Vec<Vec<i64>> {
        (0..self.rays.len())
            .filter(|&i| {
                let others: Vec<Vec<i64>> = self
                    .rays
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, r)| r.clone())
                    .collect();
                !Cone { dim: self.dim, rays: others }.contains(&self.rays[i])
            })
            .map(|i| self.rays[i].clone())
            .collect()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone(")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(r))?;
        }
        write!(f, ")")
    }
}

pub fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// `{λ : <λ, v> ≥ 0 for every ray v}`, generated by a basis of its lineality
/// space (both signs) and its extreme rays, sorted.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    check_rank(c.dim)?;
    let d = c.dim;
    let lineality = nullspace(&c.rays, d);
    let r = d - lineality.len();
    let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
    for l in &lineality {
        rays.insert(l.clone());
        rays.insert(l.iter().map(|x| -x).collect());
    }
    if r > 0 {
        for s in subsets(c.rays.len(), r - 1) {
            let mut eqs: Vec<Vec<i64>> = s.iter().map(|&i| c.rays[i].clone()).collect();
            eqs.extend(lineality.iter().cloned());
            let ns = nullspace(&eqs, d);
            if ns.len() != 1 {
                continue;
            }
            let cand = &ns[0];
            let signs: Vec<i64> = c.rays.iter().map(|v| dot(cand, v).signum()).collect();
            if signs.iter().all(|&x| x >= 0) {
                rays.insert(cand.clone());
            } else if signs.iter().all(|&x| x <= 0) {
                rays.insert(cand.iter().map(|x| -x).collect());
            }
        }
    }
    Cone::new(d, rays.into_iter().collect())
}

/// The rays extend to a basis of `Z^D`.
pub fn is_regular(c: &Cone) -> bool {
    if c.rays.is_empty() {
        return true;
    }
    if c.span_rank() < c.rays.len() {
        return false;
    }
    lattice::maximal_minor_gcd(&c.rays, c.dim) == 1.into()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        if let Some(c) = cones.iter().find(|c| c.dim != dim) {
            return Err(Error::Dimension(format!("{c} is not in rank {dim}")));
        }
        Ok(Fan { dim, cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Distinct rays of all cones, in order of first appearance.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for r in self.cones.iter().flat_map(|c| c.rays.iter()) {
            if !out.contains(r) {
                out.push(r.clone());
            }
        }
        out
    }

    /// Cones whose ray set is not strictly inside another cone's.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        let sets: Vec<BTreeSet<Vec<i64>>> = self.cones.iter().map(Cone::ray_set).collect();
        self.cones
            .iter()
            .enumerate()
            .filter(|&(i, _)| !sets.iter().any(|s| sets[i].len() < s.len() && sets[i].is_subset(s)))
            .map(|(_, c)| c)
            .collect()
    }

    /// Every pairwise intersection of ray sets is itself a listed cone.
    pub fn is_closed_under_intersection(&self) -> bool {
        let sets: BTreeSet<BTreeSet<Vec<i64>>> = self.cones.iter().map(Cone::ray_set).collect();
        sets.iter().all(|a| sets.iter().all(|b| sets.contains(&a.intersection(b).cloned().collect())))
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cones.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Fan of projective space: rays `e_1..e_D` and `-(e_1+...+e_D)`, one cone
/// per proper subset of the rays, ordered by size and then lexicographically.
pub fn projective_fan(d: usize) -> Result<Fan> {
    if d == 0 || d > MAX_RANK {
        return Err(Error::UnsupportedDimension(format!("projective fan of rank {d}")));
    }
    let mut rays: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; d]);
    let mut cones = Vec::new();
    for k in 0..=d {
        for s in subsets(d + 1, k) {
            cones.push(Cone::new(d, s.iter().map(|&i| rays[i].clone()).collect())?);
        }
    }
    Fan::new(d, cones)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    pub complete: bool,
    /// A direction outside every cone.
    pub witness: Option<Vec<i64>>,
    pub directions_checked: usize,
}

/// Checks fixed directions (`±e_i`, then `{-1,0,1}^D`) followed by `samples`
/// seeded random integer directions against every cone of the fan.
pub fn is_complete(f: &Fan, samples: usize, seed: u64) -> Result<Coverage> {
    check_rank(f.dim)?;
    let d = f.dim;
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for sign in [1, -1] {
        for i in 0..d {
            dirs.push((0..d).map(|j| if i == j { sign } else { 0 }).collect());
        }
    }
    let total = 3usize.pow(d as u32);
    for code in 0..total {
        let v: Vec<i64> = (0..d).map(|i| (code / 3usize.pow(i as u32) % 3) as i64 - 1).collect();
        if v.iter().any(|&x| x != 0) && !dirs.contains(&v) {
            dirs.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v: Vec<i64> = (0..d).map(|_| rng.random_range(-10..=10)).collect();
        if v.iter().any(|&x| x != 0) {
            dirs.push(v);
        }
    }
    if d == 0 {
        let complete = !f.cones.is_empty();
        return Ok(Coverage { complete, witness: None, directions_checked: 0 });
    }
    for (n, v) in dirs.iter().enumerate() {
        if !f.cones.iter().any(|c| c.contains(v)) {
            return Ok(Coverage {
                complete: false,
                witness: Some(v.clone()),
                directions_checked: n + 1,
            });
        }
    }
    Ok(Coverage {
        complete: true,
        witness: None,
        directions_checked: dirs.len(),
    })
}

/// Minimal generators of the semigroup `c ∩ Z^D`. The lineality space is
/// split off with a unimodular change of basis and contributes a basis with
/// both signs; the pointed part is found by bounded enumeration.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<Vec<i64>>> {
    check_rank(c.dim)?;
    let d = c.dim;
    if c.rays.is_empty() {
        return Ok(Vec::new());
    }
    let dual = dual_cone(c)?;
    let lin = nullspace(&dual.rays, d);
    let l = lin.len();
    let (w, winv) = lattice::column_echelon(&lin, d);
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    for row in winv.iter().take(l) {
        out.insert(row.clone());
        out.insert(row.iter().map(|x| -x).collect());
    }
    let k = d - l;
    if k > 0 {
        let proj = |x: &[i64]| lattice::vec_mat(x, &w)[l..].to_vec();
        let prays: Vec<Vec<i64>> = c.rays.iter().map(|r| proj(r)).filter(|p| p.iter().any(|&v| v != 0)).collect();
        let pointed = Cone::new(k, prays)?;
        for h in pointed_hilbert_basis(&pointed)? {
            let mut y = vec![0i64; l];
            y.extend(h);
            out.insert(lattice::vec_mat(&y, &winv));
        }
    }
    Ok(out.into_iter().collect())
}

fn pointed_hilbert_basis(p: &Cone) -> Result<Vec<Vec<i64>>> {
    let k = p.dim;
    let dual = dual_cone(p)?;
    let mut lambda = vec![0i64; k];
    for r in &dual.rays {
        for (a, b) in lambda.iter_mut().zip(r) {
            *a += b;
        }
    }
    let bound: i64 = p.rays.iter().map(|r| dot(&lambda, r)).sum();
    let mut lo = vec![0i64; k];
    let mut hi = vec![0i64; k];
    for r in &p.rays {
        let lr = dot(&lambda, r);
        for i in 0..k {
            let ext = r[i] * bound;
            lo[i] = lo[i].min(ext.div_euclid(lr));
            hi[i] = hi[i].max(-((-ext).div_euclid(lr)));
        }
    }
    let mut points: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut x = lo.clone();
    'outer: loop {
        let lx = dot(&lambda, &x);
        if lx > 0 && lx <= bound && p.contains(&x) {
            points.push((lx, x.clone()));
        }
        for i in 0..k {
            if x[i] < hi[i] {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = lo[i];
        }
        break;
    }
    points.sort();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for (lx, x) in &points {
        let reducible = points.iter().take_while(|(ly, _)| ly < lx).any(|(_, y)| {
            let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            p.contains(&diff)
        });
        if !reducible {
            basis.push(x.clone());
        }
    }
    Ok(basis)
}

fn fresh_names(base: &Ring, stems: &[String]) -> Vec<String> {
    stems
        .iter()
        .map(|s| {
            let mut name = s.clone();
            while base.var_index(&name).is_some() {
                name.insert(0, '_');
            }
            name
        })
        .collect()
}

/// Kernel of `u_i -> t^{a_i}` in a ring with variables `u1..uk` over `Q`.
pub fn toric_ideal(gens: &[Vec<i64>]) -> Result<Ideal> {
    let ring = Ring::with_nvars(Field::Rational, gens.len());
    let names: Vec<String> = (1..=gens.len()).map(|i| format!("u{i}")).collect();
    toric_ideal_in(&Ring::new(ring.field(), &names), gens)
}

/// Kernel of `u_i -> t^{a_i}` from the ring's variables to Laurent monomials,
/// computed by eliminating `t` and an inverse variable `s` with
/// `s * t_1 * ... * t_D = 1`. The result carries its reduced degrevlex basis.
pub fn toric_ideal_in(ring: &Ring, gens: &[Vec<i64>]) -> Result<Ideal> {
    let k = gens.len();
    if k == 0 {
        return Err(Error::InvalidConfig("no lattice points".into()));
    }
    if k > MAX_TORIC_GENERATORS {
        return Err(Error::UnsupportedDimension(format!("{k} generators exceed {MAX_TORIC_GENERATORS}")));
    }
    if ring.nvars() != k {
        return Err(Error::Dimension(format!("{} variables for {k} lattice points", ring.nvars())));
    }
    let d = gens[0].len();
    check_rank(d)?;
    if gens.iter().any(|g| g.len() != d) {
        return Err(Error::Dimension("lattice points of different rank".into()));
    }
    let mut stems: Vec<String> = (1..=d).map(|i| format!("t{i}")).collect();
    stems.push("s".into());
    let big = ring.extend(&fresh_names(ring, &stems));
    let n = k + d + 1;
    let field = ring.field();
    let mut polys = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        let mut lhs = vec![0i32; n];
        let mut rhs = vec![0i32; n];
        lhs[i] = 1;
        for (j, &v) in a.iter().enumerate() {
            if v < 0 {
                lhs[k + j] = -v as i32;
            } else {
                rhs[k + j] = v as i32;
            }
        }
        polys.push(Polynomial::from_terms(
            &big,
            [(Monomial::new(lhs), field.one()), (Monomial::new(rhs), -field.one())],
        ));
    }
    let mut inv = vec![0i32; n];
    for e in inv.iter_mut().skip(k) {
        *e = 1;
    }
    polys.push(Polynomial::from_terms(
        &big,
        [(Monomial::new(inv), field.one()), (Monomial::one(n), -field.one())],
    ));
    let ord = MonomialOrder::eliminate_last(d + 1, MonomialOrder::DegRevLex);
    let gb = Ideal::new(&big, polys)?.groebner(&ord)?;
    let kept: Vec<Polynomial> = gb.elements().iter().filter_map(|f| f.restrict_to(ring)).collect();
    let ideal = Ideal::new(ring, kept)?;
    ideal.groebner(&MonomialOrder::DegRevLex)?;
    Ok(ideal)
}

/// Image of `f` under `u_i -> t^{a_i}`, as exponent vector to coefficient;
/// empty exactly when `f` is in the kernel.
pub fn monomial_image(f: &Polynomial, gens: &[Vec<i64>]) -> BTreeMap<Vec<i64>, crate::field::FieldElement> {
    let d = gens.first().map_or(0, Vec::len);
    let mut out: BTreeMap<Vec<i64>, crate::field::FieldElement> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut e = vec![0i64; d];
        for (a, &k) in gens.iter().zip(m.exponents()) {
            for (x, y) in e.iter_mut().zip(a) {
                *x += k as i64 * y;
            }
        }
        let s = match out.remove(&e) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !s.is_zero() {
            out.insert(e, s);
        }
    }
    out
}

/// Two terms with opposite coefficients and disjoint variable supports.
pub fn is_pure_binomial(f: &Polynomial) -> bool {
    let terms: Vec<_> = f.terms().collect();
    if terms.len() != 2 {
        return false;
    }
    let (a, ca) = terms[0];
    let (b, cb) = terms[1];
    (ca + cb).is_zero() && a.exponents().iter().zip(b.exponents()).all(|(x, y)| *x == 0 || *y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rays: &[&[i64]]) -> Cone {
        Cone::new(rays[0].len(), rays.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn dual_examples() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(dual_cone(&q).unwrap().ray_set(), q.ray_set());
        let c = cone(&[&[1, 0], &[1, 2]]);
        assert_eq!(dual_cone(&c).unwrap(), cone(&[&[0, 1], &[2, -1]]));
        let z = dual_cone(&Cone::zero(2)).unwrap();
        assert_eq!(z.ray_set(), cone(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).ray_set());
        assert!(matches!(dual_cone(&Cone::zero(4)), Err(Error::UnsupportedDimension(_))));
    }

    #[test]
    fn dual_of_lower_dimensional_cone() {
        // a ray in the plane: dual is a half-plane
        let c = cone(&[&[1, 1]]);
        let dual = dual_cone(&c).unwrap();
        assert_eq!(dual.ray_set(), cone(&[&[1, -1], &[-1, 1], &[1, 1]]).ray_set());
        assert!(dual.contains(&[1, 0]));
        assert!(!dual.contains(&[-1, 0]));
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&cone(&[&[1, 0], &[0, 1]])));
        assert!(!is_regular(&cone(&[&[1, 0], &[1, 2]])));
        assert!(is_regular(&cone(&[&[2, 3]])));
        assert!(!is_regular(&cone(&[&[1, 0], &[0, 1], &[1, 1]])));
    }

    #[test]
    fn projective_fans() {
        let f1 = projective_fan(1).unwrap();
        assert_eq!(f1.maximal_cones().len(), 2);
        let f2 = projective_fan(2).unwrap();
        assert_eq!(f2.maximal_cones().len(), 3);
        assert_eq!(f2.rays().len(), 3);
        for d in 1..=3 {
            let f = projective_fan(d).unwrap();
            assert_eq!(f.cones().len(), (1 << (d + 1)) - 1);
            assert!(f.maximal_cones().iter().all(|c| is_regular(c)));
            assert!(is_complete(&f, 200, 1).unwrap().complete);
            assert!(f.is_closed_under_intersection());
        }
        assert!(projective_fan(0).is_err());
        assert!(projective_fan(4).is_err());
    }

    #[test]
    fn incomplete_fans() {
        let f = Fan::new(2, vec![cone(&[&[1, 0], &[0, 1]])]).unwrap();
        let cov = is_complete(&f, 10, 0).unwrap();
        assert!(!cov.complete);
        assert_eq!(cov.witness, Some(vec![-1, 0]));
        assert!(!is_complete(&Fan::new(1, vec![]).unwrap(), 10, 0).unwrap().complete);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_basis(&cone(&[&[1, 0], &[0, 1]])).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        let hb = hilbert_basis(&cone(&[&[0, 1], &[2, -1]])).unwrap();
        assert_eq!(hb, vec![vec![0, 1], vec![1, 0], vec![2, -1]]);
        assert_eq!(hilbert_basis(&cone(&[&[1], &[-1]])).unwrap(), vec![vec![-1], vec![1]]);
        // half-plane y >= 0 has lineality along x
        let hp = hilbert_basis(&cone(&[&[1, 0], &[-1, 0], &[0, 1]])).unwrap();
        assert_eq!(hp.len(), 3);
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(hb, vec![vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 1], vec![1, 1, 2]]);
    }

    #[test]
    fn hilbert_elements_are_irreducible() {
        let c = cone(&[&[1, 0], &[1, 5]]);
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(hb.len(), 6);
        for x in &hb {
            for y in &hb {
                if x != y {
                    let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    assert!(!c.contains(&diff));
                }
            }
        }
    }

    #[test]
    fn toric_examples() {
        let gens = vec![vec![0, 1], vec![1, 0], vec![2, -1]];
        let ring = Ring::new(Field::Rational, &["u", "v", "w"]);
        let i = toric_ideal_in(&ring, &gens).unwrap();
        assert_eq!(i.generators().len(), 1);
        assert_eq!(i.generators()[0].display(&MonomialOrder::DegRevLex).to_string(), "v^2 - u*w");
        assert!(toric_ideal(&[vec![1, 0], vec![0, 1]]).unwrap().is_zero_ideal());
        let j = toric_ideal(&[vec![1], vec![2]]).unwrap();
        assert_eq!(j.generators()[0].to_string(), "u1^2 - u2");
        assert!(toric_ideal(&[]).is_err());
    }

    #[test]
    fn toric_generators_vanish() {
        let gens = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1], vec![1, 0, 1]];
        let i = toric_ideal(&gens).unwrap();
        assert!(!i.is_zero_ideal());
        for g in i.generators() {
            assert!(monomial_image(g, &gens).is_empty(), "{g}");
            assert!(is_pure_binomial(g), "{g}");
        }
    }
}
