//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtoric_cli::{parse_polynomial, run_source, RunOptions};
use qtoric_core::clifford_hopf::{
    basis_dimension, clh_morphism_check, clifford_product, grassmann_product, CliffordElement, Signature,
};
use qtoric_core::estimator::{
    additive_estimate, amplitude, bqp_decide, gb_scaling_bench, trial_seed, Decision, EstimateConfig, Family,
    Gate, GateCircuit, Thresholds, BENCH_HEADER,
};
use qtoric_core::field::{Field, Phase};
use qtoric_core::groebner::{buchberger, member, GroebnerBasis, Ideal};
use qtoric_core::ideal_ops::{intersect, quotient_by_ideal, verify_quotient_identities};
use qtoric_core::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use qtoric_core::skew_twist::{
    braid_check, faithfulness_defect, involutive_q, skew_normal_form, twist_product, Bicharacter, BraidRelation,
    Grading, SkewMatrix,
};
use qtoric_core::toric::{dual_cone, is_complete, is_regular, monomial_image, projective_fan, toric_ideal, Cone};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn q_ring(n: usize) -> Ring {
    Ring::with_nvars(Field::Rational, n)
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, terms: usize, d: i32) -> Polynomial {
    let f = ring.field();
    let mut p = Polynomial::zero(ring);
    for _ in 0..terms {
        let mut e = vec![0i32; ring.nvars()];
        for _ in 0..rng.random_range(0..=d) {
            e[rng.random_range(0..ring.nvars())] += 1;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.random_range(-3i64..=3);
        }
        p = &p + &Polynomial::term(ring, Monomial::new(e), f.from_i64(c));
    }
    p
}

/// A monomial or a binomial `m1 - m2`, never constant.
fn random_mono_or_binomial(rng: &mut ChaCha8Rng, ring: &Ring, d: i32) -> Polynomial {
    let f = ring.field();
    let mono = |rng: &mut ChaCha8Rng| {
        let mut e = vec![0i32; ring.nvars()];
        for _ in 0..rng.random_range(1..=d) {
            e[rng.random_range(0..ring.nvars())] += 1;
        }
        Monomial::new(e)
    };
    let a = mono(rng);
    if rng.random_bool(0.5) {
        return Polynomial::term(ring, a, f.one());
    }
    let mut b = mono(rng);
    while b == a {
        b = mono(rng);
    }
    Polynomial::from_terms(ring, [(a, f.one()), (b, -f.one())])
}

fn basis_set(gb: &GroebnerBasis, ord: &MonomialOrder) -> BTreeSet<String> {
    gb.elements().iter().map(|p| p.display(ord).to_string()).collect()
}

fn groebner_correctness() -> Check {
    let ring = Ring::new(Field::Rational, &["x", "y"]);
    let lex = MonomialOrder::Lex;
    let i = Ideal::new(&ring, vec![parse_polynomial(&ring, "x^2 - y").unwrap(), parse_polynomial(&ring, "x*y - 1").unwrap()])
        .map_err(e)?;
    let gb = buchberger(&i, &lex).map_err(e)?;
    let got: Vec<String> = gb.elements().iter().map(|p| p.display(&lex).to_string()).collect();
    ensure(got == ["x - y^2", "y^3 - 1"], || format!("lex basis {got:?}"))?;
    ensure(gb.satisfies_buchberger_criterion().map_err(e)?, || "example basis fails S-pair test".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut bases = 0;
    for k in 0..50 {
        let n = rng.random_range(2..=4);
        let d = rng.random_range(2..=3);
        let ring = q_ring(n);
        let ord = if k % 2 == 0 { MonomialOrder::DegRevLex } else { MonomialOrder::Lex };
        let ngens = rng.random_range(2..=3);
        let mut gens: Vec<Polynomial> = (0..ngens).map(|_| random_poly(&mut rng, &ring, 2, d)).collect();
        let base = buchberger(&Ideal::new(&ring, gens.clone()).map_err(e)?, &ord).map_err(e)?;
        ensure(base.satisfies_buchberger_criterion().map_err(e)?, || format!("ideal {k}: S-pair not reducing to 0"))?;
        let want = basis_set(&base, &ord);
        for _ in 0..3 {
            gens.shuffle(&mut rng);
            let gb = buchberger(&Ideal::new(&ring, gens.clone()).map_err(e)?, &ord).map_err(e)?;
            ensure(gb.satisfies_buchberger_criterion().map_err(e)?, || format!("ideal {k}: S-pair not reducing to 0"))?;
            ensure(basis_set(&gb, &ord) == want, || format!("ideal {k}: basis depends on generator order"))?;
            bases += 1;
        }
    }
    Ok(format!("lex example exact; 50 ideals, {} bases, all S-pairs reduce to 0", bases + 50))
}

struct Triple {
    ring: Ring,
    j1: Ideal,
    j2: Ideal,
    i: Ideal,
}

fn quotient_suite() -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    (0..100)
        .map(|_| {
            let ring = q_ring(rng.random_range(2..=3));
            let ideal = |rng: &mut ChaCha8Rng| {
                let k = rng.random_range(1..=2);
                let gens = (0..k).map(|_| random_mono_or_binomial(rng, &ring, 3)).collect();
                Ideal::new(&ring, gens).unwrap()
            };
            let (j1, j2, i) = (ideal(&mut rng), ideal(&mut rng), ideal(&mut rng));
            Triple { ring, j1, j2, i }
        })
        .collect()
}

fn quotient_identities(suite: &[Triple]) -> Check {
    let ord = MonomialOrder::DegRevLex;
    for (k, t) in suite.iter().enumerate() {
        let ok = verify_quotient_identities(&[t.j1.clone(), t.j2.clone()], &t.i, &ord).map_err(e)?;
        ensure(ok, || format!("triple {k} over {} variables", t.ring.nvars()))?;
    }
    Ok(format!("{} triples", suite.len()))
}

fn quotient_containments(suite: &[Triple]) -> Check {
    let ord = MonomialOrder::DegRevLex;
    let mut checks = 0;
    for (k, t) in suite.iter().enumerate() {
        for base in [&t.j1, &t.j2] {
            let q = quotient_by_ideal(base, &t.i, &ord).map_err(e)?;
            let qgb = q.groebner(&ord).map_err(e)?;
            for g in base.generators() {
                ensure(qgb.contains(g).map_err(e)?, || format!("triple {k}: I not inside I:J"))?;
                checks += 1;
            }
            let bgb = base.groebner(&ord).map_err(e)?;
            for g in t.i.product(&q).map_err(e)?.generators() {
                ensure(bgb.contains(g).map_err(e)?, || format!("triple {k}: J(I:J) not inside I"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} memberships"))
}

fn intersection_oracle(suite: &[Triple]) -> Check {
    let ord = MonomialOrder::DegRevLex;
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let instances = 10;
    let mut hits = 0;
    for t in suite.iter().take(instances) {
        let (a, b) = (&t.j1, &t.j2);
        let gi = a.groebner(&ord).map_err(e)?;
        let gj = b.groebner(&ord).map_err(e)?;
        let gij = intersect(a, b, &ord).map_err(e)?.groebner(&ord).map_err(e)?;
        let pick = |rng: &mut ChaCha8Rng, id: &Ideal| id.generators()[rng.random_range(0..id.generators().len())].clone();
        for _ in 0..500 {
            let r = random_poly(&mut rng, &t.ring, 2, 2);
            let f = match rng.random_range(0..4) {
                0 => r,
                1 => &pick(&mut rng, a) * &r,
                2 => &pick(&mut rng, b) * &r,
                _ => &(&pick(&mut rng, a) * &pick(&mut rng, b)) * &r,
            };
            let lhs = gij.contains(&f).map_err(e)?;
            let rhs = gi.contains(&f).map_err(e)? && gj.contains(&f).map_err(e)?;
            ensure(lhs == rhs, || format!("disagreement on {f}"))?;
            hits += usize::from(lhs);
        }
    }
    // one direct check through the public membership entry point
    let t = &suite[0];
    let g = &t.j1.generators()[0] * &t.j2.generators()[0];
    ensure(member(&g, &intersect(&t.j1, &t.j2, &ord).map_err(e)?, &ord).map_err(e)?, || "product not in intersection".into())?;
    Ok(format!("{instances} instances x 500 polynomials, {hits} members"))
}

fn random_phase(rng: &mut ChaCha8Rng) -> Phase {
    let m = [1u64, 2, 4, 8][rng.random_range(0..4)];
    Phase::new(rng.random_range(0..m as i64), m)
}

fn skew_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let f = Field::Rational;
    let mut triples = 0;
    for n in 2..=4 {
        let upper: Vec<(usize, usize, Phase)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (i, j, random_phase(&mut rng))).collect();
        let q = SkewMatrix::from_upper(n, &upper).map_err(e)?;
        let mut v = vec![vec![Phase::ONE; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                v[i][j] = random_phase(&mut rng);
                v[j][i] = v[i][j].inv();
            }
        }
        let chi = Bicharacter::new(v).map_err(e)?;
        let word = |rng: &mut ChaCha8Rng| -> Vec<(usize, i32)> {
            (0..rng.random_range(0..=4)).map(|_| (rng.random_range(0..n), if rng.random_bool(0.5) { 1 } else { -1 })).collect()
        };
        for _ in 0..200 {
            let a = skew_normal_form(&word(&mut rng), &q, f).map_err(e)?;
            let b = skew_normal_form(&word(&mut rng), &q, f).map_err(e)?;
            let c = skew_normal_form(&word(&mut rng), &q, f).map_err(e)?;
            let left = twist_product(&twist_product(&a, &b, &chi).map_err(e)?, &c, &chi).map_err(e)?;
            let right = twist_product(&a, &twist_product(&b, &c, &chi).map_err(e)?, &chi).map_err(e)?;
            ensure(left == right, || format!("star product not associative for n = {n}"))?;
            triples += 1;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let d = faithfulness_defect(i, j, &q, &chi).map_err(e)? * faithfulness_defect(j, i, &q, &chi).map_err(e)?;
                    ensure(d.is_one(), || format!("defect({i},{j}) defect({j},{i}) = {d}"))?;
                }
            }
        }
    }
    for n in 2..=6 {
        let q = involutive_q(n).map_err(e)?;
        let chi = Bicharacter::square_root_of(&q).map_err(e)?;
        let r = braid_check(n, &Grading::standard(n), &q, &chi).map_err(e)?;
        ensure(r.all_pass(), || format!("braid check fails for n = {n}:\n{r}"))?;
    }
    let q = SkewMatrix::from_upper(3, &[(0, 2, Phase::minus_one())]).map_err(e)?;
    let r = braid_check(3, &Grading::standard(3), &q, &Bicharacter::trivial(3)).map_err(e)?;
    let witness: Vec<BraidRelation> = r.failures().map(|c| c.relation).collect();
    ensure(witness == [BraidRelation::FarCommutation(0, 2)], || format!("witness {witness:?}"))?;
    Ok(format!("{triples} associativity triples; braid n = 2..6; witness `{}`", witness[0]))
}

fn clifford_structure() -> Check {
    let f = Field::Rational;
    for d in 1..=6 {
        let got = basis_dimension(d, None).map_err(e)?;
        ensure(got == 1 << d, || format!("dimension {got} for D = {d}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for d in 1..=4 {
        for _ in 0..5 {
            let mut eta = vec![vec![f.zero(); d]; d];
            for i in 0..d {
                for j in i..d {
                    let v = &f.from_i64(rng.random_range(-3..=3)) * &f.from_i64(rng.random_range(1..=3)).inv().unwrap();
                    eta[i][j] = v.clone();
                    eta[j][i] = v;
                }
            }
            let sig = Signature::new(f, eta.clone()).map_err(e)?;
            ensure(basis_dimension(d, Some(&sig)).map_err(e)? == 1 << d, || "dimension with form".into())?;
            for i in 0..d {
                for j in 0..d {
                    let (ei, ej) = (CliffordElement::generator(&sig, i).map_err(e)?, CliffordElement::generator(&sig, j).map_err(e)?);
                    let anti = clifford_product(&ei, &ej).map_err(e)?.add(&clifford_product(&ej, &ei).map_err(e)?).map_err(e)?;
                    let want = CliffordElement::scalar(&sig, &f.from_i64(2) * &eta[i][j]);
                    ensure(anti.sub(&want).map_err(e)?.is_zero(), || format!("{{e{}, e{}}} = {anti}", i + 1, j + 1))?;
                }
            }
        }
    }
    let mut blades = 0;
    for d in 1..=6usize {
        let sig = Signature::zero(f, d);
        for mask in 1u32..(1 << d) {
            let blade: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
            let x = CliffordElement::word(&sig, &blade, f.one()).map_err(e)?;
            ensure(grassmann_product(&x, &x).map_err(e)?.is_zero(), || format!("{x} ^ {x} != 0"))?;
            blades += 1;
        }
    }
    Ok(format!("2^D for D <= 6; anticommutators for 20 forms; {blades} nilpotent blades"))
}

fn clh_relations() -> Check {
    let mut n = 0;
    for d in 1..=4 {
        let r = clh_morphism_check(d, Field::Rational).map_err(e)?;
        ensure(r.all_pass(), || format!("D = {d}:\n{r}"))?;
        n += r.checks.len();
    }
    Ok(format!("{n} relations over D = 1..4"))
}

fn toric_checks() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut cones = 0;
    while cones < 30 {
        let dim = rng.random_range(2..=3);
        let k = rng.random_range(dim..=dim + 2);
        let rays: Vec<Vec<i64>> = (0..k).map(|_| (0..dim).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let Ok(c) = Cone::new(dim, rays) else { continue };
        if c.span_rank() != dim || !c.is_pointed().map_err(e)? {
            continue;
        }
        let dd = dual_cone(&dual_cone(&c).map_err(e)?).map_err(e)?;
        let want = Cone::new(dim, c.extreme_rays()).map_err(e)?;
        ensure(dd.ray_set() == want.ray_set(), || format!("double dual of {c} is {dd}"))?;
        cones += 1;
    }
    for d in 1..=3 {
        let fan = projective_fan(d).map_err(e)?;
        ensure(is_complete(&fan, 200, 8).map_err(e)?.complete, || format!("P^{d} fan incomplete"))?;
        ensure(fan.cones().iter().all(is_regular), || format!("P^{d} fan has a singular cone"))?;
    }
    let mut ideals = 0;
    while ideals < 20 {
        let dim = rng.random_range(1..=2);
        let k = rng.random_range(2..=4);
        let gens: Vec<Vec<i64>> = (0..k).map(|_| (0..dim).map(|_| rng.random_range(0..=3)).collect()).collect();
        if gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
            continue;
        }
        let ideal = toric_ideal(&gens).map_err(e)?;
        for g in ideal.groebner(&MonomialOrder::DegRevLex).map_err(e)?.elements() {
            ensure(monomial_image(g, &gens).is_empty(), || format!("{g} does not vanish on {gens:?}"))?;
        }
        ideals += 1;
    }
    Ok(format!("{cones} double duals; P^1..P^3 complete and regular; {ideals} toric ideals vanish"))
}

fn estimator_coverage() -> Check {
    let delta = Rational64::new(1, 10);
    let circuits = [
        ("I", GateCircuit::with_gates(1, &[]).map_err(e)?, vec![0u8]),
        ("X", GateCircuit::with_gates(1, &[Gate::X(0)]).map_err(e)?, vec![0]),
        ("H", GateCircuit::with_gates(1, &[Gate::H(0)]).map_err(e)?, vec![0]),
        ("CNOT-pair", GateCircuit::with_gates(2, &[Gate::H(0), Gate::Cnot(0, 1)]).map_err(e)?, vec![0, 0]),
    ];
    let mut report = Vec::new();
    for (name, c, x) in &circuits {
        let exact = amplitude(c, x).map_err(e)?;
        let mut inside = 0;
        for k in 0..200 {
            let cfg = EstimateConfig::new(delta, trial_seed(9, k));
            let z = additive_estimate(c, x, &cfg).map_err(e)?.z;
            inside += usize::from((z - exact).norm() <= 0.1);
        }
        ensure(inside >= 150, || format!("{name}: coverage {inside}/200"))?;
        report.push(format!("{name} {inside}/200"));
    }
    for (name, idx, want) in [("I", 0, Decision::Accept), ("X", 1, Decision::Reject)] {
        let (_, c, x) = &circuits[idx];
        let mut agree = 0;
        for k in 0..200 {
            let cfg = EstimateConfig::new(delta, trial_seed(10, k));
            agree += usize::from(bqp_decide(c, x, &cfg, Thresholds::default()).map_err(e)? == want);
        }
        ensure(agree >= 190, || format!("{name}: {agree}/200 {want}"))?;
        report.push(format!("{name} {want} {agree}/200"));
    }
    Ok(report.join(", "))
}

fn cli_goldens() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut progs: Vec<_> = std::fs::read_dir(&dir)
        .map_err(e)?
        .map(|d| d.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "qt"))
        .collect();
    progs.sort();
    ensure(progs.len() == 12, || format!("{} golden programs", progs.len()))?;
    let csv = std::env::temp_dir().join(format!("qtoric-accept-{}.csv", std::process::id()));
    for p in &progs {
        let opts = RunOptions { seed: 1, out: Some(csv.clone()), ..RunOptions::default() };
        let mut out = Vec::new();
        let code = run_source(&std::fs::read_to_string(p).map_err(e)?, &opts, &mut out, &mut Vec::new());
        let want = std::fs::read(p.with_extension("out")).map_err(e)?;
        ensure(code == 0 && out == want, || format!("{} differs", p.display()))?;
    }
    let _ = std::fs::remove_file(csv);

    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let ring = Ring::new(Field::Rational, &["x", "y", "z"]);
    for _ in 0..1000 {
        let k = rng.random_range(0..=5);
        let p = random_poly(&mut rng, &ring, k, 4);
        let ord = if rng.random_bool(0.5) { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let back = parse_polynomial(&ring, &p.display(&ord).to_string()).map_err(e)?;
        ensure(back == p, || format!("round trip of {p}"))?;
    }
    Ok("12 programs byte-identical; 1000 round trips".into())
}

fn bench_integrity() -> Check {
    let go = || -> Result<String, String> {
        let mut buf = Vec::new();
        gb_scaling_bench(Family::RandomBinomial, 1..=5, 2, &MonomialOrder::DegRevLex, 2024, &mut buf).map_err(e)?;
        gb_scaling_bench(Family::KatsuraLike, 1..=4, 1, &MonomialOrder::Lex, 2024, &mut buf).map_err(e)?;
        String::from_utf8(buf).map_err(e)
    };
    let (a, b) = (go()?, go()?);
    let mut sizes = Vec::new();
    for text in [&a, &b] {
        let mut rows = Vec::new();
        for line in text.lines() {
            if line == BENCH_HEADER {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            ensure(cols.len() == 7, || format!("row `{line}`"))?;
            ensure(Family::parse(cols[0]).is_ok(), || format!("family `{}`", cols[0]))?;
            for c in [1, 2, 4, 5] {
                cols[c].parse::<usize>().map_err(|_| format!("column {c} of `{line}`"))?;
            }
            cols[6].parse::<u128>().map_err(|_| format!("time in `{line}`"))?;
            rows.push(cols[..6].join(","));
        }
        ensure(text.lines().filter(|l| *l == BENCH_HEADER).count() == 2, || "missing header".into())?;
        sizes.push(rows);
    }
    ensure(sizes[0] == sizes[1], || "basis sizes differ between runs".into())?;
    Ok(format!("{} rows, schema ok, deterministic", sizes[0].len()))
}

fn main() {
    let suite = quotient_suite();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("groebner correctness", Box::new(groebner_correctness)),
        ("quotient identities", Box::new(|| quotient_identities(&suite))),
        ("quotient containments", Box::new(|| quotient_containments(&suite))),
        ("intersection oracle", Box::new(|| intersection_oracle(&suite))),
        ("skew/twist laws", Box::new(skew_laws)),
        ("clifford structure", Box::new(clifford_structure)),
        ("clifford-hopf relations", Box::new(clh_relations)),
        ("toric", Box::new(toric_checks)),
        ("estimator coverage", Box::new(estimator_coverage)),
        ("cli goldens", Box::new(cli_goldens)),
        ("bench integrity", Box::new(bench_integrity)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS {:>2} {name} ({secs:.2}s): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
