//! Executes parsed programs and renders results in canonical text form.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use num_rational::{BigRational, Rational64};

use qtoric_core::clifford_hopf::{
    basis_dimension, clh_apply, clh_morphism_check, clifford_product, grassmann_product, ClhElement,
    CliffordElement, Signature,
};
use qtoric_core::error::{Error, Result};
use qtoric_core::estimator::{
    additive_estimate, amplitude, bqp_decide, gb_scaling_bench, EstimateConfig, GateCircuit, Thresholds,
};
use qtoric_core::field::{Field, Phase};
use qtoric_core::groebner::{buchberger, member, s_polynomial, Ideal};
use qtoric_core::ideal_ops::{
    check_quotient_identities, intersect, quotient_by_ideal, quotient_by_poly, quotient_ring_nf,
};
use qtoric_core::poly::{compare_monomials, leading_monomial, reduce_mod_set, MonomialOrder, Polynomial};
use qtoric_core::skew_twist::{
    braid_check, faithfulness_defect, involutive_q, skew_normal_form, twist_product, Bicharacter, Grading,
    SkewMatrix,
};
use qtoric_core::toric::{
    dual_cone, fmt_vec, hilbert_basis, is_complete, is_regular, projective_fan, toric_ideal, Cone, Fan,
};

use crate::parser::{
    as_monomial, parse_program, BasisDimArg, ClhFactor, Command, FanArg, Matrix, ParseErrorKind, Program,
    QuotArg, RawCircuit, RawCone, StatementKind, ToricGens, Word,
};

/// Random directions tried by `complete` after the fixed ones.
pub const COVERAGE_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub samples: Option<usize>,
    pub delta: Rational64,
    /// Destination for bench CSV; stdout when absent.
    pub out: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, samples: None, delta: Rational64::new(1, 10), out: None }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;

/// A failed command and the line it started on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunError {
    pub line: usize,
    pub error: Error,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

/// Runs every command in order, stopping at the first failure.
pub fn run(p: &Program, opts: &RunOptions, out: &mut dyn Write) -> std::result::Result<(), RunError> {
    for st in &p.statements {
        if let StatementKind::Command(cmd) = &st.kind {
            let text = execute(cmd, opts).map_err(|error| RunError { line: st.line, error })?;
            if !text.is_empty() {
                writeln!(out, "{text}").map_err(|e| RunError { line: st.line, error: e.into() })?;
            }
        }
    }
    Ok(())
}

/// Parses and runs `text`, writing results to `out` and diagnostics to `err`.
pub fn run_source(text: &str, opts: &RunOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let program = match parse_program(text) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if e.kind == ParseErrorKind::Domain { EXIT_DOMAIN } else { EXIT_SYNTAX };
        }
    };
    match run(&program, opts, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn lines<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    items.into_iter().map(f).collect::<Vec<_>>().join("\n")
}

fn basis_text(ideal: &Ideal, ord: &MonomialOrder) -> Result<String> {
    let gb = buchberger(ideal, ord)?;
    if gb.is_empty() {
        return Ok("0".into());
    }
    Ok(lines(gb.elements(), |p| p.display(ord).to_string()))
}

fn phases(m: &Matrix) -> Result<Vec<Vec<Phase>>> {
    m.iter().map(|row| row.iter().map(Phase::from_angle).collect()).collect()
}

fn skew_matrix(m: &Matrix) -> Result<SkewMatrix> {
    SkewMatrix::new(phases(m)?)
}

fn bicharacter(m: &Matrix) -> Result<Bicharacter> {
    Bicharacter::new(phases(m)?)
}

fn signature(m: &Matrix) -> Result<Signature> {
    let f = Field::Rational;
    let eta = m
        .iter()
        .map(|row| row.iter().map(|v| f.from_rational(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Signature::new(f, eta)
}

fn cone(c: &RawCone) -> Result<Cone> {
    Cone::new(c.dim, c.rays.clone())
}

fn circuit(c: &RawCircuit) -> Result<GateCircuit> {
    GateCircuit::with_gates(c.n, &c.gates)
}

fn config(opts: &RunOptions) -> EstimateConfig {
    EstimateConfig { delta: opts.delta, seed: opts.seed, samples: opts.samples }
}

fn check_word(word: &Word, n: usize) -> Result<()> {
    if let Some(&(i, _)) = word.iter().find(|&&(i, _)| i >= n) {
        return Err(Error::Dimension(format!("generator {} out of range for q of size {n}", i + 1)));
    }
    Ok(())
}

fn monomial_of(p: &Polynomial) -> Result<qtoric_core::poly::Monomial> {
    as_monomial(p).ok_or_else(|| Error::InvalidConfig(format!("`{p}` is not a monomial")))
}

fn clh_word(d: usize, word: &[ClhFactor]) -> Result<ClhElement> {
    let f = Field::Rational;
    let mut acc = ClhElement::one(d, f);
    for &w in word {
        let g = match w {
            ClhFactor::Gamma(i) => ClhElement::gamma(d, f, i)?,
            ClhFactor::E(i) => ClhElement::e(d, f, i)?,
        };
        acc = acc.mul(&g)?;
    }
    Ok(acc)
}

fn complex(re: f64, im: f64) -> String {
    format!("{:.12} {} {:.12}i", re, if im < 0.0 { "-" } else { "+" }, im.abs())
}

fn phase_rows(q: &SkewMatrix) -> String {
    lines(q.entries(), |row| lines(row, |p| p.to_string()).replace('\n', " "))
}

/// Executes one command and returns its output without a trailing newline.
pub fn execute(cmd: &Command, opts: &RunOptions) -> Result<String> {
    Ok(match cmd {
        Command::Gb { ideal, order } => basis_text(ideal, order)?,
        Command::Nf { poly, ideal, order } => quotient_ring_nf(poly, ideal, order)?.display(order).to_string(),
        Command::Member { poly, ideal, order } => member(poly, ideal, order)?.to_string(),
        Command::Intersect { a, b, order } => basis_text(&intersect(a, b, order)?, order)?,
        Command::Quot { a, by, order } => {
            let q = match by {
                QuotArg::Ideal(j) => quotient_by_ideal(a, j, order)?,
                QuotArg::Poly(f) => quotient_by_poly(a, f, order)?,
            };
            basis_text(&q, order)?
        }
        Command::CheckQuotients { ideals, by, order } => {
            let r = check_quotient_identities(ideals, by, order)?;
            let pf = |b: bool| if b { "PASS" } else { "FAIL" };
            format!("intersection rule: {}\nsum rule: {}", pf(r.intersection_rule), pf(r.sum_rule))
        }
        Command::Expand { poly, order } => poly.display(order).to_string(),
        Command::Lm { poly, order } => {
            let (m, c) = leading_monomial(poly, order)?;
            let names = poly.ring().vars();
            format!("{} (coefficient {c})", if m.is_one() { "1".into() } else { m.display(names).to_string() })
        }
        Command::Spoly { f, g, order } => s_polynomial(f, g, order)?.display(order).to_string(),
        Command::Reduce { f, by, order } => reduce_mod_set(f, by, order)?.display(order).to_string(),
        Command::Compare { a, b, order } => {
            let o = compare_monomials(&monomial_of(a)?, &monomial_of(b)?, order)?;
            match o {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            }
            .into()
        }
        Command::SkewNf { q, word, ring } => {
            let q = skew_matrix(q)?;
            check_word(word, q.size())?;
            skew_normal_form(word, &q, ring.field())?.display(ring.vars()).to_string()
        }
        Command::Twist { q, chi, a, b, ring } => {
            let q = skew_matrix(q)?;
            let chi = bicharacter(chi)?;
            check_word(a, q.size())?;
            check_word(b, q.size())?;
            let x = skew_normal_form(a, &q, ring.field())?;
            let y = skew_normal_form(b, &q, ring.field())?;
            twist_product(&x, &y, &chi)?.display(ring.vars()).to_string()
        }
        Command::Defect { q, chi, i, j } => {
            faithfulness_defect(*i, *j, &skew_matrix(q)?, &bicharacter(chi)?)?.to_string()
        }
        Command::BraidCheck { q, chi } => {
            let q = skew_matrix(q)?;
            let chi = bicharacter(chi)?;
            braid_check(q.size(), &Grading::standard(q.size()), &q, &chi)?.to_string()
        }
        Command::InvolutiveQ { n } => phase_rows(&involutive_q(*n)?),
        Command::Clifford { eta, a, b } => {
            let sig = signature(eta)?;
            let one = sig.field().one();
            let x = CliffordElement::word(&sig, a, one.clone())?;
            let y = CliffordElement::word(&sig, b, one)?;
            clifford_product(&x, &y)?.to_string()
        }
        Command::Grassmann { d, a, b } => {
            let sig = Signature::zero(Field::Rational, *d);
            let one = sig.field().one();
            let x = CliffordElement::word(&sig, a, one.clone())?;
            let y = CliffordElement::word(&sig, b, one)?;
            grassmann_product(&x, &y)?.to_string()
        }
        Command::BasisDim { arg } => match arg {
            BasisDimArg::Plain(d) => basis_dimension(*d, None)?,
            BasisDimArg::Form(m) => {
                let sig = signature(m)?;
                basis_dimension(sig.dim(), Some(&sig))?
            }
        }
        .to_string(),
        Command::ClhCheck { d } => clh_morphism_check(*d, Field::Rational)?.to_string(),
        Command::ClhApply { map, d, word } => clh_apply(*map, &clh_word(*d, word)?).to_string(),
        Command::DualCone { cone: c } => dual_cone(&cone(c)?)?.to_string(),
        Command::Hilbert { cone: c } => {
            let hb = hilbert_basis(&cone(c)?)?;
            lines(hb, |v| fmt_vec(&v))
        }
        Command::Regular { cone: c } => is_regular(&cone(c)?).to_string(),
        Command::ToricIdeal { gens } => {
            let points = match gens {
                ToricGens::Points(p) => p.clone(),
                ToricGens::HilbertOf(c) => hilbert_basis(&cone(c)?)?,
            };
            let ideal = toric_ideal(&points)?;
            basis_text(&ideal, &MonomialOrder::DegRevLex)?
        }
        Command::Fan { d } => projective_fan(*d)?.to_string(),
        Command::Complete { fan } => {
            let f = match fan {
                FanArg::Projective(d) => projective_fan(*d)?,
                FanArg::Cones(cs) => {
                    let cones = cs.iter().map(cone).collect::<Result<Vec<_>>>()?;
                    let dim = cones[0].dim();
                    Fan::new(dim, cones)?
                }
            };
            let cov = is_complete(&f, COVERAGE_SAMPLES, opts.seed)?;
            match cov.witness {
                None => "complete".into(),
                Some(w) => format!("incomplete: {} is outside every cone", fmt_vec(&w)),
            }
        }
        Command::Amplitude { circuit: c, bits } => {
            let a = amplitude(&circuit(c)?, bits)?;
            complex(a.re, a.im)
        }
        Command::Estimate { circuit: c, bits } => additive_estimate(&circuit(c)?, bits, &config(opts))?.to_string(),
        Command::Decide { circuit: c, bits, accept, reject } => {
            let mut t = Thresholds::default();
            if let (Some(a), Some(r)) = (accept, reject) {
                t = Thresholds { accept: *a, reject: *r };
            }
            bqp_decide(&circuit(c)?, bits, &config(opts), t)?.to_string()
        }
        Command::Bench { family, from, to, d, order } => match &opts.out {
            Some(path) => {
                let file = File::create(path)?;
                let rows = gb_scaling_bench(*family, *from..=*to, *d, order, opts.seed, file)?;
                lines(rows, |r| {
                    format!(
                        "{} n={} d={} order={} generators={} basis_size={}",
                        r.family.name(),
                        r.n,
                        r.d,
                        r.order,
                        r.generators,
                        r.basis_size
                    )
                })
            }
            None => {
                let mut buf = Vec::new();
                gb_scaling_bench(*family, *from..=*to, *d, order, opts.seed, &mut buf)?;
                String::from_utf8(buf).expect("csv is utf-8").trim_end().to_string()
            }
        },
    })
}

/// Reads a `k/m` or integer flag value.
pub fn parse_delta(s: &str) -> std::result::Result<Rational64, String> {
    let r: BigRational = s.trim().parse().map_err(|_| format!("`{s}` is not a rational k/m"))?;
    let (n, d) = (r.numer().try_into(), r.denom().try_into());
    match (n, d) {
        (Ok(n), Ok(d)) => Ok(Rational64::new(n, d)),
        _ => Err(format!("`{s}` is too large")),
    }
}

/// Reads all of stdin.
pub fn read_stdin() -> io::Result<String> {
    io::read_to_string(io::stdin())
}
