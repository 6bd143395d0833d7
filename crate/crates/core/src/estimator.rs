//! Dense statevector simulation of small Clifford+S circuits, the sampled
//! additive estimate of a diagonal amplitude, a threshold decision rule on
//! its square, and a Buchberger timing benchmark.

use std::fmt;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, Ideal};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

pub const MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    S(usize),
    Cnot(usize, usize),
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(i) => write!(f, "H {i}"),
            Gate::X(i) => write!(f, "X {i}"),
            Gate::Z(i) => write!(f, "Z {i}"),
            Gate::S(i) => write!(f, "S {i}"),
            Gate::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(n: usize) -> Result<GateCircuit> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidConfig(format!("{n} qubits, expected 1..={MAX_QUBITS}")));
        }
        Ok(GateCircuit { n, gates: Vec::new() })
    }

    pub fn with_gates(n: usize, gates: &[Gate]) -> Result<GateCircuit> {
        let mut c = GateCircuit::new(n)?;
        for &g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        let ok = match g {
            Gate::H(i) | Gate::X(i) | Gate::Z(i) | Gate::S(i) => i < self.n,
            Gate::Cnot(c, t) => c < self.n && t < self.n && c != t,
        };
        if !ok {
            return Err(Error::InvalidConfig(format!("gate `{g}` on {} qubits", self.n)));
        }
        self.gates.push(g);
        Ok(())
    }

    /// One gate per line or `;`-separated, e.g. `H 0; CNOT 0 1`.
    pub fn parse(n: usize, text: &str) -> Result<GateCircuit> {
        let mut c = GateCircuit::new(n)?;
        for item in text.split(['\n', ';']) {
            let words: Vec<&str> = item.split_whitespace().collect();
            if words.is_empty() {
                continue;
            }
            let idx = |k: usize| -> Result<usize> {
                words
                    .get(k)
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| Error::InvalidConfig(format!("bad gate `{}`", item.trim())))
            };
            let arity = if words[0].eq_ignore_ascii_case("CNOT") { 3 } else { 2 };
            if words.len() != arity {
                return Err(Error::InvalidConfig(format!("bad gate `{}`", item.trim())));
            }
            let g = match words[0].to_ascii_uppercase().as_str() {
                "H" => Gate::H(idx(1)?),
                "X" => Gate::X(idx(1)?),
                "Z" => Gate::Z(idx(1)?),
                "S" => Gate::S(idx(1)?),
                "CNOT" => Gate::Cnot(idx(1)?, idx(2)?),
                other => return Err(Error::InvalidConfig(format!("unknown gate `{other}`"))),
            };
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Applies the circuit to a statevector indexed by `Σ x_i 2^i`.
    pub fn apply(&self, state: &mut [Complex64]) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for g in &self.gates {
            match *g {
                Gate::H(q) => {
                    let m = 1 << q;
                    for i in (0..state.len()).filter(|i| i & m == 0) {
                        let (a, b) = (state[i], state[i | m]);
                        state[i] = (a + b) * h;
                        state[i | m] = (a - b) * h;
                    }
                }
                Gate::X(q) => {
                    let m = 1 << q;
                    for i in (0..state.len()).filter(|i| i & m == 0) {
                        state.swap(i, i | m);
                    }
                }
                Gate::Z(q) => {
                    for (i, s) in state.iter_mut().enumerate() {
                        if i >> q & 1 == 1 {
                            *s = -*s;
                        }
                    }
                }
                Gate::S(q) => {
                    for (i, s) in state.iter_mut().enumerate() {
                        if i >> q & 1 == 1 {
                            *s *= Complex64::i();
                        }
                    }
                }
                Gate::Cnot(c, t) => {
                    let (mc, mt) = (1 << c, 1 << t);
                    for i in (0..state.len()).filter(|i| i & mc != 0 && i & mt == 0) {
                        state.swap(i, i | mt);
                    }
                }
            }
        }
    }

    /// Columns of the full unitary.
    pub fn unitary(&self) -> Vec<Vec<Complex64>> {
        let dim = 1 << self.n;
        (0..dim)
            .map(|j| {
                let mut col = vec![Complex64::new(0.0, 0.0); dim];
                col[j] = Complex64::new(1.0, 0.0);
                self.apply(&mut col);
                col
            })
            .collect()
    }
}

impl fmt::Display for GateCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.gates.iter().map(Gate::to_string).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// Parses a bitstring such as `"010"`, character `i` being qubit `i`.
pub fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::InvalidConfig(format!("bad bitstring `{s}`"))),
        })
        .collect()
}

fn basis_index(c: &GateCircuit, x: &[u8]) -> Result<usize> {
    if x.len() != c.n {
        return Err(Error::Dimension(format!("bitstring of length {} for {} qubits", x.len(), c.n)));
    }
    if x.iter().any(|&b| b > 1) {
        return Err(Error::InvalidConfig("bitstring entries must be 0 or 1".into()));
    }
    Ok(x.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum())
}

/// `<x|U|x>`.
pub fn amplitude(c: &GateCircuit, x: &[u8]) -> Result<Complex64> {
    let idx = basis_index(c, x)?;
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << c.n];
    state[idx] = Complex64::new(1.0, 0.0);
    c.apply(&mut state);
    Ok(state[idx])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateConfig {
    pub delta: Rational64,
    pub seed: u64,
    pub samples: Option<usize>,
}

impl EstimateConfig {
    pub fn new(delta: Rational64, seed: u64) -> EstimateConfig {
        EstimateConfig { delta, seed, samples: None }
    }

    /// Samples per part: explicit, or the Hoeffding count for `±1` variables
    /// that keeps each part within `δ/√2` except with probability `1/8`,
    /// `ceil(4 ln 16 / δ²)`.
    pub fn sample_count(&self) -> Result<usize> {
        let d = self.delta_f64()?;
        if let Some(n) = self.samples {
            if n == 0 {
                return Err(Error::InvalidConfig("sample count must be positive".into()));
            }
            return Ok(n);
        }
        Ok((4.0 * 16f64.ln() / (d * d)).ceil() as usize)
    }

    fn delta_f64(&self) -> Result<f64> {
        if *self.delta.numer() <= 0 {
            return Err(Error::InvalidConfig(format!("delta = {} must be positive", self.delta)));
        }
        Ok(self.delta.to_f64().expect("finite ratio"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub z: Complex64,
    pub n_samples: usize,
    pub delta: Rational64,
}

impl fmt::Display for EstimateResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z = {:.6} {} {:.6}i (N = {}, delta = {})",
            self.z.re,
            if self.z.im < 0.0 { "-" } else { "+" },
            self.z.im.abs(),
            self.n_samples,
            self.delta
        )
    }
}

fn pm_mean(rng: &mut ChaCha8Rng, mean: f64, n: usize) -> f64 {
    let p = ((1.0 + mean) / 2.0).clamp(0.0, 1.0);
    let sum: i64 = (0..n).map(|_| if rng.random_bool(p) { 1 } else { -1 }).sum();
    sum as f64 / n as f64
}

/// Empirical mean of `X + iY` with independent `±1` samples of means
/// `Re <x|U|x>` and `Im <x|U|x>`.
pub fn additive_estimate(c: &GateCircuit, x: &[u8], cfg: &EstimateConfig) -> Result<EstimateResult> {
    let n = cfg.sample_count()?;
    let a = amplitude(c, x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let re = pm_mean(&mut rng, a.re, n);
    let im = pm_mean(&mut rng, a.im, n);
    Ok(EstimateResult {
        z: Complex64::new(re, im),
        n_samples: n,
        delta: cfg.delta,
    })
}

/// Seed of trial `k` under base seed `seed`.
pub fn trial_seed(seed: u64, k: u64) -> u64 {
    ChaCha8Rng::seed_from_u64(seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)).random()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub accept: Rational64,
    pub reject: Rational64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            accept: Rational64::new(3, 4),
            reject: Rational64::new(1, 4),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
    Inconclusive,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
            Decision::Inconclusive => "inconclusive",
        })
    }
}

/// Compares `|Z|²` against the thresholds.
pub fn bqp_decide(c: &GateCircuit, x: &[u8], cfg: &EstimateConfig, t: Thresholds) -> Result<Decision> {
    if t.accept <= t.reject {
        return Err(Error::InvalidConfig(format!(
            "accept threshold {} must exceed reject threshold {}",
            t.accept, t.reject
        )));
    }
    let est = additive_estimate(c, x, cfg)?;
    let p = est.z.norm_sqr();
    let acc = t.accept.to_f64().expect("finite");
    let rej = t.reject.to_f64().expect("finite");
    Ok(if p >= acc {
        Decision::Accept
    } else if p <= rej {
        Decision::Reject
    } else {
        Decision::Inconclusive
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    RandomBinomial,
    KatsuraLike,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::RandomBinomial => "random-binomial",
            Family::KatsuraLike => "katsura-like",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "random-binomial" => Ok(Family::RandomBinomial),
            "katsura-like" => Ok(Family::KatsuraLike),
            _ => Err(Error::InvalidConfig(format!("unknown family `{s}`"))),
        }
    }
}

pub const BENCH_PRIME: u64 = 32003;
pub const BENCH_HEADER: &str = "family,n,d,order,generators,basis_size,wall_time_ns";

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<i32> {
    let deg = rng.random_range(1..=d);
    let mut e = vec![0i32; n];
    for _ in 0..deg {
        e[rng.random_range(0..n)] += 1;
    }
    e
}

/// The seeded ideal of `family` in `n` variables over `F_32003`.
pub fn bench_ideal(family: Family, n: usize, d: usize, seed: u64) -> Result<Ideal> {
    let ring = Ring::with_nvars(Field::prime(BENCH_PRIME)?, n);
    let f = ring.field();
    let mut gens = Vec::new();
    match family {
        Family::RandomBinomial => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32 ^ d as u64);
            while gens.len() < n {
                let a = random_monomial(&mut rng, n, d);
                let b = random_monomial(&mut rng, n, d);
                if a == b {
                    continue;
                }
                let c = f.from_i64(rng.random_range(1..BENCH_PRIME as i64));
                gens.push(Polynomial::from_terms(&ring, [(Monomial::new(a), f.one()), (Monomial::new(b), -c)]));
            }
        }
        Family::KatsuraLike => {
            // u_{-l} = u_l, u_l = 0 outside 0..n
            let u = |l: i64| -> Option<Polynomial> {
                let l = l.unsigned_abs() as usize;
                (l < n).then(|| Polynomial::var(&ring, l))
            };
            for m in 0..n as i64 - 1 {
                let mut p = Polynomial::zero(&ring);
                for l in -(n as i64 - 1)..n as i64 {
                    if let (Some(a), Some(b)) = (u(l), u(m - l)) {
                        p = &p + &(&a * &b);
                    }
                }
                p = &p - &u(m).expect("m < n");
                gens.push(p);
            }
            let mut lin = Polynomial::constant(&ring, -f.one());
            for l in 0..n {
                let c = if l == 0 { f.one() } else { f.from_i64(2) };
                lin = &lin + &Polynomial::var(&ring, l).scale(&c);
            }
            gens.push(lin);
        }
    }
    Ideal::new(&ring, gens)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub order: String,
    pub generators: usize,
    pub basis_size: usize,
    pub wall_time_ns: u128,
}

/// Times `buchberger` on each member of the family and writes one CSV row
/// per `n`. No complexity claim is attached to the numbers.
pub fn gb_scaling_bench<W: Write>(
    family: Family,
    n_range: std::ops::RangeInclusive<usize>,
    d: usize,
    ord: &MonomialOrder,
    seed: u64,
    out: W,
) -> Result<Vec<BenchRow>> {
    if *n_range.start() == 0 || *n_range.end() > 8 {
        return Err(Error::InvalidConfig("n must lie in 1..=8".into()));
    }
    if d == 0 || d > 4 {
        return Err(Error::InvalidConfig("d must lie in 1..=4".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BENCH_HEADER.split(','))
        .map_err(|e| Error::Io(e.to_string()))?;
    let mut rows = Vec::new();
    for n in n_range {
        let ideal = bench_ideal(family, n, d, seed)?;
        let start = Instant::now();
        let gb = buchberger(&ideal, ord)?;
        let row = BenchRow {
            family,
            n,
            d,
            order: ord.to_string(),
            generators: ideal.generators().len(),
            basis_size: gb.len(),
            wall_time_ns: start.elapsed().as_nanos(),
        };
        w.write_record([
            row.family.name().to_string(),
            row.n.to_string(),
            row.d.to_string(),
            row.order.clone(),
            row.generators.to_string(),
            row.basis_size.to_string(),
            row.wall_time_ns.to_string(),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
        rows.push(row);
    }
    w.flush()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn circ(n: usize, text: &str) -> GateCircuit {
        GateCircuit::parse(n, text).unwrap()
    }

    #[test]
    fn amplitude_examples() {
        let id = GateCircuit::new(2).unwrap();
        assert!((amplitude(&id, &[0, 0]).unwrap() - Complex64::new(1.0, 0.0)).norm() < TOL);
        let h = circ(1, "H 0");
        assert!((amplitude(&h, &[0]).unwrap().re - 0.7071067811865476).abs() < TOL);
        assert!(amplitude(&circ(1, "X 0"), &[0]).unwrap().norm() < TOL);
        let hsh = circ(1, "H 0; S 0; H 0");
        // H S H |0> = ((1+i)|0> + (1-i)|1>)/2
        assert!((amplitude(&hsh, &[0]).unwrap() - Complex64::new(0.5, 0.5)).norm() < TOL);
        let bell = circ(2, "H 0\nCNOT 0 1");
        assert!((amplitude(&bell, &[0, 0]).unwrap().re - 0.7071067811865476).abs() < TOL);
        assert!(amplitude(&bell, &[0]).is_err());
    }

    #[test]
    fn parse_rejects_bad_gates() {
        assert!(GateCircuit::parse(2, "CNOT 0 0").is_err());
        assert!(GateCircuit::parse(2, "H 2").is_err());
        assert!(GateCircuit::parse(2, "T 0").is_err());
        assert!(GateCircuit::parse(11, "").is_err());
        assert_eq!(circ(2, "h 0; cnot 0 1").to_string(), "H 0\nCNOT 0 1");
    }

    #[test]
    fn unitarity() {
        let c = circ(3, "H 0; S 1; CNOT 0 2; Z 1; H 2; X 0; CNOT 2 1; S 2");
        let u = c.unitary();
        for (i, a) in u.iter().enumerate() {
            for (j, b) in u.iter().enumerate() {
                let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(expected, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn estimate_is_deterministic_and_validated() {
        let cfg = EstimateConfig::new(Rational64::new(1, 10), 42);
        let h = circ(1, "H 0");
        let a = additive_estimate(&h, &[0], &cfg).unwrap();
        let b = additive_estimate(&h, &[0], &cfg).unwrap();
        assert_eq!(a.z.re.to_bits(), b.z.re.to_bits());
        assert_eq!(a.z.im.to_bits(), b.z.im.to_bits());
        assert!(a.z.re.abs() <= 1.0 && a.z.im.abs() <= 1.0);
        let bad = EstimateConfig::new(Rational64::new(0, 1), 1);
        assert!(additive_estimate(&h, &[0], &bad).is_err());
        assert_eq!(cfg.sample_count().unwrap(), 1110);
    }

    #[test]
    fn estimator_unbiased_on_h() {
        let h = circ(1, "H 0");
        let cfg = |k| EstimateConfig {
            delta: Rational64::new(1, 2),
            seed: trial_seed(9, k),
            samples: Some(16),
        };
        let trials = 10_000;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..trials {
            sum += additive_estimate(&h, &[0], &cfg(k)).unwrap().z;
        }
        let mean = sum / trials as f64;
        let exact = amplitude(&h, &[0]).unwrap();
        assert!((mean - exact).norm() < 3.0 * 0.5 / (trials as f64).sqrt(), "{mean}");
    }

    #[test]
    fn decisions() {
        let t = Thresholds::default();
        let cfg = EstimateConfig::new(Rational64::new(1, 10), 3);
        let id = GateCircuit::new(1).unwrap();
        assert_eq!(bqp_decide(&id, &[0], &cfg, t).unwrap(), Decision::Accept);
        assert_eq!(bqp_decide(&circ(1, "X 0"), &[0], &cfg, t).unwrap(), Decision::Reject);
        let small = EstimateConfig::new(Rational64::new(1, 20), 3);
        assert_eq!(bqp_decide(&circ(1, "H 0"), &[0], &small, t).unwrap(), Decision::Inconclusive);
        let swapped = Thresholds { accept: t.reject, reject: t.accept };
        assert!(bqp_decide(&id, &[0], &cfg, swapped).is_err());
    }

    #[test]
    fn katsura_shape() {
        let i = bench_ideal(Family::KatsuraLike, 3, 2, 0).unwrap();
        assert_eq!(i.generators().len(), 3);
        assert!(i.generators().iter().all(|g| g.total_degree().unwrap() <= 2));
    }

    #[test]
    fn bench_csv_format() {
        let mut buf = Vec::new();
        let rows = gb_scaling_bench(Family::RandomBinomial, 1..=3, 2, &MonomialOrder::DegRevLex, 5, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], BENCH_HEADER);
        assert_eq!(lines.len(), 4);
        assert_eq!(rows.len(), 3);
        assert!(lines[1].starts_with("random-binomial,1,2,drl,1,"));
        let again = gb_scaling_bench(Family::RandomBinomial, 1..=3, 2, &MonomialOrder::DegRevLex, 5, Vec::new()).unwrap();
        let sizes = |r: &[BenchRow]| r.iter().map(|x| x.basis_size).collect::<Vec<_>>();
        assert_eq!(sizes(&rows), sizes(&again));
        assert!(gb_scaling_bench(Family::KatsuraLike, 1..=9, 2, &MonomialOrder::Lex, 0, Vec::new()).is_err());
    }
}
