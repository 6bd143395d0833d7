//! Lexing and parsing of qtoric programs.
//!
//! Polynomials are resolved against the ring in effect when they are read, so
//! a parsed program carries concrete values. Matrices, cones and circuits are
//! kept as raw data and validated when a command runs.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use qtoric_core::clifford_hopf::HopfMap;
use qtoric_core::estimator::{Family, Gate};
use qtoric_core::field::Field;
use qtoric_core::groebner::Ideal;
use qtoric_core::poly::{poly_arith, ArithOp, Monomial, MonomialOrder, Polynomial, Ring, Tiebreak};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Undeclared,
    Arity,
    /// Well-formed input whose value is rejected, such as `F8`.
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

pub type Matrix = Vec<Vec<BigRational>>;

#[derive(Debug, Clone)]
pub struct Program {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub line: usize,
    pub kind: StatementKind,
}

#[derive(Debug, Clone)]
pub enum StatementKind {
    Ring(Ring),
    Order(MonomialOrder),
    Ideal { name: String, ideal: Ideal },
    Matrix { name: String, rows: Matrix },
    Cone { name: String, cone: RawCone },
    Circuit { name: String, circuit: RawCircuit },
    Command(Command),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCone {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCircuit {
    pub n: usize,
    pub gates: Vec<Gate>,
}

/// A word `x_{i1}^{e1} * ...` in ring variables, 0-based.
pub type Word = Vec<(usize, i32)>;

#[derive(Debug, Clone)]
pub enum QuotArg {
    Ideal(Ideal),
    Poly(Polynomial),
}

#[derive(Debug, Clone)]
pub enum ToricGens {
    Points(Vec<Vec<i64>>),
    HilbertOf(RawCone),
}

#[derive(Debug, Clone)]
pub enum BasisDimArg {
    Plain(usize),
    Form(Matrix),
}

#[derive(Debug, Clone)]
pub enum FanArg {
    Projective(usize),
    Cones(Vec<RawCone>),
}

#[derive(Debug, Clone)]
pub enum Command {
    Gb { ideal: Ideal, order: MonomialOrder },
    Nf { poly: Polynomial, ideal: Ideal, order: MonomialOrder },
    Member { poly: Polynomial, ideal: Ideal, order: MonomialOrder },
    Intersect { a: Ideal, b: Ideal, order: MonomialOrder },
    Quot { a: Ideal, by: QuotArg, order: MonomialOrder },
    CheckQuotients { ideals: Vec<Ideal>, by: Ideal, order: MonomialOrder },
    Expand { poly: Polynomial, order: MonomialOrder },
    Lm { poly: Polynomial, order: MonomialOrder },
    Spoly { f: Polynomial, g: Polynomial, order: MonomialOrder },
    Reduce { f: Polynomial, by: Vec<Polynomial>, order: MonomialOrder },
    Compare { a: Polynomial, b: Polynomial, order: MonomialOrder },
    SkewNf { q: Matrix, word: Word, ring: Ring },
    Twist { q: Matrix, chi: Matrix, a: Word, b: Word, ring: Ring },
    Defect { q: Matrix, chi: Matrix, i: usize, j: usize },
    BraidCheck { q: Matrix, chi: Matrix },
    InvolutiveQ { n: usize },
    Clifford { eta: Matrix, a: Vec<usize>, b: Vec<usize> },
    Grassmann { d: usize, a: Vec<usize>, b: Vec<usize> },
    BasisDim { arg: BasisDimArg },
    ClhCheck { d: usize },
    ClhApply { map: HopfMap, d: usize, word: Vec<ClhFactor> },
    DualCone { cone: RawCone },
    Hilbert { cone: RawCone },
    Regular { cone: RawCone },
    ToricIdeal { gens: ToricGens },
    Fan { d: usize },
    Complete { fan: FanArg },
    Amplitude { circuit: RawCircuit, bits: Vec<u8> },
    Estimate { circuit: RawCircuit, bits: Vec<u8> },
    Decide { circuit: RawCircuit, bits: Vec<u8>, accept: Option<Rational64>, reject: Option<Rational64> },
    Bench { family: Family, from: usize, to: usize, d: usize, order: MonomialOrder },
}

/// Factor of a Clifford-Hopf word: `G<i>` or `E<i>`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClhFactor {
    Gamma(usize),
    E(usize),
}

impl Command {
    /// The command keyword.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Nf { .. } => "nf",
            Command::Member { .. } => "member",
            Command::Intersect { .. } => "intersect",
            Command::Quot { .. } => "quot",
            Command::CheckQuotients { .. } => "check-quotients",
            Command::Expand { .. } => "expand",
            Command::Lm { .. } => "lm",
            Command::Spoly { .. } => "spoly",
            Command::Reduce { .. } => "reduce",
            Command::Compare { .. } => "compare",
            Command::SkewNf { .. } => "skew-nf",
            Command::Twist { .. } => "twist",
            Command::Defect { .. } => "defect",
            Command::BraidCheck { .. } => "braid-check",
            Command::InvolutiveQ { .. } => "involutive-q",
            Command::Clifford { .. } => "clifford",
            Command::Grassmann { .. } => "grassmann",
            Command::BasisDim { .. } => "basis-dim",
            Command::ClhCheck { .. } => "clh-check",
            Command::ClhApply { .. } => "clh-apply",
            Command::DualCone { .. } => "dual-cone",
            Command::Hilbert { .. } => "hilbert",
            Command::Regular { .. } => "regular",
            Command::ToricIdeal { .. } => "toric-ideal",
            Command::Fan { .. } => "fan",
            Command::Complete { .. } => "complete",
            Command::Amplitude { .. } => "amplitude",
            Command::Estimate { .. } => "estimate",
            Command::Decide { .. } => "decide",
            Command::Bench { .. } => "bench",
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.src.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else if c == b'#' {
                while self.peek().is_some_and(|c| c != b'\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn error(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, kind, message: message.into() }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax, message)
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("`{}`", c as char),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`, found {}", c as char, self.found())))
        }
    }

    fn peek_char(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek()
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn ident(&mut self) -> PResult<String> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                Ok(self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_'))
            }
            _ => Err(self.syntax(format!("expected a name, found {}", self.found()))),
        }
    }

    /// A name that may contain inner hyphens, as in `skew-nf`.
    fn keyword(&mut self) -> PResult<String> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.syntax(format!("expected a statement, found {}", self.found())));
        }
        let mut s = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
        while self.peek() == Some(b'-') && self.peek_at(1).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.bump();
            s.push('-');
            s.push_str(&self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_'));
        }
        Ok(s)
    }

    fn peek_ident(&mut self) -> Option<String> {
        self.skip_ws();
        let save = (self.pos, self.line, self.col);
        let r = self.ident().ok();
        (self.pos, self.line, self.col) = save;
        r
    }

    fn uint(&mut self) -> PResult<u64> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.syntax(format!("expected a number, found {}", self.found())));
        }
        let s = self.take_while(|c| c.is_ascii_digit());
        s.parse().map_err(|_| self.syntax(format!("number `{s}` is too large")))
    }

    fn usize(&mut self) -> PResult<usize> {
        Ok(self.uint()? as usize)
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        let v = i64::try_from(v).map_err(|_| self.syntax("number is too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn big_uint(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.syntax(format!("expected a number, found {}", self.found())));
        }
        let s = self.take_while(|c| c.is_ascii_digit());
        Ok(s.parse().expect("digits"))
    }

    /// `-? n (/ m)?`
    fn rational(&mut self) -> PResult<BigRational> {
        let neg = self.eat(b'-');
        let n = self.big_uint()?;
        let d = if self.eat(b'/') { self.big_uint()? } else { BigInt::one() };
        if d.is_zero() {
            return Err(self.syntax("zero denominator"));
        }
        let r = BigRational::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn small_rational(&mut self) -> PResult<Rational64> {
        let neg = self.eat(b'-');
        let n = self.int()?;
        let d = if self.eat(b'/') { self.int()? } else { 1 };
        if d == 0 {
            return Err(self.syntax("zero denominator"));
        }
        let r = Rational64::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn matrix(&mut self) -> PResult<Matrix> {
        self.list(|c| c.list(Cursor::rational))
    }

    fn int_matrix(&mut self) -> PResult<Vec<Vec<i64>>> {
        self.list(|c| c.list(Cursor::int))
    }

    /// 1-based index list, returned 0-based.
    fn blade(&mut self) -> PResult<Vec<usize>> {
        self.list(|c| {
            let v = c.usize()?;
            if v == 0 {
                return Err(c.syntax("indices start at 1"));
            }
            Ok(v - 1)
        })
    }

    fn bits(&mut self) -> PResult<Vec<u8>> {
        self.skip_ws();
        let s = self.take_while(|c| c == b'0' || c == b'1');
        if s.is_empty() {
            return Err(self.syntax(format!("expected a bitstring, found {}", self.found())));
        }
        Ok(s.bytes().map(|b| b - b'0').collect())
    }
}

struct Scope {
    ring: Option<Ring>,
    order: MonomialOrder,
    ideals: HashMap<String, Ideal>,
    matrices: HashMap<String, Matrix>,
    cones: HashMap<String, RawCone>,
    circuits: HashMap<String, RawCircuit>,
}

fn undeclared(c: &Cursor, what: &str, name: &str) -> ParseError {
    c.error(ParseErrorKind::Undeclared, format!("undeclared {what} `{name}`"))
}

impl Scope {
    fn ring(&self, c: &Cursor) -> PResult<Ring> {
        self.ring.clone().ok_or_else(|| c.error(ParseErrorKind::Undeclared, "no ring declared"))
    }

    fn ideal(&self, c: &mut Cursor) -> PResult<Ideal> {
        let name = c.ident()?;
        self.ideals.get(&name).cloned().ok_or_else(|| undeclared(c, "ideal", &name))
    }

    fn matrix(&self, c: &mut Cursor) -> PResult<Matrix> {
        if c.peek_char() == Some(b'[') {
            return c.matrix();
        }
        let name = c.ident()?;
        self.matrices.get(&name).cloned().ok_or_else(|| undeclared(c, "matrix", &name))
    }

    fn cone(&self, c: &mut Cursor) -> PResult<RawCone> {
        let name = c.ident()?;
        self.cones.get(&name).cloned().ok_or_else(|| undeclared(c, "cone", &name))
    }

    fn circuit(&self, c: &mut Cursor) -> PResult<RawCircuit> {
        let name = c.ident()?;
        self.circuits.get(&name).cloned().ok_or_else(|| undeclared(c, "circuit", &name))
    }
}

/// Polynomial expressions: `+`, `-`, `*`, `^` with nonnegative integer
/// exponents, parentheses, integer or `a/b` coefficients.
struct PolyParser<'r> {
    ring: &'r Ring,
}

impl PolyParser<'_> {
    fn arith(&self, c: &Cursor, f: &Polynomial, g: &Polynomial, op: ArithOp) -> PResult<Polynomial> {
        poly_arith(f, g, op).map_err(|e| c.error(ParseErrorKind::Domain, e.to_string()))
    }

    fn expr(&self, c: &mut Cursor) -> PResult<Polynomial> {
        let mut acc = if c.eat(b'-') {
            let t = self.term(c)?;
            self.arith(c, &Polynomial::zero(self.ring), &t, ArithOp::Sub)?
        } else {
            self.term(c)?
        };
        loop {
            if c.eat(b'+') {
                let t = self.term(c)?;
                acc = self.arith(c, &acc, &t, ArithOp::Add)?;
            } else if c.peek_char() == Some(b'-') {
                c.bump();
                let t = self.term(c)?;
                acc = self.arith(c, &acc, &t, ArithOp::Sub)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> PResult<Polynomial> {
        let mut acc = self.power(c)?;
        while c.eat(b'*') {
            let f = self.power(c)?;
            acc = self.arith(c, &acc, &f, ArithOp::Mul)?;
        }
        Ok(acc)
    }

    fn power(&self, c: &mut Cursor) -> PResult<Polynomial> {
        let base = self.atom(c)?;
        if !c.eat(b'^') {
            return Ok(base);
        }
        let e = c.uint()?;
        if e > 1000 {
            return Err(c.error(ParseErrorKind::Domain, "exponent too large"));
        }
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..e {
            acc = self.arith(c, &acc, &base, ArithOp::Mul)?;
        }
        Ok(acc)
    }

    fn atom(&self, c: &mut Cursor) -> PResult<Polynomial> {
        match c.peek_char() {
            Some(b'(') => {
                c.bump();
                let e = self.expr(c)?;
                c.expect(b')')?;
                Ok(e)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let r = c.rational()?;
                let v = self
                    .ring
                    .field()
                    .from_rational(&r)
                    .map_err(|e| c.error(ParseErrorKind::Domain, e.to_string()))?;
                Ok(Polynomial::constant(self.ring, v))
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                let name = c.ident()?;
                let i = self.ring.var_index(&name).ok_or_else(|| undeclared(c, "variable", &name))?;
                Ok(Polynomial::var(self.ring, i))
            }
            _ => Err(c.syntax(format!("expected a polynomial term, found {}", c.found()))),
        }
    }

    /// `x1^-1*x2` style words, or `1`.
    fn word(&self, c: &mut Cursor) -> PResult<Word> {
        if c.peek_char() == Some(b'1') {
            c.bump();
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            let name = c.ident()?;
            let i = self.ring.var_index(&name).ok_or_else(|| undeclared(c, "variable", &name))?;
            let e = if c.eat(b'^') { c.int()? } else { 1 };
            let e = i32::try_from(e).map_err(|_| c.error(ParseErrorKind::Domain, "exponent too large"))?;
            out.push((i, e));
            if !c.eat(b'*') {
                return Ok(out);
            }
        }
    }
}

/// Parses one polynomial in `ring`.
pub fn parse_polynomial(ring: &Ring, text: &str) -> PResult<Polynomial> {
    let mut c = Cursor::new(text);
    let p = PolyParser { ring }.expr(&mut c)?;
    if !c.at_end() {
        return Err(c.syntax(format!("unexpected {} after polynomial", c.found())));
    }
    Ok(p)
}

fn parse_field(c: &Cursor, s: &str) -> PResult<Field> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix('F') {
        if let Ok(p) = p.parse::<u64>() {
            return Field::prime(p).map_err(|e| c.error(ParseErrorKind::Domain, e.to_string()));
        }
    }
    Err(c.syntax(format!("unknown field `{s}`, expected Q or F<p>")))
}

fn parse_order(c: &mut Cursor) -> PResult<MonomialOrder> {
    let w = c.ident()?;
    match w.as_str() {
        "lex" => Ok(MonomialOrder::Lex),
        "drl" => Ok(MonomialOrder::DegRevLex),
        "matrix" => {
            let rows = c.int_matrix()?;
            let tb = match c.ident()?.as_str() {
                "lex" => Tiebreak::Lex,
                "drl" => Tiebreak::DegRevLex,
                other => return Err(c.syntax(format!("unknown tiebreak `{other}`"))),
            };
            MonomialOrder::matrix(rows, tb).map_err(|e| c.error(ParseErrorKind::Domain, e.to_string()))
        }
        other => Err(c.syntax(format!("unknown order `{other}`"))),
    }
}

fn clh_word(c: &mut Cursor) -> PResult<Vec<ClhFactor>> {
    if c.peek_char() == Some(b'1') {
        c.bump();
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    loop {
        let w = c.ident()?;
        let (kind, idx) = w.split_at(1);
        let i: usize = idx
            .parse()
            .ok()
            .filter(|&i| i >= 1)
            .ok_or_else(|| c.syntax(format!("expected G<i> or E<i>, found `{w}`")))?;
        out.push(match kind {
            "G" => ClhFactor::Gamma(i - 1),
            "E" => ClhFactor::E(i - 1),
            _ => return Err(c.syntax(format!("expected G<i> or E<i>, found `{w}`"))),
        });
        if !c.eat(b'*') {
            return Ok(out);
        }
    }
}

fn gate(c: &mut Cursor) -> PResult<Gate> {
    let name = c.ident()?;
    Ok(match name.to_ascii_uppercase().as_str() {
        "H" => Gate::H(c.usize()?),
        "X" => Gate::X(c.usize()?),
        "Z" => Gate::Z(c.usize()?),
        "S" => Gate::S(c.usize()?),
        "CNOT" => Gate::Cnot(c.usize()?, c.usize()?),
        _ => return Err(c.syntax(format!("unknown gate `{name}`"))),
    })
}

fn comma_separated<T>(c: &mut Cursor, mut item: impl FnMut(&mut Cursor) -> PResult<T>) -> PResult<Vec<T>> {
    let mut out = vec![item(c)?];
    while c.eat(b',') {
        out.push(item(c)?);
    }
    Ok(out)
}

fn arity(c: &Cursor, cmd: &str, expected: &str, got: usize) -> ParseError {
    c.error(ParseErrorKind::Arity, format!("`{cmd}` takes {expected}, got {got}"))
}

fn command(c: &mut Cursor, s: &Scope, head: &str) -> PResult<Command> {
    let order = s.order.clone();
    let polys = |c: &mut Cursor| -> PResult<Vec<Polynomial>> {
        let ring = s.ring(c)?;
        let pp = PolyParser { ring: &ring };
        comma_separated(c, |c| pp.expr(c))
    };
    let poly = |c: &mut Cursor| -> PResult<Polynomial> {
        let ring = s.ring(c)?;
        PolyParser { ring: &ring }.expr(c)
    };
    let word = |c: &mut Cursor| -> PResult<Word> {
        let ring = s.ring(c)?;
        PolyParser { ring: &ring }.word(c)
    };
    let kw = |c: &mut Cursor, w: &str| -> PResult<()> {
        let got = c.ident()?;
        if got == w {
            Ok(())
        } else {
            Err(c.syntax(format!("expected `{w}`, found `{got}`")))
        }
    };
    Ok(match head {
        "gb" => Command::Gb { ideal: s.ideal(c)?, order },
        "nf" => {
            let p = poly(c)?;
            kw(c, "mod")?;
            Command::Nf { poly: p, ideal: s.ideal(c)?, order }
        }
        "member" => {
            let p = poly(c)?;
            kw(c, "in")?;
            Command::Member { poly: p, ideal: s.ideal(c)?, order }
        }
        "intersect" => {
            let a = s.ideal(c)?;
            c.expect(b',')?;
            Command::Intersect { a, b: s.ideal(c)?, order }
        }
        "quot" => {
            let a = s.ideal(c)?;
            c.expect(b',')?;
            let by = match c.peek_ident() {
                Some(name) if s.ideals.contains_key(&name) => QuotArg::Ideal(s.ideal(c)?),
                _ => QuotArg::Poly(poly(c)?),
            };
            Command::Quot { a, by, order }
        }
        "check-quotients" => {
            let ideals = comma_separated(c, |c| s.ideal(c))?;
            c.expect(b':')?;
            Command::CheckQuotients { ideals, by: s.ideal(c)?, order }
        }
        "expand" => Command::Expand { poly: poly(c)?, order },
        "lm" => Command::Lm { poly: poly(c)?, order },
        "spoly" => {
            let ps = polys(c)?;
            let [f, g]: [Polynomial; 2] = ps.try_into().map_err(|v: Vec<_>| arity(c, head, "two polynomials", v.len()))?;
            Command::Spoly { f, g, order }
        }
        "reduce" => {
            let f = poly(c)?;
            kw(c, "by")?;
            Command::Reduce { f, by: polys(c)?, order }
        }
        "compare" => {
            let ps = polys(c)?;
            let [a, b]: [Polynomial; 2] = ps.try_into().map_err(|v: Vec<_>| arity(c, head, "two monomials", v.len()))?;
            Command::Compare { a, b, order }
        }
        "skew-nf" => {
            let q = s.matrix(c)?;
            Command::SkewNf { q, word: word(c)?, ring: s.ring(c)? }
        }
        "twist" => {
            let q = s.matrix(c)?;
            let chi = s.matrix(c)?;
            let a = word(c)?;
            c.expect(b',')?;
            Command::Twist { q, chi, a, b: word(c)?, ring: s.ring(c)? }
        }
        "defect" => {
            let q = s.matrix(c)?;
            let chi = s.matrix(c)?;
            let (i, j) = (c.usize()?, c.usize()?);
            if i == 0 || j == 0 {
                return Err(c.syntax("indices start at 1"));
            }
            Command::Defect { q, chi, i: i - 1, j: j - 1 }
        }
        "braid-check" => {
            let q = s.matrix(c)?;
            Command::BraidCheck { q, chi: s.matrix(c)? }
        }
        "involutive-q" => Command::InvolutiveQ { n: c.usize()? },
        "clifford" => {
            let eta = s.matrix(c)?;
            let a = c.blade()?;
            Command::Clifford { eta, a, b: c.blade()? }
        }
        "grassmann" => {
            let d = c.usize()?;
            let a = c.blade()?;
            Command::Grassmann { d, a, b: c.blade()? }
        }
        "basis-dim" => {
            let arg = if c.peek_char().is_some_and(|ch| ch.is_ascii_digit()) {
                BasisDimArg::Plain(c.usize()?)
            } else {
                BasisDimArg::Form(s.matrix(c)?)
            };
            Command::BasisDim { arg }
        }
        "clh-check" => Command::ClhCheck { d: c.usize()? },
        "clh-apply" => {
            let map = match c.ident()?.as_str() {
                "coproduct" => HopfMap::Coproduct,
                "antipode" => HopfMap::Antipode,
                "counit" => HopfMap::Counit,
                other => return Err(c.syntax(format!("unknown map `{other}`"))),
            };
            let d = c.usize()?;
            Command::ClhApply { map, d, word: clh_word(c)? }
        }
        "dual-cone" => Command::DualCone { cone: s.cone(c)? },
        "hilbert" => Command::Hilbert { cone: s.cone(c)? },
        "regular" => Command::Regular { cone: s.cone(c)? },
        "toric-ideal" => {
            let gens = if c.peek_char() == Some(b'[') {
                ToricGens::Points(c.int_matrix()?)
            } else {
                kw(c, "hilbert")?;
                ToricGens::HilbertOf(s.cone(c)?)
            };
            Command::ToricIdeal { gens }
        }
        "fan" => Command::Fan { d: c.usize()? },
        "complete" => {
            let fan = if c.peek_char().is_some_and(|ch| ch.is_ascii_digit()) {
                FanArg::Projective(c.usize()?)
            } else {
                FanArg::Cones(comma_separated(c, |c| s.cone(c))?)
            };
            Command::Complete { fan }
        }
        "amplitude" => {
            let circuit = s.circuit(c)?;
            Command::Amplitude { circuit, bits: c.bits()? }
        }
        "estimate" => {
            let circuit = s.circuit(c)?;
            Command::Estimate { circuit, bits: c.bits()? }
        }
        "decide" => {
            let circuit = s.circuit(c)?;
            let bits = c.bits()?;
            let (accept, reject) = if c.peek_char().is_some_and(|ch| ch.is_ascii_digit()) {
                (Some(c.small_rational()?), Some(c.small_rational()?))
            } else {
                (None, None)
            };
            Command::Decide { circuit, bits, accept, reject }
        }
        "bench" => {
            let fam = c.keyword()?;
            let family = Family::parse(&fam).map_err(|e| c.syntax(e.to_string()))?;
            let from = c.usize()?;
            c.expect(b'.')?;
            c.expect(b'.')?;
            let to = c.usize()?;
            let d = c.usize()?;
            let order = if c.peek_char() == Some(b';') { order } else { parse_order(c)? };
            Command::Bench { family, from, to, d, order }
        }
        other => return Err(c.syntax(format!("unknown statement `{other}`"))),
    })
}

/// Parses a whole program, checking declarations as it goes.
pub fn parse_program(text: &str) -> PResult<Program> {
    let mut c = Cursor::new(text);
    let mut scope = Scope {
        ring: None,
        order: MonomialOrder::DegRevLex,
        ideals: HashMap::new(),
        matrices: HashMap::new(),
        cones: HashMap::new(),
        circuits: HashMap::new(),
    };
    let mut statements = Vec::new();
    while !c.at_end() {
        let line = c.line;
        let head = c.keyword()?;
        let kind = match head.as_str() {
            "ring" => {
                let f = c.ident()?;
                let field = parse_field(&c, &f)?;
                let vars = comma_separated(&mut c, |c| c.ident())?;
                for (k, v) in vars.iter().enumerate() {
                    if vars[..k].contains(v) {
                        return Err(c.error(ParseErrorKind::Domain, format!("variable `{v}` declared twice")));
                    }
                }
                let ring = Ring::new(field, &vars);
                scope.ring = Some(ring.clone());
                StatementKind::Ring(ring)
            }
            "order" => {
                let ord = parse_order(&mut c)?;
                scope.order = ord.clone();
                StatementKind::Order(ord)
            }
            "ideal" => {
                let name = c.ident()?;
                c.expect(b'=')?;
                c.skip_ws();
                let ring = scope.ring(&c)?;
                let pp = PolyParser { ring: &ring };
                let gens = comma_separated(&mut c, |c| pp.expr(c))?;
                let ideal = Ideal::new(&ring, gens).map_err(|e| c.error(ParseErrorKind::Domain, e.to_string()))?;
                scope.ideals.insert(name.clone(), ideal.clone());
                StatementKind::Ideal { name, ideal }
            }
            "matrix" => {
                let name = c.ident()?;
                c.expect(b'=')?;
                let rows = c.matrix()?;
                scope.matrices.insert(name.clone(), rows.clone());
                StatementKind::Matrix { name, rows }
            }
            "cone" => {
                let name = c.ident()?;
                c.expect(b'=')?;
                let cone = if c.peek_ident().as_deref() == Some("zero") {
                    c.ident()?;
                    RawCone { dim: c.usize()?, rays: Vec::new() }
                } else {
                    let rays = c.int_matrix()?;
                    let dim = rays.first().map(Vec::len).ok_or_else(|| c.syntax("use `zero <rank>` for the zero cone"))?;
                    RawCone { dim, rays }
                };
                scope.cones.insert(name.clone(), cone.clone());
                StatementKind::Cone { name, cone }
            }
            "circuit" => {
                let name = c.ident()?;
                let n = c.usize()?;
                c.expect(b'{')?;
                let mut gates = Vec::new();
                while !c.eat(b'}') {
                    gates.push(gate(&mut c)?);
                    if !c.eat(b';') && c.peek_char() != Some(b'}') {
                        return Err(c.syntax(format!("expected `;` or `}}`, found {}", c.found())));
                    }
                }
                c.eat(b';');
                let circuit = RawCircuit { n, gates };
                scope.circuits.insert(name.clone(), circuit.clone());
                statements.push(Statement { line, kind: StatementKind::Circuit { name, circuit } });
                continue;
            }
            _ => StatementKind::Command(command(&mut c, &scope, &head)?),
        };
        c.expect(b';')?;
        statements.push(Statement { line, kind });
    }
    Ok(Program { statements })
}

/// Exponent vector of a single-term polynomial with coefficient one.
pub fn as_monomial(p: &Polynomial) -> Option<Monomial> {
    let mut terms = p.terms();
    let (m, c) = terms.next()?;
    (terms.next().is_none() && c.is_one()).then(|| m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_statements() {
        let p = parse_program("ring Q x,y; order drl; ideal I = x^2*y - 1, x*y^2 - x; gb I;").unwrap();
        assert_eq!(p.statements.len(), 4);
    }

    #[test]
    fn ideal_without_ring() {
        let e = parse_program("ideal I = x;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Undeclared);
        assert_eq!((e.line, e.col), (1, 11));
    }

    #[test]
    fn coefficients_normalized_mod_p() {
        let p = parse_program("ring F7 x; ideal I = 8*x;").unwrap();
        let StatementKind::Ideal { ideal, .. } = &p.statements[1].kind else { panic!() };
        assert_eq!(ideal.generators()[0].to_string(), "x");
    }

    #[test]
    fn syntax_errors_have_locations() {
        let e = parse_program("ring Q x;\ngb ;").unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (2, 4, ParseErrorKind::Syntax));
        let e = parse_program("ring Q x; ideal I = x; gb J;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Undeclared);
        let e = parse_program("ring Q x; spoly x;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Arity);
        assert_eq!(parse_program("ring F8 x;").unwrap_err().kind, ParseErrorKind::Domain);
    }

    #[test]
    fn polynomial_forms() {
        let r = Ring::new(Field::Rational, &["x", "y"]);
        let p = parse_polynomial(&r, "-3/2*x*y + (x - y)^2 - x^2").unwrap();
        assert_eq!(p.to_string(), "-7/2*x*y + y^2");
        assert!(parse_polynomial(&r, "x +").is_err());
        assert!(parse_polynomial(&r, "z").is_err());
    }

    #[test]
    fn circuits_and_comments() {
        let p = parse_program("# bell pair\ncircuit b 2 { H 0; CNOT 0 1; }\namplitude b 00;").unwrap();
        assert_eq!(p.statements.len(), 2);
        let StatementKind::Circuit { circuit, .. } = &p.statements[0].kind else { panic!() };
        assert_eq!(circuit.gates, vec![Gate::H(0), Gate::Cnot(0, 1)]);
    }
}
