//! Expression language for elements of `H[t, σ]`, `H(t, σ)`, `H((t, σ))` and
//! of a scalar extension `M`.
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' ['-'] INT | '^' '(' ['-'] INT ')')?
//! primary := INT | IDENT | IDENT '(' sum (',' sum)* ')' | '(' sum ')'
//!          | '[' sum (',' sum)* ']'
//! ```
//!
//! `t` is the twisted variable, `s` stands for `tⁿ`, `x` for the generator
//! of an extension. `[e]` is a ground element written symbolically and
//! `[c0, c1, …]` one given by its rational coordinates. Functions:
//! `sigma(e[, k])`, `embed(e[, N])`, `tau(e[, N])` and `O(t^N)`.

use std::fmt;

use num_bigint::BigInt;
use orefield_core::{
    Error, ExtensionScenario, GroundElement, GroundField, SkewFraction, SkewPolynomial, TensorElement,
    TwistedSeries, Q,
};

/// Largest exponent accepted by `^`.
pub const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

/// Failure while evaluating a well-formed expression.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// A name or function the context does not provide.
    Unknown { line: usize, column: usize, message: String },
    Math(Error),
    Type(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Unknown { line, column, message } => {
                write!(f, "at line {line}, column {column}: {message}")
            }
            EvalError::Math(e) => write!(f, "{e}"),
            EvalError::Type(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<Error> for EvalError {
    fn from(e: Error) -> Self {
        EvalError::Math(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub enum Expr {
    Int(BigInt),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(String, Vec<Expr>, Pos),
    Bracket(Vec<Expr>),
}

/// Structural equality that ignores source positions.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use Expr::*;
        match (self, other) {
            (Int(a), Int(b)) => a == b,
            (Var(a, _), Var(b, _)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d))
            | (Sub(a, b), Sub(c, d))
            | (Mul(a, b), Mul(c, d))
            | (Div(a, b), Div(c, d)) => a == c && b == d,
            (Pow(a, m), Pow(b, n)) => a == b && m == n,
            (Call(f, a, _), Call(g, b, _)) => f == g && a == b,
            (Bracket(a), Bracket(b)) => a == b,
            _ => false,
        }
    }
}

// binding strength for printing: sum 1, product 2, unary minus 3, power 4
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (k, a) in items.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v, _) => write!(f, "{v}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_at(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_at(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                write_at(f, a, 2)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                write_at(f, b, 3)
            }
            Expr::Pow(a, k) => {
                write_at(f, a, 5)?;
                write!(f, "^{k}")
            }
            Expr::Call(name, args, _) => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                write!(f, ")")
            }
            Expr::Bracket(items) => {
                write!(f, "[")?;
                write_list(f, items)?;
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
}

fn lex(text: &str) -> Result<Lexer, SyntaxError> {
    let mut toks = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let start = k;
        if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            toks.push((Tok::Int(digits.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            toks.push((Tok::Ident(chars[start..k].iter().collect()), pos));
        } else if "+-*/^()[],".contains(c) {
            k += 1;
            toks.push((Tok::Sym(c), pos));
        } else {
            return Err(SyntaxError {
                line,
                column,
                message: format!("unexpected character '{c}'"),
            });
        }
        column += k - start;
    }
    toks.push((Tok::End, Pos { line, column }));
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: String) -> SyntaxError {
        let p = self.pos();
        SyntaxError {
            line: p.line,
            column: p.column,
            message,
        }
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        let found = match self.peek() {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        };
        self.error(format!("expected {wanted}, found {found}"))
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// Parses the contents of a group opened at `open` up to `close`. An
    /// input that ends inside the group is reported at the opening symbol.
    fn group(&mut self, open: Pos, close: char) -> Result<Vec<Expr>, SyntaxError> {
        let unclosed = || SyntaxError {
            line: open.line,
            column: open.column,
            message: format!("unclosed '{}'", if close == ')' { '(' } else { '[' }),
        };
        let mut items = Vec::new();
        loop {
            if *self.peek() == Tok::End {
                return Err(unclosed());
            }
            items.push(self.sum()?);
            if self.eat(',') {
                continue;
            }
            if self.eat(close) {
                return Ok(items);
            }
            if *self.peek() == Tok::End {
                return Err(unclosed());
            }
            return Err(self.unexpected(&format!("',' or '{close}'")));
        }
    }

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64, SyntaxError> {
        let negative = self.eat('-');
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.unexpected("an integer exponent"));
        };
        let too_large = self.error(format!("exponent larger than {MAX_EXPONENT}"));
        self.bump();
        let n = i64::try_from(n)
            .ok()
            .filter(|n| n.unsigned_abs() <= MAX_EXPONENT)
            .ok_or(too_large)?;
        Ok(if negative { -n } else { n })
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let open = self.pos();
        let k = if self.eat('(') {
            let k = self.exponent()?;
            if !self.eat(')') {
                if *self.peek() == Tok::End {
                    return Err(SyntaxError {
                        line: open.line,
                        column: open.column,
                        message: "unclosed '('".into(),
                    });
                }
                return Err(self.unexpected("')'"));
            }
            k
        } else {
            self.exponent()?
        };
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::Sym('(') {
                    let open = self.pos();
                    self.bump();
                    let args = self.group(open, ')')?;
                    return Ok(Expr::Call(name, args, pos));
                }
                Ok(Expr::Var(name, pos))
            }
            Tok::Sym('(') => {
                self.bump();
                let mut items = self.group(pos, ')')?;
                if items.len() != 1 {
                    return Err(SyntaxError {
                        line: pos.line,
                        column: pos.column,
                        message: "a parenthesized group holds one expression".into(),
                    });
                }
                Ok(items.pop().expect("one item"))
            }
            Tok::Sym('[') => {
                self.bump();
                Ok(Expr::Bracket(self.group(pos, ']')?))
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let lexer = lex(text)?;
    let mut p = Parser { toks: lexer.toks, at: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

/// Where names are resolved.
#[derive(Clone)]
pub struct Context {
    pub field: GroundField,
    /// Supplies `x`.
    pub scenario: Option<ExtensionScenario>,
    /// Default precision of `embed` and `tau`.
    pub precision: i64,
}

impl Context {
    pub fn new(field: GroundField) -> Self {
        Self {
            field,
            scenario: None,
            precision: orefield_core::DEFAULT_PRECISION,
        }
    }

    pub fn with_scenario(scenario: ExtensionScenario) -> Self {
        let mut c = Self::new(scenario.field().clone());
        c.scenario = Some(scenario);
        c
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    Poly(SkewPolynomial),
    Frac(SkewFraction),
    Series(TwistedSeries),
    Tensor(TensorElement),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Frac(_) => "fraction",
            Value::Series(_) => "series",
            Value::Tensor(_) => "extension-element",
        }
    }

    /// Fractions with denominator 1 become polynomials.
    fn normalize(self) -> Self {
        match self {
            Value::Frac(x) if x.den().is_one() => Value::Poly(x.num().clone()),
            v => v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Poly(p) => p.is_zero(),
            Value::Frac(x) => x.is_zero(),
            Value::Series(s) => s.is_zero(),
            Value::Tensor(a) => a.is_zero(),
        }
    }

    pub fn as_fraction(&self) -> Option<SkewFraction> {
        match self {
            Value::Poly(p) => Some(SkewFraction::from_poly(p.clone())),
            Value::Frac(x) => Some(x.clone()),
            _ => None,
        }
    }

    /// The value as a ground constant, if it is one.
    pub fn as_ground(&self) -> Option<GroundElement> {
        match self {
            Value::Poly(p) if p.degree().unwrap_or(0) == 0 => Some(p.coeff(0)),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Frac(x) => write!(f, "{x}"),
            Value::Series(s) => write!(f, "{s}"),
            Value::Tensor(a) => write!(f, "{a}"),
        }
    }
}

fn rank(v: &Value) -> u8 {
    match v {
        Value::Poly(_) => 0,
        Value::Frac(_) => 1,
        Value::Series(_) => 2,
        Value::Tensor(_) => 3,
    }
}

/// Embedding precision for an exact operand meeting `s`, chosen so the
/// product keeps the precision the series alone would give.
fn embed_precision(x: &SkewFraction, s: &TwistedSeries) -> i64 {
    let deg = |p: &SkewPolynomial| p.degree().unwrap_or(0) as i64;
    s.precision() + s.valuation().abs() + deg(x.num()) + deg(x.den()) + 1
}

fn mixing_error() -> EvalError {
    EvalError::Type("series and extension elements do not mix".into())
}

/// Brings two values to a common kind.
fn unify(a: Value, b: Value, ctx: &Context) -> Result<(Value, Value), EvalError> {
    if rank(&a) == rank(&b) {
        return Ok((a, b));
    }
    if rank(&a) > rank(&b) {
        let (b, a) = unify(b, a, ctx)?;
        return Ok((a, b));
    }
    // rank(a) < rank(b)
    let x = a.as_fraction().ok_or_else(mixing_error)?;
    let lifted = match &b {
        Value::Frac(_) => Value::Frac(x),
        Value::Series(s) => Value::Series(TwistedSeries::embed(&x, embed_precision(&x, s))),
        Value::Tensor(t) => Value::Tensor(t.scenario().scalar(x)),
        Value::Poly(_) => unreachable!("rank ordering"),
    };
    Ok((lifted, b))
}

pub fn add(a: Value, b: Value, ctx: &Context) -> Result<Value, EvalError> {
    Ok(match unify(a, b, ctx)? {
        (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.checked_add(&q)?),
        (Value::Frac(p), Value::Frac(q)) => Value::Frac(p.checked_add(&q)?),
        (Value::Series(p), Value::Series(q)) => Value::Series(p.checked_add(&q)?),
        (Value::Tensor(p), Value::Tensor(q)) => Value::Tensor(p.add(&q)?),
        _ => unreachable!("unified"),
    }
    .normalize())
}

pub fn neg(a: Value) -> Value {
    match a {
        Value::Poly(p) => Value::Poly(p.neg()),
        Value::Frac(p) => Value::Frac(p.neg()),
        Value::Series(p) => Value::Series(p.neg()),
        Value::Tensor(p) => Value::Tensor(p.neg()),
    }
}

pub fn mul(a: Value, b: Value, ctx: &Context) -> Result<Value, EvalError> {
    Ok(match unify(a, b, ctx)? {
        (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.checked_mul(&q)?),
        (Value::Frac(p), Value::Frac(q)) => Value::Frac(p.checked_mul(&q)?),
        (Value::Series(p), Value::Series(q)) => Value::Series(p.checked_mul(&q)?),
        (Value::Tensor(p), Value::Tensor(q)) => Value::Tensor(p.mul(&q)?),
        _ => unreachable!("unified"),
    }
    .normalize())
}

pub fn inv(a: Value) -> Result<Value, EvalError> {
    Ok(match a {
        Value::Poly(p) => {
            let field = p.field().clone();
            Value::Frac(SkewFraction::new(SkewPolynomial::one(&field), p)?)
        }
        Value::Frac(x) => Value::Frac(x.inv()?),
        Value::Series(s) => Value::Series(s.inv()?),
        Value::Tensor(t) => Value::Tensor(t.inv()?),
    }
    .normalize())
}

pub fn pow(a: Value, k: i64, ctx: &Context) -> Result<Value, EvalError> {
    let base = if k < 0 { inv(a)? } else { a };
    let mut e = k.unsigned_abs();
    let mut acc = one_like(&base, ctx);
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, sq.clone(), ctx)?;
        }
        e >>= 1;
        if e > 0 {
            sq = mul(sq.clone(), sq, ctx)?;
        }
    }
    Ok(acc)
}

fn one_like(v: &Value, ctx: &Context) -> Value {
    match v {
        Value::Series(s) => Value::Series(TwistedSeries::one(s.field(), s.precision() - s.valuation().min(0))),
        Value::Tensor(t) => Value::Tensor(t.scenario().one()),
        _ => Value::Poly(SkewPolynomial::one(&ctx.field)),
    }
}

fn constant(c: GroundElement) -> Value {
    Value::Poly(SkewPolynomial::constant(c))
}

fn unknown(pos: Pos, message: String) -> EvalError {
    EvalError::Unknown {
        line: pos.line,
        column: pos.column,
        message,
    }
}

fn variable(name: &str, pos: Pos, ctx: &Context) -> Result<Value, EvalError> {
    let field = &ctx.field;
    match name {
        "t" => return Ok(Value::Poly(SkewPolynomial::t(field))),
        "x" => {
            return ctx
                .scenario
                .as_ref()
                .map(|s| Value::Tensor(s.x()))
                .ok_or_else(|| unknown(pos, "'x' needs an extension scenario".into()))
        }
        _ => {}
    }
    let generator = field.generator_name();
    if !generator.is_empty() && name == generator && field.center_degree() > 1 {
        return Ok(constant(field.generator()));
    }
    if field.is_quaternion() {
        if let Some(u) = ["i", "j", "k"].iter().position(|u| *u == name) {
            return Ok(constant(field.quaternion_unit(u + 1).expect("quaternion field")));
        }
    }
    if name == "s" {
        let n = field.order();
        return Ok(Value::Poly(SkewPolynomial::monomial(field.one(), n)));
    }
    Err(unknown(pos, format!("unknown name '{name}'")))
}

fn integer_argument(e: &Expr, what: &str) -> Result<i64, EvalError> {
    let bad = || EvalError::Type(format!("{what} must be an integer literal"));
    match e {
        Expr::Int(n) => i64::try_from(n).map_err(|_| bad()),
        Expr::Neg(a) => integer_argument(a, what).map(|k| -k),
        _ => Err(bad()),
    }
}

fn call(name: &str, args: &[Expr], pos: Pos, ctx: &Context) -> Result<Value, EvalError> {
    let arity = |lo: usize, hi: usize| -> Result<(), EvalError> {
        if args.len() < lo || args.len() > hi {
            return Err(EvalError::Type(format!(
                "{name} takes {lo}{} argument(s), got {}",
                if hi > lo { format!(" or {hi}") } else { String::new() },
                args.len()
            )));
        }
        Ok(())
    };
    let precision_arg = |k: usize| -> Result<i64, EvalError> {
        args.get(k).map_or(Ok(ctx.precision), |e| integer_argument(e, "a precision"))
    };
    match name {
        "sigma" => {
            arity(1, 2)?;
            let k = args.get(1).map_or(Ok(1), |e| integer_argument(e, "a power of sigma"))?;
            Ok(match eval(&args[0], ctx)? {
                Value::Poly(p) => Value::Poly(p.apply_sigma(k)),
                Value::Frac(x) => Value::Frac(x.apply_sigma(k)),
                Value::Series(s) => Value::Series(s.apply_sigma(k)),
                Value::Tensor(_) => return Err(EvalError::Type("sigma acts on H(t, sigma) and series".into())),
            })
        }
        "embed" => {
            arity(1, 2)?;
            let p = precision_arg(1)?;
            let x = eval(&args[0], ctx)?
                .as_fraction()
                .ok_or_else(|| EvalError::Type("embed takes an element of H(t, sigma)".into()))?;
            Ok(Value::Series(TwistedSeries::embed(&x, p)))
        }
        "tau" => {
            arity(1, 2)?;
            let p = precision_arg(1)?;
            match eval(&args[0], ctx)? {
                Value::Tensor(a) => Ok(Value::Series(a.tau(p)?)),
                v => {
                    let x = v
                        .as_fraction()
                        .ok_or_else(|| EvalError::Type("tau takes an extension element".into()))?;
                    Ok(Value::Series(TwistedSeries::embed(&x, p)))
                }
            }
        }
        "O" => {
            arity(1, 1)?;
            let n = match &args[0] {
                Expr::Var(v, _) if v == "t" => 1,
                Expr::Pow(b, n) if matches!(&**b, Expr::Var(v, _) if v == "t") => *n,
                _ => return Err(EvalError::Type("O takes a power of t".into())),
            };
            Ok(Value::Series(TwistedSeries::zero(&ctx.field, n)))
        }
        _ => Err(unknown(pos, format!("unknown function '{name}'"))),
    }
}

fn bracket(items: &[Expr], ctx: &Context) -> Result<Value, EvalError> {
    let field = &ctx.field;
    let not_constant = || EvalError::Type("brackets hold a ground element".into());
    if items.len() == 1 {
        return eval(&items[0], ctx)?.as_ground().map(constant).ok_or_else(not_constant);
    }
    if items.len() != field.dim() {
        return Err(EvalError::Type(format!(
            "expected {} coordinates, got {}",
            field.dim(),
            items.len()
        )));
    }
    let coords = items
        .iter()
        .map(|e| {
            eval(e, ctx)?
                .as_ground()
                .and_then(|g| g.as_rational().cloned())
                .ok_or_else(|| EvalError::Type("coordinates are rational numbers".into()))
        })
        .collect::<Result<Vec<Q>, _>>()?;
    Ok(constant(field.from_coords(coords)?))
}

pub fn eval(e: &Expr, ctx: &Context) -> Result<Value, EvalError> {
    match e {
        Expr::Int(n) => Ok(constant(ctx.field.from_rational(Q::from_integer(n.clone())))),
        Expr::Var(name, pos) => variable(name, *pos, ctx),
        Expr::Neg(a) => Ok(neg(eval(a, ctx)?)),
        Expr::Add(a, b) => add(eval(a, ctx)?, eval(b, ctx)?, ctx),
        Expr::Sub(a, b) => add(eval(a, ctx)?, neg(eval(b, ctx)?), ctx),
        Expr::Mul(a, b) => mul(eval(a, ctx)?, eval(b, ctx)?, ctx),
        Expr::Div(a, b) => mul(eval(a, ctx)?, inv(eval(b, ctx)?)?, ctx),
        Expr::Pow(a, k) => pow(eval(a, ctx)?, *k, ctx),
        Expr::Call(name, args, pos) => call(name, args, *pos, ctx),
        Expr::Bracket(items) => bracket(items, ctx),
    }
}

#[derive(Debug)]
pub enum ExprError {
    Syntax(SyntaxError),
    Eval(EvalError),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax(e) => write!(f, "{e}"),
            ExprError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExprError {}

impl From<SyntaxError> for ExprError {
    fn from(e: SyntaxError) -> Self {
        ExprError::Syntax(e)
    }
}

impl From<EvalError> for ExprError {
    fn from(e: EvalError) -> Self {
        ExprError::Eval(e)
    }
}

/// Parses and evaluates.
pub fn evaluate(text: &str, ctx: &Context) -> Result<Value, ExprError> {
    Ok(eval(&parse(text)?, ctx)?)
}

/// The canonical print of the value of `text`.
pub fn canonical(text: &str, ctx: &Context) -> Result<String, ExprError> {
    Ok(evaluate(text, ctx)?.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Context {
        Context::new(GroundField::gaussian_conjugation())
    }

    #[test]
    fn twisted_rule() {
        assert_eq!(canonical("t*i", &qi()).unwrap(), "-[i]*t");
        assert_eq!(canonical("t*i + i*t", &qi()).unwrap(), "0");
        assert_eq!(canonical("(t - i)*(t - i)", &qi()).unwrap(), "-1 + t^2");
    }

    #[test]
    fn unclosed_paren_is_located() {
        let e = parse("t*(").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse("1 +\n  (t").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse("t ^ x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(parse("t $ 1").is_err());
        assert!(parse("t t").is_err());
    }

    #[test]
    fn negative_power_is_a_fraction() {
        let ctx = Context::new(GroundField::rationals());
        let v = evaluate("(1-t)^-1", &ctx).unwrap();
        assert!(matches!(v, Value::Frac(_)));
        assert_eq!(v.to_string(), "(-1 + t)^-1*(-1)");
        assert_eq!(canonical(&v.to_string(), &ctx).unwrap(), v.to_string());
        assert_eq!(canonical("1/2 + 3/2", &qi()).unwrap(), "2");
    }

    #[test]
    fn coordinates_and_symbols_agree() {
        let ctx = qi();
        assert_eq!(canonical("[3, 2]", &ctx).unwrap(), canonical("[3 + 2*i]", &ctx).unwrap());
        assert_eq!(canonical("sigma([3 + 2*i])", &ctx).unwrap(), "[3-2*i]");
        assert_eq!(canonical("sigma(i, 2)", &ctx).unwrap(), "[i]");
        assert_eq!(canonical("s", &ctx).unwrap(), "t^2");
    }

    #[test]
    fn series_print_parses_back() {
        let ctx = Context::new(GroundField::rationals());
        let v = canonical("embed((1-t)^-1, 6)", &ctx).unwrap();
        assert_eq!(v, "t^0*(1 + t + t^2 + t^3 + t^4 + t^5 + O(t^6))");
        assert_eq!(canonical(&v, &ctx).unwrap(), v);
        let w = canonical("embed(t^-2 + 3, 5)", &ctx).unwrap();
        assert_eq!(canonical(&w, &ctx).unwrap(), w);
        let z = canonical("embed(t^3, 8)", &ctx).unwrap();
        assert_eq!(canonical(&z, &ctx).unwrap(), z);
    }

    #[test]
    fn names_need_context() {
        let ctx = Context::new(GroundField::rationals());
        assert!(matches!(evaluate("x", &ctx), Err(ExprError::Eval(EvalError::Unknown { .. }))));
        assert!(matches!(evaluate("i", &ctx), Err(ExprError::Eval(EvalError::Unknown { .. }))));
        assert!(matches!(evaluate("1/0", &ctx), Err(ExprError::Eval(EvalError::Math(Error::DivisionByZero)))));
        let h = Context::new(GroundField::hamilton());
        assert_eq!(canonical("i*j - k", &h).unwrap(), "0");
    }

    #[test]
    fn printing_is_minimal_and_faithful() {
        for text in ["-t^2", "(1 - t)^-1", "a - (b - c)", "a/(b*c)", "-(a + b)*c", "f(a, [1, 2])", "(-a)^2"] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text}");
        }
        assert_eq!(parse("a - (b - c)").unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse("((a))*(b)").unwrap().to_string(), "a*b");
    }
}
