//! Line-based input for `lhverify compute`.
//!
//! ```text
//! # bare lines build the function `_` and the character `_`
//! ball center=0 level=0 coeff=1
//! ball center=1/5 level=1 coeff=z5
//! chi level=1 table=z4 at_p=1 exp=s
//! zeta p=5 f=_ chi=_
//! # named definitions; `+=` extends a ball sum
//! phi = ball center=1/5 level=0 coeff=z5^2
//! phi += ball center=0 level=1 coeff=-1
//! chi1 = chi level=1 table=z4 at_p=1 exp=s
//! w = 3*x^2*gauss+x^4*gauss
//! # requests
//! ft p=5 phi
//! ft p=5 ball(0,0)
//! zeta p=5 f=phi chi=chi1
//! f2 p=5 f=ball(0,-1) t=1/25
//! f2 real W=x^2*gauss t=0.5
//! gamma p=3 chi=tame(1)
//! gamma real chi=abs(-0.3) s=0.25
//! stable p=3 a=-1
//! isometry real W=w phi=gauss delta=2
//! ```

use std::fmt;

use local_harmonic::exact::cyclotomic::parse_cyclotomic;
use local_harmonic::exact::rational::parse_rational;
use local_harmonic::exact::{Cyclotomic, Rational};
use local_harmonic::padic::Exponent;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallSpec {
    pub center: Rational,
    pub level: i64,
    pub coeff: Cyclotomic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BsRef {
    Named(String),
    Inline(Vec<BallSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChiSpec {
    Named(String),
    Trivial,
    Unramified(Cyclotomic),
    Tame(i64),
    Table {
        level: u32,
        table: Vec<Cyclotomic>,
        at_p: Cyclotomic,
        exponent: Exponent,
    },
}

/// `Σ c_k x^k e^{-pi x^2}` as `(c, k)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub enum ArchRef {
    Named(String),
    Inline(Vec<(Rational, usize)>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealChar {
    Trivial,
    Sign,
    Abs(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Ball(BallSpec),
    Chi(ChiSpec),
    Arch(ArchRef),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Request {
    Ft { p: u64, f: BsRef },
    F2 { p: u64, f: BsRef, t: Rational },
    F2Real { w: ArchRef, t: f64 },
    Zeta { p: u64, f: BsRef, chi: ChiSpec },
    Gamma { p: u64, chi: ChiSpec },
    GammaReal { chi: RealChar, s: f64 },
    Stable { p: u64, a: Rational },
    IsometryReal { w: ArchRef, phi: ArchRef, delta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Define { name: String, append: bool, value: Value },
    Request(Request),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub number: usize,
    pub text: String,
    pub statement: Statement,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    column: usize,
    text: &'a str,
}

impl fmt::Display for Token<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text)
    }
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    end: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { column: s + 1, text: &text[s..i] });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { column: s + 1, text: &text[s..] });
    }
    out
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    /// `key=value` arguments after the head, by key; unknown keys are errors.
    fn args(&self, from: usize, allowed: &[&str]) -> Result<Args<'a>, ParseError> {
        let mut pairs = Vec::new();
        let mut positional = Vec::new();
        for t in &self.tokens[from..] {
            match t.text.split_once('=') {
                Some((k, v)) if !k.contains('(') => {
                    if !allowed.contains(&k) {
                        return Err(self.err(t.column, format!("unknown argument '{k}'")));
                    }
                    if pairs.iter().any(|(k2, _): &(&str, Token)| *k2 == k) {
                        return Err(self.err(t.column, format!("duplicate argument '{k}'")));
                    }
                    pairs.push((
                        k,
                        Token {
                            column: t.column + k.len() + 1,
                            text: v,
                        },
                    ));
                }
                _ => positional.push(*t),
            }
        }
        Ok(Args {
            line: self.line,
            end: self.end,
            pairs,
            positional,
        })
    }
}

struct Args<'a> {
    line: usize,
    end: usize,
    pairs: Vec<(&'a str, Token<'a>)>,
    positional: Vec<Token<'a>>,
}

impl<'a> Args<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn get(&self, key: &str) -> Option<Token<'a>> {
        self.pairs.iter().find(|(k, _)| *k == key).map(|(_, t)| *t)
    }

    fn need(&self, key: &str) -> Result<Token<'a>, ParseError> {
        self.get(key)
            .ok_or_else(|| self.err(self.end, format!("missing argument '{key}='")))
    }

    fn no_positional(&self) -> Result<(), ParseError> {
        match self.positional.first() {
            Some(t) => Err(self.err(t.column, format!("unexpected '{t}'"))),
            None => Ok(()),
        }
    }

    fn rational(&self, t: Token) -> Result<Rational, ParseError> {
        parse_rational(t.text).ok_or_else(|| self.err(t.column, format!("expected a rational, found '{t}'")))
    }

    fn int(&self, t: Token) -> Result<i64, ParseError> {
        t.text
            .parse()
            .map_err(|_| self.err(t.column, format!("expected an integer, found '{t}'")))
    }

    fn float(&self, t: Token) -> Result<f64, ParseError> {
        t.text
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| self.err(t.column, format!("expected a number, found '{t}'")))
    }

    fn cyclotomic(&self, t: Token) -> Result<Cyclotomic, ParseError> {
        parse_cyclotomic(t.text)
            .ok_or_else(|| self.err(t.column, format!("expected a cyclotomic expression, found '{t}'")))
    }

    fn prime(&self) -> Result<u64, ParseError> {
        let t = self.need("p")?;
        match t.text.parse::<u64>() {
            Ok(p) if local_harmonic::exact::rational::is_prime(p) => Ok(p),
            _ => Err(self.err(t.column, format!("expected a prime, found '{t}'"))),
        }
    }

    fn ball(&self) -> Result<BallSpec, ParseError> {
        let coeff = match self.get("coeff") {
            Some(t) => self.cyclotomic(t)?,
            None => Cyclotomic::one(),
        };
        Ok(BallSpec {
            center: self.rational(self.need("center")?)?,
            level: self.int(self.need("level")?)?,
            coeff,
        })
    }

    fn chi_table(&self) -> Result<ChiSpec, ParseError> {
        let lt = self.need("level")?;
        let level = u32::try_from(self.int(lt)?).map_err(|_| self.err(lt.column, "level must be nonnegative"))?;
        let table = match self.get("table") {
            None => vec![],
            Some(t) if t.text.is_empty() => vec![],
            Some(t) => {
                let mut vals = Vec::new();
                let mut col = t.column;
                for part in t.text.split(',') {
                    vals.push(self.cyclotomic(Token { column: col, text: part })?);
                    col += part.len() + 1;
                }
                vals
            }
        };
        let at_p = match self.get("at_p") {
            Some(t) => self.cyclotomic(t)?,
            None => Cyclotomic::one(),
        };
        let exponent = match self.get("exp") {
            None => Exponent::Fixed(Rational::from_integer(0.into())),
            Some(t) if t.text == "s" => Exponent::Symbolic,
            Some(t) => Exponent::Fixed(self.rational(t)?),
        };
        Ok(ChiSpec::Table {
            level,
            table,
            at_p,
            exponent,
        })
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits at top-level `+`, keeping a leading `-` with its term.
fn split_terms(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 && i > start => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// `ball(c,n)` or `<cyclotomic>*ball(c,n)`, joined by `+`.
fn inline_balls(args: &Args, t: Token) -> Result<Vec<BallSpec>, ParseError> {
    let mut balls = Vec::new();
    for (off, term) in split_terms(t.text) {
        let col = t.column + off;
        let bad = || args.err(col, format!("expected ball(center,level), found '{term}'"));
        let (coeff, body) = match term.rfind("ball(") {
            Some(0) => (Cyclotomic::one(), term),
            Some(i) if term[..i].ends_with('*') => {
                let c = parse_cyclotomic(&term[..i - 1]).ok_or_else(bad)?;
                (c, &term[i..])
            }
            _ => return Err(bad()),
        };
        let inner = body
            .strip_prefix("ball(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (c, n) = inner.split_once(',').ok_or_else(bad)?;
        balls.push(BallSpec {
            center: parse_rational(c).ok_or_else(bad)?,
            level: n.trim().parse().map_err(|_| bad())?,
            coeff,
        });
    }
    Ok(balls)
}

fn bs_ref(args: &Args, t: Token) -> Result<BsRef, ParseError> {
    if is_name(t.text) {
        Ok(BsRef::Named(t.text.to_string()))
    } else {
        inline_balls(args, t).map(BsRef::Inline)
    }
}

fn chi_ref(args: &Args, t: Token) -> Result<ChiSpec, ParseError> {
    let s = t.text;
    if s == "triv" || s == "trivial" {
        return Ok(ChiSpec::Trivial);
    }
    let call = |name: &str| s.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
    if let Some(inner) = call("unram") {
        return parse_cyclotomic(inner)
            .map(ChiSpec::Unramified)
            .ok_or_else(|| args.err(t.column + 6, format!("expected a cyclotomic expression, found '{inner}'")));
    }
    if let Some(inner) = call("tame") {
        return inner
            .parse()
            .map(ChiSpec::Tame)
            .map_err(|_| args.err(t.column + 5, format!("expected an integer, found '{inner}'")));
    }
    if is_name(s) {
        return Ok(ChiSpec::Named(s.to_string()));
    }
    Err(args.err(t.column, format!("expected triv, unram(..), tame(..) or a name, found '{s}'")))
}

fn arch_terms(args: &Args, t: Token) -> Result<Vec<(Rational, usize)>, ParseError> {
    let mut out = Vec::new();
    for (off, term) in split_terms(t.text) {
        let col = t.column + off;
        let bad = |m: &str| args.err(col, format!("{m} in '{term}'"));
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term),
        };
        let mut coeff = Rational::from_integer(sign.into());
        let mut degree = 0usize;
        let mut gauss = false;
        for factor in body.split('*') {
            if factor == "gauss" {
                if gauss {
                    return Err(bad("repeated gauss"));
                }
                gauss = true;
            } else if factor == "x" {
                degree += 1;
            } else if let Some(k) = factor.strip_prefix("x^") {
                degree += k.parse::<usize>().map_err(|_| bad("bad exponent"))?;
            } else {
                coeff = coeff * parse_rational(factor).ok_or_else(|| bad("bad factor"))?;
            }
        }
        if !gauss {
            return Err(bad("each term needs the factor gauss"));
        }
        out.push((coeff, degree));
    }
    Ok(out)
}

fn arch_ref(args: &Args, t: Token) -> Result<ArchRef, ParseError> {
    if is_name(t.text) && t.text != "gauss" {
        Ok(ArchRef::Named(t.text.to_string()))
    } else {
        arch_terms(args, t).map(ArchRef::Inline)
    }
}

fn real_char(args: &Args, t: Token) -> Result<RealChar, ParseError> {
    match t.text {
        "triv" | "trivial" => Ok(RealChar::Trivial),
        "sgn" | "sign" => Ok(RealChar::Sign),
        s => {
            let inner = s
                .strip_prefix("abs(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| args.err(t.column, format!("expected triv, sgn or abs(u), found '{s}'")))?;
            args.float(Token {
                column: t.column + 4,
                text: inner,
            })
            .map(RealChar::Abs)
        }
    }
}

fn is_real(args: &Args) -> bool {
    args.positional.first().is_some_and(|t| t.text == "real")
}

fn strip_real<'a>(mut args: Args<'a>) -> Args<'a> {
    args.positional.remove(0);
    args
}

fn request(cur: &Cursor, head: Token) -> Result<Request, ParseError> {
    match head.text {
        "ft" => {
            let args = cur.args(1, &["p", "f"])?;
            let p = args.prime()?;
            let f = match (args.get("f"), args.positional.as_slice()) {
                (Some(t), []) => t,
                (None, [t]) => *t,
                (None, []) => return Err(args.err(args.end, "missing function")),
                (_, [_, t, ..]) | (Some(_), [t, ..]) => {
                    return Err(args.err(t.column, format!("unexpected '{t}'")))
                }
            };
            Ok(Request::Ft { p, f: bs_ref(&args, f)? })
        }
        "f2" => {
            let args = cur.args(1, &["p", "f", "W", "t"])?;
            if is_real(&args) {
                let args = strip_real(args);
                args.no_positional()?;
                let w = arch_ref(&args, args.need("W")?)?;
                Ok(Request::F2Real {
                    w,
                    t: args.float(args.need("t")?)?,
                })
            } else {
                args.no_positional()?;
                Ok(Request::F2 {
                    p: args.prime()?,
                    f: bs_ref(&args, args.need("f")?)?,
                    t: args.rational(args.need("t")?)?,
                })
            }
        }
        "zeta" => {
            let args = cur.args(1, &["p", "f", "chi"])?;
            args.no_positional()?;
            Ok(Request::Zeta {
                p: args.prime()?,
                f: bs_ref(&args, args.need("f")?)?,
                chi: chi_ref(&args, args.need("chi")?)?,
            })
        }
        "gamma" => {
            let args = cur.args(1, &["p", "chi", "s"])?;
            if is_real(&args) {
                let args = strip_real(args);
                args.no_positional()?;
                Ok(Request::GammaReal {
                    chi: real_char(&args, args.need("chi")?)?,
                    s: args.float(args.need("s")?)?,
                })
            } else {
                args.no_positional()?;
                Ok(Request::Gamma {
                    p: args.prime()?,
                    chi: chi_ref(&args, args.need("chi")?)?,
                })
            }
        }
        "stable" => {
            let args = cur.args(1, &["p", "a"])?;
            args.no_positional()?;
            Ok(Request::Stable {
                p: args.prime()?,
                a: args.rational(args.need("a")?)?,
            })
        }
        "isometry" => {
            let args = cur.args(1, &["W", "phi", "delta"])?;
            if !is_real(&args) {
                return Err(cur.err(head.column, "only 'isometry real' is available from scripts"));
            }
            let args = strip_real(args);
            args.no_positional()?;
            Ok(Request::IsometryReal {
                w: arch_ref(&args, args.need("W")?)?,
                phi: arch_ref(&args, args.need("phi")?)?,
                delta: args.float(args.need("delta")?)?,
            })
        }
        other => Err(cur.err(head.column, format!("unknown request '{other}'"))),
    }
}

fn definition(cur: &Cursor, name: Token, append: bool) -> Result<Statement, ParseError> {
    let kind = cur
        .tokens
        .get(2)
        .ok_or_else(|| cur.err(cur.end, "missing value after '='"))?;
    let value = match kind.text {
        "ball" => {
            let args = cur.args(3, &["center", "level", "coeff"])?;
            args.no_positional()?;
            Value::Ball(args.ball()?)
        }
        "chi" => {
            let args = cur.args(3, &["level", "table", "at_p", "exp"])?;
            args.no_positional()?;
            Value::Chi(args.chi_table()?)
        }
        _ => {
            let args = cur.args(2, &[])?;
            match args.positional.as_slice() {
                [t] => Value::Arch(ArchRef::Inline(arch_terms(&args, *t)?)),
                [_, t, ..] => return Err(cur.err(t.column, format!("unexpected '{t}'"))),
                [] => unreachable!("kind token present"),
            }
        }
    };
    if append && !matches!(value, Value::Ball(_)) {
        return Err(cur.err(cur.tokens[1].column, "'+=' only extends ball sums"));
    }
    Ok(Statement::Define {
        name: name.text.to_string(),
        append,
        value,
    })
}

pub fn parse_line(number: usize, text: &str) -> Result<Option<Line>, ParseError> {
    let code = text.split('#').next().unwrap_or("");
    let tokens = tokenize(code);
    let Some(head) = tokens.first().copied() else {
        return Ok(None);
    };
    let cur = Cursor {
        line: number,
        end: code.trim_end().len() + 1,
        tokens,
    };
    let statement = match cur.tokens.get(1).map(|t| t.text) {
        // bare `ball ...` lines accumulate into `_`, a bare `chi ...` line defines `_`
        _ if head.text == "ball" || head.text == "chi" => {
            let args = if head.text == "ball" {
                cur.args(1, &["center", "level", "coeff"])?
            } else {
                cur.args(1, &["level", "table", "at_p", "exp"])?
            };
            args.no_positional()?;
            let value = if head.text == "ball" {
                Value::Ball(args.ball()?)
            } else {
                Value::Chi(args.chi_table()?)
            };
            Statement::Define {
                name: "_".into(),
                append: head.text == "ball",
                value,
            }
        }
        Some(op @ ("=" | "+=")) => {
            if !is_name(head.text) {
                return Err(cur.err(head.column, format!("invalid name '{head}'")));
            }
            definition(&cur, head, op == "+=")?
        }
        _ => Statement::Request(request(&cur, head)?),
    };
    Ok(Some(Line {
        number,
        text: code.trim().to_string(),
        statement,
    }))
}

pub fn parse_script(src: &str) -> Result<Vec<Line>, ParseError> {
    src.lines()
        .enumerate()
        .filter_map(|(i, l)| parse_line(i + 1, l).transpose())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_requests() {
        let lines = parse_script("ft p=5 ball(0,0)\nzeta p=3 f=ball(0,0) chi=triv\nf2 real W=x^2*gauss t=0.5\n").unwrap();
        assert_eq!(lines.len(), 3);
        assert!(matches!(&lines[0].statement, Statement::Request(Request::Ft { p: 5, f: BsRef::Inline(b) }) if b.len() == 1));
        assert!(matches!(
            &lines[1].statement,
            Statement::Request(Request::Zeta { p: 3, chi: ChiSpec::Trivial, .. })
        ));
        match &lines[2].statement {
            Statement::Request(Request::F2Real { w: ArchRef::Inline(t), t: x }) => {
                assert_eq!(t, &vec![(Rational::from_integer(1.into()), 2)]);
                assert_eq!(*x, 0.5);
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn definitions() {
        let src = "phi = ball center=1/5 level=0 coeff=z5^2\nphi += ball center=0 level=1\n\
                   c = chi level=1 table=z4 at_p=1 exp=s\nw = 3*x^2*gauss+-1/2*x^4*gauss\n";
        let lines = parse_script(src).unwrap();
        assert!(matches!(&lines[1].statement, Statement::Define { append: true, .. }));
        match &lines[2].statement {
            Statement::Define {
                value: Value::Chi(ChiSpec::Table { level: 1, table, exponent: Exponent::Symbolic, .. }),
                ..
            } => assert_eq!(table.len(), 1),
            s => panic!("{s:?}"),
        }
        match &lines[3].statement {
            Statement::Define { value: Value::Arch(ArchRef::Inline(t)), .. } => assert_eq!(t.len(), 2),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_script("\nft p=4 ball(0,0)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        let e = parse_script("zeta p=3 f=ball(0,x) chi=triv").unwrap_err();
        assert_eq!((e.line, e.column), (1, 12));
        let e = parse_script("gamma p=3 chi=tame(1) bogus=2").unwrap_err();
        assert_eq!(e.column, 23);
        let e = parse_script("frobnicate p=3").unwrap_err();
        assert_eq!(e.column, 1);
        let e = parse_script("f2 real W=x^2 t=1").unwrap_err();
        assert_eq!(e.column, 11);
    }

    #[test]
    fn bare_lines_define_underscore() {
        let lines = parse_script("ball center=0 level=0\nball center=1/3 level=1 coeff=z3\nchi level=0 at_p=-1\n").unwrap();
        assert!(lines.iter().all(|l| matches!(&l.statement, Statement::Define { name, .. } if name == "_")));
    }

    #[test]
    fn comments_and_blank_lines() {
        assert!(parse_script("# nothing\n\n   \n").unwrap().is_empty());
    }
}
