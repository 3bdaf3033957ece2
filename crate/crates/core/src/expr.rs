//! The ring-expression language: parser, canonical printer and evaluator.
//!
//! ```text
//! expr    := name "(" args ")"
//! args    := (arg ("," arg)*)?
//! arg     := integer | expr | group | "#" integer | endo | "J"
//! group   := "C" "(" integer ")" ("x" group)?
//! endo    := "id" | "frob" | "endo" "#" integer
//! ```
//!
//! `J` is accepted only as the second argument of `Quot` and stands for the
//! Jacobson radical of the first.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::constructors::{
    dt, endomorphism_by_name, formal_triangular, gf, group_ring, k_s, m_n_s, matrix, poly_quot,
    product, skew_triangular, trivial_extension_regular, trivial_morita, upper_triangular, zmod,
    Bimodule, GroupTable,
};
use crate::error::RingError;
use crate::ideal::{ideal_generated, quotient};
use crate::invariants::jacobson;
use crate::ring::FiniteRing;
use crate::subring::corner;

/// Largest dimension, exponent or group order accepted before construction.
const DIM_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ctor {
    Zmod,
    GF,
    Prod,
    Mat,
    UT,
    SkewUT,
    Triv,
    DT,
    PolyQ,
    GrpRing,
    FTri,
    Ks,
    Mns,
    TrivMorita,
    Quot,
    Corner,
}

impl Ctor {
    pub const ALL: [Ctor; 16] = [
        Ctor::Zmod,
        Ctor::GF,
        Ctor::Prod,
        Ctor::Mat,
        Ctor::UT,
        Ctor::SkewUT,
        Ctor::Triv,
        Ctor::DT,
        Ctor::PolyQ,
        Ctor::GrpRing,
        Ctor::FTri,
        Ctor::Ks,
        Ctor::Mns,
        Ctor::TrivMorita,
        Ctor::Quot,
        Ctor::Corner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ctor::Zmod => "Zmod",
            Ctor::GF => "GF",
            Ctor::Prod => "Prod",
            Ctor::Mat => "Mat",
            Ctor::UT => "UT",
            Ctor::SkewUT => "SkewUT",
            Ctor::Triv => "Triv",
            Ctor::DT => "DT",
            Ctor::PolyQ => "PolyQ",
            Ctor::GrpRing => "GrpRing",
            Ctor::FTri => "FTri",
            Ctor::Ks => "Ks",
            Ctor::Mns => "Mns",
            Ctor::TrivMorita => "TrivMorita",
            Ctor::Quot => "Quot",
            Ctor::Corner => "Corner",
        }
    }

    pub fn from_name(s: &str) -> Option<Ctor> {
        Ctor::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Accepted argument shapes, for diagnostics.
    fn signature(self) -> &'static str {
        match self {
            Ctor::Zmod => "Zmod(n)",
            Ctor::GF => "GF(q)",
            Ctor::Prod => "Prod(R, S, ...)",
            Ctor::Mat => "Mat(k, R)",
            Ctor::UT => "UT(k, R)",
            Ctor::SkewUT => "SkewUT(k, R, endo)",
            Ctor::Triv => "Triv(R)",
            Ctor::DT => "DT(R)",
            Ctor::PolyQ => "PolyQ(R, endo, n)",
            Ctor::GrpRing => "GrpRing(R, group)",
            Ctor::FTri => "FTri(R) or FTri(R, S)",
            Ctor::Ks => "Ks(R, #s)",
            Ctor::Mns => "Mns(k, R, #s)",
            Ctor::TrivMorita => "TrivMorita(A) or TrivMorita(A, B)",
            Ctor::Quot => "Quot(R, #a, ...) or Quot(R, J)",
            Ctor::Corner => "Corner(R, #e)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(u64),
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

impl GroupExpr {
    pub fn order(&self) -> u128 {
        match self {
            GroupExpr::Cyclic(n) => *n as u128,
            GroupExpr::Product(a, b) => a.order().saturating_mul(b.order()),
        }
    }

    pub fn build(&self) -> Result<GroupTable, RingError> {
        if self.order() > DIM_LIMIT as u128 {
            return Err(RingError::SizeOverflow(self.order()));
        }
        match self {
            GroupExpr::Cyclic(n) => GroupTable::cyclic(*n as usize),
            GroupExpr::Product(a, b) => a.build()?.direct_product(&b.build()?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EndoName {
    Id,
    Frob,
    Indexed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Arg {
    Int(u64),
    Ring(RingExpr),
    Group(GroupExpr),
    Elem(u64),
    Endo(EndoName),
    Radical,
}

/// Byte offset into the source text.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub start: usize,
}

/// A parsed constructor application. Equality and hashing ignore the span.
#[derive(Debug, Clone)]
pub struct RingExpr {
    pub ctor: Ctor,
    pub args: Vec<Arg>,
    pub span: Span,
}

impl PartialEq for RingExpr {
    fn eq(&self, other: &Self) -> bool {
        self.ctor == other.ctor && self.args == other.args
    }
}

impl Eq for RingExpr {}

impl std::hash::Hash for RingExpr {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctor.hash(state);
        self.args.hash(state);
    }
}

impl RingExpr {
    pub fn new(ctor: Ctor, args: Vec<Arg>) -> Self {
        RingExpr {
            ctor,
            args,
            span: Span::default(),
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C({n})"),
            GroupExpr::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

impl fmt::Display for EndoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoName::Id => f.write_str("id"),
            EndoName::Frob => f.write_str("frob"),
            EndoName::Indexed(k) => write!(f, "endo#{k}"),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Int(n) => write!(f, "{n}"),
            Arg::Ring(e) => write!(f, "{e}"),
            Arg::Group(g) => write!(f, "{g}"),
            Arg::Elem(k) => write!(f, "#{k}"),
            Arg::Endo(e) => write!(f, "{e}"),
            Arg::Radical => f.write_str("J"),
        }
    }
}

/// Canonical form: no whitespace except one space after each comma.
impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.ctor.name())?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// A positioned failure from parsing or evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub code: &'static str,
    pub message: String,
    pub line: usize,
    pub column: usize,
    /// Present when evaluation failed inside the engine.
    pub cause: Option<RingError>,
}

impl ExprError {
    fn at(src: &str, offset: usize, code: &'static str, message: String) -> Self {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ExprError {
            code,
            message,
            line,
            column,
            cause: None,
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        self.cause.as_ref().is_some_and(RingError::is_resource_cap)
    }

    pub fn is_parse_error(&self) -> bool {
        self.cause.is_none()
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.code, self.message)
    }
}

impl std::error::Error for ExprError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn err(&self, offset: usize, code: &'static str, message: impl Into<String>) -> ExprError {
        ExprError::at(self.src, offset, code, message.into())
    }

    fn describe_here(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("'{c}'"),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ExprError> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.pos, "syntax", format!("expected '{want}', found {}", self.describe_here())))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn integer(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.err(start, "syntax", format!("expected an integer, found {}", self.describe_here())));
        }
        self.pos += len;
        self.src[start..start + len]
            .parse()
            .map_err(|_| self.err(start, "syntax", "integer literal too large"))
    }

    fn expr(&mut self) -> Result<RingExpr, ExprError> {
        let Some((start, name)) = self.ident() else {
            return Err(self.err(self.pos, "syntax", format!("expected a constructor name, found {}", self.describe_here())));
        };
        let ctor = Ctor::from_name(name)
            .ok_or_else(|| self.err(start, "unknown-name", format!("unknown constructor '{name}'")))?;
        self.finish_expr(ctor, start)
    }

    fn finish_expr(&mut self, ctor: Ctor, start: usize) -> Result<RingExpr, ExprError> {
        self.expect('(')?;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.pos += 1;
        } else {
            loop {
                args.push(self.arg()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        return Err(self.err(
                            self.pos,
                            "syntax",
                            format!("expected ',' or ')', found {}", self.describe_here()),
                        ))
                    }
                }
            }
        }
        let e = RingExpr {
            ctor,
            args,
            span: Span { start },
        };
        check_signature(&e).map_err(|m| self.err(start, "arity", m))?;
        Ok(e)
    }

    fn group_atom(&mut self) -> Result<GroupExpr, ExprError> {
        let at = self.pos;
        match self.ident() {
            Some((_, "C")) => {}
            _ => return Err(self.err(at, "syntax", "expected a cyclic group C(n)")),
        }
        self.expect('(')?;
        let n = self.integer()?;
        self.expect(')')?;
        Ok(GroupExpr::Cyclic(n))
    }

    /// `C(n)` already consumed up to the name; parses the rest of a group.
    fn group_tail(&mut self, first: GroupExpr) -> Result<GroupExpr, ExprError> {
        self.skip_ws();
        if self.peek() == Some('x') {
            self.pos += 1;
            let rhs = self.group_atom()?;
            let rest = self.group_tail(rhs)?;
            Ok(GroupExpr::Product(Box::new(first), Box::new(rest)))
        } else {
            Ok(first)
        }
    }

    fn arg(&mut self) -> Result<Arg, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Arg::Int(self.integer()?)),
            Some('#') => {
                self.pos += 1;
                Ok(Arg::Elem(self.integer()?))
            }
            _ => {
                let Some((start, name)) = self.ident() else {
                    return Err(self.err(self.pos, "syntax", format!("expected an argument, found {}", self.describe_here())));
                };
                match name {
                    "id" => Ok(Arg::Endo(EndoName::Id)),
                    "frob" => Ok(Arg::Endo(EndoName::Frob)),
                    "J" => Ok(Arg::Radical),
                    "endo" => {
                        self.expect('#')?;
                        Ok(Arg::Endo(EndoName::Indexed(self.integer()?)))
                    }
                    "C" => {
                        self.pos = start;
                        let g = self.group_atom()?;
                        Ok(Arg::Group(self.group_tail(g)?))
                    }
                    _ => match Ctor::from_name(name) {
                        Some(ctor) => Ok(Arg::Ring(self.finish_expr(ctor, start)?)),
                        None => Err(self.err(start, "unknown-name", format!("unknown name '{name}'"))),
                    },
                }
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Int,
    Ring,
    Group,
    Elem,
    Endo,
}

fn slot_of(a: &Arg) -> Slot {
    match a {
        Arg::Int(_) => Slot::Int,
        Arg::Ring(_) => Slot::Ring,
        Arg::Group(_) => Slot::Group,
        Arg::Elem(_) | Arg::Radical => Slot::Elem,
        Arg::Endo(_) => Slot::Endo,
    }
}

fn check_signature(e: &RingExpr) -> Result<(), String> {
    use Slot::*;
    let slots: Vec<Slot> = e.args.iter().map(slot_of).collect();
    let ok = match e.ctor {
        Ctor::Zmod | Ctor::GF => slots == [Int],
        Ctor::Prod => !slots.is_empty() && slots.iter().all(|&s| s == Ring),
        Ctor::Mat | Ctor::UT => slots == [Int, Ring],
        Ctor::SkewUT => slots == [Int, Ring, Endo],
        Ctor::Triv | Ctor::DT => slots == [Ring],
        Ctor::PolyQ => slots == [Ring, Endo, Int],
        Ctor::GrpRing => slots == [Ring, Group],
        Ctor::FTri | Ctor::TrivMorita => slots == [Ring] || slots == [Ring, Ring],
        Ctor::Ks | Ctor::Corner => {
            slots == [Ring, Elem] && !matches!(e.args[1], Arg::Radical)
        }
        Ctor::Mns => slots == [Int, Ring, Elem] && !matches!(e.args[2], Arg::Radical),
        Ctor::Quot => {
            slots.len() >= 2
                && slots[0] == Ring
                && slots[1..].iter().all(|&s| s == Elem)
                && (e.args.len() == 2 || !e.args[1..].contains(&Arg::Radical))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "{} does not accept these arguments; expected {}",
            e.ctor.name(),
            e.ctor.signature()
        ))
    }
}

/// Parses one expression; trailing text is an error.
pub fn parse_ring_expr(text: &str) -> Result<RingExpr, ExprError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err(p.pos, "syntax", format!("unexpected trailing {}", p.describe_here())));
    }
    Ok(e)
}

/// Evaluates expressions, sharing rings between equal subexpressions.
#[derive(Default)]
pub struct Evaluator {
    memo: HashMap<RingExpr, FiniteRing>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Evaluates a top-level expression; the zero ring is rejected here.
    pub fn eval(&mut self, e: &RingExpr, src: &str) -> Result<FiniteRing, ExprError> {
        let r = self.eval_inner(e, src)?;
        if r.is_degenerate() {
            return Err(ring_error(src, e, RingError::ZeroRing));
        }
        Ok(r)
    }

    /// Evaluates a subexpression; the zero ring is allowed.
    pub fn eval_part(&mut self, e: &RingExpr) -> Result<FiniteRing, ExprError> {
        self.eval_inner(e, "")
    }

    fn eval_inner(&mut self, e: &RingExpr, src: &str) -> Result<FiniteRing, ExprError> {
        if let Some(r) = self.memo.get(e) {
            return Ok(r.clone());
        }
        let mut rings = Vec::new();
        for a in &e.args {
            if let Arg::Ring(sub) = a {
                rings.push(self.eval_inner(sub, src)?);
            }
        }
        let r = build(e, &rings)
            .map_err(|err| ring_error(src, e, err))?
            .with_provenance(e.to_string());
        self.memo.insert(e.clone(), r.clone());
        Ok(r)
    }
}

fn ring_error(src: &str, e: &RingExpr, err: RingError) -> ExprError {
    let mut x = ExprError::at(src, e.span.start, err.code(), format!("{}: {err}", e.ctor.name()));
    x.cause = Some(err);
    x
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str) -> Result<(RingExpr, FiniteRing), ExprError> {
    let e = parse_ring_expr(text)?;
    let r = Evaluator::new().eval(&e, text)?;
    Ok((e, r))
}

fn dim(n: u64) -> Result<usize, RingError> {
    if n > DIM_LIMIT {
        Err(RingError::InvalidArgument(format!("{n} exceeds the dimension limit {DIM_LIMIT}")))
    } else {
        Ok(n as usize)
    }
}

fn prime_power(q: u64) -> Result<(u64, u32), RingError> {
    let not = || RingError::InvalidArgument(format!("{q} is not a prime power"));
    let p = (2..=q).find(|d| q % d == 0).ok_or_else(not)?;
    let (mut m, mut k) = (q, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m == 1 {
        Ok((p, k))
    } else {
        Err(not())
    }
}

fn build(e: &RingExpr, rings: &[FiniteRing]) -> Result<FiniteRing, RingError> {
    let int = |i: usize| match e.args[i] {
        Arg::Int(n) => n,
        _ => unreachable!("signature checked"),
    };
    let elem = |i: usize, r: &FiniteRing| match e.args[i] {
        Arg::Elem(k) => r.check_elem(k),
        _ => unreachable!("signature checked"),
    };
    let endo = |i: usize, r: &FiniteRing| match &e.args[i] {
        Arg::Endo(name) => endomorphism_by_name(r, &name.to_string()),
        _ => unreachable!("signature checked"),
    };
    let regular = |r: &FiniteRing| Arc::new(Bimodule::regular(r));
    match e.ctor {
        Ctor::Zmod => zmod(int(0)),
        Ctor::GF => {
            let (p, k) = prime_power(int(0))?;
            gf(p, k)
        }
        Ctor::Prod => product(rings),
        Ctor::Mat => matrix(dim(int(0))?, &rings[0]),
        Ctor::UT => upper_triangular(dim(int(0))?, &rings[0]),
        Ctor::SkewUT => skew_triangular(dim(int(0))?, &rings[0], &endo(2, &rings[0])?),
        Ctor::Triv => trivial_extension_regular(&rings[0]),
        Ctor::DT => dt(&rings[0], &regular(&rings[0])),
        Ctor::PolyQ => poly_quot(&rings[0], &endo(1, &rings[0])?, dim(int(2))?),
        Ctor::GrpRing => match &e.args[1] {
            Arg::Group(g) => group_ring(&rings[0], &g.build()?),
            _ => unreachable!("signature checked"),
        },
        Ctor::FTri => match rings {
            [r] => formal_triangular(r, r, &regular(r)),
            [r, s] => formal_triangular(r, s, &Arc::new(Bimodule::zero(r, s))),
            _ => unreachable!("signature checked"),
        },
        Ctor::Ks => k_s(&rings[0], elem(1, &rings[0])?),
        Ctor::Mns => m_n_s(dim(int(0))?, &rings[0], elem(2, &rings[0])?),
        Ctor::TrivMorita => match rings {
            [a] => trivial_morita(a, a, &regular(a), &regular(a)),
            [a, b] => trivial_morita(
                a,
                b,
                &Arc::new(Bimodule::zero(a, b)),
                &Arc::new(Bimodule::zero(b, a)),
            ),
            _ => unreachable!("signature checked"),
        },
        Ctor::Quot => {
            let r = &rings[0];
            let ideal = if e.args[1] == Arg::Radical {
                jacobson(r)?.clone()
            } else {
                let gens = (1..e.args.len())
                    .map(|i| elem(i, r))
                    .collect::<Result<Vec<_>, _>>()?;
                ideal_generated(r, &gens)
            };
            Ok(quotient(r, &ideal)?.0)
        }
        Ctor::Corner => corner(&rings[0], elem(1, &rings[0])?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::units;

    fn roundtrip(s: &str) {
        let e = parse_ring_expr(s).unwrap();
        assert_eq!(e.to_string(), s);
        assert_eq!(parse_ring_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn parses_examples() {
        let e = parse_ring_expr("Ks(Zmod(4), #2)").unwrap();
        assert_eq!(e.ctor, Ctor::Ks);
        assert_eq!(e.args[0], Arg::Ring(RingExpr::new(Ctor::Zmod, vec![Arg::Int(4)])));
        assert_eq!(e.args[1], Arg::Elem(2));
        let g = parse_ring_expr("GrpRing(Zmod(2), C(2)xC(2))").unwrap();
        assert_eq!(
            g.args[1],
            Arg::Group(GroupExpr::Product(
                Box::new(GroupExpr::Cyclic(2)),
                Box::new(GroupExpr::Cyclic(2))
            ))
        );
        for s in [
            "Ks(Zmod(4), #2)",
            "GrpRing(Zmod(2), C(2)xC(2))",
            "SkewUT(2, GF(4), frob)",
            "PolyQ(Zmod(4), endo#0, 3)",
            "Quot(Triv(Zmod(4)), J)",
            "Quot(Zmod(12), #4, #6)",
            "Prod(Zmod(2), GF(9))",
            "Corner(Mat(2, Zmod(2)), #9)",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_ring_expr(" Mat ( 2 ,\n  Zmod( 2 ) ) ").unwrap();
        assert_eq!(a.to_string(), "Mat(2, Zmod(2))");
        let g = parse_ring_expr("GrpRing(Zmod(2), C(2) x C(3))").unwrap();
        assert_eq!(g.to_string(), "GrpRing(Zmod(2), C(2)xC(3))");
    }

    #[test]
    fn diagnostics() {
        let e = parse_ring_expr("Mat(2 Zmod(2))").unwrap_err();
        assert_eq!((e.code, e.line, e.column), ("syntax", 1, 7));
        let e = parse_ring_expr("Foo(2)").unwrap_err();
        assert_eq!((e.code, e.column), ("unknown-name", 1));
        let e = parse_ring_expr("Mat(2, Zmod(2), 3)").unwrap_err();
        assert_eq!(e.code, "arity");
        let e = parse_ring_expr("Zmod(Zmod(2))").unwrap_err();
        assert_eq!(e.code, "arity");
        let e = parse_ring_expr("Mat(2,\n  Zmod(2)").unwrap_err();
        assert_eq!((e.code, e.line, e.column), ("syntax", 2, 10));
        let e = parse_ring_expr("Zmod(4) x").unwrap_err();
        assert_eq!(e.code, "syntax");
        assert!(parse_ring_expr("Zmod(99999999999999999999999)").is_err());
        assert!(parse_ring_expr("").is_err());
        assert!(parse_ring_expr("Corner(Zmod(4), J)").is_err());
        assert!(parse_ring_expr("Quot(Zmod(4), J, #2)").is_err());
        assert!(parse_ring_expr("GrpRing(Zmod(2), C(2)x)").is_err());
        assert!(parse_ring_expr("Ks(Zmod(4), é)").is_err());
    }

    #[test]
    fn evaluates() {
        let (_, r) = eval_str("Zmod(6)").unwrap();
        assert_eq!(r.size(), 6);
        assert_eq!(r.provenance(), "Zmod(6)");
        let (_, m) = eval_str("Mat(2,Zmod(2))").unwrap();
        assert_eq!(m.provenance(), "Mat(2, Zmod(2))");
        assert_eq!(units(&m).unwrap().len(), 6);
        assert_eq!(eval_str("GF(8)").unwrap().1.size(), 8);
        assert_eq!(eval_str("Quot(Triv(Zmod(4)), J)").unwrap().1.size(), 2);
        assert_eq!(eval_str("Quot(Zmod(12), #4)").unwrap().1.size(), 4);
        assert_eq!(eval_str("TrivMorita(Zmod(2), Zmod(3))").unwrap().1.size(), 6);
        assert_eq!(eval_str("TrivMorita(Zmod(2))").unwrap().1.size(), 16);
        assert_eq!(eval_str("FTri(Zmod(2), Zmod(3))").unwrap().1.size(), 6);
        assert_eq!(eval_str("GrpRing(Zmod(2), C(2)xC(2))").unwrap().1.size(), 16);
        assert_eq!(eval_str("Corner(Mat(2, Zmod(2)), #1)").unwrap().1.size(), 2);
    }

    #[test]
    fn evaluation_errors() {
        let e = eval_str("Corner(Mat(2, Zmod(2)), #2)").unwrap_err();
        assert_eq!(e.code, "not-idempotent");
        assert_eq!(e.column, 1);
        let e = eval_str("Ks(UT(2, Zmod(2)), #1)").unwrap_err();
        assert_eq!(e.code, "not-central");
        let e = eval_str("Mat(2, Mat(3, Zmod(8)))").unwrap_err();
        assert!(e.is_resource_cap());
        assert_eq!(e.column, 8);
        assert_eq!(eval_str("GF(6)").unwrap_err().code, "invalid-argument");
        assert_eq!(eval_str("Zmod(1)").unwrap_err().code, "invalid-argument");
        assert_eq!(eval_str("Quot(Zmod(4), #1)").unwrap_err().code, "zero-ring");
        assert_eq!(eval_str("Zmod(4)").map(|_| ()), Ok(()));
        assert_eq!(eval_str("Ks(Zmod(4), #9)").unwrap_err().code, "element-out-of-range");
        assert_eq!(eval_str("PolyQ(Zmod(4), frob, 2)").unwrap_err().code, "invalid-argument");
        assert_eq!(eval_str("PolyQ(Zmod(2), id, 100000)").unwrap_err().code, "invalid-argument");
    }

    #[test]
    fn memo_shares_rings() {
        let mut ev = Evaluator::new();
        let src = "Prod(Zmod(2), Zmod(2))";
        let e = parse_ring_expr(src).unwrap();
        ev.eval(&e, src).unwrap();
        let z2 = RingExpr::new(Ctor::Zmod, vec![Arg::Int(2)]);
        assert_eq!(ev.memo.len(), 2);
        assert_eq!(ev.eval(&z2, "").unwrap().id(), ev.memo[&z2].id());
    }

    #[test]
    fn mns_of_z8_is_4096() {
        let (_, r) = eval_str("Mns(2, Zmod(8), #2)").unwrap();
        assert_eq!(r.size(), 4096);
    }
}
