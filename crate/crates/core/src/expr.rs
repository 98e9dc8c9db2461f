//! Text expressions for Seifert spheres, knots, gluings and Gram matrices.
//!
//! ```text
//! expr    := seifert | knot | gluing | lattice
//! seifert := ["-"] "sigma" "(" int {"," int} ")" ["@" int]
//! knot    := ["-"] "torus" "(" int "," int ")"
//!          | "knot" "(" key "=" sint {"," key "=" sint} ")"
//! gluing  := "splice" "(" knot' "," knot' ")"
//!          | "glue" "(" knot' "," knot' ";" key "=" value {"," key "=" value} ")"
//! lattice := JSON array of integer arrays
//! ```
//!
//! `knot'` is a marked Seifert sphere or a knot. Keys of `knot(...)` are
//! `dplus`, `dminus` (d of the two surgeries) or `v0`, `v0mirror`; keys of
//! `glue(...)` are `n1`, `n2` and `sign` (`+` or `-`, default `+`).

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::lattice::GramLattice;
use crate::seifert::{FiberRef, MarkedSeifert, Orientation, SeifertData};
use crate::splice::{GluingSpec, KnotSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Seifert(SeifertData),
    Knot(KnotSpec),
    Gluing(GluingSpec),
    Lattice(GramLattice),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Seifert(d) => d.fmt(f),
            Expr::Knot(k) => k.fmt(f),
            Expr::Gluing(g) => g.fmt(f),
            Expr::Lattice(l) => l.fmt(f),
        }
    }
}

/// Syntax error: where, and what would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    Parse(ParseError),
    /// Well formed text describing an invalid object.
    Semantic { offset: usize, error: Error },
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Parse(p) => p.fmt(f),
            ExprError::Semantic { offset, error } => write!(f, "at byte {offset}: {error}"),
        }
    }
}

impl std::error::Error for ExprError {}

type PResult<T> = std::result::Result<T, ExprError>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        };
        Err(ExprError::Parse(ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }))
    }

    fn semantic<T>(&self, offset: usize, error: Error) -> PResult<T> {
        Err(ExprError::Semantic { offset, error })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &'static str) -> PResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.fail(&[&format!("`{token}`")])
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn digits(&mut self) -> PResult<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return self.fail(&["integer"]);
        }
        self.pos += len;
        Ok((start, &self.src[start..self.pos]))
    }

    fn unsigned(&mut self) -> PResult<u64> {
        let (start, s) = self.digits()?;
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.semantic(start, Error::Overflow("integer literal")),
        }
    }

    fn signed(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat("-") || {
            self.eat("+");
            false
        };
        let (_, s) = self.digits()?;
        let text = if negative { format!("-{s}") } else { s.to_string() };
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.semantic(start, Error::Overflow("integer literal")),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.skip_ws();
        if self.rest().starts_with('[') {
            return self.lattice();
        }
        let start = self.pos;
        let negative = self.eat("-");
        let at = self.pos;
        let head = self.word();
        let e = match head {
            "sigma" => {
                let (data, fiber) = self.sigma(negative)?;
                match fiber {
                    None => Expr::Seifert(data),
                    Some((off, r)) => Expr::Knot(self.mark(data, off, r)?),
                }
            }
            "torus" => Expr::Knot(self.torus(negative)?),
            "knot" | "splice" | "glue" if negative => {
                self.pos = at;
                return self.fail(&["`sigma`", "`torus`"]);
            }
            "knot" => Expr::Knot(self.abstract_knot()?),
            "splice" => Expr::Gluing(self.splice()?),
            "glue" => Expr::Gluing(self.glue()?),
            _ => {
                self.pos = if negative { at } else { start };
                self.skip_ws();
                return if negative {
                    self.fail(&["`sigma`", "`torus`"])
                } else {
                    self.fail(&["`sigma`", "`-`", "`torus`", "`knot`", "`splice`", "`glue`", "`[`"])
                };
            }
        };
        Ok(e)
    }

    fn sigma(&mut self, negative: bool) -> PResult<(SeifertData, Option<(usize, u64)>)> {
        self.expect("(")?;
        let start = self.pos;
        let mut a = vec![self.unsigned()?];
        loop {
            if self.eat(",") {
                a.push(self.unsigned()?);
            } else if self.eat(")") {
                break;
            } else {
                return self.fail(&["`,`", "`)`"]);
            }
        }
        let orientation = if negative { Orientation::Negative } else { Orientation::Positive };
        let data = match SeifertData::new(a, orientation) {
            Ok(d) => d,
            Err(e) => return self.semantic(start, e),
        };
        let fiber = if self.eat("@") {
            let off = self.pos;
            Some((off, self.unsigned()?))
        } else {
            None
        };
        Ok((data, fiber))
    }

    fn mark(&self, data: SeifertData, offset: usize, order: u64) -> PResult<KnotSpec> {
        match MarkedSeifert::new(data, FiberRef::Order(order)) {
            Ok(m) => Ok(KnotSpec::Fiber(m)),
            Err(e) => self.semantic(offset, e),
        }
    }

    fn torus(&mut self, mirrored: bool) -> PResult<KnotSpec> {
        self.expect("(")?;
        let start = self.pos;
        let p = self.unsigned()?;
        self.expect(",")?;
        let q = self.unsigned()?;
        self.expect(")")?;
        KnotSpec::torus(p, q, mirrored).or_else(|e| self.semantic(start, e))
    }

    /// `key = value` pairs up to the closing parenthesis.
    fn pairs(&mut self, keys: &[&'static str], sign_key: Option<&str>) -> PResult<Vec<(&'static str, usize, i64)>> {
        let mut out: Vec<(&'static str, usize, i64)> = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let w = self.word();
            let Some(&key) = keys.iter().find(|&&k| k == w) else {
                self.pos = at;
                let names: Vec<String> = keys.iter().map(|k| format!("`{k}`")).collect();
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                return self.fail(&names);
            };
            if out.iter().any(|(k, _, _)| *k == key) {
                return self.semantic(at, Error::MissingData(format!("`{key}` given twice")));
            }
            self.expect("=")?;
            let value = if Some(key) == sign_key {
                if self.eat("+") {
                    1
                } else if self.eat("-") {
                    -1
                } else {
                    return self.fail(&["`+`", "`-`"]);
                }
            } else {
                self.signed()?
            };
            out.push((key, at, value));
            if self.eat(")") {
                return Ok(out);
            }
            if !self.eat(",") {
                return self.fail(&["`,`", "`)`"]);
            }
        }
    }

    fn abstract_knot(&mut self) -> PResult<KnotSpec> {
        self.expect("(")?;
        let start = self.pos;
        let pairs = self.pairs(&["dplus", "dminus", "v0", "v0mirror"], None)?;
        let get = |k: &str| pairs.iter().find(|p| p.0 == k).map(|p| p.2);
        let result = match (get("dplus"), get("dminus"), get("v0"), get("v0mirror")) {
            (Some(a), Some(b), None, None) => KnotSpec::surgeries(a, b),
            (None, None, Some(a), Some(b)) => KnotSpec::v0(a, b),
            _ => Err(Error::MissingData("knot needs either dplus and dminus, or v0 and v0mirror".into())),
        };
        result.or_else(|e| self.semantic(start, e))
    }

    fn knot_operand(&mut self) -> PResult<KnotSpec> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat("-");
        let at = self.pos;
        match self.word() {
            "sigma" => {
                let (data, fiber) = self.sigma(negative)?;
                match fiber {
                    Some((off, r)) => self.mark(data, off, r),
                    None => self.fail(&["`@`"]),
                }
            }
            "torus" => self.torus(negative),
            "knot" if !negative => self.abstract_knot(),
            _ => {
                self.pos = if negative { at } else { start };
                if negative {
                    self.fail(&["`sigma`", "`torus`"])
                } else {
                    self.fail(&["`sigma`", "`-`", "`torus`", "`knot`"])
                }
            }
        }
    }

    fn splice(&mut self) -> PResult<GluingSpec> {
        self.expect("(")?;
        let a = self.knot_operand()?;
        self.expect(",")?;
        let b = self.knot_operand()?;
        self.expect(")")?;
        Ok(GluingSpec::splice(a, b))
    }

    fn glue(&mut self) -> PResult<GluingSpec> {
        self.expect("(")?;
        let a = self.knot_operand()?;
        self.expect(",")?;
        let b = self.knot_operand()?;
        self.expect(";")?;
        let start = self.pos;
        let pairs = self.pairs(&["n1", "n2", "sign"], Some("sign"))?;
        let get = |k: &str| pairs.iter().find(|p| p.0 == k).map(|p| p.2);
        let (Some(n1), Some(n2)) = (get("n1"), get("n2")) else {
            return self.semantic(start, Error::MissingData("glue needs n1 and n2".into()));
        };
        let g = GluingSpec {
            knots: [a, b],
            twists: [n1, n2],
            sign: get("sign").unwrap_or(1),
        };
        match g.matrix() {
            Ok(_) => Ok(g),
            Err(e) => self.semantic(start, e),
        }
    }

    fn lattice(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let mut stream = serde_json::Deserializer::from_str(self.rest()).into_iter::<serde_json::Value>();
        let value = match stream.next() {
            Some(Ok(v)) => v,
            Some(Err(e)) => {
                // serde_json reports line and column; convert to a byte offset
                let line_start: usize = self.rest().split_inclusive('\n').take(e.line().saturating_sub(1)).map(str::len).sum();
                self.pos = start + line_start + e.column().saturating_sub(1);
                return self.fail(&["JSON array of integer arrays"]);
            }
            None => return self.fail(&["`[`"]),
        };
        self.pos = start + stream.byte_offset();
        let rows: Vec<Vec<i64>> = match serde_json::from_value(value) {
            Ok(r) => r,
            Err(_) => {
                self.pos = start;
                return self.fail(&["JSON array of integer arrays"]);
            }
        };
        match GramLattice::new(rows) {
            Ok(l) => Ok(Expr::Lattice(l)),
            Err(e) => self.semantic(start, e),
        }
    }
}

/// Parse a complete expression; trailing input is an error.
pub fn parse_expression(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail(&["end of input"]);
    }
    Ok(e)
}
