//! The line-oriented input format for Lie-algebra definition files.
//!
//! Grammar (one directive per line, `#` starts a comment):
//!
//! ```text
//! algebra <name>
//! basis <id> <id> ...
//! bracket [<id>,<id>] = <lin-comb>
//! subalgebra <name> = <lin-comb> (; <lin-comb>)*
//! form <name>: <id>=<rat> (, <id>=<rat>)*
//! character <name> on <subalgebra>: <id>=<rat> (, <id>=<rat>)*
//! ```
//!
//! A `<lin-comb>` is `c1*id1 + c2*id2 + ...` with rational coefficients
//! (bare `id` means coefficient 1, a literal `0` means the zero vector).
//! Unspecified brackets vanish.  Character assignments define a functional
//! on the whole algebra whose restriction to the named subalgebra is the
//! character; the restriction must vanish on brackets of the subalgebra.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num::BigInt;

use crate::coeff::{Coeff, Rat};
use crate::error::Error;
use crate::lie::{self, CharacterFunctional, LieAlgebra, LinearForm, Subalgebra, Subspace};
use crate::orbits::extend_character;

/// A syntactic or semantic defect in an input file, with its position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based column number.
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// The parsed payload of a definition file.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub algebra: LieAlgebra<Rat>,
    pub subalgebras: Vec<(String, Subalgebra<Rat>)>,
    /// `(character name, subalgebra name, functional)`.
    pub characters: Vec<(String, String, CharacterFunctional<Rat>)>,
    pub forms: Vec<(String, LinearForm<Rat>)>,
}

impl AlgebraFile {
    pub fn subalgebra(&self, name: &str) -> Option<&Subalgebra<Rat>> {
        self.subalgebras
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    pub fn character(&self, name: &str) -> Option<&CharacterFunctional<Rat>> {
        self.characters
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, _, c)| c)
    }

    pub fn form(&self, name: &str) -> Option<&LinearForm<Rat>> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Canonical source text; reparsing yields an identical payload.
    pub fn pretty(&self) -> String {
        let names = self.algebra.names();
        let mut out = String::new();
        out.push_str(&format!("algebra {}\n", self.name));
        out.push_str(&format!("basis {}\n", names.join(" ")));
        let n = self.algebra.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let coords = self.algebra.bracket_basis(i, j);
                if coords.iter().all(Coeff::is_zero) {
                    continue;
                }
                out.push_str(&format!(
                    "bracket [{},{}] = {}\n",
                    names[i],
                    names[j],
                    print_lincomb(names, &coords)
                ));
            }
        }
        for (name, sub) in &self.subalgebras {
            let rows: Vec<String> = sub
                .basis()
                .iter()
                .map(|r| print_lincomb(names, r))
                .collect();
            let rhs = if rows.is_empty() {
                "0".to_string()
            } else {
                rows.join("; ")
            };
            out.push_str(&format!("subalgebra {name} = {rhs}\n"));
        }
        for (name, subname, chi) in &self.characters {
            let dual = extend_character(&self.algebra, chi);
            out.push_str(&format!(
                "character {name} on {subname}:{}\n",
                print_assignments(names, dual.coords())
            ));
        }
        for (name, form) in &self.forms {
            out.push_str(&format!(
                "form {name}:{}\n",
                print_assignments(names, form.coords())
            ));
        }
        out
    }
}

fn print_lincomb(names: &[String], coords: &[Rat]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if *c == Rat::one() {
            parts.push(names[i].clone());
        } else {
            parts.push(format!("{}*{}", c, names[i]));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn print_assignments(names: &[String], coords: &[Rat]) -> String {
    let parts: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}={}", names[i], c))
        .collect();
    if parts.is_empty() {
        String::new()
    } else {
        format!(" {}", parts.join(", "))
    }
}

/// Character-level cursor over a single (comment-stripped) line.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        self.err_at(self.pos, msg)
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: pos + 1,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    /// `[A-Za-z_][A-Za-z0-9_]*`, returned with its starting position.
    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.err("expected an identifier")),
        }
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((start, s))
    }

    /// `[+-]? digits (/ digits)?`
    fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut num = String::new();
        if matches!(self.peek(), Some('+') | Some('-')) {
            num.push(self.peek().unwrap());
            self.pos += 1;
        }
        let digits = |cur: &mut Cursor, buf: &mut String| -> Result<(), ParseError> {
            let mut any = false;
            while matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
                buf.push(cur.peek().unwrap());
                cur.pos += 1;
                any = true;
            }
            if any {
                Ok(())
            } else {
                Err(cur.err_at(start, "malformed rational literal"))
            }
        };
        digits(self, &mut num)?;
        let numerator =
            BigInt::from_str(&num).map_err(|_| self.err_at(start, "malformed rational literal"))?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let mut den = String::new();
            digits(self, &mut den)?;
            let denominator = BigInt::from_str(&den)
                .map_err(|_| self.err_at(start, "malformed rational literal"))?;
            if denominator == BigInt::from(0) {
                return Err(self.err_at(start, "rational literal with zero denominator"));
            }
            Ok(Rat::new(numerator, denominator))
        } else {
            Ok(Rat::from_integer(numerator))
        }
    }
}

/// Parses a linear combination of basis ids, stopping before any character
/// in `stops` or at end of line.
fn lin_comb(
    cur: &mut Cursor,
    index: &HashMap<String, usize>,
    dim: usize,
    stops: &[char],
) -> Result<Vec<Rat>, ParseError> {
    let mut out = vec![Rat::zero(); dim];
    cur.skip_ws();
    // A literal `0` denotes the zero vector.
    if cur.peek() == Some('0') {
        let save = cur.pos;
        cur.pos += 1;
        cur.skip_ws();
        match cur.peek() {
            None => return Ok(out),
            Some(c) if stops.contains(&c) => return Ok(out),
            _ => cur.pos = save,
        }
    }
    loop {
        cur.skip_ws();
        let mut sign = Rat::one();
        if cur.eat('-') {
            sign = sign.neg();
        } else {
            let _ = cur.eat('+');
        }
        cur.skip_ws();
        let coeff = match cur.peek() {
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                let r = cur.rational()?;
                cur.expect('*')?;
                r
            }
            _ => Rat::one(),
        };
        let (pos, id) = cur.ident()?;
        let idx = *index
            .get(&id)
            .ok_or_else(|| cur.err_at(pos, format!("unknown identifier `{id}`")))?;
        out[idx] = out[idx].add(&coeff.mul(&sign));
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(c) if stops.contains(&c) => break,
            Some('+') | Some('-') => {}
            Some(_) => return Err(cur.err("expected `+`, `-`, or end of combination")),
        }
    }
    Ok(out)
}

/// Parses `id=rat (, id=rat)*` (possibly empty) into coordinates on the
/// basis, rejecting duplicate assignments.
fn assignments(
    cur: &mut Cursor,
    index: &HashMap<String, usize>,
    dim: usize,
) -> Result<Vec<Rat>, ParseError> {
    let mut out = vec![Rat::zero(); dim];
    let mut seen = HashSet::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        let (pos, id) = cur.ident()?;
        let idx = *index
            .get(&id)
            .ok_or_else(|| cur.err_at(pos, format!("unknown identifier `{id}`")))?;
        if !seen.insert(idx) {
            return Err(cur.err_at(pos, format!("duplicate assignment for `{id}`")));
        }
        cur.expect('=')?;
        out[idx] = cur.rational()?;
        if cur.at_end() {
            break;
        }
        cur.expect(',')?;
    }
    Ok(out)
}

struct RawBracket {
    line: usize,
    i: usize,
    j: usize,
    coords: Vec<Rat>,
}

struct RawSub {
    line: usize,
    col: usize,
    name: String,
    rows: Vec<Vec<Rat>>,
}

struct RawChar {
    line: usize,
    name: String,
    sub_col: usize,
    sub_name: String,
    dual: Vec<Rat>,
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut name: Option<String> = None;
    let mut basis: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut raw_brackets: Vec<RawBracket> = Vec::new();
    let mut bracket_seen: HashSet<(usize, usize)> = HashSet::new();
    let mut raw_subs: Vec<RawSub> = Vec::new();
    let mut raw_chars: Vec<RawChar> = Vec::new();
    let mut raw_forms: Vec<(String, Vec<Rat>)> = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(line, lineno + 1);
        if cur.at_end() {
            continue;
        }
        let (kw_pos, keyword) = cur.ident()?;
        if keyword != "algebra" && name.is_none() {
            return Err(cur.err_at(kw_pos, "the file must start with `algebra <name>`"));
        }
        let needs_basis = matches!(
            keyword.as_str(),
            "bracket" | "subalgebra" | "form" | "character"
        );
        if needs_basis && basis.is_empty() {
            return Err(cur.err_at(kw_pos, "`basis` must be declared first"));
        }
        match keyword.as_str() {
            "algebra" => {
                if name.is_some() {
                    return Err(cur.err_at(kw_pos, "duplicate `algebra` directive"));
                }
                let (_, n) = cur.ident()?;
                cur.expect_end()?;
                name = Some(n);
            }
            "basis" => {
                if !basis.is_empty() {
                    return Err(cur.err_at(kw_pos, "duplicate `basis` directive"));
                }
                while !cur.at_end() {
                    let (pos, id) = cur.ident()?;
                    if index.contains_key(&id) {
                        return Err(cur.err_at(pos, format!("duplicate basis id `{id}`")));
                    }
                    index.insert(id.clone(), basis.len());
                    basis.push(id);
                }
                if basis.is_empty() {
                    return Err(cur.err_at(kw_pos, "`basis` needs at least one id"));
                }
            }
            "bracket" => {
                cur.expect('[')?;
                let (pi, a) = cur.ident()?;
                let i = *index
                    .get(&a)
                    .ok_or_else(|| cur.err_at(pi, format!("unknown identifier `{a}`")))?;
                cur.expect(',')?;
                let (pj, b) = cur.ident()?;
                let j = *index
                    .get(&b)
                    .ok_or_else(|| cur.err_at(pj, format!("unknown identifier `{b}`")))?;
                cur.expect(']')?;
                if i == j {
                    return Err(cur.err_at(
                        pi,
                        format!("bracket [{a},{a}] must vanish (antisymmetry)"),
                    ));
                }
                cur.expect('=')?;
                let coords = lin_comb(&mut cur, &index, basis.len(), &[])?;
                // Normalize to i < j so [B,A] collides with an earlier [A,B].
                let (i, j, coords) = if i < j {
                    (i, j, coords)
                } else {
                    (j, i, coords.iter().map(Coeff::neg).collect())
                };
                if !bracket_seen.insert((i, j)) {
                    return Err(cur.err_at(
                        kw_pos,
                        format!("bracket [{a},{b}] declared more than once"),
                    ));
                }
                raw_brackets.push(RawBracket {
                    line: lineno + 1,
                    i,
                    j,
                    coords,
                });
            }
            "subalgebra" => {
                let (pos, sub_name) = cur.ident()?;
                if raw_subs.iter().any(|s| s.name == sub_name) {
                    return Err(cur.err_at(pos, format!("duplicate subalgebra `{sub_name}`")));
                }
                cur.expect('=')?;
                let mut rows = Vec::new();
                loop {
                    rows.push(lin_comb(&mut cur, &index, basis.len(), &[';'])?);
                    if !cur.eat(';') {
                        break;
                    }
                }
                cur.expect_end()?;
                raw_subs.push(RawSub {
                    line: lineno + 1,
                    col: pos + 1,
                    name: sub_name,
                    rows,
                });
            }
            "form" => {
                let (pos, form_name) = cur.ident()?;
                if raw_forms.iter().any(|(n, _)| *n == form_name) {
                    return Err(cur.err_at(pos, format!("duplicate form `{form_name}`")));
                }
                cur.expect(':')?;
                let coords = assignments(&mut cur, &index, basis.len())?;
                raw_forms.push((form_name, coords));
            }
            "character" => {
                let (pos, chi_name) = cur.ident()?;
                if raw_chars.iter().any(|c| c.name == chi_name) {
                    return Err(cur.err_at(pos, format!("duplicate character `{chi_name}`")));
                }
                let (opos, on) = cur.ident()?;
                if on != "on" {
                    return Err(cur.err_at(opos, "expected `on`"));
                }
                let (sub_col, sub_name) = cur.ident()?;
                cur.expect(':')?;
                let dual = assignments(&mut cur, &index, basis.len())?;
                raw_chars.push(RawChar {
                    line: lineno + 1,
                    name: chi_name,
                    sub_col: sub_col + 1,
                    sub_name,
                    dual,
                });
            }
            other => {
                return Err(cur.err_at(kw_pos, format!("unknown directive `{other}`")));
            }
        }
    }

    let name = name.ok_or(ParseError {
        line: 1,
        col: 1,
        msg: "empty file: expected `algebra <name>`".to_string(),
    })?;
    if basis.is_empty() {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: "missing `basis` directive".to_string(),
        });
    }

    let entries: Vec<(usize, usize, Vec<(usize, Rat)>)> = raw_brackets
        .iter()
        .map(|rb| {
            let rhs = rb
                .coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect();
            (rb.i, rb.j, rhs)
        })
        .collect();
    let algebra = LieAlgebra::from_brackets(basis.clone(), &entries).map_err(|e| ParseError {
        line: raw_brackets.first().map_or(1, |rb| rb.line),
        col: 1,
        msg: e.to_string(),
    })?;

    let mut subalgebras = Vec::new();
    for rs in raw_subs {
        let space = Subspace::spanned_by(&rs.rows);
        let sub = Subalgebra::new(&algebra, space).map_err(|e| {
            let msg = match e {
                Error::NotSubalgebra(i, j) => format!(
                    "subalgebra `{}` is not closed under the bracket (rows {} and {})",
                    rs.name, i, j
                ),
                other => format!("subalgebra `{}`: {other}", rs.name),
            };
            ParseError {
                line: rs.line,
                col: rs.col,
                msg,
            }
        })?;
        subalgebras.push((rs.name, sub));
    }

    let mut characters = Vec::new();
    for rc in raw_chars {
        let sub = subalgebras
            .iter()
            .find(|(n, _)| *n == rc.sub_name)
            .map(|(_, s)| s)
            .ok_or(ParseError {
                line: rc.line,
                col: rc.sub_col,
                msg: format!("unknown subalgebra `{}`", rc.sub_name),
            })?;
        let values: Vec<Rat> = sub
            .basis()
            .iter()
            .map(|row| {
                let mut v = Rat::zero();
                for (c, d) in row.iter().zip(&rc.dual) {
                    v = v.add(&c.mul(d));
                }
                v
            })
            .collect();
        let chi = CharacterFunctional::new(&algebra, sub.clone(), values).map_err(|e| {
            let msg = match e {
                Error::CharacterNotVanishing { i, j, value } => format!(
                    "character `{}` does not vanish on the bracket of `{}` and `{}` (value {})",
                    rc.name,
                    lie::format_lincomb(algebra.names(), &sub.basis()[i]),
                    lie::format_lincomb(algebra.names(), &sub.basis()[j]),
                    value
                ),
                other => format!("character `{}`: {other}", rc.name),
            };
            ParseError {
                line: rc.line,
                col: 1,
                msg,
            }
        })?;
        characters.push((rc.name, rc.sub_name, chi));
    }

    let forms = raw_forms
        .into_iter()
        .map(|(n, coords)| (n, LinearForm::new(coords)))
        .collect();

    Ok(AlgebraFile {
        name,
        algebra,
        subalgebras,
        characters,
        forms,
    })
}
