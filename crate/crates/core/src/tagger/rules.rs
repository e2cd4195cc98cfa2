//! Declarative temporal-expression rules.
//!
//! A rule pairs a token pattern with a normalization template:
//!
//! ```text
//! pattern:  the {d:decade}
//! value:    decade(pivot(d))
//! ```
//!
//! Pattern elements are separated by spaces. `{name:class}` captures a
//! number from one or more tokens; anything else is a literal token, with
//! `|` separating alternatives. Templates are nested function calls over
//! captured slots, integer literals, quoted canonical values and unit
//! names (`year`, `decade`, ...).

use std::collections::HashMap;
use std::fmt;

use chrono::{Datelike, NaiveDate};

use crate::error::{Error, Result};
use crate::text::Token;
use crate::time_model::TimeValue;

use super::{resolve_relative, Direction, RelativeUnit};

/// Word lists the slot classes consult.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    /// Month number (1..=12) and its spellings.
    pub months: Vec<(u32, Vec<String>)>,
    pub numbers: Vec<NumberWord>,
    /// Words that may join number words ("and", "y", "-").
    pub connectors: Vec<String>,
    /// Ordinal words and their values ("eighteenth" = 18).
    pub ordinals: Vec<(String, i64)>,
    /// Suffixes turning digits into ordinals ("th", "st").
    pub ordinal_suffixes: Vec<String>,
    /// Decade words and their two-digit value ("sixties" = 60).
    pub decades: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberWord {
    pub word: String,
    pub value: i64,
    /// Scales what precedes it ("hundred", "mil").
    pub multiplier: bool,
}

impl Lexicon {
    fn month(&self, word: &str) -> Option<i64> {
        self.months
            .iter()
            .find(|(_, names)| names.iter().any(|n| n == word))
            .map(|(m, _)| *m as i64)
    }

    fn number_word(&self, word: &str) -> Option<&NumberWord> {
        self.numbers.iter().find(|n| n.word == word)
    }

    fn is_connector(&self, word: &str) -> bool {
        self.connectors.iter().any(|c| c == word)
    }

    /// Greedy cardinal: consumes number words and inner connectors.
    /// Returns the value and the number of tokens consumed.
    fn cardinal(&self, tokens: &[Token]) -> Option<(i64, usize)> {
        let mut total = 0i64;
        let mut current = 0i64;
        let mut used = 0usize;
        let mut last_number_end = 0usize;
        for (i, tok) in tokens.iter().enumerate() {
            if let Some(nw) = self.number_word(&tok.norm) {
                if nw.multiplier {
                    current = current.max(1) * nw.value;
                    if nw.value >= 1000 {
                        total += current;
                        current = 0;
                    }
                } else {
                    current += nw.value;
                }
                used += 1;
                last_number_end = i + 1;
            } else if used > 0 && self.is_connector(&tok.norm) {
                continue;
            } else {
                break;
            }
        }
        (used > 0).then_some((total + current, last_number_end))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotClass {
    /// Any run of ASCII digits in one token.
    Digits,
    Digits2,
    Digits4,
    /// One or two digits, 1..=31.
    Day,
    /// `1960s` or `50s`; captures the digits.
    Decade,
    /// A decade word from the lexicon ("sixties").
    DecadeWord,
    /// Digits with an ordinal suffix (`17th`).
    OrdNum,
    /// An ordinal word from the lexicon.
    OrdWord,
    Roman,
    Month,
    /// Digits or a spelled cardinal.
    Number,
    /// A spelled-out year: a cardinal of at least 1000, or two spelled
    /// groups read as hundreds ("eighteen fifty-five").
    SpelledYear,
}

impl SlotClass {
    const NAMES: [(&'static str, SlotClass); 12] = [
        ("digits", SlotClass::Digits),
        ("digits2", SlotClass::Digits2),
        ("digits4", SlotClass::Digits4),
        ("day", SlotClass::Day),
        ("decade", SlotClass::Decade),
        ("decadeword", SlotClass::DecadeWord),
        ("ordnum", SlotClass::OrdNum),
        ("ordword", SlotClass::OrdWord),
        ("roman", SlotClass::Roman),
        ("month", SlotClass::Month),
        ("number", SlotClass::Number),
        ("spelledyear", SlotClass::SpelledYear),
    ];

    fn from_name(name: &str) -> Option<Self> {
        Self::NAMES.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
    }

    fn matches(&self, tokens: &[Token], lex: &Lexicon) -> Option<(i64, usize)> {
        let first = tokens.first()?;
        let w = first.norm.as_str();
        let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        let one = |v: Option<i64>| v.map(|v| (v, 1));
        match self {
            SlotClass::Digits => one(all_digits(w).then(|| w.parse().ok()).flatten()),
            SlotClass::Digits2 => one((w.len() == 2 && all_digits(w)).then(|| w.parse().ok()).flatten()),
            SlotClass::Digits4 => one((w.len() == 4 && all_digits(w)).then(|| w.parse().ok()).flatten()),
            SlotClass::Day => one((w.len() <= 2 && all_digits(w))
                .then(|| w.parse::<i64>().ok())
                .flatten()
                .filter(|d| (1..=31).contains(d))),
            SlotClass::Decade => {
                let digits = w.strip_suffix('s')?;
                let ok = all_digits(digits) && (digits.len() == 2 || digits.len() == 4) && digits.ends_with('0');
                one(ok.then(|| digits.parse().ok()).flatten())
            }
            SlotClass::DecadeWord => one(lex.decades.iter().find(|(d, _)| d == w).map(|(_, v)| *v)),
            SlotClass::OrdNum => one(lex.ordinal_suffixes.iter().find_map(|suf| {
                let digits = w.strip_suffix(suf.as_str())?;
                all_digits(digits).then(|| digits.parse().ok()).flatten()
            })),
            SlotClass::OrdWord => one(lex.ordinals.iter().find(|(o, _)| o == w).map(|(_, v)| *v)),
            SlotClass::Roman => one(parse_roman(w)),
            SlotClass::Month => one(lex.month(w)),
            SlotClass::Number => {
                if all_digits(w) {
                    return one(w.parse().ok());
                }
                lex.cardinal(tokens)
            }
            SlotClass::SpelledYear => {
                if let Some((v, n)) = lex.cardinal(tokens) {
                    if v >= 1000 {
                        return Some((v, n));
                    }
                }
                let head = lex
                    .number_word(w)
                    .filter(|nw| !nw.multiplier && (10..=99).contains(&nw.value))?;
                let (tail, n) = lex.cardinal(&tokens[1..])?;
                (10..=99).contains(&tail).then_some((head.value * 100 + tail, n + 1))
            }
        }
    }
}

fn parse_roman(s: &str) -> Option<i64> {
    if s.is_empty() || s.len() > 15 {
        return None;
    }
    let val = |c: char| match c {
        'i' => Some(1),
        'v' => Some(5),
        'x' => Some(10),
        'l' => Some(50),
        'c' => Some(100),
        'd' => Some(500),
        'm' => Some(1000),
        _ => None,
    };
    let digits: Vec<i64> = s.chars().map(val).collect::<Option<_>>()?;
    let mut total = 0;
    for (i, d) in digits.iter().enumerate() {
        if digits.get(i + 1).is_some_and(|next| next > d) {
            total -= d;
        } else {
            total += d;
        }
    }
    // Only accept the canonical spelling of the number.
    (total > 0 && to_roman(total) == s).then_some(total)
}

fn to_roman(mut n: i64) -> String {
    const TABLE: [(i64, &str); 13] = [
        (1000, "m"),
        (900, "cm"),
        (500, "d"),
        (400, "cd"),
        (100, "c"),
        (90, "xc"),
        (50, "l"),
        (40, "xl"),
        (10, "x"),
        (9, "ix"),
        (5, "v"),
        (4, "iv"),
        (1, "i"),
    ];
    let mut out = String::new();
    for (v, s) in TABLE {
        while n >= v {
            out.push_str(s);
            n -= v;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternElement {
    Literal(Vec<String>),
    Slot { name: String, class: SlotClass },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    source: String,
    elements: Vec<PatternElement>,
}

impl Pattern {
    pub fn parse(source: &str) -> Result<Self> {
        let bad = |why: &str| Error::PackInvalid(format!("pattern `{source}`: {why}"));
        let mut elements = Vec::new();
        for part in source.split_whitespace() {
            if let Some(inner) = part.strip_prefix('{') {
                let inner = inner.strip_suffix('}').ok_or_else(|| bad("unclosed slot"))?;
                let (name, class) = inner.split_once(':').ok_or_else(|| bad("slot needs name:class"))?;
                let class = SlotClass::from_name(class).ok_or_else(|| bad("unknown slot class"))?;
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(bad("bad slot name"));
                }
                elements.push(PatternElement::Slot {
                    name: name.to_string(),
                    class,
                });
            } else {
                let alts: Vec<String> = part.split('|').map(str::to_lowercase).collect();
                for alt in &alts {
                    if crate::text::tokenize(alt).len() != 1 {
                        return Err(bad("literal must be a single token"));
                    }
                }
                elements.push(PatternElement::Literal(alts));
            }
        }
        if elements.is_empty() {
            return Err(bad("empty"));
        }
        Ok(Pattern {
            source: source.to_string(),
            elements,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn slot_names(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().filter_map(|e| match e {
            PatternElement::Slot { name, .. } => Some(name.as_str()),
            _ => None,
        })
    }

    /// Matches at the start of `tokens`; returns tokens consumed and captures.
    pub fn match_at(&self, tokens: &[Token], lex: &Lexicon) -> Option<(usize, HashMap<String, i64>)> {
        let mut pos = 0;
        let mut caps = HashMap::new();
        for el in &self.elements {
            let rest = tokens.get(pos..).filter(|r| !r.is_empty())?;
            match el {
                PatternElement::Literal(alts) => {
                    if !alts.iter().any(|a| *a == rest[0].norm) {
                        return None;
                    }
                    pos += 1;
                }
                PatternElement::Slot { name, class } => {
                    let (v, n) = class.matches(rest, lex)?;
                    caps.insert(name.clone(), v);
                    pos += n;
                }
            }
        }
        Some((pos, caps))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Type {
    Int,
    Value,
    Unit,
    Str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Int(i64),
    Str(String),
    Ident(String),
    Call(String, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Val {
    Int(i64),
    Value(TimeValue),
    Unit(RelativeUnit),
    Str(String),
}

const FUNCTIONS: &[(&str, &[Type], Type)] = &[
    ("year", &[Type::Int], Type::Value),
    ("pivot", &[Type::Int], Type::Int),
    ("decade", &[Type::Int], Type::Value),
    ("century", &[Type::Int], Type::Value),
    ("early", &[Type::Value], Type::Value),
    ("late", &[Type::Value], Type::Value),
    ("month_day", &[Type::Int, Type::Int], Type::Value),
    ("year_month", &[Type::Int, Type::Int], Type::Value),
    ("date", &[Type::Int, Type::Int, Type::Int], Type::Value),
    ("range", &[Type::Value, Type::Value], Type::Value),
    ("ago", &[Type::Int, Type::Unit], Type::Value),
    ("ahead", &[Type::Int, Type::Unit], Type::Value),
    ("ref_year", &[], Type::Int),
    ("ref_date", &[], Type::Value),
    ("value", &[Type::Str], Type::Value),
    ("add", &[Type::Int, Type::Int], Type::Int),
    ("sub", &[Type::Int, Type::Int], Type::Int),
    ("mul", &[Type::Int, Type::Int], Type::Int),
];

/// A normalization template; evaluates to a [`TimeValue`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    source: String,
    expr: Expr,
}

impl Template {
    /// Parses and type-checks a template against the slots it may use.
    pub fn parse<'a>(source: &str, slots: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let bad = |why: String| Error::PackInvalid(format!("template `{source}`: {why}"));
        let mut p = ExprParser {
            s: source.as_bytes(),
            i: 0,
        };
        let expr = p.expr().map_err(&bad)?;
        p.ws();
        if p.i != p.s.len() {
            return Err(bad("trailing input".into()));
        }
        let slots: Vec<&str> = slots.into_iter().collect();
        let ty = type_of(&expr, &slots).map_err(&bad)?;
        if ty != Type::Value {
            return Err(bad("must evaluate to a temporal value".into()));
        }
        Ok(Template {
            source: source.to_string(),
            expr,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Evaluates against captures; `None` when the captured numbers do not
    /// form a valid value (e.g. day 31 of a 30-day month).
    pub fn eval(&self, caps: &HashMap<String, i64>, reference: NaiveDate) -> Option<TimeValue> {
        match eval(&self.expr, caps, reference)? {
            Val::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn unit_named(name: &str) -> Option<RelativeUnit> {
    Some(match name {
        "day" => RelativeUnit::Day,
        "month" => RelativeUnit::Month,
        "year" => RelativeUnit::Year,
        "decade" => RelativeUnit::Decade,
        "century" => RelativeUnit::Century,
        _ => return None,
    })
}

fn type_of(e: &Expr, slots: &[&str]) -> std::result::Result<Type, String> {
    match e {
        Expr::Int(_) => Ok(Type::Int),
        Expr::Str(s) => {
            TimeValue::parse(s).map_err(|e| e.to_string())?;
            Ok(Type::Str)
        }
        Expr::Ident(name) if slots.contains(&name.as_str()) => Ok(Type::Int),
        Expr::Ident(name) if unit_named(name).is_some() => Ok(Type::Unit),
        Expr::Ident(name) => Err(format!("unknown name `{name}`")),
        Expr::Call(f, args) => {
            let (_, params, ret) = FUNCTIONS
                .iter()
                .find(|(n, _, _)| n == f)
                .ok_or_else(|| format!("unknown function `{f}`"))?;
            if params.len() != args.len() {
                return Err(format!("`{f}` takes {} argument(s)", params.len()));
            }
            for (a, want) in args.iter().zip(params.iter()) {
                let got = type_of(a, slots)?;
                if got != *want {
                    return Err(format!("`{f}`: argument has type {got:?}, expected {want:?}"));
                }
            }
            Ok(*ret)
        }
    }
}

fn eval(e: &Expr, caps: &HashMap<String, i64>, reference: NaiveDate) -> Option<Val> {
    let int = |x: &Expr| match eval(x, caps, reference)? {
        Val::Int(i) => Some(i),
        _ => None,
    };
    let value = |x: &Expr| match eval(x, caps, reference)? {
        Val::Value(v) => Some(v),
        _ => None,
    };
    let i32_of = |i: i64| i32::try_from(i).ok();
    match e {
        Expr::Int(i) => Some(Val::Int(*i)),
        Expr::Str(s) => Some(Val::Str(s.clone())),
        Expr::Ident(name) => match caps.get(name) {
            Some(v) => Some(Val::Int(*v)),
            None => unit_named(name).map(Val::Unit),
        },
        Expr::Call(f, args) => {
            let v = match (f.as_str(), args.as_slice()) {
                ("year", [y]) => Val::Value(TimeValue::year(i32_of(int(y)?)?).ok()?),
                ("pivot", [y]) => Val::Int(pivot_year(int(y)?, reference)),
                ("decade", [y]) => Val::Value(TimeValue::decade(i32_of(int(y)?.div_euclid(10))?).ok()?),
                ("century", [n]) => Val::Value(TimeValue::century(i32_of(int(n)? - 1)?).ok()?),
                ("early", [v]) => Val::Value(half(&value(v)?, false)?),
                ("late", [v]) => Val::Value(half(&value(v)?, true)?),
                ("month_day", [m, d]) => {
                    Val::Value(TimeValue::month_day(u32::try_from(int(m)?).ok()?, u32::try_from(int(d)?).ok()?).ok()?)
                }
                ("year_month", [y, m]) => {
                    Val::Value(TimeValue::year_month(i32_of(int(y)?)?, u32::try_from(int(m)?).ok()?).ok()?)
                }
                ("date", [y, m, d]) => Val::Value(
                    TimeValue::date(
                        i32_of(int(y)?)?,
                        u32::try_from(int(m)?).ok()?,
                        u32::try_from(int(d)?).ok()?,
                    )
                    .ok()?,
                ),
                ("range", [a, b]) => Val::Value(TimeValue::range(value(a)?, value(b)?).ok()?),
                ("ago" | "ahead", [n, u]) => {
                    let unit = match eval(u, caps, reference)? {
                        Val::Unit(u) => u,
                        _ => return None,
                    };
                    let dir = if f == "ago" { Direction::Past } else { Direction::Future };
                    Val::Value(resolve_relative(int(n)?, unit, dir, reference).ok()?)
                }
                ("ref_year", []) => Val::Int(reference.year() as i64),
                ("ref_date", []) => Val::Value(TimeValue::from_date(reference).ok()?),
                ("value", [s]) => match eval(s, caps, reference)? {
                    Val::Str(s) => Val::Value(TimeValue::parse(&s).ok()?),
                    _ => return None,
                },
                ("add", [a, b]) => Val::Int(int(a)?.checked_add(int(b)?)?),
                ("sub", [a, b]) => Val::Int(int(a)?.checked_sub(int(b)?)?),
                ("mul", [a, b]) => Val::Int(int(a)?.checked_mul(int(b)?)?),
                _ => return None,
            };
            Some(v)
        }
    }
}

/// Two-digit years: at or below the reference year's last two digits go
/// to the reference century, anything above to the previous one. Values
/// of 100 or more pass through.
pub fn pivot_year(yy: i64, reference: NaiveDate) -> i64 {
    if !(0..100).contains(&yy) {
        return yy;
    }
    let r = reference.year() as i64;
    let century = r.div_euclid(100) * 100;
    if yy <= r.rem_euclid(100) {
        century + yy
    } else {
        century - 100 + yy
    }
}

/// First or second half of a year-granular value, as a year range.
fn half(v: &TimeValue, second: bool) -> Option<TimeValue> {
    let iv = v.to_interval().ok()?;
    let (lo, hi) = (iv.start().year(), iv.end().year());
    if hi <= lo {
        return None;
    }
    let mid = lo + (hi - lo + 1) / 2;
    let (a, b) = if second { (mid, hi) } else { (lo, mid - 1) };
    TimeValue::range(TimeValue::year(a).ok()?, TimeValue::year(b).ok()?).ok()
}

struct ExprParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl ExprParser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> std::result::Result<Expr, String> {
        self.ws();
        match self.peek() {
            Some(b'"') => {
                self.i += 1;
                let start = self.i;
                while self.peek().is_some_and(|c| c != b'"') {
                    self.i += 1;
                }
                if self.peek() != Some(b'"') {
                    return Err("unterminated string".into());
                }
                let s = String::from_utf8_lossy(&self.s[start..self.i]).into_owned();
                self.i += 1;
                Ok(Expr::Str(s))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let start = self.i;
                self.i += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                text.parse().map(Expr::Int).map_err(|_| format!("bad integer `{text}`"))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap().to_string();
                self.ws();
                if self.peek() != Some(b'(') {
                    return Ok(Expr::Ident(name));
                }
                self.i += 1;
                let mut args = Vec::new();
                self.ws();
                if self.peek() == Some(b')') {
                    self.i += 1;
                    return Ok(Expr::Call(name, args));
                }
                loop {
                    args.push(self.expr()?);
                    self.ws();
                    match self.peek() {
                        Some(b',') => self.i += 1,
                        Some(b')') => {
                            self.i += 1;
                            return Ok(Expr::Call(name, args));
                        }
                        _ => return Err("expected `,` or `)`".into()),
                    }
                }
            }
            _ => Err("expected an expression".into()),
        }
    }
}
