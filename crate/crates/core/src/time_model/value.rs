//! Canonical temporal values.
//!
//! The grammar accepted by [`TimeValue::parse`] is exactly:
//!
//! | form         | kind                 | denotes                                |
//! |--------------|----------------------|----------------------------------------|
//! | `YYYY`       | [`ValueKind::Year`]   | one year                               |
//! | `YYY`        | [`ValueKind::Decade`] | the ten years sharing the prefix       |
//! | `YY`         | [`ValueKind::Century`]| the hundred years sharing the prefix   |
//! | `YYYY-MM`    | [`ValueKind::YearMonth`] | one month                           |
//! | `YYYY-MM-DD` | [`ValueKind::Date`]   | one day                                |
//! | `XXXX-MM-DD` | [`ValueKind::MonthDay`] | a day of the year, no year          |
//! | `V1-V2`      | [`ValueKind::Range`]  | two year-like values of the same kind  |
//!
//! `[V1-V2]` is accepted on input and written back without brackets.

use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};

use super::interval::DayInterval;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Year,
    Decade,
    Century,
    YearMonth,
    Date,
    MonthDay,
    Range,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValueKind::Year => "YEAR",
            ValueKind::Decade => "DECADE_PREFIX",
            ValueKind::Century => "CENTURY_PREFIX",
            ValueKind::YearMonth => "YEAR_MONTH",
            ValueKind::Date => "DATE",
            ValueKind::MonthDay => "UNDERSPECIFIED_DATE",
            ValueKind::Range => "RANGE",
        };
        f.write_str(s)
    }
}

/// A normalized temporal value.
///
/// Constructors validate their inputs, so every `TimeValue` in circulation
/// formats to a string that parses back to itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TimeValue {
    Year(u16),
    /// Decade prefix: `195` is 1950..=1959.
    Decade(u16),
    /// Century prefix: `16` is 1600..=1699.
    Century(u16),
    YearMonth {
        year: u16,
        month: u8,
    },
    Date(NaiveDate),
    MonthDay {
        month: u8,
        day: u8,
    },
    Range(Box<TimeValue>, Box<TimeValue>),
}

const MAX_YEAR: i32 = 9999;

impl TimeValue {
    pub fn year(year: i32) -> Result<Self> {
        if (1..=MAX_YEAR).contains(&year) {
            Ok(TimeValue::Year(year as u16))
        } else {
            Err(Error::OutOfCalendar)
        }
    }

    pub fn decade(prefix: i32) -> Result<Self> {
        if (0..=999).contains(&prefix) {
            Ok(TimeValue::Decade(prefix as u16))
        } else {
            Err(Error::OutOfCalendar)
        }
    }

    pub fn century(prefix: i32) -> Result<Self> {
        if (0..=99).contains(&prefix) {
            Ok(TimeValue::Century(prefix as u16))
        } else {
            Err(Error::OutOfCalendar)
        }
    }

    pub fn year_month(year: i32, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::MalformedValue(format!("{year:04}-{month:02}")));
        }
        match Self::year(year)? {
            TimeValue::Year(y) => Ok(TimeValue::YearMonth {
                year: y,
                month: month as u8,
            }),
            _ => unreachable!(),
        }
    }

    pub fn date(year: i32, month: u32, day: u32) -> Result<Self> {
        if !(1..=MAX_YEAR).contains(&year) {
            return Err(Error::OutOfCalendar);
        }
        NaiveDate::from_ymd_opt(year, month, day)
            .map(TimeValue::Date)
            .ok_or_else(|| Error::MalformedValue(format!("{year:04}-{month:02}-{day:02}")))
    }

    pub fn from_date(day: NaiveDate) -> Result<Self> {
        Self::date(day.year(), day.month(), day.day())
    }

    /// A day of the year with no year; February 29 is accepted.
    pub fn month_day(month: u32, day: u32) -> Result<Self> {
        // 2000 is a leap year, so it admits every day any year can have.
        if NaiveDate::from_ymd_opt(2000, month, day).is_none() {
            return Err(Error::MalformedValue(format!("XXXX-{month:02}-{day:02}")));
        }
        Ok(TimeValue::MonthDay {
            month: month as u8,
            day: day as u8,
        })
    }

    /// Builds a range of two year-like values of the same kind whose
    /// low start does not exceed the high end.
    pub fn range(low: TimeValue, high: TimeValue) -> Result<Self> {
        let same_kind =
            low.kind() == high.kind() && matches!(low.kind(), ValueKind::Year | ValueKind::Decade | ValueKind::Century);
        let text = format!("{low}-{high}");
        if !same_kind {
            return Err(Error::MalformedValue(text));
        }
        let (lo, hi) = (low.to_interval()?, high.to_interval()?);
        if lo.start() > hi.end() {
            return Err(Error::MalformedValue(text));
        }
        Ok(TimeValue::Range(Box::new(low), Box::new(high)))
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            TimeValue::Year(_) => ValueKind::Year,
            TimeValue::Decade(_) => ValueKind::Decade,
            TimeValue::Century(_) => ValueKind::Century,
            TimeValue::YearMonth { .. } => ValueKind::YearMonth,
            TimeValue::Date(_) => ValueKind::Date,
            TimeValue::MonthDay { .. } => ValueKind::MonthDay,
            TimeValue::Range(..) => ValueKind::Range,
        }
    }

    /// Parses a canonical value string. Bracketed ranges are accepted.
    pub fn parse(text: &str) -> Result<Self> {
        let malformed = || Error::MalformedValue(text.to_string());
        if text.is_empty() {
            return Err(malformed());
        }
        if let Some(inner) = text.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(malformed)?;
            let v = Self::parse(inner).map_err(|_| malformed())?;
            return match v {
                TimeValue::Range(..) => Ok(v),
                _ => Err(malformed()),
            };
        }
        let parts: Vec<&str> = text.split('-').collect();
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        let num = |s: &str| s.parse::<i32>().map_err(|_| malformed());
        match parts.as_slice() {
            [single] => Self::year_like(single).ok_or_else(malformed),
            ["XXXX", m, d] if m.len() == 2 && d.len() == 2 && digits(m) && digits(d) => {
                Self::month_day(num(m)? as u32, num(d)? as u32).map_err(|_| malformed())
            }
            [y, m, d] if y.len() == 4 && m.len() == 2 && d.len() == 2 && digits(y) && digits(m) && digits(d) => {
                Self::date(num(y)?, num(m)? as u32, num(d)? as u32).map_err(|_| malformed())
            }
            [y, m] if y.len() == 4 && m.len() == 2 && digits(y) && digits(m) && (1..=12).contains(&num(m)?) => {
                Self::year_month(num(y)?, num(m)? as u32).map_err(|_| malformed())
            }
            [a, b] => {
                let low = Self::year_like(a).ok_or_else(malformed)?;
                let high = Self::year_like(b).ok_or_else(malformed)?;
                Self::range(low, high).map_err(|_| malformed())
            }
            _ => Err(malformed()),
        }
    }

    fn year_like(s: &str) -> Option<Self> {
        if !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let n: i32 = s.parse().ok()?;
        match s.len() {
            4 => Self::year(n).ok(),
            3 => Self::decade(n).ok(),
            2 => Self::century(n).ok(),
            _ => None,
        }
    }

    /// The tightest day interval covering every day the value denotes.
    pub fn to_interval(&self) -> Result<DayInterval> {
        let ymd = |y: i32, m: u32, d: u32| NaiveDate::from_ymd_opt(y, m, d).expect("valid calendar day");
        let years = |lo: i32, hi: i32| {
            let lo = lo.max(1);
            DayInterval::new(ymd(lo, 1, 1), ymd(hi, 12, 31))
        };
        match self {
            TimeValue::Year(y) => years(*y as i32, *y as i32),
            TimeValue::Decade(p) => years(*p as i32 * 10, *p as i32 * 10 + 9),
            TimeValue::Century(p) => years(*p as i32 * 100, *p as i32 * 100 + 99),
            TimeValue::YearMonth { year, month } => {
                let start = ymd(*year as i32, *month as u32, 1);
                let end = start
                    .checked_add_months(chrono::Months::new(1))
                    .and_then(|d| d.pred_opt())
                    .unwrap_or_else(|| ymd(*year as i32, 12, 31));
                DayInterval::new(start, end)
            }
            TimeValue::Date(d) => DayInterval::new(*d, *d),
            TimeValue::MonthDay { .. } => Err(Error::Unanchored(self.to_string())),
            TimeValue::Range(lo, hi) => DayInterval::new(lo.to_interval()?.start(), hi.to_interval()?.end()),
        }
    }

    pub fn is_anchored(&self) -> bool {
        !matches!(self, TimeValue::MonthDay { .. })
    }
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeValue::Year(y) => write!(f, "{y:04}"),
            TimeValue::Decade(p) => write!(f, "{p:03}"),
            TimeValue::Century(p) => write!(f, "{p:02}"),
            TimeValue::YearMonth { year, month } => write!(f, "{year:04}-{month:02}"),
            TimeValue::Date(d) => write!(f, "{:04}-{:02}-{:02}", d.year(), d.month(), d.day()),
            TimeValue::MonthDay { month, day } => write!(f, "XXXX-{month:02}-{day:02}"),
            TimeValue::Range(lo, hi) => write!(f, "{lo}-{hi}"),
        }
    }
}

impl FromStr for TimeValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Parses `text` and writes it back in canonical form.
pub fn normalize_value_text(text: &str) -> Result<String> {
    Ok(TimeValue::parse(text)?.to_string())
}
