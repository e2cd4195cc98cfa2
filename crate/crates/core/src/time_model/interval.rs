use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// A closed interval of calendar days.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DayInterval {
    start: NaiveDate,
    end: NaiveDate,
}

impl DayInterval {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if start > end {
            return Err(Error::InvertedInterval {
                start: start.to_string(),
                end: end.to_string(),
            });
        }
        Ok(DayInterval { start, end })
    }

    pub fn day(day: NaiveDate) -> Self {
        DayInterval { start: day, end: day }
    }

    pub fn start(&self) -> NaiveDate {
        self.start
    }

    pub fn end(&self) -> NaiveDate {
        self.end
    }

    pub fn overlaps(&self, other: &DayInterval) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn contains_day(&self, day: NaiveDate) -> bool {
        self.start <= day && day <= self.end
    }

    pub fn contains(&self, other: &DayInterval) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for DayInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// The order a temporal signal imposes between the focus date F1 and the
/// restriction date F2 (or the period F2..F3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingKey {
    /// F1 > F2
    After,
    /// F1 < F2
    Before,
    /// F1 = F2
    Simultaneous,
    /// F2i <= F1 <= F2f
    Within,
    /// F2 <= F1 <= F3
    Span,
}

impl OrderingKey {
    pub const ALL: [OrderingKey; 5] = [
        OrderingKey::After,
        OrderingKey::Before,
        OrderingKey::Simultaneous,
        OrderingKey::Within,
        OrderingKey::Span,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            OrderingKey::After => "AFTER",
            OrderingKey::Before => "BEFORE",
            OrderingKey::Simultaneous => "SIMULTANEOUS",
            OrderingKey::Within => "WITHIN",
            OrderingKey::Span => "SPAN",
        }
    }
}

impl fmt::Display for OrderingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderingKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderingKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::PackInvalid(format!("unknown ordering key `{s}`")))
    }
}

/// Evaluates an ordering key over intervals.
///
/// AFTER and BEFORE compare start days. SIMULTANEOUS holds when the focus
/// starts inside the restriction interval. WITHIN holds on overlap, and
/// SPAN is WITHIN against the hull `[f2.start, f3.end]`.
pub fn relation_holds(key: OrderingKey, f1: &DayInterval, f2: &DayInterval, f3: Option<&DayInterval>) -> Result<bool> {
    Ok(match key {
        OrderingKey::After => f1.start > f2.start,
        OrderingKey::Before => f1.start < f2.start,
        OrderingKey::Simultaneous => f2.contains_day(f1.start),
        OrderingKey::Within => f1.overlaps(f2),
        OrderingKey::Span => {
            let f3 = f3.ok_or(Error::MissingSpanBound)?;
            if f2.start > f3.end {
                false
            } else {
                f1.overlaps(&DayInterval {
                    start: f2.start,
                    end: f3.end,
                })
            }
        }
    })
}
