//! Rule-driven temporal expression tagging and normalization.

mod rules;

use std::ops::Range;

use chrono::{Datelike, Duration, Months, NaiveDate};

use crate::error::{Error, Result};
use crate::text::tokenize;
use crate::time_model::TimeValue;

pub use rules::{pivot_year, Lexicon, NumberWord, Pattern, SlotClass, Template};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Past,
    Future,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelativeUnit {
    Day,
    Month,
    Year,
    Decade,
    Century,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeRule {
    pub id: String,
    pub pattern: Pattern,
    pub template: Template,
    /// Rules for expression families the paper never evaluated.
    pub beyond_paper: bool,
}

impl TeRule {
    pub fn new(id: &str, pattern: &str, template: &str, beyond_paper: bool) -> Result<Self> {
        let pattern = Pattern::parse(pattern)?;
        let template = Template::parse(template, pattern.slot_names())?;
        Ok(TeRule {
            id: id.to_string(),
            pattern,
            template,
            beyond_paper,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TeRuleSet {
    pub lexicon: Lexicon,
    pub rules: Vec<TeRule>,
}

/// A recognized temporal expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeTag {
    pub surface: String,
    pub value: TimeValue,
    /// Byte span in the tagged text.
    pub span: Range<usize>,
    pub rule: String,
    pub beyond_paper: bool,
}

/// Tags `text` left to right. At each token every rule is tried; the
/// longest match wins and ties go to the rule listed first. A rule whose
/// template cannot produce a value for the captured numbers does not match.
pub fn tag(text: &str, rules: &TeRuleSet, reference: NaiveDate) -> Vec<TeTag> {
    let tokens = tokenize(text);
    let mut tags = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut best: Option<(usize, &TeRule, TimeValue)> = None;
        for rule in &rules.rules {
            let Some((n, caps)) = rule.pattern.match_at(&tokens[i..], &rules.lexicon) else {
                continue;
            };
            if best.as_ref().is_some_and(|(m, _, _)| *m >= n) {
                continue;
            }
            if let Some(v) = rule.template.eval(&caps, reference) {
                best = Some((n, rule, v));
            }
        }
        match best {
            Some((n, rule, value)) => {
                let span = tokens[i].begin..tokens[i + n - 1].end;
                tags.push(TeTag {
                    surface: text[span.clone()].to_string(),
                    value,
                    span,
                    rule: rule.id.clone(),
                    beyond_paper: rule.beyond_paper,
                });
                i += n;
            }
            None => i += 1,
        }
    }
    tags
}

/// Resolves "N units ago/ahead" against a reference day.
///
/// Years, decades and centuries shift the reference year and keep their
/// own granularity; months give a YYYY-MM value and days a full date.
pub fn resolve_relative(
    quantity: i64,
    unit: RelativeUnit,
    direction: Direction,
    reference: NaiveDate,
) -> Result<TimeValue> {
    let signed = match direction {
        Direction::Past => quantity.checked_neg(),
        Direction::Future => Some(quantity),
    }
    .ok_or(Error::OutOfCalendar)?;
    let shift_year = |years: i64| -> Result<i32> {
        let y = (reference.year() as i64)
            .checked_add(years)
            .ok_or(Error::OutOfCalendar)?;
        if (1..=9999).contains(&y) {
            Ok(y as i32)
        } else {
            Err(Error::OutOfCalendar)
        }
    };
    match unit {
        RelativeUnit::Year => TimeValue::year(shift_year(signed)?),
        RelativeUnit::Decade => {
            let y = shift_year(signed.checked_mul(10).ok_or(Error::OutOfCalendar)?)?;
            TimeValue::decade(y / 10)
        }
        RelativeUnit::Century => {
            let y = shift_year(signed.checked_mul(100).ok_or(Error::OutOfCalendar)?)?;
            TimeValue::century(y / 100)
        }
        RelativeUnit::Month => {
            let months = u32::try_from(quantity).map_err(|_| Error::OutOfCalendar)?;
            let day = match direction {
                Direction::Past => reference.checked_sub_months(Months::new(months)),
                Direction::Future => reference.checked_add_months(Months::new(months)),
            }
            .ok_or(Error::OutOfCalendar)?;
            in_calendar(day)?;
            TimeValue::year_month(day.year(), day.month())
        }
        RelativeUnit::Day => {
            let delta = Duration::try_days(signed).ok_or(Error::OutOfCalendar)?;
            let day = reference.checked_add_signed(delta).ok_or(Error::OutOfCalendar)?;
            in_calendar(day)?;
            TimeValue::from_date(day)
        }
    }
}

fn in_calendar(day: NaiveDate) -> Result<()> {
    if (1..=9999).contains(&day.year()) {
        Ok(())
    } else {
        Err(Error::OutOfCalendar)
    }
}
