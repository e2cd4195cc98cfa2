//! Generators shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::HashSet;

use chrono::NaiveDate;
use proptest::prelude::*;

use tqa_core::backend::{FixtureEntry, FixtureStore};
use tqa_core::corpus::{GoldQuestion, GoldTe};
use tqa_core::decompose::QuestionType;
use tqa_core::pack::{builtin_english, builtin_spanish, LanguagePack, SignalEntry};
use tqa_core::recompose::DatedAnswer;
use tqa_core::time_model::{DayInterval, OrderingKey, TimeValue};

pub fn ref2008() -> NaiveDate {
    NaiveDate::from_ymd_opt(2008, 1, 1).unwrap()
}

pub fn simple_value() -> impl Strategy<Value = TimeValue> {
    prop_oneof![
        (1..=9999i32).prop_map(|y| TimeValue::year(y).unwrap()),
        (0..=999i32).prop_map(|d| TimeValue::decade(d).unwrap()),
        (0..=99i32).prop_map(|c| TimeValue::century(c).unwrap()),
        (1..=9999i32, 1..=12u32).prop_map(|(y, m)| TimeValue::year_month(y, m).unwrap()),
        (1..=9999i32, 1..=12u32, 1..=28u32).prop_map(|(y, m, d)| TimeValue::date(y, m, d).unwrap()),
        (1..=12u32, 1..=29u32).prop_map(|(m, d)| TimeValue::month_day(m, d).unwrap()),
    ]
}

pub fn any_value() -> impl Strategy<Value = TimeValue> {
    prop_oneof![
        4 => simple_value(),
        1 => (1..=9999i32, 0..=50i32).prop_filter_map("calendar", |(y, span)| {
            TimeValue::range(TimeValue::year(y).ok()?, TimeValue::year(y + span).ok()?).ok()
        }),
        1 => (1..=998i32, 0..=5i32).prop_filter_map("calendar", |(d, span)| {
            TimeValue::range(TimeValue::decade(d).ok()?, TimeValue::decade(d + span).ok()?).ok()
        }),
    ]
}

/// Dated values inside a 60-day window.
pub fn window_value() -> impl Strategy<Value = Option<TimeValue>> {
    prop_oneof![
        6 => (0..60i64).prop_map(|d| {
            let day = NaiveDate::from_ymd_opt(2001, 5, 1).unwrap() + chrono::Duration::days(d);
            Some(TimeValue::from_date(day).unwrap())
        }),
        2 => (5..=6u32).prop_map(|m| Some(TimeValue::year_month(2001, m).unwrap())),
        1 => Just(None),
    ]
}

pub fn answers(max: usize) -> impl Strategy<Value = Vec<DatedAnswer>> {
    prop::collection::vec(window_value(), 0..=max).prop_map(|vs| {
        vs.into_iter()
            .enumerate()
            .map(|(i, v)| DatedAnswer::new(&format!("a{i}"), i as u32 + 1, v))
            .collect()
    })
}

pub fn window_interval() -> impl Strategy<Value = DayInterval> {
    (0..60i64, 0..30i64).prop_map(|(s, len)| {
        let start = NaiveDate::from_ymd_opt(2001, 5, 1).unwrap() + chrono::Duration::days(s);
        DayInterval::new(start, start + chrono::Duration::days(len)).unwrap()
    })
}

pub fn key() -> impl Strategy<Value = OrderingKey> {
    prop::sample::select(OrderingKey::ALL.to_vec())
}

/// Text that survives trimming and contains XML-sensitive characters.
pub fn text() -> impl Strategy<Value = String> {
    "[A-Za-z0-9¿?áéñ'&<>\"][A-Za-z0-9¿?áéñ'&<>\" ]{0,24}[A-Za-z0-9?]"
}

pub fn gold_question(id: u32) -> impl Strategy<Value = GoldQuestion> {
    let te = (text(), simple_value()).prop_map(|(surface, value)| GoldTe { surface, value });
    (
        text(),
        prop::collection::vec(te, 0..3),
        1..=4u8,
        proptest::option::of(text()),
        (text(), text(), text()),
        proptest::option::of(text()),
    )
        .prop_map(
            move |(question, mut tes, t, optional_signal, (signal, focus, rest), answer)| {
                let qtype = QuestionType::from_number(t).unwrap();
                if matches!(qtype, QuestionType::Two | QuestionType::Three) && tes.is_empty() {
                    tes.push(GoldTe::new("1999", "1999").unwrap());
                }
                let complex = qtype.is_complex();
                GoldQuestion {
                    id,
                    question,
                    tes,
                    qtype,
                    signal: if complex { Some(signal) } else { optional_signal },
                    q_focus: complex.then_some(focus),
                    q_rest: complex.then_some(rest),
                    answer,
                }
            },
        )
}

pub fn testbed() -> impl Strategy<Value = Vec<GoldQuestion>> {
    (0..6usize).prop_flat_map(|n| (0..n as u32).map(|i| gold_question(i * 7 + 1)).collect::<Vec<_>>())
}

pub fn fixture_store() -> impl Strategy<Value = FixtureStore> {
    let entry = (
        text(),
        prop::collection::vec((text(), proptest::option::of(simple_value())), 0..4),
    )
        .prop_map(|(key, answers)| FixtureEntry {
            key,
            answers: answers
                .into_iter()
                .enumerate()
                .map(|(i, (t, v))| DatedAnswer::new(&t, i as u32 + 1, v))
                .collect(),
        });
    (
        prop::collection::vec(entry, 0..5),
        proptest::option::of((1..=9999i32, 1..=12u32, 1..=28u32)),
        "[a-z]{2}",
    )
        .prop_map(|(entries, r, language)| {
            let mut seen = HashSet::new();
            FixtureStore {
                reference: r.and_then(|(y, m, d)| NaiveDate::from_ymd_opt(y, m, d)),
                language,
                entries: entries.into_iter().filter(|e| seen.insert(e.key.clone())).collect(),
                strict_keys: false,
            }
        })
}

/// A shipped pack with random extra signals, stopwords, equivalences and
/// lemmas.
pub fn pack() -> impl Strategy<Value = LanguagePack> {
    let word = "[a-z]{2,7}";
    (
        any::<bool>(),
        prop::collection::vec(
            (word, proptest::option::of(word), key(), any::<bool>(), any::<bool>()),
            0..4,
        ),
        prop::collection::vec(word, 0..4),
        prop::collection::vec((word, word), 0..3),
        prop::collection::vec(word, 0..3),
    )
        .prop_map(|(spanish, signals, stop, equiv, lemmas)| {
            let mut p = if spanish { builtin_spanish() } else { builtin_english() };
            for (i, (first, second, key, te_bound, verified)) in signals.into_iter().enumerate() {
                let surface = match second {
                    Some(s) => format!("{first} ... {s}"),
                    None => first,
                };
                p.signals.entries.push(SignalEntry {
                    surface,
                    base: format!("extra{i}"),
                    key,
                    te_bound,
                    verified,
                });
            }
            p.stopwords.extend(stop);
            p.equivalences.extend(equiv);
            p.verbs.lemmas.extend(lemmas);
            p
        })
}
