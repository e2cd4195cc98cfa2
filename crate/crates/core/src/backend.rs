//! The QA backend capability, its fixture implementation, and the
//! end-to-end orchestrator.

use std::path::Path;

use chrono::NaiveDate;

use crate::decompose::{decompose, DecomposedQuestion, QuestionType};
use crate::diagnostic::Diagnostic;
use crate::error::{Error, Result};
use crate::pack::LanguagePack;
use crate::recompose::{recompose, ComplexAnswer, DatedAnswer};
use crate::time_model::{DayInterval, TimeValue};
use crate::xml::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BackendQuery<'a> {
    pub question: &'a str,
    /// Pack code of the question's language.
    pub language: &'a str,
}

/// A general purpose QA system: ranked, possibly dated answers for a
/// simple question.
pub trait QaBackend {
    fn answer(&self, query: &BackendQuery<'_>) -> Vec<DatedAnswer>;
}

/// Lowercases, deletes punctuation and collapses whitespace.
pub fn normalize_key(question: &str) -> String {
    let kept: String = question
        .chars()
        .filter(|c| c.is_alphanumeric() || c.is_whitespace())
        .collect();
    kept.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureEntry {
    pub key: String,
    pub answers: Vec<DatedAnswer>,
}

/// Canned answers keyed by question.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixtureStore {
    pub reference: Option<NaiveDate>,
    pub language: String,
    pub entries: Vec<FixtureEntry>,
    /// Match keys verbatim instead of normalizing both sides.
    pub strict_keys: bool,
}

impl FixtureStore {
    pub fn lookup(&self, question: &str) -> Vec<DatedAnswer> {
        let found = if self.strict_keys {
            self.entries.iter().find(|e| e.key == question)
        } else {
            let key = normalize_key(question);
            self.entries.iter().find(|e| normalize_key(&e.key) == key)
        };
        found.map(|e| e.answers.clone()).unwrap_or_default()
    }

    pub fn load(text: &str) -> Result<Self> {
        let bad = |m: String| Error::FixtureInvalid(m);
        let root = Element::parse(text).map_err(|e| bad(e.to_string()))?;
        if root.name != "FIXTURES" {
            return Err(bad(format!("root element is <{}>, expected <FIXTURES>", root.name)));
        }
        let reference = root
            .get("ref")
            .map(|r| {
                NaiveDate::parse_from_str(r, "%Y-%m-%d")
                    .map_err(|_| bad(format!("ref=\"{r}\" is not a YYYY-MM-DD date")))
            })
            .transpose()?;
        let mut store = FixtureStore {
            reference,
            language: root.get("lang").unwrap_or_default().to_string(),
            ..Default::default()
        };
        for fq in root.children_named("FQ") {
            let key = fq.require("key").map_err(|e| bad(e.to_string()))?.to_string();
            if store.entries.iter().any(|e| e.key == key) {
                return Err(bad(format!("duplicate key `{key}`")));
            }
            let mut answers = Vec::new();
            for (i, a) in fq.children_named("A").enumerate() {
                let rank_text = a.require("rank").map_err(|e| bad(e.to_string()))?;
                let rank: u32 = rank_text
                    .parse()
                    .map_err(|_| bad(format!("`{key}`: rank `{rank_text}` is not a number")))?;
                if rank as usize != i + 1 {
                    return Err(bad(format!(
                        "`{key}`: ranks must run 1..n in order, found {rank} at position {}",
                        i + 1
                    )));
                }
                let value = a.get("value").map(TimeValue::parse).transpose()?;
                answers.push(DatedAnswer::new(&a.text, rank, value));
            }
            store.entries.push(FixtureEntry { key, answers });
        }
        Ok(store)
    }

    pub fn load_file(path: &Path) -> Result<Self> {
        Self::load(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self) -> String {
        let mut root = Element::new("FIXTURES");
        if let Some(r) = self.reference {
            root = root.attr("ref", r.format("%Y-%m-%d").to_string());
        }
        root = root.attr("lang", self.language.as_str());
        for e in &self.entries {
            let mut fq = Element::new("FQ").attr("key", e.key.as_str());
            for a in &e.answers {
                let mut el = Element::new("A").attr("rank", a.rank.to_string());
                if let Some(v) = &a.value {
                    el = el.attr("value", v.to_string());
                }
                fq = fq.child(el.with_text(a.text.as_str()));
            }
            root = root.child(fq);
        }
        root.to_document()
    }
}

/// The shipped fixture file for a language, as XML text.
pub fn embedded_fixtures_text(code: &str) -> Option<&'static str> {
    match code {
        "en" => Some(include_str!("../data/fixtures_en.xml")),
        "es" => Some(include_str!("../data/fixtures_es.xml")),
        _ => None,
    }
}

pub fn embedded_fixtures(code: &str) -> Option<FixtureStore> {
    embedded_fixtures_text(code).map(|t| FixtureStore::load(t).expect("shipped fixtures are valid"))
}

impl QaBackend for FixtureStore {
    fn answer(&self, query: &BackendQuery<'_>) -> Vec<DatedAnswer> {
        self.lookup(query.question)
    }
}

/// Anchored intervals of a decomposition's expression tags.
pub fn te_constraints(d: &DecomposedQuestion) -> Vec<DayInterval> {
    d.tes.iter().filter_map(|t| t.value.to_interval().ok()).collect()
}

/// Runs a decomposed question through the backend and recomposes.
pub fn answer_decomposed(d: &DecomposedQuestion, language: &str, backend: &dyn QaBackend) -> ComplexAnswer {
    let ask = |q: &str| backend.answer(&BackendQuery { question: q, language });
    let mut out = match (&d.signal, &d.q_focus, &d.q_restriction) {
        (Some(signal), Some(focus), Some(restriction)) => {
            let focus_answers = ask(focus);
            let mut out = recompose(&focus_answers, &ask(restriction), Some(signal.key), &te_constraints(d));
            if focus_answers.is_empty() {
                out.note(Diagnostic::NoAct);
            }
            out
        }
        _ => {
            let answers = ask(&d.original);
            let mut out = if d.qtype == QuestionType::One {
                ComplexAnswer {
                    answers: answers.clone(),
                    ..Default::default()
                }
            } else {
                recompose(&answers, &[], None, &te_constraints(d))
            };
            if answers.is_empty() {
                out.note(Diagnostic::NoAct);
            }
            out
        }
    };
    for diag in &d.diagnostics {
        out.note(*diag);
    }
    out
}

/// Decompose, query the backend, recompose. Never fails: processing
/// problems come back as diagnostics with an empty answer list.
pub fn answer_complex_question(
    question: &str,
    pack: &LanguagePack,
    reference: NaiveDate,
    backend: &dyn QaBackend,
) -> ComplexAnswer {
    match decompose(question, pack, reference) {
        Ok(d) => answer_decomposed(&d, &pack.code, backend),
        Err(_) => ComplexAnswer {
            diagnostics: vec![Diagnostic::Unsplittable],
            ..Default::default()
        },
    }
}
