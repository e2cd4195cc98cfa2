//! Testbed and system-output records in the annotated question format.

use std::path::Path;

use crate::decompose::{DecomposedQuestion, QuestionType};
use crate::diagnostic::Diagnostic;
use crate::error::{Error, Result};
use crate::recompose::{ComplexAnswer, DatedAnswer};
use crate::tagger::TeTag;
use crate::time_model::TimeValue;
use crate::xml::Element;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldTe {
    pub surface: String,
    pub value: TimeValue,
}

impl GoldTe {
    pub fn new(surface: &str, value: &str) -> Result<Self> {
        Ok(GoldTe {
            surface: surface.to_string(),
            value: TimeValue::parse(value)?,
        })
    }

    /// The annotation as a tag over `question`, at the first
    /// case-insensitive occurrence of the surface.
    pub fn to_tag(&self, question: &str) -> Option<TeTag> {
        let start = find_ignore_case(question, &self.surface)?;
        let span = start..start + self.surface.len();
        Some(TeTag {
            surface: question[span.clone()].to_string(),
            value: self.value.clone(),
            span,
            rule: "gold".to_string(),
            beyond_paper: false,
        })
    }
}

fn find_ignore_case(haystack: &str, needle: &str) -> Option<usize> {
    if needle.is_empty() {
        return None;
    }
    let needle = needle.to_lowercase();
    haystack
        .char_indices()
        .map(|(i, _)| i)
        .find(|&i| haystack[i..].to_lowercase().starts_with(&needle) && haystack.is_char_boundary(i + needle.len()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldQuestion {
    pub id: u32,
    pub question: String,
    pub tes: Vec<GoldTe>,
    pub qtype: QuestionType,
    pub signal: Option<String>,
    pub q_focus: Option<String>,
    pub q_rest: Option<String>,
    pub answer: Option<String>,
}

impl GoldQuestion {
    /// Checks the per-type mandatory fields.
    pub fn validate(&self) -> Result<()> {
        let violation = |reason: &str| Error::SchemaViolation {
            id: self.id.to_string(),
            reason: reason.to_string(),
        };
        if self.question.trim().is_empty() {
            return Err(violation("empty QUESTION"));
        }
        if self.qtype.is_complex() {
            if self.signal.is_none() {
                return Err(violation("a complex question needs a SIGNAL"));
            }
            if self.q_focus.is_none() {
                return Err(violation("a complex question needs a Q-FOCUS"));
            }
            if self.q_rest.is_none() {
                return Err(violation("a complex question needs a Q-REST"));
            }
        }
        if matches!(self.qtype, QuestionType::Two | QuestionType::Three) && self.tes.is_empty() {
            return Err(violation(&format!("a type {} question needs a TE", self.qtype)));
        }
        Ok(())
    }

    pub fn gold_tags(&self) -> Vec<TeTag> {
        let mut tags: Vec<TeTag> = self.tes.iter().filter_map(|t| t.to_tag(&self.question)).collect();
        tags.sort_by_key(|t| t.span.start);
        tags
    }

    fn to_element(&self) -> Element {
        let mut q = Element::new("Q")
            .attr("id", self.id.to_string())
            .child(Element::new("QUESTION").with_text(self.question.as_str()));
        for te in &self.tes {
            q = q.child(te_element(&te.surface, &te.value));
        }
        q = q.child(Element::new("TYPE").with_text(self.qtype.to_string()));
        q = optional_children(q, &self.signal, &self.q_focus, &self.q_rest);
        if let Some(a) = &self.answer {
            q = q.child(Element::new("ANSWER").with_text(a.as_str()));
        }
        q
    }
}

fn te_element(surface: &str, value: &TimeValue) -> Element {
    Element::new("TE").attr("value", value.to_string()).with_text(surface)
}

fn optional_children(
    mut q: Element,
    signal: &Option<String>,
    focus: &Option<String>,
    rest: &Option<String>,
) -> Element {
    for (name, text) in [("SIGNAL", signal), ("Q-FOCUS", focus), ("Q-REST", rest)] {
        if let Some(t) = text {
            q = q.child(Element::new(name).with_text(t.as_str()));
        }
    }
    q
}

fn text_of(q: &Element, name: &str) -> Option<String> {
    q.first(name).map(|e| e.text.trim().to_string())
}

/// The common part of gold and system records.
struct Fields {
    id: u32,
    question: String,
    tes: Vec<GoldTe>,
    qtype: QuestionType,
    signal: Option<String>,
    q_focus: Option<String>,
    q_rest: Option<String>,
}

fn read_fields(q: &Element) -> Result<Fields> {
    let raw_id = q.get("id").unwrap_or("?").to_string();
    let violation = |reason: String| Error::SchemaViolation {
        id: raw_id.clone(),
        reason,
    };
    let id: u32 = raw_id
        .parse()
        .map_err(|_| violation("id attribute missing or not a number".into()))?;
    let question = text_of(q, "QUESTION").ok_or_else(|| violation("missing QUESTION".into()))?;
    let type_text = text_of(q, "TYPE").ok_or_else(|| violation("missing TYPE".into()))?;
    let qtype = type_text
        .parse::<u8>()
        .ok()
        .and_then(QuestionType::from_number)
        .ok_or_else(|| violation(format!("TYPE `{type_text}` is not 1..4")))?;
    let mut tes = Vec::new();
    for te in q.children_named("TE") {
        let value = te
            .get("value")
            .ok_or_else(|| violation("TE without a value attribute".into()))?;
        tes.push(GoldTe {
            surface: te.text.trim().to_string(),
            value: TimeValue::parse(value)?,
        });
    }
    Ok(Fields {
        id,
        question,
        tes,
        qtype,
        signal: text_of(q, "SIGNAL"),
        q_focus: text_of(q, "Q-FOCUS"),
        q_rest: text_of(q, "Q-REST"),
    })
}

/// The Q elements of a document: the children of any root, or the root
/// itself when it is a single Q block.
fn q_elements(root: &Element) -> Vec<&Element> {
    if root.name == "Q" {
        vec![root]
    } else {
        root.children_named("Q").collect()
    }
}

fn check_unique(ids: impl Iterator<Item = u32>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::SchemaViolation {
                id: id.to_string(),
                reason: "duplicate id".into(),
            });
        }
    }
    Ok(())
}

pub fn load_testbed(text: &str) -> Result<Vec<GoldQuestion>> {
    let root = Element::parse(text)?;
    let mut out = Vec::new();
    for q in q_elements(&root) {
        let f = read_fields(q)?;
        let gold = GoldQuestion {
            id: f.id,
            question: f.question,
            tes: f.tes,
            qtype: f.qtype,
            signal: f.signal,
            q_focus: f.q_focus,
            q_rest: f.q_rest,
            answer: text_of(q, "ANSWER"),
        };
        gold.validate()?;
        out.push(gold);
    }
    check_unique(out.iter().map(|q| q.id))?;
    Ok(out)
}

pub fn load_testbed_file(path: &Path) -> Result<Vec<GoldQuestion>> {
    load_testbed(&std::fs::read_to_string(path)?)
}

pub fn write_testbed(questions: &[GoldQuestion]) -> String {
    questions
        .iter()
        .fold(Element::new("TESTBED"), |root, q| root.child(q.to_element()))
        .to_document()
}

/// The shipped gold testbed for a language, as XML text.
pub fn embedded_testbed_text(code: &str) -> Option<&'static str> {
    match code {
        "en" => Some(include_str!("../data/testbed_en.xml")),
        "es" => Some(include_str!("../data/testbed_es.xml")),
        _ => None,
    }
}

pub fn embedded_testbed(code: &str) -> Option<Vec<GoldQuestion>> {
    embedded_testbed_text(code).map(|t| load_testbed(t).expect("shipped testbed is valid"))
}

/// What the layer produced for one question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemRecord {
    pub id: u32,
    pub question: String,
    pub tes: Vec<GoldTe>,
    pub qtype: QuestionType,
    pub signal: Option<String>,
    pub q_focus: Option<String>,
    pub q_rest: Option<String>,
    /// `None` when the question was only decomposed.
    pub answers: Option<Vec<DatedAnswer>>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SystemRecord {
    pub fn from_decomposition(id: u32, d: &DecomposedQuestion) -> Self {
        SystemRecord {
            id,
            question: d.original.clone(),
            tes: d
                .tes
                .iter()
                .map(|t| GoldTe {
                    surface: t.surface.clone(),
                    value: t.value.clone(),
                })
                .collect(),
            qtype: d.qtype,
            signal: d.signal.as_ref().map(|s| s.surface.clone()),
            q_focus: d.q_focus.clone(),
            q_rest: d.q_restriction.clone(),
            answers: None,
            diagnostics: d.diagnostics.clone(),
        }
    }

    pub fn with_answer(mut self, answer: &ComplexAnswer) -> Self {
        self.answers = Some(answer.answers.clone());
        for d in &answer.diagnostics {
            if !self.diagnostics.contains(d) {
                self.diagnostics.push(*d);
            }
        }
        self
    }

    pub fn to_element(&self) -> Element {
        let mut q = Element::new("Q")
            .attr("id", self.id.to_string())
            .child(Element::new("QUESTION").with_text(self.question.as_str()));
        for te in &self.tes {
            q = q.child(te_element(&te.surface, &te.value));
        }
        q = q.child(Element::new("TYPE").with_text(self.qtype.to_string()));
        q = optional_children(q, &self.signal, &self.q_focus, &self.q_rest);
        if let Some(answers) = &self.answers {
            let list = answers.iter().fold(Element::new("SYS-ANSWERS"), |list, a| {
                let mut el = Element::new("A").attr("rank", a.rank.to_string());
                if let Some(v) = &a.value {
                    el = el.attr("value", v.to_string());
                }
                list.child(el.with_text(a.text.as_str()))
            });
            q = q.child(list);
        }
        for d in &self.diagnostics {
            q = q.child(Element::new("DIAGNOSTIC").with_text(d.code()));
        }
        q
    }

    /// The record as a standalone Q block.
    pub fn to_block(&self) -> String {
        self.to_element().to_fragment()
    }

    fn from_element(q: &Element) -> Result<Self> {
        let f = read_fields(q)?;
        let violation = |reason: String| Error::SchemaViolation {
            id: f.id.to_string(),
            reason,
        };
        let answers = match q.first("SYS-ANSWERS") {
            None => None,
            Some(list) => {
                let mut answers = Vec::new();
                for a in list.children_named("A") {
                    let rank = a
                        .get("rank")
                        .and_then(|r| r.parse().ok())
                        .ok_or_else(|| violation("answer without a numeric rank".into()))?;
                    let value = a.get("value").map(TimeValue::parse).transpose()?;
                    answers.push(DatedAnswer::new(a.text.trim(), rank, value));
                }
                Some(answers)
            }
        };
        let mut diagnostics = Vec::new();
        for d in q.children_named("DIAGNOSTIC") {
            let code = d.text.trim();
            diagnostics
                .push(Diagnostic::from_code(code).ok_or_else(|| violation(format!("unknown diagnostic `{code}`")))?);
        }
        Ok(SystemRecord {
            id: f.id,
            question: f.question,
            tes: f.tes,
            qtype: f.qtype,
            signal: f.signal,
            q_focus: f.q_focus,
            q_rest: f.q_rest,
            answers,
            diagnostics,
        })
    }
}

pub fn load_system_output(text: &str) -> Result<Vec<SystemRecord>> {
    let root = Element::parse(text)?;
    let out = q_elements(&root)
        .into_iter()
        .map(SystemRecord::from_element)
        .collect::<Result<Vec<_>>>()?;
    check_unique(out.iter().map(|r| r.id))?;
    Ok(out)
}

pub fn write_system_output(records: &[SystemRecord]) -> String {
    records
        .iter()
        .fold(Element::new("OUTPUT"), |root, r| root.child(r.to_element()))
        .to_document()
}
