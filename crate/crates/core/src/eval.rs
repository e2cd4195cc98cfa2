//! Evaluation harness: per-aspect judgments of decompositions, answer
//! judgments, metric arithmetic and report aggregation.

use std::fmt::{self, Write as _};

use chrono::NaiveDate;

use crate::backend::{answer_decomposed, normalize_key, FixtureStore};
use crate::corpus::GoldQuestion;
use crate::decompose::{decompose, decompose_with_tags, DecomposedQuestion, QuestionType};
use crate::error::{Error, Result};
use crate::pack::LanguagePack;
use crate::recompose::DatedAnswer;
use crate::text::words;
use crate::xml::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Aspect {
    Te,
    Type,
    Signal,
    Split,
    Decomp,
}

impl Aspect {
    pub const ALL: [Aspect; 5] = [Aspect::Te, Aspect::Type, Aspect::Signal, Aspect::Split, Aspect::Decomp];

    pub fn code(&self) -> &'static str {
        match self {
            Aspect::Te => "TE",
            Aspect::Type => "TYPE",
            Aspect::Signal => "SIGNAL",
            Aspect::Split => "SPLIT",
            Aspect::Decomp => "DECOMP",
        }
    }

    pub fn title(&self) -> &'static str {
        match self {
            Aspect::Te => "TE Identification and Normalization",
            Aspect::Type => "Type Identification",
            Aspect::Signal => "Signal Detection",
            Aspect::Split => "Question Splitter",
            Aspect::Decomp => "DECOMPOSITION UNIT",
        }
    }

    /// Whether the aspect is evaluated for a question of the given type.
    pub fn applies_to(&self, qtype: QuestionType) -> bool {
        use QuestionType::*;
        match self {
            Aspect::Te => matches!(qtype, Two | Three),
            Aspect::Type | Aspect::Decomp => true,
            Aspect::Signal | Aspect::Split => matches!(qtype, Three | Four),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AspectJudgment {
    pub aspect: Aspect,
    pub applicable: bool,
    pub acted: bool,
    pub correct: bool,
}

impl AspectJudgment {
    fn new(aspect: Aspect, applicable: bool, acted: bool, correct: bool) -> Self {
        AspectJudgment {
            aspect,
            applicable,
            acted: applicable && acted,
            correct: applicable && acted && correct,
        }
    }
}

/// Judges a decomposition against its gold annotation. `system` is `None`
/// when decomposition failed outright; nothing then counts as acted.
pub fn judge_decomposition(
    system: Option<&DecomposedQuestion>,
    gold: &GoldQuestion,
    pack: &LanguagePack,
) -> Vec<AspectJudgment> {
    let applies = |a: Aspect| a.applies_to(gold.qtype);
    let mut out = Vec::with_capacity(5);
    match system {
        None => {
            for a in [Aspect::Te, Aspect::Type, Aspect::Signal, Aspect::Split] {
                out.push(AspectJudgment::new(a, applies(a), false, false));
            }
        }
        Some(d) => {
            let mut sys_tes: Vec<(String, String)> =
                d.tes.iter().map(|t| (t.surface.clone(), t.value.to_string())).collect();
            let mut gold_tes: Vec<(String, String)> = gold
                .tes
                .iter()
                .map(|t| (t.surface.clone(), t.value.to_string()))
                .collect();
            sys_tes.sort();
            gold_tes.sort();
            out.push(AspectJudgment::new(
                Aspect::Te,
                applies(Aspect::Te),
                !sys_tes.is_empty(),
                sys_tes == gold_tes,
            ));

            out.push(AspectJudgment::new(Aspect::Type, true, true, d.qtype == gold.qtype));

            let signal_ok = match (&d.signal, &gold.signal) {
                (Some(s), Some(g)) => s.surface.to_lowercase() == g.trim().to_lowercase(),
                _ => false,
            };
            out.push(AspectJudgment::new(
                Aspect::Signal,
                applies(Aspect::Signal),
                d.signal.is_some(),
                signal_ok,
            ));

            let split_acted = d.q_focus.is_some() && d.q_restriction.is_some();
            let split_ok = match (&d.q_focus, &d.q_restriction, &gold.q_focus, &gold.q_rest) {
                (Some(sf), Some(sr), Some(gf), Some(gr)) => {
                    sub_question_matches(sf, gf, pack) && sub_question_matches(sr, gr, pack)
                }
                _ => false,
            };
            out.push(AspectJudgment::new(
                Aspect::Split,
                applies(Aspect::Split),
                split_acted,
                split_ok,
            ));
        }
    }
    let counted: Vec<&AspectJudgment> = out.iter().filter(|j| j.applicable).collect();
    let acted = counted.iter().all(|j| j.acted);
    let correct = counted.iter().all(|j| j.correct);
    out.push(AspectJudgment::new(Aspect::Decomp, true, acted, correct));
    out
}

/// First word of a question, lowercased.
fn interrogative(text: &str) -> Option<String> {
    words(text).into_iter().next()
}

/// The verb group carrying the event of a sub-question: a support verb
/// and the lemma it governs, an auxiliary and the participle after it, or
/// a single finite verb. Lemmas are merged through the pack equivalences.
pub fn main_verb(text: &str, pack: &LanguagePack) -> Option<Vec<String>> {
    let toks = words(text);
    let v = &pack.verbs;
    let canon = |w: &str| pack.canonical_token(w).to_string();
    if let Some(s) = toks.iter().position(|t| v.is_support(t)) {
        if let Some(l) = toks[s + 1..].iter().find(|t| v.is_lemma(t)) {
            return Some(vec![toks[s].clone(), canon(l)]);
        }
    }
    if let Some(a) = toks.iter().position(|t| v.aux_form(t).is_some()) {
        let aux = v.aux_form(&toks[a]).unwrap_or_default().to_string();
        return Some(match toks[a + 1..].iter().find_map(|t| v.verb_form(t)) {
            Some(p) => vec![aux, canon(&p)],
            None => vec![aux],
        });
    }
    toks.iter().find_map(|t| v.finite(t)).map(|f| vec![canon(&f)])
}

/// Content words of a question: stopwords, the interrogative, auxiliaries
/// and support verbs dropped; verbs reduced to their lemma; equivalent
/// tokens merged. Sorted, duplicates kept.
pub fn keywords(text: &str, pack: &LanguagePack) -> Vec<String> {
    let v = &pack.verbs;
    let when = pack.wh.when.to_lowercase();
    let mut out: Vec<String> = words(text)
        .into_iter()
        .filter(|w| !pack.is_stopword(w) && *w != when && !v.is_support(w) && v.aux_form(w).is_none())
        .map(|w| {
            let w = v.verb_form(&w).unwrap_or(w);
            pack.canonical_token(&w).to_string()
        })
        .collect();
    out.sort();
    out
}

/// The three splitter criteria for one sub-question: same interrogative,
/// same main verb group (when the gold question has one), same keywords.
pub fn sub_question_matches(system: &str, gold: &str, pack: &LanguagePack) -> bool {
    if interrogative(system) != interrogative(gold) {
        return false;
    }
    if let Some(g) = main_verb(gold, pack) {
        if main_verb(system, pack).as_ref() != Some(&g) {
            return false;
        }
    }
    keywords(system, pack) == keywords(gold, pack)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnswerJudgment {
    Corr,
    Ine,
    Wrong,
    NoAct,
}

impl AnswerJudgment {
    pub fn code(&self) -> &'static str {
        match self {
            AnswerJudgment::Corr => "CORR",
            AnswerJudgment::Ine => "INE",
            AnswerJudgment::Wrong => "WRONG",
            AnswerJudgment::NoAct => "NOACT",
        }
    }
}

fn contains_tokens(haystack: &[&str], needle: &[&str]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Verdict for a ranked answer list, with the rank of the first exact
/// answer when there is one.
pub fn judge_answer(system: &[String], gold: &str) -> (AnswerJudgment, Option<u32>) {
    if system.is_empty() {
        return (AnswerJudgment::NoAct, None);
    }
    let gold = normalize_key(gold);
    if let Some(i) = system.iter().position(|a| normalize_key(a) == gold) {
        return (AnswerJudgment::Corr, Some(i as u32 + 1));
    }
    let gold_tokens: Vec<&str> = gold.split(' ').collect();
    let inexact = system.iter().any(|a| {
        let a = normalize_key(a);
        contains_tokens(&a.split(' ').collect::<Vec<_>>(), &gold_tokens)
    });
    if inexact {
        (AnswerJudgment::Ine, None)
    } else {
        (AnswerJudgment::Wrong, None)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub pos: u32,
    pub act: u32,
    pub corr: u32,
    pub ine: u32,
}

impl Counts {
    pub fn new(pos: u32, act: u32, corr: u32) -> Self {
        Counts { pos, act, corr, ine: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRow {
    pub prec: f64,
    pub rec: f64,
    pub f: f64,
    pub mrr: Option<f64>,
}

/// F-measure with weight `beta` on recall.
pub fn f_beta(p: f64, r: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    if p + r == 0.0 {
        0.0
    } else {
        (1.0 + b2) * p * r / (b2 * p + r)
    }
}

/// Precision, recall and balanced F from counts; MRR over per-question
/// ranks when given (an absent rank scores 0).
pub fn metrics(c: &Counts, ranks: Option<&[Option<u32>]>) -> Result<MetricsRow> {
    if c.pos == 0 {
        return Err(Error::EmptyPopulation);
    }
    let prec = if c.act == 0 { 0.0 } else { c.corr as f64 / c.act as f64 };
    let rec = c.corr as f64 / c.pos as f64;
    let mrr = ranks.map(|rs| {
        if rs.is_empty() {
            0.0
        } else {
            rs.iter().map(|r| r.map_or(0.0, |r| 1.0 / r as f64)).sum::<f64>() / rs.len() as f64
        }
    });
    Ok(MetricsRow {
        prec,
        rec,
        f: f_beta(prec, rec, 1.0),
        mrr,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    /// One decomposition aspect over all questions.
    Aspect,
    /// Whole-unit decomposition over one question type.
    DecompType,
    /// End-to-end answering over one question type, or GLOBAL.
    Qa,
}

impl RowKind {
    pub fn code(&self) -> &'static str {
        match self {
            RowKind::Aspect => "aspect",
            RowKind::DecompType => "decomp-type",
            RowKind::Qa => "qa",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub kind: RowKind,
    pub name: String,
    pub counts: Counts,
    pub metrics: MetricsRow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuestionResult {
    pub id: u32,
    pub gold_type: QuestionType,
    pub decomposition: Option<DecomposedQuestion>,
    pub judgments: Vec<AspectJudgment>,
    /// Set when the question has a gold answer and a backend was given.
    pub answer: Option<(AnswerJudgment, Option<u32>)>,
    /// Rules outside the documented expression classes that fired.
    pub beyond_paper_rules: Vec<String>,
}

impl QuestionResult {
    pub fn judgment(&self, aspect: Aspect) -> &AspectJudgment {
        self.judgments
            .iter()
            .find(|j| j.aspect == aspect)
            .expect("every aspect is judged")
    }

    /// Applicable aspects judged wrong.
    pub fn failed_aspects(&self) -> Vec<Aspect> {
        self.judgments
            .iter()
            .filter(|j| j.applicable && !j.correct && j.aspect != Aspect::Decomp)
            .map(|j| j.aspect)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub language: String,
    pub gold_te: bool,
    pub rows: Vec<ReportRow>,
    pub questions: Vec<QuestionResult>,
}

pub struct EvalOptions<'a> {
    pub store: Option<&'a FixtureStore>,
    pub reference: NaiveDate,
    /// Replace tagger output with the gold expression annotations.
    pub gold_te: bool,
}

pub fn evaluate_question(gold: &GoldQuestion, pack: &LanguagePack, opts: &EvalOptions<'_>) -> QuestionResult {
    let decomposition = if opts.gold_te {
        decompose_with_tags(&gold.question, gold.gold_tags(), pack)
    } else {
        decompose(&gold.question, pack, opts.reference)
    }
    .ok();
    let judgments = judge_decomposition(decomposition.as_ref(), gold, pack);
    let answer = match (opts.store, &gold.answer) {
        (Some(store), Some(expected)) => {
            let texts: Vec<String> = match &decomposition {
                Some(d) => answer_decomposed(d, &pack.code, store)
                    .answers
                    .iter()
                    .map(|a: &DatedAnswer| a.text.clone())
                    .collect(),
                None => Vec::new(),
            };
            Some(judge_answer(&texts, expected))
        }
        _ => None,
    };
    let beyond_paper_rules = decomposition
        .as_ref()
        .map(|d| {
            d.tes
                .iter()
                .filter(|t| t.beyond_paper)
                .map(|t| t.rule.clone())
                .collect()
        })
        .unwrap_or_default();
    QuestionResult {
        id: gold.id,
        gold_type: gold.qtype,
        decomposition,
        judgments,
        answer,
        beyond_paper_rules,
    }
}

fn aspect_counts<'a>(results: impl Iterator<Item = &'a QuestionResult>, aspect: Aspect) -> Counts {
    let mut c = Counts::default();
    for j in results.map(|r| r.judgment(aspect)).filter(|j| j.applicable) {
        c.pos += 1;
        c.act += j.acted as u32;
        c.corr += j.correct as u32;
    }
    c
}

fn qa_row(name: &str, results: &[&QuestionResult]) -> Option<ReportRow> {
    let judged: Vec<&(AnswerJudgment, Option<u32>)> = results.iter().filter_map(|r| r.answer.as_ref()).collect();
    let mut c = Counts::default();
    for (verdict, _) in &judged {
        c.pos += 1;
        match verdict {
            AnswerJudgment::Corr => {
                c.act += 1;
                c.corr += 1
            }
            AnswerJudgment::Ine => {
                c.act += 1;
                c.ine += 1
            }
            AnswerJudgment::Wrong => c.act += 1,
            AnswerJudgment::NoAct => {}
        }
    }
    let ranks: Vec<Option<u32>> = judged.iter().map(|(_, r)| *r).collect();
    let metrics = metrics(&c, Some(&ranks)).ok()?;
    Some(ReportRow {
        kind: RowKind::Qa,
        name: name.to_string(),
        counts: c,
        metrics,
    })
}

/// Decomposes (and, with a fixture store, answers) every gold question and
/// aggregates the judgments.
pub fn run_evaluation(
    testbed: &[GoldQuestion],
    pack: &LanguagePack,
    opts: &EvalOptions<'_>,
) -> Result<EvaluationReport> {
    if testbed.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let mut questions: Vec<QuestionResult> = testbed.iter().map(|g| evaluate_question(g, pack, opts)).collect();
    questions.sort_by_key(|q| q.id);

    let mut rows = Vec::new();
    for aspect in Aspect::ALL {
        let counts = aspect_counts(questions.iter(), aspect);
        if let Ok(m) = metrics(&counts, None) {
            rows.push(ReportRow {
                kind: RowKind::Aspect,
                name: aspect.code().to_string(),
                counts,
                metrics: m,
            });
        }
    }
    for t in QuestionType::ALL {
        let counts = aspect_counts(questions.iter().filter(|q| q.gold_type == t), Aspect::Decomp);
        if let Ok(m) = metrics(&counts, None) {
            rows.push(ReportRow {
                kind: RowKind::DecompType,
                name: format!("Type {t}"),
                counts,
                metrics: m,
            });
        }
    }
    if opts.store.is_some() {
        for t in QuestionType::ALL {
            let of_type: Vec<&QuestionResult> = questions.iter().filter(|q| q.gold_type == t).collect();
            rows.extend(qa_row(&format!("Type {t}"), &of_type));
        }
        let all: Vec<&QuestionResult> = questions.iter().collect();
        rows.extend(qa_row("GLOBAL", &all));
    }
    Ok(EvaluationReport {
        language: pack.code.clone(),
        gold_te: opts.gold_te,
        rows,
        questions,
    })
}

fn pct(x: f64) -> String {
    format!("{:.2}%", x * 100.0)
}

impl EvaluationReport {
    pub fn rows_of(&self, kind: RowKind) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(move |r| r.kind == kind)
    }

    pub fn row(&self, kind: RowKind, name: &str) -> Option<&ReportRow> {
        self.rows_of(kind).find(|r| r.name == name)
    }

    pub fn to_xml(&self) -> String {
        let mut root = Element::new("REPORT")
            .attr("lang", self.language.as_str())
            .attr("gold-te", if self.gold_te { "yes" } else { "no" });
        for r in &self.rows {
            let m = &r.metrics;
            let mut el = Element::new("ROW")
                .attr("kind", r.kind.code())
                .attr("name", r.name.as_str())
                .attr("pos", r.counts.pos.to_string())
                .attr("act", r.counts.act.to_string())
                .attr("corr", r.counts.corr.to_string())
                .attr("ine", r.counts.ine.to_string())
                .attr("prec", format!("{:.4}", m.prec))
                .attr("rec", format!("{:.4}", m.rec))
                .attr("f", format!("{:.4}", m.f));
            if let Some(mrr) = m.mrr {
                el = el.attr("mrr", format!("{mrr:.4}"));
            }
            root = root.child(el);
        }
        for q in &self.questions {
            let failed = q.failed_aspects();
            let mut el = Element::new("QUESTION").attr("id", q.id.to_string());
            if !failed.is_empty() {
                let names: Vec<&str> = failed.iter().map(|a| a.code()).collect();
                el = el.attr("failed", names.join(" "));
            }
            if let Some((verdict, rank)) = &q.answer {
                el = el.attr("answer", verdict.code());
                if let Some(r) = rank {
                    el = el.attr("rank", r.to_string());
                }
            }
            if !q.beyond_paper_rules.is_empty() {
                el = el.attr("beyond-paper", q.beyond_paper_rules.join(" "));
            }
            root = root.child(el);
        }
        root.to_document()
    }
}

impl fmt::Display for EvaluationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.gold_te { ", gold TE" } else { "" };
        writeln!(
            f,
            "Decomposition unit ({}{mode}, {} questions)",
            self.language,
            self.questions.len()
        )?;
        let head = format!(
            "{:<38}{:>5}{:>5}{:>6}{:>9}{:>9}{:>9}",
            "", "POS", "ACT", "CORR", "PREC", "REC", "F"
        );
        writeln!(f, "{head}")?;
        for r in self.rows_of(RowKind::Aspect) {
            let title = Aspect::ALL
                .iter()
                .find(|a| a.code() == r.name)
                .map_or(r.name.as_str(), |a| a.title());
            let (c, m) = (&r.counts, &r.metrics);
            writeln!(
                f,
                "{:<38}{:>5}{:>5}{:>6}{:>9}{:>9}{:>9}",
                title,
                c.pos,
                c.act,
                c.corr,
                pct(m.prec),
                pct(m.rec),
                pct(m.f)
            )?;
        }
        writeln!(f)?;
        writeln!(f, "Decomposition unit by question type")?;
        writeln!(f, "{head}")?;
        for r in self.rows_of(RowKind::DecompType) {
            let (c, m) = (&r.counts, &r.metrics);
            writeln!(
                f,
                "{:<38}{:>5}{:>5}{:>6}{:>9}{:>9}{:>9}",
                r.name,
                c.pos,
                c.act,
                c.corr,
                pct(m.prec),
                pct(m.rec),
                pct(m.f)
            )?;
        }
        if self.rows_of(RowKind::Qa).next().is_some() {
            writeln!(f)?;
            writeln!(f, "Question answering")?;
            writeln!(
                f,
                "{:<10}{:>5}{:>5}{:>6}{:>5}{:>9}{:>9}{:>9}{:>9}",
                "", "POS", "ACT", "CORR", "INE", "PREC", "REC", "F", "MRR"
            )?;
            for r in self.rows_of(RowKind::Qa) {
                let (c, m) = (&r.counts, &r.metrics);
                writeln!(
                    f,
                    "{:<10}{:>5}{:>5}{:>6}{:>5}{:>9}{:>9}{:>9}{:>9}",
                    r.name,
                    c.pos,
                    c.act,
                    c.corr,
                    c.ine,
                    pct(m.prec),
                    pct(m.rec),
                    pct(m.f),
                    pct(m.mrr.unwrap_or(0.0))
                )?;
            }
        }
        let failures: Vec<String> = self
            .questions
            .iter()
            .filter(|q| !q.failed_aspects().is_empty())
            .map(|q| {
                let names: Vec<&str> = q.failed_aspects().iter().map(|a| a.code()).collect();
                format!("  Q{}: {}", q.id, names.join(", "))
            })
            .collect();
        if !failures.is_empty() {
            writeln!(f)?;
            writeln!(f, "Questions with errors")?;
            for line in failures {
                writeln!(f, "{line}")?;
            }
        }
        let flagged: Vec<String> = self
            .questions
            .iter()
            .filter(|q| !q.beyond_paper_rules.is_empty())
            .map(|q| format!("  Q{}: {}", q.id, q.beyond_paper_rules.join(", ")))
            .collect();
        if !flagged.is_empty() {
            writeln!(f)?;
            writeln!(f, "Expressions tagged by beyond-paper rules")?;
            for line in flagged {
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

/// Side-by-side aspect rows of two runs (normally without and with gold
/// expression injection).
pub fn comparison_table(plain: &EvaluationReport, injected: &EvaluationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<38}{:>6}{:>9}{:>6}{:>9}{:>9}",
        "", "CORR", "F", "CORR*", "F*", "dF"
    );
    for r in plain.rows_of(RowKind::Aspect) {
        let Some(g) = injected.row(RowKind::Aspect, &r.name) else {
            continue;
        };
        let title = Aspect::ALL
            .iter()
            .find(|a| a.code() == r.name)
            .map_or(r.name.as_str(), |a| a.title());
        let _ = writeln!(
            out,
            "{:<38}{:>6}{:>9}{:>6}{:>9}{:>+8.2}",
            title,
            r.counts.corr,
            pct(r.metrics.f),
            g.counts.corr,
            pct(g.metrics.f),
            (g.metrics.f - r.metrics.f) * 100.0
        );
    }
    let _ = writeln!(out, "(* with gold temporal expressions; dF in percentage points)");
    out
}
