//! Question decomposition: signal detection, type identification and
//! splitting of complex questions into a Q-Focus and a Q-Restriction.

use std::fmt;
use std::ops::Range;

use chrono::NaiveDate;

use crate::diagnostic::Diagnostic;
use crate::error::{Error, Result};
use crate::pack::{ClauseKind, LanguagePack, SignalEntry};
use crate::tagger::{tag, TeTag};
use crate::text::{squash_spaces, tokenize, Token};
use crate::time_model::OrderingKey;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalMatch {
    /// Signal text including any offset modifier ("four years after").
    pub surface: String,
    pub span: Range<usize>,
    pub base: String,
    pub key: OrderingKey,
    pub modifier: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuestionType {
    /// Single event, no temporal expression.
    One,
    /// Single event with a temporal expression.
    Two,
    /// Several events and a temporal expression.
    Three,
    /// Several events, no temporal expression.
    Four,
}

impl QuestionType {
    pub const ALL: [QuestionType; 4] = [
        QuestionType::One,
        QuestionType::Two,
        QuestionType::Three,
        QuestionType::Four,
    ];

    pub fn number(&self) -> u8 {
        match self {
            QuestionType::One => 1,
            QuestionType::Two => 2,
            QuestionType::Three => 3,
            QuestionType::Four => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        QuestionType::ALL.into_iter().find(|t| t.number() == n)
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, QuestionType::Three | QuestionType::Four)
    }
}

impl fmt::Display for QuestionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposedQuestion {
    pub original: String,
    pub qtype: QuestionType,
    pub tes: Vec<TeTag>,
    pub signal: Option<SignalMatch>,
    pub q_focus: Option<String>,
    pub q_restriction: Option<String>,
    pub diagnostics: Vec<Diagnostic>,
}

fn overlaps(a: &Range<usize>, b: &Range<usize>) -> bool {
    a.start < b.end && b.start < a.end
}

fn matches_at(tokens: &[Token], i: usize, part: &[String]) -> bool {
    tokens.len() >= i + part.len() && part.iter().zip(&tokens[i..]).all(|(p, t)| *p == t.norm)
}

/// Position after `part` if it occurs at or after `from`.
fn find_part(tokens: &[Token], from: usize, part: &[String]) -> Option<usize> {
    (from..tokens.len())
        .find(|&i| matches_at(tokens, i, part))
        .map(|i| i + part.len())
}

/// Finds the signal linking the two events of a question.
///
/// Scans left to right and takes the longest entry at the first position
/// that survives the guards: nothing at the interrogative position,
/// nothing inside a temporal expression, and nothing directly in front of
/// one (optionally through a determiner), since such a word relates an
/// event to a time rather than to another event.
pub fn detect_signal(question: &str, tes: &[TeTag], pack: &LanguagePack) -> Option<SignalMatch> {
    let tokens = tokenize(question);
    let first_word = tokens.iter().position(Token::is_word)?;
    let lex = &pack.signals;
    let te_starts_at = |i: usize| {
        tokens
            .get(i)
            .is_some_and(|t| tes.iter().any(|te| te.span.start == t.begin))
    };

    for i in first_word + 1..tokens.len() {
        let mut candidates: Vec<(usize, usize, &SignalEntry)> = lex
            .entries
            .iter()
            .filter_map(|e| {
                let parts = e.parts();
                if !matches_at(&tokens, i, &parts[0]) {
                    return None;
                }
                let mut at = i + parts[0].len();
                for p in &parts[1..] {
                    at = find_part(&tokens, at, p)?;
                }
                Some((parts[0].len(), parts.len(), e))
            })
            .collect();
        candidates.sort_by_key(|c| std::cmp::Reverse((c.0, c.1)));

        for (n, _, entry) in candidates {
            let span = tokens[i].begin..tokens[i + n - 1].end;
            if tes.iter().any(|te| overlaps(&te.span, &span)) {
                continue;
            }
            let mut next = i + n;
            let followed_by_te = te_starts_at(next) || {
                while tokens.get(next).is_some_and(|t| lex.determiners.contains(&t.norm)) {
                    next += 1;
                }
                te_starts_at(next)
            };
            if followed_by_te || entry.te_bound {
                // te-bound entries need a following expression, which the
                // guard above already rules out as an event link.
                continue;
            }
            let mut start = span.start;
            let mut modifier = None;
            if i >= 2 {
                let (q, u) = (&tokens[i - 2], &tokens[i - 1]);
                let is_quantity = lex.quantities.contains(&q.norm) || q.norm.bytes().all(|b| b.is_ascii_digit());
                let mod_span = q.begin..u.end;
                if is_quantity && lex.units.contains(&u.norm) && !tes.iter().any(|te| overlaps(&te.span, &mod_span)) {
                    start = q.begin;
                    modifier = Some(question[mod_span].to_string());
                }
            }
            return Some(SignalMatch {
                surface: question[start..span.end].to_string(),
                span: start..span.end,
                base: entry.base.clone(),
                key: entry.key,
                modifier,
            });
        }
    }
    None
}

/// The decision tree over (has expression, has signal).
pub fn identify_type(tes: &[TeTag], signal: Option<&SignalMatch>) -> QuestionType {
    match (!tes.is_empty(), signal.is_some()) {
        (false, false) => QuestionType::One,
        (true, false) => QuestionType::Two,
        (true, true) => QuestionType::Three,
        (false, true) => QuestionType::Four,
    }
}

fn tidy(text: &str) -> String {
    squash_spaces(text).replace(" ?", "?").replace("¿ ", "¿")
}

fn fill(template: &str, slots: &[(&str, &str)]) -> String {
    let mut out = template.to_string();
    for (name, value) in slots {
        out = out.replace(&format!("{{{name}}}"), value);
    }
    tidy(&out)
}

/// Splits a complex question around its signal.
pub fn split(question: &str, signal: &SignalMatch, tes: &[TeTag], pack: &LanguagePack) -> Result<(String, String)> {
    let focus = focus_text(&question[..signal.span.start], pack);

    let clause_start = signal.span.end;
    let clause = question[clause_start..].trim_end_matches(|c: char| c.is_whitespace() || "?!.".contains(c));
    let tokens: Vec<Token> = tokenize(clause).into_iter().filter(Token::is_word).collect();
    if tokens.is_empty() {
        return Err(Error::Unsplittable(signal.surface.clone()));
    }
    let in_te = |t: &Token| {
        let abs = t.begin + clause_start..t.end + clause_start;
        tes.iter().any(|te| overlaps(&te.span, &abs))
    };

    let verbs = &pack.verbs;
    let when = pack.wh.when.as_str();
    let after = |t: &Token| clause[t.end..].trim();

    for (j, tok) in tokens.iter().enumerate() {
        if in_te(tok) {
            continue;
        }
        if let (Some(aux), Some(template)) = (verbs.aux_form(&tok.norm), verbs.template(ClauseKind::Aux)) {
            let subject = clause[..tok.begin].trim();
            let (participle, rest) = match tokens.get(j + 1) {
                Some(p) => (&clause[p.span()], after(p)),
                None => ("", ""),
            };
            let restriction = fill(
                template,
                &[
                    ("when", when),
                    ("aux", aux),
                    ("subject", subject),
                    ("participle", participle),
                    ("after", rest),
                ],
            );
            return Ok((focus, restriction));
        }
        if j == 0 {
            if let (Some(verb), Some(template), Some(subject)) = (
                verbs.gerund(&tok.norm),
                verbs.template(ClauseKind::Gerund),
                focus_subject(&question[..signal.span.start], pack),
            ) {
                let restriction = fill(
                    template,
                    &[
                        ("when", when),
                        ("subject", subject),
                        ("verb", &verb),
                        ("after", after(tok)),
                    ],
                );
                return Ok((focus, restriction));
            }
        }
        if let (Some(verb), Some(template)) = (verbs.finite(&tok.norm), verbs.template(ClauseKind::Tensed)) {
            let mut first = j;
            while first > 0 && verbs.is_clitic(&tokens[first - 1].norm) {
                first -= 1;
            }
            let clitics = &clause[tokens[first].begin..tok.begin];
            let subject = clause[..tokens[first].begin].trim();
            let restriction = fill(
                template,
                &[
                    ("when", when),
                    ("subject", subject),
                    ("clitics", clitics.trim()),
                    ("verb", &verb),
                    ("after", after(tok)),
                ],
            );
            return Ok((focus, restriction));
        }
    }

    let template = verbs
        .template(ClauseKind::Phrase)
        .ok_or_else(|| Error::PackInvalid("no `phrase` clause template".into()))?;
    Ok((focus, fill(template, &[("when", when), ("clause", clause.trim())])))
}

/// Text before the signal, minus trailing punctuation and trim words, with
/// a question mark appended.
fn focus_text(before: &str, pack: &LanguagePack) -> String {
    let tokens = tokenize(before);
    let keep = tokens
        .iter()
        .rposition(|t| t.is_word() && !pack.signals.trim.contains(&t.norm))
        .map(|k| tokens[k].end)
        .unwrap_or(0);
    format!("{}?", tidy(&before[..keep]))
}

/// Subject of a do-support Q-Focus: the words between the support verb
/// and the first known verb ("Where did Bill Clinton study" gives
/// "Bill Clinton").
fn focus_subject<'a>(before: &'a str, pack: &LanguagePack) -> Option<&'a str> {
    let tokens = tokenize(before);
    let s = tokens.iter().position(|t| pack.verbs.is_support(&t.norm))?;
    let v = (s + 1..tokens.len()).find(|&k| pack.verbs.is_lemma(&tokens[k].norm))?;
    (v > s + 1).then(|| before[tokens[s + 1].begin..tokens[v - 1].end].trim())
}

/// Full pipeline: tag, detect the signal, classify, split.
pub fn decompose(question: &str, pack: &LanguagePack, reference: NaiveDate) -> Result<DecomposedQuestion> {
    decompose_with_tags(question, tag(question, &pack.te, reference), pack)
}

/// Decomposition over externally supplied expression tags (e.g. gold
/// annotations).
pub fn decompose_with_tags(question: &str, tes: Vec<TeTag>, pack: &LanguagePack) -> Result<DecomposedQuestion> {
    let signal = detect_signal(question, &tes, pack);
    let qtype = identify_type(&tes, signal.as_ref());
    let mut out = DecomposedQuestion {
        original: question.to_string(),
        qtype,
        tes,
        signal: None,
        q_focus: None,
        q_restriction: None,
        diagnostics: Vec::new(),
    };
    if let Some(signal) = signal {
        let (focus, restriction) = split(question, &signal, &out.tes, pack)?;
        if signal.modifier.is_some() {
            out.diagnostics.push(Diagnostic::OffsetSignalUnsupported);
        }
        out.q_focus = Some(focus);
        out.q_restriction = Some(restriction);
        out.signal = Some(signal);
    }
    Ok(out)
}
