//! Answer recomposition: temporal filtering of candidate answers and
//! selection by the signal's ordering key.

use crate::diagnostic::Diagnostic;
use crate::error::{Error, Result};
use crate::time_model::{relation_holds, DayInterval, OrderingKey, TimeValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatedAnswer {
    pub text: String,
    /// Backend rank, from 1.
    pub rank: u32,
    pub value: Option<TimeValue>,
}

impl DatedAnswer {
    pub fn new(text: &str, rank: u32, value: Option<TimeValue>) -> Self {
        DatedAnswer {
            text: text.to_string(),
            rank,
            value,
        }
    }

    /// Calendar interval of the answer's date, if it has an anchored one.
    pub fn interval(&self) -> Option<DayInterval> {
        self.value.as_ref().and_then(|v| v.to_interval().ok())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComplexAnswer {
    pub answers: Vec<DatedAnswer>,
    pub restriction_answer: Option<DatedAnswer>,
    /// Upper bound F3 of a SPAN relation.
    pub restriction_bound: Option<DatedAnswer>,
    pub applied_key: Option<OrderingKey>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ComplexAnswer {
    pub(crate) fn note(&mut self, d: Diagnostic) {
        if !self.diagnostics.contains(&d) {
            self.diagnostics.push(d);
        }
    }
}

/// Keeps answers whose interval overlaps the constraint. Undated answers
/// are kept and reported.
pub fn filter_by_te(answers: &[DatedAnswer], constraint: &DayInterval) -> (Vec<DatedAnswer>, Vec<Diagnostic>) {
    let mut diagnostics = Vec::new();
    let kept = answers
        .iter()
        .filter(|a| match a.interval() {
            Some(iv) => iv.overlaps(constraint),
            None => {
                if diagnostics.is_empty() {
                    diagnostics.push(Diagnostic::UndatedPassthrough);
                }
                true
            }
        })
        .cloned()
        .collect();
    (kept, diagnostics)
}

/// Whether a focus answer stands in `key` relation to the restriction
/// answer (and, for SPAN, the upper bound).
pub fn compatible(
    key: OrderingKey,
    focus: &DatedAnswer,
    restriction: &DatedAnswer,
    bound: Option<&DatedAnswer>,
) -> Result<bool> {
    let interval = |a: &DatedAnswer| a.interval().ok_or_else(|| Error::UndatedAnswer(a.text.clone()));
    let f1 = interval(focus)?;
    let f2 = interval(restriction)?;
    let f3 = bound.map(interval).transpose()?;
    relation_holds(key, &f1, &f2, f3.as_ref())
}

/// Combines the focus and restriction answer lists.
///
/// Both lists are filtered by every constraint. Without a key the
/// filtered focus list is the result. With a key, the best surviving
/// restriction answer is F2 (for SPAN the two best, in date order, are F2
/// and F3) and every focus answer compatible with it is kept, in backend
/// order.
pub fn recompose(
    focus_answers: &[DatedAnswer],
    restriction_answers: &[DatedAnswer],
    key: Option<OrderingKey>,
    te_constraints: &[DayInterval],
) -> ComplexAnswer {
    let mut out = ComplexAnswer {
        applied_key: key,
        ..Default::default()
    };
    let mut filter = |list: &[DatedAnswer]| {
        let mut list = list.to_vec();
        list.sort_by_key(|a| a.rank);
        for c in te_constraints {
            let (kept, diags) = filter_by_te(&list, c);
            list = kept;
            for d in diags {
                out.note(d);
            }
        }
        list
    };
    let focus = filter(focus_answers);
    let restriction = filter(restriction_answers);

    let Some(key) = key else {
        out.answers = focus;
        return out;
    };
    let Some(first) = restriction.first().cloned() else {
        out.note(Diagnostic::NoRestrictionAnswer);
        return out;
    };
    let (f2, f3) = if key == OrderingKey::Span {
        let second = restriction.get(1).cloned().unwrap_or_else(|| first.clone());
        let start = |a: &DatedAnswer| a.interval().map(|iv| iv.start());
        if start(&second) < start(&first) {
            (second, Some(first))
        } else {
            (first, Some(second))
        }
    } else {
        (first, None)
    };

    for a in focus {
        match compatible(key, &a, &f2, f3.as_ref()) {
            Ok(true) => out.answers.push(a),
            Ok(false) => {}
            Err(_) => out.note(Diagnostic::UndatedAnswer),
        }
    }
    out.restriction_answer = Some(f2);
    out.restriction_bound = f3;
    out
}
