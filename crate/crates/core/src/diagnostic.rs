use std::fmt;

/// Non-fatal warning codes attached to decompositions and answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagnostic {
    /// The signal carries a quantity offset ("a year after") that is
    /// captured but not applied.
    OffsetSignalUnsupported,
    /// An undated answer was kept by a TE filter.
    UndatedPassthrough,
    /// An undated focus answer could not be checked against the signal.
    UndatedAnswer,
    NoRestrictionAnswer,
    /// The backend had nothing for the question or its Q-Focus.
    NoAct,
    /// A complex question had nothing after its signal.
    Unsplittable,
}

impl Diagnostic {
    pub const ALL: [Diagnostic; 6] = [
        Diagnostic::OffsetSignalUnsupported,
        Diagnostic::UndatedPassthrough,
        Diagnostic::UndatedAnswer,
        Diagnostic::NoRestrictionAnswer,
        Diagnostic::NoAct,
        Diagnostic::Unsplittable,
    ];

    pub fn from_code(code: &str) -> Option<Self> {
        Diagnostic::ALL.into_iter().find(|d| d.code() == code)
    }

    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::OffsetSignalUnsupported => "OFFSET_SIGNAL_UNSUPPORTED",
            Diagnostic::UndatedPassthrough => "UNDATED_PASSTHROUGH",
            Diagnostic::UndatedAnswer => "UNDATED_ANSWER",
            Diagnostic::NoRestrictionAnswer => "NO_RESTRICTION_ANSWER",
            Diagnostic::NoAct => "NOACT",
            Diagnostic::Unsplittable => "UNSPLITTABLE",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}
