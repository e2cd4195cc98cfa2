//! Language packs: every language-dependent resource the layer uses.
//!
//! A pack is plain data loaded from XML (see `docs/pack-format.md`). The
//! English and Spanish packs are embedded in the library.

mod xml;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tagger::TeRuleSet;
use crate::text::tokenize;
use crate::time_model::OrderingKey;

pub use xml::{load_pack, write_pack};

const ENGLISH: &str = include_str!("../../data/en.xml");
const SPANISH: &str = include_str!("../../data/es.xml");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguagePack {
    pub code: String,
    pub signals: SignalLexicon,
    pub te: TeRuleSet,
    pub wh: WhWords,
    pub verbs: VerbLexicon,
    pub stopwords: Vec<String>,
    /// Token pairs treated as the same keyword when judging splits.
    pub equivalences: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalEntry {
    /// Lowercased surface; `...` separates the parts of a two-part signal
    /// ("from ... to").
    pub surface: String,
    pub base: String,
    pub key: OrderingKey,
    /// Only a signal when a temporal expression follows it.
    pub te_bound: bool,
    /// False for entries with no attested surface in any gold data.
    pub verified: bool,
}

impl SignalEntry {
    /// Token sequences of each part.
    pub fn parts(&self) -> Vec<Vec<String>> {
        self.surface
            .split("...")
            .map(|p| tokenize(p).into_iter().map(|t| t.norm).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignalLexicon {
    pub entries: Vec<SignalEntry>,
    /// Quantity words of an offset modifier ("a", "four").
    pub quantities: Vec<String>,
    /// Units of an offset modifier ("year", "years").
    pub units: Vec<String>,
    /// Words dropped from the end of a Q-Focus ("just").
    pub trim: Vec<String>,
    /// Words allowed between a signal and a following expression.
    pub determiners: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhWords {
    /// The "when"-interrogative, as written at the start of a Q-Restriction.
    pub when: String,
    pub words: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub from: String,
    pub to: String,
    /// Accept the result only if it is a listed lemma.
    pub check: bool,
}

impl SuffixRule {
    fn apply(&self, word: &str, lemmas: &HashSet<&str>) -> Option<String> {
        let stem = word.strip_suffix(self.from.as_str())?;
        if stem.chars().count() < 2 {
            return None;
        }
        let out = format!("{stem}{}", self.to);
        (!self.check || lemmas.contains(out.as_str())).then_some(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    /// The clause's verb group starts with an auxiliary or copula.
    Aux,
    /// A finite lexical verb.
    Tensed,
    /// Clause-initial gerund; the subject comes from the Q-Focus.
    Gerund,
    /// No verb found.
    Phrase,
}

impl ClauseKind {
    pub const ALL: [ClauseKind; 4] = [
        ClauseKind::Aux,
        ClauseKind::Tensed,
        ClauseKind::Gerund,
        ClauseKind::Phrase,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClauseKind::Aux => "aux",
            ClauseKind::Tensed => "tensed",
            ClauseKind::Gerund => "gerund",
            ClauseKind::Phrase => "phrase",
        }
    }
}

impl fmt::Display for ClauseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClauseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClauseKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::PackInvalid(format!("unknown template kind `{s}`")))
    }
}

/// Placeholders a clause template may use.
pub const TEMPLATE_SLOTS: [&str; 8] = [
    "when",
    "aux",
    "subject",
    "participle",
    "verb",
    "clitics",
    "after",
    "clause",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerbLexicon {
    /// Do-support auxiliaries ("did").
    pub support: Vec<String>,
    /// Auxiliary or copula forms and the form written in a Q-Restriction.
    pub aux: Vec<(String, String)>,
    /// Irregular finite forms and their rewritten form.
    pub irregular: Vec<(String, String)>,
    pub suffixes: Vec<SuffixRule>,
    pub gerunds: Vec<SuffixRule>,
    pub clitics: Vec<String>,
    /// Forms suffix rules may produce when they check the lexicon.
    pub lemmas: Vec<String>,
    pub templates: Vec<(ClauseKind, String)>,
}

impl VerbLexicon {
    fn lemma_set(&self) -> HashSet<&str> {
        self.lemmas.iter().map(String::as_str).collect()
    }

    pub fn aux_form(&self, word: &str) -> Option<&str> {
        self.aux.iter().find(|(f, _)| f == word).map(|(_, a)| a.as_str())
    }

    pub fn is_support(&self, word: &str) -> bool {
        self.support.iter().any(|s| s == word)
    }

    pub fn is_clitic(&self, word: &str) -> bool {
        self.clitics.iter().any(|c| c == word)
    }

    pub fn is_lemma(&self, word: &str) -> bool {
        self.lemmas.iter().any(|l| l == word)
    }

    /// Rewrites a finite verb form; `None` if the word is not recognized
    /// as one.
    pub fn finite(&self, word: &str) -> Option<String> {
        if let Some((_, to)) = self.irregular.iter().find(|(f, _)| f == word) {
            return Some(to.clone());
        }
        let lemmas = self.lemma_set();
        self.suffixes.iter().find_map(|r| r.apply(word, &lemmas))
    }

    pub fn gerund(&self, word: &str) -> Option<String> {
        let lemmas = self.lemma_set();
        self.gerunds.iter().find_map(|r| r.apply(word, &lemmas))
    }

    /// Canonical verb for any recognized verb form.
    pub fn verb_form(&self, word: &str) -> Option<String> {
        self.finite(word)
            .or_else(|| self.gerund(word))
            .or_else(|| self.is_lemma(word).then(|| word.to_string()))
    }

    pub fn template(&self, kind: ClauseKind) -> Option<&str> {
        self.templates.iter().find(|(k, _)| *k == kind).map(|(_, t)| t.as_str())
    }
}

impl LanguagePack {
    pub fn is_stopword(&self, word: &str) -> bool {
        self.stopwords.iter().any(|s| s == word)
    }

    /// Maps a token to the representative of its equivalence class.
    pub fn canonical_token<'a>(&'a self, word: &'a str) -> &'a str {
        let mut classes: HashMap<&str, &str> = HashMap::new();
        for (a, b) in &self.equivalences {
            let ra = find(&classes, a);
            let rb = find(&classes, b);
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                classes.insert(hi, lo);
            }
        }
        find(&classes, word)
    }

    /// Checks every pack invariant; the error names the first violation.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::PackInvalid(why));
        if self.code.trim().is_empty() {
            return bad("pack has no language code".into());
        }
        if self.wh.when.trim().is_empty() {
            return bad("no \"when\"-interrogative declared".into());
        }
        let mut base_keys: HashMap<&str, OrderingKey> = HashMap::new();
        for s in &self.signals.entries {
            if s.parts().iter().any(Vec::is_empty) {
                return bad(format!("signal `{}` has an empty part", s.surface));
            }
            match base_keys.insert(&s.base, s.key) {
                Some(k) if k != s.key => {
                    return bad(format!("signal base `{}` maps to both {k} and {}", s.base, s.key));
                }
                _ => {}
            }
        }
        if base_keys.len() < 11 {
            return bad(format!(
                "only {} distinct signal bases; at least 11 are required",
                base_keys.len()
            ));
        }
        let mut ids = HashSet::new();
        for r in &self.te.rules {
            if !ids.insert(r.id.as_str()) {
                return bad(format!("duplicate TE rule id `{}`", r.id));
            }
        }
        for (m, names) in &self.te.lexicon.months {
            if !(1..=12).contains(m) || names.is_empty() {
                return bad(format!("month entry {m} is invalid"));
            }
        }
        if self.verbs.template(ClauseKind::Phrase).is_none() {
            return bad("no `phrase` clause template".into());
        }
        let mut kinds = HashSet::new();
        for (kind, t) in &self.verbs.templates {
            if !kinds.insert(*kind) {
                return bad(format!("duplicate `{kind}` clause template"));
            }
            check_template(t).map_err(|why| Error::PackInvalid(format!("`{kind}` template: {why}")))?;
        }
        Ok(())
    }
}

fn find<'a>(classes: &HashMap<&'a str, &'a str>, mut w: &'a str) -> &'a str {
    while let Some(next) = classes.get(w) {
        w = next;
    }
    w
}

fn check_template(t: &str) -> std::result::Result<(), String> {
    let mut rest = t;
    let mut has_when = false;
    while let Some(open) = rest.find('{') {
        let close = rest[open..].find('}').ok_or("unclosed placeholder")? + open;
        let name = &rest[open + 1..close];
        if !TEMPLATE_SLOTS.contains(&name) {
            return Err(format!("unknown placeholder `{{{name}}}`"));
        }
        has_when |= name == "when";
        rest = &rest[close + 1..];
    }
    if !has_when {
        return Err("does not use {when}".into());
    }
    Ok(())
}

pub fn builtin_english() -> LanguagePack {
    load_pack(ENGLISH).expect("embedded English pack is valid")
}

pub fn builtin_spanish() -> LanguagePack {
    load_pack(SPANISH).expect("embedded Spanish pack is valid")
}

/// Embedded pack by language code.
pub fn builtin(code: &str) -> Option<LanguagePack> {
    match code {
        "en" => Some(builtin_english()),
        "es" => Some(builtin_spanish()),
        _ => None,
    }
}

pub fn load_pack_file(path: &Path) -> Result<LanguagePack> {
    load_pack(&std::fs::read_to_string(path)?)
}
