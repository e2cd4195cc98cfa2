use crate::error::{Error, Result};
use crate::tagger::{Lexicon, NumberWord, TeRule, TeRuleSet};
use crate::xml::Element;

use super::{LanguagePack, SignalEntry, SignalLexicon, SuffixRule, VerbLexicon, WhWords};

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn flag(el: &Element, key: &str) -> Result<bool> {
    match el.get(key) {
        None | Some("no") => Ok(false),
        Some("yes") => Ok(true),
        Some(other) => Err(Error::PackInvalid(format!(
            "<{}> {key}=\"{other}\": expected yes or no",
            el.name
        ))),
    }
}

fn int(el: &Element, key: &str) -> Result<i64> {
    let v = el.require(key)?;
    v.parse()
        .map_err(|_| Error::PackInvalid(format!("<{}> {key}=\"{v}\" is not an integer", el.name)))
}

fn section<'a>(root: &'a Element, name: &str) -> Result<&'a Element> {
    root.first(name)
        .ok_or_else(|| Error::PackInvalid(format!("missing section {name}")))
}

fn words_attr(el: &Element, child: &str) -> Result<Vec<String>> {
    Ok(el
        .first(child)
        .map(|c| c.require("words"))
        .transpose()?
        .map(words)
        .unwrap_or_default())
}

/// Parses and validates a pack document.
pub fn load_pack(text: &str) -> Result<LanguagePack> {
    let root = Element::parse(text).map_err(|e| Error::PackInvalid(e.to_string()))?;
    if root.name != "PACK" {
        return Err(Error::PackInvalid(format!(
            "root element is <{}>, expected <PACK>",
            root.name
        )));
    }
    let pack = from_element(&root).map_err(|e| match e {
        Error::Xml(m) => Error::PackInvalid(m),
        other => other,
    })?;
    pack.validate()?;
    Ok(pack)
}

fn from_element(root: &Element) -> Result<LanguagePack> {
    let code = root.require("code")?.to_string();

    let sig = section(root, "SIGNALS")?;
    let mut entries = Vec::new();
    for s in sig.children_named("SIGNAL") {
        let verified = match s.get("status") {
            None => true,
            Some("UNVERIFIED") => false,
            Some(other) => return Err(Error::PackInvalid(format!("unknown signal status `{other}`"))),
        };
        entries.push(SignalEntry {
            surface: s.require("surface")?.to_lowercase(),
            base: s.require("base")?.to_string(),
            key: s.require("key")?.parse()?,
            te_bound: match s.get("context") {
                None => false,
                Some("te-bound") => true,
                Some(other) => return Err(Error::PackInvalid(format!("unknown signal context `{other}`"))),
            },
            verified,
        });
    }
    let modifier = sig.first("MODIFIER");
    let signals = SignalLexicon {
        entries,
        quantities: modifier
            .map(|m| m.require("quantities"))
            .transpose()?
            .map(words)
            .unwrap_or_default(),
        units: modifier
            .map(|m| m.require("units"))
            .transpose()?
            .map(words)
            .unwrap_or_default(),
        trim: words_attr(sig, "TRIM")?,
        determiners: words_attr(sig, "DETERMINERS")?,
    };

    let ter = section(root, "TERULES")?;
    let mut lexicon = Lexicon::default();
    let mut rules = Vec::new();
    for el in &ter.children {
        match el.name.as_str() {
            "MONTH" => {
                let n = int(el, "n")?;
                let n = u32::try_from(n).map_err(|_| Error::PackInvalid(format!("month number {n}")))?;
                lexicon.months.push((n, words(el.require("names")?)));
            }
            "NUMBER" => lexicon.numbers.push(NumberWord {
                word: el.require("word")?.to_string(),
                value: int(el, "value")?,
                multiplier: flag(el, "multiplier")?,
            }),
            "CONNECTORS" => lexicon.connectors = words(el.require("words")?),
            "ORDINAL" => lexicon
                .ordinals
                .push((el.require("word")?.to_string(), int(el, "value")?)),
            "ORDINAL_SUFFIXES" => lexicon.ordinal_suffixes = words(el.require("words")?),
            "DECADE" => lexicon
                .decades
                .push((el.require("word")?.to_string(), int(el, "value")?)),
            "RULE" => rules.push(TeRule::new(
                el.require("id")?,
                el.require("pattern")?,
                el.require("value")?,
                flag(el, "beyond-paper")?,
            )?),
            other => return Err(Error::PackInvalid(format!("unexpected <{other}> in TERULES"))),
        }
    }

    let wh_el = section(root, "WHWORDS")?;
    let wh = WhWords {
        when: wh_el.get("when").unwrap_or_default().to_string(),
        words: words(wh_el.get("words").unwrap_or_default()),
    };

    let vb = section(root, "VERBS")?;
    let mut verbs = VerbLexicon::default();
    for el in &vb.children {
        let suffix = |el: &Element| -> Result<SuffixRule> {
            Ok(SuffixRule {
                from: el.require("from")?.to_string(),
                to: el.require("to")?.to_string(),
                check: match el.get("check") {
                    None => false,
                    Some("lexicon") => true,
                    Some(other) => return Err(Error::PackInvalid(format!("unknown check `{other}`"))),
                },
            })
        };
        match el.name.as_str() {
            "SUPPORT" => verbs.support = words(el.require("words")?),
            "AUX" => verbs
                .aux
                .push((el.require("form")?.to_string(), el.require("as")?.to_string())),
            "IRREGULAR" => verbs
                .irregular
                .push((el.require("form")?.to_string(), el.require("as")?.to_string())),
            "SUFFIX" => verbs.suffixes.push(suffix(el)?),
            "GERUND" => verbs.gerunds.push(suffix(el)?),
            "CLITICS" => verbs.clitics = words(el.require("words")?),
            "LEMMAS" => verbs.lemmas = words(el.require("words")?),
            "TEMPLATE" => verbs.templates.push((el.require("kind")?.parse()?, el.text.clone())),
            other => return Err(Error::PackInvalid(format!("unexpected <{other}> in VERBS"))),
        }
    }

    let stopwords = words(section(root, "STOPWORDS")?.require("words")?);
    let mut equivalences = Vec::new();
    for p in section(root, "EQUIV")?.children_named("PAIR") {
        equivalences.push((p.require("a")?.to_string(), p.require("b")?.to_string()));
    }

    Ok(LanguagePack {
        code,
        signals,
        te: TeRuleSet { lexicon, rules },
        wh,
        verbs,
        stopwords,
        equivalences,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Serializes a pack; `load_pack` of the result gives back an equal pack.
pub fn write_pack(pack: &LanguagePack) -> String {
    let join = |v: &[String]| v.join(" ");

    let mut sig = Element::new("SIGNALS");
    for s in &pack.signals.entries {
        let mut el = Element::new("SIGNAL")
            .attr("surface", s.surface.as_str())
            .attr("base", s.base.as_str())
            .attr("key", s.key.as_str());
        if s.te_bound {
            el = el.attr("context", "te-bound");
        }
        if !s.verified {
            el = el.attr("status", "UNVERIFIED");
        }
        sig = sig.child(el);
    }
    sig = sig
        .child(
            Element::new("MODIFIER")
                .attr("quantities", join(&pack.signals.quantities))
                .attr("units", join(&pack.signals.units)),
        )
        .child(Element::new("TRIM").attr("words", join(&pack.signals.trim)))
        .child(Element::new("DETERMINERS").attr("words", join(&pack.signals.determiners)));

    let lex = &pack.te.lexicon;
    let mut ter = Element::new("TERULES");
    for (n, names) in &lex.months {
        ter = ter.child(
            Element::new("MONTH")
                .attr("n", n.to_string())
                .attr("names", join(names)),
        );
    }
    for nw in &lex.numbers {
        let mut el = Element::new("NUMBER")
            .attr("word", nw.word.as_str())
            .attr("value", nw.value.to_string());
        if nw.multiplier {
            el = el.attr("multiplier", yes(true));
        }
        ter = ter.child(el);
    }
    ter = ter.child(Element::new("CONNECTORS").attr("words", join(&lex.connectors)));
    for (w, v) in &lex.ordinals {
        ter = ter.child(
            Element::new("ORDINAL")
                .attr("word", w.as_str())
                .attr("value", v.to_string()),
        );
    }
    ter = ter.child(Element::new("ORDINAL_SUFFIXES").attr("words", join(&lex.ordinal_suffixes)));
    for (w, v) in &lex.decades {
        ter = ter.child(
            Element::new("DECADE")
                .attr("word", w.as_str())
                .attr("value", v.to_string()),
        );
    }
    for r in &pack.te.rules {
        let mut el = Element::new("RULE")
            .attr("id", r.id.as_str())
            .attr("pattern", r.pattern.source())
            .attr("value", r.template.source());
        if r.beyond_paper {
            el = el.attr("beyond-paper", yes(true));
        }
        ter = ter.child(el);
    }

    let wh = Element::new("WHWORDS")
        .attr("when", pack.wh.when.as_str())
        .attr("words", join(&pack.wh.words));

    let v = &pack.verbs;
    let mut vb = Element::new("VERBS").child(Element::new("SUPPORT").attr("words", join(&v.support)));
    for (f, a) in &v.aux {
        vb = vb.child(Element::new("AUX").attr("form", f.as_str()).attr("as", a.as_str()));
    }
    for (f, a) in &v.irregular {
        vb = vb.child(
            Element::new("IRREGULAR")
                .attr("form", f.as_str())
                .attr("as", a.as_str()),
        );
    }
    let suffix = |name: &str, r: &SuffixRule| {
        let el = Element::new(name)
            .attr("from", r.from.as_str())
            .attr("to", r.to.as_str());
        if r.check {
            el.attr("check", "lexicon")
        } else {
            el
        }
    };
    for r in &v.suffixes {
        vb = vb.child(suffix("SUFFIX", r));
    }
    for r in &v.gerunds {
        vb = vb.child(suffix("GERUND", r));
    }
    vb = vb
        .child(Element::new("CLITICS").attr("words", join(&v.clitics)))
        .child(Element::new("LEMMAS").attr("words", join(&v.lemmas)));
    for (k, t) in &v.templates {
        vb = vb.child(Element::new("TEMPLATE").attr("kind", k.as_str()).with_text(t.as_str()));
    }

    let mut eq = Element::new("EQUIV");
    for (a, b) in &pack.equivalences {
        eq = eq.child(Element::new("PAIR").attr("a", a.as_str()).attr("b", b.as_str()));
    }

    Element::new("PACK")
        .attr("code", pack.code.as_str())
        .child(sig)
        .child(ter)
        .child(wh)
        .child(vb)
        .child(Element::new("STOPWORDS").attr("words", join(&pack.stopwords)))
        .child(eq)
        .to_document()
}
