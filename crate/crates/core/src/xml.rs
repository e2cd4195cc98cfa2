//! Minimal element tree over quick-xml, shared by every file format here.
//!
//! Elements hold either text or child elements; mixed content is not
//! needed by any of the formats.

use quick_xml::events::{BytesDecl, BytesEnd, BytesStart, BytesText, Event};
use quick_xml::{Reader, Writer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub text: String,
    pub children: Vec<Element>,
}

impl Element {
    pub fn new(name: &str) -> Self {
        Element {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn attr(mut self, key: &str, value: impl Into<String>) -> Self {
        self.attrs.push((key.to_string(), value.into()));
        self
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.text = text.into();
        self
    }

    pub fn child(mut self, child: Element) -> Self {
        self.children.push(child);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Attribute that must be present; the error names element and key.
    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Xml(format!("<{}> is missing attribute `{key}`", self.name)))
    }

    pub fn children_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Element> + 'a {
        self.children.iter().filter(move |c| c.name == name)
    }

    pub fn first(&self, name: &str) -> Option<&Element> {
        self.children.iter().find(|c| c.name == name)
    }

    pub fn parse(input: &str) -> Result<Element> {
        let mut reader = Reader::from_str(input);
        let mut stack: Vec<Element> = Vec::new();
        let mut root: Option<Element> = None;
        loop {
            match reader.read_event()? {
                Event::Start(e) => stack.push(start(&e)?),
                Event::Empty(e) => {
                    let el = start(&e)?;
                    attach(&mut stack, &mut root, el)?;
                }
                Event::End(_) => {
                    let mut el = stack.pop().ok_or_else(|| Error::Xml("unbalanced end tag".into()))?;
                    if !el.children.is_empty() {
                        if !el.text.trim().is_empty() {
                            return Err(Error::Xml(format!("<{}> mixes text and elements", el.name)));
                        }
                        el.text.clear();
                    }
                    attach(&mut stack, &mut root, el)?;
                }
                Event::Text(t) => {
                    if let Some(top) = stack.last_mut() {
                        top.text.push_str(&t.unescape()?);
                    } else if !t.unescape()?.trim().is_empty() {
                        return Err(Error::Xml("text outside the root element".into()));
                    }
                }
                Event::CData(t) => {
                    if let Some(top) = stack.last_mut() {
                        top.text.push_str(&String::from_utf8_lossy(&t.into_inner()));
                    }
                }
                Event::Eof => break,
                _ => {}
            }
        }
        if !stack.is_empty() {
            return Err(Error::Xml(format!("unclosed element <{}>", stack[0].name)));
        }
        root.ok_or_else(|| Error::Xml("document has no root element".into()))
    }

    /// Pretty-printed document with an XML declaration.
    pub fn to_document(&self) -> String {
        let mut w = Writer::new_with_indent(Vec::new(), b' ', 2);
        w.write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))
            .expect("writing to a Vec cannot fail");
        self.write(&mut w);
        let mut s = String::from_utf8(w.into_inner()).expect("writer emits UTF-8");
        s.push('\n');
        s
    }

    /// Pretty-printed element without a declaration.
    pub fn to_fragment(&self) -> String {
        let mut w = Writer::new_with_indent(Vec::new(), b' ', 2);
        self.write(&mut w);
        let mut s = String::from_utf8(w.into_inner()).expect("writer emits UTF-8");
        s.push('\n');
        s
    }

    fn write(&self, w: &mut Writer<Vec<u8>>) {
        let mut start = BytesStart::new(self.name.as_str());
        for (k, v) in &self.attrs {
            start.push_attribute((k.as_str(), v.as_str()));
        }
        let ok = "writing to a Vec cannot fail";
        if self.children.is_empty() && self.text.is_empty() {
            w.write_event(Event::Empty(start)).expect(ok);
            return;
        }
        w.write_event(Event::Start(start)).expect(ok);
        if self.children.is_empty() {
            w.write_event(Event::Text(BytesText::new(&self.text))).expect(ok);
        } else {
            for c in &self.children {
                c.write(w);
            }
        }
        w.write_event(Event::End(BytesEnd::new(self.name.as_str()))).expect(ok);
    }
}

fn start(e: &BytesStart) -> Result<Element> {
    let mut el = Element::new(&String::from_utf8_lossy(e.name().as_ref()));
    for a in e.attributes() {
        let a = a?;
        el.attrs.push((
            String::from_utf8_lossy(a.key.as_ref()).into_owned(),
            a.unescape_value()?.into_owned(),
        ));
    }
    Ok(el)
}

fn attach(stack: &mut [Element], root: &mut Option<Element>, el: Element) -> Result<()> {
    if let Some(parent) = stack.last_mut() {
        parent.children.push(el);
    } else if root.is_none() {
        *root = Some(el);
    } else {
        return Err(Error::Xml("more than one root element".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_escapes() {
        let doc = Element::new("A")
            .attr("x", "a<b & \"c\"")
            .child(Element::new("B").with_text("Franco's 1939-1975 <tag>"))
            .child(Element::new("C"));
        let text = doc.to_document();
        assert_eq!(Element::parse(&text).unwrap(), doc);
    }

    #[test]
    fn rejects_broken_documents() {
        assert!(Element::parse("<A><B></A>").is_err());
        assert!(Element::parse("").is_err());
        assert!(Element::parse("<A/><B/>").is_err());
        assert!(Element::parse("<A>text<B/></A>").is_err());
    }

    #[test]
    fn required_attribute_is_named() {
        let el = Element::parse("<Q/>").unwrap();
        assert!(el.require("id").unwrap_err().to_string().contains("id"));
    }
}
